use super::map::{tensor_map, BimoduleMap, BlockKey};
use super::{tensor, BasedBimodule, EdgeSet};
use crate::dimgroup::EssentialMatrix;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::par::Execution;
use crate::shift::verify_unital;

/// The specified conjugacy `k E^1 (x) k R^1 -> k R^1 (x) k F^1`, pairing the
/// lexicographically ordered fibers of each `(v, w)` block. Both fibers have
/// `(AR)(v, w) = (RB)(v, w)` elements exactly when `R` intertwines.
pub fn build_sigma(e: &EdgeSet, r: &EdgeSet, f: &EdgeSet) -> Result<BimoduleMap> {
    if e.source() != e.target() || f.source() != f.target() {
        return Err(Error::VertexSetMismatch("graph edge sets must be endomorphisms of a vertex set".into()));
    }
    let left = tensor(&BasedBimodule::edges(e), &BasedBimodule::edges(r))?;
    let right = tensor(&BasedBimodule::edges(r), &BasedBimodule::edges(f))?;
    if left.dimension_matrix() != right.dimension_matrix() {
        return Err(Error::NotIntertwiner);
    }
    BimoduleMap::lex_pairing(left, right)
}

/// Data of a module shift equivalence of lag `m` between the graphs `E` and
/// `F` through edge sets `G: E^0 -> F^0`, `H: F^0 -> E^0`:
///
/// - `omega_e: G (x) H -> E^(x)m`, `omega_f: H (x) G -> F^(x)m`,
/// - `sigma_g: E (x) G -> G (x) F`, `sigma_h: F (x) H -> H (x) E`.
#[derive(Debug, Clone)]
pub struct ModuleSeData {
    pub e: EdgeSet,
    pub f: EdgeSet,
    pub g: EdgeSet,
    pub h: EdgeSet,
    pub omega_e: BimoduleMap,
    pub omega_f: BimoduleMap,
    pub sigma_g: BimoduleMap,
    pub sigma_h: BimoduleMap,
    pub m: u32,
}

impl ModuleSeData {
    /// All four maps as lexicographic fiber pairings.
    pub fn lex_paired(e: EdgeSet, f: EdgeSet, g: EdgeSet, h: EdgeSet, m: u32) -> Result<Self> {
        check_counts(&e, &f, &g, &h, m)?;
        let (ge, he) = (BasedBimodule::edges(&g), BasedBimodule::edges(&h));
        let omega_e = BimoduleMap::lex_pairing(tensor(&ge, &he)?, BasedBimodule::power(&e, m)?)?;
        let omega_f = BimoduleMap::lex_pairing(tensor(&he, &ge)?, BasedBimodule::power(&f, m)?)?;
        let sigma_g = build_sigma(&e, &g, &f)?;
        let sigma_h = build_sigma(&f, &h, &e)?;
        Ok(ModuleSeData { e, f, g, h, omega_e, omega_f, sigma_g, sigma_h, m })
    }

    /// The lag-1 data of an elementary equivalence `A = RS`, `SR = B`.
    pub fn from_sse_step(e: EdgeSet, f: EdgeSet, r: &IntMatrix, s: &IntMatrix) -> Result<Self> {
        let g = EdgeSet::new(e.source().clone(), f.source().clone(), r.clone())?;
        let h = EdgeSet::new(f.source().clone(), e.source().clone(), s.clone())?;
        ModuleSeData::lex_paired(e, f, g, h, 1)
    }
}

fn check_counts(e: &EdgeSet, f: &EdgeSet, g: &EdgeSet, h: &EdgeSet, m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroLag);
    }
    let (e0, f0) = (e.source(), f.source());
    if e.target() != e0
        || f.target() != f0
        || g.source() != e0
        || g.target() != f0
        || h.source() != f0
        || h.target() != e0
    {
        return Err(Error::VertexSetMismatch("G must run E^0 -> F^0 and H must run F^0 -> E^0".into()));
    }
    let (a, b, gm, hm) = (e.matrix(), f.matrix(), g.matrix(), h.matrix());
    let relations = [
        ("GH = A^m", gm.mul(hm)? == a.pow(m)?),
        ("HG = B^m", hm.mul(gm)? == b.pow(m)?),
        ("AG = GB", a.mul(gm)? == gm.mul(b)?),
        ("BH = HA", b.mul(hm)? == hm.mul(a)?),
    ];
    match relations.iter().find(|(_, ok)| !ok) {
        Some((relation, _)) => Err(Error::CountMismatch { relation }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub map: &'static str,
    /// First block that is not invertible.
    pub singular_block: Option<BlockKey>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSeReport {
    pub maps: Vec<MapCheck>,
}

impl ModuleSeReport {
    pub fn passed(&self) -> bool {
        self.maps.iter().all(|c| c.singular_block.is_none())
    }
}

fn expect_map(
    name: &'static str,
    map: &BimoduleMap,
    domain: &BasedBimodule,
    codomain: &BasedBimodule,
) -> Result<MapCheck> {
    if !map.domain().same_as(domain) || !map.codomain().same_as(codomain) {
        return Err(Error::MapMismatch(format!("{name} has the wrong domain or codomain")));
    }
    let singular_block = map.first_singular_block();
    Ok(MapCheck { map: name, singular_block })
}

/// Counting relations first (an error names the failing one), then every
/// block of the four structure maps must be invertible.
pub fn verify_module_se(d: &ModuleSeData) -> Result<ModuleSeReport> {
    check_counts(&d.e, &d.f, &d.g, &d.h, d.m)?;
    let (e, f) = (BasedBimodule::edges(&d.e), BasedBimodule::edges(&d.f));
    let (g, h) = (BasedBimodule::edges(&d.g), BasedBimodule::edges(&d.h));
    let maps = vec![
        expect_map("omega_E", &d.omega_e, &tensor(&g, &h)?, &BasedBimodule::power(&d.e, d.m)?)?,
        expect_map("omega_F", &d.omega_f, &tensor(&h, &g)?, &BasedBimodule::power(&d.f, d.m)?)?,
        expect_map("sigma_G", &d.sigma_g, &tensor(&e, &g)?, &tensor(&g, &f)?)?,
        expect_map("sigma_H", &d.sigma_h, &tensor(&f, &h)?, &tensor(&h, &e)?)?,
    ];
    Ok(ModuleSeReport { maps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramCheck {
    pub diagram: &'static str,
    /// First block where the two composites differ, with their difference.
    pub failure: Option<(BlockKey, RatMatrix)>,
}

impl DiagramCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedReport {
    pub module_se: ModuleSeReport,
    pub diagrams: Vec<DiagramCheck>,
}

impl AlignedReport {
    pub fn passed(&self) -> bool {
        self.module_se.passed() && self.diagrams.iter().all(DiagramCheck::holds)
    }
}

/// One associator diagram, from `X (x) Y (x) Z` for a graph edge set `X`:
/// `(omega (x) id_X) . (id_Y (x) sigma_Z) . (sigma_Y (x) id_Z)` against
/// `nu . (id_X (x) omega)`. With flat path bases `nu` is the identity.
struct Diagram<'a> {
    name: &'static str,
    x: &'a EdgeSet,
    y: &'a EdgeSet,
    z: &'a EdgeSet,
    omega: &'a BimoduleMap,
    sigma_y: &'a BimoduleMap,
    sigma_z: &'a BimoduleMap,
}

impl Diagram<'_> {
    fn check(&self, exec: Execution) -> Result<DiagramCheck> {
        let id = |s: &EdgeSet| BimoduleMap::identity(&BasedBimodule::edges(s));
        let first = tensor_map(self.sigma_y, &id(self.z), exec)?;
        let second = tensor_map(&id(self.y), self.sigma_z, exec)?;
        let third = tensor_map(self.omega, &id(self.x), exec)?;
        let left = third.compose(&second.compose(&first)?)?;
        let right = tensor_map(&id(self.x), self.omega, exec)?;
        Ok(DiagramCheck { diagram: self.name, failure: left.first_difference(&right)? })
    }
}

pub fn verify_aligned(d: &ModuleSeData, exec: Execution) -> Result<AlignedReport> {
    let module_se = verify_module_se(d)?;
    let diagrams = vec![
        Diagram {
            name: "E-side",
            x: &d.e,
            y: &d.g,
            z: &d.h,
            omega: &d.omega_e,
            sigma_y: &d.sigma_g,
            sigma_z: &d.sigma_h,
        }
        .check(exec)?,
        Diagram {
            name: "F-side",
            x: &d.f,
            y: &d.h,
            z: &d.g,
            omega: &d.omega_f,
            sigma_y: &d.sigma_h,
            sigma_z: &d.sigma_g,
        }
        .check(exec)?,
    ];
    Ok(AlignedReport { module_se, diagrams })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitalAlignedReport {
    pub aligned: AlignedReport,
    pub r_unital: bool,
    pub s_unital: bool,
}

impl UnitalAlignedReport {
    pub fn passed(&self) -> bool {
        self.aligned.passed() && (self.r_unital || self.s_unital)
    }
}

/// Aligned, and one of `R: G_A -> G_B`, `S: G_B -> G_A` is unital.
pub fn verify_unitally_aligned(
    r: &IntMatrix,
    s: &IntMatrix,
    a: &EssentialMatrix,
    b: &EssentialMatrix,
    d: &ModuleSeData,
    exec: Execution,
) -> Result<UnitalAlignedReport> {
    let aligned = verify_aligned(d, exec)?;
    let r_unital = verify_unital(r, a, b)?;
    let s_unital = verify_unital(s, b, a)?;
    Ok(UnitalAlignedReport { aligned, r_unital, s_unital })
}
