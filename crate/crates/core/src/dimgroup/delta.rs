use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DimClass, EssentialMatrix};
use crate::error::{Error, Result};
use crate::linalg::{
    common_denominator, rat_vec_mul, rational_solve, to_int_vec, to_rat_vec, IntMatrix, RatMatrix, RatVec,
};

/// The rational eventual image `Q^n A^n`, the largest subspace of row
/// vectors on which `v -> vA` is invertible.
#[derive(Clone)]
pub struct EventualImageSpace {
    matrix: EssentialMatrix,
    basis: Vec<RatVec>,
    stabilization_power: u32,
}

impl EventualImageSpace {
    pub fn matrix(&self) -> &EssentialMatrix {
        &self.matrix
    }

    /// Rows of the reduced echelon form of `A^|A|`.
    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Least `k >= 1` with `rank A^k = rank A^(k+1)`.
    pub fn stabilization_power(&self) -> u32 {
        self.stabilization_power
    }

    fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(&self.basis).expect("eventual image of an essential matrix is nonzero")
    }

    /// Coordinates `c` with `v = c . basis`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<RatVec> {
        if v.len() != self.matrix.size() {
            return None;
        }
        let bt = self.basis_matrix().transpose();
        let rhs = RatMatrix::new(v.len(), 1, v.to_vec()).ok()?;
        let (c, _) = rational_solve(&bt, &rhs).ok()??;
        Some(c.column_vec(0))
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Matrix `M` of `v -> vA` restricted to the span, in basis coordinates:
    /// `basis . A = M . basis`. Always invertible.
    pub fn restricted_action(&self) -> RatMatrix {
        let rows: Vec<RatVec> = self
            .basis
            .iter()
            .map(|b| {
                let image = rat_vec_mul(b, self.matrix.matrix()).expect("length");
                self.coordinates(&image).expect("span is A-invariant")
            })
            .collect();
        RatMatrix::from_rows(&rows).expect("nonempty")
    }

    fn vector_at(&self, c: &[BigRational]) -> RatVec {
        let n = self.matrix.size();
        (0..n).map(|i| self.basis.iter().zip(c).map(|(b, x)| &b[i] * x).sum()).collect()
    }
}

/// Computes the eventual image from the row space of `A^|A|`; the image
/// chain `Q^n A^k` stabilizes within `|A|` steps.
pub fn eventual_image(a: &EssentialMatrix) -> EventualImageSpace {
    let n = a.size() as u32;
    let top = a.matrix().pow(n).expect("square");
    let (red, pivots) = RatMatrix::from(&top).rref();
    let basis: Vec<RatVec> = (0..pivots.len()).map(|r| red.row_slice(r).to_vec()).collect();

    let mut power = a.matrix().clone();
    let mut rank = RatMatrix::from(&power).rank();
    let mut k = 1;
    loop {
        let next = power.mul(a.matrix()).expect("square");
        let next_rank = RatMatrix::from(&next).rank();
        if next_rank == rank {
            break;
        }
        power = next;
        rank = next_rank;
        k += 1;
    }
    EventualImageSpace { matrix: a.clone(), basis, stabilization_power: k }
}

/// An element `v` of `Delta_A` with its least integrality certificate `l`
/// (`v A^l` integral).
#[derive(Clone)]
pub struct DeltaElement {
    v: RatVec,
    certificate: u32,
    matrix: EssentialMatrix,
}

impl DeltaElement {
    pub fn vector(&self) -> &[BigRational] {
        &self.v
    }

    pub fn certificate(&self) -> u32 {
        self.certificate
    }

    pub fn matrix(&self) -> &EssentialMatrix {
        &self.matrix
    }

    /// `v A^certificate`, an integer vector.
    pub fn integral_image(&self) -> Vec<BigInt> {
        let w = rat_vec_mul(&self.v, &self.matrix.matrix().pow(self.certificate).expect("square")).expect("length");
        to_int_vec(&w).expect("certificate makes the image integral")
    }

    /// `psi_A(v) = [(A^t)^l v^t, l]` with `l` the certificate.
    pub fn psi(&self) -> DimClass {
        DimClass::new(&self.matrix, self.integral_image(), self.certificate).expect("length")
    }

    /// `delta_A^power`: right multiplication by `A^power`, inverted on the
    /// eventual image for negative powers.
    pub fn x_action(&self, power: i64) -> DeltaElement {
        let a = self.matrix.matrix();
        let v = if power >= 0 {
            rat_vec_mul(&self.v, &a.pow(power as u32).expect("square")).expect("length")
        } else {
            let space = eventual_image(&self.matrix);
            let inv = space.restricted_action().inverse().expect("invertible on the eventual image");
            let mut c = space.coordinates(&self.v).expect("element lies in the eventual image");
            for _ in 0..(-power) {
                c = (0..c.len()).map(|j| (0..c.len()).map(|i| &c[i] * inv.get(i, j)).sum()).collect();
            }
            space.vector_at(&c)
        };
        let bound = self.certificate + power.unsigned_abs() as u32;
        let certificate = least_certificate(&v, a, bound).expect("delta is closed under delta_A^(+-1)");
        DeltaElement { v, certificate, matrix: self.matrix.clone() }
    }
}

impl fmt::Debug for DeltaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(ToString::to_string).collect();
        write!(f, "Delta(({}), l={})", v.join(", "), self.certificate)
    }
}

/// Least `l <= cap` with `v A^l` integral.
pub(super) fn least_certificate(v: &[BigRational], a: &IntMatrix, cap: u32) -> Option<u32> {
    let mut w = v.to_vec();
    for l in 0..=cap {
        if w.iter().all(BigRational::is_integer) {
            return Some(l);
        }
        w = rat_vec_mul(&w, a).expect("length");
    }
    None
}

/// Certificate search cap for `v`: `|A| * bits(den v)`.
///
/// Write `D` for the common denominator. `D v` lies in the lattice
/// `L = Z^n ∩ E` of the eventual image, and `v A^l` is integral iff `D v A^l`
/// vanishes in `L / D L`, a group of order at most `D^n`. The kernels of
/// `A^l` on that group form an increasing chain of subgroups, so it
/// stabilizes after at most `n log2 D` strict steps; past that no new
/// certificate can appear.
fn certificate_cap(v: &[BigRational], n: usize) -> u32 {
    let d = common_denominator(v);
    (n as u64 * d.bits()).min(u32::MAX as u64) as u32
}

/// Decides `v in Delta_A` and returns the least certificate.
pub fn delta_membership(v: &[BigRational], a: &EssentialMatrix) -> Result<DeltaElement> {
    if v.len() != a.size() {
        return Err(Error::LengthMismatch { expected: a.size(), found: v.len() });
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(DeltaElement { v: v.to_vec(), certificate: 0, matrix: a.clone() });
    }
    let space = eventual_image(a);
    if !space.contains(v) {
        return Err(Error::NotInEventualImage);
    }
    let cap = certificate_cap(v, a.size());
    match least_certificate(v, a.matrix(), cap) {
        Some(certificate) => Ok(DeltaElement { v: v.to_vec(), certificate, matrix: a.clone() }),
        None => Err(Error::NoIntegralityCertificate { cap }),
    }
}

/// The unique `u` in the eventual image with `u A^|A| = (1, ..., 1) A^|A|`.
pub fn delta_order_unit(a: &EssentialMatrix) -> DeltaElement {
    let n = a.size();
    let top = a.matrix().pow(n as u32).expect("square");
    let target = top.vec_mul(&vec![BigInt::one(); n]).expect("length");
    let space = eventual_image(a);
    // c . (basis A^n) = target; basis A^n has full row rank.
    let images: Vec<RatVec> = space.basis().iter().map(|b| rat_vec_mul(b, &top).expect("length")).collect();
    let system = RatMatrix::from_rows(&images).expect("nonempty").transpose();
    let rhs = RatMatrix::new(n, 1, to_rat_vec(&target)).expect("shape");
    let (c, kernel) = rational_solve(&system, &rhs).expect("shape").expect("target lies in the eventual image");
    debug_assert!(kernel.is_empty());
    let u = space.vector_at(&c.column_vec(0));
    let certificate = least_certificate(&u, a.matrix(), n as u32).expect("u A^n is integral");
    DeltaElement { v: u, certificate, matrix: a.clone() }
}

impl DeltaElement {
    pub(super) fn from_parts(v: RatVec, certificate: u32, matrix: EssentialMatrix) -> Self {
        DeltaElement { v, certificate, matrix }
    }
}
