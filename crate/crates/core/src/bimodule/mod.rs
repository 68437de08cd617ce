//! Based bimodules over vertex sets and the exact checks behind module
//! shift equivalence.
//!
//! Every bimodule here is a tensor power of edge sets with a fixed basis of
//! composable edge sequences. Iterated tensors are stored flat, so all
//! rebracketings are the identity on basis elements and a map is just a
//! family of rational matrices, one per `(source vertex, target vertex)`
//! block.

mod bridging;
mod map;
mod module_se;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use bridging::{bridging_k0_action, vertex_class, BridgingAction};
pub use map::{tensor_map, BimoduleMap, BlockKey};
pub use module_se::{
    build_sigma, verify_aligned, verify_module_se, verify_unitally_aligned, AlignedReport, DiagramCheck, MapCheck,
    ModuleSeData, ModuleSeReport, UnitalAlignedReport,
};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Cap on the basis size of a single bimodule.
pub const MAX_BASIS: usize = 1 << 20;

/// Ordered list of vertex labels. Two sets are the same iff their labels are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(Arc<[String]>);

impl VertexSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        VertexSet(labels.into_iter().map(Into::into).collect())
    }

    /// `prefix0, prefix1, ...`
    pub fn numbered(prefix: &str, n: usize) -> Self {
        VertexSet::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

/// A polymorphism `source -> target`: `matrix(v, w)` edges `e_{v,w,i}` from
/// `v` to `w`.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeSet {
    source: VertexSet,
    target: VertexSet,
    matrix: IntMatrix,
    counts: Vec<usize>,
}

impl EdgeSet {
    pub fn new(source: VertexSet, target: VertexSet, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (source.len(), target.len()) {
            return Err(Error::dims("edge set", (source.len(), target.len()), matrix.shape()));
        }
        if let Some((row, col)) = matrix.first_negative() {
            return Err(Error::NegativeEntry { row, col });
        }
        let counts = matrix
            .entries()
            .iter()
            .map(|x| x.to_usize().filter(|&c| c <= MAX_BASIS).ok_or(Error::BasisTooLarge { count: x.to_string() }))
            .collect::<Result<_>>()?;
        Ok(EdgeSet { source, target, matrix, counts })
    }

    /// Edge set of a square matrix, read as a graph on `vertices`.
    pub fn of_graph(vertices: VertexSet, matrix: IntMatrix) -> Result<Self> {
        EdgeSet::new(vertices.clone(), vertices, matrix)
    }

    pub fn source(&self) -> &VertexSet {
        &self.source
    }

    pub fn target(&self) -> &VertexSet {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn count(&self, v: usize, w: usize) -> usize {
        self.counts[v * self.target.len() + w]
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet({:?} -> {:?}, {})", self.source, self.target, self.matrix)
    }
}

/// One edge of a path: `(target vertex, index among parallel edges)`. The
/// source is the previous edge's target.
pub type Step = (usize, usize);

/// Tensor product `k X_1 (x) ... (x) k X_r` of edge sets with the basis of
/// composable sequences `x_1 ... x_r`. Within a block the basis is sorted
/// lexicographically by the sequence of steps.
#[derive(Clone)]
pub struct BasedBimodule {
    factors: Vec<EdgeSet>,
    // Row-major over (source vertex, target vertex).
    blocks: Vec<Vec<Vec<Step>>>,
}

impl BasedBimodule {
    pub fn new(factors: Vec<EdgeSet>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::MapMismatch("a based bimodule needs at least one factor".into()));
        };
        for pair in factors.windows(2) {
            if pair[0].target != pair[1].source {
                return Err(Error::VertexSetMismatch(format!(
                    "{:?} does not compose with {:?}",
                    pair[0].target, pair[1].source
                )));
            }
        }
        let (ns, nt) = (first.source.len(), factors[factors.len() - 1].target.len());
        let mut blocks = vec![Vec::new(); ns * nt];
        let mut total = 0usize;
        for v in 0..ns {
            let mut path = Vec::with_capacity(factors.len());
            enumerate(&factors, v, &mut path, &mut |p| {
                total += 1;
                if total > MAX_BASIS {
                    return false;
                }
                let w = p[p.len() - 1].0;
                blocks[v * nt + w].push(p.to_vec());
                true
            });
            if total > MAX_BASIS {
                return Err(Error::BasisTooLarge { count: format!("more than {MAX_BASIS}") });
            }
        }
        Ok(BasedBimodule { factors, blocks })
    }

    pub fn edges(e: &EdgeSet) -> Self {
        BasedBimodule::new(vec![e.clone()]).expect("a single edge set always composes")
    }

    /// `(k E^1)^(x)m`, paths of length `m`.
    pub fn power(e: &EdgeSet, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLag);
        }
        BasedBimodule::new(vec![e.clone(); m as usize])
    }

    pub fn factors(&self) -> &[EdgeSet] {
        &self.factors
    }

    pub fn source(&self) -> &VertexSet {
        &self.factors[0].source
    }

    pub fn target(&self) -> &VertexSet {
        &self.factors[self.factors.len() - 1].target
    }

    pub fn block(&self, v: usize, w: usize) -> &[Vec<Step>] {
        &self.blocks[v * self.target().len() + w]
    }

    pub fn block_dim(&self, v: usize, w: usize) -> usize {
        self.block(v, w).len()
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block dimensions as a matrix; equals the product of factor matrices.
    pub fn dimension_matrix(&self) -> IntMatrix {
        let (ns, nt) = (self.source().len(), self.target().len());
        let data = self.blocks.iter().map(|b| BigInt::from(b.len())).collect();
        IntMatrix::new(ns, nt, data).expect("shape")
    }

    pub(crate) fn index_of(&self, v: usize, path: &[Step]) -> Option<usize> {
        let w = path.last()?.0;
        self.block(v, w).binary_search_by(|p| p.as_slice().cmp(path)).ok()
    }

    /// Same factors, hence the same basis.
    pub fn same_as(&self, other: &BasedBimodule) -> bool {
        self.factors == other.factors
    }
}

impl fmt::Debug for BasedBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasedBimodule({} factors, dimension {})", self.factors.len(), self.dimension())
    }
}

// Depth-first in lexicographic order, so every block comes out sorted.
fn enumerate(factors: &[EdgeSet], at: usize, path: &mut Vec<Step>, emit: &mut impl FnMut(&[Step]) -> bool) -> bool {
    let depth = path.len();
    if depth == factors.len() {
        return emit(path);
    }
    let e = &factors[depth];
    for next in 0..e.target.len() {
        for i in 0..e.count(at, next) {
            path.push((next, i));
            let go_on = enumerate(factors, next, path, emit);
            path.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// `M (x) N`, glued along `M`'s target vertices.
pub fn tensor(m: &BasedBimodule, n: &BasedBimodule) -> Result<BasedBimodule> {
    if m.target() != n.source() {
        return Err(Error::VertexSetMismatch(format!("{:?} vs {:?}", m.target(), n.source())));
    }
    BasedBimodule::new(m.factors.iter().chain(&n.factors).cloned().collect())
}
