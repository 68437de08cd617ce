use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BasedBimodule, Step};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::par::{self, Execution};

/// `(source vertex, target vertex)`
pub type BlockKey = (usize, usize);

/// A bimodule map, block-diagonal over vertex pairs. Column `j` of block
/// `(v, w)` is the image of the `j`-th basis element of that domain block.
#[derive(Clone)]
pub struct BimoduleMap {
    domain: BasedBimodule,
    codomain: BasedBimodule,
    blocks: BTreeMap<BlockKey, RatMatrix>,
}

fn block_keys(m: &BasedBimodule) -> Vec<BlockKey> {
    let (ns, nt) = (m.source().len(), m.target().len());
    (0..ns).flat_map(|v| (0..nt).map(move |w| (v, w))).filter(|&(v, w)| m.block_dim(v, w) > 0).collect()
}

impl BimoduleMap {
    pub fn new(domain: BasedBimodule, codomain: BasedBimodule, blocks: BTreeMap<BlockKey, RatMatrix>) -> Result<Self> {
        if domain.source() != codomain.source() || domain.target() != codomain.target() {
            return Err(Error::VertexSetMismatch("domain and codomain live over different vertex sets".into()));
        }
        let keys = block_keys(&domain);
        if keys.len() != blocks.len() || keys.iter().any(|k| !blocks.contains_key(k)) {
            return Err(Error::MapMismatch("blocks must be given exactly for the nonzero domain blocks".into()));
        }
        for (&(v, w), b) in &blocks {
            let want = (codomain.block_dim(v, w), domain.block_dim(v, w));
            if b.shape() != want {
                return Err(Error::MapMismatch(format!(
                    "block ({v}, {w}) is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(BimoduleMap { domain, codomain, blocks })
    }

    /// Basis permutation: domain basis `j` of block `(v, w)` goes to codomain
    /// basis `perms[(v, w)][j]`.
    pub fn permutation(
        domain: BasedBimodule,
        codomain: BasedBimodule,
        perms: &BTreeMap<BlockKey, Vec<usize>>,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for key @ (v, w) in block_keys(&domain) {
            let n = domain.block_dim(v, w);
            if codomain.block_dim(v, w) != n {
                return Err(Error::MapMismatch(format!(
                    "block ({v}, {w}) has {n} vs {} basis elements",
                    codomain.block_dim(v, w)
                )));
            }
            let perm =
                perms.get(&key).ok_or_else(|| Error::MapMismatch(format!("no permutation for block ({v}, {w})")))?;
            blocks.insert(key, permutation_matrix(perm, n)?);
        }
        BimoduleMap::new(domain, codomain, blocks)
    }

    /// The basis-matching map between two bimodules with equal block
    /// dimensions: `j`-th basis element to `j`-th, i.e. the lexicographic
    /// pairing of fibers.
    pub fn lex_pairing(domain: BasedBimodule, codomain: BasedBimodule) -> Result<Self> {
        let perms =
            block_keys(&domain).into_iter().map(|(v, w)| ((v, w), (0..domain.block_dim(v, w)).collect())).collect();
        BimoduleMap::permutation(domain, codomain, &perms)
    }

    pub fn identity(m: &BasedBimodule) -> Self {
        BimoduleMap::lex_pairing(m.clone(), m.clone()).expect("a module matches itself")
    }

    pub fn domain(&self) -> &BasedBimodule {
        &self.domain
    }

    pub fn codomain(&self) -> &BasedBimodule {
        &self.codomain
    }

    pub fn blocks(&self) -> &BTreeMap<BlockKey, RatMatrix> {
        &self.blocks
    }

    pub fn block(&self, key: BlockKey) -> Option<&RatMatrix> {
        self.blocks.get(&key)
    }

    /// Replaces one block, keeping its shape.
    pub fn with_block(mut self, key: BlockKey, block: RatMatrix) -> Result<Self> {
        let old = self.blocks.get(&key).ok_or_else(|| Error::MapMismatch(format!("no block {key:?}")))?;
        if old.shape() != block.shape() {
            return Err(Error::MapMismatch(format!("replacement for block {key:?} changes its shape")));
        }
        self.blocks.insert(key, block);
        Ok(self)
    }

    /// `self . inner`
    pub fn compose(&self, inner: &BimoduleMap) -> Result<BimoduleMap> {
        if !inner.codomain.same_as(&self.domain) {
            return Err(Error::MapMismatch(
                "composition: codomain of the inner map is not the domain of the outer".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        for (key, f) in &inner.blocks {
            let g =
                self.blocks.get(key).ok_or_else(|| Error::MapMismatch(format!("outer map has no block {key:?}")))?;
            blocks.insert(*key, g.mul(f)?);
        }
        BimoduleMap::new(inner.domain.clone(), self.codomain.clone(), blocks)
    }

    /// The first block, in key order, that is not square and invertible.
    pub fn first_singular_block(&self) -> Option<BlockKey> {
        self.blocks.iter().find(|(_, b)| b.inverse().is_none()).map(|(k, _)| *k)
    }

    pub fn is_isomorphism(&self) -> bool {
        block_keys(&self.codomain).len() == self.blocks.len() && self.first_singular_block().is_none()
    }

    pub fn inverse(&self) -> Result<BimoduleMap> {
        if block_keys(&self.codomain).len() != self.blocks.len() {
            return Err(Error::MapMismatch("codomain has blocks the map does not reach".into()));
        }
        let mut blocks = BTreeMap::new();
        for (key, b) in &self.blocks {
            let inv = b.inverse().ok_or_else(|| Error::MapMismatch(format!("block {key:?} is singular")))?;
            blocks.insert(*key, inv);
        }
        BimoduleMap::new(self.codomain.clone(), self.domain.clone(), blocks)
    }

    /// First block where the two maps differ, with `self - other` there.
    pub fn first_difference(&self, other: &BimoduleMap) -> Result<Option<(BlockKey, RatMatrix)>> {
        if !self.domain.same_as(&other.domain) || !self.codomain.same_as(&other.codomain) {
            return Err(Error::MapMismatch("compared maps have different domains or codomains".into()));
        }
        for (key, b) in &self.blocks {
            let residual = b.sub(&other.blocks[key])?;
            if !residual.is_zero() {
                return Ok(Some((*key, residual)));
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for BimoduleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.blocks.iter()).finish()
    }
}

fn permutation_matrix(perm: &[usize], n: usize) -> Result<RatMatrix> {
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::MapMismatch(format!("{perm:?} is not a permutation of 0..{n}")));
    }
    let mut m = RatMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, BigRational::one());
    }
    Ok(m)
}

/// `f (x) g` on the flattened basis: `x (x) y -> f(x) (x) g(y)`.
pub fn tensor_map(f: &BimoduleMap, g: &BimoduleMap, exec: Execution) -> Result<BimoduleMap> {
    let domain = super::tensor(&f.domain, &g.domain)?;
    let codomain = super::tensor(&f.codomain, &g.codomain)?;
    let split_dom = f.domain.factors().len();
    let keys = block_keys(&domain);
    let built: Vec<Result<RatMatrix>> = par::map(&keys, exec, |&(v, w)| {
        if codomain.block_dim(v, w) == 0 {
            return Err(Error::MapMismatch(format!("block ({v}, {w}) has no codomain")));
        }
        let mut out = RatMatrix::zeros(codomain.block_dim(v, w), domain.block_dim(v, w));
        for (j, path) in domain.block(v, w).iter().enumerate() {
            let (x, y) = path.split_at(split_dom);
            let u = x[x.len() - 1].0;
            let fx = column(f, v, u, x)?;
            let gy = column(g, u, w, y)?;
            let (fcod, gcod) = (f.codomain.block(v, u), g.codomain.block(u, w));
            for (a, ca) in fx.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (b, cb) in gy.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let joined: Vec<Step> = fcod[a].iter().chain(&gcod[b]).copied().collect();
                    let i = codomain.index_of(v, &joined).expect("tensor of basis elements is a basis element");
                    let entry = out.get(i, j) + ca * cb;
                    out.set(i, j, entry);
                }
            }
        }
        Ok(out)
    });
    let mut blocks = BTreeMap::new();
    for (key, b) in keys.into_iter().zip(built) {
        blocks.insert(key, b?);
    }
    BimoduleMap::new(domain, codomain, blocks)
}

fn column(f: &BimoduleMap, v: usize, w: usize, path: &[Step]) -> Result<Vec<BigRational>> {
    let j = f.domain.index_of(v, path).expect("path of the domain");
    let b = f.blocks.get(&(v, w)).ok_or_else(|| Error::MapMismatch(format!("missing block ({v}, {w})")))?;
    Ok(b.column_vec(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{tensor, EdgeSet, VertexSet};
    use crate::linalg::{rat, IntMatrix};

    fn graph(rows: &[Vec<i64>]) -> BasedBimodule {
        let v = VertexSet::numbered("v", rows.len());
        BasedBimodule::edges(&EdgeSet::of_graph(v, IntMatrix::from_rows(rows).unwrap()).unwrap())
    }

    fn swap(m: &BasedBimodule, key: BlockKey) -> BimoduleMap {
        let mut perms: BTreeMap<BlockKey, Vec<usize>> =
            block_keys(m).into_iter().map(|(v, w)| ((v, w), (0..m.block_dim(v, w)).collect())).collect();
        perms.get_mut(&key).unwrap().swap(0, 1);
        BimoduleMap::permutation(m.clone(), m.clone(), &perms).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let e = graph(&[vec![2, 1], vec![1, 0]]);
        let id = BimoduleMap::identity(&e);
        let t = tensor_map(&id, &id, Execution::Sequential).unwrap();
        let ee = tensor(&e, &e).unwrap();
        assert!(t.first_difference(&BimoduleMap::identity(&ee)).unwrap().is_none());
    }

    #[test]
    fn permutation_tensor_identity() {
        // Two loops a, b: (a b)-swap (x) id sends a.x -> b.x.
        let e = graph(&[vec![2]]);
        let t = tensor_map(&swap(&e, (0, 0)), &BimoduleMap::identity(&e), Execution::Sequential).unwrap();
        // Basis aa, ab, ba, bb -> ba, bb, aa, ab.
        let mut expected = RatMatrix::zeros(4, 4);
        for (j, i) in [2, 3, 0, 1].into_iter().enumerate() {
            expected.set(i, j, rat(1, 1));
        }
        assert_eq!(t.block((0, 0)).unwrap(), &expected);
    }

    #[test]
    fn tensor_is_functorial() {
        let e = graph(&[vec![2, 1], vec![1, 1]]);
        let mut f = swap(&e, (0, 0));
        f = f.clone().with_block((1, 1), RatMatrix::from_rows(&[vec![rat(3, 2)]]).unwrap()).unwrap();
        let g = swap(&e, (0, 0)).with_block((0, 1), RatMatrix::from_rows(&[vec![rat(-2, 1)]]).unwrap()).unwrap();
        let exec = Execution::default();
        let lhs = tensor_map(&f.compose(&g).unwrap(), &g.compose(&f).unwrap(), exec).unwrap();
        let rhs = tensor_map(&f, &g, exec).unwrap().compose(&tensor_map(&g, &f, exec).unwrap()).unwrap();
        assert!(lhs.first_difference(&rhs).unwrap().is_none());
    }

    #[test]
    fn inverses_and_singular_blocks() {
        let e = graph(&[vec![2]]);
        let s = swap(&e, (0, 0));
        assert!(s
            .compose(&s.inverse().unwrap())
            .unwrap()
            .first_difference(&BimoduleMap::identity(&e))
            .unwrap()
            .is_none());
        let bad = s.with_block((0, 0), RatMatrix::zeros(2, 2)).unwrap();
        assert_eq!(bad.first_singular_block(), Some((0, 0)));
        assert!(!bad.is_isomorphism());
        assert!(bad.inverse().is_err());
    }

    #[test]
    fn rejects_bad_permutations() {
        let e = graph(&[vec![2]]);
        let perms = BTreeMap::from([((0, 0), vec![0, 0])]);
        assert!(BimoduleMap::permutation(e.clone(), e, &perms).is_err());
    }
}
