//! Directed graphs as adjacency data: ingestion, the Cuntz splice, graded
//! K-theory generators, the unital-homomorphism obstruction and the
//! `Z/mZ`-graded variant of the dimension group.

mod obstruction;
mod zmod;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use obstruction::{unital_hom_obstruction, ObstructionVerdict};
pub use zmod::{zmod_equal, zmod_intertwiner_check, zmod_intertwiner_search, ZModClass, ZModEquality};

use crate::dimgroup::{DimClass, EssentialMatrix};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Most parallel edges materialized when a matrix is turned into a graph.
pub const MAX_EDGES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidShape { rows: 0, cols: 0, len: 0 });
        }
        if let Some(&(s, d)) = edges.iter().find(|&&(s, d)| s >= n || d >= n) {
            return Err(Error::VertexOutOfRange { vertex: s.max(d), size: n });
        }
        Ok(DirectedGraph { vertices, edges })
    }

    /// Vertices `0..n` and `A(v, w)` parallel edges from `v` to `w`.
    pub fn from_matrix(a: &IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        let mut edges = Vec::new();
        for v in 0..n {
            for w in 0..n {
                let count = a.get(v, w);
                let c = count
                    .to_usize()
                    .filter(|c| edges.len() + c <= MAX_EDGES)
                    .ok_or_else(|| Error::BasisTooLarge { count: count.to_string() })?;
                edges.extend(std::iter::repeat_n((v, w), c));
            }
        }
        DirectedGraph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge counts, without the no-sink check.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for &(s, d) in &self.edges {
            let c = a.get(s, d) + 1;
            a.set(s, d, c);
        }
        a
    }

    /// `A(v, w)` = number of edges `v -> w`; fails on a sink.
    pub fn adjacency(&self) -> Result<EssentialMatrix> {
        EssentialMatrix::new(self.adjacency_matrix())
    }

    /// `[e_v, 0]` for each vertex `v`: the classes of `v L(E)`.
    pub fn k0gr_generators(&self) -> Result<Vec<DimClass>> {
        let a = self.adjacency()?;
        (0..a.size()).map(|v| DimClass::generator(&a, v)).collect()
    }
}

/// Parses the text formats into an adjacency matrix:
///
/// ```text
/// vertices 2        matrix 2
/// edge 0 1          0 1
/// edge 1 0          1 0
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_adjacency(text: &str) -> Result<IntMatrix> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let size = |w: Option<&&str>| -> Result<usize> {
        w.and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse { line: first_no, message: "expected a positive vertex count".into() })
    };
    match words.first().copied() {
        Some("vertices") if words.len() == 2 => {
            let n = size(words.get(1))?;
            let mut a = IntMatrix::zeros(n, n);
            for (no, line) in lines {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let (s, d) = match parts.as_slice() {
                    ["edge", s, d] => (s.parse::<usize>(), d.parse::<usize>()),
                    _ => {
                        return Err(Error::Parse {
                            line: no,
                            message: format!("expected `edge <src> <dst>`, got `{line}`"),
                        })
                    }
                };
                let (Ok(s), Ok(d)) = (s, d) else {
                    return Err(Error::Parse { line: no, message: "edge endpoints must be vertex indices".into() });
                };
                if s >= n || d >= n {
                    return Err(Error::Parse { line: no, message: format!("vertex out of range 0..{n}") });
                }
                let c = a.get(s, d) + 1;
                a.set(s, d, c);
            }
            Ok(a)
        }
        Some("matrix") if words.len() == 2 => {
            let n = size(words.get(1))?;
            let mut rows = Vec::with_capacity(n);
            for (no, line) in lines {
                if rows.len() == n {
                    return Err(Error::Parse { line: no, message: format!("more than {n} matrix rows") });
                }
                let row: Vec<BigInt> = line
                    .split_whitespace()
                    .map(|x| x.parse::<BigInt>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse { line: no, message: "matrix entries must be integers".into() })?;
                if row.len() != n {
                    return Err(Error::Parse {
                        line: no,
                        message: format!("expected {n} entries, found {}", row.len()),
                    });
                }
                if row.iter().any(|x| x < &BigInt::zero()) {
                    return Err(Error::Parse { line: no, message: "matrix entries must be nonnegative".into() });
                }
                rows.push(row);
            }
            if rows.len() != n {
                return Err(Error::Parse {
                    line: first_no,
                    message: format!("expected {n} matrix rows, found {}", rows.len()),
                });
            }
            IntMatrix::from_rows(&rows)
        }
        _ => Err(Error::Parse { line: first_no, message: "expected `vertices N` or `matrix N`".into() }),
    }
}

/// Cuntz splice at a vertex `v` carrying a loop: two new vertices `v1, v2`
/// with edges `v <-> v1`, `v1 <-> v2` and a loop at each.
pub fn cuntz_splice(a: &EssentialMatrix, v: usize) -> Result<EssentialMatrix> {
    let n = a.size();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, size: n });
    }
    if a.get(v, v).is_zero() {
        return Err(Error::NoLoopAtVertex { vertex: v });
    }
    let mut b = IntMatrix::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, a.get(i, j).clone());
        }
    }
    let (v1, v2) = (n, n + 1);
    for (i, j) in [(v, v1), (v1, v), (v1, v1), (v1, v2), (v2, v1), (v2, v2)] {
        b.set(i, j, BigInt::from(1));
    }
    EssentialMatrix::new(b)
}
