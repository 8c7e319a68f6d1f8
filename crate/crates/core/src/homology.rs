//! Simplicial and relative homology with coefficients in GF(2).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{Complex, Face, RelativeComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("relative homology here needs a non-void subcomplex")]
    VoidSubcomplex,
}

/// Dense GF(2) column vector.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Boundary map from faces with `k` vertices to faces with `k - 1` vertices,
/// restricted to faces outside the subcomplex.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    /// Cardinality of the source faces.
    pub source_size: usize,
    pub rows: usize,
    columns: Vec<Bits>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn rank(&self) -> usize {
        let mut pivots: HashMap<usize, Bits> = HashMap::new();
        let mut rank = 0;
        for col in &self.columns {
            let mut v = col.clone();
            while let Some(p) = v.lowest() {
                match pivots.get(&p) {
                    Some(basis) => v.xor(basis),
                    None => {
                        pivots.insert(p, v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Whether `self ∘ next` vanishes, where `next` maps into `self`'s source.
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        next.columns.iter().all(|col| {
            let mut acc = Bits::zeros(self.rows);
            for (j, c) in self.columns.iter().enumerate() {
                if col.get(j) {
                    acc.xor(c);
                }
            }
            acc.lowest().is_none()
        })
    }
}

/// Betti numbers indexed by dimension `0..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
}

impl HomologyProfile {
    pub fn get(&self, dim: usize) -> usize {
        self.betti.get(dim).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|b| *b == 0)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Chain groups of `(Δ, Γ)` grouped by face cardinality.
fn chain_groups(rc: &RelativeComplex) -> Vec<Vec<Face>> {
    let top = rc.delta().facets().iter().map(Face::len).max().unwrap_or(0);
    let mut groups: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
    for f in rc.delta().sorted_faces() {
        if !rc.in_gamma(&f) {
            groups[f.len()].push(f);
        }
    }
    groups
}

/// Boundary matrices `∂_k` for `k = 1..=top`, where `∂_k` maps faces with
/// `k` vertices to faces with `k - 1` vertices.
pub fn boundary_matrices(rc: &RelativeComplex) -> Vec<BoundaryMatrix> {
    let groups = chain_groups(rc);
    let index: Vec<HashMap<&Face, usize>> = groups
        .iter()
        .map(|g| g.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    (1..groups.len())
        .map(|k| {
            let rows = groups[k - 1].len();
            let columns = groups[k]
                .iter()
                .map(|f| {
                    let mut col = Bits::zeros(rows);
                    for drop in 0..f.len() {
                        let mask = ((1u32 << f.len()) - 1) & !(1 << drop);
                        if let Some(r) = index[k - 1].get(&f.by_mask(mask)) {
                            col.set(*r);
                        }
                    }
                    col
                })
                .collect();
            BoundaryMatrix {
                source_size: k,
                rows,
                columns,
            }
        })
        .collect()
}

fn profile(rc: &RelativeComplex) -> HomologyProfile {
    let groups = chain_groups(rc);
    let mats = boundary_matrices(rc);
    debug_assert!(mats.windows(2).all(|w| w[0].composes_to_zero(&w[1])));
    let ranks: Vec<usize> = mats.iter().map(BoundaryMatrix::rank).collect();
    // rank of ∂_k, k = cardinality of the source
    let rank = |k: usize| if k == 0 { 0 } else { ranks.get(k - 1).copied().unwrap_or(0) };
    let betti = (1..groups.len())
        .map(|k| groups[k].len() - rank(k) - rank(k + 1))
        .collect();
    HomologyProfile { betti }
}

/// Reduced Betti numbers of a complex.
pub fn betti(c: &Complex) -> HomologyProfile {
    profile(&RelativeComplex::absolute(c.clone()))
}

/// Betti numbers of the relative chain complex; `Γ` must not be void.
pub fn relative_betti(rc: &RelativeComplex) -> Result<HomologyProfile, HomologyError> {
    if rc.gamma().is_void() {
        return Err(HomologyError::VoidSubcomplex);
    }
    Ok(profile(rc))
}
