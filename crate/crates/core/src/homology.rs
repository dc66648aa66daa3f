//! Simplicial homology with coefficients in the two-element field.
//!
//! Boundary matrices are stored column by column, each column packed into
//! 64-bit words. Ranks come from Gaussian elimination on those packed rows
//! of the transpose, with the lowest set bit as pivot.

use std::collections::{HashMap, VecDeque};

use crate::bits::BitRow;
use crate::complex::{Face, SimplicialComplex};
use crate::dualgraph::dual_graph;
use crate::error::{Error, Result};

/// Ordered faces per dimension and the boundary maps between them.
#[derive(Clone, Debug)]
pub struct Z2ChainComplex {
    faces: Vec<Vec<Face>>,
    /// `boundary[k]` holds the columns of the map from `k`-chains to
    /// `(k-1)`-chains; `boundary[0]` is empty.
    boundary: Vec<Vec<BitRow>>,
}

pub fn chain_complex(x: &SimplicialComplex) -> Z2ChainComplex {
    build(x.all_faces())
}

/// Chain complex truncated to faces of dimension at most `max_dim`.
fn chain_complex_upto(x: &SimplicialComplex, max_dim: usize) -> Z2ChainComplex {
    if x.is_empty() {
        return build(Vec::new());
    }
    let top = x.dim().min(max_dim);
    build((0..=top).map(|k| x.faces_of_dim(k as isize).expect("k within range")).collect())
}

fn build(faces: Vec<Vec<Face>>) -> Z2ChainComplex {
    let mut boundary = vec![Vec::new()];
    for k in 1..faces.len() {
        let index: HashMap<&Face, usize> = faces[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let rows = faces[k - 1].len();
        let cols = faces[k]
            .iter()
            .map(|face| {
                let mut col = BitRow::zeros(rows);
                for i in 0..face.len() {
                    col.set(index[&face.without_index(i)]);
                }
                col
            })
            .collect();
        boundary.push(cols);
    }
    Z2ChainComplex { faces, boundary }
}

impl Z2ChainComplex {
    pub fn top_dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, k: usize) -> &[Face] {
        &self.faces[k]
    }

    /// `(rows, cols)` of the boundary map out of dimension `k >= 1`.
    pub fn shape(&self, k: usize) -> (usize, usize) {
        (self.faces[k - 1].len(), self.faces[k].len())
    }

    pub fn entry(&self, k: usize, row: usize, col: usize) -> bool {
        self.boundary[k][col].get(row)
    }

    pub fn column(&self, k: usize, col: usize) -> &BitRow {
        &self.boundary[k][col]
    }

    /// Whether the composite of the maps out of dimensions `k` and `k - 1`
    /// is zero, for `k >= 2`.
    pub fn composition_vanishes(&self, k: usize) -> bool {
        let rows = self.faces[k - 2].len();
        self.boundary[k].iter().all(|col| {
            let mut acc = BitRow::zeros(rows);
            for r in col.iter_ones() {
                acc.xor_assign(&self.boundary[k - 1][r]);
            }
            acc.is_zero()
        })
    }

    /// Rank of the boundary map out of dimension `k`; zero for `k == 0` and
    /// beyond the top dimension.
    pub fn rank(&self, k: usize) -> usize {
        if k == 0 || k >= self.faces.len() {
            return 0;
        }
        gf2_rank(self.boundary[k].iter().cloned(), self.faces[k - 1].len())
    }

    pub fn betti(&self) -> BettiVector {
        let ranks: Vec<usize> = (0..=self.faces.len()).map(|k| self.rank(k)).collect();
        let betti = (0..self.faces.len()).map(|k| (self.faces[k].len() - ranks[k] - ranks[k + 1]) as u64).collect();
        BettiVector { betti }
    }
}

/// Rank over GF(2) of a family of packed vectors of the given length.
pub fn gf2_rank(rows: impl IntoIterator<Item = BitRow>, width: usize) -> usize {
    let mut pivots: Vec<Option<BitRow>> = vec![None; width];
    let mut rank = 0;
    for mut row in rows {
        while let Some(p) = row.lowest() {
            match &pivots[p] {
                Some(pivot) => row.xor_assign(pivot),
                None => {
                    pivots[p] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers `(β_0, ..., β_d)` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub betti: Vec<u64>,
}

impl BettiVector {
    pub fn get(&self, i: usize) -> u64 {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        self.betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

pub fn betti_z2(x: &SimplicialComplex) -> BettiVector {
    chain_complex(x).betti()
}

/// First Betti number over GF(2), computed from faces of dimension at most two.
pub fn beta1_z2(x: &SimplicialComplex) -> u64 {
    if x.is_empty() || x.dim() == 0 {
        return 0;
    }
    let cc = chain_complex_upto(x, 2);
    (cc.faces[1].len() - cc.rank(1) - cc.rank(2)) as u64
}

/// `ε - ν + 1` for the dual graph of a pure complex.
pub fn beta1_dual_formula(mbar: &SimplicialComplex) -> Result<i64> {
    let dual = dual_graph(mbar)?;
    Ok(dual.epsilon() as i64 - dual.nu() as i64 + 1)
}

/// Tries to orient all facets coherently by propagating signs along a BFS
/// tree of the dual graph, then checks every adjacency.
///
/// The facet `σ = (v_0 < ... < v_d)` with sign `s` induces sign
/// `s · (-1)^j` on the ridge missing `v_j`; adjacent facets must induce
/// opposite signs on their shared ridge.
pub fn is_orientable(m: &SimplicialComplex) -> Result<bool> {
    if m.is_empty() || !m.is_pure() {
        return Err(Error::Precondition("orientability needs a non-empty pure complex".into()));
    }
    let incidence = m.ridge_incidence();
    if incidence.values().any(|ids| ids.len() != 2) {
        return Err(Error::Precondition("orientability needs a closed weak pseudomanifold".into()));
    }
    let dual = dual_graph(m)?;
    if !dual.is_connected() {
        return Err(Error::Precondition("orientability needs a connected dual graph".into()));
    }
    let facets = m.facets();
    let induced = |facet: usize, sign: i8, ridge: &Face| -> i8 {
        let f = &facets[facet];
        let missing = f.difference(ridge).vertices()[0];
        let j = f.vertices().iter().position(|&v| v == missing).unwrap();
        if j % 2 == 0 {
            sign
        } else {
            -sign
        }
    };
    let mut sign: Vec<i8> = vec![0; facets.len()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in dual.graph().neighbors(u) {
            if sign[w] == 0 {
                let ridge = facets[u].intersection(&facets[w]);
                let want = -induced(u, sign[u], &ridge);
                sign[w] = if induced(w, 1, &ridge) == want { 1 } else { -1 };
                queue.push_back(w);
            }
        }
    }
    for (ridge, ids) in &incidence {
        let (a, b) = (ids[0], ids[1]);
        if induced(a, sign[a], ridge) != -induced(b, sign[b], ridge) {
            return Ok(false);
        }
    }
    Ok(true)
}
