//! The functor `g` into unipotent upper triangular integer matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{ClusterMorphism, RelativeFrame};
use crate::partition::{BlockRef, EdgeVector, NoncrossingPartition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not unipotent upper triangular")]
    NotUnipotent,
    #[error("matrix has size {0}, expected {1}")]
    WrongSize(usize, usize),
    #[error("cannot parse matrix text")]
    Parse,
    #[error("no morphism has this matrix")]
    NoMatch,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// An `n x n` unit upper triangular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct UnipotentMatrix {
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawMatrix> for UnipotentMatrix {
    type Error = MatrixError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        if raw.rows.len() != raw.n {
            return Err(MatrixError::WrongSize(raw.rows.len(), raw.n));
        }
        UnipotentMatrix::from_rows(raw.rows)
    }
}

impl From<UnipotentMatrix> for RawMatrix {
    fn from(m: UnipotentMatrix) -> Self {
        RawMatrix { n: m.n(), rows: m.rows }
    }
}

impl UnipotentMatrix {
    pub fn identity(n: usize) -> Self {
        UnipotentMatrix { rows: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    /// `I + E_ij` with 1-based indices, `i < j`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows[i - 1][j - 1] = 1;
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::WrongSize(row.len(), n));
            }
            if row[i] != 1 || row[..i].iter().any(|&x| x != 0) {
                return Err(MatrixError::NotUnipotent);
            }
        }
        Ok(UnipotentMatrix { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i - 1][j - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n())
    }

    /// Standard product; panics on `i64` overflow.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n();
        assert_eq!(n, other.n(), "dimension mismatch");
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (k, &a) in self.rows[i].iter().enumerate().skip(i) {
                if a == 0 {
                    continue;
                }
                for j in k..n {
                    let term = a.checked_mul(other.rows[k][j]).expect("matrix entry overflow");
                    row[j] = row[j].checked_add(term).expect("matrix entry overflow");
                }
            }
        }
        UnipotentMatrix { rows }
    }

    /// Exact inverse by back substitution.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut inv = Self::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = 0i64;
                for k in i + 1..=j {
                    let term = self.rows[i][k].checked_mul(inv.rows[k][j]).expect("matrix entry overflow");
                    s = s.checked_sub(term).expect("matrix entry overflow");
                }
                inv.rows[i][j] = s;
            }
        }
        inv
    }
}

impl fmt::Display for UnipotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let items: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for UnipotentMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Result<Vec<Vec<i64>>, _> = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(str::parse).collect())
            .collect();
        UnipotentMatrix::from_rows(rows.map_err(|_| MatrixError::Parse)?)
    }
}

/// Ancestors of each target block under the edges of a morphism, the block
/// itself excluded.
fn ancestors(m: &ClusterMorphism) -> BTreeMap<BlockRef, Vec<BlockRef>> {
    let parent: BTreeMap<BlockRef, BlockRef> = m.edges().iter().map(|e| (e.child, e.parent)).collect();
    m.target()
        .block_refs()
        .map(|b| {
            let mut chain = Vec::new();
            let mut cur = b;
            while let Some(&p) = parent.get(&cur) {
                chain.push(p);
                cur = p;
            }
            (b, chain)
        })
        .collect()
}

/// The matrix `g[T]`: `g_ij = 1` when `i = j`, or when `v_i` and `v_j` lie in
/// one source block, the target block `Y` of `v_j` is a proper ancestor of the
/// target block of `v_i`, and `j` is the least element of `Y` above `i`.
pub fn g_matrix(m: &ClusterMorphism) -> UnipotentMatrix {
    let n = m.source().n();
    let mut g = UnipotentMatrix::identity(n);
    let anc = ancestors(m);
    for i in 1..=n {
        let x = m.target().block_of(i).expect("element in some block");
        for &y in &anc[&x] {
            let block = m.target().block(y).expect("ancestor block");
            if let Some(&j) = block.iter().find(|&&j| j > i) {
                g.rows[i - 1][j - 1] = 1;
            }
        }
    }
    g
}

/// Recovers the morphism `source -> target` with matrix `mat`.
pub fn reconstruct(
    source: &NoncrossingPartition,
    target: &NoncrossingPartition,
    mat: &UnipotentMatrix,
) -> Result<ClusterMorphism, MatrixError> {
    if mat.n() != source.n() {
        return Err(MatrixError::WrongSize(mat.n(), source.n()));
    }
    let frame = RelativeFrame::new(target, source)?;
    let mut edges = std::collections::BTreeSet::new();
    for set in frame.sets() {
        let members = &set.members;
        let mut stack = vec![(0usize, members.len(), None::<BlockRef>)];
        while let Some((lo, hi, parent)) = stack.pop() {
            if lo >= hi {
                continue;
            }
            let root = (lo..hi)
                .rev()
                .find(|&k| (lo..k).all(|i| mat.get(members[i].0, members[k].0) == 1))
                .expect("the leftmost position always qualifies");
            if let Some(p) = parent.or(set.cover) {
                edges.insert(EdgeVector::new(members[root], p));
            }
            stack.push((lo, root, Some(members[root])));
            stack.push((root + 1, hi, Some(members[root])));
        }
    }
    let candidate = ClusterMorphism::new(source.clone(), target.clone(), edges).map_err(|_| MatrixError::NoMatch)?;
    if g_matrix(&candidate) == *mat {
        Ok(candidate)
    } else {
        Err(MatrixError::NoMatch)
    }
}

/// `g[-β_ij]^{-1} g[β_ij]` for the two morphisms from the partition whose
/// only nonsingleton block is `{i, j}` to the singletons.
pub fn generator_image(n: usize, i: usize, j: usize) -> UnipotentMatrix {
    assert!(1 <= i && i < j && j <= n, "need 1 <= i < j <= n");
    let mut blocks: Vec<Vec<usize>> = (1..=n).filter(|&x| x != i && x != j).map(|x| vec![x]).collect();
    blocks.push(vec![i, j]);
    let p = NoncrossingPartition::new(n, blocks).expect("a single pair never crosses");
    let omega = NoncrossingPartition::singletons(n).expect("n >= 2");
    let beta = ClusterMorphism::new(p.clone(), omega.clone(), [EdgeVector::new(BlockRef(i), BlockRef(j))].into())
        .expect("beta is a morphism");
    let minus = ClusterMorphism::new(p, omega, [EdgeVector::new(BlockRef(j), BlockRef(i))].into())
        .expect("minus beta is a morphism");
    g_matrix(&minus).inverse().mul(&g_matrix(&beta))
}
