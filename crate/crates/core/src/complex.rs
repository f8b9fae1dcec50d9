//! Vertex links, the flag condition, the cell census and the boundary words
//! of the 2-cells.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::category::{factorization_poset, first_factors, last_factors, CategoryError, ClusterMorphism, HomCache};
use crate::clique::maximal_cliques;
use crate::partition::{enumerate_partitions, BlockRef, EdgeVector, NoncrossingPartition};
use crate::presentation::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex label {0:?} occurs in both complexes")]
    SharedLabel(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("{0} does not have rank two")]
    NotRankTwo(String),
    #[error("forward link of {0} is not a single cycle")]
    NotACycle(String),
    #[error("unexpected factor {0} in a 2-cell boundary")]
    UnexpectedFactor(String),
}

/// A finite simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<BTreeSet<usize>>,
}

impl SimplicialComplex {
    /// Keeps the maximal faces; vertices lying in no face become singleton
    /// facets.
    pub fn new(vertices: Vec<String>, faces: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let mut faces: Vec<BTreeSet<usize>> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut facets: Vec<BTreeSet<usize>> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| f.is_subset(g)) {
                facets.push(f);
            }
        }
        for v in 0..vertices.len() {
            if !facets.iter().any(|f| f.contains(&v)) {
                facets.push(BTreeSet::from([v]));
            }
        }
        facets.sort();
        SimplicialComplex { vertices, facets }
    }

    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), facets: Vec::new() }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[BTreeSet<usize>] {
        &self.facets
    }

    /// Facets as sets of labels.
    pub fn labeled_facets(&self) -> BTreeSet<BTreeSet<String>> {
        self.facets.iter().map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest facet dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len()) || self.facets.is_empty()
    }

    pub fn contains_face(&self, face: &BTreeSet<usize>) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    /// Edges of the 1-skeleton, as sorted pairs.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let v: Vec<usize> = f.iter().copied().collect();
            for (i, &a) in v.iter().enumerate() {
                for &b in &v[i + 1..] {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    /// Every clique of the 1-skeleton spans a face.
    pub fn is_flag(&self) -> bool {
        let edges = self.edges();
        maximal_cliques(self.vertices.len(), |a, b| edges.contains(&(a.min(b), a.max(b))))
            .into_iter()
            .filter(|c| !c.is_empty())
            .all(|c| self.contains_face(&c.into_iter().collect()))
    }

    /// The join; the empty complex is the unit.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let mine: BTreeSet<&String> = self.vertices.iter().collect();
        if let Some(v) = other.vertices.iter().find(|v| mine.contains(v)) {
            return Err(ComplexError::SharedLabel(v.clone()));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let offset = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut facets = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.iter().copied().chain(b.iter().map(|v| v + offset)).collect());
            }
        }
        Ok(SimplicialComplex::new(vertices, facets))
    }

    /// How many facets contain each codimension-one face of a facet.
    pub fn ridge_degrees(&self) -> BTreeMap<BTreeSet<usize>, usize> {
        let mut out = BTreeMap::new();
        for f in &self.facets {
            for &v in f {
                let mut ridge = f.clone();
                ridge.remove(&v);
                if !ridge.is_empty() {
                    *out.entry(ridge).or_insert(0) += 1;
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for f in self.facets.iter().filter(|f| f.contains(&v)) {
                for &w in f {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All nonempty faces.
    pub fn faces(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let v: Vec<usize> = f.iter().copied().collect();
            for mask in 1u64..(1 << v.len()) {
                out.insert(v.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect());
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces().iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// Pure, every ridge in exactly two facets, connected: the combinatorial
    /// stand-in for a triangulated sphere of dimension at least one.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.is_pure() && self.is_connected() && self.ridge_degrees().values().all(|&d| d == 2)
    }
}

/// Rank-one morphisms out of `x`; faces are the first-factor sets of
/// morphisms out of `x`, the facets coming from morphisms to the singletons.
pub fn forward_link(x: &NoncrossingPartition, cache: &HomCache) -> Result<SimplicialComplex, ComplexError> {
    let vertices = cache.morphisms_from(x, 1);
    let index: BTreeMap<&ClusterMorphism, usize> = vertices.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let omega = NoncrossingPartition::singletons(x.n()).expect("n >= 1");
    let mut faces = Vec::new();
    for m in cache.hom(x, &omega).iter() {
        faces.push(first_factors(m)?.iter().map(|f| index[f]).collect());
    }
    Ok(SimplicialComplex::new(vertices.iter().map(ToString::to_string).collect(), faces))
}

/// Every first-factor set of every morphism out of `x`.
pub fn forward_faces(x: &NoncrossingPartition, cache: &HomCache) -> Result<BTreeSet<BTreeSet<ClusterMorphism>>, ComplexError> {
    let mut out = BTreeSet::new();
    for r in 1..=x.rank() {
        for m in cache.morphisms_from(x, r) {
            out.insert(first_factors(&m)?);
        }
    }
    Ok(out)
}

/// Rank-one morphisms into `x`; faces are the last-factor sets of morphisms
/// into `x`.
pub fn backward_link(x: &NoncrossingPartition, cache: &HomCache) -> Result<SimplicialComplex, ComplexError> {
    let vertices = cache.morphisms_into(x, 1);
    let index: BTreeMap<&ClusterMorphism, usize> = vertices.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut faces = Vec::new();
    for r in 1..=(x.n() - 1 - x.rank()) {
        for m in cache.morphisms_into(x, r) {
            faces.push(last_factors(&m)?.iter().map(|f| index[f]).collect());
        }
    }
    Ok(SimplicialComplex::new(vertices.iter().map(ToString::to_string).collect(), faces))
}

/// The link of `x`: the join of its backward and forward links.
pub fn vertex_link(x: &NoncrossingPartition, cache: &HomCache) -> Result<SimplicialComplex, ComplexError> {
    backward_link(x, cache)?.join(&forward_link(x, cache)?)
}

/// Transfers a morphism out of the one-block partition of `{1..m}` to a
/// morphism out of `x` that splits only the block `block` (of size `m`).
pub fn lift_block_morphism(x: &NoncrossingPartition, block: BlockRef, f: &ClusterMorphism) -> ClusterMorphism {
    let elems = x.block(block).expect("block of x");
    let relabel = |v: usize| elems[v - 1];
    let mut blocks: Vec<Vec<usize>> = x.blocks().iter().filter(|b| b[0] != block.0).cloned().collect();
    blocks.extend(f.target().blocks().iter().map(|b| b.iter().map(|&v| relabel(v)).collect()));
    let target = NoncrossingPartition::new(x.n(), blocks).expect("splitting a block stays noncrossing");
    let edges = f
        .edges()
        .iter()
        .map(|e| EdgeVector::new(BlockRef(relabel(e.child.0)), BlockRef(relabel(e.parent.0))))
        .collect();
    ClusterMorphism::new(x.clone(), target, edges).expect("lifted edges form a morphism")
}

/// The facets of the join, over the blocks of `x`, of the forward links of
/// one-block partitions, with vertices lifted to morphisms out of `x`.
pub fn forward_link_by_blocks(
    x: &NoncrossingPartition,
    cache: &HomCache,
) -> Result<BTreeSet<BTreeSet<ClusterMorphism>>, ComplexError> {
    let mut acc: BTreeSet<BTreeSet<ClusterMorphism>> = BTreeSet::from([BTreeSet::new()]);
    for b in x.block_refs() {
        let m = x.block(b).expect("own block").len();
        if m == 1 {
            continue;
        }
        let one = NoncrossingPartition::one_block(m).expect("m >= 1");
        let omega = NoncrossingPartition::singletons(m).expect("m >= 1");
        let mut facets = BTreeSet::new();
        for t in cache.hom(&one, &omega).iter() {
            let lifted: BTreeSet<ClusterMorphism> =
                first_factors(t)?.iter().map(|f| lift_block_morphism(x, b, f)).collect();
            facets.insert(lifted);
        }
        acc = acc
            .iter()
            .flat_map(|a| facets.iter().map(move |f| a.union(f).cloned().collect::<BTreeSet<_>>()))
            .collect();
    }
    acc.remove(&BTreeSet::new());
    Ok(acc)
}

/// Cells of the classifying space by dimension: one per object of that rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCensus {
    pub n: usize,
    pub counts: Vec<usize>,
    pub euler: i64,
}

pub fn cell_census(n: usize) -> CellCensus {
    let mut counts = vec![0usize; n.max(1)];
    for p in enumerate_partitions(n) {
        counts[p.rank()] += 1;
    }
    let euler = counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    CellCensus { n, counts, euler }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwoCellKind {
    /// Two blocks `{a.0, a.1}` and `{b.0, b.1}`.
    Square { a: (usize, usize), b: (usize, usize) },
    /// One block `{i, j, k}`.
    Pentagon { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCell {
    pub object: NoncrossingPartition,
    pub kind: TwoCellKind,
    pub word: Word,
}

fn second_factor_via(h: &ClusterMorphism, f: &ClusterMorphism) -> Result<ClusterMorphism, ComplexError> {
    factorization_poset(h)?
        .factorizations
        .into_iter()
        .find(|fac| fac.first == *f)
        .map(|fac| fac.second)
        .ok_or_else(|| ComplexError::UnexpectedFactor(f.to_string()))
}

// A rank-one morphism to the singletons from a partition with one pair
// block {i, j}: the letter is x_ij for child i, x_ij^-1 for child j.
fn pair_edge(m: &ClusterMorphism) -> Result<(usize, usize, bool), ComplexError> {
    let e = m.edges().iter().next().ok_or_else(|| ComplexError::UnexpectedFactor(m.to_string()))?;
    let (i, j) = (e.child.0.min(e.parent.0), e.child.0.max(e.parent.0));
    Ok((i, j, e.child.0 == i))
}

/// The boundary word of the 2-cell of a rank-two object, read around its
/// forward link: at each intermediate object the path runs back along one
/// morphism to the singletons and out along the other.
pub fn two_cell_boundary(s: &NoncrossingPartition, cache: &HomCache) -> Result<TwoCell, ComplexError> {
    if s.rank() != 2 {
        return Err(ComplexError::NotRankTwo(s.to_string()));
    }
    let big: Vec<&Vec<usize>> = s.blocks().iter().filter(|b| b.len() > 1).collect();
    let kind = match big.as_slice() {
        [b] => TwoCellKind::Pentagon { i: b[0], j: b[1], k: b[2] },
        [a, b] => TwoCellKind::Square { a: (a[0], a[1]), b: (b[0], b[1]) },
        _ => return Err(ComplexError::NotRankTwo(s.to_string())),
    };
    let omega = NoncrossingPartition::singletons(s.n()).expect("n >= 1");
    let tops: Vec<ClusterMorphism> = cache.hom(s, &omega).iter().cloned().collect();
    let factors: Vec<BTreeSet<ClusterMorphism>> = tops.iter().map(first_factors).collect::<Result<_, _>>()?;
    let vertices: BTreeSet<&ClusterMorphism> = factors.iter().flatten().collect();
    let not_cycle = || ComplexError::NotACycle(s.to_string());

    // walk f_1, h_1, f_2, h_2, ... where h_t has first factors f_t and f_{t+1}
    let start = *vertices.iter().next().ok_or_else(not_cycle)?;
    let mut walk: Vec<(ClusterMorphism, usize)> = Vec::new();
    let mut f = start.clone();
    let mut prev: Option<usize> = None;
    loop {
        let h = (0..tops.len()).find(|&t| Some(t) != prev && factors[t].contains(&f)).ok_or_else(not_cycle)?;
        walk.push((f.clone(), h));
        let next = factors[h].iter().find(|g| **g != f).ok_or_else(not_cycle)?.clone();
        prev = Some(h);
        f = next;
        if f == *start {
            break;
        }
        if walk.len() > vertices.len() {
            return Err(not_cycle());
        }
    }
    if walk.len() != vertices.len() || walk.len() != tops.len() {
        return Err(not_cycle());
    }

    let mut word = Vec::new();
    let p = walk.len();
    for t in 0..p {
        let (ref f, h) = walk[t];
        let h_prev = walk[(t + p - 1) % p].1;
        let a = second_factor_via(&tops[h_prev], f)?;
        let b = second_factor_via(&tops[h], f)?;
        let (i, j, a_positive) = pair_edge(&a)?;
        let (i2, j2, b_positive) = pair_edge(&b)?;
        if (i, j) != (i2, j2) || a_positive == b_positive {
            return Err(ComplexError::UnexpectedFactor(b.to_string()));
        }
        // back along -β then out along β is x_ij
        let letter = Letter::new(i, j);
        word.push(if b_positive { letter } else { letter.inv() });
    }
    Ok(TwoCell { object: s.clone(), kind, word })
}

/// Morphisms `s -> Ω` joined when they share a first factor; `true` iff this
/// graph is connected.
pub fn equivalence_graph_connected(s: &NoncrossingPartition, cache: &HomCache) -> Result<bool, ComplexError> {
    let omega = NoncrossingPartition::singletons(s.n()).expect("n >= 1");
    let tops = cache.hom(s, &omega);
    let factors: Vec<BTreeSet<ClusterMorphism>> = tops.iter().map(first_factors).collect::<Result<_, _>>()?;
    if tops.is_empty() {
        return Ok(true);
    }
    let mut seen = vec![false; tops.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in 0..tops.len() {
            if !seen[b] && !factors[a].is_disjoint(&factors[b]) {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    Ok(seen.into_iter().all(|x| x))
}
