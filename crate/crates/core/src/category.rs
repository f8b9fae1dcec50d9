//! Cluster morphisms between noncrossing partitions: hom-sets, the transport
//! map `σ_T`, composition, factorization cubes and first/last factors.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::{enumerate_binary_trees, gcompatible, is_binary_tree, GVector};
use crate::partition::{
    edge_set_relative, enumerate_partitions, parallel_sets_relative, project, BlockRef, EdgeVector,
    NoncrossingPartition, ParallelSet, PartitionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("edge {0} is not in the relative edge set")]
    EdgeOutside(EdgeVector),
    #[error("edges do not form a cluster morphism {from} -> {to}")]
    NotAMorphism { from: String, to: String },
    #[error("cannot compose: {0} is not {1}")]
    NotComposable(String, String),
    #[error("expected exactly one transported edge, found {found}")]
    UniquenessViolation { found: usize },
    #[error("forest test and maximality scan disagree on {0}")]
    CharacterizationMismatch(String),
    #[error("rank-one morphisms are not pairwise compatible")]
    Incompatible,
    #[error("no morphism has the given factors")]
    NoExtension,
    #[error("{0} is not a rank-one morphism with the required endpoint")]
    NotAFactor(String),
}

/// The relative parallel sets of `target` over `source`, with the block
/// embedding of each relative edge into `G` of its parallel set.
#[derive(Clone, Debug)]
pub struct RelativeFrame {
    sets: Vec<ParallelSet>,
    position: BTreeMap<BlockRef, (usize, usize)>,
    edges: BTreeSet<EdgeVector>,
}

impl RelativeFrame {
    pub fn new(target: &NoncrossingPartition, source: &NoncrossingPartition) -> Result<Self, PartitionError> {
        let sets = parallel_sets_relative(target, source)?;
        let mut position = BTreeMap::new();
        for (i, s) in sets.iter().enumerate() {
            for (p, &b) in s.members.iter().enumerate() {
                position.insert(b, (i, p + 1));
            }
        }
        let edges = edge_set_relative(target, source)?;
        Ok(RelativeFrame { sets, position, edges })
    }

    pub fn sets(&self) -> &[ParallelSet] {
        &self.sets
    }

    pub fn edges(&self) -> &BTreeSet<EdgeVector> {
        &self.edges
    }

    /// The parallel set of `e` and its image there; edges to the covering
    /// block become root vectors.
    pub fn embed(&self, e: EdgeVector) -> Option<(usize, GVector)> {
        if !self.edges.contains(&e) {
            return None;
        }
        let (set, c) = self.position[&e.child];
        if self.sets[set].cover == Some(e.parent) {
            return Some((set, GVector::Root(c)));
        }
        let (_, p) = self.position[&e.parent];
        Some((set, GVector::edge(c, p)))
    }

    pub fn unembed(&self, set: usize, v: GVector) -> EdgeVector {
        let s = &self.sets[set];
        match v {
            GVector::Edge { child, parent } => EdgeVector::new(s.members[child - 1], s.members[parent - 1]),
            GVector::Root(k) => EdgeVector::new(s.members[k - 1], s.cover.expect("root vectors need a cover")),
        }
    }

    /// Edges in different parallel sets are compatible; otherwise compare
    /// their images.
    pub fn compatible(&self, e: EdgeVector, f: EdgeVector) -> Result<bool, CategoryError> {
        let (se, ve) = self.embed(e).ok_or(CategoryError::EdgeOutside(e))?;
        let (sf, vf) = self.embed(f).ok_or(CategoryError::EdgeOutside(f))?;
        Ok(se != sf || gcompatible(ve, vf))
    }
}

/// A morphism from a coarse partition to a refinement of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMorphism", into = "RawMorphism")]
pub struct ClusterMorphism {
    source: NoncrossingPartition,
    target: NoncrossingPartition,
    edges: BTreeSet<EdgeVector>,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    from: usize,
    to: usize,
}

#[derive(Serialize, Deserialize)]
struct RawMorphism {
    source: NoncrossingPartition,
    target: NoncrossingPartition,
    edges: Vec<RawEdge>,
}

impl TryFrom<RawMorphism> for ClusterMorphism {
    type Error = CategoryError;

    fn try_from(raw: RawMorphism) -> Result<Self, Self::Error> {
        let edges = raw.edges.iter().map(|e| EdgeVector::new(BlockRef(e.from), BlockRef(e.to))).collect();
        ClusterMorphism::new(raw.source, raw.target, edges)
    }
}

impl From<ClusterMorphism> for RawMorphism {
    fn from(m: ClusterMorphism) -> Self {
        let edges = m.edges.iter().map(|e| RawEdge { from: e.child.0, to: e.parent.0 }).collect();
        RawMorphism { source: m.source, target: m.target, edges }
    }
}

impl fmt::Display for ClusterMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{} -> {} {{{}}}", self.source, self.target, edges.join(", "))
    }
}

impl ClusterMorphism {
    pub fn new(
        source: NoncrossingPartition,
        target: NoncrossingPartition,
        edges: BTreeSet<EdgeVector>,
    ) -> Result<Self, CategoryError> {
        if !is_cluster_morphism(&source, &target, &edges)? {
            return Err(CategoryError::NotAMorphism { from: source.to_string(), to: target.to_string() });
        }
        Ok(ClusterMorphism { source, target, edges })
    }

    pub(crate) fn new_unchecked(
        source: NoncrossingPartition,
        target: NoncrossingPartition,
        edges: BTreeSet<EdgeVector>,
    ) -> Self {
        ClusterMorphism { source, target, edges }
    }

    pub fn identity(p: &NoncrossingPartition) -> Self {
        ClusterMorphism { source: p.clone(), target: p.clone(), edges: BTreeSet::new() }
    }

    pub fn source(&self) -> &NoncrossingPartition {
        &self.source
    }

    pub fn target(&self) -> &NoncrossingPartition {
        &self.target
    }

    pub fn edges(&self) -> &BTreeSet<EdgeVector> {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    pub fn is_identity(&self) -> bool {
        self.edges.is_empty()
    }
}

fn forest_test(frame: &RelativeFrame, edges: &BTreeSet<EdgeVector>) -> bool {
    let mut per_set: Vec<BTreeSet<GVector>> = vec![BTreeSet::new(); frame.sets.len()];
    for &e in edges {
        match frame.embed(e) {
            Some((s, v)) => {
                per_set[s].insert(v);
            }
            None => return false,
        }
    }
    frame.sets.iter().zip(&per_set).all(|(set, image)| {
        let m = set.members.len();
        let roots: Vec<usize> = image
            .iter()
            .filter_map(|v| match v {
                GVector::Root(k) => Some(*k),
                _ => None,
            })
            .collect();
        let tree: BTreeSet<GVector> = image.iter().copied().filter(|v| !v.is_root()).collect();
        if !is_binary_tree(m, &tree) {
            return false;
        }
        match (set.cover, roots.as_slice()) {
            (None, []) => true,
            (Some(_), [k]) => crate::forest::BinaryTree::new(m, tree).map(|t| t.root() == *k).unwrap_or(false),
            _ => false,
        }
    })
}

fn maximality_scan(frame: &RelativeFrame, edges: &BTreeSet<EdgeVector>) -> Result<bool, CategoryError> {
    if !edges.is_subset(&frame.edges) {
        return Ok(false);
    }
    let list: Vec<EdgeVector> = edges.iter().copied().collect();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            if !frame.compatible(a, b)? {
                return Ok(false);
            }
        }
    }
    for &e in frame.edges.difference(edges) {
        let mut blocked = false;
        for &t in &list {
            if !frame.compatible(e, t)? {
                blocked = true;
                break;
            }
        }
        if !blocked {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `true` iff `edges` is a maximal pairwise compatible subset of
/// `E(target, source)`. Both characterizations are evaluated and must agree.
pub fn is_cluster_morphism(
    source: &NoncrossingPartition,
    target: &NoncrossingPartition,
    edges: &BTreeSet<EdgeVector>,
) -> Result<bool, CategoryError> {
    let frame = RelativeFrame::new(target, source)?;
    let forest = forest_test(&frame, edges);
    let scan = maximality_scan(&frame, edges)?;
    if forest != scan {
        return Err(CategoryError::CharacterizationMismatch(format!("{source} -> {target}")));
    }
    Ok(forest)
}

/// Compatibility of two relative edges.
pub fn edge_compatible(
    target: &NoncrossingPartition,
    source: &NoncrossingPartition,
    e: EdgeVector,
    f: EdgeVector,
) -> Result<bool, CategoryError> {
    RelativeFrame::new(target, source)?.compatible(e, f)
}

/// All morphisms `source -> target`, sorted by edge set.
pub fn hom(source: &NoncrossingPartition, target: &NoncrossingPartition) -> Vec<ClusterMorphism> {
    if source.n() != target.n() || !target.refines(source).unwrap_or(false) {
        return Vec::new();
    }
    let frame = RelativeFrame::new(target, source).expect("refinement checked");
    let mut partial: Vec<BTreeSet<EdgeVector>> = vec![BTreeSet::new()];
    for (i, set) in frame.sets.iter().enumerate() {
        let options: Vec<Vec<EdgeVector>> = enumerate_binary_trees(set.members.len())
            .iter()
            .map(|t| {
                let vectors = if set.cover.is_some() { t.augmented() } else { t.edges().clone() };
                vectors.into_iter().map(|v| frame.unembed(i, v)).collect()
            })
            .collect();
        partial = partial
            .iter()
            .flat_map(|acc| {
                options.iter().map(move |opt| {
                    let mut next = acc.clone();
                    next.extend(opt.iter().copied());
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<ClusterMorphism> = partial
        .into_iter()
        .map(|edges| ClusterMorphism::new_unchecked(source.clone(), target.clone(), edges))
        .collect();
    out.sort();
    out
}

type HomSet = Arc<Vec<ClusterMorphism>>;

/// Memoized hom-sets, safe to share between threads.
#[derive(Default)]
pub struct HomCache {
    map: RwLock<HashMap<(NoncrossingPartition, NoncrossingPartition), HomSet>>,
}

impl HomCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn hom(&self, source: &NoncrossingPartition, target: &NoncrossingPartition) -> Arc<Vec<ClusterMorphism>> {
        let key = (source.clone(), target.clone());
        if let Some(v) = self.map.read().expect("cache lock").get(&key) {
            return Arc::clone(v);
        }
        let computed = Arc::new(hom(source, target));
        let mut w = self.map.write().expect("cache lock");
        Arc::clone(w.entry(key).or_insert(computed))
    }

    /// Every morphism out of `x` whose rank is `rank`.
    pub fn morphisms_from(&self, x: &NoncrossingPartition, rank: usize) -> Vec<ClusterMorphism> {
        if rank > x.rank() {
            return Vec::new();
        }
        enumerate_partitions(x.n())
            .iter()
            .filter(|t| t.rank() + rank == x.rank() && t.refines(x).unwrap_or(false))
            .flat_map(|t| self.hom(x, t).iter().cloned().collect::<Vec<_>>())
            .collect()
    }

    /// Every morphism into `x` whose rank is `rank`.
    pub fn morphisms_into(&self, x: &NoncrossingPartition, rank: usize) -> Vec<ClusterMorphism> {
        enumerate_partitions(x.n())
            .iter()
            .filter(|s| s.rank() == x.rank() + rank && x.refines(s).unwrap_or(false))
            .flat_map(|s| self.hom(s, x).iter().cloned().collect::<Vec<_>>())
            .collect()
    }
}

/// Every morphism of the category on `{1..n}`, grouped by source then target.
pub fn all_morphisms(n: usize, cache: &HomCache) -> Vec<ClusterMorphism> {
    let objects = enumerate_partitions(n);
    let mut out = Vec::new();
    for s in &objects {
        for t in &objects {
            out.extend(cache.hom(s, t).iter().cloned());
        }
    }
    out
}

/// Transports `f ∈ E(R, Q)` along `t: R -> S` to the unique edge of
/// `E(S, Q)` over `f` that is compatible with `t` and not in it.
pub fn sigma_t(t: &ClusterMorphism, ambient: &NoncrossingPartition, f: EdgeVector) -> Result<EdgeVector, CategoryError> {
    let over = RelativeFrame::new(&t.source, ambient)?;
    if !over.edges.contains(&f) {
        return Err(CategoryError::EdgeOutside(f));
    }
    let frame = RelativeFrame::new(&t.target, ambient)?;
    let proj = project(&t.target, &t.source)?;
    let mut found = Vec::new();
    for &x in &frame.edges {
        if proj.push(x) != Some(f) || t.edges.contains(&x) {
            continue;
        }
        let mut ok = true;
        for &e in &t.edges {
            if !frame.compatible(x, e)? {
                ok = false;
                break;
            }
        }
        if ok {
            found.push(x);
        }
    }
    match found.as_slice() {
        [x] => Ok(*x),
        _ => Err(CategoryError::UniquenessViolation { found: found.len() }),
    }
}

/// `first` followed by `second`.
pub fn compose(first: &ClusterMorphism, second: &ClusterMorphism) -> Result<ClusterMorphism, CategoryError> {
    if first.target != second.source {
        return Err(CategoryError::NotComposable(first.target.to_string(), second.source.to_string()));
    }
    let mut edges = second.edges.clone();
    for &f in &first.edges {
        edges.insert(sigma_t(second, &first.source, f)?);
    }
    Ok(ClusterMorphism::new_unchecked(first.source.clone(), second.target.clone(), edges))
}

/// Merges the blocks of `p` joined by `edges`.
pub fn merge_along(p: &NoncrossingPartition, edges: &BTreeSet<EdgeVector>) -> Result<NoncrossingPartition, PartitionError> {
    let mut owner: BTreeMap<BlockRef, BlockRef> = p.block_refs().map(|b| (b, b)).collect();
    fn find(owner: &BTreeMap<BlockRef, BlockRef>, mut b: BlockRef) -> BlockRef {
        while owner[&b] != b {
            b = owner[&b];
        }
        b
    }
    for e in edges {
        let a = find(&owner, e.child);
        let b = find(&owner, e.parent);
        if a != b {
            owner.insert(a.max(b), a.min(b));
        }
    }
    let mut groups: BTreeMap<BlockRef, Vec<usize>> = BTreeMap::new();
    for r in p.block_refs() {
        let root = find(&owner, r);
        groups.entry(root).or_default().extend(p.block(r).expect("own block"));
    }
    NoncrossingPartition::new(p.n(), groups.into_values().collect())
}

/// One factorization of a morphism, indexed by the edges `second_edges`
/// carried by its second factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub second_edges: BTreeSet<EdgeVector>,
    pub intermediate: NoncrossingPartition,
    pub first: ClusterMorphism,
    pub second: ClusterMorphism,
}

/// The factorization of `m` whose second factor carries `second_edges`.
pub fn factorization(m: &ClusterMorphism, second_edges: &BTreeSet<EdgeVector>) -> Result<Factorization, CategoryError> {
    if !second_edges.is_subset(&m.edges) {
        let e = *second_edges.difference(&m.edges).next().expect("nonempty difference");
        return Err(CategoryError::EdgeOutside(e));
    }
    let intermediate = merge_along(&m.target, second_edges)?;
    let proj = project(&m.target, &intermediate)?;
    let first_edges = m
        .edges
        .difference(second_edges)
        .map(|&e| proj.push(e).expect("edges outside the second factor survive projection"))
        .collect();
    Ok(Factorization {
        second_edges: second_edges.clone(),
        first: ClusterMorphism::new_unchecked(m.source.clone(), intermediate.clone(), first_edges),
        second: ClusterMorphism::new_unchecked(intermediate.clone(), m.target.clone(), second_edges.clone()),
        intermediate,
    })
}

/// The factorizations of a morphism ordered by the subsets of its edges.
#[derive(Clone, Debug)]
pub struct FactorizationPoset {
    pub morphism: ClusterMorphism,
    pub factorizations: Vec<Factorization>,
}

impl FactorizationPoset {
    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    /// `a <= b` when a morphism of factorizations goes from `a` to `b`,
    /// i.e. when `b` carries fewer edges in its second factor.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.factorizations[b].second_edges.is_subset(&self.factorizations[a].second_edges)
    }

    /// Pairs `(a, b)` with `a < b` differing in exactly one edge.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.factorizations.iter().enumerate() {
            for (j, b) in self.factorizations.iter().enumerate() {
                if b.second_edges.is_subset(&a.second_edges) && a.second_edges.len() == b.second_edges.len() + 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn maximal_chains(&self) -> usize {
        let k = self.morphism.rank();
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for (i, f) in self.factorizations.iter().enumerate() {
            by_size[f.second_edges.len()].push(i);
        }
        let mut count = vec![0usize; self.factorizations.len()];
        for &i in &by_size[k] {
            count[i] = 1;
        }
        let hasse = self.hasse();
        for size in (0..k).rev() {
            for &j in &by_size[size] {
                count[j] = hasse.iter().filter(|&&(_, b)| b == j).map(|&(a, _)| count[a]).sum();
            }
        }
        by_size[0].iter().map(|&i| count[i]).sum()
    }

    /// Intermediate objects are pairwise distinct.
    pub fn is_embedding(&self) -> bool {
        let objects: BTreeSet<&NoncrossingPartition> = self.factorizations.iter().map(|f| &f.intermediate).collect();
        objects.len() == self.factorizations.len()
    }
}

pub fn factorization_poset(m: &ClusterMorphism) -> Result<FactorizationPoset, CategoryError> {
    let edges: Vec<EdgeVector> = m.edges.iter().copied().collect();
    let mut factorizations = Vec::with_capacity(1 << edges.len());
    for mask in 0u64..(1 << edges.len()) {
        let subset: BTreeSet<EdgeVector> =
            edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        factorizations.push(factorization(m, &subset)?);
    }
    Ok(FactorizationPoset { morphism: m.clone(), factorizations })
}

/// The rank-one morphisms `m` factors through first.
pub fn first_factors(m: &ClusterMorphism) -> Result<BTreeSet<ClusterMorphism>, CategoryError> {
    m.edges
        .iter()
        .map(|&e| {
            let mut rest = m.edges.clone();
            rest.remove(&e);
            Ok(factorization(m, &rest)?.first)
        })
        .collect()
}

/// The rank-one morphisms `m` factors through last: one per edge.
pub fn last_factors(m: &ClusterMorphism) -> Result<BTreeSet<ClusterMorphism>, CategoryError> {
    m.edges.iter().map(|&e| Ok(factorization(m, &BTreeSet::from([e]))?.second)).collect()
}

/// Two rank-one morphisms out of the same object are s-compatible when they
/// are the first factors of a common rank-two morphism.
pub fn s_compatible(a: &ClusterMorphism, b: &ClusterMorphism, cache: &HomCache) -> Result<bool, CategoryError> {
    if a.source != b.source {
        return Ok(false);
    }
    let wanted = BTreeSet::from([a.clone(), b.clone()]);
    for m in cache.morphisms_from(&a.source, 2) {
        if first_factors(&m)? == wanted {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Dual of [`s_compatible`] for rank-one morphisms into the same object.
pub fn t_compatible(a: &ClusterMorphism, b: &ClusterMorphism, cache: &HomCache) -> Result<bool, CategoryError> {
    if a.target != b.target {
        return Ok(false);
    }
    let wanted = BTreeSet::from([a.clone(), b.clone()]);
    for m in cache.morphisms_into(&a.target, 2) {
        if last_factors(&m)? == wanted {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_pairwise(
    factors: &BTreeSet<ClusterMorphism>,
    compatible: impl Fn(&ClusterMorphism, &ClusterMorphism) -> Result<bool, CategoryError>,
) -> Result<(), CategoryError> {
    let list: Vec<&ClusterMorphism> = factors.iter().collect();
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            if !compatible(a, b)? {
                return Err(CategoryError::Incompatible);
            }
        }
    }
    Ok(())
}

fn unique(found: Vec<ClusterMorphism>) -> Result<ClusterMorphism, CategoryError> {
    let mut found = found;
    match found.len() {
        0 => Err(CategoryError::NoExtension),
        1 => Ok(found.pop().expect("one element")),
        k => Err(CategoryError::UniquenessViolation { found: k }),
    }
}

/// The morphism out of `source` whose first factors are exactly `factors`.
pub fn morphism_from_first_factors(
    source: &NoncrossingPartition,
    factors: &BTreeSet<ClusterMorphism>,
    cache: &HomCache,
) -> Result<ClusterMorphism, CategoryError> {
    for f in factors {
        if f.rank() != 1 || f.source != *source {
            return Err(CategoryError::NotAFactor(f.to_string()));
        }
    }
    check_pairwise(factors, |a, b| s_compatible(a, b, cache))?;
    let mut found = Vec::new();
    for m in cache.morphisms_from(source, factors.len()) {
        if first_factors(&m)? == *factors {
            found.push(m);
        }
    }
    unique(found)
}

/// The morphism into `target` whose last factors are exactly `factors`.
pub fn morphism_from_last_factors(
    target: &NoncrossingPartition,
    factors: &BTreeSet<ClusterMorphism>,
    cache: &HomCache,
) -> Result<ClusterMorphism, CategoryError> {
    for f in factors {
        if f.rank() != 1 || f.target != *target {
            return Err(CategoryError::NotAFactor(f.to_string()));
        }
    }
    check_pairwise(factors, |a, b| t_compatible(a, b, cache))?;
    let mut found = Vec::new();
    for m in cache.morphisms_into(target, factors.len()) {
        if last_factors(&m)? == *factors {
            found.push(m);
        }
    }
    unique(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NoncrossingPartition {
        s.parse().unwrap()
    }

    fn e(child: usize, parent: usize) -> EdgeVector {
        EdgeVector::new(BlockRef(child), BlockRef(parent))
    }

    fn edges(v: &[(usize, usize)]) -> BTreeSet<EdgeVector> {
        v.iter().map(|&(c, q)| e(c, q)).collect()
    }

    fn omega(n: usize) -> NoncrossingPartition {
        NoncrossingPartition::singletons(n).unwrap()
    }

    #[test]
    fn recognizes_morphisms() {
        let top = p("(123)");
        assert!(!is_cluster_morphism(&top, &omega(3), &edges(&[(1, 2), (1, 3)])).unwrap());
        assert!(is_cluster_morphism(&top, &omega(3), &edges(&[(1, 2), (2, 3)])).unwrap());
        assert!(is_cluster_morphism(&top, &top, &BTreeSet::new()).unwrap());
        assert!(!is_cluster_morphism(&top, &omega(3), &edges(&[(1, 2)])).unwrap());
        assert!(is_cluster_morphism(&omega(3), &top, &BTreeSet::new()).is_err());
    }

    #[test]
    fn hom_counts() {
        let top = p("(123)");
        assert_eq!(hom(&top, &p("(12)(3)")).len(), 2);
        assert_eq!(hom(&top, &p("(1)(23)")).len(), 2);
        assert_eq!(hom(&top, &p("(13)(2)")).len(), 1);
        assert_eq!(hom(&p("(12)(3)"), &omega(3)).len(), 2);
        assert_eq!(hom(&top, &omega(3)).len(), 5);
        assert_eq!(hom(&omega(3), &top).len(), 0);
        for x in enumerate_partitions(4) {
            assert_eq!(hom(&x, &x), vec![ClusterMorphism::identity(&x)]);
        }
        for m in hom(&top, &omega(3)) {
            assert!(is_cluster_morphism(m.source(), m.target(), m.edges()).unwrap());
        }
    }

    #[test]
    fn relative_compatibility() {
        let top = p("(123)");
        let o = omega(3);
        assert!(edge_compatible(&o, &top, e(1, 3), e(2, 1)).unwrap());
        assert!(!edge_compatible(&o, &top, e(1, 2), e(1, 3)).unwrap());
        let q = p("(12)(34)");
        assert!(edge_compatible(&omega(4), &q, e(1, 2), e(3, 4)).unwrap());
        assert!(edge_compatible(&o, &top, e(1, 2), e(1, 1)).is_err());
    }

    fn example_s() -> ClusterMorphism {
        let v = NoncrossingPartition::one_block(5).unwrap();
        let xy = p("(1 4 5)(2 3)");
        ClusterMorphism::new(v, xy, edges(&[(2, 1)])).unwrap()
    }

    fn example_t() -> ClusterMorphism {
        let xy = p("(1 4 5)(2 3)");
        ClusterMorphism::new(xy, omega(5), edges(&[(2, 3), (1, 4), (4, 5)])).unwrap()
    }

    #[test]
    fn transport_and_composition() {
        let s = example_s();
        let t = example_t();
        assert_eq!(sigma_t(&t, s.source(), e(2, 1)), Ok(e(3, 1)));
        let c = compose(&s, &t).unwrap();
        assert_eq!(c.edges(), &edges(&[(2, 3), (1, 4), (4, 5), (3, 1)]));
        assert!(is_cluster_morphism(c.source(), c.target(), c.edges()).unwrap());
        assert!(compose(&t, &s).is_err());

        // n = 3: one of {3 -> 1, 3 -> 2} survives
        let t3 = ClusterMorphism::new(p("(12)(3)"), omega(3), edges(&[(2, 1)])).unwrap();
        let lifted = sigma_t(&t3, &p("(123)"), e(3, 1)).unwrap();
        assert!(lifted == e(3, 1) || lifted == e(3, 2));
        assert_eq!(lifted.child, BlockRef(3));
    }

    #[test]
    fn identities() {
        let s = example_s();
        let id_src = ClusterMorphism::identity(s.source());
        let id_tgt = ClusterMorphism::identity(s.target());
        assert_eq!(compose(&id_src, &s).unwrap(), s);
        assert_eq!(compose(&s, &id_tgt).unwrap(), s);
    }

    #[test]
    fn associativity_in_three_points() {
        let cache = HomCache::new();
        let top = p("(123)");
        let mid = p("(12)(3)");
        for a in cache.hom(&top, &mid).iter() {
            for b in cache.hom(&mid, &omega(3)).iter() {
                let id = ClusterMorphism::identity(&omega(3));
                let left = compose(&compose(a, b).unwrap(), &id).unwrap();
                let right = compose(a, &compose(b, &id).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn factorization_cube_of_rank_three() {
        let m = ClusterMorphism::new(
            NoncrossingPartition::one_block(4).unwrap(),
            omega(4),
            edges(&[(2, 3), (3, 1), (1, 4)]),
        )
        .unwrap();
        let poset = factorization_poset(&m).unwrap();
        assert_eq!(poset.len(), 8);
        assert_eq!(poset.maximal_chains(), 6);
        assert!(poset.is_embedding());
        for f in &poset.factorizations {
            assert_eq!(compose(&f.first, &f.second).unwrap(), m);
        }
        assert_eq!(first_factors(&m).unwrap().len(), 3);
        assert_eq!(last_factors(&m).unwrap().len(), 3);
    }

    #[test]
    fn factors_of_small_morphisms() {
        let tree_b = ClusterMorphism::new(p("(123)"), omega(3), edges(&[(1, 2), (2, 3)])).unwrap();
        let last = last_factors(&tree_b).unwrap();
        assert_eq!(last.len(), 2);
        assert!(last.iter().all(|f| f.rank() == 1 && f.target() == &omega(3)));
        let first = first_factors(&tree_b).unwrap();
        assert_eq!(first.len(), 2);
        assert!(first.iter().all(|f| f.rank() == 1 && f.source() == &p("(123)")));

        let one = ClusterMorphism::new(p("(12)(3)"), omega(3), edges(&[(1, 2)])).unwrap();
        assert_eq!(first_factors(&one).unwrap(), BTreeSet::from([one.clone()]));
        assert_eq!(last_factors(&one).unwrap(), BTreeSet::from([one.clone()]));
        assert_eq!(factorization_poset(&ClusterMorphism::identity(&omega(3))).unwrap().len(), 1);
    }

    #[test]
    fn rebuild_from_first_factors() {
        let cache = HomCache::new();
        let top = p("(123)");
        for m in cache.hom(&top, &omega(3)).iter() {
            let ff = first_factors(m).unwrap();
            assert_eq!(&morphism_from_first_factors(&top, &ff, &cache).unwrap(), m);
            let lf = last_factors(m).unwrap();
            assert_eq!(&morphism_from_last_factors(&omega(3), &lf, &cache).unwrap(), m);
        }
        let rank1 = cache.morphisms_from(&top, 1);
        assert_eq!(rank1.len(), 5);
        for f in &rank1 {
            let single = BTreeSet::from([f.clone()]);
            assert_eq!(&morphism_from_first_factors(&top, &single, &cache).unwrap(), f);
        }
        // the two morphisms onto the same target cannot both be first factors
        let pair: BTreeSet<ClusterMorphism> = cache.hom(&top, &p("(12)(3)")).iter().cloned().collect();
        assert_eq!(morphism_from_first_factors(&top, &pair, &cache), Err(CategoryError::Incompatible));
    }

    #[test]
    fn json_round_trip() {
        let m = example_t();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains(r#""edges":[{"from":2,"to":3},{"from":1,"to":4},{"from":4,"to":5}]"#), "{json}");
        let back: ClusterMorphism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        let bad = json.replace(r#"{"from":4,"to":5},"#, "").replace(r#",{"from":4,"to":5}"#, "");
        assert!(serde_json::from_str::<ClusterMorphism>(&bad).is_err());
    }
}
