//! Noncrossing partitions of `{1..n}` and their adjacency calculus.
//!
//! Blocks are kept in canonical form: each block ascending, blocks sorted by
//! their minimum. A block is named by its minimum element ([`BlockRef`]),
//! which is stable under any operation that does not touch the block.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The minimum element of a block, used as the block's name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockRef(pub usize);

impl fmt::Display for BlockRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Four elements `a < b < c < d` with `a, c` in one block and `b, d` in another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl fmt::Display for CrossingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {} < {} < {}", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("ground set must have at least one element")]
    EmptyGroundSet,
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("element {elem} lies outside 1..={n}")]
    OutOfRange { elem: usize, n: usize },
    #[error("element {0} appears more than once")]
    Duplicate(usize),
    #[error("element {0} is not in any block")]
    Missing(usize),
    #[error("blocks cross: {0}")]
    Crossing(CrossingWitness),
    #[error("ground sets differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("{fine} does not refine {coarse}")]
    NotRefinement { fine: String, coarse: String },
    #[error("cannot parse partition text {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("merged block crosses another block: {0}")]
    Crossing(CrossingWitness),
    #[error("block {0} does not exist")]
    UnknownBlock(BlockRef),
    #[error("cannot merge block {0} with itself")]
    SameBlock(BlockRef),
}

/// Relation between two distinct blocks of one partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Adjacency {
    NotAdjacent,
    /// The first block covers the second.
    CoversFirstOverSecond,
    /// The second block covers the first.
    CoversSecondOverFirst,
    Parallel,
}

impl Adjacency {
    pub fn is_adjacent(self) -> bool {
        self != Adjacency::NotAdjacent
    }
}

/// A complete set of pairwise parallel blocks inside one block (`fiber`) of a
/// coarser partition. Members are listed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParallelSet {
    pub fiber: BlockRef,
    pub cover: Option<BlockRef>,
    pub members: Vec<BlockRef>,
}

impl ParallelSet {
    pub fn is_maximal(&self) -> bool {
        self.cover.is_none()
    }
}

/// The directed edge `parent - child` in the free abelian group on the blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeVector {
    pub parent: BlockRef,
    pub child: BlockRef,
}

impl EdgeVector {
    pub fn new(child: BlockRef, parent: BlockRef) -> Self {
        EdgeVector { parent, child }
    }

    pub fn reversed(self) -> Self {
        EdgeVector { parent: self.child, child: self.parent }
    }
}

impl fmt::Display for EdgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.child, self.parent)
    }
}

/// A noncrossing partition of `{1..n}` in canonical form.
///
/// Values compare lexicographically on `(n, blocks)`, which is the
/// enumeration order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct NoncrossingPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<RawPartition> for NoncrossingPartition {
    type Error = PartitionError;

    fn try_from(raw: RawPartition) -> Result<Self, Self::Error> {
        NoncrossingPartition::new(raw.n, raw.blocks)
    }
}

impl From<NoncrossingPartition> for RawPartition {
    fn from(p: NoncrossingPartition) -> Self {
        RawPartition { n: p.n, blocks: p.blocks }
    }
}

/// Checks that `blocks` is a noncrossing partition of `{1..n}`.
pub fn check_noncrossing(n: usize, blocks: &[Vec<usize>]) -> Result<(), PartitionError> {
    if n == 0 {
        return Err(PartitionError::EmptyGroundSet);
    }
    let mut seen = vec![false; n + 1];
    for block in blocks {
        if block.is_empty() {
            return Err(PartitionError::EmptyBlock);
        }
        for &x in block {
            if x == 0 || x > n {
                return Err(PartitionError::OutOfRange { elem: x, n });
            }
            if seen[x] {
                return Err(PartitionError::Duplicate(x));
            }
            seen[x] = true;
        }
    }
    if let Some(x) = (1..=n).find(|&x| !seen[x]) {
        return Err(PartitionError::Missing(x));
    }
    let sorted: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if let Some(w) = crossing_between(a, b) {
                return Err(PartitionError::Crossing(w));
            }
        }
    }
    Ok(())
}

/// `true` iff `blocks` is a noncrossing partition of `{1..n}`.
pub fn validate_noncrossing(n: usize, blocks: &[Vec<usize>]) -> bool {
    check_noncrossing(n, blocks).is_ok()
}

fn support(block: &[usize]) -> (usize, usize) {
    (block[0], block[block.len() - 1])
}

fn meets_interval(block: &[usize], (lo, hi): (usize, usize)) -> bool {
    block.iter().any(|&x| lo < x && x < hi)
}

// Two blocks cross unless one of them avoids the support of the other.
fn crossing_between(a: &[usize], b: &[usize]) -> Option<CrossingWitness> {
    if !meets_interval(a, support(b)) || !meets_interval(b, support(a)) {
        return None;
    }
    let (first, second) = if a[0] < b[0] { (a, b) } else { (b, a) };
    // first[0] < second[0]; some element of first lies inside supp(second)
    // and then some element of second lies beyond it.
    for &c in first.iter().filter(|&&c| c > second[0]) {
        if let Some(&d) = second.iter().find(|&&d| d > c) {
            return Some(CrossingWitness { a: first[0], b: second[0], c, d });
        }
    }
    None
}

/// Lateral and vertical structure of a set of blocks forming a noncrossing
/// partition of some ordered subset.
#[derive(Clone, Debug)]
pub(crate) struct Nesting {
    pub cover: BTreeMap<BlockRef, Option<BlockRef>>,
    pub sets: Vec<ParallelSet>,
}

pub(crate) fn nesting(fiber: BlockRef, blocks: &[&[usize]]) -> Nesting {
    let by_ref: BTreeMap<BlockRef, &[usize]> = blocks.iter().map(|b| (BlockRef(b[0]), *b)).collect();
    let mut cover = BTreeMap::new();
    for (&r, b) in &by_ref {
        let (lo, hi) = support(b);
        let parent = by_ref
            .iter()
            .filter(|(_, c)| {
                let (clo, chi) = support(c);
                clo < lo && hi < chi
            })
            .min_by_key(|(_, c)| {
                let (clo, chi) = support(c);
                chi - clo
            })
            .map(|(&c, _)| c);
        cover.insert(r, parent);
    }
    let mut groups: BTreeMap<Option<BlockRef>, Vec<BlockRef>> = BTreeMap::new();
    for (&r, &c) in &cover {
        groups.entry(c).or_default().push(r);
    }
    let mut sets = Vec::new();
    for (c, members) in groups {
        match c {
            None => sets.push(ParallelSet { fiber, cover: None, members }),
            Some(c) => {
                let covering = by_ref[&c];
                let mut run = vec![members[0]];
                for pair in members.windows(2) {
                    let left_max = support(by_ref[&pair[0]]).1;
                    let right_min = pair[1].0;
                    if meets_interval(covering, (left_max, right_min)) {
                        sets.push(ParallelSet { fiber, cover: Some(c), members: std::mem::take(&mut run) });
                    }
                    run.push(pair[1]);
                }
                sets.push(ParallelSet { fiber, cover: Some(c), members: run });
            }
        }
    }
    Nesting { cover, sets }
}

impl NoncrossingPartition {
    /// Builds a partition from arbitrary block lists, canonicalizing them.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        check_noncrossing(n, &blocks)?;
        Ok(Self::from_valid(n, blocks))
    }

    fn from_valid(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        NoncrossingPartition { n, blocks }
    }

    /// The all-singletons partition.
    pub fn singletons(n: usize) -> Result<Self, PartitionError> {
        Self::new(n, (1..=n).map(|x| vec![x]).collect())
    }

    /// The partition with a single block.
    pub fn one_block(n: usize) -> Result<Self, PartitionError> {
        Self::new(n, vec![(1..=n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    pub fn block_refs(&self) -> impl Iterator<Item = BlockRef> + '_ {
        self.blocks.iter().map(|b| BlockRef(b[0]))
    }

    pub fn block(&self, r: BlockRef) -> Option<&[usize]> {
        self.blocks
            .binary_search_by_key(&r.0, |b| b[0])
            .ok()
            .map(|i| self.blocks[i].as_slice())
    }

    /// The block containing element `x`.
    pub fn block_of(&self, x: usize) -> Option<BlockRef> {
        self.blocks.iter().find(|b| b.contains(&x)).map(|b| BlockRef(b[0]))
    }

    pub fn is_singletons(&self) -> bool {
        self.blocks.len() == self.n
    }

    /// `true` iff every block of `self` lies inside a block of `coarse`.
    pub fn refines(&self, coarse: &NoncrossingPartition) -> Result<bool, PartitionError> {
        if self.n != coarse.n {
            return Err(PartitionError::SizeMismatch(self.n, coarse.n));
        }
        let mut owner = vec![0usize; self.n + 1];
        for b in &coarse.blocks {
            for &x in b {
                owner[x] = b[0];
            }
        }
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| owner[x] == owner[b[0]])))
    }

    /// Merges two blocks, failing when the result would cross.
    pub fn merge(&self, a: BlockRef, b: BlockRef) -> Result<Self, MergeError> {
        if a == b {
            return Err(MergeError::SameBlock(a));
        }
        let ba = self.block(a).ok_or(MergeError::UnknownBlock(a))?;
        let bb = self.block(b).ok_or(MergeError::UnknownBlock(b))?;
        let mut merged: Vec<usize> = ba.iter().chain(bb).copied().collect();
        merged.sort_unstable();
        for other in self.blocks.iter().filter(|o| o[0] != a.0 && o[0] != b.0) {
            if let Some(w) = crossing_between(&merged, other) {
                return Err(MergeError::Crossing(w));
            }
        }
        let mut blocks: Vec<Vec<usize>> =
            self.blocks.iter().filter(|o| o[0] != a.0 && o[0] != b.0).cloned().collect();
        blocks.push(merged);
        Ok(Self::from_valid(self.n, blocks))
    }

    pub(crate) fn nesting(&self) -> Nesting {
        let blocks: Vec<&[usize]> = self.blocks.iter().map(|b| b.as_slice()).collect();
        nesting(BlockRef(1), &blocks)
    }

    /// The block directly above `r` in the support order, if any.
    pub fn cover_of(&self, r: BlockRef) -> Option<BlockRef> {
        self.nesting().cover.get(&r).copied().flatten()
    }

    pub fn adjacency(&self, a: BlockRef, b: BlockRef) -> Adjacency {
        let nest = self.nesting();
        if nest.cover.get(&b) == Some(&Some(a)) {
            return Adjacency::CoversFirstOverSecond;
        }
        if nest.cover.get(&a) == Some(&Some(b)) {
            return Adjacency::CoversSecondOverFirst;
        }
        let same_set = nest
            .sets
            .iter()
            .any(|s| a != b && s.members.contains(&a) && s.members.contains(&b));
        if same_set {
            Adjacency::Parallel
        } else {
            Adjacency::NotAdjacent
        }
    }

    /// Parallel sets: the maximal set first, then covered sets by covering
    /// block and lateral position.
    pub fn parallel_sets(&self) -> Vec<ParallelSet> {
        self.nesting().sets
    }

    /// The edge set: both directions for parallel pairs, and `A - B` when `A`
    /// covers `B`.
    pub fn edge_set(&self) -> BTreeSet<EdgeVector> {
        edges_of_sets(&self.parallel_sets())
    }

    /// Splits this partition into the induced partitions of the blocks of
    /// `coarse`, keyed by the coarse block.
    pub(crate) fn fibers<'a>(
        &'a self,
        coarse: &NoncrossingPartition,
    ) -> Result<BTreeMap<BlockRef, Vec<&'a [usize]>>, PartitionError> {
        if !self.refines(coarse)? {
            return Err(PartitionError::NotRefinement { fine: self.to_string(), coarse: coarse.to_string() });
        }
        let mut fibers: BTreeMap<BlockRef, Vec<&[usize]>> = BTreeMap::new();
        for b in &self.blocks {
            let w = coarse.block_of(b[0]).expect("refinement covers every element");
            fibers.entry(w).or_default().push(b.as_slice());
        }
        Ok(fibers)
    }

    /// Renders the compact form `(1)(23)`, only meaningful for `n <= 9`.
    pub fn compact(&self) -> String {
        self.blocks
            .iter()
            .map(|b| format!("({})", b.iter().map(|x| x.to_string()).collect::<String>()))
            .collect()
    }
}

pub(crate) fn edges_of_sets(sets: &[ParallelSet]) -> BTreeSet<EdgeVector> {
    let mut edges = BTreeSet::new();
    for s in sets {
        for &x in &s.members {
            for &y in &s.members {
                if x != y {
                    edges.insert(EdgeVector::new(x, y));
                }
            }
            if let Some(c) = s.cover {
                edges.insert(EdgeVector::new(x, c));
            }
        }
    }
    edges
}

/// Parallel sets of each fiber of `fine` over the blocks of `coarse`.
pub fn parallel_sets_relative(
    fine: &NoncrossingPartition,
    coarse: &NoncrossingPartition,
) -> Result<Vec<ParallelSet>, PartitionError> {
    let fibers = fine.fibers(coarse)?;
    Ok(fibers.into_iter().flat_map(|(w, blocks)| nesting(w, &blocks).sets).collect())
}

/// `E(fine, coarse)`, computed fiber by fiber.
pub fn edge_set_relative(
    fine: &NoncrossingPartition,
    coarse: &NoncrossingPartition,
) -> Result<BTreeSet<EdgeVector>, PartitionError> {
    Ok(edges_of_sets(&parallel_sets_relative(fine, coarse)?))
}

/// `E(fine) ∩ ker π_*`, the second route to the relative edge set.
pub fn edge_set_in_kernel(
    fine: &NoncrossingPartition,
    coarse: &NoncrossingPartition,
) -> Result<BTreeSet<EdgeVector>, PartitionError> {
    let proj = project(fine, coarse)?;
    Ok(fine.edge_set().into_iter().filter(|&e| proj.push(e).is_none()).collect())
}

/// The block map of a refinement together with its linear pushforward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    map: BTreeMap<BlockRef, BlockRef>,
}

impl Projection {
    pub fn block(&self, r: BlockRef) -> Option<BlockRef> {
        self.map.get(&r).copied()
    }

    /// Pushes an edge forward; `None` means it lands on zero.
    pub fn push(&self, e: EdgeVector) -> Option<EdgeVector> {
        let p = self.map[&e.parent];
        let c = self.map[&e.child];
        (p != c).then_some(EdgeVector { parent: p, child: c })
    }

    pub fn map(&self) -> &BTreeMap<BlockRef, BlockRef> {
        &self.map
    }
}

pub fn project(fine: &NoncrossingPartition, coarse: &NoncrossingPartition) -> Result<Projection, PartitionError> {
    let fibers = fine.fibers(coarse)?;
    let map = fibers
        .into_iter()
        .flat_map(|(w, blocks)| blocks.into_iter().map(move |b| (BlockRef(b[0]), w)))
        .collect();
    Ok(Projection { map })
}

fn nc_spanning(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
    // Partitions in which the first and last element share a block.
    if elems.len() == 1 {
        return vec![vec![vec![elems[0]]]];
    }
    let mut out = Vec::new();
    for p in 1..elems.len() {
        for inner in nc_all(&elems[1..p]) {
            for rest in nc_spanning(&elems[p..]) {
                let mut blocks = inner.clone();
                for b in rest {
                    if b[0] == elems[p] {
                        let mut b2 = vec![elems[0]];
                        b2.extend(b);
                        blocks.push(b2);
                    } else {
                        blocks.push(b);
                    }
                }
                out.push(blocks);
            }
        }
    }
    out
}

fn nc_all(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if elems.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for q in 0..elems.len() {
        for head in nc_spanning(&elems[..=q]) {
            for tail in nc_all(&elems[q + 1..]) {
                let mut blocks = head.clone();
                blocks.extend(tail);
                out.push(blocks);
            }
        }
    }
    out
}

/// All noncrossing partitions of `{1..n}` in ascending order.
pub fn enumerate_partitions(n: usize) -> Vec<NoncrossingPartition> {
    if n == 0 {
        return Vec::new();
    }
    let elems: Vec<usize> = (1..=n).collect();
    let mut all: Vec<NoncrossingPartition> =
        nc_all(&elems).into_iter().map(|b| NoncrossingPartition::from_valid(n, b)).collect();
    all.sort();
    all
}

impl fmt::Display for NoncrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

fn groups(text: &str) -> Result<Vec<&str>, PartitionError> {
    let err = || PartitionError::Parse(text.to_string());
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(err)?;
        let close = inner.find(')').ok_or_else(err)?;
        out.push(inner[..close].trim());
        rest = inner[close + 1..].trim_start();
    }
    if out.is_empty() {
        return Err(err());
    }
    Ok(out)
}

fn build(blocks: Vec<Vec<usize>>) -> Result<NoncrossingPartition, PartitionError> {
    let n = blocks.iter().flatten().copied().max().unwrap_or(0);
    NoncrossingPartition::new(n, blocks)
}

impl FromStr for NoncrossingPartition {
    type Err = PartitionError;

    /// Accepts `(1)(2 3)` and, when every element is a single digit, the
    /// compact `(1)(23)`. The ground set is `{1..max}`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let groups = groups(text)?;
        let err = || PartitionError::Parse(text.to_string());
        let spaced: Result<Vec<Vec<usize>>, _> = groups
            .iter()
            .map(|g| g.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| err())).collect())
            .collect();
        let spaced = spaced.and_then(build);
        if spaced.is_ok() || groups.iter().any(|g| g.contains(char::is_whitespace)) {
            return spaced;
        }
        let compact: Option<Vec<Vec<usize>>> = groups
            .iter()
            .map(|g| g.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect())
            .collect();
        match compact {
            Some(blocks) => build(blocks),
            None => spaced,
        }
    }
}
