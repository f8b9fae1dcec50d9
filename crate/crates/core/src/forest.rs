//! Binary trees on a totally ordered vertex set `{1..m}` and the
//! compatibility calculus on `G(V)`, the edge vectors `v_j - v_i` together
//! with the root vectors `* - v_k`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::clique::maximal_cliques;

/// An element of `G(V)`.
///
/// `Edge { child, parent }` is the vector `v_parent - v_child`; `Root(k)` is
/// `* - v_k`. Only the relative order of the labels matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GVector {
    Edge { child: usize, parent: usize },
    Root(usize),
}

impl GVector {
    pub fn edge(child: usize, parent: usize) -> Self {
        GVector::Edge { child, parent }
    }

    pub fn is_root(self) -> bool {
        matches!(self, GVector::Root(_))
    }

    /// Smallest and largest label touched; roots extend to infinity.
    pub fn support(self) -> (usize, usize) {
        match self {
            GVector::Edge { child, parent } => (child.min(parent), child.max(parent)),
            GVector::Root(k) => (k, usize::MAX),
        }
    }

    /// Coordinates in `Z^{m+1}`, index 0 standing for `*`.
    pub fn coords(self, m: usize) -> Vec<i64> {
        let mut v = vec![0; m + 1];
        match self {
            GVector::Edge { child, parent } => {
                v[parent] += 1;
                v[child] -= 1;
            }
            GVector::Root(k) => {
                v[0] += 1;
                v[k] -= 1;
            }
        }
        v
    }

    fn within(self, m: usize) -> bool {
        match self {
            GVector::Edge { child, parent } => child != parent && (1..=m).contains(&child) && (1..=m).contains(&parent),
            GVector::Root(k) => (1..=m).contains(&k),
        }
    }
}

impl fmt::Display for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GVector::Edge { child, parent } => write!(f, "v{parent}-v{child}"),
            GVector::Root(k) => write!(f, "*-v{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("{0} and {1} are not compatible")]
    NotCompatible(GVector, GVector),
    #[error("{0} is not a vector over 1..={1}")]
    OutOfRange(GVector, usize),
    #[error("{0} is not in the reduced domain of {1}")]
    NotInDomain(GVector, GVector),
    #[error("expected a unique congruent vector, found {0}")]
    NotUnique(usize),
    #[error("formula gives {formula} but search gives {search}")]
    SigmaMismatch { formula: GVector, search: GVector },
    #[error("edge set is not a binary tree on {0} vertices")]
    NotATree(usize),
}

/// All `m^2` vectors of `G({1..m})`: edges first, then roots.
pub fn gvector_universe(m: usize) -> Vec<GVector> {
    let mut out = Vec::with_capacity(m * m);
    for child in 1..=m {
        for parent in (1..=m).filter(|&p| p != child) {
            out.push(GVector::edge(child, parent));
        }
    }
    out.extend((1..=m).map(GVector::Root));
    out
}

fn root_edge_compatible(k: usize, child: usize, parent: usize) -> bool {
    let (lo, hi) = (child.min(parent), child.max(parent));
    k == parent || k < lo || k > hi
}

/// Compatibility on `G(V)` by the case analysis on supports.
pub fn gcompatible(x: GVector, y: GVector) -> bool {
    use GVector::*;
    if x == y {
        return true;
    }
    match (x, y) {
        (Root(_), Root(_)) => false,
        (Root(k), Edge { child, parent }) | (Edge { child, parent }, Root(k)) => root_edge_compatible(k, child, parent),
        (Edge { child: c1, parent: p1 }, Edge { child: c2, parent: p2 }) => {
            let shared: Vec<usize> = [c1, p1].into_iter().filter(|v| *v == c2 || *v == p2).collect();
            let (lo1, hi1) = x.support();
            let (lo2, hi2) = y.support();
            match shared.len() {
                0 => hi1 < lo2 || hi2 < lo1 || (lo1 < lo2 && hi2 < hi1) || (lo2 < lo1 && hi1 < hi2),
                1 => {
                    let v = shared[0];
                    let u1 = if c1 == v { p1 } else { c1 };
                    let u2 = if c2 == v { p2 } else { c2 };
                    if (u1 < v) != (u2 < v) {
                        // supports meet in the single point v
                        !(c1 == v && c2 == v)
                    } else {
                        let (long, short) = if u1.abs_diff(v) > u2.abs_diff(v) {
                            ((c1, p1), (c2, p2))
                        } else {
                            ((c2, p2), (c1, p1))
                        };
                        long.0 == v && short.1 == v
                    }
                }
                _ => false,
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Child,
    LeftParent,
    RightParent,
}

/// Compatibility by local degree constraints: every vertex has at most one
/// parent, one left child and one right child, and a child on the side of
/// the parent is strictly closer than the parent.
pub fn gcompatible_local(x: GVector, y: GVector) -> bool {
    use GVector::*;
    if x == y {
        return true;
    }
    let (Edge { child: c1, parent: p1 }, Edge { child: c2, parent: p2 }) = (x, y) else {
        return gcompatible(x, y);
    };
    let shared: Vec<usize> = [c1, p1].into_iter().filter(|v| *v == c2 || *v == p2).collect();
    if shared.len() != 1 {
        return gcompatible(x, y);
    }
    let v = shared[0];
    let role = |c: usize, p: usize| {
        if c == v {
            (Role::Child, p)
        } else if c < v {
            (Role::LeftParent, c)
        } else {
            (Role::RightParent, c)
        }
    };
    let (r1, u1) = role(c1, p1);
    let (r2, u2) = role(c2, p2);
    if r1 == r2 {
        return false;
    }
    let (parent_of_v, child_of_v) = match (r1, r2) {
        (Role::Child, _) => (u1, u2),
        (_, Role::Child) => (u2, u1),
        _ => return true,
    };
    let same_side = (parent_of_v < v) == (child_of_v < v);
    !same_side || child_of_v.abs_diff(v) < parent_of_v.abs_diff(v)
}

/// `true` iff the vectors are pairwise compatible.
pub fn pairwise_compatible<'a>(vectors: impl IntoIterator<Item = &'a GVector>) -> bool {
    let v: Vec<GVector> = vectors.into_iter().copied().collect();
    v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| gcompatible(a, b)))
}

/// A binary tree on `{1..m}` given by its `m - 1` edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    m: usize,
    root: usize,
    edges: BTreeSet<GVector>,
}

impl BinaryTree {
    pub fn new(m: usize, edges: BTreeSet<GVector>) -> Result<Self, ForestError> {
        let root = tree_root(m, &edges).ok_or(ForestError::NotATree(m))?;
        Ok(BinaryTree { m, root, edges })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &BTreeSet<GVector> {
        &self.edges
    }

    /// The edges together with the root vector.
    pub fn augmented(&self) -> BTreeSet<GVector> {
        let mut out = self.edges.clone();
        out.insert(GVector::Root(self.root));
        out
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        parents(self.m, &self.edges).and_then(|p| p[v])
    }

    /// `true` iff `a` lies on the path from `d` to the root (inclusive).
    pub fn is_ancestor(&self, a: usize, d: usize) -> bool {
        let parent = parents(self.m, &self.edges).expect("valid tree");
        let mut cur = Some(d);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = parent[c];
        }
        false
    }
}

fn parents(m: usize, edges: &BTreeSet<GVector>) -> Option<Vec<Option<usize>>> {
    let mut parent = vec![None; m + 1];
    for &e in edges {
        let GVector::Edge { child, parent: p } = e else { return None };
        if !e.within(m) || parent[child].is_some() {
            return None;
        }
        parent[child] = Some(p);
    }
    Some(parent)
}

fn tree_root(m: usize, edges: &BTreeSet<GVector>) -> Option<usize> {
    if m == 0 || edges.len() + 1 != m {
        return None;
    }
    let parent = parents(m, edges)?;
    let roots: Vec<usize> = (1..=m).filter(|&v| parent[v].is_none()).collect();
    let &[root] = roots.as_slice() else { return None };
    let ancestors = |mut v: usize| {
        let mut chain = vec![v];
        while let Some(p) = parent[v] {
            if chain.len() > m {
                return None;
            }
            chain.push(p);
            v = p;
        }
        Some(chain)
    };
    let chains: Vec<Vec<usize>> = (0..=m).map(|v| if v == 0 { Some(vec![]) } else { ancestors(v) }).collect::<Option<_>>()?;
    for &e in edges {
        let GVector::Edge { child, parent: p } = e else { unreachable!() };
        let (lo, hi) = (child.min(p), child.max(p));
        if !(lo + 1..hi).all(|k| chains[k].contains(&child)) {
            return None;
        }
    }
    for v in 1..=m {
        let kids: Vec<usize> = (1..=m).filter(|&c| parent[c] == Some(v)).collect();
        let ok = match kids.as_slice() {
            [] | [_] => true,
            [a, b] => (*a < v) != (*b < v),
            _ => false,
        };
        if !ok {
            return None;
        }
    }
    Some(root)
}

/// `true` iff the edges form a binary tree on `{1..m}`.
pub fn is_binary_tree(m: usize, edges: &BTreeSet<GVector>) -> bool {
    tree_root(m, edges).is_some()
}

fn trees_on(lo: usize, hi: usize) -> Vec<(usize, Vec<GVector>)> {
    if lo > hi {
        return vec![(0, Vec::new())];
    }
    let mut out = Vec::new();
    for r in lo..=hi {
        let left = trees_on(lo, r - 1);
        let right = trees_on(r + 1, hi);
        for (lr, le) in &left {
            for (rr, re) in &right {
                let mut edges = le.clone();
                edges.extend(re.iter().copied());
                if *lr != 0 {
                    edges.push(GVector::edge(*lr, r));
                }
                if *rr != 0 {
                    edges.push(GVector::edge(*rr, r));
                }
                out.push((r, edges));
            }
        }
    }
    out
}

/// All binary trees on `{1..m}`, ordered by root, then left subtree, then
/// right subtree.
pub fn enumerate_binary_trees(m: usize) -> Vec<BinaryTree> {
    if m == 0 {
        return Vec::new();
    }
    trees_on(1, m)
        .into_iter()
        .map(|(root, edges)| BinaryTree { m, root, edges: edges.into_iter().collect() })
        .collect()
}

/// All maximal pairwise compatible subsets of `G({1..m})`.
pub fn maximal_compatible_sets(m: usize) -> Vec<BTreeSet<GVector>> {
    cliques_of(&gvector_universe(m))
}

/// All maximal pairwise compatible sets of edge vectors on `{1..m}`.
pub fn maximal_compatible_edge_sets(m: usize) -> Vec<BTreeSet<GVector>> {
    let edges: Vec<GVector> = gvector_universe(m).into_iter().filter(|v| !v.is_root()).collect();
    cliques_of(&edges)
}

fn cliques_of(universe: &[GVector]) -> Vec<BTreeSet<GVector>> {
    let mut out: Vec<BTreeSet<GVector>> = maximal_cliques(universe.len(), |i, j| gcompatible(universe[i], universe[j]))
        .into_iter()
        .map(|c| c.into_iter().map(|i| universe[i]).collect())
        .collect();
    out.sort();
    out
}

/// A root vector compatible with every edge of `edges`.
///
/// Starting from the longest edge, follow parents in the direction that edge
/// points; the last vertex reached is the root. On the empty set this
/// returns `m`.
pub fn find_compatible_root(m: usize, edges: &BTreeSet<GVector>) -> Result<usize, ForestError> {
    let list: Vec<GVector> = edges.iter().copied().collect();
    for &e in &list {
        if e.is_root() || !e.within(m) {
            return Err(ForestError::OutOfRange(e, m));
        }
    }
    for (i, &a) in list.iter().enumerate() {
        if let Some(&b) = list[i + 1..].iter().find(|&&b| !gcompatible(a, b)) {
            return Err(ForestError::NotCompatible(a, b));
        }
    }
    let longest = list.iter().copied().min_by_key(|e| {
        let (lo, hi) = e.support();
        let GVector::Edge { child, .. } = *e else { unreachable!() };
        (std::cmp::Reverse(hi - lo), lo, hi, child)
    });
    let Some(GVector::Edge { child, parent }) = longest else {
        return Ok(m);
    };
    let rightward = parent > child;
    let mut cur = parent;
    while let Some(next) = list.iter().find_map(|e| match *e {
        GVector::Edge { child: c, parent: p } if c == cur && (p > c) == rightward => Some(p),
        _ => None,
    }) {
        cur = next;
    }
    Ok(cur)
}

/// Which half of the reduced vertex set a vector lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    First,
    Second,
}

/// A vector of `G(V') ⊔ G(V'')`, written with the original labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reduced {
    pub piece: Piece,
    pub vector: GVector,
}

/// The two reduced vertex sets attached to `e`.
pub fn reduced_pieces(m: usize, e: GVector) -> (Vec<usize>, Vec<usize>) {
    match e {
        GVector::Root(k) if k == 1 || k == m => ((1..=m).filter(|&v| v != k).collect(), Vec::new()),
        GVector::Root(k) => ((1..k).collect(), (k + 1..=m).collect()),
        GVector::Edge { child, parent } if child < parent => {
            let (a, b) = (child, parent);
            ((1..a).chain(b..=m).collect(), (a + 1..b).collect())
        }
        GVector::Edge { child, parent } => {
            let (a, b) = (parent, child);
            ((1..=a).chain(b + 1..=m).collect(), (a + 1..b).collect())
        }
    }
}

fn universe_on(labels: &[usize]) -> Vec<GVector> {
    let mut out = Vec::new();
    for &c in labels {
        for &p in labels.iter().filter(|&&p| p != c) {
            out.push(GVector::edge(c, p));
        }
    }
    out.extend(labels.iter().map(|&k| GVector::Root(k)));
    out
}

/// Every element of the reduced domain of `e`.
pub fn reduced_domain(m: usize, e: GVector) -> Vec<Reduced> {
    let (first, second) = reduced_pieces(m, e);
    let tag = |piece| move |vector| Reduced { piece, vector };
    universe_on(&first)
        .into_iter()
        .map(tag(Piece::First))
        .chain(universe_on(&second).into_iter().map(tag(Piece::Second)))
        .collect()
}

/// Compatibility on the reduced domain: vectors on different pieces are
/// always compatible.
pub fn reduced_compatible(a: Reduced, b: Reduced) -> bool {
    a.piece != b.piece || gcompatible(a.vector, b.vector)
}

fn check_domain(m: usize, e: GVector, y: Reduced) -> Result<(), ForestError> {
    if !e.within(m) {
        return Err(ForestError::OutOfRange(e, m));
    }
    let (first, second) = reduced_pieces(m, e);
    let labels = match y.piece {
        Piece::First => first,
        Piece::Second => second,
    };
    let inside = match y.vector {
        GVector::Edge { child, parent } => child != parent && labels.contains(&child) && labels.contains(&parent),
        GVector::Root(k) => labels.contains(&k),
    };
    if inside {
        Ok(())
    } else {
        Err(ForestError::NotInDomain(y.vector, e))
    }
}

/// The reduction bijection from the reduced domain of `e` onto the vectors
/// compatible with `e`, by explicit formula.
pub fn sigma_g_formula(m: usize, e: GVector, y: Reduced) -> Result<GVector, ForestError> {
    check_domain(m, e, y)?;
    let v = y.vector;
    let out = match (e, y.piece, v) {
        (GVector::Root(k), _, GVector::Root(j)) => GVector::edge(j, k),
        (GVector::Root(_), _, _) => v,
        (GVector::Edge { child, parent }, Piece::Second, GVector::Root(k)) => {
            // both signs: the new parent is the child endpoint of e
            let _ = parent;
            GVector::edge(k, child)
        }
        (GVector::Edge { .. }, Piece::Second, _) => v,
        (GVector::Edge { child, parent }, Piece::First, GVector::Edge { child: j, parent: p }) if p == parent => {
            let (a, b) = (child.min(parent), child.max(parent));
            let beyond = if child < parent { j < a } else { j > b };
            if beyond {
                GVector::edge(j, child)
            } else {
                v
            }
        }
        (GVector::Edge { .. }, Piece::First, _) => v,
    };
    Ok(out)
}

fn lift(e: GVector, y: Reduced, m: usize) -> Vec<i64> {
    // In the second piece, * stands for the child endpoint of an edge.
    match (e, y.piece, y.vector) {
        (GVector::Edge { child, .. }, Piece::Second, GVector::Root(k)) => GVector::edge(k, child).coords(m),
        _ => y.vector.coords(m),
    }
}

/// The same bijection by search: the unique vector other than `e`,
/// compatible with `e`, congruent to `y` modulo `e`.
pub fn sigma_g_search(m: usize, e: GVector, y: Reduced) -> Result<GVector, ForestError> {
    check_domain(m, e, y)?;
    let target = lift(e, y, m);
    let ec = e.coords(m);
    let found: Vec<GVector> = gvector_universe(m)
        .into_iter()
        .filter(|&x| x != e && gcompatible(x, e))
        .filter(|&x| {
            let diff: Vec<i64> = x.coords(m).iter().zip(&target).map(|(a, b)| a - b).collect();
            integer_multiple(&diff, &ec)
        })
        .collect();
    match found.as_slice() {
        [x] => Ok(*x),
        _ => Err(ForestError::NotUnique(found.len())),
    }
}

fn integer_multiple(v: &[i64], e: &[i64]) -> bool {
    let Some(i) = e.iter().position(|&c| c != 0) else {
        return v.iter().all(|&c| c == 0);
    };
    if v[i] % e[i] != 0 {
        return false;
    }
    let t = v[i] / e[i];
    v.iter().zip(e).all(|(a, b)| *a == t * b)
}

/// The reduction bijection, computed by formula and cross-checked by search.
pub fn sigma_g(m: usize, e: GVector, y: Reduced) -> Result<GVector, ForestError> {
    let formula = sigma_g_formula(m, e, y)?;
    let search = sigma_g_search(m, e, y)?;
    if formula != search {
        return Err(ForestError::SigmaMismatch { formula, search });
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[GVector]) -> BTreeSet<GVector> {
        v.iter().copied().collect()
    }

    fn edge(c: usize, p: usize) -> GVector {
        GVector::edge(c, p)
    }

    #[test]
    fn universe_sizes() {
        assert_eq!(gvector_universe(1), vec![GVector::Root(1)]);
        assert_eq!(gvector_universe(3).len(), 9);
        assert_eq!(gvector_universe(5).len(), 25);
    }

    #[test]
    fn compatibility_examples() {
        // v1 - v2 against the two roots
        assert!(gcompatible(edge(2, 1), GVector::Root(1)));
        assert!(!gcompatible(edge(2, 1), GVector::Root(2)));
        assert!(!gcompatible(edge(1, 2), edge(1, 3)));
        assert!(gcompatible(edge(1, 2), edge(3, 2)));
        assert!(!gcompatible(GVector::Root(1), GVector::Root(2)));
        assert!(!gcompatible(edge(1, 2), edge(2, 1)));
        // crossing supports
        assert!(!gcompatible(edge(1, 3), edge(2, 4)));
        assert!(gcompatible(edge(1, 4), edge(2, 3)));
        assert!(gcompatible(edge(1, 2), edge(3, 4)));
        // shared endpoint, nested
        assert!(gcompatible(edge(1, 3), edge(2, 1)));
        assert!(!gcompatible(edge(1, 3), edge(1, 2)));
    }

    #[test]
    fn display() {
        assert_eq!(edge(1, 3).to_string(), "v3-v1");
        assert_eq!(GVector::Root(2).to_string(), "*-v2");
    }

    #[test]
    fn tree_checks() {
        let t = set(&[edge(1, 2), edge(3, 2)]);
        assert!(is_binary_tree(3, &t));
        assert_eq!(BinaryTree::new(3, t).unwrap().root(), 2);
        assert!(!is_binary_tree(3, &set(&[edge(2, 1), edge(2, 3)])));
        assert!(is_binary_tree(1, &BTreeSet::new()));
        assert!(!is_binary_tree(3, &set(&[edge(1, 3), edge(3, 2)])));
        assert!(!is_binary_tree(3, &set(&[edge(1, 2), edge(2, 1)])));
        assert!(!is_binary_tree(3, &set(&[edge(2, 3), edge(1, 3)])));
        assert!(!is_binary_tree(3, &set(&[GVector::Root(1), edge(2, 3)])));
    }

    #[test]
    fn tree_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for m in 1..=6 {
            let trees = enumerate_binary_trees(m);
            assert_eq!(trees.len(), catalan[m]);
            assert!(trees.iter().all(|t| is_binary_tree(m, t.edges())));
            let distinct: BTreeSet<_> = trees.iter().collect();
            assert_eq!(distinct.len(), trees.len());
        }
    }

    #[test]
    fn small_maximal_sets() {
        assert_eq!(maximal_compatible_sets(1), vec![set(&[GVector::Root(1)])]);
        let two = maximal_compatible_sets(2);
        assert_eq!(two.len(), 2);
        assert!(two.contains(&set(&[edge(1, 2), GVector::Root(2)])));
        assert!(two.contains(&set(&[edge(2, 1), GVector::Root(1)])));
        assert_eq!(maximal_compatible_sets(3).len(), 5);
    }

    #[test]
    fn maximal_sets_are_augmented_trees() {
        for m in 1..=5 {
            let cliques: BTreeSet<_> = maximal_compatible_sets(m).into_iter().collect();
            let trees: BTreeSet<_> = enumerate_binary_trees(m).iter().map(BinaryTree::augmented).collect();
            assert_eq!(cliques, trees, "m = {m}");
            let edge_cliques: BTreeSet<_> = maximal_compatible_edge_sets(m).into_iter().collect();
            let plain: BTreeSet<_> = enumerate_binary_trees(m).into_iter().map(|t| t.edges().clone()).collect();
            assert_eq!(edge_cliques, plain, "m = {m}");
        }
    }

    #[test]
    fn compatibility_matches_tree_oracle() {
        for m in 1..=5 {
            let trees: Vec<BTreeSet<GVector>> = enumerate_binary_trees(m).iter().map(BinaryTree::augmented).collect();
            let u = gvector_universe(m);
            for &x in &u {
                for &y in &u {
                    let oracle = trees.iter().any(|t| t.contains(&x) && t.contains(&y));
                    assert_eq!(gcompatible(x, y), oracle, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn local_rule_matches_case_analysis() {
        for m in 1..=7 {
            let u = gvector_universe(m);
            for &x in &u {
                for &y in &u {
                    assert_eq!(gcompatible(x, y), gcompatible_local(x, y), "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn compatible_roots() {
        assert_eq!(find_compatible_root(2, &set(&[edge(1, 2)])), Ok(2));
        assert_eq!(find_compatible_root(3, &BTreeSet::new()), Ok(3));
        assert_eq!(find_compatible_root(3, &set(&[edge(1, 2), edge(3, 2)])), Ok(2));
        assert!(matches!(
            find_compatible_root(3, &set(&[edge(1, 2), edge(1, 3)])),
            Err(ForestError::NotCompatible(..))
        ));
    }

    #[test]
    fn compatible_root_on_every_subforest() {
        for m in 1..=6 {
            for t in enumerate_binary_trees(m) {
                let edges: Vec<GVector> = t.edges().iter().copied().collect();
                for mask in 0u32..(1 << edges.len()) {
                    let s: BTreeSet<GVector> =
                        edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                    let k = find_compatible_root(m, &s).unwrap();
                    assert!(s.iter().all(|&e| gcompatible(e, GVector::Root(k))), "{s:?} -> {k}");
                }
            }
        }
    }

    #[test]
    fn sigma_examples() {
        // root case: * - v_j goes to v_k - v_j
        let r = Reduced { piece: Piece::First, vector: GVector::Root(1) };
        assert_eq!(sigma_g(5, GVector::Root(3), r), Ok(edge(1, 3)));
        // positive edge v_b - v_a, j < a: v_b - v_j goes to v_a - v_j
        let e = edge(2, 4);
        let y = Reduced { piece: Piece::First, vector: edge(1, 4) };
        assert_eq!(sigma_g(5, e, y), Ok(edge(1, 2)));
        let y = Reduced { piece: Piece::Second, vector: GVector::Root(3) };
        assert_eq!(sigma_g(5, e, y), Ok(edge(3, 2)));
        // untouched vectors are fixed
        let y = Reduced { piece: Piece::First, vector: edge(5, 4) };
        assert_eq!(sigma_g(5, e, y), Ok(edge(5, 4)));
        // negative edge: * - v_k goes to v_b - v_k
        let y = Reduced { piece: Piece::Second, vector: GVector::Root(3) };
        assert_eq!(sigma_g(5, edge(4, 2), y), Ok(edge(3, 4)));
        let y = Reduced { piece: Piece::First, vector: edge(5, 2) };
        assert_eq!(sigma_g(5, edge(4, 2), y), Ok(edge(5, 4)));
        // outside the domain
        let y = Reduced { piece: Piece::Second, vector: GVector::Root(1) };
        assert!(matches!(sigma_g(5, e, y), Err(ForestError::NotInDomain(..))));
    }

    #[test]
    fn sigma_is_a_compatibility_preserving_bijection() {
        for m in 1..=6 {
            for e in gvector_universe(m) {
                let domain = reduced_domain(m, e);
                let images: Vec<GVector> = domain.iter().map(|&y| sigma_g(m, e, y).unwrap()).collect();
                let expected: BTreeSet<GVector> =
                    gvector_universe(m).into_iter().filter(|&x| x != e && gcompatible(x, e)).collect();
                let got: BTreeSet<GVector> = images.iter().copied().collect();
                assert_eq!(got.len(), images.len(), "not injective for {e}");
                assert_eq!(got, expected, "wrong image for {e}");
                for (i, &a) in domain.iter().enumerate() {
                    for (j, &b) in domain.iter().enumerate() {
                        assert_eq!(reduced_compatible(a, b), gcompatible(images[i], images[j]), "{e}: {a:?} {b:?}");
                    }
                }
            }
        }
    }
}
