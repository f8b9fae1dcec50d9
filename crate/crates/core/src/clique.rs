//! Maximal clique enumeration (Bron–Kerbosch with pivoting).

/// All maximal cliques of the graph on `0..n` whose edges are given by `adj`.
/// Each clique is sorted; the list is sorted.
pub fn maximal_cliques(n: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let neighbors: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && adj(i, j)).collect()).collect();
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(&neighbors, &mut r, (0..n).collect(), Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn expand(nb: &[Vec<bool>], r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| nb[u][v]).count())
        .expect("p is nonempty");
    let mut p = p;
    let mut x = x;
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !nb[pivot][v]).collect();
    for v in candidates {
        let p2 = p.iter().copied().filter(|&w| nb[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| nb[v][w]).collect();
        r.push(v);
        expand(nb, r, p2, x2, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
