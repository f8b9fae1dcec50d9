//! The twelve acceptance criteria, each exact. Prints one line per criterion
//! and exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};

use ncpcat::category::{sigma_t, HomCache};
use ncpcat::forest::{enumerate_binary_trees, gvector_universe, maximal_compatible_sets};
use ncpcat::matrix::generator_image;
use ncpcat::presentation::{verify_relators, MatrixEvaluator};
use ncpcat::verify::{self, catalan, narayana, Report, Suite};
use ncpcat::{
    cell_census, compose, enumerate_partitions, forward_link, g_matrix, gcompatible, presentation,
    validate_noncrossing, BlockRef, ClusterMorphism, EdgeVector, NoncrossingPartition, UnipotentMatrix,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> NoncrossingPartition {
    s.parse().expect("fixture partition")
}

fn morphism(src: &str, dst: &str, edges: &[(usize, usize)]) -> ClusterMorphism {
    let edges = edges.iter().map(|&(c, q)| EdgeVector::new(BlockRef(c), BlockRef(q))).collect();
    ClusterMorphism::new(p(src), p(dst), edges).expect("fixture morphism")
}

/// Every set partition of `{1..n}`, from restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i > n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(vec![i]);
            } else {
                blocks[b].push(i);
            }
            go(i + 1, n, blocks, out);
            if blocks[b].len() == 1 {
                blocks.pop();
            } else {
                blocks[b].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

/// Sum of the named counters, failing on any witness recorded under them.
fn keys_clean(reports: &[Report], keys: &[&str]) -> Result<u64, String> {
    let mut total = 0;
    for r in reports {
        for f in &r.failures {
            if keys.iter().any(|k| f.starts_with(&format!("{k}:"))) {
                return Err(format!("n = {}: {f}", r.n));
            }
        }
        total += keys.iter().filter_map(|k| r.counts.get(*k)).sum::<u64>();
    }
    ensure(total > 0, || format!("nothing counted under {keys:?}"))?;
    Ok(total)
}

fn criterion_1() -> Outcome {
    let counts: Vec<usize> = (1..=8).map(|n| enumerate_partitions(n).len()).collect();
    ensure(counts == [1, 2, 5, 14, 42, 132, 429, 1430], || format!("counts {counts:?}"))?;
    for n in 1..=8 {
        let all = enumerate_partitions(n);
        let texts: Vec<String> = all.iter().map(NoncrossingPartition::compact).collect();
        ensure(texts.windows(2).all(|w| w[0] < w[1]), || format!("n = {n}: not in text order"))?;
    }
    for n in 1..=6 {
        let brute: BTreeSet<NoncrossingPartition> = set_partitions(n)
            .into_iter()
            .filter(|b| validate_noncrossing(n, b))
            .map(|b| NoncrossingPartition::new(n, b).expect("valid"))
            .collect();
        let listed: BTreeSet<NoncrossingPartition> = enumerate_partitions(n).into_iter().collect();
        ensure(brute == listed, || format!("n = {n}: enumeration differs from brute force"))?;
    }
    for n in 1..=7 {
        let mut hist = vec![0u64; n];
        for q in enumerate_partitions(n) {
            hist[q.rank()] += 1;
        }
        let expected: Vec<u64> = (0..n).map(|k| narayana(n as u64, (n - k) as u64)).collect();
        ensure(hist == expected, || format!("n = {n}: histogram {hist:?} vs {expected:?}"))?;
    }
    Ok("C_1..C_8 = 1,2,5,14,42,132,429,1430; Narayana histograms n <= 7".into())
}

fn criterion_2(cache: &HomCache) -> Outcome {
    let objects = enumerate_partitions(3);
    ensure(objects.len() == 5, || "object count".into())?;
    let top = p("(123)");
    let omega = p("(1)(2)(3)");
    let count = |s: &NoncrossingPartition, t: &NoncrossingPartition| cache.hom(s, t).len();
    let out_of_top: Vec<usize> = ["(1)(23)", "(12)(3)", "(13)(2)"].iter().map(|t| count(&top, &p(t))).collect();
    ensure(out_of_top == [2, 2, 1], || format!("out of (123): {out_of_top:?}"))?;
    let into_omega: Vec<usize> = ["(1)(23)", "(12)(3)", "(13)(2)"].iter().map(|s| count(&p(s), &omega)).collect();
    ensure(into_omega == [2, 2, 2], || format!("into Omega: {into_omega:?}"))?;
    let mut by_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &objects {
        for t in &objects {
            for m in cache.hom(s, t).iter().filter(|m| m.rank() > 0) {
                *by_rank.entry(m.rank()).or_insert(0) += 1;
            }
        }
    }
    ensure(by_rank == BTreeMap::from([(1, 11), (2, 5)]), || format!("{by_rank:?}"))?;
    ensure(count(&top, &omega) == 5, || "rank two".into())?;
    Ok("5 objects, 11 rank-1 (2,2,1 and 2,2,2), 5 rank-2".into())
}

fn criterion_3(cache: &HomCache) -> Outcome {
    let mut pairs = 0;
    for m in 1..=6 {
        let trees = enumerate_binary_trees(m);
        let augmented: Vec<BTreeSet<_>> = trees.iter().map(|t| t.augmented()).collect();
        let universe = gvector_universe(m);
        for &x in &universe {
            for &y in universe.iter().filter(|&&y| y != x) {
                let oracle = augmented.iter().any(|t| t.contains(&x) && t.contains(&y));
                ensure(gcompatible(x, y) == oracle, || format!("m = {m}: {x} {y}"))?;
                pairs += 1;
            }
        }
        let cliques: BTreeSet<_> = maximal_compatible_sets(m).into_iter().collect();
        let expected: BTreeSet<_> = augmented.into_iter().collect();
        ensure(cliques.len() as u64 == catalan(m as u64), || format!("m = {m}: {} maximal sets", cliques.len()))?;
        ensure(cliques == expected, || format!("m = {m}: maximal sets differ from trees"))?;
    }
    let reports: Vec<Report> = (1..=6).map(|m| verify::run(m, Suite::Compat, cache)).collect();
    keys_clean(&reports, &["compat_local", "sigma", "sigma_compat"])?;
    Ok(format!("{pairs} ordered pairs, m <= 6; maximal sets = augmented trees"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for q in enumerate_partitions(n) {
            let refs: Vec<BlockRef> = q.block_refs().collect();
            for &a in &refs {
                for &b in refs.iter().filter(|&&b| b != a) {
                    let merged: Vec<Vec<usize>> = q
                        .blocks()
                        .iter()
                        .filter(|blk| blk[0] != a.0 && blk[0] != b.0)
                        .cloned()
                        .chain(std::iter::once(
                            [q.block(a).unwrap(), q.block(b).unwrap()].concat(),
                        ))
                        .collect();
                    let valid = validate_noncrossing(n, &merged);
                    ensure(q.adjacency(a, b).is_adjacent() == valid, || format!("{q}: {a:?} {b:?}"))?;
                    ensure(q.merge(a, b).is_ok() == valid, || format!("{q}: merge {a:?} {b:?}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} ordered block pairs, n <= 5"))
}

fn criterion_5(assoc: &[Report]) -> Outcome {
    let identity = keys_clean(assoc, &["identity"])?;
    let pairs = keys_clean(assoc, &["composition", "rank_additive"])?;
    let triples = keys_clean(assoc, &["associativity"])?;
    keys_clean(assoc, &["morphisms_valid", "rank_count"])?;
    Ok(format!("{identity} identities, {} composable pairs, {triples} triples, n <= 4", pairs / 2))
}

fn criterion_6(assoc: &[Report]) -> Outcome {
    let s = morphism("(12345)", "(145)(23)", &[(2, 1)]);
    let t = morphism("(145)(23)", "(1)(2)(3)(4)(5)", &[(2, 3), (1, 4), (4, 5)]);
    let lifted = sigma_t(&t, s.source(), EdgeVector::new(BlockRef(2), BlockRef(1)));
    ensure(lifted == Ok(EdgeVector::new(BlockRef(3), BlockRef(1))), || format!("worked example: {lifted:?}"))?;
    let sections = keys_clean(assoc, &["transport_section"])?;
    let pairs = keys_clean(assoc, &["transport_compat"])?;
    Ok(format!("{sections} lifts are sections, {pairs} pairs keep compatibility, n <= 4"))
}

fn criterion_7(cubical: &[Report]) -> Outcome {
    let posets = keys_clean(
        cubical,
        &["factorizations", "factorizations_complete", "factorization_embedding", "factorization_chains"],
    )?;
    keys_clean(cubical, &["factorization_order", "factor_counts"])?;
    keys_clean(cubical, &["first_factors_determine", "last_factors_determine"])?;
    let s = keys_clean(cubical, &["s_compatible_sets"])?;
    let t = keys_clean(cubical, &["t_compatible_sets"])?;
    Ok(format!("{} morphisms Boolean; {s} first-factor and {t} last-factor sets, n <= 4", posets / 4))
}

fn criterion_8(assoc: &[Report], cubical: &[Report]) -> Outcome {
    let s = morphism("(12345)", "(145)(23)", &[(2, 1)]);
    let t = morphism("(145)(23)", "(1)(2)(3)(4)(5)", &[(2, 3), (1, 4), (4, 5)]);
    let rows = |m: &UnipotentMatrix| m.rows().to_vec();
    let gs = vec![
        vec![1, 0, 0, 0, 0],
        vec![0, 1, 0, 1, 0],
        vec![0, 0, 1, 1, 0],
        vec![0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 1],
    ];
    let gt = vec![
        vec![1, 0, 0, 1, 1],
        vec![0, 1, 1, 0, 0],
        vec![0, 0, 1, 0, 0],
        vec![0, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 1],
    ];
    let gst = vec![
        vec![1, 0, 0, 1, 1],
        vec![0, 1, 1, 1, 1],
        vec![0, 0, 1, 1, 1],
        vec![0, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 1],
    ];
    ensure(rows(&g_matrix(&s)) == gs, || "g[S]".into())?;
    ensure(rows(&g_matrix(&t)) == gt, || "g[T]".into())?;
    let st = compose(&s, &t).map_err(|e| e.to_string())?;
    ensure(rows(&g_matrix(&st)) == gst, || "g[S then T]".into())?;
    let functor = keys_clean(assoc, &["functor"])?;
    let injective = keys_clean(cubical, &["matrix_injective"])?;
    let round = keys_clean(cubical, &["matrix_round_trip"])?;
    let basis = keys_clean(assoc, &["basis"])?;
    Ok(format!(
        "worked matrices exact; {functor} products, {injective} hom-sets injective, {round} round trips, {basis} bases"
    ))
}

fn criterion_9(cache: &HomCache) -> Outcome {
    let links: Vec<Report> = (1..=4).map(|n| verify::run(n, Suite::Links, cache)).collect();
    let flag = keys_clean(&links, &["links_flag", "links_join"])?;
    for m in 1..=6 {
        let one = NoncrossingPartition::one_block(m).expect("m >= 1");
        let omega = NoncrossingPartition::singletons(m).expect("m >= 1");
        let facets: BTreeSet<BTreeSet<ClusterMorphism>> =
            cache.hom(&one, &omega).iter().map(|t| ncpcat::first_factors(t).expect("factors")).collect();
        ensure(facets.len() as u64 == catalan(m as u64), || format!("m = {m}: {} facets", facets.len()))?;
        ensure(facets.iter().all(|f| f.len() == m - 1), || format!("m = {m}: facet size"))?;
        let link = forward_link(&one, cache).map_err(|e| e.to_string())?;
        let vertices = m * (m - 1) / 2 + m - 1;
        ensure(link.vertices().len() == vertices, || format!("m = {m}: {} vertices", link.vertices().len()))?;
        let spanned: BTreeSet<&ClusterMorphism> = facets.iter().flatten().collect();
        ensure(spanned.len() == vertices, || format!("m = {m}: facets span {} vertices", spanned.len()))?;
        if m >= 2 {
            ensure(link.facets().len() as u64 == catalan(m as u64), || format!("m = {m}: complex facets"))?;
        }
    }
    let pentagon = forward_link(&p("(123)"), cache).map_err(|e| e.to_string())?;
    let edges = pentagon.edges();
    let mut degree = vec![0; pentagon.vertices().len()];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    ensure(
        pentagon.vertices().len() == 5 && edges.len() == 5 && degree.iter().all(|&d| d == 2) && pentagon.is_connected(),
        || "m = 3 link is not a pentagon".into(),
    )?;
    Ok(format!("{flag} links flag for n <= 4; one-block links m <= 6; pentagon at m = 3"))
}

fn criterion_10() -> Outcome {
    for n in 1..=8 {
        let census = cell_census(n);
        let mut hist = vec![0usize; n];
        for q in enumerate_partitions(n) {
            hist[q.rank()] += 1;
        }
        ensure(census.counts == hist, || format!("n = {n}: {:?} vs {hist:?}", census.counts))?;
    }
    let chi3 = cell_census(3).euler;
    let chi2 = cell_census(2).euler;
    ensure(chi3 == -1, || format!("chi(3) = {chi3}"))?;
    ensure(chi2 == 0, || format!("chi(2) = {chi2}"))?;
    Ok("cells = rank histograms for n <= 8; chi = 0 at n = 2, -1 at n = 3".into())
}

fn criterion_11(cache: &HomCache) -> Outcome {
    let reduced = presentation(3).eliminate((1, 3)).map_err(|e| e.to_string())?;
    ensure(reduced.generators == [(1, 2), (2, 3)] && reduced.is_visibly_free(), || format!("{reduced}"))?;
    let mut relators = 0;
    let mut cells = 0;
    for n in 2..=6 {
        for i in 1..n {
            for j in i + 1..=n {
                let mut expected = UnipotentMatrix::identity(n).rows().to_vec();
                expected[i - 1][j - 1] = 1;
                ensure(generator_image(n, i, j).rows() == expected, || format!("n = {n}: image of x_{i}_{j}"))?;
            }
        }
        let eval = MatrixEvaluator::new(n);
        for r in &presentation(n).relators {
            ensure(eval.eval(r).is_identity(), || format!("n = {n}: relator {r:?}"))?;
            relators += 1;
        }
        let report = verify_relators(n, cache);
        ensure(report.passed(), || format!("n = {n}: {:?}", report.failures))?;
        cells += report.squares + report.pentagons;
    }
    Ok(format!("F_2 at n = 3; {relators} relators and {cells} 2-cells trivial for n <= 6"))
}

fn criterion_12() -> Outcome {
    let s = r#"{"source":{"n":5,"blocks":[[1,2,3,4,5]]},"target":{"n":5,"blocks":[[1,4,5],[2,3]]},"edges":[{"from":2,"to":1}]}"#;
    let t = r#"{"source":{"n":5,"blocks":[[1,4,5],[2,3]]},"target":{"n":5,"blocks":[[1],[2],[3],[4],[5]]},"edges":[{"from":2,"to":3},{"from":1,"to":4},{"from":4,"to":5}]}"#;
    let g = r#"{"n":5,"rows":[[1,0,0,0,0],[0,1,0,1,0],[0,0,1,1,0],[0,0,0,1,0],[0,0,0,0,1]]}"#;
    let commands: Vec<Vec<&str>> = vec![
        vec!["objects", "6"],
        vec!["objects", "6", "--count"],
        vec!["objects", "6", "--by-rank"],
        vec!["hom", "4", "(1234)", "(1)(2)(3)(4)"],
        vec!["hom", "4", "(1234)", "(1)(2)(3)(4)", "--count"],
        vec!["compose", "5", s, t],
        vec!["matrix", "5", t],
        vec!["reconstruct", "5", "(12345)", "(145)(23)", g],
        vec!["verify", "3", "all"],
        vec!["verify", "4", "links"],
        vec!["export", "3", "hasse", "--format", "dot"],
        vec!["export", "3", "hasse", "--format", "json"],
        vec!["export", "3", "hasse", "--format", "text"],
        vec!["export", "4", "link", "(1234)", "--format", "dot"],
        vec!["export", "4", "link", "(12)(34)", "--format", "json"],
        vec!["export", "4", "link", "(13)(2)(4)", "--format", "text"],
        vec!["export", "4", "presentation", "--format", "text"],
        vec!["export", "4", "presentation", "--format", "json"],
    ];
    for args in &commands {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_ncpcat"))
                .args(args)
                .env_remove("NCPCAT_MAX_N")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || format!("{args:?} exited {:?}", a.status.code()))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{args:?} payload differs"))?;
    }
    Ok(format!("{} commands byte-identical across runs", commands.len()))
}

fn main() -> ExitCode {
    let cache = HomCache::new();
    let assoc: Vec<Report> = (1..=4).map(|n| verify::run(n, Suite::Assoc, &cache)).collect();
    let cubical: Vec<Report> = (1..=4).map(|n| verify::run(n, Suite::Cubical, &cache)).collect();
    let results: Vec<(&str, Outcome)> = vec![
        ("object counts", criterion_1()),
        ("NP(3) golden counts", criterion_2(&cache)),
        ("compatibility oracle", criterion_3(&cache)),
        ("adjacency oracle", criterion_4()),
        ("category laws", criterion_5(&assoc)),
        ("sigma transport", criterion_6(&assoc)),
        ("cubical axioms", criterion_7(&cubical)),
        ("matrix functor", criterion_8(&assoc, &cubical)),
        ("flag links", criterion_9(&cache)),
        ("CW census", criterion_10()),
        ("presentation", criterion_11(&cache)),
        ("CLI determinism", criterion_12()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
