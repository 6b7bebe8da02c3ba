//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion listed in `KNOWN_UNATTAINABLE` still prints FAIL when it
//! fails, but does not fail the process; one that unexpectedly passes does.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use cyclebook::constructions::lower_bound_witness;
use cyclebook::error::Error;
use cyclebook::formula::{self, Branch, CaseTag};
use cyclebook::graph::Graph;
use cyclebook::oracle::{arrows, graph_of_code};
use cyclebook::setfamily::{overlap_dup_check, dup_rate_probe, random_family, OverlapDup, Regime};
use cyclebook::verify::{
    circumference, complement_book_free, cm_free_structural, even_circumference, has_cycle_of_length,
    min_union_neighborhood, subsets,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const BOOK_EXHAUSTIVE_LIMIT: u128 = 10_000_000;
const MIN_UNION_ORDER: usize = 70;
const CYCLE_BUDGET: u64 = 50_000_000;
const DUP_RATE_BUDGET: u64 = 50_000_000;

/// Criterion id and the reason recorded in the decisions ledger.
const KNOWN_UNATTAINABLE: &[(&str, &str)] = &[(
    "9b",
    "the even-circumference bound is false for odd cycles (delta = 2, no even cycle at all)",
)];

struct Outcome {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, name, pass, detail }
}

fn diagonal_values() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 1..=5i64 {
        for n in [100i64, 150, 200] {
            checked += 1;
            let want = (k + 1) * (n - 1) + 1;
            match formula::predict(2, k, n, n) {
                Ok(p) if p.g == want => {}
                Ok(p) => bad.push(format!("k={k} n={n}: {} != {want}", p.g)),
                Err(e) => bad.push(format!("k={k} n={n}: {e}")),
            }
        }
    }
    outcome("1", "diagonal values (k+1)(n-1)+1", bad.is_empty(), format!("{checked} checked; mismatches {bad:?}"))
}

fn k2_unified_form() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in 2..=5i64 {
        for m in (20..=60i64).step_by(2) {
            for n in (t - 1) * (m - 1) + 1..=t * (m - 1) {
                let ctx = formula::validate(t, 2, n, m).expect("in range by construction");
                let got = formula::gk(&ctx).map(|p| p.g);
                let want = ctx.unified_value();
                checked += 1;
                if got.as_ref().ok() != want.as_ref() {
                    bad.push(format!("({t},2,{n},{m}): {got:?} vs {want:?}"));
                }
            }
        }
    }
    let detail = format!("{checked} tuples; mismatches {}: {:?}", bad.len(), &bad[..bad.len().min(5)]);
    outcome("2", "k = 2 prediction equals the unified closed form", bad.is_empty(), detail)
}

fn sweep_tuples() -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for t in 2..=4i64 {
        for k in 1..=6i64 {
            for m in (12..=24i64).step_by(2) {
                for n in (t - 1) * (m - 1) + 1..=t * (m - 1) {
                    out.push((t, k, n, m));
                }
            }
        }
    }
    out
}

fn case_label(case: &CaseTag, branch: Option<Branch>) -> String {
    match (case, branch) {
        (CaseTag::CaseIII { .. }, Some(b)) => format!("CASE_III {}", b.as_str()),
        _ => case.name().to_string(),
    }
}

fn witness_round_trip() -> (Outcome, Outcome) {
    let tuples = sweep_tuples();
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    let mut families: BTreeMap<String, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    let mut infeasible = Vec::new();
    let (mut verified, mut exhaustive_books, mut twin_books) = (0, 0, 0);
    let (mut union_checked, mut union_bad) = (0, Vec::new());

    for &(t, k, n, m) in &tuples {
        let ctx = formula::validate(t, k, n, m).expect("in range by construction");
        let pred = match formula::gk(&ctx) {
            Ok(p) => p,
            Err(e) => {
                bad.push(format!("({t},{k},{n},{m}) predict: {e}"));
                continue;
            }
        };
        let branch = pred.trace.last().map(|l| l.branch);
        *cases.entry(case_label(&pred.case, branch)).or_default() += 1;
        let (g, spec) = match lower_bound_witness(&ctx) {
            Ok(w) => w,
            Err(Error::InfeasibleAssembly { reason, attempts }) => {
                let justified = attempts.iter().any(|a| a.starts_with("component search: no union"));
                infeasible.push(((t, k, n, m), justified, reason));
                continue;
            }
            Err(e) => {
                bad.push(format!("({t},{k},{n},{m}) construct: {e}"));
                continue;
            }
        };
        *families.entry(format!("{:?}", spec.family)).or_default() += 1;
        let mu = m as usize;
        let (nu, ku) = (n as usize, k as usize);
        if g.order() as i64 != pred.g - 1 {
            bad.push(format!("({t},{k},{n},{m}) order {} != {}", g.order(), pred.g - 1));
        }
        match cm_free_structural(&g, mu) {
            Ok(c) if c.is_free() => {}
            other => bad.push(format!("({t},{k},{n},{m}) C_m check: {other:?}")),
        }
        let book = if subsets(g.order(), ku) <= BOOK_EXHAUSTIVE_LIMIT {
            exhaustive_books += 1;
            complement_book_free(&g, nu, ku)
        } else {
            twin_books += 1;
            cyclebook::verify::complement_book_free_by_twins(&g, nu, ku)
        };
        if !book.is_free() {
            bad.push(format!("({t},{k},{n},{m}) book found: {book:?}"));
        }
        if g.order() <= MIN_UNION_ORDER {
            union_checked += 1;
            match min_union_neighborhood(&g, ku) {
                Ok((v, _)) if v == spec.claimed_min_union => {}
                other => union_bad.push(format!(
                    "({t},{k},{n},{m}) {:?}: claimed {} got {other:?}",
                    spec.family, spec.claimed_min_union
                )),
            }
        }
        verified += 1;
    }

    let required = ["CASE_I", "CASE_II", "CASE_III r_k<=r", "CASE_III r_k>r"];
    let missing: Vec<_> = required.iter().filter(|c| !cases.contains_key(**c)).collect();
    let unjustified: Vec<_> = infeasible.iter().filter(|(_, j, _)| !j).map(|(x, _, _)| *x).collect();
    let pass = bad.is_empty() && tuples.len() >= 200 && missing.is_empty() && unjustified.is_empty();
    let detail = format!(
        "{} tuples, {verified} verified ({exhaustive_books} exhaustive book checks, {twin_books} by twin classes), \
         {} InfeasibleAssembly ({} unjustified: {unjustified:?}); cases {cases:?}; families {families:?}; \
         missing cases {missing:?}; failures {}: {:?}",
        tuples.len(),
        infeasible.len(),
        unjustified.len(),
        bad.len(),
        &bad[..bad.len().min(5)]
    );
    let c3 = outcome("3", "witness round trip (order, C_m-free, book-free)", pass, detail);
    let c4 = outcome(
        "4",
        "exhaustive min-union equals the claimed closed form",
        union_bad.is_empty() && union_checked > 0,
        format!(
            "{union_checked} witnesses of order <= {MIN_UNION_ORDER}; mismatches {}: {:?}",
            union_bad.len(),
            &union_bad[..union_bad.len().min(5)]
        ),
    );
    (c3, c4)
}

/// Random forest of cliques: each new block shares one vertex with the
/// current component or starts a new one.
fn random_block_clique(rng: &mut ChaCha8Rng, max_order: usize) -> Graph {
    let target = rng.gen_range(1..=max_order);
    let mut edges = Vec::new();
    let mut order = 0usize;
    let mut start = 0usize;
    while order < target {
        let size = rng.gen_range(1..=8usize);
        let fresh_component = order == start || rng.gen_bool(0.2);
        let (anchor, new) = if fresh_component {
            start = order;
            (None, size.min(target - order))
        } else {
            (Some(rng.gen_range(start..order)), (size - 1).min(target - order))
        };
        if new == 0 {
            continue;
        }
        let mut block: Vec<usize> = (order..order + new).collect();
        block.extend(anchor);
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                edges.push((a, b));
            }
        }
        order += new;
    }
    Graph::from_edges(order, edges).expect("edges stay in range")
}

fn structural_matches_search() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    let mut checks = 0;
    for i in 0..500 {
        let g = random_block_clique(&mut rng, 30);
        for m in (4..=32).step_by(2) {
            checks += 1;
            let s = cm_free_structural(&g, m).map(|c| c.is_free());
            let e = has_cycle_of_length(&g, m, CYCLE_BUDGET).map(|c| c.is_free());
            match (s, e) {
                (Ok(a), Ok(b)) if a == b => {}
                (s, e) => bad.push(format!("graph {i} m={m}: structural {s:?} search {e:?}")),
            }
        }
    }
    outcome(
        "5",
        "structural C_m check agrees with exhaustive search",
        bad.is_empty(),
        format!("500 graphs, {checks} (graph, m) pairs; disagreements {}: {:?}", bad.len(), &bad[..bad.len().min(5)]),
    )
}

fn oracle_agreement() -> Outcome {
    let triples = [(4usize, 1usize, 1usize), (4, 2, 1), (6, 2, 2)];
    let mut disagreements = 0usize;
    let mut graphs = 0u64;
    for order in 1..=7usize {
        let bits = order * (order - 1) / 2;
        graphs += 1 << bits;
        disagreements += (0u64..1 << bits)
            .into_par_iter()
            .map(|code| {
                let g = graph_of_code(order, code);
                triples
                    .iter()
                    .filter(|&&(m, n, k)| {
                        let oracle = arrows(&g, m, n, k).expect("order within oracle range").arrows;
                        let cm = has_cycle_of_length(&g, m, CYCLE_BUDGET).expect("small graph").is_free();
                        let book = complement_book_free(&g, n, k).is_free();
                        oracle != !(cm && book)
                    })
                    .count()
            })
            .sum::<usize>();
    }

    // small witnesses must not arrow
    let mut witnesses = 0;
    let mut arrowing = Vec::new();
    for t in 2..=4i64 {
        for k in 1..=4i64 {
            for m in [4i64, 6, 8] {
                for n in (t - 1) * (m - 1) + 1..=t * (m - 1) {
                    let Ok(ctx) = formula::validate(t, k, n, m) else { continue };
                    let Ok((g, _)) = lower_bound_witness(&ctx) else { continue };
                    if g.order() > cyclebook::oracle::MAX_ARROW_ORDER {
                        continue;
                    }
                    witnesses += 1;
                    if arrows(&g, m as usize, n as usize, k as usize).map_or(true, |a| a.arrows) {
                        arrowing.push((t, k, n, m));
                    }
                }
            }
        }
    }
    outcome(
        "6",
        "oracle agrees with the verifier; small witnesses do not arrow",
        disagreements == 0 && arrowing.is_empty() && witnesses > 0,
        format!(
            "{graphs} labelled graphs of order <= 7 x {} triples, {disagreements} disagreements; \
             {witnesses} witnesses of order <= 20, arrowing {arrowing:?}",
            triples.len()
        ),
    )
}

fn family_duplication_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut accepted, mut drawn, mut violations) = (0, 0u64, Vec::new());
    while accepted < 10_000 {
        let h = rng.gen_range(2..=6usize);
        let universe = rng.gen_range(4..=12u32);
        let density = rng.gen_range(0.2..0.8);
        let f = random_family(&mut rng, h, universe, density);
        drawn += 1;
        match overlap_dup_check(&f) {
            OverlapDup::Vacuous { .. } => continue,
            OverlapDup::Holds { .. } => {}
            OverlapDup::Violated { dup, h } => violations.push((f.sets().to_vec(), dup, h)),
        }
        accepted += 1;
    }
    outcome(
        "7",
        "families meeting the overlap hypothesis have dup >= size",
        violations.is_empty(),
        format!("{accepted} families ({drawn} drawn); violations {}: {:?}", violations.len(), violations.first()),
    )
}

fn duplication_rate_bound() -> Outcome {
    let mut probes = 0;
    let mut bad = Vec::new();
    for t in 2..=4usize {
        for k in 2..=6 - t {
            for ell in 1..=(k - 1).div_ceil(2) {
                for p in 1..=3usize {
                    probes += 1;
                    match dup_rate_probe(t, k, ell, p, DUP_RATE_BUDGET, 11) {
                        Ok(r) => {
                            if r.regime != Regime::Exhaustive
                                || r.exceeds_r
                                || !r.pattern_meets_hypothesis
                                || !r.pattern_attains_floor_r
                            {
                                bad.push(format!(
                                    "(t={t},k={k},ell={ell},p={p}) regime {:?} max_dup {} r {} pattern ok {} floor {}",
                                    r.regime, r.max_dup, r.r, r.pattern_meets_hypothesis, r.pattern_attains_floor_r
                                ));
                            }
                        }
                        Err(e) => bad.push(format!("(t={t},k={k},ell={ell},p={p}): {e}")),
                    }
                }
            }
        }
    }
    outcome(
        "8",
        "duplication rate never exceeds r and floor(r) is attained",
        bad.is_empty() && probes > 0,
        format!("{probes} exhaustive probes; failures {}: {:?}", bad.len(), bad),
    )
}

fn is_two_connected(g: &Graph) -> bool {
    g.order() >= 3 && g.blocks().blocks.len() == 1 && g.components().len() == 1
}

fn random_two_connected(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let order = rng.gen_range(3..=12usize);
        let density = rng.gen_range(0.15..0.9);
        let mut edges = Vec::new();
        for a in 0..order {
            for b in a + 1..order {
                if rng.gen_bool(density) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(order, edges).expect("edges stay in range");
        if is_two_connected(&g) {
            return g;
        }
    }
}

fn cycle_length_bounds() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let corpus: Vec<Graph> = (0..1000).map(|_| random_two_connected(&mut rng)).collect();
    let (mut c_bad, mut ec_bad) = (Vec::new(), Vec::new());
    for g in &corpus {
        let (n, d) = (g.order(), g.min_degree());
        let c = circumference(g, 24).expect("order <= 12");
        let ec = even_circumference(g, 24).expect("order <= 12");
        if c < (2 * d).min(n) {
            c_bad.push((n, g.edge_count(), d, c));
        }
        if ec < (2 * d).min(n - 1) {
            ec_bad.push((n, g.edge_count(), d, ec));
        }
    }
    let all_odd_cycles = ec_bad.iter().all(|&(n, e, d, ec)| n == e && d == 2 && n % 2 == 1 && ec == 0);
    let c9a = outcome(
        "9a",
        "2-connected graphs have circumference >= min(2 delta, order)",
        c_bad.is_empty(),
        format!("1000 graphs; violations {}: {:?}", c_bad.len(), &c_bad[..c_bad.len().min(5)]),
    );
    let c9b = outcome(
        "9b",
        "2-connected graphs have even circumference >= min(2 delta, order - 1)",
        ec_bad.is_empty(),
        format!(
            "1000 graphs; violations {} (order, edges, delta, ec): {:?}; every violator is an odd cycle: {all_odd_cycles}",
            ec_bad.len(),
            &ec_bad[..ec_bad.len().min(5)]
        ),
    );
    (c9a, c9b)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = vec![diagonal_values(), k2_unified_form()];
    let (c3, c4) = witness_round_trip();
    results.extend([c3, c4, structural_matches_search(), oracle_agreement()]);
    results.extend([family_duplication_bound(), duplication_rate_bound()]);
    let (c9a, c9b) = cycle_length_bounds();
    results.extend([c9a, c9b]);

    let mut unexpected = 0;
    for r in &results {
        let known = KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == r.id);
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let note = match (known, r.pass) {
            (Some((_, why)), false) => format!(" [known: {why}]"),
            (Some(_), true) => {
                unexpected += 1;
                " [listed as unattainable but passed; update the list]".to_string()
            }
            (None, false) => {
                unexpected += 1;
                String::new()
            }
            (None, true) => String::new(),
        };
        println!("{verdict} {} {}: {}{note}", r.id, r.name, r.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
