//! Certificates for the two witness properties: no `C_m` in the graph, and
//! no `B_n^(k)` in its complement.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use serde::Serialize;

use crate::bits::Bits;
use crate::constructions::WitnessSpec;
use crate::error::{Error, Result};
use crate::formula::{self, ParamContext};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Largest order the bitmask cycle spectrum accepts.
    pub spectrum_bound: usize,
    /// Largest `C(order, k)` for which the book check enumerates.
    pub book_subset_limit: u128,
    /// Node expansions allowed in one exact-length cycle search.
    pub cycle_budget: u64,
    /// Largest order at which the structural cycle answer is cross-checked.
    pub cycle_cross_check_bound: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            spectrum_bound: 14,
            book_subset_limit: 10_000_000,
            cycle_budget: 20_000_000,
            cycle_cross_check_bound: 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Structural,
    Exhaustive,
    TwinClasses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    CmFree {
        m: usize,
        method: Method,
        #[serde(skip_serializing_if = "Option::is_none")]
        largest_block: Option<usize>,
    },
    CmFound {
        m: usize,
        method: Method,
        cycle: Vec<Vertex>,
    },
    BookFree {
        n: usize,
        k: usize,
        method: Method,
        #[serde(skip_serializing_if = "Option::is_none")]
        min_union: Option<usize>,
    },
    BookFound {
        n: usize,
        k: usize,
        method: Method,
        spine: Vec<Vertex>,
        pages: Vec<Vertex>,
    },
}

impl Certificate {
    pub fn is_free(&self) -> bool {
        matches!(self, Certificate::CmFree { .. } | Certificate::BookFree { .. })
    }

    /// Re-checks a positive certificate against the raw graph. Freeness
    /// certificates carry no checkable payload and are accepted.
    pub fn recheck(&self, g: &Graph) -> bool {
        match self {
            Certificate::CmFound { m, cycle, .. } => {
                let distinct: BTreeSet<_> = cycle.iter().collect();
                cycle.len() == *m
                    && distinct.len() == *m
                    && cycle.iter().all(|&v| v < g.order())
                    && (0..*m).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % m]))
            }
            Certificate::BookFound { n, k, spine, pages, .. } => {
                spine.len() == *k
                    && pages.len() >= *n
                    && spine.iter().chain(pages).all(|&v| v < g.order())
                    && g.is_independent(spine)
                    && pages
                        .iter()
                        .all(|&w| !spine.contains(&w) && spine.iter().all(|&s| !g.has_edge(s, w)))
            }
            _ => true,
        }
    }
}

/// Size of the block containing `s` and `u` in `g[mask ∪ {s, u}] + su`.
fn edge_block_size(g: &Graph, mask: &Bits, s: Vertex, u: Vertex) -> usize {
    let n = g.order();
    let mut within = mask.clone();
    within.insert(s);
    within.insert(u);
    let nbrs = |x: Vertex| {
        let mut r = g.neighbors(x).intersection(&within);
        if x == s {
            r.insert(u);
        } else if x == u {
            r.insert(s);
        }
        r
    };
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut frames: Vec<(Vertex, Vertex, Bits)> = vec![(s, UNSEEN, nbrs(s))];
    disc[s] = 0;
    low[s] = 0;
    time += 1;
    while let Some((x, parent, pending)) = frames.last_mut() {
        let (x, parent) = (*x, *parent);
        match pending.first() {
            Some(w) => {
                pending.remove(w);
                if disc[w] == UNSEEN {
                    edge_stack.push((x, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, x, nbrs(w)));
                } else if w != parent && disc[w] < disc[x] {
                    edge_stack.push((x, w));
                    low[x] = low[x].min(disc[w]);
                }
            }
            None => {
                frames.pop();
                if parent == UNSEEN {
                    continue;
                }
                low[parent] = low[parent].min(low[x]);
                if low[x] >= disc[parent] {
                    let mut members = Bits::new(n);
                    while let Some((a, b)) = edge_stack.pop() {
                        members.insert(a);
                        members.insert(b);
                        if (a, b) == (parent, x) {
                            break;
                        }
                    }
                    if members.contains(s) && members.contains(u) {
                        return members.count();
                    }
                }
            }
        }
    }
    2
}

struct CycleSearch<'g> {
    g: &'g Graph,
    m: usize,
    budget: u64,
    spent: u64,
    path: Vec<Vertex>,
}

impl CycleSearch<'_> {
    fn extend(&mut self, s: Vertex, avail: &mut Bits) -> Result<bool> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::ResourceLimit(format!(
                "cycle search for C_{} exceeded {} expansions",
                self.m, self.budget
            )));
        }
        let u = *self.path.last().expect("path starts at s");
        let len = self.path.len();
        if len == self.m {
            return Ok(self.g.has_edge(u, s));
        }
        if len >= 2 && edge_block_size(self.g, avail, s, u) - 2 < self.m - len {
            return Ok(false);
        }
        let next = self.g.neighbors(u).intersection(avail);
        for w in next.iter() {
            avail.remove(w);
            self.path.push(w);
            if self.extend(s, avail)? {
                return Ok(true);
            }
            self.path.pop();
            avail.insert(w);
        }
        Ok(false)
    }
}

/// Exhaustive search for a cycle of exactly `m` vertices. The cycle returned
/// starts at its smallest vertex and is the first found when neighbours are
/// tried in increasing order.
pub fn has_cycle_of_length(g: &Graph, m: usize, budget: u64) -> Result<Certificate> {
    if m < 3 {
        return Err(Error::OutOfRange(format!("cycle length must be at least 3, got {m}")));
    }
    let mut search = CycleSearch {
        g,
        m,
        budget,
        spent: 0,
        path: Vec::with_capacity(m),
    };
    let n = g.order();
    for s in 0..n {
        if n - s < m {
            break;
        }
        let mut avail = Bits::range(n, s + 1, n);
        search.path.clear();
        search.path.push(s);
        if search.extend(s, &mut avail)? {
            return Ok(Certificate::CmFound {
                m,
                method: Method::Exhaustive,
                cycle: search.path.clone(),
            });
        }
    }
    Ok(Certificate::CmFree {
        m,
        method: Method::Exhaustive,
        largest_block: None,
    })
}

/// Cycle check for graphs whose blocks are all cliques: a `C_m` exists
/// exactly when some block has at least `m` vertices.
pub fn cm_free_structural(g: &Graph, m: usize) -> Result<Certificate> {
    if m < 3 {
        return Err(Error::OutOfRange(format!("cycle length must be at least 3, got {m}")));
    }
    let bd = g.blocks();
    for b in &bd.blocks {
        if !g.is_clique(b) {
            return Err(Error::NotBlockClique { block: b.clone() });
        }
    }
    let largest = bd.largest_block();
    match bd.blocks.iter().filter(|b| b.len() >= m).min() {
        Some(b) => Ok(Certificate::CmFound {
            m,
            method: Method::Structural,
            cycle: b[..m].to_vec(),
        }),
        None => Ok(Certificate::CmFree {
            m,
            method: Method::Structural,
            largest_block: Some(largest),
        }),
    }
}

/// Lexicographic walk over independent `k`-sets, abandoning any prefix whose
/// neighbourhood union exceeds `cut`. Calls `hit` on every completed set;
/// `hit` returns the new cut.
fn walk_independent<F>(g: &Graph, k: usize, mut cut: usize, hit: &mut F)
where
    F: FnMut(&[Vertex], usize) -> Option<usize>,
{
    fn rec<F>(
        g: &Graph,
        k: usize,
        cand: &Bits,
        union: &Bits,
        chosen: &mut Vec<Vertex>,
        cut: &mut usize,
        hit: &mut F,
    ) -> bool
    where
        F: FnMut(&[Vertex], usize) -> Option<usize>,
    {
        if chosen.len() == k {
            return match hit(chosen, union.count()) {
                Some(c) => {
                    *cut = c;
                    false
                }
                None => true,
            };
        }
        let need = k - chosen.len();
        let mut rest = cand.clone();
        while let Some(v) = rest.first() {
            rest.remove(v);
            if rest.count() + 1 < need {
                break;
            }
            let nu = union.union(g.neighbors(v));
            if nu.count() > *cut {
                continue;
            }
            let mut next = rest.clone();
            next.difference_with(g.neighbors(v));
            chosen.push(v);
            if rec(g, k, &next, &nu, chosen, cut, hit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let n = g.order();
    let mut chosen = Vec::with_capacity(k);
    rec(g, k, &Bits::full(n), &Bits::new(n), &mut chosen, &mut cut, hit);
}

/// Exact least `|N(u_1) ∪ ... ∪ N(u_k)|` over independent `k`-sets, with the
/// lexicographically least set attaining it.
pub fn min_union_neighborhood(g: &Graph, k: usize) -> Result<(usize, Vec<Vertex>)> {
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    walk_independent(g, k, usize::MAX, &mut |set, size| {
        if best.as_ref().map_or(true, |(b, _)| size < *b) {
            best = Some((size, set.to_vec()));
        }
        // later sets must be strictly smaller to replace this one
        Some(size.saturating_sub(1))
    });
    best.ok_or(Error::NoIndependentSet(k))
}

/// True-twin classes (equal closed neighbourhoods), each listed ascending,
/// ordered by smallest member.
pub fn twin_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut by_row: HashMap<Bits, Vec<Vertex>> = HashMap::new();
    for v in 0..g.order() {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        by_row.entry(closed).or_default().push(v);
    }
    let mut classes: Vec<Vec<Vertex>> = by_row.into_values().collect();
    classes.sort();
    classes
}

/// Same value as [`min_union_neighborhood`], computed per connected
/// component on one representative per true-twin class and combined by a
/// min-plus convolution. The returned set is a minimiser, not necessarily the
/// lexicographically least one.
pub fn min_union_by_twins(g: &Graph, k: usize) -> Result<(usize, Vec<Vertex>)> {
    type Entry = Option<(usize, Vec<Vertex>)>;
    let reps: Bits = Bits::from_iter(g.order(), twin_classes(g).into_iter().map(|c| c[0]));
    let mut acc: Vec<Entry> = vec![None; k + 1];
    acc[0] = Some((0, Vec::new()));
    for comp in g.components() {
        // profile of this component: best set of each size j <= k
        let mut prof: Vec<Entry> = vec![None; k + 1];
        prof[0] = Some((0, Vec::new()));
        let local = comp.intersection(&reps);
        let mut chosen = Vec::new();
        fn rec(
            g: &Graph,
            cand: &Bits,
            union: &Bits,
            chosen: &mut Vec<Vertex>,
            k: usize,
            prof: &mut Vec<Option<(usize, Vec<Vertex>)>>,
        ) {
            let j = chosen.len();
            if j > 0 {
                let c = union.count();
                if prof[j].as_ref().map_or(true, |(b, _)| c < *b) {
                    prof[j] = Some((c, chosen.clone()));
                }
            }
            if j == k {
                return;
            }
            let mut rest = cand.clone();
            while let Some(v) = rest.first() {
                rest.remove(v);
                let mut next = rest.clone();
                next.difference_with(g.neighbors(v));
                chosen.push(v);
                rec(g, &next, &union.union(g.neighbors(v)), chosen, k, prof);
                chosen.pop();
            }
        }
        rec(g, &local, &Bits::new(g.order()), &mut chosen, k, &mut prof);
        let mut next: Vec<Entry> = vec![None; k + 1];
        for (i, a) in acc.iter().enumerate() {
            let Some((av, aset)) = a else { continue };
            for (j, b) in prof.iter().enumerate().take(k + 1 - i) {
                let Some((bv, bset)) = b else { continue };
                let v = av + bv;
                if next[i + j].as_ref().map_or(true, |(c, _)| v < *c) {
                    let mut set = aset.clone();
                    set.extend(bset);
                    next[i + j] = Some((v, set));
                }
            }
        }
        acc = next;
    }
    match acc.pop().flatten() {
        Some((v, mut set)) => {
            set.sort_unstable();
            Ok((v, set))
        }
        None => Err(Error::NoIndependentSet(k)),
    }
}

/// Exhaustive book check: the complement contains `B_n^(k)` exactly when
/// some independent `k`-set has `n` or more common non-neighbours.
pub fn complement_book_free(g: &Graph, n: usize, k: usize) -> Certificate {
    let order = g.order();
    if order < k + n {
        return Certificate::BookFree {
            n,
            k,
            method: Method::Exhaustive,
            min_union: None,
        };
    }
    let cut = order - k - n;
    let mut found: Option<Vec<Vertex>> = None;
    walk_independent(g, k, cut, &mut |set, _| {
        found = Some(set.to_vec());
        None
    });
    match found {
        Some(spine) => {
            let pages = g
                .complement_common_neighbors(&spine)
                .expect("spine vertices are in range")
                .to_vec();
            Certificate::BookFound {
                n,
                k,
                method: Method::Exhaustive,
                spine,
                pages,
            }
        }
        None => Certificate::BookFree {
            n,
            k,
            method: Method::Exhaustive,
            min_union: None,
        },
    }
}

/// Book check through [`min_union_by_twins`], for graphs too large to
/// enumerate.
pub fn complement_book_free_by_twins(g: &Graph, n: usize, k: usize) -> Certificate {
    match min_union_by_twins(g, k) {
        Err(_) => Certificate::BookFree {
            n,
            k,
            method: Method::TwinClasses,
            min_union: None,
        },
        Ok((value, spine)) if value + k + n <= g.order() => {
            let pages = g.complement_common_neighbors(&spine).expect("in range").to_vec();
            Certificate::BookFound {
                n,
                k,
                method: Method::TwinClasses,
                spine,
                pages,
            }
        }
        Ok((value, _)) => Certificate::BookFree {
            n,
            k,
            method: Method::TwinClasses,
            min_union: Some(value),
        },
    }
}

/// All cycle lengths present in `g`, by a bitmask path DP.
pub fn cycle_spectrum(g: &Graph, bound: usize) -> Result<BTreeSet<usize>> {
    let n = g.order();
    if n > bound || n > 24 {
        return Err(Error::ResourceLimit(format!(
            "cycle spectrum limited to order {}, got {n}",
            bound.min(24)
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |a, w| a | 1 << w))
        .collect();
    let mut lengths = BTreeSet::new();
    // ends[mask] = vertices v such that some path from min(mask) to v uses exactly mask
    let mut ends = vec![0u32; 1 << n];
    for s in 0..n {
        ends[1 << s] = 1 << s;
    }
    for mask in 1u32..(1 << n) {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        let s = mask.trailing_zeros();
        let size = mask.count_ones() as usize;
        if size >= 3 && e & adj[s as usize] != 0 {
            lengths.insert(size);
        }
        let above = !((2u32 << s) - 1);
        let mut it = e;
        while it != 0 {
            let v = it.trailing_zeros();
            it &= it - 1;
            let mut out = adj[v as usize] & above & !mask;
            while out != 0 {
                let w = out.trailing_zeros();
                out &= out - 1;
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    Ok(lengths)
}

pub fn even_cycle_spectrum(g: &Graph, bound: usize) -> Result<BTreeSet<usize>> {
    Ok(cycle_spectrum(g, bound)?.into_iter().filter(|l| l % 2 == 0).collect())
}

/// `c(G)`: length of a longest cycle, 0 for forests.
pub fn circumference(g: &Graph, bound: usize) -> Result<usize> {
    Ok(cycle_spectrum(g, bound)?.last().copied().unwrap_or(0))
}

/// `ec(G)`: length of a longest even cycle, 0 if there is none.
pub fn even_circumference(g: &Graph, bound: usize) -> Result<usize> {
    Ok(even_cycle_spectrum(g, bound)?.last().copied().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Structural where the graph allows it, exhaustive within the configured bounds.
    #[default]
    Auto,
    Structural,
    Exhaustive,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Mode::Auto),
            "structural" => Ok(Mode::Structural),
            "exhaustive" => Ok(Mode::Exhaustive),
            _ => Err(Error::Parse(format!("unknown mode {s:?}; expected auto, structural or exhaustive"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<i64>,
    pub order_ok: bool,
    pub cycle: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_cross_check: Option<Certificate>,
    pub cycle_ok: bool,
    pub book: Certificate,
    pub book_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_min_union: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_union: Option<usize>,
    pub notes: Vec<String>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

/// `Instant::now` panics on wasm32-unknown-unknown, so timing is off there.
fn clock() -> Option<Instant> {
    (!cfg!(target_arch = "wasm32")).then(Instant::now)
}

/// What a caller expects of the graph beyond the two freeness properties.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Expectations {
    pub order: Option<i64>,
    pub min_union: Option<usize>,
}

/// Checks a graph for `C_m`-freeness and complement `B_n^(k)`-freeness.
///
/// Errors only when the requested mode cannot decide: a non block-clique
/// graph in structural mode, or a search over budget in exhaustive mode.
pub fn verify_graph(
    g: &Graph,
    (m, n, k): (usize, usize, usize),
    mode: Mode,
    cfg: &VerifyConfig,
    expect: Expectations,
) -> Result<WitnessReport> {
    let start = clock();
    let mut notes = Vec::new();

    let (cycle, cycle_cross_check) = match mode {
        Mode::Structural => (cm_free_structural(g, m)?, None),
        Mode::Exhaustive => (has_cycle_of_length(g, m, cfg.cycle_budget)?, None),
        Mode::Auto => match cm_free_structural(g, m) {
            Ok(cert) => {
                let cross = if g.order() <= cfg.cycle_cross_check_bound {
                    match has_cycle_of_length(g, m, cfg.cycle_budget) {
                        Ok(c) => Some(c),
                        Err(e) => {
                            notes.push(format!("cycle cross-check skipped: {e}"));
                            None
                        }
                    }
                } else {
                    None
                };
                (cert, cross)
            }
            Err(e) => {
                notes.push(format!("structural cycle check unavailable: {e}"));
                (has_cycle_of_length(g, m, cfg.cycle_budget)?, None)
            }
        },
    };
    let cycle_ok = cycle.is_free()
        && cycle.recheck(g)
        && cycle_cross_check.as_ref().map_or(true, |c| c.is_free() == cycle.is_free());

    let enumerable = subsets(g.order(), k) <= cfg.book_subset_limit;
    let book = match mode {
        Mode::Structural => complement_book_free_by_twins(g, n, k),
        Mode::Exhaustive if !enumerable => {
            return Err(Error::ResourceLimit(format!(
                "C({}, {k}) exceeds the book enumeration limit {}",
                g.order(),
                cfg.book_subset_limit
            )))
        }
        _ if enumerable => complement_book_free(g, n, k),
        _ => complement_book_free_by_twins(g, n, k),
    };
    let book_ok = book.is_free() && book.recheck(g);

    let order_ok = expect.order.map_or(true, |o| o == g.order() as i64);
    if !order_ok {
        notes.push(format!("order {} differs from expected {}", g.order(), expect.order.unwrap_or(0)));
    }
    let min_union = min_union_by_twins(g, k).ok().map(|(v, _)| v);
    let mut claim_ok = true;
    if let (Some(v), Some(c)) = (min_union, expect.min_union) {
        if v < c {
            claim_ok = false;
            notes.push(format!("min union {v} below claimed {c}"));
        } else if v > c {
            notes.push(format!("min union {v} exceeds claimed {c}"));
        }
    }

    Ok(WitnessReport {
        m,
        n,
        k,
        mode,
        order: g.order(),
        expected_order: expect.order,
        order_ok,
        cycle,
        cycle_cross_check,
        cycle_ok,
        book,
        book_ok,
        claimed_min_union: expect.min_union,
        min_union,
        notes,
        pass: order_ok && cycle_ok && book_ok && claim_ok,
        elapsed_ms: start.map_or(0.0, |s| s.elapsed().as_secs_f64() * 1e3),
    })
}

/// Runs the order, `C_m` and book checks on a witness bundle.
pub fn verify_witness(g: &Graph, spec: &WitnessSpec, ctx: &ParamContext, cfg: &VerifyConfig) -> WitnessReport {
    let dims = (ctx.m as usize, ctx.n as usize, ctx.k as usize);
    let predicted = formula::gk(ctx);
    let expect = Expectations {
        order: Some(predicted.as_ref().map_or(-1, |p| p.g - 1)),
        min_union: Some(spec.claimed_min_union),
    };
    let mut report = verify_graph(g, dims, Mode::Auto, cfg, expect).unwrap_or_else(|e| WitnessReport {
        m: dims.0,
        n: dims.1,
        k: dims.2,
        mode: Mode::Auto,
        order: g.order(),
        expected_order: expect.order,
        order_ok: false,
        cycle: Certificate::CmFree {
            m: dims.0,
            method: Method::Exhaustive,
            largest_block: None,
        },
        cycle_cross_check: None,
        cycle_ok: false,
        book: Certificate::BookFree {
            n: dims.1,
            k: dims.2,
            method: Method::Exhaustive,
            min_union: None,
        },
        book_ok: false,
        claimed_min_union: expect.min_union,
        min_union: None,
        notes: vec![format!("undecided: {e}")],
        pass: false,
        elapsed_ms: 0.0,
    });
    if let Err(e) = predicted {
        report.notes.push(format!("no prediction: {e}"));
    }
    report
}

/// `C(n, k)`, saturating.
pub fn subsets(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{disjoint_cliques, flower, gamma_3, gamma_3_prime};
    use crate::formula::validate;
    use crate::graph::{clique, disjoint_union};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        e.extend((0..5).map(|i| (i, i + 5)));
        Graph::from_edges(10, e).unwrap()
    }

    fn two_k4_sharing() -> Graph {
        let k4 = clique(4);
        disjoint_union([&k4, &k4]).identify(&[(0, 4)]).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn exact_cycle_examples() {
        let c = has_cycle_of_length(&clique(5), 4, 1000).unwrap();
        assert_eq!(
            c,
            Certificate::CmFound {
                m: 4,
                method: Method::Exhaustive,
                cycle: vec![0, 1, 2, 3]
            }
        );
        assert!(has_cycle_of_length(&cycle(6), 4, 1000).unwrap().is_free());
        assert!(!has_cycle_of_length(&cycle(6), 6, 1000).unwrap().is_free());
        let g = two_k4_sharing();
        assert!(has_cycle_of_length(&g, 7, 1000).unwrap().is_free());
        assert!(!has_cycle_of_length(&g, 4, 1000).unwrap().is_free());
        assert!(matches!(has_cycle_of_length(&clique(30), 30, 5), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn structural_examples() {
        let (g, _) = flower(11, 3, 9, 1, 3).unwrap();
        assert_eq!(
            cm_free_structural(&g, 12).unwrap(),
            Certificate::CmFree {
                m: 12,
                method: Method::Structural,
                largest_block: Some(11)
            }
        );
        let found = cm_free_structural(&g, 10).unwrap();
        assert!(!found.is_free() && found.recheck(&g));
        assert!(matches!(cm_free_structural(&petersen(), 6), Err(Error::NotBlockClique { .. })));
    }

    #[test]
    fn min_union_examples() {
        let k4 = clique(4);
        let g = disjoint_union([&k4, &k4, &k4]);
        assert_eq!(min_union_neighborhood(&g, 3).unwrap(), (9, vec![0, 4, 8]));
        let (g, _) = gamma_3_prime(&validate(2, 3, 21, 12).unwrap()).unwrap();
        assert_eq!(min_union_neighborhood(&g, 3).unwrap().0, 28);
        assert_eq!(min_union_neighborhood(&Graph::empty(4), 4).unwrap(), (0, vec![0, 1, 2, 3]));
        assert_eq!(min_union_neighborhood(&clique(3), 2), Err(Error::NoIndependentSet(2)));
    }

    #[test]
    fn book_examples() {
        let (g, _) = flower(11, 3, 9, 1, 3).unwrap();
        assert!(complement_book_free(&g, 18, 3).is_free());
        let found = complement_book_free(&g, 17, 3);
        assert!(!found.is_free() && found.recheck(&g));
        let e = complement_book_free(&Graph::empty(7), 4, 3);
        assert!(matches!(&e, Certificate::BookFound { spine, pages, .. } if spine == &vec![0, 1, 2] && pages.len() == 4));
        assert!(complement_book_free(&clique(9), 2, 2).is_free());
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(even_cycle_spectrum(&cycle(6), 14).unwrap(), BTreeSet::from([6]));
        assert_eq!(even_cycle_spectrum(&clique(5), 14).unwrap(), BTreeSet::from([4]));
        assert_eq!(even_cycle_spectrum(&k33(), 14).unwrap(), BTreeSet::from([4, 6]));
        assert_eq!(cycle_spectrum(&petersen(), 14).unwrap(), BTreeSet::from([5, 6, 8, 9]));
        assert!(cycle_spectrum(&clique(15), 14).is_err());
    }

    #[test]
    fn twin_route_matches_exhaustive() {
        let (g, _) = gamma_3(&validate(2, 3, 22, 12).unwrap()).unwrap();
        assert_eq!(min_union_by_twins(&g, 3).unwrap().0, min_union_neighborhood(&g, 3).unwrap().0);
        let (g, _) = flower(7, 4, 5, 2, 4).unwrap();
        assert_eq!(min_union_by_twins(&g, 4).unwrap().0, min_union_neighborhood(&g, 4).unwrap().0);
        assert_eq!(twin_classes(&clique(3)), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn witness_report_examples() {
        let cfg = VerifyConfig::default();
        let ctx = validate(2, 3, 22, 12).unwrap();
        let (g, spec) = gamma_3(&ctx).unwrap();
        let rep = verify_witness(&g, &spec, &ctx, &cfg);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.min_union, Some(spec.claimed_min_union));

        let ctx = validate(2, 3, 18, 12).unwrap();
        let (g, spec) = crate::constructions::lower_bound_witness(&ctx).unwrap();
        let lowered = validate(2, 3, 17, 12).unwrap();
        let rep = verify_witness(&g, &spec, &lowered, &cfg);
        assert!(!rep.book_ok);

        let (g, spec) = disjoint_cliques(4, 11, 2);
        let rep = verify_witness(&g, &spec, &validate(2, 2, 20, 12).unwrap(), &cfg);
        assert!(!rep.order_ok && !rep.pass);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2), 10);
        assert_eq!(subsets(70, 6), 131_115_985);
        assert_eq!(subsets(3, 4), 0);
    }
}
