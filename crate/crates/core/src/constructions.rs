//! Lower-bound witnesses: block-clique graphs on `g - 1` vertices with no
//! `C_m` whose complement has no `B_n^(k)`.
//!
//! Every witness is a disjoint union of [`Component`]s laid out in order.
//! Inside a component the shared or center vertices get the lowest indices,
//! so the graph6 output is reproducible.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{self, Branch, ParamContext, Partition};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    DisjointCliques,
    Flower,
    GammaAbc,
    GammaK,
    Gamma3,
    Gamma3Prime,
    Extended,
    /// Found by the component search fallback of [`gamma_k`].
    Composite,
}

/// How a `GAMMA_K` witness was assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assembly {
    Standard,
    Generalized,
    ComponentSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClusterSpec {
    pub petals: usize,
}

/// One connected piece of a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Component {
    Clique { size: usize },
    /// `petals` copies of `K_size` through one shared vertex.
    Cluster { petals: usize, size: usize },
    /// `K_center` whose first `attached` vertices each carry one `K_leaf`.
    Flower {
        center: usize,
        attached: usize,
        leaf: usize,
    },
}

impl Component {
    pub fn order(&self) -> usize {
        match *self {
            Component::Clique { size } => size,
            Component::Cluster { petals, size } => petals * (size - 1) + 1,
            Component::Flower {
                center,
                attached,
                leaf,
            } => center + attached * (leaf - 1),
        }
    }

    pub fn largest_block(&self) -> usize {
        match *self {
            Component::Clique { size } => size,
            Component::Cluster { size, .. } => size,
            Component::Flower { center, leaf, attached } => {
                if attached > 0 {
                    center.max(leaf)
                } else {
                    center
                }
            }
        }
    }

    /// Sum of block sizes minus order.
    pub fn duplication(&self) -> usize {
        match *self {
            Component::Clique { .. } => 0,
            Component::Cluster { petals, .. } => petals - 1,
            Component::Flower { attached, .. } => attached,
        }
    }

    fn edges(&self, base: usize, out: &mut Vec<(usize, usize)>) {
        let clique = |vs: &[usize], out: &mut Vec<(usize, usize)>| {
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    out.push((u, v));
                }
            }
        };
        match *self {
            Component::Clique { size } => {
                clique(&(base..base + size).collect::<Vec<_>>(), out);
            }
            Component::Cluster { petals, size } => {
                let mut next = base + 1;
                for _ in 0..petals {
                    let mut vs = vec![base];
                    vs.extend(next..next + size - 1);
                    next += size - 1;
                    clique(&vs, out);
                }
            }
            Component::Flower {
                center,
                attached,
                leaf,
            } => {
                clique(&(base..base + center).collect::<Vec<_>>(), out);
                let mut next = base + center;
                for i in 0..attached {
                    let mut vs = vec![base + i];
                    vs.extend(next..next + leaf - 1);
                    next += leaf - 1;
                    clique(&vs, out);
                }
            }
        }
    }

    /// `f[j]` = least neighbourhood union over independent `j`-sets inside
    /// this component (`None` when there is no such set).
    pub fn min_union_profile(&self, k: usize) -> Vec<Option<usize>> {
        let mut f = vec![None; k + 1];
        f[0] = Some(0);
        let put = |f: &mut Vec<Option<usize>>, j: usize, v: usize| {
            if j <= k {
                f[j] = Some(f[j].map_or(v, |x: usize| x.min(v)));
            }
        };
        match *self {
            Component::Clique { size } => {
                if size >= 1 {
                    put(&mut f, 1, size - 1);
                }
            }
            Component::Cluster { petals, size } => {
                put(&mut f, 1, size - 1);
                for j in 2..=petals.min(k) {
                    put(&mut f, j, j * (size - 2) + 1);
                }
            }
            Component::Flower {
                center,
                attached,
                leaf,
            } => {
                for j in 1..=attached.min(k) {
                    put(&mut f, j, j * (leaf - 1));
                }
                if center > attached {
                    for j in 0..=attached.min(k.saturating_sub(1)) {
                        put(&mut f, j + 1, center - 1 + j * (leaf - 2));
                    }
                }
                if attached >= 1 {
                    for j in 0..attached.min(k) {
                        put(&mut f, j + 1, center - 1 + leaf - 1 + j * (leaf - 2));
                    }
                }
            }
        }
        f
    }
}

/// Min-plus convolution of two profiles.
fn convolve(a: &[Option<usize>], b: &[Option<usize>]) -> Vec<Option<usize>> {
    let k = a.len() - 1;
    let mut r = vec![None; k + 1];
    for (i, x) in a.iter().enumerate() {
        let Some(x) = x else { continue };
        for (j, y) in b.iter().enumerate().take(k + 1 - i) {
            if let Some(y) = y {
                let v = x + y;
                r[i + j] = Some(r[i + j].map_or(v, |c: usize| c.min(v)));
            }
        }
    }
    r
}

/// Least neighbourhood union over independent `k`-sets of the disjoint union
/// of `parts`, computed per component.
pub fn components_min_union(parts: &[Component], k: usize) -> Option<usize> {
    let mut acc = vec![None; k + 1];
    acc[0] = Some(0);
    for c in parts {
        acc = convolve(&acc, &c.min_union_profile(k));
    }
    acc[k]
}

pub fn build(parts: &[Component]) -> Graph {
    let order = parts.iter().map(Component::order).sum();
    let mut edges = Vec::new();
    let mut base = 0;
    for c in parts {
        c.edges(base, &mut edges);
        base += c.order();
    }
    Graph::from_edges(order, edges).expect("component layout stays in range")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSpec {
    pub family: Family,
    pub parameters: BTreeMap<String, i64>,
    pub components: Vec<Component>,
    pub claimed_order: usize,
    /// Size of the independent sets `claimed_min_union` refers to.
    pub k: usize,
    pub claimed_min_union: usize,
    /// `C_j`-freeness is claimed for every `j` at or above this value.
    pub claimed_cm_free_from: usize,
    pub duplication: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assembly: Option<Assembly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_family: Option<Family>,
    /// Assemblies tried before the one that succeeded.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<String>,
}

impl WitnessSpec {
    fn new(family: Family, components: Vec<Component>, k: usize, claimed_min_union: usize) -> Self {
        WitnessSpec {
            family,
            parameters: BTreeMap::new(),
            claimed_order: components.iter().map(Component::order).sum(),
            k,
            claimed_min_union,
            claimed_cm_free_from: components.iter().map(Component::largest_block).max().unwrap_or(0) + 1,
            duplication: components.iter().map(Component::duplication).sum(),
            components,
            assembly: None,
            base_family: None,
            attempts: Vec::new(),
        }
    }

    fn param(mut self, key: &str, v: i64) -> Self {
        self.parameters.insert(key.to_string(), v);
        self
    }

    fn ctx_params(mut self, ctx: &ParamContext) -> Self {
        for (key, v) in [("t", ctx.t), ("k", ctx.k), ("n", ctx.n), ("m", ctx.m), ("p", ctx.p), ("q", ctx.q)] {
            self.parameters.insert(key.to_string(), v);
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness spec serializes")
    }
}

pub type Witness = (Graph, WitnessSpec);

fn finish(spec: WitnessSpec) -> Witness {
    (build(&spec.components), spec)
}

fn u(x: i64) -> usize {
    usize::try_from(x).expect("non-negative size")
}

/// `count` disjoint copies of `K_size`.
pub fn disjoint_cliques(count: usize, size: usize, k: usize) -> Witness {
    let parts = vec![Component::Clique { size }; count];
    let claim = components_min_union(&parts, k).unwrap_or(0);
    finish(
        WitnessSpec::new(Family::DisjointCliques, parts, k, claim)
            .param("count", count as i64)
            .param("size", size as i64),
    )
}

/// `K_center` with `attached` copies of `K_leaf` hanging off distinct center
/// vertices, plus `extra` disjoint copies of `K_leaf`.
pub fn flower(center: usize, attached: usize, leaf: usize, extra: usize, k: usize) -> Result<Witness> {
    if attached > center {
        return Err(Error::AttachOverflow { attached, center });
    }
    let mut parts = vec![Component::Flower {
        center,
        attached,
        leaf,
    }];
    parts.extend(std::iter::repeat(Component::Clique { size: leaf }).take(extra));
    let claim = components_min_union(&parts, k).unwrap_or(0);
    Ok(finish(
        WitnessSpec::new(Family::Flower, parts, k, claim)
            .param("center", center as i64)
            .param("attached", attached as i64)
            .param("leaf", leaf as i64)
            .param("extra", extra as i64),
    ))
}

fn cluster_parts(petal_counts: &[usize], b: usize, c: usize, p: usize) -> Vec<Component> {
    let mut parts: Vec<Component> = petal_counts
        .iter()
        .map(|&petals| {
            if petals == 1 {
                Component::Clique { size: p + 1 }
            } else {
                Component::Cluster { petals, size: p + 1 }
            }
        })
        .collect();
    parts.extend(std::iter::repeat(Component::Clique { size: p + 1 }).take(b));
    parts.extend(std::iter::repeat(Component::Clique { size: p }).take(c));
    parts
}

/// Clusters on `K_{p+1}`, then `b` copies of `K_{p+1}`, then `c` copies of `K_p`.
pub fn gamma_abc(clusters: &[ClusterSpec], b: usize, c: usize, p: usize, k: usize) -> Witness {
    let counts: Vec<usize> = clusters.iter().map(|c| c.petals).collect();
    let parts = cluster_parts(&counts, b, c, p);
    let claim = components_min_union(&parts, k).unwrap_or(0);
    finish(
        WitnessSpec::new(Family::GammaAbc, parts, k, claim)
            .param("a", clusters.len() as i64)
            .param("b", b as i64)
            .param("c", c as i64)
            .param("p", p as i64),
    )
}

/// Case-(i) witness: cliques of size `m - 1` when they are strictly larger,
/// otherwise the flower on `K_{p+k}`.
fn case_one(ctx: &ParamContext) -> Result<Witness> {
    let (t, k, n, m, p, q) = (ctx.t, ctx.k, ctx.n, ctx.m, ctx.p, ctx.q);
    let (g, spec) = if (t + k - 1) * (m - 1) > n + k * p + k - 1 {
        let (g, mut spec) = disjoint_cliques(u(t + k - 1), u(m - 1), u(k));
        spec.claimed_min_union = u(k * (m - 2));
        (g, spec)
    } else {
        let (g, mut spec) = flower(u(p + k), u(t + k - 1 - q), u(p + 1), u(q), u(k))?;
        spec.claimed_min_union = u(k * p);
        (g, spec)
    };
    Ok((g, spec.ctx_params(ctx)))
}

/// Case-(ii) flower on `K_{p+sigma-1}`.
fn case_two(ctx: &ParamContext, sigma: i64) -> Result<Witness> {
    let (t, k, p, q) = (ctx.t, ctx.k, ctx.p, ctx.q);
    let (g, mut spec) = flower(u(p + sigma - 1), u(t + k - 1 - q), u(p + 1), u(q), u(k))?;
    spec.claimed_min_union = u(k * (p - 1) + sigma - 1);
    Ok((g, spec.ctx_params(ctx).param("sigma", sigma)))
}

fn require_sigma_two(ctx: &ParamContext) -> Result<()> {
    if ctx.k != 3 || ctx.sigma != Some(2) {
        return Err(Error::OutOfRange(format!(
            "needs k = 3 and p + 1 = m - 1; got k = {}, p = {}, m = {}",
            ctx.k, ctx.p, ctx.m
        )));
    }
    Ok(())
}

/// `k = 3`, `r_3 <= (t+3)/2`: `r_3` two-petal clusters plus singles.
pub fn gamma_3(ctx: &ParamContext) -> Result<Witness> {
    require_sigma_two(ctx)?;
    let (t, p) = (ctx.t, ctx.p);
    // ell = 1 here, since g_2 = n + 2p + 1
    let r3 = t * p + t + 3 - 1 - ctx.n;
    if 2 * r3 > t + 3 {
        return Err(Error::InfeasibleAssembly {
            reason: format!("2 r_3 = {} exceeds t + 3 = {}", 2 * r3, t + 3),
            attempts: vec![format!("{r3} two-petal clusters")],
        });
    }
    let mut counts = vec![2; u(r3)];
    counts.extend(std::iter::repeat(1).take(u(t + 3 - 2 * r3)));
    let parts = cluster_parts(&counts, 0, 0, u(p));
    Ok(finish(
        WitnessSpec::new(Family::Gamma3, parts, 3, u(3 * p - 1))
            .ctx_params(ctx)
            .param("r_3", r3),
    ))
}

/// `k = 3`, `r_3 > (t+3)/2`: `q` singles and one cluster of `t + 3 - q` petals.
pub fn gamma_3_prime(ctx: &ParamContext) -> Result<Witness> {
    require_sigma_two(ctx)?;
    let (t, p, q) = (ctx.t, ctx.p, ctx.q);
    let mut counts = vec![u(t + 3 - q)];
    counts.extend(std::iter::repeat(1).take(u(q)));
    let parts = cluster_parts(&counts, 0, 0, u(p));
    Ok(finish(WitnessSpec::new(Family::Gamma3Prime, parts, 3, u(3 * p - 2)).ctx_params(ctx)))
}

/// Disjoint union with one `K_p`; the claim grows by `p - 1`.
pub fn extend_with_kp(g: &Graph, spec: &WitnessSpec, p: usize) -> Result<Witness> {
    use Family::*;
    if !matches!(spec.family, GammaAbc | GammaK | Gamma3 | Gamma3Prime | Extended | Composite) {
        return Err(Error::Unsupported(format!("cannot extend a {:?} witness", spec.family)));
    }
    debug_assert_eq!(g.order(), spec.claimed_order);
    let mut parts = spec.components.clone();
    parts.push(Component::Clique { size: p });
    let mut out = WitnessSpec::new(Extended, parts, spec.k + 1, spec.claimed_min_union + p.saturating_sub(1));
    out.parameters = spec.parameters.clone();
    out.parameters.insert("k".into(), out.k as i64);
    out.base_family = Some(spec.base_family.unwrap_or(spec.family));
    out.assembly = spec.assembly;
    out.attempts = spec.attempts.clone();
    Ok(finish(out))
}

/// Partitions of `t + k` into exactly `parts` cluster sizes, each at most
/// `mu + 1`, whose `ell` largest sum to at most `k - 1` and whose `ell + 1`
/// largest reach `k`. Returns the first in descending lexicographic order.
fn generalized_partition(total: usize, parts: usize, cap: usize, ell: usize, k: usize) -> Option<Vec<usize>> {
    fn rec(rem: usize, left: usize, cap: usize, acc: &mut Vec<usize>, ok: &dyn Fn(&[usize]) -> bool) -> bool {
        if left == 0 {
            return rem == 0 && ok(acc);
        }
        if rem < left {
            return false;
        }
        let hi = cap.min(rem - (left - 1));
        for c in (1..=hi).rev() {
            acc.push(c);
            if rec(rem - c, left - 1, c, acc, ok) {
                return true;
            }
            acc.pop();
        }
        false
    }
    if parts == 0 {
        return None;
    }
    let ok = |sizes: &[usize]| {
        let top: usize = sizes.iter().take(ell).sum();
        let next: usize = sizes.iter().take(ell + 1).sum();
        top < k && next >= k
    };
    let mut acc = Vec::new();
    rec(total, parts, cap, &mut acc, &ok).then_some(acc)
}

/// Work cap (profile convolutions) for the component search.
pub const COMPONENT_SEARCH_BUDGET: u64 = 400_000_000;

/// Looks for a disjoint union of cliques, clusters and flowers (all blocks
/// at most `max_block`) on exactly `order` vertices whose least `k`-set
/// neighbourhood union is at least `need`.
pub fn component_search(order: usize, k: usize, need: usize, max_block: usize) -> Result<Option<Vec<Component>>> {
    let mut catalog: Vec<(Component, Vec<Option<usize>>)> = Vec::new();
    for s in 1..=max_block {
        catalog.push((Component::Clique { size: s }, Vec::new()));
    }
    for s in 2..=max_block {
        for petals in 2..=k + 1 {
            catalog.push((Component::Cluster { petals, size: s }, Vec::new()));
        }
    }
    for center in 2..=max_block {
        for attached in 1..=center.min(k + 1) {
            for leaf in 2..=max_block {
                catalog.push((
                    Component::Flower {
                        center,
                        attached,
                        leaf,
                    },
                    Vec::new(),
                ));
            }
        }
    }
    catalog.retain(|(c, _)| c.order() <= order);
    for (c, f) in catalog.iter_mut() {
        *f = c.min_union_profile(k);
    }

    type Profile = Vec<Option<usize>>;
    let cap = |v: Profile| -> Profile { v.into_iter().map(|x| x.map(|x| x.min(need))).collect() };
    // a missing independent set counts as an infinite union
    let key = |x: &Option<usize>| x.unwrap_or(usize::MAX);
    let dominates = |a: &Profile, b: &Profile| a.iter().zip(b).all(|(x, y)| key(x) >= key(y));

    let mut empty = vec![None; k + 1];
    empty[0] = Some(0);
    let mut frontier: Vec<Vec<(Profile, Vec<Component>)>> = vec![vec![(empty, Vec::new())]];
    let mut work = 0u64;
    for o in 1..=order {
        let mut cur: HashMap<Profile, Vec<Component>> = HashMap::new();
        for (comp, f) in &catalog {
            let co = comp.order();
            if co > o {
                continue;
            }
            for (v, recipe) in &frontier[o - co] {
                work += 1;
                if work > COMPONENT_SEARCH_BUDGET {
                    return Err(Error::ResourceLimit(format!(
                        "component search exceeded {COMPONENT_SEARCH_BUDGET} steps"
                    )));
                }
                let nv = cap(convolve(v, f));
                cur.entry(nv).or_insert_with(|| {
                    let mut r = recipe.clone();
                    r.push(*comp);
                    r
                });
            }
        }
        let mut cands: Vec<(Profile, Vec<Component>)> = cur.into_iter().collect();
        cands.sort_by(|a, b| {
            let ka: Vec<usize> = a.0.iter().map(key).collect();
            let kb: Vec<usize> = b.0.iter().map(key).collect();
            kb.cmp(&ka).then_with(|| a.1.cmp(&b.1))
        });
        let mut keep: Vec<(Profile, Vec<Component>)> = Vec::new();
        for (v, r) in cands {
            if !keep.iter().any(|(w, _)| dominates(w, &v)) {
                keep.push((v, r));
            }
        }
        frontier.push(keep);
    }
    Ok(frontier[order]
        .iter()
        .find(|(v, _)| v[k].map_or(true, |x| x >= need))
        .map(|(_, r)| r.clone()))
}

/// Case-(iii) witness for `r_k <= r` and `k >= 4`.
pub fn gamma_k(ctx: &ParamContext, ell: i64) -> Result<Witness> {
    let (t, k, n, p) = (ctx.t, ctx.k, ctx.n, ctx.p);
    if k < 4 {
        return Err(Error::OutOfRange(format!("gamma_k needs k >= 4, got {k}")));
    }
    let sigma = match ctx.partition() {
        Partition::CaseIII { sigma } => sigma,
        _ => return Err(Error::OutOfRange("gamma_k needs case (iii) parameters".into())),
    };
    let hi = (k - 1 + 1) / 2;
    if ell < sigma - 1 || ell > hi {
        return Err(Error::EllOutOfRange { k, ell, lo: sigma - 1, hi });
    }
    let mu = (k - 1) / ell;
    let alpha = (k - 1) % ell;
    let r_k = t * p + t + k - ell - n;
    if !formula::rk_at_most_r(r_k, mu, alpha, t, k) {
        return Err(Error::OutOfRange(format!("gamma_k needs r_k <= r; r_k = {r_k}")));
    }
    let claim = u(k * (p - 1) + ell + 1);
    let target = n + k * p + ell;
    let base = |parts: Vec<Component>, family: Family, assembly: Assembly| {
        let mut spec = WitnessSpec::new(family, parts, u(k), claim)
            .ctx_params(ctx)
            .param("ell", ell)
            .param("mu", mu)
            .param("alpha", alpha)
            .param("r_k", r_k);
        spec.assembly = Some(assembly);
        spec
    };
    let mut attempts = Vec::new();

    if mu >= 2 {
        let kappa = (r_k - alpha) / (mu - 1);
        let gamma = (r_k - alpha) % (mu - 1);
        let singles = t + k - 1 - (alpha + kappa * mu + gamma);
        if singles >= 0 && kappa >= alpha {
            let mut counts = vec![u(mu + 1); u(alpha)];
            counts.extend(std::iter::repeat(u(mu)).take(u(kappa - alpha)));
            counts.push(u(gamma + 1));
            counts.extend(std::iter::repeat(1).take(u(singles)));
            let spec = base(cluster_parts(&counts, 0, 0, u(p)), Family::GammaK, Assembly::Standard)
                .param("kappa", kappa)
                .param("gamma", gamma);
            return Ok(finish(spec));
        }
        attempts.push(format!(
            "standard: kappa = {kappa}, gamma = {gamma} leaves {singles} single cliques"
        ));
    } else {
        attempts.push("standard: mu = 1 has no decomposition".to_string());
    }

    let parts_wanted = t + k - r_k;
    match generalized_partition(u(t + k), u(parts_wanted.max(0)), u(mu + 1), u(ell), u(k)) {
        Some(counts) => {
            let mut spec = base(cluster_parts(&counts, 0, 0, u(p)), Family::GammaK, Assembly::Generalized);
            spec.attempts = attempts;
            return Ok(finish(spec));
        }
        None => attempts.push(format!(
            "generalized: no partition of {} into {parts_wanted} clusters of at most {} petals \
             with the {ell} largest below {k} and the {} largest reaching {k}",
            t + k,
            mu + 1,
            ell + 1
        )),
    }

    let need = u(target - k - (n - 1));
    match component_search(u(target), u(k), need, u(ctx.m - 1)) {
        Ok(Some(parts)) => {
            let found = components_min_union(&parts, u(k)).unwrap_or(0);
            let mut spec = base(parts, Family::Composite, Assembly::ComponentSearch);
            spec.claimed_min_union = found;
            spec.attempts = attempts;
            Ok(finish(spec))
        }
        Ok(None) => {
            attempts.push(format!(
                "component search: no union of cliques, clusters and flowers with blocks <= {} \
                 on {target} vertices has k-set union >= {need}",
                ctx.m - 1
            ));
            Err(Error::InfeasibleAssembly {
                reason: format!("no witness on {target} vertices for (t, k, n, m) = ({t}, {k}, {n}, {})", ctx.m),
                attempts,
            })
        }
        Err(e) => {
            attempts.push(format!("component search: {e}"));
            Err(Error::InfeasibleAssembly {
                reason: "component search did not finish".into(),
                attempts,
            })
        }
    }
}

/// A graph on `g_k - 1` vertices certifying the lower bound for `ctx`.
pub fn lower_bound_witness(ctx: &ParamContext) -> Result<Witness> {
    let pred = formula::gk(ctx)?;
    let (k, p) = (ctx.k, ctx.p);
    let witness = match (k, ctx.partition()) {
        (1, _) => case_one(ctx)?,
        (2, _) if p + 1 < ctx.m - 1 => case_one(ctx)?,
        (2, _) => case_two(ctx, 2)?,
        (_, Partition::CaseI) => case_one(ctx)?,
        (_, Partition::CaseII { sigma }) => case_two(ctx, sigma)?,
        (_, Partition::CaseIII { sigma }) => {
            let lvl = pred.trace.last().expect("case (iii) records a trace level");
            match lvl.branch {
                Branch::AtMost if k == 3 => gamma_3(ctx)?,
                Branch::AtMost => gamma_k(ctx, lvl.ell)?,
                Branch::Above if lvl.ell == sigma - 1 => {
                    if k == 3 {
                        gamma_3_prime(ctx)?
                    } else {
                        case_two(ctx, sigma)?
                    }
                }
                Branch::Above => {
                    let (g, spec) = lower_bound_witness(&ctx.with_k(k - 1)?)?;
                    let (g, spec) = extend_with_kp(&g, &spec, u(p))?;
                    let mut spec = spec.ctx_params(ctx);
                    if spec.base_family == Some(Family::Composite) {
                        spec.claimed_min_union = components_min_union(&spec.components, u(k)).unwrap_or(0);
                    }
                    (g, spec)
                }
            }
        }
    };
    debug_assert_eq!(witness.0.order() as i64, pred.g - 1, "{ctx:?}");
    Ok(witness)
}
