//! Tiny-scale ground truth: does every graph on `N` vertices contain `C_m` or
//! have `B_n^(k)` in its complement?
//!
//! Nothing here calls into [`crate::verify`]; the cycle and book decisions
//! are separate brute-force implementations so the two can be compared.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io;

/// Largest vertex count the enumerating routines accept.
pub const MAX_ENUM_ORDER: usize = 8;
/// Largest order [`arrows`] accepts.
pub const MAX_ARROW_ORDER: usize = 20;
/// Orders at and below this are enumerated label by label.
pub const RAW_ENUM_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArrowCertificate {
    Cycle { cycle: Vec<usize> },
    Book { spine: Vec<usize>, pages: Vec<usize> },
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrowing {
    pub arrows: bool,
    pub certificate: ArrowCertificate,
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.order())
        .map(|v| (0..g.order()).filter(|&w| g.has_edge(v, w)).fold(0u32, |a, w| a | 1 << w))
        .collect()
}

/// A cycle through exactly `m` vertices, found by a path DP over vertex
/// subsets whose least element is the start.
fn find_cycle(adj: &[u32], m: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    if m < 3 || m > n {
        return None;
    }
    const NONE: u8 = u8::MAX;
    for s in 0..n {
        // parent[mask * n + v]: predecessor of v on a path from s visiting exactly mask
        let free: Vec<usize> = (s + 1..n).collect();
        let width = free.len();
        let mut parent = vec![NONE; (1usize << width) * n];
        let bit = |v: usize| 1usize << (v - s - 1);
        for &v in &free {
            if adj[s] >> v & 1 == 1 {
                parent[bit(v) * n + v] = s as u8;
            }
        }
        for mask in 1usize..1 << width {
            let size = mask.count_ones() as usize + 1;
            if size > m {
                continue;
            }
            for &v in &free {
                if parent[mask * n + v] == NONE {
                    continue;
                }
                if size == m {
                    if adj[v] >> s & 1 == 1 {
                        let mut cyc = vec![v];
                        let (mut cur, mut msk) = (v, mask);
                        loop {
                            let p = parent[msk * n + cur] as usize;
                            msk &= !bit(cur);
                            if p == s {
                                break;
                            }
                            cyc.push(p);
                            cur = p;
                        }
                        cyc.push(s);
                        cyc.reverse();
                        return Some(cyc);
                    }
                    continue;
                }
                for &w in &free {
                    let to = (mask | bit(w)) * n + w;
                    if mask & bit(w) == 0 && adj[v] >> w & 1 == 1 && parent[to] == NONE {
                        parent[to] = v as u8;
                    }
                }
            }
        }
    }
    None
}

/// First `k`-subset (lexicographic) that is independent and has at least
/// `n` common non-neighbours, by plain subset enumeration.
fn find_book(adj: &[u32], n: usize, k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let order = adj.len();
    if k > order {
        return None;
    }
    let all = if order == 32 { u32::MAX } else { (1u32 << order) - 1 };
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let spine_mask = idx.iter().fold(0u32, |a, &v| a | 1 << v);
        let independent = idx.iter().all(|&v| adj[v] & spine_mask == 0);
        if independent {
            let touched = idx.iter().fold(spine_mask, |a, &v| a | adj[v]);
            let pages = all & !touched;
            if pages.count_ones() as usize >= n {
                let pages = (0..order).filter(|&w| pages >> w & 1 == 1).collect();
                return Some((idx, pages));
            }
        }
        let i = (0..k).rev().find(|&i| idx[i] < order - k + i)?;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `g -> (C_m, B_n^(k))`: a `C_m` in `g` or a `B_n^(k)` in its complement.
pub fn arrows(g: &Graph, m: usize, n: usize, k: usize) -> Result<Arrowing> {
    if m < 3 || n < 1 || k < 1 {
        return Err(Error::OutOfRange(format!("need m >= 3, n >= 1, k >= 1; got {m}, {n}, {k}")));
    }
    if g.order() > MAX_ARROW_ORDER {
        return Err(Error::ResourceLimit(format!(
            "oracle accepts order <= {MAX_ARROW_ORDER}, got {}",
            g.order()
        )));
    }
    let adj = adjacency_masks(g);
    if let Some(cycle) = find_cycle(&adj, m) {
        return Ok(Arrowing {
            arrows: true,
            certificate: ArrowCertificate::Cycle { cycle },
        });
    }
    if let Some((spine, pages)) = find_book(&adj, n, k) {
        return Ok(Arrowing {
            arrows: true,
            certificate: ArrowCertificate::Book { spine, pages },
        });
    }
    Ok(Arrowing {
        arrows: false,
        certificate: ArrowCertificate::Neither,
    })
}

/// Upper-triangle code in graph6 bit order: `(0,1)` is the most significant
/// bit, so comparing codes compares graph6 strings.
pub fn code_of(adj: &[u32]) -> u64 {
    let n = adj.len();
    let mut code = 0u64;
    for v in 1..n {
        for u in 0..v {
            code = code << 1 | (adj[u] >> v & 1) as u64;
        }
    }
    code
}

pub fn graph_of_code(n: usize, code: u64) -> Graph {
    let bits = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if code >> (bits - 1 - i) & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, edges).expect("code fits the order")
}

fn adj_of_code(n: usize, code: u64) -> Vec<u32> {
    let bits = n * n.saturating_sub(1) / 2;
    let mut adj = vec![0u32; n];
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if code >> (bits - 1 - i) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            i += 1;
        }
    }
    adj
}

fn permuted(adj: &[u32], perm: &[usize]) -> Vec<u32> {
    // perm[old] = new
    let mut out = vec![0u32; adj.len()];
    for (v, &row) in adj.iter().enumerate() {
        let mut r = 0u32;
        let mut it = row;
        while it != 0 {
            let w = it.trailing_zeros() as usize;
            it &= it - 1;
            r |= 1 << perm[w];
        }
        out[perm[v]] = r;
    }
    out
}

/// Vertex colouring refined by neighbour colours until stable. Colours are
/// isomorphism-invariant ranks.
fn refined_colours(adj: &[u32]) -> Vec<usize> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Calls `f` on every permutation of `items`.
fn for_each_permutation(items: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn heap(k: usize, a: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(a);
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, f);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, f);
    }
    let k = items.len();
    heap(k, items, f);
}

/// Canonical code: the least code over labellings that place colour classes
/// in colour order.
pub fn canonical_code(adj: &[u32]) -> u64 {
    let n = adj.len();
    let colour = refined_colours(adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colour[v]);
    for v in order {
        match cells.last_mut() {
            Some(c) if colour[c[0]] == colour[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = vec![0usize; n];
    fn rec(cells: &mut [Vec<usize>], at: usize, base: usize, perm: &mut Vec<usize>, adj: &[u32], best: &mut u64) {
        if at == cells.len() {
            *best = (*best).min(code_of(&permuted(adj, perm)));
            return;
        }
        let mut cell = cells[at].clone();
        let size = cell.len();
        for_each_permutation(&mut cell, &mut |arr: &[usize]| {
            for (i, &v) in arr.iter().enumerate() {
                perm[v] = base + i;
            }
            rec(cells, at + 1, base + size, perm, adj, best);
        });
    }
    rec(&mut cells, 0, 0, &mut perm, adj, &mut best);
    best
}

/// The least code over all `n!` labellings.
pub fn least_labelling(adj: &[u32]) -> u64 {
    let mut items: Vec<usize> = (0..adj.len()).collect();
    let mut best = u64::MAX;
    for_each_permutation(&mut items, &mut |perm| {
        best = best.min(code_of(&permuted(adj, perm)));
    });
    best
}

/// One canonical code per isomorphism class on `n` vertices, ascending.
/// Built by adding a vertex with every neighbourhood to each class on
/// `n - 1` vertices and deduplicating canonical codes.
pub fn graph_classes(n: usize) -> Result<Vec<u64>> {
    if n > MAX_ENUM_ORDER {
        return Err(Error::ResourceLimit(format!(
            "isomorph-free enumeration limited to {MAX_ENUM_ORDER} vertices, got {n}"
        )));
    }
    let mut level: Vec<u64> = vec![0];
    for size in 1..=n {
        let prev = size - 1;
        let next: HashSet<u64> = level
            .par_iter()
            .flat_map_iter(|&code| {
                let base = adj_of_code(prev, code);
                (0u32..1 << prev).map(move |nb| {
                    let mut adj = base.clone();
                    adj.push(nb);
                    for (w, row) in adj.iter_mut().enumerate().take(prev) {
                        if nb >> w & 1 == 1 {
                            *row |= 1 << prev;
                        }
                    }
                    canonical_code(&adj)
                })
            })
            .collect();
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Enumeration {
    Raw,
    Classes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "N")]
    pub order: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub enumeration: Enumeration,
    pub graphs_checked: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    AllArrow,
    Counterexample,
}

fn arrows_adj(adj: &[u32], m: usize, n: usize, k: usize) -> bool {
    find_cycle(adj, m).is_some() || find_book(adj, n, k).is_some()
}

/// Does every graph on `order` vertices arrow `(C_m, B_n^(k))`? Otherwise
/// returns the counterexample with the least graph6 string.
pub fn ramsey_exhaustive(m: usize, n: usize, k: usize, order: usize, enumeration: Enumeration) -> Result<ScanResult> {
    if m < 3 || n < 1 || k < 1 {
        return Err(Error::OutOfRange(format!("need m >= 3, n >= 1, k >= 1; got {m}, {n}, {k}")));
    }
    if order > MAX_ENUM_ORDER {
        return Err(Error::ResourceLimit(format!(
            "exhaustive scan limited to {MAX_ENUM_ORDER} vertices, got {order}"
        )));
    }
    let (least, checked) = match enumeration {
        Enumeration::Raw => {
            let bits = order * order.saturating_sub(1) / 2;
            let total = 1u64 << bits;
            let least = (0..total)
                .into_par_iter()
                .find_first(|&code| !arrows_adj(&adj_of_code(order, code), m, n, k));
            (least, total)
        }
        Enumeration::Classes => {
            let classes = graph_classes(order)?;
            let least = classes
                .par_iter()
                .filter_map(|&code| {
                    let adj = adj_of_code(order, code);
                    (!arrows_adj(&adj, m, n, k)).then(|| least_labelling(&adj))
                })
                .min();
            (least, classes.len() as u64)
        }
    };
    Ok(ScanResult {
        m,
        n,
        k,
        order,
        verdict: if least.is_some() { Verdict::Counterexample } else { Verdict::AllArrow },
        counterexample: least.map(|c| io::to_graph6(&graph_of_code(order, c))),
        enumeration,
        graphs_checked: checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TinyRamsey {
    Value { value: usize },
    LowerBoundOnly { bound: usize },
}

/// Least `N <= n_max` at which every graph arrows, scanning upward.
pub fn ramsey_number_tiny(m: usize, n: usize, k: usize, n_max: usize) -> Result<(TinyRamsey, Vec<ScanResult>)> {
    if n_max > MAX_ENUM_ORDER {
        return Err(Error::ResourceLimit(format!(
            "tiny Ramsey scan limited to {MAX_ENUM_ORDER} vertices, got {n_max}"
        )));
    }
    let mut scans = Vec::new();
    for order in 1..=n_max {
        let mode = if order <= RAW_ENUM_ORDER { Enumeration::Raw } else { Enumeration::Classes };
        let scan = ramsey_exhaustive(m, n, k, order, mode)?;
        let done = scan.verdict == Verdict::AllArrow;
        scans.push(scan);
        if done {
            return Ok((TinyRamsey::Value { value: order }, scans));
        }
    }
    Ok((TinyRamsey::LowerBoundOnly { bound: n_max + 1 }, scans))
}
