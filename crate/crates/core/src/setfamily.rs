//! Duplication numbers of set families.
//!
//! The duplication number of `U_1, ..., U_h` is `Σ|U_i| - |∪U_i|`; the
//! duplication rate divides it by `h`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetFamily {
    sets: Vec<Vec<u32>>,
}

impl SetFamily {
    pub fn new<I, S>(sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u32>,
    {
        SetFamily {
            sets: sets
                .into_iter()
                .map(|s| s.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
                .collect(),
        }
    }

    /// One set per block: for a block-clique graph these are its maximal cliques.
    pub fn from_blocks(g: &Graph) -> Self {
        SetFamily::new(
            g.blocks()
                .blocks
                .into_iter()
                .filter(|b| b.len() >= 2)
                .map(|b| b.into_iter().map(|v| v as u32)),
        )
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<Vec<u32>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(SetFamily::new(raw))
    }

    fn dup_of(&self, idx: &[usize]) -> usize {
        let total: usize = idx.iter().map(|&i| self.sets[i].len()).sum();
        let union: BTreeSet<u32> = idx.iter().flat_map(|&i| self.sets[i].iter().copied()).collect();
        total - union.len()
    }
}

pub fn dup_number(f: &SetFamily) -> usize {
    f.dup_of(&(0..f.len()).collect::<Vec<_>>())
}

pub fn dup_rate(f: &SetFamily) -> Result<Ratio<i64>> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(Ratio::new(dup_number(f) as i64, f.len() as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OverlapDup {
    Holds { dup: usize, h: usize },
    /// Some set meets the union of the others in fewer than two elements.
    Vacuous { set: usize },
    Violated { dup: usize, h: usize },
}

/// If every set meets the union of the others in at least two elements, the
/// duplication number is at least the family size.
pub fn overlap_dup_check(f: &SetFamily) -> OverlapDup {
    for i in 0..f.len() {
        let others: BTreeSet<u32> = f
            .sets
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, s)| s.iter().copied())
            .collect();
        if f.sets[i].iter().filter(|x| others.contains(x)).count() < 2 {
            return OverlapDup::Vacuous { set: i };
        }
    }
    let (dup, h) = (dup_number(f), f.len());
    if dup >= h {
        OverlapDup::Holds { dup, h }
    } else {
        OverlapDup::Violated { dup, h }
    }
}

/// Largest duplication number over `k`-subfamilies, with the
/// lexicographically least index set attaining it.
pub fn max_k_subfamily_dup(f: &SetFamily, k: usize) -> Result<(usize, Vec<usize>)> {
    if k > f.len() {
        return Err(Error::OutOfRange(format!("family has {} sets, need {k}", f.len())));
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best = (f.dup_of(&idx), idx.clone());
    let n = f.len();
    loop {
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        let d = f.dup_of(&idx);
        if d > best.0 {
            best = (d, idx.clone());
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Exhaustive,
    Sampled,
}

/// Outcome of a bounded search for families of `t + k` sets of size `p + 1`
/// in which every `k` of them cover at least `kp + ell + 1` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DupRateReport {
    pub t: usize,
    pub k: usize,
    pub ell: usize,
    pub p: usize,
    pub mu: usize,
    pub alpha: usize,
    pub r: String,
    pub regime: Regime,
    pub nodes: u64,
    pub max_dup: usize,
    pub max_family: SetFamily,
    pub exceeds_r: bool,
    pub pattern_dup: usize,
    pub pattern_meets_hypothesis: bool,
    pub pattern_attains_floor_r: bool,
}

/// Each shared element is described by the sets containing it (at least
/// two). Any family is determined up to private elements by the multiset
/// of these patterns.
struct PatternSearch {
    h: usize,
    cap: usize,
    limit: usize,
    patterns: Vec<u32>,
    ksets: Vec<u32>,
    use_count: Vec<usize>,
    dups: Vec<usize>,
    chosen: Vec<u32>,
    best: (usize, Vec<u32>),
    nodes: u64,
    budget: u64,
}

impl PatternSearch {
    fn rec(&mut self, start: usize, total: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if total > self.best.0 {
            self.best = (total, self.chosen.clone());
        }
        for j in start..self.patterns.len() {
            let pat = self.patterns[j];
            if (0..self.h).any(|i| pat >> i & 1 == 1 && self.use_count[i] >= self.cap) {
                continue;
            }
            let contrib = |ks: u32| ((pat & ks).count_ones() as usize).saturating_sub(1);
            if self.ksets.iter().zip(&self.dups).any(|(&ks, &d)| d + contrib(ks) > self.limit) {
                continue;
            }
            for i in 0..self.h {
                if pat >> i & 1 == 1 {
                    self.use_count[i] += 1;
                }
            }
            for (s, &ks) in self.ksets.iter().enumerate() {
                self.dups[s] += contrib(ks);
            }
            self.chosen.push(pat);
            let finished = self.rec(j, total + pat.count_ones() as usize - 1);
            self.chosen.pop();
            for (s, &ks) in self.ksets.iter().enumerate() {
                self.dups[s] -= contrib(ks);
            }
            for i in 0..self.h {
                if pat >> i & 1 == 1 {
                    self.use_count[i] -= 1;
                }
            }
            if !finished {
                return false;
            }
        }
        true
    }
}

/// Materializes shared-element patterns as a family of `h` sets of size
/// `p + 1`, padding with private elements.
pub fn family_from_patterns(h: usize, p: usize, patterns: &[u32]) -> SetFamily {
    let mut sets: Vec<Vec<u32>> = vec![Vec::new(); h];
    let mut next = 0u32;
    for &pat in patterns {
        for (i, s) in sets.iter_mut().enumerate() {
            if pat >> i & 1 == 1 {
                s.push(next);
            }
        }
        next += 1;
    }
    for s in sets.iter_mut() {
        while s.len() < p + 1 {
            s.push(next);
            next += 1;
        }
    }
    SetFamily::new(sets)
}

/// `alpha` clusters of `mu + 1` sets, then clusters of `mu` sets, then one
/// remainder cluster; each cluster shares one element.
pub fn extremal_pattern(h: usize, mu: usize, alpha: usize) -> Vec<u32> {
    let mut sizes = vec![mu + 1; alpha];
    let mut left = h.saturating_sub(alpha * (mu + 1));
    while left > 0 {
        let c = left.min(mu.max(1));
        sizes.push(c);
        left -= c;
    }
    let mut out = Vec::new();
    let mut at = 0;
    for c in sizes {
        if c >= 2 {
            out.push(((1u32 << c) - 1) << at);
        }
        at += c;
    }
    out
}

fn hypothesis_holds(f: &SetFamily, k: usize, ell: usize) -> bool {
    match max_k_subfamily_dup(f, k) {
        Ok((d, _)) => d + ell < k,
        Err(_) => true,
    }
}

/// Searches families of `t + k` sets of size `p + 1` whose `k`-subfamilies
/// each cover at least `kp + ell + 1` elements, for the largest duplication
/// number. Exhaustive within `budget` search nodes, otherwise `samples`
/// seeded random families.
pub fn dup_rate_probe(t: usize, k: usize, ell: usize, p: usize, budget: u64, seed: u64) -> Result<DupRateReport> {
    let h = t + k;
    if ell == 0 || ell >= k || h > 16 {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell < k and t + k <= 16; got t={t}, k={k}, ell={ell}"
        )));
    }
    let (mu, alpha) = ((k - 1) / ell, (k - 1) % ell);
    let r = formula::r_bound(mu as i64, alpha as i64, t as i64, k as i64);
    let limit = k - ell - 1;

    let patterns: Vec<u32> = (1u32..1 << h).filter(|m| m.count_ones() >= 2).collect();
    let ksets: Vec<u32> = (1u32..1 << h).filter(|m| m.count_ones() as usize == k).collect();
    let mut search = PatternSearch {
        h,
        cap: p + 1,
        limit,
        patterns,
        ksets,
        use_count: vec![0; h],
        dups: vec![0; 0],
        chosen: Vec::new(),
        best: (0, Vec::new()),
        nodes: 0,
        budget,
    };
    search.dups = vec![0; search.ksets.len()];
    let complete = search.rec(0, 0);

    let (regime, max_dup, best_patterns) = if complete {
        (Regime::Exhaustive, search.best.0, search.best.1.clone())
    } else {
        let (d, pats) = sample_patterns(&search, seed);
        let (d, pats) = if d >= search.best.0 { (d, pats) } else { search.best.clone() };
        (Regime::Sampled, d, pats)
    };
    let max_family = family_from_patterns(h, p, &best_patterns);
    debug_assert_eq!(dup_number(&max_family), max_dup);

    let pattern = extremal_pattern(h, mu, alpha);
    let pattern_family = family_from_patterns(h, p, &pattern);
    let fits = (0..h).all(|i| pattern.iter().filter(|&&m| m >> i & 1 == 1).count() <= p + 1);
    let pattern_dup = dup_number(&pattern_family);
    let floor_r = r.floor().to_integer() as usize;

    Ok(DupRateReport {
        t,
        k,
        ell,
        p,
        mu,
        alpha,
        r: r.to_string(),
        regime,
        nodes: search.nodes,
        max_dup,
        max_family,
        exceeds_r: Ratio::from_integer(max_dup as i64) > r,
        pattern_dup,
        pattern_meets_hypothesis: fits && hypothesis_holds(&pattern_family, k, ell),
        pattern_attains_floor_r: pattern_dup == floor_r,
    })
}

/// Random greedy pattern families, for parameters too large to exhaust.
fn sample_patterns(s: &PatternSearch, seed: u64) -> (usize, Vec<u32>) {
    const SAMPLES: usize = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (0, Vec::new());
    for _ in 0..SAMPLES {
        let mut use_count = vec![0usize; s.h];
        let mut dups = vec![0usize; s.ksets.len()];
        let mut chosen = Vec::new();
        let mut total = 0;
        let mut misses = 0;
        while misses < 64 {
            let pat = s.patterns[rng.gen_range(0..s.patterns.len())];
            let contrib = |ks: u32| ((pat & ks).count_ones() as usize).saturating_sub(1);
            let fits = (0..s.h).all(|i| pat >> i & 1 == 0 || use_count[i] < s.cap)
                && s.ksets.iter().zip(&dups).all(|(&ks, &d)| d + contrib(ks) <= s.limit);
            if !fits {
                misses += 1;
                continue;
            }
            for (i, u) in use_count.iter_mut().enumerate() {
                if pat >> i & 1 == 1 {
                    *u += 1;
                }
            }
            for (d, &ks) in dups.iter_mut().zip(&s.ksets) {
                *d += contrib(ks);
            }
            total += pat.count_ones() as usize - 1;
            chosen.push(pat);
        }
        if total > best.0 {
            best = (total, chosen);
        }
    }
    best
}

/// Seeded random family over `0..universe` with `h` sets.
pub fn random_family<R: Rng>(rng: &mut R, h: usize, universe: u32, density: f64) -> SetFamily {
    SetFamily::new((0..h).map(|_| (0..universe).filter(|_| rng.gen_bool(density)).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lower_bound_witness;
    use crate::formula::validate;

    #[test]
    fn dup_examples() {
        let f = SetFamily::new([vec![1, 2], vec![3], vec![4, 5, 6]]);
        assert_eq!(dup_number(&f), 0);
        let f = SetFamily::new([vec![1, 2, 3, 4, 5], vec![1, 2, 3, 4, 5]]);
        assert_eq!(dup_number(&f), 5);
        let f = SetFamily::new([vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]]);
        assert_eq!(dup_number(&f), 3);
        assert_eq!(dup_rate(&f).unwrap(), Ratio::from_integer(1));
        assert_eq!(dup_rate(&SetFamily::default()), Err(Error::EmptyFamily));
    }

    #[test]
    fn overlap_dup_examples() {
        let f = SetFamily::new([vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]);
        assert_eq!(overlap_dup_check(&f), OverlapDup::Holds { dup: 4, h: 3 });
        let f = SetFamily::new([vec![0], vec![1]]);
        assert_eq!(overlap_dup_check(&f), OverlapDup::Vacuous { set: 0 });
    }

    #[test]
    fn max_subfamily_examples() {
        let f = SetFamily::new([vec![0], vec![1], vec![2]]);
        assert_eq!(max_k_subfamily_dup(&f, 2).unwrap(), (0, vec![0, 1]));
        let (t, k, p) = (2usize, 3usize, 4u32);
        let f = SetFamily::new(vec![(0..p + 1).collect::<Vec<_>>(); t + k]);
        assert_eq!(max_k_subfamily_dup(&f, k).unwrap().0, k * 5 - 5);
        assert!(max_k_subfamily_dup(&f, 9).is_err());
    }

    #[test]
    fn cluster_family_from_witness() {
        let ctx = validate(2, 3, 22, 12).unwrap();
        let (g, spec) = lower_bound_witness(&ctx).unwrap();
        let f = SetFamily::from_blocks(&g);
        assert_eq!(dup_number(&f), spec.duplication);
        // two two-petal clusters: three blocks reach at most one shared vertex
        assert_eq!(max_k_subfamily_dup(&f, 3).unwrap().0, 1);
    }

    #[test]
    fn dup_rate_small_case() {
        let rep = dup_rate_probe(2, 3, 1, 2, 10_000_000, 1).unwrap();
        assert_eq!(rep.regime, Regime::Exhaustive);
        assert_eq!(rep.r, "5/2");
        assert_eq!(rep.max_dup, 2);
        assert!(!rep.exceeds_r);
        assert!(rep.pattern_meets_hypothesis && rep.pattern_attains_floor_r);
        assert!(hypothesis_holds(&rep.max_family, 3, 1));
        // k identical sets break the union condition
        let same = SetFamily::new(vec![vec![0u32, 1, 2]; 5]);
        assert!(!hypothesis_holds(&same, 3, 1));
    }

    #[test]
    fn sampling_regime_is_labelled() {
        let rep = dup_rate_probe(2, 4, 1, 3, 5, 7).unwrap();
        assert_eq!(rep.regime, Regime::Sampled);
        assert!(!rep.exceeds_r);
    }

    #[test]
    fn json_round_trip() {
        let f = SetFamily::new([vec![3, 1], vec![2]]);
        assert_eq!(f.to_json(), "[[1,3],[2]]");
        assert_eq!(SetFamily::from_json("[[1,3],[2]]").unwrap(), f);
    }
}
