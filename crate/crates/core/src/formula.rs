//! Closed-form values of `g_k = R(C_m, B_n^(k))` for long even cycles.
//!
//! Every evaluation starts from a validated [`ParamContext`]. The recursive
//! branch (`CASE_III`) walks down to `k - 1` until it reaches `k = 2` or a
//! `CASE_II` level and records each level it passes through.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Leading constant of the minimum cycle length under which the upper-bound
/// argument is proved: `m >= 1.728e10 * (t + k)^9`.
pub const M_THRESHOLD_COEFF: u128 = 17_280_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisFlag {
    pub code: &'static str,
    pub detail: String,
}

/// Validated `(t, k, n, m)` with the derived `p`, `q` and (when defined) `sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamContext {
    pub t: i64,
    pub k: i64,
    pub n: i64,
    pub m: i64,
    /// `floor((n - 1) / t)`
    pub p: i64,
    /// `n - 1 - t p`
    pub q: i64,
    /// `m - p`, defined once `p >= m - k`.
    pub sigma: Option<i64>,
    #[serde(skip)]
    pub flags: Vec<HypothesisFlag>,
}

/// Which clause of the `k >= 2` trichotomy a context falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    CaseI,
    CaseII { sigma: i64 },
    CaseIII { sigma: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    K1,
    /// `m >= 2n >= 4`, where `g_1 = m` by the pancyclicity argument.
    K1LargeM,
    K2Generic,
    CaseI,
    CaseII { sigma: i64 },
    CaseIII { sigma: i64, ell: i64 },
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::K1 => "K1",
            CaseTag::K1LargeM => "K1_LARGE_M",
            CaseTag::K2Generic => "K2_GENERIC",
            CaseTag::CaseI => "CASE_I",
            CaseTag::CaseII { .. } => "CASE_II",
            CaseTag::CaseIII { .. } => "CASE_III",
        }
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "r_k<=r")]
    AtMost,
    #[serde(rename = "r_k>r")]
    Above,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::AtMost => "r_k<=r",
            Branch::Above => "r_k>r",
        }
    }
}

fn ratio_as_string<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One recursion level of the `CASE_III` evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceLevel {
    pub k: i64,
    pub ell: i64,
    pub mu: i64,
    pub alpha: i64,
    pub r_k: i64,
    #[serde(serialize_with = "ratio_as_string")]
    pub r: Ratio<i64>,
    pub branch: Branch,
    pub g: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub g: i64,
    pub case: CaseTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<i64>,
    pub trace: Vec<TraceLevel>,
    pub flags: Vec<HypothesisFlag>,
    pub params: Params,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub t: i64,
    pub k: i64,
    pub n: i64,
    pub m: i64,
}

impl Prediction {
    fn new(ctx: &ParamContext, g: i64, case: CaseTag, trace: Vec<TraceLevel>) -> Self {
        let (sigma, ell) = match case {
            CaseTag::CaseII { sigma } => (Some(sigma), None),
            CaseTag::CaseIII { sigma, ell } => (Some(sigma), Some(ell)),
            _ => (None, None),
        };
        Prediction {
            g,
            case,
            sigma,
            ell,
            trace,
            flags: ctx.flags.clone(),
            params: Params {
                t: ctx.t,
                k: ctx.k,
                n: ctx.n,
                m: ctx.m,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("prediction serializes")
    }
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

/// `1.728e10 (t + k)^9`, saturating.
pub fn m_threshold(t: i64, k: i64) -> u128 {
    let base = (t + k).max(0) as u128;
    base.checked_pow(9)
        .and_then(|v| v.checked_mul(M_THRESHOLD_COEFF))
        .unwrap_or(u128::MAX)
}

/// Checks the standing hypothesis `(t-1)(m-1) <= n-1 < t(m-1)` and parity.
pub fn validate(t: i64, k: i64, n: i64, m: i64) -> Result<ParamContext> {
    if t < 2 || k < 1 || n < 2 || m < 4 {
        return Err(Error::OutOfRange(format!(
            "need t >= 2, k >= 1, n >= 2, m >= 4; got t={t}, k={k}, n={n}, m={m}"
        )));
    }
    if m % 2 != 0 {
        return Err(Error::OddCycleLength(m));
    }
    let lo = (t - 1) * (m - 1);
    let hi = t * (m - 1);
    if !(lo <= n - 1 && n - 1 < hi) {
        return Err(Error::OutOfRange(format!(
            "need (t-1)(m-1) <= n-1 < t(m-1), i.e. {lo} <= {} < {hi}",
            n - 1
        )));
    }
    let p = (n - 1) / t;
    let q = n - 1 - t * p;
    let sigma = (p >= m - k).then_some(m - p);
    let mut flags = Vec::new();
    let threshold = m_threshold(t, k);
    if (m as u128) < threshold {
        flags.push(HypothesisFlag {
            code: "M_BELOW_THRESHOLD",
            detail: format!("m = {m} < 1.728e10*(t+k)^9 = {threshold}"),
        });
    }
    Ok(ParamContext {
        t,
        k,
        n,
        m,
        p,
        q,
        sigma,
        flags,
    })
}

impl ParamContext {
    /// Same `(t, n, m)` at a different `k`.
    pub fn with_k(&self, k: i64) -> Result<ParamContext> {
        validate(self.t, k, self.n, self.m)
    }

    /// Position in the `k >= 2` trichotomy (`k = 1` is always `CaseI`).
    pub fn partition(&self) -> Partition {
        let (p, m, k) = (self.p, self.m, self.k);
        if p < m - k {
            return Partition::CaseI;
        }
        let sigma = m - p;
        if sigma >= ceil_half(k) + 1 {
            Partition::CaseII { sigma }
        } else {
            Partition::CaseIII { sigma }
        }
    }

    /// `CASE_I` / `CASE_II` closed forms; `None` in `CASE_III`.
    pub fn unified_value(&self) -> Option<i64> {
        let (t, k, n, m, p) = (self.t, self.k, self.n, self.m, self.p);
        match self.partition() {
            Partition::CaseI => Some(((t + k - 1) * (m - 1) + 1).max(n + k * p + k)),
            Partition::CaseII { sigma } => Some(n + k * p + sigma - 1),
            Partition::CaseIII { .. } => None,
        }
    }
}

/// `g_1 = m` whenever `m >= 2n >= 4` and `m` is even.
pub fn g1_large_m(n: i64, m: i64) -> Result<i64> {
    if m % 2 != 0 {
        return Err(Error::OddCycleLength(m));
    }
    if n < 2 || m < 2 * n {
        return Err(Error::OutOfRange(format!("need m >= 2n >= 4; got n={n}, m={m}")));
    }
    Ok(m)
}

fn require_k(ctx: &ParamContext, k: i64) -> Result<()> {
    if ctx.k != k {
        return Err(Error::OutOfRange(format!("expected k = {k}, got k = {}", ctx.k)));
    }
    Ok(())
}

pub fn g1(ctx: &ParamContext) -> Result<Prediction> {
    require_k(ctx, 1)?;
    let (t, n, m, p) = (ctx.t, ctx.n, ctx.m, ctx.p);
    let g = (t * (m - 1) + 1).max(n + p + 1);
    Ok(Prediction::new(ctx, g, CaseTag::K1, Vec::new()))
}

pub fn g2(ctx: &ParamContext) -> Result<Prediction> {
    require_k(ctx, 2)?;
    let (t, n, m, p) = (ctx.t, ctx.n, ctx.m, ctx.p);
    let g = if p + 1 < m - 1 {
        ((t + 1) * (m - 1) + 1).max(n + 2 * p + 2)
    } else {
        // p + 1 = m - 1 is the only other possibility under the standing hypothesis
        n + 2 * p + 1
    };
    Ok(Prediction::new(ctx, g, CaseTag::K2Generic, Vec::new()))
}

/// Decision `r_k <= r` with `r = (mu-1)/mu (t+k-alpha) + alpha mu`, multiplied
/// through by `mu` so it is an integer comparison.
pub fn rk_at_most_r(r_k: i64, mu: i64, alpha: i64, t: i64, k: i64) -> bool {
    mu * r_k <= (mu - 1) * (t + k - alpha) + alpha * mu * mu
}

pub fn r_bound(mu: i64, alpha: i64, t: i64, k: i64) -> Ratio<i64> {
    Ratio::new(mu - 1, mu) * Ratio::from_integer(t + k - alpha) + Ratio::from_integer(alpha * mu)
}

/// Evaluates `g_k` for any `k >= 1`, recursing through `CASE_III` levels.
pub fn gk(ctx: &ParamContext) -> Result<Prediction> {
    match ctx.k {
        1 => return g1(ctx),
        2 => return g2(ctx),
        _ => {}
    }
    let (t, k, n, p) = (ctx.t, ctx.k, ctx.n, ctx.p);
    match ctx.partition() {
        Partition::CaseI => {
            let g = ctx.unified_value().expect("case I has a closed form");
            Ok(Prediction::new(ctx, g, CaseTag::CaseI, Vec::new()))
        }
        Partition::CaseII { sigma } => {
            Ok(Prediction::new(ctx, n + k * p + sigma - 1, CaseTag::CaseII { sigma }, Vec::new()))
        }
        Partition::CaseIII { sigma } => {
            let below = gk(&ctx.with_k(k - 1)?)?;
            let ell = below.g - n - (k - 1) * p;
            let (lo, hi) = (sigma - 1, ceil_half(k - 1));
            if ell < lo || ell > hi {
                return Err(Error::EllOutOfRange { k, ell, lo, hi });
            }
            let mu = (k - 1) / ell;
            let alpha = (k - 1) % ell;
            let r_k = t * p + t + k - ell - n;
            let r = r_bound(mu, alpha, t, k);
            let (branch, g) = if rk_at_most_r(r_k, mu, alpha, t, k) {
                (Branch::AtMost, n + k * p + ell + 1)
            } else {
                (Branch::Above, n + k * p + ell)
            };
            let mut trace = below.trace;
            trace.push(TraceLevel {
                k,
                ell,
                mu,
                alpha,
                r_k,
                r,
                branch,
                g,
            });
            Ok(Prediction::new(ctx, g, CaseTag::CaseIII { sigma, ell }, trace))
        }
    }
}

/// Front door used by the CLI: validates, then evaluates, falling back to the
/// `m >= 2n` fact for `k = 1` outside the standing hypothesis.
pub fn predict(t: i64, k: i64, n: i64, m: i64) -> Result<Prediction> {
    match validate(t, k, n, m) {
        Ok(ctx) => gk(&ctx),
        Err(Error::OutOfRange(msg)) if k == 1 => {
            if m % 2 == 0 && n >= 2 && m >= 2 * n {
                let g = g1_large_m(n, m)?;
                let ctx = ParamContext {
                    t,
                    k,
                    n,
                    m,
                    p: 0,
                    q: 0,
                    sigma: None,
                    flags: Vec::new(),
                };
                Ok(Prediction::new(&ctx, g, CaseTag::K1LargeM, Vec::new()))
            } else {
                Err(Error::Unsupported(format!(
                    "k = 1 outside both covered ranges ({msg}; and m < 2n)"
                )))
            }
        }
        Err(e) => Err(e),
    }
}

/// `R(C_n, B_n^(k)) = (k+1)(n-1)+1` for even `n` large enough for `CASE_I`.
pub fn diagonal_value(k: i64, n: i64) -> Result<i64> {
    let ctx = validate(2, k, n, n)?;
    if ctx.partition() != Partition::CaseI {
        return Err(Error::OutOfRange(format!("n = {n} too small for k = {k}")));
    }
    let closed = (k + 1) * (n - 1) + 1;
    let g = gk(&ctx)?.g;
    if g != closed {
        return Err(Error::OutOfRange(format!(
            "n = {n} below the diagonal threshold for k = {k}: g = {g}, closed form {closed}"
        )));
    }
    Ok(closed)
}
