use cyclebook::formula::{self, Prediction};
use cyclebook::Result;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Row {
    pub t: i64,
    pub n: i64,
    pub p: i64,
    pub q: i64,
    pub case: String,
    pub sigma: String,
    pub ell: String,
    pub r_k: String,
    pub r: String,
    pub branch: String,
    pub g: i64,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn row(t: i64, n: i64, pred: &Prediction) -> Row {
    let last = pred.trace.last();
    Row {
        t,
        n,
        p: (n - 1) / t,
        q: (n - 1) % t,
        case: pred.case.name().to_string(),
        sigma: opt(pred.sigma),
        ell: opt(pred.ell),
        r_k: opt(last.map(|l| l.r_k)),
        r: opt(last.map(|l| l.r)),
        branch: opt(last.map(|l| l.branch.as_str())),
        g: pred.g,
    }
}

/// One row per valid `(t, n)`, ordered by `t` then `n`.
pub fn rows(k: i64, m: i64, ts: std::ops::RangeInclusive<i64>) -> Result<Vec<Row>> {
    let mut out = Vec::new();
    for t in ts {
        for n in (t - 1) * (m - 1) + 1..=t * (m - 1) {
            let ctx = formula::validate(t, k, n, m)?;
            out.push(row(t, n, &formula::gk(&ctx)?));
        }
    }
    Ok(out)
}

pub fn markdown(rows: &[Row]) -> String {
    let mut s = String::from("| t | n | p | q | case | sigma | ell | r_k | r | branch | g |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.t, r.n, r.p, r.q, r.case, r.sigma, r.ell, r.r_k, r.r, r.branch, r.g
        ));
    }
    s
}

pub fn csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}
