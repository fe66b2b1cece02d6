//! Candidate enumeration, analysis and ranking.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use kummer_core::constructions::{
    self, annihilator, enumerate_splittings, prop13_prediction, LinPoly, SplittingSpec, Subspace,
};
use kummer_core::{arith, CurveReport, Error, Fe, Field, KummerCurve, Poly, RatFun, Ratio, Result};

use crate::refdata::{self, RefBound};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Splittings of `x^q - x`.
    Full,
    /// Splittings of the trace-zero annihilator.
    TraceZero,
    /// Splittings of the annihilator of the span of the given elements.
    Subspace(Vec<Fe>),
    /// `y^(q-1) = x f(x)^p` for monic `f` of degree at most `max_deg`.
    Xfp { max_deg: usize },
    /// Full and trace-zero splitting curves together with all their quotients.
    QuotientClosure,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Full => "full",
            Strategy::TraceZero => "trace-zero",
            Strategy::Subspace(_) => "subspace",
            Strategy::Xfp { .. } => "xfp",
            Strategy::QuotientClosure => "quotient-closure",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankKey {
    Ratio,
    Points,
    VsReference,
}

impl std::str::FromStr for RankKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<RankKey> {
        match s {
            "ratio" => Ok(RankKey::Ratio),
            "points" => Ok(RankKey::Points),
            "vs-reference" => Ok(RankKey::VsReference),
            _ => Err(Error::Parse(format!("unknown ranking key {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub field: Arc<Field>,
    pub strategy: Strategy,
    pub rank: RankKey,
    pub qualify: bool,
    pub workers: usize,
}

/// One candidate cover before analysis.
#[derive(Clone, Debug)]
struct Candidate {
    n: u64,
    f: RatFun,
    family: String,
    spec: Option<SplittingSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub rank: usize,
    /// Position in the strategy's enumeration order.
    pub index: usize,
    #[serde(flatten)]
    pub report: CurveReport,
    pub reference: Option<RefBound>,
    pub qualifies: Option<bool>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub candidates: usize,
    pub records: Vec<SearchRecord>,
    pub skipped: BTreeMap<String, usize>,
}

fn bump(map: &mut BTreeMap<String, usize>, key: impl Into<String>, by: usize) {
    if by > 0 {
        *map.entry(key.into()).or_default() += by;
    }
}

fn splitting_candidates(
    r: &LinPoly,
    tag: &str,
    field: &Field,
    skipped: &mut BTreeMap<String, usize>,
) -> Result<Vec<Candidate>> {
    let en = enumerate_splittings(r, field);
    for (reason, count) in &en.skipped {
        bump(skipped, format!("split: {reason}"), *count);
    }
    en.specs
        .into_iter()
        .map(|spec| {
            Ok(Candidate {
                n: field.q() as u64 - 1,
                f: spec.function(field)?,
                family: format!("{tag} s={} t={} delta={}", spec.s, spec.t, spec.delta),
                spec: Some(spec),
            })
        })
        .collect()
}

fn monic_polys(field: &Field, max_deg: usize) -> Vec<Poly> {
    let q = field.q() as u64;
    let mut out = Vec::new();
    for d in 0..=max_deg {
        let total = q.pow(d as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                coeffs.push(field.element(rest % q).expect("in range"));
                rest /= q;
            }
            coeffs.push(Fe::ONE);
            out.push(Poly::from_coeffs(coeffs));
        }
    }
    out
}

fn candidates(
    config: &SearchConfig,
    skipped: &mut BTreeMap<String, usize>,
) -> Result<Vec<Candidate>> {
    let field = &config.field;
    match &config.strategy {
        Strategy::Full => splitting_candidates(&LinPoly::full_space(field), "full", field, skipped),
        Strategy::TraceZero => {
            splitting_candidates(&LinPoly::trace(field), "trace-zero", field, skipped)
        }
        Strategy::Subspace(basis) => {
            let space = Subspace::new(basis.clone(), field)?;
            let r = annihilator(&space, field)?;
            splitting_candidates(&r, "subspace", field, skipped)
        }
        Strategy::Xfp { max_deg } => {
            let p = field.p() as u64;
            monic_polys(field, *max_deg)
                .into_iter()
                .map(|f| {
                    let num = Poly::x().mul(&f.pow(p, field), field);
                    Ok(Candidate {
                        n: field.q() as u64 - 1,
                        f: RatFun::polynomial(num)?,
                        family: format!("xfp f={}", f.to_power_form()),
                        spec: None,
                    })
                })
                .collect()
        }
        Strategy::QuotientClosure => {
            let mut base =
                splitting_candidates(&LinPoly::full_space(field), "full", field, skipped)?;
            base.extend(splitting_candidates(
                &LinPoly::trace(field),
                "trace-zero",
                field,
                skipped,
            )?);
            let q_minus_1 = field.q() as u64 - 1;
            let p_minus_1 = field.p() as u64 - 1;
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for b in base {
                let curve = match KummerCurve::new(field.clone(), b.n, b.f.clone()) {
                    Ok(c) => c,
                    Err(e) => {
                        bump(skipped, e.name(), 1);
                        continue;
                    }
                };
                for s in arith::divisors(q_minus_1).into_iter().filter(|&s| s >= 2) {
                    for t in arith::divisors(p_minus_1) {
                        match constructions::quotient(&curve, s, t) {
                            Ok(fc) => {
                                let key = (s, fc.curve.f().clone());
                                if !seen.insert(key) {
                                    bump(skipped, "duplicate", 1);
                                    continue;
                                }
                                let spec =
                                    (s == q_minus_1 && t == 1).then(|| b.spec.clone()).flatten();
                                out.push(Candidate {
                                    n: s,
                                    f: fc.curve.f().clone(),
                                    family: format!("{} quotient s={s} t={t}", b.family),
                                    spec,
                                });
                            }
                            Err(e) => bump(skipped, e.name(), 1),
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

enum Analyzed {
    Ok(Box<CurveReport>),
    Skipped(&'static str),
}

fn analyze(field: &Arc<Field>, cand: &Candidate) -> Result<Analyzed> {
    let curve = match KummerCurve::new(field.clone(), cand.n, cand.f.clone()) {
        Ok(c) => c,
        Err(e) if !e.is_internal() => return Ok(Analyzed::Skipped(e.name())),
        Err(e) => return Err(e),
    };
    let report = match curve.report(None, Some(cand.family.clone())) {
        Ok(r) => r,
        Err(e) if !e.is_internal() => return Ok(Analyzed::Skipped(e.name())),
        Err(e) => return Err(e),
    };
    if let Some(spec) = &cand.spec {
        let pred = prop13_prediction(spec, field);
        if pred.genus != report.genus as i64 || report.points < pred.point_lower_bound {
            return Err(Error::Internal(format!(
                "splitting closed form disagrees with engine for {}: predicted genus {} and at least {} points, got genus {} and {} points",
                cand.family, pred.genus, pred.point_lower_bound, report.genus, report.points
            )));
        }
    }
    Ok(Analyzed::Ok(Box::new(report)))
}

fn by_ratio(a: &CurveReport, b: &CurveReport) -> Ordering {
    // genus 0 (undefined ratio) ranks last
    match (a.ratio, b.ratio) {
        (Some(x), Some(y)) => y.cmp(&x),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
    .then(b.points.cmp(&a.points))
}

fn compare(key: RankKey, a: &SearchRecord, b: &SearchRecord) -> Ordering {
    let primary = match key {
        RankKey::Ratio => by_ratio(&a.report, &b.report),
        RankKey::Points => b
            .report
            .points
            .cmp(&a.report.points)
            .then(a.report.genus.cmp(&b.report.genus)),
        RankKey::VsReference => match (&a.reference, &b.reference) {
            (Some(ra), Some(rb)) => {
                let da = a.report.points as i64 - ra.lower as i64;
                let db = b.report.points as i64 - rb.lower as i64;
                db.cmp(&da).then(by_ratio(&a.report, &b.report))
            }
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => by_ratio(&a.report, &b.report),
        },
    };
    primary.then(a.index.cmp(&b.index))
}

/// Runs a search. Errors are either invalid configurations or internal
/// inconsistencies; per-candidate rejections only bump skip counters.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    let mut out = SearchOutcome::default();
    let cands = candidates(config, &mut out.skipped)?;
    out.candidates = cands.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let field = &config.field;
    let analyzed: Vec<Result<Analyzed>> =
        pool.install(|| cands.par_iter().map(|c| analyze(field, c)).collect());
    let q = field.q() as u64;
    for (index, a) in analyzed.into_iter().enumerate() {
        match a? {
            Analyzed::Skipped(reason) => bump(&mut out.skipped, reason, 1),
            Analyzed::Ok(report) => {
                let reference = refdata::reference_lookup(q, report.genus).copied();
                let qualifies =
                    reference.map(|r| report.points >= refdata::qualification_threshold(r.upper));
                if config.qualify && qualifies != Some(true) {
                    bump(&mut out.skipped, "not qualifying", 1);
                    continue;
                }
                out.records.push(SearchRecord {
                    rank: 0,
                    index,
                    report: *report,
                    reference,
                    qualifies,
                });
            }
        }
    }
    out.records.sort_by(|a, b| compare(config.rank, a, b));
    for (i, r) in out.records.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    Ok(out)
}

impl SearchOutcome {
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&serde_json::to_string(r).expect("records serialize"));
            s.push('\n');
        }
        s
    }

    pub fn table(&self, top: usize) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{:>4}  {:>6}  {:>7}  {:>7}  {:>10}  {:>15}  family",
            "rank", "genus", "points", "weil", "N/g", "reference"
        )
        .unwrap();
        for r in self.records.iter().take(top) {
            let ratio = r
                .report
                .ratio
                .map(|x: Ratio| format!("{:.3}", x.as_f64()))
                .unwrap_or_else(|| "-".into());
            let reference = r
                .reference
                .map(|b| format!("[{}-{}]", b.lower, b.upper))
                .unwrap_or_else(|| "-".into());
            writeln!(
                s,
                "{:>4}  {:>6}  {:>7}  {:>7}  {:>10}  {:>15}  {}",
                r.rank,
                r.report.genus,
                r.report.points,
                r.report.hasse_weil,
                ratio,
                reference,
                r.report.family.as_deref().unwrap_or("")
            )
            .unwrap();
        }
        writeln!(
            s,
            "{} candidates, {} analyzed",
            self.candidates,
            self.records.len()
        )
        .unwrap();
        for (reason, count) in &self.skipped {
            writeln!(s, "skipped {count}: {reason}").unwrap();
        }
        s
    }
}
