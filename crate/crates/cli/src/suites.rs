//! Verification suites run over cartesian parameter ranges.

use std::collections::BTreeMap;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use vr_lattice::complex::{classify_maximal_r2, MaximalKind};
use vr_lattice::homology::{betti_from_table, BettiDocument};
use vr_lattice::lattice::distance::{sample, StepCount};
use vr_lattice::morse::build_matching_mu;
use vr_lattice::reduce::{
    explore_conjecture, prove_grid_contractible, reduction_schedule, verify_stage_reduction,
};
use vr_lattice::{grid_complex, Caps, GammaSpec, GridSpec};

use crate::range::ParamRange;
use crate::CliError;

/// Applicable samples drawn per inequality in the distance suite.
pub const DISTANCE_SAMPLES: usize = 10_000;
const DISTANCE_MAX_ATTEMPTS: usize = 5_000_000;

#[derive(
    Clone,
    Copy,
    Debug,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DistanceLemmas,
    MaximalClass,
    Dismantle,
    Stages,
    Morse,
    Homology,
    Conjecture,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::DistanceLemmas => "distance-lemmas",
            Suite::MaximalClass => "maximal-class",
            Suite::Dismantle => "dismantle",
            Suite::Stages => "stages",
            Suite::Morse => "morse",
            Suite::Homology => "homology",
            Suite::Conjecture => "conjecture",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub n: ParamRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ParamRange>,
    pub r: ParamRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ParamRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dmax: Option<usize>,
    #[serde(default)]
    pub witnesses: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub r: u32,
    pub passed: bool,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_digest: Option<String>,
    pub detail: Value,
}

fn scale(r: usize) -> Result<u32, CliError> {
    u32::try_from(r).map_err(|_| CliError::Usage(format!("scale {r} is too large")))
}

/// Parameter triples in sorted order; the report keeps this order.
fn grid_cases(p: &SuiteParams) -> Result<Vec<GridSpec>, CliError> {
    let m =
        p.m.ok_or_else(|| CliError::Usage("this suite needs --m".into()))?;
    let mut out = Vec::new();
    for n in p.n.values() {
        for m in m.values() {
            for r in p.r.values() {
                out.push(GridSpec::new(n, m, scale(r)?)?);
            }
        }
    }
    Ok(out)
}

fn case(
    g: &GridSpec,
    passed: bool,
    summary: String,
    digest: Option<String>,
    detail: Value,
) -> CaseReport {
    CaseReport {
        n: g.n,
        m: Some(g.m),
        r: g.r,
        passed,
        summary,
        complex_digest: digest,
        detail,
    }
}

/// Runs `suite` and returns the cases with their wall-clock times in
/// milliseconds. Cases run in parallel; the output order is the parameter
/// order regardless of completion order.
pub fn run_suite(
    suite: Suite,
    p: &SuiteParams,
    caps: &Caps,
) -> Result<(Vec<CaseReport>, Vec<u64>), CliError> {
    let timed =
        |f: &dyn Fn() -> Result<CaseReport, CliError>| -> Result<(CaseReport, u64), CliError> {
            let t = Instant::now();
            let c = f()?;
            Ok((c, t.elapsed().as_millis() as u64))
        };
    let results: Vec<(CaseReport, u64)> = match suite {
        Suite::DistanceLemmas => {
            let (max_n, max_r) = (p.n.hi, scale(p.r.hi)?);
            if !(1..=6).contains(&max_n) || !(2..=10).contains(&max_r) {
                return Err(CliError::Usage(
                    "distance-lemmas needs n in 1..6 and r in 2..10".into(),
                ));
            }
            StepCount::ALL
                .par_iter()
                .enumerate()
                .map(|(i, &kind)| timed(&|| Ok(distance_case(kind, i as u64, max_n, max_r))))
                .collect::<Result<_, _>>()?
        }
        _ => {
            if suite == Suite::MaximalClass && (p.r.lo, p.r.hi) != (2, 2) {
                return Err(CliError::Usage(
                    "maximal-class applies at scale 2 only".into(),
                ));
            }
            grid_cases(p)?
                .par_iter()
                .map(|g| {
                    timed(&|| match suite {
                        Suite::MaximalClass => maximal_case(g, caps),
                        Suite::Dismantle => dismantle_case(g, caps),
                        Suite::Stages => stages_case(g, p.alpha, caps),
                        Suite::Morse => morse_case(g, p, caps),
                        Suite::Homology => homology_case(g, p.dmax, caps),
                        Suite::Conjecture => conjecture_case(g, p.alpha, caps),
                        Suite::DistanceLemmas => unreachable!("handled above"),
                    })
                })
                .collect::<Result<_, _>>()?
        }
    };
    Ok(results.into_iter().unzip())
}

fn distance_case(kind: StepCount, seed: u64, max_n: usize, max_r: u32) -> CaseReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = sample(
        kind,
        max_n,
        max_r,
        DISTANCE_SAMPLES,
        DISTANCE_MAX_ATTEMPTS,
        &mut rng,
    );
    CaseReport {
        n: max_n,
        m: None,
        r: max_r,
        passed: rep.passed(DISTANCE_SAMPLES),
        summary: format!(
            "{kind:?}: {} applicable of {} drawn, {} violations",
            rep.applicable, rep.attempts, rep.violations
        ),
        complex_digest: None,
        detail: json!({
            "inequality": format!("{kind:?}"),
            "attempts": rep.attempts,
            "applicable": rep.applicable,
            "violations": rep.violations,
            "first_violation": rep.first_violation.map(|v| json!({
                "x": v.x, "z": v.z, "axes": v.axes, "r": v.r,
            })),
        }),
    }
}

fn alphas(g: &GridSpec, range: Option<ParamRange>) -> Result<Vec<usize>, CliError> {
    let card = g.card().unwrap_or(usize::MAX);
    match range {
        // The last vertex has an empty link, so the default stops before it.
        None => Ok((1..card.saturating_sub(1)).collect()),
        Some(a) => {
            if a.lo == 0 || a.hi >= card {
                return Err(CliError::Usage(format!(
                    "alpha must lie in 1..{} for {g:?}",
                    card - 1
                )));
            }
            Ok(a.values().collect())
        }
    }
}

fn maximal_case(g: &GridSpec, caps: &Caps) -> Result<CaseReport, CliError> {
    let k = grid_complex(g, caps)?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut unclassified = Vec::new();
    for tau in k.maximal_simplices(caps)? {
        let class = classify_maximal_r2(&k, &tau)?;
        if class.kind == MaximalKind::Unclassified {
            unclassified.push(k.simplex_points(&tau));
        }
        *counts.entry(format!("{:?}", class.kind)).or_default() += 1;
    }
    let total: usize = counts.values().sum();
    Ok(case(
        g,
        unclassified.is_empty(),
        format!(
            "{total} maximal simplices, {} unclassified",
            unclassified.len()
        ),
        Some(k.digest()),
        json!({ "counts": counts, "unclassified": unclassified }),
    ))
}

fn dismantle_case(g: &GridSpec, caps: &Caps) -> Result<CaseReport, CliError> {
    let proof = prove_grid_contractible(g, caps)?;
    let max_residual = proof
        .links
        .iter()
        .map(|l| l.run.certificate.residual.len())
        .max()
        .unwrap_or(0);
    let steps: usize = proof
        .links
        .iter()
        .map(|l| l.run.certificate.steps.len())
        .sum();
    let apexes = proof.links.iter().filter(|l| l.run.apex.is_some()).count();
    let fallback: usize = proof.links.iter().map(|l| l.run.fallback_steps).sum();
    let digest = grid_complex(g, caps)?.digest();
    Ok(case(
        g,
        proof.succeeded(),
        format!(
            "{} links certified, {} failed, link residual max {}, direct residual {}",
            proof.links.len() - proof.failures.len(),
            proof.failures.len(),
            max_residual,
            proof.direct.residual.len()
        ),
        Some(digest),
        json!({
            "links": proof.links.len(),
            "failures": proof.failures,
            "link_steps": steps,
            "link_max_residual": max_residual,
            "cone_apexes": apexes,
            "fallback_steps": fallback,
            "direct_steps": proof.direct.steps.len(),
            "direct_residual": proof.direct.residual,
            "direct_verified": proof.direct_verified,
        }),
    ))
}

fn stages_case(
    g: &GridSpec,
    alpha: Option<ParamRange>,
    caps: &Caps,
) -> Result<CaseReport, CliError> {
    let schedule = reduction_schedule(g.n, g.r)?;
    let alphas = alphas(g, alpha)?;
    let jobs: Vec<(usize, usize)> = alphas
        .iter()
        .flat_map(|&a| (0..schedule.len()).map(move |s| (a, s)))
        .collect();
    let outcomes: Vec<(usize, usize, bool, Option<String>)> = jobs
        .par_iter()
        .map(|&(a, s)| {
            let v = verify_stage_reduction(&GammaSpec::new(*g, a)?, &schedule[s], caps)?;
            Ok((a, s, v.passed, v.stuck.map(|p| p.to_string())))
        })
        .collect::<Result<_, CliError>>()?;
    let failures: Vec<Value> = outcomes
        .iter()
        .filter(|o| !o.2)
        .map(|(a, s, _, stuck)| json!({ "alpha": a, "stage": schedule[*s].kind, "stuck": stuck }))
        .collect();
    Ok(case(
        g,
        failures.is_empty(),
        format!(
            "{} stages x {} links, {} failed",
            schedule.len(),
            alphas.len(),
            failures.len()
        ),
        None,
        json!({
            "schedule": schedule.iter().map(|s| json!({ "kind": s.kind, "target": s.description() })).collect::<Vec<_>>(),
            "verifications": outcomes.len(),
            "failures": failures,
        }),
    ))
}

/// Lower bound on dimension-3 critical cells of the scale-2 box complex in
/// three dimensions.
pub fn critical_lower_bound(n: usize, m: usize, r: u32) -> Option<usize> {
    (n == 3 && r == 2).then(|| m.saturating_sub(2).pow(3))
}

fn morse_case(g: &GridSpec, p: &SuiteParams, caps: &Caps) -> Result<CaseReport, CliError> {
    let k = grid_complex(g, caps)?;
    let dmax = p.dmax.map_or(k.len() as isize - 1, |d| d as isize);
    let mu = build_matching_mu(&k, dmax, caps)?;
    let doc = mu.to_document(p.witnesses);
    let counts = &doc.counts;
    let only_three = counts.iter().enumerate().all(|(d, &c)| d == 3 || c == 0);
    let bound = critical_lower_bound(g.n, g.m, g.r);
    let bound_ok = bound.is_none_or(|b| counts.get(3).copied().unwrap_or(0) >= b);
    let shape_ok = g.r != 2 || g.n < 3 || only_three;
    Ok(case(
        g,
        doc.acyclic && !doc.empty_critical && shape_ok && bound_ok,
        format!(
            "critical cells by dimension {:?}, acyclic {}",
            counts, doc.acyclic
        ),
        Some(doc.complex_digest.clone()),
        serde_json::to_value(&doc)?,
    ))
}

fn homology_case(g: &GridSpec, dmax: Option<usize>, caps: &Caps) -> Result<CaseReport, CliError> {
    let k = grid_complex(g, caps)?;
    let mu = build_matching_mu(&k, k.len() as isize - 1, caps)?;
    let top = mu.table().max_size().saturating_sub(1);
    let dmax = dmax.unwrap_or(top).min(top);
    let betti = betti_from_table(mu.table(), top);
    let census = mu.critical_census(false);
    let reduced = betti.to_reduced();
    let bounded = (0..=top).all(|d| reduced.get(d) <= census.count(d));
    let single = census.counts.iter().filter(|&&c| c > 0).count() <= 1;
    let equal = !single || (0..=top).all(|d| reduced.get(d) == census.count(d));
    let euler = betti.euler_characteristic() == mu.euler_characteristic();
    let mut shown = betti.clone();
    shown.betti.truncate(dmax + 1);
    shown.simplex_counts.truncate(dmax + 2);
    let doc = BettiDocument::new(&k, dmax, &shown);
    Ok(case(
        g,
        bounded && equal && euler,
        format!("betti {:?}, critical {:?}", shown.betti, census.counts),
        Some(doc.complex_digest.clone()),
        json!({ "betti": doc, "critical": census.counts, "euler_ok": euler, "morse_bound_ok": bounded && equal }),
    ))
}

fn conjecture_case(
    g: &GridSpec,
    alpha: Option<ParamRange>,
    caps: &Caps,
) -> Result<CaseReport, CliError> {
    let alphas = alphas(g, alpha)?;
    let reports = alphas
        .par_iter()
        .map(|&a| Ok(explore_conjecture(&GammaSpec::new(*g, a)?, caps)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut verdicts: BTreeMap<String, usize> = BTreeMap::new();
    for r in &reports {
        let key = serde_json::to_value(r.verdict)?
            .as_str()
            .unwrap_or_default()
            .to_string();
        *verdicts.entry(key).or_default() += 1;
    }
    let per_alpha: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "alpha": r.spec.alpha, "verdict": r.verdict, "size": r.complex_size, "target": r.target_size, "core": r.core.len() }))
        .collect();
    // Exploration only: the case records evidence and never fails.
    Ok(case(
        g,
        true,
        format!("{} links explored: {:?}", reports.len(), verdicts),
        None,
        json!({ "verdicts": verdicts, "links": per_alpha }),
    ))
}
