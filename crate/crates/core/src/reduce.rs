//! Domination, dismantling certificates and staged reductions of link
//! complexes.
//!
//! A vertex `a` is dominated by `b` when `N[a] ⊆ N[b]`; removing it keeps
//! the homotopy type of a flag complex. A [`DismantleCertificate`] records a
//! sequence of such removals and can be replayed independently with
//! [`verify_certificate`].

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::complex::{build_complex, grid_complex, FlagComplex};
use crate::error::{Error, Result};
use crate::lattice::{lambda_op, least_vertex_link, GammaSpec, GridSpec, LatticePoint};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub removed: LatticePoint,
    pub dominator: LatticePoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Candidates in anti-lex descending order, dominators ascending.
    GreedyAntilexMaxFirst,
    /// Staged reductions with lambda-operator dominators first, then an apex
    /// cone, then greedy.
    StageGuided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DismantleCertificate {
    pub schema_version: u32,
    pub complex_digest: String,
    pub strategy: Strategy,
    pub steps: Vec<Step>,
    pub residual: Vec<LatticePoint>,
}

impl DismantleCertificate {
    /// A single residual vertex proves contractibility.
    pub fn is_contractible(&self) -> bool {
        self.residual.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CertificateCheck {
    Valid,
    Invalid { step: usize, reason: String },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

/// Mutable view of a complex as vertices are deleted.
struct Remaining<'a> {
    k: &'a FlagComplex,
    alive: FixedBitSet,
    steps: Vec<(usize, usize)>,
}

impl<'a> Remaining<'a> {
    fn new(k: &'a FlagComplex) -> Self {
        let mut alive = FixedBitSet::with_capacity(k.len());
        alive.insert_range(..);
        Remaining {
            k,
            alive,
            steps: Vec::new(),
        }
    }

    fn dominated(&self, a: usize, b: usize) -> bool {
        if a == b || !self.alive.contains(a) || !self.alive.contains(b) {
            return false;
        }
        let nb = self.k.neighbors(b);
        nb.contains(a)
            && self
                .k
                .neighbors(a)
                .ones()
                .all(|u| u == b || !self.alive.contains(u) || nb.contains(u))
    }

    fn remove(&mut self, a: usize, b: usize) {
        debug_assert!(self.dominated(a, b));
        self.alive.set(a, false);
        self.steps.push((a, b));
    }

    fn alive_count(&self) -> usize {
        self.alive.count_ones(..)
    }

    /// Alive vertices in anti-lex descending order.
    fn alive_desc(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.alive.ones().collect();
        v.reverse();
        v
    }

    /// First alive neighbour of `a`, in anti-lex ascending order, that
    /// dominates it.
    fn scan_dominator(&self, a: usize) -> Option<usize> {
        self.k.neighbors(a).ones().find(|&b| self.dominated(a, b))
    }

    fn alive_index(&self, p: &LatticePoint) -> Option<usize> {
        self.k.index_of(p).filter(|&i| self.alive.contains(i))
    }

    /// Removes dominated vertices until none is left.
    fn greedy(&mut self) {
        'outer: loop {
            for a in self.alive_desc() {
                if let Some(b) = self.scan_dominator(a) {
                    self.remove(a, b);
                    continue 'outer;
                }
            }
            break;
        }
    }

    fn residual(&self) -> Vec<LatticePoint> {
        self.alive
            .ones()
            .map(|i| self.k.vertex(i).clone())
            .collect()
    }

    fn steps_from(&self, start: usize) -> Vec<Step> {
        self.steps[start..]
            .iter()
            .map(|&(a, b)| Step {
                removed: self.k.vertex(a).clone(),
                dominator: self.k.vertex(b).clone(),
            })
            .collect()
    }

    fn certificate(&self, strategy: Strategy) -> DismantleCertificate {
        DismantleCertificate {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            complex_digest: self.k.digest(),
            strategy,
            steps: self.steps_from(0),
            residual: self.residual(),
        }
    }
}

/// True iff `N[a] ⊆ N[b]` in `k`.
pub fn is_dominated(k: &FlagComplex, a: &LatticePoint, b: &LatticePoint) -> Result<bool> {
    if a == b {
        return Err(Error::invalid("a vertex cannot dominate itself"));
    }
    let ia = k
        .index_of(a)
        .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
    let ib = k
        .index_of(b)
        .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
    Ok(Remaining::new(k).dominated(ia, ib))
}

/// Removes dominated vertices until none remains. A complex that gets stuck
/// yields a certificate with more than one residual vertex.
pub fn dismantle(k: &FlagComplex, strategy: Strategy) -> DismantleCertificate {
    match strategy {
        Strategy::GreedyAntilexMaxFirst => {
            let mut rem = Remaining::new(k);
            rem.greedy();
            rem.certificate(strategy)
        }
        Strategy::StageGuided => {
            let n = k.ambient_dim();
            let stages = gated_stages(n, k.scale());
            staged_run(k, &stages).certificate
        }
    }
}

/// Replays a certificate against a fresh copy of `k`.
pub fn verify_certificate(k: &FlagComplex, c: &DismantleCertificate) -> CertificateCheck {
    let invalid = |step: usize, reason: String| CertificateCheck::Invalid { step, reason };
    if c.complex_digest != k.digest() {
        return invalid(0, "certificate was issued for a different complex".into());
    }
    let mut rem = Remaining::new(k);
    for (s, st) in c.steps.iter().enumerate() {
        let (Some(a), Some(b)) = (rem.alive_index(&st.removed), rem.alive_index(&st.dominator))
        else {
            return invalid(
                s,
                format!("{} or {} is not present", st.removed, st.dominator),
            );
        };
        if !rem.dominated(a, b) {
            return invalid(
                s,
                format!("{} is not dominated by {}", st.removed, st.dominator),
            );
        }
        rem.remove(a, b);
    }
    let mut claimed = c.residual.clone();
    claimed.sort();
    if claimed != rem.residual() {
        return invalid(c.steps.len(), "residual does not match the replay".into());
    }
    CertificateCheck::Valid
}

/// Vertex conditions used to shrink a link complex stage by stage. Each
/// stage includes the conditions of the ones before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageKind {
    /// |x_i| <= floor(r/2)
    CoordBound,
    /// plus |x_j| + |x_k| <= ceil(r/2) for j != k
    PairBound,
    /// |x_i| < floor(r/2) plus the pair condition
    StrictCoordBound,
    /// plus every three-coordinate sum < r - 1
    TripleBound,
    /// plus every four-coordinate sum <= r - 1
    QuadrupleBound,
    /// plus no point supported on four axes with |x|_1 >= r - 1
    SparseQuadrupleBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionStage {
    pub kind: StageKind,
    pub r: u32,
}

/// Sum of the `k` largest absolute coordinates.
fn top_sum(x: &LatticePoint, k: usize) -> u32 {
    let mut a: Vec<u32> = x.coords().iter().map(|c| c.unsigned_abs()).collect();
    a.sort_unstable_by(|p, q| q.cmp(p));
    a.iter().take(k).sum()
}

impl ReductionStage {
    /// True iff `x` belongs to the stage's target vertex set.
    pub fn admits(&self, x: &LatticePoint) -> bool {
        let r = self.r;
        let floor = r / 2;
        let ceil = r.div_ceil(2);
        let n = x.dim();
        let coord = top_sum(x, 1);
        let pair_ok = n < 2 || top_sum(x, 2) <= ceil;
        let triple_ok = n < 3 || top_sum(x, 3) + 1 < r;
        let quad_ok = n < 4 || top_sum(x, 4) < r;
        match self.kind {
            StageKind::CoordBound => coord <= floor,
            StageKind::PairBound => coord <= floor && pair_ok,
            StageKind::StrictCoordBound => coord < floor && pair_ok,
            StageKind::TripleBound => coord < floor && pair_ok && triple_ok,
            StageKind::QuadrupleBound => coord < floor && pair_ok && triple_ok && quad_ok,
            StageKind::SparseQuadrupleBound => {
                let support = x.coords().iter().filter(|&&c| c != 0).count();
                let sparse_ok = !(support <= 4 && n >= 4 && x.l1_norm() + 1 >= r);
                coord < floor && pair_ok && triple_ok && quad_ok && sparse_ok
            }
        }
    }

    /// Larger values are removed first.
    fn severity(&self, x: &LatticePoint) -> u32 {
        match self.kind {
            StageKind::CoordBound | StageKind::StrictCoordBound => top_sum(x, 1),
            StageKind::PairBound => top_sum(x, 2),
            StageKind::TripleBound => top_sum(x, 3),
            StageKind::QuadrupleBound => top_sum(x, 4),
            StageKind::SparseQuadrupleBound => x.l1_norm(),
        }
    }

    /// Sizes of the axis sets pulled toward zero when proposing dominators.
    fn pull_sizes(&self) -> &'static [usize] {
        match self.kind {
            StageKind::CoordBound => &[1],
            StageKind::PairBound => &[2, 1],
            StageKind::StrictCoordBound => &[1, 2],
            StageKind::TripleBound => &[3],
            StageKind::QuadrupleBound => &[4],
            StageKind::SparseQuadrupleBound => &[4, 3],
        }
    }

    pub fn description(&self) -> String {
        let r = self.r;
        let (f, c) = (r / 2, r.div_ceil(2));
        match self.kind {
            StageKind::CoordBound => format!("|x_i| <= {f}"),
            StageKind::PairBound => format!("|x_i| <= {f}, |x_j|+|x_k| <= {c}"),
            StageKind::StrictCoordBound => format!("|x_i| < {f}, |x_j|+|x_k| <= {c}"),
            StageKind::TripleBound => {
                format!("previous, and triple sums < {}", r.saturating_sub(1))
            }
            StageKind::QuadrupleBound => {
                format!("previous, and quadruple sums <= {}", r.saturating_sub(1))
            }
            StageKind::SparseQuadrupleBound => format!(
                "previous, and no point on four axes with |x|_1 >= {}",
                r.saturating_sub(1)
            ),
        }
    }

    /// Dominator proposals for `x`: lambda-pulls of the largest coordinates
    /// first, then unit vectors on the highest axes.
    fn proposals(&self, x: &LatticePoint) -> Vec<LatticePoint> {
        let support: Vec<usize> = (1..=x.dim()).filter(|&i| x.get(i) != 0).collect();
        let mut out = Vec::new();
        for &k in self.pull_sizes() {
            let mut sets: Vec<Vec<usize>> = support.iter().copied().combinations(k).collect();
            sets.sort_by_key(|s| {
                std::cmp::Reverse(s.iter().map(|&i| x.get(i).unsigned_abs()).sum::<u32>())
            });
            for s in sets {
                out.push(lambda_op(x, &s).expect("axes come from the support"));
            }
        }
        if self.kind == StageKind::TripleBound {
            for t in (1..=x.dim()).rev() {
                out.push(LatticePoint::unit(x.dim(), t));
            }
        }
        out
    }
}

/// Stages whose hypotheses hold at `(n, r)`, without the `r >= n` gate.
fn gated_stages(n: usize, r: u32) -> Vec<ReductionStage> {
    let ru = r as usize;
    let mut kinds = Vec::new();
    if r >= 2 {
        kinds.push(StageKind::CoordBound);
    }
    if r >= 3 {
        kinds.push(StageKind::PairBound);
    }
    if r >= 4 {
        kinds.push(StageKind::StrictCoordBound);
    }
    if n >= 4 && ru >= n {
        kinds.push(StageKind::TripleBound);
        kinds.push(StageKind::QuadrupleBound);
    }
    if n >= 5 && ru >= n && r >= 10 {
        kinds.push(StageKind::SparseQuadrupleBound);
    }
    kinds
        .into_iter()
        .map(|kind| ReductionStage { kind, r })
        .collect()
}

/// The stages applicable at `(n, r)`, in order.
pub fn reduction_schedule(n: usize, r: u32) -> Result<Vec<ReductionStage>> {
    if n < 2 {
        return Err(Error::invalid("reduction schedules need n >= 2"));
    }
    if (r as usize) < n {
        return Err(Error::invalid(format!("scale r = {r} is below n = {n}")));
    }
    Ok(gated_stages(n, r))
}

/// What happened while applying one stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub stage: ReductionStage,
    /// Vertices alive when the stage started.
    pub start: Vec<LatticePoint>,
    pub steps: Vec<Step>,
    /// Removals whose dominator came from the proposal list.
    pub proposal_hits: usize,
    /// A violator no alive vertex dominates, if the stage got stuck.
    pub stuck: Option<LatticePoint>,
}

impl StageOutcome {
    pub fn passed(&self) -> bool {
        self.stuck.is_none()
    }
}

fn run_stage(rem: &mut Remaining<'_>, stage: &ReductionStage) -> StageOutcome {
    let start = rem.residual();
    let first = rem.steps.len();
    let mut hits = 0usize;
    let stuck = loop {
        let mut violators: Vec<usize> = rem
            .alive
            .ones()
            .filter(|&i| !stage.admits(rem.k.vertex(i)))
            .collect();
        if violators.is_empty() {
            break None;
        }
        violators.sort_by_key(|&i| std::cmp::Reverse((stage.severity(rem.k.vertex(i)), i)));
        let mut progressed = false;
        for &a in &violators {
            let x = rem.k.vertex(a);
            let proposed = stage
                .proposals(x)
                .iter()
                .filter_map(|p| rem.alive_index(p))
                .find(|&b| rem.dominated(a, b));
            if let Some(b) = proposed {
                hits += 1;
                rem.remove(a, b);
                progressed = true;
                break;
            }
            if let Some(b) = rem.scan_dominator(a) {
                rem.remove(a, b);
                progressed = true;
                break;
            }
        }
        if !progressed {
            break Some(rem.k.vertex(violators[0]).clone());
        }
    };
    StageOutcome {
        stage: *stage,
        start,
        steps: rem.steps_from(first),
        proposal_hits: hits,
        stuck,
    }
}

/// Tries to cone off the remaining complex from an apex near the origin.
/// Returns the apex used, if any.
fn cone_off(rem: &mut Remaining<'_>) -> Option<LatticePoint> {
    if rem.alive_count() <= 1 {
        return None;
    }
    let n = rem.k.ambient_dim();
    let top = rem
        .alive
        .ones()
        .filter_map(|i| (1..=n).rev().find(|&t| rem.k.vertex(i).get(t) != 0))
        .max()?;
    let mut proposals = Vec::new();
    if top >= 2 {
        let mut w = LatticePoint::unit(n, top).coords().to_vec();
        w[top - 2] = 1;
        proposals.push(LatticePoint::from(w));
    }
    proposals.push(LatticePoint::unit(n, top));
    let total = rem.alive_count();
    let is_apex = |i: usize| {
        rem.k.neighbors(i).intersection_count(&rem.alive) + 1 == total && rem.alive.contains(i)
    };
    let apex = proposals
        .iter()
        .filter_map(|p| rem.alive_index(p))
        .find(|&i| is_apex(i))
        .or_else(|| rem.alive.ones().find(|&i| is_apex(i)))?;
    for a in rem.alive_desc() {
        if a != apex {
            rem.remove(a, apex);
        }
    }
    Some(rem.k.vertex(apex).clone())
}

/// Full record of a stage-guided dismantling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagedRun {
    pub certificate: DismantleCertificate,
    pub stages: Vec<StageOutcome>,
    pub apex: Option<LatticePoint>,
    /// Removals made by the greedy fallback after the cone phase.
    pub fallback_steps: usize,
}

fn staged_run(k: &FlagComplex, stages: &[ReductionStage]) -> StagedRun {
    let mut rem = Remaining::new(k);
    let mut outcomes = Vec::new();
    for s in stages {
        let o = run_stage(&mut rem, s);
        let stuck = !o.passed();
        outcomes.push(o);
        if stuck {
            break;
        }
    }
    let apex = cone_off(&mut rem);
    let before = rem.steps.len();
    rem.greedy();
    StagedRun {
        certificate: rem.certificate(Strategy::StageGuided),
        stages: outcomes,
        apex,
        fallback_steps: rem.steps.len() - before,
    }
}

/// Evidence that one stage's violators can all be removed by domination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageVerification {
    pub spec: GammaSpec,
    pub stage: ReductionStage,
    pub passed: bool,
    /// Certificate fragment over the complex induced on the stage's starting
    /// vertex set; its residual is the stage's target set.
    pub evidence: DismantleCertificate,
    pub evidence_valid: bool,
    pub stuck: Option<LatticePoint>,
}

/// Replays the schedule up to `stage` on the link complex and checks that
/// every vertex violating `stage` is removed by a re-checkable domination.
pub fn verify_stage_reduction(
    spec: &GammaSpec,
    stage: &ReductionStage,
    caps: &Caps,
) -> Result<StageVerification> {
    let n = spec.grid.n;
    let schedule = reduction_schedule(n, spec.grid.r)?;
    let upto = schedule.iter().position(|s| s == stage).ok_or_else(|| {
        Error::invalid(format!(
            "stage {:?} does not apply at n = {n}, r = {}",
            stage.kind, stage.r
        ))
    })?;
    let k = crate::complex::gamma_complex(spec, caps)?;
    let mut rem = Remaining::new(&k);
    let mut outcome = None;
    for s in &schedule[..=upto] {
        let o = run_stage(&mut rem, s);
        let done = !o.passed();
        outcome = Some(o);
        if done {
            break;
        }
    }
    let o = outcome.expect("schedule prefix is nonempty");
    let reached = o.stage == *stage;
    let start = build_complex(o.start.clone(), k.scale(), caps)?;
    let evidence = DismantleCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        complex_digest: start.digest(),
        strategy: Strategy::StageGuided,
        steps: o.steps.clone(),
        residual: if reached && o.passed() {
            rem.residual()
        } else {
            Vec::new()
        },
    };
    let evidence_valid = reached && verify_certificate(&start, &evidence).is_valid();
    let targets_ok = evidence.residual.iter().all(|x| stage.admits(x));
    Ok(StageVerification {
        spec: *spec,
        stage: *stage,
        passed: reached && o.passed() && evidence_valid && targets_ok,
        evidence,
        evidence_valid,
        stuck: o.stuck,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaProof {
    pub grid: GridSpec,
    pub alpha: usize,
    /// The grid vertex whose link this is (the least one remaining).
    pub vertex: LatticePoint,
    pub run: StagedRun,
    pub verified: bool,
}

impl GammaProof {
    pub fn succeeded(&self) -> bool {
        self.verified && self.run.certificate.is_contractible()
    }
}

fn check_regime(n: usize, r: u32) -> Result<()> {
    if !(2..=6).contains(&n) {
        return Err(Error::invalid(format!("n = {n} outside 2..=6")));
    }
    if (r as usize) < n {
        return Err(Error::invalid(format!("scale r = {r} is below n = {n}")));
    }
    Ok(())
}

fn prove_link(grid: &GridSpec, alpha: usize, caps: &Caps) -> Result<GammaProof> {
    let (vertex, pts) = least_vertex_link(grid, alpha, caps)?;
    let mut k = build_complex(pts, grid.r, caps)?;
    if k.is_empty() {
        k = FlagComplex::empty(grid.n, grid.r);
    }
    let run = staged_run(&k, &reduction_schedule(grid.n, grid.r)?);
    let verified = verify_certificate(&k, &run.certificate).is_valid();
    Ok(GammaProof {
        grid: *grid,
        alpha,
        vertex,
        run,
        verified,
    })
}

/// Certifies the link complex contractible: staged reduction, then an apex
/// cone, then greedy fallback.
pub fn prove_gamma_contractible(spec: &GammaSpec, caps: &Caps) -> Result<GammaProof> {
    check_regime(spec.grid.n, spec.grid.r)?;
    GammaSpec::new(spec.grid, spec.alpha)?;
    prove_link(&spec.grid, spec.alpha, caps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridProof {
    pub spec: GridSpec,
    /// One proof per removal, `alpha = 0..=Card-2`, in removal order.
    pub links: Vec<GammaProof>,
    /// Direct greedy dismantling of the whole box complex.
    pub direct: DismantleCertificate,
    pub direct_verified: bool,
    /// `alpha` values whose link did not certify.
    pub failures: Vec<usize>,
}

impl GridProof {
    /// Every removal was justified by a contractible link, so the box
    /// complex is contractible.
    pub fn succeeded(&self) -> bool {
        self.failures.is_empty() && self.direct_verified
    }
}

/// Removes grid vertices in anti-lex order, certifying at each removal that
/// the link of the removed vertex is contractible, and also attempts a
/// direct dismantling of the box complex.
pub fn prove_grid_contractible(spec: &GridSpec, caps: &Caps) -> Result<GridProof> {
    spec.validate()?;
    check_regime(spec.n, spec.r)?;
    let card = spec
        .card()
        .ok_or_else(|| Error::cap("vertex count", caps.max_vertices, usize::MAX))?;
    caps.check_vertices(card)?;
    let links: Vec<GammaProof> = (0..card.saturating_sub(1))
        .into_par_iter()
        .map(|alpha| prove_link(spec, alpha, caps))
        .collect::<Result<_>>()?;
    let failures = links
        .iter()
        .filter(|l| !l.succeeded())
        .map(|l| l.alpha)
        .collect();
    let k = grid_complex(spec, caps)?;
    let direct = dismantle(&k, Strategy::GreedyAntilexMaxFirst);
    let direct_verified = verify_certificate(&k, &direct).is_valid();
    Ok(GridProof {
        spec: *spec,
        links,
        direct,
        direct_verified,
        failures,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureVerdict {
    ReducedAndContractible,
    ReducedNotDismantlable,
    DominationChainBroken,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub spec: GammaSpec,
    pub complex_size: usize,
    pub target_size: usize,
    pub verdict: ConjectureVerdict,
    /// Full certificate when the reduction went through.
    pub certificate: Option<DismantleCertificate>,
    /// Vertices left when no further domination applies.
    pub core: Vec<LatticePoint>,
}

/// The conjectured target set: coordinate bound plus every
/// `(n-2)`-coordinate sum at most `r - 2`. The coordinate bound is strict
/// from `r = 4` on and non-strict below, where the strict form is empty.
pub fn conjecture_target(x: &LatticePoint, r: u32) -> bool {
    let floor = r / 2;
    let coord = top_sum(x, 1);
    let coord_ok = if r >= 4 {
        coord < floor
    } else {
        coord <= floor
    };
    let n = x.dim();
    let k = n.saturating_sub(2);
    coord_ok && top_sum(x, k) + 2 <= r
}

/// Tries to reduce the link complex onto the conjectured target by
/// domination, then to dismantle the target. Only records evidence.
pub fn explore_conjecture(spec: &GammaSpec, caps: &Caps) -> Result<ConjectureReport> {
    check_regime(spec.grid.n, spec.grid.r)?;
    let r = spec.grid.r;
    let k = crate::complex::gamma_complex(spec, caps)?;
    let mut rem = Remaining::new(&k);
    let target_size = k
        .vertices()
        .iter()
        .filter(|x| conjecture_target(x, r))
        .count();

    let broken = 'reduce: loop {
        let violators: Vec<usize> = rem
            .alive_desc()
            .into_iter()
            .filter(|&i| !conjecture_target(k.vertex(i), r))
            .collect();
        if violators.is_empty() {
            break false;
        }
        for &a in &violators {
            if let Some(b) = rem.scan_dominator(a) {
                rem.remove(a, b);
                continue 'reduce;
            }
        }
        break true;
    };
    if broken {
        return Ok(ConjectureReport {
            spec: *spec,
            complex_size: k.len(),
            target_size,
            verdict: ConjectureVerdict::DominationChainBroken,
            certificate: None,
            core: rem.residual(),
        });
    }
    rem.greedy();
    let cert = rem.certificate(Strategy::GreedyAntilexMaxFirst);
    let verdict = if cert.is_contractible() {
        ConjectureVerdict::ReducedAndContractible
    } else {
        ConjectureVerdict::ReducedNotDismantlable
    };
    Ok(ConjectureReport {
        spec: *spec,
        complex_size: k.len(),
        target_size,
        verdict,
        core: if cert.is_contractible() {
            Vec::new()
        } else {
            cert.residual.clone()
        },
        certificate: Some(cert),
    })
}
