//! Independent verification of arrow claims.
//!
//! Everything here treats a colouring as a black box: it calls `colour_of`
//! and compares colours, nothing else. Exhaustive search grows monochromatic
//! sets vertex by ascending vertex (a set is extendable only if every new
//! `r`-subset already carries the colour), which enumerates a tiny fraction
//! of the worst-case `C(n, s)` subsets in practice. Grounds too large to
//! enumerate get sampled verification: uniform subsets plus structured draws
//! (caterpillars, typed sets) aimed at the colouring's case analysis.
//!
//! Work is split over search roots (colour, first vertex); each root gets a
//! deterministic slice of the subset budget and reports are merged in root
//! order, so a parallel driver and the sequential one produce identical
//! reports.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::claim::ArrowClaim;
use crate::colouring::{choose, for_each_combination, RankColouring};
use crate::report::{
    Subject, VerificationReport, Verdict, VerifyMode, Witness, WorkCounters,
};
use crate::split::{random_caterpillar, random_subset, random_typed};
use crate::tower::{ColouringHandle, StepRule};
use crate::vertex::{Colour, Vertex, VertexSet};
use crate::{Error, Result};

/// Largest ground set the exhaustive verifier will enumerate.
pub const MAX_ENUMERABLE_GROUND: u64 = 1 << 22;

/// Work limits for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Exhaustive mode: total subset evaluations, split across roots.
    /// Sampled mode: subsets drawn per colour.
    pub max_subsets: u64,
    /// Wall-clock limit; enforcement comes from the `Ticker` the caller
    /// passes in (the core crate has no clock).
    pub max_seconds: Option<core::time::Duration>,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_subsets: u64::MAX,
            max_seconds: None,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_subsets(mut self, n: u64) -> Self {
        self.max_subsets = n;
        self
    }
}

/// Wall-clock hook. `expired` is polled periodically; returning true aborts
/// the search with an unknown verdict.
pub trait Ticker: Sync {
    fn expired(&self) -> bool;
}

/// The no-deadline ticker.
pub struct Never;

impl Ticker for Never {
    fn expired(&self) -> bool {
        false
    }
}

/// One unit of exhaustive work: search colour `colour` for a monochromatic
/// `target`-set whose least vertex is `first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchRoot {
    pub colour: u32,
    pub target: u32,
    pub first: u64,
}

/// What a root search concluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootResult {
    Clean,
    Witness(VertexSet),
    Aborted(String),
}

#[derive(Clone, Debug)]
pub struct RootOutcome {
    pub root: SearchRoot,
    pub result: RootResult,
    pub work: u64,
}

/// Lays out the exhaustive search plan for a claim, or explains why the
/// ground set cannot be enumerated.
pub fn exhaustive_roots(
    colouring: &dyn RankColouring,
    claim: &ArrowClaim,
) -> core::result::Result<Vec<SearchRoot>, String> {
    let Some(ground) = claim.ground().as_u64() else {
        return Err(format!(
            "ground {} is not enumerable: vertex widths exceed the width cap",
            claim.ground()
        ));
    };
    if ground > MAX_ENUMERABLE_GROUND {
        return Err(format!(
            "ground {ground} exceeds the exhaustive enumeration limit {MAX_ENUMERABLE_GROUND}"
        ));
    }
    if claim.uniformity() != colouring.uniformity() {
        return Err(format!(
            "claim uniformity {} does not match the colouring's {}",
            claim.uniformity(),
            colouring.uniformity()
        ));
    }
    if claim.colour_count() < colouring.colour_count() {
        return Err(format!(
            "claim has {} colours but the colouring may emit {}",
            claim.colour_count(),
            colouring.colour_count()
        ));
    }
    let mut roots = Vec::new();
    for (i, &target) in claim.targets().iter().enumerate() {
        if u64::from(target) > ground {
            continue; // vacuous for this colour: no set of that size exists
        }
        for first in 0..=ground - u64::from(target) {
            roots.push(SearchRoot {
                colour: i as u32,
                target,
                first,
            });
        }
    }
    Ok(roots)
}

/// The budget slice for one root: an even split of the total, remainder to
/// the earliest roots.
pub fn root_budget_slice(total: u64, roots: usize, index: usize) -> u64 {
    if roots == 0 {
        return total;
    }
    let base = total / roots as u64;
    let extra = u64::from((index as u64) < total % roots as u64);
    base + extra
}

/// Runs one root to completion (or its budget slice). Deterministic.
pub fn run_root(
    colouring: &dyn RankColouring,
    root: SearchRoot,
    ground: u64,
    slice: u64,
    ticker: &dyn Ticker,
) -> RootOutcome {
    let width = colouring.vertex_width();
    let r = colouring.uniformity() as usize;
    let colour = Colour(root.colour);
    let mut work = 0u64;
    let mut stack: Vec<Vertex> = alloc::vec![
        Vertex::from_value(root.first, width).expect("root vertex fits the level width")
    ];
    let result = extend(
        colouring,
        colour,
        root.target as usize,
        ground,
        width,
        r,
        &mut stack,
        &mut work,
        slice,
        ticker,
    );
    RootOutcome {
        root,
        result,
        work,
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    colouring: &dyn RankColouring,
    colour: Colour,
    target: usize,
    ground: u64,
    width: u64,
    r: usize,
    x: &mut Vec<Vertex>,
    work: &mut u64,
    slice: u64,
    ticker: &dyn Ticker,
) -> RootResult {
    if x.len() == target {
        let witness = VertexSet::new(x.clone()).expect("search stack is sorted and distinct");
        return RootResult::Witness(witness);
    }
    let from = x
        .last()
        .and_then(Vertex::value_u64)
        .map_or(0, |v| v + 1);
    for v in from..ground {
        if *work >= slice {
            return RootResult::Aborted(String::from("budget exhausted"));
        }
        if (*work).is_multiple_of(1024) && ticker.expired() {
            return RootResult::Aborted(String::from("time limit reached"));
        }
        let vertex = Vertex::from_value(v, width).expect("ground value fits the level width");
        // every new r-subset (vertex plus r-1 of x) must already be `colour`
        let mut all_match = true;
        if x.len() + 1 >= r {
            let need = r - 1;
            let indices: Vec<usize> = (0..x.len()).collect();
            all_match = for_each_combination(&indices, need, |chosen| {
                let mut subset: Vec<Vertex> =
                    chosen.iter().map(|&i| x[i].clone()).collect();
                subset.push(vertex.clone());
                let set = VertexSet::new(subset).expect("distinct by construction");
                *work += 1;
                match colouring.colour_of(&set) {
                    Ok(c) => c == colour,
                    Err(_) => false,
                }
            });
        }
        if all_match {
            x.push(vertex);
            let deeper = extend(
                colouring, colour, target, ground, width, r, x, work, slice, ticker,
            );
            x.pop();
            match deeper {
                RootResult::Clean => {}
                other => return other,
            }
        }
    }
    RootResult::Clean
}

/// Merges root outcomes in canonical root order into a report. The first
/// witness (in root order) decides failure; abortions without any witness
/// yield an unknown verdict, never a pass.
pub fn merge_root_outcomes(
    claim: &ArrowClaim,
    outcomes: &[RootOutcome],
    seed: u64,
) -> VerificationReport {
    let mut work_prefix = 0u64;
    let mut witness: Option<Witness> = None;
    let mut aborted: Option<String> = None;
    for outcome in outcomes {
        work_prefix += outcome.work;
        match &outcome.result {
            RootResult::Witness(set) => {
                witness = Some(Witness {
                    colour: Colour(outcome.root.colour),
                    vertices: set.clone(),
                });
                break;
            }
            RootResult::Aborted(reason) => {
                if aborted.is_none() {
                    aborted = Some(reason.clone());
                }
            }
            RootResult::Clean => {}
        }
    }
    let verdict = match (&witness, aborted) {
        (Some(_), _) => Verdict::Fail,
        (None, Some(reason)) => Verdict::Unknown(reason),
        (None, None) => Verdict::Pass,
    };
    VerificationReport {
        subject: Subject::Arrow(claim.clone()),
        mode: VerifyMode::Exhaustive,
        verdict,
        witness,
        work: WorkCounters {
            subsets_examined: work_prefix,
            samples_drawn: 0,
            seed,
        },
    }
}

/// Exhaustive verification: passes exactly when no colour admits a
/// monochromatic set of its target size. Budget exhaustion is an unknown
/// verdict, never a pass.
pub fn verify_exhaustive(
    colouring: &dyn RankColouring,
    claim: &ArrowClaim,
    budget: &SearchBudget,
    ticker: &dyn Ticker,
) -> VerificationReport {
    let roots = match exhaustive_roots(colouring, claim) {
        Ok(roots) => roots,
        Err(reason) => {
            return VerificationReport {
                subject: Subject::Arrow(claim.clone()),
                mode: VerifyMode::Exhaustive,
                verdict: Verdict::Unknown(reason),
                witness: None,
                work: WorkCounters {
                    seed: budget.seed,
                    ..WorkCounters::default()
                },
            }
        }
    };
    let ground = claim.ground().as_u64().expect("checked by exhaustive_roots");
    let mut outcomes = Vec::with_capacity(roots.len());
    for (i, &root) in roots.iter().enumerate() {
        let slice = root_budget_slice(budget.max_subsets, roots.len(), i);
        let outcome = run_root(colouring, root, ground, slice, ticker);
        let finish = matches!(outcome.result, RootResult::Witness(_));
        outcomes.push(outcome);
        if finish {
            break;
        }
    }
    let report = merge_root_outcomes(claim, &outcomes, budget.seed);
    if let Some(w) = &report.witness {
        debug_assert!(w.confirm(colouring), "witness must re-check");
    }
    report
}

/// Is `set` monochromatic, and in which colour?
pub fn monochromatic_colour(
    colouring: &dyn RankColouring,
    set: &VertexSet,
    work: &mut u64,
) -> Result<Option<Colour>> {
    let r = colouring.uniformity() as usize;
    if set.len() < r {
        return Err(Error::SetTooSmall {
            need: r,
            got: set.len(),
        });
    }
    let mut colour: Option<Colour> = None;
    let mut failure: Option<Error> = None;
    let mut mono = true;
    set.for_each_subset(r, |sub| {
        *work += 1;
        match colouring.colour_of(sub) {
            Ok(c) => match colour {
                None => {
                    colour = Some(c);
                    true
                }
                Some(first) if first == c => true,
                Some(_) => {
                    mono = false;
                    false
                }
            },
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(if mono { colour } else { None })
}

/// Sampled verification: draws `budget.max_subsets` uniform subsets per
/// colour at that colour's target size, plus structured draws (caterpillars
/// and typed sets, a quarter of the budget each) that deliberately exercise
/// the stepping-up case analysis. A pass is evidence at this seed, never a
/// proof; the work counters make a vacuous run visible.
pub fn verify_sampled(
    colouring: &dyn RankColouring,
    claim: &ArrowClaim,
    budget: &SearchBudget,
    ticker: &dyn Ticker,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let width = colouring.vertex_width();
    let ground = colouring.ground_size();
    // position draws stay under the evaluable range
    let position_limit = width.min(colouring.position_cap());
    let mut work = 0u64;
    let mut samples = 0u64;
    let mut witness: Option<Witness> = None;
    let mut timed_out = false;

    'colours: for &target in claim.targets().iter() {
        let size = target as usize;
        let uniform = budget.max_subsets;
        let structured = budget.max_subsets / 4;
        for kind in 0..3u8 {
            let count = if kind == 0 { uniform } else { structured };
            for n in 0..count {
                if n % 512 == 0 && ticker.expired() {
                    timed_out = true;
                    break 'colours;
                }
                let drawn = match kind {
                    0 => random_subset(&mut rng, size, width, ground, position_limit),
                    1 => random_caterpillar(&mut rng, size, width, position_limit),
                    _ => {
                        // rotate over the legal type shapes at this size
                        let shapes = type_shapes(size);
                        if shapes.is_empty() {
                            continue;
                        }
                        let (p, q) = shapes[(n % shapes.len() as u64) as usize];
                        random_typed(&mut rng, p, q, size, width, position_limit)
                    }
                };
                let Ok(set) = drawn else { continue };
                samples += 1;
                if let Ok(Some(colour)) = monochromatic_colour(colouring, &set, &mut work) {
                    // a monochromatic set is a counterexample when it reaches
                    // that colour's own target
                    let c = colour.0 as usize;
                    if c < claim.targets().len()
                        && set.len() >= claim.targets()[c] as usize
                    {
                        witness = Some(Witness {
                            colour,
                            vertices: set,
                        });
                        break 'colours;
                    }
                }
            }
        }
    }

    let verdict = match (&witness, timed_out) {
        (Some(_), _) => Verdict::Fail,
        (None, true) => Verdict::Unknown(String::from("time limit reached")),
        (None, false) => Verdict::Pass,
    };
    VerificationReport {
        subject: Subject::Arrow(claim.clone()),
        mode: VerifyMode::Sampled,
        verdict,
        witness,
        work: WorkCounters {
            subsets_examined: work,
            samples_drawn: samples,
            seed: budget.seed,
        },
    }
}

/// Legal type shapes `(p, q)` for sets of the given size.
fn type_shapes(size: usize) -> Vec<(u32, u32)> {
    let mut shapes = Vec::new();
    for p in 2..=size as u32 {
        for q in 2..=size as u32 {
            if (p + q) as usize <= size {
                shapes.push((p, q));
            }
        }
    }
    shapes
}

/// Local validity checks at a main-step level.
///
/// Random `(r+2)`-subsets: a caterpillar must be monochromatic at this level
/// exactly when its splitting-index set is monochromatic one level below
/// (with the same colour); anything else must see at least two colours among
/// its `(r+1)`-subsets. On top of the random trials, one witness per type
/// shape `(P, Q)` is built deterministically at minimal width and checked,
/// covering the whole case analysis for both parities of `r`.
pub fn verify_local_properties(
    handle: &ColouringHandle,
    trials: u64,
    seed: u64,
    ticker: &dyn Ticker,
) -> Result<VerificationReport> {
    let top = handle.top();
    let step = top.step.as_ref().ok_or_else(|| {
        Error::BadStep(String::from("local properties need a stepped level"))
    })?;
    if step.rule != StepRule::Main {
        return Err(Error::BadStep(String::from(
            "local properties apply to main-step levels",
        )));
    }
    let r = step.r_before;
    let below = handle.level_view(handle.top_level() - 1)?;
    let size = (r + 2) as usize;
    let width = top.width.ok_or(Error::WidthUnrepresentable)?;
    let position_limit = width.min(handle.width_cap());
    let ground = top.ground.as_u64();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = 0u64;
    let mut samples = 0u64;
    let mut witness: Option<Witness> = None;
    let mut timed_out = false;

    let check = |x: &VertexSet, work: &mut u64| -> Result<Option<Witness>> {
        if crate::split::is_caterpillar(x) {
            let d = crate::split::delta(x)?;
            let below_width = below.top().width.ok_or(Error::WidthUnrepresentable)?;
            let d_set = VertexSet::new(
                d.iter()
                    .map(|&v| Vertex::from_value(v, below_width))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let here = monochromatic_colour(handle, x, work)?;
            let there = monochromatic_colour(&below, &d_set, work)?;
            if here != there {
                return Ok(Some(Witness {
                    colour: here.or(there).unwrap_or(Colour(0)),
                    vertices: x.clone(),
                }));
            }
        } else {
            let mono = monochromatic_colour(handle, x, work)?;
            if let Some(colour) = mono {
                return Ok(Some(Witness {
                    colour,
                    vertices: x.clone(),
                }));
            }
        }
        Ok(None)
    };

    // deterministic witnesses, one per reachable type shape
    for (p, q) in type_shapes(size) {
        let x = shape_witness(p, q, size, width)?;
        samples += 1;
        if let Some(w) = check(&x, &mut work)? {
            witness = Some(w);
        }
    }

    if witness.is_none() {
        for n in 0..trials {
            if n % 512 == 0 && ticker.expired() {
                timed_out = true;
                break;
            }
            let drawn = match n % 3 {
                0 => random_subset(&mut rng, size, width, ground, position_limit),
                1 => random_caterpillar(&mut rng, size, width, position_limit),
                _ => {
                    let shapes = type_shapes(size);
                    let (p, q) = shapes[(n % shapes.len() as u64) as usize];
                    random_typed(&mut rng, p, q, size, width, position_limit)
                }
            };
            let Ok(x) = drawn else { continue };
            samples += 1;
            if let Some(w) = check(&x, &mut work)? {
                witness = Some(w);
                break;
            }
        }
    }

    let verdict = match (&witness, timed_out) {
        (Some(_), _) => Verdict::Fail,
        (None, true) => Verdict::Unknown(String::from("time limit reached")),
        (None, false) => Verdict::Pass,
    };
    Ok(VerificationReport {
        subject: Subject::LocalProperties {
            uniformity: top.uniformity,
            trials,
        },
        mode: VerifyMode::LocalProperty,
        verdict,
        witness,
        work: WorkCounters {
            subsets_examined: work,
            samples_drawn: samples,
            seed,
        },
    })
}

/// Deterministic minimal-width set of the given size and type `(p, q)`:
/// a low block `{0..p}`, a high block over one boundary bit, then singleton
/// paddings on fresh high bits.
fn shape_witness(p: u32, q: u32, size: usize, width: u64) -> Result<VertexSet> {
    let boundary = 64 - u64::from(p.max(q)).leading_zeros() as u64; // bits for the blocks
    let mut elements: Vec<Vertex> = Vec::with_capacity(size);
    for v in 0..u64::from(p) {
        elements.push(Vertex::from_value(v, width)?);
    }
    for j in 0..u64::from(q) {
        elements.push(Vertex::from_value((1 << boundary) + j, width)?);
    }
    let pads = size - (p + q) as usize;
    for t in 0..pads as u64 {
        elements.push(Vertex::from_value(1 << (boundary + 1 + t), width)?);
    }
    VertexSet::new(elements)
}

/// Best-effort search for the largest monochromatic set in one colour.
#[derive(Clone, Debug)]
pub struct MonoSearchResult {
    pub best: VertexSet,
    /// False when the budget ran out: the bound is only a lower bound on the
    /// true maximum even more than usual.
    pub complete: bool,
    pub work: u64,
}

/// Branch-and-bound growth of monochromatic sets in `colour`. The size of
/// the returned set is a lower bound on the true maximum.
pub fn max_mono_search(
    colouring: &dyn RankColouring,
    colour: Colour,
    budget: &SearchBudget,
    ticker: &dyn Ticker,
) -> Result<MonoSearchResult> {
    let Some(ground) = colouring.ground_size() else {
        return Err(Error::WidthUnrepresentable);
    };
    if ground > MAX_ENUMERABLE_GROUND {
        return Err(Error::OutOfRange(format!(
            "ground {ground} exceeds the enumeration limit"
        )));
    }
    let width = colouring.vertex_width();
    let r = colouring.uniformity() as usize;
    let mut best: Vec<Vertex> = Vec::new();
    let mut work = 0u64;
    let mut complete = true;

    #[allow(clippy::too_many_arguments)]
    fn grow(
        colouring: &dyn RankColouring,
        colour: Colour,
        ground: u64,
        width: u64,
        r: usize,
        x: &mut Vec<Vertex>,
        best: &mut Vec<Vertex>,
        work: &mut u64,
        max_work: u64,
        complete: &mut bool,
        ticker: &dyn Ticker,
    ) {
        if x.len() > best.len() {
            *best = x.clone();
        }
        let from = x.last().and_then(Vertex::value_u64).map_or(0, |v| v + 1);
        for v in from..ground {
            // bound: even taking every remaining vertex cannot beat the best
            if x.len() as u64 + (ground - v) <= best.len() as u64 {
                return;
            }
            if *work > max_work || ((*work).is_multiple_of(1024) && ticker.expired()) {
                *complete = false;
                return;
            }
            let vertex = Vertex::from_value(v, width).expect("value below ground");
            let mut all_match = true;
            if x.len() + 1 >= r {
                let indices: Vec<usize> = (0..x.len()).collect();
                all_match = for_each_combination(&indices, r - 1, |chosen| {
                    let mut subset: Vec<Vertex> = chosen.iter().map(|&i| x[i].clone()).collect();
                    subset.push(vertex.clone());
                    let set = VertexSet::new(subset).expect("distinct by construction");
                    *work += 1;
                    matches!(colouring.colour_of(&set), Ok(c) if c == colour)
                });
            }
            if all_match {
                x.push(vertex);
                grow(
                    colouring, colour, ground, width, r, x, best, work, max_work, complete,
                    ticker,
                );
                x.pop();
            }
        }
    }

    let mut x = Vec::new();
    grow(
        colouring,
        colour,
        ground,
        width,
        r,
        &mut x,
        &mut best,
        &mut work,
        budget.max_subsets,
        &mut complete,
        ticker,
    );
    Ok(MonoSearchResult {
        best: VertexSet::new(best)?,
        complete,
        work,
    })
}

/// Worst-case exhaustive cost of a claim: the sum over colours of
/// `C(ground, target)`, saturating.
pub fn worst_case_cost(claim: &ArrowClaim) -> u64 {
    let Some(ground) = claim.ground().as_u64() else {
        return u64::MAX;
    };
    claim
        .targets()
        .iter()
        .fold(0u64, |acc, &s| acc.saturating_add(choose(ground, u64::from(s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::FnColouring;
    use crate::schur::{search_schur_partition, SchurPartition};
    use crate::tower::{build_tower, ColouringTowerSpec};

    fn span4() -> SchurPartition {
        search_schur_partition(2, 4, 1 << 20).partition.unwrap()
    }

    #[test]
    fn schur_base_passes_exhaustively() {
        let tower = build_tower(&ColouringTowerSpec::new(span4(), alloc::vec![])).unwrap();
        let report = verify_exhaustive(
            &tower,
            tower.claim(),
            &SearchBudget::default(),
            &Never,
        );
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn constant_colouring_fails_with_witness() {
        let constant = FnColouring {
            uniformity: 2,
            colours: 1,
            ground: 6,
            width: 3,
            f: |_s: &VertexSet| Ok(Colour(0)),
        };
        let claim =
            ArrowClaim::negative(crate::claim::GroundSize::new(6), 2, alloc::vec![3]).unwrap();
        let report = verify_exhaustive(&constant, &claim, &SearchBudget::default(), &Never);
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.expect("failure carries a witness");
        assert_eq!(w.vertices.len(), 3);
        assert!(w.confirm(&constant));
    }

    #[test]
    fn budget_exhaustion_is_unknown_not_pass() {
        let tower = build_tower(&ColouringTowerSpec::new(span4(), alloc::vec![])).unwrap();
        let budget = SearchBudget::default().with_max_subsets(0);
        let report = verify_exhaustive(&tower, tower.claim(), &budget, &Never);
        assert!(matches!(report.verdict, Verdict::Unknown(_)));
    }

    #[test]
    fn unenumerable_ground_is_unknown_citing_the_cap() {
        let tower = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Doubling23, StepRule::Main, StepRule::Main],
        ))
        .unwrap();
        let report =
            verify_exhaustive(&tower, tower.claim(), &SearchBudget::default(), &Never);
        match report.verdict {
            Verdict::Unknown(reason) => assert!(reason.contains("width cap"), "{reason}"),
            other => panic!("expected unknown, got {other:?}"),
        }
    }

    #[test]
    fn sampled_zero_budget_is_visibly_vacuous() {
        let tower = build_tower(&ColouringTowerSpec::new(span4(), alloc::vec![])).unwrap();
        let budget = SearchBudget::default().with_max_subsets(0);
        let report = verify_sampled(&tower, tower.claim(), &budget, &Never);
        assert!(report.passed());
        assert_eq!(report.work.samples_drawn, 0);
        assert_eq!(report.work.subsets_examined, 0);
    }

    #[test]
    fn sampled_recovers_a_planted_corruption() {
        let tower = build_tower(&ColouringTowerSpec::new(span4(), alloc::vec![])).unwrap();
        let plant = VertexSet::from_values(&[0, 1, 2], 3).unwrap();
        let planted =
            crate::colouring::PlantedColouring::new(&tower, plant.clone(), Colour(0));
        let budget = SearchBudget::default().with_max_subsets(500).with_seed(11);
        let report = verify_sampled(&planted, tower.claim(), &budget, &Never);
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.unwrap();
        assert_eq!(w.vertices, plant);
        assert!(w.confirm(&planted));
    }

    #[test]
    fn sampled_determinism() {
        let tower = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Caterpillar23],
        ))
        .unwrap();
        let budget = SearchBudget::default().with_max_subsets(200).with_seed(42);
        let a = verify_sampled(&tower, tower.claim(), &budget, &Never);
        let b = verify_sampled(&tower, tower.claim(), &budget, &Never);
        assert_eq!(a, b);
        assert!(a.passed());
    }

    #[test]
    fn parallel_style_merge_matches_sequential() {
        // run all roots unconditionally, then merge; must equal the
        // sequential early-exit driver's report
        let constant = FnColouring {
            uniformity: 2,
            colours: 2,
            ground: 8,
            width: 3,
            f: |s: &VertexSet| {
                let v = s.get(0).value_u64().unwrap();
                Ok(Colour(u32::from(v == 0)))
            },
        };
        let claim =
            ArrowClaim::negative(crate::claim::GroundSize::new(8), 2, alloc::vec![3, 3])
                .unwrap();
        let budget = SearchBudget::default();
        let sequential = verify_exhaustive(&constant, &claim, &budget, &Never);

        let roots = exhaustive_roots(&constant, &claim).unwrap();
        let outcomes: Vec<RootOutcome> = roots
            .iter()
            .enumerate()
            .map(|(i, &root)| {
                let slice = root_budget_slice(budget.max_subsets, roots.len(), i);
                run_root(&constant, root, 8, slice, &Never)
            })
            .collect();
        let merged = merge_root_outcomes(&claim, &outcomes, budget.seed);
        assert_eq!(sequential, merged);
        assert_eq!(sequential.verdict, Verdict::Fail);
    }

    #[test]
    fn local_properties_pass_on_a_main_level() {
        let tower = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Doubling23, StepRule::Main],
        ))
        .unwrap();
        let report = verify_local_properties(&tower, 500, 3, &Never).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert!(report.work.samples_drawn >= 500);
    }

    #[test]
    fn local_properties_need_a_main_level() {
        let tower = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Caterpillar23],
        ))
        .unwrap();
        assert!(verify_local_properties(&tower, 10, 0, &Never).is_err());
    }

    #[test]
    fn max_mono_on_base_and_constant() {
        let tower = build_tower(&ColouringTowerSpec::new(span4(), alloc::vec![])).unwrap();
        let result =
            max_mono_search(&tower, Colour(0), &SearchBudget::default(), &Never).unwrap();
        assert_eq!(result.best.len(), 2, "an edge but never a triangle");
        assert!(result.complete);

        let constant = FnColouring {
            uniformity: 2,
            colours: 1,
            ground: 7,
            width: 3,
            f: |_s: &VertexSet| Ok(Colour(0)),
        };
        let result =
            max_mono_search(&constant, Colour(0), &SearchBudget::default(), &Never).unwrap();
        assert_eq!(result.best.len(), 7);
    }

    #[test]
    fn cost_estimate() {
        let claim = ArrowClaim::negative(crate::claim::GroundSize::new(32), 3, alloc::vec![5, 5])
            .unwrap();
        assert_eq!(worst_case_cost(&claim), 2 * 201_376);
    }
}
