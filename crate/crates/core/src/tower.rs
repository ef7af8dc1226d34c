//! Colouring towers: a Schur difference colouring at the bottom, then a
//! sequence of stepping-up rules, evaluated lazily.
//!
//! Each rule colours `(r+1)`-subsets of `[2^n]` using the previous level's
//! colouring of `r`-subsets of `[n]`: a caterpillar is delegated downward
//! through its splitting indices, everything else is coloured from its type.
//! Ground sets grow as iterated powers of two, so claims are tracked
//! symbolically and evaluation works on whatever subsets the caller can
//! actually represent under the width cap.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::claim::{ArrowClaim, GroundSize};
use crate::colouring::{width_for_ground, RankColouring};
use crate::schur::{EdgeColouringBase, SchurPartition};
use crate::split::{delta, is_caterpillar, pair_split_index, type_of, TypeTag};
use crate::vertex::{Colour, Vertex, VertexSet};
use crate::{Error, Result};

/// Default bound on usable bit positions: labels with set bits at or past
/// this position refuse to evaluate.
pub const DEFAULT_WIDTH_CAP: u64 = 1 << 20;

/// One stepping-up rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepRule {
    /// The general step, applicable at uniformity `r >= 3`. Inherited targets
    /// grow by one; `eta_effective(r)` fresh colours with target `r + 2` are
    /// appended.
    Main,
    /// The 2-to-3 step that keeps the colour count, turning `n -/-> (3)_k^2`
    /// into `2^n -/-> (5)_k^3` by delegating every 3-set through its
    /// splitting indices.
    Caterpillar23,
    /// The 2-to-3 step that doubles the colour count, turning
    /// `n -/-> (s)_k^2` into `2^n -/-> (s+1)_{2k}^3` by pairing the base
    /// colour of the two splitting indices with their order.
    Doubling23,
}

impl StepRule {
    pub fn keyword(self) -> &'static str {
        match self {
            StepRule::Main => "main",
            StepRule::Caterpillar23 => "cat23",
            StepRule::Doubling23 => "dbl23",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "main" => Some(StepRule::Main),
            "cat23" => Some(StepRule::Caterpillar23),
            "dbl23" => Some(StepRule::Doubling23),
            _ => None,
        }
    }
}

/// Number of extra colours the step at uniformity `r` is stated to add.
pub fn eta(r: u32) -> Result<u32> {
    if r < 3 {
        return Err(Error::UniformityTooSmall { need: 3, got: r });
    }
    Ok(match (r, r % 2) {
        (3, _) => 1,
        (_, 0) => 2,
        (_, _) => 3,
    })
}

/// Where the non-caterpillar colouring table sends a type `(p, q)` at
/// uniformity `r`: either one of the two recycled low colours or one of the
/// three possible extra colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TableColour {
    Inherited(u32),
    Extra(u32),
}

fn main_table(r: u32, p: u32, q: u32) -> TableColour {
    debug_assert!(p >= 2 && q >= 2 && p + q <= r + 1);
    let sum = p + q;
    if sum == r + 1 {
        if p.is_multiple_of(2) {
            TableColour::Extra(0)
        } else if r % 2 == 1 {
            TableColour::Inherited(0)
        } else {
            TableColour::Extra(2)
        }
    } else if sum.is_multiple_of(2) {
        TableColour::Extra(1)
    } else {
        TableColour::Inherited(1)
    }
}

/// The extra-colour offsets the table can actually emit at uniformity `r`,
/// found by enumerating every legal type `(p, q)`. Sorted ascending.
pub fn reachable_extras(r: u32) -> Result<Vec<u32>> {
    if r < 3 {
        return Err(Error::UniformityTooSmall { need: 3, got: r });
    }
    let mut seen = [false; 3];
    for p in 2..=r {
        for q in 2..=r {
            if p + q <= r + 1 {
                if let TableColour::Extra(e) = main_table(r, p, q) {
                    seen[e as usize] = true;
                }
            }
        }
    }
    Ok((0..3).filter(|&e| seen[e as usize]).collect())
}

/// Number of extra colours one step actually uses. Differs from `eta` for
/// every `r >= 4`: the table's parity cases give 3 extras at even `r` and 2
/// at odd `r`, the opposite of the stated assignment. Claims follow this
/// count; reports surface both.
pub fn eta_effective(r: u32) -> Result<u32> {
    Ok(reachable_extras(r)?.len() as u32)
}

/// One row of the eta audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaRow {
    pub r: u32,
    pub printed: u32,
    pub effective: u32,
    pub differs: bool,
}

/// Side-by-side audit of the two eta accountings for `r` in `3..=max_r`.
pub fn eta_audit(max_r: u32) -> Result<Vec<EtaRow>> {
    (3..=max_r)
        .map(|r| {
            let printed = eta(r)?;
            let effective = eta_effective(r)?;
            Ok(EtaRow {
                r,
                printed,
                effective,
                differs: printed != effective,
            })
        })
        .collect()
}

/// How a tower is built: a validated Schur base plus step rules.
#[derive(Clone, Debug)]
pub struct ColouringTowerSpec {
    pub base: SchurPartition,
    pub steps: Vec<StepRule>,
    pub width_cap: u64,
}

impl ColouringTowerSpec {
    pub fn new(base: SchurPartition, steps: Vec<StepRule>) -> Self {
        ColouringTowerSpec {
            base,
            steps,
            width_cap: DEFAULT_WIDTH_CAP,
        }
    }

    pub fn with_width_cap(mut self, cap: u64) -> Self {
        self.width_cap = cap;
        self
    }
}

/// Bookkeeping for one applied step.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub rule: StepRule,
    /// Uniformity of the level the step consumed.
    pub r_before: u32,
    /// Stated extra-colour count (`Main` only).
    pub eta_printed: Option<u32>,
    /// Extra colours actually reachable, used for the claim (`Main` only).
    pub eta_effective: Option<u32>,
}

/// One level of a built tower.
#[derive(Clone, Debug)]
pub struct LevelInfo {
    pub claim: ArrowClaim,
    pub ground: GroundSize,
    /// Vertex width at this level, when it fits a machine word. `None` means
    /// the level is claim-only: no vertex there can be represented.
    pub width: Option<u64>,
    pub uniformity: u32,
    pub colour_count: u32,
    /// Absolute indices of the extra colours this level's rule can emit.
    pub extra_colours: Vec<u32>,
    pub step: Option<StepRecord>,
}

/// A built tower: evaluate any level's colouring, read off any level's claim.
#[derive(Clone, Debug)]
pub struct ColouringHandle {
    base: EdgeColouringBase,
    levels: Vec<LevelInfo>,
    width_cap: u64,
}

/// Builds the per-level claims and returns a lazily evaluating handle.
pub fn build_tower(spec: &ColouringTowerSpec) -> Result<ColouringHandle> {
    let base = EdgeColouringBase::new(spec.base.clone());
    let base_claim = base.claim();
    let mut levels = alloc::vec![LevelInfo {
        ground: base_claim.ground(),
        width: Some(width_for_ground(base.vertex_count())),
        uniformity: 2,
        colour_count: base_claim.colour_count(),
        extra_colours: Vec::new(),
        claim: base_claim,
        step: None,
    }];

    for (i, &rule) in spec.steps.iter().enumerate() {
        let prev = levels.last().expect("base level present");
        let r = prev.uniformity;
        let ground = prev.ground.exp2();
        let width = prev.ground.as_u64();
        let level = match rule {
            StepRule::Caterpillar23 => {
                if r != 2 {
                    return Err(Error::BadStep(format!(
                        "step {}: cat23 needs a 2-uniform level, found uniformity {r}",
                        i + 1
                    )));
                }
                if prev.claim.targets().iter().any(|&s| s != 3) {
                    return Err(Error::BadStep(format!(
                        "step {}: cat23 needs all targets equal to 3",
                        i + 1
                    )));
                }
                let targets = alloc::vec![5; prev.colour_count as usize];
                LevelInfo {
                    claim: ArrowClaim::negative(ground, 3, targets)?,
                    ground,
                    width,
                    uniformity: 3,
                    colour_count: prev.colour_count,
                    extra_colours: Vec::new(),
                    step: Some(StepRecord {
                        rule,
                        r_before: r,
                        eta_printed: None,
                        eta_effective: None,
                    }),
                }
            }
            StepRule::Doubling23 => {
                if r != 2 {
                    return Err(Error::BadStep(format!(
                        "step {}: dbl23 needs a 2-uniform level, found uniformity {r}",
                        i + 1
                    )));
                }
                let mut targets = Vec::with_capacity(2 * prev.colour_count as usize);
                for &s in prev.claim.targets() {
                    targets.push(s + 1);
                    targets.push(s + 1);
                }
                LevelInfo {
                    claim: ArrowClaim::negative(ground, 3, targets)?,
                    ground,
                    width,
                    uniformity: 3,
                    colour_count: 2 * prev.colour_count,
                    extra_colours: Vec::new(),
                    step: Some(StepRecord {
                        rule,
                        r_before: r,
                        eta_printed: None,
                        eta_effective: None,
                    }),
                }
            }
            StepRule::Main => {
                if r < 3 {
                    return Err(Error::BadStep(format!(
                        "step {}: main step needs uniformity >= 3, found {r} \
                         (uniformity < 3)",
                        i + 1
                    )));
                }
                let extras = reachable_extras(r)?;
                let k = prev.colour_count;
                let mut targets: Vec<u32> =
                    prev.claim.targets().iter().map(|&s| s + 1).collect();
                targets.extend(core::iter::repeat_n(r + 2, extras.len()));
                LevelInfo {
                    claim: ArrowClaim::negative(ground, r + 1, targets)?,
                    ground,
                    width,
                    uniformity: r + 1,
                    colour_count: k + extras.len() as u32,
                    extra_colours: extras.iter().map(|&e| k + e).collect(),
                    step: Some(StepRecord {
                        rule,
                        r_before: r,
                        eta_printed: Some(eta(r)?),
                        eta_effective: Some(eta_effective(r)?),
                    }),
                }
            }
        };
        levels.push(level);
    }

    Ok(ColouringHandle {
        base,
        levels,
        width_cap: spec.width_cap,
    })
}

impl ColouringHandle {
    pub fn levels(&self) -> &[LevelInfo] {
        &self.levels
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &LevelInfo {
        &self.levels[i]
    }

    pub fn top(&self) -> &LevelInfo {
        self.levels.last().expect("base level present")
    }

    pub fn claim(&self) -> &ArrowClaim {
        &self.top().claim
    }

    pub fn width_cap(&self) -> u64 {
        self.width_cap
    }

    pub fn base(&self) -> &EdgeColouringBase {
        &self.base
    }

    /// The handle truncated to its first `level + 1` levels.
    pub fn level_view(&self, level: usize) -> Result<ColouringHandle> {
        if level >= self.levels.len() {
            return Err(Error::OutOfRange(format!(
                "level {level} of a {}-level tower",
                self.levels.len()
            )));
        }
        Ok(ColouringHandle {
            base: self.base.clone(),
            levels: self.levels[..=level].to_vec(),
            width_cap: self.width_cap,
        })
    }

    /// Colour of a top-uniformity subset under the top-level colouring.
    pub fn evaluate(&self, set: &VertexSet) -> Result<Colour> {
        self.colour_at(self.top_level(), set)
    }

    /// Colour of a subset under the colouring of an intermediate level.
    pub fn colour_at(&self, level: usize, set: &VertexSet) -> Result<Colour> {
        let info = &self.levels[level];
        if set.len() != info.uniformity as usize {
            return Err(Error::SizeMismatch {
                need: info.uniformity as usize,
                got: set.len(),
            });
        }
        if level == 0 {
            return self.base.colour_of(set);
        }
        let width = info.width.ok_or(Error::WidthUnrepresentable)?;
        for v in set.iter() {
            if v.width() != width {
                return Err(Error::WidthMismatch {
                    left: width,
                    right: v.width(),
                });
            }
            if let Some(top) = v.top_position() {
                if top >= self.width_cap {
                    return Err(Error::WidthCapExceeded {
                        cap: self.width_cap,
                        position: top,
                    });
                }
            }
        }
        let rule = info
            .step
            .as_ref()
            .expect("levels above the base carry a step")
            .rule;
        match rule {
            StepRule::Caterpillar23 => {
                // every 3-set is a caterpillar with two splitting indices
                let d = delta(set)?;
                let pair = self.encode_at(level - 1, &d)?;
                self.colour_at(level - 1, &pair)
            }
            StepRule::Doubling23 => {
                let d1 = pair_split_index(set.get(0), set.get(1))?;
                let d2 = pair_split_index(set.get(1), set.get(2))?;
                let pair = self.encode_at(level - 1, &[d1.min(d2), d1.max(d2)])?;
                let below = self.colour_at(level - 1, &pair)?;
                Ok(Colour(2 * below.0 + u32::from(d1 < d2)))
            }
            StepRule::Main => {
                if is_caterpillar(set) {
                    let d = delta(set)?;
                    let sub = self.encode_at(level - 1, &d)?;
                    self.colour_at(level - 1, &sub)
                } else {
                    let TypeTag::Type(p, q) = type_of(set)? else {
                        unreachable!("non-caterpillar sets have a type");
                    };
                    let prev = &self.levels[level - 1];
                    match main_table(prev.uniformity, p, q) {
                        TableColour::Inherited(c) => Ok(Colour(c)),
                        TableColour::Extra(e) => {
                            let rank = info
                                .extra_colours
                                .iter()
                                .position(|&c| c == prev.colour_count + e)
                                .expect("emitted extra colour is reachable");
                            Ok(Colour(prev.colour_count + rank as u32))
                        }
                    }
                }
            }
        }
    }

    /// Re-encodes splitting indices (ground elements of `level`) as vertices
    /// of that level.
    fn encode_at(&self, level: usize, values: &[u64]) -> Result<VertexSet> {
        let info = &self.levels[level];
        let width = info.width.ok_or(Error::WidthUnrepresentable)?;
        let elements = values
            .iter()
            .map(|&v| {
                if info.ground.cmp_u64(v) != core::cmp::Ordering::Greater {
                    return Err(Error::OutOfRange(format!(
                        "splitting index {v} outside ground {}",
                        info.ground
                    )));
                }
                Vertex::from_value(v, width)
            })
            .collect::<Result<Vec<_>>>()?;
        VertexSet::new(elements)
    }
}

impl RankColouring for ColouringHandle {
    fn uniformity(&self) -> u32 {
        self.top().uniformity
    }

    fn colour_count(&self) -> u32 {
        self.top().colour_count
    }

    fn ground_size(&self) -> Option<u64> {
        self.top().ground.as_u64()
    }

    /// For claim-only levels the width is reported as `u64::MAX`; evaluation
    /// at such levels is refused regardless.
    fn vertex_width(&self) -> u64 {
        self.top().width.unwrap_or(u64::MAX)
    }

    fn position_cap(&self) -> u64 {
        self.width_cap
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour> {
        self.evaluate(subset)
    }
}

/// A memoizing wrapper around one handle. The cache is bounded and clears
/// itself when full, so results never depend on eviction order; each worker
/// owns its own cache.
pub struct CachedEvaluator<'a> {
    handle: &'a ColouringHandle,
    capacity: usize,
    cache: alloc::collections::BTreeMap<Vec<Vec<u64>>, Colour>,
    pub hits: u64,
    pub misses: u64,
}

impl<'a> CachedEvaluator<'a> {
    pub fn new(handle: &'a ColouringHandle, capacity: usize) -> Self {
        CachedEvaluator {
            handle,
            capacity: capacity.max(1),
            cache: alloc::collections::BTreeMap::new(),
            hits: 0,
            misses: 0,
        }
    }

    pub fn evaluate(&mut self, set: &VertexSet) -> Result<Colour> {
        let key: Vec<Vec<u64>> = set.iter().map(|v| v.positions().to_vec()).collect();
        if let Some(&c) = self.cache.get(&key) {
            self.hits += 1;
            return Ok(c);
        }
        let colour = self.handle.evaluate(set)?;
        self.misses += 1;
        if self.cache.len() >= self.capacity {
            self.cache.clear();
        }
        self.cache.insert(key, colour);
        Ok(colour)
    }
}

/// Parses the tower spec text format: `base schur <certificate-path>` then
/// one `step <rule>` line per step. Returns the certificate path for the
/// caller to resolve and load.
pub fn parse_tower_spec(text: &str) -> Result<(String, Vec<StepRule>)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: String::from("empty tower spec"),
    })?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("base") || parts.next() != Some("schur") {
        return Err(Error::Parse {
            line: 1,
            msg: String::from("expected header 'base schur <certificate-path>'"),
        });
    }
    let path = parts.next().ok_or(Error::Parse {
        line: 1,
        msg: String::from("missing certificate path"),
    })?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: 1,
            msg: String::from("trailing tokens after certificate path"),
        });
    }
    let mut steps = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("step") {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 'step <main|cat23|dbl23>', found '{line}'"),
            });
        }
        let rule = parts
            .next()
            .and_then(StepRule::from_keyword)
            .ok_or(Error::Parse {
                line: idx + 1,
                msg: String::from("unknown step rule"),
            })?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: String::from("trailing tokens after step rule"),
            });
        }
        steps.push(rule);
    }
    Ok((String::from(path), steps))
}

/// Renders a human-readable description of a built tower: one line per level
/// with its claim, plus both eta accountings for main steps.
pub fn describe_tower(handle: &ColouringHandle) -> String {
    let mut out = String::new();
    for (i, level) in handle.levels().iter().enumerate() {
        let rule = match &level.step {
            None => String::from("schur base"),
            Some(rec) => match rec.rule {
                StepRule::Main => format!(
                    "main step at r={} (eta printed {}, effective {}{})",
                    rec.r_before,
                    rec.eta_printed.unwrap_or(0),
                    rec.eta_effective.unwrap_or(0),
                    if rec.eta_printed != rec.eta_effective {
                        "; accountings differ, claim uses effective"
                    } else {
                        ""
                    }
                ),
                StepRule::Caterpillar23 => String::from("cat23 step"),
                StepRule::Doubling23 => String::from("dbl23 step"),
            },
        };
        out.push_str(&format!(
            "level {i}: {rule}\n  claim: {}\n  colours: {}\n",
            level.claim, level.colour_count
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::search_schur_partition;

    fn span4() -> SchurPartition {
        search_schur_partition(2, 4, 1 << 20)
            .partition
            .expect("span 4 exists")
    }

    fn set(values: &[u64], width: u64) -> VertexSet {
        VertexSet::from_values(values, width).unwrap()
    }

    #[test]
    fn eta_printed_values() {
        assert_eq!(eta(3).unwrap(), 1);
        assert_eq!(eta(4).unwrap(), 2);
        assert_eq!(eta(5).unwrap(), 3);
        assert_eq!(eta(6).unwrap(), 2);
        assert!(eta(2).is_err());
    }

    #[test]
    fn type_colour_table_rows() {
        // boundary types: an even low block takes the first extra colour
        assert_eq!(main_table(3, 2, 2), TableColour::Extra(0));
        assert_eq!(main_table(5, 2, 4), TableColour::Extra(0));
        // odd low block at the boundary: recycled colour 0 at odd r,
        // the third extra at even r
        assert_eq!(main_table(5, 3, 3), TableColour::Inherited(0));
        assert_eq!(main_table(4, 3, 2), TableColour::Extra(2));
        // strictly interior types split by the parity of the sum
        assert_eq!(main_table(5, 2, 2), TableColour::Extra(1));
        assert_eq!(main_table(5, 2, 3), TableColour::Inherited(1));
        assert_eq!(main_table(4, 2, 2), TableColour::Extra(1));
    }

    #[test]
    fn eta_effective_values() {
        assert_eq!(eta_effective(3).unwrap(), 1);
        assert_eq!(eta_effective(4).unwrap(), 3);
        assert_eq!(eta_effective(5).unwrap(), 2);
        assert_eq!(eta_effective(6).unwrap(), 3);
        assert_eq!(eta_effective(7).unwrap(), 2);
        // r=3's only legal type is (2,2), which lands on the first extra
        assert_eq!(reachable_extras(3).unwrap(), [0]);
        assert_eq!(reachable_extras(5).unwrap(), [0, 1]);
        assert_eq!(reachable_extras(4).unwrap(), [0, 1, 2]);
    }

    #[test]
    fn audit_flags_the_discrepancy() {
        let rows = eta_audit(7).unwrap();
        assert!(!rows[0].differs); // r = 3
        assert!(rows.iter().skip(1).all(|row| row.differs));
    }

    #[test]
    fn claims_through_the_steps() {
        let base = span4();
        let cat = build_tower(&ColouringTowerSpec::new(
            base.clone(),
            alloc::vec![StepRule::Caterpillar23],
        ))
        .unwrap();
        assert_eq!(cat.claim().to_string(), "32 -/-> (5,5)^3");

        let dbl = build_tower(&ColouringTowerSpec::new(
            base.clone(),
            alloc::vec![StepRule::Doubling23],
        ))
        .unwrap();
        assert_eq!(dbl.claim().to_string(), "32 -/-> (4,4,4,4)^3");

        let main = build_tower(&ColouringTowerSpec::new(
            base.clone(),
            alloc::vec![StepRule::Doubling23, StepRule::Main],
        ))
        .unwrap();
        assert_eq!(main.claim().to_string(), "4294967296 -/-> (5,5,5,5,5)^4");
        assert_eq!(main.top().extra_colours, [4]);

        let deeper = build_tower(&ColouringTowerSpec::new(
            base.clone(),
            alloc::vec![StepRule::Doubling23, StepRule::Main, StepRule::Main],
        ))
        .unwrap();
        assert_eq!(
            deeper.claim().to_string(),
            "2^4294967296 -/-> (6,6,6,6,6,6,6,6)^5"
        );
        assert_eq!(deeper.top().width, Some(1 << 32));

        // identity tower: claim equals base claim
        let id = build_tower(&ColouringTowerSpec::new(base, alloc::vec![])).unwrap();
        assert_eq!(id.claim().to_string(), "5 -/-> (3,3)^2");
    }

    #[test]
    fn step_validation() {
        let base = span4();
        // main on a 2-uniform base
        let err = build_tower(&ColouringTowerSpec::new(
            base.clone(),
            alloc::vec![StepRule::Main],
        ))
        .unwrap_err();
        assert!(matches!(err, Error::BadStep(ref m) if m.contains("uniformity < 3")));
        // cat23 after another step
        assert!(build_tower(&ColouringTowerSpec::new(
            base.clone(),
            alloc::vec![StepRule::Doubling23, StepRule::Caterpillar23],
        ))
        .is_err());
        // two 2-to-3 steps
        assert!(build_tower(&ColouringTowerSpec::new(
            base,
            alloc::vec![StepRule::Caterpillar23, StepRule::Doubling23],
        ))
        .is_err());
    }

    #[test]
    fn caterpillar23_delegates_through_delta() {
        let handle = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Caterpillar23],
        ))
        .unwrap();
        // delta({1,3,6}) = {1,2}: pairwise splits are 1, 2, 2
        let t = set(&[1, 3, 6], 5);
        let expect = handle.base().colour_of_values(1, 2).unwrap();
        assert_eq!(handle.evaluate(&t).unwrap(), expect);
        // delta({0,1,2}) = {0,1}
        let t = set(&[0, 1, 2], 5);
        let expect = handle.base().colour_of_values(0, 1).unwrap();
        assert_eq!(handle.evaluate(&t).unwrap(), expect);
    }

    #[test]
    fn doubling23_pairs_base_colour_with_order() {
        let handle = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Doubling23],
        ))
        .unwrap();
        // {0,1,2}: split of {0,1} is 0, split of {1,2} is 1, ascending
        let t = set(&[0, 1, 2], 5);
        let below = handle.base().colour_of_values(0, 1).unwrap();
        assert_eq!(handle.evaluate(&t).unwrap(), Colour(2 * below.0 + 1));
        // {1,2,3}: split of {1,2} is 1, split of {2,3} is 0, descending
        let t = set(&[1, 2, 3], 5);
        let below = handle.base().colour_of_values(0, 1).unwrap();
        assert_eq!(handle.evaluate(&t).unwrap(), Colour(2 * below.0));
    }

    #[test]
    fn main_step_colours_by_type_or_delegation() {
        let handle = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Doubling23, StepRule::Main],
        ))
        .unwrap();
        let k = 4; // colours at the 3-uniform level
        // type (2,2) with p+q = r+1 = 4 and p even: first extra colour
        let x = set(&[0, 1, 2, 3], 32);
        assert_eq!(handle.evaluate(&x).unwrap(), Colour(k));
        // a caterpillar delegates to the level below on its splitting indices
        let x = set(&[0, 1, 2, 4], 32);
        let d = delta(&x).unwrap();
        let below = handle
            .level_view(1)
            .unwrap()
            .evaluate(&set(&d, 5))
            .unwrap();
        assert_eq!(handle.evaluate(&x).unwrap(), below);
    }

    #[test]
    fn evaluate_checks_sizes_and_widths() {
        let handle = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Caterpillar23],
        ))
        .unwrap();
        // wrong subset size
        assert!(handle.evaluate(&set(&[0, 1], 5)).is_err());
        // wrong width
        assert!(handle.evaluate(&set(&[0, 1, 2], 6)).is_err());
        // idempotence
        let t = set(&[3, 9, 17], 5);
        assert_eq!(handle.evaluate(&t).unwrap(), handle.evaluate(&t).unwrap());
    }

    #[test]
    fn width_cap_refusal() {
        let spec = ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Doubling23, StepRule::Main],
        )
        .with_width_cap(16);
        let handle = build_tower(&spec).unwrap();
        let x = VertexSet::new(alloc::vec![
            Vertex::from_positions([0], 32).unwrap(),
            Vertex::from_positions([1], 32).unwrap(),
            Vertex::from_positions([2], 32).unwrap(),
            Vertex::from_positions([20], 32).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            handle.evaluate(&x),
            Err(Error::WidthCapExceeded {
                cap: 16,
                position: 20
            })
        ));
    }

    #[test]
    fn claim_only_levels_refuse_evaluation() {
        let handle = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![
                StepRule::Doubling23,
                StepRule::Main,
                StepRule::Main,
                StepRule::Main,
            ],
        ))
        .unwrap();
        // width would be 2^(2^32): claim statable, evaluation refused
        assert_eq!(handle.top().width, None);
        let x = VertexSet::new(
            (0..6)
                .map(|i| Vertex::from_positions([i], u64::MAX).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            handle.evaluate(&x),
            Err(Error::WidthUnrepresentable)
        ));
    }

    #[test]
    fn cached_evaluator_matches_direct_evaluation() {
        let handle = build_tower(&ColouringTowerSpec::new(
            span4(),
            alloc::vec![StepRule::Doubling23],
        ))
        .unwrap();
        let mut cached = CachedEvaluator::new(&handle, 8);
        let sets: Vec<VertexSet> = (0..27u64).map(|i| set(&[i, i + 1, i + 5], 5)).collect();
        for s in &sets {
            let direct = handle.evaluate(s).unwrap();
            assert_eq!(cached.evaluate(s).unwrap(), direct);
            assert_eq!(cached.evaluate(s).unwrap(), direct);
        }
        assert!(cached.hits > 0);
    }

    #[test]
    fn spec_text_round_trip() {
        let (path, steps) =
            parse_tower_spec("base schur certs/span4.txt\nstep dbl23\nstep main\n").unwrap();
        assert_eq!(path, "certs/span4.txt");
        assert_eq!(steps, [StepRule::Doubling23, StepRule::Main]);
        assert!(parse_tower_spec("base other x\n").is_err());
        assert!(parse_tower_spec("base schur x\nstep warp\n").is_err());
    }
}
