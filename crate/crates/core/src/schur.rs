//! Sum-free partitions of integer intervals and the 2-uniform difference
//! colourings they induce.
//!
//! A partition of `{1..span}` into `k` sum-free classes yields a colouring of
//! the pairs of `[span+1]` (colour of `{x,y}` = class of `|x-y|`) with no
//! monochromatic triangle: a triangle `x < y < z` would put the differences
//! `y-x`, `z-y`, `z-x` in one class, and the first two sum to the third.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::claim::{ArrowClaim, GroundSize};
use crate::colouring::{width_for_ground, RankColouring};
use crate::vertex::{Colour, VertexSet};
use crate::{Error, Result};

/// A partition of `{1..span}` into disjoint sum-free classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurPartition {
    span: u64,
    classes: Vec<Vec<u64>>,
}

/// No `x + y = z` within the set (`x = y` counts as a pair).
pub fn is_sum_free(class: &[u64]) -> bool {
    // callers keep classes sorted; re-sorting here keeps the check usable on
    // raw input
    let mut sorted = class.to_vec();
    sorted.sort_unstable();
    for (i, &x) in sorted.iter().enumerate() {
        for &y in &sorted[i..] {
            if sorted.binary_search(&(x + y)).is_ok() {
                return false;
            }
        }
    }
    true
}

/// Full validation of a candidate partition: coverage of `{1..span}`,
/// disjointness, and sum-freeness of every class. Diagnostics name the class
/// (as a 1-based "line" matching the certificate format) and element.
pub fn validate_schur_classes(span: u64, classes: &[Vec<u64>]) -> Result<()> {
    let mut seen = alloc::collections::BTreeMap::new();
    for (ci, class) in classes.iter().enumerate() {
        for &x in class {
            if x == 0 || x > span {
                return Err(Error::InvalidData {
                    line: ci + 2,
                    msg: format!("element {x} outside 1..={span}"),
                });
            }
            if let Some(prev) = seen.insert(x, ci) {
                return Err(Error::InvalidData {
                    line: ci + 2,
                    msg: format!("element {x} already in class {}", prev + 1),
                });
            }
        }
    }
    for x in 1..=span {
        if !seen.contains_key(&x) {
            return Err(Error::InvalidData {
                line: 1,
                msg: format!("element {x} not covered by any class"),
            });
        }
    }
    for (ci, class) in classes.iter().enumerate() {
        let mut sorted = class.clone();
        sorted.sort_unstable();
        for (i, &x) in sorted.iter().enumerate() {
            for &y in &sorted[i..] {
                if sorted.binary_search(&(x + y)).is_ok() {
                    return Err(Error::InvalidData {
                        line: ci + 2,
                        msg: format!("class {} is not sum-free: {x} + {y} = {}", ci + 1, x + y),
                    });
                }
            }
        }
    }
    Ok(())
}

impl SchurPartition {
    /// Builds and fully validates a partition.
    pub fn new(span: u64, classes: Vec<Vec<u64>>) -> Result<Self> {
        validate_schur_classes(span, &classes)?;
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
        }
        Ok(SchurPartition { span, classes })
    }

    pub fn span(&self) -> u64 {
        self.span
    }

    pub fn class_count(&self) -> u32 {
        self.classes.len() as u32
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    /// Re-runs full validation; always true for values built through `new`.
    pub fn validate(&self) -> bool {
        validate_schur_classes(self.span, &self.classes).is_ok()
    }

    /// Certificate text: `schur <k> <span>`, then one ascending class per line.
    pub fn render_certificate(&self) -> String {
        let mut out = format!("schur {} {}\n", self.classes.len(), self.span);
        for class in &self.classes {
            let line: Vec<String> = class.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses and validates a certificate. Syntax problems report `Parse`,
    /// semantic ones (overlap, gap, sum violation) report `InvalidData`.
    pub fn parse_certificate(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: String::from("empty certificate"),
        })?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("schur") {
            return Err(Error::Parse {
                line: 1,
                msg: String::from("expected header 'schur <k> <span>'"),
            });
        }
        let k: usize = parts.next().and_then(|s| s.parse().ok()).ok_or(Error::Parse {
            line: 1,
            msg: String::from("missing or invalid class count"),
        })?;
        let span: u64 = parts.next().and_then(|s| s.parse().ok()).ok_or(Error::Parse {
            line: 1,
            msg: String::from("missing or invalid span"),
        })?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                msg: String::from("trailing tokens in header"),
            });
        }
        let mut classes = Vec::with_capacity(k);
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut class = Vec::new();
            let mut prev: Option<u64> = None;
            for tok in line.split_whitespace() {
                let x: u64 = tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("invalid element '{tok}'"),
                })?;
                if let Some(p) = prev {
                    if x <= p {
                        return Err(Error::Parse {
                            line: idx + 1,
                            msg: format!("elements not strictly ascending at {x}"),
                        });
                    }
                }
                prev = Some(x);
                class.push(x);
            }
            classes.push(class);
        }
        if classes.len() != k {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header announces {k} classes, found {}", classes.len()),
            });
        }
        SchurPartition::new(span, classes)
    }
}

/// Outcome of a backtracking search for a sum-free partition.
#[derive(Clone, Debug)]
pub struct SchurSearch {
    pub partition: Option<SchurPartition>,
    /// True when the search reached a definitive conclusion: either a
    /// partition was found, or the whole space was explored. Only an
    /// exhausted search with no partition proves nonexistence.
    pub exhausted: bool,
    pub nodes: u64,
}

/// Backtracking search for a partition of `{1..span}` into `k` sum-free
/// classes. Elements are placed in ascending order, so placing `x` into a
/// class only has to rule out `y + z = x` with `y, z` already in it; the
/// other sum shapes are caught when the larger element arrives. The first
/// empty class cuts the class-permutation symmetry. Deterministic.
pub fn search_schur_partition(k: u32, span: u64, max_nodes: u64) -> SchurSearch {
    fn place(
        classes: &mut [Vec<u64>],
        x: u64,
        span: u64,
        nodes: &mut u64,
        max_nodes: u64,
        budget_hit: &mut bool,
    ) -> bool {
        if x > span {
            return true;
        }
        if *nodes >= max_nodes {
            *budget_hit = true;
            return false;
        }
        *nodes += 1;
        let mut tried_empty = false;
        for ci in 0..classes.len() {
            if classes[ci].is_empty() {
                if tried_empty {
                    continue; // empty classes are interchangeable
                }
                tried_empty = true;
            }
            let ok = classes[ci]
                .iter()
                .all(|&y| classes[ci].binary_search(&(x - y)).is_err());
            if ok {
                classes[ci].push(x);
                if place(classes, x + 1, span, nodes, max_nodes, budget_hit) {
                    return true;
                }
                classes[ci].pop();
                if *budget_hit {
                    return false;
                }
            }
        }
        false
    }

    let mut classes: Vec<Vec<u64>> = alloc::vec![Vec::new(); k as usize];
    let mut nodes = 0u64;
    let mut budget_hit = false;
    let found = place(&mut classes, 1, span, &mut nodes, max_nodes, &mut budget_hit);
    let exhausted = found || !budget_hit;
    let partition =
        found.then(|| SchurPartition::new(span, classes).expect("search output validates"));
    SchurSearch {
        partition,
        exhausted,
        nodes,
    }
}

/// Composes two sum-free partitions into one with `k + l` classes spanning
/// `2ss' + s + s'`.
///
/// With `T = 2s' + 1`: block `a` is the run `{aT - s', ..., aT}` and inherits
/// the class of `a` in `p`; what remains are the runs `{aT + 1, ..., aT + s'}`
/// for `a` in `0..=s`, classed by the offset's class in `q`. Block sums land
/// in a block whose index is a forbidden sum in `p`; offset sums land either
/// on a forbidden offset or inside a block. The result is validated before it
/// is returned, and failure of that validation is reported as an error, never
/// silently accepted.
pub fn compose_partitions(p: &SchurPartition, q: &SchurPartition) -> Result<SchurPartition> {
    let s = p.span();
    let t = 2 * q.span() + 1;
    let span = s * t + q.span();
    let mut classes: Vec<Vec<u64>> = Vec::with_capacity((p.class_count() + q.class_count()) as usize);
    for class in p.classes() {
        let mut out = Vec::new();
        for &a in class {
            for z in 0..=q.span() {
                out.push(a * t - z);
            }
        }
        out.sort_unstable();
        classes.push(out);
    }
    for class in q.classes() {
        let mut out = Vec::new();
        for &c in class {
            for a in 0..=s {
                out.push(a * t + c);
            }
        }
        out.sort_unstable();
        classes.push(out);
    }
    SchurPartition::new(span, classes).map_err(|e| Error::ComposedInvalid(format!("{e}")))
}

/// The 2-uniform difference colouring induced by a partition: pairs of
/// `[span+1]` coloured by the class of their difference.
#[derive(Clone, Debug)]
pub struct EdgeColouringBase {
    partition: SchurPartition,
    class_of_diff: Vec<u32>, // index d-1 holds the class of difference d
}

impl EdgeColouringBase {
    pub fn new(partition: SchurPartition) -> Self {
        let mut class_of_diff = alloc::vec![0u32; partition.span() as usize];
        for (ci, class) in partition.classes().iter().enumerate() {
            for &x in class {
                class_of_diff[(x - 1) as usize] = ci as u32;
            }
        }
        EdgeColouringBase {
            partition,
            class_of_diff,
        }
    }

    pub fn partition(&self) -> &SchurPartition {
        &self.partition
    }

    pub fn vertex_count(&self) -> u64 {
        self.partition.span() + 1
    }

    /// The claim this colouring witnesses: no monochromatic triangle.
    pub fn claim(&self) -> ArrowClaim {
        let k = self.partition.class_count() as usize;
        ArrowClaim::negative(
            GroundSize::new(self.vertex_count()),
            2,
            alloc::vec![3; k],
        )
        .expect("base claim is valid for span >= 2")
    }

    /// Colour of a pair given by plain values.
    pub fn colour_of_values(&self, x: u64, y: u64) -> Result<Colour> {
        if x == y {
            return Err(Error::DuplicateVertex);
        }
        let d = x.abs_diff(y);
        Ok(Colour(self.class_of_diff[(d - 1) as usize]))
    }
}

impl RankColouring for EdgeColouringBase {
    fn uniformity(&self) -> u32 {
        2
    }

    fn colour_count(&self) -> u32 {
        self.partition.class_count()
    }

    fn ground_size(&self) -> Option<u64> {
        Some(self.vertex_count())
    }

    fn vertex_width(&self) -> u64 {
        width_for_ground(self.vertex_count())
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour> {
        if subset.len() != 2 {
            return Err(Error::SizeMismatch {
                need: 2,
                got: subset.len(),
            });
        }
        let n = self.vertex_count();
        let get = |i: usize| {
            subset.get(i).value_u64().filter(|&v| v < n).ok_or_else(|| {
                Error::OutOfRange(format!("vertex {} outside ground {n}", subset.get(i)))
            })
        };
        self.colour_of_values(get(0)?, get(1)?)
    }
}

/// Convenience: the colouring plus the claim it realizes.
pub fn schur_edge_colouring(p: &SchurPartition) -> (EdgeColouringBase, ArrowClaim) {
    let base = EdgeColouringBase::new(p.clone());
    let claim = base.claim();
    (base, claim)
}
