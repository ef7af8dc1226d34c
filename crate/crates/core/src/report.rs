//! Verification reports and their stable text rendering.

use alloc::format;
use alloc::string::String;

use crate::claim::ArrowClaim;
use crate::colouring::RankColouring;
use crate::vertex::{Colour, VertexSet};

/// What was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Arrow(ArrowClaim),
    HypergraphColouring {
        vertices: usize,
        edges: usize,
        uniformity: u32,
        colours: u32,
    },
    LocalProperties {
        uniformity: u32,
        trials: u64,
    },
}

impl core::fmt::Display for Subject {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Subject::Arrow(claim) => write!(f, "{claim}"),
            Subject::HypergraphColouring {
                vertices,
                edges,
                uniformity,
                colours,
            } => write!(
                f,
                "hypergraph of {vertices} vertices, {edges} edges: no edge of size >= {} \
                 monochromatic under {colours} colours of {uniformity}-subsets",
                uniformity + 1
            ),
            Subject::LocalProperties { uniformity, trials } => write!(
                f,
                "local step properties at uniformity {uniformity}, {trials} trials"
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
    LocalProperty,
}

impl core::fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let name = match self {
            VerifyMode::Exhaustive => "exhaustive",
            VerifyMode::Sampled => "sampled",
            VerifyMode::LocalProperty => "local-property",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Not decided; carries the reason (budget exhausted, width cap, ...).
    Unknown(String),
}

/// A monochromatic set found by the verifier. Always re-checkable: feed it
/// back through `confirm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub colour: Colour,
    pub vertices: VertexSet,
}

impl Witness {
    /// Re-derives monochromaticity of the witness straight from the
    /// colouring, independent of whatever search produced it.
    pub fn confirm(&self, colouring: &dyn RankColouring) -> bool {
        let r = colouring.uniformity() as usize;
        let mut ok = true;
        self.vertices.for_each_subset(r, |sub| {
            match colouring.colour_of(sub) {
                Ok(c) if c == self.colour => true,
                _ => {
                    ok = false;
                    false
                }
            }
        });
        ok && self.vertices.len() >= r
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkCounters {
    pub subsets_examined: u64,
    pub samples_drawn: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: Subject,
    pub mode: VerifyMode,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub work: WorkCounters,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Stable text form: fixed field order, one field per line.
    pub fn render(&self) -> String {
        let verdict = match &self.verdict {
            Verdict::Pass => String::from("pass"),
            Verdict::Fail => String::from("fail"),
            Verdict::Unknown(reason) => format!("unknown ({reason})"),
        };
        let witness = match &self.witness {
            None => String::from("none"),
            Some(w) => format!("colour {}: {}", w.colour, w.vertices),
        };
        let mut out = String::new();
        out.push_str(&format!("claim: {}\n", self.subject));
        out.push_str(&format!("mode: {}\n", self.mode));
        out.push_str(&format!("verdict: {verdict}\n"));
        out.push_str(&format!("witness: {witness}\n"));
        out.push_str(&format!("subsets-examined: {}\n", self.work.subsets_examined));
        out.push_str(&format!("samples-drawn: {}\n", self.work.samples_drawn));
        out.push_str(&format!("seed: {}\n", self.work.seed));
        out
    }
}

/// Rows of the eta audit rendered as a small report.
pub fn render_eta_audit(rows: &[crate::tower::EtaRow]) -> String {
    let mut out = String::from("r\teta-stated\teta-effective\tnote\n");
    for row in rows {
        let note = if row.differs {
            "stated accounting differs; claims use effective"
        } else {
            "agree"
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            row.r, row.printed, row.effective, note
        ));
    }
    out
}
