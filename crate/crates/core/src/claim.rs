//! Negative arrow claims and the (possibly astronomically large) ground-set
//! sizes they are stated over.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Size of a ground set: `top` under `height` iterated powers of two.
///
/// Canonical form keeps `height == 0` whenever the value fits a machine word,
/// so equality is structural. A two-step tower over a 32-vertex level already
/// gives `2^(2^32)`, which is statable here but never materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSize {
    height: u32,
    top: u64,
}

impl GroundSize {
    pub fn new(n: u64) -> Self {
        GroundSize { height: 0, top: n }
    }

    /// The ground size of the next tower level: `2^self`.
    pub fn exp2(self) -> Self {
        if self.height == 0 && self.top < 64 {
            GroundSize {
                height: 0,
                top: 1u64 << self.top,
            }
        } else {
            GroundSize {
                height: self.height + 1,
                top: self.top,
            }
        }
    }

    /// The exact value when it fits a machine word.
    pub fn as_u64(self) -> Option<u64> {
        (self.height == 0).then_some(self.top)
    }

    /// Compares against a machine-word value.
    pub fn cmp_u64(self, x: u64) -> core::cmp::Ordering {
        match self.as_u64() {
            Some(n) => n.cmp(&x),
            // height >= 1 with top >= 64 means the value exceeds u64.
            None => core::cmp::Ordering::Greater,
        }
    }

    pub fn is_at_least(self, x: u64) -> bool {
        self.cmp_u64(x) != core::cmp::Ordering::Less
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.height {
            write!(f, "2^")?;
        }
        write!(f, "{}", self.top)
    }
}

/// The statement `n -> (s_0,...,s_{k-1})^r`, or its negation.
///
/// Every colouring this crate constructs carries the negated form: the
/// colouring is a witness that no subset of size `s_i` is monochromatic in
/// colour `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClaim {
    ground: GroundSize,
    uniformity: u32,
    targets: Vec<u32>,
    negated: bool,
}

impl ArrowClaim {
    pub fn negative(ground: GroundSize, uniformity: u32, targets: Vec<u32>) -> Result<Self> {
        let claim = ArrowClaim {
            ground,
            uniformity,
            targets,
            negated: true,
        };
        claim.validate()?;
        Ok(claim)
    }

    fn validate(&self) -> Result<()> {
        if self.uniformity < 2 {
            return Err(Error::InvalidClaim(format!(
                "uniformity {} below 2",
                self.uniformity
            )));
        }
        if self.targets.is_empty() {
            return Err(Error::InvalidClaim(String::from("no colours")));
        }
        for (i, &s) in self.targets.iter().enumerate() {
            if s < self.uniformity + 1 {
                return Err(Error::InvalidClaim(format!(
                    "target s_{i} = {s} below r + 1 = {}",
                    self.uniformity + 1
                )));
            }
            // targets above the ground size are allowed: such a claim is
            // vacuously negative (no subset of that size exists), and the
            // smallest bases rely on it
        }
        Ok(())
    }

    /// True when some target exceeds the ground size, so the negative claim
    /// holds with no colouring content at all.
    pub fn is_vacuous(&self) -> bool {
        self.targets
            .iter()
            .any(|&s| !self.ground.is_at_least(u64::from(s)))
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn uniformity(&self) -> u32 {
        self.uniformity
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn colour_count(&self) -> u32 {
        self.targets.len() as u32
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// Weakens the claim: targets may grow pointwise and fresh colours (with
    /// any valid target) may be appended. A colouring witnessing the original
    /// claim witnesses every weakening, since the fresh colours are never
    /// emitted and larger monochromatic sets are harder to find.
    pub fn weakened(&self, targets: Vec<u32>) -> Result<Self> {
        if targets.len() < self.targets.len() {
            return Err(Error::InvalidClaim(String::from(
                "weakening cannot drop colours",
            )));
        }
        for (i, (&new, &old)) in targets.iter().zip(&self.targets).enumerate() {
            if new < old {
                return Err(Error::InvalidClaim(format!(
                    "weakening lowered target s_{i}: {new} < {old}"
                )));
            }
        }
        ArrowClaim::negative(self.ground, self.uniformity, targets)
    }

    /// Restricts the claim to the first `m` ground elements. A witness over
    /// the full ground set restricts to one over any prefix.
    pub fn restricted(&self, m: u64) -> Result<Self> {
        if !self.ground.is_at_least(m) {
            return Err(Error::InvalidClaim(format!(
                "cannot restrict ground {} to {m}",
                self.ground
            )));
        }
        ArrowClaim::negative(GroundSize::new(m), self.uniformity, self.targets.clone())
    }
}

impl fmt::Display for ArrowClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = if self.negated { "-/->" } else { "->" };
        write!(f, "{} {} (", self.ground, arrow)?;
        for (i, s) in self.targets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")^{}", self.uniformity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_size_normalizes() {
        let g = GroundSize::new(5);
        assert_eq!(g.exp2(), GroundSize::new(32));
        assert_eq!(g.exp2().exp2().as_u64(), Some(1 << 32));
        let huge = g.exp2().exp2().exp2();
        assert_eq!(huge.as_u64(), None);
        assert_eq!(huge.to_string(), "2^4294967296");
        assert!(huge.is_at_least(u64::MAX));
    }

    #[test]
    fn claim_rendering() {
        let c = ArrowClaim::negative(GroundSize::new(32), 3, alloc::vec![5, 5]).unwrap();
        assert_eq!(c.to_string(), "32 -/-> (5,5)^3");
    }

    #[test]
    fn claim_validation() {
        // target below r + 1
        assert!(ArrowClaim::negative(GroundSize::new(32), 3, alloc::vec![3]).is_err());
        // uniformity below 2
        assert!(ArrowClaim::negative(GroundSize::new(4), 1, alloc::vec![2]).is_err());
        // a target above the ground is a vacuous negative claim
        let vacuous = ArrowClaim::negative(GroundSize::new(4), 3, alloc::vec![5]).unwrap();
        assert!(vacuous.is_vacuous());
        assert!(!ArrowClaim::negative(GroundSize::new(32), 3, alloc::vec![5])
            .unwrap()
            .is_vacuous());
    }

    #[test]
    fn weakening_rules() {
        let c = ArrowClaim::negative(GroundSize::new(32), 3, alloc::vec![5, 5]).unwrap();
        let w = c.weakened(alloc::vec![6, 5, 4]).unwrap();
        assert_eq!(w.targets(), &[6, 5, 4]);
        assert!(c.weakened(alloc::vec![4, 5]).is_err());
        assert!(c.weakened(alloc::vec![5]).is_err());
    }
}
