//! Integer partitions: non-increasing sequences of positive parts.
//!
//! These serve double duty as the type `(p,q)` bookkeeping of the split
//! machinery and as histograms of colour sequences in the subset colouring.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    /// Builds a partition from an arbitrary multiset of positive parts,
    /// sorting them non-increasingly.
    pub fn from_multiset(parts: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut parts: Vec<u32> = parts.into_iter().collect();
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntegerPartition { parts })
    }

    /// Accepts an already non-increasing sequence.
    pub fn from_sorted(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not non-increasing: {parts:?}"
            )));
        }
        Ok(IntegerPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, written `m` throughout.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.parts.last().copied()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Enumerates every partition of `n`, invoking `f` on each.
pub fn for_each_partition(n: u32, mut f: impl FnMut(&IntegerPartition)) {
    fn rec(remaining: u32, max_part: u32, acc: &mut Vec<u32>, f: &mut impl FnMut(&IntegerPartition)) {
        if remaining == 0 {
            f(&IntegerPartition { parts: acc.clone() });
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            acc.push(part);
            rec(remaining - part, part, acc, f);
            acc.pop();
        }
    }
    if n == 0 {
        return;
    }
    let mut acc = Vec::new();
    rec(n, n, &mut acc, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_sorts_and_keeps_total() {
        let p = IntegerPartition::from_multiset([1, 3, 2, 3]).unwrap();
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.total(), 9);
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn rejects_zero_and_misordered() {
        assert!(IntegerPartition::from_multiset([1, 0]).is_err());
        assert!(IntegerPartition::from_sorted(alloc::vec![1, 2]).is_err());
    }

    #[test]
    fn partition_enumeration_counts() {
        // p(1..8) = 1, 2, 3, 5, 7, 11, 15, 22
        let expect = [1usize, 2, 3, 5, 7, 11, 15, 22];
        for (n, &e) in (1..=8).zip(&expect) {
            let mut count = 0;
            for_each_partition(n, |p| {
                assert_eq!(p.total(), n);
                count += 1;
            });
            assert_eq!(count, e, "p({n})");
        }
    }
}
