//! Bit-vector vertex labels.
//!
//! A vertex of a level's ground set `[2^w]` is stored sparsely as the sorted
//! list of its set-bit positions together with the width `w`. Sparse storage is
//! what makes deep tower levels workable: a label of nominal width `2^32` with
//! a handful of set bits costs a handful of words.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::{Error, Result};

/// A colour index within some colouring's palette.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colour(pub u32);

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `[2^width]`, stored as its set-bit positions (ascending,
/// position 0 least significant).
///
/// Two vertices are equal exactly when their set-bit position sets are equal;
/// the width is context carried along for validity checks, not part of the
/// value.
#[derive(Clone, Debug)]
pub struct Vertex {
    positions: Vec<u64>,
    width: u64,
}

impl PartialEq for Vertex {
    fn eq(&self, other: &Self) -> bool {
        self.positions == other.positions
    }
}

impl Eq for Vertex {}

impl core::hash::Hash for Vertex {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.positions.hash(state);
    }
}

impl Vertex {
    /// Encodes a machine-word value at the given width.
    pub fn from_value(value: u64, width: u64) -> Result<Self> {
        if width < 64 && value >= 1u64 << width {
            return Err(Error::ValueOutOfRange { width });
        }
        let positions = (0..64).filter(|&i| value >> i & 1 == 1).collect();
        Ok(Vertex { positions, width })
    }

    /// Encodes an arbitrary-precision value at the given width.
    pub fn from_biguint(value: &BigUint, width: u64) -> Result<Self> {
        if value.bits() > width {
            return Err(Error::ValueOutOfRange { width });
        }
        let positions = (0..value.bits()).filter(|&i| value.bit(i)).collect();
        Ok(Vertex { positions, width })
    }

    /// Builds a vertex directly from set-bit positions.
    pub fn from_positions(positions: impl IntoIterator<Item = u64>, width: u64) -> Result<Self> {
        let mut positions: Vec<u64> = positions.into_iter().collect();
        positions.sort_unstable();
        positions.dedup();
        if let Some(&top) = positions.last() {
            if top >= width {
                return Err(Error::PositionBeyondWidth {
                    position: top,
                    width,
                });
            }
        }
        Ok(Vertex { positions, width })
    }

    pub fn zero(width: u64) -> Self {
        Vertex {
            positions: Vec::new(),
            width,
        }
    }

    /// Set-bit positions, ascending. This is the binary expansion of the label.
    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn top_position(&self) -> Option<u64> {
        self.positions.last().copied()
    }

    pub fn has_bit(&self, position: u64) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// The represented natural number, when it fits a machine word.
    pub fn value_u64(&self) -> Option<u64> {
        match self.positions.last() {
            Some(&top) if top >= 64 => None,
            _ => Some(self.positions.iter().fold(0u64, |acc, &p| acc | 1 << p)),
        }
    }

    pub fn value_biguint(&self) -> BigUint {
        let mut v = BigUint::ZERO;
        for &p in &self.positions {
            v.set_bit(p, true);
        }
        v
    }

    /// Numeric order of the represented values: the most significant
    /// differing bit decides. Widths are not checked here.
    pub fn numeric_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.positions.iter().rev();
        let mut b = other.positions.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }

    /// Numeric comparison that insists both vertices live at the same width.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        Ok(self.numeric_cmp(other))
    }

    fn hex_digits(&self) -> String {
        match self.positions.last() {
            None => String::from("0"),
            Some(&top) => {
                let nibbles = (top / 4 + 1) as usize;
                let mut digits = alloc::vec![0u8; nibbles];
                for &p in &self.positions {
                    digits[(p / 4) as usize] |= 1 << (p % 4);
                }
                digits
                    .iter()
                    .rev()
                    .map(|&d| char::from_digit(d as u32, 16).unwrap())
                    .collect()
            }
        }
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.numeric_cmp(other)
    }
}

/// Canonical text encoding: lowercase hex of the value, then "/", then the
/// width in decimal. `31` at width 5 prints as `1f/5`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.hex_digits(), self.width)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |msg: &str| Error::Parse {
            line: 0,
            msg: format!("vertex '{s}': {msg}"),
        };
        let (hex, width) = s.split_once('/').ok_or_else(|| parse_err("missing /width"))?;
        let width: u64 = width
            .parse()
            .map_err(|_| parse_err("width is not a number"))?;
        if hex.is_empty() {
            return Err(parse_err("empty hex value"));
        }
        let mut positions = Vec::new();
        for (i, c) in hex.chars().rev().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| parse_err("invalid hex digit"))?;
            for bit in 0..4 {
                if d >> bit & 1 == 1 {
                    positions.push(4 * i as u64 + bit);
                }
            }
        }
        if let Some(&top) = positions.last() {
            if top >= width {
                return Err(Error::PositionBeyondWidth {
                    position: top,
                    width,
                });
            }
        }
        Ok(Vertex { positions, width })
    }
}

/// A finite set of vertices of identical width, kept sorted in numeric order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    elements: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(mut elements: Vec<Vertex>) -> Result<Self> {
        if let Some(first) = elements.first() {
            let w = first.width();
            for e in &elements {
                if e.width() != w {
                    return Err(Error::WidthMismatch {
                        left: w,
                        right: e.width(),
                    });
                }
            }
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex);
        }
        Ok(VertexSet { elements })
    }

    /// Builds the set `{values}` at the given width.
    pub fn from_values(values: &[u64], width: u64) -> Result<Self> {
        let elements = values
            .iter()
            .map(|&v| Vertex::from_value(v, width))
            .collect::<Result<Vec<_>>>()?;
        VertexSet::new(elements)
    }

    pub fn empty() -> Self {
        VertexSet {
            elements: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Vertex> {
        self.elements.iter()
    }

    pub fn elements(&self) -> &[Vertex] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Vertex {
        &self.elements[i]
    }

    pub fn min(&self) -> Option<&Vertex> {
        self.elements.first()
    }

    pub fn max(&self) -> Option<&Vertex> {
        self.elements.last()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    /// Width shared by all elements; `None` for the empty set.
    pub fn width(&self) -> Option<u64> {
        self.elements.first().map(Vertex::width)
    }

    /// The subset at the given (sorted) element indices.
    pub fn select(&self, indices: &[usize]) -> VertexSet {
        VertexSet {
            elements: indices.iter().map(|&i| self.elements[i].clone()).collect(),
        }
    }

    /// The set minus the element at `index`.
    pub fn without(&self, index: usize) -> VertexSet {
        let mut elements = self.elements.clone();
        elements.remove(index);
        VertexSet { elements }
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        VertexSet::new(elements)
    }

    /// True when every element of `self` occurs in `other`.
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Calls `f` with every `k`-subset, in lexicographic index order, until
    /// `f` returns `false`.
    pub fn for_each_subset(&self, k: usize, mut f: impl FnMut(&VertexSet) -> bool) {
        let n = self.len();
        if k > n {
            return;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if !f(&self.select(&idx)) {
                return;
            }
            // advance the combination
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// All `k`-subsets, materialized. Fine for the small sets the split
    /// machinery works on; the verifier streams instead.
    pub fn subsets(&self, k: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.for_each_subset(k, |s| {
            out.push(s.clone());
            true
        });
        out
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_value_sets_expected_bits() {
        let v = Vertex::from_value(5, 4).unwrap();
        assert_eq!(v.positions(), &[0, 2]);
        let z = Vertex::from_value(0, 8).unwrap();
        assert!(z.positions().is_empty());
        let v31 = Vertex::from_value(31, 5).unwrap();
        assert_eq!(v31.positions(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn from_value_rejects_out_of_range() {
        assert_eq!(
            Vertex::from_value(16, 4),
            Err(Error::ValueOutOfRange { width: 4 })
        );
        assert!(Vertex::from_value(15, 4).is_ok());
    }

    #[test]
    fn compare_is_numeric() {
        let a = Vertex::from_value(2, 4).unwrap();
        let b = Vertex::from_value(3, 4).unwrap();
        assert_eq!(a.compare(&b).unwrap(), Ordering::Less);
        assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
        let six = Vertex::from_value(6, 5).unwrap();
        let thirtyone = Vertex::from_value(31, 5).unwrap();
        assert_eq!(six.compare(&thirtyone).unwrap(), Ordering::Less);
    }

    #[test]
    fn compare_rejects_width_mismatch() {
        let a = Vertex::from_value(1, 4).unwrap();
        let b = Vertex::from_value(1, 5).unwrap();
        assert!(a.compare(&b).is_err());
        assert_eq!(a, b); // equality ignores width
    }

    #[test]
    fn hex_round_trip() {
        let v = Vertex::from_value(31, 5).unwrap();
        assert_eq!(v.to_string(), "1f/5");
        let back: Vertex = "1f/5".parse().unwrap();
        assert_eq!(back, v);
        assert_eq!(back.width(), 5);

        let z = Vertex::zero(8);
        assert_eq!(z.to_string(), "0/8");
        assert_eq!("0/8".parse::<Vertex>().unwrap(), z);
    }

    #[test]
    fn hex_rejects_junk() {
        assert!("zz/4".parse::<Vertex>().is_err());
        assert!("1f".parse::<Vertex>().is_err());
        assert!("1f/4".parse::<Vertex>().is_err()); // bit 4 not below width 4
    }

    #[test]
    fn big_width_round_trip() {
        let mut value = BigUint::ZERO;
        value.set_bit(200, true);
        value.set_bit(3, true);
        let v = Vertex::from_biguint(&value, 256).unwrap();
        assert_eq!(v.positions(), &[3, 200]);
        assert_eq!(v.value_biguint(), value);
        assert_eq!(v.value_u64(), None);
    }

    #[test]
    fn vertex_set_sorts_and_rejects_duplicates() {
        let s = VertexSet::from_values(&[4, 1, 2], 4).unwrap();
        let values: Vec<u64> = s.iter().map(|v| v.value_u64().unwrap()).collect();
        assert_eq!(values, [1, 2, 4]);
        assert!(VertexSet::from_values(&[1, 1], 4).is_err());
    }

    #[test]
    fn vertex_set_rejects_mixed_widths() {
        let a = Vertex::from_value(1, 4).unwrap();
        let b = Vertex::from_value(2, 5).unwrap();
        assert!(VertexSet::new(alloc::vec![a, b]).is_err());
    }

    #[test]
    fn subset_enumeration_counts() {
        let s = VertexSet::from_values(&[0, 1, 2, 3, 4], 3).unwrap();
        assert_eq!(s.subsets(3).len(), 10);
        assert_eq!(s.subsets(5).len(), 1);
        assert_eq!(s.subsets(6).len(), 0);
        let mut seen = 0;
        s.for_each_subset(2, |_| {
            seen += 1;
            seen < 4
        });
        assert_eq!(seen, 4); // early exit honoured
    }
}
