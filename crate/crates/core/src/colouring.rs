//! The interface the verifier sees: something that colours fixed-size subsets
//! of a ground set.
//!
//! Verification never looks inside a construction; it only calls `colour_of`
//! and compares colours. Wrappers here restrict a colouring to a prefix of its
//! ground set (witnesses restrict), and plant deliberate corruptions for
//! verifier integrity tests.

use alloc::vec::Vec;

use crate::vertex::{Colour, VertexSet};
use crate::{Error, Result};

/// An `r`-subset colouring of a ground set whose vertices have a fixed width.
pub trait RankColouring: Sync {
    /// Subset size being coloured.
    fn uniformity(&self) -> u32;

    /// Number of colours the colouring may emit.
    fn colour_count(&self) -> u32;

    /// Ground-set size, when it fits a machine word. `None` means the ground
    /// set is too large to enumerate; only sampled checks apply.
    fn ground_size(&self) -> Option<u64>;

    /// Vertex width expected by `colour_of`.
    fn vertex_width(&self) -> u64;

    /// Highest usable bit position plus one; samplers stay below this.
    fn position_cap(&self) -> u64 {
        u64::MAX
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour>;
}

/// The same colouring restricted to ground elements `0..ground`.
pub struct Restriction<'a, C: RankColouring + ?Sized> {
    inner: &'a C,
    ground: u64,
}

impl<'a, C: RankColouring + ?Sized> Restriction<'a, C> {
    pub fn new(inner: &'a C, ground: u64) -> Result<Self> {
        if let Some(n) = inner.ground_size() {
            if ground > n {
                return Err(Error::OutOfRange(alloc::format!(
                    "restriction to {ground} exceeds ground size {n}"
                )));
            }
        }
        Ok(Restriction { inner, ground })
    }
}

impl<C: RankColouring + ?Sized> RankColouring for Restriction<'_, C> {
    fn uniformity(&self) -> u32 {
        self.inner.uniformity()
    }

    fn colour_count(&self) -> u32 {
        self.inner.colour_count()
    }

    fn ground_size(&self) -> Option<u64> {
        Some(self.ground)
    }

    fn vertex_width(&self) -> u64 {
        self.inner.vertex_width()
    }

    fn position_cap(&self) -> u64 {
        self.inner.position_cap()
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour> {
        for v in subset.iter() {
            match v.value_u64() {
                Some(x) if x < self.ground => {}
                _ => {
                    return Err(Error::OutOfRange(alloc::format!(
                        "vertex {v} outside restricted ground {}",
                        self.ground
                    )))
                }
            }
        }
        self.inner.colour_of(subset)
    }
}

/// A colouring with a deliberately forced monochromatic set: every
/// `uniformity`-subset of `plant` gets `colour`. Used to confirm the verifier
/// actually notices corruption.
pub struct PlantedColouring<'a, C: RankColouring + ?Sized> {
    inner: &'a C,
    plant: VertexSet,
    colour: Colour,
}

impl<'a, C: RankColouring + ?Sized> PlantedColouring<'a, C> {
    pub fn new(inner: &'a C, plant: VertexSet, colour: Colour) -> Self {
        PlantedColouring {
            inner,
            plant,
            colour,
        }
    }
}

impl<C: RankColouring + ?Sized> RankColouring for PlantedColouring<'_, C> {
    fn uniformity(&self) -> u32 {
        self.inner.uniformity()
    }

    fn colour_count(&self) -> u32 {
        self.inner.colour_count().max(self.colour.0 + 1)
    }

    fn ground_size(&self) -> Option<u64> {
        self.inner.ground_size()
    }

    fn vertex_width(&self) -> u64 {
        self.inner.vertex_width()
    }

    fn position_cap(&self) -> u64 {
        self.inner.position_cap()
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour> {
        if subset.is_subset_of(&self.plant) {
            Ok(self.colour)
        } else {
            self.inner.colour_of(subset)
        }
    }
}

/// A colouring backed by a plain function. Handy for random colourings in
/// tests and for tiny certified witnesses stored as lookup tables.
pub struct FnColouring<F: Fn(&VertexSet) -> Result<Colour> + Sync> {
    pub uniformity: u32,
    pub colours: u32,
    pub ground: u64,
    pub width: u64,
    pub f: F,
}

impl<F: Fn(&VertexSet) -> Result<Colour> + Sync> RankColouring for FnColouring<F> {
    fn uniformity(&self) -> u32 {
        self.uniformity
    }

    fn colour_count(&self) -> u32 {
        self.colours
    }

    fn ground_size(&self) -> Option<u64> {
        Some(self.ground)
    }

    fn vertex_width(&self) -> u64 {
        self.width
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour> {
        (self.f)(subset)
    }
}

/// A colouring of the `r`-subsets of `[ground]` stored as an explicit table,
/// indexed by the lexicographic rank of the subset's value list.
#[derive(Clone, Debug)]
pub struct TableColouring {
    pub uniformity: u32,
    pub colours: u32,
    pub ground: u64,
    pub width: u64,
    table: Vec<u32>,
}

impl TableColouring {
    pub fn new(uniformity: u32, colours: u32, ground: u64, table: Vec<u32>) -> Result<Self> {
        let expect = choose(ground, u64::from(uniformity));
        if expect != table.len() as u64 {
            return Err(Error::SizeMismatch {
                need: expect as usize,
                got: table.len(),
            });
        }
        let width = width_for_ground(ground);
        Ok(TableColouring {
            uniformity,
            colours,
            ground,
            width,
            table,
        })
    }

    /// Lexicographic rank of a sorted index set among all `k`-subsets of `[n]`.
    pub fn rank(n: u64, indices: &[u64]) -> u64 {
        let k = indices.len() as u64;
        let mut rank = 0;
        let mut prev = 0u64;
        for (i, &x) in indices.iter().enumerate() {
            for v in prev..x {
                rank += choose(n - v - 1, k - i as u64 - 1);
            }
            prev = x + 1;
        }
        rank
    }
}

impl RankColouring for TableColouring {
    fn uniformity(&self) -> u32 {
        self.uniformity
    }

    fn colour_count(&self) -> u32 {
        self.colours
    }

    fn ground_size(&self) -> Option<u64> {
        Some(self.ground)
    }

    fn vertex_width(&self) -> u64 {
        self.width
    }

    fn colour_of(&self, subset: &VertexSet) -> Result<Colour> {
        if subset.len() != self.uniformity as usize {
            return Err(Error::SizeMismatch {
                need: self.uniformity as usize,
                got: subset.len(),
            });
        }
        let values = subset
            .iter()
            .map(|v| {
                v.value_u64()
                    .filter(|&x| x < self.ground)
                    .ok_or(Error::OutOfRange(alloc::format!(
                        "vertex {v} outside ground {}",
                        self.ground
                    )))
            })
            .collect::<Result<Vec<u64>>>()?;
        let rank = Self::rank(self.ground, &values) as usize;
        Ok(Colour(self.table[rank]))
    }
}

/// Visits `k`-combinations of `items` in lexicographic order until `f`
/// returns false for one; returns whether every visited combination
/// satisfied `f`.
pub fn for_each_combination<T: Copy>(
    items: &[T],
    k: usize,
    mut f: impl FnMut(&[T]) -> bool,
) -> bool {
    let n = items.len();
    if k > n {
        return true;
    }
    if k == 0 {
        return f(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<T> = Vec::with_capacity(k);
    loop {
        chosen.clear();
        chosen.extend(idx.iter().map(|&i| items[i]));
        if !f(&chosen) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        match result.checked_mul(n - i) {
            Some(r) => result = r / (i + 1),
            None => {
                // fall back to a rounding-safe order: divide first
                let g = gcd(result, i + 1);
                let r = result / g;
                let d = (i + 1) / g;
                match r.checked_mul((n - i) / d) {
                    Some(v) if (n - i).is_multiple_of(d) => result = v,
                    _ => return u64::MAX,
                }
            }
        }
    }
    result
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Bits needed to address `[ground]`: the width of a vertex living there.
pub fn width_for_ground(ground: u64) -> u64 {
    match ground {
        0 | 1 => 0,
        n => 64 - (n - 1).leading_zeros() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::VertexSet;

    #[test]
    fn choose_small_values() {
        assert_eq!(choose(5, 2), 10);
        assert_eq!(choose(32, 5), 201_376);
        assert_eq!(choose(32, 4), 35_960);
        assert_eq!(choose(4, 0), 1);
        assert_eq!(choose(3, 5), 0);
    }

    #[test]
    fn widths() {
        assert_eq!(width_for_ground(1), 0);
        assert_eq!(width_for_ground(2), 1);
        assert_eq!(width_for_ground(5), 3);
        assert_eq!(width_for_ground(32), 5);
        assert_eq!(width_for_ground(33), 6);
    }

    #[test]
    fn subset_rank_is_lexicographic() {
        // all 2-subsets of [4] in lex order
        let expect = [[0u64, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        for (r, pair) in expect.iter().enumerate() {
            assert_eq!(TableColouring::rank(4, pair), r as u64);
        }
    }

    #[test]
    fn table_colouring_reads_back() {
        let table: Vec<u32> = (0..choose(5, 2) as u32).collect();
        let c = TableColouring::new(2, 10, 5, table).unwrap();
        let s = VertexSet::from_values(&[1, 3], 3).unwrap();
        assert_eq!(c.colour_of(&s).unwrap(), Colour(TableColouring::rank(5, &[1, 3]) as u32));
    }

    #[test]
    fn planted_overrides_subsets_of_the_plant() {
        let base = FnColouring {
            uniformity: 2,
            colours: 2,
            ground: 5,
            width: 3,
            f: |_s: &VertexSet| Ok(Colour(1)),
        };
        let plant = VertexSet::from_values(&[0, 1, 2], 3).unwrap();
        let planted = PlantedColouring::new(&base, plant, Colour(0));
        let inside = VertexSet::from_values(&[0, 2], 3).unwrap();
        let outside = VertexSet::from_values(&[0, 3], 3).unwrap();
        assert_eq!(planted.colour_of(&inside).unwrap(), Colour(0));
        assert_eq!(planted.colour_of(&outside).unwrap(), Colour(1));
    }
}
