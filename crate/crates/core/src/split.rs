//! Splitting indices, caterpillars, the delta map, and type classification.
//!
//! Every stepping-up rule colours a subset by looking at the most significant
//! bit positions where its elements disagree. The functions here compute that
//! structure: the first splitting index partitions a set into a low and a high
//! block; caterpillars are the sets whose recursive split always isolates a
//! single element; `delta` collects the pairwise splitting indices of a
//! caterpillar; non-caterpillars carry a `(p,q)` type read off the first split
//! with two non-trivial sides.

use alloc::vec::Vec;

use rand::{Rng, RngExt};

use crate::partition::IntegerPartition;
use crate::vertex::{Vertex, VertexSet};
use crate::{Error, Result};

/// The binary expansion of `n`: its set-bit positions, ascending.
pub fn binary_expansion(n: u64) -> Vec<u64> {
    (0..64).filter(|&i| n >> i & 1 == 1).collect()
}

/// Outcome of splitting a set at its first splitting index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// The most significant bit position where two elements differ.
    pub index: u64,
    /// Elements without the bit; everything here is below everything in `high`.
    pub low: VertexSet,
    /// Elements with the bit set.
    pub high: VertexSet,
}

/// Splits `s` at its first splitting index. Requires at least two elements.
pub fn first_split(s: &VertexSet) -> Result<SplitResult> {
    let index = split_index(s)?;
    let (mut low, mut high) = (Vec::new(), Vec::new());
    for v in s.iter() {
        if v.has_bit(index) {
            high.push(v.clone());
        } else {
            low.push(v.clone());
        }
    }
    Ok(SplitResult {
        index,
        low: VertexSet::new(low)?,
        high: VertexSet::new(high)?,
    })
}

/// The first splitting index alone, without materializing the two blocks.
pub fn split_index(s: &VertexSet) -> Result<u64> {
    if s.len() < 2 {
        return Err(Error::SetTooSmall {
            need: 2,
            got: s.len(),
        });
    }
    // Walk all position lists downward in lock step; the first position not
    // shared by every element is the split.
    let mut cursor: Vec<usize> = s.iter().map(|v| v.positions().len()).collect();
    loop {
        let mut top: Option<u64> = None;
        for (v, &c) in s.iter().zip(&cursor) {
            if c > 0 {
                let p = v.positions()[c - 1];
                top = Some(top.map_or(p, |t: u64| t.max(p)));
            }
        }
        let Some(p) = top else {
            // all cursors exhausted: the elements were identical, which the
            // set invariant rules out
            return Err(Error::DuplicateVertex);
        };
        let mut everyone = true;
        for (v, c) in s.iter().zip(&mut cursor) {
            if *c > 0 && v.positions()[*c - 1] == p {
                *c -= 1;
            } else {
                everyone = false;
            }
        }
        if !everyone {
            return Ok(p);
        }
    }
}

/// The splitting index of a pair of vertices.
pub fn pair_split_index(x: &Vertex, y: &Vertex) -> Result<u64> {
    // max of the symmetric difference of the two position sets
    let (mut a, mut b) = (x.positions().iter().rev(), y.positions().iter().rev());
    let (mut pa, mut pb) = (a.next(), b.next());
    loop {
        match (pa, pb) {
            (None, None) => return Err(Error::DuplicateVertex),
            (Some(&p), None) | (None, Some(&p)) => return Ok(p),
            (Some(&p), Some(&q)) => {
                if p == q {
                    pa = a.next();
                    pb = b.next();
                } else {
                    return Ok(p.max(q));
                }
            }
        }
    }
}

/// Whether `s` is a caterpillar: the empty set and singletons are; a larger
/// set is one exactly when its first split isolates a singleton on one side
/// and a caterpillar on the other.
pub fn is_caterpillar(s: &VertexSet) -> bool {
    let mut current = s.clone();
    loop {
        if current.len() <= 2 {
            return true;
        }
        let Ok(split) = first_split(&current) else {
            return true;
        };
        current = match (split.low.len(), split.high.len()) {
            (1, _) => split.high,
            (_, 1) => split.low,
            _ => return false,
        };
    }
}

/// The set of pairwise splitting indices of a non-empty caterpillar.
/// Its size is always one less than the set's.
pub fn delta(s: &VertexSet) -> Result<Vec<u64>> {
    if s.is_empty() {
        return Err(Error::SetTooSmall { need: 1, got: 0 });
    }
    if !is_caterpillar(s) {
        return Err(Error::NotACaterpillar);
    }
    let mut indices = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            indices.push(pair_split_index(s.get(i), s.get(j))?);
        }
    }
    indices.sort_unstable();
    indices.dedup();
    debug_assert_eq!(indices.len(), s.len() - 1);
    Ok(indices)
}

/// Classification of a set by its split structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeTag {
    Caterpillar,
    /// Sizes of the two blocks at the first split where both have >= 2
    /// elements, reached by recursing through singleton sides.
    Type(u32, u32),
}

/// The type of a set of at least two elements.
pub fn type_of(s: &VertexSet) -> Result<TypeTag> {
    if s.len() < 2 {
        return Err(Error::SetTooSmall {
            need: 2,
            got: s.len(),
        });
    }
    let mut current = s.clone();
    loop {
        if current.len() <= 2 {
            return Ok(TypeTag::Caterpillar);
        }
        let split = first_split(&current)?;
        current = match (split.low.len(), split.high.len()) {
            (1, _) => split.high,
            (_, 1) => split.low,
            (p, q) => return Ok(TypeTag::Type(p as u32, q as u32)),
        };
    }
}

/// The histogram of a non-empty value sequence: the multiplicities of its
/// distinct values, as a partition of the sequence length.
pub fn histogram(values: &[u64]) -> Result<IntegerPartition> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut sorted: Vec<u64> = values.to_vec();
    sorted.sort_unstable();
    let mut counts = Vec::new();
    let mut run = 1u32;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            counts.push(run);
            run = 1;
        }
    }
    counts.push(run);
    IntegerPartition::from_multiset(counts)
}

/// Picks a 4-element caterpillar out of a 5-element set. One always exists,
/// and the choice is deterministic: it depends only on the shape of the
/// first split.
pub fn find_caterpillar4(s: &VertexSet) -> Result<VertexSet> {
    if s.len() != 5 {
        return Err(Error::SizeMismatch {
            need: 5,
            got: s.len(),
        });
    }
    let split = first_split(s)?;
    let pick = |block: &VertexSet, count: usize| -> Vec<Vertex> {
        block.iter().take(count).cloned().collect()
    };
    let mut chosen = match (split.low.len(), split.high.len()) {
        // a singleton side stays whole; the other side is trimmed to a
        // 3-subset, which is always a caterpillar
        (1, 4) => [pick(&split.low, 1), pick(&split.high, 3)].concat(),
        (4, 1) => [pick(&split.low, 3), pick(&split.high, 1)].concat(),
        // a 2-block is reduced to one element, leaving a singleton side
        (2, 3) => [pick(&split.low, 1), pick(&split.high, 3)].concat(),
        (3, 2) => [pick(&split.low, 3), pick(&split.high, 1)].concat(),
        _ => unreachable!("split of a 5-set has blocks summing to 5"),
    };
    chosen.sort_unstable();
    let result = VertexSet::new(chosen)?;
    debug_assert!(is_caterpillar(&result));
    Ok(result)
}

/// Draws a uniformly random `size`-subset of the ground set. For grounds
/// beyond machine-word range, vertices are drawn as sparse position sets
/// below `position_limit` instead.
pub fn random_subset<R: Rng>(
    rng: &mut R,
    size: usize,
    width: u64,
    ground: Option<u64>,
    position_limit: u64,
) -> Result<VertexSet> {
    if ground.is_none() && position_limit.min(width) == 0 {
        return Err(Error::OutOfRange(alloc::string::String::from(
            "no positions available for sparse draws",
        )));
    }
    let mut elements: Vec<Vertex> = Vec::with_capacity(size);
    let mut guard = 0u32;
    while elements.len() < size {
        guard += 1;
        if guard > 10_000 {
            return Err(Error::OutOfRange(alloc::format!(
                "cannot draw {size} distinct vertices"
            )));
        }
        let v = match ground {
            Some(n) => Vertex::from_value(rng.random_range(0..n), width)?,
            None => {
                let limit = position_limit.min(width);
                let bits = rng.random_range(1..=32.min(limit));
                let positions = (0..bits).map(|_| rng.random_range(0..limit));
                Vertex::from_positions(positions, width)?
            }
        };
        if !elements.contains(&v) {
            elements.push(v);
        }
    }
    VertexSet::new(elements)
}

/// Generates a random caterpillar of the given size, all bit positions below
/// `position_limit`.
///
/// The construction adjoins one element per splitting index along a random
/// descending spine: element `j` agrees with all later elements above spine
/// position `p_j`, sits on a random side of the split there, and carries
/// random noise bits below it.
pub fn random_caterpillar<R: Rng>(
    rng: &mut R,
    size: usize,
    width: u64,
    position_limit: u64,
) -> Result<VertexSet> {
    let limit = position_limit.min(width);
    if size == 0 {
        return Ok(VertexSet::empty());
    }
    if (size as u64) > limit + 1 {
        return Err(Error::OutOfRange(alloc::format!(
            "caterpillar of size {size} needs {} bit positions, limit is {limit}",
            size - 1
        )));
    }
    if size == 1 {
        let v = if limit == 0 {
            Vertex::zero(width)
        } else {
            Vertex::from_positions(
                (0..rng.random_range(0..4u32)).map(|_| rng.random_range(0..limit)),
                width,
            )?
        };
        return VertexSet::new(alloc::vec![v]);
    }
    // distinct spine positions, descending
    let mut spine: Vec<u64> = Vec::with_capacity(size - 1);
    while spine.len() < size - 1 {
        let p = rng.random_range(0..limit);
        if !spine.contains(&p) {
            spine.push(p);
        }
    }
    spine.sort_unstable_by(|a, b| b.cmp(a));
    let sides: Vec<bool> = (0..size - 1).map(|_| rng.random_bool(0.5)).collect();

    let mut elements = Vec::with_capacity(size);
    for j in 0..size {
        let mut positions: Vec<u64> = Vec::new();
        // shared prefix: the continuing side of every earlier split
        for i in 0..j.min(size - 1) {
            if !sides[i] {
                positions.push(spine[i]);
            }
        }
        // this element's own side of its split
        let isolation = if j < size - 1 {
            if sides[j] {
                positions.push(spine[j]);
            }
            spine[j]
        } else {
            // the last survivor: noise goes below the lowest spine position
            spine[size - 2]
        };
        // noise bits strictly below the isolation point, off the spine
        for _ in 0..rng.random_range(0..3u32) {
            if isolation > 0 {
                let p = rng.random_range(0..isolation);
                if !spine.contains(&p) {
                    positions.push(p);
                }
            }
        }
        elements.push(Vertex::from_positions(positions, width)?);
    }
    let set = VertexSet::new(elements)?;
    debug_assert!(is_caterpillar(&set));
    Ok(set)
}

/// Generates a random non-caterpillar of type `(p, q)` and total size `size`
/// (so `size - p - q` singleton paddings are wrapped around the core split).
pub fn random_typed<R: Rng>(
    rng: &mut R,
    p: u32,
    q: u32,
    size: usize,
    width: u64,
    position_limit: u64,
) -> Result<VertexSet> {
    let limit = position_limit.min(width);
    if p < 2 || q < 2 || (p + q) as usize > size {
        return Err(Error::OutOfRange(alloc::format!(
            "type ({p},{q}) needs p,q >= 2 and p+q <= {size}"
        )));
    }
    let pads = size - (p + q) as usize;
    // Budget positions: the core uses a boundary bit plus blocks below it;
    // each padding consumes one fresh high bit.
    let core_bits = (p.max(q) as u64 + 2).max(6);
    let need = core_bits + pads as u64 + 1;
    if need > limit {
        return Err(Error::OutOfRange(alloc::format!(
            "type ({p},{q}) with {pads} paddings needs {need} bits, limit is {limit}"
        )));
    }
    let boundary = core_bits - 1;
    // low block: p distinct values below the boundary bit
    let mut lows: Vec<Vertex> = Vec::new();
    while lows.len() < p as usize {
        let positions =
            (0..rng.random_range(1..=boundary.min(8))).map(|_| rng.random_range(0..boundary));
        let v = Vertex::from_positions(positions, width)?;
        if !lows.contains(&v) {
            lows.push(v);
        }
    }
    // high block: boundary bit set, q distinct values
    let mut highs: Vec<Vertex> = Vec::new();
    while highs.len() < q as usize {
        let mut positions: Vec<u64> = (0..rng.random_range(0..=boundary.min(8)))
            .map(|_| rng.random_range(0..boundary))
            .collect();
        positions.push(boundary);
        let v = Vertex::from_positions(positions, width)?;
        if !highs.contains(&v) {
            highs.push(v);
        }
    }
    let mut elements: Vec<Vertex> = [lows, highs].concat();
    // Wrap paddings: "above" adjoins a fresh top-bit singleton; "below" gives
    // every current element a fresh shared top bit and adjoins a low element.
    for next_high in (boundary + 1..).take(pads) {
        if rng.random_bool(0.5) {
            elements.push(Vertex::from_positions([next_high], width)?);
        } else {
            for e in &mut elements {
                let mut positions = e.positions().to_vec();
                positions.push(next_high);
                *e = Vertex::from_positions(positions, width)?;
            }
            let low = Vertex::from_positions(
                (0..rng.random_range(0..3u32)).map(|_| rng.random_range(0..boundary)),
                width,
            )?;
            elements.push(low);
        }
    }
    let set = VertexSet::new(elements)?;
    debug_assert_eq!(type_of(&set)?, TypeTag::Type(p, q));
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(values: &[u64], width: u64) -> VertexSet {
        VertexSet::from_values(values, width).unwrap()
    }

    #[test]
    fn binary_expansion_examples() {
        assert!(binary_expansion(0).is_empty());
        assert_eq!(binary_expansion(5), [0, 2]);
        assert_eq!(binary_expansion(31), [0, 1, 2, 3, 4]);
    }

    #[test]
    fn first_split_examples() {
        let s = set(&[0, 1, 2, 4], 4);
        let split = first_split(&s).unwrap();
        assert_eq!(split.index, 2);
        assert_eq!(split.low, set(&[0, 1, 2], 4));
        assert_eq!(split.high, set(&[4], 4));

        let s = set(&[0, 1, 2, 3], 4);
        let split = first_split(&s).unwrap();
        assert_eq!(split.index, 1);
        assert_eq!(split.low, set(&[0, 1], 4));
        assert_eq!(split.high, set(&[2, 3], 4));

        let s = set(&[6, 31], 5);
        let split = first_split(&s).unwrap();
        assert_eq!(split.index, 4);
        assert_eq!(split.low, set(&[6], 5));
        assert_eq!(split.high, set(&[31], 5));
    }

    #[test]
    fn first_split_needs_two_elements() {
        assert!(first_split(&set(&[3], 4)).is_err());
        assert!(first_split(&VertexSet::empty()).is_err());
    }

    #[test]
    fn split_blocks_are_ordered() {
        let s = set(&[3, 9, 12, 14, 21], 5);
        let split = first_split(&s).unwrap();
        assert!(split.low.max().unwrap() < split.high.min().unwrap());
        assert_eq!(split.low.len() + split.high.len(), s.len());
    }

    #[test]
    fn caterpillar_examples() {
        assert!(is_caterpillar(&set(&[0, 1, 2, 4], 4)));
        assert!(!is_caterpillar(&set(&[0, 1, 2, 3], 4)));
        // every set of at most three naturals is one
        assert!(is_caterpillar(&VertexSet::empty()));
        assert!(is_caterpillar(&set(&[7], 4)));
        assert!(is_caterpillar(&set(&[3, 9], 5)));
        assert!(is_caterpillar(&set(&[3, 9, 12], 5)));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&set(&[1, 3, 6, 31], 5)).unwrap(), [1, 2, 4]);
        assert_eq!(delta(&set(&[9], 5)).unwrap(), Vec::<u64>::new());
        // pairwise oracle: all six pairs of {0,1,2,4}
        assert_eq!(delta(&set(&[0, 1, 2, 4], 4)).unwrap(), [0, 1, 2]);
    }

    #[test]
    fn delta_rejects_non_caterpillars_and_empty() {
        assert_eq!(
            delta(&set(&[0, 1, 2, 3], 4)),
            Err(Error::NotACaterpillar)
        );
        assert!(delta(&VertexSet::empty()).is_err());
    }

    #[test]
    fn type_examples() {
        assert_eq!(
            type_of(&set(&[0, 1, 2, 3, 4, 8], 4)).unwrap(),
            TypeTag::Type(2, 2)
        );
        assert_eq!(type_of(&set(&[0, 1, 2, 3], 4)).unwrap(), TypeTag::Type(2, 2));
        assert_eq!(type_of(&set(&[0, 1, 2, 4], 4)).unwrap(), TypeTag::Caterpillar);
        assert!(type_of(&set(&[3], 4)).is_err());
    }

    #[test]
    fn histogram_examples() {
        let h = histogram(&[9, 7, 7, 7, 15, 15]).unwrap();
        assert_eq!(h.parts(), &[3, 2, 1]);
        let h = histogram(&[4, 4, 4]).unwrap();
        assert_eq!(h.parts(), &[3]);
        let h = histogram(&[2, 3, 3, 3, 15]).unwrap();
        assert_eq!(h.parts(), &[3, 1, 1]);
        assert!(histogram(&[]).is_err());
    }

    #[test]
    fn caterpillar4_follows_the_split_shape() {
        // split {a} | {b,c,d,e}
        let s = set(&[0, 16, 17, 20, 24], 5);
        let c = find_caterpillar4(&s).unwrap();
        assert_eq!(c, set(&[0, 16, 17, 20], 5));
        // split {a,b} | {c,d,e}
        let s = set(&[0, 1, 16, 17, 20], 5);
        let c = find_caterpillar4(&s).unwrap();
        assert_eq!(c, set(&[0, 16, 17, 20], 5));
        // brute-force cross-check on a set where the proof picks differently
        let s = set(&[0, 1, 2, 3, 4], 3);
        let c = find_caterpillar4(&s).unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_caterpillar(&c));
        assert!(c.iter().all(|v| s.contains(v)));
        assert!(find_caterpillar4(&set(&[0, 1, 2], 3)).is_err());
    }

    #[test]
    fn generators_produce_what_they_promise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in 1..=12 {
            let s = random_caterpillar(&mut rng, size, 64, 64).unwrap();
            assert_eq!(s.len(), size);
            assert!(is_caterpillar(&s), "size {size}: {s}");
        }
        for &(p, q, size) in &[(2u32, 2u32, 4usize), (2, 3, 5), (3, 2, 7), (4, 4, 10)] {
            let s = random_typed(&mut rng, p, q, size, 64, 64).unwrap();
            assert_eq!(s.len(), size);
            assert_eq!(type_of(&s).unwrap(), TypeTag::Type(p, q));
        }
        let s = random_subset(&mut rng, 5, 32, Some(1 << 32), 1 << 20).unwrap();
        assert_eq!(s.len(), 5);
        // sparse draw at a huge level
        let s = random_subset(&mut rng, 6, 1 << 32, None, 1 << 20).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|v| v.top_position().unwrap_or(0) < 1 << 20));
    }
}
