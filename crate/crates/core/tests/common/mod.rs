//! Shared helpers for the integration suites: the unpruned reference
//! verifier and small random generators.

use rand::{Rng, RngExt};

use ramsey_core::colouring::RankColouring;
use ramsey_core::vertex::{Colour, VertexSet};
use ramsey_core::{ArrowClaim, Hypergraph};

/// Outcome of the naive all-subsets check.
pub struct NaiveOutcome {
    pub pass: bool,
    pub sets_examined: u64,
    #[allow(dead_code)] // diagnostic; not every suite reads it
    pub witness: Option<(Colour, VertexSet)>,
}

/// The reference verifier: enumerates, for every distinct target size, every
/// subset of that size and evaluates all its r-subsets with no pruning or
/// early exit. Deliberately independent of the clique-extension search.
pub fn naive_verify(colouring: &dyn RankColouring, claim: &ArrowClaim) -> NaiveOutcome {
    let ground = claim.ground().as_u64().expect("naive oracle needs a small ground");
    let width = colouring.vertex_width();
    let r = colouring.uniformity() as usize;
    let mut sizes: Vec<u32> = claim.targets().to_vec();
    sizes.sort_unstable();
    sizes.dedup();

    let all = VertexSet::from_values(&(0..ground).collect::<Vec<u64>>(), width)
        .expect("ground vertices");
    let mut sets_examined = 0u64;
    let mut witness: Option<(Colour, VertexSet)> = None;

    for &size in &sizes {
        if u64::from(size) > ground {
            continue;
        }
        all.for_each_subset(size as usize, |candidate| {
            sets_examined += 1;
            let mut colours: Vec<Colour> = Vec::new();
            candidate.for_each_subset(r, |sub| {
                colours.push(colouring.colour_of(sub).expect("evaluable"));
                true
            });
            let mono = colours.windows(2).all(|w| w[0] == w[1]);
            if mono {
                if let Some(&first) = colours.first() {
                    let idx = first.0 as usize;
                    if idx < claim.targets().len()
                        && u64::from(claim.targets()[idx]) <= u64::from(size)
                        && witness.is_none()
                    {
                        witness = Some((first, candidate.clone()));
                    }
                }
            }
            true
        });
    }
    NaiveOutcome {
        pass: witness.is_none(),
        sets_examined,
        witness,
    }
}

/// A random hypergraph on at most `max_vertices` vertices whose edges have
/// sizes in `r+1 ..= r+3`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_vertices: usize, r: u32) -> Hypergraph {
    let min_vertices = (r + 2) as usize;
    let n = rng.random_range(min_vertices..=max_vertices.max(min_vertices));
    let edge_count = rng.random_range(1..=6usize);
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let size = rng.random_range((r + 1) as usize..=((r + 3) as usize).min(n));
        let mut edge = Vec::with_capacity(size);
        while edge.len() < size {
            let v = rng.random_range(0..n);
            if !edge.contains(&v) {
                edge.push(v);
            }
        }
        edges.push(edge);
    }
    Hypergraph::new(n, edges).expect("generated edges are valid")
}

/// Random distinct values below `bound`.
pub fn random_values<R: Rng>(rng: &mut R, count: usize, bound: u64) -> Vec<u64> {
    assert!(bound >= count as u64);
    let mut values = Vec::with_capacity(count);
    while values.len() < count {
        let v = rng.random_range(0..bound);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    values
}
