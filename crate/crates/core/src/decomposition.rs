//! Vertex interchangeability and monomorphic decompositions.
//!
//! Two vertices are interchangeable when swapping one for the other never
//! changes edge membership; the classes of that relation partition the
//! vertex set into constant blocks, and that partition is the coarsest way
//! to split the vertices so that edge membership depends only on how an
//! h-subset meets each block. `minimum_constant_support` extracts the
//! smallest vertex set F such that membership depends only on the trace
//! on F.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::numth::colex_masks;

/// A partition of the vertex set 0..v-1 into disjoint nonempty blocks.
///
/// Canonical form: each block sorted ascending, blocks ordered by least
/// element, so structural equality is partition equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates and canonicalizes a partition of 0..v-1.
    pub fn new<I: IntoIterator<Item = Vec<usize>>>(v: usize, blocks: I) -> Result<Partition> {
        let mut seen = vec![false; v];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            block.sort_unstable();
            for w in block.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::BadPartition(format!(
                        "vertex {} repeats within a block",
                        w[0]
                    )));
                }
            }
            for &x in &block {
                if x >= v {
                    return Err(Error::BadPartition(format!(
                        "vertex {x} out of range for v = {v}"
                    )));
                }
                if seen[x] {
                    return Err(Error::BadPartition(format!(
                        "vertex {x} appears in two blocks"
                    )));
                }
                seen[x] = true;
            }
            out.push(block);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::BadPartition(format!(
                "vertex {missing} is not covered"
            )));
        }
        out.sort_by_key(|b| b[0]);
        Ok(Partition { v, blocks: out })
    }

    /// The partition of 0..v-1 into singletons.
    pub fn singletons(v: usize) -> Partition {
        Partition {
            v,
            blocks: (0..v).map(|x| vec![x]).collect(),
        }
    }

    /// The one-block partition (empty for v = 0).
    pub fn single_block(v: usize) -> Partition {
        Partition {
            v,
            blocks: if v == 0 { Vec::new() } else { vec![(0..v).collect()] },
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The block containing vertex x.
    pub fn block_containing(&self, x: usize) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&x).is_ok())
            .map(|b| b.as_slice())
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.v == coarser.v
            && self.blocks.iter().all(|b| {
                coarser
                    .block_containing(b[0])
                    .is_some_and(|c| b.iter().all(|x| c.binary_search(x).is_ok()))
            })
    }
}

/// Every partition of 0..v-1, enumerated via restricted growth strings.
/// Bell numbers grow fast; meant for exhaustive verification at small v.
pub fn all_partitions(v: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; v];
    fn descend(assignment: &mut Vec<usize>, i: usize, max_used: usize, v: usize, out: &mut Vec<Partition>) {
        if i == v {
            let blocks = (0..max_used).map(|b| {
                (0..v).filter(|&x| assignment[x] == b).collect::<Vec<_>>()
            });
            out.push(Partition::new(v, blocks).expect("growth string yields a partition"));
            return;
        }
        for b in 0..=max_used {
            assignment[i] = b;
            descend(assignment, i + 1, max_used.max(b + 1), v, out);
        }
    }
    if v == 0 {
        return vec![Partition { v: 0, blocks: Vec::new() }];
    }
    descend(&mut assignment, 0, 0, v, &mut out);
    out
}

/// True when vertices x and y are interchangeable in `g`: every (h-1)-subset
/// K of the remaining vertices satisfies g(K ∪ {x}) = g(K ∪ {y}).
/// Reflexive by convention.
pub fn equiv(g: &Hypergraph, x: usize, y: usize) -> Result<bool> {
    for z in [x, y] {
        if z >= g.v() {
            return Err(Error::VertexOutOfRange { vertex: z, v: g.v() });
        }
    }
    if x == y {
        return Ok(true);
    }
    let others: Vec<usize> = (0..g.v()).filter(|&z| z != x && z != y).collect();
    let t = g.h() - 1;
    for pattern in colex_masks(others.len(), t) {
        let mut k = 0u64;
        let mut rest = pattern;
        while rest != 0 {
            k |= 1 << others[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        if g.has_edge(k | 1 << x) != g.has_edge(k | 1 << y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The partition of the vertex set into classes of the interchangeability
/// relation. The relation is transitive (verified as a test property), so
/// union-find may skip a pairwise check once its endpoints are already
/// merged through earlier positives.
pub fn components(g: &Hypergraph) -> Partition {
    let v = g.v();
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..v {
        for y in x + 1..v {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry && equiv(g, x, y).expect("vertices in range") {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..v {
        let root = find(&mut parent, x);
        classes.entry(root).or_default().push(x);
    }
    Partition::new(v, classes.into_values()).expect("classes partition the vertex set")
}

/// True when edge membership in `g` depends only on the intersection with
/// F: any two h-subsets with the same trace on F are both edges or both
/// non-edges. Checked by bucketing the h-subsets by trace.
pub fn is_f_constant_mask(g: &Hypergraph, fmask: u64) -> Result<bool> {
    if g.v() < 64 && fmask >> g.v() != 0 {
        return Err(Error::VertexOutOfRange {
            vertex: 63 - fmask.leading_zeros() as usize,
            v: g.v(),
        });
    }
    let fbits = fmask.count_ones() as usize;
    // Traces are subsets of F; compress them to fbits-bit keys.
    let mut position = [0u8; 64];
    let mut idx = 0u8;
    for b in 0..64u8 {
        if fmask >> b & 1 == 1 {
            position[b as usize] = idx;
            idx += 1;
        }
    }
    let compress = |trace: u64| {
        let mut out = 0u64;
        let mut rest = trace;
        while rest != 0 {
            out |= 1 << position[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    };
    if fbits <= 16 {
        // Dense bucket table: 0 unseen, 1 saw non-edge, 2 saw edge.
        let mut bucket = vec![0u8; 1 << fbits];
        for a in colex_masks(g.v(), g.h()) {
            let key = compress(a & fmask) as usize;
            let code = 1 + g.has_edge(a) as u8;
            if bucket[key] == 0 {
                bucket[key] = code;
            } else if bucket[key] != code {
                return Ok(false);
            }
        }
    } else {
        let mut bucket: HashMap<u64, bool> = HashMap::new();
        for a in colex_masks(g.v(), g.h()) {
            let value = g.has_edge(a);
            match bucket.entry(compress(a & fmask)) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(value);
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != value {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// [`is_f_constant_mask`] over a strictly increasing vertex list.
pub fn is_f_constant(g: &Hypergraph, f: &[usize]) -> Result<bool> {
    let mut mask = 0u64;
    for w in f.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::MalformedSubset(f.to_vec()));
        }
    }
    for &x in f {
        if x >= g.v() {
            return Err(Error::VertexOutOfRange { vertex: x, v: g.v() });
        }
        mask |= 1 << x;
    }
    is_f_constant_mask(g, mask)
}

/// True when every block of the partition is a constant block of `g`, i.e.
/// membership never depends on which vertices inside the block an h-subset
/// uses — equivalently `g` is (V ∖ B)-constant for every block B.
pub fn is_monomorphic_decomposition(g: &Hypergraph, p: &Partition) -> Result<bool> {
    if p.v() != g.v() {
        return Err(Error::BadPartition(format!(
            "partition covers {} vertices but the hypergraph has {}",
            p.v(),
            g.v()
        )));
    }
    let full = if g.v() == 64 { u64::MAX } else { (1u64 << g.v()) - 1 };
    for block in p.blocks() {
        let bmask: u64 = block.iter().fold(0, |m, &x| m | 1 << x);
        if !is_f_constant_mask(g, full & !bmask)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The smallest vertex set F such that `g` is F-constant: the complement of
/// a maximum-cardinality interchangeability class (ties broken toward the
/// class with the smallest least element). Returned sorted ascending.
pub fn minimum_constant_support(g: &Hypergraph) -> Vec<usize> {
    let comps = components(g);
    let max_len = comps.blocks().iter().map(|b| b.len()).max().unwrap_or(0);
    // Blocks are ordered by least element; the first maximal one wins ties.
    let best = comps
        .blocks()
        .iter()
        .find(|b| b.len() == max_len)
        .cloned()
        .unwrap_or_default();
    (0..g.v()).filter(|x| best.binary_search(x).is_err()).collect()
}
