//! Generators for pairs of hypergraphs that defeat reconstruction below the
//! threshold: not equal up to complementation, yet hypomorphic up to
//! complementation at every subset size through h + r − 1.
//!
//! The engine is a two-class partition of the proper nonempty subsets of a
//! pivot set F = {0..r-1} that anti-commutes with the circular shift: a
//! subset and its shift always land in opposite classes. Such a partition
//! exists exactly when r is a power of two. One hypergraph takes as edges
//! the h-subsets whose trace on F falls in the first class; the partner
//! additionally includes every h-subset containing all of F. Both are
//! F-constant, so their disagreement is confined to the pivot set, and the
//! anti-commuting classes make every small induced comparison balance out.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::{EqualUtcVerdict, Hypergraph, Hypomorphy};

/// A partition of the proper nonempty subsets of {0..r-1} (as bitmasks)
/// into two classes such that the circular shift i ↦ i+1 mod r always maps
/// a subset into the class opposite its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityPartition {
    r: usize,
    class_a: BTreeSet<u64>,
}

impl DualityPartition {
    pub fn r(&self) -> usize {
        self.r
    }

    /// True when the subset lies in the first class. Subsets outside the
    /// proper nonempty range (the empty set, the full set) are in neither
    /// class and report false.
    pub fn in_class_a(&self, subset: u64) -> bool {
        self.class_a.contains(&subset)
    }

    /// First-class subsets in colex order.
    pub fn class_a(&self) -> impl Iterator<Item = u64> + '_ {
        self.class_a.iter().copied()
    }

    pub fn class_a_len(&self) -> usize {
        self.class_a.len()
    }

    /// The circular shift on subsets of {0..r-1}: each element i moves to
    /// i+1 mod r.
    pub fn shift(&self, subset: u64) -> u64 {
        rotate_mask(subset, self.r)
    }
}

fn rotate_mask(subset: u64, r: usize) -> u64 {
    let full = (1u64 << r) - 1;
    ((subset << 1) | (subset >> (r - 1))) & full
}

/// True when the two-class anti-commuting partition of the proper nonempty
/// subsets of an r-set exists, for r ≥ 2: exactly at powers of two. (The
/// test suite cross-checks this against an exhaustive search over all
/// permutations for small r.)
pub fn duality_partition_exists(r: usize) -> bool {
    r >= 2 && r.is_power_of_two()
}

/// Builds the anti-commuting two-class partition for a power of two r ≥ 2.
///
/// The circular shift's orbits on proper nonempty subsets all have even
/// length when r is a power of two, so alternating classes around each
/// orbit — seeded so the orbit's colex-least subset lands in the first
/// class — is well-defined. The result is checked before being returned.
pub fn duality_partition(r: usize) -> Result<DualityPartition> {
    if !duality_partition_exists(r) {
        return Err(Error::Precondition(format!(
            "the anti-commuting subset partition exists only when r is a power of two \
             and r >= 2, got r = {r}"
        )));
    }
    let full = (1u64 << r) - 1;
    let mut class_a = BTreeSet::new();
    let mut visited = vec![false; full as usize + 1];
    for start in 1..full {
        if visited[start as usize] {
            continue;
        }
        // Ascending scan order means `start` is its orbit's least element.
        let mut orbit = vec![start];
        visited[start as usize] = true;
        let mut cur = rotate_mask(start, r);
        while cur != start {
            visited[cur as usize] = true;
            orbit.push(cur);
            cur = rotate_mask(cur, r);
        }
        assert!(
            orbit.len() % 2 == 0,
            "internal: shift orbit of {start:#b} has odd length {} at r = {r}",
            orbit.len()
        );
        for (idx, &subset) in orbit.iter().enumerate() {
            if idx % 2 == 0 {
                class_a.insert(subset);
            }
        }
    }
    let partition = DualityPartition { r, class_a };
    for subset in 1..full {
        assert!(
            partition.in_class_a(subset) != partition.in_class_a(partition.shift(subset)),
            "internal: subset {subset:#b} and its shift fell in the same class at r = {r}"
        );
    }
    Ok(partition)
}

/// Builds the counterexample pair on v vertices: edges of the first
/// hypergraph are the h-subsets whose trace on F = {0..r-1} lies in the
/// first class of the anti-commuting partition; the second additionally
/// has every h-subset containing F. Requires 2 ≤ r ≤ h with r a power of
/// two, and v ≥ h + r.
pub fn build_counterexample_pair(
    h: usize,
    r: usize,
    v: usize,
) -> Result<(Hypergraph, Hypergraph)> {
    if r > h {
        return Err(Error::Precondition(format!(
            "the pivot set cannot exceed the edge size: r = {r}, h = {h}"
        )));
    }
    let partition = duality_partition(r)?;
    if v < h + r {
        return Err(Error::ValueTooSmall {
            what: "v",
            min: (h + r) as u64,
            got: v as u64,
        });
    }
    let fmask = (1u64 << r) - 1;
    let a = Hypergraph::from_predicate(v, h, |m| partition.in_class_a(m & fmask))?;
    let b = Hypergraph::from_predicate(v, h, |m| {
        partition.in_class_a(m & fmask) || m & fmask == fmask
    })?;
    Ok((a, b))
}

/// Verdict and timing for one subset size of a counterexample verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KReport {
    pub k: usize,
    pub hypomorphy: Hypomorphy,
    pub elapsed_ms: u128,
}

/// Full verification record for a counterexample pair: the pair must be
/// neither equal nor complementary, yet hypomorphic up to complementation
/// at every subset size 1..=h+r-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub h: usize,
    pub r: usize,
    pub v: usize,
    pub max_k: usize,
    pub equal_utc: EqualUtcVerdict,
    pub per_k: Vec<KReport>,
    pub all_pass: bool,
}

/// Builds the (h, r, v) counterexample pair and checks every claim about it
/// directly: equality up to complementation must fail, and k-hypomorphy up
/// to complementation must hold for each k ≤ h + r − 1, each verified by an
/// exhaustive scan over all k-subsets (`jobs` worker threads). Nothing is
/// inferred from larger subset sizes.
pub fn verify_counterexample_pair(
    h: usize,
    r: usize,
    v: usize,
    jobs: usize,
) -> Result<CounterexampleReport> {
    let (a, b) = build_counterexample_pair(h, r, v)?;
    let equal_utc = a.is_equal_utc(&b)?;
    let max_k = h + r - 1;
    let mut per_k = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let clock = Instant::now();
        let hypomorphy = a.are_k_hypomorphic_utc_jobs(&b, k, jobs)?;
        per_k.push(KReport {
            k,
            hypomorphy,
            elapsed_ms: clock.elapsed().as_millis(),
        });
    }
    let all_pass =
        equal_utc == EqualUtcVerdict::Neither && per_k.iter().all(|r| r.hypomorphy.holds());
    Ok(CounterexampleReport {
        h,
        r,
        v,
        max_k,
        equal_utc,
        per_k,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::is_f_constant;
    use crate::numth::{binomial_u64, subset_to_mask};
    use itertools::Itertools;

    #[test]
    fn duality_partition_smallest_case() {
        let p = duality_partition(2).unwrap();
        assert_eq!(p.class_a().collect::<Vec<_>>(), vec![0b01]);
        assert!(p.in_class_a(0b01));
        assert!(!p.in_class_a(0b10));
        assert!(!p.in_class_a(0b00), "empty set is in neither class");
        assert!(!p.in_class_a(0b11), "full set is in neither class");
        assert_eq!(p.shift(0b01), 0b10);
        assert_eq!(p.shift(0b10), 0b01);
    }

    #[test]
    fn duality_partition_classes_split_evenly() {
        for r in [2usize, 4, 8] {
            let p = duality_partition(r).unwrap();
            let proper = (1u64 << r) - 2;
            assert_eq!(
                p.class_a_len() as u64,
                proper / 2,
                "shift pairs the classes off evenly at r = {r}"
            );
        }
        assert_eq!(duality_partition(4).unwrap().class_a_len(), 7);
    }

    #[test]
    fn duality_property_and_even_orbits_exhaustive() {
        for r in [2usize, 4, 8] {
            let p = duality_partition(r).unwrap();
            let full = (1u64 << r) - 1;
            let mut visited = vec![false; full as usize + 1];
            for x in 1..full {
                assert_ne!(
                    p.in_class_a(x),
                    p.in_class_a(p.shift(x)),
                    "r={r} x={x:#b}"
                );
                if !visited[x as usize] {
                    let mut len = 0usize;
                    let mut cur = x;
                    loop {
                        visited[cur as usize] = true;
                        len += 1;
                        cur = p.shift(cur);
                        if cur == x {
                            break;
                        }
                    }
                    assert_eq!(len % 2, 0, "orbit of {x:#b} at r={r}");
                }
            }
        }
    }

    #[test]
    fn duality_partition_rejects_non_powers() {
        for r in [0usize, 1, 3, 5, 6, 7, 12] {
            assert!(duality_partition(r).is_err(), "r = {r}");
        }
    }

    /// Exhaustive oracle: some permutation of {0..r-1} admits an
    /// anti-commuting two-class partition. For a fixed permutation the
    /// classes must alternate along each orbit of its action on proper
    /// nonempty subsets, so a valid partition exists for it exactly when
    /// every orbit has even length; existence overall is a search over all
    /// r! permutations.
    fn exists_by_exhaustion(r: usize) -> bool {
        let full = (1u64 << r) - 1;
        (0..r).permutations(r).any(|perm| {
            let act = |x: u64| {
                let mut out = 0u64;
                let mut rest = x;
                while rest != 0 {
                    out |= 1 << perm[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                out
            };
            let mut visited = vec![false; full as usize + 1];
            for x in 1..full {
                if visited[x as usize] {
                    continue;
                }
                let mut len = 0usize;
                let mut cur = x;
                loop {
                    visited[cur as usize] = true;
                    len += 1;
                    cur = act(cur);
                    if cur == x {
                        break;
                    }
                }
                if len % 2 == 1 {
                    return false;
                }
            }
            true
        })
    }

    #[test]
    fn existence_matches_exhaustive_permutation_search() {
        for r in 2..=7 {
            assert_eq!(
                duality_partition_exists(r),
                exists_by_exhaustion(r),
                "r = {r}"
            );
        }
    }

    #[test]
    fn smallest_pair_unfolds_to_explicit_edge_sets() {
        let (a, b) = build_counterexample_pair(2, 2, 8).unwrap();
        let expected_a = Hypergraph::from_predicate(8, 2, |m| m & 1 != 0 && m & 2 == 0).unwrap();
        assert_eq!(a, expected_a, "edges are the pairs containing 0 but not 1");
        assert_eq!(b, a.with_edge_toggled(0b11).unwrap(), "partner adds {{0,1}}");
    }

    #[test]
    fn pair_edge_counts_differ_by_supersets_of_the_pivot() {
        for (h, r, v) in [(2usize, 2usize, 8usize), (3, 2, 9), (4, 4, 13), (5, 4, 13)] {
            let (a, b) = build_counterexample_pair(h, r, v).unwrap();
            let supersets = binomial_u64((v - r) as u64, (h - r) as u64) as usize;
            assert_eq!(b.edge_count(), a.edge_count() + supersets, "h={h} r={r} v={v}");
        }
    }

    #[test]
    fn three_uniform_pair_membership_spot_checks() {
        let (a, b) = build_counterexample_pair(3, 2, 9).unwrap();
        // Trace {0}: first class.
        assert!(a.has_edge(subset_to_mask(&[0, 2, 3])));
        assert!(b.has_edge(subset_to_mask(&[0, 2, 3])));
        // Trace {1}: second class.
        assert!(!a.has_edge(subset_to_mask(&[1, 2, 3])));
        assert!(!b.has_edge(subset_to_mask(&[1, 2, 3])));
        // Trace = F: never in the first hypergraph, always in the second.
        assert!(!a.has_edge(subset_to_mask(&[0, 1, 2])));
        assert!(b.has_edge(subset_to_mask(&[0, 1, 2])));
        // Empty trace: in neither.
        assert!(!a.has_edge(subset_to_mask(&[2, 3, 4])));
        assert!(!b.has_edge(subset_to_mask(&[2, 3, 4])));
    }

    #[test]
    fn pairs_are_pivot_constant() {
        for (h, r, v) in [(2usize, 2usize, 8usize), (3, 2, 9), (4, 4, 13), (5, 4, 13)] {
            let (a, b) = build_counterexample_pair(h, r, v).unwrap();
            let f: Vec<usize> = (0..r).collect();
            assert!(is_f_constant(&a, &f).unwrap(), "h={h} r={r} v={v}");
            assert!(is_f_constant(&b, &f).unwrap(), "h={h} r={r} v={v}");
        }
    }

    #[test]
    fn build_rejections() {
        assert!(build_counterexample_pair(2, 3, 9).is_err(), "r > h");
        assert!(build_counterexample_pair(3, 3, 9).is_err(), "r not a power of two");
        assert!(build_counterexample_pair(4, 4, 7).is_err(), "v < h + r");
        assert!(build_counterexample_pair(2, 2, 3).is_err(), "v < h + r");
        assert!(build_counterexample_pair(2, 0, 8).is_err(), "r too small");
    }

    #[test]
    fn verify_smallest_pair_and_its_breaking_point() {
        let report = verify_counterexample_pair(2, 2, 8, 1).unwrap();
        assert!(report.all_pass, "{report:?}");
        assert_eq!(report.equal_utc, EqualUtcVerdict::Neither);
        assert_eq!(report.max_k, 3);
        assert_eq!(report.per_k.len(), 3);
        for kr in &report.per_k {
            assert!(kr.hypomorphy.holds(), "k = {}", kr.k);
        }
        // One size above the threshold the pair comes apart, and the least
        // witness is the first 4-subset: it induces 2 edges in one
        // hypergraph and 3 in the other (with 3 in the complement), so no
        // verdict up to complementation survives.
        let (a, b) = build_counterexample_pair(2, 2, 8).unwrap();
        match a.are_k_hypomorphic_utc(&b, 4).unwrap() {
            Hypomorphy::Fails { witness } => assert_eq!(witness, vec![0, 1, 2, 3]),
            Hypomorphy::Holds => panic!("hypomorphy must fail one size above the threshold"),
        }
    }

    #[test]
    fn verify_three_uniform_pair() {
        let report = verify_counterexample_pair(3, 2, 9, 2).unwrap();
        assert!(report.all_pass, "{report:?}");
        assert_eq!(report.max_k, 4);
        let (a, b) = build_counterexample_pair(3, 2, 9).unwrap();
        assert!(!a.are_k_hypomorphic_utc(&b, 5).unwrap().holds());
    }
}
