//! The h-uniform hypergraph core: complement, induced subhypergraph,
//! indicator vectors, boolean sum, exact isomorphism, isomorphy and equality
//! up to complementation, and k-hypomorphy up to complementation.
//!
//! Vertices are 0..v-1 and edges are stored as vertex bitmasks, which caps
//! the vertex count at 64 — comfortably above everything the verification
//! suites touch. Edge sets iterate in ascending mask order, which is colex
//! order, so serialized forms and witness scans are deterministic.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::BitVec;
use crate::numth::{binomial_u64, colex_masks, colex_rank_mask, colex_unrank, mask_to_subset, subset_to_mask};

/// An h-uniform hypergraph on vertices 0..v-1.
///
/// The edge set may be empty for any h, and h may exceed v (in which case no
/// edge can exist at all).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    v: usize,
    h: usize,
    edges: BTreeSet<u64>,
}

/// Outcome of the isomorphy-up-to-complementation test. Witness maps send
/// vertex i of the left hypergraph to entry i of the permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoUtcVerdict {
    Iso {
        witness: Vec<usize>,
    },
    IsoToComplement {
        witness: Vec<usize>,
    },
    Both {
        iso: Vec<usize>,
        to_complement: Vec<usize>,
    },
    Neither,
}

impl IsoUtcVerdict {
    /// True unless the verdict is `Neither`.
    pub fn holds(&self) -> bool {
        !matches!(self, IsoUtcVerdict::Neither)
    }
}

/// Outcome of the equality-up-to-complementation test.
///
/// `Both` requires the edge set to equal its own complement, which is only
/// possible in the degenerate case where no h-subset of the vertex set
/// exists (v < h, both edge sets empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualUtcVerdict {
    Equal,
    EqualToComplement,
    Both,
    Neither,
}

impl EqualUtcVerdict {
    /// True unless the verdict is `Neither`.
    pub fn holds(&self) -> bool {
        !matches!(self, EqualUtcVerdict::Neither)
    }
}

/// Outcome of a k-hypomorphy scan: either every k-subset induces a pair that
/// is isomorphic up to complementation, or the colex-least failing subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypomorphy {
    Holds,
    Fails { witness: Vec<usize> },
}

impl Hypomorphy {
    pub fn holds(&self) -> bool {
        matches!(self, Hypomorphy::Holds)
    }
}

impl Hypergraph {
    /// The hypergraph with no edges.
    pub fn empty(v: usize, h: usize) -> Result<Self> {
        if v > 64 {
            return Err(Error::TooManyVertices(v));
        }
        if h == 0 {
            return Err(Error::EdgeSizeZero);
        }
        Ok(Hypergraph {
            v,
            h,
            edges: BTreeSet::new(),
        })
    }

    /// The hypergraph whose edges are all h-subsets of the vertex set.
    pub fn complete(v: usize, h: usize) -> Result<Self> {
        let mut g = Hypergraph::empty(v, h)?;
        g.edges = colex_masks(v, h).collect();
        Ok(g)
    }

    /// Builds a hypergraph from edges given as strictly increasing vertex
    /// lists. Rejects wrong-sized edges, out-of-range vertices, unsorted
    /// lists, and duplicates.
    pub fn new<I, E>(v: usize, h: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut g = Hypergraph::empty(v, h)?;
        for edge in edges {
            let edge = edge.as_ref();
            g.insert_edge_list(edge)?;
        }
        Ok(g)
    }

    /// Builds a hypergraph from edge bitmasks.
    pub fn from_masks<I: IntoIterator<Item = u64>>(v: usize, h: usize, masks: I) -> Result<Self> {
        let mut g = Hypergraph::empty(v, h)?;
        for m in masks {
            g.insert_edge_mask(m)?;
        }
        Ok(g)
    }

    /// Builds the hypergraph whose edges are exactly the h-subsets (as
    /// bitmasks, visited in colex order) on which the predicate holds.
    pub fn from_predicate(v: usize, h: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut g = Hypergraph::empty(v, h)?;
        g.edges = colex_masks(v, h).filter(|&m| f(m)).collect();
        Ok(g)
    }

    fn insert_edge_list(&mut self, edge: &[usize]) -> Result<()> {
        if edge.len() != self.h {
            return Err(Error::WrongEdgeSize {
                edge: edge.to_vec(),
                expected: self.h,
            });
        }
        for w in edge.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::MalformedSubset(edge.to_vec()));
            }
        }
        if let Some(&last) = edge.last() {
            if last >= self.v {
                return Err(Error::VertexOutOfRange {
                    vertex: last,
                    v: self.v,
                });
            }
        }
        let mask = subset_to_mask(edge);
        if !self.edges.insert(mask) {
            return Err(Error::DuplicateEdge(edge.to_vec()));
        }
        Ok(())
    }

    fn insert_edge_mask(&mut self, mask: u64) -> Result<()> {
        if mask.count_ones() as usize != self.h {
            return Err(Error::WrongEdgeSize {
                edge: mask_to_subset(mask),
                expected: self.h,
            });
        }
        if self.v < 64 && mask >> self.v != 0 {
            let vertex = 63 - mask.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange {
                vertex,
                v: self.v,
            });
        }
        if !self.edges.insert(mask) {
            return Err(Error::DuplicateEdge(mask_to_subset(mask)));
        }
        Ok(())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Number of edges e(H).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge bitmasks in colex order.
    pub fn edge_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges.iter().copied()
    }

    /// Edges as sorted vertex lists, in colex order.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&m| mask_to_subset(m)).collect()
    }

    /// Membership test on a bitmask.
    pub fn has_edge(&self, mask: u64) -> bool {
        self.edges.contains(&mask)
    }

    /// The complement within the h-subsets of the same vertex set.
    pub fn complement(&self) -> Hypergraph {
        Hypergraph {
            v: self.v,
            h: self.h,
            edges: colex_masks(self.v, self.h)
                .filter(|m| !self.edges.contains(m))
                .collect(),
        }
    }

    /// Induced subhypergraph on the vertices of `kmask`, relabeled
    /// order-preservingly to 0..|K|-1.
    pub fn induce_mask(&self, kmask: u64) -> Result<Hypergraph> {
        if self.v < 64 && kmask >> self.v != 0 {
            return Err(Error::VertexOutOfRange {
                vertex: 63 - kmask.leading_zeros() as usize,
                v: self.v,
            });
        }
        let mut position = [0u8; 64];
        let mut idx = 0u8;
        for b in 0..64u8 {
            if kmask >> b & 1 == 1 {
                position[b as usize] = idx;
                idx += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&e| e & kmask == e)
            .map(|&e| {
                let mut out = 0u64;
                let mut rest = e;
                while rest != 0 {
                    out |= 1 << position[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                out
            })
            .collect();
        Ok(Hypergraph {
            v: kmask.count_ones() as usize,
            h: self.h,
            edges,
        })
    }

    /// Induced subhypergraph on a strictly increasing vertex list.
    pub fn induce(&self, k: &[usize]) -> Result<Hypergraph> {
        for w in k.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::MalformedSubset(k.to_vec()));
            }
        }
        if let Some(&last) = k.last() {
            if last >= self.v {
                return Err(Error::VertexOutOfRange {
                    vertex: last,
                    v: self.v,
                });
            }
        }
        self.induce_mask(subset_to_mask(k))
    }

    /// Symmetric difference of edge sets; shapes must match.
    pub fn boolean_sum(&self, other: &Hypergraph) -> Result<Hypergraph> {
        self.check_shape(other)?;
        Ok(Hypergraph {
            v: self.v,
            h: self.h,
            edges: self
                .edges
                .symmetric_difference(&other.edges)
                .copied()
                .collect(),
        })
    }

    /// Relabels vertices through a permutation of 0..v-1: vertex i becomes
    /// f[i]. Rejects non-permutations.
    pub fn apply_bijection(&self, f: &[usize]) -> Result<Hypergraph> {
        if f.len() != self.v {
            return Err(Error::LengthMismatch {
                left: f.len(),
                right: self.v,
            });
        }
        let mut seen = 0u64;
        for &img in f {
            if img >= self.v {
                return Err(Error::VertexOutOfRange {
                    vertex: img,
                    v: self.v,
                });
            }
            if seen >> img & 1 == 1 {
                return Err(Error::Precondition(format!(
                    "map is not a bijection: image {img} repeats"
                )));
            }
            seen |= 1 << img;
        }
        let edges = self
            .edges
            .iter()
            .map(|&e| {
                let mut out = 0u64;
                let mut rest = e;
                while rest != 0 {
                    out |= 1 << f[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                out
            })
            .collect();
        Ok(Hypergraph {
            v: self.v,
            h: self.h,
            edges,
        })
    }

    /// Returns a copy with the given h-subset toggled in or out of the edge
    /// set.
    pub fn with_edge_toggled(&self, mask: u64) -> Result<Hypergraph> {
        let mut out = self.clone();
        if out.edges.remove(&mask) {
            return Ok(out);
        }
        out.insert_edge_mask(mask)?;
        Ok(out)
    }

    /// Indicator vector w_H of length C(v,h): bit at the colex rank of each
    /// h-subset is its membership value.
    pub fn indicator_vector(&self) -> BitVec {
        let len = binomial_u64(self.v as u64, self.h as u64) as usize;
        let mut w = BitVec::zeros(len);
        for &e in &self.edges {
            w.set(colex_rank_mask(e) as usize, true);
        }
        w
    }

    /// Number of edges inside each vertex subset, reduced mod 2: entry at
    /// the colex rank of K is e(H restricted to K) mod 2. Requires
    /// h <= k <= v.
    pub fn parity_profile(&self, k: usize) -> Result<BitVec> {
        if k < self.h || k > self.v {
            return Err(Error::Precondition(format!(
                "parity profile needs h <= k <= v, got h={}, k={k}, v={}",
                self.h, self.v
            )));
        }
        let len = binomial_u64(self.v as u64, k as u64) as usize;
        let mut profile = BitVec::zeros(len);
        for (i, kmask) in colex_masks(self.v, k).enumerate() {
            let count = self.edges.iter().filter(|&&e| e & kmask == e).count();
            if count % 2 == 1 {
                profile.set(i, true);
            }
        }
        Ok(profile)
    }

    /// Number of edges contained in the given vertex subset.
    pub fn edge_count_within(&self, kmask: u64) -> usize {
        self.edges.iter().filter(|&&e| e & kmask == e).count()
    }

    fn check_shape(&self, other: &Hypergraph) -> Result<()> {
        if self.v != other.v || self.h != other.h {
            return Err(Error::ShapeMismatch {
                v1: self.v,
                h1: self.h,
                v2: other.v,
                h2: other.h,
            });
        }
        Ok(())
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        for &e in &self.edges {
            let mut rest = e;
            while rest != 0 {
                deg[rest.trailing_zeros() as usize] += 1;
                rest &= rest - 1;
            }
        }
        deg
    }

    /// Exhaustive isomorphism search: a bijection f of the vertex set with
    /// f(E) = E', or None. Backtracking over vertex images, pruned by exact
    /// per-vertex degree matching and incremental edge consistency.
    ///
    /// Hypergraphs with different v or h are never reported isomorphic.
    pub fn is_isomorphic(&self, other: &Hypergraph) -> Option<Vec<usize>> {
        if self.v != other.v || self.h != other.h || self.edges.len() != other.edges.len() {
            return None;
        }
        let deg_a = self.degrees();
        let deg_b = other.degrees();
        let mut sorted_a = deg_a.clone();
        let mut sorted_b = deg_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        let mut search = IsoSearch {
            a: self,
            b: other,
            deg_a,
            deg_b,
            map: vec![usize::MAX; self.v],
            used: 0,
        };
        if search.descend(0) {
            Some(search.map)
        } else {
            None
        }
    }

    /// Tests isomorphy to the other hypergraph and to its complement,
    /// reporting every direction that holds with a witness.
    pub fn is_isomorphic_utc(&self, other: &Hypergraph) -> IsoUtcVerdict {
        let direct = self.is_isomorphic(other);
        let comp = self.is_isomorphic(&other.complement());
        match (direct, comp) {
            (Some(iso), Some(to_complement)) => IsoUtcVerdict::Both { iso, to_complement },
            (Some(witness), None) => IsoUtcVerdict::Iso { witness },
            (None, Some(witness)) => IsoUtcVerdict::IsoToComplement { witness },
            (None, None) => IsoUtcVerdict::Neither,
        }
    }

    /// Set-equality against the other hypergraph and against its complement.
    pub fn is_equal_utc(&self, other: &Hypergraph) -> Result<EqualUtcVerdict> {
        self.check_shape(other)?;
        let eq = self.edges == other.edges;
        let eqc = self.edges == other.complement().edges;
        Ok(match (eq, eqc) {
            (true, true) => EqualUtcVerdict::Both,
            (true, false) => EqualUtcVerdict::Equal,
            (false, true) => EqualUtcVerdict::EqualToComplement,
            (false, false) => EqualUtcVerdict::Neither,
        })
    }

    /// Scans every k-subset K in colex order and checks that the two induced
    /// subhypergraphs are isomorphic up to complementation; reports the
    /// colex-least failing K otherwise.
    ///
    /// Verdicts are memoized by the pair of induced edge sets, which
    /// collapses the scan dramatically on structured instances.
    pub fn are_k_hypomorphic_utc(&self, other: &Hypergraph, k: usize) -> Result<Hypomorphy> {
        self.are_k_hypomorphic_utc_jobs(other, k, 1)
    }

    /// As [`are_k_hypomorphic_utc`](Self::are_k_hypomorphic_utc), with the
    /// scan partitioned into `jobs` contiguous colex-rank chunks handled by
    /// worker threads, each with its own memo table. The outcome (including
    /// the least witness) is identical for every job count.
    pub fn are_k_hypomorphic_utc_jobs(
        &self,
        other: &Hypergraph,
        k: usize,
        jobs: usize,
    ) -> Result<Hypomorphy> {
        self.check_shape(other)?;
        if k > self.v {
            return Err(Error::Precondition(format!(
                "k = {k} exceeds the vertex count {}",
                self.v
            )));
        }
        let total = binomial_u64(self.v as u64, k as u64);
        let jobs = jobs.max(1).min(total.max(1) as usize);
        if jobs == 1 {
            let first_fail = self.scan_chunk(other, k, 0, total, &mut HashMap::new());
            return Ok(match first_fail {
                Some(mask) => Hypomorphy::Fails {
                    witness: mask_to_subset(mask),
                },
                None => Hypomorphy::Holds,
            });
        }
        let chunk = total.div_ceil(jobs as u64);
        let mut results: Vec<Option<(u64, u64)>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|j| {
                    let lo = j * chunk;
                    let hi = total.min(lo + chunk);
                    scope.spawn(move || {
                        let mut memo = HashMap::new();
                        self.scan_chunk(other, k, lo, hi, &mut memo)
                            .map(|mask| (colex_rank_mask(mask), mask))
                    })
                })
                .collect();
            results = handles.into_iter().map(|h| h.join().unwrap()).collect();
        });
        Ok(match results.into_iter().flatten().min() {
            Some((_, mask)) => Hypomorphy::Fails {
                witness: mask_to_subset(mask),
            },
            None => Hypomorphy::Holds,
        })
    }

    /// Scans colex ranks [lo, hi) of the k-subsets; returns the first K
    /// whose induced pair is not isomorphic up to complementation.
    fn scan_chunk(
        &self,
        other: &Hypergraph,
        k: usize,
        lo: u64,
        hi: u64,
        memo: &mut HashMap<(Vec<u64>, Vec<u64>), bool>,
    ) -> Option<u64> {
        if lo >= hi {
            return None;
        }
        let start = subset_to_mask(&colex_unrank(lo, k, self.v).expect("rank in range"));
        let mut kmask = start;
        for r in lo..hi {
            let sub_a = self.induce_mask(kmask).expect("subset of vertex set");
            let sub_b = other.induce_mask(kmask).expect("subset of vertex set");
            let key = (
                sub_a.edges.iter().copied().collect::<Vec<_>>(),
                sub_b.edges.iter().copied().collect::<Vec<_>>(),
            );
            let ok = match memo.get(&key) {
                Some(&v) => v,
                None => {
                    let v = sub_a.is_isomorphic_utc(&sub_b).holds();
                    memo.insert(key, v);
                    v
                }
            };
            if !ok {
                return Some(kmask);
            }
            // Advancing past the final mask would step Gosper's hack off the
            // end (and from the empty mask when k = 0), so stop short.
            if r + 1 < hi {
                kmask = next_colex_mask(kmask);
            }
        }
        None
    }

    /// Serializes to the hypergraph text format (see [`Hypergraph::from_text`]).
    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\nh {}\n", self.v, self.h);
        for &e in &self.edges {
            out.push('e');
            for x in mask_to_subset(e) {
                out.push(' ');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the hypergraph text format:
    ///
    /// ```text
    /// # comment
    /// v 8
    /// h 3
    /// e 0 1 2
    /// ```
    ///
    /// A `v` line, then an `h` line, then zero or more `e` lines whose
    /// vertices are 0-based and strictly increasing. `#` starts a comment.
    /// Malformed input is rejected with the offending 1-based line number.
    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut graph: Option<Hypergraph> = None;
        let mut declared_v: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let directive = tokens.next().expect("nonempty line has a token");
            let args: Vec<&str> = tokens.collect();
            let parse_usize = |s: &str, what: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid {what} '{s}'"),
                })
            };
            match directive {
                "v" => {
                    if declared_v.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "repeated 'v' line".into(),
                        });
                    }
                    if args.len() != 1 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "'v' takes exactly one argument".into(),
                        });
                    }
                    declared_v = Some(parse_usize(args[0], "vertex count")?);
                }
                "h" => {
                    let Some(v) = declared_v else {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "'h' line before 'v' line".into(),
                        });
                    };
                    if graph.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "repeated 'h' line".into(),
                        });
                    }
                    if args.len() != 1 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "'h' takes exactly one argument".into(),
                        });
                    }
                    let h = parse_usize(args[0], "edge size")?;
                    graph = Some(Hypergraph::empty(v, h).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?);
                }
                "e" => {
                    let Some(g) = graph.as_mut() else {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "'e' line before 'v' and 'h' lines".into(),
                        });
                    };
                    let mut edge = Vec::with_capacity(args.len());
                    for a in &args {
                        edge.push(parse_usize(a, "vertex index")?);
                    }
                    g.insert_edge_list(&edge).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unknown directive '{other}'"),
                    });
                }
            }
        }
        match (declared_v, graph) {
            (_, Some(g)) => Ok(g),
            (Some(_), None) => Err(Error::Parse {
                line: text.lines().count() + 1,
                msg: "missing 'h' line".into(),
            }),
            (None, _) => Err(Error::Parse {
                line: text.lines().count() + 1,
                msg: "missing 'v' line".into(),
            }),
        }
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hypergraph::from_text(s)
    }
}

/// The colex successor of a k-subset bitmask (Gosper's hack). The caller is
/// responsible for staying below the enumeration's end.
fn next_colex_mask(mask: u64) -> u64 {
    debug_assert!(mask != 0);
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((mask ^ r) >> 2) / c) | r
}

/// Samples an h-uniform hypergraph by including each possible edge
/// independently with probability 1/2.
pub fn random_hypergraph(v: usize, h: usize, rng: &mut impl rand::Rng) -> Result<Hypergraph> {
    Hypergraph::from_predicate(v, h, |_| rng.random())
}

struct IsoSearch<'a> {
    a: &'a Hypergraph,
    b: &'a Hypergraph,
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    map: Vec<usize>,
    used: u64,
}

impl IsoSearch<'_> {
    /// Tries every admissible image for source vertex u; returns true when a
    /// full consistent assignment exists.
    fn descend(&mut self, u: usize) -> bool {
        if u == self.a.v {
            return true;
        }
        for w in 0..self.a.v {
            if self.used >> w & 1 == 1 || self.deg_b[w] != self.deg_a[u] {
                continue;
            }
            self.map[u] = w;
            self.used |= 1 << w;
            if self.consistent(u) && self.descend(u + 1) {
                return true;
            }
            self.used &= !(1 << w);
        }
        self.map[u] = usize::MAX;
        false
    }

    /// Checks every h-subset of the assigned sources 0..=u that contains u:
    /// its image must have the same membership value.
    fn consistent(&self, u: usize) -> bool {
        if self.a.h == 0 || u + 1 < self.a.h {
            return true;
        }
        for pattern in colex_masks(u, self.a.h - 1) {
            let s = pattern | 1 << u;
            let mut image = 0u64;
            let mut rest = s;
            while rest != 0 {
                image |= 1 << self.map[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            if self.a.edges.contains(&s) != self.b.edges.contains(&image) {
                return false;
            }
        }
        true
    }
}
