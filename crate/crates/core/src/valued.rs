//! Edge-colored complete graphs ("valued graphs") and isomorphy up to an
//! arbitrary renaming of the colors.
//!
//! A valued graph assigns every vertex pair exactly one color. Two valued
//! graphs are isomorphic up to color renaming when some vertex bijection
//! maps pairs of equal color to pairs of equal color and pairs of distinct
//! colors to pairs of distinct colors — equivalently, when it transports
//! the kernel (the partition of pairs by color) of one onto the other. The
//! search below works directly with that criterion and recovers the induced
//! color permutation on success.
//!
//! The flagship construction is a cylinder/twisted-cylinder pair of
//! colorings of the same ring-of-rungs graph: globally distinguishable, yet
//! indistinguishable on every proper subset of the vertices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A total coloring of the 2-subsets of 0..v-1 by colors 0..num_colors-1.
///
/// Pairs are indexed in colex order: {i,j} with i < j has index
/// j(j-1)/2 + i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedGraph {
    v: usize,
    num_colors: usize,
    colors: Vec<usize>,
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl ValuedGraph {
    /// Builds a valued graph from a colex-ordered color vector of length
    /// C(v,2), each entry below `num_colors`.
    pub fn new(v: usize, num_colors: usize, colors: Vec<usize>) -> Result<Self> {
        if v > 64 {
            return Err(Error::TooManyVertices(v));
        }
        let pairs = v * v.saturating_sub(1) / 2;
        if colors.len() != pairs {
            return Err(Error::LengthMismatch {
                left: colors.len(),
                right: pairs,
            });
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::Precondition(format!(
                "color {bad} out of range for palette of size {num_colors}"
            )));
        }
        Ok(ValuedGraph { v, num_colors, colors })
    }

    /// Builds a valued graph by evaluating `f` on every pair i < j.
    pub fn from_fn(
        v: usize,
        num_colors: usize,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut colors = Vec::with_capacity(v * v.saturating_sub(1) / 2);
        for j in 1..v {
            for i in 0..j {
                colors.push(f(i, j));
            }
        }
        ValuedGraph::new(v, num_colors, colors)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// The color of the pair {i, j}. The two vertices must be distinct and
    /// in range.
    pub fn color(&self, i: usize, j: usize) -> usize {
        assert!(i != j && i < self.v && j < self.v, "pair ({i},{j}) out of range");
        self.colors[pair_index(i.min(j), i.max(j))]
    }

    /// How many pairs carry each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_colors];
        for &c in &self.colors {
            counts[c] += 1;
        }
        counts
    }

    /// The pairs on which the two colorings disagree, as sorted (i, j).
    pub fn differing_pairs(&self, other: &ValuedGraph) -> Result<Vec<(usize, usize)>> {
        if self.v != other.v {
            return Err(Error::LengthMismatch {
                left: self.v,
                right: other.v,
            });
        }
        let mut out = Vec::new();
        for j in 1..self.v {
            for i in 0..j {
                if self.colors[pair_index(i, j)] != other.colors[pair_index(i, j)] {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// The induced valued graph on a strictly increasing vertex list,
    /// relabeled order-preservingly; the palette is unchanged.
    pub fn restrict(&self, verts: &[usize]) -> Result<ValuedGraph> {
        for w in verts.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::MalformedSubset(verts.to_vec()));
            }
        }
        if let Some(&last) = verts.last() {
            if last >= self.v {
                return Err(Error::VertexOutOfRange {
                    vertex: last,
                    v: self.v,
                });
            }
        }
        ValuedGraph::from_fn(verts.len(), self.num_colors, |i, j| {
            self.color(verts[i], verts[j])
        })
    }

    /// Kernel class ids per pair index: two pairs get the same id exactly
    /// when they have the same color; ids are dense, numbered by first
    /// appearance in colex order.
    pub fn kernel_classes(&self) -> Vec<usize> {
        let mut id_of_color: HashMap<usize, usize> = HashMap::new();
        self.colors
            .iter()
            .map(|&c| {
                let next = id_of_color.len();
                *id_of_color.entry(c).or_insert(next)
            })
            .collect()
    }

    /// Serializes to the valued-graph text format (see
    /// [`ValuedGraph::from_text`]).
    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\ncolors {}\n", self.v, self.num_colors);
        for j in 1..self.v {
            for i in 0..j {
                out.push_str(&format!("c {i} {j} {}\n", self.colors[pair_index(i, j)]));
            }
        }
        out
    }

    /// Parses the valued-graph text format:
    ///
    /// ```text
    /// v 4
    /// colors 3
    /// c 0 1 2
    /// ```
    ///
    /// A `v` line, a `colors` line, then exactly one `c i j color` line for
    /// every pair i < j. `#` starts a comment. Malformed, missing, or
    /// duplicated entries are rejected with the offending 1-based line
    /// number (the line past the end for omissions).
    pub fn from_text(text: &str) -> Result<ValuedGraph> {
        let mut declared_v: Option<usize> = None;
        let mut declared_colors: Option<usize> = None;
        let mut colors: Vec<Option<usize>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
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
            let bad = |msg: String| Error::Parse { line: line_no, msg };
            match directive {
                "v" => {
                    if declared_v.is_some() {
                        return Err(bad("repeated 'v' line".into()));
                    }
                    if args.len() != 1 {
                        return Err(bad("'v' takes exactly one argument".into()));
                    }
                    let v = parse_usize(args[0], "vertex count")?;
                    if v > 64 {
                        return Err(bad(format!("vertex count {v} exceeds 64")));
                    }
                    declared_v = Some(v);
                    colors = vec![None; v * v.saturating_sub(1) / 2];
                }
                "colors" => {
                    if declared_v.is_none() {
                        return Err(bad("'colors' line before 'v' line".into()));
                    }
                    if declared_colors.is_some() {
                        return Err(bad("repeated 'colors' line".into()));
                    }
                    if args.len() != 1 {
                        return Err(bad("'colors' takes exactly one argument".into()));
                    }
                    declared_colors = Some(parse_usize(args[0], "palette size")?);
                }
                "c" => {
                    let (Some(v), Some(m)) = (declared_v, declared_colors) else {
                        return Err(bad("'c' line before 'v' and 'colors' lines".into()));
                    };
                    if args.len() != 3 {
                        return Err(bad("'c' takes vertices i j and a color".into()));
                    }
                    let i = parse_usize(args[0], "vertex index")?;
                    let j = parse_usize(args[1], "vertex index")?;
                    let color = parse_usize(args[2], "color")?;
                    if i >= j {
                        return Err(bad(format!("pair must have i < j, got {i} {j}")));
                    }
                    if j >= v {
                        return Err(bad(format!("vertex {j} out of range for v = {v}")));
                    }
                    if color >= m {
                        return Err(bad(format!(
                            "color {color} out of range for palette of size {m}"
                        )));
                    }
                    let slot = &mut colors[pair_index(i, j)];
                    if slot.is_some() {
                        return Err(bad(format!("pair {i} {j} colored twice")));
                    }
                    *slot = Some(color);
                }
                other => return Err(bad(format!("unknown directive '{other}'"))),
            }
        }
        let end = text.lines().count() + 1;
        let missing = |msg: &str| Error::Parse { line: end, msg: msg.into() };
        let v = declared_v.ok_or_else(|| missing("missing 'v' line"))?;
        let num_colors = declared_colors.ok_or_else(|| missing("missing 'colors' line"))?;
        let mut filled = Vec::with_capacity(colors.len());
        for j in 1..v {
            for i in 0..j {
                match colors[pair_index(i, j)] {
                    Some(c) => filled.push(c),
                    None => return Err(missing(&format!("pair {i} {j} is not colored"))),
                }
            }
        }
        ValuedGraph::new(v, num_colors, filled)
    }
}

impl fmt::Display for ValuedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for ValuedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ValuedGraph::from_text(s)
    }
}

/// A successful isomorphism up to color renaming: the vertex bijection and
/// the color permutation it induces (None for colors the left graph never
/// uses — the renaming is unconstrained there).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorIso {
    pub vertex_map: Vec<usize>,
    pub color_map: Vec<Option<usize>>,
}

/// Searches for a vertex bijection under which equal-colored pairs map to
/// equal-colored pairs and distinct-colored pairs to distinct-colored
/// pairs. Returns the bijection and the induced color renaming, or None.
/// Graphs on different vertex counts are never isomorphic.
///
/// Backtracking assigns vertex images in order, maintaining the partial
/// color renaming in both directions (any clash prunes the branch), and
/// pre-filters candidate images by a color-agnostic vertex invariant: the
/// sorted kernel-class sizes of incident pairs.
pub fn iso_up_to_color_permutation(a: &ValuedGraph, b: &ValuedGraph) -> Option<ColorIso> {
    if a.v != b.v {
        return None;
    }
    let v = a.v;
    if v == 0 {
        return Some(ColorIso {
            vertex_map: Vec::new(),
            color_map: vec![None; a.num_colors],
        });
    }
    let signature = |g: &ValuedGraph| -> Vec<Vec<usize>> {
        let classes = g.kernel_classes();
        let mut sizes = vec![0usize; classes.iter().max().map_or(0, |&m| m + 1)];
        for &cl in &classes {
            sizes[cl] += 1;
        }
        (0..g.v)
            .map(|x| {
                let mut sig: Vec<usize> = (0..g.v)
                    .filter(|&y| y != x)
                    .map(|y| sizes[classes[pair_index(x.min(y), x.max(y))]])
                    .collect();
                sig.sort_unstable();
                sig
            })
            .collect()
    };
    let mut search = ColorIsoSearch {
        a,
        b,
        sig_a: signature(a),
        sig_b: signature(b),
        map: vec![usize::MAX; v],
        used: 0,
        fwd: vec![None; a.num_colors],
        bwd: vec![None; b.num_colors],
    };
    if search.descend(0) {
        Some(ColorIso {
            vertex_map: search.map,
            color_map: search.fwd,
        })
    } else {
        None
    }
}

struct ColorIsoSearch<'a> {
    a: &'a ValuedGraph,
    b: &'a ValuedGraph,
    sig_a: Vec<Vec<usize>>,
    sig_b: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: u64,
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
}

impl ColorIsoSearch<'_> {
    fn descend(&mut self, u: usize) -> bool {
        if u == self.a.v {
            return true;
        }
        for w in 0..self.a.v {
            if self.used >> w & 1 == 1 || self.sig_a[u] != self.sig_b[w] {
                continue;
            }
            self.map[u] = w;
            self.used |= 1 << w;
            let mut added: Vec<(usize, usize)> = Vec::new();
            let mut ok = true;
            for i in 0..u {
                let ca = self.a.color(i, u);
                let cb = self.b.color(self.map[i], w);
                match self.fwd[ca] {
                    Some(existing) if existing != cb => {
                        ok = false;
                    }
                    Some(_) => {}
                    None => {
                        if self.bwd[cb].is_some() {
                            // cb is already the image of a different color.
                            ok = false;
                        } else {
                            self.fwd[ca] = Some(cb);
                            self.bwd[cb] = Some(ca);
                            added.push((ca, cb));
                        }
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok && self.descend(u + 1) {
                return true;
            }
            for (ca, cb) in added {
                self.fwd[ca] = None;
                self.bwd[cb] = None;
            }
            self.used &= !(1 << w);
        }
        self.map[u] = usize::MAX;
        false
    }
}

/// Builds the cylinder/twisted-cylinder pair on 2n vertices, n ≥ 3.
///
/// Vertices are ring position i paired with side j, encoded 2i + j. The
/// palette has 3n + 2 colors: 0 for unrelated pairs, 1 for the rung at each
/// position, and a triple (2+3i, 2+3i+1, 2+3i+2) per position i coloring
/// the two side rails and the two diagonals between positions i and i+1
/// (indices mod n). The first graph colors, between i and i+1: both rails
/// 2+3i, the descending diagonal 2+3i+1, the ascending one 2+3i+2. The
/// second differs only between positions 0 and 1, where rails and diagonals
/// trade colors — both diagonals get 2, the side-0 rail gets 3, and the
/// side-1 rail gets 4 — which twists the band.
pub fn build_moebius_pair(n: usize) -> Result<(ValuedGraph, ValuedGraph)> {
    if n < 3 {
        return Err(Error::ValueTooSmall {
            what: "n",
            min: 3,
            got: n as u64,
        });
    }
    let v = 2 * n;
    let num_colors = 3 * n + 2;
    let rail = |i: usize| 2 + 3 * i;
    // Color of the pair between side p at position `from` and side q at
    // position `from + 1` (mod n).
    let band_color = |from: usize, p: usize, q: usize| -> usize {
        match (p, q) {
            (0, 0) | (1, 1) => rail(from),
            (0, 1) => rail(from) + 1,
            (1, 0) => rail(from) + 2,
            _ => unreachable!("sides are binary"),
        }
    };
    // Color of {(i,p), (i2,q)} under the untwisted scheme; positions are
    // distinct here, and for n >= 3 at most one adjacency direction holds.
    let base = |i: usize, p: usize, i2: usize, q: usize| -> usize {
        if (i + 1) % n == i2 {
            band_color(i, p, q)
        } else if (i2 + 1) % n == i {
            band_color(i2, q, p)
        } else {
            0
        }
    };
    let color_of = |x: usize, y: usize, twisted: bool| -> usize {
        let (i, p) = (x / 2, x % 2);
        let (i2, q) = (y / 2, y % 2);
        if i == i2 {
            return 1; // the rung at position i
        }
        if twisted {
            // Between positions 0 and 1 the twisted coloring swaps the
            // rail/diagonal roles.
            let zero_one = (i.min(i2), if i < i2 { (p, q) } else { (q, p) });
            if zero_one.0 == 0 && i.max(i2) == 1 {
                let (p0, p1) = zero_one.1;
                return match (p0, p1) {
                    (0, 1) | (1, 0) => rail(0),
                    (0, 0) => rail(0) + 1,
                    (1, 1) => rail(0) + 2,
                    _ => unreachable!("sides are binary"),
                };
            }
        }
        base(i, p, i2, q)
    };
    let g = ValuedGraph::from_fn(v, num_colors, |x, y| color_of(x, y, false))?;
    let g2 = ValuedGraph::from_fn(v, num_colors, |x, y| color_of(x, y, true))?;
    Ok((g, g2))
}

/// Verification record for the cylinder/twisted-cylinder pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusReport {
    pub n: usize,
    pub vertex_count: usize,
    pub color_count: usize,
    /// Whether the full graphs admit an isomorphism up to color renaming —
    /// must be false.
    pub full_graphs_isomorphic: bool,
    /// Size of the proper subsets checked exhaustively: 2n − 1.
    pub proper_subset_size: usize,
    /// First (colex) proper subset of that size with no isomorphism — must
    /// be None.
    pub failing_proper_subset: Option<Vec<usize>>,
    /// Number of smaller subsets (size 2n − 2, all of them) also checked.
    pub smaller_spot_checks: usize,
    pub failing_smaller_subset: Option<Vec<usize>>,
    /// 2n − 1 < (2/3)(3n + 2) − 2, checked in integers as 3(2n−1) < 2(3n+2)−6.
    pub subset_size_below_bound: bool,
    pub all_pass: bool,
}

/// Builds the pair for n and checks the whole claim: the full graphs are
/// not isomorphic up to color renaming, yet every vertex subset of size
/// 2n − 1 (and, as a spot check, every one of size 2n − 2) admits an
/// isomorphism between the restrictions. Witnesses found along the way are
/// validated pointwise before being trusted.
pub fn verify_moebius(n: usize) -> Result<MoebiusReport> {
    let (a, b) = build_moebius_pair(n)?;
    let v = 2 * n;
    let full_graphs_isomorphic = iso_up_to_color_permutation(&a, &b).is_some();
    let mut failing_proper_subset = None;
    for leave_out in (0..v).rev() {
        let verts: Vec<usize> = (0..v).filter(|&x| x != leave_out).collect();
        let ra = a.restrict(&verts)?;
        let rb = b.restrict(&verts)?;
        match iso_up_to_color_permutation(&ra, &rb) {
            Some(iso) => validate_witness(&ra, &rb, &iso),
            None => {
                failing_proper_subset = Some(verts);
                break;
            }
        }
    }
    let mut smaller_spot_checks = 0usize;
    let mut failing_smaller_subset = None;
    'outer: for first in 0..v {
        for second in first + 1..v {
            let verts: Vec<usize> = (0..v).filter(|&x| x != first && x != second).collect();
            smaller_spot_checks += 1;
            let ra = a.restrict(&verts)?;
            let rb = b.restrict(&verts)?;
            match iso_up_to_color_permutation(&ra, &rb) {
                Some(iso) => validate_witness(&ra, &rb, &iso),
                None => {
                    failing_smaller_subset = Some(verts);
                    break 'outer;
                }
            }
        }
    }
    let color_count = 3 * n + 2;
    let proper_subset_size = v - 1;
    let subset_size_below_bound = 3 * proper_subset_size < 2 * color_count - 6;
    let all_pass = !full_graphs_isomorphic
        && failing_proper_subset.is_none()
        && failing_smaller_subset.is_none()
        && subset_size_below_bound;
    Ok(MoebiusReport {
        n,
        vertex_count: v,
        color_count,
        full_graphs_isomorphic,
        proper_subset_size,
        failing_proper_subset,
        smaller_spot_checks,
        failing_smaller_subset,
        subset_size_below_bound,
        all_pass,
    })
}

/// Panics unless the witness satisfies the color-renaming equation on every
/// pair: color_b(f(x), f(y)) = σ(color_a(x, y)).
fn validate_witness(a: &ValuedGraph, b: &ValuedGraph, iso: &ColorIso) {
    for j in 1..a.v() {
        for i in 0..j {
            let ca = a.color(i, j);
            let cb = b.color(iso.vertex_map[i], iso.vertex_map[j]);
            assert_eq!(
                iso.color_map[ca],
                Some(cb),
                "internal: reported witness violates the renaming equation on ({i},{j})"
            );
        }
    }
}

/// The three-color pair on v ≥ 3 vertices: the first graph colors {0,1} and
/// {1,2} alike with {0,2} different; the second colors {0,1} and {0,2}
/// alike with {1,2} different; every other pair gets the third color in
/// both. Shipped as a demonstration — the interesting behavior emerges on
/// larger vertex sets, and no verdict is asserted here.
pub fn build_w3_example(v: usize) -> Result<(ValuedGraph, ValuedGraph)> {
    if v < 3 {
        return Err(Error::ValueTooSmall {
            what: "v",
            min: 3,
            got: v as u64,
        });
    }
    let a = ValuedGraph::from_fn(v, 3, |i, j| match (i, j) {
        (0, 1) | (1, 2) => 0,
        (0, 2) => 1,
        _ => 2,
    })?;
    let b = ValuedGraph::from_fn(v, 3, |i, j| match (i, j) {
        (0, 1) | (0, 2) => 0,
        (1, 2) => 1,
        _ => 2,
    })?;
    Ok((a, b))
}
