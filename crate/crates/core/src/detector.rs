//! Rainbow star detection, per-vertex color-degree profiles and the
//! A/B/C vertex classification used by the general-star upper bounds.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matching::BipartiteGraph;
use crate::model::{Color, DigraphCollection, StarPattern, Vertex};

/// Work limit (candidate embeddings) for [`find_rainbow_star_naive`].
pub const NAIVE_WORK_LIMIT: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectorError {
    #[error("naive enumeration would inspect {work} candidates (limit {limit})")]
    InstanceTooLarge { work: u128, limit: u128 },
}

/// A rainbow copy of a star: leaves are `(vertex, color)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarEmbedding {
    pub center: Vertex,
    pub in_leaves: Vec<(Vertex, Color)>,
    pub out_leaves: Vec<(Vertex, Color)>,
}

impl StarEmbedding {
    /// Checks every embedding invariant against `coll`.
    pub fn validate(&self, coll: &DigraphCollection, pat: StarPattern) -> Result<(), String> {
        if self.in_leaves.len() != pat.p || self.out_leaves.len() != pat.q {
            return Err(format!(
                "expected {} in-leaves and {} out-leaves, got {} and {}",
                pat.p,
                pat.q,
                self.in_leaves.len(),
                self.out_leaves.len()
            ));
        }
        let leaves = self.in_leaves.iter().chain(&self.out_leaves);
        let mut vertices: Vec<Vertex> = leaves.clone().map(|&(v, _)| v).collect();
        let mut colors: Vec<Color> = leaves.map(|&(_, i)| i).collect();
        if vertices.contains(&self.center) {
            return Err(format!("center {} reused as a leaf", self.center));
        }
        vertices.sort_unstable();
        colors.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err("leaf vertices are not distinct".into());
        }
        if colors.windows(2).any(|w| w[0] == w[1]) {
            return Err("leaf colors are not distinct".into());
        }
        for &(u, i) in &self.in_leaves {
            if !coll.has_edge(i, u, self.center) {
                return Err(format!("missing edge {u}->{} in color {i}", self.center));
            }
        }
        for &(w, j) in &self.out_leaves {
            if !coll.has_edge(j, self.center, w) {
                return Err(format!("missing edge {}->{w} in color {j}", self.center));
            }
        }
        Ok(())
    }
}

/// Colors in which a vertex has nonzero in- and out-degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorDegreeProfile {
    pub vertex: Vertex,
    pub in_colors: Vec<Color>,
    pub out_colors: Vec<Color>,
}

impl ColorDegreeProfile {
    pub fn incident_colors(&self) -> usize {
        union_len(&self.in_colors, &self.out_colors)
    }
}

fn union_len(a: &[Color], b: &[Color]) -> usize {
    a.len() + b.iter().filter(|x| !a.contains(x)).count()
}

/// Per-vertex in/out color sets as bitsets over 0-based colors.
struct Profiles {
    ins: Vec<FixedBitSet>,
    outs: Vec<FixedBitSet>,
}

impl Profiles {
    fn compute(coll: &DigraphCollection) -> Self {
        let (n, c) = (coll.n(), coll.c());
        let mut ins = vec![FixedBitSet::with_capacity(c); n];
        let mut outs = vec![FixedBitSet::with_capacity(c); n];
        for i in 0..c {
            for v in coll.sources0(i).ones() {
                outs[v].insert(i);
            }
            for v in coll.targets0(i).ones() {
                ins[v].insert(i);
            }
        }
        Profiles { ins, outs }
    }

    fn homomorphic(&self, v: usize, pat: StarPattern) -> bool {
        let union = self.ins[v].union_count(&self.outs[v]);
        homomorphic_feasible(self.ins[v].count_ones(..), self.outs[v].count_ones(..), union, pat)
    }
}

pub fn color_profiles(coll: &DigraphCollection) -> Vec<ColorDegreeProfile> {
    let prof = Profiles::compute(coll);
    (0..coll.n())
        .map(|v| ColorDegreeProfile {
            vertex: v + 1,
            in_colors: prof.ins[v].ones().map(|i| i + 1).collect(),
            out_colors: prof.outs[v].ones().map(|i| i + 1).collect(),
        })
        .collect()
}

/// Disjoint `P ⊆ I`, `Q ⊆ O` with `|P| = p`, `|Q| = q` exist iff
/// `|I| >= p`, `|O| >= q` and `|I ∪ O| >= p + q`.
pub fn homomorphic_feasible(in_colors: usize, out_colors: usize, union: usize, pat: StarPattern) -> bool {
    in_colors >= pat.p && out_colors >= pat.q && union >= pat.p + pat.q
}

/// True iff `v` is the center of a (not necessarily injective) homomorphic
/// image of a rainbow star.
pub fn detect_homomorphic_center(coll: &DigraphCollection, v: Vertex, pat: StarPattern) -> bool {
    if v == 0 || v > coll.n() {
        return false;
    }
    let (mut ins, mut outs) = (FixedBitSet::with_capacity(coll.c()), FixedBitSet::with_capacity(coll.c()));
    for i in 0..coll.c() {
        if !coll.in_neighbors0(i, v - 1).is_empty() {
            ins.insert(i);
        }
        if !coll.out_neighbors0(i, v - 1).is_empty() {
            outs.insert(i);
        }
    }
    homomorphic_feasible(ins.count_ones(..), outs.count_ones(..), ins.union_count(&outs), pat)
}

/// Leaf candidates around one center, 0-based `(vertex, color)` sorted ascending.
#[derive(Debug, Default, Clone)]
pub(crate) struct LeafCandidates {
    pub ins: Vec<(usize, usize)>,
    pub outs: Vec<(usize, usize)>,
}

impl LeafCandidates {
    fn around(coll: &DigraphCollection, v: usize) -> Self {
        let mut cands = LeafCandidates::default();
        for i in 0..coll.c() {
            cands.ins.extend(coll.in_neighbors0(i, v).into_iter().map(|u| (u, i)));
            cands.outs.extend(coll.out_neighbors0(i, v).into_iter().map(|w| (w, i)));
        }
        cands.ins.sort_unstable();
        cands.outs.sort_unstable();
        cands
    }
}

type Leaves = Vec<(usize, usize)>;

/// Exact search for `p` in-leaves and `q` out-leaves with distinct vertices
/// and distinct colors. Leaves within a role are chosen with increasing
/// vertex, so the result is the lexicographically first embedding in
/// (in-leaves, out-leaves) order.
pub(crate) fn search_leaves(
    cands: &LeafCandidates,
    pat: StarPattern,
    n: usize,
    c: usize,
) -> Option<(Leaves, Leaves)> {
    if !matching_bounds_allow(cands, pat, n, c) {
        return None;
    }
    let mut search = LeafSearch {
        cands,
        pat,
        used_v: FixedBitSet::with_capacity(n),
        used_c: FixedBitSet::with_capacity(c),
        chosen_in: Vec::with_capacity(pat.p),
        chosen_out: Vec::with_capacity(pat.q),
        scratch: [
            FixedBitSet::with_capacity(c),
            FixedBitSet::with_capacity(c),
            FixedBitSet::with_capacity(n),
            FixedBitSet::with_capacity(n),
        ],
    };
    if search.dfs(0, 0) {
        Some((search.chosen_in, search.chosen_out))
    } else {
        None
    }
}

/// Necessary matching conditions: each role alone, and both roles together
/// ignoring role counts, must be matchable between vertices and colors.
fn matching_bounds_allow(cands: &LeafCandidates, pat: StarPattern, n: usize, c: usize) -> bool {
    let matching = |pairs: &mut dyn Iterator<Item = &(usize, usize)>| {
        let mut g = BipartiteGraph::new(n, c);
        for &(u, i) in pairs {
            g.add_edge(u, i);
        }
        g.max_matching().size
    };
    if pat.p > 0 && matching(&mut cands.ins.iter()) < pat.p {
        return false;
    }
    if pat.q > 0 && matching(&mut cands.outs.iter()) < pat.q {
        return false;
    }
    pat.p == 0 || pat.q == 0 || matching(&mut cands.ins.iter().chain(&cands.outs)) >= pat.edges()
}

struct LeafSearch<'a> {
    cands: &'a LeafCandidates,
    pat: StarPattern,
    used_v: FixedBitSet,
    used_c: FixedBitSet,
    chosen_in: Leaves,
    chosen_out: Leaves,
    scratch: [FixedBitSet; 4],
}

impl LeafSearch<'_> {
    fn dfs(&mut self, in_from: usize, out_from: usize) -> bool {
        let in_role = self.chosen_in.len() < self.pat.p;
        if !in_role && self.chosen_out.len() == self.pat.q {
            return true;
        }
        let (list, from) = if in_role {
            (&self.cands.ins, in_from)
        } else {
            (&self.cands.outs, out_from)
        };
        let last = if in_role { self.chosen_in.last() } else { self.chosen_out.last() }.map(|&(u, _)| u);
        for k in from..list.len() {
            let (u, i) = list[k];
            if Some(u) == last || self.used_v.contains(u) || self.used_c.contains(i) {
                continue;
            }
            self.used_v.insert(u);
            self.used_c.insert(i);
            let (next_in, next_out) = if in_role {
                self.chosen_in.push((u, i));
                (k + 1, 0)
            } else {
                self.chosen_out.push((u, i));
                (in_from, k + 1)
            };
            if self.rest_feasible(next_in, next_out) && self.dfs(next_in, next_out) {
                return true;
            }
            if in_role {
                self.chosen_in.pop();
            } else {
                self.chosen_out.pop();
            }
            self.used_v.set(u, false);
            self.used_c.set(i, false);
        }
        false
    }

    /// Closed-form homomorphic test on what is still available, once on the
    /// color side and once on the vertex side.
    fn rest_feasible(&mut self, in_from: usize, out_from: usize) -> bool {
        let need_in = self.pat.p - self.chosen_in.len();
        let need_out = self.pat.q - self.chosen_out.len();
        if need_in + need_out == 0 {
            return true;
        }
        let [in_colors, out_colors, in_verts, out_verts] = &mut self.scratch;
        for s in [&mut *in_colors, &mut *out_colors, &mut *in_verts, &mut *out_verts] {
            s.clear();
        }
        if need_in > 0 {
            let last = self.chosen_in.last().map(|&(u, _)| u);
            for &(u, i) in &self.cands.ins[in_from..] {
                if Some(u) != last && !self.used_v.contains(u) && !self.used_c.contains(i) {
                    in_colors.insert(i);
                    in_verts.insert(u);
                }
            }
        }
        if need_out > 0 {
            let last = self.chosen_out.last().map(|&(u, _)| u);
            for &(w, j) in &self.cands.outs[out_from..] {
                if Some(w) != last && !self.used_v.contains(w) && !self.used_c.contains(j) {
                    out_colors.insert(j);
                    out_verts.insert(w);
                }
            }
        }
        let rest = StarPattern { p: need_in, q: need_out };
        homomorphic_feasible(
            in_colors.count_ones(..),
            out_colors.count_ones(..),
            in_colors.union_count(out_colors),
            rest,
        ) && homomorphic_feasible(
            in_verts.count_ones(..),
            out_verts.count_ones(..),
            in_verts.union_count(out_verts),
            rest,
        )
    }
}

fn to_embedding(center: usize, (ins, outs): (Leaves, Leaves)) -> StarEmbedding {
    let lift = |v: Leaves| v.into_iter().map(|(u, i)| (u + 1, i + 1)).collect();
    StarEmbedding { center: center + 1, in_leaves: lift(ins), out_leaves: lift(outs) }
}

/// Rainbow star centered at `v`, if any (lexicographically first leaves).
pub fn find_rainbow_star_at(coll: &DigraphCollection, v: Vertex, pat: StarPattern) -> Option<StarEmbedding> {
    if !detect_homomorphic_center(coll, v, pat) {
        return None;
    }
    let cands = LeafCandidates::around(coll, v - 1);
    search_leaves(&cands, pat, coll.n(), coll.c()).map(|leaves| to_embedding(v - 1, leaves))
}

/// First rainbow star in scan order: centers ascending, in-leaves before
/// out-leaves, candidates by `(vertex, color)` ascending.
pub fn find_rainbow_star(coll: &DigraphCollection, pat: StarPattern) -> Option<StarEmbedding> {
    if pat.edges() >= coll.n() || pat.edges() > coll.c() {
        return None;
    }
    let profiles = Profiles::compute(coll);
    (0..coll.n())
        .filter(|&v| profiles.homomorphic(v, pat))
        .find_map(|v| {
            let cands = LeafCandidates::around(coll, v);
            search_leaves(&cands, pat, coll.n(), coll.c()).map(|leaves| to_embedding(v, leaves))
        })
}

fn falling(n: u128, k: usize) -> u128 {
    (0..k as u128).map(|j| n.saturating_sub(j)).product()
}

/// Reference detector: tries every center, every injective leaf-vertex tuple
/// and every injective color tuple.
pub fn find_rainbow_star_naive(
    coll: &DigraphCollection,
    pat: StarPattern,
) -> Result<Option<StarEmbedding>, DetectorError> {
    let (n, c, k) = (coll.n(), coll.c(), pat.edges());
    let work = n as u128 * falling(n as u128 - 1, k) * falling(c as u128, k);
    if work > NAIVE_WORK_LIMIT {
        return Err(DetectorError::InstanceTooLarge { work, limit: NAIVE_WORK_LIMIT });
    }
    if k >= n || k > c {
        return Ok(None);
    }
    for center in 1..=n {
        let others: Vec<Vertex> = (1..=n).filter(|&v| v != center).collect();
        let colors: Vec<Color> = (1..=c).collect();
        for leaves in injective_tuples(&others, k) {
            for tint in injective_tuples(&colors, k) {
                let ok = (0..k).all(|j| {
                    if j < pat.p {
                        coll.has_edge(tint[j], leaves[j], center)
                    } else {
                        coll.has_edge(tint[j], center, leaves[j])
                    }
                });
                if ok {
                    let pairs: Vec<_> = leaves.iter().copied().zip(tint.iter().copied()).collect();
                    return Ok(Some(StarEmbedding {
                        center,
                        in_leaves: pairs[..pat.p].to_vec(),
                        out_leaves: pairs[pat.p..].to_vec(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Ordered `k`-tuples of distinct items, lexicographic in item order.
fn injective_tuples(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (idx, &x) in items.iter().enumerate() {
            if !used[idx] {
                used[idx] = true;
                cur.push(x);
                rec(items, k, used, cur, out);
                cur.pop();
                used[idx] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(items, k, &mut vec![false; items.len()], &mut Vec::new(), &mut out);
    out
}

/// Auxiliary bipartite graph between vertices and colors: `u ~ i` iff `v -> u` in `G_i`.
fn out_star_graph(coll: &DigraphCollection, v: usize) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(coll.n(), coll.c());
    for i in 0..coll.c() {
        for u in coll.out_neighbors0(i, v) {
            g.add_edge(u, i);
        }
    }
    g
}

/// Maximum matching size of the out-neighborhood graph at center `v`.
pub fn center_out_matching(coll: &DigraphCollection, v: Vertex) -> usize {
    out_star_graph(coll, v - 1).max_matching().size
}

/// Rainbow out-star detection through maximum matchings: a rainbow
/// `S_{0,q}` centered at `v` exists iff the out-neighborhood graph at `v`
/// has a matching of size `q`.
pub fn matching_fastpath_p0(coll: &DigraphCollection, q: usize) -> Option<StarEmbedding> {
    (0..coll.n()).find_map(|v| {
        let m = out_star_graph(coll, v).max_matching();
        (m.size >= q).then(|| StarEmbedding {
            center: v + 1,
            in_leaves: Vec::new(),
            out_leaves: m.pairs().into_iter().take(q).map(|(u, i)| (u + 1, i + 1)).collect(),
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClassification {
    pub color: Color,
    pub a_i: Vec<Vertex>,
    pub b_i: Vec<Vertex>,
    pub c_i: Vec<Vertex>,
    pub alpha_i: usize,
    pub beta_i: usize,
    pub gamma_i: usize,
}

/// Partition of the vertices into `A`, `B`, `C` and homomorphic-image centers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub c: Vec<Vertex>,
    pub violators: Vec<Vertex>,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub per_color: Vec<ColorClassification>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    A,
    B,
    C,
    Violator,
}

/// Class of a vertex from its color-degree profile. `B` is tested first,
/// then `A`, then `C`; anything left is a homomorphic-image center.
pub fn vertex_class(profile: &ColorDegreeProfile, pat: StarPattern) -> VertexClass {
    if profile.incident_colors() < pat.edges() {
        VertexClass::B
    } else if profile.out_colors.len() < pat.q {
        VertexClass::A
    } else if profile.in_colors.len() < pat.p {
        VertexClass::C
    } else {
        VertexClass::Violator
    }
}

pub fn classify_vertices(coll: &DigraphCollection, pat: StarPattern) -> ClassificationReport {
    let profiles = color_profiles(coll);
    let mut report = ClassificationReport {
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
        violators: Vec::new(),
        alpha: 0,
        beta: 0,
        gamma: 0,
        per_color: (1..=coll.c())
            .map(|color| ColorClassification {
                color,
                a_i: Vec::new(),
                b_i: Vec::new(),
                c_i: Vec::new(),
                alpha_i: 0,
                beta_i: 0,
                gamma_i: 0,
            })
            .collect(),
    };
    for prof in &profiles {
        let v = prof.vertex;
        match vertex_class(prof, pat) {
            VertexClass::A => {
                report.a.push(v);
                for &i in &prof.out_colors {
                    report.per_color[i - 1].a_i.push(v);
                }
            }
            VertexClass::B => {
                report.b.push(v);
                let mut incident: Vec<Color> = prof.in_colors.iter().chain(&prof.out_colors).copied().collect();
                incident.sort_unstable();
                incident.dedup();
                for i in incident {
                    report.per_color[i - 1].b_i.push(v);
                }
            }
            VertexClass::C => {
                report.c.push(v);
                for &i in &prof.in_colors {
                    report.per_color[i - 1].c_i.push(v);
                }
            }
            VertexClass::Violator => report.violators.push(v),
        }
    }
    report.alpha = report.a.len();
    report.beta = report.b.len();
    report.gamma = report.c.len();
    for cc in &mut report.per_color {
        cc.alpha_i = cc.a_i.len();
        cc.beta_i = cc.b_i.len();
        cc.gamma_i = cc.c_i.len();
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(p: usize, q: usize) -> StarPattern {
        StarPattern::new(p, q).unwrap()
    }

    fn collection(n: usize, c: usize, edges: &[(usize, usize, usize)]) -> DigraphCollection {
        let mut coll = DigraphCollection::new(n, c).unwrap();
        for &(i, u, v) in edges {
            coll.add_edge(i, u, v).unwrap();
        }
        coll
    }

    #[test]
    fn opposite_triangles_have_no_rainbow_path() {
        let coll = collection(3, 2, &[(1, 1, 2), (1, 2, 3), (1, 3, 1), (2, 1, 3), (2, 3, 2), (2, 2, 1)]);
        assert_eq!(find_rainbow_star(&coll, pat(1, 1)), None);
        assert_eq!(find_rainbow_star_naive(&coll, pat(1, 1)).unwrap(), None);
    }

    #[test]
    fn out_star_witness() {
        let coll = collection(3, 2, &[(1, 1, 2), (2, 1, 3)]);
        let emb = find_rainbow_star(&coll, pat(0, 2)).unwrap();
        assert_eq!(
            emb,
            StarEmbedding { center: 1, in_leaves: vec![], out_leaves: vec![(2, 1), (3, 2)] }
        );
        emb.validate(&coll, pat(0, 2)).unwrap();
        assert!(matching_fastpath_p0(&coll, 2).is_some());
    }

    #[test]
    fn fastpath_stuck_on_single_neighbor() {
        let coll = collection(3, 2, &[(1, 1, 2), (2, 1, 2)]);
        assert_eq!(matching_fastpath_p0(&coll, 2), None);
        assert_eq!(find_rainbow_star(&coll, pat(0, 2)), None);
        assert_eq!(center_out_matching(&coll, 1), 1);
    }

    #[test]
    fn naive_on_empty_and_complete() {
        let empty = DigraphCollection::new(4, 3).unwrap();
        assert_eq!(find_rainbow_star_naive(&empty, pat(1, 2)).unwrap(), None);
        let mut full = DigraphCollection::new(4, 3).unwrap();
        for i in 1..=3 {
            full.add_all_pairs(i, &[1, 2, 3, 4], &[1, 2, 3, 4]).unwrap();
        }
        let emb = find_rainbow_star_naive(&full, pat(1, 2)).unwrap().unwrap();
        emb.validate(&full, pat(1, 2)).unwrap();
        let fast = find_rainbow_star(&full, pat(1, 2)).unwrap();
        assert_eq!(fast, StarEmbedding { center: 1, in_leaves: vec![(2, 1)], out_leaves: vec![(3, 2), (4, 3)] });
    }

    #[test]
    fn naive_guard() {
        let big = DigraphCollection::new(40, 10).unwrap();
        assert!(matches!(
            find_rainbow_star_naive(&big, pat(2, 3)),
            Err(DetectorError::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn homomorphic_closed_form_examples() {
        // I = {1}, O = {1}
        let coll = collection(3, 2, &[(1, 2, 1), (1, 1, 3)]);
        assert!(!detect_homomorphic_center(&coll, 1, pat(1, 1)));
        // I = {1, 2}, O = {2, 3}
        let coll = collection(4, 3, &[(1, 2, 1), (2, 3, 1), (2, 1, 4), (3, 1, 2)]);
        assert!(detect_homomorphic_center(&coll, 1, pat(1, 2)));
        assert!(detect_homomorphic_center(&coll, 1, pat(0, 2)));
        assert!(!detect_homomorphic_center(&coll, 1, pat(0, 3)));
    }

    /// Brute force over disjoint subset pairs of small color sets.
    fn disjoint_choice_exists(ins: u32, outs: u32, p: u32, q: u32) -> bool {
        (0u32..64).any(|pm| {
            pm & !ins == 0
                && pm.count_ones() == p
                && (0u32..64).any(|qm| qm & !outs == 0 && qm & pm == 0 && qm.count_ones() == q)
        })
    }

    #[test]
    fn closed_form_matches_subset_brute_force() {
        for ins in 0u32..64 {
            for outs in 0u32..64 {
                for p in 0..4 {
                    for q in 0..4 {
                        if p + q == 0 {
                            continue;
                        }
                        let expect = disjoint_choice_exists(ins, outs, p, q);
                        let got = homomorphic_feasible(
                            ins.count_ones() as usize,
                            outs.count_ones() as usize,
                            (ins | outs).count_ones() as usize,
                            pat(p as usize, q as usize),
                        );
                        assert_eq!(got, expect, "I={ins:b} O={outs:b} p={p} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn empty_collection_is_all_b() {
        let coll = DigraphCollection::new(5, 3).unwrap();
        let rep = classify_vertices(&coll, pat(1, 2));
        assert_eq!(rep.b, vec![1, 2, 3, 4, 5]);
        assert!(rep.a.is_empty() && rep.c.is_empty() && rep.violators.is_empty());
    }

    #[test]
    fn complete_pair_is_a_violator() {
        // both directions in both colors: the homomorphic image of S_{1,1}
        let coll = collection(2, 2, &[(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 1)]);
        let rep = classify_vertices(&coll, pat(1, 1));
        assert_eq!(rep.violators, vec![1, 2]);
        assert_eq!(find_rainbow_star(&coll, pat(1, 1)), None);
    }
}
