//! Exact optima over rainbow-free collections.
//!
//! [`max_exact`] is a branch-and-bound over edge slots for tiny instances.
//! [`cover_oracle_s0q`] handles out-stars at moderate `n` by searching over
//! per-vertex cover structures instead of edge sets: a vertex is not the
//! center of a rainbow `S_{0,q}` iff the bipartite graph between its
//! out-neighbors and its out-colors has a vertex cover of size at most `q-1`.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bounds::Objective;
use crate::detector::{homomorphic_feasible, search_leaves, LeafCandidates};
use crate::model::{DigraphCollection, ModelError, StarPattern};

pub const DEFAULT_SLOT_GUARD: usize = 36;
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);
/// Vertex limit of the bitmask representation used by [`max_exact`].
pub const MAX_EXACT_VERTICES: usize = 64;

pub const COVER_MAX_N: usize = 64;
pub const COVER_MAX_C: usize = 8;
pub const COVER_MAX_Q: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{slots} edge slots exceed the guard of {guard}; pass an explicit override to search anyway")]
    TooManySlots { slots: usize, guard: usize },
    #[error("n = {n} exceeds the supported maximum of {limit} vertices")]
    TooManyVertices { n: usize, limit: usize },
    #[error("outside the oracle domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub budget: Duration,
    pub slot_guard: usize,
    /// Search even when the slot count exceeds `slot_guard`.
    pub force: bool,
    /// Force the slot `1 -> 2` in color 1 (vertex relabeling).
    pub fix_first_edge: bool,
    /// Non-increasing color counts; only applied to the sum objective.
    pub color_symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            slot_guard: DEFAULT_SLOT_GUARD,
            force: false,
            fix_first_edge: true,
            color_symmetry: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub optimum: u64,
    pub witness: DigraphCollection,
    pub objective: Objective,
    pub proved_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl Serialize for SearchOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SearchOutcome", 6)?;
        st.serialize_field("optimum", &self.optimum)?;
        st.serialize_field("objective", &self.objective)?;
        st.serialize_field("proved_optimal", &self.proved_optimal)?;
        st.serialize_field("nodes_explored", &self.nodes_explored)?;
        st.serialize_field("elapsed_secs", &self.elapsed.as_secs_f64())?;
        st.serialize_field("witness", &self.witness.to_edge_list())?;
        st.end()
    }
}

pub fn objective_value(coll: &DigraphCollection, objective: Objective) -> u64 {
    let s = coll.edge_counts();
    match objective {
        Objective::Sum => s.sum,
        Objective::Min => s.min,
    }
}

/// Exact maximum of `objective` over rainbow-`pat`-free collections of `c`
/// digraphs on `n` vertices.
pub fn max_exact(
    n: usize,
    c: usize,
    pat: StarPattern,
    objective: Objective,
    options: &SearchOptions,
) -> Result<SearchOutcome, OracleError> {
    let start = Instant::now();
    if n == 0 || c == 0 {
        return Err(OracleError::Domain("n and c must be positive".into()));
    }
    if n > MAX_EXACT_VERTICES {
        return Err(OracleError::TooManyVertices { n, limit: MAX_EXACT_VERTICES });
    }
    let slots = c * n * (n - 1);
    if slots > options.slot_guard && !options.force {
        return Err(OracleError::TooManySlots { slots, guard: options.slot_guard });
    }
    let mut search = Search::new(n, c, pat, objective, options, start + options.budget);
    let first = search.slots.len().min(1);
    if options.fix_first_edge && first == 1 {
        // Any collection with a positive objective value has an edge in
        // color 1 (the largest color under the sum ordering, and every color
        // is nonempty for min); relabel vertices so it is 1 -> 2.
        if !search.blocked[0] {
            search.addable[0] -= 1;
            search.include(0);
            search.dfs(1);
        }
    } else {
        search.dfs(0);
    }
    let mut witness = DigraphCollection::new(n, c)?;
    for &k in &search.best_set {
        let (i, u, v) = search.slots[k];
        witness.add_edge(i + 1, u + 1, v + 1)?;
    }
    Ok(SearchOutcome {
        optimum: search.best,
        witness,
        objective,
        proved_optimal: !search.expired,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    })
}

struct Search {
    n: usize,
    c: usize,
    pat: StarPattern,
    objective: Objective,
    color_symmetry: bool,
    slots: Vec<(usize, usize, usize)>,
    index: Vec<usize>,
    out: Vec<u64>,
    inn: Vec<u64>,
    blocked: Vec<bool>,
    undo: Vec<usize>,
    cnt: Vec<u64>,
    addable: Vec<u64>,
    chosen: Vec<usize>,
    best: u64,
    best_set: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    expired: bool,
    cands: LeafCandidates,
}

impl Search {
    fn new(n: usize, c: usize, pat: StarPattern, objective: Objective, options: &SearchOptions, deadline: Instant) -> Self {
        let mut slots = Vec::with_capacity(c * n * n);
        let mut index = vec![usize::MAX; c * n * n];
        for i in 0..c {
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        index[(i * n + u) * n + v] = slots.len();
                        slots.push((i, u, v));
                    }
                }
            }
        }
        // a single edge is already a star when p + q = 1
        let single_edge_star = pat.edges() == 1;
        let per_color = (n * (n - 1)) as u64;
        Search {
            n,
            c,
            pat,
            objective,
            color_symmetry: options.color_symmetry && objective == Objective::Sum,
            blocked: vec![single_edge_star; slots.len()],
            slots,
            index,
            out: vec![0; c * n],
            inn: vec![0; c * n],
            undo: Vec::new(),
            cnt: vec![0; c],
            addable: vec![if single_edge_star { 0 } else { per_color }; c],
            chosen: Vec::new(),
            best: 0,
            best_set: Vec::new(),
            nodes: 0,
            deadline,
            expired: false,
            cands: LeafCandidates::default(),
        }
    }

    /// Whether the current state has a rainbow star centered at `w`.
    fn star_at(&mut self, w: usize) -> bool {
        let (n, c) = (self.n, self.c);
        let (mut ins, mut outs, mut union) = (0, 0, 0);
        for i in 0..c {
            let a = self.inn[i * n + w] != 0;
            let b = self.out[i * n + w] != 0;
            ins += a as usize;
            outs += b as usize;
            union += (a || b) as usize;
        }
        if !homomorphic_feasible(ins, outs, union, self.pat) {
            return false;
        }
        self.cands.ins.clear();
        self.cands.outs.clear();
        for x in 0..n {
            for i in 0..c {
                if self.inn[i * n + w] >> x & 1 == 1 {
                    self.cands.ins.push((x, i));
                }
                if self.out[i * n + w] >> x & 1 == 1 {
                    self.cands.outs.push((x, i));
                }
            }
        }
        search_leaves(&self.cands, self.pat, n, c).is_some()
    }

    fn set_edge(&mut self, k: usize, on: bool) {
        let (i, u, v) = self.slots[k];
        let n = self.n;
        if on {
            self.out[i * n + u] |= 1 << v;
            self.inn[i * n + v] |= 1 << u;
        } else {
            self.out[i * n + u] &= !(1 << v);
            self.inn[i * n + v] &= !(1 << u);
        }
    }

    /// Adds slot `k` and blocks every later slot that would now complete a
    /// star at an endpoint of `k`. Returns the undo mark.
    fn include(&mut self, k: usize) -> usize {
        let mark = self.undo.len();
        let (i, u, v) = self.slots[k];
        self.set_edge(k, true);
        self.cnt[i] += 1;
        self.chosen.push(k);
        let n = self.n;
        for j in 0..self.c {
            for x in 0..n {
                for (center, a, b) in [(u, u, x), (u, x, u), (v, v, x), (v, x, v)] {
                    if a == b {
                        continue;
                    }
                    let s = self.index[(j * n + a) * n + b];
                    if s <= k || self.blocked[s] {
                        continue;
                    }
                    self.set_edge(s, true);
                    let bad = self.star_at(center);
                    self.set_edge(s, false);
                    if bad {
                        self.blocked[s] = true;
                        self.addable[j] -= 1;
                        self.undo.push(s);
                    }
                }
            }
        }
        mark
    }

    fn exclude_last(&mut self, k: usize, mark: usize) {
        while self.undo.len() > mark {
            let s = self.undo.pop().unwrap();
            self.blocked[s] = false;
            self.addable[self.slots[s].0] += 1;
        }
        self.chosen.pop();
        self.cnt[self.slots[k].0] -= 1;
        self.set_edge(k, false);
    }

    fn value(&self) -> u64 {
        match self.objective {
            Objective::Sum => self.cnt.iter().sum(),
            Objective::Min => self.cnt.iter().copied().min().unwrap_or(0),
        }
    }

    /// Optimistic bound on the objective below the node deciding slot `k`.
    fn bound(&self, k: usize) -> u64 {
        match self.objective {
            Objective::Min => (0..self.c).map(|i| self.cnt[i] + self.addable[i]).min().unwrap_or(0),
            Objective::Sum if !self.color_symmetry => self.cnt.iter().sum::<u64>() + self.addable.iter().sum::<u64>(),
            Objective::Sum => {
                let j = self.slots.get(k).map_or(self.c - 1, |s| s.0);
                let cap_prev = if j == 0 { u64::MAX } else { self.cnt[j - 1] };
                let cur = (self.cnt[j] + self.addable[j]).min(cap_prev);
                let done: u64 = self.cnt[..j].iter().sum();
                let later: u64 = self.addable[j + 1..].iter().map(|&a| a.min(cur)).sum();
                done + cur + later
            }
        }
    }

    fn dfs(&mut self, k: usize) {
        self.nodes += 1;
        if self.nodes & 4095 == 0 && Instant::now() >= self.deadline {
            self.expired = true;
        }
        if self.expired {
            return;
        }
        if k == self.slots.len() {
            let v = self.value();
            if v > self.best {
                self.best = v;
                self.best_set = self.chosen.clone();
            }
            return;
        }
        if self.bound(k) <= self.best {
            return;
        }
        let i = self.slots[k].0;
        let open = !self.blocked[k];
        if open {
            self.addable[i] -= 1;
            let symmetric_ok = !self.color_symmetry || i == 0 || self.cnt[i] < self.cnt[i - 1];
            if symmetric_ok {
                let mark = self.include(k);
                self.dfs(k + 1);
                self.exclude_last(k, mark);
            }
        }
        self.dfs(k + 1);
        if open {
            self.addable[i] += 1;
        }
    }
}

/// Per-vertex cover structure: `colors` are fully saturated, and every
/// other color sends edges to `targets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCover {
    pub colors: Vec<usize>,
    pub targets: Vec<usize>,
}

/// Maximal realization of a cover structure (1-based colors and vertices).
pub fn realize_covers(n: usize, c: usize, covers: &[VertexCover]) -> Result<DigraphCollection, ModelError> {
    let mut coll = DigraphCollection::new(n, c)?;
    let all: Vec<usize> = (1..=n).collect();
    for (v0, cover) in covers.iter().enumerate() {
        let v = v0 + 1;
        for i in 1..=c {
            if cover.colors.contains(&i) {
                coll.add_all_pairs(i, &[v], &all)?;
            } else {
                coll.add_all_pairs(i, &[v], &cover.targets)?;
            }
        }
    }
    Ok(coll)
}

fn smallest_others(n: usize, v: usize, b: usize) -> Vec<usize> {
    (1..=n).filter(|&u| u != v).take(b).collect()
}

/// Exact optimum for a forbidden rainbow `S_{0,q}` with `n > c >= q >= 1`.
pub fn cover_oracle_s0q(n: usize, c: usize, q: usize, objective: Objective) -> Result<SearchOutcome, OracleError> {
    let start = Instant::now();
    if !(n > c && c >= q && q >= 1) {
        return Err(OracleError::Domain(format!(
            "needs n > c >= q >= 1, got n = {n}, c = {c}, q = {q} (use the closed forms for n <= c)"
        )));
    }
    if n > COVER_MAX_N || c > COVER_MAX_C || q > COVER_MAX_Q {
        return Err(OracleError::Domain(format!(
            "guards are n <= {COVER_MAX_N}, c <= {COVER_MAX_C}, q <= {COVER_MAX_Q}"
        )));
    }
    let (covers, nodes) = match objective {
        Objective::Sum => (cover_sum(n, c, q), (q as u64)),
        Objective::Min => cover_min(n, c, q),
    };
    let witness = realize_covers(n, c, &covers)?;
    Ok(SearchOutcome {
        optimum: objective_value(&witness, objective),
        witness,
        objective,
        proved_optimal: true,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Colors `offset, offset+1, ...` (cyclically) of a vertex with `a` covered colors.
fn cyclic_colors(c: usize, offset: usize, a: usize) -> Vec<usize> {
    let mut colors: Vec<usize> = (0..a).map(|t| (offset + t) % c + 1).collect();
    colors.sort_unstable();
    colors
}

fn cover_sum(n: usize, c: usize, q: usize) -> Vec<VertexCover> {
    // vertex types are independent for the sum: a covered colors give
    // a(n-1) edges, the remaining c-a colors give b = q-1-a edges each
    let value = |a: usize| a * (n - 1) + (c - a) * (q - 1 - a);
    let a = (0..q).max_by_key(|&a| (value(a), std::cmp::Reverse(a))).unwrap();
    (1..=n)
        .map(|v| VertexCover {
            colors: cyclic_colors(c, (v - 1) * a, a),
            targets: smallest_others(n, v, q - 1 - a),
        })
        .collect()
}

/// All vectors of `types` nonnegative counts summing to `n`.
fn compositions(n: usize, types: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, types: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == types {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, types, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, types, &mut Vec::with_capacity(types), &mut out);
    out
}

/// Type multiplicities `m[a]` (vertices with `a` covered colors) and the
/// per-color counts `k[i][a]` of covered colors; turns them into covers.
fn covers_from_counts(n: usize, q: usize, m: &[usize], k: &[Vec<usize>]) -> Vec<VertexCover> {
    let mut covers = Vec::with_capacity(n);
    let mut v = 1;
    for a in 0..q {
        // color sequence with multiplicities, dealt round-robin so that each
        // vertex receives distinct colors
        let mut seq = Vec::new();
        for (i, row) in k.iter().enumerate() {
            seq.extend(std::iter::repeat_n(i + 1, row[a]));
        }
        let mut colors = vec![Vec::new(); m[a]];
        for (t, &i) in seq.iter().enumerate() {
            colors[t % m[a]].push(i);
        }
        for mut cs in colors {
            cs.sort_unstable();
            covers.push(VertexCover { colors: cs, targets: smallest_others(n, v, q - 1 - a) });
            v += 1;
        }
    }
    covers
}

fn cover_min(n: usize, c: usize, q: usize) -> (Vec<VertexCover>, u64) {
    // weight of covering a color at a type-a vertex, over the b baseline
    let w: Vec<u64> = (0..q).map(|a| (n - q + a) as u64).collect();
    let mut candidates: Vec<(u64, Vec<usize>)> = compositions(n, q)
        .into_iter()
        .map(|m| {
            let base: u64 = (0..q).map(|a| (m[a] * (q - 1 - a)) as u64).sum();
            let spread: u64 = (0..q).map(|a| w[a] * (a * m[a]) as u64).sum();
            let cap: u64 = (1..q).map(|a| w[a] * m[a] as u64).sum();
            (base + (spread / c as u64).min(cap), m)
        })
        .collect();
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));

    let mut best: Option<(u64, Vec<usize>, Vec<Vec<usize>>)> = None;
    let mut nodes = 0u64;
    for (upper, m) in candidates {
        if best.as_ref().is_some_and(|b| upper <= b.0) {
            break;
        }
        let base: u64 = (0..q).map(|a| (m[a] * (q - 1 - a)) as u64).sum();
        let (greedy_value, greedy_k) = greedy_counts(c, q, &m, &w, base);
        if best.as_ref().is_none_or(|b| greedy_value > b.0) {
            best = Some((greedy_value, m.clone(), greedy_k));
        }
        let floor = best.as_ref().unwrap().0;
        let mut target = upper;
        while target > floor {
            let mut bins = Bins::new(c, q, &m, &w, target - base);
            let found = bins.solve();
            nodes += bins.nodes;
            if let Some(k) = found {
                best = Some((target, m.clone(), k));
                break;
            }
            target -= 1;
        }
    }
    let (_, m, k) = best.expect("at least one type vector");
    (covers_from_counts(n, q, &m, &k), nodes)
}

/// Each vertex (heaviest types first) covers its `a` least-loaded colors.
fn greedy_counts(c: usize, q: usize, m: &[usize], w: &[u64], base: u64) -> (u64, Vec<Vec<usize>>) {
    let mut load = vec![base; c];
    let mut k = vec![vec![0usize; q]; c];
    for a in (1..q).rev() {
        for _ in 0..m[a] {
            let mut order: Vec<usize> = (0..c).collect();
            order.sort_by_key(|&i| (load[i], i));
            for &i in order.iter().take(a) {
                load[i] += w[a];
                k[i][a] += 1;
            }
        }
    }
    (load.into_iter().min().unwrap_or(0), k)
}

/// Exact test whether every color can reach `need` extra load: each color
/// picks a minimal profile `k[a]` (counts of covering vertices per type),
/// profiles drawn from a shared budget of `a * m[a]` units per type.
struct Bins {
    c: usize,
    q: usize,
    profiles: Vec<Vec<usize>>,
    /// `a * m[a]` covering units per type
    budget: Vec<usize>,
    w: Vec<u64>,
    need: u64,
    failed: HashSet<(usize, Vec<usize>, usize)>,
    nodes: u64,
}

impl Bins {
    fn new(c: usize, q: usize, m: &[usize], w: &[u64], need: u64) -> Self {
        let mut profiles = Vec::new();
        let limits: Vec<usize> = (0..q)
            .map(|a| if a == 0 { 0 } else { m[a].min(need.div_ceil(w[a]) as usize) })
            .collect();
        let mut cur = vec![0usize; q];
        Self::enumerate(1, &limits, w, need, &mut cur, &mut profiles);
        let budget = (0..q).map(|a| a * m[a]).collect();
        Bins { c, q, profiles, budget, w: w.to_vec(), need, failed: HashSet::new(), nodes: 0 }
    }

    fn enumerate(a: usize, limits: &[usize], w: &[u64], need: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == limits.len() {
            let total: u64 = (0..limits.len()).map(|t| w[t] * cur[t] as u64).sum();
            if total < need {
                return;
            }
            let minimal = (1..limits.len()).all(|t| cur[t] == 0 || total - w[t] < need);
            if minimal {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=limits[a] {
            cur[a] = x;
            Self::enumerate(a + 1, limits, w, need, cur, out);
        }
        cur[a] = 0;
    }

    fn solve(&mut self) -> Option<Vec<Vec<usize>>> {
        if self.need == 0 {
            return Some(vec![vec![0; self.q]; self.c]);
        }
        let mut rem = self.budget.clone();
        let mut picks = Vec::with_capacity(self.c);
        if self.dfs(self.c, &mut rem, 0, &mut picks) {
            Some(picks.into_iter().map(|p| self.profiles[p].clone()).collect())
        } else {
            None
        }
    }

    fn dfs(&mut self, left: usize, rem: &mut Vec<usize>, start: usize, picks: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        if left == 0 {
            return true;
        }
        let capacity: u64 = (1..self.q).map(|a| self.w[a] * rem[a] as u64).sum();
        if capacity < self.need * left as u64 {
            return false;
        }
        let key = (left, rem.clone(), start);
        if self.failed.contains(&key) {
            return false;
        }
        for idx in start..self.profiles.len() {
            let fits = (1..self.q).all(|a| self.profiles[idx][a] <= rem[a]);
            if !fits {
                continue;
            }
            for a in 1..self.q {
                rem[a] -= self.profiles[idx][a];
            }
            picks.push(idx);
            let ok = self.dfs(left - 1, rem, idx, picks);
            if ok {
                return true;
            }
            picks.pop();
            for a in 1..self.q {
                rem[a] += self.profiles[idx][a];
            }
        }
        self.failed.insert(key);
        false
    }
}
