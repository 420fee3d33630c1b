//! Collections of simple digraphs on a shared vertex set, one digraph per color.
//!
//! Vertices and colors are 1-indexed at the public surface (`1..=n`,
//! `1..=c`), matching the edge-list format. Storage is 0-indexed.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Color = usize;

/// Collections on at most this many vertices use a dense bit matrix per color.
pub const DEFAULT_DENSE_THRESHOLD: usize = 512;

pub const EDGE_LIST_HEADER: &str = "rainbow-digraph v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("color count must be at least 1")]
    NoColors,
    #[error("color {color} out of range 1..={c}")]
    ColorOutOfRange { color: Color, c: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {u}->{v} in color {color}")]
    DuplicateEdge { color: Color, u: Vertex, v: Vertex },
    #[error("{what} is not a permutation of 1..={len}")]
    NotAPermutation { what: &'static str, len: usize },
    #[error("star pattern must have at least one edge")]
    EmptyPattern,
}

/// The forbidden star: center with in-degree `p` and out-degree `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StarPattern {
    pub p: usize,
    pub q: usize,
}

impl StarPattern {
    pub fn new(p: usize, q: usize) -> Result<Self, ModelError> {
        if p + q == 0 {
            return Err(ModelError::EmptyPattern);
        }
        Ok(StarPattern { p, q })
    }

    pub fn edges(&self) -> usize {
        self.p + self.q
    }

    /// The pattern forbidden in the edge-reversed collection.
    pub fn reversed(&self) -> Self {
        StarPattern { p: self.q, q: self.p }
    }

    pub fn is_normalized(&self) -> bool {
        self.p <= self.q
    }

    /// Returns the pattern with `p <= q` and whether a swap happened.
    pub fn normalized(&self) -> (Self, bool) {
        if self.is_normalized() {
            (*self, false)
        } else {
            (self.reversed(), true)
        }
    }
}

impl fmt::Display for StarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.p, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCountSummary {
    pub per_color: Vec<u64>,
    pub sum: u64,
    pub min: u64,
}

impl EdgeCountSummary {
    pub fn from_counts(per_color: Vec<u64>) -> Self {
        let sum = per_color.iter().sum();
        let min = per_color.iter().copied().min().unwrap_or(0);
        EdgeCountSummary { per_color, sum, min }
    }
}

#[derive(Debug, Clone)]
enum ColorClass {
    Dense { rows: Vec<FixedBitSet>, len: usize },
    Sparse(BTreeSet<(usize, usize)>),
}

impl ColorClass {
    fn empty(n: usize, dense: bool) -> Self {
        if dense {
            ColorClass::Dense {
                rows: vec![FixedBitSet::with_capacity(n); n],
                len: 0,
            }
        } else {
            ColorClass::Sparse(BTreeSet::new())
        }
    }

    fn len(&self) -> usize {
        match self {
            ColorClass::Dense { len, .. } => *len,
            ColorClass::Sparse(set) => set.len(),
        }
    }

    fn contains(&self, u: usize, v: usize) -> bool {
        match self {
            ColorClass::Dense { rows, .. } => rows[u].contains(v),
            ColorClass::Sparse(set) => set.contains(&(u, v)),
        }
    }

    /// Inserts `u -> v`; false if it was already present.
    fn insert(&mut self, u: usize, v: usize) -> bool {
        match self {
            ColorClass::Dense { rows, len } => {
                if rows[u].put(v) {
                    false
                } else {
                    *len += 1;
                    true
                }
            }
            ColorClass::Sparse(set) => set.insert((u, v)),
        }
    }

    fn iter(&self) -> Box<dyn Iterator<Item = (usize, usize)> + '_> {
        match self {
            ColorClass::Dense { rows, .. } => Box::new(
                rows.iter()
                    .enumerate()
                    .flat_map(|(u, row)| row.ones().map(move |v| (u, v))),
            ),
            ColorClass::Sparse(set) => Box::new(set.iter().copied()),
        }
    }

    fn out_neighbors(&self, u: usize) -> Vec<usize> {
        match self {
            ColorClass::Dense { rows, .. } => rows[u].ones().collect(),
            ColorClass::Sparse(set) => set
                .range((u, 0)..(u + 1, 0))
                .map(|&(_, v)| v)
                .collect(),
        }
    }

    fn in_neighbors(&self, v: usize) -> Vec<usize> {
        match self {
            ColorClass::Dense { rows, .. } => rows
                .iter()
                .enumerate()
                .filter(|(_, row)| row.contains(v))
                .map(|(u, _)| u)
                .collect(),
            ColorClass::Sparse(set) => set
                .iter()
                .filter(|&&(_, w)| w == v)
                .map(|&(u, _)| u)
                .collect(),
        }
    }

    /// Vertices with nonzero out-degree.
    fn sources(&self, n: usize) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(n);
        match self {
            ColorClass::Dense { rows, .. } => {
                for (u, row) in rows.iter().enumerate() {
                    if row.count_ones(..) > 0 {
                        mask.insert(u);
                    }
                }
            }
            ColorClass::Sparse(set) => set.iter().for_each(|&(u, _)| mask.insert(u)),
        }
        mask
    }

    /// Vertices with nonzero in-degree.
    fn targets(&self, n: usize) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(n);
        match self {
            ColorClass::Dense { rows, .. } => rows.iter().for_each(|row| mask.union_with(row)),
            ColorClass::Sparse(set) => set.iter().for_each(|&(_, v)| mask.insert(v)),
        }
        mask
    }
}

/// `c` simple digraphs `G_1..G_c` on the vertex set `1..=n`.
#[derive(Debug, Clone)]
pub struct DigraphCollection {
    n: usize,
    classes: Vec<ColorClass>,
    dense_threshold: usize,
}

impl PartialEq for DigraphCollection {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.c() == other.c()
            && self
                .classes
                .iter()
                .zip(&other.classes)
                .all(|(a, b)| a.len() == b.len() && a.iter().eq(b.iter()))
    }
}

impl Eq for DigraphCollection {}

impl DigraphCollection {
    pub fn new(n: usize, c: usize) -> Result<Self, ModelError> {
        Self::with_dense_threshold(n, c, DEFAULT_DENSE_THRESHOLD)
    }

    /// Like [`DigraphCollection::new`], choosing dense storage iff `n <= dense_threshold`.
    pub fn with_dense_threshold(
        n: usize,
        c: usize,
        dense_threshold: usize,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::NoVertices);
        }
        if c == 0 {
            return Err(ModelError::NoColors);
        }
        let dense = n <= dense_threshold;
        Ok(DigraphCollection {
            n,
            classes: (0..c).map(|_| ColorClass::empty(n, dense)).collect(),
            dense_threshold,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> usize {
        self.classes.len()
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.classes.first(), Some(ColorClass::Dense { .. }))
    }

    fn check_color(&self, color: Color) -> Result<usize, ModelError> {
        if color == 0 || color > self.c() {
            return Err(ModelError::ColorOutOfRange { color, c: self.c() });
        }
        Ok(color - 1)
    }

    fn check_vertex(&self, vertex: Vertex) -> Result<usize, ModelError> {
        if vertex == 0 || vertex > self.n {
            return Err(ModelError::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(vertex - 1)
    }

    /// Adds `u -> v` to color `color`. Re-adding an existing edge is an error.
    pub fn add_edge(&mut self, color: Color, u: Vertex, v: Vertex) -> Result<(), ModelError> {
        let i = self.check_color(color)?;
        let a = self.check_vertex(u)?;
        let b = self.check_vertex(v)?;
        if a == b {
            return Err(ModelError::Loop(u));
        }
        if !self.classes[i].insert(a, b) {
            return Err(ModelError::DuplicateEdge { color, u, v });
        }
        Ok(())
    }

    /// Adds every edge `s -> t` with `s` in `sources`, `t` in `targets`, `s != t`.
    /// Fails without modifying the collection if any such edge already exists.
    pub fn add_all_pairs(
        &mut self,
        color: Color,
        sources: &[Vertex],
        targets: &[Vertex],
    ) -> Result<(), ModelError> {
        let i = self.check_color(color)?;
        let mut mask = FixedBitSet::with_capacity(self.n);
        for &t in targets {
            mask.insert(self.check_vertex(t)?);
        }
        let src: Vec<usize> = sources
            .iter()
            .map(|&s| self.check_vertex(s))
            .collect::<Result<_, _>>()?;
        self.add_all_pairs0(i, &src, &mask)
            .map_err(|(u, v)| ModelError::DuplicateEdge { color, u: u + 1, v: v + 1 })
    }

    fn add_all_pairs0(
        &mut self,
        color: usize,
        sources: &[usize],
        targets: &FixedBitSet,
    ) -> Result<(), (usize, usize)> {
        let class = &mut self.classes[color];
        for &s in sources {
            let clash = match class {
                ColorClass::Dense { rows, .. } => rows[s]
                    .intersection(targets)
                    .find(|&t| t != s),
                ColorClass::Sparse(set) => targets.ones().find(|&t| t != s && set.contains(&(s, t))),
            };
            if let Some(t) = clash {
                return Err((s, t));
            }
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &s in sources {
            if seen.put(s) {
                // Repeated source: every pair from it would be a duplicate.
                if let Some(t) = targets.ones().find(|&t| t != s) {
                    return Err((s, t));
                }
            }
        }
        for &s in sources {
            match class {
                ColorClass::Dense { rows, len } => {
                    let row = &mut rows[s];
                    let had_self = row.contains(s);
                    let before = row.count_ones(..);
                    row.union_with(targets);
                    if !had_self {
                        row.set(s, false);
                    }
                    *len += row.count_ones(..) - before;
                }
                ColorClass::Sparse(set) => {
                    set.extend(targets.ones().filter(|&t| t != s).map(|t| (s, t)));
                }
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, color: Color, u: Vertex, v: Vertex) -> bool {
        match (self.check_color(color), self.check_vertex(u), self.check_vertex(v)) {
            (Ok(i), Ok(a), Ok(b)) => self.classes[i].contains(a, b),
            _ => false,
        }
    }

    pub fn color_len(&self, color: Color) -> usize {
        self.check_color(color).map_or(0, |i| self.classes[i].len())
    }

    /// Total number of stored `(color, u, v)` triples.
    pub fn total_edges(&self) -> usize {
        self.classes.iter().map(ColorClass::len).sum()
    }

    /// All edges as `(color, source, target)`, sorted by color, then source, then target.
    pub fn edges(&self) -> impl Iterator<Item = (Color, Vertex, Vertex)> + '_ {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, class)| class.iter().map(move |(u, v)| (i + 1, u + 1, v + 1)))
    }

    pub fn edge_counts(&self) -> EdgeCountSummary {
        EdgeCountSummary::from_counts(self.classes.iter().map(|k| k.len() as u64).collect())
    }

    pub fn out_neighbors(&self, color: Color, u: Vertex) -> Vec<Vertex> {
        match (self.check_color(color), self.check_vertex(u)) {
            (Ok(i), Ok(a)) => self.classes[i].out_neighbors(a).into_iter().map(|v| v + 1).collect(),
            _ => Vec::new(),
        }
    }

    pub fn in_neighbors(&self, color: Color, v: Vertex) -> Vec<Vertex> {
        match (self.check_color(color), self.check_vertex(v)) {
            (Ok(i), Ok(b)) => self.classes[i].in_neighbors(b).into_iter().map(|u| u + 1).collect(),
            _ => Vec::new(),
        }
    }

    pub(crate) fn out_neighbors0(&self, color: usize, u: usize) -> Vec<usize> {
        self.classes[color].out_neighbors(u)
    }

    pub(crate) fn in_neighbors0(&self, color: usize, v: usize) -> Vec<usize> {
        self.classes[color].in_neighbors(v)
    }

    pub(crate) fn sources0(&self, color: usize) -> FixedBitSet {
        self.classes[color].sources(self.n)
    }

    pub(crate) fn targets0(&self, color: usize) -> FixedBitSet {
        self.classes[color].targets(self.n)
    }

    fn empty_like(&self) -> Self {
        DigraphCollection::with_dense_threshold(self.n, self.c(), self.dense_threshold)
            .expect("dimensions already validated")
    }

    /// Flips the orientation of every edge in every color.
    pub fn reverse(&self) -> Self {
        let mut out = self.empty_like();
        for (i, class) in self.classes.iter().enumerate() {
            for (u, v) in class.iter() {
                out.classes[i].insert(v, u);
            }
        }
        out
    }

    /// Relabels vertex `x` as `vperm[x - 1]` and color `i` as `cperm[i - 1]`.
    pub fn permute(&self, vperm: &[Vertex], cperm: &[Color]) -> Result<Self, ModelError> {
        check_permutation(vperm, self.n, "vertex map")?;
        check_permutation(cperm, self.c(), "color map")?;
        let mut out = self.empty_like();
        for (i, class) in self.classes.iter().enumerate() {
            let target = cperm[i] - 1;
            for (u, v) in class.iter() {
                out.classes[target].insert(vperm[u] - 1, vperm[v] - 1);
            }
        }
        Ok(out)
    }

    /// Canonical v1 edge-list text.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{EDGE_LIST_HEADER}\n{} {}\n", self.n, self.c());
        for (i, u, v) in self.edges() {
            out.push_str(&format!("{i} {u} {v}\n"));
        }
        out
    }
}

fn check_permutation(perm: &[usize], len: usize, what: &'static str) -> Result<(), ModelError> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(ModelError::NotAPermutation { what, len });
    }
    for &x in perm {
        if x == 0 || x > len || std::mem::replace(&mut seen[x - 1], true) {
            return Err(ModelError::NotAPermutation { what, len });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header line `{EDGE_LIST_HEADER}`")]
    BadHeader,
    #[error("expected `n c` size line, got `{0}`")]
    BadSizeLine(String),
    #[error("expected `color source target`, got `{0}`")]
    BadEdgeLine(String),
    #[error("missing `n c` size line")]
    MissingSizeLine,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn parse_fields<const N: usize>(line: &str) -> Option<[usize; N]> {
    let mut out = [0; N];
    let mut fields = line.split(' ');
    for slot in out.iter_mut() {
        let field = fields.next()?;
        if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        *slot = field.parse().ok()?;
    }
    fields.next().is_none().then_some(out)
}

/// Parses the v1 edge-list format. Errors carry 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<DigraphCollection, ParseError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, EDGE_LIST_HEADER)) => {}
        _ => return Err(ParseError { line: 1, kind: ParseErrorKind::BadHeader }),
    }
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (size_line, sizes) = body
        .next()
        .ok_or(ParseError { line: 2, kind: ParseErrorKind::MissingSizeLine })?;
    let [n, c] = parse_fields::<2>(sizes).ok_or_else(|| ParseError {
        line: size_line,
        kind: ParseErrorKind::BadSizeLine(sizes.to_string()),
    })?;
    let mut coll = DigraphCollection::new(n, c)
        .map_err(|e| ParseError { line: size_line, kind: e.into() })?;
    for (line, content) in body {
        let [i, u, v] = parse_fields::<3>(content).ok_or_else(|| ParseError {
            line,
            kind: ParseErrorKind::BadEdgeLine(content.to_string()),
        })?;
        coll.add_edge(i, u, v)
            .map_err(|e| ParseError { line, kind: e.into() })?;
    }
    Ok(coll)
}

pub fn serialize_edge_list(coll: &DigraphCollection) -> String {
    coll.to_edge_list()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_collection_is_empty() {
        let coll = DigraphCollection::new(3, 2).unwrap();
        assert_eq!(coll.edge_counts().per_color, vec![0, 0]);
        assert_eq!(DigraphCollection::new(0, 1), Err(ModelError::NoVertices));
        assert_eq!(DigraphCollection::new(1, 0), Err(ModelError::NoColors));
    }

    #[test]
    fn single_vertex_admits_no_edges() {
        let mut coll = DigraphCollection::new(1, 5).unwrap();
        assert_eq!(coll.add_edge(1, 1, 1), Err(ModelError::Loop(1)));
        assert!(coll.add_edge(1, 1, 2).is_err());
        assert_eq!(coll.total_edges(), 0);
    }

    #[test]
    fn add_edge_errors() {
        let mut coll = DigraphCollection::new(3, 2).unwrap();
        coll.add_edge(1, 1, 2).unwrap();
        assert_eq!(coll.edge_counts().per_color, vec![1, 0]);
        assert_eq!(
            coll.add_edge(1, 1, 2),
            Err(ModelError::DuplicateEdge { color: 1, u: 1, v: 2 })
        );
        assert_eq!(coll.add_edge(1, 2, 2), Err(ModelError::Loop(2)));
        assert_eq!(coll.add_edge(3, 1, 2), Err(ModelError::ColorOutOfRange { color: 3, c: 2 }));
        assert_eq!(coll.add_edge(1, 4, 2), Err(ModelError::VertexOutOfRange { vertex: 4, n: 3 }));
        // opposite direction and other colors are distinct edges
        coll.add_edge(1, 2, 1).unwrap();
        coll.add_edge(2, 1, 2).unwrap();
        assert_eq!(coll.edge_counts(), EdgeCountSummary::from_counts(vec![2, 1]));
    }

    #[test]
    fn reverse_single_edge() {
        let mut coll = DigraphCollection::new(3, 1).unwrap();
        coll.add_edge(1, 1, 2).unwrap();
        let rev = coll.reverse();
        assert!(rev.has_edge(1, 2, 1));
        assert!(!rev.has_edge(1, 1, 2));
        assert_eq!(rev.reverse(), coll);
    }

    #[test]
    fn permute_swaps_color_counts() {
        let mut coll = DigraphCollection::new(4, 2).unwrap();
        for (u, v) in [(1, 2), (2, 3), (3, 4)] {
            coll.add_edge(1, u, v).unwrap();
        }
        for (u, v) in [(1, 3), (1, 4), (2, 4), (4, 1), (4, 2)] {
            coll.add_edge(2, u, v).unwrap();
        }
        assert_eq!(coll.permute(&[1, 2, 3, 4], &[1, 2]).unwrap(), coll);
        let swapped = coll.permute(&[1, 2, 3, 4], &[2, 1]).unwrap();
        assert_eq!(swapped.edge_counts().per_color, vec![5, 3]);
        assert!(coll.permute(&[1, 1, 3, 4], &[1, 2]).is_err());
        assert!(coll.permute(&[1, 2, 3], &[1, 2]).is_err());
    }

    #[test]
    fn bulk_pairs_skip_loops_and_reject_duplicates() {
        for threshold in [0, 100] {
            let mut coll = DigraphCollection::with_dense_threshold(4, 1, threshold).unwrap();
            coll.add_all_pairs(1, &[1, 2], &[1, 2, 3]).unwrap();
            assert_eq!(coll.color_len(1), 4);
            assert!(coll.has_edge(1, 1, 2) && coll.has_edge(1, 2, 1) && !coll.has_edge(1, 1, 1));
            assert_eq!(
                coll.add_all_pairs(1, &[3, 2], &[1]),
                Err(ModelError::DuplicateEdge { color: 1, u: 2, v: 1 })
            );
            assert_eq!(coll.color_len(1), 4);
            assert!(coll.add_all_pairs(1, &[4, 4], &[1]).is_err());
        }
    }

    #[test]
    fn parse_minimal_file() {
        let coll = parse_edge_list("rainbow-digraph v1\n3 2\n1 1 2\n").unwrap();
        assert_eq!((coll.n(), coll.c()), (3, 2));
        assert!(coll.has_edge(1, 1, 2));
        assert_eq!(coll.total_edges(), 1);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_edge_list("rainbow-digraph v1\n3 2\n# comment\n1 2 2\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(err.kind, ParseErrorKind::Model(ModelError::Loop(2)));

        let err = parse_edge_list("rainbow-digraph v1\n3 2\n1 1 2\n\n1 1 2\n").unwrap_err();
        assert_eq!(err.line, 5);

        assert_eq!(parse_edge_list("rainbow digraph\n3 2\n").unwrap_err().line, 1);
        assert_eq!(parse_edge_list("rainbow-digraph v1\n3\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("rainbow-digraph v1\n3 2\n1 1\n").unwrap_err().line, 3);
        assert_eq!(parse_edge_list("rainbow-digraph v1\n3 2\n1 -1 2\n").unwrap_err().line, 3);
        assert_eq!(parse_edge_list("rainbow-digraph v1\n3 2\n3 1 2\n").unwrap_err().line, 3);
        assert_eq!(parse_edge_list("rainbow-digraph v1\n0 2\n").unwrap_err().line, 2);
    }

    #[test]
    fn serialization_is_canonical() {
        let mut coll = DigraphCollection::new(3, 2).unwrap();
        coll.add_edge(2, 3, 1).unwrap();
        coll.add_edge(1, 2, 3).unwrap();
        coll.add_edge(1, 1, 3).unwrap();
        coll.add_edge(1, 1, 2).unwrap();
        assert_eq!(
            coll.to_edge_list(),
            "rainbow-digraph v1\n3 2\n1 1 2\n1 1 3\n1 2 3\n2 3 1\n"
        );
    }

    #[test]
    fn pattern_normalization() {
        let pat = StarPattern::new(3, 1).unwrap();
        assert_eq!(pat.normalized(), (StarPattern { p: 1, q: 3 }, true));
        assert_eq!(pat.reversed().reversed(), pat);
        assert!(StarPattern::new(0, 0).is_err());
    }
}
