//! Maximum bipartite matching (Hopcroft–Karp) and König vertex covers.

use std::collections::VecDeque;

/// Bipartite graph with `left` and `right` vertex classes, adjacency from the left.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl Matching {
    /// Matched `(left, right)` pairs in increasing left order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl VertexCover {
    pub fn size(&self) -> usize {
        self.left.len() + self.right.len()
    }
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph { right, adj: vec![Vec::new(); left] }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(r < self.right, "right vertex {r} out of range");
        self.adj[l].push(r);
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn max_matching(&self) -> Matching {
        const INF: usize = usize::MAX;
        let n = self.left();
        let mut left_mate = vec![None; n];
        let mut right_mate: Vec<Option<usize>> = vec![None; self.right];
        let mut dist = vec![INF; n];
        let mut size = 0;

        loop {
            // BFS layering from free left vertices.
            let mut queue = VecDeque::new();
            for l in 0..n {
                if left_mate[l].is_none() {
                    dist[l] = 0;
                    queue.push_back(l);
                } else {
                    dist[l] = INF;
                }
            }
            let mut found = false;
            while let Some(l) = queue.pop_front() {
                for &r in &self.adj[l] {
                    match right_mate[r] {
                        None => found = true,
                        Some(l2) if dist[l2] == INF => {
                            dist[l2] = dist[l] + 1;
                            queue.push_back(l2);
                        }
                        _ => {}
                    }
                }
            }
            if !found {
                break;
            }
            let mut it = vec![0usize; n];
            for l in 0..n {
                if left_mate[l].is_none()
                    && self.augment(l, &mut dist, &mut it, &mut left_mate, &mut right_mate)
                {
                    size += 1;
                }
            }
        }
        Matching { size, left_mate, right_mate }
    }

    fn augment(
        &self,
        l: usize,
        dist: &mut [usize],
        it: &mut [usize],
        left_mate: &mut [Option<usize>],
        right_mate: &mut [Option<usize>],
    ) -> bool {
        while it[l] < self.adj[l].len() {
            let r = self.adj[l][it[l]];
            it[l] += 1;
            let ok = match right_mate[r] {
                None => true,
                Some(l2) => {
                    dist[l2] == dist[l].wrapping_add(1)
                        && self.augment(l2, dist, it, left_mate, right_mate)
                }
            };
            if ok {
                left_mate[l] = Some(r);
                right_mate[r] = Some(l);
                return true;
            }
        }
        dist[l] = usize::MAX;
        false
    }

    /// Minimum vertex cover built from a maximum matching (König): with `Z` the
    /// vertices reachable from free left vertices by alternating paths, the cover
    /// is `(L \ Z) ∪ (R ∩ Z)`.
    pub fn min_vertex_cover(&self, matching: &Matching) -> VertexCover {
        let mut left_seen = vec![false; self.left()];
        let mut right_seen = vec![false; self.right];
        let mut queue: VecDeque<usize> = (0..self.left())
            .filter(|&l| matching.left_mate[l].is_none())
            .collect();
        for &l in &queue {
            left_seen[l] = true;
        }
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                if right_seen[r] || matching.left_mate[l] == Some(r) {
                    continue;
                }
                right_seen[r] = true;
                if let Some(l2) = matching.right_mate[r] {
                    if !left_seen[l2] {
                        left_seen[l2] = true;
                        queue.push_back(l2);
                    }
                }
            }
        }
        VertexCover {
            left: (0..self.left()).filter(|&l| !left_seen[l]).collect(),
            right: (0..self.right).filter(|&r| right_seen[r]).collect(),
        }
    }
}
