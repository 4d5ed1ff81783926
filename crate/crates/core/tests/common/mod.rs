//! Brute-force oracles shared by the integration and acceptance tests. None of
//! these go through the library's union-find, matching or search code.

#![allow(dead_code)]

use brpart::{Color, MultiGraph};
use rand::Rng;

/// Connected in the plain-DFS sense, using only `edges`.
pub fn connects_all(g: &MultiGraph, edges: &[usize]) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &e in edges {
        let (a, b) = g.endpoints(e);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn naive_is_tree(g: &MultiGraph, edges: &[usize]) -> bool {
    g.vertex_count() >= 1 && edges.len() == g.vertex_count() - 1 && connects_all(g, edges)
}

/// Every out-degree vector reachable by orienting `edges`, by enumerating all
/// `2^|edges|` orientations.
pub fn reachable_out_degrees(g: &MultiGraph, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let mut out = vec![0; g.vertex_count()];
        for (i, &e) in edges.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            out[if mask >> i & 1 == 0 { a } else { b }] += 1;
        }
        if !found.contains(&out) {
            found.push(out);
        }
    }
    found
}

/// Exists an orientation of `edges` whose out-degree equals `m` on every
/// vertex the edges touch?
pub fn naive_orientable(g: &MultiGraph, edges: &[usize], m: &[usize]) -> bool {
    let mut touched = vec![false; g.vertex_count()];
    for &e in edges {
        let (a, b) = g.endpoints(e);
        touched[a] = true;
        touched[b] = true;
    }
    (0u32..(1 << edges.len())).any(|mask| {
        let mut out = vec![0; g.vertex_count()];
        for (i, &e) in edges.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            out[if mask >> i & 1 == 0 { a } else { b }] += 1;
        }
        (0..g.vertex_count()).all(|v| !touched[v] || out[v] == m[v])
    })
}

/// All blue/red splits of the edge set into two spanning trees, as
/// `(blue, red)` edge lists.
pub fn tree_pairs(g: &MultiGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = g.edge_count();
    (0u32..(1 << m))
        .filter_map(|mask| {
            let blue: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 0).collect();
            let red: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            (naive_is_tree(g, &blue) && naive_is_tree(g, &red)).then_some((blue, red))
        })
        .collect()
}

/// Precomputed naive answers for one graph: for every pair of spanning trees,
/// the sets of out-degree vectors each tree can realise.
pub struct PartitionOracle {
    pairs: Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    vertex_count: usize,
    edge_count: usize,
}

impl PartitionOracle {
    pub fn new(g: &MultiGraph) -> Self {
        let pairs = tree_pairs(g)
            .into_iter()
            .map(|(blue, red)| (reachable_out_degrees(g, &blue), reachable_out_degrees(g, &red)))
            .collect();
        PartitionOracle {
            pairs,
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
        }
    }

    pub fn has_partition(&self, b: &[usize], r: &[usize]) -> bool {
        assert_eq!(b.len(), self.vertex_count);
        self.pairs
            .iter()
            .any(|(blue, red)| blue.iter().any(|x| x == b) && red.iter().any(|x| x == r))
    }

    pub fn tree_pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// Every labelled multigraph on `n` vertices with at most `max_edges` edges
/// (edges listed in lexicographic pair order) that is connected.
pub fn connected_multigraphs(n: usize, max_edges: usize) -> Vec<MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        start: usize,
        left: usize,
        n: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<MultiGraph>,
    ) {
        let g = MultiGraph::new(n, current.clone()).unwrap();
        let all: Vec<usize> = (0..g.edge_count()).collect();
        if connects_all(&g, &all) {
            out.push(g);
        }
        if left == 0 {
            return;
        }
        for i in start..pairs.len() {
            current.push(pairs[i]);
            rec(pairs, i, left - 1, n, current, out);
            current.pop();
        }
    }
    rec(&pairs, 0, max_edges, n, &mut current, &mut out);
    out
}

/// All vectors of length `n` with entries in `0..=max`.
pub fn all_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=max).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn random_multigraph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let edges = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect();
    MultiGraph::new(n, edges).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn colors_from_mask(n: usize, red_mask: u32) -> Vec<Color> {
    (0..n)
        .map(|i| if red_mask >> i & 1 == 1 { Color::Red } else { Color::Blue })
        .collect()
}
