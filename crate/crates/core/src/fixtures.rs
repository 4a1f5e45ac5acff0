//! Small deterministic graph families used by tests, benchmarks and demos.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("fixture edges are loop-free")
}

pub fn single_edge() -> Graph {
    build(2, vec![(0, 1)])
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|v| (v, (v + 1) % n)).collect())
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, edges)
}

/// Random connected graph: a random spanning tree plus `extra_edges`
/// additional distinct edges, seeded for reproducibility.
pub fn random_connected(n: usize, extra_edges: usize, seed: u64) -> Graph {
    assert!(n >= 2, "need at least two nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        edges.push((parent.min(order[k]), parent.max(order[k])));
    }
    let max_edges = n * (n - 1) / 2;
    let target = (edges.len() + extra_edges).min(max_edges);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    build(n, edges)
}

/// Disjoint union; nodes of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.node_count();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)))
        .collect();
    build(a.node_count() + b.node_count(), edges)
}

/// Seeded uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

/// The standard named fixture set: single edge, P3, C4, S3, K4, random
/// connected graphs on 16 and 32 nodes, and P3 ⊔ C4.
pub fn standard_set() -> Vec<(&'static str, Graph)> {
    vec![
        ("single_edge", single_edge()),
        ("path3", path(3)),
        ("cycle4", cycle(4)),
        ("star3", star(3)),
        ("complete4", complete(4)),
        ("random16", random_connected(16, 12, 16)),
        ("random32", random_connected(32, 28, 32)),
        ("path3_cycle4", disjoint_union(&path(3), &cycle(4))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    fn connected(g: &Graph) -> bool {
        let n = g.node_count();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in g.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    #[test]
    fn random_graphs_are_connected_and_deterministic() {
        for seed in 0..20 {
            let g = random_connected(24, 10, seed);
            assert!(connected(&g));
            assert_eq!(g.edge_count(), 33);
            assert_eq!(g, random_connected(24, 10, seed));
        }
    }

    #[test]
    fn standard_set_is_valid() {
        for (name, g) in standard_set() {
            assert!(validate(&g).is_empty(), "{name}");
        }
    }
}
