//! Proper k-edge-coloring of k-regular bipartite multigraphs by repeated
//! perfect matching.

use std::collections::VecDeque;

use super::SplitGraph;
use crate::{Error, Result};

const INF: usize = usize::MAX;

/// Maximum matching by Hopcroft–Karp over an edge-indexed adjacency list.
///
/// `adj[u]` lists edge ids leaving left vertex `u` in ascending order;
/// `ends[e]` is `(left, right)`. Vertices and edges are always scanned in
/// ascending index order, so the result is deterministic. Returns the matched
/// edge of every left vertex.
pub fn hopcroft_karp(
    left_count: usize,
    right_count: usize,
    adj: &[Vec<usize>],
    ends: &[(usize, usize)],
) -> Vec<Option<usize>> {
    let mut match_l: Vec<Option<usize>> = vec![None; left_count];
    let mut match_r: Vec<Option<usize>> = vec![None; right_count];
    let mut dist = vec![INF; left_count];
    let mut queue = VecDeque::new();

    loop {
        // layer the graph from the free left vertices
        queue.clear();
        for u in 0..left_count {
            if match_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut free_layer = INF;
        while let Some(u) = queue.pop_front() {
            if dist[u] >= free_layer {
                continue;
            }
            for &e in &adj[u] {
                match match_r[ends[e].1] {
                    None => free_layer = free_layer.min(dist[u] + 1),
                    Some(m) => {
                        let u2 = ends[m].0;
                        if dist[u2] == INF {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if free_layer == INF {
            break;
        }

        let mut next = vec![0usize; left_count];
        for root in 0..left_count {
            if match_l[root].is_some() {
                continue;
            }
            let mut stack = vec![root];
            let mut path: Vec<usize> = Vec::new();
            while let Some(&u) = stack.last() {
                if next[u] == adj[u].len() {
                    dist[u] = INF;
                    stack.pop();
                    path.pop();
                    continue;
                }
                let e = adj[u][next[u]];
                next[u] += 1;
                match match_r[ends[e].1] {
                    None if dist[u] + 1 == free_layer => {
                        path.push(e);
                        for &pe in &path {
                            let (l, r) = ends[pe];
                            match_l[l] = Some(pe);
                            match_r[r] = Some(pe);
                        }
                        break;
                    }
                    None => {}
                    Some(m) => {
                        let u2 = ends[m].0;
                        if dist[u2] != INF && dist[u2] == dist[u] + 1 {
                            path.push(e);
                            stack.push(u2);
                        }
                    }
                }
            }
        }
    }
    match_l
}

/// Colors every edge with one of k colors so that each vertex sees each
/// color exactly once. Color c is the c-th perfect matching peeled off the
/// residual graph, which stays regular after every removal.
pub fn edge_color(graph: &SplitGraph) -> Result<Vec<usize>> {
    let Some(k) = graph.regular_degree() else {
        let left = graph.left_degrees();
        let right = graph.right_degrees();
        let mut offenders: Vec<String> = Vec::new();
        let d = left.first().copied().unwrap_or(0);
        offenders.extend(
            left.iter()
                .enumerate()
                .filter(|&(_, &x)| x != d)
                .map(|(u, x)| format!("left {u} has degree {x}")),
        );
        offenders.extend(
            right
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x != d)
                .map(|(w, x)| format!("right {w} has degree {x}")),
        );
        return Err(Error::structural(
            format!("graph is not regular (left vertex 0 has degree {d})"),
            offenders,
        ));
    };
    let ends = graph.edges();
    let n = graph.left_count();
    let mut color = vec![INF; ends.len()];
    if k == 0 {
        return Ok(color);
    }
    if n != graph.right_count() {
        return Err(Error::structural(
            "regular bipartite graph with unequal sides",
            vec![format!("{} left vs {} right", n, graph.right_count())],
        ));
    }

    for c in 0..k {
        let mut adj = vec![Vec::with_capacity(k - c); n];
        for (e, &(l, _)) in ends.iter().enumerate() {
            if color[e] == INF {
                adj[l].push(e);
            }
        }
        let matching = hopcroft_karp(n, graph.right_count(), &adj, ends);
        for (u, m) in matching.into_iter().enumerate() {
            let e = m.ok_or_else(|| {
                Error::Internal(format!("no perfect matching for color {c} (left {u} unmatched)"))
            })?;
            color[e] = c;
        }
    }
    Ok(color)
}
