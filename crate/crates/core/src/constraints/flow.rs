//! Exact feasibility of two residue profiles sharing one set `A ⊆ [n]`.
//!
//! Rows are classes mod `p`, columns classes mod `q`; cell `(j, k)` may hold at
//! most `|[n] ∩ (j mod p) ∩ (k mod q)|` elements. A table with the requested
//! margins exists iff the max flow of the bipartite network saturates them.

use std::collections::VecDeque;

use super::residue::ResidueProfile;

/// `cells[j][k] = |{ i < n : i ≡ j (mod p), i ≡ k (mod q) }|`.
pub fn cell_capacities(n: u64, p: u64, q: u64) -> Vec<Vec<u64>> {
    let mut cells = vec![vec![0u64; q as usize]; p as usize];
    let l = p * q / num_integer::gcd(p, q);
    let full = n / l;
    for i in 0..l {
        cells[(i % p) as usize][(i % q) as usize] += full;
    }
    for i in full * l..n {
        cells[(i % p) as usize][(i % q) as usize] += 1;
    }
    cells
}

pub fn contingency_feasible(n: u64, rows: &ResidueProfile, cols: &ResidueProfile) -> bool {
    if rows.size() != cols.size() {
        return false;
    }
    let caps = cell_capacities(n, rows.p, cols.p);
    max_flow_bipartite(&rows.counts, &cols.counts, &caps) == rows.size()
}

struct Edge {
    to: usize,
    cap: u64,
}

/// Edmonds–Karp on source → rows → columns → sink.
fn max_flow_bipartite(rows: &[u64], cols: &[u64], caps: &[Vec<u64>]) -> u64 {
    let (r, c) = (rows.len(), cols.len());
    let source = r + c;
    let sink = source + 1;
    let mut edges: Vec<Edge> = Vec::new();
    let mut adj = vec![Vec::new(); r + c + 2];
    let add = |edges: &mut Vec<Edge>, adj: &mut Vec<Vec<usize>>, a: usize, b: usize, cap: u64| {
        adj[a].push(edges.len());
        edges.push(Edge { to: b, cap });
        adj[b].push(edges.len());
        edges.push(Edge { to: a, cap: 0 });
    };
    for (j, &x) in rows.iter().enumerate() {
        add(&mut edges, &mut adj, source, j, x);
    }
    for (k, &x) in cols.iter().enumerate() {
        add(&mut edges, &mut adj, r + k, sink, x);
    }
    for j in 0..r {
        for k in 0..c {
            if caps[j][k] > 0 {
                add(&mut edges, &mut adj, j, r + k, caps[j][k]);
            }
        }
    }
    let mut flow = 0;
    loop {
        let mut prev: Vec<Option<usize>> = vec![None; r + c + 2];
        let mut queue = VecDeque::from([source]);
        let mut seen = vec![false; r + c + 2];
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            for &e in &adj[u] {
                let v = edges[e].to;
                if !seen[v] && edges[e].cap > 0 {
                    seen[v] = true;
                    prev[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        if !seen[sink] {
            return flow;
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while let Some(e) = prev[v] {
            bottleneck = bottleneck.min(edges[e].cap);
            v = edges[e ^ 1].to;
        }
        let mut v = sink;
        while let Some(e) = prev[v] {
            edges[e].cap -= bottleneck;
            edges[e ^ 1].cap += bottleneck;
            v = edges[e ^ 1].to;
        }
        flow += bottleneck;
    }
}
