//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the flow code or the search code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nbcube::graph::{Graph, Vertex};

/// Plain adjacency sets, rebuilt from the edge list.
pub fn adjacency(g: &Graph) -> Vec<BTreeSet<Vertex>> {
    let mut adj = vec![BTreeSet::new(); g.vertex_count()];
    for (a, b) in g.edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

/// All subsets of `0..n` of the given size, lexicographic.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<Vertex>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            cur.push(v);
            go(v + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Number of connected pieces among the vertices with `alive[v]`.
pub fn alive_components(adj: &[BTreeSet<Vertex>], alive: &[bool]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if !alive[s] || seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Smallest `S` with `G - S` disconnected or a single vertex.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    let adj = adjacency(g);
    if n <= 1 {
        return 0;
    }
    for size in 0..n {
        for s in subsets(n, size) {
            let mut alive = vec![true; n];
            for &v in &s {
                alive[v] = false;
            }
            if n - size <= 1 || alive_components(&adj, &alive) > 1 {
                return size;
            }
        }
    }
    n - 1
}

/// Closed neighbourhood of `u` as a mask.
pub fn closed_mask(adj: &[BTreeSet<Vertex>], u: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; adj.len()];
    for &x in u {
        m[x] = true;
        for &w in &adj[x] {
            m[w] = true;
        }
    }
    m
}

/// Whether the survival graph of `u` is disconnected, complete or empty.
pub fn survival_is_terminal(adj: &[BTreeSet<Vertex>], u: &[Vertex]) -> bool {
    let gone = closed_mask(adj, u);
    let alive: Vec<bool> = gone.iter().map(|&g| !g).collect();
    let left: Vec<Vertex> = (0..adj.len()).filter(|&v| alive[v]).collect();
    if left.is_empty() || alive_components(adj, &alive) > 1 {
        return true;
    }
    left.iter()
        .all(|&a| left.iter().all(|&b| a == b || adj[a].contains(&b)))
}

/// `κ_NB` with no symmetry reduction.
pub fn brute_kappa_nb(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.vertex_count();
    (0..=n)
        .find(|&size| subsets(n, size).iter().any(|u| survival_is_terminal(&adj, u)))
        .expect("U = V always qualifies")
}

/// Digits of `v` in `Q_n^k`, least significant first.
pub fn digits(v: Vertex, n: usize, k: usize) -> Vec<usize> {
    let mut rest = v;
    (0..n)
        .map(|_| {
            let d = rest % k;
            rest /= k;
            d
        })
        .collect()
}

pub fn torus_adjacent(a: Vertex, b: Vertex, n: usize, k: usize) -> bool {
    let (da, db) = (digits(a, n, k), digits(b, n, k));
    let diff: Vec<usize> = (0..n).filter(|&i| da[i] != db[i]).collect();
    diff.len() == 1 && {
        let d = da[diff[0]].abs_diff(db[diff[0]]);
        d == 1 || d == k - 1
    }
}

/// `Q_n^k` rebuilt from the digit rule alone.
pub fn naive_torus(n: usize, k: usize) -> Graph {
    let order = k.pow(n as u32);
    let mut edges = Vec::new();
    for a in 0..order {
        for b in a + 1..order {
            if torus_adjacent(a, b, n, k) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(order, edges).unwrap()
}

pub fn brute_common_neighbors(x: Vertex, y: Vertex, n: usize, k: usize) -> usize {
    (0..k.pow(n as u32))
        .filter(|&w| torus_adjacent(w, x, n, k) && torus_adjacent(w, y, n, k))
        .count()
}

/// Independent check that `paths` are internally disjoint healthy `(x, y)`-paths of `Q_n^k ⊖ U`.
pub fn check_paths(
    n: usize,
    k: usize,
    faults: &[Vertex],
    x: Vertex,
    y: Vertex,
    paths: &[Vec<Vertex>],
) -> Result<(), String> {
    let order = k.pow(n as u32);
    let healthy = |v: Vertex| v < order && faults.iter().all(|&u| u != v && !torus_adjacent(u, v, n, k));
    let mut used = BTreeSet::new();
    for (i, p) in paths.iter().enumerate() {
        if p.first() != Some(&x) || p.last() != Some(&y) {
            return Err(format!("path {i} has wrong ends"));
        }
        let distinct: BTreeSet<_> = p.iter().collect();
        if distinct.len() != p.len() {
            return Err(format!("path {i} repeats a vertex"));
        }
        for w in p.windows(2) {
            if !torus_adjacent(w[0], w[1], n, k) {
                return Err(format!("path {i}: {} -/- {}", w[0], w[1]));
            }
        }
        for &v in p {
            if !healthy(v) {
                return Err(format!("path {i}: {v} not healthy"));
            }
        }
        for &v in &p[1..p.len() - 1] {
            if !used.insert(v) {
                return Err(format!("path {i}: {v} shared"));
            }
        }
    }
    if paths.len() == 2 && paths[0] == paths[1] {
        return Err("duplicate path".into());
    }
    Ok(())
}

/// Small named graphs for infrastructure checks.
pub fn corpus() -> Vec<(String, Graph, bool)> {
    let mut out: Vec<(String, Graph, bool)> = Vec::new();
    for n in 1..=7 {
        out.push((format!("K{n}"), Graph::complete(n), true));
    }
    for n in 3..=12 {
        out.push((format!("C{n}"), Graph::cycle(n), true));
    }
    for n in 2..=6 {
        out.push((format!("P{n}"), Graph::path(n), false));
    }
    let petersen = Graph::from_edges(
        10,
        (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]),
    )
    .unwrap();
    out.push(("Petersen".into(), petersen, true));
    let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    out.push(("K3,3".into(), k33, true));
    let prism = Graph::from_edges(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    out.push(("prism".into(), prism, true));
    let wheel = Graph::from_edges(7, (1..7).flat_map(|i| [(0, i), (i, i % 6 + 1)])).unwrap();
    out.push(("W6".into(), wheel, false));
    let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
    out.push(("star".into(), star, false));
    let split = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
    out.push(("2P3".into(), split, false));
    for (n, k) in [(2, 2), (3, 2), (2, 3), (1, 5), (1, 8)] {
        out.push((format!("Q_{n}^{k}"), naive_torus(n, k), true));
    }
    // circulant C_8(1,2) and C_10(1,3)
    out.push((
        "C8(1,2)".into(),
        Graph::from_edges(8, (0..8).flat_map(|i| [(i, (i + 1) % 8), (i, (i + 2) % 8)])).unwrap(),
        true,
    ));
    out.push((
        "C10(1,3)".into(),
        Graph::from_edges(10, (0..10).flat_map(|i| [(i, (i + 1) % 10), (i, (i + 3) % 10)])).unwrap(),
        true,
    ));
    out
}
