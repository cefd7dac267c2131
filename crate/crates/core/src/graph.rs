//! Undirected simple graphs and the Menger machinery built on top of them.
//!
//! Every disjoint-path query is answered by a unit-capacity max-flow on the
//! vertex-split network: each vertex `v` becomes an arc `v_in -> v_out` of
//! capacity one, each edge `{u, w}` becomes arcs `u_out -> w_in` and
//! `w_out -> u_in`. Augmenting paths are found by breadth-first search with
//! arcs scanned in ascending vertex order, and flows are decomposed by always
//! following the lowest-id saturated arc, so every result is reproducible.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("path endpoints must be distinct (got {0} twice)")]
    SameEndpoints(Vertex),
    #[error("vertex {0} is used as an endpoint but is also forbidden")]
    ForbiddenEndpoint(Vertex),
    #[error("no path joins {0} and {1} outside the forbidden set")]
    NoPath(Vertex, Vertex),
    #[error("fan infeasible: found {found} of {needed} paths")]
    FanInfeasible { found: usize, needed: usize },
    #[error("disjoint set paths infeasible: found {found} of {needed} paths")]
    Infeasible { found: usize, needed: usize },
    #[error("vertex {0} appears in two sets that must be disjoint")]
    Overlap(Vertex),
    #[error("source and target sets differ in size ({sources} vs {targets})")]
    SizeMismatch { sources: usize, targets: usize },
    #[error("connectivity {actual} is below the required {required}")]
    ConnectivityTooLow { actual: usize, required: usize },
}

/// Immutable undirected simple graph stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edge_count", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `order` vertices. Repeated edges collapse into one.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); order];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn empty(order: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); order],
        }
    }

    pub fn complete(order: usize) -> Self {
        let adjacency = (0..order).map(|u| (0..order).filter(|&v| v != u).collect()).collect();
        Graph { adjacency }
    }

    /// Cycle `0 - 1 - ... - (order-1) - 0`; requires `order >= 3`.
    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(order, (0..order).map(|i| (i, (i + 1) % order))).expect("cycle edges are in range")
    }

    /// Path `0 - 1 - ... - (order-1)`.
    pub fn path(order: usize) -> Self {
        Graph::from_edges(order, (1..order).map(|i| (i - 1, i))).expect("path edges are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.vertex_count()
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    /// The common degree if the graph is regular (and non-empty).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree()?;
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Subgraph induced by `keep`. Returns the subgraph together with the
    /// sorted list of kept vertices; local vertex `i` is `mapping[i]` in `self`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut mapping: Vec<Vertex> = keep.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in mapping.iter().enumerate() {
            local[v] = i;
        }
        let adjacency = mapping
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        (Graph { adjacency }, mapping)
    }

    /// `G - S`: the subgraph induced by the vertices outside `removed`.
    pub fn without(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut gone = vec![false; self.vertex_count()];
        for &v in removed {
            if v < gone.len() {
                gone[v] = true;
            }
        }
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Adds a new vertex (with id `vertex_count()`) joined to every vertex of `joined`.
    pub fn with_apex(&self, joined: &[Vertex]) -> Graph {
        let apex = self.vertex_count();
        let mut adjacency = self.adjacency.clone();
        let mut list: Vec<Vertex> = joined.to_vec();
        list.sort_unstable();
        list.dedup();
        for &v in &list {
            adjacency[v].push(apex);
        }
        adjacency.push(list);
        Graph { adjacency }
    }
}

/// Sequence of pairwise distinct vertices, consecutive ones adjacent.
/// A single vertex is a path of length zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Checks distinctness and adjacency of consecutive vertices in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.0.is_empty() || self.0.iter().any(|&v| !g.contains(v)) {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.0 {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.0.windows(2).all(|w| g.is_adjacent(w[0], w[1]))
    }
}

impl From<Vec<Vertex>> for Path {
    fn from(v: Vec<Vertex>) -> Self {
        Path(v)
    }
}

/// Internally disjoint `(source, target)`-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub source: Vertex,
    pub target: Vertex,
    pub paths: Vec<Path>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Re-checks the family against `g`: every path valid, correct endpoints,
    /// no repeated path, and pairwise intersections exactly `{source, target}`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut owner = vec![usize::MAX; g.vertex_count()];
        let mut seen = std::collections::BTreeSet::new();
        for (i, p) in self.paths.iter().enumerate() {
            if !p.is_valid_in(g)
                || p.first() != Some(self.source)
                || p.last() != Some(self.target)
                || !seen.insert(p.vertices())
            {
                return false;
            }
            let v = p.vertices();
            for &w in &v[1..v.len().saturating_sub(1)] {
                if owner[w] != usize::MAX && owner[w] != i {
                    return false;
                }
                owner[w] = i;
            }
        }
        true
    }
}

/// `(apex, targets)`-fan: one path per target, any two sharing only the apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub apex: Vertex,
    pub targets: Vec<Vertex>,
    /// `paths[i]` runs from the apex to `targets[i]`.
    pub paths: Vec<Path>,
}

impl Fan {
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.paths.len() != self.targets.len() {
            return false;
        }
        let mut used = vec![false; g.vertex_count()];
        for (p, &t) in self.paths.iter().zip(&self.targets) {
            if !p.is_valid_in(g) || p.first() != Some(self.apex) || p.last() != Some(t) {
                return false;
            }
            for &w in &p.vertices()[1..] {
                if std::mem::replace(&mut used[w], true) {
                    return false;
                }
            }
        }
        true
    }

    pub fn path_to(&self, target: Vertex) -> Option<&Path> {
        self.targets.iter().position(|&t| t == target).map(|i| &self.paths[i])
    }
}

/// Coarse shape of a graph as used by the neighbor-connectivity definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Empty,
    Complete,
    Disconnected,
    Other,
}

impl Classification {
    /// True for the shapes that terminate the neighbor-connectivity search.
    pub fn is_terminal(self) -> bool {
        !matches!(self, Classification::Other)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Empty => "empty",
            Classification::Complete => "complete",
            Classification::Disconnected => "disconnected",
            Classification::Other => "other",
        };
        f.write_str(s)
    }
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in g.vertices() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn classify(g: &Graph) -> Classification {
    classify_alive(g, &vec![true; g.vertex_count()])
}

/// Classifies the subgraph induced by the vertices with `alive[v]` set,
/// without materialising it. Checked in the order Empty, Complete, Disconnected.
pub fn classify_alive(g: &Graph, alive: &[bool]) -> Classification {
    let live: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    let count = live.len();
    if count == 0 {
        return Classification::Empty;
    }
    let complete = live
        .iter()
        .all(|&v| g.neighbors(v).iter().filter(|&&w| alive[w]).count() == count - 1);
    if complete {
        return Classification::Complete;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![live[0]];
    seen[live[0]] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    if reached < count {
        Classification::Disconnected
    } else {
        Classification::Other
    }
}

struct FlowNetwork {
    arcs_from: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<u32>,
}

impl FlowNetwork {
    fn with_nodes(nodes: usize) -> Self {
        FlowNetwork {
            arcs_from: vec![Vec::new(); nodes],
            head: Vec::new(),
            residual: Vec::new(),
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, capacity: u32) {
        let id = self.head.len();
        self.head.push(to);
        self.residual.push(capacity);
        self.arcs_from[from].push(id);
        self.head.push(from);
        self.residual.push(0);
        self.arcs_from[to].push(id + 1);
    }

    /// Vertex-split network of `g` for an `s`-`t` query; forbidden vertices are absent.
    fn vertex_split(g: &Graph, s: Vertex, t: Vertex, forbidden: &[bool]) -> Self {
        let mut net = FlowNetwork::with_nodes(2 * g.vertex_count());
        for v in g.vertices() {
            if forbidden[v] {
                continue;
            }
            if v != s && v != t {
                net.add_arc(2 * v, 2 * v + 1, 1);
            }
            if v == t {
                continue;
            }
            for &w in g.neighbors(v) {
                if !forbidden[w] && w != s {
                    net.add_arc(2 * v + 1, 2 * w, 1);
                }
            }
        }
        net
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.arcs_from.len()];
        let mut visited = vec![false; self.arcs_from.len()];
        visited[source] = true;
        let mut queue = VecDeque::from([source]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.arcs_from[u] {
                let v = self.head[a];
                if self.residual[a] > 0 && !visited[v] {
                    visited[v] = true;
                    via[v] = a;
                    if v == sink {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !visited[sink] {
            return false;
        }
        let mut v = sink;
        while v != source {
            let a = via[v];
            self.residual[a] -= 1;
            self.residual[a ^ 1] += 1;
            v = self.head[a ^ 1];
        }
        true
    }

    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(source, sink) {
            flow += 1;
        }
        flow
    }

    /// Splits the current flow into `source -> sink` walks over network nodes,
    /// always taking the lowest-id saturated arc.
    fn decompose(&mut self, source: usize, sink: usize) -> Vec<Vec<usize>> {
        let mut walks = Vec::new();
        loop {
            let mut walk = vec![source];
            let mut u = source;
            while u != sink {
                let next = self.arcs_from[u]
                    .iter()
                    .copied()
                    .filter(|&a| a % 2 == 0 && self.residual[a ^ 1] > 0)
                    .min_by_key(|&a| self.head[a]);
                match next {
                    Some(a) => {
                        self.residual[a ^ 1] -= 1;
                        u = self.head[a];
                        walk.push(u);
                    }
                    None => break,
                }
            }
            if u != sink {
                return walks;
            }
            walks.push(walk);
        }
    }
}

fn forbidden_mask(g: &Graph, forbidden: &[Vertex]) -> Result<Vec<bool>, GraphError> {
    let mut mask = vec![false; g.vertex_count()];
    for &v in forbidden {
        check_vertex(g, v)?;
        mask[v] = true;
    }
    Ok(mask)
}

fn check_vertex(g: &Graph, v: Vertex) -> Result<(), GraphError> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(GraphError::VertexOutOfRange {
            vertex: v,
            order: g.vertex_count(),
        })
    }
}

fn max_disjoint_paths(g: &Graph, x: Vertex, y: Vertex, forbidden: &[bool], limit: usize) -> Vec<Path> {
    let mut net = FlowNetwork::vertex_split(g, x, y, forbidden);
    let (source, sink) = (2 * x + 1, 2 * y);
    net.max_flow(source, sink, limit);
    net.decompose(source, sink)
        .into_iter()
        .map(|walk| {
            // out-nodes are odd, in-nodes even; keep one entry per vertex
            let mut vs: Vec<Vertex> = walk.iter().map(|&node| node / 2).collect();
            vs.dedup();
            Path(vs)
        })
        .collect()
}

/// Number of internally disjoint `(x, y)`-paths, capped at `limit`.
pub fn local_connectivity(g: &Graph, x: Vertex, y: Vertex, limit: usize) -> usize {
    let mut net = FlowNetwork::vertex_split(g, x, y, &vec![false; g.vertex_count()]);
    net.max_flow(2 * x + 1, 2 * y, limit)
}

/// Maximum family of internally disjoint `(x, y)`-paths in `g - forbidden`.
pub fn disjoint_paths(g: &Graph, x: Vertex, y: Vertex, forbidden: &[Vertex]) -> Result<PathFamily, GraphError> {
    check_vertex(g, x)?;
    check_vertex(g, y)?;
    if x == y {
        return Err(GraphError::SameEndpoints(x));
    }
    let mask = forbidden_mask(g, forbidden)?;
    for v in [x, y] {
        if mask[v] {
            return Err(GraphError::ForbiddenEndpoint(v));
        }
    }
    let paths = max_disjoint_paths(g, x, y, &mask, usize::MAX);
    if paths.is_empty() {
        return Err(GraphError::NoPath(x, y));
    }
    Ok(PathFamily {
        source: x,
        target: y,
        paths,
    })
}

/// Vertex connectivity: the least number of vertices whose removal leaves a
/// disconnected or trivial graph. `K_m` gives `m - 1`.
///
/// Uses the Esfahanian-Hakimi pair scheme: with `v` of minimum degree, it is
/// enough to take the minimum local connectivity over all non-neighbours of
/// `v` and over all non-adjacent pairs of neighbours of `v`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n <= 1 {
        return 0;
    }
    match classify(g) {
        Classification::Complete => return n - 1,
        Classification::Disconnected => return 0,
        _ => {}
    }
    let v = g.vertices().min_by_key(|&u| (g.degree(u), u)).expect("non-empty graph");
    let mut best = g.degree(v);
    for w in g.vertices() {
        if w != v && !g.is_adjacent(v, w) {
            best = best.min(local_connectivity(g, v, w, best));
        }
    }
    let nb = g.neighbors(v);
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !g.is_adjacent(a, b) {
                best = best.min(local_connectivity(g, a, b, best));
            }
        }
    }
    best
}

fn check_disjoint(a: &[Vertex], b: &[bool]) -> Result<(), GraphError> {
    match a.iter().find(|&&v| b[v]) {
        Some(&v) => Err(GraphError::Overlap(v)),
        None => Ok(()),
    }
}

fn sorted_unique(g: &Graph, vs: &[Vertex]) -> Result<Vec<Vertex>, GraphError> {
    let mut out = vs.to_vec();
    for &v in &out {
        check_vertex(g, v)?;
    }
    out.sort_unstable();
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::Overlap(w[0]));
    }
    Ok(out)
}

/// `(x, Y)`-fan in `g - F`.
///
/// Joins a new vertex to `Y`, takes a maximum family of internally disjoint
/// paths from `x` to it in `g - F` and cuts each path at its first vertex of
/// `Y`. Fails only when no such fan exists, which cannot happen when `g` is
/// `(|F| + |Y|)`-connected.
pub fn fan(g: &Graph, x: Vertex, targets: &[Vertex], forbidden: &[Vertex]) -> Result<Fan, GraphError> {
    check_vertex(g, x)?;
    let targets = sorted_unique(g, targets)?;
    let forbidden = sorted_unique(g, forbidden)?;
    let fmask = forbidden_mask(g, &forbidden)?;
    let tmask = forbidden_mask(g, &targets)?;
    if fmask[x] || tmask[x] {
        return Err(GraphError::Overlap(x));
    }
    check_disjoint(&targets, &fmask)?;
    if targets.is_empty() {
        return Ok(Fan {
            apex: x,
            targets,
            paths: Vec::new(),
        });
    }

    let aux = g.with_apex(&targets);
    let sink = g.vertex_count();
    let mut blocked = fmask.clone();
    blocked.push(false);
    let raw = max_disjoint_paths(&aux, x, sink, &blocked, targets.len());

    let mut by_target: Vec<(Vertex, Path)> = Vec::new();
    for path in raw {
        let mut vs = path.into_vertices();
        vs.pop();
        // a path may cross several targets; it claims the first one
        let cut = vs.iter().position(|&v| tmask[v]).expect("paths end in a target");
        vs.truncate(cut + 1);
        by_target.push((*vs.last().expect("non-empty"), Path(vs)));
    }
    if by_target.len() < targets.len() {
        return Err(GraphError::FanInfeasible {
            found: by_target.len(),
            needed: targets.len(),
        });
    }
    by_target.sort_by_key(|(t, _)| *t);
    let (targets, paths) = by_target.into_iter().unzip();
    Ok(Fan {
        apex: x,
        targets,
        paths,
    })
}

/// Like [`fan`], but first confirms `κ(g) ≥ |F| + |Y|`.
pub fn fan_verified(g: &Graph, x: Vertex, targets: &[Vertex], forbidden: &[Vertex]) -> Result<Fan, GraphError> {
    let required = targets.len() + forbidden.len();
    let actual = vertex_connectivity(g);
    if actual < required {
        return Err(GraphError::ConnectivityTooLow { actual, required });
    }
    fan(g, x, targets, forbidden)
}

/// `|X|` pairwise vertex-disjoint `(X, Y)`-paths in `g - F`, obtained from a fan
/// out of a new apex joined to `X`. The pairing of `X` with `Y` is whatever the
/// flow produces. `X` and `Y` must be disjoint.
pub fn disjoint_set_paths(
    g: &Graph,
    sources: &[Vertex],
    targets: &[Vertex],
    forbidden: &[Vertex],
) -> Result<Vec<Path>, GraphError> {
    if sources.len() != targets.len() {
        return Err(GraphError::SizeMismatch {
            sources: sources.len(),
            targets: targets.len(),
        });
    }
    let sources = sorted_unique(g, sources)?;
    let tmask = forbidden_mask(g, &sorted_unique(g, targets)?)?;
    let fmask = forbidden_mask(g, forbidden)?;
    check_disjoint(&sources, &tmask)?;
    check_disjoint(&sources, &fmask)?;
    if sources.is_empty() {
        return Ok(Vec::new());
    }
    let aux = g.with_apex(&sources);
    let apex = g.vertex_count();
    let fan = fan(&aux, apex, targets, forbidden).map_err(|e| match e {
        GraphError::FanInfeasible { found, needed } => GraphError::Infeasible { found, needed },
        other => other,
    })?;
    let mut paths: Vec<Path> = fan
        .paths
        .into_iter()
        .map(|p| Path(p.into_vertices().split_off(1)))
        .collect();
    paths.sort();
    Ok(paths)
}

pub fn disjoint_set_paths_verified(
    g: &Graph,
    sources: &[Vertex],
    targets: &[Vertex],
    forbidden: &[Vertex],
) -> Result<Vec<Path>, GraphError> {
    let required = sources.len() + forbidden.len();
    let actual = vertex_connectivity(g);
    if actual < required {
        return Err(GraphError::ConnectivityTooLow { actual, required });
    }
    disjoint_set_paths(g, sources, targets, forbidden)
}
