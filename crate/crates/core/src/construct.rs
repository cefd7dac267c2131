//! Constructive families of internally disjoint healthy paths in `Q_n^k ⊖ U`.
//!
//! The builders follow the inductive arguments for the survival-connectivity
//! bounds: split the cube along a coordinate where the endpoints differ, route
//! through healthy outer neighbours, and close every route with a fan inside a
//! block survival graph `Q[i] ⊖ U_i`. Wherever the induction would only assert
//! that a fan exists, the fan is computed by max-flow on that block.
//!
//! Every builder emits a [`HealthyPathCertificate`], and
//! [`validate_certificate`] re-checks one from scratch using nothing but the
//! digit-level adjacency rule.

use std::fmt;

use thiserror::Error;

use crate::cube::{Cube, CubeSpec, SubcubePartition};
use crate::graph::{self, disjoint_paths, GraphError, Path, Vertex};
use crate::survival::{survival_subgraph, FaultSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the guaranteed path count is zero for ℓ={ell} faults in Q_{n}^{k}; nothing to build")]
    BoundIsZero { n: usize, k: usize, ell: usize },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

fn failed(stage: &'static str) -> impl Fn(GraphError) -> ConstructError {
    move |e| ConstructError::ConstructionFailed(format!("{stage}: {e}"))
}

fn precondition<T>(msg: impl Into<String>) -> Result<T, ConstructError> {
    Err(ConstructError::Precondition(msg.into()))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Re-check the connectivity assumptions behind every fan with an exact
    /// vertex-connectivity computation before using them. Slow.
    pub verify_preconditions: bool,
}

/// A claimed family of at least `bound` internally disjoint healthy `(x, y)`-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HealthyPathCertificate {
    pub spec: CubeSpec,
    pub faults: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
    pub bound: usize,
    pub paths: Vec<Path>,
}

/// How many paths the adjacent-subcube construction guarantees:
/// `2n - 2ℓ` when `u_j + u_j' < ℓ`, and `2n - 2ℓ - 1` when they are equal.
pub fn adjacent_subcube_bound(n: usize, ell: usize, u_j: usize, u_jp: usize) -> Result<usize, ConstructError> {
    if n < 3 {
        return precondition(format!("need n >= 3, got {n}"));
    }
    if ell == 0 || ell >= n {
        return precondition(format!("need 0 < ℓ < n, got ℓ={ell}, n={n}"));
    }
    match (u_j + u_jp).cmp(&ell) {
        std::cmp::Ordering::Less => Ok(2 * n - 2 * ell),
        std::cmp::Ordering::Equal => Ok(2 * n - 2 * ell - 1),
        std::cmp::Ordering::Greater => precondition(format!("u_j + u_j' = {} exceeds ℓ = {ell}", u_j + u_jp)),
    }
}

type PathList = Vec<Vec<Vertex>>;

/// Block indices walked around the ring of subcubes from `base`, in either direction.
#[derive(Debug, Clone, Copy)]
struct Ring {
    base: usize,
    step: usize,
    k: usize,
}

impl Ring {
    /// Orientation in which block `from` is position 0 and `to` is position 1.
    fn towards(from: usize, to: usize, k: usize) -> Ring {
        let step = (to + k - from) % k;
        debug_assert!(step == 1 || step == k - 1);
        Ring { base: from, step, k }
    }

    fn forward(base: usize, k: usize) -> Ring {
        Ring { base, step: 1, k }
    }

    fn reversed(self) -> Ring {
        Ring {
            step: self.k - self.step,
            ..self
        }
    }

    fn at(&self, p: usize) -> usize {
        (self.base + self.step * (p % self.k)) % self.k
    }
}

/// The cube, the fault set and a chosen splitting dimension.
struct Frame<'a> {
    cube: &'a Cube,
    faults: &'a FaultSet,
    fault_mask: Vec<bool>,
    part: SubcubePartition,
    options: BuildOptions,
}

impl<'a> Frame<'a> {
    fn new(cube: &'a Cube, faults: &'a FaultSet, dimension: usize, options: BuildOptions) -> Self {
        let mut fault_mask = vec![false; cube.spec().vertex_count()];
        for &u in faults.vertices() {
            fault_mask[u] = true;
        }
        Frame {
            cube,
            faults,
            fault_mask,
            part: SubcubePartition::new(cube.spec(), dimension).expect("dimension checked by caller"),
            options,
        }
    }

    fn n(&self) -> usize {
        self.cube.spec().n()
    }

    fn k(&self) -> usize {
        self.cube.spec().k()
    }

    fn ell(&self) -> usize {
        self.faults.len()
    }

    fn block(&self, v: Vertex) -> usize {
        self.part.block_of(v)
    }

    fn outer(&self, v: Vertex, j: usize) -> Vertex {
        self.part.outer(v, j)
    }

    fn healthy(&self, v: Vertex) -> bool {
        self.faults.is_healthy(v)
    }

    /// `u_i = |U ∩ Q[i]|`.
    fn u(&self, b: usize) -> usize {
        self.faults.vertices().iter().filter(|&&u| self.block(u) == b).count()
    }

    /// Neighbours `w` of `x` inside its own block with `w` and `w^to` both healthy, by id.
    fn paired_neighbors(&self, x: Vertex, to: usize) -> Vec<Vertex> {
        let bx = self.block(x);
        self.cube
            .graph()
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| self.block(w) == bx && self.healthy(w) && self.healthy(self.outer(w, to)))
            .collect()
    }

    /// `Q[b] ⊖ U_b` with the remaining globally faulty vertices marked.
    fn host(&self, b: usize) -> Host {
        let g = self.cube.graph();
        let members: Vec<Vertex> = self
            .part
            .block(b)
            .iter()
            .copied()
            .filter(|&v| {
                !self.fault_mask[v] && !g.neighbors(v).iter().any(|&w| self.fault_mask[w] && self.block(w) == b)
            })
            .collect();
        let (graph, map) = g.induced_subgraph(&members);
        let mut local = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let faulty = (0..map.len()).filter(|&i| !self.healthy(map[i])).collect();
        Host {
            block: b,
            graph,
            map,
            local,
            faulty,
            verify: self.options.verify_preconditions,
        }
    }
}

/// A block survival graph with translation to and from cube vertex ids.
struct Host {
    block: usize,
    graph: graph::Graph,
    map: Vec<Vertex>,
    local: Vec<usize>,
    faulty: Vec<usize>,
    verify: bool,
}

impl Host {
    fn lid(&self, v: Vertex) -> Result<usize, ConstructError> {
        match self.local.get(v) {
            Some(&i) if i != usize::MAX => Ok(i),
            _ => Err(ConstructError::ConstructionFailed(format!(
                "vertex {v} is not in the survival graph of block {}",
                self.block
            ))),
        }
    }

    fn globals(&self, p: &Path) -> Vec<Vertex> {
        p.vertices().iter().map(|&i| self.map[i]).collect()
    }

    fn forbidden(&self, extra: &[Vertex]) -> Result<Vec<usize>, ConstructError> {
        let mut f = self.faulty.clone();
        for &v in extra {
            if let Some(&i) = self.local.get(v) {
                if i != usize::MAX {
                    f.push(i);
                }
            }
        }
        f.sort_unstable();
        f.dedup();
        Ok(f)
    }

    /// Fan from `apex` to `targets` avoiding the faulty vertices and `extra`.
    /// `result[i]` runs from the apex to `targets[i]`; a target equal to the
    /// apex gets the single-vertex path.
    fn fan(&self, apex: Vertex, targets: &[Vertex], extra: &[Vertex]) -> Result<Vec<Vec<Vertex>>, ConstructError> {
        let a = self.lid(apex)?;
        let others: Vec<usize> = targets
            .iter()
            .filter(|&&t| t != apex)
            .map(|&t| self.lid(t))
            .collect::<Result<_, _>>()?;
        let forbidden = self.forbidden(extra)?;
        let fan = if self.verify {
            graph::fan_verified(&self.graph, a, &others, &forbidden)
        } else {
            graph::fan(&self.graph, a, &others, &forbidden)
        }
        .map_err(failed("fan in block survival graph"))?;
        targets
            .iter()
            .map(|&t| {
                if t == apex {
                    return Ok(vec![apex]);
                }
                let p = fan
                    .path_to(self.lid(t)?)
                    .ok_or_else(|| ConstructError::ConstructionFailed(format!("fan missed target {t}")))?;
                Ok(self.globals(p))
            })
            .collect()
    }

    /// One `(a, b)`-path avoiding the faulty vertices and `extra`.
    fn path(&self, a: Vertex, b: Vertex, extra: &[Vertex]) -> Result<Vec<Vertex>, ConstructError> {
        let mut fan = self.fan(a, &[b], extra)?;
        Ok(fan.pop().expect("one target"))
    }

    /// Pairwise disjoint `(sources, targets)`-paths. A vertex in both sets
    /// is its own single-vertex path.
    fn set_paths(&self, sources: &[Vertex], targets: &[Vertex]) -> Result<Vec<Vec<Vertex>>, ConstructError> {
        let shared: Vec<Vertex> = sources.iter().copied().filter(|s| targets.contains(s)).collect();
        let xs: Vec<usize> = sources
            .iter()
            .filter(|s| !shared.contains(s))
            .map(|&s| self.lid(s))
            .collect::<Result<_, _>>()?;
        let ys: Vec<usize> = targets
            .iter()
            .filter(|t| !shared.contains(t))
            .map(|&t| self.lid(t))
            .collect::<Result<_, _>>()?;
        let forbidden = self.forbidden(&shared)?;
        let paths = if self.verify {
            graph::disjoint_set_paths_verified(&self.graph, &xs, &ys, &forbidden)
        } else {
            graph::disjoint_set_paths(&self.graph, &xs, &ys, &forbidden)
        }
        .map_err(failed("disjoint set paths in block survival graph"))?;
        let mut out: Vec<Vec<Vertex>> = shared.iter().map(|&v| vec![v]).collect();
        out.extend(paths.iter().map(|p| self.globals(p)));
        Ok(out)
    }
}

fn joined(mut head: Vec<Vertex>, tail: impl IntoIterator<Item = Vertex>) -> Vec<Vertex> {
    head.extend(tail);
    head
}

fn reversed(mut p: Vec<Vertex>) -> Vec<Vertex> {
    p.reverse();
    p
}

fn reverse_all(paths: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    paths.into_iter().map(reversed).collect()
}

/// Adjacent-subcube construction for healthy `x ∈ Q[j]`, `y ∈ Q[j']`.
fn adjacent_paths(frame: &Frame, x: Vertex, y: Vertex) -> Result<Vec<Vec<Vertex>>, ConstructError> {
    if frame.u(frame.block(y)) > frame.u(frame.block(x)) {
        Ok(reverse_all(adjacent_normalized(frame, y, x)?))
    } else {
        adjacent_normalized(frame, x, y)
    }
}

/// Same, assuming `u_j ≥ u_j'` with `x ∈ Q[j]`.
fn adjacent_normalized(frame: &Frame, x: Vertex, y: Vertex) -> Result<Vec<Vec<Vertex>>, ConstructError> {
    let (n, k, ell) = (frame.n(), frame.k(), frame.ell());
    let ring = Ring::towards(frame.block(x), frame.block(y), k);
    let (b0, b1) = (ring.at(0), ring.at(1));
    let (u0, u1) = (frame.u(b0), frame.u(b1));
    let h = 2 * n - 2 - u0 - u1 - ell;

    let candidates = frame.paired_neighbors(x, b1);
    if candidates.len() < h {
        return Err(ConstructError::ConstructionFailed(format!(
            "only {} healthy paired neighbours of {x}, expected {h}",
            candidates.len()
        )));
    }
    let xs: Vec<Vertex> = candidates[..h].to_vec();
    let ys: Vec<Vertex> = xs.iter().map(|&w| frame.outer(w, b1)).collect();
    let x1 = frame.outer(x, b1);
    let spokes = |fan: &[Vec<Vertex>], xs: &[Vertex]| -> Vec<Vec<Vertex>> {
        xs.iter()
            .zip(fan)
            .map(|(&xi, p)| joined(vec![x, xi], p.iter().rev().copied()))
            .collect()
    };

    if u0 == n - 1 {
        // every fault sits in Q[j]; one path through the outer neighbour suffices
        let p = frame.host(b1).path(x1, y, &[])?;
        return Ok(vec![joined(vec![x], p)]);
    }

    if u0 >= 1 {
        let (z, to_z) = if frame.healthy(x1) {
            (x, vec![x])
        } else {
            let z = frame
                .part
                .block(b0)
                .iter()
                .copied()
                .find(|&v| v != x && !xs.contains(&v) && frame.healthy(v) && frame.healthy(frame.outer(v, b1)))
                .ok_or_else(|| ConstructError::ConstructionFailed("no spare healthy pair in Q[j]".into()))?;
            (z, frame.host(b0).path(x, z, &xs)?)
        };
        let z1 = frame.outer(z, b1);
        let targets = joined(ys.clone(), [z1]);
        let mut fan = frame.host(b1).fan(y, &targets, &[])?;
        let last = fan.pop().expect("z target");
        let mut paths = spokes(&fan, &xs);
        paths.push(joined(to_z, last.into_iter().rev()));
        return Ok(paths);
    }

    // u0 = u1 = 0
    if ell >= 2 {
        let fan = frame.host(b1).fan(y, &ys, &[])?;
        return Ok(spokes(&fan, &xs));
    }

    if k >= 4 {
        if frame.u(ring.at(2)) > 0 {
            // put the empty neighbour block on Q[j']'s far side
            return Ok(reverse_all(adjacent_normalized(frame, y, x)?));
        }
        let targets = joined(ys.clone(), [x1]);
        let mut fan = frame.host(b1).fan(y, &targets, &[])?;
        let last = fan.pop().expect("x^1 target");
        let mut paths = spokes(&fan, &xs);
        paths.push(joined(vec![x], last.into_iter().rev()));
        return Ok(paths);
    }

    // k = 3, ℓ = 1: the single fault lies in the third block
    if x1 == y {
        let targets = joined(ys.clone(), [y]);
        let mut fan = frame.host(b1).fan(y, &targets, &[])?;
        fan.pop();
        let mut paths = spokes(&fan, &xs);
        paths.push(vec![x, y]);
        return Ok(paths);
    }
    let y0 = frame.outer(y, b0);
    let drop = xs.iter().position(|&w| w == y0).unwrap_or(h - 1);
    let kept_x: Vec<Vertex> = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, &w)| w)
        .collect();
    let kept_y: Vec<Vertex> = kept_x.iter().map(|&w| frame.outer(w, b1)).collect();
    let to_y0 = frame.host(b0).path(x, y0, &kept_x)?;
    let targets = joined(kept_y, [x1]);
    let mut fan = frame.host(b1).fan(y, &targets, &[])?;
    let last = fan.pop().expect("x^1 target");
    let mut paths = spokes(&fan, &kept_x);
    paths.push(joined(vec![x], last.into_iter().rev()));
    paths.push(joined(to_y0, [y]));
    Ok(paths)
}

/// Index of the edge where `path` leaves block `from` for block `to`.
fn crossing(frame: &Frame, path: &[Vertex], to: usize) -> Result<usize, ConstructError> {
    path.windows(2)
        .position(|w| frame.block(w[1]) == to)
        .ok_or_else(|| ConstructError::ConstructionFailed("path never reaches the next block".into()))
}

/// Routes `m` disjoint paths from `x` along the blocks `route[0..t]`, applying
/// the adjacent-subcube construction between healthy waypoints and re-linking
/// each intermediate block with disjoint set paths. Returns the partial paths,
/// each ending in `Q[route[t-1]]` at a vertex whose outer neighbour in
/// `Q[route[t]]` is healthy, and the last adjacent-subcube family.
fn stitch(
    frame: &Frame,
    route: &[usize],
    x: Vertex,
    y: Vertex,
    m: usize,
) -> Result<(PathList, PathList), ConstructError> {
    let t = route.len() - 1;
    let mut waypoints = vec![x];
    for &b in &route[1..t] {
        let v = frame
            .part
            .block(b)
            .iter()
            .copied()
            .find(|&v| frame.healthy(v))
            .ok_or_else(|| ConstructError::ConstructionFailed(format!("block {b} has no healthy vertex")))?;
        waypoints.push(v);
    }
    waypoints.push(y);

    let mut families = Vec::with_capacity(t);
    for i in 0..t {
        let mut fam = adjacent_paths(frame, waypoints[i], waypoints[i + 1])?;
        if fam.len() < m {
            return Err(ConstructError::ConstructionFailed(format!(
                "adjacent-subcube family {i} has {} paths, need {m}",
                fam.len()
            )));
        }
        fam.truncate(m);
        families.push(fam);
    }

    let mut heads: Vec<Vec<Vertex>> = Vec::with_capacity(m);
    for p in &families[0] {
        let c = crossing(frame, p, route[1])?;
        heads.push(p[..=c].to_vec());
    }
    for i in 1..t {
        let entries: Vec<Vertex> = heads
            .iter()
            .map(|h| frame.outer(*h.last().expect("non-empty"), route[i]))
            .collect();
        let exits: Vec<Vertex> = families[i]
            .iter()
            .map(|p| crossing(frame, p, route[i + 1]).map(|c| p[c]))
            .collect::<Result<_, _>>()?;
        let links = frame.host(route[i]).set_paths(&entries, &exits)?;
        for (head, entry) in heads.iter_mut().zip(&entries) {
            let link = links
                .iter()
                .find(|l| l[0] == *entry)
                .ok_or_else(|| ConstructError::ConstructionFailed("entry left unlinked".into()))?;
            head.extend_from_slice(link);
        }
    }
    let last = families.pop().expect("t >= 1");
    Ok((heads, last))
}

/// Stitched paths from `x ∈ Q[ring(0)]` to `y ∈ Q[ring(t)]` through `Q[ring(1..t)]`.
fn relay(
    frame: &Frame,
    ring: Ring,
    t: usize,
    x: Vertex,
    y: Vertex,
    m: usize,
) -> Result<Vec<Vec<Vertex>>, ConstructError> {
    let route: Vec<usize> = (0..=t).map(|p| ring.at(p)).collect();
    let (heads, last) = stitch(frame, &route, x, y, m)?;
    let bt = route[t];
    let mut paths = Vec::with_capacity(m);
    for head in heads {
        let entry = frame.outer(*head.last().expect("non-empty"), bt);
        let tail = last
            .iter()
            .find_map(|p| {
                let c = crossing(frame, p, bt).ok()?;
                (p[c + 1] == entry).then(|| p[c + 1..].to_vec())
            })
            .ok_or_else(|| ConstructError::ConstructionFailed("no suffix for entry vertex".into()))?;
        paths.push(joined(head, tail));
    }
    Ok(paths)
}

/// Non-adjacent blocks, `x ∈ Q[0]`, `y ∈ Q[t]` with `2 ≤ t ≤ k-2` and `u_0 ≥ u_t`.
fn distant_paths(frame: &Frame, x: Vertex, y: Vertex) -> Result<Vec<Vec<Vertex>>, ConstructError> {
    let (n, k, ell) = (frame.n(), frame.k(), frame.ell());
    let a = frame.block(x);
    let t_forward = (frame.block(y) + k - a) % k;
    let u0 = frame.u(a);

    if u0 < ell {
        let m = 2 * n - 2 * ell;
        let light = |ring: Ring, t: usize| {
            (1..t).all(|i| frame.u(ring.at(i - 1)) + frame.u(ring.at(i)) + frame.u(ring.at(i + 1)) < ell)
        };
        let forward = Ring::forward(a, k);
        let mut orientations = vec![(forward, t_forward), (forward.reversed(), k - t_forward)];
        if let Some(i) = orientations.iter().position(|&(r, t)| light(r, t)) {
            orientations = vec![orientations[i]];
        }
        // with no light direction the counting argument gives no guarantee;
        // try both and let the flow decide
        let mut last_err = None;
        for (ring, t) in orientations {
            match relay(frame, ring, t, x, y, m) {
                Ok(paths) => return Ok(paths),
                Err(e) => last_err = Some(e),
            }
        }
        return Err(last_err.expect("at least one orientation"));
    }

    // every fault lies in Q[0]
    let m = 2 * n - 2 * ell - 1;
    let ring = Ring::forward(a, k);
    let t = t_forward;
    let route: Vec<usize> = (0..=t).map(|p| ring.at(p)).collect();
    let (heads, _) = stitch(frame, &route, x, y, m)?;
    let (bt, beyond) = (ring.at(t), ring.at(t + 1));
    let entries: Vec<Vertex> = heads
        .iter()
        .map(|h| frame.outer(*h.last().expect("non-empty"), bt))
        .collect();
    let z = frame
        .part
        .block(bt)
        .iter()
        .copied()
        .find(|&v| !entries.contains(&v) && frame.healthy(v) && frame.healthy(frame.outer(v, beyond)))
        .ok_or_else(|| ConstructError::ConstructionFailed("no spare healthy pair beyond Q[t]".into()))?;
    let around = frame
        .host(beyond)
        .path(frame.outer(x, beyond), frame.outer(z, beyond), &[])?;
    let targets = joined(entries, [z]);
    let mut fan = frame.host(bt).fan(y, &targets, &[])?;
    let to_z = fan.pop().expect("z target");
    let mut paths: Vec<Vec<Vertex>> = heads
        .into_iter()
        .zip(fan)
        .map(|(head, p)| joined(head, p.into_iter().rev()))
        .collect();
    let mut detour = vec![x];
    detour.extend((t + 2..k).rev().map(|p| frame.outer(x, ring.at(p))));
    detour.extend(around);
    detour.extend(to_z.into_iter().rev());
    paths.push(detour);
    Ok(paths)
}

/// Adjacent or distant case for `n ≥ 3`, `k ≥ 3`, `0 < ℓ < n`.
fn kary_paths(frame: &Frame, x: Vertex, y: Vertex) -> Result<Vec<Vec<Vertex>>, ConstructError> {
    let (k, ell) = (frame.k(), frame.ell());
    let (x, y, swapped) = if frame.u(frame.block(y)) > frame.u(frame.block(x)) {
        (y, x, true)
    } else {
        (x, y, false)
    };
    let (a, b) = (frame.block(x), frame.block(y));
    let paths = if frame.part.adjacent(a, b) {
        let mut paths = adjacent_paths(frame, x, y)?;
        if frame.u(a) + frame.u(b) == ell {
            let ring = Ring::towards(a, b, k);
            let b2 = ring.at(2);
            let p = frame.host(b2).path(frame.outer(x, b2), frame.outer(y, b2), &[])?;
            let mut extra = vec![x];
            extra.extend((3..k).rev().map(|q| frame.outer(x, ring.at(q))));
            extra.extend(p);
            extra.push(y);
            paths.push(extra);
        }
        paths
    } else {
        distant_paths(frame, x, y)?
    };
    Ok(if swapped { reverse_all(paths) } else { paths })
}

fn lowest_differing_dimension(spec: &CubeSpec, x: Vertex, y: Vertex) -> usize {
    (0..spec.n())
        .find(|&d| spec.digit(x, d) != spec.digit(y, d))
        .expect("distinct vertices differ somewhere")
}

fn check_endpoints(cube: &Cube, faults: &FaultSet, x: Vertex, y: Vertex) -> Result<(), ConstructError> {
    let spec = cube.spec();
    if faults.vertices().iter().any(|&u| !spec.contains(u)) {
        return precondition("fault vertex out of range");
    }
    for v in [x, y] {
        if !spec.contains(v) {
            return precondition(format!("vertex {v} out of range for {spec}"));
        }
        if !faults.is_healthy(v) {
            return precondition(format!("vertex {} is not healthy", spec.label(v)));
        }
    }
    if x == y {
        return precondition("endpoints must differ");
    }
    Ok(())
}

fn into_certificate(
    cube: &Cube,
    faults: &FaultSet,
    x: Vertex,
    y: Vertex,
    bound: usize,
    paths: Vec<Vec<Vertex>>,
) -> HealthyPathCertificate {
    HealthyPathCertificate {
        spec: *cube.spec(),
        faults: faults.vertices().to_vec(),
        x,
        y,
        bound,
        paths: paths.into_iter().map(Path::new).collect(),
    }
}

/// Every internally disjoint `(x, y)`-path the survival graph admits, by max-flow.
fn direct_menger(cube: &Cube, faults: &FaultSet, x: Vertex, y: Vertex) -> Result<Vec<Vec<Vertex>>, ConstructError> {
    let (survivor, map) = survival_subgraph(cube.graph(), faults);
    let lx = map.binary_search(&x).expect("x healthy");
    let ly = map.binary_search(&y).expect("y healthy");
    let fam = disjoint_paths(&survivor, lx, ly, &[]).map_err(failed("direct max-flow"))?;
    Ok(fam
        .paths
        .iter()
        .map(|p| p.vertices().iter().map(|&i| map[i]).collect())
        .collect())
}

/// Adjacent-subcube construction: at least [`adjacent_subcube_bound`] internally disjoint
/// healthy `(x, y)`-paths inside `Q[j] ∪ Q[j']`, where `j`, `j'` are the blocks
/// of `x` and `y` along `dimension` and must be adjacent.
pub fn adjacent_subcube_paths(
    cube: &Cube,
    faults: &FaultSet,
    dimension: usize,
    x: Vertex,
    y: Vertex,
    options: BuildOptions,
) -> Result<HealthyPathCertificate, ConstructError> {
    let spec = cube.spec();
    let (n, k, ell) = (spec.n(), spec.k(), faults.len());
    if n < 3 || k < 3 {
        return precondition(format!("need n, k >= 3, got {spec}"));
    }
    if ell == 0 || ell >= n {
        return precondition(format!("need 0 < ℓ < n, got ℓ={ell}"));
    }
    if dimension >= n {
        return precondition(format!("dimension {dimension} out of range"));
    }
    check_endpoints(cube, faults, x, y)?;
    let frame = Frame::new(cube, faults, dimension, options);
    let (j, jp) = (frame.block(x), frame.block(y));
    if !frame.part.adjacent(j, jp) {
        return precondition(format!("blocks {j} and {jp} are not adjacent"));
    }
    if options.verify_preconditions {
        for b in [j, jp] {
            let host = frame.host(b);
            let need = (2 * n - 2).saturating_sub(2 * frame.u(b));
            let have = graph::vertex_connectivity(&host.graph);
            if have < need {
                return precondition(format!("κ(Q[{b}] ⊖ U_{b}) = {have} is below the required {need}"));
            }
        }
    }
    let (hi, lo) = {
        let (a, b) = (frame.u(j), frame.u(jp));
        (a.max(b), a.min(b))
    };
    let bound = adjacent_subcube_bound(n, ell, hi, lo)?;
    let paths = adjacent_paths(&frame, x, y)?;
    Ok(into_certificate(cube, faults, x, y, bound, paths))
}

/// At least `n - 2ℓ` internally disjoint healthy `(x, y)`-paths in `Q_n ⊖ U`.
pub fn hypercube_survival_paths(
    cube: &Cube,
    faults: &FaultSet,
    x: Vertex,
    y: Vertex,
    options: BuildOptions,
) -> Result<HealthyPathCertificate, ConstructError> {
    let spec = cube.spec();
    let (n, ell) = (spec.n(), faults.len());
    if spec.k() != 2 {
        return precondition(format!("{spec} is not a hypercube"));
    }
    if n < 2 {
        return precondition("need n >= 2");
    }
    check_endpoints(cube, faults, x, y)?;
    if 2 * ell >= n {
        return Err(ConstructError::BoundIsZero { n, k: 2, ell });
    }
    let bound = n - 2 * ell;
    if ell == 0 {
        let paths = direct_menger(cube, faults, x, y)?;
        return Ok(into_certificate(cube, faults, x, y, bound, paths));
    }

    let frame = Frame::new(cube, faults, lowest_differing_dimension(spec, x, y), options);
    let (x, y, swapped) = if frame.u(frame.block(y)) > frame.u(frame.block(x)) {
        (y, x, true)
    } else {
        (x, y, false)
    };
    let b1 = frame.block(y);
    let x1 = frame.outer(x, b1);
    let candidates = frame.paired_neighbors(x, b1);
    let (want, through_x1) = if frame.healthy(x1) {
        (n - 1 - 2 * ell, true)
    } else {
        (n - 2 * ell, false)
    };
    if candidates.len() < want {
        return Err(ConstructError::ConstructionFailed(format!(
            "only {} healthy paired neighbours of {x}, expected {want}",
            candidates.len()
        )));
    }
    let xs = &candidates[..want];
    let mut targets: Vec<Vertex> = xs.iter().map(|&w| frame.outer(w, b1)).collect();
    if through_x1 {
        targets.push(x1);
    }
    let fan = frame.host(b1).fan(y, &targets, &[])?;
    let mut paths: Vec<Vec<Vertex>> = xs
        .iter()
        .zip(&fan)
        .map(|(&xi, p)| joined(vec![x, xi], p.iter().rev().copied()))
        .collect();
    if through_x1 {
        let p = fan.last().expect("x^1 target");
        paths.push(joined(vec![x], p.iter().rev().copied()));
    }
    let paths = if swapped { reverse_all(paths) } else { paths };
    let (x, y) = if swapped { (y, x) } else { (x, y) };
    Ok(into_certificate(cube, faults, x, y, bound, paths))
}

/// At least `2n - 2ℓ` internally disjoint healthy `(x, y)`-paths in `Q_n^k ⊖ U`, `k ≥ 3`.
pub fn kary_survival_paths(
    cube: &Cube,
    faults: &FaultSet,
    x: Vertex,
    y: Vertex,
    options: BuildOptions,
) -> Result<HealthyPathCertificate, ConstructError> {
    let spec = cube.spec();
    let (n, k, ell) = (spec.n(), spec.k(), faults.len());
    if k < 3 {
        return precondition(format!("{spec} needs k >= 3"));
    }
    if n < 2 {
        return precondition("need n >= 2");
    }
    check_endpoints(cube, faults, x, y)?;
    if ell >= n {
        return Err(ConstructError::BoundIsZero { n, k, ell });
    }
    let bound = 2 * n - 2 * ell;
    let paths = if ell == 0 || n == 2 {
        direct_menger(cube, faults, x, y)?
    } else {
        let frame = Frame::new(cube, faults, lowest_differing_dimension(spec, x, y), options);
        kary_paths(&frame, x, y)?
    };
    Ok(into_certificate(cube, faults, x, y, bound, paths))
}

/// Dispatches to the hypercube or k-ary builder.
pub fn survival_paths(
    cube: &Cube,
    faults: &FaultSet,
    x: Vertex,
    y: Vertex,
    options: BuildOptions,
) -> Result<HealthyPathCertificate, ConstructError> {
    if cube.spec().k() == 2 {
        hypercube_survival_paths(cube, faults, x, y, options)
    } else {
        kary_survival_paths(cube, faults, x, y, options)
    }
}

/// A single reason a certificate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    FaultOutOfRange(Vertex),
    EndpointOutOfRange(Vertex),
    SameEndpoints,
    UnhealthyEndpoint(Vertex),
    EmptyPath {
        path: usize,
    },
    VertexOutOfRange {
        path: usize,
        vertex: Vertex,
    },
    WrongEndpoints {
        path: usize,
    },
    NotAdjacent {
        path: usize,
        from: Vertex,
        to: Vertex,
    },
    RepeatedVertex {
        path: usize,
        vertex: Vertex,
    },
    UnhealthyVertex {
        path: usize,
        vertex: Vertex,
    },
    NotInternallyDisjoint {
        first: usize,
        second: usize,
        vertex: Vertex,
    },
    DuplicatePath {
        first: usize,
        second: usize,
    },
    TooFewPaths {
        found: usize,
        bound: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FaultOutOfRange(v) => write!(f, "fault {v} out of range"),
            Violation::EndpointOutOfRange(v) => write!(f, "endpoint {v} out of range"),
            Violation::SameEndpoints => write!(f, "endpoints coincide"),
            Violation::UnhealthyEndpoint(v) => write!(f, "endpoint {v} is faulty"),
            Violation::EmptyPath { path } => write!(f, "path {path} is empty"),
            Violation::VertexOutOfRange { path, vertex } => write!(f, "path {path}: vertex {vertex} out of range"),
            Violation::WrongEndpoints { path } => write!(f, "path {path} does not run from x to y"),
            Violation::NotAdjacent { path, from, to } => write!(f, "path {path}: {from} and {to} are not adjacent"),
            Violation::RepeatedVertex { path, vertex } => write!(f, "path {path}: vertex {vertex} repeats"),
            Violation::UnhealthyVertex { path, vertex } => write!(f, "path {path}: vertex {vertex} is faulty"),
            Violation::NotInternallyDisjoint { first, second, vertex } => {
                write!(f, "paths {first} and {second} share internal vertex {vertex}")
            }
            Violation::DuplicatePath { first, second } => write!(f, "paths {first} and {second} are identical"),
            Violation::TooFewPaths { found, bound } => write!(f, "{found} paths, at least {bound} claimed"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a certificate from first principles: adjacency by the digit rule,
/// `N[U]` recomputed locally, internal disjointness, and the claimed count.
pub fn validate_certificate(cert: &HealthyPathCertificate) -> ValidationReport {
    let (n, k) = (cert.spec.n(), cert.spec.k());
    let order = k.pow(n as u32);
    let digits = |v: Vertex| -> Vec<usize> {
        let mut rest = v;
        (0..n)
            .map(|_| {
                let d = rest % k;
                rest /= k;
                d
            })
            .collect()
    };
    let adjacent = |a: Vertex, b: Vertex| -> bool {
        let (da, db) = (digits(a), digits(b));
        let diffs: Vec<usize> = (0..n).filter(|&i| da[i] != db[i]).collect();
        diffs.len() == 1 && {
            let delta = da[diffs[0]].abs_diff(db[diffs[0]]);
            delta == 1 || delta == k - 1
        }
    };
    let faults: Vec<Vertex> = cert.faults.iter().copied().filter(|&u| u < order).collect();
    let healthy = |v: Vertex| faults.iter().all(|&u| u != v && !adjacent(u, v));

    let mut out = Vec::new();
    for &u in &cert.faults {
        if u >= order {
            out.push(Violation::FaultOutOfRange(u));
        }
    }
    for v in [cert.x, cert.y] {
        if v >= order {
            out.push(Violation::EndpointOutOfRange(v));
        } else if !healthy(v) {
            out.push(Violation::UnhealthyEndpoint(v));
        }
    }
    if cert.x == cert.y {
        out.push(Violation::SameEndpoints);
    }

    let mut owner: std::collections::HashMap<Vertex, usize> = std::collections::HashMap::new();
    for (i, path) in cert.paths.iter().enumerate() {
        let vs = path.vertices();
        if vs.is_empty() {
            out.push(Violation::EmptyPath { path: i });
            continue;
        }
        if vs.first() != Some(&cert.x) || vs.last() != Some(&cert.y) {
            out.push(Violation::WrongEndpoints { path: i });
        }
        let mut seen = std::collections::HashSet::new();
        for &v in vs {
            if v >= order {
                out.push(Violation::VertexOutOfRange { path: i, vertex: v });
                continue;
            }
            if !seen.insert(v) {
                out.push(Violation::RepeatedVertex { path: i, vertex: v });
            }
            if !healthy(v) {
                out.push(Violation::UnhealthyVertex { path: i, vertex: v });
            }
        }
        for w in vs.windows(2) {
            if w[0] < order && w[1] < order && !adjacent(w[0], w[1]) {
                out.push(Violation::NotAdjacent {
                    path: i,
                    from: w[0],
                    to: w[1],
                });
            }
        }
        for &v in vs {
            if v == cert.x || v == cert.y {
                continue;
            }
            match owner.get(&v) {
                Some(&j) if j != i => out.push(Violation::NotInternallyDisjoint {
                    first: j,
                    second: i,
                    vertex: v,
                }),
                _ => {
                    owner.insert(v, i);
                }
            }
        }
        if let Some(j) = cert.paths[..i].iter().position(|p| p == path) {
            out.push(Violation::DuplicatePath { first: j, second: i });
        }
    }
    if cert.paths.len() < cert.bound {
        out.push(Violation::TooFewPaths {
            found: cert.paths.len(),
            bound: cert.bound,
        });
    }
    ValidationReport { violations: out }
}
