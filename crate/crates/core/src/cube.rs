//! k-ary n-cubes `Q_n^k`: construction, digit codes, subcube partitions and
//! the two structural lemmas the path constructions lean on.
//!
//! A vertex `u_{n-1} ... u_0` is identified by its mixed-radix value with
//! `u_0` least significant. Two vertices are adjacent when they differ in a
//! single coordinate by `±1 mod k`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::survival::FaultSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("invalid cube parameters n={n}, k={k} (need n >= 1, k >= 2)")]
    InvalidSpec { n: usize, k: usize },
    #[error("cube Q_{n}^{k} has too many vertices to enumerate")]
    TooLarge { n: usize, k: usize },
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("dimension {0} out of range")]
    InvalidDimension(usize),
    #[error("digit {0} out of range")]
    InvalidDigit(usize),
    #[error("malformed vertex code {0:?}")]
    MalformedCode(String),
    #[error("vertices must be distinct")]
    SameVertex,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Parameters of `Q_n^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeSpec {
    n: usize,
    k: usize,
}

impl CubeSpec {
    pub fn new(n: usize, k: usize) -> Result<Self, CubeError> {
        if n < 1 || k < 2 {
            return Err(CubeError::InvalidSpec { n, k });
        }
        match k.checked_pow(n as u32) {
            Some(order) if order <= 1 << 24 => Ok(CubeSpec { n, k }),
            _ => Err(CubeError::TooLarge { n, k }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `n` for hypercubes, `2n` otherwise.
    pub fn degree(&self) -> usize {
        if self.k == 2 {
            self.n
        } else {
            2 * self.n
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.k.pow(self.n as u32)
    }

    fn place(&self, d: usize) -> usize {
        self.k.pow(d as u32)
    }

    /// Coordinate `u_d` of vertex `v`.
    pub fn digit(&self, v: Vertex, d: usize) -> usize {
        (v / self.place(d)) % self.k
    }

    /// `v` with coordinate `u_d` replaced by `j`.
    pub fn with_digit(&self, v: Vertex, d: usize, j: usize) -> Vertex {
        let p = self.place(d);
        v - self.digit(v, d) * p + j * p
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.vertex_count()
    }

    pub fn code(&self, v: Vertex) -> VertexCode {
        VertexCode {
            digits: (0..self.n).map(|d| self.digit(v, d)).collect(),
            k: self.k,
        }
    }

    pub fn vertex(&self, code: &VertexCode) -> Result<Vertex, CubeError> {
        if code.digits.len() != self.n || code.k != self.k {
            return Err(CubeError::MalformedCode(code.to_string()));
        }
        Ok(code.digits.iter().rev().fold(0, |acc, &u| acc * self.k + u))
    }

    /// Parses a digit string `u_{n-1}...u_0` (colon-separated when `k > 10`).
    pub fn parse_vertex(&self, s: &str) -> Result<Vertex, CubeError> {
        if self.n == 1 && !s.contains(':') {
            // a lone coordinate may have several decimal digits
            let u: usize = s.trim().parse().map_err(|_| CubeError::MalformedCode(s.to_string()))?;
            return if u < self.k {
                Ok(u)
            } else {
                Err(CubeError::MalformedCode(s.to_string()))
            };
        }
        let code = VertexCode::parse(s, self.k)?;
        self.vertex(&code)
    }

    pub fn label(&self, v: Vertex) -> String {
        self.code(v).to_string()
    }

    /// Whether `|a - b| ∈ {1, k-1}`.
    pub fn digits_adjacent(&self, a: usize, b: usize) -> bool {
        let diff = a.abs_diff(b);
        diff == 1 || diff == self.k - 1
    }

    fn check(&self, v: Vertex) -> Result<(), CubeError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(CubeError::VertexOutOfRange(v))
        }
    }
}

impl fmt::Display for CubeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}^{}", self.n, self.k)
    }
}

/// Digits of a cube vertex; `digits[i]` is `u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexCode {
    digits: Vec<usize>,
    k: usize,
}

impl VertexCode {
    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn parse(s: &str, k: usize) -> Result<Self, CubeError> {
        let bad = || CubeError::MalformedCode(s.to_string());
        let mut digits: Vec<usize> = if s.contains(':') {
            s.split(':')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.trim()
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        if digits.is_empty() || digits.iter().any(|&u| u >= k) {
            return Err(bad());
        }
        digits.reverse();
        Ok(VertexCode { digits, k })
    }
}

impl fmt::Display for VertexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.k > 10 { ":" } else { "" };
        let parts: Vec<String> = self.digits.iter().rev().map(|u| u.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for CubeSpec {
    type Err = CubeError;

    /// Accepts `"n,k"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CubeError::MalformedCode(s.to_string());
        let (n, k) = s.split_once(',').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        CubeSpec::new(n, k)
    }
}

/// `Q_n^k` as a graph.
pub fn build_cube(spec: &CubeSpec) -> Graph {
    let edges = (0..spec.vertex_count()).flat_map(|v| {
        (0..spec.n).map(move |d| {
            let up = (spec.digit(v, d) + 1) % spec.k;
            (v, spec.with_digit(v, d, up))
        })
    });
    Graph::from_edges(spec.vertex_count(), edges).expect("cube edges are in range")
}

/// A cube together with its graph.
#[derive(Debug, Clone)]
pub struct Cube {
    spec: CubeSpec,
    graph: Graph,
}

impl Cube {
    pub fn new(spec: CubeSpec) -> Self {
        Cube {
            graph: build_cube(&spec),
            spec,
        }
    }

    pub fn with_params(n: usize, k: usize) -> Result<Self, CubeError> {
        Ok(Cube::new(CubeSpec::new(n, k)?))
    }

    pub fn spec(&self) -> &CubeSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// The neighbour `u^j` of `v` obtained by setting coordinate `d` to `j`.
/// Adjacent to `v` only when `|u_d - j| ∈ {1, k-1}`.
pub fn outer_neighbor(spec: &CubeSpec, v: Vertex, d: usize, j: usize) -> Result<Vertex, CubeError> {
    spec.check(v)?;
    if d >= spec.n {
        return Err(CubeError::InvalidDimension(d));
    }
    if j >= spec.k {
        return Err(CubeError::InvalidDigit(j));
    }
    Ok(spec.with_digit(v, d, j))
}

/// Partition of `Q_n^k` into the `k` subcubes `Q[i] = {u : u_d = i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubePartition {
    spec: CubeSpec,
    dimension: usize,
    blocks: Vec<Vec<Vertex>>,
}

impl SubcubePartition {
    pub fn new(spec: &CubeSpec, dimension: usize) -> Result<Self, CubeError> {
        if dimension >= spec.n {
            return Err(CubeError::InvalidDimension(dimension));
        }
        let mut blocks = vec![Vec::new(); spec.k];
        for v in 0..spec.vertex_count() {
            blocks[spec.digit(v, dimension)].push(v);
        }
        Ok(SubcubePartition {
            spec: *spec,
            dimension,
            blocks,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn block(&self, i: usize) -> &[Vertex] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.spec.digit(v, self.dimension)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.spec.digits_adjacent(i, j)
    }

    /// `u^j` along the partition dimension.
    pub fn outer(&self, v: Vertex, j: usize) -> Vertex {
        self.spec.with_digit(v, self.dimension, j)
    }

    /// Removes the partition coordinate, giving the id in `Q_{n-1}^k`.
    pub fn project(&self, v: Vertex) -> Vertex {
        let p = self.spec.k.pow(self.dimension as u32);
        let low = v % p;
        let high = v / (p * self.spec.k);
        high * p + low
    }
}

/// `|N(x) ∩ N(y)|` in `Q_n^k`.
pub fn common_neighbor_count(g: &Graph, x: Vertex, y: Vertex) -> Result<usize, CubeError> {
    if !g.contains(x) || !g.contains(y) {
        return Err(CubeError::VertexOutOfRange(x.max(y)));
    }
    if x == y {
        return Err(CubeError::SameVertex);
    }
    let (a, b) = (g.neighbors(x), g.neighbors(y));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(count)
}

/// Outcome of checking the common-neighbour lemma on every vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonNeighborReport {
    pub spec: CubeSpec,
    pub pairs_checked: usize,
    /// `histogram[c]` unordered pairs with exactly `c` common neighbours.
    pub histogram: Vec<usize>,
    /// Adjacent pairs with exactly one common neighbour.
    pub adjacent_with_one: usize,
    /// Non-adjacent pairs with exactly one common neighbour.
    pub nonadjacent_with_one: usize,
    pub violations: Vec<(Vertex, Vertex, usize)>,
}

impl CommonNeighborReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive check: counts lie in `{0, 2}` for `k ∈ {2, 4}` and in `{0, 1, 2}`
/// otherwise; for `k = 3` a count of one occurs exactly on adjacent pairs.
pub fn check_02_property(spec: &CubeSpec) -> CommonNeighborReport {
    let g = build_cube(spec);
    let mut report = CommonNeighborReport {
        spec: *spec,
        pairs_checked: 0,
        histogram: Vec::new(),
        adjacent_with_one: 0,
        nonadjacent_with_one: 0,
        violations: Vec::new(),
    };
    let allowed: &[usize] = if spec.k == 2 || spec.k == 4 {
        &[0, 2]
    } else {
        &[0, 1, 2]
    };
    for x in g.vertices() {
        for y in x + 1..g.vertex_count() {
            let c = common_neighbor_count(&g, x, y).expect("distinct in-range vertices");
            report.pairs_checked += 1;
            if report.histogram.len() <= c {
                report.histogram.resize(c + 1, 0);
            }
            report.histogram[c] += 1;
            let adjacent = g.is_adjacent(x, y);
            if c == 1 {
                if adjacent {
                    report.adjacent_with_one += 1;
                } else {
                    report.nonadjacent_with_one += 1;
                }
            }
            let biconditional_ok = spec.k != 3 || ((c == 1) == adjacent);
            if !allowed.contains(&c) || !biconditional_ok {
                report.violations.push((x, y, c));
            }
        }
    }
    report
}

/// Result of evaluating the healthy-pair counting bound at one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    /// `h = 2n - 2 - ℓ - u_i - u_j`.
    pub h: i64,
    /// `H = {v ∈ Q[i] : v and v^j healthy}`.
    pub healthy_pairs: Vec<Vertex>,
    /// `|H ∩ N(x)|`.
    pub healthy_pair_neighbors: usize,
    pub ok: bool,
}

/// Evaluates the counting bound for `U`, adjacent blocks `Q[i]`, `Q[j]` along
/// dimension `d`, and a healthy `x ∈ Q[i]`. `ℓ = 0` is admitted.
pub fn counting_check(
    spec: &CubeSpec,
    g: &Graph,
    faults: &FaultSet,
    partition: &SubcubePartition,
    i: usize,
    j: usize,
    x: Vertex,
) -> Result<CountingReport, CubeError> {
    let (n, k) = (spec.n, spec.k);
    if n < 3 || k < 3 {
        return Err(CubeError::Precondition(format!("need n, k >= 3, got n={n}, k={k}")));
    }
    let ell = faults.len();
    if ell >= n {
        return Err(CubeError::Precondition(format!("need ℓ < n, got ℓ={ell}")));
    }
    if i >= k || j >= k || !partition.adjacent(i, j) {
        return Err(CubeError::Precondition(format!("blocks {i} and {j} are not adjacent")));
    }
    spec.check(x)?;
    if partition.block_of(x) != i || !faults.is_healthy(x) {
        return Err(CubeError::Precondition(format!(
            "x={} must be a healthy vertex of Q[{i}]",
            spec.label(x)
        )));
    }
    let in_block = |b: usize| {
        faults
            .vertices()
            .iter()
            .filter(|&&u| partition.block_of(u) == b)
            .count()
    };
    let (ui, uj) = (in_block(i), in_block(j));
    let h = (2 * n) as i64 - 2 - ell as i64 - ui as i64 - uj as i64;
    let healthy_pairs: Vec<Vertex> = partition
        .block(i)
        .iter()
        .copied()
        .filter(|&v| faults.is_healthy(v) && faults.is_healthy(partition.outer(v, j)))
        .collect();
    let healthy_pair_neighbors = healthy_pairs.iter().filter(|&&v| g.is_adjacent(x, v)).count();
    let ok = healthy_pairs.len() as i64 > h && healthy_pair_neighbors as i64 >= h;
    Ok(CountingReport {
        h,
        healthy_pairs,
        healthy_pair_neighbors,
        ok,
    })
}

/// Totals for an exhaustive run of [`counting_check`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountingSweep {
    pub fault_sets: usize,
    pub configurations: usize,
    pub failures: Vec<(Vec<Vertex>, usize, usize, usize, Vertex)>,
}

/// Runs [`counting_check`] on every fault set with `ℓ ≤ max_faults`, every
/// dimension, every ordered pair of adjacent blocks and every healthy `x`.
pub fn counting_sweep(spec: &CubeSpec, max_faults: usize) -> Result<CountingSweep, CubeError> {
    if spec.n < 3 || spec.k < 3 {
        return Err(CubeError::Precondition("counting bound needs n, k >= 3".into()));
    }
    if max_faults >= spec.n {
        return Err(CubeError::Precondition(format!(
            "ℓ ≤ {max_faults} exceeds n-1 = {}",
            spec.n - 1
        )));
    }
    let g = build_cube(spec);
    let partitions: Vec<SubcubePartition> = (0..spec.n)
        .map(|d| SubcubePartition::new(spec, d))
        .collect::<Result<_, _>>()?;
    let mut sweep = CountingSweep::default();
    for size in 0..=max_faults {
        for subset in crate::survival::Combinations::new(spec.vertex_count(), size) {
            let faults = FaultSet::new(&g, &subset).expect("in-range subset");
            sweep.fault_sets += 1;
            for p in &partitions {
                for i in 0..spec.k {
                    for j in 0..spec.k {
                        if !p.adjacent(i, j) {
                            continue;
                        }
                        for &x in p.block(i) {
                            if !faults.is_healthy(x) {
                                continue;
                            }
                            sweep.configurations += 1;
                            let r = counting_check(spec, &g, &faults, p, i, j, x)?;
                            if !r.ok {
                                sweep.failures.push((subset.clone(), p.dimension(), i, j, x));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sweep)
}
