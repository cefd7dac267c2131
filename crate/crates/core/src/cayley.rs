//! Abelian Cayley graphs over explicit products of cyclic groups, and the
//! fault set certifying `κ_NB ≤ ⌈δ/2⌉` when the generators can be paired
//! so that no pair multiplies into `S ∪ {e}`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cube::CubeSpec;
use crate::graph::{classify, Classification, Graph};
use crate::survival::{survival_subgraph, FaultSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("malformed group description {0:?}")]
    MalformedGroup(String),
    #[error("cyclic factor orders must be at least 2")]
    TrivialFactor,
    #[error("malformed group element {0:?}")]
    MalformedElement(String),
    #[error("generator set is not inverse-closed: inverse of {0} missing")]
    NotInverseClosed(String),
    #[error("generator set contains the identity")]
    ContainsIdentity,
    #[error("generator set does not generate the group")]
    DoesNotGenerate,
    #[error("generator set is empty")]
    NoGenerators,
    #[error("ordering is not a valid pairing of the generators")]
    InvalidOrdering,
}

/// `Z_{m_1} × ... × Z_{m_r}` under coordinatewise addition. Element ids are
/// mixed-radix with the last factor least significant, so `Z_k^n` shares
/// vertex ids with `Q_n^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    orders: Vec<usize>,
}

pub type Element = usize;

impl AbelianGroupSpec {
    pub fn new(orders: Vec<usize>) -> Result<Self, CayleyError> {
        if orders.is_empty() {
            return Err(CayleyError::MalformedGroup(String::new()));
        }
        if orders.iter().any(|&m| m < 2) {
            return Err(CayleyError::TrivialFactor);
        }
        Ok(AbelianGroupSpec { orders })
    }

    /// `Z_k^n`.
    pub fn power(k: usize, n: usize) -> Result<Self, CayleyError> {
        AbelianGroupSpec::new(vec![k; n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn coords(&self, a: Element) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        let mut rest = a;
        for (c, &m) in out.iter_mut().zip(&self.orders).rev() {
            *c = rest % m;
            rest /= m;
        }
        out
    }

    pub fn element(&self, coords: &[usize]) -> Option<Element> {
        if coords.len() != self.orders.len() || coords.iter().zip(&self.orders).any(|(&c, &m)| c >= m) {
            return None;
        }
        Some(coords.iter().zip(&self.orders).fold(0, |acc, (&c, &m)| acc * m + c))
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<usize> = ca
            .iter()
            .zip(&cb)
            .zip(&self.orders)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        self.element(&sum).expect("reduced coordinates")
    }

    pub fn neg(&self, a: Element) -> Element {
        let c: Vec<usize> = self
            .coords(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.element(&c).expect("reduced coordinates")
    }

    /// Digit string, factor order left to right; colon-separated if any factor exceeds 10.
    pub fn label(&self, a: Element) -> String {
        let sep = if self.orders.iter().any(|&m| m > 10) { ":" } else { "" };
        self.coords(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse_element(&self, s: &str) -> Result<Element, CayleyError> {
        let bad = || CayleyError::MalformedElement(s.to_string());
        let s = s.trim();
        let coords: Vec<usize> = if s.contains(':') || self.orders.len() == 1 {
            s.split(':')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        self.element(&coords).ok_or_else(bad)
    }

    /// Parses a comma-separated list of elements.
    pub fn parse_elements(&self, s: &str) -> Result<Vec<Element>, CayleyError> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.parse_element(t))
            .collect()
    }
}

impl FromStr for AbelianGroupSpec {
    type Err = CayleyError;

    /// Accepts `"Z4xZ4xZ2"` (case-insensitive `z`, `x` or `*` separators).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CayleyError::MalformedGroup(s.to_string());
        let orders = s
            .split(['x', 'X', '*'])
            .map(|f| {
                let f = f.trim();
                let digits = f.strip_prefix('Z').or_else(|| f.strip_prefix('z')).ok_or_else(bad)?;
                digits.parse::<usize>().map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()?;
        AbelianGroupSpec::new(orders)
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z{m}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// `Cay(Γ, S)` for an abelian `Γ`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    group: AbelianGroupSpec,
    generators: Vec<Element>,
    graph: Graph,
}

impl CayleyGraph {
    pub fn group(&self) -> &AbelianGroupSpec {
        &self.group
    }

    /// The generator set `S`, sorted by id.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn degree(&self) -> usize {
        self.generators.len()
    }
}

/// Builds `Cay(Γ, S)`, rejecting generator sets that contain the identity,
/// are not inverse-closed, or do not generate `Γ`.
pub fn build_cayley(group: &AbelianGroupSpec, generators: &[Element]) -> Result<CayleyGraph, CayleyError> {
    if generators.is_empty() {
        return Err(CayleyError::NoGenerators);
    }
    let order = group.order();
    let mut gens = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    if let Some(&s) = gens.iter().find(|&&s| s >= order) {
        return Err(CayleyError::MalformedElement(s.to_string()));
    }
    if gens.contains(&group.identity()) {
        return Err(CayleyError::ContainsIdentity);
    }
    if let Some(&s) = gens.iter().find(|&&s| gens.binary_search(&group.neg(s)).is_err()) {
        return Err(CayleyError::NotInverseClosed(group.label(s)));
    }
    let edges = (0..order).flat_map(|g| gens.iter().map(move |&s| (g, group.add(g, s))));
    let graph = Graph::from_edges(order, edges).expect("group elements are in range");
    if crate::graph::components(&graph).len() != 1 {
        return Err(CayleyError::DoesNotGenerate);
    }
    Ok(CayleyGraph {
        group: group.clone(),
        generators: gens,
        graph,
    })
}

/// `Q_n^k` as `Cay(Z_k^n, {e_i, e_i^{-1}})`.
pub fn cube_cayley(spec: &CubeSpec) -> CayleyGraph {
    let group = AbelianGroupSpec::power(spec.k(), spec.n()).expect("k >= 2");
    let gens: Vec<Element> = (0..spec.n())
        .flat_map(|d| {
            let unit = spec.k().pow(d as u32);
            [unit, (spec.k() - 1) * unit]
        })
        .collect();
    build_cayley(&group, &gens).expect("unit vectors generate Z_k^n")
}

/// An ordering `s_1, ..., s_δ` of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrdering(Vec<Element>);

impl GeneratorOrdering {
    pub fn new(order: Vec<Element>) -> Self {
        GeneratorOrdering(order)
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.0
    }

    /// Consecutive pairs `(s_{2i-1}, s_{2i})`.
    pub fn pairs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.0.chunks_exact(2).map(|p| (p[0], p[1]))
    }
}

fn pair_allowed(cay: &CayleyGraph, a: Element, b: Element) -> bool {
    let prod = cay.group.add(a, b);
    prod != cay.group.identity() && cay.generators.binary_search(&prod).is_err()
}

/// A permutation of `S` in which no pair multiplies into `S ∪ {e}`.
pub fn is_valid_ordering(cay: &CayleyGraph, ordering: &GeneratorOrdering) -> bool {
    let mut sorted = ordering.0.clone();
    sorted.sort_unstable();
    sorted == cay.generators && ordering.pairs().all(|(a, b)| pair_allowed(cay, a, b))
}

/// Lexicographically first valid ordering, by exhaustive backtracking.
/// Returns `None` when no valid ordering exists (or for `δ > 64`).
pub fn find_valid_ordering(cay: &CayleyGraph) -> Option<GeneratorOrdering> {
    fn search(cay: &CayleyGraph, remaining: u64, out: &mut Vec<Element>, dead: &mut HashSet<u64>) -> bool {
        let gens = &cay.generators;
        match remaining.count_ones() {
            0 => return true,
            1 => {
                out.push(gens[remaining.trailing_zeros() as usize]);
                return true;
            }
            _ => {}
        }
        if dead.contains(&remaining) {
            return false;
        }
        let members: Vec<usize> = (0..gens.len()).filter(|&i| remaining >> i & 1 == 1).collect();
        for &a in &members {
            for &b in &members {
                if a == b || !pair_allowed(cay, gens[a], gens[b]) {
                    continue;
                }
                out.extend([gens[a], gens[b]]);
                if search(cay, remaining & !(1 << a) & !(1 << b), out, dead) {
                    return true;
                }
                out.truncate(out.len() - 2);
            }
        }
        dead.insert(remaining);
        false
    }

    let delta = cay.generators.len();
    if delta > 64 {
        return None;
    }
    let all = if delta == 64 { u64::MAX } else { (1u64 << delta) - 1 };
    let mut out = Vec::with_capacity(delta);
    search(cay, all, &mut out, &mut HashSet::new()).then_some(GeneratorOrdering(out))
}

/// Fault set built from a valid generator ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyWitness {
    /// `v_i = s_{2i-1} · s_{2i}` in pair order (possibly repeating).
    pub pair_products: Vec<Element>,
    /// The extra vertex added when `δ` is odd and `s_δ` has a neighbour at distance two from `e`.
    pub extra: Option<Element>,
    /// `U`, sorted and deduplicated.
    pub faults: Vec<Element>,
}

fn distance_two_from_identity(g: &Graph) -> Vec<bool> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        if dist[v] >= 2 {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.iter().map(|&d| d == 2).collect()
}

/// Builds `U` from the ordering: the pair products, plus (for odd `δ`) the
/// least-id neighbour of `s_δ` at distance two from the identity, if any.
pub fn paired_generator_witness(cay: &CayleyGraph, ordering: &GeneratorOrdering) -> Result<CayleyWitness, CayleyError> {
    if !is_valid_ordering(cay, ordering) {
        return Err(CayleyError::InvalidOrdering);
    }
    let pair_products: Vec<Element> = ordering.pairs().map(|(a, b)| cay.group.add(a, b)).collect();
    let delta = cay.degree();
    let extra = if delta % 2 == 1 {
        let at_two = distance_two_from_identity(&cay.graph);
        let last = ordering.0[delta - 1];
        cay.graph.neighbors(last).iter().copied().find(|&w| at_two[w])
    } else {
        None
    };
    let mut faults: Vec<Element> = pair_products.iter().copied().chain(extra).collect();
    faults.sort_unstable();
    faults.dedup();
    Ok(CayleyWitness {
        pair_products,
        extra,
        faults,
    })
}

/// Independent check of a witness against its Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub size: usize,
    /// `⌈δ/2⌉`.
    pub bound: usize,
    pub classification: Classification,
    /// Each `v_i` is adjacent to both generators of its pair.
    pub pairs_adjacent: bool,
    /// The identity stays healthy.
    pub identity_survives: bool,
    pub passed: bool,
}

pub fn verify_witness(cay: &CayleyGraph, ordering: &GeneratorOrdering, witness: &CayleyWitness) -> WitnessCheck {
    let g = &cay.graph;
    let faults = FaultSet::new(g, &witness.faults).expect("witness vertices are group elements");
    let (survivor, _) = survival_subgraph(g, &faults);
    let classification = classify(&survivor);
    let pairs_adjacent = ordering
        .pairs()
        .zip(&witness.pair_products)
        .all(|((a, b), &v)| g.is_adjacent(v, a) && g.is_adjacent(v, b));
    let identity_survives = faults.is_healthy(cay.group.identity());
    let bound = cay.degree().div_ceil(2);
    let size = witness.faults.len();
    let passed = size <= bound
        && matches!(classification, Classification::Disconnected | Classification::Complete)
        && pairs_adjacent
        && identity_survives;
    WitnessCheck {
        size,
        bound,
        classification,
        pairs_adjacent,
        identity_survives,
        passed,
    }
}
