//! Survival subgraphs `G ⊖ U` and neighbor connectivity.
//!
//! A fault at `u` takes down its whole closed neighbourhood, so the fault set
//! `U` leaves the subgraph induced by `V ∖ N[U]`. The neighbor connectivity
//! `κ_NB(G)` is the least `|U|` for which that subgraph is disconnected,
//! complete or empty.

use thiserror::Error;

use crate::cube::Cube;
use crate::graph::{classify, classify_alive, vertex_connectivity, Classification, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurvivalError {
    #[error("fault vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("no qualifying fault set with at most {budget} vertices")]
    BudgetExhausted { budget: usize },
    #[error("invalid parameters n={n}, k={k}")]
    InvalidParameters { n: usize, k: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A fault set `U` with its closed neighbourhood `N[U]` precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultSet {
    vertices: Vec<Vertex>,
    faulty: Vec<bool>,
}

impl FaultSet {
    pub fn new(g: &Graph, faults: &[Vertex]) -> Result<Self, SurvivalError> {
        let mut vertices = faults.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut faulty = vec![false; g.vertex_count()];
        for &u in &vertices {
            if !g.contains(u) {
                return Err(SurvivalError::VertexOutOfRange {
                    vertex: u,
                    order: g.vertex_count(),
                });
            }
            faulty[u] = true;
            for &w in g.neighbors(u) {
                faulty[w] = true;
            }
        }
        Ok(FaultSet { vertices, faulty })
    }

    /// The fault vertices `U`, sorted.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `ℓ = |U|`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Whether `v ∈ N[U]`.
    pub fn is_faulty(&self, v: Vertex) -> bool {
        self.faulty[v]
    }

    pub fn is_healthy(&self, v: Vertex) -> bool {
        !self.faulty[v]
    }

    /// `N[U]`, sorted.
    pub fn closed_neighborhood(&self) -> Vec<Vertex> {
        (0..self.faulty.len()).filter(|&v| self.faulty[v]).collect()
    }

    /// `V ∖ N[U]`, sorted.
    pub fn healthy(&self) -> Vec<Vertex> {
        (0..self.faulty.len()).filter(|&v| !self.faulty[v]).collect()
    }

    pub fn healthy_mask(&self) -> Vec<bool> {
        self.faulty.iter().map(|&f| !f).collect()
    }
}

/// `G ⊖ U` together with the sorted healthy vertices (local id `i` is `mapping[i]`).
pub fn survival_subgraph(g: &Graph, faults: &FaultSet) -> (Graph, Vec<Vertex>) {
    g.induced_subgraph(&faults.healthy())
}

/// Lexicographic enumeration of the `size`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            current: (size <= n).then(|| (0..size).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().expect("checked above");
        let size = c.len();
        let mut i = size;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// How much of the automorphism group the search may exploit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetry {
    #[default]
    None,
    /// The caller guarantees vertex-transitivity, so one fault can sit at vertex 0.
    VertexTransitive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcResult {
    pub value: usize,
    pub witness: FaultSet,
    pub classification: Classification,
}

fn survival_class(g: &Graph, faults: &[Vertex]) -> Classification {
    let mut alive = vec![true; g.vertex_count()];
    for &u in faults {
        alive[u] = false;
        for &w in g.neighbors(u) {
            alive[w] = false;
        }
    }
    classify_alive(g, &alive)
}

fn candidates(n: usize, size: usize, symmetry: Symmetry) -> Box<dyn Iterator<Item = Vec<Vertex>>> {
    match symmetry {
        Symmetry::VertexTransitive if size >= 1 => {
            if n == 0 {
                return Box::new(std::iter::empty());
            }
            Box::new(
                Combinations::new(n - 1, size - 1)
                    .map(|rest| std::iter::once(0).chain(rest.into_iter().map(|v| v + 1)).collect()),
            )
        }
        _ => Box::new(Combinations::new(n, size)),
    }
}

/// Lexicographically least qualifying subset of the given size, if any.
fn first_qualifying(
    g: &Graph,
    size: usize,
    symmetry: Symmetry,
    workers: usize,
) -> Option<(Vec<Vertex>, Classification)> {
    let n = g.vertex_count();
    if workers <= 1 {
        return candidates(n, size, symmetry).find_map(|u| {
            let c = survival_class(g, &u);
            c.is_terminal().then_some((u, c))
        });
    }
    // Worker w takes every w-th candidate; its first hit is the least in its share.
    let found: Vec<Option<(Vec<Vertex>, Classification)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    candidates(n, size, symmetry).skip(w).step_by(workers).find_map(|u| {
                        let c = survival_class(g, &u);
                        c.is_terminal().then_some((u, c))
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    found.into_iter().flatten().min()
}

/// Exact `κ_NB` by layered search over fault-set sizes `0, 1, ..., budget`.
pub fn neighbor_connectivity_exact(g: &Graph, budget: usize, symmetry: Symmetry) -> Result<NbcResult, SurvivalError> {
    neighbor_connectivity_parallel(g, budget, symmetry, 1)
}

/// [`neighbor_connectivity_exact`] with each layer split across `workers`
/// threads. The reported witness does not depend on the worker count.
pub fn neighbor_connectivity_parallel(
    g: &Graph,
    budget: usize,
    symmetry: Symmetry,
    workers: usize,
) -> Result<NbcResult, SurvivalError> {
    for size in 0..=budget.min(g.vertex_count()) {
        let hit = if size == 0 {
            let c = classify(g);
            c.is_terminal().then_some((Vec::new(), c))
        } else {
            first_qualifying(g, size, symmetry, workers.max(1))
        };
        if let Some((u, classification)) = hit {
            return Ok(NbcResult {
                value: size,
                witness: FaultSet::new(g, &u)?,
                classification,
            });
        }
    }
    Err(SurvivalError::BudgetExhausted { budget })
}

/// Closed form of `κ_NB(Q_n^k)`.
pub fn kappa_nb_formula(n: usize, k: usize) -> Result<usize, SurvivalError> {
    if n < 1 || k < 2 {
        return Err(SurvivalError::InvalidParameters { n, k });
    }
    Ok(match (n, k) {
        (1, 2..=3) => 0,
        (1, 6..) => 2,
        (_, 2) => n.div_ceil(2),
        _ => n,
    })
}

/// `max(n - 2ℓ, 0)` for hypercubes, `max(2n - 2ℓ, 0)` for `k ≥ 3`.
pub fn connectivity_lower_bound(n: usize, k: usize, ell: usize) -> usize {
    if k == 2 {
        n.saturating_sub(2 * ell)
    } else {
        (2 * n).saturating_sub(2 * ell)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub ell: usize,
    /// `κ(G ⊖ U)` as computed by max-flow.
    pub kappa: usize,
    pub bound: usize,
    pub passed: bool,
}

/// Computes `κ(Q_n^k ⊖ U)` and compares it with the survival-connectivity bound.
pub fn lower_bound_check(cube: &Cube, faults: &FaultSet) -> Result<LowerBoundReport, SurvivalError> {
    let (n, k) = (cube.spec().n(), cube.spec().k());
    let ell = faults.len();
    if n < 2 {
        return Err(SurvivalError::Precondition(format!("need n >= 2, got n={n}")));
    }
    let max_ell = if k == 2 { n.div_ceil(2) } else { n };
    if ell > max_ell {
        return Err(SurvivalError::Precondition(format!(
            "ℓ={ell} exceeds {max_ell} for Q_{n}^{k}"
        )));
    }
    let (survivor, _) = survival_subgraph(cube.graph(), faults);
    let kappa = vertex_connectivity(&survivor);
    let bound = connectivity_lower_bound(n, k, ell);
    Ok(LowerBoundReport {
        ell,
        kappa,
        bound,
        passed: kappa >= bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcKappaReport {
    pub nbc: usize,
    pub kappa: usize,
    pub passed: bool,
}

/// Checks `κ_NB(G) ≤ κ(G)`, with both sides computed independently.
pub fn nbc_le_kappa_check(g: &Graph, budget: usize, symmetry: Symmetry) -> Result<NbcKappaReport, SurvivalError> {
    let nbc = neighbor_connectivity_exact(g, budget, symmetry)?.value;
    let kappa = vertex_connectivity(g);
    Ok(NbcKappaReport {
        nbc,
        kappa,
        passed: nbc <= kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::CubeSpec;

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 4).count(), 210);
    }

    #[test]
    fn survival_examples() {
        let c6 = Graph::cycle(6);
        let u = FaultSet::new(&c6, &[0]).unwrap();
        let (s, map) = survival_subgraph(&c6, &u);
        assert_eq!(map, vec![2, 3, 4]);
        assert_eq!(s, Graph::path(3));

        let none = FaultSet::new(&c6, &[]).unwrap();
        assert_eq!(survival_subgraph(&c6, &none).0, c6);

        let c4 = Graph::cycle(4);
        let (s, map) = survival_subgraph(&c4, &FaultSet::new(&c4, &[1]).unwrap());
        assert_eq!(map, vec![3]);
        assert_eq!(s.vertex_count(), 1);

        assert!(matches!(
            FaultSet::new(&c4, &[4]),
            Err(SurvivalError::VertexOutOfRange { vertex: 4, .. })
        ));
    }

    #[test]
    fn nbc_examples() {
        let r = neighbor_connectivity_exact(&Graph::complete(5), 3, Symmetry::None).unwrap();
        assert_eq!((r.value, r.classification), (0, Classification::Complete));
        let r = neighbor_connectivity_exact(&Graph::cycle(5), 3, Symmetry::VertexTransitive).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness.vertices(), &[0]);
        let r = neighbor_connectivity_exact(&Graph::cycle(6), 3, Symmetry::None).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness.vertices(), &[0, 1]);
        assert_eq!(
            neighbor_connectivity_exact(&Graph::cycle(8), 1, Symmetry::None),
            Err(SurvivalError::BudgetExhausted { budget: 1 })
        );
        let r = neighbor_connectivity_exact(&Graph::empty(0), 0, Symmetry::None).unwrap();
        assert_eq!(r.classification, Classification::Empty);
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = crate::cube::build_cube(&CubeSpec::new(2, 5).unwrap());
        let seq = neighbor_connectivity_exact(&g, 3, Symmetry::None).unwrap();
        for w in [2, 3, 7] {
            assert_eq!(neighbor_connectivity_parallel(&g, 3, Symmetry::None, w).unwrap(), seq);
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(kappa_nb_formula(1, 6), Ok(2));
        assert_eq!(kappa_nb_formula(4, 2), Ok(2));
        assert_eq!(kappa_nb_formula(3, 3), Ok(3));
        assert_eq!(kappa_nb_formula(1, 2), Ok(0));
        assert_eq!(kappa_nb_formula(1, 3), Ok(0));
        assert_eq!(kappa_nb_formula(1, 4), Ok(1));
        assert_eq!(kappa_nb_formula(1, 5), Ok(1));
        assert_eq!(kappa_nb_formula(5, 2), Ok(3));
        assert!(kappa_nb_formula(0, 3).is_err());
        assert!(kappa_nb_formula(2, 1).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let q4 = Cube::with_params(4, 2).unwrap();
        let r = lower_bound_check(&q4, &FaultSet::new(q4.graph(), &[0]).unwrap()).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.passed);

        let q33 = Cube::with_params(3, 3).unwrap();
        let u = [0, q33.spec().parse_vertex("111").unwrap()];
        let r = lower_bound_check(&q33, &FaultSet::new(q33.graph(), &u).unwrap()).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.passed);

        for cube in [&q4, &q33] {
            let r = lower_bound_check(cube, &FaultSet::new(cube.graph(), &[]).unwrap()).unwrap();
            assert_eq!(r.kappa, r.bound);
        }
        let too_many = FaultSet::new(q4.graph(), &[0, 3, 5]).unwrap();
        assert!(lower_bound_check(&q4, &too_many).is_err());
    }

    #[test]
    fn nbc_le_kappa_examples() {
        let r = nbc_le_kappa_check(&Graph::cycle(6), 3, Symmetry::VertexTransitive).unwrap();
        assert_eq!((r.nbc, r.kappa), (2, 2));
        let q3 = Cube::with_params(3, 2).unwrap();
        let r = nbc_le_kappa_check(q3.graph(), 3, Symmetry::VertexTransitive).unwrap();
        assert_eq!((r.nbc, r.kappa), (2, 3));
        let r = nbc_le_kappa_check(&Graph::complete(4), 3, Symmetry::None).unwrap();
        assert_eq!((r.nbc, r.kappa, r.passed), (0, 3, true));
    }
}
