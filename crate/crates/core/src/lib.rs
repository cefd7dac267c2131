//! Neighbor connectivity of k-ary n-cubes: exact search, closed forms,
//! Cayley-graph witnesses and constructive disjoint-path certificates.

pub mod cayley;
pub mod cli;
pub mod construct;
pub mod cube;
pub mod graph;
pub mod survival;
