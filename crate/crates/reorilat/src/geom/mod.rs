//! Exact rational geometry: the graphical zonotope and fan, shards and
//! shard polytopes, Minkowski-sum quotientopes, removahedral associahedra,
//! and posets of regions of vector configurations.
//!
//! Every coordinate is an arbitrary-precision rational; nothing in this
//! module touches floating point.

pub mod linalg;
pub mod lp;
pub mod minkowski;
pub mod polytope;
pub mod regions;
pub mod shard;
pub mod zonotope;

pub use minkowski::{minkowski_vertex, removahedron, Quotientope, RemovahedronReport};
pub use polytope::{HRep, VPolytope};
pub use regions::VectorConfiguration;
pub use shard::{shard_contains, shard_polytope, ShardPolytope};

use num_traits::Zero;

pub type Q = num_rational::BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

pub fn qvec(values: &[i64]) -> Vec<Q> {
    values.iter().map(|&v| qi(v)).collect()
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Q::is_zero)
}

/// Unit basis vector `e_i` in dimension `n`.
pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = qi(1);
    v
}

/// Characteristic vector of a vertex set.
pub fn indicator(n: usize, s: crate::bits::VertexSet) -> Vec<Q> {
    let mut v = zeros(n);
    for i in s.iter() {
        v[i] = qi(1);
    }
    v
}

/// Is `b - a` a positive multiple of `dir`?
pub fn positive_multiple_of(b: &[Q], a: &[Q], dir: &[Q]) -> bool {
    use num_traits::Signed;
    let diff = sub(b, a);
    if is_zero_vec(&diff) {
        return false;
    }
    let Some(i) = (0..dir.len()).find(|&i| !dir[i].is_zero()) else {
        return false;
    };
    let lambda = &diff[i] / &dir[i];
    lambda.is_positive() && diff == scale(dir, &lambda)
}
