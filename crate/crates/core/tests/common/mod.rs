#![allow(dead_code)]

use invconn::lie::{model_corpus, LieAlgebra};
use invconn::reductive::{check_reductive, Decomposition};
use invconn::{RatMatrix, Rational, Tensor3};
use rand::rngs::StdRng;
use rand::Rng;

pub fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Every reductive partition of every corpus model of dimension at most `max_dim`.
pub fn reductive_pairs(max_dim: usize) -> Vec<(LieAlgebra, Decomposition)> {
    let mut out = Vec::new();
    for g in model_corpus().into_iter().filter(|g| g.dim() <= max_dim) {
        for d in Decomposition::all_partitions(g.dim()) {
            if check_reductive(&g, &d).is_empty() {
                out.push((g.clone(), d));
            }
        }
    }
    out
}

/// Small random rational `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn rand_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn rand_vec(rng: &mut StdRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rand_rational(rng)).collect()
}

pub fn rand_tensor3(rng: &mut StdRng, n: usize) -> Tensor3 {
    Tensor3::from_flat(n, rand_vec(rng, n * n * n)).unwrap()
}

/// Product of a random unit lower and a random unit upper triangular matrix.
pub fn rand_invertible(rng: &mut StdRng, n: usize) -> RatMatrix {
    let mut l = RatMatrix::identity(n);
    let mut u = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, r(rng.gen_range(-2..=2)));
            u.set(j, i, r(rng.gen_range(-2..=2)));
        }
    }
    l.mul(&u).unwrap()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
