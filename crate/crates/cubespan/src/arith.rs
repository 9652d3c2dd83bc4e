//! Multiplicative arithmetic functions and the componentwise divisor lattice
//! of integer tuples.
//!
//! Tuple variants extend each function by taking the product over components,
//! e.g. `d(a) = d(a_1) d(a_2) ... d(a_m)`.

use num_traits::Zero;
use std::ops::{Add, Mul};

/// Prime factorization by trial division, `(prime, exponent)` pairs in
/// increasing prime order. Panics on `k = 0`.
pub fn factorize(k: u64) -> Vec<(u64, u32)> {
    assert!(k >= 1, "factorize requires a positive integer");
    let mut k = k;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= k {
        if k % p == 0 {
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// All divisors of `k` in increasing order.
pub fn divisors(k: u64) -> Vec<u64> {
    assert!(k >= 1, "divisors requires a positive integer");
    let mut out = vec![1u64];
    for (p, e) in factorize(k) {
        let prev = out.clone();
        let mut pe = 1;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

pub fn mobius(k: u64) -> i64 {
    assert!(k >= 1, "mobius requires a positive integer");
    let f = factorize(k);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(k: u64) -> u64 {
    assert!(k >= 1, "euler_phi requires a positive integer");
    let mut out = k;
    for (p, _) in factorize(k) {
        out = out / p * (p - 1);
    }
    out
}

pub fn divisor_count(k: u64) -> u64 {
    assert!(k >= 1, "divisor_count requires a positive integer");
    factorize(k).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(k: u64) -> u32 {
    assert!(k >= 1, "big_omega requires a positive integer");
    factorize(k).iter().map(|&(_, e)| e).sum()
}

pub fn mobius_tuple(a: &[u64]) -> i64 {
    a.iter().map(|&x| mobius(x)).product()
}

pub fn euler_phi_tuple(a: &[u64]) -> u64 {
    a.iter().map(|&x| euler_phi(x)).product()
}

pub fn divisor_count_tuple(a: &[u64]) -> u64 {
    a.iter().map(|&x| divisor_count(x)).product()
}

pub fn rank_tuple(a: &[u64]) -> u32 {
    a.iter().map(|&x| big_omega(x)).sum()
}

pub fn tuple_divides(d: &[u64], a: &[u64]) -> bool {
    d.len() == a.len() && d.iter().zip(a).all(|(&d, &a)| a % d == 0)
}

pub fn tuple_div(a: &[u64], d: &[u64]) -> Vec<u64> {
    assert!(tuple_divides(d, a), "tuple division requires divisibility");
    a.iter().zip(d).map(|(&a, &d)| a / d).collect()
}

pub fn tuple_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&a, &b)| a * b).collect()
}

/// All componentwise divisor tuples of `q`, in lexicographic order.
pub fn divisor_tuples(q: &[u64]) -> Vec<Vec<u64>> {
    let per: Vec<Vec<u64>> = q.iter().map(|&x| divisors(x)).collect();
    let mut out = vec![Vec::new()];
    for ds in &per {
        let mut next = Vec::with_capacity(out.len() * ds.len());
        for prefix in &out {
            for &d in ds {
                let mut t = prefix.clone();
                t.push(d);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// A function on the divisor tuples of a fixed bound `q`, stored eagerly so
/// that Dirichlet convolutions can be composed without recomputation.
#[derive(Clone, Debug)]
pub struct DivisorFn<T> {
    q: Vec<u64>,
    tuples: Vec<Vec<u64>>,
    values: Vec<T>,
}

impl<T: Clone + Zero + Add<Output = T> + Mul<Output = T>> DivisorFn<T> {
    pub fn from_fn(q: &[u64], mut f: impl FnMut(&[u64]) -> T) -> Self {
        let tuples = divisor_tuples(q);
        let values = tuples.iter().map(|t| f(t)).collect();
        DivisorFn {
            q: q.to_vec(),
            tuples,
            values,
        }
    }

    pub fn get(&self, a: &[u64]) -> &T {
        let idx = self
            .tuples
            .binary_search_by(|t| t.as_slice().cmp(a))
            .expect("argument is not a divisor tuple of the bound");
        &self.values[idx]
    }

    /// Dirichlet convolution over the componentwise divisor lattice:
    /// `(g * h)(a) = sum over d | a of g(d) h(a/d)`.
    pub fn convolve(&self, other: &DivisorFn<T>) -> DivisorFn<T> {
        assert_eq!(self.q, other.q, "convolution requires matching bounds");
        let values = self
            .tuples
            .iter()
            .map(|a| {
                let mut acc = T::zero();
                for d in divisor_tuples(a) {
                    let quot = tuple_div(a, &d);
                    acc = acc + self.get(&d).clone() * other.get(&quot).clone();
                }
                acc
            })
            .collect();
        DivisorFn {
            q: self.q.clone(),
            tuples: self.tuples.clone(),
            values,
        }
    }

    pub fn tuples(&self) -> &[Vec<u64>] {
        &self.tuples
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn tuple_values() {
        assert_eq!(divisor_count_tuple(&[2, 3]), 4);
        assert_eq!(mobius_tuple(&[2, 3]), 1);
        assert_eq!(euler_phi_tuple(&[9, 4]), 12);
    }

    #[test]
    #[should_panic]
    fn mobius_rejects_zero() {
        mobius(0);
    }

    #[test]
    fn divisor_tuples_of_2_2() {
        let t = divisor_tuples(&[2, 2]);
        assert_eq!(t, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
    }

    #[test]
    fn convolution_identities() {
        // mu * 1 is the indicator of 1, over the divisors of 12.
        let q = [12u64];
        let mu = DivisorFn::from_fn(&q, |a| mobius_tuple(a));
        let one = DivisorFn::from_fn(&q, |_| 1i64);
        let e = mu.convolve(&one);
        for d in divisor_tuples(&q) {
            assert_eq!(*e.get(&d), i64::from(d == [1]));
        }
        // 1 * 1 counts divisors, including the tuple case.
        let q2 = [2u64, 2];
        let one2 = DivisorFn::from_fn(&q2, |_| 1i64);
        let d2 = one2.convolve(&one2);
        assert_eq!(*d2.get(&[2, 2]), 4);
        for t in divisor_tuples(&q2) {
            assert_eq!(*d2.get(&t), divisor_count_tuple(&t) as i64);
        }
    }

    #[test]
    fn mobius_inversion_on_360() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let q = [360u64];
        let f = DivisorFn::from_fn(&q, |_| rng.gen_range(-50i64..50));
        let one = DivisorFn::from_fn(&q, |_| 1i64);
        let mu = DivisorFn::from_fn(&q, |a| mobius_tuple(a));
        let g = one.convolve(&f);
        let back = mu.convolve(&g);
        for d in divisor_tuples(&q) {
            assert_eq!(back.get(&d), f.get(&d));
        }
    }
}
