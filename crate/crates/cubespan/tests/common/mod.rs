//! Shared oracles for the integration suites, independent of the library's
//! own computational paths.

use cubespan::matrix::rational_inverse;
use cubespan::rational::Rational;
use cubespan::simplex::Simplex;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Counts `|m * simplex  intersect  Z^d|` by brute force: every integer point
/// of the bounding box is tested through exact barycentric coordinates.
pub fn ehrhart_count(simplex: &Simplex, m: u64) -> u64 {
    let n = simplex.vertices.len();
    let d = n - 1;
    // Columns (v_i, 1); solving W s = (x, m) gives the barycentric weights,
    // with the last row forcing their sum to m.
    let w: Vec<Vec<Rational>> = (0..n)
        .map(|row| {
            (0..n)
                .map(|col| {
                    let entry = if row < d {
                        simplex.vertices[col][row]
                    } else {
                        1
                    };
                    Rational::from_integer(BigInt::from(entry))
                })
                .collect()
        })
        .collect();
    let w_inv = rational_inverse(&w).expect("nondegenerate simplex");

    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for v in &simplex.vertices {
        for i in 0..d {
            lo[i] = lo[i].min(v[i] * m as i64);
            hi[i] = hi[i].max(v[i] * m as i64);
        }
    }

    let mut count = 0u64;
    let mut x = lo.clone();
    'outer: loop {
        let mut rhs: Vec<Rational> = x
            .iter()
            .map(|&xi| Rational::from_integer(BigInt::from(xi)))
            .collect();
        rhs.push(Rational::from_integer(BigInt::from(m)));
        let inside = (0..n).all(|i| {
            let s: Rational = (0..n).map(|j| &w_inv[i][j] * &rhs[j]).sum();
            !s.is_negative()
        });
        if inside {
            count += 1;
        }
        for i in 0..d {
            x[i] += 1;
            if x[i] <= hi[i] {
                continue 'outer;
            }
            x[i] = lo[i];
        }
        break;
    }
    if d == 0 {
        // A point; the empty product loop above ran exactly once.
        debug_assert_eq!(count, 1);
    }
    count
}

/// h*-vector recovered from the dilate counts: the alternating binomial
/// transform of `L(0), ..., L(n-1)`.
pub fn h_star_by_counting(simplex: &Simplex) -> Vec<i64> {
    let n = simplex.vertices.len();
    let counts: Vec<i64> = (0..n as u64)
        .map(|m| ehrhart_count(simplex, m) as i64)
        .collect();
    let binom = |n: i64, k: i64| -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        let mut acc = 1i64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    (0..n)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                    sign * binom(n as i64, (k - j) as i64) * counts[j]
                })
                .sum()
        })
        .collect()
}

#[allow(dead_code)]
pub fn nonzero(x: &Rational) -> bool {
    !x.is_zero()
}
