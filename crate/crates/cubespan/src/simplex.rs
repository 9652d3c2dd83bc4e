//! Lattice simplices: the box-point lattice of a simplex and its h*-vector.
//!
//! For a simplex with vertices `v_1, ..., v_n` in `Z^(n-1)`, the coefficient
//! vectors `t` with `t_1 (v_1, 1) + ... + t_n (v_n, 1)` integral form a
//! lattice containing `Z^n`; its cube points grouped by coordinate sum give
//! the h*-vector.

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice::{build_quotient, cube_points, LatticeSpec};
use crate::matrix::rational_inverse;
use crate::rational::{is_integer, Rational};

/// A full-dimensional simplex: `n` integer vertices in `Z^(n-1)`.
#[derive(Clone, Debug, Deserialize)]
pub struct Simplex {
    pub vertices: Vec<Vec<i64>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<i64>>) -> Result<Self> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::InvalidInput(
                "a simplex needs at least 2 vertices".into(),
            ));
        }
        let d = n - 1;
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidInput(format!(
                "expected {n} vertices of dimension {d}"
            )));
        }
        Ok(Simplex { vertices })
    }

    /// Standard simplex `conv(0, e_1, ..., e_(n-1))`.
    pub fn unit(n: usize) -> Self {
        let d = n - 1;
        let mut vertices = vec![vec![0i64; d]];
        for i in 0..d {
            let mut v = vec![0i64; d];
            v[i] = 1;
            vertices.push(v);
        }
        Simplex { vertices }
    }

    /// The tetrahedron `conv(0, e_1, e_2, (1, 1, r))`.
    pub fn reeve(r: i64) -> Self {
        Simplex {
            vertices: vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, r]],
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Rows `(v_i, 1)` as a rational matrix.
    fn lifted_rows(&self) -> Vec<Vec<Rational>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| Rational::from_integer(BigInt::from(x)))
                    .chain(std::iter::once(Rational::from_integer(BigInt::from(1))))
                    .collect()
            })
            .collect()
    }
}

/// The lattice of coefficient vectors `t` with `sum_i t_i (v_i, 1)` in `Z^n`.
/// Errors on degenerate (affinely dependent) vertices.
///
/// With `A` the matrix whose rows are the `(v_i, 1)`, the generators are the
/// columns of the inverse transpose of `A`; adjoining `Z^n` leaves the
/// lattice unchanged since `A` is integral.
pub fn simplex_lattice(simplex: &Simplex) -> Result<LatticeSpec> {
    let n = simplex.vertices.len();
    let a = simplex.lifted_rows();
    // Invert the transpose: columns (v_i, 1).
    let at: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| a[j][i].clone()).collect())
        .collect();
    let inv = rational_inverse(&at).ok_or(Error::DegenerateSimplex)?;
    let generators: Vec<Vec<Rational>> = (0..n)
        .map(|j| (0..n).map(|i| inv[i][j].clone()).collect())
        .collect();
    LatticeSpec::new(n, generators)
}

/// The h*-vector `(h*_0, ..., h*_(n-1))` of the simplex: cube points of the
/// coefficient lattice counted by coordinate sum.
pub fn h_star(simplex: &Simplex) -> Result<Vec<u64>> {
    let n = simplex.vertices.len();
    let spec = simplex_lattice(simplex)?;
    let qg = build_quotient(&spec)?;
    let pts = cube_points(&qg)?;
    let mut hist = vec![0u64; n];
    for p in &pts {
        let s = p.coord_sum();
        assert!(
            is_integer(&s),
            "cube point with non-integral coordinate sum"
        );
        let level = usize::try_from(s.to_integer()).expect("negative level");
        assert!(level < n, "level out of range");
        hist[level] += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_simplex_is_unimodular() {
        for n in 2..=5 {
            let s = Simplex::unit(n);
            let spec = simplex_lattice(&s).unwrap();
            let qg = build_quotient(&spec).unwrap();
            assert_eq!(qg.order(), 1, "unit simplex quotient is trivial");
            let mut expected = vec![0u64; n];
            expected[0] = 1;
            assert_eq!(h_star(&s).unwrap(), expected);
        }
    }

    #[test]
    fn segment_of_length_two() {
        let s = Simplex::new(vec![vec![0], vec![2]]).unwrap();
        assert_eq!(h_star(&s).unwrap(), vec![1, 1]);
    }

    #[test]
    fn reeve_quotient_order_two() {
        let s = Simplex::reeve(2);
        let qg = build_quotient(&simplex_lattice(&s).unwrap()).unwrap();
        assert_eq!(qg.order(), 2);
    }

    #[test]
    fn reeve_h_star_counts() {
        for r in [2u64, 3, 5] {
            let s = Simplex::reeve(r as i64);
            let h = h_star(&s).unwrap();
            assert_eq!(h.iter().sum::<u64>(), r, "normalized volume");
            assert_eq!(h[0], 1);
            assert_eq!(h, vec![1, 0, r - 1, 0]);
        }
    }

    #[test]
    fn generators_combine_to_integer_vectors() {
        // The defining property: each generator's coefficient combination of
        // the lifted vertices is integral.
        let s = Simplex::reeve(3);
        let spec = simplex_lattice(&s).unwrap();
        let lifted = s.lifted_rows();
        for g in &spec.generators {
            for col in 0..lifted[0].len() {
                let acc: Rational = g.iter().zip(&lifted).map(|(t, row)| t * &row[col]).sum();
                assert!(is_integer(&acc), "combination is not integral");
            }
        }
    }

    #[test]
    fn degenerate_simplex_is_rejected() {
        let s = Simplex::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        match simplex_lattice(&s) {
            Err(Error::DegenerateSimplex) => {}
            other => panic!("expected degeneracy error, got {other:?}"),
        }
        assert!(h_star(&s).is_err());
    }

    #[test]
    fn dilated_triangle() {
        let s = Simplex::new(vec![vec![0, 0], vec![3, 0], vec![0, 3]]).unwrap();
        assert_eq!(h_star(&s).unwrap(), vec![1, 7, 1]);
    }
}
