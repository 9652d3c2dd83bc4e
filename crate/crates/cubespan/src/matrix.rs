//! Exact integer and rational linear algebra: Smith normal form with
//! unimodular transforms, rank and nullspace over the rationals, and rank
//! over the complex numbers with an explicit pivot threshold.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense integer matrix, row major, arbitrary precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().map(BigInt::from).collect();
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rational::from_integer(self[(i, j)].clone()))
                    .collect()
            })
            .collect()
    }

    /// Determinant via exact rational elimination. Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.to_rational_rows();
        let n = self.rows;
        let mut det = Rational::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m[i][k].is_zero());
            let Some(p) = pivot else {
                return BigInt::zero();
            };
            if p != k {
                m.swap(p, k);
                det = -det;
            }
            let pv = m[k][k].clone();
            det *= &pv;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = &m[i][k] / &pv;
                for j in k..n {
                    let sub = &factor * &m[k][j];
                    m[i][j] -= sub;
                }
            }
        }
        assert!(det.denom().is_one());
        det.numer().clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix; the result is integral.
    pub fn inverse_unimodular(&self) -> IntMatrix {
        let inv = rational_inverse(&self.to_rational_rows()).expect("matrix is singular");
        let rows = inv
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        assert!(x.denom().is_one(), "inverse is not integral");
                        x.numer().clone()
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_bigint_rows(rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let sub = q * &self[(b, j)];
            self[(a, j)] -= sub;
        }
    }

    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let sub = q * &self[(i, b)];
            self[(i, a)] -= sub;
        }
    }

    /// col a += col b
    fn col_add(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            let add = self[(i, b)].clone();
            self[(i, a)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular and `D`
/// diagonal with nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Computes the Smith normal form of a nonempty integer matrix.
pub fn snf(m: &IntMatrix) -> Snf {
    assert!(m.rows() > 0 && m.cols() > 0, "snf of an empty matrix");
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let min_dim = rows.min(cols);
    for k in 0..min_dim {
        'outer: loop {
            // Move a minimal-magnitude nonzero entry of the trailing block to (k, k).
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !a[(i, j)].is_zero()
                        && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                let q = &a[(i, k)] / &a[(k, k)];
                a.row_sub(i, k, &q);
                u.row_sub(i, k, &q);
                if !a[(i, k)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            for j in k + 1..cols {
                let q = &a[(k, j)] / &a[(k, k)];
                a.col_sub(j, k, &q);
                v.col_sub(j, k, &q);
                if !a[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility fix: pull any entry the pivot does not divide into column k.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&a[(i, j)] % &a[(k, k)]).is_zero() {
                        a.col_add(k, j);
                        v.col_add(k, j);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }

    debug_assert_eq!(u.mul(m).mul(&v), a);
    Snf { u, d: a, v }
}

/// Exact rank over the rationals by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = &m[i][col] / &pv;
                for j in col..cols {
                    let sub = &factor * &m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Basis of `{ x : M x = 0 }` for the matrix whose rows are given, with
/// `cols` passed explicitly so an empty row list still has a well-defined
/// ambient dimension. Every returned vector satisfies the system exactly.
pub fn nullspace_basis(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .cloned()
        .collect();
    assert!(m.iter().all(|r| r.len() == cols), "ragged rows");
    // Reduced row echelon form.
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for x in &mut m[rank] {
            *x /= &pv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..cols {
                    let sub = &factor * &m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut vec = vec![Rational::zero(); cols];
        vec[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            vec[pc] = -m[r][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// Exact inverse over the rationals, or `None` when singular.
pub fn rational_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "inverse of a non-square matrix"
    );
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pv = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pv;
            inv[col][j] /= &pv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in 0..n {
                    let s = &factor * &a[col][j];
                    a[i][j] -= s;
                    let s = &factor * &inv[col][j];
                    inv[i][j] -= s;
                }
            }
        }
    }
    Some(inv)
}

/// Whether `v` lies in the row space of `basis` (exact).
pub fn in_rational_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let r0 = rational_rank(basis);
    let mut extended: Vec<Vec<Rational>> = basis.to_vec();
    extended.push(v.to_vec());
    rational_rank(&extended) == r0
}

/// Whether two families of vectors span the same subspace (mutual containment).
pub fn same_subspace(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    a.iter().all(|v| in_rational_span(b, v)) && b.iter().all(|v| in_rational_span(a, v))
}

/// Rank over the complex numbers: Gaussian elimination with column pivoting,
/// treating pivots of magnitude at most `tol` as zero. Deterministic for a
/// fixed input and tolerance.
pub fn complex_rank(rows: &[Vec<Complex64>], tol: f64) -> usize {
    assert!(tol > 0.0, "complex_rank requires a positive tolerance");
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Complex64>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let mut best = rank;
        for i in rank..m.len() {
            if m[i][col].norm() > m[best][col].norm() {
                best = i;
            }
        }
        if rank >= m.len() || m[best][col].norm() <= tol {
            continue;
        }
        m.swap(rank, best);
        let pv = m[rank][col];
        for i in rank + 1..m.len() {
            let factor = m[i][col] / pv;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..cols {
                let sub = factor * m[rank][j];
                m[i][j] -= sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use rand::{Rng, SeedableRng};

    fn check_snf(m: &IntMatrix) {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U*M*V != D");
        assert!(s.u.is_unimodular(), "U not unimodular");
        assert!(s.v.is_unimodular(), "V not unimodular");
        let diag = s.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() {
                if diag[i].is_zero() {
                    assert!(diag[i + 1].is_zero(), "zero before nonzero in chain");
                } else {
                    assert!((&diag[i + 1] % &diag[i]).is_zero(), "chain broken");
                }
            }
        }
        // Off-diagonal entries vanish.
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let s = snf(&m);
        assert_eq!(s.d, IntMatrix::identity(3));
        check_snf(&m);
    }

    #[test]
    fn snf_gcd_row() {
        let m = IntMatrix::from_rows(vec![vec![4, 6]]);
        let s = snf(&m);
        assert_eq!(s.d, IntMatrix::from_rows(vec![vec![2, 0]]));
        check_snf(&m);
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert_eq!(s.d, IntMatrix::from_rows(vec![vec![1, 0], vec![0, 6]]));
        check_snf(&m);
    }

    #[test]
    fn snf_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let m = IntMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-20i64..=20)).collect())
                    .collect(),
            );
            check_snf(&m);
        }
    }

    #[test]
    fn rank_and_nullspace_basics() {
        let zero = vec![vec![rat_int(0); 2]; 2];
        assert_eq!(rational_rank(&zero), 0);
        assert_eq!(nullspace_basis(&zero, 2).len(), 2);

        let id: Vec<Vec<Rational>> = IntMatrix::identity(3).to_rational_rows();
        assert_eq!(rational_rank(&id), 3);
        assert!(nullspace_basis(&id, 3).is_empty());
    }

    #[test]
    fn nullspace_vectors_satisfy_system() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let m: Vec<Vec<Rational>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                        .collect()
                })
                .collect();
            let rank = rational_rank(&m);
            let ns = nullspace_basis(&m, cols);
            assert_eq!(rank + ns.len(), cols, "rank-nullity");
            assert_eq!(rational_rank(&ns), ns.len(), "basis independent");
            for v in &ns {
                for row in &m {
                    let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    assert!(dot.is_zero(), "M v != 0");
                }
            }
        }
    }

    /// Rank by exhaustive minor expansion, used as an independent oracle.
    fn rank_by_minors(m: &[Vec<Rational>]) -> usize {
        fn det(m: &[Vec<Rational>]) -> Rational {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = Rational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let rows = m.len();
        let cols = m[0].len();
        for k in (1..=rows.min(cols)).rev() {
            // All k x k minors.
            let row_sets = subsets(rows, k);
            let col_sets = subsets(cols, k);
            for rs in &row_sets {
                for cs in &col_sets {
                    let sub: Vec<Vec<Rational>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                        .collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn rank_matches_minor_expansion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m: Vec<Vec<Rational>> = (0..4)
                .map(|_| (0..4).map(|_| rat_int(rng.gen_range(-3i64..=3))).collect())
                .collect();
            assert_eq!(rational_rank(&m), rank_by_minors(&m));
        }
    }

    #[test]
    fn complex_rank_basics() {
        let id: Vec<Vec<Complex64>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| Complex64::new(f64::from(u8::from(i == j)), 0.0))
                    .collect()
            })
            .collect();
        assert_eq!(complex_rank(&id, 1e-9), 4);
        let dup = vec![
            vec![Complex64::new(1.0, 2.0), Complex64::new(0.5, 0.0)],
            vec![Complex64::new(1.0, 2.0), Complex64::new(0.5, 0.0)],
        ];
        assert_eq!(complex_rank(&dup, 1e-9), 1);
    }

    #[test]
    #[should_panic]
    fn complex_rank_rejects_bad_tolerance() {
        complex_rank(&[vec![Complex64::new(1.0, 0.0)]], 0.0);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = IntMatrix::from_rows(vec![vec![2, 1], vec![1, 1]]);
        let inv = m.inverse_unimodular();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }
}
