//! Linear span of the cube points: coordinate projection classes, the
//! relation system characterizing vanishing functionals, the class-count
//! dimension formula, the coordinate-pairing involution, and brute-force
//! oracles for all of them.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::Result;
use crate::group::{GroupElement, Subgroup};
use crate::lattice::{cube_points_capped, CubePoint, QuotientGroup, DEFAULT_POINT_CAP};
use crate::matrix::{nullspace_basis, rational_rank, same_subspace};
use crate::rational::{is_integer, rat, to_f64, Rational};

/// Equivalence classes of the non-trivial coordinates.
///
/// Two coordinates are identified in `i_classes` when their projections
/// agree up to sign, and in `k_classes` when their projections have equal
/// kernels; kernel classes coarsen sign classes.
#[derive(Clone, Debug)]
pub struct CoordClasses {
    pub i_classes: Vec<Vec<usize>>,
    pub k_classes: Vec<Vec<usize>>,
    /// Per coordinate (all `n`): whether the projection equals its own negative.
    pub self_negative: Vec<bool>,
}

/// Partitions the non-trivial coordinates by projection sign-equality and by
/// kernel equality. Kernels are materialized as sorted element lists and
/// compared structurally.
pub fn coordinate_classes(qg: &QuotientGroup) -> CoordClasses {
    let n = qg.dim;
    let m = qg.group.rank();
    let factors = qg.group.factors();

    let self_negative: Vec<bool> = (0..n)
        .map(|i| (0..m).all(|j| (2 * qg.proj[i][j]) % factors[j] == 0))
        .collect();

    let active: Vec<usize> = (0..n).filter(|&i| !qg.trivial_coords[i]).collect();

    let mut i_classes: Vec<Vec<usize>> = Vec::new();
    for &i in &active {
        let slot = i_classes.iter().position(|class| {
            let rep = class[0];
            qg.proj[i] == qg.proj[rep] || qg.proj[i] == qg.coord_hom_neg(rep)
        });
        match slot {
            Some(s) => i_classes[s].push(i),
            None => i_classes.push(vec![i]),
        }
    }

    let kernels: Vec<Subgroup> = (0..n).map(|i| coord_kernel(qg, i)).collect();
    let mut k_classes: Vec<Vec<usize>> = Vec::new();
    for &i in &active {
        let slot = k_classes
            .iter()
            .position(|class| kernels[class[0]] == kernels[i]);
        match slot {
            Some(s) => k_classes[s].push(i),
            None => k_classes.push(vec![i]),
        }
    }

    // Kernel classes coarsen sign classes: a projection and its negative
    // share a kernel.
    debug_assert!(i_classes
        .iter()
        .all(|ic| k_classes.iter().any(|kc| ic.iter().all(|i| kc.contains(i)))));

    CoordClasses {
        i_classes,
        k_classes,
        self_negative,
    }
}

/// Kernel of the coordinate projection as a sorted element list.
pub fn coord_kernel(qg: &QuotientGroup, i: usize) -> Subgroup {
    let elements = qg
        .group
        .elements()
        .into_iter()
        .filter(|g| crate::chars::hom_angle(&qg.group, &qg.proj[i], g).is_zero())
        .collect();
    Subgroup { elements }
}

/// The two class counts of the dimension formula.
///
/// `iota` counts sign classes whose projection differs from its negative;
/// `kappa` counts kernel classes containing a pair of coordinates (possibly
/// equal) with opposite projections.
pub fn iota_kappa(qg: &QuotientGroup, classes: &CoordClasses) -> (usize, usize) {
    let iota = classes
        .i_classes
        .iter()
        .filter(|class| !classes.self_negative[class[0]])
        .count();
    let kappa = classes
        .k_classes
        .iter()
        .filter(|class| {
            class.iter().any(|&i| {
                let neg = qg.coord_hom_neg(i);
                class.iter().any(|&j| qg.proj[j] == neg)
            })
        })
        .count();
    (iota, kappa)
}

/// Dimension of the linear span of the cube points: `iota + kappa` over the
/// non-trivial coordinates.
pub fn span_dimension(qg: &QuotientGroup) -> usize {
    let classes = coordinate_classes(qg);
    let (iota, kappa) = iota_kappa(qg, &classes);
    iota + kappa
}

/// The linear relation system whose solution set is the space of functionals
/// vanishing on every cube point.
///
/// One row per sign class with non-self-negative projection (coefficients
/// `+1` where the projection matches, `-1` where it is the negative) and one
/// row per kernel class (all-ones over the class). Trivial coordinates get no
/// row: their point coordinates vanish identically, so the corresponding unit
/// functionals always lie in the solution set.
#[derive(Clone, Debug)]
pub struct RelationSystem {
    pub rows: Vec<Vec<Rational>>,
    pub dim: usize,
}

pub fn relation_system(qg: &QuotientGroup, classes: &CoordClasses) -> RelationSystem {
    let n = qg.dim;
    let mut rows = Vec::new();
    for class in &classes.i_classes {
        let rep = class[0];
        if classes.self_negative[rep] {
            continue;
        }
        let neg = qg.coord_hom_neg(rep);
        let mut row = vec![Rational::zero(); n];
        for i in 0..n {
            if qg.trivial_coords[i] {
                continue;
            }
            if qg.proj[i] == qg.proj[rep] {
                row[i] += rat(1, 1);
            }
            if qg.proj[i] == neg {
                row[i] -= rat(1, 1);
            }
        }
        rows.push(row);
    }
    for class in &classes.k_classes {
        let mut row = vec![Rational::zero(); n];
        for &i in class {
            row[i] = rat(1, 1);
        }
        rows.push(row);
    }
    RelationSystem { rows, dim: n }
}

/// How to compute the vanishing-functional space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpanMethod {
    /// Nullspace of the class relation system.
    Formula,
    /// Nullspace of the matrix whose rows are all cube points.
    BruteForce,
}

/// Basis of `{ u : <u, p> = 0 for every cube point p }`, by either route.
pub fn vanishing_functionals(qg: &QuotientGroup, method: SpanMethod) -> Result<Vec<Vec<Rational>>> {
    match method {
        SpanMethod::Formula => {
            let classes = coordinate_classes(qg);
            let system = relation_system(qg, &classes);
            Ok(nullspace_basis(&system.rows, system.dim))
        }
        SpanMethod::BruteForce => {
            let pts = cube_points_capped(qg, DEFAULT_POINT_CAP)?;
            let rows: Vec<Vec<Rational>> = pts.iter().map(|p| p.coords.clone()).collect();
            Ok(nullspace_basis(&rows, qg.dim))
        }
    }
}

/// Exact rank of the cube-point matrix: the brute-force span dimension.
pub fn bruteforce_span_dimension(qg: &QuotientGroup) -> Result<usize> {
    let pts = cube_points_capped(qg, DEFAULT_POINT_CAP)?;
    let rows: Vec<Vec<Rational>> = pts.iter().map(|p| p.coords.clone()).collect();
    Ok(rational_rank(&rows))
}

/// Both routes to the vanishing space produce the same subspace (mutual
/// containment under exact rank tests).
pub fn vanishing_spaces_agree(qg: &QuotientGroup) -> Result<bool> {
    let formula = vanishing_functionals(qg, SpanMethod::Formula)?;
    let brute = vanishing_functionals(qg, SpanMethod::BruteForce)?;
    Ok(same_subspace(&formula, &brute))
}

/// Checks the summation identity relating `<u, p>` to the pairing of the
/// class imbalance function `h_u` with `S_p` over the homomorphism group:
/// `sum u_i p_i = (|H| <h_u, S_p> + sum over supp(p) of u_i) / 2`,
/// the right side evaluated in complex arithmetic within `1e-9`.
pub fn check_pairing_identity(qg: &QuotientGroup, u: &[Rational], p: &CubePoint) -> bool {
    assert_eq!(u.len(), qg.dim);
    let group = &qg.group;
    let order = group.order() as usize;

    // h_u over H, accumulated by walking the coordinates once.
    let mut h = vec![0.0f64; order];
    for i in 0..qg.dim {
        if qg.trivial_coords[i] {
            // The projection is zero: the two accumulations cancel.
            continue;
        }
        let ui = to_f64(&u[i]);
        let idx = group.index_of(&GroupElement::new(qg.proj[i].clone()));
        let neg_idx = group.index_of(&GroupElement::new(qg.coord_hom_neg(i)));
        h[idx] += ui;
        h[neg_idx] -= ui;
    }

    let s_vals = crate::chars::s_values(group, &p.element);
    // |H| <h_u, S_p> with the normalized inner product cancels to a plain sum.
    let mut pairing = Complex64::zero();
    for k in 0..order {
        pairing += Complex64::new(h[k], 0.0) * Complex64::new(to_f64(&s_vals[k]), 0.0).conj();
    }

    let support_sum: f64 = (0..qg.dim)
        .filter(|&i| !p.coords[i].is_zero())
        .map(|i| to_f64(&u[i]))
        .sum();
    let rhs = (pairing + support_sum) / 2.0;
    let lhs: f64 = (0..qg.dim)
        .map(|i| to_f64(&u[i]) * to_f64(&p.coords[i]))
        .sum();
    (rhs - lhs).norm() <= 1e-9
}

/// Outcome of the equal-mass test: either every cube point has coordinate
/// sum `|supp| / 2` and a pairing involution of the coordinates exists, or a
/// violating point is returned.
#[derive(Clone, Debug)]
pub struct SeboResult {
    pub holds: bool,
    /// Involution of `{0, ..., n-1}`, present exactly when the test holds.
    pub involution: Option<Vec<usize>>,
    /// A cube point violating the equality, present exactly when it fails.
    pub witness: Option<CubePoint>,
}

/// Tests whether every cube point satisfies `sum of coordinates = |supp|/2`
/// and, if so, constructs an involution pairing each coordinate with one of
/// opposite projection (fixed points where the projection is its own
/// negative). Within each projection pair, coordinates are matched in
/// increasing index order.
pub fn sebo_check(qg: &QuotientGroup) -> Result<SeboResult> {
    let pts = cube_points_capped(qg, DEFAULT_POINT_CAP)?;
    for p in &pts {
        if &p.coord_sum() * rat(2, 1) != rat(p.support_size() as i64, 1) {
            return Ok(SeboResult {
                holds: false,
                involution: None,
                witness: Some(p.clone()),
            });
        }
    }

    let n = qg.dim;
    let classes = coordinate_classes(qg);
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut done = vec![false; n];
    for i in 0..n {
        if qg.trivial_coords[i] || classes.self_negative[i] {
            done[i] = true; // fixed point
        }
    }
    for i in 0..n {
        if done[i] {
            continue;
        }
        let neg = qg.coord_hom_neg(i);
        let positives: Vec<usize> = (i..n)
            .filter(|&t| !done[t] && qg.proj[t] == qg.proj[i])
            .collect();
        let negatives: Vec<usize> = (0..n).filter(|&t| !done[t] && qg.proj[t] == neg).collect();
        assert_eq!(
            positives.len(),
            negatives.len(),
            "projection multiset is not negation-symmetric although the sum test held"
        );
        for (&a, &b) in positives.iter().zip(&negatives) {
            sigma[a] = b;
            sigma[b] = a;
            done[a] = true;
            done[b] = true;
        }
    }

    debug_assert!(involution_is_valid(qg, &sigma));
    Ok(SeboResult {
        holds: true,
        involution: Some(sigma),
        witness: None,
    })
}

/// Whether `p_i + p_{sigma(i)}` is an integer for every group generator point
/// and every coordinate.
pub fn involution_is_valid(qg: &QuotientGroup, sigma: &[usize]) -> bool {
    if sigma.len() != qg.dim {
        return false;
    }
    if (0..qg.dim).any(|i| sigma[sigma[i]] != i) {
        return false;
    }
    qg.generator_points()
        .iter()
        .all(|p| (0..qg.dim).all(|i| is_integer(&(&p.coords[i] + &p.coords[sigma[i]]))))
}

/// Cycle notation for an involution, one-based, fixed points omitted;
/// the identity prints as `id`.
pub fn involution_cycles(sigma: &[usize]) -> String {
    let mut out = String::new();
    for i in 0..sigma.len() {
        if sigma[i] > i {
            out.push_str(&format!("({} {})", i + 1, sigma[i] + 1));
        }
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}
