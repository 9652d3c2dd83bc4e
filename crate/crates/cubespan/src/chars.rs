//! Characters of finite abelian groups, the Fourier transform, Poisson
//! summation, annihilators, and the odd-function spanning check.
//!
//! A character of `G = Z/r_1 + ... + Z/r_m` is indexed by a tuple
//! `(c_1, ..., c_m)` and evaluates as `e(sum a_j c_j / r_j)`. The same index
//! tuple, read additively into `Q/Z`, is the corresponding homomorphism
//! `G -> R/Z`; angles are kept as exact rationals and only converted to
//! complex numbers at evaluation boundaries.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BTreeSet;

use crate::group::{FiniteAbelianGroup, GroupElement, Subgroup};
use crate::matrix::complex_rank;
use crate::rational::{b1, fract, unit_circle, Rational};

/// A character of a finite abelian group, identified by its index tuple.
/// Read multiplicatively it maps into the unit circle; read additively it is
/// the homomorphism into `R/Z` with the same index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub index: GroupElement,
}

impl Character {
    /// Exact additive value in `Q/Z`: `sum a_j c_j / r_j` reduced mod 1.
    pub fn angle(&self, group: &FiniteAbelianGroup, x: &GroupElement) -> Rational {
        hom_angle(group, &self.index.residues, x)
    }

    pub fn eval(&self, group: &FiniteAbelianGroup, x: &GroupElement) -> Complex64 {
        unit_circle(&self.angle(group, x))
    }

    pub fn conjugate(&self, group: &FiniteAbelianGroup) -> Character {
        Character {
            index: group.neg(&self.index),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.index.residues.iter().all(|&c| c == 0)
    }

    /// Kernel as a sorted element list; equals the annihilator of the cyclic
    /// subgroup the character generates.
    pub fn kernel(&self, group: &FiniteAbelianGroup) -> Subgroup {
        let elements = group
            .elements()
            .into_iter()
            .filter(|x| self.angle(group, x).is_zero())
            .collect();
        Subgroup { elements }
    }
}

/// Additive evaluation of the homomorphism with index `c` at `x`.
pub fn hom_angle(group: &FiniteAbelianGroup, c: &[u64], x: &GroupElement) -> Rational {
    let mut acc = Rational::zero();
    for ((&cj, &aj), &rj) in c.iter().zip(&x.residues).zip(group.factors()) {
        if cj != 0 && aj != 0 {
            acc += Rational::new(BigInt::from(cj as u128 * aj as u128), BigInt::from(rj));
        }
    }
    fract(&acc)
}

/// All characters of `G`, one per index tuple, in lexicographic index order.
pub fn all_characters(group: &FiniteAbelianGroup) -> Vec<Character> {
    group
        .elements()
        .into_iter()
        .map(|index| Character { index })
        .collect()
}

/// Complex-valued function on a group, indexed in lexicographic element order.
#[derive(Clone, Debug)]
pub struct FunctionOnGroup {
    pub values: Vec<Complex64>,
}

impl FunctionOnGroup {
    pub fn from_fn(group: &FiniteAbelianGroup, f: impl Fn(&GroupElement) -> Complex64) -> Self {
        FunctionOnGroup {
            values: group.elements().iter().map(f).collect(),
        }
    }

    pub fn value(&self, group: &FiniteAbelianGroup, x: &GroupElement) -> Complex64 {
        self.values[group.index_of(x)]
    }
}

/// Normalized inner product `(1/|G|) sum f(g) conj(h(g))`.
pub fn inner_product(f: &FunctionOnGroup, h: &FunctionOnGroup) -> Complex64 {
    assert_eq!(f.values.len(), h.values.len());
    let n = f.values.len() as f64;
    f.values
        .iter()
        .zip(&h.values)
        .map(|(a, b)| a * b.conj())
        .sum::<Complex64>()
        / n
}

/// Fourier transform: `fhat(chi) = <f, chi>`, indexed by characters in
/// lexicographic index order.
pub fn fourier(group: &FiniteAbelianGroup, f: &FunctionOnGroup) -> FunctionOnGroup {
    assert_eq!(f.values.len(), group.order() as usize, "length mismatch");
    let elements = group.elements();
    let values = all_characters(group)
        .iter()
        .map(|chi| {
            let mut acc = Complex64::zero();
            for (g, fv) in elements.iter().zip(&f.values) {
                acc += fv * chi.eval(group, g).conj();
            }
            acc / group.order() as f64
        })
        .collect();
    FunctionOnGroup { values }
}

/// Annihilator of a subgroup: the characters trivial on it, returned as a
/// subgroup of the (self-dual) character group under index identification.
pub fn annihilator(group: &FiniteAbelianGroup, k: &Subgroup) -> crate::error::Result<Subgroup> {
    if !k.is_subgroup_of(group) {
        return Err(crate::error::Error::InvalidInput("not a subgroup".into()));
    }
    let elements = all_characters(group)
        .into_iter()
        .filter(|chi| k.elements.iter().all(|x| chi.angle(group, x).is_zero()))
        .map(|chi| chi.index)
        .collect();
    Ok(Subgroup { elements })
}

/// Poisson summation: `(1/|G|) sum_{k in K} f(k)` against
/// `(1/|K_perp|) sum_{chi in K_perp} fhat(chi)`, equal within `1e-10`.
pub fn poisson_check(group: &FiniteAbelianGroup, f: &FunctionOnGroup, k: &Subgroup) -> bool {
    let fhat = fourier(group, f);
    let kperp = annihilator(group, k).expect("annihilator of a non-subgroup");
    let lhs: Complex64 = k
        .elements
        .iter()
        .map(|x| f.value(group, x))
        .sum::<Complex64>()
        / group.order() as f64;
    let rhs: Complex64 = kperp
        .elements
        .iter()
        .map(|c| fhat.values[group.index_of(c)])
        .sum::<Complex64>()
        / kperp.elements.len() as f64;
    (lhs - rhs).norm() <= 1e-10
}

/// The deduplicated family of character kernels. Each kernel is the
/// annihilator of the cyclic subgroup generated by one character, so these
/// are exactly the subgroups with cyclic annihilator.
pub fn cyclic_annihilator_family(group: &FiniteAbelianGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    for chi in all_characters(group) {
        seen.insert(chi.kernel(group).elements);
    }
    seen.into_iter()
        .map(|elements| Subgroup { elements })
        .collect()
}

/// Whether the indicator functions of the cyclic-annihilator family are
/// linearly independent in `L^2(G)` (rank with pivot threshold `1e-9`).
pub fn indicator_independence(group: &FiniteAbelianGroup) -> bool {
    let family = cyclic_annihilator_family(group);
    let elements = group.elements();
    let rows: Vec<Vec<Complex64>> = family
        .iter()
        .map(|k| {
            elements
                .iter()
                .map(|g| Complex64::new(f64::from(u8::from(k.contains(g))), 0.0))
                .collect()
        })
        .collect();
    complex_rank(&rows, 1e-9) == family.len()
}

/// Exact values of `S_g` over the homomorphism group: `S_g(phi) = B1(phi(g))`
/// with `phi` running through index tuples in lexicographic order.
pub fn s_values(group: &FiniteAbelianGroup, g: &GroupElement) -> Vec<Rational> {
    group
        .elements()
        .iter()
        .map(|phi| b1(&hom_angle(group, &phi.residues, g)))
        .collect()
}

pub fn s_function(group: &FiniteAbelianGroup, g: &GroupElement) -> FunctionOnGroup {
    FunctionOnGroup {
        values: s_values(group, g)
            .iter()
            .map(|x| Complex64::new(crate::rational::to_f64(x), 0.0))
            .collect(),
    }
}

/// Dimension of the odd subspace of `L^2` of a group with `s` even invariant
/// factors: `(|G| - 2^s) / 2`.
pub fn odd_dimension(group: &FiniteAbelianGroup) -> usize {
    let order = group.order();
    let fixed = 1u64 << group.even_factor_count();
    ((order - fixed) / 2) as usize
}

/// Checks that the functions `S_g` span the odd subspace: the rank of the
/// `|G| x |G|` value matrix must equal `(|G| - 2^s) / 2`.
pub fn odd_span_check(group: &FiniteAbelianGroup) -> bool {
    let rows: Vec<Vec<Complex64>> = group
        .elements()
        .iter()
        .map(|g| {
            s_values(group, g)
                .iter()
                .map(|x| Complex64::new(crate::rational::to_f64(x), 0.0))
                .collect()
        })
        .collect();
    complex_rank(&rows, 1e-9) == odd_dimension(group)
}

/// Uniform random complex function with coordinates in `[-1, 1]`.
pub fn random_function(group: &FiniteAbelianGroup, rng: &mut impl rand::Rng) -> FunctionOnGroup {
    FunctionOnGroup {
        values: (0..group.order())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    }
}
