//! Rational lattices containing the integer lattice: quotient-group
//! construction, and exact enumeration of the lattice points in the
//! half-open unit cube.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer};

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::{snf, IntMatrix};
use crate::rational::{format_rational, fract, parse_rational, Rational};

/// Default cap on the number of enumerated cube points.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;

/// A lattice given by rational generators adjoined to the integer lattice.
#[derive(Clone, Debug)]
pub struct LatticeSpec {
    pub dim: usize,
    pub generators: Vec<Vec<Rational>>,
}

impl LatticeSpec {
    pub fn new(dim: usize, generators: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "generator {i} has length {} but the dimension is {dim}",
                    g.len()
                )));
            }
        }
        Ok(LatticeSpec { dim, generators })
    }

    /// Lattice generated by `Z^n` and the single point `(a_1/r, ..., a_n/r)`.
    pub fn from_single_generator(r: u64, a: &[u64]) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("denominator r must be positive".into()));
        }
        let g = a
            .iter()
            .map(|&ai| Rational::new(BigInt::from(ai), BigInt::from(r)))
            .collect();
        LatticeSpec::new(a.len(), vec![g])
    }
}

/// The classical three-dimensional family: `Z^3` plus `(a/r, (r-a)/r, 1/r)`.
pub fn white_lattice(r: u64, a: u64) -> Result<LatticeSpec> {
    if r == 0 || a == 0 || a >= r {
        return Err(Error::InvalidInput("need 0 < a < r".into()));
    }
    LatticeSpec::from_single_generator(r, &[a, r - a, 1])
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
struct LatticeSpecRepr {
    n: usize,
    generators: Vec<Vec<RationalRepr>>,
}

impl<'de> Deserialize<'de> for LatticeSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = LatticeSpecRepr::deserialize(de)?;
        let mut generators = Vec::with_capacity(repr.generators.len());
        for g in repr.generators {
            let mut row = Vec::with_capacity(g.len());
            for entry in g {
                let x = match entry {
                    RationalRepr::Int(v) => Rational::from_integer(BigInt::from(v)),
                    RationalRepr::Str(s) => parse_rational(&s).map_err(D::Error::custom)?,
                };
                row.push(x);
            }
            generators.push(row);
        }
        LatticeSpec::new(repr.n, generators).map_err(D::Error::custom)
    }
}

/// The quotient of a lattice by the integer lattice: invariant factors plus
/// the table of coordinate projections of the group generators.
///
/// Row `i` of `proj` holds the residues `p_{ij}` with the `i`-th coordinate
/// of the `j`-th group generator equal to `p_{ij} / r_j` modulo 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientGroup {
    pub group: FiniteAbelianGroup,
    pub dim: usize,
    pub proj: Vec<Vec<u64>>,
    pub trivial_coords: Vec<bool>,
}

impl QuotientGroup {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn factors(&self) -> &[u64] {
        self.group.factors()
    }

    /// The projection of coordinate `i` as a homomorphism index tuple.
    pub fn coord_hom(&self, i: usize) -> &[u64] {
        &self.proj[i]
    }

    pub fn coord_hom_neg(&self, i: usize) -> Vec<u64> {
        self.proj[i]
            .iter()
            .zip(self.group.factors())
            .map(|(&p, &r)| (r - p) % r)
            .collect()
    }

    /// Exact value of coordinate `i` of the point attached to `g`, in `[0, 1)`.
    pub fn coord_value(&self, g: &GroupElement, i: usize) -> Rational {
        let mut acc = Rational::zero();
        for (j, (&a, &r)) in g.residues.iter().zip(self.group.factors()).enumerate() {
            if self.proj[i][j] != 0 && a != 0 {
                acc += Rational::new(
                    BigInt::from(a as u128 * self.proj[i][j] as u128),
                    BigInt::from(r),
                );
            }
        }
        fract(&acc)
    }

    /// The group generators as cube points.
    pub fn generator_points(&self) -> Vec<CubePoint> {
        (0..self.group.rank())
            .map(|j| {
                let mut residues = vec![0u64; self.group.rank()];
                residues[j] = 1;
                self.point_of(&GroupElement::new(residues))
            })
            .collect()
    }

    pub fn point_of(&self, g: &GroupElement) -> CubePoint {
        let coords = (0..self.dim).map(|i| self.coord_value(g, i)).collect();
        CubePoint {
            coords,
            element: g.clone(),
        }
    }
}

/// A lattice point in the half-open unit cube, paired with its coset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubePoint {
    pub coords: Vec<Rational>,
    pub element: GroupElement,
}

impl CubePoint {
    pub fn support_size(&self) -> usize {
        self.coords.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn coord_sum(&self) -> Rational {
        self.coords.iter().sum()
    }

    pub fn coords_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }
}

fn big_to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| {
        Error::InvalidInput(format!(
            "quotient invariant factor {x} exceeds the machine range"
        ))
    })
}

/// Builds the quotient group of the lattice spanned by `Z^n` and the given
/// generators.
///
/// Denominators are cleared to a common `d`, a basis of the scaled lattice is
/// extracted from a Smith decomposition, and the invariant factors of the
/// quotient come from a second Smith decomposition of the inverse basis.
pub fn build_quotient(spec: &LatticeSpec) -> Result<QuotientGroup> {
    let n = spec.dim;
    // Reduce generators mod 1 and clear denominators.
    let reduced: Vec<Vec<Rational>> = spec
        .generators
        .iter()
        .map(|g| g.iter().map(fract).collect())
        .collect();
    let mut d = BigInt::one();
    for g in &reduced {
        for x in g {
            d = num_integer::lcm(d, x.denom().clone());
        }
    }
    let nontrivial: Vec<&Vec<Rational>> = reduced
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .collect();
    if nontrivial.is_empty() {
        return Ok(QuotientGroup {
            group: FiniteAbelianGroup::trivial(),
            dim: n,
            proj: vec![Vec::new(); n],
            trivial_coords: vec![true; n],
        });
    }

    // Columns of A generate d*Lambda: d times the unit vectors, then the
    // scaled generators.
    let k = nontrivial.len();
    let mut a = IntMatrix::zero(n, n + k);
    for i in 0..n {
        a[(i, i)] = d.clone();
    }
    for (j, g) in nontrivial.iter().enumerate() {
        for i in 0..n {
            let scaled = &g[i] * Rational::from_integer(d.clone());
            debug_assert!(scaled.denom().is_one());
            a[(i, n + j)] = scaled.numer().clone();
        }
    }

    // Basis of the column span: U^-1 * D, where U A V = [D | 0].
    let s = snf(&a);
    let u_inv = s.u.inverse_unimodular();
    let mut basis_scaled = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            basis_scaled[(i, j)] = &u_inv[(i, j)] * &s.d[(j, j)];
        }
    }

    // C = inverse of the basis of Lambda; integral because Z^n lies in Lambda.
    // basis = basis_scaled / d, so C = d * basis_scaled^-1.
    let inv = crate::matrix::rational_inverse(&basis_scaled.to_rational_rows())
        .expect("lattice basis is nonsingular");
    let dr = Rational::from_integer(d.clone());
    let c_rows: Vec<Vec<BigInt>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * &dr;
                    debug_assert!(y.denom().is_one(), "Z^n is not contained in the lattice");
                    y.numer().clone()
                })
                .collect()
        })
        .collect();
    let c = IntMatrix::from_bigint_rows(c_rows);

    // Invariant factors of Z^n / C Z^n.
    let s2 = snf(&c);
    let u2_inv = s2.u.inverse_unimodular();
    let diag = s2.diagonal();
    let factor_positions: Vec<usize> = (0..n).filter(|&i| diag[i] > BigInt::one()).collect();
    let factors: Vec<u64> = factor_positions
        .iter()
        .map(|&i| big_to_u64(&diag[i]))
        .collect::<Result<_>>()?;
    let group = if factors.is_empty() {
        FiniteAbelianGroup::trivial()
    } else {
        FiniteAbelianGroup::new(factors.clone())
    };

    // Generator cosets: columns of basis * U2^-1 at the factor positions.
    let mut proj = vec![vec![0u64; factors.len()]; n];
    for (j, &pos) in factor_positions.iter().enumerate() {
        let rj = BigInt::from(factors[j]);
        for i in 0..n {
            let mut acc = Rational::zero();
            for t in 0..n {
                let w = Rational::new(basis_scaled[(i, t)].clone(), d.clone());
                acc += w * Rational::from_integer(u2_inv[(t, pos)].clone());
            }
            let frac = fract(&acc);
            let scaled = frac * Rational::from_integer(rj.clone());
            debug_assert!(
                scaled.denom().is_one(),
                "projection is not a multiple of 1/r_j"
            );
            proj[i][j] = big_to_u64(scaled.numer())?;
        }
    }

    let trivial_coords = proj.iter().map(|row| row.iter().all(|&p| p == 0)).collect();
    Ok(QuotientGroup {
        group,
        dim: n,
        proj,
        trivial_coords,
    })
}

/// Enumerates the cube points in lexicographic order of the group element
/// tuples, refusing when the group order exceeds `cap`.
pub fn cube_points_capped(qg: &QuotientGroup, cap: u64) -> Result<Vec<CubePoint>> {
    let order = qg.order();
    if order > cap {
        return Err(Error::ResourceLimit { order, cap });
    }
    Ok(qg.group.elements().iter().map(|g| qg.point_of(g)).collect())
}

/// Enumerates the cube points under the default cap.
pub fn cube_points(qg: &QuotientGroup) -> Result<Vec<CubePoint>> {
    cube_points_capped(qg, DEFAULT_POINT_CAP)
}

/// The unique cube point whose coset is the negative of the given one.
/// Componentwise it is the map `x -> {-x}`.
pub fn negate_point(qg: &QuotientGroup, p: &CubePoint) -> CubePoint {
    qg.point_of(&qg.group.neg(&p.element))
}
