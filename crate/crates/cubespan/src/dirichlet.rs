//! Dirichlet characters with conductors, primitive characters and Gauss
//! sums; character tuples over a product ring `Z/r_1 + ... + Z/r_m`; the
//! twisted sums `w` and `v` built from the periodic Bernoulli values; the
//! antitriangular divisor ordering; and the rank and counting checks behind
//! the odd-span decomposition.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{
    divisor_count_tuple, divisor_tuples, divisors, euler_phi, factorize, gcd, lcm, mobius,
    mobius_tuple, rank_tuple, tuple_div, tuple_divides, tuple_mul,
};
use crate::error::{Error, Result};
use crate::matrix::complex_rank;
use crate::rational::{b1, fract, rat, unit_circle, Rational};

/// One cyclic component of a unit group `(Z/r)^x`, with its generator lifted
/// to be trivial in every other component.
#[derive(Clone, Debug)]
struct UnitPart {
    generator: u64,
    order: u64,
}

/// Multiplicative structure of `(Z/r)^x` as a product of explicit cyclic
/// parts, with a full discrete-log table built by brute force.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub modulus: u64,
    parts: Vec<UnitPart>,
    /// `dlog[u]` is the exponent tuple of the unit `u`, `None` off units.
    dlog: Vec<Option<Vec<u64>>>,
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn multiplicative_order(a: u64, modulus: u64) -> u64 {
    let mut x = a % modulus;
    let mut k = 1;
    while x != 1 {
        x = x * a % modulus;
        k += 1;
    }
    k
}

fn primitive_root(pk: u64, phi: u64) -> u64 {
    (2..pk)
        .find(|&g| gcd(g, pk) == 1 && multiplicative_order(g, pk) == phi)
        .expect("odd prime powers have a primitive root")
}

/// CRT lift: congruent to `a` mod `pk` and to 1 modulo the cofactor.
fn crt_lift(a: u64, pk: u64, modulus: u64) -> u64 {
    (0..modulus)
        .find(|&x| {
            x % pk == a % pk && gcd(x, modulus) == 1 && {
                let cof = modulus / pk;
                cof == 1 || x % cof == 1 % cof
            }
        })
        .expect("CRT lift exists")
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut parts = Vec::new();
        for (p, k) in factorize(modulus.max(1)) {
            let pk = p.pow(k);
            if p == 2 {
                if k == 2 {
                    parts.push(UnitPart {
                        generator: crt_lift(3, 4, modulus),
                        order: 2,
                    });
                } else if k >= 3 {
                    parts.push(UnitPart {
                        generator: crt_lift(pk - 1, pk, modulus),
                        order: 2,
                    });
                    parts.push(UnitPart {
                        generator: crt_lift(5, pk, modulus),
                        order: pk / 4,
                    });
                }
            } else {
                let phi = pk / p * (p - 1);
                let g = primitive_root(pk, phi);
                parts.push(UnitPart {
                    generator: crt_lift(g, pk, modulus),
                    order: phi,
                });
            }
        }

        // Brute-force discrete logs: walk every exponent tuple once.
        let mut dlog: Vec<Option<Vec<u64>>> = vec![None; modulus as usize];
        let total: u64 = parts.iter().map(|p| p.order).product();
        let mut exps = vec![0u64; parts.len()];
        let mut count = 0u64;
        loop {
            let mut u = 1 % modulus;
            for (part, &e) in parts.iter().zip(&exps) {
                u = u * pow_mod(part.generator, e, modulus) % modulus.max(1);
            }
            let slot = &mut dlog[u as usize];
            assert!(slot.is_none(), "unit group parts are not independent");
            *slot = Some(exps.clone());
            count += 1;
            let mut i = parts.len();
            loop {
                if i == 0 {
                    assert_eq!(count, total);
                    assert_eq!(count, euler_phi(modulus), "discrete-log table incomplete");
                    return UnitGroup {
                        modulus,
                        parts,
                        dlog,
                    };
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < parts[i].order {
                    break;
                }
                exps[i] = 0;
            }
        }
    }

    pub fn part_orders(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.order).collect()
    }

    pub fn unit_count(&self) -> u64 {
        self.parts.iter().map(|p| p.order).product()
    }
}

/// A Dirichlet character: completely multiplicative, periodic with its
/// modulus, supported on the residues coprime to it. Values are stored as
/// exact angles (the value is `e(angle)`), converted to complex numbers only
/// when evaluated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// Index against the cyclic parts of the unit group.
    pub index: Vec<u64>,
    angles: Vec<Option<Rational>>,
}

impl DirichletCharacter {
    fn from_index(units: &UnitGroup, index: Vec<u64>) -> Self {
        let r = units.modulus;
        let orders = units.part_orders();
        let angles = (0..r)
            .map(|n| {
                units.dlog[n as usize].as_ref().map(|exps| {
                    let mut acc = Rational::zero();
                    for ((&e, &c), &o) in exps.iter().zip(&index).zip(&orders) {
                        if e != 0 && c != 0 {
                            acc += rat((e * c) as i64, o as i64);
                        }
                    }
                    fract(&acc)
                })
            })
            .collect();
        DirichletCharacter {
            modulus: r,
            index,
            angles,
        }
    }

    /// Exact angle at `n`, reduced modulo the modulus; `None` off the support.
    pub fn angle(&self, n: i64) -> Option<Rational> {
        let r = self.modulus as i64;
        let n = n.rem_euclid(r) as usize;
        self.angles[n].clone()
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        match self.angle(n) {
            Some(a) => unit_circle(&a),
            None => Complex64::zero(),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.index.iter().all(|&c| c == 0)
    }

    /// Parity: value at `-1`, always `1` or `-1`.
    pub fn is_odd(&self) -> bool {
        let a = self.angle(-1).expect("-1 is always a unit");
        a == rat(1, 2)
    }
}

/// All characters modulo `r`, in lexicographic index order; the principal
/// character comes first.
pub fn characters_mod(r: u64) -> Vec<DirichletCharacter> {
    let units = UnitGroup::new(r);
    let orders = units.part_orders();
    let mut out = Vec::with_capacity(units.unit_count() as usize);
    let mut index = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::from_index(&units, index.clone()));
        let mut i = orders.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            index[i] += 1;
            if index[i] < orders[i] {
                break;
            }
            index[i] = 0;
        }
    }
}

/// Conductor and the inducing primitive character.
#[derive(Clone, Debug)]
pub struct PrimitiveData {
    pub conductor: u64,
    pub primitive: DirichletCharacter,
}

/// The least divisor `f` of the modulus such that the character is trivial
/// on every unit congruent to 1 mod `f`.
pub fn conductor(chi: &DirichletCharacter) -> u64 {
    let r = chi.modulus;
    divisors(r)
        .into_iter()
        .find(|&f| {
            (0..r)
                .filter(|&a| a % f == 1 % f && gcd(a, r) == 1)
                .all(|a| chi.angle(a as i64) == Some(Rational::zero()))
        })
        .expect("the modulus itself always works")
}

/// Computes the conductor and constructs the unique primitive character that
/// agrees with `chi` on their mutual support.
pub fn conductor_and_primitive(chi: &DirichletCharacter) -> PrimitiveData {
    let r = chi.modulus;
    let f = conductor(chi);
    // Value of the primitive character at t: chi at any unit of r congruent
    // to t mod f. Such a lift exists among t, t + f, ..., t + (r/f - 1) f.
    let lift = |t: u64| -> u64 {
        (0..r / f)
            .map(|j| t + j * f)
            .find(|&a| gcd(a, r) == 1)
            .expect("coprime lift exists")
    };
    let primitive = characters_mod(f)
        .into_iter()
        .find(|cand| {
            (0..f)
                .filter(|&t| gcd(t, f) == 1)
                .all(|t| cand.angle(t as i64) == chi.angle(lift(t) as i64))
        })
        .expect("induced character exists at the conductor");
    // They agree wherever both are supported.
    debug_assert!((0..r)
        .filter(|&a| gcd(a, r) == 1)
        .all(|a| { primitive.angle(a as i64) == chi.angle(a as i64) || gcd(a, f) != 1 }));
    PrimitiveData {
        conductor: f,
        primitive,
    }
}

/// Gauss sum of a primitive character: `sum over units t of chi(t) e(t/f)`.
/// Rejects imprimitive input.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    let f = chi.modulus;
    if conductor(chi) != f {
        return Err(Error::InvalidInput(format!(
            "character mod {f} is not primitive (conductor {})",
            conductor(chi)
        )));
    }
    let mut acc = Complex64::zero();
    for t in 0..f {
        if let Some(a) = chi.angle(t as i64) {
            acc += unit_circle(&(a + rat(t as i64, f as i64)));
        }
    }
    Ok(acc)
}

/// The product ring `Z/r_1 + ... + Z/r_m` with componentwise multiplication.
/// Factors need not form a divisibility chain; factors equal to 1 are
/// allowed and contribute a zero ring component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingR {
    pub factors: Vec<u64>,
}

impl RingR {
    pub fn new(factors: Vec<u64>) -> Self {
        assert!(!factors.is_empty() && factors.iter().all(|&r| r >= 1));
        RingR { factors }
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn unit_count(&self) -> u64 {
        self.factors.iter().map(|&r| euler_phi(r)).product()
    }

    pub fn even_factor_count(&self) -> u32 {
        self.factors.iter().filter(|&&r| r % 2 == 0).count() as u32
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.factors.len()];
        loop {
            out.push(cur.clone());
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn units(&self) -> Vec<Vec<u64>> {
        self.elements()
            .into_iter()
            .filter(|a| a.iter().zip(&self.factors).all(|(&x, &r)| gcd(x, r) == 1))
            .collect()
    }

    pub fn index_of(&self, a: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&x, &r) in a.iter().zip(&self.factors) {
            idx = idx * r as usize + x as usize;
        }
        idx
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &r)| x * y % r)
            .collect()
    }

    /// Image of an integer tuple under reduction into the ring.
    pub fn canonical(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(&x, &r)| x % r).collect()
    }

    pub fn neg_one(&self) -> Vec<u64> {
        self.factors.iter().map(|&r| (r - 1) % r).collect()
    }

    /// `B1` of the bilinear angle `sum a_i c_i / r_i`, exactly.
    pub fn s_a(&self, a: &[u64], c: &[u64]) -> Rational {
        let mut acc = Rational::zero();
        for ((&x, &y), &r) in a.iter().zip(c).zip(&self.factors) {
            if x != 0 && y != 0 {
                acc += Rational::new(BigInt::from(x * y), BigInt::from(r));
            }
        }
        b1(&acc)
    }

    fn lcm_factor(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &r| lcm(acc, r))
    }

    /// `B1(sum a_i c_i / r_i)` as a float, through exact integer reduction.
    fn s_a_f64(&self, a: &[u64], c: &[u64], l: u64) -> f64 {
        let mut num = 0u64;
        for ((&x, &y), &r) in a.iter().zip(c).zip(&self.factors) {
            num = (num + x * y % r * (l / r)) % l;
        }
        if num == 0 {
            0.0
        } else {
            num as f64 / l as f64 - 0.5
        }
    }
}

/// A character of the unit group of a product ring: one Dirichlet character
/// per factor, evaluated as the product of component values.
#[derive(Clone, Debug)]
pub struct TupleCharacter {
    pub components: Vec<DirichletCharacter>,
}

impl TupleCharacter {
    pub fn eval(&self, a: &[u64]) -> Complex64 {
        match self.angle(a) {
            Some(angle) => unit_circle(&angle),
            None => Complex64::zero(),
        }
    }

    /// Exact angle of the product value, `None` when some component vanishes.
    pub fn angle(&self, a: &[u64]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (chi, &x) in self.components.iter().zip(a) {
            acc += chi.angle(x as i64)?;
        }
        Some(fract(&acc))
    }

    /// Parity at `(-1, ..., -1)`.
    pub fn is_odd(&self, ring: &RingR) -> bool {
        self.angle(&ring.neg_one()).expect("-1 is a unit") == rat(1, 2)
    }

    pub fn conductors(&self) -> Vec<u64> {
        self.components.iter().map(conductor).collect()
    }

    pub fn primitive_components(&self) -> Vec<PrimitiveData> {
        self.components
            .iter()
            .map(conductor_and_primitive)
            .collect()
    }

    /// `q = (r_1 / f_1, ..., r_m / f_m)`.
    pub fn q_tuple(&self, ring: &RingR) -> Vec<u64> {
        ring.factors
            .iter()
            .zip(self.conductors())
            .map(|(&r, f)| r / f)
            .collect()
    }

    /// Product of the primitive component values at an integer tuple.
    pub fn primitive_eval(&self, prim: &[PrimitiveData], a: &[u64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (p, &x) in prim.iter().zip(a) {
            acc *= p.primitive.eval(x as i64);
        }
        acc
    }

    /// Values over the unit list of the ring, cached for the inner loops.
    pub fn unit_values(&self, units: &[Vec<u64>]) -> Vec<Complex64> {
        units.iter().map(|u| self.eval(u)).collect()
    }
}

/// All characters of the unit group of the ring, as component tuples, in
/// lexicographic component order.
pub fn tuple_characters(ring: &RingR) -> Vec<TupleCharacter> {
    let per_factor: Vec<Vec<DirichletCharacter>> =
        ring.factors.iter().map(|&r| characters_mod(r)).collect();
    let mut out: Vec<Vec<DirichletCharacter>> = vec![Vec::new()];
    for chars in &per_factor {
        let mut next = Vec::with_capacity(out.len() * chars.len());
        for prefix in &out {
            for chi in chars {
                let mut t = prefix.clone();
                t.push(chi.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|components| TupleCharacter { components })
        .collect()
}

pub fn odd_characters(ring: &RingR) -> Vec<TupleCharacter> {
    tuple_characters(ring)
        .into_iter()
        .filter(|chi| chi.is_odd(ring))
        .collect()
}

/// Projection of `w` onto the eigenspace of the unit-group action with
/// eigenvalue `chi`: the average of `conj(chi(b)) (b . w)` over units, where
/// `(b . w)(a) = w(b a)`.
pub fn eigen_project(ring: &RingR, chi: &TupleCharacter, w: &[Complex64]) -> Vec<Complex64> {
    let elements = ring.elements();
    let units = ring.units();
    let values = chi.unit_values(&units);
    let scale = 1.0 / units.len() as f64;
    elements
        .iter()
        .map(|a| {
            let mut acc = Complex64::zero();
            for (b, v) in units.iter().zip(&values) {
                acc += v.conj() * w[ring.index_of(&ring.mul(b, a))];
            }
            acc * scale
        })
        .collect()
}

/// `w_{chi,a}(c) = sum over units b of chi(b) B1(theta(a b c))`, the image of
/// `a` taken in the ring.
pub fn w_chi(ring: &RingR, chi: &TupleCharacter, a: &[u64], c: &[u64]) -> Complex64 {
    let units = ring.units();
    let values = chi.unit_values(&units);
    w_chi_with(
        ring,
        &units,
        &values,
        &ring.canonical(a),
        &ring.canonical(c),
    )
}

fn w_chi_with(
    ring: &RingR,
    units: &[Vec<u64>],
    unit_values: &[Complex64],
    a: &[u64],
    c: &[u64],
) -> Complex64 {
    let l = ring.lcm_factor();
    let mut acc = Complex64::zero();
    for (b, v) in units.iter().zip(unit_values) {
        let ab = ring.mul(a, b);
        let s = ring.s_a_f64(&ab, c, l);
        if s != 0.0 {
            acc += v * s;
        }
    }
    acc
}

/// Truncated series representation of `w_{chi,a}(c)` for odd `chi`:
/// `(i/pi) sum_{k=1..K} (1/k) prod_i conj(chi_i*)(k a_i c_i / beta_i)
/// F_i(beta_i)` with `beta_i = gcd(r_i, k a_i c_i)`, where `F_i(beta)`
/// vanishes unless `beta | q_i` and otherwise equals
/// `chi_i*(q_i/beta) mu(q_i/beta) phi(r_i) tau(chi_i*) / phi(r_i / beta)`.
/// Terms are summed in increasing `k`.
pub fn series_w(ring: &RingR, chi: &TupleCharacter, a: &[u64], c: &[u64], k_max: u64) -> Complex64 {
    assert!(k_max >= 1);
    let prim = chi.primitive_components();
    let m = ring.factors.len();
    let a = ring.canonical(a);
    let c = ring.canonical(c);

    // Per component, the k-dependent factor is periodic with period r_i f_i.
    let mut periods = Vec::with_capacity(m);
    let mut tables: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for i in 0..m {
        let r = ring.factors[i];
        let f = prim[i].conductor;
        let q = r / f;
        let tau = gauss_sum(&prim[i].primitive).expect("component is primitive");
        let phi_r = euler_phi(r) as f64;
        let ac = a[i] * c[i];
        let period = r * f;
        let table: Vec<Complex64> = (0..period)
            .map(|k| {
                let x = k * ac;
                let beta = gcd(r, x);
                if q % beta != 0 {
                    return Complex64::zero();
                }
                let fq = q / beta;
                let mob = mobius(fq);
                if mob == 0 {
                    return Complex64::zero();
                }
                let f_val = prim[i].primitive.eval(fq as i64)
                    * (mob as f64 * phi_r / euler_phi(r / beta) as f64)
                    * tau;
                prim[i].primitive.eval((x / beta) as i64).conj() * f_val
            })
            .collect();
        periods.push(period as usize);
        tables.push(table);
    }

    let mut acc = Complex64::zero();
    for k in 1..=k_max {
        let mut term = Complex64::new(1.0, 0.0);
        for i in 0..m {
            term *= tables[i][k as usize % periods[i]];
            if term.norm_sqr() == 0.0 {
                break;
            }
        }
        if term.norm_sqr() != 0.0 {
            acc += term / k as f64;
        }
    }
    acc * Complex64::new(0.0, 1.0 / std::f64::consts::PI)
}

/// `v_{chi,a}(c) = sum over d | a of mu(d) conj(chi*)(d) w_{chi,a/d}(c)`,
/// defined for divisor tuples `a` of `q`; rejects `a` not dividing `q`.
pub fn v_chi(ring: &RingR, chi: &TupleCharacter, a: &[u64], c: &[u64]) -> Result<Complex64> {
    let q = chi.q_tuple(ring);
    if !tuple_divides(a, &q) {
        return Err(Error::InvalidInput(format!(
            "{a:?} does not divide q = {q:?}"
        )));
    }
    let prim = chi.primitive_components();
    let units = ring.units();
    let values = chi.unit_values(&units);
    let cc = ring.canonical(c);
    let mut acc = Complex64::zero();
    for d in divisor_tuples(a) {
        let mob = mobius_tuple(&d);
        if mob == 0 {
            continue;
        }
        let weight = chi.primitive_eval(&prim, &d).conj() * mob as f64;
        if weight.norm_sqr() == 0.0 {
            continue;
        }
        let rest = ring.canonical(&tuple_div(a, &d));
        acc += weight * w_chi_with(ring, &units, &values, &rest, &cc);
    }
    Ok(acc)
}

/// A linear ordering of the divisor tuples of `q` such that later tuples
/// never divide earlier ones and opposite positions multiply to `q`.
/// Built from the rank function (total prime multiplicity): ranks below the
/// middle sorted ascending, the mirror image above, and the middle level
/// arranged so chosen pair representatives precede their complements.
pub fn divisor_ordering(q: &[u64]) -> Vec<Vec<u64>> {
    assert!(q.iter().all(|&x| x >= 1));
    let all = divisor_tuples(q);
    let total_rank = rank_tuple(q);
    let mut lower: Vec<Vec<u64>> = Vec::new();
    let mut middle: Vec<Vec<u64>> = Vec::new();
    for t in &all {
        let r = 2 * rank_tuple(t);
        if r < total_rank {
            lower.push(t.clone());
        } else if r == total_rank {
            middle.push(t.clone());
        }
    }
    lower.sort_by_key(|t| (rank_tuple(t), t.clone()));

    // Middle level (present only when the total rank is even): pair each
    // element with its complement, keep the lexicographically smaller one of
    // each pair first, and put the self-paired element (if any) in between.
    let mut mid_reps: Vec<Vec<u64>> = Vec::new();
    let mut mid_center: Option<Vec<u64>> = None;
    for t in &middle {
        let comp = tuple_div(q, t);
        if *t == comp {
            mid_center = Some(t.clone());
        } else if *t < comp {
            mid_reps.push(t.clone());
        }
    }
    mid_reps.sort();

    let mut out = lower.clone();
    out.extend(mid_reps.iter().cloned());
    if let Some(c) = mid_center {
        out.push(c);
    }
    out.extend(mid_reps.iter().rev().map(|t| tuple_div(q, t)));
    out.extend(lower.iter().rev().map(|t| tuple_div(q, t)));
    debug_assert_eq!(out.len(), all.len());
    out
}

/// The matrix `(v_{chi,a}(c))` over the antitriangular divisor ordering.
/// The underlying `w` values are computed once per (divisor, column) pair
/// and the Moebius combinations assembled from the shared table.
pub fn v_matrix(ring: &RingR, chi: &TupleCharacter) -> (Vec<Vec<u64>>, Vec<Vec<Complex64>>) {
    let q = chi.q_tuple(ring);
    let ordering = divisor_ordering(&q);
    let tuples = divisor_tuples(&q);
    let prim = chi.primitive_components();
    let units = ring.units();
    let values = chi.unit_values(&units);

    let tuple_index = |t: &[u64]| -> usize {
        tuples
            .binary_search_by(|x| x.as_slice().cmp(t))
            .expect("divisor of q")
    };
    let w_table: Vec<Vec<Complex64>> = tuples
        .iter()
        .map(|a| {
            let aa = ring.canonical(a);
            ordering
                .iter()
                .map(|c| w_chi_with(ring, &units, &values, &aa, &ring.canonical(c)))
                .collect()
        })
        .collect();

    let matrix = ordering
        .iter()
        .map(|a| {
            let mut row = vec![Complex64::zero(); ordering.len()];
            for d in divisor_tuples(a) {
                let mob = mobius_tuple(&d);
                if mob == 0 {
                    continue;
                }
                let weight = chi.primitive_eval(&prim, &d).conj() * mob as f64;
                if weight.norm_sqr() == 0.0 {
                    continue;
                }
                let w_row = &w_table[tuple_index(&tuple_div(a, &d))];
                for (out, w) in row.iter_mut().zip(w_row) {
                    *out += weight * w;
                }
            }
            row
        })
        .collect();
    (ordering, matrix)
}

/// Zero/nonzero pattern and rank of the `v`-matrix for an odd character:
/// entries with `a c` not dividing `q` have magnitude below `1e-9`, entries
/// with `a c = q` have magnitude above `1e-6`, and the rank is full.
pub fn v_matrix_check(ring: &RingR, chi: &TupleCharacter) -> bool {
    let q = chi.q_tuple(ring);
    let (ordering, matrix) = v_matrix(ring, chi);
    let n = ordering.len();
    for (i, a) in ordering.iter().enumerate() {
        for (j, c) in ordering.iter().enumerate() {
            let prod = tuple_mul(a, c);
            let value = matrix[i][j].norm();
            if !tuple_divides(&prod, &q) && value >= 1e-9 {
                return false;
            }
            if prod == q && value <= 1e-6 {
                return false;
            }
        }
    }
    complex_rank(&matrix, 1e-9) == n
}

/// The functions `w_{chi,a}` over divisor tuples `a` of `q` are linearly
/// independent: the `d(q) x |R|` value matrix has full row rank.
pub fn w_independence_check(ring: &RingR, chi: &TupleCharacter) -> bool {
    let q = chi.q_tuple(ring);
    let tuples = divisor_tuples(&q);
    let units = ring.units();
    let values = chi.unit_values(&units);
    let elements = ring.elements();
    let rows: Vec<Vec<Complex64>> = tuples
        .iter()
        .map(|a| {
            let aa = ring.canonical(a);
            elements
                .iter()
                .map(|c| w_chi_with(ring, &units, &values, &aa, c))
                .collect()
        })
        .collect();
    complex_rank(&rows, 1e-9) == tuples.len()
}

/// Dimension of the odd subspace of functions on the ring.
pub fn odd_dimension(ring: &RingR) -> u64 {
    (ring.order() - (1u64 << ring.even_factor_count())) / 2
}

/// Counting identity plus spanning rank: the total `d(q_chi)` over odd
/// characters equals `(|R| - 2^s) / 2`, and the `S_a` value matrix attains
/// that rank.
pub fn basis_count_check(ring: &RingR) -> bool {
    let expected = odd_dimension(ring);
    let total: u64 = odd_characters(ring)
        .iter()
        .map(|chi| divisor_count_tuple(&chi.q_tuple(ring)))
        .sum();
    if total != expected {
        return false;
    }
    let elements = ring.elements();
    let l = ring.lcm_factor();
    let rows: Vec<Vec<Complex64>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|c| Complex64::new(ring.s_a_f64(a, c, l), 0.0))
                .collect()
        })
        .collect();
    complex_rank(&rows, 1e-9) == expected as usize
}
