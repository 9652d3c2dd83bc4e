//! Verification sweeps: exhaustive character-theory checks over small
//! abelian groups, the Dirichlet sweeps over product rings, and randomized
//! lattice instances comparing the class formulas against brute force.
//!
//! Every suite is deterministic given its bounds and seed; failures carry
//! the minimal parameters needed to reproduce them.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chars::{
    all_characters, annihilator, indicator_independence, inner_product, odd_span_check,
    poisson_check, random_function, s_values, FunctionOnGroup,
};
use crate::dirichlet::{
    characters_mod, conductor, eigen_project, gauss_sum, odd_characters, odd_dimension, series_w,
    tuple_characters, v_matrix_check, w_chi, w_independence_check, RingR,
};
use crate::group::{abelian_groups_up_to, FiniteAbelianGroup};
use crate::lattice::{build_quotient, cube_points, negate_point, LatticeSpec};
use crate::rational::{rat, Rational};
use crate::span::{
    bruteforce_span_dimension, check_pairing_identity, sebo_check, span_dimension,
    vanishing_spaces_agree,
};

/// Result of one verification sweep. Wall time is reported in the
/// human-readable rendering only, keeping the JSON output byte-stable.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct SuiteRun {
    name: String,
    cases: usize,
    failures: Vec<String>,
    start: std::time::Instant,
}

impl SuiteRun {
    fn new(name: &str) -> Self {
        SuiteRun {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
            start: std::time::Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self) -> VerifyReport {
        VerifyReport {
            suite: self.name,
            cases: self.cases,
            failures: self.failures,
            wall_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// Character-theory sweep: orthonormality, annihilator duality, Poisson
/// summation, indicator independence, and the odd spanning rank, over every
/// abelian group of order up to `max_order` (annihilator and Poisson checks
/// capped at order 24).
pub fn chars_suite(max_order: u64, seed: u64) -> VerifyReport {
    let mut run = SuiteRun::new("chars");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for group in abelian_groups_up_to(max_order) {
        let label = || format!("group {:?}", group.factors());
        run.check(gram_is_identity(&group), || {
            format!("{}: character gram", label())
        });
        run.check(indicator_independence(&group), || {
            format!("{}: cyclic-annihilator indicators dependent", label())
        });
        run.check(odd_span_check(&group), || {
            format!("{}: odd span rank", label())
        });
        run.check(s_oddness_exact(&group), || {
            format!("{}: S_g not odd", label())
        });
    }

    for group in abelian_groups_up_to(max_order.min(24)) {
        for k in group.all_subgroups() {
            let kp = match annihilator(&group, &k) {
                Ok(kp) => kp,
                Err(_) => {
                    run.check(false, || {
                        format!("group {:?}: annihilator failed", group.factors())
                    });
                    continue;
                }
            };
            run.check(k.order() * kp.order() == group.order(), || {
                format!(
                    "group {:?}, |K| = {}: |K||K^perp| != |G|",
                    group.factors(),
                    k.order()
                )
            });
            let kpp = annihilator(&group, &kp).expect("annihilator of a subgroup");
            run.check(kpp == k, || {
                format!(
                    "group {:?}, |K| = {}: double annihilator",
                    group.factors(),
                    k.order()
                )
            });
            for _ in 0..20 {
                let f = random_function(&group, &mut rng);
                run.check(poisson_check(&group, &f, &k), || {
                    format!(
                        "group {:?}, |K| = {}: Poisson identity",
                        group.factors(),
                        k.order()
                    )
                });
            }
        }
    }

    run.finish()
}

fn gram_is_identity(group: &FiniteAbelianGroup) -> bool {
    let chars = all_characters(group);
    let fns: Vec<FunctionOnGroup> = chars
        .iter()
        .map(|c| FunctionOnGroup::from_fn(group, |x| c.eval(group, x)))
        .collect();
    for (i, f) in fns.iter().enumerate() {
        for (j, h) in fns.iter().enumerate() {
            let expected = f64::from(u8::from(i == j));
            if (inner_product(f, h) - expected).norm() > 1e-10 {
                return false;
            }
        }
    }
    true
}

fn s_oddness_exact(group: &FiniteAbelianGroup) -> bool {
    let phis = group.elements();
    group.elements().iter().all(|g| {
        let vals = s_values(group, g);
        phis.iter().enumerate().all(|(i, phi)| {
            let j = group.index_of(&group.neg(phi));
            (vals[i].clone() + vals[j].clone()).numer() == &num_bigint::BigInt::from(0)
        })
    })
}

/// All product rings with at most two factors and componentwise lcm bounded
/// by `max_lcm`, single-factor rings first.
pub fn ring_sweep(max_lcm: u64) -> Vec<RingR> {
    let mut out = Vec::new();
    for r in 1..=max_lcm {
        out.push(RingR::new(vec![r]));
    }
    for r1 in 1..=max_lcm {
        for r2 in 1..=max_lcm {
            if crate::arith::lcm(r1, r2) <= max_lcm {
                out.push(RingR::new(vec![r1, r2]));
            }
        }
    }
    out
}

/// Dirichlet sweep: multiplicativity, conductor minimality, Gauss sum
/// magnitudes up to `max_modulus`; then, over product rings with `m <= 2`
/// and lcm up to `max_modulus`: the odd-character counting identity, the
/// v-matrix zero/nonzero/rank patterns, eigenspace decomposition recovery,
/// and the truncated series against the exact `w` on rings of order up to 10.
pub fn dirichlet_suite(max_modulus: u64, seed: u64) -> VerifyReport {
    let mut run = SuiteRun::new("dirichlet");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for r in 1..=max_modulus {
        for (ci, chi) in characters_mod(r).into_iter().enumerate() {
            run.check(multiplicative_on_support(&chi), || {
                format!("chi_{ci} mod {r}: multiplicativity")
            });
            run.check(conductor_is_minimal(&chi), || {
                format!("chi_{ci} mod {r}: conductor minimality")
            });
            if conductor(&chi) == r {
                let tau = gauss_sum(&chi).expect("primitive character");
                run.check(
                    (tau.norm_sqr() - r as f64).abs() < 1e-9 && tau.norm() > 0.0,
                    || format!("chi_{ci} mod {r}: Gauss sum magnitude"),
                );
            }
        }
    }

    for ring in ring_sweep(max_modulus) {
        let odd = odd_characters(&ring);
        let counted: u64 = odd
            .iter()
            .map(|chi| crate::arith::divisor_count_tuple(&chi.q_tuple(&ring)))
            .sum();
        run.check(counted == odd_dimension(&ring), || {
            format!(
                "ring {:?}: odd character count {counted} != {}",
                ring.factors,
                odd_dimension(&ring)
            )
        });
        for (ci, chi) in odd.iter().enumerate() {
            run.check(v_matrix_check(&ring, chi), || {
                format!("ring {:?}, odd chi #{ci}: v-matrix pattern", ring.factors)
            });
        }
        if ring.order() <= 30 {
            run.check(eigen_decomposition_recovers(&ring, &mut rng), || {
                format!("ring {:?}: eigen decomposition", ring.factors)
            });
        }
        if ring.order() <= 10 {
            for (ci, chi) in odd.iter().enumerate() {
                let q = chi.q_tuple(&ring);
                for a in crate::arith::divisor_tuples(&q) {
                    for c in ring.elements() {
                        let exact = w_chi(&ring, chi, &a, &c);
                        let approx = series_w(&ring, chi, &a, &c, 100_000);
                        run.check((exact - approx).norm() < 1e-3, || {
                            format!(
                                "ring {:?}, odd chi #{ci}, a {:?}, c {:?}: series error {}",
                                ring.factors,
                                a,
                                c,
                                (exact - approx).norm()
                            )
                        });
                    }
                }
            }
        }
        if ring.order() <= 40 {
            for (ci, chi) in odd.iter().enumerate() {
                run.check(w_independence_check(&ring, chi), || {
                    format!("ring {:?}, odd chi #{ci}: w rows dependent", ring.factors)
                });
            }
        }
    }

    run.finish()
}

fn multiplicative_on_support(chi: &crate::dirichlet::DirichletCharacter) -> bool {
    let r = chi.modulus;
    for a in 0..r {
        for b in 0..r {
            let prod = chi.angle((a * b) as i64);
            match (chi.angle(a as i64), chi.angle(b as i64)) {
                (Some(x), Some(y)) => {
                    if prod != Some(crate::rational::fract(&(x + y))) {
                        return false;
                    }
                }
                _ => {
                    if prod.is_some() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn conductor_is_minimal(chi: &crate::dirichlet::DirichletCharacter) -> bool {
    let r = chi.modulus;
    let f = conductor(chi);
    crate::arith::divisors(f)
        .into_iter()
        .filter(|&fp| fp != f)
        .all(|fp| {
            (0..r)
                .filter(|&a| a % fp == 1 % fp && crate::arith::gcd(a, r) == 1)
                .any(|a| chi.angle(a as i64) != Some(Rational::from_integer(0.into())))
        })
}

fn eigen_decomposition_recovers(ring: &RingR, rng: &mut ChaCha8Rng) -> bool {
    let n = ring.order() as usize;
    let w: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut sum = vec![Complex64::new(0.0, 0.0); n];
    for chi in tuple_characters(ring) {
        for (s, v) in sum.iter_mut().zip(eigen_project(ring, &chi, &w)) {
            *s += v;
        }
    }
    ring.units().iter().all(|u| {
        let i = ring.index_of(u);
        (sum[i] - w[i]).norm() < 1e-9
    })
}

/// Configuration of the randomized lattice suite.
#[derive(Clone, Copy, Debug)]
pub struct LatticeSuiteConfig {
    pub instances: usize,
    pub max_n: usize,
    pub max_order: u64,
    pub seed: u64,
}

impl Default for LatticeSuiteConfig {
    fn default() -> Self {
        LatticeSuiteConfig {
            instances: 200,
            max_n: 6,
            max_order: 200,
            seed: 42,
        }
    }
}

/// Draws a random lattice: one or two generators with moduli up to 20 and
/// uniform residue tables, resampled until the quotient order fits.
pub fn random_lattice(rng: &mut ChaCha8Rng, max_n: usize, max_order: u64) -> LatticeSpec {
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(1..=2usize);
        let generators: Vec<Vec<Rational>> = (0..m)
            .map(|_| {
                let r = rng.gen_range(2..=20u64);
                (0..n)
                    .map(|_| rat(rng.gen_range(0..r) as i64, r as i64))
                    .collect()
            })
            .collect();
        let spec = LatticeSpec::new(n, generators).expect("valid dimensions");
        let qg = build_quotient(&spec).expect("valid spec");
        if qg.order() <= max_order {
            return spec;
        }
    }
}

/// Randomized formula-versus-oracle sweep: the relation-system nullspace
/// matches the point-matrix nullspace, the class dimension formula matches
/// the exact point rank, and the negation pairing satisfies the support-sum
/// identity, on every instance.
pub fn lattice_suite(cfg: LatticeSuiteConfig) -> VerifyReport {
    let mut run = SuiteRun::new("lattice");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for idx in 0..cfg.instances {
        let spec = random_lattice(&mut rng, cfg.max_n, cfg.max_order);
        let label = || {
            let gens: Vec<Vec<String>> = spec
                .generators
                .iter()
                .map(|g| g.iter().map(crate::rational::format_rational).collect())
                .collect();
            format!("instance {idx} (n = {}, generators = {:?})", spec.dim, gens)
        };
        let qg = build_quotient(&spec).expect("valid spec");

        let agree = vanishing_spaces_agree(&qg).expect("within cap");
        run.check(agree, || format!("{}: nullspaces differ", label()));

        let formula_dim = span_dimension(&qg);
        let brute_dim = bruteforce_span_dimension(&qg).expect("within cap");
        run.check(formula_dim == brute_dim, || {
            format!("{}: dimension {formula_dim} != rank {brute_dim}", label())
        });

        let pts = cube_points(&qg).expect("within cap");
        let sums_ok = pts.iter().all(|p| {
            let m = negate_point(&qg, p);
            let total = p.coord_sum() + m.coord_sum();
            total == rat(p.support_size() as i64, 1) && p.support_size() == m.support_size()
        });
        run.check(sums_ok, || {
            format!("{}: negation-pair sum identity", label())
        });
    }
    run.finish()
}

/// Pairing-identity sweep: on random lattices, random rational functionals
/// evaluated against every cube point satisfy the summation identity.
pub fn pairing_identity_suite(cfg: LatticeSuiteConfig) -> VerifyReport {
    let mut run = SuiteRun::new("pairing-identity");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for idx in 0..cfg.instances {
        let spec = random_lattice(&mut rng, cfg.max_n, cfg.max_order);
        let qg = build_quotient(&spec).expect("valid spec");
        let pts = cube_points(&qg).expect("within cap");
        for uidx in 0..2 {
            let u: Vec<Rational> = (0..qg.dim)
                .map(|_| rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3)))
                .collect();
            let ok = pts.iter().all(|p| check_pairing_identity(&qg, &u, p));
            run.check(ok, || {
                format!("instance {idx}, functional {uidx}: identity fails")
            });
        }
    }
    run.finish()
}

/// Seeded paired constructions: a modulus `r` up to 20 and complementary
/// residue pairs `(a, r - a)`; the equal-mass condition must hold and the
/// constructed involution must pair coordinates to integral sums.
pub fn sebo_paired_suite(count: usize, seed: u64) -> VerifyReport {
    let mut run = SuiteRun::new("sebo-paired");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for idx in 0..count {
        let r = rng.gen_range(2..=20u64);
        let pairs = rng.gen_range(1..=3usize);
        let mut a = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let x = rng.gen_range(1..r);
            a.push(x);
            a.push(r - x);
        }
        let spec = LatticeSpec::from_single_generator(r, &a).expect("valid");
        let qg = build_quotient(&spec).expect("valid spec");
        match sebo_check(&qg) {
            Ok(res) => {
                run.check(res.holds, || {
                    format!("instance {idx} (r = {r}, a = {a:?}): condition fails")
                });
                if let Some(sigma) = res.involution {
                    run.check(crate::span::involution_is_valid(&qg, &sigma), || {
                        format!("instance {idx} (r = {r}, a = {a:?}): involution invalid")
                    });
                }
            }
            Err(e) => run.check(false, || format!("instance {idx}: {e}")),
        }
    }
    run.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chars_suite_small() {
        let report = chars_suite(12, 1);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.cases > 0);
    }

    #[test]
    fn dirichlet_suite_small() {
        let report = dirichlet_suite(8, 1);
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn lattice_suite_small() {
        let cfg = LatticeSuiteConfig {
            instances: 20,
            max_n: 4,
            max_order: 60,
            seed: 7,
        };
        let report = lattice_suite(cfg);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.cases, 60);
    }

    #[test]
    fn pairing_suite_small() {
        let cfg = LatticeSuiteConfig {
            instances: 10,
            max_n: 4,
            max_order: 40,
            seed: 7,
        };
        let report = pairing_identity_suite(cfg);
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn sebo_suite_small() {
        let report = sebo_paired_suite(10, 3);
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn random_lattices_are_deterministic() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(42);
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let a = random_lattice(&mut rng1, 5, 100);
            let b = random_lattice(&mut rng2, 5, 100);
            assert_eq!(a.dim, b.dim);
            assert_eq!(a.generators, b.generators);
        }
    }
}
