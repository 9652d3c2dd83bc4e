//! End-to-end acceptance suite. Each test prints one pass/fail line with its
//! wall time and enforces the stated tolerance and budget.

mod common;

use std::time::Instant;

use cubespan::arith::{divisor_count_tuple, gcd};
use cubespan::dirichlet::{odd_characters, odd_dimension, series_w, v_matrix_check, w_chi};
use cubespan::group::abelian_groups_up_to;
use cubespan::lattice::{build_quotient, cube_points, white_lattice, LatticeSpec};
use cubespan::rational::rat;
use cubespan::simplex::Simplex;
use cubespan::span::{involution_cycles, involution_is_valid, sebo_check};
use cubespan::verify::{
    chars_suite, lattice_suite, pairing_identity_suite, ring_sweep, sebo_paired_suite,
    LatticeSuiteConfig,
};

struct Criterion {
    name: &'static str,
    start: Instant,
    budget_ms: u128,
}

impl Criterion {
    fn new(name: &'static str, budget_ms: u128) -> Self {
        Criterion {
            name,
            start: Instant::now(),
            budget_ms,
        }
    }

    fn conclude(self, ok: bool, detail: String) {
        let elapsed = self.start.elapsed().as_millis();
        let within = elapsed <= self.budget_ms;
        let status = if ok && within { "PASS" } else { "FAIL" };
        println!(
            "acceptance {:<28} {} ({} ms) {}",
            self.name, status, elapsed, detail
        );
        assert!(ok, "{}: {}", self.name, detail);
        assert!(
            within,
            "{}: exceeded {} ms budget ({} ms)",
            self.name, self.budget_ms, elapsed
        );
    }
}

fn table1_spec() -> LatticeSpec {
    let g1 = [1, 9, 3, 7, 1, 1, 3, 5]
        .iter()
        .map(|&a| rat(a, 10))
        .collect();
    let g2 = [2, 8, 6, 4, 1, 1, 3, 0]
        .iter()
        .map(|&a| rat(a, 10))
        .collect();
    LatticeSpec::new(8, vec![g1, g2]).unwrap()
}

#[test]
fn a01_example_lattice_span_counts() {
    let c = Criterion::new("example-lattice-span", 1_000);
    let report = cubespan::report::analyze(&table1_spec(), 1_000_000).unwrap();
    let ok = report.iota == 4
        && report.kappa == 2
        && report.dim_formula == 6
        && report.dim_bruteforce == 6
        && report.agreement;
    c.conclude(
        ok,
        format!(
            "iota {} kappa {} dim {}/{}",
            report.iota, report.kappa, report.dim_formula, report.dim_bruteforce
        ),
    );
}

#[test]
fn a02_white_family_point_counts() {
    let c = Criterion::new("white-point-counts", 5_000);
    let mut checked = 0usize;
    let mut ok = true;
    let mut detail = String::new();
    'outer: for r in 2..=50u64 {
        for a in 1..r {
            if gcd(a, r) != 1 {
                continue;
            }
            let qg = build_quotient(&white_lattice(r, a).unwrap()).unwrap();
            let pts = cube_points(&qg).unwrap();
            checked += 1;
            if pts.len() as u64 != r {
                ok = false;
                detail = format!("(r, a) = ({r}, {a}) yields {} points", pts.len());
                break 'outer;
            }
        }
    }
    c.conclude(
        ok,
        if ok {
            format!("{checked} coprime pairs, each with r points")
        } else {
            detail
        },
    );
}

#[test]
fn a03_nullspace_equivalence_on_random_lattices() {
    let c = Criterion::new("nullspace-equivalence", 60_000);
    let report = lattice_suite(LatticeSuiteConfig::default());
    c.conclude(
        report.passed(),
        format!(
            "{} checks over 200 seeded instances; failures {:?}",
            report.cases, report.failures
        ),
    );
}

#[test]
fn a04_dimension_formula_on_random_lattices() {
    let c = Criterion::new("dimension-formula", 60_000);
    // Same seeded instances; compare the class-count formula to the exact
    // point-matrix rank directly.
    use rand::SeedableRng;
    let cfg = LatticeSuiteConfig::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = Vec::new();
    for idx in 0..cfg.instances {
        let spec = cubespan::verify::random_lattice(&mut rng, cfg.max_n, cfg.max_order);
        let qg = build_quotient(&spec).unwrap();
        let formula = cubespan::span::span_dimension(&qg);
        let rank = cubespan::span::bruteforce_span_dimension(&qg).unwrap();
        if formula != rank {
            failures.push(format!("instance {idx}: {formula} != {rank}"));
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("200 instances; failures {failures:?}"),
    );
}

#[test]
fn a05_pairing_involutions() {
    let c = Criterion::new("pairing-involutions", 30_000);
    let mut ok = true;
    let mut notes = Vec::new();

    let paired =
        build_quotient(&LatticeSpec::from_single_generator(5, &[1, 4, 2, 3]).unwrap()).unwrap();
    let res = sebo_check(&paired).unwrap();
    match res.involution.as_deref().map(involution_cycles) {
        Some(sigma)
            if res.holds
                && sigma == "(1 2)(3 4)"
                && involution_is_valid(&paired, res.involution.as_ref().unwrap()) => {}
        other => {
            ok = false;
            notes.push(format!("paired instance gave {other:?}"));
        }
    }

    let unpaired =
        build_quotient(&LatticeSpec::from_single_generator(5, &[1, 1, 2, 3]).unwrap()).unwrap();
    let res = sebo_check(&unpaired).unwrap();
    match &res.witness {
        Some(w) if !res.holds => {
            if &w.coord_sum() * rat(2, 1) == rat(w.support_size() as i64, 1) {
                ok = false;
                notes.push("witness does not violate the equality".into());
            }
        }
        _ => {
            ok = false;
            notes.push("unpaired instance did not fail with a witness".into());
        }
    }

    let suite = sebo_paired_suite(50, 42);
    if !suite.passed() {
        ok = false;
        notes.push(format!("paired constructions: {:?}", suite.failures));
    }

    c.conclude(
        ok,
        if notes.is_empty() {
            "explicit pair + 50 seeded constructions".into()
        } else {
            notes.join("; ")
        },
    );
}

#[test]
fn a06_indicator_independence_sweep() {
    let c = Criterion::new("indicator-independence", 30_000);
    let mut failures = Vec::new();
    let mut count = 0;
    for group in abelian_groups_up_to(36) {
        count += 1;
        if !cubespan::chars::indicator_independence(&group) {
            failures.push(format!("{:?}", group.factors()));
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("{count} groups; failures {failures:?}"),
    );
}

#[test]
fn a07_odd_span_rank_sweep() {
    let c = Criterion::new("odd-span-rank", 60_000);
    let mut failures = Vec::new();
    let mut count = 0;
    for group in abelian_groups_up_to(36) {
        count += 1;
        if !cubespan::chars::odd_span_check(&group) {
            failures.push(format!("{:?}", group.factors()));
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("{count} groups; failures {failures:?}"),
    );
}

#[test]
fn a08_poisson_summation_sweep() {
    let c = Criterion::new("poisson-summation", 120_000);
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut cases = 0usize;
    let mut failures = Vec::new();
    for group in abelian_groups_up_to(24) {
        for k in group.all_subgroups() {
            for _ in 0..20 {
                let f = cubespan::chars::random_function(&group, &mut rng);
                cases += 1;
                if !cubespan::chars::poisson_check(&group, &f, &k) {
                    failures.push(format!("group {:?}, |K| = {}", group.factors(), k.order()));
                }
            }
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("{cases} identities; failures {failures:?}"),
    );
}

#[test]
fn a09_v_matrix_pattern_sweep() {
    let c = Criterion::new("v-matrix-patterns", 120_000);
    let mut cases = 0usize;
    let mut failures = Vec::new();
    for ring in ring_sweep(30) {
        for (ci, chi) in odd_characters(&ring).iter().enumerate() {
            cases += 1;
            if !v_matrix_check(&ring, chi) {
                failures.push(format!("ring {:?}, odd chi #{ci}", ring.factors));
            }
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("{cases} odd characters; failures {failures:?}"),
    );
}

#[test]
fn a10_odd_character_counting_sweep() {
    let c = Criterion::new("odd-character-counting", 60_000);
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for ring in ring_sweep(30) {
        cases += 1;
        let total: u64 = odd_characters(&ring)
            .iter()
            .map(|chi| divisor_count_tuple(&chi.q_tuple(&ring)))
            .sum();
        if total != odd_dimension(&ring) {
            failures.push(format!(
                "ring {:?}: {total} != {}",
                ring.factors,
                odd_dimension(&ring)
            ));
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("{cases} rings, exact equality; failures {failures:?}"),
    );
}

#[test]
fn a11_series_against_exact_sums() {
    let c = Criterion::new("series-convergence", 60_000);
    let mut cases = 0usize;
    let mut worst = 0f64;
    let mut failures = Vec::new();
    for ring in ring_sweep(30) {
        if ring.order() > 10 {
            continue;
        }
        for (ci, chi) in odd_characters(&ring).iter().enumerate() {
            let q = chi.q_tuple(&ring);
            for a in cubespan::arith::divisor_tuples(&q) {
                for cc in ring.elements() {
                    cases += 1;
                    let exact = w_chi(&ring, chi, &a, &cc);
                    let approx = series_w(&ring, chi, &a, &cc, 100_000);
                    let err = (exact - approx).norm();
                    worst = worst.max(err);
                    if err >= 1e-3 {
                        failures.push(format!(
                            "ring {:?}, odd chi #{ci}, a {a:?}, c {cc:?}: error {err}",
                            ring.factors
                        ));
                    }
                }
            }
        }
    }
    c.conclude(
        failures.is_empty(),
        format!("{cases} truncations, worst error {worst:.2e}; failures {failures:?}"),
    );
}

#[test]
fn a12_h_star_against_counting_oracle() {
    let c = Criterion::new("h-star-oracle", 60_000);
    let mut ok = true;
    let mut notes = Vec::new();

    for n in 2..=5 {
        let s = Simplex::unit(n);
        let h = cubespan::simplex::h_star(&s).unwrap();
        let mut expected = vec![0u64; n];
        expected[0] = 1;
        if h != expected {
            ok = false;
            notes.push(format!("unit simplex n = {n}: {h:?}"));
        }
        let oracle = common::h_star_by_counting(&s);
        if h.iter().map(|&x| x as i64).collect::<Vec<_>>() != oracle {
            ok = false;
            notes.push(format!("unit simplex n = {n} oracle mismatch: {oracle:?}"));
        }
    }

    for r in [2i64, 3, 5] {
        let s = Simplex::reeve(r);
        let h = cubespan::simplex::h_star(&s).unwrap();
        let oracle = common::h_star_by_counting(&s);
        if h.iter().map(|&x| x as i64).collect::<Vec<_>>() != oracle {
            ok = false;
            notes.push(format!("reeve {r}: {h:?} vs oracle {oracle:?}"));
        }
        if h.iter().sum::<u64>() != r as u64 {
            ok = false;
            notes.push(format!("reeve {r}: volume {}", h.iter().sum::<u64>()));
        }
    }

    // The segment example, exact.
    let seg = Simplex::new(vec![vec![0], vec![2]]).unwrap();
    if cubespan::simplex::h_star(&seg).unwrap() != vec![1, 1] {
        ok = false;
        notes.push("segment [0,2]".into());
    }

    c.conclude(
        ok,
        if notes.is_empty() {
            "unit, reeve 2/3/5, segment vs counting oracle".into()
        } else {
            notes.join("; ")
        },
    );
}

#[test]
fn a13_pairing_identity_random_sweep() {
    // Supporting identity behind the span theorem, on its stated sweep.
    let c = Criterion::new("pairing-identity", 60_000);
    let report = pairing_identity_suite(LatticeSuiteConfig {
        instances: 50,
        max_n: 5,
        max_order: 60,
        seed: 42,
    });
    c.conclude(
        report.passed(),
        format!("{} checks; failures {:?}", report.cases, report.failures),
    );
}

#[test]
fn a14_character_suite_sweep() {
    // Orthonormality, annihilator duality and the remaining character
    // checks at the acceptance bounds.
    let c = Criterion::new("character-sweeps", 120_000);
    let report = chars_suite(36, 42);
    c.conclude(
        report.passed(),
        format!("{} checks; failures {:?}", report.cases, report.failures),
    );
}
