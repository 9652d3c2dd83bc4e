//! Stable report schemas for the CLI: the span analysis report and the
//! point enumeration listing. Rationals serialize as `"p/q"` strings so the
//! JSON is exact, and field order is fixed by declaration.

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{cube_points_capped, LatticeSpec, QuotientGroup};
use crate::matrix::same_subspace;
use crate::rational::format_rational;
use crate::span::{
    coordinate_classes, involution_cycles, iota_kappa, sebo_check, vanishing_functionals,
    SpanMethod,
};

#[derive(Clone, Debug, Serialize)]
pub struct SeboSummary {
    pub holds: bool,
    /// Involution in cycle notation, present when the condition holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    /// Violating point coordinates, present when it fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub factors: Vec<u64>,
    pub point_count: u64,
    pub iota: usize,
    pub kappa: usize,
    pub dim_formula: usize,
    pub dim_bruteforce: usize,
    pub vanishing_basis: Vec<Vec<String>>,
    pub sebo: SeboSummary,
    pub agreement: bool,
}

/// Runs the full span pipeline on a lattice: group structure, class counts,
/// both vanishing-space routes, and the equal-mass check.
pub fn analyze(spec: &LatticeSpec, cap: u64) -> Result<SpanReport> {
    let qg = crate::lattice::build_quotient(spec)?;
    analyze_quotient(&qg, cap)
}

pub fn analyze_quotient(qg: &QuotientGroup, cap: u64) -> Result<SpanReport> {
    let points = cube_points_capped(qg, cap)?;
    let classes = coordinate_classes(qg);
    let (iota, kappa) = iota_kappa(qg, &classes);
    let dim_formula = iota + kappa;

    let formula_basis = vanishing_functionals(qg, SpanMethod::Formula)?;
    let point_rows: Vec<Vec<crate::rational::Rational>> =
        points.iter().map(|p| p.coords.clone()).collect();
    let brute_basis = crate::matrix::nullspace_basis(&point_rows, qg.dim);
    let dim_bruteforce = crate::matrix::rational_rank(&point_rows);
    let subspaces_equal = same_subspace(&formula_basis, &brute_basis);

    let sebo = sebo_check(qg)?;
    let sebo = SeboSummary {
        holds: sebo.holds,
        sigma: sebo.involution.as_deref().map(involution_cycles),
        witness: sebo.witness.map(|w| w.coords_strings()),
    };

    Ok(SpanReport {
        factors: qg.factors().to_vec(),
        point_count: qg.order(),
        iota,
        kappa,
        dim_formula,
        dim_bruteforce,
        vanishing_basis: formula_basis
            .iter()
            .map(|u| u.iter().map(format_rational).collect())
            .collect(),
        sebo,
        agreement: dim_formula == dim_bruteforce && subspaces_equal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub element: Vec<u64>,
    pub coords: Vec<String>,
    pub sum: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub factors: Vec<u64>,
    pub point_count: u64,
    pub points: Vec<PointEntry>,
}

pub fn enumerate(spec: &LatticeSpec, cap: u64) -> Result<EnumerationReport> {
    let qg = crate::lattice::build_quotient(spec)?;
    let points = cube_points_capped(&qg, cap)?;
    Ok(EnumerationReport {
        factors: qg.factors().to_vec(),
        point_count: qg.order(),
        points: points
            .iter()
            .map(|p| PointEntry {
                element: p.element.residues.clone(),
                coords: p.coords_strings(),
                sum: format_rational(&p.coord_sum()),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HStarReport {
    pub h_star: Vec<u64>,
    pub normalized_volume: u64,
}

pub fn h_star_report(simplex: &crate::simplex::Simplex) -> Result<HStarReport> {
    let h = crate::simplex::h_star(simplex)?;
    let volume = h.iter().sum();
    Ok(HStarReport {
        h_star: h,
        normalized_volume: volume,
    })
}
