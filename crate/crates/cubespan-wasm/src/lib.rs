//! Browser bindings: three interactive operations over the core library,
//! each taking and returning JSON strings so the page stays framework-free.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cubespan::lattice::{build_quotient, cube_points_capped, LatticeSpec};
use cubespan::rational::to_f64;
use cubespan::report::{analyze_quotient, SpanReport};
use cubespan::simplex::Simplex;

const DEMO_POINT_CAP: u64 = 20_000;

#[derive(Serialize)]
struct PlotPoint {
    xy: [f64; 2],
    sum: f64,
    coords: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeResponse {
    report: SpanReport,
    points: Vec<PlotPoint>,
}

#[derive(Serialize)]
struct ErrorResponse {
    error: String,
}

fn err_json(message: impl std::fmt::Display) -> String {
    serde_json::to_string(&ErrorResponse {
        error: message.to_string(),
    })
    .unwrap()
}

fn analyze_spec(spec: &LatticeSpec) -> String {
    let qg = match build_quotient(spec) {
        Ok(q) => q,
        Err(e) => return err_json(e),
    };
    let report = match analyze_quotient(&qg, DEMO_POINT_CAP) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let points = cube_points_capped(&qg, DEMO_POINT_CAP)
        .expect("cap already checked")
        .iter()
        .map(|p| PlotPoint {
            xy: [
                to_f64(&p.coords[0]),
                if spec.dim > 1 {
                    to_f64(&p.coords[1])
                } else {
                    0.0
                },
            ],
            sum: to_f64(&p.coord_sum()),
            coords: p.coords_strings(),
        })
        .collect();
    serde_json::to_string(&AnalyzeResponse { report, points }).unwrap()
}

/// Full span analysis of a lattice given as the JSON schema
/// `{ "n": int, "generators": [["p/q", ...], ...] }`; returns the report
/// plus the cube points projected to the first two coordinates.
#[wasm_bindgen]
pub fn analyze_lattice(json: &str) -> String {
    match serde_json::from_str::<LatticeSpec>(json) {
        Ok(spec) => analyze_spec(&spec),
        Err(e) => err_json(e),
    }
}

/// Analysis of the lattice generated by the single point `(a_1/r, ..., a_n/r)`
/// with the numerators given as a comma-separated list.
#[wasm_bindgen]
pub fn analyze_single_generator(r: u32, numerators: &str) -> String {
    let parsed: Result<Vec<u64>, _> = numerators
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect();
    let a = match parsed {
        Ok(a) if !a.is_empty() => a,
        _ => return err_json("numerators must be a comma-separated list of integers"),
    };
    match LatticeSpec::from_single_generator(r as u64, &a) {
        Ok(spec) => analyze_spec(&spec),
        Err(e) => err_json(e),
    }
}

#[derive(Serialize)]
struct HStarResponse {
    h_star: Vec<u64>,
    normalized_volume: u64,
    points: Vec<PlotPoint>,
}

/// h*-vector of a simplex given as `{ "vertices": [[int, ...], ...] }`,
/// with the underlying box points for the level histogram.
#[wasm_bindgen]
pub fn simplex_h_star(json: &str) -> String {
    let simplex = match serde_json::from_str::<Simplex>(json)
        .map_err(|e| e.to_string())
        .and_then(|raw| Simplex::new(raw.vertices).map_err(|e| e.to_string()))
    {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let h = match cubespan::simplex::h_star(&simplex) {
        Ok(h) => h,
        Err(e) => return err_json(e),
    };
    let spec = cubespan::simplex::simplex_lattice(&simplex).expect("nondegenerate");
    let qg = build_quotient(&spec).expect("valid spec");
    let points = cube_points_capped(&qg, DEMO_POINT_CAP)
        .expect("within demo cap")
        .iter()
        .map(|p| PlotPoint {
            xy: [
                to_f64(&p.coords[0]),
                if spec.dim > 1 {
                    to_f64(&p.coords[1])
                } else {
                    0.0
                },
            ],
            sum: to_f64(&p.coord_sum()),
            coords: p.coords_strings(),
        })
        .collect();
    serde_json::to_string(&HStarResponse {
        normalized_volume: h.iter().sum(),
        h_star: h,
        points,
    })
    .unwrap()
}
