//! Gaussian meter means checked against direct numerical integration of the
//! post-selected pointer density `|a·G(x) + b·G(x − g)|²`.

use num_complex::Complex64;
use threebox::scenarios::{build, ScenarioId};
use threebox::twostate::{meter_mean, weak_value, TwoStateVector};

fn gaussian(x: f64, sigma: f64) -> f64 {
    (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25) * (-x * x / (4.0 * sigma * sigma)).exp()
}

/// Composite Simpson rule for the pointer mean, independent of the closed form.
fn grid_mean(tsv: &TwoStateVector, label: &str, coupling: f64, sigma: f64) -> f64 {
    let scenario = build(ScenarioId::ThreeBox);
    let p = scenario.projector(label).unwrap();
    let b = tsv.sandwich(p).unwrap();
    let a = tsv.sandwich(&p.complement()).unwrap();
    let (lo, hi) = (-12.0 * sigma, coupling + 12.0 * sigma);
    let n = 200_000usize;
    let h = (hi - lo) / n as f64;
    let (mut mass, mut moment) = (0.0, 0.0);
    for i in 0..=n {
        let x = lo + i as f64 * h;
        let psi: Complex64 = a * gaussian(x, sigma) + b * gaussian(x - coupling, sigma);
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        mass += w * psi.norm_sqr();
        moment += w * x * psi.norm_sqr();
    }
    moment / mass
}

#[test]
fn closed_form_matches_grid_integration() {
    let scenario = build(ScenarioId::ThreeBox);
    for label in ["A", "B", "C"] {
        for (g, sigma) in [(1.0, 1.0), (0.5, 2.0), (3.0, 1.0)] {
            let closed = meter_mean(&scenario.tsv, scenario.projector(label).unwrap(), g, sigma).unwrap();
            let grid = grid_mean(&scenario.tsv, label, g, sigma);
            assert!((closed - grid).abs() < 1e-6, "{label} g={g} sigma={sigma}: {closed} vs {grid}");
        }
    }
}

#[test]
fn weak_limit_reads_the_weak_value() {
    let scenario = build(ScenarioId::ThreeBox);
    for label in ["A", "B", "C"] {
        let p = scenario.projector(label).unwrap();
        let wv = weak_value(&scenario.tsv, p).unwrap().re;
        for ratio in [0.1, 0.01] {
            let ratio: f64 = ratio;
            let grid = grid_mean(&scenario.tsv, label, ratio, 1.0) / ratio;
            let closed = meter_mean(&scenario.tsv, p, ratio, 1.0).unwrap() / ratio;
            assert!((closed - grid).abs() < 1e-4, "{label} g/sigma={ratio}: {closed} vs {grid}");
            if ratio <= 0.01 {
                assert!((closed - wv).abs() < 0.01, "{label}: {closed} vs weak value {wv}");
            }
        }
    }
}

#[test]
fn strong_coupling_separates_the_branches() {
    // Far apart Gaussians stop interfering: the mean becomes the ABL-weighted shift.
    let scenario = build(ScenarioId::ThreeBox);
    let p = scenario.projector("C").unwrap();
    let mean = meter_mean(&scenario.tsv, p, 40.0, 1.0).unwrap();
    assert!((mean / 40.0 - 0.2).abs() < 1e-12);
}
