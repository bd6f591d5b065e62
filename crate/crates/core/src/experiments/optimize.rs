//! Maximisation of `Y(λ) = |Σ_k λ_k e^{2iθ_k}|²` over the probability simplex.
//!
//! `Y` is convex in `λ`, so its maximum over the simplex sits on a vertex and
//! equals 1. The exhaustive lattice search serves as the reference for the
//! projected-gradient ascent.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::noise::two_level::auxiliary_y_weighted;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerMethod {
    Grid,
    ProjectedGradient,
}

impl fmt::Display for OptimizerMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimizerMethod::Grid => "grid",
            OptimizerMethod::ProjectedGradient => "projected_gradient",
        })
    }
}

impl FromStr for OptimizerMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(OptimizerMethod::Grid),
            "projected_gradient" | "projected-gradient" | "pg" => Ok(OptimizerMethod::ProjectedGradient),
            other => Err(invalid_input(format!("unknown optimizer method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerResult {
    pub best_weights: Vec<f64>,
    pub best_value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest ensemble the lattice search accepts.
pub const GRID_MAX_N: usize = 8;

/// Lattice steps per unit: 1/100 up to three weights, 1/20 beyond.
fn grid_resolution(n: usize) -> usize {
    if n <= 3 {
        100
    } else {
        20
    }
}

/// Maximises `Y` over `λ` for fixed angles.
///
/// `budget` caps projected-gradient iterations; the lattice search is
/// exhaustive and ignores it.
pub fn maximize_y(thetas: &[f64], method: OptimizerMethod, budget: usize) -> Result<OptimizerResult> {
    if thetas.is_empty() {
        return Err(invalid_input("need at least one angle"));
    }
    if thetas.iter().any(|t| !t.is_finite()) {
        return Err(invalid_input("angles must be finite"));
    }
    if budget == 0 {
        return Err(invalid_input("budget must be at least 1"));
    }
    match method {
        OptimizerMethod::Grid => grid_search(thetas),
        OptimizerMethod::ProjectedGradient => Ok(projected_gradient(thetas, budget)),
    }
}

fn grid_search(thetas: &[f64]) -> Result<OptimizerResult> {
    let n = thetas.len();
    if n > GRID_MAX_N {
        return Err(invalid_input(format!(
            "grid search supports at most {GRID_MAX_N} angles, got {n}"
        )));
    }
    let steps = grid_resolution(n);
    let mut counts = vec![0usize; n];
    let mut weights = vec![0.0; n];
    let mut best = OptimizerResult {
        best_weights: Vec::new(),
        best_value: f64::NEG_INFINITY,
        iterations: 0,
        converged: true,
    };
    // enumerate compositions of `steps` into `n` nonnegative parts
    counts[n - 1] = steps;
    loop {
        for (w, &c) in weights.iter_mut().zip(&counts) {
            *w = c as f64 / steps as f64;
        }
        let y = auxiliary_y_weighted(thetas, &weights);
        best.iterations += 1;
        if y > best.best_value {
            best.best_value = y;
            best.best_weights = weights.clone();
        }
        if !next_composition(&mut counts) {
            break;
        }
    }
    Ok(best)
}

/// Advances to the next composition in lexicographic order; `false` when done.
fn next_composition(counts: &mut [usize]) -> bool {
    let n = counts.len();
    if n < 2 {
        return false;
    }
    // find the rightmost position before the last that can take one more unit
    let tail = counts[n - 1];
    if tail > 0 {
        let last_free = n - 2;
        counts[last_free] += 1;
        counts[n - 1] = tail - 1;
        return true;
    }
    let Some(k) = (0..n - 2).rev().find(|&k| counts[k + 1] > 0) else {
        return false;
    };
    counts[k] += 1;
    let moved = counts[k + 1] - 1;
    counts[k + 1] = 0;
    counts[n - 1] = moved;
    true
}

/// Euclidean projection onto `{w : w >= 0, Σ w = 1}` (sort-based).
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (j, &x) in u.iter().enumerate() {
        cumulative += x;
        let t = (cumulative - 1.0) / (j + 1) as f64;
        if x - t > 0.0 {
            tau = t;
        }
    }
    v.iter().map(|x| (x - tau).max(0.0)).collect()
}

fn projected_gradient(thetas: &[f64], budget: usize) -> OptimizerResult {
    const STEP: f64 = 0.25;
    const STOP: f64 = 1e-12;
    let n = thetas.len();
    let phasors: Vec<(f64, f64)> = thetas.iter().map(|t| ((2.0 * t).cos(), (2.0 * t).sin())).collect();
    // asymmetric start: the uniform point is stationary for symmetric angle sets
    let norm = (n * (n + 1)) as f64 / 2.0;
    let mut w: Vec<f64> = (1..=n).map(|k| k as f64 / norm).collect();
    let mut best_value = auxiliary_y_weighted(thetas, &w);
    let mut best_weights = w.clone();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < budget {
        iterations += 1;
        let (c, s) = w
            .iter()
            .zip(&phasors)
            .fold((0.0, 0.0), |(c, s), (l, (pc, ps))| (c + l * pc, s + l * ps));
        let stepped: Vec<f64> = w
            .iter()
            .zip(&phasors)
            .map(|(l, (pc, ps))| l + STEP * 2.0 * (c * pc + s * ps))
            .collect();
        let next = project_to_simplex(&stepped);
        let change = next.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        w = next;
        let y = auxiliary_y_weighted(thetas, &w);
        if y > best_value {
            best_value = y;
            best_weights = w.clone();
        }
        if change < STOP {
            converged = true;
            break;
        }
    }
    OptimizerResult {
        best_weights,
        best_value,
        iterations,
        converged,
    }
}
