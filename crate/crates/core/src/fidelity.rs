// SPDX-License-Identifier: Apache-2.0

//! Bloch-sphere averaged fidelity.
//!
//! The average `(1/4pi) * int dphi int <psi|rho(psi)|psi> sin(theta) dtheta`
//! is evaluated with Gauss-Legendre nodes in `cos(theta)` and a uniform
//! (trapezoid) rule in `phi`, which is spectrally accurate for periodic
//! integrands.

use std::f64::consts::{PI, TAU};

use crate::density::{state_fidelity, DensityMatrix};
use crate::state::{bloch_state, BlochAngles};

/// Default grid resolution in each direction.
pub const DEFAULT_GRID: usize = 64;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "quadrature needs at least one node");
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature points on the sphere with weights summing to one.
#[derive(Debug, Clone)]
pub struct BlochGrid {
    points: Vec<(BlochAngles, f64)>,
}

impl BlochGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        assert!(n_theta >= 2 && n_phi >= 2, "grid must be at least 2x2");
        let nodes = gauss_legendre(n_theta);
        let mut points = Vec::with_capacity(n_theta * n_phi);
        for &(u, w) in &nodes {
            let theta = u.clamp(-1.0, 1.0).acos();
            for k in 0..n_phi {
                let phi = TAU * k as f64 / n_phi as f64;
                let angles = BlochAngles::new(theta, phi).expect("grid angles are in range");
                // (1/4pi) * w * (2pi/n_phi)
                points.push((angles, w / (2.0 * n_phi as f64)));
            }
        }
        Self { points }
    }

    pub fn points(&self) -> &[(BlochAngles, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Weighted sphere average of `f`.
    pub fn average<F: FnMut(&BlochAngles) -> f64>(&self, mut f: F) -> f64 {
        self.points.iter().map(|(a, w)| w * f(a)).sum()
    }
}

/// Average of `<psi|rho(psi)|psi>` over the Bloch sphere, where
/// `reduced_state` maps the input angles to the output density matrix.
pub fn average_fidelity<F>(mut reduced_state: F, n_theta: usize, n_phi: usize) -> f64
where
    F: FnMut(&BlochAngles) -> DensityMatrix,
{
    BlochGrid::new(n_theta, n_phi).average(|angles| {
        let psi = bloch_state(angles);
        let rho = reduced_state(angles);
        state_fidelity(&rho, &psi).expect("reduced state must be a single qubit")
    })
}
