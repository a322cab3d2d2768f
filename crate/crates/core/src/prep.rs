// SPDX-License-Identifier: Apache-2.0

//! Preparation of the two-qubit resource state
//! `C1|00> + C2|01> + C3|10> + C4|11>` by the chain
//! `R_a(t3) P_ba R_b(t2) P_ab R_a(t1) |00>` (rightmost factor first), where
//! `a` is the leading qubit of the pair and `b` the trailing one.
//!
//! Expanding the chain gives four trigonometric equations for the
//! coefficients. They are inverted in closed form: with
//! `A = 1 - 2(C3^2 + C4^2)` and `disc = 1 - 4(C1 C4 - C2 C3)^2`,
//!
//! ```text
//! cos^2 t3 = (1 +- A / sqrt(disc)) / 2
//! cos^2 t2 = (C3^2 + C4^2 - cos^2 t3) / (1 - 2 cos^2 t3)
//! cos^2 t1 = (C2^2 - C3^2) / A + cos^2 t3 (1 - 2 C2^2 - 2 C4^2) / A
//! ```
//!
//! and the signs of every cosine and sine are recovered by filtering all 64
//! assignments through the forward equations. When a denominator vanishes the
//! solver falls back to a damped Gauss-Newton search on the forward map.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::gates::{apply_cnot, apply_rotation, CnotGate, Rotation};
use crate::state::{PureState, EXACT_TOL};

/// Coefficients that a solved angle set must reproduce, max-abs.
pub const SOLUTION_TOL: f64 = 1e-9;

/// Denominators below this switch the solver to the numerical search.
pub const SINGULAR_TOL: f64 = 1e-9;

const NEWTON_ACCEPT: f64 = 1e-10;
const NEWTON_MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepCoefficients([f64; 4]);

impl PrepCoefficients {
    pub fn new(c: [f64; 4]) -> Result<Self> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm: f64 = c.iter().map(|x| x * x).sum();
        if (norm - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self(c))
    }

    pub fn normalized(c: [f64; 4]) -> Result<Self> {
        let norm: f64 = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(c.map(|x| x / norm))
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Signs of `(cos t1, cos t2, cos t3)` and `(sin t1, sin t2, sin t3)`,
/// written `"---,+++"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern {
    pub cos: [Sign; 3],
    pub sin: [Sign; 3],
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cos: String = self.cos.iter().map(|s| s.symbol()).collect();
        let sin: String = self.sin.iter().map(|s| s.symbol()).collect();
        write!(f, "{cos},{sin}")
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            message: format!("bad sign pattern `{s}`"),
        };
        let parse3 = |part: &str| -> Result<[Sign; 3]> {
            let signs: Vec<Sign> = part
                .chars()
                .map(|c| match c {
                    '+' => Ok(Sign::Plus),
                    '-' | '−' => Ok(Sign::Minus),
                    _ => Err(bad()),
                })
                .collect::<Result<_>>()?;
            signs.try_into().map_err(|_| bad())
        };
        let (cos, sin) = s.trim().split_once(',').ok_or_else(bad)?;
        Ok(Self {
            cos: parse3(cos.trim())?,
            sin: parse3(sin.trim())?,
        })
    }
}

/// Rotation angles `(t1, t2, t3)` as unit-circle pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTriple(pub [Rotation; 3]);

impl AngleTriple {
    pub fn from_angles(theta: [f64; 3]) -> Self {
        Self(theta.map(Rotation::from_angle))
    }

    pub fn rotations(&self) -> &[Rotation; 3] {
        &self.0
    }

    pub fn angles(&self) -> [f64; 3] {
        self.0.map(|r| r.angle())
    }

    pub fn cos_squared(&self) -> [f64; 3] {
        self.0.map(|r| r.cos() * r.cos())
    }

    pub fn signs(&self) -> SignPattern {
        SignPattern {
            cos: self.0.map(|r| Sign::of(r.cos())),
            sin: self.0.map(|r| Sign::of(r.sin())),
        }
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a.cos() - b.cos()).abs().max((a.sin() - b.sin()).abs()))
            .fold(0.0, f64::max)
    }
}

/// Left-hand sides of the preparation equations.
pub fn eval_prep_equations(angles: &AngleTriple) -> PrepCoefficients {
    PrepCoefficients(forward(&angles.0.map(|r| (r.cos(), r.sin()))))
}

fn forward(p: &[(f64, f64); 3]) -> [f64; 4] {
    let [(c1, s1), (c2, s2), (c3, s3)] = *p;
    [
        c1 * c2 * c3 + s1 * s2 * s3,
        s1 * c2 * c3 - c1 * s2 * s3,
        c1 * c2 * s3 - s1 * s2 * c3,
        c1 * s2 * c3 + s1 * c2 * s3,
    ]
}

/// Max-abs mismatch between the coefficients `angles` produce and `target`.
pub fn residual(angles: &AngleTriple, target: &PrepCoefficients) -> f64 {
    eval_prep_equations(angles).max_abs_diff(target)
}

/// Runs the rotation/CNOT chain on `|00>`.
pub fn prepare_state(angles: &AngleTriple) -> PureState {
    let [r1, r2, r3] = &angles.0;
    let forward_cnot = CnotGate::new(0, 1).expect("distinct qubits");
    let backward_cnot = CnotGate::new(1, 0).expect("distinct qubits");
    let run = || -> Result<PureState> {
        let s = PureState::basis(2, 0)?;
        let s = apply_rotation(&s, 0, r1)?;
        let s = apply_cnot(&s, &forward_cnot)?;
        let s = apply_rotation(&s, 1, r2)?;
        let s = apply_cnot(&s, &backward_cnot)?;
        apply_rotation(&s, 0, r3)
    };
    run().expect("two-qubit chain is always valid")
}

/// Sign in front of the square-root term in the `cos^2 t3` formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Minus, Branch::Plus];

    fn factor(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    ClosedForm,
    Newton,
}

/// All sign-resolved angle triples sharing one set of `cos^2` values.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSolution {
    /// `None` for solutions found by the numerical fallback.
    pub branch: Option<Branch>,
    pub method: SolveMethod,
    pub cos_squared: [f64; 3],
    pub triples: Vec<AngleTriple>,
}

/// Solves for every angle triple that reproduces `c`, grouped by branch.
pub fn solve_branches(c: &PrepCoefficients) -> Result<Vec<BranchSolution>> {
    let [c1, c2, c3, c4] = c.0;
    let a = 1.0 - 2.0 * (c3 * c3 + c4 * c4);
    let cross = c1 * c4 - c2 * c3;
    let disc = 1.0 - 4.0 * cross * cross;
    if disc < -EXACT_TOL {
        return Err(Error::NoRealSolution(disc));
    }
    let disc = disc.max(0.0);
    if a.abs() < SINGULAR_TOL || disc.sqrt() < SINGULAR_TOL {
        return newton_fallback(c);
    }

    let mut out = Vec::with_capacity(2);
    for branch in Branch::BOTH {
        let k3 = 0.5 * (1.0 + branch.factor() * a / disc.sqrt());
        let denom = 1.0 - 2.0 * k3;
        if denom.abs() < SINGULAR_TOL {
            return newton_fallback(c);
        }
        let k2 = (c3 * c3 + c4 * c4 - k3) / denom;
        let k1 = (c2 * c2 - c3 * c3) / a + k3 * (1.0 - 2.0 * c2 * c2 - 2.0 * c4 * c4) / a;
        let Some(ks) = clamp_unit([k1, k2, k3]) else {
            return newton_fallback(c);
        };
        let magnitudes = ks.map(|k| (k.sqrt(), (1.0 - k).sqrt()));
        let triples = filter_signs(&magnitudes, c);
        if triples.is_empty() {
            return newton_fallback(c);
        }
        out.push(BranchSolution {
            branch: Some(branch),
            method: SolveMethod::ClosedForm,
            cos_squared: ks,
            triples,
        });
    }
    Ok(out)
}

/// Every angle triple that reproduces `c` within [`SOLUTION_TOL`].
pub fn solve_angles(c: &PrepCoefficients) -> Result<Vec<AngleTriple>> {
    Ok(solve_branches(c)?
        .into_iter()
        .flat_map(|b| b.triples)
        .collect())
}

fn clamp_unit(ks: [f64; 3]) -> Option<[f64; 3]> {
    ks.iter()
        .all(|k| k.is_finite() && (-SINGULAR_TOL..=1.0 + SINGULAR_TOL).contains(k))
        .then(|| ks.map(|k| k.clamp(0.0, 1.0)))
}

/// Tries all 64 sign assignments on `(|cos|, |sin|)` magnitudes.
fn filter_signs(magnitudes: &[(f64, f64); 3], c: &PrepCoefficients) -> Vec<AngleTriple> {
    let mut found: Vec<AngleTriple> = Vec::new();
    for bits in 0u32..64 {
        let signed: [(f64, f64); 3] = std::array::from_fn(|i| {
            let sc = if bits >> i & 1 == 1 { -1.0 } else { 1.0 };
            let ss = if bits >> (3 + i) & 1 == 1 { -1.0 } else { 1.0 };
            // adding 0.0 turns -0.0 into +0.0
            (sc * magnitudes[i].0 + 0.0, ss * magnitudes[i].1 + 0.0)
        });
        let value = forward(&signed);
        let err = value
            .iter()
            .zip(&c.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if err > SOLUTION_TOL {
            continue;
        }
        let Some(rotations) = signed
            .iter()
            .map(|&(cs, sn)| unit_rotation(cs, sn))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let triple = AngleTriple([rotations[0], rotations[1], rotations[2]]);
        if !found.iter().any(|t| t.max_abs_diff(&triple) < EXACT_TOL) {
            found.push(triple);
        }
    }
    found
}

fn unit_rotation(cos: f64, sin: f64) -> Option<Rotation> {
    let norm = (cos * cos + sin * sin).sqrt();
    Rotation::new(cos / norm, sin / norm).ok()
}

/// Jacobian columns: each equation is linear in each `(cos, sin)` pair, so
/// the derivative in `t_i` swaps the pair for `(-sin, cos)`.
fn jacobian(p: &[(f64, f64); 3]) -> [[f64; 4]; 3] {
    std::array::from_fn(|i| {
        let mut q = *p;
        q[i] = (-p[i].1, p[i].0);
        forward(&q)
    })
}

fn newton_solve(start: [f64; 3], target: &[f64; 4]) -> Option<[f64; 3]> {
    let eval = |t: &[f64; 3]| {
        let p = t.map(|x| (x.cos(), x.sin()));
        let f = forward(&p);
        let r: [f64; 4] = std::array::from_fn(|k| f[k] - target[k]);
        (p, r)
    };
    let cost = |r: &[f64; 4]| r.iter().map(|x| x * x).sum::<f64>();
    let mut theta = start;
    let (mut p, mut r) = eval(&theta);
    let mut mu = 1e-3;
    for _ in 0..NEWTON_MAX_ITER {
        if r.iter().all(|x| x.abs() < NEWTON_ACCEPT * 1e-3) {
            break;
        }
        let j = jacobian(&p);
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for a in 0..3 {
            for b in 0..3 {
                jtj[(a, b)] = (0..4).map(|k| j[a][k] * j[b][k]).sum::<f64>();
            }
            jtr[a] = (0..4).map(|k| j[a][k] * r[k]).sum::<f64>();
        }
        let current = cost(&r);
        let mut improved = false;
        for _ in 0..20 {
            let damped = jtj + Matrix3::identity() * mu;
            let Some(step) = damped.lu().solve(&(-jtr)) else {
                mu *= 4.0;
                continue;
            };
            let trial = std::array::from_fn(|i| theta[i] + step[i]);
            let (tp, tr) = eval(&trial);
            if cost(&tr) < current {
                theta = trial;
                p = tp;
                r = tr;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    r.iter().all(|x| x.abs() < NEWTON_ACCEPT).then_some(theta)
}

/// Fixed 2x2x4 grid of starting points; deterministic.
fn newton_starts() -> impl Iterator<Item = [f64; 3]> {
    const T1: [f64; 2] = [0.37, 1.93];
    const T2: [f64; 2] = [0.59, 2.21];
    const T3: [f64; 4] = [0.23, 1.11, 2.07, 2.89];
    T1.into_iter().flat_map(|a| {
        T2.into_iter()
            .flat_map(move |b| T3.into_iter().map(move |c| [a, b, c]))
    })
}

fn newton_fallback(c: &PrepCoefficients) -> Result<Vec<BranchSolution>> {
    let mut out: Vec<BranchSolution> = Vec::new();
    for start in newton_starts() {
        let Some(theta) = newton_solve(start, &c.0) else {
            continue;
        };
        let magnitudes = theta.map(|t| (t.cos().abs(), t.sin().abs()));
        let ks = theta.map(|t| t.cos() * t.cos());
        if out.iter().any(|b| {
            b.cos_squared
                .iter()
                .zip(&ks)
                .all(|(x, y)| (x - y).abs() < 1e-7)
        }) {
            continue;
        }
        let triples = filter_signs(&magnitudes, c);
        if !triples.is_empty() {
            out.push(BranchSolution {
                branch: None,
                method: SolveMethod::Newton,
                cos_squared: ks,
                triples,
            });
        }
    }
    Ok(out)
}
