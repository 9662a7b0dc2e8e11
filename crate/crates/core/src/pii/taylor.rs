//! Taylor-series integration of `p'' = xp − 2p³ + μ/2`.
//!
//! Every step stores the full local polynomial, so dense output is the
//! polynomial itself and the antiderivative of p comes for free.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ORDER: usize = 30;
const MAX_STEP: f64 = 0.5;
const MIN_STEP: f64 = 1e-9;
const SAFETY: f64 = 0.8;
pub const POLE_GUARD: f64 = 1e6;

/// One integration step: `p(center + s) = Σ coeffs[k] s^k` on `[lo, hi]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    /// Antiderivative of p at `center`, measured from the start point.
    pub q_center: f64,
    pub coeffs: Vec<f64>,
}

impl Segment {
    fn offset(&self, x: f64) -> f64 {
        x - self.center
    }

    /// (p, p', p'')
    pub fn eval(&self, x: f64) -> (f64, f64, f64) {
        let s = self.offset(x);
        let c = &self.coeffs;
        let n = c.len() - 1;
        let mut p = c[n];
        let mut dp = n as f64 * c[n];
        let mut ddp = (n * (n - 1)) as f64 * c[n];
        for k in (0..n).rev() {
            p = p * s + c[k];
            if k >= 1 {
                dp = dp * s + k as f64 * c[k];
            }
            if k >= 2 {
                ddp = ddp * s + (k * (k - 1)) as f64 * c[k];
            }
        }
        (p, dp, ddp)
    }

    pub fn antiderivative(&self, x: f64) -> f64 {
        let s = self.offset(x);
        let c = &self.coeffs;
        let mut acc = 0.0;
        for k in (0..c.len()).rev() {
            acc = acc * s + c[k] / (k + 1) as f64;
        }
        self.q_center + acc * s
    }
}

/// Dense trajectory on `[lo, hi]`; segments are stored in ascending order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub mu: f64,
    pub start: f64,
    pub segments: Vec<Segment>,
}

impl Trajectory {
    pub fn lo(&self) -> f64 {
        self.segments.first().map_or(self.start, |s| s.lo)
    }

    pub fn hi(&self) -> f64 {
        self.segments.last().map_or(self.start, |s| s.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo() && x <= self.hi()
    }

    fn segment(&self, x: f64) -> Option<&Segment> {
        if !self.contains(x) || self.segments.is_empty() {
            return None;
        }
        let idx = self.segments.partition_point(|s| s.hi < x);
        self.segments.get(idx.min(self.segments.len() - 1))
    }

    /// (p, p', p'') at x, or None outside the covered interval.
    pub fn eval(&self, x: f64) -> Option<(f64, f64, f64)> {
        self.segment(x).map(|s| s.eval(x))
    }

    /// `∫_{start}^{x} p`.
    pub fn integral(&self, x: f64) -> Option<f64> {
        self.segment(x).map(|s| s.antiderivative(x))
    }

    /// Step endpoints in ascending order.
    pub fn knots(&self) -> Vec<f64> {
        let mut k: Vec<f64> = self.segments.iter().map(|s| s.lo).collect();
        if let Some(last) = self.segments.last() {
            k.push(last.hi);
        }
        k
    }
}

/// Taylor coefficients of the solution through `(x0, p0, dp0)`.
pub fn taylor_coeffs(mu: f64, x0: f64, p0: f64, dp0: f64, order: usize) -> Vec<f64> {
    let mut a = vec![0.0; order + 1];
    let mut sq = vec![0.0; order + 1];
    let mut cube = vec![0.0; order + 1];
    a[0] = p0;
    a[1] = dp0;
    for k in 0..=order - 2 {
        sq[k] = (0..=k).map(|j| a[j] * a[k - j]).sum();
        cube[k] = (0..=k).map(|j| sq[j] * a[k - j]).sum();
        let mut rhs = x0 * a[k] - 2.0 * cube[k];
        if k >= 1 {
            rhs += a[k - 1];
        } else {
            rhs += 0.5 * mu;
        }
        a[k + 2] = rhs / ((k + 1) * (k + 2)) as f64;
    }
    a
}

fn step_size(a: &[f64], tol: f64) -> f64 {
    let n = a.len() - 1;
    let scale = a[0].abs().max(a[1].abs()).max(2.0 * a[2].abs());
    if scale == 0.0 {
        return MAX_STEP;
    }
    let mut h = MAX_STEP;
    for k in [n - 1, n] {
        let weight = (k * (k - 1)) as f64 * a[k].abs();
        if weight > 0.0 {
            h = h.min(SAFETY * (tol * scale / weight).powf(1.0 / (k - 2) as f64));
        }
    }
    h
}

/// Integrates from `(x0, p0, p0')` to `x1` (either direction). The local
/// error of p and its first two derivatives per step is kept below
/// `tol` relative to the local size of the solution.
pub fn integrate_pii(mu: f64, p0: f64, p0_prime: f64, x0: f64, x1: f64, tol: f64) -> Result<Trajectory> {
    if !(1e-13..=1e-6).contains(&tol) {
        return Err(Error::BadTolerance(tol));
    }
    if !(p0.is_finite() && p0_prime.is_finite() && x0.is_finite() && x1.is_finite()) {
        return Err(Error::NonFinite("initial data"));
    }
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let mut segments = Vec::new();
    let (mut x, mut p, mut dp, mut q) = (x0, p0, p0_prime, 0.0);
    while (x1 - x) * dir > 0.0 {
        let a = taylor_coeffs(mu, x, p, dp, ORDER);
        let mut h = step_size(&a, tol);
        if h < MIN_STEP {
            return Err(Error::BlowUp { x, magnitude: p.abs() });
        }
        let remaining = (x1 - x).abs();
        if h >= remaining {
            h = remaining;
        } else if h > 0.5 * remaining {
            h = 0.5 * remaining;
        }
        let next = if h == remaining { x1 } else { x + dir * h };
        let seg = Segment {
            lo: x.min(next),
            hi: x.max(next),
            center: x,
            q_center: q,
            coeffs: a,
        };
        let (pn, dpn, _) = seg.eval(next);
        q = seg.antiderivative(next);
        segments.push(seg);
        if !(pn.is_finite() && dpn.is_finite()) || pn.abs() > POLE_GUARD {
            return Err(Error::BlowUp { x: next, magnitude: pn.abs() });
        }
        x = next;
        p = pn;
        dp = dpn;
    }
    if dir < 0.0 {
        segments.reverse();
    }
    Ok(Trajectory { mu, start: x0, segments })
}
