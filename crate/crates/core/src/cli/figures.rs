//! Data behind the figures: spirals, the transcendent, and curve snapshots.

use std::f64::consts::PI;

use crate::error::Result;
use crate::flow::{spiral_z0, CurveSample};
use crate::monodromy::{MonodromyData, SpiralParams};
use crate::pii::{shoot_solution, ShootConfig};

use super::output::csv_table;

/// Parameter sets of the three spiral panels, as (θ₊, θ₋, μ).
pub const SPIRAL_SETS: [(f64, f64, f64); 3] =
    [(PI / 4.0, 3.0 * PI / 4.0, -6.0), (5.0 * PI / 12.0, -PI / 3.0, 0.0), (PI / 6.0, PI / 3.0, 2.0)];

/// Parameter set of the evolution figure.
pub const EVOLUTION_SET: (f64, f64, f64) = (PI / 4.0, 3.0 * PI / 4.0, 1.5);

pub const PAINLEVE_RANGE: [f64; 2] = [-20.0, 8.0];

/// `n` log-spaced radii in `[1e-3, 1]`.
pub fn spiral_radii(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| 10f64.powf(-3.0 + 3.0 * i as f64 / (n - 1) as f64)).collect()
}

/// Rows `x, re_z, im_z` of the target spiral on both arms, ascending in x.
pub fn spiral_rows(params: &SpiralParams, n: usize) -> Result<Vec<Vec<f64>>> {
    let radii = spiral_radii(n);
    let xs = radii.iter().rev().map(|r| -r).chain(radii.iter().copied());
    xs.map(|x| spiral_z0(params, x).map(|z| vec![x, z.re, z.im])).collect()
}

pub fn spiral_csv(params: &SpiralParams, n: usize) -> Result<String> {
    Ok(csv_table("x,re_z,im_z", &spiral_rows(params, n)?))
}

/// Rows `x, im_u` of the transcendent with `α = i·alpha_im`, `k = i·kappa`.
pub fn painleve_rows(alpha_im: f64, kappa: f64, range: [f64; 2], n: usize, shoot: &ShootConfig) -> Result<Vec<Vec<f64>>> {
    let md = MonodromyData::from_alpha_k(alpha_im, kappa);
    let sol = shoot_solution(&md, shoot)?;
    let n = n.max(2);
    Ok((0..n)
        .map(|i| {
            let x = range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64;
            vec![x, sol.evaluate_u(x).im]
        })
        .collect())
}

/// Rows `t, x, re_z, im_z` for several snapshots.
pub fn curves_csv(samples: &[CurveSample]) -> String {
    let rows: Vec<Vec<f64>> = samples
        .iter()
        .flat_map(|s| s.xs.iter().zip(&s.zs).map(move |(x, z)| vec![s.t, *x, z.re, z.im]))
        .collect();
    csv_table("t,x,re_z,im_z", &rows)
}

/// The spiral itself as a `t = 0` snapshot; `z_0(0) = 0`.
pub fn spiral_sample(params: &SpiralParams, xs: &[f64]) -> Result<CurveSample> {
    let zs = xs
        .iter()
        .map(|&x| if x == 0.0 { Ok(num_complex::Complex64::new(0.0, 0.0)) } else { spiral_z0(params, x) })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSample { t: 0.0, xs: xs.to_vec(), zs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_pitch_spiral_is_two_rays() {
        let p = SpiralParams::new(5.0 * PI / 12.0, -PI / 3.0, 0.0).unwrap();
        for row in spiral_rows(&p, 20).unwrap() {
            let theta = if row[0] > 0.0 { p.theta_plus } else { p.theta_minus };
            let cross = row[1] * theta.sin() - row[2] * theta.cos();
            assert!(cross.abs() < 1e-15);
            assert!(((row[1].hypot(row[2])) - row[0].abs()).abs() < 1e-15);
        }
    }

    #[test]
    fn radii_cover_the_decades() {
        let r = spiral_radii(4);
        assert!((r[0] - 1e-3).abs() < 1e-18 && (r[3] - 1.0).abs() < 1e-15);
    }
}
