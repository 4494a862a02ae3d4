#![allow(dead_code)]

use biglide::mechanism::{workspace_bounds, Geometry};
use biglide::numerics::Matrix;
use biglide::spatial::Transform;

pub fn ifw() -> Geometry {
    biglide::dataset::MechanismDataset::ifw().geometry
}

/// `n` pseudo-random interior abscissae, kept 2% of the stroke away from the ends.
pub fn interior_points(g: &Geometry, n: usize, seed: u64) -> Vec<f64> {
    let b = workspace_bounds(g).unwrap();
    let mut s = seed;
    (0..n)
        .map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (s >> 11) as f64 / (1u64 << 53) as f64;
            b.x_min + b.stroke * (0.02 + 0.96 * u)
        })
        .collect()
}

/// Central-difference twist between two placements around `mid`:
/// translation difference and the axial vector of `ΔR R₀ᵀ`, over `2h`.
pub fn fd_twist(plus: &Transform, minus: &Transform, mid: &Transform, h: f64) -> [f64; 6] {
    let dp = (plus.translation - minus.translation) * (0.5 / h);
    let dr = (plus.rotation - minus.rotation) * mid.rotation.transpose();
    let skew = (dr - dr.transpose()).scale(0.25 / h);
    let w = skew.vee();
    [dp.x, dp.y, dp.z, w.x, w.y, w.z]
}

pub fn max_rel_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).max_abs() / a.max_abs().max(b.max_abs())
}

pub fn min_eigen(m: &Matrix) -> f64 {
    biglide::numerics::symmetric_eigen(m).unwrap().values[0]
}

pub fn max_eigen(m: &Matrix) -> f64 {
    *biglide::numerics::symmetric_eigen(m).unwrap().values.last().unwrap()
}
