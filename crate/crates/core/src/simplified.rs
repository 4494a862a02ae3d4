//! Actuator-elasticity-only models: static deflection `δt = J K⁻¹ Jᵀ f` and
//! natural frequencies of the platform mass on the drive springs.

use alloc::vec::Vec;

use crate::numerics::{generalized_eigs, invert, Matrix};
use crate::{Error, Result};

/// Drive stiffness assumed in the reference machine, N/m per actuator.
pub const DEFAULT_DRIVE_STIFFNESS: f64 = 1e9;

/// Diagonal actuator stiffness `K = diag(K_1, …, K_n)`, N/m.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveStiffness(Vec<f64>);

impl DriveStiffness {
    pub fn new(k: Vec<f64>) -> Result<Self> {
        if k.is_empty() || k.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidGeometry("drive stiffness must be positive"));
        }
        Ok(Self(k))
    }

    pub fn uniform(k: f64, n: usize) -> Result<Self> {
        Self::new(alloc::vec![k; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_diagonal(&self.0)
    }
}

/// Planar translational inertia of the platform (2×2, kg).
#[derive(Debug, Clone, PartialEq)]
pub struct PlatformInertia(Matrix);

impl PlatformInertia {
    pub fn new(m: Matrix) -> Result<Self> {
        let m = m.symmetrized()?;
        crate::numerics::Cholesky::new(&m).map_err(|_| Error::MassNotPositiveDefinite)?;
        Ok(Self(m))
    }

    /// Point mass: `m·I₂`.
    pub fn point_mass(mass: f64) -> Result<Self> {
        Self::new(Matrix::identity(2).scale(mass))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// Cartesian compliance `J K⁻¹ Jᵀ`.
pub fn compliance_simplified(j: &Matrix, k: &DriveStiffness) -> Matrix {
    let kinv: Vec<f64> = k.values().iter().map(|v| 1.0 / v).collect();
    j.matmul(&Matrix::from_diagonal(&kinv)).matmul(&j.transpose())
}

/// Planar deflection of the platform under the planar force `f`.
pub fn deflection_simplified(j: &Matrix, k: &DriveStiffness, f: [f64; 2]) -> [f64; 2] {
    let d = compliance_simplified(j, k).mul_vec(&f);
    [d[0], d[1]]
}

/// Natural frequencies (Hz, ascending) of the platform inertia `m` suspended
/// on the drive springs.
///
/// With `t = J q̇` the Cartesian stiffness is `J⁻ᵀ K J⁻¹`; the frequencies
/// are `ω_i / 2π` for the generalized eigenvalues `ω_i²` of that stiffness
/// against `m`.
pub fn frequencies_simplified(j: &Matrix, k: &DriveStiffness, m: &PlatformInertia) -> Result<Vec<f64>> {
    let jinv = invert(j).map_err(|_| Error::SingularPosture("Jacobian is not invertible"))?;
    let stiffness = jinv.transpose().matmul(&k.matrix()).matmul(&jinv).symmetric_part();
    Ok(generalized_eigs(&stiffness, m.matrix())?.frequencies_hz())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn decoupled_axes_deflection() {
        let k = DriveStiffness::uniform(1e9, 2).unwrap();
        let d = deflection_simplified(&Matrix::identity(2), &k, [1000.0, 0.0]);
        assert!((d[0] - 1e-6).abs() < 1e-20);
        assert_eq!(d[1], 0.0);
    }

    #[test]
    fn deflection_is_linear_in_force() {
        let j = Matrix::from_rows(&[[0.3, -0.2], [0.7, 1.1]]);
        let k = DriveStiffness::new(alloc::vec![2e8, 5e8]).unwrap();
        let a = deflection_simplified(&j, &k, [10.0, -4.0]);
        let b = deflection_simplified(&j, &k, [35.0, -14.0]);
        assert!((b[0] - 3.5 * a[0]).abs() < 1e-22 && (b[1] - 3.5 * a[1]).abs() < 1e-22);
    }

    #[test]
    fn single_dof_closed_form() {
        let k = DriveStiffness::uniform(1e9, 2).unwrap();
        let m = PlatformInertia::point_mass(46.0).unwrap();
        let f = frequencies_simplified(&Matrix::identity(2), &k, &m).unwrap();
        let expected = libm::sqrt(1e9 / 46.0) / (2.0 * PI);
        assert!((expected - 742.0).abs() < 0.5);
        for fi in f {
            assert!((fi - expected).abs() < 1e-9 * expected);
        }
    }

    #[test]
    fn quadrupled_mass_halves_frequencies() {
        let j = Matrix::from_rows(&[[0.3, -0.2], [0.7, 1.1]]);
        let k = DriveStiffness::uniform(1e9, 2).unwrap();
        let f1 = frequencies_simplified(&j, &k, &PlatformInertia::point_mass(46.0).unwrap()).unwrap();
        let f4 = frequencies_simplified(&j, &k, &PlatformInertia::point_mass(184.0).unwrap()).unwrap();
        for (a, b) in f1.iter().zip(&f4) {
            assert!((a / b - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_jacobian_is_rejected() {
        let j = Matrix::from_rows(&[[0.0, 0.0], [0.0, 1.0]]);
        let k = DriveStiffness::uniform(1e9, 2).unwrap();
        let m = PlatformInertia::point_mass(46.0).unwrap();
        assert!(matches!(
            frequencies_simplified(&j, &k, &m),
            Err(Error::SingularPosture(_))
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert!(DriveStiffness::new(alloc::vec![1e9, 0.0]).is_err());
        assert!(PlatformInertia::point_mass(0.0).is_err());
    }
}
