//! Uniform Euler–Bernoulli beams: tip compliance, equivalent-beam fitting and
//! the constant-stroke leg-length scaling.

use crate::mechanism::{workspace_bounds, Geometry};
use crate::numerics::Matrix;
use crate::{Error, Result};

/// Uniform beam with its local x axis along the span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParams {
    /// Axial rigidity, N.
    pub ea: f64,
    /// Bending rigidity about local y (deflection along z), N·m².
    pub ei_y: f64,
    /// Bending rigidity about local z (deflection along y), N·m².
    pub ei_z: f64,
    /// Torsional rigidity, N·m².
    pub gj: f64,
    /// Span, m.
    pub length: f64,
    pub mass_per_length: f64,
}

impl BeamParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.ea,
            self.ei_y,
            self.ei_z,
            self.gj,
            self.length,
            self.mass_per_length,
        ];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidBeam("all beam parameters must be positive and finite"));
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        self.mass_per_length * self.length
    }

    /// Same section, new span.
    pub fn with_length(&self, length: f64) -> BeamParams {
        BeamParams { length, ..*self }
    }

    /// Squared radii of gyration of the section, `(I_y/A, I_z/A)`, taken as
    /// `EI/EA` (homogeneous material).
    pub fn gyration_radii_sq(&self) -> (f64, f64) {
        (self.ei_y / self.ea, self.ei_z / self.ea)
    }
}

/// Compliance of a uniform beam of span `length`, referenced at a point
/// `offset` along the span measured from the tip towards the root. `offset = 0`
/// is the cantilever tip; `offset = length / 2` is the mid-span, where
/// bending and shear decouple.
fn compliance_at(b: &BeamParams, length: f64, offset: f64) -> Matrix {
    let l = length;
    let (ey, ez) = (b.ei_y, b.ei_z);
    // Tip terms, then moved back by `offset` along -x.
    let c22 = l * l * l / (3.0 * ez) - offset * l * l / ez + offset * offset * l / ez;
    let c33 = l * l * l / (3.0 * ey) - offset * l * l / ey + offset * offset * l / ey;
    let c26 = l * l / (2.0 * ez) - offset * l / ez;
    let c35 = -(l * l / (2.0 * ey) - offset * l / ey);
    let mut c = Matrix::zeros(6, 6);
    c[(0, 0)] = l / b.ea;
    c[(1, 1)] = c22;
    c[(2, 2)] = c33;
    c[(3, 3)] = l / b.gj;
    c[(4, 4)] = l / ey;
    c[(5, 5)] = l / ez;
    c[(1, 5)] = c26;
    c[(5, 1)] = c26;
    c[(2, 4)] = c35;
    c[(4, 2)] = c35;
    c
}

/// Cantilever tip compliance of a uniform beam in its local frame.
pub fn beam_end_compliance(b: &BeamParams) -> Matrix {
    compliance_at(b, b.length, 0.0)
}

/// Compliance of a beam piece of span `length` referenced at its mid-span.
pub fn segment_midpoint_compliance(b: &BeamParams, length: f64) -> Matrix {
    compliance_at(b, length, 0.5 * length)
}

/// Uniform beam whose axial, two transverse and torsional tip compliances match
/// `c₁₁ … c₄₄` of the given compliance matrix.
pub fn fit_equivalent_beam(c: &Matrix, length: f64, link_mass: f64) -> Result<BeamParams> {
    if c.rows() != 6 || c.cols() != 6 {
        return Err(Error::DimensionMismatch("compliance must be 6x6"));
    }
    for i in 0..4 {
        if !(c[(i, i)] > 0.0) {
            return Err(Error::NonPositiveCompliance { index: i + 1 });
        }
    }
    let b = BeamParams {
        ea: length / c[(0, 0)],
        ei_z: length * length * length / (3.0 * c[(1, 1)]),
        ei_y: length * length * length / (3.0 * c[(2, 2)]),
        gj: length / c[(3, 3)],
        length,
        mass_per_length: link_mass / length,
    };
    b.validate()?;
    Ok(b)
}

/// Link masses that scale with the leg lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegMasses {
    pub leg1: f64,
    pub leg2: f64,
}

/// Uniform leg-length scaling at constant stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaScaling {
    pub alpha: f64,
    /// Reference leg lengths.
    pub l10: f64,
    pub l20: f64,
    /// Stroke to preserve.
    pub stroke: f64,
}

impl AlphaScaling {
    pub fn from_reference(g0: &Geometry, alpha: f64) -> Result<Self> {
        let stroke = workspace_bounds(g0)?.stroke;
        let s = Self {
            alpha,
            l10: g0.l1,
            l20: g0.l2,
            stroke,
        };
        if !(alpha.is_finite() && alpha > 0.0) || s.rail_spacing() <= 0.0 {
            return Err(Error::InvalidAlpha { alpha });
        }
        Ok(s)
    }

    /// `a = α (L10 + L20) − d`.
    pub fn rail_spacing(&self) -> f64 {
        self.alpha * (self.l10 + self.l20) - self.stroke
    }

    /// Smallest admissible α (exclusive), where `a` reaches zero.
    pub fn alpha_floor(&self) -> f64 {
        self.stroke / (self.l10 + self.l20)
    }
}

/// Scales both legs by `α` and moves the rails so the stroke stays equal to
/// that of `g0`. Masses scale linearly (constant cross-sections).
pub fn scale_geometry(g0: &Geometry, masses: LegMasses, alpha: f64) -> Result<(Geometry, LegMasses)> {
    let s = AlphaScaling::from_reference(g0, alpha)?;
    let g = Geometry {
        a: s.rail_spacing(),
        l1: alpha * g0.l1,
        l2: alpha * g0.l2,
        ..*g0
    };
    g.validate().map_err(|_| Error::InvalidAlpha { alpha })?;
    Ok((
        g,
        LegMasses {
            leg1: alpha * masses.leg1,
            leg2: alpha * masses.leg2,
        },
    ))
}
