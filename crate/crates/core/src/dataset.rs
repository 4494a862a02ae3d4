//! Mechanism parameter set: geometry, masses, inertias and link compliances.
//!
//! Raw compliance matrices are stored exactly as published. A few printed
//! entries make the matrices non-symmetric beyond rounding or indefinite;
//! those are repaired by an explicit, auditable list of [`Correction`]s
//! applied before validation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::beam::{fit_equivalent_beam, BeamParams, LegMasses};
use crate::mechanism::{AssemblySign, Geometry};
use crate::modal::{MechanismModalModel, DEFAULT_ELEMENTS};
use crate::numerics::{symmetric_eigen, Cholesky, Matrix, SYMMETRY_TOL};
use crate::simplified::{DriveStiffness, PlatformInertia, DEFAULT_DRIVE_STIFFNESS};
use crate::vjm::LinkCompliances;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkMatrix {
    Foot,
    Leg1,
    Leg2,
    Tool,
}

impl LinkMatrix {
    pub const ALL: [LinkMatrix; 4] = [LinkMatrix::Foot, LinkMatrix::Leg1, LinkMatrix::Leg2, LinkMatrix::Tool];

    pub fn name(self) -> &'static str {
        match self {
            LinkMatrix::Foot => "foot",
            LinkMatrix::Leg1 => "leg1",
            LinkMatrix::Leg2 => "leg2",
            LinkMatrix::Tool => "tool",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        LinkMatrix::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Replaces one compliance entry. `row` and `col` are 1-based, as printed.
#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub matrix: LinkMatrix,
    pub row: usize,
    pub col: usize,
    pub value: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MechanismDataset {
    pub name: String,
    pub geometry: Geometry,
    pub m_leg1: f64,
    pub m_leg2: f64,
    pub m_tool: f64,
    /// Leg centre-of-mass distances from A and C along the legs, m.
    pub l_g1: f64,
    pub l_g2: f64,
    /// 3×3 inertias at the centres of mass in link frames, kg·m².
    pub j_foot: Matrix,
    pub j_leg1: Matrix,
    pub j_leg2: Matrix,
    /// Raw 6×6 compliances, link frames.
    pub k_foot: Matrix,
    pub k_leg1: Matrix,
    pub k_leg2: Matrix,
    pub k_tool: Matrix,
    /// Per actuator, N/m.
    pub drive_stiffness: f64,
    pub corrections: Vec<Correction>,
}

/// Outcome of a successful validation; `notes` lists every repair applied.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub notes: Vec<String>,
}

#[rustfmt::skip]
const K_FOOT: [f64; 36] = [
    1.67e-10, 8.85e-13, -7.78e-14, -2.12e-13, 7.95e-12, 2.50e-12,
    8.85e-13, 5.87e-9, 6.39e-12, -3.58e-11, -2.12e-11, 3.94e-8,
    -7.78e-14, 6.39e-12, 5.53e-10, 1.35e-11, -4.49e-9, 1.91e-11,
    -2.12e-13, -3.58e-11, 1.35e-11, 6.96e-8, 5.28e-11, -2.71e-10,
    7.95e-12, -2.12e-11, -4.49e-9, 5.28e-11, 8.48e-8, 7.40e-9,
    2.50e-12, 3.94e-8, 1.91e-11, -2.71e-10, 7.40e-9, 3.16e-9,
];

#[rustfmt::skip]
const K_LEG1: [f64; 36] = [
    2.81e-9, -1.01e-8, -1.41e-9, -1.81e-9, 4.42e-9, 2.92e-8,
    -1.01e-8, 1.77e-7, -1.83e-7, -2.03e-9, 2.93e-9, -2.90e-7,
    -1.41e-9, -1.83e-9, 3.19e-8, 4.77e-8, -9.94e-8, -2.27e-9,
    -1.81e-9, -2.03e-9, 4.77e-8, 1.73e-7, -8.02e-8, -1.18e-9,
    4.42e-9, 2.93e-9, -9.94e-8, -8.02e-8, 8.13e-7, 3.23e-8,
    2.92e-8, -2.90e-7, -2.27e-9, -1.18e-9, 3.23e-8, 6.08e-7,
];

#[rustfmt::skip]
const K_LEG2: [f64; 36] = [
    2.71e-10, 1.29e-10, -1.99e-10, 4.68e-9, 1.73e-9, -7.06e-11,
    1.29e-10, 1.26e-8, -3.88e-13, 1.84e-10, 1.67e-8, -2.12e-8,
    -1.99e-10, -3.88e-13, 1.07e-9, -1.03e-8, -2.38e-10, 3.71e-13,
    4.68e-9, 1.84e-10, -1.03e-8, 2.52e-7, 3.62e-9, 4.54e-10,
    1.73e-9, 1.67e-8, -2.38e-10, 3.62e-9, 7.22e-7, 3.95e-8,
    -7.06e-11, -2.12e-8, 3.71e-13, 4.54e-10, 3.95e-8, 1.70e-7,
];

#[rustfmt::skip]
const K_TOOL: [f64; 36] = [
    1.16e-9, -9.70e-11, -1.33e-11, 6.88e-9, 4.89e-8, -2.64e-9,
    9.70e-11, 1.33e-9, -1.15e-10, -5.91e-8, -7.11e-9, 1.96e-11,
    -1.33e-11, -1.15e-10, 5.53e-10, 2.30e-9, 6.52e-10, 2.00e-10,
    6.88e-9, -5.91e-8, 2.30e-9, 3.77e-6, 4.23e-7, -2.87e-8,
    4.89e-8, -7.11e-9, 6.52e-10, 4.23e-7, 3.15e-6, -6.94e-8,
    -2.64e-9, 1.96e-11, 2.00e-10, -2.87e-8, -6.94e-8, 3.29e-6,
];

fn correction(matrix: LinkMatrix, row: usize, col: usize, value: f64, note: &str) -> Correction {
    Correction {
        matrix,
        row,
        col,
        value,
        note: note.to_string(),
    }
}

impl MechanismDataset {
    /// The reference machine, built in.
    pub fn ifw() -> Self {
        let geometry = Geometry {
            a: 0.92,
            l1: 0.85,
            l2: 0.775,
            l_tool: 0.155,
            assembly: AssemblySign::Below,
        };
        Self {
            name: String::from("ifw"),
            geometry,
            m_leg1: 69.705,
            m_leg2: 49.366,
            m_tool: 46.0,
            l_g1: 0.542,
            l_g2: 0.375,
            j_foot: Matrix::from_diagonal(&[0.268, 0.211, 0.261]),
            j_leg1: Matrix::from_rows(&[
                [1.187, -0.164, -1.247],
                [-0.164, 3.022, -0.940],
                [-1.247, -0.940, 2.646],
            ]),
            j_leg2: Matrix::from_rows(&[[6.122, 0.014, 0.312], [0.014, 5.848, -0.314], [0.312, -0.314, 0.635]]),
            k_foot: Matrix::from_row_slice(6, 6, &K_FOOT),
            k_leg1: Matrix::from_row_slice(6, 6, &K_LEG1),
            k_leg2: Matrix::from_row_slice(6, 6, &K_LEG2),
            k_tool: Matrix::from_row_slice(6, 6, &K_TOOL),
            drive_stiffness: DEFAULT_DRIVE_STIFFNESS,
            corrections: alloc::vec![
                correction(
                    LinkMatrix::Foot,
                    6,
                    6,
                    3.16e-7,
                    "printed 3.16e-9 leaves the matrix indefinite against c26 = 3.94e-8",
                ),
                correction(
                    LinkMatrix::Leg1,
                    2,
                    3,
                    -1.83e-9,
                    "printed -1.83e-7 disagrees with its transpose entry -1.83e-9",
                ),
                correction(
                    LinkMatrix::Tool,
                    1,
                    2,
                    0.0,
                    "printed pair -9.70e-11 / +9.70e-11 has opposite signs"
                ),
                correction(
                    LinkMatrix::Tool,
                    2,
                    1,
                    0.0,
                    "printed pair -9.70e-11 / +9.70e-11 has opposite signs"
                ),
            ],
        }
    }

    pub fn raw_compliance(&self, m: LinkMatrix) -> &Matrix {
        match m {
            LinkMatrix::Foot => &self.k_foot,
            LinkMatrix::Leg1 => &self.k_leg1,
            LinkMatrix::Leg2 => &self.k_leg2,
            LinkMatrix::Tool => &self.k_tool,
        }
    }

    /// Raw compliance with this matrix's corrections applied.
    pub fn corrected_compliance(&self, m: LinkMatrix) -> Result<Matrix> {
        let mut k = self.raw_compliance(m).clone();
        if k.rows() != 6 || k.cols() != 6 {
            return Err(Error::Validation(format!("k_{} must be 6x6", m.name())));
        }
        for c in self.corrections.iter().filter(|c| c.matrix == m) {
            if !(1..=6).contains(&c.row) || !(1..=6).contains(&c.col) {
                return Err(Error::Validation(format!(
                    "correction ({}, {}) of k_{} is out of range",
                    c.row,
                    c.col,
                    m.name()
                )));
            }
            k[(c.row - 1, c.col - 1)] = c.value;
        }
        Ok(k)
    }

    /// Corrected, symmetrized and checked positive definite.
    pub fn compliance(&self, m: LinkMatrix) -> Result<Matrix> {
        let k = self.corrected_compliance(m)?;
        if !k.is_finite() {
            return Err(Error::Validation(format!("k_{} has non-finite entries", m.name())));
        }
        let s = k.symmetrized().map_err(|_| {
            Error::Validation(format!(
                "k_{} is not symmetric (relative asymmetry {:.3e} > {:.0e})",
                m.name(),
                k.asymmetry(),
                SYMMETRY_TOL
            ))
        })?;
        Cholesky::new(&s).map_err(|_| Error::Validation(format!("k_{} is not positive definite", m.name())))?;
        Ok(s)
    }

    /// Compliances for the refined stiffness model; the tool spring is
    /// included when `tool` is set.
    pub fn link_compliances(&self, tool: bool) -> Result<LinkCompliances> {
        Ok(LinkCompliances {
            foot: self.compliance(LinkMatrix::Foot)?,
            leg1: self.compliance(LinkMatrix::Leg1)?,
            leg2: self.compliance(LinkMatrix::Leg2)?,
            tool: if tool {
                Some(self.compliance(LinkMatrix::Tool)?)
            } else {
                None
            },
        })
    }

    pub fn leg_masses(&self) -> LegMasses {
        LegMasses {
            leg1: self.m_leg1,
            leg2: self.m_leg2,
        }
    }

    /// Uniform beams fitted to the two leg compliances.
    pub fn equivalent_beams(&self) -> Result<(BeamParams, BeamParams)> {
        Ok((
            fit_equivalent_beam(&self.compliance(LinkMatrix::Leg1)?, self.geometry.l1, self.m_leg1)?,
            fit_equivalent_beam(&self.compliance(LinkMatrix::Leg2)?, self.geometry.l2, self.m_leg2)?,
        ))
    }

    pub fn drive(&self) -> Result<DriveStiffness> {
        DriveStiffness::uniform(self.drive_stiffness, 2)
    }

    pub fn platform(&self) -> Result<PlatformInertia> {
        PlatformInertia::point_mass(self.m_tool)
    }

    /// Lumped modal model of the full mechanism with equivalent-beam legs.
    pub fn modal_model(&self, elements: usize) -> Result<MechanismModalModel> {
        let (leg1, leg2) = self.equivalent_beams()?;
        Ok(MechanismModalModel {
            geometry: self.geometry,
            leg1,
            leg2,
            tool_mass: self.m_tool,
            drive_stiffness: self.drive_stiffness,
            foot_compliance: self.compliance(LinkMatrix::Foot)?,
            elements,
        })
    }

    pub fn default_modal_model(&self) -> Result<MechanismModalModel> {
        self.modal_model(DEFAULT_ELEMENTS)
    }

    /// Checks every invariant; the report lists the repairs that were needed.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.geometry
            .validate()
            .map_err(|e| Error::Validation(format!("geometry: {e}")))?;
        for (name, m) in [
            ("m_leg1", self.m_leg1),
            ("m_leg2", self.m_leg2),
            ("m_tool", self.m_tool),
        ] {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::Validation(format!("{name} must be positive")));
            }
        }
        for (name, l) in [("l_g1", self.l_g1), ("l_g2", self.l_g2)] {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Validation(format!("{name} must be positive")));
            }
        }
        if !(self.drive_stiffness.is_finite() && self.drive_stiffness > 0.0) {
            return Err(Error::Validation(String::from("drive stiffness must be positive")));
        }
        for (name, j) in [
            ("j_foot", &self.j_foot),
            ("j_leg1", &self.j_leg1),
            ("j_leg2", &self.j_leg2),
        ] {
            check_inertia(name, j)?;
        }
        let mut notes = Vec::new();
        for c in &self.corrections {
            notes.push(format!(
                "k_{} ({}, {}) corrected {:e} -> {:e}: {}",
                c.matrix.name(),
                c.row,
                c.col,
                self.raw_compliance(c.matrix)
                    .as_slice()
                    .get(6 * (c.row.max(1) - 1) + c.col.max(1) - 1)
                    .copied()
                    .unwrap_or(f64::NAN),
                c.value,
                c.note
            ));
        }
        for m in LinkMatrix::ALL {
            self.compliance(m)?;
            let asym = self.corrected_compliance(m)?.asymmetry();
            if asym > 0.0 {
                notes.push(format!("k_{} symmetrized (relative asymmetry {asym:.3e})", m.name()));
            }
        }
        Ok(ValidationReport { notes })
    }
}

fn check_inertia(name: &str, j: &Matrix) -> Result<()> {
    if j.rows() != 3 || j.cols() != 3 || !j.is_finite() {
        return Err(Error::Validation(format!("{name} must be a finite 3x3 matrix")));
    }
    let s = j
        .symmetrized()
        .map_err(|_| Error::Validation(format!("{name} is not symmetric")))?;
    let eig = symmetric_eigen(&s).map_err(|e| Error::Validation(format!("{name}: {e}")))?;
    let top = eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if eig.values.iter().any(|v| *v < -1e-12 * top) {
        return Err(Error::Validation(format!("{name} is not positive semidefinite")));
    }
    Ok(())
}
