//! PRRRP geometry: inverse kinematics, the 2×2 velocity Jacobian, workspace
//! limits and the per-leg kinematic chains used by the virtual-spring model.
//!
//! Frame convention: origin at the centre of revolute joint A on rail 1, x
//! pointing towards rail 2 (joint C sits at `x = a`), y along the rails, z out
//! of the plane. The point B joining both legs has coordinates `(x, y)`.

use alloc::vec::Vec;

use crate::numerics::Matrix;
use crate::spatial::{Mat3, Transform, Vec3};
use crate::{Error, Result};

/// Type-1 singularity threshold, relative to the leg length.
pub const SINGULARITY_EPS: f64 = 1e-6;

/// Which side of B the feet sit on, along y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssemblySign {
    /// Feet above B (`q_i > y`).
    Above,
    /// Feet below B (`q_i < y`).
    Below,
}

impl AssemblySign {
    pub fn value(self) -> f64 {
        match self {
            AssemblySign::Above => 1.0,
            AssemblySign::Below => -1.0,
        }
    }

    pub fn from_value(v: i32) -> Option<Self> {
        match v {
            1 => Some(AssemblySign::Above),
            -1 => Some(AssemblySign::Below),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    /// Rail spacing A→C along x, m.
    pub a: f64,
    /// Leg 1 length A→B, m.
    pub l1: f64,
    /// Leg 2 length C→B, m.
    pub l2: f64,
    /// Tool link length, m.
    pub l_tool: f64,
    pub assembly: AssemblySign,
}

impl Geometry {
    pub fn new(a: f64, l1: f64, l2: f64, l_tool: f64, assembly: AssemblySign) -> Result<Self> {
        let g = Self {
            a,
            l1,
            l2,
            l_tool,
            assembly,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a, self.l1, self.l2, self.l_tool];
        if all.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidGeometry("lengths must be positive and finite"));
        }
        if self.l1 + self.l2 <= self.a {
            return Err(Error::EmptyWorkspace);
        }
        Ok(())
    }

    pub fn joint_a(&self) -> Vec3 {
        Vec3::ZERO
    }

    pub fn joint_c(&self) -> Vec3 {
        Vec3::new(self.a, 0.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkspaceBounds {
    pub x_min: f64,
    pub x_max: f64,
    /// Stroke `d = x_max - x_min = L1 + L2 - a`.
    pub stroke: f64,
}

impl WorkspaceBounds {
    pub fn center(&self) -> f64 {
        self.x_min + 0.5 * self.stroke
    }

    /// `n` evenly spaced points over `[x_min + δ, x_max - δ]`, `δ = shrink·d`.
    pub fn grid(&self, n: usize, shrink: f64) -> Vec<f64> {
        let delta = shrink * self.stroke;
        let (lo, hi) = (self.x_min + delta, self.x_max - delta);
        match n {
            0 => Vec::new(),
            1 => alloc::vec![0.5 * (lo + hi)],
            _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

/// Stroke of B along x, bounded by the two Type-1 singular postures where
/// a leg lies parallel to x.
pub fn workspace_bounds(g: &Geometry) -> Result<WorkspaceBounds> {
    if g.l1 + g.l2 <= g.a {
        return Err(Error::EmptyWorkspace);
    }
    let x_min = g.a - g.l2;
    let x_max = g.l1;
    Ok(WorkspaceBounds {
        x_min,
        x_max,
        stroke: x_max - x_min,
    })
}

/// Actuated rail positions `(q1, q2)` placing B at `(x, y)`.
pub fn inverse_kinematics(g: &Geometry, x: f64, y: f64) -> Result<(f64, f64)> {
    let b = workspace_bounds(g)?;
    let tol = 1e-12 * g.l1.max(g.l2);
    if !(x >= b.x_min - tol && x <= b.x_max + tol) {
        return Err(Error::OutOfWorkspace { x });
    }
    let h1 = g.l1 * g.l1 - x * x;
    let h2 = g.l2 * g.l2 - (x - g.a) * (x - g.a);
    let floor = -tol * g.l1.max(g.l2);
    if h1 < floor || h2 < floor {
        return Err(Error::OutOfWorkspace { x });
    }
    let s = g.assembly.value();
    Ok((y + s * libm::sqrt(h1.max(0.0)), y + s * libm::sqrt(h2.max(0.0))))
}

fn jacobian_impl(g: &Geometry, x: f64, y: f64, reject_type1: bool) -> Result<Matrix> {
    let (q1, q2) = inverse_kinematics(g, x, y)?;
    let (e1, e2) = (y - q1, y - q2);
    if reject_type1 && (e1.abs() <= SINGULARITY_EPS * g.l1 || e2.abs() <= SINGULARITY_EPS * g.l1) {
        return Err(Error::SingularPosture("type 1: a leg is parallel to x"));
    }
    // Differentiating both circle constraints: A t = B q̇.
    let det = x * e2 - (x - g.a) * e1;
    if det.abs() <= SINGULARITY_EPS * g.l1 * g.l2 {
        return Err(Error::SingularPosture("type 2: legs are aligned"));
    }
    // J = A⁻¹ B with A⁻¹ = [[e2, -e1], [a - x, x]] / det.
    Ok(Matrix::from_rows(&[
        [e2 * e1 / det, -e1 * e2 / det],
        [(g.a - x) * e1 / det, x * e2 / det],
    ]))
}

/// Velocity Jacobian `J` with `t = J q̇`, where `t` is the planar velocity of
/// B and `q̇` the two rail velocities.
///
/// Fails at Type-1 (a leg parallel to x) and Type-2 (legs aligned)
/// singularities.
pub fn jacobian(g: &Geometry, x: f64, y: f64) -> Result<Matrix> {
    jacobian_impl(g, x, y, true)
}

/// Like [`jacobian`] but accepts Type-1 postures, where `J` stays finite but
/// loses rank. Used for deflection maps that include the workspace ends.
pub fn jacobian_allow_type1(g: &Geometry, x: f64, y: f64) -> Result<Matrix> {
    jacobian_impl(g, x, y, false)
}

/// Leg selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leg {
    /// A→B, carries the tool.
    One,
    /// C→B, carries the revolute joint at B.
    Two,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChainElement {
    RigidTransform(Transform),
    ActuatedPrismatic {
        axis: Vec3,
        value: f64,
    },
    PassiveRevolute {
        axis: Vec3,
        angle: f64,
    },
    /// Six elementary coordinates (3 translations then 3 rotations about the
    /// local axes) with the given 6×6 stiffness.
    VirtualSpring6 {
        stiffness: Matrix,
    },
}

impl ChainElement {
    /// Placement at nominal values (springs at rest).
    pub fn nominal(&self) -> Transform {
        match self {
            ChainElement::RigidTransform(t) => *t,
            ChainElement::ActuatedPrismatic { axis, value } => Transform::translation(*axis * *value),
            ChainElement::PassiveRevolute { axis, angle } => Transform::rotation(*axis, *angle),
            ChainElement::VirtualSpring6 { .. } => Transform::IDENTITY,
        }
    }
}

/// Placement of a 6-DOF virtual spring at deflection `theta`:
/// `Tx Ty Tz Rx Ry Rz`.
pub fn spring_transform(theta: &[f64]) -> Transform {
    assert_eq!(theta.len(), 6);
    let t = Transform::translation(Vec3::new(theta[0], theta[1], theta[2]));
    let rx = Transform::rotation(Vec3::X, theta[3]);
    let ry = Transform::rotation(Vec3::Y, theta[4]);
    let rz = Transform::rotation(Vec3::Z, theta[5]);
    t.compose(&rx).compose(&ry).compose(&rz)
}

/// The spring stiffness blocks a leg chain is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct LegSprings {
    pub foot: Matrix,
    pub leg: Matrix,
    /// Tool spring, appended at the tool point (leg 1 only).
    pub tool: Option<Matrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegChain {
    pub leg: Leg,
    pub elements: Vec<ChainElement>,
}

impl LegChain {
    pub fn spring_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, ChainElement::VirtualSpring6 { .. }))
            .count()
    }

    pub fn passive_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, ChainElement::PassiveRevolute { .. }))
            .count()
    }

    /// Stiffness blocks of the springs, in chain order.
    pub fn spring_stiffnesses(&self) -> Vec<&Matrix> {
        self.elements
            .iter()
            .filter_map(|e| match e {
                ChainElement::VirtualSpring6 { stiffness } => Some(stiffness),
                _ => None,
            })
            .collect()
    }

    /// End placement at nominal values.
    pub fn pose(&self) -> Transform {
        self.elements
            .iter()
            .fold(Transform::IDENTITY, |acc, e| acc.compose(&e.nominal()))
    }

    /// End placement with spring deflections (6 per spring, chain order) and
    /// passive-joint offsets from nominal (one per passive joint).
    pub fn pose_with(&self, spring_coords: &[f64], passive_offsets: &[f64]) -> Transform {
        assert_eq!(spring_coords.len(), 6 * self.spring_count());
        assert_eq!(passive_offsets.len(), self.passive_count());
        let (mut s, mut p) = (0, 0);
        let mut acc = Transform::IDENTITY;
        for e in &self.elements {
            let t = match e {
                ChainElement::VirtualSpring6 { .. } => {
                    s += 6;
                    spring_transform(&spring_coords[s - 6..s])
                }
                ChainElement::PassiveRevolute { axis, angle } => {
                    p += 1;
                    Transform::rotation(*axis, angle + passive_offsets[p - 1])
                }
                other => other.nominal(),
            };
            acc = acc.compose(&t);
        }
        acc
    }
}

/// Builds the serial chain of one leg at posture `(x, y)`:
///
/// * leg 1: base, rail, foot, foot spring, revolute A, leg, leg spring, tool
///   link, [tool spring];
/// * leg 2: base, rail, foot, foot spring, revolute C, leg, leg spring,
///   revolute B, tool link.
///
/// Foot springs use the base axes; leg springs use the leg frame (x along the
/// leg towards B, z parallel to the base z). `tool_offset` is the vector from
/// B to the tool point in base coordinates. Both chains end at the tool point
/// with the base orientation.
pub fn build_leg_chain(
    g: &Geometry,
    leg: Leg,
    x: f64,
    y: f64,
    springs: &LegSprings,
    tool_offset: Vec3,
) -> Result<LegChain> {
    let (q1, q2) = inverse_kinematics(g, x, y)?;
    let spring = |k: &Matrix| ChainElement::VirtualSpring6 { stiffness: k.clone() };
    let mut elements = Vec::with_capacity(10);
    match leg {
        Leg::One => {
            let phi = libm::atan2(y - q1, x);
            let back = Mat3::rot_z(-phi);
            elements.push(ChainElement::RigidTransform(Transform::translation(g.joint_a())));
            elements.push(ChainElement::ActuatedPrismatic {
                axis: Vec3::Y,
                value: q1,
            });
            elements.push(ChainElement::RigidTransform(Transform::IDENTITY));
            elements.push(spring(&springs.foot));
            elements.push(ChainElement::PassiveRevolute {
                axis: Vec3::Z,
                angle: phi,
            });
            elements.push(ChainElement::RigidTransform(Transform::translation(Vec3::new(
                g.l1, 0.0, 0.0,
            ))));
            elements.push(spring(&springs.leg));
            elements.push(ChainElement::RigidTransform(Transform::new(back, back * tool_offset)));
            if let Some(tool) = &springs.tool {
                elements.push(spring(tool));
            }
        }
        Leg::Two => {
            let phi = libm::atan2(y - q2, x - g.a);
            elements.push(ChainElement::RigidTransform(Transform::translation(g.joint_c())));
            elements.push(ChainElement::ActuatedPrismatic {
                axis: Vec3::Y,
                value: q2,
            });
            elements.push(ChainElement::RigidTransform(Transform::IDENTITY));
            elements.push(spring(&springs.foot));
            elements.push(ChainElement::PassiveRevolute {
                axis: Vec3::Z,
                angle: phi,
            });
            elements.push(ChainElement::RigidTransform(Transform::translation(Vec3::new(
                g.l2, 0.0, 0.0,
            ))));
            elements.push(spring(&springs.leg));
            elements.push(ChainElement::PassiveRevolute {
                axis: Vec3::Z,
                angle: -phi,
            });
            elements.push(ChainElement::RigidTransform(Transform::translation(tool_offset)));
        }
    }
    Ok(LegChain { leg, elements })
}
