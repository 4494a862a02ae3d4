//! Lumped-parameter modal model: links split into rigid elements joined by
//! 6-DOF springs.
//!
//! Every rigid element carries six coordinates `q_k = (x, y, z, φx, φy, φz)`
//! of its centre of mass in the base frame. The deflection of the spring
//! between elements `k` and `k+1` is
//!
//! ```text
//! θ_k = C(r_{k+1}) q_{k+1} − C(r_k) q_k,    C(r) = [ I  −[r]× ]
//!                                                  [ 0    I   ]
//! ```
//!
//! with `r` the vector from an element's centre of mass to the spring centre,
//! so rigid motions leave every spring unloaded. The global matrices are
//! `M = blockdiag(M_k)` and `K = Cᵀ blockdiag(K_k) C`; natural frequencies
//! solve `det(K − ω² M) = 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::beam::{segment_midpoint_compliance, BeamParams};
use crate::mechanism::{inverse_kinematics, Geometry};
use crate::numerics::{generalized_eigs, invert_symmetric, Matrix};
use crate::spatial::{rotate_6x6, twist_rotation, Mat3, Vec3};
use crate::{Error, Result};

/// Default number of rigid elements per link.
pub const DEFAULT_ELEMENTS: usize = 20;

/// Stiffness used for directions treated as rigid in ground attachments.
pub const RIGID_STIFFNESS: f64 = 1e12;

/// Energy fraction needed to label a mode in-plane or out-of-plane.
pub const CLASSIFICATION_THRESHOLD: f64 = 0.6;

#[derive(Debug, Clone, PartialEq)]
pub struct RigidElement {
    pub mass: f64,
    /// Inertia about the centre of mass, in the element frame.
    pub inertia: Mat3,
    pub center_of_mass: Vec3,
    /// Element axes in the base frame.
    pub orientation: Mat3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpringLink {
    /// 6×6 stiffness in the spring frame.
    pub stiffness: Matrix,
    pub position: Vec3,
    pub orientation: Mat3,
    /// Distance from the preceding element's centre of mass to the spring.
    pub d_prev: f64,
    /// Distance from the spring to the following element's centre of mass.
    pub d_next: f64,
}

impl SpringLink {
    /// Stiffness in the base frame, `D K_s Dᵀ`.
    pub fn global_stiffness(&self) -> Matrix {
        rotate_6x6(&self.stiffness, &self.orientation)
    }
}

/// A link split into `m` rigid elements and `m − 1` springs; spring `k`
/// joins elements `k` and `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedLink {
    pub elements: Vec<RigidElement>,
    pub springs: Vec<SpringLink>,
}

impl DiscretizedLink {
    pub fn total_mass(&self) -> f64 {
        self.elements.iter().map(|e| e.mass).sum()
    }

    /// Moves the link (built along +x from the origin) to start at `origin`
    /// with axes `orientation`.
    pub fn placed(&self, origin: Vec3, orientation: Mat3) -> DiscretizedLink {
        let elements = self
            .elements
            .iter()
            .map(|e| RigidElement {
                center_of_mass: origin + orientation * e.center_of_mass,
                orientation: orientation * e.orientation,
                ..e.clone()
            })
            .collect();
        let springs = self
            .springs
            .iter()
            .map(|s| SpringLink {
                position: origin + orientation * s.position,
                orientation: orientation * s.orientation,
                ..s.clone()
            })
            .collect();
        DiscretizedLink { elements, springs }
    }

    pub fn last_element(&self) -> usize {
        self.elements.len() - 1
    }
}

/// Splits a uniform beam into `m` rigid elements and `m − 1` springs.
///
/// The span is cut into `m − 1` equal segments; each spring sits at a segment
/// mid-point and carries that segment's stiffness referenced there. Rigid
/// elements span between neighbouring springs, so the two end elements are
/// half as long. Element inertias are those of a slender rod plus the polar
/// inertia of the section.
pub fn discretize_link(b: &BeamParams, m: usize) -> Result<DiscretizedLink> {
    if m < 2 {
        return Err(Error::InvalidElementCount(m));
    }
    b.validate()?;
    let l = b.length;
    let h = l / (m - 1) as f64;
    let (ry2, rz2) = b.gyration_radii_sq();
    let elements = (0..m)
        .map(|k| {
            let lo = if k == 0 { 0.0 } else { (k as f64 - 0.5) * h };
            let hi = if k == m - 1 { l } else { (k as f64 + 0.5) * h };
            let span = hi - lo;
            let mass = b.mass_per_length * span;
            let bending = mass * span * span / 12.0;
            RigidElement {
                mass,
                inertia: Mat3::diagonal([mass * (ry2 + rz2), bending, bending]),
                center_of_mass: Vec3::new(0.5 * (lo + hi), 0.0, 0.0),
                orientation: Mat3::IDENTITY,
            }
        })
        .collect::<Vec<_>>();
    let stiffness = invert_symmetric(&segment_midpoint_compliance(b, h))?;
    let springs = (0..m - 1)
        .map(|k| {
            let x = (k as f64 + 0.5) * h;
            SpringLink {
                stiffness: stiffness.clone(),
                position: Vec3::new(x, 0.0, 0.0),
                orientation: Mat3::IDENTITY,
                d_prev: x - elements[k].center_of_mass.x,
                d_next: elements[k + 1].center_of_mass.x - x,
            }
        })
        .collect();
    Ok(DiscretizedLink { elements, springs })
}

/// `M_k = D_k blockdiag(m_k I₃, J_k) D_kᵀ`.
pub fn element_mass_matrix(e: &RigidElement) -> Matrix {
    let local = Matrix::block_diagonal(&[&Matrix::identity(3).scale(e.mass), &e.inertia.to_matrix()]);
    rotate_6x6(&local, &e.orientation).symmetric_part()
}

/// `C(r)`: spring-centre twist from the element's centre-of-mass twist, for a
/// lever arm `r` from the centre of mass to the spring.
pub fn lever_matrix(r: Vec3) -> Matrix {
    let mut c = Matrix::identity(6);
    c.set_block(0, 3, &Mat3::skew(r).scale(-1.0).to_matrix());
    c
}

/// Coupling matrices of a straight link along local x: the spring lies
/// `d_prev` ahead of element `k` and `d_next` behind element `k + 1`.
/// Returns `(C_prev, C_next)`; the deflection is
/// `θ_k = C_next q_{k+1} − C_prev q_k`.
pub fn coupling_matrices(d_prev: f64, d_next: f64) -> (Matrix, Matrix) {
    (
        lever_matrix(Vec3::new(d_prev, 0.0, 0.0)),
        lever_matrix(Vec3::new(-d_next, 0.0, 0.0)),
    )
}

/// Stiffness of a revolute joint modelled as a spring with no stiffness about
/// `axis`: `P K P` with `P = diag(I₅, 0)` in a frame whose z is `axis`.
pub fn release_rotation(k: &Matrix, axis: Vec3) -> Matrix {
    let frame = frame_with_z(axis.normalized());
    let d = twist_rotation(&frame);
    let local = d.transpose().matmul(k).matmul(&d);
    let p = Matrix::from_diagonal(&[1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
    let released = p.matmul(&local).matmul(&p);
    d.matmul(&released).matmul(&d.transpose()).symmetric_part()
}

fn frame_with_z(z: Vec3) -> Mat3 {
    let helper = if z.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
    let x = helper.cross(z).normalized().cross(z).normalized() * -1.0;
    let y = z.cross(x);
    Mat3([[x.x, y.x, z.x], [x.y, y.y, z.y], [x.z, y.z, z.z]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementRef {
    pub link: usize,
    pub element: usize,
}

impl ElementRef {
    pub fn new(link: usize, element: usize) -> Self {
        Self { link, element }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Connection {
    /// Turns internal spring `spring` of `link` into a revolute about `axis`.
    RJoint { link: usize, spring: usize, axis: Vec3 },
    /// Removes the element's coordinates (`q = 0`).
    Clamp(ElementRef),
    /// Adds a point mass to the element's translational inertia.
    PointMass { element: ElementRef, mass: f64 },
    /// Extra spring at `position` between `from` (ground when `None`) and
    /// `to`. `stiffness` is in the base frame. With `revolute_axis` set the
    /// spring carries no moment about that axis.
    Spring {
        from: Option<ElementRef>,
        to: ElementRef,
        position: Vec3,
        stiffness: Matrix,
        revolute_axis: Option<Vec3>,
    },
}

/// Position of one element's coordinates in the assembled system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DofBlock {
    pub element: ElementRef,
    /// First row of the element's 6 coordinates, `None` when clamped.
    pub offset: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub mass: Matrix,
    pub stiffness: Matrix,
    pub dof_map: Vec<DofBlock>,
}

impl AssembledSystem {
    pub fn dof_count(&self) -> usize {
        self.mass.rows()
    }

    pub fn offset_of(&self, e: ElementRef) -> Option<usize> {
        self.dof_map.iter().find(|b| b.element == e).and_then(|b| b.offset)
    }
}

struct SpringTerm {
    from: Option<(usize, Vec3)>,
    to: Option<(usize, Vec3)>,
    stiffness: Matrix,
}

/// Builds `M = blockdiag(M_k)` and `K = Cᵀ blockdiag(K_k) C`, applies
/// revolute releases, point masses and clamps.
pub fn assemble_system(links: &[DiscretizedLink], connections: &[Connection]) -> Result<AssembledSystem> {
    let mut base = Vec::with_capacity(links.len());
    let mut count = 0;
    for l in links {
        if l.springs.len() + 1 != l.elements.len() {
            return Err(Error::InconsistentTopology(String::from(
                "a link needs one spring fewer than elements",
            )));
        }
        base.push(count);
        count += l.elements.len();
    }
    let element = |r: ElementRef| -> Result<(usize, &RigidElement)> {
        links
            .get(r.link)
            .and_then(|l| l.elements.get(r.element))
            .map(|e| (base[r.link] + r.element, e))
            .ok_or_else(|| Error::InconsistentTopology(format!("no element {}:{}", r.link, r.element)))
    };

    let mut released: Vec<Vec<Option<Vec3>>> = links.iter().map(|l| alloc::vec![None; l.springs.len()]).collect();
    let mut extra_mass = alloc::vec![0.0; count];
    let mut clamped = alloc::vec![false; count];
    let mut terms = Vec::new();
    for c in connections {
        match c {
            Connection::RJoint { link, spring, axis } => {
                let slot = released
                    .get_mut(*link)
                    .and_then(|s| s.get_mut(*spring))
                    .ok_or_else(|| Error::InconsistentTopology(format!("no spring {link}:{spring}")))?;
                *slot = Some(*axis);
            }
            Connection::Clamp(r) => clamped[element(*r)?.0] = true,
            Connection::PointMass { element: r, mass } => {
                if !(mass.is_finite() && *mass >= 0.0) {
                    return Err(Error::InconsistentTopology(String::from(
                        "point mass must be non-negative",
                    )));
                }
                extra_mass[element(*r)?.0] += mass;
            }
            Connection::Spring {
                from,
                to,
                position,
                stiffness,
                revolute_axis,
            } => {
                if stiffness.rows() != 6 || stiffness.cols() != 6 {
                    return Err(Error::DimensionMismatch("connection stiffness must be 6x6"));
                }
                let from = match from {
                    Some(r) => {
                        let (i, e) = element(*r)?;
                        Some((i, *position - e.center_of_mass))
                    }
                    None => None,
                };
                let (i, e) = element(*to)?;
                let k = match revolute_axis {
                    Some(axis) => release_rotation(stiffness, *axis),
                    None => stiffness.symmetrized()?,
                };
                terms.push(SpringTerm {
                    from,
                    to: Some((i, *position - e.center_of_mass)),
                    stiffness: k,
                });
            }
        }
    }
    for (li, l) in links.iter().enumerate() {
        for (si, s) in l.springs.iter().enumerate() {
            let (a, b) = (&l.elements[si], &l.elements[si + 1]);
            let k = s.global_stiffness();
            let k = match released[li][si] {
                Some(axis) => release_rotation(&k, axis),
                None => k,
            };
            terms.push(SpringTerm {
                from: Some((base[li] + si, s.position - a.center_of_mass)),
                to: Some((base[li] + si + 1, s.position - b.center_of_mass)),
                stiffness: k,
            });
        }
    }

    let n = 6 * count;
    let mut mass = Matrix::zeros(n, n);
    let mut stiffness = Matrix::zeros(n, n);
    for (li, l) in links.iter().enumerate() {
        for (ei, e) in l.elements.iter().enumerate() {
            let i = base[li] + ei;
            let mut mk = element_mass_matrix(e);
            for d in 0..3 {
                mk[(d, d)] += extra_mass[i];
            }
            mass.set_block(6 * i, 6 * i, &mk);
        }
    }
    for t in &terms {
        // K += Cᵀ K_s C with C = [−C(r_from) … C(r_to)].
        let sides: [(Option<(usize, Vec3)>, f64); 2] = [(t.from, -1.0), (t.to, 1.0)];
        for (a, sa) in sides.iter() {
            let Some((ia, ra)) = a else { continue };
            let ca = lever_matrix(*ra).scale(*sa);
            let left = ca.transpose().matmul(&t.stiffness);
            for (b, sb) in sides.iter() {
                let Some((ib, rb)) = b else { continue };
                let cb = lever_matrix(*rb).scale(*sb);
                stiffness.add_block(6 * ia, 6 * ib, &left.matmul(&cb));
            }
        }
    }

    let mut keep = Vec::new();
    let mut dof_map = Vec::with_capacity(count);
    for (li, l) in links.iter().enumerate() {
        for ei in 0..l.elements.len() {
            let i = base[li] + ei;
            let offset = if clamped[i] {
                None
            } else {
                let o = keep.len();
                keep.extend(6 * i..6 * i + 6);
                Some(o)
            };
            dof_map.push(DofBlock {
                element: ElementRef::new(li, ei),
                offset,
            });
        }
    }
    if keep.is_empty() {
        return Err(Error::NoDynamicDof);
    }
    Ok(AssembledSystem {
        mass: mass.select(&keep, &keep).symmetric_part(),
        stiffness: stiffness.select(&keep, &keep).symmetric_part(),
        dof_map,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeClass {
    /// Dominated by z, φx, φy motion.
    OutOfPlaneBending,
    /// Dominated by x, y, φz motion.
    InPlane,
    Other,
}

impl ModeClass {
    pub fn code(self) -> u8 {
        match self {
            ModeClass::OutOfPlaneBending => 0,
            ModeClass::InPlane => 1,
            ModeClass::Other => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(ModeClass::OutOfPlaneBending),
            1 => Some(ModeClass::InPlane),
            2 => Some(ModeClass::Other),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModeResult {
    pub frequency_hz: f64,
    /// Unit-norm mode shape over the free coordinates.
    pub shape: Vec<f64>,
    pub class: ModeClass,
}

/// Labels a mode by the share of its squared amplitude in out-of-plane
/// coordinates `(z, φx, φy)` versus in-plane ones `(x, y, φz)`.
pub fn classify_mode(shape: &[f64], dof_map: &[DofBlock]) -> ModeClass {
    let (mut out, mut total) = (0.0, 0.0);
    for block in dof_map {
        let Some(o) = block.offset else { continue };
        for (d, v) in shape[o..o + 6].iter().enumerate() {
            let e = v * v;
            total += e;
            if matches!(d, 2..=4) {
                out += e;
            }
        }
    }
    if total == 0.0 {
        return ModeClass::Other;
    }
    let frac = out / total;
    if frac >= CLASSIFICATION_THRESHOLD {
        ModeClass::OutOfPlaneBending
    } else if 1.0 - frac >= CLASSIFICATION_THRESHOLD {
        ModeClass::InPlane
    } else {
        ModeClass::Other
    }
}

/// The `n` lowest modes, ascending in frequency.
pub fn natural_frequencies(sys: &AssembledSystem, n: usize) -> Result<Vec<ModeResult>> {
    let sol = generalized_eigs(&sys.stiffness, &sys.mass)?;
    let freqs = sol.frequencies_hz();
    Ok(freqs
        .into_iter()
        .zip(sol.vectors)
        .take(n)
        .map(|(f, shape)| ModeResult {
            frequency_hz: f,
            class: classify_mode(&shape, &sys.dof_map),
            shape,
        })
        .collect())
}

/// Full-mechanism modal model: both legs as discretized equivalent beams,
/// each attached to the ground at its rail joint through the drive and foot
/// flexibility with the rotation about z released, joined at B by a revolute
/// spring, with the tool mass on leg 1's end element.
#[derive(Debug, Clone)]
pub struct MechanismModalModel {
    pub geometry: Geometry,
    pub leg1: BeamParams,
    pub leg2: BeamParams,
    pub tool_mass: f64,
    pub drive_stiffness: f64,
    /// Foot compliance, base axes.
    pub foot_compliance: Matrix,
    pub elements: usize,
}

impl MechanismModalModel {
    /// Ground attachment: drive spring along y (other directions rigid) in
    /// series with the foot compliance.
    pub fn ground_stiffness(&self) -> Result<Matrix> {
        let r = 1.0 / RIGID_STIFFNESS;
        let drive = Matrix::from_diagonal(&[r, 1.0 / self.drive_stiffness, r, r, r, r]);
        invert_symmetric(&drive.add(&self.foot_compliance.symmetrized()?))
    }

    pub fn assemble(&self, x: f64, y: f64) -> Result<AssembledSystem> {
        let g = &self.geometry;
        let (q1, q2) = inverse_kinematics(g, x, y)?;
        let a = Vec3::new(0.0, q1, 0.0);
        let c = Vec3::new(g.a, q2, 0.0);
        let b = Vec3::new(x, y, 0.0);
        let r1 = Mat3::rot_z(libm::atan2(b.y - a.y, b.x - a.x));
        let r2 = Mat3::rot_z(libm::atan2(b.y - c.y, b.x - c.x));
        let leg1 = discretize_link(&self.leg1.with_length(g.l1), self.elements)?.placed(a, r1);
        let leg2 = discretize_link(&self.leg2.with_length(g.l2), self.elements)?.placed(c, r2);
        let end1 = ElementRef::new(0, leg1.last_element());
        let end2 = ElementRef::new(1, leg2.last_element());
        let ground = self.ground_stiffness()?;
        let hinge = leg1.springs[leg1.springs.len() - 1].global_stiffness();
        let connections = [
            Connection::Spring {
                from: None,
                to: ElementRef::new(0, 0),
                position: a,
                stiffness: ground.clone(),
                revolute_axis: Some(Vec3::Z),
            },
            Connection::Spring {
                from: None,
                to: ElementRef::new(1, 0),
                position: c,
                stiffness: ground,
                revolute_axis: Some(Vec3::Z),
            },
            Connection::Spring {
                from: Some(end2),
                to: end1,
                position: b,
                stiffness: hinge,
                revolute_axis: Some(Vec3::Z),
            },
            Connection::PointMass {
                element: end1,
                mass: self.tool_mass,
            },
        ];
        assemble_system(&[leg1, leg2], &connections)
    }

    pub fn modes(&self, x: f64, y: f64, n: usize) -> Result<Vec<ModeResult>> {
        natural_frequencies(&self.assemble(x, y)?, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beam() -> BeamParams {
        BeamParams {
            ea: 3.0e8,
            ei_y: 6.4e6,
            ei_z: 1.2e6,
            gj: 4.9e6,
            length: 0.85,
            mass_per_length: 82.0,
        }
    }

    #[test]
    fn minimal_split() {
        let l = discretize_link(&beam(), 2).unwrap();
        assert_eq!((l.elements.len(), l.springs.len()), (2, 1));
        assert!((l.elements[0].mass - l.elements[1].mass).abs() < 1e-12);
        assert!((l.total_mass() - beam().mass()).abs() < 1e-12);
        assert_eq!(discretize_link(&beam(), 1), Err(Error::InvalidElementCount(1)));
    }

    #[test]
    fn mass_is_preserved() {
        for m in [3, 7, 20, 41] {
            let l = discretize_link(&beam(), m).unwrap();
            assert!((l.total_mass() - beam().mass()).abs() < 1e-10);
        }
    }

    #[test]
    fn aligned_mass_matrix() {
        let e = RigidElement {
            mass: 2.0,
            inertia: Mat3::diagonal([3.0, 3.0, 3.0]),
            center_of_mass: Vec3::ZERO,
            orientation: Mat3::IDENTITY,
        };
        assert_eq!(
            element_mass_matrix(&e),
            Matrix::from_diagonal(&[2.0, 2.0, 2.0, 3.0, 3.0, 3.0])
        );
        let rotated = RigidElement {
            orientation: Mat3::rotation(Vec3::new(1.0, 1.0, 0.0).normalized(), 0.8),
            inertia: Mat3::diagonal([1.0, 2.0, 3.0]),
            ..e
        };
        let m = element_mass_matrix(&rotated);
        assert!((m[(0, 0)] + m[(1, 1)] + m[(2, 2)] - 6.0).abs() < 1e-14);
    }

    #[test]
    fn coupling_pattern() {
        let (c2, c1) = coupling_matrices(0.5, 0.25);
        assert_eq!(c2[(1, 5)], 0.5);
        assert_eq!(c2[(2, 4)], -0.5);
        assert_eq!(c1[(1, 5)], -0.25);
        assert_eq!(c1[(2, 4)], 0.25);
        let (i2, i1) = coupling_matrices(0.0, 0.0);
        assert_eq!(i2, Matrix::identity(6));
        assert_eq!(i1, Matrix::identity(6));
    }

    #[test]
    fn pure_translation_does_not_load_springs() {
        let (c2, c1) = coupling_matrices(0.3, 0.4);
        let q = [0.1, -0.2, 0.3, 0.0, 0.0, 0.0];
        let theta: Vec<f64> = c1.mul_vec(&q).iter().zip(c2.mul_vec(&q)).map(|(a, b)| a - b).collect();
        assert!(theta.iter().all(|t| t.abs() < 1e-15));
    }

    #[test]
    fn release_about_z() {
        let k = release_rotation(&Matrix::identity(6), Vec3::Z);
        assert!(k.sub(&Matrix::from_diagonal(&[1.0, 1.0, 1.0, 1.0, 1.0, 0.0])).max_abs() < 1e-15);
        let kx = release_rotation(&Matrix::identity(6), Vec3::X);
        assert!(
            kx.sub(&Matrix::from_diagonal(&[1.0, 1.0, 1.0, 0.0, 1.0, 1.0]))
                .max_abs()
                < 1e-15
        );
    }

    #[test]
    fn classification_rules() {
        let dof = [DofBlock {
            element: ElementRef::new(0, 0),
            offset: Some(0),
        }];
        assert_eq!(
            classify_mode(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0], &dof),
            ModeClass::OutOfPlaneBending
        );
        assert_eq!(classify_mode(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], &dof), ModeClass::InPlane);
        let h = libm::sqrt(0.5);
        assert_eq!(classify_mode(&[h, 0.0, h, 0.0, 0.0, 0.0], &dof), ModeClass::Other);
    }

    #[test]
    fn free_link_has_six_rigid_modes() {
        let l = discretize_link(&beam(), 8).unwrap();
        let sys = assemble_system(&[l], &[]).unwrap();
        let modes = natural_frequencies(&sys, 7).unwrap();
        assert!(modes[..6].iter().all(|m| m.frequency_hz == 0.0));
        assert!(modes[6].frequency_hz > 0.0);
    }

    #[test]
    fn topology_errors() {
        let l = discretize_link(&beam(), 3).unwrap();
        let bad = [Connection::Clamp(ElementRef::new(0, 3))];
        assert!(matches!(
            assemble_system(std::slice::from_ref(&l), &bad),
            Err(Error::InconsistentTopology(_))
        ));
        let bad = [Connection::RJoint {
            link: 0,
            spring: 2,
            axis: Vec3::Z,
        }];
        assert!(matches!(
            assemble_system(std::slice::from_ref(&l), &bad),
            Err(Error::InconsistentTopology(_))
        ));
        let all: Vec<Connection> = (0..3).map(|e| Connection::Clamp(ElementRef::new(0, e))).collect();
        assert!(matches!(assemble_system(&[l], &all), Err(Error::NoDynamicDof)));
    }
}
