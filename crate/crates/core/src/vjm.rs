//! Virtual-joint (lumped 6-DOF spring) stiffness model.
//!
//! Each leg is a serial chain of rigid transforms, a locked actuator, passive
//! revolute joints and 6-DOF virtual springs. Around the nominal posture the
//! end twist is `δt = J_q δq + J_θ δθ`; eliminating the passive coordinates
//! from the bordered system
//!
//! ```text
//! [ S_θ   J_q ] [ f  ]   [ δt ]
//! [ J_qᵀ  0   ] [ δq ] = [ 0  ],     S_θ = J_θ K_θ⁻¹ J_θᵀ
//! ```
//!
//! gives the leg stiffness as the upper-left block of the bordered inverse.
//! Legs act in parallel, so the platform stiffness is their sum.
//!
//! Twists and wrenches are 6-vectors `(translation, rotation)` /
//! `(force, moment)` expressed in the base frame at the chain end point.

use alloc::vec::Vec;

use crate::mechanism::{build_leg_chain, ChainElement, Geometry, Leg, LegChain, LegSprings};
use crate::numerics::{invert, invert_symmetric, Cholesky, Matrix};
use crate::spatial::{Transform, Vec3};
use crate::{Error, Result};

fn prefix_suffix(chain: &LegChain) -> (Vec<Transform>, Vec<Transform>) {
    let n = chain.elements.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(Transform::IDENTITY);
    for e in &chain.elements {
        let last = *prefix.last().unwrap();
        prefix.push(last.compose(&e.nominal()));
    }
    let mut suffix = alloc::vec![Transform::IDENTITY; n + 1];
    for i in (0..n).rev() {
        suffix[i] = chain.elements[i].nominal().compose(&suffix[i + 1]);
    }
    (prefix, suffix)
}

// End twist produced by the generator (ω, v) inserted between `left` and
// `right`: p' = R_L (ω × p_R + v), φ' = R_L ω.
fn twist_column(left: &Transform, right: &Transform, omega: Vec3, v: Vec3) -> [f64; 6] {
    let p = left.rotation * (omega.cross(right.translation) + v);
    let w = left.rotation * omega;
    [p.x, p.y, p.z, w.x, w.y, w.z]
}

/// `J_θ`: 6 × (6·springs). Column `6s + j` is the end twist per unit
/// deflection of coordinate `j` of spring `s`.
pub fn spring_jacobian(chain: &LegChain) -> Matrix {
    let (prefix, suffix) = prefix_suffix(chain);
    let mut j = Matrix::zeros(6, 6 * chain.spring_count());
    let mut col = 0;
    for (i, e) in chain.elements.iter().enumerate() {
        if let ChainElement::VirtualSpring6 { .. } = e {
            let (left, right) = (&prefix[i], &suffix[i + 1]);
            let axes = [Vec3::X, Vec3::Y, Vec3::Z];
            for axis in axes {
                j.set_column(col, &twist_column(left, right, Vec3::ZERO, axis));
                col += 1;
            }
            for axis in axes {
                j.set_column(col, &twist_column(left, right, axis, Vec3::ZERO));
                col += 1;
            }
        }
    }
    j
}

/// `J_q`: 6 × passive-joint count, differentiated at the nominal angles.
pub fn passive_jacobian(chain: &LegChain) -> Matrix {
    let (prefix, suffix) = prefix_suffix(chain);
    let mut j = Matrix::zeros(6, chain.passive_count());
    let mut col = 0;
    for (i, e) in chain.elements.iter().enumerate() {
        if let ChainElement::PassiveRevolute { axis, .. } = e {
            // d/dq Rot(axis, q) = skew(axis) Rot(axis, q): the joint itself
            // stays on the right of the generator.
            j.set_column(col, &twist_column(&prefix[i], &suffix[i], *axis, Vec3::ZERO));
            col += 1;
        }
    }
    j
}

/// `K_θ = blockdiag(k₁⁻¹, k₂⁻¹, …)` from per-spring compliance matrices.
pub fn assemble_k_theta(compliances: &[&Matrix]) -> Result<Matrix> {
    let blocks = compliances
        .iter()
        .map(|c| invert_symmetric(c))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(Matrix::block_diagonal(&refs))
}

/// `K_θ` taken from the spring stiffnesses stored in a chain.
pub fn chain_k_theta(chain: &LegChain) -> Matrix {
    Matrix::block_diagonal(&chain.spring_stiffnesses())
}

/// Leg stiffness from the bordered `(6 + n_q)` system.
pub fn leg_cartesian_stiffness(j_theta: &Matrix, j_q: &Matrix, k_theta: &Matrix) -> Result<Matrix> {
    if j_theta.rows() != 6 || j_q.rows() != 6 || k_theta.rows() != j_theta.cols() {
        return Err(Error::DimensionMismatch("J_theta, J_q and K_theta do not agree"));
    }
    let compliance = invert_symmetric(k_theta)?;
    let s_theta = j_theta
        .matmul(&compliance)
        .matmul(&j_theta.transpose())
        .symmetric_part();
    let nq = j_q.cols();
    if nq == 0 {
        return invert_symmetric(&s_theta).map_err(|_| Error::SingularBorderedSystem);
    }

    // Equilibrate: [S J; Jᵀ 0] = D [S/s J; Jᵀ 0] D with D = diag(√s I, I/√s),
    // so the wanted block is (1/s) times the block of the scaled inverse.
    let s = s_theta.max_abs();
    if !(s > 0.0) {
        return Err(Error::SingularBorderedSystem);
    }
    let mut bordered = Matrix::zeros(6 + nq, 6 + nq);
    bordered.set_block(0, 0, &s_theta.scale(1.0 / s));
    bordered.set_block(0, 6, j_q);
    bordered.set_block(6, 0, &j_q.transpose());
    let inv = invert(&bordered).map_err(|_| Error::SingularBorderedSystem)?;
    Ok(inv.block(0, 0, 6, 6).scale(1.0 / s).symmetric_part())
}

/// Stiffness of one leg chain.
pub fn chain_stiffness(chain: &LegChain) -> Result<Matrix> {
    leg_cartesian_stiffness(&spring_jacobian(chain), &passive_jacobian(chain), &chain_k_theta(chain))
}

/// Parallel legs: `K_m = Σ K_i`.
pub fn manipulator_stiffness(legs: &[Matrix]) -> Matrix {
    let mut k = Matrix::zeros(6, 6);
    for leg in legs {
        k.add_assign(leg);
    }
    k
}

/// End twist `δt = K_m⁻¹ f` under the wrench `f`.
pub fn deflection_refined(k_m: &Matrix, wrench: [f64; 6]) -> Result<[f64; 6]> {
    if wrench.iter().all(|w| *w == 0.0) {
        return Ok([0.0; 6]);
    }
    let chol = Cholesky::new(k_m).map_err(|_| Error::Singular)?;
    let t = chol.solve(&wrench);
    Ok([t[0], t[1], t[2], t[3], t[4], t[5]])
}

/// Compliances that parameterize the refined stiffness model.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkCompliances {
    pub foot: Matrix,
    pub leg1: Matrix,
    pub leg2: Matrix,
    pub tool: Option<Matrix>,
}

/// Refined stiffness model of the whole mechanism at arbitrary postures.
#[derive(Debug, Clone)]
pub struct RefinedStiffnessModel {
    geometry: Geometry,
    leg1: LegSprings,
    leg2: LegSprings,
    tool_offset: Vec3,
}

impl RefinedStiffnessModel {
    pub fn new(geometry: Geometry, compliances: &LinkCompliances, tool_offset: Vec3) -> Result<Self> {
        let foot = invert_symmetric(&compliances.foot)?;
        let leg1 = LegSprings {
            foot: foot.clone(),
            leg: invert_symmetric(&compliances.leg1)?,
            tool: compliances.tool.as_ref().map(invert_symmetric).transpose()?,
        };
        let leg2 = LegSprings {
            foot,
            leg: invert_symmetric(&compliances.leg2)?,
            tool: None,
        };
        Ok(Self {
            geometry,
            leg1,
            leg2,
            tool_offset,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn chain(&self, leg: Leg, x: f64, y: f64) -> Result<LegChain> {
        let springs = match leg {
            Leg::One => &self.leg1,
            Leg::Two => &self.leg2,
        };
        build_leg_chain(&self.geometry, leg, x, y, springs, self.tool_offset)
    }

    pub fn leg_stiffness(&self, leg: Leg, x: f64, y: f64) -> Result<Matrix> {
        chain_stiffness(&self.chain(leg, x, y)?)
    }

    pub fn stiffness(&self, x: f64, y: f64) -> Result<Matrix> {
        Ok(manipulator_stiffness(&[
            self.leg_stiffness(Leg::One, x, y)?,
            self.leg_stiffness(Leg::Two, x, y)?,
        ]))
    }

    pub fn deflection(&self, x: f64, y: f64, wrench: [f64; 6]) -> Result<[f64; 6]> {
        deflection_refined(&self.stiffness(x, y)?, wrench)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_of(elements: Vec<ChainElement>) -> LegChain {
        LegChain {
            leg: Leg::One,
            elements,
        }
    }

    fn unit_spring() -> ChainElement {
        ChainElement::VirtualSpring6 {
            stiffness: Matrix::identity(6),
        }
    }

    #[test]
    fn rotation_spring_with_unit_lever() {
        let c = chain_of(alloc::vec![
            unit_spring(),
            ChainElement::RigidTransform(Transform::translation(Vec3::X)),
        ]);
        let j = spring_jacobian(&c);
        // Rotation about z at unit distance: p' = (0, 1, 0), φ' = (0, 0, 1).
        assert_eq!(j.column(5), alloc::vec![0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(j.column(0), alloc::vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn passive_joint_at_tool_point() {
        let c = chain_of(alloc::vec![
            ChainElement::RigidTransform(Transform::translation(Vec3::new(0.3, 0.2, 0.0))),
            ChainElement::PassiveRevolute {
                axis: Vec3::Z,
                angle: 0.4
            },
            ChainElement::PassiveRevolute {
                axis: Vec3::Z,
                angle: -0.4
            },
        ]);
        let j = passive_jacobian(&c);
        assert_eq!(j.cols(), 2);
        for col in 0..2 {
            let v = j.column(col);
            for (a, b) in v.iter().zip([0.0, 0.0, 0.0, 0.0, 0.0, 1.0]) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn bordered_solve_by_hand() {
        let mut jq = Matrix::zeros(6, 1);
        jq[(5, 0)] = 1.0;
        let k = leg_cartesian_stiffness(&Matrix::identity(6), &jq, &Matrix::identity(6)).unwrap();
        let expected = Matrix::from_diagonal(&[1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
        assert!(k.sub(&expected).max_abs() < 1e-14);
    }

    #[test]
    fn no_passive_joints_inverts_s_theta() {
        let jt = Matrix::from_diagonal(&[1.0, 2.0, 1.0, 1.0, 0.5, 1.0]);
        let kt = Matrix::from_diagonal(&[4.0; 6]);
        let k = leg_cartesian_stiffness(&jt, &Matrix::zeros(6, 0), &kt).unwrap();
        assert!((k[(1, 1)] - 1.0).abs() < 1e-14);
        assert!((k[(4, 4)] - 16.0).abs() < 1e-13);
    }

    #[test]
    fn k_theta_is_block_diagonal() {
        let a = Matrix::identity(6);
        let b = Matrix::from_diagonal(&[2.0, 2.0, 2.0, 4.0, 4.0, 4.0]);
        let k = assemble_k_theta(&[&a, &b]).unwrap();
        assert_eq!(k.rows(), 12);
        assert_eq!(k.block(0, 6, 6, 6), Matrix::zeros(6, 6));
        assert_eq!(k.block(6, 0, 6, 6), Matrix::zeros(6, 6));
        assert_eq!(k.block(0, 0, 6, 6), Matrix::identity(6));
        assert!((k[(9, 9)] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn summing_legs() {
        let k = Matrix::from_diagonal(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(manipulator_stiffness(std::slice::from_ref(&k)), k);
        assert_eq!(manipulator_stiffness(&[k.clone(), k.clone()]), k.scale(2.0));
    }

    #[test]
    fn zero_wrench_gives_zero_twist() {
        assert_eq!(deflection_refined(&Matrix::identity(6), [0.0; 6]).unwrap(), [0.0; 6]);
    }

    #[test]
    fn singular_stiffness_is_reported() {
        let k = Matrix::from_diagonal(&[1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
        assert_eq!(
            deflection_refined(&k, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            Err(Error::Singular)
        );
    }
}
