mod common;

use biglide::dataset::MechanismDataset;
use biglide::mechanism::{build_leg_chain, jacobian, workspace_bounds, Leg, LegSprings};
use biglide::numerics::{invert_symmetric, norm, Matrix};
use biglide::simplified::{compliance_simplified, DriveStiffness};
use biglide::spatial::Vec3;
use biglide::vjm::{chain_stiffness, passive_jacobian, spring_jacobian, LinkCompliances, RefinedStiffnessModel};
use common::{fd_twist, ifw, interior_points, max_eigen, max_rel_diff, min_eigen};
use proptest::prelude::*;

fn springs(tool: bool) -> (LegSprings, LegSprings) {
    let ds = MechanismDataset::ifw();
    let c = ds.link_compliances(tool).unwrap();
    let inv = |m: &Matrix| invert_symmetric(m).unwrap();
    (
        LegSprings {
            foot: inv(&c.foot),
            leg: inv(&c.leg1),
            tool: c.tool.as_ref().map(inv),
        },
        LegSprings {
            foot: inv(&c.foot),
            leg: inv(&c.leg2),
            tool: None,
        },
    )
}

#[test]
fn chain_jacobians_match_finite_differences() {
    let g = ifw();
    let (s1, s2) = springs(true);
    let h = 1e-7;
    for offset in [Vec3::ZERO, Vec3::new(0.0, 0.0, -g.l_tool)] {
        for x in interior_points(&g, 20, 11) {
            for (leg, s) in [(Leg::One, &s1), (Leg::Two, &s2)] {
                let chain = build_leg_chain(&g, leg, x, 0.0, s, offset).unwrap();
                let (ns, np) = (6 * chain.spring_count(), chain.passive_count());
                let mid = chain.pose();

                let jt = spring_jacobian(&chain);
                let mut fd = Matrix::zeros(6, ns);
                for c in 0..ns {
                    let mut th = vec![0.0; ns];
                    th[c] = h;
                    let plus = chain.pose_with(&th, &vec![0.0; np]);
                    th[c] = -h;
                    let minus = chain.pose_with(&th, &vec![0.0; np]);
                    fd.set_column(c, &fd_twist(&plus, &minus, &mid, h));
                }
                assert!(max_rel_diff(&jt, &fd) < 1e-6, "J_theta, leg {leg:?}, x = {x}");

                let jq = passive_jacobian(&chain);
                let mut fd = Matrix::zeros(6, np);
                for c in 0..np {
                    let mut dq = vec![0.0; np];
                    dq[c] = h;
                    let plus = chain.pose_with(&vec![0.0; ns], &dq);
                    dq[c] = -h;
                    let minus = chain.pose_with(&vec![0.0; ns], &dq);
                    fd.set_column(c, &fd_twist(&plus, &minus, &mid, h));
                }
                assert!(max_rel_diff(&jq, &fd) < 1e-6, "J_q, leg {leg:?}, x = {x}");
            }
        }
    }
}

#[test]
fn chain_lengths() {
    let g = ifw();
    let (s1, s2) = springs(false);
    let (t1, _) = springs(true);
    let x = 0.5;
    let l1 = build_leg_chain(&g, Leg::One, x, 0.0, &s1, Vec3::ZERO).unwrap();
    let l1t = build_leg_chain(&g, Leg::One, x, 0.0, &t1, Vec3::ZERO).unwrap();
    let l2 = build_leg_chain(&g, Leg::Two, x, 0.0, &s2, Vec3::ZERO).unwrap();
    assert_eq!(l2.elements.len(), l1.elements.len() + 1);
    assert_eq!(l1t.elements.len(), 9);
    assert_eq!((l1.passive_count(), l2.passive_count()), (1, 2));
}

#[test]
fn leg_stiffness_is_symmetric_psd_and_ignores_passive_motion() {
    let g = ifw();
    let (s1, s2) = springs(true);
    for x in interior_points(&g, 15, 5) {
        for (leg, s) in [(Leg::One, &s1), (Leg::Two, &s2)] {
            let chain = build_leg_chain(&g, leg, x, 0.0, s, Vec3::ZERO).unwrap();
            let k = chain_stiffness(&chain).unwrap();
            assert!(k.asymmetry() <= 1e-8);
            assert!(min_eigen(&k) >= -1e-9 * max_eigen(&k));
            let jq = passive_jacobian(&chain);
            for c in 0..jq.cols() {
                let col = jq.column(c);
                assert!(norm(&k.mul_vec(&col)) <= 1e-9 * k.frobenius_norm() * norm(&col));
            }
        }
    }
}

#[test]
fn stiffer_leg_spring_never_softens_the_leg() {
    let g = ifw();
    let (s1, _) = springs(true);
    for c in [1.5, 3.0, 10.0] {
        let stiffer = LegSprings {
            leg: s1.leg.scale(c),
            ..s1.clone()
        };
        for x in interior_points(&g, 8, 19) {
            let k = chain_stiffness(&build_leg_chain(&g, Leg::One, x, 0.0, &s1, Vec3::ZERO).unwrap()).unwrap();
            let kc = chain_stiffness(&build_leg_chain(&g, Leg::One, x, 0.0, &stiffer, Vec3::ZERO).unwrap()).unwrap();
            let d = kc.sub(&k);
            assert!(min_eigen(&d) >= -1e-9 * max_eigen(&kc), "c = {c}, x = {x}");
        }
    }
}

#[test]
fn rigid_links_reduce_to_the_drive_only_model() {
    let g = ifw();
    let eps = 1e-6 / 1e9;
    let mut foot = Matrix::from_diagonal(&[eps; 6]);
    foot[(1, 1)] = 1.0 / 1e9;
    let c = LinkCompliances {
        foot,
        leg1: Matrix::from_diagonal(&[eps; 6]),
        leg2: Matrix::from_diagonal(&[eps; 6]),
        tool: None,
    };
    let model = RefinedStiffnessModel::new(g, &c, Vec3::ZERO).unwrap();
    let k = DriveStiffness::uniform(1e9, 2).unwrap();
    for x in interior_points(&g, 10, 23) {
        let refined = invert_symmetric(&model.stiffness(x, 0.0).unwrap()).unwrap();
        let simple = compliance_simplified(&jacobian(&g, x, 0.0).unwrap(), &k);
        let planar = refined.block(0, 0, 2, 2);
        assert!(max_rel_diff(&planar, &simple) < 1e-2, "x = {x}");
    }
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    for (rank, i) in idx.into_iter().enumerate() {
        r[i] = rank as f64;
    }
    r
}

fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let mean = (n - 1.0) / 2.0;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - mean) * (y - mean)).sum();
    let var: f64 = ra.iter().map(|x| (x - mean) * (x - mean)).sum();
    cov / var
}

#[test]
fn refined_and_simplified_profiles_agree() {
    let ds = MechanismDataset::ifw();
    let g = ds.geometry;
    let model = RefinedStiffnessModel::new(g, &ds.link_compliances(true).unwrap(), Vec3::ZERO).unwrap();
    let k = ds.drive().unwrap();
    let xs = workspace_bounds(&g).unwrap().grid(41, 1e-3);
    let (mut simple, mut refined) = (Vec::new(), Vec::new());
    for &x in &xs {
        let c = compliance_simplified(&jacobian(&g, x, 0.0).unwrap(), &k);
        simple.push(norm(&c.mul_vec(&[1000.0, 0.0])));
        let d = model.deflection(x, 0.0, [1000.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        refined.push(norm(&d[..2]));
    }
    let rho = spearman(&simple, &refined);
    assert!(rho >= 0.9, "rank correlation {rho}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn platform_stiffness_is_positive_definite(u in 0.01f64..0.99, tool in any::<bool>()) {
        let ds = MechanismDataset::ifw();
        let g = ds.geometry;
        let b = workspace_bounds(&g).unwrap();
        let model = RefinedStiffnessModel::new(g, &ds.link_compliances(tool).unwrap(), Vec3::ZERO).unwrap();
        let k = model.stiffness(b.x_min + u * b.stroke, 0.0).unwrap();
        prop_assert!(k.asymmetry() <= 1e-8);
        prop_assert!(min_eigen(&k) > 0.0);
    }
}
