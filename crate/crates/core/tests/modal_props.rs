mod common;

use biglide::beam::BeamParams;
use biglide::dataset::MechanismDataset;
use biglide::mechanism::workspace_bounds;
use biglide::modal::{
    assemble_system, discretize_link, natural_frequencies, Connection, DiscretizedLink, ElementRef, ModeClass,
};
use biglide::numerics::{dot, generalized_eigs, norm};
use biglide::spatial::{Mat3, Vec3};
use common::min_eigen;
use std::f64::consts::PI;

/// Smallest positive root of `f` above `lo`, by scanning then bisection.
fn first_root(f: impl Fn(f64) -> f64, lo: f64) -> f64 {
    let (mut a, step) = (lo, 1e-3);
    while f(a) * f(a + step) > 0.0 {
        a += step;
    }
    let mut b = a + step;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(a) * f(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// Euler–Bernoulli first bending frequency, Hz, for eigenvalue `βL`.
fn bending_hz(beta_l: f64, ei: f64, rho: f64, l: f64) -> f64 {
    beta_l * beta_l / (2.0 * PI * l * l) * (ei / rho).sqrt()
}

fn cantilever_root() -> f64 {
    first_root(|b| 1.0 + b.cos() * b.cosh(), 0.5)
}

fn clamped_clamped_root() -> f64 {
    first_root(|b| b.cos() * b.cosh() - 1.0, 1.0)
}

fn leg1() -> BeamParams {
    MechanismDataset::ifw().equivalent_beams().unwrap().0
}

fn clamped_first(link: DiscretizedLink, clamp_last: bool) -> f64 {
    let last = link.last_element();
    let mut c = vec![Connection::Clamp(ElementRef::new(0, 0))];
    if clamp_last {
        c.push(Connection::Clamp(ElementRef::new(0, last)));
    }
    natural_frequencies(&assemble_system(&[link], &c).unwrap(), 1).unwrap()[0].frequency_hz
}

fn analytic_cantilever(b: &BeamParams) -> f64 {
    let r = cantilever_root();
    bending_hz(r, b.ei_y.min(b.ei_z), b.mass_per_length, b.length)
}

#[test]
fn analytic_roots() {
    assert!((cantilever_root() - 1.8751).abs() < 1e-4);
    assert!((clamped_clamped_root() - 4.7300).abs() < 1e-4);
}

#[test]
fn cantilever_within_one_percent() {
    let b = leg1();
    let f = clamped_first(discretize_link(&b, 20).unwrap(), false);
    let fa = analytic_cantilever(&b);
    assert!((f - fa).abs() / fa < 0.01, "{f} vs {fa}");
}

#[test]
fn cantilever_error_shrinks_with_elements() {
    let b = leg1();
    let fa = analytic_cantilever(&b);
    let errs: Vec<f64> = [5, 10, 20, 40]
        .iter()
        .map(|&m| (clamped_first(discretize_link(&b, m).unwrap(), false) - fa).abs())
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] <= w[0] + 1e-3 * fa, "{errs:?}");
    }
}

#[test]
fn clamped_clamped_ratio() {
    let b = leg1();
    let cf = clamped_first(discretize_link(&b, 20).unwrap(), false);
    let cc = clamped_first(discretize_link(&b, 20).unwrap(), true);
    let expected = (clamped_clamped_root() / cantilever_root()).powi(2);
    assert!((cc / cf / expected - 1.0).abs() < 0.02, "{} vs {expected}", cc / cf);
}

#[test]
fn spring_scaling_gives_root_scaling() {
    let base = discretize_link(&leg1(), 12).unwrap();
    let f0 = {
        let sys = assemble_system(std::slice::from_ref(&base), &[Connection::Clamp(ElementRef::new(0, 0))]).unwrap();
        natural_frequencies(&sys, 10).unwrap()
    };
    for c in [4.0, 9.0] {
        let mut link = base.clone();
        for s in &mut link.springs {
            s.stiffness = s.stiffness.scale(c);
        }
        let sys = assemble_system(&[link], &[Connection::Clamp(ElementRef::new(0, 0))]).unwrap();
        for (a, b) in f0.iter().zip(natural_frequencies(&sys, 10).unwrap()) {
            let want = c.sqrt() * a.frequency_hz;
            assert!((b.frequency_hz - want).abs() <= 1e-9 * want);
        }
    }
}

fn tilted_link(m: usize) -> DiscretizedLink {
    discretize_link(&leg1(), m).unwrap().placed(
        Vec3::new(0.3, -0.2, 0.1),
        Mat3::rotation(Vec3::new(1.0, 2.0, 3.0).normalized(), 0.7),
    )
}

#[test]
fn free_links_have_exactly_six_rigid_modes() {
    for m in [2, 5, 20] {
        let sys = assemble_system(&[tilted_link(m)], &[]).unwrap();
        let sol = generalized_eigs(&sys.stiffness, &sys.mass).unwrap();
        let zero = sol.values.iter().filter(|v| **v <= 1e-9 * sol.values[6]).count();
        assert_eq!(zero, 6, "m = {m}");
        assert!(sol.values[6] > 0.0);
    }
}

/// Per-element coordinates of a small rigid motion `(v, ω)` about `p`.
fn rigid_motion(link: &DiscretizedLink, range: std::ops::Range<usize>, p: Vec3, v: Vec3, w: Vec3) -> Vec<f64> {
    let mut q = vec![0.0; 6 * link.elements.len()];
    for k in range {
        let t = v + w.cross(link.elements[k].center_of_mass - p);
        q[6 * k..6 * k + 6].copy_from_slice(&[t.x, t.y, t.z, w.x, w.y, w.z]);
    }
    q
}

#[test]
fn rigid_motions_are_in_the_stiffness_nullspace() {
    let link = tilted_link(9);
    let sys = assemble_system(std::slice::from_ref(&link), &[]).unwrap();
    let k = &sys.stiffness;
    let scale = k.frobenius_norm();
    let n = link.elements.len();
    for (v, w) in [
        (Vec3::X, Vec3::ZERO),
        (Vec3::Y, Vec3::ZERO),
        (Vec3::Z, Vec3::ZERO),
        (Vec3::ZERO, Vec3::X),
        (Vec3::ZERO, Vec3::Y),
        (Vec3::ZERO, Vec3::Z),
    ] {
        let q = rigid_motion(&link, 0..n, Vec3::new(1.0, 0.5, -0.3), v, w);
        let kq = k.mul_vec(&q);
        assert!(norm(&kq) <= 1e-8 * scale * norm(&q));
    }
}

#[test]
fn released_joint_rotates_freely() {
    for axis in [Vec3::Z, Vec3::new(0.3, -0.4, 0.8).normalized()] {
        let link = tilted_link(8);
        let spring = 3;
        let at = link.springs[spring].position;
        let sys = assemble_system(
            std::slice::from_ref(&link),
            &[Connection::RJoint { link: 0, spring, axis }],
        )
        .unwrap();
        let q = rigid_motion(&link, spring + 1..link.elements.len(), at, Vec3::ZERO, axis);
        let energy = dot(&q, &sys.stiffness.mul_vec(&q));
        assert!(energy.abs() <= 1e-12 * sys.stiffness.frobenius_norm() * dot(&q, &q));
        // Without the release the same motion strains the spring.
        let stiff = assemble_system(std::slice::from_ref(&link), &[]).unwrap();
        assert!(dot(&q, &stiff.stiffness.mul_vec(&q)) > 1e-6 * stiff.stiffness.frobenius_norm() * dot(&q, &q));
    }
}

#[test]
fn point_mass_adds_translational_inertia() {
    let link = discretize_link(&leg1(), 4).unwrap();
    let a = assemble_system(std::slice::from_ref(&link), &[]).unwrap();
    let b = assemble_system(
        &[link],
        &[Connection::PointMass {
            element: ElementRef::new(0, 3),
            mass: 46.0,
        }],
    )
    .unwrap();
    let d = b.mass.sub(&a.mass);
    for i in 0..d.rows() {
        let want = if (18..21).contains(&i) { 46.0 } else { 0.0 };
        assert_eq!(d[(i, i)], want);
    }
}

#[test]
fn full_mechanism_modes() {
    let ds = MechanismDataset::ifw();
    let model = ds.default_modal_model().unwrap();
    let x = workspace_bounds(&ds.geometry).unwrap().center();
    let sys = model.assemble(x, 0.0).unwrap();
    assert_eq!(sys.dof_count(), 6 * 40);
    assert!(sys.stiffness.asymmetry() <= 1e-12);
    assert!(sys.mass.asymmetry() <= 1e-12);
    assert!(min_eigen(&sys.mass) > 0.0);
    let k = &sys.stiffness;
    assert!(min_eigen(k) >= -1e-9 * k.max_abs() * k.rows() as f64);
    let sol = generalized_eigs(&sys.stiffness, &sys.mass).unwrap();
    assert!(sol.values.iter().all(|v| *v > 0.0), "no rigid-body mode may remain");
    let modes = natural_frequencies(&sys, 2).unwrap();
    assert_eq!(modes[0].class, ModeClass::OutOfPlaneBending);
    assert_eq!(modes[1].class, ModeClass::InPlane);
    assert!((norm(&modes[0].shape) - 1.0).abs() < 1e-12);
}
