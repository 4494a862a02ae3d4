mod common;

use biglide::beam::scale_geometry;
use biglide::dataset::MechanismDataset;
use biglide::mechanism::{jacobian, workspace_bounds};
use biglide::numerics::Matrix;
use biglide::simplified::{compliance_simplified, frequencies_simplified, DriveStiffness, PlatformInertia};
use biglide::spatial::Mat3;
use biglide::sweep::*;
use common::{ifw, min_eigen};
use proptest::prelude::*;

fn quick() -> SweepOptions {
    SweepOptions {
        grid: 9,
        elements: 6,
        ..SweepOptions::default()
    }
}

#[test]
fn sweeps_are_deterministic() {
    let ds = MechanismDataset::ifw();
    let o = quick();
    for m in [ModelKind::SimplifiedStiffness, ModelKind::RefinedStiffness] {
        assert_eq!(stiffness_map(&ds, m, &o).unwrap(), stiffness_map(&ds, m, &o).unwrap());
    }
    let alphas = [0.8, 1.0, 1.2];
    let a = alpha_sweep(&ds, &alphas, &StationSet::all(), &ModelKind::ALL, &o).unwrap();
    let b = alpha_sweep(&ds, &alphas, &StationSet::all(), &ModelKind::ALL, &o).unwrap();
    assert_eq!(a, b);
}

#[test]
fn unit_alpha_matches_the_map() {
    let ds = MechanismDataset::ifw();
    // Odd grid without shrink: index (n-1)/2 is the workspace centre.
    let o = SweepOptions {
        grid: 41,
        shrink: 0.0,
        link_model: LinkModel::EquivalentBeam,
        ..SweepOptions::default()
    };
    for model in [ModelKind::SimplifiedStiffness, ModelKind::RefinedStiffness] {
        let map = stiffness_map(&ds, model, &o).unwrap();
        let center = workspace_bounds(&ds.geometry).unwrap().center();
        let sweep = alpha_sweep(&ds, &[1.0], &StationSet::all(), &[model], &o).unwrap();
        for r in &sweep {
            let xs: Vec<f64> = map.iter().map(|m| m.x).collect();
            let nearest = map
                .iter()
                .filter(|m| m.metric == r.metric)
                .min_by(|a, b| (a.x - r.x).abs().total_cmp(&(b.x - r.x).abs()))
                .unwrap();
            assert!((nearest.x - r.x).abs() < 1e-12, "{} not on grid {xs:?}", r.x);
            let rel = (nearest.value - r.value).abs() / nearest.value.abs().max(1e-300);
            assert!(
                rel <= 1e-12 || nearest.value == r.value,
                "{model:?} {} rel {rel}",
                r.metric
            );
        }
        assert!(sweep.iter().any(|r| (r.x - center).abs() < 1e-12));
    }
}

#[test]
fn records_stay_in_their_own_workspace() {
    let ds = MechanismDataset::ifw();
    let o = quick();
    let recs = alpha_sweep(&ds, &default_alpha_grid(), &StationSet::all(), &ModelKind::ALL, &o).unwrap();
    for r in &recs {
        let (g, _) = scale_geometry(&ds.geometry, ds.leg_masses(), r.alpha).unwrap();
        let b = workspace_bounds(&g).unwrap();
        assert!(r.x >= b.x_min && r.x <= b.x_max, "{r:?}");
        assert!(r.value.is_finite());
    }
}

#[test]
fn long_legs_split_the_models() {
    let ds = MechanismDataset::ifw();
    let o = SweepOptions {
        elements: 10,
        ..SweepOptions::default()
    };
    let recs = alpha_sweep(
        &ds,
        &default_alpha_grid(),
        &StationSet::center(),
        &[ModelKind::SimplifiedModal, ModelKind::RefinedModal],
        &o,
    )
    .unwrap();
    let verdict = |m: ModelKind| {
        trend_report(&recs)
            .into_iter()
            .find(|v| v.model == m && v.metric == METRIC_F1)
            .unwrap()
            .trend
    };
    assert_eq!(verdict(ModelKind::SimplifiedModal), Trend::Increasing);
    assert_eq!(verdict(ModelKind::RefinedModal), Trend::Decreasing);
}

#[test]
fn report_skips_short_series_and_codes() {
    let rec = |alpha: f64, metric: &str, value: f64| SweepRecord {
        model: ModelKind::RefinedModal,
        alpha,
        x: 0.5,
        station: Some(Station::Center),
        metric: metric.to_string(),
        value,
    };
    let recs = vec![
        rec(1.2, METRIC_F1, 1.0),
        rec(1.0, METRIC_F1, 3.0),
        rec(1.1, METRIC_F1, 2.0),
        rec(1.0, METRIC_MODE1, 0.0),
        rec(1.1, METRIC_MODE1, 0.0),
        rec(1.2, METRIC_MODE1, 0.0),
        rec(1.0, METRIC_F2, 1.0),
    ];
    let report = trend_report(&recs);
    assert_eq!(report.len(), 1);
    assert_eq!(report[0].trend, Trend::Decreasing);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn drive_model_invariants(u in 0.01f64..0.99, fx in -1e3f64..1e3, fy in -1e3f64..1e3, s in 0.1f64..10.0, turn in 0.0f64..6.3) {
        let g = ifw();
        let b = workspace_bounds(&g).unwrap();
        let j = jacobian(&g, b.x_min + u * b.stroke, 0.0).unwrap();
        let k = DriveStiffness::uniform(1e9, 2).unwrap();

        let c = compliance_simplified(&j, &k);
        prop_assert!(c.asymmetry() < 1e-12);
        prop_assert!(min_eigen(&c.symmetric_part()) > 0.0);

        let d1 = biglide::simplified::deflection_simplified(&j, &k, [fx, fy]);
        let d2 = biglide::simplified::deflection_simplified(&j, &k, [s * fx, s * fy]);
        for i in 0..2 {
            prop_assert!((d2[i] - s * d1[i]).abs() <= 1e-12 * d2[i].abs().max(1e-20));
        }

        let m = PlatformInertia::point_mass(46.0).unwrap();
        let f = frequencies_simplified(&j, &k, &m).unwrap();
        prop_assert_eq!(f.len(), 2);

        // Re-express the platform plane in rotated axes: J → R J, M → R M Rᵀ.
        let r = Mat3::rot_z(turn).to_matrix().block(0, 0, 2, 2);
        let mass = Matrix::from_rows(&[[46.0, 3.0], [3.0, 20.0]]);
        let a = frequencies_simplified(&j, &k, &PlatformInertia::new(mass.clone()).unwrap()).unwrap();
        let rm = PlatformInertia::new(r.matmul(&mass).matmul(&r.transpose())).unwrap();
        let bb = frequencies_simplified(&r.matmul(&j), &k, &rm).unwrap();
        for (x, y) in a.iter().zip(&bb) {
            prop_assert!((x - y).abs() <= 1e-9 * x);
        }
    }
}
