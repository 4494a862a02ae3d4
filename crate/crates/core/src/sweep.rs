//! Workspace maps and leg-length (α) studies for the four models.
//!
//! All loops are sequential and produce records in a fixed order, so the same
//! inputs always give bit-identical output.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::beam::{beam_end_compliance, scale_geometry, BeamParams};
use crate::dataset::{LinkMatrix, MechanismDataset};
use crate::mechanism::{jacobian, jacobian_allow_type1, workspace_bounds, Geometry, WorkspaceBounds};
use crate::modal::{MechanismModalModel, DEFAULT_ELEMENTS};
use crate::numerics::norm;
use crate::simplified::{deflection_simplified, frequencies_simplified};
use crate::spatial::Vec3;
use crate::vjm::{LinkCompliances, RefinedStiffnessModel};
use crate::{Error, Result};

pub const DEFAULT_GRID: usize = 41;
/// Endpoint shrink `δ / d` for grids that must avoid the stroke limits.
pub const DEFAULT_SHRINK: f64 = 1e-3;
pub const DEFAULT_LOAD: f64 = 1000.0;
/// Relative slack in [`trend`].
pub const TREND_SLACK: f64 = 1e-9;

pub const METRIC_PLANAR_FX: &str = "planar_fx_m";
pub const METRIC_PLANAR_FY: &str = "planar_fy_m";
pub const METRIC_Z_FZ: &str = "z_fz_m";
pub const METRIC_F1: &str = "f1_hz";
pub const METRIC_F2: &str = "f2_hz";
pub const METRIC_MODE1: &str = "mode1_class";
pub const METRIC_MODE2: &str = "mode2_class";

/// `{0.7, 0.8, …, 1.3}`.
pub fn default_alpha_grid() -> Vec<f64> {
    alpha_grid(0.7, 1.3, 0.1)
}

/// Inclusive grid `min, min + step, …`, computed as `min + i·step` and
/// rounded to 12 decimals so that nominal values such as 0.8 come out exact.
pub fn alpha_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || !(max >= min) || !min.is_finite() || !max.is_finite() {
        return Vec::new();
    }
    let n = libm::floor((max - min) / step + 1e-9) as usize;
    (0..=n)
        .map(|i| libm::round((min + i as f64 * step) * 1e12) / 1e12)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    SimplifiedStiffness,
    RefinedStiffness,
    SimplifiedModal,
    RefinedModal,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::SimplifiedStiffness,
        ModelKind::RefinedStiffness,
        ModelKind::SimplifiedModal,
        ModelKind::RefinedModal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::SimplifiedStiffness => "simplified_stiffness",
            ModelKind::RefinedStiffness => "refined_stiffness",
            ModelKind::SimplifiedModal => "simplified_modal",
            ModelKind::RefinedModal => "refined_modal",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ModelKind::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn is_modal(self) -> bool {
        matches!(self, ModelKind::SimplifiedModal | ModelKind::RefinedModal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Station {
    Left,
    Center,
    Right,
}

impl Station {
    pub fn name(self) -> &'static str {
        match self {
            Station::Left => "left",
            Station::Center => "center",
            Station::Right => "right",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Station::Left, Station::Center, Station::Right]
            .into_iter()
            .find(|st| st.name() == s)
    }

    /// Station abscissa; the extremities are pulled in by `shrink·d`.
    pub fn x(self, bounds: &WorkspaceBounds, shrink: f64) -> f64 {
        let delta = shrink * bounds.stroke;
        match self {
            Station::Left => bounds.x_min + delta,
            Station::Center => bounds.center(),
            Station::Right => bounds.x_max - delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationSet {
    pub stations: Vec<Station>,
}

impl StationSet {
    pub fn all() -> Self {
        Self {
            stations: alloc::vec![Station::Left, Station::Center, Station::Right],
        }
    }

    pub fn center() -> Self {
        Self {
            stations: alloc::vec![Station::Center],
        }
    }
}

/// Which compliances the refined stiffness model uses for the legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkModel {
    /// Tabulated leg compliances.
    Appendix,
    /// Cantilever compliance of the fitted uniform beams.
    EquivalentBeam,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub grid: usize,
    pub shrink: f64,
    /// Magnitude of each test force, N.
    pub load: f64,
    pub tool_compliance: bool,
    /// Tool point relative to B, in leg 1's end frame.
    pub tool_offset: Vec3,
    pub link_model: LinkModel,
    pub elements: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            shrink: DEFAULT_SHRINK,
            load: DEFAULT_LOAD,
            tool_compliance: true,
            tool_offset: Vec3::ZERO,
            link_model: LinkModel::Appendix,
            elements: DEFAULT_ELEMENTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub model: ModelKind,
    pub alpha: f64,
    pub x: f64,
    pub station: Option<Station>,
    pub metric: String,
    pub value: f64,
}

impl SweepRecord {
    /// Metric name qualified by the station, e.g. `f1_hz@center`.
    pub fn qualified_metric(&self) -> String {
        match self.station {
            Some(s) => alloc::format!("{}@{}", self.metric, s.name()),
            None => self.metric.clone(),
        }
    }
}

/// Everything needed to evaluate the models for one geometry.
struct Machine<'a> {
    dataset: &'a MechanismDataset,
    geometry: Geometry,
    /// Leg beams at this geometry's lengths.
    beams: Option<(BeamParams, BeamParams)>,
    link_model: LinkModel,
}

impl Machine<'_> {
    fn compliances(&self, opts: &SweepOptions) -> Result<LinkCompliances> {
        let mut c = self.dataset.link_compliances(opts.tool_compliance)?;
        if self.link_model == LinkModel::EquivalentBeam {
            let (b1, b2) = self.beams.as_ref().ok_or(Error::InvalidBeam("no beams"))?;
            c.leg1 = beam_end_compliance(b1);
            c.leg2 = beam_end_compliance(b2);
        }
        Ok(c)
    }

    fn refined_stiffness(&self, opts: &SweepOptions) -> Result<RefinedStiffnessModel> {
        RefinedStiffnessModel::new(self.geometry, &self.compliances(opts)?, opts.tool_offset)
    }

    fn modal(&self, opts: &SweepOptions) -> Result<MechanismModalModel> {
        let (leg1, leg2) = self.beams.ok_or(Error::InvalidBeam("no beams"))?;
        Ok(MechanismModalModel {
            geometry: self.geometry,
            leg1,
            leg2,
            tool_mass: self.dataset.m_tool,
            drive_stiffness: self.dataset.drive_stiffness,
            foot_compliance: self.dataset.compliance(LinkMatrix::Foot)?,
            elements: opts.elements,
        })
    }
}

fn reference_machine(ds: &MechanismDataset, link_model: LinkModel) -> Result<Machine<'_>> {
    Ok(Machine {
        dataset: ds,
        geometry: ds.geometry,
        beams: Some(ds.equivalent_beams()?),
        link_model,
    })
}

fn scaled_machine(ds: &MechanismDataset, alpha: f64) -> Result<Machine<'_>> {
    let (b1, b2) = ds.equivalent_beams()?;
    let (g, _) = scale_geometry(&ds.geometry, ds.leg_masses(), alpha)?;
    Ok(Machine {
        dataset: ds,
        geometry: g,
        beams: Some((b1.with_length(g.l1), b2.with_length(g.l2))),
        link_model: LinkModel::EquivalentBeam,
    })
}

/// Stiffness metrics at one abscissa, in output order.
fn stiffness_metrics(
    m: &Machine<'_>,
    model: ModelKind,
    refined: Option<&RefinedStiffnessModel>,
    x: f64,
    opts: &SweepOptions,
) -> Result<Vec<(&'static str, f64)>> {
    let f = opts.load;
    match model {
        ModelKind::SimplifiedStiffness => {
            let j = jacobian_allow_type1(&m.geometry, x, 0.0)?;
            let k = m.dataset.drive()?;
            Ok(alloc::vec![
                (METRIC_PLANAR_FX, norm(&deflection_simplified(&j, &k, [f, 0.0]))),
                (METRIC_PLANAR_FY, norm(&deflection_simplified(&j, &k, [0.0, f]))),
            ])
        }
        ModelKind::RefinedStiffness => {
            let r = refined.ok_or(Error::InvalidGeometry("refined model missing"))?;
            let km = r.stiffness(x, 0.0)?;
            let load = |i: usize| {
                let mut w = [0.0; 6];
                w[i] = f;
                crate::vjm::deflection_refined(&km, w)
            };
            let (dx, dy, dz) = (load(0)?, load(1)?, load(2)?);
            Ok(alloc::vec![
                (METRIC_PLANAR_FX, norm(&dx[..2])),
                (METRIC_PLANAR_FY, norm(&dy[..2])),
                (METRIC_Z_FZ, libm::fabs(dz[2])),
            ])
        }
        _ => Err(Error::InvalidGeometry("not a stiffness model")),
    }
}

/// Modal metrics at one abscissa: f₁, f₂ and, for the refined model, the
/// classification codes of the first two modes.
fn modal_metrics(
    m: &Machine<'_>,
    model: ModelKind,
    modal: Option<&MechanismModalModel>,
    x: f64,
) -> Result<Vec<(&'static str, f64)>> {
    match model {
        ModelKind::SimplifiedModal => {
            let j = jacobian(&m.geometry, x, 0.0)?;
            let f = frequencies_simplified(&j, &m.dataset.drive()?, &m.dataset.platform()?)?;
            Ok(alloc::vec![(METRIC_F1, f[0]), (METRIC_F2, f[1])])
        }
        ModelKind::RefinedModal => {
            let mm = modal.ok_or(Error::InvalidGeometry("modal model missing"))?;
            let modes = mm.modes(x, 0.0, 2)?;
            Ok(alloc::vec![
                (METRIC_F1, modes[0].frequency_hz),
                (METRIC_F2, modes[1].frequency_hz),
                (METRIC_MODE1, modes[0].class.code() as f64),
                (METRIC_MODE2, modes[1].class.code() as f64),
            ])
        }
        _ => Err(Error::InvalidGeometry("not a modal model")),
    }
}

fn push(
    out: &mut Vec<SweepRecord>,
    model: ModelKind,
    alpha: f64,
    x: f64,
    station: Option<Station>,
    metrics: Vec<(&str, f64)>,
) {
    for (name, value) in metrics {
        out.push(SweepRecord {
            model,
            alpha,
            x,
            station,
            metric: name.to_string(),
            value,
        });
    }
}

/// Deflection metrics over the workspace: the true endpoints followed by
/// the interior, i.e. `grid` points over `[x_min, x_max]`.
pub fn stiffness_map(ds: &MechanismDataset, model: ModelKind, opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    if model.is_modal() {
        return Err(Error::InvalidGeometry("stiffness_map needs a stiffness model"));
    }
    if opts.grid < 2 {
        return Err(Error::InvalidElementCount(opts.grid));
    }
    let m = reference_machine(ds, opts.link_model)?;
    let refined = match model {
        ModelKind::RefinedStiffness => Some(m.refined_stiffness(opts)?),
        _ => None,
    };
    let xs = workspace_bounds(&m.geometry)?.grid(opts.grid, 0.0);
    let mut out = Vec::with_capacity(3 * xs.len());
    for x in xs {
        let metrics = stiffness_metrics(&m, model, refined.as_ref(), x, opts)?;
        push(&mut out, model, 1.0, x, None, metrics);
    }
    Ok(out)
}

/// f₁ and f₂ over the δ-shrunk workspace.
pub fn frequency_map(ds: &MechanismDataset, model: ModelKind, opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    if !model.is_modal() {
        return Err(Error::InvalidGeometry("frequency_map needs a modal model"));
    }
    if opts.grid < 2 {
        return Err(Error::InvalidElementCount(opts.grid));
    }
    let m = reference_machine(ds, LinkModel::EquivalentBeam)?;
    let modal = match model {
        ModelKind::RefinedModal => Some(m.modal(opts)?),
        _ => None,
    };
    let xs = workspace_bounds(&m.geometry)?.grid(opts.grid, opts.shrink);
    let mut out = Vec::with_capacity(4 * xs.len());
    for x in xs {
        let metrics = modal_metrics(&m, model, modal.as_ref(), x)?;
        push(&mut out, model, 1.0, x, None, metrics);
    }
    Ok(out)
}

/// Every requested model at each station for each α, with legs scaled as
/// equivalent beams at constant stroke.
pub fn alpha_sweep(
    ds: &MechanismDataset,
    alphas: &[f64],
    stations: &StationSet,
    models: &[ModelKind],
    opts: &SweepOptions,
) -> Result<Vec<SweepRecord>> {
    let mut out = Vec::new();
    for &alpha in alphas {
        let m = scaled_machine(ds, alpha)?;
        let bounds = workspace_bounds(&m.geometry)?;
        for &model in models {
            let refined = match model {
                ModelKind::RefinedStiffness => Some(m.refined_stiffness(opts)?),
                _ => None,
            };
            let modal = match model {
                ModelKind::RefinedModal => Some(m.modal(opts)?),
                _ => None,
            };
            for &st in &stations.stations {
                let x = st.x(&bounds, opts.shrink);
                let metrics = if model.is_modal() {
                    modal_metrics(&m, model, modal.as_ref(), x)?
                } else {
                    stiffness_metrics(&m, model, refined.as_ref(), x, opts)?
                };
                push(&mut out, model, alpha, x, Some(st), metrics);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trend {
    Increasing,
    Decreasing,
    NonMonotone,
}

impl Trend {
    pub fn name(self) -> &'static str {
        match self {
            Trend::Increasing => "increasing",
            Trend::Decreasing => "decreasing",
            Trend::NonMonotone => "non-monotone",
        }
    }
}

/// Monotonicity of a series. Steps smaller than `TREND_SLACK` relative to the
/// larger neighbour count as neither up nor down; the series is Increasing
/// when no step goes down and at least one goes up (Decreasing likewise).
/// Returns `None` for fewer than 3 points.
pub fn trend(series: &[f64]) -> Option<Trend> {
    if series.len() < 3 {
        return None;
    }
    let (mut up, mut down) = (false, false);
    for w in series.windows(2) {
        let tol = TREND_SLACK * libm::fabs(w[0]).max(libm::fabs(w[1]));
        let d = w[1] - w[0];
        if d > tol {
            up = true;
        } else if d < -tol {
            down = true;
        }
    }
    Some(match (up, down) {
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        _ => Trend::NonMonotone,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendVerdict {
    pub model: ModelKind,
    pub metric: String,
    pub station: Option<Station>,
    pub trend: Trend,
    pub points: usize,
}

/// Groups records by (model, metric, station), orders each group by α and
/// reports its trend. Classification codes and groups with fewer than 3
/// points are skipped.
pub fn trend_report(records: &[SweepRecord]) -> Vec<TrendVerdict> {
    type Key = (ModelKind, String, Option<Station>);
    let mut groups: BTreeMap<Key, Vec<(f64, f64)>> = BTreeMap::new();
    for r in records {
        if r.metric.ends_with("_class") {
            continue;
        }
        groups
            .entry((r.model, r.metric.clone(), r.station))
            .or_default()
            .push((r.alpha, r.value));
    }
    groups
        .into_iter()
        .filter_map(|((model, metric, station), mut pts)| {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let values: Vec<f64> = pts.iter().map(|p| p.1).collect();
            trend(&values).map(|t| TrendVerdict {
                model,
                metric,
                station,
                trend: t,
                points: values.len(),
            })
        })
        .collect()
}
