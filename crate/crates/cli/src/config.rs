//! Run configuration. Physical quantities carry their unit in the key name
//! (`kappa_hz`, `mass_kg`, ...); frequencies given in Hz are converted to
//! rad/s here and nowhere else.

use std::path::{Path, PathBuf};

use gwdk_core::constants::{hz_to_rad, MEGAPARSEC, SOLAR_MASS};
use gwdk_core::source::binary_strain_amplitudes;
use gwdk_core::{BarParams, BinarySource, Complex, FrequencyGrid, GwState, IfoParams, SourceGeom};
use serde::{Deserialize, Serialize};

use crate::error::{config_err, CliError, Result};
use crate::presets;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detector: Option<DetectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clicks: Option<ClicksSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

impl RunConfig {
    /// Reads JSON, or TOML when the extension is `.toml`.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
        let what = path.display().to_string();
        if path.extension().is_some_and(|e| e == "toml") {
            Self::from_toml(&text, &what)
        } else {
            presets::parse_json(&text, &what)
        }
    }

    pub fn from_toml(text: &str, what: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Parse { what: what.to_string(), message: e.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
}

/// A detector given by preset name, by file, or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DetectorSpec {
    Preset { preset: String },
    File { preset_path: PathBuf },
    Inline(DetectorConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DetectorConfig {
    Ifo(IfoConfig),
    Bar(BarConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfoConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kappa_hz: f64,
    pub optical_frequency_hz: f64,
    pub arm_length_m: f64,
    pub mirror_mass_kg: f64,
    pub suspension_frequency_hz: f64,
    pub suspension_damping_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circulating_power_w: Option<f64>,
    /// Intracavity amplitude ᾱ (sqrt of photon number); checked against
    /// the power when both are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub thermal_occupancy: f64,
    #[serde(default)]
    pub detuning_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub mass_kg: f64,
    pub length_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sound_speed_m_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode_frequency_hz: Option<f64>,
    #[serde(default)]
    pub mode: u32,
    pub damping_hz: f64,
    pub coupling_hz: f64,
    pub kappa_hz: f64,
    #[serde(default)]
    pub thermal_occupancy: f64,
}

/// Detector resolved to model parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Detector {
    Ifo { name: Option<String>, params: IfoParams, thermal_occupancy: f64, config: IfoConfig },
    Bar { name: Option<String>, params: BarParams, config: BarConfig },
}

impl Detector {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Ifo { .. } => "ifo",
            Self::Bar { .. } => "bar",
        }
    }

    pub fn echo(&self) -> serde_json::Value {
        match self {
            Self::Ifo { config, .. } => serde_json::to_value(DetectorConfig::Ifo(config.clone())),
            Self::Bar { config, .. } => serde_json::to_value(DetectorConfig::Bar(config.clone())),
        }
        .unwrap_or(serde_json::Value::Null)
    }
}

impl DetectorSpec {
    pub fn resolve(&self) -> Result<Detector> {
        let cfg = match self {
            Self::Preset { preset } => presets::load::<DetectorConfig>(preset)?,
            Self::File { preset_path } => presets::load_path::<DetectorConfig>(preset_path)?,
            Self::Inline(c) => c.clone(),
        };
        cfg.resolve()
    }
}

impl DetectorConfig {
    pub fn resolve(&self) -> Result<Detector> {
        match self {
            Self::Ifo(c) => {
                let mut p = IfoParams {
                    kappa: hz_to_rad(c.kappa_hz),
                    optical_frequency: hz_to_rad(c.optical_frequency_hz),
                    arm_length: c.arm_length_m,
                    mirror_mass: c.mirror_mass_kg,
                    suspension_frequency: hz_to_rad(c.suspension_frequency_hz),
                    suspension_damping: hz_to_rad(c.suspension_damping_hz),
                    circulating_power: c.circulating_power_w.unwrap_or(1.0),
                    detuning: hz_to_rad(c.detuning_hz),
                };
                match (c.circulating_power_w, c.alpha) {
                    (Some(_), Some(a)) => p.check_alpha(a)?,
                    (None, Some(a)) => p = p.with_alpha(a)?,
                    (Some(_), None) => {}
                    (None, None) => return Err(config_err("ifo needs circulating_power_w or alpha")),
                }
                p.validate()?;
                if c.thermal_occupancy.is_nan() || c.thermal_occupancy < 0.0 {
                    return Err(config_err("thermal_occupancy must be non-negative"));
                }
                Ok(Detector::Ifo { name: c.name.clone(), params: p, thermal_occupancy: c.thermal_occupancy, config: c.clone() })
            }
            Self::Bar(c) => {
                let wm = match (c.mode_frequency_hz, c.sound_speed_m_s) {
                    (Some(f), _) => hz_to_rad(f),
                    (None, Some(vs)) => vs * std::f64::consts::PI * f64::from(2 * c.mode + 1) / c.length_m,
                    (None, None) => return Err(config_err("bar needs mode_frequency_hz or sound_speed_m_s")),
                };
                let p = BarParams {
                    mass: c.mass_kg,
                    length: c.length_m,
                    sound_speed: c.sound_speed_m_s,
                    mode_frequency: wm,
                    damping: hz_to_rad(c.damping_hz),
                    coupling: hz_to_rad(c.coupling_hz),
                    kappa: hz_to_rad(c.kappa_hz),
                    thermal_occupancy: c.thermal_occupancy,
                    mode: c.mode,
                };
                p.validate()?;
                Ok(Detector::Bar { name: c.name.clone(), params: p, config: c.clone() })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SourceSpec {
    Preset { preset: String },
    Inline(SourceConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Carriers {
    pub ifo: f64,
    pub bar: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryConfig {
    pub reduced_mass_msun: f64,
    pub orbital_radius_km: f64,
    #[serde(default)]
    pub inclination_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub distance_mpc: f64,
    #[serde(default = "one")]
    pub antenna_factor: f64,
    /// Detector-frame strain amplitude h₀.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strain: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier_hz: Option<f64>,
    /// Per-detector carriers, used when `carrier_hz` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carriers_hz: Option<Carriers>,
    /// Circular binary; supplies h₀ (plus polarization) when `strain` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary: Option<BinaryConfig>,
}

fn one() -> f64 {
    1.0
}

impl SourceSpec {
    pub fn config(&self) -> Result<SourceConfig> {
        match self {
            Self::Preset { preset } => presets::load(preset),
            Self::Inline(c) => Ok(c.clone()),
        }
    }
}

impl SourceConfig {
    /// Geometry with carrier chosen for detector kind `kind`; a bar falls
    /// back to its mode frequency.
    pub fn geom(&self, det: &Detector) -> Result<SourceGeom> {
        let carrier = match (self.carrier_hz, self.carriers_hz, det) {
            (Some(f), _, _) => hz_to_rad(f),
            (None, Some(c), Detector::Ifo { .. }) => hz_to_rad(c.ifo),
            (None, Some(c), Detector::Bar { .. }) => hz_to_rad(c.bar),
            (None, None, Detector::Bar { params, .. }) => params.mode_frequency,
            (None, None, Detector::Ifo { .. }) => return Err(config_err("source needs carrier_hz")),
        };
        let geom = SourceGeom::new(self.distance_mpc * MEGAPARSEC, self.antenna_factor, carrier)?;
        match self.strain_amplitude(carrier)? {
            Some(h) => Ok(geom.with_strain(h)?),
            None => Ok(geom),
        }
    }

    fn strain_amplitude(&self, carrier: f64) -> Result<Option<f64>> {
        if let Some(h) = self.strain {
            return Ok(Some(h));
        }
        match &self.binary {
            Some(b) => {
                let src = BinarySource {
                    reduced_mass: b.reduced_mass_msun * SOLAR_MASS,
                    orbital_radius: b.orbital_radius_km * 1e3,
                    carrier,
                    distance: self.distance_mpc * MEGAPARSEC,
                    inclination: b.inclination_rad,
                };
                Ok(Some(binary_strain_amplitudes(&src)?.0))
            }
            None => Ok(None),
        }
    }
}

/// Either the explicit state JSON or a Gaussian-envelope shorthand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Gaussian(GaussianState),
    Explicit(GwState),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaussianKind {
    Coherent,
    Fock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianState {
    pub shape: Shape,
    #[serde(rename = "type")]
    pub kind: GaussianKind,
    pub omega0_hz: f64,
    /// Defaults to the source's quantization area `16πR²/(5F)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area_m2: Option<f64>,
    pub bandwidth_hz: f64,
    /// `|ā|`; coherent states only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Graviton number; Fock states only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_points() -> usize {
    801
}

impl StateSpec {
    pub fn resolve(&self, source: Option<&SourceConfig>) -> Result<GwState> {
        match self {
            Self::Explicit(s) => Ok(s.clone()),
            Self::Gaussian(g) => {
                let area = match (g.area_m2, source) {
                    (Some(a), _) => a,
                    (None, Some(s)) => gwdk_core::source::area_factor(s.distance_mpc * MEGAPARSEC, s.antenna_factor)?,
                    (None, None) => return Err(config_err("state needs area_m2 or a source")),
                };
                let (w0, bw) = (hz_to_rad(g.omega0_hz), hz_to_rad(g.bandwidth_hz));
                match g.kind {
                    GaussianKind::Coherent => {
                        let a = g.amplitude.ok_or_else(|| config_err("coherent state needs amplitude"))?;
                        Ok(GwState::coherent_gaussian(w0, area, Complex::new(a, 0.0), bw, g.points)?)
                    }
                    GaussianKind::Fock => {
                        let n = g.n.ok_or_else(|| config_err("Fock state needs n"))?;
                        Ok(GwState::fock_gaussian(n, w0, area, bw, g.points)?)
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    /// Two bands of `points` each around `±center_hz`.
    Bands { center_hz: f64, half_width_hz: f64, points: usize },
    /// `[min_hz, max_hz]`, mirrored onto negative frequencies when
    /// `symmetric`; `min_hz = 0` then yields a grid through zero.
    Range {
        #[serde(default)]
        min_hz: f64,
        max_hz: f64,
        points: usize,
        #[serde(default = "yes")]
        symmetric: bool,
    },
}

fn yes() -> bool {
    true
}

impl GridSpec {
    pub fn build(&self) -> Result<FrequencyGrid> {
        let g = match *self {
            Self::Bands { center_hz, half_width_hz, points } => {
                FrequencyGrid::symmetric_bands(hz_to_rad(center_hz), hz_to_rad(half_width_hz), points)?
            }
            Self::Range { min_hz, max_hz, points, symmetric: false } => {
                FrequencyGrid::linspace(hz_to_rad(min_hz), hz_to_rad(max_hz), points)?
            }
            Self::Range { min_hz, max_hz, points, symmetric: true } => {
                if min_hz == 0.0 {
                    FrequencyGrid::symmetric(hz_to_rad(max_hz), 2 * points - 1)?
                } else {
                    let band = FrequencyGrid::linspace(hz_to_rad(min_hz), hz_to_rad(max_hz), points)?;
                    FrequencyGrid::mirrored(band.as_slice())?
                }
            }
        };
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ifo: Option<DetectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar: Option<DetectorSpec>,
    pub coherent_amplitude: f64,
    pub fock_number: u64,
    #[serde(default = "default_ifo_bandwidth")]
    pub ifo_bandwidth_hz: f64,
    /// Defaults to a hundredth of the bar damping rate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar_bandwidth_hz: Option<f64>,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_ifo_bandwidth() -> f64 {
    0.1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClicksSpec {
    pub duration_s: f64,
    /// Overrides the rate derived from detector and source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_hz: Option<f64>,
    /// Dark-click rate superposed on the GW stream.
    #[serde(default)]
    pub dark_rate_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub distance_mpc: Vec<f64>,
}
