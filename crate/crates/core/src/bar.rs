//! Resonant-bar antenna read out through a parametric optical cavity.
//!
//! Only the fundamental longitudinal mode takes part in readout; the higher
//! modes are exposed for inspection through [`bar_mode_frequency`] and
//! [`bar_gw_force_coefficient`].

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::counting::ClickRate;
use crate::error::{non_negative, positive, Error, Result};
use crate::grid::FrequencyGrid;
use crate::real::{rel_diff, Real};
use crate::source::SourceGeom;
use crate::spectrum::{integrate_spectrum, units, Spectrum, SpectrumKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BarParams<T> {
    /// Bar mass M, kg.
    pub mass: T,
    /// Bar length L, m.
    pub length: T,
    /// Sound speed v_s, m/s. Derived from the mode frequency when absent.
    #[serde(default)]
    pub sound_speed: Option<T>,
    /// Readout-mode frequency ω_m, rad/s.
    pub mode_frequency: T,
    /// Mechanical damping γ_m, rad/s.
    pub damping: T,
    /// Optomechanical readout coupling g, rad/s.
    pub coupling: T,
    /// Readout cavity decay κ, rad/s.
    pub kappa: T,
    /// Thermal occupancy n̄ of the readout mode.
    #[serde(default)]
    pub thermal_occupancy: T,
    /// Longitudinal mode index of the readout mode.
    #[serde(default)]
    pub mode: u32,
}

impl<T: Real> BarParams<T> {
    /// Builds the parameters with `ω_m` fixed by the sound speed.
    #[allow(clippy::too_many_arguments)]
    pub fn from_sound_speed(
        mass: T,
        length: T,
        sound_speed: T,
        mode: u32,
        damping: T,
        coupling: T,
        kappa: T,
        thermal_occupancy: T,
    ) -> Result<Self> {
        let p = Self {
            mass,
            length,
            sound_speed: Some(sound_speed),
            mode_frequency: mode_frequency(sound_speed, length, mode),
            damping,
            coupling,
            kappa,
            thermal_occupancy,
            mode,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        positive("bar mass", self.mass)?;
        positive("bar length", self.length)?;
        positive("mode frequency", self.mode_frequency)?;
        positive("mechanical damping", self.damping)?;
        non_negative("readout coupling", self.coupling)?;
        positive("readout kappa", self.kappa)?;
        non_negative("thermal occupancy", self.thermal_occupancy)?;
        if let Some(vs) = self.sound_speed {
            positive("sound speed", vs)?;
            let expected = mode_frequency(vs, self.length, self.mode);
            if rel_diff(expected, self.mode_frequency) > T::lit(1e-12) {
                return Err(Error::InvalidParams(format!(
                    "mode frequency {} rad/s inconsistent with sound speed (expected {})",
                    self.mode_frequency, expected
                )));
            }
        }
        Ok(())
    }

    /// Sound speed, given or implied by `ω_m` and the mode index.
    pub fn sound_speed(&self) -> T {
        self.sound_speed.unwrap_or_else(|| {
            self.mode_frequency * self.length / (T::PI() * T::lit(f64::from(2 * self.mode + 1)))
        })
    }

    /// Zero-point amplitude `x_zpm = sqrt(ħ / (M ω_m))`.
    pub fn zero_point_motion(&self) -> T {
        (Constants::<T>::codata().hbar / (self.mass * self.mode_frequency)).sqrt()
    }

    /// White back-action force spectrum `2ħ²g²/κ` for vacuum readout light.
    pub fn backaction_force_psd(&self) -> T {
        let hbar = Constants::<T>::codata().hbar;
        T::lit(2.0) * hbar * hbar * self.coupling * self.coupling / self.kappa
    }

    /// True when `|ω_m − Ω₀| ≤ γ_m`.
    pub fn in_band(&self, carrier: T) -> bool {
        (self.mode_frequency - carrier).abs() <= self.damping
    }
}

fn mode_frequency<T: Real>(vs: T, length: T, n: u32) -> T {
    vs * T::PI() * T::lit(f64::from(2 * n + 1)) / length
}

/// `ω_n = v_s π (2n+1) / L`.
pub fn bar_mode_frequency<T: Real>(p: &BarParams<T>, n: u32) -> T {
    mode_frequency(p.sound_speed(), p.length, n)
}

/// Multiplier of `ḧ` giving the force on mode `n`: `M(−1)ⁿ(2L/π²)/(2n+1)²`.
pub fn bar_gw_force_coefficient<T: Real>(p: &BarParams<T>, n: u32) -> T {
    let sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
    let odd = T::lit(f64::from(2 * n + 1));
    sign * p.mass * T::lit(2.0) * p.length / (T::PI() * T::PI() * odd * odd)
}

/// `χ_M[δ] = 1 / (−iδ + γ_m/2)` at detuning `δ` from the mode.
pub fn mech_susceptibility<T: Real>(p: &BarParams<T>, detuning: T) -> Complex<T> {
    Complex::new(p.damping / T::lit(2.0), -detuning).inv()
}

/// Homodyne mean together with the in-band diagnostic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BarHomodyne<T> {
    pub values: Vec<Complex<T>>,
    /// Set when `|ω_m − Ω₀| > γ_m`; the values are still computed.
    pub off_resonance: bool,
}

/// Mean homodyne output
/// `−i (4g/√κ) sqrt(M/ħω_m) (2LΩ₀²/(γ_m π²)) ⟨ĥ⟩`, valid in band.
pub fn bar_homodyne_mean<T: Real>(
    p: &BarParams<T>,
    mean_h: &[Complex<T>],
    carrier: T,
    grid: &FrequencyGrid<T>,
) -> Result<BarHomodyne<T>> {
    p.validate()?;
    positive("carrier frequency", carrier)?;
    if mean_h.len() != grid.len() {
        return Err(Error::LengthMismatch(grid.len(), mean_h.len()));
    }
    let k = Constants::<T>::codata();
    let gain = T::lit(4.0) * p.coupling / p.kappa.sqrt()
        * (p.mass / (k.hbar * p.mode_frequency)).sqrt()
        * T::lit(2.0)
        * p.length
        * carrier
        * carrier
        / (p.damping * T::PI() * T::PI());
    let factor = Complex::new(T::zero(), -gain);
    Ok(BarHomodyne {
        values: mean_h.iter().map(|h| factor * *h).collect(),
        off_resonance: !p.in_band(carrier),
    })
}

/// Readout-mode position spectrum in zero-point units, by component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BarResponse<T> {
    pub s_zz: Spectrum<T>,
    pub mechanical_vacuum: Spectrum<T>,
    pub backaction: Spectrum<T>,
    pub gw_drive: Spectrum<T>,
}

/// Position spectrum driven by bath, back-action and strain PSD `s_hh`.
pub fn bar_position_spectrum<T: Real>(p: &BarParams<T>, s_hh: &Spectrum<T>, carrier: T) -> Result<BarResponse<T>> {
    p.validate()?;
    positive("carrier frequency", carrier)?;
    s_hh.require_units(units::STRAIN_PSD)?;
    s_hh.require_symmetrized()?;

    let hbar = Constants::<T>::codata().hbar;
    let xz2_over_hbar2 = p.zero_point_motion().powi(2) / (hbar * hbar);
    let force_scale = (p.mass * p.length * carrier * carrier).powi(2) / T::PI().powi(4);
    let s_ff = p.backaction_force_psd();
    let bath = p.thermal_occupancy + T::lit(0.5);
    let grid = s_hh.grid().clone();

    let n = grid.len();
    let (mut vac, mut ba, mut gw) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (w, s) in grid.iter().zip(s_hh.values()) {
        let lo = mech_susceptibility(p, w - p.mode_frequency);
        let hi = mech_susceptibility(p, w + p.mode_frequency);
        let diff = (lo - hi).norm_sqr() * xz2_over_hbar2;
        vac.push(p.damping * (lo.norm_sqr() + hi.norm_sqr()) * bath);
        ba.push(diff * s_ff);
        gw.push(diff * force_scale * *s);
    }
    let total: Vec<T> = (0..n).map(|i| vac[i] + ba[i] + gw[i]).collect();
    let spec = |v: Vec<T>| Spectrum::new(grid.clone(), v, SpectrumKind::DoubleSidedSymmetrized, units::ZPM_POSITION);
    Ok(BarResponse {
        s_zz: spec(total)?,
        mechanical_vacuum: spec(vac)?,
        backaction: spec(ba)?,
        gw_drive: spec(gw)?,
    })
}

/// Click-rate breakdown for the bar readout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BarClickRate<T> {
    /// `total` integrates the full position spectrum; `gw_part` is the
    /// in-band closed form, so the two only add up exactly in band.
    pub rate: ClickRate<T>,
    /// GW part integrated from the resolved mechanical response.
    pub gw_part_resolved: T,
}

/// Cavity photon click rate `∫ dΩ/2π (4g²/κ) S̄_zz`.
///
/// The normal-ordered readout vacuum contributes no clicks.
pub fn bar_click_rate<T: Real>(p: &BarParams<T>, s_hh: &Spectrum<T>, carrier: T) -> Result<BarClickRate<T>> {
    let resp = bar_position_spectrum(p, s_hh, carrier)?;
    let gain = T::lit(4.0) * p.coupling * p.coupling / p.kappa;
    let dark = gain * (integrate_spectrum(&resp.mechanical_vacuum)? + integrate_spectrum(&resp.backaction)?);
    let resolved = gain * integrate_spectrum(&resp.gw_drive)?;
    let gw_part = bar_click_rate_in_band(p, s_hh, carrier)?;
    Ok(BarClickRate {
        rate: ClickRate { total: dark + resolved, gw_part, dark_part: dark },
        gw_part_resolved: resolved,
    })
}

/// In-band GW click rate `(16g²ML²Ω₀⁴ / (π⁴ħκω_mγ_m²)) ∫ dΩ/2π S̄_hh`.
pub fn bar_click_rate_in_band<T: Real>(p: &BarParams<T>, s_hh: &Spectrum<T>, carrier: T) -> Result<T> {
    p.validate()?;
    s_hh.require_units(units::STRAIN_PSD)?;
    s_hh.require_symmetrized()?;
    let hbar = Constants::<T>::codata().hbar;
    let pre = T::lit(16.0) * p.coupling.powi(2) * p.mass * p.length.powi(2) * carrier.powi(4)
        / (T::PI().powi(4) * hbar * p.kappa * p.mode_frequency * p.damping.powi(2));
    Ok(pre * integrate_spectrum(s_hh)?)
}

/// On-resonance form `(16g²ML²Ω₀³ / (π⁴ħκγ_m²)) ∫ dΩ/2π S̄_hh`.
pub fn bar_click_rate_main_text<T: Real>(p: &BarParams<T>, s_hh: &Spectrum<T>, carrier: T) -> Result<T> {
    p.validate()?;
    s_hh.require_units(units::STRAIN_PSD)?;
    s_hh.require_symmetrized()?;
    let hbar = Constants::<T>::codata().hbar;
    let pre = T::lit(16.0) * p.coupling.powi(2) * p.mass * p.length.powi(2) * carrier.powi(3)
        / (T::PI().powi(4) * hbar * p.kappa * p.damping.powi(2));
    Ok(pre * integrate_spectrum(s_hh)?)
}

/// Source-relative efficiency `(96g²/κ) ML²Ω₀³G / (π³c³ω_mγ_m²R²)`.
pub fn eta_bar<T: Real>(p: &BarParams<T>, geom: &SourceGeom<T>) -> Result<T> {
    p.validate()?;
    geom.validate()?;
    let k = Constants::<T>::codata();
    Ok(T::lit(96.0) * p.coupling.powi(2) / p.kappa * p.mass * p.length.powi(2) * geom.carrier.powi(3) * k.g
        / (T::PI().powi(3) * k.c.powi(3) * p.mode_frequency * p.damping.powi(2) * geom.distance.powi(2)))
}

/// Efficiency relative to the flux through area `A`:
/// `256g²ML²Ω₀³G / (3π²c³κω_mγ_m²A)`.
pub fn eta_bar_incident<T: Real>(p: &BarParams<T>, carrier: T, area: T) -> Result<T> {
    p.validate()?;
    positive("carrier frequency", carrier)?;
    positive("quantization area", area)?;
    let k = Constants::<T>::codata();
    Ok(T::lit(256.0) * p.coupling.powi(2) * p.mass * p.length.powi(2) * carrier.powi(3) * k.g
        / (T::lit(3.0) * T::PI().powi(2) * k.c.powi(3) * p.kappa * p.mode_frequency * p.damping.powi(2) * area))
}
