//! Fabry-Perot interferometric antenna with a single suspended test mass,
//! operated on resonance.
//!
//! The GW couples only to the output phase quadrature. Homodyne readout of
//! that quadrature gives a mean signal linear in `⟨ĥ⟩`; photon counting at
//! the dark port gives a click rate linear in `S̄_hh`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::counting::ClickRate;
use crate::error::{non_negative, positive, Error, Result};
use crate::grid::FrequencyGrid;
use crate::real::{rel_diff, Real};
use crate::source::SourceGeom;
use crate::spectrum::{integrate_spectrum, integrate_weighted, units, Spectrum, SpectrumKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct IfoParams<T> {
    /// Cavity amplitude decay rate κ, rad/s.
    pub kappa: T,
    /// Optical resonance ω₀, rad/s.
    pub optical_frequency: T,
    /// Arm length L, m.
    pub arm_length: T,
    /// Test-mass m, kg.
    pub mirror_mass: T,
    /// Suspension resonance ω_m, rad/s.
    pub suspension_frequency: T,
    /// Suspension damping γ_m, rad/s.
    pub suspension_damping: T,
    /// Circulating power P_cav, W.
    pub circulating_power: T,
    /// Optical detuning Δ, rad/s. Only zero is supported.
    #[serde(default)]
    pub detuning: T,
}

impl<T: Real> IfoParams<T> {
    pub fn validate(&self) -> Result<()> {
        positive("kappa", self.kappa)?;
        positive("optical frequency", self.optical_frequency)?;
        positive("arm length", self.arm_length)?;
        positive("mirror mass", self.mirror_mass)?;
        positive("suspension frequency", self.suspension_frequency)?;
        positive("suspension damping", self.suspension_damping)?;
        positive("circulating power", self.circulating_power)?;
        if self.detuning != T::zero() {
            return Err(Error::Detuned(self.detuning.to_f64_lossy()));
        }
        Ok(())
    }

    /// Intracavity coherent amplitude squared, `ᾱ² = (4L/c) P_cav / (ħ ω₀)`.
    pub fn alpha_sq(&self) -> T {
        let k = Constants::<T>::codata();
        T::lit(4.0) * self.arm_length / k.c * self.circulating_power / (k.hbar * self.optical_frequency)
    }

    /// Replaces the circulating power with the one implied by amplitude `alpha`.
    pub fn with_alpha(mut self, alpha: T) -> Result<Self> {
        positive("coherent amplitude", alpha)?;
        let k = Constants::<T>::codata();
        self.circulating_power =
            alpha * alpha * k.c * k.hbar * self.optical_frequency / (T::lit(4.0) * self.arm_length);
        Ok(self)
    }

    /// Checks a separately supplied amplitude against the circulating power.
    pub fn check_alpha(&self, alpha: T) -> Result<()> {
        let derived = self.alpha_sq();
        if rel_diff(alpha * alpha, derived) > T::lit(1e-12) {
            return Err(Error::InvalidParams(format!(
                "alpha² = {} disagrees with power-derived {}",
                alpha * alpha,
                derived
            )));
        }
        Ok(())
    }

    /// `(γ_m² + Ω²)² + 2ω_m²(γ_m² − Ω²) + ω_m⁴ = |(γ_m − iΩ)² + ω_m²|²`.
    fn mech_denominator_sq(&self, omega: T) -> T {
        let g2 = self.suspension_damping.powi(2);
        let wm2 = self.suspension_frequency.powi(2);
        let o2 = omega * omega;
        (g2 + o2).powi(2) + T::lit(2.0) * wm2 * (g2 - o2) + wm2 * wm2
    }
}

/// Optical input spectra at the antenna ports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct IfoInputs<T> {
    /// `S̄^{1,in}`, amplitude quadrature.
    pub amplitude: T,
    /// `S̄^{2,in}`, phase quadrature.
    pub phase: T,
    /// Suspension bath occupancy n̄; `S̄_qq^in = S̄_pp^in = n̄ + ½`.
    pub thermal_occupancy: T,
}

impl<T: Real> IfoInputs<T> {
    /// Coherent-light vacuum on both quadratures, suspension bath at `n̄`.
    pub fn vacuum(thermal_occupancy: T) -> Self {
        Self { amplitude: T::lit(0.5), phase: T::lit(0.5), thermal_occupancy }
    }

    fn validate(&self) -> Result<()> {
        non_negative("amplitude-quadrature input", self.amplitude)?;
        non_negative("phase-quadrature input", self.phase)?;
        non_negative("thermal occupancy", self.thermal_occupancy)?;
        Ok(())
    }

    fn bath(&self) -> T {
        self.thermal_occupancy + T::lit(0.5)
    }
}

impl<T: Real> Default for IfoInputs<T> {
    fn default() -> Self {
        Self::vacuum(T::zero())
    }
}

/// `K[Ω] = 2ħκᾱ²ω₀² / (L² m Ω² (κ² + Ω²))`.
pub fn kimble_k<T: Real>(p: &IfoParams<T>, omega: T) -> Result<T> {
    if omega == T::zero() {
        return Err(Error::ZeroFrequency { what: "K" });
    }
    let k = Constants::<T>::codata();
    Ok(T::lit(2.0) * k.hbar * p.kappa * p.alpha_sq() * p.optical_frequency.powi(2)
        / (p.arm_length.powi(2) * p.mirror_mass * omega * omega * (p.kappa.powi(2) + omega * omega)))
}

/// `h_SQL[Ω] = sqrt(8ħ / (m Ω² L²))`.
pub fn h_sql<T: Real>(p: &IfoParams<T>, omega: T) -> Result<T> {
    if omega == T::zero() {
        return Err(Error::ZeroFrequency { what: "h_SQL" });
    }
    let k = Constants::<T>::codata();
    Ok((T::lit(8.0) * k.hbar / (p.mirror_mass * omega * omega * p.arm_length.powi(2))).sqrt())
}

/// Cavity phase `β = arctan(Ω/κ)`.
pub fn cavity_phase_beta<T: Real>(p: &IfoParams<T>, omega: T) -> T {
    (omega / p.kappa).atan()
}

/// Finite-resonance correction `𝒳 = Ω² / |(γ_m − iΩ)² + ω_m²|`.
pub fn mech_correction_x<T: Real>(p: &IfoParams<T>, omega: T) -> T {
    omega * omega / p.mech_denominator_sq(omega).sqrt()
}

/// Phase `Ξ` of the suspended-mass response relative to a free mass.
///
/// Half the argument of `1/((γ_m − iΩ)² + ω_m²)` measured from its
/// free-mass value, built from the two-argument arctangent so it is
/// continuous through the mechanical resonance. Above resonance it agrees
/// with `½ arctan(2γ_mΩ / (γ_m² + ω_m² − Ω²))`. Odd in `Ω`.
pub fn phase_xi<T: Real>(p: &IfoParams<T>, omega: T) -> T {
    let g = p.suspension_damping;
    let y = T::lit(2.0) * g * omega.abs();
    let x = g * g + p.suspension_frequency.powi(2) - omega * omega;
    let xi = (y.atan2(x) - T::PI()) / T::lit(2.0);
    if omega < T::zero() {
        -xi
    } else {
        xi
    }
}

/// `K𝒳`, finite at Ω = 0.
pub fn backaction_gain<T: Real>(p: &IfoParams<T>, omega: T) -> T {
    let k = Constants::<T>::codata();
    T::lit(2.0) * k.hbar * p.kappa * p.alpha_sq() * p.optical_frequency.powi(2)
        / (p.arm_length.powi(2)
            * p.mirror_mass
            * (p.kappa.powi(2) + omega * omega)
            * p.mech_denominator_sq(omega).sqrt())
}

/// `2|K| / h_SQL² = κᾱ²ω₀² / (2(κ² + Ω²))`, the strain-to-output gain.
pub fn signal_gain<T: Real>(p: &IfoParams<T>, omega: T) -> T {
    p.kappa * p.alpha_sq() * p.optical_frequency.powi(2)
        / (T::lit(2.0) * (p.kappa.powi(2) + omega * omega))
}

/// Suspension-noise transfer `𝒴[Ω]`.
pub fn thermal_gain<T: Real>(p: &IfoParams<T>, omega: T) -> T {
    let k = Constants::<T>::codata();
    T::lit(2.0) * k.hbar * p.kappa * p.suspension_damping * p.alpha_sq() * p.optical_frequency.powi(2)
        / (p.mirror_mass
            * p.arm_length.powi(2)
            * (p.kappa.powi(2) + omega * omega)
            * p.mech_denominator_sq(omega))
}

fn thermal_term<T: Real>(p: &IfoParams<T>, inputs: &IfoInputs<T>, omega: T) -> T {
    let wm = p.suspension_frequency;
    let bath = inputs.bath();
    thermal_gain(p, omega)
        * ((p.suspension_damping.powi(2) + omega * omega) / wm * bath + wm * bath)
}

/// Mean output phase quadrature `e^{iβ} sqrt(2K) ⟨ĥ⟩ / h_SQL`.
pub fn ifo_homodyne_mean<T: Real>(
    p: &IfoParams<T>,
    mean_h: &[Complex<T>],
    grid: &FrequencyGrid<T>,
) -> Result<Vec<Complex<T>>> {
    p.validate()?;
    if mean_h.len() != grid.len() {
        return Err(Error::LengthMismatch(grid.len(), mean_h.len()));
    }
    grid.iter()
        .zip(mean_h)
        .map(|(w, h)| {
            let gain = (T::lit(2.0) * kimble_k(p, w)?).sqrt() / h_sql(p, w)?;
            Ok(Complex::from_polar(gain, cavity_phase_beta(p, w)) * *h)
        })
        .collect()
}

/// In-band (`Ω ≪ κ`) homodyne mean `(ᾱω₀ / sqrt(2κ)) ⟨ĥ⟩`.
pub fn ifo_homodyne_mean_low_frequency<T: Real>(p: &IfoParams<T>, mean_h: &[Complex<T>]) -> Vec<Complex<T>> {
    let gain = p.alpha_sq().sqrt() * p.optical_frequency / (T::lit(2.0) * p.kappa).sqrt();
    mean_h.iter().map(|h| *h * gain).collect()
}

/// Output quadrature spectra and the noise budget of the phase quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct IfoNoiseBudget<T> {
    pub amplitude_out: Spectrum<T>,
    pub phase_out: Spectrum<T>,
    pub radiation_pressure: Spectrum<T>,
    pub shot: Spectrum<T>,
    pub suspension_thermal: Spectrum<T>,
    pub gw_signal: Spectrum<T>,
}

fn check_strain_psd<T: Real>(s_hh: &Spectrum<T>) -> Result<()> {
    s_hh.require_units(units::STRAIN_PSD)?;
    s_hh.require_symmetrized()
}

/// Output spectra for strain PSD `s_hh` and the given input noise.
pub fn ifo_output_spectra<T: Real>(
    p: &IfoParams<T>,
    s_hh: &Spectrum<T>,
    inputs: &IfoInputs<T>,
) -> Result<IfoNoiseBudget<T>> {
    p.validate()?;
    inputs.validate()?;
    check_strain_psd(s_hh)?;
    let grid = s_hh.grid().clone();
    let kind = SpectrumKind::DoubleSidedSymmetrized;
    let spec = |vals: Vec<T>| Spectrum::new(grid.clone(), vals, kind, units::QUADRATURE);

    let rp: Vec<T> = grid.iter().map(|w| backaction_gain(p, w).powi(2) * inputs.amplitude).collect();
    let shot = vec![inputs.phase; grid.len()];
    let thermal: Vec<T> = grid.iter().map(|w| thermal_term(p, inputs, w)).collect();
    let gw: Vec<T> = grid
        .iter()
        .zip(s_hh.values())
        .map(|(w, s)| signal_gain(p, w) * *s)
        .collect();
    let total: Vec<T> = (0..grid.len()).map(|i| rp[i] + shot[i] + thermal[i] + gw[i]).collect();

    Ok(IfoNoiseBudget {
        amplitude_out: spec(vec![inputs.amplitude; grid.len()])?,
        phase_out: spec(total)?,
        radiation_pressure: spec(rp)?,
        shot: spec(shot)?,
        suspension_thermal: spec(thermal)?,
        gw_signal: spec(gw)?,
    })
}

/// Dark-port photon click rate.
///
/// `total = ½ ∫ dΩ/2π [S̄^{1,out} + S̄^{2,out} − 1]`; the GW part is
/// `½ ∫ dΩ/2π (2|K|/h_SQL²) S̄_hh` and `dark_part` is everything else.
pub fn ifo_click_rate<T: Real>(
    p: &IfoParams<T>,
    s_hh: &Spectrum<T>,
    inputs: &IfoInputs<T>,
) -> Result<ClickRate<T>> {
    p.validate()?;
    inputs.validate()?;
    check_strain_psd(s_hh)?;
    let half = T::lit(0.5);
    let gw_part = half * integrate_weighted(s_hh, |w| signal_gain(p, w))?;
    let dark_integrand: Vec<T> = s_hh
        .grid()
        .iter()
        .map(|w| {
            (T::one() + backaction_gain(p, w).powi(2)) * inputs.amplitude + inputs.phase - T::one()
                + thermal_term(p, inputs, w)
        })
        .collect();
    let dark_part = half
        * crate::quadrature::trapezoid(s_hh.grid().as_slice(), &dark_integrand)?
        / T::two_pi();
    Ok(ClickRate { total: dark_part + gw_part, gw_part, dark_part })
}

/// In-band GW click rate `(ᾱ²ω₀² / 4κ) ∫ dΩ/2π S̄_hh`.
pub fn ifo_click_rate_low_frequency<T: Real>(p: &IfoParams<T>, s_hh: &Spectrum<T>) -> Result<T> {
    check_strain_psd(s_hh)?;
    Ok(p.alpha_sq() * p.optical_frequency.powi(2) / (T::lit(4.0) * p.kappa) * integrate_spectrum(s_hh)?)
}

/// Source-relative efficiency
/// `η = 5ħGFκᾱ²ω₀² / (2c³R²Ω₀(κ² + Ω₀²))`.
pub fn eta_ifo<T: Real>(p: &IfoParams<T>, geom: &SourceGeom<T>) -> Result<T> {
    p.validate()?;
    geom.validate()?;
    let k = Constants::<T>::codata();
    let w0 = geom.carrier;
    Ok(T::lit(5.0) * k.hbar * k.g * geom.antenna_factor * p.kappa * p.alpha_sq() * p.optical_frequency.powi(2)
        / (T::lit(2.0) * k.c.powi(3) * geom.distance.powi(2) * w0 * (p.kappa.powi(2) + w0 * w0)))
}

/// The prefactor-3 form without an antenna factor; equals [`eta_ifo`] at F = 6/5.
pub fn eta_ifo_main_text<T: Real>(p: &IfoParams<T>, distance: T, carrier: T) -> Result<T> {
    p.validate()?;
    positive("distance", distance)?;
    positive("carrier frequency", carrier)?;
    let k = Constants::<T>::codata();
    Ok(T::lit(3.0) * k.hbar * k.g * p.kappa * p.alpha_sq() * p.optical_frequency.powi(2)
        / (k.c.powi(3) * distance.powi(2) * carrier * (p.kappa.powi(2) + carrier * carrier)))
}

/// Efficiency relative to the flux through area `A`, in-band:
/// `η = 8πħGᾱ²ω₀² / (A c³ κ Ω₀)`.
pub fn eta_ifo_incident<T: Real>(p: &IfoParams<T>, carrier: T, area: T) -> Result<T> {
    p.validate()?;
    positive("carrier frequency", carrier)?;
    positive("quantization area", area)?;
    let k = Constants::<T>::codata();
    Ok(T::lit(8.0) * T::PI() * k.hbar * k.g * p.alpha_sq() * p.optical_frequency.powi(2)
        / (area * k.c.powi(3) * p.kappa * carrier))
}
