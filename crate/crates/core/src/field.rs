//! Quantum states of the propagating gravitational-wave field, their strain
//! statistics, and graviton-flux functionals.
//!
//! Envelopes live on the same signed angular-frequency axis as the strain
//! spectra they produce, so a narrowband state with carrier `Ω₀` has its
//! envelope concentrated near `+Ω₀` and its symmetrized strain PSD split
//! between `±Ω₀`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::constants::{hz_to_rad, rad_to_hz, Constants};
use crate::error::{non_negative, positive, Error, Result};
use crate::grid::{interp_or_zero, FrequencyGrid};
use crate::quadrature::trapezoid;
use crate::real::{rel_diff, Real};
use crate::spectrum::{integrate_spectrum, integrate_weighted, symmetrize, units, Spectrum, SpectrumKind};

const FOCK_NORM_TOL: f64 = 1e-6;

/// Complex frequency envelope sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope<T> {
    grid: FrequencyGrid<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> Envelope<T> {
    pub fn new(grid: FrequencyGrid<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::LengthMismatch(grid.len(), values.len()));
        }
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidState("non-finite envelope value".into()));
        }
        Ok(Self { grid, values })
    }

    /// Gaussian envelope centred on `center` with power-density width
    /// `sigma`, normalized so that `∫|ξ|² dΩ = 1` under the trapezoid rule.
    /// Spans `±6σ` with `points` samples.
    pub fn gaussian(center: T, sigma: T, points: usize) -> Result<Self> {
        positive("envelope width", sigma)?;
        let span = T::lit(6.0) * sigma;
        let grid = FrequencyGrid::linspace(center - span, center + span, points.max(3))?;
        let two = T::lit(2.0);
        let dens: Vec<T> = grid
            .iter()
            .map(|w| {
                let x = (w - center) / sigma;
                (-(x * x) / two).exp()
            })
            .collect();
        let norm = trapezoid(grid.as_slice(), &dens)?;
        let values = dens.iter().map(|d| Complex::new((*d / norm).sqrt(), T::zero())).collect();
        Self::new(grid, values)
    }

    /// A delta-like envelope: one bin of `width` at `center` carrying the
    /// integrated amplitude `weight` (bin width folded into the value).
    pub fn single_bin(center: T, weight: Complex<T>, width: T) -> Result<Self> {
        positive("bin width", width)?;
        let grid = FrequencyGrid::new(vec![center - width, center, center + width])?;
        let zero = Complex::new(T::zero(), T::zero());
        Self::new(grid, vec![zero, weight / width, zero])
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|z| *z * factor).collect() }
    }

    /// `∫ |env(Ω)|² dΩ` by the trapezoid rule on the envelope's own grid.
    pub fn norm_sqr(&self) -> T {
        let dens: Vec<T> = self.values.iter().map(|z| z.norm_sqr()).collect();
        if self.grid.len() < 2 {
            return T::zero();
        }
        trapezoid(self.grid.as_slice(), &dens).unwrap_or_else(|_| T::zero())
    }

    /// Linear interpolation of the envelope at `omega`, zero outside.
    pub fn at(&self, omega: T) -> Complex<T> {
        interp_or_zero(self.grid.as_slice(), &self.values, omega)
    }

    /// Linear interpolation of `|env|²` at `omega`, zero outside.
    pub fn density_at(&self, omega: T) -> T {
        let dens: Vec<T> = self.values.iter().map(|z| z.norm_sqr()).collect();
        interp_or_zero(self.grid.as_slice(), &dens, omega)
    }
}

/// State of the (single-polarization) propagating GW field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GwStateRepr<T>", into = "GwStateRepr<T>")]
#[serde(bound = "T: Real")]
pub enum GwState<T: Real> {
    Vacuum,
    Coherent { carrier: T, area: T, envelope: Envelope<T> },
    Fock { n: u64, carrier: T, area: T, envelope: Envelope<T> },
}

impl<T: Real> GwState<T> {
    pub fn coherent(carrier: T, area: T, envelope: Envelope<T>) -> Result<Self> {
        positive("carrier frequency", carrier)?;
        positive("quantization area", area)?;
        Ok(Self::Coherent { carrier, area, envelope })
    }

    pub fn fock(n: u64, carrier: T, area: T, envelope: Envelope<T>) -> Result<Self> {
        positive("carrier frequency", carrier)?;
        positive("quantization area", area)?;
        let norm = envelope.norm_sqr();
        if rel_diff(norm, T::one()) > T::lit(FOCK_NORM_TOL) {
            return Err(Error::InvalidState(format!(
                "Fock envelope must satisfy ∫|ξ|² dΩ = 1, got {}",
                norm
            )));
        }
        Ok(Self::Fock { n, carrier, area, envelope })
    }

    /// Coherent state with a Gaussian envelope whose integrated intensity
    /// `∫|ā|² dΩ` equals `|amplitude|²`.
    pub fn coherent_gaussian(
        carrier: T,
        area: T,
        amplitude: Complex<T>,
        bandwidth: T,
        points: usize,
    ) -> Result<Self> {
        let env = Envelope::gaussian(carrier, bandwidth, points)?.scaled(amplitude);
        Self::coherent(carrier, area, env)
    }

    pub fn fock_gaussian(n: u64, carrier: T, area: T, bandwidth: T, points: usize) -> Result<Self> {
        Self::fock(n, carrier, area, Envelope::gaussian(carrier, bandwidth, points)?)
    }

    pub fn carrier(&self) -> Option<T> {
        match self {
            Self::Vacuum => None,
            Self::Coherent { carrier, .. } | Self::Fock { carrier, .. } => Some(*carrier),
        }
    }

    pub fn area(&self) -> Option<T> {
        match self {
            Self::Vacuum => None,
            Self::Coherent { area, .. } | Self::Fock { area, .. } => Some(*area),
        }
    }

    /// Mean graviton number carried by the state: `∫|ā|² dΩ` or `n`.
    pub fn mean_number(&self) -> T {
        match self {
            Self::Vacuum => T::zero(),
            Self::Coherent { envelope, .. } => envelope.norm_sqr(),
            Self::Fock { n, .. } => T::lit(*n as f64),
        }
    }
}

/// `h_Ω₀ = sqrt(16 ħ G / (c³ π Ω₀ A))`.
pub fn strain_normalization<T: Real>(carrier: T, area: T) -> Result<T> {
    positive("carrier frequency", carrier)?;
    positive("quantization area", area)?;
    let k = Constants::<T>::codata();
    Ok((T::lit(16.0) * k.hbar * k.g / (k.c.powi(3) * T::PI() * carrier * area)).sqrt())
}

/// Mean strain `⟨ĥ[Ω]⟩` on `grid`: `4π h_Ω₀ ā[Ω]` for coherent states, zero
/// for vacuum and Fock states.
pub fn mean_strain<T: Real>(state: &GwState<T>, grid: &FrequencyGrid<T>) -> Result<Vec<Complex<T>>> {
    let zero = Complex::new(T::zero(), T::zero());
    match state {
        GwState::Vacuum | GwState::Fock { .. } => Ok(vec![zero; grid.len()]),
        GwState::Coherent { carrier, area, envelope } => {
            let scale = T::lit(4.0) * T::PI() * strain_normalization(*carrier, *area)?;
            Ok(grid.iter().map(|w| envelope.at(w) * scale).collect())
        }
    }
}

/// `16π ħ G / (c³ Ω₀ A)`: strain PSD integral carrying one graviton per second.
fn flux_quantum<T: Real>(carrier: T, area: T) -> T {
    let k = Constants::<T>::codata();
    T::lit(16.0) * T::PI() * k.hbar * k.g / (k.c.powi(3) * carrier * area)
}

/// Symmetrized strain PSD of the state on a symmetric grid.
///
/// Defined so that [`graviton_flux_narrowband`] returns the state's mean
/// graviton number (`∫|ā|² dΩ` or `n`). Vacuum maps to zero; the
/// vacuum half-quantum offset is not represented.
pub fn strain_psd<T: Real>(state: &GwState<T>, grid: &FrequencyGrid<T>) -> Result<Spectrum<T>> {
    grid.require_symmetric()?;
    let (carrier, area, envelope, count) = match state {
        GwState::Vacuum => {
            return Spectrum::zeros(grid.clone(), SpectrumKind::DoubleSidedSymmetrized, units::STRAIN_PSD)
        }
        GwState::Coherent { carrier, area, envelope } => (*carrier, *area, envelope, T::one()),
        GwState::Fock { n, carrier, area, envelope } => (*carrier, *area, envelope, T::lit(*n as f64)),
    };
    let scale = count * T::two_pi() * flux_quantum(carrier, area);
    let raw = Spectrum::from_fn(grid.clone(), SpectrumKind::SingleSidedRaw, units::STRAIN_PSD, |w| {
        scale * envelope.density_at(w)
    })?;
    symmetrize(&raw)
}

fn check_psd<T: Real>(psd: &Spectrum<T>) -> Result<()> {
    psd.require_units(units::STRAIN_PSD)?;
    psd.require_symmetrized()
}

/// Narrowband graviton flux `(c³ Ω₀ A / 16π ħ G) ∫ dΩ/2π S̄_hh`, in 1/s.
pub fn graviton_flux_narrowband<T: Real>(psd: &Spectrum<T>, carrier: T, area: T) -> Result<T> {
    check_psd(psd)?;
    positive("carrier frequency", carrier)?;
    positive("quantization area", area)?;
    Ok(integrate_spectrum(psd)? / flux_quantum(carrier, area))
}

/// Broadband graviton flux `∫ dΩ/2π (c³ |Ω| A / 16π ħ G) S̄_hh`, in 1/s.
pub fn graviton_flux_broadband<T: Real>(psd: &Spectrum<T>, area: T) -> Result<T> {
    check_psd(psd)?;
    positive("quantization area", area)?;
    let k = Constants::<T>::codata();
    let pref = k.c.powi(3) * area / (T::lit(16.0) * T::PI() * k.hbar * k.g);
    integrate_weighted(psd, |w| pref * w.abs())
}

/// Graviton flux emitted by an astrophysical source,
/// `(c³ R² Ω₀ / 5 ħ G F) ∫ dΩ/2π S̄_hh`, in 1/s.
///
/// Identical to [`graviton_flux_narrowband`] with `A = 16π R² / (5F)`;
/// `F = 6/5` gives the `c³R²Ω₀/(6ħG)` prefactor.
pub fn graviton_flux_source<T: Real>(
    psd: &Spectrum<T>,
    carrier: T,
    distance: T,
    antenna_factor: T,
) -> Result<T> {
    check_psd(psd)?;
    positive("carrier frequency", carrier)?;
    positive("distance", distance)?;
    positive("antenna factor", antenna_factor)?;
    let k = Constants::<T>::codata();
    let pref = k.c.powi(3) * distance * distance * carrier
        / (T::lit(5.0) * k.hbar * k.g * antenna_factor);
    Ok(pref * integrate_spectrum(psd)?)
}

/// JSON form: `{"type":"coherent","omega0_hz":..,"area_m2":..,"envelope":[[Ω,Re,Im],..]}`.
/// Envelope frequencies are angular (rad/s); the carrier is given in Hz.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
#[serde(bound = "T: Real")]
pub enum GwStateRepr<T: Real> {
    Vacuum,
    Coherent { omega0_hz: T, area_m2: T, envelope: Vec<[T; 3]> },
    Fock { n: u64, omega0_hz: T, area_m2: T, envelope: Vec<[T; 3]> },
}

fn envelope_from_rows<T: Real>(rows: &[[T; 3]]) -> Result<Envelope<T>> {
    let grid = FrequencyGrid::new(rows.iter().map(|r| r[0]).collect())?;
    Envelope::new(grid, rows.iter().map(|r| Complex::new(r[1], r[2])).collect())
}

fn envelope_rows<T: Real>(env: &Envelope<T>) -> Vec<[T; 3]> {
    env.grid.iter().zip(&env.values).map(|(w, z)| [w, z.re, z.im]).collect()
}

impl<T: Real> TryFrom<GwStateRepr<T>> for GwState<T> {
    type Error = Error;
    fn try_from(r: GwStateRepr<T>) -> Result<Self> {
        match r {
            GwStateRepr::Vacuum => Ok(Self::Vacuum),
            GwStateRepr::Coherent { omega0_hz, area_m2, envelope } => {
                Self::coherent(hz_to_rad(omega0_hz), area_m2, envelope_from_rows(&envelope)?)
            }
            GwStateRepr::Fock { n, omega0_hz, area_m2, envelope } => {
                non_negative("omega0_hz", omega0_hz)?;
                Self::fock(n, hz_to_rad(omega0_hz), area_m2, envelope_from_rows(&envelope)?)
            }
        }
    }
}

impl<T: Real> From<GwState<T>> for GwStateRepr<T> {
    fn from(s: GwState<T>) -> Self {
        match s {
            GwState::Vacuum => Self::Vacuum,
            GwState::Coherent { carrier, area, envelope } => Self::Coherent {
                omega0_hz: rad_to_hz(carrier),
                area_m2: area,
                envelope: envelope_rows(&envelope),
            },
            GwState::Fock { n, carrier, area, envelope } => Self::Fock {
                n,
                omega0_hz: rad_to_hz(carrier),
                area_m2: area,
                envelope: envelope_rows(&envelope),
            },
        }
    }
}
