//! Astrophysical source models: binary quadrupole emission, the effective
//! quantization area seen by a detector, and the strain-to-graviton
//! conversions used by the wait-time estimates.

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::error::{non_negative, positive, Error, Result};
use crate::quadrature::gauss_legendre;
use crate::real::Real;

/// Circular binary seen at distance `distance` and inclination `inclination`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BinarySource<T> {
    /// Reduced mass μ, kg.
    pub reduced_mass: T,
    /// Orbital radius a, m.
    pub orbital_radius: T,
    /// GW angular frequency Ω₀ (twice the orbital frequency), rad/s.
    pub carrier: T,
    /// Distance R, m.
    pub distance: T,
    /// Inclination θ, rad.
    pub inclination: T,
}

impl<T: Real> BinarySource<T> {
    pub fn validate(&self) -> Result<()> {
        positive("reduced mass", self.reduced_mass)?;
        positive("orbital radius", self.orbital_radius)?;
        positive("carrier frequency", self.carrier)?;
        positive("distance", self.distance)?;
        if !(self.inclination >= T::zero() && self.inclination <= T::PI()) {
            return Err(Error::InvalidParams(format!(
                "inclination {} outside [0, π]",
                self.inclination
            )));
        }
        Ok(())
    }

    /// `G μ Ω₀² a² / (c⁴ R)`, the face-on strain amplitude.
    fn strain_scale(&self) -> T {
        let k = Constants::<T>::codata();
        k.g * self.reduced_mass * self.carrier.powi(2) * self.orbital_radius.powi(2)
            / (k.c.powi(4) * self.distance)
    }
}

/// Geometry linking a source to a detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SourceGeom<T> {
    /// Distance R, m.
    pub distance: T,
    /// Antenna factor F (order unity).
    pub antenna_factor: T,
    /// Carrier Ω₀, rad/s.
    pub carrier: T,
    /// Detector-frame scalar strain amplitude h₀, when known.
    #[serde(default)]
    pub strain_amplitude: Option<T>,
}

impl<T: Real> SourceGeom<T> {
    pub fn new(distance: T, antenna_factor: T, carrier: T) -> Result<Self> {
        let g = Self { distance, antenna_factor, carrier, strain_amplitude: None };
        g.validate()?;
        Ok(g)
    }

    pub fn with_strain(mut self, h0: T) -> Result<Self> {
        non_negative("strain amplitude", h0)?;
        self.strain_amplitude = Some(h0);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        positive("distance", self.distance)?;
        positive("antenna factor", self.antenna_factor)?;
        positive("carrier frequency", self.carrier)?;
        if let Some(h) = self.strain_amplitude {
            non_negative("strain amplitude", h)?;
        }
        Ok(())
    }

    pub fn area(&self) -> Result<T> {
        area_factor(self.distance, self.antenna_factor)
    }
}

/// Plus and cross amplitudes `(h₊, h×)` of a circular binary.
pub fn binary_strain_amplitudes<T: Real>(src: &BinarySource<T>) -> Result<(T, T)> {
    src.validate()?;
    let h = src.strain_scale();
    let cos = src.inclination.cos();
    Ok((h * (T::one() + cos * cos) / T::lit(2.0), h * cos))
}

/// Total quadrupole luminosity `G² μ² Ω₀⁶ a⁴ / (10 c⁵)`, W.
pub fn quadrupole_total_power<T: Real>(src: &BinarySource<T>) -> Result<T> {
    src.validate()?;
    let k = Constants::<T>::codata();
    Ok(k.g.powi(2) * src.reduced_mass.powi(2) * src.carrier.powi(6) * src.orbital_radius.powi(4)
        / (T::lit(10.0) * k.c.powi(5)))
}

/// Cycle-averaged intensity `dP/dA` at inclination `theta`, W/m².
pub fn quadrupole_intensity<T: Real>(src: &BinarySource<T>, theta: T) -> T {
    let k = Constants::<T>::codata();
    let pref = k.g.powi(2) * src.reduced_mass.powi(2) * src.carrier.powi(6) * src.orbital_radius.powi(4)
        / (T::lit(32.0) * T::PI() * k.c.powi(5) * src.distance.powi(2));
    let cos2 = theta.cos().powi(2);
    let plus = (T::one() + cos2) / T::lit(2.0);
    pref * (plus * plus + cos2)
}

/// Total power from integrating `R² dP/dA` over the sphere with a product
/// rule: Gauss-Legendre in `cos θ` and uniform in `φ`.
pub fn quadrupole_power_numerical<T: Real>(
    src: &BinarySource<T>,
    n_theta: usize,
    n_phi: usize,
) -> Result<T> {
    src.validate()?;
    if n_theta == 0 || n_phi == 0 {
        return Err(Error::InvalidParams("sphere quadrature needs nodes".into()));
    }
    let (nodes, weights) = gauss_legendre::<T>(n_theta);
    let dphi = T::two_pi() / T::lit(n_phi as f64);
    let r2 = src.distance.powi(2);
    // dP/dA depends on θ only; φ enters through the uniform weights
    let integrand = |theta: T, _phi: T| r2 * quadrupole_intensity(src, theta);
    let mut total = T::zero();
    for j in 0..n_phi {
        let phi = dphi * (T::lit(j as f64) + T::lit(0.5));
        for (u, w) in nodes.iter().zip(&weights) {
            total = total + *w * dphi * integrand(u.acos(), phi);
        }
    }
    Ok(total)
}

/// Effective quantization area `A = 16π R² / (5F)`, m².
pub fn area_factor<T: Real>(distance: T, antenna_factor: T) -> Result<T> {
    positive("distance", distance)?;
    positive("antenna factor", antenna_factor)?;
    Ok(T::lit(16.0) * T::PI() * distance * distance / (T::lit(5.0) * antenna_factor))
}

/// Cycle-averaged power flux `(c³/32πG)⟨ḣ²⟩ = c³ Ω₀² h₀² / (64π G)` of
/// `h(t) = h₀ cos(Ω₀ t)`, W/m².
pub fn plane_wave_power_flux<T: Real>(h0: T, carrier: T) -> Result<T> {
    non_negative("strain amplitude", h0)?;
    non_negative("carrier frequency", carrier)?;
    let k = Constants::<T>::codata();
    Ok(k.c.powi(3) * carrier.powi(2) * h0.powi(2) / (T::lit(64.0) * T::PI() * k.g))
}

/// Coherent amplitude `|ā|² = Ω₀ c³ π A h₀² / (32 G ħ)` at the detector.
pub fn coherent_amplitude_from_strain<T: Real>(h0: T, carrier: T, area: T) -> Result<T> {
    non_negative("strain amplitude", h0)?;
    positive("carrier frequency", carrier)?;
    positive("quantization area", area)?;
    let k = Constants::<T>::codata();
    Ok(carrier * k.c.powi(3) * T::PI() * area * h0.powi(2) / (T::lit(32.0) * k.g * k.hbar))
}
