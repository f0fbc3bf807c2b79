//! Spectral densities on frequency grids, symmetrization, and band integrals.
//!
//! Fourier convention: `x[Ω] = ∫ dt x(t) e^{iΩt}`, with the symmetrized
//! double-sided density `S̄[Ω] = (S[Ω] + S[-Ω]) / 2`. Integrals over the
//! spectrum carry the `dΩ / 2π` measure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::quadrature::trapezoid;
use crate::real::{rel_diff, Real};

/// Unit tags carried by spectra.
pub mod units {
    /// Strain power spectral density, strain^2 per (rad/s).
    pub const STRAIN_PSD: &str = "strain^2/(rad/s)";
    /// Optical quadrature spectrum, quanta per (rad/s).
    pub const QUADRATURE: &str = "quanta/(rad/s)";
    /// Mechanical displacement in zero-point units, per (rad/s).
    pub const ZPM_POSITION: &str = "zpm^2/(rad/s)";
    pub const DIMENSIONLESS: &str = "1";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    SingleSidedRaw,
    DoubleSidedSymmetrized,
}

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Spectrum<T> {
    grid: FrequencyGrid<T>,
    values: Vec<T>,
    kind: SpectrumKind,
    units: String,
}

impl<T: Real> Spectrum<T> {
    pub fn new(
        grid: FrequencyGrid<T>,
        values: Vec<T>,
        kind: SpectrumKind,
        units: impl Into<String>,
    ) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::LengthMismatch(grid.len(), values.len()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= T::zero())) {
            return Err(Error::InvalidSpectrum(format!("value {} is negative or non-finite", v)));
        }
        if kind == SpectrumKind::DoubleSidedSymmetrized {
            grid.require_symmetric()?;
            let tol = T::lit(SYMMETRY_TOL);
            for i in 0..values.len() {
                let j = grid.mirror_index(i);
                if rel_diff(values[i], values[j]) > tol {
                    return Err(Error::InvalidSpectrum(format!(
                        "symmetrized spectrum differs at ±{}",
                        grid.as_slice()[i].abs()
                    )));
                }
            }
        }
        Ok(Self { grid, values, kind, units: units.into() })
    }

    pub fn from_fn(
        grid: FrequencyGrid<T>,
        kind: SpectrumKind,
        units: impl Into<String>,
        f: impl Fn(T) -> T,
    ) -> Result<Self> {
        let values = grid.iter().map(f).collect();
        Self::new(grid, values, kind, units)
    }

    pub fn zeros(grid: FrequencyGrid<T>, kind: SpectrumKind, units: impl Into<String>) -> Result<Self> {
        let values = vec![T::zero(); grid.len()];
        Self::new(grid, values, kind, units)
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn units(&self) -> &str {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn require_units(&self, expected: &str) -> Result<()> {
        if self.units == expected {
            Ok(())
        } else {
            Err(Error::UnitMismatch { expected: expected.into(), found: self.units.clone() })
        }
    }

    pub fn require_symmetrized(&self) -> Result<()> {
        if self.kind == SpectrumKind::DoubleSidedSymmetrized {
            Ok(())
        } else {
            Err(Error::InvalidSpectrum("expected a symmetrized double-sided spectrum".into()))
        }
    }

    /// Multiplies every value by a non-negative factor.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        crate::error::non_negative("scale factor", factor)?;
        let values = self.values.iter().map(|v| *v * factor).collect();
        Ok(Self { values, ..self.clone() })
    }

    /// Pointwise sum of two spectra on the same grid with the same units.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidSpectrum("cannot add spectra on different grids".into()));
        }
        other.require_units(&self.units)?;
        let kind = if self.kind == other.kind { self.kind } else { SpectrumKind::SingleSidedRaw };
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect();
        Self::new(self.grid.clone(), values, kind, self.units.clone())
    }
}

/// `(S[Ω] + S[-Ω]) / 2` on a grid closed under negation.
pub fn symmetrize<T: Real>(spec: &Spectrum<T>) -> Result<Spectrum<T>> {
    spec.grid.require_symmetric()?;
    let half = T::lit(0.5);
    let values = (0..spec.len())
        .map(|i| (spec.values[i] + spec.values[spec.grid.mirror_index(i)]) * half)
        .collect();
    Spectrum::new(
        spec.grid.clone(),
        values,
        SpectrumKind::DoubleSidedSymmetrized,
        spec.units.clone(),
    )
}

/// Trapezoidal estimate of `∫ S(Ω) dΩ / 2π` over the spectrum's grid.
pub fn integrate_spectrum<T: Real>(spec: &Spectrum<T>) -> Result<T> {
    Ok(trapezoid(spec.grid.as_slice(), &spec.values)? / T::two_pi())
}

/// `∫ w(Ω) S(Ω) dΩ / 2π` for a weight evaluated pointwise on the grid.
pub fn integrate_weighted<T: Real>(spec: &Spectrum<T>, weight: impl Fn(T) -> T) -> Result<T> {
    let ys: Vec<T> = spec
        .grid
        .iter()
        .zip(&spec.values)
        .map(|(w, s)| weight(w) * *s)
        .collect();
    Ok(trapezoid(spec.grid.as_slice(), &ys)? / T::two_pi())
}
