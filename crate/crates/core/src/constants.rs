//! Physical constants (CODATA 2018) and astronomical length units.

use crate::real::Real;

pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// One megaparsec in metres (IAU 2015 parsec).
pub const MEGAPARSEC: f64 = 3.085_677_581_491_367e22;
/// Solar mass in kilograms.
pub const SOLAR_MASS: f64 = 1.988_47e30;

/// Immutable bundle of the three constants every formula needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants<T> {
    /// G, m^3 kg^-1 s^-2.
    pub g: T,
    /// c, m/s.
    pub c: T,
    /// hbar, J s.
    pub hbar: T,
}

impl<T: Real> Constants<T> {
    pub fn codata() -> Self {
        Self {
            g: T::lit(GRAVITATIONAL_CONSTANT),
            c: T::lit(SPEED_OF_LIGHT),
            hbar: T::lit(REDUCED_PLANCK),
        }
    }
}

impl<T: Real> Default for Constants<T> {
    fn default() -> Self {
        Self::codata()
    }
}

/// Converts a frequency in Hz to angular frequency in rad/s.
#[inline]
pub fn hz_to_rad<T: Real>(hz: T) -> T {
    hz * T::two_pi()
}

/// Converts an angular frequency in rad/s to Hz.
#[inline]
pub fn rad_to_hz<T: Real>(rad: T) -> T {
    rad / T::two_pi()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig4(x: f64) -> String {
        format!("{:.3e}", x)
    }

    #[test]
    fn codata_to_four_figures() {
        let k = Constants::<f64>::codata();
        assert_eq!(sig4(k.g), "6.674e-11");
        assert_eq!(sig4(k.c), "2.998e8");
        assert_eq!(sig4(k.hbar), "1.055e-34");
    }

    #[test]
    fn hz_round_trip() {
        let w = hz_to_rad(60.0_f64);
        assert!((w - 376.991_118_430_775_2).abs() < 1e-9);
        assert!((rad_to_hz(w) - 60.0).abs() < 1e-12);
    }
}
