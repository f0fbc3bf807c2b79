//! Angular-frequency grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Strictly increasing set of angular frequencies (rad/s).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound = "T: Real")]
pub struct FrequencyGrid<T> {
    omega: Vec<T>,
    symmetric: bool,
}

impl<T: Real> FrequencyGrid<T> {
    pub fn new(omega: Vec<T>) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        if omega.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidGrid("non-finite frequency".into()));
        }
        if omega.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::InvalidGrid("frequencies not strictly increasing".into()));
        }
        let symmetric = is_mirror_closed(&omega);
        Ok(Self { omega, symmetric })
    }

    /// `n` evenly spaced points on `[lo, hi]`.
    pub fn linspace(lo: T, hi: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewPoints { needed: 2, got: n });
        }
        let step = (hi - lo) / T::lit((n - 1) as f64);
        let omega = (0..n).map(|i| lo + step * T::lit(i as f64)).collect();
        Self::new(omega)
    }

    /// `n` evenly spaced points on `[-max, max]`, mirrored exactly.
    pub fn symmetric(max: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewPoints { needed: 2, got: n });
        }
        let step = (max + max) / T::lit((n - 1) as f64);
        let mut omega: Vec<T> = (0..n).map(|i| -max + step * T::lit(i as f64)).collect();
        for i in 0..n / 2 {
            omega[n - 1 - i] = -omega[i];
        }
        if n % 2 == 1 {
            omega[n / 2] = T::zero();
        }
        Self::new(omega)
    }

    /// Mirrors a set of strictly positive frequencies onto the negative axis.
    pub fn mirrored(positive: &[T]) -> Result<Self> {
        if positive.iter().any(|w| *w <= T::zero()) {
            return Err(Error::InvalidGrid("mirrored grid needs positive frequencies".into()));
        }
        let mut omega: Vec<T> = positive.iter().rev().map(|w| -*w).collect();
        omega.extend_from_slice(positive);
        Self::new(omega)
    }

    /// Two dense bands `[±center - half_width, ±center + half_width]` with
    /// `n_per_band` points each. Suited to narrowband spectra at `±center`.
    pub fn symmetric_bands(center: T, half_width: T, n_per_band: usize) -> Result<Self> {
        if half_width <= T::zero() || half_width >= center {
            return Err(Error::InvalidGrid(format!(
                "band half-width {} must lie in (0, {})",
                half_width, center
            )));
        }
        let band = Self::linspace(center - half_width, center + half_width, n_per_band)?;
        Self::mirrored(band.as_slice())
    }

    pub fn as_slice(&self) -> &[T] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.symmetric {
            Ok(())
        } else {
            Err(Error::GridNotSymmetric)
        }
    }

    /// Index of `-omega[i]` on a symmetric grid.
    #[inline]
    pub fn mirror_index(&self, i: usize) -> usize {
        self.omega.len() - 1 - i
    }

    pub fn contains_zero(&self) -> bool {
        self.omega.iter().any(|w| *w == T::zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.omega.iter().copied()
    }
}

impl<T: Real> TryFrom<Vec<T>> for FrequencyGrid<T> {
    type Error = Error;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T: Real> From<FrequencyGrid<T>> for Vec<T> {
    fn from(g: FrequencyGrid<T>) -> Self {
        g.omega
    }
}

fn is_mirror_closed<T: Real>(omega: &[T]) -> bool {
    let scale = omega
        .iter()
        .fold(T::zero(), |m, w| m.max(w.abs()));
    let tol = T::lit(1e-12) * scale;
    let n = omega.len();
    (0..n).all(|i| (omega[i] + omega[n - 1 - i]).abs() <= tol)
}

/// Linear interpolation of `(xs, ys)` at `x`; zero outside `[xs[0], xs[n-1]]`.
pub fn interp_or_zero<T, V>(xs: &[T], ys: &[V], x: T) -> V
where
    T: Real,
    V: Copy + num_traits::Zero + std::ops::Mul<T, Output = V> + std::ops::Add<Output = V>,
{
    let n = xs.len();
    if n == 0 || x < xs[0] || x > xs[n - 1] {
        return V::zero();
    }
    if n == 1 {
        return ys[0];
    }
    let hi = xs.partition_point(|v| *v < x).min(n - 1);
    if xs[hi] == x {
        return ys[hi];
    }
    let lo = hi - 1;
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] * (T::one() - t) + ys[hi] * t
}
