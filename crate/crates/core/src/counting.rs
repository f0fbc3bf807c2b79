//! Click statistics of a graviton counter driven by a coherent GW.
//!
//! Clicks form a Poisson process with rate `r = η|ā|²/4`; the wait time to
//! the next click is exponential and independent of when the last one was.

use std::fmt::Write as _;

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::bar::BarParams;
use crate::constants::Constants;
use crate::error::{non_negative, positive, Error, Result};
use crate::ifo::IfoParams;
use crate::real::Real;

/// Name and version of the generator behind [`sample_click_stream`].
pub const RNG_NAME: &str = "pcg64-mcg-128/rand_pcg-0.3";

/// Click rate split into its GW-driven and dark parts, 1/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ClickRate<T> {
    pub total: T,
    pub gw_part: T,
    pub dark_part: T,
}

/// Exponential wait-time model with rate `r`, 1/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct WaitTimeModel<T> {
    pub rate: T,
}

impl<T: Real> WaitTimeModel<T> {
    pub fn new(rate: T) -> Result<Self> {
        non_negative("click rate", rate)?;
        Ok(Self { rate })
    }

    /// `r = η|ā|²/4`.
    pub fn from_efficiency(eta: T, abar_sq: T) -> Result<Self> {
        non_negative("efficiency", eta)?;
        non_negative("coherent amplitude squared", abar_sq)?;
        Self::new(eta * abar_sq / T::lit(4.0))
    }

    /// `r = (η|ā|²)/4` from a precomputed rate product.
    pub fn from_rate_product(product: T) -> Result<Self> {
        non_negative("rate product", product)?;
        Self::new(product / T::lit(4.0))
    }

    pub fn mean_wait(&self) -> T {
        self.rate.recip()
    }

    /// `P(wait ≤ τ) = 1 − e^{−rτ}`.
    pub fn cdf(&self, tau: T) -> T {
        if tau <= T::zero() {
            T::zero()
        } else {
            -(-self.rate * tau).exp_m1()
        }
    }
}

/// `w(τ) = r e^{−rτ}`.
pub fn wait_time_pdf<T: Real>(model: &WaitTimeModel<T>, tau: T) -> Result<T> {
    non_negative("wait time", tau)?;
    Ok(model.rate * (-model.rate * tau).exp())
}

/// `η_ifo|ā|² = π²ᾱ²ω₀²h₀² / (4κ)`; independent of the quantization area.
pub fn rate_product_ifo<T: Real>(p: &IfoParams<T>, h0: T, carrier: T) -> Result<T> {
    p.validate()?;
    non_negative("strain amplitude", h0)?;
    positive("carrier frequency", carrier)?;
    Ok(T::PI() * T::PI() * p.alpha_sq() * p.optical_frequency.powi(2) * h0 * h0 / (T::lit(4.0) * p.kappa))
}

/// `η_bar|ā|² = 8g²ML²Ω₀⁴h₀² / (3πħκω_mγ_m²)`.
pub fn rate_product_bar<T: Real>(p: &BarParams<T>, h0: T, carrier: T) -> Result<T> {
    p.validate()?;
    non_negative("strain amplitude", h0)?;
    positive("carrier frequency", carrier)?;
    let hbar = Constants::<T>::codata().hbar;
    Ok(T::lit(8.0) * p.coupling.powi(2) * p.mass * p.length.powi(2) * carrier.powi(4) * h0 * h0
        / (T::lit(3.0) * T::PI() * hbar * p.kappa * p.mode_frequency * p.damping.powi(2)))
}

/// A seeded realization of click arrival times on `[0, duration]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClickStream {
    pub seed: u64,
    pub rate: f64,
    pub duration: f64,
    pub click_times: Vec<f64>,
}

impl ClickStream {
    pub fn len(&self) -> usize {
        self.click_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.click_times.is_empty()
    }

    /// Gaps between successive clicks, starting from t = 0.
    pub fn waits(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.click_times
            .iter()
            .map(|&t| {
                let w = t - prev;
                prev = t;
                w
            })
            .collect()
    }

    /// Merges another stream over the same window; rates add, the seed of
    /// `self` is kept.
    pub fn superpose(&self, other: &ClickStream) -> Result<ClickStream> {
        if self.duration != other.duration {
            return Err(Error::InvalidParams(format!(
                "cannot superpose streams of duration {} and {}",
                self.duration, other.duration
            )));
        }
        let mut times: Vec<f64> = self.click_times.iter().chain(&other.click_times).copied().collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        Ok(ClickStream { seed: self.seed, rate: self.rate + other.rate, duration: self.duration, click_times: times })
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# seed={} rate_hz={:?} duration_s={:?}\n", self.seed, self.rate, self.duration);
        for t in &self.click_times {
            let _ = writeln!(out, "{:.16e}", t);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidParams(format!("click stream CSV: {m}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let header = header.strip_prefix('#').ok_or_else(|| bad("missing header".into()))?;
        let (mut seed, mut rate, mut duration) = (None, None, None);
        for field in header.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad(format!("bad header field {field}")))?;
            let num_err = |_| bad(format!("bad value for {k}"));
            match k {
                "seed" => seed = Some(v.parse::<u64>().map_err(|_| bad("bad seed".into()))?),
                "rate_hz" => rate = Some(v.parse::<f64>().map_err(num_err)?),
                "duration_s" => duration = Some(v.parse::<f64>().map_err(num_err)?),
                _ => return Err(bad(format!("unknown header key {k}"))),
            }
        }
        let click_times = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.trim().parse::<f64>().map_err(|_| bad(format!("bad click time {l}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClickStream {
            seed: seed.ok_or_else(|| bad("missing seed".into()))?,
            rate: rate.ok_or_else(|| bad("missing rate_hz".into()))?,
            duration: duration.ok_or_else(|| bad("missing duration_s".into()))?,
            click_times,
        })
    }
}

/// Draws i.i.d. exponential waits by inverse CDF until `duration` is passed.
pub fn sample_click_stream<T: Real>(model: &WaitTimeModel<T>, duration: T, seed: u64) -> Result<ClickStream> {
    positive("duration", duration)?;
    let rate = non_negative("click rate", model.rate)?.to_f64_lossy();
    let duration = duration.to_f64_lossy();
    let mut times = Vec::new();
    if rate > 0.0 {
        let mut rng = Pcg64::seed_from_u64(seed);
        let mut t = 0.0_f64;
        loop {
            let u: f64 = rng.sample(Open01);
            let next = t - u.ln() / rate;
            if next > duration {
                break;
            }
            // a gap below one ulp of t merges with the previous click
            if next > t {
                times.push(next);
            }
            t = next;
        }
    }
    Ok(ClickStream { seed, rate, duration, click_times: times })
}

/// Kolmogorov survival function `Q(λ) = 2 Σ (−1)^{j−1} e^{−2j²λ²}`.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=200 {
        let term = sign * (-2.0 * (j * j) as f64 * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Result of a Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

fn ks_p_value(d: f64, n_eff: f64) -> f64 {
    let s = n_eff.sqrt();
    kolmogorov_q((s + 0.12 + 0.11 / s) * d)
}

/// One-sample KS test of `samples` against `cdf`.
pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
    if samples.is_empty() {
        return Err(Error::InvalidParams("KS test needs samples".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(KsResult { statistic: d, p_value: ks_p_value(d, n) })
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParams("KS test needs samples".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0_f64);
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(KsResult { statistic: d, p_value: ks_p_value(d, n * m / (n + m)) })
}
