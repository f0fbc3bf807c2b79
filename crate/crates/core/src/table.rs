//! Wave/particle response matrix: both transducers, both readouts, and
//! coherent versus Fock input.
//!
//! Each row carries the response computed through the full pipeline
//! (state → strain → transducer → detector) next to the expected scaling
//! `√η·ā`, `η·|ā|²`, `0` or `η·n`. Their ratio is a fixed property of the
//! chain, independent of `ā` and `n`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bar::{bar_click_rate, bar_homodyne_mean, eta_bar_incident, BarParams};
use crate::error::{non_negative, positive, Result};
use crate::field::{mean_strain, strain_psd, GwState};
use crate::grid::FrequencyGrid;
use crate::ifo::{eta_ifo_incident, ifo_click_rate, ifo_homodyne_mean, IfoInputs, IfoParams};
use crate::quadrature::trapezoid;
use crate::real::Real;
use crate::source::area_factor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transducer {
    Ifo,
    Bar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Readout {
    Homodyne,
    Absorptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Coherent,
    Fock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ResponseRow<T> {
    pub transducer: Transducer,
    pub readout: Readout,
    pub state: FieldKind,
    /// Pipeline value: L2 norm of the homodyne mean, or the GW click rate.
    pub response: T,
    /// Expected scaling evaluated with the incident-flux efficiency.
    pub scaling: T,
    pub expression: String,
    /// `response / scaling`, zero when the scaling vanishes.
    pub ratio: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct TableSettings<T> {
    /// Coherent amplitude `|ā|` (square root of the mean graviton number).
    pub coherent_amplitude: T,
    /// Graviton number of the Fock input.
    pub fock_number: u64,
    /// Source distance R, m; fixes the quantization area with `F`.
    pub distance: T,
    pub antenna_factor: T,
    /// Interferometer carrier Ω₀, rad/s. The bar is driven at its mode.
    pub ifo_carrier: T,
    /// Envelope RMS widths, rad/s.
    pub ifo_bandwidth: T,
    pub bar_bandwidth: T,
    /// Grid points per sideband.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ResponseTable<T> {
    pub settings: TableSettings<T>,
    pub rows: Vec<ResponseRow<T>>,
}

impl<T: Real> ResponseTable<T> {
    pub fn row(&self, transducer: Transducer, readout: Readout, state: FieldKind) -> Option<&ResponseRow<T>> {
        self.rows
            .iter()
            .find(|r| r.transducer == transducer && r.readout == readout && r.state == state)
    }
}

fn l2_norm<T: Real>(grid: &FrequencyGrid<T>, values: &[Complex<T>]) -> Result<T> {
    let dens: Vec<T> = values.iter().map(|v| v.norm_sqr()).collect();
    Ok((trapezoid(grid.as_slice(), &dens)? / T::two_pi()).sqrt())
}

struct Chain<T: Real> {
    grid: FrequencyGrid<T>,
    coherent: GwState<T>,
    fock: GwState<T>,
    eta: T,
}

impl<T: Real> Chain<T> {
    fn new(carrier: T, area: T, bandwidth: T, s: &TableSettings<T>, eta: T) -> Result<Self> {
        let amp = Complex::new(s.coherent_amplitude, T::zero());
        // ±8σ keeps the envelope tails below double precision
        let grid = FrequencyGrid::symmetric_bands(carrier, T::lit(8.0) * bandwidth, s.points)?;
        Ok(Self {
            grid,
            coherent: GwState::coherent_gaussian(carrier, area, amp, bandwidth, s.points)?,
            fock: GwState::fock_gaussian(s.fock_number, carrier, area, bandwidth, s.points)?,
            eta,
        })
    }

    fn rows(
        &self,
        transducer: Transducer,
        s: &TableSettings<T>,
        homodyne: impl Fn(&[Complex<T>]) -> Result<Vec<Complex<T>>>,
        absorptive: impl Fn(&GwState<T>) -> Result<T>,
    ) -> Result<Vec<ResponseRow<T>>> {
        let name = match transducer {
            Transducer::Ifo => "eta_ifo",
            Transducer::Bar => "eta_bar",
        };
        let a = s.coherent_amplitude;
        let n = T::lit(s.fock_number as f64);
        let mut out = Vec::with_capacity(4);
        for (state, kind) in [(&self.coherent, FieldKind::Coherent), (&self.fock, FieldKind::Fock)] {
            let mean = homodyne(&mean_strain(state, &self.grid)?)?;
            let (scaling, expr) = match kind {
                FieldKind::Coherent => (self.eta.sqrt() * a, format!("sqrt({name})*|a|")),
                FieldKind::Fock => (T::zero(), "0".to_string()),
            };
            out.push(row(transducer, Readout::Homodyne, kind, l2_norm(&self.grid, &mean)?, scaling, expr));
        }
        for (state, kind) in [(&self.coherent, FieldKind::Coherent), (&self.fock, FieldKind::Fock)] {
            let (scaling, expr) = match kind {
                FieldKind::Coherent => (self.eta * a * a, format!("{name}*|a|^2")),
                FieldKind::Fock => (self.eta * n, format!("{name}*n")),
            };
            out.push(row(transducer, Readout::Absorptive, kind, absorptive(state)?, scaling, expr));
        }
        Ok(out)
    }
}

fn row<T: Real>(
    transducer: Transducer,
    readout: Readout,
    state: FieldKind,
    response: T,
    scaling: T,
    expression: String,
) -> ResponseRow<T> {
    let ratio = if scaling == T::zero() { T::zero() } else { response / scaling };
    ResponseRow { transducer, readout, state, response, scaling, expression, ratio }
}

/// Evaluates all eight rows. Homodyne rows are ordered before absorptive
/// ones, coherent before Fock, interferometer before bar.
pub fn build_response_table<T: Real>(
    ifo: &IfoParams<T>,
    bar: &BarParams<T>,
    settings: &TableSettings<T>,
) -> Result<ResponseTable<T>> {
    non_negative("coherent amplitude", settings.coherent_amplitude)?;
    positive("ifo bandwidth", settings.ifo_bandwidth)?;
    positive("bar bandwidth", settings.bar_bandwidth)?;
    let area = area_factor(settings.distance, settings.antenna_factor)?;

    let w_ifo = settings.ifo_carrier;
    let ifo_chain = Chain::new(w_ifo, area, settings.ifo_bandwidth, settings, eta_ifo_incident(ifo, w_ifo, area)?)?;
    let inputs = IfoInputs::default();
    let ifo_rows = ifo_chain.rows(
        Transducer::Ifo,
        settings,
        |h| ifo_homodyne_mean(ifo, h, &ifo_chain.grid),
        |st| Ok(ifo_click_rate(ifo, &strain_psd(st, &ifo_chain.grid)?, &inputs)?.gw_part),
    )?;

    let w_bar = bar.mode_frequency;
    let bar_chain = Chain::new(w_bar, area, settings.bar_bandwidth, settings, eta_bar_incident(bar, w_bar, area)?)?;
    let bar_rows = bar_chain.rows(
        Transducer::Bar,
        settings,
        |h| Ok(bar_homodyne_mean(bar, h, w_bar, &bar_chain.grid)?.values),
        |st| Ok(bar_click_rate(bar, &strain_psd(st, &bar_chain.grid)?, w_bar)?.rate.gw_part),
    )?;

    let mut rows = Vec::with_capacity(8);
    for readout in [Readout::Homodyne, Readout::Absorptive] {
        for state in [FieldKind::Coherent, FieldKind::Fock] {
            for r in ifo_rows.iter().chain(&bar_rows) {
                if r.readout == readout && r.state == state {
                    rows.push(r.clone());
                }
            }
        }
    }
    Ok(ResponseTable { settings: *settings, rows })
}
