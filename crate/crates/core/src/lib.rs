//! Measurement-chain models for quantized gravitational radiation.
//!
//! The chain runs from a GW field state ([`field`]) through a transducer
//! (the Fabry-Perot antenna in [`ifo`] or the resonant bar in [`bar`]) to a
//! detector that either reads out one quadrature (homodyne, linear in the
//! field amplitude) or counts quanta (absorptive, quadratic in it). The
//! [`counting`] module turns click rates into wait-time statistics and
//! seeded click streams; [`table`] evaluates the wave/particle response
//! matrix across both transducers and both readouts.
//!
//! All models are generic over [`Real`]; the aliases at the crate root fix
//! the scalar to `f64`, which is what the fiducial numbers need.

pub mod bar;
pub mod constants;
pub mod counting;
pub mod error;
pub mod field;
pub mod grid;
pub mod ifo;
pub mod quadrature;
pub mod real;
pub mod source;
pub mod spectrum;
pub mod table;

pub use error::{Error, Result};
pub use real::Real;

pub use num_complex::Complex;

pub type Constants = constants::Constants<f64>;
pub type FrequencyGrid = grid::FrequencyGrid<f64>;
pub type Spectrum = spectrum::Spectrum<f64>;
pub type Envelope = field::Envelope<f64>;
pub type GwState = field::GwState<f64>;
pub type BinarySource = source::BinarySource<f64>;
pub type SourceGeom = source::SourceGeom<f64>;
pub type IfoParams = ifo::IfoParams<f64>;
pub type IfoNoiseBudget = ifo::IfoNoiseBudget<f64>;
pub type IfoInputs = ifo::IfoInputs<f64>;
pub type BarParams = bar::BarParams<f64>;
pub type BarResponse = bar::BarResponse<f64>;
pub type BarClickRate = bar::BarClickRate<f64>;
pub type ClickRate = counting::ClickRate<f64>;
pub type WaitTimeModel = counting::WaitTimeModel<f64>;
pub type ResponseTable = table::ResponseTable<f64>;
pub type TableSettings = table::TableSettings<f64>;

pub use counting::ClickStream;
