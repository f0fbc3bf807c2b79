#![allow(dead_code)]

use gwdk_core::constants::{hz_to_rad, MEGAPARSEC};
use gwdk_core::{BarParams, IfoParams, SourceGeom};

pub fn aligo() -> IfoParams {
    IfoParams {
        kappa: hz_to_rad(400.0),
        optical_frequency: hz_to_rad(282e12),
        arm_length: 4e3,
        mirror_mass: 40.0,
        suspension_frequency: hz_to_rad(1.0),
        suspension_damping: hz_to_rad(1e-6),
        circulating_power: 1e6,
        detuning: 0.0,
    }
}

pub fn niobe() -> BarParams {
    BarParams::from_sound_speed(1000.0, 3.0, 6000.0, 0, hz_to_rad(1e-5), hz_to_rad(1000.0), hz_to_rad(100.0), 0.0)
        .unwrap()
}

pub fn binary_geom(carrier_hz: f64) -> SourceGeom {
    SourceGeom::new(100.0 * MEGAPARSEC, 1.0, hz_to_rad(carrier_hz)).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    gwdk_core::real::rel_diff(a, b)
}
