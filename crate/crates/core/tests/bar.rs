mod common;

use common::{niobe, rel};
use gwdk_core::bar::*;
use gwdk_core::constants::REDUCED_PLANCK;
use gwdk_core::field::{mean_strain, strain_psd};
use gwdk_core::spectrum::{units, SpectrumKind};
use gwdk_core::{Complex, FrequencyGrid, GwState, Spectrum};
use proptest::prelude::*;

fn zero_psd(grid: FrequencyGrid) -> Spectrum {
    Spectrum::zeros(grid, SpectrumKind::DoubleSidedSymmetrized, units::STRAIN_PSD).unwrap()
}

fn in_band_grid(p: &BarParams<f64>) -> (f64, FrequencyGrid) {
    let sigma = p.damping / 100.0;
    (sigma, FrequencyGrid::symmetric_bands(p.mode_frequency, 8.0 * sigma, 801).unwrap())
}

#[test]
fn bare_oscillator_is_lorentzian_pair() {
    let p = BarParams { coupling: 0.0, thermal_occupancy: 0.0, ..niobe() };
    let grid = FrequencyGrid::symmetric(2.0 * p.mode_frequency, 2001).unwrap();
    let r = bar_position_spectrum(&p, &zero_psd(grid.clone()), p.mode_frequency).unwrap();
    let g = p.damping;
    for (w, s) in grid.iter().zip(r.s_zz.values()) {
        let lorentz = |d: f64| 1.0 / (d * d + g * g / 4.0);
        let expect = g * 0.5 * (lorentz(w - p.mode_frequency) + lorentz(w + p.mode_frequency));
        assert!(rel(*s, expect) < 1e-12);
    }
    assert!(r.backaction.values().iter().all(|v| *v == 0.0));
    assert!(r.gw_drive.values().iter().all(|v| *v == 0.0));
}

#[test]
fn gw_drive_scales_as_fourth_power_of_carrier() {
    let p = niobe();
    let (sigma, grid) = in_band_grid(&p);
    let st = GwState::fock_gaussian(1, p.mode_frequency, 1.0, sigma, 801).unwrap();
    let s = strain_psd(&st, &grid).unwrap();
    let a = bar_position_spectrum(&p, &s, p.mode_frequency).unwrap();
    let b = bar_position_spectrum(&p, &s, 2.0 * p.mode_frequency).unwrap();
    for (x, y) in a.gw_drive.values().iter().zip(b.gw_drive.values()) {
        assert!(rel(16.0 * x, *y) < 1e-12);
    }
}

#[test]
fn components_sum_to_total() {
    let p = BarParams { thermal_occupancy: 12.0, ..niobe() };
    let (sigma, grid) = in_band_grid(&p);
    let st = GwState::fock_gaussian(3, p.mode_frequency, 1.0, sigma, 801).unwrap();
    let r = bar_position_spectrum(&p, &strain_psd(&st, &grid).unwrap(), p.mode_frequency).unwrap();
    for i in 0..grid.len() {
        let sum = r.mechanical_vacuum.values()[i] + r.backaction.values()[i] + r.gw_drive.values()[i];
        assert!(rel(sum, r.s_zz.values()[i]) < 1e-9);
    }
}

#[test]
fn click_rate_forms() {
    let p = niobe();
    let (sigma, grid) = in_band_grid(&p);
    let w0 = p.mode_frequency;
    let rate_for = |n| {
        let st = GwState::fock_gaussian(n, w0, 1.0, sigma, 801).unwrap();
        bar_click_rate(&p, &strain_psd(&st, &grid).unwrap(), w0).unwrap()
    };
    assert_eq!(rate_for(0).rate.gw_part, 0.0);
    let one = rate_for(1);
    for n in [2, 5, 10] {
        assert!(rel(rate_for(n).rate.gw_part, n as f64 * one.rate.gw_part) < 1e-12);
    }
    // resolved and in-band forms agree when the envelope sits inside γ_m
    assert!(rel(one.gw_part_resolved, one.rate.gw_part) < 1e-3);
    assert!(one.rate.dark_part > 0.0);
    assert!(rel(one.rate.total, one.rate.dark_part + one.gw_part_resolved) < 1e-12);

    let st = GwState::fock_gaussian(1, w0, 1.0, sigma, 801).unwrap();
    let s = strain_psd(&st, &grid).unwrap();
    let appendix = bar_click_rate_in_band(&p, &s, w0).unwrap();
    let main = bar_click_rate_main_text(&p, &s, w0).unwrap();
    assert!(rel(appendix, main) < 1e-14);
    assert!(rel(bar_click_rate_in_band(&p, &s, 1.01 * w0).unwrap(), main) > 1e-3);
}

#[test]
fn in_band_gw_part_by_hand() {
    let p = niobe();
    let (sigma, grid) = in_band_grid(&p);
    let w0 = p.mode_frequency;
    let st = GwState::fock_gaussian(1, w0, 1.0, sigma, 801).unwrap();
    let s = strain_psd(&st, &grid).unwrap();
    let integral = gwdk_core::spectrum::integrate_spectrum(&s).unwrap();
    let xz = (REDUCED_PLANCK / (p.mass * p.mode_frequency)).sqrt();
    let expect = 4.0 * p.coupling.powi(2) / p.kappa
        * (2.0 * xz / (REDUCED_PLANCK * p.damping)).powi(2)
        * (p.mass * p.length * w0 * w0 / std::f64::consts::PI.powi(2)).powi(2)
        * integral;
    assert!(rel(bar_click_rate_in_band(&p, &s, w0).unwrap(), expect) < 1e-12);
}

#[test]
fn homodyne_mean_linear_and_blind_to_fock() {
    let p = niobe();
    let (sigma, grid) = in_band_grid(&p);
    let w0 = p.mode_frequency;
    let coh = |a: f64| GwState::coherent_gaussian(w0, 1.0, Complex::new(a, 0.0), sigma, 801).unwrap();
    let m1 = bar_homodyne_mean(&p, &mean_strain(&coh(1.0), &grid).unwrap(), w0, &grid).unwrap();
    let m3 = bar_homodyne_mean(&p, &mean_strain(&coh(3.0), &grid).unwrap(), w0, &grid).unwrap();
    for (a, b) in m1.values.iter().zip(&m3.values) {
        assert!((b - a * 3.0).norm() <= 1e-12 * b.norm());
    }
    let fock = GwState::fock_gaussian(7, w0, 1.0, sigma, 801).unwrap();
    let m = bar_homodyne_mean(&p, &mean_strain(&fock, &grid).unwrap(), w0, &grid).unwrap();
    assert!(m.values.iter().all(|z| *z == Complex::new(0.0, 0.0)));
}

#[test]
fn eta_at_fiducials_is_a_probability() {
    let p = niobe();
    let geom = common::binary_geom(1000.0);
    let eta = eta_bar(&p, &geom).unwrap();
    assert!(eta > 0.0 && eta < 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn position_spectrum_nonnegative(
        mass in 1.0f64..1e4, length in 0.1f64..10.0, wm in 100.0f64..1e5, gfrac in 1e-9f64..1e-2,
        g in 0.0f64..1e5, kappa in 1.0f64..1e5, nbar in 0.0f64..1e6, amp in 0.0f64..1e3,
    ) {
        let p = BarParams { mass, length, sound_speed: None, mode_frequency: wm, damping: gfrac * wm,
            coupling: g, kappa, thermal_occupancy: nbar, mode: 0 };
        let sigma = p.damping;
        let grid = FrequencyGrid::symmetric_bands(wm, 8.0 * sigma, 201).unwrap();
        let st = GwState::coherent_gaussian(wm, 1.0, Complex::new(amp, 0.0), sigma, 201).unwrap();
        let r = bar_position_spectrum(&p, &strain_psd(&st, &grid).unwrap(), wm).unwrap();
        for i in 0..grid.len() {
            let parts = r.mechanical_vacuum.values()[i] + r.backaction.values()[i] + r.gw_drive.values()[i];
            prop_assert!(r.s_zz.values()[i] >= 0.0);
            prop_assert!(rel(parts, r.s_zz.values()[i]) < 1e-9);
        }
    }
}
