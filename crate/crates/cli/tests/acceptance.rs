//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gwdk_core::bar::{bar_click_rate, bar_click_rate_in_band, bar_click_rate_main_text, bar_homodyne_mean, bar_position_spectrum};
use gwdk_core::bar::eta_bar_incident;
use gwdk_core::constants::{hz_to_rad, MEGAPARSEC, SOLAR_MASS};
use gwdk_core::counting::{ks_one_sample, ks_two_sample, rate_product_bar, rate_product_ifo, sample_click_stream};
use gwdk_core::field::{graviton_flux_broadband, graviton_flux_narrowband, mean_strain, strain_psd};
use gwdk_core::ifo::{
    eta_ifo_incident, ifo_click_rate, ifo_click_rate_low_frequency, ifo_homodyne_mean, ifo_output_spectra, mech_correction_x,
    phase_xi,
};
use gwdk_core::real::rel_diff;
use gwdk_core::source::{area_factor, coherent_amplitude_from_strain, quadrupole_power_numerical, quadrupole_total_power};
use gwdk_core::{
    BarParams, BinarySource, Complex, FrequencyGrid, GwState, IfoInputs, IfoParams, Spectrum, WaitTimeModel,
};
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn aligo() -> IfoParams {
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

fn niobe() -> BarParams {
    BarParams::from_sound_speed(1000.0, 3.0, 6000.0, 0, hz_to_rad(1e-5), hz_to_rad(1000.0), hz_to_rad(100.0), 0.0)
        .unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cli_eta(preset: &str, out: &Path) -> Result<f64, String> {
    let cfg = out.join(format!("{preset}.json"));
    let body = format!(r#"{{"detector":{{"preset":"{preset}"}},"source":{{"preset":"binary-100Mpc"}}}}"#);
    std::fs::write(&cfg, body).map_err(|e| e.to_string())?;
    let dir = out.join(preset);
    let res = Command::new(env!("CARGO_BIN_EXE_gwdk"))
        .args(["efficiency", "--format", "json", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .env_remove("GWDK_PRESET_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !res.status.success() {
        return Err(String::from_utf8_lossy(&res.stderr).into_owned());
    }
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("efficiency.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    doc["eta"].as_f64().ok_or_else(|| "no eta in output".into())
}

fn c1_efficiency() -> Outcome {
    let tmp = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let t0 = Instant::now();
    let ifo = cli_eta("aligo-like", tmp.path())?;
    let t_ifo = t0.elapsed();
    let t1 = Instant::now();
    let bar = cli_eta("niobe-like", tmp.path())?;
    let t_bar = t1.elapsed();
    let ifo_ok = (5e-74..=9e-74).contains(&ifo) && t_ifo < Duration::from_secs(1);
    let bar_ok = (bar / 1.2e-61 - 1.0).abs() <= 0.10 && t_bar < Duration::from_secs(1);
    check(
        ifo_ok && bar_ok,
        format!(
            "eta_ifo = {ifo:.3e} in [5e-74, 9e-74]: {} | eta_bar = {bar:.3e} vs 1.2e-61 +/-10%: {} (x{:.1})",
            ifo_ok,
            bar_ok,
            bar / 1.2e-61
        ),
    )
}

fn c2_rate_products() -> Outcome {
    let ifo = rate_product_ifo(&aligo(), 1e-22, hz_to_rad(60.0)).map_err(|e| e.to_string())?;
    let bar = rate_product_bar(&niobe(), 1e-22, hz_to_rad(1000.0)).map_err(|e| e.to_string())?;
    let within = |x: f64, target: f64| x >= target / 3.0 && x <= target * 3.0;
    let (a, b) = (within(ifo, 1e6), within(bar, 1e16));
    check(
        a && b,
        format!("ifo = {ifo:.3e}/s vs 1e6 (x3): {a} | bar = {bar:.3e}/s vs 1e16 (x3): {b}"),
    )
}

fn c3_area_independence() -> Outcome {
    let mut rng = Pcg64::seed_from_u64(3);
    let (ifo, bar) = (aligo(), niobe());
    let h0 = 1e-22;
    let (wi, wb) = (hz_to_rad(60.0), bar.mode_frequency);
    let ci = rate_product_ifo(&ifo, h0, wi).unwrap();
    let cb = rate_product_bar(&bar, h0, wb).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let a = area_factor(rng.gen_range(1.0..1e4) * MEGAPARSEC, rng.gen_range(0.1..2.0)).unwrap();
        let vi = eta_ifo_incident(&ifo, wi, a).unwrap() * coherent_amplitude_from_strain(h0, wi, a).unwrap();
        let vb = eta_bar_incident(&bar, wb, a).unwrap() * coherent_amplitude_from_strain(h0, wb, a).unwrap();
        worst = worst.max(rel_diff(vi, ci)).max(rel_diff(vb, cb));
    }
    check(worst < 1e-12, format!("10 (R, F) pairs, worst relative difference {worst:.2e} (< 1e-12)"))
}

fn c4_table_dichotomy() -> Outcome {
    let (ifo, bar) = (aligo(), niobe());
    let area = area_factor(100.0 * MEGAPARSEC, 1.0).unwrap();
    let mut passed = 0;
    let mut notes = Vec::new();
    let zero = Complex::new(0.0, 0.0);

    for (name, w0, sigma) in [("ifo", hz_to_rad(60.0), hz_to_rad(0.1)), ("bar", bar.mode_frequency, bar.damping / 100.0)] {
        let grid = FrequencyGrid::symmetric_bands(w0, 8.0 * sigma, 801).unwrap();
        let coh = |a: f64| GwState::coherent_gaussian(w0, area, Complex::new(a, 0.0), sigma, 801).unwrap();
        let fock = |n: u64| GwState::fock_gaussian(n, w0, area, sigma, 801).unwrap();
        let homodyne = |st: &GwState| -> Vec<Complex<f64>> {
            let h = mean_strain(st, &grid).unwrap();
            match name {
                "ifo" => ifo_homodyne_mean(&ifo, &h, &grid).unwrap(),
                _ => bar_homodyne_mean(&bar, &h, w0, &grid).unwrap().values,
            }
        };
        let gw = |s: &Spectrum| -> f64 {
            match name {
                "ifo" => ifo_click_rate(&ifo, s, &IfoInputs::default()).unwrap().gw_part,
                _ => bar_click_rate(&bar, s, w0).unwrap().rate.gw_part,
            }
        };
        let psd = |st: &GwState| strain_psd(st, &grid).unwrap();

        // homodyne, coherent: superposition of amplitudes 1 and 2 gives 3
        let (o1, o2, o3) = (homodyne(&coh(1.0)), homodyne(&coh(2.0)), homodyne(&coh(3.0)));
        let lin = o1.iter().zip(&o2).zip(&o3).all(|((a, b), c)| (a + b - c).norm() <= 1e-12 * c.norm().max(1e-300));
        let nonzero = o3.iter().any(|z| z.norm() > 0.0);
        if lin && nonzero { passed += 1 } else { notes.push(format!("{name} homodyne coherent")) }

        // homodyne, Fock: identically zero
        if [1u64, 5, 10].iter().all(|&n| homodyne(&fock(n)).iter().all(|z| *z == zero)) {
            passed += 1
        } else {
            notes.push(format!("{name} homodyne fock"))
        }

        // absorptive, coherent: quadratic in ā, additive in the PSD
        let (g1, g2) = (gw(&psd(&coh(1.0))), gw(&psd(&coh(2.0))));
        let sum = gw(&psd(&coh(1.0)).try_add(&psd(&coh(2.0))).unwrap());
        if g1 > 0.0 && rel_diff(g2, 4.0 * g1) < 1e-9 && rel_diff(sum, g1 + g2) < 1e-12 {
            passed += 1
        } else {
            notes.push(format!("{name} absorptive coherent"))
        }

        // absorptive, Fock: linear in n
        let f = |n| gw(&psd(&fock(n)));
        let (f2, f3, f5) = (f(2), f(3), f(5));
        if f(0) == 0.0 && f2 > 0.0 && rel_diff(f5, f2 + f3) < 1e-12 {
            passed += 1
        } else {
            notes.push(format!("{name} absorptive fock"))
        }
    }
    check(passed == 8, format!("{passed}/8 rows verified{}", if notes.is_empty() { String::new() } else { format!(", failed: {}", notes.join(", ")) }))
}

fn c5_wait_times() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    // (η, |ā|²) pairs giving r = η|ā|²/4 ∈ {0.1, 1, 100}
    for (eta, a2, seed) in [(1e-74, 4e73, 501u64), (6.35e-74, 4.0 / 6.35e-74, 502), (1e-60, 4e62, 503)] {
        let m = WaitTimeModel::from_efficiency(eta, a2).unwrap();
        let s = sample_click_stream(&m, 1.2e5 / m.rate, seed).unwrap();
        let waits: Vec<f64> = s.waits().into_iter().take(100_000).collect();
        let ks = ks_one_sample(&waits, |t| m.cdf(t)).unwrap();
        ok &= waits.len() == 100_000 && ks.p_value > 0.01;
        details.push(format!("r={:.3}: p={:.3}", m.rate, ks.p_value));
    }
    let m = WaitTimeModel::new(1.0).unwrap();
    let waits = sample_click_stream(&m, 2e5, 504).unwrap().waits();
    let t0 = 0.7;
    let residual: Vec<f64> = waits.iter().filter(|w| **w > t0).map(|w| w - t0).collect();
    let ks = ks_two_sample(&residual, &waits).unwrap();
    ok &= ks.p_value > 0.01;
    details.push(format!("memoryless p={:.3}", ks.p_value));
    check(ok, format!("KS at 0.01 with 1e5 waits: {}", details.join(", ")))
}

fn c6_quadrupole() -> Outcome {
    let mut rng = Pcg64::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let src = BinarySource {
            reduced_mass: rng.gen_range(0.5..50.0) * SOLAR_MASS,
            orbital_radius: rng.gen_range(1e5..1e8),
            carrier: hz_to_rad(rng.gen_range(1e-3..1e3)),
            distance: rng.gen_range(1.0..1e3) * MEGAPARSEC,
            inclination: rng.gen_range(0.0..std::f64::consts::PI),
        };
        let num = quadrupole_power_numerical(&src, 64, 64).unwrap();
        worst = worst.max(rel_diff(num, quadrupole_total_power(&src).unwrap()));
    }
    check(worst < 1e-6, format!("5 sources, worst relative error {worst:.2e} (< 1e-6)"))
}

fn c7_limits() -> Outcome {
    let mut p = aligo();
    p.suspension_damping = 1e-6 * p.suspension_frequency;
    let (mut dx, mut dxi) = (0.0f64, 0.0f64);
    for k in [100.0, 200.0, 1e3, 1e4, 1e6] {
        let w = k * p.suspension_frequency;
        dx = dx.max((mech_correction_x(&p, w) - 1.0).abs());
        dxi = dxi.max(phase_xi(&p, w).abs());
    }
    let a = dx < 1e-3 && dxi < 1e-3;

    let p = aligo();
    let w0 = p.kappa / 100.0;
    let sigma = w0 * 1e-3;
    let grid = FrequencyGrid::symmetric_bands(w0, 8.0 * sigma, 801).unwrap();
    let s = strain_psd(&GwState::coherent_gaussian(w0, 1.0, Complex::new(1.0, 0.0), sigma, 801).unwrap(), &grid).unwrap();
    let full = ifo_click_rate(&p, &s, &IfoInputs::default()).unwrap().gw_part;
    let low = ifo_click_rate_low_frequency(&p, &s).unwrap();
    let b_err = rel_diff(full, low);
    let b = b_err < 2e-2;

    let bar = niobe();
    let wm = bar.mode_frequency;
    let grid = FrequencyGrid::symmetric_bands(wm, 8e-2 * bar.damping, 401).unwrap();
    let s = strain_psd(&GwState::fock_gaussian(1, wm, 1.0, 1e-2 * bar.damping, 401).unwrap(), &grid).unwrap();
    let appendix = bar_click_rate_in_band(&bar, &s, wm).unwrap();
    let main = bar_click_rate_main_text(&bar, &s, wm).unwrap();
    let c_err = rel_diff(appendix, main);
    let c = c_err <= 4.0 * f64::EPSILON;
    check(
        a && b && c,
        format!(
            "(a) |X-1| = {dx:.1e}, |Xi| = {dxi:.1e}: {a} | (b) rel err {b_err:.1e}: {b} | (c) rel err {c_err:.1e}: {c}"
        ),
    )
}

fn c8_flux() -> Outcome {
    let w0 = hz_to_rad(100.0);
    let sigma = 1e-3 * w0;
    let grid = FrequencyGrid::symmetric_bands(w0, 8.0 * sigma, 4001).unwrap();
    let mut worst_n = 0.0f64;
    let mut worst_b = 0.0f64;
    for n in [0u64, 1, 2, 5, 10] {
        let s = strain_psd(&GwState::fock_gaussian(n, w0, 2.5, sigma, 4001).unwrap(), &grid).unwrap();
        let nb = graviton_flux_narrowband(&s, w0, 2.5).unwrap();
        worst_n = worst_n.max(if n == 0 { nb.abs() } else { (nb / n as f64 - 1.0).abs() });
        if n > 0 {
            worst_b = worst_b.max(rel_diff(graviton_flux_broadband(&s, 2.5).unwrap(), nb));
        }
    }
    // PSD filling the whole ±1% window
    let band = FrequencyGrid::symmetric_bands(w0, 0.01 * w0, 2001).unwrap();
    let flat = Spectrum::from_fn(band, gwdk_core::spectrum::SpectrumKind::DoubleSidedSymmetrized, gwdk_core::spectrum::units::STRAIN_PSD, |_| 1e-40).unwrap();
    worst_b = worst_b.max(rel_diff(graviton_flux_broadband(&flat, 2.5).unwrap(), graviton_flux_narrowband(&flat, w0, 2.5).unwrap()));
    check(
        worst_n < 1e-3 && worst_b < 2e-2,
        format!("Fock n in {{0,1,2,5,10}} worst error {worst_n:.1e} (< 1e-3) | broadband vs narrowband {worst_b:.1e} (< 2e-2)"),
    )
}

fn c9_spectral_sanity() -> Outcome {
    let mut rng = Pcg64::seed_from_u64(9);
    let mut worst = 0.0f64;
    let mut negative = 0usize;
    for _ in 0..100 {
        let p = IfoParams {
            kappa: rng.gen_range(1.0..1e4),
            optical_frequency: rng.gen_range(1e14..1e16),
            arm_length: rng.gen_range(1.0..1e4),
            mirror_mass: rng.gen_range(1e-3..1e3),
            suspension_frequency: rng.gen_range(0.1..100.0),
            suspension_damping: rng.gen_range(1e-8..1e-1),
            circulating_power: rng.gen_range(1e-3..1e7),
            detuning: 0.0,
        };
        let w0 = rng.gen_range(0.1..3.0) * p.kappa;
        let grid = FrequencyGrid::symmetric(4.0 * w0, 201).unwrap();
        let st = GwState::coherent_gaussian(w0, 1.0, Complex::new(rng.gen_range(0.0..1e3), 0.0), 0.05 * w0, 201).unwrap();
        let s = strain_psd(&st, &grid).unwrap();
        let b = ifo_output_spectra(&p, &s, &IfoInputs::vacuum(rng.gen_range(0.0..1e3))).unwrap();
        for i in 0..grid.len() {
            let parts = b.radiation_pressure.values()[i] + b.shot.values()[i] + b.suspension_thermal.values()[i] + b.gw_signal.values()[i];
            let all = [&b.amplitude_out, &b.phase_out, &b.radiation_pressure, &b.shot, &b.suspension_thermal, &b.gw_signal];
            negative += all.iter().filter(|c| c.values()[i] < 0.0).count();
            worst = worst.max(rel_diff(parts, b.phase_out.values()[i]));
        }

        let wm = rng.gen_range(100.0..1e5);
        let bar = BarParams {
            mass: rng.gen_range(1.0..1e4),
            length: rng.gen_range(0.1..10.0),
            sound_speed: None,
            mode_frequency: wm,
            damping: rng.gen_range(1e-9..1e-2) * wm,
            coupling: rng.gen_range(0.0..1e5),
            kappa: rng.gen_range(1.0..1e5),
            thermal_occupancy: rng.gen_range(0.0..1e6),
            mode: 0,
        };
        let grid = FrequencyGrid::symmetric_bands(wm, 8.0 * bar.damping, 201).unwrap();
        let st = GwState::coherent_gaussian(wm, 1.0, Complex::new(rng.gen_range(0.0..1e3), 0.0), bar.damping, 201).unwrap();
        let r = bar_position_spectrum(&bar, &strain_psd(&st, &grid).unwrap(), wm).unwrap();
        for i in 0..grid.len() {
            let parts = r.mechanical_vacuum.values()[i] + r.backaction.values()[i] + r.gw_drive.values()[i];
            let all = [&r.s_zz, &r.mechanical_vacuum, &r.backaction, &r.gw_drive];
            negative += all.iter().filter(|c| c.values()[i] < 0.0).count();
            worst = worst.max(rel_diff(parts, r.s_zz.values()[i]));
        }
    }
    check(
        negative == 0 && worst < 1e-9,
        format!("100 draws per transducer: {negative} negative samples, worst budget mismatch {worst:.1e} (< 1e-9)"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("efficiency fiducials", Duration::from_secs(2), c1_efficiency),
        ("rate products", Duration::from_secs(1), c2_rate_products),
        ("area independence", Duration::from_secs(1), c3_area_independence),
        ("Table-I dichotomy", Duration::from_secs(5), c4_table_dichotomy),
        ("wait-time statistics", Duration::from_secs(10), c5_wait_times),
        ("quadrupole oracle", Duration::from_secs(1), c6_quadrupole),
        ("limit reductions", Duration::from_secs(60), c7_limits),
        ("flux consistency", Duration::from_secs(60), c8_flux),
        ("spectral sanity", Duration::from_secs(60), c9_spectral_sanity),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let elapsed = t.elapsed();
        let slow = elapsed > *limit;
        let (status, detail) = match (&outcome, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d} | over time limit {limit:?}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {}: {status} [{name}] {detail} ({:.3} s)", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {}/9 passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
