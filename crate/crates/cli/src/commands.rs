//! Subcommand implementations. Each returns a [`Report`]; writing is left
//! to [`crate::output::emit`].

use gwdk_core::bar::{bar_click_rate, bar_position_spectrum, eta_bar, eta_bar_incident};
use gwdk_core::constants::{rad_to_hz, MEGAPARSEC};
use gwdk_core::counting::{rate_product_bar, rate_product_ifo, sample_click_stream, RNG_NAME};
use gwdk_core::field::{graviton_flux_broadband, graviton_flux_narrowband, graviton_flux_source, strain_psd};
use gwdk_core::ifo::{eta_ifo, eta_ifo_incident, ifo_click_rate, ifo_output_spectra};
use gwdk_core::source::{coherent_amplitude_from_strain, plane_wave_power_flux};
use gwdk_core::spectrum::{integrate_spectrum, units, SpectrumKind};
use gwdk_core::table::build_response_table;
use gwdk_core::{FrequencyGrid, GwState, IfoInputs, Spectrum, TableSettings, WaitTimeModel};
use serde_json::{json, Value};

use crate::config::{Detector, DetectorSpec, GridSpec, RunConfig, SourceConfig, SourceSpec};
use crate::error::{config_err, Result};
use crate::output::{Cell, Report, Table};

/// Offset that decorrelates the dark-click stream from the GW stream.
const DARK_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

const IFO_FORMULA: &str = "ifo:5*hbar*G*F*kappa*alpha^2*omega0^2/(2*c^3*R^2*Omega0*(kappa^2+Omega0^2))";
const BAR_FORMULA: &str = "bar:96*g^2*M*L^2*Omega0^3*G/(kappa*pi^3*c^3*omega_m*gamma_m^2*R^2)";

fn detector(cfg: &RunConfig) -> Result<Detector> {
    cfg.detector.as_ref().ok_or_else(|| config_err("missing `detector`"))?.resolve()
}

fn source(cfg: &RunConfig) -> Result<Option<SourceConfig>> {
    cfg.source.as_ref().map(SourceSpec::config).transpose()
}

fn state(cfg: &RunConfig, src: Option<&SourceConfig>) -> Result<Option<GwState>> {
    cfg.state.as_ref().map(|s| s.resolve(src)).transpose()
}

fn grid_meta(grid: &FrequencyGrid) -> Value {
    let w = grid.as_slice();
    json!({ "points": grid.len(), "min_rad_s": w[0], "max_rad_s": w[w.len() - 1] })
}

fn freq_cells(w: f64) -> [Cell; 2] {
    [Cell::Num(w), Cell::Num(rad_to_hz(w))]
}

pub fn spectrum(cfg: &RunConfig, seed: u64) -> Result<Report> {
    let det = detector(cfg)?;
    let src = source(cfg)?;
    let st = state(cfg, src.as_ref())?;
    let grid = match (&cfg.grid, &det) {
        (Some(g), _) => g.build()?,
        (None, Detector::Ifo { params, .. }) => {
            GridSpec::Range { min_hz: 0.0, max_hz: 4.0 * rad_to_hz(params.kappa), points: 1001, symmetric: true }.build()?
        }
        (None, Detector::Bar { params, .. }) => FrequencyGrid::symmetric_bands(params.mode_frequency, 50.0 * params.damping, 2001)?,
    };
    let s_hh = match &st {
        Some(s) => strain_psd(s, &grid)?,
        None => Spectrum::zeros(grid.clone(), SpectrumKind::DoubleSidedSymmetrized, units::STRAIN_PSD)?,
    };

    let mut meta = json!({
        "command": "spectrum",
        "seed": seed,
        "detector_kind": det.kind(),
        "params_echo": det.echo(),
        "grid": grid_meta(&grid),
    });
    let table = match &det {
        Detector::Ifo { params, thermal_occupancy, .. } => {
            let inputs = IfoInputs::vacuum(*thermal_occupancy);
            let b = ifo_output_spectra(params, &s_hh, &inputs)?;
            let rate = ifo_click_rate(params, &s_hh, &inputs)?;
            let cols = [&b.amplitude_out, &b.phase_out, &b.radiation_pressure, &b.shot, &b.suspension_thermal, &b.gw_signal];
            let names = ["amplitude_out", "phase_out", "radiation_pressure", "shot", "suspension_thermal", "gw_signal"];
            let mut integrals = serde_json::Map::new();
            for (n, c) in names.iter().zip(cols) {
                integrals.insert(n.to_string(), json!(integrate_spectrum(c)?));
            }
            meta["units"] = json!(units::QUADRATURE);
            meta["total_column"] = json!("phase_out");
            meta["integrals"] = Value::Object(integrals);
            meta["click_rate"] = json!({ "total": rate.total, "gw_part": rate.gw_part, "dark_part": rate.dark_part });
            let mut t = Table::new(&["omega_rad_s", "frequency_hz", "amplitude_out", "phase_out", "radiation_pressure", "shot", "suspension_thermal", "gw_signal"]);
            for (i, w) in grid.iter().enumerate() {
                let mut row: Vec<Cell> = freq_cells(w).into();
                row.extend(cols.iter().map(|c| Cell::Num(c.values()[i])));
                t.push(row);
            }
            t
        }
        Detector::Bar { params, .. } => {
            let carrier = match (&st, &src) {
                (Some(s), _) if s.carrier().is_some() => s.carrier().unwrap_or(params.mode_frequency),
                (_, Some(s)) => s.geom(&det)?.carrier,
                _ => params.mode_frequency,
            };
            let r = bar_position_spectrum(params, &s_hh, carrier)?;
            let rate = bar_click_rate(params, &s_hh, carrier)?;
            let cols = [&r.s_zz, &r.mechanical_vacuum, &r.backaction, &r.gw_drive];
            let names = ["s_zz", "mechanical_vacuum", "backaction", "gw_drive"];
            let mut integrals = serde_json::Map::new();
            for (n, c) in names.iter().zip(cols) {
                integrals.insert(n.to_string(), json!(integrate_spectrum(c)?));
            }
            meta["units"] = json!(units::ZPM_POSITION);
            meta["total_column"] = json!("s_zz");
            meta["carrier_rad_s"] = json!(carrier);
            meta["off_resonance"] = json!(!params.in_band(carrier));
            meta["integrals"] = Value::Object(integrals);
            meta["click_rate"] = json!({
                "total": rate.rate.total,
                "gw_part": rate.rate.gw_part,
                "gw_part_resolved": rate.gw_part_resolved,
                "dark_part": rate.rate.dark_part,
            });
            let mut t = Table::new(&["omega_rad_s", "frequency_hz", "s_zz", "mechanical_vacuum", "backaction", "gw_drive"]);
            for (i, w) in grid.iter().enumerate() {
                let mut row: Vec<Cell> = freq_cells(w).into();
                row.extend(cols.iter().map(|c| Cell::Num(c.values()[i])));
                t.push(row);
            }
            t
        }
    };
    Ok(Report { stem: "spectrum", meta, table: Some(table), csv_override: None })
}

fn etas(det: &Detector, geom: &gwdk_core::SourceGeom) -> Result<(f64, f64)> {
    let area = geom.area()?;
    Ok(match det {
        Detector::Ifo { params, .. } => (eta_ifo(params, geom)?, eta_ifo_incident(params, geom.carrier, area)?),
        Detector::Bar { params, .. } => (eta_bar(params, geom)?, eta_bar_incident(params, geom.carrier, area)?),
    })
}

fn rate_product(det: &Detector, h0: f64, carrier: f64) -> Result<f64> {
    Ok(match det {
        Detector::Ifo { params, .. } => rate_product_ifo(params, h0, carrier)?,
        Detector::Bar { params, .. } => rate_product_bar(params, h0, carrier)?,
    })
}

pub fn efficiency(cfg: &RunConfig, seed: u64) -> Result<Report> {
    let det = detector(cfg)?;
    let src = source(cfg)?.ok_or_else(|| config_err("missing `source`"))?;
    let geom = src.geom(&det)?;
    let (eta, eta_inc) = etas(&det, &geom)?;
    let formula = match det {
        Detector::Ifo { .. } => IFO_FORMULA,
        Detector::Bar { .. } => BAR_FORMULA,
    };
    let mut meta = json!({
        "command": "efficiency",
        "seed": seed,
        "eta": eta,
        "eta_incident": eta_inc,
        "area_m2": geom.area()?,
        "carrier_hz": rad_to_hz(geom.carrier),
        "formula_id": formula,
        "detector_kind": det.kind(),
        "params_echo": { "detector": det.echo(), "source": serde_json::to_value(&src).unwrap_or(Value::Null) },
    });
    if let Some(h0) = geom.strain_amplitude {
        let product = rate_product(&det, h0, geom.carrier)?;
        meta["strain"] = json!(h0);
        meta["rate_product_hz"] = json!(product);
        meta["coherent_amplitude_sq"] = json!(coherent_amplitude_from_strain(h0, geom.carrier, geom.area()?)?);
    }

    let distances = match &cfg.sweep {
        Some(s) if s.distance_mpc.is_empty() => return Err(config_err("sweep.distance_mpc is empty")),
        Some(s) => s.distance_mpc.clone(),
        None => vec![src.distance_mpc],
    };
    let mut t = Table::new(&["distance_mpc", "eta", "eta_incident"]);
    let mut pts = Vec::with_capacity(distances.len());
    for d in distances {
        let g = gwdk_core::SourceGeom { distance: d * MEGAPARSEC, ..geom };
        let (e, ei) = etas(&det, &g)?;
        pts.push((d, e));
        t.push(vec![Cell::Num(d), Cell::Num(e), Cell::Num(ei)]);
    }
    if pts.len() >= 2 {
        let (a, b) = (pts[0], pts[pts.len() - 1]);
        if a.0 != b.0 {
            meta["log_slope_distance"] = json!((b.1 / a.1).ln() / (b.0 / a.0).ln());
        }
    }
    Ok(Report { stem: "efficiency", meta, table: Some(t), csv_override: None })
}

pub fn table1(cfg: &RunConfig, seed: u64) -> Result<Report> {
    let spec = cfg.table.as_ref().ok_or_else(|| config_err("missing `table`"))?;
    let resolve = |s: &Option<DetectorSpec>, preset: &str| -> Result<Detector> {
        match s {
            Some(s) => s.resolve(),
            None => DetectorSpec::Preset { preset: preset.into() }.resolve(),
        }
    };
    let ifo_det = resolve(&spec.ifo, "aligo-like")?;
    let bar_det = resolve(&spec.bar, "niobe-like")?;
    let (Detector::Ifo { params: ifo, .. }, Detector::Bar { params: bar, .. }) = (&ifo_det, &bar_det) else {
        return Err(config_err("table.ifo must be an interferometer and table.bar a bar"));
    };
    let src = match source(cfg)? {
        Some(s) => s,
        None => crate::presets::load("binary-100Mpc")?,
    };
    let geom = src.geom(&ifo_det)?;
    let settings = TableSettings {
        coherent_amplitude: spec.coherent_amplitude,
        fock_number: spec.fock_number,
        distance: geom.distance,
        antenna_factor: geom.antenna_factor,
        ifo_carrier: geom.carrier,
        ifo_bandwidth: gwdk_core::constants::hz_to_rad(spec.ifo_bandwidth_hz),
        bar_bandwidth: spec.bar_bandwidth_hz.map(gwdk_core::constants::hz_to_rad).unwrap_or(bar.damping / 100.0),
        points: spec.points,
    };
    let table = build_response_table(ifo, bar, &settings)?;
    let mut t = Table::new(&["transducer", "readout", "state", "expression", "response", "scaling", "ratio"]);
    for r in &table.rows {
        t.push(vec![
            Cell::Text(label(&r.transducer)),
            Cell::Text(label(&r.readout)),
            Cell::Text(label(&r.state)),
            Cell::Text(r.expression.clone()),
            Cell::Num(r.response),
            Cell::Num(r.scaling),
            Cell::Num(r.ratio),
        ]);
    }
    let meta = json!({
        "command": "table1",
        "seed": seed,
        "settings": serde_json::to_value(settings).unwrap_or(Value::Null),
        "params_echo": { "ifo": ifo_det.echo(), "bar": bar_det.echo() },
    });
    Ok(Report { stem: "table1", meta, table: Some(t), csv_override: None })
}

fn label<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn clicks(cfg: &RunConfig, seed: u64) -> Result<Report> {
    let spec = cfg.clicks.as_ref().ok_or_else(|| config_err("missing `clicks`"))?;
    let mut meta = json!({ "command": "clicks", "seed": seed, "rng": RNG_NAME });
    let gw_rate = match spec.rate_hz {
        Some(r) => r,
        None => {
            let det = detector(cfg)?;
            let src = source(cfg)?.ok_or_else(|| config_err("clicks need `source` or `clicks.rate_hz`"))?;
            let geom = src.geom(&det)?;
            let h0 = geom.strain_amplitude.ok_or_else(|| config_err("source has no strain amplitude"))?;
            let product = rate_product(&det, h0, geom.carrier)?;
            meta["detector_kind"] = json!(det.kind());
            meta["params_echo"] = det.echo();
            meta["rate_product_hz"] = json!(product);
            WaitTimeModel::from_rate_product(product)?.rate
        }
    };
    let model = WaitTimeModel::new(gw_rate)?;
    let mut stream = sample_click_stream(&model, spec.duration_s, seed)?;
    if spec.dark_rate_hz > 0.0 {
        let dark = sample_click_stream(&WaitTimeModel::new(spec.dark_rate_hz)?, spec.duration_s, seed.wrapping_add(DARK_SEED_OFFSET))?;
        stream = stream.superpose(&dark)?;
    }
    meta["gw_rate_hz"] = json!(gw_rate);
    meta["dark_rate_hz"] = json!(spec.dark_rate_hz);
    meta["rate_hz"] = json!(stream.rate);
    meta["duration_s"] = json!(stream.duration);
    meta["clicks"] = json!(stream.len());
    let mut t = Table::new(&["t_s"]);
    for &x in &stream.click_times {
        t.push(vec![Cell::Num(x)]);
    }
    Ok(Report { stem: "clicks", meta, table: Some(t), csv_override: Some(stream.to_csv()) })
}

pub fn flux(cfg: &RunConfig, seed: u64) -> Result<Report> {
    let src = source(cfg)?;
    let st = state(cfg, src.as_ref())?.ok_or_else(|| config_err("missing `state`"))?;
    let grid = match (&cfg.grid, &st) {
        (Some(g), _) => g.build()?,
        (None, GwState::Coherent { envelope, .. } | GwState::Fock { envelope, .. }) => {
            // one empty sample past each envelope edge keeps the gap between
            // the ±Ω₀ bands out of the integral
            let w = envelope.grid().as_slice();
            if w.len() < 2 {
                return Err(config_err("state envelope needs at least two points"));
            }
            let (lo, hi) = (2.0 * w[0] - w[1], 2.0 * w[w.len() - 1] - w[w.len() - 2]);
            let padded: Vec<f64> = std::iter::once(lo).chain(w.iter().copied()).chain(std::iter::once(hi)).collect();
            FrequencyGrid::mirrored(&padded)?
        }
        (None, GwState::Vacuum) => return Err(config_err("vacuum state needs a `grid`")),
    };
    let psd = strain_psd(&st, &grid)?;
    let mut meta = json!({
        "command": "flux",
        "seed": seed,
        "mean_number": st.mean_number(),
        "grid": grid_meta(&grid),
        "strain_psd_integral": integrate_spectrum(&psd)?,
    });
    if let (Some(w0), Some(area)) = (st.carrier(), st.area()) {
        meta["carrier_hz"] = json!(rad_to_hz(w0));
        meta["area_m2"] = json!(area);
        meta["flux_narrowband_hz"] = json!(graviton_flux_narrowband(&psd, w0, area)?);
        meta["flux_broadband_hz"] = json!(graviton_flux_broadband(&psd, area)?);
        if let Some(s) = &src {
            meta["flux_source_hz"] =
                json!(graviton_flux_source(&psd, w0, s.distance_mpc * MEGAPARSEC, s.antenna_factor)?);
            if let Some(h0) = s.strain {
                meta["plane_wave_power_flux_w_m2"] = json!(plane_wave_power_flux(h0, w0)?);
                meta["coherent_amplitude_sq"] = json!(coherent_amplitude_from_strain(h0, w0, area)?);
            }
        }
    }
    let mut t = Table::new(&["omega_rad_s", "frequency_hz", "s_hh"]);
    for (w, s) in grid.iter().zip(psd.values()) {
        let mut row: Vec<Cell> = freq_cells(w).into();
        row.push(Cell::Num(*s));
        t.push(row);
    }
    Ok(Report { stem: "flux", meta, table: Some(t), csv_override: None })
}
