mod common;

use common::{aligo, niobe, rel};
use gwdk_core::bar::eta_bar_incident;
use gwdk_core::constants::{hz_to_rad, MEGAPARSEC};
use gwdk_core::counting::*;
use gwdk_core::ifo::eta_ifo_incident;
use gwdk_core::source::{area_factor, coherent_amplitude_from_strain};
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

#[test]
fn ks_against_exponential() {
    for (rate, seed) in [(0.1, 11u64), (1.0, 12), (100.0, 13)] {
        let m = WaitTimeModel::new(rate).unwrap();
        // 1e5 expected clicks, truncated to exactly 1e5 waits
        let s = sample_click_stream(&m, 1.2e5 / rate, seed).unwrap();
        let waits: Vec<f64> = s.waits().into_iter().take(100_000).collect();
        assert_eq!(waits.len(), 100_000);
        let ks = ks_one_sample(&waits, |t| m.cdf(t)).unwrap();
        assert!(ks.p_value > 0.01, "rate {rate}: D = {}, p = {}", ks.statistic, ks.p_value);
        let mean = waits.iter().sum::<f64>() / waits.len() as f64;
        assert!(rel(mean, 1.0 / rate) < 0.02);
    }
}

#[test]
fn waits_are_memoryless() {
    let m = WaitTimeModel::new(2.0).unwrap();
    let s = sample_click_stream(&m, 1e5, 99).unwrap();
    let waits = s.waits();
    let t0 = m.mean_wait();
    let residual: Vec<f64> = waits.iter().filter(|w| **w > t0).map(|w| w - t0).collect();
    assert!(residual.len() > 10_000);
    let ks = ks_two_sample(&residual, &waits).unwrap();
    assert!(ks.p_value > 0.01, "D = {}, p = {}", ks.statistic, ks.p_value);
}

#[test]
fn rate_products_are_area_independent() {
    let mut rng = Pcg64::seed_from_u64(2024);
    let (ifo, bar) = (aligo(), niobe());
    let h0 = 1e-22;
    let (w_ifo, w_bar) = (hz_to_rad(60.0), bar.mode_frequency);
    let closed_ifo = rate_product_ifo(&ifo, h0, w_ifo).unwrap();
    let closed_bar = rate_product_bar(&bar, h0, w_bar).unwrap();
    for _ in 0..10 {
        let r = rng.gen_range(1.0..1e4) * MEGAPARSEC;
        let f = rng.gen_range(0.1..2.0);
        let a = area_factor(r, f).unwrap();
        let via_ifo = eta_ifo_incident(&ifo, w_ifo, a).unwrap() * coherent_amplitude_from_strain(h0, w_ifo, a).unwrap();
        let via_bar = eta_bar_incident(&bar, w_bar, a).unwrap() * coherent_amplitude_from_strain(h0, w_bar, a).unwrap();
        assert!(rel(via_ifo, closed_ifo) < 1e-12);
        assert!(rel(via_bar, closed_bar) < 1e-12);
    }
}

#[test]
fn rate_products_scale_with_strain_squared() {
    let p = aligo();
    let w = hz_to_rad(60.0);
    let a = rate_product_ifo(&p, 1e-22, w).unwrap();
    assert!(rel(rate_product_ifo(&p, 2e-22, w).unwrap(), 4.0 * a) < 1e-14);
    assert_eq!(rate_product_ifo(&p, 0.0, w).unwrap(), 0.0);
    assert!(rate_product_ifo(&p, -1.0, w).is_err());
}

#[test]
fn clicks_from_rate_product() {
    let p = aligo();
    let product = rate_product_ifo(&p, 1e-22, hz_to_rad(60.0)).unwrap();
    let m = WaitTimeModel::from_rate_product(product).unwrap();
    let s = sample_click_stream(&m, 1.0, 5).unwrap();
    let expect = product / 4.0;
    assert!((s.len() as f64 - expect).abs() < 5.0 * expect.sqrt());
}
