//! Randomized cross-check of the Kaplan-Meier estimator.
//!
//! The oracle recomputes every curve step from scratch: at each event time
//! it counts the samples whose duration reaches that time and multiplies
//! the survival factors directly, instead of maintaining a running at-risk
//! counter like the implementation.

use kwlife_core::{km_estimate, survival_fraction_at, SurvivalSample, VenueClass};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn random_samples(rng: &mut ChaCha8Rng, n: usize) -> Vec<SurvivalSample> {
    (0..n)
        .map(|i| SurvivalSample {
            keyword: format!("k{i}"),
            group: VenueClass::Journal,
            duration: rng.random_range(0..=12),
            event: rng.random_bool(0.7),
        })
        .collect()
}

#[test]
fn curve_matches_direct_product_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6d_0001);
    for _ in 0..200 {
        let n = rng.random_range(1..=50);
        let samples = random_samples(&mut rng, n);
        let curve = km_estimate(&samples).unwrap();

        let mut event_times: Vec<u32> = samples
            .iter()
            .filter(|s| s.event)
            .map(|s| s.duration)
            .collect();
        event_times.sort_unstable();
        event_times.dedup();
        assert_eq!(curve.event_times, event_times);

        let mut survival = 1.0;
        for (i, &t) in event_times.iter().enumerate() {
            let at_risk = samples.iter().filter(|s| s.duration >= t).count() as u32;
            let deaths = samples
                .iter()
                .filter(|s| s.event && s.duration == t)
                .count() as u32;
            assert_eq!(curve.at_risk[i], at_risk);
            assert_eq!(curve.deaths[i], deaths);
            survival *= f64::from(at_risk - deaths) / f64::from(at_risk);
            assert!(
                (curve.survival[i] - survival).abs() <= 1e-12,
                "step {i}: {} vs oracle {survival}",
                curve.survival[i]
            );
        }
    }
}

#[test]
fn curve_is_monotone_within_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6d_0002);
    for _ in 0..100 {
        let n = rng.random_range(1..=50);
        let samples = random_samples(&mut rng, n);
        let curve = km_estimate(&samples).unwrap();
        let mut previous = 1.0;
        for &s in &curve.survival {
            assert!((0.0..=1.0).contains(&s));
            assert!(s <= previous);
            previous = s;
        }
        if let Some(&first) = curve.event_times.first() {
            if first > 0 {
                assert_eq!(survival_fraction_at(&curve, first - 1), 1.0);
            }
        }
    }
}
