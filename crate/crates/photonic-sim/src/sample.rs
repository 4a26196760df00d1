//! Finite-statistics emulation: multinomial sampling of click patterns.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::detect::ClickPattern;
use crate::{PhotonicError, Result};

/// Draw `shots` click patterns from the distribution (normalized over its
/// captured weight), deterministic per seed. Returns pattern counts.
pub fn sample_clicks(
    dist: &BTreeMap<ClickPattern, f64>,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<ClickPattern, u64>> {
    if shots == 0 {
        return Err(PhotonicError::ZeroShots);
    }
    let patterns: Vec<ClickPattern> = dist.keys().copied().collect();
    let mut cumulative = Vec::with_capacity(patterns.len());
    let mut acc = 0.0;
    for p in dist.values() {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    if total <= 0.0 {
        return Err(PhotonicError::BadConfig(
            "click distribution carries no weight".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<ClickPattern, u64> = BTreeMap::new();
    for _ in 0..shots {
        let x: f64 = rng.gen::<f64>() * total;
        let idx = cumulative.partition_point(|&c| c < x).min(patterns.len() - 1);
        *counts.entry(patterns[idx]).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Render a click distribution (and optional sampled counts) as CSV with the
/// documented column set: `pattern` is the 12-bit detector mask in the fixed
/// order a1H (bit 0), a1V, a2H, ..., b3V (bit 11).
pub fn clicks_to_csv(
    dist: &BTreeMap<ClickPattern, f64>,
    counts: Option<&BTreeMap<ClickPattern, u64>>,
) -> String {
    let mut out = String::from("pattern,count,probability\n");
    for (pattern, p) in dist {
        let count = counts
            .and_then(|c| c.get(pattern))
            .copied()
            .unwrap_or(0);
        out.push_str(&format!("{},{},{:.12e}\n", pattern.0, count, p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_distribution_counts_every_shot() {
        let mut dist = BTreeMap::new();
        dist.insert(ClickPattern(0b11), 1.0);
        let counts = sample_clicks(&dist, 100, 7).unwrap();
        assert_eq!(counts.get(&ClickPattern(0b11)), Some(&100));
    }

    #[test]
    fn fair_two_pattern_distribution_splits_within_three_sigma() {
        let mut dist = BTreeMap::new();
        dist.insert(ClickPattern(1), 0.5);
        dist.insert(ClickPattern(2), 0.5);
        let shots = 100_000u64;
        let counts = sample_clicks(&dist, shots, 42).unwrap();
        let sigma = (shots as f64 * 0.25).sqrt();
        for pattern in [ClickPattern(1), ClickPattern(2)] {
            let c = *counts.get(&pattern).unwrap() as f64;
            assert!((c - 50_000.0).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let mut dist = BTreeMap::new();
        dist.insert(ClickPattern(1), 0.3);
        dist.insert(ClickPattern(2), 0.7);
        let a = sample_clicks(&dist, 1000, 5).unwrap();
        let b = sample_clicks(&dist, 1000, 5).unwrap();
        assert_eq!(a, b);
        let c = sample_clicks(&dist, 1000, 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_shots_is_rejected() {
        let mut dist = BTreeMap::new();
        dist.insert(ClickPattern(1), 1.0);
        assert!(matches!(
            sample_clicks(&dist, 0, 1),
            Err(PhotonicError::ZeroShots)
        ));
    }

    #[test]
    fn csv_rendering_uses_the_fixed_mask_order() {
        let mut dist = BTreeMap::new();
        dist.insert(ClickPattern(0b100000000001), 0.25);
        let counts = sample_clicks(&dist, 8, 3).unwrap();
        let csv = clicks_to_csv(&dist, Some(&counts));
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("pattern,count,probability"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("2049,8,"), "row: {row}");
    }
}
