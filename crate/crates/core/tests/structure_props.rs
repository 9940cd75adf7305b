//! Statistical self-consistency of the power-law fitter.

mod common;

use common::DiscretePowerLaw;
use ecograph::structure::{fit_power_law, DegreeDistribution, DegreeKind};

#[test]
fn refitting_samples_from_a_fitted_model_is_stable() {
    // Fit once, resample from the fitted model, fit again: the two exponents
    // must agree within ±0.1 at n = 1e5.
    let first_samples = DiscretePowerLaw::new(2.2, 1).sample_many(100_000, 21);
    let first = fit_power_law(&DegreeDistribution::from_degrees(
        DegreeKind::Total,
        first_samples,
    ))
    .unwrap();

    let refit_samples = DiscretePowerLaw::new(first.gamma, first.xmin).sample_many(100_000, 22);
    let second = fit_power_law(&DegreeDistribution::from_degrees(
        DegreeKind::Total,
        refit_samples,
    ))
    .unwrap();

    assert!(
        (second.gamma - first.gamma).abs() <= 0.1,
        "first {:.4} (xmin {}), refit {:.4} (xmin {})",
        first.gamma,
        first.xmin,
        second.gamma,
        second.xmin
    );
}

#[test]
fn ks_statistic_stays_in_unit_interval() {
    for seed in 0..5 {
        let samples = DiscretePowerLaw::new(2.5, 1).sample_many(20_000, seed);
        let fit = fit_power_law(&DegreeDistribution::from_degrees(
            DegreeKind::Total,
            samples,
        ))
        .unwrap();
        assert!(fit.ks_statistic >= 0.0 && fit.ks_statistic <= 1.0);
        assert!(fit.gamma > 1.0);
        assert!(fit.xmin >= 1);
    }
}
