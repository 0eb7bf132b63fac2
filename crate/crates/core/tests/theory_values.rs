//! Threshold values frozen from an independent 50-digit evaluation.

use approx::assert_abs_diff_eq;
use softhappy::theory::*;
use softhappy::ThresholdReport;

#[test]
fn worked_example_thresholds() {
    assert_abs_diff_eq!(
        xi_tilde(20, 0.7, 0.06),
        0.380_434_782_608_695_6,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(
        xi(1000, 20, 0.7, 0.06, 1e-6).unwrap(),
        0.380_434_782_608_695_6,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(
        xi_default(1000, 20, 0.7, 0.06),
        0.380_434_782_608_695_6,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(
        xi_tilde(2, 0.5, 0.1),
        0.833_333_333_333_333_3,
        epsilon = 1e-12
    );
}

#[test]
fn worked_example_rate_and_bound() {
    let phi = phi(20, 0.7, 0.06, 0.3);
    assert_abs_diff_eq!(phi, -0.027_952_853_699_074_3, epsilon = 1e-14);
    let eps_tilde = epsilon_tilde(1000, 20, 0.7, 0.06, 0.3);
    assert_abs_diff_eq!(eps_tilde / 7.248_195_271_778_423e-13, 1.0, epsilon = 1e-9);
    assert_abs_diff_eq!(
        prob_lower_bound(1000, eps_tilde),
        0.999_999_999_275_180_5,
        epsilon = 1e-13
    );
    assert!(theorem1_inequality_holds(1000, 20, 0.7, 0.06, 0.3, 1e-6).unwrap());
}

#[test]
fn limit_identity() {
    let n = 1_000_000;
    assert_abs_diff_eq!(
        prob_lower_bound(n, 1.0 / n as f64),
        0.367_879_257_231_645_1,
        epsilon = 1e-12
    );
}

#[test]
fn report_fields() {
    let r = ThresholdReport::compute(1000, 20, 0.7, 0.06, 0.3, None).unwrap();
    assert_eq!(r.epsilon_used, 1e-6);
    assert_abs_diff_eq!(r.expected_degree, 91.3, epsilon = 1e-9);
    assert!(r.inequality_holds);
    let r = ThresholdReport::compute(1000, 20, 0.7, 0.06, 1.0, Some(1e-3)).unwrap();
    assert!(!r.inequality_holds);
    assert_eq!(r.epsilon_used, 1e-3);
    assert!(ThresholdReport::compute(1000, 20, 0.7, 0.06, 0.3, Some(1.5)).is_err());
}
