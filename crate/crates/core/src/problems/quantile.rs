//! Standard normal CDF and quantile function.

#![allow(clippy::excessive_precision, clippy::unreadable_literal)]

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Standard normal CDF, `0.5 * erfc(-x / sqrt(2))`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// Upper tail `1 - Phi(x)`, accurate for large positive `x`.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Inverse of the standard normal CDF.
///
/// Wichura's AS241 rational approximation followed by one Halley step
/// against [`normal_cdf`]. The step is done on the lower tail `min(p, 1-p)`
/// so that probabilities close to one keep full relative accuracy.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "normal_quantile requires 0 < p < 1, got {p}"
        )));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let lower = p.min(1.0 - p);
    let mut x = as241(lower);
    // Halley refinement on Phi(x) - lower = 0
    let err = normal_cdf(x) - lower;
    let u = err * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
    x -= u / (1.0 + 0.5 * x * u);
    Ok(if p < 0.5 { x } else { -x })
}

fn as241(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        let num = horner(
            &[
                2.5090809287301226727e3,
                3.3430575583588128105e4,
                6.7265770927008700853e4,
                4.5921953931549871457e4,
                1.3731693765509461125e4,
                1.9715909503065514427e3,
                1.3314166789178437745e2,
                3.3871328727963666080e0,
            ],
            r,
        );
        let den = horner(
            &[
                5.2264952788528545610e3,
                2.8729085735721942674e4,
                3.9307895800092710610e4,
                2.1213794301586595867e4,
                5.3941960214247511077e3,
                6.8718700749205790830e2,
                4.2313330701600911252e1,
                1.0,
            ],
            r,
        );
        return q * num / den;
    }

    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let val = if r <= 5.0 {
        r -= 1.6;
        let num = horner(
            &[
                7.74545014278341407640e-4,
                2.27238449892691845833e-2,
                2.41780725177450611770e-1,
                1.27045825245236838258e0,
                3.64784832476320460504e0,
                5.76949722146069140550e0,
                4.63033784615654529590e0,
                1.42343711074968357734e0,
            ],
            r,
        );
        let den = horner(
            &[
                1.05075007164441684324e-9,
                5.47593808499534494600e-4,
                1.51986665636164571966e-2,
                1.48103976427480074590e-1,
                6.89767334985100004550e-1,
                1.67638483018380384940e0,
                2.05319162663775882187e0,
                1.0,
            ],
            r,
        );
        num / den
    } else {
        r -= 5.0;
        let num = horner(
            &[
                2.01033439929228813265e-7,
                2.71155556874348757815e-5,
                1.24266094738807843860e-3,
                2.65321895265761230930e-2,
                2.96560571828504891230e-1,
                1.78482653991729133580e0,
                5.46378491116411436990e0,
                6.65790464350110377720e0,
            ],
            r,
        );
        let den = horner(
            &[
                2.04426310338993978564e-15,
                1.42151175831644588870e-7,
                1.84631831751005468180e-5,
                7.86869131145613259100e-4,
                1.48753612908506148525e-2,
                1.36929880922735805310e-1,
                5.99832206555887937690e-1,
                1.0,
            ],
            r,
        );
        num / den
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

/// Evaluates a polynomial with coefficients from the highest degree down.
fn horner(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * r + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_is_zero() {
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
    }

    #[test]
    fn reference_points() {
        assert!((normal_quantile(0.8).unwrap() - 0.841621233573).abs() < 1e-9);
        assert!((normal_quantile(0.99).unwrap() - 2.326347874041).abs() < 1e-9);
    }

    #[test]
    fn antisymmetric() {
        for p in [0.6, 0.8, 0.99] {
            let s = normal_quantile(p).unwrap() + normal_quantile(1.0 - p).unwrap();
            assert!(s.abs() < 2e-9, "p = {p}: {s}");
        }
    }

    #[test]
    fn domain() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(normal_quantile(p), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn cdf_roundtrip_in_tails() {
        for p in [1e-14, 1e-10, 1e-6, 0.01, 0.3] {
            let x = normal_quantile(p).unwrap();
            assert!(((normal_cdf(x) - p) / p).abs() < 1e-12, "p = {p}");
        }
    }
}
