//! Parametric CVaR under a location-scale Student-t fitted by moments.

use statrs::distribution::{Continuous, ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};
use crate::scenarios::ScenarioDist;

pub const MIN_SAMPLE: usize = 8;
pub const NU_MIN: f64 = 2.5;
pub const NU_MAX: f64 = 100.0;

/// Method-of-moments Student-t fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentTFit {
    pub location: f64,
    pub scale: f64,
    pub nu: f64,
    /// Set when the sample kurtosis was at most 3 and `nu` fell back to [`NU_MAX`].
    pub kurtosis_fallback: bool,
}

/// Fits `nu = 4 + 6 / (kurtosis - 3)` clamped to `[2.5, 100]`,
/// `scale^2 = s^2 (nu - 2) / nu` and location = mean.
pub fn fit_student_t(d: &ScenarioDist) -> Result<StudentTFit> {
    if d.len() < MIN_SAMPLE {
        return Err(Error::FitUndefined(format!(
            "{} outcomes, at least {MIN_SAMPLE} required",
            d.len()
        )));
    }
    let mean = d.expectation();
    let var = d.variance();
    if d.min() == d.max() || !(var > 0.0) {
        return Err(Error::FitUndefined("zero variance".into()));
    }
    let kurtosis = d.weighted_sum(|x| (x - mean).powi(4)) / (var * var);
    let (nu, kurtosis_fallback) = if kurtosis > 3.0 {
        ((4.0 + 6.0 / (kurtosis - 3.0)).clamp(NU_MIN, NU_MAX), false)
    } else {
        (NU_MAX, true)
    };
    Ok(StudentTFit {
        location: mean,
        scale: (var * (nu - 2.0) / nu).sqrt(),
        nu,
        kurtosis_fallback,
    })
}

/// Lower-tail CVaR at level `alpha` of `location + scale * T_nu`.
///
/// `nu = f64::INFINITY` gives the Gaussian limit.
pub fn student_t_cvar(location: f64, scale: f64, nu: f64, alpha: f64) -> f64 {
    let standard_tail = if nu.is_infinite() {
        let n = Normal::new(0.0, 1.0).expect("standard normal");
        n.pdf(n.inverse_cdf(alpha)) / alpha
    } else {
        let t = StudentsT::new(0.0, 1.0, nu).expect("nu > 0");
        let q = t.inverse_cdf(alpha);
        t.pdf(q) / alpha * (nu + q * q) / (nu - 1.0)
    };
    -location + scale * standard_tail
}

/// Parametric CVaR together with the fit that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TCvar {
    pub value: f64,
    pub fit: StudentTFit,
}

pub fn cvar_student_t(d: &ScenarioDist, alpha: f64) -> Result<TCvar> {
    let fit = fit_student_t(d)?;
    Ok(TCvar {
        value: student_t_cvar(fit.location, fit.scale, fit.nu, alpha),
        fit,
    })
}
