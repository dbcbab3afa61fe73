use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::ScalingSeries;

pub const MIN_FIT_POINTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    LogLogLeastSquares,
    PlateauMean,
}

/// y ~ prefactor * ell^{-exponent}, or a plateau with exponent 0
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub prefactor: f64,
    /// standard error of the exponent (power law) or of the mean (plateau)
    pub stderr: f64,
    /// smallest and largest ell actually used
    pub window: (f64, f64),
    /// weighted rms residual, in log space for power laws
    pub residual: f64,
    /// plateau only: fitted linear change across the window relative to the mean
    pub drift: Option<f64>,
    pub points: usize,
    pub method: FitMethod,
}

fn select(series: &ScalingSeries, window: (f64, f64)) -> Result<ScalingSeries> {
    series.validate()?;
    if !(window.0 <= window.1) {
        return Err(Error::Invalid("fit window must satisfy a <= b".into()));
    }
    let w = series.window(window.0, window.1);
    if w.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientPoints { got: w.len(), need: MIN_FIT_POINTS });
    }
    Ok(w)
}

struct Line {
    slope: f64,
    intercept: f64,
    slope_var: f64,
    rms: f64,
}

fn weighted_line(x: &[f64], y: &[f64], w: &[f64], known_errors: bool) -> Line {
    let sw: f64 = w.iter().sum();
    let xm = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let ym = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let sxx: f64 = x.iter().zip(w).map(|(a, b)| b * (a - xm).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| b * (a - xm) * (c - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let chi2: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| b * (c - intercept - slope * a).powi(2)).sum();
    let n = x.len() as f64;
    let slope_var = if known_errors { 1.0 / sxx } else { chi2 / (n - 2.0) / sxx };
    Line { slope, intercept, slope_var, rms: (chi2 / sw).sqrt() }
}

fn weights(s: &ScalingSeries, relative: bool) -> (Vec<f64>, bool) {
    let known = s.stderr.iter().all(|&e| e > 0.0);
    let w = if known {
        s.stderr.iter().zip(&s.values).map(|(e, v)| if relative { (v / e).powi(2) } else { 1.0 / (e * e) }).collect()
    } else {
        vec![1.0; s.len()]
    };
    (w, known)
}

/// weighted least squares of ln y on ln ell; weights (y / sigma)^2 when every point has an error
pub fn fit_power_law(series: &ScalingSeries, window: (f64, f64)) -> Result<FitResult> {
    let s = select(series, window)?;
    if let Some(&v) = s.values.iter().chain(&s.ell).find(|&&v| !(v > 0.0)) {
        return Err(Error::NotPositive(v));
    }
    let x: Vec<f64> = s.ell.iter().map(|l| l.ln()).collect();
    let y: Vec<f64> = s.values.iter().map(|v| v.ln()).collect();
    let (w, known) = weights(&s, true);
    let line = weighted_line(&x, &y, &w, known);
    Ok(FitResult {
        exponent: -line.slope,
        prefactor: line.intercept.exp(),
        stderr: line.slope_var.sqrt(),
        window: (s.ell[0], s.ell[s.len() - 1]),
        residual: line.rms,
        drift: None,
        points: s.len(),
        method: FitMethod::LogLogLeastSquares,
    })
}

/// weighted mean with a linear drift statistic
pub fn fit_plateau(series: &ScalingSeries, window: (f64, f64)) -> Result<FitResult> {
    let s = select(series, window)?;
    let (w, known) = weights(&s, false);
    let sw: f64 = w.iter().sum();
    let mean = s.values.iter().zip(&w).map(|(v, b)| v * b).sum::<f64>() / sw;
    let n = s.len() as f64;
    let scatter = s.values.iter().zip(&w).map(|(v, b)| b * (v - mean).powi(2)).sum::<f64>();
    let stderr = if known { 1.0 / sw.sqrt() } else { (scatter / (n - 1.0) / n).sqrt() };
    let line = weighted_line(&s.ell, &s.values, &w, known);
    let span = s.ell[s.len() - 1] - s.ell[0];
    Ok(FitResult {
        exponent: 0.0,
        prefactor: mean,
        stderr,
        window: (s.ell[0], s.ell[s.len() - 1]),
        residual: (scatter / sw).sqrt(),
        drift: Some(line.slope * span / mean),
        points: s.len(),
        method: FitMethod::PlateauMean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::SeriesMeta;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn exact_power_law() {
        let ell: Vec<f64> = (1..=10).map(|i| 5.0 * i as f64).collect();
        let s = ScalingSeries::from_values(ell.clone(), ell.iter().map(|l| 3.0 / (l * l)).collect()).unwrap();
        let f = fit_power_law(&s, (0.0, 100.0)).unwrap();
        assert!((f.exponent - 2.0).abs() < 1e-6);
        assert!((f.prefactor - 3.0).abs() < 1e-6);
        assert_eq!(f.window, (5.0, 50.0));
    }

    #[test]
    fn noisy_plateau() {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let noise = Normal::new(0.0, 0.001).unwrap();
        let ell: Vec<f64> = (10..=200).step_by(10).map(f64::from).collect();
        let v: Vec<f64> = ell.iter().map(|_| 0.4 + noise.sample(&mut r)).collect();
        let s = ScalingSeries::from_values(ell, v).unwrap();
        let f = fit_plateau(&s, (10.0, 200.0)).unwrap();
        assert!((f.prefactor - 0.4).abs() < 0.001);
        assert!(f.drift.unwrap().abs() < 0.01);
    }

    #[test]
    fn errors() {
        let s = ScalingSeries::from_values(vec![1.0, 2.0, 3.0], vec![1.0, 0.5, 0.3]).unwrap();
        assert!(matches!(fit_power_law(&s, (0.0, 10.0)), Err(Error::InsufficientPoints { got: 3, need: 4 })));
        let s = ScalingSeries::from_values(vec![1.0, 2.0, 3.0, 4.0], vec![1.0, 0.5, 0.0, 0.3]).unwrap();
        assert!(fit_power_law(&s, (0.0, 10.0)).is_err());
        assert!(fit_plateau(&s, (0.0, 10.0)).is_ok());
    }

    #[test]
    fn unbiased_over_seeds() {
        let ell: Vec<f64> = (8..=24).map(f64::from).collect();
        let mut hits = 0;
        for seed in 0..100u64 {
            let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut values = vec![];
            let mut errs = vec![];
            for l in &ell {
                let y = 0.7 * l.powf(-1.5);
                let e = 0.02 * y;
                values.push(y + Normal::new(0.0, e).unwrap().sample(&mut r));
                errs.push(e);
            }
            let s = ScalingSeries::new(ell.clone(), values, errs, SeriesMeta::default()).unwrap();
            let f = fit_power_law(&s, (8.0, 24.0)).unwrap();
            if (f.exponent - 1.5).abs() < 3.0 * f.stderr {
                hits += 1;
            }
        }
        assert_eq!(hits, 100);
    }
}
