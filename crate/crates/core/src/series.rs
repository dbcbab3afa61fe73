use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeriesMeta {
    pub model: String,
    pub estimator: String,
    pub seeds: Vec<u64>,
    pub realizations: usize,
    pub params: BTreeMap<String, f64>,
    /// unix seconds; left empty by library sweeps so that outputs stay reproducible
    pub timestamp: Option<u64>,
    pub notes: Vec<String>,
}

/// (ell, value, stderr) triples with provenance
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScalingSeries {
    pub ell: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    pub meta: SeriesMeta,
}

impl ScalingSeries {
    pub fn new(ell: Vec<f64>, values: Vec<f64>, stderr: Vec<f64>, meta: SeriesMeta) -> Result<Self> {
        let s = ScalingSeries { ell, values, stderr, meta };
        s.validate()?;
        Ok(s)
    }

    pub fn from_values(ell: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::new(ell, values, vec![0.0; n], SeriesMeta::default())
    }

    pub fn validate(&self) -> Result<()> {
        if self.ell.len() != self.values.len() || self.ell.len() != self.stderr.len() {
            return Err(Error::Dimension("series columns differ in length".into()));
        }
        if let Some(&e) = self.stderr.iter().find(|&&e| !(e >= 0.0)) {
            return Err(Error::Invalid(format!("negative or undefined standard error {e}")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ell.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ell.is_empty()
    }

    /// points with a <= ell <= b
    pub fn window(&self, a: f64, b: f64) -> ScalingSeries {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.ell[i] >= a && self.ell[i] <= b).collect();
        ScalingSeries {
            ell: keep.iter().map(|&i| self.ell[i]).collect(),
            values: keep.iter().map(|&i| self.values[i]).collect(),
            stderr: keep.iter().map(|&i| self.stderr[i]).collect(),
            meta: self.meta.clone(),
        }
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "ell,value,stderr")?;
        for i in 0..self.len() {
            writeln!(w, "{:?},{:?},{:?}", self.ell[i], self.values[i], self.stderr[i])?;
        }
        Ok(())
    }

    pub fn read_csv(r: impl BufRead) -> Result<Self> {
        let mut s = ScalingSeries::default();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (n == 0 && line.starts_with("ell")) {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(Error::Invalid(format!("line {}: expected 3 columns", n + 1)));
            }
            let parse = |c: &str| c.trim().parse::<f64>().map_err(|e| Error::Invalid(format!("line {}: {e}", n + 1)));
            s.ell.push(parse(cols[0])?);
            s.values.push(parse(cols[1])?);
            s.stderr.push(parse(cols[2])?);
        }
        s.validate()?;
        Ok(s)
    }
}

/// mean and standard error (sample deviation over sqrt(count)); one sample has error 0
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
