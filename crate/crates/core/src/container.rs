//! binary container: magic `SWSB`, u32 version, u8 kind, u64 rows, u64 cols, u64 metadata length,
//! UTF-8 JSON metadata, then row-major little-endian f64 data with complex entries interleaved (re, im)

use std::io::{Read, Write};

use num_complex::Complex;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::series::ScalingSeries;

pub const MAGIC: &[u8; 4] = b"SWSB";
pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Kind {
    Real = 0,
    Complex = 1,
    Series = 2,
}

impl Kind {
    fn from_byte(b: u8) -> Result<Self> {
        match b {
            0 => Ok(Kind::Real),
            1 => Ok(Kind::Complex),
            2 => Ok(Kind::Series),
            _ => Err(Error::Invalid(format!("unknown container kind {b}"))),
        }
    }
}

/// decoded container: shape, metadata and flat data (interleaved for complex)
#[derive(Clone, Debug, PartialEq)]
pub struct Container {
    pub kind: Kind,
    pub rows: usize,
    pub cols: usize,
    pub meta: Value,
    pub data: Vec<f64>,
}

impl Container {
    pub fn complex(rows: usize, cols: usize, entries: impl Fn(usize, usize) -> Complex<f64>, meta: Value) -> Self {
        let mut data = Vec::with_capacity(2 * rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let z = entries(i, j);
                data.push(z.re);
                data.push(z.im);
            }
        }
        Container { kind: Kind::Complex, rows, cols, meta, data }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<f64> {
        match self.kind {
            Kind::Complex => {
                let k = 2 * (i * self.cols + j);
                Complex::new(self.data[k], self.data[k + 1])
            }
            _ => Complex::new(self.data[i * self.cols + j], 0.0),
        }
    }

    pub fn write(&self, mut w: impl Write) -> Result<()> {
        let meta = serde_json::to_vec(&self.meta)?;
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&[self.kind as u8])?;
        for v in [self.rows as u64, self.cols as u64, meta.len() as u64] {
            w.write_all(&v.to_le_bytes())?;
        }
        w.write_all(&meta)?;
        for x in &self.data {
            w.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read(mut r: impl Read) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Invalid("not a container file".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != VERSION {
            return Err(Error::Invalid(format!("unsupported container version {version}")));
        }
        let mut b1 = [0u8; 1];
        r.read_exact(&mut b1)?;
        let kind = Kind::from_byte(b1[0])?;
        let mut u = [0u64; 3];
        for v in u.iter_mut() {
            let mut b8 = [0u8; 8];
            r.read_exact(&mut b8)?;
            *v = u64::from_le_bytes(b8);
        }
        let (rows, cols, mlen) = (u[0] as usize, u[1] as usize, u[2] as usize);
        let mut meta = vec![0u8; mlen];
        r.read_exact(&mut meta)?;
        let width = if kind == Kind::Complex { 2 } else { 1 };
        let count = rows.checked_mul(cols).and_then(|x| x.checked_mul(width)).ok_or(Error::Invalid("container size overflow".into()))?;
        let mut data = Vec::with_capacity(count);
        let mut b8 = [0u8; 8];
        for _ in 0..count {
            r.read_exact(&mut b8)?;
            data.push(f64::from_le_bytes(b8));
        }
        Ok(Container { kind, rows, cols, meta: serde_json::from_slice(&meta)?, data })
    }
}

/// series as a rows x 3 block of (ell, value, stderr) with the metadata record
pub fn series_container(s: &ScalingSeries) -> Result<Container> {
    let mut data = Vec::with_capacity(3 * s.len());
    for i in 0..s.len() {
        data.extend([s.ell[i], s.values[i], s.stderr[i]]);
    }
    Ok(Container { kind: Kind::Series, rows: s.len(), cols: 3, meta: serde_json::to_value(&s.meta)?, data })
}

pub fn series_from_container(c: &Container) -> Result<ScalingSeries> {
    if c.kind != Kind::Series || c.cols != 3 {
        return Err(Error::Invalid("container does not hold a series".into()));
    }
    let col = |k: usize| (0..c.rows).map(|i| c.data[3 * i + k]).collect();
    ScalingSeries::new(col(0), col(1), col(2), serde_json::from_value(c.meta.clone())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let c = Container::complex(2, 3, |i, j| Complex::new(i as f64 + 0.1, -(j as f64) / 7.0), serde_json::json!({"sites": [4, 5]}));
        let mut buf = vec![];
        c.write(&mut buf).unwrap();
        assert_eq!(&buf[..4], b"SWSB");
        assert_eq!(buf[8], 1);
        let back = Container::read(&buf[..]).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.entry(1, 2), Complex::new(1.1, -2.0 / 7.0));
    }

    #[test]
    fn series_round_trip() {
        let s = ScalingSeries::from_values(vec![1.0, 2.0], vec![0.5, 0.25]).unwrap();
        let c = series_container(&s).unwrap();
        let mut buf = vec![];
        c.write(&mut buf).unwrap();
        assert_eq!(series_from_container(&Container::read(&buf[..]).unwrap()).unwrap(), s);
        assert!(Container::read(&b"nope"[..]).is_err());
    }
}
