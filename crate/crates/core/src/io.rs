//! File formats: coefficient files, complex values as `{re, im}` records,
//! and the spectrum table.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ito_hermite::PolyIndex;
use crate::spectral::Spectrum;
use crate::transforms::CoeffFunction;

/// Environment variable that overrides the output directory.
pub const OUT_DIR_ENV: &str = "ITO_FRFT_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub const fn new(re: f64, im: f64) -> Self {
        ComplexValue { re, im }
    }
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffRecord {
    pub m: usize,
    pub n: usize,
    pub re: f64,
    pub im: f64,
}

/// On-disk form of a [`CoeffFunction`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffFile {
    pub nu: f64,
    pub coeffs: Vec<CoeffRecord>,
}

impl CoeffFile {
    pub fn from_function(f: &CoeffFunction) -> Self {
        CoeffFile {
            nu: f.nu(),
            coeffs: f
                .coeffs()
                .iter()
                .map(|(idx, a)| CoeffRecord {
                    m: idx.m,
                    n: idx.n,
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }

    pub fn to_function(&self) -> Result<CoeffFunction> {
        let mut coeffs = BTreeMap::new();
        for rec in &self.coeffs {
            let idx = PolyIndex::new(rec.m, rec.n);
            if coeffs.insert(idx, Complex64::new(rec.re, rec.im)).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "coeffs: duplicate index ({}, {})",
                    rec.m, rec.n
                )));
            }
        }
        if !(self.nu > 0.0) {
            return Err(Error::InvalidParameter(format!("nu: must be > 0 (got {})", self.nu)));
        }
        CoeffFunction::new(self.nu, coeffs)
    }

    pub fn parse(text: &str) -> Result<CoeffFunction> {
        let file: CoeffFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("coefficient file: {e}")))?;
        file.to_function()
    }

    pub fn read(path: &Path) -> Result<CoeffFunction> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coefficient file serializes")
    }
}

/// `spectrum.csv`: header `m,n,s`, one row per tabulated index in index order.
pub fn write_spectrum_csv<W: Write>(spec: &Spectrum, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
    wtr.write_record(["m", "n", "s"]).map_err(io_err)?;
    for (idx, s) in spec.values() {
        wtr.write_record([idx.m.to_string(), idx.n.to_string(), format!("{s:e}")])
            .map_err(io_err)?;
    }
    wtr.flush()
        .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(())
}

/// Output directory: the environment override, then the configured value,
/// then the working directory.
pub fn output_dir(configured: Option<&Path>) -> PathBuf {
    let env = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    resolve_output_dir(env.as_deref(), configured)
}

/// [`output_dir`] with the environment value passed in.
pub fn resolve_output_dir(env: Option<&Path>, configured: Option<&Path>) -> PathBuf {
    env.or(configured).map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}
