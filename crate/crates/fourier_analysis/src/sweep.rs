use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use solvers::Method;

use crate::error::{FourierError, Result};
use crate::kernel::{bssr_symbol, check_eta};
use crate::spectrum::SymbolSpectrum;
use crate::velocity::{bsgs_mm_symbol, bsgs_symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SymbolMethod {
    /// Full first-order BSGS symbol at finite `ε`.
    Bsgs,
    /// Limit (`ε → 0`) BSSR symbol.
    Bssr,
    BsgsMm,
}

impl SymbolMethod {
    pub fn name(self) -> &'static str {
        match self {
            SymbolMethod::Bsgs => "BSGS",
            SymbolMethod::Bssr => "BSSR",
            SymbolMethod::BsgsMm => "BSGS_MM",
        }
    }

    pub fn solver_method(self) -> Method {
        match self {
            SymbolMethod::Bsgs => Method::Bsgs,
            SymbolMethod::Bssr => Method::Bssr,
            SymbolMethod::BsgsMm => Method::BsgsMm,
        }
    }
}

/// One point of a symbol analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolProblem {
    pub method: SymbolMethod,
    pub eta: f64,
    pub dx: f64,
    pub eps: f64,
    pub alpha: f64,
    pub n_trunc: usize,
}

impl SymbolProblem {
    pub fn validate(&self) -> Result<()> {
        check_eta(self.eta)?;
        if !(self.eps > 0.0 && self.dx > 0.0) {
            return Err(FourierError::InvalidParameter(format!("ε = {}, Δx = {}", self.eps, self.dx)));
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Result<SymbolSpectrum> {
        self.validate()?;
        match self.method {
            SymbolMethod::Bsgs => bsgs_symbol(self.eps, self.eta, self.dx, self.n_trunc),
            SymbolMethod::Bssr => bssr_symbol(self.alpha, self.eta, self.n_trunc),
            SymbolMethod::BsgsMm => bsgs_mm_symbol(self.eps, self.eta, self.dx, self.n_trunc),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolRow {
    pub method: String,
    pub epsilon: f64,
    pub eta: f64,
    pub alpha: f64,
    pub dominant_modulus: f64,
    pub dominant_re: f64,
    pub dominant_im: f64,
}

impl SymbolRow {
    pub fn new(p: &SymbolProblem, s: &SymbolSpectrum) -> Self {
        SymbolRow {
            method: p.method.name().into(),
            epsilon: p.eps,
            eta: p.eta,
            alpha: p.alpha,
            dominant_modulus: s.radius(),
            dominant_re: s.dominant.re,
            dominant_im: s.dominant.im,
        }
    }
}

/// Evaluates the problems in parallel; rows keep the input order.
pub fn sweep(problems: &[SymbolProblem]) -> Result<Vec<SymbolRow>> {
    problems.par_iter().map(|p| p.spectrum().map(|s| SymbolRow::new(p, &s))).collect()
}

pub fn write_sweep_csv(path: &Path, rows: &[SymbolRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
