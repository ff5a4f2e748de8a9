use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Bsgs,
    Bssr,
    BsgsMm,
    HybridMm,
    BsgsMs,
    HybridMs,
    Gsis,
    /// Sparse LU of the whole discrete system.
    Direct,
}

impl Method {
    pub fn uses_macro_solve(self) -> bool {
        matches!(self, Method::BsgsMm | Method::HybridMm | Method::BsgsMs | Method::HybridMs | Method::Gsis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerMode {
    Direct,
    Iterative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InnerConfig {
    pub mode: InnerMode,
    pub inner_tol: f64,
    pub max_iter: usize,
}

impl Default for InnerConfig {
    fn default() -> Self {
        InnerConfig { mode: InnerMode::Direct, inner_tol: 1e-12, max_iter: 20000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub method: Method,
    pub tol: f64,
    #[serde(rename = "N_s")]
    pub max_iter: usize,
    pub alpha: f64,
    #[serde(rename = "N_b")]
    pub n_b: usize,
    /// Macro cutoff for the micro-macro split; the basis default when absent.
    pub cutoff: Option<usize>,
    pub inner: InnerConfig,
    /// Abort once the residual exceeds this multiple of the initial one.
    pub divergence_factor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Bsgs,
            tol: 1e-10,
            max_iter: 10000,
            alpha: 0.0,
            n_b: 0,
            cutoff: None,
            inner: InnerConfig::default(),
            divergence_factor: 1e6,
        }
    }
}

impl SolverConfig {
    pub fn new(method: Method) -> Self {
        SolverConfig { method, ..Default::default() }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn max_iter(mut self, n: usize) -> Self {
        self.max_iter = n;
        self
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn n_b(mut self, n_b: usize) -> Self {
        self.n_b = n_b;
        self
    }

    pub fn inner(mut self, inner: InnerConfig) -> Self {
        self.inner = inner;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.tol > 0.0) {
            return Err("tol must be positive".into());
        }
        if !(self.alpha >= 0.0) {
            return Err("alpha must be nonnegative".into());
        }
        if self.inner.mode == InnerMode::Iterative && !(self.inner.inner_tol < self.tol) {
            return Err("inner_tol must be below tol in iterative mode".into());
        }
        Ok(())
    }
}
