use nalgebra::DVector;

use crate::linalg::C64;

/// Roots of a symbol equation, with its dominant (largest-modulus) root.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpectrum {
    pub roots: Vec<C64>,
    pub dominant: C64,
    /// Null-vector pair `(α, β)` attached to the dominant root, when the analysis has one.
    pub auxiliary: Option<(DVector<C64>, DVector<C64>)>,
}

impl SymbolSpectrum {
    pub fn from_roots(roots: Vec<C64>) -> Self {
        let dominant = roots.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
        SymbolSpectrum { roots, dominant, auxiliary: None }
    }

    pub fn radius(&self) -> f64 {
        self.dominant.norm()
    }
}
