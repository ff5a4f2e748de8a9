use crate::error::DiscError;

/// Cell-averaged moment vectors, stored contiguously cell by cell.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub n_vars: usize,
    pub data: Vec<f64>,
    pub eps: f64,
}

impl FieldState {
    pub fn zeros(n_cells: usize, n_vars: usize, eps: f64) -> Self {
        FieldState { n_vars, data: vec![0.0; n_cells * n_vars], eps }
    }

    pub fn from_cells(cells: &[Vec<f64>], eps: f64) -> Result<Self, DiscError> {
        let n = cells.first().map_or(0, |c| c.len());
        let mut data = Vec::with_capacity(n * cells.len());
        for c in cells {
            if c.len() != n {
                return Err(DiscError::Dimension { expected: n, got: c.len() });
            }
            data.extend_from_slice(c);
        }
        Ok(FieldState { n_vars: n, data, eps })
    }

    pub fn n_cells(&self) -> usize {
        self.data.len() / self.n_vars
    }

    pub fn cell(&self, j: usize) -> &[f64] {
        &self.data[j * self.n_vars..(j + 1) * self.n_vars]
    }

    pub fn cell_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.n_vars..(j + 1) * self.n_vars]
    }

    pub fn component(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().skip(k).step_by(self.n_vars).copied()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Scaled L2 distance `sqrt((1/#cells) sum_j |a_j - b_j|^2)`.
    pub fn distance(&self, other: &FieldState) -> f64 {
        let s: f64 = self.data.iter().zip(&other.data).map(|(a, b)| (a - b) * (a - b)).sum();
        (s / self.n_cells() as f64).sqrt()
    }

    pub fn norm(&self) -> f64 {
        let s: f64 = self.data.iter().map(|a| a * a).sum();
        (s / self.n_cells() as f64).sqrt()
    }
}
