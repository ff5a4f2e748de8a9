use crate::error::DiscError;

/// Uniform grid on the unit interval or unit square. Cells are numbered with x fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub cells: Vec<usize>,
    pub h: Vec<f64>,
    pub periodic: bool,
}

impl Grid {
    pub fn line(m: usize) -> Result<Self, DiscError> {
        Self::new(vec![m], false)
    }

    pub fn square(mx: usize, my: usize) -> Result<Self, DiscError> {
        Self::new(vec![mx, my], false)
    }

    pub fn periodic_line(m: usize) -> Result<Self, DiscError> {
        Self::new(vec![m], true)
    }

    pub fn new(cells: Vec<usize>, periodic: bool) -> Result<Self, DiscError> {
        if cells.is_empty() || cells.len() > 2 {
            return Err(DiscError::InvalidGrid(format!("dimension {} not in 1..=2", cells.len())));
        }
        if cells.contains(&0) {
            return Err(DiscError::InvalidGrid("empty direction".into()));
        }
        let h = cells.iter().map(|&m| 1.0 / m as f64).collect();
        Ok(Grid { cells, h, periodic })
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn dx(&self) -> f64 {
        self.h[0]
    }

    pub fn n_cells(&self) -> usize {
        self.cells.iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.h.iter().product()
    }

    /// Distance between neighbours along direction `d` in the flat numbering.
    pub fn stride(&self, d: usize) -> usize {
        self.cells[..d].iter().product()
    }

    pub fn index(&self, pos: &[usize]) -> usize {
        pos.iter().enumerate().map(|(d, &p)| p * self.stride(d)).sum()
    }

    pub fn position(&self, idx: usize) -> Vec<usize> {
        (0..self.dim()).map(|d| (idx / self.stride(d)) % self.cells[d]).collect()
    }

    pub fn center(&self, idx: usize) -> Vec<f64> {
        self.position(idx).iter().zip(&self.h).map(|(&p, &h)| (p as f64 + 0.5) * h).collect()
    }
}
