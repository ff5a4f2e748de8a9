use std::ops::Range;

use crate::burnett::level;
use crate::error::BasisError;
use crate::system::{Label, MomentSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Two blocks. Hermite: indices `<= cutoff`. Burnett: the set `U_cutoff`.
    MicroMacro { cutoff: usize },
    /// Hermite: `u^0..u^3`, then one moment per level. Burnett: `U_2`, then `U_{k+1} \ U_k`.
    MultiScale,
}

/// Ordered, contiguous, disjoint blocks covering all indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub scheme: Scheme,
    pub blocks: Vec<Range<usize>>,
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn macro_block(&self) -> Range<usize> {
        self.blocks[0].clone()
    }
}

fn levels(system: &MomentSystem) -> Vec<usize> {
    system
        .labels
        .iter()
        .map(|lab| match *lab {
            // the Hermite "level" of u^n for n >= 3 is n, with the kernel and u^3 at level 3
            Label::Hermite(n) => n.max(3),
            Label::Burnett { l, n, .. } => level(l, n).max(2),
        })
        .collect()
}

pub fn default_cutoff(system: &MomentSystem) -> usize {
    match system.labels[0] {
        Label::Hermite(_) => 3,
        Label::Burnett { .. } => 2,
    }
}

pub fn partition(system: &MomentSystem, scheme: Scheme) -> Result<BlockPartition, BasisError> {
    let n = system.n_vars();
    let blocks = match scheme {
        Scheme::MicroMacro { cutoff } => {
            let n1 = match system.labels[0] {
                Label::Hermite(_) => (cutoff + 1).min(n),
                Label::Burnett { .. } => system
                    .labels
                    .iter()
                    .take_while(|lab| match **lab {
                        Label::Burnett { l, n, .. } => level(l, n) <= cutoff,
                        _ => false,
                    })
                    .count(),
            };
            if let Some(&k) = system.kernel().iter().find(|&&k| k >= n1) {
                return Err(BasisError::InvalidPartition(format!(
                    "cutoff {cutoff} leaves kernel variable {} outside the macro block",
                    system.labels[k]
                )));
            }
            if n1 < n {
                vec![0..n1, n1..n]
            } else {
                vec![0..n]
            }
        }
        Scheme::MultiScale => {
            let lv = levels(system);
            let mut blocks = Vec::new();
            let mut start = 0;
            for k in 1..=n {
                if k == n || lv[k] != lv[start] {
                    blocks.push(start..k);
                    start = k;
                }
            }
            blocks
        }
    };
    Ok(BlockPartition { scheme, blocks })
}
