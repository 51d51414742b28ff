//! Named variable spaces shared by all polynomials of a computation.
//!
//! A space lists the ambient variables in a fixed order: the grouped
//! generators `T_ij` first (group by group), then the slack variables
//! `S_k`.  Generic presented rings (suspensions, degree-zero subrings)
//! use a plain space with custom names and a single group.

use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSpace {
    /// Sizes of the variable groups, in order.
    pub group_sizes: Vec<usize>,
    /// Index of the first group in display names (`0` for hypersurfaces,
    /// `1` for Type 1 trinomial varieties).
    pub first_group: usize,
    /// Number of slack variables appended after the grouped ones.
    pub slack: usize,
    /// Display names, one per variable.
    pub names: Vec<String>,
}

pub type SpaceRef = Arc<VariableSpace>;

impl VariableSpace {
    pub fn grouped(group_sizes: Vec<usize>, first_group: usize, slack: usize) -> SpaceRef {
        let mut names = Vec::new();
        for (g, &sz) in group_sizes.iter().enumerate() {
            for j in 1..=sz {
                names.push(format!("T_{}{}", g + first_group, j));
            }
        }
        for k in 1..=slack {
            names.push(format!("S_{k}"));
        }
        Arc::new(VariableSpace {
            group_sizes,
            first_group,
            slack,
            names,
        })
    }

    /// Space with explicit names and no group structure.
    pub fn plain(names: Vec<String>) -> SpaceRef {
        let n = names.len();
        Arc::new(VariableSpace {
            group_sizes: vec![n],
            first_group: 0,
            slack: 0,
            names,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn grouped_len(&self) -> usize {
        self.group_sizes.iter().sum()
    }

    /// Global index of `T_{group,pos}` with `pos` 1-based and `group`
    /// counted in display numbering (so honoring `first_group`).
    pub fn var(&self, group: usize, pos: usize) -> usize {
        debug_assert!(group >= self.first_group);
        let g = group - self.first_group;
        let offset: usize = self.group_sizes[..g].iter().sum();
        debug_assert!(pos >= 1 && pos <= self.group_sizes[g]);
        offset + pos - 1
    }

    /// Global index of slack variable `S_k`, 1-based.
    pub fn slack_var(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.slack);
        self.grouped_len() + k - 1
    }

    /// Inverse of [`Self::var`] for grouped variables.
    pub fn group_of(&self, idx: usize) -> Option<(usize, usize)> {
        let mut offset = 0;
        for (g, &sz) in self.group_sizes.iter().enumerate() {
            if idx < offset + sz {
                return Some((g + self.first_group, idx - offset + 1));
            }
            offset += sz;
        }
        None
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidVariable(name.to_string()))
    }
}
