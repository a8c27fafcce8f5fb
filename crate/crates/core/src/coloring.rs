//! Vertex colorings: single-color assignments and k-fold (set) colorings.
//!
//! Colors are 1-based integers in `1..=num_colors`.  Properness is always
//! checked on demand, never assumed from construction.

use crate::graph::Graph;
use crate::label::KSet;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Total assignment of one color per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub num_colors: u32,
    /// `assign[v]` is the color of vertex `v`, in `1..=num_colors`.
    pub assign: Vec<u32>,
}

impl Coloring {
    pub fn new(num_colors: u32, assign: Vec<u32>) -> Result<Coloring> {
        if let Some(&c) = assign.iter().find(|&&c| c == 0 || c > num_colors) {
            return Err(Error::invalid(format!(
                "color {c} outside palette 1..={num_colors}"
            )));
        }
        Ok(Coloring { num_colors, assign })
    }

    pub fn color(&self, v: usize) -> u32 {
        self.assign[v]
    }

    /// Number of vertices per color, indexed by color − 1.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_colors as usize];
        for &c in &self.assign {
            sizes[(c - 1) as usize] += 1;
        }
        sizes
    }

    /// No edge joins two vertices of the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        debug_assert_eq!(self.assign.len(), g.n());
        g.edges().iter().all(|&(u, v)| self.assign[u] != self.assign[v])
    }
}

/// Total assignment of a k-subset of `{1..n}` per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KFoldColoring {
    pub k: u32,
    pub n: u32,
    pub assign: Vec<KSet>,
}

impl KFoldColoring {
    pub fn new(k: u32, n: u32, assign: Vec<KSet>) -> Result<KFoldColoring> {
        for set in &assign {
            if set.k() != k as usize {
                return Err(Error::invalid(format!(
                    "expected {k}-element color sets, got {}",
                    set.k()
                )));
            }
            if set.elems.windows(2).any(|w| w[0] == w[1])
                || set.elems.iter().any(|&e| e == 0 || e > n)
            {
                return Err(Error::invalid(format!(
                    "color set {set} is not a subset of 1..={n}"
                )));
            }
        }
        Ok(KFoldColoring { k, n, assign })
    }

    /// Adjacent vertices receive disjoint color sets.
    pub fn is_proper(&self, g: &Graph) -> bool {
        debug_assert_eq!(self.assign.len(), g.n());
        g.edges()
            .iter()
            .all(|&(u, v)| self.assign[u].is_disjoint(&self.assign[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn proper_and_improper() {
        let g = cycle(4).unwrap();
        let good = Coloring::new(2, vec![1, 2, 1, 2]).unwrap();
        assert!(good.is_proper(&g));
        assert_eq!(good.class_sizes(), vec![2, 2]);
        let bad = Coloring::new(2, vec![1, 2, 2, 2]).unwrap();
        assert!(!bad.is_proper(&g));
        assert!(Coloring::new(2, vec![1, 3, 1, 2]).is_err());
        assert!(Coloring::new(2, vec![0, 1, 1, 2]).is_err());
    }

    #[test]
    fn kfold_validation() {
        let g = cycle(5).unwrap();
        // The classic 2-fold 5-coloring of C_5: {i, i+1 mod 5}+1 offsets.
        let assign: Vec<KSet> = (0..5u32)
            .map(|i| KSet::new(5, vec![2 * i % 5 + 1, (2 * i + 1) % 5 + 1]))
            .collect();
        let c = KFoldColoring::new(2, 5, assign).unwrap();
        assert!(c.is_proper(&g));

        assert!(KFoldColoring::new(2, 5, vec![KSet::new(5, vec![1])]).is_err());
        assert!(KFoldColoring::new(2, 5, vec![KSet::new(5, vec![1, 6])]).is_err());
        assert!(KFoldColoring::new(2, 5, vec![KSet::new(5, vec![3, 3])]).is_err());
    }
}
