//! Typed vertex labels for the graph families the crate constructs.
//!
//! Graphs carry plain `usize` vertex indices; labels are an optional sidecar
//! giving each index a structured identity (a coordinate sequence, a chain of
//! sets, a k-subset, ...).  Serialized forms are stable and human-readable.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A coordinate sequence `(x_1, ..., x_t)` with entries in `0..=s`,
/// exactly one coordinate equal to 0 and at least one equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WideVertex {
    pub s: u32,
    pub x: Vec<u32>,
}

impl WideVertex {
    pub fn t(&self) -> usize {
        self.x.len()
    }

    /// Position (1-based) of the unique zero coordinate.
    pub fn zero_position(&self) -> u32 {
        let p = self.x.iter().position(|&v| v == 0);
        debug_assert!(p.is_some(), "label has no zero coordinate");
        p.unwrap() as u32 + 1
    }

    /// Validity check for the defining constraints.
    pub fn is_valid(&self) -> bool {
        let zeros = self.x.iter().filter(|&&v| v == 0).count();
        let ones = self.x.iter().filter(|&&v| v == 1).count();
        zeros == 1 && ones >= 1 && self.x.iter().all(|&v| v <= self.s)
    }
}

impl fmt::Display for WideVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A chain `(A_0, ..., A_{l})` of subsets of `{1..t}`, stored as bitmasks
/// (bit `j-1` set means element `j` is present).  Ground-set sizes are capped
/// at 24 so masks fit comfortably in a `u32`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaVertex {
    pub t: u32,
    pub sets: Vec<u32>,
}

/// Largest ground-set size supported for set-chain vertices.
pub const MAX_GROUND_SET: u32 = 24;

impl OmegaVertex {
    pub fn levels(&self) -> usize {
        self.sets.len()
    }

    /// Elements of level `i` as sorted 1-based values.
    pub fn set_elems(&self, i: usize) -> Vec<u32> {
        mask_elems(self.sets[i])
    }
}

impl fmt::Display for OmegaVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &m) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, e) in mask_elems(m).into_iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// Sorted 1-based elements of a bitmask.
pub fn mask_elems(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Bitmask of a collection of 1-based elements.
pub fn elems_mask(elems: &[u32]) -> u32 {
    elems.iter().fold(0, |m, &e| {
        debug_assert!((1..=32).contains(&e));
        m | 1 << (e - 1)
    })
}

/// A k-element subset of `{1..n}`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KSet {
    pub n: u32,
    pub elems: Vec<u32>,
}

impl KSet {
    pub fn new(n: u32, mut elems: Vec<u32>) -> Self {
        elems.sort_unstable();
        KSet { n, elems }
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn is_disjoint(&self, other: &KSet) -> bool {
        self.elems.iter().all(|e| !other.elems.contains(e))
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Vertex of a layered cone construction: either a (base vertex, level) pair
/// or the apex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MycielskiVertex {
    Level { base: usize, level: u32 },
    Apex,
}

impl fmt::Display for MycielskiVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MycielskiVertex::Level { base, level } => write!(f, "({base},{level})"),
            MycielskiVertex::Apex => write!(f, "z"),
        }
    }
}

/// Any structured vertex identity this crate produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum VertexLabel {
    Wide(WideVertex),
    Omega(OmegaVertex),
    KSet(KSet),
    Mycielski(MycielskiVertex),
    Plain(usize),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Wide(v) => v.fmt(f),
            VertexLabel::Omega(v) => v.fmt(f),
            VertexLabel::KSet(v) => v.fmt(f),
            VertexLabel::Mycielski(v) => v.fmt(f),
            VertexLabel::Plain(i) => write!(f, "{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_vertex_validity() {
        let v = WideVertex { s: 2, x: vec![0, 1, 2] };
        assert!(v.is_valid());
        assert_eq!(v.zero_position(), 1);
        assert_eq!(v.to_string(), "(0,1,2)");

        // Two zeros: invalid.
        assert!(!WideVertex { s: 2, x: vec![0, 0, 1] }.is_valid());
        // No one: invalid.
        assert!(!WideVertex { s: 2, x: vec![0, 2, 2] }.is_valid());
        // Out of range: invalid.
        assert!(!WideVertex { s: 2, x: vec![0, 1, 3] }.is_valid());
    }

    #[test]
    fn mask_round_trip() {
        let elems = vec![1, 3, 7];
        assert_eq!(mask_elems(elems_mask(&elems)), elems);
        assert_eq!(elems_mask(&[]), 0);
    }

    #[test]
    fn omega_display() {
        let v = OmegaVertex { t: 3, sets: vec![0b010, 0b101] };
        assert_eq!(v.to_string(), "({2},{1,3})");
        assert_eq!(v.set_elems(1), vec![1, 3]);
    }

    #[test]
    fn kset_disjoint() {
        let a = KSet::new(5, vec![3, 1]);
        let b = KSet::new(5, vec![2, 4]);
        assert_eq!(a.elems, vec![1, 3]);
        assert!(a.is_disjoint(&b));
        assert!(!a.is_disjoint(&KSet::new(5, vec![3, 5])));
    }

    #[test]
    fn label_serde_round_trip() {
        let labels = vec![
            VertexLabel::Wide(WideVertex { s: 2, x: vec![0, 1] }),
            VertexLabel::Omega(OmegaVertex { t: 2, sets: vec![1, 2] }),
            VertexLabel::KSet(KSet::new(4, vec![1, 2])),
            VertexLabel::Mycielski(MycielskiVertex::Apex),
            VertexLabel::Plain(7),
        ];
        let s = serde_json::to_string(&labels).unwrap();
        let back: Vec<VertexLabel> = serde_json::from_str(&s).unwrap();
        assert_eq!(labels, back);
    }
}
