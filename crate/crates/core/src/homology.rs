//! Truncated complexes and their (co)homology dimensions.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::ainfty::Category;
use crate::hochschild::{cochain_slice, connes_slice};
use crate::linalg::{rank, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Coker(1 - T)`, differential of degree +1.
    Chain,
    /// T-invariant functionals, differential of degree -1.
    Cochain,
}

/// A finite piece of a complex. `cells[n]` lists the basis in degree `n` as
/// `(weight, label)`, ordered by weight. On the chain side
/// `differentials[n]` maps degree `n` to `n + 1`; on the cochain side it
/// maps degree `n` to `n - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplexSlice {
    pub side: Side,
    pub max_weight: usize,
    pub cells: BTreeMap<i64, Vec<(usize, String)>>,
    pub differentials: BTreeMap<i64, Matrix>,
}

impl ChainComplexSlice {
    pub fn dim(&self, degree: i64) -> usize {
        self.cells.get(&degree).map_or(0, Vec::len)
    }

    /// The basis grouped by `(weight, degree)`.
    pub fn weight_cells(&self) -> BTreeMap<(usize, i64), Vec<String>> {
        let mut out: BTreeMap<(usize, i64), Vec<String>> = BTreeMap::new();
        for (n, basis) in &self.cells {
            for (w, label) in basis {
                out.entry((*w, *n)).or_default().push(label.clone());
            }
        }
        out
    }

    fn step(&self) -> i64 {
        match self.side {
            Side::Chain => 1,
            Side::Cochain => -1,
        }
    }

    /// Degrees `n` where both `d_n` and the following map exist and their
    /// composite is nonzero.
    pub fn square_failures(&self) -> Vec<i64> {
        self.differentials
            .iter()
            .filter_map(|(n, d)| {
                let next = self.differentials.get(&(n + self.step()))?;
                (!next.mul(d).is_zero()).then_some(*n)
            })
            .collect()
    }

    pub fn rank_at(&self, degree: i64) -> Option<usize> {
        self.differentials.get(&degree).map(rank)
    }

    /// `dim ker d_n - dim im d_{n-1}`, when both maps are in the slice.
    pub fn homology_dim(&self, degree: i64) -> Option<usize> {
        let out = self.rank_at(degree)?;
        let incoming = self.rank_at(degree - self.step())?;
        Some(self.dim(degree) - out - incoming)
    }
}

/// Truncated cyclic homology and cohomology dimensions by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcTable {
    pub max_weight: usize,
    /// degree -> (dim HC_n, dim HC^n)
    pub rows: BTreeMap<i64, (usize, usize)>,
}

impl HcTable {
    pub fn mismatches(&self) -> Vec<i64> {
        self.rows
            .iter()
            .filter(|(_, (a, b))| a != b)
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(n, (h, c))| json!({ "degree": n, "hc_chain": h, "hc_cochain": c }))
            .collect();
        json!({
            "label": format!("truncated HC (weight <= {})", self.max_weight),
            "max_weight": self.max_weight,
            "rows": rows,
            "agree": self.mismatches().is_empty(),
        })
    }
}

pub fn hc_dims(cat: &Category, max_weight: usize, degrees: RangeInclusive<i64>) -> HcTable {
    let mut rows = BTreeMap::new();
    if !cat.cyclic_words(max_weight).is_empty() && degrees.start() <= degrees.end() {
        let chain = connes_slice(cat, degrees.clone(), max_weight);
        let cochain = cochain_slice(cat, degrees.clone(), max_weight);
        for n in degrees {
            let h = chain.homology_dim(n).expect("slice covers the range");
            let c = cochain.homology_dim(n).expect("slice covers the range");
            rows.insert(n, (h, c));
        }
    }
    HcTable { max_weight, rows }
}
