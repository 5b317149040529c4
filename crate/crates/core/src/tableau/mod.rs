//! Partitions, Z/2-graded tableaux and straightening.

mod column;
mod filling;
pub mod oracle;
mod partition;
mod straighten;

use std::collections::BTreeMap;

pub use column::{
    all_columns, is_canonical, normalize_column, sort_sign, transposition_sign, wedge_coproduct, wedge_product,
    ColumnElement,
};
pub use filling::{enumerate_standard, Tableau};
pub use partition::Partition;
pub use straighten::{find_violation, straighten, theta, theta_expand, Straightener, ViolationData};

use crate::error::{Error, Result};

/// A tableau entry: `-i` is the odd basis vector `e_i`, `+j` the even basis
/// vector `f_j`.
pub type Entry = i32;

/// Integer combination of tableaux with no zero coefficients.
pub type IntCombination = BTreeMap<Tableau, i64>;

pub(crate) fn add_to(comb: &mut IntCombination, t: Tableau, c: i64) {
    if c == 0 {
        return;
    }
    match comb.entry(t) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

/// Homological degree of every basis label. Odd labels must have odd
/// degree and even labels even degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDegrees {
    odd: Vec<i64>,
    even: Vec<i64>,
}

impl EntryDegrees {
    pub fn new(odd: Vec<i64>, even: Vec<i64>) -> Result<Self> {
        if odd.iter().any(|d| d.rem_euclid(2) != 1) || even.iter().any(|d| d.rem_euclid(2) != 0) {
            return Err(Error::Precondition("basis label degrees have the wrong parity".into()));
        }
        Ok(EntryDegrees { odd, even })
    }

    /// `m` odd labels in degree 1 and `n` even labels in degree 0.
    pub fn uniform(m: usize, n: usize) -> Self {
        EntryDegrees { odd: vec![1; m], even: vec![0; n] }
    }

    pub fn m(&self) -> usize {
        self.odd.len()
    }

    pub fn n(&self) -> usize {
        self.even.len()
    }

    pub fn degree(&self, e: Entry) -> Result<i64> {
        let idx = e.unsigned_abs() as usize;
        let list = if e < 0 { &self.odd } else { &self.even };
        idx.checked_sub(1)
            .and_then(|i| list.get(i))
            .copied()
            .ok_or_else(|| Error::InvalidTableau(format!("entry {e} has no basis vector")))
    }
}
