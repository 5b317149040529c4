//! The straightening algorithm.
//!
//! A tableau with canonical columns that violates the row condition at the
//! topmost row `w`, leftmost column pair `(a, a+1)`, is rewritten with the
//! relation `Θ(a, u, v)` for `u = w - 1` and `v = c_{a+1} - w'`. The relation
//! image `L` contains the tableau with coefficient 1 and every other term is
//! strictly smaller, so recursing on `T' - L` terminates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::column::{normalize_column, wedge_coproduct, wedge_product, ColumnElement};
use super::{add_to, IntCombination, Tableau};
use crate::error::{Error, Result};

/// Where the row condition first fails and the pieces of the relation used
/// to rewrite it. Row and column indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationData {
    /// `w`: the topmost row with a violation.
    pub row: usize,
    /// `a`: the leftmost column whose box in row `w` violates against column `a + 1`.
    pub column: usize,
    /// `w'`: the number of leading entries of column `a + 1` that join `V_2`.
    pub split: usize,
    pub u: usize,
    pub v: usize,
    /// First `u` entries of column `a`.
    pub v1: ColumnElement,
    /// Canonical form of the last `c_a - u` entries of column `a` followed by
    /// the first `w'` entries of column `a + 1`.
    pub v2: ColumnElement,
    /// Sign of the reordering that brought `V_2` into canonical form.
    pub v2_sign: i64,
    /// Last `v` entries of column `a + 1`.
    pub v3: ColumnElement,
}

/// Locates the first violation of the row condition. The tableau's columns
/// must already be canonical.
pub fn find_violation(t: &Tableau) -> Result<Option<ViolationData>> {
    if !t.columns_canonical() {
        return Err(Error::Precondition("find_violation needs canonical columns".into()));
    }
    let lengths = t.column_lengths();
    let rows = lengths[0];
    for w in 0..rows {
        for a in 0..lengths.len().saturating_sub(1) {
            if lengths[a + 1] <= w {
                break;
            }
            let (left, right) = (t.columns()[a][w], t.columns()[a + 1][w]);
            if left > right || (left == right && left < 0) {
                return Ok(Some(violation_data(t, w, a)));
            }
        }
    }
    Ok(None)
}

fn violation_data(t: &Tableau, w: usize, a: usize) -> ViolationData {
    let col_a = t.column(a);
    let col_b = t.column(a + 1);
    let pivot = col_b[w];
    let split = (0..col_b.len() - 1).find(|&k| pivot < col_b[k + 1]).map_or(col_b.len(), |k| k + 1);
    let u = w;
    let v = col_b.len() - split;
    let mut seq = col_a[u..].to_vec();
    seq.extend_from_slice(&col_b[..split]);
    let (v2, v2_sign) = normalize_column(&seq).expect("the rewritten block never repeats a positive entry");
    ViolationData {
        row: w + 1,
        column: a + 1,
        split,
        u,
        v,
        v1: ColumnElement::new_unchecked(col_a[..u].to_vec()),
        v2,
        v2_sign,
        v3: ColumnElement::new_unchecked(col_b[split..].to_vec()),
    }
}

/// `Θ(a, u, v)` applied to `V_1 ⊗ V_2 ⊗ V_3`: split `V_2` by the coproduct
/// into bidegree `(left, right)` and multiply the pieces onto `V_1` and `V_3`.
/// Returns a signed sum of column pairs.
pub fn theta(
    v1: &ColumnElement,
    v2: &ColumnElement,
    v3: &ColumnElement,
    left: usize,
    right: usize,
) -> Result<Vec<(i64, ColumnElement, ColumnElement)>> {
    let (u, v) = (v1.len(), v3.len());
    if u + v >= right + v {
        return Err(Error::Precondition(format!(
            "Θ needs u + v < c_(a+1), got u = {u}, v = {v}, c_(a+1) = {}",
            right + v
        )));
    }
    let mut out: BTreeMap<(ColumnElement, ColumnElement), i64> = BTreeMap::new();
    for (c, a, b) in wedge_coproduct(v2, left, right)? {
        let Some((c1, x)) = wedge_product(v1, &a) else { continue };
        let Some((c2, y)) = wedge_product(&b, v3) else { continue };
        *out.entry((x, y)).or_insert(0) += c * c1 * c2;
    }
    Ok(out.into_iter().filter(|(_, c)| *c != 0).map(|((x, y), c)| (c, x, y)).collect())
}

/// The relation image `L` for the violation `vd` of `t`. It contains `t`
/// with coefficient 1.
pub fn theta_expand(t: &Tableau, vd: &ViolationData) -> Result<IntCombination> {
    let a = vd.column - 1;
    let left = t.column(a).len() - vd.u;
    let terms = theta(&vd.v1, &vd.v2, &vd.v3, left, vd.split)?;
    let mut l = IntCombination::new();
    for (c, x, y) in terms {
        let mut columns = t.columns().to_vec();
        columns[a] = x.into_entries();
        columns[a + 1] = y.into_entries();
        add_to(&mut l, Tableau::from_columns_unchecked(columns), vd.v2_sign * c);
    }
    Ok(l)
}

/// Straightening with a shared memo table. Safe to use from several threads.
#[derive(Default)]
pub struct Straightener {
    cache: Mutex<HashMap<Tableau, Arc<IntCombination>>>,
}

impl Straightener {
    pub fn new() -> Self {
        Self::default()
    }

    /// Writes `t` as an integer combination of standard tableaux. Returns the
    /// empty combination when `t` is zero.
    pub fn straighten(&self, t: &Tableau) -> IntCombination {
        let Some((canon, sign)) = t.normalize() else {
            return IntCombination::new();
        };
        let out = self.straighten_canonical(&canon);
        if sign == 1 {
            (*out).clone()
        } else {
            out.iter().map(|(t, c)| (t.clone(), -c)).collect()
        }
    }

    /// Same as [`Straightener::straighten`] for a tableau whose columns are
    /// already canonical; the result is shared with the memo table.
    pub fn straighten_canonical(&self, t: &Tableau) -> Arc<IntCombination> {
        if let Some(hit) = self.cache.lock().unwrap().get(t) {
            return hit.clone();
        }
        let result = match find_violation(t).expect("columns are canonical") {
            None => Arc::new(IntCombination::from([(t.clone(), 1)])),
            Some(vd) => {
                let l = theta_expand(t, &vd).expect("violation data is admissible");
                debug_assert_eq!(l.get(t), Some(&1));
                let mut acc = IntCombination::new();
                for (s, c) in &l {
                    if s == t {
                        continue;
                    }
                    for (std, k) in self.straighten_canonical(s).iter() {
                        add_to(&mut acc, std.clone(), -c * k);
                    }
                }
                Arc::new(acc)
            }
        };
        self.cache.lock().unwrap().insert(t.clone(), result.clone());
        result
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

/// Straightens `t`, checking entries against `m` odd and `n` even labels.
pub fn straighten(t: &Tableau, m: usize, n: usize) -> Result<IntCombination> {
    t.check_range(m, n)?;
    Ok(Straightener::new().straighten(t))
}
