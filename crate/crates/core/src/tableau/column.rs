//! Columns as elements of the graded exterior algebra `∧F = D(F_odd) ⊗ ∧(F_even)`.
//!
//! A column is a sequence of entries; negative entries are odd basis vectors
//! (divided power factors) and positive entries even basis vectors (exterior
//! factors). Swapping two adjacent entries `x, y` multiplies the element by
//! `-(-1)^{|x||y|}`: odd entries commute with each other, every other pair
//! anticommutes.

use std::collections::BTreeMap;
use std::fmt;

use super::Entry;
use crate::error::{Error, Result};

/// A column in canonical form: entries sorted ascending, so negatives first
/// (repeats allowed) and then strictly increasing positives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColumnElement(Vec<Entry>);

/// Sign picked up when two entries are transposed.
#[inline]
pub fn transposition_sign(x: Entry, y: Entry) -> i64 {
    if x < 0 && y < 0 {
        1
    } else {
        -1
    }
}

pub fn is_canonical(entries: &[Entry]) -> bool {
    entries.iter().all(|&e| e != 0)
        && entries.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && w[0] < 0))
}

impl ColumnElement {
    pub fn new(entries: Vec<Entry>) -> Result<Self> {
        if is_canonical(&entries) {
            Ok(ColumnElement(entries))
        } else {
            Err(Error::Precondition(format!("column {entries:?} is not in canonical form")))
        }
    }

    pub(crate) fn new_unchecked(entries: Vec<Entry>) -> Self {
        debug_assert!(is_canonical(&entries));
        ColumnElement(entries)
    }

    pub fn empty() -> Self {
        ColumnElement(Vec::new())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Entry> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(value, multiplicity)` of every negative entry.
    fn divided_part(&self) -> Vec<(Entry, usize)> {
        let mut out: Vec<(Entry, usize)> = Vec::new();
        for &e in self.0.iter().take_while(|&&e| e < 0) {
            match out.last_mut() {
                Some((v, k)) if *v == e => *k += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    fn exterior_part(&self) -> &[Entry] {
        let start = self.0.iter().position(|&e| e > 0).unwrap_or(self.0.len());
        &self.0[start..]
    }
}

impl fmt::Display for ColumnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Sign of rearranging `seq` into ascending order, or `None` when a positive
/// entry repeats (the element is zero).
pub fn sort_sign(seq: &[Entry]) -> Option<i64> {
    let mut sign = 1i64;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let (x, y) = (seq[i], seq[j]);
            if x == y && x > 0 {
                return None;
            }
            if x > y {
                sign *= transposition_sign(x, y);
            }
        }
    }
    Some(sign)
}

/// Rewrites a column sequence in canonical form. Returns the canonical column
/// and the sign of the reordering, or `None` if a positive entry repeats.
pub fn normalize_column(seq: &[Entry]) -> Option<(ColumnElement, i64)> {
    let sign = sort_sign(seq)?;
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    Some((ColumnElement(sorted), sign))
}

fn binomial(n: usize, k: usize) -> i64 {
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// The product `x · y` in `∧F`: divided powers multiply with binomial
/// coefficients, exterior factors wedge. Returns the coefficient and the
/// canonical column, or `None` when the product vanishes.
pub fn wedge_product(x: &ColumnElement, y: &ColumnElement) -> Option<(i64, ColumnElement)> {
    let mut seq = Vec::with_capacity(x.len() + y.len());
    seq.extend_from_slice(&x.0);
    seq.extend_from_slice(&y.0);
    let (col, sign) = normalize_column(&seq)?;
    let mut coef = sign;
    if x.0.first().is_some_and(|&e| e < 0) && y.0.first().is_some_and(|&e| e < 0) {
        let yd = y.divided_part();
        for (v, a) in x.divided_part() {
            if let Some(&(_, b)) = yd.iter().find(|(w, _)| *w == v) {
                coef *= binomial(a + b, a);
            }
        }
    }
    Some((coef, col))
}

/// The `(left, right)` bidegree component of the coproduct of `x`, as a signed
/// sum of `A ⊗ B`. Divided powers split with unit coefficients, exterior
/// factors over all shuffles; the sign is that of rearranging `A B` back to `x`.
pub fn wedge_coproduct(
    x: &ColumnElement,
    left: usize,
    right: usize,
) -> Result<Vec<(i64, ColumnElement, ColumnElement)>> {
    if left + right != x.len() {
        return Err(Error::Precondition(format!(
            "coproduct split ({left}, {right}) of a column of length {}",
            x.len()
        )));
    }
    let divided = x.divided_part();
    let exterior = x.exterior_part();
    let mut out = BTreeMap::new();
    let mut take = vec![0usize; divided.len()];
    split_divided(&divided, exterior, 0, left, &mut take, &mut out);
    Ok(out.into_iter().map(|((a, b), c)| (c, a, b)).collect())
}

fn split_divided(
    divided: &[(Entry, usize)],
    exterior: &[Entry],
    idx: usize,
    remaining: usize,
    take: &mut Vec<usize>,
    out: &mut BTreeMap<(ColumnElement, ColumnElement), i64>,
) {
    if idx == divided.len() {
        if remaining > exterior.len() {
            return;
        }
        for subset in subsets_of_size(exterior.len(), remaining) {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (&(v, k), &t) in divided.iter().zip(take.iter()) {
                a.extend(std::iter::repeat_n(v, t));
                b.extend(std::iter::repeat_n(v, k - t));
            }
            for (i, &e) in exterior.iter().enumerate() {
                if subset.contains(&i) {
                    a.push(e);
                } else {
                    b.push(e);
                }
            }
            let mut concat = a.clone();
            concat.extend_from_slice(&b);
            let sign = sort_sign(&concat).expect("sub-multisets of a column have no repeated positives");
            *out.entry((ColumnElement(a), ColumnElement(b))).or_insert(0) += sign;
        }
        return;
    }
    let (_, k) = divided[idx];
    for t in 0..=k.min(remaining) {
        take[idx] = t;
        split_divided(divided, exterior, idx + 1, remaining - t, take, out);
    }
    take[idx] = 0;
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All canonical columns of length `len` with entries in `-m..=-1` and `1..=n`,
/// in ascending order.
pub fn all_columns(len: usize, m: usize, n: usize) -> Vec<ColumnElement> {
    fn rec(len: usize, m: Entry, n: Entry, cur: &mut Vec<Entry>, out: &mut Vec<ColumnElement>) {
        if cur.len() == len {
            out.push(ColumnElement(cur.clone()));
            return;
        }
        let start = match cur.last() {
            None => -m,
            Some(&e) if e < 0 => e,
            Some(&e) => e + 1,
        };
        for e in start..=n {
            if e == 0 {
                continue;
            }
            cur.push(e);
            rec(len, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, m as Entry, n as Entry, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[Entry]) -> ColumnElement {
        ColumnElement::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_column(&[2, 1, 3]), Some((col(&[1, 2, 3]), -1)));
        assert_eq!(normalize_column(&[1, 1]), None);
        assert_eq!(normalize_column(&[-2, -1, -1]), Some((col(&[-2, -1, -1]), 1)));
        assert_eq!(normalize_column(&[-1, -2, -1]), Some((col(&[-2, -1, -1]), 1)));
        // mixed pairs anticommute
        assert_eq!(normalize_column(&[1, -1]), Some((col(&[-1, 1]), -1)));
        assert_eq!(normalize_column(&[3, 1, 2, -1]), Some((col(&[-1, 1, 2, 3]), -1)));
    }

    #[test]
    fn canonical_columns_have_sign_one() {
        for c in all_columns(3, 2, 3) {
            assert_eq!(normalize_column(c.entries()), Some((c.clone(), 1)));
        }
    }

    #[test]
    fn products() {
        assert_eq!(wedge_product(&col(&[1]), &col(&[1])), None);
        assert_eq!(wedge_product(&col(&[-1]), &col(&[-1])), Some((2, col(&[-1, -1]))));
        assert_eq!(wedge_product(&col(&[2]), &col(&[1])), Some((-1, col(&[1, 2]))));
        assert_eq!(wedge_product(&col(&[-1, -1]), &col(&[-1])), Some((3, col(&[-1, -1, -1]))));
        assert_eq!(wedge_product(&col(&[-2, -1]), &col(&[-2, -1])), Some((4, col(&[-2, -2, -1, -1]))));
        assert_eq!(wedge_product(&col(&[1]), &ColumnElement::empty()), Some((1, col(&[1]))));
    }

    #[test]
    fn coproducts() {
        let x = col(&[-1, 1, 2]);
        assert_eq!(wedge_coproduct(&x, 3, 0).unwrap(), vec![(1, x.clone(), ColumnElement::empty())]);
        assert_eq!(wedge_coproduct(&x, 0, 3).unwrap(), vec![(1, ColumnElement::empty(), x.clone())]);
        assert_eq!(wedge_coproduct(&col(&[-1, -1]), 1, 1).unwrap(), vec![(1, col(&[-1]), col(&[-1]))]);
        assert_eq!(
            wedge_coproduct(&col(&[1, 2]), 1, 1).unwrap(),
            vec![(1, col(&[1]), col(&[2])), (-1, col(&[2]), col(&[1]))]
        );
        assert!(wedge_coproduct(&x, 1, 1).is_err());
    }

    #[test]
    fn coproduct_of_odd_times_wedge_cube() {
        // ∧^4 -> ∧^3 ⊗ ∧^1 on e1 ⊗ f1∧f2∧f3
        let terms = wedge_coproduct(&col(&[-1, 1, 2, 3]), 3, 1).unwrap();
        assert_eq!(
            terms,
            vec![
                (1, col(&[-1, 1, 2]), col(&[3])),
                (-1, col(&[-1, 1, 3]), col(&[2])),
                (1, col(&[-1, 2, 3]), col(&[1])),
                (-1, col(&[1, 2, 3]), col(&[-1])),
            ]
        );
    }

    #[test]
    fn column_counts() {
        // ∧^2 of a rank-2 even module
        assert_eq!(all_columns(2, 0, 2), vec![col(&[1, 2])]);
        // D_3 of rank 2
        assert_eq!(all_columns(3, 2, 0).len(), 4);
        // Σ_i C(m+i-1, i) C(n, c-i) with m = 2, n = 3, c = 3
        assert_eq!(all_columns(3, 2, 3).len(), 1 + 2 * 3 + 3 * 3 + 4);
    }
}
