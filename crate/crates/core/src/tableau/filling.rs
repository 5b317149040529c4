use std::fmt;

use super::column::{is_canonical, normalize_column};
use super::{Entry, EntryDegrees, Partition};
use crate::error::{Error, Result};

/// A Z/2-graded Young tableau, stored column by column (top to bottom).
///
/// The derived ordering compares the column-major reading words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    columns: Vec<Vec<Entry>>,
}

impl Tableau {
    /// Columns must have weakly decreasing lengths and nonzero entries.
    pub fn from_columns(columns: Vec<Vec<Entry>>) -> Result<Self> {
        if columns.is_empty() || columns[0].is_empty() {
            return Err(Error::InvalidTableau("empty tableau".into()));
        }
        if columns.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidTableau("column lengths must weakly decrease".into()));
        }
        if columns.iter().flatten().any(|&e| e == 0) {
            return Err(Error::InvalidTableau("entry 0 is not a basis label".into()));
        }
        Ok(Tableau { columns })
    }

    pub(crate) fn from_columns_unchecked(columns: Vec<Vec<Entry>>) -> Self {
        Tableau { columns }
    }

    /// Builds a tableau from `(column, row, value)` triples, 1-based, which
    /// must cover every box of `shape` exactly once.
    pub fn from_entries(shape: &Partition, entries: &[(usize, usize, Entry)]) -> Result<Self> {
        let lengths = shape.column_lengths();
        let mut cols: Vec<Vec<Option<Entry>>> = lengths.iter().map(|&c| vec![None; c]).collect();
        for &(i, j, v) in entries {
            let slot = i
                .checked_sub(1)
                .and_then(|i| cols.get_mut(i))
                .and_then(|c| j.checked_sub(1).and_then(|j| c.get_mut(j)))
                .ok_or_else(|| Error::InvalidTableau(format!("box ({i}, {j}) is outside shape {shape}")))?;
            if slot.replace(v).is_some() {
                return Err(Error::InvalidTableau(format!("box ({i}, {j}) is filled twice")));
            }
        }
        let mut columns = Vec::with_capacity(cols.len());
        for (i, c) in cols.into_iter().enumerate() {
            let mut col = Vec::with_capacity(c.len());
            for (j, v) in c.into_iter().enumerate() {
                col.push(v.ok_or_else(|| {
                    Error::InvalidTableau(format!("box ({}, {}) is not filled", i + 1, j + 1))
                })?);
            }
            columns.push(col);
        }
        Tableau::from_columns(columns)
    }

    /// `(column, row, value)` triples, 1-based, in column-major order.
    pub fn entries(&self) -> Vec<(usize, usize, Entry)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().enumerate().map(move |(j, &v)| (i + 1, j + 1, v)))
            .collect()
    }

    pub fn columns(&self) -> &[Vec<Entry>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[Entry] {
        &self.columns[i]
    }

    pub fn column_lengths(&self) -> Vec<usize> {
        self.columns.iter().map(Vec::len).collect()
    }

    pub fn shape(&self) -> Partition {
        Partition::from_column_lengths(&self.column_lengths()).expect("column lengths weakly decrease")
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Entry in column `i`, row `j` (0-based), if that box exists.
    pub fn get(&self, i: usize, j: usize) -> Option<Entry> {
        self.columns.get(i).and_then(|c| c.get(j)).copied()
    }

    /// Column-major reading word.
    pub fn reading_word(&self) -> Vec<Entry> {
        self.columns.iter().flatten().copied().collect()
    }

    pub fn with_column(&self, i: usize, column: Vec<Entry>) -> Self {
        let mut columns = self.columns.clone();
        columns[i] = column;
        Tableau { columns }
    }

    pub fn check_range(&self, m: usize, n: usize) -> Result<()> {
        for &e in self.columns.iter().flatten() {
            let ok = if e < 0 { e.unsigned_abs() as usize <= m } else { e as usize <= n };
            if !ok {
                return Err(Error::InvalidTableau(format!(
                    "entry {e} is out of range for m = {m}, n = {n}"
                )));
            }
        }
        Ok(())
    }

    /// Condition (A): every column is in canonical form.
    pub fn columns_canonical(&self) -> bool {
        self.columns.iter().all(|c| is_canonical(c))
    }

    /// Condition (B): rows increase left to right, with ties allowed only
    /// between positive entries.
    pub fn rows_standard(&self) -> bool {
        self.columns.windows(2).all(|w| {
            w[1].iter().zip(&w[0]).all(|(&right, &left)| left < right || (left == right && left > 0))
        })
    }

    pub fn is_standard(&self) -> bool {
        self.columns_canonical() && self.rows_standard()
    }

    /// Puts every column in canonical form. Returns the product of the
    /// reordering signs, or `None` if some column has a repeated positive
    /// entry.
    pub fn normalize(&self) -> Option<(Tableau, i64)> {
        let mut sign = 1;
        let mut columns = Vec::with_capacity(self.columns.len());
        for c in &self.columns {
            let (canon, s) = normalize_column(c)?;
            sign *= s;
            columns.push(canon.into_entries());
        }
        Some((Tableau { columns }, sign))
    }

    /// Total homological degree: the sum of the degrees of all entries.
    pub fn degree(&self, degrees: &EntryDegrees) -> Result<i64> {
        self.columns.iter().flatten().map(|&e| degrees.degree(e)).sum()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.columns[0].len();
        for j in 0..rows {
            let row: Vec<String> =
                self.columns.iter().filter_map(|c| c.get(j)).map(|e| format!("{e:>3}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// All standard tableaux of `shape` with entries labelled by `degrees`,
/// optionally only those of total degree `degree`. Sorted by total degree,
/// then by column-major reading word.
pub fn enumerate_standard(shape: &Partition, degrees: &EntryDegrees, degree: Option<i64>) -> Vec<Tableau> {
    let lengths = shape.column_lengths();
    let m = degrees.m() as Entry;
    let n = degrees.n() as Entry;
    let mut out = Vec::new();
    let mut columns: Vec<Vec<Entry>> = lengths.iter().map(|&c| Vec::with_capacity(c)).collect();
    fill(&lengths, 0, m, n, &mut columns, &mut out);
    let mut keyed: Vec<(i64, Tableau)> = out
        .into_iter()
        .map(|t| (t.degree(degrees).expect("entries in range"), t))
        .filter(|(d, _)| degree.is_none_or(|want| *d == want))
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, t)| t).collect()
}

fn fill(lengths: &[usize], col: usize, m: Entry, n: Entry, columns: &mut Vec<Vec<Entry>>, out: &mut Vec<Tableau>) {
    if col == lengths.len() {
        out.push(Tableau { columns: columns.clone() });
        return;
    }
    let row = columns[col].len();
    if row == lengths[col] {
        fill(lengths, col + 1, m, n, columns, out);
        return;
    }
    let above = columns[col].last().copied();
    let left = if col > 0 { Some(columns[col - 1][row]) } else { None };
    for e in -m..=n {
        if e == 0 {
            continue;
        }
        if let Some(a) = above {
            if !(a < e || (a == e && e < 0)) {
                continue;
            }
        }
        if let Some(l) = left {
            if !(l < e || (l == e && e > 0)) {
                continue;
            }
        }
        columns[col].push(e);
        fill(lengths, col, m, n, columns, out);
        columns[col].pop();
    }
}
