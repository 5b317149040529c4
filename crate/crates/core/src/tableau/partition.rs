use std::fmt;

use crate::error::{Error, Result};

/// A partition `λ = (λ_1 >= λ_2 >= ... >= λ_s > 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// The partition whose column lengths are `lengths` (weakly decreasing).
    pub fn from_column_lengths(lengths: &[usize]) -> Result<Self> {
        Partition::new(lengths.to_vec()).map(|p| p.conjugate())
    }

    /// `(r)`: a single row.
    pub fn row(r: usize) -> Result<Self> {
        Partition::new(vec![r])
    }

    /// `(1, ..., 1)`: a single column.
    pub fn column(r: usize) -> Result<Self> {
        Partition::new(vec![1; r])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `r = Σ λ_i`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows `s`.
    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    /// Number of columns `t = λ_1`.
    pub fn num_columns(&self) -> usize {
        self.parts[0]
    }

    /// `c_i = #{j : λ_j >= i}` for `i = 1..=t`.
    pub fn column_lengths(&self) -> Vec<usize> {
        (1..=self.num_columns()).map(|i| self.parts.iter().filter(|&&p| p >= i).count()).collect()
    }

    pub fn conjugate(&self) -> Self {
        Partition { parts: self.column_lengths() }
    }

    /// All partitions of `r` in reverse lexicographic order.
    pub fn all(r: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rem.min(max)).rev() {
                cur.push(k);
                rec(rem - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if r > 0 {
            rec(r, r, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses `3,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}
