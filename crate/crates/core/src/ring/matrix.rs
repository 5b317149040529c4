use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::extension::ExtensionField;
use super::field::{CoefficientField, Scalar};
use super::poly::{same_ring, Polynomial, Ring};
use crate::error::{Error, Result};

/// Default number of random specializations for [`PolyMatrix::generic_rank`].
pub const DEFAULT_TRIALS: usize = 3;
/// Default seed for every randomized rank computation.
pub const DEFAULT_SEED: u64 = 0;
/// Random specialization coordinates are drawn from `1..=SPECIALIZATION_RANGE`.
pub const SPECIALIZATION_RANGE: u64 = 1 << 20;

/// A dense row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed only when there are no rows.
    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let c = rows.first().map_or(cols, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Self::new(ring, n, c, rows.into_iter().flatten().collect())
    }

    /// Parses a list of rows of polynomial strings.
    pub fn parse_rows<S: AsRef<str>>(ring: &Arc<Ring>, rows: &[Vec<S>], cols: usize) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(ring, s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, parsed, cols)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial) {
        assert!(same_ring(value.ring(), &self.ring), "ring mismatch");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.entry_mut(i, j).add_assign_ref(&prod);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The scalar matrix obtained by evaluating every entry at `point`.
    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::PointLength { expected: self.ring.num_vars(), found: point.len() });
        }
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(point)).collect())
            .collect()
    }

    pub fn rank_at_point(&self, point: &[Scalar]) -> Result<usize> {
        let m = self.eval(point)?;
        Ok(scalar_rank(self.ring.field(), m))
    }

    /// Rank over the fraction field, estimated as the maximum rank over
    /// `trials` random specializations. Over `F_p` with `p` below
    /// [`SPECIALIZATION_RANGE`] the points are taken in `F_{p^k}` with
    /// `p^k >= SPECIALIZATION_RANGE`. A lower rank than the true one is
    /// returned only when every trial lands on the zero set of a nonzero
    /// minor.
    pub fn generic_rank(&self, trials: usize, seed: u64) -> Result<usize> {
        if trials == 0 {
            return Err(Error::Precondition("generic rank needs at least one trial".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        let cap = self.rows.min(self.cols);
        // a small prime field has too few points, so specialize in an extension
        let extension = match self.ring.field() {
            CoefficientField::PrimeField(p) if p < SPECIALIZATION_RANGE => {
                Some(ExtensionField::with_min_order(p, SPECIALIZATION_RANGE))
            }
            _ => None,
        };
        for _ in 0..trials {
            let rank = match &extension {
                Some(ext) => {
                    let point = ext.random_point(&mut rng, self.ring.num_vars());
                    let m = (0..self.rows)
                        .map(|i| self.row(i).iter().map(|f| ext.eval(f, &point)).collect())
                        .collect();
                    ext.rank(m)
                }
                None => self.rank_at_point(&random_point(&mut rng, self.ring.num_vars()))?,
            };
            best = best.max(rank);
            if best == cap {
                break;
            }
        }
        Ok(best)
    }

    /// Exact rank over the fraction field by fraction-free (Bareiss)
    /// elimination on polynomial entries. Refuses matrices with either
    /// dimension above `max_dim`, since entry growth is exponential in the
    /// worst case.
    pub fn rank_fraction_free(&self, max_dim: usize) -> Result<usize> {
        if self.rows > max_dim || self.cols > max_dim {
            return Err(Error::SizeGuard(format!(
                "{}x{} matrix exceeds the fraction-free limit {max_dim}",
                self.rows, self.cols
            )));
        }
        let mut m: Vec<Vec<Polynomial>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Polynomial::one(&self.ring);
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let (top, rest) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = pivot_row[col].clone();
            for row in rest {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(pivot_row).skip(col + 1) {
                    let num = &(&pivot * &*x) - &(&factor * y);
                    *x = num.div_exact(&prev)?.ok_or_else(|| {
                        Error::Precondition("inexact Bareiss division".into())
                    })?;
                }
                row[col] = Polynomial::zero(&self.ring);
            }
            prev = pivot;
            rank += 1;
        }
        Ok(rank)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=SPECIALIZATION_RANGE))))
        .collect()
}

/// Rank of a scalar matrix by Gaussian elimination over `field`.
pub fn scalar_rank(field: CoefficientField, mut m: Vec<Vec<Scalar>>) -> usize {
    if let CoefficientField::PrimeField(p) = field {
        let rows = m
            .iter()
            .map(|r| r.iter().map(|x| x.numer().to_u64().unwrap()).collect())
            .collect();
        return rank_mod_p(rows, p);
    }
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        let pivot_row: Vec<Scalar> = m[rank].iter().map(|x| x * &inv).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let pm = p as u128;
    let inv = |a: u64| -> u64 {
        let (mut acc, mut b, mut e) = (1u128, a as u128, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % pm;
            }
            b = b * b % pm;
            e >>= 1;
        }
        acc as u64
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let s = inv(m[rank][col]);
        for x in &mut m[rank][col..] {
            *x = (*x as u128 * s as u128 % pm) as u64;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let sub = f as u128 * y as u128 % pm;
                *x = ((*x as u128 + pm - sub) % pm) as u64;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
