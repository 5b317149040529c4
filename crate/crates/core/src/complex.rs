//! Bounded complexes of finitely generated free modules.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{PolyMatrix, Polynomial, Ring, Scalar};
use crate::tableau::{Entry, EntryDegrees};

/// `F_min <- F_{min+1} <- ... <- F_max`, stored as term ranks and the
/// differentials between consecutive terms.
///
/// `differentials[k]` maps the term of degree `min_degree + k + 1` to the term
/// of degree `min_degree + k`, so it should have shape
/// `ranks[k] x ranks[k + 1]`. Shapes and `d∘d = 0` are checked by
/// [`FreeComplex::validate`], not by the constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<Ring>,
    min_degree: i64,
    ranks: Vec<usize>,
    differentials: Vec<PolyMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The differential out of `degree` has the wrong shape.
    Shape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    /// `d_degree ∘ d_{degree+1}` is nonzero.
    NonZeroComposite { degree: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { degree, expected, found } => write!(
                f,
                "differential d{degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::NonZeroComposite { degree } => {
                write!(f, "d{degree} * d{} is nonzero", degree + 1)
            }
        }
    }
}

impl FreeComplex {
    pub fn new(
        ring: &Arc<Ring>,
        min_degree: i64,
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least one term".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        if differentials.iter().any(|d| **d.ring() != **ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeComplex { ring: ring.clone(), min_degree, ranks, differentials })
    }

    /// Free module of rank `rank` in a single degree.
    pub fn module(ring: &Arc<Ring>, degree: i64, rank: usize) -> Self {
        FreeComplex { ring: ring.clone(), min_degree: degree, ranks: vec![rank], differentials: vec![] }
    }

    /// The two-term complex `R^rows <- R^cols` given by `matrix`, in degrees 0 and 1.
    pub fn from_matrix(matrix: PolyMatrix) -> Self {
        FreeComplex {
            ring: matrix.ring().clone(),
            min_degree: 0,
            ranks: vec![matrix.rows(), matrix.cols()],
            differentials: vec![matrix],
        }
    }

    /// The generic `rows x cols` matrix over `field[x_{i,j}]`, as a complex in
    /// degrees 0 and 1. Variables are named `x{i}{j}` and ordered column by
    /// column (`x11, x21, x12, ...`).
    pub fn generic_matrix(field: crate::ring::CoefficientField, rows: usize, cols: usize) -> Self {
        let names: Vec<String> =
            (0..cols).flat_map(|j| (0..rows).map(move |i| format!("x{}{}", i + 1, j + 1))).collect();
        let ring = Ring::new(field, names).expect("generated names are valid");
        let mut m = PolyMatrix::zeros(&ring, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, Polynomial::variable(&ring, j * rows + i));
            }
        }
        Self::from_matrix(m)
    }

    /// The Koszul complex on `elements`, in degrees `0..=len`.
    ///
    /// The basis of the degree-k term is the k-subsets of `0..len` in
    /// lexicographic order, and `d(e_S) = Σ_j (-1)^j x_{s_j} e_{S \ s_j}`.
    /// For two elements this gives `d1 = (x y)` and `d2 = (-y, x)^T`.
    pub fn koszul(elements: &[Polynomial]) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidComplex("Koszul complex on an empty list".into()))?;
        let ring = first.ring().clone();
        if elements.iter().any(|p| **p.ring() != *ring) {
            return Err(Error::RingMismatch);
        }
        let n = elements.len();
        let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
        let mut differentials = Vec::with_capacity(n);
        for k in 1..=n {
            let src = &subsets[k];
            let tgt = &subsets[k - 1];
            let mut d = PolyMatrix::zeros(&ring, tgt.len(), src.len());
            for (col, s) in src.iter().enumerate() {
                for (j, &elt) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(j);
                    let row = tgt.iter().position(|t| *t == rest).unwrap();
                    let entry = if j % 2 == 0 { elements[elt].clone() } else { -&elements[elt] };
                    d.set(row, col, entry);
                }
            }
            differentials.push(d);
        }
        let ranks = subsets.iter().map(Vec::len).collect();
        Self::new(&ring, 0, ranks, differentials)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Rank of the term in `degree` (zero outside the stored range).
    pub fn rank(&self, degree: i64) -> usize {
        if degree < self.min_degree || degree > self.max_degree() {
            0
        } else {
            self.ranks[(degree - self.min_degree) as usize]
        }
    }

    /// The differential `F_degree -> F_{degree-1}`, if both terms are stored.
    pub fn differential(&self, degree: i64) -> Option<&PolyMatrix> {
        if degree <= self.min_degree || degree > self.max_degree() {
            None
        } else {
            Some(&self.differentials[(degree - self.min_degree - 1) as usize])
        }
    }

    /// Lists every shape mismatch and every nonzero composite `d_k ∘ d_{k+1}`.
    /// An empty list means the complex is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (k, d) in self.differentials.iter().enumerate() {
            let expected = (self.ranks[k], self.ranks[k + 1]);
            if d.shape() != expected {
                out.push(Violation::Shape {
                    degree: self.min_degree + k as i64 + 1,
                    expected,
                    found: d.shape(),
                });
            }
        }
        for k in 1..self.differentials.len() {
            let (lo, hi) = (&self.differentials[k - 1], &self.differentials[k]);
            if lo.cols() != hi.rows() {
                continue;
            }
            if !lo.mat_mul(hi).expect("shapes checked").is_zero() {
                out.push(Violation::NonZeroComposite { degree: self.min_degree + k as i64 });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Odd/even labelling of the basis.
    pub fn parity_split(&self) -> ParityBasis {
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for (k, &r) in self.ranks.iter().enumerate() {
            let degree = self.min_degree + k as i64;
            let target = if degree.rem_euclid(2) == 1 { &mut odd } else { &mut even };
            target.extend((0..r).map(|i| (degree, i)));
        }
        ParityBasis { odd, even }
    }

    /// Homology dimensions of the complex of vector spaces obtained by
    /// evaluating every differential at `point`, one entry per degree.
    pub fn homology_ranks_at_point(&self, point: &[Scalar]) -> Result<Vec<usize>> {
        let mut image_ranks = Vec::with_capacity(self.differentials.len());
        for d in &self.differentials {
            image_ranks.push(d.rank_at_point(point)?);
        }
        if self.differentials.is_empty() && point.len() != self.ring.num_vars() {
            return Err(Error::PointLength { expected: self.ring.num_vars(), found: point.len() });
        }
        Ok(self.homology_from_ranks(&image_ranks))
    }

    /// `rank_k - rank(d_k) - rank(d_{k+1})` given the ranks of the stored
    /// differentials in order.
    pub fn homology_from_ranks(&self, image_ranks: &[usize]) -> Vec<usize> {
        (0..self.ranks.len())
            .map(|k| {
                let out = if k > 0 { image_ranks[k - 1] } else { 0 };
                let inc = image_ranks.get(k).copied().unwrap_or(0);
                self.ranks[k] - out - inc
            })
            .collect()
    }

    /// Ranks of the differentials over the fraction field, by random
    /// specialization.
    pub fn generic_differential_ranks(&self, trials: usize, seed: u64) -> Result<Vec<usize>> {
        self.differentials.iter().map(|d| d.generic_rank(trials, seed)).collect()
    }

    /// Alternating sum of term ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if (self.min_degree + k as i64).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Rank banner such as `4 <- 12 <- 12 <- 4`.
    pub fn banner(&self) -> String {
        self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" <- ")
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Basis of `F_odd` (labels `-1, -2, ...`) and `F_even` (labels `1, 2, ...`),
/// each listed as `(degree, index within degree)` in ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityBasis {
    pub odd: Vec<(i64, usize)>,
    pub even: Vec<(i64, usize)>,
}

impl ParityBasis {
    pub fn m(&self) -> usize {
        self.odd.len()
    }

    pub fn n(&self) -> usize {
        self.even.len()
    }

    /// `(degree, index)` of the basis vector an entry refers to.
    pub fn basis_vector(&self, entry: Entry) -> Option<(i64, usize)> {
        let idx = entry.unsigned_abs() as usize;
        if idx == 0 {
            return None;
        }
        let list = if entry < 0 { &self.odd } else { &self.even };
        list.get(idx - 1).copied()
    }

    /// The entry label of the basis vector `(degree, index)`.
    pub fn label(&self, degree: i64, index: usize) -> Option<Entry> {
        let odd = degree.rem_euclid(2) == 1;
        let list = if odd { &self.odd } else { &self.even };
        let pos = list.iter().position(|&b| b == (degree, index))? as Entry + 1;
        Some(if odd { -pos } else { pos })
    }

    pub fn entry_degrees(&self) -> EntryDegrees {
        EntryDegrees::new(
            self.odd.iter().map(|b| b.0).collect(),
            self.even.iter().map(|b| b.0).collect(),
        )
        .expect("parity basis degrees have the right parity")
    }
}
