//! Schur complexes on the standard-tableau basis.
//!
//! The differential of a tableau is computed box by box in column-major
//! order with Koszul signs, each summand is normalized column-wise and
//! straightened, and the images are assembled into matrices in the canonical
//! basis order (degree, then reading word).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{FreeComplex, ParityBasis};
use crate::error::{Error, Result};
use crate::ring::{PolyMatrix, Polynomial, Ring};
use crate::tableau::{enumerate_standard, normalize_column, Entry, EntryDegrees, Partition, Straightener, Tableau};

/// The standard tableaux of a shape, graded by homological degree.
#[derive(Clone, Debug)]
pub struct SchurBasis {
    shape: Partition,
    degrees: EntryDegrees,
    by_degree: BTreeMap<i64, Vec<Tableau>>,
}

impl SchurBasis {
    pub fn new(shape: &Partition, parity: &ParityBasis) -> Self {
        let degrees = parity.entry_degrees();
        let mut by_degree: BTreeMap<i64, Vec<Tableau>> = BTreeMap::new();
        for t in enumerate_standard(shape, &degrees, None) {
            let d = t.degree(&degrees).expect("enumerated entries are in range");
            by_degree.entry(d).or_default().push(t);
        }
        SchurBasis { shape: shape.clone(), degrees, by_degree }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn entry_degrees(&self) -> &EntryDegrees {
        &self.degrees
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.by_degree.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.by_degree.keys().next_back().copied()
    }

    /// Standard tableaux of total degree `degree`, in canonical order.
    pub fn tableaux(&self, degree: i64) -> &[Tableau] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_degree.is_empty()
    }
}

/// A combination of tableaux with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauCombination {
    ring: Arc<Ring>,
    terms: BTreeMap<Tableau, Polynomial>,
}

impl TableauCombination {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        TableauCombination { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<Tableau, Polynomial> {
        &self.terms
    }

    pub fn get(&self, t: &Tableau) -> Option<&Polynomial> {
        self.terms.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `k * p * t`.
    pub fn add_term(&mut self, t: &Tableau, p: &Polynomial, k: i64) {
        let scale = self.ring.field().from_i64(k);
        let entry = self.terms.entry(t.clone()).or_insert_with(|| Polynomial::zero(&self.ring));
        entry.add_scaled(p, &scale);
        if entry.is_zero() {
            self.terms.remove(t);
        }
    }
}

/// Sum of the degrees of the basis vectors referenced by `t`.
pub fn tableau_degree(t: &Tableau, parity: &ParityBasis) -> Result<i64> {
    t.degree(&parity.entry_degrees())
}

/// `d` of every basis label, as a list of `(target label, coefficient)`.
fn label_images(f: &FreeComplex, parity: &ParityBasis) -> HashMap<Entry, Vec<(Entry, Polynomial)>> {
    let mut out = HashMap::new();
    for (label_list, sign) in [(&parity.odd, -1), (&parity.even, 1)] {
        for (i, &(deg, idx)) in label_list.iter().enumerate() {
            let label = sign * (i as Entry + 1);
            let mut img = Vec::new();
            if let Some(d) = f.differential(deg) {
                for row in 0..d.rows() {
                    let p = d.get(row, idx);
                    if !p.is_zero() {
                        img.push((parity.label(deg - 1, row).expect("target basis vector"), p.clone()));
                    }
                }
            }
            out.insert(label, img);
        }
    }
    out
}

struct DifferentialContext<'a> {
    ring: &'a Arc<Ring>,
    degrees: EntryDegrees,
    images: HashMap<Entry, Vec<(Entry, Polynomial)>>,
    straightener: Straightener,
}

impl<'a> DifferentialContext<'a> {
    fn new(f: &'a FreeComplex) -> Self {
        let parity = f.parity_split();
        DifferentialContext {
            ring: f.ring(),
            degrees: parity.entry_degrees(),
            images: label_images(f, &parity),
            straightener: Straightener::new(),
        }
    }

    fn apply(&self, t: &Tableau) -> Result<TableauCombination> {
        let mut out = TableauCombination::zero(self.ring);
        let Some((t, outer_sign)) = t.normalize() else {
            return Ok(out);
        };
        let mut prior_degree = 0i64;
        for (ci, col) in t.columns().iter().enumerate() {
            for (row, &value) in col.iter().enumerate() {
                let deg = self.degrees.degree(value)?;
                // a divided power e^(k) is differentiated once: d(e) e^(k-1)
                if row > 0 && col[row - 1] == value {
                    prior_degree += deg;
                    continue;
                }
                let koszul = if prior_degree.rem_euclid(2) == 0 { 1 } else { -1 };
                for (target, coef) in &self.images[&value] {
                    let mut seq = col.clone();
                    seq[row] = *target;
                    let multiplicity = if *target < 0 {
                        seq.iter().filter(|&&e| e == *target).count() as i64
                    } else {
                        1
                    };
                    let Some((canon, s)) = normalize_column(&seq) else { continue };
                    let image = t.with_column(ci, canon.into_entries());
                    let k = outer_sign * koszul * s * multiplicity;
                    for (std, c) in self.straightener.straighten_canonical(&image).iter() {
                        out.add_term(std, coef, k * c);
                    }
                }
                prior_degree += deg;
            }
        }
        Ok(out)
    }
}

/// The differential of the Schur complex applied to `t`, written in the
/// standard basis.
pub fn tableau_differential(t: &Tableau, f: &FreeComplex) -> Result<TableauCombination> {
    let parity = f.parity_split();
    t.check_range(parity.m(), parity.n())?;
    DifferentialContext::new(f).apply(t)
}

/// A Schur complex together with the basis its matrices are written in.
#[derive(Clone, Debug)]
pub struct SchurComplex {
    pub complex: FreeComplex,
    pub basis: SchurBasis,
}

/// `S_λ(F)`. Columns of `λ` index the exterior factors, so `λ = (r)` gives
/// the symmetric power and `λ = (1^r)` the exterior power.
pub fn schur_complex(shape: &Partition, f: &FreeComplex) -> Result<SchurComplex> {
    let violations = f.validate();
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidComplex(msgs.join("; ")));
    }
    let parity = f.parity_split();
    let basis = SchurBasis::new(shape, &parity);
    let ring = f.ring();
    let (Some(lo), Some(hi)) = (basis.min_degree(), basis.max_degree()) else {
        return Ok(SchurComplex { complex: FreeComplex::module(ring, 0, 0), basis });
    };
    let ctx = DifferentialContext::new(f);
    let ranks: Vec<usize> = (lo..=hi).map(|d| basis.tableaux(d).len()).collect();
    let mut differentials = Vec::with_capacity(ranks.len().saturating_sub(1));
    for deg in lo + 1..=hi {
        let sources = basis.tableaux(deg);
        let targets = basis.tableaux(deg - 1);
        let target_index: HashMap<&Tableau, usize> = targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let images: Vec<TableauCombination> =
            sources.par_iter().map(|t| ctx.apply(t)).collect::<Result<_>>()?;
        let mut d = PolyMatrix::zeros(ring, targets.len(), sources.len());
        for (col, img) in images.into_iter().enumerate() {
            for (t, p) in img.terms {
                let row = *target_index.get(&t).ok_or_else(|| {
                    Error::Precondition(format!("differential leaves degree {}:\n{t}", deg - 1))
                })?;
                d.set(row, col, p);
            }
        }
        differentials.push(d);
    }
    let complex = FreeComplex::new(ring, lo, ranks, differentials)?;
    Ok(SchurComplex { complex, basis })
}

/// `∧^r F`.
pub fn exterior_power(r: usize, f: &FreeComplex) -> Result<SchurComplex> {
    schur_complex(&Partition::column(r)?, f)
}

/// `Sym_r F`.
pub fn symmetric_power(r: usize, f: &FreeComplex) -> Result<SchurComplex> {
    schur_complex(&Partition::row(r)?, f)
}
