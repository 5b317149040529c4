//! JSON file formats: complexes, tableaux, and straightening results.
//!
//! A complex document looks like
//!
//! ```json
//! {
//!   "ring": { "coefficients": "QQ", "variables": ["x", "y"] },
//!   "min_degree": 0,
//!   "ranks": [1, 2, 1],
//!   "differentials": [[["x", "y"]], [["-y"], ["x"]]]
//! }
//! ```
//!
//! where `differentials[k]` maps degree `min_degree + k + 1` to
//! `min_degree + k` and is written as a list of rows. Prime fields are
//! written `{"p": 3}`. Schur complexes add `shape` and a `basis` section
//! listing the standard tableaux of each degree in matrix order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::ring::{CoefficientField, PolyMatrix, Ring};
use crate::schur::SchurBasis;
use crate::tableau::{Entry, IntCombination, Partition, Tableau};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Named(String),
    Prime { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingHeader {
    pub coefficients: Coefficients,
    pub variables: Vec<String>,
}

/// One `(column, row, value)` box, 1-based.
pub type BoxEntry = (usize, usize, Entry);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisBlock {
    pub degree: i64,
    pub tableaux: Vec<Vec<BoxEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub ring: RingHeader,
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisBlock>>,
}

/// A complex read from a file, with the basis section if there was one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub complex: FreeComplex,
    pub shape: Option<Partition>,
    pub basis: Option<Vec<(i64, Vec<Tableau>)>>,
}

fn ring_from_header(header: &RingHeader) -> Result<Arc<Ring>> {
    let field = match &header.coefficients {
        Coefficients::Named(s) if s == "QQ" => CoefficientField::Rationals,
        Coefficients::Named(s) => return Err(Error::Parse(format!("unknown coefficient field {s:?}"))),
        Coefficients::Prime { p } => CoefficientField::prime(*p)?,
    };
    Ring::new(field, header.variables.clone())
}

fn ring_to_header(ring: &Ring) -> RingHeader {
    let coefficients = match ring.field() {
        CoefficientField::Rationals => Coefficients::Named("QQ".into()),
        CoefficientField::PrimeField(p) => Coefficients::Prime { p },
    };
    RingHeader { coefficients, variables: ring.variables().to_vec() }
}

impl ComplexFile {
    pub fn from_complex(f: &FreeComplex, basis: Option<&SchurBasis>) -> Self {
        let differentials = f
            .differentials()
            .iter()
            .map(|d| (0..d.rows()).map(|i| d.row(i).iter().map(|p| p.to_string()).collect()).collect())
            .collect();
        let basis_blocks = basis.map(|b| {
            (f.min_degree()..=f.max_degree())
                .map(|deg| BasisBlock {
                    degree: deg,
                    tableaux: b.tableaux(deg).iter().map(Tableau::entries).collect(),
                })
                .collect()
        });
        ComplexFile {
            ring: ring_to_header(f.ring()),
            min_degree: f.min_degree(),
            ranks: f.ranks().to_vec(),
            differentials,
            shape: basis.map(|b| b.shape().parts().to_vec()),
            basis: basis_blocks,
        }
    }

    pub fn into_document(self) -> Result<ComplexDocument> {
        let ring = ring_from_header(&self.ring)?;
        if self.differentials.len() + 1 != self.ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} ranks but {} differentials",
                self.ranks.len(),
                self.differentials.len()
            )));
        }
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(k, rows)| PolyMatrix::parse_rows(&ring, rows, self.ranks[k + 1]))
            .collect::<Result<Vec<_>>>()?;
        let complex = FreeComplex::new(&ring, self.min_degree, self.ranks, differentials)?;
        let shape = self.shape.map(Partition::new).transpose()?;
        let basis = match self.basis {
            None => None,
            Some(blocks) => {
                let shape = shape
                    .clone()
                    .ok_or_else(|| Error::Parse("a basis section needs a shape".into()))?;
                let mut out = Vec::with_capacity(blocks.len());
                for b in blocks {
                    let ts = b
                        .tableaux
                        .iter()
                        .map(|e| Tableau::from_entries(&shape, e))
                        .collect::<Result<Vec<_>>>()?;
                    out.push((b.degree, ts));
                }
                Some(out)
            }
        };
        Ok(ComplexDocument { complex, shape, basis })
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexDocument> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_document()
}

pub fn complex_to_json(f: &FreeComplex, basis: Option<&SchurBasis>) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_complex(f, basis)).expect("serializable") + "\n"
}

/// Tableau input: a shape, the boxes, and optionally the label ranges
/// `m` (odd) and `n` (even). Missing ranges default to the largest label used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauFile {
    pub shape: Vec<usize>,
    pub entries: Vec<BoxEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauInput {
    pub tableau: Tableau,
    pub m: usize,
    pub n: usize,
}

impl TableauFile {
    pub fn from_tableau(t: &Tableau, m: Option<usize>, n: Option<usize>) -> Self {
        TableauFile { shape: t.shape().parts().to_vec(), entries: t.entries(), m, n }
    }
}

/// Reads a tableau file. Malformed JSON is [`Error::Parse`]; a well-formed
/// document describing an impossible tableau is [`Error::InvalidTableau`].
pub fn parse_tableau(text: &str) -> Result<TableauInput> {
    let file: TableauFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let shape = Partition::new(file.shape).map_err(|e| Error::InvalidTableau(e.to_string()))?;
    let tableau = Tableau::from_entries(&shape, &file.entries)?;
    let max_odd = tableau.columns().iter().flatten().filter(|&&e| e < 0).map(|e| e.unsigned_abs()).max();
    let max_even = tableau.columns().iter().flatten().filter(|&&e| e > 0).map(|&e| e as u32).max();
    let m = file.m.unwrap_or(max_odd.unwrap_or(0) as usize);
    let n = file.n.unwrap_or(max_even.unwrap_or(0) as usize);
    tableau.check_range(m, n)?;
    Ok(TableauInput { tableau, m, n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StraighteningTerm {
    pub coefficient: i64,
    pub tableau: Vec<BoxEntry>,
}

/// A straightening result as a list of terms in reading-word order.
pub fn straightening_to_json(c: &IntCombination) -> String {
    let terms: Vec<StraighteningTerm> = c
        .iter()
        .map(|(t, &k)| StraighteningTerm { coefficient: k, tableau: t.entries() })
        .collect();
    serde_json::to_string_pretty(&terms).expect("serializable") + "\n"
}

/// Reads a straightening result; `shape` fixes how boxes are laid out.
pub fn parse_straightening(text: &str, shape: &Partition) -> Result<IntCombination> {
    let terms: Vec<StraighteningTerm> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = IntCombination::new();
    for term in terms {
        let t = Tableau::from_entries(shape, &term.tableau)?;
        *out.entry(t).or_insert(0) += term.coefficient;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}
