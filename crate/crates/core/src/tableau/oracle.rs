//! Brute-force reference computations used to check the fast paths:
//! tensor-space embeddings of columns and tableaux, and the relation span of
//! the Schur functor decided by exact elimination.
//!
//! Everything here is exponential in the shape size.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::column::{all_columns, ColumnElement};
use super::straighten::theta;
use super::{Entry, IntCombination, Partition, Tableau};
use crate::error::{Error, Result};

/// An element of `T^r(F)` in tensor coordinates.
pub type TensorVector = BTreeMap<Vec<Entry>, i64>;

/// Size limit for [`RelationSpace`]: the number of elements of the spanning set.
pub const MAX_SPANNING_SET: usize = 20_000;

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// Sign of a permutation, from its cycle decomposition.
fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Antisymmetrization `Σ_σ (-1)^σ σ·(x_1 ⊗ ... ⊗ x_r)` where `σ·` carries the
/// Koszul sign `(-1)^{|x||y|}` for every pair it transposes.
pub fn antisymmetrize(seq: &[Entry]) -> TensorVector {
    let mut out = TensorVector::new();
    for p in permutations(seq.len()) {
        let mut koszul = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] && seq[p[i]] < 0 && seq[p[j]] < 0 {
                    koszul = -koszul;
                }
            }
        }
        let word: Vec<Entry> = p.iter().map(|&k| seq[k]).collect();
        *out.entry(word).or_insert(0) += permutation_sign(&p) * koszul;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Embedding of a column sequence read as a divided-power monomial times an
/// exterior monomial: the antisymmetrization divided by `Π a_i!` over the
/// multiplicities of repeated odd entries.
pub fn tensor_embed_sequence(seq: &[Entry]) -> TensorVector {
    let mut counts: HashMap<Entry, usize> = HashMap::new();
    for &e in seq.iter().filter(|&&e| e < 0) {
        *counts.entry(e).or_insert(0) += 1;
    }
    let denom: i64 = counts.values().map(|&k| factorial(k)).product();
    antisymmetrize(seq)
        .into_iter()
        .map(|(w, c)| {
            assert_eq!(c % denom, 0, "antisymmetrization is divisible by the divided-power factor");
            (w, c / denom)
        })
        .collect()
}

pub fn tensor_embed_column(x: &ColumnElement) -> TensorVector {
    tensor_embed_sequence(x.entries())
}

/// Embedding of `U_1 ⊗ ... ⊗ U_t` into `T^r(F)`.
pub fn tensor_embed(t: &Tableau) -> TensorVector {
    let mut acc = TensorVector::from([(Vec::new(), 1)]);
    for c in t.columns() {
        let e = tensor_embed_sequence(c);
        let mut next = TensorVector::new();
        for (w1, c1) in &acc {
            for (w2, c2) in &e {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                *next.entry(w).or_insert(0) += c1 * c2;
            }
        }
        acc = next;
    }
    acc.retain(|_, c| *c != 0);
    acc
}

pub fn embed_combination(c: &IntCombination) -> TensorVector {
    let mut out = TensorVector::new();
    for (t, k) in c {
        for (w, v) in tensor_embed(t) {
            *out.entry(w).or_insert(0) += k * v;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Signed shuffle product on tensor space: every interleaving of the two
/// words, with sign `-(-1)^{|x||y|}` for each pair from different words that
/// changes relative order.
pub fn shuffle_product(a: &TensorVector, b: &TensorVector) -> TensorVector {
    let mut out = TensorVector::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let (p, q) = (wa.len(), wb.len());
            for positions in super::column::subsets_of_size(p + q, p) {
                let mut word = Vec::with_capacity(p + q);
                let (mut i, mut j) = (0, 0);
                let mut sign = 1i64;
                for k in 0..p + q {
                    if positions.contains(&k) {
                        // wa[i] moves past the wb entries already placed
                        for &y in &wb[..j] {
                            sign *= super::column::transposition_sign(wa[i], y);
                        }
                        word.push(wa[i]);
                        i += 1;
                    } else {
                        word.push(wb[j]);
                        j += 1;
                    }
                }
                *out.entry(word).or_insert(0) += sign * ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Brute-force count of fillings of `shape` with entries from `-m..=-1` and
/// `1..=n` that satisfy the standardness conditions.
pub fn count_standard_fillings(shape: &Partition, m: usize, n: usize) -> usize {
    let lengths = shape.column_lengths();
    let labels: Vec<Entry> = (-(m as Entry)..=n as Entry).filter(|&e| e != 0).collect();
    let r = shape.size();
    if labels.is_empty() {
        return 0;
    }
    let mut count = 0;
    let mut idx = vec![0usize; r];
    loop {
        let word: Vec<Entry> = idx.iter().map(|&i| labels[i]).collect();
        let mut columns = Vec::new();
        let mut pos = 0;
        for &c in &lengths {
            columns.push(word[pos..pos + c].to_vec());
            pos += c;
        }
        if Tableau::from_columns_unchecked(columns).is_standard() {
            count += 1;
        }
        // odometer
        let mut k = 0;
        loop {
            if k == r {
                return count;
            }
            idx[k] += 1;
            if idx[k] < labels.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Brute-force count of fillings with entries `1..=n`, strictly increasing
/// down columns and weakly increasing along rows.
pub fn count_column_strict_fillings(shape: &Partition, n: usize) -> usize {
    let lengths = shape.column_lengths();
    let r = shape.size();
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    let total = n.pow(r as u32);
    for code in 0..total {
        let mut c = code;
        let mut word = Vec::with_capacity(r);
        for _ in 0..r {
            word.push((c % n) as Entry + 1);
            c /= n;
        }
        let mut columns = Vec::new();
        let mut pos = 0;
        for &len in &lengths {
            columns.push(word[pos..pos + len].to_vec());
            pos += len;
        }
        let cols_ok = columns.iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        let rows_ok = columns.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(r, l)| l <= r));
        if cols_ok && rows_ok {
            count += 1;
        }
    }
    count
}

/// Incremental row echelon form over the rationals.
#[derive(Default)]
struct Echelon {
    rows: Vec<BTreeMap<usize, BigRational>>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    fn reduce(&self, mut v: BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
        let mut cursor = 0;
        while let Some((&k, c)) = v.range(cursor..).next() {
            match self.pivots.get(&k) {
                Some(&r) => {
                    let c = c.clone();
                    for (j, x) in &self.rows[r] {
                        let e = v.entry(*j).or_insert_with(BigRational::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            v.remove(j);
                        }
                    }
                }
                None => cursor = k + 1,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    fn insert(&mut self, v: BTreeMap<usize, BigRational>) -> bool {
        let v = self.reduce(v);
        let Some((&lead, c)) = v.iter().next() else {
            return false;
        };
        let inv = c.recip();
        let row = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// The spanning set `S` of a Schur functor (all tableaux with canonical
/// columns) together with the span of every relation `Θ(a, u, v)` for all
/// admissible `u + v < c_{a+1}`.
pub struct RelationSpace {
    m: usize,
    n: usize,
    spanning: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    span: Echelon,
}

impl RelationSpace {
    pub fn new(shape: &Partition, m: usize, n: usize) -> Result<Self> {
        let lengths = shape.column_lengths();
        let mut by_len: HashMap<usize, Vec<ColumnElement>> = HashMap::new();
        let max_len = lengths[0] * 2;
        for len in 0..=max_len {
            by_len.insert(len, all_columns(len, m, n));
        }
        let size: usize = lengths.iter().map(|c| by_len[c].len()).product();
        if size > MAX_SPANNING_SET {
            return Err(Error::SizeGuard(format!(
                "spanning set of {shape} with m = {m}, n = {n} has {size} elements"
            )));
        }
        let choices: Vec<&[ColumnElement]> = lengths.iter().map(|c| by_len[c].as_slice()).collect();
        let spanning: Vec<Tableau> = product(&choices)
            .into_iter()
            .map(|cols| Tableau::from_columns_unchecked(cols.into_iter().map(|c| c.entries().to_vec()).collect()))
            .collect();
        let index = spanning.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut space = RelationSpace { m, n, spanning, index, span: Echelon::default() };

        for a in 0..lengths.len().saturating_sub(1) {
            let (ca, cb) = (lengths[a], lengths[a + 1]);
            let others: Vec<&[ColumnElement]> = lengths
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != a && *k != a + 1)
                .map(|(_, c)| by_len[c].as_slice())
                .collect();
            let other_choices = product(&others);
            for u in 0..cb {
                for v in 0..cb - u {
                    let (left, right) = (ca - u, cb - v);
                    for v1 in &by_len[&u] {
                        for v3 in &by_len[&v] {
                            for v2 in &by_len[&(left + right)] {
                                let terms = theta(v1, v2, v3, left, right)?;
                                if terms.is_empty() {
                                    continue;
                                }
                                for rest in &other_choices {
                                    let mut vec = BTreeMap::new();
                                    for (c, x, y) in &terms {
                                        let mut cols: Vec<Vec<Entry>> = Vec::with_capacity(lengths.len());
                                        let mut it = rest.iter();
                                        for k in 0..lengths.len() {
                                            if k == a {
                                                cols.push(x.entries().to_vec());
                                            } else if k == a + 1 {
                                                cols.push(y.entries().to_vec());
                                            } else {
                                                cols.push(it.next().unwrap().entries().to_vec());
                                            }
                                        }
                                        let idx = space.index[&Tableau::from_columns_unchecked(cols)];
                                        vec.insert(idx, BigRational::from_integer((*c).into()));
                                    }
                                    space.span.insert(vec);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(space)
    }

    pub fn spanning_set(&self) -> &[Tableau] {
        &self.spanning
    }

    pub fn relation_rank(&self) -> usize {
        self.span.rank()
    }

    /// `dim span(S) / span(relations)`.
    pub fn quotient_rank(&self) -> usize {
        self.spanning.len() - self.span.rank()
    }

    /// Whether `c` lies in the relation span. Non-canonical columns are
    /// normalized first.
    pub fn contains(&self, c: &IntCombination) -> Result<bool> {
        let mut v: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (t, k) in c {
            t.check_range(self.m, self.n)?;
            let Some((canon, sign)) = t.normalize() else { continue };
            let idx = *self
                .index
                .get(&canon)
                .ok_or_else(|| Error::InvalidTableau("tableau of the wrong shape".into()))?;
            let e = v.entry(idx).or_insert_with(BigRational::zero);
            *e += BigRational::from_integer((sign * k).into());
        }
        v.retain(|_, x| !x.is_zero());
        Ok(self.span.reduce(v).is_empty())
    }
}

fn product<'a>(choices: &[&'a [ColumnElement]]) -> Vec<Vec<&'a ColumnElement>> {
    let mut acc: Vec<Vec<&ColumnElement>> = vec![Vec::new()];
    for opts in choices {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in opts.iter() {
                let mut p = prefix.clone();
                p.push(o);
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

/// Whether `c` lies in the span of all relations of its shape.
pub fn relation_membership(c: &IntCombination, m: usize, n: usize) -> Result<bool> {
    let Some(first) = c.keys().next() else {
        return Ok(true);
    };
    RelationSpace::new(&first.shape(), m, n)?.contains(c)
}
