use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{CoefficientField, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u32>;

/// A polynomial ring `field[variables]` with a fixed variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: CoefficientField,
    variables: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(field: CoefficientField, variables: Vec<String>) -> Result<Arc<Ring>> {
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Parse(format!("invalid variable name {v:?}")));
            }
            if variables[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(Arc::new(Ring { field, variables }))
    }

    /// Convenience constructor taking string slices.
    pub fn with_vars(field: CoefficientField, variables: &[&str]) -> Result<Arc<Ring>> {
        Ring::new(field, variables.iter().map(|s| s.to_string()).collect())
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A sparse multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    /// A constant polynomial; the scalar is coerced into the ring's field.
    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        let c = ring.field.coerce(&c).expect("constant not representable in field");
        Self::from_terms_unchecked(ring, [(vec![0; ring.num_vars()], c)])
    }

    pub fn from_i64(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(n.into()))
    }

    pub fn variable(ring: &Arc<Ring>, index: usize) -> Self {
        assert!(index < ring.num_vars(), "variable index out of range");
        let mut e = vec![0; ring.num_vars()];
        e[index] = 1;
        Self::from_terms_unchecked(ring, [(e, BigRational::one())])
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        Ok(Self::variable(ring, i))
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, collecting like
    /// terms. Coefficients are coerced into the field.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.num_vars() {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    ring.num_vars()
                )));
            }
            let c = ring.field.coerce(&c)?;
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn from_terms_unchecked<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let field = self.ring.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The constant value if this polynomial has no nonconstant terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_ref(&other.neg_ref());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// In-place addition. Panics if the rings differ.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    /// Adds `scale * other` in place. Panics if the rings differ.
    pub fn add_scaled(&mut self, other: &Self, scale: &Scalar) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let field = self.ring.field;
        let scale = field.coerce(scale).expect("scale not representable in field");
        if scale.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &field.mul(c, &scale));
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.ring.field;
        let mut out = Self::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &field.mul(ca, cb));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), field.neg(c))).collect(),
        }
    }

    /// Multiplies by a scalar, coerced into the field.
    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.ring);
        out.add_scaled(self, c);
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Evaluates at a point. Coordinates are coerced into the field first.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::PointLength { expected: self.ring.num_vars(), found: point.len() });
        }
        let field = self.ring.field;
        let pt = point.iter().map(|x| field.coerce(x)).collect::<Result<Vec<_>>>()?;
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                for _ in 0..k {
                    t = field.mul(&t, x);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` in lexicographic order, or `None` when
    /// the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_ring(divisor)?;
        let (de, dc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let field = self.ring.field;
        let dc_inv = field.inv(dc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let e: Monomial = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = field.mul(rc, &dc_inv);
            let t = Self::from_terms_unchecked(&self.ring, [(e, c)]);
            rem = rem.add_unchecked_neg(&t.mul_unchecked(divisor));
            quot.add_assign_ref(&t);
        }
        Ok(Some(quot))
    }

    fn add_unchecked_neg(mut self, other: &Self) -> Self {
        self.add_assign_ref(&other.neg_ref());
        self
    }

    /// Reads a polynomial in the text grammar, e.g. `1/2*x^2*y - 1`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        Parser { ring, chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
            .parse()
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at offset {} in {text:?}", self.pos))
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }

    fn parse(mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (coef, exps) = self.term()?;
            let coef = if negative { -coef } else { coef };
            let c = self.ring.field().coerce(&coef)?;
            acc.add_term(exps, &c);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        let mut coef = BigRational::one();
        let mut exps = vec![0u32; self.ring.num_vars()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    let mut q = BigRational::from_integer(n);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let d = self.number()?;
                        if d.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        q /= BigRational::from_integer(d);
                    }
                    coef *= q;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    let mut k = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let n = self.number()?;
                        k = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    }
                    exps[idx] += k;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((coef, exps));
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = &self.ring.variables[i];
                    if k == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let mut parts = Vec::new();
            if !mag.is_one() || factors.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(factors);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] for a fallible sum.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}
