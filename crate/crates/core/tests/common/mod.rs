//! Test fixtures shared by the integration tests and the acceptance harness.

#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_core::{CoefficientField, FreeComplex, PolyMatrix, Polynomial, Ring};

pub fn koszul(field: CoefficientField, vars: &[&str]) -> FreeComplex {
    let r = Ring::with_vars(field, vars).unwrap();
    let elements: Vec<Polynomial> = (0..vars.len()).map(|i| Polynomial::variable(&r, i)).collect();
    FreeComplex::koszul(&elements).unwrap()
}

fn random_linear(r: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = Polynomial::from_i64(r, rng.gen_range(-2..=2));
    for v in 0..r.num_vars() {
        let c = rng.gen_range(-1..=1);
        p = &p + &Polynomial::variable(r, v).scale(&r.field().from_i64(c));
    }
    p
}

/// A product of `steps` elementary matrices and its inverse.
fn unimodular(r: &Arc<Ring>, n: usize, steps: usize, rng: &mut ChaCha8Rng) -> (PolyMatrix, PolyMatrix) {
    let mut p = PolyMatrix::identity(r, n);
    let mut inv = PolyMatrix::identity(r, n);
    if n < 2 {
        let u = r.field().from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
        let unit = PolyMatrix::new(r, 1, 1, vec![Polynomial::constant(r, u)]).unwrap();
        return if n == 1 { (unit.clone(), unit) } else { (p, inv) };
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = random_linear(r, rng);
        let mut e = PolyMatrix::identity(r, n);
        e.set(i, j, c.clone());
        let mut e_inv = PolyMatrix::identity(r, n);
        e_inv.set(i, j, -&c);
        p = p.mat_mul(&e).unwrap();
        inv = e_inv.mat_mul(&inv).unwrap();
    }
    (p, inv)
}

/// A seeded three-term complex `R^a <- R^b <- R^c`: block-diagonal
/// differentials with disjoint supports, conjugated by unimodular changes of
/// basis so that the entries are dense polynomials.
pub fn random_three_term(field: CoefficientField, ranks: [usize; 3], seed: u64) -> FreeComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = Ring::with_vars(field, &["x", "y"]).unwrap();
    let [a, b, c] = ranks;
    let k1 = rng.gen_range(0..=a.min(b));
    let k2 = rng.gen_range(0..=c.min(b - k1));
    let mut d1 = PolyMatrix::zeros(&r, a, b);
    for i in 0..k1 {
        d1.set(i, i, random_linear(&r, &mut rng));
    }
    let mut d2 = PolyMatrix::zeros(&r, b, c);
    for i in 0..k2 {
        d2.set(k1 + i, i, random_linear(&r, &mut rng));
    }
    let (p0, _) = unimodular(&r, a, 2, &mut rng);
    let (p1, p1_inv) = unimodular(&r, b, 2, &mut rng);
    let (p2, _) = unimodular(&r, c, 2, &mut rng);
    let d1 = p0.mat_mul(&d1).unwrap().mat_mul(&p1_inv).unwrap();
    let d2 = p1.mat_mul(&d2).unwrap().mat_mul(&p2).unwrap();
    FreeComplex::new(&r, 0, vec![a, b, c], vec![d1, d2]).unwrap()
}

/// The same complex with every degree raised by `shift`.
pub fn shifted(f: &FreeComplex, shift: i64) -> FreeComplex {
    FreeComplex::new(f.ring(), f.min_degree() + shift, f.ranks().to_vec(), f.differentials().to_vec()).unwrap()
}
