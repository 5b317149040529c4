//! Arithmetic in `F_{p^k}`, used to specialize matrices over small prime
//! fields at points drawn from a large enough field.

use num_traits::ToPrimitive;
use rand::Rng;

use super::poly::Polynomial;

/// Polynomial over `F_p`, lowest coefficient first, without trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let (mut acc, mut b) = (1u128, a as u128 % p as u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while a.len() > df {
        let shift = a.len() - 1 - df;
        let c = (*a.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
        for (i, &fi) in f.iter().enumerate() {
            let sub = (c as u128 * fi as u128 % p as u128) as u64;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    trim(out.into_iter().map(|x| x as u64).collect())
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree `k` is irreducible iff `gcd(t^{p^i} - t, f) = 1`
/// for `i = 1..=k/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let t = vec![0, 1];
    let mut h = t.clone();
    for _ in 0..k / 2 {
        let mut acc = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(&poly_mul(&acc, &base, p), f, p);
            }
            base = poly_rem(&poly_mul(&base, &base, p), f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if poly_gcd(&trim(diff), f, p).len() > 1 {
            return false;
        }
    }
    true
}

/// `F_p[t] / (f)` for a monic irreducible `f`.
pub(crate) struct ExtensionField {
    p: u64,
    modulus: Poly,
    order: u64,
}

impl ExtensionField {
    /// The smallest extension of `F_p` with at least `min_order` elements.
    pub(crate) fn with_min_order(p: u64, min_order: u64) -> Self {
        let mut k = 1;
        let mut order = p;
        while order < min_order {
            k += 1;
            order *= p;
        }
        let mut code = 0u64;
        loop {
            code += 1;
            let mut f: Poly = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if c == 0 && f[0] != 0 && is_irreducible(&f, p) {
                return ExtensionField { p, modulus: f, order };
            }
        }
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        poly_rem(&poly_mul(a, b, self.p), &self.modulus, self.p)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        trim((0..n).map(|i| (get(a, i) + self.p - get(b, i)) % self.p).collect())
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        trim((0..n).map(|i| (get(a, i) + get(b, i)) % self.p).collect())
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Poly {
        let mut acc = vec![1];
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: &[u64]) -> Poly {
        self.pow(a, self.order - 2)
    }

    pub(crate) fn random_point<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<Poly> {
        (0..n)
            .map(|_| trim((0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect()))
            .collect()
    }

    /// Evaluates a polynomial whose coefficients are residues mod `p`.
    pub(crate) fn eval(&self, f: &Polynomial, point: &[Poly]) -> Poly {
        let mut acc = Vec::new();
        for (e, c) in f.terms() {
            let mut term = vec![c.numer().to_u64().expect("residue") % self.p];
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = self.mul(&term, &self.pow(x, k as u64));
                }
            }
            acc = self.add(&acc, &term);
        }
        trim(acc)
    }

    pub(crate) fn rank(&self, mut m: Vec<Vec<Poly>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| !m[i][col].is_empty()) else {
                continue;
            };
            m.swap(rank, piv);
            let s = self.inv(&m[rank][col]);
            let pivot_row: Vec<Poly> = m[rank].iter().map(|x| self.mul(x, &s)).collect();
            for row in m.iter_mut().skip(rank + 1) {
                if row[col].is_empty() {
                    continue;
                }
                let f = row[col].clone();
                for j in col..cols {
                    if !pivot_row[j].is_empty() {
                        row[j] = self.sub(&row[j], &self.mul(&f, &pivot_row[j]));
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
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        // t^2 + t + 1 is irreducible over F_2, t^2 + 1 = (t + 1)^2 is not
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // t^4 + t + 1 irreducible, t^4 + t^2 + 1 = (t^2 + t + 1)^2
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        // over F_3, t^2 + 1 has no root and t^2 + 2 = (t + 1)(t + 2)
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn field_laws() {
        for p in [2, 3, 5] {
            let f = ExtensionField::with_min_order(p, 1000);
            assert!(f.order >= 1000);
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
            for _ in 0..50 {
                let pt = f.random_point(&mut rng, 2);
                if pt[0].is_empty() {
                    continue;
                }
                assert_eq!(f.mul(&pt[0], &f.inv(&pt[0])), vec![1]);
                assert_eq!(f.pow(&pt[1], f.order), pt[1]);
            }
        }
    }
}
