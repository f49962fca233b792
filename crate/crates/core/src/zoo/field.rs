//! Finite fields GF(p^f) with elements encoded as integers `0..q`.
//!
//! Element `i` is the polynomial whose coefficient of `x^k` is the `k`-th
//! base-`p` digit of `i`, reduced modulo a fixed monic irreducible of
//! degree `f`. Multiplication goes through discrete-log tables built from
//! a verified primitive element.

use crate::error::{Error, Result};
use crate::perm::prime_factors;

pub type Elem = u32;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    f: u32,
    q: u64,
    /// Coefficients low to high, monic, length `f + 1`.
    modulus: Vec<u64>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

/// Splits `q` as `p^f`, or reports that it is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = factors[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Ok((p, f))
}

impl FiniteField {
    /// GF(q) using the smallest monic irreducible of degree `f`, ordering
    /// polynomials by their coefficient list from the leading term down.
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q)?;
        if q > 1 << 20 {
            return Err(Error::InvalidParameter(format!("field order {q} is too large")));
        }
        let modulus = irreducibles(p, f)
            .next()
            .expect("an irreducible of every degree exists");
        FiniteField::with_modulus(p, modulus)
    }

    /// GF(p^f) with an explicit monic modulus (coefficients low to high),
    /// which must be irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let f = (modulus.len() - 1) as u32;
        if f == 0 || modulus[f as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("modulus must be monic over GF(p)".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidParameter(format!("{modulus:?} is reducible")));
        }
        let q = p.pow(f);
        let mut field = FiniteField {
            p,
            f,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = (1..q as Elem)
            .find(|&g| field.is_primitive_slow(g))
            .ok_or_else(|| Error::InvalidParameter("no primitive element".into()))?;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut x: Elem = 1;
        for k in 0..(q - 1) as u32 {
            exp.push(x);
            log[x as usize] = k;
            x = field.mul_slow(x, field.primitive);
        }
        debug_assert_eq!(x, 1);
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(0, a)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[k as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert_ne!(a, 0, "zero has no inverse");
        let k = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = (self.log[a as usize] as u64 * (e % (self.q - 1))) % (self.q - 1);
        self.exp[k as usize]
    }

    /// Nonzero squares are the even powers of the primitive element.
    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }

    pub fn multiplicative_order(&self, a: Elem) -> u64 {
        assert_ne!(a, 0);
        let n = self.q - 1;
        n / crate::perm::gcd(n, self.log[a as usize] as u64)
    }

    fn digits(&self, mut a: Elem) -> Vec<u64> {
        let mut d = vec![0; self.f as usize];
        for slot in d.iter_mut() {
            *slot = a as u64 % self.p;
            a /= self.p as Elem;
        }
        d
    }

    fn pack_digits(&self, d: &[u64]) -> Elem {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as Elem
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u64, u64) -> u64) -> Elem {
        if self.f == 1 {
            return op(a as u64, b as u64) as Elem;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let d: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| op(x, y)).collect();
        self.pack_digits(&d)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let prod = poly_mul(self.p, &self.digits(a), &self.digits(b));
        let r = poly_rem(self.p, &prod, &self.modulus);
        let mut d = vec![0; self.f as usize];
        d[..r.len().min(self.f as usize)].copy_from_slice(&r[..r.len().min(self.f as usize)]);
        self.pack_digits(&d)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_primitive_slow(&self, g: Elem) -> bool {
        let n = self.q - 1;
        if n == 1 {
            return g == 1;
        }
        prime_factors(n)
            .into_iter()
            .all(|r| self.pow_slow(g, n / r) != 1)
    }
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &c) in m.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p * p - lead * c % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Monic polynomial of degree `f` from its index: the leading-term-first
/// coefficient list read as a base-`p` number.
fn monic_from_index(p: u64, f: u32, mut idx: u64) -> Vec<u64> {
    let mut coeffs = vec![0; f as usize + 1];
    coeffs[f as usize] = 1;
    for c in coeffs.iter_mut().take(f as usize) {
        *c = idx % p;
        idx /= p;
    }
    coeffs
}

/// Irreducibility by trial division: no root, and no monic factor of
/// degree `2..=f/2`.
fn is_irreducible(p: u64, m: &[u64]) -> bool {
    let f = (m.len() - 1) as u32;
    if f == 1 {
        return true;
    }
    let has_root = (0..p).any(|x| m.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0);
    if has_root {
        return false;
    }
    (2..=f / 2).all(|d| (0..p.pow(d)).all(|i| !poly_rem(p, m, &monic_from_index(p, d, i)).is_empty()))
}

/// Monic irreducibles of degree `f` over GF(p), smallest first.
pub fn irreducibles(p: u64, f: u32) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(f))
        .map(move |i| monic_from_index(p, f, i))
        .filter(move |m| is_irreducible(p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27).unwrap(), (3, 3));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert_eq!(prime_power(64).unwrap(), (2, 6));
        assert!(matches!(prime_power(12), Err(Error::NotPrimePower(12))));
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(FiniteField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(27).unwrap().modulus(), &[1, 2, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustively() {
        for q in [4u64, 7, 8, 9, 25, 27] {
            let k = FiniteField::new(q).unwrap();
            assert_eq!(k.multiplicative_order(k.primitive()), q - 1);
            for a in 0..q as Elem {
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a)), 1);
                }
                for b in 0..q as Elem {
                    assert_eq!(k.mul(a, b), k.mul_slow(a, b));
                    assert_eq!(k.add(a, b), k.add(b, a));
                    let c = (a + b) % q as Elem;
                    assert_eq!(
                        k.mul(a, k.add(b, c)),
                        k.add(k.mul(a, b), k.mul(a, c))
                    );
                }
            }
            let squares = (1..q as Elem).filter(|&a| k.is_square(a)).count() as u64;
            let expected = if q % 2 == 0 { q - 1 } else { (q - 1) / 2 };
            assert_eq!(squares, expected);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(FiniteField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(2, vec![1, 1, 1]).is_ok());
    }
}
