use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Points are stored as `u16`, which caps the degree at 65535.
pub type Point = u16;

pub const MAX_DEGREE: usize = Point::MAX as usize;

/// A permutation of the points `0..degree`.
///
/// Products are read left to right: `p * q` first applies `p`, then `q`, so
/// `(p * q).image(i) == q.image(p.image(i))`. Every module uses this
/// convention, and relations such as `x * y * z == 1` are meant in it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image list is not a bijection on 0..{degree}"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as Point).collect(),
        })
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} outside 0..{degree}"
                    )));
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} appears twice"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// Checked product `self * other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self * other)
    }

    /// Writes `self * other` into `out` without allocating.
    #[inline]
    pub fn compose_into(&self, other: &Permutation, out: &mut Permutation) {
        debug_assert_eq!(self.degree(), other.degree());
        debug_assert_eq!(self.degree(), out.degree());
        let q = &other.images;
        for (o, &a) in out.images.iter_mut().zip(self.images.iter()) {
            *o = q[a as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as Point; self.degree()].into_boxed_slice();
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as Point;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`, the conjugate moving each cycle of `self` by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0 as Point; self.degree()].into_boxed_slice();
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Lengths of all cycles, including fixed points, in order of their
    /// smallest point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// The least common multiple of the cycle lengths.
    ///
    /// Panics if the order does not fit in 64 bits, which needs a degree far
    /// beyond anything handled here.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .try_fold(1u64, |acc, l| checked_lcm(acc, l as u64))
            .expect("element order overflows u64")
    }

    /// Whether the order is exactly `k`, without computing cycles.
    ///
    /// Cheap for the small `k` used in tuple searches: `self^k` is applied
    /// point by point, and `self^(k/r)` must move some point for every
    /// prime `r` dividing `k`.
    pub fn has_exact_order(&self, k: u64) -> bool {
        if k == 0 {
            return false;
        }
        if k == 1 {
            return self.is_identity();
        }
        if !self.power_is_identity(k) {
            return false;
        }
        prime_factors(k)
            .into_iter()
            .all(|r| !self.power_is_identity(k / r))
    }

    fn power_is_identity(&self, k: u64) -> bool {
        let p = &self.images;
        (0..p.len()).all(|start| {
            let mut i = start;
            for _ in 0..k {
                i = p[i] as usize;
            }
            i == start
        })
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        transpositions.is_multiple_of(2)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] as usize == point
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i != j as usize)
            .map(|(i, _)| i)
    }

    /// Extends the permutation to a larger degree, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.to_vec();
        images.extend(self.degree() as Point..degree as Point);
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Shifts the permutation onto points `offset..offset+self.degree()` of a
    /// permutation of degree `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<Point> = (0..degree as Point).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as Point + j;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`; `()` is the
    /// identity. Whitespace is ignored everywhere.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: String| Error::InvalidPermutation(format!("{msg} in {text:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('".into()))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            if inner.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in inner.split(',') {
                let v: usize = tok
                    .parse()
                    .map_err(|_| bad(format!("bad point {tok:?}")))?;
                if v == 0 || v > degree {
                    return Err(bad(format!("point {v} outside 1..={degree}")));
                }
                cycle.push(v - 1);
            }
            cycles.push(cycle);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for c in cycles {
            out.push('(');
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&pts.join(","));
            out.push(')');
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product. Panics on a degree mismatch; use
    /// [`Permutation::compose`] for the checked form.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        let q = &rhs.images;
        Permutation {
            images: self.images.iter().map(|&a| q[a as usize]).collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[deg {}]", self.to_cycle_string(), self.degree())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Serialized as `{"degree": d, "cycles": "(1,2)(3,4)"}`.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Permutation", 2)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("cycles", &self.to_cycle_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            cycles: String,
        }
        let raw = Raw::deserialize(d)?;
        Permutation::parse_cycles(raw.degree, &raw.cycles).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let q = cyc(8, "(1,5,2)(3,8)");
        let e = Permutation::identity(8);
        assert_eq!(&e * &q, q);
        assert_eq!(&q * &e, q);
    }

    #[test]
    fn three_cycle_squared() {
        let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let expected = Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap();
        assert_eq!(p.compose(&p).unwrap(), expected);
    }

    #[test]
    fn product_applies_left_factor_first() {
        let p = cyc(3, "(1,2)");
        let q = cyc(3, "(2,3)");
        // 1 -> 2 under p, then 2 -> 3 under q.
        assert_eq!((&p * &q).image(0), 2);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(cyc(8, "(1,2,3,4,5,6,7)").order(), 7);
        assert_eq!(cyc(5, "(1,2)(3,4,5)").order(), 6);
        let p = cyc(5, "(1,2)(3,4,5)");
        assert!(p.has_exact_order(6));
        assert!(!p.has_exact_order(3));
        assert!(!p.has_exact_order(12));
        assert!(Permutation::identity(4).has_exact_order(1));
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = cyc(4, "(1,2,3)");
        let g = cyc(4, "(1,4)");
        let c = p.conjugate_by(&g);
        assert_eq!(c, &(&g.inverse() * &p) * &g);
        assert_eq!(c.to_cycle_string(), "(2,3,4)");
    }

    #[test]
    fn cycle_notation_round_trip_and_errors() {
        let p = cyc(9, " ( 1, 4 ,7)(2 ,9) ");
        assert_eq!(p.to_cycle_string(), "(1,4,7)(2,9)");
        assert_eq!(Permutation::identity(3).to_cycle_string(), "()");
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn parity() {
        assert!(cyc(5, "(1,2,3)").is_even());
        assert!(!cyc(5, "(1,2)").is_even());
        assert!(cyc(5, "(1,2)(3,4)").is_even());
    }

    #[test]
    fn powers_and_commutators() {
        let p = cyc(7, "(1,2,3,4,5,6,7)");
        assert_eq!(p.pow(7), Permutation::identity(7));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert!(p.commutator(&p.pow(2)).is_identity());
    }
}
