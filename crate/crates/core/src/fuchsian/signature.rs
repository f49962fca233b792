use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest period or genus accepted.
pub const MAX_PERIOD: u64 = 1 << 20;
const MAX_PERIODS: usize = 64;
/// Bound on the lcm of the periods, so χ stays well inside 64 bits.
const MAX_PERIOD_LCM: u64 = 1 << 40;

/// Signature `(h; m1, ..., mr)` of a cocompact Fuchsian group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    genus: u64,
    periods: Vec<u64>,
}

impl Signature {
    pub fn new(genus: u64, mut periods: Vec<u64>) -> Result<Signature> {
        if genus > MAX_PERIOD {
            return Err(Error::Overflow("genus"));
        }
        if periods.len() > MAX_PERIODS {
            return Err(Error::Overflow("period count"));
        }
        if let Some(&m) = periods.iter().find(|&&m| !(2..=MAX_PERIOD).contains(&m)) {
            return Err(Error::InvalidParameter(format!("period {m} out of range")));
        }
        let mut l = 1u64;
        for &m in &periods {
            l = crate::perm::checked_lcm(l, m)
                .filter(|&l| l <= MAX_PERIOD_LCM)
                .ok_or(Error::Overflow("period lcm"))?;
        }
        periods.sort_unstable();
        Ok(Signature { genus, periods })
    }

    /// Genus-zero signature with the given periods.
    pub fn sphere(periods: &[u64]) -> Result<Signature> {
        Signature::new(0, periods.to_vec())
    }

    pub fn triangle(a: u64, b: u64, c: u64) -> Result<Signature> {
        Signature::sphere(&[a, b, c])
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn euler_characteristic(&self) -> Rational {
        euler_characteristic(self)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler_characteristic().is_negative()
    }

    /// Short form: `(2,3,7)` for genus zero, otherwise the full form.
    pub fn short(&self) -> String {
        if self.genus == 0 && !self.periods.is_empty() {
            let p: Vec<String> = self.periods.iter().map(u64::to_string).collect();
            format!("({})", p.join(","))
        } else {
            self.to_string()
        }
    }
}

/// `2 - 2h - sum(1 - 1/m)`.
pub fn euler_characteristic(s: &Signature) -> Rational {
    let mut chi = Rational::integer(2 - 2 * s.genus as i64);
    for &m in &s.periods {
        chi = chi - (Rational::ONE - Rational::new(1, m as i64));
    }
    chi
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        write!(f, "({};{})", self.genus, p.join(","))
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts `(h;m1,...,mr)`, `(h;)`, and the genus-zero shorthand `(m1,...)`.
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Signature> {
        let bad = |why: &str| Error::InvalidParameter(format!("bad signature {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let (genus, list) = match inner.split_once(';') {
            Some((h, rest)) => (h.parse::<u64>().map_err(|_| bad("genus"))?, rest),
            None => (0, inner),
        };
        let periods = if list.is_empty() || list == "-" {
            Vec::new()
        } else {
            list.split(',')
                .map(|m| m.parse::<u64>().map_err(|_| bad("period")))
                .collect::<Result<Vec<_>>>()?
        };
        Signature::new(genus, periods)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(sig("(0;2,3,7)"), sig("(7,3,2)"));
        assert_eq!(sig("( 0 ; 7 , 3 , 2 )").to_string(), "(0;2,3,7)");
        assert_eq!(sig("(1;)").periods(), &[] as &[u64]);
        assert_eq!(sig("(0;)").to_string(), "(0;)");
        assert_eq!(sig("(0;2,2,2,3)").short(), "(2,2,2,3)");
        for bad in ["0;2,3", "(0;1,3)", "(x;2)", "(0;2,,3)", "()a"] {
            assert!(bad.parse::<Signature>().is_err(), "{bad}");
        }
    }

    #[test]
    fn chi_values() {
        assert_eq!(sig("(0;2,3,7)").euler_characteristic(), Rational::new(-1, 42));
        assert_eq!(sig("(0;)").euler_characteristic(), Rational::integer(2));
        assert_eq!(sig("(0;2,2,2,3)").euler_characteristic(), Rational::new(-1, 6));
        assert_eq!(sig("(1;)").euler_characteristic(), Rational::ZERO);
        assert!(!sig("(2,3,6)").is_hyperbolic());
        assert!(sig("(2,3,7)").is_hyperbolic());
    }
}
