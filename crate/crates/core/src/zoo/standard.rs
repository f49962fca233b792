use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{GroupHandle, GroupMetadata, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardFamily {
    Sym,
    Alt,
    Dihedral,
    Cyclic,
}

impl fmt::Display for StandardFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StandardFamily::Sym => "sym",
            StandardFamily::Alt => "alt",
            StandardFamily::Dihedral => "dih",
            StandardFamily::Cyclic => "cyc",
        })
    }
}

impl FromStr for StandardFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(StandardFamily::Sym),
            "alt" => Ok(StandardFamily::Alt),
            "dih" | "dihedral" => Ok(StandardFamily::Dihedral),
            "cyc" | "cyclic" => Ok(StandardFamily::Cyclic),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| crate::perm::gcd(k, n) == 1).count() as u64
}

fn cycle(deg: usize, points: impl Iterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.collect();
    Permutation::from_cycles(deg, &[&pts]).expect("valid cycle")
}

/// Symmetric, alternating, dihedral and cyclic groups in their natural
/// actions. `dihedral(1)` acts on 2 points and `dihedral(2)` regularly on 4.
pub fn make_standard(family: StandardFamily, n: usize) -> Result<GroupHandle> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let nn = n as u64;
    let (gens, order, aut, name, simple) = match family {
        StandardFamily::Sym | StandardFamily::Alt if n > 20 => {
            return Err(Error::Overflow("n! beyond 20"));
        }
        StandardFamily::Sym => {
            let gens = if n == 1 {
                vec![Permutation::identity(1)]
            } else {
                vec![cycle(n, 0..n), cycle(n, 0..2)]
            };
            let aut = match n {
                1 | 2 => 1,
                6 => 1440,
                _ => factorial(nn),
            };
            (gens, factorial(nn), aut, format!("S{n}"), false)
        }
        StandardFamily::Alt => {
            let gens = if n < 3 {
                vec![Permutation::identity(n)]
            } else if n % 2 == 1 {
                vec![cycle(n, 0..n), cycle(n, 0..3)]
            } else {
                vec![cycle(n, 1..n), cycle(n, 0..3)]
            };
            let order = if n < 2 { 1 } else { factorial(nn) / 2 };
            let aut = match n {
                1 | 2 => 1,
                3 => 2,
                6 => 1440,
                _ => factorial(nn),
            };
            (gens, order, aut, format!("A{n}"), n >= 5)
        }
        StandardFamily::Dihedral => {
            let gens = match n {
                1 => vec![cycle(2, 0..2)],
                2 => vec![
                    Permutation::parse_cycles(4, "(1,2)(3,4)")?,
                    Permutation::parse_cycles(4, "(1,3)(2,4)")?,
                ],
                _ => {
                    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
                    vec![cycle(n, 0..n), Permutation::from_images(reflection)?]
                }
            };
            let aut = match n {
                1 => 1,
                2 => 6,
                _ => nn * euler_phi(nn),
            };
            (gens, 2 * nn, aut, format!("D{n}"), false)
        }
        StandardFamily::Cyclic => {
            let gens = if n == 1 {
                vec![Permutation::identity(1)]
            } else {
                vec![cycle(n, 0..n)]
            };
            (gens, nn, euler_phi(nn), format!("C{n}"), false)
        }
    };
    GroupHandle::build(
        gens,
        GroupMetadata {
            known_order: Some(order),
            aut_order: Some(aut),
            name: Some(name),
            simple,
        },
    )
}

/// Direct product acting on the disjoint union of the two point sets.
///
/// The automorphism-group order is recorded only when both factors are
/// declared simple and have different orders (hence are non-isomorphic),
/// where it is the product of the factors' automorphism-group orders.
pub fn direct_product(g: &GroupHandle, h: &GroupHandle) -> Result<GroupHandle> {
    let (dg, dh) = (g.degree(), h.degree());
    let degree = dg + dh;
    if degree > crate::perm::MAX_DEGREE {
        return Err(Error::InvalidParameter("product degree too large".into()));
    }
    let mut gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| x.shifted(0, degree))
        .collect();
    gens.extend(h.generators().iter().map(|y| y.shifted(dg, degree)));
    let order = g
        .order()
        .checked_mul(h.order())
        .ok_or(Error::Overflow("product order"))?;
    let (mg, mh) = (g.metadata(), h.metadata());
    let aut_order = match (mg.simple && mh.simple && g.order() != h.order(), mg.aut_order, mh.aut_order) {
        (true, Some(a), Some(b)) => a.checked_mul(b),
        _ => None,
    };
    GroupHandle::build(
        gens,
        GroupMetadata {
            known_order: Some(order),
            aut_order,
            name: Some(format!("{} x {}", g.name(), h.name())),
            simple: false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_orders() {
        use StandardFamily::*;
        assert_eq!(make_standard(Dihedral, 6).unwrap().order(), 12);
        assert_eq!(make_standard(Sym, 4).unwrap().order(), 24);
        assert_eq!(make_standard(Alt, 9).unwrap().order(), 181440);
        assert_eq!(make_standard(Alt, 4).unwrap().order(), 12);
        assert_eq!(make_standard(Alt, 6).unwrap().order(), 360);
        assert_eq!(make_standard(Cyclic, 6).unwrap().order(), 6);
        for n in 1..=5 {
            assert_eq!(make_standard(Dihedral, n).unwrap().order(), 2 * n as u64);
            assert_eq!(make_standard(Cyclic, n).unwrap().order(), n as u64);
            assert_eq!(make_standard(Sym, n).unwrap().order(), factorial(n as u64));
        }
        assert!(make_standard(Sym, 0).is_err());
        assert!(make_standard(Sym, 21).is_err());
    }

    #[test]
    fn product_with_trivial() {
        let s4 = make_standard(StandardFamily::Sym, 4).unwrap();
        let one = make_standard(StandardFamily::Cyclic, 1).unwrap();
        let p = direct_product(&s4, &one).unwrap();
        assert_eq!(p.order(), 24);
        assert_eq!(p.degree(), 5);
        assert_eq!(p.metadata().aut_order, None);
    }
}
