//! PSL2(q) and PGL2(q) acting on the projective line.
//!
//! Point `i < q` is the field element with index `i`; point `q` is infinity.

use super::field::{Elem, FiniteField};
use crate::error::{Error, Result};
use crate::perm::{GroupHandle, GroupMetadata, Permutation};

/// The fractional linear map `x -> (a x + b) / (c x + d)` on the projective
/// line over `k`, as a permutation of `q + 1` points.
pub fn mobius(k: &FiniteField, a: Elem, b: Elem, c: Elem, d: Elem) -> Permutation {
    let q = k.order() as usize;
    let det = k.sub(k.mul(a, d), k.mul(b, c));
    assert_ne!(det, 0, "singular matrix");
    let inf = q;
    let images: Vec<usize> = (0..=q)
        .map(|x| {
            if x == inf {
                return if c == 0 { inf } else { k.mul(a, k.inv(c)) as usize };
            }
            let x = x as Elem;
            let num = k.add(k.mul(a, x), b);
            let den = k.add(k.mul(c, x), d);
            if den == 0 {
                inf
            } else {
                k.mul(num, k.inv(den)) as usize
            }
        })
        .collect();
    Permutation::from_images(images).expect("fractional linear maps are bijective")
}

fn linear_order(q: u64) -> Result<u64> {
    q.checked_mul(q * q - 1).ok_or(Error::Overflow("|PGL2(q)|"))
}

fn check_q(q: u64) -> Result<FiniteField> {
    if q < 4 {
        return Err(Error::InvalidParameter(format!("q = {q} must be at least 4")));
    }
    if q > 65534 {
        return Err(Error::InvalidParameter(format!("q = {q} exceeds the point limit")));
    }
    FiniteField::new(q)
}

/// PSL2(q) on the projective line, generated by `x -> x + 1`,
/// `x -> a x` with `a` a generator of the nonzero squares, and
/// `x -> -1/x`.
pub fn make_psl2(q: u64) -> Result<GroupHandle> {
    let k = check_q(q)?;
    psl2_over(&k)
}

/// PSL2 over an explicitly given field.
pub fn psl2_over(k: &FiniteField) -> Result<GroupHandle> {
    let q = k.order();
    let (one, zero) = (k.one(), k.zero());
    let square_gen = k.mul(k.primitive(), k.primitive());
    let gens = vec![
        mobius(k, one, one, zero, one),
        mobius(k, square_gen, zero, zero, one),
        mobius(k, zero, k.neg(one), one, zero),
    ];
    let full = linear_order(q)?;
    let order = if q.is_multiple_of(2) { full } else { full / 2 };
    GroupHandle::build(
        gens,
        GroupMetadata {
            known_order: Some(order),
            aut_order: Some(full * k.degree() as u64),
            name: Some(format!("PSL2({q})")),
            simple: true,
        },
    )
}

/// PGL2(q): as PSL2(q) but with `x -> z x` for a primitive `z`.
pub fn make_pgl2(q: u64) -> Result<GroupHandle> {
    if q == 3 {
        // Small case allowed for the S4 comparison; the field code is generic.
        let k = FiniteField::new(3)?;
        return pgl2_over(&k);
    }
    let k = check_q(q)?;
    pgl2_over(&k)
}

fn pgl2_over(k: &FiniteField) -> Result<GroupHandle> {
    let q = k.order();
    let (one, zero) = (k.one(), k.zero());
    let gens = vec![
        mobius(k, one, one, zero, one),
        mobius(k, k.primitive(), zero, zero, one),
        mobius(k, zero, k.neg(one), one, zero),
    ];
    let order = linear_order(q)?;
    GroupHandle::build(
        gens,
        GroupMetadata {
            known_order: Some(order),
            aut_order: Some(order * k.degree() as u64),
            name: Some(format!("PGL2({q})")),
            simple: q.is_multiple_of(2) && q >= 4,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{derived_subgroup, DEFAULT_ENUMERATION_CAP};

    #[test]
    fn psl2_orders_and_degrees() {
        for (q, deg, order) in [(7, 8, 168), (8, 9, 504), (27, 28, 9828), (4, 5, 60), (5, 6, 60)] {
            let g = make_psl2(q).unwrap();
            assert_eq!((g.degree(), g.order()), (deg, order), "q = {q}");
        }
    }

    #[test]
    fn non_prime_powers_rejected() {
        assert!(matches!(make_psl2(6), Err(Error::NotPrimePower(6))));
        assert!(make_psl2(3).is_err());
    }

    #[test]
    fn pgl2_contains_psl2() {
        let pgl = make_pgl2(7).unwrap();
        assert_eq!(pgl.order(), 336);
        let psl = make_psl2(7).unwrap();
        assert!(psl.generators().iter().all(|g| pgl.contains(g)));
        assert_eq!(make_pgl2(3).unwrap().order(), 24);
    }

    #[test]
    fn psl2_is_perfect_for_listed_q() {
        for q in [7, 8, 13, 27, 49] {
            let g = make_psl2(q).unwrap();
            assert_eq!(derived_subgroup(&g).order(), g.order(), "q = {q}");
        }
    }

    fn order_census(g: &GroupHandle) -> Vec<(u64, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for x in g.elements(DEFAULT_ENUMERATION_CAP).unwrap() {
            *counts.entry(x.order()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    #[test]
    fn construction_independent_of_modulus() {
        for (p, f) in [(2u64, 3u32), (3, 3)] {
            let mut moduli = super::super::field::irreducibles(p, f);
            let k1 = FiniteField::with_modulus(p, moduli.next().unwrap()).unwrap();
            let k2 = FiniteField::with_modulus(p, moduli.next().unwrap()).unwrap();
            assert_ne!(k1.modulus(), k2.modulus());
            let (g1, g2) = (psl2_over(&k1).unwrap(), psl2_over(&k2).unwrap());
            assert_eq!(g1.order(), g2.order());
            assert_eq!(order_census(&g1), order_census(&g2));
        }
    }

    #[test]
    fn pgl2_sharply_three_transitive() {
        for q in [4u64, 5, 7, 8] {
            let g = make_pgl2(q).unwrap();
            let n = q as usize + 1;
            let mut seen = std::collections::HashSet::new();
            let mut stack = vec![(0usize, 1usize, 2usize)];
            seen.insert(stack[0]);
            while let Some((a, b, c)) = stack.pop() {
                for s in g.generators() {
                    let t = (s.image(a), s.image(b), s.image(c));
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
            assert_eq!(seen.len(), n * (n - 1) * (n - 2));
            assert_eq!(seen.len() as u64, g.order());
        }
    }
}
