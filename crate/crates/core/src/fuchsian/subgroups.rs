use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::rational::Rational;
use super::signature::Signature;
use super::snf::smith_diagonal;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest index or group order accepted by the integrality tests.
pub const MAX_ORDER: u64 = 1 << 62;
const MAX_CANDIDATE_PRODUCT: u64 = 10_000_000;

fn hyperbolic_chi(s: &Signature) -> Result<Rational> {
    let chi = s.euler_characteristic();
    if !chi.is_negative() {
        return Err(Error::Precondition(format!("{s} is not hyperbolic (chi = {chi})")));
    }
    Ok(chi)
}

/// Index `chi(sub) / chi(parent)` when it is a positive integer.
pub fn subgroup_index(sub: &Signature, parent: &Signature) -> Result<u64> {
    let ratio = hyperbolic_chi(sub)? / hyperbolic_chi(parent)?;
    ratio
        .to_integer()
        .filter(|&n| n > 0)
        .map(|n| n as u64)
        .ok_or_else(|| {
            Error::NonIntegral(format!("{sub} in {parent}: ratio {ratio} is not a finite-index candidate"))
        })
}

/// Genus of the surface `H/K` when a group of the given order is the
/// quotient of `s` by a surface group `K`: `1 - order * chi / 2`.
pub fn surface_genus_from_order(order: u64, s: &Signature) -> Result<u64> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::Overflow("group order"));
    }
    let chi = hyperbolic_chi(s)?;
    // 2g - 2 = order * (-chi)
    let twice = order as i128 * -(chi.numer() as i128);
    let den = chi.denom() as i128;
    let no_surjection = || {
        Error::NonIntegral(format!(
            "order {order} with {s}: no torsion-free-kernel surjection possible at this order"
        ))
    };
    if twice % den != 0 {
        return Err(no_surjection());
    }
    let two_g_minus_2 = twice / den;
    if two_g_minus_2 % 2 != 0 {
        return Err(no_surjection());
    }
    let g = two_g_minus_2 / 2 + 1;
    if g < 2 || g > MAX_ORDER as i128 {
        return Err(no_surjection());
    }
    Ok(g as u64)
}

fn require_genus_zero(parent: &Signature) -> Result<()> {
    if parent.genus() != 0 {
        return Err(Error::Precondition(format!("{parent} must have genus zero")));
    }
    Ok(())
}

/// Genus from `chi(sub) = index * chi(parent)` given the sub's periods.
fn solve_genus(parent_chi: Rational, index: u64, periods: Vec<u64>) -> Option<Signature> {
    let mut two_h = Rational::integer(2) - Rational::integer(index as i64) * parent_chi;
    for &p in &periods {
        two_h = two_h - (Rational::ONE - Rational::new(1, p as i64));
    }
    let two_h = two_h.to_integer()?;
    if two_h < 0 || two_h % 2 != 0 {
        return None;
    }
    Signature::new((two_h / 2) as u64, periods).ok()
}

/// Signature of the preimage of a subgroup `U` of index `index`.
///
/// `images[i]` is the action on the cosets of `U` of the image of the
/// i-th canonical elliptic generator; the generators follow the sorted
/// period order of `parent`. A cycle of length `l` of the i-th image
/// contributes a period `m_i / l` whenever `l < m_i`.
pub fn subgroup_signature(parent: &Signature, images: &[Permutation], index: u64) -> Result<Signature> {
    require_genus_zero(parent)?;
    let chi = hyperbolic_chi(parent)?;
    if index == 0 || index > MAX_ORDER {
        return Err(Error::Overflow("index"));
    }
    let periods = parent.periods();
    if images.len() != periods.len() {
        return Err(Error::Precondition(format!(
            "{} images for {} periods",
            images.len(),
            periods.len()
        )));
    }
    let mut product = Permutation::identity(index as usize);
    for (g, &m) in images.iter().zip(periods) {
        if g.degree() as u64 != index {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: index as usize,
            });
        }
        if m % g.order() != 0 {
            return Err(Error::Precondition(format!("image order {} does not divide {m}", g.order())));
        }
        product = &product * g;
    }
    if !product.is_identity() {
        return Err(Error::Precondition("product of images is not the identity".into()));
    }
    let mut sub_periods = Vec::new();
    for (g, &m) in images.iter().zip(periods) {
        for l in g.cycle_lengths() {
            let l = l as u64;
            if l < m {
                sub_periods.push(m / l);
            }
        }
    }
    let sub = solve_genus(chi, index, sub_periods)
        .ok_or_else(|| Error::NonIntegral("subgroup genus; inconsistent coset action".into()))?;
    debug_assert_eq!(sub.euler_characteristic(), Rational::integer(index as i64) * chi);
    Ok(sub)
}

/// Finitely generated abelian group `Z^free_rank + sum Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub torsion: Vec<u64>,
    pub free_rank: u64,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Relation matrix on the elliptic generators: one row `m_i e_i` per
/// period and one all-ones row for the long relation.
pub fn relation_matrix(s: &Signature) -> Vec<Vec<i64>> {
    let r = s.periods().len();
    let mut rows: Vec<Vec<i64>> = s
        .periods()
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let mut row = vec![0; r];
            row[i] = m as i64;
            row
        })
        .collect();
    if r > 0 {
        rows.push(vec![1; r]);
    }
    rows
}

pub fn abelianization(s: &Signature) -> Abelianization {
    let diag = if s.periods().is_empty() {
        Vec::new()
    } else {
        smith_diagonal(&relation_matrix(s))
    };
    Abelianization {
        torsion: diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect(),
        free_rank: diag.iter().filter(|&&d| d == 0).count() as u64 + 2 * s.genus(),
    }
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// All multisets of periods `m / l` from partitions of `d` into parts
/// `l` dividing `m`.
fn branching_options(m: u64, d: u64) -> Vec<Vec<u64>> {
    fn rec(parts: &[u64], m: u64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&l, rest)) = parts.split_first() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let mut used = 0;
        loop {
            rec(rest, m, left - used * l, cur, out);
            if used * l + l > left {
                break;
            }
            used += 1;
            if l < m {
                cur.push(m / l);
            }
        }
        if l < m {
            cur.truncate(cur.len() - used as usize);
        }
    }
    let mut parts = divisors(m);
    parts.retain(|&l| l <= d);
    parts.reverse();
    let mut out = Vec::new();
    rec(&parts, m, d, &mut Vec::new(), &mut out);
    out
}

/// Signatures allowed by the branching and Riemann–Hurwitz conditions for
/// a subgroup of index `d`. These are candidates: realizability by a
/// transitive permutation representation is not checked.
pub fn enumerate_subgroup_signatures(parent: &Signature, d: u64) -> Result<Vec<Signature>> {
    require_genus_zero(parent)?;
    if d == 0 {
        return Err(Error::InvalidParameter("index must be at least 1".into()));
    }
    if d > super::signature::MAX_PERIOD {
        return Err(Error::Overflow("index"));
    }
    let chi = parent.euler_characteristic();
    let options: Vec<Vec<Vec<u64>>> = parent.periods().iter().map(|&m| branching_options(m, d)).collect();
    let combos = options
        .iter()
        .try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64))
        .unwrap_or(u64::MAX);
    if combos > MAX_CANDIDATE_PRODUCT {
        return Err(Error::CapExceeded {
            what: "branching combinations",
            cap: MAX_CANDIDATE_PRODUCT,
            actual: combos,
        });
    }
    let mut found = BTreeSet::new();
    let mut idx = vec![0usize; options.len()];
    loop {
        let periods: Vec<u64> = idx.iter().zip(&options).flat_map(|(&i, o)| o[i].iter().copied()).collect();
        if let Some(s) = solve_genus(chi, d, periods) {
            found.insert(s);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(found.into_iter().collect());
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Genus-zero triangle signatures among the candidates of every index
/// `d >= 2`. Such a subgroup has `-chi < 1`, so `d < 1 / -chi(parent)`
/// and the scan is exhaustive.
pub fn triangle_subgroup_candidates(parent: &Signature) -> Result<Vec<(u64, Signature)>> {
    let chi = hyperbolic_chi(parent)?;
    let bound = Rational::ONE / -chi;
    let mut out = Vec::new();
    let mut d = 2;
    while Rational::integer(d as i64) < bound {
        for s in enumerate_subgroup_signatures(parent, d)? {
            if s.genus() == 0 && s.periods().len() == 3 {
                out.push((d, s));
            }
        }
        d += 1;
    }
    Ok(out)
}
