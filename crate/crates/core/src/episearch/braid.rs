use std::collections::HashMap;

use serde::Serialize;

use super::search::SearchConfig;
use crate::error::{Error, Result};
use crate::perm::{GroupHandle, Permutation};

/// Orbits of generating quadruples under simultaneous conjugation and the
/// braid moves that keep the order-3 member last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidOrbits {
    /// Ordered generating quadruples.
    pub tuples: u64,
    /// Orbits under conjugation alone.
    pub conjugacy_orbits: u64,
    /// Orbits under conjugation and braid moves.
    pub orbits: u64,
    /// Sorted values of `|x1x2|` met in each braid orbit.
    pub orbit_n_sets: Vec<Vec<u64>>,
}

type Quad = [Permutation; 3];

fn sigma(q: &Quad, i: usize) -> Quad {
    // (a, b) -> (a b a^-1, a); the product of the pair is unchanged.
    let mut out = q.clone();
    let a = &q[i];
    let b = &q[i + 1];
    out[i] = b.conjugate_by(&a.inverse());
    out[i + 1] = a.clone();
    out
}

/// The square of the move at positions 3-4, written on `(x1, x2, x3)`.
fn sigma3_squared(q: &Quad) -> Quad {
    let x4 = (&(&q[0] * &q[1]) * &q[2]).inverse();
    let c = &q[2] * &x4;
    let mut out = q.clone();
    out[2] = q[2].conjugate_by(&c.inverse());
    out
}

/// Counts orbits of all ordered generating `(2,2,2,3)` quadruples. Only
/// practical for small groups; refuses more than `cap` tuples.
pub fn quadruple_braid_orbits(g: &GroupHandle, cfg: &SearchConfig, cap: usize) -> Result<BraidOrbits> {
    let inv = g.elements_of_order(2, cfg.enumeration_cap)?;
    let mut quads: Vec<Quad> = Vec::new();
    for x1 in &inv {
        for x2 in &inv {
            let a = x1 * x2;
            for x3 in &inv {
                let b = &a * x3;
                if b.has_exact_order(3) && g.is_generated_by(&[x1.clone(), x2.clone(), x3.clone()]) {
                    quads.push([x1.clone(), x2.clone(), x3.clone()]);
                    if quads.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "quadruples for orbit count",
                            cap: cap as u64,
                            actual: quads.len() as u64,
                        });
                    }
                }
            }
        }
    }
    let index: HashMap<Quad, usize> = quads.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
    let look = |q: &Quad| *index.get(q).expect("moves preserve generating quadruples");
    let orbits_under = |braids: bool| -> (u64, Vec<Vec<u64>>) {
        let mut seen = vec![false; quads.len()];
        let mut count = 0;
        let mut n_sets = Vec::new();
        for start in 0..quads.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            let mut ns = std::collections::BTreeSet::new();
            while let Some(i) = stack.pop() {
                let q = &quads[i];
                ns.insert((&q[0] * &q[1]).order());
                let mut next: Vec<Quad> = g
                    .generators()
                    .iter()
                    .map(|s| [q[0].conjugate_by(s), q[1].conjugate_by(s), q[2].conjugate_by(s)])
                    .collect();
                if braids {
                    next.push(sigma(q, 0));
                    next.push(sigma(q, 1));
                    next.push(sigma3_squared(q));
                }
                for r in next {
                    let j = look(&r);
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            n_sets.push(ns.into_iter().collect());
        }
        (count, n_sets)
    };
    let (conjugacy_orbits, _) = orbits_under(false);
    let (orbits, orbit_n_sets) = orbits_under(true);
    Ok(BraidOrbits {
        tuples: quads.len() as u64,
        conjugacy_orbits,
        orbits,
        orbit_n_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{make_standard, StandardFamily};

    #[test]
    fn moves_keep_product_and_orders() {
        let p = |s: &str| Permutation::parse_cycles(4, s).unwrap();
        let q: Quad = [p("(1,2)"), p("(2,3)"), p("(3,4)")];
        let prod = |q: &Quad| &(&q[0] * &q[1]) * &q[2];
        for r in [sigma(&q, 0), sigma(&q, 1)] {
            assert_eq!(prod(&r), prod(&q));
            assert!(r.iter().all(|x| x.has_exact_order(2)));
        }
        // The last move changes x4 within its class.
        let q: Quad = [p("(1,2)"), p("(1,2)"), p("(1,2)")];
        let r = sigma3_squared(&q);
        assert_eq!(prod(&r).cycle_lengths(), prod(&q).cycle_lengths());
        assert!(r[2].has_exact_order(2));
    }

    #[test]
    fn s4_is_a_single_orbit() {
        let g = make_standard(StandardFamily::Sym, 4).unwrap();
        let o = quadruple_braid_orbits(&g, &SearchConfig::default(), 10_000).unwrap();
        assert_eq!(o.tuples, 216);
        assert_eq!(o.conjugacy_orbits, 9);
        assert_eq!(o.orbits, 1);
        assert_eq!(o.orbit_n_sets, vec![vec![2, 3, 4]]);
    }
}
