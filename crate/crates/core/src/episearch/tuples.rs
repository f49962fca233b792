use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{GroupHandle, Permutation};

fn exact_order(p: &Permutation, k: u64, what: &str) -> Result<()> {
    if !p.has_exact_order(k) {
        return Err(Error::Precondition(format!("{what} has order {}, expected {k}", p.order())));
    }
    Ok(())
}

fn in_group(g: &GroupHandle, ps: &[&Permutation]) -> Result<()> {
    for p in ps {
        if p.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: g.degree(),
            });
        }
        if !g.contains(p) {
            return Err(Error::NotSubgroup(format!("{p} is not an element of {}", g.name())));
        }
    }
    Ok(())
}

/// `(x, y, z)` with `xyz = 1`, exact orders `(l, m, k)`, generating `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingTriple {
    pub x: Permutation,
    pub y: Permutation,
    pub z: Permutation,
    pub orders: [u64; 3],
}

impl GeneratingTriple {
    /// Validates `(x, y)` from scratch; `z` is `(xy)^-1`.
    pub fn new(g: &GroupHandle, x: Permutation, y: Permutation, orders: [u64; 3]) -> Result<Self> {
        in_group(g, &[&x, &y])?;
        let z = (&x * &y).inverse();
        exact_order(&x, orders[0], "x")?;
        exact_order(&y, orders[1], "y")?;
        exact_order(&z, orders[2], "z")?;
        if !g.is_generated_by(&[x.clone(), y.clone()]) {
            return Err(Error::Precondition("x and y do not generate the group".into()));
        }
        Ok(GeneratingTriple { x, y, z, orders })
    }

    pub fn hurwitz(g: &GroupHandle, x: Permutation, y: Permutation) -> Result<Self> {
        GeneratingTriple::new(g, x, y, [2, 3, 7])
    }

    pub fn is_hurwitz(&self) -> bool {
        self.orders == [2, 3, 7]
    }
}

/// `(x1, x2, x3, x4)` with `x1x2x3x4 = 1`, exact orders `(2, 2, 2, 3)`,
/// generating `G`; `n` is the order of `x1x2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingQuadruple {
    pub x1: Permutation,
    pub x2: Permutation,
    pub x3: Permutation,
    pub x4: Permutation,
    pub n: u64,
}

impl GeneratingQuadruple {
    /// Validates `(x1, x2, x3)` from scratch; `x4` is `(x1x2x3)^-1`.
    pub fn new(g: &GroupHandle, x1: Permutation, x2: Permutation, x3: Permutation) -> Result<Self> {
        in_group(g, &[&x1, &x2, &x3])?;
        let x12 = &x1 * &x2;
        let x4 = (&x12 * &x3).inverse();
        exact_order(&x1, 2, "x1")?;
        exact_order(&x2, 2, "x2")?;
        exact_order(&x3, 2, "x3")?;
        exact_order(&x4, 3, "x4")?;
        let n = x12.order();
        let n34 = (&x3 * &x4).order();
        if n != n34 {
            return Err(Error::Integrity(format!("|x1x2| = {n} but |x3x4| = {n34}")));
        }
        if !g.is_generated_by(&[x1.clone(), x2.clone(), x3.clone()]) {
            return Err(Error::Precondition("quadruple does not generate the group".into()));
        }
        Ok(GeneratingQuadruple { x1, x2, x3, x4, n })
    }

    /// Full check of a quadruple supplied with its fourth member.
    pub fn validate_full(
        g: &GroupHandle,
        x1: Permutation,
        x2: Permutation,
        x3: Permutation,
        x4: &Permutation,
    ) -> Result<Self> {
        let q = GeneratingQuadruple::new(g, x1, x2, x3)?;
        if &q.x4 != x4 {
            return Err(Error::Precondition("x1x2x3x4 is not the identity".into()));
        }
        Ok(q)
    }
}

/// Exact counts of ordered generating tuples.
///
/// `total` counts ordered tuples; every automorphism acts freely on
/// them, so `class_count = total / |Aut G|` and `inner_class_count =
/// total / |G/Z(G)|` are integers. In existence mode only `n_set` and
/// the witnesses are filled in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleReport<W> {
    pub group: String,
    pub group_order: u64,
    pub total: Option<u64>,
    pub class_count: Option<u64>,
    pub inner_class_count: Option<u64>,
    /// Quadruples only: `n -> number of ordered tuples`.
    pub n_distribution: BTreeMap<u64, u64>,
    pub n_set: Vec<u64>,
    pub witnesses: Vec<W>,
}

impl<W> TupleReport<W> {
    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}
