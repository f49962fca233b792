use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::tuples::{GeneratingQuadruple, GeneratingTriple, TupleReport};
use crate::error::{Error, Result};
use crate::perm::{center_order, partition_into_classes, GroupHandle, Permutation, DEFAULT_ENUMERATION_CAP};

/// Quadruple searches refuse more involutions than this unless the set of
/// wanted `n` values is restricted.
pub const DEFAULT_INVOLUTION_CAP: usize = 20_000;
const BLOCK: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub enumeration_cap: u64,
    pub involution_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            involution_cap: DEFAULT_INVOLUTION_CAP,
        }
    }
}

impl SearchConfig {
    pub fn with_threads(threads: usize) -> Self {
        SearchConfig {
            threads: Some(threads),
            ..Default::default()
        }
    }

    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// Elements of one order, split into conjugacy classes.
#[derive(Debug, Clone)]
pub struct ClassedElements {
    pub elements: Vec<Permutation>,
    /// `(index of representative, class size)`, in enumeration order.
    pub classes: Vec<(usize, usize)>,
}

impl ClassedElements {
    pub fn of_order(g: &GroupHandle, k: u64, cap: u64) -> Result<Self> {
        let elements = g.elements_of_order(k, cap)?;
        let classes = partition_into_classes(g, &elements);
        Ok(ClassedElements { elements, classes })
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Permutation> {
        self.classes.iter().map(|&(i, _)| &self.elements[i])
    }
}

/// `|G / Z(G)|`, the number of inner automorphisms.
pub fn inner_automorphism_order(g: &GroupHandle, cap: u64) -> Result<u64> {
    if g.metadata().simple {
        return Ok(g.order());
    }
    Ok(g.order() / center_order(g, cap)?)
}

fn class_counts(g: &GroupHandle, total: u64, cap: u64) -> Result<(Option<u64>, Option<u64>)> {
    let divide = |what: &str, d: u64| -> Result<u64> {
        if !total.is_multiple_of(d) {
            return Err(Error::Integrity(format!("{what} {d} does not divide the tuple count {total}")));
        }
        Ok(total / d)
    };
    let class_count = match g.metadata().aut_order {
        Some(a) => Some(divide("aut_order", a)?),
        None => None,
    };
    let inner = divide("|G/Z(G)|", inner_automorphism_order(g, cap)?)?;
    Ok((class_count, Some(inner)))
}

/// Generating `(x, y)` pairs found by the triple scan: `x` runs over class
/// representatives of order `l`, `y` over all elements of order `m`.
#[derive(Debug, Clone)]
pub struct TripleScan {
    pub orders: [u64; 3],
    pub xs: ClassedElements,
    pub ys: Vec<Permutation>,
    /// `(class index into xs.classes, index into ys)` in search order.
    pub hits: Vec<(usize, usize)>,
}

impl TripleScan {
    pub fn x(&self, hit: (usize, usize)) -> &Permutation {
        &self.xs.elements[self.xs.classes[hit.0].0]
    }

    pub fn y(&self, hit: (usize, usize)) -> &Permutation {
        &self.ys[hit.1]
    }

    /// Number of ordered tuples: each hit stands for a full class of `x`.
    pub fn total(&self) -> u64 {
        self.hits.iter().map(|&(c, _)| self.xs.classes[c].1 as u64).sum()
    }
}

pub fn scan_triples(g: &GroupHandle, orders: [u64; 3], cfg: &SearchConfig) -> Result<TripleScan> {
    let [l, m, k] = orders;
    if orders.iter().any(|&o| o < 2) {
        return Err(Error::InvalidParameter("triple orders must be at least 2".into()));
    }
    if !g.order().is_multiple_of(l) || !g.order().is_multiple_of(m) || !g.order().is_multiple_of(k) {
        return Ok(TripleScan {
            orders,
            xs: ClassedElements {
                elements: Vec::new(),
                classes: Vec::new(),
            },
            ys: Vec::new(),
            hits: Vec::new(),
        });
    }
    let xs = ClassedElements::of_order(g, l, cfg.enumeration_cap)?;
    let ys = if m == l {
        xs.elements.clone()
    } else {
        g.elements_of_order(m, cfg.enumeration_cap)?
    };
    let shards: Vec<(usize, usize)> = (0..xs.classes.len())
        .flat_map(|c| (0..ys.len()).step_by(BLOCK).map(move |s| (c, s)))
        .collect();
    let hits: Vec<Vec<(usize, usize)>> = cfg.install(|| {
        shards
            .par_iter()
            .map(|&(c, start)| {
                let x = &xs.elements[xs.classes[c].0];
                let mut xy = g.identity();
                let mut out = Vec::new();
                for (j, y) in ys.iter().enumerate().skip(start).take(BLOCK) {
                    x.compose_into(y, &mut xy);
                    if xy.has_exact_order(k) && g.is_generated_by(&[x.clone(), y.clone()]) {
                        out.push((c, j));
                    }
                }
                out
            })
            .collect()
    })?;
    Ok(TripleScan {
        orders,
        xs,
        ys,
        hits: hits.into_iter().flatten().collect(),
    })
}

/// Counts ordered generating triples `(x, y, z)`, `xyz = 1`, of exact
/// orders `(l, m, k)`.
pub fn find_triples(g: &GroupHandle, orders: [u64; 3], cfg: &SearchConfig) -> Result<TupleReport<GeneratingTriple>> {
    let scan = scan_triples(g, orders, cfg)?;
    let total = scan.total();
    let (class_count, inner_class_count) = class_counts(g, total, cfg.enumeration_cap)?;
    let witnesses = match scan.hits.first() {
        Some(&h) => vec![GeneratingTriple::new(g, scan.x(h).clone(), scan.y(h).clone(), orders)?],
        None => Vec::new(),
    };
    Ok(TupleReport {
        group: g.name(),
        group_order: g.order(),
        total: Some(total),
        class_count,
        inner_class_count,
        n_distribution: BTreeMap::new(),
        n_set: Vec::new(),
        witnesses,
    })
}

/// What a quadruple search computes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadrupleSearch {
    /// Exact counts per `n`; otherwise only which `n` occur.
    pub count: bool,
    /// Only these values of `n = |x1x2|` are examined.
    pub n_filter: Option<BTreeSet<u64>>,
}

impl QuadrupleSearch {
    pub fn counting() -> Self {
        QuadrupleSearch {
            count: true,
            n_filter: None,
        }
    }

    pub fn existence() -> Self {
        QuadrupleSearch::default()
    }

    pub fn only(mut self, ns: impl IntoIterator<Item = u64>) -> Self {
        self.n_filter = Some(ns.into_iter().collect());
        self
    }
}

#[derive(Default)]
struct QuadShard {
    counts: BTreeMap<u64, u64>,
    witnesses: BTreeMap<u64, (usize, usize, usize)>,
}

/// `x1 * x2 * x3` has order exactly 3; `a = x1 * x2`.
#[inline]
fn product_has_order_three(a: &[u16], c: &[u16]) -> bool {
    let mut moved = false;
    for (i, &ai) in a.iter().enumerate() {
        let j = c[ai as usize];
        let k = c[a[j as usize] as usize];
        let l = c[a[k as usize] as usize];
        if l as usize != i {
            return false;
        }
        moved |= j as usize != i;
    }
    moved
}

/// Generating quadruples `x1x2x3x4 = 1` of exact orders `(2, 2, 2, 3)`,
/// classified by `n = |x1x2|`.
///
/// `x1` runs over involution class representatives and `x2`, `x3` over
/// all involutions; the generation test is done last.
pub fn find_quadruples(
    g: &GroupHandle,
    search: &QuadrupleSearch,
    cfg: &SearchConfig,
) -> Result<TupleReport<GeneratingQuadruple>> {
    let empty = || TupleReport {
        group: g.name(),
        group_order: g.order(),
        total: search.count.then_some(0),
        class_count: None,
        inner_class_count: None,
        n_distribution: BTreeMap::new(),
        n_set: Vec::new(),
        witnesses: Vec::new(),
    };
    if !g.order().is_multiple_of(6) {
        let mut r = empty();
        if search.count {
            (r.class_count, r.inner_class_count) = class_counts(g, 0, cfg.enumeration_cap)?;
        }
        return Ok(r);
    }
    let inv = ClassedElements::of_order(g, 2, cfg.enumeration_cap)?;
    if inv.elements.len() > cfg.involution_cap && search.n_filter.is_none() {
        return Err(Error::CapExceeded {
            what: "involutions in quadruple search",
            cap: cfg.involution_cap as u64,
            actual: inv.elements.len() as u64,
        });
    }
    let wanted = |n: u64| search.n_filter.as_ref().is_none_or(|f| f.contains(&n));
    let shards: Vec<(usize, usize)> = (0..inv.classes.len())
        .flat_map(|c| (0..inv.elements.len()).step_by(BLOCK).map(move |s| (c, s)))
        .collect();
    let elems = &inv.elements;
    let results: Vec<QuadShard> = cfg.install(|| {
        shards
            .par_iter()
            .map(|&(c, start)| {
                let (rep, weight) = inv.classes[c];
                let x1 = &elems[rep];
                let mut shard = QuadShard::default();
                let mut a = g.identity();
                for (j2, x2) in elems.iter().enumerate().skip(start).take(BLOCK) {
                    x1.compose_into(x2, &mut a);
                    let n = a.order();
                    if !wanted(n) || (!search.count && shard.witnesses.contains_key(&n)) {
                        continue;
                    }
                    for (j3, x3) in elems.iter().enumerate() {
                        if !product_has_order_three(a.images(), x3.images()) {
                            continue;
                        }
                        if !search.count && shard.witnesses.contains_key(&n) {
                            break;
                        }
                        if !g.is_generated_by(&[x1.clone(), x2.clone(), x3.clone()]) {
                            continue;
                        }
                        *shard.counts.entry(n).or_default() += weight as u64;
                        shard.witnesses.entry(n).or_insert((rep, j2, j3));
                    }
                }
                shard
            })
            .collect()
    })?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut first: BTreeMap<u64, (usize, usize, usize)> = BTreeMap::new();
    for shard in results {
        for (n, c) in shard.counts {
            *counts.entry(n).or_default() += c;
        }
        for (n, w) in shard.witnesses {
            first.entry(n).or_insert(w);
        }
    }
    let witnesses = first
        .values()
        .map(|&(i, j, k)| GeneratingQuadruple::new(g, elems[i].clone(), elems[j].clone(), elems[k].clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut report = empty();
    report.n_set = first.keys().copied().collect();
    report.witnesses = witnesses;
    if search.count {
        let total: u64 = counts.values().sum();
        report.total = Some(total);
        if search.n_filter.is_none() {
            (report.class_count, report.inner_class_count) = class_counts(g, total, cfg.enumeration_cap)?;
        }
        report.n_distribution = counts;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{make_psl2, make_standard, StandardFamily};

    #[test]
    fn psl27_has_one_hurwitz_class() {
        let g = make_psl2(7).unwrap();
        let r = find_triples(&g, [2, 3, 7], &SearchConfig::default()).unwrap();
        assert_eq!(r.class_count, Some(1));
        assert_eq!(r.total, Some(336));
        assert!(r.witnesses[0].is_hurwitz());
    }

    #[test]
    fn a5_has_no_hurwitz_triple() {
        let g = make_standard(StandardFamily::Alt, 5).unwrap();
        let r = find_triples(&g, [2, 3, 7], &SearchConfig::default()).unwrap();
        assert_eq!(r.total, Some(0));
        let r = find_triples(&g, [2, 3, 5], &SearchConfig::default()).unwrap();
        assert!(r.total.unwrap() > 0);
    }

    #[test]
    fn s4_quadruples() {
        let g = make_standard(StandardFamily::Sym, 4).unwrap();
        let r = find_quadruples(&g, &QuadrupleSearch::counting(), &SearchConfig::default()).unwrap();
        assert_eq!(r.n_set, vec![2, 3, 4]);
        assert_eq!(r.total, Some(216));
        assert_eq!(r.class_count, Some(9));
        let e = find_quadruples(&g, &QuadrupleSearch::existence(), &SearchConfig::default()).unwrap();
        assert_eq!(e.n_set, r.n_set);
        assert_eq!(e.witnesses, r.witnesses);
    }

    #[test]
    fn psl27_has_no_quadruple() {
        let g = make_psl2(7).unwrap();
        let r = find_quadruples(&g, &QuadrupleSearch::counting(), &SearchConfig::default()).unwrap();
        assert_eq!(r.total, Some(0));
    }

    #[test]
    fn order_three_kernel() {
        let a = Permutation::parse_cycles(3, "(1,2,3)").unwrap();
        let id = Permutation::identity(3);
        assert!(product_has_order_three(a.images(), id.images()));
        assert!(!product_has_order_three(id.images(), id.images()));
    }
}
