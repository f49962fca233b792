use serde::Serialize;

use super::search::{scan_triples, ClassedElements, SearchConfig};
use super::tuples::{GeneratingQuadruple, GeneratingTriple};
use crate::error::{Error, Result};
use crate::perm::{GroupHandle, Permutation};

/// An element `z` of order `k` and an involution `t` with `t z t = z^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionWitness {
    pub z: Permutation,
    pub t: Permutation,
}

fn inverts(t: &Permutation, z: &Permutation, z_inv: &Permutation) -> bool {
    &z.conjugate_by(t) == z_inv
}

/// Whether some involution inverts an element of order `k`, that is
/// whether `G` has a dihedral subgroup of order `2k`. Checking one
/// element per class suffices.
pub fn inverting_involution_exists(g: &GroupHandle, k: u64, cfg: &SearchConfig) -> Result<Option<InversionWitness>> {
    if k < 3 {
        return Err(Error::InvalidParameter("k must be at least 3".into()));
    }
    if !g.order().is_multiple_of(2 * k) {
        return Ok(None);
    }
    let zs = ClassedElements::of_order(g, k, cfg.enumeration_cap)?;
    let invs = g.elements_of_order(2, cfg.enumeration_cap)?;
    for z in zs.representatives() {
        let z_inv = z.inverse();
        if let Some(t) = invs.iter().find(|t| inverts(t, z, &z_inv)) {
            return Ok(Some(InversionWitness {
                z: z.clone(),
                t: t.clone(),
            }));
        }
    }
    Ok(None)
}

/// Extends a Hurwitz triple `(a, b)` with `z = ab` by an involution `t`
/// inverting `z`: `(t, t z^-1, a, b)` is a generating quadruple with
/// `n = 7`.
pub fn g7_quadruple_from_triple(
    g: &GroupHandle,
    triple: &GeneratingTriple,
    t: &Permutation,
) -> Result<GeneratingQuadruple> {
    if !triple.is_hurwitz() {
        return Err(Error::Precondition("a (2,3,7) triple is required".into()));
    }
    let z = &triple.x * &triple.y;
    let z_inv = z.inverse();
    if !t.has_exact_order(2) || !g.contains(t) || !inverts(t, &z, &z_inv) {
        return Err(Error::Precondition("t must be an involution of G inverting xy".into()));
    }
    let quad = GeneratingQuadruple::new(g, t.clone(), t * &z_inv, triple.x.clone())?;
    if quad.x4 != triple.y || quad.n != 7 {
        return Err(Error::Integrity("constructed quadruple does not close up with n = 7".into()));
    }
    Ok(quad)
}

/// Looks for an involution inverting `xy` and builds the quadruple.
pub fn g7_quadruple_search(
    g: &GroupHandle,
    triple: &GeneratingTriple,
    cfg: &SearchConfig,
) -> Result<Option<GeneratingQuadruple>> {
    let z = &triple.x * &triple.y;
    let z_inv = z.inverse();
    let invs = g.elements_of_order(2, cfg.enumeration_cap)?;
    match invs.iter().find(|t| inverts(t, &z, &z_inv)) {
        Some(t) => g7_quadruple_from_triple(g, triple, t).map(Some),
        None => Ok(None),
    }
}

/// An involution `t` with `t x t = x` and `t y t = y^-1`, which extends
/// the triple to the extended triangle group.
pub fn extended_hurwitz_test(g: &GroupHandle, triple: &GeneratingTriple, cfg: &SearchConfig) -> Result<Option<Permutation>> {
    let invs = g.elements_of_order(2, cfg.enumeration_cap)?;
    let y_inv = triple.y.inverse();
    Ok(invs
        .into_iter()
        .find(|t| triple.x.conjugate_by(t) == triple.x && triple.y.conjugate_by(t) == y_inv))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedSurvey {
    /// Hurwitz triples examined, one per class of `x` and choice of `y`.
    pub triples: u64,
    pub extendable: u64,
    pub witness: Option<(GeneratingTriple, Permutation)>,
}

/// Runs the extension test on every Hurwitz triple with `x` a class
/// representative. Extendability is invariant under automorphisms, so
/// this decides it for every class of triples.
pub fn extended_hurwitz_survey(g: &GroupHandle, cfg: &SearchConfig) -> Result<ExtendedSurvey> {
    let scan = scan_triples(g, [2, 3, 7], cfg)?;
    let invs = g.elements_of_order(2, cfg.enumeration_cap)?;
    let mut out = ExtendedSurvey {
        triples: scan.hits.len() as u64,
        extendable: 0,
        witness: None,
    };
    let mut centralizing: Vec<(usize, Vec<&Permutation>)> = Vec::new();
    for &hit in &scan.hits {
        let x = scan.x(hit);
        let cent = match centralizing.iter().position(|(c, _)| *c == hit.0) {
            Some(i) => &centralizing[i].1,
            None => {
                centralizing.push((hit.0, invs.iter().filter(|t| &x.conjugate_by(t) == x).collect()));
                &centralizing.last().expect("just pushed").1
            }
        };
        let y = scan.y(hit);
        let y_inv = y.inverse();
        if let Some(t) = cent.iter().find(|t| y.conjugate_by(t) == y_inv) {
            out.extendable += 1;
            if out.witness.is_none() {
                let triple = GeneratingTriple::hurwitz(g, x.clone(), y.clone())?;
                out.witness = Some((triple, (*t).clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::episearch::find_triples;
    use crate::zoo::{make_pgl2, make_psl2, make_standard, StandardFamily};

    #[test]
    fn dihedral_of_order_fourteen() {
        let cfg = SearchConfig::default();
        assert!(inverting_involution_exists(&make_psl2(7).unwrap(), 7, &cfg).unwrap().is_none());
        assert!(inverting_involution_exists(&make_pgl2(7).unwrap(), 7, &cfg).unwrap().is_some());
        let s4 = make_standard(StandardFamily::Sym, 4).unwrap();
        assert!(inverting_involution_exists(&s4, 7, &cfg).unwrap().is_none());
    }

    #[test]
    fn g7_construction() {
        let cfg = SearchConfig::default();
        let g = make_psl2(27).unwrap();
        let triple = find_triples(&g, [2, 3, 7], &cfg).unwrap().witnesses.remove(0);
        let quad = g7_quadruple_search(&g, &triple, &cfg).unwrap().unwrap();
        assert_eq!(quad.n, 7);
        let h = make_psl2(7).unwrap();
        let triple = find_triples(&h, [2, 3, 7], &cfg).unwrap().witnesses.remove(0);
        assert!(g7_quadruple_search(&h, &triple, &cfg).unwrap().is_none());
        let t = h.elements_of_order(2, 1000).unwrap().remove(0);
        assert!(g7_quadruple_from_triple(&h, &triple, &t).is_err());
    }
}
