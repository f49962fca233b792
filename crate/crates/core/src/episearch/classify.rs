use serde::Serialize;

use super::search::{find_quadruples, find_triples, QuadrupleSearch, SearchConfig};
use super::tuples::{GeneratingQuadruple, GeneratingTriple};
use crate::error::{Error, Result};
use crate::fuchsian::{surface_genus_from_order, Signature};
use crate::perm::GroupHandle;

/// Values of `n` examined when the full quadruple search is capped.
pub const FLAG_VALUES: [u64; 5] = [2, 3, 4, 5, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub hurwitz: bool,
    pub maximal_reducible: bool,
    /// Some `n` in 2..=5.
    pub handlebody: bool,
    /// `n = 2` occurs.
    pub bounded_surface: bool,
    /// `n = 7` occurs.
    pub g7: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub group: String,
    pub order: u64,
    pub flags: Flags,
    pub hurwitz_triples: u64,
    pub hurwitz_class_count: Option<u64>,
    pub hurwitz_inner_class_count: Option<u64>,
    pub n_set: Vec<u64>,
    /// False when only the values in `FLAG_VALUES` were searched.
    pub n_set_complete: bool,
    pub hurwitz_genus: Option<u64>,
    pub reducible_genus: Option<u64>,
    pub hurwitz_witness: Option<GeneratingTriple>,
    pub quadruple_witnesses: Vec<GeneratingQuadruple>,
}

pub fn classify(g: &GroupHandle, cfg: &SearchConfig) -> Result<ClassificationReport> {
    let triples = find_triples(g, [2, 3, 7], cfg)?;
    let involutions_capped = g.order().is_multiple_of(2) && {
        let n = g.elements(cfg.enumeration_cap)?.filter(|x| x.has_exact_order(2)).count();
        n > cfg.involution_cap
    };
    let search = if involutions_capped {
        QuadrupleSearch::existence().only(FLAG_VALUES)
    } else {
        QuadrupleSearch::existence()
    };
    let quads = find_quadruples(g, &search, cfg)?;
    let has = |n: u64| quads.n_set.contains(&n);
    let total = triples.total.unwrap_or(0);
    let flags = Flags {
        hurwitz: total > 0,
        maximal_reducible: !quads.n_set.is_empty(),
        handlebody: (2..=5).any(has),
        bounded_surface: has(2),
        g7: has(7),
    };
    if (flags.bounded_surface && !flags.handlebody) || (flags.handlebody && !flags.maximal_reducible) {
        return Err(Error::Integrity("classification flags are inconsistent".into()));
    }
    let genus = |ok: bool, s: &str| -> Result<Option<u64>> {
        if !ok {
            return Ok(None);
        }
        surface_genus_from_order(g.order(), &s.parse::<Signature>()?).map(Some)
    };
    Ok(ClassificationReport {
        group: g.name(),
        order: g.order(),
        hurwitz_genus: genus(flags.hurwitz, "(0;2,3,7)")?,
        reducible_genus: genus(flags.maximal_reducible, "(0;2,2,2,3)")?,
        flags,
        hurwitz_triples: total,
        hurwitz_class_count: triples.class_count,
        hurwitz_inner_class_count: triples.inner_class_count,
        n_set: quads.n_set,
        n_set_complete: !involutions_capped,
        hurwitz_witness: triples.witnesses.into_iter().next(),
        quadruple_witnesses: quads.witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{make_psl2, make_standard, StandardFamily};

    #[test]
    fn small_groups() {
        let cfg = SearchConfig::default();
        let r = classify(&make_psl2(7).unwrap(), &cfg).unwrap();
        assert!(r.flags.hurwitz && !r.flags.maximal_reducible);
        assert_eq!(r.hurwitz_genus, Some(3));
        let r = classify(&make_standard(StandardFamily::Dihedral, 6).unwrap(), &cfg).unwrap();
        assert!(r.flags.maximal_reducible);
        assert_eq!(r.reducible_genus, Some(2));
        let r = classify(&make_standard(StandardFamily::Sym, 4).unwrap(), &cfg).unwrap();
        assert_eq!(r.n_set, vec![2, 3, 4]);
        assert!(r.flags.bounded_surface && !r.flags.g7);
    }
}
