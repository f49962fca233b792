use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::search::SearchConfig;
use super::tuples::GeneratingTriple;
use crate::error::{Error, Result};
use crate::fuchsian::{subgroup_signature, triangle_subgroup_candidates, Signature};
use crate::perm::{gcd, is_perfect, CosetAction, GroupHandle, GroupMetadata, Permutation, StabChain};

/// Random draws rejected in a row before an attempt is abandoned.
const MAX_REJECTIONS: usize = 48;

type Fingerprint = (u64, Vec<usize>, Vec<(Vec<usize>, u64)>);

/// Cheap conjugacy invariant: order, orbit lengths and the cycle-type
/// census of the elements.
fn fingerprint(u: &GroupHandle, cap: u64) -> Result<Fingerprint> {
    let mut orbits: Vec<usize> = u.orbits().iter().map(Vec::len).collect();
    orbits.sort_unstable();
    let mut census: HashMap<Vec<usize>, u64> = HashMap::new();
    for x in u.elements(cap)? {
        let mut t = x.cycle_lengths();
        t.sort_unstable();
        *census.entry(t).or_default() += 1;
    }
    let mut census: Vec<_> = census.into_iter().collect();
    census.sort();
    Ok((u.order(), orbits, census))
}

/// One attempt: grow a subgroup from random elements, keeping an element
/// only when the group generated so far has order dividing `m`.
fn greedy_attempt(g: &GroupHandle, m: u64, rng: &mut ChaCha8Rng) -> Option<Vec<Permutation>> {
    let deg = g.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut chain = StabChain::build(deg, &[], &[]);
    let mut order = 1;
    let mut rejections = 0;
    while order < m && rejections < MAX_REJECTIONS {
        let x = g.random_element_with(rng);
        let o = x.order();
        let x = x.pow((o / gcd(o, m)) as i64);
        if x.is_identity() || chain.contains(&x) {
            rejections += 1;
            continue;
        }
        gens.push(x);
        match StabChain::order_up_to(deg, &gens, m) {
            Some(n) if m.is_multiple_of(n) => {
                order = n;
                chain = StabChain::build(deg, &gens, &[]);
                rejections = 0;
            }
            _ => {
                gens.pop();
                rejections += 1;
            }
        }
    }
    (order == m).then_some(gens)
}

/// Subgroups of order `m` found by seeded random greedy closure, one per
/// fingerprint. A semi-decision: an empty result does not prove absence.
pub fn find_subgroups_of_order(
    g: &GroupHandle,
    m: u64,
    attempts: u64,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<Vec<GroupHandle>> {
    if m == 0 || !g.order().is_multiple_of(m) {
        return Err(Error::InvalidParameter(format!("{m} does not divide |G| = {}", g.order())));
    }
    if m == g.order() {
        return Ok(vec![g.clone()]);
    }
    if m == 1 {
        return Ok(vec![GroupHandle::trivial(g.degree())]);
    }
    let mut found = Vec::new();
    let mut seen = Vec::new();
    for attempt in 0..attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let Some(gens) = greedy_attempt(g, m, &mut rng) else {
            continue;
        };
        let u = g.subgroup(gens, GroupMetadata::default())?;
        let fp = fingerprint(&u, cfg.enumeration_cap)?;
        if !seen.contains(&fp) {
            seen.push(fp);
            found.push(u);
        }
    }
    Ok(found)
}

/// Smallest index `2 <= d <= max_index` at which a subgroup was found.
pub fn smallest_index_found(
    g: &GroupHandle,
    max_index: u64,
    attempts: u64,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<Option<u64>> {
    for d in 2..=max_index {
        if g.order().is_multiple_of(d) && !find_subgroups_of_order(g, g.order() / d, attempts, seed, cfg)?.is_empty() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Images of `x`, `y`, `z` on the cosets of `u`, with the signature of
/// the preimage of `u` in the triangle group of the triple.
pub fn preimage_signature(g: &GroupHandle, triple: &GeneratingTriple, u: &GroupHandle) -> Result<(CosetAction, Signature)> {
    let action = CosetAction::new(g, u)?;
    let parent = Signature::sphere(&triple.orders)?;
    // The generators must follow the sorted period order.
    if !triple.orders.windows(2).all(|w| w[0] <= w[1]) {
        return Err(Error::Precondition("triple orders must be non-decreasing".into()));
    }
    let images: Vec<Permutation> = [&triple.x, &triple.y, &triple.z].iter().map(|p| action.act(p)).collect();
    let sig = subgroup_signature(&parent, &images, action.degree() as u64)?;
    Ok((action, sig))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSignature {
    pub order: u64,
    pub index: u64,
    pub signature: Signature,
    pub irreducible: bool,
    pub generators: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibleReport {
    /// `(index, candidate signature)` pairs allowed by Riemann–Hurwitz.
    pub candidate_indices: Vec<(u64, Signature)>,
    /// Every subgroup found at a candidate index.
    pub subgroups: Vec<SubgroupSignature>,
}

impl IrreducibleReport {
    pub fn irreducible(&self) -> impl Iterator<Item = &SubgroupSignature> {
        self.subgroups.iter().filter(|s| s.irreducible)
    }
}

/// Subgroups whose preimage in the triangle group is again a triangle
/// group. Only indices admitted by the signature calculus are searched.
pub fn irreducible_subgroups(
    g: &GroupHandle,
    triple: &GeneratingTriple,
    attempts: u64,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<IrreducibleReport> {
    let parent = Signature::sphere(&triple.orders)?;
    let candidate_indices = triangle_subgroup_candidates(&parent)?;
    let mut indices: Vec<u64> = candidate_indices.iter().map(|&(d, _)| d).collect();
    indices.dedup();
    let mut subgroups = Vec::new();
    for d in indices {
        if !g.order().is_multiple_of(d) {
            continue;
        }
        for u in find_subgroups_of_order(g, g.order() / d, attempts, seed, cfg)? {
            let (_, signature) = preimage_signature(g, triple, &u)?;
            subgroups.push(SubgroupSignature {
                order: u.order(),
                index: d,
                irreducible: signature.genus() == 0 && signature.periods().len() == 3,
                signature,
                generators: u.generators().to_vec(),
            });
        }
    }
    Ok(IrreducibleReport {
        candidate_indices,
        subgroups,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSevenInstance {
    pub subgroup_generators: Vec<Permutation>,
    pub image_order: u64,
    pub image_perfect: bool,
    pub preimage_signature: Signature,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSevenReport {
    pub group: String,
    pub subgroup_order: u64,
    pub index: u64,
    /// False when no subgroup of the requested order was found.
    pub hypothesis_met: bool,
    pub instances: Vec<IndexSevenInstance>,
}

/// For a Hurwitz group with a subgroup of index 7: the action on its
/// cosets has a perfect image of order 168, and the preimage of the
/// subgroup has signature `(0;2,2,2,3)`.
pub fn index_seven_check(
    g: &GroupHandle,
    triple: &GeneratingTriple,
    subgroup_order: u64,
    attempts: u64,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<IndexSevenReport> {
    if !triple.is_hurwitz() {
        return Err(Error::Precondition("a (2,3,7) triple is required".into()));
    }
    if subgroup_order == 0 || !g.order().is_multiple_of(subgroup_order) || g.order() / subgroup_order != 7 {
        return Err(Error::Precondition(format!(
            "subgroup order {subgroup_order} does not have index 7 in a group of order {}",
            g.order()
        )));
    }
    let quadrangle = Signature::sphere(&[2, 2, 2, 3])?;
    let mut instances = Vec::new();
    for u in find_subgroups_of_order(g, subgroup_order, attempts, seed, cfg)? {
        let (action, sig) = preimage_signature(g, triple, &u)?;
        let image = action.image();
        let perfect = is_perfect(image);
        instances.push(IndexSevenInstance {
            subgroup_generators: u.generators().to_vec(),
            image_order: image.order(),
            image_perfect: perfect,
            holds: image.order() == 168 && perfect && sig == quadrangle,
            preimage_signature: sig,
        });
    }
    Ok(IndexSevenReport {
        group: g.name(),
        subgroup_order,
        index: 7,
        hypothesis_met: !instances.is_empty(),
        instances,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Handles {
    pub outer_genus: u64,
    pub inner_count: u64,
    pub inner_genus: u64,
}

/// Boundary of the product with handles for a group of order `N`
/// containing the image `M` of the triangle group: the outer component
/// has genus `1 + N/12`, and there are `N/M` inner components of genus
/// `1 + M/84`.
pub fn handles_bookkeeping(group_order: u64, triangle_image_order: u64) -> Result<Handles> {
    let (n, m) = (group_order, triangle_image_order);
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::NonIntegral(what.to_string()))
        }
    };
    need(n > 0 && n % 12 == 0, "12 must divide the group order")?;
    need(m > 0 && n % m == 0, "the triangle image order must divide the group order")?;
    need(m % 84 == 0, "84 must divide the triangle image order")?;
    let h = Handles {
        outer_genus: 1 + n / 12,
        inner_count: n / m,
        inner_genus: 1 + m / 84,
    };
    debug_assert_eq!(84 * (h.inner_genus - 1) * h.inner_count, 12 * (h.outer_genus - 1));
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::episearch::find_triples;
    use crate::zoo::make_psl2;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn handles() {
        let h = handles_bookkeeping(336, 168).unwrap();
        assert_eq!((h.outer_genus, h.inner_count, h.inner_genus), (29, 2, 3));
        let h = handles_bookkeeping(9828, 9828).unwrap();
        assert_eq!((h.outer_genus, h.inner_count, h.inner_genus), (820, 1, 118));
        let h = handles_bookkeeping(84, 84).unwrap();
        assert_eq!((h.outer_genus, h.inner_count, h.inner_genus), (8, 1, 2));
        assert!(handles_bookkeeping(100, 84).is_err());
    }

    #[test]
    fn psl27_subgroups_and_signatures() {
        let cfg = SearchConfig::default();
        let g = make_psl2(7).unwrap();
        let triple = find_triples(&g, [2, 3, 7], &cfg).unwrap().witnesses.remove(0);
        let s4 = find_subgroups_of_order(&g, 24, 64, 0, &cfg).unwrap();
        assert!(!s4.is_empty());
        let (_, s) = preimage_signature(&g, &triple, &s4[0]).unwrap();
        assert_eq!(s, sig("(2,2,2,3)"));
        let (_, s) = preimage_signature(&g, &triple, &g).unwrap();
        assert_eq!(s, sig("(2,3,7)"));
        let report = irreducible_subgroups(&g, &triple, 64, 0, &cfg).unwrap();
        let found: Vec<(u64, Signature)> = report.irreducible().map(|s| (s.order, s.signature.clone())).collect();
        assert!(found.contains(&(21, sig("(3,3,7)"))));
        assert!(found.contains(&(7, sig("(7,7,7)"))));
        let t1 = index_seven_check(&g, &triple, 24, 64, 0, &cfg).unwrap();
        assert!(t1.hypothesis_met && t1.instances.iter().all(|i| i.holds));
    }

    #[test]
    fn whole_group_and_bad_order() {
        let cfg = SearchConfig::default();
        let g = make_psl2(7).unwrap();
        assert_eq!(find_subgroups_of_order(&g, 168, 1, 0, &cfg).unwrap()[0].order(), 168);
        assert!(find_subgroups_of_order(&g, 5, 1, 0, &cfg).is_err());
    }
}
