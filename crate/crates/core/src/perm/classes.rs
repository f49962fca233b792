use std::collections::HashMap;

use serde::Serialize;

use super::group::GroupHandle;
use super::permutation::{Permutation, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// First member of the class in enumeration order.
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

/// Conjugacy classes of `g`, optionally only those of elements of exact
/// order `order_filter`, in order of their representatives' position in
/// the element enumeration.
pub fn conjugacy_classes(
    g: &GroupHandle,
    order_filter: Option<u64>,
    cap: u64,
) -> Result<Vec<ConjugacyClass>> {
    let elems: Vec<Permutation> = match order_filter {
        Some(k) => g.elements_of_order(k, cap)?,
        None => g.elements(cap)?.collect(),
    };
    Ok(partition_into_classes(g, &elems)
        .into_iter()
        .map(|(rep, size)| ConjugacyClass {
            element_order: elems[rep].order(),
            representative: elems[rep].clone(),
            size: size as u64,
        })
        .collect())
}

/// Splits a conjugation-closed element list into classes. Returns
/// `(index of representative, class size)` pairs.
pub(crate) fn partition_into_classes(g: &GroupHandle, elems: &[Permutation]) -> Vec<(usize, usize)> {
    let index: HashMap<Vec<Point>, usize> = elems
        .iter()
        .enumerate()
        .map(|(i, x)| (g.base_image(x), i))
        .collect();
    let mut seen = vec![false; elems.len()];
    let mut out = Vec::new();
    for start in 0..elems.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let x = &elems[queue[head]];
            head += 1;
            for s in g.generators() {
                let y = x.conjugate_by(s);
                let j = *index
                    .get(&g.base_image(&y))
                    .expect("element list must be closed under conjugation");
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        out.push((start, queue.len()));
    }
    out
}

/// The conjugacy class of `rep`, found as its orbit under conjugation by
/// the generators. Works without enumerating the group.
pub fn conjugacy_class_of(g: &GroupHandle, rep: &Permutation, cap: u64) -> Result<Vec<Permutation>> {
    if !g.contains(rep) {
        return Err(Error::NotSubgroup(format!("{rep} is not an element")));
    }
    let mut seen: HashMap<Vec<Point>, ()> = HashMap::new();
    seen.insert(g.base_image(rep), ());
    let mut class = vec![rep.clone()];
    let mut head = 0;
    while head < class.len() {
        let x = class[head].clone();
        head += 1;
        for s in g.generators() {
            let y = x.conjugate_by(s);
            if seen.insert(g.base_image(&y), ()).is_none() {
                class.push(y);
                if class.len() as u64 > cap {
                    return Err(Error::CapExceeded {
                        what: "class closure",
                        cap,
                        actual: class.len() as u64,
                    });
                }
            }
        }
    }
    Ok(class)
}

/// Size of the center, by brute force over the elements.
pub fn center_order(g: &GroupHandle, cap: u64) -> Result<u64> {
    Ok(g
        .elements(cap)?
        .filter(|z| g.generators().iter().all(|s| (z * s) == (s * z)))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::group::{GroupMetadata, DEFAULT_ENUMERATION_CAP};

    fn s4() -> GroupHandle {
        GroupHandle::build(
            vec![
                Permutation::parse_cycles(4, "(1,2,3,4)").unwrap(),
                Permutation::parse_cycles(4, "(1,2)").unwrap(),
            ],
            GroupMetadata::default(),
        )
        .unwrap()
    }

    #[test]
    fn s4_classes() {
        let classes = conjugacy_classes(&s4(), None, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
        assert_eq!(classes[0].size, 1);
        assert!(classes[0].representative.is_identity());
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn filtered_classes_and_closure() {
        let g = s4();
        let inv = conjugacy_classes(&g, Some(2), 100).unwrap();
        assert_eq!(inv.len(), 2);
        assert_eq!(inv.iter().map(|c| c.size).sum::<u64>(), 9);
        for c in &inv {
            let cl = conjugacy_class_of(&g, &c.representative, 100).unwrap();
            assert_eq!(cl.len() as u64, c.size);
        }
        assert_eq!(center_order(&g, 100).unwrap(), 1);
    }
}
