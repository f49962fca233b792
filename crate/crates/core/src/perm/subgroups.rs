use std::collections::HashMap;

use super::chain::StabChain;
use super::group::{GroupHandle, GroupMetadata};
use super::permutation::{Permutation, Point};
use crate::error::{Error, Result};

/// The smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &GroupHandle, seeds: &[Permutation]) -> Result<GroupHandle> {
    if let Some(s) = seeds.iter().find(|s| !g.contains(s)) {
        return Err(Error::NotSubgroup(format!("{s} is not an element")));
    }
    let degree = g.degree();
    let mut gens: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut chain = StabChain::build(degree, &gens, &[]);
    let mut i = 0;
    while i < gens.len() {
        let n = gens[i].clone();
        i += 1;
        for s in g.generators() {
            let c = n.conjugate_by(s);
            if !chain.contains(&c) {
                chain.add_generator(&c);
                chain.close(None);
                gens.push(c);
            }
        }
    }
    if gens.is_empty() {
        return Ok(GroupHandle::trivial(degree));
    }
    GroupHandle::build(gens, GroupMetadata::default())
}

/// The commutator subgroup: normal closure of the generator commutators.
pub fn derived_subgroup(g: &GroupHandle) -> GroupHandle {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(a.commutator(b));
        }
    }
    normal_closure(g, &comms).expect("commutators are elements")
}

pub fn is_perfect(g: &GroupHandle) -> bool {
    derived_subgroup(g).order() == g.order()
}

/// Action of a group on the right cosets of a subgroup `U`, by right
/// multiplication: coset `i` is `U * reps[i]` and `x` sends it to
/// `U * reps[i] * x`. Coset 0 is `U` itself.
#[derive(Debug, Clone)]
pub struct CosetAction {
    subgroup: GroupHandle,
    reps: Vec<Permutation>,
    rep_inverses: Vec<Permutation>,
    keys: HashMap<Vec<Point>, Vec<usize>>,
    orbit_point: Option<usize>,
    image: GroupHandle,
}

impl CosetAction {
    pub fn new(g: &GroupHandle, u: &GroupHandle) -> Result<Self> {
        if g.degree() != u.degree() {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: u.degree(),
            });
        }
        if let Some(x) = u.generators().iter().find(|x| !g.contains(x)) {
            return Err(Error::NotSubgroup(format!("generator {x} of U is not in G")));
        }
        if !g.order().is_multiple_of(u.order()) {
            return Err(Error::NotSubgroup("|U| does not divide |G|".into()));
        }
        let index = (g.order() / u.order()) as usize;
        // Cosets are bucketed by the image of a U-orbit, which is the same
        // for every element of the coset.
        let orbit_point = u.chain().base().first().copied();
        let mut action = CosetAction {
            subgroup: u.clone(),
            reps: Vec::new(),
            rep_inverses: Vec::new(),
            keys: HashMap::new(),
            orbit_point,
            image: GroupHandle::trivial(1),
        };
        action.push_rep(g.identity());
        let mut head = 0;
        while head < action.reps.len() {
            let r = action.reps[head].clone();
            head += 1;
            for s in g.generators() {
                let y = &r * s;
                if action.find(&y).is_none() {
                    action.push_rep(y);
                }
            }
        }
        if action.reps.len() != index {
            return Err(Error::NotSubgroup(format!(
                "found {} cosets but |G|/|U| = {index}",
                action.reps.len()
            )));
        }
        let images: Vec<Permutation> = g.generators().iter().map(|s| action.act(s)).collect();
        action.image = GroupHandle::build(images, GroupMetadata::default())?;
        Ok(action)
    }

    fn orbit_key(&self, y: &Permutation) -> Vec<Point> {
        match self.orbit_point {
            None => y.images().to_vec(),
            Some(b) => {
                let orbit = &self.subgroup.chain().levels[0].orbit;
                debug_assert_eq!(orbit[0] as usize, b);
                let mut key: Vec<Point> = orbit.iter().map(|&p| y.image(p as usize) as Point).collect();
                key.sort_unstable();
                key
            }
        }
    }

    fn push_rep(&mut self, r: Permutation) {
        let key = self.orbit_key(&r);
        self.keys.entry(key).or_default().push(self.reps.len());
        self.rep_inverses.push(r.inverse());
        self.reps.push(r);
    }

    /// Index of the coset containing `y`.
    fn find(&self, y: &Permutation) -> Option<usize> {
        let candidates = self.keys.get(&self.orbit_key(y))?;
        candidates
            .iter()
            .copied()
            .find(|&j| self.subgroup.contains(&(y * &self.rep_inverses[j])))
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// The image group acting on the cosets.
    pub fn image(&self) -> &GroupHandle {
        &self.image
    }

    /// The permutation of cosets induced by `x`.
    pub fn act(&self, x: &Permutation) -> Permutation {
        let images: Vec<usize> = self
            .reps
            .iter()
            .map(|r| self.find(&(r * x)).expect("x must be an element of G"))
            .collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }
}

/// Convenience wrapper returning the image group and its degree.
pub fn coset_action(g: &GroupHandle, u: &GroupHandle) -> Result<(GroupHandle, usize)> {
    let a = CosetAction::new(g, u)?;
    let d = a.degree();
    Ok((a.image, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn group(gens: &[Permutation]) -> GroupHandle {
        GroupHandle::build(gens.to_vec(), GroupMetadata::default()).unwrap()
    }

    #[test]
    fn derived_subgroups() {
        let s4 = group(&[p(4, "(1,2,3,4)"), p(4, "(1,2)")]);
        assert_eq!(derived_subgroup(&s4).order(), 12);
        let c6 = group(&[p(6, "(1,2,3,4,5,6)")]);
        assert_eq!(derived_subgroup(&c6).order(), 1);
        let a5 = group(&[p(5, "(1,2,3,4,5)"), p(5, "(1,2,3)")]);
        assert!(is_perfect(&a5));
    }

    #[test]
    fn coset_action_on_point_stabilizer() {
        let s4 = group(&[p(4, "(1,2,3,4)"), p(4, "(1,2)")]);
        let stab = group(&[p(4, "(2,3,4)"), p(4, "(2,3)")]);
        let (image, degree) = coset_action(&s4, &stab).unwrap();
        assert_eq!(degree, 4);
        assert_eq!(image.order(), 24);
        assert!(image.is_transitive());
        let (trivial, d1) = coset_action(&s4, &s4).unwrap();
        assert_eq!((trivial.order(), d1), (1, 1));
    }

    #[test]
    fn coset_action_rejects_non_subgroup() {
        let a4 = group(&[p(4, "(1,2,3)"), p(4, "(2,3,4)")]);
        let not_sub = group(&[p(4, "(1,2)")]);
        assert!(matches!(CosetAction::new(&a4, &not_sub), Err(Error::NotSubgroup(_))));
    }
}
