use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::chain::{Elements, StabChain};
use super::permutation::{Permutation, Point};
use crate::error::{Error, Result};

/// Default ceiling on element enumeration; covers J2 (604800) and
/// Sp4(4) (979200).
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// Optional facts attached to a group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMetadata {
    /// Declared order; construction fails if the chain disagrees.
    pub known_order: Option<u64>,
    /// Order of the automorphism group, when known from theory or data.
    pub aut_order: Option<u64>,
    pub name: Option<String>,
    /// Declared nonabelian simple by its constructor.
    #[serde(default)]
    pub simple: bool,
}

impl GroupMetadata {
    pub fn named(name: impl Into<String>) -> Self {
        GroupMetadata {
            name: Some(name.into()),
            ..Default::default()
        }
    }
}

/// A permutation group together with a complete stabilizer chain.
///
/// Immutable after construction and safe to share between threads.
#[derive(Debug, Clone)]
pub struct GroupHandle {
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    metadata: GroupMetadata,
}

impl GroupHandle {
    /// Builds the stabilizer chain for `gens`. Fails on an empty or
    /// inconsistent generator list and when a declared order disagrees.
    pub fn build(gens: Vec<Permutation>, metadata: GroupMetadata) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty generator list".into()))?;
        let degree = first.degree();
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        let chain = StabChain::canonical(degree, &gens);
        let order = chain.order();
        if let Some(declared) = metadata.known_order {
            if declared != order {
                return Err(Error::OrderMismatch {
                    declared,
                    computed: order,
                });
            }
        }
        Ok(GroupHandle {
            generators: gens,
            chain,
            order,
            metadata,
        })
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>, metadata: GroupMetadata) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotSubgroup(format!("{g} is not an element")));
        }
        let gens = if gens.is_empty() {
            vec![Permutation::identity(self.degree())]
        } else {
            gens
        };
        GroupHandle::build(gens, metadata)
    }

    pub fn trivial(degree: usize) -> Self {
        GroupHandle::build(vec![Permutation::identity(degree)], GroupMetadata::default())
            .expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.chain.degree()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn metadata(&self) -> &GroupMetadata {
        &self.metadata
    }

    pub fn name(&self) -> String {
        self.metadata
            .name
            .clone()
            .unwrap_or_else(|| format!("group of order {} on {} points", self.order, self.degree()))
    }

    pub fn with_metadata(mut self, metadata: GroupMetadata) -> Result<Self> {
        if let Some(declared) = metadata.known_order {
            if declared != self.order {
                return Err(Error::OrderMismatch {
                    declared,
                    computed: self.order,
                });
            }
        }
        self.metadata = metadata;
        Ok(self)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    /// Every element once, in lexicographic order of base images (the
    /// identity first). Refuses groups larger than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                what: "element enumeration",
                cap,
                actual: self.order,
            });
        }
        Ok(self.chain.elements())
    }

    /// All elements of exact order `k`, in enumeration order.
    pub fn elements_of_order(&self, k: u64, cap: u64) -> Result<Vec<Permutation>> {
        Ok(self.elements(cap)?.filter(|g| g.has_exact_order(k)).collect())
    }

    /// A uniformly distributed element, determined by `seed`.
    pub fn random_element(&self, seed: u64) -> Permutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.chain.random_element(&mut rng)
    }

    pub fn random_element_with<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    pub fn base_image(&self, g: &Permutation) -> Vec<Point> {
        self.chain.base_image(g)
    }

    /// Whether `gens` generate all of `self`. Assumes they are elements.
    ///
    /// Uses the early-exit chain construction: a subgroup whose order
    /// exceeds half of `|G|` is `G` itself.
    pub fn is_generated_by(&self, gens: &[Permutation]) -> bool {
        match StabChain::order_up_to(self.degree(), gens, self.order / 2) {
            None => true,
            Some(o) => o == self.order,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| (a * b) == (b * a))
        })
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for g in &self.generators {
                let j = g.image(i);
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// Orbits of the point set, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for g in &self.generators {
                    let j = g.image(orbit[i]);
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn a5() -> GroupHandle {
        GroupHandle::build(
            vec![p(5, "(1,2,3,4,5)"), p(5, "(1,2,3)")],
            GroupMetadata::named("A5"),
        )
        .unwrap()
    }

    #[test]
    fn build_a5_and_trivial() {
        assert_eq!(a5().order(), 60);
        assert_eq!(GroupHandle::trivial(7).order(), 1);
    }

    #[test]
    fn declared_order_mismatch_is_hard_error() {
        let meta = GroupMetadata {
            known_order: Some(61),
            ..Default::default()
        };
        let err = GroupHandle::build(vec![p(5, "(1,2,3,4,5)"), p(5, "(1,2,3)")], meta).unwrap_err();
        assert!(matches!(err, Error::OrderMismatch { declared: 61, computed: 60 }));
        assert!(err.is_data_integrity());
    }

    #[test]
    fn membership() {
        let g = a5();
        for gen in g.generators() {
            assert!(g.contains(gen));
        }
        assert!(!g.contains(&p(5, "(1,2)")));
        assert!(!g.contains(&Permutation::identity(6)));
    }

    #[test]
    fn random_elements_are_members_and_deterministic() {
        let g = a5();
        for seed in 0..50 {
            let r = g.random_element(seed);
            assert!(g.contains(&r));
            assert_eq!(r, g.random_element(seed));
        }
    }

    #[test]
    fn enumeration_cap_refusal_names_cap() {
        let err = a5().elements(59).err().unwrap();
        assert!(err.to_string().contains("59"));
    }

    #[test]
    fn generation_test() {
        let g = a5();
        assert!(g.is_generated_by(&[p(5, "(1,2,3,4,5)"), p(5, "(1,2,3)")]));
        assert!(!g.is_generated_by(&[p(5, "(1,2,3,4,5)"), p(5, "(2,5)(3,4)")]));
    }

    #[test]
    fn orbits_and_transitivity() {
        let g = GroupHandle::build(vec![p(6, "(1,2)(4,5,6)")], GroupMetadata::default()).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3, 4, 5]]);
        assert!(!g.is_transitive());
        assert!(a5().is_transitive());
    }
}
