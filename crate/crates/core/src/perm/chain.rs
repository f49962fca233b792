//! Deterministic Schreier–Sims.
//!
//! A [`StabChain`] stores a base `b_0, .., b_{k-1}` and, for every level `l`,
//! the orbit of `b_l` under the pointwise stabilizer `G^(l)` of
//! `b_0, .., b_{l-1}` together with explicit transversal elements
//! `u_beta` (mapping `b_l` to `beta`) and their inverses. Every element of
//! the group factors uniquely as `u_{k-1} * .. * u_1 * u_0`.

use rand::Rng;

use super::permutation::{Permutation, Point};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base_point: usize,
    /// Indices into `StabChain::strong_gens`.
    pub(crate) gens: Vec<usize>,
    pub(crate) orbit: Vec<Point>,
    /// Point -> position in `orbit`, or `NONE`.
    slot: Vec<u32>,
    pub(crate) trans: Vec<Permutation>,
    trans_inv: Vec<Permutation>,
    // All Schreier generators from (orbit[..checked_points], gens[..checked_gens])
    // are known to sift to the identity.
    checked_points: usize,
    checked_gens: usize,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base_point] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point as Point],
            slot,
            trans: vec![Permutation::identity(degree)],
            trans_inv: vec![Permutation::identity(degree)],
            checked_points: 0,
            checked_gens: 0,
        }
    }
}

/// Outcome of closing a chain under Schreier generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Complete,
    /// The lower bound on the group order passed the requested threshold
    /// before the chain was complete.
    Exceeded,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) strong_gens: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    /// An empty chain (the trivial group) with the given initial base points.
    pub fn with_base(degree: usize, base: &[usize]) -> Self {
        StabChain {
            degree,
            strong_gens: Vec::new(),
            levels: base.iter().map(|&b| Level::new(degree, b)).collect(),
        }
    }

    /// Runs Schreier–Sims on `gens`, starting from the base prefix `base`.
    pub fn build(degree: usize, gens: &[Permutation], base: &[usize]) -> Self {
        let mut chain = StabChain::with_base(degree, base);
        for g in gens {
            chain.add_generator(g);
        }
        let closure = chain.close(None);
        debug_assert_eq!(closure, Closure::Complete);
        chain.drop_trivial_levels();
        chain
    }

    /// Builds a chain whose base points are, level by level, the smallest
    /// point moved by the stabilizer of the earlier base points.
    pub fn canonical(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain::build(degree, gens, &[]);
        loop {
            let mut prefix = Vec::new();
            let mut rebuild = false;
            for level in &chain.levels {
                let smallest = level
                    .gens
                    .iter()
                    .filter_map(|&g| chain.strong_gens[g].smallest_moved_point())
                    .min()
                    .expect("nontrivial level has a moving generator");
                prefix.push(smallest);
                if smallest != level.base_point {
                    rebuild = true;
                    break;
                }
            }
            if !rebuild {
                return chain;
            }
            let strong = chain.strong_gens.clone();
            chain = StabChain::build(degree, &strong, &prefix);
        }
    }

    /// Decides whether `gens` generate a group of order greater than
    /// `threshold`, returning the exact order when it does not.
    ///
    /// The product of the partial orbit lengths is a lower bound for the
    /// order of the group generated so far, so the construction stops as
    /// soon as that bound passes `threshold`.
    pub fn order_up_to(degree: usize, gens: &[Permutation], threshold: u64) -> Option<u64> {
        let mut chain = StabChain::with_base(degree, &[]);
        for g in gens {
            chain.add_generator(g);
            if chain.order_lower_bound() > threshold as u128 {
                return None;
            }
        }
        match chain.close(Some(threshold)) {
            Closure::Exceeded => None,
            Closure::Complete => Some(chain.order()),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the orbit lengths. Panics past `u64`, which no group
    /// handled here approaches.
    pub fn order(&self) -> u64 {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
            .expect("group order overflows u64")
    }

    fn order_lower_bound(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Sifts `g` through the chain; true iff `g` is in the group.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        let mut tmp = Permutation::identity(self.degree);
        self.strip(&mut h, 0, &mut tmp) == self.levels.len() && h.is_identity()
    }

    /// Base images of `g`, which identify it within the group.
    pub fn base_image(&self, g: &Permutation) -> Vec<Point> {
        self.levels
            .iter()
            .map(|l| g.image(l.base_point) as Point)
            .collect()
    }

    /// Uniformly random element: a random transversal element per level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        let mut tmp = Permutation::identity(self.degree);
        for level in &self.levels {
            let u = &level.trans[rng.gen_range(0..level.trans.len())];
            u.compose_into(&g, &mut tmp);
            std::mem::swap(&mut g, &mut tmp);
        }
        g
    }

    /// Strips `h` starting at level `from`. Returns the level at which
    /// sifting stopped (`levels.len()` when it went through all levels).
    fn strip(&self, h: &mut Permutation, from: usize, tmp: &mut Permutation) -> usize {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base_point);
            match level.slot[beta] {
                NONE => return l,
                s => {
                    h.compose_into(&level.trans_inv[s as usize], tmp);
                    std::mem::swap(h, tmp);
                }
            }
        }
        self.levels.len()
    }

    /// Adds `g` as a strong generator on every level up to the first base
    /// point it moves, appending a base point if it fixes them all.
    pub fn add_generator(&mut self, g: &Permutation) {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        if g.is_identity() {
            return;
        }
        let depth = self
            .levels
            .iter()
            .position(|l| !g.fixes(l.base_point))
            .unwrap_or(self.levels.len());
        self.insert_strong(g.clone(), 0, depth);
    }

    /// Records `h` (which fixes the first `depth` base points) as a strong
    /// generator of levels `from..=depth`.
    fn insert_strong(&mut self, h: Permutation, from: usize, depth: usize) {
        if depth == self.levels.len() {
            let b = h.smallest_moved_point().expect("nonidentity");
            self.levels.push(Level::new(self.degree, b));
        }
        let idx = self.strong_gens.len();
        self.strong_gens.push(h);
        for l in from..=depth {
            let old_gens = self.levels[l].gens.len();
            self.levels[l].gens.push(idx);
            self.extend_orbit(l, old_gens);
        }
    }

    fn extend_orbit(&mut self, l: usize, old_gens: usize) {
        let level = &mut self.levels[l];
        let old_len = level.orbit.len();
        let mut i = 0;
        while i < level.orbit.len() {
            let beta = level.orbit[i] as usize;
            let first = if i < old_len { old_gens } else { 0 };
            for k in first..level.gens.len() {
                let s = &self.strong_gens[level.gens[k]];
                let gamma = s.image(beta);
                if level.slot[gamma] == NONE {
                    level.slot[gamma] = level.orbit.len() as u32;
                    level.orbit.push(gamma as Point);
                    let u = &level.trans[i] * s;
                    level.trans_inv.push(u.inverse());
                    level.trans.push(u);
                }
            }
            i += 1;
        }
    }

    /// Adds sifted Schreier generators until every level is closed.
    pub fn close(&mut self, abort_above: Option<u64>) -> Closure {
        let mut h = Permutation::identity(self.degree);
        let mut tmp = Permutation::identity(self.degree);
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let (cp, cg) = (self.levels[l].checked_points, self.levels[l].checked_gens);
            for b in 0..self.levels[l].orbit.len() {
                let first = if b < cp { cg } else { 0 };
                for k in first..self.levels[l].gens.len() {
                    let level = &self.levels[l];
                    let s = &self.strong_gens[level.gens[k]];
                    let beta = level.orbit[b] as usize;
                    let gamma_slot = level.slot[s.image(beta)] as usize;
                    // h = u_beta * s * u_gamma^-1
                    level.trans[b].compose_into(s, &mut tmp);
                    tmp.compose_into(&level.trans_inv[gamma_slot], &mut h);
                    if h.is_identity() {
                        continue;
                    }
                    let depth = self.strip(&mut h, l + 1, &mut tmp);
                    if depth < self.levels.len() || !h.is_identity() {
                        self.insert_strong(h.clone(), l + 1, depth);
                        if let Some(t) = abort_above {
                            if self.order_lower_bound() > t as u128 {
                                return Closure::Exceeded;
                            }
                        }
                        i = depth as isize;
                        continue 'outer;
                    }
                }
            }
            let level = &mut self.levels[l];
            level.checked_points = level.orbit.len();
            level.checked_gens = level.gens.len();
            i -= 1;
        }
        Closure::Complete
    }

    /// Removes levels whose orbit is trivial; they carry no information.
    fn drop_trivial_levels(&mut self) {
        self.levels.retain(|l| l.orbit.len() > 1);
    }

    /// Elements in lexicographic order of their base images.
    pub fn elements(&self) -> Elements<'_> {
        Elements::new(self)
    }
}

struct Frame {
    order: Vec<u32>,
    next: usize,
    suffix: Permutation,
}

/// Streaming enumeration of a group through its stabilizer chain.
pub struct Elements<'a> {
    chain: &'a StabChain,
    stack: Vec<Frame>,
    trivial_pending: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let mut it = Elements {
            chain,
            stack: Vec::new(),
            trivial_pending: chain.levels.is_empty(),
        };
        if !chain.levels.is_empty() {
            let id = Permutation::identity(chain.degree);
            it.push_frame(0, id);
        }
        it
    }

    fn push_frame(&mut self, level: usize, suffix: Permutation) {
        let lv = &self.chain.levels[level];
        let mut order: Vec<u32> = (0..lv.orbit.len() as u32).collect();
        order.sort_by_key(|&s| suffix.image(lv.orbit[s as usize] as usize));
        self.stack.push(Frame {
            order,
            next: 0,
            suffix,
        });
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.trivial_pending {
            self.trivial_pending = false;
            return Some(Permutation::identity(self.chain.degree));
        }
        loop {
            let depth = self.stack.len();
            let top = self.stack.last_mut()?;
            if top.next == top.order.len() {
                self.stack.pop();
                continue;
            }
            let slot = top.order[top.next] as usize;
            top.next += 1;
            let elem = &self.chain.levels[depth - 1].trans[slot] * &top.suffix;
            if depth == self.chain.levels.len() {
                return Some(elem);
            }
            self.push_frame(depth, elem);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7usize {
            let gens = [p(n, &format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","))), p(n, "(1,2)")];
            let chain = StabChain::build(n, &gens, &[]);
            assert_eq!(chain.order(), (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn canonical_base_is_smallest_moved() {
        let gens = [p(8, "(3,5,7)"), p(8, "(5,6)")];
        let chain = StabChain::canonical(8, &gens);
        assert_eq!(chain.order(), 24);
        assert_eq!(chain.base()[0], 2);
        for level in &chain.levels {
            assert_eq!(*level.orbit.iter().min().unwrap() as usize, level.base_point);
        }
    }

    #[test]
    fn enumeration_is_complete_and_lexicographic() {
        let gens = [p(5, "(1,2,3,4,5)"), p(5, "(1,2)")];
        let chain = StabChain::canonical(5, &gens);
        let elems: Vec<Permutation> = chain.elements().collect();
        assert_eq!(elems.len(), 120);
        assert!(elems[0].is_identity());
        let keys: Vec<Vec<Point>> = elems.iter().map(|g| chain.base_image(g)).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn order_up_to_aborts_early() {
        let gens = [p(6, "(1,2,3,4,5,6)"), p(6, "(1,2)")];
        assert_eq!(StabChain::order_up_to(6, &gens, 360), None);
        assert_eq!(StabChain::order_up_to(6, &gens, 720), Some(720));
        let cyclic = [p(6, "(1,2,3,4,5,6)")];
        assert_eq!(StabChain::order_up_to(6, &cyclic, 360), Some(6));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::build(4, &[Permutation::identity(4)], &[]);
        assert_eq!(chain.order(), 1);
        assert_eq!(chain.elements().count(), 1);
        assert!(chain.contains(&Permutation::identity(4)));
        assert!(!chain.contains(&p(4, "(1,2)")));
    }
}
