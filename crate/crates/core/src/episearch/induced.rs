//! Generating quadruples of the preimage of an index-7 subgroup, found as
//! words in a Hurwitz triple.
//!
//! Words are evaluated in three places: the target group, the action on
//! the seven cosets, and a faithful real representation of the triangle
//! group in `PSL2(R)`. The last one decides relations among words.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use serde::Serialize;

use super::subgroups::preimage_signature;
use super::tuples::{GeneratingQuadruple, GeneratingTriple};
use crate::error::{Error, Result};
use crate::fuchsian::Signature;
use crate::perm::{GroupHandle, Permutation};

const TOL: f64 = 1e-6;

/// Letters: `x`, `y`, and `Y = y^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Letter {
    X,
    Y,
    YInv,
}

impl Letter {
    const ALL: [Letter; 3] = [Letter::X, Letter::Y, Letter::YInv];

    fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
        }
    }

    fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
            Letter::YInv => 'Y',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Mat([f64; 4]);

impl Mat {
    const I: Mat = Mat([1.0, 0.0, 0.0, 1.0]);

    fn mul(self, o: Mat) -> Mat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    fn inverse(self) -> Mat {
        let [a, b, c, d] = self.0;
        Mat([d, -b, -c, a])
    }

    fn trace(self) -> f64 {
        self.0[0] + self.0[3]
    }

    /// Sign-normalized so the first entry of size above `TOL` is positive.
    fn normalized(self) -> Mat {
        let first = self.0.iter().copied().find(|v| v.abs() > TOL).unwrap_or(1.0);
        if first < 0.0 {
            Mat(self.0.map(|v| -v))
        } else {
            self
        }
    }

    fn key(self) -> [i64; 4] {
        self.normalized().0.map(|v| (v * 1e6).round() as i64)
    }

    /// Rotation sense of an elliptic element: sign of the lower-left entry
    /// once the trace is made positive.
    fn rotation_sign(self) -> f64 {
        let m = if self.trace() < 0.0 { Mat(self.0.map(|v| -v)) } else { self };
        m.0[2].signum()
    }

    fn is_identity(self) -> bool {
        let n = self.normalized().0;
        (n[0] - 1.0).abs() < TOL && n[1].abs() < TOL && n[2].abs() < TOL && (n[3] - 1.0).abs() < TOL
    }
}

/// A faithful representation of `<x, y | x^2, y^3, (xy)^7>` in `PSL2(R)`.
fn triangle_matrices() -> (Mat, Mat) {
    let lambda = 2.0 * (PI / 7.0).cos();
    let a = (1.0 + (4.0 * lambda - 7.0).sqrt()) / 2.0;
    let x = Mat([a, -1.0, 1.0 + a * a, -a]);
    let y = Mat([0.0, 1.0, -1.0, 1.0]);
    (x, y)
}

#[derive(Debug, Clone)]
struct Word {
    letters: Vec<Letter>,
    mat: Mat,
    /// Image of coset 0.
    coset: usize,
}

fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|l| l.symbol()).collect()
    }
}

/// Cancels `xx`, `yY` and `Yy`.
fn reduce(w: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// A quadruple of words with its certified image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedQuadruple {
    pub words: [String; 4],
    pub quadruple: GeneratingQuadruple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedReport {
    pub preimage_signature: Signature,
    /// Word systems passing every check.
    pub systems: u64,
    pub n_values: Vec<u64>,
    /// One certified system per value of `n`.
    pub witnesses: Vec<InducedQuadruple>,
}

/// Bounds for the word search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordBounds {
    /// Elements of the triangle group enumerated, shortest words first.
    pub ball: usize,
    /// Conjugators per elliptic class.
    pub conjugators: usize,
}

impl Default for WordBounds {
    fn default() -> Self {
        WordBounds {
            ball: 4000,
            conjugators: 160,
        }
    }
}

/// Finds quadruples `(e1, e2, e3, e4)` of elliptic elements of the
/// preimage of `u` with `e1e2e3e4 = 1`, one from each elliptic class,
/// whose images in `g` have exact orders `(2, 2, 2, 3)` and generate `u`.
///
/// Each `e_i` is a conjugate, by a word fixing coset 0, of
/// `r x r^-1` or `r y r^-1` for `r` leading coset 0 to a fixed coset.
/// The relation and the elliptic type of `e4` are decided in the real
/// representation. The search is bounded; an empty result is
/// inconclusive.
pub fn induced_quadruples(
    g: &GroupHandle,
    triple: &GeneratingTriple,
    u: &GroupHandle,
    bounds: WordBounds,
) -> Result<InducedReport> {
    if !triple.is_hurwitz() {
        return Err(Error::Precondition("a (2,3,7) triple is required".into()));
    }
    let (action, sig) = preimage_signature(g, triple, u)?;
    if sig != Signature::sphere(&[2, 2, 2, 3])? {
        return Err(Error::Precondition(format!("preimage signature is {sig}, not (0;2,2,2,3)")));
    }
    let x7 = action.act(&triple.x);
    let y7 = action.act(&triple.y);
    let (mx, my) = triangle_matrices();
    let letter_mat = |l: Letter| match l {
        Letter::X => mx,
        Letter::Y => my,
        Letter::YInv => my.inverse(),
    };
    let letter_perm = |l: Letter, p: usize| match l {
        Letter::X => x7.image(p),
        Letter::Y => y7.image(p),
        Letter::YInv => y7.inverse().image(p),
    };

    // Breadth-first ball of the triangle group, keyed by matrix.
    let mut ball = vec![Word {
        letters: Vec::new(),
        mat: Mat::I,
        coset: 0,
    }];
    let mut seen: HashMap<[i64; 4], ()> = HashMap::new();
    seen.insert(Mat::I.key(), ());
    let mut head = 0;
    while head < ball.len() && ball.len() < bounds.ball {
        let w = ball[head].clone();
        head += 1;
        for l in Letter::ALL {
            let mat = w.mat.mul(letter_mat(l));
            if seen.insert(mat.key(), ()).is_none() {
                let mut letters = w.letters.clone();
                letters.push(l);
                ball.push(Word {
                    letters,
                    mat,
                    coset: letter_perm(l, w.coset),
                });
            }
        }
    }

    let to_coset = |c: usize| ball.iter().find(|w| w.coset == c).map(|w| w.letters.clone());
    let stabilizer: Vec<&Word> = ball.iter().filter(|w| w.coset == 0).take(bounds.conjugators).collect();

    // Elliptic classes: fixed cosets of x (order 2) and of y (order 3).
    let x_fixed: Vec<usize> = (0..7).filter(|&c| x7.image(c) == c).collect();
    let y_fixed: Vec<usize> = (0..7).filter(|&c| y7.image(c) == c).collect();
    if x_fixed.len() != 3 || y_fixed.len() != 1 {
        return Err(Error::Integrity("fixed cosets do not match the signature".into()));
    }
    let elliptic = |c: usize, gen: Letter| -> Result<Vec<Letter>> {
        let r = to_coset(c).ok_or_else(|| Error::Precondition("coset not reached by the word ball".into()))?;
        let mut w = r.clone();
        w.push(gen);
        w.extend(inverse_word(&r));
        Ok(reduce(w))
    };
    let eval_mat = |w: &[Letter]| w.iter().fold(Mat::I, |m, &l| m.mul(letter_mat(l)));
    let y_sense = my.rotation_sign();

    // Conjugates of each involution class by stabilizer words.
    let mut classes: Vec<Vec<(Vec<Letter>, Mat)>> = Vec::new();
    for &c in &x_fixed {
        let base = elliptic(c, Letter::X)?;
        let mut keys = HashMap::new();
        let mut list = Vec::new();
        for s in &stabilizer {
            let mut w = s.letters.clone();
            w.extend(&base);
            w.extend(inverse_word(&s.letters));
            let w = reduce(w);
            let m = eval_mat(&w);
            if keys.insert(m.key(), ()).is_none() {
                list.push((w, m));
            }
        }
        classes.push(list);
    }

    let perm_of = |w: &[Letter]| -> Permutation {
        let y_inv = triple.y.inverse();
        w.iter().fold(g.identity(), |acc, &l| match l {
            Letter::X => &acc * &triple.x,
            Letter::Y => &acc * &triple.y,
            Letter::YInv => &acc * &y_inv,
        })
    };

    let mut systems = 0u64;
    let mut by_n: BTreeMap<u64, InducedQuadruple> = BTreeMap::new();
    let orders: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for ord in orders {
        // Conjugating a whole system keeps it a system, so e1 is fixed.
        let (w1, m1) = &classes[ord[0]][0];
        for (w2, m2) in &classes[ord[1]] {
            let m12 = m1.mul(*m2);
            for (w3, m3) in &classes[ord[2]] {
                let m4 = m12.mul(*m3).inverse();
                if (m4.trace().abs() - 1.0).abs() > TOL || m4.rotation_sign() != y_sense {
                    continue;
                }
                let mut w4: Vec<Letter> = inverse_word(w3);
                w4.extend(inverse_word(w2));
                w4.extend(inverse_word(w1));
                let w4 = reduce(w4);
                let relator = eval_mat(&[w1.clone(), w2.clone(), w3.clone(), w4.clone()].concat());
                if !relator.is_identity() {
                    continue;
                }
                let imgs: Vec<Permutation> = [w1, w2, w3].iter().map(|w| perm_of(w)).collect();
                if !imgs.iter().all(|p| u.contains(p)) {
                    return Err(Error::Integrity("word image left the subgroup".into()));
                }
                let Ok(quad) = GeneratingQuadruple::new(u, imgs[0].clone(), imgs[1].clone(), imgs[2].clone()) else {
                    continue;
                };
                systems += 1;
                by_n.entry(quad.n).or_insert_with(|| InducedQuadruple {
                    words: [word_string(w1), word_string(w2), word_string(w3), word_string(&w4)],
                    quadruple: quad,
                });
            }
        }
    }
    Ok(InducedReport {
        preimage_signature: sig,
        systems,
        n_values: by_n.keys().copied().collect(),
        witnesses: by_n.into_values().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::episearch::{find_subgroups_of_order, find_triples, SearchConfig};
    use crate::zoo::make_psl2;

    #[test]
    fn representation_satisfies_relations() {
        let (x, y) = triangle_matrices();
        assert!(x.mul(x).is_identity());
        assert!(y.mul(y).mul(y).is_identity());
        let xy = x.mul(y);
        let mut p = Mat::I;
        for k in 1..=7 {
            p = p.mul(xy);
            assert_eq!(p.is_identity(), k == 7);
        }
    }

    #[test]
    fn elliptic_traces_are_those_of_the_periods() {
        // In the discrete group every elliptic trace is +-2cos(j pi / m)
        // with m in {2, 3, 7}.
        let (x, y) = triangle_matrices();
        let allowed: Vec<f64> = [(1, 2), (1, 3), (1, 7), (2, 7), (3, 7)]
            .iter()
            .map(|&(j, m)| 2.0 * (j as f64 * PI / m as f64).cos())
            .collect();
        let mut frontier = vec![Mat::I];
        for _ in 0..9 {
            let mut next = Vec::new();
            for m in &frontier {
                for g in [x, y, y.inverse()] {
                    let p = m.mul(g);
                    let t = p.trace().abs();
                    if t < 2.0 - TOL {
                        assert!(allowed.iter().any(|a| (a - t).abs() < 1e-9), "trace {t}");
                    }
                    next.push(p);
                }
            }
            frontier = next;
        }
    }

    #[test]
    fn psl27_s4() {
        let cfg = SearchConfig::default();
        let g = make_psl2(7).unwrap();
        let triple = find_triples(&g, [2, 3, 7], &cfg).unwrap().witnesses.remove(0);
        let u = find_subgroups_of_order(&g, 24, 64, 0, &cfg).unwrap().remove(0);
        let r = induced_quadruples(&g, &triple, &u, WordBounds::default()).unwrap();
        assert!(r.systems > 0);
        assert!(r.n_values.iter().all(|n| [2, 3, 4].contains(n)));
        for w in &r.witnesses {
            let q = &w.quadruple;
            assert!((&(&(&q.x1 * &q.x2) * &q.x3) * &q.x4).is_identity());
        }
    }
}
