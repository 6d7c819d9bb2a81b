//! Reduced bar construction combinatorics and the dual DG algebra of
//! finitely supported functionals.
//!
//! Functionals are evaluated with the Koszul rule: a tensor `x' ⊗ x''` of
//! functionals takes the value `(-1)^{|x''||u|} x'(u) x''(v)` on `(u, v)`,
//! where all degrees are shifted word degrees.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::ainfty::Category;
use crate::graded::{odd, LinComb, Scalar, Word};

/// Finitely supported function on tensor words.
pub type Functional = LinComb<Word>;

/// Finitely supported function on pairs of words. Empty words stand for the
/// unit component and appear only in extended brackets.
pub type DoubleFunctional = LinComb<(Word, Word)>;

/// Finitely supported function on triples of words.
pub type TripleFunctional = LinComb<(Word, Word, Word)>;

pub fn delta(w: Word) -> Functional {
    LinComb::single(w, Scalar::from_integer(1.into()))
}

pub fn weight_window(f: &Functional) -> Option<RangeInclusive<usize>> {
    let min = f.keys().map(Word::weight).min()?;
    let max = f.keys().map(Word::weight).max()?;
    Some(min..=max)
}

/// Splits a functional into homogeneous parts by shifted degree.
pub fn homogeneous_parts(cat: &Category, f: &Functional) -> BTreeMap<i64, Functional> {
    let mut out: BTreeMap<i64, Functional> = BTreeMap::new();
    for (w, c) in f.iter() {
        out.entry(cat.word_degree(w)).or_default().add(w.clone(), c.clone());
    }
    out
}

/// The `n - 1` splittings `((a_n..a_{i+1}), (a_i..a_1))`.
pub fn reduced_coproduct(w: &Word) -> Vec<(Word, Word)> {
    (1..w.weight())
        .map(|k| (w.slice(0..k), w.slice(k..w.weight())))
        .collect()
}

pub fn evaluate(f: &Functional, x: &LinComb<Word>) -> Scalar {
    x.iter().map(|(w, c)| f.get(w) * c).sum()
}

/// `(f • g)(w) = Σ_{w = u·l} (-1)^{|g||u|} f(u) g(l)`.
pub fn convolution(cat: &Category, f: &Functional, g: &Functional) -> Functional {
    let mut out = LinComb::new();
    for (x, cf) in f.iter() {
        let dx = cat.word_degree(x);
        for (y, cg) in g.iter() {
            if !joinable(cat, x, y) {
                continue;
            }
            let negate = odd(cat.word_degree(y) * dx);
            out.add_signed(x.concat(y), negate, &(cf * cg));
        }
    }
    out
}

/// Whether `x·y` is composable, given both are.
pub fn joinable(cat: &Category, x: &Word, y: &Word) -> bool {
    match (x.letters().last(), y.letters().first()) {
        (Some(&a), Some(&b)) => cat.source(a) == cat.target(b),
        _ => true,
    }
}

/// `(∂f)(w) = f(m̄ w)`, computed by pulling each supported word back
/// through the structure constants.
pub fn dual_differential(cat: &Category, f: &Functional) -> Functional {
    let mut out = LinComb::new();
    for (x, c) in f.iter() {
        let letters = x.letters();
        let mut right = 0i64;
        for pos in (0..letters.len()).rev() {
            let q = letters[pos];
            let negate = odd(right);
            for (block, e) in cat.producing(q) {
                let mut v = Vec::with_capacity(letters.len() + block.weight() - 1);
                v.extend_from_slice(&letters[..pos]);
                v.extend_from_slice(block.letters());
                v.extend_from_slice(&letters[pos + 1..]);
                let w = Word(v);
                if cat.composable(&w) {
                    out.add_signed(w, negate, &(c * e));
                }
            }
            right += cat.shifted(q);
        }
    }
    out
}

/// Weights that `dual_differential` can reach from a window.
pub fn differential_window(cat: &Category, window: RangeInclusive<usize>) -> RangeInclusive<usize> {
    *window.start()..=*window.end() + cat.max_arity() - 1
}

/// `(∂F)(u, v) = (-1)^{|v|} F(m̄u, v) + F(u, m̄v)`.
pub fn dual_differential_double(cat: &Category, big_f: &DoubleFunctional) -> DoubleFunctional {
    let mut out = LinComb::new();
    for ((u, v), c) in big_f.iter() {
        let dv = cat.word_degree(v);
        for (w, k) in dual_differential(cat, &delta(u.clone())).iter() {
            out.add_signed((w.clone(), v.clone()), odd(dv), &(c * k));
        }
        for (w, k) in dual_differential(cat, &delta(v.clone())).iter() {
            out.add((u.clone(), w.clone()), c * k);
        }
    }
    out
}

/// Outer left action `(g·F)(u, v) = Σ (-1)^{|g|(|u_lo|+|v|)} g(u_hi) F(u_lo, v)`.
pub fn left_action(cat: &Category, g: &Functional, big_f: &DoubleFunctional) -> DoubleFunctional {
    let mut out = LinComb::new();
    for (x, cg) in g.iter() {
        let dg = cat.word_degree(x);
        for ((ul, v), c) in big_f.iter() {
            if !joinable(cat, x, ul) {
                continue;
            }
            let negate = odd(dg * (cat.word_degree(ul) + cat.word_degree(v)));
            out.add_signed((x.concat(ul), v.clone()), negate, &(cg * c));
        }
    }
    out
}

/// Outer right action `(F·h)(u, v) = Σ (-1)^{|h|(|u|+|v_hi|)} F(u, v_hi) h(v_lo)`.
pub fn right_action(cat: &Category, big_f: &DoubleFunctional, h: &Functional) -> DoubleFunctional {
    let mut out = LinComb::new();
    for ((u, vh), c) in big_f.iter() {
        for (y, ch) in h.iter() {
            if !joinable(cat, vh, y) {
                continue;
            }
            let negate = odd(cat.word_degree(y) * (cat.word_degree(u) + cat.word_degree(vh)));
            out.add_signed((u.clone(), vh.concat(y)), negate, &(c * ch));
        }
    }
    out
}

/// Koszul flip `F°(u, v) = (-1)^{|u||v|} F(v, u)`.
pub fn flip(cat: &Category, big_f: &DoubleFunctional) -> DoubleFunctional {
    big_f
        .iter()
        .map(|((a, b), c)| {
            let s = odd(cat.word_degree(a) * cat.word_degree(b));
            ((b.clone(), a.clone()), if s { -c.clone() } else { c.clone() })
        })
        .collect()
}

/// Σ over every splitting `w = u·v`, including `u` or `v` empty, of `F(u, v)`.
pub fn contract(big_f: &DoubleFunctional) -> Functional {
    big_f
        .iter()
        .map(|((u, v), c)| (u.concat(v), c.clone()))
        .collect()
}

pub fn reduced_part(big_f: &DoubleFunctional) -> DoubleFunctional {
    big_f.filter(|(u, v)| !u.is_empty() && !v.is_empty())
}

/// Whether `(Δ̃ - σ∘Δ̃)(x) = 0`, with `σ(u ⊗ l) = (-1)^{|u||l|} l ⊗ u`.
pub fn cocommutator_test(cat: &Category, x: &LinComb<Word>) -> bool {
    let mut acc: DoubleFunctional = LinComb::new();
    for (w, c) in x.iter() {
        for (u, l) in reduced_coproduct(w) {
            let negate = odd(cat.word_degree(&u) * cat.word_degree(&l));
            acc.add((u.clone(), l.clone()), c.clone());
            acc.add_signed((l, u), !negate, c);
        }
    }
    acc.is_zero()
}
