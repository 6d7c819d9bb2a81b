use rayon::prelude::*;

use super::Category;
use crate::graded::{format_scalar, odd, Scalar, Word};
use crate::report::{CheckOutcome, ValidationReport, Violation};

/// Verifies the degree law of every structure constant and that the
/// codifferential squares to zero on all words of weight `<= 2K - 1`.
pub fn check_ainfty(cat: &Category) -> ValidationReport {
    let mut degree = Vec::new();
    for (w, outs) in cat.eps_entries() {
        for (q, c) in outs.iter() {
            let ok = cat.shifted(*q) == cat.word_degree(w) + 1;
            degree.push((!ok).then(|| {
                Violation::new(
                    vec![format!("{} -> {}", cat.render_word(w), cat.morphism(*q).id)],
                    vec![("value".into(), format_scalar(c))],
                )
            }));
        }
    }
    let bound = 2 * cat.max_arity() - 1;
    let words = cat.words(bound);
    let square: Vec<Option<Violation>> = words
        .par_iter()
        .map(|w| {
            let r = cat.codifferential(w).apply(|x| cat.codifferential(x));
            (!r.is_zero()).then(|| {
                Violation::new(
                    vec![cat.render_word(w)],
                    cat.render_terms(&r, |x| cat.render_word(x)),
                )
            })
        })
        .collect();
    ValidationReport::new(vec![
        CheckOutcome::from_results("degree", degree),
        CheckOutcome::from_results("codifferential_squared", square),
    ])
}

/// Duality of degrees, and cyclic invariance of every stored constant:
/// `ε(q*, p_n..p_1) = (-1)^{|q*|(|p_1|+..+|p_n|)} ε(p_n, .., p_1, q*)`,
/// where the rotated constant is the coefficient of `p_n*` in
/// `m̄(p_{n-1}, .., p_1, q*)`.
pub fn check_assumption(cat: &Category) -> ValidationReport {
    let duality: Vec<Option<Violation>> = (0..cat.morphism_count())
        .map(|p| {
            let q = cat.dual(p);
            let m = cat.morphism(p);
            let n = cat.morphism(q);
            let ok = cat.dual(q) == p
                && n.source == m.target
                && n.target == m.source
                && m.degree + n.degree == cat.d();
            (!ok).then(|| Violation::new(vec![m.id.clone(), n.id.clone()], vec![]))
        })
        .collect();
    let mut cyclic = Vec::new();
    for (w, outs) in cat.eps_entries() {
        for (q, c) in outs.iter() {
            let (lhs, rhs) = rotation_pair(cat, *q, w, c);
            cyclic.push((lhs != rhs).then(|| {
                Violation::new(
                    vec![format!("{} -> {}", cat.render_word(w), cat.morphism(*q).id)],
                    vec![
                        ("lhs".into(), format_scalar(&lhs)),
                        ("rhs".into(), format_scalar(&rhs)),
                    ],
                )
            }));
        }
    }
    ValidationReport::new(vec![
        CheckOutcome::from_results("duality", duality),
        CheckOutcome::from_results("cyclic_invariance", cyclic),
    ])
}

fn rotation_pair(cat: &Category, q: usize, w: &Word, c: &Scalar) -> (Scalar, Scalar) {
    let qs = cat.dual(q);
    let letters = w.letters();
    let mut rotated = letters[1..].to_vec();
    rotated.push(qs);
    let out = cat.dual(letters[0]);
    let value = cat.eps_value(out, &Word(rotated));
    let rhs = if odd(cat.shifted(qs) * cat.word_degree(w)) {
        -value
    } else {
        value
    };
    (c.clone(), rhs)
}
