use std::collections::BTreeMap;

use rayon::prelude::*;

use super::Category;
use crate::error::Error;
use crate::graded::{LinComb, MorId, Scalar, Word};
use crate::report::{CheckOutcome, ValidationReport, Violation};

/// Components `F^n` of an A∞ functor on bar words, stored on the shifted
/// (degree zero) side.
#[derive(Clone, Debug)]
pub struct Functor {
    object_map: Vec<usize>,
    components: BTreeMap<Word, LinComb<MorId>>,
}

impl Functor {
    /// `object_map` pairs source and target object ids. `components` maps a
    /// source word to a combination of target morphisms.
    pub fn new(
        source: &Category,
        target: &Category,
        object_map: &[(&str, &str)],
        components: &[(Vec<&str>, Vec<(&str, Scalar)>)],
    ) -> Result<Self, Error> {
        let mut map = vec![usize::MAX; source.objects().len()];
        for (a, b) in object_map {
            let i = source
                .objects()
                .iter()
                .position(|o| o == a)
                .ok_or_else(|| Error::ShapeMismatch(format!("unknown source object `{a}`")))?;
            let j = target
                .objects()
                .iter()
                .position(|o| o == b)
                .ok_or_else(|| Error::ShapeMismatch(format!("unknown target object `{b}`")))?;
            map[i] = j;
        }
        if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
            return Err(Error::ShapeMismatch(format!(
                "object `{}` is not mapped",
                source.objects()[i]
            )));
        }
        let mut out = BTreeMap::new();
        for (word, terms) in components {
            let w = source.parse_word(word).map_err(Error::ShapeMismatch)?;
            if w.is_empty() || !source.composable(&w) {
                return Err(Error::ShapeMismatch(format!("{word:?} is not a composable word")));
            }
            let (s, t) = (map[source.word_source(&w).unwrap()], map[source.word_target(&w).unwrap()]);
            let mut image = LinComb::new();
            for (id, c) in terms {
                let q = target
                    .id_of(id)
                    .ok_or_else(|| Error::ShapeMismatch(format!("unknown target morphism `{id}`")))?;
                if target.source(q) != s || target.target(q) != t {
                    return Err(Error::ShapeMismatch(format!(
                        "`{id}` does not connect the images of {word:?}"
                    )));
                }
                if target.shifted(q) != source.word_degree(&w) {
                    return Err(Error::ShapeMismatch(format!(
                        "`{id}` has shifted degree {} but {word:?} has {}",
                        target.shifted(q),
                        source.word_degree(&w)
                    )));
                }
                image.add(q, c.clone());
            }
            out.insert(w, image);
        }
        Ok(Functor {
            object_map: map,
            components: out,
        })
    }

    pub fn identity(cat: &Category) -> Self {
        let components = (0..cat.morphism_count())
            .map(|p| (Word::letter(p), LinComb::single(p, Scalar::from_integer(1.into()))))
            .collect();
        Functor {
            object_map: (0..cat.objects().len()).collect(),
            components,
        }
    }

    pub fn object_image(&self, object: usize) -> usize {
        self.object_map[object]
    }

    fn component(&self, w: &Word) -> Option<&LinComb<MorId>> {
        self.components.get(w)
    }

    /// Sum over all ways to cut `w` into consecutive blocks, of the tensor
    /// product of the components on each block.
    fn bar_image(&self, w: &Word) -> LinComb<Word> {
        let letters = w.letters();
        let mut partial: Vec<LinComb<Word>> = vec![LinComb::new(); letters.len() + 1];
        partial[0].add(Word::empty(), Scalar::from_integer(1.into()));
        for end in 1..=letters.len() {
            let mut acc = LinComb::new();
            for start in 0..end {
                if partial[start].is_zero() {
                    continue;
                }
                let Some(image) = self.component(&Word(letters[start..end].to_vec())) else {
                    continue;
                };
                for (prefix, c) in partial[start].iter() {
                    for (q, k) in image.iter() {
                        let mut v = prefix.0.clone();
                        v.push(*q);
                        acc.add(Word(v), c * k);
                    }
                }
            }
            partial[end] = acc;
        }
        partial.pop().unwrap_or_default()
    }
}

/// Checks `Σ m̄^B_r(F^{s_r}, …, F^{s_1}) = Σ F(…, m̄^A_q(…), …)` on every
/// composable source word of weight `<= max_weight`.
pub fn check_functor(
    functor: &Functor,
    source: &Category,
    target: &Category,
    max_weight: usize,
) -> ValidationReport {
    let words = source.words(max_weight);
    let results: Vec<Option<Violation>> = words
        .par_iter()
        .map(|w| {
            let lhs = functor.bar_image(w).apply(|u| {
                if u.weight() > target.max_arity() {
                    LinComb::new()
                } else {
                    target.mbar(u).unwrap_or_default()
                }
            });
            let rhs = source
                .codifferential(w)
                .apply(|u| functor.component(u).cloned().unwrap_or_default());
            let r = lhs.minus(&rhs);
            (!r.is_zero()).then(|| {
                Violation::new(
                    vec![source.render_word(w)],
                    target.render_terms(&r, |q| target.morphism(*q).id.clone()),
                )
            })
        })
        .collect();
    ValidationReport::new(vec![CheckOutcome::from_results("functor_equation", results)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graded::int;

    #[test]
    fn identity_on_sph4_passes() {
        let cat = catalog::sph(4);
        assert!(check_functor(&Functor::identity(&cat), &cat, &cat, 4).passed());
    }

    #[test]
    fn zero_functor_between_zero_categories_passes() {
        let cat = catalog::zero(4, &[("p", "q", 1)]);
        let f = Functor::new(&cat, &cat, &[("o", "o")], &[]).unwrap();
        assert!(check_functor(&f, &cat, &cat, 4).passed());
    }

    #[test]
    fn rescaling_the_unit_fails_at_weight_two() {
        let cat = catalog::sph(4);
        let f = Functor::new(
            &cat,
            &cat,
            &[("o", "o")],
            &[(vec!["e"], vec![("e", int(2))]), (vec!["x"], vec![("x", int(1))])],
        )
        .unwrap();
        let report = check_functor(&f, &cat, &cat, 3);
        assert!(!report.passed());
        let first = &report.checks[0].violations[0];
        assert_eq!(first.input, vec!["(e,e)".to_string()]);
    }

    #[test]
    fn shape_mismatch_on_degree() {
        let cat = catalog::sph(4);
        let r = Functor::new(&cat, &cat, &[("o", "o")], &[(vec!["e"], vec![("x", int(1))])]);
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn shape_mismatch_on_unknown_object() {
        let cat = catalog::sph(4);
        assert!(matches!(
            Functor::new(&cat, &cat, &[("nope", "o")], &[]),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
