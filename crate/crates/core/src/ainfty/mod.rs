//! Finite A∞ categories given by structure constants, the bar-side
//! codifferential, and validators for the A∞ relations, cyclic invariance
//! and A∞ functors.

mod checks;
mod frobenius;
mod functor;

pub use checks::{check_ainfty, check_assumption};
pub use frobenius::{from_frobenius, FrobeniusData};
pub use functor::{check_functor, Functor};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::Error;
use crate::graded::{format_scalar, odd, sign, LinComb, MorId, Scalar, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Plus,
    Star,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Plus => "plus",
            Orientation::Star => "star",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Star,
            Orientation::Star => Orientation::Plus,
        }
    }
}

/// Which degrees enter the orientation sign of a dual pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Shifted,
    Unshifted,
    /// Every pair gets `+1`; only meaningful as a negative control.
    ConstantPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub source: usize,
    pub target: usize,
    /// Unshifted degree.
    pub degree: i64,
    pub dual: MorId,
    pub orientation: Orientation,
}

/// Morphism as written in a category description, referring to objects
/// and partners by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub dual: String,
    pub orientation: Option<Orientation>,
}

/// `value` is the coefficient of `out` in `m̄(word)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsEntry {
    pub out: String,
    pub word: Vec<String>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryData {
    pub name: String,
    pub d: i64,
    pub max_arity: usize,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub eps: Vec<EpsEntry>,
}

/// A structurally validated finite A∞ category. Morphisms are indexed in
/// lexicographic order of their ids, so index order is id order.
#[derive(Clone, Debug)]
pub struct Category {
    name: String,
    d: i64,
    max_arity: usize,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    shifted: Vec<i64>,
    ids: BTreeMap<String, MorId>,
    /// input word -> Σ ε q
    eps: BTreeMap<Word, LinComb<MorId>>,
    /// q -> [(word, ε)] sorted by word
    by_out: Vec<Vec<(Word, Scalar)>>,
    starting_at: Vec<Vec<MorId>>,
    sign_convention: SignConvention,
}

impl PartialEq for Category {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.d == other.d
            && self.max_arity == other.max_arity
            && self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.eps == other.eps
            && self.sign_convention == other.sign_convention
    }
}

impl Category {
    pub fn new(data: CategoryData) -> Result<Self, Error> {
        let CategoryData {
            name,
            d,
            max_arity,
            objects,
            morphisms: specs,
            eps: entries,
        } = data;
        if d < 1 {
            return Err(Error::Structure(format!("d must be positive, got {d}")));
        }
        if max_arity < 1 {
            return Err(Error::Structure("max_arity must be at least 1".into()));
        }
        let mut object_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate object `{o}`")));
            }
        }

        let mut specs = specs;
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut ids = BTreeMap::new();
        for (i, m) in specs.iter().enumerate() {
            if ids.insert(m.id.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate morphism `{}`", m.id)));
            }
        }
        let lookup_object = |m: &MorphismSpec, o: &str| {
            object_index.get(o).copied().ok_or_else(|| {
                Error::Structure(format!("morphism `{}` refers to unknown object `{o}`", m.id))
            })
        };
        let mut morphisms = Vec::with_capacity(specs.len());
        for m in &specs {
            let dual = *ids.get(&m.dual).ok_or_else(|| Error::Duality {
                morphism: m.id.clone(),
                message: format!("dual `{}` is not a morphism", m.dual),
            })?;
            morphisms.push(Morphism {
                id: m.id.clone(),
                source: lookup_object(m, &m.source)?,
                target: lookup_object(m, &m.target)?,
                degree: m.degree,
                dual,
                orientation: Orientation::Plus,
            });
        }
        for (i, m) in morphisms.iter().enumerate() {
            let q = &morphisms[m.dual];
            let fail = |message: String| Error::Duality {
                morphism: m.id.clone(),
                message,
            };
            if q.dual != i {
                return Err(fail(format!("dual of `{}` is `{}`, not `{}`", q.id, morphisms[q.dual].id, m.id)));
            }
            if q.source != m.target || q.target != m.source {
                return Err(fail(format!("dual `{}` does not run in the opposite direction", q.id)));
            }
            if m.degree + q.degree != d {
                return Err(fail(format!(
                    "degrees {} + {} of the dual pair do not sum to d = {d}",
                    m.degree, q.degree
                )));
            }
        }
        for i in 0..morphisms.len() {
            let j = morphisms[i].dual;
            let orientation = if i == j {
                specs[i].orientation.unwrap_or(Orientation::Plus)
            } else {
                match (specs[i].orientation, specs[j].orientation) {
                    (Some(a), Some(b)) if a == b => {
                        return Err(Error::Duality {
                            morphism: specs[i].id.clone(),
                            message: format!(
                                "`{}` and its dual `{}` are both oriented `{}`",
                                specs[i].id,
                                specs[j].id,
                                a.as_str()
                            ),
                        })
                    }
                    (Some(a), _) => a,
                    (None, Some(b)) => b.flip(),
                    (None, None) if i < j => Orientation::Plus,
                    (None, None) => Orientation::Star,
                }
            };
            morphisms[i].orientation = orientation;
        }

        let shifted = morphisms.iter().map(|m| m.degree - 1).collect();
        let mut starting_at = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            starting_at[m.source].push(i);
        }

        let mut cat = Category {
            name,
            d,
            max_arity,
            objects,
            morphisms,
            shifted,
            ids,
            eps: BTreeMap::new(),
            by_out: Vec::new(),
            starting_at,
            sign_convention: SignConvention::Shifted,
        };

        let mut seen = BTreeSet::new();
        for (n, e) in entries.into_iter().enumerate() {
            let at = format!("eps[{n}]");
            let q = cat.id_of(&e.out).ok_or_else(|| {
                Error::Structure(format!("{at}: unknown output morphism `{}`", e.out))
            })?;
            let word = cat.parse_word(&e.word).map_err(|msg| Error::Structure(format!("{at}: {msg}")))?;
            if word.is_empty() {
                return Err(Error::Structure(format!("{at}: empty word")));
            }
            if word.weight() > max_arity {
                return Err(Error::ArityExceeded {
                    weight: word.weight(),
                    max_arity,
                });
            }
            if !cat.composable(&word) {
                return Err(Error::Structure(format!("{at}: word is not composable")));
            }
            if cat.word_source(&word) != Some(cat.morphisms[q].source)
                || cat.word_target(&word) != Some(cat.morphisms[q].target)
            {
                return Err(Error::Structure(format!(
                    "{at}: word endpoints do not match output `{}`",
                    e.out
                )));
            }
            if !seen.insert((q, word.clone())) {
                return Err(Error::Structure(format!("{at}: duplicate entry")));
            }
            if e.value.is_zero() {
                continue;
            }
            cat.eps.entry(word).or_default().add(q, e.value);
        }
        cat.rebuild_index();
        Ok(cat)
    }

    fn rebuild_index(&mut self) {
        let mut by_out = vec![Vec::new(); self.morphisms.len()];
        for (w, outs) in &self.eps {
            for (q, c) in outs.iter() {
                by_out[*q].push((w.clone(), c.clone()));
            }
        }
        self.by_out = by_out;
    }

    /// The description this category was built from, with orientations made
    /// explicit and eps entries in canonical order.
    pub fn to_data(&self) -> CategoryData {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismSpec {
                id: m.id.clone(),
                source: self.objects[m.source].clone(),
                target: self.objects[m.target].clone(),
                degree: m.degree,
                dual: self.morphisms[m.dual].id.clone(),
                orientation: Some(m.orientation),
            })
            .collect();
        let mut eps = Vec::new();
        for (q, entries) in self.by_out.iter().enumerate() {
            for (w, c) in entries {
                eps.push(EpsEntry {
                    out: self.morphisms[q].id.clone(),
                    word: self.word_ids(w),
                    value: c.clone(),
                });
            }
        }
        CategoryData {
            name: self.name.clone(),
            d: self.d,
            max_arity: self.max_arity,
            objects: self.objects.clone(),
            morphisms,
            eps,
        }
    }

    pub fn with_sign_convention(mut self, convention: SignConvention) -> Self {
        self.sign_convention = convention;
        self
    }

    pub fn sign_convention(&self) -> SignConvention {
        self.sign_convention
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Degree of the double bracket, `2 - d`.
    pub fn bracket_degree(&self) -> i64 {
        2 - self.d
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, p: MorId) -> &Morphism {
        &self.morphisms[p]
    }

    pub fn id_of(&self, id: &str) -> Option<MorId> {
        self.ids.get(id).copied()
    }

    pub fn dual(&self, p: MorId) -> MorId {
        self.morphisms[p].dual
    }

    pub fn source(&self, p: MorId) -> usize {
        self.morphisms[p].source
    }

    pub fn target(&self, p: MorId) -> usize {
        self.morphisms[p].target
    }

    /// Shifted degree `deg - 1`.
    pub fn shifted(&self, p: MorId) -> i64 {
        self.shifted[p]
    }

    /// Total shifted degree of a word.
    pub fn word_degree(&self, w: &Word) -> i64 {
        self.letters_degree(w.letters())
    }

    pub fn letters_degree(&self, letters: &[MorId]) -> i64 {
        letters.iter().map(|&p| self.shifted[p]).sum()
    }

    pub fn eps_entries(&self) -> impl Iterator<Item = (&Word, &LinComb<MorId>)> {
        self.eps.iter()
    }

    pub fn eps_value(&self, out: MorId, word: &Word) -> Scalar {
        self.eps.get(word).map(|l| l.get(&out)).unwrap_or_else(Scalar::zero)
    }

    /// Stored `(word, ε)` pairs whose output is `q`.
    pub fn producing(&self, q: MorId) -> &[(Word, Scalar)] {
        &self.by_out[q]
    }

    pub fn composable(&self, w: &Word) -> bool {
        self.letters_composable(w.letters())
    }

    pub fn letters_composable(&self, letters: &[MorId]) -> bool {
        letters
            .windows(2)
            .all(|pair| self.morphisms[pair[0]].source == self.morphisms[pair[1]].target)
    }

    /// Composable and closing up: `target(a_m) = source(a_1)`.
    pub fn is_cyclic(&self, w: &Word) -> bool {
        match (w.letters().first(), w.letters().last()) {
            (Some(&first), Some(&last)) => {
                self.composable(w) && self.morphisms[first].target == self.morphisms[last].source
            }
            _ => false,
        }
    }

    pub fn word_source(&self, w: &Word) -> Option<usize> {
        w.letters().last().map(|&p| self.morphisms[p].source)
    }

    pub fn word_target(&self, w: &Word) -> Option<usize> {
        w.letters().first().map(|&p| self.morphisms[p].target)
    }

    /// All composable words of weight `1..=max_weight`, by weight and then
    /// lexicographically.
    pub fn words(&self, max_weight: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<MorId>> = (0..self.morphisms.len()).map(|p| vec![p]).collect();
        for weight in 1..=max_weight {
            layer.sort();
            out.extend(layer.iter().cloned().map(Word));
            if weight == max_weight {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                // prepend a letter whose source is the target of a_m
                let t = self.morphisms[w[0]].target;
                for &p in &self.starting_at[t] {
                    let mut v = Vec::with_capacity(w.len() + 1);
                    v.push(p);
                    v.extend_from_slice(w);
                    next.push(v);
                }
            }
            layer = next;
        }
        out
    }

    pub fn words_of_weight(&self, weight: usize) -> Vec<Word> {
        self.words(weight)
            .into_iter()
            .filter(|w| w.weight() == weight)
            .collect()
    }

    pub fn cyclic_words(&self, max_weight: usize) -> Vec<Word> {
        self.words(max_weight)
            .into_iter()
            .filter(|w| self.is_cyclic(w))
            .collect()
    }

    /// The orientation sign `sgn(p, p*)` under the active convention.
    pub fn sgn_pair(&self, p: MorId) -> i64 {
        let deg = |x: MorId| match self.sign_convention {
            SignConvention::Unshifted => self.morphisms[x].degree,
            _ => self.shifted[x],
        };
        if self.sign_convention == SignConvention::ConstantPlus {
            return 1;
        }
        let q = self.morphisms[p].dual;
        if p == q && !odd(deg(p)) {
            return 0;
        }
        match self.morphisms[p].orientation {
            Orientation::Plus => sign(deg(p)),
            Orientation::Star => sign(deg(p) + (deg(p) + 1) * (deg(q) + 1)),
        }
    }

    /// `m̄_n(word) = Σ_q ε(q*, word) q`.
    pub fn mbar(&self, word: &Word) -> Result<LinComb<MorId>, Error> {
        if word.weight() > self.max_arity {
            return Err(Error::ArityExceeded {
                weight: word.weight(),
                max_arity: self.max_arity,
            });
        }
        Ok(self.eps.get(word).cloned().unwrap_or_default())
    }

    /// The codifferential on the bar construction: every contiguous block of
    /// length at most K is replaced by `m̄` of it, with sign
    /// `(-1)^{shifted degree of the letters to its right}`.
    pub fn codifferential(&self, word: &Word) -> LinComb<Word> {
        let mut out = LinComb::new();
        let w = word.letters();
        let len = w.len();
        let mut right = vec![0i64; len + 1];
        for i in (0..len).rev() {
            right[i] = right[i + 1] + self.shifted[w[i]];
        }
        for start in 0..len {
            for k in 1..=self.max_arity.min(len - start) {
                let Some(outs) = self.eps.get(&Word(w[start..start + k].to_vec())) else {
                    continue;
                };
                let negate = odd(right[start + k]);
                for (q, c) in outs.iter() {
                    let mut v = Vec::with_capacity(len - k + 1);
                    v.extend_from_slice(&w[..start]);
                    v.push(*q);
                    v.extend_from_slice(&w[start + k..]);
                    out.add_signed(Word(v), negate, c);
                }
            }
        }
        out
    }

    pub fn parse_word<S: AsRef<str>>(&self, ids: &[S]) -> Result<Word, String> {
        ids.iter()
            .map(|s| {
                self.id_of(s.as_ref())
                    .ok_or_else(|| format!("unknown morphism `{}`", s.as_ref()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn word_ids(&self, w: &Word) -> Vec<String> {
        w.letters().iter().map(|&p| self.morphisms[p].id.clone()).collect()
    }

    pub fn render_word(&self, w: &Word) -> String {
        format!("({})", self.word_ids(w).join(","))
    }

    pub fn render_terms<K: Ord + Clone>(
        &self,
        l: &LinComb<K>,
        render: impl Fn(&K) -> String,
    ) -> Vec<(String, String)> {
        l.iter().map(|(k, c)| (render(k), format_scalar(c))).collect()
    }

    /// Replaces one stored structure constant. Used to build mutation corpora.
    pub fn with_eps(&self, out: MorId, word: Word, value: Scalar) -> Result<Category, Error> {
        let mut data = self.to_data();
        let out_id = self.morphisms[out].id.clone();
        let word_ids = self.word_ids(&word);
        data.eps.retain(|e| !(e.out == out_id && e.word == word_ids));
        data.eps.push(EpsEntry {
            out: out_id,
            word: word_ids,
            value,
        });
        Ok(Category::new(data)?.with_sign_convention(self.sign_convention))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graded::int;

    #[test]
    fn sph4_mbar_examples() {
        let c = catalog::sph(4);
        let e = c.id_of("e").unwrap();
        let x = c.id_of("x").unwrap();
        let ee = c.mbar(&Word(vec![e, e])).unwrap();
        assert_eq!(ee.get(&e), int(1));
        assert_eq!(ee.get(&x), int(0));
        assert!(c.mbar(&Word(vec![x, x])).unwrap().is_zero());
        assert!(matches!(
            c.mbar(&Word(vec![e, e, e])),
            Err(Error::ArityExceeded { weight: 3, max_arity: 2 })
        ));
    }

    #[test]
    fn sph4_codifferential_examples() {
        let c = catalog::sph(4);
        let e = c.id_of("e").unwrap();
        assert!(c.codifferential(&Word(vec![e])).is_zero());
        let d = c.codifferential(&Word(vec![e, e]));
        assert_eq!(d, LinComb::single(Word(vec![e]), int(1)));
    }

    #[test]
    fn zero_codifferential_vanishes() {
        let c = catalog::zero(4, &[("p", "q", 1)]);
        for w in c.words(4) {
            assert!(c.codifferential(&w).is_zero());
        }
    }

    #[test]
    fn sgn_examples() {
        // plus with shifted degree 0
        let c = catalog::zero(4, &[("p", "q", 1)]);
        let p = c.id_of("p").unwrap();
        let q = c.id_of("q").unwrap();
        assert_eq!(c.sgn_pair(p), 1);
        // star, partner shifted degree 1, own shifted degree 1, d = 4
        let c2 = catalog::zero(4, &[("a", "b", 2)]);
        let b = c2.id_of("b").unwrap();
        assert_eq!(c2.morphism(b).orientation, Orientation::Star);
        assert_eq!(c2.sgn_pair(b), -1);
        // self-dual of even shifted degree
        let c3 = catalog::self_dual(6, 3);
        assert_eq!(c3.sgn_pair(0), 0);
        assert_eq!(c.sgn_pair(q), -1);
    }

    #[test]
    fn duality_errors_name_the_morphism() {
        let mut data = catalog::sph(4).to_data();
        data.morphisms[1].degree = 3;
        match Category::new(data) {
            Err(Error::Duality { morphism, .. }) => assert_eq!(morphism, "e"),
            other => panic!("expected duality error, got {other:?}"),
        }
    }

    #[test]
    fn empty_category_is_valid() {
        let c = Category::new(CategoryData {
            name: "empty".into(),
            d: 2,
            max_arity: 2,
            objects: vec![],
            morphisms: vec![],
            eps: vec![],
        })
        .unwrap();
        assert!(c.words(3).is_empty());
    }

    #[test]
    fn conflicting_orientations_rejected() {
        let mut data = catalog::sph(4).to_data();
        for m in &mut data.morphisms {
            m.orientation = Some(Orientation::Plus);
        }
        assert!(matches!(Category::new(data), Err(Error::Duality { .. })));
    }

    #[test]
    fn word_enumeration_respects_objects() {
        let c = catalog::two_spheres(4, 2);
        for w in c.words(4) {
            assert!(c.composable(&w));
        }
        // a: X -> Y cannot follow itself
        let a = c.id_of("a").unwrap();
        assert!(!c.composable(&Word(vec![a, a])));
    }
}
