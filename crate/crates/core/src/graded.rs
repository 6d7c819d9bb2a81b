//! Exact scalars, tensor words, linear combinations and Koszul signs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number. `BigRational` keeps lowest terms with a positive
/// denominator after every operation.
pub type Scalar = BigRational;

/// Index of a basis morphism inside its category.
pub type MorId = usize;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `true` when `(-1)^e` is `-1`.
#[inline]
pub fn odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

#[inline]
pub fn sign(e: i64) -> i64 {
    if odd(e) {
        -1
    } else {
        1
    }
}

/// `(-1)^{deg_left * deg_right}`.
pub fn koszul_swap_sign(deg_left: i64, deg_right: i64) -> Scalar {
    int(sign(deg_left * deg_right))
}

/// Sign produced by moving the shift through `v_1 ⊗ … ⊗ v_n`:
/// `(-1)^{(n-1)|v_n| + (n-2)|v_{n-1}| + … + |v_2|}`.
pub fn shift_sign(unshifted_degrees: &[i64]) -> Result<Scalar, Error> {
    if unshifted_degrees.is_empty() {
        return Err(Error::InvalidInput("shift_sign needs at least one degree".into()));
    }
    let e: i64 = unshifted_degrees
        .iter()
        .enumerate()
        .map(|(k, deg)| k as i64 * deg)
        .sum();
    Ok(int(sign(e)))
}

/// Formats as `num/den`, always with an explicit denominator.
pub fn format_scalar(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Scalar::new(n, d))
}

/// A tensor word `(a_m, …, a_1)`. Index 0 holds `a_m`; the last entry is
/// `a_1`, the factor applied first. The empty word stands for the unit
/// component of the bar construction and only appears inside extended
/// double functionals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<MorId>);

impl Word {
    pub fn new(letters: Vec<MorId>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(p: MorId) -> Self {
        Word(vec![p])
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[MorId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Cyclic rotation `(a_1, a_{n+1}, …, a_2)`, without sign.
    pub fn rotated(&self) -> Word {
        let mut v = Vec::with_capacity(self.0.len());
        if let Some(&last) = self.0.last() {
            v.push(last);
            v.extend_from_slice(&self.0[..self.0.len() - 1]);
        }
        Word(v)
    }
}

impl From<Vec<MorId>> for Word {
    fn from(v: Vec<MorId>) -> Self {
        Word(v)
    }
}

/// Finitely supported linear combination with no zero coefficients stored.
/// Ordered keys make every iteration and every serialized form deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, c: Scalar) -> Self {
        let mut out = Self::new();
        out.add(key, c);
        out
    }

    pub fn add(&mut self, key: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `(-1)^negate * c` without building a signed scalar.
    pub fn add_signed(&mut self, key: K, negate: bool, c: &Scalar) {
        if negate {
            self.add(key, -c.clone());
        } else {
            self.add(key, c.clone());
        }
    }

    pub fn add_all(&mut self, other: &LinComb<K>, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.0 {
            self.add(k.clone(), c * factor);
        }
    }

    pub fn plus(mut self, other: &LinComb<K>) -> Self {
        self.add_all(other, &Scalar::one());
        self
    }

    pub fn minus(mut self, other: &LinComb<K>) -> Self {
        self.add_all(other, &-Scalar::one());
        self
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        let mut out = Self::new();
        out.add_all(self, factor);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Scalar::one())
    }

    pub fn get(&self, key: &K) -> Scalar {
        self.0.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coefficient(&self, key: &K) -> Option<&Scalar> {
        self.0.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn into_map(self) -> BTreeMap<K, Scalar> {
        self.0
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb(
            self.0
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        )
    }

    /// Applies a linear operator given on basis keys.
    pub fn apply<K2: Ord + Clone>(&self, mut op: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, c) in &self.0 {
            out.add_all(&op(k), c);
        }
        out
    }

    pub fn max_abs_numerator(&self) -> BigInt {
        self.0
            .values()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}){:?}", format_scalar(c), k)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_swap_sign(0, 5), int(1));
        assert_eq!(koszul_swap_sign(1, 1), int(-1));
        assert_eq!(koszul_swap_sign(3, 2), int(1));
        assert_eq!(koszul_swap_sign(-1, 3), int(-1));
    }

    #[test]
    fn shift_sign_examples() {
        assert_eq!(shift_sign(&[3]).unwrap(), int(1));
        assert_eq!(shift_sign(&[0, 1]).unwrap(), int(-1));
        assert_eq!(shift_sign(&[1, 1, 1]).unwrap(), int(-1));
        assert!(matches!(shift_sign(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn scalar_text_round_trip() {
        let c = parse_scalar("-6/4").unwrap();
        assert_eq!(format_scalar(&c), "-3/2");
        assert_eq!(format_scalar(&parse_scalar("7").unwrap()), "7/1");
        assert_eq!(format_scalar(&parse_scalar("3/-9").unwrap()), "-1/3");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn lincomb_drops_zeros() {
        let mut l: LinComb<u8> = LinComb::new();
        l.add(1, int(2));
        l.add(1, int(-2));
        assert!(l.is_zero());
        l.add(2, int(0));
        assert!(l.is_zero());
    }

    #[test]
    fn rotation() {
        let w = Word(vec![3, 2, 1]);
        assert_eq!(w.rotated(), Word(vec![1, 3, 2]));
        assert_eq!(w.rotated().rotated().rotated(), w);
    }
}
