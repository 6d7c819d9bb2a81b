//! Hochschild chains on cyclic words, the cyclic operators, the Connes
//! complex and its dual, and the identities tying them together.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::ainfty::Category;
use crate::bar::cocommutator_test;
use crate::graded::{int, odd, sign, LinComb, Scalar, Word};
use crate::homology::{ChainComplexSlice, Side};
use crate::linalg::{rank_kernel, rank_kernel_free, Matrix};
use crate::report::{CheckOutcome, ValidationReport, Violation};

/// Signed rotation `t(a_{n+1}, …, a_1) = ±(a_1, a_{n+1}, …, a_2)`.
pub fn t(cat: &Category, w: &Word) -> (i64, Word) {
    let Some(&a1) = w.letters().last() else {
        return (1, w.clone());
    };
    let s1 = cat.shifted(a1);
    (sign(s1 * (cat.word_degree(w) - s1)), w.rotated())
}

/// `N = 1 + t + … + t^n` on a word of weight `n + 1`.
pub fn norm(cat: &Category, w: &Word) -> LinComb<Word> {
    let mut out = LinComb::new();
    let mut cur = w.clone();
    let mut s = 1i64;
    for _ in 0..w.weight() {
        out.add(cur.clone(), int(s));
        let (k, next) = t(cat, &cur);
        s *= k;
        cur = next;
    }
    out
}

pub fn one_minus_t(cat: &Category, w: &Word) -> LinComb<Word> {
    let mut out = LinComb::single(w.clone(), Scalar::one());
    let (s, r) = t(cat, w);
    out.add(r, int(-s));
    out
}

/// Interior insertions; this is the bar codifferential on cyclic words.
pub fn b_prime(cat: &Category, w: &Word) -> LinComb<Word> {
    cat.codifferential(w)
}

/// Wrap-around insertions `m̄(a_i, …, a_1, a_{n+1}, …, a_{n-j+1})` with
/// sign `(-1)^{ν_ij}`.
pub fn b_double_prime(cat: &Category, w: &Word) -> LinComb<Word> {
    let letters = w.letters();
    let len = letters.len();
    let mut out = LinComb::new();
    if len < 2 {
        return out;
    }
    let n = len - 1;
    for j in 0..n {
        for i in 1..=(n - j) {
            if i + j + 1 > cat.max_arity() {
                continue;
            }
            let mut block = letters[len - i..].to_vec();
            block.extend_from_slice(&letters[..=j]);
            let Ok(outs) = cat.mbar(&Word(block)) else {
                continue;
            };
            if outs.is_zero() {
                continue;
            }
            let rest = &letters[j + 1..len - i];
            let nu = cat.letters_degree(&letters[len - i..]) * cat.letters_degree(&letters[..len - i])
                + cat.letters_degree(rest);
            for (q, c) in outs.iter() {
                let mut v = Vec::with_capacity(rest.len() + 1);
                v.push(*q);
                v.extend_from_slice(rest);
                out.add_signed(Word(v), odd(nu), c);
            }
        }
    }
    out
}

pub fn b(cat: &Category, w: &Word) -> LinComb<Word> {
    b_prime(cat, w).plus(&b_double_prime(cat, w))
}

/// Class of `w` in `Coker(1 - T)`: `Some((±1, canonical rotation))`, or
/// `None` when the rotation orbit kills it.
pub fn canonical(cat: &Category, w: &Word) -> Option<(i64, Word)> {
    let mut cur = w.clone();
    let mut s = 1i64;
    let mut best: Option<(Word, i64)> = None;
    let mut killed = false;
    for _ in 0..w.weight().max(1) {
        match &best {
            Some((bw, bs)) if *bw == cur => {
                if *bs != s {
                    killed = true;
                }
            }
            Some((bw, _)) if *bw < cur => {}
            _ => best = Some((cur.clone(), s)),
        }
        let (k, next) = t(cat, &cur);
        s *= k;
        cur = next;
    }
    // the orbit closes up with t^{n+1} = ±1
    if s != 1 && cur == *w {
        killed = true;
    }
    if killed {
        return None;
    }
    best.map(|(bw, bs)| (bs, bw))
}

/// Projection onto the `Coker(1 - T)` basis of canonical rotations.
pub fn to_coinvariants(cat: &Category, x: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (w, c) in x.iter() {
        if let Some((s, r)) = canonical(cat, w) {
            out.add_signed(r, s < 0, c);
        }
    }
    out
}

/// Cyclic average `P(φ)(w) = φ(N w) / (n + 1)` on cyclic words, zero on
/// the rest.
pub fn cyclic_average(cat: &Category, phi: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    let mut seen = std::collections::BTreeSet::new();
    for x in phi.keys() {
        if !cat.is_cyclic(x) {
            continue;
        }
        let mut w = x.clone();
        for _ in 0..x.weight() {
            if seen.insert(w.clone()) {
                let value: Scalar = norm(cat, &w).iter().map(|(k, c)| phi.get(k) * c).sum();
                if !value.is_zero() {
                    out.add(w.clone(), value / int(w.weight() as i64));
                }
            }
            w = w.rotated();
        }
    }
    out
}

/// Whether `φ ∘ T = φ` and `φ` lives on cyclic words.
pub fn is_cyclic_functional(cat: &Category, phi: &LinComb<Word>) -> bool {
    phi.keys().all(|x| {
        if !cat.is_cyclic(x) {
            return false;
        }
        let mut w = x.clone();
        (0..x.weight()).all(|_| {
            let (s, r) = t(cat, &w);
            let ok = phi.get(&r) * int(s) == phi.get(&w);
            w = r;
            ok
        })
    })
}

type Operator<'a> = &'a (dyn Fn(&Category, &Word) -> LinComb<Word> + Sync);

/// `b'N = Nb` and `b(1 - T) = (1 - T)b'` on every cyclic word of weight
/// `<= max_weight`.
pub fn verify_bicomplex(cat: &Category, max_weight: usize) -> ValidationReport {
    verify_bicomplex_with(cat, max_weight, &b_double_prime)
}

/// As [`verify_bicomplex`] with a substitute for the wrap-around part of `b`.
pub fn verify_bicomplex_with(
    cat: &Category,
    max_weight: usize,
    wrap: Operator<'_>,
) -> ValidationReport {
    let words = cat.cyclic_words(max_weight);
    let full_b = |w: &Word| b_prime(cat, w).plus(&wrap(cat, w));
    let results: Vec<(Option<Violation>, Option<Violation>)> = words
        .par_iter()
        .map(|w| {
            let lhs = norm(cat, w).apply(|x| b_prime(cat, x));
            let rhs = full_b(w).apply(|x| norm(cat, x));
            let r1 = lhs.minus(&rhs);
            let lhs = one_minus_t(cat, w).apply(|x| full_b(x));
            let rhs = b_prime(cat, w).apply(|x| one_minus_t(cat, x));
            let r2 = lhs.minus(&rhs);
            let report = |r: LinComb<Word>| {
                (!r.is_zero()).then(|| {
                    Violation::new(vec![cat.render_word(w)], cat.render_terms(&r, |x| cat.render_word(x)))
                })
            };
            (report(r1), report(r2))
        })
        .collect();
    let (first, second): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    ValidationReport::new(vec![
        CheckOutcome::from_results("bprime_n_equals_n_b", first),
        CheckOutcome::from_results("b_one_minus_t_equals_one_minus_t_bprime", second),
    ])
}

/// Cyclic words grouped by `(weight, shifted degree)`.
pub fn cyclic_cells(cat: &Category, max_weight: usize) -> BTreeMap<(usize, i64), Vec<Word>> {
    let mut cells: BTreeMap<(usize, i64), Vec<Word>> = BTreeMap::new();
    for w in cat.cyclic_words(max_weight) {
        cells.entry((w.weight(), cat.word_degree(&w))).or_default().push(w);
    }
    cells
}

fn one_minus_t_matrix(cat: &Category, cell: &[Word]) -> Matrix {
    let index: BTreeMap<&Word, usize> = cell.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = Matrix::zeros(cell.len(), cell.len());
    for (j, w) in cell.iter().enumerate() {
        for (x, c) in one_minus_t(cat, w).iter() {
            m.add_at(index[x], j, c);
        }
    }
    m
}

/// Checks in one `(weight, degree)` cell that `Ker(1 - T)` and
/// `Coker(1 - T)` have the same dimension, that the cocommutator test
/// detects exactly `Ker(1 - T)`, and that `N` is a chain map from the
/// coinvariants to the invariants.
pub fn quillen_check(cat: &Category, degree: i64, max_weight: usize) -> ValidationReport {
    let cells = cyclic_cells(cat, max_weight);
    let mut dims = Vec::new();
    let mut cocomm = Vec::new();
    let mut norm_map = Vec::new();
    for ((weight, deg), cell) in cells.iter().filter(|((_, d), _)| *d == degree) {
        let label = format!("weight {weight}, degree {deg}");
        let m = one_minus_t_matrix(cat, cell);
        let (rank, kernel) = rank_kernel(&m);
        let coker = cell.iter().filter_map(|w| canonical(cat, w)).map(|(_, r)| r);
        let coker_dim = coker.collect::<std::collections::BTreeSet<_>>().len();
        let ker_dim = kernel.len();
        dims.push((ker_dim != coker_dim || rank + ker_dim != cell.len()).then(|| {
            Violation::new(
                vec![label.clone()],
                vec![
                    ("ker".into(), ker_dim.to_string()),
                    ("coker".into(), coker_dim.to_string()),
                ],
            )
        }));

        for v in &kernel {
            let x: LinComb<Word> = cell.iter().cloned().zip(v.iter().cloned()).collect();
            cocomm.push((!cocommutator_test(cat, &x)).then(|| {
                Violation::new(vec![label.clone()], cat.render_terms(&x, |w| cat.render_word(w)))
            }));
        }
        for w in cell {
            let single = LinComb::single(w.clone(), Scalar::one());
            let invariant = one_minus_t(cat, w).is_zero();
            let agrees = cocommutator_test(cat, &single) == invariant
                && cocommutator_test(cat, &norm(cat, w));
            cocomm.push((!agrees).then(|| Violation::new(vec![cat.render_word(w)], vec![])));

            let nw = norm(cat, w);
            let r1 = nw.apply(|x| b_prime(cat, x)).minus(&b(cat, w).apply(|x| norm(cat, x)));
            let r2 = one_minus_t(cat, w).apply(|x| norm(cat, x));
            let r3 = nw.apply(|x| one_minus_t(cat, x));
            let r = r1.plus(&r2).plus(&r3);
            norm_map.push((!r.is_zero()).then(|| {
                Violation::new(vec![cat.render_word(w)], cat.render_terms(&r, |x| cat.render_word(x)))
            }));
        }
    }
    ValidationReport::new(vec![
        CheckOutcome::from_results(format!("ker_coker_dims[deg {degree}]"), dims),
        CheckOutcome::from_results(format!("cocommutator_detects_invariants[deg {degree}]"), cocomm),
        CheckOutcome::from_results(format!("norm_is_chain_map[deg {degree}]"), norm_map),
    ])
}

/// [`quillen_check`] over every degree that occurs up to `max_weight`.
pub fn quillen_check_all(cat: &Category, max_weight: usize) -> ValidationReport {
    let degrees: std::collections::BTreeSet<i64> =
        cyclic_cells(cat, max_weight).keys().map(|(_, d)| *d).collect();
    let parts: Vec<ValidationReport> = degrees
        .into_par_iter()
        .map(|d| quillen_check(cat, d, max_weight))
        .collect();
    let mut out = ValidationReport::default();
    for p in parts {
        out.extend(p);
    }
    out
}

fn words_by_degree(cat: &Category, max_weight: usize) -> BTreeMap<i64, Vec<Word>> {
    let mut out: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
    for w in cat.cyclic_words(max_weight) {
        out.entry(cat.word_degree(&w)).or_default().push(w);
    }
    out
}

/// The truncated Connes complex `Coker(1 - T)` in the given degrees (and
/// one degree on either side), with `b` raising the shifted degree by one.
pub fn connes_slice(
    cat: &Category,
    degrees: std::ops::RangeInclusive<i64>,
    max_weight: usize,
) -> ChainComplexSlice {
    let all = words_by_degree(cat, max_weight);
    let lo = *degrees.start() - 1;
    let hi = *degrees.end() + 1;
    let bases: BTreeMap<i64, Vec<Word>> = (lo..=hi)
        .map(|n| {
            let mut reps: Vec<Word> = all
                .get(&n)
                .map(|ws| ws.iter().filter_map(|w| canonical(cat, w)).map(|(_, r)| r).collect())
                .unwrap_or_default();
            reps.sort_by(|a, b| (a.weight(), a).cmp(&(b.weight(), b)));
            reps.dedup();
            (n, reps)
        })
        .collect();
    let differentials: BTreeMap<i64, Matrix> = (lo..hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let src = &bases[&n];
            let dst = &bases[&(n + 1)];
            let index: BTreeMap<&Word, usize> = dst.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut m = Matrix::zeros(dst.len(), src.len());
            for (j, w) in src.iter().enumerate() {
                for (x, c) in to_coinvariants(cat, &b(cat, w)).iter() {
                    m.add_at(index[x], j, c);
                }
            }
            (n, m)
        })
        .collect();
    ChainComplexSlice {
        side: Side::Chain,
        max_weight,
        cells: bases
            .into_iter()
            .map(|(n, ws)| (n, ws.iter().map(|w| (w.weight(), cat.render_word(w))).collect()))
            .collect(),
        differentials,
    }
}

/// The truncated cyclic cochain complex: functionals invariant under `T`,
/// with `δφ = φ ∘ b` lowering the degree by one. Cochains of degree `n`
/// are written in the kernel basis of `(1 - T)` on degree `n` words.
pub fn cochain_slice(
    cat: &Category,
    degrees: std::ops::RangeInclusive<i64>,
    max_weight: usize,
) -> ChainComplexSlice {
    let all = words_by_degree(cat, max_weight);
    let lo = *degrees.start() - 1;
    let hi = *degrees.end() + 1;
    struct Cell {
        words: Vec<Word>,
        index: BTreeMap<Word, usize>,
        kernel: Vec<Vec<Scalar>>,
        free: Vec<usize>,
    }
    let cells: BTreeMap<i64, Cell> = (lo..=hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let words = all.get(&n).cloned().unwrap_or_default();
            let index: BTreeMap<Word, usize> =
                words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            // φ is invariant iff φ((1 - T) w) = 0 for every word w
            let mut constraints = Matrix::zeros(words.len(), words.len());
            for (i, w) in words.iter().enumerate() {
                for (x, c) in one_minus_t(cat, w).iter() {
                    constraints.add_at(i, index[x], c);
                }
            }
            let (_, kernel, free) = rank_kernel_free(&constraints);
            (n, Cell { words, index, kernel, free })
        })
        .collect();
    let differentials: BTreeMap<i64, Matrix> = (lo + 1..=hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let src = &cells[&n];
            let dst = &cells[&(n - 1)];
            let mut m = Matrix::zeros(dst.kernel.len(), src.kernel.len());
            let pulled: Vec<LinComb<Word>> = dst.words.iter().map(|w| b(cat, w)).collect();
            for (j, phi) in src.kernel.iter().enumerate() {
                let value = |w: usize| -> Scalar {
                    pulled[w]
                        .iter()
                        .map(|(x, c)| src.index.get(x).map_or_else(Scalar::zero, |&k| &phi[k] * c))
                        .sum()
                };
                for (i, &f) in dst.free.iter().enumerate() {
                    m.set(i, j, value(f));
                }
            }
            (n, m)
        })
        .collect();
    ChainComplexSlice {
        side: Side::Cochain,
        max_weight,
        cells: cells
            .iter()
            .map(|(n, c)| {
                let labels = c
                    .free
                    .iter()
                    .map(|&f| (c.words[f].weight(), format!("[{}]", cat.render_word(&c.words[f]))))
                    .collect();
                (*n, labels)
            })
            .collect(),
        differentials,
    }
}
