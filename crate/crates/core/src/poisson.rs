//! The double bracket on the dual bar algebra, its axioms, and the induced
//! Lie bracket on cyclic functionals.
//!
//! All degrees are shifted word degrees. `D` below is the bracket degree
//! `2 - d`; only its parity enters the signs.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ainfty::Category;
use crate::bar::{
    contract, convolution, delta, dual_differential, dual_differential_double, flip,
    left_action, right_action, DoubleFunctional, Functional, TripleFunctional,
};
use crate::error::Error;
use crate::graded::{odd, sign, LinComb, Scalar, Word};
use crate::hochschild::{cyclic_average, is_cyclic_functional};
use crate::report::{CheckOutcome, ValidationReport, Violation};

/// Computes the bracket term by term over `x ∈ supp f`, `y ∈ supp g` and
/// every matching pair `x[α] = p`, `y[β] = p*`. `extended` keeps pairs with
/// an empty side.
fn raw_bracket(cat: &Category, f: &Functional, g: &Functional, extended: bool) -> DoubleFunctional {
    let d = cat.d();
    let mut out = LinComb::new();
    for (x, cf) in f.iter() {
        let df = cat.word_degree(x);
        let xl = x.letters();
        for (y, cg) in g.iter() {
            let dg = cat.word_degree(y);
            let yl = y.letters();
            let twist = df * dg + d * (df + dg);
            let c = cf * cg;
            for (al, &p) in xl.iter().enumerate() {
                let sgn = cat.sgn_pair(p);
                if sgn == 0 {
                    continue;
                }
                let ps = cat.dual(p);
                for (be, _) in yl.iter().enumerate().filter(|(_, &q)| q == ps) {
                    let (b_hi, a_lo) = (&xl[..al], &xl[al + 1..]);
                    let (a_hi, b_lo) = (&yl[..be], &yl[be + 1..]);
                    if !extended
                        && ((a_hi.is_empty() && a_lo.is_empty()) || (b_hi.is_empty() && b_lo.is_empty()))
                    {
                        continue;
                    }
                    let u: Vec<_> = a_hi.iter().chain(a_lo).copied().collect();
                    let v: Vec<_> = b_hi.iter().chain(b_lo).copied().collect();
                    let (u, v) = (Word(u), Word(v));
                    if !cat.composable(&u) || !cat.composable(&v) {
                        continue;
                    }
                    let sa_hi = cat.letters_degree(a_hi);
                    let sb_hi = cat.letters_degree(b_hi);
                    let eps = (sa_hi + sb_hi + cat.shifted(p)) * cat.letters_degree(a_lo)
                        + sa_hi * (sb_hi + cat.shifted(ps));
                    out.add_signed((u, v), odd(eps + twist) != (sgn < 0), &c);
                }
            }
        }
    }
    out
}

/// `{{f, g}}` on pairs of nonempty words.
pub fn double_bracket(cat: &Category, f: &Functional, g: &Functional) -> DoubleFunctional {
    raw_bracket(cat, f, g, false)
}

/// `{{f, g}}` including the components where one side is the empty word.
pub fn double_bracket_extended(cat: &Category, f: &Functional, g: &Functional) -> DoubleFunctional {
    raw_bracket(cat, f, g, true)
}

/// `{f, g} = μ ∘ {{f, g}}`: the value on `w` sums the extended double
/// bracket over every splitting `w = u·v`.
pub fn bracket(cat: &Category, f: &Functional, g: &Functional) -> Functional {
    contract(&double_bracket_extended(cat, f, g)).filter(|w| cat.composable(w))
}

fn require_cyclic(cat: &Category, f: &Functional, which: &str) -> Result<(), Error> {
    if is_cyclic_functional(cat, f) {
        Ok(())
    } else {
        Err(Error::NotCyclic(format!("argument {which} is not invariant under T")))
    }
}

/// `P{f, g}` for cyclic `f`, `g`.
pub fn lie_bracket_cyclic(cat: &Category, f: &Functional, g: &Functional) -> Result<Functional, Error> {
    require_cyclic(cat, f, "f")?;
    require_cyclic(cat, g, "g")?;
    Ok(cyclic_average(cat, &bracket(cat, f, g)))
}

fn lie(cat: &Category, f: &Functional, g: &Functional) -> Functional {
    cyclic_average(cat, &bracket(cat, f, g))
}

/// `{a,{b,c}} - {{a,b},c} - (-1)^{(|a|+D)(|b|+D)} {b,{a,c}}` after cyclic
/// averaging, summed over homogeneous components of the arguments.
pub fn jacobi_on_cyclic(
    cat: &Category,
    f: &Functional,
    g: &Functional,
    h: &Functional,
) -> Result<Functional, Error> {
    require_cyclic(cat, f, "f")?;
    require_cyclic(cat, g, "g")?;
    require_cyclic(cat, h, "h")?;
    let d = cat.d();
    let fs = crate::bar::homogeneous_parts(cat, f);
    let gs = crate::bar::homogeneous_parts(cat, g);
    let mut out = Functional::new();
    for (da, a) in &fs {
        for (db, b) in &gs {
            let lhs = lie(cat, a, &lie(cat, b, h));
            let r1 = lie(cat, &lie(cat, a, b), h);
            let r2 = lie(cat, b, &lie(cat, a, h));
            let r2 = if odd((da + d) * (db + d)) { r2.negated() } else { r2 };
            out = out.plus(&lhs.minus(&r1).minus(&r2));
        }
    }
    Ok(cyclic_average(cat, &out))
}

/// `σ_s X`: `(σ_s X)(u_1, u_2, u_3) = (-1)^t X(u_{s(1)}, u_{s(2)}, u_{s(3)})`
/// with `t` the Koszul sign of the inversions of `s`. `s` lists the 0-based
/// images of `0, 1, 2`.
pub fn permute3(cat: &Category, x: &TripleFunctional, s: [usize; 3]) -> TripleFunctional {
    let mut inv = [0usize; 3];
    for i in 0..3 {
        inv[s[i]] = i;
    }
    let mut out = LinComb::new();
    for ((w0, w1, w2), c) in x.iter() {
        let ws = [w0, w1, w2];
        let mut u: [&Word; 3] = [w0, w0, w0];
        for i in 0..3 {
            u[s[i]] = ws[i];
        }
        let mut t = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if inv[j] < inv[i] {
                    t += cat.word_degree(u[i]) * cat.word_degree(u[j]);
                }
            }
        }
        out.add_signed((u[0].clone(), u[1].clone(), u[2].clone()), odd(t), c);
    }
    out
}

/// `{{a, F}}_L`, bracketing `a` into the first tensor factor of `F`.
pub fn bracket_left(cat: &Category, a: &Functional, big_f: &DoubleFunctional) -> TripleFunctional {
    let mut out = LinComb::new();
    for ((x1, w), c) in big_f.iter() {
        let dw = cat.word_degree(w);
        let dx = cat.word_degree(x1);
        for ((u, v), k) in double_bracket(cat, a, &delta(x1.clone())).iter() {
            let e = dw * (cat.word_degree(u) + cat.word_degree(v)) + dw * dx;
            out.add_signed((u.clone(), v.clone(), w.clone()), odd(e), &(c * k));
        }
    }
    out
}

/// The three-term double Jacobi expression; zero when the identity holds.
pub fn double_jacobiator(cat: &Category, a: &Functional, b: &Functional, c: &Functional) -> TripleFunctional {
    let d = cat.d();
    let mut out = TripleFunctional::new();
    let ap = crate::bar::homogeneous_parts(cat, a);
    let bp = crate::bar::homogeneous_parts(cat, b);
    let cp = crate::bar::homogeneous_parts(cat, c);
    for (da, a) in &ap {
        for (db, b) in &bp {
            for (dc, c) in &cp {
                let t1 = bracket_left(cat, a, &double_bracket(cat, b, c));
                let t2 = permute3(cat, &bracket_left(cat, b, &double_bracket(cat, c, a)), [1, 2, 0]);
                let t3 = permute3(cat, &bracket_left(cat, c, &double_bracket(cat, a, b)), [2, 0, 1]);
                let t2 = if odd((da + d) * (db + dc)) { t2.negated() } else { t2 };
                let t3 = if odd((dc + d) * (da + db)) { t3.negated() } else { t3 };
                out = out.plus(&t1).plus(&t2).plus(&t3);
            }
        }
    }
    out
}

/// Outcome of [`verify_double_poisson`].
#[derive(Clone, Debug)]
pub struct BracketReport {
    pub weight_bound: usize,
    pub degree_check: CheckOutcome,
    pub skew_check: CheckOutcome,
    pub derivation_check: CheckOutcome,
    pub double_jacobi_check: CheckOutcome,
    pub differential_check: CheckOutcome,
}

impl BracketReport {
    pub fn checks(&self) -> [&CheckOutcome; 5] {
        [
            &self.degree_check,
            &self.skew_check,
            &self.derivation_check,
            &self.double_jacobi_check,
            &self.differential_check,
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }

    pub fn to_validation_report(&self) -> ValidationReport {
        ValidationReport::new(self.checks().iter().map(|c| (*c).clone()).collect())
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.to_validation_report().to_json();
        v["weight_bound"] = json!(self.weight_bound);
        v
    }
}

fn render_pair(cat: &Category, (u, v): &(Word, Word)) -> String {
    format!("{}|{}", cat.render_word(u), cat.render_word(v))
}

fn render_triple(cat: &Category, (u, v, w): &(Word, Word, Word)) -> String {
    format!("{}|{}|{}", cat.render_word(u), cat.render_word(v), cat.render_word(w))
}

fn violation_pairs(cat: &Category, inputs: &[&Word], r: &DoubleFunctional) -> Option<Violation> {
    (!r.is_zero()).then(|| {
        Violation::new(
            inputs.iter().map(|w| cat.render_word(w)).collect(),
            cat.render_terms(r, |k| render_pair(cat, k)),
        )
    })
}

fn sign_if(negate: bool, x: DoubleFunctional) -> DoubleFunctional {
    if negate {
        x.negated()
    } else {
        x
    }
}

/// Checks the five double Poisson identities on all delta functionals of
/// composable words of weight `<= max_weight`:
///
/// * degree: `{{δ_x, δ_y}}` lives in degree `|x| + |y| + D`, on bi-weights
///   `(m, n)` with `m, n >= 1` and `m + n = w_x + w_y - 2`;
/// * skew: `{{f,g}} + (-1)^{(|f|+D)(|g|+D)} {{g,f}}° = 0`;
/// * derivation: `{{f, g•h}} = (-1)^{(|f|+D)|g|} g·{{f,h}} + {{f,g}}·h` on
///   extended brackets;
/// * double Jacobi: the three-term identity with the `σ` sign;
/// * differential: `∂{{f,g}} = {{∂f,g}} + (-1)^{|f|+D} {{f,∂g}}`.
pub fn verify_double_poisson(cat: &Category, max_weight: usize) -> BracketReport {
    let words = cat.words(max_weight);
    let d = cat.d();
    let deltas: Vec<Functional> = words.iter().cloned().map(delta).collect();

    let pairs: Vec<(usize, usize)> = (0..words.len())
        .flat_map(|i| (0..words.len()).map(move |j| (i, j)))
        .collect();

    let degree: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&words[i], &words[j]);
            let expected = cat.word_degree(x) + cat.word_degree(y) + cat.bracket_degree();
            let br = double_bracket(cat, &deltas[i], &deltas[j]);
            let bad = br.filter(|(u, v)| {
                cat.word_degree(u) + cat.word_degree(v) != expected
                    || u.weight() + v.weight() + 2 != x.weight() + y.weight()
                    || u.is_empty()
                    || v.is_empty()
            });
            violation_pairs(cat, &[x, y], &bad)
        })
        .collect();

    let skew: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (df, dg) = (cat.word_degree(&words[i]), cat.word_degree(&words[j]));
            let fg = double_bracket(cat, &deltas[i], &deltas[j]);
            let gf = flip(cat, &double_bracket(cat, &deltas[j], &deltas[i]));
            let r = fg.plus(&sign_if(odd((df + d) * (dg + d)), gf));
            violation_pairs(cat, &[&words[i], &words[j]], &r)
        })
        .collect();

    let differential: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (f, g) = (&deltas[i], &deltas[j]);
            let df = cat.word_degree(&words[i]);
            let lhs = dual_differential_double(cat, &double_bracket(cat, f, g));
            let r1 = double_bracket(cat, &dual_differential(cat, f), g);
            let r2 = double_bracket(cat, f, &dual_differential(cat, g));
            let r = lhs.minus(&r1).minus(&sign_if(odd(df + d), r2));
            violation_pairs(cat, &[&words[i], &words[j]], &r)
        })
        .collect();

    let derivation: Vec<Option<Violation>> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (f, g) = (&deltas[i], &deltas[j]);
            let (df, dg) = (cat.word_degree(&words[i]), cat.word_degree(&words[j]));
            let fg = double_bracket_extended(cat, f, g);
            (0..words.len())
                .map(|k| {
                    let h = &deltas[k];
                    let gh = convolution(cat, g, h);
                    let lhs = double_bracket_extended(cat, f, &gh);
                    let r1 = left_action(cat, g, &double_bracket_extended(cat, f, h));
                    let r2 = right_action(cat, &fg, h);
                    let r = lhs.minus(&sign_if(odd((df + d) * dg), r1)).minus(&r2);
                    violation_pairs(cat, &[&words[i], &words[j], &words[k]], &r)
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let jacobi: Vec<Option<Violation>> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            (0..words.len())
                .map(|k| {
                    let r = double_jacobiator(cat, &deltas[i], &deltas[j], &deltas[k]);
                    (!r.is_zero()).then(|| {
                        Violation::new(
                            [i, j, k].iter().map(|&n| cat.render_word(&words[n])).collect(),
                            cat.render_terms(&r, |t| render_triple(cat, t)),
                        )
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();

    BracketReport {
        weight_bound: max_weight,
        degree_check: CheckOutcome::from_results("degree", degree),
        skew_check: CheckOutcome::from_results("skew", skew),
        derivation_check: CheckOutcome::from_results("derivation", derivation),
        double_jacobi_check: CheckOutcome::from_results("double_jacobi", jacobi),
        differential_check: CheckOutcome::from_results("differential", differential),
    }
}

/// Distinct nonzero cyclic averages `P(δ_w)` over cyclic words of weight
/// `<= max_weight`.
pub fn cyclic_symmetrizations(cat: &Category, max_weight: usize) -> Vec<Functional> {
    let mut out: Vec<Functional> = Vec::new();
    for w in cat.cyclic_words(max_weight) {
        let f = cyclic_average(cat, &delta(w));
        if !f.is_zero() && !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Cyclic Jacobi and skew symmetry of the induced Lie bracket over all
/// cyclic symmetrizations of weight `<= max_weight`.
pub fn verify_lie(cat: &Category, max_weight: usize) -> ValidationReport {
    let fs = cyclic_symmetrizations(cat, max_weight);
    let d = cat.d();
    let render = |f: &Functional| {
        let terms = cat.render_terms(f, |w| cat.render_word(w));
        terms.iter().map(|(k, c)| format!("{c}{k}")).collect::<Vec<_>>().join("+")
    };
    let degree_of = |f: &Functional| f.keys().next().map_or(0, |w| cat.word_degree(w));
    let pairs: Vec<(usize, usize)> = (0..fs.len())
        .flat_map(|i| (0..fs.len()).map(move |j| (i, j)))
        .collect();
    let skew: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (f, g) = (&fs[i], &fs[j]);
            let s = sign((degree_of(f) + d) * (degree_of(g) + d));
            let r = lie(cat, f, g).plus(&lie(cat, g, f).scaled(&Scalar::from_integer(s.into())));
            (!r.is_zero()).then(|| {
                Violation::new(vec![render(f), render(g)], cat.render_terms(&r, |w| cat.render_word(w)))
            })
        })
        .collect();
    let jacobi: Vec<Option<Violation>> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            (0..fs.len())
                .map(|k| {
                    let r = jacobi_on_cyclic(cat, &fs[i], &fs[j], &fs[k]).expect("inputs are cyclic");
                    (!r.is_zero()).then(|| {
                        Violation::new(
                            vec![render(&fs[i]), render(&fs[j]), render(&fs[k])],
                            cat.render_terms(&r, |w| cat.render_word(w)),
                        )
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    ValidationReport::new(vec![
        CheckOutcome::from_results("lie_skew", skew),
        CheckOutcome::from_results("lie_jacobi", jacobi),
    ])
}
