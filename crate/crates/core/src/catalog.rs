//! Small example categories used by the bundled spec files and the tests.

use crate::ainfty::{from_frobenius, Category, CategoryData, EpsEntry, FrobeniusData, MorphismSpec};
use crate::graded::{int, sign, Scalar};

fn s(x: &str) -> String {
    x.to_string()
}

fn spec(id: &str, source: &str, target: &str, degree: i64, dual: &str) -> MorphismSpec {
    MorphismSpec {
        id: s(id),
        source: s(source),
        target: s(target),
        degree,
        dual: s(dual),
        orientation: None,
    }
}

/// `H^*(S^d) = k[x]/x^2` with `|x| = d` and `<e, x> = 1`.
pub fn sph_data(d: i64) -> FrobeniusData {
    let one = || int(1);
    FrobeniusData {
        name: format!("SPH({d})"),
        d,
        basis: vec![(s("e"), 0), (s("x"), d)],
        product: vec![
            ((s("e"), s("e")), vec![(s("e"), one())]),
            ((s("e"), s("x")), vec![(s("x"), one())]),
            ((s("x"), s("e")), vec![(s("x"), one())]),
        ],
        pairing: vec![((s("e"), s("x")), one()), ((s("x"), s("e")), one())],
    }
}

pub fn sph(d: i64) -> Category {
    from_frobenius(&sph_data(d)).expect("sphere algebra is Frobenius")
}

/// `H^*(S^2 × S^2) = k<a, b, c, d>` with `a = 1`, `b, c` the two degree 2
/// classes and `d = bc`.
pub fn s2xs2_data() -> FrobeniusData {
    let gens = [("a", 0u8), ("b", 1), ("c", 2), ("d", 3)];
    let id_of = |mask: u8| gens.iter().find(|(_, m)| *m == mask).unwrap().0;
    let mut product = Vec::new();
    for (x, mx) in gens {
        for (y, my) in gens {
            if mx & my == 0 {
                product.push(((s(x), s(y)), vec![(s(id_of(mx | my)), int(1))]));
            }
        }
    }
    let pairing = [("a", "d"), ("d", "a"), ("b", "c"), ("c", "b")]
        .iter()
        .map(|(x, y)| ((s(x), s(y)), int(1)))
        .collect();
    FrobeniusData {
        name: s("S2xS2"),
        d: 4,
        basis: vec![(s("a"), 0), (s("b"), 2), (s("c"), 2), (s("d"), 4)],
        product,
        pairing,
    }
}

pub fn s2xs2() -> Category {
    from_frobenius(&s2xs2_data()).expect("S2 x S2 cohomology is Frobenius")
}

/// All structure constants zero. Each `(p, q, deg p)` adds a dual pair of
/// loops on the single object `o`.
pub fn zero(d: i64, pairs: &[(&str, &str, i64)]) -> Category {
    let mut morphisms = Vec::new();
    for (p, q, deg) in pairs {
        morphisms.push(spec(p, "o", "o", *deg, q));
        morphisms.push(spec(q, "o", "o", d - deg, p));
    }
    Category::new(CategoryData {
        name: format!("ZERO({d})"),
        d,
        max_arity: 2,
        objects: vec![s("o")],
        morphisms,
        eps: vec![],
    })
    .expect("zero category is well formed")
}

/// One self-dual loop of degree `deg = d / 2`.
pub fn self_dual(d: i64, deg: i64) -> Category {
    Category::new(CategoryData {
        name: format!("SELF({d})"),
        d,
        max_arity: 2,
        objects: vec![s("o")],
        morphisms: vec![spec("z", "o", "o", deg, "z")],
        eps: vec![],
    })
    .expect("self-dual loop is well formed")
}

/// Two spheres `X`, `Y` meeting transversally once: `a: X -> Y` of degree
/// `r`, `b: Y -> X` of degree `d - r`, with `b·a = x_X` and
/// `a·b = (-1)^{r(d-r)} x_Y`.
pub fn two_spheres(d: i64, r: i64) -> Category {
    let morphisms = vec![
        spec("eX", "X", "X", 0, "xX"),
        spec("xX", "X", "X", d, "eX"),
        spec("eY", "Y", "Y", 0, "xY"),
        spec("xY", "Y", "Y", d, "eY"),
        spec("a", "X", "Y", r, "b"),
        spec("b", "Y", "X", d - r, "a"),
    ];
    let ends = |id: &str| {
        let m = morphisms.iter().find(|m| m.id == id).unwrap();
        (m.source.clone(), m.target.clone(), m.degree)
    };
    let mut products: Vec<(&str, &str, &str, Scalar)> = Vec::new();
    for (unit, object) in [("eX", "X"), ("eY", "Y")] {
        for m in &morphisms {
            if m.target == object {
                products.push((unit, m.id.as_str(), m.id.as_str(), int(1)));
            }
            if m.source == object && m.id != unit {
                products.push((m.id.as_str(), unit, m.id.as_str(), int(1)));
            }
        }
    }
    products.push(("b", "a", "xX", int(1)));
    products.push(("a", "b", "xY", int(sign(r * (d - r)))));
    let eps = products
        .into_iter()
        .map(|(a2, a1, q, c)| {
            let (_, _, deg1) = ends(a1);
            EpsEntry {
                out: s(q),
                word: vec![s(a2), s(a1)],
                value: if deg1 % 2 != 0 { -c } else { c },
            }
        })
        .collect();
    Category::new(CategoryData {
        name: format!("TWO_SPHERES({d},{r})"),
        d,
        max_arity: 2,
        objects: vec![s("X"), s("Y")],
        morphisms,
        eps,
    })
    .expect("two spheres category is well formed")
}

/// `d = 3`, a degree 1 loop `z` dual to a degree 2 loop `y`, with the only
/// operation `m̄_3(z, z, z) = y`.
pub fn cubic() -> Category {
    Category::new(CategoryData {
        name: s("CUBIC(3)"),
        d: 3,
        max_arity: 3,
        objects: vec![s("o")],
        morphisms: vec![spec("z", "o", "o", 1, "y"), spec("y", "o", "o", 2, "z")],
        eps: vec![EpsEntry {
            out: s("y"),
            word: vec![s("z"), s("z"), s("z")],
            value: int(1),
        }],
    })
    .expect("cubic category is well formed")
}
