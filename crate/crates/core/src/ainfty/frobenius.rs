use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Category, CategoryData, EpsEntry, MorphismSpec};
use crate::error::Error;
use crate::graded::{odd, Scalar};
use crate::linalg::{rank_kernel, Matrix};

/// A finite-dimensional graded algebra with an invariant pairing.
#[derive(Clone, Debug, Default)]
pub struct FrobeniusData {
    pub name: String,
    pub d: i64,
    /// `(id, unshifted degree)`
    pub basis: Vec<(String, i64)>,
    /// `((a2, a1), Σ c·q)` giving the product `a2 · a1`.
    pub product: Vec<((String, String), Vec<(String, Scalar)>)>,
    pub pairing: Vec<((String, String), Scalar)>,
}

pub const FROBENIUS_OBJECT: &str = "o";

/// One-object category with `m̄_2` only. The structure constants are
/// `m̄_2(a2, a1) = (-1)^{|a1|} (a2·a1)` with unshifted `|a1|`.
pub fn from_frobenius(data: &FrobeniusData) -> Result<Category, Error> {
    let n = data.basis.len();
    let index: BTreeMap<&str, usize> = data
        .basis
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (id.as_str(), i))
        .collect();
    let find = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("unknown basis element `{id}`")))
    };

    let mut pairing = Matrix::zeros(n, n);
    for ((a, b), c) in &data.pairing {
        let (i, j) = (find(a)?, find(b)?);
        if c.is_zero() {
            continue;
        }
        if data.basis[i].1 + data.basis[j].1 != data.d {
            return Err(Error::GradingMismatch(format!(
                "<{a},{b}> is nonzero but degrees do not sum to {}",
                data.d
            )));
        }
        pairing.set(i, j, c.clone());
    }
    let (rank, _) = rank_kernel(&pairing);
    if rank < n {
        return Err(Error::DegeneratePairing(format!("rank {rank} < {n}")));
    }
    let mut dual = vec![0usize; n];
    for (i, slot) in dual.iter_mut().enumerate() {
        let partners: Vec<usize> = (0..n).filter(|&j| !pairing.get(i, j).is_zero()).collect();
        if partners.len() != 1 {
            return Err(Error::NonMonomialPairing(format!(
                "`{}` pairs with {} basis elements",
                data.basis[i].0,
                partners.len()
            )));
        }
        *slot = partners[0];
    }

    let mut eps = Vec::new();
    for ((a2, a1), terms) in &data.product {
        let (i2, i1) = (find(a2)?, find(a1)?);
        for (q, c) in terms {
            let iq = find(q)?;
            if data.basis[iq].1 != data.basis[i2].1 + data.basis[i1].1 {
                return Err(Error::GradingMismatch(format!(
                    "{a2}·{a1} has a `{q}` component of the wrong degree"
                )));
            }
            if c.is_zero() {
                continue;
            }
            let value = if odd(data.basis[i1].1) { -c.clone() } else { c.clone() };
            eps.push(EpsEntry {
                out: q.clone(),
                word: vec![a2.clone(), a1.clone()],
                value,
            });
        }
    }

    let morphisms = data
        .basis
        .iter()
        .enumerate()
        .map(|(i, (id, deg))| MorphismSpec {
            id: id.clone(),
            source: FROBENIUS_OBJECT.into(),
            target: FROBENIUS_OBJECT.into(),
            degree: *deg,
            dual: data.basis[dual[i]].0.clone(),
            orientation: None,
        })
        .collect();
    Category::new(CategoryData {
        name: data.name.clone(),
        d: data.d,
        max_arity: 2,
        objects: if n == 0 { vec![] } else { vec![FROBENIUS_OBJECT.into()] },
        morphisms,
        eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{check_ainfty, check_assumption};
    use crate::catalog;
    use crate::graded::int;

    #[test]
    fn truncated_polynomial_gives_sph4() {
        let cat = catalog::sph(4);
        assert_eq!(cat.morphism_count(), 2);
        assert!(check_ainfty(&cat).passed());
        assert!(check_assumption(&cat).passed());
    }

    #[test]
    fn zero_pairing_is_degenerate() {
        let data = FrobeniusData {
            name: "k".into(),
            d: 0,
            basis: vec![("e".into(), 0)],
            product: vec![(("e".into(), "e".into()), vec![("e".into(), int(1))])],
            pairing: vec![],
        };
        assert!(matches!(from_frobenius(&data), Err(Error::DegeneratePairing(_))));
    }

    #[test]
    fn pairing_degree_mismatch() {
        let mut data = catalog::sph_data(4);
        data.pairing.push((("x".into(), "x".into()), int(1)));
        assert!(matches!(from_frobenius(&data), Err(Error::GradingMismatch(_))));
    }

    #[test]
    fn product_degree_mismatch() {
        let mut data = catalog::sph_data(4);
        data.product.push((("x".into(), "x".into()), vec![("e".into(), int(1))]));
        assert!(matches!(from_frobenius(&data), Err(Error::GradingMismatch(_))));
    }

    #[test]
    fn non_monomial_pairing() {
        let mut data = catalog::s2xs2_data();
        data.pairing.push((("b".into(), "b".into()), int(1)));
        assert!(matches!(from_frobenius(&data), Err(Error::NonMonomialPairing(_))));
    }

    #[test]
    fn cyclic_symmetry_of_the_pairing() {
        // <a b, c> = ± <b c, a> on all basis triples of S2 x S2
        let data = catalog::s2xs2_data();
        let deg: BTreeMap<&str, i64> = data.basis.iter().map(|(k, d)| (k.as_str(), *d)).collect();
        let mul = |a: &str, b: &str| -> Vec<(String, Scalar)> {
            data.product
                .iter()
                .find(|((x, y), _)| x == a && y == b)
                .map(|(_, t)| t.clone())
                .unwrap_or_default()
        };
        let pair = |a: &str, b: &str| -> Scalar {
            data.pairing
                .iter()
                .find(|((x, y), _)| x == a && y == b)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Scalar::zero)
        };
        let form = |a: &str, b: &str, c: &str| -> Scalar {
            mul(a, b).iter().map(|(q, k)| k * pair(q, c)).sum()
        };
        for (a, _) in &data.basis {
            for (b, _) in &data.basis {
                for (c, _) in &data.basis {
                    let s = deg[a.as_str()] * (deg[b.as_str()] + deg[c.as_str()]);
                    let rhs = form(b, c, a);
                    let rhs = if odd(s) { -rhs } else { rhs };
                    assert_eq!(form(a, b, c), rhs, "{a} {b} {c}");
                }
            }
        }
    }
}
