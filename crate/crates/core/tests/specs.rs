//! The bundled spec files are the serialized catalog categories. Set
//! `NCPOISSON_BLESS=1` to rewrite them.

use std::path::PathBuf;

use ncpoisson_core::ainfty::{check_ainfty, check_assumption, from_frobenius};
use ncpoisson_core::catalog;
use ncpoisson_core::graded::int;
use ncpoisson_core::io::{parse_spec, parse_spec_str, serialize_spec};
use ncpoisson_core::Category;

fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs")
}

fn mutated_sph4() -> Category {
    let cat = catalog::sph(4);
    let w = cat.parse_word(&["x", "e"]).unwrap();
    let x = cat.id_of("x").unwrap();
    cat.with_eps(x, w, int(2)).unwrap()
}

fn bundled() -> Vec<(&'static str, Category)> {
    vec![
        ("sph4", from_frobenius(&catalog::sph_data(4)).unwrap()),
        ("sph2", from_frobenius(&catalog::sph_data(2)).unwrap()),
        ("s2s2", from_frobenius(&catalog::s2xs2_data()).unwrap()),
        ("zero4", catalog::zero(4, &[("p", "q", 1)])),
        ("twospheres", catalog::two_spheres(4, 2)),
        ("cubic", catalog::cubic()),
        ("sph4-mutated", mutated_sph4()),
    ]
}

#[test]
fn bundled_files_match_catalog() {
    let bless = std::env::var_os("NCPOISSON_BLESS").is_some();
    for (name, cat) in bundled() {
        let path = specs_dir().join(format!("{name}.spec"));
        let text = serialize_spec(&cat);
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap();
        assert_eq!(on_disk, text, "{name}");
        assert_eq!(parse_spec(&path, true).unwrap(), cat, "{name}");
    }
}

#[test]
fn bundled_examples_validate() {
    for (name, cat) in bundled() {
        let ok = check_ainfty(&cat).passed() && check_assumption(&cat).passed();
        assert_eq!(ok, name != "sph4-mutated", "{name}");
    }
}

#[test]
fn serialization_is_a_fixed_point() {
    for (name, cat) in bundled() {
        let once = serialize_spec(&cat);
        let twice = serialize_spec(&parse_spec_str(&once, true).unwrap());
        assert_eq!(once, twice, "{name}");
    }
}

#[test]
fn dual_pair_signs_multiply_to_a_twisted_koszul_sign() {
    for (name, cat) in bundled() {
        for p in 0..cat.morphism_count() {
            let q = cat.dual(p);
            if q == p {
                continue;
            }
            let koszul = if cat.shifted(p) * cat.shifted(q) % 2 == 0 { 1 } else { -1 };
            assert_eq!(cat.sgn_pair(p) * cat.sgn_pair(q), -koszul, "{name} {}", cat.morphism(p).id);
        }
    }
}
