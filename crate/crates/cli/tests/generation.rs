use superlie::presentations::generated_dims;
use superlie_cli::{cmd_prolong, Registry};

fn compare(id: &str, r: &str, max: i64, exact: bool) {
    let reg = Registry::load_default().unwrap();
    let alg = reg.algebra(id).unwrap();
    let g = alg.grading(Some(r)).unwrap();
    let gens = alg.generators("+").unwrap();
    let gen = generated_dims(gens.elements(), &g, max).unwrap();
    let pro = cmd_prolong(&reg, id, Some(r), max).unwrap();
    for d in pro.dims.iter().filter(|d| d.degree >= 1) {
        let (e, o) = gen.get(&d.degree).copied().unwrap_or((0, 0));
        if exact {
            assert_eq!((e, o), (d.even, d.odd), "{id} degree {}", d.degree);
        } else {
            assert!(e <= d.even && o <= d.odd, "{id} degree {}", d.degree);
        }
    }
}

#[test]
fn positive_sides_generate_the_prolong() {
    for id in ["ksle5-10", "mb4-5", "vas4-4"] {
        let r = if id == "ksle5-10" { "K" } else { "0" };
        compare(id, r, 3, true);
    }
}

// In grading 0 the positive generators of vle(4|3) miss part of g_1 and g_3.
#[test]
fn vle_positive_side_sits_inside_the_prolong() {
    compare("vle4-3", "0", 3, false);
}
