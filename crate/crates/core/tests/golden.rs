//! Golden-file checks: fixed inputs must reproduce the frozen JSON outputs
//! byte for byte. The files live under `tests/golden/v1/`, keyed by the
//! parameter set in the file name.

use qcc_core::cc::CCContext;
use qcc_core::field::FiniteField;
use qcc_core::hall::{hall_star, HallElement};
use qcc_core::quiver::standard;
use qcc_core::rep::{kronecker, Representation};
use qcc_core::Caps;

fn golden(name: &str) -> serde_json::Value {
    let path = format!("{}/tests/golden/v1/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn hall_product_of_simples_matches_golden() {
    let q = standard::kronecker();
    let f = FiniteField::new(2, 2).unwrap();
    let ctx = CCContext::new(&q, &f, &Caps::default()).unwrap();
    let s1 = Representation::simple(&q, &f, 1).unwrap();
    let s2 = Representation::simple(&q, &f, 2).unwrap();
    let prod = hall_star(
        &HallElement::delta(&ctx, s1).unwrap(),
        &HallElement::delta(&ctx, s2).unwrap(),
    )
    .unwrap();
    assert_eq!(prod.to_json(), golden("hall-s1-s2-kronecker-f4.json"));
}

#[test]
fn preinjective_character_matches_golden() {
    let q = standard::kronecker();
    let f = FiniteField::new(2, 2).unwrap();
    let ctx = CCContext::new(&q, &f, &Caps::default()).unwrap();
    let n2 = kronecker::preinjective(&q, &f, 2).unwrap();
    assert_eq!(
        ctx.character(&n2).unwrap().to_json(),
        golden("char-n2-kronecker-f4.json")
    );
}

#[test]
fn reports_replay_identically_from_their_parameters() {
    use qcc_core::verify::{run_suite, SuiteConfig};
    let cfg = SuiteConfig::default();
    let a = run_suite("preimages", &cfg).unwrap().to_json();
    let b = run_suite("preimages", &cfg).unwrap().to_json();
    assert_eq!(a, b);
}
