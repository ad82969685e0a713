//! Acceptance suite: one test per criterion, every identity exact (zero
//! tolerance), every runtime bound asserted. Run with `--nocapture` to see
//! the one-line-per-criterion summary.

use qcc_core::field::FiniteField;
use qcc_core::quiver::{find_lambda, standard, SeedMatrices};
use qcc_core::rep::{
    aut_count, ext_middle_terms, g_count, hom_space, hom_to_injective_strata, Representation,
};
use qcc_core::scalar::ScalarRing;
use qcc_core::verify::{kronecker_variables, run_suite, CheckStatus, SuiteConfig, SuiteReport};
use qcc_core::{Caps, QuantumSeed, TorusElement};
use std::time::{Duration, Instant};

fn report_line(criterion: &str, elapsed: Duration, limit: Duration) {
    println!(
        "{criterion}: PASS ({:.2?} of {:.0?} budget)",
        elapsed, limit
    );
    assert!(
        elapsed < limit,
        "{criterion} exceeded its runtime budget: {elapsed:.2?} >= {limit:.2?}"
    );
}

fn assert_suite_passed(rep: &SuiteReport) {
    for c in &rep.checks {
        assert_ne!(
            c.status,
            CheckStatus::Fail,
            "suite {} failed at {} [{}]: {:?}",
            rep.suite,
            c.id,
            c.instance,
            c.witness
        );
    }
    assert!(
        rep.passed(),
        "suite {} did not pass: {:?}",
        rep.suite,
        rep.status
    );
}

#[test]
fn criterion_01_kronecker_seed() {
    let t = Instant::now();
    let q = standard::kronecker();
    let mats = SeedMatrices::of(&q);
    assert_eq!(mats.btilde.to_rows(), vec![vec![0, 2], vec![-2, 0]]);
    let (lambda, d) = find_lambda(&mats.btilde).unwrap();
    assert_eq!(lambda.to_rows(), vec![vec![0, 1], vec![-1, 0]]);
    assert_eq!(d, vec![2, 2]);
    report_line(
        "criterion 01 (kronecker seed)",
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_recursion() {
    let t = Instant::now();
    // The mutation engine produces X_m for m in [-6, 9] in the free ring and
    // the exchange recursion holds exactly; NotDivisible never fires.
    let vars = kronecker_variables(&ScalarRing::free(), -6, 9).unwrap();
    assert_eq!(vars.len(), 16);
    let ctx = vars[0].1.context().clone();
    let one = TorusElement::one(&ctx);
    for w in vars.windows(3) {
        let lhs = w[0].1.mul(&w[2].1).unwrap();
        let rhs = w[1].1.pow(2).unwrap().scale_u(2).add(&one).unwrap();
        assert_eq!(lhs, rhs, "recursion at X_{}", w[0].0 + 1);
    }
    report_line(
        "criterion 02 (recursion)",
        t.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_03_rank2_lemma() {
    for (p, k) in [(2u64, 2u32), (3, 2)] {
        let t = Instant::now();
        let cfg = SuiteConfig {
            fields: Some(vec![(p, k)]),
            ..SuiteConfig::default()
        };
        let rep = run_suite("rank2", &cfg).unwrap();
        assert_suite_passed(&rep);
        assert_eq!(rep.checks.len(), 10); // m in {-4..0} and {3..7}
        report_line(
            &format!("criterion 03 (rank2 lemma, F{})", p.pow(k)),
            t.elapsed(),
            Duration::from_secs(60),
        );
    }
}

#[test]
fn criterion_04_multiplication_one() {
    let t = Instant::now();
    let rep = run_suite("multi1", &SuiteConfig::default()).unwrap();
    assert_suite_passed(&rep);
    // Kronecker F4 plus A2/A3 over F2, F3, F5.
    assert!(rep.checks.len() > 200);
    report_line(
        "criterion 04 (multiplication law 1)",
        t.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_05_multiplication_two() {
    let t = Instant::now();
    let rep = run_suite("multi2", &SuiteConfig::default()).unwrap();
    assert_suite_passed(&rep);
    report_line(
        "criterion 05 (multiplication law 2)",
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_06_psi_homomorphism_and_associativity() {
    let t = Instant::now();
    assert_suite_passed(&run_suite("psi-hom", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("hall-assoc", &SuiteConfig::default()).unwrap());
    report_line(
        "criterion 06 (psi homomorphism + associativity)",
        t.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_07_preimages_and_rank2_kro() {
    let t = Instant::now();
    assert_suite_passed(&run_suite("preimages", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("rank2-kro", &SuiteConfig::default()).unwrap());
    report_line(
        "criterion 07 (preimages + rank2-kro)",
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_08_bgp_transport() {
    let t = Instant::now();
    let rep = run_suite("bgp", &SuiteConfig::default()).unwrap();
    assert_suite_passed(&rep);
    report_line(
        "criterion 08 (BGP transport)",
        t.elapsed(),
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_09_structural_zoo() {
    let t = Instant::now();
    let caps = Caps::default();
    // Suite-backed parts: Euler consistency, mutation involutivity and pair
    // preservation, the strict self-extension drop.
    assert_suite_passed(&run_suite("compat", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("euler", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("ext-drop", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("expansion", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("torus-axioms", &SuiteConfig::default()).unwrap());
    assert_suite_passed(&run_suite("qbinom", &SuiteConfig::default()).unwrap());

    // Riedtmann-Peng, the epsilon sum rule, and the strata sum rule across
    // the verification matrix.
    use qcc_core::verify::SeedSpec;
    for (spec, fields) in [
        (SeedSpec::Kronecker, vec![(2u64, 2u32)]),
        (SeedSpec::A2, vec![(2, 1), (3, 1), (5, 1)]),
        (SeedSpec::A3, vec![(2, 1), (3, 1), (5, 1)]),
    ] {
        for (p, k) in fields {
            let field = FiniteField::new(p, k).unwrap();
            let q = field.cardinality() as u128;
            for (_name, m, n) in qcc_core::verify::multi1_pair_set(spec, &field, &caps).unwrap() {
                let hom = hom_space(&m, &n).unwrap();
                let table = ext_middle_terms(&m, &n, &caps).unwrap();
                assert_eq!(
                    table.total(),
                    q.pow(table.ext1_dim as u32),
                    "epsilon sum rule at {spec:?} dims {:?},{:?}",
                    m.dims(),
                    n.dims()
                );
                let aut_m = aut_count(&m, &caps).unwrap();
                let aut_n = aut_count(&n, &caps).unwrap();
                for (e, eps) in &table.entries {
                    let g = g_count(e, &m, &n, &caps).unwrap();
                    let aut_e = aut_count(e, &caps).unwrap();
                    assert_eq!(
                        eps * aut_e,
                        g * aut_m * aut_n * q.pow(hom.hom_dim as u32),
                        "Riedtmann-Peng at {spec:?} dims {:?},{:?} -> {:?}",
                        m.dims(),
                        n.dims(),
                        e.dims()
                    );
                }
            }
        }
    }
    // Strata sums over the Kronecker injectives.
    {
        let field = FiniteField::new(2, 2).unwrap();
        let q = standard::kronecker();
        let qq = field.cardinality() as u128;
        for (_name, m, _) in
            qcc_core::verify::multi1_pair_set(qcc_core::verify::SeedSpec::Kronecker, &field, &caps)
                .unwrap()
                .into_iter()
                .take(9)
        {
            for i in 1..=2 {
                let inj = Representation::injective(&q, &field, i).unwrap();
                let hom = hom_space(&m, &inj).unwrap();
                if hom.hom_dim > 6 {
                    continue;
                }
                let strata = hom_to_injective_strata(&m, &inj, &caps).unwrap();
                assert_eq!(strata.total(), qq.pow(hom.hom_dim as u32));
                assert!(!strata.noninjective_cokernel);
            }
        }
    }
    // Frame expansion against the exchange step on every suite seed.
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let quiver = spec.ambient();
        let seed = QuantumSeed::initial(&quiver, &ScalarRing::free()).unwrap();
        for k in 1..=quiver.principal() {
            let mut ek = vec![0i64; quiver.vertices()];
            ek[k - 1] = 1;
            let expanded = seed.frame_expand(&ek, k).unwrap();
            let mutated = seed.mutate(k).unwrap();
            assert_eq!(&expanded, mutated.variable(k), "{spec:?} direction {k}");
            // One level deeper.
            let expanded2 = mutated.frame_expand(&ek, k).unwrap();
            let back = mutated.mutate(k).unwrap();
            assert_eq!(&expanded2, back.variable(k));
        }
    }
    report_line(
        "criterion 09 (structural zoo)",
        t.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_10_shift_monomials() {
    let t = Instant::now();
    let rep = run_suite("shift-monomials", &SuiteConfig::default()).unwrap();
    assert_suite_passed(&rep);
    report_line(
        "criterion 10 (shift monomials)",
        t.elapsed(),
        Duration::from_secs(1),
    );
}

/// The whole catalog in one sweep: the spec's definition of done.
#[test]
fn run_all_default_config_has_no_failures() {
    let reports = qcc_core::verify::run_all(&SuiteConfig::default()).unwrap();
    assert_eq!(reports.len(), 16);
    for rep in &reports {
        assert_suite_passed(rep);
    }
    // CCContext clones stay cheap; sanity-check one report round-trips JSON.
    let j = reports[0].to_json();
    assert_eq!(j["status"], "pass");
}
