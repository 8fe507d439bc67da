use super::*;
use crate::graded::{AlgebraPresentation, BasePresentation, ModulePresentation};
use crate::hilbert::Window;

fn free(base: &[&str], x: &[&str], rels: &[&str]) -> ModulePresentation {
    ModulePresentation::free_algebra(AlgebraPresentation::new(BasePresentation::rationals(base), x, rels).unwrap())
}

#[test]
fn brute_counts() {
    assert_eq!(brute_hilbert(&free(&["u"], &["x"], &[]), 5, 2, u64::MAX).unwrap(), 3);
    assert_eq!(brute_hilbert(&free(&["u"], &["x", "y"], &["x*y"]), 2, 0, u64::MAX).unwrap(), 2);
    assert_eq!(brute_hilbert(&free(&[], &["x", "y"], &["x^2"]), 4, 0, u64::MAX).unwrap(), 2);
}

#[test]
fn corpus_equivalence() {
    let w = Window { v0: 0, n0: 0, wv: 5, wn: 5, margin: 0 };
    for (name, p) in fixture_corpus() {
        let eq = oracle_equivalence(&p, w).unwrap();
        assert_eq!(eq.cells, 25);
        assert!(eq.mismatches.is_empty(), "{name}: {:?}", eq.mismatches);
    }
}

#[test]
fn small_suites() {
    for rep in [
        additivity_suite(8, 3),
        associativity_suite(8, 3),
        hypersurface_suite(&hypersurface_cases(3, 8)),
        property_suite(Property::JIdentity, 12, 3),
        property_suite(Property::VanishingBand, 12, 3),
    ] {
        eprintln!("{}", rep.summary());
        assert!(rep.passed(), "{}: {:?}", rep.summary(), rep.failures);
        assert!(rep.instances > 0);
    }
}

#[test]
fn non_monomial_rejected() {
    let p = crate::cli::ProblemDescription::algebra_only(Default::default(), &["u"], &["x", "y"], &["x*y - u*x^2"]);
    assert_eq!(associativity_monomial(&p).unwrap_err(), crate::Error::NotMonomial);
}

#[test]
fn failure_records_round_trip() {
    let p = crate::cli::ProblemDescription::algebra_only(Default::default(), &["u"], &["x"], &[]);
    let rec = FailureRecord { problem: p, parameters: Params::from([("b".into(), "x".into())]), message: "m".into() };
    let text = serde_json::to_string(&rec).unwrap();
    let back: FailureRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rec);
    assert_eq!(check_additivity(&back.problem, &back.parameters).unwrap(), Check::Pass);
}
