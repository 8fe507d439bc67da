//! Property tests over random monomial data.

use proptest::prelude::*;

use polarmult::cli::ProblemDescription;
use polarmult::graded::{AlgebraPresentation, BasePresentation, ModulePresentation};
use polarmult::hilbert::Window;
use polarmult::oracle::{oracle_equivalence, random_monomial_fixtures, render_monomial};
use polarmult::polar::polar_vector;
use polarmult::svlength::cross_validate;
use polarmult::{Error, Options};

const VARS: [&str; 3] = ["u", "x", "y"];

fn plane() -> AlgebraPresentation {
    AlgebraPresentation::new(BasePresentation::rationals(&["u"]), &["x", "y"], &[]).unwrap()
}

fn monomial() -> impl Strategy<Value = String> {
    (0u32..=2, 0u32..=2, 0u32..=2)
        .prop_filter("not a unit", |(a, b, c)| a + b + c > 0)
        .prop_map(|(a, b, c)| {
            let vars: Vec<String> = VARS.iter().map(|s| s.to_string()).collect();
            render_monomial(&[a, b, c], &vars)
        })
}

/// B/I presented with one generator, columns are the monomials of I.
fn cyclic(ideal: &[String], shift: i64) -> ModulePresentation {
    let cols: Vec<Vec<&str>> = ideal.iter().map(|g| vec![g.as_str()]).collect();
    ModulePresentation::new(plane(), &[shift], &cols).unwrap()
}

/// B/I ⊕ B/J(-shift).
fn direct_sum(i: &[String], j: &[String], shift: i64) -> ModulePresentation {
    let mut cols: Vec<Vec<&str>> = i.iter().map(|g| vec![g.as_str(), "0"]).collect();
    cols.extend(j.iter().map(|g| vec!["0", g.as_str()]));
    ModulePresentation::new(plane(), &[0, shift], &cols).unwrap()
}

/// Shifts move the stable range, so the window is wider than the default.
fn opts() -> Options {
    Options { vmax: 24, ..Options::default() }
}

fn polar_at(m: &ModulePresentation, r: usize) -> Result<Vec<u64>, Error> {
    polar_vector(m, Some(r), &opts()).map(|p| p.values)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn additive_on_direct_sums(
        i in prop::collection::vec(monomial(), 1..=2),
        j in prop::collection::vec(monomial(), 1..=2),
        shift in 0i64..=2,
    ) {
        let sum = direct_sum(&i, &j, shift);
        let total = match polar_vector(&sum, None, &opts()) {
            Ok(p) => p,
            Err(Error::EmptySupport) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let a = polar_at(&cyclic(&i, 0), total.r).unwrap();
        let b = polar_at(&cyclic(&j, shift), total.r).unwrap();
        let expect: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(total.values, expect);
    }

    #[test]
    fn shift_invariant(i in prop::collection::vec(monomial(), 1..=2), shift in 1i64..=3) {
        let base = polar_vector(&cyclic(&i, 0), None, &opts());
        let moved = polar_vector(&cyclic(&i, shift), None, &opts());
        match (base, moved) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.values, b.values),
            (Err(Error::EmptySupport), Err(Error::EmptySupport)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn doubling_doubles(i in prop::collection::vec(monomial(), 1..=2)) {
        let single = polar_vector(&cyclic(&i, 0), None, &opts());
        if let Ok(single) = single {
            let double = polar_at(&direct_sum(&i, &i, 0), single.r).unwrap();
            prop_assert_eq!(double, single.values.iter().map(|x| 2 * x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn description_round_trips(seed in 0u64..1000) {
        for f in random_monomial_fixtures(seed, 3) {
            let p = f.problem();
            prop_assert_eq!(ProblemDescription::parse(&p.to_json()).unwrap(), p);
        }
    }

    #[test]
    fn brute_force_agrees(seed in 0u64..1000) {
        let w = Window { v0: 0, n0: 0, wv: 4, wn: 4, margin: 0 };
        for f in random_monomial_fixtures(seed, 2) {
            let eq = oracle_equivalence(&f.problem(), w).unwrap();
            prop_assert!(eq.mismatches.is_empty(), "{:?} on {:?}", eq.mismatches, f);
        }
    }
}

#[test]
fn sv_route_is_seed_deterministic() {
    let m = cyclic(&["u*x".into()], 0);
    let o = opts();
    let a = cross_validate(&m, &[5, 6, 7], &o).unwrap();
    let b = cross_validate(&m, &[5, 6, 7], &o).unwrap();
    assert!(a.all_agree);
    assert_eq!(a.consensus, b.consensus);
    assert_eq!(
        a.runs.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>(),
        b.runs.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>()
    );
}
