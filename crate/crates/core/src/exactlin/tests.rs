use super::*;

type Q = Rationals;

fn ring(s: usize) -> BaseRing<Q> {
    BaseRing::new(Rationals, s, DEFAULT_BUDGET).unwrap()
}

/// Vector from (position, exponents, coefficient) triples.
fn vecm(terms: &[(u32, &[u32], i64)]) -> ModVec<Q> {
    let f = Rationals;
    ModVec::from_terms(
        &f,
        ModuleOrder::Top,
        terms.iter().map(|(p, e, c)| (Term { mono: Monomial::from_exps(e), pos: *p }, f.from_i64(*c))).collect(),
    )
}

#[test]
fn groebner_examples() {
    let r = ring(2);
    let g = r.gb(1, vec![vecm(&[(0, &[2, 0], 1)]), vecm(&[(0, &[1, 1], 1)])]).unwrap();
    assert_eq!(g.gens.len(), 2);
    let g = r.gb(1, vec![vecm(&[(0, &[1, 0], 1)]), vecm(&[(0, &[2, 0], 1)])]).unwrap();
    assert_eq!(g.gens, vec![vecm(&[(0, &[1, 0], 1)])]);
    let g = r
        .gb(1, vec![vecm(&[(0, &[1, 0], 1), (0, &[0, 1], 1)]), vecm(&[(0, &[1, 0], 1), (0, &[0, 1], -1)])])
        .unwrap();
    assert_eq!(g.gens, vec![vecm(&[(0, &[0, 1], 1)]), vecm(&[(0, &[1, 0], 1)])]);
    // Idempotent.
    let again = r.groebner_basis(&g).unwrap();
    assert_eq!(again.gens, g.gens);
}

#[test]
fn normal_form_examples() {
    let r = ring(2);
    let sub = r.gb(1, vec![vecm(&[(0, &[2, 0], 1)])]).unwrap();
    assert!(r.normal_form(&vecm(&[(0, &[3, 0], 1)]), &sub).unwrap().is_zero());
    let sub = r.gb(1, vec![vecm(&[(0, &[2, 0], 1)]), vecm(&[(0, &[1, 1], 1)])]).unwrap();
    let v = vecm(&[(0, &[0, 1], 1)]);
    assert_eq!(r.normal_form(&v, &sub).unwrap(), v);
    let sub = r.gb(1, vec![vecm(&[(0, &[1, 1], 1)])]).unwrap();
    let v = vecm(&[(0, &[1, 1], 1), (0, &[0, 2], 1)]);
    assert_eq!(r.normal_form(&v, &sub).unwrap(), vecm(&[(0, &[0, 2], 1)]));
    assert!(matches!(r.normal_form(&vecm(&[(3, &[0, 0], 1)]), &sub), Err(Error::RankMismatch { .. })));
}

#[test]
fn kernel_examples() {
    let r = ring(1);
    let k = r.kernel_of_map(&[vecm(&[(0, &[1], 1)])], 1, &[]).unwrap();
    assert!(k.gens.is_empty());
    let k = r.kernel_of_map(&[vecm(&[(0, &[1], 1)])], 1, &[vecm(&[(0, &[2], 1)])]).unwrap();
    assert_eq!(k.gens, vec![vecm(&[(0, &[1], 1)])]);
    let r = ring(2);
    let k = r
        .kernel_of_map(&[vecm(&[(0, &[0, 1], 1)]), vecm(&[(0, &[1, 0], -1)])], 1, &[])
        .unwrap();
    assert_eq!(k.gens, vec![vecm(&[(0, &[1, 0], 1), (1, &[0, 1], 1)])]);
}

#[test]
fn saturation_examples() {
    let r = ring(1);
    let amb = PieceModule { rank: 1, frame: vec!["e".into()], relations: vec![vecm(&[(0, &[1], 1)])] };
    let s = r.saturate_irrelevant(&BaseSubmodule::new(1, vec![]), &amb).unwrap();
    assert_eq!(s.gens, vec![vecm(&[(0, &[0], 1)])]);
    let s = r.saturate_irrelevant(&BaseSubmodule::new(1, vec![]), &PieceModule::free(1)).unwrap();
    assert!(s.gens.is_empty());
    let s = r.saturate_irrelevant(&BaseSubmodule::new(1, vec![vecm(&[(0, &[2], 1)])]), &PieceModule::free(1)).unwrap();
    assert_eq!(s.gens, vec![vecm(&[(0, &[0], 1)])]);
    // Mixed torsion: κ[u] ⊕ κ[u]/(u^2) has torsion the second summand.
    let amb = PieceModule { rank: 2, frame: vec![], relations: vec![vecm(&[(1, &[2], 1)])] };
    let s = r.saturate_irrelevant(&BaseSubmodule::new(2, vec![]), &amb).unwrap();
    assert_eq!(s.gens, vec![vecm(&[(1, &[0], 1)])]);
}

#[test]
fn truncated_dimension_examples() {
    let r = ring(1);
    let q = PieceModule { rank: 1, frame: vec![], relations: vec![vecm(&[(0, &[2], 1)])] };
    assert_eq!(r.truncated_dimension(&q, 5).unwrap(), 2);
    assert_eq!(r.truncated_dimension(&PieceModule::free(1), 3).unwrap(), 4);
    let q = PieceModule { rank: 2, frame: vec![], relations: vec![vecm(&[(0, &[1], 1)]), vecm(&[(1, &[3], 1)])] };
    assert_eq!(r.truncated_dimension(&q, 0).unwrap(), 2);
    assert_eq!(r.truncated_dimensions(&q, 4).unwrap(), vec![2, 3, 4, 4, 4]);
    let r0 = ring(0);
    assert_eq!(r0.truncated_dimensions(&PieceModule::free(3), 2).unwrap(), vec![3, 3, 3]);
}

#[test]
fn finite_length_counts() {
    let r = ring(2);
    let q = PieceModule {
        rank: 1,
        frame: vec![],
        relations: vec![vecm(&[(0, &[2, 0], 1)]), vecm(&[(0, &[0, 3], 1)])],
    };
    assert_eq!(r.finite_length(&q).unwrap(), Some(6));
    assert_eq!(r.finite_length(&PieceModule::free(1)).unwrap(), None);
    assert_eq!(ring(0).finite_length(&PieceModule::free(2)).unwrap(), Some(2));
}

#[test]
fn quotient_presentation() {
    let r = ring(1);
    let top = vec![vecm(&[(0, &[2], 1)])];
    let bottom = r.gb(1, vec![vecm(&[(0, &[3], 1)])]).unwrap();
    let q = r.quotient_piece_checked(&top, &bottom, 1).unwrap();
    assert_eq!(r.finite_length(&q).unwrap(), Some(1));
    let bad = r.gb(1, vec![vecm(&[(0, &[1], 1)])]).unwrap();
    assert_eq!(r.quotient_piece_checked(&top, &bad, 1).unwrap_err(), Error::NotContained);
}

#[test]
fn prime_field_matches_rationals() {
    let rp = BaseRing::new(PrimeField::new(32003).unwrap(), 2, DEFAULT_BUDGET).unwrap();
    let f = rp.field;
    let mk = |terms: &[(u32, &[u32], i64)]| {
        ModVec::from_terms(
            &f,
            ModuleOrder::Top,
            terms.iter().map(|(p, e, c)| (Term { mono: Monomial::from_exps(e), pos: *p }, f.from_i64(*c))).collect(),
        )
    };
    let q = PieceModule {
        rank: 2,
        frame: vec![],
        relations: vec![mk(&[(0, &[1, 0], 1), (1, &[0, 1], -1)]), mk(&[(0, &[0, 2], 1)])],
    };
    let qq = PieceModule {
        rank: 2,
        frame: vec![],
        relations: vec![vecm(&[(0, &[1, 0], 1), (1, &[0, 1], -1)]), vecm(&[(0, &[0, 2], 1)])],
    };
    assert_eq!(rp.truncated_dimensions(&q, 5).unwrap(), ring(2).truncated_dimensions(&qq, 5).unwrap());
}
