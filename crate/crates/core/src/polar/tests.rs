use super::*;
use crate::graded::{AlgebraPresentation, BasePresentation};

fn alg(base: &[&str], x: &[&str], rels: &[&str]) -> AlgebraPresentation {
    AlgebraPresentation::new(BasePresentation::rationals(base), x, rels).unwrap()
}

fn free(a: &AlgebraPresentation) -> ModulePresentation {
    ModulePresentation::free_algebra(a.clone())
}

fn vals(p: Result<PolarVector>) -> Vec<u64> {
    p.unwrap().values
}

#[test]
fn polynomial_rings() {
    let o = Options::default();
    assert_eq!(vals(polar_vector(&free(&alg(&["u"], &["x"], &[])), None, &o)), vec![0, 1]);
    assert_eq!(vals(polar_vector(&free(&alg(&["u"], &["x", "y"], &[])), None, &o)), vec![0, 1, 0]);
    assert_eq!(vals(polar_vector(&free(&alg(&[], &["x"], &[])), None, &o)), vec![1]);
    assert_eq!(vals(polar_vector(&free(&alg(&["u"], &["x"], &[])), Some(3), &o)), vec![0, 0, 0, 0]);
}

#[test]
fn torsion_and_empty() {
    let o = Options::default();
    let b = alg(&["u"], &["x"], &[]);
    let m = ModulePresentation::new(b.clone(), &[0], &[vec!["u"]]).unwrap();
    assert_eq!(vals(polar_vector(&m, None, &o)), vec![1]);
    let z = ModulePresentation::new(b, &[0], &[vec!["1"]]).unwrap();
    assert_eq!(polar_vector(&z, None, &o).unwrap_err(), Error::EmptySupport);
    assert_eq!(vals(polar_vector(&z, Some(1), &o)), vec![0, 0]);
}

#[test]
fn relative_and_image() {
    let o = Options::default();
    let b = alg(&["u"], &["x"], &[]);
    let a = SubalgebraSpec::new(&b, &["u*x"]).unwrap();
    let g: GradedAlgebra = b.clone().into();
    assert_eq!(vals(relative_polar(&a, &g, &o)), vec![1, 1]);
    assert_eq!(vals(truncated_relative(&a, &g, 1, &o)), vec![0, 1]);
    assert_eq!(vals(polar_wrt_linear_ideal(&a, &free(&b), &o)), vec![1, 1]);

    let b2 = alg(&[], &["x", "y"], &["x^2"]);
    let a2 = SubalgebraSpec::new(&b2, &["y"]).unwrap();
    let g2: GradedAlgebra = b2.into();
    assert_eq!(vals(relative_polar(&a2, &g2, &o)), vec![2]);
    assert_eq!(vals(image_polar(&a2, &g2, None, &o)), vec![1]);
}

#[test]
fn j_and_top() {
    let o = Options::default();
    let b = alg(&["u"], &["x"], &[]);
    let m = ModulePresentation::new(b.clone(), &[0], &[vec!["u"]]).unwrap();
    assert_eq!(j_multiplicity(&m, 1, &o).unwrap(), 1);
    assert_eq!(j_multiplicity(&free(&b), 2, &o).unwrap(), 0);
    let rep = top_polar_check(&free(&alg(&["u"], &["x", "y"], &[])), &o).unwrap();
    assert!(rep.agrees, "{rep:?}");
}

#[test]
fn linear_cut() {
    let o = Options::default();
    let b = alg(&["u"], &["x", "y"], &[]);
    let cut = general_linear_cut(&free(&b), 7, &o).unwrap();
    assert_eq!(cut.cut.values, vec![0, 1]);
    let k = alg(&["u"], &["x"], &[]);
    let m = ModulePresentation::new(k, &[0], &[vec!["u"]]).unwrap();
    assert_eq!(general_linear_cut(&m, 1, &o).unwrap_err(), Error::InvalidDepth);
}
