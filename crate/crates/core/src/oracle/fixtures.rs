//! Fixture corpus and seeded random monomial algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::{ModuleInput, ProblemDescription};
use crate::exactlin::FieldDescriptor;

fn names(prefix: &str, k: usize) -> Vec<String> {
    if k == 1 {
        return vec![prefix.to_string()];
    }
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// Renders an exponent vector over the given variables ("1" when constant).
pub fn render_monomial(exps: &[u32], vars: &[String]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// B = R[x..]/(monomials) with exponent data kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFixture {
    pub s: usize,
    pub m: usize,
    /// Exponents over (u_1..u_s, x_1..x_m).
    pub relations: Vec<Vec<u32>>,
}

impl MonomialFixture {
    pub fn base_vars(&self) -> Vec<String> {
        names("u", self.s)
    }

    pub fn poly_vars(&self) -> Vec<String> {
        ["x", "y", "z", "w"][..self.m].iter().map(|s| s.to_string()).collect()
    }

    pub fn all_vars(&self) -> Vec<String> {
        let mut v = self.base_vars();
        v.extend(self.poly_vars());
        v
    }

    pub fn problem(&self) -> ProblemDescription {
        let vars = self.all_vars();
        let mut p = ProblemDescription::algebra_only(FieldDescriptor::Rational, &[], &[], &[]);
        p.base_vars = self.base_vars();
        p.poly_vars = self.poly_vars();
        p.relations = self.relations.iter().map(|e| render_monomial(e, &vars)).collect();
        p
    }

    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let s = rng.gen_range(0..=2usize);
        let m = rng.gen_range(1..=2usize);
        // With one graded variable a pure x-power would kill every large degree.
        let count = if m == 1 && s == 0 { 0 } else { rng.gen_range(0..=2usize) };
        let relations = (0..count)
            .map(|_| {
                let mut e: Vec<u32> = (0..s).map(|_| rng.gen_range(0..=1)).collect();
                if m == 1 && e.iter().all(|&x| x == 0) {
                    e[rng.gen_range(0..s)] = 1;
                }
                let dx = rng.gen_range(1..=2u32);
                let mut xs = vec![0u32; m];
                for _ in 0..dx {
                    xs[rng.gen_range(0..m)] += 1;
                }
                e.extend(xs);
                e
            })
            .collect();
        MonomialFixture { s, m, relations }
    }
}

/// `count` seeded monomial fixtures.
pub fn random_monomial_fixtures(seed: u64, count: usize) -> Vec<MonomialFixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| MonomialFixture::random(&mut rng)).collect()
}

fn problem(field: FieldDescriptor, base: &[&str], x: &[&str], rels: &[&str]) -> ProblemDescription {
    ProblemDescription::algebra_only(field, base, x, rels)
}

fn with_module(mut p: ProblemDescription, shifts: &[i64], cols: &[&[&str]]) -> ProblemDescription {
    p.module = Some(ModuleInput {
        gens: shifts.len(),
        shifts: shifts.to_vec(),
        relations: cols.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
    });
    p
}

/// Named module fixtures used for oracle equivalence and two-route checks.
pub fn fixture_corpus() -> Vec<(&'static str, ProblemDescription)> {
    let q = FieldDescriptor::Rational;
    let p = FieldDescriptor::Prime { characteristic: 32003 };
    vec![
        ("free-line", problem(q, &["u"], &["x"], &[])),
        ("free-plane", problem(q, &["u"], &["x", "y"], &[])),
        ("artinian-line", problem(q, &[], &["x"], &[])),
        ("artinian-double-line", problem(q, &[], &["x", "y"], &["x^2"])),
        ("cross", problem(q, &["u"], &["x", "y"], &["x*y"])),
        ("torsion-line", with_module(problem(q, &["u"], &["x"], &[]), &[0], &[&["u"]])),
        ("mixed-line", problem(q, &["u"], &["x", "y"], &["x*y - u*x^2"])),
        ("two-base", problem(q, &["u1", "u2"], &["x"], &["u1*x^2"])),
        ("two-base-plane", problem(p, &["u1", "u2"], &["x", "y"], &["u1*x - u2*y"])),
        ("shifted-sum", with_module(problem(q, &["u"], &["x", "y"], &[]), &[0, 1], &[&["x", "-u"]])),
        ("cusp-module", with_module(problem(q, &["u"], &["x", "y"], &["y^2 - u*x^2"]), &[0], &[&["u*x"]])),
    ]
}
