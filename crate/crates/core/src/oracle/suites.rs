//! Property suites: additivity, associativity, hypersurface sections and
//! the general-element identities.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::brute::brute_hilbert;
use super::fixtures::{random_monomial_fixtures, render_monomial, MonomialFixture};
use super::{run_instances, Check, Params, PropertyReport};
use crate::cli::{ModuleInput, ProblemDescription};
use crate::criteria::vanishing_profile;
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::graded::{quotient_by_element, ModuleCtx, ModulePresentation, ModuleSource, ZPoly};
use crate::hilbert::{hilbert_table, HilbertTable, Window};
use crate::polar::{colon_polar, general_linear_cut, j_multiplicity, polar_vector, top_polar_check};
use crate::svlength::general_coefficients;
use crate::{with_field, Options};

fn table_in<F: Field>(f: F, m: &ModulePresentation, w: Window, opts: &Options) -> Result<HilbertTable> {
    let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
    hilbert_table(&ctx.ring, &ModuleSource(ctx.clone()), w)
}

fn main_table(m: &ModulePresentation, w: Window, opts: &Options) -> Result<HilbertTable> {
    with_field!(m.algebra.base.field, |f| table_in(f, m, w, opts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub cells: usize,
    /// (v, n, main path, brute force)
    pub mismatches: Vec<(i64, i64, u64, u64)>,
}

/// Compares every cell of the main-path table with the brute-force count.
pub fn oracle_equivalence(p: &ProblemDescription, w: Window) -> Result<Equivalence> {
    let m = p.module_presentation()?;
    let t = main_table(&m, w, &p.options)?;
    let mut out = Equivalence { cells: 0, mismatches: Vec::new() };
    for v in w.v0..w.v_end() {
        for n in w.n0..w.n_end() {
            let brute = brute_hilbert(&m, v, n as u32, p.options.budget)?;
            let main = t.get(v, n);
            out.cells += 1;
            if brute != main {
                out.mismatches.push((v, n, main, brute));
            }
        }
    }
    Ok(out)
}

fn monomial_exps(p: &ZPoly) -> Result<Vec<u32>> {
    match p.terms.iter().collect::<Vec<_>>().as_slice() {
        [(e, _)] => Ok((*e).clone()),
        _ => Err(Error::NotMonomial),
    }
}

fn with_single_module(p: &ProblemDescription, shift: i64, cols: Vec<String>) -> ProblemDescription {
    let mut q = p.clone();
    q.module = Some(ModuleInput { gens: 1, shifts: vec![shift], relations: cols.into_iter().map(|c| vec![c]).collect() });
    q
}

fn params(pairs: &[(&str, String)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn vec_str(v: &[u64]) -> String {
    format!("{v:?}")
}

/// 0 → bB → B → B/bB → 0 for monomial B and b (or the split sequence B → B⊕B → B).
pub fn check_additivity(p: &ProblemDescription, prm: &Params) -> Result<Check> {
    let o = &p.options;
    let a = p.algebra()?;
    let vars = a.all_vars();
    let (m, sub, quo) = if prm.get("kind").map(String::as_str) == Some("summand") {
        let b = ModulePresentation::free_algebra(a.clone());
        (b.direct_sum(&b)?, b.clone(), b)
    } else {
        let bstr = prm.get("b").ok_or_else(|| Error::Invalid("missing parameter b".into()))?;
        let b = a.parse(bstr, "b")?;
        let be = monomial_exps(&b)?;
        let alpha = a.x_degree(&b, "b")?.unwrap_or(0);
        let colon: Vec<String> = a
            .relations
            .iter()
            .map(|g| {
                let ge = monomial_exps(g)?;
                let q: Vec<u32> = ge.iter().zip(&be).map(|(x, y)| x.saturating_sub(*y)).collect();
                Ok(render_monomial(&q, &vars))
            })
            .collect::<Result<_>>()?;
        let sub = with_single_module(p, alpha, colon).module_presentation()?;
        let quo = with_single_module(p, 0, vec![bstr.clone()]).module_presentation()?;
        (ModulePresentation::free_algebra(a.clone()), sub, quo)
    };
    let whole = match polar_vector(&m, None, o) {
        Ok(v) => v,
        Err(Error::EmptySupport) => return Ok(Check::Skip("empty support".into())),
        Err(e) => return Err(e),
    };
    let r = whole.r;
    let v1 = polar_vector(&sub, Some(r), o)?;
    let v2 = polar_vector(&quo, Some(r), o)?;
    let sum: Vec<u64> = v1.values.iter().zip(&v2.values).map(|(x, y)| x + y).collect();
    if sum != whole.values {
        return Ok(Check::Fail(format!(
            "vectors {} + {} != {}",
            vec_str(&v1.values),
            vec_str(&v2.values),
            vec_str(&whole.values)
        )));
    }
    let w = Window { v0: 0, n0: 0, wv: 8, wn: 8, margin: 0 };
    let (tm, t1, t2) = (main_table(&m, w, o)?, main_table(&sub, w, o)?, main_table(&quo, w, o)?);
    for v in w.v0..w.v_end() {
        for n in w.n0..w.n_end() {
            if t1.get(v, n) + t2.get(v, n) < tm.get(v, n) {
                return Ok(Check::Fail(format!("Q({v},{n}) < 0")));
            }
        }
    }
    Ok(Check::Pass)
}

/// Seeded additivity instances: the split and torsion examples plus random monomial multiples.
pub fn additivity_suite(trials: usize, seed: u64) -> PropertyReport {
    let line = ProblemDescription::algebra_only(Default::default(), &["u"], &["x"], &[]);
    let mut items = vec![
        (line.clone(), params(&[("kind", "summand".into())])),
        (line.clone(), params(&[("b", "x".into())])),
        (line, params(&[("b", "u".into())])),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for fx in random_monomial_fixtures(seed, 2 * trials) {
        let b = random_monomial(&fx, &mut rng);
        items.push((fx.problem(), params(&[("b", b)])));
    }
    run_instances("additivity", items, check_additivity)
}

fn random_monomial(fx: &MonomialFixture, rng: &mut ChaCha8Rng) -> String {
    loop {
        let mut e: Vec<u32> = (0..fx.s).map(|_| rng.gen_range(0..=1)).collect();
        let mut xs = vec![0u32; fx.m];
        if rng.gen_bool(0.7) {
            xs[rng.gen_range(0..fx.m)] = 1;
        }
        e.extend(xs);
        if e.iter().any(|&x| x > 0) {
            return render_monomial(&e, &fx.all_vars());
        }
    }
}

/// Σ over minimal primes of length · polar(B/p), for B with monomial relations.
pub fn associativity_monomial(p: &ProblemDescription) -> Result<PropertyReport> {
    p.algebra()?.relations.iter().map(monomial_exps).collect::<Result<Vec<_>>>()?;
    Ok(run_instances("associativity", vec![(p.clone(), Params::new())], |p, _| check_associativity(p)))
}

fn check_associativity(p: &ProblemDescription) -> Result<Check> {
    let a = p.algebra()?;
    let (s, m) = (a.s(), a.m());
    let n = s + m;
    let gens = a.relations.iter().map(monomial_exps).collect::<Result<Vec<_>>>()?;
    let whole = match polar_vector(&ModulePresentation::free_algebra(a.clone()), None, &p.options) {
        Ok(v) => v,
        Err(Error::EmptySupport) => return Ok(Check::Skip("empty support".into())),
        Err(e) => return Err(e),
    };
    let r = whole.r;
    // Variable subsets meeting every generator's support, minimal under inclusion.
    let hits = |mask: u32| gens.iter().all(|g| (0..n).any(|k| mask >> k & 1 == 1 && g[k] > 0));
    let cands: Vec<u32> = (0..1u32 << n).filter(|&mk| hits(mk)).collect();
    let minimal: Vec<u32> = cands.iter().copied().filter(|&mk| !cands.iter().any(|&o| o != mk && o & mk == o)).collect();
    let mut sum = vec![0u64; r + 1];
    for mask in minimal {
        let s_out = (0..s).filter(|&k| mask >> k & 1 == 0).count();
        let m_out = (s..n).filter(|&k| mask >> k & 1 == 0).count();
        if m_out == 0 || s_out + m_out - 1 != r {
            continue;
        }
        // Length of the localization: standard monomials in the prime's variables
        // after inverting the others.
        let inside: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let restricted: Vec<Vec<u32>> = gens.iter().map(|g| inside.iter().map(|&k| g[k]).collect()).collect();
        let bound: Vec<u32> = (0..inside.len())
            .map(|j| restricted.iter().filter(|g| g.iter().enumerate().all(|(i, &e)| i == j || e == 0)).map(|g| g[j]).min())
            .map(|b| b.ok_or_else(|| Error::Inconsistent("prime is not minimal".into())))
            .collect::<Result<_>>()?;
        let mut length = 0u64;
        let mut e = vec![0u32; inside.len()];
        'count: loop {
            if !restricted.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
                length += 1;
            }
            for j in 0..e.len() {
                e[j] += 1;
                if e[j] < bound[j] {
                    continue 'count;
                }
                e[j] = 0;
            }
            break;
        }
        sum[s_out] += length;
    }
    if sum != whole.values {
        return Ok(Check::Fail(format!("polar {} but prime sum {}", vec_str(&whole.values), vec_str(&sum))));
    }
    Ok(Check::Pass)
}

/// Associativity over the worked examples and seeded random monomial algebras.
pub fn associativity_suite(trials: usize, seed: u64) -> PropertyReport {
    let q = Default::default();
    let mut items = vec![
        (ProblemDescription::algebra_only(q, &["u"], &["x", "y"], &["x*y"]), Params::new()),
        (ProblemDescription::algebra_only(q, &[], &["x", "y"], &["x^2"]), Params::new()),
        (ProblemDescription::algebra_only(q, &["u"], &["x"], &[]), Params::new()),
    ];
    for fx in random_monomial_fixtures(seed, 2 * trials) {
        items.push((fx.problem(), Params::new()));
    }
    run_instances("associativity", items, |p, _| check_associativity(p))
}

/// M together with b; `general` asks for equality rather than the inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceCase {
    pub problem: ProblemDescription,
    pub b: String,
    pub general: bool,
}

pub fn check_hypersurface(p: &ProblemDescription, prm: &Params) -> Result<Check> {
    let o = &p.options;
    let m = p.module_presentation()?;
    let a = &m.algebra;
    let bstr = prm.get("b").ok_or_else(|| Error::Invalid("missing parameter b".into()))?;
    let general = prm.get("general").map(String::as_str) == Some("true");
    let b = a.parse(bstr, "b")?;
    let Some(alpha) = a.x_degree(&b, "b")? else { return Ok(Check::Skip("b = 0".into())) };
    let beta = b.terms.keys().map(|e| e[..a.s()].iter().sum::<u32>()).min().unwrap_or(0) as u64;
    let mv = match polar_vector(&m, None, o) {
        Ok(v) => v,
        Err(Error::EmptySupport) => return Ok(Check::Skip("empty support".into())),
        Err(e) => return Err(e),
    };
    let r = mv.r;
    if r == 0 {
        return Ok(Check::Skip("r = 0".into()));
    }
    let lhs = match polar_vector(&quotient_by_element(&m, &b)?, Some(r - 1), o) {
        Ok(v) => v,
        Err(Error::Invalid(_)) => return Ok(Check::Skip("section does not drop the dimension".into())),
        Err(e) => return Err(e),
    };
    let nv = colon_polar(&m, &b, r - 1, o)?;
    for i in 0..r {
        let rhs = alpha as u64 * mv.values[i] + beta * mv.values[i + 1] + nv.values[i];
        let l = lhs.values[i];
        if l < rhs || (general && l != rhs) {
            return Ok(Check::Fail(format!(
                "i = {i}: section {} vs {alpha}·{} + {beta}·shift + colon {}",
                vec_str(&lhs.values),
                vec_str(&mv.values),
                vec_str(&nv.values)
            )));
        }
    }
    Ok(Check::Pass)
}

/// Worked examples, general linear sections and random monomial sections.
pub fn hypersurface_cases(seed: u64, count: usize) -> Vec<HypersurfaceCase> {
    let q = Default::default();
    let plane = ProblemDescription::algebra_only(q, &["u"], &["x", "y"], &[]);
    let line = ProblemDescription::algebra_only(q, &["u"], &["x"], &[]);
    let mut out = vec![
        HypersurfaceCase { problem: plane.clone(), b: "x".into(), general: true },
        HypersurfaceCase { problem: plane, b: "u".into(), general: true },
        HypersurfaceCase { problem: line, b: "u*x".into(), general: false },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for (k, fx) in random_monomial_fixtures(seed, count).into_iter().enumerate() {
        let (b, general) = if k % 2 == 0 {
            let c = general_coefficients(seed.wrapping_add(k as u64), fx.m);
            let terms: Vec<String> = c.iter().zip(fx.poly_vars()).map(|(c, x)| format!("({c})*{x}")).collect();
            (terms.join(" + "), true)
        } else {
            (random_monomial(&fx, &mut rng), false)
        };
        out.push(HypersurfaceCase { problem: fx.problem(), b, general });
    }
    out
}

pub fn hypersurface_suite(cases: &[HypersurfaceCase]) -> PropertyReport {
    let items = cases
        .iter()
        .map(|c| (c.problem.clone(), params(&[("b", c.b.clone()), ("general", c.general.to_string())])))
        .collect();
    run_instances("hypersurface", items, check_hypersurface)
}

/// Identities checked one instance at a time on arbitrary modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// Nonzero algebra entries lie in the vanishing band.
    VanishingBand,
    /// m_r^0(M) = j_{r+1}(M).
    JIdentity,
    /// m_r^r(M) = e_r(M_v) for large v.
    TopPolar,
    /// m_{r−1}^i(M/yM) = m_r^i(M) for general y ∈ B_1.
    LinearCut,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::VanishingBand => "vanishing-band",
            Property::JIdentity => "j-identity",
            Property::TopPolar => "top-polar",
            Property::LinearCut => "linear-cut",
        }
    }
}

pub fn check_property(prop: Property, p: &ProblemDescription, prm: &Params) -> Result<Check> {
    let o = &p.options;
    let m = p.module_presentation()?;
    let pv = match polar_vector(&m, None, o) {
        Ok(v) => v,
        Err(Error::EmptySupport) => return Ok(Check::Skip("empty support".into())),
        Err(e) => return Err(e),
    };
    let fail = |msg: String| Ok(Check::Fail(msg));
    match prop {
        Property::VanishingBand => {
            if p.module.is_some() {
                return Ok(Check::Skip("not an algebra".into()));
            }
            let band = vanishing_profile(&p.graded_algebra()?, o)?;
            if !band.admits(&pv) {
                return fail(format!("{} outside [{}, {}]", vec_str(&pv.values), band.i_min, band.i_max));
            }
        }
        Property::JIdentity => {
            let j = j_multiplicity(&m, pv.r + 1, o)?;
            if j != pv.values[0] {
                return fail(format!("m^0 = {} but j = {j}", pv.values[0]));
            }
        }
        Property::TopPolar => {
            let rep = top_polar_check(&m, o)?;
            if !rep.agrees {
                return fail(format!("m^r = {} but samples {:?}", rep.top, rep.samples));
            }
        }
        Property::LinearCut => {
            if pv.r == 0 {
                return Ok(Check::Skip("r = 0".into()));
            }
            let seed = prm.get("seed").and_then(|s| s.parse().ok()).unwrap_or(o.seed);
            match general_linear_cut(&m, seed, o) {
                Ok(_) => {}
                Err(e @ Error::GenericityFailure { .. }) => return fail(e.to_string()),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Check::Pass)
}

/// Runs one identity over the fixture corpus and seeded random monomial algebras.
pub fn property_suite(prop: Property, trials: usize, seed: u64) -> PropertyReport {
    let mut items: Vec<(ProblemDescription, Params)> =
        super::fixture_corpus().into_iter().map(|(_, p)| (p, params(&[("seed", seed.to_string())]))).collect();
    for (k, fx) in random_monomial_fixtures(seed, 2 * trials).into_iter().enumerate() {
        items.push((fx.problem(), params(&[("seed", seed.wrapping_add(k as u64).to_string())])));
    }
    run_instances(prop.name(), items, |p, prm| check_property(prop, p, prm))
}

