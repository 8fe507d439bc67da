//! Verdict engines: integrality, birationality, reductions of ideals and
//! modules, Buchsbaum–Rim vectors and the vanishing band.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::graded::{
    rees_algebra, Filtration, GradedAlgebra, ModuleCtx, ModulePairSpec, ModulePresentation, Span,
    SubalgebraSpec, Which, ZPoly,
};
use crate::hilbert::fit_line;
use crate::graded::GradedSource;
use crate::polar::{fit_vector, AlgebraWork, PolarVector};
use crate::{with_field, Options};

pub const EQUIDIMENSIONAL: &str = "B equidimensional (asserted)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

/// Hypotheses the caller vouches for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    pub equidimensional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub label: String,
    pub vector: PolarVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Vec<Evidence>,
    /// Description of a direct (multiplicity-free) certificate, if one was found.
    pub certificate: Option<String>,
    pub assumptions_used: Vec<String>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(outcome: Outcome) -> Self {
        Verdict { outcome, evidence: Vec::new(), certificate: None, assumptions_used: Vec::new(), notes: Vec::new() }
    }

    fn push(&mut self, label: &str, vector: &PolarVector) {
        self.evidence.push(Evidence { label: label.into(), vector: vector.clone() });
    }

    pub fn vector(&self, label: &str) -> Option<&PolarVector> {
        self.evidence.iter().find(|e| e.label == label).map(|e| &e.vector)
    }
}

fn inconsistent(what: &str) -> Error {
    Error::Inconsistent(format!("direct certificate contradicts the multiplicity route ({what})"))
}

/// Truncated relative vectors for t = 1, 2, … until three consecutive agree.
fn stabilized_truncation<F: Field>(
    w: &AlgebraWork<F>,
    filt: &Arc<Filtration<F>>,
    r: usize,
    opts: &Options,
    notes: &mut Vec<String>,
) -> Result<Option<(usize, PolarVector)>> {
    let mut history: Vec<PolarVector> = Vec::new();
    for t in 1..=opts.t_cap.max(1) {
        match w.graded(filt, Some(t), opts, r) {
            Ok(pv) => history.push(pv),
            Err(Error::Unstable { .. }) => {
                notes.push(format!("truncated vector at t = {t} has no verified fit"));
                return Ok(None);
            }
            Err(e) => return Err(e),
        }
        let n = history.len();
        if n >= 3 && history[n - 3..].iter().all(|p| p.values == history[n - 1].values) {
            return Ok(Some((t - 2, history.pop().expect("nonempty"))));
        }
    }
    notes.push(format!("truncated vectors did not stabilize for t <= {}", opts.t_cap));
    Ok(None)
}

/// Smallest N with g^N ∈ A_1·B_{N−1} for every degree-one generator g of B.
fn integral_certificate<F: Field>(
    w: &AlgebraWork<F>,
    b: &GradedAlgebra,
    filt: &Arc<Filtration<F>>,
    opts: &Options,
) -> Result<Option<usize>> {
    let level = filt.level(1);
    let mut worst = 0;
    for g in &b.degree_one().gens {
        let mut found = None;
        for n in 1..=opts.n_power_cap {
            let vec = w.ctx.vector(&[g.pow(n as u32)], n as i64)?;
            if w.ring().contains(&level.piece(n as i64)?.sub, &vec)? {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => worst = worst.max(n),
            None => return Ok(None),
        }
    }
    Ok(Some(worst))
}

fn integral_in<F: Field>(f: F, a: &SubalgebraSpec, b: &GradedAlgebra, asm: Assumptions, opts: &Options) -> Result<Verdict> {
    let w = AlgebraWork::new(&f, b, opts)?;
    let filt = w.filtration(a)?;
    let poly_b = w.polar(opts, None)?;
    let r = poly_b.r;
    let rel = w.graded(&filt, None, opts, r)?;
    let cert = integral_certificate(&w, b, &filt, opts)?;
    let mut verdict = Verdict::new(Outcome::Inconclusive);
    verdict.push("relative", &rel);
    verdict.push("algebra", &poly_b);
    if let Some(n) = cert {
        verdict.certificate = Some(format!("every generator g of B satisfies g^N in A_1 B_(N-1) with N <= {n}"));
    }
    let stable = stabilized_truncation(&w, &filt, r, opts, &mut verdict.notes)?;
    if let Some((t, tv)) = &stable {
        verdict.push("truncated", tv);
        verdict.notes.push(format!("truncated vector stable from t = {t}"));
    }
    verdict.notes.push(format!(
        "necessary comparison relative = polar(B): {}",
        if rel.values == poly_b.values { "equal" } else { "different" }
    ));
    verdict.outcome = match (&stable, cert) {
        (Some((_, tv)), Some(_)) if tv.values != rel.values => return Err(inconsistent("integrality")),
        (Some((_, tv)), None) if tv.values != rel.values => Outcome::Fails,
        (_, Some(_)) => Outcome::Holds,
        (Some(_), None) if asm.equidimensional => {
            verdict.assumptions_used.push(EQUIDIMENSIONAL.into());
            Outcome::Holds
        }
        _ => Outcome::Inconclusive,
    };
    Ok(verdict)
}

/// Is B integral over A?
pub fn check_integral(a: &SubalgebraSpec, b: &GradedAlgebra, asm: Assumptions, opts: &Options) -> Result<Verdict> {
    with_field!(b.presentation.base.field, |f| integral_in(f, a, b, asm, opts))
}

fn birational_in<F: Field>(f: F, a: &SubalgebraSpec, b: &GradedAlgebra, asm: Assumptions, opts: &Options) -> Result<Verdict> {
    let w = AlgebraWork::new(&f, b, opts)?;
    let filt = w.filtration(a)?;
    let r = w.polar(opts, None)?.r;
    let rel = w.graded(&filt, None, opts, r)?;
    let image = w.graded(&filt, Some(1), opts, r)?;
    let mut verdict = Verdict::new(Outcome::Inconclusive);
    verdict.push("relative", &rel);
    verdict.push("image", &image);
    // B_1 ⊆ A_1 B_0 means A = B.
    let level = filt.level(1).piece(1)?;
    let b1 = w.span.piece(1)?;
    let identity = w.ring().contains_all(&level.sub, &b1.gens)?;
    if identity {
        verdict.certificate = Some("B_1 = A_1 B_0, the morphism is the identity".into());
    }
    verdict.outcome = if rel.values != image.values {
        if identity {
            return Err(inconsistent("birationality"));
        }
        Outcome::Fails
    } else if identity {
        Outcome::Holds
    } else if asm.equidimensional {
        verdict.assumptions_used.push(EQUIDIMENSIONAL.into());
        Outcome::Holds
    } else {
        verdict.notes.push("equal vectors; the converse needs B equidimensional".into());
        Outcome::Inconclusive
    };
    Ok(verdict)
}

/// Is Proj(B) → Proj(A) finite birational?
pub fn check_birational(a: &SubalgebraSpec, b: &GradedAlgebra, asm: Assumptions, opts: &Options) -> Result<Verdict> {
    with_field!(b.presentation.base.field, |f| birational_in(f, a, b, asm, opts))
}

fn reduction_ideal_in<F: Field>(
    f: F,
    i: &SubalgebraSpec,
    j: &SubalgebraSpec,
    m: &ModulePresentation,
    opts: &Options,
) -> Result<Verdict> {
    // I ⊆ J, tested in degree one of B.
    let alg = Arc::new(ModuleCtx::algebra(f.clone(), &m.algebra, opts.budget)?);
    let jb = Filtration::new(Span::whole(alg.clone()), j.gens.iter().map(|g| alg.gelem(g)).collect());
    let j1 = jb.level(1).piece(1)?;
    for g in &i.gens {
        if !alg.ring.contains(&j1.sub, &alg.vector(std::slice::from_ref(g), 1)?)? {
            return Err(Error::NotContained);
        }
    }

    let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
    let r = fit_vector(&ctx.ring, &crate::graded::ModuleSource(ctx.clone()), opts, None)?.r;
    let whole = Span::whole(ctx.clone());
    let fi = Arc::new(Filtration::new(whole.clone(), i.gens.iter().map(|g| ctx.gelem(g)).collect()));
    let fj = Arc::new(Filtration::new(whole, j.gens.iter().map(|g| ctx.gelem(g)).collect()));
    let vi = fit_vector(&ctx.ring, &GradedSource { filtration: fi.clone(), truncate: None }, opts, Some(r))?;
    let vj = fit_vector(&ctx.ring, &GradedSource { filtration: fj.clone(), truncate: None }, opts, Some(r))?;

    // I·J^k M = J^{k+1} M, compared in every degree where J^{k+1}M has generators.
    let max_shift = *m.shifts.iter().max().unwrap_or(&0);
    let imults: Vec<_> = i.gens.iter().map(|g| ctx.gelem(g)).collect();
    let mut cert = None;
    for k in 0..opts.n_power_cap {
        let big = fj.level(k + 1);
        let small = Span::product(fj.level(k), imults.clone());
        let mut equal = true;
        for v in ctx.min_shift()..=max_shift + k as i64 + 1 {
            let s = small.piece(v)?;
            if !ctx.ring.contains_all(&s.sub, &big.piece(v)?.gens)? {
                equal = false;
                break;
            }
        }
        if equal {
            cert = Some(k);
            break;
        }
    }

    let mut verdict = Verdict::new(Outcome::Inconclusive);
    verdict.push("I", &vi);
    verdict.push("J", &vj);
    if let Some(k) = cert {
        verdict.certificate = Some(format!("I J^{k} M = J^{} M", k + 1));
    }
    verdict.outcome = match (vi.values == vj.values, cert) {
        (false, Some(_)) => return Err(inconsistent("reduction of ideals")),
        (false, None) => Outcome::Fails,
        (true, Some(_)) => Outcome::Holds,
        (true, None) => {
            verdict.notes.push("equal vectors are necessary but not sufficient for a reduction".into());
            Outcome::Inconclusive
        }
    };
    Ok(verdict)
}

/// Is I a reduction of J on M?
pub fn check_reduction_ideal(
    i: &SubalgebraSpec,
    j: &SubalgebraSpec,
    m: &ModulePresentation,
    opts: &Options,
) -> Result<Verdict> {
    with_field!(m.algebra.base.field, |f| reduction_ideal_in(f, i, j, m, opts))
}

fn eval_zpoly<F: Field>(f: &F, p: &ZPoly, point: &[BigInt]) -> F::Elem {
    let mut acc = f.zero();
    for (e, c) in &p.terms {
        let mut t: BigInt = c.clone();
        for (k, &d) in e.iter().enumerate() {
            t *= point[k].pow(d);
        }
        acc = f.add(&acc, &f.from_bigint(&t));
    }
    acc
}

fn dense_rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else { continue };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][c]);
        let pivot: Vec<F::Elem> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for i in 0..rows.len() {
            if i != rank && !f.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                for k in 0..ncols {
                    rows[i][k] = f.sub(&rows[i][k], &f.mul(&factor, &pivot[k]));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Generic rank of a column matrix over Frac(R), by evaluation at seeded points.
fn generic_rank<F: Field>(f: &F, cols: &[Vec<ZPoly>], rank: usize, s: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..8 {
        let point: Vec<BigInt> = (0..s).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
        let rows = (0..rank).map(|i| cols.iter().map(|c| eval_zpoly(f, &c[i], &point)).collect()).collect();
        best = best.max(dense_rank(f, rows));
        if best == rank {
            break;
        }
    }
    best
}

fn check_rank<F: Field>(f: &F, p: &ModulePairSpec, which: Which, opts: &Options) -> Result<()> {
    let cols = p.columns(which);
    if generic_rank(f, cols, p.rank, p.base.s(), opts.seed) < p.rank {
        return Err(Error::RankDeficient { expected: p.rank });
    }
    Ok(())
}

fn rees_work<F: Field>(f: &F, p: &ModulePairSpec, which: Which, opts: &Options) -> Result<(AlgebraWork<F>, GradedAlgebra)> {
    check_rank(f, p, which, opts)?;
    let (ambient, gens) = rees_algebra(p, which)?;
    let b = GradedAlgebra { presentation: ambient, generators: Some(gens) };
    Ok((AlgebraWork::new(f, &b, opts)?, b))
}

/// br_i(E) (or br_i(U)) at r = s + e − 1.
pub fn buchsbaum_rim(p: &ModulePairSpec, which: Which, opts: &Options) -> Result<PolarVector> {
    let r = p.base.s() + p.rank - 1;
    with_field!(p.base.field, |f| rees_work(&f, p, which, opts)?.0.polar(opts, Some(r)))
}

/// U ⊆ E as polynomial column spans.
fn check_contained<F: Field>(f: &F, p: &ModulePairSpec, opts: &Options) -> Result<()> {
    let (amb, e) = rees_algebra(p, Which::E)?;
    let (_, u) = rees_algebra(p, Which::U)?;
    let ctx = Arc::new(ModuleCtx::algebra(f.clone(), &amb, opts.budget)?);
    let span = Span::generated_algebra(ctx.clone(), e.gens.iter().map(|g| ctx.gelem(g)).collect());
    let e1 = span.piece(1)?;
    for g in &u.gens {
        if !ctx.ring.contains(&e1.sub, &ctx.vector(std::slice::from_ref(g), 1)?)? {
            return Err(Error::NotContained);
        }
    }
    Ok(())
}

fn reduction_module_in<F: Field>(f: F, p: &ModulePairSpec, opts: &Options) -> Result<Verdict> {
    if p.u_cols.is_empty() {
        return Err(Error::RankDeficient { expected: p.rank });
    }
    check_rank(&f, p, Which::U, opts)?;
    check_contained(&f, p, opts)?;
    let r = p.base.s() + p.rank - 1;
    let (w, _) = rees_work(&f, p, Which::E, opts)?;
    let (_, u) = rees_algebra(p, Which::U)?;
    let filt = w.filtration(&u)?;
    let br_e = w.polar(opts, Some(r))?;
    let br_ue = w.graded(&filt, None, opts, r)?;

    // E^{v+1} = U E^v for some v ≤ n_power_cap.
    let level = filt.level(1);
    let mut cert = None;
    for v in 0..=opts.n_power_cap as i64 {
        let ue = level.piece(v + 1)?;
        if w.ring().contains_all(&ue.sub, &w.span.piece(v + 1)?.gens)? {
            cert = Some(v);
            break;
        }
    }

    let mut verdict = Verdict::new(Outcome::Fails);
    verdict.push("br(U,E)", &br_ue);
    verdict.push("br(E)", &br_e);
    if let Some(v) = cert {
        verdict.certificate = Some(format!("E^{} = U E^{v}", v + 1));
    }
    verdict.outcome = match (br_ue.values == br_e.values, cert) {
        (true, _) => Outcome::Holds,
        (false, Some(_)) => return Err(inconsistent("reduction of modules")),
        (false, None) => Outcome::Fails,
    };
    if verdict.outcome == Outcome::Holds && cert.is_none() {
        verdict.notes.push(format!("no direct certificate with v <= {}", opts.n_power_cap));
    }
    Ok(verdict)
}

/// Is U a reduction of E?
pub fn check_reduction_module(p: &ModulePairSpec, opts: &Options) -> Result<Verdict> {
    with_field!(p.base.field, |f| reduction_module_in(f, p, opts))
}

/// br(U) and br(E) side by side, without a verdict.
pub fn br_experiment(p: &ModulePairSpec, opts: &Options) -> Result<(PolarVector, PolarVector)> {
    Ok((buchsbaum_rim(p, Which::U, opts)?, buchsbaum_rim(p, Which::E, opts)?))
}

/// Indices outside [i_min, i_max] carry zero algebra polar multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingProfile {
    pub r: usize,
    pub i_min: i64,
    pub i_max: i64,
}

impl VanishingProfile {
    pub fn admits(&self, pv: &PolarVector) -> bool {
        pv.values.iter().enumerate().all(|(i, &x)| x == 0 || (self.i_min..=self.i_max).contains(&(i as i64)))
    }
}

fn vanishing_in<F: Field>(f: F, b: &GradedAlgebra, opts: &Options) -> Result<VanishingProfile> {
    let w = AlgebraWork::new(&f, b, opts)?;
    let r = w.polar(opts, None)?.r;
    let src = w.source();
    let fit = fit_line(&opts.policy(), opts.vmax, |v| {
        let mut total = 0u64;
        for q in src.summands(v)? {
            total += w.ring().truncated_dimension(&q, 0)? as u64;
        }
        Ok(total)
    })?;
    Ok(VanishingProfile { r, i_min: r as i64 - fit.degree, i_max: b.presentation.s() as i64 })
}

pub fn vanishing_profile(b: &GradedAlgebra, opts: &Options) -> Result<VanishingProfile> {
    with_field!(b.presentation.base.field, |f| vanishing_in(f, b, opts))
}

/// Polar vector of an algebra, rejected if it breaks the vanishing band.
pub fn filtered_algebra_polar(b: &GradedAlgebra, opts: &Options) -> Result<PolarVector> {
    let pv = crate::polar::algebra_polar(b, None, opts)?;
    let band = vanishing_profile(b, opts)?;
    if !band.admits(&pv) {
        return Err(Error::Inconsistent(format!("vector {:?} leaves the band [{}, {}]", pv.values, band.i_min, band.i_max)));
    }
    Ok(pv)
}
