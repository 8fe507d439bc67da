//! Second route: saturation chains along general elements of m and their
//! torsion lengths, m_r^i(M) = j_{r−i+1}(Q_i).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{BasePoly, Field, ModVec, ModuleOrder, Monomial, PieceModule};
use crate::graded::{ModuleCtx, ModulePresentation};
use crate::hilbert::{fit_line, univariate_multiplicity};
use crate::polar::{polar_vector, PolarVector, Provenance};
use crate::{with_field, Options};

/// Coefficients are drawn uniformly from [−COEFF_BOUND, COEFF_BOUND].
pub const COEFF_BOUND: i64 = 17;

fn draw_nonzero(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// A seeded coefficient vector, never identically zero.
pub fn general_coefficients(seed: u64, len: usize) -> Vec<i64> {
    if len == 0 {
        return Vec::new();
    }
    draw_nonzero(&mut ChaCha8Rng::seed_from_u64(seed), len)
}

/// Elements x_1..x_count of m, each a κ-combination of u_1..u_s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralSequence {
    pub seed: u64,
    pub s: usize,
    pub coefficients: Vec<Vec<i64>>,
}

impl GeneralSequence {
    pub fn render(&self, base_vars: &[String]) -> Vec<String> {
        self.coefficients
            .iter()
            .map(|c| {
                let mut out = String::new();
                for (k, &a) in c.iter().enumerate().filter(|(_, a)| **a != 0) {
                    let sign = if a < 0 { "-" } else if out.is_empty() { "" } else { "+" };
                    let mag = a.unsigned_abs();
                    let coef = if mag == 1 { String::new() } else { format!("{mag}*") };
                    out.push_str(&format!("{sign}{coef}{}", base_vars[k]));
                }
                out
            })
            .collect()
    }

    fn polys<F: Field>(&self, f: &F) -> Vec<BasePoly<F>> {
        self.coefficients
            .iter()
            .map(|c| {
                let raw = c.iter().enumerate().map(|(k, &a)| (Monomial::var(k), f.from_i64(a))).collect();
                BasePoly::from_terms(f, raw)
            })
            .collect()
    }
}

pub fn sample_general(seed: u64, count: usize, s: usize) -> Result<GeneralSequence> {
    if s == 0 {
        return Err(Error::NoBaseVariables);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coefficients = (0..count).map(|_| draw_nonzero(&mut rng, s)).collect();
    Ok(GeneralSequence { seed, s, coefficients })
}

/// Degree-v data of Q_i = M/(N_{i−1} + x_iM), N_i = (N_{i−1} + x_iM) : m^∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStage {
    pub index: usize,
    pub v: i64,
    /// Minimal number of generators of (Q_i)_v.
    pub generators: usize,
    /// Length of H⁰_m(Q_i)_v.
    pub torsion_length: usize,
}

struct Chain<F: Field> {
    ctx: Arc<ModuleCtx<F>>,
    xs: Vec<BasePoly<F>>,
    memo: Mutex<HashMap<i64, Vec<(PieceModule<F>, usize)>>>,
}

impl<F: Field> Chain<F> {
    /// Q_0..Q_{xs.len()} at degree v with their torsion lengths.
    fn stages(&self, v: i64) -> Result<Vec<(PieceModule<F>, usize)>> {
        if let Some(s) = self.memo.lock().unwrap().get(&v) {
            return Ok(s.clone());
        }
        let ring = &self.ctx.ring;
        let f = ring.field.clone();
        let rank = self.ctx.frame(v).len();
        let mut out = Vec::with_capacity(self.xs.len() + 1);
        let mut prev = self.ctx.relations(v);
        for i in 0..=self.xs.len() {
            let mut bottom = prev.clone();
            if i > 0 {
                let x = &self.xs[i - 1];
                bottom.extend((0..rank).map(|a| ModVec::unit(&f, a).mul_poly(&f, ModuleOrder::Top, x)));
            }
            let q = PieceModule { rank, frame: self.ctx.frame_labels(v), relations: bottom.clone() };
            if rank == 0 {
                out.push((q, 0));
                continue;
            }
            let sat = ring.saturate(rank, bottom.clone())?;
            let tors = ring.quotient_piece(&sat.gens, &ring.gb(rank, bottom)?, rank)?;
            let len = ring
                .finite_length(&tors)?
                .ok_or_else(|| Error::Inconsistent("saturation quotient of infinite length".into()))?;
            out.push((q, len));
            prev = sat.gens;
        }
        self.memo.lock().unwrap().insert(v, out.clone());
        Ok(out)
    }
}

fn chain_for<F: Field>(f: F, m: &ModulePresentation, seq: &GeneralSequence, opts: &Options) -> Result<Chain<F>> {
    let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
    let xs = seq.polys(ctx.field());
    Ok(Chain { ctx, xs, memo: Mutex::new(HashMap::new()) })
}

/// Q_i at degree v for the given sequence (i ≤ its length).
pub fn chain_stage(m: &ModulePresentation, seq: &GeneralSequence, i: usize, v: i64, opts: &Options) -> Result<ChainStage> {
    if i > seq.coefficients.len() {
        return Err(Error::Invalid(format!("stage {i} needs {i} general elements")));
    }
    if seq.s != m.algebra.s() {
        return Err(Error::Invalid("general sequence has the wrong number of base variables".into()));
    }
    let trimmed = GeneralSequence { seed: seq.seed, s: seq.s, coefficients: seq.coefficients[..i].to_vec() };
    with_field!(m.algebra.base.field, |f| {
        let chain = chain_for(f, m, &trimmed, opts)?;
        let stages = chain.stages(v)?;
        let (q, torsion_length) = &stages[i];
        let generators = chain.ctx.ring.truncated_dimension(q, 0)?;
        Ok(ChainStage { index: i, v, generators, torsion_length: *torsion_length })
    })
}

fn chain_vector<F: Field>(f: F, m: &ModulePresentation, seq: &GeneralSequence, r: usize, opts: &Options) -> Result<Vec<u64>> {
    let chain = chain_for(f, m, seq, opts)?;
    let policy = opts.policy();
    (0..=r)
        .map(|i| {
            let fit = fit_line(&policy, opts.vmax, |v| Ok(chain.stages(v)?[i].1 as u64))?;
            let e = univariate_multiplicity(&fit, (r - i) as i64)?;
            u64::try_from(e).map_err(|_| Error::NonIntegerCoefficient)
        })
        .collect()
}

/// m_r^i(M) through the chain; r from the Hilbert route unless supplied.
pub fn length_formula_vector(m: &ModulePresentation, seed: u64, r: Option<usize>, opts: &Options) -> Result<PolarVector> {
    let r = match r {
        Some(r) => r,
        None => polar_vector(m, None, opts)?.r,
    };
    let s = m.algebra.s();
    if s == 0 && r > 0 {
        // No general elements exist in m = 0.
        return polar_vector(m, Some(r), opts);
    }
    for attempt in 0..opts.max_resample {
        let seq = if r == 0 {
            GeneralSequence { seed, s, coefficients: Vec::new() }
        } else {
            sample_general(seed.wrapping_add(attempt as u64), r, s)?
        };
        let out = with_field!(m.algebra.base.field, |f| chain_vector(f, m, &seq, r, opts));
        match out {
            Ok(values) => {
                let mut pv = PolarVector::zeros(r, Provenance::SvRoute);
                pv.values = values;
                pv.fit_degree = r as i64;
                return Ok(pv);
            }
            Err(Error::Unstable { .. }) if r > 0 => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure { attempts: opts.max_resample })
}

/// One seed of a two-route comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub values: Option<Vec<u64>>,
    pub error: Option<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub reference: PolarVector,
    pub runs: Vec<SeedRun>,
    /// The common sv-route vector when every seed produced the same one.
    pub consensus: Option<Vec<u64>>,
    pub all_agree: bool,
}

/// Compares the chain route per seed with the Hilbert route.
pub fn cross_validate(m: &ModulePresentation, seeds: &[u64], opts: &Options) -> Result<CrossValidation> {
    if seeds.is_empty() {
        return Err(Error::Invalid("cross validation needs at least one seed".into()));
    }
    let reference = polar_vector(m, None, opts)?;
    let runs: Vec<SeedRun> = seeds
        .par_iter()
        .map(|&seed| match length_formula_vector(m, seed, Some(reference.r), opts) {
            Ok(pv) => SeedRun { seed, agrees: pv.values == reference.values, values: Some(pv.values), error: None },
            Err(e) => SeedRun { seed, values: None, error: Some(e.to_string()), agrees: false },
        })
        .collect();
    let first = runs[0].values.clone();
    let consensus = if runs.iter().all(|r| r.values.is_some() && r.values == first) { first } else { None };
    let all_agree = runs.iter().all(|r| r.agrees);
    Ok(CrossValidation { reference, runs, consensus, all_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{AlgebraPresentation, BasePresentation};

    fn alg(base: &[&str], x: &[&str], rels: &[&str]) -> AlgebraPresentation {
        AlgebraPresentation::new(BasePresentation::rationals(base), x, rels).unwrap()
    }

    #[test]
    fn sampling() {
        assert_eq!(sample_general(1, 2, 0).unwrap_err(), Error::NoBaseVariables);
        let a = sample_general(42, 2, 2).unwrap();
        assert_eq!(a, sample_general(42, 2, 2).unwrap());
        assert!(a.coefficients.iter().all(|c| c.iter().any(|&x| x != 0)));
        assert!(a.coefficients.iter().flatten().all(|x| x.abs() <= COEFF_BOUND));
        let one = sample_general(3, 3, 1).unwrap();
        assert!(one.coefficients.iter().all(|c| c[0] != 0));
    }

    #[test]
    fn stages() {
        let o = Options::default();
        let b = alg(&["u"], &["x", "y"], &[]);
        let m = ModulePresentation::free_algebra(b);
        let seq = GeneralSequence { seed: 0, s: 1, coefficients: vec![vec![1]] };
        for v in 0..3 {
            let st = chain_stage(&m, &seq, 1, v, &o).unwrap();
            assert_eq!((st.generators, st.torsion_length), (v as usize + 1, v as usize + 1));
            assert_eq!(chain_stage(&m, &seq, 0, v, &o).unwrap().torsion_length, 0);
        }
        let b1 = alg(&["u"], &["x"], &[]);
        let mu = ModulePresentation::new(b1, &[0], &[vec!["u"]]).unwrap();
        let st = chain_stage(&mu, &seq, 1, 2, &o).unwrap();
        assert_eq!((st.generators, st.torsion_length), (0, 0));
    }

    #[test]
    fn two_routes() {
        let o = Options::default();
        let b = alg(&["u"], &["x", "y"], &[]);
        let m = ModulePresentation::free_algebra(b);
        let cv = cross_validate(&m, &[1, 2, 3], &o).unwrap();
        assert!(cv.all_agree, "{cv:?}");
        assert_eq!(cv.consensus, Some(vec![0, 1, 0]));
        let b1 = alg(&["u"], &["x"], &[]);
        let mu = ModulePresentation::new(b1.clone(), &[0], &[vec!["u"]]).unwrap();
        assert_eq!(length_formula_vector(&mu, 5, None, &o).unwrap().values, vec![1]);
        let k = ModulePresentation::free_algebra(alg(&[], &["x"], &[]));
        assert_eq!(length_formula_vector(&k, 5, None, &o).unwrap().values, vec![1]);
        let two = ModulePresentation::free_algebra(alg(&["u1", "u2"], &["x"], &["u1*x^2"]));
        let cv = cross_validate(&two, &[4, 9, 11], &o).unwrap();
        assert!(cv.all_agree, "{cv:?}");
    }
}
