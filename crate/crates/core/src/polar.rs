//! Polar multiplicity vectors m_r^i = e(r−i, i) of the bivariate Hilbert polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{BaseRing, Field};
use crate::graded::{
    quotient_by_element, ColonSource, Filtration, GradedAlgebra, GradedSource, ModuleCtx, ModulePresentation, ModuleSource,
    PieceSource, Span, SpanSource, SubalgebraSpec, TorsionSource, ZPoly,
};
use crate::hilbert::{fit_line, mixed_coefficients, stable_fit, univariate_multiplicity, Window};
use crate::svlength::general_coefficients;
use crate::{with_field, Options};

/// Which computation produced a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    HilbertFit,
    SvRoute,
}

/// (m_r^0, …, m_r^r) with fit diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarVector {
    pub r: usize,
    pub values: Vec<u64>,
    pub provenance: Provenance,
    /// Total degree of the fitted polynomial (−1 when the table is zero).
    pub fit_degree: i64,
    pub window: Option<Window>,
    pub margin_verified: bool,
}

impl PolarVector {
    pub fn zeros(r: usize, provenance: Provenance) -> Self {
        PolarVector { r, values: vec![0; r + 1], provenance, fit_degree: -1, window: None, margin_verified: true }
    }

    /// Same entries, ignoring provenance and diagnostics.
    pub fn same_values(&self, o: &PolarVector) -> bool {
        self.r == o.r && self.values == o.values
    }
}

fn big_to_u64(b: &BigInt) -> Result<u64> {
    b.to_u64().ok_or(Error::NonIntegerCoefficient)
}

/// Fits a piece source and reads off the vector at `r` (default: the fit degree).
pub(crate) fn fit_vector<F: Field>(
    ring: &BaseRing<F>,
    src: &dyn PieceSource<F>,
    opts: &Options,
    r: Option<usize>,
) -> Result<PolarVector> {
    let (_, fit) = stable_fit(ring, src, &opts.policy())?;
    let r = match r {
        Some(r) => {
            if fit.degree > r as i64 {
                return Err(Error::Invalid(format!("fit degree {} exceeds requested r = {r}", fit.degree)));
            }
            r
        }
        None if fit.degree < 0 => return Err(Error::EmptySupport),
        None => fit.degree as usize,
    };
    let e = mixed_coefficients(&fit, r as i64)?;
    let values = (0..=r).map(|i| big_to_u64(&e[&(r - i, i)])).collect::<Result<Vec<_>>>()?;
    Ok(PolarVector {
        r,
        values,
        provenance: Provenance::HilbertFit,
        fit_degree: fit.degree,
        window: Some(fit.window),
        margin_verified: fit.margin_verified,
    })
}

/// A standard graded algebra realized degreewise, with cached filtrations.
pub(crate) struct AlgebraWork<F: Field> {
    pub ctx: Arc<ModuleCtx<F>>,
    pub span: Arc<Span<F>>,
    pub generated: bool,
}

impl<F: Field> AlgebraWork<F> {
    pub fn new(f: &F, b: &GradedAlgebra, opts: &Options) -> Result<Self> {
        let ctx = Arc::new(ModuleCtx::algebra(f.clone(), &b.presentation, opts.budget)?);
        let (span, generated) = match &b.generators {
            None => (Span::whole(ctx.clone()), false),
            Some(w) => {
                let mults = w.gens.iter().map(|g| ctx.gelem(g)).collect();
                (Span::generated_algebra(ctx.clone(), mults), true)
            }
        };
        Ok(AlgebraWork { ctx, span, generated })
    }

    pub fn ring(&self) -> &BaseRing<F> {
        &self.ctx.ring
    }

    pub fn source(&self) -> Box<dyn PieceSource<F> + '_> {
        if self.generated {
            Box::new(SpanSource(self.span.clone()))
        } else {
            Box::new(ModuleSource(self.ctx.clone()))
        }
    }

    /// The A-adic filtration of B; A's generators must lie in B_1.
    pub fn filtration(&self, a: &SubalgebraSpec) -> Result<Arc<Filtration<F>>> {
        let b1 = self.span.piece(1)?;
        for g in &a.gens {
            let vec = self.ctx.vector(std::slice::from_ref(g), 1)?;
            if !self.ring().contains(&b1.sub, &vec)? {
                return Err(Error::NotContained);
            }
        }
        let mults = a.gens.iter().map(|g| self.ctx.gelem(g)).collect();
        Ok(Arc::new(Filtration::new(self.span.clone(), mults)))
    }

    pub fn polar(&self, opts: &Options, r: Option<usize>) -> Result<PolarVector> {
        fit_vector(self.ring(), self.source().as_ref(), opts, r)
    }

    pub fn graded(&self, filt: &Arc<Filtration<F>>, truncate: Option<usize>, opts: &Options, r: usize) -> Result<PolarVector> {
        let src = GradedSource { filtration: filt.clone(), truncate };
        fit_vector(self.ring(), &src, opts, Some(r))
    }
}

/// m_r^i(M); `r_override` must be at least the fit degree.
pub fn polar_vector(m: &ModulePresentation, r_override: Option<usize>, opts: &Options) -> Result<PolarVector> {
    with_field!(m.algebra.base.field, |f| {
        let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
        fit_vector(&ctx.ring, &ModuleSource(ctx.clone()), opts, r_override)
    })
}

/// Polar vector of an algebra, presented or given as an image subalgebra.
pub fn algebra_polar(b: &GradedAlgebra, r_override: Option<usize>, opts: &Options) -> Result<PolarVector> {
    with_field!(b.presentation.base.field, |f| AlgebraWork::new(&f, b, opts)?.polar(opts, r_override))
}

/// m_r^i(I, M) = m_r^i(gr_I(M)) with r = r(M).
pub fn polar_wrt_linear_ideal(i: &SubalgebraSpec, m: &ModulePresentation, opts: &Options) -> Result<PolarVector> {
    with_field!(m.algebra.base.field, |f| {
        let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
        let r = fit_vector(&ctx.ring, &ModuleSource(ctx.clone()), opts, None)?.r;
        let mults = i.gens.iter().map(|g| ctx.gelem(g)).collect();
        let filt = Arc::new(Filtration::new(Span::whole(ctx.clone()), mults));
        fit_vector(&ctx.ring, &GradedSource { filtration: filt, truncate: None }, opts, Some(r))
    })
}

/// m_r^i(A, B) with r = r(B).
pub fn relative_polar(a: &SubalgebraSpec, b: &GradedAlgebra, opts: &Options) -> Result<PolarVector> {
    with_field!(b.presentation.base.field, |f| {
        let w = AlgebraWork::new(&f, b, opts)?;
        let r = w.polar(opts, None)?.r;
        let filt = w.filtration(a)?;
        w.graded(&filt, None, opts, r)
    })
}

/// m_r^i(G/B_tG) with r = r(B).
pub fn truncated_relative(a: &SubalgebraSpec, b: &GradedAlgebra, t: usize, opts: &Options) -> Result<PolarVector> {
    if t == 0 {
        return Err(Error::Invalid("truncation needs t >= 1".into()));
    }
    with_field!(b.presentation.base.field, |f| {
        let w = AlgebraWork::new(&f, b, opts)?;
        let r = w.polar(opts, None)?.r;
        let filt = w.filtration(a)?;
        w.graded(&filt, Some(t), opts, r)
    })
}

/// Polar vector of the image algebra A (pieces A_v B_0), at r(B) unless given.
pub fn image_polar(a: &SubalgebraSpec, b: &GradedAlgebra, r: Option<usize>, opts: &Options) -> Result<PolarVector> {
    with_field!(b.presentation.base.field, |f| {
        let w = AlgebraWork::new(&f, b, opts)?;
        let r = match r {
            Some(r) => r,
            None => w.polar(opts, None)?.r,
        };
        let filt = w.filtration(a)?;
        w.graded(&filt, Some(1), opts, r)
    })
}

pub(crate) fn j_multiplicity_in<F: Field>(ctx: &Arc<ModuleCtx<F>>, d: usize, opts: &Options) -> Result<u64> {
    if d == 0 {
        return Ok(0);
    }
    let src = TorsionSource(ctx.clone());
    let fit = fit_line(&opts.policy(), opts.vmax, |v| {
        let mut total = 0u64;
        for q in src.summands(v)? {
            total += ctx.ring.finite_length(&q)?.ok_or_else(|| Error::Inconsistent("torsion of infinite length".into()))? as u64;
        }
        Ok(total)
    })?;
    big_to_u64(&univariate_multiplicity(&fit, d as i64 - 1)?)
}

/// j_d(M) = e_d(H⁰_m(M)).
pub fn j_multiplicity(m: &ModulePresentation, d: usize, opts: &Options) -> Result<u64> {
    with_field!(m.algebra.base.field, |f| {
        let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
        j_multiplicity_in(&ctx, d, opts)
    })
}

/// Polar vector of (0 :_M b) at a given r.
pub fn colon_polar(m: &ModulePresentation, b: &ZPoly, r: usize, opts: &Options) -> Result<PolarVector> {
    with_field!(m.algebra.base.field, |f| {
        let ctx = Arc::new(ModuleCtx::new(f, m, opts.budget)?);
        let element = ctx.gelem(b);
        fit_vector(&ctx.ring, &ColonSource { ctx: ctx.clone(), element }, opts, Some(r))
    })
}

/// Comparison of m_r^r(M) with e_r(M_v) for several large v.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopPolarReport {
    pub r: usize,
    pub top: u64,
    pub samples: Vec<(i64, u64)>,
    pub agrees: bool,
}

pub fn top_polar_check(m: &ModulePresentation, opts: &Options) -> Result<TopPolarReport> {
    let pv = polar_vector(m, None, opts)?;
    let r = pv.r;
    with_field!(m.algebra.base.field, |f| {
        let ctx = ModuleCtx::new(f, m, opts.budget)?;
        let mut samples = Vec::new();
        for v in (opts.vmax - 2).max(0)..=opts.vmax {
            let dims = ctx.ring.truncated_dimensions(&ctx.piece(v), opts.nmax.max(0) as u32)?;
            let fit = fit_line(&opts.policy(), opts.nmax, |n| Ok(dims[n as usize] as u64))?;
            samples.push((v, big_to_u64(&univariate_multiplicity(&fit, r as i64)?)?));
        }
        let top = pv.values[r];
        let agrees = samples.iter().all(|&(_, e)| e == top);
        Ok(TopPolarReport { r, top, samples, agrees })
    })
}

/// A general linear form y and the polar vector of M/yM at r − 1.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCut {
    pub coefficients: Vec<i64>,
    pub y: ZPoly,
    pub cut: PolarVector,
    pub reference: PolarVector,
    pub attempts: usize,
}

/// Samples y until m_{r−1}^i(M/yM) = m_r^i(M) for i < r, up to `max_resample` seeds.
pub fn general_linear_cut(m: &ModulePresentation, seed: u64, opts: &Options) -> Result<LinearCut> {
    let reference = polar_vector(m, None, opts)?;
    let r = reference.r;
    if r == 0 {
        return Err(Error::InvalidDepth);
    }
    let a = &m.algebra;
    let n = a.all_vars().len();
    for attempt in 0..opts.max_resample {
        let coefficients = general_coefficients(seed.wrapping_add(attempt as u64), a.m());
        let mut y = ZPoly::zero(n);
        for (k, c) in coefficients.iter().enumerate() {
            y = y.add(&ZPoly::var(n, a.s() + k).mul(&ZPoly::constant(n, BigInt::from(*c))));
        }
        let q = quotient_by_element(m, &y)?;
        match polar_vector(&q, Some(r - 1), opts) {
            Ok(cut) if cut.values[..] == reference.values[..r] => {
                return Ok(LinearCut { coefficients, y, cut, reference, attempts: attempt + 1 });
            }
            Ok(_) | Err(Error::Invalid(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure { attempts: opts.max_resample })
}

#[cfg(test)]
mod tests;
