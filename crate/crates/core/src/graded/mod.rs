//! Presentations of algebras, modules, subalgebras and module pairs, and
//! extraction of their graded pieces as κ[u]-modules.

mod engine;
mod parse;
mod presentation;

use std::sync::Arc;

pub use engine::{split_poly, Filtration, Frame, GElem, ModuleCtx, Span, SpanKind, SpanPiece};
pub use parse::{parse_poly, ZPoly};
pub use presentation::{
    rees_algebra, AlgebraPresentation, BasePresentation, Column, GradedAlgebra, ModulePairSpec, ModulePresentation,
    SubalgebraSpec, Which,
};

use crate::error::{Error, Result};
use crate::exactlin::{BaseRing, BaseSubmodule, Field, PieceModule, DEFAULT_BUDGET};

/// Anything whose degree-v piece is a finite direct sum of κ[u]-modules.
pub trait PieceSource<F: Field>: Send + Sync {
    fn summands(&self, v: i64) -> Result<Vec<PieceModule<F>>>;
}

/// M_v itself.
pub struct ModuleSource<F: Field>(pub Arc<ModuleCtx<F>>);

impl<F: Field> PieceSource<F> for ModuleSource<F> {
    fn summands(&self, v: i64) -> Result<Vec<PieceModule<F>>> {
        Ok(vec![self.0.piece(v)])
    }
}

/// A graded submodule (or image subalgebra) viewed as a module.
pub struct SpanSource<F: Field>(pub Arc<Span<F>>);

impl<F: Field> PieceSource<F> for SpanSource<F> {
    fn summands(&self, v: i64) -> Result<Vec<PieceModule<F>>> {
        Ok(vec![self.0.module_piece(v)?])
    }
}

/// Associated graded module of a filtration, optionally truncated to the
/// summands k ≥ v − min_degree − t + 1.
pub struct GradedSource<F: Field> {
    pub filtration: Arc<Filtration<F>>,
    pub truncate: Option<usize>,
}

impl<F: Field> PieceSource<F> for GradedSource<F> {
    fn summands(&self, v: i64) -> Result<Vec<PieceModule<F>>> {
        let top = v - self.filtration.base.min_degree;
        if top < 0 {
            return Ok(Vec::new());
        }
        let low = match self.truncate {
            Some(t) => (top - t as i64 + 1).max(0),
            None => 0,
        };
        (low..=top).map(|k| self.filtration.summand(k as usize, v)).collect()
    }
}

/// H⁰_m(M).
pub struct TorsionSource<F: Field>(pub Arc<ModuleCtx<F>>);

impl<F: Field> PieceSource<F> for TorsionSource<F> {
    fn summands(&self, v: i64) -> Result<Vec<PieceModule<F>>> {
        Ok(vec![self.0.torsion_piece(v)?])
    }
}

/// (0 :_M b).
pub struct ColonSource<F: Field> {
    pub ctx: Arc<ModuleCtx<F>>,
    pub element: GElem<F>,
}

impl<F: Field> PieceSource<F> for ColonSource<F> {
    fn summands(&self, v: i64) -> Result<Vec<PieceModule<F>>> {
        Ok(vec![self.ctx.colon_piece(&self.element, v)?])
    }
}

/// B_v with frame the x-monomials of degree v.
pub fn algebra_piece<F: Field>(f: &F, b: &AlgebraPresentation, v: i64) -> Result<PieceModule<F>> {
    Ok(ModuleCtx::algebra(f.clone(), b, DEFAULT_BUDGET)?.piece(v))
}

/// M_v.
pub fn module_piece<F: Field>(f: &F, m: &ModulePresentation, v: i64) -> Result<PieceModule<F>> {
    Ok(ModuleCtx::new(f.clone(), m, DEFAULT_BUDGET)?.piece(v))
}

/// A_k B_{v−k} inside B_v (including the relations of B_v).
pub fn power_piece<F: Field>(f: &F, b: &AlgebraPresentation, a: &SubalgebraSpec, k: usize, v: i64) -> Result<BaseSubmodule<F>> {
    if k as i64 > v {
        return Err(Error::Invalid("power_piece needs k <= v".into()));
    }
    let ctx = Arc::new(ModuleCtx::algebra(f.clone(), b, DEFAULT_BUDGET)?);
    let mults = a.gens.iter().map(|g| ctx.gelem(g)).collect();
    let filt = Filtration::new(Span::whole(ctx), mults);
    Ok(filt.level(k).piece(v)?.sub.clone())
}

/// (top + Rel)/(bottom + Rel) for submodules of the free cover of `ambient`.
pub fn quotient_piece<F: Field>(
    f: &F,
    s: usize,
    top: &BaseSubmodule<F>,
    bottom: &BaseSubmodule<F>,
    ambient: &PieceModule<F>,
) -> Result<PieceModule<F>> {
    let ring = BaseRing::new(f.clone(), s, DEFAULT_BUDGET)?;
    let mut t = top.gens.clone();
    t.extend(ambient.relations.iter().cloned());
    let mut b = bottom.gens.clone();
    b.extend(ambient.relations.iter().cloned());
    let bottom = ring.gb(ambient.rank, b)?;
    ring.quotient_piece_checked(&t, &bottom, ambient.rank)
}

/// M/bM for an x-homogeneous b.
pub fn quotient_by_element(m: &ModulePresentation, b: &ZPoly) -> Result<ModulePresentation> {
    let mut out = m.clone();
    let n = m.algebra.all_vars().len();
    for i in 0..m.rank() {
        let mut col: Vec<ZPoly> = (0..m.rank()).map(|_| ZPoly::zero(n)).collect();
        col[i] = b.clone();
        out.push_column(col, "quotient element")?;
    }
    Ok(out)
}

/// M/M' for M' generated by the given elements (vectors of entries).
pub fn quotient_by_elements(m: &ModulePresentation, elems: &[Vec<ZPoly>]) -> Result<ModulePresentation> {
    let mut out = m.clone();
    for e in elems {
        out.push_column(e.clone(), "quotient element")?;
    }
    Ok(out)
}

/// (0 :_M b)_v.
pub fn colon_element_piece<F: Field>(f: &F, m: &ModulePresentation, b: &ZPoly, v: i64) -> Result<PieceModule<F>> {
    let ctx = ModuleCtx::new(f.clone(), m, DEFAULT_BUDGET)?;
    let g = ctx.gelem(b);
    ctx.colon_piece(&g, v)
}

/// H⁰_m(M)_v.
pub fn torsion_piece<F: Field>(f: &F, m: &ModulePresentation, v: i64) -> Result<PieceModule<F>> {
    ModuleCtx::new(f.clone(), m, DEFAULT_BUDGET)?.torsion_piece(v)
}
