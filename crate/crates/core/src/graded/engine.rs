//! Degreewise realization of graded objects as κ[u]-modules.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::parse::ZPoly;
use super::presentation::{AlgebraPresentation, ModulePresentation};
use crate::error::{Error, Result};
use crate::exactlin::{
    monomials_of_degree, BasePoly, BaseRing, BaseSubmodule, Field, ModVec, ModuleOrder, Monomial, PieceModule, Term,
};

/// Homogeneous element of B: x-monomial ↦ u-coefficient.
#[derive(Clone, Debug)]
pub struct GElem<F: Field> {
    pub degree: i64,
    pub terms: BTreeMap<Monomial, BasePoly<F>>,
}

/// Converts an integer polynomial over (u, x) into x-monomial ↦ u-polynomial form.
pub fn split_poly<F: Field>(f: &F, p: &ZPoly, s: usize, m: usize) -> BTreeMap<Monomial, BasePoly<F>> {
    let mut raw: BTreeMap<Monomial, Vec<(Monomial, F::Elem)>> = BTreeMap::new();
    for (e, c) in &p.terms {
        let u = Monomial::from_exps(&e[..s]);
        let x = Monomial::from_exps(&e[s..s + m]);
        raw.entry(x).or_default().push((u, f.from_bigint(c)));
    }
    raw.into_iter()
        .map(|(x, t)| (x, BasePoly::from_terms(f, t)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

impl<F: Field> GElem<F> {
    pub fn from_zpoly(f: &F, p: &ZPoly, s: usize, m: usize) -> Self {
        let terms = split_poly(f, p, s, m);
        let degree = terms.keys().next().map_or(0, |x| x.degree() as i64);
        GElem { degree, terms }
    }
}

/// Ordered basis of F_v: pairs (generator, x-monomial of degree v − d_i).
#[derive(Debug)]
pub struct Frame {
    pub entries: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn position(&self, gen: usize, x: &Monomial) -> Option<usize> {
        self.index.get(&(gen, *x)).copied()
    }
}

/// Submodule piece: generators outside the relations plus a basis of (gens + Rel_v).
#[derive(Clone, Debug)]
pub struct SpanPiece<F: Field> {
    pub gens: Vec<ModVec<F>>,
    pub sub: BaseSubmodule<F>,
}

/// A graded module M = ⊕ S(−d_i)/columns over S = κ[u][x]/I, realized degreewise.
pub struct ModuleCtx<F: Field> {
    pub ring: BaseRing<F>,
    pub s: usize,
    pub nx: usize,
    pub shifts: Vec<i64>,
    columns: Vec<(i64, Vec<(usize, GElem<F>)>)>,
    alg_rels: Vec<GElem<F>>,
    names: Vec<String>,
    frames: Mutex<HashMap<i64, Arc<Frame>>>,
    rel_gbs: Mutex<HashMap<i64, Arc<BaseSubmodule<F>>>>,
}

impl<F: Field> ModuleCtx<F> {
    pub fn new(field: F, m: &ModulePresentation, budget: u64) -> Result<Self> {
        let a = &m.algebra;
        let (s, nx) = (a.s(), a.m());
        let ring = BaseRing::new(field, s, budget)?;
        let f = &ring.field;
        let columns = m
            .columns
            .iter()
            .map(|c| {
                let entries = c
                    .entries
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(i, e)| (i, GElem::from_zpoly(f, e, s, nx)))
                    .collect();
                (c.degree, entries)
            })
            .collect();
        let alg_rels = a.relations.iter().map(|r| GElem::from_zpoly(f, r, s, nx)).collect();
        Ok(ModuleCtx {
            ring,
            s,
            nx,
            shifts: m.shifts.clone(),
            columns,
            alg_rels,
            names: a.poly_vars.clone(),
            frames: Mutex::new(HashMap::new()),
            rel_gbs: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(field: F, a: &AlgebraPresentation, budget: u64) -> Result<Self> {
        Self::new(field, &ModulePresentation::free_algebra(a.clone()), budget)
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn min_shift(&self) -> i64 {
        *self.shifts.iter().min().expect("nonempty")
    }

    pub fn gelem(&self, p: &ZPoly) -> GElem<F> {
        GElem::from_zpoly(self.field(), p, self.s, self.nx)
    }

    pub fn frame(&self, v: i64) -> Arc<Frame> {
        if let Some(fr) = self.frames.lock().expect("lock").get(&v) {
            return fr.clone();
        }
        let mut entries = Vec::new();
        for (i, &d) in self.shifts.iter().enumerate() {
            if v - d >= 0 {
                for x in monomials_of_degree(self.nx, (v - d) as u32) {
                    entries.push((i, x));
                }
            }
        }
        let index = entries.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        let fr = Arc::new(Frame { entries, index });
        self.frames.lock().expect("lock").insert(v, fr.clone());
        fr
    }

    pub fn frame_labels(&self, v: i64) -> Vec<String> {
        self.frame(v)
            .entries
            .iter()
            .map(|(i, x)| format!("e{}*{}", i + 1, x.render(&self.names)))
            .collect()
    }

    /// `c * x^a * elem * e_gen` as a vector in F_v, where v is the resulting degree.
    fn place(
        &self,
        out: &mut Vec<(Term, F::Elem)>,
        frame: &Frame,
        gen: usize,
        shift: &Monomial,
        u: &Monomial,
        c: &F::Elem,
        elem: &GElem<F>,
    ) {
        let f = self.field();
        for (x, poly) in &elem.terms {
            let pos = frame.position(gen, &x.mul(shift)).expect("degree bookkeeping");
            for (um, pc) in poly.terms() {
                out.push((Term { mono: um.mul(u), pos: pos as u32 }, f.mul(pc, c)));
            }
        }
    }

    /// Relations of M_v: monomial multiples of columns and of algebra relations.
    pub fn relations(&self, v: i64) -> Vec<ModVec<F>> {
        let f = self.field();
        let frame = self.frame(v);
        let mut out = Vec::new();
        for (deg, entries) in &self.columns {
            if v < *deg {
                continue;
            }
            for c in monomials_of_degree(self.nx, (v - deg) as u32) {
                let mut raw = Vec::new();
                for (i, e) in entries {
                    self.place(&mut raw, &frame, *i, &c, &Monomial::one(), &f.one(), e);
                }
                let r = ModVec::from_terms(f, ModuleOrder::Top, raw);
                if !r.is_zero() {
                    out.push(r);
                }
            }
        }
        for rel in &self.alg_rels {
            for (i, &d) in self.shifts.iter().enumerate() {
                let free = v - d - rel.degree;
                if free < 0 {
                    continue;
                }
                for c in monomials_of_degree(self.nx, free as u32) {
                    let mut raw = Vec::new();
                    self.place(&mut raw, &frame, i, &c, &Monomial::one(), &f.one(), rel);
                    let r = ModVec::from_terms(f, ModuleOrder::Top, raw);
                    if !r.is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    pub fn rel_gb(&self, v: i64) -> Result<Arc<BaseSubmodule<F>>> {
        if let Some(g) = self.rel_gbs.lock().expect("lock").get(&v) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.ring.gb(self.frame(v).len(), self.relations(v))?);
        self.rel_gbs.lock().expect("lock").insert(v, g.clone());
        Ok(g)
    }

    /// M_v as a κ[u]-module.
    pub fn piece(&self, v: i64) -> PieceModule<F> {
        PieceModule { rank: self.frame(v).len(), frame: self.frame_labels(v), relations: self.relations(v) }
    }

    /// Multiplies a vector of F_v by a homogeneous element.
    pub fn multiply(&self, elem: &GElem<F>, vec: &ModVec<F>, v: i64) -> ModVec<F> {
        let f = self.field();
        let src = self.frame(v);
        let dst = self.frame(v + elem.degree);
        let mut raw = Vec::new();
        for (t, c) in vec.terms() {
            let (gen, x) = src.entries[t.pos as usize];
            self.place(&mut raw, &dst, gen, &x, &t.mono, c, elem);
        }
        ModVec::from_terms(f, ModuleOrder::Top, raw)
    }

    /// The element `Σ_i entries[i] e_i` of degree v as a vector of F_v.
    pub fn vector(&self, entries: &[ZPoly], v: i64) -> Result<ModVec<F>> {
        let f = self.field();
        let frame = self.frame(v);
        let mut raw = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let g = self.gelem(e);
            if g.degree + self.shifts[i] != v {
                return Err(Error::Invalid("element degree does not match".into()));
            }
            self.place(&mut raw, &frame, i, &Monomial::one(), &Monomial::one(), &f.one(), &g);
        }
        Ok(ModVec::from_terms(f, ModuleOrder::Top, raw))
    }

    /// Span piece from raw generators of degree v.
    pub fn finish_span(&self, v: i64, gens: Vec<ModVec<F>>) -> Result<SpanPiece<F>> {
        let rel = self.rel_gb(v)?;
        let rank = self.frame(v).len();
        if gens.iter().all(|g| g.is_zero()) {
            return Ok(SpanPiece { gens: Vec::new(), sub: (*rel).clone() });
        }
        let mut all = gens;
        all.extend(rel.basis().iter().cloned());
        let sub = self.ring.gb(rank, all)?;
        let mut kept = Vec::new();
        for g in sub.basis() {
            if !self.ring.contains(&rel, g)? {
                kept.push(g.clone());
            }
        }
        Ok(SpanPiece { gens: kept, sub })
    }

    /// Presentation of top/bottom for pieces of F_v.
    pub fn quotient(&self, v: i64, top: &[ModVec<F>], bottom: &BaseSubmodule<F>) -> Result<PieceModule<F>> {
        if top.is_empty() {
            return Ok(PieceModule::zero());
        }
        self.ring.quotient_piece(top, bottom, self.frame(v).len())
    }

    /// Degree-v piece of H⁰_m(M).
    pub fn torsion_piece(&self, v: i64) -> Result<PieceModule<F>> {
        let rank = self.frame(v).len();
        if rank == 0 {
            return Ok(PieceModule::zero());
        }
        let sat = self.ring.saturate(rank, self.relations(v))?;
        self.quotient(v, &sat.gens, &*self.rel_gb(v)?)
    }

    /// Degree-v piece of (0 :_M b).
    pub fn colon_piece(&self, b: &GElem<F>, v: i64) -> Result<PieceModule<F>> {
        let rank = self.frame(v).len();
        if rank == 0 {
            return Ok(PieceModule::zero());
        }
        let f = self.field();
        let w = v + b.degree;
        let images: Vec<ModVec<F>> = (0..rank).map(|a| self.multiply(b, &ModVec::unit(f, a), v)).collect();
        let target = self.rel_gb(w)?;
        let k = self.ring.kernel_of_map(&images, self.frame(w).len(), target.basis())?;
        self.quotient(v, &k.gens, &*self.rel_gb(v)?)
    }
}

/// How a graded submodule is generated.
pub enum SpanKind<F: Field> {
    /// The whole module M.
    Whole,
    /// Closure of seed elements (degree, vector) under multiplication by `mults`.
    Closure { seeds: Vec<(i64, ModVec<F>)>, mults: Vec<GElem<F>> },
    /// `mults · inner`, raising degree by one.
    Product { inner: Arc<Span<F>>, mults: Vec<GElem<F>> },
}

/// A graded κ[u]-submodule of M with memoized pieces.
pub struct Span<F: Field> {
    pub ctx: Arc<ModuleCtx<F>>,
    pub kind: SpanKind<F>,
    pub min_degree: i64,
    memo: Mutex<HashMap<i64, Arc<SpanPiece<F>>>>,
}

impl<F: Field> Span<F> {
    pub fn new(ctx: Arc<ModuleCtx<F>>, kind: SpanKind<F>) -> Arc<Self> {
        let min_degree = match &kind {
            SpanKind::Whole => ctx.min_shift(),
            SpanKind::Closure { seeds, .. } => seeds.iter().map(|s| s.0).min().unwrap_or(i64::MAX / 4),
            SpanKind::Product { inner, .. } => inner.min_degree + 1,
        };
        Arc::new(Span { ctx, kind, min_degree, memo: Mutex::new(HashMap::new()) })
    }

    pub fn whole(ctx: Arc<ModuleCtx<F>>) -> Arc<Self> {
        Self::new(ctx, SpanKind::Whole)
    }

    /// Subalgebra-type span: closure of the unit in degree 0 under `mults`.
    pub fn generated_algebra(ctx: Arc<ModuleCtx<F>>, mults: Vec<GElem<F>>) -> Arc<Self> {
        let unit = ModVec::unit(ctx.field(), 0);
        Self::new(ctx, SpanKind::Closure { seeds: vec![(0, unit)], mults })
    }

    pub fn product(inner: Arc<Span<F>>, mults: Vec<GElem<F>>) -> Arc<Self> {
        let ctx = inner.ctx.clone();
        Self::new(ctx, SpanKind::Product { inner, mults })
    }

    pub fn piece(&self, v: i64) -> Result<Arc<SpanPiece<F>>> {
        if let Some(p) = self.memo.lock().expect("lock").get(&v) {
            return Ok(p.clone());
        }
        let ctx = &self.ctx;
        let p = if v < self.min_degree {
            SpanPiece { gens: Vec::new(), sub: (*ctx.rel_gb(v)?).clone() }
        } else {
            match &self.kind {
                SpanKind::Whole => {
                    let f = ctx.field();
                    let gens: Vec<ModVec<F>> = (0..ctx.frame(v).len()).map(|a| ModVec::unit(f, a)).collect();
                    ctx.finish_span(v, gens)?
                }
                SpanKind::Closure { seeds, mults } => {
                    let mut gens: Vec<ModVec<F>> =
                        seeds.iter().filter(|(d, _)| *d == v).map(|(_, g)| g.clone()).collect();
                    if v > self.min_degree {
                        let prev = self.piece(v - 1)?;
                        for g in &prev.gens {
                            for l in mults {
                                gens.push(ctx.multiply(l, g, v - 1));
                            }
                        }
                    }
                    ctx.finish_span(v, gens)?
                }
                SpanKind::Product { inner, mults } => {
                    let prev = inner.piece(v - 1)?;
                    let mut gens = Vec::new();
                    for g in &prev.gens {
                        for l in mults {
                            gens.push(ctx.multiply(l, g, v - 1));
                        }
                    }
                    ctx.finish_span(v, gens)?
                }
            }
        };
        let p = Arc::new(p);
        self.memo.lock().expect("lock").insert(v, p.clone());
        Ok(p)
    }

    /// The submodule piece as a module in its own right.
    pub fn module_piece(&self, v: i64) -> Result<PieceModule<F>> {
        let p = self.piece(v)?;
        self.ctx.quotient(v, &p.gens, &*self.ctx.rel_gb(v)?)
    }
}

/// Descending filtration base ⊇ A·base ⊇ A²·base ⊇ …
pub struct Filtration<F: Field> {
    pub base: Arc<Span<F>>,
    pub mults: Vec<GElem<F>>,
    levels: Mutex<Vec<Arc<Span<F>>>>,
}

impl<F: Field> Filtration<F> {
    pub fn new(base: Arc<Span<F>>, mults: Vec<GElem<F>>) -> Self {
        Filtration { levels: Mutex::new(vec![base.clone()]), base, mults }
    }

    pub fn level(&self, k: usize) -> Arc<Span<F>> {
        let mut levels = self.levels.lock().expect("lock");
        while levels.len() <= k {
            let next = Span::product(levels.last().expect("nonempty").clone(), self.mults.clone());
            levels.push(next);
        }
        levels[k].clone()
    }

    /// k-th graded summand in degree v: level(k)_v / level(k+1)_v.
    pub fn summand(&self, k: usize, v: i64) -> Result<PieceModule<F>> {
        let top = self.level(k).piece(v)?;
        if top.gens.is_empty() {
            return Ok(PieceModule::zero());
        }
        let bottom = self.level(k + 1).piece(v)?;
        self.base.ctx.quotient(v, &top.gens, &bottom.sub)
    }
}
