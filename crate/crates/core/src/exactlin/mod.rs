//! Exact arithmetic and module computations over κ[u_1..u_s].

mod field;
mod groebner;
mod modvec;
mod monomial;
mod poly;

use std::collections::HashMap;

pub use field::{is_prime, Field, FieldDescriptor, PrimeField, Rationals};
pub use modvec::{ModVec, ModuleOrder, Term};
pub use monomial::{monomials_of_degree, monomials_up_to, Monomial, MAX_VARS};
pub use poly::BasePoly;

use crate::error::{Error, Result};

/// Default step budget for each completion-style computation.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Submodule of κ[u]^rank given by generators, optionally with a reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct BaseSubmodule<F: Field> {
    pub rank: usize,
    pub gens: Vec<ModVec<F>>,
    pub basis: Option<Vec<ModVec<F>>>,
}

impl<F: Field> BaseSubmodule<F> {
    pub fn new(rank: usize, gens: Vec<ModVec<F>>) -> Self {
        BaseSubmodule { rank, gens, basis: None }
    }

    pub fn basis(&self) -> &[ModVec<F>] {
        self.basis.as_deref().expect("Groebner basis has been computed")
    }
}

/// Finitely presented κ[u]-module: κ[u]^rank modulo the span of `relations`.
#[derive(Clone, Debug)]
pub struct PieceModule<F: Field> {
    pub rank: usize,
    pub frame: Vec<String>,
    pub relations: Vec<ModVec<F>>,
}

impl<F: Field> PieceModule<F> {
    pub fn free(rank: usize) -> Self {
        PieceModule { rank, frame: (0..rank).map(|i| format!("e{i}")).collect(), relations: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }
}

/// The ring κ[u_1..u_s] together with a field context and a step budget.
#[derive(Clone, Debug)]
pub struct BaseRing<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub budget: u64,
}

impl<F: Field> BaseRing<F> {
    pub fn new(field: F, nvars: usize, budget: u64) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} base variables are supported")));
        }
        Ok(BaseRing { field, nvars, budget })
    }

    fn check_rank(&self, rank: usize, v: &ModVec<F>) -> Result<()> {
        match v.max_pos() {
            Some(p) if p >= rank => Err(Error::RankMismatch { expected: rank, found: p + 1 }),
            _ => Ok(()),
        }
    }

    /// Reduced Gröbner basis (term-over-position degrevlex) of a submodule.
    pub fn groebner_basis(&self, sub: &BaseSubmodule<F>) -> Result<BaseSubmodule<F>> {
        for g in &sub.gens {
            self.check_rank(sub.rank, g)?;
        }
        let basis = groebner::buchberger(&self.field, ModuleOrder::Top, &sub.gens, self.budget)?;
        Ok(BaseSubmodule { rank: sub.rank, gens: basis.clone(), basis: Some(basis) })
    }

    pub fn gb(&self, rank: usize, gens: Vec<ModVec<F>>) -> Result<BaseSubmodule<F>> {
        self.groebner_basis(&BaseSubmodule::new(rank, gens))
    }

    /// Fully reduced remainder of `v` modulo a submodule carrying a basis.
    pub fn normal_form(&self, v: &ModVec<F>, sub: &BaseSubmodule<F>) -> Result<ModVec<F>> {
        self.check_rank(sub.rank, v)?;
        let basis = sub
            .basis
            .as_ref()
            .ok_or_else(|| Error::Invalid("normal_form needs a cached Groebner basis".into()))?;
        let active = vec![true; basis.len()];
        let mut steps = 0;
        groebner::reduce(&self.field, ModuleOrder::Top, v, basis, &active, &mut steps, self.budget)
    }

    pub fn contains(&self, sub: &BaseSubmodule<F>, v: &ModVec<F>) -> Result<bool> {
        Ok(self.normal_form(v, sub)?.is_zero())
    }

    pub fn contains_all(&self, sub: &BaseSubmodule<F>, vs: &[ModVec<F>]) -> Result<bool> {
        for v in vs {
            if !self.contains(sub, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kernel of κ[u]^q → κ[u]^p / span(target), e_j ↦ images[j].
    pub fn kernel_of_map(&self, images: &[ModVec<F>], target_rank: usize, target: &[ModVec<F>]) -> Result<BaseSubmodule<F>> {
        let f = &self.field;
        let p = target_rank;
        let q = images.len();
        let ord = ModuleOrder::Eliminate { split: p as u32 };
        let mut gens = Vec::with_capacity(q + target.len());
        for (j, t) in images.iter().enumerate() {
            self.check_rank(p, t)?;
            let mut raw: Vec<(Term, F::Elem)> = t.terms().to_vec();
            raw.push((Term { mono: Monomial::one(), pos: (p + j) as u32 }, f.one()));
            gens.push(ModVec::from_terms(f, ord, raw));
        }
        for k in target {
            self.check_rank(p, k)?;
            gens.push(k.resort(f, ord));
        }
        let basis = groebner::buchberger(f, ord, &gens, self.budget)?;
        let kernel: Vec<ModVec<F>> = basis
            .iter()
            .filter(|g| g.leading().is_some_and(|(t, _)| t.pos as usize >= p))
            .map(|g| g.shift_positions(-(p as i64)).resort(f, ModuleOrder::Top))
            .collect();
        let mut kernel = kernel;
        kernel.sort_by(|a, b| ModuleOrder::Top.cmp(&a.leading().unwrap().0, &b.leading().unwrap().0));
        Ok(BaseSubmodule { rank: q, gens: kernel.clone(), basis: Some(kernel) })
    }

    /// `(sub + ambient relations) : m^∞` as a submodule of the free cover.
    pub fn saturate_irrelevant(&self, sub: &BaseSubmodule<F>, ambient: &PieceModule<F>) -> Result<BaseSubmodule<F>> {
        let mut gens = sub.gens.clone();
        gens.extend(ambient.relations.iter().cloned());
        self.saturate(ambient.rank, gens)
    }

    /// `span(gens) : m^∞` inside κ[u]^rank.
    pub fn saturate(&self, rank: usize, gens: Vec<ModVec<F>>) -> Result<BaseSubmodule<F>> {
        let f = &self.field;
        if self.nvars == 0 {
            let all = (0..rank).map(|i| ModVec::unit(f, i)).collect();
            return self.gb(rank, all);
        }
        let mut cur = self.gb(rank, gens)?;
        let s = self.nvars;
        let mut rounds = 0u64;
        loop {
            rounds += 1;
            if rounds > self.budget {
                return Err(Error::BudgetExceeded { what: "saturation".into(), limit: self.budget });
            }
            let images: Vec<ModVec<F>> = (0..rank)
                .map(|a| {
                    let raw = (0..s)
                        .map(|k| (Term { mono: Monomial::var(k), pos: (k * rank + a) as u32 }, f.one()))
                        .collect();
                    ModVec::from_terms(f, ModuleOrder::Top, raw)
                })
                .collect();
            let mut target = Vec::new();
            for k in 0..s {
                for g in cur.basis() {
                    target.push(g.shift_positions((k * rank) as i64));
                }
            }
            let target: Vec<ModVec<F>> = target.into_iter().map(|v| v.resort(f, ModuleOrder::Top)).collect();
            let colon = self.kernel_of_map(&images, s * rank, &target)?;
            if self.contains_all(&cur, colon.basis())? {
                return Ok(cur);
            }
            let mut next = colon.gens.clone();
            next.extend(cur.basis().iter().cloned());
            cur = self.gb(rank, next)?;
        }
    }

    /// Presentation of `span(top) / span(bottom)`, assuming bottom ⊆ top.
    pub fn quotient_piece(&self, top: &[ModVec<F>], bottom: &BaseSubmodule<F>, rank: usize) -> Result<PieceModule<F>> {
        let bottom = if bottom.basis.is_some() { bottom.clone() } else { self.groebner_basis(bottom)? };
        let mut gens = Vec::new();
        for g in top {
            let r = self.normal_form(g, &bottom)?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
        let kernel = self.kernel_of_map(&gens, rank, bottom.basis())?;
        Ok(PieceModule {
            rank: gens.len(),
            frame: (0..gens.len()).map(|i| format!("g{i}")).collect(),
            relations: kernel.gens,
        })
    }

    /// As `quotient_piece`, but first verifies containment of `bottom` in `top`.
    pub fn quotient_piece_checked(&self, top: &[ModVec<F>], bottom: &BaseSubmodule<F>, rank: usize) -> Result<PieceModule<F>> {
        let t = self.gb(rank, top.to_vec())?;
        if !self.contains_all(&t, &bottom.gens)? {
            return Err(Error::NotContained);
        }
        self.quotient_piece(top, bottom, rank)
    }

    /// dim_κ Q/(u)^{n+1}Q.
    pub fn truncated_dimension(&self, q: &PieceModule<F>, n: u32) -> Result<usize> {
        Ok(self.truncated_dimensions(q, n)?[n as usize])
    }

    /// `dim_κ Q/(u)^{k+1}Q` for every k in 0..=nmax, from one elimination.
    pub fn truncated_dimensions(&self, q: &PieceModule<F>, nmax: u32) -> Result<Vec<usize>> {
        let f = &self.field;
        let p = q.rank;
        if p == 0 {
            return Ok(vec![0; nmax as usize + 1]);
        }
        let level = if self.nvars == 0 { 0 } else { nmax };
        let monos = monomials_up_to(self.nvars, level);
        let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let ncols = monos.len() * p;
        let col_deg = |c: usize| monos[c / p].degree();

        let mut rows: Vec<Vec<(usize, F::Elem)>> = Vec::new();
        for r in &q.relations {
            let Some(low) = r.min_degree() else { continue };
            if low > level {
                continue;
            }
            for b in monos.iter().filter(|b| b.degree() + low <= level) {
                let mut row: Vec<(usize, F::Elem)> = r
                    .terms()
                    .iter()
                    .filter_map(|(t, c)| {
                        let m = t.mono.mul(b);
                        if m.degree() > level {
                            None
                        } else {
                            Some((index[&m] * p + t.pos as usize, c.clone()))
                        }
                    })
                    .collect();
                row.sort_by_key(|e| e.0);
                rows.push(row);
            }
        }
        if rows.len() as u64 > self.budget {
            return Err(Error::BudgetExceeded { what: "Macaulay matrix".into(), limit: self.budget });
        }
        rows.sort_by_key(|r| r.first().map_or(usize::MAX, |e| e.0));

        let mut pivots: Vec<Option<Vec<(usize, F::Elem)>>> = vec![None; ncols];
        let mut steps = 0u64;
        for mut row in rows {
            while let Some((lead, c)) = row.first().cloned() {
                match &pivots[lead] {
                    Some(piv) => {
                        steps += 1;
                        if steps > self.budget {
                            return Err(Error::BudgetExceeded { what: "row reduction".into(), limit: self.budget });
                        }
                        row = sparse_axpy(f, &row, &f.neg(&c), piv);
                    }
                    None => {
                        let inv = f.inv(&c);
                        let row: Vec<(usize, F::Elem)> = row.iter().map(|(k, x)| (*k, f.mul(x, &inv))).collect();
                        pivots[lead] = Some(row);
                        break;
                    }
                }
            }
        }
        let mut per_degree = vec![0usize; level as usize + 1];
        for (c, piv) in pivots.iter().enumerate() {
            if piv.is_some() {
                per_degree[col_deg(c) as usize] += 1;
            }
        }
        let mut out = Vec::with_capacity(nmax as usize + 1);
        let mut cum = 0usize;
        let mut cum_cols = 0usize;
        for k in 0..=nmax as usize {
            if k <= level as usize {
                cum += per_degree[k];
                cum_cols += p * monomials_of_degree(self.nvars, k as u32).len();
            }
            out.push(cum_cols - cum);
        }
        Ok(out)
    }

    /// κ-dimension of Q, or `None` when Q has infinite length.
    pub fn finite_length(&self, q: &PieceModule<F>) -> Result<Option<usize>> {
        let gb = self.gb(q.rank, q.relations.clone())?;
        let mut total = 0usize;
        for pos in 0..q.rank {
            let leads: Vec<Monomial> = gb
                .basis()
                .iter()
                .filter_map(|g| g.leading().map(|(t, _)| *t))
                .filter(|t| t.pos as usize == pos)
                .map(|t| t.mono)
                .collect();
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = Vec::with_capacity(self.nvars);
            for k in 0..self.nvars {
                let pure = leads
                    .iter()
                    .filter(|m| (0..self.nvars).all(|l| l == k || m.exp(l) == 0))
                    .map(|m| m.exp(k))
                    .min();
                match pure {
                    Some(e) => bounds.push(e),
                    None => return Ok(None),
                }
            }
            total += count_standard(&leads, &bounds);
        }
        Ok(Some(total))
    }
}

fn count_standard(leads: &[Monomial], bounds: &[u32]) -> usize {
    let n = bounds.len();
    let mut cur = vec![0u32; n];
    let mut count = 0usize;
    loop {
        let m = Monomial::from_exps(&cur);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

fn sparse_axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests;
