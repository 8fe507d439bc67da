use std::cmp::Ordering;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::BasePoly;

/// A monomial times a basis vector of a free module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub mono: Monomial,
    pub pos: u32,
}

/// Module term orders. `Top` is term-over-position degrevlex with lower
/// positions larger; `Eliminate` makes every position below `split` dominate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    Top,
    Eliminate { split: u32 },
}

impl ModuleOrder {
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        if let ModuleOrder::Eliminate { split } = *self {
            let ba = a.pos < split;
            let bb = b.pos < split;
            if ba != bb {
                return ba.cmp(&bb);
            }
        }
        a.mono.cmp(&b.mono).then(b.pos.cmp(&a.pos))
    }
}

/// Sparse vector in κ[u]^p, terms sorted decreasingly under one `ModuleOrder`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModVec<F: Field> {
    terms: Vec<(Term, F::Elem)>,
}

impl<F: Field> Default for ModVec<F> {
    fn default() -> Self {
        ModVec { terms: Vec::new() }
    }
}

impl<F: Field> ModVec<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(f: &F, pos: usize) -> Self {
        Self::from_sorted(vec![(Term { mono: Monomial::one(), pos: pos as u32 }, f.one())])
    }

    pub(crate) fn from_sorted(terms: Vec<(Term, F::Elem)>) -> Self {
        ModVec { terms }
    }

    pub fn from_terms(f: &F, ord: ModuleOrder, mut raw: Vec<(Term, F::Elem)>) -> Self {
        raw.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut terms: Vec<(Term, F::Elem)> = Vec::with_capacity(raw.len());
        for (t, c) in raw {
            match terms.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = f.add(lc, &c),
                _ => terms.push((t, c)),
            }
        }
        terms.retain(|(_, c)| !f.is_zero(c));
        ModVec { terms }
    }

    pub fn from_dense(f: &F, ord: ModuleOrder, entries: &[BasePoly<F>]) -> Self {
        let mut raw = Vec::new();
        for (pos, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                raw.push((Term { mono: *m, pos: pos as u32 }, c.clone()));
            }
        }
        Self::from_terms(f, ord, raw)
    }

    pub fn to_dense(&self, f: &F, rank: usize) -> Vec<BasePoly<F>> {
        let mut raw: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
        for (t, c) in &self.terms {
            raw[t.pos as usize].push((t.mono, c.clone()));
        }
        raw.into_iter().map(|r| BasePoly::from_terms(f, r)).collect()
    }

    pub fn terms(&self) -> &[(Term, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Term, F::Elem)> {
        self.terms.first()
    }

    pub fn max_pos(&self) -> Option<usize> {
        self.terms.iter().map(|(t, _)| t.pos as usize).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(t, _)| t.mono.degree()).min()
    }

    pub fn resort(&self, f: &F, ord: ModuleOrder) -> Self {
        Self::from_terms(f, ord, self.terms.clone())
    }

    /// Adds `delta` to every position (keeps the order for `Top`).
    pub fn shift_positions(&self, delta: i64) -> Self {
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (Term { mono: t.mono, pos: (t.pos as i64 + delta) as u32 }, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        ModVec { terms: self.terms.iter().map(|(t, a)| (*t, f.mul(a, c))).collect() }
    }

    pub fn make_monic(&self, f: &F) -> Self {
        match self.leading() {
            Some((_, c)) if !f.is_one(c) => self.scale(f, &f.inv(c)),
            _ => self.clone(),
        }
    }

    /// Multiplies by `c * m`; monomial orders are multiplicative so the order is kept.
    pub fn mul_term(&self, f: &F, m: &Monomial, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (Term { mono: t.mono.mul(m), pos: t.pos }, f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &F, ord: ModuleOrder, p: &BasePoly<F>) -> Self {
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            acc = acc.add(f, ord, &self.mul_term(f, m, c));
        }
        acc
    }

    pub fn add(&self, f: &F, ord: ModuleOrder, o: &Self) -> Self {
        self.axpy(f, ord, &f.one(), &Monomial::one(), o)
    }

    pub fn sub(&self, f: &F, ord: ModuleOrder, o: &Self) -> Self {
        self.axpy(f, ord, &f.neg(&f.one()), &Monomial::one(), o)
    }

    /// `self + c * m * o`
    pub fn axpy(&self, f: &F, ord: ModuleOrder, c: &F::Elem, m: &Monomial, o: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |j: usize| Term { mono: o.terms[j].0.mono.mul(m), pos: o.terms[j].0.pos };
        while i < self.terms.len() || j < o.terms.len() {
            let cmp = if i >= self.terms.len() {
                Ordering::Less
            } else if j >= o.terms.len() {
                Ordering::Greater
            } else {
                ord.cmp(&self.terms[i].0, &shifted(j))
            };
            match cmp {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted(j), f.mul(c, &o.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(&self.terms[i].1, &f.mul(c, &o.terms[j].1));
                    if !f.is_zero(&v) {
                        out.push((self.terms[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModVec { terms: out }
    }

    /// Drops terms of u-degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        ModVec {
            terms: self.terms.iter().filter(|(t, _)| t.mono.degree() <= d).cloned().collect(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Term, F::Elem)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rationals;

    #[test]
    fn top_prefers_monomial_then_low_position() {
        let o = ModuleOrder::Top;
        let a = Term { mono: Monomial::var(0), pos: 1 };
        let b = Term { mono: Monomial::one(), pos: 0 };
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        let c = Term { mono: Monomial::var(0), pos: 0 };
        assert_eq!(o.cmp(&c, &a), Ordering::Greater);
        let e = ModuleOrder::Eliminate { split: 1 };
        assert_eq!(e.cmp(&b, &a), Ordering::Greater);
    }

    #[test]
    fn axpy_cancels() {
        let f = Rationals;
        let o = ModuleOrder::Top;
        let v = ModVec::<Rationals>::unit(&f, 0).mul_term(&f, &Monomial::var(0), &f.one());
        let w = ModVec::unit(&f, 0);
        let z = v.axpy(&f, o, &f.from_i64(-1), &Monomial::var(0), &w);
        assert!(z.is_zero());
    }
}
