use super::field::Field;
use super::monomial::Monomial;

/// Polynomial in κ[u_1..u_s]; terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePoly<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Default for BasePoly<F> {
    fn default() -> Self {
        BasePoly { terms: Vec::new() }
    }
}

impl<F: Field> BasePoly<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(f: &F, c: F::Elem) -> Self {
        Self::term(f, Monomial::one(), c)
    }

    pub fn term(f: &F, m: Monomial, c: F::Elem) -> Self {
        if f.is_zero(&c) {
            Self::zero()
        } else {
            BasePoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a canonical polynomial from arbitrary terms.
    pub fn from_terms(f: &F, mut raw: Vec<(Monomial, F::Elem)>) -> Self {
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, F::Elem)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(lc, &c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !f.is_zero(c));
        BasePoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree (m-adic order), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn add(&self, f: &F, o: &Self) -> Self {
        self.combine(f, o, false)
    }

    pub fn sub(&self, f: &F, o: &Self) -> Self {
        self.combine(f, o, true)
    }

    fn combine(&self, f: &F, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &o.terms[j];
                    out.push((*m, if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        f.sub(&self.terms[i].1, &o.terms[j].1)
                    } else {
                        f.add(&self.terms[i].1, &o.terms[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        BasePoly { terms: out }
    }

    pub fn neg(&self, f: &F) -> Self {
        BasePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        BasePoly {
            terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, f: &F, m: &Monomial, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        BasePoly {
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), f.mul(x, c))).collect(),
        }
    }

    pub fn mul(&self, f: &F, o: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                raw.push((a.mul(b), f.mul(x, y)));
            }
        }
        Self::from_terms(f, raw)
    }

    /// Drops all terms of degree greater than `d`.
    pub fn truncate(&self, d: u32) -> Self {
        BasePoly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).cloned().collect(),
        }
    }

    pub fn render(&self, f: &F, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    f.fmt_elem(c)
                } else if f.is_one(c) {
                    m.render(names)
                } else {
                    format!("({})*{}", f.fmt_elem(c), m.render(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rationals;

    fn p(terms: &[(&[u32], i64)]) -> BasePoly<Rationals> {
        let f = Rationals;
        BasePoly::from_terms(&f, terms.iter().map(|(e, c)| (Monomial::from_exps(e), f.from_i64(*c))).collect())
    }

    #[test]
    fn arithmetic() {
        let f = Rationals;
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = a.mul(&f, &b);
        assert_eq!(prod, p(&[(&[2, 0], 1), (&[0, 2], -1)]));
        assert!(a.sub(&f, &a).is_zero());
        assert_eq!(a.add(&f, &b), p(&[(&[1, 0], 2)]));
        assert_eq!(prod.order(), Some(2));
    }
}
