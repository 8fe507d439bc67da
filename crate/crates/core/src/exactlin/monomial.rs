use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables in any monomial.
pub const MAX_VARS: usize = 8;

/// Exponent vector, compared in graded reverse lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for (slot, &x) in m.exps.iter_mut().zip(e) {
            *slot = u16::try_from(x).expect("exponent overflow");
        }
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut m = *o;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        m
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(o.exps.iter()) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != o.exps[i] {
                return o.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// All monomials of total degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, d, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(Monomial::from_exps(cur));
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
}

/// All monomials of degree at most `d`, ascending by degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in 0..=d {
        let mut layer = monomials_of_degree(n, k);
        layer.reverse();
        out.extend(layer);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_order() {
        let x = Monomial::from_exps(&[1, 0, 0]);
        let y = Monomial::from_exps(&[0, 1, 0]);
        let z = Monomial::from_exps(&[0, 0, 1]);
        assert!(x > y && y > z);
        let xz = Monomial::from_exps(&[1, 0, 1]);
        let y2 = Monomial::from_exps(&[0, 2, 0]);
        assert!(y2 > xz);
        assert!(Monomial::from_exps(&[0, 0, 2]) > x);
    }

    #[test]
    fn counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert!(monomials_of_degree(0, 1).is_empty());
    }
}
