//! Bivariate Hilbert functions H(v,n) = dim M_v/m^{n+1}M_v, exact fits in the
//! binomial basis, and extraction of normalized mixed coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{BaseRing, Field};
use crate::graded::PieceSource;

/// Grid placement: fit block of size wv × wn at (v0, n0), plus a margin band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub v0: i64,
    pub n0: i64,
    pub wv: usize,
    pub wn: usize,
    pub margin: usize,
}

impl Window {
    pub fn v_end(&self) -> i64 {
        self.v0 + (self.wv + self.margin) as i64
    }
    pub fn n_end(&self) -> i64 {
        self.n0 + (self.wn + self.margin) as i64
    }
}

/// Caps and shape used when searching for a stable window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPolicy {
    pub start: i64,
    pub width: usize,
    pub margin: usize,
    pub vmax: i64,
    pub nmax: i64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy { start: 4, width: 8, margin: 3, vmax: 12, nmax: 12 }
    }
}

impl WindowPolicy {
    fn width_for(&self, origin: i64, cap: i64) -> usize {
        let w = cap - self.margin as i64 - origin + 1;
        w.clamp(0, self.width as i64) as usize
    }

    /// Successive candidate windows. Each axis origin doubles independently
    /// until its cap is hit; pairs are tried in order of the larger origin.
    pub fn windows(&self) -> Vec<Window> {
        let vs = self.line_windows(self.vmax);
        let ns = self.line_windows(self.nmax);
        let mut out: Vec<Window> = vs
            .iter()
            .flat_map(|&(v0, wv)| ns.iter().map(move |&(n0, wn)| Window { v0, n0, wv, wn, margin: self.margin }))
            .collect();
        out.sort_by_key(|w| (w.v0.max(w.n0), w.v0 + w.n0, w.n0));
        out
    }

    /// Univariate windows along one axis with the given cap.
    pub fn line_windows(&self, cap: i64) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut o = self.start.max(0);
        loop {
            let w = self.width_for(o, cap);
            if w < 2 {
                break;
            }
            out.push((o, w));
            o = if o == 0 { 1 } else { o * 2 };
        }
        out
    }

    pub fn unstable(&self) -> Error {
        Error::Unstable { suggested_vmax: self.vmax * 2, suggested_nmax: self.nmax * 2 }
    }
}

/// H(v,n) on a window (fit block plus margin).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub window: Window,
    /// `grid[a][b] = H(v0 + a, n0 + b)`.
    pub grid: Vec<Vec<u64>>,
}

impl HilbertTable {
    pub fn get(&self, v: i64, n: i64) -> u64 {
        self.grid[(v - self.window.v0) as usize][(n - self.window.n0) as usize]
    }

    pub fn cells(&self) -> usize {
        self.grid.iter().map(|r| r.len()).sum()
    }
}

/// Fills the grid; pieces are extracted in order and eliminations run in parallel.
pub fn hilbert_table<F: Field>(ring: &BaseRing<F>, source: &dyn PieceSource<F>, window: Window) -> Result<HilbertTable> {
    let nlast = (window.n_end() - 1).max(0) as u32;
    let mut jobs = Vec::new();
    for (a, v) in (window.v0..window.v_end()).enumerate() {
        for q in source.summands(v)? {
            jobs.push((a, q));
        }
    }
    let dims: Vec<(usize, Vec<usize>)> = jobs
        .par_iter()
        .map(|(a, q)| ring.truncated_dimensions(q, nlast).map(|d| (*a, d)))
        .collect::<Result<_>>()?;
    let rows = window.wv + window.margin;
    let cols = window.wn + window.margin;
    let mut grid = vec![vec![0u64; cols]; rows];
    for (a, d) in dims {
        for (b, cell) in grid[a].iter_mut().enumerate() {
            *cell += d[(window.n0 as usize) + b] as u64;
        }
    }
    for row in &grid {
        if row.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::Inconsistent("Hilbert function decreased in n".into()));
        }
    }
    Ok(HilbertTable { window, grid })
}

fn binom_int(a: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= a - BigInt::from(t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

/// Forward differences Δ^0..Δ^{len−1} at the first point of `vals`.
fn newton(vals: &[BigInt]) -> Vec<BigInt> {
    let mut cur = vals.to_vec();
    let mut out = Vec::with_capacity(vals.len());
    while !cur.is_empty() {
        out.push(cur[0].clone());
        cur = cur.windows(2).map(|p| &p[1] - &p[0]).collect();
    }
    out
}

/// Exact interpolant Σ c_ij C(v−v0,i) C(n−n0,j) of a Hilbert table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateFit {
    /// Total degree, −1 for the zero polynomial.
    pub degree: i64,
    pub coeffs: Vec<Vec<BigInt>>,
    pub window: Window,
    pub margin_verified: bool,
}

impl BivariateFit {
    pub fn eval(&self, v: i64, n: i64) -> BigInt {
        let (dv, dn) = (BigInt::from(v - self.window.v0), BigInt::from(n - self.window.n0));
        let mut acc = BigInt::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc += c * binom_int(&dv, i) * binom_int(&dn, j);
                }
            }
        }
        acc
    }

    /// Coefficients of v^i n^j.
    pub fn monomial_coefficients(&self) -> BTreeMap<(usize, usize), BigRational> {
        let shift_poly = |origin: i64, k: usize| -> Vec<BigRational> {
            // C(t − origin, k) as a polynomial in t.
            let mut p = vec![BigRational::one()];
            for step in 0..k {
                let c = BigRational::from_integer(BigInt::from(-origin - step as i64));
                let mut q = vec![BigRational::zero(); p.len() + 1];
                for (d, a) in p.iter().enumerate() {
                    q[d + 1] += a;
                    q[d] += a * &c;
                }
                p = q;
            }
            let f = BigRational::from_integer(factorial(k));
            p.into_iter().map(|a| a / &f).collect()
        };
        let mut out: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let pv = shift_poly(self.window.v0, i);
                let pn = shift_poly(self.window.n0, j);
                for (a, x) in pv.iter().enumerate() {
                    for (b, y) in pn.iter().enumerate() {
                        let term = x * y * BigRational::from_integer(c.clone());
                        *out.entry((a, b)).or_insert_with(BigRational::zero) += term;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Fits the table exactly; Unstable unless each axis shows a vanishing
/// difference inside the block and the margin band is reproduced.
pub fn fit_bivariate(t: &HilbertTable, max_degree: Option<i64>) -> Result<BivariateFit> {
    let w = t.window;
    let block: Vec<Vec<BigInt>> =
        (0..w.wv).map(|a| (0..w.wn).map(|b| BigInt::from(t.grid[a][b])).collect()).collect();
    let along_n: Vec<Vec<BigInt>> = block.iter().map(|r| newton(r)).collect();
    let mut coeffs = vec![vec![BigInt::zero(); w.wn]; w.wv];
    for j in 0..w.wn {
        let col: Vec<BigInt> = along_n.iter().map(|r| r[j].clone()).collect();
        for (i, c) in newton(&col).into_iter().enumerate() {
            coeffs[i][j] = c;
        }
    }
    let unstable = || Error::Unstable {
        suggested_vmax: (w.v_end() - 1) * 2,
        suggested_nmax: (w.n_end() - 1) * 2,
    };
    let mut degree = -1i64;
    for (i, row) in coeffs.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                degree = degree.max((i + j) as i64);
                if i + 2 > w.wv || j + 2 > w.wn {
                    return Err(unstable());
                }
            }
        }
    }
    if let Some(d) = max_degree {
        if degree > d {
            return Err(unstable());
        }
    }
    let fit = BivariateFit { degree, coeffs, window: w, margin_verified: false };
    for a in 0..w.wv + w.margin {
        for b in 0..w.wn + w.margin {
            let v = w.v0 + a as i64;
            let n = w.n0 + b as i64;
            if fit.eval(v, n) != BigInt::from(t.grid[a][b]) {
                return Err(unstable());
            }
        }
    }
    Ok(BivariateFit { margin_verified: true, ..fit })
}

/// e(i,j) = i!·j!·[v^i n^j] of the degree-r homogeneous part, for i + j = r.
pub fn mixed_coefficients(f: &BivariateFit, r: i64) -> Result<BTreeMap<(usize, usize), BigInt>> {
    if r < f.degree {
        return Err(Error::Invalid(format!("requested degree {r} below fit degree {}", f.degree)));
    }
    let mono = f.monomial_coefficients();
    let mut out = BTreeMap::new();
    if r < 0 {
        return Ok(out);
    }
    for i in 0..=r as usize {
        let j = r as usize - i;
        let c = mono.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero);
        let e = c * BigRational::from_integer(factorial(i) * factorial(j));
        if !e.is_integer() {
            return Err(Error::NonIntegerCoefficient);
        }
        let e = e.to_integer();
        if e.is_negative() {
            return Err(Error::Unstable {
                suggested_vmax: (f.window.v_end() - 1) * 2,
                suggested_nmax: (f.window.n_end() - 1) * 2,
            });
        }
        out.insert((i, j), e);
    }
    Ok(out)
}

/// Exact univariate fit of consecutive values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFit {
    pub origin: i64,
    pub degree: i64,
    pub coeffs: Vec<BigInt>,
}

/// Fits `values[k] = P(origin + k)` on the first `w` values and verifies the rest.
pub fn fit_univariate(origin: i64, values: &[u64], w: usize) -> Result<UnivariateFit> {
    let unstable = Error::Unstable { suggested_vmax: 2 * (origin + values.len() as i64), suggested_nmax: 0 };
    if w < 2 || w > values.len() {
        return Err(unstable);
    }
    let vals: Vec<BigInt> = values.iter().map(|&x| BigInt::from(x)).collect();
    let coeffs = newton(&vals[..w]);
    let degree = coeffs.iter().rposition(|c| !c.is_zero()).map_or(-1, |d| d as i64);
    if degree > w as i64 - 2 {
        return Err(unstable);
    }
    for (k, val) in vals.iter().enumerate() {
        let t = BigInt::from(k);
        let p: BigInt = coeffs.iter().enumerate().map(|(i, c)| c * binom_int(&t, i)).sum();
        if &p != val {
            return Err(unstable);
        }
    }
    Ok(UnivariateFit { origin, degree, coeffs })
}

/// d!·(leading coefficient) when the degree is d, 0 when it is smaller.
pub fn univariate_multiplicity(fit: &UnivariateFit, d: i64) -> Result<BigInt> {
    if fit.degree > d {
        return Err(Error::Unstable { suggested_vmax: 0, suggested_nmax: 0 });
    }
    if fit.degree < d || d < 0 {
        return Ok(BigInt::zero());
    }
    Ok(fit.coeffs[d as usize].clone())
}

/// Fits v ↦ value(v) using the policy's line windows.
pub fn fit_line(policy: &WindowPolicy, cap: i64, mut value: impl FnMut(i64) -> Result<u64>) -> Result<UnivariateFit> {
    let mut last = policy.unstable();
    for (o, w) in policy.line_windows(cap) {
        let vals = (o..o + (w + policy.margin) as i64).map(&mut value).collect::<Result<Vec<_>>>()?;
        match fit_univariate(o, &vals, w) {
            Ok(f) => return Ok(f),
            Err(e @ Error::Unstable { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Searches the policy's windows for a verified fit of a piece source.
pub fn stable_fit<F: Field>(
    ring: &BaseRing<F>,
    source: &dyn PieceSource<F>,
    policy: &WindowPolicy,
) -> Result<(HilbertTable, BivariateFit)> {
    let mut last = policy.unstable();
    for w in policy.windows() {
        let t = hilbert_table(ring, source, w)?;
        match fit_bivariate(&t, None) {
            Ok(f) => {
                let r = f.degree.max(0);
                match mixed_coefficients(&f, r) {
                    Ok(_) => return Ok((t, f)),
                    Err(Error::NonIntegerCoefficient) | Err(Error::Unstable { .. }) => {
                        last = policy.unstable();
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Unstable { .. }) => last = policy.unstable(),
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn table(w: Window, h: impl Fn(i64, i64) -> u64) -> HilbertTable {
        let grid = (0..w.wv + w.margin)
            .map(|a| (0..w.wn + w.margin).map(|b| h(w.v0 + a as i64, w.n0 + b as i64)).collect())
            .collect();
        HilbertTable { window: w, grid }
    }

    fn win() -> Window {
        Window { v0: 4, n0: 4, wv: 6, wn: 6, margin: 3 }
    }

    fn e(f: &BivariateFit) -> Vec<i64> {
        mixed_coefficients(f, f.degree).unwrap().values().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn closed_forms() {
        let f = fit_bivariate(&table(win(), |_, n| (n + 1) as u64), None).unwrap();
        assert_eq!(f.degree, 1);
        assert_eq!(e(&f), vec![1, 0]); // keyed (0,1), (1,0)
        let f = fit_bivariate(&table(win(), |v, n| ((v + 1) * (n + 1)) as u64), None).unwrap();
        assert_eq!(f.degree, 2);
        let m = mixed_coefficients(&f, 2).unwrap();
        assert_eq!(m[&(1, 1)], BigInt::from(1));
        assert_eq!(m[&(2, 0)], BigInt::zero());
        let f = fit_bivariate(&table(win(), |v, n| ((n + 1) * v + (n + 1) * (n + 2) / 2) as u64), None).unwrap();
        let m = mixed_coefficients(&f, 2).unwrap();
        assert_eq!((m[&(1, 1)].clone(), m[&(0, 2)].clone(), m[&(2, 0)].clone()), (1.into(), 1.into(), 0.into()));
        let f = fit_bivariate(&table(win(), |v, _| (2 * v + 3) as u64), None).unwrap();
        let m = mixed_coefficients(&f, 1).unwrap();
        assert_eq!((m[&(1, 0)].clone(), m[&(0, 1)].clone()), (2.into(), 0.into()));
        let mono = f.monomial_coefficients();
        assert_eq!(mono[&(0, 0)], BigRational::from_integer(3.into()));
    }

    #[test]
    fn shifted_window_same_top() {
        let h = |v: i64, n: i64| ((n + 1) * v + (n + 1) * (n + 2) / 2) as u64;
        let a = fit_bivariate(&table(win(), h), None).unwrap();
        let b = fit_bivariate(&table(Window { v0: 7, n0: 5, ..win() }, h), None).unwrap();
        assert_eq!(mixed_coefficients(&a, 2).unwrap(), mixed_coefficients(&b, 2).unwrap());
        assert_eq!(a.monomial_coefficients(), b.monomial_coefficients());
    }

    #[test]
    fn margin_catches_late_change() {
        // Linear on the block, saturates in the margin.
        let h = |_: i64, n: i64| (n + 1).min(10) as u64;
        assert!(matches!(fit_bivariate(&table(win(), h), None), Err(Error::Unstable { .. })));
        // Degree too large for the block.
        let h = |v: i64, _: i64| (v.pow(5)) as u64;
        assert!(matches!(fit_bivariate(&table(win(), h), None), Err(Error::Unstable { .. })));
    }

    #[test]
    fn padding_above_fit_degree_is_zero() {
        let f = fit_bivariate(&table(win(), |_, n| (n + 1) as u64), None).unwrap();
        let m = mixed_coefficients(&f, 3).unwrap();
        assert!(m.values().all(|x| x.is_zero()));
        assert!(mixed_coefficients(&f, 0).is_err());
    }

    #[test]
    fn univariate() {
        let vals: Vec<u64> = (0..9).map(|n| n + 1).collect();
        let f = fit_univariate(0, &vals, 6).unwrap();
        assert_eq!(univariate_multiplicity(&f, 1).unwrap(), BigInt::from(1));
        let f = fit_univariate(0, &[5; 9], 6).unwrap();
        assert_eq!(univariate_multiplicity(&f, 1).unwrap(), BigInt::zero());
        let vals: Vec<u64> = (0..9).map(|n| (n + 1) * (n + 2) / 2).collect();
        let f = fit_univariate(0, &vals, 6).unwrap();
        assert_eq!(univariate_multiplicity(&f, 2).unwrap(), BigInt::from(1));
        assert!(univariate_multiplicity(&f, 1).is_err());
    }

    #[test]
    fn policy_windows() {
        let p = WindowPolicy::default();
        let ws = p.windows();
        assert_eq!(ws[0], Window { v0: 4, n0: 4, wv: 6, wn: 6, margin: 3 });
        let origins: Vec<_> = ws.iter().map(|w| (w.v0, w.n0, w.wv, w.wn)).collect();
        assert_eq!(origins, vec![(4, 4, 6, 6), (8, 4, 2, 6), (4, 8, 6, 2), (8, 8, 2, 2)]);
    }
}
