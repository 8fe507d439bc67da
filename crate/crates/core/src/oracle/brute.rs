//! Gröbner-free dimension counter: dense frames, sparse elimination over κ.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::FieldDescriptor;
use crate::graded::{ModulePresentation, ZPoly};

trait Scalars {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_big(&self, a: &BigInt) -> Self::E;
    /// a − c·b
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct Q;

impl Scalars for Q {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_big(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a - c * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
}

struct Zp(u64);

impl Scalars for Zp {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_big(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.0)).to_u64().expect("residue")
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.0 as u128;
        let cb = (*c as u128 * *b as u128) % p;
        ((*a as u128 + p - cb) % p) as u64
    }
    fn div(&self, a: &u64, b: &u64) -> u64 {
        // b^(p−2) by square-and-multiply.
        let p = self.0 as u128;
        let (mut base, mut e, mut inv) = (*b as u128 % p, self.0 - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        (*a as u128 * inv % p) as u64
    }
}

type Row = Vec<(usize, BigInt)>;

fn rank<S: Scalars>(k: &S, rows: Vec<Row>, budget: u64) -> Result<usize> {
    let mut pivots: HashMap<usize, BTreeMap<usize, S::E>> = HashMap::new();
    let mut ops = 0u64;
    for raw in rows {
        let mut row: BTreeMap<usize, S::E> = BTreeMap::new();
        for (c, x) in raw {
            let e = k.from_big(&x);
            if !k.is_zero(&e) {
                row.insert(c, e);
            }
        }
        while let Some((&lead, c)) = row.iter().next() {
            let c = c.clone();
            match pivots.get(&lead) {
                Some(p) => {
                    ops += 1;
                    if ops > budget {
                        return Err(Error::BudgetExceeded { what: "brute-force elimination".into(), limit: budget });
                    }
                    for (col, pv) in p {
                        let cur = row.get(col).cloned();
                        let next = match cur {
                            Some(a) => k.sub_mul(&a, &c, pv),
                            None => k.sub_mul(&k.from_big(&BigInt::zero()), &c, pv),
                        };
                        if k.is_zero(&next) {
                            row.remove(col);
                        } else {
                            row.insert(*col, next);
                        }
                    }
                }
                None => {
                    let norm = row.iter().map(|(col, x)| (*col, k.div(x, &c))).collect();
                    pivots.insert(lead, norm);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

/// All exponent vectors of length `n` with total degree `d`.
fn exps_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exps_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn exps_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| exps_of_degree(n, k)).collect()
}

fn x_degree(p: &ZPoly, s: usize) -> Option<i64> {
    p.terms.keys().next().map(|e| e[s..].iter().sum::<u32>() as i64)
}

/// dim_κ M_v / m^{n+1} M_v by dense enumeration and row reduction.
pub fn brute_hilbert(m: &ModulePresentation, v: i64, n: u32, budget: u64) -> Result<u64> {
    let a = &m.algebra;
    let (s, nx) = (a.s(), a.m());
    let umonos = exps_up_to(s, n);
    // Frame: (generator, full exponent vector u·x).
    let mut index: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    for (g, &d) in m.shifts.iter().enumerate() {
        if v - d < 0 {
            continue;
        }
        for xm in exps_of_degree(nx, (v - d) as u32) {
            for um in &umonos {
                let mut e = um.clone();
                e.extend(&xm);
                let k = index.len();
                index.insert((g, e), k);
            }
        }
    }
    let ncols = index.len();
    if ncols == 0 {
        return Ok(0);
    }
    // Each generator of the relation space as (generator entries, x-degree of the column).
    let mut gens: Vec<(Vec<(usize, &ZPoly)>, i64)> = Vec::new();
    for rel in &a.relations {
        if let Some(dx) = x_degree(rel, s) {
            for (g, &d) in m.shifts.iter().enumerate() {
                gens.push((vec![(g, rel)], dx + d));
            }
        }
    }
    for col in &m.columns {
        let entries: Vec<(usize, &ZPoly)> = col.entries.iter().enumerate().filter(|(_, e)| !e.is_zero()).collect();
        gens.push((entries, col.degree));
    }
    let mut rows: Vec<Row> = Vec::new();
    for (entries, deg) in gens {
        if v < deg {
            continue;
        }
        for xm in exps_of_degree(nx, (v - deg) as u32) {
            for um in &umonos {
                let mut shift = um.clone();
                shift.extend(&xm);
                let mut row: Row = Vec::new();
                for (g, p) in &entries {
                    for (e, c) in &p.terms {
                        let full: Vec<u32> = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        if full[..s].iter().sum::<u32>() > n {
                            continue;
                        }
                        let col = index[&(*g, full)];
                        row.push((col, c.clone()));
                    }
                }
                if !row.is_empty() {
                    row.sort_by_key(|t| t.0);
                    rows.push(row);
                }
            }
        }
    }
    if rows.len() as u64 > budget {
        return Err(Error::BudgetExceeded { what: "brute-force frame".into(), limit: budget });
    }
    let rk = match a.base.field {
        FieldDescriptor::Rational => rank(&Q, rows, budget)?,
        FieldDescriptor::Prime { characteristic } => rank(&Zp(characteristic), rows, budget)?,
    };
    Ok((ncols - rk) as u64)
}
