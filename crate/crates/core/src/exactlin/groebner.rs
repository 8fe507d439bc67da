use super::field::Field;
use super::modvec::{ModVec, ModuleOrder, Term};
use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
}

fn lead_term<F: Field>(v: &ModVec<F>) -> Term {
    v.leading().expect("nonzero basis element").0
}

/// Finds a basis element whose leading term divides `t`.
fn find_reducer<F: Field>(basis: &[ModVec<F>], active: &[bool], t: &Term) -> Option<usize> {
    basis.iter().enumerate().position(|(k, g)| {
        if !active[k] {
            return false;
        }
        let lt = lead_term(g);
        lt.pos == t.pos && lt.mono.divides(&t.mono)
    })
}

/// Full reduction of `v` by monic `basis`; returns the remainder.
pub(crate) fn reduce<F: Field>(
    f: &F,
    ord: ModuleOrder,
    v: &ModVec<F>,
    basis: &[ModVec<F>],
    active: &[bool],
    steps: &mut u64,
    limit: u64,
) -> Result<ModVec<F>> {
    let mut p = v.clone();
    let mut rem: Vec<(Term, F::Elem)> = Vec::new();
    while let Some((t, c)) = p.leading().cloned() {
        match find_reducer(basis, active, &t) {
            Some(k) => {
                *steps += 1;
                if *steps > limit {
                    return Err(Error::BudgetExceeded { what: "reduction".into(), limit });
                }
                let g = &basis[k];
                let q = lead_term(g).mono.quotient_of(&t.mono);
                p = p.axpy(f, ord, &f.neg(&c), &q, g);
            }
            None => {
                rem.push(p.pop_leading().expect("nonempty"));
            }
        }
    }
    Ok(ModVec::from_sorted(rem))
}

/// Reduced Gröbner basis under `ord`, sorted by increasing leading term.
pub fn buchberger<F: Field>(f: &F, ord: ModuleOrder, gens: &[ModVec<F>], limit: u64) -> Result<Vec<ModVec<F>>> {
    let mut steps = 0u64;
    let mut basis: Vec<ModVec<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<ModVec<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.resort(f, ord)).collect();
    input.sort_by(|a, b| ord.cmp(&lead_term(a), &lead_term(b)));
    for g in input {
        let h = reduce(f, ord, &g, &basis, &active, &mut steps, limit)?;
        if !h.is_zero() {
            insert(&mut basis, &mut active, &mut pairs, h.make_monic(f));
        }
    }

    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| ord.cmp(&Term { mono: pa.lcm, pos: pa.pos }, &Term { mono: pb.lcm, pos: pb.pos }))
                    .then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let p = pairs.swap_remove(idx);
        steps += 1;
        if steps > limit {
            return Err(Error::BudgetExceeded { what: "Groebner basis".into(), limit });
        }
        let (gi, gj) = (&basis[p.i], &basis[p.j]);
        let qi = lead_term(gi).mono.quotient_of(&p.lcm);
        let qj = lead_term(gj).mono.quotient_of(&p.lcm);
        let s = gi.mul_term(f, &qi, &f.one()).axpy(f, ord, &f.neg(&f.one()), &qj, gj);
        let h = reduce(f, ord, &s, &basis, &active, &mut steps, limit)?;
        if !h.is_zero() {
            insert(&mut basis, &mut active, &mut pairs, h.make_monic(f));
        }
    }

    // Minimalize and interreduce.
    let mut keep: Vec<ModVec<F>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let t = lead_term(g);
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lt = lead_term(h);
            l != k && lt.pos == t.pos && lt.mono.divides(&t.mono) && (lt.mono != t.mono || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| ord.cmp(&lead_term(a), &lead_term(b)));
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let (lead, tail) = {
            let mut g = keep[k].clone();
            let l = g.pop_leading().expect("nonzero");
            (l, g)
        };
        let others: Vec<ModVec<F>> = keep.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let act = vec![true; others.len()];
        let tail = reduce(f, ord, &tail, &others, &act, &mut steps, limit)?;
        let head = ModVec::from_sorted(vec![lead]);
        out.push(head.add(f, ord, &tail));
    }
    Ok(out)
}

fn insert<F: Field>(basis: &mut Vec<ModVec<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: ModVec<F>) {
    let t = basis.len();
    let lt = lead_term(&h);
    // Gebauer-Moeller: drop old pairs made redundant by the new leading term.
    pairs.retain(|p| {
        if p.pos != lt.pos || !lt.mono.divides(&p.lcm) {
            return true;
        }
        let li = lead_term(&basis[p.i]).mono.lcm(&lt.mono);
        let lj = lead_term(&basis[p.j]).mono.lcm(&lt.mono);
        li == p.lcm || lj == p.lcm
    });
    let mut cand: Vec<Pair> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        if !active[i] {
            continue;
        }
        let gt = lead_term(g);
        if gt.pos == lt.pos {
            cand.push(Pair { i, j: t, lcm: gt.mono.lcm(&lt.mono), pos: lt.pos });
        }
    }
    let mut chosen: Vec<Pair> = Vec::new();
    for (a, p) in cand.iter().enumerate() {
        let dominated = cand.iter().enumerate().any(|(b, q)| {
            q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || b < a)
        });
        if !dominated {
            chosen.push(*p);
        }
    }
    pairs.extend(chosen);
    basis.push(h);
    active.push(true);
}
