use num_bigint::BigInt;
use num_traits::One;

use super::parse::{parse_poly, ZPoly};
use crate::error::{Error, Result};
use crate::exactlin::{FieldDescriptor, MAX_VARS};

/// The base ring κ[u_1..u_s] localized at (u).
#[derive(Clone, Debug, PartialEq)]
pub struct BasePresentation {
    pub field: FieldDescriptor,
    pub base_vars: Vec<String>,
}

impl BasePresentation {
    pub fn new(field: FieldDescriptor, base_vars: &[&str]) -> Result<Self> {
        let b = BasePresentation { field, base_vars: base_vars.iter().map(|s| s.to_string()).collect() };
        b.validate()?;
        Ok(b)
    }

    pub fn rationals(base_vars: &[&str]) -> Self {
        Self::new(FieldDescriptor::Rational, base_vars).expect("valid base")
    }

    pub fn s(&self) -> usize {
        self.base_vars.len()
    }

    fn validate(&self) -> Result<()> {
        self.field.validate()?;
        if self.base_vars.len() > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} base variables")));
        }
        check_distinct(&self.base_vars)
    }

    pub fn parse_base(&self, src: &str, context: &str) -> Result<ZPoly> {
        parse_poly(src, &self.base_vars, context)
    }
}

fn check_distinct(names: &[String]) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::Invalid(format!("variable '{a}' declared twice")));
        }
    }
    Ok(())
}

/// B = R[x_1..x_m]/I with I generated by x-homogeneous relations.
/// Polynomials are stored over the variable list u_1..u_s, x_1..x_m.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub base: BasePresentation,
    pub poly_vars: Vec<String>,
    pub relations: Vec<ZPoly>,
}

impl AlgebraPresentation {
    pub fn new(base: BasePresentation, poly_vars: &[&str], relations: &[&str]) -> Result<Self> {
        let mut a = AlgebraPresentation {
            base,
            poly_vars: poly_vars.iter().map(|s| s.to_string()).collect(),
            relations: Vec::new(),
        };
        a.check_names()?;
        for (i, r) in relations.iter().enumerate() {
            let p = a.parse(r, &format!("relations[{i}]"))?;
            a.x_degree(&p, &format!("relations[{i}]"))?;
            if !p.is_zero() {
                a.relations.push(p);
            }
        }
        Ok(a)
    }

    fn check_names(&self) -> Result<()> {
        self.base.validate()?;
        if self.poly_vars.len() > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} graded variables")));
        }
        check_distinct(&self.all_vars())
    }

    pub fn s(&self) -> usize {
        self.base.s()
    }

    pub fn m(&self) -> usize {
        self.poly_vars.len()
    }

    pub fn all_vars(&self) -> Vec<String> {
        self.base.base_vars.iter().chain(self.poly_vars.iter()).cloned().collect()
    }

    pub fn parse(&self, src: &str, context: &str) -> Result<ZPoly> {
        parse_poly(src, &self.all_vars(), context)
    }

    pub fn render(&self, p: &ZPoly) -> String {
        p.render(&self.all_vars())
    }

    /// x-degree of a nonzero x-homogeneous element; `None` for zero.
    pub fn x_degree(&self, p: &ZPoly, context: &str) -> Result<Option<i64>> {
        let s = self.s();
        let degs = p.partial_degrees(s, s + self.m());
        match degs.first() {
            None => Ok(None),
            Some(&d) if degs.iter().all(|&e| e == d) => Ok(Some(d as i64)),
            _ => Err(Error::Invalid(format!("{context}: not homogeneous in the graded variables"))),
        }
    }

    /// Parses a degree-1 element.
    pub fn parse_linear(&self, src: &str, context: &str) -> Result<ZPoly> {
        let p = self.parse(src, context)?;
        match self.x_degree(&p, context)? {
            Some(1) => Ok(p),
            _ => Err(Error::Invalid(format!("{context}: expected an element of x-degree exactly 1"))),
        }
    }

    /// R[x_1..x_m] with no relations.
    pub fn polynomial(base: BasePresentation, poly_vars: &[&str]) -> Result<Self> {
        Self::new(base, poly_vars, &[])
    }
}

/// A column of a module presentation with its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub degree: i64,
    pub entries: Vec<ZPoly>,
}

/// M = ⊕ B(−d_i) / (relation columns).
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    pub algebra: AlgebraPresentation,
    pub shifts: Vec<i64>,
    pub columns: Vec<Column>,
}

impl ModulePresentation {
    /// The algebra as a module over itself.
    pub fn free_algebra(algebra: AlgebraPresentation) -> Self {
        ModulePresentation { algebra, shifts: vec![0], columns: Vec::new() }
    }

    pub fn new(algebra: AlgebraPresentation, shifts: &[i64], columns: &[Vec<&str>]) -> Result<Self> {
        let mut parsed = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            let mut entries = Vec::new();
            for (i, e) in col.iter().enumerate() {
                entries.push(algebra.parse(e, &format!("module.relations[{j}][{i}]"))?);
            }
            parsed.push(entries);
        }
        Self::from_entries(algebra, shifts.to_vec(), parsed)
    }

    pub fn from_entries(algebra: AlgebraPresentation, shifts: Vec<i64>, columns: Vec<Vec<ZPoly>>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::Invalid("module needs at least one generator".into()));
        }
        let mut out = ModulePresentation { algebra, shifts, columns: Vec::new() };
        for (j, entries) in columns.into_iter().enumerate() {
            out.push_column(entries, &format!("module.relations[{j}]"))?;
        }
        Ok(out)
    }

    pub fn push_column(&mut self, entries: Vec<ZPoly>, context: &str) -> Result<()> {
        if entries.len() != self.shifts.len() {
            return Err(Error::RankMismatch { expected: self.shifts.len(), found: entries.len() });
        }
        let mut degree = None;
        for (i, e) in entries.iter().enumerate() {
            if let Some(d) = self.algebra.x_degree(e, context)? {
                let cd = d + self.shifts[i];
                match degree {
                    None => degree = Some(cd),
                    Some(prev) if prev != cd => {
                        return Err(Error::Invalid(format!("{context}: inconsistent column degree")));
                    }
                    _ => {}
                }
            }
        }
        if let Some(degree) = degree {
            self.columns.push(Column { degree, entries });
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn min_shift(&self) -> i64 {
        *self.shifts.iter().min().expect("nonempty")
    }

    /// M ⊕ N over the same algebra.
    pub fn direct_sum(&self, o: &ModulePresentation) -> Result<Self> {
        if self.algebra != o.algebra {
            return Err(Error::Invalid("direct sum needs a common algebra".into()));
        }
        let n = self.algebra.all_vars().len();
        let (k1, k2) = (self.rank(), o.rank());
        let mut shifts = self.shifts.clone();
        shifts.extend(&o.shifts);
        let mut cols = Vec::new();
        for c in &self.columns {
            let mut e = c.entries.clone();
            e.extend((0..k2).map(|_| ZPoly::zero(n)));
            cols.push(e);
        }
        for c in &o.columns {
            let mut e: Vec<ZPoly> = (0..k1).map(|_| ZPoly::zero(n)).collect();
            e.extend(c.entries.iter().cloned());
            cols.push(e);
        }
        Self::from_entries(self.algebra.clone(), shifts, cols)
    }
}

/// A ⊆ B given by degree-1 generators of A_1.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraSpec {
    pub gens: Vec<ZPoly>,
}

impl SubalgebraSpec {
    pub fn new(algebra: &AlgebraPresentation, gens: &[&str]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Invalid("subalgebra needs at least one generator".into()));
        }
        let gens = gens
            .iter()
            .enumerate()
            .map(|(i, g)| algebra.parse_linear(g, &format!("subalgebra_gens[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubalgebraSpec { gens })
    }

    /// All graded variables: the subalgebra equal to B.
    pub fn all_variables(algebra: &AlgebraPresentation) -> Self {
        let n = algebra.all_vars().len();
        SubalgebraSpec { gens: (0..algebra.m()).map(|i| ZPoly::var(n, algebra.s() + i)).collect() }
    }
}

/// Standard graded algebra: either a presented quotient (generated by all
/// graded variables) or the image subalgebra generated by `generators`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra {
    pub presentation: AlgebraPresentation,
    pub generators: Option<SubalgebraSpec>,
}

impl From<AlgebraPresentation> for GradedAlgebra {
    fn from(presentation: AlgebraPresentation) -> Self {
        GradedAlgebra { presentation, generators: None }
    }
}

impl GradedAlgebra {
    /// Degree-1 generators of the algebra.
    pub fn degree_one(&self) -> SubalgebraSpec {
        self.generators.clone().unwrap_or_else(|| SubalgebraSpec::all_variables(&self.presentation))
    }
}

/// U ⊆ E ⊆ R^e given by columns of base polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePairSpec {
    pub base: BasePresentation,
    pub rank: usize,
    pub u_cols: Vec<Vec<ZPoly>>,
    pub e_cols: Vec<Vec<ZPoly>>,
}

/// Which module of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    U,
    E,
}

impl ModulePairSpec {
    pub fn new(base: BasePresentation, rank: usize, u_cols: &[Vec<&str>], e_cols: &[Vec<&str>]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid("module pair needs rank e >= 1".into()));
        }
        let parse_cols = |cols: &[Vec<&str>], name: &str| -> Result<Vec<Vec<ZPoly>>> {
            cols.iter()
                .enumerate()
                .map(|(j, c)| {
                    if c.len() != rank {
                        return Err(Error::RankMismatch { expected: rank, found: c.len() });
                    }
                    c.iter()
                        .enumerate()
                        .map(|(i, e)| base.parse_base(e, &format!("module_pair.{name}[{j}][{i}]")))
                        .collect()
                })
                .collect()
        };
        let u_cols = parse_cols(u_cols, "U")?;
        let e_cols = parse_cols(e_cols, "E")?;
        if e_cols.is_empty() {
            return Err(Error::Invalid("module pair needs E columns".into()));
        }
        Ok(ModulePairSpec { base, rank, u_cols, e_cols })
    }

    pub fn columns(&self, which: Which) -> &[Vec<ZPoly>] {
        match which {
            Which::U => &self.u_cols,
            Which::E => &self.e_cols,
        }
    }

    /// Names for the ambient variables z_1..z_e, avoiding base names.
    pub fn z_names(&self) -> Vec<String> {
        let mut prefix = "z".to_string();
        loop {
            let names: Vec<String> = (1..=self.rank).map(|i| format!("{prefix}{i}")).collect();
            if names.iter().all(|n| !self.base.base_vars.contains(n)) {
                return names;
            }
            prefix.push('z');
        }
    }
}

/// R[z_1..z_e] together with the linear forms of the chosen columns.
pub fn rees_algebra(p: &ModulePairSpec, which: Which) -> Result<(AlgebraPresentation, SubalgebraSpec)> {
    let names = p.z_names();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ambient = AlgebraPresentation::polynomial(p.base.clone(), &refs)?;
    let s = p.base.s();
    let n = s + p.rank;
    let mut gens = Vec::new();
    for col in p.columns(which) {
        let mut form = ZPoly::zero(n);
        for (i, entry) in col.iter().enumerate() {
            let mut z = vec![0; n];
            z[s + i] = 1;
            let zi = ZPoly::monomial(z, BigInt::one());
            let lifted = ZPoly { nvars: n, terms: entry.terms.iter().map(|(e, c)| {
                let mut full = e.clone();
                full.resize(n, 0);
                (full, c.clone())
            }).collect() };
            form = form.add(&lifted.mul(&zi));
        }
        if !form.is_zero() {
            gens.push(form);
        }
    }
    if gens.is_empty() {
        return Err(Error::RankDeficient { expected: p.rank });
    }
    Ok((ambient, SubalgebraSpec { gens }))
}
