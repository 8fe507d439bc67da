use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field to compute over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    #[default]
    Rational,
    Prime { characteristic: u64 },
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::Invalid(format!("prime {p} exceeds 2^32")));
        }
        Ok(FieldDescriptor::Prime { characteristic: p })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::Prime { characteristic } => Self::prime(characteristic).map(|_| ()),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic, with the field as a context value.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    /// `a - c * b`
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return a.clone();
        }
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Z/p for a prime p < 2^32.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldDescriptor::prime(p)?;
        Ok(PrimeField { p })
    }
    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { characteristic: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.p));
        let x = e.x.mod_floor(&BigInt::from(self.p));
        x.to_u64().expect("reduced residue fits u64")
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        debug_assert!(!r.is_negative());
        r.to_u64().expect("reduced residue fits u64")
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by a descriptor.
#[macro_export]
macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {
        match $desc {
            $crate::exactlin::FieldDescriptor::Rational => {
                let $f = $crate::exactlin::Rationals;
                $body
            }
            $crate::exactlin::FieldDescriptor::Prime { characteristic } => {
                let $f = $crate::exactlin::PrimeField::new(characteristic)?;
                $body
            }
        }
    };
}
