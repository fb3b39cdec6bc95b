//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! All linear algebra in the crate is generic over [`Field`]. A runtime
//! [`FieldSpec`] names the field chosen by the user; [`with_field!`] turns
//! it back into a concrete, monomorphized field value.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime characteristic.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field selected at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "characteristic", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    /// GF(p), checking that `p` is a prime not exceeding `2^31 - 1`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => u64::from(*p),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("gf:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad characteristic in field `{s}`")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Parse(format!("unknown field `{s}` (expected `q` or `gf:<p>`)")))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field with canonical element representatives.
///
/// Field values carry whatever runtime data the arithmetic needs (the
/// modulus for GF(p)); elements themselves are plain values, always kept in
/// canonical form so that `==` is field equality.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + Display + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - f * b`, the row-operation kernel.
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(f, b))
    }
}

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        if f.is_zero() || b.is_zero() {
            return a.clone();
        }
        a - f * b
    }
}

/// GF(p) for a prime `p < 2^31`, elements stored as least nonnegative
/// residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        match FieldSpec::prime(p)? {
            FieldSpec::PrimeField(p) => Ok(PrimeField { p }),
            FieldSpec::Rationals => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: u64) -> u32 {
        (v % u64::from(self.p)) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(u64::from(*a) + u64::from(*b))
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(u64::from(*a) + u64::from(self.p) - u64::from(*b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(u64::from(*a) * u64::from(*b))
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (i64::from(self.p), i64::from(*a));
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(t.rem_euclid(i64::from(self.p)) as u32)
    }
    fn sub_mul(&self, a: &u32, f: &u32, b: &u32) -> u32 {
        let prod = u64::from(*f) * u64::from(*b) % u64::from(self.p);
        self.reduce(u64::from(*a) + u64::from(self.p) - prod)
    }
}

/// Render a rational in lowest terms (`3`, `-1/2`).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom().abs())
    }
}

/// Run `$body` with `$f` bound to the concrete field named by `$spec`.
///
/// ```
/// use posetres::{with_field, field::{Field, FieldSpec}};
/// let spec = FieldSpec::prime(5).unwrap();
/// let text = with_field!(spec, |f| format!("{}", f.from_i64(-1)));
/// assert_eq!(text, "4");
/// ```
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::PrimeField(p) => {
                let $f = $crate::field::PrimeField::new(u64::from(p))
                    .expect("FieldSpec holds a checked prime");
                $body
            }
        }
    };
}
