//! Exact integer and rational arithmetic over a generic integer type:
//! p-adic valuations, modular inverses and Chinese remaindering.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Integer types the library is generic over: `i64`, `i128` and `BigInt`.
///
/// Fixed-width types are only safe while intermediate products stay in range;
/// the evaluator forms products of size roughly `n^3`, so `i128` covers any
/// scan that finishes in reasonable time and `BigInt` covers everything else.
pub trait Int:
    Integer
    + Signed
    + Clone
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Hash
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + FromPrimitive
        + ToPrimitive
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Hash
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("small constant fits every Int")
}

/// Largest prime accepted anywhere in the library (exclusive).
pub const PRIME_CAP: u64 = 1 << 31;

/// A rational prime below [`PRIME_CAP`], checked by trial division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= PRIME_CAP {
            return Err(Error::invalid(format!("prime {p} exceeds the cap 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn to_int<T: Int>(self) -> T {
        T::from_u32(self.0).expect("primes below 2^31 fit every Int")
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
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

/// `q = p^e` with `e >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: Prime,
    e: u32,
}

impl PrimePower {
    pub fn new(p: Prime, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::invalid("prime power exponent must be at least 1"));
        }
        Ok(PrimePower { p, e })
    }

    /// Recognizes `q` as a prime power. The base prime must be below the cap.
    pub fn from_int<T: Int>(q: &T) -> Result<Self> {
        let not_pp = || Error::invalid(format!("{q} is not a prime power > 1"));
        if *q <= T::one() {
            return Err(not_pp());
        }
        let mut base = None;
        let mut d: u64 = 2;
        while d < PRIME_CAP {
            let dt = T::from_u64(d).expect("trial divisor fits");
            if dt.clone() * dt.clone() > *q {
                break;
            }
            if q.is_multiple_of(&dt) {
                base = Some(d);
                break;
            }
            d += 1;
        }
        let base = match base {
            Some(b) => b,
            None => {
                // no factor up to min(sqrt(q), cap): q itself is prime, or too large to decide
                let small = q
                    .to_u64()
                    .filter(|&v| v < PRIME_CAP)
                    .ok_or_else(|| Error::invalid(format!("{q} has no prime factor below 2^31")))?;
                return PrimePower::new(Prime::new(small)?, 1);
            }
        };
        let p = Prime::new(base)?;
        let pt: T = p.to_int();
        let mut rest = q.clone();
        let mut e = 0;
        while rest.is_multiple_of(&pt) {
            rest = rest / pt.clone();
            e += 1;
        }
        if !rest.is_one() {
            return Err(not_pp());
        }
        PrimePower::new(p, e)
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn exponent(self) -> u32 {
        self.e
    }

    pub fn value<T: Int>(self) -> T {
        num_traits::pow(self.p.to_int::<T>(), self.e as usize)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

/// `p^k` in the requested integer type.
pub fn prime_pow<T: Int>(p: Prime, k: u32) -> T {
    num_traits::pow(p.to_int::<T>(), k as usize)
}

/// A p-adic valuation. Zero has valuation [`Valuation::Infinite`], which
/// orders above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Valuation of a nonzero integer; `Infinite` for zero.
pub fn vp_int<T: Int>(x: &T, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let pt: T = p.to_int();
    let mut rest = x.clone();
    let mut v = 0;
    while rest.is_multiple_of(&pt) {
        rest = rest / pt.clone();
        v += 1;
    }
    Valuation::Finite(v)
}

/// `v_p(num) - v_p(den)`, or `Infinite` for zero.
pub fn vp<T: Int>(x: &Rational<T>, p: Prime) -> Valuation {
    match (vp_int(x.numer(), p), vp_int(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    }
}

/// Least `b` in `[0, m)` with `a * b = 1 (mod m)`.
pub fn mod_inverse<T: Int>(a: &T, m: &T) -> Result<T> {
    if *m < int(2) {
        return Err(Error::invalid(format!("modulus {m} must be at least 2")));
    }
    let reduced = a.mod_floor(m);
    let eg = reduced.extended_gcd(m);
    if !eg.gcd.is_one() {
        return Err(Error::NoInverse {
            a: a.to_string(),
            modulus: m.to_string(),
        });
    }
    Ok(eg.x.mod_floor(m))
}

/// A residue class `residue mod modulus`, stored with `0 <= residue < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence<T> {
    residue: T,
    modulus: T,
}

impl<T: Int> Congruence<T> {
    pub fn new(residue: T, modulus: T) -> Result<Self> {
        if modulus < T::one() {
            return Err(Error::invalid(format!(
                "modulus {modulus} must be at least 1"
            )));
        }
        Ok(Congruence {
            residue: residue.mod_floor(&modulus),
            modulus,
        })
    }

    /// The class of all integers.
    pub fn any() -> Self {
        Congruence {
            residue: T::zero(),
            modulus: T::one(),
        }
    }

    pub fn residue(&self) -> &T {
        &self.residue
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    pub fn contains(&self, x: &T) -> bool {
        x.mod_floor(&self.modulus) == self.residue
    }

    /// Smallest strictly positive member of the class.
    pub fn least_positive(&self) -> T {
        if self.residue.is_zero() {
            self.modulus.clone()
        } else {
            self.residue.clone()
        }
    }

    fn combine(&self, other: &Self) -> Result<Self> {
        if self.modulus.is_one() {
            return Ok(other.clone());
        }
        if other.modulus.is_one() {
            return Ok(self.clone());
        }
        if !self.modulus.gcd(&other.modulus).is_one() {
            return Err(Error::invalid(format!(
                "moduli {} and {} are not coprime",
                self.modulus, other.modulus
            )));
        }
        let inv = mod_inverse(&self.modulus, &other.modulus)?;
        let lift = ((other.residue.clone() - self.residue.clone()) * inv).mod_floor(&other.modulus);
        let modulus = self.modulus.clone() * other.modulus.clone();
        Congruence::new(self.residue.clone() + self.modulus.clone() * lift, modulus)
    }
}

impl<T: Int> fmt::Display for Congruence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// Solves a system of congruences with pairwise coprime moduli. The empty
/// system is the class of all integers.
pub fn crt<T: Int>(congruences: &[Congruence<T>]) -> Result<Congruence<T>> {
    congruences
        .iter()
        .try_fold(Congruence::any(), |acc, c| acc.combine(c))
}

/// The residue of a p-integral rational modulo `p^k`.
pub fn rational_residue<T: Int>(x: &Rational<T>, p: Prime, k: u32) -> Result<T> {
    if k == 0 {
        return Err(Error::invalid("precision k must be at least 1"));
    }
    if vp(x, p) < Valuation::Finite(0) {
        return Err(Error::NotPIntegral {
            value: x.to_string(),
            p: p.get(),
        });
    }
    let modulus: T = prime_pow(p, k);
    if modulus.is_one() {
        return Ok(T::zero());
    }
    let inv = mod_inverse(x.denom(), &modulus)?;
    Ok((x.numer().clone() * inv).mod_floor(&modulus))
}

/// A reduced fraction with positive denominator; zero is `0/1`.
///
/// Serializes as `num/den`, or `num` alone when the denominator is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational<T> {
    num: T,
    den: T,
}

impl<T: Int> PartialOrd for Rational<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Int> Ord for Rational<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

impl<T: Int> Rational<T> {
    fn from_ratio(r: Ratio<T>) -> Self {
        let (num, den) = r.into_raw();
        Rational { num, den }
    }

    fn ratio(&self) -> Ratio<T> {
        Ratio::new_raw(self.num.clone(), self.den.clone())
    }

    pub fn new(num: T, den: T) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("denominator must be nonzero"));
        }
        Ok(Self::from_ratio(Ratio::new(num, den)))
    }

    pub fn from_int(n: T) -> Self {
        Rational {
            num: n,
            den: T::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(T::zero())
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_integer(&self) -> Option<T> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn floor(&self) -> T {
        self.num.div_floor(&self.den)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_ratio(self.ratio() * k.clone())
    }

    /// Converts between integer backings, e.g. `i128` to `BigInt`.
    pub fn convert<U: Int>(&self) -> Option<Rational<U>> {
        let num = U::from_str(&self.numer().to_string()).ok()?;
        let den = U::from_str(&self.denom().to_string()).ok()?;
        Some(Rational { num, den })
    }
}

impl<T: Int> fmt::Display for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational {input:?}: {reason}")]
pub struct ParseRationalError {
    input: String,
    reason: &'static str,
}

impl<T: Int> FromStr for Rational<T> {
    type Err = ParseRationalError;

    /// Accepts `[+-]digits[/digits]` with a nonzero denominator.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let fail = |reason| ParseRationalError {
            input: s.to_string(),
            reason,
        };
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (num_str, den_str) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |part: &str| {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("expected decimal digits"));
            }
            T::from_str(part).map_err(|_| fail("integer out of range"))
        };
        let mut num = digits(num_str)?;
        if negative {
            num = -num;
        }
        let den = match den_str {
            Some(d) => digits(d)?,
            None => T::one(),
        };
        if den.is_zero() {
            return Err(fail("zero denominator"));
        }
        Ok(Rational::from_ratio(Ratio::new(num, den)))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Int> $tr for Rational<T> {
            type Output = Rational<T>;
            fn $method(self, rhs: Rational<T>) -> Rational<T> {
                Rational::from_ratio(self.ratio().$method(rhs.ratio()))
            }
        }
        impl<'a, T: Int> $tr<&'a Rational<T>> for &'a Rational<T> {
            type Output = Rational<T>;
            fn $method(self, rhs: &'a Rational<T>) -> Rational<T> {
                Rational::from_ratio(self.ratio().$method(rhs.ratio()))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<T: Int> Neg for Rational<T> {
    type Output = Rational<T>;
    fn neg(self) -> Rational<T> {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<T: Int> From<T> for Rational<T> {
    fn from(n: T) -> Self {
        Rational::from_int(n)
    }
}
