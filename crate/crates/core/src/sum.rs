//! The Dedekind sum `S(m, n) = 12 s(m, n)`, by direct summation and by
//! Euclidean descent through the reciprocity law.

use std::fmt;

use num_integer::Integer;

use crate::arith::{int, Int, Rational};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`dedekind_naive`].
pub const ORACLE_CAP: u64 = 100_000;

/// A coprime pair `(m, n)` with `n >= 1`, stored with `0 <= m < n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DedekindPair<T> {
    m: T,
    n: T,
}

impl<T: Int> DedekindPair<T> {
    /// Reduces `m` modulo `n`; `S` is periodic in `m` with period `n`.
    pub fn new(m: T, n: T) -> Result<Self> {
        if n < T::one() {
            return Err(Error::invalid(format!("n = {n} must be at least 1")));
        }
        if !m.gcd(&n).is_one() {
            return Err(Error::invalid("m and n must be coprime"));
        }
        Ok(DedekindPair {
            m: m.mod_floor(&n),
            n,
        })
    }

    pub fn m(&self) -> &T {
        &self.m
    }

    pub fn n(&self) -> &T {
        &self.n
    }
}

impl<T: Int> fmt::Display for DedekindPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// `((t))`: `t - floor(t) - 1/2` off the integers, `0` on them.
pub fn sawtooth<T: Int>(t: &Rational<T>) -> Rational<T> {
    if t.is_integer() {
        return Rational::zero();
    }
    let half = Rational::new(T::one(), int(2)).expect("nonzero");
    &(t - &Rational::from_int(t.floor())) - &half
}

/// `12 * sum_{k=1..n} ((k/n)) ((mk/n))`, term by term. Only for `n <= ORACLE_CAP`.
pub fn dedekind_naive<T: Int>(pair: &DedekindPair<T>) -> Result<Rational<T>> {
    let cap = T::from_u64(ORACLE_CAP);
    if cap.is_some_and(|c| pair.n > c) {
        return Err(Error::OracleCap {
            n: pair.n.to_string(),
            cap: ORACLE_CAP,
        });
    }
    let mut total = Rational::zero();
    let mut k = T::one();
    while k <= pair.n {
        let a = sawtooth(&Rational::new(k.clone(), pair.n.clone())?);
        let b = sawtooth(&Rational::new(pair.m.clone() * k.clone(), pair.n.clone())?);
        total = &total + &(&a * &b);
        k = k + T::one();
    }
    Ok(total.scale(&int(12)))
}

/// `n * S(m, n)` as an integer, from the continued fraction of `m / n`.
///
/// Repeated reciprocity along `m/n = [0; a_1, ..., a_r]` collapses to
/// `S = sum (-1)^(i+1) a_i - 3 [r odd] + (m + (-1)^(r+1) q_(r-1)) / n`,
/// where `q_(r-1)` is the denominator of the penultimate convergent.
fn n_times_s_descent<T: Int>(pair: &DedekindPair<T>) -> T {
    if pair.m.is_zero() {
        return T::zero();
    }
    let (mut m, mut n) = (pair.m.clone(), pair.n.clone());
    let (mut q_prev, mut q) = (T::zero(), T::one());
    let mut alternating = T::zero();
    let mut odd = false;
    while !m.is_zero() {
        let (a, rem) = n.div_mod_floor(&m);
        let next_q = a.clone() * q.clone() + q_prev;
        q_prev = std::mem::replace(&mut q, next_q);
        odd = !odd;
        alternating = if odd {
            alternating + a
        } else {
            alternating - a
        };
        n = m;
        m = rem;
    }
    let (tail, correction) = if odd {
        (alternating - int(3), q_prev)
    } else {
        (alternating, T::zero() - q_prev)
    };
    tail * pair.n.clone() + pair.m.clone() + correction
}

/// `S(m, n)` in `O(log n)` exact integer operations.
pub fn dedekind_fast<T: Int>(pair: &DedekindPair<T>) -> Rational<T> {
    Rational::new(n_times_s_descent(pair), pair.n.clone()).expect("n >= 1")
}

/// `n * S(m, n)`, which is always an integer.
pub fn n_times_s<T: Int>(pair: &DedekindPair<T>) -> Result<T> {
    dedekind_fast(pair)
        .scale(&pair.n)
        .to_integer()
        .ok_or_else(|| Error::invariant(format!("n S(m, n) is not integral at {pair}")))
}

/// All coprime pairs `(m, n)` with `1 <= m < n`, for a fixed `n >= 2`.
pub fn pairs_with_denominator<T: Int>(n: u64) -> impl Iterator<Item = DedekindPair<T>> {
    (1..n)
        .filter(move |m| m.gcd(&n) == 1)
        .map(move |m| DedekindPair {
            m: T::from_u64(m).expect("scan index fits"),
            n: T::from_u64(n).expect("scan index fits"),
        })
}
