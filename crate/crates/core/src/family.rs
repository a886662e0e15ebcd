//! Dedekind sums on the families `n = q(m^2 + 1)`, `q` a prime power.
//!
//! Two reciprocity steps give `S(m, n) = ((q^2 - 1)/q) m + S(m, q)`, so
//! `l = q S(m, n)` is an integer with `l ≡ r* (mod q)` and
//! `l ≡ q S(r, q) (mod q^2 - 1)` where `m ≡ r (mod q)`. Conversely every
//! positive `l` in those two classes comes from exactly one `m`.

use serde_json::{json, Value};

use crate::arith::{int, mod_inverse, Int, PrimePower, Rational};
use crate::error::{Error, Result};
use crate::sum::{dedekind_fast, n_times_s, DedekindPair};

/// `(q, r, r*)` with `1 <= r < q`, `p ∤ r` and `r r* ≡ 1 (mod q)`; caches `q S(r, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams<T> {
    q: PrimePower,
    q_value: T,
    r: T,
    rstar: T,
    q_s_rq: T,
}

impl<T: Int> FamilyParams<T> {
    pub fn new(q: PrimePower, r: T) -> Result<Self> {
        let q_value: T = q.value();
        if r < T::one() || r >= q_value {
            return Err(Error::invalid(format!("r = {r} must lie in 1..{q_value}")));
        }
        if r.is_multiple_of(&q.prime().to_int()) {
            return Err(Error::invalid(format!(
                "r = {r} is divisible by {}",
                q.prime()
            )));
        }
        let rstar = mod_inverse(&r, &q_value)?;
        let q_s_rq = n_times_s(&DedekindPair::new(r.clone(), q_value.clone())?)?;
        Ok(FamilyParams {
            q,
            q_value,
            r,
            rstar,
            q_s_rq,
        })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn q(&self) -> &T {
        &self.q_value
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn rstar(&self) -> &T {
        &self.rstar
    }

    /// `q S(r, q)`, an integer.
    pub fn q_s_rq(&self) -> &T {
        &self.q_s_rq
    }

    pub fn q_squared_minus_one(&self) -> T {
        self.q_value.clone() * self.q_value.clone() - T::one()
    }

    /// Both congruences an `l` from this family satisfies.
    pub fn admits(&self, l: &T) -> bool {
        l.mod_floor(&self.q_value) == self.rstar
            && (l.clone() - self.q_s_rq.clone()).is_multiple_of(&self.q_squared_minus_one())
    }

    /// Family members for `m = r, r + q, r + 2q, …`.
    pub fn values(&self) -> impl Iterator<Item = Result<FamilyValue<T>>> + '_ {
        let mut m = self.r.clone();
        std::iter::from_fn(move || {
            let value = lemma5_forward(self, &m);
            m = m.clone() + self.q_value.clone();
            Some(value)
        })
    }
}

/// A family member, checked against the fast evaluator when built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyValue<T> {
    q: T,
    r: T,
    m: T,
    n: T,
    l: T,
    s: Rational<T>,
}

impl<T: Int> FamilyValue<T> {
    fn certified(params: &FamilyParams<T>, m: T, l: T) -> Result<Self> {
        let q = params.q().clone();
        let n = family_n(&q, &m);
        let s = Rational::new(l.clone(), q.clone())?;
        let pair = DedekindPair::new(m.clone(), n.clone())?;
        let evaluated = dedekind_fast(&pair);
        if evaluated != s {
            return Err(Error::invariant(format!(
                "S{pair} = {evaluated}, family predicts {s}"
            )));
        }
        if !params.admits(&l) {
            return Err(Error::invariant(format!(
                "l = {l} escapes the classes of q = {q}, r = {}",
                params.r()
            )));
        }
        Ok(FamilyValue {
            q,
            r: params.r().clone(),
            m,
            n,
            l,
            s,
        })
    }

    pub fn m(&self) -> &T {
        &self.m
    }

    pub fn n(&self) -> &T {
        &self.n
    }

    pub fn l(&self) -> &T {
        &self.l
    }

    pub fn s(&self) -> &Rational<T> {
        &self.s
    }

    /// `{"q":…, "r":…, "m":"…", "n":"…", "l":"…", "S":"l/q"}`
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q.to_u64(),
            "r": self.r.to_u64(),
            "m": self.m.to_string(),
            "n": self.n.to_string(),
            "l": self.l.to_string(),
            "S": self.s.to_string(),
        })
    }
}

fn family_n<T: Int>(q: &T, m: &T) -> T {
    q.clone() * (m.clone() * m.clone() + T::one())
}

/// `n = q(m^2 + 1)` and `S(m, n) = ((q^2 - 1)/q) m + S(m, q)`.
pub fn family_value<T: Int>(q: PrimePower, m: &T) -> Result<(T, Rational<T>)> {
    if *m < T::one() {
        return Err(Error::invalid(format!("m = {m} must be positive")));
    }
    if m.is_multiple_of(&q.prime().to_int()) {
        return Err(Error::invalid(format!(
            "{} divides m = {m}, so (m, q(m^2 + 1)) is not coprime",
            q.prime()
        )));
    }
    let qv: T = q.value();
    let linear = Rational::new((qv.clone() * qv.clone() - T::one()) * m.clone(), qv.clone())?;
    let tail = dedekind_fast(&DedekindPair::new(m.clone(), qv.clone())?);
    Ok((family_n(&qv, m), linear + tail))
}

/// The case-split closed forms of `S(m, q(m^2 + 1))` for `q = 2, 3, 5`.
pub fn closed_form<T: Int>(q: u32, m: &T) -> Result<Rational<T>> {
    let frac = |num: T, den: i64| Rational::new(num, int(den));
    let two_m: T = m.clone() * int(2);
    let four_m: T = m.clone() * int(4);
    let residue = |modulus: i64| m.mod_floor(&int(modulus)).to_i64().expect("small residue");
    match q {
        2 if residue(2) == 1 => frac(m.clone() * int(3), 2),
        3 => match residue(3) {
            1 => frac((four_m + T::one()) * int(2), 3),
            2 => frac((four_m - T::one()) * int(2), 3),
            _ => Err(Error::invalid(format!("3 divides m = {m}"))),
        },
        5 => match residue(5) {
            1 => frac((two_m + T::one()) * int(12), 5),
            4 => frac((two_m - T::one()) * int(12), 5),
            2 | 3 => frac(m.clone() * int(24), 5),
            _ => Err(Error::invalid(format!("5 divides m = {m}"))),
        },
        2 => Err(Error::invalid(format!("2 divides m = {m}"))),
        _ => Err(Error::invalid(format!(
            "no closed form for q = {q}; only 2, 3, 5"
        ))),
    }
}

/// The member at `m ≡ r (mod q)`, with `l = q S(m, n)`.
pub fn lemma5_forward<T: Int>(params: &FamilyParams<T>, m: &T) -> Result<FamilyValue<T>> {
    if *m < T::one() {
        return Err(Error::invalid(format!("m = {m} must be positive")));
    }
    if m.mod_floor(params.q()) != *params.r() {
        return Err(Error::invalid(format!(
            "m = {m} is not congruent to r = {} mod {}",
            params.r(),
            params.q()
        )));
    }
    let n = family_n(params.q(), m);
    let l = dedekind_fast(&DedekindPair::new(m.clone(), n)?)
        .scale(params.q())
        .to_integer()
        .ok_or_else(|| Error::invariant(format!("q S(m, n) is not integral at m = {m}")))?;
    let expanded = params.q_squared_minus_one() * m.clone() + params.q_s_rq().clone();
    if l != expanded {
        return Err(Error::invariant(format!(
            "q S(m, n) = {l} but (q^2 - 1) m + q S(r, q) = {expanded}"
        )));
    }
    FamilyValue::certified(params, m.clone(), l)
}

/// Recovers `m = (l - q S(r, q)) / (q^2 - 1)` from an admissible `l >= 1`.
pub fn lemma5_inverse<T: Int>(params: &FamilyParams<T>, l: &T) -> Result<FamilyValue<T>> {
    if *l < T::one() {
        return Err(Error::invalid(format!("l = {l} must be positive")));
    }
    if !params.admits(l) {
        return Err(Error::invalid(format!(
            "l = {l} must satisfy l ≡ {} mod {} and l ≡ {} mod {}",
            params.rstar(),
            params.q(),
            params.q_s_rq(),
            params.q_squared_minus_one()
        )));
    }
    let m = (l.clone() - params.q_s_rq().clone()) / params.q_squared_minus_one();
    if m < T::one() || m.mod_floor(params.q()) != *params.r() {
        return Err(Error::invariant(format!(
            "l = {l} gave m = {m}, expected a positive m ≡ {} mod {}",
            params.r(),
            params.q()
        )));
    }
    FamilyValue::certified(params, m, l.clone())
}
