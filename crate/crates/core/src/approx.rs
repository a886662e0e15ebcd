//! Explicit pairs `(m, n)` whose Dedekind sum is p-adically close to a
//! rational target.
//!
//! Every route turns `v_p(S(m, n) - a) >= k` into a congruence on `m` (or on
//! an auxiliary `l`) inside one of the families `n = q(m^2 + 1)`:
//!
//! | route            | admissible `a`        | family  | `S(m, n)` | working modulus |
//! |------------------|-----------------------|---------|-----------|-----------------|
//! | `T2-large-p`     | `p >= 5`, `v_p >= 0`  | `q = 2` | `3m/2`    | `p^k`           |
//! | `T2-p3`          | `p = 3`, `v_3 >= 1`   | `q = 2` | `3m/2`    | `3^(k-1)`       |
//! | `T2-p2-v1`       | `v_2 = 1`             | `q = 3` | `2l/3`    | `2^(k-1)`       |
//! | `T2-p2-v2`       | `v_2 = 2`             | `q = 5` | `12l/5`   | `2^(k-2)`       |
//! | `T2-p2-v3`       | `v_2 >= 3`            | `q = 5` | `24m/5`   | `2^(k-3)`       |
//! | `T3-fractional`  | `v_p = -e < 0`        | `q = p^e` | `l/q`   | `p^(k+e)`       |
//!
//! Units of `Z_2` and `Z_3` are never approximated; those targets are
//! answered with [`Error::NotApproximable`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::arith::{
    crt, mod_inverse, prime_pow, rational_residue, vp, Congruence, Prime, PrimePower, Valuation,
};
use crate::error::{Error, Result};
use crate::family::{lemma5_inverse, FamilyParams};
use crate::sum::{dedekind_fast, DedekindPair};
use crate::BigRational;

/// A request to approximate `a` in `Q_p` to precision `p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    p: Prime,
    a: BigRational,
    k: u32,
}

impl Target {
    pub fn new(p: Prime, a: BigRational, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidTarget(
                "precision k must be at least 1".into(),
            ));
        }
        Ok(Target { p, a, k })
    }

    /// Convenience constructor from raw inputs, e.g. `("5", "1/5", 1)`.
    pub fn parse(p: u64, a: &str, k: u32) -> Result<Self> {
        let p = Prime::new(p).map_err(|e| Error::InvalidTarget(e.to_string()))?;
        let a = a
            .parse()
            .map_err(|e: crate::arith::ParseRationalError| Error::InvalidTarget(e.to_string()))?;
        Target::new(p, a, k)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn valuation(&self) -> Valuation {
        vp(&self.a, self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    LargePrime,
    ThreeAdic,
    TwoAdicV1,
    TwoAdicV2,
    TwoAdicV3,
    Fractional,
}

impl Route {
    pub fn label(self) -> &'static str {
        match self {
            Route::LargePrime => "T2-large-p",
            Route::ThreeAdic => "T2-p3",
            Route::TwoAdicV1 => "T2-p2-v1",
            Route::TwoAdicV2 => "T2-p2-v2",
            Route::TwoAdicV3 => "T2-p2-v3",
            Route::Fractional => "T3-fractional",
        }
    }

    /// The route [`approximate`] takes for `target`, or `NotApproximable`.
    pub fn for_target(target: &Target) -> Result<Route> {
        let p = target.p.get();
        let v = target.valuation();
        if v < Valuation::Finite(0) {
            return Ok(Route::Fractional);
        }
        match p {
            2 | 3 if v == Valuation::Finite(0) => Err(Error::NotApproximable { p }),
            2 => Ok(match v {
                Valuation::Finite(1) => Route::TwoAdicV1,
                Valuation::Finite(2) => Route::TwoAdicV2,
                _ => Route::TwoAdicV3,
            }),
            3 => Ok(Route::ThreeAdic),
            _ => Ok(Route::LargePrime),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A pair `(m, n)` with `v_p(S(m, n) - a) >= k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    target: Target,
    m: BigInt,
    n: BigInt,
    s: BigRational,
    achieved: Valuation,
    route: Route,
}

impl Witness {
    /// An unverified witness as claimed by some outside source; see [`verify_witness`].
    pub fn claim(target: Target, m: BigInt, n: BigInt, s: BigRational, route: Route) -> Self {
        let achieved = vp(&(&s - &target.a), target.p);
        Witness {
            target,
            m,
            n,
            s,
            achieved,
            route,
        }
    }

    fn certified(
        target: &Target,
        route: Route,
        m: BigInt,
        n: BigInt,
        expected: BigRational,
    ) -> Result<Self> {
        let pair = DedekindPair::new(m.clone(), n.clone())?;
        if *pair.m() != m {
            return Err(Error::invariant(format!(
                "m = {m} is not reduced modulo n = {n}"
            )));
        }
        let s = dedekind_fast(&pair);
        if s != expected {
            return Err(Error::invariant(format!(
                "{route}: S{pair} = {s}, construction expected {expected}"
            )));
        }
        let achieved = vp(&(&s - &target.a), target.p);
        if !achieved.at_least(target.k.into()) {
            return Err(Error::invariant(format!(
                "{route}: v_{}(S - a) = {achieved} < k = {}",
                target.p, target.k
            )));
        }
        Ok(Witness {
            target: target.clone(),
            m,
            n,
            s,
            achieved,
            route,
        })
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn achieved(&self) -> Valuation {
        self.achieved
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn to_json(&self) -> Value {
        let achieved = match self.achieved {
            Valuation::Finite(v) => json!(v),
            Valuation::Infinite => json!("inf"),
        };
        json!({
            "p": self.target.p.get(),
            "k": self.target.k,
            "target": self.target.a.to_string(),
            "route": self.route.label(),
            "m": self.m.to_string(),
            "n": self.n.to_string(),
            "S": self.s.to_string(),
            "achieved": achieved,
        })
    }
}

/// Recomputes `S(m, n)` and checks coprimality, `n >= 1`, the recorded value
/// and `v_p(S - a) >= k`.
pub fn verify_witness(w: &Witness) -> bool {
    let Ok(pair) = DedekindPair::new(w.m.clone(), w.n.clone()) else {
        return false;
    };
    let s = dedekind_fast(&pair);
    s == w.s && vp(&(&s - &w.target.a), w.target.p).at_least(w.target.k.into())
}

/// Builds a witness for `target` along the route chosen by [`Route::for_target`].
pub fn approximate(target: &Target) -> Result<Witness> {
    match Route::for_target(target)? {
        Route::LargePrime => approx_large_p(target),
        Route::ThreeAdic => approx_p3(target),
        Route::TwoAdicV1 | Route::TwoAdicV2 | Route::TwoAdicV3 => approx_p2(target),
        Route::Fractional => approx_fractional(target),
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(big(num), big(den)).expect("nonzero denominator")
}

fn class(residue: i64, modulus: i64) -> Congruence<BigInt> {
    Congruence::new(big(residue), big(modulus)).expect("positive modulus")
}

/// The class of a p-integral `x` modulo `p^exp`; the whole of Z when `exp = 0`.
fn residue_class(x: &BigRational, p: Prime, exp: u32) -> Result<Congruence<BigInt>> {
    if exp == 0 {
        return Ok(Congruence::any());
    }
    Congruence::new(rational_residue(x, p, exp)?, prime_pow(p, exp))
}

fn route_guard(target: &Target, route: Route) -> Result<()> {
    match Route::for_target(target) {
        Ok(r) if r == route => Ok(()),
        Ok(_) | Err(Error::NotApproximable { .. }) => Err(Error::InvalidTarget(format!(
            "a = {} with p = {} does not belong to route {route}",
            target.a, target.p
        ))),
        Err(e) => Err(e),
    }
}

/// `S(m, 2(m^2 + 1)) = 3m/2` for odd `m`; solve `m ≡ 2a/3 (mod p^exp)`.
fn halves_family(target: &Target, exp: u32, route: Route) -> Result<Witness> {
    let wanted = residue_class(&(target.a.clone() * ratio(2, 3)), target.p, exp)?;
    let m = crt(&[wanted, class(1, 2)])?.least_positive();
    let n = big(2) * (&m * &m + BigInt::one());
    let s = BigRational::from_int(&m * big(3)) * ratio(1, 2);
    Witness::certified(target, route, m, n, s)
}

/// `p >= 5` and `a` p-integral.
pub fn approx_large_p(target: &Target) -> Result<Witness> {
    route_guard(target, Route::LargePrime)?;
    halves_family(target, target.k, Route::LargePrime)
}

/// `p = 3` and `3 | a`; the factor `3/2` absorbs one power of 3.
pub fn approx_p3(target: &Target) -> Result<Witness> {
    route_guard(target, Route::ThreeAdic)?;
    halves_family(target, target.k - 1, Route::ThreeAdic)
}

/// `p = 2` and `2 | a`, split by `v_2(a)` into the families `q = 3` and `q = 5`.
pub fn approx_p2(target: &Target) -> Result<Witness> {
    let route = Route::for_target(target)?;
    if !matches!(
        route,
        Route::TwoAdicV1 | Route::TwoAdicV2 | Route::TwoAdicV3
    ) {
        return Err(Error::InvalidTarget(format!(
            "a = {} with p = {} is not an even 2-adic integer",
            target.a, target.p
        )));
    }
    let (p, k, a) = (target.p, target.k, &target.a);
    match route {
        Route::TwoAdicV1 => {
            // l ≡ 3a/2 (mod 2^(k-1)); below modulus 4 the branch is free and l ≡ 1 (mod 4) is taken
            let l_class = if k >= 3 {
                residue_class(&(a.clone() * ratio(3, 2)), p, k - 1)?
            } else {
                class(1, 4)
            };
            let upper = l_class.residue().mod_floor(&big(4)) == big(3);
            let side = if upper { class(1, 3) } else { class(2, 3) };
            let l = crt(&[l_class, side])?.least_positive();
            let m = if upper { (&l + 1) / 4 } else { (&l - 1) / 4 };
            let n = big(3) * (&m * &m + BigInt::one());
            let s = BigRational::from_int(&l * big(2)) * ratio(1, 3);
            Witness::certified(target, route, m, n, s)
        }
        Route::TwoAdicV2 => {
            // l odd, l ≡ 3 (mod 5), l ≡ 5a/12 (mod 2^(k-2)); m = (l - 1)/2 ≡ 1 (mod 5)
            let l_class = if k >= 3 {
                residue_class(&(a.clone() * ratio(5, 12)), p, k - 2)?
            } else {
                class(1, 2)
            };
            let l = crt(&[l_class, class(3, 5)])?.least_positive();
            let m = (&l - 1) / 2;
            let n = big(5) * (&m * &m + BigInt::one());
            let s = BigRational::from_int(&l * big(12)) * ratio(1, 5);
            Witness::certified(target, route, m, n, s)
        }
        _ => {
            // m ≡ 2 (mod 5), m ≡ 5a/24 (mod 2^(k-3)); m may be even
            let m_class = residue_class(&(a.clone() * ratio(5, 24)), p, k.saturating_sub(3))?;
            let m = crt(&[m_class, class(2, 5)])?.least_positive();
            let n = big(5) * (&m * &m + BigInt::one());
            let s = BigRational::from_int(&m * big(24)) * ratio(1, 5);
            Witness::certified(target, route, m, n, s)
        }
    }
}

/// `v_p(a) = -e < 0`: pick `l ≡ q a (mod p^(k+e))` inside the `q = p^e` family.
pub fn approx_fractional(target: &Target) -> Result<Witness> {
    route_guard(target, Route::Fractional)?;
    let (p, k) = (target.p, target.k);
    let e = target
        .valuation()
        .finite()
        .and_then(|v| u32::try_from(-v).ok())
        .expect("fractional route has finite negative valuation");
    let q_power = PrimePower::new(p, e)?;
    let q: BigInt = q_power.value();
    let j = target.a.clone() * BigRational::from_int(q.clone());
    let j_residue = rational_residue(&j, p, k + e)?;
    let rstar = j_residue.mod_floor(&q);
    let r = mod_inverse(&rstar, &q)?;
    let params = FamilyParams::new(q_power, r)?;
    let l = crt(&[
        Congruence::new(j_residue, prime_pow(p, k + e))?,
        Congruence::new(params.q_s_rq().clone(), params.q_squared_minus_one())?,
    ])?
    .least_positive();
    let member = lemma5_inverse(&params, &l)?;
    Witness::certified(
        target,
        Route::Fractional,
        member.m().clone(),
        member.n().clone(),
        member.s().clone(),
    )
}
