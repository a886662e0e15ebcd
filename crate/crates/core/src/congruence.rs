//! Residue classes of `n S(m, n)` modulo 4 and 3, and the class of
//! `q S(r, q)` modulo a prime power `q`.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{int, is_prime, mod_inverse, Int, Prime, PrimePower};
use crate::error::{Error, Result};
use crate::sum::{n_times_s, pairs_with_denominator, DedekindPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma1Case {
    /// n odd: nS = 0 mod 2
    A,
    /// n = 2 mod 4: nS = 0 mod 4
    B,
    /// n = 0 mod 4: nS = 2 mod 4
    C,
    /// 3 does not divide n: nS = 0 mod 3
    D,
    /// 3 divides n: nS != 0 mod 3
    E,
}

impl Lemma1Case {
    pub fn label(self) -> &'static str {
        match self {
            Lemma1Case::A => "L1a",
            Lemma1Case::B => "L1b",
            Lemma1Case::C => "L1c",
            Lemma1Case::D => "L1d",
            Lemma1Case::E => "L1e",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    CongruentTo,
    NotCongruentTo,
}

/// `value ≡ residue (mod modulus)` or its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueConstraint {
    pub case: Lemma1Case,
    pub relation: Relation,
    pub residue: u32,
    pub modulus: u32,
}

impl ResidueConstraint {
    fn new(case: Lemma1Case, relation: Relation, residue: u32, modulus: u32) -> Self {
        ResidueConstraint {
            case,
            relation,
            residue,
            modulus,
        }
    }

    pub fn is_satisfied_by<T: Int>(&self, value: &T) -> bool {
        let r = value.mod_floor(&int::<T>(self.modulus.into()));
        let congruent = r == int(self.residue.into());
        match self.relation {
            Relation::CongruentTo => congruent,
            Relation::NotCongruentTo => !congruent,
        }
    }
}

impl fmt::Display for ResidueConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::CongruentTo => "≡",
            Relation::NotCongruentTo => "≢",
        };
        write!(f, "nS {op} {} mod {}", self.residue, self.modulus)
    }
}

/// One constraint from the mod-4 family (a/b/c) and one from the mod-3 family (d/e).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lemma1Prediction {
    pub two: ResidueConstraint,
    pub three: ResidueConstraint,
}

impl Lemma1Prediction {
    pub fn constraints(&self) -> [ResidueConstraint; 2] {
        [self.two, self.three]
    }
}

pub fn lemma1_predict<T: Int>(pair: &DedekindPair<T>) -> Lemma1Prediction {
    use Relation::*;
    let n = pair.n();
    let two = match n.mod_floor(&int(4)).to_u8() {
        Some(1) | Some(3) => ResidueConstraint::new(Lemma1Case::A, CongruentTo, 0, 2),
        Some(2) => ResidueConstraint::new(Lemma1Case::B, CongruentTo, 0, 4),
        _ => ResidueConstraint::new(Lemma1Case::C, CongruentTo, 2, 4),
    };
    let three = if n.is_multiple_of(&int(3)) {
        ResidueConstraint::new(Lemma1Case::E, NotCongruentTo, 0, 3)
    } else {
        ResidueConstraint::new(Lemma1Case::D, CongruentTo, 0, 3)
    };
    Lemma1Prediction { two, three }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport<T> {
    pub pair: DedekindPair<T>,
    pub n_s: T,
    pub predicted: Lemma1Prediction,
    pub holds: bool,
}

impl<T: Int> CongruenceReport<T> {
    /// `{"m":…, "n":…, "nS":"…", "cases":[…], "holds":…}`
    pub fn to_json(&self) -> Value {
        let number = |x: &T| {
            x.to_u64()
                .map(Value::from)
                .unwrap_or_else(|| Value::String(x.to_string()))
        };
        json!({
            "m": number(self.pair.m()),
            "n": number(self.pair.n()),
            "nS": self.n_s.to_string(),
            "cases": self.predicted.constraints().iter().map(|c| c.case.label()).collect::<Vec<_>>(),
            "holds": self.holds,
        })
    }
}

pub fn lemma1_check<T: Int>(pair: &DedekindPair<T>) -> Result<CongruenceReport<T>> {
    let n_s = n_times_s(pair)?;
    let predicted = lemma1_predict(pair);
    let holds = predicted
        .constraints()
        .iter()
        .all(|c| c.is_satisfied_by(&n_s));
    Ok(CongruenceReport {
        pair: pair.clone(),
        n_s,
        predicted,
        holds,
    })
}

/// Whether `q S(r, q) ≡ r + r* (mod q)` with `r r* ≡ 1 (mod q)`.
pub fn eq216_check<T: Int>(r: &T, q: PrimePower) -> Result<bool> {
    let qv: T = q.value();
    if !r.gcd(&qv).is_one() {
        return Err(Error::invalid(format!(
            "r = {r} is not coprime to q = {qv}"
        )));
    }
    let rstar = mod_inverse(r, &qv)?;
    let q_s = n_times_s(&DedekindPair::new(r.clone(), qv.clone())?)?;
    Ok((q_s - r.clone() - rstar).is_multiple_of(&qv))
}

/// Prime powers `q` with `2 <= q <= limit`, ascending.
pub fn prime_powers_up_to(limit: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let prime = Prime::new(p).expect("small prime");
        let mut e = 1;
        let mut q = p;
        while q <= limit {
            out.push(PrimePower::new(prime, e).expect("e >= 1"));
            e += 1;
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
    }
    out.sort_by_key(|pp| pp.value::<i128>());
    out
}

#[derive(Clone, Debug)]
pub struct Lemma1Scan<T> {
    pub max_n: u64,
    pub pairs: u64,
    /// Ordered by ascending `(n, m)`.
    pub failures: Vec<CongruenceReport<T>>,
}

/// Runs [`lemma1_check`] over every coprime `1 <= m < n <= max_n`.
pub fn lemma1_scan<T: Int>(max_n: u64) -> Result<Lemma1Scan<T>> {
    let per_n: Vec<(u64, Vec<CongruenceReport<T>>)> = (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut count = 0;
            let mut failures = Vec::new();
            for pair in pairs_with_denominator::<T>(n) {
                count += 1;
                let report = lemma1_check(&pair)?;
                if !report.holds {
                    failures.push(report);
                }
            }
            Ok((count, failures))
        })
        .collect::<Result<_>>()?;
    let mut scan = Lemma1Scan {
        max_n,
        pairs: 0,
        failures: Vec::new(),
    };
    for (count, failures) in per_n {
        scan.pairs += count;
        scan.failures.extend(failures);
    }
    Ok(scan)
}

#[derive(Clone, Debug, Default)]
pub struct Eq216Sweep {
    pub cases: u64,
    pub failures: Vec<(u64, u64)>,
}

/// Checks [`eq216_check`] for every prime power `q <= limit` and every admissible `r`.
pub fn eq216_sweep(limit: u64) -> Result<Eq216Sweep> {
    let mut sweep = Eq216Sweep::default();
    for pp in prime_powers_up_to(limit) {
        let q: i128 = pp.value();
        for r in (1..q).filter(|r| r.gcd(&q) == 1) {
            sweep.cases += 1;
            if !eq216_check(&r, pp)? {
                sweep.failures.push((r as u64, q as u64));
            }
        }
    }
    Ok(sweep)
}
