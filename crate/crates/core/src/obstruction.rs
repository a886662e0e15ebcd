//! Exhaustive evidence that Dedekind sums keep away from the units of
//! `Z_2` and `Z_3`.
//!
//! Some unit `u` of `Z_2` has `v_2(s - u) >= 2` exactly when `s` is 2-integral
//! and `s ≡ 1, 3 (mod 4)`; some unit of `Z_3` has `v_3(s - u) >= 1` exactly
//! when `s` is 3-integral and `s ≢ 0 (mod 3)`. Both are decidable from `s`
//! alone, so each pair gets a per-prime verdict.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{int, rational_residue, vp, Int, Prime, Rational, Valuation};
use crate::error::{Error, Result};
use crate::sum::{dedekind_fast, pairs_with_denominator, DedekindPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    /// `s` is not p-integral, so it is far from every unit.
    Vacuous { valuation: Valuation },
    /// `s` is p-integral with the given residue; `safe` iff the residue is a non-unit class.
    Residue {
        residue: T,
        modulus: u32,
        safe: bool,
    },
}

impl<T> Verdict<T> {
    pub fn is_safe(&self) -> bool {
        match self {
            Verdict::Vacuous { .. } => true,
            Verdict::Residue { safe, .. } => *safe,
        }
    }

    pub fn is_vacuous(&self) -> bool {
        matches!(self, Verdict::Vacuous { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdicts<T> {
    pub pair: DedekindPair<T>,
    pub s: Rational<T>,
    pub two: Verdict<T>,
    pub three: Verdict<T>,
    /// `max(v_2(s - 1), v_2(s - 3))`
    pub v2_to_unit: Valuation,
    /// `max(v_3(s - 1), v_3(s - 2))`
    pub v3_to_unit: Valuation,
}

fn verdict<T: Int>(
    s: &Rational<T>,
    p: Prime,
    k: u32,
    safe: impl Fn(&T) -> bool,
) -> Result<Verdict<T>> {
    let valuation = vp(s, p);
    if valuation < Valuation::Finite(0) {
        return Ok(Verdict::Vacuous { valuation });
    }
    let residue = rational_residue(s, p, k)?;
    let safe = safe(&residue);
    Ok(Verdict::Residue {
        residue,
        modulus: p.get().pow(k),
        safe,
    })
}

fn distance_to_units<T: Int>(s: &Rational<T>, p: Prime, units: &[i64]) -> Valuation {
    units
        .iter()
        .map(|&u| vp(&(s - &Rational::from_int(int(u))), p))
        .max()
        .expect("at least one unit")
}

pub fn residue_class_check<T: Int>(pair: &DedekindPair<T>) -> Result<ClassVerdicts<T>> {
    let two = Prime::new(2)?;
    let three = Prime::new(3)?;
    let s = dedekind_fast(pair);
    let two_verdict = verdict(&s, two, 2, |r| *r == int(0) || *r == int(2))?;
    let three_verdict = verdict(&s, three, 1, |r| r.is_zero())?;
    Ok(ClassVerdicts {
        pair: pair.clone(),
        v2_to_unit: distance_to_units(&s, two, &[1, 3]),
        v3_to_unit: distance_to_units(&s, three, &[1, 2]),
        s,
        two: two_verdict,
        three: three_verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub nmax: u64,
    pub pairs: u64,
    pub two_vacuous: u64,
    pub two_residue: u64,
    pub three_vacuous: u64,
    pub three_residue: u64,
    pub max_v2_to_unit: Valuation,
    pub max_v3_to_unit: Valuation,
    /// Offending pairs as `(m, n)`, ascending by `(n, m)`.
    pub violations: Vec<(String, String)>,
}

impl ScanReport {
    fn empty(nmax: u64) -> Self {
        ScanReport {
            nmax,
            pairs: 0,
            two_vacuous: 0,
            two_residue: 0,
            three_vacuous: 0,
            three_residue: 0,
            max_v2_to_unit: Valuation::Finite(i64::MIN),
            max_v3_to_unit: Valuation::Finite(i64::MIN),
            violations: Vec::new(),
        }
    }

    fn record<T: Int>(&mut self, v: &ClassVerdicts<T>) {
        self.pairs += 1;
        if v.two.is_vacuous() {
            self.two_vacuous += 1;
        } else {
            self.two_residue += 1;
        }
        if v.three.is_vacuous() {
            self.three_vacuous += 1;
        } else {
            self.three_residue += 1;
        }
        self.max_v2_to_unit = self.max_v2_to_unit.max(v.v2_to_unit);
        self.max_v3_to_unit = self.max_v3_to_unit.max(v.v3_to_unit);
        if !(v.two.is_safe() && v.three.is_safe()) {
            self.violations
                .push((v.pair.m().to_string(), v.pair.n().to_string()));
        }
    }

    fn merge(mut self, other: ScanReport) -> Self {
        self.pairs += other.pairs;
        self.two_vacuous += other.two_vacuous;
        self.two_residue += other.two_residue;
        self.three_vacuous += other.three_vacuous;
        self.three_residue += other.three_residue;
        self.max_v2_to_unit = self.max_v2_to_unit.max(other.max_v2_to_unit);
        self.max_v3_to_unit = self.max_v3_to_unit.max(other.max_v3_to_unit);
        self.violations.extend(other.violations);
        self
    }

    pub fn to_json(&self) -> Value {
        let valuation = |v: Valuation| match v {
            Valuation::Finite(x) => json!(x),
            Valuation::Infinite => json!("inf"),
        };
        json!({
            "nmax": self.nmax,
            "pairs": self.pairs,
            "violations": self.violations.len(),
            "max_v2_to_unit": valuation(self.max_v2_to_unit),
            "max_v3_to_unit": valuation(self.max_v3_to_unit),
            "two_adic": {"vacuous": self.two_vacuous, "residue": self.two_residue},
            "three_adic": {"vacuous": self.three_vacuous, "residue": self.three_residue},
        })
    }
}

/// Checks every coprime `1 <= m < n <= nmax` and collects violations instead of failing.
pub fn survey<T: Int>(nmax: u64) -> Result<ScanReport> {
    if nmax < 2 {
        return Err(Error::invalid(format!("nmax = {nmax} must be at least 2")));
    }
    let parts: Vec<ScanReport> = (2..=nmax)
        .into_par_iter()
        .map(|n| {
            let mut part = ScanReport::empty(nmax);
            for pair in pairs_with_denominator::<T>(n) {
                part.record(&residue_class_check(&pair)?);
            }
            Ok(part)
        })
        .collect::<Result<_>>()?;
    Ok(parts
        .into_iter()
        .fold(ScanReport::empty(nmax), ScanReport::merge))
}

/// Like [`survey`], but any violation is an error naming the first offending pair.
pub fn scan<T: Int>(nmax: u64) -> Result<ScanReport> {
    let report = survey::<T>(nmax)?;
    match report.violations.first() {
        Some((m, n)) => Err(Error::TheoremViolation {
            m: m.clone(),
            n: n.clone(),
            detail: "Dedekind sum lies in a unit class".into(),
        }),
        None => Ok(report),
    }
}
