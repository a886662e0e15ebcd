//! Acceptance suite. Every check is exact: equalities of rationals and
//! integer valuation bounds. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dedekind_padic::arith::{vp, Prime, PrimePower, Rational, Valuation};
use dedekind_padic::congruence::{eq216_sweep, lemma1_scan, prime_powers_up_to};
use dedekind_padic::family::{
    closed_form, family_value, lemma5_forward, lemma5_inverse, FamilyParams,
};
use dedekind_padic::obstruction::scan;
use dedekind_padic::sum::{
    dedekind_fast, dedekind_naive, pairs_with_denominator, DedekindPair, ORACLE_CAP,
};
use dedekind_padic::{
    approximate, verify_witness, BigInt, BigRational, Error, Route, ScanInt, Target,
};
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Valuations = fn(&mut StdRng) -> i32;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn bpair(m: &BigInt, n: &BigInt) -> DedekindPair<BigInt> {
    DedekindPair::new(m.clone(), n.clone()).expect("coprime pair")
}

/// 1. Fast evaluator equals direct summation for every coprime pair with n <= 300.
fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    for n in 1..=300u64 {
        let all: Vec<DedekindPair<i64>> = if n == 1 {
            vec![DedekindPair::new(0, 1).unwrap()]
        } else {
            pairs_with_denominator(n).collect()
        };
        for p in all {
            pairs += 1;
            let naive = dedekind_naive(&p).map_err(|e| e.to_string())?;
            ensure(dedekind_fast(&p) == naive, || {
                format!("S{p}: fast != naive {naive}")
            })?;
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// 2. S(m,n) + S(n,m) = n/m + m/n + 1/(nm) - 3, both sums by direct summation.
fn reciprocity() -> Outcome {
    let mut pairs = 0;
    for n in 2..=200i64 {
        for m in (1..n).filter(|m| m.gcd(&n) == 1) {
            pairs += 1;
            let forward = dedekind_naive(&DedekindPair::new(m, n).unwrap()).unwrap();
            let backward = dedekind_naive(&DedekindPair::new(n, m).unwrap()).unwrap();
            let rhs = Rational::new(n * n + m * m + 1 - 3 * m * n, m * n).unwrap();
            ensure(forward.clone() + backward.clone() == rhs, || {
                format!("(m, n) = ({m}, {n}): {forward} + {backward} != {rhs}")
            })?;
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// 3. Residue classes of n S(m, n) for every coprime pair with n <= 2000.
fn lemma1_exhaustive() -> Outcome {
    let start = Instant::now();
    let scan = lemma1_scan::<ScanInt>(2000).map_err(|e| e.to_string())?;
    ensure(scan.failures.is_empty(), || {
        format!(
            "{} counterexamples, first {:?}",
            scan.failures.len(),
            scan.failures[0].to_json()
        )
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} pairs in {elapsed:.2?}", scan.pairs))
}

/// 4. q S(r, q) ≡ r + r* (mod q) for every prime power q <= 81.
fn eq216() -> Outcome {
    let sweep = eq216_sweep(81).map_err(|e| e.to_string())?;
    ensure(sweep.failures.is_empty(), || {
        format!("failures {:?}", sweep.failures)
    })?;
    let qs = prime_powers_up_to(81).len();
    Ok(format!(
        "{} (r, q) cases over {qs} prime powers",
        sweep.cases
    ))
}

/// 5. Closed form of the q(m^2+1) family vs. the evaluators; q = 2, 3, 5 case splits.
fn family_identity() -> Outcome {
    let mut checks = 0;
    for qv in [2i64, 3, 4, 5, 8, 9, 25, 27] {
        let pp = PrimePower::from_int(&qv).unwrap();
        let p = pp.prime().get() as i64;
        for m in (1..=40i64).filter(|m| m % p != 0) {
            let (n, s) = family_value(pp, &big(m)).map_err(|e| e.to_string())?;
            let fast = dedekind_fast(&bpair(&big(m), &n));
            ensure(s == fast, || format!("q = {qv}, m = {m}: {s} != {fast}"))?;
            checks += 1;
        }
    }
    for qv in [2u32, 3, 5] {
        let pp = PrimePower::from_int(&i64::from(qv)).unwrap();
        for m in (1..=100i64).filter(|m| m % i64::from(qv) != 0) {
            let closed = closed_form(qv, &big(m)).map_err(|e| e.to_string())?;
            let (n, s) = family_value(pp, &big(m)).unwrap();
            let pair = bpair(&big(m), &n);
            let fast = dedekind_fast(&pair);
            ensure(closed == s && s == fast, || {
                format!("q = {qv}, m = {m}: {closed}, {s}, {fast}")
            })?;
            if n <= big(ORACLE_CAP as i64) {
                let naive = dedekind_naive(&pair).unwrap();
                ensure(naive == closed, || {
                    format!("q = {qv}, m = {m}: naive {naive}")
                })?;
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} family values"))
}

/// 6. inverse ∘ forward = id on the l <-> m correspondence; reference instances.
fn lemma5_round_trip() -> Outcome {
    let mut trips = 0;
    for qv in [2i64, 3, 4, 5, 8, 9, 25] {
        let pp = PrimePower::from_int(&qv).unwrap();
        let p = pp.prime().get() as i64;
        for m in (1..=200i64).filter(|m| m % p != 0) {
            let params = FamilyParams::new(pp, big(m % qv)).map_err(|e| e.to_string())?;
            let fwd = lemma5_forward(&params, &big(m)).map_err(|e| e.to_string())?;
            let l = fwd.l().clone();
            ensure(l.mod_floor(params.q()) == *params.rstar(), || {
                format!("q = {qv}, m = {m}: l = {l} mod q")
            })?;
            ensure(
                (&l - params.q_s_rq()).is_multiple_of(&params.q_squared_minus_one()),
                || format!("q = {qv}, m = {m}: l = {l} mod q^2 - 1"),
            )?;
            let back = lemma5_inverse(&params, &l).map_err(|e| e.to_string())?;
            ensure(*back.m() == big(m), || {
                format!("q = {qv}: m = {m} came back as {}", back.m())
            })?;
            trips += 1;
        }
    }
    let reference = [(3i64, 1i64, 10i64, 1i64, 6i64), (5, 1, 276, 11, 610)];
    for (qv, r, l, m, n) in reference {
        let params = FamilyParams::new(PrimePower::from_int(&qv).unwrap(), big(r)).unwrap();
        let v = lemma5_inverse(&params, &big(l)).map_err(|e| e.to_string())?;
        ensure(*v.m() == big(m) && *v.n() == big(n), || {
            format!("(q, r, l) = ({qv}, {r}, {l}) gave ({}, {})", v.m(), v.n())
        })?;
    }
    Ok(format!("{trips} round trips, 2 reference instances"))
}

fn coprime_to(rng: &mut StdRng, p: i64, hi: i64) -> i64 {
    loop {
        let x = rng.gen_range(1..=hi);
        if x % p != 0 {
            return x;
        }
    }
}

/// `± p^v · u / w` with `p ∤ u w`.
fn random_with_valuation(rng: &mut StdRng, p: i64, v: i32) -> BigRational {
    let u = coprime_to(rng, p, 1_000_000);
    let w = coprime_to(rng, p, 1_000_000);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let pv = num_traits::pow(big(p), v.unsigned_abs() as usize);
    let (num, den) = if v >= 0 {
        (big(sign * u) * pv, big(w))
    } else {
        (big(sign * u), big(w) * pv)
    };
    BigRational::new(num, den).unwrap()
}

/// 7. Every returned witness verifies; reference witnesses reproduce exactly.
fn approximator_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_dede);
    let plan: [(i64, Route, Valuations); 12] = [
        (2, Route::TwoAdicV1, |_| 1),
        (2, Route::TwoAdicV2, |_| 2),
        (2, Route::TwoAdicV3, |r| r.gen_range(3..=8)),
        (2, Route::Fractional, |r| -r.gen_range(1..=6)),
        (3, Route::ThreeAdic, |r| r.gen_range(1..=6)),
        (3, Route::Fractional, |r| -r.gen_range(1..=5)),
        (5, Route::LargePrime, |r| r.gen_range(0..=4)),
        (5, Route::Fractional, |r| -r.gen_range(1..=4)),
        (7, Route::LargePrime, |r| r.gen_range(0..=4)),
        (7, Route::Fractional, |r| -r.gen_range(1..=4)),
        (13, Route::LargePrime, |r| r.gen_range(0..=3)),
        (13, Route::Fractional, |r| -r.gen_range(1..=3)),
    ];
    let mut witnesses = 0;
    for (p, route, valuation) in plan {
        let prime = Prime::new(p as u64).unwrap();
        for _ in 0..100 {
            let v = valuation(&mut rng);
            let a = random_with_valuation(&mut rng, p, v);
            let k = rng.gen_range(1..=8);
            let target = Target::new(prime, a.clone(), k).unwrap();
            let w = approximate(&target).map_err(|e| format!("p = {p}, a = {a}, k = {k}: {e}"))?;
            ensure(w.route() == route, || {
                format!("p = {p}, a = {a}: route {} not {route}", w.route())
            })?;
            ensure(verify_witness(&w), || {
                format!("p = {p}, a = {a}, k = {k}: witness fails")
            })?;
            let recomputed = dedekind_fast(&bpair(w.m(), w.n()));
            ensure(
                vp(&(recomputed - a.clone()), prime).at_least(k.into()),
                || format!("p = {p}, a = {a}, k = {k}: valuation below k"),
            )?;
            if *w.n() <= big(ORACLE_CAP as i64) {
                let naive = dedekind_naive(&bpair(w.m(), w.n())).unwrap();
                ensure(naive == *w.s(), || {
                    format!("p = {p}, a = {a}: naive disagrees")
                })?;
            }
            witnesses += 1;
        }
    }
    let reference = [
        (5u64, "1", 2u32, "9", "164", "27/2"),
        (2, "2", 3, "2", "15", "14/3"),
        (3, "3", 2, "5", "52", "15/2"),
        (5, "1/5", 1, "11", "610", "276/5"),
    ];
    for (p, a, k, m, n, s) in reference {
        let w = approximate(&Target::parse(p, a, k).unwrap()).map_err(|e| e.to_string())?;
        let got = (w.m().to_string(), w.n().to_string(), w.s().to_string());
        ensure(got == (m.into(), n.into(), s.into()), || {
            format!("(p, a, k) = ({p}, {a}, {k}) gave {got:?}")
        })?;
    }
    Ok(format!(
        "{witnesses} random witnesses, 4 reference witnesses"
    ))
}

/// 8. Units of Z_2 and Z_3 are refused; the obstruction scan to n = 3000 is clean.
fn obstruction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0b57);
    for p in [2i64, 3] {
        let prime = Prime::new(p as u64).unwrap();
        for _ in 0..100 {
            let a = random_with_valuation(&mut rng, p, 0);
            let k = rng.gen_range(1..=8);
            let got = approximate(&Target::new(prime, a.clone(), k).unwrap());
            ensure(matches!(got, Err(Error::NotApproximable { .. })), || {
                format!("p = {p}, a = {a} was not refused")
            })?;
        }
    }
    let start = Instant::now();
    let report = scan::<ScanInt>(3000).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.violations.is_empty(), || {
        format!("{} violations", report.violations.len())
    })?;
    ensure(report.max_v2_to_unit <= Valuation::Finite(1), || {
        format!("max v2(S - u) = {}", report.max_v2_to_unit)
    })?;
    ensure(report.max_v3_to_unit <= Valuation::Finite(0), || {
        format!("max v3(S - u) = {}", report.max_v3_to_unit)
    })?;
    ensure(elapsed < Duration::from_secs(180), || {
        format!("scan took {elapsed:?}")
    })?;
    Ok(format!(
        "200 units refused; {} pairs, max v2 = {}, max v3 = {} in {elapsed:.2?}",
        report.pairs, report.max_v2_to_unit, report.max_v3_to_unit
    ))
}

/// 9. 2000-digit evaluation under 100 ms; p = 13, k = 8 witness under 1 s.
fn performance() -> Outcome {
    // n = 7^2367 has 2001 digits; m a 1990-digit number coprime to 7
    let n: BigInt = num_traits::pow(big(7), 2367);
    let mut m: BigInt = num_traits::pow(big(10), 1989) + big(12_345);
    while (&m % big(7)) == big(0) {
        m += 1;
    }
    let digits = n.to_string().len();
    ensure(digits >= 2000, || format!("n has only {digits} digits"))?;
    let pair = bpair(&m, &n);
    let start = Instant::now();
    let s = dedekind_fast(&pair);
    let eval = start.elapsed();
    ensure(s.denom() <= &n, || "denominator exceeds n".into())?;
    ensure(eval < Duration::from_millis(100), || {
        format!("{digits}-digit evaluation took {eval:?}")
    })?;

    let mut rng = StdRng::seed_from_u64(13);
    let mut worst = Duration::ZERO;
    let mut max_digits = 0;
    let mut targets: Vec<BigRational> = (0..10)
        .map(|_| {
            let v = rng.gen_range(-3..=3);
            random_with_valuation(&mut rng, 13, v)
        })
        .collect();
    // poles of order 60 push n to hundreds of digits
    targets.push(BigRational::new(big(5), num_traits::pow(big(13), 60)).unwrap());
    targets.push(random_with_valuation(&mut rng, 13, -80));
    for a in targets {
        let start = Instant::now();
        let w = approximate(&Target::new(Prime::new(13).unwrap(), a, 8).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(verify_witness(&w), || "witness fails".into())?;
        let t = start.elapsed();
        worst = worst.max(t);
        max_digits = max_digits.max(w.n().to_string().len());
    }
    ensure(max_digits >= 100, || {
        format!("largest n has {max_digits} digits")
    })?;
    ensure(worst < Duration::from_secs(1), || {
        format!("p = 13 witness took {worst:?}")
    })?;
    Ok(format!(
        "{digits}-digit S in {eval:.2?}; p = 13 witnesses (n up to {max_digits} digits) in at most {worst:.2?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 oracle equivalence (n <= 300)", oracle_equivalence),
        ("AC2 reciprocity identity (n <= 200)", reciprocity),
        (
            "AC3 n S(m,n) residue classes (n <= 2000)",
            lemma1_exhaustive,
        ),
        ("AC4 q S(r,q) ≡ r + r* (q <= 81)", eq216),
        ("AC5 q(m^2+1) family closed forms", family_identity),
        ("AC6 family correspondence round trip", lemma5_round_trip),
        ("AC7 approximator soundness", approximator_soundness),
        ("AC8 unit obstruction (p = 2, 3; n <= 3000)", obstruction),
        ("AC9 performance", performance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
