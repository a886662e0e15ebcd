//! Exact Dedekind sums and their p-adic behaviour.
//!
//! `S(m, n) = 12 s(m, n)` is evaluated exactly, either by direct summation
//! or by Euclidean descent through the reciprocity law. On top of that the
//! crate checks the residue classes of `n S(m, n)`, enumerates the families
//! `n = q(m^2 + 1)` on which `S` has a closed form, and builds explicit pairs
//! `(m, n)` whose Dedekind sum lies p-adically close to a rational target.
//!
//! Core routines are generic over the integer backing ([`Int`]); the aliases
//! below fix the two backings used in practice.

pub mod approx;
pub mod arith;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod family;
pub mod obstruction;
pub mod sum;

pub use approx::{approximate, verify_witness, Route, Target, Witness};
pub use arith::{
    crt, mod_inverse, rational_residue, vp, Congruence, Int, Prime, PrimePower, Rational, Valuation,
};
pub use congruence::{eq216_check, lemma1_check, lemma1_predict, CongruenceReport};
pub use error::{Error, Result};
pub use family::{
    closed_form, family_value, lemma5_forward, lemma5_inverse, FamilyParams, FamilyValue,
};
pub use obstruction::{residue_class_check, scan, ScanReport};
pub use sum::{dedekind_fast, dedekind_naive, n_times_s, sawtooth, DedekindPair};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational; the value type of every Dedekind sum.
pub type BigRational = Rational<BigInt>;
pub type BigPair = DedekindPair<BigInt>;

/// Fixed-width backing used by the exhaustive scans.
pub type ScanInt = i128;
pub type ScanRational = Rational<ScanInt>;
pub type ScanPair = DedekindPair<ScanInt>;
