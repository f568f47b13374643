//! Zeta numbers of posets: `sum_i (-1)^(|P|-i) d_i (zeta(i+1) - 1 - 2^-(i+1))`
//! for the chain-basis vector `(d_i)` of `P`.
//!
//! Each tail `zeta(s) - 1 - 2^-s = sum_{n>=3} n^-s` is evaluated in exact
//! rational arithmetic: a short partial sum followed by the Euler-Maclaurin
//! expansion of the remainder, whose truncation error for real `s` is
//! bounded by the first omitted term. Results are rounded once to binary
//! fixed point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{SeriesError, ZetaError};
use crate::lang::Term;
use crate::poset::{Limits, Poset};
use crate::series::ChainSeries;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Binary fixed-point real `mantissa / 2^frac_bits`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Real {
    mantissa: BigInt,
    frac_bits: u32,
}

impl Real {
    fn round_from(x: &BigRational, frac_bits: u32, up: bool) -> Self {
        let scaled = x * BigRational::from_integer(BigInt::one() << frac_bits);
        let mantissa = if up {
            scaled.ceil().to_integer()
        } else {
            scaled.round().to_integer()
        };
        Self {
            mantissa,
            frac_bits,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.frac_bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    /// Decimal expansion rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten_pow = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.to_rational() * BigRational::from_integer(ten_pow.clone()))
            .round()
            .to_integer();
        let sign = if scaled.sign() == Sign::Minus {
            "-"
        } else {
            ""
        };
        let (whole, frac) = scaled.abs().div_rem(&ten_pow);
        if digits == 0 {
            return format!("{sign}{whole}");
        }
        format!(
            "{sign}{whole}.{:0>width$}",
            frac.to_string(),
            width = digits
        )
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(12)))
    }
}

/// A poset's zeta number with a certified absolute error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaNumber {
    pub value: Real,
    pub error_bound: Real,
    pub source_dvector: ChainSeries,
}

/// Value of `sum_{n>=3} n^-s` with its certified error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailValue {
    pub value: Real,
    pub error_bound: Real,
}

fn tolerance(tol: f64) -> Result<BigRational, ZetaError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(ZetaError::BadTolerance);
    }
    BigRational::from_float(tol).ok_or(ZetaError::BadTolerance)
}

/// Fractional bits so that one rounding costs well under `tol`.
fn bits_for(tol: &BigRational) -> u32 {
    let mut bits = 8;
    let mut unit = BigRational::one();
    while unit >= *tol {
        unit /= BigInt::from(2);
        bits += 1;
    }
    bits
}

fn inverse_power(n: usize, exponent: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n).pow(exponent))
}

/// Bernoulli numbers `B_0 ..= B_max` (with `B_1 = -1/2`).
fn bernoulli(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    for m in 0..=max {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Exact rational approximation of `sum_{n>=3} n^-s` and a bound on its error.
fn tail_rational(s: u32, tol: &BigRational) -> (BigRational, BigRational) {
    let mut cutoff = 8usize;
    loop {
        let n = cutoff;
        let bern = bernoulli(2 * n + 2);
        let rising = |len: usize| -> BigRational {
            let product: BigInt = (0..len).map(|t| BigInt::from(s as usize + t)).product();
            BigRational::from_integer(product)
        };
        let factorial = |k: usize| -> BigRational {
            BigRational::from_integer((1..=k).map(BigInt::from).product::<BigInt>())
        };
        // T_j = B_2j / (2j)! * s(s+1)...(s+2j-2) * N^-(s+2j-1)
        let correction = |j: usize| -> BigRational {
            &bern[2 * j] / factorial(2 * j)
                * rising(2 * j - 1)
                * inverse_power(n, s + 2 * j as u32 - 1)
        };
        let mut value: BigRational = (3..n).map(|k| inverse_power(k, s)).sum();
        value += inverse_power(n, s - 1) / BigRational::from_integer(BigInt::from(s - 1));
        value += inverse_power(n, s) / BigRational::from_integer(BigInt::from(2));
        for p in 0..n {
            let bound = correction(p + 1).abs();
            if &bound * BigRational::from_integer(BigInt::from(2)) < *tol {
                return (value, bound);
            }
            value += correction(p + 1);
        }
        cutoff *= 2;
    }
}

/// `zeta(s) - 1 - 2^-s` to absolute accuracy `tol`.
pub fn zeta_tail(s: u32, tol: f64) -> Result<TailValue, ZetaError> {
    if s < 2 {
        return Err(ZetaError::ExponentTooSmall(s));
    }
    let tol = tolerance(tol)?;
    let (value, bound) = tail_rational(s, &tol);
    let bits = bits_for(&tol);
    let rounded = Real::round_from(&value, bits, false);
    let rounding = (rounded.to_rational() - &value).abs();
    Ok(TailValue {
        value: rounded,
        error_bound: Real::round_from(&(bound + rounding), bits + 8, true),
    })
}

/// Signed zeta sum of a chain-basis vector, sign `(-1)^(k-i)` with `k` the
/// top supported index.
pub fn zeta_number_from_series(f: &ChainSeries, tol: f64) -> Result<ZetaNumber, ZetaError> {
    let tol_q = tolerance(tol)?;
    let k = f.max_index().ok_or(SeriesError::ZeroSeries)?;
    let nonzero = f.iter().count();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut total = BigRational::zero();
    let mut error = BigRational::zero();
    for (i, coeff) in f.iter() {
        let weight = BigRational::from_integer(coeff.abs());
        // Half the tolerance is split evenly across terms, the rest covers rounding.
        let share = &tol_q * &half / (BigRational::from_integer(BigInt::from(nonzero)) * &weight);
        let (value, bound) = tail_rational(i as u32 + 1, &share);
        let signed = BigRational::from_integer(coeff.clone()) * value;
        if (k - i) % 2 == 0 {
            total += signed;
        } else {
            total -= signed;
        }
        error += weight * bound;
    }
    let bits = bits_for(&tol_q);
    let value = Real::round_from(&total, bits, false);
    error += (value.to_rational() - &total).abs();
    debug_assert!(error < tol_q);
    Ok(ZetaNumber {
        value,
        error_bound: Real::round_from(&error, bits + 8, true),
        source_dvector: f.clone(),
    })
}

/// Zeta number of a poset through its chain-basis vector.
pub fn poset_zeta_number(
    poset: &Poset,
    tol: f64,
    limits: &Limits,
) -> Result<ZetaNumber, ZetaError> {
    let f = ChainSeries::from_poset(poset, limits)?;
    zeta_number_from_series(&f, tol)
}

/// Checks that the poset route and the series route agree for `tP * tQ`,
/// `D(tP)` and `D(tQ)`: identical d-vectors and identical values.
pub fn check_transport(tp: &Term, tq: &Term, tol: f64, limits: &Limits) -> Result<bool, ZetaError> {
    let same =
        |a: &ZetaNumber, b: &ZetaNumber| a.source_dvector == b.source_dvector && a.value == b.value;
    let star_term = Term::star([tp.clone(), tq.clone()]);
    let by_poset = poset_zeta_number(&star_term.eval_poset(), tol, limits)?;
    let by_series = zeta_number_from_series(&tp.eval_series().star(&tq.eval_series()), tol)?;
    if !same(&by_poset, &by_series) {
        return Ok(false);
    }
    for t in [tp, tq] {
        let by_poset = poset_zeta_number(&t.eval_poset().d_handle(), tol, limits)?;
        let by_series = zeta_number_from_series(&t.eval_series().d_op(), tol)?;
        if !same(&by_poset, &by_series) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_rational().cmp(&other.to_rational()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from mpmath at 50 significant digits.
    const TAIL_2: &str = "0.3949340668482264364724151666460251892189499012068";
    const TAIL_3: &str = "0.0770569031595942853997381615114499907649862923405";
    const TAIL_4: &str = "0.019823233711138191516003696541167902774750951918727";
    const TAIL_5: &str = "0.0056777551433699263313654864570341680570809195019138";
    const DIAMOND: &str = "-0.0084677234243983388532727236270995666605891129148992";

    fn decimal(text: &str) -> BigRational {
        let negative = text.starts_with('-');
        let digits = text.trim_start_matches('-');
        let (whole, frac) = digits.split_once('.').unwrap();
        let num: BigInt = format!("{whole}{frac}").parse().unwrap();
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let value = BigRational::new(num, den);
        if negative {
            -value
        } else {
            value
        }
    }

    fn close(a: &Real, reference: &BigRational, tol: f64) -> bool {
        (a.to_rational() - reference).abs() < BigRational::from_float(tol).unwrap()
    }

    /// zeta(3) by the alternating central-binomial series
    /// 5/2 sum (-1)^(n+1) / (n^3 C(2n, n)), truncated with its alternating bound.
    fn zeta3_alternating(terms: usize) -> (BigRational, BigRational) {
        let mut sum = BigRational::zero();
        let mut central = BigInt::one();
        let term = |n: usize, central: &BigInt| {
            BigRational::new(
                BigInt::from(5),
                BigInt::from(2) * BigInt::from(n).pow(3) * central,
            )
        };
        for n in 1..=terms {
            central = central * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n);
            let t = term(n, &central);
            if n % 2 == 1 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        let next = terms + 1;
        let next_central = central * BigInt::from(2 * (2 * next - 1)) / BigInt::from(next);
        (sum, term(next, &next_central))
    }

    /// Plain partial sum with the integral tail bound N^(1-s)/(s-1).
    fn plain_tail(s: u32, tol: f64) -> BigRational {
        let tol = BigRational::from_float(tol).unwrap();
        let mut n = 3usize;
        let mut sum = BigRational::zero();
        loop {
            sum += inverse_power(n, s);
            let bound = inverse_power(n, s - 1) / BigRational::from_integer(BigInt::from(s - 1));
            if bound < tol {
                return sum;
            }
            n += 1;
        }
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(8);
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn tail_at_two_matches_pi_squared() {
        let tail = zeta_tail(2, 1e-12).unwrap();
        let pi = std::f64::consts::PI;
        assert!((tail.value.to_f64() - (pi * pi / 6.0 - 1.25)).abs() < 1e-12);
        assert!(close(&tail.value, &decimal(TAIL_2), 1e-12));
        assert!(tail.error_bound.to_f64() < 1e-12);
    }

    #[test]
    fn tail_at_three_matches_alternating_series() {
        let (zeta3, bound) = zeta3_alternating(40);
        assert!(bound < BigRational::from_float(1e-20).unwrap());
        let reference = zeta3 - BigRational::new(BigInt::from(9), BigInt::from(8));
        let tail = zeta_tail(3, 1e-14).unwrap();
        assert!(close(&tail.value, &reference, 1e-14));
        assert!(close(&tail.value, &decimal(TAIL_3), 1e-14));
    }

    #[test]
    fn tails_against_references() {
        for (s, text) in [(4, TAIL_4), (5, TAIL_5)] {
            let tail = zeta_tail(s, 1e-12).unwrap();
            assert!(close(&tail.value, &decimal(text), 1e-12), "s = {s}");
        }
        for s in 8..=12 {
            let tail = zeta_tail(s, 1e-12).unwrap();
            assert!(close(&tail.value, &plain_tail(s, 1e-13), 2e-12), "s = {s}");
        }
    }

    #[test]
    fn large_exponent_is_dominated_by_three() {
        let tail = zeta_tail(30, 1e-20).unwrap();
        let third = inverse_power(3, 30);
        let gap = tail.value.to_rational() - &third;
        // Next term 4^-30 is about 8.7e-19.
        assert!(gap > BigRational::zero());
        assert!(gap < BigRational::from_float(1e-18).unwrap());
    }

    #[test]
    fn tails_decrease_in_s() {
        for s in 2..=10 {
            let lower = zeta_tail(s + 1, 1e-12).unwrap();
            let upper = zeta_tail(s, 1e-12).unwrap();
            assert!(lower.value < upper.value);
        }
    }

    #[test]
    fn tail_rejects_bad_arguments() {
        assert_eq!(zeta_tail(1, 1e-12), Err(ZetaError::ExponentTooSmall(1)));
        assert_eq!(zeta_tail(2, 0.0), Err(ZetaError::BadTolerance));
        assert_eq!(zeta_tail(2, f64::NAN), Err(ZetaError::BadTolerance));
    }

    #[test]
    fn chain_zeta_numbers() {
        let limits = Limits::default();
        let two = poset_zeta_number(&Poset::chain(2).unwrap(), 1e-12, &limits).unwrap();
        assert!(close(&two.value, &decimal(TAIL_3), 1e-12));
        assert!(two.error_bound.to_f64() <= 1e-12);
        let one = poset_zeta_number(&Poset::chain(1).unwrap(), 1e-12, &limits).unwrap();
        assert!(close(&one.value, &decimal(TAIL_2), 1e-12));
    }

    #[test]
    fn diamond_zeta_number() {
        let limits = Limits::default();
        let diamond = Poset::chain(1).unwrap().d_handle();
        let z = poset_zeta_number(&diamond, 1e-12, &limits).unwrap();
        assert_eq!(z.source_dvector.to_text(), "z3 + 2*z4");
        let expected = -decimal(TAIL_4) + decimal(TAIL_5) * BigRational::from_integer(2.into());
        assert!(close(&z.value, &expected, 1e-12));
        assert!(close(&z.value, &decimal(DIAMOND), 1e-12));
    }

    #[test]
    fn deterministic_and_series_keyed() {
        let limits = Limits::default();
        let x = Poset::chain(1)
            .unwrap()
            .d_handle()
            .concat(&Poset::chain(1).unwrap());
        let y = Poset::chain(1)
            .unwrap()
            .concat(&Poset::chain(1).unwrap().d_handle());
        let a = poset_zeta_number(&x, 1e-12, &limits).unwrap();
        let b = poset_zeta_number(&x, 1e-12, &limits).unwrap();
        let c = poset_zeta_number(&y, 1e-12, &limits).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn transport_examples() {
        let limits = Limits::default();
        let t = |s: &str| s.parse::<Term>().unwrap();
        assert!(check_transport(&t("c"), &t("c"), 1e-12, &limits).unwrap());
        assert!(check_transport(&t("D(c)"), &t("c2"), 1e-12, &limits).unwrap());
        assert_eq!(
            t("D(c)")
                .eval_series()
                .star(&t("c2").eval_series())
                .to_text(),
            "z5 + 2*z6"
        );
        assert_eq!(t("D(c3)").eval_series().to_text(), "3*z5 + 4*z6");
        assert!(check_transport(&t("c3"), &t("c"), 1e-12, &limits).unwrap());
    }

    #[test]
    fn decimal_rendering() {
        let tail = zeta_tail(2, 1e-15).unwrap();
        assert_eq!(tail.value.to_decimal(12), "0.394934066848");
        let z = zeta_number_from_series(&"z3 + 2*z4".parse().unwrap(), 1e-15).unwrap();
        assert_eq!(z.value.to_decimal(6), "-0.008468");
        assert!(zeta_number_from_series(&ChainSeries::zero(), 1e-12).is_err());
    }
}
