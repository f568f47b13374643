//! Order series in the chain basis `z_n = x^n / (1 - x)^(n + 1)`.
//!
//! A [`ChainSeries`] is a finitely supported integer vector `(d_u)` standing
//! for `sum d_u z_u`. Its coefficient of `x^m` is `sum d_u C(m, u)`, the
//! strict order polynomial evaluated at `m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;
use crate::poset::{count_nonstrict_maps, count_strict_maps, Limits, Poset};

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Sparse chain-basis vector with zero coefficients suppressed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSeries {
    coeffs: BTreeMap<usize, BigInt>,
}

/// Ehrhart numerator of the order polytope, `h*_0 .. h*_deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarVector {
    pub entries: Vec<BigInt>,
}

impl ChainSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The delta vector at `n`, i.e. the series of the `n`-chain.
    pub fn zeta_chain(n: usize) -> Result<Self, SeriesError> {
        Self::from_coeffs([(n, BigInt::one())])
    }

    /// Sums repeated indices and drops zeros; rejects index 0.
    pub fn from_coeffs<C: Into<BigInt>>(
        pairs: impl IntoIterator<Item = (usize, C)>,
    ) -> Result<Self, SeriesError> {
        let mut out = Self::zero();
        for (u, c) in pairs {
            if u == 0 {
                return Err(SeriesError::ZeroIndex);
            }
            out.add_term(u, c.into());
        }
        Ok(out)
    }

    fn add_term(&mut self, u: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(u).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&u);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, u: usize) -> BigInt {
        self.coeffs.get(&u).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&u, c)| (u, c))
    }

    pub fn min_index(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// `(i, d_i, k, d_k)` for the lowest and highest supported indices.
    pub fn endpoints(&self) -> Option<(usize, &BigInt, usize, &BigInt)> {
        let (&i, di) = self.coeffs.iter().next()?;
        let (&k, dk) = self.coeffs.iter().next_back()?;
        Some((i, di, k, dk))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&u, c)| (u, c * factor)).collect(),
        }
    }

    /// Series of a concatenation: bilinear extension of `z_k * z_m = z_(k+m)`.
    pub fn star(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&k, a) in &self.coeffs {
            for (&m, b) in &other.coeffs {
                out.add_term(k + m, a * b);
            }
        }
        out
    }

    /// Series of the handle operation: linear extension of
    /// `D(z_n) = n z_(n+2) + (n+1) z_(n+3)`.
    pub fn d_op(&self) -> Self {
        let mut out = Self::zero();
        for (&n, c) in &self.coeffs {
            out.add_term(n + 2, c * BigInt::from(n));
            out.add_term(n + 3, c * BigInt::from(n + 1));
        }
        out
    }

    /// Closed form for the disjoint union of a `k`-chain and an `m`-chain:
    /// `sum_{n=0}^{k} C(m+n, k) C(k, n) z_(m+n)`.
    pub fn union_chains(k: usize, m: usize) -> Result<Self, SeriesError> {
        if k == 0 || m == 0 {
            return Err(SeriesError::ZeroIndex);
        }
        Self::from_coeffs((0..=k).map(|n| {
            let c = binomial(m + n, k) * binomial(k, n);
            (m + n, BigInt::from(c))
        }))
    }

    /// Coefficient of `x^m`: `sum_u d_u C(m, u)`.
    pub fn order_polynomial_value(&self, m: usize) -> BigInt {
        self.coeffs
            .iter()
            .take_while(|(&u, _)| u <= m)
            .map(|(&u, c)| c * BigInt::from(binomial(m, u)))
            .sum()
    }

    /// Chain-basis vector of an arbitrary poset, from Newton forward
    /// differences of its strict order polynomial at `0..=|X|`.
    pub fn from_poset(poset: &Poset, limits: &Limits) -> Result<Self, SeriesError> {
        let n = poset.size();
        if n > limits.series_size {
            return Err(crate::error::PosetError::TooLarge {
                operation: "from_poset",
                size: n,
                limit: limits.series_size,
            }
            .into());
        }
        let values: Vec<BigInt> = (0..=n)
            .map(|m| BigInt::from(count_strict_maps(poset, m)))
            .collect();
        let mut out = Self::zero();
        for u in 1..=n {
            let mut diff = BigInt::zero();
            for (j, v) in values.iter().enumerate().take(u + 1) {
                let term = BigInt::from(binomial(u, j)) * v;
                if (u - j) % 2 == 0 {
                    diff += term;
                } else {
                    diff -= term;
                }
            }
            out.add_term(u, diff);
        }
        Ok(out)
    }

    /// `sum_u (-1)^(k-u) d_u` with `k` the top supported index.
    pub fn alternating_sum(&self) -> Result<BigInt, SeriesError> {
        let k = self.max_index().ok_or(SeriesError::ZeroSeries)?;
        Ok(self
            .coeffs
            .iter()
            .map(|(&u, c)| if (k - u) % 2 == 0 { c.clone() } else { -c })
            .sum())
    }

    /// Canonical text, e.g. `882*z16 + 7995*z17`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            coeffs: self
                .coeffs
                .iter()
                .map(|(u, c)| (u.to_string(), c.to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self, SeriesError> {
        let mut pairs = Vec::with_capacity(json.coeffs.len());
        for (key, value) in &json.coeffs {
            let u: usize = key
                .trim()
                .parse()
                .map_err(|_| SeriesError::Syntax(format!("bad index {key:?}")))?;
            let c: BigInt = value
                .trim()
                .parse()
                .map_err(|_| SeriesError::Syntax(format!("bad coefficient {value:?}")))?;
            pairs.push((u, c));
        }
        Self::from_coeffs(pairs)
    }
}

/// Number of non-strict maps from the `n`-chain into the `m`-chain,
/// the `x^m` coefficient of `x / (1 - x)^(n + 1)`.
pub fn nonstrict_chain_count(n: usize, m: usize) -> Result<BigUint, SeriesError> {
    if n == 0 {
        return Err(SeriesError::ZeroIndex);
    }
    if m == 0 {
        return Ok(BigUint::zero());
    }
    Ok(binomial(m + n - 1, n))
}

/// h*-vector of the order polytope, solved exactly from the non-strict
/// order series `sum_m Ω(m) x^m = x h*(x) / (1 - x)^(|X| + 1)`.
pub fn hstar_from_nonstrict(poset: &Poset, limits: &Limits) -> Result<HStarVector, SeriesError> {
    let n = poset.size();
    if n > limits.series_size {
        return Err(crate::error::PosetError::TooLarge {
            operation: "hstar_from_nonstrict",
            size: n,
            limit: limits.series_size,
        }
        .into());
    }
    // omega[j] = Ω(j + 1); one extra value checks that h*_(n+1) vanishes.
    let omega: Vec<BigInt> = (1..=n + 2)
        .map(|m| BigInt::from(count_nonstrict_maps(poset, m)))
        .collect();
    let solve = |j: usize| -> BigInt {
        (0..=j.min(n + 1))
            .map(|t| {
                let term = BigInt::from(binomial(n + 1, t)) * &omega[j - t];
                if t % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    };
    let overflow = solve(n + 1);
    if !overflow.is_zero() {
        return Err(SeriesError::InconsistentSolve(format!(
            "h*_{} = {overflow}, expected 0",
            n + 1
        )));
    }
    let mut entries: Vec<BigInt> = (0..=n).map(solve).collect();
    while entries.len() > 1 && entries.last().is_some_and(Zero::is_zero) {
        entries.pop();
    }
    if !entries[0].is_one() {
        return Err(SeriesError::InconsistentSolve(format!(
            "h*_0 = {}, expected 1",
            entries[0]
        )));
    }
    Ok(HStarVector { entries })
}

impl Add for &ChainSeries {
    type Output = ChainSeries;
    fn add(self, rhs: &ChainSeries) -> ChainSeries {
        let mut out = self.clone();
        for (&u, c) in &rhs.coeffs {
            out.add_term(u, c.clone());
        }
        out
    }
}

impl Add for ChainSeries {
    type Output = ChainSeries;
    fn add(self, rhs: ChainSeries) -> ChainSeries {
        &self + &rhs
    }
}

impl Neg for &ChainSeries {
    type Output = ChainSeries;
    fn neg(self) -> ChainSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &ChainSeries {
    type Output = ChainSeries;
    fn sub(self, rhs: &ChainSeries) -> ChainSeries {
        self + &(-rhs)
    }
}

impl fmt::Display for ChainSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (pos, (u, c)) in self.coeffs.iter().enumerate() {
            let magnitude = c.abs();
            match (pos, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude.is_one() {
                write!(f, "z{u}")?;
            } else {
                write!(f, "{magnitude}*z{u}")?;
            }
        }
        Ok(())
    }
}

/// Text form `N*zK + ...` (signs, spacing and `zK` without coefficient
/// accepted) or the JSON form `{"coeffs": {"K": "N"}}`.
impl FromStr for ChainSeries {
    type Err = SeriesError;

    fn from_str(text: &str) -> Result<Self, SeriesError> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let json: SeriesJson =
                serde_json::from_str(trimmed).map_err(|e| SeriesError::Syntax(e.to_string()))?;
            return Self::from_json(&json);
        }
        let compact: String = trimmed.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(SeriesError::Syntax("empty input".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut pairs = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' if !first => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                other => {
                    return Err(SeriesError::Syntax(format!(
                        "expected '+' or '-', found {:?}",
                        other as char
                    )))
                }
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let (coeff, index) = match term.split_once('*') {
                Some((c, z)) => (
                    c.parse::<BigInt>()
                        .map_err(|_| SeriesError::Syntax(format!("bad coefficient {c:?}")))?,
                    z,
                ),
                None => (BigInt::one(), term),
            };
            let digits = index
                .strip_prefix('z')
                .ok_or_else(|| SeriesError::Syntax(format!("expected zK, found {index:?}")))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(SeriesError::Syntax(format!("bad index in {term:?}")));
            }
            let u: usize = digits
                .parse()
                .map_err(|_| SeriesError::Syntax(format!("index too large in {term:?}")))?;
            pairs.push((u, if negative { -coeff } else { coeff }));
        }
        Self::from_coeffs(pairs)
    }
}

/// JSON form of a series: coefficients keyed by index, as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub coeffs: BTreeMap<String, String>,
}

impl Serialize for ChainSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChainSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = SeriesJson::deserialize(deserializer)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}
