//! Exact Laurent polynomials over the rationals and chamber-directed
//! truncated expansions of `(t - t^-1)^-2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// A finite sum `Σ a_i t^i` with `i ∈ ℤ`, stored sparsely with no zero
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exponent: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        Self { coeffs }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, int(1))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Integer coefficients starting at `lowest`: `from_ints(-1, &[1, -1, 1])`
    /// is `t^-1 - 1 + t`.
    pub fn from_ints(lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (lowest + i as i64, int(c))),
        )
    }

    fn add_term(&mut self, exponent: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exponent - min_exponent`, or 0 for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// Reindexes `t ↦ t^2`.
    pub fn substitute_square(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, a)| (2 * e, a.clone())).collect(),
        }
    }

    /// Reindexes `t ↦ t^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, a)| (-e, a.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(
            !x.is_zero() || self.min_exponent().is_none_or(|e| e >= 0),
            "evaluating a Laurent polynomial with negative exponents at 0"
        );
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (&e, a)| acc + a * pow(x, e))
    }

    /// `Σ i(i-1) a_i`, the ordinary second derivative of the full Laurent
    /// expression evaluated at `t = 1`.
    pub fn second_derivative_at_one(&self) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (&i, a)| acc + a * int(i * (i - 1)))
    }

    /// `a_i = a_{-i}` for every `i`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, a)| self.coeffs.get(&-e) == Some(a))
    }

    /// Exact division in the Laurent ring. Returns `None` when `divisor`
    /// does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dmin, dmax) = (divisor.min_exponent()?, divisor.max_exponent()?);
        let Some(nmin) = self.min_exponent() else {
            return Some(Self::zero());
        };
        // Shift both to ordinary polynomials with nonzero constant term on
        // the divisor; units t^k never obstruct divisibility.
        let mut rem: BTreeMap<i64, Rational> =
            self.coeffs.iter().map(|(&e, c)| (e - nmin, c.clone())).collect();
        let lead = divisor.coeff(dmax);
        let ddeg = dmax - dmin;
        let mut quot = LaurentPoly::zero();
        while let Some((&top, c)) = rem.iter().next_back() {
            if top < ddeg {
                return None;
            }
            let q = c / &lead;
            let qe = top - ddeg;
            for (&e, d) in &divisor.coeffs {
                let target = qe + e - dmin;
                let slot = rem.entry(target).or_insert_with(Rational::zero);
                *slot -= &q * d;
                if slot.is_zero() {
                    rem.remove(&target);
                }
            }
            quot.add_term(qe, q);
        }
        Some(quot.shift(nmin - dmin))
    }

    /// Builds from the canonical JSON encoding.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializing a LaurentPoly cannot fail")
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{}", rational::format(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}", rational::format(&mag))?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&int(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<i64, Rational>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    map.serialize_entry(&e.to_string(), &rational::format(c))?;
                }
                map.end()
            }
        }
        let mut st = s.serialize_struct("LaurentPoly", 1)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            coeffs: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw.coeffs {
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {e:?}")))?;
            let c = rational::parse(&c).map_err(D::Error::custom)?;
            if p.coeffs.contains_key(&e) {
                return Err(D::Error::custom(format!("duplicate exponent {e}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Which geometric-series expansion of `(t - t^-1)^-2` a chamber uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `Σ_{m≥1} m t^{2m}`: convergent for small `|t|`.
    ExpandInT,
    /// `Σ_{m≥1} m t^{-2m}`: convergent for large `|t|`.
    ExpandInTInverse,
}

/// A formal series known exactly on the exponent window `[lo, hi]` and
/// unknown outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberSeries {
    direction: Direction,
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, Rational>,
}

impl ChamberSeries {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, exponent: i64) -> bool {
        (self.lo..=self.hi).contains(&exponent)
    }

    pub fn coeff(&self, exponent: i64) -> Result<Rational> {
        if !self.contains(exponent) {
            return Err(Error::OutsideWindow {
                exponent,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.coeffs.get(&exponent).cloned().unwrap_or_else(Rational::zero))
    }

    /// The known part as a Laurent polynomial.
    pub fn truncation(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, c)| (e, c.clone())))
    }

    /// Product with a Laurent polynomial. The result is only known where
    /// every contributing coefficient of `self` is, so the window shrinks by
    /// the span of `p`.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<ChamberSeries> {
        let (Some(pmin), Some(pmax)) = (p.min_exponent(), p.max_exponent()) else {
            return Ok(ChamberSeries {
                direction: self.direction,
                lo: self.lo,
                hi: self.hi,
                coeffs: BTreeMap::new(),
            });
        };
        let (lo, hi) = (self.lo + pmax, self.hi + pmin);
        if lo > hi {
            return Err(Error::Precondition(format!(
                "window [{}, {}] too narrow for a factor of span {}",
                self.lo,
                self.hi,
                pmax - pmin
            )));
        }
        let mut coeffs = BTreeMap::new();
        for e in lo..=hi {
            let mut acc = Rational::zero();
            for (pe, pc) in p.terms() {
                let c = self.coeff(e - pe)?;
                acc += pc * c;
            }
            if !acc.is_zero() {
                coeffs.insert(e, acc);
            }
        }
        Ok(ChamberSeries {
            direction: self.direction,
            lo,
            hi,
            coeffs,
        })
    }
}

/// Expansion of `(t - t^-1)^-2` in the given chamber, truncated to
/// `[window.0, window.1]`.
pub fn expand_inverse_square_wall(direction: Direction, window: (i64, i64)) -> Result<ChamberSeries> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::Precondition(format!("empty window [{lo}, {hi}]")));
    }
    let mut coeffs = BTreeMap::new();
    for e in lo..=hi {
        if e % 2 != 0 {
            continue;
        }
        let m = match direction {
            Direction::ExpandInT => e / 2,
            Direction::ExpandInTInverse => -e / 2,
        };
        if m >= 1 {
            coeffs.insert(e, int(m));
        }
    }
    Ok(ChamberSeries {
        direction,
        lo,
        hi,
        coeffs,
    })
}

/// `(t - t^-1)^2 = t^2 - 2 + t^-2`.
pub fn wall_square() -> LaurentPoly {
    LaurentPoly::from_ints(-2, &[1, 0, -2, 0, 1])
}
