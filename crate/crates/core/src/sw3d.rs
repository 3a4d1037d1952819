//! Three-dimensional Seiberg-Witten data of the 0-surgery `Y` on a knot,
//! read off from the Meng-Taubes relation `SW⁻·(t - t⁻¹)² = Δ_K(t²)`.
//!
//! The chamber invariants are computed as series coefficients: `SW⁻(𝔰ₖ)`
//! is the coefficient of `t^{2k}` in `Δ_K(t²)` times the expand-in-`t`
//! series of `(t - t⁻¹)⁻²`, and `SW⁺(𝔰ₖ)` uses the expand-in-`t⁻¹` series.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::knots::NormalizedAlexander;
use crate::laurent::{expand_inverse_square_wall, Direction};
use crate::rational::{self, int, Rational};

/// Labels the spin-c structure `𝔰ₖ` with `c₁(𝔰ₖ) = 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinCIndex(pub i64);

impl SpinCIndex {
    pub fn first_chern_class(self) -> i64 {
        2 * self.0
    }
}

fn chamber_value(alex: &NormalizedAlexander, k: SpinCIndex, direction: Direction) -> Result<i64> {
    let d = alex.degree();
    let target = k.first_chern_class();
    let series = expand_inverse_square_wall(direction, (target - 2 * d, target + 2 * d))?;
    let product = series.mul_poly(&alex.poly().substitute_square())?;
    let c = product.coeff(target)?;
    rational_to_int(&c)
}

fn rational_to_int(c: &Rational) -> Result<i64> {
    if !c.is_integer() {
        return Err(Error::Internal(format!(
            "Seiberg-Witten value {} is not an integer",
            rational::format(c)
        )));
    }
    c.numer()
        .to_i64()
        .ok_or_else(|| Error::Internal("Seiberg-Witten value overflows i64".into()))
}

/// `SW⁻(𝔰ₖ) = Σ_{m≥1} m·a_{k-m}`.
pub fn sw_minus(alex: &NormalizedAlexander, k: SpinCIndex) -> i64 {
    chamber_value(alex, k, Direction::ExpandInT).expect("window sized to the Alexander span")
}

/// `SW⁺(𝔰ₖ) = Σ_{m≥1} m·a_{k+m}`.
pub fn sw_plus(alex: &NormalizedAlexander, k: SpinCIndex) -> i64 {
    chamber_value(alex, k, Direction::ExpandInTInverse).expect("window sized to the Alexander span")
}

/// Small-perturbation invariant: `SW⁺` for `k > 0`, `SW⁻` for `k < 0`, and
/// at `k = 0` the value on which both chambers agree.
pub fn sw_zero(alex: &NormalizedAlexander, k: SpinCIndex) -> i64 {
    match k.0.signum() {
        1 => sw_plus(alex, k),
        -1 => sw_minus(alex, k),
        _ => {
            let (minus, plus) = (sw_minus(alex, k), sw_plus(alex, k));
            assert_eq!(minus, plus, "chambers must agree at the wall k = 0");
            minus
        }
    }
}

/// `Σ_k SW⁰(𝔰ₖ)`; only `|k| < deg Δ` contribute.
pub fn sw_sum(alex: &NormalizedAlexander) -> i64 {
    let d = alex.degree();
    (-d + 1..d).map(|k| sw_zero(alex, SpinCIndex(k))).sum()
}

/// All three chamber maps over `|k| ≤ deg Δ + 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SWSeries {
    pub minus: BTreeMap<i64, i64>,
    pub plus: BTreeMap<i64, i64>,
    pub zero: BTreeMap<i64, i64>,
    /// `zero[k] = 0` whenever `|k| ≥ support_bound`.
    pub support_bound: i64,
}

impl SWSeries {
    pub fn compute(alex: &NormalizedAlexander) -> Self {
        let bound = alex.degree();
        let range = bound + 3;
        let mut s = SWSeries {
            minus: BTreeMap::new(),
            plus: BTreeMap::new(),
            zero: BTreeMap::new(),
            support_bound: bound,
        };
        for k in -range..=range {
            let idx = SpinCIndex(k);
            s.minus.insert(k, sw_minus(alex, idx));
            s.plus.insert(k, sw_plus(alex, idx));
            s.zero.insert(k, sw_zero(alex, idx));
        }
        s
    }

    /// `SW⁻(𝔰ₖ) - SW⁺(𝔰ₖ) = k` for every computed `k`.
    pub fn wall_crossing_holds(&self) -> bool {
        self.minus
            .iter()
            .all(|(&k, &m)| self.plus.get(&k).is_some_and(|&p| m - p == k))
    }
}

/// Compares `Σ_k SW⁰(𝔰ₖ)` with both readings of `Δ''(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub sw_sum: i64,
    #[serde(with = "rational::serde_str")]
    pub delta_second: Rational,
    #[serde(with = "rational::serde_str")]
    pub half_delta_second: Rational,
    pub matches_half: bool,
    pub matches_full: bool,
}

pub fn theorem1_check(alex: &NormalizedAlexander) -> Theorem1Report {
    let sum = sw_sum(alex);
    let delta_second = alex.poly().second_derivative_at_one();
    let half = &delta_second / int(2);
    Theorem1Report {
        sw_sum: sum,
        matches_half: int(sum) == half,
        matches_full: int(sum) == delta_second,
        delta_second,
        half_delta_second: half,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matches {
    pub full: bool,
    pub half: bool,
}

/// JSON report emitted by the `sw` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sw3dReport {
    pub knot: String,
    pub sw_minus: BTreeMap<i64, i64>,
    pub sw_zero: BTreeMap<i64, i64>,
    pub sw_sum: i64,
    #[serde(with = "rational::serde_str")]
    pub delta_second_at_1: Rational,
    pub matches: Matches,
}

impl Sw3dReport {
    pub fn new(knot: impl Into<String>, alex: &NormalizedAlexander) -> Self {
        let series = SWSeries::compute(alex);
        let t1 = theorem1_check(alex);
        Self {
            knot: knot.into(),
            sw_minus: series.minus,
            sw_zero: series.zero,
            sw_sum: t1.sw_sum,
            delta_second_at_1: t1.delta_second,
            matches: Matches {
                full: t1.matches_full,
                half: t1.matches_half,
            },
        }
    }
}
