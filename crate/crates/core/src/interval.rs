//! Outward-rounded interval arithmetic on top of `astro-float`.
//!
//! The library rounds to nearest, so every operation widens its result by a
//! relative bound of a few units in the last place. Transcendental functions
//! get a larger allowance.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::error::{Error, Result};
use crate::rational::Rational;

const RM: RoundingMode = RoundingMode::ToEven;
const BASIC_SLACK_BITS: usize = 4;
const TRANSCENDENTAL_SLACK_BITS: usize = 24;

/// Working precision plus the constants cache.
pub struct Ctx {
    p: usize,
    cc: Consts,
    eps_basic: BigFloat,
    eps_trans: BigFloat,
}

impl std::fmt::Debug for Ctx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ctx").field("bits", &self.p).finish()
    }
}

fn pow2_neg(k: usize, p: usize) -> BigFloat {
    let two = BigFloat::from_i64(2, p);
    BigFloat::from_i64(1, p).div(&two.powi(k, p, RM), p, RM)
}

impl Ctx {
    /// Context for `digits` significant decimal digits.
    pub fn with_digits(digits: u32) -> Result<Self> {
        if digits == 0 || digits > 10_000 {
            return Err(Error::Precondition(format!(
                "precision {digits} digits is out of range"
            )));
        }
        let p = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16;
        let cc = Consts::new().map_err(|e| Error::Internal(format!("float constants: {e:?}")))?;
        Ok(Self {
            p,
            cc,
            eps_basic: pow2_neg(p - BASIC_SLACK_BITS, p),
            eps_trans: pow2_neg(p - TRANSCENDENTAL_SLACK_BITS, p),
        })
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    fn check(&self, x: BigFloat, what: &str) -> Result<BigFloat> {
        if x.is_nan() || x.is_inf() {
            return Err(Error::Internal(format!("{what} left the representable range")));
        }
        Ok(x)
    }

    fn widen(&self, lo: BigFloat, hi: BigFloat, eps: &BigFloat) -> Result<Interval> {
        let p = self.p;
        let dl = lo.abs().mul(eps, p, RM);
        let dh = hi.abs().mul(eps, p, RM);
        Ok(Interval {
            lo: self.check(lo.sub(&dl, p, RM), "lower bound")?,
            hi: self.check(hi.add(&dh, p, RM), "upper bound")?,
        })
    }

    fn basic(&self, lo: BigFloat, hi: BigFloat) -> Result<Interval> {
        self.widen(lo, hi, &self.eps_basic)
    }

    fn trans(&self, lo: BigFloat, hi: BigFloat) -> Result<Interval> {
        self.widen(lo, hi, &self.eps_trans)
    }

    pub fn int(&self, n: i64) -> Interval {
        let x = BigFloat::from_i64(n, self.p);
        Interval { lo: x.clone(), hi: x }
    }

    pub fn rational(&mut self, q: &Rational) -> Result<Interval> {
        let parse = |s: String, ctx: &mut Self| {
            let x = BigFloat::parse(&s, Radix::Dec, ctx.p, RM, &mut ctx.cc);
            ctx.check(x, "rational input")
        };
        let n = parse(q.numer().to_string(), self)?;
        let d = parse(q.denom().to_string(), self)?;
        let n = self.basic(n.clone(), n)?;
        let d = self.basic(d.clone(), d)?;
        self.div(&n, &d)
    }

    pub fn add(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        let p = self.p;
        self.basic(a.lo.add(&b.lo, p, RM), a.hi.add(&b.hi, p, RM))
    }

    pub fn sub(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        let p = self.p;
        self.basic(a.lo.sub(&b.hi, p, RM), a.hi.sub(&b.lo, p, RM))
    }

    pub fn mul(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        let p = self.p;
        let c = [
            a.lo.mul(&b.lo, p, RM),
            a.lo.mul(&b.hi, p, RM),
            a.hi.mul(&b.lo, p, RM),
            a.hi.mul(&b.hi, p, RM),
        ];
        let (lo, hi) = min_max(&c);
        self.basic(lo, hi)
    }

    pub fn div(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        if b.contains_zero() {
            return Err(Error::Internal(
                "interval division by an interval containing zero".into(),
            ));
        }
        let p = self.p;
        let c = [
            a.lo.div(&b.lo, p, RM),
            a.lo.div(&b.hi, p, RM),
            a.hi.div(&b.lo, p, RM),
            a.hi.div(&b.hi, p, RM),
        ];
        let (lo, hi) = min_max(&c);
        self.basic(lo, hi)
    }

    pub fn exp(&mut self, a: &Interval) -> Result<Interval> {
        let p = self.p;
        let lo = a.lo.exp(p, RM, &mut self.cc);
        let hi = a.hi.exp(p, RM, &mut self.cc);
        let out = self.trans(lo, hi)?;
        Ok(out.clamp_nonnegative())
    }

    pub fn ln(&mut self, a: &Interval) -> Result<Interval> {
        if !a.is_positive() {
            return Err(Error::Internal("logarithm of a non-positive interval".into()));
        }
        let p = self.p;
        let lo = a.lo.ln(p, RM, &mut self.cc);
        let hi = a.hi.ln(p, RM, &mut self.cc);
        self.trans(lo, hi)
    }

    pub fn sqrt(&self, a: &Interval) -> Result<Interval> {
        if a.hi.is_negative() {
            return Err(Error::Internal("square root of a negative interval".into()));
        }
        let p = self.p;
        let lo = if a.lo.is_negative() {
            BigFloat::from_i64(0, p)
        } else {
            a.lo.sqrt(p, RM)
        };
        let out = self.trans(lo, a.hi.sqrt(p, RM))?;
        Ok(out.clamp_nonnegative())
    }

    pub fn abs(&self, a: &Interval) -> Interval {
        if !a.lo.is_negative() {
            a.clone()
        } else if a.hi.is_negative() || a.hi.is_zero() {
            Interval {
                lo: a.hi.neg(),
                hi: a.lo.neg(),
            }
        } else {
            let hi = if a.lo.neg() > a.hi {
                a.lo.neg()
            } else {
                a.hi.clone()
            };
            Interval {
                lo: BigFloat::from_i64(0, self.p),
                hi,
            }
        }
    }

    /// Decimal rendering of the midpoint to about `digits` digits.
    pub fn render(&mut self, a: &Interval, digits: u32) -> String {
        let p = self.p;
        let mut mid = a.lo.add(&a.hi, p, RM).div(&BigFloat::from_i64(2, p), p, RM);
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        if mid.set_precision(bits.max(64), RM).is_err() {
            return "NaN".into();
        }
        mid.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".into())
    }
}

fn min_max(c: &[BigFloat; 4]) -> (BigFloat, BigFloat) {
    let mut lo = c[0].clone();
    let mut hi = c[0].clone();
    for x in &c[1..] {
        if x.partial_cmp(&lo) == Some(Ordering::Less) {
            lo = x.clone();
        }
        if x.partial_cmp(&hi) == Some(Ordering::Greater) {
            hi = x.clone();
        }
    }
    (lo, hi)
}

/// A closed interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

impl Interval {
    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn point(x: BigFloat) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn is_point_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive_strict() && !self.hi.is_negative_strict()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive_strict()
    }

    fn clamp_nonnegative(mut self) -> Self {
        if self.lo.is_negative() {
            self.lo = BigFloat::from_i64(0, self.lo.precision().unwrap_or(64));
        }
        self
    }
}

trait StrictSign {
    fn is_positive_strict(&self) -> bool;
    fn is_negative_strict(&self) -> bool;
}

impl StrictSign for BigFloat {
    fn is_positive_strict(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }
    fn is_negative_strict(&self) -> bool {
        !self.is_zero() && self.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn close(ctx: &mut Ctx, a: &Interval, s: &str) -> bool {
        let x = BigFloat::parse(s, Radix::Dec, ctx.p, RM, &mut ctx.cc);
        a.lo <= x && x <= a.hi
    }

    #[test]
    fn encloses_known_constants() {
        let mut ctx = Ctx::with_digits(60).unwrap();
        let one = ctx.int(1);
        let e = ctx.exp(&one).unwrap();
        assert!(close(
            &mut ctx,
            &e,
            "2.71828182845904523536028747135266249775724709369995957496696762772"
        ));
        let two = ctx.int(2);
        let s = ctx.sqrt(&two).unwrap();
        assert!(close(
            &mut ctx,
            &s,
            "1.41421356237309504880168872420969807856967187537694807317667973799"
        ));
        let l = ctx.ln(&two).unwrap();
        assert!(close(
            &mut ctx,
            &l,
            "0.693147180559945309417232121458176568075500134360255254120680009493"
        ));
        let third = ctx.rational(&ratio(1, 3)).unwrap();
        assert!(close(
            &mut ctx,
            &third,
            "0.333333333333333333333333333333333333333333333333333333333333333333"
        ));
    }

    #[test]
    fn widths_stay_tiny() {
        let mut ctx = Ctx::with_digits(60).unwrap();
        let x = ctx.rational(&ratio(7, 3)).unwrap();
        let y = ctx.exp(&x).unwrap();
        let w = ctx
            .sub(
                &y,
                &Interval {
                    lo: y.lo.clone(),
                    hi: y.lo.clone(),
                },
            )
            .unwrap();
        let bound = ctx
            .rational(&Rational::new(1.into(), num_bigint::BigInt::from(10).pow(55)))
            .unwrap();
        assert!(w.hi < bound.lo);
    }

    #[test]
    fn sign_handling() {
        let ctx = Ctx::with_digits(30).unwrap();
        let a = ctx.sub(&ctx.int(1), &ctx.int(3)).unwrap();
        assert!(a.hi.is_negative());
        let b = ctx.mul(&a, &a).unwrap();
        assert!(b.is_positive());
        assert!(ctx.div(&b, &ctx.int(0)).is_err());
        let m = ctx.abs(&a);
        assert!(m.is_positive());
        let _ = int(0);
    }
}
