//! Operator-norm bounds for the `2×2` gluing matrix
//!
//! ```text
//! B = 1/((λᵢ - ω) - (λᵢ + ω)e^{2ωR}) · [ λ(e^{2ωR}-1)   -2ωe^{ωR}   ]
//!                                      [ -2ωe^{ωR}      -λ(e^{2ωR}-1) ]
//! ω = √(λᵢ² + λ²)
//! ```
//!
//! and the adiabatic threshold built from it. Each inequality is decided
//! either exactly over the rationals or by interval evaluation with a
//! certified positive margin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Ctx, Interval};
use crate::poly::Poly;
use crate::rational::{self, int, ratio, Rational};

fn sgn(q: &Rational) -> i32 {
    match q.cmp(&int(0)) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

pub const DEFAULT_DIGITS: u32 = 60;
const RENDER_DIGITS: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSample {
    #[serde(with = "rational::serde_str")]
    pub lambda_ir: Rational,
    #[serde(with = "rational::serde_str")]
    pub lam: Rational,
    #[serde(rename = "R", with = "rational::serde_str")]
    pub r: Rational,
}

impl SpectralSample {
    pub fn new(lambda_ir: Rational, lam: Rational, r: Rational) -> Result<Self> {
        if sgn(&lambda_ir) <= 0 || sgn(&lam) < 0 || sgn(&r) <= 0 {
            return Err(Error::Precondition("need lambda_ir > 0, lam >= 0, R > 0".into()));
        }
        Ok(Self { lambda_ir, lam, r })
    }

    /// `ω² = λᵢ² + λ²`, exact.
    pub fn omega_squared(&self) -> Rational {
        &self.lambda_ir * &self.lambda_ir + &self.lam * &self.lam
    }
}

/// Entries `[[d, c], [c, -d]]` of the gluing matrix, enclosed.
#[derive(Clone, Debug)]
pub struct BMatrix {
    pub diag: Interval,
    pub offdiag: Interval,
    pub omega: Interval,
}

pub fn b_matrix(ctx: &mut Ctx, s: &SpectralSample) -> Result<BMatrix> {
    let li = ctx.rational(&s.lambda_ir)?;
    let lam = ctx.rational(&s.lam)?;
    let r = ctx.rational(&s.r)?;
    let w2 = ctx.rational(&s.omega_squared())?;
    let omega = ctx.sqrt(&w2)?;
    let wr = ctx.mul(&omega, &r)?;
    let e1 = ctx.exp(&wr)?;
    let e2 = ctx.mul(&e1, &e1)?;
    let den = ctx.sub(&ctx.sub(&li, &omega)?, &ctx.mul(&ctx.add(&li, &omega)?, &e2)?)?;
    let e2m1 = ctx.sub(&e2, &ctx.int(1))?;
    let diag = ctx.div(&ctx.mul(&lam, &e2m1)?, &den)?;
    let two_w = ctx.mul(&ctx.int(-2), &omega)?;
    let offdiag = ctx.div(&ctx.mul(&two_w, &e1)?, &den)?;
    Ok(BMatrix { diag, offdiag, omega })
}

/// `2e^{xR}/(e^{2xR} - 1)`.
fn sinh_bound(ctx: &mut Ctx, x: &Interval, r: &Interval) -> Result<Interval> {
    let e1 = ctx.exp(&ctx.mul(x, r)?)?;
    let e2 = ctx.mul(&e1, &e1)?;
    let num = ctx.mul(&ctx.int(2), &e1)?;
    ctx.div(&num, &ctx.sub(&e2, &ctx.int(1))?)
}

/// One inequality `lhs ≤ rhs` of a chain.
#[derive(Clone, Debug, Serialize)]
pub struct Link {
    pub name: &'static str,
    pub holds: bool,
    /// Decided exactly over the rationals (equality or exact comparison).
    pub exact: bool,
    /// Certified lower bound on `rhs - lhs`; `"0"` for exact equalities.
    pub margin: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub sample: SpectralSample,
    #[serde(with = "rational::serde_str")]
    pub lambda0: Rational,
    pub offdiag_entry: String,
    pub offdiag_bound1: String,
    pub offdiag_bound2: String,
    pub diag_entry: String,
    pub diag_bound: String,
    pub diag_bound2: String,
    pub links: Vec<Link>,
    pub all_hold: bool,
}

fn numeric_link(ctx: &mut Ctx, name: &'static str, lhs: &Interval, rhs: &Interval) -> Result<Link> {
    let gap = ctx.sub(rhs, lhs)?;
    let holds = gap.is_positive();
    let lower = Interval::point(gap.lo().clone());
    Ok(Link {
        name,
        holds,
        exact: false,
        margin: ctx.render(&lower, RENDER_DIGITS),
    })
}

fn exact_link(name: &'static str, holds: bool, margin: &Rational) -> Link {
    Link {
        name,
        holds,
        exact: true,
        margin: rational::format(margin),
    }
}

/// Checks `|c| ≤ 2e^{ωR}/(e^{2ωR}-1) ≤ 2e^{λ₀R}/(e^{2λ₀R}-1)` and
/// `|d| ≤ λ/ω ≤ λ/λ₀`.
pub fn norm_bounds_check(ctx: &mut Ctx, s: &SpectralSample, lambda0: &Rational) -> Result<BoundReport> {
    if sgn(lambda0) <= 0 {
        return Err(Error::Precondition("lambda0 must be positive".into()));
    }
    if lambda0 > &s.lambda_ir {
        return Err(Error::Precondition(format!(
            "lambda0 {} exceeds lambda_ir {}",
            rational::format(lambda0),
            rational::format(&s.lambda_ir)
        )));
    }
    let b = b_matrix(ctx, s)?;
    let r = ctx.rational(&s.r)?;
    let l0 = ctx.rational(lambda0)?;
    let lam = ctx.rational(&s.lam)?;
    let off = ctx.abs(&b.offdiag);
    let diag = ctx.abs(&b.diag);
    let bound1 = sinh_bound(ctx, &b.omega, &r)?;
    let bound2 = sinh_bound(ctx, &l0, &r)?;
    let dbound = ctx.div(&lam, &b.omega)?;
    let dbound2 = ctx.div(&lam, &l0)?;

    // ω = λ₀ exactly iff ω² = λ₀²; λ = 0 makes the diagonal chain 0 ≤ 0 ≤ 0
    let omega_is_l0 = s.omega_squared() == lambda0 * lambda0;
    let lam_zero = sgn(&s.lam) == 0;
    let mut links = vec![numeric_link(ctx, "offdiag <= bound1", &off, &bound1)?];
    links.push(if omega_is_l0 {
        exact_link("bound1 <= bound2", true, &int(0))
    } else {
        numeric_link(ctx, "bound1 <= bound2", &bound1, &bound2)?
    });
    if lam_zero {
        links.push(exact_link("diag <= lam/omega", b.diag.is_point_zero(), &int(0)));
        links.push(exact_link("lam/omega <= lam/lambda0", true, &int(0)));
    } else {
        links.push(numeric_link(ctx, "diag <= lam/omega", &diag, &dbound)?);
        // λ/ω ≤ λ/λ₀ ⟺ λ₀² ≤ ω², decided exactly
        let gap = s.omega_squared() - lambda0 * lambda0;
        links.push(exact_link("lam/omega <= lam/lambda0", sgn(&gap) >= 0, &gap));
    }
    let all_hold = links.iter().all(|l| l.holds);
    Ok(BoundReport {
        sample: s.clone(),
        lambda0: lambda0.clone(),
        offdiag_entry: ctx.render(&b.offdiag, RENDER_DIGITS),
        offdiag_bound1: ctx.render(&bound1, RENDER_DIGITS),
        offdiag_bound2: ctx.render(&bound2, RENDER_DIGITS),
        diag_entry: ctx.render(&b.diag, RENDER_DIGITS),
        diag_bound: ctx.render(&dbound, RENDER_DIGITS),
        diag_bound2: ctx.render(&dbound2, RENDER_DIGITS),
        links,
        all_hold,
    })
}

/// The `(λᵢ, λ, R)` grid with `λ₀` the smallest `λᵢ`.
pub fn default_grid() -> (Vec<SpectralSample>, Rational) {
    let li = [ratio(1, 2), int(1), int(2), int(3), int(5)];
    let lam = [int(0), ratio(1, 2), int(1), int(2), int(5)];
    let rr = [ratio(1, 10), ratio(1, 2), int(1), int(5), int(20)];
    let mut out = Vec::new();
    for a in &li {
        for b in &lam {
            for c in &rr {
                out.push(SpectralSample::new(a.clone(), b.clone(), c.clone()).expect("positive grid"));
            }
        }
    }
    let l0 = li.iter().min().cloned().expect("nonempty");
    (out, l0)
}

#[derive(Clone, Debug, Deserialize)]
struct GridFileRow {
    #[serde(flatten)]
    sample: SpectralSample,
    #[serde(with = "rational::serde_str")]
    lambda0: Rational,
}

#[derive(Clone, Debug, Deserialize)]
struct GridFile {
    samples: Vec<GridFileRow>,
}

/// Reads `{"samples": [{"lambda_ir", "lam", "R", "lambda0"}, …]}` with
/// rational strings.
pub fn parse_grid_file(text: &str) -> Result<Vec<(SpectralSample, Rational)>> {
    let file: GridFile = serde_json::from_str(text)?;
    file.samples
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let s = SpectralSample::new(row.sample.lambda_ir, row.sample.lam, row.sample.r)
                .map_err(|e| Error::Parse(format!("sample {i}: {e}")))?;
            Ok((s, row.lambda0))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AdiabaticPoint {
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    #[serde(with = "rational::serde_str")]
    pub lambda_ir: Rational,
    #[serde(with = "rational::serde_str")]
    pub lam: Rational,
    pub neck: String,
    pub offdiag: String,
    pub diag: String,
    pub norm_margin: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdiabaticReport {
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub decay_rate: String,
    pub per_r: Vec<AdiabaticRadius>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdiabaticRadius {
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    #[serde(with = "rational::serde_str")]
    pub epsilon2: Rational,
    pub neck_threshold: String,
    pub samples: usize,
    pub failures: Vec<AdiabaticPoint>,
    pub holds: bool,
}

const SWEEP: usize = 10;

/// For each `r`: `ε₂ = εP(r)/2`, `R₀ = ln(4/ε + 1)/P(r)`. Sweeps `λ < ε₂`,
/// `R ≥ R₀` and `λᵢ ∈ {P, 2P, 4P}`, and checks both entries and the operator
/// norm `√(d² + c²)` stay below `ε`.
pub fn adiabatic_threshold_report(
    ctx: &mut Ctx,
    epsilon: &Rational,
    decay: &Poly,
    radii: &[Rational],
) -> Result<AdiabaticReport> {
    if sgn(epsilon) <= 0 {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let mut per_r = Vec::new();
    for r in radii {
        let p = decay.substitute(0, r).constant_term();
        if sgn(&p) <= 0 {
            return Err(Error::Precondition(format!(
                "P({}) is not positive",
                rational::format(r)
            )));
        }
        let eps2 = epsilon * &p / int(2);
        let eps_i = ctx.rational(epsilon)?;
        let arg = ctx.rational(&(int(4) / epsilon + int(1)))?;
        let log = ctx.ln(&arg)?;
        let p_i = ctx.rational(&p)?;
        let r0 = ctx.div(&log, &p_i)?;
        let mut failures = Vec::new();
        let mut count = 0;
        for mult in [1, 2, 4] {
            let li = &p * int(mult);
            for k in 0..SWEEP {
                let lam = &eps2 * ratio(k as i64, SWEEP as i64);
                for j in 0..SWEEP {
                    // R = R₀(1 + j/3)
                    let stretch = ctx.rational(&(int(1) + ratio(j as i64, 3)))?;
                    let neck = ctx.mul(&r0, &stretch)?;
                    count += 1;
                    let point = adiabatic_point(ctx, r, &li, &lam, &neck, &eps_i)?;
                    if !point.holds {
                        failures.push(point);
                    }
                }
            }
        }
        per_r.push(AdiabaticRadius {
            r: r.clone(),
            epsilon2: eps2,
            neck_threshold: ctx.render(&r0, RENDER_DIGITS),
            samples: count,
            holds: failures.is_empty(),
            failures,
        });
    }
    Ok(AdiabaticReport {
        epsilon: epsilon.clone(),
        decay_rate: decay.render(&["r"]),
        holds: per_r.iter().all(|x| x.holds),
        per_r,
    })
}

fn adiabatic_point(
    ctx: &mut Ctx,
    r: &Rational,
    li: &Rational,
    lam: &Rational,
    neck: &Interval,
    eps: &Interval,
) -> Result<AdiabaticPoint> {
    let li_i = ctx.rational(li)?;
    let lam_i = ctx.rational(lam)?;
    let w2 = ctx.rational(&(li * li + lam * lam))?;
    let omega = ctx.sqrt(&w2)?;
    let e1 = ctx.exp(&ctx.mul(&omega, neck)?)?;
    let e2 = ctx.mul(&e1, &e1)?;
    let den = ctx.sub(&ctx.sub(&li_i, &omega)?, &ctx.mul(&ctx.add(&li_i, &omega)?, &e2)?)?;
    let d = ctx.div(&ctx.mul(&lam_i, &ctx.sub(&e2, &ctx.int(1))?)?, &den)?;
    let c = ctx.div(&ctx.mul(&ctx.mul(&ctx.int(-2), &omega)?, &e1)?, &den)?;
    let norm = ctx.sqrt(&ctx.add(&ctx.mul(&d, &d)?, &ctx.mul(&c, &c)?)?)?;
    let gap = ctx.sub(eps, &norm)?;
    // |d|, |c| ≤ norm, so a positive norm margin covers both entries
    let holds = gap.is_positive();
    Ok(AdiabaticPoint {
        r: r.clone(),
        lambda_ir: li.clone(),
        lam: lam.clone(),
        neck: ctx.render(neck, RENDER_DIGITS),
        offdiag: ctx.render(&c, RENDER_DIGITS),
        diag: ctx.render(&d, RENDER_DIGITS),
        norm_margin: ctx.render(&Interval::point(gap.lo().clone()), RENDER_DIGITS),
        holds,
    })
}

pub fn adiabatic_threshold_check(epsilon: &Rational, decay: &Poly, radii: &[Rational]) -> Result<bool> {
    let mut ctx = Ctx::with_digits(DEFAULT_DIGITS)?;
    Ok(adiabatic_threshold_report(&mut ctx, epsilon, decay, radii)?.holds)
}

/// `(ε, P, radii)` cases swept by the default suite.
pub fn default_adiabatic_cases() -> Vec<(Rational, Poly, Vec<Rational>)> {
    let r = Poly::var(0);
    let quarter_grid = vec![ratio(1, 4), ratio(1, 2), int(1)];
    vec![
        (int(1), r.clone(), quarter_grid.clone()),
        (ratio(1, 2), r.clone(), quarter_grid),
        (ratio(1, 1000), r.pow(2), vec![ratio(1, 2)]),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSuite {
    pub digits: u32,
    pub samples: Vec<BoundReport>,
    pub adiabatic: Vec<AdiabaticReport>,
    pub all_hold: bool,
}

/// Bound chains on `samples` (the default grid when `None`) plus the
/// default adiabatic cases.
pub fn run_suite(digits: u32, samples: Option<Vec<(SpectralSample, Rational)>>) -> Result<SpectralSuite> {
    let mut ctx = Ctx::with_digits(digits)?;
    let samples = samples.unwrap_or_else(|| {
        let (grid, l0) = default_grid();
        grid.into_iter().map(|s| (s, l0.clone())).collect()
    });
    let reports = samples
        .iter()
        .map(|(s, l0)| norm_bounds_check(&mut ctx, s, l0))
        .collect::<Result<Vec<_>>>()?;
    let adiabatic = default_adiabatic_cases()
        .iter()
        .map(|(e, p, radii)| adiabatic_threshold_report(&mut ctx, e, p, radii))
        .collect::<Result<Vec<_>>>()?;
    let all_hold = reports.iter().all(|r| r.all_hold) && adiabatic.iter().all(|a| a.holds);
    Ok(SpectralSuite {
        digits,
        samples: reports,
        adiabatic,
        all_hold,
    })
}
