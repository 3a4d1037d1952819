//! Closed-form eta invariants of circle bundles over surfaces and the
//! correction term assembled from them.
//!
//! For a circle bundle of Euler number `l` over a surface of Euler
//! characteristic `χ` with base area normalized to `π` and fiber radius `r`:
//!
//! * Dirac: `½η(D_r) = l/12 - Sign(l)·h_{1/2} + (l/12)(l²r⁴ - χr²)`
//! * signature: `η(S_r) = ⅔·l·(r²χ - r⁴l²) + l/3 - Sign(l)`
//! * correction: `ω = -½h_D - ½η_D - ⅛η_Sign`
//!
//! The `r²` and `r⁴` terms cancel in `ω`, leaving
//! `-½h_D + Sign(l)·h_{1/2} + (Sign(l) - l)/8`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, ratio, Rational};

pub const REGIME_CAVEAT: &str = "formula stated for small r";

/// Inputs to the eta formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleGeometry {
    /// Euler number of the circle bundle.
    pub l: i64,
    /// Euler characteristic of the base surface.
    pub chi: i64,
    /// Fiber radius.
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    /// Dimension of holomorphic sections of a square root of the canonical
    /// bundle of the base.
    pub h_half: u64,
    /// Base area equals `π`.
    pub vol_normalized: bool,
}

impl BundleGeometry {
    pub fn new(l: i64, chi: i64, r: Rational, h_half: u64) -> Result<Self> {
        let g = Self {
            l,
            chi,
            r,
            h_half,
            vol_normalized: true,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::InvalidGeometry("Euler number l must be nonzero".into()));
        }
        if self.chi > 2 || self.chi % 2 != 0 {
            return Err(Error::InvalidGeometry(format!(
                "Euler characteristic {} must be even and at most 2",
                self.chi
            )));
        }
        if !self.r.is_positive() {
            return Err(Error::InvalidGeometry(format!(
                "fiber radius {} must be positive",
                rational::format(&self.r)
            )));
        }
        Ok(())
    }

    fn sign_l(&self) -> Rational {
        int(rational::sign(self.l))
    }

    fn r2(&self) -> Rational {
        &self.r * &self.r
    }
}

/// `η(D_r) = 2·(l/12 - Sign(l)·h_{1/2} + (l/12)(l²r⁴ - χr²))`.
pub fn eta_dirac(g: &BundleGeometry) -> Result<Rational> {
    g.validate()?;
    let l = int(g.l);
    let r2 = g.r2();
    let r4 = &r2 * &r2;
    let twelfth = &l / int(12);
    let half_eta = &twelfth - g.sign_l() * int(g.h_half as i64) + &twelfth * (&l * &l * r4 - int(g.chi) * r2);
    Ok(half_eta * int(2))
}

/// `η(S_r) = ⅔·l·(r²χ - r⁴l²) + l/3 - Sign(l)`, with `Vol(Σ) = π`.
pub fn eta_signature(g: &BundleGeometry) -> Result<Rational> {
    g.validate()?;
    if !g.vol_normalized {
        return Err(Error::Unsupported(
            "the signature eta formula is implemented only for base area pi".into(),
        ));
    }
    let l = int(g.l);
    let r2 = g.r2();
    let r4 = &r2 * &r2;
    Ok(ratio(2, 3) * &l * (r2 * int(g.chi) - r4 * &l * &l) + &l / int(3) - g.sign_l())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorrectionInput {
    pub geometry: BundleGeometry,
    /// `h_D`, the kernel dimension of the boundary Dirac operator.
    pub h_dirac: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectionResult {
    #[serde(with = "rational::serde_str")]
    pub eta_dirac: Rational,
    #[serde(with = "rational::serde_str")]
    pub eta_sign: Rational,
    #[serde(with = "rational::serde_str")]
    pub omega: Rational,
    #[serde(skip)]
    pub r_independent_form: Rational,
    pub closed_form_check: bool,
    pub regime_caveat: &'static str,
}

/// `-½h_D + Sign(l)·h_{1/2} + (Sign(l) - l)/8`.
pub fn closed_form_omega(l: i64, h_half: u64, h_dirac: u64) -> Rational {
    let s = int(rational::sign(l));
    -ratio(h_dirac as i64, 2) + &s * int(h_half as i64) + (s - int(l)) / int(8)
}

pub fn correction_term(c: &CorrectionInput) -> Result<CorrectionResult> {
    let g = &c.geometry;
    let eta_d = eta_dirac(g)?;
    let eta_s = eta_signature(g)?;
    let omega = -ratio(c.h_dirac as i64, 2) - &eta_d / int(2) - &eta_s / int(8);
    let closed = closed_form_omega(g.l, g.h_half, c.h_dirac);
    let check = (&omega - &closed).is_zero();
    if !check {
        return Err(Error::Internal(format!(
            "correction term {} differs from its r-independent form {}",
            rational::format(&omega),
            rational::format(&closed)
        )));
    }
    Ok(CorrectionResult {
        eta_dirac: eta_d,
        eta_sign: eta_s,
        omega,
        r_independent_form: closed,
        closed_form_check: check,
        regime_caveat: REGIME_CAVEAT,
    })
}

/// Every `(l, χ, h_D, h_{1/2}, r)` combination of the r-independence grid:
/// `l ∈ {-3..3}\{0}`, `χ ∈ {2, 0, -2, -4}`, `r ∈ {1/4, 1/2, 1, 2, 5/3}`,
/// `h_D, h_{1/2} ∈ {0, 1, 2}`.
pub fn r_independence_grid() -> Vec<(CorrectionInput, Vec<Rational>)> {
    let radii = vec![ratio(1, 4), ratio(1, 2), int(1), int(2), ratio(5, 3)];
    let mut out = Vec::new();
    for l in (-3..=3).filter(|&l| l != 0) {
        for chi in [2, 0, -2, -4] {
            for h_dirac in 0..=2 {
                for h_half in 0..=2 {
                    let input = CorrectionInput {
                        geometry: BundleGeometry::new(l, chi, int(1), h_half).expect("grid is valid"),
                        h_dirac,
                    };
                    out.push((input, radii.clone()));
                }
            }
        }
    }
    out
}

/// Result of sweeping the grid: every failure is listed.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RIndependenceReport {
    pub cases: usize,
    pub evaluations: usize,
    pub failures: Vec<String>,
}

impl RIndependenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `ω` is constant in `r` across the grid and equals
/// `-½h_D + h_{1/2}` when `l = 1`.
pub fn check_r_independence() -> RIndependenceReport {
    let mut report = RIndependenceReport::default();
    for (input, radii) in r_independence_grid() {
        report.cases += 1;
        let mut first: Option<Rational> = None;
        for r in radii {
            report.evaluations += 1;
            let mut c = input.clone();
            c.geometry.r = r.clone();
            let omega = match correction_term(&c) {
                Ok(res) => res.omega,
                Err(e) => {
                    report.failures.push(format!("{c:?}: {e}"));
                    continue;
                }
            };
            match &first {
                None => first = Some(omega.clone()),
                Some(w) if *w != omega => report.failures.push(format!(
                    "l={} chi={} h_D={} h_half={}: omega {} at r={} differs from {}",
                    c.geometry.l,
                    c.geometry.chi,
                    c.h_dirac,
                    c.geometry.h_half,
                    rational::format(&omega),
                    rational::format(&r),
                    rational::format(w)
                )),
                Some(_) => {}
            }
            if c.geometry.l == 1 {
                let expected = -ratio(c.h_dirac as i64, 2) + int(c.geometry.h_half as i64);
                if omega != expected {
                    report.failures.push(format!(
                        "l=1 chi={} r={}: omega {} != -h_D/2 + h_half = {}",
                        c.geometry.chi,
                        rational::format(&r),
                        rational::format(&omega),
                        rational::format(&expected)
                    ));
                }
            }
        }
    }
    report
}
