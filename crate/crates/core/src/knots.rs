//! Knot presentations and the normalized Alexander polynomial.
//!
//! Two routes compute `Δ_K`: the Seifert-form determinant `det(V - tVᵀ)`
//! and the reduced Burau representation of a closed braid. Both results
//! are normalized to the unique representative that is symmetric under
//! `t ↦ t^-1` and takes the value 1 at `t = 1`.

use std::io::Read;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{int, Rational};

/// Integer Seifert matrix of a knot. The empty matrix is the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    /// Validates squareness and `det(V - Vᵀ) = ±1`.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse(format!(
                "Seifert matrix is not square: row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        let skew: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int(rows[i][j] - rows[j][i])).collect())
            .collect();
        let det = rational_det(skew);
        if det.abs() != Rational::one() {
            return Err(Error::NotAKnotSeifert(crate::rational::format(&det)));
        }
        Ok(Self { rows })
    }

    pub fn unknot() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The mirror image's Seifert matrix, `-Vᵀ`.
    pub fn mirror(&self) -> Self {
        let n = self.size();
        Self {
            rows: (0..n)
                .map(|i| (0..n).map(|j| -self.rows[j][i]).collect())
                .collect(),
        }
    }
}

impl TryFrom<Vec<Vec<i64>>> for SeifertMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<SeifertMatrix> for Vec<Vec<i64>> {
    fn from(m: SeifertMatrix) -> Self {
        m.rows
    }
}

/// Parses a Seifert matrix given either as a JSON array of rows or as CSV
/// (one row per line, comma separated).
pub fn parse_seifert(text: &str) -> Result<SeifertMatrix> {
    let trimmed = text.trim();
    let rows: Vec<Vec<i64>> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("Seifert matrix JSON: {e}")))?
    } else {
        let mut rows = Vec::new();
        for (lineno, line) in trimmed.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .enumerate()
                .map(|(col, cell)| {
                    cell.trim().parse::<i64>().map_err(|_| {
                        Error::Parse(format!(
                            "Seifert matrix CSV line {}, column {}: {:?} is not an integer",
                            lineno + 1,
                            col + 1,
                            cell.trim()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        rows
    };
    SeifertMatrix::new(rows)
}

/// A braid word on `strands` strands whose closure is a knot. Letter `i`
/// is `σ_i`, letter `-i` is `σ_i^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("strand count must be positive".into()));
        }
        for (pos, &l) in letters.iter().enumerate() {
            if l == 0 {
                return Err(Error::InvalidBraid(format!("letter {} is zero", pos + 1)));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {} is {l}, but |i| must be at most {} on {strands} strands",
                    pos + 1,
                    strands - 1
                )));
            }
        }
        let word = Self { strands, letters };
        let components = word.closure_components();
        if components != 1 {
            return Err(Error::InvalidBraid(format!(
                "closure has {components} components"
            )));
        }
        Ok(word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// Number of cycles of the permutation induced on the strands.
    pub fn closure_components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
        cycles
    }
}

/// Parses whitespace-separated signed generator indices.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    let letters = text
        .split_whitespace()
        .enumerate()
        .map(|(pos, tok)| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("braid letter {} ({tok:?}) is not an integer", pos + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(strands, letters)
}

/// The symmetric Alexander polynomial with `Δ(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct NormalizedAlexander {
    poly: LaurentPoly,
}

impl NormalizedAlexander {
    /// Accepts an already-normalized polynomial.
    pub fn new(poly: LaurentPoly) -> Result<Self> {
        if let Some((e, _)) = poly.terms().find(|(_, c)| !c.is_integer()) {
            return Err(Error::Parse(format!(
                "coefficient of t^{e} in {poly} is not an integer"
            )));
        }
        if !poly.is_symmetric() {
            return Err(Error::Parse(format!("{poly} is not symmetric under t -> 1/t")));
        }
        if poly.eval(&int(1)) != int(1) {
            return Err(Error::Parse(format!("{poly} does not take the value 1 at t = 1")));
        }
        Ok(Self { poly })
    }

    /// Picks the unit multiple `±t^k · p` that is symmetric and equals 1 at
    /// `t = 1`.
    pub fn normalize(p: &LaurentPoly) -> Result<Self> {
        let (Some(lo), Some(hi)) = (p.min_exponent(), p.max_exponent()) else {
            return Err(Error::Internal("Alexander polynomial vanished".into()));
        };
        if (lo + hi) % 2 != 0 {
            return Err(Error::Internal(format!(
                "{p} has odd span; not a knot polynomial"
            )));
        }
        let centered = p.shift(-(lo + hi) / 2);
        let at_one = centered.eval(&int(1));
        let poly = if at_one == int(1) {
            centered
        } else if at_one == int(-1) {
            -&centered
        } else {
            return Err(Error::Internal(format!(
                "{p} evaluates to {} at t = 1; not a knot polynomial",
                crate::rational::format(&at_one)
            )));
        };
        Self::new(poly)
    }

    pub fn unknot() -> Self {
        Self {
            poly: LaurentPoly::one(),
        }
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    /// `a_i`, the coefficient of `t^i`.
    pub fn coeff(&self, i: i64) -> Rational {
        self.poly.coeff(i)
    }

    /// Largest exponent with a nonzero coefficient (the symmetric degree).
    pub fn degree(&self) -> i64 {
        self.poly.max_exponent().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.poly == LaurentPoly::one()
    }
}

impl<'de> Deserialize<'de> for NormalizedAlexander {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let poly = LaurentPoly::deserialize(d)?;
        Self::new(poly).map_err(serde::de::Error::custom)
    }
}

/// `det(V - tVᵀ)`, normalized.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> Result<NormalizedAlexander> {
    let n = v.size();
    let t = LaurentPoly::t();
    let m: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &LaurentPoly::constant(int(v.rows[i][j])) - &t.scale(&int(v.rows[j][i])))
                .collect()
        })
        .collect();
    NormalizedAlexander::normalize(&laurent_det(m)?)
}

/// Reduced Burau matrix of `σ_i^{±1}` on `n` strands (size `n - 1`).
fn burau_generator(n: usize, letter: i64) -> Vec<Vec<LaurentPoly>> {
    let dim = n - 1;
    let mut m: Vec<Vec<LaurentPoly>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    if r == c {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let i = letter.unsigned_abs() as usize - 1; // row of the -t entry
    let t = |e: i64, c: i64| LaurentPoly::monomial(e, int(c));
    if letter > 0 {
        m[i][i] = t(1, -1);
        if i > 0 {
            m[i][i - 1] = t(1, 1);
        }
        if i + 1 < dim {
            m[i][i + 1] = t(0, 1);
        }
    } else {
        m[i][i] = t(-1, -1);
        if i > 0 {
            m[i][i - 1] = t(0, 1);
        }
        if i + 1 < dim {
            m[i][i + 1] = t(-1, 1);
        }
    }
    m
}

fn mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(LaurentPoly::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// The reduced Burau image of the whole word.
pub fn burau_matrix(b: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    let dim = b.strands - 1;
    let mut acc: Vec<Vec<LaurentPoly>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    if r == c {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    for &l in &b.letters {
        acc = mat_mul(&acc, &burau_generator(b.strands, l));
    }
    acc
}

/// `det(I - Burau(b)) / (1 + t + ⋯ + t^{n-1})`, normalized.
pub fn alexander_from_braid(b: &BraidWord) -> Result<NormalizedAlexander> {
    let burau = burau_matrix(b);
    let dim = burau.len();
    let i_minus: Vec<Vec<LaurentPoly>> = burau
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, e)| if r == c { &LaurentPoly::one() - e } else { -e })
                .collect()
        })
        .collect();
    let det = laurent_det(i_minus)?;
    let cyclotomic = LaurentPoly::from_ints(0, &vec![1; dim + 1]);
    let quotient = det.div_exact(&cyclotomic).ok_or_else(|| {
        Error::Internal(format!(
            "det(I - Burau) = {det} is not divisible by {cyclotomic}; closure is not a knot"
        ))
    })?;
    NormalizedAlexander::normalize(&quotient)
}

/// Fraction-free (Bareiss) determinant over the Laurent ring.
pub fn laurent_det(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("inexact Bareiss step in Laurent determinant".into()))?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Gaussian-elimination determinant over the rationals.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

/// How a knot is presented in a table row or on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "lowercase")]
pub enum KnotPresentation {
    Seifert(SeifertMatrix),
    Braid(BraidWord),
    Alexander(NormalizedAlexander),
}

impl KnotPresentation {
    pub fn alexander(&self) -> Result<NormalizedAlexander> {
        match self {
            Self::Seifert(v) => alexander_from_seifert(v),
            Self::Braid(b) => alexander_from_braid(b),
            Self::Alexander(a) => Ok(a.clone()),
        }
    }
}

/// One row of a knot table: `name, type, payload[, strands]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRow {
    pub name: String,
    pub presentation: KnotPresentation,
}

#[derive(Debug, Deserialize)]
struct RawRow {
    name: String,
    #[serde(rename = "type")]
    kind: String,
    payload: String,
    #[serde(default)]
    strands: Option<String>,
}

/// Parses one raw CSV record into a knot row.
fn parse_row(raw: RawRow) -> Result<KnotRow> {
    let presentation = match raw.kind.trim() {
        "seifert" => KnotPresentation::Seifert(parse_seifert(&raw.payload)?),
        "braid" => {
            let strands = raw
                .strands
                .as_deref()
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::Parse("braid row needs a strand count".into()))?
                .parse::<usize>()
                .map_err(|_| Error::Parse("strand count is not a positive integer".into()))?;
            let payload = raw.payload.trim();
            // Accept a JSON array of letters, a JSON string, or bare text.
            let text = if payload.starts_with('[') {
                let letters: Vec<i64> =
                    serde_json::from_str(payload).map_err(|e| Error::Parse(format!("braid JSON: {e}")))?;
                return Ok(KnotRow {
                    name: raw.name,
                    presentation: KnotPresentation::Braid(BraidWord::new(strands, letters)?),
                });
            } else if payload.starts_with('"') {
                serde_json::from_str::<String>(payload)
                    .map_err(|e| Error::Parse(format!("braid JSON: {e}")))?
            } else {
                payload.to_string()
            };
            KnotPresentation::Braid(parse_braid(&text, strands)?)
        }
        "alexander" => KnotPresentation::Alexander(
            serde_json::from_str(raw.payload.trim())
                .map_err(|e| Error::Parse(format!("Alexander JSON: {e}")))?,
        ),
        other => {
            return Err(Error::Parse(format!(
                "unknown presentation type {other:?} (expected seifert or braid)"
            )))
        }
    };
    Ok(KnotRow {
        name: raw.name,
        presentation,
    })
}

/// Reads a headered knot table. Each row parses independently; a bad row
/// yields an error naming its line without affecting the others.
pub fn read_knot_table<R: Read>(reader: R) -> Result<Vec<(String, Result<KnotRow>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let line = idx + 2;
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                out.push((
                    format!("row {line}"),
                    Err(Error::Parse(format!("line {line}: {e}"))),
                ));
                continue;
            }
        };
        let name = record.get(0).unwrap_or("").to_string();
        let label = if name.is_empty() {
            format!("row {line}")
        } else {
            name.clone()
        };
        let parsed = (|| -> Result<KnotRow> {
            if record.len() < 3 {
                return Err(Error::Parse(format!(
                    "expected at least 3 columns, found {}",
                    record.len()
                )));
            }
            parse_row(RawRow {
                name,
                kind: record[1].to_string(),
                payload: record[2].to_string(),
                strands: record.get(3).map(str::to_string),
            })
        })()
        .map_err(|e| Error::Parse(format!("line {line}: {e}")));
        out.push((label, parsed));
    }
    Ok(out)
}

/// Trefoil, figure-eight, unknot and 5_2 presentations used by the built-in
/// corpus.
pub mod corpus {
    use super::*;

    pub fn trefoil_seifert() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).expect("valid")
    }

    pub fn figure_eight_seifert() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).expect("valid")
    }

    pub fn five_two_seifert() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![-1, 1], vec![0, -2]]).expect("valid")
    }

    pub fn trefoil_braid() -> BraidWord {
        BraidWord::new(2, vec![1, 1, 1]).expect("valid")
    }

    pub fn figure_eight_braid() -> BraidWord {
        BraidWord::new(3, vec![1, -2, 1, -2]).expect("valid")
    }

    /// `(name, presentation)` for every built-in knot.
    pub fn builtin() -> Vec<(&'static str, KnotPresentation)> {
        vec![
            ("unknot", KnotPresentation::Seifert(SeifertMatrix::unknot())),
            ("trefoil", KnotPresentation::Seifert(trefoil_seifert())),
            ("figure-eight", KnotPresentation::Seifert(figure_eight_seifert())),
            ("5_2", KnotPresentation::Seifert(five_two_seifert())),
            ("trefoil-braid", KnotPresentation::Braid(trefoil_braid())),
            (
                "figure-eight-braid",
                KnotPresentation::Braid(figure_eight_braid()),
            ),
        ]
    }

    /// A random Seifert matrix of size `2g`, built as a symmetric integer
    /// matrix plus the standard block form, so `V - Vᵀ` is the standard
    /// symplectic matrix and has determinant 1.
    pub fn random_seifert<R: rand::Rng>(rng: &mut R, genus: usize, bound: i64) -> SeifertMatrix {
        let n = 2 * genus;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-bound..=bound);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        for g in 0..genus {
            rows[2 * g][2 * g + 1] += 1;
        }
        SeifertMatrix::new(rows).expect("V - V^T is symplectic by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn lp(lowest: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(lowest, c)
    }

    /// Determinant by permutation expansion, evaluated at rational points
    /// and compared to the Laurent determinant: independent of Bareiss.
    fn leibniz_det(m: &[Vec<Rational>]) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod = (0..n).fold(Rational::one(), |acc, i| acc * &m[i][p[i]]);
                if inversions % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    #[test]
    fn seifert_parsing() {
        assert_eq!(parse_seifert("[[-1,1],[0,-1]]").unwrap().size(), 2);
        assert_eq!(parse_seifert("[]").unwrap(), SeifertMatrix::unknot());
        assert_eq!(parse_seifert("-1,1\n0,-1\n").unwrap(), trefoil_seifert());
        // V - V^T = 0 has determinant 0
        let err = parse_seifert("[[1,0],[0,1]]").unwrap_err();
        assert!(err.to_string().contains("not a knot Seifert matrix"), "{err}");
        assert!(matches!(parse_seifert("[[1,2],[3]]"), Err(Error::Parse(_))));
        assert!(matches!(parse_seifert("1,x"), Err(Error::Parse(_))));
        assert!(matches!(parse_seifert("[[1,2"), Err(Error::Parse(_))));
    }

    #[test]
    fn braid_parsing() {
        assert_eq!(parse_braid("1 1 1", 2).unwrap(), trefoil_braid());
        assert_eq!(parse_braid("1 -2 1 -2", 3).unwrap(), figure_eight_braid());
        let err = parse_braid("1 1", 2).unwrap_err();
        assert!(err.to_string().contains("closure has 2 components"), "{err}");
        assert!(parse_braid("1 0 1", 2).unwrap_err().to_string().contains("zero"));
        assert!(parse_braid("2", 2).unwrap_err().to_string().contains("at most 1"));
        assert!(matches!(parse_braid("1 a", 2), Err(Error::Parse(_))));
        assert_eq!(parse_braid("", 1).unwrap().closure_components(), 1);
    }

    #[test]
    fn seifert_alexander_examples() {
        assert_eq!(
            alexander_from_seifert(&trefoil_seifert()).unwrap().poly(),
            &lp(-1, &[1, -1, 1])
        );
        assert_eq!(
            alexander_from_seifert(&SeifertMatrix::unknot()).unwrap().poly(),
            &LaurentPoly::one()
        );
        assert_eq!(
            alexander_from_seifert(&figure_eight_seifert()).unwrap().poly(),
            &lp(-1, &[-1, 3, -1])
        );
        assert_eq!(
            alexander_from_seifert(&five_two_seifert()).unwrap().poly(),
            &lp(-1, &[2, -3, 2])
        );
    }

    #[test]
    fn braid_alexander_examples() {
        assert_eq!(
            alexander_from_braid(&trefoil_braid()).unwrap().poly(),
            &lp(-1, &[1, -1, 1])
        );
        assert_eq!(
            alexander_from_braid(&BraidWord::new(2, vec![1]).unwrap())
                .unwrap()
                .poly(),
            &LaurentPoly::one()
        );
        assert_eq!(
            alexander_from_braid(&figure_eight_braid()).unwrap().poly(),
            &lp(-1, &[-1, 3, -1])
        );
        // 5_1 torus knot: t^2 - t + 1 - t^-1 + t^-2
        let five_one = BraidWord::new(2, vec![1; 5]).unwrap();
        assert_eq!(
            alexander_from_braid(&five_one).unwrap().poly(),
            &lp(-2, &[1, -1, 1, -1, 1])
        );
        // mirror trefoil
        let mirror = BraidWord::new(2, vec![-1, -1, -1]).unwrap();
        assert_eq!(
            alexander_from_braid(&mirror).unwrap().poly(),
            &lp(-1, &[1, -1, 1])
        );
    }

    #[test]
    fn burau_generators_are_invertible() {
        for n in 2..5 {
            for i in 1..n as i64 {
                let p = mat_mul(&burau_generator(n, i), &burau_generator(n, -i));
                for (r, row) in p.iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        let id = if r == c {
                            LaurentPoly::one()
                        } else {
                            LaurentPoly::zero()
                        };
                        assert_eq!(e, &id, "n={n} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_rejects_non_knot_polynomials() {
        assert!(NormalizedAlexander::normalize(&lp(0, &[1, 1])).is_err());
        assert!(NormalizedAlexander::normalize(&lp(0, &[2, 0, 1])).is_err());
        assert_eq!(
            NormalizedAlexander::normalize(&lp(3, &[-1, 1, -1]))
                .unwrap()
                .poly(),
            &lp(-1, &[1, -1, 1])
        );
        assert!(NormalizedAlexander::new(lp(0, &[1, 1])).is_err());
    }

    #[test]
    fn table_rows_are_isolated() {
        let csv = "name,type,payload,strands\n\
                   unknot,seifert,[],\n\
                   trefoil,braid,1 1 1,2\n\
                   broken,seifert,\"[[1,0],[0,1]]\",\n\
                   fig8,braid,\"[1,-2,1,-2]\",3\n";
        let rows = read_knot_table(csv.as_bytes()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].1.is_ok());
        assert!(rows[1].1.is_ok());
        let err = rows[2].1.as_ref().unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
        assert_eq!(
            rows[3]
                .1
                .as_ref()
                .unwrap()
                .presentation
                .alexander()
                .unwrap()
                .poly(),
            &lp(-1, &[-1, 3, -1])
        );
    }

    #[test]
    fn laurent_det_matches_pointwise_leibniz() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for genus in 1..=2 {
            for _ in 0..4 {
                let v = random_seifert(&mut rng, genus, 2);
                let n = v.size();
                let t = LaurentPoly::t();
                let m: Vec<Vec<LaurentPoly>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                &LaurentPoly::constant(int(v.rows()[i][j])) - &t.scale(&int(v.rows()[j][i]))
                            })
                            .collect()
                    })
                    .collect();
                let det = laurent_det(m.clone()).unwrap();
                for x in [-3i64, -1, 2, 5] {
                    let x = int(x);
                    let pointwise: Vec<Vec<Rational>> =
                        m.iter().map(|r| r.iter().map(|e| e.eval(&x)).collect()).collect();
                    assert_eq!(det.eval(&x), leibniz_det(&pointwise));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn normalized_output_is_symmetric_and_mirror_invariant(seed in any::<u64>(), genus in 1usize..=2) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v = random_seifert(&mut rng, genus, 3);
            let a = alexander_from_seifert(&v).unwrap();
            prop_assert!(a.poly().is_symmetric());
            prop_assert_eq!(a.poly().eval(&int(1)), int(1));
            let m = alexander_from_seifert(&v.mirror()).unwrap();
            prop_assert_eq!(a, m);
        }
    }
}
