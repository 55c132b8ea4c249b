//! On-disk document formats: diamonds and witnesses as JSON with exact
//! scalar strings.
//!
//! Scalars follow the grammar `rational := int | int "/" int` and
//! `scalar := rational | rational ("+"|"-") rational "i"`.  Matrices are
//! row-major flat lists; filtration pieces list the canonical reduced
//! basis of each `F^p` for `p = 1..=weight` (`F^0` is the whole space).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use hodge_core::{
    Diamond, GaussianRational, HodgeFiltration, HodgeNumbers, Matrix, PMHSWitness, PairingForm,
    Rational, Subspace, WitnessError,
};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("hodge_numbers has {found} entries, expected weight + 1 = {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("duplicate diamond entry at ({p}, {q})")]
    DuplicateEntry { p: i64, q: i64 },
    #[error("non-positive multiplicity at ({p}, {q})")]
    NonPositiveMultiplicity { p: i64, q: i64 },
    #[error("malformed scalar `{0}`")]
    Scalar(String),
    #[error("matrix `{name}` has {found} entries, expected {expected}")]
    MatrixShape {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("basis vector has {found} coordinates, expected {expected}")]
    VectorShape { expected: usize, found: usize },
    #[error("filtration pieces must cover p = 1..=weight in order")]
    FiltrationIndices,
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondEntry {
    pub p: i64,
    pub q: i64,
    pub m: u64,
}

/// A diamond together with the domain it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondDocument {
    pub weight: i64,
    pub hodge_numbers: Vec<u64>,
    pub entries: Vec<DiamondEntry>,
}

impl DiamondDocument {
    pub fn from_core(h: &HodgeNumbers, d: &Diamond) -> Self {
        Self {
            weight: h.weight(),
            hodge_numbers: h.row(),
            entries: d
                .entries()
                .iter()
                .map(|(&(p, q), &m)| DiamondEntry { p, q, m })
                .collect(),
        }
    }

    pub fn domain(&self) -> Result<HodgeNumbers, DocError> {
        let expected = (self.weight + 1).max(0) as usize;
        if self.hodge_numbers.len() != expected {
            return Err(DocError::RowLength {
                expected,
                found: self.hodge_numbers.len(),
            });
        }
        Ok(HodgeNumbers::from_row(&self.hodge_numbers))
    }

    pub fn diamond(&self) -> Result<Diamond, DocError> {
        let mut entries: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for e in &self.entries {
            if e.m == 0 {
                return Err(DocError::NonPositiveMultiplicity { p: e.p, q: e.q });
            }
            if entries.insert((e.p, e.q), e.m).is_some() {
                return Err(DocError::DuplicateEntry { p: e.p, q: e.q });
            }
        }
        Ok(Diamond::new(self.weight, entries))
    }
}

fn render_scalar(z: &GaussianRational) -> String {
    z.to_string()
}

fn parse_scalar(s: &str) -> Result<GaussianRational, DocError> {
    s.parse().map_err(|_| DocError::Scalar(s.to_string()))
}

fn render_matrix(m: &Matrix) -> Vec<String> {
    (0..m.rows())
        .flat_map(|r| m.row(r).iter().map(render_scalar))
        .collect()
}

fn parse_matrix(name: &'static str, d: usize, cells: &[String]) -> Result<Matrix, DocError> {
    if cells.len() != d * d {
        return Err(DocError::MatrixShape {
            name,
            expected: d * d,
            found: cells.len(),
        });
    }
    let mut m = Matrix::zero(d, d);
    for (idx, cell) in cells.iter().enumerate() {
        m.set(idx / d, idx % d, parse_scalar(cell)?);
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationPiece {
    pub p: i64,
    pub basis: Vec<Vec<String>>,
}

/// An explicit witness: dimension, weight, the two matrices and the Hodge
/// filtration, everything as exact scalar strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub dimension: usize,
    pub weight: i64,
    pub q: Vec<String>,
    pub n: Vec<String>,
    pub f: Vec<FiltrationPiece>,
}

impl WitnessDocument {
    pub fn from_core(w: &PMHSWitness) -> Self {
        let f = (1..=w.weight())
            .map(|p| FiltrationPiece {
                p,
                basis: w
                    .hodge()
                    .at(p)
                    .basis()
                    .iter()
                    .map(|v| v.iter().map(render_scalar).collect())
                    .collect(),
            })
            .collect();
        Self {
            dimension: w.dimension(),
            weight: w.weight(),
            q: render_matrix(w.pairing().matrix()),
            n: render_matrix(w.nilpotent()),
            f,
        }
    }

    pub fn to_core(&self) -> Result<PMHSWitness, DocError> {
        let d = self.dimension;
        let q = parse_matrix("q", d, &self.q)?;
        let n = parse_matrix("n", d, &self.n)?;
        let mut pieces = BTreeMap::new();
        for (idx, piece) in self.f.iter().enumerate() {
            if piece.p != idx as i64 + 1 {
                return Err(DocError::FiltrationIndices);
            }
            let mut rows = Vec::with_capacity(piece.basis.len());
            for vec in &piece.basis {
                if vec.len() != d {
                    return Err(DocError::VectorShape {
                        expected: d,
                        found: vec.len(),
                    });
                }
                rows.push(vec.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?);
            }
            pieces.insert(piece.p, Subspace::span(d, rows));
        }
        if self.f.len() as i64 != self.weight {
            return Err(DocError::FiltrationIndices);
        }
        let hodge = HodgeFiltration::new(d, pieces).map_err(WitnessError::from)?;
        let pairing = PairingForm::new(self.weight, q)?;
        Ok(PMHSWitness::new(self.weight, pairing, n, hodge)?)
    }
}

/// Pretty JSON with a trailing newline; field and map order are fixed, so
/// identical inputs serialize byte-identically.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable documents");
    s.push('\n');
    s
}

/// Lenient complex parser for `--probe` arguments: accepts the strict
/// scalar grammar plus the shorthands `i`, `-i`, `2i`, `1+i`.
pub fn parse_probe_scalar(raw: &str) -> Result<GaussianRational, DocError> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(z) = s.parse::<GaussianRational>() {
        return Ok(z);
    }
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| DocError::Scalar(raw.to_string()))?;
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && body.as_bytes()[i - 1].is_ascii_digit());
    let (re_str, sign, im_str) = match split {
        Some((i, c)) => (&body[..i], if c == '-' { -1 } else { 1 }, &body[i + 1..]),
        None => ("", 1, body),
    };
    let parse_rat = |t: &str| -> Result<Rational, DocError> {
        t.parse().map_err(|_| DocError::Scalar(raw.to_string()))
    };
    let re = if re_str.is_empty() {
        Rational::from_integer(0.into())
    } else {
        parse_rat(re_str)?
    };
    let magnitude = match im_str {
        "" => Rational::from_integer(1.into()),
        "-" => {
            return Ok(GaussianRational::new(re, -Rational::from_integer(1.into())));
        }
        other => parse_rat(other)?,
    };
    let im = if sign < 0 { -magnitude } else { magnitude };
    Ok(GaussianRational::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hodge_core::{enumerate_diamonds, realize_diamond, ratio};

    #[test]
    fn diamond_document_round_trip() {
        let h = HodgeNumbers::from_row(&[2, 4, 2]);
        for d in enumerate_diamonds(&h).unwrap() {
            let doc = DiamondDocument::from_core(&h, &d);
            let json = to_json(&doc);
            let back: DiamondDocument = serde_json::from_str(&json).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.domain().unwrap(), h);
            assert_eq!(back.diamond().unwrap(), d);
        }
    }

    #[test]
    fn diamond_document_rejects_duplicates() {
        let doc = DiamondDocument {
            weight: 1,
            hodge_numbers: vec![1, 1],
            entries: vec![
                DiamondEntry { p: 0, q: 1, m: 1 },
                DiamondEntry { p: 0, q: 1, m: 1 },
            ],
        };
        assert!(matches!(
            doc.diamond(),
            Err(DocError::DuplicateEntry { p: 0, q: 1 })
        ));
    }

    #[test]
    fn witness_document_round_trip() {
        let h = HodgeNumbers::from_row(&[1, 2, 1]);
        for d in enumerate_diamonds(&h).unwrap() {
            let w = realize_diamond(&h, &d).unwrap();
            let doc = WitnessDocument::from_core(&w);
            let json = to_json(&doc);
            let back: WitnessDocument = serde_json::from_str(&json).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_core().unwrap(), w);
        }
    }

    #[test]
    fn probe_shorthands() {
        let i = GaussianRational::i();
        assert_eq!(parse_probe_scalar("i").unwrap(), i);
        assert_eq!(
            parse_probe_scalar("-i").unwrap(),
            GaussianRational::new(ratio(0, 1), ratio(-1, 1))
        );
        assert_eq!(
            parse_probe_scalar("2i").unwrap(),
            GaussianRational::new(ratio(0, 1), ratio(2, 1))
        );
        assert_eq!(
            parse_probe_scalar("1+i").unwrap(),
            GaussianRational::new(ratio(1, 1), ratio(1, 1))
        );
        assert_eq!(
            parse_probe_scalar("1/2-3/4i").unwrap(),
            GaussianRational::new(ratio(1, 2), ratio(-3, 4))
        );
        assert_eq!(parse_probe_scalar("0").unwrap(), GaussianRational::zero());
        assert!(parse_probe_scalar("chaos").is_err());
    }
}
