//! TOML input files: generator matrices, abelian code specs and polynomials.
//!
//! ```toml
//! [tower]
//! p = 2
//! e = 1
//! m = 3
//! # poly = [1, 1, 0, 1]   optional, constant coefficient first
//!
//! [matrix]
//! rows = [["a^0", "a^1", "a^2"]]
//! ```

use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::abelian::AbelianCodeSpec;
use crate::artin_schreier::Polynomial;
use crate::code::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Limits};

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TowerConfig {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u64>>,
}

fn one() -> u32 {
    1
}

impl TowerConfig {
    pub fn build(&self, limits: &Limits) -> Result<Arc<FieldTower>> {
        FieldTower::build(self.p, self.e, self.m, self.poly.as_deref(), limits).map(Arc::new)
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub tower: TowerConfig,
    pub matrix: MatrixRows,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRows {
    pub rows: Vec<Vec<Spanned<String>>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub coeff: Spanned<String>,
    pub exponents: Vec<u64>,
}

/// f = Σ coeff · x^exponents in `k` variables.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialConfig {
    pub tower: TowerConfig,
    pub polynomial: PolynomialTerms,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialTerms {
    pub k: usize,
    pub terms: Vec<TermConfig>,
}

/// 1-based line and column of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(text: &str, span: Option<Range<usize>>, message: impl Into<String>) -> Error {
    let (line, column) = span.map_or((0, 0), |s| line_column(text, s.start));
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_toml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| parse_error(text, e.span(), e.message()))
}

fn element(tower: &FieldTower, text: &str, s: &Spanned<String>) -> Result<FieldElement> {
    tower.parse_element(s.get_ref()).map_err(|e| {
        let msg = match e {
            Error::InvalidInput(m) => m,
            other => other.to_string(),
        };
        parse_error(text, Some(s.span()), msg)
    })
}

pub fn load_matrix(text: &str, limits: &Limits) -> Result<(MatrixConfig, GeneratorMatrix)> {
    let cfg: MatrixConfig = parse_toml(text)?;
    let tower = cfg.tower.build(limits)?;
    let rows = cfg
        .matrix
        .rows
        .iter()
        .map(|r| r.iter().map(|s| element(&tower, text, s)).collect())
        .collect::<Result<_>>()?;
    let g = GeneratorMatrix::new(tower, rows)?;
    Ok((cfg, g))
}

pub fn load_abelian(text: &str) -> Result<AbelianCodeSpec> {
    parse_toml(text)
}

pub fn load_polynomial(text: &str, limits: &Limits) -> Result<(PolynomialConfig, Polynomial)> {
    let cfg: PolynomialConfig = parse_toml(text)?;
    let tower = cfg.tower.build(limits)?;
    let terms = cfg
        .polynomial
        .terms
        .iter()
        .map(|t| Ok((t.exponents.clone(), element(&tower, text, &t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    let f = Polynomial::new(tower, cfg.polynomial.k, terms)?;
    Ok((cfg, f))
}
