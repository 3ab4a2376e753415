//! JSON exchange format for dglas and action maps.
//!
//! ```json
//! { "basis": [{"label": "L1", "degree": 0}],
//!   "brackets": [{"i": "L1", "j": "L2", "out": [{"k": "L3", "c": "1"}]}],
//!   "differential": [{"i": "x", "out": [{"k": "y", "c": "-1/2"}]}] }
//! ```
//!
//! Unlisted brackets and differential rows are zero. Both orderings of a
//! bracket pair must be listed; nothing is filled in by antisymmetry, so a
//! file can describe (and the checker can reject) a non-antisymmetric table.
//! Coefficients are strings `"p/q"` or `"p"`; plain JSON integers are accepted.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::action::ActionMap;
use super::lie::{BasisElement, Dgla, Differential, GradedBasis, GradedLieAlgebra};
use super::linalg;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Text(String),
    Integer(i64),
}

impl Coefficient {
    fn parse(&self) -> Result<Rational> {
        match self {
            Coefficient::Integer(n) => Ok(Rational::from_integer(BigInt::from(*n))),
            Coefficient::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Term {
    k: String,
    c: Coefficient,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BracketEntry {
    i: String,
    j: String,
    out: Vec<Term>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DifferentialEntry {
    i: String,
    out: Vec<Term>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DglaFile {
    basis: Vec<BasisElement>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
    #[serde(default)]
    differential: Vec<DifferentialEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ActionEntry {
    x: String,
    i: String,
    out: Vec<Term>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ActionFile {
    action: Vec<ActionEntry>,
}

fn vector(basis: &GradedBasis, terms: &[Term]) -> Result<Vec<Rational>> {
    let mut v: Vec<Rational> = linalg::zeros(basis.len());
    for t in terms {
        let k = basis.index_of(&t.k)?;
        v[k] = v[k].clone() + t.c.parse()?;
    }
    Ok(v)
}

fn terms(basis: &GradedBasis, v: &[Rational]) -> Vec<Term> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Term { k: basis.label(k).to_string(), c: Coefficient::Text(c.to_string()) })
        .collect()
}

pub fn dgla_from_json(text: &str) -> Result<Dgla<Rational>> {
    let file: DglaFile = serde_json::from_str(text)?;
    let basis = GradedBasis::new(file.basis)?;
    let n = basis.len();
    let mut alg = GradedLieAlgebra::abelian(basis.clone());
    let mut seen = std::collections::HashSet::new();
    for b in &file.brackets {
        let (i, j) = (basis.index_of(&b.i)?, basis.index_of(&b.j)?);
        if !seen.insert((i, j)) {
            return Err(Error::InvalidBasis(format!("bracket [{}, {}] listed twice", b.i, b.j)));
        }
        alg.set_bracket(i, j, vector(&basis, &b.out)?);
    }
    let mut d = linalg::zero_matrix(n, n);
    for row in &file.differential {
        let i = basis.index_of(&row.i)?;
        d[i] = vector(&basis, &row.out)?;
    }
    Dgla::new(alg, Differential::new(d)?)
}

pub fn dgla_to_json(d: &Dgla<Rational>) -> serde_json::Value {
    let basis = d.basis();
    let n = d.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let out = terms(basis, d.algebra.bracket_basis(i, j));
            if !out.is_empty() {
                brackets.push(BracketEntry { i: basis.label(i).into(), j: basis.label(j).into(), out });
            }
        }
    }
    let differential = (0..n)
        .filter_map(|i| {
            let out = terms(basis, &d.differential.matrix()[i]);
            (!out.is_empty()).then(|| DifferentialEntry { i: basis.label(i).into(), out })
        })
        .collect();
    let file = DglaFile { basis: basis.elements().to_vec(), brackets, differential };
    serde_json::to_value(file).expect("serializable")
}

/// Reads `{"action": [{"x": g-label, "i": h-label, "out": [{"k": h-label, "c": "p/q"}]}]}`
/// meaning `α(x)(i) = Σ c·k`.
pub fn action_from_json(g: &Dgla<Rational>, h: &Dgla<Rational>, text: &str) -> Result<ActionMap<Rational>> {
    let file: ActionFile = serde_json::from_str(text)?;
    let m = h.dim();
    let mut matrices = vec![linalg::zero_matrix(m, m); g.dim()];
    for e in &file.action {
        let x = g.basis().index_of(&e.x)?;
        let i = h.basis().index_of(&e.i)?;
        matrices[x][i] = vector(h.basis(), &e.out)?;
    }
    ActionMap::new(g.clone(), h.clone(), matrices)
}

pub fn action_to_json(alpha: &ActionMap<Rational>) -> serde_json::Value {
    let (g, h) = (&alpha.actor, &alpha.module);
    let mut action = Vec::new();
    for (x, mat) in alpha.matrices.iter().enumerate() {
        for (i, row) in mat.iter().enumerate() {
            let out = terms(h.basis(), row);
            if !out.is_empty() {
                action.push(ActionEntry { x: g.basis().label(x).into(), i: h.basis().label(i).into(), out });
            }
        }
    }
    serde_json::to_value(ActionFile { action }).expect("serializable")
}
