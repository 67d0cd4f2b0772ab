//! Textbook states for `--fixed "A|B"`.
//!
//! Grammar: `diag(p1,...,pN)`, `pure(a1,...,aN)` (real amplitudes, normalized
//! here), `basis(i)`, `plus`, `bell`, `maximally-mixed` (alias `mixed`).
//! Dimension-free forms take the dimension of the other side, or `--n`.

use crate::error::{Error, Result};
use crate::linalg::{CVector, DensityMatrix, PureState, C64};

#[derive(Clone, Debug, PartialEq)]
enum Spec {
    Diag(Vec<f64>),
    Pure(Vec<f64>),
    Basis(usize),
    Plus,
    Bell,
    Mixed,
}

impl Spec {
    fn dim(&self) -> Option<usize> {
        match self {
            Spec::Diag(p) | Spec::Pure(p) => Some(p.len()),
            Spec::Bell => Some(4),
            Spec::Basis(_) | Spec::Plus | Spec::Mixed => None,
        }
    }

    fn build(&self, n: usize) -> Result<DensityMatrix> {
        match self {
            Spec::Diag(p) => DensityMatrix::from_diagonal(p),
            Spec::Pure(a) => {
                let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm == 0.0 {
                    return Err(Error::invalid("pure(...) needs a nonzero amplitude"));
                }
                let v = CVector::from_iterator(a.len(), a.iter().map(|x| C64::new(x / norm, 0.0)));
                Ok(PureState::new(v)?.projector())
            }
            Spec::Basis(i) => Ok(PureState::basis(n, *i)?.projector()),
            Spec::Plus => Ok(PureState::uniform(n).projector()),
            Spec::Bell => PureState::maximally_entangled(2).projector().with_split(2, 2),
            Spec::Mixed => Ok(DensityMatrix::maximally_mixed(n)),
        }
    }
}

fn numbers(body: &str) -> Result<Vec<f64>> {
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("'{}' is not a number", t.trim())))
        })
        .collect()
}

fn parse_one(s: &str) -> Result<Spec> {
    let s = s.trim();
    let call = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
    if let Some(body) = call("diag") {
        return Ok(Spec::Diag(numbers(body)?));
    }
    if let Some(body) = call("pure") {
        return Ok(Spec::Pure(numbers(body)?));
    }
    if let Some(body) = call("basis") {
        let i = body
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("basis index '{body}' is not an integer")))?;
        return Ok(Spec::Basis(i));
    }
    match s {
        "plus" => Ok(Spec::Plus),
        "bell" => Ok(Spec::Bell),
        "maximally-mixed" | "mixed" => Ok(Spec::Mixed),
        _ => Err(Error::invalid(format!("unrecognized fixed state '{s}'"))),
    }
}

/// Parses `"A|B"` into two states of a common dimension.
pub fn parse_pair(s: &str, n: Option<usize>) -> Result<(DensityMatrix, DensityMatrix)> {
    let (a, b) = s
        .split_once('|')
        .ok_or_else(|| Error::invalid("--fixed expects two states separated by '|'"))?;
    let (a, b) = (parse_one(a)?, parse_one(b)?);
    let dim = match (a.dim(), b.dim(), n) {
        (Some(x), Some(y), _) if x != y => return Err(Error::DimensionMismatch(x, y)),
        (Some(x), _, _) | (None, Some(x), _) => x,
        (None, None, Some(x)) => x,
        (None, None, None) => return Err(Error::invalid("--fixed states need --n to fix the dimension")),
    };
    if let Some(m) = n {
        if m != dim {
            return Err(Error::DimensionMismatch(m, dim));
        }
    }
    Ok((a.build(dim)?, b.build(dim)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_textbook_pairs() {
        let (a, b) = parse_pair("diag(1,0)|maximally-mixed", None).unwrap();
        assert_eq!(a.diagonal(), vec![1.0, 0.0]);
        assert_eq!(b.diagonal(), vec![0.5, 0.5]);

        let (a, b) = parse_pair("bell|mixed", None).unwrap();
        assert_eq!((a.dim(), b.dim()), (4, 4));

        let (a, _) = parse_pair("pure(1,1)|basis(0)", None).unwrap();
        assert!((a.diagonal()[0] - 0.5).abs() < 1e-15);

        assert!(parse_pair("plus|basis(1)", Some(3)).is_ok());
        assert!(parse_pair("plus|basis(1)", None).is_err());
        assert!(parse_pair("diag(1,0)|diag(1,0,0)", None).is_err());
        assert!(parse_pair("diag(1,0)", None).is_err());
        assert!(parse_pair("diag(1,x)|mixed", None).is_err());
        assert!(parse_pair("diag(0.7,0.7)|mixed", None).is_err());
    }
}
