//! Named-invariant queries: `e[2]`, `h[2,1]`, `p[3]@[1,2]`, `div e[2,2]`,
//! `bracket[1,2]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::divpow::{DPElement, Poly};
use crate::error::{DpError, Result};
use crate::modarith::PrimeCtx;
use crate::partitions::{CyclePattern, MultiPartition, Partition};
use crate::symmfunc::{bracket, divided_family, pattern_function, FamilyIndex, Kind, MatrixVarCtx};
use crate::vecscovecs::VecCovecCtx;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    /// The ordinary product of `f_{i}` over the parts, optionally along a pattern.
    Product {
        kind: Kind,
        parts: Vec<u32>,
        pattern: Option<CyclePattern>,
    },
    /// Divided `e_lambda`, `h_lambda` or `p_lambda`.
    Divided {
        kind: Kind,
        lambda: Partition,
        pattern: Option<CyclePattern>,
    },
    Bracket { i: usize, j: usize },
}

#[derive(Debug, Clone)]
pub enum Element {
    Ordinary(Poly),
    Divided(DPElement),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Ordinary(x) => write!(f, "{x}"),
            Element::Divided(x) => write!(f, "{x}"),
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| DpError::Parse(format!("expected [..], got {text:?}")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|e| DpError::Parse(format!("{t:?}: {e}"))))
        .collect()
}

pub fn parse_query(text: &str) -> Result<Query> {
    let t = text.trim();
    let (divided, t) = match t.strip_prefix("div ") {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t),
    };
    let open = t
        .find('[')
        .ok_or_else(|| DpError::Parse(format!("missing index list in {text:?}")))?;
    let name = &t[..open];
    let (list, pattern) = match t[open..].split_once('@') {
        Some((l, b)) => (l, Some(CyclePattern::parse(b)?)),
        None => (&t[open..], None),
    };
    let parts = parse_list(list)?;
    if parts.contains(&0) {
        return Err(DpError::Parse("indices start at 1".into()));
    }
    let kind = match name {
        "e" => Kind::E,
        "h" => Kind::H,
        "p" => Kind::P,
        "bracket" => {
            if divided || pattern.is_some() || parts.len() != 2 {
                return Err(DpError::Parse("bracket takes exactly [i,j]".into()));
            }
            return Ok(Query::Bracket {
                i: parts[0] as usize,
                j: parts[1] as usize,
            });
        }
        _ => return Err(DpError::Parse(format!("unknown function {name:?}"))),
    };
    Ok(if divided {
        Query::Divided {
            kind,
            lambda: Partition::new(parts),
            pattern,
        }
    } else {
        Query::Product {
            kind,
            parts,
            pattern,
        }
    })
}

/// Number of matrix slots a pattern needs.
fn slots(pattern: &Option<CyclePattern>) -> usize {
    pattern
        .as_ref()
        .map_or(1, |b| *b.word().iter().max().unwrap_or(&1) as usize)
}

/// Evaluates a query in `n x n` matrices (or `n`-dimensional vectors for
/// brackets).
pub fn evaluate(q: &Query, n: usize, ctx: PrimeCtx) -> Result<Element> {
    match q {
        Query::Product {
            kind,
            parts,
            pattern,
        } => {
            let mctx = MatrixVarCtx::new(n, slots(pattern), ctx)?;
            let b = pattern.clone().unwrap_or_else(|| CyclePattern::single(1));
            let mut acc = Poly::one(mctx.vars().clone(), ctx);
            for &i in parts {
                acc = acc.mul(&pattern_function(*kind, i as usize, &b, &mctx)?)?;
            }
            Ok(Element::Ordinary(acc))
        }
        Query::Divided {
            kind,
            lambda,
            pattern,
        } => {
            let mctx = MatrixVarCtx::new(n, slots(pattern), ctx)?;
            let index = match pattern {
                None => FamilyIndex::Single(lambda.clone()),
                Some(b) => {
                    FamilyIndex::Multi(MultiPartition::new(BTreeMap::from([(b.clone(), lambda.clone())]))?)
                }
            };
            Ok(Element::Divided(divided_family(&index, *kind, &mctx)?))
        }
        Query::Bracket { i, j } => {
            let vc = VecCovecCtx::new(n, *i, *j, ctx)?;
            Ok(Element::Ordinary(bracket(*i, *j, &vc)?))
        }
    }
}
