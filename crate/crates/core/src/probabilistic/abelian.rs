//! Right-probability tables of local memoryless procedures and the two
//! recurrences that single out the abelian ones.

use serde::{Deserialize, Serialize};

use super::{check_probability, format_rational, q_ratio, ratio_str, ProbProcedure, QParam, Rational};
use crate::error::{Error, Result};
use crate::procedures::{Context, Flags};
use crate::spots::SpotSet;

/// `rows[r - 1][i - 1] = p(r, i)`, the probability of going right for the
/// `i`-th spot of a block of size `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbTable {
    rows: Vec<Vec<Rational>>,
}

impl ProbTable {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(Error::InvalidTable(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    r + 1
                )));
            }
            for p in row {
                check_probability(p)?;
            }
        }
        Ok(ProbTable { rows })
    }

    pub fn from_fn(r_max: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        ProbTable::new(
            (1..=r_max)
                .map(|r| (1..=r).map(|i| f(r, i)).collect())
                .collect(),
        )
    }

    /// Reads `p(r, i)` off a local memoryless procedure.
    pub fn from_procedure(pp: &ProbProcedure, r_max: usize) -> Result<Self> {
        let flags = pp.flags();
        if !(flags.memoryless && flags.is_local()) {
            return Err(Error::NotApplicable {
                name: pp.name().to_string(),
                required: "local and memoryless",
            });
        }
        ProbTable::from_fn(r_max, |r, i| {
            let s = SpotSet::interval(1, r as i64);
            let parked: Vec<i64> = s.iter().collect();
            let a = i as i64;
            let ctx = Context {
                history: &parked,
                parked: &parked,
                occupied: &s,
                block: s.blocks()[0],
                letter: &a,
            };
            pp.right_probability(&ctx)
        })
    }

    pub fn r_max(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, i: usize) -> &Rational {
        &self.rows[r - 1][i - 1]
    }

    /// Local memoryless procedure following the table; blocks larger than
    /// `r_max` go right with probability `beyond`.
    pub fn into_procedure(self, beyond: Rational) -> Result<ProbProcedure> {
        check_probability(&beyond)?;
        Ok(ProbProcedure::new("prob-table", Flags::LOCAL_MEMORYLESS, move |ctx: &Context<'_>| {
            let r = ctx.block.len();
            let i = (ctx.spot() - ctx.block.lo + 1) as usize;
            self.rows.get(r - 1).map(|row| row[i - 1].clone()).unwrap_or_else(|| beyond.clone())
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equation {
    /// `p(r, i) = ([i] / [r]) p(r, r)` for `i < r`.
    First,
    /// `p(r, r) = 1/(1+q) + (q/(1+q)) p(r, r-1)`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessFailure {
    pub r: usize,
    pub i: usize,
    pub equation: Equation,
    #[serde(with = "ratio_str")]
    pub expected: Rational,
    #[serde(with = "ratio_str")]
    pub actual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    /// Derived from `p(1, 1) = 1 / (1 + q)`.
    pub q: QParam,
    pub r_max: usize,
    pub failure: Option<UniquenessFailure>,
    /// Whether the table equals `[i] / [r + 1]` entrywise.
    pub matches_pq: bool,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks both recurrences for every `2 <= r <= r_max`, in order of `r`
/// and, within a row, the first recurrence before the second.
pub fn abelian_uniqueness_check(table: &ProbTable, r_max: usize) -> Result<UniquenessReport> {
    if r_max < 1 || r_max > table.r_max() {
        return Err(Error::InvalidParameter(format!(
            "r_max {r_max} outside 1..={}",
            table.r_max()
        )));
    }
    let q = QParam::from_p11(table.get(1, 1))?;
    let mut failure = None;
    'rows: for r in 2..=r_max {
        let prr = table.get(r, r);
        for i in 1..r {
            let expected = q_ratio(i, r, &q)? * prr;
            let actual = table.get(r, i);
            if &expected != actual {
                failure = Some(UniquenessFailure {
                    r,
                    i,
                    equation: Equation::First,
                    expected,
                    actual: actual.clone(),
                });
                break 'rows;
            }
        }
        let expected = q.one_over_one_plus() + q.q_over_one_plus() * table.get(r, r - 1);
        if &expected != prr {
            failure = Some(UniquenessFailure {
                r,
                i: r,
                equation: Equation::Second,
                expected,
                actual: prr.clone(),
            });
            break;
        }
    }
    let mut matches_pq = true;
    for r in 1..=r_max {
        for i in 1..=r {
            if &q_ratio(i, r + 1, &q)? != table.get(r, i) {
                matches_pq = false;
            }
        }
    }
    Ok(UniquenessReport {
        q,
        r_max,
        failure,
        matches_pq,
    })
}

impl std::fmt::Display for UniquenessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} recurrence fails at (r, i) = ({}, {}): expected {}, table has {}",
            self.equation,
            self.r,
            self.i,
            format_rational(&self.expected),
            format_rational(&self.actual)
        )
    }
}
