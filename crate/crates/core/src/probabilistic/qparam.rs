//! The parameter `q` in `[0, +inf]` and q-integers.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum QParam {
    Finite(Rational),
    Infinity,
}

impl QParam {
    pub fn finite(q: Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::InvalidParameter(format!("q must be >= 0, got {q}")));
        }
        Ok(QParam::Finite(q))
    }

    pub fn integer(q: i64) -> Result<Self> {
        QParam::finite(Rational::from_integer(q.into()))
    }

    /// `1 / (1 + q)`, which is 0 at infinity.
    pub fn one_over_one_plus(&self) -> Rational {
        match self {
            QParam::Finite(q) => (Rational::one() + q).recip(),
            QParam::Infinity => Rational::zero(),
        }
    }

    /// `q / (1 + q)`, which is 1 at infinity.
    pub fn q_over_one_plus(&self) -> Rational {
        match self {
            QParam::Finite(q) => q / (Rational::one() + q),
            QParam::Infinity => Rational::one(),
        }
    }

    /// The `q` with `p = 1 / (1 + q)`, for `p` in `[0, 1]`.
    pub fn from_p11(p: &Rational) -> Result<Self> {
        if p.is_negative() || p > &Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "probability {} outside [0,1]",
                format_rational(p)
            )));
        }
        if p.is_zero() {
            Ok(QParam::Infinity)
        } else {
            QParam::finite(p.recip() - Rational::one())
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QParam::Infinity => f.write_str("inf"),
            QParam::Finite(q) if q.is_integer() => write!(f, "{}", q.numer()),
            QParam::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl FromStr for QParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Infinity" => Ok(QParam::Infinity),
            other => QParam::finite(parse_rational(other)?),
        }
    }
}

impl TryFrom<String> for QParam {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<QParam> for String {
    fn from(q: QParam) -> String {
        match q {
            QParam::Infinity => "inf".into(),
            QParam::Finite(q) => format_rational(&q),
        }
    }
}

/// `[j] = 1 + q + ... + q^(j-1)` for finite `q`.
pub fn q_integer(j: usize, q: &QParam) -> Result<Rational> {
    if j < 1 {
        return Err(Error::InvalidParameter("q-integers need j >= 1".into()));
    }
    match q {
        QParam::Infinity => Err(Error::InvalidParameter(format!(
            "[{j}] diverges at q = inf; use q_ratio"
        ))),
        QParam::Finite(q) => {
            let mut sum = Rational::zero();
            let mut pow = Rational::one();
            for _ in 0..j {
                sum += &pow;
                pow *= q;
            }
            Ok(sum)
        }
    }
}

/// `[i] / [j]` for `1 <= i <= j`; at `q = inf` this is the limit, 0 for
/// `i < j` and 1 for `i = j`.
pub fn q_ratio(i: usize, j: usize, q: &QParam) -> Result<Rational> {
    if i < 1 || i > j {
        return Err(Error::InvalidParameter(format!("q-ratio [{i}]/[{j}] needs 1 <= i <= j")));
    }
    match q {
        QParam::Infinity if i == j => Ok(Rational::one()),
        QParam::Infinity => Ok(Rational::zero()),
        finite => Ok(q_integer(i, finite)? / q_integer(j, finite)?),
    }
}
