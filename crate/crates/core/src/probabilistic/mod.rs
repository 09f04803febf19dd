//! Probabilistic bilateral procedures over exact rationals.
//!
//! When a preferred spot is occupied, a probabilistic rule returns the
//! probability of taking the free spot right of the block. The distribution
//! of occupied sets after a word is computed by expanding every branch point
//! and merging configurations that the rule cannot tell apart: equal occupied
//! sets for memoryless rules, equal parking histories otherwise.

mod abelian;
mod mass;
mod qparam;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::procedures::builtin::parse_spec;
use crate::procedures::{builtin, Context, Direction, Flags, Procedure};
use crate::spots::SpotSet;

pub use abelian::{abelian_uniqueness_check, Equation, ProbTable, UniquenessFailure, UniquenessReport};
pub use mass::{AbelianReport, AbelianWitness, MassReport};
pub use qparam::{q_integer, q_ratio, QParam};

pub type Rational = num_rational::BigRational;

/// Renders as `num/den`, always with a denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("rational `{s}`: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("rational `{s}` has zero denominator")));
            }
            Ok(Rational::new(int(n)?, d))
        }
        None => Ok(Rational::from_integer(int(s)?)),
    }
}

pub(crate) fn check_probability(p: &Rational) -> Result<()> {
    if p.is_negative() || p > &Rational::one() {
        Err(Error::InvalidParameter(format!(
            "probability {} outside [0,1]",
            format_rational(p)
        )))
    } else {
        Ok(())
    }
}

pub(crate) mod ratio_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Probability of going right, given the decision context.
pub trait ProbRule: Send + Sync {
    fn right_probability(&self, ctx: &Context<'_>) -> Rational;
}

impl<F> ProbRule for F
where
    F: Fn(&Context<'_>) -> Rational + Send + Sync,
{
    fn right_probability(&self, ctx: &Context<'_>) -> Rational {
        self(ctx)
    }
}

#[derive(Clone)]
pub struct ProbProcedure {
    name: String,
    flags: Flags,
    rule: Arc<dyn ProbRule>,
}

impl fmt::Debug for ProbProcedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProbProcedure")
            .field("name", &self.name)
            .field("flags", &self.flags)
            .finish()
    }
}

impl ProbProcedure {
    /// The rule must return values in `[0, 1]`; evaluation panics otherwise.
    pub fn new(name: impl Into<String>, flags: Flags, rule: impl ProbRule + 'static) -> Self {
        ProbProcedure {
            name: name.into(),
            flags,
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn right_probability(&self, ctx: &Context<'_>) -> Rational {
        let p = self.rule.right_probability(ctx);
        assert!(
            !p.is_negative() && p <= Rational::one(),
            "{}: probability {} outside [0,1]",
            self.name,
            format_rational(&p)
        );
        p
    }

    /// Konheim-Weiss: right with probability `q` on every collision.
    pub fn kw(q: Rational) -> Result<Self> {
        check_probability(&q)?;
        let name = format!("kw:q={}", QParam::Finite(q.clone()));
        Ok(ProbProcedure::new(name, Flags::LOCAL_MEMORYLESS, move |_: &Context<'_>| q.clone()))
    }

    /// Car `i` goes right with probability `qs[i - 1]`; cars past the end of
    /// the sequence reuse its last entry. The rule only depends on the
    /// number of parked cars, which the occupied set determines.
    pub fn kw_sequence(qs: Vec<Rational>) -> Result<Self> {
        if qs.is_empty() {
            return Err(Error::InvalidParameter("kwseq needs at least one probability".into()));
        }
        for q in &qs {
            check_probability(q)?;
        }
        let name = format!(
            "kwseq:q={}",
            qs.iter().map(|q| QParam::Finite(q.clone()).to_string()).collect::<Vec<_>>().join(";")
        );
        let flags = Flags {
            memoryless: true,
            shift_invariant: true,
            locally_decided: false,
        };
        Ok(ProbProcedure::new(name, flags, move |ctx: &Context<'_>| {
            let i = ctx.car_index().min(qs.len());
            qs[i - 1].clone()
        }))
    }

    /// Right with probability `[i] / [r + 1]` for the `i`-th spot of a block
    /// of size `r`.
    pub fn pq(q: QParam) -> Self {
        let name = format!("pq:q={q}");
        ProbProcedure::new(name, Flags::LOCAL_MEMORYLESS, move |ctx: &Context<'_>| {
            let r = ctx.block.len();
            let i = (ctx.spot() - ctx.block.lo + 1) as usize;
            q_ratio(i, r + 1, &q).expect("1 <= i <= r")
        })
    }

    /// Embeds a deterministic procedure as 0/1 probabilities.
    pub fn deterministic(p: Procedure) -> Self {
        let name = p.name().to_string();
        let flags = p.flags();
        ProbProcedure::new(name, flags, move |ctx: &Context<'_>| match p.decide(ctx) {
            Direction::Right => Rational::one(),
            Direction::Left => Rational::zero(),
        })
    }

    /// Exact distribution of the occupied set after `word`.
    pub fn measure(&self, word: &[i64]) -> Measure {
        struct Branch {
            occupied: SpotSet,
            parked: Vec<i64>,
            weight: Rational,
        }
        let merge_on_set = self.flags.memoryless;
        let mut layer: HashMap<Vec<i64>, Branch> = HashMap::new();
        layer.insert(
            Vec::new(),
            Branch {
                occupied: SpotSet::new(),
                parked: Vec::new(),
                weight: Rational::one(),
            },
        );
        for (i, &a) in word.iter().enumerate() {
            let mut next: HashMap<Vec<i64>, Branch> = HashMap::with_capacity(layer.len() * 2);
            let mut push = |b: &Branch, spot: i64, weight: Rational| {
                if weight.is_zero() {
                    return;
                }
                let mut occupied = b.occupied.clone();
                occupied.insert(spot);
                let mut parked = b.parked.clone();
                parked.push(spot);
                let key = if merge_on_set {
                    occupied.as_slice().to_vec()
                } else {
                    parked.clone()
                };
                match next.get_mut(&key) {
                    Some(existing) => existing.weight += weight,
                    None => {
                        next.insert(key, Branch { occupied, parked, weight });
                    }
                }
            };
            for b in layer.values() {
                match b.occupied.block_of(a) {
                    None => push(b, a, b.weight.clone()),
                    Some(block) => {
                        let ctx = Context {
                            history: &word[..i],
                            parked: &b.parked,
                            occupied: &b.occupied,
                            block,
                            letter: &a,
                        };
                        let p = self.right_probability(&ctx);
                        let q = Rational::one() - &p;
                        push(b, block.right_gap(), &b.weight * p);
                        push(b, block.left_gap(), &b.weight * q);
                    }
                }
            }
            layer = next;
        }
        let mut support: BTreeMap<SpotSet, Rational> = BTreeMap::new();
        for b in layer.into_values() {
            *support.entry(b.occupied).or_insert_with(Rational::zero) += b.weight;
        }
        Measure { support }
    }

    /// Mass of `{1..r}` after a word of length `r`.
    pub fn parking_probability(&self, word: &[i64]) -> Rational {
        self.measure(word)
            .get(&SpotSet::interval(1, word.len() as i64))
    }
}

/// Looks up a probabilistic procedure: `kw:q=1/2`, `kwseq:q=1;1/2;0`,
/// `pq:q=2`, `pq:q=inf`, or any deterministic catalog name embedded with
/// 0/1 probabilities.
pub fn prob_builtin(spec: &str) -> Result<ProbProcedure> {
    let (name, params) = parse_spec(spec)?;
    let only_q = || -> Result<&str> {
        match params.as_slice() {
            [(k, v)] if k == "q" => Ok(v.as_str()),
            _ => Err(Error::InvalidParameter(format!("`{name}` takes exactly one parameter q"))),
        }
    };
    match name.as_str() {
        "kw" => ProbProcedure::kw(parse_rational(only_q()?)?),
        "kwseq" => ProbProcedure::kw_sequence(
            only_q()?
                .split(';')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?,
        ),
        "pq" => Ok(ProbProcedure::pq(only_q()?.parse()?)),
        _ => builtin(spec).map(ProbProcedure::deterministic),
    }
}

/// A finitely supported probability distribution on occupied sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<MeasureEntry>", try_from = "Vec<MeasureEntry>")]
pub struct Measure {
    support: BTreeMap<SpotSet, Rational>,
}

#[derive(Serialize, Deserialize)]
struct MeasureEntry {
    set: SpotSet,
    #[serde(with = "ratio_str")]
    probability: Rational,
}

impl From<Measure> for Vec<MeasureEntry> {
    fn from(m: Measure) -> Self {
        m.support
            .into_iter()
            .map(|(set, probability)| MeasureEntry { set, probability })
            .collect()
    }
}

impl TryFrom<Vec<MeasureEntry>> for Measure {
    type Error = Error;

    fn try_from(v: Vec<MeasureEntry>) -> Result<Self> {
        let support: BTreeMap<SpotSet, Rational> =
            v.into_iter().map(|e| (e.set, e.probability)).collect();
        let m = Measure { support };
        if m.total() != Rational::one() || m.support.values().any(|p| !p.is_positive()) {
            return Err(Error::Parse("measure weights must be positive and sum to 1".into()));
        }
        Ok(m)
    }
}

impl Measure {
    pub fn point(s: SpotSet) -> Self {
        Measure {
            support: BTreeMap::from([(s, Rational::one())]),
        }
    }

    pub fn get(&self, s: &SpotSet) -> Rational {
        self.support.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.support.values().sum()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SpotSet, &Rational)> {
        self.support.iter()
    }
}
