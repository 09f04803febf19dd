//! Colored letters: preferences that carry an ordered color.
//!
//! Occupancy only looks at the value of a letter; rules may compare whole
//! letters, ordered by value and then color. Procedures can be partial, in
//! which case they come with a language of words they accept.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumeration::Enumerator;
use crate::error::{Error, Result};
use crate::procedures::{simulate, Context, Direction, Letter, Outcome, Procedure, Run};
use crate::spots::SpotSet;
use crate::words::{Shift, WordSpace};

/// Field order gives the lexicographic order on `(value, color)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredLetter<C> {
    pub value: i64,
    pub color: C,
}

impl<C> ColoredLetter<C> {
    pub fn new(value: i64, color: C) -> Self {
        ColoredLetter { value, color }
    }
}

impl<C: Clone + fmt::Debug + Send + Sync> Letter for ColoredLetter<C> {
    fn spot(&self) -> i64 {
        self.value
    }
}

impl<C: fmt::Display> fmt::Display for ColoredLetter<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.value, self.color)
    }
}

impl<C: FromStr> FromStr for ColoredLetter<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (v, c) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("colored letter `{s}` is not `value:color`")))?;
        let value = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad value in `{s}`")))?;
        let color = c
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad color in `{s}`")))?;
        Ok(ColoredLetter { value, color })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredWord<C>(pub Vec<ColoredLetter<C>>);

impl<C: Clone> ColoredWord<C> {
    pub fn new(letters: Vec<ColoredLetter<C>>) -> Self {
        ColoredWord(letters)
    }

    /// Pairs up values and colors; the shorter one decides the length.
    pub fn from_parts(values: &[i64], colors: &[C]) -> Self {
        ColoredWord(
            values
                .iter()
                .zip(colors)
                .map(|(&value, color)| ColoredLetter::new(value, color.clone()))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[ColoredLetter<C>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.value).collect()
    }

    /// Rotation on values modulo `r + 1`, colors untouched.
    pub fn rotate_values(&self, r: usize) -> Self {
        let m = r as i64 + 1;
        ColoredWord(
            self.0
                .iter()
                .map(|l| ColoredLetter::new(l.value.rem_euclid(m) + 1, l.color.clone()))
                .collect(),
        )
    }

    /// The word with letter `i` deleted.
    pub fn without(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        ColoredWord(v)
    }
}

impl<C: Clone> Shift for ColoredWord<C> {
    fn shift(&self, k: i64) -> Self {
        ColoredWord(
            self.0
                .iter()
                .map(|l| ColoredLetter::new(l.value + k, l.color.clone()))
                .collect(),
        )
    }
}

impl<C: fmt::Display> fmt::Display for ColoredWord<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl<C: FromStr> FromStr for ColoredWord<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ColoredWord(Vec::new()));
        }
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(ColoredWord)
    }
}

type Membership<C> = Arc<dyn Fn(&[ColoredLetter<C>]) -> bool + Send + Sync>;

/// A set of colored words with declared closure properties.
#[derive(Clone)]
pub struct LanguagePredicate<C> {
    name: String,
    contains: Membership<C>,
    pub subword_closed: bool,
    pub rotation_closed: bool,
}

impl<C> fmt::Debug for LanguagePredicate<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguagePredicate")
            .field("name", &self.name)
            .field("subword_closed", &self.subword_closed)
            .field("rotation_closed", &self.rotation_closed)
            .finish()
    }
}

impl<C: Ord + 'static> LanguagePredicate<C> {
    pub fn new(
        name: impl Into<String>,
        subword_closed: bool,
        rotation_closed: bool,
        contains: impl Fn(&[ColoredLetter<C>]) -> bool + Send + Sync + 'static,
    ) -> Self {
        LanguagePredicate {
            name: name.into(),
            contains: Arc::new(contains),
            subword_closed,
            rotation_closed,
        }
    }

    pub fn all() -> Self {
        LanguagePredicate::new("all", true, true, |_| true)
    }

    /// Words with pairwise distinct letters. Deleting letters keeps them
    /// distinct, and rotating values is a bijection on letters.
    pub fn distinct_letters() -> Self {
        LanguagePredicate::new("distinct-letters", true, true, |w: &[ColoredLetter<C>]| {
            let mut v: Vec<&ColoredLetter<C>> = w.iter().collect();
            v.sort();
            v.windows(2).all(|p| p[0] != p[1])
        })
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "all" => Ok(LanguagePredicate::all()),
            "distinct-letters" => Ok(LanguagePredicate::distinct_letters()),
            other => Err(Error::InvalidParameter(format!("unknown language `{other}`"))),
        }
    }
}

impl<C> LanguagePredicate<C> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, w: &ColoredWord<C>) -> bool {
        (self.contains)(&w.0)
    }
}

type ColoredDecide<C> = Arc<dyn Fn(&Context<'_, ColoredLetter<C>>) -> Result<Direction> + Send + Sync>;

/// A possibly partial procedure on colored words.
#[derive(Clone)]
pub struct ColoredProcedure<C> {
    name: String,
    language: LanguagePredicate<C>,
    rule: ColoredDecide<C>,
}

impl<C> fmt::Debug for ColoredProcedure<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredProcedure")
            .field("name", &self.name)
            .field("language", &self.language)
            .finish()
    }
}

impl<C> ColoredProcedure<C>
where
    C: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static,
{
    pub fn new(
        name: impl Into<String>,
        language: LanguagePredicate<C>,
        rule: impl Fn(&Context<'_, ColoredLetter<C>>) -> Result<Direction> + Send + Sync + 'static,
    ) -> Self {
        ColoredProcedure {
            name: name.into(),
            language,
            rule: Arc::new(rule),
        }
    }

    /// Colored LBS on the distinct-letters language: compare the whole
    /// letter with the last one parked in the block.
    pub fn lbs() -> Self {
        ColoredProcedure::new("colored-lbs", LanguagePredicate::distinct_letters(), |ctx| {
            let last = &ctx.history[ctx.last_in_block()];
            match ctx.letter.cmp(last) {
                std::cmp::Ordering::Less => Ok(Direction::Left),
                std::cmp::Ordering::Greater => Ok(Direction::Right),
                std::cmp::Ordering::Equal => Err(Error::RuleUndefined(format!(
                    "letter {} equals the last letter parked in {}",
                    ctx.letter, ctx.block
                ))),
            }
        })
    }

    /// A plain procedure that ignores colors, accepting every word.
    pub fn lift(p: Procedure) -> Self {
        let name = format!("{}+colors", p.name());
        ColoredProcedure::new(name, LanguagePredicate::all(), move |ctx| {
            let history: Vec<i64> = ctx.history.iter().map(|l| l.value).collect();
            let plain = Context {
                history: &history,
                parked: ctx.parked,
                occupied: ctx.occupied,
                block: ctx.block,
                letter: &ctx.letter.value,
            };
            Ok(p.decide(&plain))
        })
    }

    pub fn with_language(mut self, language: LanguagePredicate<C>) -> Self {
        self.language = language;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn language(&self) -> &LanguagePredicate<C> {
        &self.language
    }

    pub fn run(&self, w: &ColoredWord<C>) -> Result<Run> {
        if !self.language.contains(w) {
            return Err(Error::NotInLanguage(w.to_string()));
        }
        simulate(&w.0, |ctx| (self.rule)(ctx))
    }

    pub fn is_parking(&self, w: &ColoredWord<C>) -> Result<bool> {
        Ok(self.run(w)?.is_parking())
    }
}

/// Occupied set and outcome of a colored run.
pub fn colored_run<C>(p: &ColoredProcedure<C>, w: &ColoredWord<C>) -> Result<(SpotSet, Outcome)>
where
    C: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static,
{
    let run = p.run(w)?;
    let outcome = run.outcome();
    Ok((run.occupied, outcome))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    Subword,
    Rotation,
}

/// A word of the language whose subword or rotation is not in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub closure: Closure,
    pub word: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredClass {
    pub representative: String,
    pub parking_words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredOrbitReport {
    pub procedure: String,
    pub language: String,
    pub r: usize,
    pub colors: Vec<String>,
    pub class_count: u64,
    pub total_parking: u64,
    /// Parking words per class -> number of classes.
    pub histogram: BTreeMap<u64, u64>,
    /// Classes whose parking count is not one.
    pub violations: Vec<ColoredClass>,
    /// Set when the language fails a declared closure on the window; the
    /// class counts are then not meaningful.
    pub closure_violation: Option<ClosureWitness>,
}

impl ColoredOrbitReport {
    pub fn all_one(&self) -> bool {
        self.closure_violation.is_none() && self.violations.is_empty()
    }
}

impl Enumerator {
    /// Classes of the procedure's language under value rotation, over words
    /// of length `r` with values in `1..=r+1` and colors in `colors`.
    pub fn colored_orbit_audit<C>(&self, p: &ColoredProcedure<C>, r: usize, colors: &[C]) -> Result<ColoredOrbitReport>
    where
        C: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static,
    {
        if r == 0 || colors.is_empty() {
            return Err(Error::InvalidParameter("need r >= 1 and at least one color".into()));
        }
        self.check_cap(r)?;
        let values = WordSpace::cyclic(r);
        let color_space = WordSpace::new(0, colors.len() as i64 - 1, r);
        let lang = p.language();
        let mut closure_violation = None;
        let mut histogram = BTreeMap::new();
        let mut violations = Vec::new();
        let (mut class_count, mut total_parking) = (0, 0);
        for ci in 0..color_space.size() {
            let cword: Vec<C> = color_space.word_at(ci).iter().map(|&c| colors[c as usize].clone()).collect();
            for vi in 0..values.size() {
                let w = ColoredWord::from_parts(&values.word_at(vi), &cword);
                if !lang.contains(&w) {
                    continue;
                }
                if closure_violation.is_none() {
                    closure_violation = closure_witness(lang, &w, r);
                }
                if w.0[0].value != 1 {
                    continue;
                }
                let mut parking = Vec::new();
                let mut member = w.clone();
                for _ in 0..=r {
                    if lang.contains(&member) && p.is_parking(&member)? {
                        parking.push(member.to_string());
                    }
                    member = member.rotate_values(r);
                }
                class_count += 1;
                total_parking += parking.len() as u64;
                *histogram.entry(parking.len() as u64).or_default() += 1;
                if parking.len() != 1 {
                    violations.push(ColoredClass {
                        representative: w.to_string(),
                        parking_words: parking,
                    });
                }
            }
        }
        Ok(ColoredOrbitReport {
            procedure: p.name().to_string(),
            language: lang.name().to_string(),
            r,
            colors: colors.iter().map(ToString::to_string).collect(),
            class_count,
            total_parking,
            histogram,
            violations,
            closure_violation,
        })
    }
}

fn closure_witness<C>(lang: &LanguagePredicate<C>, w: &ColoredWord<C>, r: usize) -> Option<ClosureWitness>
where
    C: Clone + fmt::Display,
{
    if lang.rotation_closed {
        let rot = w.rotate_values(r);
        if !lang.contains(&rot) {
            return Some(ClosureWitness {
                closure: Closure::Rotation,
                word: w.to_string(),
                image: rot.to_string(),
            });
        }
    }
    if lang.subword_closed {
        for i in 0..w.len() {
            let sub = w.without(i);
            if !lang.contains(&sub) {
                return Some(ClosureWitness {
                    closure: Closure::Subword,
                    word: w.to_string(),
                    image: sub.to_string(),
                });
            }
        }
    }
    None
}
