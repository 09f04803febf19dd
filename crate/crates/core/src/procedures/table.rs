//! Local memoryless procedures given by an explicit table of directions.

use serde::{Deserialize, Serialize};

use super::{Context, Direction, Flags, Procedure};
use crate::error::{Error, Result};

/// `rows[r - 1][i - 1]` is the direction taken by a car preferring the
/// `i`-th spot of a block of size `r`. Larger blocks use `default_beyond`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableDoc", into = "TableDoc")]
pub struct DirTable {
    rows: Vec<Vec<Direction>>,
    default_beyond: Direction,
    strict: bool,
}

const TABLE_TYPE: &str = "memoryless_local";

#[derive(Serialize, Deserialize)]
struct TableDoc {
    #[serde(rename = "type")]
    kind: String,
    r_max: usize,
    rows: Vec<Vec<Direction>>,
    default_beyond: Direction,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    strict: bool,
}

impl TryFrom<TableDoc> for DirTable {
    type Error = Error;

    fn try_from(doc: TableDoc) -> Result<Self> {
        if doc.kind != TABLE_TYPE {
            return Err(Error::InvalidTable(format!(
                "type is `{}`, expected `{TABLE_TYPE}`",
                doc.kind
            )));
        }
        if doc.rows.len() != doc.r_max {
            return Err(Error::InvalidTable(format!(
                "r_max is {} but {} rows were given",
                doc.r_max,
                doc.rows.len()
            )));
        }
        let mut table = DirTable::new(doc.rows, doc.default_beyond)?;
        table.strict = doc.strict;
        Ok(table)
    }
}

impl From<DirTable> for TableDoc {
    fn from(t: DirTable) -> Self {
        TableDoc {
            kind: TABLE_TYPE.to_string(),
            r_max: t.rows.len(),
            rows: t.rows,
            default_beyond: t.default_beyond,
            strict: t.strict,
        }
    }
}

impl DirTable {
    pub fn new(rows: Vec<Vec<Direction>>, default_beyond: Direction) -> Result<Self> {
        if let Some((r, row)) = rows.iter().enumerate().find(|(r, row)| row.len() != r + 1) {
            return Err(Error::InvalidTable(format!(
                "row {} has {} entries, expected {}",
                r + 1,
                row.len(),
                r + 1
            )));
        }
        Ok(DirTable {
            rows,
            default_beyond,
            strict: false,
        })
    }

    pub fn from_fn(r_max: usize, default_beyond: Direction, mut f: impl FnMut(usize, usize) -> Direction) -> Self {
        let rows = (1..=r_max)
            .map(|r| (1..=r).map(|i| f(r, i)).collect())
            .collect();
        DirTable {
            rows,
            default_beyond,
            strict: false,
        }
    }

    /// Reads off `Dir(r, i)` from a local memoryless procedure.
    pub fn from_procedure(p: &Procedure, r_max: usize) -> Result<Self> {
        let flags = p.flags();
        if !(flags.memoryless && flags.is_local()) {
            return Err(Error::NotApplicable {
                name: p.name().to_string(),
                required: "local and memoryless",
            });
        }
        let mut rows = Vec::with_capacity(r_max);
        for r in 1..=r_max {
            rows.push(
                (1..=r as i64)
                    .map(|i| p.dir_of(r, i))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        DirTable::new(rows, Direction::Right)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidTable(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("direction tables always serialize")
    }

    pub fn r_max(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Direction>] {
        &self.rows
    }

    pub fn default_beyond(&self) -> Direction {
        self.default_beyond
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// In strict mode enumeration refuses lengths that would consult rows
    /// beyond `r_max`.
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn get(&self, r: usize, i: usize) -> Direction {
        assert!(1 <= i && i <= r, "position {i} outside a block of size {r}");
        self.rows
            .get(r - 1)
            .map(|row| row[i - 1])
            .unwrap_or(self.default_beyond)
    }

    pub fn into_procedure(self) -> Procedure {
        let limit = self.strict.then_some(self.rows.len());
        Procedure::new("table", Flags::LOCAL_MEMORYLESS, move |ctx: &Context<'_>| {
            let block = ctx.block;
            self.get(block.len(), (ctx.spot() - block.lo + 1) as usize)
        })
        .with_strict_limit(limit)
    }
}
