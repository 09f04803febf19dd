//! The catalog of named procedures.

use super::{Context, Direction, DirTable, Flags, Procedure};
use crate::error::{Error, Result};

/// Which of the two stated tie conventions `far` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FarConvention {
    /// Right when `R <= L`, left when `R > L`.
    Prose,
    /// Left when `L >= R`, right when `L < R`.
    Formal,
}

const HISTORY_LOCAL: Flags = Flags {
    memoryless: false,
    shift_invariant: true,
    locally_decided: true,
};

const LOCALLY_DECIDED_ONLY: Flags = Flags {
    memoryless: true,
    shift_invariant: false,
    locally_decided: true,
};

const SHIFT_INVARIANT_ONLY: Flags = Flags {
    memoryless: true,
    shift_invariant: true,
    locally_decided: false,
};

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Procedure {
    /// Classical procedure: always the nearest free spot to the right.
    pub fn right() -> Procedure {
        Procedure::new("right", Flags::LOCAL_MEMORYLESS, |_: &Context<'_>| {
            Direction::Right
        })
    }

    pub fn left() -> Procedure {
        Procedure::new("left", Flags::LOCAL_MEMORYLESS, |_: &Context<'_>| {
            Direction::Left
        })
    }

    /// Nearest free spot; ties go right.
    pub fn closest() -> Procedure {
        Procedure::new("closest", Flags::LOCAL_MEMORYLESS, |ctx: &Context<'_>| {
            let a = ctx.spot();
            if ctx.block.right_gap() - a <= a - ctx.block.left_gap() {
                Direction::Right
            } else {
                Direction::Left
            }
        })
    }

    /// Right when the block holding the preferred spot has prime size.
    pub fn prime() -> Procedure {
        Procedure::new("prime", Flags::LOCAL_MEMORYLESS, |ctx: &Context<'_>| {
            if is_prime(ctx.block.len()) {
                Direction::Right
            } else {
                Direction::Left
            }
        })
    }

    /// Right for even preferences, left for odd ones.
    pub fn evenodd() -> Procedure {
        Procedure::new("evenodd", LOCALLY_DECIDED_ONLY, |ctx: &Context<'_>| {
            if ctx.spot().rem_euclid(2) == 0 {
                Direction::Right
            } else {
                Direction::Left
            }
        })
    }

    /// k-Naples: back up at most `k` spots, never onto a spot `<= 0`.
    pub fn naples(k: i64) -> Result<Procedure> {
        if k < 1 {
            return Err(Error::InvalidParameter(format!("naples needs k >= 1, got {k}")));
        }
        Ok(Procedure::new(
            format!("naples:k={k}"),
            LOCALLY_DECIDED_ONLY,
            move |ctx: &Context<'_>| {
                let t = ctx.block.lo;
                if t > 1 && ctx.spot() - t < k {
                    Direction::Left
                } else {
                    Direction::Right
                }
            },
        ))
    }

    /// Compares the number of parked cars on each side of the preference,
    /// over the whole line.
    pub fn far(convention: FarConvention) -> Procedure {
        let name = match convention {
            FarConvention::Prose => "far",
            FarConvention::Formal => "far:convention=formal",
        };
        Procedure::new(name, SHIFT_INVARIANT_ONLY, move |ctx: &Context<'_>| {
            let a = ctx.spot();
            let spots = ctx.occupied.as_slice();
            let below = spots.partition_point(|&s| s < a);
            let above = spots.len() - spots.partition_point(|&s| s <= a);
            let go_right = match convention {
                FarConvention::Prose => above <= below,
                FarConvention::Formal => below < above,
            };
            if go_right {
                Direction::Right
            } else {
                Direction::Left
            }
        })
    }

    /// Compares the preference with that of the last car parked on the block:
    /// strictly smaller goes left, otherwise right.
    pub fn lbs() -> Procedure {
        Procedure::new("lbs", HISTORY_LOCAL, |ctx: &Context<'_>| {
            let last = ctx.history[ctx.last_in_block()];
            if *ctx.letter < last {
                Direction::Left
            } else {
                Direction::Right
            }
        })
    }

    pub fn from_table(table: DirTable) -> Procedure {
        table.into_procedure()
    }
}

/// Looks up a catalog procedure by a spec string `name[:key=value,...]`,
/// for example `closest`, `naples:k=2` or `far:convention=formal`.
pub fn builtin(spec: &str) -> Result<Procedure> {
    let (name, params) = parse_spec(spec)?;
    let get = |key: &str| params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let known = |keys: &[&str]| -> Result<()> {
        match params.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
            Some((k, _)) => Err(Error::InvalidParameter(format!("`{name}` takes no parameter `{k}`"))),
            None => Ok(()),
        }
    };
    match name.as_str() {
        "right" | "left" | "closest" | "prime" | "evenodd" | "lbs" => {
            known(&[])?;
            Ok(match name.as_str() {
                "right" => Procedure::right(),
                "left" => Procedure::left(),
                "closest" => Procedure::closest(),
                "prime" => Procedure::prime(),
                "evenodd" => Procedure::evenodd(),
                _ => Procedure::lbs(),
            })
        }
        "naples" => {
            known(&["k"])?;
            let k = match get("k") {
                Some(v) => v
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidParameter(format!("naples k `{v}`: {e}")))?,
                None => 1,
            };
            Procedure::naples(k)
        }
        "far" => {
            known(&["convention"])?;
            match get("convention").unwrap_or("prose") {
                "prose" => Ok(Procedure::far(FarConvention::Prose)),
                "formal" => Ok(Procedure::far(FarConvention::Formal)),
                other => Err(Error::InvalidParameter(format!("far convention `{other}`"))),
            }
        }
        "table" => Err(Error::InvalidParameter(
            "table procedures are built from a direction table document".into(),
        )),
        _ => Err(Error::UnknownProcedure(name)),
    }
}

/// Splits `name:k1=v1,k2=v2` into its parts.
pub(crate) fn parse_spec(spec: &str) -> Result<(String, Vec<(String, String)>)> {
    let spec = spec.trim();
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), Some(r)),
        None => (spec, None),
    };
    if name.is_empty() {
        return Err(Error::Parse(format!("empty procedure name in `{spec}`")));
    }
    let mut params = Vec::new();
    if let Some(rest) = rest {
        for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("parameter `{item}` is not key=value")))?;
            params.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    Ok((name.to_ascii_lowercase(), params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spots::{Block, SpotSet};

    fn decide_on(p: &Procedure, occupied: &[i64], a: i64) -> Direction {
        p.dir_of_set(&SpotSet::from(occupied.to_vec()), a).unwrap()
    }

    #[test]
    fn primes() {
        let primes: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn right_forced_examples() {
        let p = builtin("right").unwrap();
        let run = p.run(&[1, 1, 1]);
        assert_eq!(run.occupied, SpotSet::from([1, 2, 3]));
        assert_eq!(run.parked, vec![1, 2, 3]);
        assert!(!p.is_parking(&[2, 2]));
        assert_eq!(p.occupied(&[2, 2]), SpotSet::from([2, 3]));
    }

    #[test]
    fn lbs_examples() {
        let p = builtin("lbs").unwrap();
        assert_eq!(p.occupied(&[1, 2]), SpotSet::from([1, 2]));
        assert_eq!(p.occupied(&[2, 1]), SpotSet::from([1, 2]));
        assert_eq!(p.occupied(&[1, 2, 1]), SpotSet::from([0, 1, 2]));
        assert_eq!(p.occupied(&[2, 1, 1]), SpotSet::from([1, 2, 3]));
        assert_eq!(p.last_spot(&[1, 2, 1]), Ok(0));
    }

    #[test]
    fn lbs_record_follows_merges() {
        // cars at 1 and 3, then car 3 prefers 2 (free) and joins them; the
        // merged block's record is now preference 2
        let p = builtin("lbs").unwrap();
        assert_eq!(p.last_spot(&[1, 3, 2, 1]), Ok(0));
        assert_eq!(p.last_spot(&[1, 3, 2, 3]), Ok(4));
        assert_eq!(p.last_spot(&[1, 3, 2, 2]), Ok(4));
    }

    #[test]
    fn closest_examples() {
        let p = builtin("closest").unwrap();
        assert_eq!(decide_on(&p, &[2, 3], 2), Direction::Left);
        assert_eq!(decide_on(&p, &[2], 2), Direction::Right);
        assert_eq!(decide_on(&p, &[1, 2, 3], 2), Direction::Right);
        assert_eq!(p.last_spot(&[2, 2, 2]), Ok(1));
    }

    #[test]
    fn prime_examples() {
        let p = builtin("prime").unwrap();
        assert!(p.is_parking(&[2, 2, 2]));
        for i in 1..=4 {
            assert_eq!(p.dir_of(4, i).unwrap(), Direction::Left);
        }
        for i in 1..=5 {
            assert_eq!(p.dir_of(5, i).unwrap(), Direction::Right);
        }
        assert_eq!(p.dir_of(1, 1).unwrap(), Direction::Left);
    }

    #[test]
    fn dir_tables_of_memoryless_builtins() {
        let right = builtin("right").unwrap();
        let closest = builtin("closest").unwrap();
        for r in 1..=8usize {
            for i in 1..=r as i64 {
                assert_eq!(right.dir_of(r, i).unwrap(), Direction::Right);
                let expect = if 2 * i <= r as i64 { Direction::Left } else { Direction::Right };
                assert_eq!(closest.dir_of(r, i).unwrap(), expect, "closest ({r},{i})");
            }
        }
        assert_eq!(closest.dir_of(4, 2).unwrap(), Direction::Left);
    }

    #[test]
    fn naples_examples() {
        let p = builtin("naples:k=1").unwrap();
        assert_eq!(p.occupied(&[2, 2]), SpotSet::from([1, 2]));
        assert_eq!(p.occupied(&[1, 1]), SpotSet::from([1, 2]));
        // two back from the block edge is out of reach for k = 1
        assert_eq!(p.occupied(&[3, 4, 4]), SpotSet::from([3, 4, 5]));
        let p2 = builtin("naples:k=2").unwrap();
        assert_eq!(p2.occupied(&[3, 4, 4]), SpotSet::from([2, 3, 4]));
        // never backs onto spots <= 0
        assert_eq!(p2.occupied(&[0, 0]), SpotSet::from([0, 1]));
        assert!(builtin("naples:k=0").is_err());
        assert!(builtin("naples:k=x").is_err());
    }

    #[test]
    fn naples_matches_backing_up_description() {
        // scan a-1, ..., a-k for the first free positive spot, else go right
        let reference = |k: i64, s: &SpotSet, a: i64| -> i64 {
            for j in 1..=k {
                let c = a - j;
                if !s.contains(c) {
                    if c > 0 {
                        return c;
                    }
                    break;
                }
            }
            s.block_of(a).unwrap().right_gap()
        };
        for k in 1..=3 {
            let p = Procedure::naples(k).unwrap();
            for bits in 0u32..(1 << 7) {
                let s: SpotSet = (0..7).filter(|i| bits >> i & 1 == 1).map(|i| i as i64 - 1).collect();
                for a in s.iter() {
                    let block: Block = s.block_of(a).unwrap();
                    let got = match p.dir_of_set(&s, a).unwrap() {
                        Direction::Left => block.left_gap(),
                        Direction::Right => block.right_gap(),
                    };
                    assert_eq!(got, reference(k, &s, a), "k={k} S={s} a={a}");
                }
            }
        }
    }

    #[test]
    fn evenodd_examples() {
        let p = builtin("evenodd").unwrap();
        assert_eq!(p.occupied(&[1, 1]), SpotSet::from([0, 1]));
        assert_eq!(p.occupied(&[2, 2]), SpotSet::from([2, 3]));
        assert_eq!(p.occupied(&[-1, -1]), SpotSet::from([-2, -1]));
    }

    #[test]
    fn far_conventions() {
        let prose = builtin("far").unwrap();
        let formal = builtin("far:convention=formal").unwrap();
        // cars at 1 and 3, car prefers 1: R = 1, L = 0
        assert_eq!(prose.last_spot(&[1, 3, 1]), Ok(0));
        assert_eq!(formal.last_spot(&[1, 3, 1]), Ok(2));
        // tie R = L = 0
        assert_eq!(prose.last_spot(&[1, 1]), Ok(2));
        assert_eq!(formal.last_spot(&[1, 1]), Ok(0));
    }

    #[test]
    fn declared_flags() {
        let local = ["right", "left", "closest", "prime"];
        for n in local {
            assert_eq!(builtin(n).unwrap().flags(), Flags::LOCAL_MEMORYLESS);
        }
        let lbs = builtin("lbs").unwrap().flags();
        assert!(lbs.is_local() && !lbs.memoryless);
        let far = builtin("far").unwrap().flags();
        assert!(far.memoryless && far.shift_invariant && !far.locally_decided);
        for n in ["evenodd", "naples:k=3"] {
            let f = builtin(n).unwrap().flags();
            assert!(f.memoryless && f.locally_decided && !f.shift_invariant);
        }
    }

    #[test]
    fn unknown_names_and_params() {
        assert_eq!(builtin("nope").unwrap_err(), Error::UnknownProcedure("nope".into()));
        assert!(builtin("right:k=1").is_err());
        assert!(builtin("far:convention=sideways").is_err());
        assert!(builtin("table").is_err());
        assert!(builtin("naples:k").is_err());
        assert_eq!(builtin(" Closest ").unwrap().name(), "closest");
    }
}
