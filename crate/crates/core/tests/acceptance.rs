//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::One;
use parking_core::colored::ColoredProcedure;
use parking_core::enumeration::universal_count;
use parking_core::forests::{encode, project, shape_count, BinaryTree, IndexedForest};
use parking_core::probabilistic::{abelian_uniqueness_check, Equation, ProbTable};
use parking_core::procedures::builtin;
use parking_core::words::WordSpace;
use parking_core::{Direction, DirTable, Enumerator, ProbProcedure, Procedure, QParam, Rational, SpotSet, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn(&Enumerator) -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// right, left, closest, prime, lbs and five random direction tables.
fn universal_procedures() -> Vec<Procedure> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<Procedure> = ["right", "left", "closest", "prime", "lbs"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect();
    for _ in 0..5 {
        let beyond = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
        let table = DirTable::from_fn(5, beyond, |_, _| if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right });
        out.push(table.into_procedure());
    }
    out
}

fn ac1(en: &Enumerator) -> Check {
    let start = Instant::now();
    let procs = universal_procedures();
    for p in &procs {
        for r in 1..=6 {
            let n = en.count_parking(p, r).map_err(|e| e.to_string())?;
            ensure(n == universal_count(r), || format!("{} r={r}: {n} parking words", p.name()))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} procedures, r=1..6 give 1,3,16,125,1296,16807", procs.len()))
}

fn ac2(en: &Enumerator) -> Check {
    let procs = universal_procedures();
    let mut orbits = 0;
    for p in &procs {
        for r in 1..=5 {
            let rep = en.orbit_audit(p, r).map_err(|e| e.to_string())?;
            ensure(rep.all_one(), || format!("{} r={r}: {} bad orbits", p.name(), rep.violations.len()))?;
            orbits += rep.orbit_count;
        }
    }
    Ok(format!("{orbits} orbits checked, zero violations"))
}

fn ac3(en: &Enumerator) -> Check {
    let count = |spec: &str, r| en.count_parking(&builtin(spec).unwrap(), r).map_err(|e| e.to_string());
    ensure(count("evenodd", 2)? == 2, || "evenodd r=2".into())?;
    ensure(count("naples:k=1", 2)? == 4, || "naples(1) r=2".into())?;
    ensure(count("far", 3)? == 14, || "far r=3".into())?;
    let rep = en.orbit_audit(&builtin("far").unwrap(), 3).map_err(|e| e.to_string())?;
    let empty: Vec<_> = rep.violations.iter().filter(|v| v.count() == 0).collect();
    ensure(empty.len() == 2, || format!("{} empty orbits", empty.len()))?;
    for w in [[1, 3, 1], [1, 3, 3]] {
        let w = Word::from(w);
        ensure(empty.iter().any(|v| v.orbit.contains(&w)), || format!("no empty orbit holds {}", w.compact()))?;
    }
    Ok("evenodd 2, naples(1) 4, far 14 with empty orbits of 131 and 133".into())
}

fn ac4(en: &Enumerator) -> Check {
    let window = (-1i64, 8i64);
    let mut sets = 0;
    for name in ["right", "prime"] {
        let p = builtin(name).unwrap();
        for len in 1..=6usize {
            let brute = en.set_histogram(&p, window, len).map_err(|e| e.to_string())?;
            // every subset of the window of this size
            for mask in 0u32..1 << 10 {
                if mask.count_ones() as usize != len {
                    continue;
                }
                let s: SpotSet = (0..10).filter(|b| mask >> b & 1 == 1).map(|b| window.0 + b as i64).collect();
                let sizes: Vec<usize> = s.blocks().iter().map(|b| b.len()).collect();
                let fact = |n: usize| (1..=n as u128).product::<u128>();
                let expected = fact(len) / sizes.iter().map(|&k| fact(k)).product::<u128>()
                    * sizes.iter().map(|&k| (k as u128 + 1).pow(k as u32 - 1)).product::<u128>();
                let got = brute.get(&s).copied().unwrap_or(0);
                ensure(got == expected, || format!("{name} {s}: brute {got}, formula {expected}"))?;
                sets += 1;
            }
        }
    }
    Ok(format!("{sets} (procedure, set) pairs agree"))
}

fn ac5(en: &Enumerator) -> Check {
    let mut procs = vec![ProbProcedure::kw(rat(1, 3)).unwrap(), ProbProcedure::kw(rat(1, 2)).unwrap()];
    let pq: Vec<ProbProcedure> = [rat(1, 2), rat(1, 1), rat(2, 1)]
        .into_iter()
        .map(|q| ProbProcedure::pq(QParam::finite(q).unwrap()))
        .collect();
    procs.extend(pq.iter().cloned());
    for pp in &procs {
        for r in 1..=5 {
            let rep = en.total_parking_mass(pp, r).map_err(|e| e.to_string())?;
            let want = Rational::from_integer((universal_count(r) as i64).into());
            ensure(rep.total == want, || format!("{} r={r}: total {}", pp.name(), rep.total))?;
            if r <= 4 && pp.name().starts_with("pq") {
                ensure(rep.orbits.iter().all(|o| o.mass.is_one()), || format!("{} r={r}: orbit mass", pp.name()))?;
            }
        }
    }
    Ok("masses are 1,3,16,125,1296; every P^q orbit weighs 1".into())
}

fn ac6(en: &Enumerator) -> Check {
    for q in [1, 2] {
        let pp = ProbProcedure::pq(QParam::integer(q).unwrap());
        let rep = en.is_abelian(&pp, 4).map_err(|e| e.to_string())?;
        ensure(rep.abelian, || format!("P^{q} not abelian"))?;
        let table = ProbTable::from_procedure(&pp, 5).map_err(|e| e.to_string())?;
        let u = abelian_uniqueness_check(&table, 5).map_err(|e| e.to_string())?;
        ensure(u.passed(), || format!("P^{q} table fails the recurrences: {:?}", u.failure))?;
    }
    let kw = en.is_abelian(&ProbProcedure::kw(rat(1, 2)).unwrap(), 4).map_err(|e| e.to_string())?;
    let w = kw.witness.ok_or("KW(1/2) reported abelian")?;
    let half = ProbTable::from_fn(5, |_, _| rat(1, 2)).map_err(|e| e.to_string())?;
    let u = abelian_uniqueness_check(&half, 5).map_err(|e| e.to_string())?;
    let f = u.failure.ok_or("constant 1/2 table passed")?;
    ensure((f.r, f.i, f.equation) == (2, 1, Equation::First), || format!("constant table failed at ({},{})", f.r, f.i))?;
    Ok(format!(
        "P^1, P^2 abelian; KW(1/2) witness {} vs {}; constant 1/2 fails at (2,1)",
        w.word.compact(),
        w.permuted.compact()
    ))
}

fn ac7(en: &Enumerator) -> Check {
    for name in ["right", "closest", "prime", "naples:k=1", "naples:k=2"] {
        let p = builtin(name).unwrap();
        for r in 1..=5 {
            let t = en.fiber_table(&p, r).map_err(|e| e.to_string())?;
            ensure(t.consistent(), || format!("{name} r={r}: formula and brute fibers differ"))?;
            if p.flags().is_local() {
                ensure(t.total == universal_count(r), || format!("{name} r={r}: fibers sum to {}", t.total))?;
            }
        }
    }
    let t = en.fiber_table(&Procedure::right(), 3).map_err(|e| e.to_string())?;
    ensure(t.shape_multiset() == vec![6, 4, 3, 2, 1] && t.total == 16, || format!("right r=3 shapes {:?}", t.shape_multiset()))?;
    Ok("fibers agree for r<=5; right r=3 shapes 6,4,3,2,1".into())
}

fn ac8(en: &Enumerator) -> Check {
    for k in 1..=2 {
        let p = builtin(&format!("naples:k={k}")).unwrap();
        for r in 1..=5 {
            let mut total = 0;
            for t in BinaryTree::all_of_size(r) {
                total += shape_count(&p, &IndexedForest::from_tree(t)).map_err(|e| e.to_string())?;
            }
            let brute = en.count_parking(&p, r).map_err(|e| e.to_string())?;
            ensure(total == brute, || format!("naples({k}) r={r}: shapes {total}, brute {brute}"))?;
        }
    }
    Ok("shape sums equal parking counts for k=1,2 and r<=5".into())
}

fn ac9(_: &Enumerator) -> Check {
    let names = ["right", "left", "closest", "prime", "evenodd", "naples:k=1", "naples:k=2", "far", "lbs"];
    let mut words = 0;
    for name in names {
        let p = builtin(name).unwrap();
        for r in 1..=4 {
            let mut seen = HashSet::new();
            for w in WordSpace::cyclic(r).iter() {
                let fp = encode(&p, &w);
                let run = p.run(&w);
                ensure(project(&fp) == run.occupied, || format!("{name}: projection of {w}"))?;
                ensure(seen.insert(fp.clone()), || format!("{name}: encoding of {w} repeats"))?;
                let labels_ok = fp.shape().support().iter().zip(fp.q_labels()).all(|(s, &q)| run.parked[q - 1] == s);
                ensure(labels_ok, || format!("{name}: canonical labels of {w}"))?;
                ensure(fp.shape().is_parking_shape() == run.is_parking(), || format!("{name}: shape of {w}"))?;
                words += 1;
            }
        }
    }
    Ok(format!("{words} encodings checked"))
}

fn ac10(en: &Enumerator) -> Check {
    let p = ColoredProcedure::lbs();
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for r in 1..=3 {
        let rep = en.colored_orbit_audit(&p, r, &[1u8, 2]).map_err(|e| e.to_string())?;
        ensure(rep.all_one(), || format!("r={r}: {:?}", rep.violations.first()))?;
        for (k, v) in rep.histogram {
            *hist.entry(k).or_default() += v;
        }
    }
    Ok(format!("{} classes, each with one parking word", hist.values().sum::<u64>()))
}

fn main() -> ExitCode {
    let en = Enumerator::new();
    let criteria: [Criterion; 10] = [
        ("universality", ac1),
        ("cyclic orbits", ac2),
        ("counterexample counts", ac3),
        ("shuffle decomposition", ac4),
        ("probabilistic mass", ac5),
        ("abelianity", ac6),
        ("fibers and shapes", ac7),
        ("naples recursion", ac8),
        ("correspondence invariants", ac9),
        ("colored orbits", ac10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&en);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
