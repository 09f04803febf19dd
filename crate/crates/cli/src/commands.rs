use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use parking_core::enumeration::universal_count;
use parking_core::forests::{self, fiber_count, fiber_count_local, is_good_correspondence};
use parking_core::probabilistic::{abelian_uniqueness_check, format_rational, prob_builtin, ProbTable};
use parking_core::procedures::{builtin, check_flags, FlagCheck};
use parking_core::{DirTable, Enumerator, Exec, ProbProcedure, Procedure, Word};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::Report;
use crate::ProcArg;

const DETERMINISTIC_CAP: usize = 7;
const PROBABILISTIC_CAP: usize = 5;
const FLAGS_CAP: usize = 5;
const UNSAFE_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] parking_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(parking_core::Error::CapExceeded { .. }) => 2,
            _ => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Ctx {
    exec: Exec,
    cap_unsafe: bool,
}

impl Ctx {
    pub fn new(jobs: Option<usize>, cap_unsafe: bool) -> Self {
        let exec = match jobs {
            Some(1) => Exec::Sequential,
            Some(n) if n > 1 => {
                parking_core::exec::init_threads(n);
                Exec::Parallel
            }
            _ => Exec::Parallel,
        };
        Ctx { exec, cap_unsafe }
    }

    fn enumerator(&self, cap: usize) -> Enumerator {
        let cap = if self.cap_unsafe { UNSAFE_CAP } else { cap };
        Enumerator::new().with_cap(cap).with_exec(self.exec)
    }

    fn deterministic(&self) -> Enumerator {
        self.enumerator(DETERMINISTIC_CAP)
    }

    fn probabilistic(&self) -> Enumerator {
        self.enumerator(PROBABILISTIC_CAP)
    }
}

fn read_table(path: &PathBuf) -> Result<DirTable> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(DirTable::from_json(&text)?)
}

fn procedure(arg: &ProcArg) -> Result<Procedure> {
    match (&arg.spec, &arg.file) {
        (Some(spec), _) => Ok(builtin(spec)?),
        (None, Some(path)) => Ok(read_table(path)?.into_procedure()),
        (None, None) => Err(CliError::Input("one of --proc or --proc-file is required".into())),
    }
}

fn prob_procedure(arg: &ProcArg) -> Result<ProbProcedure> {
    match (&arg.spec, &arg.file) {
        (Some(spec), _) => Ok(prob_builtin(spec)?),
        (None, Some(path)) => Ok(ProbProcedure::deterministic(read_table(path)?.into_procedure())),
        (None, None) => Err(CliError::Input("one of --proc or --proc-file is required".into())),
    }
}

fn word(s: &str) -> Result<Word> {
    Ok(Word::parse_csv(s)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn enumerate(ctx: &Ctx, arg: &ProcArg, r: usize, expect_universal: bool) -> Result<Report> {
    let p = procedure(arg)?;
    let count = ctx.deterministic().count_parking(&p, r)?;
    let expected = universal_count(r);
    let universal = count == expected;
    let mut rep = Report::new(
        "enumerate",
        json!({ "proc": p.name(), "r": r, "expect_universal": expect_universal }),
        json!({ "count": count as u64, "expected": expected as u64, "universal": universal }),
    )
    .table(format!(
        "{count}\nprocedure {} at r={r}: {count} parking words, (r+1)^(r-1) = {expected}, universal: {}\n",
        p.name(),
        yes_no(universal)
    ))
    .csv(
        &["procedure", "r", "count", "expected"],
        vec![vec![p.name().into(), r.to_string(), count.to_string(), expected.to_string()]],
    );
    rep.expectation_failed = expect_universal && !universal;
    Ok(rep)
}

pub fn orbits(ctx: &Ctx, arg: &ProcArg, r: usize, expect_one: bool) -> Result<Report> {
    let p = procedure(arg)?;
    let audit = ctx.deterministic().orbit_audit(&p, r)?;
    let violations: Vec<Value> = audit
        .violations
        .iter()
        .map(|v| {
            json!({
                "representative": v.orbit.representative.to_string(),
                "members": v.orbit.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "parking_words": v.parking_words.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut table = String::new();
    if audit.all_one() {
        let _ = writeln!(table, "all orbits: 1");
    } else {
        for v in &audit.violations {
            let members: Vec<String> = v.orbit.members.iter().map(Word::compact).collect();
            let words: Vec<String> = v.parking_words.iter().map(Word::compact).collect();
            let _ = writeln!(
                table,
                "{{{}}}: {} parking words{}",
                members.join(","),
                v.count(),
                if words.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", words.join(","))
                }
            );
        }
    }
    let hist: Vec<String> = audit.histogram.iter().map(|(k, n)| format!("{n} with {k}")).collect();
    let _ = writeln!(
        table,
        "procedure {} at r={r}: {} orbits, {} parking words; orbits by parking count: {}",
        p.name(),
        audit.orbit_count,
        audit.total_parking,
        hist.join(", ")
    );
    let rows = audit
        .violations
        .iter()
        .map(|v| {
            vec![
                v.orbit.representative.to_string(),
                v.count().to_string(),
                v.parking_words.iter().map(Word::compact).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    let mut rep = Report::new(
        "orbits",
        json!({ "proc": p.name(), "r": r }),
        json!({
            "orbit_count": audit.orbit_count,
            "total_parking": audit.total_parking,
            "histogram": to_value(&audit.histogram),
            "all_one": audit.all_one(),
            "violations": violations,
        }),
    )
    .table(table)
    .csv(&["representative", "parking_count", "parking_words"], rows);
    rep.expectation_failed = expect_one && !audit.all_one();
    Ok(rep)
}

pub fn prob(ctx: &Ctx, arg: &ProcArg, w: Option<&str>, mass: Option<usize>) -> Result<Report> {
    let pp = prob_procedure(arg)?;
    if let Some(r) = mass {
        let m = ctx.probabilistic().total_parking_mass(&pp, r)?;
        let expected = universal_count(r);
        let total = format_rational(&m.total);
        let rows = m
            .orbits
            .iter()
            .map(|o| vec![o.representative.to_string(), format_rational(&o.mass)])
            .collect();
        return Ok(Report::new(
            "prob",
            json!({ "proc": pp.name(), "mass": r }),
            json!({
                "total": total,
                "expected": expected as u64,
                "orbits": to_value(&m.orbits),
            }),
        )
        .table(format!(
            "{total}\nprocedure {} at r={r}: total parking mass {total}, (r+1)^(r-1) = {expected}, over {} orbits\n",
            pp.name(),
            m.orbits.len()
        ))
        .csv(&["representative", "mass"], rows));
    }
    let w = word(w.expect("clap requires --word or --mass"))?;
    let m = pp.measure(&w);
    let park = format_rational(&pp.parking_probability(&w));
    let mut table = format!("{park}\nprocedure {}, word {}: parking probability {park}\n", pp.name(), w.compact());
    let mut rows = Vec::new();
    for (s, p) in m.iter() {
        let _ = writeln!(table, "  {s}  {}", format_rational(p));
        rows.push(vec![s.to_string(), format_rational(p)]);
    }
    Ok(Report::new(
        "prob",
        json!({ "proc": pp.name(), "word": w.to_string() }),
        json!({ "parking_probability": park, "measure": to_value(&m) }),
    )
    .table(table)
    .csv(&["set", "probability"], rows))
}

fn parse_sigma(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad permutation entry `{t}`")))
        })
        .collect()
}

pub fn fibers(ctx: &Ctx, arg: &ProcArg, r: usize, sigma: Option<&str>) -> Result<Report> {
    let p = procedure(arg)?;
    let en = ctx.deterministic();
    if let Some(s) = sigma {
        let sigma = parse_sigma(s)?;
        if sigma.len() != r {
            return Err(CliError::Input(format!("--sigma has {} entries, --r is {r}", sigma.len())));
        }
        let formula = fiber_count(&p, &sigma)?;
        let local = if p.flags().is_local() {
            Some(fiber_count_local(&p, &sigma)?)
        } else {
            None
        };
        let brute = en.fiber_histogram(&p, r)?.get(&sigma).copied().unwrap_or(0);
        let joined: Vec<String> = sigma.iter().map(ToString::to_string).collect();
        let mut rep = Report::new(
            "fibers",
            json!({ "proc": p.name(), "r": r, "sigma": joined.join(",") }),
            json!({ "formula": formula as u64, "local_formula": local.map(|x| x as u64), "brute": brute as u64 }),
        )
        .table(format!(
            "{formula}\nprocedure {} sigma {}: fiber {formula} by label sets, {brute} by brute force\n",
            p.name(),
            joined.join(",")
        ))
        .csv(
            &["sigma", "formula", "brute"],
            vec![vec![joined.join(" "), formula.to_string(), brute.to_string()]],
        );
        rep.expectation_failed = formula != brute || local.is_some_and(|l| l != formula);
        return Ok(rep);
    }
    let t = en.fiber_table(&p, r)?;
    let mut table = format!("{:<16} {:>8} {:>8}\n", "sigma", "formula", "brute");
    let mut rows = Vec::new();
    for row in &t.rows {
        let s: Vec<String> = row.sigma.iter().map(ToString::to_string).collect();
        let _ = writeln!(table, "{:<16} {:>8} {:>8}", s.join(","), row.formula, row.brute);
        rows.push(vec![s.join(" "), row.formula.to_string(), row.brute.to_string()]);
    }
    let multiset: Vec<String> = t.shape_multiset().iter().map(ToString::to_string).collect();
    let _ = writeln!(table, "shapes: {{{}}}", multiset.join(","));
    for s in &t.shapes {
        let _ = writeln!(table, "  {:<24} {}", s.shape, s.count);
    }
    let _ = writeln!(table, "total: {}", t.total);
    let mut rep = Report::new("fibers", json!({ "proc": p.name(), "r": r }), to_value(&t))
        .table(table)
        .csv(&["sigma", "formula", "brute"], rows);
    rep.expectation_failed = !t.consistent();
    Ok(rep)
}

pub fn encode(_: &Ctx, arg: &ProcArg, w: &str) -> Result<Report> {
    let p = procedure(arg)?;
    let w = word(w)?;
    let fp = forests::encode(&p, &w);
    let support: Vec<i64> = fp.shape().support().iter().collect();
    let parents = fp.shape().parents();
    let mut table = format!("support {}\n", fp.shape().support());
    let mut rows = Vec::new();
    let mut offset = 0;
    for (b, t) in fp.shape().support().blocks().iter().zip(fp.shape().trees()) {
        let _ = writeln!(table, "block {b} shape {t}");
        for k in offset..offset + b.len() {
            let spot = support[k];
            let role = match parents[k] {
                None => "root".to_string(),
                Some(par) if support[par] > spot => format!("left child of {}", support[par]),
                Some(par) => format!("right child of {}", support[par]),
            };
            let _ = writeln!(table, "  node {spot}: p={} q={} {role}", fp.p_labels()[k], fp.q_labels()[k]);
            rows.push(vec![
                spot.to_string(),
                fp.p_labels()[k].to_string(),
                fp.q_labels()[k].to_string(),
                parents[k].map(|par| support[par].to_string()).unwrap_or_default(),
            ]);
        }
        offset += b.len();
    }
    let p_labels: Vec<String> = fp.p_labels().iter().map(ToString::to_string).collect();
    let q_labels: Vec<String> = fp.q_labels().iter().map(ToString::to_string).collect();
    let _ = writeln!(table, "p-labels [{}]", p_labels.join(","));
    let _ = writeln!(table, "q-labels [{}]", q_labels.join(","));
    let _ = writeln!(table, "displacement {}", fp.displacement());
    let mut results = to_value(&fp);
    results["displacement"] = json!(fp.displacement());
    results["parents"] = json!(parents
        .iter()
        .map(|par| par.map(|i| support[i]))
        .collect::<Vec<_>>());
    Ok(Report::new("encode", json!({ "proc": p.name(), "word": w.to_string() }), results)
        .table(table)
        .csv(&["spot", "p", "q", "parent"], rows))
}

fn flag_line(name: &str, c: &FlagCheck) -> String {
    let mut s = format!("{name}: declared {}, observed {}", yes_no(c.declared), yes_no(c.observed()));
    if let Some(w) = &c.witness {
        let _ = write!(s, "; witness {} vs {}: {}", w.word.compact(), w.other.compact(), w.detail);
    }
    s
}

pub fn flags(ctx: &Ctx, arg: &ProcArg, r: usize) -> Result<Report> {
    let p = procedure(arg)?;
    // the search covers every length up to r over r + 1 letters
    if r > FLAGS_CAP && !ctx.cap_unsafe {
        return Err(parking_core::Error::CapExceeded { size: r, cap: FLAGS_CAP }.into());
    }
    let rep = check_flags(&p, r);
    let checks = [
        ("shift_invariant", &rep.shift_invariant),
        ("locally_decided", &rep.locally_decided),
        ("memoryless", &rep.memoryless),
    ];
    let mut table = format!("procedure {} checked on words up to length {r}\n", p.name());
    let mut rows = Vec::new();
    for (name, c) in checks {
        let _ = writeln!(table, "{}", flag_line(name, c));
        rows.push(vec![
            name.to_string(),
            c.declared.to_string(),
            c.observed().to_string(),
            c.witness.as_ref().map(|w| w.word.to_string()).unwrap_or_default(),
        ]);
    }
    let confirmed = rep.confirmed();
    let mut out = Report::new("flags", json!({ "proc": p.name(), "r": r }), to_value(&rep))
        .table(table)
        .csv(&["flag", "declared", "observed", "witness"], rows);
    out.expectation_failed = !confirmed;
    Ok(out)
}

pub fn abelian(ctx: &Ctx, arg: &ProcArg, r: usize) -> Result<Report> {
    let pp = prob_procedure(arg)?;
    let rep = ctx.probabilistic().is_abelian(&pp, r)?;
    let mut table = format!("procedure {} up to length {r}: abelian {}\n", pp.name(), yes_no(rep.abelian));
    if let Some(w) = &rep.witness {
        let _ = writeln!(table, "witness {} vs {}", w.word.compact(), w.permuted.compact());
        for (label, m) in [(w.word.compact(), &w.word_measure), (w.permuted.compact(), &w.permuted_measure)] {
            let parts: Vec<String> = m.iter().map(|(s, p)| format!("{s} {}", format_rational(p))).collect();
            let _ = writeln!(table, "  {label}: {}", parts.join(", "));
        }
    }
    let flags = pp.flags();
    let uniqueness = if flags.memoryless && flags.is_local() {
        let table_r = r.max(2);
        let u = abelian_uniqueness_check(&ProbTable::from_procedure(&pp, table_r)?, table_r)?;
        let _ = writeln!(table, "recurrences with q = {}: {}", u.q, if u.passed() { "hold" } else { "fail" });
        if let Some(f) = &u.failure {
            let _ = writeln!(
                table,
                "  first failure at (r, i) = ({}, {}), {:?} equation: expected {}, found {}",
                f.r,
                f.i,
                f.equation,
                format_rational(&f.expected),
                format_rational(&f.actual)
            );
        }
        let _ = writeln!(table, "table equals [i]/[r+1]: {}", yes_no(u.matches_pq));
        Some(u)
    } else {
        None
    };
    let rows = vec![vec![
        pp.name().to_string(),
        r.to_string(),
        rep.abelian.to_string(),
        rep.witness.as_ref().map(|w| format!("{} {}", w.word, w.permuted)).unwrap_or_default(),
        uniqueness.as_ref().map(|u| u.passed().to_string()).unwrap_or_default(),
    ]];
    Ok(Report::new(
        "abelian",
        json!({ "proc": pp.name(), "r": r }),
        json!({ "abelian": to_value(&rep), "uniqueness": uniqueness.as_ref().map(to_value) }),
    )
    .table(table)
    .csv(&["procedure", "r", "abelian", "witness", "recurrences"], rows))
}

pub fn good(ctx: &Ctx, arg: &ProcArg, r: usize) -> Result<Report> {
    let p = procedure(arg)?;
    let rep = is_good_correspondence(&ctx.deterministic(), &p, r)?;
    let mut table = format!(
        "procedure {} up to length {r}: good correspondence {} ({} relabelings checked)\n",
        p.name(),
        yes_no(rep.good),
        rep.pairs_checked
    );
    if let Some(w) = &rep.witness {
        let q = |fp: &forests::ForestPair| fp.q_labels().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(
            table,
            "witness {}: q-labels [{}] relabeled [{}] would decode to {}, which encodes with support {} and q-labels [{}]",
            w.word.compact(),
            q(&w.pair),
            q(&w.relabeled),
            w.decoded.compact(),
            w.decoded_encoding.shape().support(),
            q(&w.decoded_encoding)
        );
    }
    let rows = vec![vec![
        p.name().to_string(),
        r.to_string(),
        rep.good.to_string(),
        rep.pairs_checked.to_string(),
        rep.witness.as_ref().map(|w| w.word.to_string()).unwrap_or_default(),
    ]];
    Ok(Report::new("good", json!({ "proc": p.name(), "r": r }), to_value(&rep))
        .table(table)
        .csv(&["procedure", "r", "good", "checked", "witness"], rows))
}
