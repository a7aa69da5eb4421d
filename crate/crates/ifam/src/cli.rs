//! Command-line front end. Machine output goes to stdout, diagnostics to
//! stderr. Exit status: 0 success, 1 usage or domain error, 2 violation.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::binom::{c, cascade};
use crate::family::SetFamily;
use crate::json::{big, parse_rational};
use crate::oracle::{
    equality_char_sets, oracle_diversity_table, oracle_lemmin, oracle_lexpair, oracle_maximal_intersecting,
    table_breakpoints, table_csv, Constraint, LexPairQuery, LexProfile,
};
use crate::resistance::{
    bound_ab, bound_ab_branches, bound_corhm, bound_ft, bound_full1, bound_hk, bound_thm1, bound_weighted,
    enumerate_resistant, lemmin_f, neutral_sets, resistant_pairs, size_c3, weight_c, BoundReport,
};
use crate::subset::{GroundSet, Subset};
use crate::zoo::{
    build_c3, build_d37, build_el, build_f2, build_f2prime, build_fano, build_hu, build_ji, build_t2, build_t2prime,
    FamilyStats,
};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "ifam", version, about = "Bounds, constructions and exhaustive oracles for intersecting families")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Greedy cascade form of m with respect to r
    Cascade { m: BigUint, r: u32 },
    /// Resistant numbers and pairs
    Resistant {
        #[command(subcommand)]
        cmd: ResistantCmd,
    },
    /// Evaluate a closed-form bound
    Bound(BoundArgs),
    /// Build or inspect families
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Run a brute-force oracle
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Compare bounds against oracles and report verdicts
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum ResistantCmd {
    /// Resistant numbers of (n, k) with their characteristic pairs
    List { n: u32, k: u32 },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BoundName {
    Full1,
    Thm1,
    Corhm,
    Weighted,
    Ab,
    Ft,
    Hk,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    pub name: BoundName,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub gamma: Option<BigUint>,
    /// integer for corhm, rational for thm1
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long = "minB", alias = "min-b")]
    pub min_b: Option<BigUint>,
    #[arg(long, default_value = "1")]
    pub weight: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
#[value(rename_all = "lower")]
pub enum Kind {
    Hu,
    Ji,
    El,
    T2,
    T2prime,
    F2,
    F2prime,
    C3,
    Fano,
    D37,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    /// Build a named construction
    Build {
        #[arg(ignore_case = true)]
        kind: Kind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        u: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Statistics of a family stored as JSON
    Stats { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Best cross-intersecting lex prefix pair
    Lexpair {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long = "minB", alias = "min-b", default_value_t = 0)]
        min_b: u64,
        #[arg(long = "maxB", alias = "max-b")]
        max_b: Option<u64>,
        #[arg(long, default_value = "1")]
        weight: String,
        /// first element of the ground set
        #[arg(long, default_value_t = 1)]
        lo: u32,
    },
    /// Largest maximal intersecting family under a constraint
    Maximal {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// none, diversity>=g, tau>=t or degree<=c
        #[arg(long, default_value = "none")]
        constraint: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Minimal covering-number-2 families against their cross-intersecting partners
    Lemmin {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        intersecting: bool,
    },
    /// Lex-pair optimum for every diversity lower bound
    DiversityTable {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum Suite {
    All,
    Full1,
    Breakpoints,
    Equality,
    Weighted,
    Ab,
    Maximal,
    Lemmin,
    C3,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 12)]
    pub n_max: u32,
    #[arg(long, default_value_t = 5)]
    pub k_max: u32,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    TheoremLoose,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::TheoremLoose => "theorem-loose",
            Verdict::Violation => "VIOLATION",
        })
    }
}

/// One bound-versus-oracle comparison.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub theorem: String,
    pub params: String,
    pub bound: String,
    pub oracle: String,
    pub verdict: Verdict,
    pub witness: Option<PathBuf>,
}

impl ReportRow {
    /// Verdict from an upper bound and the exact optimum.
    pub fn compare(theorem: &str, params: String, bound: &BigRational, oracle: &BigRational) -> Self {
        let verdict = if oracle == bound {
            Verdict::Match
        } else if oracle < bound {
            Verdict::TheoremLoose
        } else {
            Verdict::Violation
        };
        ReportRow { theorem: theorem.into(), params, bound: bound.to_string(), oracle: oracle.to_string(), verdict, witness: None }
    }

    /// Verdict from a claimed equality of two descriptions.
    pub fn equal(theorem: &str, params: String, claimed: String, found: String) -> Self {
        let verdict = if claimed == found { Verdict::Match } else { Verdict::Violation };
        ReportRow { theorem: theorem.into(), params, bound: claimed, oracle: found, verdict, witness: None }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "params": self.params,
            "bound": self.bound,
            "oracle": self.oracle,
            "verdict": self.verdict.to_string(),
            "witness": self.witness.as_ref().map(|p| p.display().to_string()),
        })
    }

    pub fn csv_header() -> &'static str {
        "theorem,params,bound,oracle,verdict,witness"
    }

    pub fn to_csv(&self) -> String {
        let w = self.witness.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        format!("{},\"{}\",{},{},{},{}", self.theorem, self.params, self.bound, self.oracle, self.verdict, w)
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Violation(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = std::result::Result<(), Failure>;

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn rational(s: &str, flag: &str) -> std::result::Result<BigRational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("--{flag}: cannot parse '{s}' as a rational")))
}

fn ratu(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn print(v: &Value) {
    println!("{v}");
}

/// Parse `args` (program name first), run, and return the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            1
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(Failure::Violation(v)) => {
            eprintln!("{v} VIOLATION row(s)");
            2
        }
    }
}

fn dispatch(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Cascade { m, r } => {
            let form = cascade(&m, r)?;
            let terms: Vec<Value> = form.terms.iter().map(|(a, j)| json!([a, j])).collect();
            print(&json!({ "m": big(&m), "r": r, "terms": terms }));
        }
        Cmd::Resistant { cmd: ResistantCmd::List { n, k } } => {
            let rows: Vec<Value> = resistant_pairs(n, k)?
                .iter()
                .map(|(g, p)| json!({ "gamma": big(g), "s": p.s.elems(), "t": p.t.elems() }))
                .collect();
            print(&Value::Array(rows));
        }
        Cmd::Bound(args) => print(&bound(args)?.to_json()),
        Cmd::Family { cmd } => family(cmd)?,
        Cmd::Oracle { cmd } => oracle(cmd)?,
        Cmd::Verify(args) => verify(args)?,
    }
    Ok(())
}

fn bound(a: BoundArgs) -> std::result::Result<BoundReport, Failure> {
    let n = a.n;
    Ok(match a.name {
        BoundName::Full1 => bound_full1(n, need(a.k, "k")?, &need(a.gamma, "gamma")?)?,
        BoundName::Thm1 => bound_thm1(n, need(a.k, "k")?, &rational(&need(a.u, "u")?, "u")?)?,
        BoundName::Corhm => {
            let u = need(a.u, "u")?;
            let u: u32 = u.parse().map_err(|_| Failure::Usage(format!("--u: corhm needs an integer, got '{u}'")))?;
            bound_corhm(n, need(a.k, "k")?, u, &need(a.gamma, "gamma")?)?
        }
        BoundName::Weighted => bound_weighted(n, need(a.k, "k")?, &need(a.gamma, "gamma")?)?,
        BoundName::Ab => {
            let w = rational(&a.weight, "weight")?;
            bound_ab(n, need(a.a, "a")?, need(a.b, "b")?, &need(a.min_b, "minB")?, &w)?
        }
        BoundName::Ft => bound_ft(n, need(a.a, "a")?, need(a.b, "b")?, &rational(&need(a.alpha, "alpha")?, "alpha")?)?,
        BoundName::Hk => {
            let k = need(a.k, "k")?;
            BoundReport::new("hk", BigRational::from_integer(bound_hk(n, k).into())).input("n", n).input("k", k)
        }
    })
}

fn family(cmd: FamilyCmd) -> Out {
    match cmd {
        FamilyCmd::Build { kind, n, k, u, i, l, m, s, out } => {
            let f = match kind {
                Kind::Hu => build_hu(need(n, "n")?, need(k, "k")?, need(u, "u")?)?,
                Kind::Ji => build_ji(need(n, "n")?, need(k, "k")?, need(i, "i")?)?,
                Kind::El => build_el(need(n, "n")?, need(k, "k")?, need(l, "l")?)?,
                Kind::T2 => build_t2(need(k, "k")?)?,
                Kind::T2prime => build_t2prime(need(s.or(k), "s")?)?,
                Kind::F2 => build_f2(need(m, "m")?, need(s, "s")?, need(k, "k")?)?,
                Kind::F2prime => build_f2prime(need(m, "m")?, need(s, "s")?, need(k, "k")?)?,
                Kind::C3 => build_c3(need(n, "n")?, need(k, "k")?)?,
                Kind::Fano => build_fano(),
                Kind::D37 => build_d37(need(n, "n")?, need(k, "k")?)?,
            };
            match out {
                Some(p) => {
                    f.write(&p)?;
                    eprintln!("wrote {} sets to {}", f.len(), p.display());
                }
                None => println!("{}", f.to_json()),
            }
        }
        FamilyCmd::Stats { file } => {
            let f = SetFamily::read(&file)?;
            print(&FamilyStats::of(&f).to_json());
        }
    }
    Ok(())
}

fn oracle(cmd: OracleCmd) -> Out {
    match cmd {
        OracleCmd::Lexpair { n, a, b, min_b, max_b, weight, lo } => {
            let q = LexPairQuery {
                ground: GroundSet::new(lo, n)?,
                a,
                b,
                min_b,
                max_b,
                weight: rational(&weight, "weight")?,
            };
            print(&oracle_lexpair(&q)?.to_json());
        }
        OracleCmd::Maximal { n, k, constraint, jobs } => {
            let cons: Constraint = constraint.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let r = oracle_maximal_intersecting(n, k, &cons, jobs)?;
            eprintln!("searched in {:?}", r.elapsed);
            print(&r.to_json());
        }
        OracleCmd::Lemmin { m, s, k, intersecting } => print(&oracle_lemmin(m, s, k, intersecting)?.to_json()),
        OracleCmd::DiversityTable { n, k, format } => {
            let rows = oracle_diversity_table(n, k)?;
            match format {
                Format::Csv => print!("{}", table_csv(&rows)),
                Format::Json => {
                    let v: Vec<Value> = rows.iter().map(|r| json!({ "gamma": r.gamma, "value": r.value })).collect();
                    print(&json!({ "n": n, "k": k, "rows": v, "breakpoints": table_breakpoints(&rows) }));
                }
            }
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Out {
    if a.format == Format::Csv {
        println!("{}", ReportRow::csv_header());
    }
    let suites: Vec<Suite> = if a.suite == Suite::All {
        vec![Suite::Full1, Suite::Breakpoints, Suite::Equality, Suite::Weighted, Suite::Ab, Suite::Maximal, Suite::Lemmin, Suite::C3]
    } else {
        vec![a.suite]
    };
    let (mut total, mut loose) = (0usize, 0usize);
    for s in suites {
        let mut emit = |row: ReportRow| -> Out {
            match a.format {
                Format::Json => print(&row.to_json()),
                Format::Csv => println!("{}", row.to_csv()),
            }
            total += 1;
            match row.verdict {
                Verdict::Violation => Err(Failure::Violation(1)),
                Verdict::TheoremLoose => {
                    loose += 1;
                    Ok(())
                }
                Verdict::Match => Ok(()),
            }
        };
        suite_rows(s, a.n_max, a.k_max, a.jobs, &mut emit)?;
    }
    eprintln!("{total} rows, {loose} theorem-loose, 0 VIOLATION");
    Ok(())
}

fn diversity_range(n_max: u32, k_max: u32, k_lo: u32) -> impl Iterator<Item = (u32, u32)> {
    (k_lo..=k_max.min(6)).flat_map(move |k| (2 * k + 1..=n_max.min(14)).map(move |n| (n, k)))
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn sets(xs: &[Subset]) -> String {
    xs.iter().map(|s| format!("{{{}}}", list(s.elems()))).collect::<Vec<_>>().join(" ")
}

fn suite_rows(s: Suite, n_max: u32, k_max: u32, jobs: Option<usize>, emit: &mut dyn FnMut(ReportRow) -> Out) -> Out {
    match s {
        Suite::All => unreachable!("expanded by the caller"),
        Suite::Full1 => {
            for (n, k) in diversity_range(n_max, k_max, 3) {
                let rows = oracle_diversity_table(n, k)?;
                for r in rows.iter().skip(1) {
                    let b = bound_full1(n, k, &BigUint::from(r.gamma))?;
                    emit(ReportRow::compare("full1", format!("n={n} k={k} gamma={}", r.gamma), &b.bound, &ratu(r.value)))?;
                }
            }
        }
        Suite::Breakpoints => {
            for (n, k) in diversity_range(n_max, k_max, 3) {
                let claimed = list(enumerate_resistant(n, k)?);
                let found = list(table_breakpoints(&oracle_diversity_table(n, k)?));
                emit(ReportRow::equal("resistant-breakpoints", format!("n={n} k={k}"), claimed, found))?;
            }
        }
        Suite::Equality => {
            for (n, k) in diversity_range(n_max.min(12), k_max, 4) {
                for (l, (bp, mut found)) in equality_char_sets(n, k)?.into_iter().enumerate() {
                    let mut claimed = neutral_sets(n, k, l + 1)?;
                    claimed.sort();
                    found.sort();
                    emit(ReportRow::equal("neutral-equality", format!("n={n} k={k} l={} window_end={bp}", l + 1), sets(&claimed), sets(&found)))?;
                }
            }
        }
        Suite::Weighted => {
            for (n, k) in diversity_range(n_max, k_max, 3) {
                let q = LexPairQuery::diversity(n, k, 0);
                let prof = LexProfile::new(q.ground, q.a, q.b)?;
                let w = weight_c(n, k);
                let top = c(n as i64 - 4, k as i64 - 3).to_usize().expect("small");
                for g in 0..=top {
                    let b = bound_weighted(n, k, &BigUint::from(g))?;
                    let hi = b.window[0].1.to_usize().expect("small");
                    let (o, _) = prof.optimum(g, hi, &w).expect("nonempty window");
                    emit(ReportRow::compare("weighted", format!("n={n} k={k} gamma={g} window_end={hi}"), &b.bound, &o))?;
                }
            }
        }
        Suite::Ab => {
            for b in 1..=k_max {
                for a in 2..=b + 1 {
                    for n in a + b + 1..=n_max.min(16) {
                        let prof = LexProfile::new(GroundSet::upto(n), a, b)?;
                        let nb = prof.b_sets.len();
                        for m in 1..=nb {
                            let branches = match bound_ab_branches(n, a, b, &BigUint::from(m), &BigRational::one()) {
                                Ok(v) => v,
                                Err(Error::Domain(_)) => continue,
                                Err(e) => return Err(e.into()),
                            };
                            for r in branches {
                                let mb = BigUint::from(m);
                                let (_, hi) = r.window.iter().find(|(lo, hi)| *lo <= mb && mb <= *hi).expect("window covers minB");
                                let (o, _) = prof.optimum(m, hi.to_usize().expect("small"), &BigRational::one()).expect("nonempty");
                                let tag = format!("ab/{}", r.inputs["branch"]);
                                emit(ReportRow::compare(&tag, format!("n={n} a={a} b={b} minB={m} window_end={hi}"), &r.bound, &o))?;
                            }
                        }
                    }
                }
            }
        }
        Suite::Maximal => {
            for n in 7..=n_max.min(9) {
                let none = oracle_maximal_intersecting(n, 3, &Constraint::None, jobs)?;
                emit(ReportRow::compare("ekr", format!("n={n} k=3"), &BigRational::from_integer(c(n as i64 - 1, 2).into()), &none.objective))?;
                let hm = oracle_maximal_intersecting(n, 3, &Constraint::DiversityAtLeast(1), jobs)?;
                let hm_bound = c(n as i64 - 1, 2) - c(n as i64 - 4, 2) + 1u32;
                emit(ReportRow::compare("hilton-milner", format!("n={n} k=3"), &BigRational::from_integer(hm_bound.into()), &hm.objective))?;
            }
            if n_max >= 9 && k_max >= 4 {
                let r = oracle_maximal_intersecting(9, 4, &Constraint::DiversityAtLeast(2), jobs)?;
                emit(ReportRow::compare("hk", "n=9 k=4".into(), &BigRational::from_integer(bound_hk(9, 4).into()), &r.objective))?;
            }
        }
        Suite::Lemmin => {
            for (m, s, k) in [(9u32, 4u32, 4u32), (10, 4, 4)] {
                if m > n_max || k > k_max {
                    continue;
                }
                let plain = oracle_lemmin(m, s, k, false)?;
                let want = BigRational::from_integer((lemmin_f(m, s, k, 2)? + 2u32).into());
                emit(ReportRow::compare("lemmin", format!("m={m} s={s} k={k}"), &want, &plain.objective))?;
                let inter = oracle_lemmin(m, s, k, true)?;
                let want = BigRational::from_integer((lemmin_f(m, s, k, 3)? + 3u32).into());
                emit(ReportRow::compare("lemmin-intersecting", format!("m={m} s={s} k={k}"), &want, &inter.objective))?;
            }
        }
        Suite::C3 => {
            for k in 3..=k_max {
                for n in 2 * k + 1..=n_max.min(14) {
                    let formula = size_c3(n, k)?;
                    let counted = build_c3(n, k)?.len();
                    emit(ReportRow::equal("c3-size", format!("n={n} k={k}"), formula.to_string(), counted.to_string()))?;
                }
            }
        }
    }
    Ok(())
}
