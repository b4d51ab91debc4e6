//! The `grs` command line. [`run`] is the whole program minus process I/O,
//! so tests can drive it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gamma_rough::algebra::{Carrier, GammaSemigroup};
use gamma_rough::antihom::{check_anti_hom, enumerate_maps, AntiHomLevel};
use gamma_rough::error::Error;
use gamma_rough::ideal::classify_subset;
use gamma_rough::io::{parse_partition, parse_scenario_with, parse_set_literal, Admission, Scenario};
use gamma_rough::lab::paper::audit_paper_examples;
use gamma_rough::lab::{
    audit_all, audit_check, checks_for, describe_anti_hom, describe_violation, AuditResult, Check,
    Outcome, SubsetScope,
};
use gamma_rough::quotient::build_quotient;
use gamma_rough::rough::{is_complete_congruence, is_congruence, SetValuedMap, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "grs", version, about = "Rough approximations and ideal audits for finite Γ-semigroups")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Filter {
    None,
    Plain,
    Strong,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every structure for associativity and every map for fit.
    Validate { file: PathBuf },
    /// Lower and upper approximations of a set under a map.
    Approx {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long)]
        set: String,
        /// Also approximate against a partition of the map's target.
        #[arg(long, requires = "partition")]
        pawlak: bool,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Test a subset against every ideal kind and primality.
    Classify {
        file: PathBuf,
        #[arg(long)]
        structure: String,
        #[arg(long)]
        set: String,
    },
    /// Anti-homomorphism level of a map.
    Antihom {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// List set-valued maps between two structures.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = Filter::None)]
        filter: Filter,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The quotient by a map's images.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Audit the transfer theorems against a map.
    Audit {
        file: PathBuf,
        #[arg(long)]
        map: String,
        /// A single id such as `T5.3.i` or `T5.1.ii[strong]`.
        #[arg(long)]
        theorem: Option<String>,
        /// Sample this many parameter tuples instead of enumerating all.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute every claim of the worked examples.
    AuditPaper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Report lines. Machine output keeps only `key=value` lines.
struct Report {
    format: Format,
    out: String,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key}={value}");
    }

    fn note(&mut self, text: impl std::fmt::Display) {
        if self.format == Format::Human {
            let _ = writeln!(self.out, "  {text}");
        }
    }
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Usage {
        Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Usage>;

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut report = Report {
        format: cli.format,
        out: String::new(),
    };
    match dispatch(cli.command, &mut report) {
        Ok(code) => CliOutput {
            code,
            stdout: report.out,
            stderr: String::new(),
        },
        Err(Usage(msg)) => CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn dispatch(command: Command, r: &mut Report) -> CmdResult {
    match command {
        Command::Validate { file } => validate(&load(&file)?, r),
        Command::Approx {
            file,
            map,
            set,
            pawlak,
            partition,
        } => approx(&load(&file)?, &map, &set, pawlak.then_some(partition).flatten(), r),
        Command::Classify { file, structure, set } => classify(&load(&file)?, &structure, &set, r),
        Command::Antihom { file, map } => antihom(&load(&file)?, &map, r),
        Command::Enumerate {
            file,
            from,
            to,
            filter,
            budget,
            seed,
        } => enumerate(&load(&file)?, &from, &to, filter, budget, seed, r),
        Command::Quotient { file, map } => quotient(&load(&file)?, &map, r),
        Command::Audit {
            file,
            map,
            theorem,
            samples,
            seed,
        } => audit(&load(&file)?, &map, theorem.as_deref(), samples, seed, r),
        Command::AuditPaper => audit_paper(r),
    }
}

/// Structures failing associativity are admitted so that `validate` can
/// report them as findings; commands that need a valid structure say so.
fn load(path: &PathBuf) -> Result<Scenario, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_scenario_with(&text, Admission::Lenient).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn structure<'a>(sc: &'a Scenario, name: &str) -> Result<&'a GammaSemigroup, Usage> {
    sc.structure(name)
        .map(|d| &d.semigroup)
        .ok_or_else(|| Usage(format!("no structure named {name}")))
}

fn map_between<'a>(sc: &'a Scenario, name: &str) -> Result<(&'a GammaSemigroup, &'a GammaSemigroup, &'a SetValuedMap), Usage> {
    let m = sc.map(name).ok_or_else(|| Usage(format!("no map named {name}")))?;
    let s1 = structure(sc, &m.source).map_err(|_| Usage(format!("map {name} does not start at a structure")))?;
    let s2 = structure(sc, &m.target).map_err(|_| Usage(format!("map {name} does not end at a structure")))?;
    Ok((s1, s2, &m.map))
}

fn validate(sc: &Scenario, r: &mut Report) -> CmdResult {
    let mut all_valid = true;
    for d in sc.structures() {
        let v = d.semigroup.validation();
        all_valid &= v.valid;
        let key = format!("structure.{}", d.name);
        r.kv(&format!("{key}.valid"), v.valid);
        r.kv(&format!("{key}.instances"), v.instances);
        r.kv(&format!("{key}.failures"), v.witnesses.len());
        if let Some(w) = v.witnesses.first() {
            r.kv(&format!("{key}.witness"), d.semigroup.describe_failure(w));
        }
    }
    for m in sc.maps() {
        r.kv(&format!("map.{}", m.name), format!("{} -> {}", m.source, m.target));
    }
    r.kv("valid", all_valid);
    Ok(if all_valid { EXIT_OK } else { EXIT_FINDINGS })
}

fn approx(sc: &Scenario, map: &str, set: &str, partition: Option<String>, r: &mut Report) -> CmdResult {
    let m = sc.map(map).ok_or_else(|| Usage(format!("no map named {map}")))?;
    let t = &m.map;
    let b = parse_set_literal(t.target(), set)?;
    let pair = t.approximate(&b)?;
    r.kv("set", t.target().render(b.mask()));
    r.kv("lower", t.source().render(pair.lower.mask()));
    r.kv("upper", t.source().render(pair.upper.mask()));
    r.kv("boundary", t.source().render(pair.upper.mask().difference(pair.lower.mask())));
    r.kv("definable", pair.definable);
    if let Some(text) = partition {
        let rho = parse_partition(t.target(), &text)?;
        let lo = rho.pawlak_lower(&b)?;
        let up = rho.pawlak_upper(&b)?;
        r.kv("pawlak.partition", render_blocks(t.target(), rho.blocks()));
        r.kv("pawlak.lower", t.target().render(lo.mask()));
        r.kv("pawlak.upper", t.target().render(up.mask()));
        if let Some(d) = sc.structure(&m.target) {
            let s = &d.semigroup;
            let cong = is_congruence(s, &rho)?;
            r.kv("pawlak.congruence", cong.holds);
            if let Some(w) = &cong.witness {
                let (p, q) = match w.side {
                    Side::Right => (s.op(w.a, w.gamma, w.y), s.op(w.b, w.gamma, w.y)),
                    Side::Left => (s.op(w.y, w.gamma, w.a), s.op(w.y, w.gamma, w.b)),
                };
                r.note(format!(
                    "{} and {} share a block but their products with {} under {} give {} and {}",
                    s.carrier().name(w.a),
                    s.carrier().name(w.b),
                    s.carrier().name(w.y),
                    s.gammas()[w.gamma],
                    s.carrier().name(p),
                    s.carrier().name(q)
                ));
            }
            if cong.holds {
                let complete = is_complete_congruence(s, &rho)?;
                r.kv("pawlak.complete", complete.holds);
            }
        }
    }
    Ok(EXIT_OK)
}

fn render_blocks(c: &Carrier, blocks: &[gamma_rough::mask::Mask]) -> String {
    blocks.iter().map(|&b| c.render(b)).collect::<Vec<_>>().join(",")
}

fn classify(sc: &Scenario, name: &str, set: &str, r: &mut Report) -> CmdResult {
    let s = structure(sc, name)?;
    let a = parse_set_literal(s.carrier(), set)?;
    let report = classify_subset(s, &a)?;
    r.kv("set", s.carrier().render(a.mask()));
    if !s.is_associative() {
        r.note(format!("{name} fails associativity; verdicts use its table as given"));
    }
    for (kind, v) in &report.verdicts {
        r.kv(kind.key(), v.holds);
        if v.holds != v.bare_holds {
            r.kv(&format!("{}.bare", kind.key()), v.bare_holds);
        }
        if let Some(w) = v.witness {
            r.kv(
                &format!("{}.witness", kind.key()),
                format!("{} in {}", s.carrier().name(w.element), w.clause.expr()),
            );
        }
    }
    r.kv("prime", report.prime.holds);
    if let Some(w) = report.prime.witness {
        r.kv(
            "prime.witness",
            format!(
                "{} {} {} = {}",
                s.carrier().name(w.x),
                s.gammas()[w.gamma],
                s.carrier().name(w.y),
                s.carrier().name(s.op(w.x, w.gamma, w.y))
            ),
        );
    }
    Ok(EXIT_OK)
}

fn antihom(sc: &Scenario, name: &str, r: &mut Report) -> CmdResult {
    let (s1, s2, t) = map_between(sc, name)?;
    let v = check_anti_hom(s1, s2, t)?;
    r.kv("level", v.level);
    if let Some(text) = describe_anti_hom(s1, s2, t, &v) {
        r.kv("witness", text);
    }
    Ok(if v.level >= AntiHomLevel::Plain { EXIT_OK } else { EXIT_FINDINGS })
}

fn enumerate(sc: &Scenario, from: &str, to: &str, filter: Filter, budget: u64, seed: u64, r: &mut Report) -> CmdResult {
    let s1 = structure(sc, from)?;
    let s2 = structure(sc, to)?;
    let level = match filter {
        Filter::None => AntiHomLevel::None,
        Filter::Plain => AntiHomLevel::Plain,
        Filter::Strong => AntiHomLevel::Strong,
    };
    let mut stream = enumerate_maps(s1, s2, level, budget, seed)?;
    let mut count = 0u64;
    for t in stream.by_ref() {
        count += 1;
        r.kv(&format!("map.{count}"), t.render());
    }
    r.kv(
        "space",
        stream.space().map_or_else(|| "overflow".to_string(), |k| k.to_string()),
    );
    r.kv("exhaustive", stream.is_exhaustive());
    if !stream.is_exhaustive() {
        r.kv("seed", stream.seed());
    }
    r.kv("examined", stream.examined());
    r.kv("count", count);
    Ok(EXIT_OK)
}

fn quotient(sc: &Scenario, name: &str, r: &mut Report) -> CmdResult {
    let (s1, _, t) = map_between(sc, name)?;
    let q = build_quotient(s1, t)?;
    r.kv("classes", q.len());
    for (k, c) in q.classes().iter().enumerate() {
        r.kv(
            &format!("class.{}", q.carrier().name(k)),
            t.source().render(c.preimages),
        );
    }
    r.kv("well_defined", q.is_well_defined());
    if let Some(w) = q.failure_witness() {
        let n = |i: usize| s1.carrier().name(i);
        let g = &s1.gammas()[w.gamma];
        let (p, p2) = match w.side {
            Side::Right => (
                format!("{} {g} {}", n(w.x), n(w.y)),
                format!("{} {g} {}", n(w.x_prime), n(w.y)),
            ),
            Side::Left => (
                format!("{} {g} {}", n(w.y), n(w.x)),
                format!("{} {g} {}", n(w.y), n(w.x_prime)),
            ),
        };
        r.kv(
            "witness",
            format!("T({}) = T({}) but {p} and {p2} have different images", n(w.x), n(w.x_prime)),
        );
    }
    if let Some(ind) = q.induced() {
        for (g, gamma) in ind.gammas().iter().enumerate() {
            for a in 0..ind.order() {
                let row: Vec<&str> = (0..ind.order()).map(|b| ind.carrier().name(ind.op(a, g, b))).collect();
                r.kv(&format!("table.{gamma}.{}", ind.carrier().name(a)), row.join(" "));
            }
        }
        r.kv("associative", ind.is_associative());
    }
    Ok(if q.is_well_defined() { EXIT_OK } else { EXIT_FINDINGS })
}

fn audit(sc: &Scenario, name: &str, theorem: Option<&str>, samples: Option<u64>, seed: u64, r: &mut Report) -> CmdResult {
    let (s1, s2, t) = map_between(sc, name)?;
    let scope = match samples {
        Some(0) => return Err(Usage("--samples must be positive".to_string())),
        Some(count) => SubsetScope::Sampled { count, seed },
        None => SubsetScope::All,
    };
    let results: Vec<AuditResult> = match theorem {
        None => audit_all(s1, s2, t, scope).map_err(budget_hint)?,
        Some(text) => {
            let checks = if text.ends_with(']') {
                vec![Check::parse(text)?]
            } else {
                checks_for(Check::parse(text)?.id)
            };
            checks
                .into_iter()
                .map(|c| audit_check(c, s1, s2, t, scope))
                .collect::<Result<_, _>>()
                .map_err(budget_hint)?
        }
    };
    let level = check_anti_hom(s1, s2, t)?.level;
    r.kv("level", level);
    r.kv(
        "scope",
        match scope {
            SubsetScope::All => "all".to_string(),
            SubsetScope::Sampled { count, seed } => format!("sampled:{count}:{seed}"),
        },
    );
    let mut failed = 0;
    for res in &results {
        let key = res.check.to_string();
        r.kv(&key, res.outcome);
        r.kv(&format!("{key}.satisfied"), res.satisfied);
        r.kv(&format!("{key}.checked"), res.checked);
        if res.outcome == Outcome::Fail {
            failed += 1;
            r.kv(&format!("{key}.failures"), res.failures);
        }
        if let Some(w) = &res.witness {
            r.kv(&format!("{key}.witness"), describe_violation(res.check, s1, s2, w));
        }
        if let Some(w) = res.not_applicable {
            r.kv(
                &format!("{key}.reason"),
                format!(
                    "quotient not well-defined at {} and {}",
                    s1.carrier().name(w.x),
                    s1.carrier().name(w.x_prime)
                ),
            );
        }
    }
    let count = |o: Outcome| results.iter().filter(|x| x.outcome == o).count();
    r.kv("pass", count(Outcome::Pass));
    r.kv("fail", failed);
    r.kv("vacuous", count(Outcome::Vacuous));
    r.kv("not_applicable", count(Outcome::NotApplicable));
    Ok(if failed > 0 { EXIT_FINDINGS } else { EXIT_OK })
}

fn budget_hint(e: Error) -> Usage {
    match e {
        Error::BudgetExceeded { .. } => Usage(format!("{e}; use --samples to audit a random subset")),
        other => other.into(),
    }
}

fn audit_paper(r: &mut Report) -> CmdResult {
    let report = audit_paper_examples();
    match r.format {
        Format::Human => r.out.push_str(&report.render()),
        Format::Machine => {
            for (i, c) in report.claims.iter().enumerate() {
                let key = format!("claim.{}", i + 1);
                r.kv(&format!("{key}.example"), c.example);
                r.kv(&format!("{key}.statement"), &c.statement);
                r.kv(&format!("{key}.claimed"), &c.claimed);
                r.kv(&format!("{key}.computed"), &c.computed);
                r.kv(&format!("{key}.verdict"), if c.pass { "PASS" } else { "FAIL" });
                if let Some(w) = &c.witness {
                    r.kv(&format!("{key}.witness"), w);
                }
            }
            r.kv("claims", report.claims.len());
            r.kv("passed", report.passed());
            r.kv("failed", report.failed());
        }
    }
    Ok(if report.failed() > 0 { EXIT_FINDINGS } else { EXIT_OK })
}
