//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion may fail only with exactly the mismatches listed in
//! `DOCUMENTED`; any other failure makes the process exit non-zero.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gamma_rough::algebra::{Carrier, ElementSet, GammaSemigroup, RawTables};
use gamma_rough::antihom::{check_anti_hom, enumerate_maps, AntiHomLevel};
use gamma_rough::fixtures::{self, load, load_lenient, validated_structures, ALL};
use gamma_rough::ideal::{classify_subset, IdealKind};
use gamma_rough::io::{parse_scenario, serialize_scenario};
use gamma_rough::lab::paper::audit_paper_examples;
use gamma_rough::lab::{audit_check, replay, Check, Outcome, SubsetScope};
use gamma_rough::mask::{subsets, Mask};
use gamma_rough::quotient::{build_quotient, quotient_lower, quotient_upper};
use gamma_rough::rough::SetValuedMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Mismatches that are recorded and analysed, per criterion. The printed
/// Example 1 map sends 4 to {a,b,c}, so 4 belongs to upper({b}); the
/// printed value {1,3} omits it.
const DOCUMENTED: &[(u32, &[&str])] = &[(1, &["upper({b})"]), (9, &["upper({b})"])];

struct Verdict {
    /// Names of failed sub-checks; empty means PASS.
    mismatches: Vec<String>,
    detail: String,
}

impl Verdict {
    fn new(mismatches: Vec<String>, detail: String) -> Verdict {
        Verdict { mismatches, detail }
    }
}

fn timed(limit: Duration, start: Instant, mismatches: &mut Vec<String>) -> String {
    let elapsed = start.elapsed();
    if elapsed > limit {
        mismatches.push(format!("runtime {elapsed:?} over {limit:?}"));
    }
    format!("{:.3}s", elapsed.as_secs_f64())
}

fn fixture_path(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn grs(args: &[&str]) -> grs_cli::CliOutput {
    grs_cli::run(std::iter::once("grs").chain(args.iter().copied()))
}

// 1. Example 1 reproduction against the printed table.
fn criterion1() -> Verdict {
    let start = Instant::now();
    let sc = load(fixtures::EXAMPLE1);
    let t = &sc.map("T").unwrap().map;
    type Row = (&'static str, &'static [&'static str], &'static [&'static str]);
    let printed: [Row; 7] = [
        ("a", &["2", "4"], &[]),
        ("b", &["1", "3"], &["1", "3"]),
        ("c", &["2", "4"], &[]),
        ("a,b", &["1", "2", "3", "4"], &["1", "3"]),
        ("a,c", &["2", "4"], &["2"]),
        ("b,c", &["1", "2", "3", "4"], &["1", "3"]),
        ("a,b,c", &["1", "2", "3", "4"], &["1", "2", "3", "4"]),
    ];
    let mut mismatches = Vec::new();
    let mut notes = Vec::new();
    for (set, upper, lower) in printed {
        let b = t.target().mask_of(set.split(',')).unwrap();
        for (op, want, got) in [("upper", upper, t.upper(b)), ("lower", lower, t.lower(b))] {
            let got_names: Vec<&str> = t.source().members(got);
            if got_names != want {
                let key = format!("{op}({{{set}}})");
                notes.push(format!("{key} printed {{{}}}, computed {}", want.join(","), t.source().render(got)));
                mismatches.push(key);
            }
        }
    }
    let time = timed(Duration::from_secs(1), start, &mut mismatches);
    let detail = format!("{}/14 values match in {time}; {}", 14 - notes.len(), notes.join("; "));
    Verdict::new(mismatches, detail)
}

// 2. Identity suite on generated maps.
fn criterion2() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = BTreeSet::new();
    let maps = 64;
    let mut pairs = 0u64;
    for i in 0..maps {
        let n = 1 + i % 5;
        let k = 1 + (i / 5) % 5;
        let src = Arc::new(Carrier::new((0..n).map(|x| format!("g{x}"))).unwrap());
        let dst = Arc::new(Carrier::new((0..k).map(|x| format!("h{x}"))).unwrap());
        let imgs: Vec<Mask> = (0..n).map(|_| Mask(rng.gen_range(1..(1u64 << k)))).collect();
        let t = SetValuedMap::new(src, dst, imgs).unwrap();
        let g = Mask::full(n);
        let h = Mask::full(k);
        let lower = |x: Mask| (0..n).filter(|&e| t.image(e).is_subset(x)).fold(Mask::EMPTY, |m, e| m.with(e));
        let upper = |x: Mask| (0..n).filter(|&e| t.image(e).meets(x)).fold(Mask::EMPTY, |m, e| m.with(e));
        let mut check = |ok: bool, law: &str| {
            if !ok {
                mismatches.insert(law.to_string());
            }
        };
        check(t.upper(h) == g && t.lower(h) == g, "full target");
        for x in subsets(k, true) {
            check(t.lower(x) == lower(x) && t.upper(x) == upper(x), "definition");
            check(t.upper(x) == t.lower(x.complement(k)).complement(n), "upper duality");
            check(t.lower(x) == t.upper(x.complement(k)).complement(n), "lower duality");
            for y in subsets(k, true) {
                pairs += 1;
                check(t.lower(x.intersection(y)) == t.lower(x).intersection(t.lower(y)), "lower meet");
                check(t.upper(x.union(y)) == t.upper(x).union(t.upper(y)), "upper join");
                check(t.upper(x.intersection(y)).is_subset(t.upper(x).intersection(t.upper(y))), "upper meet");
                check(t.lower(x).union(t.lower(y)).is_subset(t.lower(x.union(y))), "lower join");
                if x.is_subset(y) {
                    check(t.lower(x).is_subset(t.lower(y)) && t.upper(x).is_subset(t.upper(y)), "monotonicity");
                }
            }
        }
    }
    let mut mismatches: Vec<String> = mismatches.into_iter().collect();
    let time = timed(Duration::from_secs(30), start, &mut mismatches);
    Verdict::new(mismatches, format!("{maps} maps, {pairs} subset pairs, seven laws, {time}"))
}

// 3. Associativity of Example 3, refutation of Example 2.
fn criterion3() -> Verdict {
    let mut mismatches = Vec::new();
    let sc3 = load(fixtures::EXAMPLE3);
    let ex3 = &sc3.structure("M").unwrap().semigroup;
    let r3 = ex3.validation();
    if !(r3.valid && r3.instances == 27) {
        mismatches.push("example 3 validation".to_string());
    }
    let sc2 = load(fixtures::EXAMPLE2);
    let ex2 = &sc2.structure("M").unwrap().semigroup;
    let r2 = ex2.validation();
    let detail2 = match r2.witnesses.first() {
        Some(w) => {
            let left = ex2.op(ex2.op(w.a, w.alpha, w.b), w.beta, w.c);
            let right = ex2.op(w.a, w.alpha, ex2.op(w.b, w.beta, w.c));
            if left == right || r2.valid {
                mismatches.push("example 2 witness".to_string());
            }
            ex2.describe_failure(w)
        }
        None => {
            mismatches.push("example 2 refutation".to_string());
            "no witness".to_string()
        }
    };
    Verdict::new(
        mismatches,
        format!("example 3: {} instances valid={}; example 2 refuted: {detail2}", r3.instances, r3.valid),
    )
}

/// Anti-homomorphism level from the definition, one triple at a time.
fn naive_level(s1: &GammaSemigroup, s2: &GammaSemigroup, t: &SetValuedMap) -> AntiHomLevel {
    let mut strong = true;
    for a in 0..s1.order() {
        for g in 0..s1.gamma_count() {
            for b in 0..s1.order() {
                let img = t.image(s1.op(a, g, b));
                let mut prod = Mask::EMPTY;
                for v in t.image(b).iter() {
                    for u in t.image(a).iter() {
                        prod = prod.with(s2.op(v, g, u));
                    }
                }
                if !prod.is_subset(img) {
                    return AntiHomLevel::None;
                }
                strong &= prod == img;
            }
        }
    }
    if strong {
        AntiHomLevel::Strong
    } else {
        AntiHomLevel::Plain
    }
}

// 4. Example 3 map level and filter equivalence.
fn criterion4() -> Verdict {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let sc = load(fixtures::EXAMPLE3);
    let s = &sc.structure("M").unwrap().semigroup;
    let t = &sc.map("T").unwrap().map;
    let naive = naive_level(s, s, t);
    let tool = check_anti_hom(s, s, t).unwrap().level;
    if naive < AntiHomLevel::Plain || tool != naive {
        mismatches.push("example 3 map level".to_string());
    }
    let all: Vec<SetValuedMap> = enumerate_maps(s, s, AntiHomLevel::None, 1_000_000, 0).unwrap().collect();
    let filtered: Vec<SetValuedMap> = enumerate_maps(s, s, AntiHomLevel::Plain, 1_000_000, 0).unwrap().collect();
    let post: Vec<SetValuedMap> = all.iter().filter(|m| naive_level(s, s, m) >= AntiHomLevel::Plain).cloned().collect();
    if all.len() != 343 {
        mismatches.push("map space size".to_string());
    }
    if filtered != post {
        mismatches.push("filter equivalence".to_string());
    }
    let time = timed(Duration::from_secs(60), start, &mut mismatches);
    Verdict::new(
        mismatches,
        format!(
            "example 3 map level {tool} (9-pair check: {naive}); {} maps, {} plain, filtered = post-filtered; {time}",
            all.len(),
            filtered.len()
        ),
    )
}

// 5. Product inclusion over every plain map between small validated structures.
fn criterion5() -> Verdict {
    let check = Check::parse("T5.1.i").unwrap();
    let pool: Vec<(String, GammaSemigroup)> =
        validated_structures().into_iter().filter(|(_, s)| s.order() <= 3).collect();
    let mut mismatches = BTreeSet::new();
    let (mut maps, mut instances, mut satisfied, mut witnesses) = (0u64, 0u64, 0u64, 0u64);
    let mut outcomes = [0u64; 4];
    for (_, s1) in &pool {
        for (_, s2) in &pool {
            if s1.gammas() != s2.gammas() {
                continue;
            }
            for t in enumerate_maps(s1, s2, AntiHomLevel::Plain, u64::MAX, 0).unwrap() {
                maps += 1;
                let r = audit_check(check, s1, s2, &t, SubsetScope::All).unwrap();
                instances += r.checked;
                satisfied += r.satisfied;
                outcomes[r.outcome as usize] += 1;
                if r.satisfied == 0 && r.outcome != Outcome::Vacuous {
                    mismatches.insert("vacuity labelling".to_string());
                }
                if let Some(w) = &r.witness {
                    witnesses += 1;
                    if !replay(check, s1, s2, w) {
                        mismatches.insert("witness replay".to_string());
                    }
                }
            }
        }
    }
    Verdict::new(
        mismatches.into_iter().collect(),
        format!(
            "{} structures, {maps} plain maps, {instances} instances ({satisfied} meeting the hypothesis); \
             PASS={} FAIL={} VACUOUS={}; {witnesses} witnesses replayed",
            pool.len(),
            outcomes[Outcome::Pass as usize],
            outcomes[Outcome::Fail as usize],
            outcomes[Outcome::Vacuous as usize],
        ),
    )
}

/// Ideal membership by direct enumeration of element words, with no set
/// products.
struct Oracle<'a> {
    s: &'a GammaSemigroup,
    a: Mask,
}

impl Oracle<'_> {
    fn in_a(&self, x: usize) -> bool {
        self.a.contains(x)
    }

    /// Every value of `x₁ γ₁ x₂ γ₂ … xₖ`, left-associated, where `pattern[i]`
    /// selects whether `xᵢ` ranges over A (`true`) or all of M (`false`).
    fn words(&self, pattern: &[bool]) -> Vec<bool> {
        let n = self.s.order();
        let m = self.s.gamma_count();
        let mut reached = vec![false; n];
        let choices = |in_a: bool| (0..n).filter(move |&x| !in_a || self.a.contains(x));
        let mut stack: Vec<(usize, usize)> = choices(pattern[0]).map(|x| (x, 1)).collect();
        while let Some((acc, depth)) = stack.pop() {
            if depth == pattern.len() {
                reached[acc] = true;
                continue;
            }
            for g in 0..m {
                for y in choices(pattern[depth]) {
                    stack.push((self.s.op(acc, g, y), depth + 1));
                }
            }
        }
        reached
    }

    fn inside(&self, patterns: &[&[bool]]) -> bool {
        let sets: Vec<Vec<bool>> = patterns.iter().map(|p| self.words(p)).collect();
        (0..self.s.order()).all(|x| !sets.iter().all(|s| s[x]) || self.in_a(x))
    }

    fn kind(&self, kind: IdealKind) -> bool {
        const A: bool = true;
        const M: bool = false;
        use IdealKind::*;
        let closed = self.inside(&[&[A, A]]);
        let left = self.inside(&[&[M, A]]);
        let right = self.inside(&[&[A, M]]);
        let bare = match kind {
            SubGammaSemigroup => closed,
            LeftIdeal => left,
            RightIdeal => right,
            TwoSidedIdeal => left && right,
            BiIdeal => self.inside(&[&[A, M, A]]),
            QuasiIdeal => self.inside(&[&[A, M], &[M, A]]),
            InteriorIdeal => self.inside(&[&[M, A, M]]),
            LeftBiQuasi => self.inside(&[&[M, A], &[A, M, A]]),
            RightBiQuasi => self.inside(&[&[A, M], &[A, M, A]]),
            BiQuasi => self.inside(&[&[M, A], &[A, M, A]]) && self.inside(&[&[A, M], &[A, M, A]]),
            BiInterior => self.inside(&[&[M, A, M], &[A, M, A]]),
            LeftQuasiInterior => self.inside(&[&[M, A, M, A]]),
            RightQuasiInterior => self.inside(&[&[A, M, A, M]]),
            QuasiInterior => self.inside(&[&[M, A, M, A]]) && self.inside(&[&[A, M, A, M]]),
            BiQuasiInterior => self.inside(&[&[A, M, A, M, A]]),
        };
        let needs_closure = !matches!(kind, SubGammaSemigroup | LeftIdeal | RightIdeal | TwoSidedIdeal);
        bare && (!needs_closure || closed)
    }

    fn prime(&self) -> bool {
        let n = self.s.order();
        (0..n).all(|x| {
            (0..self.s.gamma_count())
                .all(|g| (0..n).all(|y| !self.in_a(self.s.op(x, g, y)) || self.in_a(x) || self.in_a(y)))
        })
    }
}

fn small_validated() -> Vec<(String, GammaSemigroup)> {
    validated_structures().into_iter().filter(|(_, s)| s.order() <= 4).collect()
}

// 6. Classifier against the enumeration oracle.
fn criterion6() -> Verdict {
    let mut mismatches = BTreeSet::new();
    let (mut subsets_seen, mut verdicts) = (0u64, 0u64);
    for (name, s) in small_validated() {
        for a in subsets(s.order(), false) {
            subsets_seen += 1;
            let report = classify_subset(&s, &s.element_set(a).unwrap()).unwrap();
            let oracle = Oracle { s: &s, a };
            for (kind, v) in &report.verdicts {
                verdicts += 1;
                if v.holds != oracle.kind(*kind) {
                    mismatches.insert(format!("{name} {} {kind}", s.carrier().render(a)));
                }
            }
            verdicts += 1;
            if report.prime.holds != oracle.prime() {
                mismatches.insert(format!("{name} {} prime", s.carrier().render(a)));
            }
        }
    }
    let n = mismatches.len();
    Verdict::new(
        mismatches.into_iter().collect(),
        format!("{subsets_seen} subsets, {verdicts} verdicts, {n} disagreements"),
    )
}

// 7. Hierarchy implications over the same sweep.
fn criterion7() -> Verdict {
    use IdealKind::*;
    let mut mismatches = BTreeSet::new();
    let mut checked = 0u64;
    for (name, s) in small_validated() {
        for a in subsets(s.order(), false) {
            let r = classify_subset(&s, &s.element_set(a).unwrap()).unwrap();
            let k = |kind| r.holds(kind);
            let laws = [
                ("two-sided iff left and right", k(TwoSidedIdeal) == (k(LeftIdeal) && k(RightIdeal))),
                ("left implies quasi", !k(LeftIdeal) || k(QuasiIdeal)),
                ("right implies quasi", !k(RightIdeal) || k(QuasiIdeal)),
                ("two-sided implies bi and interior", !k(TwoSidedIdeal) || (k(BiIdeal) && k(InteriorIdeal))),
                ("bi-quasi iff both sides", k(BiQuasi) == (k(LeftBiQuasi) && k(RightBiQuasi))),
                (
                    "quasi-interior iff both sides",
                    k(QuasiInterior) == (k(LeftQuasiInterior) && k(RightQuasiInterior)),
                ),
            ];
            for (law, ok) in laws {
                checked += 1;
                if !ok {
                    mismatches.insert(format!("{name}: {law}"));
                }
            }
        }
        let full = classify_subset(&s, &ElementSet::full(Arc::clone(s.carrier()))).unwrap();
        checked += 1;
        if !(IdealKind::ALL.iter().all(|&kind| full.holds(kind)) && full.prime.holds) {
            mismatches.insert(format!("{name}: full carrier"));
        }
    }
    Verdict::new(mismatches.into_iter().collect(), format!("{checked} implication instances"))
}

// 8. Quotient operators factor through the element operators.
fn criterion8() -> Verdict {
    let mut mismatches = BTreeSet::new();
    let (mut maps, mut sets) = (0u64, 0u64);
    for (file, text) in ALL {
        let sc = load_lenient(text);
        for m in sc.maps() {
            let t = &m.map;
            let k = t.target().len();
            if k > 4 {
                continue;
            }
            // Plain universes carry no operation; any table serves, since the
            // approximations ignore it.
            let owned;
            let s1 = match sc.structure(&m.source) {
                Some(d) => &d.semigroup,
                None => {
                    let tables = RawTables::from_fn(Arc::clone(t.source()), vec!["g".into()], |a, _, _| a).unwrap();
                    owned = GammaSemigroup::new_unchecked(tables);
                    &owned
                }
            };
            maps += 1;
            let q = build_quotient(s1, t).unwrap();
            let class_image = |xs: Mask| {
                let mut out = Mask::EMPTY;
                for x in xs.iter() {
                    let k = q.classes().iter().position(|c| c.image == t.image(x)).unwrap();
                    out = out.with(k);
                }
                out
            };
            for h in subsets(k, true) {
                sets += 1;
                let hs = ElementSet::new(Arc::clone(t.target()), h).unwrap();
                let lower: Mask = (0..t.source().len())
                    .filter(|&x| t.image(x).is_subset(h))
                    .fold(Mask::EMPTY, |acc, x| acc.with(x));
                let upper: Mask = (0..t.source().len())
                    .filter(|&x| t.image(x).meets(h))
                    .fold(Mask::EMPTY, |acc, x| acc.with(x));
                if quotient_lower(&q, &hs).unwrap().mask() != class_image(lower) {
                    mismatches.insert(format!("{file}:{} lower", m.name));
                }
                if quotient_upper(&q, &hs).unwrap().mask() != class_image(upper) {
                    mismatches.insert(format!("{file}:{} upper", m.name));
                }
            }
        }
    }
    Verdict::new(mismatches.into_iter().collect(), format!("{maps} fixture maps, {sets} target subsets"))
}

// 9. The worked-example report.
fn criterion9() -> Verdict {
    let mut mismatches = Vec::new();
    let report = audit_paper_examples();
    if report.examples() != (1..=26).collect() {
        mismatches.push("example coverage".to_string());
    }
    for c in report.claims.iter().filter(|c| c.example == 1 && !c.pass) {
        mismatches.push(c.statement.clone());
    }
    let with_witness = report.claims.iter().filter(|c| !c.pass && c.witness.is_some()).count();
    if with_witness == 0 {
        mismatches.push("no FAIL with witness".to_string());
    }
    let first = grs(&["audit-paper"]);
    let second = grs(&["audit-paper"]);
    if first.stdout != second.stdout || first.code != 1 {
        mismatches.push("report stability".to_string());
    }
    let ex1 = report.claims.iter().filter(|c| c.example == 1).count();
    let ex1_pass = report.claims.iter().filter(|c| c.example == 1 && c.pass).count();
    Verdict::new(
        mismatches,
        format!(
            "{} claims over examples 1-26, {} FAIL ({with_witness} with witness); example 1 {ex1_pass}/{ex1} PASS; \
             two runs byte-identical: {}",
            report.claims.len(),
            report.failed(),
            first.stdout == second.stdout
        ),
    )
}

// 10. Round-trip and stable machine output.
fn criterion10() -> Verdict {
    let mut mismatches = Vec::new();
    for (file, text) in ALL {
        let a = parse_scenario(text).unwrap();
        let out = serialize_scenario(&a);
        match parse_scenario(&out) {
            Ok(b) if b == a && serialize_scenario(&b) == out => {}
            _ => mismatches.push(format!("{file} round-trip")),
        }
    }
    let ex1 = fixture_path("example1.grs");
    let ex3 = fixture_path("example3.grs");
    let ex4 = fixture_path("example4.grs");
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", &ex3],
        vec!["approx", &ex1, "--map", "T", "--set", "{a,c}"],
        vec!["classify", &ex3, "--structure", "M", "--set", "{b,c}"],
        vec!["antihom", &ex4, "--map", "T"],
        vec!["enumerate", &ex4, "--from", "M", "--to", "M", "--budget", "25", "--seed", "7"],
        vec!["quotient", &ex3, "--map", "T"],
        vec!["audit", &ex4, "--map", "T", "--samples", "30", "--seed", "7"],
        vec!["audit-paper"],
    ];
    for cmd in &commands {
        let mut args = cmd.clone();
        args.extend(["--format", "machine"]);
        let a = grs(&args);
        let b = grs(&args);
        if a != b || a.code == 2 || !a.stdout.lines().all(|l| l.contains('=')) {
            mismatches.push(format!("machine output of {}", cmd[0]));
        }
    }
    Verdict::new(
        mismatches,
        format!("{} fixture files, {} machine-format commands run twice", ALL.len(), commands.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Verdict); 10] = [
        (1, "Example 1 reproduction", criterion1),
        (2, "approximation identity suite", criterion2),
        (3, "structure validation", criterion3),
        (4, "anti-homomorphism verification", criterion4),
        (5, "product inclusion audit", criterion5),
        (6, "ideal oracle equivalence", criterion6),
        (7, "hierarchy invariants", criterion7),
        (8, "quotient factoring", criterion8),
        (9, "worked-example report", criterion9),
        (10, "round-trip and stable output", criterion10),
    ];
    let mut unexpected = 0;
    for (n, title, f) in criteria {
        let v = f();
        let allowed: BTreeSet<&str> = DOCUMENTED
            .iter()
            .filter(|(k, _)| *k == n)
            .flat_map(|(_, m)| m.iter().copied())
            .collect();
        let found: BTreeSet<&str> = v.mismatches.iter().map(String::as_str).collect();
        let status = if found.is_empty() { "PASS" } else { "FAIL" };
        let note = if found.is_empty() {
            String::new()
        } else if found == allowed {
            " [documented deviation]".to_string()
        } else {
            unexpected += 1;
            format!(" [unexpected: {}]", v.mismatches.join(", "))
        };
        println!("criterion {n} ({title}): {status}; {}{note}", v.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
