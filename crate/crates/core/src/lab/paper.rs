//! Recomputes every value and verdict printed in the worked examples and
//! compares them against the printed claims.
//!
//! Printed sets are compared by name: a printed name absent from the
//! computed set's carrier counts as a mismatch.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::algebra::{Carrier, GammaSemigroup};
use crate::antihom::{check_anti_hom, AntiHomLevel};
use crate::fixtures::{self, load};
use crate::ideal::{is_kind, is_prime, Containment, IdealKind};
use crate::io::Scenario;
use crate::mask::Mask;
use crate::rough::SetValuedMap;

use super::{conclusion_failure, describe_anti_hom, describe_failure, Part};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub example: u32,
    pub statement: String,
    pub claimed: String,
    pub computed: String,
    pub pass: bool,
    /// Present on failures.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperReport {
    pub claims: Vec<Claim>,
}

impl PaperReport {
    pub fn passed(&self) -> usize {
        self.claims.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.claims.len() - self.passed()
    }

    pub fn examples(&self) -> BTreeSet<u32> {
        self.claims.iter().map(|c| c.example).collect()
    }

    /// One line per claim followed by a totals line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let _ = write!(
                out,
                "[{}] example {}: {}: claimed {}, computed {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.example,
                c.statement,
                c.claimed,
                c.computed
            );
            if let Some(w) = &c.witness {
                let _ = write!(out, "; witness: {w}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "claims={} passed={} failed={}",
            self.claims.len(),
            self.passed(),
            self.failed()
        );
        out
    }
}

fn literal(names: &[&str]) -> String {
    format!("{{{}}}", names.join(","))
}

struct Recorder {
    example: u32,
    claims: Vec<Claim>,
}

impl Recorder {
    fn push(&mut self, statement: String, claimed: String, computed: String, pass: bool, witness: Option<String>) {
        self.claims.push(Claim {
            example: self.example,
            statement,
            claimed,
            computed,
            pass,
            witness: if pass { None } else { witness },
        });
    }

    fn value(&mut self, statement: &str, printed: &[&str], carrier: &Carrier, computed: Mask) {
        let want: BTreeSet<&str> = printed.iter().copied().collect();
        let got: BTreeSet<&str> = carrier.members(computed).into_iter().collect();
        let pass = want == got;
        let witness = {
            let extra: Vec<&str> = want.difference(&got).copied().collect();
            let missing: Vec<&str> = got.difference(&want).copied().collect();
            let mut parts = Vec::new();
            if !extra.is_empty() {
                parts.push(format!("printed but not computed: {}", literal(&extra)));
            }
            if !missing.is_empty() {
                parts.push(format!("computed but not printed: {}", literal(&missing)));
            }
            parts.join("; ")
        };
        self.push(statement.to_string(), literal(printed), carrier.render(computed), pass, Some(witness));
    }

    fn truth(&mut self, statement: String, claimed: bool, computed: bool, witness: Option<String>) {
        self.push(statement, claimed.to_string(), computed.to_string(), claimed == computed, witness);
    }

    fn semigroup(&mut self, name: &str, s: &GammaSemigroup) {
        let report = s.validation();
        let witness = report.witnesses.first().map(|w| s.describe_failure(w));
        self.truth(format!("{name} is a Γ-semigroup"), true, report.valid, witness);
    }

    fn level(&mut self, s1: &GammaSemigroup, s2: &GammaSemigroup, t: &SetValuedMap, claimed: AntiHomLevel) {
        let v = check_anti_hom(s1, s2, t).expect("fixture maps fit their structures");
        let pass = v.level >= claimed;
        let statement = match claimed {
            AntiHomLevel::Strong => "T is a strong anti-homomorphism",
            _ => "T is an anti-homomorphism",
        };
        self.push(
            statement.to_string(),
            claimed.to_string(),
            v.level.to_string(),
            pass,
            describe_anti_hom(s1, s2, t, &v),
        );
    }

    fn kind(&mut self, statement: String, s: &GammaSemigroup, set: Mask, kind: IdealKind, prime: bool, claimed: bool) {
        let computed = is_kind(s, set, kind) && (!prime || is_prime(s, set));
        let witness = if computed {
            Some(format!("{} satisfies every defining condition", s.carrier().render(set)))
        } else {
            conclusion_failure(s, set, kind, prime).map(|f| describe_failure(s, set, f))
        };
        self.truth(statement, claimed, computed, witness);
    }
}

fn kind_phrase(kind: IdealKind, prime: bool) -> String {
    if prime {
        format!("a prime {kind}")
    } else if kind.key().starts_with(['a', 'e', 'i', 'o', 'u']) {
        format!("an {kind}")
    } else {
        format!("a {kind}")
    }
}

/// The map `T` of a fixture together with its source and target structures.
fn mapped(scenario: &Scenario) -> (&GammaSemigroup, &GammaSemigroup, &SetValuedMap) {
    let m = scenario.map("T").expect("fixture declares T");
    let s1 = &scenario.structure(&m.source).expect("source is a structure").semigroup;
    let s2 = &scenario.structure(&m.target).expect("target is a structure").semigroup;
    (s1, s2, &m.map)
}

fn approx_name(part: Part) -> &'static str {
    match part {
        Part::I => "upper",
        Part::II => "lower",
    }
}

fn example1(r: &mut Recorder) {
    let sc = load(fixtures::EXAMPLE1);
    let t = &sc.map("T").unwrap().map;
    let y = t.target();
    type Row = (&'static [&'static str], &'static [&'static str], &'static [&'static str]);
    let rows: [Row; 7] = [
        (&["a"], &["2", "4"], &[]),
        (&["b"], &["1", "3"], &["1", "3"]),
        (&["c"], &["2", "4"], &[]),
        (&["a", "b"], &["1", "2", "3", "4"], &["1", "3"]),
        (&["a", "c"], &["2", "4"], &["2"]),
        (&["b", "c"], &["1", "2", "3", "4"], &["1", "3"]),
        (&["a", "b", "c"], &["1", "2", "3", "4"], &["1", "2", "3", "4"]),
    ];
    for (set, upper, lower) in rows {
        let b = y.mask_of(set).unwrap();
        r.value(&format!("upper({})", literal(set)), upper, t.source(), t.upper(b));
        r.value(&format!("lower({})", literal(set)), lower, t.source(), t.lower(b));
    }
}

fn structure_examples(r: &mut Recorder) {
    r.example = 2;
    let sc = load(fixtures::EXAMPLE2);
    r.semigroup("M", &sc.structure("M").unwrap().semigroup);

    r.example = 3;
    let sc = load(fixtures::EXAMPLE3);
    r.semigroup("M", &sc.structure("M").unwrap().semigroup);
    let (s1, s2, t) = mapped(&sc);
    r.level(s1, s2, t, AntiHomLevel::Plain);

    r.example = 4;
    let sc = load(fixtures::EXAMPLE4);
    r.semigroup("M", &sc.structure("M").unwrap().semigroup);
    let (s1, s2, t) = mapped(&sc);
    r.level(s1, s2, t, AntiHomLevel::Plain);

    r.example = 5;
    let sc = load(fixtures::EXAMPLE5);
    r.semigroup("M1", &sc.structure("M1").unwrap().semigroup);
    r.semigroup("M2", &sc.structure("M2").unwrap().semigroup);
    let (s1, s2, t) = mapped(&sc);
    r.level(s1, s2, t, AntiHomLevel::Strong);

    r.example = 6;
    let sc = load(fixtures::EXAMPLE6);
    let m1 = &sc.structure("M1").unwrap().semigroup;
    r.semigroup("M1", m1);
    r.semigroup("M2", &sc.structure("M2").unwrap().semigroup);
    // The printed map assigns images to x and y only.
    let defined = ["x", "y"];
    let undefined: Vec<&str> = m1
        .carrier()
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| !defined.contains(n))
        .collect();
    r.truth(
        "T is defined on every element of M1".to_string(),
        true,
        undefined.is_empty(),
        Some(format!("no image is given for {}", undefined.join(", "))),
    );
}

struct ProductCase {
    example: u32,
    fixture: &'static str,
    level: AntiHomLevel,
    part: Part,
    a1: &'static [&'static str],
    a2: &'static [&'static str],
    approx_a1: &'static [&'static str],
    approx_a2: &'static [&'static str],
    approx_product: &'static [&'static str],
    product: &'static [&'static str],
    approx_of_product: &'static [&'static str],
}

const PRODUCT_CASES: [ProductCase; 2] = [
    ProductCase {
        example: 7,
        fixture: fixtures::EXAMPLE3,
        level: AntiHomLevel::Plain,
        part: Part::I,
        a1: &["a"],
        a2: &["b"],
        approx_a1: &["a", "b", "c"],
        approx_a2: &["a", "b", "c"],
        approx_product: &["a", "b", "c"],
        product: &["b"],
        approx_of_product: &["a", "b", "c"],
    },
    ProductCase {
        example: 8,
        fixture: fixtures::EXAMPLE8,
        level: AntiHomLevel::Strong,
        part: Part::II,
        a1: &["a", "b", "c"],
        a2: &["b", "c"],
        approx_a1: &["a", "b", "c"],
        approx_a2: &["b", "c"],
        approx_product: &["a", "c"],
        product: &["a", "c"],
        approx_of_product: &["a", "c"],
    },
];

fn product_case(r: &mut Recorder, c: &ProductCase) {
    r.example = c.example;
    let sc = load(c.fixture);
    let (s1, s2, t) = mapped(&sc);
    r.level(s1, s2, t, c.level);
    let ap = approx_name(c.part);
    let a1 = s2.carrier().mask_of(c.a1).unwrap();
    let a2 = s2.carrier().mask_of(c.a2).unwrap();
    let x1 = c.part.approx(t, a1);
    let x2 = c.part.approx(t, a2);
    r.value(&format!("{ap}(A1)"), c.approx_a1, s1.carrier(), x1);
    r.value(&format!("{ap}(A2)"), c.approx_a2, s1.carrier(), x2);
    let rhs = s1.product(x2, x1);
    r.value(&format!("{ap}(A2)Γ{ap}(A1)"), c.approx_product, s1.carrier(), rhs);
    let prod = s2.product(a1, a2);
    r.value("A1ΓA2", c.product, s2.carrier(), prod);
    let lhs = c.part.approx(t, prod);
    r.value(&format!("{ap}(A1ΓA2)"), c.approx_of_product, s1.carrier(), lhs);
    let missing = rhs.difference(lhs).first();
    r.truth(
        format!("{ap}(A2)Γ{ap}(A1) ⊆ {ap}(A1ΓA2)"),
        true,
        missing.is_none(),
        missing.map(|e| format!("{} lies only on the left", s1.carrier().name(e))),
    );
}

struct TransferCase {
    example: u32,
    fixture: &'static str,
    level: AntiHomLevel,
    part: Part,
    kind: IdealKind,
    name: &'static str,
    set: &'static [&'static str],
    approx: &'static [&'static str],
    /// Printed lower approximation alongside an upper one.
    lower: Option<&'static [&'static str]>,
    expr: Containment,
    expr_label: &'static str,
    expr_value: &'static [&'static str],
    approx_expr: &'static [&'static str],
    /// Printed primality of the approximation; `None` when no primality is
    /// discussed.
    prime: Option<bool>,
}

const ALL4: &[&str] = &["x1", "x2", "x3", "x4"];

const TRANSFER_CASES: [TransferCase; 18] = {
    use AntiHomLevel::{Plain, Strong};
    use Containment as C;
    use IdealKind as K;
    use Part::{I, II};
    [
        TransferCase {
            example: 9,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::SubGammaSemigroup,
            name: "S",
            set: &["x1", "x2", "x3"],
            approx: &["a", "b", "c", "d"],
            lower: None,
            expr: C::Closed,
            expr_label: "SΓS",
            expr_value: &["a", "c"],
            approx_expr: &["a", "c"],
            prime: None,
        },
        TransferCase {
            example: 10,
            fixture: fixtures::EXAMPLE5,
            level: Strong,
            part: II,
            kind: K::SubGammaSemigroup,
            name: "S",
            set: &["b", "c"],
            approx: &["b", "c"],
            lower: None,
            expr: C::Closed,
            expr_label: "SΓS",
            expr_value: &["b"],
            approx_expr: &["b"],
            prime: None,
        },
        TransferCase {
            example: 11,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::LeftIdeal,
            name: "J",
            set: &["x1", "x3", "x4"],
            approx: ALL4,
            lower: None,
            expr: C::Left,
            expr_label: "MΓJ",
            expr_value: &["x1", "x3"],
            approx_expr: ALL4,
            prime: None,
        },
        TransferCase {
            example: 12,
            fixture: fixtures::EXAMPLE5,
            level: Strong,
            part: II,
            kind: K::LeftIdeal,
            name: "J",
            set: &["b", "c"],
            approx: &["c"],
            lower: None,
            expr: C::Left,
            expr_label: "M2ΓJ",
            expr_value: &["b", "c"],
            approx_expr: &["c"],
            prime: None,
        },
        TransferCase {
            example: 13,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::BiIdeal,
            name: "B",
            set: &["x1", "x2", "x3"],
            approx: ALL4,
            lower: None,
            expr: C::Bi,
            expr_label: "BΓMΓB",
            expr_value: &["x1", "x3"],
            approx_expr: &["x1", "x3", "x4"],
            prime: Some(true),
        },
        TransferCase {
            example: 14,
            fixture: fixtures::EXAMPLE5,
            level: Strong,
            part: II,
            kind: K::BiIdeal,
            name: "B",
            set: &["b", "c"],
            approx: &["b", "c"],
            lower: None,
            expr: C::Bi,
            expr_label: "BΓM2ΓB",
            expr_value: &["b"],
            approx_expr: &["b"],
            prime: Some(true),
        },
        TransferCase {
            example: 15,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::InteriorIdeal,
            name: "J",
            set: &["x1", "x3", "x4"],
            approx: ALL4,
            lower: None,
            expr: C::Interior,
            expr_label: "MΓJΓM",
            expr_value: &["x1", "x3"],
            approx_expr: &["x1", "x2", "x3"],
            prime: Some(true),
        },
        TransferCase {
            example: 16,
            fixture: fixtures::EXAMPLE5,
            level: Strong,
            part: II,
            kind: K::InteriorIdeal,
            name: "J",
            set: &["b", "c"],
            approx: &["b", "c"],
            lower: None,
            expr: C::Interior,
            expr_label: "M2ΓJΓM2",
            expr_value: &["b", "c"],
            approx_expr: &["b", "c"],
            prime: Some(true),
        },
        TransferCase {
            example: 17,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::QuasiIdeal,
            name: "Q",
            set: &["x1", "x3", "x4"],
            approx: ALL4,
            lower: None,
            expr: C::Quasi,
            expr_label: "QΓM∩MΓQ",
            expr_value: &["x1", "x3"],
            approx_expr: &["x1", "x2", "x3"],
            prime: Some(true),
        },
        TransferCase {
            example: 18,
            fixture: fixtures::EXAMPLE8,
            level: Strong,
            part: II,
            kind: K::QuasiIdeal,
            name: "Q",
            set: &["a", "b", "c"],
            approx: &["b", "c"],
            lower: None,
            expr: C::Quasi,
            expr_label: "QΓM2∩M2ΓQ",
            expr_value: &["a", "c"],
            approx_expr: &["c"],
            prime: Some(false),
        },
        TransferCase {
            example: 19,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::BiInterior,
            name: "B",
            set: &["x1", "x3"],
            approx: ALL4,
            lower: Some(&["x1", "x3"]),
            expr: C::BiInterior,
            expr_label: "MΓBΓM∩BΓMΓB",
            expr_value: &["x1", "x3"],
            approx_expr: ALL4,
            prime: Some(true),
        },
        TransferCase {
            example: 20,
            fixture: fixtures::EXAMPLE8,
            level: Strong,
            part: II,
            kind: K::BiInterior,
            name: "B",
            set: &["a", "b", "c"],
            approx: &["a", "b", "c"],
            lower: None,
            expr: C::BiInterior,
            expr_label: "MΓBΓM∩BΓMΓB",
            expr_value: &["a", "c"],
            approx_expr: &["a", "c"],
            prime: Some(true),
        },
        TransferCase {
            example: 21,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::LeftBiQuasi,
            name: "B",
            set: &["x1", "x3"],
            approx: ALL4,
            lower: None,
            expr: C::LeftBiQuasi,
            expr_label: "MΓB∩BΓMΓB",
            expr_value: &["x1", "x3"],
            approx_expr: ALL4,
            prime: Some(true),
        },
        TransferCase {
            example: 22,
            fixture: fixtures::EXAMPLE8,
            level: Strong,
            part: II,
            kind: K::BiQuasi,
            name: "B",
            set: &["a", "c"],
            approx: &["a", "c"],
            lower: None,
            expr: C::LeftBiQuasi,
            expr_label: "MΓB∩BΓMΓB",
            expr_value: &["a", "c"],
            approx_expr: &["a", "c"],
            prime: Some(true),
        },
        TransferCase {
            example: 23,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::LeftQuasiInterior,
            name: "Q",
            set: ALL4,
            approx: ALL4,
            lower: None,
            expr: C::LeftBiQuasi,
            expr_label: "MΓQ∩QΓMΓQ",
            expr_value: &["x1", "x3"],
            approx_expr: ALL4,
            prime: Some(true),
        },
        TransferCase {
            example: 24,
            fixture: fixtures::EXAMPLE5,
            level: Strong,
            part: II,
            kind: K::QuasiInterior,
            name: "Q",
            set: &["a", "b", "c"],
            approx: &["a", "b", "c"],
            lower: None,
            expr: C::LeftQuasiInterior,
            expr_label: "M2ΓQΓM2ΓQ",
            expr_value: &["a", "b", "c"],
            approx_expr: &["a", "b", "c"],
            prime: Some(true),
        },
        TransferCase {
            example: 25,
            fixture: fixtures::EXAMPLE4,
            level: Plain,
            part: I,
            kind: K::BiQuasiInterior,
            name: "B",
            set: &["x1", "x2", "x3"],
            approx: ALL4,
            lower: None,
            expr: C::BiQuasiInterior,
            expr_label: "BΓMΓBΓMΓB",
            expr_value: &["x1", "x3"],
            approx_expr: ALL4,
            prime: Some(true),
        },
        TransferCase {
            example: 26,
            fixture: fixtures::EXAMPLE8,
            level: Strong,
            part: II,
            kind: K::BiQuasiInterior,
            name: "B",
            set: &["a", "c"],
            approx: &["a", "c"],
            lower: None,
            expr: C::BiQuasiInterior,
            expr_label: "BΓMΓBΓMΓB",
            expr_value: &["a", "c"],
            approx_expr: &["a", "c"],
            prime: Some(true),
        },
    ]
};

fn transfer_case(r: &mut Recorder, c: &TransferCase) {
    r.example = c.example;
    let sc = load(c.fixture);
    let (s1, s2, t) = mapped(&sc);
    let m = sc.map("T").unwrap();
    let ap = approx_name(c.part);
    let n = c.name;
    r.level(s1, s2, t, c.level);

    let x = s2.carrier().mask_of(c.set).unwrap();
    r.kind(
        format!("{n} = {} is {} of {}", literal(c.set), kind_phrase(c.kind, false), m.target),
        s2,
        x,
        c.kind,
        false,
        true,
    );
    let approx = c.part.approx(t, x);
    r.value(&format!("{ap}({n})"), c.approx, s1.carrier(), approx);
    if let Some(lower) = c.lower {
        r.value(&format!("lower({n})"), lower, s1.carrier(), t.lower(x));
    }
    let e = c.expr.lhs(s2, x);
    r.value(c.expr_label, c.expr_value, s2.carrier(), e);
    let approx_e = c.part.approx(t, e);
    r.value(&format!("{ap}({})", c.expr_label), c.approx_expr, s1.carrier(), approx_e);
    let outside = approx_e.difference(approx).first();
    r.truth(
        format!("{ap}({}) ⊆ {ap}({n})", c.expr_label),
        true,
        outside.is_none(),
        outside.map(|e| format!("{} lies only on the left", s1.carrier().name(e))),
    );
    r.kind(
        format!("{ap}({n}) is {} of {}", kind_phrase(c.kind, false), m.source),
        s1,
        approx,
        c.kind,
        false,
        true,
    );
    if let Some(approx_prime) = c.prime {
        r.kind(
            format!("{n} is {} of {}", kind_phrase(c.kind, true), m.target),
            s2,
            x,
            c.kind,
            true,
            true,
        );
        r.kind(
            format!("{ap}({n}) is {} of {}", kind_phrase(c.kind, true), m.source),
            s1,
            approx,
            c.kind,
            true,
            approx_prime,
        );
    }
}

/// Evaluates every printed claim of Examples 1 to 26. The report is a pure
/// function of the embedded fixtures.
pub fn audit_paper_examples() -> PaperReport {
    let mut r = Recorder {
        example: 1,
        claims: Vec::new(),
    };
    example1(&mut r);
    structure_examples(&mut r);
    product_case(&mut r, &PRODUCT_CASES[0]);
    product_case(&mut r, &PRODUCT_CASES[1]);
    for c in &TRANSFER_CASES {
        transfer_case(&mut r, c);
    }
    r.claims.sort_by_key(|c| c.example);
    PaperReport { claims: r.claims }
}
