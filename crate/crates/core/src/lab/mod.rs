//! Executable checkers for the transfer theorems: every statement is
//! evaluated instance by instance, with hypotheses taken literally and
//! counterexamples recorded as replayable witnesses.

pub mod paper;
pub mod search;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{same_carrier, ElementSet, GammaSemigroup};
use crate::antihom::{check_compatible, image_product_raw, level, AntiHomLevel, AntiHomVerdict};
use crate::error::{Error, Result};
use crate::ideal::{is_kind, is_prime, kind_verdict, prime_verdict, Containment, IdealKind, IdealWitness, PrimeWitness};
use crate::mask::{subsets, Mask};
use crate::quotient::{build_quotient, QuotientStructure, WellDefinednessWitness};
use crate::rough::SetValuedMap;

pub use search::{search_counterexample, search_counterexample_in, Counterexample, SearchReport};

/// Which approximation a statement is about, and which map class it assumes
/// as written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// Upper approximation, plain anti-homomorphism.
    I,
    /// Lower approximation, strong anti-homomorphism.
    II,
}

impl Part {
    pub fn key(self) -> &'static str {
        match self {
            Part::I => "i",
            Part::II => "ii",
        }
    }

    fn approx(self, t: &SetValuedMap, b: Mask) -> Mask {
        match self {
            Part::I => t.upper(b),
            Part::II => t.lower(b),
        }
    }

    fn quotient_approx(self, q: &QuotientStructure, b: Mask) -> Mask {
        match self {
            Part::I => q.upper(b),
            Part::II => q.lower(b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    /// `approx(A₁ΓA₂) ⊇ approx(A₂)Γapprox(A₁)`.
    ProductInclusion,
    /// A `K` of M₂ has an approximation that is a `K` of M₁.
    Transfer(IdealKind),
    /// As `Transfer`, with primality on both sides.
    PrimeTransfer(IdealKind),
    /// A `K` of M₂ has a quotient approximation that is a `K` of M₁/T.
    QuotientTransfer(IdealKind),
    /// A left (right) ideal of M₂ has a quotient approximation that is a left
    /// (right) ideal of M₁/T.
    QuotientSides,
}

impl Statement {
    /// Number of subset parameters drawn from M₂.
    pub fn slots(self) -> usize {
        match self {
            Statement::ProductInclusion => 2,
            _ => 1,
        }
    }

    pub fn is_quotient(self) -> bool {
        matches!(self, Statement::QuotientTransfer(_) | Statement::QuotientSides)
    }
}

const STATEMENTS: [(&str, Statement); 32] = {
    use IdealKind as K;
    use Statement as S;
    [
        ("T5.1", S::ProductInclusion),
        ("T5.2", S::Transfer(K::SubGammaSemigroup)),
        ("T5.3", S::Transfer(K::LeftIdeal)),
        ("C1", S::Transfer(K::RightIdeal)),
        ("C2", S::Transfer(K::TwoSidedIdeal)),
        ("T5.4", S::Transfer(K::BiIdeal)),
        ("T5.5", S::Transfer(K::InteriorIdeal)),
        ("T5.6", S::Transfer(K::QuasiIdeal)),
        ("T5.7", S::Transfer(K::BiInterior)),
        ("T5.8", S::Transfer(K::LeftBiQuasi)),
        ("C3", S::Transfer(K::RightBiQuasi)),
        ("C4", S::Transfer(K::BiQuasi)),
        ("T5.9", S::Transfer(K::LeftQuasiInterior)),
        ("C5", S::Transfer(K::RightQuasiInterior)),
        ("C6", S::Transfer(K::QuasiInterior)),
        ("T5.10", S::Transfer(K::BiQuasiInterior)),
        ("T5.11", S::PrimeTransfer(K::BiIdeal)),
        ("T5.12", S::PrimeTransfer(K::InteriorIdeal)),
        ("T5.13", S::PrimeTransfer(K::QuasiIdeal)),
        ("T5.14", S::PrimeTransfer(K::BiInterior)),
        ("T5.15", S::PrimeTransfer(K::LeftBiQuasi)),
        ("T5.16", S::PrimeTransfer(K::LeftQuasiInterior)),
        ("T5.17prime", S::PrimeTransfer(K::BiQuasiInterior)),
        ("Q5.17", S::QuotientTransfer(K::SubGammaSemigroup)),
        ("Q5.18", S::QuotientSides),
        ("C7", S::QuotientTransfer(K::BiIdeal)),
        ("C8", S::QuotientTransfer(K::InteriorIdeal)),
        ("C9", S::QuotientTransfer(K::QuasiIdeal)),
        ("C10", S::QuotientTransfer(K::BiInterior)),
        ("C11", S::QuotientTransfer(K::BiQuasi)),
        ("C12", S::QuotientTransfer(K::QuasiInterior)),
        ("C13", S::QuotientTransfer(K::BiQuasiInterior)),
    ]
};

/// One part of one theorem or corollary, e.g. `T5.3.i` or `C7.ii`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TheoremId {
    index: u8,
    part: Part,
}

impl TheoremId {
    pub fn all() -> impl Iterator<Item = TheoremId> {
        (0..STATEMENTS.len() as u8).flat_map(|index| [Part::I, Part::II].map(|part| TheoremId { index, part }))
    }

    pub fn parse(s: &str) -> Result<TheoremId> {
        let unknown = || Error::UnknownTheorem(s.to_string());
        let (label, part) = s.rsplit_once('.').ok_or_else(unknown)?;
        let part = match part {
            "i" => Part::I,
            "ii" => Part::II,
            _ => return Err(unknown()),
        };
        let index = STATEMENTS.iter().position(|(l, _)| *l == label).ok_or_else(unknown)?;
        Ok(TheoremId {
            index: index as u8,
            part,
        })
    }

    pub fn label(self) -> &'static str {
        STATEMENTS[self.index as usize].0
    }

    pub fn statement(self) -> Statement {
        STATEMENTS[self.index as usize].1
    }

    pub fn part(self) -> Part {
        self.part
    }

    /// Map class assumed by the statement as written.
    pub fn stated_class(self) -> MapClass {
        match (self.statement(), self.part) {
            (_, Part::I) | (Statement::ProductInclusion, Part::II) => MapClass::Plain,
            _ => MapClass::Strong,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.label(), self.part.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapClass {
    Plain,
    Strong,
}

impl MapClass {
    pub fn level(self) -> AntiHomLevel {
        match self {
            MapClass::Plain => AntiHomLevel::Plain,
            MapClass::Strong => AntiHomLevel::Strong,
        }
    }
}

/// A registered checker: a statement part under one map class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Check {
    pub id: TheoremId,
    pub class: MapClass,
}

impl Check {
    pub fn stated(id: TheoremId) -> Check {
        Check {
            id,
            class: id.stated_class(),
        }
    }

    /// Parses `T5.3.i` (stated class) or `T5.1.ii[strong]`.
    pub fn parse(s: &str) -> Result<Check> {
        if let Some(base) = s.strip_suffix("[strong]") {
            let check = Check {
                id: TheoremId::parse(base)?,
                class: MapClass::Strong,
            };
            return if registry().contains(&check) {
                Ok(check)
            } else {
                Err(Error::UnknownTheorem(s.to_string()))
            };
        }
        Ok(Check::stated(TheoremId::parse(s)?))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.class == self.id.stated_class() {
            write!(f, "{}", self.id)
        } else {
            write!(f, "{}[strong]", self.id)
        }
    }
}

/// Every registered checker in report order. The lower-approximation product
/// inclusion appears twice: as stated (plain) and under a strong map.
pub fn registry() -> Vec<Check> {
    let mut out = Vec::with_capacity(2 * STATEMENTS.len() + 1);
    for id in TheoremId::all() {
        out.push(Check::stated(id));
        if id.statement() == Statement::ProductInclusion && id.part() == Part::II {
            out.push(Check {
                id,
                class: MapClass::Strong,
            });
        }
    }
    out
}

/// All registered checkers for one id.
pub fn checks_for(id: TheoremId) -> Vec<Check> {
    registry().into_iter().filter(|c| c.id == id).collect()
}

/// Why a conclusion about a subset fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    /// The subset is empty; every kind requires a non-empty set.
    Empty,
    Containment(IdealWitness),
    NotPrime(PrimeWitness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `element ∈ rhs \ lhs` for `lhs = approx(A₁ΓA₂)`,
    /// `rhs = approx(A₂)Γapprox(A₁)`, both over M₁.
    ProductInclusion { lhs: Mask, rhs: Mask, element: usize },
    /// The approximation `set` (over M₁) is not a `kind`.
    Source { kind: IdealKind, set: Mask, failure: Failure },
    /// The quotient approximation `set` (over classes of M₁/T) is not a `kind`.
    Quotient { kind: IdealKind, set: Mask, failure: Failure },
}

/// A counterexample instance: the map, the parameters over M₂, and the
/// failing conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub map: SetValuedMap,
    pub params: Vec<Mask>,
    pub violation: Violation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceOutcome {
    HypothesisUnmet,
    Holds,
    Fails(Violation),
    NotApplicable(WellDefinednessWitness),
}

/// Per-map data shared by every instance.
pub struct Instance<'a> {
    pub s1: &'a GammaSemigroup,
    pub s2: &'a GammaSemigroup,
    pub map: &'a SetValuedMap,
    level: AntiHomLevel,
    quotient: Option<QuotientStructure>,
}

impl<'a> Instance<'a> {
    pub fn new(s1: &'a GammaSemigroup, s2: &'a GammaSemigroup, map: &'a SetValuedMap) -> Result<Instance<'a>> {
        check_compatible(s1, s2, map)?;
        Ok(Instance {
            s1,
            s2,
            map,
            level: level(s1, s2, map),
            quotient: None,
        })
    }

    pub fn level(&self) -> AntiHomLevel {
        self.level
    }

    pub fn quotient(&mut self) -> &QuotientStructure {
        if self.quotient.is_none() {
            self.quotient = Some(build_quotient(self.s1, self.map).expect("instance carriers were checked"));
        }
        self.quotient.as_ref().unwrap()
    }

    /// Evaluates one parameter tuple. Parameters are masks over M₂ and must
    /// match the statement's slot count.
    pub fn evaluate(&mut self, check: Check, params: &[Mask]) -> InstanceOutcome {
        let id = check.id;
        let part = id.part();
        let statement = id.statement();
        if statement.is_quotient() {
            if let Some(w) = self.quotient().failure_witness() {
                return InstanceOutcome::NotApplicable(w);
            }
        }
        if self.level < check.class.level() {
            return InstanceOutcome::HypothesisUnmet;
        }
        let (s1, s2, t) = (self.s1, self.s2, self.map);
        match statement {
            Statement::ProductInclusion => {
                let (a1, a2) = (params[0], params[1]);
                let lhs = part.approx(t, s2.product(a1, a2));
                let rhs = s1.product(part.approx(t, a2), part.approx(t, a1));
                match rhs.difference(lhs).first() {
                    None => InstanceOutcome::Holds,
                    Some(element) => InstanceOutcome::Fails(Violation::ProductInclusion { lhs, rhs, element }),
                }
            }
            Statement::Transfer(kind) | Statement::PrimeTransfer(kind) => {
                let prime = matches!(statement, Statement::PrimeTransfer(_));
                let x = params[0];
                if !is_kind(s2, x, kind) || (prime && !is_prime(s2, x)) {
                    return InstanceOutcome::HypothesisUnmet;
                }
                let set = part.approx(t, x);
                let exempt = part == Part::II && statement == Statement::Transfer(IdealKind::SubGammaSemigroup);
                if set.is_empty() && !exempt {
                    return InstanceOutcome::HypothesisUnmet;
                }
                match conclusion_failure(s1, set, kind, prime) {
                    None => InstanceOutcome::Holds,
                    Some(failure) => InstanceOutcome::Fails(Violation::Source { kind, set, failure }),
                }
            }
            Statement::QuotientTransfer(kind) => {
                let x = params[0];
                if !is_kind(s2, x, kind) {
                    return InstanceOutcome::HypothesisUnmet;
                }
                let q = self.quotient();
                let set = part.quotient_approx(q, x);
                let induced = q.induced().expect("well-defined quotient");
                match conclusion_failure(induced, set, kind, false) {
                    None => InstanceOutcome::Holds,
                    Some(failure) => InstanceOutcome::Fails(Violation::Quotient { kind, set, failure }),
                }
            }
            Statement::QuotientSides => {
                let x = params[0];
                let sides: Vec<IdealKind> = [IdealKind::LeftIdeal, IdealKind::RightIdeal]
                    .into_iter()
                    .filter(|&k| is_kind(s2, x, k))
                    .collect();
                if sides.is_empty() {
                    return InstanceOutcome::HypothesisUnmet;
                }
                let q = self.quotient();
                let set = part.quotient_approx(q, x);
                let induced = q.induced().expect("well-defined quotient");
                for kind in sides {
                    if let Some(failure) = conclusion_failure(induced, set, kind, false) {
                        return InstanceOutcome::Fails(Violation::Quotient { kind, set, failure });
                    }
                }
                InstanceOutcome::Holds
            }
        }
    }
}

pub(crate) fn conclusion_failure(s: &GammaSemigroup, set: Mask, kind: IdealKind, prime: bool) -> Option<Failure> {
    if set.is_empty() {
        return Some(Failure::Empty);
    }
    if let Some(w) = kind_verdict(s, set, kind).witness {
        return Some(Failure::Containment(w));
    }
    if prime {
        if let Some(w) = prime_verdict(s, set).witness {
            return Some(Failure::NotPrime(w));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// No instance satisfied the hypothesis.
    Vacuous,
    /// The quotient operation is not well-defined for this map.
    NotApplicable,
}

impl Outcome {
    pub fn key(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Vacuous => "VACUOUS",
            Outcome::NotApplicable => "NOT-APPLICABLE",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditResult {
    pub check: Check,
    pub outcome: Outcome,
    /// Some instance satisfied the hypothesis.
    pub hypothesis_met: bool,
    /// Absent when no instance satisfied the hypothesis.
    pub conclusion_holds: Option<bool>,
    /// First failing instance; present iff `conclusion_holds == Some(false)`.
    pub witness: Option<Witness>,
    pub not_applicable: Option<WellDefinednessWitness>,
    /// Instances that satisfied the hypothesis.
    pub satisfied: u64,
    /// Instances enumerated.
    pub checked: u64,
    pub failures: u64,
}

impl AuditResult {
    fn new(check: Check) -> AuditResult {
        AuditResult {
            check,
            outcome: Outcome::Vacuous,
            hypothesis_met: false,
            conclusion_holds: None,
            witness: None,
            not_applicable: None,
            satisfied: 0,
            checked: 0,
            failures: 0,
        }
    }

    fn record(&mut self, map: &SetValuedMap, params: &[Mask], outcome: InstanceOutcome) {
        self.checked += 1;
        match outcome {
            InstanceOutcome::HypothesisUnmet => {}
            InstanceOutcome::Holds => self.satisfied += 1,
            InstanceOutcome::Fails(violation) => {
                self.satisfied += 1;
                self.failures += 1;
                if self.witness.is_none() {
                    self.witness = Some(Witness {
                        map: map.clone(),
                        params: params.to_vec(),
                        violation,
                    });
                }
            }
            InstanceOutcome::NotApplicable(w) => self.not_applicable = Some(w),
        }
    }

    fn close(mut self) -> AuditResult {
        self.hypothesis_met = self.satisfied > 0;
        self.conclusion_holds = self.hypothesis_met.then_some(self.failures == 0);
        self.outcome = if self.not_applicable.is_some() {
            self.hypothesis_met = false;
            self.conclusion_holds = None;
            self.satisfied = 0;
            Outcome::NotApplicable
        } else if !self.hypothesis_met {
            Outcome::Vacuous
        } else if self.failures > 0 {
            Outcome::Fail
        } else {
            Outcome::Pass
        };
        self
    }
}

fn check_params(check: Check, s2: &GammaSemigroup, params: &[ElementSet]) -> Result<Vec<Mask>> {
    let expected = check.id.statement().slots();
    if params.len() != expected {
        return Err(Error::ParamShape {
            id: check.to_string(),
            expected,
            found: params.len(),
        });
    }
    params
        .iter()
        .map(|p| {
            if same_carrier(p.carrier(), s2.carrier()) {
                Ok(p.mask())
            } else {
                Err(Error::StructureMismatch)
            }
        })
        .collect()
}

/// Audits a single instance.
pub fn audit_theorem(
    check: Check,
    s1: &GammaSemigroup,
    s2: &GammaSemigroup,
    t: &SetValuedMap,
    params: &[ElementSet],
) -> Result<AuditResult> {
    let masks = check_params(check, s2, params)?;
    let mut inst = Instance::new(s1, s2, t)?;
    let mut r = AuditResult::new(check);
    let outcome = inst.evaluate(check, &masks);
    r.record(t, &masks, outcome);
    Ok(r.close())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetScope {
    /// Every tuple of non-empty subsets of M₂.
    All,
    /// `count` tuples of independently uniform non-empty subsets.
    Sampled { count: u64, seed: u64 },
}

/// Instance ceiling for `SubsetScope::All`.
pub const DEFAULT_INSTANCE_BUDGET: u128 = 1 << 22;

/// Number of parameter tuples `scope` visits for a statement with `slots`
/// parameters over a carrier of size `n2`.
pub fn instance_count(n2: usize, slots: usize, scope: SubsetScope) -> u128 {
    match scope {
        SubsetScope::All => ((1u128 << n2) - 1).saturating_pow(slots as u32),
        SubsetScope::Sampled { count, .. } => count as u128,
    }
}

fn param_tuples(n2: usize, slots: usize, scope: SubsetScope) -> Vec<Vec<Mask>> {
    match scope {
        SubsetScope::All => {
            let mut out: Vec<Vec<Mask>> = vec![Vec::new()];
            for _ in 0..slots {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        subsets(n2, false).map(move |m| {
                            let mut p = prefix.clone();
                            p.push(m);
                            p
                        })
                    })
                    .collect();
            }
            out
        }
        SubsetScope::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let top = Mask::full(n2).0;
            (0..count)
                .map(|_| (0..slots).map(|_| Mask(rng.gen_range(1..=top))).collect())
                .collect()
        }
    }
}

fn ensure_budget(n2: usize, scope: SubsetScope, budget: u128, statements: &[Statement]) -> Result<()> {
    if scope == SubsetScope::All {
        let required = statements
            .iter()
            .map(|s| instance_count(n2, s.slots(), scope))
            .max()
            .unwrap_or(0);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
    }
    Ok(())
}

/// Audits one checker over every parameter tuple in scope.
pub fn audit_check(
    check: Check,
    s1: &GammaSemigroup,
    s2: &GammaSemigroup,
    t: &SetValuedMap,
    scope: SubsetScope,
) -> Result<AuditResult> {
    let mut inst = Instance::new(s1, s2, t)?;
    ensure_budget(s2.order(), scope, DEFAULT_INSTANCE_BUDGET, &[check.id.statement()])?;
    Ok(run_check(&mut inst, check, scope))
}

fn run_check(inst: &mut Instance<'_>, check: Check, scope: SubsetScope) -> AuditResult {
    let mut r = AuditResult::new(check);
    for params in param_tuples(inst.s2.order(), check.id.statement().slots(), scope) {
        let outcome = inst.evaluate(check, &params);
        let na = matches!(outcome, InstanceOutcome::NotApplicable(_));
        r.record(inst.map, &params, outcome);
        if na {
            break;
        }
    }
    r.close()
}

/// Runs every registered checker, in registry order.
pub fn audit_all(
    s1: &GammaSemigroup,
    s2: &GammaSemigroup,
    t: &SetValuedMap,
    scope: SubsetScope,
) -> Result<Vec<AuditResult>> {
    audit_all_with_budget(s1, s2, t, scope, DEFAULT_INSTANCE_BUDGET)
}

pub fn audit_all_with_budget(
    s1: &GammaSemigroup,
    s2: &GammaSemigroup,
    t: &SetValuedMap,
    scope: SubsetScope,
    budget: u128,
) -> Result<Vec<AuditResult>> {
    if let SubsetScope::Sampled { count: 0, .. } = scope {
        return Err(Error::ZeroBudget);
    }
    let mut inst = Instance::new(s1, s2, t)?;
    let statements: Vec<Statement> = STATEMENTS.iter().map(|(_, s)| *s).collect();
    ensure_budget(s2.order(), scope, budget, &statements)?;
    Ok(registry()
        .into_iter()
        .map(|check| run_check(&mut inst, check, scope))
        .collect())
}

/// Re-derives a witness from scratch: the map meets the class, the
/// parameters meet the hypothesis, and the recorded violation is reproduced
/// by the ideal and approximation predicates.
pub fn replay(check: Check, s1: &GammaSemigroup, s2: &GammaSemigroup, w: &Witness) -> bool {
    let Ok(mut inst) = Instance::new(s1, s2, &w.map) else {
        return false;
    };
    if w.params.len() != check.id.statement().slots() || !w.params.iter().all(|p| p.fits(s2.order())) {
        return false;
    }
    if inst.evaluate(check, &w.params) != InstanceOutcome::Fails(w.violation) {
        return false;
    }
    if crate::antihom::check_anti_hom(s1, s2, &w.map).map(|v| v.level) != Ok(inst.level()) {
        return false;
    }
    let part = check.id.part();
    match w.violation {
        Violation::ProductInclusion { lhs, rhs, element } => {
            let a1 = ElementSet::new(Arc::clone(s2.carrier()), w.params[0]);
            let a2 = ElementSet::new(Arc::clone(s2.carrier()), w.params[1]);
            let (Ok(a1), Ok(a2)) = (a1, a2) else { return false };
            let approx = |b: &ElementSet| match part {
                Part::I => w.map.upper_approx(b),
                Part::II => w.map.lower_approx(b),
            };
            let Ok(prod) = s2.gamma_product(&a1, &a2) else { return false };
            let (Ok(l), Ok(x1), Ok(x2)) = (approx(&prod), approx(&a1), approx(&a2)) else {
                return false;
            };
            let Ok(r) = s1.gamma_product(&x2, &x1) else { return false };
            l.mask() == lhs && r.mask() == rhs && rhs.contains(element) && !lhs.contains(element)
        }
        Violation::Source { set, failure, kind } => {
            let b = ElementSet::new(Arc::clone(s2.carrier()), w.params[0]);
            let Ok(b) = b else { return false };
            let approx = match part {
                Part::I => w.map.upper_approx(&b),
                Part::II => w.map.lower_approx(&b),
            };
            approx.map(|a| a.mask()) == Ok(set) && failure_reproduces(s1, set, kind, failure)
        }
        Violation::Quotient { set, failure, kind } => {
            let q = inst.quotient();
            let Some(induced) = q.induced() else { return false };
            part.quotient_approx(q, w.params[0]) == set && failure_reproduces(induced, set, kind, failure)
        }
    }
}

fn failure_reproduces(s: &GammaSemigroup, set: Mask, kind: IdealKind, failure: Failure) -> bool {
    match failure {
        Failure::Empty => set.is_empty(),
        Failure::Containment(w) => {
            let clause_ok = w.clause == Containment::Closed || kind.containments().contains(&w.clause);
            clause_ok && w.clause.lhs(s, set).contains(w.element) && !set.contains(w.element)
        }
        Failure::NotPrime(w) => {
            set.contains(s.op(w.x, w.gamma, w.y)) && !set.contains(w.x) && !set.contains(w.y)
        }
    }
}

/// Human-readable account of a violation, naming elements.
pub fn describe_violation(check: Check, s1: &GammaSemigroup, s2: &GammaSemigroup, w: &Witness) -> String {
    let params: Vec<String> = w.params.iter().map(|&p| s2.carrier().render(p)).collect();
    let approx = match check.id.part() {
        Part::I => "upper",
        Part::II => "lower",
    };
    let head = format!("map {} params {}", w.map.render(), params.join(" "));
    match w.violation {
        Violation::ProductInclusion { lhs, rhs, element } => format!(
            "{head}: {} in {approx}(A2)Γ{approx}(A1) = {} but not in {approx}(A1ΓA2) = {}",
            s1.carrier().name(element),
            s1.carrier().render(rhs),
            s1.carrier().render(lhs)
        ),
        Violation::Source { kind, set, failure } => format!(
            "{head}: {approx} = {} is not a {kind}: {}",
            s1.carrier().render(set),
            describe_failure(s1, set, failure)
        ),
        Violation::Quotient { kind, set, failure } => {
            let q = build_quotient(s1, &w.map).expect("witness map fits its structures");
            let induced = q.induced().expect("well-defined quotient");
            format!(
                "{head}: quotient {approx} = {} is not a {kind}: {}",
                induced.carrier().render(set),
                describe_failure(induced, set, failure)
            )
        }
    }
}

pub fn describe_failure(s: &GammaSemigroup, set: Mask, failure: Failure) -> String {
    let name = |i: usize| s.carrier().name(i);
    match failure {
        Failure::Empty => "the set is empty".to_string(),
        Failure::Containment(w) => format!(
            "{} lies in {} = {} but not in A",
            name(w.element),
            w.clause.expr(),
            s.carrier().render(w.clause.lhs(s, set))
        ),
        Failure::NotPrime(w) => format!(
            "{} {} {} = {} lies in A while {} and {} do not",
            name(w.x),
            s.gammas()[w.gamma],
            name(w.y),
            name(s.op(w.x, w.gamma, w.y)),
            name(w.x),
            name(w.y)
        ),
    }
}

/// Explains why a map falls short of the next anti-homomorphism level.
pub fn describe_anti_hom(s1: &GammaSemigroup, s2: &GammaSemigroup, t: &SetValuedMap, v: &AntiHomVerdict) -> Option<String> {
    let g = |i: usize| s1.gammas()[i].as_str();
    if let Some(w) = v.plain_witness {
        let ab = s1.op(w.a, w.gamma, w.b);
        return Some(format!(
            "T({a} {gm} {b}) = T({ab}) = {img} misses {e} from T({b}) {gm} T({a}) = {prod}",
            a = s1.carrier().name(w.a),
            b = s1.carrier().name(w.b),
            gm = g(w.gamma),
            ab = s1.carrier().name(ab),
            img = s2.carrier().render(t.image(ab)),
            e = s2.carrier().name(w.element),
            prod = s2.carrier().render(image_product_raw(s2, t, w.a, w.gamma, w.b)),
        ));
    }
    v.strong_witness.map(|w| {
        format!(
            "T({a} {gm} {b}) = {img} but T({b}) {gm} T({a}) = {prod}",
            a = s1.carrier().name(w.a),
            b = s1.carrier().name(w.b),
            gm = g(w.gamma),
            img = s2.carrier().render(w.image),
            prod = s2.carrier().render(w.product),
        )
    })
}
