//! Ideal kinds of a Γ-semigroup and the shared primality condition.
//!
//! Every kind is a conjunction of containments `E(A) ⊆ A`, where `E` is a
//! Γ-product chain built from `A` and the full carrier `M`, intersected for
//! the bi-quasi and bi-interior families. Chains are left-associated.

use std::fmt;

use crate::algebra::{same_carrier, ElementSet, GammaSemigroup};
use crate::error::{Error, Result};
use crate::mask::Mask;

/// A single defining containment `lhs(A) ⊆ A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Containment {
    /// AΓA
    Closed,
    /// MΓA
    Left,
    /// AΓM
    Right,
    /// AΓMΓA
    Bi,
    /// AΓM ∩ MΓA
    Quasi,
    /// MΓAΓM
    Interior,
    /// MΓA ∩ AΓMΓA
    LeftBiQuasi,
    /// AΓM ∩ AΓMΓA
    RightBiQuasi,
    /// MΓAΓM ∩ AΓMΓA
    BiInterior,
    /// MΓAΓMΓA
    LeftQuasiInterior,
    /// AΓMΓAΓM
    RightQuasiInterior,
    /// AΓMΓAΓMΓA
    BiQuasiInterior,
}

impl Containment {
    /// Left-hand side of the containment for subset `a` of `s`.
    pub fn lhs(self, s: &GammaSemigroup, a: Mask) -> Mask {
        let m = s.full();
        match self {
            Containment::Closed => s.product(a, a),
            Containment::Left => s.product(m, a),
            Containment::Right => s.product(a, m),
            Containment::Bi => s.chain(&[a, m, a]),
            Containment::Quasi => s.product(a, m).intersection(s.product(m, a)),
            Containment::Interior => s.chain(&[m, a, m]),
            Containment::LeftBiQuasi => s.product(m, a).intersection(s.chain(&[a, m, a])),
            Containment::RightBiQuasi => s.product(a, m).intersection(s.chain(&[a, m, a])),
            Containment::BiInterior => s.chain(&[m, a, m]).intersection(s.chain(&[a, m, a])),
            Containment::LeftQuasiInterior => s.chain(&[m, a, m, a]),
            Containment::RightQuasiInterior => s.chain(&[a, m, a, m]),
            Containment::BiQuasiInterior => s.chain(&[a, m, a, m, a]),
        }
    }

    pub fn expr(self) -> &'static str {
        match self {
            Containment::Closed => "AΓA",
            Containment::Left => "MΓA",
            Containment::Right => "AΓM",
            Containment::Bi => "AΓMΓA",
            Containment::Quasi => "AΓM∩MΓA",
            Containment::Interior => "MΓAΓM",
            Containment::LeftBiQuasi => "MΓA∩AΓMΓA",
            Containment::RightBiQuasi => "AΓM∩AΓMΓA",
            Containment::BiInterior => "MΓAΓM∩AΓMΓA",
            Containment::LeftQuasiInterior => "MΓAΓMΓA",
            Containment::RightQuasiInterior => "AΓMΓAΓM",
            Containment::BiQuasiInterior => "AΓMΓAΓMΓA",
        }
    }

    /// First element of `lhs(A) \ A`, if the containment fails.
    pub fn violation(self, s: &GammaSemigroup, a: Mask) -> Option<usize> {
        self.lhs(s, a).difference(a).first()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdealKind {
    SubGammaSemigroup,
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    BiIdeal,
    QuasiIdeal,
    InteriorIdeal,
    LeftBiQuasi,
    RightBiQuasi,
    BiQuasi,
    BiInterior,
    LeftQuasiInterior,
    RightQuasiInterior,
    QuasiInterior,
    BiQuasiInterior,
}

impl IdealKind {
    pub const ALL: [IdealKind; 15] = [
        IdealKind::SubGammaSemigroup,
        IdealKind::LeftIdeal,
        IdealKind::RightIdeal,
        IdealKind::TwoSidedIdeal,
        IdealKind::BiIdeal,
        IdealKind::QuasiIdeal,
        IdealKind::InteriorIdeal,
        IdealKind::LeftBiQuasi,
        IdealKind::RightBiQuasi,
        IdealKind::BiQuasi,
        IdealKind::BiInterior,
        IdealKind::LeftQuasiInterior,
        IdealKind::RightQuasiInterior,
        IdealKind::QuasiInterior,
        IdealKind::BiQuasiInterior,
    ];

    /// Stable identifier used in reports.
    pub fn key(self) -> &'static str {
        match self {
            IdealKind::SubGammaSemigroup => "sub_gamma_semigroup",
            IdealKind::LeftIdeal => "left_ideal",
            IdealKind::RightIdeal => "right_ideal",
            IdealKind::TwoSidedIdeal => "ideal",
            IdealKind::BiIdeal => "bi_ideal",
            IdealKind::QuasiIdeal => "quasi_ideal",
            IdealKind::InteriorIdeal => "interior_ideal",
            IdealKind::LeftBiQuasi => "left_bi_quasi_ideal",
            IdealKind::RightBiQuasi => "right_bi_quasi_ideal",
            IdealKind::BiQuasi => "bi_quasi_ideal",
            IdealKind::BiInterior => "bi_interior_ideal",
            IdealKind::LeftQuasiInterior => "left_quasi_interior_ideal",
            IdealKind::RightQuasiInterior => "right_quasi_interior_ideal",
            IdealKind::QuasiInterior => "quasi_interior_ideal",
            IdealKind::BiQuasiInterior => "bi_quasi_interior_ideal",
        }
    }

    pub fn from_key(key: &str) -> Option<IdealKind> {
        IdealKind::ALL.into_iter().find(|k| k.key() == key)
    }

    /// Whether the definition conjoins "is a sub-Γ-semigroup".
    pub fn requires_closure(self) -> bool {
        !matches!(
            self,
            IdealKind::SubGammaSemigroup
                | IdealKind::LeftIdeal
                | IdealKind::RightIdeal
                | IdealKind::TwoSidedIdeal
        )
    }

    /// Defining containments other than the sub-Γ-semigroup conjunct.
    pub fn containments(self) -> &'static [Containment] {
        use Containment as C;
        match self {
            IdealKind::SubGammaSemigroup => &[C::Closed],
            IdealKind::LeftIdeal => &[C::Left],
            IdealKind::RightIdeal => &[C::Right],
            IdealKind::TwoSidedIdeal => &[C::Left, C::Right],
            IdealKind::BiIdeal => &[C::Bi],
            IdealKind::QuasiIdeal => &[C::Quasi],
            IdealKind::InteriorIdeal => &[C::Interior],
            IdealKind::LeftBiQuasi => &[C::LeftBiQuasi],
            IdealKind::RightBiQuasi => &[C::RightBiQuasi],
            IdealKind::BiQuasi => &[C::LeftBiQuasi, C::RightBiQuasi],
            IdealKind::BiInterior => &[C::BiInterior],
            IdealKind::LeftQuasiInterior => &[C::LeftQuasiInterior],
            IdealKind::RightQuasiInterior => &[C::RightQuasiInterior],
            IdealKind::QuasiInterior => &[C::LeftQuasiInterior, C::RightQuasiInterior],
            IdealKind::BiQuasiInterior => &[C::BiQuasiInterior],
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// An element of a containment's left side that lies outside the subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealWitness {
    pub clause: Containment,
    pub element: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KindVerdict {
    pub holds: bool,
    /// Verdict of the containments alone, ignoring the sub-Γ-semigroup
    /// conjunct.
    pub bare_holds: bool,
    pub witness: Option<IdealWitness>,
}

/// Evaluates one kind on a raw non-empty mask. The sub-Γ-semigroup conjunct
/// is checked first, so its witness takes precedence.
pub fn kind_verdict(s: &GammaSemigroup, a: Mask, kind: IdealKind) -> KindVerdict {
    let bare = kind
        .containments()
        .iter()
        .find_map(|&c| c.violation(s, a).map(|e| IdealWitness { clause: c, element: e }));
    let closure = if kind.requires_closure() {
        Containment::Closed
            .violation(s, a)
            .map(|e| IdealWitness {
                clause: Containment::Closed,
                element: e,
            })
    } else {
        None
    };
    KindVerdict {
        holds: bare.is_none() && closure.is_none(),
        bare_holds: bare.is_none(),
        witness: closure.or(bare),
    }
}

/// Fast predicate: non-empty and every defining containment holds.
pub fn is_kind(s: &GammaSemigroup, a: Mask, kind: IdealKind) -> bool {
    !a.is_empty() && kind_verdict(s, a, kind).holds
}

fn check_owned(s: &GammaSemigroup, a: &ElementSet) -> Result<()> {
    if !same_carrier(s.carrier(), a.carrier()) {
        return Err(Error::StructureMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(())
}

pub fn is_ideal_of_kind(s: &GammaSemigroup, a: &ElementSet, kind: IdealKind) -> Result<KindVerdict> {
    check_owned(s, a)?;
    Ok(kind_verdict(s, a.mask(), kind))
}

/// `x α y ∈ A` with `x ∉ A` and `y ∉ A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeWitness {
    pub x: usize,
    pub gamma: usize,
    pub y: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeVerdict {
    pub holds: bool,
    pub witness: Option<PrimeWitness>,
}

/// Primality on a raw mask; the witness is the first `(x, α, y)` in
/// canonical order.
pub fn prime_verdict(s: &GammaSemigroup, a: Mask) -> PrimeVerdict {
    let outside = a.complement(s.order());
    for x in outside.iter() {
        for g in 0..s.gamma_count() {
            for y in outside.iter() {
                if a.contains(s.op(x, g, y)) {
                    return PrimeVerdict {
                        holds: false,
                        witness: Some(PrimeWitness { x, gamma: g, y }),
                    };
                }
            }
        }
    }
    PrimeVerdict {
        holds: true,
        witness: None,
    }
}

pub fn is_prime(s: &GammaSemigroup, a: Mask) -> bool {
    prime_verdict(s, a).holds
}

pub fn is_prime_for(s: &GammaSemigroup, a: &ElementSet) -> Result<PrimeVerdict> {
    check_owned(s, a)?;
    Ok(prime_verdict(s, a.mask()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub subset: ElementSet,
    /// One entry per kind, in `IdealKind::ALL` order.
    pub verdicts: Vec<(IdealKind, KindVerdict)>,
    pub prime: PrimeVerdict,
}

impl ClassificationReport {
    pub fn verdict(&self, kind: IdealKind) -> KindVerdict {
        self.verdicts
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, v)| *v)
            .expect("every kind is classified")
    }

    pub fn holds(&self, kind: IdealKind) -> bool {
        self.verdict(kind).holds
    }

    /// "prime K-ideal" is the kind conjoined with the shared primality test.
    pub fn prime_kind(&self, kind: IdealKind) -> bool {
        self.holds(kind) && self.prime.holds
    }
}

pub fn classify_subset(s: &GammaSemigroup, a: &ElementSet) -> Result<ClassificationReport> {
    check_owned(s, a)?;
    let verdicts = IdealKind::ALL
        .into_iter()
        .map(|k| (k, kind_verdict(s, a.mask(), k)))
        .collect();
    Ok(ClassificationReport {
        subset: a.clone(),
        verdicts,
        prime: prime_verdict(s, a.mask()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Carrier, RawTables};
    use std::sync::Arc;

    fn example3() -> GammaSemigroup {
        let c = Arc::new(Carrier::new(["a", "b", "c"]).unwrap());
        let rows = [[0, 1, 2], [1, 1, 1], [2, 1, 1]];
        GammaSemigroup::new(RawTables::from_fn(c, vec!["alpha".into()], |a, _, b| rows[a][b]).unwrap())
            .unwrap()
    }

    #[test]
    fn full_carrier_satisfies_everything() {
        let s = example3();
        let full = ElementSet::full(Arc::clone(s.carrier()));
        let r = classify_subset(&s, &full).unwrap();
        assert!(IdealKind::ALL.iter().all(|&k| r.holds(k)));
        assert!(r.prime.holds);
    }

    #[test]
    fn b_is_a_two_sided_ideal_but_not_prime() {
        let s = example3();
        let b = s.subset(["b"]).unwrap();
        let r = classify_subset(&s, &b).unwrap();
        assert!(r.holds(IdealKind::TwoSidedIdeal));
        assert!(!r.prime.holds);
        assert_eq!(r.prime.witness, Some(PrimeWitness { x: 2, gamma: 0, y: 2 }));
    }

    #[test]
    fn a_is_not_a_left_ideal() {
        let s = example3();
        let a = s.subset(["a"]).unwrap();
        let v = is_ideal_of_kind(&s, &a, IdealKind::LeftIdeal).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(IdealWitness {
                clause: Containment::Left,
                element: 1
            })
        );
    }

    #[test]
    fn bc_is_prime() {
        let s = example3();
        let bc = s.subset(["b", "c"]).unwrap();
        assert!(is_prime_for(&s, &bc).unwrap().holds);
    }

    #[test]
    fn empty_subset_is_a_domain_error() {
        let s = example3();
        let e = ElementSet::empty(Arc::clone(s.carrier()));
        assert_eq!(classify_subset(&s, &e), Err(Error::EmptySubset));
        assert_eq!(is_prime_for(&s, &e), Err(Error::EmptySubset));
    }

    #[test]
    fn singleton_structure_classifies_all_true() {
        let c = Arc::new(Carrier::new(["e"]).unwrap());
        let s = GammaSemigroup::new(RawTables::from_fn(c, vec!["g".into()], |_, _, _| 0).unwrap()).unwrap();
        let r = classify_subset(&s, &ElementSet::full(Arc::clone(s.carrier()))).unwrap();
        assert!(IdealKind::ALL.iter().all(|&k| r.prime_kind(k)));
    }

    #[test]
    fn keys_round_trip() {
        for k in IdealKind::ALL {
            assert_eq!(IdealKind::from_key(k.key()), Some(k));
        }
    }

    // Constant operation x γ y = q: {p} is not closed.
    #[test]
    fn closure_witness_takes_precedence() {
        let c = Arc::new(Carrier::new(["p", "q"]).unwrap());
        let s = GammaSemigroup::new(RawTables::from_fn(c, vec!["g".into()], |_, _, _| 1).unwrap()).unwrap();
        let p = s.subset(["p"]).unwrap();
        let v = is_ideal_of_kind(&s, &p, IdealKind::QuasiIdeal).unwrap();
        assert!(!v.holds);
        assert!(!v.bare_holds);
        assert_eq!(v.witness.unwrap().clause, Containment::Closed);
    }

    // u γ u = v, u γ v = v, v γ u = u, v γ v = v: {u} is not closed, yet
    // uΓMΓu = {v}Γu = {u}.
    #[test]
    fn bare_verdict_can_hold_without_closure() {
        let c = Arc::new(Carrier::new(["u", "v"]).unwrap());
        let rows = [[1, 1], [0, 1]];
        let s = GammaSemigroup::new_unchecked(
            RawTables::from_fn(c, vec!["g".into()], |a, _, b| rows[a][b]).unwrap(),
        );
        let v = kind_verdict(&s, Mask::singleton(0), IdealKind::BiIdeal);
        assert!(!v.holds);
        assert!(v.bare_holds);
        assert_eq!(v.witness.unwrap().clause, Containment::Closed);
    }
}
