//! The rough quotient `M₁/T`: distinct images of a set-valued map, the
//! operation induced through representatives, and quotient approximations.

use std::sync::Arc;

use crate::algebra::{same_carrier, Carrier, ElementSet, GammaSemigroup, RawTables};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::rough::{SetValuedMap, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    pub image: Mask,
    /// Source elements mapped to `image`.
    pub preimages: Mask,
}

/// `T(x) = T(x′)` but the products with `y` land in different classes.
/// For `Side::Right` the products are `xγy`, `x′γy`; for `Side::Left` they
/// are `yγx`, `yγx′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WellDefinednessWitness {
    pub x: usize,
    pub x_prime: usize,
    pub y: usize,
    pub gamma: usize,
    pub side: Side,
}

#[derive(Clone, Debug)]
pub struct QuotientStructure {
    source: Arc<Carrier>,
    target: Arc<Carrier>,
    classes: Vec<QuotientClass>,
    class_of: Vec<usize>,
    carrier: Arc<Carrier>,
    induced: Option<GammaSemigroup>,
    witness: Option<WellDefinednessWitness>,
}

/// Collects the distinct images (ordered by least preimage) and attempts the
/// induced operation `[T(x)] γ [T(y)] := [T(xγy)]`.
pub fn build_quotient(s1: &GammaSemigroup, t: &SetValuedMap) -> Result<QuotientStructure> {
    if !same_carrier(s1.carrier(), t.source()) {
        return Err(Error::StructureMismatch);
    }
    let n = s1.order();
    let mut classes: Vec<QuotientClass> = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for x in 0..n {
        let img = t.image(x);
        let k = match classes.iter().position(|c| c.image == img) {
            Some(k) => k,
            None => {
                classes.push(QuotientClass {
                    image: img,
                    preimages: Mask::EMPTY,
                });
                classes.len() - 1
            }
        };
        classes[k].preimages = classes[k].preimages.with(x);
        class_of.push(k);
    }
    let names: Vec<String> = classes.iter().map(|c| t.target().render(c.image)).collect();
    let carrier = Arc::new(Carrier::new(names).expect("distinct images render to distinct names"));

    let witness = find_ill_definedness(s1, &class_of);
    let induced = if witness.is_none() {
        let reps: Vec<usize> = classes.iter().map(|c| c.preimages.first().unwrap()).collect();
        let tables = RawTables::from_fn(Arc::clone(&carrier), s1.gammas().to_vec(), |i, g, j| {
            class_of[s1.op(reps[i], g, reps[j])]
        })
        .expect("quotient is no larger than its source");
        Some(GammaSemigroup::new_unchecked(tables))
    } else {
        None
    };
    Ok(QuotientStructure {
        source: Arc::clone(t.source()),
        target: Arc::clone(t.target()),
        classes,
        class_of,
        carrier,
        induced,
        witness,
    })
}

fn find_ill_definedness(s1: &GammaSemigroup, class_of: &[usize]) -> Option<WellDefinednessWitness> {
    let n = s1.order();
    for x in 0..n {
        for x_prime in x + 1..n {
            if class_of[x] != class_of[x_prime] {
                continue;
            }
            for y in 0..n {
                for g in 0..s1.gamma_count() {
                    if class_of[s1.op(x, g, y)] != class_of[s1.op(x_prime, g, y)] {
                        return Some(WellDefinednessWitness {
                            x,
                            x_prime,
                            y,
                            gamma: g,
                            side: Side::Right,
                        });
                    }
                    if class_of[s1.op(y, g, x)] != class_of[s1.op(y, g, x_prime)] {
                        return Some(WellDefinednessWitness {
                            x,
                            x_prime,
                            y,
                            gamma: g,
                            side: Side::Left,
                        });
                    }
                }
            }
        }
    }
    None
}

impl QuotientStructure {
    pub fn classes(&self) -> &[QuotientClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of a source element.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Carrier whose elements are the classes, named by their image literal.
    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn source(&self) -> &Arc<Carrier> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Carrier> {
        &self.target
    }

    pub fn is_well_defined(&self) -> bool {
        self.witness.is_none()
    }

    pub fn failure_witness(&self) -> Option<WellDefinednessWitness> {
        self.witness
    }

    /// The induced structure; present iff well-defined.
    pub fn induced(&self) -> Option<&GammaSemigroup> {
        self.induced.as_ref()
    }

    /// Classes whose image lies inside `h`.
    pub fn lower(&self, h: Mask) -> Mask {
        self.select(|img| img.is_subset(h))
    }

    /// Classes whose image meets `h`.
    pub fn upper(&self, h: Mask) -> Mask {
        self.select(|img| img.meets(h))
    }

    fn select(&self, keep: impl Fn(Mask) -> bool) -> Mask {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| keep(c.image))
            .fold(Mask::EMPTY, |m, (k, _)| m.with(k))
    }

    /// `{ class(x) : x ∈ xs }`.
    pub fn class_image(&self, xs: Mask) -> Mask {
        xs.iter().fold(Mask::EMPTY, |m, x| m.with(self.class_of[x]))
    }
}

fn check_target(q: &QuotientStructure, h: &ElementSet) -> Result<()> {
    if same_carrier(q.target(), h.carrier()) {
        Ok(())
    } else {
        Err(Error::StructureMismatch)
    }
}

pub fn quotient_lower(q: &QuotientStructure, h: &ElementSet) -> Result<ElementSet> {
    check_target(q, h)?;
    ElementSet::new(Arc::clone(q.carrier()), q.lower(h.mask()))
}

pub fn quotient_upper(q: &QuotientStructure, h: &ElementSet) -> Result<ElementSet> {
    check_target(q, h)?;
    ElementSet::new(Arc::clone(q.carrier()), q.upper(h.mask()))
}
