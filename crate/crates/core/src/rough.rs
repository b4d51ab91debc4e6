//! Lower and upper approximations: the set-valued (T-rough) operators and the
//! classical partition-based ones.

use std::sync::Arc;

use crate::algebra::{same_carrier, Carrier, ElementSet, GammaSemigroup};
use crate::error::{Error, Result};
use crate::mask::Mask;

/// Total map from a source carrier to non-empty subsets of a target carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedMap {
    source: Arc<Carrier>,
    target: Arc<Carrier>,
    images: Vec<Mask>,
}

impl SetValuedMap {
    pub fn new(source: Arc<Carrier>, target: Arc<Carrier>, images: Vec<Mask>) -> Result<SetValuedMap> {
        if images.len() != source.len() {
            return Err(Error::MapArity {
                expected: source.len(),
                found: images.len(),
            });
        }
        for (x, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::EmptyImage(source.name(x).to_string()));
            }
            if !img.fits(target.len()) {
                return Err(Error::MaskOutOfRange);
            }
        }
        Ok(SetValuedMap {
            source,
            target,
            images,
        })
    }

    /// Builds a map from `(source element, image names)` pairs given in any
    /// order; every source element must appear exactly once.
    pub fn from_names<S: AsRef<str>>(
        source: Arc<Carrier>,
        target: Arc<Carrier>,
        entries: &[(&str, &[S])],
    ) -> Result<SetValuedMap> {
        let mut images = vec![Mask::EMPTY; source.len()];
        for (x, img) in entries {
            let i = source.index_of(x)?;
            if !images[i].is_empty() {
                return Err(Error::DuplicateName(x.to_string()));
            }
            images[i] = target.mask_of(img.iter())?;
            if images[i].is_empty() {
                return Err(Error::EmptyImage(x.to_string()));
            }
        }
        SetValuedMap::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<Carrier> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Carrier> {
        &self.target
    }

    pub fn images(&self) -> &[Mask] {
        &self.images
    }

    #[inline]
    pub fn image(&self, x: usize) -> Mask {
        self.images[x]
    }

    /// `{x : T(x) ⊆ B}` on raw masks.
    pub fn lower(&self, b: Mask) -> Mask {
        self.select(|img| img.is_subset(b))
    }

    /// `{x : T(x) ∩ B ≠ ∅}` on raw masks.
    pub fn upper(&self, b: Mask) -> Mask {
        self.select(|img| img.meets(b))
    }

    fn select(&self, keep: impl Fn(Mask) -> bool) -> Mask {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &img)| keep(img))
            .fold(Mask::EMPTY, |m, (x, _)| m.with(x))
    }

    fn check_target(&self, b: &ElementSet) -> Result<()> {
        if same_carrier(b.carrier(), &self.target) {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    pub fn lower_approx(&self, b: &ElementSet) -> Result<ElementSet> {
        self.check_target(b)?;
        ElementSet::new(Arc::clone(&self.source), self.lower(b.mask()))
    }

    pub fn upper_approx(&self, b: &ElementSet) -> Result<ElementSet> {
        self.check_target(b)?;
        ElementSet::new(Arc::clone(&self.source), self.upper(b.mask()))
    }

    pub fn approximate(&self, b: &ElementSet) -> Result<ApproximationPair> {
        let lower = self.lower_approx(b)?;
        let upper = self.upper_approx(b)?;
        let definable = lower.mask() == upper.mask();
        Ok(ApproximationPair {
            lower,
            upper,
            definable,
        })
    }

    /// `a -> {..}; b -> {..}` rendering used in reports.
    pub fn render(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(x, &img)| format!("{}->{}", self.source.name(x), self.target.render(img)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationPair {
    pub lower: ElementSet,
    pub upper: ElementSet,
    pub definable: bool,
}

/// A partition of a carrier into non-empty, pairwise disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    carrier: Arc<Carrier>,
    blocks: Vec<Mask>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(carrier: Arc<Carrier>, blocks: Vec<Mask>) -> Result<Partition> {
        let mut covered = Mask::EMPTY;
        let mut block_of = vec![usize::MAX; carrier.len()];
        for (i, &b) in blocks.iter().enumerate() {
            if b.is_empty() || b.meets(covered) || !b.fits(carrier.len()) {
                return Err(Error::NotAPartition);
            }
            covered = covered.union(b);
            for x in b.iter() {
                block_of[x] = i;
            }
        }
        if covered != carrier.full() {
            return Err(Error::NotAPartition);
        }
        Ok(Partition {
            carrier,
            blocks,
            block_of,
        })
    }

    pub fn discrete(carrier: Arc<Carrier>) -> Partition {
        let blocks = (0..carrier.len()).map(Mask::singleton).collect();
        Partition::new(carrier, blocks).expect("singletons partition the carrier")
    }

    pub fn single_block(carrier: Arc<Carrier>) -> Partition {
        let blocks = vec![carrier.full()];
        Partition::new(carrier, blocks).expect("the full set partitions the carrier")
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn blocks(&self) -> &[Mask] {
        &self.blocks
    }

    /// `[x]ρ`
    pub fn class_of(&self, x: usize) -> Mask {
        self.blocks[self.block_of[x]]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Union of the blocks meeting `m`.
    pub fn saturate(&self, m: Mask) -> Mask {
        m.iter().fold(Mask::EMPTY, |acc, x| acc.union(self.class_of(x)))
    }

    /// The set-valued map `x ↦ [x]ρ` on the carrier.
    pub fn as_map(&self) -> SetValuedMap {
        let images = (0..self.carrier.len()).map(|x| self.class_of(x)).collect();
        SetValuedMap::new(Arc::clone(&self.carrier), Arc::clone(&self.carrier), images)
            .expect("blocks are non-empty")
    }

    fn check(&self, a: &ElementSet) -> Result<()> {
        if same_carrier(a.carrier(), &self.carrier) {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    /// `{x : [x]ρ ⊆ A}`
    pub fn pawlak_lower(&self, a: &ElementSet) -> Result<ElementSet> {
        self.check(a)?;
        let m = (0..self.carrier.len())
            .filter(|&x| self.class_of(x).is_subset(a.mask()))
            .fold(Mask::EMPTY, Mask::with);
        Ok(a.with_mask(m))
    }

    /// `{x : [x]ρ ∩ A ≠ ∅}`
    pub fn pawlak_upper(&self, a: &ElementSet) -> Result<ElementSet> {
        self.check(a)?;
        let m = (0..self.carrier.len())
            .filter(|&x| self.class_of(x).meets(a.mask()))
            .fold(Mask::EMPTY, Mask::with);
        Ok(a.with_mask(m))
    }
}

/// Which translation broke compatibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(a α y, b α y)`
    Right,
    /// `(y α a, y α b)`
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub a: usize,
    pub b: usize,
    pub y: usize,
    pub gamma: usize,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub holds: bool,
    pub witness: Option<CongruenceWitness>,
}

fn check_partition(s: &GammaSemigroup, rho: &Partition) -> Result<()> {
    if same_carrier(s.carrier(), rho.carrier()) {
        Ok(())
    } else {
        Err(Error::StructureMismatch)
    }
}

/// Compatibility of `ρ` with every left and right translation. The witness is
/// the first failure in `(a, b, y, γ, side)` order.
pub fn is_congruence(s: &GammaSemigroup, rho: &Partition) -> Result<CongruenceVerdict> {
    check_partition(s, rho)?;
    let n = s.order();
    for a in 0..n {
        for b in 0..n {
            if a == b || !rho.same_block(a, b) {
                continue;
            }
            for y in 0..n {
                for g in 0..s.gamma_count() {
                    let side = if !rho.same_block(s.op(a, g, y), s.op(b, g, y)) {
                        Some(Side::Right)
                    } else if !rho.same_block(s.op(y, g, a), s.op(y, g, b)) {
                        Some(Side::Left)
                    } else {
                        None
                    };
                    if let Some(side) = side {
                        return Ok(CongruenceVerdict {
                            holds: false,
                            witness: Some(CongruenceWitness {
                                a,
                                b,
                                y,
                                gamma: g,
                                side,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(CongruenceVerdict {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessWitness {
    pub a: usize,
    pub b: usize,
    /// `[a]ρ Γ [b]ρ`
    pub product_of_classes: Mask,
    /// `[a Γ b]ρ`
    pub class_of_product: Mask,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessVerdict {
    pub holds: bool,
    pub witness: Option<CompletenessWitness>,
}

/// Checks `[a]ρ Γ [b]ρ = [aΓb]ρ` for all `a, b`, where `[aΓb]ρ` is the union
/// of the classes of `{a γ b : γ ∈ Γ}`.
pub fn is_complete_congruence(s: &GammaSemigroup, rho: &Partition) -> Result<CompletenessVerdict> {
    let cong = is_congruence(s, rho)?;
    if let Some(w) = cong.witness {
        return Err(Error::NotCongruence(w));
    }
    let n = s.order();
    for a in 0..n {
        for b in 0..n {
            let product_of_classes = s.product(rho.class_of(a), rho.class_of(b));
            let class_of_product = rho.saturate(s.pair_product(a, b));
            if product_of_classes != class_of_product {
                return Ok(CompletenessVerdict {
                    holds: false,
                    witness: Some(CompletenessWitness {
                        a,
                        b,
                        product_of_classes,
                        class_of_product,
                    }),
                });
            }
        }
    }
    Ok(CompletenessVerdict {
        holds: true,
        witness: None,
    })
}
