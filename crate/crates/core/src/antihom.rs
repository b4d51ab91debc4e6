//! Set-valued anti-homomorphisms `T(aαb) ⊇ T(b)αT(a)` and their strong
//! (equality) variant, plus enumeration of candidate maps.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{same_carrier, ElementSet, GammaSemigroup};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::rough::SetValuedMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AntiHomLevel {
    None,
    Plain,
    Strong,
}

impl AntiHomLevel {
    pub fn key(self) -> &'static str {
        match self {
            AntiHomLevel::None => "none",
            AntiHomLevel::Plain => "plain",
            AntiHomLevel::Strong => "strong",
        }
    }

    pub fn from_key(s: &str) -> Option<AntiHomLevel> {
        match s {
            "none" => Some(AntiHomLevel::None),
            "plain" => Some(AntiHomLevel::Plain),
            "strong" => Some(AntiHomLevel::Strong),
            _ => None,
        }
    }
}

impl fmt::Display for AntiHomLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// `element ∈ T(b)αT(a) \ T(aαb)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlainWitness {
    pub a: usize,
    pub gamma: usize,
    pub b: usize,
    pub element: usize,
}

/// `T(aαb) ≠ T(b)αT(a)` while the inclusion holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrongWitness {
    pub a: usize,
    pub gamma: usize,
    pub b: usize,
    pub image: Mask,
    pub product: Mask,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AntiHomVerdict {
    pub level: AntiHomLevel,
    /// Present iff `level == None`.
    pub plain_witness: Option<PlainWitness>,
    /// Present iff `level == Plain`.
    pub strong_witness: Option<StrongWitness>,
}

/// Checks that `t` runs from `s1` to `s2` and both share one gamma list.
pub fn check_compatible(s1: &GammaSemigroup, s2: &GammaSemigroup, t: &SetValuedMap) -> Result<()> {
    if !same_carrier(s1.carrier(), t.source()) || !same_carrier(s2.carrier(), t.target()) {
        return Err(Error::StructureMismatch);
    }
    if s1.gammas() != s2.gammas() {
        return Err(Error::GammaMismatch);
    }
    Ok(())
}

/// `T(b) γ T(a)` on raw indices; the operands are reversed.
#[inline]
pub fn image_product_raw(s2: &GammaSemigroup, t: &SetValuedMap, a: usize, g: usize, b: usize) -> Mask {
    let mut out = Mask::EMPTY;
    for v in t.image(b).iter() {
        for u in t.image(a).iter() {
            out = out.with(s2.op(v, g, u));
        }
    }
    out
}

/// `T(b) γ T(a)` by names, as a subset of the target.
pub fn image_product(
    s1: &GammaSemigroup,
    s2: &GammaSemigroup,
    t: &SetValuedMap,
    a: &str,
    gamma: &str,
    b: &str,
) -> Result<ElementSet> {
    check_compatible(s1, s2, t)?;
    let ai = s1.carrier().index_of(a)?;
    let g = s2.gamma_index(gamma)?;
    let bi = s1.carrier().index_of(b)?;
    ElementSet::new(Arc::clone(s2.carrier()), image_product_raw(s2, t, ai, g, bi))
}

/// Full verdict with first witnesses in `(a, α, b)` canonical order.
pub fn check_anti_hom(s1: &GammaSemigroup, s2: &GammaSemigroup, t: &SetValuedMap) -> Result<AntiHomVerdict> {
    check_compatible(s1, s2, t)?;
    let n = s1.order();
    let mut strong_witness = None;
    for a in 0..n {
        for g in 0..s1.gamma_count() {
            for b in 0..n {
                let image = t.image(s1.op(a, g, b));
                let product = image_product_raw(s2, t, a, g, b);
                if let Some(element) = product.difference(image).first() {
                    return Ok(AntiHomVerdict {
                        level: AntiHomLevel::None,
                        plain_witness: Some(PlainWitness { a, gamma: g, b, element }),
                        strong_witness: None,
                    });
                }
                if strong_witness.is_none() && product != image {
                    strong_witness = Some(StrongWitness {
                        a,
                        gamma: g,
                        b,
                        image,
                        product,
                    });
                }
            }
        }
    }
    Ok(AntiHomVerdict {
        level: if strong_witness.is_some() {
            AntiHomLevel::Plain
        } else {
            AntiHomLevel::Strong
        },
        plain_witness: None,
        strong_witness,
    })
}

/// Level only; assumes `check_compatible` already passed.
pub fn level(s1: &GammaSemigroup, s2: &GammaSemigroup, t: &SetValuedMap) -> AntiHomLevel {
    let n = s1.order();
    let mut strong = true;
    for a in 0..n {
        for g in 0..s1.gamma_count() {
            for b in 0..n {
                let image = t.image(s1.op(a, g, b));
                let product = image_product_raw(s2, t, a, g, b);
                if !product.is_subset(image) {
                    return AntiHomLevel::None;
                }
                strong &= product == image;
            }
        }
    }
    if strong {
        AntiHomLevel::Strong
    } else {
        AntiHomLevel::Plain
    }
}

/// `(2^n2 − 1)^n1`, or `None` when it does not fit in `u128`.
pub fn map_space_size(n1: usize, n2: usize) -> Option<u128> {
    let per = (1u128 << n2) - 1;
    per.checked_pow(n1 as u32)
}

/// Stream of maps from `s1` to `s2` meeting a level filter.
///
/// Exhaustive streams visit images ordered by membership-word value with the
/// last source position varying fastest. Sampled streams draw `budget` maps
/// with independently uniform images from a seeded generator.
pub struct MapStream<'a> {
    s1: &'a GammaSemigroup,
    s2: &'a GammaSemigroup,
    filter: AntiHomLevel,
    exhaustive: bool,
    seed: u64,
    space: Option<u128>,
    draws: u128,
    next_index: u128,
    digits: Vec<u128>,
    rng: ChaCha8Rng,
    examined: u128,
}

pub fn enumerate_maps<'a>(
    s1: &'a GammaSemigroup,
    s2: &'a GammaSemigroup,
    filter: AntiHomLevel,
    budget: u64,
    seed: u64,
) -> Result<MapStream<'a>> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if s1.gammas() != s2.gammas() {
        return Err(Error::GammaMismatch);
    }
    let space = map_space_size(s1.order(), s2.order());
    let exhaustive = matches!(space, Some(k) if k <= budget as u128);
    Ok(MapStream {
        s1,
        s2,
        filter,
        exhaustive,
        seed,
        space,
        draws: if exhaustive { space.unwrap_or(0) } else { budget as u128 },
        next_index: 0,
        digits: vec![1; s1.order()],
        rng: ChaCha8Rng::seed_from_u64(seed),
        examined: 0,
    })
}

impl MapStream<'_> {
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Size of the full map space, when representable.
    pub fn space(&self) -> Option<u128> {
        self.space
    }

    /// Maps generated so far, before filtering.
    pub fn examined(&self) -> u128 {
        self.examined
    }

    fn draw(&mut self) -> Option<Vec<Mask>> {
        if self.next_index >= self.draws {
            return None;
        }
        let top = (1u128 << self.s2.order()) - 1;
        let images = if self.exhaustive {
            if self.next_index > 0 {
                for d in self.digits.iter_mut().rev() {
                    if *d < top {
                        *d += 1;
                        break;
                    }
                    *d = 1;
                }
            }
            self.digits.iter().map(|&d| Mask(d as u64)).collect()
        } else {
            let top = top as u64;
            (0..self.s1.order())
                .map(|_| Mask(self.rng.gen_range(1..=top)))
                .collect()
        };
        self.next_index += 1;
        self.examined += 1;
        Some(images)
    }
}

impl Iterator for MapStream<'_> {
    type Item = SetValuedMap;

    fn next(&mut self) -> Option<SetValuedMap> {
        loop {
            let images = self.draw()?;
            let t = SetValuedMap::new(Arc::clone(self.s1.carrier()), Arc::clone(self.s2.carrier()), images)
                .expect("generated images are non-empty and in range");
            if self.filter == AntiHomLevel::None || level(self.s1, self.s2, &t) >= self.filter {
                return Some(t);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Carrier, RawTables};

    fn structure(names: &[&str], rows: &[&[usize]]) -> GammaSemigroup {
        let c = Arc::new(Carrier::new(names.iter().copied()).unwrap());
        GammaSemigroup::new(RawTables::from_fn(c, vec!["alpha".into()], |a, _, b| rows[a][b]).unwrap()).unwrap()
    }

    fn example3() -> GammaSemigroup {
        structure(&["a", "b", "c"], &[&[0, 1, 2], &[1, 1, 1], &[2, 1, 1]])
    }

    fn example3_map(s: &GammaSemigroup) -> SetValuedMap {
        SetValuedMap::from_names(
            Arc::clone(s.carrier()),
            Arc::clone(s.carrier()),
            &[("a", &["b", "c"][..]), ("b", &["a", "b", "c"][..]), ("c", &["b"][..])],
        )
        .unwrap()
    }

    #[test]
    fn example3_image_products() {
        let s = example3();
        let t = example3_map(&s);
        let p = image_product(&s, &s, &t, "a", "alpha", "b").unwrap();
        assert_eq!(p.names(), vec!["b", "c"]);
        let p = image_product(&s, &s, &t, "c", "alpha", "c").unwrap();
        assert_eq!(p.names(), vec!["b"]);
    }

    #[test]
    fn example3_map_is_at_least_plain() {
        let s = example3();
        let t = example3_map(&s);
        let v = check_anti_hom(&s, &s, &t).unwrap();
        assert!(v.level >= AntiHomLevel::Plain);
        assert_eq!(v.level, level(&s, &s, &t));
    }

    #[test]
    fn constant_full_map_is_plain_or_better() {
        let s = example3();
        let t = SetValuedMap::new(Arc::clone(s.carrier()), Arc::clone(s.carrier()), vec![s.full(); 3]).unwrap();
        assert!(check_anti_hom(&s, &s, &t).unwrap().level >= AntiHomLevel::Plain);
    }

    #[test]
    fn example5_map_fails_at_one_alpha_one() {
        let m1 = structure(&["1", "2"], &[&[0, 0], &[0, 1]]);
        let m2 = example3();
        let t = SetValuedMap::from_names(
            Arc::clone(m1.carrier()),
            Arc::clone(m2.carrier()),
            &[("1", &["c"][..]), ("2", &["a"][..])],
        )
        .unwrap();
        let v = check_anti_hom(&m1, &m2, &t).unwrap();
        assert_eq!(v.level, AntiHomLevel::None);
        assert_eq!(
            v.plain_witness,
            Some(PlainWitness {
                a: 0,
                gamma: 0,
                b: 0,
                element: 1
            })
        );
    }

    #[test]
    fn enumeration_counts() {
        let one = structure(&["e"], &[&[0]]);
        let two = structure(&["a", "b"], &[&[0, 0], &[0, 0]]);
        let maps: Vec<_> = enumerate_maps(&one, &two, AntiHomLevel::None, 100, 0).unwrap().collect();
        assert_eq!(maps.len(), 3);
        assert_eq!(maps[0].image(0), Mask(1));
        assert_eq!(maps[2].image(0), Mask(3));
        let maps: Vec<_> = enumerate_maps(&one, &one, AntiHomLevel::Strong, 100, 0).unwrap().collect();
        assert_eq!(maps.len(), 1);
    }

    #[test]
    fn exhaustive_order_varies_last_position_fastest() {
        let s = example3();
        let maps: Vec<_> = enumerate_maps(&s, &s, AntiHomLevel::None, 1000, 0).unwrap().collect();
        assert_eq!(maps.len(), 343);
        assert_eq!(maps[0].images(), &[Mask(1), Mask(1), Mask(1)]);
        assert_eq!(maps[1].images(), &[Mask(1), Mask(1), Mask(2)]);
        assert_eq!(maps[7].images(), &[Mask(1), Mask(2), Mask(1)]);
        assert_eq!(maps[342].images(), &[Mask(7), Mask(7), Mask(7)]);
    }

    #[test]
    fn plain_stream_contains_example3_map() {
        let s = example3();
        let t = example3_map(&s);
        let mut stream = enumerate_maps(&s, &s, AntiHomLevel::Plain, 1000, 0).unwrap();
        assert!(stream.by_ref().any(|m| m == t));
        assert!(stream.is_exhaustive());
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = example3();
        let a: Vec<_> = enumerate_maps(&s, &s, AntiHomLevel::None, 10, 7).unwrap().collect();
        let b: Vec<_> = enumerate_maps(&s, &s, AntiHomLevel::None, 10, 7).unwrap().collect();
        assert_eq!(a.len(), 10);
        assert_eq!(a, b);
        assert!(!enumerate_maps(&s, &s, AntiHomLevel::None, 10, 7).unwrap().is_exhaustive());
    }

    #[test]
    fn zero_budget_is_rejected() {
        let s = example3();
        assert!(matches!(enumerate_maps(&s, &s, AntiHomLevel::None, 0, 0), Err(Error::ZeroBudget)));
    }

    #[test]
    fn mismatched_gammas_are_rejected() {
        let s = example3();
        let c = Arc::new(Carrier::new(["a", "b", "c"]).unwrap());
        let other = GammaSemigroup::new(RawTables::from_fn(c, vec!["beta".into()], |_, _, _| 1).unwrap()).unwrap();
        let t = example3_map(&s);
        let t = SetValuedMap::new(Arc::clone(s.carrier()), Arc::clone(other.carrier()), t.images().to_vec()).unwrap();
        assert_eq!(check_anti_hom(&s, &other, &t), Err(Error::GammaMismatch));
    }
}
