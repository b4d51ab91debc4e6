use std::sync::Arc;

use gamma_rough::algebra::{Carrier, ElementSet};
use gamma_rough::fixtures::{self, catalog, load};
use gamma_rough::mask::{subsets, Mask};
use gamma_rough::quotient::{build_quotient, quotient_lower, quotient_upper};
use gamma_rough::rough::{Partition, SetValuedMap};
use proptest::prelude::*;

fn carrier(prefix: &str, n: usize) -> Arc<Carrier> {
    Arc::new(Carrier::new((0..n).map(|i| format!("{prefix}{i}"))).unwrap())
}

fn arb_map(max_source: usize, max_target: usize) -> impl Strategy<Value = SetValuedMap> {
    (1..=max_source, 1..=max_target).prop_flat_map(|(n, k)| {
        proptest::collection::vec(1u64..(1 << k), n).prop_map(move |imgs| {
            SetValuedMap::new(carrier("x", n), carrier("y", k), imgs.into_iter().map(Mask).collect()).unwrap()
        })
    })
}

fn arb_partition(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, n)
}

proptest! {
    #[test]
    fn lower_is_inside_upper(t in arb_map(5, 5), b in any::<u64>()) {
        let b = Mask(b).intersection(Mask::full(t.target().len()));
        prop_assert!(t.lower(b).is_subset(t.upper(b)));
    }

    #[test]
    fn approximations_are_monotone(t in arb_map(5, 5), x in any::<u64>(), y in any::<u64>()) {
        let full = Mask::full(t.target().len());
        let x = Mask(x).intersection(full);
        let y = x.union(Mask(y).intersection(full));
        prop_assert!(t.lower(x).is_subset(t.lower(y)));
        prop_assert!(t.upper(x).is_subset(t.upper(y)));
    }

    #[test]
    fn pawlak_operators_are_the_class_map_operators(labels in arb_partition(5), a in any::<u64>()) {
        let n = labels.len();
        let mut blocks: Vec<Mask> = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match seen.iter().position(|&s| s == l) {
                Some(k) => blocks[k] = blocks[k].with(x),
                None => {
                    seen.push(l);
                    blocks.push(Mask::singleton(x));
                }
            }
        }
        let c = carrier("u", n);
        let rho = Partition::new(Arc::clone(&c), blocks).unwrap();
        let a = ElementSet::new(Arc::clone(&c), Mask(a).intersection(Mask::full(n))).unwrap();
        let lo = rho.pawlak_lower(&a).unwrap();
        let up = rho.pawlak_upper(&a).unwrap();
        prop_assert!(lo.mask().is_subset(a.mask()) && a.mask().is_subset(up.mask()));
        let t = rho.as_map();
        prop_assert_eq!(lo.mask(), t.lower(a.mask()));
        prop_assert_eq!(up.mask(), t.upper(a.mask()));
    }

    #[test]
    fn quotient_operators_factor_through_element_operators(k in 0usize..20, target in 1usize..=4, seed in any::<u64>()) {
        let (_, s1) = &catalog()[k];
        let n = s1.order();
        let top = (1u64 << target) - 1;
        let imgs: Vec<Mask> = (0..n).map(|i| Mask(1 + (seed.rotate_left(7 * i as u32) % top))).collect();
        let t = SetValuedMap::new(Arc::clone(s1.carrier()), carrier("y", target), imgs).unwrap();
        let q = build_quotient(s1, &t).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(q.class_of(x) == q.class_of(y), t.image(x) == t.image(y));
            }
        }
        for h in subsets(target, true) {
            let hs = ElementSet::new(Arc::clone(t.target()), h).unwrap();
            prop_assert_eq!(quotient_lower(&q, &hs).unwrap().mask(), q.class_image(t.lower(h)));
            prop_assert_eq!(quotient_upper(&q, &hs).unwrap().mask(), q.class_image(t.upper(h)));
        }
        if let Some(ind) = q.induced() {
            for x in 0..n {
                for y in 0..n {
                    for g in 0..s1.gamma_count() {
                        prop_assert_eq!(q.class_of(s1.op(x, g, y)), ind.op(q.class_of(x), g, q.class_of(y)));
                    }
                }
            }
        }
    }
}

#[test]
fn example1_values() {
    let sc = load(fixtures::EXAMPLE1);
    let t = &sc.map("T").unwrap().map;
    let y = t.target();
    let x = t.source();
    let b = ElementSet::from_names(Arc::clone(y), ["b"]).unwrap();
    // T(4) = {a,b,c} meets {b}.
    assert_eq!(t.upper_approx(&b).unwrap().names(), vec!["1", "3", "4"]);
    assert_eq!(t.lower_approx(&b).unwrap().names(), vec!["1", "3"]);
    let ac = ElementSet::from_names(Arc::clone(y), ["a", "c"]).unwrap();
    let pair = t.approximate(&ac).unwrap();
    assert_eq!(pair.lower.names(), vec!["2"]);
    assert_eq!(pair.upper.names(), vec!["2", "4"]);
    assert!(!pair.definable);
    let full = ElementSet::full(Arc::clone(y));
    assert_eq!(t.lower_approx(&full).unwrap().mask(), x.full());
}
