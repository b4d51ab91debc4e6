//! Scenario files shipped with the crate.

use crate::algebra::GammaSemigroup;
use crate::io::{parse_scenario, parse_scenario_with, Admission, Scenario};

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.grs");
pub const EXAMPLE2: &str = include_str!("../fixtures/example2.grs");
pub const EXAMPLE3: &str = include_str!("../fixtures/example3.grs");
pub const EXAMPLE4: &str = include_str!("../fixtures/example4.grs");
pub const EXAMPLE5: &str = include_str!("../fixtures/example5.grs");
pub const EXAMPLE6: &str = include_str!("../fixtures/example6.grs");
pub const EXAMPLE8: &str = include_str!("../fixtures/example8.grs");
pub const SINGLETON: &str = include_str!("../fixtures/singleton.grs");
pub const CATALOG: &str = include_str!("../fixtures/catalog.grs");

/// Every fixture as `(file name, text)`.
pub const ALL: [(&str, &str); 9] = [
    ("example1.grs", EXAMPLE1),
    ("example2.grs", EXAMPLE2),
    ("example3.grs", EXAMPLE3),
    ("example4.grs", EXAMPLE4),
    ("example5.grs", EXAMPLE5),
    ("example6.grs", EXAMPLE6),
    ("example8.grs", EXAMPLE8),
    ("singleton.grs", SINGLETON),
    ("catalog.grs", CATALOG),
];

/// Parses a shipped fixture. Fixtures with `unchecked` structures parse
/// under either admission mode, so strict parsing suffices.
pub fn load(text: &str) -> Scenario {
    parse_scenario(text).expect("shipped fixtures parse")
}

pub fn load_lenient(text: &str) -> Scenario {
    parse_scenario_with(text, Admission::Lenient).expect("shipped fixtures parse")
}

/// The validated structures of the catalog, in file order.
pub fn catalog() -> Vec<(String, GammaSemigroup)> {
    load(CATALOG)
        .structures()
        .iter()
        .map(|d| (d.name.clone(), d.semigroup.clone()))
        .collect()
}

/// Every associative structure across all fixtures, named `file:structure`.
pub fn validated_structures() -> Vec<(String, GammaSemigroup)> {
    let mut out = Vec::new();
    for (file, text) in ALL {
        for d in load(text).structures() {
            if d.semigroup.is_associative() {
                out.push((format!("{file}:{}", d.name), d.semigroup.clone()));
            }
        }
    }
    out
}
