//! Finite Γ-semigroups given by Cayley tables, and the Γ-product on subsets.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mask::Mask;

/// Upper bound on `elements × gammas` for any structure.
pub const MAX_CELLS: usize = 64;

/// Ordered, duplicate-free list of element names. The order is the
/// canonical order used for every set this carrier owns.
#[derive(Clone, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Carrier> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if names.len() > MAX_CELLS {
            return Err(Error::TooLarge {
                elements: names.len(),
                gammas: 1,
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Carrier { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn full(&self) -> Mask {
        Mask::full(self.len())
    }

    pub fn mask_of<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Mask> {
        names
            .into_iter()
            .try_fold(Mask::EMPTY, |m, s| Ok(m.with(self.index_of(s.as_ref())?)))
    }

    /// Member names in canonical order.
    pub fn members(&self, m: Mask) -> Vec<&str> {
        m.iter().map(|i| self.name(i)).collect()
    }

    /// `{a,b}` form used by machine reports.
    pub fn render(&self, m: Mask) -> String {
        format!("{{{}}}", self.members(m).join(","))
    }

    /// `{a, b}` form used by human reports and serialized files.
    pub fn render_spaced(&self, m: Mask) -> String {
        format!("{{{}}}", self.members(m).join(", "))
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// True when two carrier handles describe the same element list.
pub fn same_carrier(a: &Carrier, b: &Carrier) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// A subset of a carrier, tied to its owner.
#[derive(Clone)]
pub struct ElementSet {
    carrier: Arc<Carrier>,
    mask: Mask,
}

impl ElementSet {
    pub fn new(carrier: Arc<Carrier>, mask: Mask) -> Result<ElementSet> {
        if !mask.fits(carrier.len()) {
            return Err(Error::MaskOutOfRange);
        }
        Ok(ElementSet { carrier, mask })
    }

    pub fn from_names<S: AsRef<str>>(
        carrier: Arc<Carrier>,
        names: impl IntoIterator<Item = S>,
    ) -> Result<ElementSet> {
        let mask = carrier.mask_of(names)?;
        Ok(ElementSet { carrier, mask })
    }

    pub fn empty(carrier: Arc<Carrier>) -> ElementSet {
        ElementSet {
            carrier,
            mask: Mask::EMPTY,
        }
    }

    pub fn full(carrier: Arc<Carrier>) -> ElementSet {
        let mask = carrier.full();
        ElementSet { carrier, mask }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.carrier
            .index_of(name)
            .map(|i| self.mask.contains(i))
            .unwrap_or(false)
    }

    pub fn names(&self) -> Vec<&str> {
        self.carrier.members(self.mask)
    }

    pub fn is_subset(&self, other: &ElementSet) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.mask.is_subset(other.mask))
    }

    pub(crate) fn check_same(&self, other: &ElementSet) -> Result<()> {
        if same_carrier(&self.carrier, &other.carrier) {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    pub(crate) fn with_mask(&self, mask: Mask) -> ElementSet {
        ElementSet {
            carrier: Arc::clone(&self.carrier),
            mask,
        }
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && same_carrier(&self.carrier, &other.carrier)
    }
}

impl Eq for ElementSet {}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.carrier.render(self.mask))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet{}", self.carrier.render(self.mask))
    }
}

/// Total, closed Cayley tables before any associativity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTables {
    elements: Arc<Carrier>,
    gammas: Vec<String>,
    /// `cells[g * n * n + a * n + b]` is the index of `a g b`.
    cells: Vec<u8>,
}

impl RawTables {
    pub fn new(elements: Arc<Carrier>, gammas: Vec<String>, cells: Vec<usize>) -> Result<RawTables> {
        let n = elements.len();
        let m = gammas.len();
        if m == 0 {
            return Err(Error::NoGammas);
        }
        if n * m > MAX_CELLS {
            return Err(Error::TooLarge {
                elements: n,
                gammas: m,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for g in &gammas {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateName(g.clone()));
            }
        }
        if cells.len() != m * n * n {
            return Err(Error::TableShape {
                expected: m * n * n,
                found: cells.len(),
            });
        }
        let cells = cells
            .into_iter()
            .map(|c| if c < n { Ok(c as u8) } else { Err(Error::CellOutOfRange(c)) })
            .collect::<Result<Vec<u8>>>()?;
        Ok(RawTables {
            elements,
            gammas,
            cells,
        })
    }

    /// Builds tables from a closure `op(a, g, b)` over indices.
    pub fn from_fn(
        elements: Arc<Carrier>,
        gammas: Vec<String>,
        op: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<RawTables> {
        let n = elements.len();
        let m = gammas.len();
        let mut cells = Vec::with_capacity(m * n * n);
        for g in 0..m {
            for a in 0..n {
                for b in 0..n {
                    cells.push(op(a, g, b));
                }
            }
        }
        RawTables::new(elements, gammas, cells)
    }

    #[inline]
    fn op(&self, a: usize, g: usize, b: usize) -> usize {
        let n = self.elements.len();
        self.cells[(g * n + a) * n + b] as usize
    }
}

/// One failing instance of `(a α b) β c = a α (b β c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssociativityFailure {
    pub a: usize,
    pub alpha: usize,
    pub b: usize,
    pub beta: usize,
    pub c: usize,
    /// `(a α b) β c`
    pub left: usize,
    /// `a α (b β c)`
    pub right: usize,
}

impl fmt::Display for AssociativityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(#{} g{} #{}) g{} #{} = #{} but #{} g{} (#{} g{} #{}) = #{}",
            self.a, self.alpha, self.b, self.beta, self.c, self.left, self.a, self.alpha, self.b,
            self.beta, self.c, self.right
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// Number of `(a, α, b, β, c)` instances examined, `n³·m²`.
    pub instances: usize,
    pub witnesses: Vec<AssociativityFailure>,
}

/// Checks every associativity instance, reporting failures in canonical
/// `(a, α, b, β, c)` order.
pub fn validate_structure(tables: &RawTables) -> ValidationReport {
    let n = tables.elements.len();
    let m = tables.gammas.len();
    let mut witnesses = Vec::new();
    for a in 0..n {
        for alpha in 0..m {
            for b in 0..n {
                let ab = tables.op(a, alpha, b);
                for beta in 0..m {
                    for c in 0..n {
                        let left = tables.op(ab, beta, c);
                        let right = tables.op(a, alpha, tables.op(b, beta, c));
                        if left != right {
                            witnesses.push(AssociativityFailure {
                                a,
                                alpha,
                                b,
                                beta,
                                c,
                                left,
                                right,
                            });
                        }
                    }
                }
            }
        }
    }
    ValidationReport {
        valid: witnesses.is_empty(),
        instances: n * n * n * m * m,
        witnesses,
    }
}

/// A finite Γ-semigroup. Immutable once built.
#[derive(Clone, Debug)]
pub struct GammaSemigroup {
    tables: RawTables,
    /// `pair[a * n + b]` = `{a γ b : γ ∈ Γ}`.
    pair: Vec<Mask>,
    unchecked: bool,
    associative: bool,
}

impl PartialEq for GammaSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.tables == other.tables && self.unchecked == other.unchecked
    }
}

impl Eq for GammaSemigroup {}

impl GammaSemigroup {
    /// Validates associativity; a failing table is rejected with the first
    /// witness.
    pub fn new(tables: RawTables) -> Result<GammaSemigroup> {
        let report = validate_structure(&tables);
        if let Some(w) = report.witnesses.first() {
            return Err(Error::NotAssociative(*w));
        }
        Ok(Self::build(tables, false, true))
    }

    /// Accepts tables that may fail associativity. The structure remembers
    /// that it was admitted without the check.
    pub fn new_unchecked(tables: RawTables) -> GammaSemigroup {
        let associative = validate_structure(&tables).valid;
        Self::build(tables, true, associative)
    }

    fn build(tables: RawTables, unchecked: bool, associative: bool) -> GammaSemigroup {
        let n = tables.elements.len();
        let m = tables.gammas.len();
        let mut pair = vec![Mask::EMPTY; n * n];
        for a in 0..n {
            for b in 0..n {
                pair[a * n + b] = (0..m).fold(Mask::EMPTY, |acc, g| acc.with(tables.op(a, g, b)));
            }
        }
        GammaSemigroup {
            tables,
            pair,
            unchecked,
            associative,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.tables.elements
    }

    pub fn tables(&self) -> &RawTables {
        &self.tables
    }

    pub fn order(&self) -> usize {
        self.tables.elements.len()
    }

    pub fn gammas(&self) -> &[String] {
        &self.tables.gammas
    }

    pub fn gamma_count(&self) -> usize {
        self.tables.gammas.len()
    }

    pub fn gamma_index(&self, name: &str) -> Result<usize> {
        self.tables
            .gammas
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGamma(name.to_string()))
    }

    pub fn is_unchecked(&self) -> bool {
        self.unchecked
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn validation(&self) -> ValidationReport {
        validate_structure(&self.tables)
    }

    /// `a γ b` by index.
    #[inline]
    pub fn op(&self, a: usize, g: usize, b: usize) -> usize {
        self.tables.op(a, g, b)
    }

    /// `a γ b` by name.
    pub fn apply(&self, a: &str, gamma: &str, b: &str) -> Result<&str> {
        let ai = self.carrier().index_of(a)?;
        let g = self.gamma_index(gamma)?;
        let bi = self.carrier().index_of(b)?;
        Ok(self.carrier().name(self.op(ai, g, bi)))
    }

    /// `{a γ b : γ ∈ Γ}`.
    #[inline]
    pub fn pair_product(&self, a: usize, b: usize) -> Mask {
        self.pair[a * self.order() + b]
    }

    /// `A Γ B` on raw masks.
    pub fn product(&self, a: Mask, b: Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out = out.union(self.pair_product(x, y));
            }
        }
        out
    }

    /// Left-associated product of a chain `A₁ Γ A₂ Γ … Γ Aₖ`.
    pub fn chain(&self, factors: &[Mask]) -> Mask {
        let mut it = factors.iter();
        let Some(&first) = it.next() else {
            return Mask::EMPTY;
        };
        it.fold(first, |acc, &f| self.product(acc, f))
    }

    pub fn full(&self) -> Mask {
        self.carrier().full()
    }

    /// `A Γ B` on owned subsets.
    pub fn gamma_product(&self, a: &ElementSet, b: &ElementSet) -> Result<ElementSet> {
        if !same_carrier(a.carrier(), self.carrier()) || !same_carrier(b.carrier(), self.carrier()) {
            return Err(Error::StructureMismatch);
        }
        Ok(ElementSet::new(Arc::clone(self.carrier()), self.product(a.mask(), b.mask()))?)
    }

    pub fn subset<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        ElementSet::from_names(Arc::clone(self.carrier()), names)
    }

    pub fn element_set(&self, mask: Mask) -> Result<ElementSet> {
        ElementSet::new(Arc::clone(self.carrier()), mask)
    }

    pub fn describe_failure(&self, w: &AssociativityFailure) -> String {
        let e = |i: usize| self.carrier().name(i);
        let g = |i: usize| self.tables.gammas[i].as_str();
        format!(
            "({} {} {}) {} {} = {} but {} {} ({} {} {}) = {}",
            e(w.a),
            g(w.alpha),
            e(w.b),
            g(w.beta),
            e(w.c),
            e(w.left),
            e(w.a),
            g(w.alpha),
            e(w.b),
            g(w.beta),
            e(w.c),
            e(w.right)
        )
    }
}
