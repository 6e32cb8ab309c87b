//! Finite semigroups represented as validated Cayley tables.
//!
//! A [`CayleyTable`] stores the full multiplication table of a finite
//! semigroup over dense element indices `0..n`. Construction goes through
//! [`CayleyTable::validate`], which enforces entry range and associativity,
//! so every value of this type is a genuine semigroup. All analyses
//! downstream take read-only views; tables are immutable once built.
//!
//! Element names (`a`, `b`, ...) never appear here; only the optional table
//! label survives into I/O. Orders are capped at [`MAX_ORDER`] so that
//! element indices fit in a byte and subsets fit in a fixed 256-bit set.

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// Largest supported semigroup order. One above this is still representable
/// so that identity adjunction on a table of maximal order cannot fail.
pub const MAX_ORDER: usize = 255;

const UNSET: u8 = u8::MAX;

/// A subset of element indices, as a fixed 256-bit set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementSet {
    words: [u64; 4],
}

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet { words: [0; 4] };

    pub fn singleton(i: usize) -> ElementSet {
        let mut s = ElementSet::EMPTY;
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 256);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 256 && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words == [0; 4]
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: std::array::from_fn(|k| self.words[k] & other.words[k]),
        }
    }

    /// Ascending iterator over the member indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let word = self.words[k];
            (0..64).filter_map(move |b| (word >> b & 1 == 1).then_some(k * 64 + b))
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Least member. Named to stay clear of `Ord::min`, which by-value
    /// receivers would otherwise select.
    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Table validation failure. Positions refer to the first offending spot in
/// row-major scan order, so messages are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("order {0} is not in 1..={MAX_ORDER}")]
    InvalidOrder(usize),
    #[error("product grid has wrong shape: expected {expected}x{expected}")]
    BadShape { expected: usize },
    #[error("entry out of range at row {row}, column {col}: {value}")]
    OutOfRangeEntry { row: usize, col: usize, value: usize },
    #[error("associativity fails at triple ({i}, {j}, {k}): ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
}

/// The multiplication table of a finite semigroup.
///
/// Equality, ordering, and hashing compare the algebra only (order and
/// products); the optional label is ignored.
#[derive(Clone)]
pub struct CayleyTable {
    order: usize,
    products: Vec<u8>,
    name: Option<String>,
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.products == other.products
    }
}

impl Eq for CayleyTable {}

impl PartialOrd for CayleyTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CayleyTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order, &self.products).cmp(&(other.order, &other.products))
    }
}

impl Hash for CayleyTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.products.hash(state);
    }
}

/// Serializes as `{ "name"?, "order", "rows" }` with the grid nested
/// row-major.
impl serde::Serialize for CayleyTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let fields = 2 + self.name.is_some() as usize;
        let mut s = serializer.serialize_struct("CayleyTable", fields)?;
        if let Some(name) = &self.name {
            s.serialize_field("name", name)?;
        }
        s.serialize_field("order", &self.order)?;
        let rows: Vec<Vec<u8>> = (0..self.order)
            .map(|i| self.products[i * self.order..(i + 1) * self.order].to_vec())
            .collect();
        s.serialize_field("rows", &rows)?;
        s.end()
    }
}

impl fmt::Debug for CayleyTable {
    /// Prints the grid one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(order {}", self.order)?;
        if let Some(name) = &self.name {
            write!(f, ", name {name:?}")?;
        }
        writeln!(f, ")")?;
        for i in 0..self.order {
            for j in 0..self.order {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.products[i * self.order + j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl CayleyTable {
    /// Checks that `rows` is an `order`x`order` grid of in-range indices
    /// satisfying the associative law, and wraps it up. Errors report the
    /// first failure in row-major scan order.
    pub fn validate(order: usize, rows: &[Vec<usize>]) -> Result<CayleyTable, ValidateError> {
        if order == 0 || order > MAX_ORDER {
            return Err(ValidateError::InvalidOrder(order));
        }
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(ValidateError::BadShape { expected: order });
        }
        let mut products = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(ValidateError::OutOfRangeEntry { row, col, value });
                }
                products.push(value as u8);
            }
        }
        check_associative(order, &products)?;
        Ok(CayleyTable {
            order,
            products,
            name: None,
        })
    }

    /// Builds a table from a flat row-major grid that is already known to be
    /// associative (used by the census enumerator, whose constraint
    /// propagation guarantees it).
    pub(crate) fn from_flat_unchecked(order: usize, products: Vec<u8>) -> CayleyTable {
        debug_assert_eq!(products.len(), order * order);
        debug_assert!(check_associative(order, &products).is_ok());
        CayleyTable {
            order,
            products,
            name: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product of elements `i` and `j`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.products[i * self.order + j] as usize
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> CayleyTable {
        self.name = Some(name.into());
        self
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.product(x, x) == x
    }

    /// The set `{ e : ee = e }`.
    pub fn idempotents(&self) -> ElementSet {
        (0..self.order).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The two-sided identity element, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.product(e, x) == x && self.product(x, e) == x))
    }

    /// Returns `self` unchanged when a two-sided identity already exists;
    /// otherwise returns the order-(n+1) table with a fresh identity at
    /// index n.
    pub fn adjoin_identity(&self) -> CayleyTable {
        if self.identity().is_some() {
            return self.clone();
        }
        let n = self.order;
        let m = n + 1;
        let mut products = vec![0u8; m * m];
        for i in 0..n {
            for j in 0..n {
                products[i * m + j] = self.products[i * n + j];
            }
        }
        for x in 0..m {
            products[x * m + n] = x as u8;
            products[n * m + x] = x as u8;
        }
        CayleyTable {
            order: m,
            products,
            name: None,
        }
    }

    /// Least subset containing `gens` and closed under products, by worklist
    /// closure.
    pub fn generated_subsemigroup(&self, gens: &ElementSet) -> ElementSet {
        let mut members = *gens;
        let mut work: Vec<usize> = gens.to_vec();
        while let Some(x) = work.pop() {
            for y in members.to_vec() {
                for p in [self.product(x, y), self.product(y, x)] {
                    if !members.contains(p) {
                        members.insert(p);
                        work.push(p);
                    }
                }
            }
        }
        members
    }

    /// The opposite semigroup: products read `transpose(i, j) = self(j, i)`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.order;
        let mut products = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                products[i * n + j] = self.products[j * n + i];
            }
        }
        CayleyTable {
            order: n,
            products,
            name: None,
        }
    }

    /// The lexicographically least relabeling of this table (row-major),
    /// over all permutations of the element indices, and over the transpose
    /// as well when `include_anti` is set.
    ///
    /// The search is factorial in the order with branch-and-bound pruning on
    /// row prefixes; it is intended for the small orders the census visits.
    pub fn canonical_form(&self, include_anti: bool) -> CayleyTable {
        let mut best = lex_min_relabel(self.order, &self.products);
        if include_anti {
            let t = self.transpose();
            let anti_best = lex_min_relabel(self.order, &t.products);
            if anti_best < best {
                best = anti_best;
            }
        }
        CayleyTable {
            order: self.order,
            products: best,
            name: None,
        }
    }

    /// True when this table equals its own canonical form, checked without
    /// materializing the minimum: the search aborts on the first relabeling
    /// (or, with `include_anti`, relabeled transpose) that beats it.
    pub fn is_canonical(&self, include_anti: bool) -> bool {
        if exists_smaller_relabeling(self.order, &self.products, &self.products) {
            return false;
        }
        if include_anti {
            let t = self.transpose();
            if exists_smaller_relabeling(self.order, &t.products, &self.products) {
                return false;
            }
        }
        true
    }

    /// Searches for an isomorphism (or, with `include_anti`, an
    /// anti-isomorphism) onto `other`. Candidates are pruned by order,
    /// idempotent count, and per-element row/column multiplication
    /// fingerprints before the backtracking starts.
    pub fn find_isomorphism(&self, other: &CayleyTable, include_anti: bool) -> Option<IsoWitness> {
        if self.order != other.order {
            return None;
        }
        if self.idempotents().len() != other.idempotents().len() {
            return None;
        }
        if let Some(map) = iso_search(self, other) {
            return Some(IsoWitness { map, anti: false });
        }
        if include_anti {
            let t = other.transpose();
            if let Some(map) = iso_search(self, &t) {
                return Some(IsoWitness { map, anti: true });
            }
        }
        None
    }
}

fn check_associative(order: usize, products: &[u8]) -> Result<(), ValidateError> {
    let at = |i: usize, j: usize| products[i * order + j] as usize;
    for i in 0..order {
        for j in 0..order {
            for k in 0..order {
                if at(at(i, j), k) != at(i, at(j, k)) {
                    return Err(ValidateError::NotAssociative { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// A bijection witnessing (anti-)isomorphism: element `i` of the source maps
/// to `map[i]` in the target. When `anti` is set the witness reverses
/// products instead of preserving them.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IsoWitness {
    pub map: Vec<usize>,
    pub anti: bool,
}

/// Lexicographically least table over all relabelings by permutations.
///
/// The search assigns, for each new index in turn, which original element it
/// stands for. A branch is cut as soon as the determined prefix of row 0 is
/// already worse than the incumbent; entries whose relabeled value is not
/// yet fixed are known to be >= the current depth, which is enough to
/// compare against the incumbent in many branches.
fn lex_min_relabel(n: usize, products: &[u8]) -> Vec<u8> {
    if n == 1 {
        return products.to_vec();
    }
    let mut best = products.to_vec();
    // new index -> original element
    let mut new_to_old: Vec<u8> = Vec::with_capacity(n);
    // original element -> new index
    let mut old_to_new: Vec<u8> = vec![UNSET; n];
    let mut state = RelabelState {
        n,
        products,
        new_to_old: &mut new_to_old,
        old_to_new: &mut old_to_new,
    };
    state.search(&mut best);
    best
}

struct RelabelState<'a> {
    n: usize,
    products: &'a [u8],
    new_to_old: &'a mut Vec<u8>,
    old_to_new: &'a mut Vec<u8>,
}

impl RelabelState<'_> {
    fn search(&mut self, best: &mut Vec<u8>) {
        let depth = self.new_to_old.len();
        if depth == self.n {
            let candidate = self.materialize();
            if candidate < *best {
                *best = candidate;
            }
            return;
        }
        for old in 0..self.n {
            if self.old_to_new[old] != UNSET {
                continue;
            }
            self.new_to_old.push(old as u8);
            self.old_to_new[old] = depth as u8;
            if !self.prefix_beaten(best) {
                self.search(best);
            }
            self.new_to_old.pop();
            self.old_to_new[old] = UNSET;
        }
    }

    /// True when the determined prefix of row 0 already exceeds the
    /// incumbent, so no completion of this branch can win.
    fn prefix_beaten(&self, best: &[u8]) -> bool {
        let depth = self.new_to_old.len();
        let row0 = self.new_to_old[0] as usize * self.n;
        for (j, &b) in best.iter().enumerate().take(depth) {
            let original = self.products[row0 + self.new_to_old[j] as usize] as usize;
            let v = self.old_to_new[original];
            if v == UNSET {
                // Relabeled value will be some index >= depth.
                return b < depth as u8;
            }
            if v != b {
                return v > b;
            }
        }
        false
    }

    fn materialize(&self) -> Vec<u8> {
        let n = self.n;
        let mut out = vec![0u8; n * n];
        for i in 0..n {
            let row = self.new_to_old[i] as usize * n;
            for j in 0..n {
                let original = self.products[row + self.new_to_old[j] as usize] as usize;
                out[i * n + j] = self.old_to_new[original];
            }
        }
        out
    }
}

/// True when some relabeling of `source` is strictly below `bound` in
/// row-major lexicographic order. With `source = bound` this decides
/// non-canonicity without materializing the full minimum, exiting as soon
/// as a beating prefix is found.
pub(crate) fn exists_smaller_relabeling(n: usize, source: &[u8], bound: &[u8]) -> bool {
    let mut new_to_old: Vec<u8> = Vec::with_capacity(n);
    let mut old_to_new: Vec<u8> = vec![UNSET; n];
    smaller_search(n, source, bound, &mut new_to_old, &mut old_to_new)
}

fn smaller_search(
    n: usize,
    source: &[u8],
    bound: &[u8],
    new_to_old: &mut Vec<u8>,
    old_to_new: &mut Vec<u8>,
) -> bool {
    let depth = new_to_old.len();
    if depth == n {
        // Prefix of row 0 is tied with the bound; compare the full tables.
        let state = RelabelState {
            n,
            products: source,
            new_to_old,
            old_to_new,
        };
        return state.materialize().as_slice() < bound;
    }
    for old in 0..n {
        if old_to_new[old] != UNSET {
            continue;
        }
        new_to_old.push(old as u8);
        old_to_new[old] = depth as u8;
        // Compare the determined prefix of row 0 against the bound. A
        // strict win on the prefix settles the whole branch either way.
        let row0 = new_to_old[0] as usize * n;
        let mut verdict = std::cmp::Ordering::Equal;
        let mut decided = true;
        for j in 0..new_to_old.len() {
            let original = source[row0 + new_to_old[j] as usize] as usize;
            let v = old_to_new[original];
            if v == UNSET {
                // This entry will relabel to some index not yet assigned,
                // hence >= the count of assigned labels.
                if bound[j] < new_to_old.len() as u8 {
                    verdict = std::cmp::Ordering::Greater;
                } else {
                    decided = false;
                }
                break;
            }
            match v.cmp(&bound[j]) {
                std::cmp::Ordering::Equal => continue,
                other => {
                    verdict = other;
                    break;
                }
            }
        }
        let hit = match (decided, verdict) {
            (true, std::cmp::Ordering::Less) => true,
            (true, std::cmp::Ordering::Greater) => false,
            _ => smaller_search(n, source, bound, new_to_old, old_to_new),
        };
        new_to_old.pop();
        old_to_new[old] = UNSET;
        if hit {
            return true;
        }
    }
    false
}

/// Per-element invariant used to prune isomorphism candidates: idempotency
/// plus the sorted multiplicity profiles of the element's row and column.
fn element_fingerprint(t: &CayleyTable, x: usize) -> (bool, Vec<u8>, Vec<u8>) {
    let n = t.order();
    let profile = |get: &dyn Fn(usize) -> usize| {
        let mut counts = vec![0u8; n];
        for k in 0..n {
            counts[get(k)] += 1;
        }
        counts.retain(|&c| c > 0);
        counts.sort_unstable();
        counts
    };
    (
        t.is_idempotent(x),
        profile(&|k| t.product(x, k)),
        profile(&|k| t.product(k, x)),
    )
}

fn iso_search(s: &CayleyTable, t: &CayleyTable) -> Option<Vec<usize>> {
    let n = s.order();
    let s_fp: Vec<_> = (0..n).map(|x| element_fingerprint(s, x)).collect();
    let t_fp: Vec<_> = (0..n).map(|x| element_fingerprint(t, x)).collect();
    let candidates: Vec<ElementSet> = (0..n)
        .map(|x| (0..n).filter(|&y| t_fp[y] == s_fp[x]).collect())
        .collect();
    injective_hom_search(s, t, &candidates)
}

/// Backtracking search for an injective homomorphism `pattern -> host`,
/// assigning pattern elements in index order with product-consistency
/// propagation: once the images of some elements are fixed, the images of
/// all their products are forced, and any clash prunes the branch. The
/// first witness found is least in lexicographic map order.
pub(crate) fn injective_hom_search(
    pattern: &CayleyTable,
    host: &CayleyTable,
    candidates: &[ElementSet],
) -> Option<Vec<usize>> {
    let m = pattern.order();
    if m > host.order() {
        return None;
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut map: Vec<Option<u8>> = vec![None; m];
    let mut used = ElementSet::EMPTY;
    let mut trail: Vec<usize> = Vec::new();
    if extend(pattern, host, candidates, &mut map, &mut used, &mut trail, 0) {
        Some(map.into_iter().map(|v| v.unwrap() as usize).collect())
    } else {
        None
    }
}

fn extend(
    pattern: &CayleyTable,
    host: &CayleyTable,
    candidates: &[ElementSet],
    map: &mut Vec<Option<u8>>,
    used: &mut ElementSet,
    trail: &mut Vec<usize>,
    next: usize,
) -> bool {
    let m = pattern.order();
    if next == m {
        debug_assert!(full_hom_check(pattern, host, map));
        return true;
    }
    if map[next].is_some() {
        // Image forced by an earlier product; propagation already vetted it.
        return extend(pattern, host, candidates, map, used, trail, next + 1);
    }
    for h in candidates[next].iter() {
        if used.contains(h) {
            continue;
        }
        let mark = trail.len();
        map[next] = Some(h as u8);
        used.insert(h);
        trail.push(next);
        if propagate(pattern, host, candidates, map, used, trail)
            && extend(pattern, host, candidates, map, used, trail, next + 1)
        {
            return true;
        }
        while trail.len() > mark {
            let p = trail.pop().unwrap();
            used.remove(map[p].take().unwrap() as usize);
        }
    }
    false
}

/// Closes the partial map under products until nothing changes. Returns
/// false on any conflict (forced image disagrees with an existing one,
/// collides injectively, or falls outside the candidate set).
fn propagate(
    pattern: &CayleyTable,
    host: &CayleyTable,
    candidates: &[ElementSet],
    map: &mut [Option<u8>],
    used: &mut ElementSet,
    trail: &mut Vec<usize>,
) -> bool {
    let m = pattern.order();
    loop {
        let mut changed = false;
        for u in 0..m {
            let Some(hu) = map[u] else { continue };
            for v in 0..m {
                let Some(hv) = map[v] else { continue };
                let p = pattern.product(u, v);
                let hp = host.product(hu as usize, hv as usize);
                match map[p] {
                    Some(existing) => {
                        if existing as usize != hp {
                            return false;
                        }
                    }
                    None => {
                        if used.contains(hp) || !candidates[p].contains(hp) {
                            return false;
                        }
                        map[p] = Some(hp as u8);
                        used.insert(hp);
                        trail.push(p);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn full_hom_check(pattern: &CayleyTable, host: &CayleyTable, map: &[Option<u8>]) -> bool {
    let m = pattern.order();
    (0..m).all(|u| {
        (0..m).all(|v| {
            let p = map[pattern.product(u, v)].unwrap() as usize;
            host.product(map[u].unwrap() as usize, map[v].unwrap() as usize) == p
        })
    })
}
