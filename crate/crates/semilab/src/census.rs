//! Exhaustive enumeration of semigroups of small order, one representative
//! per isomorphism (or iso-and-anti-isomorphism) class, with classification
//! tallies and the exhaustive verification suites built on top.
//!
//! Enumeration backtracks over table cells in row-major order. After each
//! cell assignment every associativity triple whose products have all just
//! become defined is checked, which prunes the n^(n^2) grid space by
//! orders of magnitude. Deduplication keeps exactly the tables that equal
//! their own canonical form, so workers need no shared seen-set and the
//! output is independent of how work is split: the first full row
//! partitions the search into disjoint subtrees that parallelize cleanly.
//!
//! Orders up to 5 enumerate in seconds; 6 takes minutes and sits behind
//! the long-run flag in the verifiers; 7 is accepted by the API for
//! completeness but is impractical to exhaust.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::cayley::CayleyTable;
use crate::classify::{
    self, check_quasi_identity, ClassificationReport, Flag, ParseFlagError, QuasiIdentity,
    QuasiOutcome,
};
use crate::green::GreenProfile;
use crate::pattern;
use crate::sgt;

pub const MAX_CENSUS_ORDER: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DedupMode {
    /// One table per isomorphism class.
    Iso,
    /// One table per class under isomorphism and anti-isomorphism.
    IsoAndAnti,
}

impl DedupMode {
    fn include_anti(self) -> bool {
        matches!(self, DedupMode::IsoAndAnti)
    }
}

impl fmt::Display for DedupMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DedupMode::Iso => "iso",
            DedupMode::IsoAndAnti => "iso_and_anti",
        })
    }
}

/// One conjunct of a census filter: a flag that must have the given value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FilterAtom {
    pub flag: Flag,
    pub expected: bool,
}

impl fmt::Display for FilterAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.expected {
            write!(f, "!")?;
        }
        write!(f, "{}", self.flag)
    }
}

/// A conjunction of flag requirements, parsed from comma-separated flag
/// names with optional '!' negation, e.g. "amiable,!adequate". The empty
/// filter matches everything.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct FilterExpr {
    pub atoms: Vec<FilterAtom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterParseError {
    #[error("empty filter atom")]
    EmptyAtom,
    #[error(transparent)]
    UnknownFlag(#[from] ParseFlagError),
}

impl FromStr for FilterExpr {
    type Err = FilterParseError;

    fn from_str(s: &str) -> Result<FilterExpr, FilterParseError> {
        let mut atoms = Vec::new();
        for raw in s.split(',') {
            let token = raw.trim();
            let (expected, name) = match token.strip_prefix('!') {
                Some(rest) => (false, rest.trim()),
                None => (true, token),
            };
            if name.is_empty() {
                return Err(FilterParseError::EmptyAtom);
            }
            atoms.push(FilterAtom {
                flag: name.parse()?,
                expected,
            });
        }
        Ok(FilterExpr { atoms })
    }
}

impl fmt::Display for FilterExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, atom) in self.atoms.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

impl FilterExpr {
    pub fn matches(&self, report: &ClassificationReport) -> bool {
        self.atoms
            .iter()
            .all(|atom| report.flags.get(atom.flag) == atom.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CensusSpec {
    pub order: usize,
    pub dedup: DedupMode,
    pub filter: FilterExpr,
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("order {0} is outside the supported range 1..={MAX_CENSUS_ORDER}")]
    OrderOutOfRange(usize),
    #[error("order {0} enumerates tens of millions of tables; pass the long-run flag to confirm")]
    LongRunRequired(usize),
}

const UNSET: u8 = u8::MAX;

/// Backtracking cell-filler with incremental associativity checks.
struct Enumerator {
    n: usize,
    grid: Vec<u8>,
}

impl Enumerator {
    fn new(n: usize) -> Enumerator {
        Enumerator {
            n,
            grid: vec![UNSET; n * n],
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u8 {
        self.grid[i * self.n + j]
    }

    /// Checks every associativity triple completed by the assignment of
    /// cell (i, j). A triple (x, y, z) is checked exactly once, at the
    /// moment its last involved cell is filled; cells still unset postpone
    /// the triple to a later call.
    fn consistent_after(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        let v = self.at(i, j);
        // (i, j, z): the new cell is the left pair product.
        for z in 0..n {
            let jz = self.at(j, z);
            if jz == UNSET {
                continue;
            }
            let lhs = self.at(v as usize, z);
            let rhs = self.at(i, jz as usize);
            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                return false;
            }
        }
        // (x, i, j): the new cell is the right pair product.
        for x in 0..n {
            let xi = self.at(x, i);
            if xi == UNSET {
                continue;
            }
            let lhs = self.at(xi as usize, j);
            let rhs = self.at(x, v as usize);
            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                return false;
            }
        }
        // (p, q, j) with pq = i: the new cell is (pq)j.
        // (i, p, q) with pq = j: the new cell is i(pq).
        for p in 0..n {
            for q in 0..n {
                let pq = self.at(p, q);
                if pq == UNSET {
                    continue;
                }
                if pq as usize == i {
                    let qj = self.at(q, j);
                    if qj != UNSET {
                        let rhs = self.at(p, qj as usize);
                        if rhs != UNSET && rhs != v {
                            return false;
                        }
                    }
                }
                if pq as usize == j {
                    let ip = self.at(i, p);
                    if ip != UNSET {
                        let lhs = self.at(ip as usize, q);
                        if lhs != UNSET && lhs != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Fills cells `from..to` in row-major order, invoking `emit` on each
    /// consistent assignment of the range.
    fn fill(&mut self, from: usize, to: usize, emit: &mut impl FnMut(&mut Enumerator)) {
        if from == to {
            emit(self);
            return;
        }
        let (i, j) = (from / self.n, from % self.n);
        for v in 0..self.n as u8 {
            self.grid[from] = v;
            if self.consistent_after(i, j) {
                self.fill(from + 1, to, emit);
            }
        }
        self.grid[from] = UNSET;
    }
}

/// All associative tables of the given order, one representative per
/// equivalence class, in ascending row-major order.
///
/// A completed grid is kept exactly when it equals its own canonical form,
/// so each class is represented precisely once without any cross-worker
/// coordination; the first table row splits the work for the thread pool.
pub fn enumerate_tables(order: usize, dedup: DedupMode) -> Result<Vec<CayleyTable>, CensusError> {
    if order == 0 || order > MAX_CENSUS_ORDER {
        return Err(CensusError::OrderOutOfRange(order));
    }
    let n = order;
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    let mut root = Enumerator::new(n);
    root.fill(0, n, &mut |e| prefixes.push(e.grid.clone()));

    let per_prefix: Vec<Vec<Vec<u8>>> = prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut found = Vec::new();
            let mut e = Enumerator { n, grid: prefix };
            e.fill(n, n * n, &mut |e| {
                let table = CayleyTable::from_flat_unchecked(n, e.grid.clone());
                if table.is_canonical(dedup.include_anti()) {
                    found.push(e.grid.clone());
                }
            });
            found
        })
        .collect();

    let mut grids: Vec<Vec<u8>> = per_prefix.into_iter().flatten().collect();
    grids.sort_unstable();
    Ok(grids
        .into_iter()
        .map(|g| CayleyTable::from_flat_unchecked(n, g))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassifiedTable {
    pub table: CayleyTable,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FilterCount {
    pub atom: FilterAtom,
    pub count: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CensusResult {
    pub spec: CensusSpec,
    pub total_tables: usize,
    /// Tables satisfying the whole filter conjunction.
    pub matched: usize,
    /// Tables satisfying each atom individually.
    pub per_filter: Vec<FilterCount>,
    /// The first `limit` matches (all of them without a limit), in
    /// canonical order.
    pub examples: Vec<ClassifiedTable>,
    pub elapsed_ms: u128,
}

pub fn run_census(spec: &CensusSpec) -> Result<CensusResult, CensusError> {
    let started = Instant::now();
    let tables = enumerate_tables(spec.order, spec.dedup)?;
    let reports: Vec<ClassificationReport> =
        tables.par_iter().map(classify::classify).collect();

    let mut per_filter: Vec<FilterCount> = spec
        .filter
        .atoms
        .iter()
        .map(|&atom| FilterCount { atom, count: 0 })
        .collect();
    let mut matched = 0usize;
    let mut examples = Vec::new();
    for (table, report) in tables.iter().zip(&reports) {
        for fc in per_filter.iter_mut() {
            if report.flags.get(fc.atom.flag) == fc.atom.expected {
                fc.count += 1;
            }
        }
        if spec.filter.matches(report) {
            matched += 1;
            if spec.limit.is_none_or(|limit| examples.len() < limit) {
                examples.push(ClassifiedTable {
                    table: table.clone(),
                    report: report.clone(),
                });
            }
        }
    }
    Ok(CensusResult {
        spec: spec.clone(),
        total_tables: tables.len(),
        matched,
        per_filter,
        examples,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// Guard shared by the exhaustive verifiers: orders up to 6 run freely,
/// 7 needs the explicit long-run opt-in.
fn check_verify_order(max_order: usize, long_run: bool) -> Result<(), CensusError> {
    if max_order == 0 || max_order > MAX_CENSUS_ORDER {
        return Err(CensusError::OrderOutOfRange(max_order));
    }
    if max_order > 6 && !long_run {
        return Err(CensusError::LongRunRequired(max_order));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SuiteName {
    /// L refines L* refines L~ (and the right-handed chain) on all tables.
    RefinementChain,
    /// Amiable and not adequate implies an embedded copy of M.
    MEmbedding,
    /// QI-1, QI-2, QI-3 and M-avoidance agree on amiable tables.
    QuasiEquivalence,
    /// The x_l laws on amiable tables (avoiding M where required).
    MapLaws,
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::RefinementChain => "refinement-chain",
            SuiteName::MEmbedding => "m-embedding",
            SuiteName::QuasiEquivalence => "quasi-equivalence",
            SuiteName::MapLaws => "idempotent-map-laws",
        })
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyFailure {
    pub suite: SuiteName,
    pub order: usize,
    pub table: CayleyTable,
    pub detail: String,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} failed at order {}: {}",
            self.suite, self.order, self.detail
        )?;
        write!(f, "{}", sgt::format(&self.table))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct OrderStats {
    pub order: usize,
    pub tables: usize,
    pub amiable: usize,
    pub amiable_not_adequate: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyReport {
    pub max_order: usize,
    pub stats: Vec<OrderStats>,
    /// First failing table, if any; the scan stops there.
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively re-verifies, over every semigroup up to `max_order` (one
/// per isomorphism class; avoidance is an isomorphism notion, so
/// anti-duplicates are kept):
///
/// * the refinement chains of the Green partitions;
/// * that amiable non-adequate tables always contain a copy of M;
/// * that the three quasi-identities and M-avoidance agree on amiable
///   tables;
/// * the x_l equational laws on amiable tables.
pub fn verify(max_order: usize, long_run: bool) -> Result<VerifyReport, CensusError> {
    check_verify_order(max_order, long_run)?;
    let mut report = VerifyReport {
        max_order,
        stats: Vec::new(),
        failure: None,
    };
    for order in 1..=max_order {
        let tables = enumerate_tables(order, DedupMode::Iso)?;
        let mut stats = OrderStats {
            order,
            tables: tables.len(),
            amiable: 0,
            amiable_not_adequate: 0,
        };
        for table in &tables {
            if let Some(failure) = verify_one(order, table, &mut stats) {
                report.stats.push(stats);
                report.failure = Some(failure);
                return Ok(report);
            }
        }
        report.stats.push(stats);
    }
    Ok(report)
}

fn verify_one(order: usize, table: &CayleyTable, stats: &mut OrderStats) -> Option<VerifyFailure> {
    let fail = |suite: SuiteName, detail: String| {
        Some(VerifyFailure {
            suite,
            order,
            table: table.clone(),
            detail,
        })
    };
    let profile = GreenProfile::compute(table);
    if !profile.refinement_chain_holds() {
        return fail(
            SuiteName::RefinementChain,
            "a Green partition does not refine its coarser relative".into(),
        );
    }
    let Some(maps) = &profile.maps else {
        return None;
    };
    stats.amiable += 1;

    let adequate = classify::find_noncommuting_idempotents(table).is_none();
    let m_witness = pattern::m_pair_scan(table);
    if !adequate {
        stats.amiable_not_adequate += 1;
        if m_witness.is_none() {
            return fail(
                SuiteName::MEmbedding,
                "amiable and not adequate, yet no copy of M found".into(),
            );
        }
    }

    let avoids_m = m_witness.is_none();
    let quasi: Vec<bool> = QuasiIdentity::ALL
        .iter()
        .map(|&qi| check_quasi_identity(table, qi) == QuasiOutcome::Satisfied)
        .collect();
    if quasi.iter().any(|&q| q != avoids_m) {
        return fail(
            SuiteName::QuasiEquivalence,
            format!(
                "QI-1={} QI-2={} QI-3={} but avoids_m={avoids_m}",
                quasi[0], quasi[1], quasi[2]
            ),
        );
    }

    if let Some((x, y)) = classify::ell_product_law_violation(table, maps) {
        return fail(
            SuiteName::MapLaws,
            format!("(x_l y)_l != (xy)_l at x={x}, y={y}"),
        );
    }
    if avoids_m {
        if let Some((x, c)) = classify::idempotent_absorption_violation(table, maps) {
            return fail(
                SuiteName::MapLaws,
                format!("x(xc)_l = xc or x_l(xc)_l = x_l c fails at x={x}, c={c}"),
            );
        }
        if let Some((x, c)) = classify::commutation_transfer_violation(table, maps) {
            return fail(
                SuiteName::MapLaws,
                format!("cx = xc but c x_l != x_l c at x={x}, c={c}"),
            );
        }
    }
    None
}
