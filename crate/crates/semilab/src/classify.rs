//! Classification of finite semigroups into the abundance hierarchy,
//! with witnesses for every failed property.
//!
//! Handedness convention: the `left_*` flags constrain the R*-classes and
//! the `right_*` flags constrain the L*-classes. The two-sided flags
//! (`abundant`, `adequate`, `amiable`) constrain both; the `semi*` flags are
//! the same conditions on the tilde classes.
//!
//! A consequence worth spelling out: in a right-zero band all elements are
//! idempotent and share a single R*-class, so such bands compute as
//! left_abundant but not left_amiable here. Texts that call right regular
//! bands "left amiable" are using a different convention for the
//! one-sided notions; this crate reports what the definitions above
//! yield and leaves the reconciliation to the reader.
//!
//! Besides the flag report, this module checks the quasi-identity
//! axiomatization of amiability (eight implications over all element
//! tuples), the three quasi-identities whose failure pins down a pair of
//! noncommuting idempotents generating the witness semigroup M, and the
//! equational laws of the x_l map that hold in amiable semigroups avoiding
//! M.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cayley::{CayleyTable, ElementSet};
use crate::green::{GreenProfile, IdempotentMaps, NotAmiable, Partition};
use crate::pattern;

/// One of the sixteen classification properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Regular,
    Inverse,
    Abundant,
    Adequate,
    Amiable,
    LeftAbundant,
    LeftAdequate,
    LeftAmiable,
    RightAbundant,
    RightAdequate,
    RightAmiable,
    Semiabundant,
    Semiadequate,
    Semiamiable,
    IdempotentsCommute,
    AvoidsM,
}

impl Flag {
    pub const ALL: [Flag; 16] = [
        Flag::Regular,
        Flag::Inverse,
        Flag::Abundant,
        Flag::Adequate,
        Flag::Amiable,
        Flag::LeftAbundant,
        Flag::LeftAdequate,
        Flag::LeftAmiable,
        Flag::RightAbundant,
        Flag::RightAdequate,
        Flag::RightAmiable,
        Flag::Semiabundant,
        Flag::Semiadequate,
        Flag::Semiamiable,
        Flag::IdempotentsCommute,
        Flag::AvoidsM,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Flag::Regular => "regular",
            Flag::Inverse => "inverse",
            Flag::Abundant => "abundant",
            Flag::Adequate => "adequate",
            Flag::Amiable => "amiable",
            Flag::LeftAbundant => "left_abundant",
            Flag::LeftAdequate => "left_adequate",
            Flag::LeftAmiable => "left_amiable",
            Flag::RightAbundant => "right_abundant",
            Flag::RightAdequate => "right_adequate",
            Flag::RightAmiable => "right_amiable",
            Flag::Semiabundant => "semiabundant",
            Flag::Semiadequate => "semiadequate",
            Flag::Semiamiable => "semiamiable",
            Flag::IdempotentsCommute => "idempotents_commute",
            Flag::AvoidsM => "avoids_m",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown property {0:?}; expected one of regular, inverse, abundant, adequate, amiable, left_/right_ variants, semiabundant, semiadequate, semiamiable, idempotents_commute, avoids_m")]
pub struct ParseFlagError(pub String);

impl FromStr for Flag {
    type Err = ParseFlagError;

    fn from_str(s: &str) -> Result<Flag, ParseFlagError> {
        let lower = s.to_ascii_lowercase();
        Flag::ALL
            .into_iter()
            .find(|f| f.name() == lower)
            .ok_or_else(|| ParseFlagError(s.to_string()))
    }
}

/// Truth values of all sixteen flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Flags {
    pub regular: bool,
    pub inverse: bool,
    pub abundant: bool,
    pub adequate: bool,
    pub amiable: bool,
    pub left_abundant: bool,
    pub left_adequate: bool,
    pub left_amiable: bool,
    pub right_abundant: bool,
    pub right_adequate: bool,
    pub right_amiable: bool,
    pub semiabundant: bool,
    pub semiadequate: bool,
    pub semiamiable: bool,
    pub idempotents_commute: bool,
    pub avoids_m: bool,
}

impl Flags {
    pub fn get(&self, flag: Flag) -> bool {
        match flag {
            Flag::Regular => self.regular,
            Flag::Inverse => self.inverse,
            Flag::Abundant => self.abundant,
            Flag::Adequate => self.adequate,
            Flag::Amiable => self.amiable,
            Flag::LeftAbundant => self.left_abundant,
            Flag::LeftAdequate => self.left_adequate,
            Flag::LeftAmiable => self.left_amiable,
            Flag::RightAbundant => self.right_abundant,
            Flag::RightAdequate => self.right_adequate,
            Flag::RightAmiable => self.right_amiable,
            Flag::Semiabundant => self.semiabundant,
            Flag::Semiadequate => self.semiadequate,
            Flag::Semiamiable => self.semiamiable,
            Flag::IdempotentsCommute => self.idempotents_commute,
            Flag::AvoidsM => self.avoids_m,
        }
    }
}

/// Which partition a class witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RelationName {
    #[serde(rename = "L")]
    L,
    #[serde(rename = "R")]
    R,
    #[serde(rename = "L*")]
    LStar,
    #[serde(rename = "R*")]
    RStar,
    #[serde(rename = "L~")]
    LTilde,
    #[serde(rename = "R~")]
    RTilde,
}

impl fmt::Display for RelationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationName::L => "L",
            RelationName::R => "R",
            RelationName::LStar => "L*",
            RelationName::RStar => "R*",
            RelationName::LTilde => "L~",
            RelationName::RTilde => "R~",
        })
    }
}

/// Concrete evidence for a failed flag.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A class of `relation` containing no idempotent.
    ClassWithoutIdempotent {
        relation: RelationName,
        class: ElementSet,
    },
    /// A class of `relation` whose idempotent count differs from one.
    IdempotentCount {
        relation: RelationName,
        class: ElementSet,
        count: usize,
    },
    /// A pair of idempotents with ef != fe.
    NoncommutingIdempotents { e: usize, f: usize },
    /// An embedded copy of the four-element witness semigroup.
    Embedding { map: Vec<usize> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ClassWithoutIdempotent { relation, class } => {
                write!(f, "{relation}-class {class:?} has no idempotent")
            }
            Witness::IdempotentCount {
                relation,
                class,
                count,
            } => write!(f, "{relation}-class {class:?} has {count} idempotents"),
            Witness::NoncommutingIdempotents { e, f: g } => {
                write!(f, "idempotents {e} and {g} do not commute")
            }
            Witness::Embedding { map } => write!(f, "M embeds via {map:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FlagWitness {
    pub flag: Flag,
    pub witness: Witness,
}

/// Flag values plus one witness per failed flag, in [`Flag::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassificationReport {
    pub flags: Flags,
    pub witnesses: Vec<FlagWitness>,
}

impl ClassificationReport {
    pub fn witness_for(&self, flag: Flag) -> Option<&Witness> {
        self.witnesses
            .iter()
            .find(|w| w.flag == flag)
            .map(|w| &w.witness)
    }
}

/// First idempotent pair (e, f), e < f, with ef != fe.
pub fn find_noncommuting_idempotents(t: &CayleyTable) -> Option<(usize, usize)> {
    let idems = t.idempotents();
    for e in idems.iter() {
        for f in idems.iter() {
            if e < f && t.product(e, f) != t.product(f, e) {
                return Some((e, f));
            }
        }
    }
    None
}

pub fn classify(t: &CayleyTable) -> ClassificationReport {
    classify_with_profile(t, &GreenProfile::compute(t))
}

pub fn classify_with_profile(t: &CayleyTable, profile: &GreenProfile) -> ClassificationReport {
    let idems = t.idempotents();

    // First class violating the requirement, scanning the given partitions
    // in order; classes are scanned by least member.
    let no_idem = |parts: &[(&Partition, RelationName)]| -> Option<Witness> {
        for (p, relation) in parts {
            for class in p.classes() {
                if class.intersection(&idems).is_empty() {
                    return Some(Witness::ClassWithoutIdempotent {
                        relation: *relation,
                        class: *class,
                    });
                }
            }
        }
        None
    };
    let not_unique = |parts: &[(&Partition, RelationName)]| -> Option<Witness> {
        for (p, relation) in parts {
            for class in p.classes() {
                let count = class.intersection(&idems).len();
                if count != 1 {
                    return Some(Witness::IdempotentCount {
                        relation: *relation,
                        class: *class,
                        count,
                    });
                }
            }
        }
        None
    };

    let commute_witness =
        find_noncommuting_idempotents(t).map(|(e, f)| Witness::NoncommutingIdempotents { e, f });
    let commute = commute_witness.is_none();

    let regular_w = no_idem(&[
        (&profile.l, RelationName::L),
        (&profile.r, RelationName::R),
    ]);
    let inverse_w = not_unique(&[
        (&profile.l, RelationName::L),
        (&profile.r, RelationName::R),
    ]);
    let abundant_w = no_idem(&[
        (&profile.l_star, RelationName::LStar),
        (&profile.r_star, RelationName::RStar),
    ]);
    let amiable_w = not_unique(&[
        (&profile.l_star, RelationName::LStar),
        (&profile.r_star, RelationName::RStar),
    ]);
    let left_abundant_w = no_idem(&[(&profile.r_star, RelationName::RStar)]);
    let left_amiable_w = not_unique(&[(&profile.r_star, RelationName::RStar)]);
    let right_abundant_w = no_idem(&[(&profile.l_star, RelationName::LStar)]);
    let right_amiable_w = not_unique(&[(&profile.l_star, RelationName::LStar)]);
    let semiabundant_w = no_idem(&[
        (&profile.l_tilde, RelationName::LTilde),
        (&profile.r_tilde, RelationName::RTilde),
    ]);
    let semiamiable_w = not_unique(&[
        (&profile.l_tilde, RelationName::LTilde),
        (&profile.r_tilde, RelationName::RTilde),
    ]);

    // The fast pair scan is only sound under amiability; otherwise fall
    // back to the general embedding search.
    let m_witness = if profile.maps.is_some() {
        pattern::m_pair_scan(t)
    } else {
        pattern::find_embedding(t, pattern::m_table())
    };
    let avoids_m_w = m_witness.map(|w| Witness::Embedding { map: w.map });

    // adequate = abundant and commuting idempotents; the witness is
    // whichever half failed first.
    let adequate_w = |abundant_w: &Option<Witness>| -> Option<Witness> {
        abundant_w.clone().or_else(|| commute_witness.clone())
    };

    let flags = Flags {
        regular: regular_w.is_none(),
        inverse: inverse_w.is_none(),
        abundant: abundant_w.is_none(),
        adequate: abundant_w.is_none() && commute,
        amiable: amiable_w.is_none(),
        left_abundant: left_abundant_w.is_none(),
        left_adequate: left_abundant_w.is_none() && commute,
        left_amiable: left_amiable_w.is_none(),
        right_abundant: right_abundant_w.is_none(),
        right_adequate: right_abundant_w.is_none() && commute,
        right_amiable: right_amiable_w.is_none(),
        semiabundant: semiabundant_w.is_none(),
        semiadequate: semiabundant_w.is_none() && commute,
        semiamiable: semiamiable_w.is_none(),
        idempotents_commute: commute,
        avoids_m: avoids_m_w.is_none(),
    };

    let mut witnesses = Vec::new();
    let mut push = |flag: Flag, w: Option<Witness>| {
        if let Some(witness) = w {
            witnesses.push(FlagWitness { flag, witness });
        }
    };
    push(Flag::Regular, regular_w);
    push(Flag::Inverse, inverse_w);
    push(Flag::Adequate, adequate_w(&abundant_w));
    push(Flag::Abundant, abundant_w);
    push(Flag::Amiable, amiable_w);
    push(Flag::LeftAdequate, adequate_w(&left_abundant_w));
    push(Flag::LeftAbundant, left_abundant_w);
    push(Flag::LeftAmiable, left_amiable_w);
    push(Flag::RightAdequate, adequate_w(&right_abundant_w));
    push(Flag::RightAbundant, right_abundant_w);
    push(Flag::RightAmiable, right_amiable_w);
    push(Flag::Semiadequate, adequate_w(&semiabundant_w));
    push(Flag::Semiabundant, semiabundant_w);
    push(Flag::Semiamiable, semiamiable_w);
    push(Flag::IdempotentsCommute, commute_witness);
    push(Flag::AvoidsM, avoids_m_w);
    witnesses.sort_by_key(|w| w.flag);

    ClassificationReport { flags, witnesses }
}

/// The three quasi-identities characterizing M-avoidance over amiable
/// semigroups. Each premise includes xx = x and yy = y; the conclusion is
/// always xy = yx.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum QuasiIdentity {
    /// xyx = xy
    Qi1,
    /// xyx = yx
    Qi2,
    /// xyxy = xy
    Qi3,
}

impl QuasiIdentity {
    pub const ALL: [QuasiIdentity; 3] = [QuasiIdentity::Qi1, QuasiIdentity::Qi2, QuasiIdentity::Qi3];

    pub fn name(&self) -> &'static str {
        match self {
            QuasiIdentity::Qi1 => "QI-1",
            QuasiIdentity::Qi2 => "QI-2",
            QuasiIdentity::Qi3 => "QI-3",
        }
    }

    fn premise(&self, t: &CayleyTable, x: usize, y: usize) -> bool {
        if !t.is_idempotent(x) || !t.is_idempotent(y) {
            return false;
        }
        let xy = t.product(x, y);
        match self {
            QuasiIdentity::Qi1 => t.product(xy, x) == xy,
            QuasiIdentity::Qi2 => t.product(xy, x) == t.product(y, x),
            QuasiIdentity::Qi3 => t.product(xy, xy) == xy,
        }
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum QuasiOutcome {
    Satisfied,
    /// Premise holds but xy != yx, at the first such pair in index order.
    Violated {
        x: usize,
        y: usize,
    },
}

pub fn check_quasi_identity(t: &CayleyTable, which: QuasiIdentity) -> QuasiOutcome {
    for x in 0..t.order() {
        for y in 0..t.order() {
            if which.premise(t, x, y) && t.product(x, y) != t.product(y, x) {
                return QuasiOutcome::Violated { x, y };
            }
        }
    }
    QuasiOutcome::Satisfied
}

/// The eight quasi-identities of the amiable axiomatization, as pointwise
/// checks over an amiable table with its x_l / x_r maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum AxiomId {
    /// x_l x_l = x_l
    EllIdempotent,
    /// x_r x_r = x_r
    RIdempotent,
    /// x x_l = x
    EllRightIdentity,
    /// x_r x = x
    RLeftIdentity,
    /// xy = xz implies x_l y = x_l z
    EllSharesKernel,
    /// yx = zx implies y x_r = z x_r
    RSharesKernel,
    /// idempotents x, y with xy = x and yx = y are equal
    LRelatedIdempotentsEqual,
    /// idempotents x, y with xy = y and yx = x are equal
    RRelatedIdempotentsEqual,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AxiomViolation {
    pub axiom: AxiomId,
    /// The instantiating elements, in quantifier order.
    pub tuple: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum AxiomAudit {
    Pass,
    Violation(AxiomViolation),
}

/// Recomputes all eight axioms pointwise. Amiability is the hypothesis;
/// non-amiable input is rejected rather than reported as a violation.
pub fn verify_amiable_axioms(t: &CayleyTable) -> Result<AxiomAudit, NotAmiable> {
    let (l_star, r_star) = crate::green::green_star(t);
    let maps = crate::green::idempotent_maps(t, &l_star, &r_star)?;
    Ok(audit_axioms(t, &maps))
}

fn audit_axioms(t: &CayleyTable, maps: &IdempotentMaps) -> AxiomAudit {
    let n = t.order();
    let violation = |axiom, tuple| AxiomAudit::Violation(AxiomViolation { axiom, tuple });
    for x in 0..n {
        let xl = maps.ell[x];
        let xr = maps.r[x];
        if t.product(xl, xl) != xl {
            return violation(AxiomId::EllIdempotent, vec![x]);
        }
        if t.product(xr, xr) != xr {
            return violation(AxiomId::RIdempotent, vec![x]);
        }
        if t.product(x, xl) != x {
            return violation(AxiomId::EllRightIdentity, vec![x]);
        }
        if t.product(xr, x) != x {
            return violation(AxiomId::RLeftIdentity, vec![x]);
        }
    }
    for x in 0..n {
        let xl = maps.ell[x];
        let xr = maps.r[x];
        for y in 0..n {
            for z in 0..n {
                if t.product(x, y) == t.product(x, z) && t.product(xl, y) != t.product(xl, z) {
                    return violation(AxiomId::EllSharesKernel, vec![x, y, z]);
                }
                if t.product(y, x) == t.product(z, x) && t.product(y, xr) != t.product(z, xr) {
                    return violation(AxiomId::RSharesKernel, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !t.is_idempotent(x) || !t.is_idempotent(y) {
                continue;
            }
            let (xy, yx) = (t.product(x, y), t.product(y, x));
            if xy == x && yx == y && x != y {
                return violation(AxiomId::LRelatedIdempotentsEqual, vec![x, y]);
            }
            if xy == y && yx == x && x != y {
                return violation(AxiomId::RRelatedIdempotentsEqual, vec![x, y]);
            }
        }
    }
    AxiomAudit::Pass
}

/// First (x, y) with (x_l y)_l != (xy)_l. Holds in every amiable semigroup.
pub fn ell_product_law_violation(t: &CayleyTable, maps: &IdempotentMaps) -> Option<(usize, usize)> {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            let lhs = maps.ell[t.product(maps.ell[x], y)];
            let rhs = maps.ell[t.product(x, y)];
            if lhs != rhs {
                return Some((x, y));
            }
        }
    }
    None
}

/// First (x, c) with c idempotent violating x (xc)_l = xc or
/// x_l (xc)_l = x_l c. Holds in amiable semigroups avoiding M.
pub fn idempotent_absorption_violation(
    t: &CayleyTable,
    maps: &IdempotentMaps,
) -> Option<(usize, usize)> {
    let idems = t.idempotents();
    for x in 0..t.order() {
        for c in idems.iter() {
            let xc = t.product(x, c);
            let xc_l = maps.ell[xc];
            if t.product(x, xc_l) != xc {
                return Some((x, c));
            }
            if t.product(maps.ell[x], xc_l) != t.product(maps.ell[x], c) {
                return Some((x, c));
            }
        }
    }
    None
}

/// First (x, c) with c idempotent, cx = xc, but c x_l != x_l c. Holds in
/// amiable semigroups avoiding M.
pub fn commutation_transfer_violation(
    t: &CayleyTable,
    maps: &IdempotentMaps,
) -> Option<(usize, usize)> {
    for x in 0..t.order() {
        let xl = maps.ell[x];
        for c in t.idempotents().iter() {
            if t.product(c, x) == t.product(x, c) && t.product(c, xl) != t.product(xl, c) {
                return Some((x, c));
            }
        }
    }
    None
}
