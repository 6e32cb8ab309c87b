//! Embedding detection: copies of the four-element witness semigroup M,
//! and injective homomorphisms from arbitrary small patterns.
//!
//! M is generated by two noncommuting idempotents a, b subject to
//! aba = bab = ab; its elements are a, b, ab, ba (indices 0..4 below). In
//! an amiable semigroup, a pair of noncommuting idempotents generates a
//! copy of M as soon as abab = ab, so a quadratic pair scan suffices there.
//! Without amiability that shortcut is unsound (a two-element left-zero
//! band already passes the pair test but is too small to contain M), so
//! the general search must be used instead.

use std::sync::OnceLock;

use crate::cayley::{injective_hom_search, CayleyTable, ElementSet};
use crate::green::{green_star, idempotent_maps, NotAmiable};

/// The witness semigroup M on elements a=0, b=1, ab=2, ba=3.
pub fn m_table() -> &'static CayleyTable {
    static M: OnceLock<CayleyTable> = OnceLock::new();
    M.get_or_init(|| {
        let rows = vec![
            vec![0, 2, 2, 2],
            vec![3, 1, 2, 3],
            vec![2, 2, 2, 2],
            vec![3, 2, 2, 2],
        ];
        CayleyTable::validate(4, &rows)
            .expect("the witness table is associative")
            .with_name("m")
    })
}

/// An injective homomorphism: pattern element `i` maps to `map[i]`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct EmbeddingWitness {
    pub map: Vec<usize>,
}

/// Pair scan for a copy of M, sound only under amiability: the first
/// ordered pair (a, b) of distinct noncommuting idempotents with ab
/// idempotent generates one, mapped as [a, b, ab, ba].
pub(crate) fn m_pair_scan(t: &CayleyTable) -> Option<EmbeddingWitness> {
    let idems = t.idempotents();
    for a in idems.iter() {
        for b in idems.iter() {
            if a == b {
                continue;
            }
            let ab = t.product(a, b);
            let ba = t.product(b, a);
            if ab != ba && t.product(ab, ab) == ab {
                let map = vec![a, b, ab, ba];
                debug_assert!(
                    find_embedding(t, m_table()).is_some(),
                    "pair scan disagrees with the general search on {map:?}"
                );
                return Some(EmbeddingWitness { map });
            }
        }
    }
    None
}

/// Finds an embedded copy of M in an amiable semigroup via the pair scan.
/// Non-amiable input is an error; use [`find_m_relaxed`] for arbitrary
/// tables.
pub fn find_m(t: &CayleyTable) -> Result<Option<EmbeddingWitness>, NotAmiable> {
    let (l_star, r_star) = green_star(t);
    idempotent_maps(t, &l_star, &r_star)?;
    Ok(m_pair_scan(t))
}

/// Finds an embedded copy of M in any table: the pair scan when the table
/// is amiable, the general embedding search otherwise.
pub fn find_m_relaxed(t: &CayleyTable) -> Option<EmbeddingWitness> {
    let (l_star, r_star) = green_star(t);
    match idempotent_maps(t, &l_star, &r_star) {
        Ok(_) => m_pair_scan(t),
        Err(_) => find_embedding(t, m_table()),
    }
}

/// Searches for an injective homomorphism from `pattern` into `host` by
/// backtracking over pattern elements in index order, forcing images of
/// products as soon as both factors are mapped. Candidate images must
/// match on idempotency (injectivity forces non-idempotents to
/// non-idempotents). Returns the first witness in lexicographic map order.
pub fn find_embedding(host: &CayleyTable, pattern: &CayleyTable) -> Option<EmbeddingWitness> {
    if pattern.order() > host.order() {
        return None;
    }
    let host_idems = host.idempotents();
    let host_non_idems: ElementSet = (0..host.order())
        .filter(|&x| !host_idems.contains(x))
        .collect();
    let candidates: Vec<ElementSet> = (0..pattern.order())
        .map(|p| {
            if pattern.is_idempotent(p) {
                host_idems
            } else {
                host_non_idems
            }
        })
        .collect();
    injective_hom_search(pattern, host, &candidates).map(|map| EmbeddingWitness { map })
}

/// Outcome of auditing the three equivalent conditions for a noncommuting
/// idempotent pair to generate a copy of M.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum EquivalenceAudit {
    Pass,
    /// A pair where aba = ab, bab = ab, abab = ab fail to agree.
    Disagreement {
        a: usize,
        b: usize,
        aba_eq_ab: bool,
        bab_eq_ab: bool,
        abab_eq_ab: bool,
    },
}

/// For every ordered pair of distinct noncommuting idempotents in an
/// amiable table, the conditions aba = ab, bab = ab, abab = ab must agree
/// pairwise (all hold or all fail). This is the independent audit of the
/// shortcut used by [`find_m`].
pub fn check_avoids_m_equivalences(t: &CayleyTable) -> Result<EquivalenceAudit, NotAmiable> {
    let (l_star, r_star) = green_star(t);
    idempotent_maps(t, &l_star, &r_star)?;
    let idems = t.idempotents();
    for a in idems.iter() {
        for b in idems.iter() {
            let ab = t.product(a, b);
            let ba = t.product(b, a);
            if a == b || ab == ba {
                continue;
            }
            let aba_eq_ab = t.product(ab, a) == ab;
            let bab_eq_ab = t.product(ba, b) == ab;
            let abab_eq_ab = t.product(ab, ab) == ab;
            if aba_eq_ab != bab_eq_ab || bab_eq_ab != abab_eq_ab {
                return Ok(EquivalenceAudit::Disagreement {
                    a,
                    b,
                    aba_eq_ab,
                    bab_eq_ab,
                    abab_eq_ab,
                });
            }
        }
    }
    Ok(EquivalenceAudit::Pass)
}

/// Per-table consistency check of the characterization of adequacy among
/// amiable semigroups: adequate exactly when no copy of M embeds. The
/// infinite witness F cannot embed in a finite table, so F-avoidance is
/// recorded as vacuously true.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AdequacyCheck {
    pub adequate: bool,
    pub m_embedding: Option<EmbeddingWitness>,
    /// Always true on finite input; listed to make the full avoidance
    /// condition explicit.
    pub avoids_f: bool,
    /// adequate == m_embedding.is_none(); expected true for every table.
    pub consistent: bool,
}

pub fn check_adequacy_characterization(t: &CayleyTable) -> Result<AdequacyCheck, NotAmiable> {
    let (l_star, r_star) = green_star(t);
    idempotent_maps(t, &l_star, &r_star)?;
    // An amiable table is abundant, so adequacy reduces to commuting
    // idempotents.
    let adequate = crate::classify::find_noncommuting_idempotents(t).is_none();
    let m_embedding = m_pair_scan(t);
    let consistent = adequate == m_embedding.is_none();
    Ok(AdequacyCheck {
        adequate,
        m_embedding,
        avoids_f: true,
        consistent,
    })
}
