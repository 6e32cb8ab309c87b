//! Green's relations and their starred and tilde refinements.
//!
//! For a finite semigroup S with identity-adjoined monoid S1:
//!
//! * `x L y` iff S1.x = S1.y, and `x R y` iff x.S1 = y.S1;
//! * `x L* y` iff for all a, b in S1: xa = xb exactly when ya = yb
//!   (equality of right-multiplication kernels), `R*` dually;
//! * `x L~ y` iff the same idempotents of S fix x and y on the right
//!   (xe = x exactly when ye = y, for e ranging over E(S) only), `R~` dually.
//!
//! Each classic class is contained in a starred class, and each starred
//! class in a tilde class. The starred relations are computed via kernel
//! bitsets in O(n^3); an O(n^4) pairwise definition-chasing oracle lives in
//! the test suite to keep this honest.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::cayley::{CayleyTable, ElementSet};

/// A partition of the element indices `0..n`. Classes are ordered by least
/// member, so two equal partitions compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<u32>,
    classes: Vec<ElementSet>,
}

impl Partition {
    /// Groups `0..n` by equal keys. Class indices follow first occurrence,
    /// which is the same as ordering classes by least member.
    pub fn from_keys<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Partition {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let mut class_of = Vec::new();
        let mut classes: Vec<ElementSet> = Vec::new();
        for (x, key) in keys.into_iter().enumerate() {
            let next = classes.len() as u32;
            let id = *ids.entry(key).or_insert(next);
            if id == next {
                classes.push(ElementSet::EMPTY);
            }
            classes[id as usize].insert(x);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn class_set(&self, x: usize) -> &ElementSet {
        &self.classes[self.class_of(x)]
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of underlying elements.
    pub fn ground_size(&self) -> usize {
        self.class_of.len()
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.class_of.len() == coarser.class_of.len()
            && self
                .class_of
                .iter()
                .enumerate()
                .all(|(x, _)| coarser.same_class(x, self.classes[self.class_of(x)].min_element().unwrap()))
    }

    pub fn is_equality(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn is_universal(&self) -> bool {
        self.classes.len() == 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, class) in self.classes.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{class:?}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.classes.iter())
    }
}

/// Classic (L, R): principal left/right ideals in the identity-adjoined
/// monoid.
pub fn green_classic(t: &CayleyTable) -> (Partition, Partition) {
    let s1 = t.adjoin_identity();
    let n = t.order();
    let n1 = s1.order();
    let left = Partition::from_keys((0..n).map(|x| {
        // S1.x as a set; products stay inside the original elements.
        let ideal: ElementSet = (0..n1).map(|s| s1.product(s, x)).collect();
        ideal
    }));
    let right = Partition::from_keys((0..n).map(|x| {
        let ideal: ElementSet = (0..n1).map(|s| s1.product(x, s)).collect();
        ideal
    }));
    (left, right)
}

/// Kernel bitset of the action `a -> xa` over S1, one bit per ordered pair.
fn action_kernel(s1: &CayleyTable, x: usize, left: bool) -> Vec<u64> {
    let n1 = s1.order();
    let row: Vec<u8> = (0..n1)
        .map(|a| {
            if left {
                s1.product(x, a) as u8
            } else {
                s1.product(a, x) as u8
            }
        })
        .collect();
    let mut bits = vec![0u64; (n1 * n1).div_ceil(64)];
    for a in 0..n1 {
        for b in 0..n1 {
            if row[a] == row[b] {
                let k = a * n1 + b;
                bits[k >> 6] |= 1 << (k & 63);
            }
        }
    }
    bits
}

/// Starred (L*, R*): equal multiplication kernels over S1.
pub fn green_star(t: &CayleyTable) -> (Partition, Partition) {
    let s1 = t.adjoin_identity();
    let n = t.order();
    let l = Partition::from_keys((0..n).map(|x| action_kernel(&s1, x, true)));
    let r = Partition::from_keys((0..n).map(|x| action_kernel(&s1, x, false)));
    (l, r)
}

/// Tilde (L~, R~): equal idempotent fixer sets, over E(S) with no identity
/// adjoined.
pub fn green_tilde(t: &CayleyTable) -> (Partition, Partition) {
    let n = t.order();
    let idems = t.idempotents();
    let l = Partition::from_keys((0..n).map(|x| {
        let fixers: ElementSet = idems.iter().filter(|&e| t.product(x, e) == x).collect();
        fixers
    }));
    let r = Partition::from_keys((0..n).map(|x| {
        let fixers: ElementSet = idems.iter().filter(|&e| t.product(e, x) == x).collect();
        fixers
    }));
    (l, r)
}

/// Which starred relation a uniqueness failure was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum StarSide {
    LStar,
    RStar,
}

impl fmt::Display for StarSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StarSide::LStar => "L*",
            StarSide::RStar => "R*",
        })
    }
}

/// A starred class without exactly one idempotent, blocking the x_l / x_r
/// maps. Reports the first offending class, L* side checked before R*.
#[derive(Debug, Clone, PartialEq, Eq, Error, serde::Serialize)]
#[error("{side}-class {class:?} contains {idempotent_count} idempotents, expected exactly 1")]
pub struct NotAmiable {
    pub side: StarSide,
    pub class: ElementSet,
    pub idempotent_count: usize,
}

/// For each element, the unique idempotent in its L*-class (`ell`) and in
/// its R*-class (`r`). Exists exactly when the semigroup is amiable.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IdempotentMaps {
    pub ell: Vec<usize>,
    pub r: Vec<usize>,
}

pub fn idempotent_maps(
    t: &CayleyTable,
    l_star: &Partition,
    r_star: &Partition,
) -> Result<IdempotentMaps, NotAmiable> {
    let idems = t.idempotents();
    let pick = |partition: &Partition, side: StarSide| -> Result<Vec<usize>, NotAmiable> {
        let mut reps = vec![0usize; partition.ground_size()];
        for class in partition.classes() {
            let in_class = class.intersection(&idems);
            if in_class.len() != 1 {
                return Err(NotAmiable {
                    side,
                    class: *class,
                    idempotent_count: in_class.len(),
                });
            }
            let e = in_class.min_element().unwrap();
            for x in class.iter() {
                reps[x] = e;
            }
        }
        Ok(reps)
    };
    let ell = pick(l_star, StarSide::LStar)?;
    let r = pick(r_star, StarSide::RStar)?;
    Ok(IdempotentMaps { ell, r })
}

/// Every Green-type partition of one table, computed in one pass.
/// `maps` is present exactly when the table is amiable.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GreenProfile {
    pub l: Partition,
    pub r: Partition,
    pub l_star: Partition,
    pub r_star: Partition,
    pub l_tilde: Partition,
    pub r_tilde: Partition,
    pub maps: Option<IdempotentMaps>,
}

impl GreenProfile {
    pub fn compute(t: &CayleyTable) -> GreenProfile {
        let (l, r) = green_classic(t);
        let (l_star, r_star) = green_star(t);
        let (l_tilde, r_tilde) = green_tilde(t);
        let maps = idempotent_maps(t, &l_star, &r_star).ok();
        GreenProfile {
            l,
            r,
            l_star,
            r_star,
            l_tilde,
            r_tilde,
            maps,
        }
    }

    /// L refines L* refines L~, and the same on the right side.
    pub fn refinement_chain_holds(&self) -> bool {
        self.l.refines(&self.l_star)
            && self.l_star.refines(&self.l_tilde)
            && self.r.refines(&self.r_star)
            && self.r_star.refines(&self.r_tilde)
    }
}
