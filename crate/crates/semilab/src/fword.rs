//! The infinite semigroup F generated by two idempotents a, b subject only
//! to aa = a and bb = b, in alternating-word normal form.
//!
//! Every element of F is an alternating word in a and b, so a pair (first
//! letter, length) is a complete normal form: rewriting aa -> a, bb -> b is
//! confluent and length-reducing, and multiplication is concatenation with
//! at most one boundary merge. The only idempotents are a and b.
//!
//! F is also realized concretely by 2x2 integer matrices generated by
//! A = `[[1,0],[1,0]]` and B = `[[1,1],[0,0]]`: with C = AB and D = BA, the
//! image is {2^n A, 2^n B, 2^n C, 2^n D | n >= 0}, and [`FWord::to_matrix`]
//! lands there in closed form. Entries grow like 2^(len/2), hence the
//! unbounded integers.
//!
//! Claims about the infinite semigroup are verified on length-bounded
//! windows. Distinctness and separation checks are exact; the kernel
//! cohesion check in [`verify_f_star_window`] is a necessary-condition test
//! only (no finite window can confirm a statement quantified over all of
//! F), which is the strongest check enumeration can give.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    fn ch(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ch())
    }
}

/// An alternating word over {a, b}: the word of length `len` starting at
/// `first`. Length is always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct FWord {
    first: Letter,
    len: u64,
}

impl FWord {
    /// Panics if `len` is zero; there is no empty element.
    pub fn new(first: Letter, len: u64) -> FWord {
        assert!(len >= 1, "alternating words are nonempty");
        FWord { first, len }
    }

    pub fn first(&self) -> Letter {
        self.first
    }

    /// Words are nonempty by construction, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn last(&self) -> Letter {
        if self.len % 2 == 1 {
            self.first
        } else {
            self.first.other()
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.len == 1
    }

    /// The unique idempotent in the L*-class: the single letter `last(x)`.
    /// Satisfies x * ell(x) = x.
    pub fn ell(&self) -> FWord {
        FWord::new(self.last(), 1)
    }

    /// The unique idempotent in the R*-class: the single letter `first(x)`.
    /// Satisfies r(x) * x = x.
    pub fn r(&self) -> FWord {
        FWord::new(self.first, 1)
    }

    /// Image in the matrix model, in closed form: odd length 2n+1 maps to
    /// 2^n times the first letter's matrix; even length 2m maps to 2^(m-1)
    /// times C or D according to the first letter.
    pub fn to_matrix(&self) -> Mat2 {
        if self.len % 2 == 1 {
            Mat2::letter(self.first).scale_pow2(self.len / 2)
        } else {
            let base = match self.first {
                Letter::A => Mat2::c(),
                Letter::B => Mat2::d(),
            };
            base.scale_pow2(self.len / 2 - 1)
        }
    }
}

impl Mul for FWord {
    type Output = FWord;

    /// Concatenation with a single boundary merge when last(x) = first(y).
    fn mul(self, rhs: FWord) -> FWord {
        let merge = self.last() == rhs.first;
        let len = self
            .len
            .checked_add(rhs.len)
            .and_then(|s| s.checked_sub(merge as u64))
            .expect("word length overflow");
        FWord {
            first: self.first,
            len,
        }
    }
}

/// Canonical text form: "a", "b", "(ab)^m", "(ba)^m", "(ab)^na", "(ba)^nb".
impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = (self.first, self.first.other());
        if self.len == 1 {
            write!(f, "{x}")
        } else if self.len.is_multiple_of(2) {
            write!(f, "({x}{y})^{}", self.len / 2)
        } else {
            write!(f, "({x}{y})^{}{x}", self.len / 2)
        }
    }
}

/// Cap on parsed exponents, keeping word lengths far from u64 overflow so
/// products never wrap.
const MAX_EXPONENT: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordError {
    #[error("empty input")]
    Empty,
    #[error("column {col}: expected {expected}, found {found:?}")]
    Unexpected {
        col: usize,
        expected: &'static str,
        found: char,
    },
    #[error("column {col}: unexpected end of input, expected {expected}")]
    UnexpectedEnd { col: usize, expected: &'static str },
    #[error("column {col}: the letters inside (..) must alternate")]
    NotAlternating { col: usize },
    #[error("column {col}: exponent does not fit (cap is 2^32)")]
    ExponentTooLarge { col: usize },
    #[error("column {col}: trailing letter must restart the alternation")]
    TrailingLetterMismatch { col: usize },
    #[error("\"(xy)^0\" with no trailing letter denotes the empty word, which is not an element")]
    EmptyWord,
    #[error("column {col}: trailing input after the word")]
    TrailingInput { col: usize },
}

/// Grammar: `word := letter | "(" letter letter ")^" nat letter?`, where
/// the bracketed letters must differ and a trailing letter must equal the
/// opening one. Columns are 1-based byte positions.
fn take(
    chars: &[(usize, char)],
    pos: &mut usize,
    end_col: usize,
    expected: &'static str,
) -> Result<(usize, char), ParseWordError> {
    let item = chars
        .get(*pos)
        .copied()
        .ok_or(ParseWordError::UnexpectedEnd {
            col: end_col,
            expected,
        });
    *pos += 1;
    item
}

fn as_letter(c: char) -> Option<Letter> {
    match c {
        'a' => Some(Letter::A),
        'b' => Some(Letter::B),
        _ => None,
    }
}

impl FromStr for FWord {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<FWord, ParseWordError> {
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let end = s.len() + 1;
        let mut pos = 0usize;

        let (_, c0) =
            take(&chars, &mut pos, end, "a word").map_err(|_| ParseWordError::Empty)?;
        if let Some(l) = as_letter(c0) {
            return match take(&chars, &mut pos, end, "end of input") {
                Err(_) => Ok(FWord::new(l, 1)),
                Ok((i, _)) => Err(ParseWordError::TrailingInput { col: i + 1 }),
            };
        }
        if c0 != '(' {
            return Err(ParseWordError::Unexpected {
                col: 1,
                expected: "'a', 'b', or '('",
                found: c0,
            });
        }
        let (i1, c1) = take(&chars, &mut pos, end, "a letter")?;
        let x = as_letter(c1).ok_or(ParseWordError::Unexpected {
            col: i1 + 1,
            expected: "'a' or 'b'",
            found: c1,
        })?;
        let (i2, c2) = take(&chars, &mut pos, end, "a letter")?;
        let y = as_letter(c2).ok_or(ParseWordError::Unexpected {
            col: i2 + 1,
            expected: "'a' or 'b'",
            found: c2,
        })?;
        if y != x.other() {
            return Err(ParseWordError::NotAlternating { col: i2 + 1 });
        }
        let (i3, c3) = take(&chars, &mut pos, end, "')'")?;
        if c3 != ')' {
            return Err(ParseWordError::Unexpected {
                col: i3 + 1,
                expected: "')'",
                found: c3,
            });
        }
        let (i4, c4) = take(&chars, &mut pos, end, "'^'")?;
        if c4 != '^' {
            return Err(ParseWordError::Unexpected {
                col: i4 + 1,
                expected: "'^'",
                found: c4,
            });
        }
        let (digits_at, first_digit) = take(&chars, &mut pos, end, "a digit")?;
        if !first_digit.is_ascii_digit() {
            return Err(ParseWordError::Unexpected {
                col: digits_at + 1,
                expected: "a digit",
                found: first_digit,
            });
        }
        let mut exponent = first_digit.to_digit(10).unwrap() as u64;
        while let Some(&(_, c)) = chars.get(pos) {
            let Some(d) = c.to_digit(10) else { break };
            pos += 1;
            exponent = exponent
                .checked_mul(10)
                .and_then(|e| e.checked_add(d as u64))
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseWordError::ExponentTooLarge { col: digits_at + 1 })?;
        }
        let trailing = match take(&chars, &mut pos, end, "a trailing letter or end of input") {
            Err(_) => None,
            Ok((i, c)) => {
                let l = as_letter(c).ok_or(ParseWordError::Unexpected {
                    col: i + 1,
                    expected: "'a', 'b', or end of input",
                    found: c,
                })?;
                if l != x {
                    return Err(ParseWordError::TrailingLetterMismatch { col: i + 1 });
                }
                if let Ok((j, _)) = take(&chars, &mut pos, end, "end of input") {
                    return Err(ParseWordError::TrailingInput { col: j + 1 });
                }
                Some(l)
            }
        };
        let len = 2 * exponent + trailing.is_some() as u64;
        if len == 0 {
            return Err(ParseWordError::EmptyWord);
        }
        Ok(FWord::new(x, len))
    }
}

/// A 2x2 matrix over unbounded nonnegative integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e11: BigUint,
    pub e12: BigUint,
    pub e21: BigUint,
    pub e22: BigUint,
}

impl Mat2 {
    pub fn from_u32s(e11: u32, e12: u32, e21: u32, e22: u32) -> Mat2 {
        Mat2 {
            e11: e11.into(),
            e12: e12.into(),
            e21: e21.into(),
            e22: e22.into(),
        }
    }

    pub fn letter(l: Letter) -> Mat2 {
        match l {
            Letter::A => Mat2::from_u32s(1, 0, 1, 0),
            Letter::B => Mat2::from_u32s(1, 1, 0, 0),
        }
    }

    /// C = AB.
    pub fn c() -> Mat2 {
        Mat2::from_u32s(1, 1, 1, 1)
    }

    /// D = BA.
    pub fn d() -> Mat2 {
        Mat2::from_u32s(2, 0, 0, 0)
    }

    pub fn scale_pow2(&self, k: u64) -> Mat2 {
        Mat2 {
            e11: &self.e11 << k,
            e12: &self.e12 << k,
            e21: &self.e21 << k,
            e22: &self.e22 << k,
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            e12: &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            e21: &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            e22: &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

/// All words of length at most `max_len`, ordered by (length, first
/// letter); exactly 2 * max_len of them.
pub fn window(max_len: u64) -> Vec<FWord> {
    assert!(max_len >= 1);
    (1..=max_len)
        .flat_map(|len| [FWord::new(Letter::A, len), FWord::new(Letter::B, len)])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("matrix images collide: {x} and {y} both map to {matrix}")]
pub struct MatrixCollision {
    pub x: FWord,
    pub y: FWord,
    pub matrix: String,
}

/// Pairwise distinctness of the window, both as normal forms and as matrix
/// images. The matrix side is the independent oracle: the normal forms are
/// distinct by construction, and injectivity of the matrix model confirms
/// that the words they stand for really are distinct elements.
pub fn verify_f_distinct(max_len: u64) -> Result<(), MatrixCollision> {
    let words = window(max_len);
    let matrices: Vec<Mat2> = words.iter().map(FWord::to_matrix).collect();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            debug_assert_ne!(words[i], words[j]);
            if matrices[i] == matrices[j] {
                return Err(MatrixCollision {
                    x: words[i],
                    y: words[j],
                    matrix: matrices[i].to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSide {
    LStar,
    RStar,
}

impl fmt::Display for WindowSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowSide::LStar => "L*",
            WindowSide::RStar => "R*",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarWindowViolation {
    /// Words in one claimed class whose multiplication kernels disagree on
    /// a window pair. `u` or `v` absent means the adjoined identity.
    #[error("{side}: {x} and {y} share a class but kernels differ at ({u:?}, {v:?})")]
    Cohesion {
        side: WindowSide,
        x: FWord,
        y: FWord,
        u: Option<FWord>,
        v: Option<FWord>,
    },
    /// Words in different claimed classes that no short pair separates.
    #[error("{side}: no length-<=2 pair separates {x} from {y}")]
    Separation { side: WindowSide, x: FWord, y: FWord },
}

/// Window audit of the claimed L*/R*-classes of F (same last letter, same
/// first letter respectively).
///
/// Cohesion: for same-class x, y, no test pair (u, v) over the window plus
/// the adjoined identity tells them apart (xu = xv but yu != yv). All
/// products stay within length 2 * max_len, so the check is exact on the
/// window but remains a necessary condition for the infinite claim.
/// Separation: for differently classed x, y, a distinguishing pair with
/// entries of length at most 2 must exist (and is searched for
/// exhaustively).
pub fn verify_f_star_window(max_len: u64) -> Result<(), StarWindowViolation> {
    assert!(max_len >= 4, "window too small to be meaningful");
    let words = window(max_len);
    // None stands for the adjoined identity.
    let tests: Vec<Option<FWord>> = std::iter::once(None)
        .chain(words.iter().copied().map(Some))
        .collect();
    let short_tests: Vec<Option<FWord>> = std::iter::once(None)
        .chain(window(2).into_iter().map(Some))
        .collect();

    let mul_right = |x: FWord, u: &Option<FWord>| u.map_or(x, |u| x * u);
    let mul_left = |x: FWord, u: &Option<FWord>| u.map_or(x, |u| u * x);

    for side in [WindowSide::LStar, WindowSide::RStar] {
        let class_key = |w: &FWord| match side {
            WindowSide::LStar => w.last(),
            WindowSide::RStar => w.first(),
        };
        let act: fn(FWord, &Option<FWord>) -> FWord = match side {
            WindowSide::LStar => mul_right,
            WindowSide::RStar => mul_left,
        };
        for (i, &x) in words.iter().enumerate() {
            for &y in &words[i + 1..] {
                if class_key(&x) == class_key(&y) {
                    for u in &tests {
                        for v in &tests {
                            let xs = act(x, u) == act(x, v);
                            let ys = act(y, u) == act(y, v);
                            if xs != ys {
                                return Err(StarWindowViolation::Cohesion {
                                    side,
                                    x,
                                    y,
                                    u: *u,
                                    v: *v,
                                });
                            }
                        }
                    }
                } else {
                    let separated = short_tests.iter().any(|u| {
                        short_tests
                            .iter()
                            .any(|v| (act(x, u) == act(x, v)) != (act(y, u) == act(y, v)))
                    });
                    if !separated {
                        return Err(StarWindowViolation::Separation { side, x, y });
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("powers (ab)^{m} and (ab)^{n} coincide")]
pub struct PowerCollision {
    pub m: u64,
    pub n: u64,
}

/// In F the idempotents a, b do not commute, so no two powers of ab may
/// coincide; checks (ab)^1 .. (ab)^max_m as normal forms and as matrices.
pub fn verify_power_distinctness(max_m: u64) -> Result<(), PowerCollision> {
    assert!(max_m >= 2);
    let ab = FWord::new(Letter::A, 2);
    let mut powers = Vec::with_capacity(max_m as usize);
    let mut acc = ab;
    for _ in 1..=max_m {
        powers.push(acc);
        acc = acc * ab;
    }
    for m in 1..=max_m {
        // Iterated product agrees with the direct normal form.
        debug_assert_eq!(powers[(m - 1) as usize], FWord::new(Letter::A, 2 * m));
    }
    for i in 0..powers.len() {
        for j in i + 1..powers.len() {
            if powers[i] == powers[j] || powers[i].to_matrix() == powers[j].to_matrix() {
                return Err(PowerCollision {
                    m: j as u64 + 1,
                    n: i as u64 + 1,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("matrix image is not multiplicative at ({x}, {y})")]
pub struct HomViolation {
    pub x: FWord,
    pub y: FWord,
}

/// The matrix image respects multiplication on every window pair.
pub fn verify_matrix_homomorphism(max_len: u64) -> Result<(), HomViolation> {
    let words = window(max_len);
    for &x in &words {
        for &y in &words {
            if (x * y).to_matrix() != &x.to_matrix() * &y.to_matrix() {
                return Err(HomViolation { x, y });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(first: Letter, len: u64) -> FWord {
        FWord::new(first, len)
    }

    /// Oracle: multiply the letter matrices one at a time.
    fn matrix_by_iteration(x: &FWord) -> Mat2 {
        let mut letter = x.first();
        let mut acc = Mat2::letter(letter);
        for _ in 1..x.len() {
            letter = letter.other();
            acc = &acc * &Mat2::letter(letter);
        }
        acc
    }

    #[test]
    fn generator_relations() {
        assert_eq!(w(Letter::A, 1) * w(Letter::A, 1), w(Letter::A, 1));
        assert_eq!(w(Letter::B, 1) * w(Letter::B, 1), w(Letter::B, 1));
    }

    #[test]
    fn boundary_merge() {
        // ab * ba = aba
        assert_eq!(w(Letter::A, 2) * w(Letter::B, 2), w(Letter::A, 3));
        // ab * ab = abab
        assert_eq!(w(Letter::A, 2) * w(Letter::A, 2), w(Letter::A, 4));
    }

    #[test]
    fn mul_is_associative_on_window_8() {
        let words = window(8);
        for &x in &words {
            for &y in &words {
                for &z in &words {
                    assert_eq!((x * y) * z, x * (y * z));
                }
            }
        }
    }

    #[test]
    fn ell_and_r_read_off_the_end_letters() {
        let ab3 = w(Letter::A, 6);
        assert_eq!(ab3.ell(), w(Letter::B, 1));
        assert_eq!(ab3.r(), w(Letter::A, 1));

        let a = w(Letter::A, 1);
        assert_eq!(a.ell(), a);
        assert_eq!(a.r(), a);

        let ba2b = w(Letter::B, 5);
        assert_eq!(ba2b.ell(), w(Letter::B, 1));
        assert_eq!(ba2b.r(), w(Letter::B, 1));
    }

    #[test]
    fn ell_and_r_are_one_sided_identities_on_window_16() {
        for x in window(16) {
            assert_eq!(x * x.ell(), x);
            assert_eq!(x.r() * x, x);
        }
    }

    #[test]
    fn ell_of_product_collapses_left_ell_on_window_12() {
        for x in window(12) {
            for y in window(12) {
                assert_eq!((x.ell() * y).ell(), (x * y).ell());
            }
        }
    }

    #[test]
    fn the_only_idempotents_are_the_letters() {
        for x in window(16) {
            assert_eq!(x * x == x, x.len() == 1, "{x}");
        }
    }

    #[test]
    fn matrix_images_of_the_named_words() {
        assert_eq!(w(Letter::A, 1).to_matrix(), Mat2::from_u32s(1, 0, 1, 0));
        assert_eq!(w(Letter::B, 1).to_matrix(), Mat2::from_u32s(1, 1, 0, 0));
        assert_eq!(w(Letter::A, 2).to_matrix(), Mat2::from_u32s(1, 1, 1, 1));
        assert_eq!(w(Letter::B, 2).to_matrix(), Mat2::from_u32s(2, 0, 0, 0));
        // 2C and 2B
        assert_eq!(w(Letter::A, 4).to_matrix(), Mat2::from_u32s(2, 2, 2, 2));
        assert_eq!(w(Letter::B, 3).to_matrix(), Mat2::from_u32s(2, 2, 0, 0));
    }

    #[test]
    fn closed_form_matches_iterated_product_on_window_12() {
        for x in window(12) {
            assert_eq!(x.to_matrix(), matrix_by_iteration(&x), "{x}");
        }
    }

    #[test]
    fn ab_and_ba_do_not_commute() {
        let (a, b) = (w(Letter::A, 1), w(Letter::B, 1));
        assert_ne!(a * b, b * a);
        // Condition "abab = ab" fails in F, so no copy of M arises from its
        // unique noncommuting idempotent pair.
        assert_ne!((a * b) * (a * b), a * b);
    }

    #[test]
    fn window_ordering() {
        let ws = window(2);
        assert_eq!(
            ws,
            vec![
                w(Letter::A, 1),
                w(Letter::B, 1),
                w(Letter::A, 2),
                w(Letter::B, 2)
            ]
        );
        assert_eq!(window(4).len(), 8);
    }

    #[test]
    fn distinctness_and_power_checks_pass() {
        assert_eq!(verify_f_distinct(2), Ok(()));
        assert_eq!(verify_f_distinct(10), Ok(()));
        assert_eq!(verify_power_distinctness(20), Ok(()));
    }

    #[test]
    fn star_window_passes_at_6() {
        assert_eq!(verify_f_star_window(6), Ok(()));
    }

    #[test]
    fn matrix_homomorphism_on_window_6() {
        assert_eq!(verify_matrix_homomorphism(6), Ok(()));
    }

    #[test]
    fn display_round_trips() {
        let cases = [
            (w(Letter::A, 1), "a"),
            (w(Letter::B, 1), "b"),
            (w(Letter::A, 2), "(ab)^1"),
            (w(Letter::B, 2), "(ba)^1"),
            (w(Letter::A, 5), "(ab)^2a"),
            (w(Letter::B, 7), "(ba)^3b"),
            (w(Letter::A, 6), "(ab)^3"),
        ];
        for (word, text) in cases {
            assert_eq!(word.to_string(), text);
            assert_eq!(text.parse::<FWord>().unwrap(), word);
        }
    }

    #[test]
    fn parser_accepts_redundant_forms() {
        assert_eq!("(ab)^0a".parse::<FWord>().unwrap(), w(Letter::A, 1));
        assert_eq!("(ba)^0b".parse::<FWord>().unwrap(), w(Letter::B, 1));
        assert_eq!("(ab)^10".parse::<FWord>().unwrap(), w(Letter::A, 20));
    }

    #[test]
    fn parser_rejections() {
        use ParseWordError::*;
        assert_eq!("".parse::<FWord>(), Err(Empty));
        assert_eq!("(ab)^0".parse::<FWord>(), Err(EmptyWord));
        assert_eq!("(aa)^2".parse::<FWord>(), Err(NotAlternating { col: 3 }));
        assert_eq!(
            "(ab)^2b".parse::<FWord>(),
            Err(TrailingLetterMismatch { col: 7 })
        );
        assert_eq!(
            "ab".parse::<FWord>(),
            Err(TrailingInput { col: 2 })
        );
        assert_eq!(
            "(ab)^2aa".parse::<FWord>(),
            Err(TrailingInput { col: 8 })
        );
        assert!(matches!("c".parse::<FWord>(), Err(Unexpected { col: 1, .. })));
        assert!(matches!("(ab)^".parse::<FWord>(), Err(UnexpectedEnd { .. })));
        assert!(matches!("(ab)x".parse::<FWord>(), Err(Unexpected { col: 5, .. })));
        assert_eq!(
            "(ab)^99999999999999999999".parse::<FWord>(),
            Err(ExponentTooLarge { col: 6 })
        );
    }
}
