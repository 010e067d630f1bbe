//! Words over the mixed alphabet of a construction: base-group elements,
//! s-generators, and r-generators, together with a canonical normal form.
//!
//! # Canonical form
//!
//! Split a word into segments at its r-letters. A word is *canonical* when
//!
//! * no r-letter is immediately followed by its inverse,
//! * inside every segment, no s-letter is immediately followed by its
//!   inverse and no two base letters are adjacent,
//! * a base letter carrying `t` appears only as the very first letter of a
//!   segment that contains no other base letter (`t` commutes with
//!   s-letters, so it is pushed to the segment front), and
//! * every base letter that follows an earlier base letter in its segment is
//!   a transversal representative ([`BaseGroup::in_transversal`]); only the
//!   first base letter of a segment may be an arbitrary non-identity,
//!   non-`t` element, because it also absorbs the segment's `t`-parity.
//!
//! Every group element is written by exactly one canonical word, canonical
//! words are closed under taking prefixes, and normalizing never makes a word
//! longer. [`normalize`] produces the canonical form in a single left-to-right
//! pass; [`rewrite::rewrite_normalize`] reaches the same form by small
//! rewriting steps and is used to cross-check order independence.

use crate::group::{BaseGroup, ElemId};
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

pub mod rewrite;

/// A single letter of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// A non-identity element of the base group.
    Base(ElemId),
    /// An s-generator, inverted when `inv` is set.
    S { index: u32, inv: bool },
    /// An r-generator, inverted when `inv` is set.
    R { index: u32, inv: bool },
}

impl Letter {
    pub fn base(g: ElemId) -> Self {
        Letter::Base(g)
    }

    pub fn s(index: u32) -> Self {
        Letter::S { index, inv: false }
    }

    pub fn s_inv(index: u32) -> Self {
        Letter::S { index, inv: true }
    }

    pub fn r(index: u32) -> Self {
        Letter::R { index, inv: false }
    }

    pub fn r_inv(index: u32) -> Self {
        Letter::R { index, inv: true }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Letter::Base(_))
    }

    pub fn is_s(&self) -> bool {
        matches!(self, Letter::S { .. })
    }

    pub fn is_r(&self) -> bool {
        matches!(self, Letter::R { .. })
    }

    /// The letter whose action undoes this one.
    pub fn formal_inverse(&self, base: &BaseGroup) -> Letter {
        match *self {
            Letter::Base(g) => Letter::Base(base.inv(g)),
            Letter::S { index, inv } => Letter::S { index, inv: !inv },
            Letter::R { index, inv } => Letter::R { index, inv: !inv },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Base(g) => write!(f, "g{g}"),
            Letter::S { index, inv: false } => write!(f, "s{index}"),
            Letter::S { index, inv: true } => write!(f, "S{index}"),
            Letter::R { index, inv: false } => write!(f, "r{index}"),
            Letter::R { index, inv: true } => write!(f, "R{index}"),
        }
    }
}

fn write_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "e");
    }
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A raw, possibly unreduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word with its first `k` letters moved to the end.
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut letters = Vec::with_capacity(self.0.len());
        letters.extend_from_slice(&self.0[k..]);
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(&self.0, f)
    }
}

/// A word in canonical form. Only produced by the normalizing operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    letters: Vec<Letter>,
}

impl NormalForm {
    pub fn empty() -> Self {
        NormalForm {
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_canonical_letters(letters: Vec<Letter>) -> Self {
        NormalForm { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word(self.letters.clone())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(&self.letters, f)
    }
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Problems with the letters of an input word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("base letter id {id} is not an element of a group of order {order}")]
    InvalidBaseElem { id: ElemId, order: u16 },
}

fn validate_letters(letters: &[Letter], base: &BaseGroup) -> Result<(), WordError> {
    for l in letters {
        if let Letter::Base(g) = *l {
            if g >= base.order() {
                return Err(WordError::InvalidBaseElem {
                    id: g,
                    order: base.order(),
                });
            }
        }
    }
    Ok(())
}

/// Index of the first letter after the last r-letter of `out`.
fn segment_start(out: &[Letter]) -> usize {
    out.iter()
        .rposition(|l| l.is_r())
        .map_or(0, |p| p + 1)
}

/// Appends one letter to a canonical word, keeping it canonical.
pub(crate) fn push_letter(out: &mut Vec<Letter>, l: Letter, base: &BaseGroup) {
    match l {
        Letter::S { index, inv } => {
            if out.last() == Some(&Letter::S { index, inv: !inv }) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Letter::R { index, inv } => {
            if out.last() == Some(&Letter::R { index, inv: !inv }) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Letter::Base(g) => insert_base(out, g, base),
    }
}

/// Multiplies a base element onto the right end of a canonical word.
fn insert_base(out: &mut Vec<Letter>, g: ElemId, base: &BaseGroup) {
    let mut g = g;
    if g == base.identity() {
        return;
    }
    // Fold into an adjacent base letter first. Afterwards the word ends with
    // an s-letter, an r-letter, or nothing.
    if let Some(&Letter::Base(y)) = out.last() {
        out.pop();
        g = base.mul(y, g);
        if g == base.identity() {
            return;
        }
    }
    let seg = segment_start(out);
    if seg == out.len() {
        // Empty segment: any non-identity element may open it.
        out.push(Letter::Base(g));
        return;
    }
    // The segment is nonempty and ends with an s-letter.
    let front_t = matches!(out[seg], Letter::Base(v) if v == base.t());
    if front_t {
        // Segment shape [t, s...]: the front t commutes across the s-letters
        // and folds with the incoming element.
        debug_assert!(out[seg + 1..].iter().all(Letter::is_s));
        let tg = base.mul(base.t(), g);
        out.remove(seg);
        if tg != base.identity() {
            debug_assert_ne!(tg, base.t());
            out.push(Letter::Base(tg));
        }
        return;
    }
    let has_base = out[seg..].iter().any(Letter::is_base);
    if !has_base {
        // Segment of s-letters only.
        if g == base.t() {
            out.insert(seg, Letter::Base(g));
        } else {
            out.push(Letter::Base(g));
        }
        return;
    }
    // Segment already holds a base letter, so the incoming element must land
    // as a transversal representative; any t-parity ratchets leftward until a
    // base letter absorbs it.
    if g == base.t() {
        ratchet_t(out, seg, base);
    } else if base.in_transversal(g) {
        out.push(Letter::Base(g));
    } else {
        ratchet_t(out, seg, base);
        out.push(Letter::Base(base.coset_rep(g)));
    }
}

/// Commutes a `t` arriving at the top of the current (base-carrying) segment
/// leftward across s-letters until a base letter absorbs it. Interior base
/// letters must stay transversal representatives, so an interior letter that
/// would leave the transversal deposits its representative and passes the
/// parity further left; the segment's first base letter absorbs anything.
fn ratchet_t(out: &mut [Letter], seg: usize, base: &BaseGroup) {
    let mut upper = out.len();
    loop {
        let p = (seg..upper)
            .rev()
            .find(|&j| out[j].is_base())
            .expect("segment holds a base letter");
        let Letter::Base(y) = out[p] else {
            unreachable!()
        };
        let first = !out[seg..p].iter().any(Letter::is_base);
        let yt = base.mul(y, base.t());
        if first {
            debug_assert!(yt != base.identity() && yt != base.t());
            out[p] = Letter::Base(yt);
            return;
        }
        if base.in_transversal(yt) {
            out[p] = Letter::Base(yt);
            return;
        }
        out[p] = Letter::Base(base.coset_rep(yt));
        upper = p;
    }
}

/// Rewrites a word to its canonical form in one left-to-right pass.
///
/// Fails only when a base letter id is outside the group. Base letters
/// carrying the identity are absorbed silently, so raw input words need not
/// respect the letter conventions of canonical words.
pub fn normalize(w: &Word, base: &BaseGroup) -> Result<NormalForm, WordError> {
    validate_letters(&w.0, base)?;
    let mut out = Vec::with_capacity(w.0.len());
    for &l in &w.0 {
        push_letter(&mut out, l, base);
    }
    Ok(NormalForm { letters: out })
}

/// The canonical form of the concatenation of two canonical words.
pub fn multiply(a: &NormalForm, b: &NormalForm, base: &BaseGroup) -> NormalForm {
    let mut out = a.letters.clone();
    for &l in &b.letters {
        push_letter(&mut out, l, base);
    }
    NormalForm { letters: out }
}

/// The canonical form of the inverse of a canonical word.
pub fn invert(a: &NormalForm, base: &BaseGroup) -> NormalForm {
    let mut out = Vec::with_capacity(a.letters.len());
    for l in a.letters.iter().rev() {
        push_letter(&mut out, l.formal_inverse(base), base);
    }
    NormalForm { letters: out }
}

/// Checks the five forbidden subword patterns, without normalizing:
/// adjacent base letters, an r-letter followed by its inverse, an s-letter
/// followed by its inverse, two `t` letters separated only by s-letters, and
/// an s-letter, `t`, then that s-letter's inverse.
pub fn is_reduced(w: &Word, base: &BaseGroup) -> bool {
    let ls = &w.0;
    let t = base.t();
    for i in 0..ls.len().saturating_sub(1) {
        match (ls[i], ls[i + 1]) {
            (Letter::Base(_), Letter::Base(_)) => return false,
            (Letter::S { index: a, inv: ia }, Letter::S { index: b, inv: ib })
                if a == b && ia != ib =>
            {
                return false;
            }
            (Letter::R { index: a, inv: ia }, Letter::R { index: b, inv: ib })
                if a == b && ia != ib =>
            {
                return false;
            }
            _ => {}
        }
    }
    for i in 0..ls.len() {
        if ls[i] != Letter::Base(t) {
            continue;
        }
        let mut j = i + 1;
        while j < ls.len() && ls[j].is_s() {
            j += 1;
        }
        if j > i + 1 && j < ls.len() && ls[j] == Letter::Base(t) {
            return false;
        }
    }
    for i in 0..ls.len().saturating_sub(2) {
        if let (Letter::S { index: a, inv: ia }, Letter::Base(v), Letter::S { index: b, inv: ib }) =
            (ls[i], ls[i + 1], ls[i + 2])
        {
            if v == t && a == b && ia != ib {
                return false;
            }
        }
    }
    true
}

/// True when every rotation of the word stays reduced.
pub fn is_cyclically_reduced(w: &NormalForm, base: &BaseGroup) -> bool {
    let word = w.as_word();
    (0..w.len().max(1)).all(|k| is_reduced(&word.rotated(k), base))
}

/// A conjugating word and a cyclically reduced core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: NormalForm,
    pub core: NormalForm,
}

/// Splits a canonical word as `conjugator^-1 * core * conjugator` with a
/// cyclically reduced core, by rotating while any rotation normalizes shorter.
pub fn cyclic_reduce(w: &NormalForm, base: &BaseGroup) -> CyclicDecomposition {
    let mut core = w.clone();
    let mut conjugator = NormalForm::empty();
    'shrink: loop {
        let n = core.len();
        for k in 1..n {
            let cand = normalize(&core.as_word().rotated(k), base)
                .expect("canonical letters stay valid");
            if cand.len() < n {
                // core = prefix * rest and cand = rest * prefix, so
                // core = prefix * cand * prefix^-1. Canonical words are closed
                // under prefixes, so the prefix needs no re-normalizing.
                let prefix = NormalForm {
                    letters: core.letters[..k].to_vec(),
                };
                conjugator = multiply(&invert(&prefix, base), &conjugator, base);
                core = cand;
                continue 'shrink;
            }
        }
        break;
    }
    debug_assert!(is_cyclically_reduced(&core, base));
    CyclicDecomposition { conjugator, core }
}

/// True when the word is conjugate to a base involution, i.e. its cyclic core
/// is a single base letter squaring to the identity.
pub fn is_conjugate_to_t(w: &NormalForm, base: &BaseGroup) -> bool {
    let core = cyclic_reduce(w, base).core;
    matches!(
        core.letters(),
        [Letter::Base(g)] if *g != base.identity() && base.mul(*g, *g) == base.identity()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_2, symmetric_3};
    use proptest::prelude::*;

    fn nf(letters: Vec<Letter>) -> NormalForm {
        NormalForm { letters }
    }

    fn norm(letters: Vec<Letter>, base: &BaseGroup) -> NormalForm {
        normalize(&Word(letters), base).unwrap()
    }

    #[test]
    fn squared_involution_cancels() {
        let c2 = cyclic_2();
        assert_eq!(
            norm(vec![Letter::base(1), Letter::base(1)], &c2),
            NormalForm::empty()
        );
    }

    #[test]
    fn involution_conjugated_by_one_s_collapses() {
        let c2 = cyclic_2();
        assert_eq!(
            norm(vec![Letter::s(0), Letter::base(1), Letter::s_inv(0)], &c2),
            nf(vec![Letter::base(1)])
        );
    }

    #[test]
    fn two_involutions_around_an_s_block_cancel() {
        let c2 = cyclic_2();
        assert_eq!(
            norm(
                vec![
                    Letter::base(1),
                    Letter::s(0),
                    Letter::s(1),
                    Letter::base(1)
                ],
                &c2
            ),
            nf(vec![Letter::s(0), Letter::s(1)])
        );
    }

    #[test]
    fn r_letter_cancels_its_inverse() {
        let c2 = cyclic_2();
        assert_eq!(
            norm(vec![Letter::r(0), Letter::r_inv(0)], &c2),
            NormalForm::empty()
        );
    }

    #[test]
    fn involution_commutes_to_the_segment_front() {
        let c2 = cyclic_2();
        assert_eq!(
            norm(vec![Letter::s(0), Letter::base(1)], &c2),
            nf(vec![Letter::base(1), Letter::s(0)])
        );
    }

    #[test]
    fn first_base_letter_of_a_segment_absorbs_parity() {
        let s3 = symmetric_3();
        // g4 * s0 * t: the t slides left across s0 and folds into g4.
        assert_eq!(
            norm(vec![Letter::base(4), Letter::s(0), Letter::base(1)], &s3),
            nf(vec![Letter::base(3), Letter::s(0)])
        );
        // s0 * g5 keeps its non-transversal first base letter.
        let w = vec![Letter::s(0), Letter::base(5)];
        assert_eq!(norm(w.clone(), &s3), nf(w));
    }

    #[test]
    fn interior_base_letters_move_to_the_transversal() {
        let s3 = symmetric_3();
        // g2 * s0 * g5 = g2 * s0 * t * g3 = (g2 t) * s0 * g3 = g5 s0 g3.
        assert_eq!(
            norm(vec![Letter::base(2), Letter::s(0), Letter::base(5)], &s3),
            nf(vec![
                Letter::base(5),
                Letter::s(0),
                Letter::base(3)
            ])
        );
    }

    #[test]
    fn ratchet_carries_parity_across_interior_letters() {
        let s3 = symmetric_3();
        // g2 s0 g2 s1 t: the t is absorbed as g2 -> g2*t at the front while
        // the interior g2 becomes its representative t*(g2*t) = g3.
        let w = vec![
            Letter::base(2),
            Letter::s(0),
            Letter::base(2),
            Letter::s(1),
            Letter::base(1),
        ];
        assert_eq!(
            norm(w, &s3),
            nf(vec![
                Letter::base(5),
                Letter::s(0),
                Letter::base(3),
                Letter::s(1)
            ])
        );
    }

    #[test]
    fn multiply_by_empty_is_identity_map() {
        let s3 = symmetric_3();
        let w = norm(vec![Letter::base(4), Letter::s(0), Letter::r(1)], &s3);
        assert_eq!(multiply(&NormalForm::empty(), &w, &s3), w);
        assert_eq!(multiply(&w, &NormalForm::empty(), &s3), w);
    }

    #[test]
    fn s_letter_times_its_inverse_is_empty() {
        let c2 = cyclic_2();
        let a = nf(vec![Letter::s(0)]);
        let b = nf(vec![Letter::s_inv(0)]);
        assert_eq!(multiply(&a, &b, &c2), NormalForm::empty());
    }

    #[test]
    fn base_letter_times_its_inverse_is_empty_for_all_of_s3() {
        let s3 = symmetric_3();
        for g in s3.elements().filter(|&g| g != s3.identity()) {
            let a = nf(vec![Letter::base(g)]);
            let b = nf(vec![Letter::base(s3.inv(g))]);
            assert_eq!(multiply(&a, &b, &s3), NormalForm::empty(), "g = {g}");
        }
    }

    #[test]
    fn invert_reverses_and_flips() {
        let s3 = symmetric_3();
        assert_eq!(invert(&NormalForm::empty(), &s3), NormalForm::empty());
        assert_eq!(
            invert(&nf(vec![Letter::s(0), Letter::r(2)]), &s3),
            nf(vec![Letter::r_inv(2), Letter::s_inv(0)])
        );
        assert_eq!(
            invert(&nf(vec![Letter::base(1)]), &s3),
            nf(vec![Letter::base(1)])
        );
    }

    #[test]
    fn reducedness_matches_the_five_patterns() {
        let s3 = symmetric_3();
        assert!(!is_reduced(
            &Word(vec![Letter::s(0), Letter::base(1), Letter::s_inv(0)]),
            &s3
        ));
        assert!(is_reduced(
            &Word(vec![Letter::r(0), Letter::base(1), Letter::r_inv(0)]),
            &s3
        ));
        assert!(!is_reduced(&Word(vec![Letter::base(2), Letter::base(3)]), &s3));
        // The sandwich pattern needs matching s-letters.
        assert!(is_reduced(
            &Word(vec![Letter::s(0), Letter::base(1), Letter::s(1)]),
            &s3
        ));
        // Two t letters across an s-block.
        assert!(!is_reduced(
            &Word(vec![
                Letter::base(1),
                Letter::s(0),
                Letter::s(1),
                Letter::base(1)
            ]),
            &s3
        ));
        // A non-t base letter between s-inverses is fine.
        assert!(is_reduced(
            &Word(vec![Letter::s(0), Letter::base(4), Letter::s_inv(0)]),
            &s3
        ));
    }

    #[test]
    fn cyclic_reducedness_examples() {
        let s3 = symmetric_3();
        assert!(!is_cyclically_reduced(
            &nf(vec![Letter::s(0), Letter::base(4), Letter::s_inv(0)]),
            &s3
        ));
        assert!(is_cyclically_reduced(&nf(vec![Letter::base(1)]), &s3));
        assert!(is_cyclically_reduced(&NormalForm::empty(), &s3));
    }

    #[test]
    fn cyclic_reduce_peels_conjugating_r() {
        let c2 = cyclic_2();
        let w = norm(
            vec![Letter::r_inv(0), Letter::base(1), Letter::r(0)],
            &c2,
        );
        let d = cyclic_reduce(&w, &c2);
        assert_eq!(d.core, nf(vec![Letter::base(1)]));
        assert_eq!(d.conjugator, nf(vec![Letter::r(0)]));
        // conjugator^-1 * core * conjugator gives back the original.
        let back = multiply(
            &multiply(&invert(&d.conjugator, &c2), &d.core, &c2),
            &d.conjugator,
            &c2,
        );
        assert_eq!(back, w);
    }

    #[test]
    fn cyclic_reduce_fixes_cyclically_reduced_words() {
        let c2 = cyclic_2();
        let w = nf(vec![Letter::base(1)]);
        let d = cyclic_reduce(&w, &c2);
        assert_eq!(d.conjugator, NormalForm::empty());
        assert_eq!(d.core, w);
    }

    #[test]
    fn conjugacy_to_t_examples() {
        let c2 = cyclic_2();
        let w = norm(
            vec![Letter::r_inv(0), Letter::base(1), Letter::r(0)],
            &c2,
        );
        assert!(is_conjugate_to_t(&w, &c2));
        assert!(!is_conjugate_to_t(&nf(vec![Letter::s(0)]), &c2));
        assert!(!is_conjugate_to_t(&NormalForm::empty(), &c2));
    }

    #[test]
    fn normalize_rejects_out_of_range_base_letters() {
        let c2 = cyclic_2();
        let err = normalize(&Word(vec![Letter::base(7)]), &c2).unwrap_err();
        assert_eq!(err, WordError::InvalidBaseElem { id: 7, order: 2 });
    }

    #[test]
    fn normalize_absorbs_identity_letters_in_raw_input() {
        let s3 = symmetric_3();
        assert_eq!(
            norm(vec![Letter::base(0), Letter::s(0), Letter::base(0)], &s3),
            nf(vec![Letter::s(0)])
        );
    }

    pub(super) fn arb_letter(order: ElemId, gens: u32) -> impl Strategy<Value = Letter> {
        prop_oneof![
            (1..order).prop_map(Letter::Base),
            (0..gens, any::<bool>()).prop_map(|(index, inv)| Letter::S { index, inv }),
            (0..gens, any::<bool>()).prop_map(|(index, inv)| Letter::R { index, inv }),
        ]
    }

    pub(super) fn arb_word(order: ElemId, gens: u32, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(arb_letter(order, gens), 0..=max_len).prop_map(Word)
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_never_grows(w in arb_word(6, 3, 20)) {
            let s3 = symmetric_3();
            let n = normalize(&w, &s3).unwrap();
            prop_assert!(n.len() <= w.len());
            let again = normalize(&n.as_word(), &s3).unwrap();
            prop_assert_eq!(&again, &n);
            prop_assert!(is_reduced(&n.as_word(), &s3));
        }

        #[test]
        fn group_laws_hold_on_random_words(
            a in arb_word(6, 3, 12),
            b in arb_word(6, 3, 12),
            c in arb_word(6, 3, 12),
        ) {
            let s3 = symmetric_3();
            let (a, b, c) = (
                normalize(&a, &s3).unwrap(),
                normalize(&b, &s3).unwrap(),
                normalize(&c, &s3).unwrap(),
            );
            let ab_c = multiply(&multiply(&a, &b, &s3), &c, &s3);
            let a_bc = multiply(&a, &multiply(&b, &c, &s3), &s3);
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(multiply(&a, &invert(&a, &s3), &s3), NormalForm::empty());
            prop_assert_eq!(multiply(&invert(&a, &s3), &a, &s3), NormalForm::empty());
        }

        #[test]
        fn conjugation_identity_recovers_random_words(w in arb_word(6, 2, 8)) {
            let s3 = symmetric_3();
            let n = normalize(&w, &s3).unwrap();
            let d = cyclic_reduce(&n, &s3);
            let back = multiply(
                &multiply(&invert(&d.conjugator, &s3), &d.core, &s3),
                &d.conjugator,
                &s3,
            );
            prop_assert_eq!(back, n);
            prop_assert!(is_cyclically_reduced(&d.core, &s3));
        }

        #[test]
        fn no_rotation_of_a_cyclic_core_normalizes_shorter(w in arb_word(6, 2, 10)) {
            let s3 = symmetric_3();
            let core = cyclic_reduce(&normalize(&w, &s3).unwrap(), &s3).core;
            for k in 0..core.len() {
                let rot = normalize(&core.as_word().rotated(k), &s3).unwrap();
                prop_assert_eq!(rot.len(), core.len());
            }
        }
    }
}
