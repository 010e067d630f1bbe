//! A small-step rewriting system that reaches the same canonical form as
//! [`super::normalize`], one local rule at a time.
//!
//! The system exists to test the normalizer: its rules can be applied at the
//! leftmost or the rightmost matching position, and every application order
//! must terminate in the identical canonical word. Seven rules are enough:
//!
//! 1. cancel an r-letter against its adjacent inverse,
//! 2. cancel an s-letter against its adjacent inverse,
//! 3. fold two adjacent base letters into their product,
//! 4. absorb a `t` through a run of s-letters into the base letter on its
//!    left,
//! 5. absorb a `t` that opens its segment through a run of s-letters into
//!    the base letter on its right,
//! 6. swap a `t` leftward across a single s-letter, and
//! 7. split a non-representative base letter that follows an earlier base
//!    letter into `t * (its representative)`, pushing the `t` leftward.
//!
//! Rules 5 and 7 carry the side conditions about the segment's first base
//! letter; dropping either breaks termination or uniqueness.

use super::{validate_letters, Letter, NormalForm, Word, WordError};
use crate::group::BaseGroup;

/// Where to look for the next rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    CancelR,
    CancelS,
    Fold,
    AbsorbLeft,
    AbsorbRight,
    TLeft,
    Split,
}

/// First index after the run of s-letters following position `p`.
fn s_run_end(v: &[Letter], p: usize) -> usize {
    let mut q = p + 1;
    while q < v.len() && v[q].is_s() {
        q += 1;
    }
    q
}

/// True when a base letter occurs before position `p` with no r-letter
/// in between.
fn has_base_before_in_segment(v: &[Letter], p: usize) -> bool {
    for j in (0..p).rev() {
        if v[j].is_r() {
            return false;
        }
        if v[j].is_base() {
            return true;
        }
    }
    false
}

/// The highest-priority rule applicable at position `p`, if any.
fn match_at(v: &[Letter], p: usize, base: &BaseGroup) -> Option<Rule> {
    let t = base.t();
    let cur = v[p];
    let next = v.get(p + 1).copied();
    if let (Letter::R { index: a, inv: ia }, Some(Letter::R { index: b, inv: ib })) = (cur, next) {
        if a == b && ia != ib {
            return Some(Rule::CancelR);
        }
    }
    if let (Letter::S { index: a, inv: ia }, Some(Letter::S { index: b, inv: ib })) = (cur, next) {
        if a == b && ia != ib {
            return Some(Rule::CancelS);
        }
    }
    if cur.is_base() && matches!(next, Some(Letter::Base(_))) {
        return Some(Rule::Fold);
    }
    if cur.is_base() {
        let q = s_run_end(v, p);
        if q > p + 1 && v.get(q) == Some(&Letter::Base(t)) {
            return Some(Rule::AbsorbLeft);
        }
    }
    if cur == Letter::Base(t) && !has_base_before_in_segment(v, p) {
        let q = s_run_end(v, p);
        if q > p + 1 && matches!(v.get(q), Some(Letter::Base(_))) {
            return Some(Rule::AbsorbRight);
        }
    }
    if cur.is_s() {
        if next == Some(Letter::Base(t)) {
            return Some(Rule::TLeft);
        }
        if let Some(Letter::Base(x)) = next {
            if x != t && !base.in_transversal(x) && has_base_before_in_segment(v, p) {
                return Some(Rule::Split);
            }
        }
    }
    None
}

fn apply(v: &mut Vec<Letter>, p: usize, rule: Rule, base: &BaseGroup) {
    match rule {
        Rule::CancelR | Rule::CancelS => {
            v.drain(p..p + 2);
        }
        Rule::Fold => {
            let (Letter::Base(x), Letter::Base(y)) = (v[p], v[p + 1]) else {
                unreachable!()
            };
            let xy = base.mul(x, y);
            v.remove(p + 1);
            if xy == base.identity() {
                v.remove(p);
            } else {
                v[p] = Letter::Base(xy);
            }
        }
        Rule::AbsorbLeft => {
            let q = s_run_end(v, p);
            let Letter::Base(y) = v[p] else { unreachable!() };
            v.remove(q);
            let yt = base.mul(y, base.t());
            if yt == base.identity() {
                v.remove(p);
            } else {
                v[p] = Letter::Base(yt);
            }
        }
        Rule::AbsorbRight => {
            let q = s_run_end(v, p);
            let Letter::Base(c) = v[q] else { unreachable!() };
            let tc = base.mul(base.t(), c);
            v.remove(q);
            if tc != base.identity() {
                v.insert(q, Letter::Base(tc));
            }
            v.remove(p);
        }
        Rule::TLeft => v.swap(p, p + 1),
        Rule::Split => {
            let Letter::Base(x) = v[p + 1] else { unreachable!() };
            v[p + 1] = Letter::Base(base.mul(base.t(), x));
            v.insert(p, Letter::Base(base.t()));
        }
    }
}

/// Normalizes by repeated single-rule rewriting under the given strategy.
///
/// Terminates for every input and agrees with [`super::normalize`]
/// regardless of strategy; this function is deliberately slow and simple.
pub fn rewrite_normalize(
    w: &Word,
    base: &BaseGroup,
    strategy: Strategy,
) -> Result<NormalForm, WordError> {
    validate_letters(&w.0, base)?;
    let mut v: Vec<Letter> = w
        .0
        .iter()
        .copied()
        .filter(|l| *l != Letter::Base(base.identity()))
        .collect();
    loop {
        let hit = match strategy {
            Strategy::LeftmostFirst => (0..v.len())
                .find_map(|p| match_at(&v, p, base).map(|r| (p, r))),
            Strategy::RightmostFirst => (0..v.len())
                .rev()
                .find_map(|p| match_at(&v, p, base).map(|r| (p, r))),
        };
        match hit {
            Some((p, rule)) => apply(&mut v, p, rule, base),
            None => break,
        }
    }
    Ok(NormalForm::from_canonical_letters(v))
}

#[cfg(test)]
mod tests {
    use super::super::tests::arb_word;
    use super::{rewrite_normalize, Strategy as Scan};
    use crate::group::{cyclic_2, symmetric_3, BaseGroup};
    use crate::word::{normalize, Letter, NormalForm, Word};
    use proptest::prelude::*;

    fn both(w: &Word, base: &BaseGroup) -> (NormalForm, NormalForm) {
        (
            rewrite_normalize(w, base, Scan::LeftmostFirst).unwrap(),
            rewrite_normalize(w, base, Scan::RightmostFirst).unwrap(),
        )
    }

    #[test]
    fn each_rule_is_exercised_by_a_small_word() {
        let s3 = symmetric_3();
        let cases: Vec<(Vec<Letter>, Vec<Letter>)> = vec![
            // cancel-r and cancel-s
            (vec![Letter::r(0), Letter::r_inv(0)], vec![]),
            (vec![Letter::s_inv(1), Letter::s(1)], vec![]),
            // fold
            (
                vec![Letter::base(4), Letter::base(4)],
                vec![Letter::base(5)],
            ),
            // absorb into the left base letter
            (
                vec![Letter::base(4), Letter::s(0), Letter::base(1)],
                vec![Letter::base(3), Letter::s(0)],
            ),
            // absorb a segment-opening t into the right base letter
            (
                vec![Letter::base(1), Letter::s(0), Letter::base(5)],
                vec![Letter::s(0), Letter::base(3)],
            ),
            // swap t across one s-letter
            (
                vec![Letter::s(0), Letter::base(1)],
                vec![Letter::base(1), Letter::s(0)],
            ),
            // split an interior non-representative letter
            (
                vec![
                    Letter::base(2),
                    Letter::s(0),
                    Letter::base(5),
                ],
                vec![Letter::base(5), Letter::s(0), Letter::base(3)],
            ),
        ];
        for (input, expected) in cases {
            let w = Word(input.clone());
            let (l, r) = both(&w, &s3);
            assert_eq!(l.letters(), &expected[..], "leftmost on {w}");
            assert_eq!(r.letters(), &expected[..], "rightmost on {w}");
        }
    }

    #[test]
    fn strategies_agree_on_a_word_with_competing_redexes() {
        // Both a fold and an absorb are available at once; the strategies
        // take different first steps yet converge.
        let s3 = symmetric_3();
        let w = Word(vec![
            Letter::base(2),
            Letter::base(4),
            Letter::s(0),
            Letter::s(1),
            Letter::base(1),
            Letter::base(5),
        ]);
        let (l, r) = both(&w, &s3);
        assert_eq!(l, r);
        assert_eq!(l, normalize(&w, &s3).unwrap());
    }

    #[test]
    fn canonical_words_are_irreducible() {
        let c2 = cyclic_2();
        let w = Word(vec![
            Letter::base(1),
            Letter::s(0),
            Letter::r(0),
            Letter::s_inv(1),
        ]);
        let n = normalize(&w, &c2).unwrap();
        let (l, r) = both(&n.as_word(), &c2);
        assert_eq!(l, n);
        assert_eq!(r, n);
    }

    #[test]
    fn identity_letters_are_dropped_before_rewriting() {
        let s3 = symmetric_3();
        let w = Word(vec![Letter::base(0), Letter::s(0), Letter::base(0)]);
        let (l, r) = both(&w, &s3);
        assert_eq!(l.letters(), &[Letter::s(0)]);
        assert_eq!(r.letters(), &[Letter::s(0)]);
    }

    proptest! {
        #[test]
        fn rewriting_agrees_with_the_one_pass_normalizer(w in arb_word(6, 3, 16)) {
            let s3 = symmetric_3();
            let n = normalize(&w, &s3).unwrap();
            let l = rewrite_normalize(&w, &s3, Scan::LeftmostFirst).unwrap();
            let r = rewrite_normalize(&w, &s3, Scan::RightmostFirst).unwrap();
            prop_assert_eq!(&l, &n);
            prop_assert_eq!(&r, &n);
        }
    }
}
