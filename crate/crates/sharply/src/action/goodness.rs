//! Bounded certification that a state stays sharp: no short word misbehaves.
//!
//! A state is *good up to length L* when
//!
//! 1. no nonempty cyclically reduced canonical word of length at most `L`
//!    fixes an ordered pair of distinct points,
//! 2. every such word that carries some pair to its reversal is conjugate
//!    to the designated involution `t`, and
//! 3. `t` itself moves every point.
//!
//! Words that are not cyclically reduced never need checking: if a
//! conjugate `c⁻¹ w c` fixes or flips a pair, then `w` does the same to the
//! translated pair, and `w`'s cyclic core shows up in the same bounded
//! search because rotating and cancelling never lengthens a word.
//!
//! The checker walks the tree of canonical words depth-first — canonical
//! words are closed under prefixes, so the tree is exactly the canonical
//! words — and carries along the *survivors*: every ordered pair on which
//! the word so far is defined, as `(start, current)` snapshots. A word with
//! no survivors is skipped along with its whole subtree, since definedness
//! of a word on a pair forces definedness of every prefix.

use super::{ActionState, PairRef, Point};
use crate::group::ElemId;
use crate::word::{is_conjugate_to_t, is_cyclically_reduced, Letter, NormalForm};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// One way a state fails the bounded check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The designated involution fixes a point (clause 3).
    TFixesPoint { point: Point },
    /// A nonidentity word fixes an ordered pair (clause 1).
    PairStabilized { word: NormalForm, pair: PairRef },
    /// A word not conjugate to `t` reverses a pair (clause 2).
    BadFlip { word: NormalForm, pair: PairRef },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TFixesPoint { point } => {
                write!(f, "t fixes the point {point}")
            }
            Violation::PairStabilized { word, pair } => {
                write!(f, "the word `{word}` fixes the pair {pair}")
            }
            Violation::BadFlip { word, pair } => {
                write!(
                    f,
                    "the word `{word}` flips the pair {pair} but is not conjugate to t"
                )
            }
        }
    }
}

/// Outcome of a bounded check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub max_len: usize,
    pub words_checked: u64,
    pub violations: Vec<Violation>,
}

impl GoodnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for GoodnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "good up to length {}: {} words checked, no violations",
                self.max_len, self.words_checked
            )
        } else {
            writeln!(
                f,
                "NOT good up to length {}: {} words checked, {} violation(s):",
                self.max_len,
                self.words_checked,
                self.violations.len()
            )?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

/// The pairs a word is still defined on. A word of base letters acts on
/// every pair at once (`All`); the first generator letter collapses this to
/// an explicit list of `(start, current)` snapshots.
enum Survivors {
    All { g: ElemId },
    Explicit(Vec<(PairRef, PairRef)>),
}

struct Search<'a> {
    st: &'a ActionState,
    /// Every generator letter defined anywhere, in letter order.
    all_letters: Vec<Letter>,
    max_len: usize,
}

impl<'a> Search<'a> {
    fn new(st: &'a ActionState, max_len: usize) -> Search<'a> {
        let mut letters = BTreeSet::new();
        for m in st.moves.values() {
            letters.extend(m.keys().copied());
        }
        Search {
            st,
            all_letters: letters.into_iter().collect(),
            max_len,
        }
    }

    /// Points where the letter is defined.
    fn domain(&self, l: Letter) -> Vec<Point> {
        self.st
            .moves
            .iter()
            .filter(|(_, m)| m.contains_key(&l))
            .map(|(&p, _)| p)
            .collect()
    }

    /// Survivors after appending one letter; `None` when no pair remains.
    fn step(&self, surv: &Survivors, l: Letter) -> Option<Survivors> {
        let g0 = self.st.group();
        match (surv, l) {
            (Survivors::All { g }, Letter::Base(h)) => Some(Survivors::All {
                g: g0.mul(*g, h),
            }),
            (Survivors::All { g }, l) => {
                let dom = self.domain(l);
                let ginv = g0.inv(*g);
                let mut entries = Vec::new();
                for &u in &dom {
                    for &v in &dom {
                        if u == v {
                            continue;
                        }
                        let cur = PairRef::new(
                            self.st.lookup(u, l).expect("u is in the domain"),
                            self.st.lookup(v, l).expect("v is in the domain"),
                        );
                        if let Ok(cur) = cur {
                            let start = PairRef {
                                first: self.st.point_mul(u, ginv),
                                second: self.st.point_mul(v, ginv),
                            };
                            entries.push((start, cur));
                        }
                    }
                }
                (!entries.is_empty()).then_some(Survivors::Explicit(entries))
            }
            (Survivors::Explicit(es), Letter::Base(h)) => Some(Survivors::Explicit(
                es.iter()
                    .map(|&(start, cur)| {
                        (
                            start,
                            PairRef {
                                first: self.st.point_mul(cur.first, h),
                                second: self.st.point_mul(cur.second, h),
                            },
                        )
                    })
                    .collect(),
            )),
            (Survivors::Explicit(es), l) => {
                let entries: Vec<(PairRef, PairRef)> = es
                    .iter()
                    .filter_map(|&(start, cur)| {
                        let first = self.st.lookup(cur.first, l)?;
                        let second = self.st.lookup(cur.second, l)?;
                        PairRef::new(first, second).ok().map(|next| (start, next))
                    })
                    .collect();
                (!entries.is_empty()).then_some(Survivors::Explicit(entries))
            }
        }
    }

    /// The letters that may follow `word` in a canonical word, given the
    /// survivors, in a fixed deterministic order.
    fn child_letters(&self, word: &[Letter], surv: &Survivors) -> Vec<Letter> {
        let g0 = self.st.group();
        let t = g0.t();
        let prev = word.last().copied();
        let seg_start = word.iter().rposition(Letter::is_r).map_or(0, |p| p + 1);
        let segment = &word[seg_start..];
        let seg_front_t = segment.first() == Some(&Letter::Base(t));
        let seg_has_base = segment.iter().any(Letter::is_base);

        let mut out = Vec::new();
        let base_allowed = !matches!(prev, Some(Letter::Base(_))) && !seg_front_t;
        if base_allowed {
            for g in g0.elements() {
                if g == g0.identity() {
                    continue;
                }
                let ok = if seg_has_base {
                    g0.in_transversal(g)
                } else if segment.is_empty() {
                    true
                } else {
                    g != t
                };
                if ok {
                    out.push(Letter::Base(g));
                }
            }
        }
        let candidates: Vec<Letter> = match surv {
            Survivors::All { .. } => self.all_letters.clone(),
            Survivors::Explicit(es) => {
                let mut set = BTreeSet::new();
                for &(_, cur) in es {
                    if let Some(m) = self.st.moves.get(&cur.first) {
                        set.extend(m.keys().copied());
                    }
                }
                set.into_iter().collect()
            }
        };
        for l in candidates {
            if let Some(p) = prev {
                if !p.is_base() && l == super::gen_inverse(p) {
                    continue;
                }
            }
            out.push(l);
        }
        out
    }

    fn dfs<F: FnMut(&[Letter], &Survivors)>(
        &self,
        word: &mut Vec<Letter>,
        surv: &Survivors,
        visit: &mut F,
    ) {
        if !word.is_empty() {
            visit(word, surv);
        }
        if word.len() == self.max_len {
            return;
        }
        for l in self.child_letters(word, surv) {
            if let Some(next) = self.step(surv, l) {
                word.push(l);
                self.dfs(word, &next, visit);
                word.pop();
            }
        }
    }

    fn run<F: FnMut(&[Letter], &Survivors)>(&self, visit: &mut F) {
        if self.max_len == 0 {
            return;
        }
        let root = Survivors::All {
            g: self.st.group().identity(),
        };
        self.dfs(&mut Vec::new(), &root, visit);
    }
}

/// Checks the state against all canonical words of length at most `max_len`.
pub fn check_goodness_bounded(st: &ActionState, max_len: usize) -> GoodnessReport {
    let mut report = GoodnessReport {
        max_len,
        words_checked: 0,
        violations: Vec::new(),
    };
    for x in st.points() {
        if st.t_point(x) == x {
            report.violations.push(Violation::TFixesPoint { point: x });
        }
    }
    if st.points_len() < 2 {
        return report;
    }
    let g0 = st.group();
    let search = Search::new(st, max_len);
    search.run(&mut |word, surv| {
        report.words_checked += 1;
        let w = NormalForm::from_canonical_letters(word.to_vec());
        if !is_cyclically_reduced(&w, g0) {
            return;
        }
        match surv {
            Survivors::All { g } => {
                let fixed: Vec<Point> = st.points().filter(|&x| st.point_mul(x, *g) == x).collect();
                for &x in &fixed {
                    for &y in &fixed {
                        if x < y {
                            report.violations.push(Violation::PairStabilized {
                                word: w.clone(),
                                pair: PairRef {
                                    first: x,
                                    second: y,
                                },
                            });
                        }
                    }
                }
                if g0.mul(*g, *g) != g0.identity() {
                    for x in st.points() {
                        let y = st.point_mul(x, *g);
                        if x < y && st.point_mul(y, *g) == x {
                            report.violations.push(Violation::BadFlip {
                                word: w.clone(),
                                pair: PairRef {
                                    first: x,
                                    second: y,
                                },
                            });
                        }
                    }
                }
            }
            Survivors::Explicit(es) => {
                for &(start, cur) in es {
                    if start.first >= start.second {
                        continue;
                    }
                    if cur == start {
                        report.violations.push(Violation::PairStabilized {
                            word: w.clone(),
                            pair: start,
                        });
                    } else if cur == start.flipped() && !is_conjugate_to_t(&w, g0) {
                        report.violations.push(Violation::BadFlip {
                            word: w.clone(),
                            pair: start,
                        });
                    }
                }
            }
        }
    });
    report
}

/// The canonical words the bounded check visits, for cross-testing the
/// enumeration against a brute-force search.
#[cfg(test)]
pub(crate) fn visited_words(st: &ActionState, max_len: usize) -> BTreeSet<Vec<Letter>> {
    let search = Search::new(st, max_len);
    let mut out = BTreeSet::new();
    search.run(&mut |word, _| {
        out.insert(word.to_vec());
    });
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::scripted_c2_state;
    use super::*;
    use crate::action::StateDoc;
    use crate::group::{cyclic_2, regular_action, symmetric_3, BaseAction};
    use crate::word::{normalize, Word};

    #[test]
    fn fresh_seeds_are_good() {
        for base in [
            regular_action(&cyclic_2()),
            regular_action(&symmetric_3()),
        ] {
            let st = ActionState::new(base);
            let report = check_goodness_bounded(&st, 4);
            assert!(report.passed(), "{report}");
            assert!(report.words_checked > 0);
        }
    }

    #[test]
    fn the_scripted_state_is_good() {
        let st = scripted_c2_state();
        let report = check_goodness_bounded(&st, 6);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn a_one_point_action_reports_a_fixed_point_of_t() {
        let st = ActionState::new(BaseAction::new(cyclic_2(), 1, vec![0, 0]).unwrap());
        let report = check_goodness_bounded(&st, 3);
        assert_eq!(
            report.violations,
            vec![Violation::TFixesPoint {
                point: Point::Base(0)
            }]
        );
        assert_eq!(report.words_checked, 0);
    }

    #[test]
    fn two_r_generators_with_equal_maps_stabilize_a_pair() {
        // r0 and r1 agree on two points, so the word `r0 R1` fixes the pair
        // of their sources. The state passes the structural scan — each map
        // alone is fine — and only the word search catches it.
        let doc: StateDoc = serde_json::from_str(
            r#"{
                "base": {
                    "group": {
                        "order": 2, "identity": 0, "t": 1,
                        "table": [0, 1, 1, 0]
                    },
                    "points": 2,
                    "act": [0, 1, 1, 0]
                },
                "orbits": 1,
                "smaps": [],
                "rmaps": [
                    {"index": 0, "entries": [[{"base": 0}, {"orbit": 0, "g": 0}],
                                             [{"base": 1}, {"orbit": 0, "g": 1}]]},
                    {"index": 1, "entries": [[{"base": 0}, {"orbit": 0, "g": 0}],
                                             [{"base": 1}, {"orbit": 0, "g": 1}]]}
                ]
            }"#,
        )
        .unwrap();
        let st = ActionState::from_doc(&doc).unwrap();
        assert!(st.scan_invariants().is_empty());
        let report = check_goodness_bounded(&st, 2);
        assert!(!report.passed());
        let words: Vec<String> = report
            .violations
            .iter()
            .map(|v| match v {
                Violation::PairStabilized { word, .. } => word.to_string(),
                other => panic!("unexpected violation {other:?}"),
            })
            .collect();
        assert!(words.contains(&"r0 R1".to_string()), "{words:?}");
        assert!(words.contains(&"r1 R0".to_string()), "{words:?}");
    }

    #[test]
    fn a_flip_by_a_plain_r_generator_is_reported() {
        let doc: StateDoc = serde_json::from_str(
            r#"{
                "base": {
                    "group": {
                        "order": 2, "identity": 0, "t": 1,
                        "table": [0, 1, 1, 0]
                    },
                    "points": 2,
                    "act": [0, 1, 1, 0]
                },
                "orbits": 0,
                "smaps": [],
                "rmaps": [
                    {"index": 0, "entries": [[{"base": 0}, {"base": 1}],
                                             [{"base": 1}, {"base": 0}]]}
                ]
            }"#,
        )
        .unwrap();
        let st = ActionState::from_doc(&doc).unwrap();
        let report = check_goodness_bounded(&st, 1);
        // Both the generator and its inverse flip the pair.
        assert_eq!(report.violations.len(), 2);
        let expected_pair = PairRef::new(Point::Base(0), Point::Base(1)).unwrap();
        let mut words = Vec::new();
        for v in &report.violations {
            match v {
                Violation::BadFlip { word, pair } => {
                    assert_eq!(*pair, expected_pair);
                    words.push(word.to_string());
                }
                other => panic!("unexpected violation {other:?}"),
            }
        }
        words.sort();
        assert_eq!(words, ["R0", "r0"]);
    }

    #[test]
    fn flips_by_words_conjugate_to_t_are_allowed() {
        // In the scripted state the witness taking the anchor to its flip
        // must be conjugate to t, so no violation arises even though plenty
        // of flips exist.
        let st = scripted_c2_state();
        let anchor = PairRef::new(Point::Base(0), Point::Base(1)).unwrap();
        assert!(st.flippable(anchor).is_some());
        assert!(check_goodness_bounded(&st, 5).passed());
    }

    /// Brute force: every letter sequence over the full alphabet that is
    /// canonical and acts on at least one pair, by direct filtering.
    fn brute_force_words(st: &ActionState, max_len: usize) -> BTreeSet<Vec<Letter>> {
        let g0 = st.group();
        let mut alphabet: Vec<Letter> = g0
            .elements()
            .filter(|&g| g != g0.identity())
            .map(Letter::Base)
            .collect();
        let mut gens = BTreeSet::new();
        for m in st.moves.values() {
            gens.extend(m.keys().copied());
        }
        alphabet.extend(gens);
        let points: Vec<Point> = st.points().collect();
        let mut out = BTreeSet::new();
        let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
        while let Some(word) = stack.pop() {
            if !word.is_empty() {
                let canonical =
                    normalize(&Word(word.clone()), g0).unwrap().letters() == &word[..];
                if canonical {
                    let acts_on_a_pair = points.iter().any(|&x| {
                        points.iter().any(|&y| {
                            x != y
                                && match (st.act(x, &word), st.act(y, &word)) {
                                    (Some(a), Some(b)) => a != b,
                                    _ => false,
                                }
                        })
                    });
                    if acts_on_a_pair {
                        out.insert(word.clone());
                    }
                }
            }
            if word.len() < max_len {
                for &l in &alphabet {
                    let mut next = word.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
        out
    }

    #[test]
    fn the_search_visits_exactly_the_canonical_words_that_act_on_pairs() {
        let st = scripted_c2_state();
        let dfs = visited_words(&st, 3);
        let brute = brute_force_words(&st, 3);
        let missing: Vec<_> = brute.difference(&dfs).take(5).collect();
        let extra: Vec<_> = dfs.difference(&brute).take(5).collect();
        assert_eq!(
            (missing.as_slice(), extra.as_slice()),
            (&[][..], &[][..]),
            "missing from search / not brute-forced"
        );
        assert_eq!(dfs.len(), brute.len());
        let report = check_goodness_bounded(&st, 3);
        assert_eq!(report.words_checked, dfs.len() as u64);
    }
}
