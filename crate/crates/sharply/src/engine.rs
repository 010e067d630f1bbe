//! The construction engine: grows a partial action under a step budget.
//!
//! Four task kinds run round-robin, each taking one turn in the fixed order
//! *define s*, *define r*, *join t-pairs*, *make flippable*:
//!
//! * **define s / define r** serve a queue of points, defining a fresh
//!   generator at the front point and enqueueing the new orbit's points, so
//!   every point eventually receives both kinds of generator.
//! * **join t-pairs** connects the first t-pair (in point order) that is
//!   not yet in the anchor pair's component, using a fresh s-generator.
//! * **make flippable** scans all ordered pairs and makes the first one
//!   that is neither connected to the anchor nor already flippable
//!   flippable, by joining the anchor to it with a fresh r-generator.
//!
//! A turn with nothing to do is *idle*; the run stops when the budget is
//! exhausted or all four kinds idle in a row. Everything is deterministic:
//! the same seed and configuration reproduce the same state, hash, and
//! report, byte for byte.

use crate::action::goodness::{check_goodness_bounded, GoodnessReport};
use crate::action::{ActionState, PairRef, Point, Sign};
use crate::group::{check_hypotheses, BaseAction, HypothesisReport};
use crate::word::{is_conjugate_to_t, multiply, NormalForm};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Tuning for a single run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Number of extension operations to execute.
    pub step_budget: u32,
    /// Verify after every this many executed steps; `0` verifies only at
    /// the end. The end-of-run verification always happens.
    pub verify_every: u32,
    /// Word-length bound handed to the verifier.
    pub verify_length: usize,
    /// How many ordered pairs the final progress report covers.
    pub progress_window: usize,
    /// Pair whose component the joining tasks grow; defaults to the first
    /// seed point together with its t-translate.
    pub anchor: Option<PairRef>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            step_budget: 100,
            verify_every: 0,
            verify_length: 6,
            progress_window: 20,
            anchor: None,
        }
    }
}

/// How many tasks of each kind a run executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TaskCounts {
    pub define_s: u32,
    pub define_r: u32,
    pub join_t_pairs: u32,
    pub make_flippable: u32,
}

/// One passed verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GoodnessSummary {
    pub after_step: u32,
    pub max_len: usize,
    pub words_checked: u64,
}

/// Status of one ordered pair in the progress window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgressEntry {
    pub pair: PairRef,
    /// Word carrying the anchor to this pair, when connected.
    pub witness: Option<NormalForm>,
    /// Word carrying this pair to its reversal, when flippable.
    pub flip_witness: Option<NormalForm>,
    pub flip_conjugate_to_t: Option<bool>,
    pub flip_squares_to_identity: Option<bool>,
    /// Whether the pair's component contains any t-pair.
    pub component_has_t_pair: bool,
}

/// Connectivity and flippability over the first few ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgressReport {
    pub anchor: PairRef,
    pub window: usize,
    pub entries: Vec<ProgressEntry>,
}

/// Everything a run reports besides the state itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub steps_executed: u32,
    pub points: usize,
    pub orbits: u32,
    pub task_counts: TaskCounts,
    /// Tasks that were scheduled but rejected by the state; always zero
    /// unless an invariant is broken.
    pub skipped: u32,
    pub verifications: Vec<GoodnessSummary>,
    pub progress: ProgressReport,
    pub state_hash: String,
}

/// Why a run could not start or continue.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the seed action violates the construction hypotheses:\n{0}")]
    Hypotheses(HypothesisReport),
    #[error("anchor {pair} is not a live t-pair of the seed action")]
    BadAnchor { pair: PairRef },
    #[error("verification failed after step {after_step}:\n{report}")]
    Goodness {
        after_step: u32,
        report: GoodnessReport,
    },
}

/// Hex SHA-256 of the canonical JSON serialization of the state.
pub fn state_hash(st: &ActionState) -> String {
    let json = serde_json::to_string(&st.to_doc()).expect("state docs always serialize");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Examines the first `window` ordered pairs of distinct points.
pub fn verify_progress(st: &ActionState, anchor: PairRef, window: usize) -> ProgressReport {
    let g0 = st.group();
    let mut entries = Vec::new();
    'outer: for x in st.points() {
        for y in st.points() {
            if x == y {
                continue;
            }
            if entries.len() == window {
                break 'outer;
            }
            let pair = PairRef::new(x, y).expect("distinct by construction");
            let witness = st.connected(anchor, pair);
            let flip_witness = st.flippable(pair);
            let flip_conjugate_to_t = flip_witness.as_ref().map(|w| is_conjugate_to_t(w, g0));
            let flip_squares_to_identity =
                flip_witness.as_ref().map(|w| multiply(w, w, g0).is_empty());
            let component_has_t_pair = st
                .pair_component(pair)
                .iter()
                .any(|p| st.is_t_pair(*p));
            entries.push(ProgressEntry {
                pair,
                witness,
                flip_witness,
                flip_conjugate_to_t,
                flip_squares_to_identity,
                component_has_t_pair,
            });
        }
    }
    ProgressReport {
        anchor,
        window,
        entries,
    }
}

#[derive(Clone, Copy)]
enum TaskKind {
    DefineS,
    DefineR,
    JoinTPairs,
    MakeFlippable,
}

const ROTATION: [TaskKind; 4] = [
    TaskKind::DefineS,
    TaskKind::DefineR,
    TaskKind::JoinTPairs,
    TaskKind::MakeFlippable,
];

/// What a scheduler turn did.
enum Turn {
    Executed,
    /// Nothing to do for this kind right now.
    Idle,
    /// A scheduled task was rejected by the state. Cannot happen unless an
    /// invariant is broken; counted defensively rather than trusted.
    Rejected,
}

struct Scheduler {
    define_s_queue: std::collections::VecDeque<Point>,
    define_r_queue: std::collections::VecDeque<Point>,
    known_flippable: std::collections::BTreeSet<PairRef>,
    anchor: PairRef,
}

impl Scheduler {
    fn new(st: &ActionState, anchor: PairRef) -> Scheduler {
        Scheduler {
            define_s_queue: st.points().collect(),
            define_r_queue: st.points().collect(),
            known_flippable: Default::default(),
            anchor,
        }
    }

    fn enqueue_orbit(&mut self, st: &ActionState, orbit: u32) {
        for g in st.group().elements() {
            let p = Point::Orbit { orbit, g };
            self.define_s_queue.push_back(p);
            self.define_r_queue.push_back(p);
        }
    }

    /// Runs one turn of the given kind.
    fn turn(&mut self, st: &mut ActionState, kind: TaskKind) -> Turn {
        match kind {
            TaskKind::DefineS => {
                let Some(x) = self.define_s_queue.pop_front() else {
                    return Turn::Idle;
                };
                let index = st.next_s_index();
                let orbit = st.orbit_count();
                match st.extend_s(x, index, Sign::Plus) {
                    Ok(()) => {
                        self.enqueue_orbit(st, orbit);
                        self.define_s_queue.push_back(x);
                        Turn::Executed
                    }
                    Err(_) => Turn::Rejected,
                }
            }
            TaskKind::DefineR => {
                let Some(x) = self.define_r_queue.pop_front() else {
                    return Turn::Idle;
                };
                let index = st.next_r_index();
                let orbit = st.orbit_count();
                match st.extend_r(x, index, Sign::Plus) {
                    Ok(()) => {
                        self.enqueue_orbit(st, orbit);
                        self.define_r_queue.push_back(x);
                        Turn::Executed
                    }
                    Err(_) => Turn::Rejected,
                }
            }
            TaskKind::JoinTPairs => {
                let comp = st.pair_component(self.anchor);
                let candidate = st
                    .t_pairs()
                    .find(|b| *b != self.anchor && !comp.contains(b));
                let Some(b) = candidate else {
                    return Turn::Idle;
                };
                let index = st.next_s_index();
                match st.join_t_pairs(self.anchor, b, index) {
                    Ok(()) => Turn::Executed,
                    Err(_) => Turn::Rejected,
                }
            }
            TaskKind::MakeFlippable => {
                let comp = st.pair_component(self.anchor);
                let mut candidate = None;
                'scan: for x in st.points() {
                    for y in st.points() {
                        if x == y {
                            continue;
                        }
                        let b = PairRef::new(x, y).expect("distinct");
                        if comp.contains(&b) || self.known_flippable.contains(&b) {
                            continue;
                        }
                        if st.flippable(b).is_some() {
                            self.known_flippable.insert(b);
                            continue;
                        }
                        candidate = Some(b);
                        break 'scan;
                    }
                }
                let Some(b) = candidate else {
                    return Turn::Idle;
                };
                let index = st.next_r_index();
                match st.join_pairs(self.anchor, b, index) {
                    Ok(()) => {
                        self.known_flippable.insert(b);
                        Turn::Executed
                    }
                    Err(_) => Turn::Rejected,
                }
            }
        }
    }
}

/// Runs the construction from a seed action.
///
/// Checks the seed hypotheses, executes up to `step_budget` extension
/// operations, verifies along the way as configured (and always at the
/// end), and reports progress over the leading window of pairs.
pub fn run(seed: BaseAction, cfg: &EngineConfig) -> Result<(ActionState, Report), EngineError> {
    let hypotheses = check_hypotheses(&seed);
    if !hypotheses.passed() {
        return Err(EngineError::Hypotheses(hypotheses));
    }
    let mut st = ActionState::new(seed);
    let anchor = match cfg.anchor {
        Some(pair) => pair,
        None => {
            let first = Point::Base(0);
            PairRef::new(first, st.t_point(first)).expect("t moves every point")
        }
    };
    if !st.is_live(anchor.first()) || !st.is_live(anchor.second()) || !st.is_t_pair(anchor) {
        return Err(EngineError::BadAnchor { pair: anchor });
    }

    let mut scheduler = Scheduler::new(&st, anchor);
    let mut counts = TaskCounts::default();
    let mut skipped = 0u32;
    let mut verifications = Vec::new();
    let mut executed = 0u32;
    let mut last_verified: Option<u32> = None;
    let mut idle_kinds = 0u32;
    let mut next_kind = 0usize;

    let verify = |st: &ActionState,
                  executed: u32,
                  verifications: &mut Vec<GoodnessSummary>|
     -> Result<(), EngineError> {
        let report = check_goodness_bounded(st, cfg.verify_length);
        if !report.passed() {
            return Err(EngineError::Goodness {
                after_step: executed,
                report,
            });
        }
        verifications.push(GoodnessSummary {
            after_step: executed,
            max_len: report.max_len,
            words_checked: report.words_checked,
        });
        Ok(())
    };

    while executed < cfg.step_budget && idle_kinds < 4 {
        let kind = ROTATION[next_kind];
        next_kind = (next_kind + 1) % 4;
        match scheduler.turn(&mut st, kind) {
            Turn::Executed => {
                executed += 1;
                idle_kinds = 0;
                match kind {
                    TaskKind::DefineS => counts.define_s += 1,
                    TaskKind::DefineR => counts.define_r += 1,
                    TaskKind::JoinTPairs => counts.join_t_pairs += 1,
                    TaskKind::MakeFlippable => counts.make_flippable += 1,
                }
                if cfg.verify_every > 0 && executed.is_multiple_of(cfg.verify_every) {
                    verify(&st, executed, &mut verifications)?;
                    last_verified = Some(executed);
                }
            }
            Turn::Idle => idle_kinds += 1,
            Turn::Rejected => {
                skipped += 1;
                idle_kinds += 1;
            }
        }
    }

    if last_verified != Some(executed) {
        verify(&st, executed, &mut verifications)?;
    }

    let progress = verify_progress(&st, anchor, cfg.progress_window);
    let report = Report {
        steps_executed: executed,
        points: st.points_len(),
        orbits: st.orbit_count(),
        task_counts: counts,
        skipped,
        verifications,
        progress,
        state_hash: state_hash(&st),
    };
    Ok((st, report))
}

/// Checks a window pair's flip witness: it must exist, be conjugate to the
/// designated involution, and square to the identity.
pub fn flip_witness_is_sound(st: &ActionState, pair: PairRef) -> bool {
    let g0 = st.group();
    match st.flippable(pair) {
        Some(w) => is_conjugate_to_t(&w, g0) && multiply(&w, &w, g0).is_empty(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_2, klein_4, regular_action, symmetric_3};

    fn c2_seed() -> BaseAction {
        regular_action(&cyclic_2())
    }

    fn cfg(budget: u32) -> EngineConfig {
        EngineConfig {
            step_budget: budget,
            ..EngineConfig::default()
        }
    }

    #[test]
    fn the_first_task_defines_an_s_generator_at_the_first_point() {
        let (st, report) = run(c2_seed(), &cfg(1)).unwrap();
        assert_eq!(report.steps_executed, 1);
        assert_eq!(report.task_counts.define_s, 1);
        assert_eq!(report.task_counts.define_r, 0);
        assert_eq!(st.points_len(), 4);
        assert_eq!(
            st.act(Point::Base(0), &[crate::word::Letter::s(0)]),
            Some(Point::Orbit { orbit: 0, g: 0 })
        );
    }

    #[test]
    fn budget_zero_leaves_the_seed_untouched_but_still_verifies() {
        let (st, report) = run(c2_seed(), &cfg(0)).unwrap();
        assert_eq!(report.steps_executed, 0);
        assert_eq!(st.points_len(), 2);
        assert_eq!(report.verifications.len(), 1);
        assert_eq!(report.verifications[0].after_step, 0);
        let fresh = ActionState::new(c2_seed());
        assert_eq!(report.state_hash, state_hash(&fresh));
    }

    #[test]
    fn hypothesis_failures_stop_the_run_before_it_starts() {
        let err = run(regular_action(&klein_4()), &cfg(5)).unwrap_err();
        match err {
            EngineError::Hypotheses(report) => {
                assert!(report.involutions_conjugate.is_some());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn anchors_must_be_live_t_pairs() {
        let anchor = PairRef::new(Point::Base(0), Point::Base(4)).unwrap();
        let err = run(
            regular_action(&symmetric_3()),
            &EngineConfig {
                step_budget: 3,
                anchor: Some(anchor),
                ..EngineConfig::default()
            },
        )
        .unwrap_err();
        assert_eq!(err, EngineError::BadAnchor { pair: anchor });
    }

    #[test]
    fn different_budgets_produce_different_states() {
        let (_, a) = run(c2_seed(), &cfg(10)).unwrap();
        let (_, b) = run(c2_seed(), &cfg(11)).unwrap();
        assert_ne!(a.state_hash, b.state_hash);
    }

    #[test]
    fn identical_runs_report_identically() {
        let config = EngineConfig {
            step_budget: 60,
            verify_every: 30,
            ..EngineConfig::default()
        };
        let (_, a) = run(c2_seed(), &config).unwrap();
        let (_, b) = run(c2_seed(), &config).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn verifying_after_every_step_passes_on_a_small_run() {
        let config = EngineConfig {
            step_budget: 12,
            verify_every: 1,
            verify_length: 4,
            ..EngineConfig::default()
        };
        let (_, report) = run(c2_seed(), &config).unwrap();
        assert_eq!(report.verifications.len(), 12);
        for (i, v) in report.verifications.iter().enumerate() {
            assert_eq!(v.after_step as usize, i + 1);
        }
    }

    #[test]
    fn the_seed_window_is_fully_connected_and_flippable() {
        let config = EngineConfig {
            step_budget: 0,
            progress_window: 1,
            ..EngineConfig::default()
        };
        let (st, report) = run(c2_seed(), &config).unwrap();
        assert_eq!(report.progress.entries.len(), 1);
        let entry = &report.progress.entries[0];
        assert_eq!(entry.pair, PairRef::new(Point::Base(0), Point::Base(1)).unwrap());
        assert_eq!(entry.witness.as_ref().map(NormalForm::len), Some(0));
        assert_eq!(
            entry.flip_witness.as_ref().map(NormalForm::to_string),
            Some("g1".to_string())
        );
        assert_eq!(entry.flip_conjugate_to_t, Some(true));
        assert_eq!(entry.flip_squares_to_identity, Some(true));
        assert!(entry.component_has_t_pair);
        assert!(flip_witness_is_sound(&st, entry.pair));
    }

    #[test]
    fn progress_is_monotone_between_snapshots() {
        let (_, early) = run(c2_seed(), &cfg(60)).unwrap();
        let (_, late) = run(c2_seed(), &cfg(120)).unwrap();
        assert_eq!(early.progress.entries.len(), 20);
        assert_eq!(late.progress.entries.len(), 20);
        for (a, b) in early.progress.entries.iter().zip(&late.progress.entries) {
            assert_eq!(a.pair, b.pair);
            if a.witness.is_some() {
                assert!(b.witness.is_some(), "pair {} lost its connection", a.pair);
            }
            if a.flip_witness.is_some() {
                assert!(b.flip_witness.is_some(), "pair {} lost its flip", a.pair);
            }
        }
    }

    #[test]
    fn define_turns_stay_balanced() {
        let (_, report) = run(c2_seed(), &cfg(37)).unwrap();
        let c = report.task_counts;
        assert!(c.define_s.abs_diff(c.define_r) <= 1);
        assert!(c.join_t_pairs <= c.define_s);
        assert!(c.make_flippable <= c.define_s);
        assert_eq!(
            c.define_s + c.define_r + c.join_t_pairs + c.make_flippable,
            37
        );
        assert_eq!(report.skipped, 0);
    }
}
