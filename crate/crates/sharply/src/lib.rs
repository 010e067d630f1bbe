//! Stagewise construction of sharply 2-transitive partial group actions.
//!
//! The crate builds group actions in which every ordered pair of distinct
//! points can be carried to every other by exactly one group element. It
//! starts from a small seed: a finite *base group* with a designated
//! involution `t`, acting on finitely many points. The construction then
//! keeps a *partial action* of an ever larger group — the base group
//! extended by free `s`-generators (which commute with `t`) and free
//! `r`-generators — and grows it by four primitive moves: defining an
//! `s`-generator or `r`-generator at a point, connecting two `t`-pairs, and
//! making a pair flippable. A bounded verifier certifies after each stage
//! that no short word violates the sharpness conditions.
//!
//! Module map:
//!
//! * [`group`] — validated base groups, their actions, and the three seed
//!   hypotheses.
//! * [`word`] — words over the mixed alphabet and their canonical forms.
//! * [`action`] — partial-action states and the four extension operations.
//! * [`engine`] — the scheduler that grows a state under a step budget.
//! * [`text`] — parsing of words, points, and pairs from command-line text.
//! * [`dot`] — Graphviz export of the pair graph.

pub mod action;
pub mod dot;
pub mod engine;
pub mod group;
pub mod text;
pub mod word;

pub use action::goodness::{check_goodness_bounded, GoodnessReport, Violation};
pub use action::{
    ActionError, ActionState, GenKind, InvariantIssue, LoadError, MapDoc, PairRef, Point,
    PointDoc, Sign, StateDoc,
};
pub use dot::export_dot;
pub use engine::{run, state_hash, verify_progress, EngineConfig, EngineError, Report};
pub use group::{
    check_hypotheses, regular_action, BaseAction, BaseGroup, GroupError, HypothesisReport,
};
pub use text::{parse_pair, parse_point, parse_word, ParseError};
pub use word::{
    cyclic_reduce, invert, is_conjugate_to_t, is_cyclically_reduced, is_reduced, multiply,
    normalize, CyclicDecomposition, Letter, NormalForm, Word, WordError,
};

/// Runs the README's code block as a doc-test.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}

/// Runs every code block in the guide as a doc-test, so the book under
/// `book/` can never drift from the crate it documents.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/base-groups.md")]
    pub mod base_groups {}
    #[doc = include_str!("../../../book/src/words.md")]
    pub mod words {}
    #[doc = include_str!("../../../book/src/partial-actions.md")]
    pub mod partial_actions {}
    #[doc = include_str!("../../../book/src/extension-operations.md")]
    pub mod extension_operations {}
    #[doc = include_str!("../../../book/src/engine.md")]
    pub mod engine {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
