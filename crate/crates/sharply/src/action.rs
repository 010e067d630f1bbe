//! Partial actions of the extended group on a growing point set.
//!
//! An [`ActionState`] holds a base action (the seed) plus finitely many
//! *orbits*: free copies of the base group added one at a time. Base-group
//! letters act totally on every point; each `s`- or `r`-generator acts
//! through an explicit, finite, injective partial map. `s`-maps are kept
//! closed under the designated involution `t` (if `s` is defined at `x` it
//! is defined at `x·t`, compatibly), which makes `s` and `t` commute
//! wherever that means anything. `r`-maps carry no such closure.
//!
//! The state grows only through four operations — [`ActionState::extend_s`],
//! [`ActionState::extend_r`], [`ActionState::join_t_pairs`], and
//! [`ActionState::join_pairs`] — each of which validates all of its
//! preconditions before touching anything, so a rejected call leaves the
//! state byte-for-byte unchanged.

pub mod goodness;

use crate::group::{ActionDoc, BaseAction, BaseGroup, ElemId, GroupError, PointId};
use crate::word::{normalize, Letter, NormalForm, Word};
use serde::{Deserialize, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// A point of the growing action: either a seed point or a point of an
/// added orbit, tagged by the base-group element it carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Base(PointId),
    Orbit { orbit: u32, g: ElemId },
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Point::Base(i) => write!(f, "b{i}"),
            Point::Orbit { orbit, g } => write!(f, "o{orbit}.{g}"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An ordered pair of distinct points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairRef {
    first: Point,
    second: Point,
}

impl PairRef {
    pub fn new(first: Point, second: Point) -> Result<PairRef, ActionError> {
        if first == second {
            return Err(ActionError::DegeneratePair { point: first });
        }
        Ok(PairRef { first, second })
    }

    pub fn first(&self) -> Point {
        self.first
    }

    pub fn second(&self) -> Point {
        self.second
    }

    /// The same two points in the opposite order.
    pub fn flipped(&self) -> PairRef {
        PairRef {
            first: self.second,
            second: self.first,
        }
    }
}

impl fmt::Display for PairRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

impl Serialize for PairRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Direction of a generator extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Which family a generator index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    S,
    R,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::S => write!(f, "s"),
            GenKind::R => write!(f, "r"),
        }
    }
}

/// A rejected extension operation; the state is unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("point {point} does not exist in this state")]
    PointNotLive { point: Point },
    #[error("a pair must consist of two distinct points, got {point} twice")]
    DegeneratePair { point: Point },
    #[error("generator letter {letter} is already defined at point {point}")]
    AlreadyDefined { point: Point, letter: Letter },
    #[error("pair {pair} is not a t-pair")]
    NotTPair { pair: PairRef },
    #[error("pairs {a} and {b} are already connected")]
    AlreadyConnected { a: PairRef, b: PairRef },
    #[error("pair {a} is already connected to the flip of {b}")]
    ConnectedToFlip { a: PairRef, b: PairRef },
    #[error("pair {pair} is already flippable")]
    AlreadyFlippable { pair: PairRef },
    #[error("generator {kind}{index} is already in use; joins need a fresh index")]
    GeneratorNotFresh { kind: GenKind, index: u32 },
}

/// A point in a serialized state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDoc {
    Base { base: u32 },
    Orbit { orbit: u32, g: u16 },
}

impl From<Point> for PointDoc {
    fn from(p: Point) -> PointDoc {
        match p {
            Point::Base(i) => PointDoc::Base { base: i },
            Point::Orbit { orbit, g } => PointDoc::Orbit { orbit, g },
        }
    }
}

impl From<PointDoc> for Point {
    fn from(p: PointDoc) -> Point {
        match p {
            PointDoc::Base { base } => Point::Base(base),
            PointDoc::Orbit { orbit, g } => Point::Orbit { orbit, g },
        }
    }
}

/// One generator's partial map in a serialized state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub index: u32,
    pub entries: Vec<(PointDoc, PointDoc)>,
}

/// A full serialized state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDoc {
    pub base: ActionDoc,
    pub orbits: u32,
    pub smaps: Vec<MapDoc>,
    pub rmaps: Vec<MapDoc>,
}

/// A malformed serialized state.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("map index {kind}{index} appears twice")]
    DuplicateMapIndex { kind: GenKind, index: u32 },
    #[error("map {kind}{index} defines point {point} twice")]
    DuplicateSource {
        kind: GenKind,
        index: u32,
        point: Point,
    },
    #[error("map {kind}{index} mentions point {point}, which does not exist in this state")]
    PointOutOfRange {
        kind: GenKind,
        index: u32,
        point: Point,
    },
}

/// A structural defect found by [`ActionState::scan_invariants`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantIssue {
    #[error("map {kind}{index} sends both {a} and {b} to {target}")]
    NonInjective {
        kind: GenKind,
        index: u32,
        a: Point,
        b: Point,
        target: Point,
    },
    #[error("map s{index} is defined at {point} but not at its t-translate")]
    SMapNotTClosed { index: u32, point: Point },
}

fn gen_inverse(l: Letter) -> Letter {
    match l {
        Letter::S { index, inv } => Letter::S { index, inv: !inv },
        Letter::R { index, inv } => Letter::R { index, inv: !inv },
        Letter::Base(_) => unreachable!("only generator letters are indexed"),
    }
}

/// A partial action of the extended group.
#[derive(Debug, Clone)]
pub struct ActionState {
    base: BaseAction,
    orbits: u32,
    smaps: BTreeMap<u32, BTreeMap<Point, Point>>,
    rmaps: BTreeMap<u32, BTreeMap<Point, Point>>,
    /// Index of all generator-map entries in both directions, per point.
    moves: BTreeMap<Point, BTreeMap<Letter, Point>>,
}

impl ActionState {
    pub fn new(base: BaseAction) -> ActionState {
        ActionState {
            base,
            orbits: 0,
            smaps: BTreeMap::new(),
            rmaps: BTreeMap::new(),
            moves: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &BaseGroup {
        self.base.group()
    }

    pub fn base(&self) -> &BaseAction {
        &self.base
    }

    pub fn orbit_count(&self) -> u32 {
        self.orbits
    }

    /// All points of the state, in their natural order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let order = self.group().order();
        (0..self.base.points()).map(Point::Base).chain(
            (0..self.orbits)
                .flat_map(move |orbit| (0..order).map(move |g| Point::Orbit { orbit, g })),
        )
    }

    pub fn points_len(&self) -> usize {
        self.base.points() as usize + self.orbits as usize * self.group().order() as usize
    }

    pub fn is_live(&self, p: Point) -> bool {
        match p {
            Point::Base(i) => i < self.base.points(),
            Point::Orbit { orbit, g } => orbit < self.orbits && g < self.group().order(),
        }
    }

    /// The (total) action of a base-group element.
    pub fn point_mul(&self, p: Point, g: ElemId) -> Point {
        match p {
            Point::Base(i) => Point::Base(self.base.apply(i, g)),
            Point::Orbit { orbit, g: h } => Point::Orbit {
                orbit,
                g: self.group().mul(h, g),
            },
        }
    }

    /// The image of a point under the designated involution.
    pub fn t_point(&self, p: Point) -> Point {
        self.point_mul(p, self.group().t())
    }

    fn lookup(&self, p: Point, l: Letter) -> Option<Point> {
        self.moves.get(&p).and_then(|m| m.get(&l)).copied()
    }

    /// Applies one letter, if defined at this point.
    pub fn apply_letter(&self, p: Point, l: Letter) -> Option<Point> {
        match l {
            Letter::Base(g) => Some(self.point_mul(p, g)),
            _ => self.lookup(p, l),
        }
    }

    /// Applies a word letter by letter; `None` as soon as a letter is
    /// undefined along the way.
    pub fn act(&self, p: Point, w: &[Letter]) -> Option<Point> {
        w.iter().try_fold(p, |q, &l| self.apply_letter(q, l))
    }

    /// Applies one letter to both components of a pair. Degenerate images
    /// (both components colliding, possible only in corrupt states) count
    /// as undefined.
    pub fn pair_act(&self, p: PairRef, l: Letter) -> Option<PairRef> {
        let first = self.apply_letter(p.first, l)?;
        let second = self.apply_letter(p.second, l)?;
        PairRef::new(first, second).ok()
    }

    /// Every letter defined on both components, with the image pair, in a
    /// deterministic order: base letters ascending, then map letters.
    pub fn pair_moves(&self, p: PairRef) -> Vec<(Letter, PairRef)> {
        let g0 = self.group();
        let mut out = Vec::new();
        for g in g0.elements() {
            if g == g0.identity() {
                continue;
            }
            out.push((
                Letter::Base(g),
                PairRef {
                    first: self.point_mul(p.first, g),
                    second: self.point_mul(p.second, g),
                },
            ));
        }
        if let Some(m) = self.moves.get(&p.first) {
            for (&l, &q1) in m {
                let Some(q2) = self.lookup(p.second, l) else {
                    continue;
                };
                if let Ok(q) = PairRef::new(q1, q2) {
                    out.push((l, q));
                }
            }
        }
        out
    }

    pub fn is_t_pair(&self, p: PairRef) -> bool {
        p.second == self.t_point(p.first)
    }

    /// All pairs of the form `(x, x·t)`, in point order.
    pub fn t_pairs(&self) -> impl Iterator<Item = PairRef> + '_ {
        self.points().map(|x| PairRef {
            first: x,
            second: self.t_point(x),
        })
    }

    /// Breadth-first search over the pair graph; the witness is the
    /// canonical form of the letters along a shortest path from `a` to `b`.
    pub fn connected(&self, a: PairRef, b: PairRef) -> Option<NormalForm> {
        if a == b {
            return Some(NormalForm::empty());
        }
        let mut parent: BTreeMap<PairRef, (PairRef, Letter)> = BTreeMap::new();
        let mut visited = BTreeSet::from([a]);
        let mut queue = VecDeque::from([a]);
        while let Some(cur) = queue.pop_front() {
            for (l, next) in self.pair_moves(cur) {
                if !visited.insert(next) {
                    continue;
                }
                parent.insert(next, (cur, l));
                if next == b {
                    let mut letters = Vec::new();
                    let mut n = b;
                    while n != a {
                        let (prev, step) = parent[&n];
                        letters.push(step);
                        n = prev;
                    }
                    letters.reverse();
                    let w = Word(letters);
                    return Some(normalize(&w, self.group()).expect("letters come from the state"));
                }
                queue.push_back(next);
            }
        }
        None
    }

    /// A word carrying `p` to its flip, if the pair graph contains one.
    pub fn flippable(&self, p: PairRef) -> Option<NormalForm> {
        self.connected(p, p.flipped())
    }

    /// Every pair reachable from `a` in the pair graph, including `a`.
    pub fn pair_component(&self, a: PairRef) -> BTreeSet<PairRef> {
        let mut visited = BTreeSet::from([a]);
        let mut queue = VecDeque::from([a]);
        while let Some(cur) = queue.pop_front() {
            for (_, next) in self.pair_moves(cur) {
                if visited.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        visited
    }

    /// The smallest s-index never used.
    pub fn next_s_index(&self) -> u32 {
        self.smaps.last_key_value().map_or(0, |(&k, _)| k + 1)
    }

    /// The smallest r-index never used.
    pub fn next_r_index(&self) -> u32 {
        self.rmaps.last_key_value().map_or(0, |(&k, _)| k + 1)
    }

    fn add_s_entry(&mut self, index: u32, from: Point, to: Point) {
        self.smaps.entry(index).or_default().insert(from, to);
        self.index_entry(Letter::S { index, inv: false }, from, to);
    }

    fn add_r_entry(&mut self, index: u32, from: Point, to: Point) {
        self.rmaps.entry(index).or_default().insert(from, to);
        self.index_entry(Letter::R { index, inv: false }, from, to);
    }

    fn index_entry(&mut self, l: Letter, from: Point, to: Point) {
        self.moves.entry(from).or_default().insert(l, to);
        self.moves.entry(to).or_default().insert(gen_inverse(l), from);
    }

    fn fresh_orbit(&mut self) -> Point {
        let orbit = self.orbits;
        self.orbits += 1;
        Point::Orbit {
            orbit,
            g: self.group().identity(),
        }
    }

    /// Defines `s_index` (or its inverse, for [`Sign::Minus`]) at `x`,
    /// sending it into a fresh orbit. The map entry for `x·t` is added too,
    /// keeping the s-map t-closed.
    pub fn extend_s(&mut self, x: Point, index: u32, sign: Sign) -> Result<(), ActionError> {
        if !self.is_live(x) {
            return Err(ActionError::PointNotLive { point: x });
        }
        let letter = Letter::S {
            index,
            inv: sign == Sign::Minus,
        };
        if self.lookup(x, letter).is_some() {
            return Err(ActionError::AlreadyDefined { point: x, letter });
        }
        let xp = self.fresh_orbit();
        let xt = self.t_point(x);
        let xpt = self.t_point(xp);
        match sign {
            Sign::Plus => {
                self.add_s_entry(index, x, xp);
                self.add_s_entry(index, xt, xpt);
            }
            Sign::Minus => {
                self.add_s_entry(index, xp, x);
                self.add_s_entry(index, xpt, xt);
            }
        }
        Ok(())
    }

    /// Defines `r_index` (or its inverse) at `x`, sending it into a fresh
    /// orbit. Exactly one map entry is added.
    pub fn extend_r(&mut self, x: Point, index: u32, sign: Sign) -> Result<(), ActionError> {
        if !self.is_live(x) {
            return Err(ActionError::PointNotLive { point: x });
        }
        let letter = Letter::R {
            index,
            inv: sign == Sign::Minus,
        };
        if self.lookup(x, letter).is_some() {
            return Err(ActionError::AlreadyDefined { point: x, letter });
        }
        let xp = self.fresh_orbit();
        match sign {
            Sign::Plus => self.add_r_entry(index, x, xp),
            Sign::Minus => self.add_r_entry(index, xp, x),
        }
        Ok(())
    }

    fn require_live_pair(&self, p: PairRef) -> Result<(), ActionError> {
        for point in [p.first, p.second] {
            if !self.is_live(point) {
                return Err(ActionError::PointNotLive { point });
            }
        }
        Ok(())
    }

    /// Connects two t-pairs with a fresh s-generator.
    ///
    /// Requires, in this order: both pairs are t-pairs, the pairs are not
    /// already connected, and the s-index is unused.
    pub fn join_t_pairs(&mut self, a: PairRef, b: PairRef, index: u32) -> Result<(), ActionError> {
        self.require_live_pair(a)?;
        self.require_live_pair(b)?;
        if !self.is_t_pair(a) {
            return Err(ActionError::NotTPair { pair: a });
        }
        if !self.is_t_pair(b) {
            return Err(ActionError::NotTPair { pair: b });
        }
        if self.connected(a, b).is_some() {
            return Err(ActionError::AlreadyConnected { a, b });
        }
        if self.smaps.contains_key(&index) {
            return Err(ActionError::GeneratorNotFresh {
                kind: GenKind::S,
                index,
            });
        }
        self.add_s_entry(index, a.first, b.first);
        self.add_s_entry(index, a.second, b.second);
        Ok(())
    }

    /// Connects two pairs with a fresh r-generator, the move that makes `b`
    /// flippable once `a` is.
    ///
    /// Requires, in this order: the pairs are not already connected, `a` is
    /// not connected to the flip of `b`, `b` is not already flippable, and
    /// the r-index is unused.
    pub fn join_pairs(&mut self, a: PairRef, b: PairRef, index: u32) -> Result<(), ActionError> {
        self.require_live_pair(a)?;
        self.require_live_pair(b)?;
        if self.connected(a, b).is_some() {
            return Err(ActionError::AlreadyConnected { a, b });
        }
        if self.connected(a, b.flipped()).is_some() {
            return Err(ActionError::ConnectedToFlip { a, b });
        }
        if self.flippable(b).is_some() {
            return Err(ActionError::AlreadyFlippable { pair: b });
        }
        if self.rmaps.contains_key(&index) {
            return Err(ActionError::GeneratorNotFresh {
                kind: GenKind::R,
                index,
            });
        }
        self.add_r_entry(index, a.first, b.first);
        self.add_r_entry(index, a.second, b.second);
        Ok(())
    }

    pub fn to_doc(&self) -> StateDoc {
        let dump = |maps: &BTreeMap<u32, BTreeMap<Point, Point>>| {
            maps.iter()
                .map(|(&index, entries)| MapDoc {
                    index,
                    entries: entries
                        .iter()
                        .map(|(&from, &to)| (from.into(), to.into()))
                        .collect(),
                })
                .collect()
        };
        StateDoc {
            base: self.base.to_doc(),
            orbits: self.orbits,
            smaps: dump(&self.smaps),
            rmaps: dump(&self.rmaps),
        }
    }

    pub fn from_doc(doc: &StateDoc) -> Result<ActionState, LoadError> {
        let base = BaseAction::from_doc(&doc.base)?;
        let mut st = ActionState::new(base);
        st.orbits = doc.orbits;
        for (kind, maps) in [(GenKind::S, &doc.smaps), (GenKind::R, &doc.rmaps)] {
            let mut seen = BTreeSet::new();
            for map in maps {
                if !seen.insert(map.index) {
                    return Err(LoadError::DuplicateMapIndex {
                        kind,
                        index: map.index,
                    });
                }
                let mut sources = BTreeSet::new();
                for &(from, to) in &map.entries {
                    for p in [Point::from(from), Point::from(to)] {
                        if !st.is_live(p) {
                            return Err(LoadError::PointOutOfRange {
                                kind,
                                index: map.index,
                                point: p,
                            });
                        }
                    }
                    if !sources.insert(Point::from(from)) {
                        return Err(LoadError::DuplicateSource {
                            kind,
                            index: map.index,
                            point: from.into(),
                        });
                    }
                }
            }
        }
        for map in &doc.smaps {
            st.smaps.entry(map.index).or_default();
            for &(from, to) in &map.entries {
                st.add_s_entry(map.index, from.into(), to.into());
            }
        }
        for map in &doc.rmaps {
            st.rmaps.entry(map.index).or_default();
            for &(from, to) in &map.entries {
                st.add_r_entry(map.index, from.into(), to.into());
            }
        }
        Ok(st)
    }

    /// Structural checks beyond what loading enforces: every generator map
    /// must be injective and every s-map t-closed. States built through the
    /// four operations always pass; hand-edited files may not.
    pub fn scan_invariants(&self) -> Vec<InvariantIssue> {
        let mut issues = Vec::new();
        for (kind, maps) in [(GenKind::S, &self.smaps), (GenKind::R, &self.rmaps)] {
            for (&index, entries) in maps {
                let mut by_target: BTreeMap<Point, Point> = BTreeMap::new();
                for (&from, &to) in entries {
                    if let Some(&other) = by_target.get(&to) {
                        issues.push(InvariantIssue::NonInjective {
                            kind,
                            index,
                            a: other,
                            b: from,
                            target: to,
                        });
                    } else {
                        by_target.insert(to, from);
                    }
                }
            }
        }
        for (&index, entries) in &self.smaps {
            for (&from, &to) in entries {
                let ft = self.t_point(from);
                if entries.get(&ft) != Some(&self.t_point(to)) {
                    issues.push(InvariantIssue::SMapNotTClosed { index, point: from });
                }
            }
        }
        issues
    }
}
