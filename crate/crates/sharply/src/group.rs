//! Finite base groups given as multiplication tables, finite actions of those
//! groups, and the structural checks a base group must pass before it can seed
//! a construction run: the initial action is 2-sharp, all involutions lie in a
//! single conjugacy class, and the designated involution moves every point.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Identifier of a base-group element: an index into the multiplication table.
pub type ElemId = u16;

/// Identifier of a point of a finite base action.
pub type PointId = u32;

/// Problems detected while validating a multiplication table or action table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be at least 2 (an involution is required), got {0}")]
    OrderTooSmall(u16),
    #[error("multiplication table has {got} entries, expected {expected} for order {order}")]
    TableSize { order: u16, expected: usize, got: usize },
    #[error("table entry at ({row}, {col}) is {value}, not an element id below {order}")]
    EntryOutOfRange {
        row: ElemId,
        col: ElemId,
        value: ElemId,
        order: u16,
    },
    #[error("identity id {identity} is not below the group order {order}")]
    IdentityOutOfRange { identity: ElemId, order: u16 },
    #[error("involution id {t} is not below the group order {order}")]
    TOutOfRange { t: ElemId, order: u16 },
    #[error("identity law violated at {g}: {identity}*{g} = {left}, {g}*{identity} = {right}")]
    IdentityLaw {
        identity: ElemId,
        g: ElemId,
        left: ElemId,
        right: ElemId,
    },
    #[error(
        "associativity violated at ({a}, {b}, {c}): ({a}*{b})*{c} = {lhs} but {a}*({b}*{c}) = {rhs}"
    )]
    Associativity {
        a: ElemId,
        b: ElemId,
        c: ElemId,
        lhs: ElemId,
        rhs: ElemId,
    },
    #[error("element {g} has no two-sided inverse")]
    NoInverse { g: ElemId },
    #[error("designated involution must differ from the identity")]
    TIsIdentity,
    #[error("designated involution squares to {got}, not to the identity")]
    TNotInvolution { got: ElemId },
    #[error("labels list has {got} entries, expected one per element ({expected})")]
    LabelCount { expected: usize, got: usize },
    #[error("an action needs at least one point")]
    NoPoints,
    #[error("action table has {got} entries, expected {expected} ({points} points x order {order})")]
    ActionTableSize {
        points: u32,
        order: u16,
        expected: usize,
        got: usize,
    },
    #[error("action entry for point {x} under element {g} is {value}, not a point id below {points}")]
    ActionEntryOutOfRange {
        x: PointId,
        g: ElemId,
        value: PointId,
        points: u32,
    },
    #[error("action identity law violated: point {x} moves to {got} under the identity")]
    ActionIdentityLaw { x: PointId, got: PointId },
    #[error(
        "action compatibility violated at point {x}, elements ({g}, {h}): acting by {g} then {h} gives {lhs}, acting by their product gives {rhs}"
    )]
    ActionCompatibility {
        x: PointId,
        g: ElemId,
        h: ElemId,
        lhs: PointId,
        rhs: PointId,
    },
}

/// On-disk form of a base group: a row-major multiplication table plus the
/// designated identity and involution, with optional human-readable labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub order: u16,
    pub identity: ElemId,
    pub t: ElemId,
    pub table: Vec<ElemId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// On-disk form of a finite action of a base group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub group: GroupDoc,
    pub points: u32,
    pub act: Vec<PointId>,
}

/// A validated finite group with a designated involution `t`.
///
/// The multiplication table is the single source of truth for arithmetic.
/// Validation also fixes, for every element `g`, a representative of the set
/// `{g, t*g}`: the identity for the set `{identity, t}`, otherwise the element
/// with the smaller id. These representatives (the *transversal*) are what the
/// word normal form uses to place base letters canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGroup {
    order: u16,
    identity: ElemId,
    t: ElemId,
    table: Vec<ElemId>,
    inverse: Vec<ElemId>,
    coset_rep: Vec<ElemId>,
    labels: Option<Vec<String>>,
}

impl BaseGroup {
    /// Validates a multiplication table and designated elements, returning the
    /// first violated axiom with a concrete witness on failure.
    pub fn from_table(
        order: u16,
        identity: ElemId,
        t: ElemId,
        table: Vec<ElemId>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order < 2 {
            return Err(GroupError::OrderTooSmall(order));
        }
        let n = order as usize;
        if table.len() != n * n {
            return Err(GroupError::TableSize {
                order,
                expected: n * n,
                got: table.len(),
            });
        }
        if identity >= order {
            return Err(GroupError::IdentityOutOfRange { identity, order });
        }
        if t >= order {
            return Err(GroupError::TOutOfRange { t, order });
        }
        for row in 0..order {
            for col in 0..order {
                let value = table[row as usize * n + col as usize];
                if value >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
            }
        }
        let mul = |a: ElemId, b: ElemId| table[a as usize * n + b as usize];
        for g in 0..order {
            let left = mul(identity, g);
            let right = mul(g, identity);
            if left != g || right != g {
                return Err(GroupError::IdentityLaw {
                    identity,
                    g,
                    left,
                    right,
                });
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let lhs = mul(mul(a, b), c);
                    let rhs = mul(a, mul(b, c));
                    if lhs != rhs {
                        return Err(GroupError::Associativity { a, b, c, lhs, rhs });
                    }
                }
            }
        }
        let mut inverse = vec![0 as ElemId; n];
        for g in 0..order {
            let found = (0..order).find(|&h| mul(g, h) == identity && mul(h, g) == identity);
            match found {
                Some(h) => inverse[g as usize] = h,
                None => return Err(GroupError::NoInverse { g }),
            }
        }
        if t == identity {
            return Err(GroupError::TIsIdentity);
        }
        let tt = mul(t, t);
        if tt != identity {
            return Err(GroupError::TNotInvolution { got: tt });
        }
        if let Some(ref ls) = labels {
            if ls.len() != n {
                return Err(GroupError::LabelCount {
                    expected: n,
                    got: ls.len(),
                });
            }
        }
        let mut coset_rep = vec![0 as ElemId; n];
        for g in 0..order {
            let tg = mul(t, g);
            coset_rep[g as usize] = if g == identity || tg == identity {
                identity
            } else {
                g.min(tg)
            };
        }
        Ok(BaseGroup {
            order,
            identity,
            t,
            table,
            inverse,
            coset_rep,
            labels,
        })
    }

    pub fn from_doc(doc: &GroupDoc) -> Result<Self, GroupError> {
        Self::from_table(
            doc.order,
            doc.identity,
            doc.t,
            doc.table.clone(),
            doc.labels.clone(),
        )
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc {
            order: self.order,
            identity: self.identity,
            t: self.t,
            table: self.table.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn order(&self) -> u16 {
        self.order
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    /// The designated involution.
    pub fn t(&self) -> ElemId {
        self.t
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a as usize * self.order as usize + b as usize]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    pub fn is_involution(&self, g: ElemId) -> bool {
        g != self.identity && self.mul(g, g) == self.identity
    }

    /// The chosen representative of the two-element set `{g, t*g}`.
    pub fn coset_rep(&self, g: ElemId) -> ElemId {
        self.coset_rep[g as usize]
    }

    /// Whether `g` is the chosen representative of its own `{g, t*g}` set.
    /// The identity always is; `t` never is.
    pub fn in_transversal(&self, g: ElemId) -> bool {
        self.coset_rep[g as usize] == g
    }

    /// Human-readable label for an element, falling back to `g<id>`.
    pub fn label(&self, g: ElemId) -> String {
        match &self.labels {
            Some(ls) => ls[g as usize].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.order
    }
}

/// Validates a group document. Convenience alias for [`BaseGroup::from_doc`].
pub fn validate_group(doc: &GroupDoc) -> Result<BaseGroup, GroupError> {
    BaseGroup::from_doc(doc)
}

/// A validated finite action of a base group on an initial point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAction {
    group: BaseGroup,
    points: u32,
    act: Vec<PointId>,
}

impl BaseAction {
    pub fn new(group: BaseGroup, points: u32, act: Vec<PointId>) -> Result<Self, GroupError> {
        if points == 0 {
            return Err(GroupError::NoPoints);
        }
        let order = group.order();
        let expected = points as usize * order as usize;
        if act.len() != expected {
            return Err(GroupError::ActionTableSize {
                points,
                order,
                expected,
                got: act.len(),
            });
        }
        let at = |x: PointId, g: ElemId| act[x as usize * order as usize + g as usize];
        for x in 0..points {
            for g in 0..order {
                let value = at(x, g);
                if value >= points {
                    return Err(GroupError::ActionEntryOutOfRange {
                        x,
                        g,
                        value,
                        points,
                    });
                }
            }
        }
        for x in 0..points {
            let got = at(x, group.identity());
            if got != x {
                return Err(GroupError::ActionIdentityLaw { x, got });
            }
        }
        for x in 0..points {
            for g in 0..order {
                for h in 0..order {
                    let lhs = at(at(x, g), h);
                    let rhs = at(x, group.mul(g, h));
                    if lhs != rhs {
                        return Err(GroupError::ActionCompatibility { x, g, h, lhs, rhs });
                    }
                }
            }
        }
        Ok(BaseAction { group, points, act })
    }

    pub fn from_doc(doc: &ActionDoc) -> Result<Self, GroupError> {
        let group = BaseGroup::from_doc(&doc.group)?;
        Self::new(group, doc.points, doc.act.clone())
    }

    pub fn to_doc(&self) -> ActionDoc {
        ActionDoc {
            group: self.group.to_doc(),
            points: self.points,
            act: self.act.clone(),
        }
    }

    pub fn group(&self) -> &BaseGroup {
        &self.group
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    pub fn apply(&self, x: PointId, g: ElemId) -> PointId {
        self.act[x as usize * self.group.order() as usize + g as usize]
    }
}

/// The group acting on itself by right translation: `points = order` and
/// point `x` moves to `x*g` under `g`. Free, transitive, and always 2-sharp.
pub fn regular_action(group: &BaseGroup) -> BaseAction {
    let order = group.order();
    let mut act = Vec::with_capacity(order as usize * order as usize);
    for x in 0..order {
        for g in 0..order {
            act.push(group.mul(x, g) as PointId);
        }
    }
    BaseAction::new(group.clone(), order as u32, act)
        .expect("right translation satisfies the action laws")
}

/// Witness that some nontrivial element fixes two distinct points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSharpFailure {
    pub g: ElemId,
    pub first: PointId,
    pub second: PointId,
}

/// Outcome of the three seed checks. `None` in a field means that check
/// passed; `Some` carries the first witness found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    /// Some nontrivial element fixes the two listed points.
    pub two_sharp: Option<TwoSharpFailure>,
    /// The listed involution is not conjugate to the designated one.
    pub involutions_conjugate: Option<ElemId>,
    /// The designated involution fixes the listed point.
    pub t_fixed_point_free: Option<PointId>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.two_sharp.is_none()
            && self.involutions_conjugate.is_none()
            && self.t_fixed_point_free.is_none()
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.two_sharp {
            None => writeln!(f, "2-sharpness: ok")?,
            Some(w) => writeln!(
                f,
                "2-sharpness: FAILED (element {} fixes both point {} and point {})",
                w.g, w.first, w.second
            )?,
        }
        match &self.involutions_conjugate {
            None => writeln!(f, "involution conjugacy: ok")?,
            Some(g) => writeln!(
                f,
                "involution conjugacy: FAILED (involution {g} is not conjugate to the designated involution)"
            )?,
        }
        match &self.t_fixed_point_free {
            None => write!(f, "involution fixed-point-freeness: ok"),
            Some(x) => write!(
                f,
                "involution fixed-point-freeness: FAILED (the designated involution fixes point {x})"
            ),
        }
    }
}

/// True iff no nontrivial element fixes more than one point.
pub fn check_2_sharp(action: &BaseAction) -> bool {
    two_sharp_failure(action).is_none()
}

fn two_sharp_failure(action: &BaseAction) -> Option<TwoSharpFailure> {
    let group = action.group();
    for g in group.elements() {
        if g == group.identity() {
            continue;
        }
        let mut fixed = None;
        for x in 0..action.points() {
            if action.apply(x, g) == x {
                match fixed {
                    None => fixed = Some(x),
                    Some(first) => {
                        return Some(TwoSharpFailure {
                            g,
                            first,
                            second: x,
                        })
                    }
                }
            }
        }
    }
    None
}

/// True iff every involution equals `h * t * h^-1` for some `h`.
pub fn check_involutions_conjugate(group: &BaseGroup) -> bool {
    nonconjugate_involution(group).is_none()
}

fn nonconjugate_involution(group: &BaseGroup) -> Option<ElemId> {
    group.elements().find(|&g| {
        group.is_involution(g)
            && !group
                .elements()
                .any(|h| group.mul(group.mul(h, group.t()), group.inv(h)) == g)
    })
}

/// True iff the designated involution moves every point.
pub fn check_t_fixed_point_free(action: &BaseAction) -> bool {
    t_fixed_point(action).is_none()
}

fn t_fixed_point(action: &BaseAction) -> Option<PointId> {
    (0..action.points()).find(|&x| action.apply(x, action.group().t()) == x)
}

/// Runs all three seed checks and reports each outcome with a witness.
pub fn check_hypotheses(action: &BaseAction) -> HypothesisReport {
    HypothesisReport {
        two_sharp: two_sharp_failure(action),
        involutions_conjugate: nonconjugate_involution(action.group()),
        t_fixed_point_free: t_fixed_point(action),
    }
}

/// The two-element group; `t` is its non-identity element.
pub fn cyclic_2() -> BaseGroup {
    BaseGroup::from_table(2, 0, 1, vec![0, 1, 1, 0], Some(vec!["e".into(), "t".into()]))
        .expect("valid table")
}

/// The symmetric group on three letters; `t` is the transposition (12).
///
/// Element ids: 0 = e, 1 = (12), 2 = (13), 3 = (23), 4 = (123), 5 = (132),
/// with `a*b` meaning "apply `a`, then `b`".
pub fn symmetric_3() -> BaseGroup {
    #[rustfmt::skip]
    let table = vec![
        0, 1, 2, 3, 4, 5,
        1, 0, 4, 5, 2, 3,
        2, 5, 0, 4, 3, 1,
        3, 4, 5, 0, 1, 2,
        4, 3, 1, 2, 5, 0,
        5, 2, 3, 1, 0, 4,
    ];
    let labels = vec![
        "e".into(),
        "(12)".into(),
        "(13)".into(),
        "(23)".into(),
        "(123)".into(),
        "(132)".into(),
    ];
    BaseGroup::from_table(6, 0, 1, table, Some(labels)).expect("valid table")
}

/// The quaternion group of order eight; `t` is the central involution -1.
///
/// Element ids: 0 = 1, 1 = -1, 2 = i, 3 = -i, 4 = j, 5 = -j, 6 = k, 7 = -k.
pub fn quaternion_8() -> BaseGroup {
    // Encode id = axis * 2 + sign with axes 1, i, j, k and sign 1 meaning
    // negated; multiply axes by the usual quaternion rules.
    fn mul(a: ElemId, b: ElemId) -> ElemId {
        let (ax_a, neg_a) = (a / 2, a % 2);
        let (ax_b, neg_b) = (b / 2, b % 2);
        let (ax, extra_neg) = match (ax_a, ax_b) {
            (0, x) => (x, 0),
            (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        };
        ax * 2 + (neg_a + neg_b + extra_neg) % 2
    }
    let table: Vec<ElemId> = (0..8)
        .flat_map(|a| (0..8).map(move |b| mul(a, b)))
        .collect();
    let labels = vec![
        "1".into(),
        "-1".into(),
        "i".into(),
        "-i".into(),
        "j".into(),
        "-j".into(),
        "k".into(),
        "-k".into(),
    ];
    BaseGroup::from_table(8, 0, 1, table, Some(labels)).expect("valid table")
}

/// The Klein four-group; its three involutions fall into three singleton
/// conjugacy classes, so it fails the involution-conjugacy check.
pub fn klein_4() -> BaseGroup {
    #[rustfmt::skip]
    let table = vec![
        0, 1, 2, 3,
        1, 0, 3, 2,
        2, 3, 0, 1,
        3, 2, 1, 0,
    ];
    let labels = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    BaseGroup::from_table(4, 0, 1, table, Some(labels)).expect("valid table")
}

/// All bundled example groups with their fixture names.
pub fn bundled_samples() -> Vec<(&'static str, BaseGroup)> {
    vec![
        ("c2", cyclic_2()),
        ("s3", symmetric_3()),
        ("q8", quaternion_8()),
        ("v4", klein_4()),
    ]
}
