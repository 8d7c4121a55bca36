use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Domain, PiecewiseSpec};
use crate::dyadic::Dyadic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    F,
    T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    pub location: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.condition, self.location)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub class: Membership,
    pub member: bool,
    pub violations: Vec<Violation>,
}

fn violation(condition: &str, location: impl fmt::Display) -> Violation {
    Violation { condition: condition.into(), location: location.to_string() }
}

/// Structural checks shared by both classes. Dyadic breakpoints and
/// power-of-two slopes hold by construction of [`super::Piece`].
pub(super) fn validate(spec: &PiecewiseSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let pieces = &spec.pieces;
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    let Some(first) = pieces.first() else {
        out.push(violation("nonempty-pieces", "pieces"));
        return out;
    };
    if first.left != zero {
        out.push(violation("first-breakpoint-zero", format!("pieces[0].left = {}", first.left)));
    }
    for (i, w) in pieces.windows(2).enumerate() {
        if w[0].left >= w[1].left {
            out.push(violation("breakpoints-increasing", format!("pieces[{}].left = {}", i + 1, w[1].left)));
        } else if w[0].apply(&w[1].left) != w[1].apply(&w[1].left) {
            out.push(violation(
                "continuity",
                format!("x = {} (left {} vs right {})", w[1].left, w[0].apply(&w[1].left), w[1].apply(&w[1].left)),
            ));
        }
    }
    if let Some(last) = pieces.last() {
        if last.left >= one {
            out.push(violation("breakpoints-in-unit-interval", format!("left = {}", last.left)));
        }
    }
    let start = first.apply(&zero);
    let end = pieces.last().expect("nonempty").apply(&one);
    match spec.domain {
        Domain::Interval => {
            if start != zero {
                out.push(violation("fixes-0", format!("f(0) = {start}")));
            }
            if end != one {
                out.push(violation("fixes-1", format!("f(1) = {end}")));
            }
        }
        Domain::Circle => {
            if start.is_negative() || start >= one {
                out.push(violation("lift-normalized", format!("H(0) = {start}, expected in [0, 1)")));
            }
            if &end - &start != one {
                out.push(violation("degree-one", format!("H(1) - H(0) = {}", &end - &start)));
            }
        }
    }
    out
}

/// `pl_membership`: checks every defining condition of F or T and reports
/// each failure with its location.
pub fn membership(spec: &PiecewiseSpec, class: Membership) -> MembershipReport {
    let mut violations = validate(spec);
    if class == Membership::F && spec.domain != Domain::Interval {
        violations.push(violation("interval-domain", "domain = circle"));
    }
    MembershipReport { class, member: violations.is_empty(), violations }
}
