//! Worked example values with exact expected results.
//!
//! Each entry pairs a generalized-inverse operation with its inputs and
//! the hand-derived answer; the unit tests below confirm every answer with
//! the exact routines in this crate.

use crate::{Q, QMatrix};

/// Operation names, matching the `compute` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Mp,
    Drazin,
    Group,
    Core,
    CoreEp,
    Bc,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Mp => "mp",
            Op::Drazin => "drazin",
            Op::Group => "group",
            Op::Core => "core",
            Op::CoreEp => "core-ep",
            Op::Bc => "bc",
        }
    }
}

/// One worked example. `expected` is `None` when the inverse does not exist.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: &'static str,
    pub op: Op,
    pub inputs: Vec<QMatrix>,
    pub expected: Option<QMatrix>,
}

fn half() -> Q {
    Q::frac(1, 2)
}

fn idem() -> QMatrix {
    QMatrix::from_ints(&[[1, 1], [0, 0]])
}

fn e11() -> QMatrix {
    QMatrix::from_ints(&[[1, 0], [0, 0]])
}

fn shift() -> QMatrix {
    QMatrix::from_ints(&[[0, 1], [0, 0]])
}

/// Every worked inverse example.
pub fn cases() -> Vec<Case> {
    let case = |name, op, inputs, expected| Case {
        name,
        op,
        inputs,
        expected,
    };
    vec![
        case(
            "mp_idempotent",
            Op::Mp,
            vec![idem()],
            Some(QMatrix::from_rows(vec![vec![half(), Q::zero()], vec![half(), Q::zero()]])),
        ),
        case("drazin_idempotent", Op::Drazin, vec![idem()], Some(idem())),
        case("drazin_nilpotent", Op::Drazin, vec![shift()], Some(QMatrix::zeros(2, 2))),
        case("group_idempotent", Op::Group, vec![idem()], Some(idem())),
        case("group_nilpotent", Op::Group, vec![shift()], None),
        case("core_idempotent", Op::Core, vec![idem()], Some(e11())),
        case("core_ep_idempotent", Op::CoreEp, vec![idem()], Some(e11())),
        case("core_ep_nilpotent", Op::CoreEp, vec![shift()], Some(QMatrix::zeros(2, 2))),
        case(
            "core_ep_invertible",
            Op::CoreEp,
            vec![QMatrix::from_ints(&[[2, 1], [0, 4]])],
            Some(QMatrix::from_rows(vec![
                vec![half(), Q::frac(-1, 8)],
                vec![Q::zero(), Q::frac(1, 4)],
            ])),
        ),
        case(
            "core_ep_block_triangular",
            Op::CoreEp,
            vec![QMatrix::from_ints(&[[2, 1], [0, 1]])],
            Some(QMatrix::from_rows(vec![
                vec![half(), -&half()],
                vec![Q::zero(), Q::one()],
            ])),
        ),
        case(
            "bc_lemma_3_1",
            Op::Bc,
            vec![QMatrix::from_ints(&[[2, 0], [0, 0]]), e11(), e11()],
            Some(QMatrix::from_rows(vec![vec![half(), Q::zero()], vec![Q::zero(), Q::zero()]])),
        ),
        case(
            "bc_rank_deficient",
            Op::Bc,
            vec![shift(), QMatrix::identity(2), QMatrix::identity(2)],
            None,
        ),
    ]
}

/// Exact value of `op` on `inputs`.
pub fn evaluate(op: Op, inputs: &[QMatrix]) -> Option<QMatrix> {
    let a = &inputs[0];
    match op {
        Op::Mp => Some(a.pinv()),
        Op::Drazin => Some(a.drazin()),
        Op::Group => a.group_inverse(),
        Op::Core => a.core_inverse(),
        Op::CoreEp => Some(a.core_ep()),
        Op::Bc => a.bc_inverse(&inputs[1], &inputs[2]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_answer_matches_the_exact_routines() {
        for c in cases() {
            assert_eq!(evaluate(c.op, &c.inputs), c.expected, "{}", c.name);
        }
    }
}
