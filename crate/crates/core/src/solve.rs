//! Exact decision procedures with witnesses for the transformation,
//! maximal transformation, membership and J-order problems.
//!
//! All of them are pruned breadth-first searches. Multiplying by a call on
//! either side never decreases a matrix, and it preserves the entrywise order,
//! so any partial product of a witness already lies below the target. States
//! that are not below the target are discarded, and running out of states is
//! a proof that no witness exists.

use crate::error::{MalformedInstance, MatrixError, SolveError};
use crate::generators::{all_calls, CallPair, CallSequence};
use crate::matrix::BoolMatrix;
use crate::search::{pruned_bfs, SearchOutcome, Status};

/// A pair of words `(left, right)` certifying `x = U y V` with
/// `U = prod(left)` and `V = prod(right)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GjpWitness {
    pub left: CallSequence,
    pub right: CallSequence,
}

fn check_budget(budget: u64) -> Result<(), SolveError> {
    if budget == 0 {
        Err(SolveError::ZeroBudget)
    } else {
        Ok(())
    }
}

fn check_dims(x: &BoolMatrix, y: &BoolMatrix) -> Result<(), MatrixError> {
    if x.dim() == y.dim() {
        Ok(())
    } else {
        Err(MatrixError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        })
    }
}

fn merge_columns_move(z: &BoolMatrix, p: CallPair) -> Option<BoolMatrix> {
    let (i, j) = p.zero_based();
    (!z.columns_equal(i, j)).then(|| z.merge_columns(i, j))
}

/// Is there `G` in the gossip monoid with `x G = y`?
pub fn solve_gtp(x: &BoolMatrix, y: &BoolMatrix, budget: u64) -> Result<SearchOutcome, SolveError> {
    check_dims(x, y)?;
    check_budget(budget)?;
    let calls = all_calls(x.dim());
    Ok(pruned_bfs(x, y, &calls, merge_columns_move, budget).map_witness(CallSequence::from))
}

/// Non-zero, and the distinct columns form an antichain.
pub fn check_maximal_column_condition(x: &BoolMatrix) -> bool {
    let n = x.dim();
    let cols: Vec<BoolMatrix> = (0..n)
        .map(|j| BoolMatrix::from_fn(n, |i, _| x.get(i, j)))
        .collect();
    if cols.iter().any(BoolMatrix::is_zero) {
        return false;
    }
    for a in &cols {
        for b in &cols {
            if a != b && a.leq_unchecked(b) {
                return false;
            }
        }
    }
    true
}

/// [`solve_gtp`] restricted to `a` satisfying the maximal column condition.
pub fn solve_mgtp(
    a: &BoolMatrix,
    b: &BoolMatrix,
    budget: u64,
) -> Result<SearchOutcome, SolveError> {
    check_dims(a, b)?;
    if !check_maximal_column_condition(a) {
        return Err(MalformedInstance::MaximalColumnCondition.into());
    }
    solve_gtp(a, b, budget)
}

/// Is `a` in the gossip monoid? Found outcomes carry a word multiplying to `a`.
pub fn solve_gmp(a: &BoolMatrix, budget: u64) -> Result<SearchOutcome, SolveError> {
    solve_gtp(&BoolMatrix::identity(a.dim()), a, budget)
}

#[derive(Clone, Copy, Debug)]
enum SideMove {
    Left(CallPair),
    Right(CallPair),
}

/// Is `x <=_J y`, i.e. `x = U y V` for monoid elements `U`, `V`? Both inputs
/// must be members; membership is decided first with the same budget.
pub fn solve_gjp(
    x: &BoolMatrix,
    y: &BoolMatrix,
    budget: u64,
) -> Result<SearchOutcome<GjpWitness>, SolveError> {
    check_dims(x, y)?;
    check_budget(budget)?;
    for (m, which) in [(x, "x"), (y, "y")] {
        let member = solve_gmp(m, budget)?;
        match member.status {
            Status::Found => {}
            Status::ProvenAbsent => return Err(MalformedInstance::NotMember { which }.into()),
            Status::Inconclusive => {
                return Err(MalformedInstance::MembershipUndecided { which }.into())
            }
        }
    }
    Ok(gjp_search(x, y, budget))
}

/// [`solve_gjp`] with membership established by supplied words instead of a
/// search: `x_cert` must multiply to `x` and `y_cert` to `y`.
pub fn solve_gjp_certified(
    x: &BoolMatrix,
    y: &BoolMatrix,
    x_cert: &CallSequence,
    y_cert: &CallSequence,
    budget: u64,
) -> Result<SearchOutcome<GjpWitness>, SolveError> {
    check_dims(x, y)?;
    check_budget(budget)?;
    if x_cert.product(x.dim())? != *x {
        return Err(MalformedInstance::BadCertificate { which: "x" }.into());
    }
    if y_cert.product(y.dim())? != *y {
        return Err(MalformedInstance::BadCertificate { which: "y" }.into());
    }
    Ok(gjp_search(x, y, budget))
}

fn gjp_search(x: &BoolMatrix, y: &BoolMatrix, budget: u64) -> SearchOutcome<GjpWitness> {
    let calls = all_calls(x.dim());
    let moves: Vec<SideMove> = calls
        .iter()
        .map(|&p| SideMove::Left(p))
        .chain(calls.iter().map(|&p| SideMove::Right(p)))
        .collect();
    let outcome = pruned_bfs(
        y,
        x,
        &moves,
        |z, mv| match mv {
            SideMove::Left(p) => {
                let (i, j) = p.zero_based();
                (!z.rows_equal(i, j)).then(|| z.merge_rows(i, j))
            }
            SideMove::Right(p) => merge_columns_move(z, p),
        },
        budget,
    );
    outcome.map_witness(|path| {
        let mut w = GjpWitness::default();
        // Left moves were applied outermost-last, so U lists them in reverse.
        let mut left_applied = Vec::new();
        for mv in path {
            match mv {
                SideMove::Left(p) => left_applied.push(p),
                SideMove::Right(p) => w.right.push(p),
            }
        }
        w.left = left_applied.into_iter().rev().collect();
        w
    })
}

/// `x * prod(w) == y`, checked by explicit products of call matrices.
pub fn verify_gtp_witness(x: &BoolMatrix, y: &BoolMatrix, w: &CallSequence) -> bool {
    if x.dim() != y.dim() {
        return false;
    }
    let n = x.dim();
    let Ok(g) = explicit_product(n, w) else {
        return false;
    };
    x.mul(&g).map(|p| p == *y).unwrap_or(false)
}

/// `prod(left) * y * prod(right) == x`, checked by explicit products.
pub fn verify_gjp_witness(x: &BoolMatrix, y: &BoolMatrix, w: &GjpWitness) -> bool {
    if x.dim() != y.dim() {
        return false;
    }
    let n = x.dim();
    let (Ok(u), Ok(v)) = (explicit_product(n, &w.left), explicit_product(n, &w.right)) else {
        return false;
    };
    u.mul(y)
        .and_then(|uy| uy.mul(&v))
        .map(|p| p == *x)
        .unwrap_or(false)
}

/// Product of the call matrices of `w` by full semiring multiplication,
/// independent of the column-merge fast path the searches use.
fn explicit_product(n: usize, w: &CallSequence) -> Result<BoolMatrix, MatrixError> {
    let mut acc = BoolMatrix::identity(n);
    for p in w.iter() {
        acc = acc.mul(&crate::generators::call_matrix(n, p)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{call_matrix, conference_matrix, word, ConferenceSet};
    use crate::monoid::{factor_conference, gossip_number};
    use crate::search::DEFAULT_BUDGET;

    fn m(rows: &[&[u8]]) -> BoolMatrix {
        BoolMatrix::from_rows(rows).unwrap()
    }

    fn c(n: usize, i: usize, j: usize) -> BoolMatrix {
        call_matrix(n, CallPair::new(i, j).unwrap()).unwrap()
    }

    #[test]
    fn gtp_examples() {
        let out = solve_gtp(&BoolMatrix::identity(2), &BoolMatrix::ones(2), 10).unwrap();
        assert_eq!(out.witness, Some(word(&[(1, 2)])));

        let out = solve_gtp(&BoolMatrix::ones(2), &BoolMatrix::identity(2), 10).unwrap();
        assert_eq!(out.status, Status::ProvenAbsent);
        assert_eq!(out.nodes_expanded, 0);

        let target = m(&[&[1, 1, 1], &[1, 1, 1], &[0, 1, 1]]);
        let out = solve_gtp(&c(3, 1, 2), &target, 100).unwrap();
        assert_eq!(out.witness, Some(word(&[(2, 3)])));
    }

    #[test]
    fn gtp_errors() {
        let i2 = BoolMatrix::identity(2);
        let i3 = BoolMatrix::identity(3);
        assert!(matches!(solve_gtp(&i2, &i3, 5), Err(SolveError::Matrix(_))));
        assert_eq!(solve_gtp(&i2, &i2, 0), Err(SolveError::ZeroBudget));
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let out = solve_gmp(&BoolMatrix::ones(5), 3).unwrap();
        assert_eq!(out.status, Status::Inconclusive);
        assert_eq!(out.nodes_expanded, 3);
        assert!(out.witness.is_none());
    }

    #[test]
    fn maximal_column_condition_examples() {
        assert!(check_maximal_column_condition(&BoolMatrix::identity(3)));
        assert!(!check_maximal_column_condition(&BoolMatrix::zeros(3)));
        assert!(!check_maximal_column_condition(&m(&[&[1, 1], &[0, 1]])));
        assert!(check_maximal_column_condition(&BoolMatrix::ones(3)));
        // a zero column next to non-zero ones
        assert!(!check_maximal_column_condition(&m(&[&[1, 0], &[1, 0]])));
    }

    #[test]
    fn mgtp_examples() {
        let i3 = BoolMatrix::identity(3);
        let out = solve_mgtp(&i3, &i3, 10).unwrap();
        assert_eq!(out.witness, Some(CallSequence::new()));
        let out = solve_mgtp(&i3, &BoolMatrix::ones(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(out.witness.unwrap().len(), gossip_number(3));
        assert_eq!(
            solve_mgtp(&m(&[&[1, 1], &[0, 1]]), &BoolMatrix::ones(2), 10),
            Err(SolveError::Malformed(
                MalformedInstance::MaximalColumnCondition
            ))
        );
    }

    #[test]
    fn gmp_examples() {
        let out = solve_gmp(&c(3, 1, 3), 100).unwrap();
        assert_eq!(out.witness, Some(word(&[(1, 3)])));
        let out = solve_gmp(&m(&[&[1, 1], &[0, 1]]), 100).unwrap();
        assert_eq!(out.status, Status::ProvenAbsent);
        let conf = conference_matrix(4, &ConferenceSet::new([1, 2, 3])).unwrap();
        let out = solve_gmp(&conf, DEFAULT_BUDGET).unwrap();
        assert_eq!(out.witness.unwrap().len(), 3);
        // zero diagonal entry dies at the root
        let out = solve_gmp(&BoolMatrix::zeros(3), 100).unwrap();
        assert_eq!((out.status, out.nodes_expanded), (Status::ProvenAbsent, 0));
    }

    #[test]
    fn gjp_examples() {
        let n = 4;
        let x = word(&[(1, 2), (3, 4)]).product(n).unwrap();
        let out = solve_gjp(&x, &x, 100).unwrap();
        assert_eq!(out.witness, Some(GjpWitness::default()));

        let a = word(&[(1, 3)]).product(n).unwrap();
        let out = solve_gjp(&BoolMatrix::ones(n), &a, DEFAULT_BUDGET).unwrap();
        assert!(out.is_found());
        assert!(verify_gjp_witness(
            &BoolMatrix::ones(n),
            &a,
            out.witness.as_ref().unwrap()
        ));
        // the full conference on both sides is always a witness
        let full = factor_conference(n, &ConferenceSet::full(n)).unwrap();
        let w = GjpWitness {
            left: full.clone(),
            right: full,
        };
        assert!(verify_gjp_witness(&BoolMatrix::ones(n), &a, &w));

        let out = solve_gjp(&BoolMatrix::identity(n), &BoolMatrix::ones(n), 100).unwrap();
        assert_eq!((out.status, out.nodes_expanded), (Status::ProvenAbsent, 0));
    }

    #[test]
    fn gjp_rejects_non_members() {
        let bad = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            solve_gjp(&bad, &BoolMatrix::identity(2), 100),
            Err(SolveError::Malformed(MalformedInstance::NotMember {
                which: "x"
            }))
        );
    }

    #[test]
    fn gjp_prefers_left_moves() {
        let n = 3;
        let y = c(n, 2, 3);
        let x = c(n, 1, 2).mul(&y).unwrap();
        let out = solve_gjp(&x, &y, DEFAULT_BUDGET).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.left, word(&[(1, 2)]));
        assert!(w.right.is_empty());
        assert!(verify_gjp_witness(&x, &y, &w));
    }

    #[test]
    fn certified_gjp_checks_certificates() {
        let n = 3;
        let x = BoolMatrix::ones(n);
        let y = c(n, 1, 2);
        let xc = factor_conference(n, &ConferenceSet::full(n)).unwrap();
        let yc = word(&[(1, 2)]);
        assert!(solve_gjp_certified(&x, &y, &xc, &yc, 1000)
            .unwrap()
            .is_found());
        assert_eq!(
            solve_gjp_certified(&x, &y, &yc, &yc, 1000),
            Err(SolveError::Malformed(MalformedInstance::BadCertificate {
                which: "x"
            }))
        );
    }

    #[test]
    fn verifiers_reject_wrong_words() {
        let i3 = BoolMatrix::identity(3);
        let target = c(3, 1, 2);
        assert!(verify_gtp_witness(&i3, &target, &word(&[(1, 2)])));
        assert!(!verify_gtp_witness(&i3, &target, &word(&[(1, 3)])));
        assert!(!verify_gtp_witness(&i3, &target, &word(&[(1, 4)])));
    }
}
