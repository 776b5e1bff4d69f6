//! Three-valued search outcomes and the pruned breadth-first search shared by
//! every exact solver.

use std::hash::BuildHasherDefault;

use indexmap::IndexMap;
use rustc_hash::FxHasher;

use crate::generators::CallSequence;
use crate::matrix::BoolMatrix;

pub(crate) type StateMap<V> = IndexMap<BoolMatrix, V, BuildHasherDefault<FxHasher>>;

/// Default node-expansion budget for the exact solvers.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Upper bound on the number of states a single search may store. Reaching
/// it ends the search as [`Status::Inconclusive`], like exhausting the budget.
pub const MAX_STORED_STATES: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Found,
    /// The pruned state space was exhausted without reaching the target.
    ProvenAbsent,
    /// The budget or the state store ran out first.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<W = CallSequence> {
    pub status: Status,
    pub witness: Option<W>,
    pub nodes_expanded: u64,
    pub budget: u64,
}

impl<W> SearchOutcome<W> {
    pub fn is_found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn is_absent(&self) -> bool {
        self.status == Status::ProvenAbsent
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
    }

    pub(crate) fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> SearchOutcome<V> {
        SearchOutcome {
            status: self.status,
            witness: self.witness.map(f),
            nodes_expanded: self.nodes_expanded,
            budget: self.budget,
        }
    }
}

const ROOT: u32 = u32::MAX;

/// Breadth-first search from `start` towards `target`, keeping only states
/// `Z` with `Z <= target`. `apply` returns `None` when a move leaves the
/// state unchanged. Because every move is monotone, any prefix of a path that
/// ends at `target` stays below `target`, so the pruning never loses a
/// solution and exhausting the pruned space proves absence.
///
/// Moves are tried in slice order; the witness is the first shortest path
/// discovered.
pub(crate) fn pruned_bfs<M, A>(
    start: &BoolMatrix,
    target: &BoolMatrix,
    moves: &[M],
    apply: A,
    budget: u64,
) -> SearchOutcome<Vec<M>>
where
    M: Copy,
    A: Fn(&BoolMatrix, M) -> Option<BoolMatrix>,
{
    let done = |status, witness, nodes_expanded| SearchOutcome {
        status,
        witness,
        nodes_expanded,
        budget,
    };
    if !start.leq_unchecked(target) {
        return done(Status::ProvenAbsent, None, 0);
    }
    if start == target {
        return done(Status::Found, Some(Vec::new()), 0);
    }

    let mut seen: StateMap<(u32, u32)> = StateMap::default();
    seen.insert(start.clone(), (ROOT, ROOT));
    let mut head = 0usize;
    let mut expanded = 0u64;

    while head < seen.len() {
        if expanded == budget {
            return done(Status::Inconclusive, None, expanded);
        }
        expanded += 1;
        let state = seen.get_index(head).expect("head in range").0.clone();
        for (mi, &mv) in moves.iter().enumerate() {
            let Some(next) = apply(&state, mv) else {
                continue;
            };
            if !next.leq_unchecked(target) || seen.contains_key(&next) {
                continue;
            }
            if seen.len() == MAX_STORED_STATES {
                return done(Status::Inconclusive, None, expanded);
            }
            let hit = next == *target;
            seen.insert(next, (head as u32, mi as u32));
            if hit {
                let path = trace_path(&seen, seen.len() - 1, moves);
                return done(Status::Found, Some(path), expanded);
            }
        }
        head += 1;
    }
    done(Status::ProvenAbsent, None, expanded)
}

fn trace_path<M: Copy>(seen: &StateMap<(u32, u32)>, mut idx: usize, moves: &[M]) -> Vec<M> {
    let mut path = Vec::new();
    loop {
        let (_, &(parent, mv)) = seen.get_index(idx).expect("valid index");
        if parent == ROOT {
            break;
        }
        path.push(moves[mv as usize]);
        idx = parent as usize;
    }
    path.reverse();
    path
}
