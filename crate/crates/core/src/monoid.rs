//! Enumeration and word-length analysis of the gossip monoid `G_n` and of the
//! double Catalan submonoid `DC_n` generated by adjacent calls.

use std::fmt;
use std::str::FromStr;

use crate::error::{EnumerationError, MatrixError};
use crate::exec::{map_range, Execution};
use crate::generators::{
    adjacent_calls, all_calls, conference_matrix, CallPair, CallSequence, ConferenceSet,
};
use crate::matrix::BoolMatrix;
use crate::search::{pruned_bfs, SearchOutcome, StateMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorMode {
    /// Every call `C[i,j]`, `i < j`.
    AllCalls,
    /// Only `C[i,i+1]`.
    AdjacentCalls,
}

impl GeneratorMode {
    pub fn generators(self, n: usize) -> Vec<CallPair> {
        match self {
            GeneratorMode::AllCalls => all_calls(n),
            GeneratorMode::AdjacentCalls => adjacent_calls(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorMode::AllCalls => "all",
            GeneratorMode::AdjacentCalls => "adjacent",
        }
    }
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" | "all-calls" => Ok(GeneratorMode::AllCalls),
            "adjacent" | "adjacent-calls" => Ok(GeneratorMode::AdjacentCalls),
            other => Err(format!(
                "unknown generator mode {other:?} (expected all|adjacent)"
            )),
        }
    }
}

/// Which side the generators act on during closure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Side {
    #[default]
    Right,
    Left,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationConfig {
    pub cap_all_calls: usize,
    pub cap_adjacent_calls: usize,
    pub side: Side,
    pub execution: Execution,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            cap_all_calls: 6,
            cap_adjacent_calls: 8,
            side: Side::Right,
            execution: Execution::default(),
        }
    }
}

impl EnumerationConfig {
    fn cap(&self, mode: GeneratorMode) -> usize {
        match mode {
            GeneratorMode::AllCalls => self.cap_all_calls,
            GeneratorMode::AdjacentCalls => self.cap_adjacent_calls,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: u32,
    generator: u32,
    length: u32,
}

/// The full element set of a monoid generated by calls, with BFS distance
/// from the identity and a parent pointer for one shortest word per element.
/// Elements are stored in discovery order, which is non-decreasing in length.
pub struct MonoidEnumeration {
    n: usize,
    mode: GeneratorMode,
    side: Side,
    generators: Vec<CallPair>,
    nodes: StateMap<Node>,
}

impl MonoidEnumeration {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> GeneratorMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, m: &BoolMatrix) -> bool {
        self.nodes.contains_key(m)
    }

    pub fn elements(&self) -> impl Iterator<Item = &BoolMatrix> {
        self.nodes.keys()
    }

    pub fn min_length(&self, m: &BoolMatrix) -> Option<usize> {
        self.nodes.get(m).map(|node| node.length as usize)
    }

    /// Largest minimal word length over all elements.
    pub fn diameter(&self) -> usize {
        self.nodes
            .values()
            .map(|node| node.length as usize)
            .max()
            .unwrap_or(0)
    }

    /// Number of elements at each word length.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.diameter() + 1];
        for node in self.nodes.values() {
            sizes[node.length as usize] += 1;
        }
        sizes
    }

    /// One shortest word for `m`. For a right closure the word multiplies to
    /// `m` in order; for a left closure too, since each step prepended a call.
    pub fn witness(&self, m: &BoolMatrix) -> Option<CallSequence> {
        let mut idx = self.nodes.get_index_of(m)?;
        let mut calls = Vec::new();
        loop {
            let node = self.nodes[idx];
            if node.parent == u32::MAX {
                break;
            }
            calls.push(self.generators[node.generator as usize]);
            idx = node.parent as usize;
        }
        // Parent chain runs from m back to the identity.
        if self.side == Side::Right {
            calls.reverse();
        }
        Some(calls.into())
    }

    /// Elements sorted in canonical order.
    pub fn sorted_elements(&self) -> Vec<BoolMatrix> {
        let mut v: Vec<BoolMatrix> = self.nodes.keys().cloned().collect();
        v.sort();
        v
    }

    /// `n=<n> mode=<mode> count=<count> diameter=<max length>`
    pub fn summary(&self) -> String {
        format!(
            "n={} mode={} count={} diameter={}",
            self.n,
            self.mode,
            self.len(),
            self.diameter()
        )
    }
}

/// Closes `{I_n}` under multiplication by the chosen generators with default limits.
pub fn enumerate(n: usize, mode: GeneratorMode) -> Result<MonoidEnumeration, EnumerationError> {
    enumerate_with(n, mode, &EnumerationConfig::default())
}

/// Layer-synchronous BFS closure. Each layer's successors are computed
/// (possibly in parallel) against the set as it stood before the layer, then
/// merged in frontier order, which reproduces the sequential discovery order
/// exactly.
pub fn enumerate_with(
    n: usize,
    mode: GeneratorMode,
    config: &EnumerationConfig,
) -> Result<MonoidEnumeration, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroDimension);
    }
    let cap = config.cap(mode);
    if n > cap {
        return Err(EnumerationError::CapExceeded { n, cap });
    }
    let generators = mode.generators(n);
    let zero_based: Vec<(usize, usize)> = generators.iter().map(|p| p.zero_based()).collect();
    let side = config.side;

    let mut nodes: StateMap<Node> = StateMap::default();
    nodes.insert(
        BoolMatrix::identity(n),
        Node {
            parent: u32::MAX,
            generator: u32::MAX,
            length: 0,
        },
    );
    let mut lo = 0usize;
    let mut length = 0u32;
    while lo < nodes.len() {
        let hi = nodes.len();
        let frontier = &nodes;
        let successors: Vec<Vec<(BoolMatrix, u32)>> = map_range(lo..hi, config.execution, |idx| {
            let state = frontier.get_index(idx).expect("frontier index").0;
            let mut out = Vec::new();
            for (g, &(i, j)) in zero_based.iter().enumerate() {
                let next = match side {
                    Side::Right if !state.columns_equal(i, j) => state.merge_columns(i, j),
                    Side::Left if !state.rows_equal(i, j) => state.merge_rows(i, j),
                    _ => continue,
                };
                if !frontier.contains_key(&next) {
                    out.push((next, g as u32));
                }
            }
            out
        });
        length += 1;
        for (offset, succ) in successors.into_iter().enumerate() {
            for (m, g) in succ {
                nodes.entry(m).or_insert(Node {
                    parent: (lo + offset) as u32,
                    generator: g,
                    length,
                });
            }
        }
        lo = hi;
    }

    Ok(MonoidEnumeration {
        n,
        mode,
        side,
        generators,
        nodes,
    })
}

/// Shortest word (applied to `I_n` by right multiplication) whose product is
/// `target`, by pruned BFS over the monoid generated in `mode`.
pub fn shortest_word_to(
    n: usize,
    target: &BoolMatrix,
    mode: GeneratorMode,
    budget: u64,
) -> Result<SearchOutcome, MatrixError> {
    if target.dim() != n {
        return Err(MatrixError::DimensionMismatch {
            left: n,
            right: target.dim(),
        });
    }
    let generators = mode.generators(n);
    let outcome = pruned_bfs(
        &BoolMatrix::identity(n),
        target,
        &generators,
        |z, p| {
            let (i, j) = p.zero_based();
            (!z.columns_equal(i, j)).then(|| z.merge_columns(i, j))
        },
        budget,
    );
    Ok(outcome.map_witness(CallSequence::from))
}

/// A call word for the conference matrix `C[S]` of length 0, 1, 3 or
/// `2|S| - 4` for `|S|` = 0 or 1, 2, 3, and at least 4.
///
/// For `|S| >= 4` the four smallest members act as hubs `h1..h4`: every other
/// member calls `h1`, the hubs exchange via `(h1,h2) (h3,h4) (h1,h3) (h2,h4)`,
/// then every other member calls `h1` again. The word is multiplied out and
/// checked against `C[S]` before it is returned.
pub fn factor_conference(n: usize, s: &ConferenceSet) -> Result<CallSequence, MatrixError> {
    s.check(n)?;
    let members: Vec<usize> = s.iter().collect();
    let call = |a: usize, b: usize| CallPair::new(a, b).expect("distinct members");
    let mut w = CallSequence::new();
    match members.as_slice() {
        [] | [_] => {}
        &[a, b] => w.push(call(a, b)),
        &[a, b, c] => {
            w.push(call(a, b));
            w.push(call(b, c));
            w.push(call(a, b));
        }
        [h1, h2, h3, h4, rest @ ..] => {
            let (h1, h2, h3, h4) = (*h1, *h2, *h3, *h4);
            for &o in rest {
                w.push(call(h1, o));
            }
            w.push(call(h1, h2));
            w.push(call(h3, h4));
            w.push(call(h1, h3));
            w.push(call(h2, h4));
            for &o in rest {
                w.push(call(h1, o));
            }
        }
    }
    assert_eq!(
        w.product(n)?,
        conference_matrix(n, s)?,
        "conference factorization must multiply to C[S]"
    );
    Ok(w)
}

/// Idempotents `e = e*e` of `G_n`, in canonical order.
pub fn idempotent_census(n: usize) -> Result<Vec<BoolMatrix>, EnumerationError> {
    idempotent_census_with(n, &EnumerationConfig::default())
}

pub fn idempotent_census_with(
    n: usize,
    config: &EnumerationConfig,
) -> Result<Vec<BoolMatrix>, EnumerationError> {
    let all = enumerate_with(n, GeneratorMode::AllCalls, config)?;
    let mut out: Vec<BoolMatrix> = all
        .elements()
        .filter(|e| e.mul(e).map(|sq| sq == **e).unwrap_or(false))
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}

/// The classical minimum number of calls for complete gossip on `n` nodes.
pub fn gossip_number(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 1,
        3 => 3,
        _ => 2 * n - 4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::is_equivalence_matrix;
    use crate::search::{Status, DEFAULT_BUDGET};

    #[test]
    fn tiny_monoids() {
        let g1 = enumerate(1, GeneratorMode::AllCalls).unwrap();
        assert_eq!(g1.len(), 1);
        assert!(g1.contains(&BoolMatrix::identity(1)));
        let g2 = enumerate(2, GeneratorMode::AllCalls).unwrap();
        assert_eq!(
            g2.sorted_elements(),
            vec![BoolMatrix::identity(2), BoolMatrix::ones(2)]
        );
        assert_eq!(g2.min_length(&BoolMatrix::ones(2)), Some(1));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate(7, GeneratorMode::AllCalls),
            Err(EnumerationError::CapExceeded { n: 7, cap: 6 })
        ));
        assert!(matches!(
            enumerate(9, GeneratorMode::AdjacentCalls),
            Err(EnumerationError::CapExceeded { n: 9, cap: 8 })
        ));
        assert!(enumerate(0, GeneratorMode::AllCalls).is_err());
    }

    #[test]
    fn witnesses_multiply_to_their_elements() {
        for side in [Side::Right, Side::Left] {
            let cfg = EnumerationConfig {
                side,
                ..Default::default()
            };
            let e = enumerate_with(4, GeneratorMode::AllCalls, &cfg).unwrap();
            for m in e.elements() {
                let w = e.witness(m).unwrap();
                assert_eq!(w.len(), e.min_length(m).unwrap());
                assert_eq!(w.product(4).unwrap(), *m);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let seq = EnumerationConfig {
            execution: Execution::Sequential,
            ..Default::default()
        };
        let par = EnumerationConfig {
            execution: Execution::Parallel,
            ..Default::default()
        };
        let a = enumerate_with(5, GeneratorMode::AllCalls, &seq).unwrap();
        let b = enumerate_with(5, GeneratorMode::AllCalls, &par).unwrap();
        assert!(a.elements().eq(b.elements()));
        for m in a.elements() {
            assert_eq!(a.witness(m), b.witness(m));
        }
    }

    #[test]
    fn shortest_words_to_all_ones() {
        for (n, len) in [(1, 0), (2, 1), (3, 3), (4, 4), (5, 6)] {
            let out = shortest_word_to(
                n,
                &BoolMatrix::ones(n),
                GeneratorMode::AllCalls,
                DEFAULT_BUDGET,
            )
            .unwrap();
            assert_eq!(out.status, Status::Found);
            let w = out.witness.unwrap();
            assert_eq!(w.len(), len, "n = {n}");
            assert_eq!(w.product(n).unwrap(), BoolMatrix::ones(n));
        }
    }

    #[test]
    fn shortest_word_absent_and_mismatch() {
        let asym = BoolMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        let out = shortest_word_to(2, &asym, GeneratorMode::AllCalls, DEFAULT_BUDGET).unwrap();
        assert_eq!(out.status, Status::ProvenAbsent);
        assert!(shortest_word_to(3, &asym, GeneratorMode::AllCalls, 10).is_err());
    }

    #[test]
    fn conference_factorization_lengths() {
        let n = 6;
        for (set, len) in [
            (vec![], 0),
            (vec![4], 0),
            (vec![2, 5], 1),
            (vec![1, 2, 3], 3),
            (vec![1, 3, 4, 6], 4),
            (vec![1, 2, 3, 4, 5], 6),
            (vec![1, 2, 3, 4, 5, 6], 8),
        ] {
            let w = factor_conference(n, &ConferenceSet::new(set)).unwrap();
            assert_eq!(w.len(), len);
        }
        assert_eq!(
            factor_conference(3, &ConferenceSet::new([1, 2, 3])).unwrap(),
            crate::generators::word(&[(1, 2), (2, 3), (1, 2)])
        );
        assert!(factor_conference(3, &ConferenceSet::new([4])).is_err());
    }

    #[test]
    fn idempotents_are_equivalences() {
        assert_eq!(idempotent_census(1).unwrap(), vec![BoolMatrix::identity(1)]);
        assert_eq!(
            idempotent_census(2).unwrap(),
            vec![BoolMatrix::identity(2), BoolMatrix::ones(2)]
        );
        for e in idempotent_census(4).unwrap() {
            assert!(is_equivalence_matrix(&e));
        }
    }

    #[test]
    fn gossip_numbers() {
        let got: Vec<usize> = (1..=7).map(gossip_number).collect();
        assert_eq!(got, vec![0, 1, 3, 4, 6, 8, 10]);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "all".parse::<GeneratorMode>().unwrap(),
            GeneratorMode::AllCalls
        );
        assert_eq!(
            "adjacent".parse::<GeneratorMode>().unwrap(),
            GeneratorMode::AdjacentCalls
        );
        assert!("other".parse::<GeneratorMode>().is_err());
    }
}
