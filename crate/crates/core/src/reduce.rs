//! Instance constructors, witness translators and witness extractors for the
//! three hardness reductions:
//!
//! * dominating set to the maximal transformation problem,
//! * transformation to the J-order problem, through nesting an arbitrary
//!   boolean matrix inside a gossip element,
//! * maximal transformation to membership.

use crate::error::{ExtractionClaim, MalformedInstance, MatrixError, ReductionError, SolveError};
use crate::generators::{conference_matrix, CallPair, CallSequence, ConferenceSet};
use crate::graph::Graph;
use crate::matrix::BoolMatrix;
use crate::monoid::factor_conference;
use crate::search::SearchOutcome;
use crate::solve::{check_maximal_column_condition, solve_gjp_certified, GjpWitness};

fn check_same_dim(a: &BoolMatrix, b: &BoolMatrix) -> Result<(), MatrixError> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(MatrixError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

// ---------------------------------------------------------------------------
// Dominating set -> maximal transformation

/// A transformation instance `(a, b)` whose `a` satisfies the maximal column condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgtpInstance {
    pub a: BoolMatrix,
    pub b: BoolMatrix,
    pub source_n: usize,
    pub k: usize,
}

/// The closed-neighbourhood matrix: `m(i,j) = 1` iff `i = j` or `i ~ j`.
pub fn neighbourhood_matrix(h: &Graph) -> BoolMatrix {
    BoolMatrix::from_fn(h.vertex_count(), |i, j| i == j || h.adjacent(i + 1, j + 1))
}

/// Replaces every non-maximal column of `m` by its lexicographically least
/// maximal column (columns compared top to bottom).
pub fn maximalize_columns(m: &BoolMatrix) -> BoolMatrix {
    let n = m.dim();
    let cols: Vec<Vec<bool>> = (0..n).map(|j| m.column(j)).collect();
    let below = |x: &[bool], y: &[bool]| x.iter().zip(y).all(|(a, b)| !a | b) && x != y;
    let maximal: Vec<bool> = (0..n)
        .map(|j| !cols.iter().any(|other| below(&cols[j], other)))
        .collect();
    let chosen = (0..n)
        .filter(|&j| maximal[j])
        .map(|j| &cols[j])
        .min()
        .expect("a finite set of columns has a maximal element")
        .clone();
    BoolMatrix::from_fn(n, |i, j| if maximal[j] { cols[j][i] } else { chosen[i] })
}

/// Builds the `3n x 3n` pair
///
/// ```text
///     [ M' 0 0 ]        [ M' M' (1|0) ]
/// A = [ 0  1 1 ]    B = [ 1  1   1    ]
///     [ 0  0 0 ]        [ 0  0   0    ]
/// ```
///
/// where `M'` is the neighbourhood matrix with non-maximal columns replaced
/// and the top-right block of `B` has `k` columns of ones then `n - k` of
/// zeros. `H` has a dominating set of size at most `k` iff some `G` gives
/// `A G = B`. For `k = n` the answer is trivially yes and `A = B = I_{3n}`.
pub fn reduce_ds_to_mgtp(h: &Graph, k: usize) -> Result<MgtpInstance, ReductionError> {
    let n = h.vertex_count();
    if k == 0 || k > n {
        return Err(ReductionError::KOutOfRange { k, n });
    }
    if k == n {
        let id = BoolMatrix::identity(3 * n);
        return Ok(MgtpInstance {
            a: id.clone(),
            b: id,
            source_n: n,
            k,
        });
    }
    let mp = maximalize_columns(&neighbourhood_matrix(h));
    let mut a = BoolMatrix::zeros(3 * n);
    a.put_block(0, 0, &mp);
    a.put_rect(n, n, n, 2 * n, |_, _| true);

    let mut b = BoolMatrix::zeros(3 * n);
    b.put_block(0, 0, &mp);
    b.put_block(0, n, &mp);
    b.put_rect(0, 2 * n, n, n, |_, j| j < k);
    b.put_rect(n, 0, n, 3 * n, |_, _| true);

    debug_assert!(check_maximal_column_condition(&a));
    Ok(MgtpInstance {
        a,
        b,
        source_n: n,
        k,
    })
}

/// Translates a dominating set into a transformation word for the reduced
/// instance: copy each chosen column into its own slot among columns
/// `2n+1..2n+k`, merge those slots with a conference, and pair every column
/// `i` with `n+i`.
pub fn witness_mgtp_from_dominating_set(
    h: &Graph,
    k: usize,
    set: &[usize],
) -> Result<CallSequence, ReductionError> {
    let n = h.vertex_count();
    if k == n {
        return Ok(CallSequence::new());
    }
    if set.len() > k || !h.is_dominating(set) {
        return Err(ReductionError::Precondition(format!(
            "{set:?} is not a dominating set of size at most {k}"
        )));
    }
    let inst = reduce_ds_to_mgtp(h, k)?;
    let nb = neighbourhood_matrix(h);
    let mp = maximalize_columns(&nb);
    let mut w = CallSequence::new();
    for (slot, &v) in set.iter().enumerate() {
        let source = maximal_cover(&mp, &nb.column(v - 1));
        w.push(CallPair::new(source + 1, 2 * n + slot + 1)?);
    }
    // Unused slots copy the first chosen column too; duplicates are harmless.
    for slot in set.len()..k {
        let first = w.calls()[0].i();
        w.push(CallPair::new(first, 2 * n + slot + 1)?);
    }
    w.extend(&factor_conference(
        3 * n,
        &ConferenceSet::new(2 * n + 1..=2 * n + k),
    )?);
    for i in 1..=n {
        w.push(CallPair::new(i, n + i)?);
    }
    if w.apply_right(&inst.a)? != inst.b {
        return Err(ReductionError::FactorizationMismatch);
    }
    Ok(w)
}

fn maximal_cover(mp: &BoolMatrix, column: &[bool]) -> usize {
    (0..mp.dim())
        .find(|&j| mp.column(j).iter().zip(column).all(|(m, c)| *m | !c))
        .expect("every column lies below some maximal column")
}

// ---------------------------------------------------------------------------
// Nesting and transformation -> J-order

/// The four-factor conference decomposition `X = X1 X2 X3 X4` of a nested matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingFactorization {
    pub x1: ConferenceSet,
    pub x2: Vec<ConferenceSet>,
    pub x3: Vec<ConferenceSet>,
    pub x4: ConferenceSet,
    /// Every conference expanded into calls, in order.
    pub expanded: CallSequence,
}

impl NestingFactorization {
    fn conferences(&self) -> impl Iterator<Item = &ConferenceSet> {
        std::iter::once(&self.x1)
            .chain(&self.x2)
            .chain(&self.x3)
            .chain(std::iter::once(&self.x4))
    }

    /// Product of the conference matrices themselves, without expanding
    /// them into calls.
    pub fn conference_product(&self, dim: usize) -> Result<BoolMatrix, MatrixError> {
        self.conferences()
            .try_fold(BoolMatrix::identity(dim), |acc, s| {
                acc.mul(&conference_matrix(dim, s)?)
            })
    }
}

/// Embeds `a` (n >= 2) into the `n(n+1)`-dimensional gossip element
///
/// ```text
///     [ 1 A ]   n rows
/// X = [ 1 1 ]   n^2 rows
///      n^2 n    columns
/// ```
///
/// and returns it with its factorization into conference calls
/// `X1 = C[{n+1..n(n+1)}]`, `X2 = prod_i C[{i + n(j-1) : j}]`,
/// `X3 = prod_j C[{i + n(j-1) : a(i,j) = 1} + {n^2 + j}]`, `X4 = C[{1..n^2}]`.
pub fn nest_in_gossip(
    a: &BoolMatrix,
) -> Result<(BoolMatrix, NestingFactorization), ReductionError> {
    let n = a.dim();
    if n < 2 {
        return Err(ReductionError::NestingTooSmall(n));
    }
    let nn = n * n;
    let dim = n * (n + 1);
    let mut x = BoolMatrix::ones(dim);
    x.put_rect(0, nn, n, n, |i, j| a.get(i, j));

    let x1 = ConferenceSet::new(n + 1..=dim);
    let x2: Vec<ConferenceSet> = (1..=n)
        .map(|i| ConferenceSet::new((1..=n).map(|j| i + n * (j - 1))))
        .collect();
    let x3: Vec<ConferenceSet> = (1..=n)
        .map(|j| {
            ConferenceSet::new(
                (1..=n)
                    .filter(|&i| a.get(i - 1, j - 1))
                    .map(|i| i + n * (j - 1))
                    .chain(std::iter::once(nn + j)),
            )
        })
        .collect();
    let x4 = ConferenceSet::new(1..=nn);

    let mut f = NestingFactorization {
        x1,
        x2,
        x3,
        x4,
        expanded: CallSequence::new(),
    };
    let mut expanded = CallSequence::new();
    for s in f.conferences() {
        expanded.extend(&factor_conference(dim, s)?);
    }
    f.expanded = expanded;
    if f.expanded.product(dim)? != x {
        return Err(ReductionError::FactorizationMismatch);
    }
    Ok((x, f))
}

/// A J-order instance: the question is whether `y <=_J x`. Both matrices
/// carry words certifying membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GjpInstance {
    pub x: BoolMatrix,
    pub y: BoolMatrix,
    pub x_cert: CallSequence,
    pub y_cert: CallSequence,
    pub source_n: usize,
}

impl GjpInstance {
    /// Searches for `U x V = y`.
    pub fn solve(&self, budget: u64) -> Result<SearchOutcome<GjpWitness>, SolveError> {
        solve_gjp_certified(&self.y, &self.x, &self.y_cert, &self.x_cert, budget)
    }
}

fn gjp_padding(m: &BoolMatrix) -> BoolMatrix {
    let n = m.dim();
    let mut p = BoolMatrix::zeros(2 * n);
    p.put_block(0, 0, m);
    p.put_block(0, n, &BoolMatrix::identity(n));
    p.put_block(n, n, &BoolMatrix::ones(n));
    p
}

/// Source dimension actually nested: 1x1 inputs are lifted to `diag(m, 1)`.
fn gjp_lifted_dim(n: usize) -> usize {
    n.max(2)
}

fn gjp_lift(m: &BoolMatrix) -> BoolMatrix {
    if m.dim() >= 2 {
        return m.clone();
    }
    let mut l = BoolMatrix::identity(2);
    l.set(0, 0, m.get(0, 0));
    l
}

/// `x = nest([A I; 0 1])`, `y = nest([B I; 0 1])`, both of dimension
/// `2n(2n+1)`. Then `y <=_J x` iff `A G = B` for some gossip element `G`.
///
/// For `n = 1` the equivalence fails as stated (`A = [0]`, `B = [1]` gives a
/// yes-instance through a single row merge), so `A` and `B` are first lifted
/// to `diag(A, 1)` and `diag(B, 1)`, which has the same answer, and the
/// instance has dimension 20.
pub fn reduce_gtp_to_gjp(a: &BoolMatrix, b: &BoolMatrix) -> Result<GjpInstance, ReductionError> {
    check_same_dim(a, b)?;
    let (x, fx) = nest_in_gossip(&gjp_padding(&gjp_lift(a)))?;
    let (y, fy) = nest_in_gossip(&gjp_padding(&gjp_lift(b)))?;
    Ok(GjpInstance {
        x,
        y,
        x_cert: fx.expanded,
        y_cert: fy.expanded,
        source_n: a.dim(),
    })
}

/// The right-hand word of the canonical J-order witness for a reduced
/// instance, given a transformation word `g_word` with `A G = B`: the word
/// relabelled onto the rows and columns `(2n)^2 + 1 ..= (2n)^2 + n`.
pub fn witness_gjp_from_gtp(n: usize, g_word: &CallSequence) -> Result<GjpWitness, ReductionError> {
    g_word.check(n)?;
    let lifted = gjp_lifted_dim(n);
    let offset = 4 * lifted * lifted;
    Ok(GjpWitness {
        left: CallSequence::new(),
        right: g_word.relabel(|i| i + offset)?,
    })
}

/// Multiplies out the right word `V` of a J-order witness on a reduced
/// instance with source dimension `n`, checks it is block diagonal with
/// blocks of sizes `(2n)^2, n, n`, and returns the middle block `G` (its
/// top-left entry when the source dimension 1 was lifted).
pub fn extract_gjp_witness_block(
    v_word: &CallSequence,
    source_n: usize,
) -> Result<BoolMatrix, ReductionError> {
    if source_n == 0 {
        return Err(ReductionError::Precondition(
            "source dimension must be positive".into(),
        ));
    }
    let n = gjp_lifted_dim(source_n);
    let big = 4 * n * n;
    let dim = big + 2 * n;
    let v = v_word.product(dim)?;
    let block_of = |i: usize| {
        if i < big {
            0
        } else if i < big + n {
            1
        } else {
            2
        }
    };
    for i in 0..dim {
        for j in 0..dim {
            if v.get(i, j) && block_of(i) != block_of(j) {
                return Err(ReductionError::BlockStructure(format!(
                    "entry ({}, {}) links different diagonal blocks",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(v.diagonal_block(big, source_n))
}

// ---------------------------------------------------------------------------
// Maximal transformation -> membership

/// Index bookkeeping for the `n(n+4)`-dimensional membership instance.
///
/// Column (and index) families, 1-based: `a_i = i` for `i <= n^2`, then
/// `b_i`, `c_i`, `d_i`, `e_i` as four successive blocks of `n`. Row blocks
/// `1..=5` have heights `n, n^2, n, n, n`; the block in column family `x` and
/// row block `r` is called `xr` (so `e1` is the top-right `n x n` block).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl BlockLayout {
    pub fn new(n: usize) -> Self {
        BlockLayout { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * (self.n + 4)
    }

    pub fn a(&self, i: usize) -> usize {
        i
    }

    pub fn b(&self, i: usize) -> usize {
        self.n * self.n + i
    }

    pub fn c(&self, i: usize) -> usize {
        self.n * self.n + self.n + i
    }

    pub fn d(&self, i: usize) -> usize {
        self.n * self.n + 2 * self.n + i
    }

    pub fn e(&self, i: usize) -> usize {
        self.n * self.n + 3 * self.n + i
    }

    /// Family and 1-based position within it of a 1-based index.
    pub fn family(&self, index: usize) -> (Family, usize) {
        let nn = self.n * self.n;
        let n = self.n;
        match index {
            i if i <= nn => (Family::A, i),
            i if i <= nn + n => (Family::B, i - nn),
            i if i <= nn + 2 * n => (Family::C, i - nn - n),
            i if i <= nn + 3 * n => (Family::D, i - nn - 2 * n),
            i => (Family::E, i - nn - 3 * n),
        }
    }

    /// 0-based first row and height of row block `r` in `1..=5`.
    pub fn row_block(&self, r: usize) -> (usize, usize) {
        let n = self.n;
        let nn = n * n;
        match r {
            1 => (0, n),
            2 => (n, nn),
            3 => (nn + n, n),
            4 => (nn + 2 * n, n),
            5 => (nn + 3 * n, n),
            _ => panic!("row block {r} out of range 1..=5"),
        }
    }

    /// 0-based first column and width of a column family.
    pub fn column_block(&self, f: Family) -> (usize, usize) {
        let n = self.n;
        let nn = n * n;
        match f {
            Family::A => (0, nn),
            Family::B => (nn, n),
            Family::C => (nn + n, n),
            Family::D => (nn + 2 * n, n),
            Family::E => (nn + 3 * n, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmpInstance {
    pub c: BoolMatrix,
    /// `None` for source dimension 1, where `c` is `[1]` or `[0]`.
    pub layout: Option<BlockLayout>,
    pub source_n: usize,
}

fn check_mgtp_pair(a: &BoolMatrix, b: &BoolMatrix) -> Result<(), ReductionError> {
    check_same_dim(a, b)?;
    if !check_maximal_column_condition(a) {
        return Err(MalformedInstance::MaximalColumnCondition.into());
    }
    Ok(())
}

/// Builds the membership instance
///
/// ```text
///       a  b  c  d  e
///    1 [1  A  A  0  B]
///    2 [1  1  1  0  1]
///    3 [0  0  1  I  1]
///    4 [0  I  1  I  1]
///    5 [0  I  1  I  1]
/// ```
///
/// which lies in the gossip monoid iff `A G = B` for some gossip element `G`.
/// Source dimension 1 gives `[1]` when `A = B` and `[0]` otherwise.
pub fn reduce_mgtp_to_gmp(a: &BoolMatrix, b: &BoolMatrix) -> Result<GmpInstance, ReductionError> {
    check_mgtp_pair(a, b)?;
    let n = a.dim();
    if n == 1 {
        let c = if a == b {
            BoolMatrix::identity(1)
        } else {
            BoolMatrix::zeros(1)
        };
        return Ok(GmpInstance {
            c,
            layout: None,
            source_n: 1,
        });
    }
    let layout = BlockLayout::new(n);
    let mut c = BoolMatrix::zeros(layout.dim());
    let id = BoolMatrix::identity(n);
    let ones = BoolMatrix::ones(n);
    let put = |c: &mut BoolMatrix, r: usize, f: Family, block: &BoolMatrix| {
        let (row, _) = layout.row_block(r);
        let (col, _) = layout.column_block(f);
        c.put_block(row, col, block);
    };
    let fill = |c: &mut BoolMatrix, r: usize, f: Family| {
        let (row, h) = layout.row_block(r);
        let (col, w) = layout.column_block(f);
        c.put_rect(row, col, h, w, |_, _| true);
    };
    // row block 1
    fill(&mut c, 1, Family::A);
    put(&mut c, 1, Family::B, a);
    put(&mut c, 1, Family::C, a);
    put(&mut c, 1, Family::E, b);
    // row block 2
    for f in [Family::A, Family::B, Family::C, Family::E] {
        fill(&mut c, 2, f);
    }
    // row block 3
    put(&mut c, 3, Family::C, &ones);
    put(&mut c, 3, Family::D, &id);
    put(&mut c, 3, Family::E, &ones);
    // row blocks 4 and 5
    for r in [4, 5] {
        put(&mut c, r, Family::B, &id);
        put(&mut c, r, Family::C, &ones);
        put(&mut c, r, Family::D, &id);
        put(&mut c, r, Family::E, &ones);
    }
    Ok(GmpInstance {
        c,
        layout: Some(layout),
        source_n: n,
    })
}

/// Given `g_word` with `a * prod(g_word) = b`, emits a call word for the
/// reduced membership instance as `Y1 Y2 Y3 Y4 Y5 Y6 Y7`:
/// `Y1` nests `a` over families `a, b`; `Y2 = prod C[d_i,e_i]`;
/// `Y3 = prod C[c_i,d_i]`; `Y4 = C[{c_1..c_n}]`; `Y5 = prod C[b_i,e_i]`;
/// `Y6 = prod C[c_i,e_i]`; `Y7` is `g_word` relabelled onto family `e`.
pub fn witness_gmp_from_mgtp(
    a: &BoolMatrix,
    b: &BoolMatrix,
    g_word: &CallSequence,
) -> Result<CallSequence, ReductionError> {
    check_mgtp_pair(a, b)?;
    if g_word.apply_right(a)? != *b {
        return Err(ReductionError::Precondition(
            "g_word does not transform a into b".into(),
        ));
    }
    let inst = reduce_mgtp_to_gmp(a, b)?;
    let Some(layout) = inst.layout else {
        return Ok(CallSequence::new());
    };
    let n = layout.n();
    let call = |i: usize, j: usize| CallPair::new(i, j).expect("distinct families");

    let (_, nesting) = nest_in_gossip(a)?;
    let mut w = nesting.expanded;
    for i in 1..=n {
        w.push(call(layout.d(i), layout.e(i)));
    }
    for i in 1..=n {
        w.push(call(layout.c(i), layout.d(i)));
    }
    w.extend(&factor_conference(
        layout.dim(),
        &ConferenceSet::new((1..=n).map(|i| layout.c(i))),
    )?);
    for i in 1..=n {
        w.push(call(layout.b(i), layout.e(i)));
    }
    for i in 1..=n {
        w.push(call(layout.c(i), layout.e(i)));
    }
    w.extend(&g_word.relabel(|i| layout.e(i))?);

    if w.product(layout.dim())? != inst.c {
        return Err(ReductionError::FactorizationMismatch);
    }
    Ok(w)
}

/// Drops every call that leaves the running prefix product unchanged. The
/// product of the word is preserved.
pub fn strip_redundant(n: usize, word: &CallSequence) -> Result<CallSequence, MatrixError> {
    word.check(n)?;
    let mut cur = BoolMatrix::identity(n);
    let mut kept = CallSequence::new();
    for p in word.iter() {
        let (i, j) = p.zero_based();
        if !cur.columns_equal(i, j) {
            cur.merge_columns_in_place(i, j);
            kept.push(p);
        }
    }
    Ok(kept)
}

/// Recovers a transformation word `D_1 ... D_p` with `a * prod = b` from any
/// call word for the reduced membership instance.
///
/// After stripping redundant calls, each copy call `(b_k, e_k)` must occur
/// exactly once, at position `w_k`. The calls that later grow column `e_k` in
/// the top row block are each some `(e_i, e_j)` made after both `w_i` and
/// `w_j`; in order, they map to the calls `(i, j)` of the result.
pub fn extract_mgtp_witness(
    a: &BoolMatrix,
    b: &BoolMatrix,
    c_word: &CallSequence,
) -> Result<CallSequence, ReductionError> {
    check_mgtp_pair(a, b)?;
    let inst = reduce_mgtp_to_gmp(a, b)?;
    let dim = inst.c.dim();
    if c_word.product(dim)? != inst.c {
        return Err(ReductionError::Precondition(
            "c_word does not multiply to the reduced matrix".into(),
        ));
    }
    let Some(layout) = inst.layout else {
        return Ok(CallSequence::new());
    };
    let n = layout.n();
    let word = strip_redundant(dim, c_word)?;
    let calls = word.calls();

    let mut copy_pos: Vec<Option<usize>> = vec![None; n + 1];
    for (t, p) in calls.iter().enumerate() {
        let (fi, ki) = layout.family(p.i());
        let (fj, kj) = layout.family(p.j());
        let low = matches!(fi, Family::A | Family::B);
        let high = matches!(fj, Family::C | Family::D | Family::E);
        if !(low && high) {
            continue;
        }
        if !(fi == Family::B && fj == Family::E && ki == kj) {
            return Err(ReductionError::Structural {
                claim: ExtractionClaim::CrossCallShape,
                detail: format!("call {p:?} at position {} crosses families", t + 1),
            });
        }
        if copy_pos[ki].replace(t).is_some() {
            return Err(ReductionError::Structural {
                claim: ExtractionClaim::UniqueCopyCall,
                detail: format!("copy call (b_{ki}, e_{ki}) occurs twice"),
            });
        }
    }
    let copy_pos: Vec<usize> = (1..=n)
        .map(|k| {
            copy_pos[k].ok_or_else(|| ReductionError::Structural {
                claim: ExtractionClaim::UniqueCopyCall,
                detail: format!("copy call (b_{k}, e_{k}) never occurs"),
            })
        })
        .collect::<Result<_, _>>()?;

    let (top, height) = layout.row_block(1);
    let e_column = |m: &BoolMatrix, k: usize| -> Vec<bool> {
        let col = layout.e(k) - 1;
        (top..top + height).map(|r| m.get(r, col)).collect()
    };
    let strictly_above =
        |new: &[bool], old: &[bool]| new != old && old.iter().zip(new).all(|(o, n)| !o | n);

    let mut cur = BoolMatrix::identity(dim);
    let mut d_word = CallSequence::new();
    for (t, p) in calls.iter().enumerate() {
        let before: Vec<Vec<bool>> = (1..=n).map(|k| e_column(&cur, k)).collect();
        let (i, j) = p.zero_based();
        cur.merge_columns_in_place(i, j);
        let grows_late = (1..=n)
            .any(|k| copy_pos[k - 1] < t && strictly_above(&e_column(&cur, k), &before[k - 1]));
        if !grows_late {
            continue;
        }
        let (fi, ki) = layout.family(p.i());
        let (fj, kj) = layout.family(p.j());
        let ok = fi == Family::E && fj == Family::E && copy_pos[ki - 1] < t && copy_pos[kj - 1] < t;
        if !ok {
            return Err(ReductionError::Structural {
                claim: ExtractionClaim::LateEColumnCall,
                detail: format!("call {p:?} at position {} grows an e-column", t + 1),
            });
        }
        d_word.push(CallPair::new(ki, kj)?);
    }

    if d_word.apply_right(a)? != *b {
        return Err(ReductionError::FactorizationMismatch);
    }
    Ok(d_word)
}
