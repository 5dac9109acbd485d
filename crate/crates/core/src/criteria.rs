//! Sufficient-condition checkers for full matrix algebra generation.
//!
//! Three checkers are provided, each emitting a machine-readable verdict
//! with witnesses: the even-order two-generator criterion (eigenvalue
//! multiplicity at most 2, invertible top-row blocks, a non-commuting pair
//! of hermitian corner words), its q-block generalization, and the
//! diagonal-plus-strongly-connected criterion. A PASS verdict certifies
//! that the generated algebra is the full matrix algebra; INCONCLUSIVE
//! only means the bounded search exhausted, never a disproof.

use crate::error::{Error, Result};
use crate::graph::{build_graph, BurnsideGraph};
use crate::matrix::Matrix;
use crate::poly::{lagrange_interpolate, UniPoly};
use crate::scalar::Scalar;
use crate::word::{enumerate_words, eval_word, Word};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// Even-order two-generator criterion (2 x 2 blocks).
    TwoGenerators,
    /// q-block generalization.
    QBlock,
    /// Diagonal matrix with distinct entries plus a strongly connected graph.
    LaffeyDiagonal,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::TwoGenerators => "2gens",
            Theorem::QBlock => "qgens",
            Theorem::LaffeyDiagonal => "laffey",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionStatus {
    /// All conditions verified; the algebra is full.
    Pass,
    /// The Burnside graph is not strongly connected; the algebra is not full.
    FailObstructed,
    /// A bounded search exhausted without a witness. Never a disproof.
    Inconclusive,
}

impl CriterionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionStatus::Pass => "PASS",
            CriterionStatus::FailObstructed => "FAIL_OBSTRUCTED",
            CriterionStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A prefix-sum partition `(1, 1, l3, ..., lm)`: parts are non-decreasing
/// and every later part equals the sum of some prefix of the earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPartition {
    parts: Vec<usize>,
}

impl LPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 || parts[0] != 1 || parts[1] != 1 {
            return Err(Error::InvalidWitnessValues(
                "partition must start (1, 1)".into(),
            ));
        }
        let mut prefix_sums = vec![1usize];
        for (idx, &part) in parts.iter().enumerate().skip(1) {
            if part < parts[idx - 1] {
                return Err(Error::InvalidWitnessValues(
                    "partition must be non-decreasing".into(),
                ));
            }
            if idx >= 2 && !prefix_sums.contains(&part) {
                return Err(Error::InvalidWitnessValues(
                    "each part must equal a prefix sum of the earlier parts".into(),
                ));
            }
            prefix_sums.push(prefix_sums.last().unwrap() + part);
        }
        Ok(LPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn all_ones(n: usize) -> Self {
        LPartition { parts: vec![1; n] }
    }
}

#[derive(Clone, Debug)]
pub struct Witnesses {
    pub partition: Option<LPartition>,
    pub words: Vec<Word>,
    pub diagonalizing_permutation: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CriteriaVerdict {
    pub theorem: Theorem,
    pub status: CriterionStatus,
    pub witnesses: Option<Witnesses>,
}

impl CriteriaVerdict {
    fn new(theorem: Theorem, status: CriterionStatus) -> Self {
        CriteriaVerdict {
            theorem,
            status,
            witnesses: None,
        }
    }

    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            theorem: self.theorem.as_str().to_string(),
            status: self.status.as_str().to_string(),
            witnesses: self.witnesses.as_ref().map(|w| WitnessesJson {
                partition: w.partition.as_ref().map(|p| p.parts().to_vec()),
                words: w
                    .words
                    .iter()
                    .map(|word| {
                        word.steps()
                            .iter()
                            .map(|s| [s.matrix + 1, s.from + 1, s.to + 1])
                            .collect()
                    })
                    .collect(),
                diagonalizing_permutation: w
                    .diagonalizing_permutation
                    .as_ref()
                    .map(|p| p.iter().map(|&v| v + 1).collect()),
            }),
        }
    }
}

/// Wire form of a verdict; indices one-based.
#[derive(Serialize)]
pub struct VerdictJson {
    pub theorem: String,
    pub status: String,
    pub witnesses: Option<WitnessesJson>,
}

#[derive(Serialize)]
pub struct WitnessesJson {
    pub partition: Option<Vec<usize>>,
    pub words: Vec<Vec<[usize; 3]>>,
    pub diagonalizing_permutation: Option<Vec<usize>>,
}

/// True iff no diagonal value of `k` occurs more than `p` times.
/// Requires diagonal input; callers put the matrix in a diagonal basis
/// first.
pub fn check_mult_p(k: &Matrix, p: usize) -> Result<bool> {
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let diag = k.diagonal_entries();
    for value in &diag {
        let count = diag.iter().filter(|v| *v == value).count();
        if count > p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All prefix-sum partitions of `n`, in lexicographic order.
pub fn enumerate_l_partitions(n: usize) -> Result<Vec<LPartition>> {
    if n < 2 {
        return Err(Error::PartitionSizeTooSmall(n));
    }
    fn extend(parts: &mut Vec<usize>, sum: usize, n: usize, out: &mut Vec<LPartition>) {
        if sum == n {
            out.push(LPartition {
                parts: parts.clone(),
            });
            return;
        }
        let mut candidates: Vec<usize> = Vec::new();
        let mut acc = 0;
        for &part in parts.iter() {
            acc += part;
            if acc >= *parts.last().unwrap() && sum + acc <= n && !candidates.contains(&acc) {
                candidates.push(acc);
            }
        }
        candidates.sort_unstable();
        for cand in candidates {
            parts.push(cand);
            extend(parts, sum + cand, n, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![1, 1], 2, n, &mut out);
    Ok(out)
}

/// Checks the top-row blocks prescribed by a partition: block `i` is the
/// square submatrix of side `p * l_i` occupying the first `p * l_i` rows
/// and the next `p * l_i` columns. All must be invertible.
pub fn partition_blocks_invertible(h: &Matrix, p: usize, partition: &LPartition) -> Result<bool> {
    let n = h.block_dim(p)?;
    if partition.total() != n {
        return Err(Error::SizeMismatch);
    }
    let mut col = 0;
    for &part in partition.parts() {
        let side = p * part;
        let block = h.submatrix(0, side, col, col + side);
        if !block.is_invertible() {
            return Ok(false);
        }
        col += side;
    }
    Ok(true)
}

/// First partition, in lexicographic order, whose top-row blocks are all
/// invertible. `None` when no partition works.
pub fn check_l_p(h: &Matrix, p: usize) -> Result<Option<LPartition>> {
    let n = h.block_dim(p)?;
    for partition in enumerate_l_partitions(n)? {
        if partition_blocks_invertible(h, p, &partition)? {
            return Ok(Some(partition));
        }
    }
    Ok(None)
}

/// Searches for two corner words whose evaluations are hermitian and do not
/// commute.
///
/// Candidates are, for every word `w` based at the first block in
/// enumeration order: `w` itself when it ends at the first block and
/// evaluates to a hermitian matrix, and `w` concatenated with its reversed
/// transposed steps (which for hermitian inputs evaluates to
/// `eval(w) * eval(w)^*`). The first non-commuting candidate pair is
/// returned. Such a pair generates the full block algebra in the corner.
pub fn find_noncommuting_pair(
    set: &[Matrix],
    p: usize,
    max_len: usize,
) -> Result<Option<(Word, Word)>> {
    let words = enumerate_words(set, p, 0, max_len, None)?;
    let mut candidates: Vec<(Word, Matrix)> = Vec::new();
    for w in words {
        if w.end() == 0 {
            let value = eval_word(&w, set)?;
            if value.is_hermitian() {
                candidates.push((w.clone(), value));
            }
        }
        let symmetrized = w.concat(&w.conj_reversed())?;
        let value = eval_word(&symmetrized, set)?;
        if value.is_hermitian() {
            candidates.push((symmetrized, value));
        }
    }
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            let (a, b) = (&candidates[i].1, &candidates[j].1);
            if a * b != b * a {
                return Ok(Some((candidates[i].0.clone(), candidates[j].0.clone())));
            }
        }
    }
    Ok(None)
}

/// Finds a symmetric permutation grouping equal diagonal values into whole
/// `p x p` blocks, so that distinct blocks carry disjoint value sets.
///
/// Returns the identity when the input is already aligned, `Ok(None)` when
/// no such grouping exists (for instance a value of multiplicity above
/// `p`). Repacking uses first-fit on groups ordered by descending size then
/// ascending value.
pub fn block_align_permutation(k: &Matrix, p: usize) -> Result<Option<Vec<usize>>> {
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let nblocks = k.block_dim(p)?;
    let diag = k.diagonal_entries();
    if diag.iter().any(|v| !v.is_real()) {
        return Err(Error::NonRealDiagonal);
    }
    let mut groups: Vec<(Scalar, Vec<usize>)> = Vec::new();
    for (pos, value) in diag.iter().enumerate() {
        match groups.iter_mut().find(|(v, _)| v == value) {
            Some((_, positions)) => positions.push(pos),
            None => groups.push((value.clone(), vec![pos])),
        }
    }
    let aligned = groups
        .iter()
        .all(|(_, positions)| positions.iter().all(|&q| q / p == positions[0] / p));
    if aligned {
        return Ok(Some((0..diag.len()).collect()));
    }
    if groups.iter().any(|(_, positions)| positions.len() > p) {
        return Ok(None);
    }
    groups.sort_by(|(va, la), (vb, lb)| {
        lb.len()
            .cmp(&la.len())
            .then_with(|| va.real_cmp(vb).unwrap())
    });
    let mut bins: Vec<Vec<usize>> = Vec::new();
    for (_, positions) in groups {
        match bins.iter_mut().find(|bin| bin.len() + positions.len() <= p) {
            Some(bin) => bin.extend(positions),
            None => bins.push(positions),
        }
    }
    if bins.len() != nblocks {
        return Ok(None);
    }
    Ok(Some(bins.concat()))
}

fn is_identity_permutation(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &v)| i == v)
}

fn validate_hermitian_pair(h: &Matrix, k: &Matrix, p: usize) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if h.rows() != k.rows() || h.cols() != k.cols() {
        return Err(Error::SizeMismatch);
    }
    if p == 2 && !h.rows().is_multiple_of(2) {
        return Err(Error::OddSize(h.rows()));
    }
    if !h.rows().is_multiple_of(p) {
        return Err(Error::NotDivisible { size: h.rows(), p });
    }
    if !h.is_hermitian() || !k.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    Ok(())
}

/// Even-order two-generator checker.
///
/// `k` must already be diagonal (the exact pre-step only reorders a
/// diagonal matrix; diagonalizing a general hermitian matrix is the
/// caller's job). Verifies, in a block-aligned basis: eigenvalue
/// multiplicities at most 2, an invertible top-row block partition, and a
/// non-commuting pair of hermitian corner words. PASS certifies the full
/// algebra; INCONCLUSIVE is returned when the bounded word search runs out.
pub fn check_thm_2gens(h: &Matrix, k: &Matrix, max_word_len: usize) -> Result<CriteriaVerdict> {
    validate_hermitian_pair(h, k, 2)?;
    let theorem = Theorem::TwoGenerators;
    let graph = build_graph(&[h.clone(), k.clone()])?;
    if !graph.is_strongly_connected() {
        return Ok(CriteriaVerdict::new(
            theorem,
            CriterionStatus::FailObstructed,
        ));
    }
    if h.rows() / 2 < 2 || !check_mult_p(k, 2)? {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    }
    let Some(perm) = block_align_permutation(k, 2)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let (hp, kp) = if is_identity_permutation(&perm) {
        (h.clone(), k.clone())
    } else {
        (h.permute_symmetric(&perm), k.permute_symmetric(&perm))
    };
    let Some(partition) = check_l_p(&hp, 2)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let Some((w1, w2)) = find_noncommuting_pair(&[hp, kp], 2, max_word_len)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    Ok(CriteriaVerdict {
        theorem,
        status: CriterionStatus::Pass,
        witnesses: Some(Witnesses {
            partition: Some(partition),
            words: vec![w1, w2],
            diagonalizing_permutation: Some(perm),
        }),
    })
}

/// Greedy search for corner loop words whose evaluations union to a
/// strongly connected graph on `q` nodes.
fn find_corner_generating_words(
    set: &[Matrix],
    q: usize,
    max_len: usize,
) -> Result<Option<Vec<Word>>> {
    let mut edges: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    let mut chosen = Vec::new();
    let connected = |edges: &std::collections::BTreeSet<(usize, usize)>| {
        BurnsideGraph::new(q, edges.iter().copied())
            .map(|g| g.is_strongly_connected())
            .unwrap_or(false)
    };
    if connected(&edges) {
        return Ok(Some(chosen));
    }
    for w in enumerate_words(set, q, 0, max_len, Some(0))? {
        let value = eval_word(&w, set)?;
        let mut grew = false;
        for i in 0..q {
            for j in 0..q {
                if i != j && !value.get(i, j).is_zero() && edges.insert((i, j)) {
                    grew = true;
                }
            }
        }
        if grew {
            chosen.push(w);
            if connected(&edges) {
                return Ok(Some(chosen));
            }
        }
    }
    Ok(None)
}

/// First word based at the first block whose symmetrized evaluation
/// `eval(w) eval(w)^*` is diagonal with `q` pairwise distinct values.
fn find_distinct_diagonal_word(set: &[Matrix], q: usize, max_len: usize) -> Result<Option<Word>> {
    for w in enumerate_words(set, q, 0, max_len, None)? {
        let value = eval_word(&w, set)?;
        let product = &value * &value.conj_transpose();
        if !product.is_diagonal() {
            continue;
        }
        let diag = product.diagonal_entries();
        let distinct = (0..q).all(|i| (i + 1..q).all(|j| diag[i] != diag[j]));
        if distinct {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// q-block checker: loop words generating a strongly connected graph,
/// eigenvalue multiplicities at most `q`, an invertible top-row block
/// partition, and a word whose symmetrized square is diagonal with `q`
/// distinct values.
pub fn check_thm_qgens(
    h: &Matrix,
    k: &Matrix,
    q: usize,
    max_word_len: usize,
) -> Result<CriteriaVerdict> {
    validate_hermitian_pair(h, k, q)?;
    let theorem = Theorem::QBlock;
    let graph = build_graph(&[h.clone(), k.clone()])?;
    if !graph.is_strongly_connected() {
        return Ok(CriteriaVerdict::new(
            theorem,
            CriterionStatus::FailObstructed,
        ));
    }
    if h.rows() / q < 2 || !check_mult_p(k, q)? {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    }
    let Some(perm) = block_align_permutation(k, q)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let (hp, kp) = if is_identity_permutation(&perm) {
        (h.clone(), k.clone())
    } else {
        (h.permute_symmetric(&perm), k.permute_symmetric(&perm))
    };
    let Some(partition) = check_l_p(&hp, q)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let set = [hp, kp];
    let Some(corner_words) = find_corner_generating_words(&set, q, max_word_len)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let Some(distinct_word) = find_distinct_diagonal_word(&set, q, max_word_len)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let mut words = corner_words;
    words.push(distinct_word);
    Ok(CriteriaVerdict {
        theorem,
        status: CriterionStatus::Pass,
        witnesses: Some(Witnesses {
            partition: Some(partition),
            words,
            diagonalizing_permutation: Some(perm),
        }),
    })
}

/// User-supplied witnesses for the q-block checker, interpreted in the
/// block-aligned basis.
#[derive(Clone, Debug)]
pub struct QgensWitnesses {
    /// Words based and ending at the first block whose evaluations must
    /// union to a strongly connected graph.
    pub corner_words: Vec<Word>,
    /// Word whose symmetrized evaluation must be diagonal with `q`
    /// distinct values.
    pub distinct_word: Word,
}

pub fn check_thm_qgens_with_witnesses(
    h: &Matrix,
    k: &Matrix,
    q: usize,
    witnesses: &QgensWitnesses,
) -> Result<CriteriaVerdict> {
    validate_hermitian_pair(h, k, q)?;
    let theorem = Theorem::QBlock;
    let graph = build_graph(&[h.clone(), k.clone()])?;
    if !graph.is_strongly_connected() {
        return Ok(CriteriaVerdict::new(
            theorem,
            CriterionStatus::FailObstructed,
        ));
    }
    if h.rows() / q < 2 || !check_mult_p(k, q)? {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    }
    let Some(perm) = block_align_permutation(k, q)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let (hp, kp) = if is_identity_permutation(&perm) {
        (h.clone(), k.clone())
    } else {
        (h.permute_symmetric(&perm), k.permute_symmetric(&perm))
    };
    let Some(partition) = check_l_p(&hp, q)? else {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    };
    let set = [hp, kp];
    let mut edges: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    for w in &witnesses.corner_words {
        if w.base() != 0 || w.end() != 0 {
            return Err(Error::InvalidWitnessValues(
                "corner words must be based and end at the first block".into(),
            ));
        }
        let value = eval_word(w, &set)?;
        for i in 0..q {
            for j in 0..q {
                if i != j && !value.get(i, j).is_zero() {
                    edges.insert((i, j));
                }
            }
        }
    }
    let corner_ok = BurnsideGraph::new(q, edges)
        .map(|g| g.is_strongly_connected())
        .unwrap_or(false);
    if !corner_ok {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    }
    if witnesses.distinct_word.base() != 0 {
        return Err(Error::InvalidWitnessValues(
            "word must be based at the first block".into(),
        ));
    }
    let value = eval_word(&witnesses.distinct_word, &set)?;
    let product = &value * &value.conj_transpose();
    let diag = product.diagonal_entries();
    let distinct_ok =
        product.is_diagonal() && (0..q).all(|i| (i + 1..q).all(|j| diag[i] != diag[j]));
    if !distinct_ok {
        return Ok(CriteriaVerdict::new(theorem, CriterionStatus::Inconclusive));
    }
    let mut words = witnesses.corner_words.clone();
    words.push(witnesses.distinct_word.clone());
    Ok(CriteriaVerdict {
        theorem,
        status: CriterionStatus::Pass,
        witnesses: Some(Witnesses {
            partition: Some(partition),
            words,
            diagonalizing_permutation: Some(perm),
        }),
    })
}

/// Diagonal-plus-graph checker: with a diagonal companion whose entries are
/// pairwise distinct, the set generates the full algebra exactly when its
/// Burnside graph is strongly connected. Here only the sufficient
/// direction is certified as PASS; a disconnected graph is a genuine
/// obstruction because the diagonal matrix contributes no edges.
pub fn check_laffey(a_set: &[Matrix], b_diag: &Matrix) -> Result<CriteriaVerdict> {
    if a_set.is_empty() {
        return Err(Error::EmptyMatrixSet);
    }
    if !b_diag.is_square() {
        return Err(Error::NotSquare {
            rows: b_diag.rows(),
            cols: b_diag.cols(),
        });
    }
    for m in a_set {
        if m.rows() != b_diag.rows() || m.cols() != b_diag.cols() {
            return Err(Error::SizeMismatch);
        }
    }
    if !b_diag.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let diag = b_diag.diagonal_entries();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if diag[i] == diag[j] {
                return Err(Error::RepeatedDiagonal);
            }
        }
    }
    let graph = build_graph(a_set)?;
    let status = if graph.is_strongly_connected() {
        CriterionStatus::Pass
    } else {
        CriterionStatus::FailObstructed
    };
    Ok(CriteriaVerdict::new(Theorem::LaffeyDiagonal, status))
}

/// Constructs the generic witness pair for the q-block criterion: the
/// first block of `h` is the adjacency matrix of the given strongly
/// connected graph, every other block is `diag(h_values)`, and `k` is a
/// block-scalar diagonal with the given distinct values.
pub fn generic_witness(
    q: usize,
    n: usize,
    word_graph: &BurnsideGraph,
    h_values: &[Scalar],
    k_values: &[Scalar],
) -> Result<(Matrix, Matrix)> {
    if q == 0 || n == 0 {
        return Err(Error::InvalidWitnessValues(
            "q and n must be positive".into(),
        ));
    }
    if word_graph.node_count() != q {
        return Err(Error::InvalidWitnessValues(format!(
            "graph has {} nodes, expected {q}",
            word_graph.node_count()
        )));
    }
    if !word_graph.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if h_values.len() != q {
        return Err(Error::InvalidWitnessValues(format!(
            "expected {q} h-values, got {}",
            h_values.len()
        )));
    }
    for v in h_values {
        let ok = v
            .as_real()
            .is_some_and(|r| r > &num_rational::BigRational::from_integer(0.into()));
        if !ok {
            return Err(Error::InvalidWitnessValues(
                "h-values must be positive rationals".into(),
            ));
        }
    }
    if k_values.len() != n {
        return Err(Error::InvalidWitnessValues(format!(
            "expected {n} k-values, got {}",
            k_values.len()
        )));
    }
    for v in k_values {
        if !v.is_real() {
            return Err(Error::InvalidWitnessValues(
                "k-values must be real rationals".into(),
            ));
        }
    }
    for (a, values) in [(h_values, "h"), (k_values, "k")] {
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i] == a[j] {
                    return Err(Error::InvalidWitnessValues(format!(
                        "{values}-values must be pairwise distinct"
                    )));
                }
            }
        }
    }
    let adjacency = word_graph.adjacency_matrix();
    let off_block = Matrix::diagonal(h_values);
    let h = Matrix::from_blocks(n, q, |i, j| {
        if i == 0 && j == 0 {
            adjacency.clone()
        } else {
            off_block.clone()
        }
    });
    let k = Matrix::from_blocks(n, q, |i, j| {
        if i == j {
            Matrix::identity(q).scale(&k_values[i])
        } else {
            Matrix::zeros(q, q)
        }
    });
    Ok((h, k))
}

/// Interpolating polynomials that evaluate to the identity on one diagonal
/// block of `k` and to zero on every other. Requires the value sets of
/// distinct blocks to be disjoint.
pub fn eigen_projector_polys(k_diag: &Matrix, p: usize) -> Result<Vec<UniPoly>> {
    if !k_diag.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let nblocks = k_diag.block_dim(p)?;
    let diag = k_diag.diagonal_entries();
    let mut block_values: Vec<Vec<Scalar>> = Vec::with_capacity(nblocks);
    for block in diag.chunks(p) {
        let mut values: Vec<Scalar> = Vec::new();
        for entry in block {
            if !values.contains(entry) {
                values.push(entry.clone());
            }
        }
        block_values.push(values);
    }
    for i in 0..nblocks {
        for j in i + 1..nblocks {
            if block_values[i].iter().any(|v| block_values[j].contains(v)) {
                return Err(Error::MisalignedEigenvalueGroups);
            }
        }
    }
    let all_values: Vec<Scalar> = block_values.iter().flatten().cloned().collect();
    let mut polys = Vec::with_capacity(nblocks);
    for values in &block_values {
        let points: Vec<(Scalar, Scalar)> = all_values
            .iter()
            .map(|v| {
                let y = if values.contains(v) {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                (v.clone(), y)
            })
            .collect();
        polys.push(lagrange_interpolate(&points)?);
    }
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::WordStep;

    fn example_pair_c() -> (Matrix, Matrix) {
        let c1 = Matrix::from_i64_rows(&[[0, 1, 0, 1], [1, 0, 2, 0], [0, 2, 0, 0], [1, 0, 0, 0]]);
        let c2 = Matrix::diagonal_i64(&[1, 1, 0, 0]);
        (c1, c2)
    }

    #[test]
    fn mult_p_counts_multiplicities() {
        let k = Matrix::diagonal_i64(&[1, -1, 2, 3, 4, 4]);
        assert!(check_mult_p(&k, 2).unwrap());
        let k = Matrix::diagonal_i64(&[5, 5, 5, 1]);
        assert!(!check_mult_p(&k, 2).unwrap());
        let k = Matrix::diagonal_i64(&[-2, -2, -4, -4, -6, -6, -8, -8]);
        assert!(check_mult_p(&k, 2).unwrap());
        assert!(matches!(
            check_mult_p(&Matrix::from_i64_rows(&[[1, 1], [0, 1]]), 2),
            Err(Error::NotDiagonal)
        ));
    }

    fn partition_lists(n: usize) -> Vec<Vec<usize>> {
        enumerate_l_partitions(n)
            .unwrap()
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect()
    }

    /// Brute force over all compositions of n, used as the independent
    /// oracle for the partition enumerator.
    fn brute_force_partitions(n: usize) -> Vec<Vec<usize>> {
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for rest in compositions(n - first) {
                    let mut c = vec![first];
                    c.extend(rest);
                    out.push(c);
                }
            }
            out
        }
        let mut valid: Vec<Vec<usize>> = compositions(n)
            .into_iter()
            .filter(|c| {
                if c.len() < 2 || c[0] != 1 || c[1] != 1 {
                    return false;
                }
                if c.windows(2).any(|w| w[0] > w[1]) {
                    return false;
                }
                for j in 2..c.len() {
                    let prefixes: Vec<usize> = (1..j)
                        .map(|k| c[..=k].iter().sum::<usize>())
                        .chain(std::iter::once(c[0]))
                        .collect();
                    if !prefixes.contains(&c[j]) {
                        return false;
                    }
                }
                true
            })
            .collect();
        valid.sort();
        valid
    }

    #[test]
    fn l_partitions_smallest_cases() {
        assert_eq!(partition_lists(2), vec![vec![1, 1]]);
        assert_eq!(partition_lists(4), vec![vec![1, 1, 1, 1], vec![1, 1, 2]]);
        // Frozen from the brute-force oracle below; note that (1,1,1,3)
        // qualifies since 3 is the sum of the first three parts.
        assert_eq!(
            partition_lists(6),
            vec![
                vec![1, 1, 1, 1, 1, 1],
                vec![1, 1, 1, 1, 2],
                vec![1, 1, 1, 3],
                vec![1, 1, 2, 2],
            ]
        );
        assert!(matches!(
            enumerate_l_partitions(1),
            Err(Error::PartitionSizeTooSmall(1))
        ));
    }

    #[test]
    fn l_partitions_match_brute_force() {
        for n in 2..=10 {
            assert_eq!(partition_lists(n), brute_force_partitions(n), "n = {n}");
        }
    }

    #[test]
    fn l_partition_invariants_enforced() {
        assert!(LPartition::new(vec![1, 1, 2, 4, 8]).is_ok());
        assert!(LPartition::new(vec![1, 2]).is_err());
        assert!(LPartition::new(vec![1, 1, 3]).is_err());
        assert!(LPartition::new(vec![1, 1, 2, 1]).is_err());
    }

    /// Top rows of the 12 x 12 partition example; unshown entries are
    /// filled symmetrically with zeros, which no top-row block touches.
    fn partition_example_matrix() -> Matrix {
        let mut m = Matrix::zeros(12, 12);
        let top = [
            [0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0],
            [1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 0, 1],
            [0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1],
        ];
        for (r, row) in top.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, Scalar::from_int(v));
                    m.set(c, r, Scalar::from_int(v));
                }
            }
        }
        m
    }

    #[test]
    fn l_p_accepts_the_example_partitions() {
        let h = partition_example_matrix();
        assert!(h.is_hermitian());
        let p1122 = LPartition::new(vec![1, 1, 2, 2]).unwrap();
        assert!(partition_blocks_invertible(&h, 2, &p1122).unwrap());
        let ones = LPartition::all_ones(6);
        assert!(partition_blocks_invertible(&h, 2, &ones).unwrap());
        // The lexicographically first valid partition is all ones.
        assert_eq!(check_l_p(&h, 2).unwrap().unwrap().parts(), &[1; 6]);
    }

    #[test]
    fn l_p_on_the_known_example_pair() {
        let (c1, _) = example_pair_c();
        assert_eq!(check_l_p(&c1, 2).unwrap().unwrap().parts(), &[1, 1]);
    }

    #[test]
    fn l_p_absent_when_top_block_is_singular() {
        let h = Matrix::from_i64_rows(&[[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]]);
        assert!(check_l_p(&h, 2).unwrap().is_none());
    }

    #[test]
    fn noncommuting_pair_on_the_known_example() {
        let (c1, c2) = example_pair_c();
        let (w1, w2) = find_noncommuting_pair(&[c1, c2], 2, 3).unwrap().unwrap();
        assert_eq!(
            w1.steps(),
            &[WordStep {
                matrix: 0,
                from: 0,
                to: 0
            }]
        );
        assert_eq!(
            w2.steps(),
            &[
                WordStep {
                    matrix: 0,
                    from: 0,
                    to: 1
                },
                WordStep {
                    matrix: 0,
                    from: 1,
                    to: 0
                }
            ]
        );
    }

    #[test]
    fn noncommuting_pair_absent_for_diagonal_blocks() {
        // Every block diagonal, so all candidate products commute.
        let h = Matrix::diagonal_i64(&[1, 2, 3, 4]);
        let k = Matrix::from_i64_rows(&[[0, 0, 5, 0], [0, 0, 0, 7], [5, 0, 0, 0], [0, 7, 0, 0]]);
        assert!(find_noncommuting_pair(&[h, k], 2, 3).unwrap().is_none());
    }

    #[test]
    fn block_alignment_identity_when_grouped() {
        // Grouped but descending; no permutation is needed.
        let k = Matrix::diagonal_i64(&[1, 1, 0, 0]);
        assert_eq!(
            block_align_permutation(&k, 2).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
    }

    #[test]
    fn block_alignment_repacks_scattered_values() {
        let k = Matrix::diagonal_i64(&[1, 3, 1, 3]);
        let perm = block_align_permutation(&k, 2).unwrap().unwrap();
        let sorted = k.permute_symmetric(&perm);
        assert_eq!(sorted, Matrix::diagonal_i64(&[1, 1, 3, 3]));
    }

    #[test]
    fn block_alignment_impossible_on_straddling_triple() {
        // 2 has multiplicity 3 > p = 2.
        let k = Matrix::diagonal_i64(&[2, 2, 2, 5]);
        assert_eq!(block_align_permutation(&k, 2).unwrap(), None);
    }

    #[test]
    fn two_gens_passes_on_the_known_example() {
        let (c1, c2) = example_pair_c();
        let verdict = check_thm_2gens(&c1, &c2, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Pass);
        let witnesses = verdict.witnesses.unwrap();
        assert_eq!(witnesses.partition.unwrap().parts(), &[1, 1]);
        assert_eq!(witnesses.words.len(), 2);
        assert_eq!(witnesses.diagonalizing_permutation, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn two_gens_obstructed_on_identity_pair() {
        let i4 = Matrix::identity(4);
        let verdict = check_thm_2gens(&i4, &i4, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::FailObstructed);
    }

    #[test]
    fn two_gens_inconclusive_when_top_block_singular() {
        let h = Matrix::from_i64_rows(&[[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]]);
        let k = Matrix::diagonal_i64(&[1, 1, 2, 2]);
        let verdict = check_thm_2gens(&h, &k, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Inconclusive);
    }

    #[test]
    fn two_gens_validates_input() {
        let h = Matrix::identity(3);
        assert!(matches!(check_thm_2gens(&h, &h, 3), Err(Error::OddSize(3))));
        let h = Matrix::identity(4);
        let k = Matrix::from_i64_rows(&[[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]);
        assert!(matches!(
            check_thm_2gens(&h, &k, 3),
            Err(Error::NotDiagonal)
        ));
    }

    #[test]
    fn q_gens_reduction_matches_two_gens() {
        let (c1, c2) = example_pair_c();
        let verdict = check_thm_qgens(&c1, &c2, 2, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Pass);
    }

    #[test]
    fn q_gens_rejects_excessive_multiplicity() {
        // Eigenvalue 1 has multiplicity 3 > q = 2.
        let (c1, _) = example_pair_c();
        let k = Matrix::diagonal_i64(&[1, 1, 1, 0]);
        let verdict = check_thm_qgens(&c1, &k, 2, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Inconclusive);
    }

    fn complete_graph(q: usize) -> BurnsideGraph {
        let mut edges = Vec::new();
        for i in 0..q {
            for j in 0..q {
                if i != j {
                    edges.push((i, j));
                }
            }
        }
        BurnsideGraph::new(q, edges).unwrap()
    }

    #[test]
    fn generic_witness_smallest_instance() {
        let g = BurnsideGraph::new(1, []).unwrap();
        let (h, k) = generic_witness(
            1,
            2,
            &g,
            &[Scalar::from_int(1)],
            &[Scalar::from_int(1), Scalar::from_int(2)],
        )
        .unwrap();
        assert_eq!(h, Matrix::from_i64_rows(&[[0, 1], [1, 1]]));
        assert_eq!(k, Matrix::diagonal_i64(&[1, 2]));
    }

    #[test]
    fn generic_witness_two_cycle_passes_qgens() {
        let g = complete_graph(2);
        let h_values = [Scalar::from_int(1), Scalar::from_int(2)];
        let k_values = [
            Scalar::from_int(0),
            Scalar::from_int(1),
            Scalar::from_int(2),
        ];
        let (h, k) = generic_witness(2, 3, &g, &h_values, &k_values).unwrap();
        assert!(h.is_hermitian());
        let verdict = check_thm_qgens(&h, &k, 2, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Pass);
        // Soundness against the ground truth.
        assert_eq!(crate::oracle::algebra_dimension(&[h, k], true).unwrap(), 36);
    }

    #[test]
    fn generic_witness_complete_triple_passes_qgens() {
        let g = complete_graph(3);
        let h_values = [
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
        ];
        let k_values = [
            Scalar::from_int(0),
            Scalar::from_int(1),
            Scalar::from_int(2),
        ];
        let (h, k) = generic_witness(3, 3, &g, &h_values, &k_values).unwrap();
        let verdict = check_thm_qgens(&h, &k, 3, 3).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Pass);
        let supplied = QgensWitnesses {
            corner_words: vec![Word::new(
                3,
                vec![WordStep {
                    matrix: 0,
                    from: 0,
                    to: 0,
                }],
            )
            .unwrap()],
            distinct_word: Word::new(
                3,
                vec![WordStep {
                    matrix: 0,
                    from: 0,
                    to: 1,
                }],
            )
            .unwrap(),
        };
        let verdict = check_thm_qgens_with_witnesses(&h, &k, 3, &supplied).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Pass);
        assert_eq!(crate::oracle::algebra_dimension(&[h, k], true).unwrap(), 81);
    }

    #[test]
    fn generic_witness_directed_cycle_generates_full_algebra() {
        // A directed 3-cycle gives a non-hermitian first block, so the
        // checker preconditions do not apply; the span closure still
        // certifies the full 81-dimensional algebra.
        let g = BurnsideGraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let h_values = [
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
        ];
        let k_values = [
            Scalar::from_int(0),
            Scalar::from_int(1),
            Scalar::from_int(2),
        ];
        let (h, k) = generic_witness(3, 3, &g, &h_values, &k_values).unwrap();
        assert!(!h.is_hermitian());
        let dim = crate::oracle::algebra_dimension(&[h, k], true).unwrap();
        assert_eq!(dim, 81);
    }

    #[test]
    fn generic_witness_validates_values() {
        let g = complete_graph(2);
        // Repeated h-values.
        assert!(generic_witness(
            2,
            2,
            &g,
            &[Scalar::from_int(1), Scalar::from_int(1)],
            &[Scalar::from_int(0), Scalar::from_int(1)],
        )
        .is_err());
        // Non-positive h-value.
        assert!(generic_witness(
            2,
            2,
            &g,
            &[Scalar::from_int(-1), Scalar::from_int(1)],
            &[Scalar::from_int(0), Scalar::from_int(1)],
        )
        .is_err());
        // Disconnected graph.
        let disconnected = BurnsideGraph::new(2, []).unwrap();
        assert!(matches!(
            generic_witness(
                2,
                2,
                &disconnected,
                &[Scalar::from_int(1), Scalar::from_int(2)],
                &[Scalar::from_int(0), Scalar::from_int(1)],
            ),
            Err(Error::NotStronglyConnected)
        ));
    }

    #[test]
    fn laffey_passes_on_cycle_plus_distinct_diagonal() {
        let n = 4;
        let mut cycle = Matrix::zeros(n, n);
        for v in 0..n {
            cycle.set(v, (v + 1) % n, Scalar::one());
        }
        let b = Matrix::diagonal_i64(&[1, 2, 3, 4]);
        let verdict = check_laffey(&[cycle], &b).unwrap();
        assert_eq!(verdict.status, CriterionStatus::Pass);
    }

    #[test]
    fn laffey_obstructed_on_block_triangular_set() {
        let a = Matrix::from_i64_rows(&[[1, 1, 1], [0, 1, 1], [0, 1, 1]]);
        let b = Matrix::diagonal_i64(&[1, 2, 3]);
        let verdict = check_laffey(&[a], &b).unwrap();
        assert_eq!(verdict.status, CriterionStatus::FailObstructed);
    }

    #[test]
    fn laffey_rejects_repeated_diagonal() {
        let a = Matrix::identity(3);
        let b = Matrix::diagonal_i64(&[1, 1, 3]);
        assert!(matches!(
            check_laffey(&[a], &b),
            Err(Error::RepeatedDiagonal)
        ));
    }

    #[test]
    fn projectors_on_paired_diagonal() {
        let k = Matrix::diagonal_i64(&[1, 1, 2, 2]);
        let polys = eigen_projector_polys(&k, 2).unwrap();
        assert_eq!(polys.len(), 2);
        assert_eq!(polys[0], UniPoly::from_i64(&[2, -1]));
        let p0 = polys[0].eval_matrix(&k).unwrap();
        assert_eq!(p0, Matrix::diagonal_i64(&[1, 1, 0, 0]));
    }

    #[test]
    fn projectors_on_constant_block() {
        let k = Matrix::diagonal_i64(&[7, 7]);
        let polys = eigen_projector_polys(&k, 2).unwrap();
        assert_eq!(polys, vec![UniPoly::one()]);
    }

    #[test]
    fn projectors_on_family_diagonal() {
        let k = Matrix::diagonal_i64(&[-2, -2, -4, -4, -6, -6, -8, -8]);
        let polys = eigen_projector_polys(&k, 2).unwrap();
        assert_eq!(polys.len(), 4);
        for (b, q) in polys.iter().enumerate() {
            assert_eq!(q.degree(), Some(3));
            let image = q.eval_matrix(&k).unwrap();
            let mut expected = Matrix::zeros(8, 8);
            expected.set(2 * b, 2 * b, Scalar::one());
            expected.set(2 * b + 1, 2 * b + 1, Scalar::one());
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn projectors_reject_straddling_groups() {
        let k = Matrix::diagonal_i64(&[1, 2, 2, 3]);
        assert!(matches!(
            eigen_projector_polys(&k, 2),
            Err(Error::MisalignedEigenvalueGroups)
        ));
    }
}
