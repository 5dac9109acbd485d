//! Words of `p x p` blocks.
//!
//! A word is a chained product of blocks drawn from a set of matrices: the
//! column block index of each step matches the row block index of the
//! next. Block indices are zero-based here and one-based on the wire.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WordStep {
    /// Index into the matrix set.
    pub matrix: usize,
    /// Block row of the chosen block.
    pub from: usize,
    /// Block column of the chosen block.
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    p: usize,
    steps: Vec<WordStep>,
}

impl Word {
    pub fn new(p: usize, steps: Vec<WordStep>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyWord);
        }
        for pair in steps.windows(2) {
            if pair[0].to != pair[1].from {
                return Err(Error::ChainViolation);
            }
        }
        Ok(Word { p, steps })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> &[WordStep] {
        &self.steps
    }

    /// Block index the word is based at.
    pub fn base(&self) -> usize {
        self.steps[0].from
    }

    /// Block index the word ends at.
    pub fn end(&self) -> usize {
        self.steps.last().unwrap().to
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.p != other.p || self.end() != other.base() {
            return Err(Error::ChainViolation);
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Word::new(self.p, steps)
    }

    /// The reversed word with each block position transposed. For a set of
    /// hermitian matrices it evaluates to the conjugate transpose of the
    /// original evaluation.
    pub fn conj_reversed(&self) -> Word {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| WordStep {
                matrix: s.matrix,
                from: s.to,
                to: s.from,
            })
            .collect();
        Word::new(self.p, steps).expect("reversal preserves chaining")
    }

    pub fn to_json(&self) -> WordJson {
        WordJson {
            p: self.p,
            steps: self
                .steps
                .iter()
                .map(|s| [s.matrix + 1, s.from + 1, s.to + 1])
                .collect(),
        }
    }
}

/// Wire form of a word: one-based `[matrix, block_row, block_col]` triples.
#[derive(Serialize)]
pub struct WordJson {
    pub p: usize,
    pub steps: Vec<[usize; 3]>,
}

fn check_set(set: &[Matrix], p: usize) -> Result<usize> {
    let Some(first) = set.first() else {
        return Err(Error::EmptyMatrixSet);
    };
    let n = first.block_dim(p)?;
    for m in set {
        if m.rows() != first.rows() || m.cols() != first.cols() {
            return Err(Error::SizeMismatch);
        }
    }
    Ok(n)
}

/// Exact product of the designated blocks, left to right.
pub fn eval_word(word: &Word, set: &[Matrix]) -> Result<Matrix> {
    let n = check_set(set, word.p())?;
    let mut acc: Option<Matrix> = None;
    for step in word.steps() {
        let m = set
            .get(step.matrix)
            .ok_or(Error::MatrixIndexOutOfRange(step.matrix))?;
        if step.from >= n || step.to >= n {
            return Err(Error::BlockIndexOutOfRange {
                i: step.from,
                j: step.to,
                n,
            });
        }
        let block = m.p_block(word.p(), step.from, step.to)?;
        acc = Some(match acc {
            None => block,
            Some(prev) => &prev * &block,
        });
    }
    Ok(acc.expect("words are nonempty"))
}

/// All words of length `1..=max_len` based at `base` whose every step picks
/// a nonzero block, optionally restricted to a given end block. Output is
/// ordered by length, then lexicographically by the step triples.
pub fn enumerate_words(
    set: &[Matrix],
    p: usize,
    base: usize,
    max_len: usize,
    end: Option<usize>,
) -> Result<Vec<Word>> {
    let n = check_set(set, p)?;
    if base >= n {
        return Err(Error::BaseOutOfRange(base));
    }
    if let Some(e) = end {
        if e >= n {
            return Err(Error::BaseOutOfRange(e));
        }
    }

    // steps_from[i] lists the nonzero blocks with block row i, sorted.
    let mut steps_from: Vec<Vec<WordStep>> = vec![Vec::new(); n];
    for (mi, m) in set.iter().enumerate() {
        for (i, list) in steps_from.iter_mut().enumerate() {
            for j in 0..n {
                if !m.p_block(p, i, j)?.is_zero() {
                    list.push(WordStep {
                        matrix: mi,
                        from: i,
                        to: j,
                    });
                }
            }
        }
    }
    for list in &mut steps_from {
        list.sort();
    }

    let mut out = Vec::new();
    let mut frontier: Vec<Vec<WordStep>> = vec![Vec::new()];
    let mut tails: Vec<usize> = vec![base];
    for _ in 0..max_len {
        let mut next_frontier = Vec::new();
        let mut next_tails = Vec::new();
        for (prefix, tail) in frontier.iter().zip(&tails) {
            for step in &steps_from[*tail] {
                let mut steps = prefix.clone();
                steps.push(step.clone());
                if end.is_none_or(|e| e == step.to) {
                    out.push(Word::new(p, steps.clone()).expect("chained by construction"));
                }
                next_tails.push(step.to);
                next_frontier.push(steps);
            }
        }
        frontier = next_frontier;
        tails = next_tails;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(out)
}
