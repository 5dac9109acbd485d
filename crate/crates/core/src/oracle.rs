//! Ground-truth dimension of the algebra generated by a matrix set.
//!
//! The oracle maintains a reduced echelon basis of flattened matrices and
//! closes it under left multiplication by the generators. Seeding the
//! basis with the generators (and optionally the identity) makes the
//! left-extension loop reach every word; the optional two-sided mode is a
//! cross-check, not the default path.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use std::collections::VecDeque;

/// Reduced echelon basis of flattened `ambient x ambient` matrices.
///
/// Rows are kept in reduced echelon form with pivot columns chosen at the
/// smallest index; insertion is exact and deterministic.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    ambient: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBasis {
    pub fn new(ambient: usize) -> Self {
        SpanBasis {
            ambient,
            rows: Vec::new(),
        }
    }

    /// Side length of the matrices whose flattenings live here.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.ambient * self.ambient
    }

    /// Reduces `vector` against the basis and inserts the remainder when
    /// nonzero. Returns whether the dimension grew.
    pub fn insert(&mut self, mut vector: Vec<Scalar>) -> bool {
        assert_eq!(
            vector.len(),
            self.ambient * self.ambient,
            "vector length mismatch"
        );
        for (pivot, row) in &self.rows {
            if !vector[*pivot].is_zero() {
                let factor = vector[*pivot].clone();
                for (v, r) in vector.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *v = &*v - &(&factor * r);
                    }
                }
            }
        }
        let Some(pivot) = vector.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = vector[pivot].inv();
        for v in vector.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (r, v) in row.iter_mut().zip(&vector) {
                    if !v.is_zero() {
                        *r = &*r - &(&factor * v);
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, vector));
        true
    }

    /// True iff the flattened matrix already lies in the span.
    pub fn contains(&self, m: &Matrix) -> bool {
        let mut vector = m.flatten();
        for (pivot, row) in &self.rows {
            if !vector[*pivot].is_zero() {
                let factor = vector[*pivot].clone();
                for (v, r) in vector.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *v = &*v - &(&factor * r);
                    }
                }
            }
        }
        vector.iter().all(Scalar::is_zero)
    }
}

fn validate_set(matrices: &[Matrix]) -> Result<usize> {
    let Some(first) = matrices.first() else {
        return Err(Error::EmptyMatrixSet);
    };
    if !first.is_square() {
        return Err(Error::NotSquare {
            rows: first.rows(),
            cols: first.cols(),
        });
    }
    for m in matrices {
        if m.rows() != first.rows() || m.cols() != first.cols() {
            return Err(Error::SizeMismatch);
        }
    }
    Ok(first.rows())
}

fn closure(matrices: &[Matrix], include_identity: bool, two_sided: bool) -> Result<usize> {
    let n = validate_set(matrices)?;
    let full = n * n;
    let mut basis = SpanBasis::new(n);
    let mut elements: Vec<Matrix> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let push = |m: Matrix,
                basis: &mut SpanBasis,
                elements: &mut Vec<Matrix>,
                queue: &mut VecDeque<usize>| {
        if basis.dimension() < full && basis.insert(m.flatten()) {
            elements.push(m);
            queue.push_back(elements.len() - 1);
        }
    };

    if include_identity {
        push(Matrix::identity(n), &mut basis, &mut elements, &mut queue);
    }
    for g in matrices {
        push(g.clone(), &mut basis, &mut elements, &mut queue);
    }
    while let Some(idx) = queue.pop_front() {
        if basis.dimension() == full {
            break;
        }
        for g in matrices {
            let product = g * &elements[idx];
            push(product, &mut basis, &mut elements, &mut queue);
            if two_sided {
                let product = &elements[idx] * g;
                push(product, &mut basis, &mut elements, &mut queue);
            }
        }
    }
    Ok(basis.dimension())
}

/// Dimension of the span of all products of the generators, closed under
/// left multiplication; with `include_identity` the unital algebra is
/// measured. Terminates after at most `n^2` basis insertions.
pub fn algebra_dimension(matrices: &[Matrix], include_identity: bool) -> Result<usize> {
    closure(matrices, include_identity, false)
}

/// Same dimension computed with two-sided multiplication; a cross-check
/// for the left-only closure.
pub fn algebra_dimension_two_sided(matrices: &[Matrix], include_identity: bool) -> Result<usize> {
    closure(matrices, include_identity, true)
}

/// True iff the (unital) algebra generated by the set is the full matrix
/// algebra.
pub fn is_full_algebra(matrices: &[Matrix]) -> Result<bool> {
    let n = validate_set(matrices)?;
    Ok(algebra_dimension(matrices, true)? == n * n)
}
