//! Dense matrices over the Gaussian rationals.
//!
//! Row-major storage, exact arithmetic throughout. The JSON wire format is
//! `{"ring": "Q" | "Qi", "size": [r, c], "entries": [["<scalar>", ...], ...]}`
//! where each entry is a scalar literal such as `"-1/2"` or `"3+2/5i"`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from a row-major entry vector.
    /// Panics when `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix::new(rows, cols, entries)
    }

    pub fn from_rows<R: AsRef<[Scalar]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        assert!(nrows > 0, "no rows");
        let ncols = rows[0].as_ref().len();
        assert!(
            rows.iter().all(|r| r.as_ref().len() == ncols),
            "ragged rows"
        );
        Matrix::from_fn(nrows, ncols, |r, c| rows[r].as_ref()[c].clone())
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        assert!(nrows > 0, "no rows");
        let ncols = rows[0].as_ref().len();
        assert!(
            rows.iter().all(|r| r.as_ref().len() == ncols),
            "ragged rows"
        );
        Matrix::from_fn(nrows, ncols, |r, c| Scalar::from_int(rows[r].as_ref()[c]))
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let n = values.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                values[r].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn diagonal_i64(values: &[i64]) -> Self {
        let scalars: Vec<Scalar> = values.iter().map(|&v| Scalar::from_int(v)).collect();
        Matrix::diagonal(&scalars)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = value;
    }

    /// Row-major flattening, used by the span-closure oracle.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn is_diagonal(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c && !self.get(r, c).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn diagonal_entries(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn scale(&self, by: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * by)
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Kronecker product, `(a ⊗ b)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (ra, rb) = (r / other.rows, r % other.rows);
            let (ca, cb) = (c / other.cols, c % other.cols);
            self.get(ra, ca) * other.get(rb, cb)
        })
    }

    /// Number of `p x p` blocks per side, when the matrix tiles evenly.
    pub fn block_dim(&self, p: usize) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if p == 0 || !self.rows.is_multiple_of(p) {
            return Err(Error::NotDivisible { size: self.rows, p });
        }
        Ok(self.rows / p)
    }

    /// The `p x p` submatrix at block position `(i, j)`, zero-based, with
    /// the first index naming the block row.
    pub fn p_block(&self, p: usize, i: usize, j: usize) -> Result<Matrix> {
        let n = self.block_dim(p)?;
        if i >= n || j >= n {
            return Err(Error::BlockIndexOutOfRange { i, j, n });
        }
        Ok(Matrix::from_fn(p, p, |r, c| {
            self.get(i * p + r, j * p + c).clone()
        }))
    }

    /// Assembles an `(n*p) x (n*p)` matrix from a block-position callback.
    pub fn from_blocks(n: usize, p: usize, mut f: impl FnMut(usize, usize) -> Matrix) -> Matrix {
        let mut out = Matrix::zeros(n * p, n * p);
        for bi in 0..n {
            for bj in 0..n {
                let block = f(bi, bj);
                assert!(block.rows == p && block.cols == p, "block size mismatch");
                for r in 0..p {
                    for c in 0..p {
                        out.set(bi * p + r, bj * p + c, block.get(r, c).clone());
                    }
                }
            }
        }
        out
    }

    /// Submatrix copy of `row_range x col_range`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Symmetric relabeling: `out[i][j] = self[perm[i]][perm[j]]`, so
    /// `perm[k]` is the original index placed at position `k`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Matrix {
        assert!(
            self.is_square() && perm.len() == self.rows,
            "bad permutation"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(perm[r], perm[c]).clone()
        })
    }

    /// Exact rank over the Gaussian rationals by Bareiss fraction-free
    /// elimination, which keeps intermediate entries small compared to
    /// naive fraction arithmetic.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut prev = Scalar::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pivot_row);
            for i in row + 1..self.rows {
                for j in col + 1..self.cols {
                    let num = &(&a[row][col] * &a[i][j]) - &(&a[i][col] * &a[row][j]);
                    a[i][j] = &num / &prev;
                }
                a[i][col] = Scalar::zero();
            }
            prev = a[row][col].clone();
            row += 1;
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular or
    /// non-square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row: Vec<Scalar> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.extend((0..n).map(|c| {
                    if r == c {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].inv();
            for v in a[col].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (target, source) in row.iter_mut().zip(&pivot_row) {
                        if !source.is_zero() {
                            *target = &*target - &(&factor * source);
                        }
                    }
                }
            }
        }
        Some(Matrix::from_fn(n, n, |r, c| a[r][n + c].clone()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Matrix> {
        serde_json::from_str(text).map_err(|e| Error::MatrixJson(e.to_string()))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "size mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "size mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "size mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(r, k) * rhs.get(k, c));
            }
            acc
        })
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    ring: String,
    size: [usize; 2],
    entries: Vec<Vec<String>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let all_real = self.entries.iter().all(Scalar::is_real);
        let json = MatrixJson {
            ring: if all_real { "Q" } else { "Qi" }.to_string(),
            size: [self.rows, self.cols],
            entries: (0..self.rows)
                .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let json = MatrixJson::deserialize(deserializer)?;
        let [rows, cols] = json.size;
        if json.ring != "Q" && json.ring != "Qi" {
            return Err(D::Error::custom(format!("unknown ring {:?}", json.ring)));
        }
        if json.entries.len() != rows {
            return Err(D::Error::custom(format!(
                "expected {rows} rows, found {}",
                json.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (r, row) in json.entries.iter().enumerate() {
            if row.len() != cols {
                return Err(D::Error::custom(format!(
                    "row {}: expected {cols} entries, found {}",
                    r + 1,
                    row.len()
                )));
            }
            for (c, text) in row.iter().enumerate() {
                let value: Scalar = text.parse().map_err(|e| {
                    D::Error::custom(format!("row {}, column {}: {e}", r + 1, c + 1))
                })?;
                if json.ring == "Q" && !value.is_real() {
                    return Err(D::Error::custom(format!(
                        "row {}, column {}: complex entry in ring Q",
                        r + 1,
                        c + 1
                    )));
                }
                entries.push(value);
            }
        }
        Ok(Matrix::new(rows, cols, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_is_full() {
        assert_eq!(Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_of_all_ones_is_one() {
        let m = Matrix::from_i64_rows(&[[1, 1], [1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_with_zero_column() {
        let m = Matrix::from_i64_rows(&[[0, 1, 2], [0, 2, 4], [0, 0, 5]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_of_rational_matrix() {
        let m = Matrix::from_rows(&[
            [Scalar::from_ratio(1, 2), Scalar::from_ratio(1, 3)],
            [Scalar::from_ratio(3, 2), Scalar::one()],
        ]);
        // Second row equals 3 times the first.
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kron_examples() {
        let d = Matrix::diagonal_i64(&[1, 2]);
        assert_eq!(
            Matrix::identity(2).kron(&d),
            Matrix::diagonal_i64(&[1, 2, 1, 2])
        );
        let x = Matrix::from_i64_rows(&[[0, 1], [1, 0]]);
        assert_eq!(x.kron(&Matrix::identity(1)), x);
        // The two orders differ unless the diagonal is constant.
        let a = d.kron(&Matrix::identity(2));
        let b = Matrix::identity(2).kron(&d);
        assert_ne!(a, b);
        assert_eq!(a, Matrix::diagonal_i64(&[1, 1, 2, 2]));
    }

    #[test]
    fn p_block_extraction() {
        let m = Matrix::from_i64_rows(&[
            [1, 2, 3, 4],
            [5, 6, 7, 8],
            [9, 10, 11, 12],
            [13, 14, 15, 16],
        ]);
        assert_eq!(
            m.p_block(2, 0, 1).unwrap(),
            Matrix::from_i64_rows(&[[3, 4], [7, 8]])
        );
        assert_eq!(
            m.p_block(2, 1, 0).unwrap(),
            Matrix::from_i64_rows(&[[9, 10], [13, 14]])
        );
        assert_eq!(m.p_block(4, 0, 0).unwrap(), m);
        assert!(matches!(
            m.p_block(3, 0, 0),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            m.p_block(2, 2, 0),
            Err(Error::BlockIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn hermitian_check_uses_conjugate() {
        let i = Scalar::i();
        let h = Matrix::from_rows(&[[Scalar::from_int(1), i.clone()], [-&i, Scalar::from_int(2)]]);
        assert!(h.is_hermitian());
        let not_h = Matrix::from_rows(&[
            [Scalar::from_int(1), i.clone()],
            [i.clone(), Scalar::from_int(2)],
        ]);
        assert!(!not_h.is_hermitian());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert_eq!(&inv * &m, Matrix::identity(3));
        assert!(Matrix::from_i64_rows(&[[1, 1], [1, 1]]).inverse().is_none());
        assert!(Matrix::zeros(2, 3).inverse().is_none());
    }

    #[test]
    fn permute_symmetric_relabels() {
        let m = Matrix::from_i64_rows(&[[1, 2], [3, 4]]);
        let p = m.permute_symmetric(&[1, 0]);
        assert_eq!(p, Matrix::from_i64_rows(&[[4, 3], [2, 1]]));
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_rows(&[
            [Scalar::from_ratio(-1, 2), Scalar::i()],
            [Scalar::from_int(3), "2-1/3i".parse().unwrap()],
        ]);
        let text = m.to_json_string();
        assert!(text.contains("\"Qi\""));
        assert_eq!(Matrix::from_json_str(&text).unwrap(), m);

        let real = Matrix::identity(2);
        assert!(real.to_json_string().contains("\"Q\""));
    }

    #[test]
    fn json_rejects_malformed() {
        // Complex entry declared as ring Q.
        let bad = r#"{"ring":"Q","size":[1,1],"entries":[["1+2i"]]}"#;
        assert!(Matrix::from_json_str(bad).is_err());
        // Wrong row count.
        let bad = r#"{"ring":"Q","size":[2,1],"entries":[["1"]]}"#;
        assert!(Matrix::from_json_str(bad).is_err());
        // Unknown field.
        let bad = r#"{"ring":"Q","size":[1,1],"entries":[["1"]],"extra":0}"#;
        assert!(Matrix::from_json_str(bad).is_err());
    }
}
