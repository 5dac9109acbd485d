//! The one-parameter counterexample family and its verification.
//!
//! For `n >= 4` and a nonzero real rational `b`, two skew-symmetric
//! `2n x 2n` matrices `A` and `B` are assembled from 2 x 2 blocks and the
//! symmetric pair `H = A^2`, `K = AB + BA` is formed. Every pencil
//! `x0 H + y0 K` then has a perfect-square characteristic polynomial while
//! `H` and `K` nevertheless generate the full matrix algebra, which the
//! report below certifies exactly: structural block identities, grid
//! sampling of the pencil, the two-generator criterion, and the
//! span-closure dimension.

use crate::criteria::{check_thm_2gens, CriteriaVerdict, CriterionStatus, VerdictJson};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::algebra_dimension;
use crate::poly::{char_poly, is_perfect_square, square_free, SquareFreeFactorization, UniPoly};
use crate::scalar::Scalar;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `diag(1, -1)`.
pub fn reflection_block() -> Matrix {
    Matrix::diagonal_i64(&[1, -1])
}

/// `[[0, b], [b, 0]]`.
pub fn swap_block(b: &Scalar) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m.set(0, 1, b.clone());
    m.set(1, 0, b.clone());
    m
}

/// The quarter-turn `[[0, -1], [1, 0]]`, squaring to minus the identity.
pub fn rotation_block() -> Matrix {
    Matrix::from_i64_rows(&[[0, -1], [1, 0]])
}

/// Exact identities the three building blocks satisfy for every nonzero
/// real `b`: the commutator form of the reflection and swap blocks, their
/// squares, and anticommutation with the quarter turn.
pub fn block_identities_hold(b: &Scalar) -> bool {
    let alpha = reflection_block();
    let beta = swap_block(b);
    let u = rotation_block();
    let i2 = Matrix::identity(2);
    let two_b = &Scalar::from_int(2) * b;

    let commutator = &(&alpha * &beta) - &(&beta * &alpha);
    let mut expected = Matrix::zeros(2, 2);
    expected.set(0, 1, two_b.clone());
    expected.set(1, 0, -&two_b);
    if commutator != expected || commutator.is_zero() {
        return false;
    }
    if &alpha * &alpha != i2 || -&(&u * &u) != i2 {
        return false;
    }
    let apb = &alpha + &beta;
    let scale = &(b * b) + &Scalar::one();
    if &apb * &apb != i2.scale(&scale) {
        return false;
    }
    let anti = |x: &Matrix, y: &Matrix| &(x * y) + &(y * x);
    anti(&alpha, &u).is_zero() && anti(&beta, &u).is_zero()
}

/// Parameters of the family: matrices are `2n x 2n` with `n >= 4`, and the
/// real rational parameter `b` is nonzero.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    n: usize,
    b: Scalar,
}

impl FamilyParams {
    pub fn new(n: usize, b: Scalar) -> Result<Self> {
        if n < 4 {
            return Err(Error::FamilySizeTooSmall(n));
        }
        if !b.is_real() || b.is_zero() {
            return Err(Error::InvalidFamilyParameter);
        }
        Ok(FamilyParams { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }
}

/// The assembled family: skew-symmetric `a` and `b`, symmetric `h = a^2`
/// and `k = ab + ba`.
#[derive(Clone, Debug)]
pub struct FamilyPair {
    pub a: Matrix,
    pub b: Matrix,
    pub h: Matrix,
    pub k: Matrix,
}

/// Assembles the family from its 2 x 2 block recipe. Block row 0 carries
/// the reflection block towards every other block row (with the swap block
/// added at position 3), block rows 1..3 carry a few more reflection
/// blocks, and the diagonal carries increasing multiples of the quarter
/// turn.
pub fn build_family(params: &FamilyParams) -> FamilyPair {
    let n = params.n;
    let alpha = reflection_block();
    let beta = swap_block(&params.b);
    let u = rotation_block();
    let apb = &alpha + &beta;
    let zero = Matrix::zeros(2, 2);

    let a = Matrix::from_blocks(n, 2, |i, j| {
        if i == j {
            u.scale(&Scalar::from_int((i + 1) as i64))
        } else if i == 0 && j == 3 {
            apb.clone()
        } else if i == 3 && j == 0 {
            -&apb
        } else if i == 0 {
            alpha.clone()
        } else if j == 0 {
            -&alpha
        } else if i == 1 && (j == 2 || j == 3) {
            alpha.clone()
        } else if (i == 2 || i == 3) && j == 1 {
            -&alpha
        } else {
            zero.clone()
        }
    });
    let b = Matrix::from_blocks(n, 2, |i, j| if i == j { u.clone() } else { zero.clone() });
    let h = &a * &a;
    let k = &(&a * &b) + &(&b * &a);
    FamilyPair { a, b, h, k }
}

/// The classical 8 x 8 integer counterexample pair.
pub fn laffey_pair() -> (Matrix, Matrix) {
    let h = Matrix::from_i64_rows(&[
        [-122, 0, 12, 18, -30, 18, 26, 10],
        [0, -122, -6, -12, -16, -28, 20, -16],
        [12, -6, -218, 0, 44, 8, 24, 12],
        [18, -12, 0, -218, -2, -34, -10, 22],
        [-30, -16, 44, -2, -216, 0, -12, -8],
        [18, -28, 8, -34, 0, -216, -8, 36],
        [26, 20, 24, -10, -12, -8, -120, 0],
        [10, -16, 12, 22, -8, 36, 0, -120],
    ]);
    let k = Matrix::diagonal_i64(&[-4, -4, 4, 4, -8, -8, 8, 8]);
    (h, k)
}

/// An exact evaluation of the pencil at one rational point, with the
/// square-free shape of its characteristic polynomial.
#[derive(Clone, Debug)]
pub struct PencilSample {
    pub x0: Scalar,
    pub y0: Scalar,
    pub char_poly: UniPoly,
    pub squarefree: SquareFreeFactorization,
    pub all_even: bool,
}

/// Characteristic polynomial of `x0 h + y0 k` with its square-free
/// decomposition and multiplicity parity.
pub fn sample_pencil(h: &Matrix, k: &Matrix, x0: &Scalar, y0: &Scalar) -> Result<PencilSample> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if h.rows() != k.rows() || h.cols() != k.cols() {
        return Err(Error::SizeMismatch);
    }
    if !h.rows().is_multiple_of(2) {
        return Err(Error::OddSize(h.rows()));
    }
    let pencil = &h.scale(x0) + &k.scale(y0);
    let cp = char_poly(&pencil)?;
    let squarefree = square_free(&cp)?;
    let all_even = squarefree.all_multiplicities_even();
    Ok(PencilSample {
        x0: x0.clone(),
        y0: y0.clone(),
        char_poly: cp,
        squarefree,
        all_even,
    })
}

/// Evaluates the pencil on every grid point. With the `parallel` feature
/// the points are processed by a rayon data-parallel map; the result order
/// is the grid order either way.
pub fn pencil_grid_samples(
    h: &Matrix,
    k: &Matrix,
    grid: &[(Scalar, Scalar)],
) -> Result<Vec<PencilSample>> {
    #[cfg(feature = "parallel")]
    {
        grid.par_iter()
            .map(|(x0, y0)| sample_pencil(h, k, x0, y0))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pencil_grid_samples_seq(h, k, grid)
    }
}

/// Sequential reference path for the grid evaluation; always available and
/// byte-identical to the parallel result.
pub fn pencil_grid_samples_seq(
    h: &Matrix,
    k: &Matrix,
    grid: &[(Scalar, Scalar)],
) -> Result<Vec<PencilSample>> {
    grid.iter()
        .map(|(x0, y0)| sample_pencil(h, k, x0, y0))
        .collect()
}

/// True iff the characteristic polynomial of `x0 h + y0 k` is a perfect
/// square at every sample point.
pub fn verify_even_multiplicity(
    h: &Matrix,
    k: &Matrix,
    samples: &[(Scalar, Scalar)],
) -> Result<bool> {
    if samples.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let samples = pencil_grid_samples(h, k, samples)?;
    for s in &samples {
        if !is_perfect_square(&s.char_poly)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All integer points `(x0, y0)` with both coordinates in `lo..=hi`.
pub fn integer_grid(lo: i64, hi: i64) -> Vec<(Scalar, Scalar)> {
    let mut grid = Vec::new();
    for x in lo..=hi {
        for y in lo..=hi {
            grid.push((Scalar::from_int(x), Scalar::from_int(y)));
        }
    }
    grid
}

/// `(a x0 + b y0)^2 == h x0^2 + k x0 y0 - I y0^2`, exactly.
pub fn pencil_identity_holds(pair: &FamilyPair, x0: &Scalar, y0: &Scalar) -> bool {
    let lhs_base = &pair.a.scale(x0) + &pair.b.scale(y0);
    let lhs = &lhs_base * &lhs_base;
    let size = pair.h.rows();
    let rhs = &(&pair.h.scale(&(x0 * x0)) + &pair.k.scale(&(x0 * y0)))
        - &Matrix::identity(size).scale(&(y0 * y0));
    lhs == rhs
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

fn mat2(e00: Scalar, e01: Scalar, e10: Scalar, e11: Scalar) -> Matrix {
    Matrix::new(2, 2, vec![e00, e01, e10, e11])
}

/// Exhaustive exact checks of the block structure of a built family pair:
/// skew symmetry, the diagonal form of `k`, the closed forms of the
/// top-row blocks of `h` and their determinants, and the commutator that
/// seeds the two-generator criterion.
pub fn structural_checks(params: &FamilyParams, pair: &FamilyPair) -> bool {
    let n = params.n;
    let b = &params.b;
    let size = 2 * n;
    let i2 = Matrix::identity(2);
    let one = Scalar::one();

    if !block_identities_hold(b) {
        return false;
    }
    if pair.a.transpose() != -&pair.a || pair.b.transpose() != -&pair.b {
        return false;
    }
    if &pair.b * &pair.b != -&Matrix::identity(size) {
        return false;
    }
    if !pair.h.is_hermitian() || !pair.k.is_hermitian() {
        return false;
    }
    if pair.h != &pair.a * &pair.a {
        return false;
    }

    let expected_k = Matrix::from_blocks(n, 2, |i, j| {
        if i == j {
            i2.scale(&Scalar::from_int(-2 * (i as i64 + 1)))
        } else {
            Matrix::zeros(2, 2)
        }
    });
    if pair.k != expected_k {
        return false;
    }

    let block = |i: usize, j: usize| pair.h.p_block(2, i, j).expect("in range");
    let neg = |s: &Scalar| -s;

    // Top-left block: -(b^2 + n) I.
    let scale = -&(&(b * b) + &Scalar::from_int(n as i64));
    if block(0, 0) != i2.scale(&scale) {
        return false;
    }
    // Block (1,2): [[-2, -1+b], [-1-b, -2]] with determinant 3 + b^2.
    let h12 = mat2(
        Scalar::from_int(-2),
        b - &one,
        neg(&(&one + b)),
        Scalar::from_int(-2),
    );
    if block(0, 1) != h12 {
        return false;
    }
    let det = |m: &Matrix| &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0));
    if det(&h12) != &Scalar::from_int(3) + &(b * b) {
        return false;
    }
    // Block (1,3): [[1, -2], [-2, 1]] with determinant -3.
    let h13 = mat2(
        one.clone(),
        Scalar::from_int(-2),
        Scalar::from_int(-2),
        one.clone(),
    );
    if block(0, 2) != h13 || det(&h13) != Scalar::from_int(-3) {
        return false;
    }
    // Block (1,4): [[1+3b, -3], [-3, 1-3b]] with determinant -8 - 9b^2.
    let three_b = &Scalar::from_int(3) * b;
    let h14 = mat2(
        &one + &three_b,
        Scalar::from_int(-3),
        Scalar::from_int(-3),
        &one - &three_b,
    );
    if block(0, 3) != h14 {
        return false;
    }
    let nine_b2 = &Scalar::from_int(9) * &(b * b);
    if det(&h14) != -&(&Scalar::from_int(8) + &nine_b2) {
        return false;
    }
    // Regular structure beyond the fourth block row and column.
    for j in 4..n {
        let off = Scalar::from_int(-(j as i64)); // 1 - (j+1) in one-based labels
        if block(0, j) != mat2(Scalar::zero(), off.clone(), off.clone(), Scalar::zero()) {
            return false;
        }
        if block(j, 0) != block(0, j) {
            return false;
        }
        let jp = (j + 1) as i64;
        if block(j, j) != i2.scale(&Scalar::from_int(-(1 + jp * jp))) {
            return false;
        }
        if block(3, j) != mat2(-&one, b.clone(), neg(b), -&one) {
            return false;
        }
        for i in 4..n {
            if i != j && block(i, j) != -&i2 {
                return false;
            }
        }
    }
    // The product of the third top block with its transpose, and the
    // commutator that witnesses non-commutativity.
    let h31 = block(2, 0);
    let product = &h13 * &h31;
    if product
        != mat2(
            Scalar::from_int(5),
            Scalar::from_int(-4),
            Scalar::from_int(-4),
            Scalar::from_int(5),
        )
    {
        return false;
    }
    let other = &block(0, 3) * &block(3, 0);
    let forty_eight_b = &Scalar::from_int(48) * b;
    let expected = mat2(
        Scalar::zero(),
        forty_eight_b.clone(),
        -&forty_eight_b,
        Scalar::zero(),
    );
    commutator(&product, &other) == expected
}

/// One grid point in the report.
#[derive(Serialize)]
pub struct GridEntryJson {
    pub x0: String,
    pub y0: String,
    pub all_even: bool,
}

#[derive(Serialize)]
pub struct EvenMultiplicityJson {
    pub grid: Vec<GridEntryJson>,
    pub all_even: bool,
}

/// Wire form of the verification report.
#[derive(Serialize)]
pub struct ReportJson {
    pub structural: bool,
    pub even_multiplicity: EvenMultiplicityJson,
    pub criteria: VerdictJson,
    pub oracle_dimension: usize,
    pub pass: bool,
}

/// Full verification outcome for one `(n, b)` instance.
#[derive(Debug)]
pub struct CounterexampleReport {
    pub structural: bool,
    pub samples: Vec<PencilSample>,
    pub all_even: bool,
    pub criteria: CriteriaVerdict,
    pub oracle_dimension: usize,
    pub pass: bool,
}

impl CounterexampleReport {
    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            structural: self.structural,
            even_multiplicity: EvenMultiplicityJson {
                grid: self
                    .samples
                    .iter()
                    .map(|s| GridEntryJson {
                        x0: s.x0.to_string(),
                        y0: s.y0.to_string(),
                        all_even: s.all_even,
                    })
                    .collect(),
                all_even: self.all_even,
            },
            criteria: self.criteria.to_json(),
            oracle_dimension: self.oracle_dimension,
            pass: self.pass,
        }
    }
}

/// Builds the family for `params` and verifies the counterexample claims:
/// structural block identities together with the pencil identity on the
/// grid, perfect-square characteristic polynomials at every grid point,
/// a PASS from the two-generator criterion, and full oracle dimension.
pub fn verify_counterexample(
    params: &FamilyParams,
    grid: &[(Scalar, Scalar)],
    max_word_len: usize,
) -> Result<CounterexampleReport> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let pair = build_family(params);
    let mut structural = structural_checks(params, &pair);
    if structural {
        structural = grid
            .iter()
            .all(|(x0, y0)| pencil_identity_holds(&pair, x0, y0));
    }
    let samples = pencil_grid_samples(&pair.h, &pair.k, grid)?;
    let mut all_even = true;
    for s in &samples {
        if !is_perfect_square(&s.char_poly)? {
            all_even = false;
        }
    }
    let criteria = check_thm_2gens(&pair.h, &pair.k, max_word_len)?;
    let size = 2 * params.n;
    let oracle_dimension = algebra_dimension(&[pair.h.clone(), pair.k.clone()], true)?;
    let pass = structural
        && all_even
        && criteria.status == CriterionStatus::Pass
        && oracle_dimension == size * size;
    Ok(CounterexampleReport {
        structural,
        samples,
        all_even,
        criteria,
        oracle_dimension,
        pass,
    })
}
