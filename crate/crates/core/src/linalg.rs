//! Dense exact linear algebra over the rationals.
//!
//! Scalars are arbitrary-precision rationals ([`Rat`], backed by
//! `num-rational`, so values are always reduced with a positive denominator
//! and equality is exact). Matrices are dense and row-major. Row reduction
//! follows one fixed, deterministic pivot rule — leftmost nonzero column,
//! first nonzero row — so every caller sees identical output for identical
//! input, regardless of thread count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par;

/// Exact rational scalar: arbitrary-precision, auto-reduced, positive
/// denominator.
pub type Rat = num_rational::BigRational;

/// The rational `v/1`.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// The rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(num.into(), den.into())
}

/// Scales a rational row to a primitive integer vector (clear denominators,
/// divide by the content). Scaling is by a positive rational, so signs and
/// the reduced form are preserved. `None` for an all-zero row.
fn primitive_int_row(row: &[Rat]) -> Option<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    let mut any = false;
    for x in row {
        if !x.is_zero() {
            any = true;
            lcm = lcm.lcm(x.denom());
        }
    }
    if !any {
        return None;
    }
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    normalize_content(&mut ints);
    Some(ints)
}

/// Divides a row by the gcd of its entries when it exceeds one.
fn normalize_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// One division-free elimination: `row <- (p * row - f * piv) / content`,
/// where `p = piv[col]` and `f = row[col]`. The pivot row is zero left of
/// `col`, so entries there are only rescaled.
fn eliminate_int(row: &mut [BigInt], piv: &[BigInt], col: usize) {
    let p = &piv[col];
    let f = std::mem::replace(&mut row[col], BigInt::zero());
    if p.is_one() {
        for j in col + 1..row.len() {
            let pj = &piv[j];
            if !pj.is_zero() {
                row[j] -= pj * &f;
            }
        }
    } else {
        for x in row[..col].iter_mut() {
            if !x.is_zero() {
                *x *= p;
            }
        }
        for j in col + 1..row.len() {
            let pj = &piv[j];
            if pj.is_zero() {
                if !row[j].is_zero() {
                    row[j] *= p;
                }
            } else {
                row[j] = &row[j] * p - pj * &f;
            }
        }
    }
    normalize_content(row);
}

/// Result of a reduced row-echelon computation.
#[derive(Debug, Clone)]
pub struct Rref {
    /// The fully reduced matrix (pivot entries 1, pivot columns cleared).
    pub reduced: RatMatrix,
    /// Number of pivots.
    pub rank: usize,
    /// Pivot column indices, strictly increasing, one per pivot row.
    pub pivots: Vec<usize>,
}

/// Dense row-major matrix of [`Rat`] entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Dimension(format!(
                "ragged rows: expected {c} columns, found {}",
                bad.len()
            )));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows (convenience for tests and
    /// generator tables).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(rat_int).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    /// Borrow row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copy of column `j`.
    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    /// Matrix sum; shapes must match.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix difference; shapes must match.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        let neg = RatMatrix {
            rows: other.rows,
            cols: other.cols,
            data: other.data.iter().map(|x| -x).collect(),
        };
        self.add(&neg)
    }

    /// Matrix product; inner dimensions must agree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let rows_out = par::map_indexed(n, k * m, |i| {
            let mut row = vec![Rat::zero(); m];
            for t in 0..k {
                let a = self.at(i, t);
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in row.iter_mut().enumerate() {
                    let b = other.at(t, j);
                    if !b.is_zero() {
                        *slot += a * b;
                    }
                }
            }
            row
        });
        Ok(RatMatrix {
            rows: n,
            cols: m,
            data: rows_out.into_iter().flatten().collect(),
        })
    }

    /// Kronecker product. Row `ia` of `self` and row `ib` of `other` land in
    /// row `ia * other.rows() + ib` (same convention for columns), i.e.
    /// `kron(A,B)[ia*rb+ib][ja*cb+jb] = A[ia][ja] * B[ib][jb]`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let rows_out = par::map_indexed(ra * rb, ca * cb, |r| {
            let (ia, ib) = (r / rb, r % rb);
            let mut row = vec![Rat::zero(); ca * cb];
            for ja in 0..ca {
                let a = self.at(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for jb in 0..cb {
                    let b = other.at(ib, jb);
                    if !b.is_zero() {
                        row[ja * cb + jb] = a * b;
                    }
                }
            }
            row
        });
        RatMatrix {
            rows: ra * rb,
            cols: ca * cb,
            data: rows_out.into_iter().flatten().collect(),
        }
    }

    /// Stacks matrices vertically. All operands must have the same column
    /// count.
    pub fn stack_rows(parts: &[RatMatrix]) -> Result<RatMatrix> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if let Some(bad) = parts.iter().find(|m| m.cols != cols) {
            return Err(Error::Dimension(format!(
                "stack_rows: expected {cols} columns, found {}",
                bad.cols
            )));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            data.extend_from_slice(&m.data);
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Glues `other` to the right of `self`; row counts must agree.
    pub fn augment(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "augment: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Reduced row-echelon form with the fixed pivot rule: scan columns left
    /// to right, take the first not-yet-used row with a nonzero entry in the
    /// current column. The reduced form is canonical, so the output is
    /// deterministic for identical input, whatever the thread count.
    ///
    /// Internally every row is scaled to a primitive integer vector (row
    /// scaling never changes the reduced form) and the elimination is
    /// division-free with rows renormalized by their content. This sidesteps
    /// the coefficient explosion — and the gcd per arithmetic op — that
    /// naive fraction arithmetic pays on large matrices.
    pub fn rref(&self) -> Rref {
        let cols = self.cols;
        // Zero rows contribute nothing; they reappear at the bottom of the
        // emitted matrix.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .filter_map(|i| primitive_int_row(self.row(i)))
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        for col in 0..cols {
            let frontier = pivots.len();
            if frontier == m.len() {
                break;
            }
            // First row at or below the frontier with a nonzero entry here.
            let Some(found) = (frontier..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(frontier, found);
            let (upper, below) = m.split_at_mut(frontier + 1);
            let pivot_row = &upper[frontier];
            // Rows are updated independently, so this is safe to fan out.
            par::for_each_mut(below, cols - col, |row| {
                if !row[col].is_zero() {
                    eliminate_int(row, pivot_row, col);
                }
            });
            pivots.push(col);
        }
        let rank = pivots.len();
        // Every row below the frontier had a zero in each scanned column.
        m.truncate(rank);
        // Upward pass: clear the pivot columns above each pivot row.
        for k in (0..rank).rev() {
            let col = pivots[k];
            let (upper, lower) = m.split_at_mut(k);
            let pivot_row = &lower[0];
            par::for_each_mut(upper, cols - col, |row| {
                if !row[col].is_zero() {
                    eliminate_int(row, pivot_row, col);
                }
            });
        }
        // Emit the canonical rational form: each pivot row divided by its
        // pivot entry, zero rows restored at the bottom.
        let mut data = Vec::with_capacity(self.rows * cols);
        for (k, row) in m.iter().enumerate() {
            let p = &row[pivots[k]];
            for x in row {
                data.push(if x.is_zero() {
                    Rat::zero()
                } else {
                    Rat::new(x.clone(), p.clone())
                });
            }
        }
        data.resize(self.rows * cols, Rat::zero());
        let reduced = RatMatrix {
            rows: self.rows,
            cols,
            data,
        };
        Rref {
            reduced,
            rank,
            pivots,
        }
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel in the standard parametrization: one vector
    /// per free column, carrying `1` in its own slot and the negated reduced
    /// entries in the pivot slots. Vectors are ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                let entry = reduced.at(row, free);
                if !entry.is_zero() {
                    v[p] = -entry;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * X = rhs` for all columns of `rhs` at once. Returns
    /// `None` if any column is inconsistent; free variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        let aug = self.augment(rhs).ok()?;
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        // A pivot inside the right block certifies inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RatMatrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, reduced.at(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Self::identity(self.rows))?;
        // solve() returns None only on inconsistency; a rank-deficient square
        // system is consistent for some right-hand sides, so confirm.
        if self.rank() < self.rows {
            return None;
        }
        Some(sol)
    }

    /// True if `self` and `other` span the same row space.
    pub fn same_row_space(&self, other: &Self) -> Result<bool> {
        let ra = self.rank();
        let rb = other.rank();
        if ra != rb {
            return Ok(false);
        }
        let both = Self::stack_rows(&[self.clone(), other.clone()])?;
        Ok(both.rank() == ra)
    }

    /// Scales every entry by `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }
}

impl std::fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Returns true when `v` is an integer multiple (by a nonzero rational) of
/// `w`, i.e. the two vectors are proportional and nonzero.
pub fn proportional(v: &[Rat], w: &[Rat]) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if w[k].is_zero() {
        return false;
    }
    let c = &v[k] / &w[k];
    if c.is_zero() {
        return false;
    }
    v.iter().zip(w).all(|(a, b)| *a == b * &c)
}

/// Absolute value, handy when normalizing test output.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn rref_rank_one_example() {
        let r = m(&[vec![1, 2], vec![2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced.row(0), &[rat_int(1), rat_int(2)]);
        assert!(r.reduced.row(1).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_of_sum_functional() {
        let k = m(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat_int(-1), rat_int(1)]]);
    }

    #[test]
    fn kernel_standard_parametrization_has_unit_free_slots() {
        let a = m(&[vec![1, 0, 2, -1], vec![0, 1, -3, 2]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        // Free columns are 2 and 3.
        assert_eq!(k[0][2], rat_int(1));
        assert_eq!(k[0][3], rat_int(0));
        assert_eq!(k[1][2], rat_int(0));
        assert_eq!(k[1][3], rat_int(1));
        // Every kernel vector is actually annihilated.
        for v in &k {
            for i in 0..a.rows() {
                let dot: Rat = a.row(i).iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(&[vec![2, 4, 1], vec![1, 2, 3], vec![3, 6, 4]]);
        let once = a.rref();
        let twice = once.reduced.rref();
        assert_eq!(once.reduced, twice.reduced);
        assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn kronecker_index_convention() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let b = m(&[vec![0, 5], vec![6, 7]]);
        let k = a.kronecker(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.cols(), 4);
        // Entry (ia*2+ib, ja*2+jb) = a[ia][ja] * b[ib][jb].
        for ia in 0..2 {
            for ib in 0..2 {
                for ja in 0..2 {
                    for jb in 0..2 {
                        assert_eq!(
                            k.at(ia * 2 + ib, ja * 2 + jb),
                            &(a.at(ia, ja) * b.at(ib, jb)),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_respects_composition() {
        // (A⊗B)(C⊗D) = (AC)⊗(BD), a strong consistency check on the layout.
        let a = m(&[vec![1, 2], vec![0, 1]]);
        let b = m(&[vec![2, 0], vec![1, 1]]);
        let c = m(&[vec![1, 1], vec![1, 0]]);
        let d = m(&[vec![0, 1], vec![1, 1]]);
        let lhs = a.kronecker(&b).mul(&c.kronecker(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kronecker(&b.mul(&d).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn stack_rows_dimension_error() {
        let err = RatMatrix::stack_rows(&[m(&[vec![1, 2]]), m(&[vec![1]])]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn rank_plus_nullity_is_column_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let a = RatMatrix::from_int_rows(
                &(0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(a.rank() + a.kernel_basis().len(), cols);
        }
    }

    #[test]
    fn rank_is_invariant_under_row_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let rows = rng.gen_range(2..=6);
            let cols = rng.gen_range(1..=6);
            let source: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            let a = RatMatrix::from_int_rows(&source).unwrap();
            let mut shuffled = source.clone();
            for i in (1..shuffled.len()).rev() {
                let j = rng.gen_range(0..=i);
                shuffled.swap(i, j);
            }
            let b = RatMatrix::from_int_rows(&shuffled).unwrap();
            assert_eq!(a.rank(), b.rank());
            assert!(a.same_row_space(&b).unwrap());
        }
    }

    #[test]
    fn solve_and_inverse_round_trip() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        let rhs = m(&[vec![3], vec![2]]);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul(&x).unwrap(), rhs);
        // Singular matrix has no inverse and detects inconsistency.
        let s = m(&[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.solve(&m(&[vec![0], vec![1]])).is_none());
    }

    #[test]
    fn proportional_detects_scalings() {
        assert!(proportional(
            &[rat_int(2), rat_int(-4)],
            &[rat_int(-1), rat_int(2)]
        ));
        assert!(!proportional(
            &[rat_int(2), rat_int(-4)],
            &[rat_int(-1), rat_int(3)]
        ));
        assert!(!proportional(&[rat_int(0)], &[rat_int(0)]));
    }
}
