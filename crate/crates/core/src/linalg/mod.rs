//! Dense exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: each row is scaled to integers and reduced
//! with Bareiss' algorithm, so intermediate entries are minors of the input
//! and never need a gcd. Rational arithmetic only appears in the final back
//! substitution. Pivoting always takes the first nonzero entry, which keeps
//! kernels and particular solutions reproducible.

mod unipoly;

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result, Q};

pub use unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

/// Row echelon form over the integers.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Q>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` covers the empty case.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&v| Q::from_integer(v.into())).collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Q>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add_scaled(&self, other: &ExactMatrix, c: &Q) -> Result<ExactMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b * c)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Row `i` scaled by the lcm of its denominators, and that lcm.
    fn integer_row(&self, i: usize) -> (Vec<BigInt>, BigInt) {
        let row = self.row(i);
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints = row.iter().map(|v| v.numer() * (&l / v.denom())).collect();
        (ints, l)
    }

    fn bareiss(&self) -> (Echelon, BigInt) {
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let (r, l) = self.integer_row(i);
                scale *= l;
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in bottom.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                if lead.is_zero() {
                    if !prev.is_one() {
                        for x in row[c + 1..self.cols].iter_mut().filter(|x| !x.is_zero()) {
                            *x = &(pivot * &*x) / &prev;
                        }
                    } else {
                        for x in row[c + 1..self.cols].iter_mut().filter(|x| !x.is_zero()) {
                            *x = pivot * &*x;
                        }
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    let v = pivot * &row[j] - &lead * &pivot_row[j];
                    debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                    row[j] = v / &prev;
                }
            }
            prev = pivot.clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (
            Echelon {
                rows: a,
                pivots,
                swaps,
            },
            scale,
        )
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0.pivots.len()
    }

    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::Usage("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(Q::one());
        }
        let (ech, scale) = self.bareiss();
        if ech.pivots.len() < self.rows {
            return Ok(Q::zero());
        }
        let mut d = ech.rows[self.rows - 1][self.cols - 1].clone();
        if ech.swaps % 2 == 1 {
            d = -d;
        }
        Ok(Q::new(d, scale))
    }

    /// Reduced row echelon form: nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Q>>, Vec<usize>) {
        let (ech, _) = self.bareiss();
        let mut rows: Vec<Vec<Q>> = ech
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(Q::from_integer).collect())
            .collect();
        for i in (0..rows.len()).rev() {
            let pc = ech.pivots[i];
            let inv = rows[i][pc].recip();
            for v in rows[i][pc..].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = std::mem::take(&mut row[pc]);
                if f.is_zero() {
                    continue;
                }
                for j in pc + 1..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
        }
        (rows, ech.pivots)
    }

    /// Basis of the right null space, one vector per free column, with a 1
    /// in that column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = -&row[f];
                }
                v
            })
            .collect()
    }

    /// A particular solution of `M x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Q]) -> Result<Option<Vec<Q>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (rows, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        if !self.is_square() {
            return Err(Error::Usage("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (rows, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(Some(ExactMatrix {
            rows: n,
            cols: n,
            data,
        }))
    }

    pub fn pow(&self, k: u32) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Usage("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Monic polynomial of least degree annihilating the matrix, found as the
    /// first linear dependence among `I, M, M², …`.
    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::Usage("minimal polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UniPoly::new(vec![Q::one()]));
        }
        let mut powers = vec![Self::identity(n).data];
        let mut current = Self::identity(n);
        for k in 1..=n {
            current = current.checked_mul(self)?;
            let basis = Self::from_columns(&powers, n * n)?;
            if let Some(c) = basis.solve(&current.data)? {
                let mut coeffs: Vec<Q> = c.into_iter().map(|v| -v).collect();
                coeffs.push(Q::one());
                return Ok(UniPoly::new(coeffs));
            }
            powers.push(current.data.clone());
            debug_assert!(k < n, "Cayley-Hamilton bounds the degree by n");
        }
        unreachable!("a dependence exists by degree n")
    }

    /// Evaluates a univariate polynomial at the matrix.
    pub fn eval_poly(&self, p: &UniPoly) -> Result<ExactMatrix> {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coefficients().iter().rev() {
            acc = acc.checked_mul(self)?.add_scaled(&Self::identity(n), c)?;
        }
        Ok(acc)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors of a common length.
pub fn rank_of(vectors: &[Vec<Q>], len: usize) -> usize {
    ExactMatrix::from_rows(vectors.to_vec(), len)
        .map(|m| m.rank())
        .unwrap_or(0)
}
