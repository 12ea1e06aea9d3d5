//! Seifert matrices and their symmetrized forms.
//!
//! The rational Witt class of a knot is the class of Q = V + Vᵀ. It is read
//! off by Gram–Schmidt elimination that visits the basis strictly in input
//! order. A zero pivot splits off a hyperbolic plane spanned by the pivot
//! vector and its lowest-index partner; the plane is zero in W(ℚ) and
//! contributes no entries.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::witt::DiagonalForm;

fn check_square<T>(rows: &[Vec<T>]) -> Result<usize> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Ragged {
                expected: n,
                row: i,
                found: row.len(),
            });
        }
    }
    Ok(n)
}

/// Fraction-free determinant of an integer matrix.
pub(crate) fn bareiss_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return sign;
    }
    sign * &m[n - 1][n - 1]
}

/// Integer Seifert matrix V of even size 2g.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl SeifertMatrix {
    /// The 0×0 matrix of the unknot's disk.
    pub fn empty() -> Self {
        SeifertMatrix {
            dim: 0,
            data: Vec::new(),
        }
    }

    /// Square and even-dimensional; `det(V − Vᵀ) ≠ 1` only logs a warning.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = check_square(&rows)?;
        if dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        let v = SeifertMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        };
        if !v.is_unimodular() {
            log::warn!(
                "det(V - V^T) = {} for a {dim}x{dim} Seifert matrix",
                v.skew_determinant()
            );
        }
        Ok(v)
    }

    /// As [`from_rows`](Self::from_rows), rejecting `det(V − Vᵀ) ≠ 1`.
    pub fn from_rows_strict(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = check_square(&rows)?;
        if dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        let v = SeifertMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        };
        let skew = v.skew_determinant();
        if !skew.is_one() {
            return Err(Error::NotUnimodular(skew));
        }
        Ok(v)
    }

    /// The lower-triangular V with V + Vᵀ equal to the given symmetric
    /// matrix, which must have an even diagonal.
    pub fn from_symmetrized(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = check_square(&rows)?;
        if dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
            if rows[i][i] % 2 != 0 {
                return Err(Error::OddDiagonal(i));
            }
            data[i * dim + i] = rows[i][i] / 2;
            for j in 0..i {
                data[i * dim + j] = rows[i][j];
            }
        }
        Ok(SeifertMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension.
    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).take(self.dim).map(<[i64]>::to_vec).collect()
    }

    fn combined(&self, sign: i64) -> Vec<Vec<BigInt>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| BigInt::from(self.get(i, j) + sign * self.get(j, i)))
                    .collect()
            })
            .collect()
    }

    /// det(V − Vᵀ).
    pub fn skew_determinant(&self) -> BigInt {
        bareiss_determinant(&self.combined(-1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.skew_determinant().is_one()
    }

    /// Integer entries of V + Vᵀ.
    pub fn symmetrized_rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) + self.get(j, i)).collect())
            .collect()
    }

    /// det(V + Vᵀ), sign included.
    pub fn signed_determinant(&self) -> BigInt {
        bareiss_determinant(&self.combined(1))
    }

    /// Q = V + Vᵀ; fails when Q is degenerate.
    pub fn symmetrize(&self) -> Result<SymmetricRationalMatrix> {
        if self.signed_determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(SymmetricRationalMatrix::from_integer_rows_unchecked(
            &self.symmetrized_rows(),
        ))
    }

    /// φ(K): the in-order diagonalization of V + Vᵀ.
    pub fn rational_witt_class(&self) -> Result<DiagonalForm> {
        gram_schmidt_diagonalize(&self.symmetrize()?)
    }

    /// σ(K), the signature of V + Vᵀ.
    pub fn signature(&self) -> Result<i64> {
        Ok(self.rational_witt_class()?.signature())
    }

    /// det K = |det(V + Vᵀ)|.
    pub fn determinant(&self) -> Result<BigInt> {
        let det = self.signed_determinant();
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(det.abs())
    }

    /// −V, a Seifert matrix of the mirror image.
    pub fn mirror(&self) -> SeifertMatrix {
        SeifertMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// V ⊕ [[0, 1], [0, 0]]; the symmetrization gains a hyperbolic plane.
    pub fn stabilize(&self) -> SeifertMatrix {
        let n = self.dim + 2;
        let mut data = vec![0; n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                data[i * n + j] = self.get(i, j);
            }
        }
        data[self.dim * n + self.dim + 1] = 1;
        SeifertMatrix { dim: n, data }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows())
    }
}

fn write_rows<T: fmt::Display>(f: &mut fmt::Formatter<'_>, rows: &[Vec<T>]) -> fmt::Result {
    write!(f, "[")?;
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for (j, a) in row.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// A symmetric matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricRationalMatrix {
    dim: usize,
    data: Vec<BigRational>,
}

impl SymmetricRationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = check_square(&rows)?;
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymmetricRationalMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&a| BigRational::from_integer(a.into())).collect())
                .collect(),
        )
    }

    fn from_integer_rows_unchecked(rows: &[Vec<i64>]) -> Self {
        SymmetricRationalMatrix {
            dim: rows.len(),
            data: rows
                .iter()
                .flatten()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Entries as integers, when they all are.
    pub fn integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let a = self.get(i, j);
                        a.is_integer().then(|| a.to_integer())
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> BigRational {
        let n = self.dim;
        let mut m = self.rows();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != k {
                m.swap(k, pivot);
                det = -det;
            }
            let p = m[k][k].clone();
            det *= &p;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = &m[i][k] / &p;
                for j in k..n {
                    let delta = &factor * &m[k][j];
                    m[i][j] -= delta;
                }
            }
        }
        det
    }

    /// Pᵀ Q P for a square integer matrix P of the same size.
    pub fn congruent(&self, p: &[Vec<i64>]) -> Result<Self> {
        let n = check_square(p)?;
        if n != self.dim {
            return Err(Error::Ragged {
                expected: self.dim,
                row: 0,
                found: n,
            });
        }
        let p: Vec<Vec<BigRational>> = p
            .iter()
            .map(|row| row.iter().map(|&a| BigRational::from_integer(a.into())).collect())
            .collect();
        let mut qp = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    qp[i][j] += self.get(i, k) * &p[k][j];
                }
            }
        }
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] += &p[k][i] * &qp[k][j];
                }
            }
        }
        Self::new(out)
    }

    /// In-order diagonalization, reporting hyperbolic splits.
    pub fn diagonalize(&self) -> Result<Diagonalization> {
        let n = self.dim;
        let mut m = self.rows();
        let mut active: Vec<usize> = (0..n).collect();
        let mut entries = Vec::with_capacity(n);
        let mut hyperbolic_splits = 0;
        while let Some(&i) = active.first() {
            let pivot = m[i][i].clone();
            if !pivot.is_zero() {
                active.remove(0);
                for &r in &active {
                    if m[r][i].is_zero() {
                        continue;
                    }
                    let factor = &m[r][i] / &pivot;
                    for &c in &active {
                        let delta = &factor * &m[i][c];
                        m[r][c] -= delta;
                    }
                }
                entries.push(pivot);
                continue;
            }
            let Some(pos) = active[1..].iter().position(|&j| !m[i][j].is_zero()) else {
                return Err(Error::Degenerate);
            };
            let j = active.remove(pos + 1);
            active.remove(0);
            // [[0, b], [b, c]]⁻¹ = −1/b² · [[c, −b], [−b, 0]]
            let b = m[i][j].clone();
            let c = m[j][j].clone();
            let scale = -(&b * &b).recip();
            for &r in &active {
                let (ri, rj) = (m[r][i].clone(), m[r][j].clone());
                if ri.is_zero() && rj.is_zero() {
                    continue;
                }
                let left_i = &scale * (&ri * &c - &rj * &b);
                let left_j = &scale * (-(&ri * &b));
                for &col in &active {
                    let delta = &left_i * &m[i][col] + &left_j * &m[j][col];
                    m[r][col] -= delta;
                }
            }
            hyperbolic_splits += 1;
        }
        Ok(Diagonalization {
            form: DiagonalForm::new(entries).expect("pivots are nonzero"),
            hyperbolic_splits,
        })
    }

    pub fn signature(&self) -> Result<i64> {
        Ok(self.diagonalize()?.form.signature())
    }
}

impl fmt::Display for SymmetricRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows())
    }
}

/// A diagonal form congruent to Q, up to removed hyperbolic planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub form: DiagonalForm,
    pub hyperbolic_splits: usize,
}

/// The in-order diagonal form of `q`.
pub fn gram_schmidt_diagonalize(q: &SymmetricRationalMatrix) -> Result<DiagonalForm> {
    Ok(q.diagonalize()?.form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::ratio;

    fn q(rows: &[&[i64]]) -> SymmetricRationalMatrix {
        SymmetricRationalMatrix::from_integer_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn symmetrize_small() {
        let v = SeifertMatrix::from_rows(vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(v.symmetrized_rows(), vec![vec![0, 1], vec![1, 0]]);
        let e = SeifertMatrix::empty();
        assert_eq!(e.symmetrize().unwrap().dim(), 0);
        assert_eq!(e.rational_witt_class().unwrap(), DiagonalForm::zero());
        assert_eq!(e.signature().unwrap(), 0);
        assert_eq!(e.determinant().unwrap(), BigInt::one());
        assert!(e.is_unimodular());
    }

    #[test]
    fn hyperbolic_plane_vanishes() {
        let d = q(&[&[0, 1], &[1, 0]]).diagonalize().unwrap();
        assert!(d.form.is_empty());
        assert_eq!(d.hyperbolic_splits, 1);
    }

    #[test]
    fn split_in_the_middle() {
        // zero pivot at index 1 with partner 2; a trailing vector survives
        let m = q(&[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 3, 1], &[0, 0, 1, 2]]);
        let d = m.diagonalize().unwrap();
        assert_eq!(d.hyperbolic_splits, 1);
        assert_eq!(d.form.dim(), 2);
        let expected = m.determinant() * BigRational::from_integer((-1).into());
        let ratio_to_det = d.form.product() / expected;
        let n = ratio_to_det.numer() * ratio_to_det.denom();
        assert!(n.sqrt().pow(2) == n && n > BigInt::zero());
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        assert_eq!(q(&[&[1, 1], &[1, 1]]).diagonalize(), Err(Error::Degenerate));
        assert_eq!(q(&[&[0, 0], &[0, 0]]).diagonalize(), Err(Error::Degenerate));
        let v = SeifertMatrix::from_rows(vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(v.determinant(), Ok(BigInt::from(4)));
        let flat = SeifertMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(flat.symmetrize(), Err(Error::Degenerate));
        assert_eq!(flat.determinant(), Err(Error::Degenerate));
    }

    #[test]
    fn trefoil() {
        let v = SeifertMatrix::from_rows_strict(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(v.signature().unwrap(), -2);
        assert_eq!(v.determinant().unwrap(), BigInt::from(3));
        assert_eq!(
            v.rational_witt_class().unwrap(),
            DiagonalForm::new(vec![ratio(-2, 1), ratio(-3, 2)]).unwrap()
        );
        let m = v.mirror();
        assert_eq!(m.signature().unwrap(), 2);
        assert_eq!(m.mirror(), v);
    }

    #[test]
    fn validation() {
        assert_eq!(
            SeifertMatrix::from_rows(vec![vec![1, 2, 3]; 3]),
            Err(Error::OddDimension(3))
        );
        assert!(matches!(
            SeifertMatrix::from_rows(vec![vec![1, 2], vec![3]]),
            Err(Error::Ragged { row: 1, .. })
        ));
        assert!(matches!(
            SeifertMatrix::from_rows_strict(vec![vec![1, 0], vec![0, 1]]),
            Err(Error::NotUnimodular(_))
        ));
        assert_eq!(
            SeifertMatrix::from_symmetrized(vec![vec![1, 0], vec![0, 2]]),
            Err(Error::OddDiagonal(0))
        );
        assert!(matches!(
            SymmetricRationalMatrix::from_integer_rows(&[vec![1, 2], vec![3, 1]]),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn stabilization_flips_the_determinant_sign() {
        let v = SeifertMatrix::from_rows(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        let s = v.stabilize();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.signed_determinant(), -v.signed_determinant());
        assert!(s.is_unimodular());
        assert!(s
            .rational_witt_class()
            .unwrap()
            .is_equal(&v.rational_witt_class().unwrap()));
        let h = SeifertMatrix::empty().stabilize();
        assert_eq!(h.symmetrized_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn determinants_agree() {
        let m = q(&[&[2, 1, 0], &[1, -3, 4], &[0, 4, 5]]);
        let int_rows: Vec<Vec<BigInt>> = m.integer_rows().unwrap();
        assert_eq!(BigRational::from_integer(bareiss_determinant(&int_rows)), m.determinant());
        assert_eq!(m.determinant(), BigRational::from_integer((-67).into()));
    }
}
