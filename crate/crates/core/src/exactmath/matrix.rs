//! Exact rational matrices and fraction-free characteristic polynomials.

use super::poly::UniPoly;
use super::rat::Rat;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::parallel;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let entries = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        RatMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rat::zero())
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

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = parallel::map_indexed(self.rows, 16, |i| {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if !a.is_zero() {
                        acc += a * other.entry(k, j);
                    }
                }
                row.push(acc);
            }
            row
        });
        Ok(RatMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if !a.is_zero() {
                        acc += a * &v[k];
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = RatMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.entry(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Exact determinant by fraction-free elimination on the cleared
    /// integer matrix.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let scale = self.denominator_lcm();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = self.entry(i, j);
                        e.numer() * (&scale / e.denom())
                    })
                    .collect()
            })
            .collect();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det_scaled = Rat::from_integer(a[n - 1][n - 1].clone() * BigInt::from(sign));
        Ok(det_scaled / Rat::from_integer(scale.pow(n as u32)))
    }

    /// Evaluate a polynomial at this matrix.
    pub fn poly_eval(&self, p: &UniPoly) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut acc = RatMatrix::zero(n, n);
        // Horner
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = acc.entry(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    fn denominator_lcm(&self) -> BigInt {
        let mut scale = BigInt::one();
        for e in &self.entries {
            let d = e.denom();
            let g = scale.gcd(d);
            scale = scale / g * d;
        }
        scale
    }
}

/// Monic characteristic polynomial `det(xI − M)`, computed exactly by
/// fraction-free (Bareiss) elimination over the polynomial ring.
pub fn charpoly(m: &RatMatrix) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    // Clear denominators: det(DxI − DM) = D^n · det(xI − M).
    let scale = m.denominator_lcm();
    let mut a: Vec<Vec<ZPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = m.entry(i, j);
                    let c0 = -(e.numer() * (&scale / e.denom()));
                    if i == j {
                        ZPoly::new(vec![c0, scale.clone()])
                    } else {
                        ZPoly::new(vec![c0])
                    }
                })
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = ZPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(UniPoly::zero()),
            }
        }
        let pivot_row = a[k].clone();
        let pivot = pivot_row[k].clone();
        let prev_div = prev.clone();
        let below: Vec<Vec<ZPoly>> = a[k + 1..].to_vec();
        let updated = parallel::map_slice(&below, 4, |row| {
            let lead = &row[k];
            let mut out = row.clone();
            for j in k + 1..n {
                let num = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                out[j] = num
                    .exact_div(&prev_div)
                    .expect("Bareiss elimination divides exactly");
            }
            out[k] = ZPoly::zero();
            out
        });
        for (i, row) in updated.into_iter().enumerate() {
            a[k + 1 + i] = row;
        }
        prev = pivot;
    }
    let det = if negate {
        a[n - 1][n - 1].neg()
    } else {
        a[n - 1][n - 1].clone()
    };
    // Divide by D^n; the result is monic by construction.
    let denom = Rat::from_integer(scale.pow(n as u32));
    let chi = UniPoly::from_zpoly(&det).mul_scalar(&(Rat::one() / denom));
    debug_assert!(chi.is_monic());
    Ok(chi)
}

/// `[(M^0)₁₁, (M^1)₁₁, …, (M^n_max)₁₁]` by iterated exact multiplication.
pub fn power_entry_sequence(m: &RatMatrix, n_max: usize) -> Result<Vec<Rat>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let mut v = vec![Rat::zero(); n];
    v[0] = Rat::one();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(v[0].clone());
    for _ in 0..n_max {
        v = m.mul_vec(&v)?;
        out.push(v[0].clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn charpoly_identity_2x2() {
        let m = RatMatrix::identity(2);
        assert_eq!(charpoly(&m).unwrap(), UniPoly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn charpoly_rational_entries() {
        // [[1/2, 1], [0, 1/3]]: eigenvalues 1/2, 1/3.
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(1, 3)],
        ])
        .unwrap();
        let chi = charpoly(&m).unwrap();
        let expected = UniPoly::new(vec![rat(1, 6), rat(-5, 6), rat(1, 1)]);
        assert_eq!(chi, expected);
    }

    #[test]
    fn charpoly_needs_pivoting() {
        // Diagonal starts at 0 and elimination hits a zero pivot.
        let m = RatMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(charpoly(&m).unwrap(), UniPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn det_and_pow() {
        let m = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), rat(-2, 1));
        let sq = m.pow(2).unwrap();
        assert_eq!(sq, RatMatrix::from_int_rows(&[&[7, 10], &[15, 22]]));
        assert!(RatMatrix::identity(3).is_identity());
    }

    #[test]
    fn power_entries_1x1() {
        let m = RatMatrix::from_int_rows(&[&[2]]);
        let seq = power_entry_sequence(&m, 3).unwrap();
        assert_eq!(seq, vec![rat(1, 1), rat(2, 1), rat(4, 1), rat(8, 1)]);
    }

    #[test]
    fn non_square_rejected() {
        let m = RatMatrix::zero(2, 3);
        assert!(matches!(charpoly(&m), Err(Error::NonSquare { .. })));
        assert!(matches!(m.det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn cayley_hamilton_small() {
        let m = RatMatrix::from_int_rows(&[&[2, 1, 0], &[-1, 3, 2], &[0, 5, -2]]);
        let chi = charpoly(&m).unwrap();
        let z = m.poly_eval(&chi).unwrap();
        assert_eq!(z, RatMatrix::zero(3, 3));
    }
}
