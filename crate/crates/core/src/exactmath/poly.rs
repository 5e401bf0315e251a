//! Dense univariate polynomials over the rationals.

use super::rat::{rat_to_string, Rat};
use super::zpoly::{zpoly_gcd, ZPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Polynomial with rational coefficients, index = power.  The coefficient of
/// the highest power is nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// Build from integer coefficients, index = power.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// The monomial x^k.
    pub fn x_power(k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|l| l.is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
                        + other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn mul_scalar(&self, s: &Rat) -> UniPoly {
        if s.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Quotient and remainder over Q.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.coeffs.clone();
        if self.degree().map_or(true, |d| d < dd) {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let da = self.degree().unwrap();
        let lead = divisor.leading().unwrap();
        let mut quot = vec![Rat::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let q = &rem[k + dd] / lead;
            if q.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let t = c * &q;
                rem[k + i] -= t;
            }
            quot[k] = q;
        }
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Exact division; error when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidInput("polynomial division is not exact".into()))
        }
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = Rat::one() / l;
                self.mul_scalar(&inv)
            }
        }
    }

    /// Monic GCD over Q, computed on the integer primitive parts.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (za, _) = self.to_zpoly();
        let (zb, _) = other.to_zpoly();
        UniPoly::from_zpoly(&zpoly_gcd(&za, &zb)).monic()
    }

    /// The square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(UniPoly::one());
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Clear denominators: returns an integer polynomial `z` and the positive
    /// scale `s` with `z = s·self`.
    pub(crate) fn to_zpoly(&self) -> (ZPoly, BigInt) {
        let mut scale = BigInt::one();
        for c in &self.coeffs {
            let d = c.denom();
            let g = num_integer::Integer::gcd(&scale, d);
            scale = scale / g * d;
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&scale / c.denom()))
            .collect();
        (ZPoly::new(coeffs), scale)
    }

    pub(crate) fn from_zpoly(z: &ZPoly) -> UniPoly {
        UniPoly::new(z.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Coefficients as "p/q" strings, index = power (JSON form).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }

    /// Sparse text form, highest power first: "x^3 - 2*x^2 + 1".
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let coeff_txt = rat_to_string(&mag);
            match k {
                0 => out.push_str(&coeff_txt),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&coeff_txt);
                        out.push('*');
                    }
                    if k == 1 {
                        out.push('x');
                    } else {
                        out.push_str(&format!("x^{k}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn arithmetic_basics() {
        let p = UniPoly::from_ints(&[-1, -1, 1]); // x^2-x-1
        let q = UniPoly::from_ints(&[1, 1]); // x+1
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&rat(2, 1)), rat(1, 1));
        let prod = p.mul(&q);
        assert_eq!(prod, UniPoly::from_ints(&[-1, -2, 0, 1]));
        let (quot, rem) = prod.div_rem(&q).unwrap();
        assert_eq!(quot, p);
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = UniPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        let q = UniPoly::from_ints(&[-1, 0, 1]); // x^2-1
        assert_eq!(p.gcd(&q), UniPoly::from_ints(&[1, 1]));
        let cube = UniPoly::from_ints(&[1, 1]).mul(&p); // (x+1)^3
        assert_eq!(cube.squarefree_part().unwrap(), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(UniPoly::from_ints(&[1, 0, -2, 1]).to_text(), "x^3 - 2*x^2 + 1");
        assert_eq!(UniPoly::from_ints(&[-1, -1, 1]).to_text(), "x^2 - x - 1");
        assert_eq!(UniPoly::zero().to_text(), "0");
        assert_eq!(UniPoly::new(vec![rat(1, 2), rat(-3, 2)]).to_text(), "-3/2*x + 1/2");
    }

    #[test]
    fn zpoly_roundtrip() {
        let p = UniPoly::new(vec![rat(1, 2), rat(-1, 3), rat(1, 1)]);
        let (z, s) = p.to_zpoly();
        assert_eq!(s, 6.into());
        assert_eq!(UniPoly::from_zpoly(&z), p.mul_scalar(&rat(6, 1)));
    }
}
