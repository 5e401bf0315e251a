//! Linear-recurrence checks and generating-function denominators.

use super::poly::UniPoly;
use super::rat::Rat;
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// True iff the sequence satisfies the recursion induced by `chi`:
/// `d_{n+N} = −χ_{N−1}·d_{n+N−1} − … − χ₀·d_n` for every window.
///
/// Requires at least `2·deg(chi)` terms so the check is not vacuous.
pub fn check_recursion(seq: &[Rat], chi: &UniPoly) -> Result<bool> {
    let n = chi.degree().ok_or(Error::ZeroPolynomial)?;
    if seq.len() < 2 * n {
        return Err(Error::InvalidInput(format!(
            "sequence of length {} is too short for degree {n} (need {})",
            seq.len(),
            2 * n
        )));
    }
    if n == 0 {
        return Ok(true);
    }
    let lead = chi.leading().unwrap().clone();
    for window in seq.windows(n + 1) {
        // lead·d_{n+N} + Σ χ_j·d_{n+j} = 0
        let mut acc = &window[n] * &lead;
        for (j, d) in window.iter().enumerate().take(n) {
            acc += chi.coeff(j) * d;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The generating-function denominator `q(x)`: the coefficient reversal of
/// the x-power-free part of `chi`, normalized so `q(0) = 1`.
///
/// When `chi(0) = 0` the maximal power `x^k` is factored out first (a zero
/// eigenvalue of the underlying matrix); the returned count reports `k`.
pub fn generating_denominator(chi: &UniPoly) -> Result<(UniPoly, usize)> {
    if chi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = chi.coeffs();
    let k = coeffs.iter().take_while(|c| c.is_zero()).count();
    let core: Vec<Rat> = coeffs[k..].to_vec();
    let mut reversed: Vec<Rat> = core.iter().rev().cloned().collect();
    let scale = reversed[0].clone(); // leading coefficient of the core
    if !scale.is_one() {
        for c in reversed.iter_mut() {
            *c = &*c / &scale;
        }
    }
    Ok((UniPoly::new(reversed), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn recursion_examples() {
        let chi = UniPoly::from_ints(&[1, 0, -2, 1]); // x^3 - 2x^2 + 1
        assert!(check_recursion(&ints(&[1, 2, 4, 7, 12, 20, 33, 54]), &chi).unwrap());
        assert!(check_recursion(&ints(&[1, 1, 1, 1]), &UniPoly::from_ints(&[-1, 1])).unwrap());
        assert!(!check_recursion(&ints(&[1, 2, 4, 8, 17]), &UniPoly::from_ints(&[-2, 1])).unwrap());
    }

    #[test]
    fn recursion_needs_enough_terms() {
        let chi = UniPoly::from_ints(&[1, 0, -2, 1]);
        assert!(check_recursion(&ints(&[1, 2, 4, 7, 12]), &chi).is_err());
    }

    #[test]
    fn denominator_examples() {
        let (q, k) = generating_denominator(&UniPoly::from_ints(&[-1, -1, 1])).unwrap();
        assert_eq!(q, UniPoly::from_ints(&[1, -1, -1])); // 1 - x - x^2
        assert_eq!(k, 0);

        let (q, k) = generating_denominator(&UniPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, UniPoly::from_ints(&[1, -1]));
        assert_eq!(k, 0);

        let (q, k) = generating_denominator(&UniPoly::from_ints(&[1, 0, -2, 1])).unwrap();
        assert_eq!(q, UniPoly::from_ints(&[1, -2, 0, 1]));
        assert_eq!(k, 0);
    }

    #[test]
    fn zero_eigenvalues_factored() {
        // x^2·(x - 2)
        let chi = UniPoly::from_ints(&[0, 0, -2, 1]);
        let (q, k) = generating_denominator(&chi).unwrap();
        assert_eq!(k, 2);
        assert_eq!(q, UniPoly::from_ints(&[1, -2]).mul_scalar(&rat(-1, 2)).mul_scalar(&rat(-2, 1)));
        // i.e. q = 1 - x/2 scaled so q(0)=1 from core (x-2): reversal [-2,1] -> [1,-2]/1... check directly:
        assert_eq!(q, UniPoly::new(vec![rat(1, 1), rat(-2, 1)]));
    }

    #[test]
    fn double_reversal_returns_core() {
        let chi = UniPoly::from_ints(&[0, -1, -1, 1]); // x·(x^2 - x - 1)
        let (q, k) = generating_denominator(&chi).unwrap();
        assert_eq!(k, 1);
        let (qq, k2) = generating_denominator(&q).unwrap();
        assert_eq!(k2, 0);
        // qq is a scalar multiple of the x-power-free part of chi.
        let core = UniPoly::from_ints(&[-1, -1, 1]);
        assert_eq!(qq.monic(), core.monic());
    }
}
