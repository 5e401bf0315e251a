//! Sturm-sequence real-root counting and isolation.
//!
//! Chains are built over the integers with primitive pseudo-remainders, with
//! the scaling signs tracked so the sign variations agree with the rational
//! Sturm chain.  Polynomials are replaced by their square-free part first,
//! so counts are counts of distinct roots.

use super::poly::UniPoly;
use super::rat::{rat_to_decimal, Rat};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An isolating interval `(lo, hi]` for a single real root, refined to the
/// requested width, plus a decimal rendering of the refined value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub refined: String,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn decimal(&self, digits: usize) -> String {
        rat_to_decimal(&self.midpoint(), digits)
    }
}

/// Sturm chain of a square-free primitive integer polynomial.
fn sturm_chain(f: &ZPoly) -> Vec<ZPoly> {
    let mut chain = vec![f.clone(), f.derivative().primitive_part()];
    loop {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        if b.is_zero() || a.degree() < b.degree() {
            chain.pop();
            break;
        }
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        // rem(a,b) = r / lc(b)^(δ+1); the chain needs −rem up to a positive
        // scalar, so flip unless the scaling power was negative.
        let flip_to_positive = b.leading().unwrap().is_negative() && (delta + 1) % 2 == 1;
        let next = if flip_to_positive {
            r.primitive_part()
        } else {
            r.primitive_part().neg()
        };
        chain.push(next);
    }
    chain
}

/// Sign variations of the chain at num/den.
fn variations_at(chain: &[ZPoly], num: &BigInt, den: &BigInt) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let s = p.sign_at(num, den);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn variations_at_rat(chain: &[ZPoly], x: &Rat) -> usize {
    variations_at(chain, x.numer(), x.denom())
}

struct SturmContext {
    squarefree: ZPoly,
    chain: Vec<ZPoly>,
}

impl SturmContext {
    fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = p.squarefree_part()?;
        let (z, _) = sf.to_zpoly();
        let z = z.primitive_part();
        let chain = sturm_chain(&z);
        Ok(SturmContext {
            squarefree: z,
            chain,
        })
    }

    fn count_open_closed(&self, a: &Rat, b: &Rat) -> usize {
        variations_at_rat(&self.chain, a) - variations_at_rat(&self.chain, b)
    }

    fn sign_at(&self, x: &Rat) -> i32 {
        self.squarefree.sign_at(x.numer(), x.denom())
    }

    /// 1 + max |c_i|/|c_n|: strictly exceeds the magnitude of every root.
    fn root_bound(&self) -> Rat {
        let coeffs = &self.squarefree.coeffs;
        let lead = Rat::from_integer(coeffs.last().unwrap().abs());
        let mut max = Rat::zero();
        for c in &coeffs[..coeffs.len() - 1] {
            let q = Rat::from_integer(c.abs()) / lead.clone();
            if q > max {
                max = q;
            }
        }
        max + Rat::one()
    }
}

/// Exact number of distinct real roots of `p` in `(a, b]`.
pub fn count_real_roots_in(p: &UniPoly, a: &Rat, b: &Rat) -> Result<usize> {
    if a >= b {
        return Err(Error::EmptyInterval);
    }
    let ctx = SturmContext::new(p)?;
    if ctx.sign_at(a) == 0 {
        return Err(Error::RootAtEndpoint(a.to_string()));
    }
    if ctx.sign_at(b) == 0 {
        return Err(Error::RootAtEndpoint(b.to_string()));
    }
    Ok(ctx.count_open_closed(a, b))
}

/// Total number of distinct real roots.
pub fn real_root_count(p: &UniPoly) -> Result<usize> {
    let ctx = SturmContext::new(p)?;
    if ctx.squarefree.degree() == Some(0) {
        return Ok(0);
    }
    let b = ctx.root_bound();
    Ok(ctx.count_open_closed(&-b.clone(), &b))
}

/// Isolate the greatest real root and refine the bracket by bisection to
/// width < 2^(−precision).  Returns `None` when `p` has no real root.
pub fn largest_real_root(p: &UniPoly, precision: u32) -> Result<Option<RootInterval>> {
    let ctx = SturmContext::new(p)?;
    if ctx.squarefree.degree() == Some(0) {
        return Ok(None);
    }
    let eps = Rat::new(BigInt::one(), BigInt::from(2u32).pow(precision + 1));
    let digits = ((precision as f64) * std::f64::consts::LOG10_2).floor().max(3.0) as usize;
    // Degree one: the root is exact.
    if ctx.squarefree.degree() == Some(1) {
        let root = Rat::new(-ctx.squarefree.coeffs[0].clone(), ctx.squarefree.coeffs[1].clone());
        return Ok(Some(RootInterval {
            lo: &root - &eps,
            hi: root.clone(),
            refined: rat_to_decimal(&root, digits),
        }));
    }
    let bound = ctx.root_bound();
    let mut lo = -bound.clone();
    let mut hi = bound;
    let mut count = ctx.count_open_closed(&lo, &hi);
    if count == 0 {
        return Ok(None);
    }
    // Keep the rightmost root until the bracket isolates exactly one.
    while count > 1 {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let right = ctx.count_open_closed(&mid, &hi);
        if right >= 1 {
            lo = mid;
            count = right;
        } else {
            hi = mid;
        }
    }
    // Refine by sign bisection on the square-free polynomial.
    let exact = |root: Rat, lo: &Rat| -> RootInterval {
        let cut = &root - &eps;
        RootInterval {
            lo: if &cut > lo { cut } else { lo.clone() },
            refined: rat_to_decimal(&root, digits),
            hi: root,
        }
    };
    let s_hi = ctx.sign_at(&hi);
    if s_hi == 0 {
        return Ok(Some(exact(hi, &lo)));
    }
    let width_target = Rat::new(BigInt::one(), BigInt::from(2u32).pow(precision));
    while (&hi - &lo) >= width_target {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let s_mid = ctx.sign_at(&mid);
        if s_mid == 0 {
            return Ok(Some(exact(mid, &lo)));
        }
        if s_mid == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let refined = rat_to_decimal(
        &((&lo + &hi) / Rat::from_integer(2.into())),
        digits,
    );
    Ok(Some(RootInterval { lo, hi, refined }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn golden_ratio_bracket() {
        let p = UniPoly::from_ints(&[-1, -1, 1]);
        let root = largest_real_root(&p, 64).unwrap().unwrap();
        // (1+sqrt 5)/2 = 1.6180339887...
        assert!(root.width() < Rat::new(1.into(), BigInt::from(2u64).pow(64)));
        assert!(root.decimal(10).starts_with("1.6180339887"));
        // The bracket provably contains the root: p changes sign across it.
        assert!(p.eval(&root.lo) < Rat::zero());
        assert!(p.eval(&root.hi) > Rat::zero() || p.eval(&root.hi).is_zero());
    }

    #[test]
    fn linear_root_exact() {
        let p = UniPoly::from_ints(&[-3, 1]);
        let root = largest_real_root(&p, 64).unwrap().unwrap();
        assert_eq!(root.hi, rat(3, 1));
        assert!(root.refined.starts_with("3.000"));
    }

    #[test]
    fn no_real_roots() {
        let p = UniPoly::from_ints(&[1, 0, 1]);
        assert!(largest_real_root(&p, 32).unwrap().is_none());
        assert_eq!(real_root_count(&p).unwrap(), 0);
    }

    #[test]
    fn count_examples() {
        let p = UniPoly::from_ints(&[-1, -1, 1]);
        assert_eq!(count_real_roots_in(&p, &rat(1, 1), &rat(2, 1)).unwrap(), 1);
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots_in(&q, &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
    }

    #[test]
    fn endpoint_root_rejected() {
        let p = UniPoly::from_ints(&[-1, 0, 1]); // roots ±1
        assert!(matches!(
            count_real_roots_in(&p, &rat(1, 1), &rat(2, 1)),
            Err(Error::RootAtEndpoint(_))
        ));
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-1)^2 (x+2)
        let p = UniPoly::from_ints(&[1, -2, 1]).mul(&UniPoly::from_ints(&[2, 1]));
        assert_eq!(real_root_count(&p).unwrap(), 2);
        let root = largest_real_root(&p, 32).unwrap().unwrap();
        assert_eq!(root.hi, rat(1, 1)); // found exactly
    }

    #[test]
    fn sturm_additivity() {
        let p = UniPoly::from_ints(&[0, -1, 0, 1]); // x^3 - x: roots -1, 0, 1
        let total = count_real_roots_in(&p, &rat(-2, 1), &rat(2, 1)).unwrap();
        let left = count_real_roots_in(&p, &rat(-2, 1), &rat(1, 2)).unwrap();
        let right = count_real_roots_in(&p, &rat(1, 2), &rat(2, 1)).unwrap();
        assert_eq!(total, 3);
        assert_eq!(left + right, total);
    }
}
