//! Integer polynomials: the engine behind rational-polynomial GCDs, Sturm
//! chains, and the generic-line oracle.
//!
//! All polynomials here are dense `Vec<BigInt>` in increasing degree order
//! with no trailing zeros (`coeffs.is_empty()` means the zero polynomial).
//! GCDs use the primitive pseudo-remainder sequence, fronted by a modular
//! probe: a GCD computed mod a word-size prime bounds the true GCD degree
//! from above, so a degree-zero image proves coprimality without any bigint
//! division.  Nontrivial GCDs of large inputs are reconstructed from several
//! modular images (Brown's algorithm) and verified by exact division, which
//! keeps the whole path exact.

use crate::parallel;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZPoly {
    pub coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(a + b);
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, s: &BigInt) -> ZPoly {
        if s.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Schoolbook product with the output coefficients computed in parallel
    /// for large operands.
    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let n = a.len() + b.len() - 1;
        let coeffs = parallel::map_indexed(n, 256, |k| {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let mut acc = BigInt::zero();
            for i in lo..=hi {
                acc += &a[i] * &b[k - i];
            }
            acc
        });
        ZPoly::new(coeffs)
    }

    /// Product of a list of polynomials via a balanced tree.
    pub fn product(polys: &[ZPoly]) -> ZPoly {
        match polys.len() {
            0 => ZPoly::one(),
            1 => polys[0].clone(),
            _ => {
                let mid = polys.len() / 2;
                let (lo, hi) =
                    parallel::join(|| ZPoly::product(&polys[..mid]), || ZPoly::product(&polys[mid..]));
                lo.mul(&hi)
            }
        }
    }

    /// Positive GCD of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Number of trailing zero coefficients (the exact power of x dividing
    /// the polynomial); zero polynomial reports 0.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> ZPoly {
        ZPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    pub fn exact_div(&self, divisor: &ZPoly) -> Option<ZPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let (da, db) = (self.degree().unwrap(), divisor.degree().unwrap());
        if da < db {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = std::mem::take(&mut rem[k + db]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate().take(db) {
                rem[k + i] -= c * &q;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(quot))
    }

    /// Pseudo-remainder: returns `r` with `lc(b)^(δ+1)·a = q·b + r` where
    /// `δ = deg a − deg b`.  Requires `deg a ≥ deg b`, `b` nonzero.
    pub fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        let da = self.degree().expect("pseudo_rem: zero dividend");
        let db = b.degree().expect("pseudo_rem: zero divisor");
        assert!(da >= db);
        let lead = b.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        // One scaling step per quotient coefficient keeps everything integral.
        for k in (0..=da - db).rev() {
            let top = rem[k + db].clone();
            for c in rem.iter_mut().take(k + db) {
                *c = &*c * &lead;
            }
            for (i, bc) in b.coeffs.iter().enumerate().take(db) {
                rem[k + i] -= bc * &top;
            }
            rem[k + db] = BigInt::zero();
            for c in rem.iter_mut().skip(k + db + 1) {
                *c = &*c * &lead;
            }
        }
        ZPoly::new(rem[..db].to_vec())
    }

    /// Evaluate homogeneously at num/den: `Σ c_k·num^k·den^(n−k)`.
    pub fn eval_scaled(&self, num: &BigInt, den: &BigInt) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let n = self.degree().unwrap();
        // Horner in num, multiplying by den as we descend.
        let mut acc = self.coeffs[n].clone();
        for k in (0..n).rev() {
            acc = acc * num + &self.coeffs[k] * den.pow((n - k) as u32);
        }
        acc
    }

    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i32 {
        match self.eval_scaled(num, den).sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

// ---- modular arithmetic helpers ----

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending stream of ~62-bit primes.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream {
            next: (1u64 << 62) - 1,
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let n = self.next;
            self.next -= 2;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
    }
}

fn reduce_mod(poly: &ZPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = poly
        .coeffs
        .iter()
        .map(|c| {
            let m = c.mod_floor(&pb);
            m.to_u64().expect("mod_floor fits in u64")
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic GCD of two polynomials over F_p; returns coefficients mod p.
fn gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        // a mod b
        while a.len() >= b.len() && !a.is_empty() {
            let scale = mul_mod(*a.last().unwrap(), lead_inv, p);
            let shift = a.len() - b.len();
            if scale != 0 {
                for (i, bc) in b.iter().enumerate() {
                    let sub = mul_mod(scale, *bc, p);
                    let idx = shift + i;
                    a[idx] = (a[idx] + p - sub) % p;
                }
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Symmetric representative of `x mod m` in `(-m/2, m/2]`.
fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Primitive GCD with positive leading coefficient, via a modular probe,
/// Brown-style reconstruction, and a primitive PRS fallback.
pub(crate) fn zpoly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return positive_lead(b.primitive_part());
    }
    if b.is_zero() {
        return positive_lead(a.primitive_part());
    }
    // Common power of x.
    let tz = a.trailing_zeros().min(b.trailing_zeros());
    let a = a.shift_down(a.trailing_zeros()).primitive_part();
    let b = b.shift_down(b.trailing_zeros()).primitive_part();
    let core = zpoly_gcd_primitive(&a, &b);
    let mut coeffs = vec![BigInt::zero(); tz];
    coeffs.extend(core.coeffs);
    ZPoly::new(coeffs)
}

fn positive_lead(p: ZPoly) -> ZPoly {
    match p.leading() {
        Some(l) if l.is_negative() => p.neg(),
        _ => p,
    }
}

fn zpoly_gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return ZPoly::one();
    }
    if let Some(g) = gcd_modular(a, b) {
        return g;
    }
    gcd_prs(a, b)
}

/// Brown's modular GCD.  Returns `None` when too many unlucky primes occur;
/// the caller then falls back to the pseudo-remainder sequence.
fn gcd_modular(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let lc_gcd: BigInt = a.leading().unwrap().gcd(b.leading().unwrap());
    let mut primes = PrimeStream::new();
    let mut target_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut verified_stable = false;
    for _ in 0..512 {
        let p = primes.next().unwrap();
        let pb = BigInt::from(p);
        if (a.leading().unwrap() % &pb).is_zero() || (b.leading().unwrap() % &pb).is_zero() {
            continue;
        }
        let ga = reduce_mod(a, p);
        let gb = reduce_mod(b, p);
        let g = gcd_mod_p(ga, gb, p);
        let gdeg = g.len() - 1;
        if gdeg == 0 {
            return Some(ZPoly::one());
        }
        if gdeg > target_deg {
            continue; // unlucky prime
        }
        if gdeg < target_deg {
            target_deg = gdeg;
            modulus = BigInt::one();
            coeffs = vec![BigInt::zero(); gdeg + 1];
            verified_stable = false;
        }
        // Scale the monic image so its leading coefficient is lc_gcd mod p.
        let scale = (&lc_gcd).mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = g.iter().map(|c| mul_mod(*c, scale, p)).collect();
        // CRT-combine into the accumulated coefficients.
        let mut changed = modulus.is_one();
        if modulus.is_one() {
            coeffs = image.iter().map(|&c| symmetric(&BigInt::from(c), &pb)).collect();
            modulus = pb;
        } else {
            let m_inv_p = {
                let m_mod_p = modulus.mod_floor(&pb).to_u64().unwrap();
                BigInt::from(inv_mod(m_mod_p, p))
            };
            let new_modulus = &modulus * &pb;
            for (c, &img) in coeffs.iter_mut().zip(image.iter()) {
                let cur_mod_p = c.mod_floor(&pb).to_u64().unwrap();
                let diff = (img + p - cur_mod_p) % p;
                let bump = (BigInt::from(diff) * &m_inv_p).mod_floor(&pb);
                let next = symmetric(&(&*c + bump * &modulus), &new_modulus);
                if next != *c {
                    *c = next;
                    changed = true;
                }
            }
            modulus = new_modulus;
        }
        if !changed {
            if verified_stable {
                continue;
            }
            let candidate = positive_lead(ZPoly::new(coeffs.clone()).primitive_part());
            if a.exact_div(&candidate).is_some() && b.exact_div(&candidate).is_some() {
                return Some(candidate);
            }
            verified_stable = true; // division failed; gather more primes
        }
    }
    None
}

/// Primitive pseudo-remainder sequence GCD.
fn gcd_prs(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut f, mut g) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !g.is_zero() {
        if g.degree() == Some(0) {
            return ZPoly::one();
        }
        let r = f.pseudo_rem(&g).primitive_part();
        f = g;
        g = r;
    }
    positive_lead(f.primitive_part())
}

/// GCD of a list, with an early exit once the GCD collapses to a constant.
pub(crate) fn zpoly_gcd_many(polys: &[ZPoly]) -> ZPoly {
    let mut iter = polys.iter().filter(|p| !p.is_zero());
    let first = match iter.next() {
        Some(p) => p,
        None => return ZPoly::zero(),
    };
    let mut g = positive_lead(first.primitive_part());
    for p in iter {
        if g.degree() == Some(0) {
            break;
        }
        g = zpoly_gcd(&g, p);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn mul_and_exact_div() {
        let a = zp(&[1, 2, 1]); // (x+1)^2
        let b = zp(&[-1, 1]); // x-1
        let prod = a.mul(&b);
        assert_eq!(prod, zp(&[-1, -1, 1, 1]));
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(zp(&[1, 1]).exact_div(&zp(&[0, 0, 1])).is_none());
        assert!(zp(&[1, 0, 1]).exact_div(&zp(&[-1, 1])).is_none());
    }

    #[test]
    fn gcd_basic() {
        let a = zp(&[-1, 0, 1]); // x^2-1
        let b = zp(&[1, 2, 1]); // (x+1)^2
        assert_eq!(zpoly_gcd(&a, &b), zp(&[1, 1]));
        // coprime
        assert_eq!(zpoly_gcd(&zp(&[1, 1]), &zp(&[3, 1])), ZPoly::one());
        // content is stripped
        assert_eq!(zpoly_gcd(&zp(&[2, 2]), &zp(&[4, 4])), zp(&[1, 1]));
        // x-power factored
        assert_eq!(zpoly_gcd(&zp(&[0, 0, 1]), &zp(&[0, 2, 2])), zp(&[0, 1]));
    }

    #[test]
    fn gcd_larger_inputs() {
        // g = (x^3 - 2x + 5)(x+3), multiplied by two coprime cofactors.
        let g = zp(&[5, -2, 0, 1]).mul(&zp(&[3, 1]));
        let a = g.mul(&zp(&[1, 7, 0, 0, 2]));
        let b = g.mul(&zp(&[-4, 0, 9, 1]));
        let got = zpoly_gcd(&a, &b);
        assert_eq!(got, positive_lead(g.primitive_part()));
    }

    #[test]
    fn pseudo_rem_matches_rational_remainder() {
        // lc(b)^(δ+1)·a = q·b + r; check r is a scalar multiple of the true remainder.
        let a = zp(&[1, 0, 0, 1]); // x^3+1
        let b = zp(&[1, 0, 2]); // 2x^2+1
        let r = a.pseudo_rem(&b);
        // Rational remainder of (x^3+1)/(2x^2+1) is -x/2 + 1;
        // with multiplier 2^2 = 4 this is -2x + 4.
        assert_eq!(r, zp(&[4, -2]));
    }

    #[test]
    fn product_tree() {
        let factors: Vec<ZPoly> = (1..=6).map(|k| zp(&[k, 1])).collect();
        let tree = ZPoly::product(&factors);
        let mut seq = ZPoly::one();
        for f in &factors {
            seq = seq.mul(f);
        }
        assert_eq!(tree, seq);
    }

    #[test]
    fn primes_stream() {
        let mut s = PrimeStream::new();
        let p = s.next().unwrap();
        assert!(p > (1 << 61));
        assert!(is_prime_u64(p));
    }
}
