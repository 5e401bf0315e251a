//! Canonical points of **P**^d and the special loci used by the orbit
//! machinery.
//!
//! Points are stored in canonical integer homogeneous coordinates: no common
//! factor, first nonzero coordinate positive.  Equality and hashing are then
//! plain component comparisons, which is what orbit cycle detection needs.

use crate::error::{Error, Result};
use crate::exactmath::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of **P**^d in canonical homogeneous integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

/// Classification of a point relative to the Cremona involution `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointClass {
    pub tag: PointTag,
    /// `I = {i : x_i = 0}`.
    pub zero_set: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointTag {
    /// At least two zero coordinates: a point of the indeterminacy locus of J.
    Indeterminate,
    /// Exactly one zero coordinate: lies on `Σ_j^*` for the recorded index.
    OnExceptional(usize),
    /// No zero coordinates.
    Generic,
}

/// The special-point families: `e_j`, `σ_j = η_j(1)`, and `η_j(c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    E,
    Sigma,
    Eta,
}

impl ProjPoint {
    /// Canonicalize rational homogeneous coordinates: clear denominators,
    /// divide by the integer gcd, and make the first nonzero coordinate
    /// positive.
    pub fn canonicalize(raw: &[Rat]) -> Result<ProjPoint> {
        if raw.len() < 2 {
            return Err(Error::DimensionTooSmall(raw.len().saturating_sub(1)));
        }
        if raw.iter().all(|c| c.is_zero()) {
            return Err(Error::AllZeroCoordinates);
        }
        let mut scale = BigInt::one();
        for c in raw {
            let d = c.denom();
            let g = scale.gcd(d);
            scale = scale / g * d;
        }
        let ints: Vec<BigInt> = raw.iter().map(|c| c.numer() * (&scale / c.denom())).collect();
        Ok(Self::from_integers(ints))
    }

    /// Canonicalize integer homogeneous coordinates (at least one nonzero).
    pub fn from_integers(mut coords: Vec<BigInt>) -> ProjPoint {
        debug_assert!(coords.iter().any(|c| !c.is_zero()));
        let mut g = BigInt::zero();
        for c in &coords {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            for c in coords.iter_mut() {
                *c = &*c / &g;
            }
        }
        let flip = coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        if flip {
            for c in coords.iter_mut() {
                *c = -&*c;
            }
        }
        ProjPoint { coords }
    }

    pub fn from_i64(coords: &[i64]) -> ProjPoint {
        ProjPoint::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Projective dimension d (one less than the coordinate count).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Zero-coordinate index set and three-way tag.
    pub fn classify(&self) -> PointClass {
        let zero_set: Vec<usize> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i)
            .collect();
        let tag = match zero_set.len() {
            0 => PointTag::Generic,
            1 => PointTag::OnExceptional(zero_set[0]),
            _ => PointTag::Indeterminate,
        };
        PointClass { tag, zero_set }
    }

    pub fn is_generic(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }

    /// True when this is the coordinate point `e_j`; returns `j`.
    pub fn as_coordinate_point(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Largest coordinate bit-length (resource guard input).
    pub fn max_bits(&self) -> u64 {
        self.coords.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let inner: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("[{}]", inner.join(":"))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Construct `e_j`, `σ_j`, or `η_j(c)` in **P**^d.
///
/// `η_j(c)` has `c − 1` in slot j and `c` elsewhere; `σ_j = η_j(1)` and
/// `η_j(0) = e_j`.  The parameter `c` is required exactly for `Eta`.
pub fn special_point(kind: SpecialKind, j: usize, c: Option<&Rat>, d: usize) -> Result<ProjPoint> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if j > d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    let c = match (kind, c) {
        (SpecialKind::E, _) => Rat::zero(),
        (SpecialKind::Sigma, _) => Rat::one(),
        (SpecialKind::Eta, Some(c)) => c.clone(),
        (SpecialKind::Eta, None) => {
            return Err(Error::InvalidInput("eta requires the parameter c".into()))
        }
    };
    eta_point(j, &c, d)
}

/// `η_j(c)` directly from a rational parameter.
pub fn eta_point(j: usize, c: &Rat, d: usize) -> Result<ProjPoint> {
    if j > d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    let raw: Vec<Rat> = (0..=d)
        .map(|i| if i == j { c - Rat::one() } else { c.clone() })
        .collect();
    ProjPoint::canonicalize(&raw)
}

/// Recover the diagonal parameter: if `p = η_j(c)` for some `c`, return
/// `(j, c)`.  Points on a diagonal `D_j` have all coordinates with index ≠ j
/// equal (and the j-th one less in the η-normalization).
pub fn diagonal_parameter(p: &ProjPoint) -> Option<(usize, Rat)> {
    let n = p.coords().len();
    let d = n - 1;
    // Find the index whose removal leaves all coordinates equal.
    for j in 0..n {
        let mut others = (0..n).filter(|&i| i != j);
        let first = others.next().unwrap();
        let v = &p.coords()[first];
        if others.all(|i| &p.coords()[i] == v) {
            // p ~ η_j(c) with c/(c−1) = v/x_j; if v = 0 the point is e_j (c = 0).
            if v.is_zero() {
                if p.as_coordinate_point() == Some(j) {
                    return Some((j, Rat::zero()));
                }
                continue;
            }
            let xj = &p.coords()[j];
            // c·t = v, (c−1)·t = x_j for the scalar t = v − x_j.
            let t = v - xj;
            if t.is_zero() {
                // all coordinates equal: the point 𝟏 lies on every diagonal,
                // reachable as c → ∞; not an η point.
                let _ = d;
                continue;
            }
            let c = Rat::new(v.clone(), t);
            return Some((j, c));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn canonicalize_examples() {
        let p = ProjPoint::canonicalize(&[rat(1, 2), rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(p, ProjPoint::from_i64(&[1, 2, 0]));
        let q = ProjPoint::canonicalize(&[rat(-2, 1), rat(-4, 1), rat(-6, 1)]).unwrap();
        assert_eq!(q, ProjPoint::from_i64(&[1, 2, 3]));
        let r = ProjPoint::canonicalize(&[rat(0, 1), rat(3, 5), rat(3, 5)]).unwrap();
        assert_eq!(r, ProjPoint::from_i64(&[0, 1, 1]));
        assert!(ProjPoint::canonicalize(&[rat(0, 1), rat(0, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn canonicalize_idempotent_and_scale_invariant() {
        let raw = [rat(4, 6), rat(-2, 3), rat(8, 9)];
        let p = ProjPoint::canonicalize(&raw).unwrap();
        let scaled: Vec<Rat> = raw.iter().map(|c| c * rat(-7, 5)).collect();
        assert_eq!(p, ProjPoint::canonicalize(&scaled).unwrap());
        let again: Vec<Rat> = p.coords().iter().map(|c| Rat::from_integer(c.clone())).collect();
        assert_eq!(p, ProjPoint::canonicalize(&again).unwrap());
    }

    #[test]
    fn classify_examples() {
        let e0 = special_point(SpecialKind::E, 0, None, 2).unwrap();
        assert_eq!(e0, ProjPoint::from_i64(&[1, 0, 0]));
        let class = e0.classify();
        assert_eq!(class.tag, PointTag::Indeterminate);
        assert_eq!(class.zero_set, vec![1, 2]);

        let p = ProjPoint::from_i64(&[0, 1, 1]);
        assert_eq!(p.classify().tag, PointTag::OnExceptional(0));
        assert_eq!(ProjPoint::from_i64(&[1, 1, 1]).classify().tag, PointTag::Generic);
    }

    #[test]
    fn special_points() {
        let sigma0 = special_point(SpecialKind::Sigma, 0, None, 2).unwrap();
        assert_eq!(sigma0, ProjPoint::from_i64(&[0, 1, 1]));
        let eta = special_point(SpecialKind::Eta, 1, Some(&rat(1, 2)), 2).unwrap();
        assert_eq!(eta, ProjPoint::from_i64(&[1, -1, 1]));
        let e0 = special_point(SpecialKind::Eta, 0, Some(&rat(0, 1)), 3).unwrap();
        assert_eq!(e0, special_point(SpecialKind::E, 0, None, 3).unwrap());
        assert!(special_point(SpecialKind::E, 4, None, 3).is_err());
        assert!(special_point(SpecialKind::Eta, 0, None, 3).is_err());
    }

    #[test]
    fn diagonal_parameters_roundtrip() {
        for (j, c) in [(0usize, rat(3, 4)), (2, rat(-5, 2)), (1, rat(2, 1))] {
            let p = eta_point(j, &c, 3).unwrap();
            let (jj, cc) = diagonal_parameter(&p).unwrap();
            assert_eq!((jj, cc), (j, c));
        }
        // e_j has parameter 0
        let e2 = special_point(SpecialKind::E, 2, None, 3).unwrap();
        assert_eq!(diagonal_parameter(&e2), Some((2, rat(0, 1))));
        // A generic point is on no diagonal.
        assert_eq!(diagonal_parameter(&ProjPoint::from_i64(&[1, 2, 3, 4])), None);
    }
}
