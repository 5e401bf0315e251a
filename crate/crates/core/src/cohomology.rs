//! Pullback action on `H^{1,1}` of the blow-up: the `J*` matrix on
//! `{H, E_0, …, E_d}` and, for elementary maps, `f*` on the orbit-fiber
//! basis; degree sequences and the dynamical degree.

use crate::birmap::{ElementaryStructure, ListKind, OrbitListStructure};
use crate::error::{Error, Result};
use crate::exactmath::{
    charpoly, largest_real_root, power_entry_sequence, Rat, RatMatrix, RootInterval, UniPoly,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Ordered basis labels for the blow-up cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisLabel {
    /// Pullback of the hyperplane class; always first.
    Hyperplane,
    /// Fiber over the coordinate point `e_j` (the `J*` basis).
    CoordFiber(usize),
    /// Fiber over an orbit point: `pos = 0` is the orbit's landing point,
    /// `pos = length−1` is the starting point `α`.
    OrbitFiber { list: usize, orbit: usize, pos: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupBasis {
    pub labels: Vec<BasisLabel>,
}

impl BlowupBasis {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// A square integer matrix representing a pullback on `H^{1,1}`; column `j`
/// holds the coefficients of the image of basis element `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackMatrix {
    pub basis: BlowupBasis,
    pub matrix: RatMatrix,
    pub dim: usize,
}

/// The involution `J*` on `{H_X, E_0, …, E_d}` for **P**^d blown up at the
/// coordinate points.
pub fn j_star_matrix(d: usize) -> Result<PullbackMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let n = d + 2;
    let dd = Rat::from_integer(BigInt::from(d as i64));
    let one_minus_d = Rat::from_integer(BigInt::from(1 - d as i64));
    let matrix = RatMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => dd.clone(),
        (0, _) => Rat::one(),
        (_, 0) => one_minus_d.clone(),
        (i, j) if i == j => Rat::zero(),
        _ => -Rat::one(),
    });
    let mut labels = vec![BasisLabel::Hyperplane];
    labels.extend((0..=d).map(BasisLabel::CoordFiber));
    Ok(PullbackMatrix {
        basis: BlowupBasis { labels },
        matrix,
        dim: d,
    })
}

/// `f*` on the blow-up along the singular orbits of an elementary map; the
/// matrix depends only on the orbit-list structure.
///
/// Basis order: `H` first, then closed lists then open lists; within a list
/// the orbits in chain order; within an orbit the fibers from the landing
/// point backward to `α`.
pub fn f_star_matrix(structure: &OrbitListStructure) -> Result<PullbackMatrix> {
    let d = structure.dim;
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    for list in structure.closed.iter().chain(structure.open.iter()) {
        if list.is_empty() || list.iter().any(|&n| n == 0) {
            return Err(Error::InconsistentStructure(
                "orbit lists must be nonempty with positive lengths".into(),
            ));
        }
    }
    let lists: Vec<(ListKind, &Vec<u64>)> = structure
        .closed
        .iter()
        .map(|l| (ListKind::Closed, l))
        .chain(structure.open.iter().map(|l| (ListKind::Open, l)))
        .collect();

    let size = 1 + structure.total_length() as usize;
    let mut labels = vec![BasisLabel::Hyperplane];
    // block_starts[list][orbit] = row of the orbit's landing-point fiber.
    let mut block_starts: Vec<Vec<usize>> = Vec::with_capacity(lists.len());
    let mut next_row = 1usize;
    for (li, (_, lengths)) in lists.iter().enumerate() {
        let mut starts = Vec::with_capacity(lengths.len());
        for (oi, &len) in lengths.iter().enumerate() {
            starts.push(next_row);
            for pos in 0..len {
                labels.push(BasisLabel::OrbitFiber {
                    list: li,
                    orbit: oi,
                    pos,
                });
            }
            next_row += len as usize;
        }
        block_starts.push(starts);
    }
    debug_assert_eq!(next_row, size);

    let mut m = RatMatrix::zero(size, size);
    let one_minus_d = Rat::from_integer(BigInt::from(1 - d as i64));
    // f*H = d·H + (1−d)·Σ_Ω F(e): every orbit's landing fiber.
    m.set(0, 0, Rat::from_integer(BigInt::from(d as i64)));
    for starts in &block_starts {
        for &s in starts {
            m.set(s, 0, one_minus_d.clone());
        }
    }
    for (li, (kind, lengths)) in lists.iter().enumerate() {
        let ell = lengths.len();
        for (oi, &len) in lengths.iter().enumerate() {
            let start = block_starts[li][oi];
            let len = len as usize;
            // Fiber shifts along the orbit.
            for q in 0..len - 1 {
                m.set(start + q + 1, start + q, Rat::one());
            }
            // The α-fiber pulls back to {Σ_start}: H − F_Ω (+ F(e_start)).
            let col = start + len - 1;
            m.set(0, col, Rat::one());
            for starts in &block_starts {
                for &s in starts {
                    let v = m.entry(s, col) - Rat::one();
                    m.set(s, col, v);
                }
            }
            // e_{start} is blown up exactly when a predecessor orbit in the
            // chain ends there; then the −F(e_start) term cancels.
            let pred = if oi > 0 {
                Some(oi - 1)
            } else if *kind == ListKind::Closed {
                Some(ell - 1)
            } else {
                None
            };
            if let Some(p) = pred {
                let s = block_starts[li][p];
                let v = m.entry(s, col) + Rat::one();
                m.set(s, col, v);
            }
        }
    }
    Ok(PullbackMatrix {
        basis: BlowupBasis { labels },
        matrix: m,
        dim: d,
    })
}

/// `f*` from a computed elementary structure, after validating that the
/// recorded index sets are consistent with the chaining rule.
pub fn f_star_matrix_checked(es: &ElementaryStructure) -> Result<PullbackMatrix> {
    for list in &es.lists {
        let ell = list.starts.len();
        if ell == 0 || list.lengths.len() != ell || list.endpoints.len() != ell {
            return Err(Error::InconsistentStructure("ragged orbit list".into()));
        }
        for t in 0..ell {
            let expected_next = list.endpoints[t];
            match list.kind {
                ListKind::Closed => {
                    let next = list.starts[(t + 1) % ell];
                    if expected_next != next {
                        return Err(Error::InconsistentStructure(format!(
                            "closed list breaks at orbit {}: ends at e_{} but next starts at {}",
                            list.starts[t], expected_next, next
                        )));
                    }
                }
                ListKind::Open => {
                    if t + 1 < ell && expected_next != list.starts[t + 1] {
                        return Err(Error::InconsistentStructure(format!(
                            "open list breaks at orbit {}",
                            list.starts[t]
                        )));
                    }
                }
            }
        }
    }
    // 𝒜 must be exactly the open-list heads.
    let heads: std::collections::BTreeSet<usize> = es
        .lists
        .iter()
        .filter(|l| l.kind == ListKind::Open)
        .filter_map(|l| l.starts.first().copied())
        .collect();
    if heads != es.alpha_set {
        return Err(Error::InconsistentStructure(
            "𝒜 is not the set of open-list heads".into(),
        ));
    }
    let omega: std::collections::BTreeSet<usize> = es
        .lists
        .iter()
        .flat_map(|l| l.endpoints.iter().copied())
        .collect();
    if omega != es.omega_set {
        return Err(Error::InconsistentStructure(
            "Ω does not match the recorded endpoints".into(),
        ));
    }
    f_star_matrix(&es.structure)
}

/// Degree sequence `d_n = (Mⁿ)₁₁` for `n = 0..=n_max`; entries must come out
/// as positive integers.
pub fn degree_sequence(pm: &PullbackMatrix, n_max: usize) -> Result<Vec<BigInt>> {
    let seq = power_entry_sequence(&pm.matrix, n_max)?;
    seq.into_iter()
        .map(|r| {
            if !r.denom().is_one() || !r.numer().is_positive() {
                return Err(Error::InconsistentStructure(format!(
                    "degree sequence entry {r} is not a positive integer"
                )));
            }
            Ok(r.numer().clone())
        })
        .collect()
}

/// Characteristic polynomial of the pullback matrix.
pub fn pullback_charpoly(pm: &PullbackMatrix) -> Result<UniPoly> {
    charpoly(&pm.matrix)
}

/// The dynamical degree δ: the largest real zero of the characteristic
/// polynomial, isolated and refined to `2^-precision`.
///
/// For the nilpotent edge case `χ = x^N` (all eigenvalues zero, which the
/// theory does not reach) this reports the interval around δ = 0.
pub fn dynamical_degree(pm: &PullbackMatrix, precision: u32) -> Result<RootInterval> {
    let chi = pullback_charpoly(pm)?;
    largest_real_root(&chi, precision)?.ok_or_else(|| {
        Error::InconsistentStructure("pullback characteristic polynomial has no real root".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_star_examples() {
        let pm = j_star_matrix(2).unwrap();
        let expected = RatMatrix::from_int_rows(&[
            &[2, 1, 1, 1],
            &[-1, 0, -1, -1],
            &[-1, -1, 0, -1],
            &[-1, -1, -1, 0],
        ]);
        assert_eq!(pm.matrix, expected);
        assert!(pm.matrix.pow(2).unwrap().is_identity());
        let pm3 = j_star_matrix(3).unwrap();
        assert_eq!(pm3.matrix.entry(0, 0), &Rat::from_integer(3.into()));
        assert_eq!(pm3.matrix.entry(1, 0), &Rat::from_integer((-2).into()));
        assert!(j_star_matrix(1).is_err());
    }

    #[test]
    fn j_star_charpoly_d2() {
        // (x−1)^3 (x+1)
        let pm = j_star_matrix(2).unwrap();
        let chi = pullback_charpoly(&pm).unwrap();
        let expected = UniPoly::from_ints(&[-1, 1])
            .mul(&UniPoly::from_ints(&[-1, 1]))
            .mul(&UniPoly::from_ints(&[-1, 1]))
            .mul(&UniPoly::from_ints(&[1, 1]));
        assert_eq!(chi, expected);
    }

    #[test]
    fn single_closed_orbit_matrix() {
        // ℒᶜ = {{2}}, d = 2: columns H ↦ 2H − F(e0); F(e0) ↦ F(α0); F(α0) ↦ H.
        let s = OrbitListStructure::new(vec![vec![2]], vec![], 2).unwrap();
        let pm = f_star_matrix(&s).unwrap();
        let expected = RatMatrix::from_int_rows(&[&[2, 0, 1], &[-1, 0, 0], &[0, 1, 0]]);
        assert_eq!(pm.matrix, expected);
        let chi = pullback_charpoly(&pm).unwrap();
        assert_eq!(chi, UniPoly::from_ints(&[1, 0, -2, 1]));
        let seq = degree_sequence(&pm, 9).unwrap();
        let expected_seq: Vec<BigInt> =
            [1, 2, 4, 7, 12, 20, 33, 54, 88, 143].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(seq, expected_seq);
    }

    #[test]
    fn empty_structure_is_one_by_one() {
        let s = OrbitListStructure::empty(3);
        let pm = f_star_matrix(&s).unwrap();
        assert_eq!(pm.matrix.rows(), 1);
        let seq = degree_sequence(&pm, 4).unwrap();
        let expected: Vec<BigInt> = [1, 3, 9, 27, 81].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(seq, expected);
        let delta = dynamical_degree(&pm, 32).unwrap();
        assert_eq!(delta.hi, Rat::from_integer(3.into()));
    }

    #[test]
    fn three_closed_singletons_power_six_identity() {
        let s = OrbitListStructure::new(vec![vec![2], vec![2], vec![2]], vec![], 2).unwrap();
        let pm = f_star_matrix(&s).unwrap();
        assert_eq!(pm.matrix.rows(), 7);
        assert!(pm.matrix.pow(6).unwrap().is_identity());
        assert!(!pm.matrix.pow(3).unwrap().is_identity());
    }

    #[test]
    fn open_list_head_has_no_cancellation() {
        // ℒᵒ = {{n}}: the α-column is H − F_Ω with no +F(e) term.
        let s = OrbitListStructure::new(vec![], vec![vec![3]], 2).unwrap();
        let pm = f_star_matrix(&s).unwrap();
        // Basis: H, F(end), F(mid), F(α). α-column = 3.
        assert_eq!(pm.matrix.entry(0, 3), &Rat::one());
        assert_eq!(pm.matrix.entry(1, 3), &(-Rat::one()));
        assert_eq!(pm.matrix.entry(2, 3), &Rat::zero());
        assert_eq!(pm.matrix.entry(3, 3), &Rat::zero());
    }
}
