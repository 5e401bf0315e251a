//! Closed-form characteristic polynomial of an orbit-list structure and the
//! comparison/limit transforms on structures.
//!
//! For each orbit list the pair `(T, S)` is: closed lists `T = x^{|ℒ|} − 1`,
//! open lists `T = x^{|ℒ|}`, and `S` sums `x^{|ℒ|_M}` over the complements
//! `M` of proper (cyclic, for closed) sub-intervals, plus a constant (the
//! list length for closed, 1 for open).  The characteristic polynomial is
//! assembled from these pairs and `(x − d)`.

use crate::birmap::{ListKind, OrbitListStructure};
use crate::error::{Error, Result};
use crate::exactmath::{
    count_real_roots_in, largest_real_root, Rat, RootInterval, UniPoly,
};
use num_traits::Zero;
use std::cmp::Ordering;

/// The `(T, S)` polynomial pair of a single orbit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListPolys {
    pub t: UniPoly,
    pub s: UniPoly,
    pub kind: ListKind,
}

/// Compute `(T, S)` for one list of orbit lengths.
pub fn t_s_polys(list: &[u64], kind: ListKind) -> Result<ListPolys> {
    if list.is_empty() {
        return Err(Error::InconsistentStructure("empty orbit list".into()));
    }
    if list.iter().any(|&n| n == 0) {
        return Err(Error::InconsistentStructure("orbit length 0".into()));
    }
    let ell = list.len();
    let total: u64 = list.iter().sum();
    let t = match kind {
        ListKind::Closed => UniPoly::x_power(total as usize).sub(&UniPoly::one()),
        ListKind::Open => UniPoly::x_power(total as usize),
    };
    // Sum x^{Σ_{j∉I} N_j} over proper sub-intervals I; cyclic for closed.
    let mut s = match kind {
        ListKind::Closed => UniPoly::from_ints(&[ell as i64]),
        ListKind::Open => UniPoly::one(),
    };
    match kind {
        ListKind::Open => {
            for a in 0..ell {
                for b in a..ell {
                    if b - a + 1 == ell {
                        continue; // not proper
                    }
                    let removed: u64 = list[a..=b].iter().sum();
                    s = s.add(&UniPoly::x_power((total - removed) as usize));
                }
            }
        }
        ListKind::Closed => {
            for start in 0..ell {
                for len in 1..ell {
                    let removed: u64 = (0..len).map(|k| list[(start + k) % ell]).sum();
                    s = s.add(&UniPoly::x_power((total - removed) as usize));
                }
            }
        }
    }
    Ok(ListPolys { t, s, kind })
}

fn structure_polys(s: &OrbitListStructure) -> Result<Vec<ListPolys>> {
    let mut out = Vec::with_capacity(s.closed.len() + s.open.len());
    for list in &s.closed {
        out.push(t_s_polys(list, ListKind::Closed)?);
    }
    for list in &s.open {
        out.push(t_s_polys(list, ListKind::Open)?);
    }
    Ok(out)
}

/// The characteristic polynomial of the pullback along an orbit-list
/// structure:
/// `χ = (x−d)·ΠT + (x−1)·Σ_i S_i·Π_{k≠i}T_k`, normalized monic.
pub fn charpoly_formula(s: &OrbitListStructure) -> Result<UniPoly> {
    if s.dim < 2 {
        return Err(Error::DimensionTooSmall(s.dim));
    }
    let polys = structure_polys(s)?;
    let x_minus_d = UniPoly::new(vec![Rat::from_integer(-(s.dim as i64).into()), Rat::from_integer(1.into())]);
    let x_minus_1 = UniPoly::from_ints(&[-1, 1]);
    let mut chi = x_minus_d;
    for p in &polys {
        chi = chi.mul(&p.t);
    }
    for i in 0..polys.len() {
        let mut term = polys[i].s.clone();
        for (k, p) in polys.iter().enumerate() {
            if k != i {
                term = term.mul(&p.t);
            }
        }
        chi = chi.add(&x_minus_1.mul(&term));
    }
    Ok(chi.monic())
}

/// The identity-permutation special case: all lists are closed singletons
/// `{N_0},…,{N_k}`, giving
/// `χ = (x−d)·Π(x^{N_j}−1) + (x−1)·Σ_j Π_{i≠j}(x^{N_i}−1)`, monic.
pub fn noetherian_charpoly(d: usize, lengths: &[u64]) -> Result<UniPoly> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if lengths.len() > d + 1 {
        return Err(Error::InconsistentStructure(format!(
            "at most {} singular orbits on P^{d}",
            d + 1
        )));
    }
    if lengths.iter().any(|&n| n == 0) {
        return Err(Error::InconsistentStructure("orbit length 0".into()));
    }
    let ts: Vec<UniPoly> = lengths
        .iter()
        .map(|&n| UniPoly::x_power(n as usize).sub(&UniPoly::one()))
        .collect();
    let x_minus_d = UniPoly::new(vec![
        Rat::from_integer(-(d as i64).into()),
        Rat::from_integer(1.into()),
    ]);
    let x_minus_1 = UniPoly::from_ints(&[-1, 1]);
    let mut chi = x_minus_d;
    for t in &ts {
        chi = chi.mul(t);
    }
    for j in 0..ts.len() {
        let mut term = x_minus_1.clone();
        for (i, t) in ts.iter().enumerate() {
            if i != j {
                term = term.mul(t);
            }
        }
        chi = chi.add(&term);
    }
    Ok(chi.monic())
}

/// The low-complexity special cases of the identity-permutation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// k = d−2 orbits... all lengths 1: degrees grow linearly.
    Case611a,
    /// k = d−1 and all but the last length 1: `Mⁿ` stabilizes.
    Case611b,
    /// k = d−1, last two lengths 2, the rest 1: even/odd subsequences affine.
    Case611c,
}

/// Match the sorted length vector against the three bounded-growth cases.
pub fn detect_special_case(d: usize, sorted_lengths: &[u64]) -> Option<SpecialCase> {
    let k1 = sorted_lengths.len(); // k + 1 lists
    if k1 == 0 || d < 2 {
        return None;
    }
    debug_assert!(sorted_lengths.windows(2).all(|w| w[0] <= w[1]));
    let all_ones = sorted_lengths.iter().all(|&n| n == 1);
    if k1 == d - 1 && all_ones {
        return Some(SpecialCase::Case611a);
    }
    if k1 == d && sorted_lengths[..k1 - 1].iter().all(|&n| n == 1) {
        return Some(SpecialCase::Case611b);
    }
    if k1 == d
        && k1 >= 2
        && sorted_lengths[k1 - 1] == 2
        && sorted_lengths[k1 - 2] == 2
        && sorted_lengths[..k1 - 2].iter().all(|&n| n == 1)
    {
        return Some(SpecialCase::Case611c);
    }
    None
}

fn rotations(list: &[u64]) -> Vec<Vec<u64>> {
    (0..list.len())
        .map(|s| list[s..].iter().chain(list[..s].iter()).copied().collect())
        .collect()
}

fn dominates(longer: &[u64], shorter: &[u64]) -> bool {
    longer.len() == shorter.len() && longer.iter().zip(shorter).all(|(a, b)| a >= b)
}

/// True iff `s2` has the same list pattern as `s1` with every orbit at least
/// as long (closed lists compared up to circular permutation, families up to
/// permutation of the lists).
pub fn has_longer_orbits(s1: &OrbitListStructure, s2: &OrbitListStructure) -> bool {
    fn match_families(
        base: &[Vec<u64>],
        longer: &[Vec<u64>],
        compatible: impl Fn(&[u64], &[u64]) -> bool + Copy,
    ) -> bool {
        if base.len() != longer.len() {
            return false;
        }
        fn backtrack(
            base: &[Vec<u64>],
            longer: &[Vec<u64>],
            used: &mut Vec<bool>,
            i: usize,
            compatible: impl Fn(&[u64], &[u64]) -> bool + Copy,
        ) -> bool {
            if i == base.len() {
                return true;
            }
            for j in 0..longer.len() {
                if !used[j] && compatible(&base[i], &longer[j]) {
                    used[j] = true;
                    if backtrack(base, longer, used, i + 1, compatible) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        let mut used = vec![false; longer.len()];
        backtrack(base, longer, &mut used, 0, compatible)
    }
    let closed_ok = match_families(&s1.closed, &s2.closed, |a, b| {
        rotations(b).iter().any(|rot| dominates(rot, a))
    });
    let open_ok = match_families(&s1.open, &s2.open, |a, b| dominates(b, a));
    closed_ok && open_ok
}

/// Which list of a structure a transform applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ListSelector {
    pub kind: ListKind,
    pub index: usize,
}

/// The structure governing `lim δ` as orbit `i` (0-based) of the selected
/// list grows without bound: the orbit is deleted, closed lists open up at
/// the cut, open lists split.
pub fn limit_structure(
    s: &OrbitListStructure,
    selector: ListSelector,
    i: usize,
) -> Result<OrbitListStructure> {
    let mut closed = s.closed.clone();
    let mut open = s.open.clone();
    let list = match selector.kind {
        ListKind::Closed => closed.get(selector.index),
        ListKind::Open => open.get(selector.index),
    }
    .ok_or_else(|| Error::InvalidInput(format!("no such list {:?}", selector)))?
    .clone();
    if i >= list.len() {
        return Err(Error::InvalidInput(format!(
            "orbit position {i} out of range for list of length {}",
            list.len()
        )));
    }
    let ell = list.len();
    match selector.kind {
        ListKind::Closed => {
            closed.remove(selector.index);
            // cyclic order after the removed orbit
            let tail: Vec<u64> = (1..ell).map(|k| list[(i + k) % ell]).collect();
            if !tail.is_empty() {
                open.push(tail);
            }
        }
        ListKind::Open => {
            open.remove(selector.index);
            let left: Vec<u64> = list[..i].to_vec();
            let right: Vec<u64> = list[i + 1..].to_vec();
            if !left.is_empty() {
                open.push(left);
            }
            if !right.is_empty() {
                open.push(right);
            }
        }
    }
    OrbitListStructure::new(closed, open, s.dim)
}

/// δ of an abstract structure: the largest real root of the list-formula
/// characteristic polynomial (exactly `d` for the empty structure).
pub fn delta_of_structure(s: &OrbitListStructure, precision: u32) -> Result<RootInterval> {
    let chi = charpoly_formula(s)?;
    largest_real_root(&chi, precision)?
        .ok_or_else(|| Error::InconsistentStructure("χ has no real root".into()))
}

/// Exact comparison of the dynamical degrees of two structures.
///
/// Refines isolating intervals until they separate; equality is decided
/// exactly through a common root of `gcd(χ₁, χ₂)` inside the overlap.
pub fn compare_deltas(a: &OrbitListStructure, b: &OrbitListStructure) -> Result<Ordering> {
    let chi_a = charpoly_formula(a)?;
    let chi_b = charpoly_formula(b)?;
    compare_largest_roots(&chi_a, &chi_b)
}

/// Compare the largest real roots of two polynomials, exactly.
pub fn compare_largest_roots(chi_a: &UniPoly, chi_b: &UniPoly) -> Result<Ordering> {
    let mut precision = 64u32;
    loop {
        let ra = largest_real_root(chi_a, precision)?
            .ok_or_else(|| Error::InconsistentStructure("χ has no real root".into()))?;
        let rb = largest_real_root(chi_b, precision)?
            .ok_or_else(|| Error::InconsistentStructure("χ has no real root".into()))?;
        if ra.hi <= rb.lo {
            return Ok(Ordering::Less);
        }
        if rb.hi <= ra.lo {
            return Ok(Ordering::Greater);
        }
        // Overlapping brackets: equal only through a common root.
        let sf_a = chi_a.squarefree_part()?;
        let sf_b = chi_b.squarefree_part()?;
        let g = sf_a.gcd(&sf_b);
        if g.degree().is_some_and(|d| d > 0) {
            let lo = if ra.lo >= rb.lo { ra.lo.clone() } else { rb.lo.clone() };
            let hi = if ra.hi <= rb.hi { ra.hi.clone() } else { rb.hi.clone() };
            // A root of g at hi inside both brackets is both roots at once.
            if g.eval(&hi).is_zero() {
                return Ok(Ordering::Equal);
            }
            if lo < hi && !g.eval(&lo).is_zero() && count_real_roots_in(&g, &lo, &hi)? > 0 {
                return Ok(Ordering::Equal);
            }
        }
        precision *= 2;
        if precision > 4096 {
            return Err(Error::ResourceLimit(
                "could not separate dynamical degrees at 4096 bits".into(),
            ));
        }
    }
}

/// Smallest insertion length `M ≤ m_max` (at 0-based slot `pos+1` of the
/// selected list) for which δ strictly increases; `None` when δ never
/// increases within the bound.  Brackets the threshold the theory calls M*.
pub fn insertion_threshold(
    s: &OrbitListStructure,
    selector: ListSelector,
    pos: usize,
    m_max: u64,
) -> Result<Option<u64>> {
    for m in 1..=m_max {
        let grown = insert_orbit(s, selector, pos, m)?;
        if compare_deltas(s, &grown)? == Ordering::Less {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Insert an orbit of length `m` after 0-based position `pos`.
pub fn insert_orbit(
    s: &OrbitListStructure,
    selector: ListSelector,
    pos: usize,
    m: u64,
) -> Result<OrbitListStructure> {
    let mut closed = s.closed.clone();
    let mut open = s.open.clone();
    let list = match selector.kind {
        ListKind::Closed => closed.get_mut(selector.index),
        ListKind::Open => open.get_mut(selector.index),
    }
    .ok_or_else(|| Error::InvalidInput(format!("no such list {:?}", selector)))?;
    if pos >= list.len() {
        return Err(Error::InvalidInput("insert position out of range".into()));
    }
    list.insert(pos + 1, m);
    OrbitListStructure::new(closed, open, s.dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(lists: &[&[u64]], d: usize) -> OrbitListStructure {
        OrbitListStructure::new(lists.iter().map(|l| l.to_vec()).collect(), vec![], d).unwrap()
    }

    #[test]
    fn appendix_open_example() {
        // open {7,10,8}: T = x^25, S = 1 + x^18 + x^15 + x^17 + x^8 + x^7.
        let lp = t_s_polys(&[7, 10, 8], ListKind::Open).unwrap();
        assert_eq!(lp.t, UniPoly::x_power(25));
        let mut expected = UniPoly::one();
        for k in [18usize, 15, 17, 8, 7] {
            expected = expected.add(&UniPoly::x_power(k));
        }
        assert_eq!(lp.s, expected);
    }

    #[test]
    fn singleton_lists() {
        let c = t_s_polys(&[4], ListKind::Closed).unwrap();
        assert_eq!(c.t, UniPoly::x_power(4).sub(&UniPoly::one()));
        assert_eq!(c.s, UniPoly::one());
        let o = t_s_polys(&[4], ListKind::Open).unwrap();
        assert_eq!(o.t, UniPoly::x_power(4));
        assert_eq!(o.s, UniPoly::one());
    }

    #[test]
    fn formula_single_orbit() {
        // ℒᶜ = {{2}}, d=2: (x−2)(x²−1) + (x−1) = x³ − 2x² + 1.
        let chi = charpoly_formula(&closed(&[&[2]], 2)).unwrap();
        assert_eq!(chi, UniPoly::from_ints(&[1, 0, -2, 1]));
    }

    #[test]
    fn formula_empty_structure() {
        let chi = charpoly_formula(&OrbitListStructure::empty(5)).unwrap();
        assert_eq!(chi, UniPoly::from_ints(&[-5, 1]));
    }

    #[test]
    fn noetherian_matches_formula() {
        for (d, lengths) in [(2usize, vec![2u64]), (3, vec![2]), (3, vec![1, 2, 5]), (4, vec![3, 3])] {
            let direct = noetherian_charpoly(d, &lengths).unwrap();
            let via_formula = charpoly_formula(&closed(
                &lengths.iter().map(std::slice::from_ref).collect::<Vec<_>>(),
                d,
            ))
            .unwrap();
            assert_eq!(direct, via_formula);
        }
        // d=3, {2}: (x−1)(x²−2x−2)
        let chi = noetherian_charpoly(3, &[2]).unwrap();
        let expected = UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[-2, -2, 1]));
        assert_eq!(chi, expected);
    }

    #[test]
    fn special_cases() {
        assert_eq!(detect_special_case(3, &[1, 1]), Some(SpecialCase::Case611a));
        assert_eq!(detect_special_case(3, &[1, 1, 5]), Some(SpecialCase::Case611b));
        assert_eq!(detect_special_case(3, &[1, 2, 2]), Some(SpecialCase::Case611c));
        assert_eq!(detect_special_case(3, &[2, 2]), None);
        assert_eq!(detect_special_case(4, &[1, 1, 2, 2]), Some(SpecialCase::Case611c));
        assert_eq!(detect_special_case(2, &[2, 2]), None);
    }

    #[test]
    fn longer_orbit_comparisons() {
        let a = closed(&[&[2]], 2);
        let b = closed(&[&[3]], 2);
        assert!(has_longer_orbits(&a, &b));
        assert!(!has_longer_orbits(&b, &a));
        // circular permutation allowed for closed lists
        let c = closed(&[&[2, 3]], 2);
        let d = closed(&[&[3, 2]], 2);
        assert!(has_longer_orbits(&c, &d));
        assert!(has_longer_orbits(&d, &c));
        // different pattern
        let e = closed(&[&[2], &[2]], 2);
        assert!(!has_longer_orbits(&a, &e));
    }

    #[test]
    fn limit_structure_cases() {
        let s = closed(&[&[5, 6, 7]], 3);
        let lim = limit_structure(&s, ListSelector { kind: ListKind::Closed, index: 0 }, 1).unwrap();
        assert!(lim.closed.is_empty());
        assert_eq!(lim.open, vec![vec![7, 5]]);

        let o = OrbitListStructure::new(vec![], vec![vec![5, 6, 7]], 3).unwrap();
        let first = limit_structure(&o, ListSelector { kind: ListKind::Open, index: 0 }, 0).unwrap();
        assert_eq!(first.open, vec![vec![6, 7]]);
        let mid = limit_structure(&o, ListSelector { kind: ListKind::Open, index: 0 }, 1).unwrap();
        let mut got = mid.open.clone();
        got.sort();
        assert_eq!(got, vec![vec![5], vec![7]]);
        let last = limit_structure(&o, ListSelector { kind: ListKind::Open, index: 0 }, 2).unwrap();
        assert_eq!(last.open, vec![vec![5, 6]]);
    }

    #[test]
    fn delta_values() {
        let phi = delta_of_structure(&closed(&[&[2]], 2), 64).unwrap();
        assert!(phi.decimal(9).starts_with("1.618033988"));
        let empty = delta_of_structure(&OrbitListStructure::empty(5), 32).unwrap();
        assert_eq!(empty.hi, Rat::from_integer(5.into()));
    }

    #[test]
    fn delta_comparison_exact_equality() {
        let a = closed(&[&[2, 3]], 2);
        let b = closed(&[&[3, 2]], 2);
        assert_eq!(compare_deltas(&a, &b).unwrap(), Ordering::Equal);
        let c = closed(&[&[2]], 2);
        let d = closed(&[&[3]], 2);
        assert_eq!(compare_deltas(&c, &d).unwrap(), Ordering::Less);
    }
}
