//! Independent degree oracle: push a generic rational line through the map
//! symbolically and read off `deg(fⁿ)` as the common degree of the
//! components after clearing their univariate GCD and content.
//!
//! This is deliberately brute force — it is the ground truth the pullback
//! matrices are validated against, so it shares no code path with them.

use crate::birmap::BirationalMapSpec;
use crate::error::{Error, Result};
use crate::exactmath::zpoly::{zpoly_gcd_many, ZPoly};
use crate::parallel;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// What the oracle iterates: the Cremona involution alone, or `L∘J`.
#[derive(Debug, Clone)]
pub enum OracleMap<'a> {
    JOnly { dim: usize },
    LJ(&'a BirationalMapSpec),
}

impl OracleMap<'_> {
    fn dim(&self) -> usize {
        match self {
            OracleMap::JOnly { dim } => *dim,
            OracleMap::LJ(spec) => spec.dim(),
        }
    }

    fn apply_linear(&self, comps: Vec<ZPoly>) -> Vec<ZPoly> {
        match self {
            OracleMap::JOnly { .. } => comps,
            OracleMap::LJ(spec) => {
                let rows = spec.l_int();
                parallel::map_indexed(rows.len(), 2, |i| {
                    let mut acc = ZPoly::zero();
                    for (a, c) in rows[i].iter().zip(&comps) {
                        if !a.is_zero() {
                            acc = acc.add(&c.mul_scalar(a));
                        }
                    }
                    acc
                })
            }
        }
    }
}

/// Oracle tuning; the degree cap keeps runs at desk scale.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub degree_cap: usize,
    pub reseed_attempts: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            degree_cap: 5000,
            reseed_attempts: 5,
        }
    }
}

/// Degrees `d_0..d_n` of the iterates along a seeded generic line.
///
/// The whole computation is run twice with independently derived lines; a
/// disagreement means a line was non-generic and is reported as an error.
pub fn generic_line_degree(map: &OracleMap, n: usize, seed: u64) -> Result<Vec<u64>> {
    generic_line_degree_with(map, n, seed, &OracleOptions::default())
}

pub fn generic_line_degree_with(
    map: &OracleMap,
    n: usize,
    seed: u64,
    opts: &OracleOptions,
) -> Result<Vec<u64>> {
    let (first, second) = parallel::join(
        || single_run(map, n, seed, opts),
        || single_run(map, n, seed ^ 0x9e37_79b9_7f4a_7c15, opts),
    );
    let first = first?;
    let second = second?;
    if first != second {
        return Err(Error::OracleDisagreement { first, second });
    }
    Ok(first)
}

fn single_run(map: &OracleMap, n: usize, seed: u64, opts: &OracleOptions) -> Result<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    'reseed: loop {
        attempts += 1;
        if attempts > opts.reseed_attempts {
            return Err(Error::DegenerateLine(opts.reseed_attempts));
        }
        let mut comps = random_line(map.dim(), &mut rng);
        if clear_common(&mut comps).is_none() {
            continue 'reseed;
        }
        let mut degrees = vec![common_degree(&comps)];
        for _ in 0..n {
            let current = common_degree(&comps);
            let projected = current * map.dim();
            if projected > opts.degree_cap {
                return Err(Error::ResourceLimit(format!(
                    "oracle degree cap {} exceeded (next step reaches degree {})",
                    opts.degree_cap, projected
                )));
            }
            comps = match oracle_step(map, comps) {
                Some(next) => next,
                None => continue 'reseed, // a component vanished: degenerate line
            };
            degrees.push(common_degree(&comps));
        }
        return Ok(degrees);
    }
}

fn random_line(dim: usize, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    (0..=dim)
        .map(|_| {
            let u = BigInt::from(rng.gen_range(-100i64..=100));
            let v = BigInt::from(rng.gen_range(-100i64..=100));
            ZPoly::new(vec![u, v])
        })
        .collect()
}

fn common_degree(comps: &[ZPoly]) -> usize {
    comps
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0)
}

/// One `J`-then-linear step; `None` when a component vanishes.
fn oracle_step(map: &OracleMap, comps: Vec<ZPoly>) -> Option<Vec<ZPoly>> {
    if comps.iter().any(|c| c.is_zero()) {
        return None;
    }
    // J: component ĵ is the product of the others, computed as a balanced
    // total product followed by exact divisions.
    let total = ZPoly::product(&comps);
    let j_image = parallel::map_slice(&comps, 2, |c| {
        total
            .exact_div(c)
            .expect("each component divides the total product")
    });
    let mut next = map.apply_linear(j_image);
    if clear_common(&mut next).is_none() {
        return None;
    }
    Some(next)
}

/// Divide all components by their exact univariate GCD and integer content.
/// `None` when a component is identically zero.
fn clear_common(comps: &mut [ZPoly]) -> Option<()> {
    if comps.iter().any(|c| c.is_zero()) {
        return None;
    }
    let g = zpoly_gcd_many(comps);
    if g.degree().is_some_and(|d| d > 0) {
        for c in comps.iter_mut() {
            *c = c.exact_div(&g).expect("GCD divides every component");
        }
    }
    let mut content = BigInt::zero();
    for c in comps.iter() {
        content = content.gcd(&c.content());
        if content.is_one() {
            break;
        }
    }
    if !content.is_one() && !content.is_zero() {
        for c in comps.iter_mut() {
            *c = ZPoly::new(c.coeffs.iter().map(|x| x / &content).collect());
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_alone_is_an_involution() {
        let seq = generic_line_degree(&OracleMap::JOnly { dim: 2 }, 2, 1).unwrap();
        assert_eq!(seq, vec![1, 2, 1]);
    }

    #[test]
    fn j_alone_dim3() {
        let seq = generic_line_degree(&OracleMap::JOnly { dim: 3 }, 4, 7).unwrap();
        assert_eq!(seq, vec![1, 3, 1, 3, 1]);
    }

    #[test]
    fn degree_cap_aborts() {
        let spec = BirationalMapSpec::from_int_rows(
            2,
            &[&[1, 2, 3], &[0, 1, 5], &[4, -1, 1]],
        )
        .unwrap();
        let err = generic_line_degree_with(
            &OracleMap::LJ(&spec),
            40,
            3,
            &OracleOptions {
                degree_cap: 64,
                reseed_attempts: 5,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
