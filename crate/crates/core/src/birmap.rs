//! The maps `J` and `f = L∘J`, orbit computation, and extraction of the
//! orbit-list structure `(ℒᶜ, ℒᵒ)`.
//!
//! Orbit points are iterated exactly while their coordinates stay small.
//! Long nonsingular orbits are then *certified* modulo two fixed word-size
//! primes: a coordinate that is nonzero mod either prime is nonzero over Q,
//! so "all points generic through step n" is still an exact statement.  Only
//! a coordinate vanishing modulo both primes (which for a truly nonsingular
//! orbit essentially never happens) forces an exact recomputation, protected
//! by the coordinate-size guard.

use crate::error::{Error, Result};
use crate::exactmath::{Rat, RatMatrix};
use crate::parallel;
use crate::projgeom::{PointTag, ProjPoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

/// A birational map `f = L∘J` of **P**^d given by its invertible linear part.
#[derive(Debug, Clone)]
pub struct BirationalMapSpec {
    dim: usize,
    l: RatMatrix,
    /// L cleared to coprime integer entries (a projective scalar away from L).
    l_int: Vec<Vec<BigInt>>,
}

impl BirationalMapSpec {
    pub fn new(dim: usize, l: RatMatrix) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if l.rows() != dim + 1 || l.cols() != dim + 1 {
            return Err(Error::DimensionMismatch(format!(
                "L must be {0}x{0} for P^{1}",
                dim + 1,
                dim
            )));
        }
        if l.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        // Clear denominators and content.
        let mut scale = BigInt::one();
        for i in 0..=dim {
            for j in 0..=dim {
                let d = l.entry(i, j).denom();
                let g = scale.gcd(d);
                scale = scale / g * d;
            }
        }
        let mut l_int: Vec<Vec<BigInt>> = (0..=dim)
            .map(|i| {
                (0..=dim)
                    .map(|j| {
                        let e = l.entry(i, j);
                        e.numer() * (&scale / e.denom())
                    })
                    .collect()
            })
            .collect();
        let mut content = BigInt::zero();
        for row in &l_int {
            for e in row {
                content = content.gcd(e);
            }
        }
        if !content.is_one() && !content.is_zero() {
            for row in l_int.iter_mut() {
                for e in row.iter_mut() {
                    *e = &*e / &content;
                }
            }
        }
        Ok(BirationalMapSpec { dim, l, l_int })
    }

    pub fn from_int_rows(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(dim, RatMatrix::from_int_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn l_matrix(&self) -> &RatMatrix {
        &self.l
    }

    pub(crate) fn l_int(&self) -> &[Vec<BigInt>] {
        &self.l_int
    }

    /// `α_j = L·e_j`, the image point of the exceptional hypersurface `Σ_j`.
    pub fn alpha(&self, j: usize) -> Result<ProjPoint> {
        if j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        Ok(ProjPoint::from_integers(
            self.l_int.iter().map(|row| row[j].clone()).collect(),
        ))
    }

    fn apply_l_int(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.l_int
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for (a, x) in row.iter().zip(coords) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }
}

/// The Cremona involution: `x_ĵ = Π_{i≠j} x_i`, canonicalized.  On `Σ_j^*`
/// this collapses to `e_j`.  Errors on indeterminate input (two or more zero
/// coordinates).
pub fn apply_j(p: &ProjPoint) -> Result<ProjPoint> {
    if let PointTag::Indeterminate = p.classify().tag {
        return Err(Error::IndeterminateInput(p.to_text()));
    }
    Ok(ProjPoint::from_integers(j_products(p.coords())))
}

fn j_products(coords: &[BigInt]) -> Vec<BigInt> {
    let n = coords.len();
    let mut prefix = vec![BigInt::one(); n + 1];
    for i in 0..n {
        prefix[i + 1] = &prefix[i] * &coords[i];
    }
    let mut suffix = vec![BigInt::one(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] * &coords[i];
    }
    (0..n).map(|i| &prefix[i] * &suffix[i + 1]).collect()
}

/// `f(p) = L·J(p)`, canonicalized.
pub fn apply_f(spec: &BirationalMapSpec, p: &ProjPoint) -> Result<ProjPoint> {
    if p.dim() != spec.dim {
        return Err(Error::DimensionMismatch(format!(
            "point in P^{}, map on P^{}",
            p.dim(),
            spec.dim
        )));
    }
    if let PointTag::Indeterminate = p.classify().tag {
        return Err(Error::IndeterminateInput(p.to_text()));
    }
    Ok(ProjPoint::from_integers(
        spec.apply_l_int(&j_products(p.coords())),
    ))
}

/// How an orbit ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// The landing point is the coordinate point `e_k`.
    EndsAtE(usize),
    /// The landing point lies on exactly one coordinate hyperplane `Σ_k`.
    EndsAtSigmaStar(usize),
    /// The landing point is indeterminate but not a coordinate point.
    EndsAtIndeterminacyOther,
    /// All examined points were generic.
    NonsingularWithinBound(NonsingularInfo),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonsingularInfo {
    /// Number of orbit points certified generic.
    pub verified: usize,
    /// A point repeated: the orbit is periodic, hence never singular.
    pub periodic: bool,
    /// Iteration stopped early on the coordinate-size guard.
    pub guard_stopped: bool,
}

/// Orbit of `α_j = L·e_j`.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub start_index: usize,
    /// Exactly computed points, starting at `α_j`.  For singular verdicts
    /// this is the whole orbit including the landing point; for long
    /// nonsingular orbits it is the prefix computed before certification
    /// switched to modular arithmetic.
    pub points: Vec<ProjPoint>,
    pub verdict: OrbitVerdict,
}

impl Orbit {
    /// Orbit length (α_j through the landing point) for singular orbits.
    pub fn len(&self) -> Option<u64> {
        match self.verdict {
            OrbitVerdict::NonsingularWithinBound(_) => None,
            _ => Some(self.points.len() as u64),
        }
    }

    pub fn is_singular(&self) -> bool {
        !matches!(self.verdict, OrbitVerdict::NonsingularWithinBound(_))
    }
}

/// Tuning knobs for orbit iteration.
#[derive(Debug, Clone)]
pub struct OrbitOptions {
    /// Maximum number of orbit points to examine.
    pub cap: usize,
    /// Hard guard on exact coordinate size, in decimal digits.
    pub max_coord_digits: usize,
    /// Coordinate bit size beyond which certification goes modular.
    pub exact_bit_budget: u64,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            cap: 4096,
            max_coord_digits: 1_000_000,
            exact_bit_budget: 8192,
        }
    }
}

impl OrbitOptions {
    pub fn with_cap(cap: usize) -> Self {
        OrbitOptions {
            cap,
            ..Default::default()
        }
    }

    fn guard_bits(&self) -> u64 {
        // digits·log2(10), rounded up
        (self.max_coord_digits as f64 * std::f64::consts::LOG2_10).ceil() as u64
    }
}

const CERT_PRIMES: [u64; 6] = [
    (1 << 61) - 1,
    2305843009213693967,
    2305843009213693973,
    (1 << 31) - 1,
    4611686018427387847,
    4611686018427387817,
];

struct ModLane {
    p: u64,
    l_rows: Vec<Vec<u64>>,
    cur: Vec<u64>,
}

impl ModLane {
    fn new(spec: &BirationalMapSpec, point: &ProjPoint, p: u64) -> Option<ModLane> {
        let pb = BigInt::from(p);
        let reduce = |x: &BigInt| x.mod_floor(&pb).to_u64().unwrap();
        let l_rows: Vec<Vec<u64>> = spec.l_int.iter().map(|r| r.iter().map(reduce).collect()).collect();
        if l_rows.iter().all(|r| r.iter().all(|&e| e == 0)) {
            return None;
        }
        let cur: Vec<u64> = point.coords().iter().map(reduce).collect();
        if cur.iter().all(|&c| c == 0) {
            return None;
        }
        Some(ModLane { p, l_rows, cur })
    }

    fn step(&mut self) -> bool {
        let p = self.p;
        let n = self.cur.len();
        let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut prefix = vec![1u64; n + 1];
        for i in 0..n {
            prefix[i + 1] = mul(prefix[i], self.cur[i]);
        }
        let mut suffix = vec![1u64; n + 1];
        for i in (0..n).rev() {
            suffix[i] = mul(suffix[i + 1], self.cur[i]);
        }
        let j_image: Vec<u64> = (0..n).map(|i| mul(prefix[i], suffix[i + 1])).collect();
        let next: Vec<u64> = self
            .l_rows
            .iter()
            .map(|row| {
                let mut acc = 0u128;
                for (a, x) in row.iter().zip(&j_image) {
                    acc = (acc + *a as u128 * *x as u128) % p as u128;
                }
                acc as u64
            })
            .collect();
        let alive = next.iter().any(|&c| c != 0);
        self.cur = next;
        alive
    }

    /// Projectively normalized representative for cycle hashing.
    fn normalized(&self) -> Vec<u64> {
        let p = self.p;
        let first = self.cur.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if first == 0 {
            return self.cur.clone();
        }
        let inv = mod_inv(first, p);
        self.cur
            .iter()
            .map(|&c| ((c as u128 * inv as u128) % p as u128) as u64)
            .collect()
    }

    fn zero_set(&self) -> Vec<usize> {
        self.cur
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i)
            .collect()
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = ((result as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    result
}

/// Exact orbit prefix of `steps` points, with the coordinate-size guard.
fn exact_orbit_points(
    spec: &BirationalMapSpec,
    j: usize,
    steps: usize,
    guard_bits: u64,
) -> Result<Vec<ProjPoint>> {
    let mut points = vec![spec.alpha(j)?];
    while points.len() < steps {
        let current = points.last().unwrap();
        if !current.is_generic() {
            break;
        }
        if current.max_bits() > guard_bits {
            return Err(Error::ResourceLimit(format!(
                "orbit coordinate exceeded {} bits at step {}",
                guard_bits,
                points.len()
            )));
        }
        let next = apply_f(spec, current)?;
        points.push(next);
    }
    Ok(points)
}

/// Compute the orbit `𝒪_j = 𝒪(α_j)` with default resource options.
pub fn compute_orbit(spec: &BirationalMapSpec, j: usize, cap: usize) -> Result<Orbit> {
    compute_orbit_with(spec, j, &OrbitOptions::with_cap(cap))
}

/// Compute the orbit of `α_j`, stopping the step before a point lands in
/// `ℰ ∪ ℐ` (the landing point is recorded), or after `cap` generic points.
pub fn compute_orbit_with(spec: &BirationalMapSpec, j: usize, opts: &OrbitOptions) -> Result<Orbit> {
    if opts.cap < 1 {
        return Err(Error::InvalidInput("orbit cap must be at least 1".into()));
    }
    let alpha = spec.alpha(j)?;
    let mut points = vec![alpha.clone()];
    let mut seen: HashSet<ProjPoint> = HashSet::new();
    seen.insert(alpha);
    let guard_bits = opts.guard_bits();

    // Exact lane.
    loop {
        let current = points.last().unwrap();
        match current.classify().tag {
            PointTag::Indeterminate => {
                let verdict = match current.as_coordinate_point() {
                    Some(k) => OrbitVerdict::EndsAtE(k),
                    None => OrbitVerdict::EndsAtIndeterminacyOther,
                };
                return Ok(Orbit {
                    start_index: j,
                    points,
                    verdict,
                });
            }
            PointTag::OnExceptional(k) => {
                return Ok(Orbit {
                    start_index: j,
                    points,
                    verdict: OrbitVerdict::EndsAtSigmaStar(k),
                });
            }
            PointTag::Generic => {
                if points.len() >= opts.cap {
                    return Ok(Orbit {
                        start_index: j,
                        points,
                        verdict: OrbitVerdict::NonsingularWithinBound(NonsingularInfo {
                            verified: opts.cap,
                            periodic: false,
                            guard_stopped: false,
                        }),
                    });
                }
                if current.max_bits() > opts.exact_bit_budget {
                    break; // go modular
                }
                if current.max_bits() > guard_bits {
                    return Err(Error::ResourceLimit(format!(
                        "orbit coordinate exceeded {} decimal digits at step {}",
                        opts.max_coord_digits,
                        points.len()
                    )));
                }
                let next = apply_f(spec, current)?;
                if !seen.insert(next.clone()) {
                    points.push(next);
                    let verified = points.len();
                    return Ok(Orbit {
                        start_index: j,
                        points,
                        verdict: OrbitVerdict::NonsingularWithinBound(NonsingularInfo {
                            verified,
                            periodic: true,
                            guard_stopped: false,
                        }),
                    });
                }
                points.push(next);
            }
        }
    }

    // Modular certification lane.
    let mut prime_pool = CERT_PRIMES.iter().copied();
    let mut make_lane = |point: &ProjPoint, pool: &mut dyn Iterator<Item = u64>| -> Option<ModLane> {
        for p in pool {
            if let Some(lane) = ModLane::new(spec, point, p) {
                return Some(lane);
            }
        }
        None
    };
    let start_point = points.last().unwrap().clone();
    let mut lane_a = make_lane(&start_point, &mut prime_pool);
    let mut lane_b = make_lane(&start_point, &mut prime_pool);
    let mut count = points.len(); // points certified generic so far
    let mut cycles: HashMap<(Vec<u64>, Vec<u64>), usize> = HashMap::new();
    loop {
        if count >= opts.cap {
            return Ok(Orbit {
                start_index: j,
                points,
                verdict: OrbitVerdict::NonsingularWithinBound(NonsingularInfo {
                    verified: opts.cap,
                    periodic: false,
                    guard_stopped: false,
                }),
            });
        }
        let (a_alive, b_alive) = match (&mut lane_a, &mut lane_b) {
            (Some(a), Some(b)) => parallel::join(|| a.step(), || b.step()),
            (Some(a), None) => (a.step(), false),
            (None, Some(b)) => (false, b.step()),
            (None, None) => (false, false),
        };
        if !a_alive {
            lane_a = None;
        }
        if !b_alive {
            lane_b = None;
        }
        let verified_generic = match (&lane_a, &lane_b) {
            // A coordinate nonzero in either lane is truly nonzero, so only
            // a coordinate vanishing in both is suspicious.
            (Some(a), Some(b)) => {
                let zb = b.zero_set();
                a.zero_set().iter().all(|i| !zb.contains(i))
            }
            (Some(a), None) => a.zero_set().is_empty(),
            (None, Some(b)) => b.zero_set().is_empty(),
            (None, None) => false,
        };
        count += 1;
        if verified_generic {
            if let (Some(a), Some(b)) = (&lane_a, &lane_b) {
                let key = (a.normalized(), b.normalized());
                if cycles.insert(key, count).is_some() {
                    return Ok(Orbit {
                        start_index: j,
                        points,
                        verdict: OrbitVerdict::NonsingularWithinBound(NonsingularInfo {
                            verified: count,
                            periodic: true,
                            guard_stopped: false,
                        }),
                    });
                }
            }
            continue;
        }
        // Candidate non-generic point (or lanes lost): confirm exactly.
        let exact = exact_orbit_points(spec, j, count, guard_bits)?;
        let last = exact.last().unwrap();
        match last.classify().tag {
            PointTag::Indeterminate => {
                let verdict = match last.as_coordinate_point() {
                    Some(k) => OrbitVerdict::EndsAtE(k),
                    None => OrbitVerdict::EndsAtIndeterminacyOther,
                };
                return Ok(Orbit {
                    start_index: j,
                    points: exact,
                    verdict,
                });
            }
            PointTag::OnExceptional(k) => {
                return Ok(Orbit {
                    start_index: j,
                    points: exact,
                    verdict: OrbitVerdict::EndsAtSigmaStar(k),
                });
            }
            PointTag::Generic => {
                // Unlucky primes; rebuild lanes on fresh primes.
                lane_a = make_lane(last, &mut prime_pool);
                lane_b = make_lane(last, &mut prime_pool);
                cycles.clear();
                if lane_a.is_none() && lane_b.is_none() {
                    return Ok(Orbit {
                        start_index: j,
                        points,
                        verdict: OrbitVerdict::NonsingularWithinBound(NonsingularInfo {
                            verified: count,
                            periodic: false,
                            guard_stopped: true,
                        }),
                    });
                }
            }
        }
    }
}

/// The orbit-list structure `(ℒᶜ, ℒᵒ)`: closed and open lists of singular
/// orbit lengths.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct OrbitListStructure {
    pub closed: Vec<Vec<u64>>,
    pub open: Vec<Vec<u64>>,
    #[serde(rename = "d")]
    pub dim: usize,
}

impl OrbitListStructure {
    pub fn new(closed: Vec<Vec<u64>>, open: Vec<Vec<u64>>, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        for list in closed.iter().chain(open.iter()) {
            if list.is_empty() {
                return Err(Error::InconsistentStructure("empty orbit list".into()));
            }
            if list.iter().any(|&n| n == 0) {
                return Err(Error::InconsistentStructure("orbit length 0".into()));
            }
        }
        Ok(OrbitListStructure { closed, open, dim })
    }

    pub fn empty(dim: usize) -> Self {
        OrbitListStructure {
            closed: Vec::new(),
            open: Vec::new(),
            dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty() && self.open.is_empty()
    }

    pub fn total_orbits(&self) -> usize {
        self.closed.iter().chain(self.open.iter()).map(Vec::len).sum()
    }

    pub fn total_length(&self) -> u64 {
        self.closed
            .iter()
            .chain(self.open.iter())
            .flat_map(|l| l.iter())
            .sum()
    }

    /// Canonical form: closed lists rotated to their lexicographically least
    /// rotation, then both families sorted.
    pub fn canonical(&self) -> OrbitListStructure {
        let mut closed: Vec<Vec<u64>> = self.closed.iter().map(|l| min_rotation(l)).collect();
        closed.sort();
        let mut open = self.open.clone();
        open.sort();
        OrbitListStructure {
            closed,
            open,
            dim: self.dim,
        }
    }
}

fn min_rotation(list: &[u64]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for s in 0..list.len() {
        let rot: Vec<u64> = list[s..].iter().chain(list[..s].iter()).copied().collect();
        if best.as_ref().is_none_or(|b| &rot < b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

impl PartialEq for OrbitListStructure {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let a = self.canonical();
        let b = other.canonical();
        a.closed == b.closed && a.open == b.open
    }
}

impl Eq for OrbitListStructure {}

/// Index bookkeeping for one orbit list of an elementary map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitList {
    pub kind: ListKind,
    /// Start indices of the orbits in chain order.
    pub starts: Vec<usize>,
    pub lengths: Vec<u64>,
    /// Endpoint index of each orbit (`𝒪_starts[t]` ends at `e_endpoints[t]`).
    pub endpoints: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListKind {
    Closed,
    Open,
}

/// Everything `build_orbit_structure` learns about an elementary map.
#[derive(Debug, Clone)]
pub struct ElementaryStructure {
    pub structure: OrbitListStructure,
    pub lists: Vec<OrbitList>,
    /// 𝒜: start indices of the first orbits of open lists.
    pub alpha_set: BTreeSet<usize>,
    /// Ω: endpoint indices of all singular orbits.
    pub omega_set: BTreeSet<usize>,
    pub orbits: Vec<Orbit>,
}

#[derive(Debug, Clone)]
pub enum ElementaryResult {
    Elementary(Box<ElementaryStructure>),
    /// Some singular orbit does not end at a coordinate point; the offending
    /// orbit is returned as a diagnostic.
    NotElementary { diagnostic: Box<Orbit> },
}

/// Compute all orbits `𝒪_0..𝒪_d`, decide elementarity, and group the
/// singular orbits into maximal lists by the endpoint-chaining rule.
pub fn build_orbit_structure(spec: &BirationalMapSpec, cap: usize) -> Result<ElementaryResult> {
    build_orbit_structure_with(spec, &OrbitOptions::with_cap(cap))
}

pub fn build_orbit_structure_with(
    spec: &BirationalMapSpec,
    opts: &OrbitOptions,
) -> Result<ElementaryResult> {
    let results = parallel::map_indexed(spec.dim + 1, 2, |j| compute_orbit_with(spec, j, opts));
    let mut orbits = Vec::with_capacity(spec.dim + 1);
    for r in results {
        orbits.push(r?);
    }
    // Elementary means every singular orbit ends at some e_k.
    for orbit in &orbits {
        match orbit.verdict {
            OrbitVerdict::EndsAtSigmaStar(_) | OrbitVerdict::EndsAtIndeterminacyOther => {
                return Ok(ElementaryResult::NotElementary {
                    diagnostic: Box::new(orbit.clone()),
                });
            }
            _ => {}
        }
    }
    let mut singular: BTreeMap<usize, (u64, usize)> = BTreeMap::new();
    for orbit in &orbits {
        if let OrbitVerdict::EndsAtE(k) = orbit.verdict {
            singular.insert(orbit.start_index, (orbit.len().unwrap(), k));
        }
    }
    // The chaining rule needs distinct endpoints.
    let mut endpoint_owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (&j, &(_, k)) in &singular {
        if let Some(&other) = endpoint_owner.get(&k) {
            return Ok(ElementaryResult::NotElementary {
                diagnostic: Box::new(
                    orbits.iter().find(|o| o.start_index == j.max(other)).unwrap().clone(),
                ),
            });
        }
        endpoint_owner.insert(k, j);
    }
    // Open lists start where no singular orbit's endpoint points.
    let heads: Vec<usize> = singular
        .keys()
        .copied()
        .filter(|j| !endpoint_owner.contains_key(j))
        .collect();
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    let mut lists: Vec<OrbitList> = Vec::new();
    for &head in &heads {
        let mut list = OrbitList {
            kind: ListKind::Open,
            starts: Vec::new(),
            lengths: Vec::new(),
            endpoints: Vec::new(),
        };
        let mut j = head;
        loop {
            let (len, end) = singular[&j];
            visited.insert(j);
            list.starts.push(j);
            list.lengths.push(len);
            list.endpoints.push(end);
            match singular.get(&end) {
                Some(_) if !visited.contains(&end) => j = end,
                _ => break,
            }
        }
        lists.push(list);
    }
    // Remaining singular orbits sit on cycles: closed lists.
    let remaining: Vec<usize> = singular
        .keys()
        .copied()
        .filter(|j| !visited.contains(j))
        .collect();
    for &start in &remaining {
        if visited.contains(&start) {
            continue;
        }
        let mut list = OrbitList {
            kind: ListKind::Closed,
            starts: Vec::new(),
            lengths: Vec::new(),
            endpoints: Vec::new(),
        };
        let mut j = start;
        loop {
            let (len, end) = singular[&j];
            visited.insert(j);
            list.starts.push(j);
            list.lengths.push(len);
            list.endpoints.push(end);
            if end == start {
                break;
            }
            debug_assert!(singular.contains_key(&end) && !visited.contains(&end));
            j = end;
        }
        lists.push(list);
    }
    // Closed lists first (matching the pullback basis convention).
    lists.sort_by_key(|l| {
        (
            matches!(l.kind, ListKind::Open),
            l.starts.first().copied().unwrap_or(0),
        )
    });
    let closed: Vec<Vec<u64>> = lists
        .iter()
        .filter(|l| l.kind == ListKind::Closed)
        .map(|l| l.lengths.clone())
        .collect();
    let open: Vec<Vec<u64>> = lists
        .iter()
        .filter(|l| l.kind == ListKind::Open)
        .map(|l| l.lengths.clone())
        .collect();
    let alpha_set: BTreeSet<usize> = lists
        .iter()
        .filter(|l| l.kind == ListKind::Open)
        .filter_map(|l| l.starts.first().copied())
        .collect();
    let omega_set: BTreeSet<usize> = singular.values().map(|&(_, k)| k).collect();
    let structure = OrbitListStructure::new(closed, open, spec.dim)?;
    Ok(ElementaryResult::Elementary(Box::new(ElementaryStructure {
        structure,
        lists,
        alpha_set,
        omega_set,
        orbits,
    })))
}

/// Parameters for random structure generation (property suites).
#[derive(Debug, Clone)]
pub struct RandomStructureParams {
    pub max_lists: usize,
    pub max_orbits_per_list: usize,
    pub max_length: u64,
    /// Resample until total length is at most this bound.
    pub max_total_length: u64,
    pub allow_open: bool,
    pub allow_empty: bool,
}

impl Default for RandomStructureParams {
    fn default() -> Self {
        RandomStructureParams {
            max_lists: 4,
            max_orbits_per_list: 3,
            max_length: 9,
            max_total_length: 40,
            allow_open: true,
            allow_empty: false,
        }
    }
}

/// Seeded random orbit-list structure.
pub fn random_structure<R: rand::Rng>(
    rng: &mut R,
    dim: usize,
    params: &RandomStructureParams,
) -> OrbitListStructure {
    loop {
        let n_lists = if params.allow_empty {
            rng.gen_range(0..=params.max_lists)
        } else {
            rng.gen_range(1..=params.max_lists)
        };
        let mut closed = Vec::new();
        let mut open = Vec::new();
        for _ in 0..n_lists {
            let n_orbits = rng.gen_range(1..=params.max_orbits_per_list);
            let list: Vec<u64> = (0..n_orbits)
                .map(|_| rng.gen_range(1..=params.max_length))
                .collect();
            if params.allow_open && rng.gen_bool(0.4) {
                open.push(list);
            } else {
                closed.push(list);
            }
        }
        let s = OrbitListStructure { closed, open, dim };
        if s.total_length() <= params.max_total_length {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn a1() -> BirationalMapSpec {
        BirationalMapSpec::from_int_rows(2, &[&[1, 2, 1], &[1, 0, -1], &[1, -2, 1]]).unwrap()
    }

    #[test]
    fn j_examples() {
        let p = ProjPoint::from_i64(&[1, 2, 3]);
        assert_eq!(apply_j(&p).unwrap(), ProjPoint::from_i64(&[6, 3, 2]));
        let sigma = ProjPoint::from_i64(&[0, 1, 1]);
        assert_eq!(apply_j(&sigma).unwrap(), ProjPoint::from_i64(&[1, 0, 0]));
        let fixed = ProjPoint::from_i64(&[1, 1, 1]);
        assert_eq!(apply_j(&fixed).unwrap(), fixed);
        assert!(apply_j(&ProjPoint::from_i64(&[1, 0, 0])).is_err());
    }

    #[test]
    fn j_is_involution_on_generic_points() {
        for coords in [[3i64, -5, 7], [2, 9, 11], [1, 1, -4]] {
            let p = ProjPoint::from_i64(&coords);
            assert_eq!(apply_j(&apply_j(&p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn f_examples() {
        // L = identity reduces to J.
        let id = BirationalMapSpec::new(2, RatMatrix::identity(3)).unwrap();
        assert_eq!(
            apply_f(&id, &ProjPoint::from_i64(&[0, 1, 1])).unwrap(),
            ProjPoint::from_i64(&[1, 0, 0])
        );
        // α_0 of A1 is the first column.
        assert_eq!(a1().alpha(0).unwrap(), ProjPoint::from_i64(&[1, 1, 1]));
        assert_eq!(
            apply_f(&a1(), &ProjPoint::from_i64(&[0, 1, 1])).unwrap(),
            ProjPoint::from_i64(&[1, 1, 1])
        );
    }

    #[test]
    fn orbit_a1_j0() {
        let orbit = compute_orbit(&a1(), 0, 64).unwrap();
        assert_eq!(orbit.verdict, OrbitVerdict::EndsAtE(0));
        assert_eq!(orbit.len(), Some(2));
        assert_eq!(orbit.points[0], ProjPoint::from_i64(&[1, 1, 1]));
        assert_eq!(orbit.points[1], ProjPoint::from_i64(&[1, 0, 0]));
    }

    #[test]
    fn noetherian_half_orbit() {
        // p = id, a0 = 1/2: orbit condition N = 2.
        let l = RatMatrix::from_rows(vec![
            vec![rat(-1, 2), rat(3, 4), rat(3, 4)],
            vec![rat(1, 2), rat(-1, 4), rat(3, 4)],
            vec![rat(1, 2), rat(3, 4), rat(-1, 4)],
        ])
        .unwrap();
        let spec = BirationalMapSpec::new(2, l).unwrap();
        let orbit = compute_orbit(&spec, 0, 64).unwrap();
        assert_eq!(orbit.verdict, OrbitVerdict::EndsAtE(0));
        assert_eq!(orbit.len(), Some(2));
    }

    #[test]
    fn structure_equality_mod_rotation() {
        let a = OrbitListStructure::new(vec![vec![2, 3]], vec![], 2).unwrap();
        let b = OrbitListStructure::new(vec![vec![3, 2]], vec![], 2).unwrap();
        assert_eq!(a, b);
        let c = OrbitListStructure::new(vec![], vec![vec![2, 3]], 2).unwrap();
        assert_ne!(a, c);
        let d = OrbitListStructure::new(vec![], vec![vec![3, 2]], 2).unwrap();
        assert_ne!(c, d); // open lists keep their order
    }
}
