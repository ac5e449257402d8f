//! Affine hyperplanes over the rationals, the intersection poset and the
//! numerical invariants read off from it.
//!
//! Hyperplane indices are 0-based throughout the library; reports print them
//! 1-based.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, one, zero, Rat};

/// The zero set of `a·x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coefficients: Vec<Rat>,
    offset: Rat,
}

impl Hyperplane {
    pub fn new(coefficients: Vec<Rat>, offset: Rat) -> Result<Self> {
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArrangement(
                "hyperplane with zero coefficient vector".into(),
            ));
        }
        Ok(Self { coefficients, offset })
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.coefficients, x) + &self.offset
    }

    /// True when `other` has the same zero set.
    pub fn same_zero_set(&self, other: &Hyperplane) -> bool {
        let rows = vec![self.extended(), other.extended()];
        linalg::rank(&rows) == 1
    }

    fn extended(&self) -> Vec<Rat> {
        let mut v = self.coefficients.clone();
        v.push(self.offset.clone());
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArrangement("dimension must be positive".into()));
        }
        if hyperplanes.is_empty() {
            return Err(Error::InvalidArrangement("no hyperplanes".into()));
        }
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "hyperplane coefficients".into(),
                    expected: dim,
                    found: h.dim(),
                });
            }
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            for (j, k) in hyperplanes.iter().enumerate().skip(i + 1) {
                if h.same_zero_set(k) {
                    return Err(Error::InvalidArrangement(format!(
                        "hyperplanes {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    /// Rank of the span of the normal vectors.
    pub fn normal_rank(&self) -> usize {
        linalg::rank_of_vectors(self.hyperplanes.iter().map(|h| &h.coefficients))
    }
}

/// Some rank-ℓ flat exists.
pub fn is_essential(arrangement: &Arrangement) -> bool {
    // Independent normals always meet, so a rank-ℓ flat exists exactly when
    // the normals span.
    arrangement.normal_rank() == arrangement.dim()
}

/// A nonempty intersection of hyperplanes, stored in closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    generators: Vec<usize>,
    rank: usize,
    point: Vec<Rat>,
    directions: Vec<Vec<Rat>>,
}

impl Flat {
    /// Every hyperplane containing the flat, sorted.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn point(&self) -> &[Rat] {
        &self.point
    }

    /// Basis of the direction space.
    pub fn directions(&self) -> &[Vec<Rat>] {
        &self.directions
    }

    fn ambient(dim: usize) -> Self {
        let directions = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        Self {
            generators: Vec::new(),
            rank: 0,
            point: vec![zero(); dim],
            directions,
        }
    }

    /// Intersection with `h`, or `None` when `h` is parallel to (and misses)
    /// the flat. `h` must not already contain the flat.
    fn meet(&self, h: &Hyperplane) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
        let g: Vec<Rat> = self.directions.iter().map(|d| dot(h.coefficients(), d)).collect();
        let m = g.iter().position(|x| !x.is_zero())?;
        let c = h.eval(&self.point);
        let step = -(&c / &g[m]);
        let point: Vec<Rat> = self
            .point
            .iter()
            .zip(&self.directions[m])
            .map(|(p, d)| p + &step * d)
            .collect();
        let directions = (0..self.directions.len())
            .filter(|&i| i != m)
            .map(|i| {
                let f = &g[i] / &g[m];
                self.directions[i]
                    .iter()
                    .zip(&self.directions[m])
                    .map(|(a, b)| a - &f * b)
                    .collect()
            })
            .collect();
        Some((point, directions))
    }
}

fn closure(arrangement: &Arrangement, point: &[Rat], directions: &[Vec<Rat>]) -> Vec<usize> {
    arrangement
        .hyperplanes()
        .iter()
        .enumerate()
        .filter(|(_, h)| h.eval(point).is_zero() && directions.iter().all(|d| dot(h.coefficients(), d).is_zero()))
        .map(|(i, _)| i)
        .collect()
}

/// The intersection poset L(A), ordered by reverse inclusion.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    dim: usize,
    flats: Vec<Flat>,
    by_rank: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    mobius: Vec<i64>,
}

impl IntersectionPoset {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    /// Ids of the flats of rank `p`.
    pub fn rank_level(&self, p: usize) -> &[usize] {
        self.by_rank.get(p).map_or(&[], Vec::as_slice)
    }

    /// Ids of the flats strictly below `id`.
    pub fn below(&self, id: usize) -> &[usize] {
        &self.below[id]
    }

    pub fn mobius(&self, id: usize) -> i64 {
        self.mobius[id]
    }

    pub fn find(&self, generators: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.generators == generators)
    }

    /// π(A, t) evaluated at an integer.
    pub fn poincare_at(&self, t: i64) -> i64 {
        self.flats
            .iter()
            .zip(&self.mobius)
            .map(|(f, mu)| mu * (-t).pow(f.rank as u32))
            .sum()
    }
}

/// Builds L(A) by intersecting rank-p flats with single hyperplanes and
/// deduplicating by closed generator sets.
pub fn build_poset(arrangement: &Arrangement) -> IntersectionPoset {
    let dim = arrangement.dim();
    let mut flats = vec![Flat::ambient(dim)];
    let mut by_rank = vec![vec![0]];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(Vec::new(), 0);

    for p in 0..dim {
        let mut next = Vec::new();
        for &id in &by_rank[p] {
            for (j, h) in arrangement.hyperplanes().iter().enumerate() {
                if flats[id].generators.binary_search(&j).is_ok() {
                    continue;
                }
                let Some((point, directions)) = flats[id].meet(h) else {
                    continue;
                };
                let generators = closure(arrangement, &point, &directions);
                if index.contains_key(&generators) {
                    continue;
                }
                index.insert(generators.clone(), flats.len());
                next.push(flats.len());
                flats.push(Flat {
                    generators,
                    rank: p + 1,
                    point,
                    directions,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        by_rank.push(next);
    }

    let below: Vec<Vec<usize>> = flats
        .iter()
        .map(|x| {
            flats
                .iter()
                .enumerate()
                .filter(|(_, y)| y.rank < x.rank && y.generators.iter().all(|g| x.generators.contains(g)))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let mut mobius = vec![0i64; flats.len()];
    for level in &by_rank {
        for &id in level {
            mobius[id] = if id == 0 {
                1
            } else {
                -below[id].iter().map(|&y| mobius[y]).sum::<i64>()
            };
        }
    }

    IntersectionPoset {
        dim,
        flats,
        by_rank,
        below,
        mobius,
    }
}

/// Coefficients of the Poincaré polynomial and the β-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub coefficients: Vec<u64>,
    pub beta: u64,
}

impl BettiVector {
    pub fn get(&self, q: usize) -> u64 {
        self.coefficients.get(q).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// Σ (-1)^q b_q = π(A, -1).
    pub fn euler(&self) -> i64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn truncated(&self, q: usize) -> Vec<u64> {
        self.coefficients.iter().take(q + 1).copied().collect()
    }
}

pub fn betti_vector(poset: &IntersectionPoset) -> BettiVector {
    let coefficients: Vec<u64> = (0..=poset.dim())
        .map(|p| {
            let s: i64 = poset.rank_level(p).iter().map(|&id| poset.mobius(id)).sum();
            let b = if p % 2 == 0 { s } else { -s };
            u64::try_from(b).expect("Betti numbers of an arrangement are nonnegative")
        })
        .collect();
    let beta = poset.poincare_at(-1).unsigned_abs();
    BettiVector { coefficients, beta }
}

/// A complete flag F^0 ⊂ F^1 ⊂ … ⊂ F^ℓ with F^q = F^0 + span(v_1..v_q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    basepoint: Vec<Rat>,
    directions: Vec<Vec<Rat>>,
}

impl Flag {
    pub fn new(basepoint: Vec<Rat>, directions: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = basepoint.len();
        if directions.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "flag directions".into(),
                expected: dim,
                found: directions.len(),
            });
        }
        if let Some(d) = directions.iter().find(|d| d.len() != dim) {
            return Err(Error::DimensionMismatch {
                context: "flag direction vector".into(),
                expected: dim,
                found: d.len(),
            });
        }
        if linalg::rank(&directions) != dim {
            return Err(Error::InvalidFlag("directions are linearly dependent".into()));
        }
        Ok(Self { basepoint, directions })
    }

    pub fn dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn basepoint(&self) -> &[Rat] {
        &self.basepoint
    }

    pub fn directions(&self) -> &[Vec<Rat>] {
        &self.directions
    }

    /// F^0 + Σ t_i v_i for the leading `t.len()` directions.
    pub fn point(&self, t: &[Rat]) -> Vec<Rat> {
        let mut x = self.basepoint.clone();
        for (ti, v) in t.iter().zip(&self.directions) {
            for (xj, vj) in x.iter_mut().zip(v) {
                *xj += ti * vj;
            }
        }
        x
    }

    /// `h` pulled back to the coordinates (t_1..t_q) of F^q: gradient and offset.
    pub fn restricted_form(&self, h: &Hyperplane, q: usize) -> (Vec<Rat>, Rat) {
        let grad = self.directions[..q].iter().map(|v| dot(h.coefficients(), v)).collect();
        (grad, h.eval(&self.basepoint))
    }
}

fn flag_dimension_check(arrangement: &Arrangement, flag: &Flag) -> Result<()> {
    if flag.dim() != arrangement.dim() {
        return Err(Error::DimensionMismatch {
            context: "flag dimension".into(),
            expected: arrangement.dim(),
            found: flag.dim(),
        });
    }
    Ok(())
}

/// dim(F^q ∩ X) = q − r(X) for r(X) <= q, and F^q ∩ X = ∅ for r(X) > q.
pub fn check_genericity(arrangement: &Arrangement, flag: &Flag, q: usize) -> bool {
    if flag_dimension_check(arrangement, flag).is_err() || q > arrangement.dim() {
        return false;
    }
    check_genericity_in(&build_poset(arrangement), flag, q)
}

pub fn check_genericity_in(poset: &IntersectionPoset, flag: &Flag, q: usize) -> bool {
    let dim = poset.dim();
    if flag.dim() != dim || q > dim {
        return false;
    }
    let span = &flag.directions[..q];
    poset.flats().iter().all(|x| {
        let mut rows: Vec<Vec<Rat>> = span.to_vec();
        rows.extend(x.directions.iter().cloned());
        let sum_rank = linalg::rank(&rows);
        let offset: Vec<Rat> = x.point.iter().zip(&flag.basepoint).map(|(a, b)| a - b).collect();
        rows.push(offset);
        let meets = linalg::rank(&rows) == sum_rank;
        if x.rank <= q {
            meets && sum_rank == dim
        } else {
            !meets
        }
    })
}

/// Every F^q is generic.
pub fn is_generic_flag(poset: &IntersectionPoset, flag: &Flag) -> bool {
    (0..=poset.dim()).all(|q| check_genericity_in(poset, flag, q))
}

/// The arrangement A ∩ F^q in the coordinates (t_1..t_q) of F^q.
pub fn restrict(arrangement: &Arrangement, flag: &Flag, q: usize) -> Result<Arrangement> {
    flag_dimension_check(arrangement, flag)?;
    if q == 0 || q > arrangement.dim() {
        return Err(Error::InvalidFlag(format!(
            "restriction level {q} outside 1..={}",
            arrangement.dim()
        )));
    }
    if !check_genericity(arrangement, flag, q) {
        return Err(Error::NotGeneric { q });
    }
    let hyperplanes = arrangement
        .hyperplanes()
        .iter()
        .map(|h| {
            let (grad, offset) = flag.restricted_form(h, q);
            Hyperplane::new(grad, offset).map_err(|_| Error::NotGeneric { q })
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(q, hyperplanes).map_err(|_| Error::NotGeneric { q })
}
