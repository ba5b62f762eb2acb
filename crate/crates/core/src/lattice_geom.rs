//! Lattice points, rational polyhedral cones, their duals and Hilbert bases.
//!
//! Cones are always full-dimensional and strongly convex. A cone caches its
//! inward facet normals, which are exactly the primitive ray generators of
//! the dual cone.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// An integer vector in `N` or `M`. Ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint(Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn primitive(&self) -> LatticePoint {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        LatticePoint(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    fn check_rank(&self, other: &LatticePoint) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    fn dot(&self, other: &LatticePoint) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

/// The pairing `<m, n>` between `M` and `N`.
pub fn pair(m: &LatticePoint, n: &LatticePoint) -> Result<BigInt> {
    m.check_rank(n)?;
    Ok(m.dot(n))
}

/// A full-dimensional strongly convex rational polyhedral cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticePoint>,
    facets: Vec<LatticePoint>,
}

impl Cone {
    /// Builds the cone spanned by `generators`. Generators are made
    /// primitive, non-extreme ones are dropped and the rays are sorted.
    pub fn new(generators: Vec<LatticePoint>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::MalformedCone("no generators".into()));
        };
        let rank = first.rank();
        if rank == 0 {
            return Err(Error::MalformedCone("rank 0".into()));
        }
        for g in &generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        let mut rays: Vec<LatticePoint> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(LatticePoint::primitive)
            .collect();
        rays.sort();
        rays.dedup();
        let matrix: Vec<Vec<BigInt>> = rays.iter().map(|r| r.0.clone()).collect();
        if linalg::rank(&matrix) != rank {
            return Err(Error::MalformedCone(format!(
                "generators do not span a {rank}-dimensional space"
            )));
        }
        let facets = facet_normals(&rays, rank);
        let facet_matrix: Vec<Vec<BigInt>> = facets.iter().map(|u| u.0.clone()).collect();
        if facets.is_empty() || linalg::rank(&facet_matrix) != rank {
            return Err(Error::MalformedCone("cone contains a line".into()));
        }
        rays.retain(|r| {
            let tight: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|u| u.dot(r).is_zero())
                .map(|u| u.0.clone())
                .collect();
            linalg::rank(&tight) == rank - 1
        });
        Ok(Cone {
            rank,
            rays,
            facets,
        })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Self> {
        Cone::new(rays.iter().map(|r| LatticePoint::from_i64(r)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    /// Inward primitive facet normals, sorted lexicographically.
    pub fn facets(&self) -> &[LatticePoint] {
        &self.facets
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        x.rank() == self.rank && self.facets.iter().all(|u| !u.dot(x).is_negative())
    }

    pub(crate) fn require(&self, x: &LatticePoint) -> Result<()> {
        x.check_rank(&self.rays[0])?;
        if !self.contains(x) {
            return Err(Error::NotInCone(x.to_string()));
        }
        Ok(())
    }

    /// Lattice points `x` with `lower[j] <= <u_j, x> <= upper[j]` for every
    /// facet normal `u_j`, sorted lexicographically.
    pub(crate) fn points_in_slab(&self, lower: &[BigInt], upper: &[BigInt]) -> Vec<LatticePoint> {
        let d = self.rank;
        // d independent facet normals give an invertible change of coordinates;
        // interval arithmetic through its inverse bounds each coordinate.
        let facet_rows: Vec<Vec<BigInt>> = self.facets.iter().map(|u| u.0.clone()).collect();
        let chosen = linalg::combinations(facet_rows.len(), d)
            .into_iter()
            .find(|idx| {
                let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| facet_rows[i].clone()).collect();
                !linalg::det(&sub).is_zero()
            })
            .expect("facet normals of a pointed cone span");
        let sub: Vec<Vec<BigInt>> = chosen.iter().map(|&i| facet_rows[i].clone()).collect();
        let inv = linalg::inverse(&sub).expect("invertible");
        let mut lo_box = Vec::with_capacity(d);
        let mut hi_box = Vec::with_capacity(d);
        for row in &inv {
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (coef, &j) in row.iter().zip(&chosen) {
                let a = coef * BigRational::from_integer(lower[j].clone());
                let b = coef * BigRational::from_integer(upper[j].clone());
                if a <= b {
                    lo += a;
                    hi += b;
                } else {
                    lo += b;
                    hi += a;
                }
            }
            lo_box.push(lo.ceil().to_integer());
            hi_box.push(hi.floor().to_integer());
        }
        let mut out = Vec::new();
        if lo_box.iter().zip(&hi_box).any(|(l, h)| l > h) {
            return out;
        }
        let mut cur = lo_box.clone();
        loop {
            let x = LatticePoint(cur.clone());
            if self
                .facets
                .iter()
                .enumerate()
                .all(|(j, u)| {
                    let v = u.dot(&x);
                    v >= lower[j] && v <= upper[j]
                })
            {
                out.push(x);
            }
            let mut k = d;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi_box[k] {
                    cur[k] += 1;
                    for (c, l) in cur[k + 1..].iter_mut().zip(&lo_box[k + 1..]) {
                        *c = l.clone();
                    }
                    break;
                }
            }
        }
    }
}

fn facet_normals(rays: &[LatticePoint], d: usize) -> Vec<LatticePoint> {
    let mut normals = Vec::new();
    for idx in linalg::combinations(rays.len(), d - 1) {
        let vecs: Vec<Vec<BigInt>> = idx.iter().map(|&i| rays[i].0.clone()).collect();
        let u = LatticePoint(linalg::normal_vector(&vecs, d));
        if u.is_zero() {
            continue;
        }
        let signs: Vec<BigInt> = rays.iter().map(|r| u.dot(r)).collect();
        let u = if signs.iter().all(|s| !s.is_negative()) {
            u
        } else if signs.iter().all(|s| !s.is_positive()) {
            -&u
        } else {
            continue;
        };
        normals.push(u.primitive());
    }
    normals.sort();
    normals.dedup();
    normals
}

/// The dual cone `{m : <m, r> >= 0 for every ray r}`.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    Cone::new(c.facets.clone())
}

/// The minimal generating set of the semigroup `c ∩ lattice`, sorted
/// lexicographically.
///
/// Candidates are the lattice points of `c` inside the slab cut out by the
/// support values of the zonotope `sum [0,1] r`; a candidate is dropped when
/// another candidate can be subtracted from it without leaving the cone.
pub fn hilbert_basis(c: &Cone) -> Vec<LatticePoint> {
    let lower = vec![BigInt::zero(); c.facets.len()];
    let upper: Vec<BigInt> = c
        .facets
        .iter()
        .map(|u| c.rays.iter().map(|r| u.dot(r)).sum())
        .collect();
    let candidates: Vec<LatticePoint> = c
        .points_in_slab(&lower, &upper)
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    minimal_elements(c, &candidates)
}

pub(crate) fn minimal_elements(c: &Cone, candidates: &[LatticePoint]) -> Vec<LatticePoint> {
    candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|y| y != *x && c.contains(&(*x - y)))
        })
        .cloned()
        .collect()
}

/// Minimal generators `m_1..m_h` of `σ∨ ∩ M`, reordered so that the first
/// `rank` of them form a Z-basis of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupBasis {
    generators: Vec<LatticePoint>,
    rank: usize,
    zbasis_indices: Vec<usize>,
}

impl SemigroupBasis {
    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of generators `h`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn zbasis_indices(&self) -> &[usize] {
        &self.zbasis_indices
    }

    /// Pairings `<n, m_i>` for every generator.
    pub fn pairings(&self, n: &LatticePoint) -> Result<Vec<BigInt>> {
        self.generators.iter().map(|m| pair(m, n)).collect()
    }
}

/// Reorders `gens` so that the first `rank` entries form a Z-basis. The
/// chosen subset is the lexicographically smallest index set with
/// determinant ±1; the remaining generators keep their relative order.
pub fn select_z_basis(gens: &[LatticePoint], rank: usize) -> Result<SemigroupBasis> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
    }
    for idx in linalg::combinations(gens.len(), rank) {
        let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| gens[i].0.clone()).collect();
        if linalg::det(&sub).abs().is_one() {
            let mut generators: Vec<LatticePoint> = idx.iter().map(|&i| gens[i].clone()).collect();
            generators.extend(
                gens.iter()
                    .enumerate()
                    .filter(|(i, _)| !idx.contains(i))
                    .map(|(_, g)| g.clone()),
            );
            return Ok(SemigroupBasis {
                generators,
                rank,
                zbasis_indices: (0..rank).collect(),
            });
        }
    }
    Err(Error::NoUnimodularSubset { rank })
}

/// Whether the minimal face of `c` containing `n` is a smooth cone, i.e.
/// its rays extend to a Z-basis of `N`.
pub fn minimal_face_smooth(c: &Cone, n: &LatticePoint) -> Result<bool> {
    c.require(n)?;
    let tight: Vec<&LatticePoint> = c.facets.iter().filter(|u| u.dot(n).is_zero()).collect();
    let face_rays: Vec<Vec<BigInt>> = c
        .rays
        .iter()
        .filter(|r| tight.iter().all(|u| u.dot(r).is_zero()))
        .map(|r| r.0.clone())
        .collect();
    if face_rays.is_empty() {
        return Ok(true);
    }
    if linalg::rank(&face_rays) != face_rays.len() {
        return Ok(false);
    }
    Ok(linalg::maximal_minor_gcd(&face_rays, c.rank).is_one())
}
