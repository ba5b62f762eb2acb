//! Decompositions of a lattice point of a cone into indecomposable elements
//! of the cone's semigroup, and the component data they determine.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_geom::{minimal_face_smooth, Cone, LatticePoint};

/// A multiset of indecomposables summing to the target, parts sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<LatticePoint>,
}

impl Decomposition {
    pub fn length(&self) -> usize {
        self.parts.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub decompositions: Vec<Decomposition>,
    pub component_count: usize,
    pub dimension: usize,
    pub primitive: bool,
    pub indecomposable: bool,
    /// `None` when the classification does not apply: `n` is not primitive
    /// or its valuation is not centered in the singular locus.
    pub strongly_essential: Option<bool>,
}

fn facet_values(c: &Cone, x: &LatticePoint) -> Vec<BigInt> {
    c.facets()
        .iter()
        .map(|u| u.coords().iter().zip(x.coords()).map(|(a, b)| a * b).sum())
        .collect()
}

/// Whether `x` is a nonzero lattice point of `c` that is not a sum of two
/// nonzero lattice points of `c`.
pub fn is_indecomposable(c: &Cone, x: &LatticePoint) -> bool {
    if x.is_zero() || !c.contains(x) {
        return false;
    }
    let upper = facet_values(c, x);
    let lower = vec![BigInt::zero(); upper.len()];
    c.points_in_slab(&lower, &upper)
        .iter()
        .all(|y| y.is_zero() || y == x)
}

/// Indecomposable `x` in `c` with `n - x` in `c`, sorted lexicographically.
pub fn indecomposables_below(c: &Cone, n: &LatticePoint) -> Result<Vec<LatticePoint>> {
    c.require(n)?;
    let upper = facet_values(c, n);
    let lower = vec![BigInt::zero(); upper.len()];
    Ok(c.points_in_slab(&lower, &upper)
        .into_iter()
        .filter(|x| is_indecomposable(c, x))
        .collect())
}

/// All decompositions of `n`, each with sorted parts, in lexicographic order.
pub fn enumerate_decompositions(c: &Cone, n: &LatticePoint) -> Result<Vec<Decomposition>> {
    c.require(n)?;
    if n.is_zero() {
        return Err(Error::ZeroVector);
    }
    let atoms = indecomposables_below(c, n)?;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    extend(c, &atoms, 0, n, &mut parts, &mut out);
    out.sort();
    Ok(out)
}

fn extend(
    c: &Cone,
    atoms: &[LatticePoint],
    from: usize,
    rest: &LatticePoint,
    parts: &mut Vec<LatticePoint>,
    out: &mut Vec<Decomposition>,
) {
    if rest.is_zero() {
        out.push(Decomposition {
            parts: parts.clone(),
        });
        return;
    }
    for (k, a) in atoms.iter().enumerate().skip(from) {
        let r = rest - a;
        if c.contains(&r) {
            parts.push(a.clone());
            extend(c, atoms, k, &r, parts, out);
            parts.pop();
        }
    }
}

pub fn component_stats(c: &Cone, n: &LatticePoint) -> Result<ComponentStats> {
    let decompositions = enumerate_decompositions(c, n)?;
    let primitive = n.is_primitive();
    let indecomposable = is_indecomposable(c, n);
    let strongly_essential = if primitive && !minimal_face_smooth(c, n)? {
        Some(indecomposable)
    } else {
        None
    };
    Ok(ComponentStats {
        component_count: decompositions.len(),
        dimension: decompositions.iter().map(Decomposition::length).max().unwrap_or(0),
        decompositions,
        primitive,
        indecomposable,
        strongly_essential,
    })
}
