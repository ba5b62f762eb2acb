//! The finite formal model `W(n)`: jet-variable layout for a valuation
//! vector `n`, the stable-point data, the model ideal and its reduced
//! presentation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner;
use crate::lattice_geom::{LatticePoint, SemigroupBasis};
use crate::polyring::{hs_expand, Monomial, SparsePoly, Stream, TSeries, VarId};
use crate::toric_ideal::{binomial_of, pair_relation, RelationLattice};

/// Where each jet variable `Z[i][s]` lives for a fixed `n`, given the
/// pairings `d_i = <n, m_i>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetLayout {
    rank: usize,
    pairings: Vec<u32>,
}

impl JetLayout {
    pub fn new(b: &SemigroupBasis, n: &LatticePoint) -> Result<JetLayout> {
        let mut pairings = Vec::with_capacity(b.len());
        for p in b.pairings(n)? {
            if p.is_negative() {
                return Err(Error::NotInCone(n.to_string()));
            }
            pairings.push(p.to_u32().ok_or_else(|| Error::DepthOverflow(p.to_string()))?);
        }
        Ok(JetLayout {
            rank: b.rank(),
            pairings,
        })
    }

    /// Rank `d`: generators `1..=d` form the Z-basis.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of generators `h`.
    pub fn h(&self) -> usize {
        self.pairings.len()
    }

    /// `d_i = <n, m_i>` for 1-based `i`.
    pub fn pairing(&self, i: usize) -> u32 {
        self.pairings[i - 1]
    }

    pub fn pairings(&self) -> &[u32] {
        &self.pairings
    }

    pub fn stream(&self, i: u32, s: u32) -> Stream {
        if s < self.pairing(i as usize) {
            Stream::Model
        } else if (i as usize) <= self.rank {
            Stream::Free
        } else {
            Stream::Lifted
        }
    }

    pub fn var(&self, i: u32, s: u32) -> VarId {
        VarId::new(self.stream(i, s), i, s)
    }

    /// `Z[i][d_i]` for `i <= d`: the variables inverted in the localization.
    pub fn is_invertible(&self, v: &VarId) -> bool {
        v.stream == Stream::Free && v.s == self.pairing(v.i as usize)
    }

    pub fn invertible_vars(&self) -> Vec<VarId> {
        (1..=self.rank as u32)
            .map(|i| self.var(i, self.pairing(i as usize)))
            .collect()
    }

    /// The model variables `Z[i][s]`, `s < d_i`, in variable order.
    pub fn model_vars(&self) -> Vec<VarId> {
        (1..=self.h() as u32)
            .flat_map(|i| (0..self.pairing(i as usize)).map(move |s| VarId::new(Stream::Model, i, s)))
            .collect()
    }

    /// `G_n = prod_{i <= d} Z[i][d_i]`.
    pub fn g_n(&self) -> Monomial {
        Monomial::from_pairs(self.invertible_vars().into_iter().map(|v| (v, 1)).collect())
    }

    /// `sum_{s <= t} Z[i][s] t^s`, with the invertible variables declared and
    /// free variables replaced by the values in `specialize` when given.
    pub fn generic_series(
        &self,
        i: u32,
        t: usize,
        specialize: Option<&BTreeMap<VarId, BigRational>>,
    ) -> TSeries {
        let coeffs = (0..=t as u32)
            .map(|s| {
                let v = self.var(i, s);
                match specialize.and_then(|m| m.get(&v)) {
                    Some(c) => SparsePoly::constant(c.clone()),
                    None if self.is_invertible(&v) => SparsePoly::var(v).with_invertible([v]),
                    None => SparsePoly::var(v),
                }
            })
            .collect();
        TSeries::new(coeffs, t)
    }

    /// The substitution `Z_i -> sum_{s < d_i} Z[i][s] t^s + t^{d_i}`.
    pub fn model_series(&self, i: u32, t: usize) -> TSeries {
        let d = self.pairing(i as usize) as usize;
        let mut coeffs: Vec<SparsePoly> = (0..d.min(t + 1) as u32)
            .map(|s| SparsePoly::var(VarId::new(Stream::Model, i, s)))
            .collect();
        if d <= t {
            coeffs.push(SparsePoly::one());
        }
        TSeries::new(coeffs, t)
    }
}

/// The ideal `a_n`, the localizing monomial `G_n` and a finite window of the
/// residue-field transcendentals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablePointData {
    pub a_n_gens: Vec<VarId>,
    pub g_n: Monomial,
    /// `Z[i][s]` for `i <= d` and `d_i <= s <= d_i + depth`.
    pub residue_field_gens: Vec<VarId>,
}

pub fn stable_point_data(b: &SemigroupBasis, n: &LatticePoint, depth: u32) -> Result<StablePointData> {
    let layout = JetLayout::new(b, n)?;
    let residue_field_gens = (1..=layout.rank() as u32)
        .flat_map(|i| {
            let d = layout.pairing(i as usize);
            (d..=d + depth).map(move |s| VarId::new(Stream::Free, i, s))
        })
        .collect();
    Ok(StablePointData {
        a_n_gens: layout.model_vars(),
        g_n: layout.g_n(),
        residue_field_gens,
    })
}

/// Generators of `W(n)`: for each relation `l`, the t-coefficients
/// `0..c_l` of `F_l` under the model substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelIdeal {
    pub n: LatticePoint,
    pub layout: JetLayout,
    pub variables: Vec<VarId>,
    pub generators: Vec<SparsePoly>,
    /// `(relation index into relations_used, t-degree)` per generator.
    pub labels: Vec<(usize, usize)>,
    pub relations_used: Vec<Vec<BigInt>>,
}

impl ModelIdeal {
    /// The generators with identically zero ones removed.
    pub fn nonzero_generators(&self) -> Vec<SparsePoly> {
        self.generators.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// Krull dimension of `k[model vars] / W(n)`; the ideal is weighted
    /// homogeneous for the weights `d_i - s`, so this is also the dimension
    /// of the local model. Linear eliminations go first, and the basis is
    /// computed for the weighted order.
    pub fn dimension(&self) -> Result<usize> {
        let s = simplify(&self.variables, &self.generators);
        let weight = |v: &VarId| self.layout.pairing(v.i as usize) - v.s;
        let g = groebner::buchberger_weighted(&s.generators, &s.variables, &weight, false)?;
        g.staircase_dimension()
            .ok_or_else(|| Error::InvalidInput("model ideal is the unit ideal".into()))
    }
}

/// The model ideal built from the distinguished relations `l_q`.
pub fn model_ideal(b: &SemigroupBasis, rl: &RelationLattice, n: &LatticePoint) -> Result<ModelIdeal> {
    let rels: Vec<Vec<BigInt>> = rl.special().values().cloned().collect();
    model_ideal_with_relations(b, n, &rels)
}

/// The model ideal built from an arbitrary list of relations.
pub fn model_ideal_with_relations(
    b: &SemigroupBasis,
    n: &LatticePoint,
    relations: &[Vec<BigInt>],
) -> Result<ModelIdeal> {
    let layout = JetLayout::new(b, n)?;
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for (k, l) in relations.iter().enumerate() {
        let c = pair_relation(n, l, b)?;
        let c = c.to_usize().ok_or_else(|| Error::DepthOverflow(c.to_string()))?;
        let f = binomial_of(l).to_poly()?;
        let series: BTreeMap<u32, TSeries> = (1..=layout.h() as u32)
            .map(|i| (i, layout.model_series(i, c)))
            .collect();
        let expanded = hs_expand(&f, &series)?;
        let top = expanded.coeff(c);
        if !top.is_zero() {
            return Err(Error::LeadingTermMismatch {
                relation: format!("{l:?}"),
                degree: c,
                residue: top.to_string(),
            });
        }
        for s in 0..c {
            generators.push(expanded.coeff(s).clone());
            labels.push((k, s));
        }
    }
    Ok(ModelIdeal {
        n: n.clone(),
        variables: layout.model_vars(),
        layout,
        generators,
        labels,
        relations_used: relations.to_vec(),
    })
}

/// A presentation of the model with linearly occurring variables eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    /// `(x, expression)` in elimination order; expressions are fully
    /// substituted, so they only involve `variables`.
    pub eliminated: Vec<(VarId, SparsePoly)>,
    pub variables: Vec<VarId>,
    /// Monic generators, deduplicated, in their original order.
    pub generators: Vec<SparsePoly>,
}

/// Repeatedly eliminates a variable `x` for which some generator has the
/// form `c x + r` with `c` a nonzero constant and `r` free of `x`. Variables
/// are tried in reverse variable order.
pub fn simplify(variables: &[VarId], generators: &[SparsePoly]) -> Simplified {
    let mut gens: Vec<SparsePoly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut vars: Vec<VarId> = variables.to_vec();
    let mut eliminated: Vec<(VarId, SparsePoly)> = Vec::new();
    'outer: loop {
        for &x in vars.iter().rev() {
            for (k, g) in gens.iter().enumerate() {
                let parts = g.collect_var(x);
                if parts.keys().any(|&e| e != 0 && e != 1) {
                    continue;
                }
                let Some(c) = parts.get(&1) else { continue };
                if !c.is_constant() {
                    continue;
                }
                let c = c.constant_term();
                let rest = parts.get(&0).cloned().unwrap_or_default();
                let value = rest.scale(&-c.recip());
                let mut assign = BTreeMap::new();
                assign.insert(x, value.clone());
                gens.remove(k);
                gens = gens
                    .iter()
                    .map(|p| p.substitute(&assign).expect("x is not invertible"))
                    .filter(|p| !p.is_zero())
                    .collect();
                for (_, e) in eliminated.iter_mut() {
                    *e = e.substitute(&assign).expect("x is not invertible");
                }
                eliminated.push((x, value));
                vars.retain(|v| *v != x);
                continue 'outer;
            }
        }
        break;
    }
    let mut out: Vec<SparsePoly> = Vec::new();
    for g in gens {
        let g = g.monic();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Simplified {
        eliminated,
        variables: vars,
        generators: out,
    }
}

pub const INFINITE_FACTOR_NOTE: &str = "formal-disk countable product per finite-model theorem";

/// The model with its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSummary {
    pub variables: Vec<VarId>,
    pub generators: Vec<SparsePoly>,
    pub simplified: Simplified,
    pub dimension: usize,
}

pub fn model_report(m: &ModelIdeal) -> Result<ModelSummary> {
    Ok(ModelSummary {
        variables: m.variables.clone(),
        generators: m.generators.clone(),
        simplified: simplify(&m.variables, &m.generators),
        dimension: m.dimension()?,
    })
}

/// Whether every generator vanishes at the origin of the model variables.
pub fn vanishes_at_base_point(m: &ModelIdeal) -> bool {
    let zero: BTreeMap<VarId, BigRational> =
        m.variables.iter().map(|v| (*v, BigRational::zero())).collect();
    m.generators
        .iter()
        .all(|g| g.evaluate(&zero).map(|p| p.is_zero()).unwrap_or(false))
}
