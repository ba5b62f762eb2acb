//! Weierstrass preparation and division for t-series whose coefficients are
//! taken modulo a power `m^E` of the ideal generated by a set of variables,
//! and the finite-order comparison between the lifted arcs and the model.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner;
use crate::hensel::{build_system_specialized, epsilon_hat_eval, lift, sample_free_values, LiftResult};
use crate::jet_model::{model_ideal, JetLayout};
use crate::lattice_geom::{LatticePoint, SemigroupBasis};
use crate::polyring::{Monomial, SparsePoly, Stream, TSeries, VarId};
use crate::toric_ideal::{pair_relation, RelationLattice};

/// A t-series known modulo `(m^E, t^{T+1})`, where `m` is generated by
/// `m_vars`. Coefficients never carry terms of m-degree `>= E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTSeries {
    series: TSeries,
    m_order: u32,
    m_vars: BTreeSet<VarId>,
}

impl LocalTSeries {
    pub fn new(series: TSeries, m_order: u32, m_vars: BTreeSet<VarId>) -> Self {
        let e = m_order as i64;
        let series = series.map(|c| c.grade_filter(&m_vars, e));
        LocalTSeries {
            series,
            m_order,
            m_vars,
        }
    }

    pub fn from_coeffs(coeffs: Vec<SparsePoly>, t: usize, m_order: u32, m_vars: BTreeSet<VarId>) -> Self {
        Self::new(TSeries::new(coeffs, t), m_order, m_vars)
    }

    fn like(&self, series: TSeries) -> Self {
        Self::new(series, self.m_order, self.m_vars.clone())
    }

    pub fn series(&self) -> &TSeries {
        &self.series
    }

    pub fn truncation(&self) -> usize {
        self.series.truncation()
    }

    pub fn m_order(&self) -> u32 {
        self.m_order
    }

    pub fn m_vars(&self) -> &BTreeSet<VarId> {
        &self.m_vars
    }

    pub fn coeff(&self, j: usize) -> &SparsePoly {
        self.series.coeff(j)
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn truncate(&self, t: usize) -> Self {
        self.like(self.series.truncate(t))
    }

    fn m_constant(&self, p: &SparsePoly) -> SparsePoly {
        p.graded_part(|v| self.m_vars.contains(v), 0)
    }

    fn mul_coeff(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.mul_trunc(b, &|v| self.m_vars.contains(v), self.m_order as i64)
    }

    /// Product at the smaller of the two truncations.
    pub fn mul(&self, other: &LocalTSeries) -> LocalTSeries {
        let t = self.truncation().min(other.truncation());
        let mut coeffs = vec![SparsePoly::zero(); t + 1];
        for (i, a) in self.series.coeffs().iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.series.coeffs().iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &self.mul_coeff(a, b);
                }
            }
        }
        self.like(TSeries::new(coeffs, t))
    }

    pub fn add(&self, other: &LocalTSeries) -> LocalTSeries {
        let t = self.truncation().min(other.truncation());
        let s = self.series.truncate(t).add(&other.series.truncate(t)).expect("equal truncations");
        self.like(s)
    }

    pub fn sub(&self, other: &LocalTSeries) -> LocalTSeries {
        self.add(&other.like(other.series.neg()))
    }

    pub fn pow(&self, k: u32) -> LocalTSeries {
        let mut acc = self.like(TSeries::constant(SparsePoly::one(), self.truncation()));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a coefficient whose m-constant part is a unit monomial.
    fn invert_coeff(&self, a: &SparsePoly) -> Result<SparsePoly> {
        let u = self.m_constant(a);
        if u.as_unit_monomial().is_none() {
            return Err(Error::NonUnitCoefficient(a.to_string()));
        }
        let u_inv = u.unit_inverse()?;
        // a = u (1 + m) with m in the maximal ideal.
        let m = &self.mul_coeff(a, &u_inv) - &SparsePoly::one();
        let minus_m = -m;
        let mut term = SparsePoly::one();
        let mut sum = SparsePoly::one();
        for _ in 1..self.m_order {
            term = self.mul_coeff(&term, &minus_m);
            sum = &sum + &term;
        }
        Ok(self.mul_coeff(&sum, &u_inv))
    }

    /// Multiplicative inverse; the constant coefficient must be a unit.
    pub fn inverse(&self) -> Result<LocalTSeries> {
        let t = self.truncation();
        let v0 = self.invert_coeff(self.coeff(0))?;
        let mut v: Vec<SparsePoly> = vec![v0.clone()];
        for j in 1..=t {
            let mut acc = SparsePoly::zero();
            for k in 1..=j {
                let a = self.coeff(k);
                if !a.is_zero() && !v[j - k].is_zero() {
                    acc = &acc + &self.mul_coeff(a, &v[j - k]);
                }
            }
            v.push(-self.mul_coeff(&v0, &acc));
        }
        Ok(self.like(TSeries::new(v, t)))
    }

    /// `sum_{j < k} c_j t^j`: the coefficients below `t^k` with the shape of `self`.
    fn low(&self, k: usize) -> LocalTSeries {
        let coeffs = self.series.coeffs().iter().take(k).cloned().collect();
        self.like(TSeries::new(coeffs, self.truncation()))
    }

    /// `(self - low(k)) / t^k`, truncated at `T - k`.
    fn high(&self, k: usize) -> LocalTSeries {
        let t = self.truncation().saturating_sub(k);
        let coeffs = self.series.coeffs().iter().skip(k).cloned().collect();
        self.like(TSeries::new(coeffs, t))
    }
}

/// Least `j` whose coefficient has a nonzero m-constant part.
pub fn t_order(f: &LocalTSeries) -> Result<usize> {
    (0..=f.truncation())
        .find(|&j| !f.m_constant(f.coeff(j)).is_zero())
        .ok_or(Error::NotRegular {
            truncation: f.truncation(),
        })
}

fn check_truncation(f: &LocalTSeries, d: usize) -> Result<()> {
    let needed = d * (f.m_order() as usize + 1);
    if f.truncation() < needed {
        return Err(Error::TruncationTooSmall {
            truncation: f.truncation(),
            order: d,
            m_order: f.m_order() as usize,
            needed,
        });
    }
    Ok(())
}

/// `g = f q + r` with `deg r < ord(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotient: LocalTSeries,
    pub remainder: Vec<SparsePoly>,
}

/// Weierstrass division. Each round strips the part of `g` at or above
/// `t^d`, whose m-order grows by one per round, and costs `d` in t-precision;
/// the quotient is valid to `t^{T - E d}`.
pub fn divide(g: &LocalTSeries, f: &LocalTSeries) -> Result<Division> {
    let d = t_order(f)?;
    check_truncation(f, d)?;
    let t = g.truncation().min(f.truncation());
    let f = f.truncate(t);
    let f_low = f.low(d);
    let inv_high = f.high(d).inverse()?;
    let mut cur = g.truncate(t);
    let mut quotient: Option<LocalTSeries> = None;
    for _ in 0..f.m_order() {
        let high = cur.high(d);
        if high.is_zero() {
            break;
        }
        let qk = high.mul(&inv_high);
        let prev = cur.low(d).truncate(cur.truncation() - d);
        cur = prev.sub(&qk.mul(&f_low));
        quotient = Some(match quotient {
            None => qk,
            Some(q) => q.add(&qk),
        });
    }
    let quotient = quotient.unwrap_or_else(|| g.like(TSeries::zero(t - d)));
    if !cur.high(d).is_zero() {
        return Err(Error::NotRegular { truncation: t });
    }
    let remainder = (0..d).map(|j| cur.coeff(j).clone()).collect();
    Ok(Division {
        quotient,
        remainder,
    })
}

/// `f = w u` with `w = t^d + sum_{j<d} lower_j t^j`, `lower_j` in `m`, and
/// `u` a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFactorization {
    pub order: usize,
    pub lower: Vec<SparsePoly>,
    pub unit: LocalTSeries,
}

impl WFactorization {
    /// The Weierstrass polynomial as a series truncated like the unit.
    pub fn w_poly(&self) -> LocalTSeries {
        let t = self.unit.truncation().max(self.order);
        let mut coeffs = self.lower.clone();
        coeffs.push(SparsePoly::one());
        self.unit.like(TSeries::new(coeffs, t))
    }
}

/// Weierstrass preparation: divides `t^d` by `f`, so `q f = t^d - r = w`
/// and `u = q^{-1}`.
pub fn prepare(f: &LocalTSeries) -> Result<WFactorization> {
    let d = t_order(f)?;
    check_truncation(f, d)?;
    if d == 0 {
        return Ok(WFactorization {
            order: 0,
            lower: Vec::new(),
            unit: f.clone(),
        });
    }
    let t_d = f.like(TSeries::t_power(d, SparsePoly::one(), f.truncation()));
    let Division {
        quotient,
        remainder,
    } = divide(&t_d, f)?;
    let lower: Vec<SparsePoly> = remainder.into_iter().map(|r| -r).collect();
    if let Some(bad) = lower.iter().find(|c| !f.m_constant(c).is_zero()) {
        return Err(Error::NonUnitCoefficient(bad.to_string()));
    }
    Ok(WFactorization {
        order: d,
        lower,
        unit: quotient.inverse()?,
    })
}

/// Outcome of the finite-order comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonVerdict {
    /// The ideals were compared modulo `m^order`.
    pub order: u32,
    pub truncation: usize,
    /// Coefficients of `F_q` at `t^s`, `c_q <= s <= T`, vanish on the arcs.
    pub tail_vanishes: bool,
    pub model_in_arc_ideal: bool,
    pub arc_in_model_ideal: bool,
    pub automorphism: bool,
    /// Same images at truncation `T + 5`.
    pub stable: bool,
    pub detail: String,
}

impl ComparisonVerdict {
    pub fn passed(&self) -> bool {
        self.tail_vanishes && self.model_in_arc_ideal && self.arc_in_model_ideal && self.automorphism && self.stable
    }

    /// `Err(VerificationFailed)` unless every check passed.
    pub fn into_result(self) -> Result<ComparisonVerdict> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::VerificationFailed {
                order: self.order as usize,
                detail: self.detail,
            })
        }
    }
}

/// Seed of the specialization of the free variables.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Truncation used by [`comparison_check`] for comparison order `e`.
pub fn comparison_truncation(b: &SemigroupBasis, rl: &RelationLattice, n: &LatticePoint, e: u32) -> Result<usize> {
    let layout = JetLayout::new(b, n)?;
    let max_d = layout.pairings().iter().copied().max().unwrap_or(0) as usize;
    let mut max_c = 0usize;
    for l in rl.special().values() {
        max_c = max_c.max(to_usize(pair_relation(n, l, b)?)?);
    }
    let e = e as usize;
    Ok((max_c + e * max_d + 3).max(max_d * (e + 1)))
}

fn to_usize(x: BigInt) -> Result<usize> {
    x.to_usize().ok_or_else(|| Error::DepthOverflow(x.to_string()))
}

/// Compares the model ideal with the ideal cut out by the lifted arcs,
/// modulo `m^e`, with the free variables specialized at seeded rationals.
pub fn comparison_check(b: &SemigroupBasis, rl: &RelationLattice, n: &LatticePoint, e: u32) -> Result<ComparisonVerdict> {
    comparison_check_seeded(b, rl, n, e, DEFAULT_SEED)
}

pub fn comparison_check_seeded(
    b: &SemigroupBasis,
    rl: &RelationLattice,
    n: &LatticePoint,
    e: u32,
    seed: u64,
) -> Result<ComparisonVerdict> {
    if e == 0 {
        return Err(Error::InvalidInput("comparison order must be at least 1".into()));
    }
    // The linear part of the coordinate change is only visible modulo m^2.
    let prep_order = e.max(2);
    let t = comparison_truncation(b, rl, n, prep_order)?;
    let first = images_at(b, rl, n, prep_order, t, seed)?;
    let second = images_at(b, rl, n, prep_order, t + 5, seed)?;
    let mut verdict = compare(b, rl, n, &first, e)?;
    let truncate = |imgs: &Images| -> BTreeMap<VarId, SparsePoly> {
        imgs.x_images
            .iter()
            .map(|(v, p)| (*v, p.grade_filter(&imgs.m_vars, e as i64)))
            .collect()
    };
    verdict.stable = truncate(&first) == truncate(&second) && first.arc_gens_reduced(e) == second.arc_gens_reduced(e);
    if !verdict.stable && verdict.detail.is_empty() {
        verdict.detail = format!("results differ between truncations {t} and {}", t + 5);
    }
    Ok(verdict)
}

/// Everything computed from the lifted arcs at one truncation.
struct Images {
    truncation: usize,
    m_vars: BTreeSet<VarId>,
    /// `X[i][j] -> frak X[i][j]` modulo `m^{prep_order}`.
    x_images: BTreeMap<VarId, SparsePoly>,
    /// `(q, s) -> ` coefficient of `t^s` in `F_q(Y(t))`, `s <= T`.
    arc_coeffs: BTreeMap<(usize, usize), SparsePoly>,
    c: BTreeMap<usize, usize>,
}

impl Images {
    fn arc_gens_reduced(&self, e: u32) -> Vec<SparsePoly> {
        self.arc_coeffs
            .iter()
            .filter(|((q, s), _)| *s < self.c[q])
            .map(|(_, p)| p.grade_filter(&self.m_vars, e as i64))
            .collect()
    }
}

/// The arcs `Y_i(t) = sum_s hat-epsilon(Z[i][s]) t^s` modulo
/// `(m^{e}, t^{T+1})`, computed from a lift at order `e - 1`.
pub fn lifted_arcs(lr: &LiftResult, e: u32, t: usize) -> Result<Vec<LocalTSeries>> {
    let m_vars: BTreeSet<VarId> = lr.layout.model_vars().into_iter().collect();
    (1..=lr.layout.h() as u32)
        .map(|i| {
            let coeffs = (0..=t as u32)
                .map(|s| epsilon_hat_eval(lr, i, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(LocalTSeries::from_coeffs(coeffs, t, e, m_vars.clone()))
        })
        .collect()
}

fn images_at(
    b: &SemigroupBasis,
    rl: &RelationLattice,
    n: &LatticePoint,
    prep_order: u32,
    t: usize,
    seed: u64,
) -> Result<Images> {
    let layout = JetLayout::new(b, n)?;
    let lift_order = prep_order - 1;
    let mut s_max = 0u32;
    let mut c = BTreeMap::new();
    for (&q, l) in rl.special() {
        let cq = to_usize(pair_relation(n, l, b)?)?;
        let dq = layout.pairing(q) as usize;
        let delta = (cq - dq) as u32;
        s_max = s_max.max(t.saturating_sub(dq) as u32 + lift_order * delta);
        c.insert(q, cq);
    }
    let values = sample_free_values(&layout, t as u32, seed);
    let sys = build_system_specialized(b, rl, n, s_max, &values)?;
    let lr = lift(&sys, lift_order)?;
    let arcs = lifted_arcs(&lr, prep_order, t)?;
    let m_vars: BTreeSet<VarId> = layout.model_vars().into_iter().collect();

    let mut x_images = BTreeMap::new();
    for (k, y) in arcs.iter().enumerate() {
        let w = prepare(y)?;
        debug_assert_eq!(w.order, layout.pairing(k + 1) as usize);
        for (j, p) in w.lower.into_iter().enumerate() {
            x_images.insert(VarId::new(Stream::Model, k as u32 + 1, j as u32), p);
        }
    }

    let mut arc_coeffs = BTreeMap::new();
    for (&q, l) in rl.special() {
        let value = eval_binomial(l, &arcs);
        for s in 0..=t {
            arc_coeffs.insert((q, s), value.coeff(s).clone());
        }
    }
    Ok(Images {
        truncation: t,
        m_vars,
        x_images,
        arc_coeffs,
        c,
    })
}

/// `prod Y_i^{l_i^+} - prod Y_i^{l_i^-}`.
fn eval_binomial(l: &[BigInt], arcs: &[LocalTSeries]) -> LocalTSeries {
    let side = |sign: i32| {
        let mut acc = arcs[0].like(TSeries::constant(SparsePoly::one(), arcs[0].truncation()));
        for (x, y) in l.iter().zip(arcs) {
            let k = x.to_i32().expect("relation entries fit i32") * sign;
            if k > 0 {
                acc = acc.mul(&y.pow(k as u32));
            }
        }
        acc
    };
    side(1).sub(&side(-1))
}

fn degree_monomials(vars: &[VarId], e: u32) -> Vec<SparsePoly> {
    fn go(vars: &[VarId], from: usize, left: u32, cur: &mut Vec<(VarId, i32)>, out: &mut Vec<SparsePoly>) {
        if left == 0 {
            out.push(SparsePoly::monomial(Monomial::from_pairs(cur.clone()), BigRational::one()));
            return;
        }
        for k in from..vars.len() {
            cur.push((vars[k], 1));
            go(vars, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, 0, e, &mut Vec::new(), &mut out);
    out
}

fn compare(b: &SemigroupBasis, rl: &RelationLattice, n: &LatticePoint, imgs: &Images, e: u32) -> Result<ComparisonVerdict> {
    let mut detail = Vec::new();
    let ei = e as i64;

    let mut tail_vanishes = true;
    for (&(q, s), p) in &imgs.arc_coeffs {
        if s >= imgs.c[&q] && !p.grade_filter(&imgs.m_vars, ei).is_zero() {
            tail_vanishes = false;
            detail.push(format!("F[{q}] has a nonzero t^{s} coefficient on the arcs"));
            break;
        }
    }

    let model = model_ideal(b, rl, n)?;
    let vars = model.variables.clone();
    let power = degree_monomials(&vars, e);
    let image_gens: Vec<SparsePoly> = model
        .nonzero_generators()
        .iter()
        .map(|g| Ok(g.substitute(&imgs.x_images)?.grade_filter(&imgs.m_vars, ei)))
        .collect::<Result<_>>()?;
    let arc_gens = imgs.arc_gens_reduced(e);

    let with_power = |gens: &[SparsePoly]| {
        let mut all: Vec<SparsePoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        all.extend(power.iter().cloned());
        groebner::buchberger_in(&all, &vars, false)
    };
    let arc_basis = with_power(&arc_gens)?;
    let model_basis = with_power(&image_gens)?;
    let missing = |g: &groebner::GBasis, gens: &[SparsePoly]| gens.iter().find(|p| !g.member(p)).cloned();
    let model_in_arc_ideal = match missing(&arc_basis, &image_gens) {
        None => true,
        Some(p) => {
            detail.push(format!("model generator image {p} is not in the arc ideal"));
            false
        }
    };
    let arc_in_model_ideal = match missing(&model_basis, &arc_gens) {
        None => true,
        Some(p) => {
            detail.push(format!("arc coefficient {p} is not in the model ideal"));
            false
        }
    };

    let automorphism = match automorphism_defect(&imgs.x_images, &imgs.m_vars) {
        None => true,
        Some(why) => {
            detail.push(why);
            false
        }
    };

    Ok(ComparisonVerdict {
        order: e,
        truncation: imgs.truncation,
        tail_vanishes,
        model_in_arc_ideal,
        arc_in_model_ideal,
        automorphism,
        stable: true,
        detail: detail.join("; "),
    })
}

/// The substitution `X[i][j] -> frak X[i][j]` must send `m` into `m` with a
/// linear part that is lower triangular in `j` within each `i`, with a
/// nonzero diagonal.
fn automorphism_defect(images: &BTreeMap<VarId, SparsePoly>, m_vars: &BTreeSet<VarId>) -> Option<String> {
    for (v, p) in images {
        if !p.graded_part(|x| m_vars.contains(x), 0).is_zero() {
            return Some(format!("image of {v} is not in the maximal ideal"));
        }
        let linear = p.graded_part(|x| m_vars.contains(x), 1);
        for (m, c) in linear.terms() {
            let w = m.pairs()[0].0;
            if c.is_zero() {
                continue;
            }
            if w.i != v.i || w.s > v.s {
                return Some(format!("linear part of the image of {v} involves {w}"));
            }
        }
        if linear.coeff(&Monomial::var(*v)).is_zero() {
            return Some(format!("linear part of the image of {v} has zero diagonal entry"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::select_z_basis;
        use crate::toric_ideal::relation_lattice;

    fn x() -> VarId {
        VarId::aux(1, 0)
    }

    /// Series in `t` from `X[1][0]`-coefficients listed by t-degree.
    fn series(coeffs: &[&str], t: usize, e: u32) -> LocalTSeries {
        let coeffs = coeffs.iter().map(|c| crate::polyring::parse_poly(c).unwrap()).collect();
        LocalTSeries::from_coeffs(coeffs, t, e, [x()].into())
    }

    fn same(a: &SparsePoly, b: &SparsePoly) -> bool {
        (a - b).is_zero()
    }

    #[test]
    fn orders() {
        assert_eq!(t_order(&series(&["X[1][0]", "1"], 4, 2)).unwrap(), 1);
        assert_eq!(t_order(&series(&["0", "X[1][0]", "1"], 4, 2)).unwrap(), 2);
        assert_eq!(
            t_order(&series(&["X[1][0]"], 3, 2)),
            Err(Error::NotRegular { truncation: 3 })
        );
    }

    #[test]
    fn preparation_examples() {
        let f = series(&["X[1][0]", "1"], 4, 2);
        let w = prepare(&f).unwrap();
        assert_eq!(w.order, 1);
        assert_eq!(w.lower[0].to_string(), "X[1][0]");
        assert!(same(w.unit.coeff(0), &SparsePoly::one()));
        assert!(w.unit.series().coeffs().iter().skip(1).all(SparsePoly::is_zero));

        let f = series(&["X[1][0]", "1", "1"], 3, 2);
        let w = prepare(&f).unwrap();
        assert_eq!(w.lower[0].to_string(), "X[1][0]");
        assert_eq!(w.unit.truncation(), 1);
        assert_eq!(w.unit.coeff(0).to_string(), "-X[1][0] + 1");
        assert_eq!(w.unit.coeff(1).to_string(), "1");
        let back = w.w_poly().mul(&w.unit);
        assert_eq!(back, f.truncate(back.truncation()));

        assert!(matches!(
            prepare(&series(&["X[1][0]", "1", "1"], 2, 2)),
            Err(Error::TruncationTooSmall { needed: 3, .. })
        ));
        assert!(matches!(
            prepare(&series(&["X[1][0]", "2*X[1][0]"], 3, 2)),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn division_examples() {
        let f = series(&["X[1][0]", "1"], 6, 3);
        let g = series(&["0", "0", "1"], 6, 3);
        let d = divide(&g, &f).unwrap();
        assert_eq!(d.remainder, vec![crate::polyring::parse_poly("X[1][0]^2").unwrap()]);
        assert_eq!(d.quotient.coeff(0).to_string(), "-X[1][0]");
        assert_eq!(d.quotient.coeff(1).to_string(), "1");

        let d = divide(&f, &f).unwrap();
        assert!(d.remainder.iter().all(SparsePoly::is_zero));
        assert!(same(d.quotient.coeff(0), &SparsePoly::one()));

        let f = series(&["0", "X[1][0]", "1"], 8, 3);
        let g = series(&["0", "0", "0", "1"], 8, 3);
        let d = divide(&g, &f).unwrap();
        assert_eq!(d.remainder[0], SparsePoly::zero());
        assert_eq!(d.remainder[1].to_string(), "X[1][0]^2");
        assert_eq!(d.quotient.coeff(0).to_string(), "-X[1][0]");
        assert_eq!(d.quotient.coeff(1).to_string(), "1");
        assert!(d.quotient.series().coeffs().iter().skip(2).all(SparsePoly::is_zero));
    }

    fn a1() -> (SemigroupBasis, RelationLattice) {
        let b = select_z_basis(
            &[LatticePoint::from_i64(&[0, 1]), LatticePoint::from_i64(&[1, 0]), LatticePoint::from_i64(&[2, -1])],
            2,
        )
        .unwrap();
        let rl = relation_lattice(&b).unwrap();
        (b, rl)
    }

    #[test]
    fn a1_arcs() {
        let (b, rl) = a1();
        let n = LatticePoint::from_i64(&[1, 1]);
        let layout = JetLayout::new(&b, &n).unwrap();
        let values = sample_free_values(&layout, 10, 1);
        let sys = build_system_specialized(&b, &rl, &n, 10, &values).unwrap();
        let lr = lift(&sys, 1).unwrap();
        let arcs = lifted_arcs(&lr, 2, 6).unwrap();
        assert_eq!(t_order(&arcs[0]).unwrap(), 1);
        for y in &arcs {
            let w = prepare(y).unwrap();
            assert_eq!(w.order, 1);
            let back = w.w_poly().mul(&w.unit);
            assert_eq!(back, y.truncate(back.truncation()));
        }
        let w3 = prepare(&arcs[2]).unwrap();
        let linear = w3.lower[0].graded_part(|v| v.stream == Stream::Model, 1);
        assert!(!linear.coeff(&Monomial::var(VarId::new(Stream::Model, 3, 0))).is_zero());
    }

    #[test]
    fn a1_comparison() {
        let (b, rl) = a1();
        for e in 1..=2 {
            let v = comparison_check(&b, &rl, &LatticePoint::from_i64(&[1, 1]), e).unwrap();
            assert!(v.passed(), "{v:?}");
            assert_eq!(v.order, e);
        }
    }

    #[test]
    fn smooth_comparison() {
        let b = select_z_basis(&[LatticePoint::from_i64(&[1, 0]), LatticePoint::from_i64(&[0, 1])], 2).unwrap();
        let rl = relation_lattice(&b).unwrap();
        let v = comparison_check(&b, &rl, &LatticePoint::from_i64(&[2, 3]), 2).unwrap();
        assert!(v.passed());
    }
}
