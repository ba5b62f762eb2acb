//! Truncated Hensel lifting for the toric system: the equations
//! `H_{q,s} = F_{q, c_q + s}`, their triangular solution modulo the maximal
//! ideal `m = (model variables)`, and Newton lifting to the series
//! `Z_{q,s}` modulo `m^{e+1}`.
//!
//! Coefficients live in the localization at `G_n`; free variables may
//! optionally be replaced by rational values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jet_model::JetLayout;
use crate::lattice_geom::{LatticePoint, SemigroupBasis};
use crate::polyring::{hs_expand, SparsePoly, Stream, TSeries, VarId};
use crate::toric_ideal::{binomial_of, pair_relation, RelationLattice};

fn is_x(v: &VarId) -> bool {
    v.stream == Stream::Model
}

/// One equation `H_{q,s} = U Y_{q,s} + E_{q,s,-1} + sum_r E_{q,s,r} Y_{q,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselEquation {
    pub poly: SparsePoly,
    /// `U_{q,s}`: the m-constant part of the coefficient of `Y_{q,s}`.
    pub unit: SparsePoly,
    /// `r -> ` full coefficient of `Y_{q,r}` (including `U` when `r = s`).
    pub coefficients: BTreeMap<u32, SparsePoly>,
    /// `E_{q,s,-1}`: the part free of `Y`.
    pub rest: SparsePoly,
}

impl HenselEquation {
    /// `E_{q,s,r}`: the coefficient of `Y_{q,r}` with `U` removed when `r = s`.
    pub fn correction(&self, s: u32, r: u32) -> SparsePoly {
        let c = self.coefficients.get(&r).cloned().unwrap_or_default();
        if r == s {
            &c - &self.unit
        } else {
            c
        }
    }
}

/// Per-relation data of a [`HenselSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSystem {
    pub relation: Vec<BigInt>,
    /// `c_q = <n, l_q>`.
    pub c: u32,
    /// `delta_q = c_q - <n, m_q>`: how far beyond `s` the unknowns of
    /// equation `s` reach.
    pub delta: u32,
    pub equations: Vec<HenselEquation>,
}

/// The equations `H_{q,s}` for `d < q <= h` and `0 <= s <= s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselSystem {
    layout: JetLayout,
    s_max: u32,
    relations: BTreeMap<u32, RelationSystem>,
    specialization: Option<BTreeMap<VarId, BigRational>>,
}

impl HenselSystem {
    pub fn layout(&self) -> &JetLayout {
        &self.layout
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relations(&self) -> &BTreeMap<u32, RelationSystem> {
        &self.relations
    }

    pub fn specialization(&self) -> Option<&BTreeMap<VarId, BigRational>> {
        self.specialization.as_ref()
    }

    pub fn equation(&self, q: u32, s: u32) -> Option<&HenselEquation> {
        self.relations.get(&q)?.equations.get(s as usize)
    }

    /// `Y_{q,r} = Z[q][<n,m_q> + r]`.
    pub fn y_var(&self, q: u32, r: u32) -> VarId {
        VarId::new(Stream::Lifted, q, self.layout.pairing(q as usize) + r)
    }

    /// Largest `delta_q`.
    pub fn max_delta(&self) -> u32 {
        self.relations.values().map(|r| r.delta).max().unwrap_or(0)
    }
}

/// Equation depth needed to lift to order `e` with a window of `window + 1`
/// series per relation.
pub fn required_depth(b: &SemigroupBasis, rl: &RelationLattice, n: &LatticePoint, e: u32, window: u32) -> Result<u32> {
    let layout = JetLayout::new(b, n)?;
    let mut delta = 0u32;
    for (&q, l) in rl.special() {
        let c = to_u32(pair_relation(n, l, b)?)?;
        delta = delta.max(c - layout.pairing(q));
    }
    Ok(window + e * delta)
}

fn to_u32(x: BigInt) -> Result<u32> {
    x.to_u32().ok_or_else(|| Error::DepthOverflow(x.to_string()))
}

pub fn build_system(b: &SemigroupBasis, rl: &RelationLattice, n: &LatticePoint, s_max: u32) -> Result<HenselSystem> {
    build(b, rl, n, s_max, None)
}

/// As [`build_system`], with the free variables listed in `values` replaced
/// by those rationals. Values for `Z[i][<n,m_i>]` must be nonzero.
pub fn build_system_specialized(
    b: &SemigroupBasis,
    rl: &RelationLattice,
    n: &LatticePoint,
    s_max: u32,
    values: &BTreeMap<VarId, BigRational>,
) -> Result<HenselSystem> {
    build(b, rl, n, s_max, Some(values.clone()))
}

/// Seeded nonzero rationals for the free variables `Z[i][s]`, `i <= d`,
/// `<n,m_i> <= s <= <n,m_i> + depth`. Each `i` draws from its own stream, so
/// a larger `depth` extends the assignment without changing it.
pub fn sample_free_values(layout: &JetLayout, depth: u32, seed: u64) -> BTreeMap<VarId, BigRational> {
    let mut out = BTreeMap::new();
    for i in 1..=layout.rank() as u32 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let d = layout.pairing(i as usize);
        for s in d..=d + depth {
            let mut num: i64 = rng.gen_range(-9..=8);
            if num >= 0 {
                num += 1;
            }
            let den: i64 = rng.gen_range(1..=5);
            out.insert(
                VarId::new(Stream::Free, i, s),
                BigRational::new(num.into(), den.into()),
            );
        }
    }
    out
}

fn build(
    b: &SemigroupBasis,
    rl: &RelationLattice,
    n: &LatticePoint,
    s_max: u32,
    specialization: Option<BTreeMap<VarId, BigRational>>,
) -> Result<HenselSystem> {
    let layout = JetLayout::new(b, n)?;
    if let Some(values) = &specialization {
        for v in layout.invertible_vars() {
            if values.get(&v).is_some_and(Zero::is_zero) {
                return Err(Error::InvalidInput(format!("{v} must specialize to a nonzero value")));
            }
        }
    }
    let mut relations = BTreeMap::new();
    for (&q, l) in rl.special() {
        let c = to_u32(pair_relation(n, l, b)?)?;
        let dq = layout.pairing(q);
        let t = (c + s_max) as usize;
        let f = binomial_of(l).to_poly()?;
        let series: BTreeMap<u32, TSeries> = l
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| {
                let i = i as u32 + 1;
                (i, layout.generic_series(i, t, specialization.as_ref()))
            })
            .collect();
        let expanded = hs_expand(&f, &series)?;
        let q32 = q as u32;
        let equations = (0..=s_max)
            .map(|s| split_equation(&layout, q32, dq, s, expanded.coeff((c + s) as usize).clone()))
            .collect::<Result<Vec<_>>>()?;
        relations.insert(
            q32,
            RelationSystem {
                relation: l.clone(),
                c,
                delta: c - dq,
                equations,
            },
        );
    }
    Ok(HenselSystem {
        layout,
        s_max,
        relations,
        specialization,
    })
}

/// Splits `H_{q,s}` along the unknowns and checks (A1), (A2) and, for
/// `s = 0`, (C).
fn split_equation(layout: &JetLayout, q: u32, dq: u32, s: u32, poly: SparsePoly) -> Result<HenselEquation> {
    let violation = |clause: &'static str, detail: String| Error::HypothesisViolation {
        clause,
        q: q as usize,
        s: s as usize,
        detail,
    };
    let mut rest = poly.clone();
    let mut coefficients = BTreeMap::new();
    for v in poly.vars() {
        if v.stream != Stream::Lifted {
            continue;
        }
        if v.i != q {
            return Err(violation("A", format!("equation involves {v} from another relation")));
        }
        let parts = rest.collect_var(v);
        if parts.keys().any(|&k| k != 0 && k != 1) {
            return Err(violation("A", format!("equation is not linear in {v}")));
        }
        coefficients.insert(v.s - dq, parts.get(&1).cloned().unwrap_or_default());
        rest = parts.get(&0).cloned().unwrap_or_default();
    }
    let lead = coefficients.get(&s).cloned().unwrap_or_default();
    let unit = lead.graded_part(is_x, 0);
    if unit.as_unit_monomial().is_none() || !unit.vars().iter().all(|v| layout.is_invertible(v)) {
        return Err(violation("A1", format!("coefficient of {} has m-constant part {unit}", layout.var(q, dq + s))));
    }
    for (&r, c) in &coefficients {
        if r > s && !c.graded_part(is_x, 0).is_zero() {
            return Err(violation("A2", format!("coefficient of Y[{r}] is not in m")));
        }
    }
    if s == 0 && rest.graded_part(is_x, 0).is_zero() {
        return Err(violation("C", "E_{q,0,-1} lies in m".into()));
    }
    Ok(HenselEquation {
        poly,
        unit,
        coefficients,
        rest,
    })
}

/// How the degree-by-degree corrections are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LiftStrategy {
    /// `y <- y - K(H(y))` with `K` the inverse of the Jacobian modulo `m`.
    #[default]
    Newton,
    /// Solve for the homogeneous component of each m-degree in turn.
    GradedSweep,
}

/// The series `Z_{q,s}` modulo `m^{e+1}` for `q > d` and
/// `<n,m_q> <= s <= <n,m_q> + window_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub order: u32,
    pub layout: JetLayout,
    /// `(q, jet depth s) -> Z_{q,s}`.
    pub series: BTreeMap<(u32, u32), SparsePoly>,
    /// Largest relative index `s - <n,m_q>` computed per relation.
    pub windows: BTreeMap<u32, u32>,
    /// The equations in the window were checked to vanish modulo this power
    /// of `m`.
    pub residual_check: u32,
    pub specialization: Option<BTreeMap<VarId, BigRational>>,
}

/// Lower-triangular data of one relation's system modulo `m`.
struct Triangular<'a> {
    rel: &'a RelationSystem,
}

impl Triangular<'_> {
    fn jbar(&self, s: u32, r: u32) -> SparsePoly {
        self.rel.equations[s as usize]
            .coefficients
            .get(&r)
            .map(|c| c.graded_part(is_x, 0))
            .unwrap_or_default()
    }

    /// Solves `Jbar z = -rhs` by forward substitution on rows `0..rhs.len()`.
    fn forward(&self, rhs: &[SparsePoly]) -> Result<Vec<SparsePoly>> {
        let mut z: Vec<SparsePoly> = Vec::with_capacity(rhs.len());
        for (s, b) in rhs.iter().enumerate() {
            let s = s as u32;
            let mut acc = b.clone();
            for (r, zr) in z.iter().enumerate() {
                let j = self.jbar(s, r as u32);
                if !j.is_zero() && !zr.is_zero() {
                    acc = &acc + &(&j * zr);
                }
            }
            z.push((-acc).div_unit(&self.rel.equations[s as usize].unit)?);
        }
        Ok(z)
    }
}

/// `y_{q,s}`: the solution of the system modulo `m`, keyed by `(q, jet depth)`.
pub fn solve_mod_m(sys: &HenselSystem) -> Result<BTreeMap<(u32, u32), SparsePoly>> {
    let mut out = BTreeMap::new();
    for (&q, rel) in &sys.relations {
        let rhs: Vec<SparsePoly> = rel.equations.iter().map(|e| e.rest.graded_part(is_x, 0)).collect();
        let y = Triangular { rel }.forward(&rhs)?;
        let dq = sys.layout.pairing(q as usize);
        for (r, p) in y.into_iter().enumerate() {
            out.insert((q, dq + r as u32), p);
        }
    }
    Ok(out)
}

pub fn lift(sys: &HenselSystem, e: u32) -> Result<LiftResult> {
    lift_with(sys, e, LiftStrategy::Newton)
}

pub fn lift_with(sys: &HenselSystem, e: u32, strategy: LiftStrategy) -> Result<LiftResult> {
    let mut series = BTreeMap::new();
    let mut windows = BTreeMap::new();
    for (&q, rel) in &sys.relations {
        let needed = e * rel.delta;
        if needed > sys.s_max {
            return Err(Error::DepthExhausted {
                order: e as usize,
                needed: needed as usize,
                available: sys.s_max as usize,
            });
        }
        let window = sys.s_max - needed;
        let y = match strategy {
            LiftStrategy::Newton => newton(rel, e)?,
            LiftStrategy::GradedSweep => sweep(rel, e)?,
        };
        verify_rows(sys, q, rel, &y, window, e)?;
        let dq = sys.layout.pairing(q as usize);
        for (r, p) in y.into_iter().take(window as usize + 1).enumerate() {
            series.insert((q, dq + r as u32), p);
        }
        windows.insert(q, window);
    }
    Ok(LiftResult {
        order: e,
        layout: sys.layout.clone(),
        series,
        windows,
        residual_check: e + 1,
        specialization: sys.specialization.clone(),
    })
}

/// `sum_r coefficient_r * y_r + rest` modulo `m^{k+1}`.
fn residual(eq: &HenselEquation, y: &[SparsePoly], k: u32) -> SparsePoly {
    let bound = k as i64 + 1;
    let mut acc = eq.rest.grade_filter_by(is_x, bound);
    for (&r, c) in &eq.coefficients {
        acc = &acc + &c.mul_trunc(&y[r as usize], &is_x, bound);
    }
    acc
}

/// Row `s` of step `k` may use `y_r` for `r <= s + delta`, so step `k`
/// updates rows `0..=s_max - k * delta`; entries beyond keep their previous
/// precision.
fn newton(rel: &RelationSystem, e: u32) -> Result<Vec<SparsePoly>> {
    let tri = Triangular { rel };
    let s_max = rel.equations.len() as u32 - 1;
    let rhs: Vec<SparsePoly> = rel.equations.iter().map(|q| q.rest.graded_part(is_x, 0)).collect();
    let mut y = tri.forward(&rhs)?;
    for k in 1..=e {
        let rows = (s_max - k * rel.delta) as usize + 1;
        let res: Vec<SparsePoly> = rel.equations[..rows].iter().map(|eq| residual(eq, &y, k)).collect();
        let z = tri.forward(&res)?;
        for (yr, zr) in y.iter_mut().zip(z) {
            *yr = (&*yr + &zr).grade_filter_by(is_x, k as i64 + 1);
        }
    }
    Ok(y)
}

fn sweep(rel: &RelationSystem, e: u32) -> Result<Vec<SparsePoly>> {
    let tri = Triangular { rel };
    let s_max = rel.equations.len() as u32 - 1;
    // components[k][r]: the part of m-degree k of y_r.
    let mut components: Vec<Vec<SparsePoly>> = Vec::new();
    for k in 0..=e {
        let rows = (s_max - k * rel.delta) as usize + 1;
        let mut rhs = Vec::with_capacity(rows);
        for eq in &rel.equations[..rows] {
            let mut acc = eq.rest.graded_part(is_x, k as i64);
            for (&r, c) in &eq.coefficients {
                for (j, comp) in components.iter().enumerate() {
                    let part = c.graded_part(is_x, (k as usize - j) as i64);
                    if !part.is_zero() && !comp[r as usize].is_zero() {
                        acc = &acc + &(&part * &comp[r as usize]);
                    }
                }
            }
            rhs.push(acc);
        }
        components.push(tri.forward(&rhs)?);
    }
    let len = components[0].len();
    Ok((0..len)
        .map(|r| {
            components
                .iter()
                .filter_map(|c| c.get(r))
                .fold(SparsePoly::zero(), |acc, p| &acc + p)
        })
        .collect())
}

/// Substitutes the lifted values into `H_{q,s}`, `s <= window`, and checks
/// vanishing modulo `m^{e+1}`.
fn verify_rows(sys: &HenselSystem, q: u32, rel: &RelationSystem, y: &[SparsePoly], window: u32, e: u32) -> Result<()> {
    let assign: BTreeMap<VarId, SparsePoly> = y
        .iter()
        .enumerate()
        .map(|(r, p)| (sys.y_var(q, r as u32), p.clone()))
        .collect();
    for (s, eq) in rel.equations.iter().take(window as usize + 1).enumerate() {
        let value = eq.poly.substitute(&assign)?.grade_filter_by(is_x, e as i64 + 1);
        if !value.is_zero() {
            return Err(Error::VerificationFailed {
                order: e as usize,
                detail: format!("H[{q}][{s}] leaves residual {value}"),
            });
        }
    }
    Ok(())
}

/// `hat-epsilon(Z[i][s])`: the model variable itself for `s < <n,m_i>`, the
/// free variable (or its specialized value) for `i <= d`, the lifted series
/// for `i > d`.
pub fn epsilon_hat_eval(lr: &LiftResult, i: u32, s: u32) -> Result<SparsePoly> {
    let layout = &lr.layout;
    if i == 0 || i as usize > layout.h() {
        return Err(Error::OutOfWindow {
            i: i as usize,
            s: s as usize,
        });
    }
    let v = layout.var(i, s);
    match v.stream {
        Stream::Model => Ok(SparsePoly::var(v)),
        Stream::Free => {
            if let Some(c) = lr.specialization.as_ref().and_then(|m| m.get(&v)) {
                return Ok(SparsePoly::constant(c.clone()));
            }
            let p = SparsePoly::var(v);
            Ok(if layout.is_invertible(&v) { p.with_invertible([v]) } else { p })
        }
        _ => lr.series.get(&(i, s)).cloned().ok_or(Error::OutOfWindow {
            i: i as usize,
            s: s as usize,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::select_z_basis;
    use crate::polyring::parse_poly_with;
    use crate::toric_ideal::relation_lattice;

    fn p(xs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(xs)
    }

    fn a1() -> (SemigroupBasis, RelationLattice) {
        let b = select_z_basis(&[p(&[0, 1]), p(&[1, 0]), p(&[2, -1])], 2).unwrap();
        let rl = relation_lattice(&b).unwrap();
        (b, rl)
    }

    fn system(s_max: u32) -> HenselSystem {
        let (b, rl) = a1();
        build_system(&b, &rl, &p(&[1, 1]), s_max).unwrap()
    }

    fn parse(sys: &HenselSystem, text: &str) -> SparsePoly {
        let layout = sys.layout().clone();
        parse_poly_with(text, &|i, s| layout.stream(i, s)).unwrap()
    }

    fn same(a: &SparsePoly, b: &SparsePoly) -> bool {
        (a - b).is_zero()
    }

    #[test]
    fn a1_equations() {
        let sys = system(3);
        let eq = sys.equation(3, 0).unwrap();
        let f2 = parse(&sys, "Z[1][0]*Z[3][2] + Z[1][1]*Z[3][1] + Z[1][2]*Z[3][0] - Z[2][1]^2 - 2*Z[2][0]*Z[2][2]");
        assert!(same(&eq.poly, &f2));
        assert_eq!(eq.unit.to_string(), "Z[1][1]");
        assert!(same(&eq.rest.graded_part(is_x, 0), &parse(&sys, "-Z[2][1]^2")));
        for s in 0..=3 {
            assert_eq!(sys.equation(3, s).unwrap().unit.to_string(), "Z[1][1]");
        }
        assert_eq!(sys.relations()[&3].delta, 1);
        assert_eq!(sys.y_var(3, 0).to_string(), "Z[3][1]");
    }

    #[test]
    fn a1_triangular_solution() {
        let sys = system(2);
        let y = solve_mod_m(&sys).unwrap();
        assert!(same(&y[&(3, 1)], &parse(&sys, "Z[2][1]^2/Z[1][1]")));
        assert!(same(
            &y[&(3, 2)],
            &parse(&sys, "2*Z[2][1]*Z[2][2]/Z[1][1] - Z[1][2]*Z[2][1]^2/Z[1][1]^2")
        ));
        let lr = lift(&sys, 0).unwrap();
        for (k, v) in &lr.series {
            assert!(same(v, &y[k]));
        }
    }

    #[test]
    fn a1_first_order_series() {
        let sys = system(2);
        let lr = lift(&sys, 1).unwrap();
        assert_eq!(lr.windows[&3], 1);
        let z31 = parse(
            &sys,
            "Z[2][1]^2/Z[1][1] + Z[1][0]*Z[1][2]*Z[2][1]^2/Z[1][1]^3 - 2*Z[1][0]*Z[2][1]*Z[2][2]/Z[1][1]^2 \
             - Z[1][2]*Z[3][0]/Z[1][1] + 2*Z[2][0]*Z[2][2]/Z[1][1]",
        );
        assert!(same(&lr.series[&(3, 1)], &z31));
        let z32 = parse(
            &sys,
            "-Z[1][2]*Z[2][1]^2/Z[1][1]^2 + 2*Z[2][1]*Z[2][2]/Z[1][1] - 2*Z[1][0]*Z[1][2]^2*Z[2][1]^2/Z[1][1]^4 \
             + 4*Z[1][0]*Z[1][2]*Z[2][1]*Z[2][2]/Z[1][1]^3 + Z[1][0]*Z[1][3]*Z[2][1]^2/Z[1][1]^3 \
             - Z[1][0]*Z[2][2]^2/Z[1][1]^2 - 2*Z[1][0]*Z[2][1]*Z[2][3]/Z[1][1]^2 + Z[1][2]^2*Z[3][0]/Z[1][1]^2 \
             - 2*Z[1][2]*Z[2][0]*Z[2][2]/Z[1][1]^2 - Z[1][3]*Z[3][0]/Z[1][1] + 2*Z[2][0]*Z[2][3]/Z[1][1]",
        );
        assert_eq!(z32.len(), 11);
        assert!(same(&lr.series[&(3, 2)], &z32));
        assert!(matches!(epsilon_hat_eval(&lr, 3, 3), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn strategies_agree() {
        let sys = system(5);
        for e in 0..=3 {
            let a = lift_with(&sys, e, LiftStrategy::Newton).unwrap();
            let b = lift_with(&sys, e, LiftStrategy::GradedSweep).unwrap();
            assert_eq!(a.series.len(), b.series.len());
            for (k, v) in &a.series {
                assert!(same(v, &b.series[k]));
            }
        }
    }

    #[test]
    fn depth_is_enforced() {
        let sys = system(1);
        assert!(lift(&sys, 1).is_ok());
        assert_eq!(
            lift(&sys, 2),
            Err(Error::DepthExhausted {
                order: 2,
                needed: 2,
                available: 1
            })
        );
        let (b, rl) = a1();
        assert_eq!(required_depth(&b, &rl, &p(&[1, 1]), 2, 1).unwrap(), 3);
    }

    #[test]
    fn epsilon_hat() {
        let sys = system(2);
        let lr = lift(&sys, 1).unwrap();
        assert_eq!(epsilon_hat_eval(&lr, 1, 1).unwrap().to_string(), "Z[1][1]");
        assert_eq!(epsilon_hat_eval(&lr, 3, 0).unwrap().to_string(), "Z[3][0]");
        assert!(same(&epsilon_hat_eval(&lr, 3, 1).unwrap(), &lr.series[&(3, 1)]));
        assert!(matches!(epsilon_hat_eval(&lr, 4, 0), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn smooth_system_is_empty() {
        let b = select_z_basis(&[p(&[1, 0]), p(&[0, 1])], 2).unwrap();
        let rl = relation_lattice(&b).unwrap();
        let sys = build_system(&b, &rl, &p(&[2, 3]), 4).unwrap();
        assert!(sys.is_empty());
        assert!(solve_mod_m(&sys).unwrap().is_empty());
        assert!(lift(&sys, 3).unwrap().series.is_empty());
    }

    #[test]
    fn specialized_system_lifts() {
        let (b, rl) = a1();
        let n = p(&[1, 1]);
        let layout = JetLayout::new(&b, &n).unwrap();
        let values = sample_free_values(&layout, 6, 7);
        let sys = build_system_specialized(&b, &rl, &n, 4, &values).unwrap();
        let lr = lift(&sys, 2).unwrap();
        // Specializing the symbolic series gives the same result.
        let symbolic = lift(&build_system(&b, &rl, &n, 4).unwrap(), 2).unwrap();
        for (k, v) in &lr.series {
            let w = symbolic.series[k].evaluate(&values).unwrap();
            assert!(same(v, &w));
        }
    }
}
