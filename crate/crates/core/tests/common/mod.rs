//! Brute-force oracles and randomized property checks shared by the
//! integration tests and the acceptance harness.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use arcmodel::groebner::{buchberger_in, verify_certificate};
use arcmodel::jet_model::{model_ideal, JetLayout};
use arcmodel::lattice_geom::{dual_cone, hilbert_basis, select_z_basis, Cone, LatticePoint, SemigroupBasis};
use arcmodel::polyring::{hs_expand, Monomial, SparsePoly, Stream, TSeries, VarId};
use arcmodel::toric_ideal::{binomial_of, pair_relation, relation_lattice, RelationLattice};
use arcmodel::weierstrass::{prepare, LocalTSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const CASES: u32 = 200;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn p(xs: &[i64]) -> LatticePoint {
    LatticePoint::from_i64(xs)
}

/// Whether `x = a r1 + b r2` with `a, b >= 0`, by Cramer's rule.
pub fn in_plane_cone(r1: (i64, i64), r2: (i64, i64), x: (i64, i64)) -> bool {
    let det = r1.0 * r2.1 - r1.1 * r2.0;
    let a = x.0 * r2.1 - x.1 * r2.0;
    let b = r1.0 * x.1 - r1.1 * x.0;
    if det > 0 {
        a >= 0 && b >= 0
    } else {
        a <= 0 && b <= 0
    }
}

/// Irreducible nonzero lattice points of a plane cone found by exhaustive
/// search in the box `[-bound, bound]^2`.
pub fn brute_plane_hilbert(contains: impl Fn((i64, i64)) -> bool, bound: i64) -> BTreeSet<(i64, i64)> {
    let pts: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|x| (-bound..=bound).map(move |y| (x, y)))
        .filter(|&q| q != (0, 0) && contains(q))
        .collect();
    let set: BTreeSet<(i64, i64)> = pts.iter().copied().collect();
    pts.iter()
        .copied()
        .filter(|&x| {
            !pts.iter().any(|&y| {
                let z = (x.0 - y.0, x.1 - y.1);
                z != (0, 0) && set.contains(&z)
            })
        })
        .collect()
}

/// Number of multisets of `atoms` summing to `n`, and the largest size of
/// such a multiset. `weight` must be positive on every atom.
pub fn brute_multisets(atoms: &[(i64, i64)], n: (i64, i64), weight: (i64, i64)) -> (usize, usize) {
    fn go(
        atoms: &[(i64, i64)],
        k: usize,
        rest: (i64, i64),
        len: usize,
        weight: (i64, i64),
        out: &mut (usize, usize),
    ) {
        if rest == (0, 0) {
            out.0 += 1;
            out.1 = out.1.max(len);
            return;
        }
        if k == atoms.len() || rest.0 * weight.0 + rest.1 * weight.1 <= 0 {
            return;
        }
        let a = atoms[k];
        let mut r = rest;
        let mut m = 0;
        loop {
            go(atoms, k + 1, r, len + m, weight, out);
            r = (r.0 - a.0, r.1 - a.1);
            m += 1;
            if r.0 * weight.0 + r.1 * weight.1 < 0 {
                break;
            }
        }
    }
    let mut out = (0, 0);
    go(atoms, 0, n, 0, weight, &mut out);
    out
}

pub fn base_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-3i64..=3, 0i32..=2, 0i32..=2, 0i32..=2), 1..=3).prop_map(|terms| {
        let mut f = SparsePoly::zero();
        for (c, a, b, d) in terms {
            let m = Monomial::from_pairs(
                [(VarId::base(1), a), (VarId::base(2), b), (VarId::base(3), d)]
                    .into_iter()
                    .filter(|(_, e)| *e != 0)
                    .collect(),
            );
            f = &f + &SparsePoly::monomial(m, BigRational::from_integer(c.into()));
        }
        f
    })
}

fn series_map(t: usize) -> impl Strategy<Value = BTreeMap<u32, TSeries>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2, -2i64..=2), t + 1), 3).prop_map(move |rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, row)| {
                let i = i as u32 + 1;
                let coeffs = row
                    .into_iter()
                    .enumerate()
                    .map(|(s, (a, b))| {
                        &SparsePoly::from_int(a) + &SparsePoly::var(VarId::new(Stream::Model, i, s as u32)).scale(&BigRational::from_integer(b.into()))
                    })
                    .collect();
                (i, TSeries::new(coeffs, t))
            })
            .collect()
    })
}

/// Substitution of series is multiplicative (and additive) at every
/// truncation.
pub fn check_hs_multiplicative(cases: u32) -> Result<(), String> {
    let strat = (0usize..=4).prop_flat_map(|t| (base_poly(), base_poly(), series_map(t)));
    runner(cases)
        .run(&strat, |(f, g, s)| {
            let lhs = hs_expand(&(&f * &g), &s).unwrap();
            let rhs = hs_expand(&f, &s).unwrap().mul(&hs_expand(&g, &s).unwrap()).unwrap();
            prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
            let sum = hs_expand(&(&f + &g), &s).unwrap();
            let parts = hs_expand(&f, &s).unwrap().add(&hs_expand(&g, &s).unwrap()).unwrap();
            prop_assert_eq!(sum.coeffs(), parts.coeffs());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// A plane cone with small rays and a valuation vector inside it.
pub fn cone_and_n(max_ray: i64) -> impl Strategy<Value = ((i64, i64), (i64, i64), (i64, i64))> {
    let r = (-max_ray..=max_ray, -max_ray..=max_ray);
    (r.clone(), r, 0i64..=2, 0i64..=2)
        .prop_filter("independent rays, nonzero n", |(r1, r2, a, b)| {
            r1.0 * r2.1 - r1.1 * r2.0 != 0 && (*a, *b) != (0, 0)
        })
        .prop_map(|(r1, r2, a, b)| (r1, r2, (a * r1.0 + b * r2.0, a * r1.1 + b * r2.1)))
}

/// Under `Z_i -> sum_{s<d_i} Z[i][s] t^s + t^{d_i}` both monomials of each
/// distinguished binomial have degree exactly `c_q` with leading
/// coefficient 1, so the binomial has degree below `c_q`.
pub fn check_leading_cancellation(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&cone_and_n(3), |(r1, r2, n)| {
            let cone = Cone::from_i64(&[&[r1.0, r1.1], &[r2.0, r2.1]]).unwrap();
            let hb = hilbert_basis(&dual_cone(&cone).unwrap());
            let b = select_z_basis(&hb, 2).unwrap();
            let rl = relation_lattice(&b).unwrap();
            let np = p(&[n.0, n.1]);
            let layout = JetLayout::new(&b, &np).unwrap();
            let mut cs = Vec::new();
            for l in rl.special().values() {
                cs.push((l.clone(), pair_relation(&np, l, &b).unwrap().to_usize().unwrap()));
            }
            let plus_weight = |l: &[BigInt]| l.iter().filter(|x| x.is_positive()).map(|x| x.to_i64().unwrap()).sum::<i64>();
            prop_assume!(cs.iter().all(|(l, c)| *c <= 8 && plus_weight(l) <= 4));
            for (l, c) in &cs {
                let t = c + 2;
                let series: BTreeMap<u32, TSeries> = (1..=layout.h() as u32).map(|i| (i, layout.model_series(i, t))).collect();
                let bin = binomial_of(l);
                for side in [bin.plus_monomial().unwrap(), bin.minus_monomial().unwrap()] {
                    let e = hs_expand(&SparsePoly::monomial(side, BigRational::from_integer(1.into())), &series).unwrap();
                    prop_assert!((e.coeff(*c) - &SparsePoly::one()).is_zero());
                    prop_assert!(e.coeff(c + 1).is_zero() && e.coeff(c + 2).is_zero());
                }
                let f = hs_expand(&bin.to_poly().unwrap(), &series).unwrap();
                prop_assert!((*c..=t).all(|s| f.coeff(s).is_zero()));
            }
            let m = model_ideal(&b, &rl, &np).unwrap();
            prop_assert_eq!(m.generators.len(), cs.iter().map(|(_, c)| c).sum::<usize>());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn m_vars() -> BTreeSet<VarId> {
    [VarId::aux(1, 0), VarId::aux(2, 0)].into()
}

/// A polynomial in `X[1][0], X[2][0]` of degree at most 2, with the
/// constant term forced to zero when `in_m`.
pub fn local_coeff(in_m: bool) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(-3i64..=3, 6).prop_map(move |c| {
        let x = SparsePoly::var(VarId::aux(1, 0));
        let y = SparsePoly::var(VarId::aux(2, 0));
        let basis = [SparsePoly::one(), x.clone(), y.clone(), &x * &x, &x * &y, &y * &y];
        let mut out = SparsePoly::zero();
        for (k, (b, c)) in basis.iter().zip(c).enumerate() {
            if k == 0 && in_m {
                continue;
            }
            out = &out + &b.scale(&BigRational::from_integer(c.into()));
        }
        out
    })
}

/// A regular series of order `d` truncated at `t`, with the m-order `e`.
pub fn regular_series_with(e: u32, d: usize, t: usize) -> impl Strategy<Value = LocalTSeries> {
    let low = prop::collection::vec(local_coeff(true), d);
    let unit = (prop_oneof![-3i64..=-1, 1i64..=3], local_coeff(true));
    let high = prop::collection::vec(local_coeff(false), t - d);
    (low, unit, high).prop_map(move |(low, (u0, um), high)| {
        let mut coeffs = low;
        coeffs.push(&um + &SparsePoly::from_int(u0));
        coeffs.extend(high);
        LocalTSeries::from_coeffs(coeffs, t, e, m_vars())
    })
}

/// Admissible `(E, d, T)`: `T >= d (E + 1)`.
pub fn division_shape() -> impl Strategy<Value = (u32, usize, usize)> {
    (1u32..=3, 0usize..=3, 0usize..=2).prop_map(|(e, d, extra)| (e, d, d * (e as usize + 1) + extra))
}

pub fn regular_series() -> impl Strategy<Value = LocalTSeries> {
    division_shape().prop_flat_map(|(e, d, t)| regular_series_with(e, d, t))
}

/// An arbitrary series with m-order `e` truncated at `t`.
pub fn local_series(e: u32, t: usize) -> impl Strategy<Value = LocalTSeries> {
    prop::collection::vec(local_coeff(false), t + 1).prop_map(move |c| LocalTSeries::from_coeffs(c, t, e, m_vars()))
}

/// Preparation followed by re-multiplication reproduces the input within
/// the truncation of the unit.
pub fn check_weierstrass_residual(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&regular_series(), |f| {
            let w = prepare(&f).unwrap();
            let back = w.w_poly().mul(&w.unit);
            let t = back.truncation();
            prop_assert!(t >= w.order);
            let want = f.truncate(t);
            prop_assert_eq!(back.series().coeffs(), want.series().coeffs());
            for c in &w.lower {
                prop_assert!(c.graded_part(|v| m_vars().contains(v), 0).is_zero());
            }
            prop_assert!(!w.unit.coeff(0).graded_part(|v| m_vars().contains(v), 0).is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn small_poly3() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-3i64..=3, 0i32..=2, 0i32..=2, 0i32..=1), 1..=3).prop_map(|terms| {
        let mut f = SparsePoly::zero();
        for (c, a, b, d) in terms {
            let m = Monomial::from_pairs(
                [
                    (VarId::new(Stream::Model, 1, 0), a),
                    (VarId::new(Stream::Model, 2, 0), b),
                    (VarId::new(Stream::Model, 3, 0), d),
                ]
                .into_iter()
                .filter(|(_, e)| *e != 0)
                .collect(),
            );
            f = &f + &SparsePoly::monomial(m, BigRational::from_integer(c.into()));
        }
        f
    })
}

/// For `p = sum a_i g_i` the basis recovers cofactors that multiply back
/// to `p` exactly.
pub fn check_groebner_certificates(cases: u32) -> Result<(), String> {
    let strat = (2usize..=3).prop_flat_map(|k| {
        (
            prop::collection::vec(small_poly3(), k),
            prop::collection::vec(small_poly3(), k),
        )
    });
    runner(cases)
        .run(&strat, |(gens, cof)| {
            let target = gens.iter().zip(&cof).fold(SparsePoly::zero(), |acc, (g, c)| &acc + &(g * c));
            let g = buchberger_in(&gens, &[], true).unwrap();
            prop_assert!(g.member(&target));
            let cert = g.certificate(&target).expect("member has a certificate");
            prop_assert!(verify_certificate(&target, &gens, &cert));
            for gen in &gens {
                prop_assert!(g.member(gen));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Hilbert bases of dual cones of plane cones with ray coordinates up to 6
/// agree with exhaustive search.
pub fn check_hilbert_basis(cases: u32) -> Result<(), String> {
    let r = (-6i64..=6, -6i64..=6);
    let strat = (r.clone(), r).prop_filter("independent", |(a, b)| a.0 * b.1 - a.1 * b.0 != 0);
    runner(cases)
        .run(&strat, |(r1, r2)| {
            let cone = Cone::from_i64(&[&[r1.0, r1.1], &[r2.0, r2.1]]).unwrap();
            let got: BTreeSet<(i64, i64)> = hilbert_basis(&dual_cone(&cone).unwrap())
                .iter()
                .map(|m| {
                    let v = m.to_i64().unwrap();
                    (v[0], v[1])
                })
                .collect();
            // The dual cone: <m, r1> >= 0 and <m, r2> >= 0. Its Hilbert basis
            // lies in the parallelogram spanned by the primitive dual rays,
            // whose coordinates are at most 6 each.
            let contains = |m: (i64, i64)| m.0 * r1.0 + m.1 * r1.1 >= 0 && m.0 * r2.0 + m.1 * r2.1 >= 0;
            let want = brute_plane_hilbert(contains, 12);
            prop_assert_eq!(got, want);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Cone, its dual's Hilbert basis with the Z-basis first, and the relation
/// lattice.
pub fn pipeline(rays: &[&[i64]]) -> (Cone, SemigroupBasis, RelationLattice) {
    let cone = Cone::from_i64(rays).unwrap();
    let hb = hilbert_basis(&dual_cone(&cone).unwrap());
    let b = select_z_basis(&hb, cone.rank()).unwrap();
    let rl = relation_lattice(&b).unwrap();
    (cone, b, rl)
}

/// A plane cone with rays of coordinates at most `max_ray` and a lattice
/// point of it with coordinates in `[-max_n, max_n]`.
pub fn plane_cone_point(max_ray: i64, max_n: i64) -> impl Strategy<Value = ((i64, i64), (i64, i64), (i64, i64))> {
    let r = (-max_ray..=max_ray, -max_ray..=max_ray);
    (r.clone(), r, (-max_n..=max_n, -max_n..=max_n)).prop_filter("independent rays, n in the cone", |(r1, r2, n)| {
        r1.0 * r2.1 - r1.1 * r2.0 != 0 && in_plane_cone(*r1, *r2, *n)
    })
}

/// The facet normals of a plane cone summed: positive on every nonzero
/// point of the cone.
pub fn interior_weight(cone: &Cone) -> (i64, i64) {
    cone.facets().iter().fold((0, 0), |acc, u| {
        let v = u.to_i64().unwrap();
        (acc.0 + v[0], acc.1 + v[1])
    })
}

/// Cone data for a random plane cone and a nonzero valuation in it whose
/// distinguished relations all have `c_q <= max_c`.
pub fn small_case(max_c: u32) -> impl Strategy<Value = ((i64, i64), (i64, i64), (i64, i64))> {
    plane_cone_point(3, 3).prop_filter("small relations", move |(r1, r2, n)| {
        if *n == (0, 0) {
            return false;
        }
        let (_, b, rl) = pipeline(&[&[r1.0, r1.1], &[r2.0, r2.1]]);
        let Ok(d) = b.pairings(&p(&[n.0, n.1])) else { return false };
        rl.special().values().all(|l| {
            let c: BigInt = l.iter().zip(&d).filter(|(x, _)| x.sign() == num_bigint::Sign::Plus).map(|(x, y)| x * y).sum();
            c.to_u32().is_some_and(|c| c <= max_c)
        })
    })
}
