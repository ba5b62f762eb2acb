//! Properties of cones, Hilbert bases, decompositions and toric relations.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use arcmodel::groebner::buchberger_in;
use arcmodel::lattice_geom::{dual_cone, hilbert_basis, pair, Cone, LatticePoint};
use arcmodel::polyring::{hs_expand, SparsePoly, TSeries, VarId};
use arcmodel::semigroup_decomp::{enumerate_decompositions, is_indecomposable};
use arcmodel::toric_ideal::{binomial_of, ord_n};
use common::{brute_multisets, brute_plane_hilbert, in_plane_cone, interior_weight, p, pipeline, plane_cone_point};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 256,
        max_global_rejects: 100_000,
        ..ProptestConfig::default()
    }
}

fn ray_set(c: &Cone) -> BTreeSet<Vec<i64>> {
    c.rays().iter().map(|r| r.to_i64().unwrap()).collect()
}

fn rays3(max: i64) -> impl Strategy<Value = [[i64; 3]; 3]> {
    let v = [-max..=max, -max..=max, -max..=max];
    [v.clone(), v.clone(), v].prop_filter("independent", |[a, b, c]| det3(a, b, c) != 0)
}

fn det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Irreducible points of a pointed rank-3 cone: candidates within `bound`,
/// scanned by increasing value of an interior weight, keeping those that no
/// earlier irreducible can be subtracted from.
fn brute_hilbert3(cone: &Cone, bound: i64) -> BTreeSet<Vec<i64>> {
    let w: Vec<i64> = cone.facets().iter().fold(vec![0; 3], |acc, u| {
        let u = u.to_i64().unwrap();
        acc.iter().zip(u).map(|(a, b)| a + b).collect()
    });
    let dot = |x: &[i64]| x.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>();
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            for z in -bound..=bound {
                let v = vec![x, y, z];
                if v != [0, 0, 0] && cone.contains(&p(&v)) {
                    pts.push(v);
                }
            }
        }
    }
    pts.sort_by_key(|v| dot(v));
    let mut irred: Vec<Vec<i64>> = Vec::new();
    for v in pts {
        let reducible = irred.iter().any(|h| {
            let d: Vec<i64> = v.iter().zip(h).map(|(a, b)| a - b).collect();
            d != [0, 0, 0] && cone.contains(&p(&d))
        });
        if !reducible {
            irred.push(v);
        }
    }
    irred.into_iter().collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn dual_is_an_involution_in_the_plane((r1, r2, _) in plane_cone_point(6, 0)) {
        let c = Cone::from_i64(&[&[r1.0, r1.1], &[r2.0, r2.1]]).unwrap();
        let dd = dual_cone(&dual_cone(&c).unwrap()).unwrap();
        prop_assert_eq!(ray_set(&dd), ray_set(&c));
    }

    #[test]
    fn dual_is_an_involution_in_space(rays in rays3(4), extra in [-4i64..=4, -4i64..=4, -4i64..=4]) {
        let mut gens: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        gens.push(&extra);
        let Ok(c) = Cone::from_i64(&gens) else {
            // Not pointed once the extra generator is added.
            return Err(TestCaseError::reject("not pointed"));
        };
        let dd = dual_cone(&dual_cone(&c).unwrap()).unwrap();
        prop_assert_eq!(ray_set(&dd), ray_set(&c));
        for r in c.rays() {
            prop_assert!(r.is_primitive());
        }
    }

    #[test]
    fn hilbert_basis_of_simplicial_space_cones(rays in rays3(3)) {
        let gens: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        let c = Cone::from_i64(&gens).unwrap();
        let got: BTreeSet<Vec<i64>> = hilbert_basis(&c).iter().map(|h| h.to_i64().unwrap()).collect();
        // The basis lies in the fundamental parallelepiped closed up by the
        // rays, so each coordinate is bounded by the sum over the rays.
        let bound = (0..3).map(|j| rays.iter().map(|r| r[j].abs()).sum::<i64>()).max().unwrap();
        prop_assert_eq!(got, brute_hilbert3(&c, bound));
    }

    #[test]
    fn hilbert_basis_elements_are_irreducible((r1, r2, _) in plane_cone_point(6, 0)) {
        let c = Cone::from_i64(&[&[r1.0, r1.1], &[r2.0, r2.1]]).unwrap();
        let hb = hilbert_basis(&c);
        let pts = brute_plane_hilbert(|x| in_plane_cone(r1, r2, x), 12);
        for h in &hb {
            prop_assert!(c.contains(h));
            let v = h.to_i64().unwrap();
            prop_assert!(pts.contains(&(v[0], v[1])));
        }
    }

    #[test]
    fn z_basis_is_unimodular(rays in rays3(3)) {
        let gens: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        let (_, b, _) = pipeline(&gens);
        let cols: Vec<Vec<i64>> = b.zbasis_indices().iter().map(|&i| b.generators()[i].to_i64().unwrap()).collect();
        let det = det3(
            &[cols[0][0], cols[0][1], cols[0][2]],
            &[cols[1][0], cols[1][1], cols[1][2]],
            &[cols[2][0], cols[2][1], cols[2][2]],
        );
        prop_assert_eq!(det.abs(), 1);
        prop_assert_eq!(b.zbasis_indices(), &[0, 1, 2][..]);
    }

    #[test]
    fn decompositions_are_exhaustive_and_valid((r1, r2, n) in plane_cone_point(3, 5)) {
        let c = Cone::from_i64(&[&[r1.0, r1.1], &[r2.0, r2.1]]).unwrap();
        let np = p(&[n.0, n.1]);
        if n == (0, 0) {
            prop_assert!(enumerate_decompositions(&c, &np).is_err());
            return Ok(());
        }
        let decs = enumerate_decompositions(&c, &np).unwrap();
        let atoms: Vec<(i64, i64)> = brute_plane_hilbert(|x| in_plane_cone(r1, r2, x), 8).into_iter().collect();
        for d in &decs {
            let sum = d.parts.iter().fold(LatticePoint::zero(2), |acc, x| &acc + x);
            prop_assert_eq!(&sum, &np);
            for x in &d.parts {
                let v = x.to_i64().unwrap();
                prop_assert!(atoms.contains(&(v[0], v[1])));
                prop_assert!(is_indecomposable(&c, x));
            }
        }
        let distinct: BTreeSet<_> = decs.iter().collect();
        prop_assert_eq!(distinct.len(), decs.len());
        let (count, max_len) = brute_multisets(&atoms, n, interior_weight(&c));
        prop_assert_eq!(decs.len(), count);
        prop_assert_eq!(decs.iter().map(|d| d.length()).max().unwrap_or(0), max_len);
    }

    #[test]
    fn relations_hold_and_binomials_vanish_on_the_monomial_arc((r1, r2, n) in plane_cone_point(4, 6)) {
        let (_, b, rl) = pipeline(&[&[r1.0, r1.1], &[r2.0, r2.1]]);
        let np = p(&[n.0, n.1]);
        let d: Vec<i64> = b.pairings(&np).unwrap().iter().map(|x| x.to_i64().unwrap()).collect();
        for l in rl.basis().iter().chain(rl.special().values()) {
            let mut sum = LatticePoint::zero(2);
            for (li, m) in l.iter().zip(b.generators()) {
                sum = &sum + &m.scale(li);
            }
            prop_assert!(sum.is_zero());
            let bin = binomial_of(l);
            let deg: i64 = bin.plus.iter().zip(&d).map(|(e, di)| e.to_i64().unwrap() * di).sum();
            prop_assume!(deg <= 40);
            let t = deg as usize + 1;
            let series: BTreeMap<u32, TSeries> = d
                .iter()
                .enumerate()
                .map(|(i, &di)| (i as u32 + 1, TSeries::t_power(di as usize, SparsePoly::one(), t)))
                .collect();
            prop_assert!(hs_expand(&bin.to_poly().unwrap(), &series).unwrap().is_zero());
        }
    }

    #[test]
    fn ord_n_is_additive_on_monomials(
        (r1, r2, n) in plane_cone_point(4, 6),
        a in prop::collection::vec(0i64..=3, 8),
    ) {
        let (_, b, _) = pipeline(&[&[r1.0, r1.1], &[r2.0, r2.1]]);
        let dual = dual_cone(&Cone::from_i64(&[&[r1.0, r1.1], &[r2.0, r2.1]]).unwrap()).unwrap();
        let np = p(&[n.0, n.1]);
        let combo = |k: &[i64]| {
            b.generators()
                .iter()
                .zip(k)
                .fold(LatticePoint::zero(2), |acc, (m, c)| &acc + &m.scale(&BigInt::from(*c)))
        };
        let (x, y) = (combo(&a[..4]), combo(&a[4..]));
        let one = BigRational::one();
        let v = |m: &LatticePoint| ord_n(&[(one.clone(), m.clone())], &np, &dual).unwrap().unwrap();
        prop_assert_eq!(v(&(&x + &y)), v(&x) + v(&y));
        prop_assert_eq!(v(&x), pair(&x, &np).unwrap());
        let cancel = [(one.clone(), x.clone()), (-one.clone(), x.clone())];
        prop_assert_eq!(ord_n(&cancel, &np, &dual).unwrap(), None);
    }
}

/// For every relation `l` in a small box of the relation lattice, some
/// power of `Z_1 ... Z_d` times `F_l` lies in the ideal of the distinguished
/// binomials.
fn quotient_desk_check(rays: &[&[i64]]) {
    let (c, b, rl) = pipeline(rays);
    let d = c.rank();
    let gens: Vec<SparsePoly> = rl.special().values().map(|l| binomial_of(l).to_poly().unwrap()).collect();
    let vars: Vec<VarId> = (1..=b.len() as u32).map(VarId::base).collect();
    let g = buchberger_in(&gens, &vars, false).unwrap();
    let torus = (1..=d as u32).fold(SparsePoly::one(), |acc, i| &acc * &SparsePoly::var(VarId::base(i)));
    let basis = rl.basis();
    let mut coeffs = vec![vec![]];
    for _ in basis {
        coeffs = coeffs
            .into_iter()
            .flat_map(|v: Vec<i64>| (-2..=2).map(move |k| [v.clone(), vec![k]].concat()))
            .collect();
    }
    let mut checked = 0;
    for k in coeffs {
        let l: Vec<BigInt> = (0..b.len())
            .map(|j| basis.iter().zip(&k).map(|(row, c)| &row[j] * c).sum())
            .collect();
        if l.iter().all(Zero::is_zero) {
            continue;
        }
        let f = binomial_of(&l).to_poly().unwrap();
        let n = (0..=6).find(|&n| g.member(&(&torus.pow(n) * &f)));
        assert!(n.is_some(), "relation {l:?} of {rays:?} is not in the saturation within N <= 6");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn quotient_desk_check_a1() {
    quotient_desk_check(&[&[1, 0], &[1, 2]]);
}

#[test]
fn quotient_desk_check_1_3() {
    quotient_desk_check(&[&[1, 0], &[1, 3]]);
}

#[test]
fn quotient_desk_check_space_cone() {
    quotient_desk_check(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
}

#[test]
fn a1_data() {
    let (_, b, rl) = pipeline(&[&[1, 0], &[1, 2]]);
    let gens: Vec<Vec<i64>> = b.generators().iter().map(|m| m.to_i64().unwrap()).collect();
    assert_eq!(gens, vec![vec![0, 1], vec![1, 0], vec![2, -1]]);
    let l: Vec<i64> = rl.special()[&3].iter().map(|x| x.to_i64().unwrap()).collect();
    assert_eq!(l, vec![1, -2, 1]);
}
