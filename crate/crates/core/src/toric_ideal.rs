//! The lattice of relations among semigroup generators, the binomials it
//! defines, and the monomial valuation `ord_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice_geom::{pair, Cone, LatticePoint, SemigroupBasis};
use crate::linalg;
use crate::polyring::{Monomial, SparsePoly, VarId};

/// `L = ker(Z^h -> M)` together with the distinguished relations `l_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    basis: Vec<Vec<BigInt>>,
    special: BTreeMap<usize, Vec<BigInt>>,
}

impl RelationLattice {
    /// A basis of `L` in Hermite normal form.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// `q -> l_q` for `q = d+1..h` (1-based): `l_q` has entry 1 at `q` and 0
    /// at every other index beyond `d`.
    pub fn special(&self) -> &BTreeMap<usize, Vec<BigInt>> {
        &self.special
    }
}

pub fn relation_lattice(b: &SemigroupBasis) -> Result<RelationLattice> {
    let d = b.rank();
    let h = b.len();
    let gens = b.generators();
    let a: Vec<Vec<BigInt>> = (0..d)
        .map(|row| gens.iter().map(|m| m.coords()[row].clone()).collect())
        .collect();
    let basis = linalg::integer_kernel(&a, h);
    let zb: Vec<Vec<BigInt>> = gens[..d].iter().map(|m| m.coords().to_vec()).collect();
    let mut special = BTreeMap::new();
    for q in d..h {
        let coef = linalg::solve_columns(&zb, gens[q].coords())
            .ok_or(Error::NoUnimodularSubset { rank: d })?;
        let mut l = vec![BigInt::zero(); h];
        for (i, c) in coef.iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::NoUnimodularSubset { rank: d });
            }
            l[i] = -c.to_integer();
        }
        l[q] = BigInt::from(1);
        special.insert(q + 1, l);
    }
    Ok(RelationLattice { basis, special })
}

/// `F_l = Z^{l+} - Z^{l-}` in the ring variables `Z[1..h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub plus: Vec<BigInt>,
    pub minus: Vec<BigInt>,
}

impl Binomial {
    fn monomial(exps: &[BigInt]) -> Result<Monomial> {
        let pairs = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| {
                let e = e
                    .to_i32()
                    .ok_or_else(|| Error::InvalidInput(format!("exponent {e} too large")))?;
                Ok((VarId::base(i as u32 + 1), e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_pairs(pairs))
    }

    pub fn plus_monomial(&self) -> Result<Monomial> {
        Self::monomial(&self.plus)
    }

    pub fn minus_monomial(&self) -> Result<Monomial> {
        Self::monomial(&self.minus)
    }

    pub fn to_poly(&self) -> Result<SparsePoly> {
        let one = BigRational::from_integer(1.into());
        Ok(&SparsePoly::monomial(self.plus_monomial()?, one.clone())
            - &SparsePoly::monomial(self.minus_monomial()?, one))
    }
}

pub fn binomial_of(l: &[BigInt]) -> Binomial {
    Binomial {
        plus: l.iter().map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() }).collect(),
        minus: l.iter().map(|x| if x.is_negative() { -x } else { BigInt::zero() }).collect(),
    }
}

/// `<n, l>`: the common pairing of `n` with both sides of the relation.
pub fn pair_relation(n: &LatticePoint, l: &[BigInt], b: &SemigroupBasis) -> Result<BigInt> {
    if l.len() != b.len() {
        return Err(Error::RankMismatch {
            expected: b.len(),
            found: l.len(),
        });
    }
    let d = b.pairings(n)?;
    let mut pos = BigInt::zero();
    let mut neg = BigInt::zero();
    for (li, di) in l.iter().zip(&d) {
        if li.is_positive() {
            pos += li * di;
        } else {
            neg -= li * di;
        }
    }
    let rank = b.rank();
    let mut sum = vec![BigInt::zero(); rank];
    for (li, m) in l.iter().zip(b.generators()) {
        for (s, x) in sum.iter_mut().zip(m.coords()) {
            *s += li * x;
        }
    }
    if pos != neg || sum.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotARelation(format!("{l:?}")));
    }
    Ok(pos)
}

/// `ord_n(f) = min <m, n>` over the monomials `chi^m` of `f`; `None` stands
/// for infinity (the zero element). `dual` is the cone whose lattice points
/// form the semigroup.
pub fn ord_n(
    f: &[(BigRational, LatticePoint)],
    n: &LatticePoint,
    dual: &Cone,
) -> Result<Option<BigInt>> {
    let mut combined: BTreeMap<&LatticePoint, BigRational> = BTreeMap::new();
    for (c, m) in f {
        if !dual.contains(m) {
            return Err(Error::MNotInSemigroup(m.to_string()));
        }
        *combined.entry(m).or_insert_with(BigRational::zero) += c;
    }
    let mut best: Option<BigInt> = None;
    for (m, c) in combined {
        if c.is_zero() {
            continue;
        }
        let v = pair(m, n)?;
        best = Some(match best {
            Some(b) if b <= v => b,
            _ => v,
        });
    }
    Ok(best)
}
