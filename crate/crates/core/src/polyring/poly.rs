use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, VarId};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial with rational coefficients.
///
/// Negative exponents are allowed only on the variables in
/// [`SparsePoly::invertible`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigRational>,
    invertible: BTreeSet<VarId>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v), BigRational::one())
    }

    /// `c * m`. Variables carrying negative exponents in `m` become invertible.
    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.invertible
            .extend(m.pairs().iter().filter(|&&(_, e)| e < 0).map(|&(v, _)| v));
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.invertible
                .extend(m.pairs().iter().filter(|&&(_, e)| e < 0).map(|&(v, _)| v));
            p.add_term(m, c);
        }
        p
    }

    /// Declares additional variables invertible.
    pub fn with_invertible(mut self, vars: impl IntoIterator<Item = VarId>) -> Self {
        self.invertible.extend(vars);
        self
    }

    pub fn invertible(&self) -> &BTreeSet<VarId> {
        &self.invertible
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigRational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Largest term in the graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Whether every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    pub fn require_polynomial(&self) -> Result<()> {
        if self.is_polynomial() {
            Ok(())
        } else {
            Err(Error::LaurentInput(self.to_string()))
        }
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly {
                terms: BTreeMap::new(),
                invertible: self.invertible.clone(),
            };
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
            invertible: self.invertible.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> SparsePoly {
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            invertible: self.invertible.clone(),
        };
        out.invertible
            .extend(m.pairs().iter().filter(|&&(_, e)| e < 0).map(|&(v, _)| v));
        if c.is_zero() {
            return out;
        }
        for (n, x) in &self.terms {
            out.add_term(n.mul(m), x * c);
        }
        out
    }

    fn merged_invertible(&self, other: &SparsePoly) -> BTreeSet<VarId> {
        if other.invertible.is_subset(&self.invertible) {
            self.invertible.clone()
        } else {
            self.invertible.union(&other.invertible).copied().collect()
        }
    }

    /// Product with every term of `m`-degree at least `e` discarded, where
    /// the `m`-degree of a monomial is its total degree in the variables
    /// selected by `ideal`.
    pub fn mul_trunc(&self, other: &SparsePoly, ideal: &dyn Fn(&VarId) -> bool, e: i64) -> SparsePoly {
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            invertible: self.merged_invertible(other),
        };
        let da: Vec<(&Monomial, &BigRational, i64)> = self
            .terms
            .iter()
            .map(|(m, c)| (m, c, m.degree_in(ideal)))
            .collect();
        let db: Vec<(&Monomial, &BigRational, i64)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, m.degree_in(ideal)))
            .collect();
        for (ma, ca, ea) in &da {
            for (mb, cb, eb) in &db {
                if ea + eb < e {
                    out.add_term(ma.mul(mb), *ca * *cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut result = SparsePoly::one().with_invertible(self.invertible.iter().copied());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// If `self` is `c * m` with `c != 0` and `m` a monomial in invertible
    /// variables (or the empty monomial), returns `(m, c)`.
    pub fn as_unit_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        m.vars()
            .all(|v| self.invertible.contains(&v))
            .then_some((m, c))
    }

    /// Exact division by a unit `c * m`.
    pub fn div_unit(&self, unit: &SparsePoly) -> Result<SparsePoly> {
        let Some((m, c)) = unit.as_unit_monomial() else {
            return Err(Error::NonMonomialDivision(unit.to_string()));
        };
        let inv = m.inverse();
        let mut out = self.mul_monomial(&inv, &c.recip());
        out.invertible.extend(unit.invertible.iter().copied());
        Ok(out)
    }

    /// Multiplicative inverse of a unit `c * m`.
    pub fn unit_inverse(&self) -> Result<SparsePoly> {
        SparsePoly::one().div_unit(self)
    }

    /// Terms whose total degree in the variables selected by `ideal` is
    /// below `e`.
    pub fn grade_filter_by(&self, ideal: impl Fn(&VarId) -> bool, e: i64) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(&ideal) < e)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            invertible: self.invertible.clone(),
        }
    }

    /// Discards every term of total degree `>= e` in `ideal_vars`.
    pub fn grade_filter(&self, ideal_vars: &BTreeSet<VarId>, e: i64) -> SparsePoly {
        self.grade_filter_by(|v| ideal_vars.contains(v), e)
    }

    /// Terms of total degree exactly `k` in the variables selected by `ideal`.
    pub fn graded_part(&self, ideal: impl Fn(&VarId) -> bool, k: i64) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(&ideal) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            invertible: self.invertible.clone(),
        }
    }

    /// Minimal total degree in the selected variables over all terms.
    pub fn order_in(&self, ideal: impl Fn(&VarId) -> bool) -> Option<i64> {
        self.terms.keys().map(|m| m.degree_in(&ideal)).min()
    }

    /// Writes `self = sum_k c_k v^k` and returns the map `k -> c_k`.
    pub fn collect_var(&self, v: VarId) -> BTreeMap<i32, SparsePoly> {
        let mut out: BTreeMap<i32, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.exponent(v);
            let rest = m.restrict(|w| *w != v);
            out.entry(k)
                .or_insert_with(|| SparsePoly {
                    terms: BTreeMap::new(),
                    invertible: self.invertible.clone(),
                })
                .add_term(rest, c.clone());
        }
        out
    }

    /// Ring homomorphism sending each assigned variable to its image;
    /// unassigned variables are left unchanged.
    pub fn substitute(&self, assignment: &BTreeMap<VarId, SparsePoly>) -> Result<SparsePoly> {
        let mut invertible: BTreeSet<VarId> = self
            .invertible
            .iter()
            .filter(|v| !assignment.contains_key(v))
            .copied()
            .collect();
        for (v, img) in assignment {
            if self.invertible.contains(v) && self.vars().contains(v) {
                if img.as_unit_monomial().is_none() {
                    return Err(Error::NonUnitIntoInvertible(format!("{v} -> {img}")));
                }
                invertible.extend(img.invertible.iter().copied());
            }
        }
        let mut cache: HashMap<(VarId, i32), SparsePoly> = HashMap::new();
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            invertible,
        };
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = SparsePoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    None => kept.push((v, e)),
                    Some(img) => {
                        let p = match cache.get(&(v, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = if e >= 0 {
                                    img.pow(e as u32)
                                } else {
                                    let Some((um, uc)) = img.as_unit_monomial() else {
                                        return Err(Error::NonUnitIntoInvertible(format!(
                                            "{v} -> {img}"
                                        )));
                                    };
                                    SparsePoly::monomial(um.pow(e), uc.recip().pow(-e))
                                        .with_invertible(img.invertible.iter().copied())
                                };
                                cache.insert((v, e), p.clone());
                                p
                            }
                        };
                        factor = &factor * &p;
                    }
                }
            }
            let rest = Monomial::from_pairs(kept);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&rest), fc);
            }
            out.invertible.extend(factor.invertible);
        }
        Ok(out)
    }

    /// Substitutes rational values for some variables.
    pub fn evaluate(&self, values: &BTreeMap<VarId, BigRational>) -> Result<SparsePoly> {
        let assignment: BTreeMap<VarId, SparsePoly> = values
            .iter()
            .map(|(v, x)| (*v, SparsePoly::constant(x.clone())))
            .collect();
        for (v, x) in values {
            if x.is_zero() && self.invertible.contains(v) && self.vars().contains(v) {
                return Err(Error::NonUnitIntoInvertible(format!("{v} -> 0")));
            }
        }
        self.substitute(&assignment)
    }

    /// Multiplies by the least common denominator and divides by the content
    /// gcd, so the result has coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> SparsePoly {
        use num_integer::Integer;
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let mut f = BigRational::from_integer(den);
        let scaled: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * &f).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() {
            f /= BigRational::from_integer(g);
        }
        if lc.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> SparsePoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in decreasing graded reverse lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl Add<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.invertible = self.merged_invertible(rhs);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.invertible = self.merged_invertible(rhs);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            invertible: self.merged_invertible(rhs),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
            invertible: self.invertible.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}
