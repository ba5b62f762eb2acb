//! Exact sparse multivariate (Laurent) polynomials over the rationals and
//! t-series with polynomial coefficients.

mod parse;
mod poly;
mod series;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse_poly, parse_poly_with};
pub use poly::SparsePoly;
pub use series::{hs_expand, TSeries};

/// Which family a variable belongs to. The derive order is the primary key
/// of the variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stream {
    /// `Z[i][s]` with `s < <n, m_i>`: coordinates of the finite model.
    Model,
    /// `Z[i][s]` with `i <= d` and `s >= <n, m_i>`: free transcendentals.
    Free,
    /// `Z[q][s]` with `q > d` and `s >= <n, m_q>`: solved for by lifting.
    Lifted,
    /// `Z[i]`: coordinates of the ambient affine space of the toric variety.
    Base,
    /// Scratch variables, rendered `X[i][s]`.
    Aux,
}

/// A variable. Total order is `(stream, i, s)` lexicographic; smaller
/// variables are more significant in the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId {
    pub stream: Stream,
    pub i: u32,
    pub s: u32,
}

impl VarId {
    pub const fn new(stream: Stream, i: u32, s: u32) -> Self {
        VarId { stream, i, s }
    }

    pub const fn base(i: u32) -> Self {
        VarId::new(Stream::Base, i, 0)
    }

    pub const fn aux(i: u32, s: u32) -> Self {
        VarId::new(Stream::Aux, i, s)
    }

    pub fn is_jet(&self) -> bool {
        matches!(self.stream, Stream::Model | Stream::Free | Stream::Lifted)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stream {
            Stream::Model | Stream::Free | Stream::Lifted => write!(f, "Z[{}][{}]", self.i, self.s),
            Stream::Base => write!(f, "Z[{}]", self.i),
            Stream::Aux => write!(f, "X[{}][{}]", self.i, self.s),
        }
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs with nonzero
/// exponents.
///
/// `Ord` is graded reverse lexicographic: total degree first, then the
/// monomial with the smaller exponent in the least significant differing
/// variable is larger.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarId, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(VarId, i32)>) -> Self {
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(VarId, i32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |k| self.0[k].1)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Total degree in the variables selected by `pred`.
    pub fn degree_in(&self, pred: impl Fn(&VarId) -> bool) -> i64 {
        self.0
            .iter()
            .filter(|(v, _)| pred(v))
            .map(|&(_, e)| e as i64)
            .sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Whether `self` divides `other` with a polynomial quotient.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.0.clone();
        for &(v, e) in &other.0 {
            match pairs.binary_search_by_key(&v, |&(w, _)| w) {
                Ok(k) => pairs[k].1 = pairs[k].1.max(e),
                Err(k) => pairs.insert(k, (v, e)),
            }
        }
        Monomial(pairs)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    /// Keeps only the variables selected by `pred`.
    pub fn restrict(&self, pred: impl Fn(&VarId) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| pred(v)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk both exponent lists from the least significant variable.
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let (va, ea) = if i > 0 { (Some(a[i - 1].0), a[i - 1].1) } else { (None, 0) };
            let (vb, eb) = if j > 0 { (Some(b[j - 1].0), b[j - 1].1) } else { (None, 0) };
            let (ea, eb) = match (va, vb) {
                (Some(x), Some(y)) if x == y => {
                    i -= 1;
                    j -= 1;
                    (ea, eb)
                }
                (Some(x), Some(y)) if x > y => {
                    i -= 1;
                    (ea, 0)
                }
                (Some(_), None) => {
                    i -= 1;
                    (ea, 0)
                }
                _ => {
                    j -= 1;
                    (0, eb)
                }
            };
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
