use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::One;

use super::{Monomial, SparsePoly, Stream, VarId};
use crate::error::{Error, Result};

/// Power series in `t` with polynomial coefficients, truncated modulo
/// `t^(T+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    coeffs: Vec<SparsePoly>,
}

impl TSeries {
    /// Pads with zeros or drops coefficients so that the result has
    /// truncation `t`.
    pub fn new(mut coeffs: Vec<SparsePoly>, t: usize) -> Self {
        coeffs.resize(t + 1, SparsePoly::zero());
        TSeries { coeffs }
    }

    pub fn zero(t: usize) -> Self {
        Self::new(Vec::new(), t)
    }

    pub fn constant(p: SparsePoly, t: usize) -> Self {
        Self::new(vec![p], t)
    }

    /// `c * t^k`.
    pub fn t_power(k: usize, c: SparsePoly, t: usize) -> Self {
        let mut s = Self::zero(t);
        if k <= t {
            s.coeffs[k] = c;
        }
        s
    }

    /// The generic arc coordinate `sum_s Z[i][s] t^s`, with the stream of
    /// each variable chosen by `stream`.
    pub fn generic(i: u32, t: usize, stream: impl Fn(u32) -> Stream) -> Self {
        let coeffs = (0..=t as u32)
            .map(|s| SparsePoly::var(VarId::new(stream(s), i, s)))
            .collect();
        TSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<SparsePoly> {
        self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &SparsePoly {
        &self.coeffs[s]
    }

    pub fn set_coeff(&mut self, s: usize, p: SparsePoly) {
        self.coeffs[s] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SparsePoly::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, t: usize) -> TSeries {
        TSeries::new(self.coeffs[..=t.min(self.truncation())].to_vec(), t)
    }

    fn check(&self, other: &TSeries) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        Ok(TSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        Ok(TSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Cauchy product truncated at the common truncation.
    pub fn mul(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        let t = self.truncation();
        let mut out = vec![SparsePoly::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(TSeries { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> TSeries {
        let mut result = TSeries::constant(SparsePoly::one(), self.truncation());
        for _ in 0..k {
            result = result.mul(self).expect("same truncation");
        }
        result
    }

    pub fn scale(&self, p: &SparsePoly) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a * p).collect(),
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl FnMut(&SparsePoly) -> SparsePoly) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl FnMut(&SparsePoly) -> Result<SparsePoly>) -> Result<TSeries> {
        Ok(TSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

/// Substitutes `Z[i] -> series[i]` into a polynomial in the base variables
/// `Z[1..h]` and collects the coefficients of `t^0..t^T`.
///
/// Variables outside the base stream are treated as coefficients.
pub fn hs_expand(f: &SparsePoly, series: &BTreeMap<u32, TSeries>) -> Result<TSeries> {
    let mut truncs = series.values().map(TSeries::truncation);
    let t = truncs.next().unwrap_or(0);
    for u in truncs {
        if u != t {
            return Err(Error::TruncationMismatch { left: t, right: u });
        }
    }
    let mut powers: HashMap<(u32, i32), TSeries> = HashMap::new();
    let mut out = TSeries::zero(t);
    for (m, c) in f.terms() {
        let mut coef = SparsePoly::constant(c.clone());
        let mut acc: Option<TSeries> = None;
        for &(v, e) in m.pairs() {
            if v.stream != Stream::Base {
                coef = coef.mul_monomial(&Monomial::from_pairs(vec![(v, e)]), &BigRational::one());
                continue;
            }
            if e < 0 {
                return Err(Error::LaurentInput(f.to_string()));
            }
            let s = series
                .get(&v.i)
                .ok_or_else(|| Error::InvalidInput(format!("no series supplied for {v}")))?;
            let p = powers
                .entry((v.i, e))
                .or_insert_with(|| s.pow(e as u32))
                .clone();
            acc = Some(match acc {
                None => p,
                Some(a) => a.mul(&p)?,
            });
        }
        let term = match acc {
            None => TSeries::constant(coef, t),
            Some(a) => a.scale(&coef),
        };
        out = out.add(&term)?;
    }
    Ok(out)
}
