//! Buchberger's algorithm over the rationals, (weighted) graded reverse
//! lexicographic order, with ideal membership and staircase dimension.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, SparsePoly, VarId};

/// Dense exponent vector with cached weighted degree. Index 0 is the most
/// significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Exp {
    deg: u32,
    e: Box<[u32]>,
}

impl Exp {
    fn zero(k: usize) -> Exp {
        Exp {
            deg: 0,
            e: vec![0; k].into_boxed_slice(),
        }
    }

    fn mul(&self, o: &Exp) -> Exp {
        Exp {
            deg: self.deg + o.deg,
            e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    fn divides(&self, o: &Exp) -> bool {
        self.deg <= o.deg && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    fn quotient(&self, o: &Exp) -> Exp {
        Exp {
            deg: o.deg - self.deg,
            e: o.e.iter().zip(self.e.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    fn lcm(&self, o: &Exp, weights: &[u32]) -> Exp {
        let e: Box<[u32]> = self.e.iter().zip(o.e.iter()).map(|(a, b)| *a.max(b)).collect();
        Exp {
            deg: e.iter().zip(weights).map(|(x, w)| x * w).sum(),
            e,
        }
    }

    fn coprime(&self, o: &Exp) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Exp {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for (a, b) in self.e.iter().zip(o.e.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Terms sorted by decreasing exponent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct DPoly(Vec<(Exp, BigRational)>);

impl DPoly {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lm(&self) -> &Exp {
        &self.0[0].0
    }

    fn lc(&self) -> &BigRational {
        &self.0[0].1
    }

    fn scale(&mut self, c: &BigRational) {
        for (_, x) in self.0.iter_mut() {
            *x *= c;
        }
    }

    fn make_monic(&mut self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let inv = self.lc().recip();
        self.scale(&inv);
        inv
    }

    /// `self + c * m * g`.
    fn add_scaled(&self, c: &BigRational, m: &Exp, g: &DPoly) -> DPoly {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = g.0.iter().map(|(e, x)| (e.mul(m), x * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ea, _)), Some((eb, _))) => ea.cmp(eb),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (e, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + y;
                    if !s.is_zero() {
                        out.push((e.clone(), s));
                    }
                }
            }
        }
        DPoly(out)
    }

    fn add(&self, g: &DPoly) -> DPoly {
        let k = self.0.first().or(g.0.first()).map_or(0, |t| t.0.e.len());
        self.add_scaled(&BigRational::one(), &Exp::zero(k), g)
    }
}

/// Reduced Groebner basis of an ideal in the polynomial ring over
/// [`GBasis::variables`].
#[derive(Clone, Debug)]
pub struct GBasis {
    vars: Vec<VarId>,
    weights: Vec<u32>,
    polys: Vec<DPoly>,
    /// `reps[j][i]`: cofactor of input generator `i` in basis element `j`.
    reps: Option<Vec<Vec<DPoly>>>,
    inputs: usize,
}

struct Ring {
    vars: Vec<VarId>,
    weights: Vec<u32>,
    index: HashMap<VarId, usize>,
}

impl Ring {
    fn new(vars: Vec<VarId>, weights: Vec<u32>) -> Ring {
        let index = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Ring { vars, weights, index }
    }

    /// `None` if `p` mentions a variable outside the ring.
    fn to_dense(&self, p: &SparsePoly) -> Option<DPoly> {
        let k = self.vars.len();
        let mut terms: Vec<(Exp, BigRational)> = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut e = vec![0u32; k];
            let mut deg = 0;
            for &(v, x) in m.pairs() {
                let i = *self.index.get(&v)?;
                e[i] = x as u32;
                deg += x as u32 * self.weights[i];
            }
            terms.push((
                Exp {
                    deg,
                    e: e.into_boxed_slice(),
                },
                c.clone(),
            ));
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Some(DPoly(terms))
    }

    fn to_sparse(&self, p: &DPoly) -> SparsePoly {
        SparsePoly::from_terms(p.0.iter().map(|(e, c)| (self.monomial(e), c.clone())))
    }

    fn monomial(&self, e: &Exp) -> Monomial {
        Monomial::from_pairs(
            e.e.iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(i, x)| (self.vars[i], *x as i32))
                .collect(),
        )
    }
}

/// Groebner basis of the ideal generated by `gens` in the variables they
/// mention.
pub fn buchberger(gens: &[SparsePoly]) -> Result<GBasis> {
    buchberger_in(gens, &[], false)
}

/// Groebner basis in the ring over the variables of `gens` together with
/// `extra_vars`. With `track`, cofactors expressing each basis element in
/// terms of `gens` are kept for [`GBasis::certificate`].
pub fn buchberger_in(gens: &[SparsePoly], extra_vars: &[VarId], track: bool) -> Result<GBasis> {
    buchberger_weighted(gens, extra_vars, &|_| 1, track)
}

/// As [`buchberger_in`], for the grevlex order refining the degree with
/// positive variable weights `weight`. For an ideal that is homogeneous
/// for these weights this is usually far cheaper than the standard grading.
pub fn buchberger_weighted(
    gens: &[SparsePoly],
    extra_vars: &[VarId],
    weight: &dyn Fn(&VarId) -> u32,
    track: bool,
) -> Result<GBasis> {
    let mut vs: BTreeSet<VarId> = extra_vars.iter().copied().collect();
    for g in gens {
        g.require_polynomial()?;
        vs.extend(g.vars());
    }
    let vars: Vec<VarId> = vs.into_iter().collect();
    let weights: Vec<u32> = vars
        .iter()
        .map(|v| {
            let w = weight(v);
            if w == 0 {
                Err(Error::InvalidInput(format!("variable {v} has weight 0")))
            } else {
                Ok(w)
            }
        })
        .collect::<Result<_>>()?;
    let ring = Ring::new(vars, weights);
    let n_in = gens.len();
    let k = ring.vars.len();
    let mut basis: Vec<DPoly> = Vec::new();
    let mut reps: Vec<Vec<DPoly>> = Vec::new();
    let unit_rep = |i: usize, c: BigRational| -> Vec<DPoly> {
        (0..n_in)
            .map(|j| {
                if j == i {
                    DPoly(vec![(Exp::zero(k), c.clone())])
                } else {
                    DPoly::default()
                }
            })
            .collect()
    };

    let mut pending: Vec<(DPoly, Vec<DPoly>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut d = ring.to_dense(g).expect("variables collected");
        if d.is_zero() {
            continue;
        }
        let inv = d.make_monic();
        pending.push((d, if track { unit_rep(i, inv) } else { Vec::new() }));
    }
    // Sorting inputs by leading monomial makes the result independent of
    // input order up to the final reduction.
    pending.sort_by(|a, b| a.0.lm().cmp(b.0.lm()).then_with(|| cmp_dpoly(&a.0, &b.0)));

    let mut pairs: Vec<(usize, usize, Exp)> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = pending.into_iter();

    loop {
        let next: Option<(DPoly, Vec<DPoly>)> = if let Some(p) = queue.next() {
            Some(p)
        } else {
            select_pair(&mut pairs).map(|(i, j, l)| {
                done.insert((i, j));
                if chain_criterion(i, j, &l, &basis, &pairs, &done) {
                    return (DPoly::default(), Vec::new());
                }
                spoly(i, j, &l, &basis, &reps, track)
            })
        };
        let Some((p, prep)) = next else { break };
        if p.is_zero() {
            continue;
        }
        let (mut r, mut rrep) = reduce_full(p, prep, &basis, &reps, track);
        if r.is_zero() {
            continue;
        }
        let inv = r.make_monic();
        if track {
            for x in rrep.iter_mut() {
                x.scale(&inv);
            }
        }
        let new = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.lm().coprime(r.lm()) {
                done.insert((i, new));
            } else {
                pairs.push((i, new, g.lm().lcm(r.lm(), &ring.weights)));
            }
        }
        basis.push(r);
        reps.push(rrep);
    }

    // Minimalize, then interreduce.
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let dominated = (0..basis.len()).any(|j| {
            j != i
                && basis[j].lm().divides(basis[i].lm())
                && (basis[j].lm() != basis[i].lm() || j < i)
        });
        if !dominated {
            keep.push(i);
        }
    }
    let min_polys: Vec<DPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_reps: Vec<Vec<DPoly>> = if track {
        keep.iter().map(|&i| reps[i].clone()).collect()
    } else {
        Vec::new()
    };
    let mut polys = Vec::with_capacity(min_polys.len());
    let mut out_reps = Vec::with_capacity(min_polys.len());
    for i in 0..min_polys.len() {
        let others: Vec<DPoly> = (0..min_polys.len())
            .filter(|&j| j != i)
            .map(|j| min_polys[j].clone())
            .collect();
        let other_reps: Vec<Vec<DPoly>> = if track {
            (0..min_polys.len())
                .filter(|&j| j != i)
                .map(|j| min_reps[j].clone())
                .collect()
        } else {
            Vec::new()
        };
        let rep = if track { min_reps[i].clone() } else { Vec::new() };
        let (mut r, mut rrep) = reduce_full(min_polys[i].clone(), rep, &others, &other_reps, track);
        let inv = r.make_monic();
        if track {
            for x in rrep.iter_mut() {
                x.scale(&inv);
            }
        }
        polys.push(r);
        out_reps.push(rrep);
    }
    let mut order: Vec<usize> = (0..polys.len()).collect();
    order.sort_by(|&a, &b| polys[a].lm().cmp(polys[b].lm()));
    let polys: Vec<DPoly> = order.iter().map(|&i| polys[i].clone()).collect();
    let reps = track.then(|| order.iter().map(|&i| out_reps[i].clone()).collect());
    Ok(GBasis {
        vars: ring.vars,
        weights: ring.weights,
        polys,
        reps,
        inputs: n_in,
    })
}

fn cmp_dpoly(a: &DPoly, b: &DPoly) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.0.len().cmp(&b.0.len())
}

/// Normal strategy: the pair with the smallest lcm, ties by index.
fn select_pair(pairs: &mut Vec<(usize, usize, Exp)>) -> Option<(usize, usize, Exp)> {
    let best = pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.2.cmp(&b.2).then((a.1, a.0).cmp(&(b.1, b.0))))?
        .0;
    Some(pairs.swap_remove(best))
}

/// Buchberger's chain criterion: some `g_k` with `lm(g_k) | lcm` whose pairs
/// with `g_i` and `g_j` were already treated.
fn chain_criterion(
    i: usize,
    j: usize,
    l: &Exp,
    basis: &[DPoly],
    pairs: &[(usize, usize, Exp)],
    done: &HashSet<(usize, usize)>,
) -> bool {
    let treated = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        done.contains(&key) && !pairs.iter().any(|p| (p.0, p.1) == key)
    };
    basis.iter().enumerate().any(|(k, g)| {
        k != i && k != j && g.lm().divides(l) && treated(i, k) && treated(j, k)
    })
}

fn spoly(
    i: usize,
    j: usize,
    l: &Exp,
    basis: &[DPoly],
    reps: &[Vec<DPoly>],
    track: bool,
) -> (DPoly, Vec<DPoly>) {
    let (gi, gj) = (&basis[i], &basis[j]);
    let mi = gi.lm().quotient(l);
    let mj = gj.lm().quotient(l);
    let one = BigRational::one();
    let s = DPoly::default()
        .add_scaled(&one, &mi, gi)
        .add_scaled(&-one.clone(), &mj, gj);
    let rep = if track {
        reps[i]
            .iter()
            .zip(&reps[j])
            .map(|(a, b)| {
                DPoly::default()
                    .add_scaled(&one, &mi, a)
                    .add_scaled(&-one.clone(), &mj, b)
            })
            .collect()
    } else {
        Vec::new()
    };
    (s, rep)
}

/// Fully reduces `p` modulo `basis`, updating the cofactor vector `rep`
/// (which expresses `p` in the inputs) when tracking.
fn reduce_full(
    mut p: DPoly,
    mut rep: Vec<DPoly>,
    basis: &[DPoly],
    reps: &[Vec<DPoly>],
    track: bool,
) -> (DPoly, Vec<DPoly>) {
    let mut idx = 0;
    while idx < p.0.len() {
        let (e, c) = &p.0[idx];
        let Some(k) = basis.iter().position(|g| g.lm().divides(e)) else {
            idx += 1;
            continue;
        };
        let g = &basis[k];
        let m = g.lm().quotient(e);
        let f = -(c / g.lc());
        if track {
            for (x, y) in rep.iter_mut().zip(&reps[k]) {
                *x = x.add_scaled(&f, &m, y);
            }
        }
        p = p.add_scaled(&f, &m, g);
    }
    (p, rep)
}

/// Division with quotients: returns `(remainder, q)` with
/// `p = sum_k q_k basis_k + remainder`.
fn divide(mut p: DPoly, basis: &[DPoly]) -> (DPoly, Vec<DPoly>) {
    let mut q = vec![DPoly::default(); basis.len()];
    let mut idx = 0;
    while idx < p.0.len() {
        let (e, c) = &p.0[idx];
        let Some(k) = basis.iter().position(|g| g.lm().divides(e)) else {
            idx += 1;
            continue;
        };
        let g = &basis[k];
        let m = g.lm().quotient(e);
        let f = c / g.lc();
        q[k] = q[k].add(&DPoly(vec![(m.clone(), f.clone())]));
        p = p.add_scaled(&-f, &m, g);
    }
    (p, q)
}

impl GBasis {
    pub fn variables(&self) -> &[VarId] {
        &self.vars
    }

    fn ring(&self, extra: &BTreeSet<VarId>) -> (Ring, Vec<DPoly>) {
        // Extra variables are appended as least significant with weight 1;
        // the order restricted to the original variables is unchanged, so the basis
        // stays a Groebner basis of the extended ideal.
        let missing: Vec<VarId> = extra.iter().filter(|v| !self.vars.contains(v)).copied().collect();
        let pad = missing.len();
        let mut vars = self.vars.clone();
        vars.extend(missing);
        let mut weights = self.weights.clone();
        weights.resize(vars.len(), 1);
        let polys = self.polys.iter().map(|p| pad_dpoly(p, pad)).collect();
        (Ring::new(vars, weights), polys)
    }

    /// Basis elements, monic, sorted by increasing leading monomial.
    pub fn generators(&self) -> Vec<SparsePoly> {
        let ring = Ring::new(self.vars.clone(), self.weights.clone());
        self.polys.iter().map(|p| ring.to_sparse(p)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let ring = Ring::new(self.vars.clone(), self.weights.clone());
        self.polys.iter().map(|p| ring.monomial(p.lm())).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.lm().deg == 0)
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &SparsePoly) -> Result<SparsePoly> {
        p.require_polynomial()?;
        let (ring, polys) = self.ring(&p.vars());
        let d = ring.to_dense(p).expect("ring covers p");
        let (r, _) = divide(d, &polys);
        Ok(ring.to_sparse(&r))
    }

    pub fn member(&self, p: &SparsePoly) -> bool {
        self.normal_form(p).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// For `p` in the ideal, cofactors `c_i` with `p = sum_i c_i gens_i`
    /// over the original generators. Requires a basis built with tracking.
    pub fn certificate(&self, p: &SparsePoly) -> Option<Vec<SparsePoly>> {
        let reps = self.reps.as_ref()?;
        if !p.is_polynomial() {
            return None;
        }
        let (ring, polys) = self.ring(&p.vars());
        let (r, q) = divide(ring.to_dense(p).expect("ring covers p"), &polys);
        if !r.is_zero() {
            return None;
        }
        let pad = ring.vars.len() - self.vars.len();
        let mut out = vec![DPoly::default(); self.inputs];
        for (qk, rep) in q.iter().zip(reps) {
            for (o, x) in out.iter_mut().zip(rep) {
                let x = pad_dpoly(x, pad);
                for (e, c) in &qk.0 {
                    *o = o.add_scaled(c, e, &x);
                }
            }
        }
        Some(out.iter().map(|d| ring.to_sparse(d)).collect())
    }

    /// Krull dimension of the quotient ring: the largest set of variables
    /// containing the support of no leading monomial. `None` for the unit
    /// ideal.
    pub fn staircase_dimension(&self) -> Option<usize> {
        if self.is_unit_ideal() {
            return None;
        }
        let k = self.vars.len();
        let edges: Vec<Vec<usize>> = self
            .polys
            .iter()
            .map(|p| {
                p.lm()
                    .e
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x > 0)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (j, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v].push(j);
            }
        }
        let mut count = vec![0usize; edges.len()];
        let mut best = 0;
        independent_search(0, 0, k, &edges, &incident, &mut count, &mut best);
        Some(best)
    }
}

fn independent_search(
    v: usize,
    chosen: usize,
    k: usize,
    edges: &[Vec<usize>],
    incident: &[Vec<usize>],
    count: &mut [usize],
    best: &mut usize,
) {
    if chosen + (k - v) <= *best {
        return;
    }
    if v == k {
        *best = chosen;
        return;
    }
    let ok = incident[v].iter().all(|&j| count[j] + 1 < edges[j].len());
    if ok {
        for &j in &incident[v] {
            count[j] += 1;
        }
        independent_search(v + 1, chosen + 1, k, edges, incident, count, best);
        for &j in &incident[v] {
            count[j] -= 1;
        }
    }
    independent_search(v + 1, chosen, k, edges, incident, count, best);
}

fn pad_dpoly(p: &DPoly, pad: usize) -> DPoly {
    if pad == 0 {
        return p.clone();
    }
    DPoly(
        p.0.iter()
            .map(|(e, c)| {
                let mut v = e.e.to_vec();
                v.extend(std::iter::repeat_n(0, pad));
                (
                    Exp {
                        deg: e.deg,
                        e: v.into_boxed_slice(),
                    },
                    c.clone(),
                )
            })
            .collect(),
    )
}

/// Whether every polynomial of `ps` lies in the ideal of `g`.
pub fn contains_all(g: &GBasis, ps: &[SparsePoly]) -> bool {
    ps.iter().all(|p| g.member(p))
}

/// Cofactor check: `p == sum_i cofactors_i * gens_i` exactly.
pub fn verify_certificate(p: &SparsePoly, gens: &[SparsePoly], cofactors: &[SparsePoly]) -> bool {
    if gens.len() != cofactors.len() {
        return false;
    }
    let mut sum = SparsePoly::zero();
    for (g, c) in gens.iter().zip(cofactors) {
        sum = &sum + &(g * c);
    }
    (&sum - p).is_zero()
}
