//! Polynomials on `h` and their graded pieces.
//!
//! [`SparsePoly`] is the value-level type. The engine in `cherednik` works
//! instead with dense coordinate vectors on a single degree, indexed by a
//! [`GradedBasis`]; [`MonomialTables`] holds the index arithmetic and builds
//! the per-degree matrices (symmetric powers, partial derivatives,
//! difference quotients).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exact::{Field, Matrix};
use crate::{Error, Result};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq)]
pub struct SparsePoly<F> {
    nvars: usize,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> SparsePoly<F> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: F) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, F::one())
    }

    /// The linear form `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(&unit_exp(n, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn add_term(&mut self, exp: &[u32], c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exp) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(exp);
                }
            }
            None => {
                self.terms.insert(exp.to_vec(), c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.mul_ref(s));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(&e, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, F::one());
        for _ in 0..k {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `w . f`, substituting `x_i -> w(x_i) = sum_k G[k, i] x_k`.
    pub fn w_action(&self, g: &Matrix<F>) -> Self {
        let n = self.nvars;
        let images: Vec<Self> = (0..n).map(|i| Self::linear(&g.column(i))).collect();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.multiply(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Directional derivative along `y` (so `d_y x_k = y_k`).
    pub fn partial_derivative(&self, y: &[F]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for (k, yk) in y.iter().enumerate() {
                if e[k] == 0 || yk.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[k] -= 1;
                let mut coef = c.mul_ref(yk);
                coef *= &F::from_i64(e[k] as i64);
                out.add_term(&e2, coef);
            }
        }
        out
    }

    /// Exact quotient by a nonzero linear form; errors when the division
    /// leaves a remainder.
    pub fn divide_by_linear(&self, a: &[F]) -> Result<Self> {
        let j = a
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Invalid("division by the zero linear form".into()))?;
        let inv = a[j].inv().expect("nonzero");
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        // peel off the term with the largest x_j exponent each time
        while let Some((e, c)) = rem
            .terms
            .iter()
            .max_by(|x, y| x.0[j].cmp(&y.0[j]).then_with(|| y.0.cmp(x.0)))
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if e[j] == 0 {
                return Err(Error::Invariant(format!("linear division leaves a remainder at {e:?}")));
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            let coef = c.mul_ref(&inv);
            for (k, ak) in a.iter().enumerate() {
                let mut e3 = e2.clone();
                e3[k] += 1;
                rem.add_term(&e3, -coef.mul_ref(ak));
            }
            q.add_term(&e2, coef);
        }
        Ok(q)
    }

    /// `(f - s.f) / a` for the reflection `s` with matrix `g_s` and root `a`.
    pub fn difference_quotient(&self, g_s: &Matrix<F>, a: &[F]) -> Result<Self> {
        self.sub(&self.w_action(g_s)).divide_by_linear(a)
    }

    /// Coordinates of the degree-`d` part in `basis`.
    pub fn to_dense(&self, basis: &GradedBasis) -> Vec<F> {
        let mut v = vec![F::zero(); basis.len()];
        for (e, c) in &self.terms {
            if let Some(i) = basis.index(e) {
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn from_dense(basis: &GradedBasis, v: &[F]) -> Self {
        let mut p = Self::zero(basis.nvars());
        for (i, c) in v.iter().enumerate() {
            p.add_term(basis.monomial(i), c.clone());
        }
        p
    }
}

impl<F: Field> fmt::Display for SparsePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for SparsePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn unit_exp(n: usize, i: usize) -> Exponent {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Monomials of one total degree, in graded-lex order (`x_1^d` first).
#[derive(Clone, Debug)]
pub struct GradedBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl GradedBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut cur = vec![0; nvars];
        fill(&mut monomials, &mut cur, 0, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { nvars, degree, monomials, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Exponent {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn fill(out: &mut Vec<Exponent>, cur: &mut Exponent, pos: usize, left: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

/// Sparse matrix stored by columns; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug)]
pub struct SparseCols<F> {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseCols<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let cols = (0..m.ncols())
            .map(|j| {
                (0..m.nrows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        Self { nrows: m.nrows(), cols }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.nrows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] += v;
            }
        }
        m
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseCols<G> {
        SparseCols {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<SparseCols<G>, E> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for c in &self.cols {
            let mut out = Vec::with_capacity(c.len());
            for (i, v) in c {
                let g = f(v)?;
                if !g.is_zero() {
                    out.push((*i, g));
                }
            }
            cols.push(out);
        }
        Ok(SparseCols { nrows: self.nrows, cols })
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i].add_mul(a, &v[j]);
            }
        }
        out
    }

    /// Dense `A * self`.
    pub fn left_mul(&self, a: &Matrix<F>) -> Matrix<F> {
        assert_eq!(a.ncols(), self.nrows);
        let mut out = Matrix::zeros(a.nrows(), self.cols.len());
        for r in 0..a.nrows() {
            let arow = a.row(r);
            let orow = out.row_mut(r);
            for (j, col) in self.cols.iter().enumerate() {
                let mut acc = F::zero();
                for (i, v) in col {
                    acc.add_mul(&arow[*i], v);
                }
                orow[j] = acc;
            }
        }
        out
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &F, other: &Self) {
        assert_eq!(self.cols.len(), other.cols.len());
        if s.is_zero() {
            return;
        }
        for (dst, src) in self.cols.iter_mut().zip(&other.cols) {
            let mut merged: BTreeMap<usize, F> = dst.drain(..).collect();
            for (i, v) in src {
                let e = merged.entry(*i).or_insert_with(F::zero);
                e.add_mul(s, v);
            }
            *dst = merged.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
    }

    /// Kronecker product with a dense matrix, using the monomial-major
    /// index `m * dim + u`.
    pub fn kron_dense(&self, b: &Matrix<F>) -> Self {
        let (p, q) = (b.nrows(), b.ncols());
        let mut cols = Vec::with_capacity(self.cols.len() * q);
        for col in &self.cols {
            for u in 0..q {
                let mut out = Vec::new();
                for (i, a) in col {
                    for v in 0..p {
                        let bv = &b[(v, u)];
                        if !bv.is_zero() {
                            out.push((i * p + v, a.mul_ref(bv)));
                        }
                    }
                }
                out.sort_by_key(|x| x.0);
                cols.push(out);
            }
        }
        Self { nrows: self.nrows * p, cols }
    }
}

/// Bases of degrees `0..=D` together with multiplication and division by a
/// single variable.
#[derive(Clone, Debug)]
pub struct MonomialTables {
    nvars: usize,
    bases: Vec<GradedBasis>,
    /// `mul[d][m * nvars + k]` = index of `x^m * x_k` in degree `d + 1`.
    mul: Vec<Vec<usize>>,
    /// `div[d][m * nvars + k]` = index of `x^m / x_k` in degree `d - 1`.
    div: Vec<Vec<Option<usize>>>,
}

impl MonomialTables {
    pub fn new(nvars: usize) -> Self {
        let mut t = Self { nvars, bases: vec![GradedBasis::new(nvars, 0)], mul: Vec::new(), div: vec![vec![None; nvars]] };
        t.ensure(1);
        t
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn ensure(&mut self, d: usize) {
        while self.bases.len() <= d {
            let cur = self.bases.len();
            let next = GradedBasis::new(self.nvars, cur as u32);
            let prev = &self.bases[cur - 1];
            let mut mul = Vec::with_capacity(prev.len() * self.nvars);
            let mut div = vec![None; next.len() * self.nvars];
            for (i, m) in prev.monomials().iter().enumerate() {
                for k in 0..self.nvars {
                    let mut e = m.clone();
                    e[k] += 1;
                    let j = next.index(&e).expect("degree bookkeeping");
                    mul.push(j);
                    div[j * self.nvars + k] = Some(i);
                }
            }
            self.mul.push(mul);
            self.div.push(div);
            self.bases.push(next);
        }
    }

    pub fn basis(&self, d: usize) -> &GradedBasis {
        &self.bases[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    pub fn times_var(&self, d: usize, m: usize, k: usize) -> usize {
        self.mul[d][m * self.nvars + k]
    }

    pub fn div_var(&self, d: usize, m: usize, k: usize) -> Option<usize> {
        self.div[d][m * self.nvars + k]
    }

    /// Index in degree `d1 + d2` of the product of two monomials.
    pub fn product_index(&self, d1: usize, m1: usize, d2: usize, m2: usize) -> usize {
        let e: Exponent = self.bases[d1]
            .monomial(m1)
            .iter()
            .zip(self.bases[d2].monomial(m2))
            .map(|(a, b)| a + b)
            .collect();
        self.bases[d1 + d2].index(&e).expect("product degree")
    }

    /// Matrix of `w` on degree `d` given its matrix on degree `d - 1`
    /// (`prev`) and on `h*` (`g`).
    pub fn symmetric_power_step<F: Field>(&self, prev: &Matrix<F>, g: &Matrix<F>, d: usize) -> Matrix<F> {
        let n = self.nvars;
        let (dp, dn) = (self.dim(d - 1), self.dim(d));
        let mut out = Matrix::zeros(dn, dn);
        for j in 0..dn {
            // split off the first variable present
            let e = self.bases[d].monomial(j);
            let i = e.iter().position(|&k| k > 0).expect("positive degree");
            let parent = self.div_var(d, j, i).expect("divisible");
            for u in 0..dp {
                let c = &prev[(u, parent)];
                if c.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let gk = &g[(k, i)];
                    if gk.is_zero() {
                        continue;
                    }
                    let t = self.times_var(d - 1, u, k);
                    let mut v = c.mul_ref(gk);
                    v += &out[(t, j)];
                    out[(t, j)] = v;
                }
            }
        }
        out
    }

    /// Matrices of `w` on degrees `0..=d`.
    pub fn symmetric_powers<F: Field>(&self, g: &Matrix<F>, d: usize) -> Vec<Matrix<F>> {
        let mut out = vec![Matrix::identity(1)];
        for k in 1..=d {
            let next = self.symmetric_power_step(&out[k - 1], g, k);
            out.push(next);
        }
        out
    }

    /// `d_y` from degree `d` to degree `d - 1`.
    pub fn partial_layer<F: Field>(&self, y: &[F], d: usize) -> SparseCols<F> {
        let mut m = SparseCols::zeros(self.dim(d - 1), self.dim(d));
        for j in 0..self.dim(d) {
            let e = self.bases[d].monomial(j);
            for (k, yk) in y.iter().enumerate() {
                if e[k] == 0 || yk.is_zero() {
                    continue;
                }
                let i = self.div_var(d, j, k).expect("divisible");
                let mut v = yk.clone();
                v *= &F::from_i64(e[k] as i64);
                m.cols[j].push((i, v));
            }
            m.cols[j].sort_by_key(|x| x.0);
        }
        m
    }

    /// Multiplication by the linear form `a` from degree `d` to `d + 1`.
    pub fn multiply_layer<F: Field>(&self, a: &[F], d: usize) -> SparseCols<F> {
        let mut m = SparseCols::zeros(self.dim(d + 1), self.dim(d));
        for j in 0..self.dim(d) {
            for (k, ak) in a.iter().enumerate() {
                if !ak.is_zero() {
                    m.cols[j].push((self.times_var(d, j, k), ak.clone()));
                }
            }
            m.cols[j].sort_by_key(|x| x.0);
        }
        m
    }

    /// Divides a degree-`d` coordinate vector by the linear form `a`.
    pub fn divide_dense<F: Field>(&self, v: &[F], a: &[F], d: usize) -> Result<Vec<F>> {
        let j0 = a
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Invalid("division by the zero linear form".into()))?;
        let inv = a[j0].inv().expect("nonzero");
        let mut rem = v.to_vec();
        let mut q = vec![F::zero(); if d == 0 { 0 } else { self.dim(d - 1) }];
        let mut order: Vec<usize> = (0..self.dim(d)).collect();
        order.sort_by_key(|&m| std::cmp::Reverse(self.bases[d].monomial(m)[j0]));
        for m in order {
            if rem[m].is_zero() {
                continue;
            }
            let parent = self
                .div_var(d, m, j0)
                .ok_or_else(|| Error::Invariant("linear division leaves a remainder".into()))?;
            let coef = rem[m].mul_ref(&inv);
            for (k, ak) in a.iter().enumerate() {
                if ak.is_zero() {
                    continue;
                }
                let t = self.times_var(d - 1, parent, k);
                let s = coef.mul_ref(ak);
                rem[t] -= &s;
            }
            q[parent] = coef;
        }
        Ok(q)
    }

    /// `f -> (f - s.f) / a` from degree `d` to `d - 1`, given the matrix
    /// `s_d` of `s` on degree `d`.
    pub fn difference_quotient_layer<F: Field>(&self, s_d: &Matrix<F>, a: &[F], d: usize) -> Result<SparseCols<F>> {
        let n = self.dim(d);
        let mut m = SparseCols::zeros(self.dim(d - 1), n);
        for j in 0..n {
            let mut g: Vec<F> = (0..n).map(|i| -s_d[(i, j)].clone()).collect();
            g[j] += &F::one();
            let q = self.divide_dense(&g, a, d)?;
            m.cols[j] = q.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterRealization, CoxeterType};
    use crate::exact::{int, rat};
    use crate::Q;
    use proptest::prelude::*;

    fn a2() -> CoxeterRealization {
        CoxeterRealization::build(CoxeterType::A, 3).unwrap()
    }

    #[test]
    fn basis_sizes_and_order() {
        for l in 1..5 {
            for d in 0..7u32 {
                let b = GradedBasis::new(l, d);
                let expect = crate::hecke::binomial(d as u64 + l as u64 - 1, l as u64 - 1) as usize;
                assert_eq!(b.len(), expect);
            }
        }
        let b = GradedBasis::new(3, 2);
        assert_eq!(b.monomial(0), &vec![2, 0, 0]);
        assert_eq!(b.monomial(1), &vec![1, 1, 0]);
        assert_eq!(b.monomial(5), &vec![0, 0, 2]);
    }

    #[test]
    fn reflection_negates_its_root() {
        let g = a2();
        for r in g.reflections() {
            let a = SparsePoly::linear(&r.root);
            let s = g.element(r.element);
            assert_eq!(a.w_action(s), a.scale(&int(-1)));
        }
        let f = SparsePoly::<Q>::variable(2, 0).pow(3);
        assert_eq!(f.w_action(g.element(0)), f);
    }

    #[test]
    fn difference_quotient_examples() {
        let g = a2();
        let r = &g.reflections()[0];
        let s = g.element(r.element);
        let c = SparsePoly::constant(2, rat(3, 7));
        assert!(c.difference_quotient(s, &r.root).unwrap().is_zero());
        let a = SparsePoly::linear(&r.root);
        assert_eq!(a.difference_quotient(s, &r.root).unwrap(), SparsePoly::constant(2, int(2)));
        assert!(a.pow(2).difference_quotient(s, &r.root).unwrap().is_zero());
        assert!(SparsePoly::variable(2, 0).divide_by_linear(&[int(1), int(1)]).is_err());
    }

    #[test]
    fn partial_of_square() {
        let x = SparsePoly::<Q>::linear(&[int(1), int(-2)]);
        let y = [int(3), int(1)];
        // d_y x^2 = 2 <y,x> x
        assert_eq!(x.pow(2).partial_derivative(&y), x.scale(&int(2)));
        assert!(SparsePoly::constant(2, int(5)).partial_derivative(&y).is_zero());
    }

    #[test]
    fn layer_matrices_agree_with_sparse() {
        let g = CoxeterRealization::build(CoxeterType::B, 3).unwrap();
        let mut t = MonomialTables::new(3);
        t.ensure(4);
        for r in g.reflections().iter().take(4) {
            let s = g.element(r.element);
            let pows = t.symmetric_powers(s, 4);
            for d in 1..=4 {
                let dq = t.difference_quotient_layer(&pows[d], &r.root, d).unwrap();
                for j in 0..t.dim(d) {
                    let f = SparsePoly::monomial(3, t.basis(d).monomial(j).clone(), int(1));
                    assert_eq!(SparsePoly::from_dense(t.basis(d), &pows[d].column(j)), f.w_action(s));
                    let q = f.difference_quotient(s, &r.root).unwrap();
                    assert_eq!(q.to_dense(t.basis(d - 1)), dq.to_dense().column(j));
                }
            }
        }
    }

    fn small_poly(nvars: usize, deg: u32) -> impl Strategy<Value = SparsePoly<Q>> {
        let basis = GradedBasis::new(nvars, deg);
        proptest::collection::vec(-3i64..=3, basis.len())
            .prop_map(move |c| SparsePoly::from_dense(&basis, &c.into_iter().map(int).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn leibniz(f in small_poly(3, 3), g in small_poly(3, 2), y in proptest::collection::vec(-3i64..=3, 3)) {
            let y: Vec<Q> = y.into_iter().map(int).collect();
            let lhs = f.multiply(&g).partial_derivative(&y);
            let rhs = f.partial_derivative(&y).multiply(&g).add(&f.multiply(&g.partial_derivative(&y)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn quotient_times_root(f in small_poly(3, 3), idx in 0usize..9) {
            let g = CoxeterRealization::build(CoxeterType::B, 3).unwrap();
            let r = &g.reflections()[idx];
            let s = g.element(r.element);
            let q = f.difference_quotient(s, &r.root).unwrap();
            prop_assert_eq!(q.multiply(&SparsePoly::linear(&r.root)), f.sub(&f.w_action(s)));
        }

        #[test]
        fn quotient_scale_invariant(f in small_poly(2, 4), k in 1i64..5) {
            let g = a2();
            let r = &g.reflections()[1];
            let s = g.element(r.element);
            let scaled: Vec<Q> = r.root.iter().map(|x| x * rat(k, 3)).collect();
            let q1 = f.difference_quotient(s, &r.root).unwrap();
            let q2 = f.difference_quotient(s, &scaled).unwrap().scale(&rat(k, 3));
            prop_assert_eq!(q1, q2);
        }

        #[test]
        fn action_is_multiplicative(f in small_poly(2, 2), h in small_poly(2, 3), w in 0usize..6) {
            let g = a2();
            let m = g.element(w);
            prop_assert_eq!(f.multiply(&h).w_action(m), f.w_action(m).multiply(&h.w_action(m)));
        }
    }
}
