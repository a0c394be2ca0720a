//! Graded characters as truncated series, and the closed formulas they are
//! compared against.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::coxeter::{kappa, CParameter, CoxeterRealization, CoxeterType, WRep};
use crate::exact::{format_rational, int, Field, Matrix};
use crate::{Error, Result, Q};

pub fn ser_rational<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn ser_rational_rows<S: Serializer>(rows: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
    text.serialize(s)
}

/// `sum_d coeffs[class][d] t^(offset + d)`, known through `len() - 1`
/// degrees past the offset and zero below it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterSeries {
    #[serde(serialize_with = "ser_rational")]
    pub offset: Q,
    #[serde(serialize_with = "ser_rational_rows")]
    pub coeffs: Vec<Vec<Q>>,
}

impl CharacterSeries {
    pub fn new(offset: Q, coeffs: Vec<Vec<Q>>) -> Self {
        let len = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let coeffs = coeffs
            .into_iter()
            .map(|mut c| {
                c.resize(len, Q::zero());
                c
            })
            .collect();
        Self { offset, coeffs }
    }

    /// A single graded dimension series.
    pub fn scalar(offset: Q, coeffs: Vec<Q>) -> Self {
        Self::new(offset, vec![coeffs])
    }

    /// Number of known degrees.
    pub fn len(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn nclasses(&self) -> usize {
        self.coeffs.len()
    }

    pub fn truncate(&self, len: usize) -> Self {
        Self { offset: self.offset.clone(), coeffs: self.coeffs.iter().map(|c| c[..len.min(c.len())].to_vec()).collect() }
    }

    /// Sum of the known coefficients of one class (the value at `t = 1`
    /// when the series is a polynomial).
    pub fn value_at_one(&self, class: usize) -> Q {
        self.coeffs[class].iter().fold(Q::zero(), |a, b| a + b)
    }

    /// Coefficient of `t^e`, or `None` beyond the known range.
    pub fn coefficient(&self, class: usize, exponent: &Q) -> Option<Q> {
        let rel = exponent - &self.offset;
        if !rel.is_integer() {
            return Some(Q::zero());
        }
        if rel.is_negative() {
            return Some(Q::zero());
        }
        let i = rel.to_integer().to_usize()?;
        self.coeffs[class].get(i).cloned()
    }

    fn end(&self) -> Q {
        &self.offset + int(self.len() as i64)
    }

    /// `self + sign * other` over the common known range.
    pub fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        let shift = &other.offset - &self.offset;
        if !shift.is_integer() {
            return Err(Error::Invalid("series offsets differ by a non-integer".into()));
        }
        let lo = if shift.is_negative() { other.offset.clone() } else { self.offset.clone() };
        let hi = if self.end() < other.end() { self.end() } else { other.end() };
        let len = (&hi - &lo).to_integer().to_usize().unwrap_or(0);
        let s = int(sign);
        let coeffs = (0..self.nclasses())
            .map(|ci| {
                (0..len)
                    .map(|i| {
                        let e = &lo + int(i as i64);
                        let a = self.coefficient(ci, &e).unwrap_or_else(Q::zero);
                        let b = other.coefficient(ci, &e).unwrap_or_else(Q::zero);
                        a + &s * b
                    })
                    .collect()
            })
            .collect();
        Ok(Self { offset: lo, coeffs })
    }

    /// Compares coefficients on every exponent below both truncation points.
    pub fn compare(&self, other: &Self) -> std::result::Result<(), String> {
        match self.mismatch(other) {
            None => Ok(()),
            Some(m) => Err(m.to_string()),
        }
    }

    /// First differing coefficient, scanning exponents upward.
    pub fn mismatch(&self, other: &Self) -> Option<Mismatch> {
        if self.nclasses() != other.nclasses() {
            return Some(Mismatch { class: self.nclasses().min(other.nclasses()), exponent: "-".into(), left: format!("{} classes", self.nclasses()), right: format!("{} classes", other.nclasses()) });
        }
        let lo = if self.offset < other.offset { self.offset.clone() } else { other.offset.clone() };
        let hi = if self.end() < other.end() { self.end() } else { other.end() };
        let shift = &other.offset - &self.offset;
        if !shift.is_integer() {
            let nz = |s: &Self| s.coeffs.iter().any(|c| c.iter().any(|x| !x.is_zero()));
            return (nz(self) || nz(other)).then(|| Mismatch {
                class: 0,
                exponent: format_rational(&self.offset),
                left: "offset".into(),
                right: format!("offset {}", format_rational(&other.offset)),
            });
        }
        let mut e = lo;
        while e < hi {
            for ci in 0..self.nclasses() {
                let a = self.coefficient(ci, &e).unwrap_or_else(Q::zero);
                let b = other.coefficient(ci, &e).unwrap_or_else(Q::zero);
                if a != b {
                    return Some(Mismatch {
                        class: ci,
                        exponent: format_rational(&e),
                        left: format_rational(&a),
                        right: format_rational(&b),
                    });
                }
            }
            e += Q::one();
        }
        None
    }
}

/// A differing coefficient: `left` is the receiver's value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub class: usize,
    pub exponent: String,
    pub left: String,
    pub right: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "class {}, exponent {}: {} vs {}", self.class, self.exponent, self.left, self.right)
    }
}

/// Product of two polynomials truncated to `len` coefficients.
pub fn poly_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() || i >= len {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j].add_mul(x, y);
        }
    }
    out
}

/// Power series inverse of `a` (with `a[0] != 0`) to `len` terms.
pub fn series_inverse(a: &[Q], len: usize) -> Vec<Q> {
    let inv0 = a[0].inv().expect("invertible constant term");
    let mut out = vec![Q::zero(); len];
    for n in 0..len {
        let mut s = if n == 0 { Q::one() } else { Q::zero() };
        for k in 1..=n.min(a.len() - 1) {
            s -= &(&a[k] * &out[n - k]);
        }
        out[n] = s * &inv0;
    }
    out
}

/// `p(t^k)`.
fn substitute_power(p: &[Q], k: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); (p.len() - 1) * k + 1];
    for (i, x) in p.iter().enumerate() {
        out[i * k] = x.clone();
    }
    out
}

/// `t^kappa(c, tau) Tr(w, tau) / det(1 - t w)` per class, `len` terms.
pub fn standard_character(g: &CoxeterRealization, tau: &WRep, c: &CParameter, len: usize) -> Result<CharacterSeries> {
    let k = kappa(g, c, tau)?;
    let coeffs = g
        .classes()
        .iter()
        .map(|cls| {
            let w = cls.representative;
            let inv = series_inverse(&g.det_factor(w), len);
            let tr = tau.trace(w);
            inv.into_iter().map(|x| x * &tr).collect()
        })
        .collect();
    Ok(CharacterSeries::new(k, coeffs))
}

/// `eps(w) t^{-(r-1) l / 2} det(1 - t^r w) / det(1 - t w)` per class,
/// `len` terms. `eps` is a one-dimensional representation.
pub fn simple_char_closed_form(g: &CoxeterRealization, r: usize, eps: &WRep, len: usize) -> CharacterSeries {
    let l = g.rank();
    let offset = -(int(((r as i64) - 1) * l as i64) / int(2));
    let coeffs = g
        .classes()
        .iter()
        .map(|cls| {
            let w = cls.representative;
            let det = g.det_factor(w);
            let num = substitute_power(&det, r);
            let inv = series_inverse(&det, len);
            let e = eps.trace(w);
            poly_mul(&num, &inv, len).into_iter().map(|x| x * &e).collect()
        })
        .collect();
    CharacterSeries::new(offset, coeffs)
}

/// The type `B_n` family series `t^{-kn} det(1 - t^{2k+1} w) / det(1 - t w)`.
pub fn b_family_character(g: &CoxeterRealization, k: usize, len: usize) -> CharacterSeries {
    simple_char_closed_form(g, 2 * k + 1, &WRep::trivial(g), len)
}

/// Character of the tensor product of `n` copies of `C[x]/(x^{2k+1})`
/// with `B_n` acting by signed permutations, shifted by `t^{-kn}`.
pub fn a1_product_character(g: &CoxeterRealization, k: usize, len: usize) -> Result<CharacterSeries> {
    if g.descriptor.kind != CoxeterType::B {
        return Err(Error::Unsupported("the product oracle is for type B".into()));
    }
    let n = g.rank();
    let m = 2 * k + 1;
    let coeffs = g
        .classes()
        .iter()
        .map(|cls| {
            let w = g.element(cls.representative);
            let mut seen = vec![false; n];
            let mut poly = vec![Q::one()];
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let (mut i, mut len_c, mut sign) = (start, 0usize, Q::one());
                loop {
                    seen[i] = true;
                    let j = (0..n).find(|&j| !w[(j, i)].is_zero()).expect("signed permutation");
                    sign *= &w[(j, i)];
                    len_c += 1;
                    i = j;
                    if i == start {
                        break;
                    }
                }
                let mut factor = vec![Q::zero(); (m - 1) * len_c + 1];
                let mut p = Q::one();
                for j in 0..m {
                    factor[j * len_c] = p.clone();
                    p *= &sign;
                }
                let full = poly.len() + factor.len() - 1;
                poly = poly_mul(&poly, &factor, full);
            }
            poly.resize(len.max(poly.len()), Q::zero());
            poly.truncate(len);
            poly
        })
        .collect();
    Ok(CharacterSeries::new(-int((k * n) as i64), coeffs))
}

/// `t^{-(r-1) l/2} prod (1 - t^{d_i + r - 1}) / (1 - t^{d_i})`, `len` terms.
pub fn spherical_closed_form(g: &CoxeterRealization, r: usize, len: usize) -> CharacterSeries {
    let l = g.rank();
    let mut s = vec![Q::one()];
    s.resize(len, Q::zero());
    for &d in g.degrees() {
        let d = d as usize;
        let mut num = vec![Q::zero(); d + r];
        num[0] = Q::one();
        num[d + r - 1] = -Q::one();
        let mut den = vec![Q::zero(); d + 1];
        den[0] = Q::one();
        den[d] = -Q::one();
        s = poly_mul(&poly_mul(&s, &num, len), &series_inverse(&den, len), len);
    }
    CharacterSeries::scalar(-(int(((r as i64) - 1) * l as i64) / int(2)), s)
}

/// `prod (d_i + r - 1) / d_i`.
pub fn spherical_dimension(g: &CoxeterRealization, r: usize) -> Q {
    g.degrees().iter().fold(Q::one(), |acc, &d| acc * int(d as i64 + r as i64 - 1) / int(d as i64))
}

/// Graded dimensions of `(M(wedge^i h))^W` at a constant parameter `c`,
/// from the exponent formula.
pub fn spherical_standard_character(g: &CoxeterRealization, i: usize, c: &Q, len: usize) -> Result<CharacterSeries> {
    let l = g.rank();
    if i > l {
        return Err(Error::Invalid(format!("exterior power {i} exceeds rank {l}")));
    }
    let h = g.coxeter_number() as i64;
    let m = g.exponents();
    let offset = (Q::one() - c * int(h)) * int(l as i64) / int(2) + c * int(h * i as i64);
    let mut num = vec![Q::zero(); len];
    for mask in 0u32..(1 << l) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let e: u32 = (0..l).filter(|j| mask & (1 << j) != 0).map(|j| m[j]).sum();
        if (e as usize) < len {
            num[e as usize] += &Q::one();
        }
    }
    for &d in g.degrees() {
        let mut den = vec![Q::zero(); d as usize + 1];
        den[0] = Q::one();
        den[d as usize] = -Q::one();
        num = poly_mul(&num, &series_inverse(&den, len), len);
    }
    Ok(CharacterSeries::scalar(offset, num))
}

/// Molien-style invariant count `(1/|W|) sum_w Tr(w, tau) / det(1 - t w)`,
/// shifted by `kappa`.
pub fn invariant_series(g: &CoxeterRealization, tau: &WRep, c: &CParameter, len: usize) -> Result<CharacterSeries> {
    let std = standard_character(g, tau, c, len)?;
    let mut out = vec![Q::zero(); len];
    for (ci, cls) in g.classes().iter().enumerate() {
        for (o, x) in out.iter_mut().zip(&std.coeffs[ci]) {
            *o += &(x * int(cls.size as i64));
        }
    }
    let order = int(g.order() as i64);
    Ok(CharacterSeries::scalar(std.offset, out.into_iter().map(|x| x / &order).collect()))
}

#[derive(Clone, Debug, Serialize)]
pub struct SolomonReport {
    pub group: String,
    pub total_degree: usize,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

/// `(1/|W|) sum_w det(1 + y w) / det(1 - t w) = prod (1 + y t^{d_i - 1}) / (1 - t^{d_i})`
/// through total degree `max_deg` in `(y, t)`.
pub fn solomon_check(g: &CoxeterRealization, max_deg: usize) -> SolomonReport {
    let l = g.rank();
    let len = max_deg + 1;
    // lhs[i][j]: coefficient of y^i t^j
    let mut lhs = vec![vec![Q::zero(); len]; l + 1];
    for cls in g.classes() {
        let w = cls.representative;
        let inv = series_inverse(&g.det_factor(w), len);
        let plus = g.det_one_plus(w);
        let size = int(cls.size as i64);
        for (i, yi) in plus.iter().enumerate() {
            for (j, tj) in inv.iter().enumerate() {
                lhs[i][j] += &(yi * tj * &size);
            }
        }
    }
    let order = int(g.order() as i64);
    for row in &mut lhs {
        for x in row.iter_mut() {
            *x = &*x / &order;
        }
    }
    let mut rhs = vec![vec![Q::zero(); len]; l + 1];
    rhs[0][0] = Q::one();
    for &d in g.degrees() {
        let d = d as usize;
        let mut next = vec![vec![Q::zero(); len]; l + 1];
        for i in 0..=l {
            for j in 0..len {
                if rhs[i][j].is_zero() {
                    continue;
                }
                next[i][j] += &rhs[i][j];
                if i < l && j + d - 1 < len {
                    next[i + 1][j + d - 1] += &rhs[i][j];
                }
            }
        }
        let mut den = vec![Q::zero(); d + 1];
        den[0] = Q::one();
        den[d] = -Q::one();
        let inv = series_inverse(&den, len);
        rhs = next.iter().map(|row| poly_mul(row, &inv, len)).collect();
    }
    let mut mismatches = Vec::new();
    for i in 0..=l {
        for j in 0..len {
            if i + j <= max_deg && lhs[i][j] != rhs[i][j] {
                mismatches.push(format!("y^{i} t^{j}: {} vs {}", format_rational(&lhs[i][j]), format_rational(&rhs[i][j])));
            }
        }
    }
    SolomonReport { group: g.descriptor.to_string(), total_degree: max_deg, passed: mismatches.is_empty(), mismatches }
}

/// Integer action of a Weyl group on its root lattice, in the basis of
/// simple roots, reduced modulo `r`.
#[derive(Clone, Debug)]
pub struct RootLatticeModel {
    pub kind: CoxeterType,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    /// Integer matrix of every group element, in element order.
    elements: Vec<Vec<Vec<i64>>>,
    pub modulus: usize,
}

pub const MAX_LATTICE_POINTS: usize = 1_000_000;

impl RootLatticeModel {
    pub fn new(g: &CoxeterRealization, r: usize) -> Result<Self> {
        if g.descriptor.kind == CoxeterType::I2 && g.descriptor.n != 3 && g.descriptor.n != 4 && g.descriptor.n != 6 {
            return Err(Error::Unsupported("root lattices need a Weyl group".into()));
        }
        if !matches!(g.descriptor.kind, CoxeterType::A | CoxeterType::B | CoxeterType::D) {
            return Err(Error::Unsupported(format!("root lattice model for {}", g.descriptor)));
        }
        let l = g.rank();
        if r == 0 || r.checked_pow(l as u32).is_none_or(|x| x > MAX_LATTICE_POINTS) {
            return Err(Error::Bound(format!("{r}^{l} lattice points")));
        }
        let cols: Vec<Vec<Q>> = g.simple_roots().to_vec();
        let p = Matrix::from_columns(&cols, l);
        let pinv = p.inverse().ok_or_else(|| Error::Invariant("simple roots are dependent".into()))?;
        let mut elements = Vec::with_capacity(g.order());
        for w in g.elements() {
            let m = pinv.mul(w).mul(&p);
            let mut rows = vec![vec![0i64; l]; l];
            for i in 0..l {
                for j in 0..l {
                    rows[i][j] = crate::exact::to_i64(&m[(i, j)])
                        .ok_or_else(|| Error::Invariant("group element not integral on the root lattice".into()))?;
                }
            }
            elements.push(rows);
        }
        let generators = g.generators().iter().map(|&s| elements[s].clone()).collect();
        Ok(Self { kind: g.descriptor.kind, rank: l, generators, elements, modulus: r })
    }

    /// Number of points of `Q / rQ` fixed by element `w`.
    pub fn fixed_points(&self, w: usize) -> u64 {
        let m = &self.elements[w];
        let r = self.modulus as i64;
        let l = self.rank;
        let mut v = vec![0i64; l];
        let mut count = 0u64;
        loop {
            let fixed = (0..l).all(|i| {
                let s: i64 = (0..l).map(|j| m[i][j] * v[j]).sum();
                (s - v[i]).rem_euclid(r) == 0
            });
            if fixed {
                count += 1;
            }
            // odometer
            let mut i = 0;
            loop {
                if i == l {
                    return count;
                }
                v[i] += 1;
                if v[i] < r {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }
}

/// Permutation character of `Q / rQ`, one value per class.
pub fn root_lattice_traces(g: &CoxeterRealization, model: &RootLatticeModel) -> Vec<u64> {
    g.classes().iter().map(|c| model.fixed_points(c.representative)).collect()
}

/// `(1/|W|) sum_w Tr(w, tau) r^{fix(w)}`.
pub fn isotypic_dims(g: &CoxeterRealization, r: usize, tau: &WRep) -> Result<usize> {
    let mut s = Q::zero();
    for cls in g.classes() {
        let w = cls.representative;
        let p = int(r as i64).pow(g.fix_dimension(w) as i32);
        s += &(tau.trace(w) * p * int(cls.size as i64));
    }
    let v = s / int(g.order() as i64);
    crate::exact::to_i64(&v)
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Invariant(format!("isotypic dimension {v} is not a nonnegative integer")))
}

fn binom(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `sum_w r^{fix(w)} = prod (r + d_i - 1)` for `r = 1..=max_r`.
pub fn shephard_todd_check(g: &CoxeterRealization, max_r: usize) -> IdentityReport {
    let mut failures = Vec::new();
    for r in 1..=max_r {
        let lhs: BigInt = g
            .classes()
            .iter()
            .map(|c| BigInt::from(c.size) * BigInt::from(r).pow(g.fix_dimension(c.representative) as u32))
            .sum();
        let rhs: BigInt = g.degrees().iter().map(|&d| BigInt::from(r as u64 + d as u64 - 1)).product();
        if lhs != rhs {
            failures.push(format!("{} r={r}: {lhs} vs {rhs}", g.descriptor));
        }
    }
    IdentityReport { name: format!("shephard-todd {}", g.descriptor), cases: max_r, failures }
}

/// `(1/r) binom(r+n-1, n) = (1/(nk+1)) binom(n(k+1), n)` at `r = nk + 1`.
pub fn catalan_check(max_n: u64, max_k: u64) -> IdentityReport {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        for k in 0..=max_k {
            let r = n * k + 1;
            let a = binom(r + n - 1, n);
            let b = binom(n * (k + 1), n);
            cases += 1;
            if &a % BigInt::from(r) != BigInt::zero() || a != b {
                failures.push(format!("n={n} k={k}: {a}/{r} vs {b}/{r}"));
            }
        }
    }
    IdentityReport { name: "catalan".into(), cases, failures }
}

/// `(1/r) binom(r + n - 1, n)` when integral.
pub fn type_a_spherical(n: u64, r: u64) -> Option<u64> {
    let b = binom(r + n - 1, n);
    if &b % BigInt::from(r) != BigInt::zero() {
        return None;
    }
    (b / BigInt::from(r)).to_u64()
}

/// `sum_{j >= k} (-1)^{j-k} [M(wedge^j h)]`, over the exponent window
/// starting at the lowest offset and `len` long.
pub fn bgg_alternating_sum(g: &CoxeterRealization, c: &CParameter, k: usize, len: usize) -> Result<CharacterSeries> {
    let l = g.rank();
    let taus: Vec<WRep> = (k..=l).map(|i| WRep::exterior_power(g, i)).collect::<Result<_>>()?;
    let offsets: Vec<Q> = taus.iter().map(|t| kappa(g, c, t)).collect::<Result<_>>()?;
    let lo = offsets.iter().min().expect("nonempty").clone();
    let mut acc = CharacterSeries::new(lo.clone(), vec![vec![Q::zero(); len]; g.classes().len()]);
    for (j, (tau, off)) in taus.iter().zip(&offsets).enumerate() {
        let gap = (off - &lo).to_integer().to_usize().ok_or_else(|| Error::Invalid("non-integral offset gap".into()))?;
        let s = standard_character(g, tau, c, len.saturating_sub(gap))?;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        if s.is_empty() {
            continue;
        }
        acc = acc.combine(&s, sign)?;
    }
    Ok(acc)
}

impl CharacterSeries {
    pub fn scaled(&self, s: i64) -> Self {
        let f = int(s);
        Self { offset: self.offset.clone(), coeffs: self.coeffs.iter().map(|c| c.iter().map(|x| x * &f).collect()).collect() }
    }
}

/// Sum over classes weighted by class size, divided by the group order:
/// the invariant part of a character series.
pub fn invariant_part(g: &CoxeterRealization, s: &CharacterSeries) -> CharacterSeries {
    let order = int(g.order() as i64);
    let out = (0..s.len())
        .map(|d| {
            let mut acc = Q::zero();
            for (ci, cls) in g.classes().iter().enumerate() {
                acc += &(&s.coeffs[ci][d] * int(cls.size as i64));
            }
            acc / &order
        })
        .collect();
    CharacterSeries::scalar(s.offset.clone(), out)
}

#[cfg(test)]
mod tests;
