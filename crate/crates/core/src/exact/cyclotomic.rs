use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{int, ExactError, Field, Matrix};

pub fn euler_phi(n: u32) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Integer coefficients of the `e`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    assert!(e >= 1, "cyclotomic order must be positive");
    // x^e - 1
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e % d == 0 {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Row `k` holds the power-basis coordinates of `x^k` reduced mod the
/// cyclotomic polynomial, for `k < 2 * phi`.
fn reduction_table(e: u32) -> Arc<Vec<Vec<BigRational>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Vec<BigRational>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("reduction cache poisoned");
    guard
        .entry(e)
        .or_insert_with(|| {
            let phi = cyclotomic_polynomial(e);
            let n = phi.len() - 1;
            let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(2 * n);
            for k in 0..2 * n.max(1) {
                let mut row = vec![BigRational::zero(); n];
                if k < n {
                    row[k] = BigRational::one();
                } else {
                    // x^k = x * x^{k-1}; x^n = -(phi_0 + ... + phi_{n-1} x^{n-1})
                    let prev = &rows[k - 1];
                    let top = prev[n - 1].clone();
                    for i in (1..n).rev() {
                        row[i] = prev[i - 1].clone();
                    }
                    row[0] = BigRational::zero();
                    if !top.is_zero() {
                        for (i, r) in row.iter_mut().enumerate() {
                            *r -= &(&top * int(phi[i]));
                        }
                    }
                }
                rows.push(row);
            }
            Arc::new(rows)
        })
        .clone()
}

/// Element of the `E`-th cyclotomic field in the power basis of a primitive
/// root `z`, reduced modulo the `E`-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<const E: u32> {
    coeffs: Vec<BigRational>,
}

impl<const E: u32> Cyclotomic<E> {
    pub fn degree() -> usize {
        euler_phi(E)
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self, ExactError> {
        if coeffs.len() != Self::degree() {
            return Err(ExactError::Shape(format!(
                "cyclotomic({E}) needs {} coefficients, got {}",
                Self::degree(),
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_rat(q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); Self::degree()];
        coeffs[0] = q;
        Self { coeffs }
    }

    /// The primitive root `z = exp(2 pi i / E)` used as the power basis generator.
    pub fn zeta() -> Self {
        let n = Self::degree();
        if n == 1 {
            // E = 1 or 2: z = 1 or -1
            return Self::from_rat(if E == 2 { int(-1) } else { int(1) });
        }
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[1] = BigRational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn multiplication_matrix(&self) -> Matrix<BigRational> {
        let n = Self::degree();
        let mut m = Matrix::zeros(n, n);
        let mut basis = Self::one();
        let z = Self::zeta();
        for j in 0..n {
            let col = self.clone() * basis.clone();
            for i in 0..n {
                m[(i, j)] = col.coeffs[i].clone();
            }
            basis = basis * z.clone();
        }
        m
    }
}

impl<const E: u32> fmt::Debug for Cyclotomic<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const E: u32> fmt::Display for Cyclotomic<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})*z{E}"),
                _ => format!("({c})*z{E}^{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<const E: u32> Add for Cyclotomic<E> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += &o;
        self
    }
}

impl<const E: u32> Sub for Cyclotomic<E> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self -= &o;
        self
    }
}

impl<const E: u32> Mul for Cyclotomic<E> {
    type Output = Self;
    fn mul(mut self, o: Self) -> Self {
        self *= &o;
        self
    }
}

impl<const E: u32> Neg for Cyclotomic<E> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<'a, const E: u32> AddAssign<&'a Cyclotomic<E>> for Cyclotomic<E> {
    fn add_assign(&mut self, o: &'a Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }
}

impl<'a, const E: u32> SubAssign<&'a Cyclotomic<E>> for Cyclotomic<E> {
    fn sub_assign(&mut self, o: &'a Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
    }
}

impl<'a, const E: u32> MulAssign<&'a Cyclotomic<E>> for Cyclotomic<E> {
    fn mul_assign(&mut self, o: &'a Self) {
        let n = Self::degree();
        let table = reduction_table(E);
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                for (k, r) in table[i + j].iter().enumerate() {
                    if !r.is_zero() {
                        out[k] += &(&prod * r);
                    }
                }
            }
        }
        self.coeffs = out;
    }
}

impl<const E: u32> Zero for Cyclotomic<E> {
    fn zero() -> Self {
        Self {
            coeffs: vec![BigRational::zero(); Self::degree()],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<const E: u32> One for Cyclotomic<E> {
    fn one() -> Self {
        Self::from_rat(BigRational::one())
    }
}

impl<const E: u32> Field for Cyclotomic<E> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = Self::degree();
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::one();
        let x = self.multiplication_matrix().solve(&rhs)?;
        Some(Self { coeffs: x })
    }

    fn from_rational(q: &BigRational) -> Result<Self, ExactError> {
        Ok(Self::from_rat(q.clone()))
    }
}
