use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::partition::Partition;
use crate::exact::{Cyclotomic, Field, Matrix, RowReducer};
use crate::{Error, Result, Q};

/// Largest `n` accepted by the Specht constructions.
pub const MAX_N: usize = 6;

/// Permutation module `M^lambda` of the Hecke algebra with
/// `(T_i - 1)(T_i + q) = 0`, on the basis of row tabloids.
///
/// A tabloid assigns a row to each of `1..n`. `T_i` fixes tabloids with `i`
/// and `i+1` in the same row, sends `m_t` to `m_{s_i t}` when `i` sits in a
/// higher row, and otherwise acts by `q m_{s_i t} + (1 - q) m_t`. The form
/// `<m_t, m_t> = q^{inv(t)}` makes every `T_i` self-adjoint.
struct PermutationModule<F> {
    q: F,
    tabloids: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl<F: Field> PermutationModule<F> {
    fn new(lambda: &Partition, q: F) -> Self {
        let mut tabloids = Vec::new();
        let mut counts = lambda.parts().to_vec();
        fn go(counts: &mut [usize], cur: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for r in 0..counts.len() {
                if counts[r] > 0 {
                    counts[r] -= 1;
                    cur.push(r as u8);
                    go(counts, cur, n, out);
                    cur.pop();
                    counts[r] += 1;
                }
            }
        }
        let n = lambda.size();
        go(&mut counts, &mut Vec::new(), n, &mut tabloids);
        let index = tabloids.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { q, tabloids, index }
    }

    fn dim(&self) -> usize {
        self.tabloids.len()
    }

    /// `T_i v` for `i` in `1..n` (entries `i`, `i+1` are positions `i-1`, `i`).
    fn apply(&self, i: usize, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); v.len()];
        let one_minus_q = F::one().sub_ref(&self.q);
        for (k, t) in self.tabloids.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let (a, b) = (t[i - 1], t[i]);
            if a == b {
                out[k] += &v[k];
                continue;
            }
            let mut s = t.clone();
            s.swap(i - 1, i);
            let ks = self.index[&s];
            if a < b {
                out[ks] += &v[k];
            } else {
                out[ks].add_mul(&self.q, &v[k]);
                out[k].add_mul(&one_minus_q, &v[k]);
            }
        }
        out
    }

    fn form_weight(&self, k: usize) -> F {
        let t = &self.tabloids[k];
        let mut inv = 0u32;
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                if t[a] > t[b] {
                    inv += 1;
                }
            }
        }
        self.q.pow(inv)
    }
}

/// Specht module `S^lambda` inside `M^lambda` with its invariant form.
#[derive(Clone)]
pub struct SpechtData<F> {
    pub lambda: Partition,
    pub q: F,
    /// Basis vectors in tabloid coordinates, fully row reduced.
    pub basis: Vec<Vec<F>>,
    /// Matrix of `T_i` (index `i - 1`) on the basis, acting on coordinate columns.
    pub generators: Vec<Matrix<F>>,
    pub gram: Matrix<F>,
}

/// Builds `S^lambda` as the cyclic submodule generated by the `q`-analogue of
/// the polytabloid of the column-reading tableau.
pub fn build_specht<F: Field>(lambda: &Partition, q: F) -> Result<SpechtData<F>> {
    let n = lambda.size();
    if n == 0 || n > MAX_N {
        return Err(Error::Unsupported(format!("Specht modules need 1 <= n <= {MAX_N}, got {n}")));
    }
    let m = PermutationModule::new(lambda, q.clone());

    // column-reading tableau: row of each entry, columns filled top to bottom
    let conj = lambda.conjugate();
    let mut rows_of = Vec::with_capacity(n);
    let mut same_column = vec![false; n];
    for &height in conj.parts() {
        for r in 0..height {
            rows_of.push(r as u8);
            if r + 1 < height {
                same_column[rows_of.len()] = true;
            }
        }
    }
    // generators s_i of the column stabilizer (i, i+1 in one column)
    let col_gens: Vec<usize> = (1..n).filter(|&i| same_column[i]).collect();
    let start = m.index[&rows_of];

    // z = sum over the column group of (-1)^{l(w)} T_w m_t, breadth first by length
    let mut seed = vec![F::zero(); m.dim()];
    seed[start] = F::one();
    let mut z = seed.clone();
    let identity: Vec<u8> = (0..n as u8).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([identity.clone()]);
    let mut frontier = vec![(identity, seed)];
    let mut sign = F::one();
    while !frontier.is_empty() {
        sign = -sign;
        let mut next = Vec::new();
        for (perm, v) in &frontier {
            for &i in &col_gens {
                // left multiplication by s_i
                let w: Vec<u8> = perm
                    .iter()
                    .map(|&x| {
                        let x = x as usize;
                        if x == i - 1 {
                            i as u8
                        } else if x == i {
                            (i - 1) as u8
                        } else {
                            x as u8
                        }
                    })
                    .collect();
                if seen.insert(w.clone()) {
                    let tv = m.apply(i, v);
                    for (acc, x) in z.iter_mut().zip(&tv) {
                        acc.add_mul(&sign, x);
                    }
                    next.push((w, tv));
                }
            }
        }
        frontier = next;
    }

    // cyclic closure under the generators
    let mut red = RowReducer::new(m.dim());
    let mut queue = vec![z];
    while let Some(v) = queue.pop() {
        let mut r = v.clone();
        red.reduce(&mut r);
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        red.insert(v.clone());
        for i in 1..n {
            queue.push(m.apply(i, &v));
        }
    }
    let ech = red.into_echelon();
    let basis = ech.rows.clone();
    let k = basis.len();
    let expected = lambda.num_standard_tableaux();
    if k != expected {
        return Err(Error::Invariant(format!(
            "S^{lambda} has dimension {k}, expected {expected} standard tableaux"
        )));
    }

    // generator matrices: coordinates of T_i b_j are its pivot entries
    let mut generators = Vec::new();
    for i in 1..n {
        let mut a = Matrix::zeros(k, k);
        for (j, b) in basis.iter().enumerate() {
            let img = m.apply(i, b);
            if !ech.contains(&img) {
                return Err(Error::Invariant(format!("S^{lambda} is not stable under T_{i}")));
            }
            for (r, &p) in ech.pivots.iter().enumerate() {
                a[(r, j)] = img[p].clone();
            }
        }
        generators.push(a);
    }

    let weights: Vec<F> = (0..m.dim()).map(|t| m.form_weight(t)).collect();
    let mut gram = Matrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let mut s = F::zero();
            for t in 0..m.dim() {
                if basis[a][t].is_zero() || basis[b][t].is_zero() {
                    continue;
                }
                s.add_mul(&basis[a][t].mul_ref(&basis[b][t]), &weights[t]);
            }
            gram[(a, b)] = s.clone();
            gram[(b, a)] = s;
        }
    }
    Ok(SpechtData { lambda: lambda.clone(), q, basis, generators, gram })
}

use num_traits::Zero;

impl<F: Field> SpechtData<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gram_rank(&self) -> usize {
        self.gram.rank()
    }

    /// Quadratic relation and both braid relations on the generator matrices.
    pub fn check_relations(&self) -> Result<()> {
        let k = self.dim();
        let id = Matrix::<F>::identity(k);
        let gens = &self.generators;
        for (i, t) in gens.iter().enumerate() {
            let lhs = t.sub(&id).mul(&t.add(&id.scale(&self.q)));
            if !lhs.is_zero() {
                return Err(Error::Invariant(format!("quadratic relation fails for T_{}", i + 1)));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let (a, b) = (&gens[i], &gens[j]);
                let ok = if j == i + 1 {
                    a.mul(b).mul(a) == b.mul(a).mul(b)
                } else {
                    a.mul(b) == b.mul(a)
                };
                if !ok {
                    return Err(Error::Invariant(format!("braid relation fails for T_{}, T_{}", i + 1, j + 1)));
                }
            }
        }
        if self.gram.transpose() != self.gram {
            return Err(Error::Invariant("Gram matrix is not symmetric".into()));
        }
        Ok(())
    }
}

macro_rules! dispatch_e {
    ($e:expr, $f:ident, $($arg:expr),*) => {
        match $e {
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            4 => $f::<4>($($arg),*),
            5 => $f::<5>($($arg),*),
            6 => $f::<6>($($arg),*),
            7 => $f::<7>($($arg),*),
            8 => $f::<8>($($arg),*),
            9 => $f::<9>($($arg),*),
            10 => $f::<10>($($arg),*),
            11 => $f::<11>($($arg),*),
            12 => $f::<12>($($arg),*),
            other => Err(Error::Unsupported(format!("q of order {other}"))),
        }
    };
}

fn specht_summary_at<const E: u32>(lambda: &Partition) -> Result<SpechtSummary> {
    let data = build_specht(lambda, Cyclotomic::<E>::zeta())?;
    data.check_relations()?;
    Ok(SpechtSummary {
        lambda: lambda.clone(),
        e: E as usize,
        dim: data.dim(),
        gram_rank: data.gram_rank(),
        gram: data.gram.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
    })
}

/// Dimension and Gram data of `S^lambda` at `q = z_e`.
#[derive(Clone, Debug, Serialize)]
pub struct SpechtSummary {
    pub lambda: Partition,
    pub e: usize,
    pub dim: usize,
    pub gram_rank: usize,
    pub gram: Vec<Vec<String>>,
}

pub fn specht_summary(lambda: &Partition, e: usize) -> Result<SpechtSummary> {
    if e < 2 {
        return Err(Error::Invalid("e must be at least 2".into()));
    }
    dispatch_e!(e, specht_summary_at, lambda)
}

/// `dim D^lambda` at a primitive `e`-th root of unity.
pub fn gram_rank(lambda: &Partition, e: usize) -> Result<usize> {
    Ok(specht_summary(lambda, e)?.gram_rank)
}

/// Gram rank at the rational value `q = q0`, used as the generic point.
pub fn gram_rank_at_rational(lambda: &Partition, q0: Q) -> Result<usize> {
    Ok(build_specht(lambda, q0)?.gram_rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct HookRecursionReport {
    pub n: usize,
    /// `dim S^{lambda^i}`, `i = 0..n-1`.
    pub specht_dims: Vec<usize>,
    /// `dim D^{lambda^i}` from Gram ranks at `q = z_n`.
    pub simple_dims: Vec<usize>,
    pub holds: bool,
}

/// Checks `dim S^{lambda^i} = dim D^{lambda^i} + dim D^{lambda^{i-1}}` for the
/// hooks `lambda^i = (n - i, 1^i)` at `e = n`, with `D^{lambda^{n-1}} = 0`.
pub fn hook_recursion_check(n: usize) -> Result<HookRecursionReport> {
    if !(3..=MAX_N).contains(&n) {
        return Err(Error::Unsupported(format!("hook recursion needs 3 <= n <= {MAX_N}")));
    }
    let mut specht_dims = Vec::new();
    let mut simple_dims = Vec::new();
    for i in 0..n {
        let s = specht_summary(&Partition::hook(n, i), n)?;
        specht_dims.push(s.dim);
        simple_dims.push(s.gram_rank);
    }
    let binomial_ok = specht_dims
        .iter()
        .enumerate()
        .all(|(i, &d)| d as u64 == binomial((n - 1) as u64, i as u64));
    let recursion_ok = (0..n).all(|i| {
        let prev = if i == 0 { 0 } else { simple_dims[i - 1] };
        specht_dims[i] == simple_dims[i] + prev
    });
    let holds = binomial_ok && recursion_ok && simple_dims[n - 1] == 0;
    Ok(HookRecursionReport { n, specht_dims, simple_dims, holds })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn linear_characters() {
        let triv = build_specht(&p(&[4]), int(2)).unwrap();
        assert_eq!(triv.dim(), 1);
        assert!(triv.generators.iter().all(|t| t[(0, 0)] == int(1)));
        let sign = build_specht(&p(&[1, 1, 1, 1]), int(2)).unwrap();
        assert_eq!(sign.dim(), 1);
        assert!(sign.generators.iter().all(|t| t[(0, 0)] == int(-2)));
    }

    #[test]
    fn relations_hold_generically_and_at_roots() {
        for n in 2..=5 {
            for lam in Partition::all(n) {
                let data = build_specht(&lam, rat(3, 2)).unwrap();
                data.check_relations().unwrap();
                assert_eq!(data.dim(), lam.num_standard_tableaux());
                assert_eq!(data.gram_rank(), data.dim(), "{lam} generic");
                let s = specht_summary(&lam, n).unwrap();
                assert_eq!(s.dim, lam.num_standard_tableaux());
            }
        }
    }

    #[test]
    fn two_one_at_cube_root() {
        let s = specht_summary(&p(&[2, 1]), 3).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.gram_rank, 1);
    }

    #[test]
    fn column_shape_vanishes_at_e_equal_n() {
        for n in 3..=5 {
            let col = Partition::new(vec![1; n]).unwrap();
            assert_eq!(gram_rank(&col, n).unwrap(), 0);
            assert_eq!(gram_rank_at_rational(&col, int(2)).unwrap(), 1);
        }
    }

    #[test]
    fn regularity_matches_nonvanishing() {
        for n in 2..=5 {
            for e in 2..=n {
                for lam in Partition::all(n) {
                    let r = gram_rank(&lam, e).unwrap();
                    assert_eq!(r > 0, lam.is_e_regular(e), "{lam} e={e}");
                }
            }
        }
    }

    #[test]
    fn cores_have_full_rank() {
        for lam in [p(&[3, 1]), p(&[3, 2]), p(&[2, 2, 1])] {
            assert!(lam.is_e_core(5));
            assert_eq!(gram_rank(&lam, 5).unwrap(), lam.num_standard_tableaux());
        }
    }

    #[test]
    fn hook_recursion() {
        let expected = [(3, vec![1, 1, 0]), (4, vec![1, 2, 1, 0]), (5, vec![1, 3, 3, 1, 0])];
        for (n, dims) in expected {
            let rep = hook_recursion_check(n).unwrap();
            assert!(rep.holds, "{rep:?}");
            assert_eq!(rep.simple_dims, dims);
            assert_eq!(rep.specht_dims.iter().sum::<usize>(), 1 << (n - 1));
        }
        assert!(hook_recursion_check(2).is_err());
    }

    #[test]
    fn size_bound() {
        assert!(matches!(build_specht(&p(&[7]), int(2)), Err(Error::Unsupported(_))));
        assert!(specht_summary(&p(&[2, 1]), 13).is_err());
    }
}
