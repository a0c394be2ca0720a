//! The path algebra of the doubled `A_n` quiver modulo the relations
//!
//! `g_0 f_0 = 0`, `f_{i+1} f_i = 0`, `g_i g_{i+1} = 0`, `f_i g_i = g_{i+1} f_{i+1}`,
//!
//! with composition written right to left. Its Cartan matrix is compared
//! against the decomposition matrix of the principal block of category `O`
//! in type `A`, and that matrix is in turn recovered from graded characters.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::chars::{standard_character, CharacterSeries};
use crate::cherednik::StandardModule;
use crate::coxeter::{kappa, CParameter, CoxeterRealization, CoxeterType, WRep};
use crate::exact::{rat, to_i64, Matrix};
use crate::{Error, Result, Q};

pub const MAX_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Arrow {
    /// `i -> i + 1`
    F(usize),
    /// `i + 1 -> i`
    G(usize),
}

impl Arrow {
    fn source(self) -> usize {
        match self {
            Arrow::F(i) => i,
            Arrow::G(i) => i + 1,
        }
    }

    fn target(self) -> usize {
        match self {
            Arrow::F(i) => i + 1,
            Arrow::G(i) => i,
        }
    }

    /// `f_0 < g_0 < f_1 < g_1 < ...`
    fn rank(self) -> usize {
        match self {
            Arrow::F(i) => 2 * i,
            Arrow::G(i) => 2 * i + 1,
        }
    }
}

impl std::fmt::Display for Arrow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Arrow::F(i) => write!(f, "f{i}"),
            Arrow::G(i) => write!(f, "g{i}"),
        }
    }
}

/// A path, arrows listed in the order they are traversed. Empty paths are
/// the vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<Arrow>,
}

impl Path {
    pub fn vertex(i: usize) -> Self {
        Self { source: i, target: i, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e{}", self.source);
        }
        // right-to-left composition
        let names: Vec<String> = self.arrows.iter().rev().map(|a| a.to_string()).collect();
        write!(f, "{}", names.join("*"))
    }
}

/// Rewriting rule on two consecutive arrows: to zero, or to another pair.
#[derive(Clone, Debug)]
enum Rhs {
    Zero,
    Pair([Arrow; 2]),
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverAlgebra {
    pub n: usize,
    /// Irreducible paths, sorted.
    pub basis: Vec<Path>,
    #[serde(skip)]
    rules: BTreeMap<[Arrow; 2], Rhs>,
}

impl QuiverAlgebra {
    pub fn build(n: usize) -> Result<Self> {
        if !(2..=MAX_VERTICES).contains(&n) {
            return Err(Error::Invalid(format!("quiver needs 2..={MAX_VERTICES} vertices, got {n}")));
        }
        let mut rules = BTreeMap::new();
        // g_0 f_0 = 0
        rules.insert([Arrow::F(0), Arrow::G(0)], Rhs::Zero);
        for i in 0..n.saturating_sub(2) {
            // f_{i+1} f_i = 0 and g_i g_{i+1} = 0
            rules.insert([Arrow::F(i), Arrow::F(i + 1)], Rhs::Zero);
            rules.insert([Arrow::G(i + 1), Arrow::G(i)], Rhs::Zero);
            // f_i g_i = g_{i+1} f_{i+1}, oriented length-lex
            let (a, b) = ([Arrow::G(i), Arrow::F(i)], [Arrow::F(i + 1), Arrow::G(i + 1)]);
            let (big, small) = if Self::lex_less(&a, &b) { (b, a) } else { (a, b) };
            rules.insert(big, Rhs::Pair(small));
        }
        let mut alg = Self { n, basis: Vec::new(), rules };
        alg.basis = alg.enumerate_basis()?;
        Ok(alg)
    }

    fn lex_less(a: &[Arrow], b: &[Arrow]) -> bool {
        (a.len(), a.iter().map(|x| x.rank()).collect::<Vec<_>>()) < (b.len(), b.iter().map(|x| x.rank()).collect())
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        (0..self.n - 1).flat_map(|i| [Arrow::F(i), Arrow::G(i)]).collect()
    }

    /// One rewriting step at position `pos`, if a rule applies there.
    fn step_at(&self, word: &[Arrow], pos: usize) -> Option<Option<Vec<Arrow>>> {
        let key = [word[pos], word[pos + 1]];
        self.rules.get(&key).map(|rhs| match rhs {
            Rhs::Zero => None,
            Rhs::Pair(p) => {
                let mut w = word.to_vec();
                w[pos] = p[0];
                w[pos + 1] = p[1];
                Some(w)
            }
        })
    }

    /// Normal form of a word (leftmost rewriting); `None` is zero.
    pub fn normal_form(&self, word: &[Arrow]) -> Option<Vec<Arrow>> {
        let mut w = word.to_vec();
        'outer: loop {
            for pos in 0..w.len().saturating_sub(1) {
                if let Some(next) = self.step_at(&w, pos) {
                    w = next?;
                    continue 'outer;
                }
            }
            return Some(w);
        }
    }

    fn enumerate_basis(&self) -> Result<Vec<Path>> {
        let mut basis: Vec<Path> = (0..self.n).map(Path::vertex).collect();
        let mut frontier: Vec<Path> = basis.clone();
        let max_len = 2 * self.n + 2;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows() {
                    if a.source() != p.target {
                        continue;
                    }
                    let mut w = p.arrows.clone();
                    w.push(a);
                    if self.normal_form(&w).as_deref() == Some(&w[..]) {
                        next.push(Path { source: p.source, target: a.target(), arrows: w });
                    }
                }
            }
            if next.iter().any(|p| p.len() > max_len) {
                return Err(Error::Invariant("path algebra looks infinite-dimensional".into()));
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort();
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `a` then `b` (that is, `b * a`), reduced; `None` if zero.
    pub fn concat(&self, a: &Path, b: &Path) -> Option<Path> {
        if a.target != b.source {
            return None;
        }
        let mut w = a.arrows.clone();
        w.extend(&b.arrows);
        self.normal_form(&w).map(|arrows| Path { source: a.source, target: b.target, arrows })
    }

    /// Every length-3 path reduces to one normal form whichever rule is
    /// applied first.
    pub fn check_local_confluence(&self) -> std::result::Result<(), String> {
        let arrows = self.arrows();
        for &a in &arrows {
            for &b in &arrows {
                for &c in &arrows {
                    if a.target() != b.source() || b.target() != c.source() {
                        continue;
                    }
                    let w = [a, b, c];
                    let mut forms = Vec::new();
                    for pos in 0..2 {
                        if let Some(step) = self.step_at(&w, pos) {
                            forms.push(step.and_then(|s| self.normal_form(&s)));
                        }
                    }
                    if forms.windows(2).any(|p| p[0] != p[1]) {
                        return Err(format!("critical pair {a} {b} {c} has normal forms {forms:?}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity on basis triples.
    pub fn check_associativity(&self) -> std::result::Result<(), String> {
        for a in &self.basis {
            for b in &self.basis {
                let ab = self.concat(a, b);
                for c in &self.basis {
                    let left = ab.as_ref().and_then(|x| self.concat(x, c));
                    let right = self.concat(b, c).and_then(|bc| self.concat(a, &bc));
                    if left != right {
                        return Err(format!("({a} then {b}) then {c} differs"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `C_ij = dim e_i A e_j`: paths from `j` to `i`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; self.n]; self.n];
        for p in &self.basis {
            c[p.target][p.source] += 1;
        }
        c
    }
}

/// Decomposition matrix with rows `M_i`: ones at `(i, i)` and `(i, i+1)`.
pub fn decomposition_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut d = vec![vec![0i64; n]; n];
    for i in 0..n {
        d[i][i] = 1;
        if i + 1 < n {
            d[i][i + 1] = 1;
        }
    }
    d
}

fn gram(d: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = d.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| d[k][i] * d[k][j]).sum()).collect()).collect()
}

fn relabel(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    (0..n).map(|i| (0..n).map(|j| c[n - 1 - i][n - 1 - j]).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanReport {
    pub n: usize,
    pub dim: usize,
    pub cartan: Vec<Vec<i64>>,
    pub predicted: Vec<Vec<i64>>,
    pub matches_directly: bool,
    pub matches_reversed: bool,
    pub confluent: std::result::Result<(), String>,
    pub associative: std::result::Result<(), String>,
}

impl CartanReport {
    pub fn passed(&self) -> bool {
        (self.matches_directly || self.matches_reversed) && self.confluent.is_ok() && self.associative.is_ok()
    }
}

pub fn cartan_check(n: usize) -> Result<CartanReport> {
    let alg = QuiverAlgebra::build(n)?;
    let cartan = alg.cartan_matrix();
    let predicted = gram(&decomposition_matrix(n));
    Ok(CartanReport {
        n,
        dim: alg.dim(),
        matches_directly: cartan == predicted,
        matches_reversed: relabel(&cartan) == predicted,
        confluent: alg.check_local_confluence(),
        associative: alg.check_associativity(),
        cartan,
        predicted,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryOReport {
    pub n: usize,
    pub r: usize,
    /// `[M(wedge^i h) : L(wedge^j h)]`, recovered from characters.
    pub recovered: Vec<Vec<i64>>,
    pub expected: Vec<Vec<i64>>,
    pub window: usize,
    pub passed: bool,
}

/// Truncated character of `L(tau)` computed by the radical recursion,
/// finite or not.
pub fn truncated_simple_character(
    g: &CoxeterRealization,
    tau: &WRep,
    c: &CParameter,
    degrees: usize,
) -> Result<CharacterSeries> {
    let mut m = StandardModule::<Q>::new(g, tau, c)?;
    let run = m.simple_run(degrees.saturating_sub(1), false)?;
    let mut coeffs = vec![vec![Q::zero(); degrees]; g.classes().len()];
    for (ci, cls) in g.classes().iter().enumerate() {
        for (d, e) in run.pis.iter().enumerate() {
            coeffs[ci][d] = m.quotient_trace(e, cls.representative, d)?;
        }
    }
    Ok(CharacterSeries::new(kappa(g, c, tau)?, coeffs))
}

/// Flattens `s` onto exponents `lo, lo + 1, ..., lo + len - 1`.
fn window(s: &CharacterSeries, lo: &Q, len: usize) -> Result<Vec<Q>> {
    let gap = to_i64(&(&s.offset - lo)).ok_or_else(|| Error::Invalid("non-integral offset gap".into()))?;
    let mut out = Vec::with_capacity(len * s.nclasses());
    for row in &s.coeffs {
        for e in 0..len as i64 {
            let d = e - gap;
            out.push(if d < 0 { Q::zero() } else { row.get(d as usize).cloned().ok_or_else(|| Error::Invalid("series too short".into()))? });
        }
    }
    Ok(out)
}

/// Recovers `[M(wedge^i h) : L(wedge^j h)]` for `S_n` at `c = r/n` from
/// graded characters and compares with the two-diagonal matrix.
pub fn cross_check_category_o(n: usize, r: usize) -> Result<CategoryOReport> {
    if num_integer::gcd(n, r) != 1 {
        return Err(Error::Precondition(format!("gcd({r}, {n}) != 1")));
    }
    if !(2..=4).contains(&n) {
        return Err(Error::Precondition(format!("category O cross-check supports n <= 4, got {n}")));
    }
    let g = CoxeterRealization::build(CoxeterType::A, n)?;
    let c = CParameter::constant(&g, rat(r as i64, n as i64));
    let taus: Vec<WRep> = (0..n).map(|i| WRep::exterior_power(&g, i)).collect::<Result<_>>()?;
    let offsets: Vec<Q> = taus.iter().map(|t| kappa(&g, &c, t)).collect::<Result<_>>()?;
    let lo = offsets.iter().min().expect("nonempty").clone();
    let hi = offsets.iter().max().expect("nonempty").clone();
    let span = to_i64(&(&hi - &lo)).ok_or_else(|| Error::Invariant("offsets differ by a non-integer".into()))? as usize;
    let len = span + r + 3;
    let mut simples = Vec::new();
    let mut standards = Vec::new();
    for (tau, off) in taus.iter().zip(&offsets) {
        let gap = to_i64(&(off - &lo)).expect("integral") as usize;
        let need = len - gap;
        simples.push(window(&truncated_simple_character(&g, tau, &c, need)?, &lo, len)?);
        standards.push(window(&standard_character(&g, tau, &c, need)?, &lo, len)?);
    }
    // char M_i = sum_j a_ij char L_j
    let cols: Vec<Vec<Q>> = simples.clone();
    let basis = Matrix::from_columns(&cols, cols[0].len());
    if basis.rank() != n {
        return Err(Error::Invariant("simple characters are dependent on the window".into()));
    }
    let mut recovered = Vec::new();
    for m in &standards {
        let a = basis.solve(m).ok_or_else(|| Error::Invariant("standard character not in the span of simples".into()))?;
        recovered.push(
            a.iter()
                .map(|x| to_i64(x).ok_or_else(|| Error::Invariant(format!("non-integral multiplicity {x}"))))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let expected = decomposition_matrix(n);
    Ok(CategoryOReport { n, r, passed: recovered == expected, recovered, expected, window: len })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(QuiverAlgebra::build(2).unwrap().dim(), 5);
        assert_eq!(QuiverAlgebra::build(3).unwrap().dim(), 9);
        assert!(QuiverAlgebra::build(1).is_err());
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let alg = QuiverAlgebra::build(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let p = alg.concat(&Path::vertex(i), &Path::vertex(j));
                assert_eq!(p.is_some(), i == j);
            }
        }
    }

    #[test]
    fn cartan_is_gram_of_decomposition() {
        for n in 2..=MAX_VERTICES {
            let rep = cartan_check(n).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let trace: i64 = (0..n).map(|i| rep.cartan[i][i]).sum();
            assert_eq!(trace, 1 + 2 * (n as i64 - 1));
            assert_eq!(rep.dim as i64, rep.cartan.iter().flatten().sum::<i64>());
        }
    }

    #[test]
    fn n3_cartan() {
        let rep = cartan_check(3).unwrap();
        assert_eq!(rep.cartan, vec![vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn category_o_small() {
        for (n, r) in [(2, 3), (3, 2)] {
            let rep = cross_check_category_o(n, r).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        assert!(cross_check_category_o(4, 2).is_err());
    }
}
