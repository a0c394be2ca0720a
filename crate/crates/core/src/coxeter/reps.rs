//! Representations of `W` by explicit rational matrices, one per element.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{CoxeterRealization, CoxeterType};
use crate::exact::{int, Field, Matrix};
use crate::hecke::partition::{Partition, Tableau};
use crate::{Error, Result, Q};

/// How a representation was built; also its command-line spelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepLabel {
    Trivial,
    Sign,
    Exterior(usize),
    /// Irreducible of `S_n` in Young's seminormal form.
    Partition(Partition),
    /// `eps (x) base` for the linear character with the given sign on each
    /// reflection class.
    Twist { signs: Vec<i8>, base: Box<RepLabel> },
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Trivial => write!(f, "triv"),
            Self::Sign => write!(f, "sign"),
            Self::Exterior(i) => write!(f, "ext:{i}"),
            Self::Partition(p) => {
                let parts: Vec<String> = p.parts().iter().map(usize::to_string).collect();
                write!(f, "partition:{}", parts.join(","))
            }
            Self::Twist { signs, base } => {
                let s: String = signs.iter().map(|&x| if x < 0 { '-' } else { '+' }).collect();
                write!(f, "{base}*eps:{s}")
            }
        }
    }
}

impl FromStr for RepLabel {
    type Err = Error;

    /// `triv`, `sign`, `ext:i`, `partition:a,b,...`, optionally followed by
    /// `*eps:+-` (one sign per reflection class).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse representation {s:?}"));
        let s = s.trim();
        if let Some((base, eps)) = s.split_once('*') {
            let signs = eps
                .strip_prefix("eps:")
                .ok_or_else(bad)?
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<i8>>>()?;
            return Ok(Self::Twist { signs, base: Box::new(base.parse()?) });
        }
        match s {
            "triv" | "trivial" => Ok(Self::Trivial),
            "sign" => Ok(Self::Sign),
            _ => {
                if let Some(i) = s.strip_prefix("ext:") {
                    Ok(Self::Exterior(i.parse().map_err(|_| bad())?))
                } else if let Some(p) = s.strip_prefix("partition:") {
                    let parts = p
                        .split(',')
                        .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Self::Partition(Partition::new(parts)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct WRep {
    label: RepLabel,
    dim: usize,
    generators: Vec<Matrix<Q>>,
    matrices: Vec<Matrix<Q>>,
}

impl WRep {
    /// Extends generator images to all elements along the enumeration tree.
    pub fn from_generators(g: &CoxeterRealization, label: RepLabel, generators: Vec<Matrix<Q>>) -> Self {
        let dim = generators.first().map_or(1, Matrix::nrows);
        let mut matrices: Vec<Matrix<Q>> = Vec::with_capacity(g.order());
        for w in 0..g.order() {
            let m = match g.parent(w) {
                None => Matrix::identity(dim),
                Some((p, k)) => matrices[p].mul(&generators[k]),
            };
            matrices.push(m);
        }
        Self { label, dim, generators, matrices }
    }

    pub fn build(g: &CoxeterRealization, label: &RepLabel) -> Result<Self> {
        match label {
            RepLabel::Trivial => Ok(Self::trivial(g)),
            RepLabel::Sign => Ok(Self::sign(g)),
            RepLabel::Exterior(i) => Self::exterior_power(g, *i),
            RepLabel::Partition(p) => Self::partition(g, p),
            RepLabel::Twist { signs, base } => Self::build(g, base)?.twist(g, signs),
        }
    }

    pub fn trivial(g: &CoxeterRealization) -> Self {
        let one = Matrix::identity(1);
        Self::from_generators(g, RepLabel::Trivial, vec![one; g.generators().len()])
    }

    pub fn sign(g: &CoxeterRealization) -> Self {
        let minus = Matrix::from_rows(vec![vec![int(-1)]]);
        Self::from_generators(g, RepLabel::Sign, vec![minus; g.generators().len()])
    }

    /// `wedge^i h`; traces are elementary symmetric functions of eigenvalues.
    pub fn exterior_power(g: &CoxeterRealization, i: usize) -> Result<Self> {
        if i > g.rank() {
            return Err(Error::Invalid(format!("exterior power {i} exceeds rank {}", g.rank())));
        }
        let gens = g.generators().iter().map(|&s| exterior_matrix(g.element(s), i)).collect();
        Ok(Self::from_generators(g, RepLabel::Exterior(i), gens))
    }

    /// The reflection representation `h`.
    pub fn reflection(g: &CoxeterRealization) -> Self {
        Self::exterior_power(g, 1).expect("rank is positive")
    }

    /// Linear character with the given sign on each reflection class.
    pub fn linear_character(g: &CoxeterRealization, signs: &[i8]) -> Result<Self> {
        let base = Self::trivial(g);
        base.twist(g, signs)
    }

    /// `eps (x) self`.
    pub fn twist(&self, g: &CoxeterRealization, signs: &[i8]) -> Result<Self> {
        if signs.len() != g.reflection_classes().len() {
            return Err(Error::Invalid(format!(
                "{} signs given for {} reflection classes",
                signs.len(),
                g.reflection_classes().len()
            )));
        }
        let gens: Vec<Matrix<Q>> = g
            .generators()
            .iter()
            .zip(&self.generators)
            .map(|(&s, m)| {
                let refl = g.reflections().iter().find(|r| r.element == s).expect("generator is a reflection");
                if signs[refl.class] < 0 {
                    m.scale(&int(-1))
                } else {
                    m.clone()
                }
            })
            .collect();
        let label = RepLabel::Twist { signs: signs.to_vec(), base: Box::new(self.label.clone()) };
        let rep = Self::from_generators(g, label, gens);
        rep.check_homomorphism(g)?;
        Ok(rep)
    }

    /// Young's seminormal form for `S_n`, generators `s_i = (i, i+1)`.
    pub fn partition(g: &CoxeterRealization, lambda: &Partition) -> Result<Self> {
        if g.descriptor.kind != CoxeterType::A || lambda.size() != g.descriptor.n {
            return Err(Error::Invalid(format!("partition {lambda} does not label an irreducible of {}", g.descriptor)));
        }
        let tableaux = lambda.standard_tableaux();
        let dim = tableaux.len();
        let position = |t: &Tableau| tableaux.iter().position(|x| x == t).expect("standard tableau");
        let mut gens = Vec::new();
        for i in 1..g.descriptor.n {
            let mut m = Matrix::<Q>::zeros(dim, dim);
            for (col, t) in tableaux.iter().enumerate() {
                let rho = Partition::content_of(t, i + 1) - Partition::content_of(t, i);
                let inv = Q::new(1.into(), rho.into());
                m[(col, col)] = inv.clone();
                if rho.abs() == 1 {
                    continue;
                }
                let swapped = swap_entries(t, i, i + 1);
                let other = position(&swapped);
                // the tableau with i above i+1 has rho > 0
                if rho > 0 {
                    m[(other, col)] = Q::one();
                } else {
                    m[(other, col)] = Q::one() - &inv * &inv;
                }
            }
            gens.push(m);
        }
        let rep = Self::from_generators(g, RepLabel::Partition(lambda.clone()), gens);
        rep.check_homomorphism(g)?;
        Ok(rep)
    }

    /// Every irreducible of `S_n`, one per partition (type A only).
    pub fn all_irreducibles(g: &CoxeterRealization) -> Result<Vec<Self>> {
        if g.descriptor.kind != CoxeterType::A {
            return Err(Error::Unsupported("full irreducible lists exist for type A only".into()));
        }
        Partition::all(g.descriptor.n).iter().map(|p| Self::partition(g, p)).collect()
    }

    pub fn label(&self) -> &RepLabel {
        &self.label
    }

    pub fn name(&self) -> String {
        self.label.to_string()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, w: usize) -> &Matrix<Q> {
        &self.matrices[w]
    }

    pub fn generator_matrices(&self) -> &[Matrix<Q>] {
        &self.generators
    }

    pub fn trace(&self, w: usize) -> Q {
        self.matrices[w].trace()
    }

    /// Traces on the conjugacy class representatives.
    pub fn character(&self, g: &CoxeterRealization) -> Vec<Q> {
        g.classes().iter().map(|c| self.trace(c.representative)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.matrices.iter().all(|m| m[(0, 0)].is_one())
    }

    /// `rho(w g) = rho(w) rho(g)` for every element and generator, and the
    /// generators are involutions.
    pub fn check_homomorphism(&self, g: &CoxeterRealization) -> Result<()> {
        let id = Matrix::identity(self.dim);
        for (k, m) in self.generators.iter().enumerate() {
            if m.mul(m) != id {
                return Err(Error::Invariant(format!("{}: generator {k} is not an involution", self.name())));
            }
        }
        for w in 0..g.order() {
            for (k, &s) in g.generators().iter().enumerate() {
                let ws = g.multiply(w, s);
                if self.matrices[ws] != self.matrices[w].mul(&self.generators[k]) {
                    return Err(Error::Invariant(format!(
                        "{}: homomorphism fails at element {w}, generator {k}",
                        self.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matrices converted into another field.
    pub fn matrices_in<F: Field>(&self) -> Result<Vec<Matrix<F>>> {
        self.matrices
            .iter()
            .map(|m| m.try_map(F::from_rational).map_err(Error::from))
            .collect()
    }
}

fn swap_entries(t: &Tableau, a: usize, b: usize) -> Tableau {
    t.iter()
        .map(|row| {
            row.iter()
                .map(|&x| if x == a { b } else if x == b { a } else { x })
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `wedge^k m` on the basis of `k`-subsets in lexicographic order.
pub fn exterior_matrix(m: &Matrix<Q>, k: usize) -> Matrix<Q> {
    let subsets = combinations(m.nrows(), k);
    let n = subsets.len();
    let mut out = Matrix::zeros(n, n);
    for (i, rows) in subsets.iter().enumerate() {
        for (j, cols) in subsets.iter().enumerate() {
            let minor = if k == 0 {
                Q::one()
            } else {
                m.select_rows(rows).select_columns(cols).det()
            };
            if !minor.is_zero() {
                out[(i, j)] = minor;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{p_class, p_function};

    #[test]
    fn exterior_extremes() {
        let g = CoxeterRealization::build(CoxeterType::B, 3).unwrap();
        let e0 = WRep::exterior_power(&g, 0).unwrap();
        assert!(e0.is_trivial());
        let top = WRep::exterior_power(&g, 3).unwrap();
        let sign = WRep::sign(&g);
        for w in 0..g.order() {
            assert_eq!(top.trace(w), sign.trace(w));
            assert_eq!(sign.trace(w), g.det(w));
        }
        for r in g.reflections() {
            assert_eq!(top.trace(r.element), int(-1));
        }
        assert!(WRep::exterior_power(&g, 4).is_err());
    }

    #[test]
    fn three_cycle_trace() {
        let g = CoxeterRealization::build(CoxeterType::A, 3).unwrap();
        let h = WRep::reflection(&g);
        let cycle = (0..g.order()).find(|&w| g.fix_dimension(w) == 0).unwrap();
        assert_eq!(h.trace(cycle), int(-1));
        h.check_homomorphism(&g).unwrap();
    }

    #[test]
    fn exterior_traces_are_elementary_symmetric() {
        let g = CoxeterRealization::build(CoxeterType::D, 4).unwrap();
        let reps: Vec<WRep> = (0..=4).map(|i| WRep::exterior_power(&g, i).unwrap()).collect();
        for c in g.classes() {
            let w = c.representative;
            let e = g.det_one_plus(w);
            for (i, rep) in reps.iter().enumerate() {
                assert_eq!(rep.trace(w), e[i]);
            }
        }
    }

    #[test]
    fn seminormal_form_is_a_homomorphism() {
        let g = CoxeterRealization::build(CoxeterType::A, 4).unwrap();
        let irreps = WRep::all_irreducibles(&g).unwrap();
        let dims: Vec<usize> = irreps.iter().map(WRep::dim).collect();
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 24);
        // orthogonality of characters
        for a in &irreps {
            for b in &irreps {
                let ip = g
                    .classes()
                    .iter()
                    .map(|c| int(c.size as i64) * a.trace(c.representative) * b.trace(c.representative))
                    .fold(Q::zero(), |x, y| x + y)
                    / int(24);
                let expected = if a.label() == b.label() { int(1) } else { int(0) };
                assert_eq!(ip, expected);
            }
        }
    }

    #[test]
    fn p_values() {
        for (k, n) in [(CoxeterType::A, 4), (CoxeterType::B, 3), (CoxeterType::D, 4), (CoxeterType::I2, 6)] {
            let g = CoxeterRealization::build(k, n).unwrap();
            let s = g.reflections().len() as i64;
            let h = g.coxeter_number() as i64;
            for i in 0..=g.rank() {
                let rep = WRep::exterior_power(&g, i).unwrap();
                assert_eq!(p_function(&g, &rep).unwrap(), s - h * i as i64, "{} ext {i}", g.descriptor);
            }
        }
    }

    #[test]
    fn p_is_strictly_between_for_other_irreducibles() {
        let g = CoxeterRealization::build(CoxeterType::A, 5).unwrap();
        let s = g.reflections().len() as i64;
        for rep in WRep::all_irreducibles(&g).unwrap() {
            let p = p_function(&g, &rep).unwrap();
            assert!(p.abs() <= s);
            if rep.dim() > 1 {
                assert!(p.abs() < s);
            }
            assert!(p_class(&g, 0, &rep).is_ok());
        }
    }

    #[test]
    fn labels_round_trip() {
        for s in ["triv", "sign", "ext:2", "partition:3,1", "ext:1*eps:+-"] {
            let label: RepLabel = s.parse().unwrap();
            assert_eq!(label.to_string(), s);
        }
        assert!("ext:x".parse::<RepLabel>().is_err());
        assert!("partition:1,2".parse::<RepLabel>().is_err());
    }

    #[test]
    fn twist_of_reflection_rep_in_b4() {
        let g = CoxeterRealization::build(CoxeterType::B, 4).unwrap();
        let h = WRep::reflection(&g);
        let he = h.twist(&g, &[1, -1]).unwrap();
        let short = g.reflections()[g.reflection_classes()[1][0]].element;
        assert_eq!(he.trace(short), -h.trace(short));
        assert!(WRep::linear_character(&g, &[-1, 1]).is_ok());
    }
}
