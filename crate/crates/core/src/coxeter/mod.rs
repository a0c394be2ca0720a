//! Finite Coxeter groups as explicit rational matrix groups.
//!
//! Conventions: the polynomial variables `x_1..x_l` are a basis of `h*`, and
//! `y_1..y_l` is the dual basis of `h`. A group element is stored as the
//! matrix `G` of its action on `h*`, column `j` holding the coordinates of
//! `w(x_j)`. A reflection with root `a` (a linear form) and coroot `b` (a
//! vector of `h`, `b_j = <b, x_j>`, `a . b = 2`) acts by `G = I - a b^T`.

mod reps;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{int, Field, Matrix};
use crate::{Error, Result, Q};

pub use reps::{RepLabel, WRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    /// The symmetric group `S_n`, type `A_{n-1}`.
    A,
    /// Signed permutations of `n` letters.
    B,
    /// Signed permutations with an even number of sign changes.
    D,
    /// Dihedral group of order `2m`.
    I2,
}

impl std::str::FromStr for CoxeterType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" | "C" => Ok(Self::B),
            "D" => Ok(Self::D),
            "I2" | "I" => Ok(Self::I2),
            other => Err(Error::Unsupported(format!("Coxeter type {other:?}"))),
        }
    }
}

/// Type tag plus size parameter (`n` for `S_n`, `B_n`, `D_n`; `m` for `I2(m)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub kind: CoxeterType,
    pub n: usize,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CoxeterType::A => write!(f, "A{}", self.n - 1),
            CoxeterType::B => write!(f, "B{}", self.n),
            CoxeterType::D => write!(f, "D{}", self.n),
            CoxeterType::I2 => write!(f, "I2({})", self.n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reflection {
    /// Root as a linear form on `h` (coordinates in `x`).
    pub root: Vec<Q>,
    /// Coroot as a vector of `h`.
    pub coroot: Vec<Q>,
    /// Index of the reflection in the element list.
    pub element: usize,
    /// Index of its conjugacy class among the reflection classes.
    pub class: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CoxeterRealization {
    pub descriptor: GroupDescriptor,
    rank: usize,
    elements: Vec<Matrix<Q>>,
    lookup: HashMap<Vec<Q>, usize>,
    /// `elements[i] = elements[p] * generator g` for `parent[i] = Some((p, g))`.
    parent: Vec<Option<(usize, usize)>>,
    generators: Vec<usize>,
    inverse: Vec<usize>,
    reflections: Vec<Reflection>,
    reflection_classes: Vec<Vec<usize>>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    degrees: Vec<u32>,
    simple_roots: Vec<Vec<Q>>,
}

const MAX_ORDER: usize = 50_000;

impl CoxeterRealization {
    /// Builds one of the supported realizations.
    pub fn build(kind: CoxeterType, n: usize) -> Result<Self> {
        let descriptor = GroupDescriptor { kind, n };
        let unsupported = || Error::Unsupported(format!("{kind:?} with parameter {n}"));
        match kind {
            CoxeterType::A if (2..=7).contains(&n) => Self::type_a(n),
            CoxeterType::B if (2..=5).contains(&n) => Self::type_b(n),
            CoxeterType::D if (3..=6).contains(&n) => Self::type_d(n),
            CoxeterType::I2 => {
                let cartan = match n {
                    3 => [[2, -1], [-1, 2]],
                    4 => [[2, -2], [-1, 2]],
                    6 => [[2, -3], [-1, 2]],
                    _ => return Err(unsupported()),
                };
                Self::from_cartan(descriptor, &cartan, vec![2, n as u32])
            }
            _ => Err(unsupported()),
        }
    }

    /// `S_n` on the sum-zero hyperplane of `C^n`, coordinates `x_1..x_{n-1}`
    /// with `x_n = -(x_1 + ... + x_{n-1})`.
    fn type_a(n: usize) -> Result<Self> {
        let l = n - 1;
        // linear form x_i restricted to the hyperplane
        let form = |i: usize| -> Vec<Q> {
            if i < l {
                unit(l, i)
            } else {
                vec![int(-1); l]
            }
        };
        let vector = |i: usize| -> Vec<Q> {
            if i < l {
                unit(l, i)
            } else {
                vec![Q::zero(); l]
            }
        };
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = sub(&form(i), &form(j));
                let b = sub(&vector(i), &vector(j));
                roots.push((a, b, 0));
            }
        }
        let simple: Vec<usize> = (0..l)
            .map(|i| roots.iter().position(|r| r.0 == sub(&form(i), &form(i + 1))).unwrap())
            .collect();
        let degrees = (2..=n as u32).collect();
        Self::from_root_data(GroupDescriptor { kind: CoxeterType::A, n }, l, roots, &simple, degrees)
    }

    fn type_b(n: usize) -> Result<Self> {
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = sub(&unit(n, i), &unit(n, j));
                roots.push((a.clone(), a, 0));
                let a = add(&unit(n, i), &unit(n, j));
                roots.push((a.clone(), a, 0));
            }
        }
        for i in 0..n {
            let b: Vec<Q> = unit(n, i).iter().map(|x| x * int(2)).collect();
            roots.push((unit(n, i), b, 1));
        }
        let mut simple: Vec<usize> = (0..n - 1)
            .map(|i| roots.iter().position(|r| r.0 == sub(&unit(n, i), &unit(n, i + 1))).unwrap())
            .collect();
        simple.push(roots.iter().position(|r| r.0 == unit(n, n - 1)).unwrap());
        let degrees = (1..=n as u32).map(|k| 2 * k).collect();
        Self::from_root_data(GroupDescriptor { kind: CoxeterType::B, n }, n, roots, &simple, degrees)
    }

    fn type_d(n: usize) -> Result<Self> {
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = sub(&unit(n, i), &unit(n, j));
                roots.push((a.clone(), a, 0));
                let a = add(&unit(n, i), &unit(n, j));
                roots.push((a.clone(), a, 0));
            }
        }
        let mut simple: Vec<usize> = (0..n - 1)
            .map(|i| roots.iter().position(|r| r.0 == sub(&unit(n, i), &unit(n, i + 1))).unwrap())
            .collect();
        simple.push(
            roots
                .iter()
                .position(|r| r.0 == add(&unit(n, n - 2), &unit(n, n - 1)))
                .unwrap(),
        );
        let mut degrees: Vec<u32> = (1..n as u32).map(|k| 2 * k).collect();
        degrees.push(n as u32);
        degrees.sort_unstable();
        Self::from_root_data(GroupDescriptor { kind: CoxeterType::D, n }, n, roots, &simple, degrees)
    }

    /// Crystallographic rank-2 realization with the simple roots as the
    /// variables; `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    fn from_cartan(descriptor: GroupDescriptor, cartan: &[[i64; 2]; 2], degrees: Vec<u32>) -> Result<Self> {
        let l = 2;
        let simple_data: Vec<(Vec<Q>, Vec<Q>)> = (0..l)
            .map(|i| (unit(l, i), cartan[i].iter().map(|&x| int(x)).collect()))
            .collect();
        let gens: Vec<Matrix<Q>> = simple_data.iter().map(|(a, b)| reflection_matrix(a, b)).collect();
        // positive roots: orbit of the simple roots, coroots transported contragrediently
        let mut roots: Vec<(Vec<Q>, Vec<Q>, usize)> = Vec::new();
        let mut queue: VecDeque<(Vec<Q>, Vec<Q>)> = simple_data.into_iter().collect();
        let mut seen: Vec<Vec<Q>> = Vec::new();
        while let Some((a, b)) = queue.pop_front() {
            let positive_a = if a.iter().find(|x| !x.is_zero()).unwrap() < &Q::zero() {
                a.iter().map(|x| -x.clone()).collect()
            } else {
                a.clone()
            };
            if seen.contains(&positive_a) {
                continue;
            }
            seen.push(positive_a.clone());
            let sign = if positive_a == a { int(1) } else { int(-1) };
            roots.push((positive_a, b.iter().map(|x| x * &sign).collect(), 0));
            for g in &gens {
                let ga = g.mul_vec(&a);
                let gb = g.inverse().expect("reflection").transpose().mul_vec(&b);
                queue.push_back((ga, gb));
            }
        }
        let simple = vec![0, 1];
        let mut realization = Self::from_root_data(descriptor, l, roots, &simple, degrees)?;
        realization.simple_roots = (0..l).map(|i| unit(l, i)).collect();
        Ok(realization)
    }

    /// Common constructor: enumerates the group generated by the simple
    /// reflections and sorts reflections into conjugacy classes. The third
    /// entry of each root tuple is only a hint for class ordering.
    fn from_root_data(
        descriptor: GroupDescriptor,
        rank: usize,
        mut roots: Vec<(Vec<Q>, Vec<Q>, usize)>,
        simple: &[usize],
        degrees: Vec<u32>,
    ) -> Result<Self> {
        for (a, b, _) in &roots {
            if dot(a, b) != int(2) {
                return Err(Error::Invariant("root/coroot pairing differs from 2".into()));
            }
        }
        roots.sort_by_key(|r| r.2);
        let simple_roots: Vec<Vec<Q>> = simple.iter().map(|&i| roots_by_hint(&roots, i)).collect();
        let gen_mats: Vec<Matrix<Q>> = simple_roots
            .iter()
            .map(|a| {
                let (a, b, _) = roots.iter().find(|r| &r.0 == a).unwrap();
                reflection_matrix(a, b)
            })
            .collect();

        // breadth-first closure; the identity is element 0
        let id = Matrix::<Q>::identity(rank);
        let mut elements = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id.data().to_vec(), 0usize);
        let mut parent = vec![None];
        let mut head = 0;
        while head < elements.len() {
            for (g, gm) in gen_mats.iter().enumerate() {
                let prod = elements[head].mul(gm);
                if !lookup.contains_key(prod.data()) {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::Bound(format!("{descriptor} exceeds {MAX_ORDER} elements")));
                    }
                    lookup.insert(prod.data().to_vec(), elements.len());
                    elements.push(prod);
                    parent.push(Some((head, g)));
                }
            }
            head += 1;
        }
        let find = |m: &Matrix<Q>| -> usize { lookup[m.data()] };
        let generators: Vec<usize> = gen_mats.iter().map(find).collect();
        let inverse: Vec<usize> = elements
            .iter()
            .map(|m| find(&m.inverse().expect("group elements are invertible")))
            .collect();

        // conjugacy classes by orbits under conjugation by generators
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut k = 0;
            while k < members.len() {
                let e = &elements[members[k]];
                for gm in &gen_mats {
                    // generators are involutions
                    let conj = gm.mul(e).mul(gm);
                    let idx = find(&conj);
                    if class_of[idx] == usize::MAX {
                        class_of[idx] = cid;
                        members.push(idx);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: start,
                size: members.len(),
                members,
            });
        }

        // reflections and their classes, ordered by first appearance
        let mut reflections = Vec::new();
        let mut group_class_to_refl_class: Vec<(usize, usize)> = Vec::new();
        let mut reflection_classes: Vec<Vec<usize>> = Vec::new();
        for (a, b, _) in &roots {
            let m = reflection_matrix(a, b);
            let element = *lookup
                .get(m.data())
                .ok_or_else(|| Error::Invariant("reflection outside the generated group".into()))?;
            let gc = class_of[element];
            let rc = match group_class_to_refl_class.iter().find(|(g, _)| *g == gc) {
                Some(&(_, r)) => r,
                None => {
                    let r = reflection_classes.len();
                    group_class_to_refl_class.push((gc, r));
                    reflection_classes.push(Vec::new());
                    r
                }
            };
            reflection_classes[rc].push(reflections.len());
            reflections.push(Reflection {
                root: a.clone(),
                coroot: b.clone(),
                element,
                class: rc,
            });
        }

        let realization = Self {
            descriptor,
            rank,
            elements,
            lookup,
            parent,
            generators,
            inverse,
            reflections,
            reflection_classes,
            classes,
            class_of,
            degrees,
            simple_roots,
        };
        realization.check_invariants()?;
        Ok(realization)
    }

    fn check_invariants(&self) -> Result<()> {
        let order: u64 = self.degrees.iter().map(|&d| d as u64).product();
        if order != self.order() as u64 {
            return Err(Error::Invariant(format!(
                "{}: product of degrees {order} differs from |W| = {}",
                self.descriptor,
                self.order()
            )));
        }
        let refl_count = self.count_reflections_by_fixed_space();
        if refl_count != self.reflections.len() {
            return Err(Error::Invariant(format!(
                "{}: {} reflections listed but {} elements have a fixed hyperplane",
                self.descriptor,
                self.reflections.len(),
                refl_count
            )));
        }
        if 2 * self.reflections.len() != self.coxeter_number() as usize * self.rank {
            return Err(Error::Invariant("2|S| differs from h * rank".into()));
        }
        Ok(())
    }

    fn count_reflections_by_fixed_space(&self) -> usize {
        (0..self.order())
            .filter(|&w| self.inverse[w] == w && w != 0 && self.fix_dimension(w) + 1 == self.rank)
            .count()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, w: usize) -> &Matrix<Q> {
        &self.elements[w]
    }

    pub fn elements(&self) -> &[Matrix<Q>] {
        &self.elements
    }

    pub fn index_of(&self, m: &Matrix<Q>) -> Option<usize> {
        self.lookup.get(m.data()).copied()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.elements[a].mul(&self.elements[b]))
            .expect("group is closed under multiplication")
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn parent(&self, w: usize) -> Option<(usize, usize)> {
        self.parent[w]
    }

    /// Element indices of the simple reflections.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn reflection_classes(&self) -> &[Vec<usize>] {
        &self.reflection_classes
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.degrees.iter().map(|d| d - 1).collect()
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees.iter().max().expect("rank is positive")
    }

    /// Simple roots as linear forms (coordinates in `x`).
    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    /// Dimension of the fixed space of `w` on `h`.
    pub fn fix_dimension(&self, w: usize) -> usize {
        let m = self.elements[w].sub(&Matrix::identity(self.rank));
        self.rank - m.rank()
    }

    /// Coefficients of `det(1 - t w)`, constant term first.
    pub fn det_factor(&self, w: usize) -> Vec<Q> {
        char_poly_one_minus(&self.elements[w])
    }

    /// `det(1 + y w)`, i.e. `sum_i y^i Tr(w, wedge^i h)`.
    pub fn det_one_plus(&self, w: usize) -> Vec<Q> {
        let c = self.det_factor(w);
        c.into_iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 1 { -x } else { x })
            .collect()
    }

    /// Determinant of `w` on `h` (the sign character).
    pub fn det(&self, w: usize) -> Q {
        self.elements[w].det()
    }

    /// A copy with every root scaled by `factors[s]` and the coroot by its
    /// inverse; the reflections themselves are unchanged.
    pub fn with_rescaled_roots(&self, factors: &[Q]) -> Result<Self> {
        if factors.len() != self.reflections.len() || factors.iter().any(Zero::is_zero) {
            return Err(Error::Invalid("one nonzero factor per reflection required".into()));
        }
        let mut out = self.clone();
        for (r, f) in out.reflections.iter_mut().zip(factors) {
            r.root = r.root.iter().map(|x| x * f).collect();
            r.coroot = r.coroot.iter().map(|x| x / f).collect();
        }
        Ok(out)
    }

    /// Word in the generators (indices into [`Self::generators`]) whose
    /// product is `w`.
    pub fn word(&self, mut w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((p, g)) = self.parent[w] {
            word.push(g);
            w = p;
        }
        word.reverse();
        word
    }
}

/// Class function `c` on reflections, one value per reflection class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CParameter(pub Vec<Q>);

impl CParameter {
    pub fn constant(g: &CoxeterRealization, c: Q) -> Self {
        Self(vec![c; g.reflection_classes().len()])
    }

    /// Type `B_n` parameter: `c1` on the roots `e_i +- e_j`, `c2` on `e_i`.
    pub fn type_b(g: &CoxeterRealization, c1: Q, c2: Q) -> Result<Self> {
        if g.descriptor.kind != CoxeterType::B {
            return Err(Error::Invalid("two-parameter c requires type B".into()));
        }
        Ok(Self(vec![c1, c2]))
    }

    pub fn validate(&self, g: &CoxeterRealization) -> Result<()> {
        if self.0.len() != g.reflection_classes().len() {
            return Err(Error::Invalid(format!(
                "c has {} values but {} has {} reflection classes",
                self.0.len(),
                g.descriptor,
                g.reflection_classes().len()
            )));
        }
        Ok(())
    }

    /// Value on each reflection, in reflection order.
    pub fn per_reflection(&self, g: &CoxeterRealization) -> Vec<Q> {
        g.reflections().iter().map(|r| self.0[r.class].clone()).collect()
    }

    /// `eps * c` for a linear character given by its signs on reflection classes.
    pub fn twisted(&self, signs: &[i8]) -> Self {
        Self(
            self.0
                .iter()
                .zip(signs)
                .map(|(c, &s)| if s < 0 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `r = (2 / l) * sum_s c_s eps(s)` for the trivial character.
    pub fn r_value(&self, g: &CoxeterRealization) -> Q {
        let total: Q = g
            .reflection_classes()
            .iter()
            .zip(&self.0)
            .map(|(cls, c)| c * int(cls.len() as i64))
            .fold(Q::zero(), |a, b| a + b);
        total * int(2) / int(g.rank() as i64)
    }
}

impl fmt::Display for CParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::exact::format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `p(C, tau) = |C| Tr(s, tau) / dim tau` for a reflection class `C`.
pub fn p_class(g: &CoxeterRealization, class: usize, tau: &WRep) -> Result<i64> {
    let refls = &g.reflection_classes()[class];
    let s = g.reflections()[refls[0]].element;
    let val = int(refls.len() as i64) * tau.trace(s) / int(tau.dim() as i64);
    crate::exact::to_i64(&val).ok_or_else(|| {
        Error::Invariant(format!("p(C,{}) = {val} is not an integer", tau.name()))
    })
}

/// Scalar by which `sum_{s in S} s` acts on an irreducible `tau`.
pub fn p_function(g: &CoxeterRealization, tau: &WRep) -> Result<i64> {
    (0..g.reflection_classes().len()).map(|c| p_class(g, c, tau)).sum()
}

/// Lowest eigenvalue of the Euler element on `M(tau)`:
/// `l/2 - sum_C c_C p(C, tau)`.
pub fn kappa(g: &CoxeterRealization, c: &CParameter, tau: &WRep) -> Result<Q> {
    c.validate(g)?;
    let mut k = Q::new(int(g.rank() as i64).to_integer(), 2.into());
    for (cls, cv) in c.0.iter().enumerate() {
        k -= cv * int(p_class(g, cls, tau)?);
    }
    Ok(k)
}

fn roots_by_hint(roots: &[(Vec<Q>, Vec<Q>, usize)], i: usize) -> Vec<Q> {
    roots[i].0.clone()
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// `I - a b^T`.
pub fn reflection_matrix(a: &[Q], b: &[Q]) -> Matrix<Q> {
    let n = a.len();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= &(&a[i] * &b[j]);
        }
    }
    m
}

/// Coefficients of `det(1 - t M)` via sums of principal minors.
pub fn char_poly_one_minus<F: Field>(m: &Matrix<F>) -> Vec<F> {
    let n = m.nrows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[0] = F::one();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = m.select_rows(&idx).select_columns(&idx).det();
        let k = idx.len();
        if k % 2 == 1 {
            coeffs[k] -= &minor;
        } else {
            coeffs[k] += &minor;
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn build(kind: CoxeterType, n: usize) -> CoxeterRealization {
        CoxeterRealization::build(kind, n).unwrap()
    }

    #[test]
    fn s3_facts() {
        let g = build(CoxeterType::A, 3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.reflections().len(), 3);
        assert_eq!(g.coxeter_number(), 3);
        assert_eq!(g.degrees(), &[2, 3]);
        assert_eq!(g.classes().len(), 3);
    }

    #[test]
    fn b2_reflection_classes() {
        let g = build(CoxeterType::B, 2);
        assert_eq!(g.order(), 8);
        assert_eq!(g.reflections().len(), 4);
        assert_eq!(g.reflection_classes().len(), 2);
        assert!(g.reflection_classes().iter().all(|c| c.len() == 2));
        assert_eq!(g.coxeter_number(), 4);
        assert_eq!(g.degrees(), &[2, 4]);
        // class 0 holds the long roots e_i +- e_j
        let r = &g.reflections()[g.reflection_classes()[0][0]];
        assert_eq!(r.root.iter().filter(|x| !x.is_zero()).count(), 2);
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(build(CoxeterType::D, 4).coxeter_number(), 6);
        assert_eq!(build(CoxeterType::D, 5).coxeter_number(), 8);
        assert_eq!(build(CoxeterType::B, 3).coxeter_number(), 6);
        assert_eq!(build(CoxeterType::A, 5).coxeter_number(), 5);
        assert_eq!(build(CoxeterType::I2, 6).order(), 12);
        assert_eq!(build(CoxeterType::I2, 4).reflection_classes().len(), 2);
        assert_eq!(build(CoxeterType::I2, 3).reflection_classes().len(), 1);
    }

    #[test]
    fn unsupported_groups() {
        assert!(matches!(
            CoxeterRealization::build(CoxeterType::I2, 5),
            Err(Error::Unsupported(_))
        ));
        assert!(CoxeterRealization::build(CoxeterType::A, 1).is_err());
        assert!(CoxeterRealization::build(CoxeterType::B, 9).is_err());
        assert!("E".parse::<CoxeterType>().is_err());
    }

    #[test]
    fn reflections_are_involutions_negating_their_root() {
        for (k, n) in [(CoxeterType::A, 4), (CoxeterType::B, 3), (CoxeterType::D, 4), (CoxeterType::I2, 6)] {
            let g = build(k, n);
            for r in g.reflections() {
                let m = g.element(r.element);
                assert_eq!(m.mul(m), Matrix::identity(g.rank()));
                // the root is a linear form; s(alpha) = -alpha
                assert_eq!(m.mul_vec(&r.root), r.root.iter().map(|x| -x.clone()).collect::<Vec<_>>());
                // s fixes the hyperplane <coroot, .> = 0 in h*: forms killed by the coroot
                let kernel = Matrix::from_rows(vec![r.coroot.clone()]).kernel_basis();
                for v in kernel {
                    assert_eq!(m.mul_vec(&v), v);
                }
            }
        }
    }

    #[test]
    fn reflection_classes_are_conjugation_closed() {
        let g = build(CoxeterType::B, 3);
        for w in [1, 5, 17, 40] {
            for r in g.reflections() {
                let conj = g.multiply(g.multiply(w, r.element), g.inverse(w));
                let other = g.reflections().iter().find(|x| x.element == conj).unwrap();
                assert_eq!(other.class, r.class);
            }
        }
    }

    #[test]
    fn fix_and_det_factor() {
        let g = build(CoxeterType::A, 4);
        assert_eq!(g.fix_dimension(0), 3);
        assert_eq!(g.det_factor(0), vec![int(1), int(-3), int(3), int(-1)]);
        let s = g.reflections()[0].element;
        assert_eq!(g.fix_dimension(s), 2);
        // (1-t)^2 (1+t) = 1 - t - t^2 + t^3
        assert_eq!(g.det_factor(s), vec![int(1), int(-1), int(-1), int(1)]);
        // a 4-cycle: det(1 - t w) = 1 + t + t^2 + t^3
        let cycle = (0..g.order())
            .find(|&w| g.fix_dimension(w) == 0 && g.det_factor(w) == vec![int(1); 4])
            .expect("4-cycle exists");
        assert_eq!(g.word(cycle).len(), 3);
    }

    #[test]
    fn kappa_values() {
        let g = build(CoxeterType::A, 3);
        let triv = WRep::trivial(&g);
        let c = CParameter::constant(&g, rat(1, 3));
        assert_eq!(kappa(&g, &c, &triv).unwrap(), int(0));
        let refl = WRep::exterior_power(&g, 1).unwrap();
        assert_eq!(p_function(&g, &refl).unwrap(), 0);
        assert_eq!(p_function(&g, &triv).unwrap(), 3);
    }

    #[test]
    fn r_value_for_constant_c() {
        let g = build(CoxeterType::B, 2);
        let c = CParameter::constant(&g, rat(3, 4));
        assert_eq!(c.r_value(&g), int(3));
        let c = CParameter::type_b(&g, rat(1, 2), int(1)).unwrap();
        assert_eq!(c.r_value(&g), int(3));
    }

    #[test]
    fn word_reconstructs_elements() {
        let g = build(CoxeterType::D, 4);
        for w in [0, 3, 77, 191] {
            let mut m = Matrix::identity(g.rank());
            for &k in &g.word(w) {
                m = m.mul(g.element(g.generators()[k]));
            }
            assert_eq!(&m, g.element(w));
        }
    }
}
