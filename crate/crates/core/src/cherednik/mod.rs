//! Standard modules `M(tau) = C[h] (x) tau` with `h` acting by Dunkl
//! operators, and everything computed from them: radicals, simple
//! quotients, singular vectors, spherical parts.
//!
//! A vector in degree `d` of `M(tau)` is a dense coordinate vector indexed
//! by `m * dim tau + u`, with `m` running over the degree-`d` monomials in
//! graded-lex order and `u` over a basis of `tau`.

mod family;
mod simple;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::coxeter::{kappa, CParameter, CoxeterRealization, WRep};
use crate::exact::{Field, Matrix};
use crate::polyspace::{MonomialTables, SparseCols};
use crate::{Error, Result, Q};

pub use family::{
    b4_example, b_line_parameter, check_n_module, d_family_check, DFamilyCheck, n_module_on_b_line, onedim_exists, quartic_shape_report, B4Example,
    NFamilyCheck, NModule, OneDimReport, QuarticShapeReport,
};
pub use simple::{
    gorenstein_check, simple_graded, singular_vectors, spherical_graded, GorensteinReport, SimpleOptions,
    SimpleModuleReport, SimpleRun, SingularSpace, Verdict,
};

/// How reflections share parameter values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grouping {
    /// One value per conjugacy class of reflections.
    Classes,
    /// One value per reflection; used to build deliberately non-invariant
    /// parameters.
    Reflections,
}

/// The `c`-independent pieces of the Dunkl operators on one degree:
/// `T_k = partial[k] - sum_G c_G refl[k][G]`.
#[derive(Debug)]
pub struct DunklLayer {
    pub degree: usize,
    pub partial: Vec<SparseCols<Q>>,
    pub refl: Vec<Vec<SparseCols<Q>>>,
}

struct GrowState {
    tables: MonomialTables,
    /// Scalar difference quotient of each reflection on the current top degree.
    quotients: Vec<SparseCols<Q>>,
    layers: Vec<Arc<DunklLayer>>,
    powers: HashMap<usize, Vec<Arc<Matrix<Q>>>>,
}

/// Dunkl data for one realization and one `tau`, grown lazily by degree
/// and shared across parameter values.
pub struct DunklData {
    rank: usize,
    tau_dim: usize,
    roots: Vec<Vec<Q>>,
    coroots: Vec<Vec<Q>>,
    reflection_matrices: Vec<Matrix<Q>>,
    tau_on_reflections: Vec<Matrix<Q>>,
    group_of: Vec<usize>,
    ngroups: usize,
    elements: Vec<Matrix<Q>>,
    state: Mutex<GrowState>,
}

impl DunklData {
    pub fn new(g: &CoxeterRealization, tau: &WRep, grouping: Grouping) -> Self {
        let refl = g.reflections();
        let group_of: Vec<usize> = match grouping {
            Grouping::Classes => refl.iter().map(|r| r.class).collect(),
            Grouping::Reflections => (0..refl.len()).collect(),
        };
        let ngroups = match grouping {
            Grouping::Classes => g.reflection_classes().len(),
            Grouping::Reflections => refl.len(),
        };
        let tables = MonomialTables::new(g.rank());
        Self {
            rank: g.rank(),
            tau_dim: tau.dim(),
            roots: refl.iter().map(|r| r.root.clone()).collect(),
            coroots: refl.iter().map(|r| r.coroot.clone()).collect(),
            reflection_matrices: refl.iter().map(|r| g.element(r.element).clone()).collect(),
            tau_on_reflections: refl.iter().map(|r| tau.matrix(r.element).clone()).collect(),
            group_of,
            ngroups,
            elements: g.elements().to_vec(),
            state: Mutex::new(GrowState {
                tables,
                quotients: Vec::new(),
                layers: Vec::new(),
                powers: HashMap::new(),
            }),
        }
    }

    /// Shared instance for the given realization, `tau` and grouping.
    pub fn cached(g: &CoxeterRealization, tau: &WRep, grouping: Grouping) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<DunklData>>>> = OnceLock::new();
        let roots: Vec<String> = g.reflections().iter().map(|r| format!("{:?}{:?}", r.root, r.coroot)).collect();
        let key = format!("{}|{}|{:?}|{}", g.descriptor, tau.name(), grouping, roots.join(";"));
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().expect("cache lock");
        map.entry(key).or_insert_with(|| Arc::new(Self::new(g, tau, grouping))).clone()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tau_dim(&self) -> usize {
        self.tau_dim
    }

    pub fn ngroups(&self) -> usize {
        self.ngroups
    }

    pub fn group_of(&self) -> &[usize] {
        &self.group_of
    }

    /// Number of monomials of degree `d`.
    pub fn monomial_count(&self, d: usize) -> usize {
        let mut st = self.state.lock().expect("dunkl lock");
        st.tables.ensure(d);
        st.tables.dim(d)
    }

    pub fn with_tables<R>(&self, d: usize, f: impl FnOnce(&MonomialTables) -> R) -> R {
        let mut st = self.state.lock().expect("dunkl lock");
        st.tables.ensure(d);
        f(&st.tables)
    }

    /// Matrix of the group element `w` on degree `d` polynomials.
    pub fn symmetric_power(&self, w: usize, d: usize) -> Arc<Matrix<Q>> {
        let mut st = self.state.lock().expect("dunkl lock");
        st.tables.ensure(d);
        let GrowState { tables, powers, .. } = &mut *st;
        let list = powers.entry(w).or_insert_with(|| vec![Arc::new(Matrix::identity(1))]);
        while list.len() <= d {
            let k = list.len();
            let next = tables.symmetric_power_step(&list[k - 1], &self.elements[w], k);
            list.push(Arc::new(next));
        }
        list[d].clone()
    }

    /// Dunkl pieces from degree `d` to `d - 1` (`d >= 1`).
    pub fn layer(&self, d: usize) -> Arc<DunklLayer> {
        assert!(d >= 1, "Dunkl operators start in degree one");
        let mut st = self.state.lock().expect("dunkl lock");
        while st.layers.len() < d {
            let next = st.layers.len() + 1;
            st.tables.ensure(next);
            let layer = self.grow(&mut st, next);
            st.layers.push(Arc::new(layer));
        }
        st.layers[d - 1].clone()
    }

    fn grow(&self, st: &mut GrowState, d: usize) -> DunklLayer {
        let t = &st.tables;
        let l = self.rank;
        // (f g - s(f g)) / a = Q(f) g + s(f) Q(g), applied with f = x_i
        let mut quotients = Vec::with_capacity(self.roots.len());
        for (s, b) in self.coroots.iter().enumerate() {
            let g = &self.reflection_matrices[s];
            let mut m = SparseCols::zeros(t.dim(d - 1), t.dim(d));
            for j in 0..t.dim(d) {
                let e = t.basis(d).monomial(j);
                let i = e.iter().position(|&k| k > 0).expect("positive degree");
                let parent = t.div_var(d, j, i).expect("divisible");
                let mut col: Vec<Q> = vec![Q::zero(); t.dim(d - 1)];
                col[parent] += &b[i];
                if d >= 2 {
                    for (u, v) in &st.quotients[s].cols[parent] {
                        for k in 0..l {
                            let gk = &g[(k, i)];
                            if !gk.is_zero() {
                                col[t.times_var(d - 2, *u, k)].add_mul(v, gk);
                            }
                        }
                    }
                }
                m.cols[j] = col.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            }
            quotients.push(m);
        }
        let ident = Matrix::identity(self.tau_dim);
        let partial: Vec<SparseCols<Q>> = (0..l)
            .map(|k| {
                let y = crate::coxeter::unit(l, k);
                t.partial_layer(&y, d).kron_dense(&ident)
            })
            .collect();
        let mut refl: Vec<Vec<SparseCols<Q>>> = (0..l)
            .map(|_| vec![SparseCols::zeros(t.dim(d - 1) * self.tau_dim, t.dim(d) * self.tau_dim); self.ngroups])
            .collect();
        for (s, q) in quotients.iter().enumerate() {
            let twisted = q.kron_dense(&self.tau_on_reflections[s]);
            for (k, row) in refl.iter_mut().enumerate() {
                let a = &self.roots[s][k];
                if !a.is_zero() {
                    row[self.group_of[s]].add_scaled(a, &twisted);
                }
            }
        }
        st.quotients = quotients;
        DunklLayer { degree: d, partial, refl }
    }
}

/// `M(tau)` at a fixed parameter, over the field `F`.
pub struct StandardModule<'g, F: Field> {
    g: &'g CoxeterRealization,
    tau: WRep,
    values: Vec<Q>,
    c: Option<CParameter>,
    data: Arc<DunklData>,
    dunkl: Vec<Arc<Vec<SparseCols<F>>>>,
}

impl<'g, F: Field> StandardModule<'g, F> {
    pub fn new(g: &'g CoxeterRealization, tau: &WRep, c: &CParameter) -> Result<Self> {
        c.validate(g)?;
        let data = DunklData::cached(g, tau, Grouping::Classes);
        Ok(Self { g, tau: tau.clone(), values: c.0.clone(), c: Some(c.clone()), data, dunkl: Vec::new() })
    }

    /// A module for a parameter given reflection by reflection. Relations
    /// only hold when the values are constant on classes.
    pub fn with_reflection_values(g: &'g CoxeterRealization, tau: &WRep, values: Vec<Q>) -> Result<Self> {
        if values.len() != g.reflections().len() {
            return Err(Error::Invalid("one value per reflection required".into()));
        }
        let data = Arc::new(DunklData::new(g, tau, Grouping::Reflections));
        Ok(Self { g, tau: tau.clone(), values, c: None, data, dunkl: Vec::new() })
    }

    /// Uses explicit (uncached) Dunkl data, e.g. for a rescaled realization.
    pub fn with_data(g: &'g CoxeterRealization, tau: &WRep, c: &CParameter, data: Arc<DunklData>) -> Result<Self> {
        c.validate(g)?;
        Ok(Self { g, tau: tau.clone(), values: c.0.clone(), c: Some(c.clone()), data, dunkl: Vec::new() })
    }

    pub fn group(&self) -> &'g CoxeterRealization {
        self.g
    }

    pub fn tau(&self) -> &WRep {
        &self.tau
    }

    pub fn parameter(&self) -> Option<&CParameter> {
        self.c.as_ref()
    }

    pub fn data(&self) -> &Arc<DunklData> {
        &self.data
    }

    /// Lowest eigenvalue of the Euler element (class-constant parameters only).
    pub fn kappa(&self) -> Result<Q> {
        let c = self.c.as_ref().ok_or_else(|| Error::Precondition("kappa needs a class function c".into()))?;
        kappa(self.g, c, &self.tau)
    }

    pub fn layer_dim(&self, d: usize) -> usize {
        self.data.monomial_count(d) * self.tau.dim()
    }

    fn to_f(q: &Q) -> Result<F> {
        Ok(F::from_rational(q)?)
    }

    /// The Dunkl operators `T_{y_1}, ..., T_{y_l}` from degree `d` to `d - 1`.
    pub fn dunkl(&mut self, d: usize) -> Result<Arc<Vec<SparseCols<F>>>> {
        assert!(d >= 1);
        while self.dunkl.len() < d {
            let next = self.dunkl.len() + 1;
            let layer = self.data.layer(next);
            let mut ops = Vec::with_capacity(layer.partial.len());
            for k in 0..layer.partial.len() {
                let mut t = layer.partial[k].clone();
                for (grp, r) in layer.refl[k].iter().enumerate() {
                    let c = &self.values[grp];
                    if !c.is_zero() {
                        t.add_scaled(&-c.clone(), r);
                    }
                }
                ops.push(t.try_map(Self::to_f)?);
            }
            self.dunkl.push(Arc::new(ops));
        }
        Ok(self.dunkl[d - 1].clone())
    }

    /// `T_y v` for `v` in degree `d`; degree zero is killed.
    pub fn dunkl_apply(&mut self, y: &[F], v: &[F], d: usize) -> Result<Vec<F>> {
        if d == 0 {
            return Ok(Vec::new());
        }
        let ops = self.dunkl(d)?;
        let mut out = vec![F::zero(); self.layer_dim(d - 1)];
        for (k, yk) in y.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(ops[k].apply(v)) {
                o.add_mul(yk, &x);
            }
        }
        Ok(out)
    }

    /// Matrix of `w` on degree `d` of `M(tau)`.
    pub fn layer_action(&self, w: usize, d: usize) -> Result<Matrix<F>> {
        let s = self.data.symmetric_power(w, d);
        Ok(s.kron(self.tau.matrix(w)).try_map(Self::to_f)?)
    }

    pub fn layer_action_sparse(&self, w: usize, d: usize) -> Result<SparseCols<F>> {
        let s = self.data.symmetric_power(w, d);
        Ok(SparseCols::from_dense(&s).kron_dense(self.tau.matrix(w)).try_map(Self::to_f)?)
    }

    /// Multiplication by `x_j` from degree `d` to `d + 1`.
    pub fn multiplication(&self, j: usize, d: usize) -> Result<SparseCols<F>> {
        let l = self.g.rank();
        let x = crate::coxeter::unit(l, j);
        let m = self.data.with_tables(d + 1, |t| t.multiply_layer(&x, d));
        Ok(m.kron_dense(&Matrix::identity(self.tau.dim())).try_map(Self::to_f)?)
    }

    /// Verifies the defining relations on degree `d`: commuting Dunkl
    /// operators (into degree `d - 2`), the `[y, x]` relation on degree
    /// `d - 1`, and `w T_y w^-1 = T_{w(y)}` on degree `d` for the generators.
    pub fn check_relations(&mut self, d: usize) -> Result<RelationReport> {
        let mut failures = Vec::new();
        let l = self.g.rank();
        if d == 0 {
            return Ok(RelationReport { degree: d, failures });
        }
        let top = self.dunkl(d)?;
        if d >= 2 {
            let below = self.dunkl(d - 1)?;
            for i in 0..l {
                for j in i + 1..l {
                    let a = compose(&below[i], &top[j]);
                    let b = compose(&below[j], &top[i]);
                    if let Some(col) = first_difference(&a, &b) {
                        failures.push(format!("[T_{}, T_{}] != 0 on degree {d}, basis vector {col}", i + 1, j + 1));
                    }
                }
            }
        }
        // [T_k, x_j] on degree d - 1
        let refl = self.g.reflections();
        let reflection_actions: Vec<Matrix<F>> =
            refl.iter().map(|r| self.layer_action(r.element, d - 1)).collect::<Result<_>>()?;
        let n = self.layer_dim(d - 1);
        for k in 0..l {
            for j in 0..l {
                let xj = self.multiplication(j, d - 1)?;
                let mut lhs = compose(&top[k], &xj).to_dense();
                if d >= 2 {
                    let xj_low = self.multiplication(j, d - 2)?;
                    let below = self.dunkl(d - 1)?;
                    lhs = lhs.sub(&compose(&xj_low, &below[k]).to_dense());
                }
                let mut rhs = if j == k { Matrix::identity(n) } else { Matrix::zeros(n, n) };
                for (s, r) in refl.iter().enumerate() {
                    let coef = self.reflection_value(s) * &r.root[k] * &r.coroot[j];
                    if !coef.is_zero() {
                        rhs.add_scaled(&-Self::to_f(&coef)?, &reflection_actions[s]);
                    }
                }
                if let Some(col) = first_difference(&SparseCols::from_dense(&lhs), &SparseCols::from_dense(&rhs)) {
                    failures.push(format!("[y_{}, x_{}] relation fails on degree {}, basis vector {col}", k + 1, j + 1, d - 1));
                }
            }
        }
        // equivariance
        for &w in self.g.generators() {
            let ginv = self.g.element(w).inverse().ok_or_else(|| Error::Invariant("singular group element".into()))?;
            let low = self.layer_action_sparse(w, d - 1)?;
            let high = self.layer_action_sparse(w, d)?;
            for k in 0..l {
                let lhs = compose(&low, &top[k]);
                let mut comb = SparseCols::zeros(top[0].nrows, top[0].ncols());
                for j in 0..l {
                    comb.add_scaled(&Self::to_f(&ginv[(k, j)])?, &top[j]);
                }
                let rhs = compose(&comb, &high);
                if let Some(col) = first_difference(&lhs, &rhs) {
                    failures.push(format!(
                        "W-equivariance fails for generator {w} and y_{} on degree {d}, basis vector {col}",
                        k + 1
                    ));
                }
            }
        }
        Ok(RelationReport { degree: d, failures })
    }

    fn reflection_value(&self, s: usize) -> Q {
        self.values[self.data.group_of()[s]].clone()
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationReport {
    pub degree: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `a o b` for sparse maps.
pub fn compose<F: Field>(a: &SparseCols<F>, b: &SparseCols<F>) -> SparseCols<F> {
    assert_eq!(a.ncols(), b.nrows);
    let cols = b
        .cols
        .iter()
        .map(|col| {
            let mut acc = vec![F::zero(); a.nrows];
            for (i, v) in col {
                for (r, x) in &a.cols[*i] {
                    acc[*r].add_mul(x, v);
                }
            }
            acc.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
        })
        .collect();
    SparseCols { nrows: a.nrows, cols }
}

fn first_difference<F: Field>(a: &SparseCols<F>, b: &SparseCols<F>) -> Option<usize> {
    a.cols.iter().zip(&b.cols).position(|(x, y)| x != y)
}

#[cfg(test)]
mod tests;
