//! The radical recursion `J_d = {v : T_y v in J_(d-1) for all y}` and what
//! is read off from it.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::StandardModule;
use crate::chars::CharacterSeries;
use crate::coxeter::{CParameter, CoxeterRealization, WRep};
use crate::exact::{int, Echelon, Field, Fp, Matrix, RowReducer};
use crate::polyspace::SparseCols;
use crate::{Error, Result, Q};

/// Layers wider than this are not attempted over the rationals.
pub const MAX_EXACT_LAYER: usize = 6000;

#[derive(Clone, Debug)]
pub struct SimpleOptions {
    pub bound: usize,
    /// Compute per-class traces (exact runs only).
    pub traces: bool,
    /// When non-finiteness is certified modulo a prime, still compute the
    /// graded dimensions there (lower bounds for the true ones).
    pub fp_dims: bool,
    /// Assert that every `J_d` is stable under the generators.
    pub check_stability: bool,
}

impl SimpleOptions {
    /// Bound `max(l * (numerator(r) - 1) + 4, 24)`.
    pub fn default_for(g: &CoxeterRealization, c: &CParameter) -> Self {
        let r = c.r_value(g);
        let num = r.numer().abs();
        let num: usize = num.try_into().unwrap_or(1usize).max(1);
        Self::with_bound((g.rank() * (num - 1) + 4).max(24))
    }

    pub fn with_bound(bound: usize) -> Self {
        Self { bound, traces: true, fp_dims: false, check_stability: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Finite { total: usize, top_degree: usize },
    NotFiniteUpTo { bound: usize },
    Inconclusive { reason: String },
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Finite { total, top_degree } => write!(f, "finite, dim {total}, top degree {top_degree}"),
            Verdict::NotFiniteUpTo { bound } => write!(f, "not finite up to bound {bound}"),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleModuleReport {
    pub group: String,
    pub tau: String,
    pub c: String,
    #[serde(serialize_with = "crate::chars::ser_rational")]
    pub kappa: Q,
    pub graded_dims: Vec<usize>,
    /// False when the dimensions were computed modulo a prime and are only
    /// lower bounds.
    pub dims_exact: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<CharacterSeries>,
}

impl SimpleModuleReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, Verdict::Finite { .. })
    }

    pub fn total_dim(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Finite { total, .. } => Some(total),
            _ => None,
        }
    }
}

/// Quotient maps `pi_d : M_d -> L_d` (rows of an echelon form) for each
/// computed degree.
pub struct SimpleRun<F> {
    pub pis: Vec<Echelon<F>>,
    pub dims: Vec<usize>,
    /// First degree with `L_d = 0`, if reached.
    pub zero_at: Option<usize>,
}

pub(crate) fn row_times<F: Field>(row: &[F], t: &SparseCols<F>) -> Vec<F> {
    t.cols
        .iter()
        .map(|col| {
            let mut acc = F::zero();
            for (i, v) in col {
                acc.add_mul(&row[*i], v);
            }
            acc
        })
        .collect()
}

impl<'g, F: Field> StandardModule<'g, F> {
    /// Runs the radical recursion up to `bound`, stopping at the first
    /// zero layer.
    pub fn simple_run(&mut self, bound: usize, check_stability: bool) -> Result<SimpleRun<F>> {
        let t0 = self.tau().dim();
        let mut pis = vec![Matrix::<F>::identity(t0).rref()];
        let mut dims = vec![t0];
        let mut zero_at = None;
        for d in 1..=bound {
            let ops = self.dunkl(d)?;
            let n = self.layer_dim(d);
            let mut red = RowReducer::new(n);
            'fill: for t in ops.iter() {
                for row in &pis[d - 1].rows {
                    red.insert(row_times(row, t));
                    if red.is_full() {
                        break 'fill;
                    }
                }
            }
            let e = red.into_echelon();
            if check_stability {
                self.assert_stable(&e, d)?;
            }
            dims.push(e.rank());
            let done = e.rank() == 0;
            pis.push(e);
            if done {
                zero_at = Some(d);
                break;
            }
        }
        Ok(SimpleRun { pis, dims, zero_at })
    }

    pub(crate) fn assert_stable(&self, e: &Echelon<F>, d: usize) -> Result<()> {
        if e.rank() == 0 || e.rank() == e.cols {
            return Ok(());
        }
        for &w in self.group().generators() {
            let act = self.layer_action_sparse(w, d)?;
            for row in &e.rows {
                let mut p = row_times(row, &act);
                // subtract the expansion in the rows of e
                let coeffs: Vec<F> = e.pivots.iter().map(|&c| p[c].clone()).collect();
                for (c, r) in coeffs.iter().zip(&e.rows) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in p.iter_mut().zip(r) {
                        if !y.is_zero() {
                            *x -= &c.mul_ref(y);
                        }
                    }
                }
                if p.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invariant(format!("radical in degree {d} is not stable under generator {w}")));
                }
            }
        }
        Ok(())
    }

    /// Trace of `w` on `L_d = M_d / J_d`.
    pub fn quotient_trace(&self, e: &Echelon<F>, w: usize, d: usize) -> Result<F> {
        if e.rank() == 0 {
            return Ok(F::zero());
        }
        let act = self.layer_action_sparse(w, d)?;
        let mut tr = F::zero();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            for (i, v) in &act.cols[p] {
                tr.add_mul(&row[*i], v);
            }
        }
        Ok(tr)
    }

    /// Whether some `T_y^bound` is nonzero on degree `bound`, for a few
    /// fixed directions `y`. A `true` proves `L_bound != 0`.
    pub fn lowering_is_nonzero(&mut self, bound: usize) -> Result<bool> {
        let l = self.group().rank();
        for trial in 0..3u64 {
            let y: Vec<F> = (0..l as u64).map(|k| F::from_i64(((17 + 6 * trial).pow(k as u32 + 1) % 101 + 1) as i64)).collect();
            for u in 0..self.tau().dim() {
                let mut phi = vec![F::zero(); self.tau().dim()];
                phi[u] = F::one();
                for d in 1..=bound {
                    let ops = self.dunkl(d)?;
                    let mut next = vec![F::zero(); self.layer_dim(d)];
                    for (k, t) in ops.iter().enumerate() {
                        for (x, v) in next.iter_mut().zip(row_times(&phi, t)) {
                            x.add_mul(&y[k], &v);
                        }
                    }
                    phi = next;
                }
                if phi.iter().any(|x| !x.is_zero()) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Graded dimensions (and traces) of `L(tau)` up to `opts.bound`.
///
/// Non-finiteness is first tested modulo a prime, where a nonzero iterated
/// Dunkl lowering certifies `L_bound != 0` over the rationals as well.
/// Everything else is computed exactly.
pub fn simple_graded(g: &CoxeterRealization, tau: &WRep, c: &CParameter, opts: &SimpleOptions) -> Result<SimpleModuleReport> {
    let kappa = crate::coxeter::kappa(g, c, tau)?;
    let mut report = SimpleModuleReport {
        group: g.descriptor.to_string(),
        tau: tau.name(),
        c: c.to_string(),
        kappa,
        graded_dims: Vec::new(),
        dims_exact: true,
        verdict: Verdict::Inconclusive { reason: "not run".into() },
        traces: None,
    };
    let mut mp = StandardModule::<Fp>::new(g, tau, c)?;
    if mp.lowering_is_nonzero(opts.bound)? {
        report.verdict = Verdict::NotFiniteUpTo { bound: opts.bound };
        report.dims_exact = false;
        if opts.fp_dims {
            report.graded_dims = mp.simple_run(opts.bound, false)?.dims;
        }
        return Ok(report);
    }
    let mut mq = StandardModule::<Q>::new(g, tau, c)?;
    let run = mq.simple_run(opts.bound, opts.check_stability)?;
    if run.zero_at.is_none() && mq.layer_dim(opts.bound) > MAX_EXACT_LAYER {
        return Err(Error::Bound(format!("layer {} too large for an exact run", opts.bound)));
    }
    let mut dims = run.dims.clone();
    dims.resize(opts.bound + 1, 0);
    report.graded_dims = dims;
    report.verdict = match run.zero_at {
        Some(z) => Verdict::Finite { total: run.dims.iter().sum(), top_degree: z - 1 },
        None => Verdict::NotFiniteUpTo { bound: opts.bound },
    };
    if opts.traces {
        let mut coeffs = vec![vec![Q::zero(); opts.bound + 1]; g.classes().len()];
        for (ci, cls) in g.classes().iter().enumerate() {
            for (d, e) in run.pis.iter().enumerate() {
                coeffs[ci][d] = mq.quotient_trace(e, cls.representative, d)?;
            }
        }
        report.traces = Some(CharacterSeries::new(report.kappa.clone(), coeffs));
    }
    Ok(report)
}

/// Graded dimensions of the `W`-invariants of `L(tau)`, from its traces.
pub fn spherical_graded(g: &CoxeterRealization, report: &SimpleModuleReport) -> Result<Vec<usize>> {
    let traces = report
        .traces
        .as_ref()
        .ok_or_else(|| Error::Precondition("spherical dimensions need exact traces".into()))?;
    let order = int(g.order() as i64);
    (0..traces.len())
        .map(|d| {
            let mut s = Q::zero();
            for (ci, cls) in g.classes().iter().enumerate() {
                s += &(int(cls.size as i64) * &traces.coeffs[ci][d]);
            }
            let v = s / &order;
            crate::exact::to_i64(&v)
                .and_then(|x| usize::try_from(x).ok())
                .ok_or_else(|| Error::Invariant(format!("invariant dimension {v} in degree {d}")))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularSpace<F> {
    pub degree: usize,
    pub basis: Vec<Vec<F>>,
    /// Trace on the space, one value per conjugacy class.
    pub traces: Vec<F>,
}

impl<F> SingularSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Stacked Dunkl operators on degree `d` as a dense matrix.
pub(crate) fn stacked_dunkl<F: Field>(m: &mut StandardModule<'_, F>, d: usize) -> Result<Matrix<F>> {
    let ops = m.dunkl(d)?;
    let parts: Vec<Matrix<F>> = ops.iter().map(|t| t.to_dense()).collect();
    Ok(Matrix::vstack(&parts))
}

/// Trace of `w` on the span of a kernel-style basis (one vector per free
/// column, equal to one there and zero on the other free columns).
pub(crate) fn kernel_trace<F: Field>(act: &SparseCols<F>, basis: &[Vec<F>], free: &[usize]) -> F {
    let mut tr = F::zero();
    for (v, &f) in basis.iter().zip(free) {
        // row f of act times v
        let mut acc = F::zero();
        for (j, col) in act.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                if *i == f {
                    acc.add_mul(a, &v[j]);
                }
            }
        }
        tr += &acc;
    }
    tr
}

/// Vectors of degree `d` killed by every Dunkl operator.
pub fn singular_vectors<F: Field>(m: &mut StandardModule<'_, F>, d: usize) -> Result<SingularSpace<F>> {
    if d == 0 {
        return Err(Error::Precondition("singular vectors live in positive degree".into()));
    }
    let e = stacked_dunkl(m, d)?.rref();
    let free = e.free_columns();
    let basis = e.kernel_basis();
    let mut traces = Vec::new();
    for cls in m.group().classes() {
        let act = m.layer_action_sparse(cls.representative, d)?;
        traces.push(kernel_trace(&act, &basis, &free));
    }
    Ok(SingularSpace { degree: d, basis, traces })
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinReport {
    pub passed: bool,
    pub graded_dims: Vec<usize>,
    pub top_degree: usize,
    pub detail: String,
}

/// Checks that the finite-dimensional `L(triv) = C[h]/I` has a
/// one-dimensional top degree and perfect multiplication pairings into it.
pub fn gorenstein_check(g: &CoxeterRealization, c: &CParameter, bound: usize) -> Result<GorensteinReport> {
    let triv = WRep::trivial(g);
    let mut m = StandardModule::<Q>::new(g, &triv, c)?;
    let run = m.simple_run(bound, false)?;
    let zero = run
        .zero_at
        .ok_or_else(|| Error::Precondition(format!("L(triv) at c={c} is not finite up to degree {bound}")))?;
    let top = zero - 1;
    let dims = run.dims[..zero].to_vec();
    if dims[top] != 1 {
        return Ok(GorensteinReport {
            passed: false,
            graded_dims: dims.clone(),
            top_degree: top,
            detail: format!("top degree has dimension {}", dims[top]),
        });
    }
    let socle = &run.pis[top].rows[0];
    m.data().with_tables(top, |t| {
        for d in 0..=top {
            let (a, b) = (&run.pis[d].pivots, &run.pis[top - d].pivots);
            let mut pairing = Matrix::<Q>::zeros(a.len(), b.len());
            for (i, &mi) in a.iter().enumerate() {
                for (j, &mj) in b.iter().enumerate() {
                    pairing[(i, j)] = socle[t.product_index(d, mi, top - d, mj)].clone();
                }
            }
            let rank = pairing.rank();
            if rank != a.len() || rank != b.len() {
                return Ok(GorensteinReport {
                    passed: false,
                    graded_dims: dims.clone(),
                    top_degree: top,
                    detail: format!("pairing of degrees {d} and {} has rank {rank}", top - d),
                });
            }
        }
        Ok(GorensteinReport {
            passed: true,
            graded_dims: dims.clone(),
            top_degree: top,
            detail: "all pairings perfect".into(),
        })
    })
}

