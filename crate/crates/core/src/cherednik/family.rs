//! Modules attached to special parameter lines: the one-dimensional
//! representation, and the quotients `N(triv)` along the type `B_n` lines
//! `(n - 1) c_1 + c_2 = (2k + 1) / 2`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::simple::{kernel_trace, row_times, simple_graded, stacked_dunkl, SimpleModuleReport, SimpleOptions};
use super::StandardModule;
use crate::chars::{a1_product_character, b_family_character, simple_char_closed_form, CharacterSeries};
use crate::coxeter::{kappa, CParameter, CoxeterRealization, CoxeterType, WRep};
use crate::exact::{format_rational, int, rat, Echelon, Matrix, RowReducer};
use crate::polyspace::SparseCols;
use crate::{Error, Result, Q};

#[derive(Clone, Debug, Serialize)]
pub struct OneDimReport {
    /// `2 sum_s c_s = l`.
    pub equation: bool,
    /// `sum_s c_s a_s b_s^T = I`, i.e. the relation `[y, x]` holds with
    /// `x = y = 0` and `w = 1`.
    pub relations_hold: bool,
}

/// Whether the one-dimensional module with `W` acting trivially exists.
pub fn onedim_exists(g: &CoxeterRealization, c: &CParameter) -> Result<OneDimReport> {
    c.validate(g)?;
    let vals = c.per_reflection(g);
    let total = vals.iter().fold(Q::zero(), |a, b| a + b);
    let equation = total * int(2) == int(g.rank() as i64);
    let l = g.rank();
    let mut m = Matrix::<Q>::identity(l);
    for (r, cv) in g.reflections().iter().zip(&vals) {
        for k in 0..l {
            for j in 0..l {
                m[(k, j)] -= &(cv * &r.root[k] * &r.coroot[j]);
            }
        }
    }
    Ok(OneDimReport { equation, relations_hold: m.is_zero() })
}

/// `N(triv)` at one point of a type `B_n` line: the flat limit of the
/// simple modules `L(triv)` at nearby points of the line. At generic points
/// this is `L(triv)` itself.
#[derive(Clone, Debug, Serialize)]
pub struct NModule {
    pub group: String,
    pub k: usize,
    pub c: String,
    /// Largest power of the line parameter that had to be divided out
    /// while saturating; zero exactly when `N` agrees with `L` here.
    pub limit_order: usize,
    pub graded_dims: Vec<usize>,
    pub traces: CharacterSeries,
    /// Quotient maps `M_d -> N_d` as echelon rows.
    #[serde(skip)]
    pub quotient: Vec<Echelon<Q>>,
}

impl NModule {
    pub fn total_dim(&self) -> usize {
        self.graded_dims.iter().sum()
    }
}

/// Parameter `(u, (2k+1)/2 - (n-1) u)` on `B_n`.
pub fn b_line_parameter(g: &CoxeterRealization, k: usize, u: &Q) -> Result<CParameter> {
    let n = g.rank() as i64;
    CParameter::type_b(g, u.clone(), rat(2 * k as i64 + 1, 2) - int(n - 1) * u)
}

/// A row vector over `Q[[e]]`, truncated: `coeffs[p]` is the coefficient of
/// `e^p`, known for `p < coeffs.len()`.
type SeriesRow = Vec<Vec<Q>>;

/// `r(e) (T0 + e T1)`.
fn series_times(r: &SeriesRow, t0: &SparseCols<Q>, t1: &SparseCols<Q>) -> SeriesRow {
    (0..r.len())
        .map(|p| {
            let mut v = row_times(&r[p], t0);
            if p > 0 {
                for (x, y) in v.iter_mut().zip(row_times(&r[p - 1], t1)) {
                    *x += y;
                }
            }
            v
        })
        .collect()
}

/// Saturated basis of the `Q((e))`-span of `rows`: `target` series rows
/// whose constant terms are independent and span the limit at `e = 0`.
fn saturate(rows: &[SeriesRow], cols: usize, target: usize) -> Result<(Vec<SeriesRow>, usize)> {
    let mut red = RowReducer::new(cols);
    let mut out = Vec::new();
    if target == 0 {
        return Ok((out, 0));
    }
    let prec = rows.iter().map(|r| r.len()).min().unwrap_or(0);
    for j in 0..prec {
        // combinations sum_{i,q<=j} e^q a_iq r_i vanishing below e^j
        let unknowns = rows.len() * (j + 1);
        let combos: Vec<Vec<Q>> = if j == 0 {
            (0..rows.len())
                .map(|i| {
                    let mut a = vec![Q::zero(); unknowns];
                    a[i] = Q::one();
                    a
                })
                .collect()
        } else {
            let mut c = Matrix::<Q>::zeros(j * cols, unknowns);
            for (i, r) in rows.iter().enumerate() {
                for q in 0..=j {
                    for p in q..j {
                        for (col, x) in r[p - q].iter().enumerate() {
                            if !x.is_zero() {
                                c[(p * cols + col, i * (j + 1) + q)] = x.clone();
                            }
                        }
                    }
                }
            }
            c.kernel_basis()
        };
        let col_of = |i: usize, q: usize| if j == 0 { i } else { i * (j + 1) + q };
        for a in combos {
            let shifted: SeriesRow = (j..prec)
                .map(|p| {
                    let mut v = vec![Q::zero(); cols];
                    for (i, r) in rows.iter().enumerate() {
                        for q in 0..=j.min(p) {
                            let coef = &a[col_of(i, q)];
                            if coef.is_zero() || (j == 0 && q > 0) {
                                continue;
                            }
                            for (x, y) in v.iter_mut().zip(&r[p - q]) {
                                if !y.is_zero() {
                                    *x += &(coef * y);
                                }
                            }
                        }
                    }
                    v
                })
                .collect();
            if red.insert(shifted[0].clone()) {
                out.push(shifted);
                if out.len() == target {
                    return Ok((out, j));
                }
            }
        }
    }
    Err(Error::Bound(format!("series precision {prec} too small to saturate to rank {target}")))
}

fn sparse_trace(act: &SparseCols<Q>) -> Q {
    act.cols
        .iter()
        .enumerate()
        .filter_map(|(j, col)| col.iter().find(|(i, _)| *i == j).map(|x| x.1.clone()))
        .fold(Q::zero(), |a, b| a + b)
}

pub fn n_module_on_b_line(g: &CoxeterRealization, k: usize, u: &Q) -> Result<NModule> {
    if g.descriptor.kind != CoxeterType::B {
        return Err(Error::Unsupported("N(triv) lines are defined for type B".into()));
    }
    let n = g.rank();
    let triv = WRep::trivial(g);
    let c = b_line_parameter(g, k, u)?;
    let top = 2 * k * n + 1;
    // generic ranks from two nearby points
    let mut generic = vec![0usize; top + 1];
    for d in [rat(1, 97), rat(-2, 89)] {
        let mut m = StandardModule::<Q>::new(g, &triv, &b_line_parameter(g, k, &(u + d))?)?;
        let run = m.simple_run(top, false)?;
        for (gd, &x) in generic.iter_mut().zip(&run.dims) {
            *gd = (*gd).max(x);
        }
    }
    if generic[top] != 0 {
        return Err(Error::Invariant(format!("L(triv) near c={c} is not finite by degree {top}")));
    }
    let mut m0 = StandardModule::<Q>::new(g, &triv, &c)?;
    let mut m1 = StandardModule::<Q>::new(g, &triv, &b_line_parameter(g, k, &(u + Q::one()))?)?;
    let prec = 4 * top + 8;
    let mut rows: Vec<SeriesRow> = vec![{
        let mut r = vec![vec![Q::zero()]; prec];
        r[0][0] = Q::one();
        r
    }];
    let mut quotient = vec![Matrix::<Q>::identity(1).rref()];
    let mut dims = vec![1usize];
    let mut limit_order = 0;
    for d in 1..=top {
        let (t0, t1) = (m0.dunkl(d)?, m1.dunkl(d)?);
        let nd = m0.layer_dim(d);
        let mut candidates = Vec::new();
        for (a, b) in t0.iter().zip(t1.iter()) {
            let mut diff = b.clone();
            diff.add_scaled(&-Q::one(), a);
            for r in &rows {
                candidates.push(series_times(r, a, &diff));
            }
        }
        let (next, order) = saturate(&candidates, nd, generic[d])?;
        limit_order = limit_order.max(order);
        let mut red = RowReducer::new(nd);
        for r in &next {
            red.insert(r[0].clone());
        }
        let e = red.into_echelon();
        m0.assert_stable(&e, d)?;
        dims.push(e.rank());
        quotient.push(e);
        rows = next;
    }
    let mut coeffs = vec![vec![Q::zero(); top + 1]; g.classes().len()];
    for (ci, cls) in g.classes().iter().enumerate() {
        for d in 0..=top {
            coeffs[ci][d] = m0.quotient_trace(&quotient[d], cls.representative, d)?;
        }
    }
    let offset = kappa(g, &c, &triv)?;
    Ok(NModule {
        group: g.descriptor.to_string(),
        k,
        c: c.to_string(),
        limit_order,
        graded_dims: dims,
        traces: CharacterSeries::new(offset, coeffs),
        quotient,
    })
}

/// Comparison of one `N(triv)` against the closed form (and, at `c_1 = 0`,
/// against the product of rank-one modules).
#[derive(Clone, Debug, Serialize)]
pub struct NFamilyCheck {
    pub module: NModule,
    pub expected_dim: usize,
    pub charfor: std::result::Result<(), String>,
    pub product_oracle: Option<std::result::Result<(), String>>,
}

pub fn check_n_module(g: &CoxeterRealization, k: usize, u: &Q) -> Result<NFamilyCheck> {
    let module = n_module_on_b_line(g, k, u)?;
    let len = module.graded_dims.len();
    let closed = b_family_character(g, k, len);
    let charfor = module.traces.compare(&closed);
    let product_oracle = if u.is_zero() { Some(module.traces.compare(&a1_product_character(g, k, len)?)) } else { None };
    Ok(NFamilyCheck { expected_dim: (2 * k + 1).pow(g.rank() as u32), module, charfor, product_oracle })
}

#[derive(Clone, Debug, Serialize)]
pub struct B4Example {
    pub n_module: NModule,
    pub n_expected_dims: Vec<usize>,
    pub singular_dim_in_n: usize,
    pub singular_traces: Vec<String>,
    pub expected_traces: Vec<String>,
    pub products_are_singular: bool,
    pub kappa_shift: String,
    pub l_triv: SimpleModuleReport,
    pub l_twisted: SimpleModuleReport,
    /// `char N = char L(triv) + t^shift char L(h (x) eps)` class by class.
    pub sequence_consistent: std::result::Result<(), String>,
}

/// `B_4` at `(c_1, c_2) = (1/2, 0)`.
pub fn b4_example() -> Result<B4Example> {
    let g = CoxeterRealization::build(CoxeterType::B, 4)?;
    let half = rat(1, 2);
    let n_module = n_module_on_b_line(&g, 1, &half)?;
    let c = CParameter::type_b(&g, half.clone(), Q::zero())?;
    let triv = WRep::trivial(&g);
    let twisted = WRep::reflection(&g).twist(&g, &[1, -1])?;

    // singular vectors of N in degree 3: the kernel in M_3 modulo I_3
    let mut m = StandardModule::<Q>::new(&g, &triv, &c)?;
    let ker = stacked_dunkl(&mut m, 3)?.rref();
    let free = ker.free_columns();
    let basis = ker.kernel_basis();
    let q3 = &n_module.quotient[3];
    let mut singular_traces = Vec::new();
    let mut expected_traces = Vec::new();
    for cls in g.classes() {
        let act = m.layer_action_sparse(cls.representative, 3)?;
        // the limit ideal in degree 3 sits inside the kernel
        let ideal_trace = sparse_trace(&act) - m.quotient_trace(q3, cls.representative, 3)?;
        let t = kernel_trace(&act, &basis, &free) - ideal_trace;
        singular_traces.push(format_rational(&t));
        expected_traces.push(format_rational(&twisted.trace(cls.representative)));
    }
    let singular_dim_in_n = basis.len() - (q3.cols - q3.rank());
    // f_i = prod_{j != i} x_j
    let mut products_are_singular = true;
    let ops = m.dunkl(3)?;
    m.data().with_tables(3, |t| {
        for i in 0..4 {
            let e: Vec<u32> = (0..4).map(|j| u32::from(j != i)).collect();
            let idx = t.basis(3).index(&e).expect("cubic monomial");
            let mut v = vec![Q::zero(); t.dim(3)];
            v[idx] = Q::one();
            if ops.iter().any(|op| op.apply(&v).iter().any(|x| !x.is_zero())) {
                products_are_singular = false;
            }
        }
    });

    let opts = SimpleOptions::with_bound(12);
    let l_triv = simple_graded(&g, &triv, &c, &opts)?;
    let l_twisted = simple_graded(&g, &twisted, &c, &opts)?;
    let shift = kappa(&g, &c, &twisted)? - kappa(&g, &c, &triv)?;
    let sequence_consistent = match (&l_triv.traces, &l_twisted.traces) {
        // the offsets already carry the shift
        (Some(a), Some(b)) => a.combine(b, 1).map_err(|e| e.to_string()).and_then(|sum| sum.compare(&n_module.traces)),
        _ => Err("missing traces".into()),
    };
    let n_expected_dims = vec![1, 4, 10, 16, 19, 16, 10, 4, 1];
    Ok(B4Example {
        n_module,
        n_expected_dims,
        singular_dim_in_n,
        singular_traces,
        expected_traces,
        products_are_singular,
        kappa_shift: format_rational(&shift),
        l_triv,
        l_twisted,
        sequence_consistent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticShapeReport {
    pub c: String,
    pub singular_dim: usize,
    /// Span of the partials of `c_1 (sum_{i<=4} x_i^2)^2 - sum_{i<=4} x_i^4`.
    pub matches_full_sum: bool,
    /// Same with both sums stopping at `i = 3`.
    pub matches_three_term_sum: bool,
    /// The partials for `a = c_1` and full sums are singular (containment
    /// only; the singular space may be larger at special points).
    pub partials_singular: bool,
    /// The value of `a` making the four-variable quartic fit, if any.
    pub fitted_a: Option<String>,
}

/// Compares the degree-3 singular space of `M(triv)` for `B_4` at a point of
/// the line `3 c_1 + c_2 = 3/2` with the partials of the quartic
/// `a (sum x_i^2)^2 - sum x_i^4`.
pub fn quartic_shape_report(c1: &Q) -> Result<QuarticShapeReport> {
    let g = CoxeterRealization::build(CoxeterType::B, 4)?;
    let c = b_line_parameter(&g, 1, c1)?;
    let triv = WRep::trivial(&g);
    let mut m = StandardModule::<Q>::new(&g, &triv, &c)?;
    let ker = stacked_dunkl(&mut m, 3)?.rref();
    let mut space = RowReducer::new(ker.cols);
    for v in ker.kernel_basis() {
        space.insert(v);
    }
    let space = space.into_echelon();
    let singular_dim = space.rank();
    // partials of (sum_{i<vars} x_i^2)^2 and sum_{i<vars} x_i^4
    let partials = |vars: usize| -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
        m.data().with_tables(3, |t| {
            let b = t.basis(3);
            let mut p = Vec::new();
            let mut q = Vec::new();
            for i in 0..4 {
                let mut vp = vec![Q::zero(); b.len()];
                let mut vq = vec![Q::zero(); b.len()];
                if i < vars {
                    // d_i (sum x^2)^2 = 4 x_i sum_j x_j^2
                    for j in 0..vars {
                        let mut e = vec![0u32; 4];
                        e[i] += 1;
                        e[j] += 2;
                        vp[b.index(&e).expect("cubic")] += int(4);
                    }
                    let mut e = vec![0u32; 4];
                    e[i] = 3;
                    vq[b.index(&e).expect("cubic")] += int(4);
                }
                p.push(vp);
                q.push(vq);
            }
            (p, q)
        })
    };
    let spans = |a: &Q, vars: usize| -> bool {
        let (p, q) = partials(vars);
        let mut red = RowReducer::new(space.cols);
        for row in &space.rows {
            red.insert(row.clone());
        }
        let before = red.rank();
        let mut grew = false;
        let mut rank_of_partials = RowReducer::new(space.cols);
        for (vp, vq) in p.iter().zip(&q) {
            let v: Vec<Q> = vp.iter().zip(vq).map(|(x, y)| a * x - y).collect();
            rank_of_partials.insert(v.clone());
            grew |= red.insert(v);
        }
        !grew && before == rank_of_partials.rank()
    };
    let matches_full_sum = spans(c1, 4);
    let partials_singular = {
        let (p, q) = partials(4);
        p.iter().zip(&q).all(|(vp, vq)| {
            let v: Vec<Q> = vp.iter().zip(vq).map(|(x, y)| c1 * x - y).collect();
            space.contains(&v)
        })
    };
    let matches_three_term_sum = spans(c1, 3);
    // fit a from the first partial: a p - q in the space
    let (p, q) = partials(4);
    let reduce = |v: &[Q]| {
        let mut v = v.to_vec();
        for (row, &piv) in space.rows.iter().zip(&space.pivots) {
            if v[piv].is_zero() {
                continue;
            }
            let f = v[piv].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &(&f * r);
            }
        }
        v
    };
    let (pr, qr) = (reduce(&p[0]), reduce(&q[0]));
    let fitted_a = pr.iter().position(|x| !x.is_zero()).and_then(|j| {
        let a = &qr[j] / &pr[j];
        let ok = pr.iter().zip(&qr).all(|(x, y)| &a * x == *y);
        (ok && spans(&a, 4)).then(|| format_rational(&a))
    });
    Ok(QuarticShapeReport { c: c.to_string(), singular_dim, matches_full_sum, matches_three_term_sum, partials_singular, fitted_a })
}

#[derive(Clone, Debug, Serialize)]
pub struct DFamilyCheck {
    pub n: usize,
    pub k: usize,
    pub c: String,
    pub graded_dims: Vec<usize>,
    pub expected_dim: usize,
    pub charfor: std::result::Result<(), String>,
    /// `gcd(2k + 1, h) = 1`, where `N(triv)` should be simple.
    pub coprime: bool,
    /// Graded dimensions of `L(triv)` for `D_n`, computed directly.
    pub simple_dims: Vec<usize>,
}

impl DFamilyCheck {
    pub fn passed(&self) -> bool {
        let total: usize = self.graded_dims.iter().sum();
        let simple_total: usize = self.simple_dims.iter().sum();
        self.charfor.is_ok() && total == self.expected_dim && (!self.coprime || simple_total == total)
    }
}

/// `N(triv)` for `D_n` at `c = (2k+1)/h`, restricted from `B_n` at
/// `(c, 0)`.
pub fn d_family_check(n: usize, k: usize) -> Result<DFamilyCheck> {
    let gb = CoxeterRealization::build(CoxeterType::B, n)?;
    let gd = CoxeterRealization::build(CoxeterType::D, n)?;
    let h = gd.coxeter_number() as usize;
    let c = rat(2 * k as i64 + 1, h as i64);
    let nb = n_module_on_b_line(&gb, k, &c)?;
    let coeffs = gd
        .classes()
        .iter()
        .map(|cls| {
            let w = gb
                .index_of(gd.element(cls.representative))
                .ok_or_else(|| Error::Invariant("D_n element missing from B_n".into()))?;
            Ok(nb.traces.coeffs[gb.class_of(w)].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let restricted = CharacterSeries::new(nb.traces.offset.clone(), coeffs);
    let len = nb.graded_dims.len();
    let charfor = restricted.compare(&simple_char_closed_form(&gd, 2 * k + 1, &WRep::trivial(&gd), len));
    let cd = CParameter::constant(&gd, c.clone());
    let coprime = num_integer::gcd(2 * k + 1, h) == 1;
    let simple = simple_graded(&gd, &WRep::trivial(&gd), &cd, &SimpleOptions { traces: false, ..SimpleOptions::with_bound(len) })?;
    Ok(DFamilyCheck {
        n,
        k,
        c: format_rational(&c),
        graded_dims: nb.graded_dims,
        expected_dim: (2 * k + 1).pow(n as u32),
        charfor,
        coprime,
        simple_dims: simple.graded_dims,
    })
}
