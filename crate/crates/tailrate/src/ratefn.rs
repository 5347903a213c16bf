//! Rate functions for the upper tail: `β_H`, `ρ_LZ`, `ρ_bi`, `ρ_new`, and
//! closed forms for the named families.
//!
//! The central object is the variational problem behind `ρ_LZ`: minimize
//! `Vol_H(ξ)` over compatibility assignments `ξ` subject to
//! `P_H(ξ) ≥ 1 + δ`, where `P_H` sums `Π_v ξ(λ_v)` over stable labelings
//! and `Vol_H` sums `Π_i ξ(t_i)` over nonzero labeling tuples with orbit
//! multiplicity. When every nonzero stable labeling takes a single value
//! `v = 1/s` (true for all families treated here), the substitution
//! `α_v = ξ(v)^{1/v}` makes the volume linear and the constraint separable,
//! and the minimum lands on a coordinate axis: `ρ_LZ` becomes
//! `min_v c_v · h_v⁻¹(δ)` with `h_v(α) = Σ_λ α^{v·|supp λ|}` and `c_v` the
//! orbit count of the value-`v` tuple. Otherwise a multi-start penalized
//! Nelder–Mead search runs in log space and is flagged as uncertified.
//!
//! All results report the attaining branch, the solver that produced the
//! number, and the residual of the root-finding or feasibility equation.
//! δ-sweeps can run in parallel: every input here is immutable.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractional::nu_star;
use crate::hypergraph::Hypergraph;
use crate::labelings::{
    stable_labelings_capped, tuple_set_from_labelings, LabelingSet, TupleSet, DEFAULT_LABELING_CAP,
};
use crate::rational::{format_rational, int, rat, to_f64, Rational};

/// Residual tolerance for bisection roots (`β_H` and branch inversions).
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Convergence tolerance of the generic minimizer.
pub const GENERIC_TOLERANCE: f64 = 1e-8;
/// Number of random restarts of the generic minimizer.
pub const GENERIC_STARTS: usize = 64;

/// A value of one of the rate functions, with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct RateResult {
    /// The rate value; always nonnegative.
    pub value: f64,
    /// Which branch of the formula attains the value, for example
    /// `"value 1/2"` for the labeling-value branch or `"clique"`/`"hubs"`
    /// for the two sides of the regular-graph minimum.
    pub branch: String,
    /// Which solver produced the value.
    pub solver: Solver,
    /// Residual of the defining equation at the reported point.
    pub residual: f64,
}

/// Provenance of a rate value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// The separable axis reduction; exact up to root-finding tolerance.
    Structured,
    /// Multi-start penalized search; not certified globally optimal.
    Generic,
    /// A named family's formula.
    ClosedForm,
}

impl std::fmt::Display for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Solver::Structured => "structured",
            Solver::Generic => "generic",
            Solver::ClosedForm => "closed_form",
        })
    }
}

/// An assignment `ξ` of nonnegative reals to the nonzero label values,
/// with `ξ(0) = 1` held implicitly.
#[derive(Debug, Clone, Default)]
pub struct CompatibilityAssignment {
    values: BTreeMap<Rational, f64>,
}

impl CompatibilityAssignment {
    /// Builds an assignment from `(value, ξ(value))` pairs. Values must lie
    /// in `(0, 1]` and the assigned reals must be finite and nonnegative.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, f64)>) -> Result<Self> {
        let mut out = CompatibilityAssignment::default();
        for (t, xi) in pairs {
            out.set(t, xi)?;
        }
        Ok(out)
    }

    /// Inserts or replaces one assignment.
    pub fn set(&mut self, t: Rational, xi: f64) -> Result<()> {
        if t <= int(0) || t > int(1) {
            return Err(Error::Input(format!(
                "compatibility keys must lie in (0, 1], got {}",
                format_rational(&t)
            )));
        }
        if !xi.is_finite() || xi < 0.0 {
            return Err(Error::Input(format!(
                "compatibility values must be finite and nonnegative, got {xi}"
            )));
        }
        self.values.insert(t, xi);
        Ok(())
    }

    /// Looks up `ξ(t)`; zero maps to 1, any other missing key is an error.
    pub fn get(&self, t: &Rational) -> Result<f64> {
        if *t == int(0) {
            return Ok(1.0);
        }
        self.values.get(t).copied().ok_or_else(|| {
            Error::Input(format!(
                "compatibility assignment has no value for {}",
                format_rational(t)
            ))
        })
    }
}

/// Evaluates `P_H(ξ) = Σ_λ Π_v ξ(λ_v)` over the given stable labelings.
/// The zero labeling contributes 1.
pub fn p_h(labelings: &LabelingSet, xi: &CompatibilityAssignment) -> Result<f64> {
    let mut total = 0.0;
    for lam in labelings.iter() {
        let mut product = 1.0;
        for v in lam.support() {
            product *= xi.get(lam.value(v))?;
        }
        total += product;
    }
    Ok(total)
}

/// Evaluates `Vol_H(ξ) = Σ_t Π_i ξ(t_i)` over the nonzero tuples, counted
/// with orbit multiplicity.
pub fn vol_h(tuples: &TupleSet, xi: &CompatibilityAssignment) -> Result<f64> {
    let mut total = 0.0;
    for t in tuples.nonzero() {
        let mut product = t.orbit as f64;
        for value in &t.values {
            if *value != int(0) {
                product *= xi.get(value)?;
            }
        }
        total += product;
    }
    Ok(total)
}

/// Solves `i(β) = 1 + δ` for the unique positive root, where `i` is the
/// independence polynomial of the maximum-degree vertices taken inside the
/// whole graph. Bisection on `[0, max(1, δ)]` to residual `1e-12`.
///
/// `δ = 0` returns 0; negative `δ` and edgeless graphs are input errors.
pub fn beta_h(h: &Hypergraph, delta: f64) -> Result<f64> {
    Ok(beta_with_residual(h, delta)?.0)
}

fn beta_with_residual(h: &Hypergraph, delta: f64) -> Result<(f64, f64)> {
    if h.edge_count() == 0 {
        return Err(Error::Input(
            "rate functions need a graph with at least one edge".to_owned(),
        ));
    }
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::Input(format!(
            "delta must be finite and nonnegative, got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok((0.0, 0.0));
    }
    let core = h.max_degree_vertices();
    let coeffs = h.independence_polynomial_within(&core)?;
    let eval = |x: f64| {
        coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    };
    Ok(bisect_increasing(eval, 1.0 + delta, 0.0, delta.max(1.0)))
}

/// Bisects a nondecreasing function to `f(x) = target` on `[lo, hi]`,
/// assuming `f(lo) ≤ target ≤ f(hi)`. Returns the root and the residual.
fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    if (f(lo) - target).abs() <= ROOT_TOLERANCE {
        return (lo, (f(lo) - target).abs());
    }
    let mut mid = lo;
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let value = f(mid);
        if (value - target).abs() <= ROOT_TOLERANCE {
            break;
        }
        if value < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (mid, (f(mid) - target).abs())
}

/// Doubles an upper bracket from 1 until `f` reaches `target`, then bisects.
/// `None` when the function cannot reach the target.
fn invert_increasing(f: impl Fn(f64) -> f64, target: f64) -> Option<(f64, f64)> {
    if target <= 0.0 {
        return Some((0.0, f(0.0).abs()));
    }
    let mut hi = 1.0;
    let mut doublings = 0;
    while f(hi) < target {
        hi *= 2.0;
        doublings += 1;
        if doublings > 1_000 {
            return None;
        }
    }
    Some(bisect_increasing(f, target, 0.0, hi))
}

/// The separable minimum of costs against convex increasing functions.
#[derive(Debug, Clone, Serialize)]
pub struct SeparableMinimum {
    /// `min_k c_k · h_k⁻¹(target)`.
    pub value: f64,
    /// The attaining index; ties go to the smallest.
    pub index: usize,
    /// The argument `h_k⁻¹(target)` at the attaining index.
    pub argument: f64,
    /// `|h_k(argument) − target|` at the attaining index.
    pub residual: f64,
}

/// Minimizes `Σ_k c_k x_k` over `x ≥ 0` subject to `Σ_k h_k(x_k) ≥ a`, for
/// convex increasing `h_k` with `h_k(0) = 0`. The minimum is attained with
/// all but one coordinate zero, so it equals `min_k c_k · h_k⁻¹(a)`.
///
/// Each function is sampled on a geometric grid to detect non-monotone
/// inputs, which are rejected; so is a function that never reaches `a`.
pub fn minimize_separable(
    costs: &[f64],
    funcs: &[Box<dyn Fn(f64) -> f64>],
    target: f64,
) -> Result<SeparableMinimum> {
    if costs.is_empty() || costs.len() != funcs.len() {
        return Err(Error::Input(
            "separable minimization needs matching, nonempty costs and functions".to_owned(),
        ));
    }
    if target < 0.0 || !target.is_finite() {
        return Err(Error::Input(format!(
            "separable target must be finite and nonnegative, got {target}"
        )));
    }
    if let Some(c) = costs.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::Input(format!(
            "separable costs must be finite and nonnegative, got {c}"
        )));
    }
    for (k, f) in funcs.iter().enumerate() {
        if f(0.0).abs() > 1e-9 {
            return Err(Error::Input(format!(
                "function {k} does not vanish at zero"
            )));
        }
        let mut previous = 0.0;
        let mut x = 1e-6;
        while x <= 1e6 {
            let y = f(x);
            if y + 1e-12 < previous {
                return Err(Error::Input(format!(
                    "function {k} is not nondecreasing near {x}"
                )));
            }
            previous = y;
            x *= 2.0;
        }
    }
    let mut best: Option<SeparableMinimum> = None;
    for (k, f) in funcs.iter().enumerate() {
        let (argument, residual) = invert_increasing(f, target).ok_or_else(|| {
            Error::Input(format!("function {k} never reaches the target {target}"))
        })?;
        let value = costs[k] * argument;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(SeparableMinimum {
                value,
                index: k,
                argument,
                residual,
            });
        }
    }
    Ok(best.expect("at least one branch"))
}

/// One axis branch of the structured reduction: the labeling value, the
/// linear volume cost, and the `(exponent, multiplicity)` terms of `h_v`.
struct Branch {
    descriptor: String,
    cost: f64,
    terms: Vec<(f64, f64)>,
}

/// Extracts the per-value branches from single-valued labelings. `None`
/// when some nonzero labeling is multi-valued.
fn structured_branches(labelings: &LabelingSet, tuples: &TupleSet) -> Option<Vec<Branch>> {
    let mut exponents: BTreeMap<Rational, BTreeMap<Rational, f64>> = BTreeMap::new();
    for lam in labelings.nonzero() {
        let v = lam.single_value()?;
        let q = &v * int(lam.support().len() as i64);
        *exponents
            .entry(v.clone())
            .or_default()
            .entry(q)
            .or_insert(0.0) += 1.0;
    }
    let mut costs: BTreeMap<Rational, f64> = BTreeMap::new();
    for t in tuples.nonzero() {
        let nonzero: Vec<&Rational> = t.values.iter().filter(|x| **x != int(0)).collect();
        let v = nonzero[0].clone();
        if nonzero.iter().any(|x| **x != v) {
            return None;
        }
        *costs.entry(v).or_insert(0.0) += t.orbit as f64;
    }
    let mut branches = Vec::new();
    for (v, terms) in exponents {
        let cost = *costs
            .get(&v)
            .expect("every labeling value appears in some tuple");
        branches.push(Branch {
            descriptor: format!("value {}", format_rational(&v)),
            cost,
            terms: terms.into_iter().map(|(q, c)| (to_f64(&q), c)).collect(),
        });
    }
    branches.sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
    Some(branches)
}

/// Computes `ρ_LZ(δ)`: the minimal volume of a compatibility assignment
/// whose `P_H` reaches `1 + δ`, using the default labeling cap.
///
/// When every nonzero stable labeling is single-valued the separable axis
/// reduction applies and the result is structured; otherwise the generic
/// multi-start solver runs. Ties between branches resolve to the
/// lexicographically smallest descriptor.
pub fn rho_lz(h: &Hypergraph, delta: f64) -> Result<RateResult> {
    rho_lz_capped(h, delta, DEFAULT_LABELING_CAP)
}

/// `rho_lz` with an explicit enumeration cap.
pub fn rho_lz_capped(h: &Hypergraph, delta: f64, cap: usize) -> Result<RateResult> {
    let labelings = checked_labelings(h, delta, cap)?;
    let tuples = tuple_set_from_labelings(&labelings);
    match structured_branches(&labelings, &tuples) {
        Some(branches) => {
            let costs: Vec<f64> = branches.iter().map(|b| b.cost).collect();
            let funcs: Vec<Box<dyn Fn(f64) -> f64>> = branches
                .iter()
                .map(|b| {
                    let terms = b.terms.clone();
                    Box::new(move |a: f64| {
                        terms.iter().map(|&(q, c)| c * a.powf(q)).sum::<f64>()
                    }) as Box<dyn Fn(f64) -> f64>
                })
                .collect();
            let minimum = minimize_separable(&costs, &funcs, delta)?;
            Ok(RateResult {
                value: minimum.value,
                branch: branches[minimum.index].descriptor.clone(),
                solver: Solver::Structured,
                residual: minimum.residual,
            })
        }
        None => Ok(generic_minimum(&labelings, &tuples, delta)),
    }
}

/// Runs the uncertified multi-start solver regardless of structure; used to
/// cross-check the structured reduction.
pub fn rho_lz_generic(h: &Hypergraph, delta: f64) -> Result<RateResult> {
    let labelings = checked_labelings(h, delta, DEFAULT_LABELING_CAP)?;
    let tuples = tuple_set_from_labelings(&labelings);
    Ok(generic_minimum(&labelings, &tuples, delta))
}

/// Shared validation for the `ρ_LZ` entry points.
fn checked_labelings(h: &Hypergraph, delta: f64, cap: usize) -> Result<LabelingSet> {
    if h.edge_count() == 0 {
        return Err(Error::Input(
            "rate functions need a graph with at least one edge".to_owned(),
        ));
    }
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::Input(format!(
            "delta must be finite and nonnegative, got {delta}"
        )));
    }
    let labelings = stable_labelings_capped(h, cap)?;
    if labelings.nonzero().next().is_none() && delta > 0.0 {
        return Err(Error::Input(
            "the graph has no nonzero stable labelings, so no assignment reaches 1 + delta"
                .to_owned(),
        ));
    }
    Ok(labelings)
}

/// The numeric core of the generic solver, shared by the forced-generic
/// entry point and the multi-valued fallback.
fn generic_minimum(labelings: &LabelingSet, tuples: &TupleSet, delta: f64) -> RateResult {
    // Index the distinct nonzero values.
    let mut values: Vec<Rational> = Vec::new();
    for lam in labelings.nonzero() {
        for v in lam.distinct_values() {
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    values.sort();
    let index_of = |v: &Rational| values.iter().position(|w| w == v).expect("indexed value");

    // P(ξ) − 1 as monomials: (coefficient, value-index multiplicities).
    let mut p_terms: Vec<(f64, Vec<(usize, i32)>)> = Vec::new();
    for lam in labelings.nonzero() {
        let mut mults: BTreeMap<usize, i32> = BTreeMap::new();
        for v in lam.support() {
            *mults.entry(index_of(lam.value(v))).or_insert(0) += 1;
        }
        p_terms.push((1.0, mults.into_iter().collect()));
    }
    // Vol(ξ) as monomials.
    let mut vol_terms: Vec<(f64, Vec<(usize, i32)>)> = Vec::new();
    for t in tuples.nonzero() {
        let mut mults: BTreeMap<usize, i32> = BTreeMap::new();
        for value in &t.values {
            if *value != int(0) {
                *mults.entry(index_of(value)).or_insert(0) += 1;
            }
        }
        vol_terms.push((t.orbit as f64, mults.into_iter().collect()));
    }
    let eval = |terms: &[(f64, Vec<(usize, i32)>)], xi: &[f64]| -> f64 {
        terms
            .iter()
            .map(|(c, mults)| {
                c * mults
                    .iter()
                    .map(|&(i, m)| xi[i].powi(m))
                    .product::<f64>()
            })
            .sum()
    };

    let lex_smallest = values
        .iter()
        .map(|v| format!("value {}", format_rational(v)))
        .min()
        .unwrap_or_else(|| "none".to_owned());
    if delta == 0.0 {
        return RateResult {
            value: 0.0,
            branch: lex_smallest,
            solver: Solver::Generic,
            residual: 0.0,
        };
    }

    // Scales ξ along its ray until P(cξ) = 1 + δ, which exists because the
    // monomials are unbounded in c; returns the scaled point and residual.
    let polish = |xi: &[f64]| -> Option<(Vec<f64>, f64)> {
        let p_of = |c: f64| {
            let scaled: Vec<f64> = xi.iter().map(|x| x * c).collect();
            1.0 + eval(&p_terms, &scaled)
        };
        if xi.iter().all(|&x| x <= 0.0) {
            return None;
        }
        let (c, residual) = invert_increasing(|c| p_of(c) - 1.0, delta)?;
        Some((xi.iter().map(|x| x * c).collect(), residual))
    };

    let dim = values.len();
    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    let consider = |candidate: Option<(Vec<f64>, f64)>, best: &mut Option<(f64, Vec<f64>, f64)>| {
        if let Some((xi, residual)) = candidate {
            let volume = eval(&vol_terms, &xi);
            if best.as_ref().is_none_or(|(v, _, _)| volume < *v) {
                *best = Some((volume, xi, residual));
            }
        }
    };

    // Axis probes: all weight on a single value.
    for i in 0..dim {
        let mut xi = vec![0.0; dim];
        xi[i] = 1.0;
        consider(polish(&xi), &mut best);
    }

    // Multi-start penalized Nelder–Mead in log space.
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_7465);
    for _ in 0..GENERIC_STARTS {
        let mut x: Vec<f64> = (0..dim)
            .map(|_| {
                let u: f64 = rng.random();
                (1e-4f64).ln() + u * ((1e2f64).ln() - (1e-4f64).ln())
            })
            .collect();
        for mu in [1e2, 1e4, 1e6, 1e8] {
            let objective = |logs: &[f64]| {
                let xi: Vec<f64> = logs.iter().map(|l| l.exp()).collect();
                let p = 1.0 + eval(&p_terms, &xi);
                let gap = (1.0 + delta - p).max(0.0);
                eval(&vol_terms, &xi) + mu * gap * gap
            };
            x = nelder_mead(&objective, &x, 0.5, 500 * dim.max(1), GENERIC_TOLERANCE);
        }
        let xi: Vec<f64> = x.iter().map(|l| l.exp()).collect();
        consider(polish(&xi), &mut best);
    }

    let (value, xi, residual) = best.expect("axis probes always produce a candidate");
    let peak = xi.iter().cloned().fold(0.0, f64::max);
    let live: Vec<usize> = (0..dim).filter(|&i| xi[i] > 1e-9 * peak).collect();
    let branch = if live.len() == 1 {
        format!("value {}", format_rational(&values[live[0]]))
    } else {
        "mixed".to_owned()
    };
    RateResult {
        value,
        branch,
        solver: Solver::Generic,
        residual,
    }
}

/// Standard Nelder–Mead on `f`, started at `start` with the given initial
/// step, stopping when the simplex's objective spread falls below `tol`.
fn nelder_mead(
    f: &impl Fn(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    max_iters: usize,
    tol: f64,
) -> Vec<f64> {
    let dim = start.len();
    if dim == 0 {
        return Vec::new();
    }
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim + 1);
    simplex.push((f(start), start.to_vec()));
    for i in 0..dim {
        let mut point = start.to_vec();
        point[i] += step;
        simplex.push((f(&point), point));
    }
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        if simplex[dim].0 - simplex[0].0 < tol {
            break;
        }
        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(_, p)| p[j]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let at = |coef: f64| -> Vec<f64> {
            (0..dim)
                .map(|j| centroid[j] + coef * (centroid[j] - worst.1[j]))
                .collect()
        };
        let reflected = at(1.0);
        let fr = f(&reflected);
        if fr < simplex[0].0 {
            let expanded = at(2.0);
            let fe = f(&expanded);
            simplex[dim] = if fe < fr {
                (fe, expanded)
            } else {
                (fr, reflected)
            };
        } else if fr < simplex[dim - 1].0 {
            simplex[dim] = (fr, reflected);
        } else {
            let contracted = at(-0.5);
            let fc = f(&contracted);
            if fc < worst.0 {
                simplex[dim] = (fc, contracted);
            } else {
                let bestpoint = simplex[0].1.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = entry
                        .1
                        .iter()
                        .zip(&bestpoint)
                        .map(|(p, b)| b + 0.5 * (p - b))
                        .collect();
                    *entry = (f(&shrunk), shrunk);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    simplex[0].1.clone()
}

/// The bipartite-construction rate: `min{δ^{Δ/|E|}, r·β_H(δ)}` for regular
/// graphs, `r·β_H(δ)` otherwise. Branches are named `"clique"` and
/// `"hubs"`; ties go to `"clique"`.
pub fn rho_bi(h: &Hypergraph, delta: f64) -> Result<RateResult> {
    let (beta, residual) = beta_with_residual(h, delta)?;
    let hubs = h.r() as f64 * beta;
    if h.is_regular() {
        let clique = delta.powf(h.max_degree() as f64 / h.edge_count() as f64);
        if clique <= hubs {
            return Ok(RateResult {
                value: clique,
                branch: "clique".to_owned(),
                solver: Solver::Structured,
                residual: 0.0,
            });
        }
    }
    Ok(RateResult {
        value: hubs,
        branch: "hubs".to_owned(),
        solver: Solver::Structured,
        residual,
    })
}

/// The refined rate: branches on whether `ν*(H) = |E(H)|/Δ` holds exactly,
/// in which case the clique branch joins the minimum, else `r·β_H(δ)`.
pub fn rho_new(h: &Hypergraph, delta: f64) -> Result<RateResult> {
    let (beta, residual) = beta_with_residual(h, delta)?;
    let hubs = h.r() as f64 * beta;
    let tight = nu_star(h) == rat(h.edge_count() as i64, h.max_degree() as i64);
    if tight {
        let clique = delta.powf(h.max_degree() as f64 / h.edge_count() as f64);
        if clique <= hubs {
            return Ok(RateResult {
                value: clique,
                branch: "clique".to_owned(),
                solver: Solver::Structured,
                residual: 0.0,
            });
        }
    }
    Ok(RateResult {
        value: hubs,
        branch: "hubs".to_owned(),
        solver: Solver::Structured,
        residual,
    })
}

/// A family with a published closed-form rate.
#[derive(Debug, Clone)]
pub enum ClosedFormFamily {
    /// The complete `r`-graph on `k` vertices.
    Clique { r: usize, k: usize },
    /// The complete `r`-partite `r`-graph with all parts of size `m`.
    RpartiteRegular { r: usize, m: usize },
    /// The complete `r`-partite `r`-graph whose smallest part is unique.
    RpartiteMin { parts: Vec<usize> },
    /// The tight cycle of length `l`.
    Cycle { r: usize, l: usize },
    /// A proper subgraph of a tight cycle, evaluated through `β`.
    CycleSubgraph { graph: Hypergraph },
    /// The 7-point, 7-line projective plane.
    Fano,
    /// The plane with one line removed.
    FanoMinusEdge,
}

/// Evaluates the published formula for a named family.
///
/// Branch names follow the structured solver: `"value 1"` for the linear
/// (hub) branch, `"value 1/s"` for the branch of labelings with value
/// `1/s`. Ties go to the lexicographically smallest descriptor.
pub fn closed_form(family: &ClosedFormFamily, delta: f64) -> Result<RateResult> {
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::Input(format!(
            "delta must be finite and nonnegative, got {delta}"
        )));
    }
    let from_branches = |branches: Vec<(String, f64, f64)>| -> RateResult {
        let mut sorted = branches;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let (branch, value, residual) = sorted
            .into_iter()
            .reduce(|best, next| if next.1 < best.1 { next } else { best })
            .expect("every family has a branch");
        RateResult {
            value,
            branch,
            solver: Solver::ClosedForm,
            residual,
        }
    };
    match family {
        ClosedFormFamily::Clique { r, k } => {
            if *r < 2 || k < r {
                return Err(Error::Input(format!(
                    "a clique family needs k >= r >= 2, got r={r}, k={k}"
                )));
            }
            let (r, k) = (*r as f64, *k as f64);
            Ok(from_branches(vec![
                ("value 1".to_owned(), r * delta / k, 0.0),
                (format!("value 1/{r}"), delta.powf(r / k), 0.0),
            ]))
        }
        ClosedFormFamily::RpartiteRegular { r, m } => {
            if *r < 2 || *m == 0 {
                return Err(Error::Input(format!(
                    "a regular partite family needs r >= 2 and m >= 1, got r={r}, m={m}"
                )));
            }
            let (rf, mf) = (*r as f64, *m as f64);
            Ok(from_branches(vec![
                (
                    "value 1".to_owned(),
                    rf * ((1.0 + delta / rf).powf(1.0 / mf) - 1.0),
                    0.0,
                ),
                (format!("value 1/{r}"), delta.powf(1.0 / mf), 0.0),
            ]))
        }
        ClosedFormFamily::RpartiteMin { parts } => {
            let r = parts.len();
            if r < 2 || parts.iter().any(|&m| m == 0) {
                return Err(Error::Input(
                    "a partite family needs at least two nonempty parts".to_owned(),
                ));
            }
            let mut sorted = parts.clone();
            sorted.sort_unstable();
            if sorted.len() > 1 && sorted[0] == sorted[1] {
                return Err(Error::Input(
                    "the distinct-minimum partite formula needs a unique smallest part"
                        .to_owned(),
                ));
            }
            let value = r as f64 * ((1.0 + delta).powf(1.0 / sorted[0] as f64) - 1.0);
            Ok(RateResult {
                value,
                branch: "value 1".to_owned(),
                solver: Solver::ClosedForm,
                residual: 0.0,
            })
        }
        ClosedFormFamily::Cycle { r, l } => {
            let cycle = Hypergraph::tight_cycle(*r, *l)?;
            let (beta, residual) = beta_with_residual(&cycle, delta)?;
            Ok(from_branches(vec![
                ("value 1".to_owned(), *r as f64 * beta, residual),
                (
                    format!("value 1/{r}"),
                    delta.powf(*r as f64 / *l as f64),
                    0.0,
                ),
            ]))
        }
        ClosedFormFamily::CycleSubgraph { graph } => {
            let cycle = Hypergraph::tight_cycle(graph.r(), graph.n_vertices())?;
            if !graph.is_subgraph_of(&cycle) || graph.edge_count() == cycle.edge_count() {
                return Err(Error::Input(
                    "the cycle-subgraph formula needs a proper subgraph of the tight cycle on \
                     its vertex set"
                        .to_owned(),
                ));
            }
            let (beta, residual) = beta_with_residual(graph, delta)?;
            Ok(RateResult {
                value: graph.r() as f64 * beta,
                branch: "value 1".to_owned(),
                solver: Solver::ClosedForm,
                residual,
            })
        }
        ClosedFormFamily::Fano => Ok(from_branches(vec![
            ("value 1".to_owned(), 3.0 * delta / 7.0, 0.0),
            ("value 1/3".to_owned(), delta.powf(3.0 / 7.0), 0.0),
        ])),
        ClosedFormFamily::FanoMinusEdge => Ok(from_branches(vec![
            ("value 1".to_owned(), delta / 8.0, 0.0),
            ("value 1/2".to_owned(), delta.sqrt() / 2.0, 0.0),
        ])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(pairs: &[(Rational, f64)]) -> CompatibilityAssignment {
        CompatibilityAssignment::from_pairs(pairs.iter().cloned()).unwrap()
    }

    #[test]
    fn fano_p_and_vol_match_the_polynomials() {
        let h = Hypergraph::fano();
        let labelings = stable_labelings_capped(&h, 14).unwrap();
        let tuples = tuple_set_from_labelings(&labelings);
        let (x, y, z) = (2.0, 0.6, 0.3);
        let a = xi(&[(int(1), x), (rat(1, 2), y), (rat(1, 3), z)]);
        let p = p_h(&labelings, &a).unwrap();
        assert!((p - (1.0 + 7.0 * x + 7.0 * y.powi(4) + z.powi(7))).abs() < 1e-12);
        let vol = vol_h(&tuples, &a).unwrap();
        assert!((vol - (3.0 * x + 3.0 * y * y + z.powi(3))).abs() < 1e-12);
        // Vanishing on the nonzero values keeps only the zero labeling.
        let zero = xi(&[(int(1), 0.0), (rat(1, 2), 0.0), (rat(1, 3), 0.0)]);
        assert_eq!(p_h(&labelings, &zero).unwrap(), 1.0);
        assert_eq!(vol_h(&tuples, &zero).unwrap(), 0.0);
        // A missing key is an input error.
        let partial = xi(&[(int(1), 1.0)]);
        assert!(matches!(
            p_h(&labelings, &partial),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn tripartite_p_matches_the_formula() {
        let h = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        let labelings = stable_labelings_capped(&h, 14).unwrap();
        let (x, y, z) = (0.7, 1.3, 0.4);
        let a = xi(&[(int(1), x), (rat(1, 2), y), (rat(1, 3), z)]);
        let p = p_h(&labelings, &a).unwrap();
        let expected =
            1.0 + 3.0 * ((1.0 + x).powi(2) - 1.0) + 3.0 * y.powi(4) + z.powi(6);
        assert!((p - expected).abs() < 1e-12);
    }

    #[test]
    fn beta_solves_the_polynomial_equation() {
        // Tight cycle of length 5: linear polynomial, beta = delta / 5.
        let c5 = Hypergraph::tight_cycle(3, 5).unwrap();
        for delta in [0.25, 1.0, 7.0] {
            assert!((beta_h(&c5, delta).unwrap() - delta / 5.0).abs() < 1e-10);
        }
        // Balanced partite: (1 + beta)^m = 1 + delta / r on each part.
        let k222 = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        for delta in [0.5f64, 2.0] {
            let expected = (1.0 + delta / 3.0).sqrt() - 1.0;
            assert!((beta_h(&k222, delta).unwrap() - expected).abs() < 1e-10);
        }
        // The plane with one line removed: only singleton independent sets
        // among its four maximum-degree vertices, so beta = delta / 4.
        let fme = Hypergraph::fano_minus_edge();
        assert!((beta_h(&fme, 2.0).unwrap() - 0.5).abs() < 1e-10);
        assert_eq!(beta_h(&fme, 0.0).unwrap(), 0.0);
        assert!(matches!(beta_h(&fme, -1.0), Err(Error::Input(_))));
    }

    #[test]
    fn beta_residual_and_monotonicity() {
        let h = Hypergraph::fano();
        let core = h.max_degree_vertices();
        let coeffs = h.independence_polynomial_within(&core).unwrap();
        let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64);
        let mut previous = 0.0;
        for step in 1..=20 {
            let delta = step as f64 * 0.37;
            let beta = beta_h(&h, delta).unwrap();
            assert!((eval(beta) - (1.0 + delta)).abs() <= 1e-10);
            assert!(beta > previous);
            previous = beta;
        }
    }

    #[test]
    fn rho_lz_fano_matches_the_two_branch_minimum() {
        let h = Hypergraph::fano();
        for delta in [0.1, 1.0, 3.0, 7.0, 40.0] {
            let result = rho_lz(&h, delta).unwrap();
            let expected = (3.0 * delta / 7.0).min(delta.powf(3.0 / 7.0));
            assert!(
                (result.value - expected).abs() < 1e-9,
                "delta={delta}: {} vs {expected}",
                result.value
            );
            // The middle branch never attains the minimum.
            assert!(3.0 * (delta / 7.0).sqrt() >= expected - 1e-12);
            assert_eq!(result.solver, Solver::Structured);
        }
        assert_eq!(rho_lz(&h, 1.0).unwrap().branch, "value 1");
        assert_eq!(rho_lz(&h, 40.0).unwrap().branch, "value 1/3");
        assert_eq!(rho_lz(&h, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn rho_lz_tripartite_at_one() {
        let h = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        let result = rho_lz(&h, 1.0).unwrap();
        let expected = 2.0 * 3.0f64.sqrt() - 3.0;
        assert!((result.value - expected).abs() < 1e-9);
        assert_eq!(result.branch, "value 1");
    }

    #[test]
    fn rho_lz_cycles_match_closed_forms() {
        for l in [5usize, 6, 7] {
            let h = Hypergraph::tight_cycle(3, l).unwrap();
            let family = ClosedFormFamily::Cycle { r: 3, l };
            for delta in [0.3, 1.0, 10.0, 60.0] {
                let pipeline = rho_lz(&h, delta).unwrap();
                let formula = closed_form(&family, delta).unwrap();
                assert!(
                    (pipeline.value - formula.value).abs() < 1e-9,
                    "l={l}, delta={delta}"
                );
            }
        }
    }

    #[test]
    fn rho_lz_fano_minus_edge_is_six_times_the_closed_form() {
        let h = Hypergraph::fano_minus_edge();
        for delta in [0.2, 1.0, 4.0, 100.0] {
            let pipeline = rho_lz(&h, delta).unwrap();
            let expected = (3.0 * delta / 4.0).min(3.0 * delta.sqrt());
            assert!((pipeline.value - expected).abs() < 1e-9);
            let formula = closed_form(&ClosedFormFamily::FanoMinusEdge, delta).unwrap();
            assert!((pipeline.value - 6.0 * formula.value).abs() < 1e-9);
        }
        assert_eq!(rho_lz(&h, 1.0).unwrap().branch, "value 1");
        assert_eq!(rho_lz(&h, 100.0).unwrap().branch, "value 1/2");
    }

    #[test]
    fn generic_solver_agrees_with_structured() {
        let cases = [
            (Hypergraph::fano(), 1.0),
            (Hypergraph::fano(), 7.0),
            (Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap(), 1.0),
            (Hypergraph::tight_cycle(3, 5).unwrap(), 2.0),
        ];
        for (h, delta) in cases {
            let structured = rho_lz(&h, delta).unwrap();
            let generic = rho_lz_generic(&h, delta).unwrap();
            assert_eq!(generic.solver, Solver::Generic);
            assert!(
                (structured.value - generic.value).abs() < 1e-6,
                "{h:?} at {delta}: {} vs {}",
                structured.value,
                generic.value
            );
        }
    }

    #[test]
    fn random_feasible_assignments_dominate_rho_lz() {
        let h = Hypergraph::fano();
        let delta = 2.0;
        let rho = rho_lz(&h, delta).unwrap().value;
        let labelings = stable_labelings_capped(&h, 14).unwrap();
        let tuples = tuple_set_from_labelings(&labelings);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let raw: Vec<f64> = (0..3).map(|_| rng.random::<f64>() * 2.0).collect();
            // Scale the sample until it is exactly feasible.
            let assignment = |c: f64| {
                xi(&[
                    (int(1), raw[0] * c),
                    (rat(1, 2), raw[1] * c),
                    (rat(1, 3), raw[2] * c),
                ])
            };
            let (c, _) = invert_increasing(
                |c| p_h(&labelings, &assignment(c)).unwrap() - 1.0,
                delta,
            )
            .unwrap();
            let volume = vol_h(&tuples, &assignment(c)).unwrap();
            assert!(volume >= rho - 1e-9);
        }
    }

    #[test]
    fn rho_lz_is_monotone_from_zero() {
        let h = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        assert_eq!(rho_lz(&h, 0.0).unwrap().value, 0.0);
        let mut previous = 0.0;
        for step in 1..=25 {
            let delta = 10f64.powf(-2.0 + step as f64 * 0.16);
            let value = rho_lz(&h, delta).unwrap().value;
            assert!(value + 1e-9 >= previous);
            previous = value;
        }
    }

    #[test]
    fn rho_bi_examples() {
        // The clique on four vertices is also the tight 4-cycle.
        let k4 = Hypergraph::clique(3, 4).unwrap();
        let result = rho_bi(&k4, 1.0).unwrap();
        assert!((result.value - 0.75).abs() < 1e-10);
        assert_eq!(result.branch, "hubs");
        // Irregular partite graph: linear hub branch only.
        let h = Hypergraph::complete_r_partite(3, &[1, 2, 2]).unwrap();
        for delta in [0.5, 2.0] {
            let result = rho_bi(&h, delta).unwrap();
            assert!((result.value - 3.0 * delta).abs() < 1e-9);
            assert_eq!(result.branch, "hubs");
        }
    }

    #[test]
    fn rho_new_branches_on_the_exact_matching_number() {
        // Regular graphs attain nu* = |E|/degree, so both rates agree.
        for h in [
            Hypergraph::fano(),
            Hypergraph::tight_cycle(3, 7).unwrap(),
            Hypergraph::clique(3, 4).unwrap(),
        ] {
            for delta in [0.5, 1.0, 12.0] {
                let bi = rho_bi(&h, delta).unwrap();
                let new = rho_new(&h, delta).unwrap();
                assert!((bi.value - new.value).abs() < 1e-12);
            }
        }
        // All edges share the singleton part, so nu* = 1 = |E|/degree and
        // the clique branch undercuts the hub branch.
        let h = Hypergraph::complete_r_partite(3, &[1, 2, 2]).unwrap();
        let new = rho_new(&h, 0.5).unwrap();
        assert!((new.value - 0.5).abs() < 1e-10);
        assert_eq!(new.branch, "clique");
        assert!((rho_bi(&h, 0.5).unwrap().value - 1.5).abs() < 1e-9);
    }

    #[test]
    fn closed_forms_match_pinned_values() {
        let clique = ClosedFormFamily::Clique { r: 3, k: 4 };
        assert!((closed_form(&clique, 1.0).unwrap().value - 0.75).abs() < 1e-12);
        let fano = ClosedFormFamily::Fano;
        let at7 = closed_form(&fano, 7.0).unwrap();
        assert!((at7.value - 7f64.powf(3.0 / 7.0)).abs() < 1e-12);
        assert_eq!(at7.branch, "value 1/3");
        let fme = ClosedFormFamily::FanoMinusEdge;
        let at4 = closed_form(&fme, 4.0).unwrap();
        assert!((at4.value - 0.5).abs() < 1e-12);
        assert_eq!(at4.branch, "value 1");
        let partite = ClosedFormFamily::RpartiteRegular { r: 3, m: 2 };
        let at1 = closed_form(&partite, 1.0).unwrap();
        assert!((at1.value - (2.0 * 3.0f64.sqrt() - 3.0)).abs() < 1e-12);
        let minpart = ClosedFormFamily::RpartiteMin {
            parts: vec![1, 2, 2],
        };
        assert!((closed_form(&minpart, 2.0).unwrap().value - 6.0).abs() < 1e-12);
        assert!(matches!(
            closed_form(
                &ClosedFormFamily::RpartiteMin {
                    parts: vec![2, 2, 2]
                },
                1.0
            ),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn cycle_subgraph_closed_form_uses_beta() {
        let c7 = Hypergraph::tight_cycle(3, 7).unwrap();
        let star = c7.star_of_set(&[0]).unwrap();
        let family = ClosedFormFamily::CycleSubgraph { graph: star };
        // The star has a single maximum-degree vertex, so beta = delta.
        let result = closed_form(&family, 0.4).unwrap();
        assert!((result.value - 1.2).abs() < 1e-10);
        // The full cycle is not a proper subgraph.
        assert!(matches!(
            closed_form(&ClosedFormFamily::CycleSubgraph { graph: c7 }, 1.0),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn separable_minimum_on_the_plane_instance() {
        let costs = vec![3.0, 3.0, 1.0];
        let funcs: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(|a| 7.0 * a),
            Box::new(|a| 7.0 * a * a),
            Box::new(|a| a.powf(7.0 / 3.0)),
        ];
        let result = minimize_separable(&costs, &funcs, 1.0).unwrap();
        assert!((result.value - 3.0 / 7.0).abs() < 1e-10);
        assert_eq!(result.index, 0);
        let zero = minimize_separable(&costs, &funcs, 0.0).unwrap();
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn separable_axis_dominates_random_interior_points() {
        let costs = vec![1.0, 2.0, 0.5];
        let make_funcs = || -> Vec<Box<dyn Fn(f64) -> f64>> {
            vec![
                Box::new(|a: f64| a.powf(1.5)),
                Box::new(|a: f64| 3.0 * a + a * a),
                Box::new(|a: f64| a.powf(2.5)),
            ]
        };
        let funcs = make_funcs();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let point: Vec<f64> = (0..3).map(|_| rng.random::<f64>() * 3.0).collect();
            let reached: f64 = funcs.iter().zip(&point).map(|(f, &x)| f(x)).sum();
            if reached <= 0.0 {
                continue;
            }
            let cost: f64 = costs.iter().zip(&point).map(|(c, &x)| c * x).sum();
            let axis = minimize_separable(&costs, &make_funcs(), reached).unwrap();
            assert!(axis.value <= cost + 1e-9);
        }
    }

    #[test]
    fn separable_rejects_non_monotone_functions() {
        let costs = vec![1.0];
        let funcs: Vec<Box<dyn Fn(f64) -> f64>> = vec![Box::new(|a: f64| (a * 3.0).sin())];
        assert!(matches!(
            minimize_separable(&costs, &funcs, 0.5),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn rate_result_serializes_compactly() {
        let result = rho_lz(&Hypergraph::fano(), 1.0).unwrap();
        let json = serde_json::to_value(&result).unwrap();
        assert_eq!(json["solver"], "structured");
        assert_eq!(json["branch"], "value 1");
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let edgeless = Hypergraph::new(3, 4, vec![]).unwrap();
        assert!(matches!(rho_lz(&edgeless, 1.0), Err(Error::Input(_))));
        assert!(matches!(rho_bi(&edgeless, 1.0), Err(Error::Input(_))));
        assert!(matches!(
            rho_lz(&Hypergraph::fano(), -0.5),
            Err(Error::Input(_))
        ));
    }
}
