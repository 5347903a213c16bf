//! Weighted homomorphism densities and the finite-`n` variational problem.
//!
//! A weighted `r`-graph assigns a value in `[0, 1]` to every `r`-subset of
//! `[n]`. The density `t(H, Q)` averages, over all maps `V(H) → [n]`, the
//! product of edge weights, with a kernel that vanishes whenever an edge's
//! image has a repeated vertex. Evaluation runs by variable elimination
//! along a greedy minimum-fill order, and the gradient in the edge weights
//! comes from per-edge pinned marginal tensors scattered onto `r`-subsets.
//!
//! On top of the density sit the relative-entropy functionals `I_p`/`J_p`,
//! a seeded sampler whose per-edge streams make it order-independent,
//! planted clique and hub constructions with their exact entropy costs, a
//! projected-gradient upper-bound solver for the constrained entropy
//! minimization, and a numeric checker for the weighted Hölder inequality
//! that underpins the density upper bounds.

use std::collections::BTreeMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest tensor (in cells) the contraction engine will allocate.
pub const TENSOR_CELL_CAP: usize = 1 << 25;
/// Work cap for the brute-force Hölder verification.
pub const FINNER_WORK_CAP: u64 = 100_000_000;
/// Default budget, in gradient evaluations, for the upper-bound solver.
pub const DEFAULT_NMF_BUDGET: u64 = 400;

/// A weighted `r`-graph on `[n]`: a default weight plus sparse overrides,
/// keyed on sorted `r`-subsets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeightedRGraph", into = "RawWeightedRGraph")]
pub struct WeightedRGraph {
    n: usize,
    r: usize,
    default_q: f64,
    overrides: BTreeMap<Vec<usize>, f64>,
}

/// The serialization shape: `{n, r, default_q, overrides: [[edge, q]]}`.
#[derive(Serialize, Deserialize)]
struct RawWeightedRGraph {
    n: usize,
    r: usize,
    default_q: f64,
    overrides: Vec<(Vec<usize>, f64)>,
}

impl TryFrom<RawWeightedRGraph> for WeightedRGraph {
    type Error = Error;

    fn try_from(raw: RawWeightedRGraph) -> Result<Self> {
        let mut out = WeightedRGraph::constant(raw.n, raw.r, raw.default_q)?;
        for (edge, q) in raw.overrides {
            out.set(&edge, q)?;
        }
        Ok(out)
    }
}

impl From<WeightedRGraph> for RawWeightedRGraph {
    fn from(g: WeightedRGraph) -> Self {
        RawWeightedRGraph {
            n: g.n,
            r: g.r,
            default_q: g.default_q,
            overrides: g.overrides.into_iter().collect(),
        }
    }
}

fn check_weight(q: f64) -> Result<()> {
    if !q.is_finite() || !(0.0..=1.0).contains(&q) {
        return Err(Error::Input(format!(
            "edge weights must lie in [0, 1], got {q}"
        )));
    }
    Ok(())
}

impl WeightedRGraph {
    /// The constant-`q` weighted graph on `[n]`.
    pub fn constant(n: usize, r: usize, q: f64) -> Result<Self> {
        if r < 2 || n < r {
            return Err(Error::Input(format!(
                "a weighted graph needs n >= r >= 2, got n={n}, r={r}"
            )));
        }
        check_weight(q)?;
        Ok(WeightedRGraph {
            n,
            r,
            default_q: q,
            overrides: BTreeMap::new(),
        })
    }

    /// Sets the weight of one `r`-subset, in any vertex order.
    pub fn set(&mut self, edge: &[usize], q: f64) -> Result<()> {
        check_weight(q)?;
        let key = self.checked_edge(edge)?;
        self.overrides.insert(key, q);
        Ok(())
    }

    /// The weight of one `r`-subset, in any vertex order.
    pub fn weight(&self, edge: &[usize]) -> Result<f64> {
        let key = self.checked_edge(edge)?;
        Ok(self.lookup_sorted(&key))
    }

    fn checked_edge(&self, edge: &[usize]) -> Result<Vec<usize>> {
        let mut key = edge.to_vec();
        key.sort_unstable();
        if key.len() != self.r
            || key.windows(2).any(|w| w[0] == w[1])
            || key.last().is_some_and(|&v| v >= self.n)
        {
            return Err(Error::Input(format!(
                "{edge:?} is not an {}-subset of 0..{}",
                self.r, self.n
            )));
        }
        Ok(key)
    }

    fn lookup_sorted(&self, key: &[usize]) -> f64 {
        self.overrides.get(key).copied().unwrap_or(self.default_q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn default_q(&self) -> f64 {
        self.default_q
    }

    /// The explicitly stored overrides, keyed on sorted subsets.
    pub fn overrides(&self) -> impl Iterator<Item = (&Vec<usize>, f64)> {
        self.overrides.iter().map(|(e, &q)| (e, q))
    }
}

/// `C(n, k)` without overflow for the sizes used here.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// The colexicographic index of a sorted subset: `Σ C(edge[i], i+1)`.
fn colex_index(edge: &[usize]) -> usize {
    edge.iter()
        .enumerate()
        .map(|(i, &v)| binomial(v, i + 1) as usize)
        .sum()
}

/// Calls `f` on every sorted `r`-subset of `[n]`, lexicographically.
fn for_each_r_subset(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r == 0 || r > n {
        return;
    }
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        f(&c);
        let mut i = r;
        while i > 0 && c[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        c[i - 1] += 1;
        for j in i..r {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// `n^k` guarded by the tensor cell cap.
fn checked_cells(n: usize, k: usize) -> Result<usize> {
    let mut out: usize = 1;
    for _ in 0..k {
        out = out.checked_mul(n).filter(|&c| c <= TENSOR_CELL_CAP).ok_or_else(|| {
            Error::Capacity(format!(
                "contraction would allocate a tensor beyond {TENSOR_CELL_CAP} cells"
            ))
        })?;
    }
    Ok(out)
}

/// A dense tensor over `[n]^scope`, row-major in ascending scope order.
#[derive(Clone)]
struct Tensor {
    scope: Vec<usize>,
    data: Rc<Vec<f64>>,
}

/// Multiplies the tensors on the union of their scopes and sums out `v`.
fn contract_out(tensors: &[&Tensor], v: usize, n: usize) -> Result<Tensor> {
    let mut union: Vec<usize> = tensors
        .iter()
        .flat_map(|t| t.scope.iter().copied())
        .collect();
    union.sort_unstable();
    union.dedup();
    let out: Vec<usize> = union.iter().copied().filter(|&u| u != v).collect();
    checked_cells(n, union.len())?;
    let cells = checked_cells(n, out.len())?;

    // Per tensor: the stride each output digit contributes to its flat
    // index, plus the stride of the summed variable.
    let plans: Vec<(Vec<usize>, usize, &[f64])> = tensors
        .iter()
        .map(|t| {
            let mut strides = vec![0usize; out.len()];
            let mut v_stride = 0usize;
            for (pos, &var) in t.scope.iter().enumerate() {
                let stride = n.pow((t.scope.len() - 1 - pos) as u32);
                if var == v {
                    v_stride = stride;
                } else {
                    let j = out.binary_search(&var).expect("scope is inside the union");
                    strides[j] = stride;
                }
            }
            (strides, v_stride, t.data.as_slice())
        })
        .collect();

    let mut data = vec![0.0; cells];
    let mut digits = vec![0usize; out.len()];
    for cell in data.iter_mut() {
        let mut sum = 0.0;
        let bases: Vec<usize> = plans
            .iter()
            .map(|(strides, _, _)| {
                strides
                    .iter()
                    .zip(&digits)
                    .map(|(s, d)| s * d)
                    .sum::<usize>()
            })
            .collect();
        for xv in 0..n {
            let mut product = 1.0;
            for ((_, v_stride, table), base) in plans.iter().zip(&bases) {
                product *= table[base + xv * v_stride];
            }
            sum += product;
        }
        *cell = sum;
        for j in (0..digits.len()).rev() {
            digits[j] += 1;
            if digits[j] < n {
                break;
            }
            digits[j] = 0;
        }
    }
    Ok(Tensor {
        scope: out,
        data: Rc::new(data),
    })
}

/// Multiplies tensors over the union of their scopes without summing.
fn multiply_all(tensors: &[&Tensor], n: usize) -> Result<Tensor> {
    if tensors.is_empty() {
        return Ok(Tensor {
            scope: Vec::new(),
            data: Rc::new(vec![1.0]),
        });
    }
    let mut union: Vec<usize> = tensors
        .iter()
        .flat_map(|t| t.scope.iter().copied())
        .collect();
    union.sort_unstable();
    union.dedup();
    let cells = checked_cells(n, union.len())?;
    let plans: Vec<(Vec<usize>, &[f64])> = tensors
        .iter()
        .map(|t| {
            let mut strides = vec![0usize; union.len()];
            for (pos, &var) in t.scope.iter().enumerate() {
                let stride = n.pow((t.scope.len() - 1 - pos) as u32);
                let j = union.binary_search(&var).expect("scope inside union");
                strides[j] = stride;
            }
            (strides, t.data.as_slice())
        })
        .collect();
    let mut data = vec![0.0; cells];
    let mut digits = vec![0usize; union.len()];
    for cell in data.iter_mut() {
        let mut product = 1.0;
        for (strides, table) in &plans {
            let idx: usize = strides.iter().zip(&digits).map(|(s, d)| s * d).sum();
            product *= table[idx];
        }
        *cell = product;
        for j in (0..digits.len()).rev() {
            digits[j] += 1;
            if digits[j] < n {
                break;
            }
            digits[j] = 0;
        }
    }
    Ok(Tensor {
        scope: union,
        data: Rc::new(data),
    })
}

/// An elimination order with the per-step intermediate supports.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionPlan {
    /// The vertices of the pattern graph, in elimination order.
    pub order: Vec<usize>,
    /// The support of the tensor created by each step, after summing.
    pub supports: Vec<Vec<usize>>,
    /// The largest support size over all steps.
    pub width: usize,
}

/// Greedy minimum-fill order over the given candidates, on the
/// co-occurrence structure of the given scopes. Ties break to the smallest
/// vertex.
fn min_fill_order(
    scopes: &[Vec<usize>],
    candidates: &[usize],
    n_vars: usize,
) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut adjacent = vec![vec![false; n_vars]; n_vars];
    for scope in scopes {
        for (i, &a) in scope.iter().enumerate() {
            for &b in &scope[i + 1..] {
                adjacent[a][b] = true;
                adjacent[b][a] = true;
            }
        }
    }
    let mut remaining: Vec<usize> = candidates.to_vec();
    let mut order = Vec::with_capacity(remaining.len());
    let mut supports = Vec::with_capacity(remaining.len());
    let mut active = vec![false; n_vars];
    for &v in candidates {
        active[v] = true;
    }
    // Vertices never eliminated (pinned) still count as neighbors.
    while !remaining.is_empty() {
        let mut best = (usize::MAX, usize::MAX);
        for &v in &remaining {
            let neighbors: Vec<usize> = (0..n_vars)
                .filter(|&u| u != v && adjacent[v][u] && (active[u] || !candidates.contains(&u)))
                .collect();
            let mut fill = 0;
            for (i, &a) in neighbors.iter().enumerate() {
                for &b in &neighbors[i + 1..] {
                    if !adjacent[a][b] {
                        fill += 1;
                    }
                }
            }
            if (fill, v) < best {
                best = (fill, v);
            }
        }
        let v = best.1;
        let neighbors: Vec<usize> = (0..n_vars)
            .filter(|&u| u != v && adjacent[v][u] && (active[u] || !candidates.contains(&u)))
            .collect();
        for (i, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[i + 1..] {
                adjacent[a][b] = true;
                adjacent[b][a] = true;
            }
        }
        for u in 0..n_vars {
            adjacent[v][u] = false;
            adjacent[u][v] = false;
        }
        active[v] = false;
        remaining.retain(|&u| u != v);
        order.push(v);
        supports.push(neighbors);
    }
    (order, supports)
}

/// Plans the elimination of all of `h`'s vertices by greedy minimum fill.
pub fn contraction_plan(h: &Hypergraph) -> ContractionPlan {
    let all: Vec<usize> = (0..h.n_vertices()).collect();
    let (order, supports) = min_fill_order(h.edges(), &all, h.n_vertices());
    let width = supports.iter().map(|s| s.len()).max().unwrap_or(0);
    ContractionPlan {
        order,
        supports,
        width,
    }
}

/// Builds the shared symmetric kernel tensor on `[n]^r`: zero on tuples
/// with a repeated coordinate, the looked-up weight otherwise.
fn kernel_tensor(n: usize, r: usize, lookup: &dyn Fn(&[usize]) -> f64) -> Result<Rc<Vec<f64>>> {
    let cells = checked_cells(n, r)?;
    let mut data = vec![0.0; cells];
    let mut digits = vec![0usize; r];
    let mut key = vec![0usize; r];
    for cell in data.iter_mut() {
        key.copy_from_slice(&digits);
        key.sort_unstable();
        if key.windows(2).all(|w| w[0] != w[1]) {
            *cell = lookup(&key);
        }
        for j in (0..r).rev() {
            digits[j] += 1;
            if digits[j] < n {
                break;
            }
            digits[j] = 0;
        }
    }
    Ok(Rc::new(data))
}

/// Eliminates `order` from the factor list, returning the product of fully
/// contracted scalars, the untouched remaining factors, and how many
/// eliminated vertices sat in no factor at all.
fn eliminate_vertices(
    mut factors: Vec<Tensor>,
    order: &[usize],
    n: usize,
) -> Result<(f64, Vec<Tensor>, u32)> {
    let mut scalar = 1.0;
    let mut factorless = 0u32;
    for &v in order {
        let (with_v, rest): (Vec<Tensor>, Vec<Tensor>) = factors
            .into_iter()
            .partition(|t| t.scope.binary_search(&v).is_ok());
        factors = rest;
        if with_v.is_empty() {
            factorless += 1;
            continue;
        }
        let refs: Vec<&Tensor> = with_v.iter().collect();
        let contracted = contract_out(&refs, v, n)?;
        if contracted.scope.is_empty() {
            scalar *= contracted.data[0];
        } else {
            factors.push(contracted);
        }
    }
    Ok((scalar, factors, factorless))
}

fn edge_factors(h: &Hypergraph, kernel: &Rc<Vec<f64>>) -> Vec<Tensor> {
    h.edges()
        .iter()
        .map(|e| Tensor {
            scope: e.clone(),
            data: Rc::clone(kernel),
        })
        .collect()
}

fn density_from_kernel(h: &Hypergraph, n: usize, kernel: &Rc<Vec<f64>>) -> Result<f64> {
    let plan = contraction_plan(h);
    let (scalar, rest, factorless) = eliminate_vertices(edge_factors(h, kernel), &plan.order, n)?;
    debug_assert!(rest.is_empty());
    drop(rest);
    let exponent = factorless as i32 - h.n_vertices() as i32;
    Ok(scalar * (n as f64).powi(exponent))
}

/// The homomorphism density `t(h, q)`: the average over all maps
/// `V(h) → [n]` of the product of edge weights, with the kernel vanishing
/// on edges whose image repeats a vertex. Evaluated by variable
/// elimination along a greedy minimum-fill plan.
pub fn t_density(h: &Hypergraph, q: &WeightedRGraph) -> Result<f64> {
    if h.r() != q.r() {
        return Err(Error::Input(format!(
            "uniformity mismatch: pattern has r={}, weights have r={}",
            h.r(),
            q.r()
        )));
    }
    let kernel = kernel_tensor(q.n(), q.r(), &|key| q.lookup_sorted(key))?;
    density_from_kernel(h, q.n(), &kernel)
}

fn gradient_from_kernel(h: &Hypergraph, n: usize, kernel: &Rc<Vec<f64>>) -> Result<(f64, Vec<f64>)> {
    let r = h.r();
    let value = density_from_kernel(h, n, kernel)?;
    let mut grad = vec![0.0; binomial(n, r) as usize];
    let all: Vec<usize> = (0..h.n_vertices()).collect();
    for (ei, edge) in h.edges().iter().enumerate() {
        // Pin the edge's vertices and eliminate everything else from the
        // product of the other factors.
        let others: Vec<Tensor> = edge_factors(h, kernel)
            .into_iter()
            .enumerate()
            .filter(|(j, _)| *j != ei)
            .map(|(_, t)| t)
            .collect();
        let scopes: Vec<Vec<usize>> = others.iter().map(|t| t.scope.clone()).collect();
        let candidates: Vec<usize> = all
            .iter()
            .copied()
            .filter(|v| edge.binary_search(v).is_err())
            .collect();
        let (order, _) = min_fill_order(&scopes, &candidates, h.n_vertices());
        let (scalar, rest, factorless) = eliminate_vertices(others, &order, n)?;
        let refs: Vec<&Tensor> = rest.iter().collect();
        let marginal = multiply_all(&refs, n)?;
        debug_assert!(marginal.scope.iter().all(|v| edge.binary_search(v).is_ok()));
        // Positions of the marginal's variables within the edge tuple.
        let positions: Vec<usize> = marginal
            .scope
            .iter()
            .map(|v| edge.binary_search(v).expect("marginal scope inside edge"))
            .collect();
        let norm = scalar * (n as f64).powi(factorless as i32 - h.n_vertices() as i32);

        let cells = checked_cells(n, r)?;
        let mut digits = vec![0usize; r];
        let mut key = vec![0usize; r];
        for _ in 0..cells {
            key.copy_from_slice(&digits);
            key.sort_unstable();
            if key.windows(2).all(|w| w[0] != w[1]) {
                let mut idx = 0usize;
                for (k, &pos) in positions.iter().enumerate() {
                    idx += digits[pos] * n.pow((positions.len() - 1 - k) as u32);
                }
                grad[colex_index(&key)] += marginal.data[idx] * norm;
            }
            for j in (0..r).rev() {
                digits[j] += 1;
                if digits[j] < n {
                    break;
                }
                digits[j] = 0;
            }
        }
    }
    Ok((value, grad))
}

/// The density and its gradient in every edge weight, indexed by the
/// colexicographic index of the sorted `r`-subset.
pub fn t_gradient(h: &Hypergraph, q: &WeightedRGraph) -> Result<(f64, Vec<f64>)> {
    if h.r() != q.r() {
        return Err(Error::Input(format!(
            "uniformity mismatch: pattern has r={}, weights have r={}",
            h.r(),
            q.r()
        )));
    }
    let kernel = kernel_tensor(q.n(), q.r(), &|key| q.lookup_sorted(key))?;
    gradient_from_kernel(h, q.n(), &kernel)
}

/// The relative entropy of Bernoulli(`q`) with respect to Bernoulli(`p`),
/// extended continuously to `q ∈ {0, 1}`.
pub fn i_p(q: f64, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) || !q.is_finite() {
        return Err(Error::Input(format!("q must lie in [0, 1], got {q}")));
    }
    check_p(p)?;
    let mut out = 0.0;
    if q > 0.0 {
        out += q * (q / p).ln();
    }
    if q < 1.0 {
        out += (1.0 - q) * ((1.0 - q) / (1.0 - p)).ln();
    }
    Ok(out)
}

/// `J_p(x) = I_p(p + x) / log(1/p)` for `x ∈ [−p, 1−p]`.
pub fn j_p(x: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if !x.is_finite() || x < -p - 1e-15 || x > 1.0 - p + 1e-15 {
        return Err(Error::Input(format!(
            "x must lie in [-p, 1-p], got {x} at p={p}"
        )));
    }
    Ok(i_p((p + x).clamp(0.0, 1.0), p)? / (1.0 / p).ln())
}

fn check_p(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::Input(format!(
            "p must lie strictly between 0 and 1, got {p}"
        )));
    }
    Ok(())
}

/// `I_p(Q) = Σ_e I_p(q_e)` over all `C(n, r)` subsets, default entries
/// included.
pub fn entropy_ip(q: &WeightedRGraph, p: f64) -> Result<f64> {
    check_p(p)?;
    let total = binomial(q.n(), q.r()) as f64;
    let default_cost = i_p(q.default_q(), p)?;
    let mut out = (total - q.overrides.len() as f64) * default_cost;
    for (_, weight) in q.overrides() {
        out += i_p(weight, p)?;
    }
    Ok(out)
}

/// Samples the binomial random `r`-graph: every `r`-subset appears
/// independently with probability `p`, driven by a per-edge stream of a
/// seeded generator so the outcome does not depend on iteration order.
pub fn sample_gnp(n: usize, r: usize, p: f64, seed: u64) -> Result<WeightedRGraph> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::Input(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut out = WeightedRGraph::constant(n, r, 0.0)?;
    for_each_r_subset(n, r, |edge| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(colex_index(edge) as u64);
        if rng.random::<f64>() < p {
            out.overrides.insert(edge.to_vec(), 1.0);
        }
    });
    Ok(out)
}

/// A planted construction: the modified graph and its exact entropy cost.
#[derive(Debug, Clone, Serialize)]
pub struct Planted {
    pub graph: WeightedRGraph,
    /// `I_p` of the graph, which is `log(1/p)` per modified subset.
    pub cost: f64,
}

/// Plants a clique: weight 1 on every `r`-subset of the given vertices,
/// `p` elsewhere.
pub fn plant_clique(n: usize, r: usize, p: f64, clique: &[usize]) -> Result<Planted> {
    check_p(p)?;
    let mut graph = WeightedRGraph::constant(n, r, p)?;
    let mut verts = clique.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != clique.len() || verts.last().is_some_and(|&v| v >= n) {
        return Err(Error::Input(format!(
            "clique vertices must be distinct and inside 0..{n}"
        )));
    }
    for_each_r_subset(verts.len(), r, |positions| {
        let edge: Vec<usize> = positions.iter().map(|&i| verts[i]).collect();
        graph.overrides.insert(edge, 1.0);
    });
    let cost = entropy_ip(&graph, p)?;
    Ok(Planted { graph, cost })
}

/// Plants hubs: weight 1 on every `r`-subset meeting the hub set, `p`
/// elsewhere.
pub fn plant_hubs(n: usize, r: usize, p: f64, hubs: &[usize]) -> Result<Planted> {
    check_p(p)?;
    let mut graph = WeightedRGraph::constant(n, r, p)?;
    let mut set = hubs.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != hubs.len() || set.last().is_some_and(|&v| v >= n) {
        return Err(Error::Input(format!(
            "hub vertices must be distinct and inside 0..{n}"
        )));
    }
    for_each_r_subset(n, r, |edge| {
        if edge.iter().any(|v| set.binary_search(v).is_ok()) {
            graph.overrides.insert(edge.to_vec(), 1.0);
        }
    });
    let cost = entropy_ip(&graph, p)?;
    Ok(Planted { graph, cost })
}

/// The outcome of the upper-bound solver: a weighted graph, its entropy,
/// its density, whether the density constraint is met, and how many
/// gradient evaluations were spent.
#[derive(Debug, Clone, Serialize)]
pub struct NmfSolution {
    pub q: WeightedRGraph,
    /// `I_p(q)`: the reported upper bound when feasible.
    pub value: f64,
    /// The achieved density `t(h, q)`.
    pub t: f64,
    /// Whether `t` reaches the target within the `1e-12` slack.
    pub feasible: bool,
    pub gradient_evals: u64,
}

/// Numerically upper-bounds the constrained entropy minimum: the least
/// `I_p(Q)` over weighted graphs with `t(h, Q) ≥ (1+δ)p^{|E(h)|}`.
///
/// Clique and hub plantings are swept for the cheapest feasible start,
/// then projected gradient descent with an augmented-Lagrangian penalty
/// refines it; the answer is the better of the refined point and the best
/// sweep, so it never exceeds the swept optimum. `budget` caps gradient
/// evaluations. If no feasible point is found, the error carries the best
/// infeasible iterate. At `δ = 0` the constant graph is returned by
/// convention, although the repeated-coordinate kernel keeps finite-`n`
/// densities slightly below `p^{|E|}`.
pub fn nmf_upper_bound(
    h: &Hypergraph,
    n: usize,
    p: f64,
    delta: f64,
    budget: u64,
) -> Result<NmfSolution> {
    check_p(p)?;
    if h.edge_count() == 0 {
        return Err(Error::Input(
            "the density constraint needs a pattern with at least one edge".to_owned(),
        ));
    }
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::Input(format!(
            "delta must be finite and nonnegative, got {delta}"
        )));
    }
    let constant = WeightedRGraph::constant(n, h.r(), p)?;
    if delta == 0.0 {
        let t = t_density(h, &constant)?;
        return Ok(NmfSolution {
            q: constant,
            value: 0.0,
            t,
            feasible: true,
            gradient_evals: 0,
        });
    }
    let target = (1.0 + delta) * p.powi(h.edge_count() as i32);
    let feasible_at = |t: f64| t >= target - 1e-12;

    // Sweep the planted constructions; costs grow with size, so the first
    // feasible size is the cheapest of its family.
    let mut best_construction: Option<(f64, WeightedRGraph, f64)> = None;
    let mut best_infeasible: Option<(f64, WeightedRGraph, f64)> = None;
    let mut track = |cost: f64, t: f64, graph: &WeightedRGraph| {
        if feasible_at(t) {
            if best_construction.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                best_construction = Some((cost, graph.clone(), t));
            }
        } else if best_infeasible.as_ref().is_none_or(|(_, _, bt)| t > *bt) {
            best_infeasible = Some((cost, graph.clone(), t));
        }
    };
    for m in h.r()..=n {
        let planted = plant_clique(n, h.r(), p, &(0..m).collect::<Vec<_>>())?;
        let t = t_density(h, &planted.graph)?;
        track(planted.cost, t, &planted.graph);
        if feasible_at(t) {
            break;
        }
    }
    for s in 1..=n {
        let planted = plant_hubs(n, h.r(), p, &(0..s).collect::<Vec<_>>())?;
        let t = t_density(h, &planted.graph)?;
        track(planted.cost, t, &planted.graph);
        if feasible_at(t) {
            break;
        }
    }

    let Some((sweep_cost, sweep_graph, sweep_t)) = best_construction else {
        let (cost, graph, t) = best_infeasible.expect("the sweep always evaluates a graph");
        let best = NmfSolution {
            q: graph,
            value: cost,
            t,
            feasible: false,
            gradient_evals: 0,
        };
        return Err(Error::NmfInfeasible {
            message: format!(
                "no weighted graph on {n} vertices reaches the density target {target:.3e}"
            ),
            best: Box::new(best),
        });
    };

    // Refine by projected gradient with an augmented Lagrangian on the
    // relative constraint gap c(x) = (target - t)/target <= 0.
    let r = h.r();
    let dim = binomial(n, r) as usize;
    let clamp = |x: f64| x.clamp(1e-9, 1.0 - 1e-9);
    let mut x = vec![p; dim];
    for (edge, w) in sweep_graph.overrides() {
        x[colex_index(edge)] = clamp(w);
    }
    let log_odds = |q: f64| (q * (1.0 - p) / (p * (1.0 - q))).ln();
    let entropy = |x: &[f64]| -> f64 {
        x.iter()
            .map(|&q| {
                q * (q / p).ln() + (1.0 - q) * ((1.0 - q) / (1.0 - p)).ln()
            })
            .sum()
    };
    let mut evals: u64 = 0;
    let mut density_and_grad = |x: &[f64]| -> Result<(f64, Vec<f64>)> {
        evals += 1;
        let kernel = kernel_tensor(n, r, &|key| x[colex_index(key)])?;
        gradient_from_kernel(h, n, &kernel)
    };

    let mut lambda = 0.0f64;
    let mut mu = 10.0;
    let mut step = 1.0;
    let mut solver_best: Option<(f64, Vec<f64>, f64)> = None;
    'outer: while evals < budget {
        for _ in 0..15 {
            if evals >= budget {
                break 'outer;
            }
            let (t, dt) = density_and_grad(&x)?;
            if feasible_at(t) {
                let cost = entropy(&x);
                if solver_best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                    solver_best = Some((cost, x.clone(), t));
                }
            }
            let gap = (target - t) / target;
            let active = (lambda + mu * gap).max(0.0);
            let lagrangian = |f: f64, c: f64| f + 0.5 / mu * ((lambda + mu * c).max(0.0).powi(2) - lambda * lambda);
            let l0 = lagrangian(entropy(&x), gap);
            let grad: Vec<f64> = (0..dim)
                .map(|i| log_odds(x[i]) - active / target * dt[i])
                .collect();
            // Backtracking projected step on the augmented objective,
            // charging the budget only for the gradient above.
            let mut alpha = step;
            let mut accepted = false;
            for _ in 0..30 {
                let candidate: Vec<f64> = (0..dim)
                    .map(|i| clamp(x[i] - alpha * grad[i]))
                    .collect();
                let kernel = kernel_tensor(n, r, &|key| candidate[colex_index(key)])?;
                let t_new = density_from_kernel(h, n, &kernel)?;
                let gap_new = (target - t_new) / target;
                let l_new = lagrangian(entropy(&candidate), gap_new);
                let moved: f64 = (0..dim)
                    .map(|i| (candidate[i] - x[i]).powi(2))
                    .sum();
                if l_new <= l0 - 1e-4 * moved / alpha.max(1e-18) {
                    x = candidate;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
            step = (alpha * 2.0).min(1.0);
        }
        let (t, _) = density_and_grad(&x)?;
        let gap = (target - t) / target;
        lambda = (lambda + mu * gap).max(0.0);
        if gap > 1e-12 {
            mu *= 10.0;
        } else if solver_best.as_ref().is_some_and(|(c, _, _)| {
            (entropy(&x) - c).abs() < 1e-10 * (1.0 + c.abs())
        }) {
            break;
        }
        if mu > 1e12 {
            break;
        }
    }

    // The answer never exceeds the best swept construction.
    let (value, q, t) = match solver_best {
        Some((cost, x, t)) if cost < sweep_cost => {
            let mut q = WeightedRGraph::constant(n, r, p)?;
            for_each_r_subset(n, r, |edge| {
                let w = x[colex_index(edge)];
                if (w - p).abs() > 1e-12 {
                    q.overrides.insert(edge.to_vec(), w);
                }
            });
            (cost, q, t)
        }
        _ => (sweep_cost, sweep_graph, sweep_t),
    };
    Ok(NmfSolution {
        q,
        value,
        t,
        feasible: true,
        gradient_evals: evals,
    })
}

/// Verifies the weighted Hölder inequality for the pattern `f_graph`: the
/// average over all maps `V → X` of `Π_e f(x_e)` is at most
/// `Π_e ‖f‖_{1/λ_e}`, within a `1e-10` slack. The table lists `f` on
/// `X^r`, row-major; entries must be nonnegative, and the weights must
/// satisfy `Σ_{e ∋ v} λ_e ≤ 1` at every vertex.
pub fn finner_check(
    f_graph: &Hypergraph,
    table: &[f64],
    x_size: usize,
    weights: &[f64],
) -> Result<bool> {
    let r = f_graph.r();
    if x_size == 0 {
        return Err(Error::Input("the base set must be nonempty".to_owned()));
    }
    let cells = x_size.pow(r as u32);
    if table.len() != cells {
        return Err(Error::Input(format!(
            "the table must list {cells} values, got {}",
            table.len()
        )));
    }
    if table.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Input(
            "the table must be nonnegative and finite".to_owned(),
        ));
    }
    if weights.len() != f_graph.edge_count() {
        return Err(Error::Input(format!(
            "expected {} weights, got {}",
            f_graph.edge_count(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Input("weights must be nonnegative".to_owned()));
    }
    for v in 0..f_graph.n_vertices() {
        let sum: f64 = f_graph
            .edges()
            .iter()
            .zip(weights)
            .filter(|(e, _)| e.binary_search(&v).is_ok())
            .map(|(_, w)| w)
            .sum();
        if sum > 1.0 + 1e-12 {
            return Err(Error::Input(format!(
                "weights sum to {sum} at vertex {v}, exceeding 1"
            )));
        }
    }
    let n_vars = f_graph.n_vertices();
    let work = (x_size as u64)
        .checked_pow(n_vars as u32)
        .and_then(|maps| maps.checked_mul(f_graph.edge_count().max(1) as u64))
        .filter(|&w| w <= FINNER_WORK_CAP)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "verifying over {x_size}^{n_vars} maps exceeds the work cap"
            ))
        })?;
    let _ = work;

    // Left side: mean of the product over all maps.
    let mut digits = vec![0usize; n_vars];
    let maps = x_size.pow(n_vars as u32);
    let mut total = 0.0;
    for _ in 0..maps {
        let mut product = 1.0;
        for edge in f_graph.edges() {
            let mut idx = 0usize;
            for (k, &v) in edge.iter().enumerate() {
                idx += digits[v] * x_size.pow((r - 1 - k) as u32);
            }
            product *= table[idx];
        }
        total += product;
        for j in (0..n_vars).rev() {
            digits[j] += 1;
            if digits[j] < x_size {
                break;
            }
            digits[j] = 0;
        }
    }
    let lhs = total / maps as f64;

    // Right side: product of the L^{1/λ} norms under the uniform measure.
    let peak = table.iter().copied().fold(0.0, f64::max);
    let mut rhs = 1.0;
    for &lam in weights {
        let norm = if peak == 0.0 {
            0.0
        } else if lam == 0.0 {
            peak
        } else {
            let s = 1.0 / lam;
            let mean: f64 =
                table.iter().map(|&v| (v / peak).powf(s)).sum::<f64>() / cells as f64;
            peak * mean.powf(lam)
        };
        rhs *= norm;
    }
    Ok(lhs <= rhs + 1e-10)
}

/// The uniform-weight specialization: `t(F, f) ≤ ‖f‖_Δ^{|E(F)|}`, checked
/// with every weight equal to `1/Δ`.
pub fn finner_corollary_check(f_graph: &Hypergraph, table: &[f64], x_size: usize) -> Result<bool> {
    if f_graph.edge_count() == 0 {
        return Ok(true);
    }
    let lam = 1.0 / f_graph.max_degree() as f64;
    finner_check(
        f_graph,
        table,
        x_size,
        &vec![lam; f_graph.edge_count()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct summation over all maps, for cross-checking the contraction.
    fn brute_density(h: &Hypergraph, q: &WeightedRGraph) -> f64 {
        let n = q.n();
        let vars = h.n_vertices();
        let maps = n.pow(vars as u32);
        let mut digits = vec![0usize; vars];
        let mut total = 0.0;
        for _ in 0..maps {
            let mut product = 1.0;
            for edge in h.edges() {
                let mut key: Vec<usize> = edge.iter().map(|&v| digits[v]).collect();
                key.sort_unstable();
                if key.windows(2).any(|w| w[0] == w[1]) {
                    product = 0.0;
                    break;
                }
                product *= q.lookup_sorted(&key);
            }
            total += product;
            for j in (0..vars).rev() {
                digits[j] += 1;
                if digits[j] < n {
                    break;
                }
                digits[j] = 0;
            }
        }
        total / maps as f64
    }

    fn random_weights(n: usize, r: usize, seed: u64) -> WeightedRGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q = WeightedRGraph::constant(n, r, 0.5).unwrap();
        for_each_r_subset(n, r, |edge| {
            q.overrides.insert(edge.to_vec(), rng.random::<f64>());
        });
        q
    }

    #[test]
    fn weighted_graph_validates_and_roundtrips() {
        let mut q = WeightedRGraph::constant(5, 3, 0.25).unwrap();
        q.set(&[2, 0, 4], 0.75).unwrap();
        assert_eq!(q.weight(&[4, 0, 2]).unwrap(), 0.75);
        assert_eq!(q.weight(&[0, 1, 2]).unwrap(), 0.25);
        assert!(q.set(&[0, 1], 0.5).is_err());
        assert!(q.set(&[0, 1, 1], 0.5).is_err());
        assert!(q.set(&[0, 1, 5], 0.5).is_err());
        assert!(q.set(&[0, 1, 2], 1.5).is_err());
        let json = serde_json::to_string(&q).unwrap();
        assert!(json.contains("\"default_q\":0.25"));
        let back: WeightedRGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<WeightedRGraph>(
            "{\"n\":4,\"r\":3,\"default_q\":2.0,\"overrides\":[]}"
        )
        .is_err());
    }

    #[test]
    fn single_edge_density_counts_injective_tuples() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        for n in [4usize, 6, 9] {
            let p = 0.3;
            let q = WeightedRGraph::constant(n, 3, p).unwrap();
            let expected =
                6.0 * binomial(n, 3) as f64 * p / (n as f64).powi(3);
            assert!((t_density(&h, &q).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn contraction_matches_brute_force() {
        let triangle = Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let path = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let cycle = Hypergraph::tight_cycle(3, 5).unwrap();
        for (h, n) in [(&triangle, 6usize), (&path, 5), (&cycle, 6)] {
            let q = random_weights(n, h.r(), 42 + n as u64);
            let fast = t_density(h, &q).unwrap();
            let slow = brute_density(h, &q);
            assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        }
        // The plane's pattern needs a wide contraction.
        let fano = Hypergraph::fano();
        let ones = WeightedRGraph::constant(6, 3, 1.0).unwrap();
        let fast = t_density(&fano, &ones).unwrap();
        let slow = brute_density(&fano, &ones);
        assert!((fast - slow).abs() < 1e-12);
        let zeros = WeightedRGraph::constant(6, 3, 0.0).unwrap();
        assert_eq!(t_density(&fano, &zeros).unwrap(), 0.0);
    }

    #[test]
    fn density_is_monotone_in_each_weight() {
        let h = Hypergraph::tight_cycle(3, 5).unwrap();
        let mut q = random_weights(6, 3, 9);
        let before = t_density(&h, &q).unwrap();
        q.set(&[0, 1, 2], 1.0).unwrap();
        assert!(t_density(&h, &q).unwrap() >= before - 1e-15);
    }

    #[test]
    fn constant_density_approaches_the_power() {
        let c5 = Hypergraph::new(
            2,
            5,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
        )
        .unwrap();
        let qv = 0.6;
        let q = WeightedRGraph::constant(50, 2, qv).unwrap();
        let t = t_density(&c5, &q).unwrap();
        let relative = (t / qv.powi(5) - 1.0).abs();
        assert!(relative <= 2.0 * 25.0 / 50.0);
    }

    #[test]
    fn plan_width_stays_below_vertex_count() {
        for h in [
            Hypergraph::fano(),
            Hypergraph::tight_cycle(3, 7).unwrap(),
            Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap(),
        ] {
            let plan = contraction_plan(&h);
            assert_eq!(plan.order.len(), h.n_vertices());
            assert_eq!(plan.supports.len(), h.n_vertices());
            assert!(plan.width < h.n_vertices());
        }
    }

    #[test]
    fn entropy_values_and_domains() {
        let p = 0.3;
        assert_eq!(i_p(p, p).unwrap(), 0.0);
        assert!((i_p(1.0, p).unwrap() - (1.0 / p).ln()).abs() < 1e-15);
        assert!((i_p(0.0, p).unwrap() - (1.0 / (1.0 - p)).ln()).abs() < 1e-15);
        assert!(i_p(1.2, p).is_err());
        assert!(i_p(0.5, 0.0).is_err());
        assert_eq!(j_p(0.0, p).unwrap(), 0.0);
        assert!(j_p(0.9, 0.2).is_err());
        // The quadratic lower bound on a coarse grid.
        let p = 1e-3;
        for step in 0..=20 {
            let x = step as f64 * (1.0 - p) / 20.0;
            assert!(j_p(x, p).unwrap() >= x * x - 1e-12);
        }
    }

    #[test]
    fn planted_costs_match_the_counts() {
        let (n, r, p) = (10usize, 3usize, 0.2);
        let log_term = (1.0f64 / p).ln();
        let clique = plant_clique(n, r, p, &[0, 1, 2, 3, 4]).unwrap();
        assert!((clique.cost - binomial(5, 3) as f64 * log_term).abs() < 1e-10);
        let hubs = plant_hubs(n, r, p, &[0, 1]).unwrap();
        let modified = (binomial(10, 3) - binomial(8, 3)) as f64;
        assert!((hubs.cost - modified * log_term).abs() < 1e-10);
        let empty = plant_clique(n, r, p, &[]).unwrap();
        assert_eq!(empty.cost, 0.0);
        assert_eq!(empty.graph, WeightedRGraph::constant(n, r, p).unwrap());
    }

    #[test]
    fn sampling_is_deterministic_and_respects_extremes() {
        let a = sample_gnp(8, 3, 0.4, 99).unwrap();
        let b = sample_gnp(8, 3, 0.4, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_gnp(8, 3, 0.4, 100).unwrap();
        assert_ne!(a, c);
        assert_eq!(sample_gnp(8, 3, 0.0, 1).unwrap().overrides.len(), 0);
        assert_eq!(
            sample_gnp(8, 3, 1.0, 1).unwrap().overrides.len(),
            binomial(8, 3) as usize
        );
        // Loose binomial sanity: the mean count over 300 seeds sits within
        // five standard errors.
        let trials = 300;
        let mut total = 0usize;
        for seed in 0..trials {
            total += sample_gnp(10, 3, 0.3, seed).unwrap().overrides.len();
        }
        let mean = total as f64 / trials as f64;
        let expected = 0.3 * binomial(10, 3) as f64;
        let sd = (binomial(10, 3) as f64 * 0.3 * 0.7).sqrt();
        assert!((mean - expected).abs() <= 5.0 * sd / (trials as f64).sqrt());
    }

    #[test]
    fn gradient_matches_central_differences() {
        let triangle =
            Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let q = random_weights(5, 2, 3);
        let (_, grad) = t_gradient(&triangle, &q).unwrap();
        let eps = 1e-6;
        let mut checked = 0;
        for_each_r_subset(5, 2, |edge| {
            let mut up = q.clone();
            up.overrides.insert(edge.to_vec(), q.lookup_sorted(edge) + eps);
            let mut down = q.clone();
            down.overrides.insert(edge.to_vec(), q.lookup_sorted(edge) - eps);
            let fd = (brute_density(&triangle, &up) - brute_density(&triangle, &down))
                / (2.0 * eps);
            let exact = grad[colex_index(edge)];
            assert!(
                (fd - exact).abs() <= 1e-5 * fd.abs().max(1e-3),
                "{edge:?}: {fd} vs {exact}"
            );
            checked += 1;
        });
        assert_eq!(checked, 10);
    }

    #[test]
    fn nmf_triangle_beats_or_matches_the_sweep() {
        let triangle =
            Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let (n, p, delta) = (30usize, 0.1, 1.0);
        let solution = nmf_upper_bound(&triangle, n, p, delta, 120).unwrap();
        assert!(solution.feasible);
        let target = (1.0 + delta) * p.powi(3);
        assert!(solution.t >= target - 1e-12);
        // Exhaustive sweep oracle.
        let mut best = f64::INFINITY;
        for m in 2..=n {
            let planted = plant_clique(n, 2, p, &(0..m).collect::<Vec<_>>()).unwrap();
            if t_density(&triangle, &planted.graph).unwrap() >= target - 1e-12 {
                best = best.min(planted.cost);
            }
        }
        for s in 1..=n {
            let planted = plant_hubs(n, 2, p, &(0..s).collect::<Vec<_>>()).unwrap();
            if t_density(&triangle, &planted.graph).unwrap() >= target - 1e-12 {
                best = best.min(planted.cost);
            }
        }
        assert!(solution.value <= best + 1e-9);
    }

    #[test]
    fn nmf_zero_delta_returns_the_constant_graph() {
        let triangle =
            Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let solution = nmf_upper_bound(&triangle, 12, 0.2, 0.0, 10).unwrap();
        assert_eq!(solution.value, 0.0);
        assert_eq!(solution.q, WeightedRGraph::constant(12, 2, 0.2).unwrap());
    }

    #[test]
    fn nmf_reports_infeasibility_with_its_best_iterate() {
        let k4 = Hypergraph::clique(3, 4).unwrap();
        let err = nmf_upper_bound(&k4, 4, 0.5, 1e6, 5).unwrap_err();
        match err {
            Error::NmfInfeasible { best, .. } => {
                assert!(!best.feasible);
                // The best iterate is the all-ones graph: t = 4!/4^4.
                assert!((best.t - 24.0 / 256.0).abs() < 1e-12);
            }
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn finner_holds_with_equality_cases() {
        let triangle =
            Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        // Constant tables give equality.
        let table = vec![0.7; 16];
        assert!(finner_check(&triangle, &table, 4, &[0.5, 0.5, 0.5]).unwrap());
        // A perfect matching with unit weights: both sides are products of
        // independent means.
        let matching = Hypergraph::new(2, 4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f: Vec<f64> = (0..16).map(|_| rng.random::<f64>()).collect();
        assert!(finner_check(&matching, &f, 4, &[1.0, 1.0]).unwrap());
        // Random instances on the plane pattern.
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f: Vec<f64> = (0..27).map(|_| rng.random::<f64>()).collect();
            assert!(finner_corollary_check(&Hypergraph::fano(), &f, 3).unwrap());
        }
        // Weight infeasibility and negative tables are input errors.
        assert!(matches!(
            finner_check(&triangle, &table, 4, &[0.7, 0.7, 0.7]),
            Err(Error::Input(_))
        ));
        let negative = vec![-1.0; 16];
        assert!(matches!(
            finner_check(&triangle, &negative, 4, &[0.5, 0.5, 0.5]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn density_rejects_uniformity_mismatch() {
        let triangle =
            Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let q = WeightedRGraph::constant(6, 3, 0.5).unwrap();
        assert!(matches!(t_density(&triangle, &q), Err(Error::Input(_))));
    }
}
