//! Stable labelings of a hypergraph, their tuple sets, and the critical
//! subgraph families they span.
//!
//! A labeling assigns each vertex a rational weight in `[0,1]` such that
//! every edge sums to 0 or 1 and only maximum-degree vertices carry positive
//! weight. A labeling is *stable* when it is rigid: partition the positive
//! vertices by value, and require that the per-edge linear system "each
//! non-vanishing edge sums to 1" determines the block values uniquely (with
//! pairwise-distinct values in `(0,1]`). Labelings with a degree of freedom
//! can be perturbed into a competing labeling and never appear as isolated
//! optimizers of the variational problem, so they are excluded.
//!
//! Enumeration walks every set partition of the max-degree vertex set `V*`
//! with a designated (possibly empty) zero block — equivalently, set
//! partitions of `V* + anchor`, with the anchor's block read as the zero
//! block — in restricted-growth-string order. Each partition's linear
//! system is solved exactly; the growth is the Bell number of `|V*| + 1`,
//! so enumeration is capped (default [`DEFAULT_LABELING_CAP`] vertices).

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractional;
use crate::hypergraph::Hypergraph;
use crate::rational::{int, rat, Rational};

/// Default cap on `|V*|` for set-partition enumeration.
pub const DEFAULT_LABELING_CAP: usize = 14;

/// A labeling of a fixed hypergraph: one rational weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Labeling {
    #[serde(with = "crate::rational::serde_string_vec")]
    values: Vec<Rational>,
}

impl Labeling {
    /// Builds a labeling and validates it against `h`: one value per
    /// vertex, all in `[0,1]`, positive values only on maximum-degree
    /// vertices, and every edge summing to exactly 0 or 1.
    ///
    /// # Errors
    /// [`Error::Input`] when any of those conditions fails.
    pub fn new(h: &Hypergraph, values: Vec<Rational>) -> Result<Labeling> {
        if values.len() != h.n_vertices() {
            return Err(Error::Input(format!(
                "labeling has {} values for {} vertices",
                values.len(),
                h.n_vertices()
            )));
        }
        if values
            .iter()
            .any(|x| x.is_negative() || x > &Rational::one())
        {
            return Err(Error::Input("labeling values must lie in [0,1]".into()));
        }
        let degrees = h.degrees();
        let delta = degrees.iter().copied().max().unwrap_or(0);
        for (v, x) in values.iter().enumerate() {
            if x.is_positive() && degrees[v] != delta {
                return Err(Error::Input(format!(
                    "vertex {v} has positive weight but degree {} < {delta}",
                    degrees[v]
                )));
            }
        }
        for e in h.edges() {
            let s: Rational = e.iter().map(|&v| values[v].clone()).sum();
            if !s.is_zero() && !s.is_one() {
                return Err(Error::Input(format!("edge {e:?} sums to {s}, not 0 or 1")));
            }
        }
        Ok(Labeling { values })
    }

    pub fn value(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }

    /// Vertices with positive weight, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&v| self.values[v].is_positive())
            .collect()
    }

    /// The distinct positive values, ascending.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self
            .values
            .iter()
            .filter(|x| x.is_positive())
            .cloned()
            .collect();
        set.into_iter().collect()
    }

    /// The positive value when the labeling uses exactly one, else `None`
    /// (this includes the zero labeling).
    pub fn single_value(&self) -> Option<Rational> {
        let d = self.distinct_values();
        if d.len() == 1 {
            Some(d[0].clone())
        } else {
            None
        }
    }

    /// The supporting subgraph `F`: the edges summing to 1, on the ambient
    /// vertex set of `h`.
    pub fn supporting_subgraph(&self, h: &Hypergraph) -> Hypergraph {
        let edges = h
            .edges()
            .iter()
            .filter(|e| {
                let s: Rational = e.iter().map(|&v| self.values[v].clone()).sum();
                s.is_one()
            })
            .cloned()
            .collect();
        Hypergraph::new(h.r(), h.n_vertices(), edges)
            .expect("edges of a valid graph stay valid")
    }

    /// Whether this labeling is stable: the level-set partition of its
    /// support yields a per-edge system with a unique solution, and the
    /// values are pairwise distinct in `(0,1]` (distinctness holds by
    /// construction of the level sets).
    pub fn is_stable(&self, h: &Hypergraph) -> Result<bool> {
        // Group the support by value; order blocks by value for determinism.
        let mut blocks: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for v in self.support() {
            blocks
                .entry(self.values[v].clone())
                .or_default()
                .push(v);
        }
        let block_of: BTreeMap<usize, usize> = blocks
            .values()
            .enumerate()
            .flat_map(|(b, vs)| vs.iter().map(move |&v| (v, b)))
            .collect();
        let k = blocks.len();
        let mut rows = Vec::new();
        for e in h.edges() {
            let mut row = vec![0i64; k];
            let mut nonzero = false;
            for v in e {
                if let Some(&b) = block_of.get(v) {
                    row[b] += 1;
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
        match solve_unit_system(&rows, k) {
            SystemOutcome::Unique(sol) => {
                // The unique solution must be the labeling itself.
                Ok(blocks.keys().cloned().collect::<Vec<_>>() == sol)
            }
            _ => Ok(false),
        }
    }
}

/// The stable labelings of one hypergraph, sorted by value vector.
#[derive(Debug, Clone, Serialize)]
pub struct LabelingSet {
    pub graph: Hypergraph,
    pub labelings: Vec<Labeling>,
}

impl LabelingSet {
    pub fn len(&self) -> usize {
        self.labelings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labelings.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Labeling> {
        self.labelings.iter()
    }

    /// The labelings other than the zero labeling.
    pub fn nonzero(&self) -> impl Iterator<Item = &Labeling> {
        self.labelings.iter().filter(|l| !l.is_zero())
    }
}

/// Outcome of the exact per-partition linear system.
enum SystemOutcome {
    Unique(Vec<Rational>),
    Degenerate,
}

/// Solves `rows * x = 1` (every row sums the block counts to 1) for `k`
/// unknowns, exactly. Returns the solution only when it is unique.
///
/// Elimination is fraction-free (Bareiss) over checked `i128`, falling back
/// to big-rational Gaussian elimination if an intermediate product would
/// overflow; back-substitution is always big-rational.
fn solve_unit_system(rows: &[Vec<i64>], k: usize) -> SystemOutcome {
    if k == 0 {
        return SystemOutcome::Unique(Vec::new());
    }
    if rows.len() < k {
        return SystemOutcome::Degenerate;
    }
    let mut mat: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<i128> = r.iter().map(|&x| x as i128).collect();
            row.push(1);
            row
        })
        .collect();
    mat.sort_unstable();
    mat.dedup();
    let m = mat.len();
    let cols = k + 1;
    // Classical fraction-free elimination: only rows below the pivot are
    // updated, where the one-step division by the previous pivot is exact.
    let mut prev = 1i128;
    let mut rank = 0usize;
    let mut pivot_cols = Vec::new();
    for col in 0..k {
        let Some(p) = (rank..m).find(|&i| mat[i][col] != 0) else {
            continue;
        };
        mat.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..cols {
                let a = mat[rank][col].checked_mul(mat[i][j]);
                let b = mat[i][col].checked_mul(mat[rank][j]);
                let num = match (a, b) {
                    (Some(a), Some(b)) => a.checked_sub(b),
                    _ => None,
                };
                match num {
                    Some(x) => mat[i][j] = x / prev,
                    None => return solve_unit_system_bigrational(rows, k),
                }
            }
            mat[i][col] = 0;
        }
        prev = mat[rank][col];
        pivot_cols.push(col);
        rank += 1;
    }
    // Rows below the final rank have an all-zero coefficient part; a
    // nonzero right side there means the system is inconsistent. Either
    // way a non-full rank is rejected.
    if rank < k || mat[rank..].iter().any(|row| row[k] != 0) {
        return SystemOutcome::Degenerate;
    }
    let mut sol = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        let col = pivot_cols[i];
        let mut rhs = big(mat[i][k]);
        for j in col + 1..k {
            rhs -= big(mat[i][j]) * &sol[j];
        }
        sol[col] = rhs / big(mat[i][col]);
    }
    SystemOutcome::Unique(sol)
}

fn big(x: i128) -> Rational {
    Rational::from(num::BigInt::from(x))
}

/// Big-rational Gaussian elimination fallback for [`solve_unit_system`].
fn solve_unit_system_bigrational(rows: &[Vec<i64>], k: usize) -> SystemOutcome {
    let mut mat: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Rational> = r.iter().map(|&x| int(x)).collect();
            row.push(Rational::one());
            row
        })
        .collect();
    let m = mat.len();
    let cols = k + 1;
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..k {
        let Some(p) = (rank..m).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let piv = mat[rank][col].clone();
        for j in 0..cols {
            mat[rank][j] /= &piv;
        }
        for i in 0..m {
            if i != rank && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for j in 0..cols {
                    let d = &f * &mat[rank][j];
                    mat[i][j] -= d;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rank < k || mat[rank..].iter().any(|row| !row[k].is_zero()) {
        return SystemOutcome::Degenerate;
    }
    let mut sol = vec![Rational::zero(); k];
    for i in 0..k {
        sol[pivot_cols[i]] = mat[i][k].clone();
    }
    SystemOutcome::Unique(sol)
}

/// Enumerates every stable labeling of `h` with the default cap.
///
/// # Errors
/// [`Error::Capacity`] when `|V*|` exceeds the cap.
pub fn stable_labelings(h: &Hypergraph) -> Result<LabelingSet> {
    stable_labelings_capped(h, DEFAULT_LABELING_CAP)
}

/// Enumerates every stable labeling of `h`, walking the set partitions of
/// the max-degree vertex set with a designated zero block.
///
/// # Errors
/// [`Error::Capacity`] when `|V*| > cap`.
pub fn stable_labelings_capped(h: &Hypergraph, cap: usize) -> Result<LabelingSet> {
    let vs = h.max_degree_vertices();
    if vs.len() > cap {
        return Err(Error::Capacity(format!(
            "{} max-degree vertices exceed the labeling enumeration cap of {cap}",
            vs.len()
        )));
    }
    // Positions of the max-degree members of each edge, as indices into vs.
    let vs_index: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edge_members: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| e.iter().filter_map(|v| vs_index.get(v).copied()).collect())
        .collect();

    let t = vs.len();
    // Restricted growth string over anchor + V*; a[0] = 0 is the anchor and
    // its block is the zero block.
    let mut a = vec![0usize; t + 1];
    let mut found: BTreeSet<Labeling> = BTreeSet::new();
    loop {
        let k = a.iter().copied().max().unwrap_or(0);
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(h.edge_count());
        for members in &edge_members {
            let mut row = vec![0i64; k];
            let mut nonzero = false;
            for &j in members {
                let b = a[j + 1];
                if b > 0 {
                    row[b - 1] += 1;
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
        if let SystemOutcome::Unique(sol) = solve_unit_system(&rows, k) {
            let positive = sol
                .iter()
                .all(|x| x.is_positive() && x <= &Rational::one());
            let distinct = {
                let set: BTreeSet<&Rational> = sol.iter().collect();
                set.len() == sol.len()
            };
            if positive && distinct {
                let mut values = vec![Rational::zero(); h.n_vertices()];
                for (j, &v) in vs.iter().enumerate() {
                    if a[j + 1] > 0 {
                        values[v] = sol[a[j + 1] - 1].clone();
                    }
                }
                let labeling =
                    Labeling::new(h, values).expect("solved systems satisfy the constraints");
                found.insert(labeling);
            }
        }
        // Advance the restricted growth string.
        let mut i = t;
        let mut advanced = false;
        while i > 0 {
            let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= prefix_max {
                a[i] += 1;
                for x in a.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                advanced = true;
                break;
            }
            i -= 1;
        }
        if !advanced {
            break;
        }
    }
    Ok(LabelingSet {
        graph: h.clone(),
        labelings: found.into_iter().collect(),
    })
}

/// One orbit of edge tuples: the sorted representative and the number of
/// ordered r-tuples in its permutation orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tuple {
    #[serde(with = "crate::rational::serde_string_vec")]
    pub values: Vec<Rational>,
    pub orbit: u64,
}

/// The tuple set of a hypergraph: for every stable labeling and every edge,
/// the sorted tuple of labeling values along that edge. Deduplicated,
/// sorted; the all-zero tuple is kept here and skipped by [`TupleSet::nonzero`].
#[derive(Debug, Clone, Serialize)]
pub struct TupleSet {
    pub tuples: Vec<Tuple>,
}

impl TupleSet {
    /// Tuples other than the all-zero tuple. Every tuple yielded sums to 1.
    pub fn nonzero(&self) -> impl Iterator<Item = &Tuple> {
        self.tuples
            .iter()
            .filter(|t| !t.values.iter().all(Rational::is_zero))
    }
}

/// Number of distinct permutations of a sorted tuple, computed as a
/// running product of binomials so intermediates stay integral.
fn orbit_size(sorted: &[Rational]) -> u64 {
    let mut result: u64 = 1;
    let mut run = 0u64;
    for i in 0..sorted.len() {
        if i > 0 && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            run = 1;
        }
        result = result * (i as u64 + 1) / run;
    }
    result
}

/// Builds the tuple set from a precomputed labeling set.
pub fn tuple_set_from_labelings(ls: &LabelingSet) -> TupleSet {
    let h = &ls.graph;
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for l in ls.iter() {
        for e in h.edges() {
            let mut tuple: Vec<Rational> = e.iter().map(|&v| l.value(v).clone()).collect();
            tuple.sort();
            seen.insert(tuple);
        }
    }
    let tuples = seen
        .into_iter()
        .map(|values| {
            let orbit = orbit_size(&values);
            Tuple { values, orbit }
        })
        .collect();
    TupleSet { tuples }
}

/// Enumerates the stable labelings and builds the tuple set in one call.
///
/// # Errors
/// [`Error::Capacity`] from the labeling enumeration cap.
pub fn tuple_set(h: &Hypergraph, cap: usize) -> Result<TupleSet> {
    Ok(tuple_set_from_labelings(&stable_labelings_capped(h, cap)?))
}

/// Signature of a labeling: its distinct positive values with support
/// multiplicities, ascending by value. The map counts labelings per
/// signature; the zero labeling has the empty signature.
pub fn labeling_signatures(ls: &LabelingSet) -> BTreeMap<Vec<(Rational, usize)>, usize> {
    let mut sig: BTreeMap<Vec<(Rational, usize)>, usize> = BTreeMap::new();
    for l in ls.iter() {
        let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
        for x in l.values() {
            if x.is_positive() {
                *counts.entry(x.clone()).or_insert(0) += 1;
            }
        }
        *sig.entry(counts.into_iter().collect()).or_insert(0) += 1;
    }
    sig
}

/// The critical subgraphs of `h`: proper subgraphs `F` (ambient vertex set)
/// with `Delta(F) = Delta(h)` and `nu*(F) = |E(F)| / Delta(h)` exactly.
/// Candidates are the supporting subgraphs of the stable labelings, which
/// cover the family; each candidate is then certified by the exact LP.
///
/// # Errors
/// [`Error::Capacity`] from the labeling enumeration cap.
pub fn critical_subgraphs(h: &Hypergraph, cap: usize) -> Result<Vec<Hypergraph>> {
    let ls = stable_labelings_capped(h, cap)?;
    let delta = h.max_degree();
    let mut out: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for l in ls.nonzero() {
        let f = l.supporting_subgraph(h);
        if f == *h || f.max_degree() != delta {
            continue;
        }
        let target = rat(f.edge_count() as i64, delta as i64);
        if fractional::nu_star(&f) == target {
            out.insert(f.edges().to_vec());
        }
    }
    out.into_iter()
        .map(|edges| Hypergraph::new(h.r(), h.n_vertices(), edges))
        .collect()
}

/// The star family: `F_S` for every nonempty max-degree vertex set `S`
/// that is independent in the ambient graph, excluding `h` itself. Each
/// member keeps the ambient vertex set. Sorted and deduplicated.
///
/// Ambient independence (no edge of `h` meets `S` twice, not merely no
/// edge of the induced star core) is what makes every member critical:
/// each edge of `F_S` then meets `S` exactly once, so
/// `|E(F_S)| = |S| * Delta` and the uniform fractional matching is tight.
pub fn f_star_family(h: &Hypergraph) -> Result<Vec<Hypergraph>> {
    let vs = h.max_degree_vertices();
    let mut out: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for s in h.independent_sets_within(&vs)? {
        if s.is_empty() {
            continue;
        }
        let f = h.star_of_set(&s)?;
        if f != *h {
            out.insert(f.edges().to_vec());
        }
    }
    out.into_iter()
        .map(|edges| Hypergraph::new(h.r(), h.n_vertices(), edges))
        .collect()
}

/// The ambient-independent subsets of the max-degree vertex set whose star
/// is all of `h` (ascending lists, sorted).
pub fn spanning_independent_sets(h: &Hypergraph) -> Result<Vec<Vec<usize>>> {
    let vs = h.max_degree_vertices();
    let mut out = Vec::new();
    for s in h.independent_sets_within(&vs)? {
        if h.star_of_set(&s)? == *h {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}
