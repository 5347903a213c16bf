//! Fractional matching LP (exact), transversal and matching numbers.
//!
//! The fractional matching number `nu*` is computed by a primal simplex over
//! arbitrary-precision rationals with Bland's anti-cycling rule, starting
//! from the slack basis of
//!
//! ```text
//!     maximize  sum_e w_e   subject to   sum_{e : v in e} w_e <= 1,  w >= 0.
//! ```
//!
//! The solver returns an [`LpCertificate`] carrying the exact primal and
//! dual vectors; the constructor checks feasibility of both and equality of
//! their objectives, so every certificate that exists is a proof of
//! optimality by weak duality.
//!
//! The integral companions (`matching_number`, `transversal_number`,
//! `minimal_transversals`) are exhaustive branch-and-bound searches; the
//! graphs this toolkit targets are small and the LP value is used as a
//! lower bound when covering.

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::Rational;

/// Hard cap on the number of size-`tau` transversals returned by
/// [`minimal_transversals`].
pub const TRANSVERSAL_RESULT_CAP: usize = 1_000_000;

/// Exact optimal primal/dual pair for the fractional matching LP.
///
/// `primal[e]` is the weight of edge `e` (in canonical edge order) and
/// `dual[v]` the multiplier of vertex `v`; `value` is the common objective,
/// the fractional matching number `nu*`.
#[derive(Debug, Clone, Serialize)]
pub struct LpCertificate {
    #[serde(with = "crate::rational::serde_string")]
    pub value: Rational,
    #[serde(with = "crate::rational::serde_string_vec")]
    pub primal: Vec<Rational>,
    #[serde(with = "crate::rational::serde_string_vec")]
    pub dual: Vec<Rational>,
}

impl LpCertificate {
    /// Checks the certificate against the graph it was computed from:
    /// primal feasibility, dual feasibility, and equal objectives.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        if self.primal.len() != h.edge_count() || self.dual.len() != h.n_vertices() {
            return false;
        }
        if self.primal.iter().any(|w| w < &Rational::zero()) {
            return false;
        }
        if self.dual.iter().any(|y| y < &Rational::zero()) {
            return false;
        }
        let mut vertex_load = vec![Rational::zero(); h.n_vertices()];
        for (e, w) in h.edges().iter().zip(&self.primal) {
            for &v in e {
                vertex_load[v] += w;
            }
        }
        if vertex_load.iter().any(|l| l > &Rational::one()) {
            return false;
        }
        for e in h.edges() {
            let cover: Rational = e.iter().map(|&v| self.dual[v].clone()).sum();
            if cover < Rational::one() {
                return false;
            }
        }
        let primal_obj: Rational = self.primal.iter().cloned().sum();
        let dual_obj: Rational = self.dual.iter().cloned().sum();
        primal_obj == self.value && dual_obj == self.value
    }
}

/// Solves the fractional matching LP exactly.
///
/// The returned certificate always satisfies [`LpCertificate::verify`]; this
/// is asserted before returning.
pub fn fractional_matching_number(h: &Hypergraph) -> LpCertificate {
    let m = h.edge_count();
    let n = h.n_vertices();
    // Tableau: one row per vertex constraint, columns = m edge variables,
    // n slacks, then the right-hand side.
    let cols = m + n + 1;
    let mut tab = vec![vec![Rational::zero(); cols]; n];
    for (j, e) in h.edges().iter().enumerate() {
        for &v in e {
            tab[v][j] = Rational::one();
        }
    }
    for v in 0..n {
        tab[v][m + v] = Rational::one();
        tab[v][cols - 1] = Rational::one();
    }
    // Objective row holds z_j - c_j; optimal when all entries >= 0.
    let mut obj = vec![Rational::zero(); cols];
    for j in 0..m {
        obj[j] = -Rational::one();
    }
    let mut basis: Vec<usize> = (m..m + n).collect();

    loop {
        // Bland: entering variable = smallest column with negative z_j - c_j.
        let Some(enter) = (0..cols - 1).find(|&j| obj[j] < Rational::zero()) else {
            break;
        };
        // Ratio test; ties broken by smallest basic variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for i in 0..n {
            if tab[i][enter] > Rational::zero() {
                let ratio = &tab[i][cols - 1] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && basis[i] < basis[leave.expect("leave set with best")])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave.expect("matching LP is bounded, a pivot row always exists");
        // Pivot.
        let pivot = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != leave && !tab[i][enter].is_zero() {
                let factor = tab[i][enter].clone();
                for j in 0..cols {
                    let delta = &factor * &tab[leave][j];
                    tab[i][j] -= delta;
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for j in 0..cols {
                let delta = &factor * &tab[leave][j];
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }

    let mut primal = vec![Rational::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            primal[b] = tab[i][cols - 1].clone();
        }
    }
    // Reduced costs of the slack columns are the optimal dual multipliers.
    let dual: Vec<Rational> = (0..n).map(|v| obj[m + v].clone()).collect();
    let value = obj[cols - 1].clone();
    let cert = LpCertificate { value, primal, dual };
    assert!(cert.verify(h), "simplex produced an invalid certificate");
    cert
}

/// The fractional matching number `nu*` alone.
pub fn nu_star(h: &Hypergraph) -> Rational {
    fractional_matching_number(h).value
}

/// Smallest integer `>= q` as usize (`q` must be nonnegative).
fn ceil_to_usize(q: &Rational) -> usize {
    use num::ToPrimitive;
    let c = q.ceil();
    c.numer().to_usize().expect("LP values in this toolkit are tiny")
}

/// The transversal (vertex cover) number `tau`: the minimum number of
/// vertices meeting every edge. Exhaustive search, seeded with the greedy
/// cover as upper bound and `ceil(nu*)` as lower bound.
pub fn transversal_number(h: &Hypergraph) -> usize {
    transversal_number_with_bound(h, &nu_star(h))
}

fn transversal_number_with_bound(h: &Hypergraph, nu_star: &Rational) -> usize {
    if h.edge_count() == 0 {
        return 0;
    }
    let lower = ceil_to_usize(nu_star);
    let upper = greedy_cover_size(h);
    for target in lower..upper {
        if covers_with(h, target) {
            return target;
        }
    }
    upper
}

fn greedy_cover_size(h: &Hypergraph) -> usize {
    let mut covered = vec![false; h.edge_count()];
    let mut size = 0;
    loop {
        let mut best_v = None;
        let mut best_gain = 0usize;
        for v in 0..h.n_vertices() {
            let gain = h
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, e)| !covered[*i] && e.binary_search(&v).is_ok())
                .count();
            if gain > best_gain {
                best_gain = gain;
                best_v = Some(v);
            }
        }
        match best_v {
            None => return size,
            Some(v) => {
                size += 1;
                for (i, e) in h.edges().iter().enumerate() {
                    if e.binary_search(&v).is_ok() {
                        covered[i] = true;
                    }
                }
            }
        }
    }
}

/// Depth-first cover search: can `budget` vertices cover every edge?
fn covers_with(h: &Hypergraph, budget: usize) -> bool {
    fn rec(h: &Hypergraph, covered: &mut Vec<bool>, budget: usize) -> bool {
        let Some(first) = covered.iter().position(|&c| !c) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let edge = h.edge(first).to_vec();
        for v in edge {
            let mut flipped = Vec::new();
            for (i, e) in h.edges().iter().enumerate() {
                if !covered[i] && e.binary_search(&v).is_ok() {
                    covered[i] = true;
                    flipped.push(i);
                }
            }
            if rec(h, covered, budget - 1) {
                return true;
            }
            for i in flipped {
                covered[i] = false;
            }
        }
        false
    }
    rec(h, &mut vec![false; h.edge_count()], budget)
}

/// Every transversal of size exactly `tau(h)`, each as an ascending vertex
/// list, in lexicographic order. Supersets of smaller covers are included
/// when they still have size `tau`.
///
/// # Errors
/// [`Error::Capacity`] when more than [`TRANSVERSAL_RESULT_CAP`] transversals
/// exist.
pub fn minimal_transversals(h: &Hypergraph) -> Result<Vec<Vec<usize>>> {
    let tau = transversal_number(h);
    let mut results = Vec::new();
    // Edges indexed by their largest vertex: once the scan passes that
    // vertex, an uncovered such edge can never be covered.
    let mut by_deadline = vec![Vec::new(); h.n_vertices() + 1];
    for (i, e) in h.edges().iter().enumerate() {
        by_deadline[*e.last().expect("edges are nonempty")].push(i);
    }
    let mut covered_by = vec![0usize; h.edge_count()];
    let mut chosen = Vec::new();

    fn rec(
        h: &Hypergraph,
        tau: usize,
        v: usize,
        by_deadline: &[Vec<usize>],
        covered_by: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if v == h.n_vertices() {
            if chosen.len() == tau && covered_by.iter().all(|&c| c > 0) {
                if results.len() == TRANSVERSAL_RESULT_CAP {
                    return Err(Error::Capacity(format!(
                        "more than {TRANSVERSAL_RESULT_CAP} minimum transversals"
                    )));
                }
                results.push(chosen.clone());
            }
            return Ok(());
        }
        // Remaining vertices must be able to fill the set to size tau.
        if chosen.len() + (h.n_vertices() - v) >= tau {
            // Branch: include v.
            if chosen.len() < tau {
                chosen.push(v);
                for (i, e) in h.edges().iter().enumerate() {
                    if e.binary_search(&v).is_ok() {
                        covered_by[i] += 1;
                    }
                }
                rec(h, tau, v + 1, by_deadline, covered_by, chosen, results)?;
                for (i, e) in h.edges().iter().enumerate() {
                    if e.binary_search(&v).is_ok() {
                        covered_by[i] -= 1;
                    }
                }
                chosen.pop();
            }
        }
        // Branch: exclude v, legal only when no edge ending at v is left
        // uncovered.
        if by_deadline[v].iter().all(|&i| covered_by[i] > 0) {
            rec(h, tau, v + 1, by_deadline, covered_by, chosen, results)?;
        }
        Ok(())
    }

    rec(h, tau, 0, &by_deadline, &mut covered_by, &mut chosen, &mut results)?;
    Ok(results)
}

/// The matching number `nu`: the maximum number of pairwise disjoint edges.
pub fn matching_number(h: &Hypergraph) -> usize {
    maximum_matching(h).len()
}

/// A maximum matching as ascending edge indices (the lexicographically
/// first one of maximum size).
pub fn maximum_matching(h: &Hypergraph) -> Vec<usize> {
    maximum_matching_avoiding(h, &[]).expect("empty avoid set is valid")
}

/// A maximum matching among edges disjoint from `avoid`, as ascending edge
/// indices.
///
/// # Errors
/// [`Error::Input`] when `avoid` repeats a vertex or leaves the range.
pub fn maximum_matching_avoiding(h: &Hypergraph, avoid: &[usize]) -> Result<Vec<usize>> {
    let mut blocked = vec![false; h.n_vertices()];
    {
        let mut sorted = avoid.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("avoid set repeats a vertex".into()));
        }
        if sorted.last().is_some_and(|&v| v >= h.n_vertices()) {
            return Err(Error::Input("avoid set leaves the vertex range".into()));
        }
        for v in sorted {
            blocked[v] = true;
        }
    }
    let eligible: Vec<usize> = (0..h.edge_count())
        .filter(|&i| h.edge(i).iter().all(|&v| !blocked[v]))
        .collect();

    fn rec(
        h: &Hypergraph,
        eligible: &[usize],
        from: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if current.len() + (eligible.len() - from) <= best.len() {
            return;
        }
        for k in from..eligible.len() {
            let i = eligible[k];
            if h.edge(i).iter().any(|&v| used[v]) {
                continue;
            }
            for &v in h.edge(i) {
                used[v] = true;
            }
            current.push(i);
            rec(h, eligible, k + 1, used, current, best);
            current.pop();
            for &v in h.edge(i) {
                used[v] = false;
            }
        }
    }

    let mut best = Vec::new();
    rec(
        h,
        &eligible,
        0,
        &mut vec![false; h.n_vertices()],
        &mut Vec::new(),
        &mut best,
    );
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn triangle_lp() {
        let h = Hypergraph::clique(2, 3).unwrap();
        let cert = fractional_matching_number(&h);
        assert_eq!(cert.value, rat(3, 2));
        assert!(cert.verify(&h));
        assert_eq!(transversal_number(&h), 2);
        assert_eq!(matching_number(&h), 1);
    }

    #[test]
    fn fano_lp_and_covers() {
        let h = Hypergraph::fano();
        let cert = fractional_matching_number(&h);
        assert_eq!(cert.value, rat(7, 3));
        assert!(cert.verify(&h));
        assert_eq!(transversal_number(&h), 3);
        // Two lines always meet, so no two are disjoint.
        assert_eq!(matching_number(&h), 1);
        // The minimum transversals of the Fano plane are exactly its lines.
        let ts = minimal_transversals(&h).unwrap();
        assert_eq!(ts, h.edges().to_vec());
    }

    #[test]
    fn regular_graphs_attain_edge_over_degree() {
        for h in [
            Hypergraph::tight_cycle(3, 5).unwrap(),
            Hypergraph::tight_cycle(3, 7).unwrap(),
            Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap(),
            Hypergraph::clique(3, 4).unwrap(),
        ] {
            assert!(h.is_regular());
            let expected = rat(h.edge_count() as i64, h.max_degree() as i64);
            assert_eq!(nu_star(&h), expected, "graph {h:?}");
        }
    }

    #[test]
    fn small_cycle_cover_and_matching() {
        let h = Hypergraph::tight_cycle(3, 5).unwrap();
        assert_eq!(transversal_number(&h), 2);
        assert_eq!(matching_number(&h), 1);
        let h7 = Hypergraph::tight_cycle(3, 7).unwrap();
        assert_eq!(matching_number(&h7), 2);
        assert_eq!(transversal_number(&h7), 3);
    }

    #[test]
    fn complete_tripartite_numbers() {
        let h = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        assert_eq!(nu_star(&h), rat(2, 1));
        assert_eq!(transversal_number(&h), 2);
        assert_eq!(matching_number(&h), 2);
        let m = maximum_matching(&h);
        assert_eq!(m.len(), 2);
        let e0 = h.edge(m[0]);
        let e1 = h.edge(m[1]);
        assert!(e0.iter().all(|v| e1.binary_search(v).is_err()));
    }

    #[test]
    fn single_edge_and_edgeless() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(nu_star(&h), rat(1, 1));
        assert_eq!(transversal_number(&h), 1);
        assert_eq!(
            minimal_transversals(&h).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let e = Hypergraph::new(3, 4, vec![]).unwrap();
        assert_eq!(nu_star(&e), rat(0, 1));
        assert_eq!(transversal_number(&e), 0);
        assert_eq!(minimal_transversals(&e).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(matching_number(&e), 0);
    }

    #[test]
    fn matching_avoiding_a_vertex() {
        let h = Hypergraph::tight_cycle(3, 7).unwrap();
        let m = maximum_matching_avoiding(&h, &[0]).unwrap();
        assert_eq!(m.len(), 2);
        for &i in &m {
            assert!(h.edge(i).binary_search(&0).is_err());
        }
        assert!(maximum_matching_avoiding(&h, &[9]).is_err());
    }

    #[test]
    fn star_transversal_unique() {
        // The star of one vertex of the complete tripartite graph has the
        // center as its unique minimum transversal.
        let k = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        let star = k.star_of_set(&[0]).unwrap();
        assert_eq!(transversal_number(&star), 1);
        assert_eq!(minimal_transversals(&star).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn certificate_serializes_exactly() {
        let h = Hypergraph::fano();
        let cert = fractional_matching_number(&h);
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["value"], "7/3");
        assert_eq!(json["primal"].as_array().unwrap().len(), 7);
        assert_eq!(json["dual"].as_array().unwrap().len(), 7);
    }
}
