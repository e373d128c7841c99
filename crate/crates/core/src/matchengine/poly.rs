//! The two matching-generating-function engines: exhaustive DFS (the oracle)
//! and a broken-profile dynamic program over columns (the fast path).

use super::graph::{VertexId, WeightedGraph};
use crate::exactmath::{LaurentPoly, Rational};
use num_traits::Zero;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EngineError {
    #[error("profile frontier needs {0} bits, budget is {1}")]
    FrontierTooWide(usize, usize),
}

/// Frontier bit budget for [`matching_poly_dp`]. Instances that need more
/// are beyond desk scale and error out rather than thrash.
pub const FRONTIER_BITS: usize = 30;

/// Sum over all perfect matchings of the product of edge weights, by DFS.
///
/// The empty graph contributes the empty product, 1; a graph with no
/// perfect matching yields 0. Vertices are matched lowest-index-first so
/// failures reproduce deterministically.
pub fn matching_poly_brute(g: &WeightedGraph) -> LaurentPoly {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return LaurentPoly::zero();
    }
    let adj = g.adjacency();
    // Bail early on isolated vertices.
    if adj.iter().any(|a| a.is_empty()) && n > 0 {
        return LaurentPoly::zero();
    }
    let mut used = vec![false; n];
    let mut total = LaurentPoly::zero();
    fn rec(
        from: usize,
        adj: &[Vec<(VertexId, crate::exactmath::LaurentMonomial)>],
        used: &mut [bool],
        coeff: Rational,
        qexp: i64,
        total: &mut LaurentPoly,
    ) {
        let mut i = from;
        while i < used.len() && used[i] {
            i += 1;
        }
        if i == used.len() {
            total.add_scaled(&LaurentPoly::one(), &coeff, qexp);
            return;
        }
        used[i] = true;
        for (j, w) in &adj[i] {
            if !used[j.0] {
                used[j.0] = true;
                rec(i + 1, adj, used, &coeff * &w.coeff, qexp + w.qexp, total);
                used[j.0] = false;
            }
        }
        used[i] = false;
    }
    rec(0, &adj, &mut used, Rational::from_integer(1.into()), 0, &mut total);
    total
}

/// Broken-profile sweep over columns keyed by the x coordinate, vertices
/// within a column processed bottom-to-top. The frontier is a bitmask of
/// "pending" vertices (passed but not yet matched); edges may only connect
/// vertices whose column keys differ by at most 1.
///
/// Produces exactly the value of [`matching_poly_brute`], or
/// [`EngineError::FrontierTooWide`] when the live window exceeds
/// [`FRONTIER_BITS`].
pub fn matching_poly_dp(g: &WeightedGraph) -> Result<LaurentPoly, EngineError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    if n % 2 == 1 {
        return Ok(LaurentPoly::zero());
    }
    // Sort vertices by (x, y); edges must span adjacent columns.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| g.coords(VertexId(i)));
    let rank: Vec<usize> = {
        let mut r = vec![0usize; n];
        for (pos, &i) in order.iter().enumerate() {
            r[i] = pos;
        }
        r
    };
    // Backward adjacency in processing order, and each vertex's last chance
    // to be matched.
    let mut back: Vec<Vec<(usize, Rational, i64)>> = vec![Vec::new(); n];
    let mut last_nbr: Vec<usize> = (0..n).map(|_| 0).collect();
    for e in g.edges() {
        let (mut a, mut b) = (rank[e.u.0], rank[e.v.0]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        back[b].push((a, e.weight.coeff.clone(), e.weight.qexp));
        last_nbr[a] = last_nbr[a].max(b);
        last_nbr[b] = last_nbr[b].max(b);
    }
    // A pending vertex processed at position p stays alive until last_nbr[p].
    // Frontier slots are allocated from a free pool at processing time and
    // recycled at death, so the bitmask width equals the peak number of
    // simultaneously alive vertices.
    let mut deaths: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in 0..n {
        if last_nbr[p] > p {
            deaths[last_nbr[p]].push(p);
        }
    }
    let mut free: Vec<usize> = (0..FRONTIER_BITS).rev().collect();
    let mut slot_of: Vec<usize> = vec![usize::MAX; n];
    let mut states: HashMap<u64, LaurentPoly> = HashMap::new();
    states.insert(0, LaurentPoly::one());
    for p in 0..n {
        let alive = last_nbr[p] > p;
        let bit = if alive {
            let slot = match free.pop() {
                Some(s) => s,
                None => {
                    return Err(EngineError::FrontierTooWide(
                        FRONTIER_BITS + 1,
                        FRONTIER_BITS,
                    ))
                }
            };
            slot_of[p] = slot;
            1u64 << slot
        } else {
            0
        };
        let mut next: HashMap<u64, LaurentPoly> = HashMap::new();
        for (mask, acc) in &states {
            // Option 1: leave p pending for a future neighbor.
            if alive {
                next.entry(mask | bit)
                    .or_insert_with(LaurentPoly::zero)
                    .add_assign(acc);
            }
            // Option 2: match p with a pending earlier neighbor.
            for (u, c, e) in &back[p] {
                let ubit = 1u64 << slot_of[*u];
                if slot_of[*u] != usize::MAX && mask & ubit != 0 {
                    let entry = next
                        .entry(mask & !ubit)
                        .or_insert_with(LaurentPoly::zero);
                    entry.add_scaled(acc, c, *e);
                }
            }
        }
        // Vertices dying at p: prune states that still hold them and recycle
        // their slots.
        let mut dead_mask = 0u64;
        for &u in &deaths[p] {
            dead_mask |= 1u64 << slot_of[u];
            free.push(slot_of[u]);
        }
        free.sort_unstable_by(|a, b| b.cmp(a));
        states = next
            .into_iter()
            .filter(|(mask, poly)| mask & dead_mask == 0 && !poly.is_zero())
            .collect();
        if states.is_empty() {
            return Ok(LaurentPoly::zero());
        }
    }
    Ok(states.remove(&0).unwrap_or_else(LaurentPoly::zero))
}

/// Matching polynomial of a disconnected graph equals the product over its
/// connected components; exposed for tests and sanity checks.
pub fn components(g: &WeightedGraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![VertexId(s)];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for (w, _) in &adj[v] {
                if !seen[w.0] {
                    seen[w.0] = true;
                    comp.push(*w);
                    stack.push(w.0);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}
