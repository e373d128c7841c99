//! Local graph rewrites: vertex splitting, star scaling, urban renewal, and
//! forced-edge removal. Every rewrite returns the transformed graph together
//! with the multiplicative factor relating the two matching generating
//! functions: `M(input) = factor * M(output)`.

use super::graph::{GraphError, VertexId, WeightedGraph};
use crate::exactmath::{LaurentMonomial, LaurentPoly, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// A rewritten graph plus the factor that makes
/// `M(input) = factor * M(graph)` hold exactly.
#[derive(Debug, Clone)]
pub struct RewriteResult {
    pub graph: WeightedGraph,
    pub factor: LaurentPoly,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RewriteError {
    #[error("neighbor partition is not a disjoint cover of N(v)")]
    BadPartition,
    #[error("star scale factor must be nonzero")]
    ZeroScale,
    #[error("spider inner vertex {0} has a neighbor outside the spider")]
    BadSpider(usize),
    #[error("spider weights give xz + yt = 0")]
    SingularWeights,
    #[error("replacement weight {0} is not a single Laurent term")]
    NonMonomialWeight(String),
    #[error("vertex of degree 0 remains; the graph has no perfect matching")]
    Unmatchable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex-Splitting: replace `v` by `v'`, `v''` joined through a new
/// degree-2 vertex of unit edges, sending neighbors in `h` to `v'` and
/// neighbors in `k` to `v''`. The matching generating function is unchanged
/// (factor 1).
pub fn vertex_split(
    g: &WeightedGraph,
    v: VertexId,
    h: &[VertexId],
    k: &[VertexId],
) -> Result<RewriteResult, RewriteError> {
    let nbrs: BTreeSet<usize> = g
        .edges()
        .iter()
        .filter_map(|e| {
            if e.u == v {
                Some(e.v.0)
            } else if e.v == v {
                Some(e.u.0)
            } else {
                None
            }
        })
        .collect();
    let hs: BTreeSet<usize> = h.iter().map(|x| x.0).collect();
    let ks: BTreeSet<usize> = k.iter().map(|x| x.0).collect();
    if hs.len() != h.len() || ks.len() != k.len() {
        return Err(RewriteError::BadPartition);
    }
    if !hs.is_disjoint(&ks) || &hs | &ks != nbrs {
        return Err(RewriteError::BadPartition);
    }
    let (x, y) = g.coords(v);
    let (mut out, map) = g.without_vertices(&[v]);
    let vp = out.add_vertex(x, y - 1);
    let vpp = out.add_vertex(x, y + 1);
    let w = out.add_vertex(x, y);
    out.add_edge(vp, w, LaurentMonomial::one())?;
    out.add_edge(w, vpp, LaurentMonomial::one())?;
    for e in g.edges() {
        let other = if e.u == v {
            e.v
        } else if e.v == v {
            e.u
        } else {
            continue;
        };
        let target = if hs.contains(&other.0) { vp } else { vpp };
        out.add_edge(map[other.0].unwrap(), target, e.weight.clone())?;
    }
    Ok(RewriteResult {
        graph: out,
        factor: LaurentPoly::one(),
    })
}

/// Star Lemma: multiply all edges at `v` by `t`; `M(input) = (1/t) M(output)`.
pub fn star_scale(
    g: &WeightedGraph,
    v: VertexId,
    t: &Rational,
) -> Result<RewriteResult, RewriteError> {
    if t.is_zero() {
        return Err(RewriteError::ZeroScale);
    }
    let mut out = WeightedGraph::new();
    for i in 0..g.vertex_count() {
        let (x, y) = g.coords(VertexId(i));
        out.add_vertex(x, y);
    }
    for e in g.edges() {
        let w = if e.u == v || e.v == v {
            LaurentMonomial::new(&e.weight.coeff * t, e.weight.qexp)
        } else {
            e.weight.clone()
        };
        out.add_edge(e.u, e.v, w)?;
    }
    Ok(RewriteResult {
        graph: out,
        factor: LaurentPoly::constant(Rational::one() / t),
    })
}

/// The spider subgraph for urban renewal: four outer corners, each joined by
/// a unit edge to the matching inner vertex, and the inner 4-cycle carrying
/// the weights `x, y, z, t` in cyclic order
/// (`inner[0]-inner[1]: x`, `inner[1]-inner[2]: y`,
/// `inner[2]-inner[3]: z`, `inner[3]-inner[0]: t`).
#[derive(Debug, Clone)]
pub struct SpiderSpec {
    pub outer: [VertexId; 4],
    pub inner: [VertexId; 4],
}

/// Spider Lemma (urban renewal): replace the spider by a 4-cycle on the
/// outer corners, each new edge weighted by the opposite inner weight over
/// `xz + yt`; `M(input) = (xz + yt) * M(output)`.
///
/// The inner vertices must have no neighbors outside the spider. Because
/// edge weights are single Laurent terms, the replacement is representable
/// only when `xz + yt` collapses to one term; otherwise
/// [`RewriteError::NonMonomialWeight`] is returned.
pub fn urban_renewal(
    g: &WeightedGraph,
    spec: &SpiderSpec,
) -> Result<RewriteResult, RewriteError> {
    let inner_set: BTreeSet<usize> = spec.inner.iter().map(|v| v.0).collect();
    let outer_set: BTreeSet<usize> = spec.outer.iter().map(|v| v.0).collect();
    // Inner cycle weights x,y,z,t.
    let mut cyc = Vec::with_capacity(4);
    for i in 0..4 {
        let a = spec.inner[i];
        let b = spec.inner[(i + 1) % 4];
        let e = g
            .edge_between(a, b)
            .ok_or(RewriteError::BadSpider(a.0))?;
        cyc.push(e.weight.clone());
    }
    // Unit legs outer[i] -- inner[i].
    for i in 0..4 {
        let e = g
            .edge_between(spec.outer[i], spec.inner[i])
            .ok_or(RewriteError::BadSpider(spec.inner[i].0))?;
        if !e.weight.is_one() {
            return Err(RewriteError::BadSpider(spec.inner[i].0));
        }
    }
    // Inner vertices: exactly their cycle neighbors plus their leg.
    for e in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if inner_set.contains(&a.0)
                && !inner_set.contains(&b.0)
                && !outer_set.contains(&b.0)
            {
                return Err(RewriteError::BadSpider(a.0));
            }
        }
    }
    for i in 0..4 {
        if g.degree(spec.inner[i]) != 3 {
            return Err(RewriteError::BadSpider(spec.inner[i].0));
        }
    }
    let (x, y, z, t) = (&cyc[0], &cyc[1], &cyc[2], &cyc[3]);
    let delta = x.mul(z).to_poly().add(&y.mul(t).to_poly());
    if delta.is_zero() {
        return Err(RewriteError::SingularWeights);
    }
    let delta_mono = delta
        .as_monomial()
        .ok_or_else(|| RewriteError::NonMonomialWeight(delta.to_string()))?;
    let (mut out, map) = g.without_vertices(&spec.inner.to_vec());
    // New edge outer[i] -- outer[i+1] carries the opposite inner weight
    // cyc[i+2] over delta.
    for i in 0..4 {
        let a = map[spec.outer[i].0].unwrap();
        let b = map[spec.outer[(i + 1) % 4].0].unwrap();
        let w = cyc[(i + 2) % 4].mul(&delta_mono.inv());
        out.add_edge(a, b, w)?;
    }
    Ok(RewriteResult {
        graph: out,
        factor: delta,
    })
}

/// Remove forced edges: repeatedly take a degree-1 vertex, remove its edge
/// together with both endpoints, and multiply the factor by the edge weight.
/// A degree-0 vertex at any point means no perfect matching exists and is
/// reported as [`RewriteError::Unmatchable`].
pub fn remove_forced_edges(g: &WeightedGraph) -> Result<RewriteResult, RewriteError> {
    let mut cur = g.clone();
    let mut factor = LaurentPoly::one();
    loop {
        if cur.vertex_count() == 0 {
            break;
        }
        let mut degs = vec![0usize; cur.vertex_count()];
        for e in cur.edges() {
            degs[e.u.0] += 1;
            degs[e.v.0] += 1;
        }
        if degs.iter().any(|&d| d == 0) {
            return Err(RewriteError::Unmatchable);
        }
        let Some(v) = degs.iter().position(|&d| d == 1) else {
            break;
        };
        let e = cur
            .edges()
            .iter()
            .find(|e| e.u.0 == v || e.v.0 == v)
            .expect("degree-1 vertex has an edge")
            .clone();
        factor = factor.mul(&e.weight.to_poly());
        let (next, _) = cur.without_vertices(&[e.u, e.v]);
        cur = next;
    }
    Ok(RewriteResult {
        graph: cur,
        factor,
    })
}
