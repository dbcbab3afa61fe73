use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::magnet::ising_weights;
use super::nishimori::nishimori_params;
use super::probs::XBasisDistribution;
use super::region::RegionGraph;

pub const RBIM_OUTSIDE_CAP: usize = 12;

/// p_s from the clean Ising form: sum_eta exp(K sum_(enlarged edges) eta_i eta_j) prod_i eta_i^{s_i},
/// by a Walsh-Hadamard transform of the Ising weights
pub fn xbasis_probabilities_ising(region: &RegionGraph, p: f64) -> Result<XBasisDistribution> {
    let k = nishimori_params(p)?.k;
    let n = region.len();
    let mut w = ising_weights(region, k)?;
    let all_up = w[0];
    let mut h = 1;
    while h < w.len() {
        for i in (0..w.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (w[j], w[j + h]);
                w[j] = a + b;
                w[j + h] = a - b;
            }
        }
        h *= 2;
    }
    let norm = (1usize << n) as f64 * all_up;
    let probs = w.iter().map(|x| x / norm).collect();
    XBasisDistribution::new(n, probs)
}

/// p_s from the gauge-fixed random-bond form: for every boundary condition b on the outside
/// neighbours, a reference bond configuration with the prescribed vertex parities is dressed by
/// plaquette spins nu_p
pub fn xbasis_probabilities_rbim(region: &RegionGraph, p: f64) -> Result<XBasisDistribution> {
    let beta = nishimori_params(p)?.beta;
    let n = region.len();
    let mut outside: BTreeMap<[i64; 2], usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = region.internal_edges().to_vec();
    for (&i, o) in region.boundary_half_edges().iter().zip(region.outside_neighbours()) {
        let o = o.ok_or_else(|| Error::Invalid("random-bond form needs a planar embedding".into()))?;
        let next = n + outside.len();
        let v = *outside.entry(o).or_insert(next);
        edges.push((i, v));
    }
    let m = outside.len();
    if m > RBIM_OUTSIDE_CAP {
        return Err(Error::SizeCap(format!("random-bond form limited to {RBIM_OUTSIDE_CAP} outside sites, got {m}")));
    }
    let nv = n + m;
    let mut coords: Vec<[i64; 2]> = region.coords().to_vec();
    coords.resize(nv, [0, 0]);
    for (c, &v) in &outside {
        coords[v] = *c;
    }
    let edge_index: BTreeMap<([i64; 2], [i64; 2]), usize> = edges
        .iter()
        .enumerate()
        .flat_map(|(e, &(a, b))| [((coords[a], coords[b]), e), ((coords[b], coords[a]), e)])
        .collect();
    let mut plaquettes: Vec<[usize; 4]> = vec![];
    let mut seen = std::collections::BTreeSet::new();
    for c in &coords {
        for (dx, dy) in [(0, 0), (-1, 0), (0, -1), (-1, -1)] {
            let o = [c[0] + dx, c[1] + dy];
            if !seen.insert(o) {
                continue;
            }
            let q = [o, [o[0] + 1, o[1]], [o[0] + 1, o[1] + 1], [o[0], o[1] + 1]];
            let es: Option<Vec<usize>> = (0..4).map(|t| edge_index.get(&(q[t], q[(t + 1) % 4])).copied()).collect();
            if let Some(es) = es {
                plaquettes.push([es[0], es[1], es[2], es[3]]);
            }
        }
    }
    let tree = spanning_tree(nv, &edges)?;
    let np = plaquettes.len();
    let mut probs = vec![0.0; 1 << n];
    let norm = (2.0 * beta.cosh()).powi(edges.len() as i32);
    for (s, out) in probs.iter_mut().enumerate() {
        let mut total = 0.0;
        for b in 0..1usize << m {
            if (s.count_ones() + b.count_ones()) % 2 == 1 {
                continue;
            }
            let charge: Vec<i8> = (0..nv)
                .map(|v| {
                    let bit = if v < n { s >> v & 1 } else { b >> (v - n) & 1 };
                    if bit == 1 { -1 } else { 1 }
                })
                .collect();
            let tau = reference_bonds(&edges, &tree, &charge);
            for nu in 0..1usize << np {
                let mut t = tau.clone();
                for (q, pl) in plaquettes.iter().enumerate() {
                    if nu >> q & 1 == 1 {
                        pl.iter().for_each(|&e| t[e] = -t[e]);
                    }
                }
                total += (beta * t.iter().map(|&x| x as f64).sum::<f64>()).exp();
            }
        }
        *out = total / norm;
    }
    XBasisDistribution::new(n, probs)
}

/// parent edge of each vertex in a breadth-first tree rooted at 0, listed in visiting order
fn spanning_tree(nv: usize, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let mut adj = vec![vec![]; nv];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut visited = vec![false; nv];
    visited[0] = true;
    let mut order = vec![];
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(u, e) in &adj[v] {
            if !visited[u] {
                visited[u] = true;
                order.push((u, e));
                queue.push_back(u);
            }
        }
    }
    if visited.iter().any(|&x| !x) {
        return Err(Error::Invalid("region graph must be connected".into()));
    }
    Ok(order)
}

/// bonds with prod_{e at v} tau_e = charge_v, non-tree bonds +1, fixed from the leaves inwards
fn reference_bonds(edges: &[(usize, usize)], tree: &[(usize, usize)], charge: &[i8]) -> Vec<i8> {
    let mut tau = vec![1i8; edges.len()];
    let mut parity: Vec<i8> = vec![1; charge.len()];
    for &(v, e) in tree.iter().rev() {
        if parity[v] != charge[v] {
            tau[e] = -1;
            let (a, b) = edges[e];
            parity[a] = -parity[a];
            parity[b] = -parity[b];
        }
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isingdecohere::probs::xbasis_probabilities;

    #[test]
    fn three_routes_agree() {
        for (w, h) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let r = RegionGraph::rectangle(w, h).unwrap();
            for p in [0.03, 0.1, 0.3] {
                let flips = xbasis_probabilities(&r, p).unwrap();
                let ising = xbasis_probabilities_ising(&r, p).unwrap();
                let rbim = xbasis_probabilities_rbim(&r, p).unwrap();
                assert!(flips.total_variation(&ising).unwrap() < 1e-12);
                assert!(flips.total_variation(&rbim).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn ising_route_on_three_by_three() {
        let r = RegionGraph::rectangle(3, 3).unwrap();
        let a = xbasis_probabilities(&r, 0.2).unwrap();
        let b = xbasis_probabilities_ising(&r, 0.2).unwrap();
        assert!(a.total_variation(&b).unwrap() < 1e-12);
    }
}
