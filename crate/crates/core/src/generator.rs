//! Seeded instance generation.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, a portable
//! stream cipher RNG, so a seed names the same graph on every platform.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random chordal graph grown one simplicial vertex at a time.
///
/// The generator keeps the list of maximal cliques. Each new vertex picks
/// one of them uniformly and attaches to a random subset of it of size
/// `1..=min(width-1, |C|)`; `extra` further draws each add one more member
/// of that clique while the attachment stays below `width - 1`. A vertex
/// attached to a clique subset is simplicial, so chordality is preserved.
/// With `width = 1` every vertex stays isolated. Not uniform over chordal
/// graphs.
pub fn random_chordal(n: usize, width: usize, extra: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::arg("random_chordal needs n >= 1"));
    }
    if width == 0 || width > n {
        return Err(Error::arg(format!(
            "width must satisfy 1 <= width <= n, got {width}"
        )));
    }
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    let mut cliques: Vec<Vec<NodeId>> = vec![vec![0]];
    for v in 1..n {
        let ci = r.gen_range(0..cliques.len());
        let host = cliques[ci].clone();
        let limit = (width - 1).min(host.len());
        let mut pool = host.clone();
        pool.shuffle(&mut r);
        let mut size = if limit == 0 {
            0
        } else {
            r.gen_range(1..=limit)
        };
        for _ in 0..extra {
            if size < limit && r.gen_bool(0.5) {
                size += 1;
            }
        }
        let mut attach: Vec<NodeId> = pool[..size].to_vec();
        attach.sort_unstable();
        for &u in &attach {
            g.add_edge(u, v)?;
        }
        if attach.len() == host.len() {
            cliques[ci].push(v);
        } else {
            attach.push(v);
            cliques.push(attach);
        }
    }
    Ok(g)
}

/// Erdős–Rényi draw with edge probability `p`, patched to be connected with
/// the edges of a uniformly random labeled tree (decoded from a random
/// Prüfer sequence) that join distinct components.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if r.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    if n < 2 {
        return Ok(g);
    }
    let prufer: Vec<NodeId> = (0..n.saturating_sub(2))
        .map(|_| r.gen_range(0..n))
        .collect();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], mut i: usize) -> usize {
        while c[i] != i {
            c[i] = c[c[i]];
            i = c[i];
        }
        i
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a.max(b)] = a.min(b);
    }
    for (u, v) in prufer_edges(n, &prufer) {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        if a != b {
            comp[a.max(b)] = a.min(b);
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

fn prufer_edges(n: usize, seq: &[NodeId]) -> Vec<(NodeId, NodeId)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<NodeId> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub const LABELED_ENUMERATION_CAP: usize = 6;
pub const ISOMORPHISM_ENUMERATION_CAP: usize = 7;

/// Every labeled graph on `n <= 6` nodes, in edge-mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > LABELED_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "labeled graph enumeration",
            n,
            cap: LABELED_ENUMERATION_CAP,
        });
    }
    let pairs: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| {
        let mut g = Graph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).expect("pairs inside universe");
            }
        }
        g
    }))
}

/// One representative per isomorphism class on `n <= 7` nodes.
///
/// Classes on `k` nodes come from classes on `k - 1` nodes by adding a
/// vertex with every possible neighborhood; duplicates are removed by
/// canonical form (the lexicographically smallest adjacency bitmask over
/// all relabelings that keep vertices sorted by degree).
pub fn enumerate_graphs_up_to_isomorphism(n: usize) -> Result<Vec<Graph>> {
    if n > ISOMORPHISM_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "isomorphism-class enumeration",
            n,
            cap: ISOMORPHISM_ENUMERATION_CAP,
        });
    }
    let mut classes: Vec<Graph> = vec![Graph::new(0)];
    for k in 1..=n {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next = Vec::new();
        for base in &classes {
            for nbr_mask in 0u32..(1 << (k - 1)) {
                let mut g = Graph::new(k);
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                for u in 0..k - 1 {
                    if nbr_mask >> u & 1 == 1 {
                        g.add_edge(u, k - 1)?;
                    }
                }
                if seen.insert(canonical_code(&g)) {
                    next.push(g);
                }
            }
        }
        classes = next;
    }
    Ok(classes)
}

fn edge_code(g: &Graph, perm: &[NodeId]) -> u64 {
    // perm[i] = original node placed at position i
    let n = perm.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(perm[i], perm[j]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn canonical_code(g: &Graph) -> u64 {
    let n = g.node_count();
    let mut nodes: Vec<NodeId> = (0..n).collect();
    nodes.sort_by_key(|&v| g.degree(v));
    // degree classes stay in place; permute within each class
    let mut groups: Vec<Vec<NodeId>> = Vec::new();
    for v in nodes {
        match groups.last_mut() {
            Some(grp) if g.degree(grp[0]) == g.degree(v) => grp.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    permute_groups(g, &groups, 0, &mut perm, &mut best);
    best
}

fn permute_groups(
    g: &Graph,
    groups: &[Vec<NodeId>],
    gi: usize,
    perm: &mut Vec<NodeId>,
    best: &mut u64,
) {
    if gi == groups.len() {
        *best = (*best).min(edge_code(g, perm));
        return;
    }
    let mut grp = groups[gi].clone();
    heap_permutations(&mut grp, &mut |p| {
        let len = perm.len();
        perm.extend_from_slice(p);
        permute_groups(g, groups, gi + 1, perm, best);
        perm.truncate(len);
    });
}

fn heap_permutations(items: &mut [NodeId], f: &mut dyn FnMut(&[NodeId])) {
    fn go(k: usize, items: &mut [NodeId], f: &mut dyn FnMut(&[NodeId])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, f);
    }
    let k = items.len();
    go(k, items, f);
}
