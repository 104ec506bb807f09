#![allow(dead_code)]

use std::collections::BTreeSet;

use copspace::discrete::DiscreteGraph;

/// Adjacency bitmasks of a graph on at most 8 vertices.
pub type Masks = Vec<u8>;

fn canonical(adj: &[u8]) -> Vec<u8> {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut best: Option<Vec<u8>> = None;
    // permute only within blocks of equal degree
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || deg[order[i]] != deg[order[start]] {
            blocks.push((start, i));
            start = i;
        }
    }
    fn rec(
        adj: &[u8],
        order: &mut Vec<usize>,
        blocks: &[(usize, usize)],
        b: usize,
        best: &mut Option<Vec<u8>>,
    ) {
        if b == blocks.len() {
            let n = order.len();
            let mut pos = vec![0usize; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let mut code = vec![0u8; n];
            for (i, &v) in order.iter().enumerate() {
                let mut m = 0u8;
                for w in 0..n {
                    if adj[v] >> w & 1 == 1 {
                        m |= 1 << pos[w];
                    }
                }
                code[i] = m;
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let (lo, hi) = blocks[b];
        heap_permute(order, lo, hi, &mut |order| rec(adj, order, blocks, b + 1, best));
    }
    rec(adj, &mut order, &blocks, 0, &mut best);
    best.expect("at least one ordering")
}

fn heap_permute(order: &mut Vec<usize>, lo: usize, hi: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    fn go(order: &mut Vec<usize>, lo: usize, k: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
        if k <= 1 {
            visit(order);
            return;
        }
        for i in 0..k - 1 {
            go(order, lo, k - 1, visit);
            if k.is_multiple_of(2) {
                order.swap(lo + i, lo + k - 1);
            } else {
                order.swap(lo, lo + k - 1);
            }
        }
        go(order, lo, k - 1, visit);
    }
    go(order, lo, hi - lo, visit);
}

/// All connected graphs on `1..=max_n` vertices up to isomorphism, grouped
/// by vertex count. Every connected graph on `n` vertices is a connected
/// graph on `n - 1` vertices plus a vertex with a nonempty neighbourhood.
pub fn connected_catalog(max_n: usize) -> Vec<Vec<Masks>> {
    assert!(max_n <= 8);
    let mut levels: Vec<Vec<Masks>> = vec![vec![vec![0u8]]];
    for n in 2..=max_n {
        let mut seen = BTreeSet::new();
        for g in &levels[n - 2] {
            for subset in 1u16..(1 << (n - 1)) {
                let mut adj = g.clone();
                adj.push(subset as u8);
                for (v, m) in adj.iter_mut().enumerate().take(n - 1) {
                    if subset >> v & 1 == 1 {
                        *m |= 1 << (n - 1);
                    }
                }
                seen.insert(canonical(&adj));
            }
        }
        levels.push(seen.into_iter().collect());
    }
    levels
}

pub fn to_graph(adj: &[u8]) -> DiscreteGraph {
    let mut edges = Vec::new();
    for (u, &m) in adj.iter().enumerate() {
        for v in u + 1..adj.len() {
            if m >> v & 1 == 1 {
                edges.push((u as u32, v as u32));
            }
        }
    }
    DiscreteGraph::new(adj.len(), &edges).expect("catalog graphs are connected")
}

/// Whether `k` cops win, by value iteration over unsorted cop tuples:
/// `w[d]` marks states the cops win within `d` moves, for `d` up to
/// `|V|^(k+1)`.
pub fn minimax_copwin(g: &DiscreteGraph, k: usize) -> bool {
    let n = g.vertex_count();
    let tuples = n.pow(k as u32);
    let decode = |t: usize| -> Vec<u32> {
        let mut t = t;
        (0..k)
            .map(|_| {
                let c = (t % n) as u32;
                t /= n;
                c
            })
            .collect()
    };
    let encode = |c: &[u32]| c.iter().rev().fold(0usize, |a, &x| a * n + x as usize);
    // index: (tuple * n + robber); separate tables per side to move
    let caught = |c: &[u32], r: u32| c.contains(&r);
    let mut cop_turn: Vec<bool> = vec![false; tuples * n];
    let mut rob_turn: Vec<bool> = vec![false; tuples * n];
    for t in 0..tuples {
        let c = decode(t);
        for r in 0..n as u32 {
            if caught(&c, r) {
                cop_turn[t * n + r as usize] = true;
                rob_turn[t * n + r as usize] = true;
            }
        }
    }
    let bound = n.pow(k as u32 + 1);
    for _ in 0..bound {
        let mut changed = false;
        let mut next_cop = cop_turn.clone();
        for t in 0..tuples {
            let c = decode(t);
            for r in 0..n as u32 {
                let i = t * n + r as usize;
                if next_cop[i] {
                    continue;
                }
                // some joint cop move reaches a robber-to-move win
                let mut moves = vec![Vec::new()];
                for &ci in &c {
                    let mut grown = Vec::new();
                    for m in &moves {
                        for &x in g.closed_neighborhood(ci) {
                            let mut m2: Vec<u32> = m.clone();
                            m2.push(x);
                            grown.push(m2);
                        }
                    }
                    moves = grown;
                }
                if moves.iter().any(|m| rob_turn[encode(m) * n + r as usize]) {
                    next_cop[i] = true;
                    changed = true;
                }
            }
        }
        let mut next_rob = rob_turn.clone();
        for t in 0..tuples {
            for r in 0..n as u32 {
                let i = t * n + r as usize;
                if next_rob[i] {
                    continue;
                }
                if g.closed_neighborhood(r).iter().all(|&x| next_cop[t * n + x as usize]) {
                    next_rob[i] = true;
                    changed = true;
                }
            }
        }
        cop_turn = next_cop;
        rob_turn = next_rob;
        if !changed {
            break;
        }
    }
    (0..tuples).any(|t| (0..n).all(|r| cop_turn[t * n + r]))
}

/// Random connected metric graph: a random tree on `n` vertices plus up to
/// `n / 2` extra edges, lengths in `[0.2, 2)`.
pub fn random_space(rng: &mut impl rand::Rng, n: usize) -> copspace::metric::MetricGraph {
    let mut edges = Vec::new();
    for v in 1..n as u32 {
        edges.push((rng.random_range(0..v), v, rng.random_range(0.2..2.0)));
    }
    for _ in 0..rng.random_range(0..=n / 2) {
        let (a, b) = (rng.random_range(0..n as u32), rng.random_range(0..n as u32));
        if a != b {
            edges.push((a.min(b), a.max(b), rng.random_range(0.2..2.0)));
        }
    }
    copspace::metric::MetricGraph::from_indexed(n, &edges).expect("connected by construction")
}
