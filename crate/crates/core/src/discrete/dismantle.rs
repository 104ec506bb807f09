use super::DiscreteGraph;

fn bitset(n: usize, members: impl IntoIterator<Item = u32>) -> Vec<u64> {
    let mut words = vec![0u64; n.div_ceil(64)];
    for m in members {
        words[m as usize / 64] |= 1 << (m % 64);
    }
    words
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Whether repeatedly deleting a vertex `u` whose closed neighbourhood lies
/// inside that of another vertex reduces the graph to a single vertex.
///
/// Dismantlable graphs are exactly the graphs one cop can win on; this is the
/// corner-vertex characterisation, kept separate from the game solver.
pub fn is_dismantlable(g: &DiscreteGraph) -> bool {
    let n = g.vertex_count();
    let mut alive = bitset(n, 0..n as u32);
    let mut nbhd: Vec<Vec<u64>> = (0..n as u32)
        .map(|v| bitset(n, g.closed_neighborhood(v).iter().copied()))
        .collect();
    let mut remaining = n;
    while remaining > 1 {
        let is_alive = |alive: &[u64], v: usize| alive[v / 64] >> (v % 64) & 1 == 1;
        let corner = (0..n).find(|&u| {
            is_alive(&alive, u)
                && (0..n).any(|v| v != u && is_alive(&alive, v) && subset(&nbhd[u], &nbhd[v]))
        });
        let Some(u) = corner else {
            return false;
        };
        alive[u / 64] &= !(1 << (u % 64));
        for set in &mut nbhd {
            set[u / 64] &= !(1 << (u % 64));
        }
        remaining -= 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_cases() {
        assert!(is_dismantlable(&DiscreteGraph::random_tree(15, 4).unwrap()));
        assert!(is_dismantlable(&DiscreteGraph::path(5).unwrap()));
        assert!(!is_dismantlable(&DiscreteGraph::cycle(4).unwrap()));
        assert!(is_dismantlable(&DiscreteGraph::cycle(3).unwrap()));
        assert!(is_dismantlable(&DiscreteGraph::complete(6).unwrap()));
        assert!(!is_dismantlable(&DiscreteGraph::petersen()));
        assert!(is_dismantlable(&DiscreteGraph::new(1, &[]).unwrap()));
    }
}
