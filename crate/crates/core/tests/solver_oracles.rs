mod common;

use common::{connected_catalog, minimax_copwin, to_graph};
use copspace::discrete::{
    cop_number_discrete, is_dismantlable, k_copwin, DiscreteGraph, DiscreteState, Turn,
    DEFAULT_BUDGET,
};

#[test]
fn catalog_matches_known_counts() {
    let counts: Vec<usize> = connected_catalog(7).iter().map(Vec::len).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn one_cop_agrees_with_dismantlability_up_to_eight_vertices() {
    let catalog = connected_catalog(8);
    assert_eq!(catalog[7].len(), 11117);
    for level in &catalog {
        for adj in level {
            let g = to_graph(adj);
            let (win, _) = k_copwin(&g, 1, DEFAULT_BUDGET).unwrap();
            assert_eq!(win, is_dismantlable(&g), "{adj:?}");
        }
    }
}

#[test]
fn agrees_with_minimax_up_to_six_vertices() {
    for level in connected_catalog(6) {
        for adj in level {
            let g = to_graph(&adj);
            for k in 1..=2 {
                let (win, _) = k_copwin(&g, k, DEFAULT_BUDGET).unwrap();
                assert_eq!(win, minimax_copwin(&g, k), "{adj:?}, k = {k}");
            }
        }
    }
}

#[test]
fn minimax_on_named_graphs() {
    assert!(!minimax_copwin(&DiscreteGraph::cycle(4).unwrap(), 1));
    assert!(minimax_copwin(&DiscreteGraph::cycle(4).unwrap(), 2));
    assert!(minimax_copwin(&DiscreteGraph::path(3).unwrap(), 1));
    assert!(!minimax_copwin(&DiscreteGraph::petersen(), 2));
}

#[test]
fn more_cops_never_hurt() {
    for level in connected_catalog(6) {
        for adj in level {
            let g = to_graph(&adj);
            let mut prev = false;
            for k in 1..=3 {
                let (win, _) = k_copwin(&g, k, DEFAULT_BUDGET).unwrap();
                assert!(!prev || win, "{adj:?}");
                prev = win;
            }
        }
    }
}

#[test]
fn named_cop_numbers() {
    for n in 4..=12 {
        let c = DiscreteGraph::cycle(n).unwrap();
        assert_eq!(cop_number_discrete(&c, DEFAULT_BUDGET).unwrap(), 2, "C{n}");
        assert!(!is_dismantlable(&c));
    }
    assert!(is_dismantlable(&DiscreteGraph::grid(1, 6).unwrap()));
    assert_eq!(cop_number_discrete(&DiscreteGraph::grid(3, 3).unwrap(), DEFAULT_BUDGET).unwrap(), 2);
    assert_eq!(cop_number_discrete(&DiscreteGraph::complete(5).unwrap(), DEFAULT_BUDGET).unwrap(), 1);
}

/// Play the tables against each other from every robber-winning start.
#[test]
fn robber_table_never_caught() {
    let graphs = [
        (DiscreteGraph::cycle(5).unwrap(), 1),
        (DiscreteGraph::cycle(6).unwrap(), 1),
        (DiscreteGraph::grid(3, 3).unwrap(), 1),
        (DiscreteGraph::petersen(), 2),
    ];
    for (g, k) in graphs {
        let (_, t) = k_copwin(&g, k, DEFAULT_BUDGET).unwrap();
        let n = g.vertex_count() as u32;
        let rounds = (n as usize).pow(k as u32 + 1);
        let starts: Vec<Vec<u32>> = if k == 1 {
            (0..n).map(|c| vec![c]).collect()
        } else {
            (0..n).flat_map(|a| (a..n).map(move |b| vec![a, b])).collect()
        };
        for cops in starts {
            for r in 0..n {
                let mut s = DiscreteState {
                    cops: cops.clone(),
                    robber: r,
                    turn: Turn::Robber,
                };
                if t.is_cop_win(&s).unwrap() {
                    continue;
                }
                for _ in 0..rounds {
                    s.robber = t.robber_move(&s).unwrap();
                    s.turn = Turn::Cops;
                    assert!(!s.cops.contains(&s.robber));
                    s.cops = t.cop_move(&s).unwrap();
                    s.turn = Turn::Robber;
                    assert!(!s.cops.contains(&s.robber));
                }
            }
        }
    }
}

/// On trees the optimal cop never lets the robber get farther away.
#[test]
fn cop_table_closes_in_on_trees() {
    for seed in 0..10 {
        let g = DiscreteGraph::random_tree(12, seed).unwrap();
        let (win, t) = k_copwin(&g, 1, DEFAULT_BUDGET).unwrap();
        assert!(win);
        let cop = t.cop_placement().unwrap();
        for r in 0..12 {
            let mut s = DiscreteState {
                cops: cop.clone(),
                robber: r,
                turn: Turn::Cops,
            };
            let mut caught = false;
            for _ in 0..50 {
                let before = t.graph_distance(s.cops[0], s.robber);
                s.cops = t.cop_move(&s).unwrap();
                if s.cops[0] == s.robber {
                    caught = true;
                    break;
                }
                s.turn = Turn::Robber;
                s.robber = t.robber_move(&s).unwrap();
                s.turn = Turn::Cops;
                assert!(t.graph_distance(s.cops[0], s.robber) <= before);
                if s.cops[0] == s.robber {
                    caught = true;
                    break;
                }
            }
            assert!(caught);
        }
    }
}
