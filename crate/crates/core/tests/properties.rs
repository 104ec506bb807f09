mod common;

use proptest::prelude::*;

use copspace::construct::{subdivide, ComponentEmbedding};
use copspace::discrete::{is_dismantlable, k_copwin, parse_edge_list, DiscreteGraph, GraphSpec, DEFAULT_BUDGET};
use copspace::format::{parse_space, space_to_json, Space};
use copspace::game::{new_game, read_trace, write_trace, AgilitySchedule};
use copspace::metric::{random_point, MetricGraph, VertexId};
use copspace::rng::stream_rng;
use copspace::strategies::{GreedyCops, RandomCops, RandomRobber};
use copspace::verify::check_legality;

const EPS: f64 = 1e-9;

fn space(seed: u64, n: usize) -> MetricGraph {
    common::random_space(&mut stream_rng(seed, "space"), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_axioms(seed in any::<u64>(), n in 1usize..9) {
        let g = space(seed, n);
        let mut rng = stream_rng(seed, "points");
        for _ in 0..20 {
            let (x, y, z) = (random_point(&g, &mut rng), random_point(&g, &mut rng), random_point(&g, &mut rng));
            let (xy, yz, xz) = (g.dist(x, y), g.dist(y, z), g.dist(x, z));
            prop_assert!(xy >= 0.0);
            prop_assert!((xy - g.dist(y, x)).abs() <= EPS);
            prop_assert!(xz <= xy + yz + EPS);
            prop_assert_eq!(g.dist(x, x), 0.0);
            let path = g.geodesic(x, y).unwrap();
            prop_assert!((path.length - xy).abs() <= EPS);
            let legs: f64 = path.legs.iter().map(|l| l.length()).sum();
            prop_assert!((legs - xy).abs() <= EPS);
        }
    }

    #[test]
    fn advance_stays_on_a_geodesic(seed in any::<u64>(), n in 1usize..9, budget in 0.0f64..3.0) {
        let g = space(seed, n);
        let mut rng = stream_rng(seed, "points");
        let (x, y) = (random_point(&g, &mut rng), random_point(&g, &mut rng));
        let a = g.advance_toward(x, y, budget);
        let (xa, ay, xy) = (g.dist(x, a), g.dist(a, y), g.dist(x, y));
        prop_assert!(xa <= budget + EPS);
        prop_assert!((xa + ay - xy).abs() <= 1e-8);
        prop_assert!((xa - budget.min(xy)).abs() <= 1e-8);
    }

    #[test]
    fn subdividing_keeps_distances(seed in any::<u64>(), n in 1usize..7, parts in 1usize..5) {
        let g = space(seed, n);
        let (s, _) = subdivide(&g, parts).unwrap();
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert!((g.vertex_distance(u, v) - s.vertex_distance(u, v)).abs() <= EPS);
            }
        }
    }

    #[test]
    fn space_files_round_trip_exactly(seed in any::<u64>(), n in 1usize..9) {
        let g = space(seed, n);
        let mut sp = Space::plain(g.clone());
        sp.components = vec![ComponentEmbedding::whole(&g, VertexId(0))];
        let back = parse_space(&space_to_json(&sp)).unwrap();
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(g.vertex_distance(u, v).to_bits(), back.graph.vertex_distance(u, v).to_bits());
            }
        }
        prop_assert_eq!(space_to_json(&back), space_to_json(&sp));
    }

    #[test]
    fn edge_lists_parse(edges in proptest::collection::vec((0u32..6, 0u32..6, 0.1f64..10.0), 0..12)) {
        let mut text = String::from("# random\n0\n");
        for (u, v, w) in &edges {
            text.push_str(&format!("v{u} v{v} {w}\n"));
        }
        match parse_edge_list(&text) {
            Ok(list) => {
                prop_assert!(edges.iter().all(|(u, v, _)| u != v));
                prop_assert_eq!(list.edges.len(), edges.len());
                for ((_, _, w), (_, _, got)) in edges.iter().zip(&list.edges) {
                    prop_assert_eq!(w, got);
                }
            }
            Err(_) => prop_assert!(edges.iter().any(|(u, v, _)| u == v)),
        }
    }

    #[test]
    fn specs_and_schedules_round_trip(n in 3usize..30, m in 1usize..6, c in 0.01f64..5.0, seed in any::<u64>()) {
        for spec in [
            GraphSpec::Path(n),
            GraphSpec::Cycle(n),
            GraphSpec::Complete(n),
            GraphSpec::Grid(m, n),
            GraphSpec::Tree { n, seed: Some(seed) },
            GraphSpec::Petersen,
        ] {
            prop_assert_eq!(spec.to_string().parse::<GraphSpec>().unwrap(), spec);
        }
        for s in [
            AgilitySchedule::constant(c).unwrap(),
            AgilitySchedule::harmonic(c).unwrap(),
            AgilitySchedule::list(vec![c, c / 2.0]).unwrap(),
        ] {
            let back: AgilitySchedule = s.to_string().parse().unwrap();
            prop_assert_eq!(back.tau(1).to_bits(), s.tau(1).to_bits());
            prop_assert_eq!(back.tau(7).to_bits(), s.tau(7).to_bits());
        }
    }

    #[test]
    fn games_are_legal_and_replayable(seed in any::<u64>(), n in 1usize..8, k in 1usize..4, greedy in any::<bool>()) {
        let g = space(seed, n);
        let schedule = AgilitySchedule::harmonic(1.0).unwrap();
        let play = || {
            let cops: Box<dyn copspace::game::CopStrategy> =
                if greedy { Box::new(GreedyCops) } else { Box::new(RandomCops::new(seed)) };
            let robber = Box::new(RandomRobber::new(seed, schedule.clone()));
            new_game(&g, k, robber, cops, 25, vec![0.5]).unwrap().run().unwrap()
        };
        let trace = play();
        prop_assert!(check_legality(&trace, &g).passed);
        let mut a = Vec::new();
        write_trace(&trace, &mut a).unwrap();
        let mut b = Vec::new();
        write_trace(&play(), &mut b).unwrap();
        prop_assert_eq!(&a, &b);
        let back = read_trace(&a[..]).unwrap();
        prop_assert_eq!(back, trace);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_cop_wins_exactly_on_dismantlable_graphs(seed in any::<u64>(), n in 1usize..9, extra in proptest::collection::vec((0u32..8, 0u32..8), 0..10)) {
        let tree = DiscreteGraph::random_tree(n, seed).unwrap();
        let mut edges = tree.edges();
        edges.extend(extra.into_iter().filter(|&(a, b)| a != b && (a as usize) < n && (b as usize) < n && !tree.is_adjacent(a, b)).map(|(a, b)| (a.min(b), a.max(b))));
        edges.sort();
        edges.dedup();
        let g = DiscreteGraph::new(n, &edges).unwrap();
        let (one, _) = k_copwin(&g, 1, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(one, is_dismantlable(&g));
        let (two, _) = k_copwin(&g, 2, DEFAULT_BUDGET).unwrap();
        prop_assert!(!one || two);
    }
}
