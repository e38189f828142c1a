mod common;

use common::*;
use targetctl::controllability::{is_distance_preserving, sample_qd};
use targetctl::io::{parse_edge_list, to_json};
use targetctl::leader_selection::{all_min_root_sets, TraceEvent};
use targetctl::linalg::numeric_rank;
use targetctl::partition::build_layer_graphs;
use targetctl::{
    build_cover, check_necessary, check_sufficient, combined_verdict, derived_set, partition_targets,
    select_leaders, Certificate, DiGraph, Distance, Matrix, Policy, Realization, SelectOptions, Status,
};

#[test]
fn edge_list_and_json_fixtures_agree() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/layered10.txt")).unwrap();
    let from_text = parse_edge_list(&text).unwrap();
    assert_eq!(from_text.graph, fixture("layered10.json").graph);
    let json = to_json(&from_text.graph, None, None);
    assert_eq!(targetctl::io::parse_json(&json).unwrap().graph, from_text.graph);
}

#[test]
fn five_node_adjacency_rank_is_one() {
    let f = fixture("split5.json");
    let (g, leaders, targets) = (f.graph, f.leaders.unwrap(), f.targets.unwrap());
    let x = sample_qd(&g, 0, Policy::Adjacency).unwrap();
    assert_eq!(gauss_rank(&ctrb_matrix(&x, &leaders, &targets)), 1);
    let real = Realization::new(g, x, leaders, targets).unwrap();
    assert_eq!(real.output_ctrb_rank(), 1);
}

#[test]
fn four_node_adjacency_rank_is_two() {
    let f = fixture("boundary4.json");
    let (g, leaders, targets) = (f.graph, f.leaders.unwrap(), f.targets.unwrap());
    let x = sample_qd(&g, 0, Policy::Adjacency).unwrap();
    assert_eq!(gauss_rank(&ctrb_matrix(&x, &leaders, &targets)), 2);
    let real = Realization::new(g, x, leaders, targets).unwrap();
    assert_eq!(real.output_ctrb_rank(), 2);
}

/// Every distance-k pair of the 4-node graph has a single shortest path,
/// so no weights can cancel a required entry of `X^k`.
#[test]
fn four_node_graph_admits_no_cancellation() {
    let g = fixture("boundary4.json").graph;
    let weights = [-2i64, -1, 1, 2];
    let arcs: Vec<(usize, usize)> = g.arcs().collect();
    for code in 0..weights.len().pow(arcs.len() as u32) {
        for diag in 0..3i64.pow(4) {
            let mut x = Matrix::<i64>::zeros(4, 4);
            let mut c = code;
            for &(u, v) in &arcs {
                x[(v - 1, u - 1)] = weights[c % 4];
                c /= 4;
            }
            let mut d = diag;
            for i in 0..4 {
                x[(i, i)] = d % 3 - 1;
                d /= 3;
            }
            assert!(is_distance_preserving(&g, &x).unwrap(), "{x:?}");
        }
    }
}

#[test]
fn two_shortest_paths_can_cancel() {
    let g = DiGraph::new(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
    let mut x = Matrix::<i64>::zeros(4, 4);
    x[(1, 0)] = 1;
    x[(2, 0)] = 1;
    x[(3, 1)] = 1;
    x[(3, 2)] = -1;
    assert!(!is_distance_preserving(&g, &x).unwrap());
    x[(3, 2)] = 2;
    assert!(is_distance_preserving(&g, &x).unwrap());
}

#[test]
fn case_study_distance_and_layers() {
    let f = fixture("case20.json");
    let (g, targets) = (f.graph, f.targets.unwrap());
    assert_eq!(g.set_distance(&set(&[4, 13]), 8).unwrap(), Distance::Finite(3));
    let d = derived_set(&g, &set(&[4, 13])).unwrap().black;
    assert_eq!(d, set(&[4, 13]));
    let d = derived_set(&g, &set(&[2, 4, 8, 13])).unwrap().black;
    let part = partition_targets(&g, &d, &targets).unwrap();
    assert_eq!(part.layers, vec![set(&[3, 6, 17]), set(&[20]), set(&[10, 16]), set(&[15])]);
    assert!(build_layer_graphs(&g, &part)
        .unwrap()
        .iter()
        .all(|b| b.run_forcing().all_forced()));
    assert_eq!(all_min_root_sets(&build_cover(&g, &targets).unwrap()), vec![set(&[4, 13])]);
}

#[test]
fn case_study_trace_order() {
    let f = fixture("case20.json");
    let sel = select_leaders(&f.graph, &f.targets.unwrap(), SelectOptions::default()).unwrap();
    let fails: Vec<usize> = sel
        .trace
        .iter()
        .filter_map(|e| match e {
            TraceEvent::LayerFail { layer, .. } => Some(*layer),
            _ => None,
        })
        .collect();
    assert_eq!(fails, vec![1, 3]);
}

#[test]
fn pattern_blocks_have_full_row_rank() {
    let f = fixture("layered10.json");
    let (g, leaders, targets) = (f.graph, f.leaders.unwrap(), f.targets.unwrap());
    let d = derived_set(&g, &leaders).unwrap().black;
    let part = partition_targets(&g, &d, &targets).unwrap();
    let graphs = build_layer_graphs(&g, &part).unwrap();
    for seed in 0..20 {
        let x = sample_qd(&g, seed, Policy::Random).unwrap();
        let mut power = x.clone();
        for (i, b) in graphs.iter().enumerate() {
            let rows: Vec<usize> = b.right().iter().map(|v| v - 1).collect();
            let cols: Vec<usize> = d.iter().map(|v| v - 1).collect();
            let m = power.select_rows(&rows).select_cols(&cols);
            for (r, &v) in b.right().as_slice().iter().enumerate() {
                for (c, &u) in d.as_slice().iter().enumerate() {
                    let arc = b.out_neighbors(u).contains(&v);
                    assert_eq!(m[(r, c)] != rat(0), arc, "layer {} entry ({v},{u})", i + 1);
                }
            }
            assert_eq!(gauss_rank(&m), b.right().len());
            power = oracle_mul(&power, &x);
        }
    }
}

#[test]
fn float_rank_matches_exact_rank() {
    for (name, leaders) in [("layered10.json", None), ("boundary4.json", None), ("split5.json", None), ("case20.json", Some(set(&[2, 4, 8, 13])))] {
        let f = fixture(name);
        let leaders = leaders.or(f.leaders).unwrap();
        let targets = f.targets.unwrap();
        for policy in [Policy::Adjacency, Policy::Laplacian, Policy::Random] {
            let x: targetctl::RationalMatrix = sample_qd(&f.graph, 3, policy).unwrap();
            let real = Realization::new(f.graph.clone(), x, leaders.clone(), targets.clone()).unwrap();
            let m = real.output_ctrb_matrix();
            assert_eq!(numeric_rank(&m, 1e-8), m.rank(), "{name} {policy:?}");
        }
    }
}

#[test]
fn verdict_json_shape() {
    let f = fixture("split5.json");
    let v = combined_verdict(&f.graph, &f.leaders.unwrap(), &f.targets.unwrap(), 200, 7).unwrap();
    assert_eq!(v.status, Status::Negative);
    let json = v.to_json();
    assert_eq!(json["status"], "NEGATIVE");
    assert_eq!(json["certificate"]["kind"], "rank_deficient");
    assert_eq!(json["certificate"]["rank"], 1);
    assert_eq!(json["seed"], 7);
}

#[test]
fn necessary_failure_carries_witness() {
    // Leader 1 with targets {2,3}: {1} cannot force two white out-neighbours.
    let g = DiGraph::new(3, [(1, 2), (1, 3)]).unwrap();
    let (l, t) = (set(&[1]), set(&[2, 3]));
    assert_eq!(check_sufficient(&g, &l, &t).unwrap().status, Status::Unknown);
    assert_eq!(check_necessary(&g, &l, &t).unwrap().status, Status::Negative);
    let v = combined_verdict(&g, &l, &t, 1, 0).unwrap();
    assert_eq!(v.status, Status::Negative);
    assert!(matches!(v.certificate, Certificate::RankDeficient { .. }));
}
