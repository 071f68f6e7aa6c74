use dspheres::finite::{automorphism_generators, FiniteGraph};
use dspheres::metric::{self, truncate};
use dspheres::{parse_family, GraphHandle, VertexId};
use proptest::prelude::*;

const FAMILIES: &[&str] = &[
    "zline",
    "tree(3)",
    "tree(4)",
    "cycle(7)",
    "cliquetree(3,2)",
    "cliquetree(2,3)",
    "cliquetree(4,3)",
    "cart(zline,zline)",
    "cart(tree(3),cycle(5))",
    "direct(tree(3),cycle(7))",
    "direct(zline,complete(3))",
    "cart(path(3),cliquetree(3,2))",
];

/// Endpoint of a walk from the root that follows the given neighbor choices.
fn walk(g: &GraphHandle, choices: &[usize]) -> VertexId {
    let mut v = g.root();
    for &c in choices {
        let nb = g.neighbors(&v).unwrap();
        v = nb[c % nb.len()].clone();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_is_symmetric_and_sorted(f in 0..FAMILIES.len(), choices in prop::collection::vec(0usize..64, 0..12)) {
        let g = parse_family(FAMILIES[f]).unwrap();
        let v = walk(&g, &choices);
        let nb = g.neighbors(&v).unwrap();
        prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(!nb.contains(&v));
        for u in &nb {
            prop_assert!(g.contains(u));
            prop_assert!(g.neighbors(u).unwrap().contains(&v));
        }
    }

    #[test]
    fn vertex_strings_round_trip(f in 0..FAMILIES.len(), choices in prop::collection::vec(0usize..64, 0..12)) {
        let g = parse_family(FAMILIES[f]).unwrap();
        let v = walk(&g, &choices);
        prop_assert_eq!(g.parse_vertex(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn closed_form_distance_matches_bfs(
        f in 0..FAMILIES.len(),
        a in prop::collection::vec(0usize..64, 0..5),
        b in prop::collection::vec(0usize..64, 0..5),
    ) {
        let g = parse_family(FAMILIES[f]).unwrap();
        let (u, v) = (walk(&g, &a), walk(&g, &b));
        let closed = g.distance(&u, &v).unwrap();
        let bfs = metric::bfs_distance(&g, &u, &v, 16).unwrap();
        prop_assert_eq!(closed, bfs, "{} from {} to {}", FAMILIES[f], u, v);
    }

    #[test]
    fn regular_families_have_constant_degree(f in 0..FAMILIES.len(), choices in prop::collection::vec(0usize..64, 0..10)) {
        let g = parse_family(FAMILIES[f]).unwrap();
        if FAMILIES[f].contains("path") {
            return Ok(());
        }
        let v = walk(&g, &choices);
        prop_assert_eq!(g.degree(&v).unwrap(), g.degree(&g.root()).unwrap());
    }
}

#[test]
fn cliquetree_degree_and_cut_vertices() {
    for (m, t) in [(3u32, 2u32), (2, 3), (4, 2)] {
        let g = parse_family(&format!("cliquetree({m},{t})")).unwrap();
        let root = g.root();
        assert_eq!(g.degree(&root).unwrap() as u32, t * (m - 1));
        // removing the root splits its ball into one piece per clique
        let tr = truncate(&g, &root, 4).unwrap();
        let r = tr.index_of(&root).unwrap();
        let keep: Vec<usize> = (0..tr.vertices.len()).filter(|&v| v != r).collect();
        let rest = tr.graph.induced(&keep);
        let mut seen = vec![false; rest.order()];
        let mut parts = Vec::new();
        for s in 0..rest.order() {
            if seen[s] {
                continue;
            }
            let d = rest.bfs(s);
            let size = d.iter().filter(|x| x.is_some()).count();
            for (v, x) in d.iter().enumerate() {
                seen[v] |= x.is_some();
            }
            parts.push(size);
        }
        assert_eq!(parts.len() as u32, t);
        assert!(parts.iter().all(|&p| p == parts[0]));
        let bigger = truncate(&g, &root, 5).unwrap();
        assert!(bigger.vertices.len() > tr.vertices.len());
    }
}

#[test]
fn direct_product_degree_and_connectivity() {
    let g = parse_family("direct(tree(3),cycle(7))").unwrap();
    assert_eq!(g.degree(&g.root()).unwrap(), 6);
    let tr = truncate(&g, &g.root(), 6).unwrap();
    assert!(tr.graph.is_connected());
    // an even cycle splits the product into two bipartite halves
    let even = parse_family("direct(tree(3),cycle(6))").unwrap();
    let far = VertexId::pair(VertexId::word(vec![]), VertexId::Int(1));
    assert_eq!(even.distance(&even.root(), &far).unwrap(), None);
}

#[test]
fn root_stabilizer_is_transitive_on_tree_spheres() {
    let tree = parse_family("tree(3)").unwrap();
    for r in 1..=4 {
        let tr = truncate(&tree, &tree.root(), r).unwrap();
        let mut colors = vec![0u32; tr.vertices.len()];
        colors[tr.index_of(&tree.root()).unwrap()] = 1;
        let (gens, order) = automorphism_generators(&tr.graph, Some(&colors));
        let orbits = dspheres::permgrp::close_group(tr.vertices.len(), gens, 1)
            .map(|g| g.orbits())
            .unwrap_or_default();
        for n in 1..=r {
            let sphere = metric::sphere(&tree, &tree.root(), n).unwrap().members;
            let idx: Vec<usize> = sphere.iter().map(|v| tr.index_of(v).unwrap()).collect();
            let orbit = orbits.iter().find(|o| o.contains(&idx[0])).unwrap();
            assert!(idx.iter().all(|i| orbit.contains(i)), "radius {r}, sphere {n}");
        }
        // 3 · 2^(1 + 2 + 4 + ...) counted by levels
        let expected: u128 = 6 * (1..r).map(|l| 1u128 << (3 * (1u32 << (l - 1)))).product::<u128>();
        assert_eq!(order, expected, "radius {r}");
    }
}

#[test]
fn finite_graph_exports_round_trip() {
    let g = FiniteGraph::petersen();
    let list = g.to_edge_list();
    assert_eq!(FiniteGraph::from_edge_list(&list).unwrap().edges(), g.edges());
    let labels: Vec<String> = (0..10).map(|i| i.to_string()).collect();
    let back = FiniteGraph::from_dot(&g.to_dot(&labels, None)).unwrap();
    assert_eq!(back.edges(), g.edges());
}
