use tricount::generators::{
    barabasi_albert, complete, generate, gnp, rmat_graph, watts_strogatz, Family, GeneratorSpec,
};
use tricount::oracle::brute_force_count;
use tricount::{count_triangles, degrees_of, preprocess, EdgeArray, RmatParams, TriangleCount};

fn engine(g: &EdgeArray) -> TriangleCount {
    count_triangles(&preprocess(g), 4)
}

// Frozen expectations below were computed by brute_force_count on the
// generated graphs; the assertions re-run the oracle as well.

#[test]
fn gnp_64_matches_oracle() {
    let g = gnp(64, 0.3, 42).unwrap();
    let oracle = brute_force_count(&g).unwrap();
    assert_eq!(engine(&g), oracle);
    assert_eq!(oracle, TriangleCount(GNP_64_03_SEED42));
}

#[test]
fn watts_strogatz_against_oracle() {
    let lattice = watts_strogatz(16, 4, 0.0, 0).unwrap();
    let oracle = brute_force_count(&lattice).unwrap();
    assert_eq!(engine(&lattice), oracle);
    // each vertex closes one triangle with its two successors
    assert_eq!(oracle, TriangleCount(16));

    assert_eq!(
        engine(&watts_strogatz(6, 2, 0.0, 0).unwrap()),
        TriangleCount(0)
    );

    for seed in 0..5 {
        let g = watts_strogatz(64, 6, 1.0, seed).unwrap();
        assert_eq!(engine(&g), brute_force_count(&g).unwrap(), "seed {seed}");
    }
}

#[test]
fn barabasi_albert_against_oracle() {
    assert_eq!(
        engine(&barabasi_albert(5, 4, 0).unwrap()),
        TriangleCount(10)
    );
    let g = barabasi_albert(64, 3, 17).unwrap();
    let oracle = brute_force_count(&g).unwrap();
    assert_eq!(engine(&g), oracle);
    assert_eq!(oracle, TriangleCount(BA_64_3_SEED17));
}

#[test]
fn complete_through_generate() {
    let spec = GeneratorSpec::new(Family::Complete { n: 5 }, 0);
    let g = generate(&spec).unwrap();
    assert_eq!(g, complete(5));
    assert_eq!(g.num_undirected_edges(), 10);
    assert_eq!(engine(&g), TriangleCount(10));
}

#[test]
fn every_family_produces_valid_edge_arrays() {
    let specs = [
        ("rmat", vec![("scale", "9")]),
        ("ba", vec![("n", "300"), ("m_attach", "4")]),
        ("ws", vec![("n", "300"), ("k", "8"), ("beta", "0.3")]),
        ("complete", vec![("n", "12")]),
        ("cycle", vec![("n", "12")]),
        ("path", vec![("n", "12")]),
        ("star", vec![("leaves", "12")]),
        ("gnp", vec![("n", "300"), ("p", "0.05")]),
    ];
    for (family, params) in specs {
        for seed in ["1", "2"] {
            let mut params = params.clone();
            params.push(("seed", seed));
            let spec = GeneratorSpec::from_params(family, params).unwrap();
            let g = generate(&spec).unwrap();
            assert_eq!(
                EdgeArray::validate(g.edges().to_vec()).as_ref(),
                Ok(&g),
                "{spec}"
            );
            assert_eq!(generate(&spec).unwrap(), g, "{spec} is not deterministic");
        }
    }
}

#[test]
fn rmat_degree_distribution_is_skewed() {
    let g = rmat_graph(
        RmatParams {
            scale: 12,
            ..RmatParams::default()
        },
        3,
    )
    .unwrap();
    let degrees = degrees_of(&g);
    let mean = g.num_entries() as f64 / 4096.0;
    assert!(
        f64::from(degrees.max_degree()) > 10.0 * mean,
        "max {} vs mean {mean}",
        degrees.max_degree()
    );
}

const GNP_64_03_SEED42: u64 = 1353;
const BA_64_3_SEED17: u64 = 69;
