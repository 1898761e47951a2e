#![allow(dead_code)]

use tricount::generators;
use tricount::EdgeArray;

/// The seeded G(n, p) corpus: 200 graphs, n in 2..=64, p cycling through
/// 0.05, 0.1, 0.3, 0.7.
pub fn random_corpus() -> Vec<(String, EdgeArray)> {
    const PS: [f64; 4] = [0.05, 0.1, 0.3, 0.7];
    (0..200u64)
        .map(|i| {
            let n = 2 + (i * 37 % 63) as u32;
            let p = PS[i as usize % 4];
            let g = generators::gnp(n, p, 1000 + i).unwrap();
            (format!("gnp(n={n},p={p},seed={})", 1000 + i), g)
        })
        .collect()
}

pub fn complete_bipartite(a: u32, b: u32) -> EdgeArray {
    EdgeArray::normalize((0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))))
}

/// Random recursive tree: vertex v attaches to a pseudo-random earlier vertex.
pub fn tree(n: u32, salt: u64) -> EdgeArray {
    EdgeArray::normalize((1..n).map(|v| {
        let h = (u64::from(v) ^ salt).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 33;
        ((h % u64::from(v)) as u32, v)
    }))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
