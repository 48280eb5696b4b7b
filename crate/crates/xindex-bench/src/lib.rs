//! Shared fixtures for the benchmark suite.

use xindex_core::corpus::{build_graph, CitationGraph};
use xindex_core::synthgen::{generate, GenParams};

/// Deterministic benchmark corpus: `n` papers, n/10 authors, linear
/// preferential attachment.
pub fn bench_graph(n: usize) -> CitationGraph {
    let params = GenParams {
        n_papers: n,
        n_authors: (n / 10).max(1),
        authors_per_paper: (1, 5),
        citations_per_paper: (0, 10),
        preferential_exponent: 1.0,
        elite_fraction: 0.05,
        seed: 7,
    };
    let (papers, edges, _) = generate(&params).expect("valid params");
    build_graph(papers, &edges).expect("clean synthetic corpus")
}
