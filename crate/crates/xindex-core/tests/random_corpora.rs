//! Cross-module properties checked on randomly generated corpora.

use xindex_core::corpus::{build_graph, CitationGraph};
use xindex_core::indicators::{compute_all, x_index, x_index_scan, InfluenceIndex};
use xindex_core::synthgen::{generate, GenParams, SplitMix64};

fn random_graph(seed: u64, n_papers: usize, n_authors: usize) -> CitationGraph {
    let params = GenParams {
        n_papers,
        n_authors,
        authors_per_paper: (1, 4),
        citations_per_paper: (0, 8),
        preferential_exponent: 1.0,
        elite_fraction: 0.1,
        seed,
    };
    let (papers, edges, _) = generate(&params).unwrap();
    build_graph(papers, &edges).unwrap()
}

#[test]
fn citation_count_sum_equals_edge_count() {
    for seed in 0..20 {
        let g = random_graph(seed, 120, 15);
        let total: u64 = (0..g.paper_count()).map(|p| g.citation_count(p)).sum();
        assert_eq!(total, g.edge_count());
    }
}

#[test]
fn build_deterministic_under_edge_shuffle() {
    let mut rng = SplitMix64::new(99);
    for seed in 0..10 {
        let g = random_graph(seed, 100, 12);
        let papers = g.papers().to_vec();
        let mut edges: Vec<(String, String)> = Vec::new();
        for cited in 0..g.paper_count() {
            for &citing in g.citers_of(cited) {
                edges.push((
                    g.paper(citing as usize).paper_id.clone(),
                    g.paper(cited).paper_id.clone(),
                ));
            }
        }
        // Fisher-Yates shuffle
        for i in (1..edges.len()).rev() {
            let j = rng.next_range(0, i as u64) as usize;
            edges.swap(i, j);
        }
        let g2 = build_graph(papers, &edges).unwrap();
        assert!(g.structural_eq(&g2));
    }
}

#[test]
fn dump_round_trip_on_random_corpora() {
    for seed in 0..10 {
        let g = random_graph(seed, 80, 10);
        let mut buf = Vec::new();
        g.write_dump(&mut buf).unwrap();
        let g2 = CitationGraph::read_dump(buf.as_slice()).unwrap();
        assert!(g.structural_eq(&g2));
        let mut buf2 = Vec::new();
        g2.write_dump(&mut buf2).unwrap();
        assert_eq!(buf, buf2, "dump not byte-stable for seed {seed}");
    }
}

#[test]
fn binary_and_linear_x_search_agree() {
    for seed in 0..30 {
        let g = random_graph(seed, 150, 20);
        let index = InfluenceIndex::new(&g);
        for author in g.authors() {
            assert_eq!(
                x_index(&g, &index, author).unwrap(),
                x_index_scan(&g, &index, author).unwrap(),
                "seed {seed}, author {author}"
            );
        }
    }
}

#[test]
fn influential_count_non_increasing_and_anchored_at_zero() {
    for seed in 0..10 {
        let g = random_graph(seed, 120, 15);
        let index = InfluenceIndex::new(&g);
        for p in 0..g.paper_count() {
            assert_eq!(index.influential_count(p, 0), g.citation_count(p));
            let mut prev = u64::MAX;
            for x in 0..20 {
                let c = index.influential_count(p, x);
                assert!(c <= prev);
                prev = c;
            }
        }
    }
}

#[test]
fn score_bounds_hold_everywhere() {
    for seed in 0..10 {
        let g = random_graph(seed, 150, 20);
        for (author, s) in compute_all(&g) {
            assert!(s.x <= s.h, "x > h for {author}");
            assert!(s.h <= s.tpn, "h > tpn for {author}");
        }
    }
}

#[test]
fn adding_an_edge_never_decreases_tcn_or_h() {
    for seed in 0..10 {
        let g = random_graph(seed, 60, 10);
        let papers = g.papers().to_vec();
        let mut edges: Vec<(String, String)> = Vec::new();
        for cited in 0..g.paper_count() {
            for &citing in g.citers_of(cited) {
                edges.push((
                    g.paper(citing as usize).paper_id.clone(),
                    g.paper(cited).paper_id.clone(),
                ));
            }
        }
        // find a pair not already connected
        let mut rng = SplitMix64::new(seed);
        let extra = loop {
            let a = rng.next_range(0, g.paper_count() as u64 - 1) as usize;
            let b = rng.next_range(0, g.paper_count() as u64 - 1) as usize;
            if a == b {
                continue;
            }
            let pair = (
                g.paper(a).paper_id.clone(),
                g.paper(b).paper_id.clone(),
            );
            if !edges.contains(&pair) {
                break pair;
            }
        };
        edges.push(extra);
        let g2 = build_graph(papers, &edges).unwrap();
        let before: std::collections::BTreeMap<_, _> = compute_all(&g).into_iter().collect();
        for (author, after) in compute_all(&g2) {
            let b = &before[&author];
            assert!(after.tcn >= b.tcn);
            assert!(after.h >= b.h);
        }
    }
}
