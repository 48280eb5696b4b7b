//! Citation-graph analytics engine.
//!
//! Builds an immutable, indexed citation graph from paper metadata and
//! citation pairs, computes per-author impact indicators — h-index, the
//! influential-citation x-index, ACNPP, TCN, TPN — ranks authors by any
//! indicator, and evaluates rankings against prize-winner gold standards
//! using P@N and Average Precision.
//!
//! All indicator and metric arithmetic is exact rational ([`Rat`]); there
//! is no floating-point epsilon anywhere in a comparison path.

pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod indicators;
pub mod rat;
pub mod synthgen;

pub use corpus::{
    build_graph, canonicalize_name, parse_corpus, CanonicalAuthor, CitationGraph, PaperRecord,
};
pub use error::{Error, Result};
pub use evaluation::{
    average_precision, evaluate, load_gold_standard, precision_at_n, rank_authors, Category,
    EvalReport, GoldStandard, Indicator, RankedEntry, RankedList,
};
pub use indicators::{
    author_stats, compute_all, h_index, influential_citation_count, paper_influence, x_index,
    AuthorStats, IndicatorScores, InfluenceIndex,
};
pub use rat::Rat;
pub use synthgen::{generate, GenParams, SplitMix64};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::corpus::{build_graph, CitationGraph, PaperRecord};

    fn paper(id: &str, authors: &[&str]) -> PaperRecord {
        PaperRecord {
            paper_id: id.to_string(),
            title: format!("Paper {id}"),
            raw_authors: authors.iter().map(|s| s.to_string()).collect(),
            year: 2000,
        }
    }

    /// Five papers, three authors, seven edges; the hand-checked fixture
    /// used across the indicator and evaluation tests.
    pub fn pentad() -> CitationGraph {
        let papers = vec![
            paper("P1", &["A"]),
            paper("P2", &["A"]),
            paper("P3", &["B"]),
            paper("P4", &["B", "C"]),
            paper("P5", &["C"]),
        ];
        let edges = [
            ("P3", "P1"),
            ("P4", "P1"),
            ("P5", "P1"),
            ("P4", "P2"),
            ("P5", "P2"),
            ("P1", "P3"),
            ("P2", "P3"),
        ];
        let edges: Vec<(String, String)> = edges
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        build_graph(papers, &edges).unwrap()
    }
}
