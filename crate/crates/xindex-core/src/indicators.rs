//! Per-author impact indicators: TPN, TCN, ACNPP, h-index, and the
//! influential-citation x-index.
//!
//! The x-index is self-referential: a citation is influential at
//! threshold x when the citing paper's author-average ACNPP is >= x, and
//! x itself is the largest integer such that x of the author's papers
//! each have >= x influential citations. Paper influence does not depend
//! on x or on the author being scored, so it is computed once per paper;
//! citer influences are then sorted per cited paper and every count is a
//! binary search. The threshold predicate is monotone non-increasing in
//! x, so x is found by binary search over [0, h].
//!
//! All influence comparisons use exact rational arithmetic: an influence
//! of exactly x counts as influential (>=, not >).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::corpus::{CanonicalAuthor, CitationGraph};
use crate::error::{Error, Result};
use crate::rat::{rat_int, rat_zero, Rat};

/// Per-author totals. `acnpp = tcn / tpn`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorStats {
    pub tpn: u64,
    pub tcn: u64,
    pub acnpp: Rat,
}

/// Full per-author indicator record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorScores {
    pub x: u64,
    pub h: u64,
    pub acnpp: Rat,
    pub tcn: u64,
    pub tpn: u64,
}

/// Largest h such that at least h values are >= h.
pub fn h_index(citation_counts: &[u64]) -> u64 {
    let mut sorted: Vec<u64> = citation_counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut h = 0u64;
    for (i, &c) in sorted.iter().enumerate() {
        if c >= i as u64 + 1 {
            h = i as u64 + 1;
        } else {
            break;
        }
    }
    h
}

/// TPN, TCN, and ACNPP for one author.
pub fn author_stats(graph: &CitationGraph, author: &CanonicalAuthor) -> Result<AuthorStats> {
    let papers = graph
        .papers_of(author)
        .ok_or_else(|| Error::UnknownAuthor(author.to_string()))?;
    let tpn = papers.len() as u64;
    let tcn: u64 = papers.iter().map(|&p| graph.citation_count(p as usize)).sum();
    Ok(AuthorStats {
        tpn,
        tcn,
        acnpp: Rat::new(BigInt::from(tcn), BigInt::from(tpn)),
    })
}

/// Mean ACNPP over a paper's distinct canonical authors; 0 for
/// authorless papers.
pub fn paper_influence(graph: &CitationGraph, paper_id: &str) -> Result<Rat> {
    let idx = graph
        .paper_index(paper_id)
        .ok_or_else(|| Error::UnknownPaper(paper_id.to_string()))?;
    let acnpp = author_acnpp_map(graph);
    Ok(influence_of(graph, &acnpp, idx))
}

fn author_acnpp_map(graph: &CitationGraph) -> BTreeMap<CanonicalAuthor, Rat> {
    graph
        .authors()
        .map(|a| {
            let stats = author_stats(graph, a).expect("author from graph");
            (a.clone(), stats.acnpp)
        })
        .collect()
}

fn influence_of(
    graph: &CitationGraph,
    acnpp: &BTreeMap<CanonicalAuthor, Rat>,
    paper: usize,
) -> Rat {
    let authors = graph.paper_authors(paper);
    if authors.is_empty() {
        return rat_zero();
    }
    let sum: Rat = authors.iter().map(|a| acnpp[a].clone()).sum();
    sum / rat_int(authors.len() as u64)
}

/// Precomputed per-paper influence values with the sorted structures that
/// make influential-citation counts a binary search.
pub struct InfluenceIndex {
    influences: Vec<Rat>,
    /// Distinct influence values, ascending.
    sorted_unique: Vec<Rat>,
    /// Per paper: ranks (indices into `sorted_unique`) of its citers,
    /// sorted descending.
    citer_ranks: Vec<Vec<u32>>,
}

impl InfluenceIndex {
    pub fn new(graph: &CitationGraph) -> Self {
        let acnpp = author_acnpp_map(graph);
        let n = graph.paper_count();
        let influences: Vec<Rat> = (0..n).map(|p| influence_of(graph, &acnpp, p)).collect();

        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| influences[a as usize].cmp(&influences[b as usize]));
        let mut sorted_unique: Vec<Rat> = Vec::new();
        let mut rank = vec![0u32; n];
        for &p in &order {
            let v = &influences[p as usize];
            if sorted_unique.last() != Some(v) {
                sorted_unique.push(v.clone());
            }
            rank[p as usize] = (sorted_unique.len() - 1) as u32;
        }

        let citer_ranks: Vec<Vec<u32>> = (0..n)
            .map(|p| {
                let mut ranks: Vec<u32> =
                    graph.citers_of(p).iter().map(|&q| rank[q as usize]).collect();
                ranks.sort_unstable_by(|a, b| b.cmp(a));
                ranks
            })
            .collect();

        InfluenceIndex {
            influences,
            sorted_unique,
            citer_ranks,
        }
    }

    pub fn influences(&self) -> &[Rat] {
        &self.influences
    }

    pub fn influence(&self, paper: usize) -> &Rat {
        &self.influences[paper]
    }

    /// Smallest rank whose influence is >= x; `sorted_unique.len()` when
    /// no influence reaches x.
    fn threshold_rank(&self, x: u64) -> u32 {
        let x = rat_int(x);
        self.sorted_unique.partition_point(|v| *v < x) as u32
    }

    /// Number of citing papers of `paper` with influence >= x.
    pub fn influential_count(&self, paper: usize, x: u64) -> u64 {
        self.count_at_rank(paper, self.threshold_rank(x))
    }

    fn count_at_rank(&self, paper: usize, threshold: u32) -> u64 {
        self.citer_ranks[paper].partition_point(|&r| r >= threshold) as u64
    }
}

/// Number of citing papers of `paper_id` with influence >= x.
pub fn influential_citation_count(
    graph: &CitationGraph,
    index: &InfluenceIndex,
    paper_id: &str,
    x: u64,
) -> Result<u64> {
    let idx = graph
        .paper_index(paper_id)
        .ok_or_else(|| Error::UnknownPaper(paper_id.to_string()))?;
    Ok(index.influential_count(idx, x))
}

fn author_h(graph: &CitationGraph, papers: &std::collections::BTreeSet<u32>) -> u64 {
    let counts: Vec<u64> = papers.iter().map(|&p| graph.citation_count(p as usize)).collect();
    h_index(&counts)
}

/// At least `x` of the author's papers each have >= x influential
/// citations at threshold x. Monotone non-increasing in x.
fn x_predicate(
    index: &InfluenceIndex,
    papers: &std::collections::BTreeSet<u32>,
    x: u64,
) -> bool {
    if x == 0 {
        return true;
    }
    let threshold = index.threshold_rank(x);
    let mut qualifying = 0u64;
    for &p in papers {
        if index.count_at_rank(p as usize, threshold) >= x {
            qualifying += 1;
            if qualifying >= x {
                return true;
            }
        }
    }
    false
}

/// Largest x such that at least x of the author's papers each have >= x
/// influential citations. Binary search over [0, h]; the predicate is
/// false for every x > h because an influential citation is in
/// particular a citation.
pub fn x_index(
    graph: &CitationGraph,
    index: &InfluenceIndex,
    author: &CanonicalAuthor,
) -> Result<u64> {
    let papers = graph
        .papers_of(author)
        .ok_or_else(|| Error::UnknownAuthor(author.to_string()))?;
    let h = author_h(graph, papers);
    let mut lo = 0u64;
    let mut hi = h + 1;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if x_predicate(index, papers, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Same result as [`x_index`], by linear scan over x = 0..h. Kept public
/// as the second route for the search-equivalence property.
pub fn x_index_scan(
    graph: &CitationGraph,
    index: &InfluenceIndex,
    author: &CanonicalAuthor,
) -> Result<u64> {
    let papers = graph
        .papers_of(author)
        .ok_or_else(|| Error::UnknownAuthor(author.to_string()))?;
    let h = author_h(graph, papers);
    let mut best = 0u64;
    for x in 1..=h {
        if x_predicate(index, papers, x) {
            best = x;
        } else {
            break;
        }
    }
    Ok(best)
}

/// Scores every author. Evaluation may run in parallel; output order and
/// content are identical for any number of workers (authors are scored
/// independently and assembled in sorted author order).
pub fn compute_all(graph: &CitationGraph) -> Vec<(CanonicalAuthor, IndicatorScores)> {
    let index = InfluenceIndex::new(graph);
    let authors: Vec<CanonicalAuthor> = graph.authors().cloned().collect();
    authors
        .into_par_iter()
        .map(|author| {
            let stats = author_stats(graph, &author).expect("author from graph");
            let papers = graph.papers_of(&author).expect("author from graph");
            let h = author_h(graph, papers);
            let x = x_index(graph, &index, &author).expect("author from graph");
            (
                author,
                IndicatorScores {
                    x,
                    h,
                    acnpp: stats.acnpp,
                    tcn: stats.tcn,
                    tpn: stats.tpn,
                },
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_graph, canonicalize_name, PaperRecord};
    use crate::rat::rat;
    use crate::testutil::pentad;

    fn author(name: &str) -> CanonicalAuthor {
        canonicalize_name(name).unwrap()
    }

    #[test]
    fn h_index_pentad_a() {
        assert_eq!(h_index(&[3, 2]), 2);
    }

    #[test]
    fn h_index_degenerate() {
        assert_eq!(h_index(&[]), 0);
        assert_eq!(h_index(&[0, 0, 0]), 0);
    }

    #[test]
    fn h_index_exact_boundary() {
        assert_eq!(h_index(&[5, 5, 5, 5, 5]), 5);
    }

    #[test]
    fn h_index_brute_force_agreement() {
        let brute = |counts: &[u64]| -> u64 {
            (0..=counts.len() as u64)
                .filter(|&h| counts.iter().filter(|&&c| c >= h).count() as u64 >= h)
                .max()
                .unwrap()
        };
        let cases: &[&[u64]] = &[
            &[1],
            &[10, 8, 5, 4, 3],
            &[1, 1, 1, 1],
            &[4, 4, 4, 4],
            &[25, 8, 5, 3, 3, 3, 2, 1, 0, 0],
        ];
        for counts in cases {
            assert_eq!(h_index(counts), brute(counts), "counts {counts:?}");
        }
    }

    #[test]
    fn pentad_author_stats() {
        let g = pentad();
        let a = author_stats(&g, &author("A")).unwrap();
        assert_eq!((a.tpn, a.tcn), (2, 5));
        assert_eq!(a.acnpp, rat(5, 2));
        let c = author_stats(&g, &author("C")).unwrap();
        assert_eq!((c.tpn, c.tcn), (2, 0));
        assert_eq!(c.acnpp, rat(0, 1));
    }

    #[test]
    fn unknown_author_is_an_error() {
        let g = pentad();
        assert!(matches!(
            author_stats(&g, &author("Nobody")),
            Err(Error::UnknownAuthor(_))
        ));
    }

    #[test]
    fn pentad_paper_influences() {
        let g = pentad();
        assert_eq!(paper_influence(&g, "P1").unwrap(), rat(5, 2));
        assert_eq!(paper_influence(&g, "P2").unwrap(), rat(5, 2));
        assert_eq!(paper_influence(&g, "P3").unwrap(), rat(1, 1));
        assert_eq!(paper_influence(&g, "P4").unwrap(), rat(1, 2));
        assert_eq!(paper_influence(&g, "P5").unwrap(), rat(0, 1));
        assert!(matches!(
            paper_influence(&g, "P9"),
            Err(Error::UnknownPaper(_))
        ));
    }

    #[test]
    fn authorless_paper_has_zero_influence() {
        let papers = vec![PaperRecord {
            paper_id: "Q1".into(),
            title: "t".into(),
            raw_authors: vec![],
            year: 2000,
        }];
        let g = build_graph(papers, &[]).unwrap();
        assert_eq!(paper_influence(&g, "Q1").unwrap(), rat_zero());
    }

    #[test]
    fn pentad_influential_citation_counts() {
        let g = pentad();
        let idx = InfluenceIndex::new(&g);
        // P1's citers have influences 1, 1/2, 0
        assert_eq!(influential_citation_count(&g, &idx, "P1", 1).unwrap(), 1);
        assert_eq!(influential_citation_count(&g, &idx, "P1", 0).unwrap(), 3);
        // exact boundary: influence 5/2 >= 2 counts (>=, not >)
        assert_eq!(influential_citation_count(&g, &idx, "P3", 2).unwrap(), 2);
    }

    #[test]
    fn influential_count_at_zero_equals_citation_count() {
        let g = pentad();
        let idx = InfluenceIndex::new(&g);
        for p in 0..g.paper_count() {
            assert_eq!(idx.influential_count(p, 0), g.citation_count(p));
        }
    }

    #[test]
    fn pentad_x_indices() {
        let g = pentad();
        let idx = InfluenceIndex::new(&g);
        assert_eq!(x_index(&g, &idx, &author("A")).unwrap(), 1);
        assert_eq!(x_index(&g, &idx, &author("B")).unwrap(), 1);
        assert_eq!(x_index(&g, &idx, &author("C")).unwrap(), 0);
    }

    #[test]
    fn pentad_compute_all() {
        let g = pentad();
        let scores = compute_all(&g);
        let by_name: std::collections::BTreeMap<&str, &IndicatorScores> =
            scores.iter().map(|(a, s)| (a.as_str(), s)).collect();
        assert_eq!((by_name["A"].h, by_name["A"].x), (2, 1));
        assert_eq!((by_name["B"].h, by_name["B"].x), (1, 1));
        assert_eq!((by_name["C"].h, by_name["C"].x), (0, 0));
    }

    #[test]
    fn compute_all_empty_corpus() {
        let g = build_graph(vec![], &[]).unwrap();
        assert!(compute_all(&g).is_empty());
    }

    #[test]
    fn x_equals_h_when_all_citing_influence_suffices() {
        // two papers citing each other; both citers have influence 1 and
        // both authors have h = 1, so no citation is ever excluded.
        let mk = |id: &str, auth: &str| PaperRecord {
            paper_id: id.into(),
            title: "t".into(),
            raw_authors: vec![auth.into()],
            year: 2000,
        };
        let papers = vec![mk("P1", "D One"), mk("P2", "E Two")];
        let edges = vec![
            ("P1".to_string(), "P2".to_string()),
            ("P2".to_string(), "P1".to_string()),
        ];
        let g = build_graph(papers, &edges).unwrap();
        for (_, s) in compute_all(&g) {
            assert_eq!(s.x, s.h);
            assert_eq!(s.h, 1);
        }
    }

    #[test]
    fn binary_and_linear_search_agree_on_pentad() {
        let g = pentad();
        let idx = InfluenceIndex::new(&g);
        for a in g.authors() {
            assert_eq!(
                x_index(&g, &idx, a).unwrap(),
                x_index_scan(&g, &idx, a).unwrap()
            );
        }
    }

    #[test]
    fn x_bounded_by_h_bounded_by_tpn() {
        let g = pentad();
        for (_, s) in compute_all(&g) {
            assert!(s.x <= s.h);
            assert!(s.h <= s.tpn);
        }
    }
}
