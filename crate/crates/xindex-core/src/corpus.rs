//! Corpus ingestion: paper metadata, citation pairs, author name
//! canonicalization, and the immutable indexed citation graph.
//!
//! The graph is built once, single-threaded, and is read-only afterwards;
//! everything downstream (indicators, evaluation) treats it as shared
//! immutable state.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::{Read, Write};

use crate::error::{Error, Result};

/// One article's metadata. Affiliation/journal/volume columns are accepted
/// on input but never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub paper_id: String,
    pub title: String,
    pub raw_authors: Vec<String>,
    pub year: i32,
}

/// Abbreviated author identity, `"J. Mather"` style. Used in lieu of
/// person-name disambiguation; ordering is lexicographic on the string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalAuthor(String);

impl CanonicalAuthor {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalAuthor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

const GENERATIONAL_SUFFIXES: &[&str] = &["jr", "jr.", "sr", "sr."];
const ROMAN_SUFFIXES: &[&str] = &["II", "III", "IV"];

/// Abbreviates a raw author name to `"<I>. <Last>"`.
///
/// I is the uppercased first alphabetic character of the first
/// whitespace-separated token; Last is the final token after stripping
/// generational suffixes (Jr., Sr., II, III, IV). A single-token name is
/// returned unchanged. Idempotent and deterministic.
pub fn canonicalize_name(raw: &str) -> Result<CanonicalAuthor> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(Error::RejectedName);
    }
    let mut tokens: Vec<&str> = trimmed.split_whitespace().collect();
    while tokens.len() > 1 {
        let last = tokens.last().unwrap().trim_end_matches(',');
        let lower = last.to_lowercase();
        if GENERATIONAL_SUFFIXES.contains(&lower.as_str()) || ROMAN_SUFFIXES.contains(&last) {
            tokens.pop();
        } else {
            break;
        }
    }
    if tokens.len() == 1 {
        return Ok(CanonicalAuthor(tokens[0].to_string()));
    }
    let first = tokens[0];
    let initial = first
        .chars()
        .find(|c| c.is_alphabetic())
        .unwrap_or_else(|| first.chars().next().unwrap());
    // single char: some uppercase mappings expand (e.g. U+1FF2), which
    // would break idempotence
    let initial: String = initial.to_uppercase().take(1).collect();
    let mut last = tokens.last().unwrap().trim_end_matches(',');
    if last.is_empty() {
        last = tokens.last().unwrap();
    }
    Ok(CanonicalAuthor(format!("{initial}. {last}")))
}

/// Counts of everything that was cleaned up rather than ingested.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestDiagnostics {
    pub malformed_metadata_lines: u64,
    pub malformed_citation_lines: u64,
    pub dangling_edges: u64,
    pub duplicate_edges: u64,
    pub self_loops: u64,
}

/// Parses the metadata file format: delimiter-separated, header row with
/// at least `paper_id,title,authors,year`; multiple authors separated by
/// `|`. Extra columns are ignored. Returns the records in input order
/// plus the count of malformed (skipped) lines.
pub fn parse_metadata<R: Read>(reader: R) -> Result<(Vec<PaperRecord>, u64)> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (id_i, title_i, authors_i, year_i) =
        match (col("paper_id"), col("title"), col("authors"), col("year")) {
            (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
            _ => return Err(Error::MissingColumns("paper_id,title,authors,year")),
        };
    let mut papers = Vec::new();
    let mut malformed = 0u64;
    for rec in rdr.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(_) => {
                malformed += 1;
                continue;
            }
        };
        let id = rec.get(id_i).unwrap_or("").trim();
        let year = rec.get(year_i).unwrap_or("").trim().parse::<i32>();
        let (id, year) = match (id.is_empty(), year) {
            (false, Ok(y)) => (id.to_string(), y),
            _ => {
                malformed += 1;
                continue;
            }
        };
        let raw_authors = rec
            .get(authors_i)
            .unwrap_or("")
            .split('|')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        papers.push(PaperRecord {
            paper_id: id,
            title: rec.get(title_i).unwrap_or("").to_string(),
            raw_authors,
            year,
        });
    }
    Ok((papers, malformed))
}

/// Parses the citations file format: header row, columns
/// `citing_id,cited_id`.
pub fn parse_citations<R: Read>(reader: R) -> Result<(Vec<(String, String)>, u64)> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (citing_i, cited_i) = match (col("citing_id"), col("cited_id")) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::MissingColumns("citing_id,cited_id")),
    };
    let mut edges = Vec::new();
    let mut malformed = 0u64;
    for rec in rdr.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(_) => {
                malformed += 1;
                continue;
            }
        };
        let citing = rec.get(citing_i).unwrap_or("").trim();
        let cited = rec.get(cited_i).unwrap_or("").trim();
        if citing.is_empty() || cited.is_empty() {
            malformed += 1;
            continue;
        }
        edges.push((citing.to_string(), cited.to_string()));
    }
    Ok((edges, malformed))
}

/// Malformed-line counts from [`parse_corpus`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseDiagnostics {
    pub malformed_metadata_lines: u64,
    pub malformed_citation_lines: u64,
}

/// Parses both input streams. Well-formed records come back in input
/// order; malformed lines are counted and skipped, never altered.
pub fn parse_corpus<R1: Read, R2: Read>(
    metadata: R1,
    citations: R2,
) -> Result<(Vec<PaperRecord>, Vec<(String, String)>, ParseDiagnostics)> {
    let (papers, malformed_metadata_lines) = parse_metadata(metadata)?;
    let (edges, malformed_citation_lines) = parse_citations(citations)?;
    Ok((
        papers,
        edges,
        ParseDiagnostics {
            malformed_metadata_lines,
            malformed_citation_lines,
        },
    ))
}

/// Writes the metadata file format (see [`parse_metadata`]).
pub fn write_metadata<W: Write>(writer: W, papers: &[PaperRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["paper_id", "title", "authors", "year"])?;
    for p in papers {
        w.write_record([
            p.paper_id.as_str(),
            p.title.as_str(),
            &p.raw_authors.join("|"),
            &p.year.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the citations file format (see [`parse_citations`]).
pub fn write_citations<W: Write>(writer: W, edges: &[(String, String)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["citing_id", "cited_id"])?;
    for (citing, cited) in edges {
        w.write_record([citing.as_str(), cited.as_str()])?;
    }
    w.flush()?;
    Ok(())
}

/// Immutable indexed citation graph.
///
/// Every edge endpoint exists, edges are deduplicated, self-loops are
/// rejected; each cleanup is counted in [`IngestDiagnostics`]. Citer
/// lists are sorted by citing paper id so the representation (and the
/// dump) is canonical.
#[derive(Debug, Clone)]
pub struct CitationGraph {
    papers: Vec<PaperRecord>,
    id_index: HashMap<String, u32>,
    citers: Vec<Vec<u32>>,
    canonical_authors: Vec<Vec<CanonicalAuthor>>,
    author_papers: BTreeMap<CanonicalAuthor, BTreeSet<u32>>,
    edge_count: u64,
    diagnostics: IngestDiagnostics,
}

/// Builds the graph. Refuses duplicate paper ids; drops (and counts)
/// dangling edges, duplicate edges, and self-loops. An author listed
/// twice on one paper counts that paper once.
pub fn build_graph(papers: Vec<PaperRecord>, edges: &[(String, String)]) -> Result<CitationGraph> {
    let mut id_index = HashMap::with_capacity(papers.len());
    for (i, p) in papers.iter().enumerate() {
        if p.paper_id.is_empty() {
            return Err(Error::DuplicatePaperId(String::new()));
        }
        if id_index.insert(p.paper_id.clone(), i as u32).is_some() {
            return Err(Error::DuplicatePaperId(p.paper_id.clone()));
        }
    }

    let mut diagnostics = IngestDiagnostics::default();
    let mut edge_set: HashSet<(u32, u32)> = HashSet::with_capacity(edges.len());
    for (citing, cited) in edges {
        match (id_index.get(citing), id_index.get(cited)) {
            (Some(&a), Some(&b)) => {
                if a == b {
                    diagnostics.self_loops += 1;
                } else if !edge_set.insert((a, b)) {
                    diagnostics.duplicate_edges += 1;
                }
            }
            _ => diagnostics.dangling_edges += 1,
        }
    }

    let mut citers: Vec<Vec<u32>> = vec![Vec::new(); papers.len()];
    for &(citing, cited) in &edge_set {
        citers[cited as usize].push(citing);
    }
    for list in &mut citers {
        list.sort_unstable_by(|&a, &b| {
            papers[a as usize].paper_id.cmp(&papers[b as usize].paper_id)
        });
    }

    let mut canonical_authors = Vec::with_capacity(papers.len());
    let mut author_papers: BTreeMap<CanonicalAuthor, BTreeSet<u32>> = BTreeMap::new();
    for (i, p) in papers.iter().enumerate() {
        let mut distinct: BTreeSet<CanonicalAuthor> = BTreeSet::new();
        for raw in &p.raw_authors {
            if let Ok(c) = canonicalize_name(raw) {
                distinct.insert(c);
            }
        }
        for c in &distinct {
            author_papers.entry(c.clone()).or_default().insert(i as u32);
        }
        canonical_authors.push(distinct.into_iter().collect());
    }

    Ok(CitationGraph {
        papers,
        id_index,
        citers,
        canonical_authors,
        author_papers,
        edge_count: edge_set.len() as u64,
        diagnostics,
    })
}

impl CitationGraph {
    pub fn paper_count(&self) -> usize {
        self.papers.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn diagnostics(&self) -> &IngestDiagnostics {
        &self.diagnostics
    }

    pub fn paper_index(&self, paper_id: &str) -> Option<usize> {
        self.id_index.get(paper_id).map(|&i| i as usize)
    }

    pub fn paper(&self, idx: usize) -> &PaperRecord {
        &self.papers[idx]
    }

    pub fn papers(&self) -> &[PaperRecord] {
        &self.papers
    }

    /// In-degree: number of distinct papers citing this one.
    pub fn citation_count(&self, idx: usize) -> u64 {
        self.citers[idx].len() as u64
    }

    /// Citing papers, sorted by citing paper id.
    pub fn citers_of(&self, idx: usize) -> &[u32] {
        &self.citers[idx]
    }

    /// Distinct canonical authors of a paper, sorted.
    pub fn paper_authors(&self, idx: usize) -> &[CanonicalAuthor] {
        &self.canonical_authors[idx]
    }

    pub fn author_count(&self) -> usize {
        self.author_papers.len()
    }

    pub fn authors(&self) -> impl Iterator<Item = &CanonicalAuthor> {
        self.author_papers.keys()
    }

    pub fn papers_of(&self, author: &CanonicalAuthor) -> Option<&BTreeSet<u32>> {
        self.author_papers.get(author)
    }

    /// Structural equality: same papers, same citer lists, same
    /// author→papers index. Ingest diagnostics are deliberately excluded
    /// so a graph rebuilt from its own dump compares equal.
    pub fn structural_eq(&self, other: &CitationGraph) -> bool {
        if self.papers.len() != other.papers.len() || self.edge_count != other.edge_count {
            return false;
        }
        for (i, p) in self.papers.iter().enumerate() {
            let Some(j) = other.paper_index(&p.paper_id) else {
                return false;
            };
            if other.papers[j] != *p {
                return false;
            }
            let mine: Vec<&str> = self.citers[i]
                .iter()
                .map(|&c| self.papers[c as usize].paper_id.as_str())
                .collect();
            let theirs: Vec<&str> = other.citers[j]
                .iter()
                .map(|&c| other.papers[c as usize].paper_id.as_str())
                .collect();
            if mine != theirs {
                return false;
            }
        }
        if self.author_papers.len() != other.author_papers.len() {
            return false;
        }
        for (author, papers) in &self.author_papers {
            let Some(other_papers) = other.author_papers.get(author) else {
                return false;
            };
            let mine: BTreeSet<&str> = papers
                .iter()
                .map(|&p| self.papers[p as usize].paper_id.as_str())
                .collect();
            let theirs: BTreeSet<&str> = other_papers
                .iter()
                .map(|&p| other.papers[p as usize].paper_id.as_str())
                .collect();
            if mine != theirs {
                return false;
            }
        }
        true
    }

    /// Writes the canonical line-oriented dump: `P` rows (papers, sorted
    /// by id) then `E` rows (edges, sorted by citing then cited id).
    /// Bit-exact across runs for identical input.
    pub fn write_dump<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(writer);
        let mut order: Vec<usize> = (0..self.papers.len()).collect();
        order.sort_unstable_by(|&a, &b| self.papers[a].paper_id.cmp(&self.papers[b].paper_id));
        for &i in &order {
            let p = &self.papers[i];
            w.write_record([
                "P",
                p.paper_id.as_str(),
                &p.year.to_string(),
                p.title.as_str(),
                &p.raw_authors.join("|"),
            ])?;
        }
        let mut edges: Vec<(&str, &str)> = Vec::with_capacity(self.edge_count as usize);
        for (cited, list) in self.citers.iter().enumerate() {
            for &citing in list {
                edges.push((
                    self.papers[citing as usize].paper_id.as_str(),
                    self.papers[cited].paper_id.as_str(),
                ));
            }
        }
        edges.sort_unstable();
        for (citing, cited) in edges {
            w.write_record(["E", citing, cited])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Rebuilds a graph from [`Self::write_dump`] output.
    pub fn read_dump<R: Read>(reader: R) -> Result<CitationGraph> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(reader);
        let mut papers = Vec::new();
        let mut edges = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            match rec.get(0) {
                Some("P") => {
                    let (Some(id), Some(year), Some(title), Some(authors)) =
                        (rec.get(1), rec.get(2), rec.get(3), rec.get(4))
                    else {
                        return Err(Error::MalformedDump(format!("bad P row: {rec:?}")));
                    };
                    let year = year
                        .parse::<i32>()
                        .map_err(|_| Error::MalformedDump(format!("bad year: {year}")))?;
                    papers.push(PaperRecord {
                        paper_id: id.to_string(),
                        title: title.to_string(),
                        raw_authors: authors
                            .split('|')
                            .filter(|s| !s.is_empty())
                            .map(str::to_string)
                            .collect(),
                        year,
                    });
                }
                Some("E") => {
                    let (Some(citing), Some(cited)) = (rec.get(1), rec.get(2)) else {
                        return Err(Error::MalformedDump(format!("bad E row: {rec:?}")));
                    };
                    edges.push((citing.to_string(), cited.to_string()));
                }
                other => {
                    return Err(Error::MalformedDump(format!("unknown row tag: {other:?}")));
                }
            }
        }
        build_graph(papers, &edges)
    }
}
