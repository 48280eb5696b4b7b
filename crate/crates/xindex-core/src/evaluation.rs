//! Author ranking and gold-standard evaluation.
//!
//! Authors are ranked by an indicator, ties broken by total citation
//! number, remaining ties by canonical name so the order is total and
//! reproducible. Rankings are scored against prize-winner gold standards
//! with P@N and Average Precision; a gold member absent from the ranking
//! contributes precision 0 and the AP divisor is always the full
//! gold-set size.

use std::collections::BTreeMap;
use std::io::Read;
use std::str::FromStr;

use crate::corpus::{canonicalize_name, CanonicalAuthor};
use crate::error::{Error, Result};
use crate::indicators::IndicatorScores;
use crate::rat::{rat, rat_int, rat_zero, Rat};

/// Prize category of a gold-standard member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Nobel,
    MajorPrize,
    Both,
}

impl Category {
    fn union(self, other: Category) -> Category {
        if self == other {
            self
        } else {
            Category::Both
        }
    }

    /// Table-3 style marker: `*` Nobel, `#` major prize, `*#` both.
    pub fn marker(self) -> &'static str {
        match self {
            Category::Nobel => "*",
            Category::MajorPrize => "#",
            Category::Both => "*#",
        }
    }
}

/// Set of prize winners in canonical name form.
#[derive(Debug, Clone, Default)]
pub struct GoldStandard {
    members: BTreeMap<CanonicalAuthor, Category>,
}

impl GoldStandard {
    pub fn from_members(members: impl IntoIterator<Item = (CanonicalAuthor, Category)>) -> Self {
        let mut out = GoldStandard::default();
        for (author, category) in members {
            out.insert(author, category);
        }
        out
    }

    fn insert(&mut self, author: CanonicalAuthor, category: Category) {
        self.members
            .entry(author)
            .and_modify(|c| *c = c.union(category))
            .or_insert(category);
    }

    pub fn contains(&self, author: &CanonicalAuthor) -> bool {
        self.members.contains_key(author)
    }

    pub fn category(&self, author: &CanonicalAuthor) -> Option<Category> {
        self.members.get(author).copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = (&CanonicalAuthor, Category)> {
        self.members.iter().map(|(a, &c)| (a, c))
    }
}

/// Loads a gold-standard file: columns `name,category` with category in
/// {nobel, major_prize}. Names are canonicalized on load; duplicate rows
/// merge (nobel + major_prize -> both). Malformed rows are counted and
/// skipped.
pub fn load_gold_standard<R: Read>(reader: R) -> Result<(GoldStandard, u64)> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (name_i, cat_i) = match (col("name"), col("category")) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::MissingColumns("name,category")),
    };
    let mut gold = GoldStandard::default();
    let mut malformed = 0u64;
    for rec in rdr.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(_) => {
                malformed += 1;
                continue;
            }
        };
        let category = match rec.get(cat_i).unwrap_or("").trim() {
            "nobel" => Category::Nobel,
            "major_prize" => Category::MajorPrize,
            _ => {
                malformed += 1;
                continue;
            }
        };
        match canonicalize_name(rec.get(name_i).unwrap_or("")) {
            Ok(author) => gold.insert(author, category),
            Err(_) => malformed += 1,
        }
    }
    Ok((gold, malformed))
}

/// Rankable indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indicator {
    X,
    H,
    Acnpp,
    Tcn,
    Tpn,
}

impl Indicator {
    pub const ALL: [Indicator; 5] = [
        Indicator::X,
        Indicator::H,
        Indicator::Acnpp,
        Indicator::Tcn,
        Indicator::Tpn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::X => "x",
            Indicator::H => "h",
            Indicator::Acnpp => "acnpp",
            Indicator::Tcn => "tcn",
            Indicator::Tpn => "tpn",
        }
    }

    pub fn value_of(self, scores: &IndicatorScores) -> Rat {
        match self {
            Indicator::X => rat_int(scores.x),
            Indicator::H => rat_int(scores.h),
            Indicator::Acnpp => scores.acnpp.clone(),
            Indicator::Tcn => rat_int(scores.tcn),
            Indicator::Tpn => rat_int(scores.tpn),
        }
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Indicator> {
        match s.trim() {
            "x" | "x_index" | "x-index" => Ok(Indicator::X),
            "h" | "h_index" | "h-index" => Ok(Indicator::H),
            "acnpp" => Ok(Indicator::Acnpp),
            "tcn" => Ok(Indicator::Tcn),
            "tpn" => Ok(Indicator::Tpn),
            other => Err(Error::UnknownIndicator(other.to_string())),
        }
    }
}

impl std::fmt::Display for Indicator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedEntry {
    /// 1-based rank.
    pub rank: u64,
    pub author: CanonicalAuthor,
    pub value: Rat,
    pub tcn: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankedList {
    pub entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Total order: value descending, then tcn descending, then canonical
/// name ascending.
pub fn rank_by_values(
    entries: impl IntoIterator<Item = (CanonicalAuthor, Rat, u64)>,
) -> RankedList {
    let mut entries: Vec<(CanonicalAuthor, Rat, u64)> = entries.into_iter().collect();
    entries.sort_by(|(a_name, a_val, a_tcn), (b_name, b_val, b_tcn)| {
        b_val
            .cmp(a_val)
            .then_with(|| b_tcn.cmp(a_tcn))
            .then_with(|| a_name.cmp(b_name))
    });
    RankedList {
        entries: entries
            .into_iter()
            .enumerate()
            .map(|(i, (author, value, tcn))| RankedEntry {
                rank: i as u64 + 1,
                author,
                value,
                tcn,
            })
            .collect(),
    }
}

/// Ranks every scored author (cited or not) by the given indicator.
pub fn rank_authors(
    scores: &[(CanonicalAuthor, IndicatorScores)],
    indicator: Indicator,
) -> RankedList {
    rank_by_values(
        scores
            .iter()
            .map(|(a, s)| (a.clone(), indicator.value_of(s), s.tcn)),
    )
}

/// |top min(n, len) ∩ gold| / n. The divisor stays n even when the list
/// is shorter than n.
pub fn precision_at_n(ranked: &RankedList, gold: &GoldStandard, n: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let hits = ranked
        .entries
        .iter()
        .take(n as usize)
        .filter(|e| gold.contains(&e.author))
        .count() as u64;
    Ok(rat(hits, n))
}

/// Mean over gold members of the precision at the rank where each is
/// found; absent members contribute 0; divisor is the full gold-set
/// size.
pub fn average_precision(ranked: &RankedList, gold: &GoldStandard) -> Result<Rat> {
    if gold.is_empty() {
        return Err(Error::EmptyGoldStandard);
    }
    let mut hits = 0u64;
    let mut sum = rat_zero();
    for entry in &ranked.entries {
        if gold.contains(&entry.author) {
            hits += 1;
            sum += rat(hits, entry.rank);
        }
    }
    Ok(sum / rat_int(gold.len() as u64))
}

/// One P@N-or-AP row of an evaluation table, values aligned with the
/// report's indicator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricRow {
    pub metric: String,
    pub values: Vec<Rat>,
}

/// All metric rows for one gold set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldSetTable {
    pub gold_name: String,
    pub rows: Vec<MetricRow>,
}

/// One line of the side-by-side top-k listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopEntry {
    pub author: CanonicalAuthor,
    pub value: u64,
    /// `*` Nobel, `#` major prize, `*#` both, empty otherwise; from the
    /// union of all supplied gold sets.
    pub annotation: String,
}

/// Top-k authors by x and by h, side by side.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TopListing {
    pub by_x: Vec<TopEntry>,
    pub by_h: Vec<TopEntry>,
}

/// Evaluation results: one P@N/AP table per gold set plus the top-k
/// listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub indicators: Vec<Indicator>,
    pub n_values: Vec<u64>,
    pub tables: Vec<GoldSetTable>,
    pub top_listing: TopListing,
}

/// Default P@N cut-offs.
pub const DEFAULT_N_VALUES: [u64; 6] = [10, 20, 30, 40, 50, 100];

/// Evaluates every indicator against every gold set and produces the
/// top-k listing (annotated from the union of the gold sets). Listing
/// shorter than k when there are fewer authors; no padding.
pub fn evaluate(
    scores: &[(CanonicalAuthor, IndicatorScores)],
    gold_sets: &[(String, GoldStandard)],
    indicators: &[Indicator],
    n_values: &[u64],
    top_k: usize,
) -> Result<EvalReport> {
    let rankings: Vec<RankedList> = indicators
        .iter()
        .map(|&ind| rank_authors(scores, ind))
        .collect();

    let mut tables = Vec::with_capacity(gold_sets.len());
    for (gold_name, gold) in gold_sets {
        let mut rows = Vec::new();
        if !indicators.is_empty() {
            for &n in n_values {
                let values = rankings
                    .iter()
                    .map(|r| precision_at_n(r, gold, n))
                    .collect::<Result<Vec<Rat>>>()?;
                rows.push(MetricRow {
                    metric: format!("P@{n}"),
                    values,
                });
            }
            let values = rankings
                .iter()
                .map(|r| average_precision(r, gold))
                .collect::<Result<Vec<Rat>>>()?;
            rows.push(MetricRow {
                metric: "AP".to_string(),
                values,
            });
        }
        tables.push(GoldSetTable {
            gold_name: gold_name.clone(),
            rows,
        });
    }

    let annotate = |author: &CanonicalAuthor| -> String {
        let mut category: Option<Category> = None;
        for (_, gold) in gold_sets {
            if let Some(c) = gold.category(author) {
                category = Some(category.map_or(c, |prev| prev.union(c)));
            }
        }
        category.map(|c| c.marker().to_string()).unwrap_or_default()
    };
    let listing = |ind: Indicator| -> Vec<TopEntry> {
        rank_authors(scores, ind)
            .entries
            .into_iter()
            .take(top_k)
            .map(|e| {
                let value = scores
                    .iter()
                    .find(|(a, _)| *a == e.author)
                    .map(|(_, s)| if ind == Indicator::X { s.x } else { s.h })
                    .unwrap_or(0);
                TopEntry {
                    annotation: annotate(&e.author),
                    author: e.author,
                    value,
                }
            })
            .collect()
    };
    let top_listing = TopListing {
        by_x: listing(Indicator::X),
        by_h: listing(Indicator::H),
    };

    Ok(EvalReport {
        indicators: indicators.to_vec(),
        n_values: n_values.to_vec(),
        tables,
        top_listing,
    })
}
