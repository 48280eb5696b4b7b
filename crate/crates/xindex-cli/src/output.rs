//! Output files: scores, ranked lists, evaluation tables, the top-k
//! listing, and the machine-readable report dump.
//!
//! Every file starts with a `#`-prefixed config echo (tool version,
//! subcommand, inputs, parameters) so a result can always be traced back
//! to the run that produced it. No timestamps: identical inputs must
//! give byte-identical files.

use std::fmt::Display;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use xindex_core::corpus::{write_citations, write_metadata, CanonicalAuthor, PaperRecord};
use xindex_core::evaluation::{EvalReport, Indicator, RankedList};
use xindex_core::indicators::IndicatorScores;
use xindex_core::rat::{format_frac, parse_frac, to_f64};
use xindex_core::Result as CoreResult;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance lines embedded at the top of every output file.
pub struct ConfigEcho {
    lines: Vec<String>,
}

impl ConfigEcho {
    pub fn new(subcommand: &str) -> Self {
        ConfigEcho {
            lines: vec![
                format!("# xindex {VERSION}"),
                format!("# subcommand: {subcommand}"),
            ],
        }
    }

    pub fn value(mut self, key: &str, value: impl Display) -> Self {
        self.lines.push(format!("# {key}: {value}"));
        self
    }

    pub fn path(self, key: &str, path: &Path) -> Self {
        let shown = path.display().to_string();
        self.value(key, shown)
    }

    pub fn paths(mut self, key: &str, paths: &[PathBuf]) -> Self {
        for p in paths {
            self.lines.push(format!("# {key}: {}", p.display()));
        }
        self
    }

    fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        for line in &self.lines {
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    fn as_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.lines
                .iter()
                .map(|l| serde_json::Value::String(l.trim_start_matches("# ").to_string()))
                .collect(),
        )
    }
}

pub struct OutputDir {
    dir: PathBuf,
}

impl OutputDir {
    pub fn create(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
        })
    }

    fn open(&self, name: &str, echo: &ConfigEcho) -> std::io::Result<File> {
        let mut file = File::create(self.dir.join(name))?;
        echo.write_to(&mut file)?;
        Ok(file)
    }

    /// `scores.csv`: one row per author, acnpp as an exact fraction plus
    /// a decimal convenience column.
    pub fn write_scores(
        &self,
        echo: &ConfigEcho,
        scores: &[(CanonicalAuthor, IndicatorScores)],
    ) -> CoreResult<()> {
        let file = self.open("scores.csv", echo)?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record([
            "author",
            "x_index",
            "h_index",
            "acnpp",
            "tcn",
            "tpn",
            "acnpp_decimal",
        ])?;
        for (author, s) in scores {
            w.write_record([
                author.as_str(),
                &s.x.to_string(),
                &s.h.to_string(),
                &format_frac(&s.acnpp),
                &s.tcn.to_string(),
                &s.tpn.to_string(),
                &format!("{:.6}", to_f64(&s.acnpp)),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// `ranked_<indicator>.csv`.
    pub fn write_ranked(
        &self,
        echo: &ConfigEcho,
        indicator: Indicator,
        ranked: &RankedList,
    ) -> CoreResult<()> {
        let file = self.open(&format!("ranked_{}.csv", indicator.name()), echo)?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record(["rank", "author", "value", "tcn"])?;
        for e in &ranked.entries {
            w.write_record([
                &e.rank.to_string(),
                e.author.as_str(),
                &format_frac(&e.value),
                &e.tcn.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// `metadata.csv` + `citations.csv` in the corpus input formats.
    pub fn write_corpus(
        &self,
        echo: &ConfigEcho,
        papers: &[PaperRecord],
        edges: &[(String, String)],
    ) -> CoreResult<()> {
        let file = self.open("metadata.csv", echo)?;
        write_metadata(file, papers)?;
        let file = self.open("citations.csv", echo)?;
        write_citations(file, edges)?;
        Ok(())
    }

    /// Per-gold-set `eval_<name>.csv` tables, the side-by-side
    /// `top_authors.csv` listing (`*` Nobel, `#` major prize), and the
    /// structured `report.json` dump of every cell.
    pub fn write_report(&self, echo: &ConfigEcho, report: &EvalReport) -> CoreResult<()> {
        for table in &report.tables {
            let file = self.open(&format!("eval_{}.csv", sanitize(&table.gold_name)), echo)?;
            let mut w = csv::Writer::from_writer(file);
            let mut header = vec!["metric".to_string()];
            header.extend(report.indicators.iter().map(|i| i.name().to_string()));
            w.write_record(&header)?;
            for row in &table.rows {
                let mut rec = vec![row.metric.clone()];
                rec.extend(row.values.iter().map(format_frac));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }

        let file = self.open("top_authors.csv", echo)?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record([
            "rank",
            "x_author",
            "x_annotation",
            "x_index",
            "h_author",
            "h_annotation",
            "h_index",
        ])?;
        let listing = &report.top_listing;
        for i in 0..listing.by_x.len().max(listing.by_h.len()) {
            let x = listing.by_x.get(i);
            let h = listing.by_h.get(i);
            w.write_record([
                (i + 1).to_string(),
                x.map_or(String::new(), |e| e.author.as_str().to_string()),
                x.map_or(String::new(), |e| e.annotation.clone()),
                x.map_or(String::new(), |e| e.value.to_string()),
                h.map_or(String::new(), |e| e.author.as_str().to_string()),
                h.map_or(String::new(), |e| e.annotation.clone()),
                h.map_or(String::new(), |e| e.value.to_string()),
            ])?;
        }
        w.flush()?;

        let json = serde_json::json!({
            "config": echo.as_json(),
            "indicators": report.indicators.iter().map(|i| i.name()).collect::<Vec<_>>(),
            "n_values": report.n_values,
            "tables": report.tables.iter().map(|t| {
                serde_json::json!({
                    "gold": t.gold_name,
                    "rows": t.rows.iter().map(|row| {
                        serde_json::json!({
                            "metric": row.metric,
                            "values": report.indicators.iter().zip(&row.values).map(|(ind, v)| {
                                serde_json::json!({
                                    "indicator": ind.name(),
                                    "exact": format_frac(v),
                                    "decimal": to_f64(v),
                                })
                            }).collect::<Vec<_>>(),
                        })
                    }).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
            "top": {
                "by_x": listing.by_x.iter().map(top_entry_json).collect::<Vec<_>>(),
                "by_h": listing.by_h.iter().map(top_entry_json).collect::<Vec<_>>(),
            },
        });
        let mut file = File::create(self.dir.join("report.json"))?;
        let pretty = serde_json::to_string_pretty(&json).expect("report is valid json");
        file.write_all(pretty.as_bytes())?;
        file.write_all(b"\n")?;
        Ok(())
    }
}

fn top_entry_json(e: &xindex_core::evaluation::TopEntry) -> serde_json::Value {
    serde_json::json!({
        "author": e.author.as_str(),
        "annotation": e.annotation,
        "value": e.value,
    })
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Reads a `scores.csv` back into score records.
pub fn read_scores(path: &Path) -> CoreResult<Vec<(CanonicalAuthor, IndicatorScores)>> {
    let file = File::open(path)?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(file);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (author_i, x_i, h_i, acnpp_i, tcn_i, tpn_i) = match (
        col("author"),
        col("x_index"),
        col("h_index"),
        col("acnpp"),
        col("tcn"),
        col("tpn"),
    ) {
        (Some(a), Some(b), Some(c), Some(d), Some(e), Some(f)) => (a, b, c, d, e, f),
        _ => {
            return Err(xindex_core::Error::MissingColumns(
                "author,x_index,h_index,acnpp,tcn,tpn",
            ))
        }
    };
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or("").trim();
        let author = xindex_core::canonicalize_name(field(author_i))?;
        let bad = || {
            xindex_core::Error::MalformedDump(format!("bad scores row: {:?}", rec.clone()))
        };
        let scores = IndicatorScores {
            x: field(x_i).parse().map_err(|_| bad())?,
            h: field(h_i).parse().map_err(|_| bad())?,
            acnpp: parse_frac(field(acnpp_i)).ok_or_else(bad)?,
            tcn: field(tcn_i).parse().map_err(|_| bad())?,
            tpn: field(tpn_i).parse().map_err(|_| bad())?,
        };
        out.push((author, scores));
    }
    Ok(out)
}
