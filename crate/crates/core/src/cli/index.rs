//! Line-delimited JSON index from series to the terms producing them.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::lang::{enumerate_terms, Term};
use crate::poset::{is_isomorphic, Limits};
use crate::series::ChainSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRecord {
    /// Canonical text of the series.
    pub series_key: String,
    /// Canonical term strings, sorted.
    pub terms: Vec<String>,
    /// Isomorphism classes among the terms' posets.
    pub poset_count: usize,
}

/// Groups every term with at most `units` leaves and `d_count` handles by series.
pub fn build(units: usize, d_count: usize) -> Vec<IndexRecord> {
    let mut groups: BTreeMap<ChainSeries, Vec<Term>> = BTreeMap::new();
    for u in 1..=units {
        for d in 0..=d_count {
            for term in enumerate_terms(u, d) {
                groups.entry(term.eval_series()).or_default().push(term);
            }
        }
    }
    let limits = Limits {
        iso_size: usize::MAX,
        ..Limits::default()
    };
    groups
        .into_iter()
        .map(|(series, mut terms)| {
            terms.sort_by_cached_key(Term::print);
            let mut reps = Vec::new();
            for term in &terms {
                let poset = term.eval_poset();
                if !reps
                    .iter()
                    .any(|r| is_isomorphic(r, &poset, &limits).expect("unbounded"))
                {
                    reps.push(poset);
                }
            }
            IndexRecord {
                series_key: series.to_text(),
                terms: terms.iter().map(Term::print).collect(),
                poset_count: reps.len(),
            }
        })
        .collect()
}

pub fn write(path: &Path, records: &[IndexRecord]) -> std::io::Result<()> {
    let mut file = BufWriter::new(fs::File::create(path)?);
    for record in records {
        serde_json::to_writer(&mut file, record)?;
        file.write_all(b"\n")?;
    }
    file.flush()
}

pub fn read(path: &Path) -> Result<Vec<IndexRecord>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(n, line)| {
            serde_json::from_str(line).map_err(|e| format!("{}:{}: {e}", path.display(), n + 1))
        })
        .collect()
}

pub fn query<'a>(records: &'a [IndexRecord], series: &ChainSeries) -> Option<&'a IndexRecord> {
    let key = series.to_text();
    records.iter().find(|r| r.series_key == key)
}
