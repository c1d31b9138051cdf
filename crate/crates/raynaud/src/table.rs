//! Table assembly and rendering. All machine formats carry exact decimal
//! strings; scientific notation is presentation only.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{basepoint_min_rank, prop7_bound};
use crate::error::Result;
use crate::exact::{decimal_digits, sci_string};
use crate::theta::theta_raynaud_invariants;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Sweep description shared by the table emitters.
#[derive(Debug, Clone)]
pub struct TableSpec {
    pub genus: (u32, u32),
    /// target rank r for the Raynaud table, level R for the base-point table
    pub second: (u32, u32),
    pub format: Format,
    pub sci_digits: usize,
    /// ranks longer than this many digits render scientifically in text/csv
    pub sci_threshold: usize,
}

impl TableSpec {
    pub fn new(genus: (u32, u32), second: (u32, u32)) -> Self {
        TableSpec {
            genus,
            second,
            format: Format::Text,
            sci_digits: 12,
            sci_threshold: 48,
        }
    }

    fn genus_range(&self) -> impl Iterator<Item = u32> {
        self.genus.0..=self.genus.1
    }

    fn second_range(&self) -> impl Iterator<Item = u32> {
        self.second.0..=self.second.1
    }
}

#[derive(Debug, Serialize)]
pub struct RaynaudRow {
    pub g: u32,
    pub r: u32,
    /// exact rank, decimal
    pub rank: String,
    pub rank_sci: String,
    pub slope: SlopeJson,
}

#[derive(Debug, Serialize)]
pub struct SlopeJson {
    pub num: String,
    pub den: String,
}

impl SlopeJson {
    pub fn of(q: &BigRational) -> Self {
        SlopeJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

/// The mixed exact/scientific presentation used for large ranks.
fn display_rank(rank: &BigUint, spec: &TableSpec) -> String {
    if decimal_digits(rank) > spec.sci_threshold {
        sci_string(rank, spec.sci_digits)
    } else {
        rank.to_string()
    }
}

pub fn raynaud_rows(spec: &TableSpec) -> Result<Vec<RaynaudRow>> {
    let mut rows = Vec::new();
    for g in spec.genus_range() {
        for r in spec.second_range() {
            let inv = theta_raynaud_invariants(g, r as u64)?;
            rows.push(RaynaudRow {
                g,
                r,
                rank: inv.rank.to_string(),
                rank_sci: sci_string(&inv.rank, spec.sci_digits),
                slope: SlopeJson::of(&inv.slope),
            });
        }
    }
    Ok(rows)
}

pub fn render_raynaud_table(spec: &TableSpec) -> Result<String> {
    let rows = raynaud_rows(spec)?;
    Ok(match spec.format {
        Format::Json => {
            let v = json!({ "kind": "raynaud-table", "rows": rows });
            serde_json::to_string_pretty(&v).unwrap()
        }
        Format::Csv => {
            let mut out = String::from("g,r,rank,rank_sci,slope\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{}/{}\n",
                    row.g, row.r, row.rank, row.rank_sci, row.slope.num, row.slope.den
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("{:>3} {:>3}  {:>48}  {}\n", "g", "r", "rk(R^r(M0))", "slope"));
            for row in &rows {
                let rank = BigUint::parse_bytes(row.rank.as_bytes(), 10).unwrap();
                out.push_str(&format!(
                    "{:>3} {:>3}  {:>48}  {}/{}\n",
                    row.g,
                    row.r,
                    display_rank(&rank, spec),
                    row.slope.num,
                    row.slope.den
                ));
            }
            out
        }
    })
}

#[derive(Debug, Serialize)]
pub struct BasepointRow {
    pub level: u32,
    pub entries: Vec<BasepointCell>,
}

#[derive(Debug, Serialize)]
pub struct BasepointCell {
    pub g: u32,
    pub min_rank: String,
}

pub fn basepoint_rows(spec: &TableSpec) -> Result<Vec<BasepointRow>> {
    let mut rows = Vec::new();
    for level in spec.second_range() {
        let mut entries = Vec::new();
        for g in spec.genus_range() {
            entries.push(BasepointCell {
                g,
                min_rank: basepoint_min_rank(g, level)?.to_string(),
            });
        }
        rows.push(BasepointRow { level, entries });
    }
    Ok(rows)
}

fn basepoint_footnotes(spec: &TableSpec) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    if spec.second_range().any(|l| l == 2) {
        let all = spec
            .genus_range()
            .map(|g| Ok(prop7_bound(g)? == basepoint_min_rank(g, 2)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        notes.push(format!(
            "R=2 row equals (27g^2-15g+2)/2 for every listed genus: {all}"
        ));
        notes.push(
            "the same threshold bounds base points of the theta divisor on the \
             fixed-trivial-determinant moduli space SU_X(r)"
                .to_string(),
        );
    }
    Ok(notes)
}

pub fn render_basepoint_table(spec: &TableSpec) -> Result<String> {
    let rows = basepoint_rows(spec)?;
    let notes = basepoint_footnotes(spec)?;
    Ok(match spec.format {
        Format::Json => {
            let v = json!({ "kind": "basepoint-table", "rows": rows, "footnotes": notes });
            serde_json::to_string_pretty(&v).unwrap()
        }
        Format::Csv => {
            let mut out = String::from("R");
            for g in spec.genus_range() {
                out.push_str(&format!(",g={g}"));
            }
            out.push('\n');
            for row in &rows {
                out.push_str(&format!("{}", row.level));
                for cell in &row.entries {
                    out.push_str(&format!(",{}", cell.min_rank));
                }
                out.push('\n');
            }
            for note in &notes {
                out.push_str(&format!("# {note}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = String::from("     ");
            for g in spec.genus_range() {
                out.push_str(&format!("{:>12}", format!("g={g}")));
            }
            out.push('\n');
            for row in &rows {
                out.push_str(&format!("R={:<3}", row.level));
                for cell in &row.entries {
                    out.push_str(&format!("{:>12}", cell.min_rank));
                }
                out.push('\n');
            }
            for note in &notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raynaud_single_cells() {
        let spec = TableSpec::new((2, 2), (2, 2));
        let rows = raynaud_rows(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].rank, "59539855602920");
        assert_eq!(rows[0].slope.num, "50");
        assert_eq!(rows[0].slope.den, "313");

        let spec = TableSpec::new((4, 4), (4, 4));
        let rows = raynaud_rows(&spec).unwrap();
        let rank = BigUint::parse_bytes(rows[0].rank.as_bytes(), 10).unwrap();
        assert_eq!(display_rank(&rank, &spec), "1.52141697066e364");
        assert_eq!(rows[0].slope.num, "3750");
        assert_eq!(rows[0].slope.den, "105157");
    }

    #[test]
    fn basepoint_cells() {
        let spec = TableSpec::new((2, 5), (2, 4));
        let rows = basepoint_rows(&spec).unwrap();
        let cell = |level: u32, g: u32| -> String {
            rows.iter()
                .find(|r| r.level == level)
                .unwrap()
                .entries
                .iter()
                .find(|c| c.g == g)
                .unwrap()
                .min_rank
                .clone()
        };
        assert_eq!(cell(4, 3), "2443665");
        assert_eq!(cell(2, 4), "187");
    }

    #[test]
    fn formats_carry_identical_values() {
        let mut spec = TableSpec::new((2, 3), (2, 3));
        let text = render_raynaud_table(&spec).unwrap();
        spec.format = Format::Csv;
        let csv = render_raynaud_table(&spec).unwrap();
        spec.format = Format::Json;
        let jsn = render_raynaud_table(&spec).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&jsn).unwrap();
        for row in parsed["rows"].as_array().unwrap() {
            let slope = format!(
                "{}/{}",
                row["slope"]["num"].as_str().unwrap(),
                row["slope"]["den"].as_str().unwrap()
            );
            assert!(csv.contains(&slope));
            assert!(text.contains(&slope));
            // machine formats always carry the exact decimal rank
            let rank = row["rank"].as_str().unwrap();
            assert!(csv.contains(rank));
            let reparsed = BigUint::parse_bytes(rank.as_bytes(), 10).unwrap();
            assert_eq!(reparsed.to_string(), rank);
        }
    }

    #[test]
    fn deterministic_rendering() {
        let spec = TableSpec::new((2, 4), (2, 4));
        assert_eq!(
            render_raynaud_table(&spec).unwrap(),
            render_raynaud_table(&spec).unwrap()
        );
        assert_eq!(
            render_basepoint_table(&spec).unwrap(),
            render_basepoint_table(&spec).unwrap()
        );
    }

    #[test]
    fn small_rank_prints_exactly_in_text() {
        let spec = TableSpec::new((2, 2), (2, 3));
        let text = render_raynaud_table(&spec).unwrap();
        assert!(text.contains("59539855602920"));
        assert!(text.contains("641752198359834620231606142864"));
    }
}
