//! Parameter tables transcribed from the published results, as CSV.
//!
//! Tables I–III list ring-construction codes for ρ = 4, 3, 2; Tables IV–IX
//! list t-construction codes (IV/V unfiltered, VI filtered on RHS > 0, VII
//! deduplicated, VIII/IX its ρ = 2 and ρ = 3 slices).

use crate::error::Result;
use crate::sweep::{read_table, Provenance, TTables, TableRow};

pub const TABLE_I: &str = include_str!("../fixtures/table1.csv");
pub const TABLE_II: &str = include_str!("../fixtures/table2.csv");
pub const TABLE_III: &str = include_str!("../fixtures/table3.csv");
pub const TABLE_IV: &str = include_str!("../fixtures/table4.csv");
pub const TABLE_V: &str = include_str!("../fixtures/table5.csv");
pub const TABLE_VI: &str = include_str!("../fixtures/table6.csv");
pub const TABLE_VII: &str = include_str!("../fixtures/table7.csv");
pub const TABLE_VIII: &str = include_str!("../fixtures/table8.csv");
pub const TABLE_IX: &str = include_str!("../fixtures/table9.csv");

fn load(text: &str) -> Vec<TableRow> {
    read_table(text, Provenance::Transcribed).expect("bundled fixture parses")
}

/// Tables I, II and III concatenated.
pub fn ring_tables() -> Vec<TableRow> {
    [TABLE_I, TABLE_II, TABLE_III].into_iter().flat_map(load).collect()
}

pub fn t_tables() -> TTables {
    TTables {
        iv: load(TABLE_IV),
        v: load(TABLE_V),
        vi: load(TABLE_VI),
        vii: load(TABLE_VII),
        viii: load(TABLE_VIII),
        ix: load(TABLE_IX),
    }
}

/// Looks up a bundled table by roman numeral (`"I"`..`"IX"`).
pub fn table(name: &str) -> Result<Vec<TableRow>> {
    let text = match name.to_ascii_uppercase().as_str() {
        "I" => TABLE_I,
        "II" => TABLE_II,
        "III" => TABLE_III,
        "IV" => TABLE_IV,
        "V" => TABLE_V,
        "VI" => TABLE_VI,
        "VII" => TABLE_VII,
        "VIII" => TABLE_VIII,
        "IX" => TABLE_IX,
        other => return Err(crate::FrcError::ParseError(format!("no bundled table {other:?}"))),
    };
    read_table(text, Provenance::Transcribed)
}
