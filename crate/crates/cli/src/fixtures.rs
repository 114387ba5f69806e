//! Reference tables shipped with the crate, and the registry of cells whose
//! published value is contradicted by the computation.
//!
//! The verification harness never overrides a published cell silently: a
//! discrepancy is reported as `flagged-typo` only when the cell is listed
//! here and two independent computations agree against it.

use std::collections::BTreeMap;

pub const W_MINUS_CSV: &str = include_str!("../fixtures/w_minus.csv");
pub const W_PLUS_CSV: &str = include_str!("../fixtures/w_plus.csv");
pub const ST_CSV: &str = include_str!("../fixtures/st.csv");
pub const V_ELL_CSV: &str = include_str!("../fixtures/v_ell.csv");
pub const V_ELL_EXTENDED_CSV: &str = include_str!("../fixtures/v_ell_extended.csv");
pub const SUSPECTED_TYPOS_CSV: &str = include_str!("../fixtures/suspected_typos.csv");

/// A parsed fixture table: a name, column keys, and rows of cell values
/// addressed by a row key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

impl Table {
    pub fn parse(csv: &str) -> Table {
        let mut lines = csv.lines();
        let header: Vec<&str> = lines.next().expect("fixture has a header").split(',').collect();
        let name = header[0].to_string();
        let columns: Vec<String> = header[1..].iter().map(|s| s.to_string()).collect();
        let rows = lines
            .filter(|l| !l.is_empty())
            .map(|l| {
                let mut cells = l.split(',');
                let key = cells.next().expect("row key").to_string();
                let values: Vec<String> = cells.map(|s| s.to_string()).collect();
                assert_eq!(values.len(), columns.len(), "ragged fixture row in {name}");
                (key, values)
            })
            .collect();
        Table {
            name,
            columns,
            rows,
        }
    }

    pub fn get(&self, row: &str, column: &str) -> Option<&str> {
        let col = self.columns.iter().position(|c| c == column)?;
        self.rows
            .iter()
            .find(|(key, _)| key == row)
            .map(|(_, values)| values[col].as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.name);
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (key, values) in &self.rows {
            out.push_str(key);
            for v in values {
                out.push(',');
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "columns": self.columns,
            "rows": self.rows.iter().map(|(key, values)| {
                serde_json::json!({ "key": key, "values": values })
            }).collect::<Vec<_>>(),
        })
    }
}

/// A published cell the computation provably contradicts, together with the
/// arbitration that established the computed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypoEntry {
    pub table: String,
    pub row: String,
    pub column: String,
    pub published: String,
    pub arbitration: String,
}

/// The suspected-typo registry, keyed by `(table, row, column)`.
pub fn typo_registry() -> BTreeMap<(String, String, String), TypoEntry> {
    SUSPECTED_TYPOS_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            assert_eq!(cells.len(), 5, "registry rows are (table,row,column,published,arbitration)");
            let entry = TypoEntry {
                table: cells[0].to_string(),
                row: cells[1].to_string(),
                column: cells[2].to_string(),
                published: cells[3].to_string(),
                arbitration: cells[4].to_string(),
            };
            (
                (entry.table.clone(), entry.row.clone(), entry.column.clone()),
                entry,
            )
        })
        .collect()
}

pub fn w_minus() -> Table {
    Table::parse(W_MINUS_CSV)
}

pub fn w_plus() -> Table {
    Table::parse(W_PLUS_CSV)
}

pub fn st() -> Table {
    Table::parse(ST_CSV)
}

pub fn v_ell() -> Table {
    Table::parse(V_ELL_CSV)
}

pub fn v_ell_extended() -> Table {
    Table::parse(V_ELL_EXTENDED_CSV)
}

/// The tuple sizes and moduli covered by the solution-count tables.
pub fn w_table_sizes() -> Vec<u32> {
    (4..=8).collect()
}

pub fn w_table_moduli() -> Vec<u32> {
    vec![2, 3, 4, 5, 6, 7, 10, 11, 12]
}
