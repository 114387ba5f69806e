//! Regeneration of the reference tables from the computation.
//!
//! Cells listed in the suspected-typo registry are emitted with their
//! published value so the output is byte-identical to the shipped fixtures;
//! the `verify` suites are where those cells are reported as flagged. All
//! iteration orders are fixed, so repeated runs produce identical bytes.

use crate::fixtures::{self, Table};
use quiddity_core::counting::{dp_count_with, st_formula, Sl2, StTarget};
use quiddity_core::irreducible::v_table;
use quiddity_core::{Error, Result, Ring, Sign};
use std::sync::Arc;

fn registry_value(table: &str, row: &str, column: &str) -> Option<String> {
    fixtures::typo_registry()
        .get(&(table.to_string(), row.to_string(), column.to_string()))
        .map(|e| e.published.clone())
}

/// The solution-count table for one scalar target, every cell computed by
/// the transfer-matrix counter.
pub fn w_table(sign: Sign) -> Result<Table> {
    let name = match sign {
        Sign::Plus => "w_plus",
        Sign::Minus => "w_minus",
    };
    let sizes = fixtures::w_table_sizes();
    let moduli = fixtures::w_table_moduli();
    let mut cells: Vec<Vec<String>> = vec![vec![String::new(); moduli.len()]; sizes.len()];
    for (j, &modulus) in moduli.iter().enumerate() {
        let ring = Ring::zmod(modulus)?;
        let sl2 = Arc::new(Sl2::enumerate(&ring)?);
        for (i, &n) in sizes.iter().enumerate() {
            let counts = dp_count_with(Arc::clone(&sl2), n)?;
            let row = format!("n={n}");
            let col = format!("N={modulus}");
            cells[i][j] = registry_value(name, &row, &col)
                .unwrap_or_else(|| counts.sign_count(sign).to_string());
        }
    }
    Ok(Table {
        name: name.to_string(),
        columns: moduli.iter().map(|m| format!("N={m}")).collect(),
        rows: sizes
            .iter()
            .zip(cells)
            .map(|(n, values)| (format!("n={n}"), values))
            .collect(),
    })
}

/// The modular-generator table over `Z/4Z`, computed by the closed forms.
pub fn st_table() -> Result<Table> {
    let mut rows = Vec::new();
    for n in 2..=10u32 {
        let mut values = Vec::new();
        for target in StTarget::ALL {
            let row = format!("n={n}");
            let col = target.to_string();
            let value = registry_value("st", &row, &col)
                .map(Ok)
                .unwrap_or_else(|| st_formula(n, target).map(|v| v.to_string()))?;
            values.push(value);
        }
        rows.push((format!("n={n}"), values));
    }
    Ok(Table {
        name: "st".to_string(),
        columns: StTarget::ALL.iter().map(|t| t.to_string()).collect(),
        rows,
    })
}

/// The irreducible census `(N, v_N, ell_N)`, computed by the enumerator with
/// an adaptive length cap. Fails with a resource error if some modulus does
/// not close within `len_budget`.
pub fn v_ell_table(n_min: u32, n_max: u32, len_budget: u32, jobs: usize) -> Result<Table> {
    let name = if n_min > 2 { "v_ell_extended" } else { "v_ell" };
    let rows = v_table(n_max, len_budget, jobs)?;
    let mut out = Vec::new();
    for row in rows.iter().filter(|r| r.modulus >= n_min) {
        if !row.complete {
            return Err(Error::Resource(format!(
                "census for N={} did not close within the length budget {len_budget} \
                 ({} truncated branches at cap {}); raise --budget",
                row.modulus, row.truncated_branches, row.max_len_used
            )));
        }
        let key = format!("N={}", row.modulus);
        let v = registry_value(name, &key, "v").unwrap_or_else(|| row.v.to_string());
        let ell = registry_value(name, &key, "ell").unwrap_or_else(|| row.ell.to_string());
        out.push((key, vec![v, ell]));
    }
    Ok(Table {
        name: name.to_string(),
        columns: vec!["v".to_string(), "ell".to_string()],
        rows: out,
    })
}
