use std::fmt::Write;

use locdim_core::coverage::enumerate_images;
use locdim_core::transition::{lower_bound_range_minimum, transition_set, BernoulliFamily, MAX_LEVEL};
use locdim_core::{IfsSpec, Interval};
use serde::Serialize;

use crate::CliError;

/// Ranges of `rho` in the lower-bound table.
pub const TABLE3_RANGES: [(f64, f64); 7] = [
    (0.50, 0.55),
    (0.55, 0.60),
    (0.60, 0.65),
    (0.65, 0.70),
    (0.70, 0.75),
    (0.75, 0.80),
    (0.80, 0.851),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    /// Images of [0.3, 0.7] under the length-4 words at rho = 0.8.
    #[value(name = "1")]
    Table1,
    /// Images of [0, 1] under the length-4 words at rho = 0.8.
    #[value(name = "2")]
    Table2,
    /// Minimum of the coverage lower bound over ranges of rho.
    #[value(name = "3")]
    Table3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageRow {
    pub word: String,
    pub lo: f64,
    pub hi: f64,
}

/// Level-`n` images of `interval`, in word order or by left endpoint.
pub fn image_rows(spec: &IfsSpec, interval: &Interval, n: usize, by_left_end: bool) -> Result<Vec<ImageRow>, CliError> {
    let mut rows: Vec<ImageRow> = enumerate_images(spec, interval, n)?
        .into_iter()
        .map(|w| ImageRow {
            word: w.word.to_string(),
            lo: w.lo,
            hi: w.hi,
        })
        .collect();
    if by_left_end {
        rows.sort_by(|a, b| a.lo.total_cmp(&b.lo).then_with(|| a.word.cmp(&b.word)));
    }
    Ok(rows)
}

/// `word<TAB>lo<TAB>hi` lines with a header.
pub fn render_images(rows: &[ImageRow], decimals: usize) -> String {
    let mut out = String::from("word\tlo\thi\n");
    for r in rows {
        let _ = writeln!(out, "{}\t{:.*}\t{:.*}", r.word, decimals, r.lo, decimals, r.hi);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table3Row {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
    /// Where the minimum is attained (left end of a cell, or a point).
    pub rho: f64,
    pub at_point: bool,
    /// Minimum over transition points when touching images count together.
    pub touching_value: f64,
}

/// Lower-bound table for unbiased Bernoulli convolutions with `n <= n_max`.
pub fn table3(n_max: usize) -> Result<Vec<Table3Row>, CliError> {
    table3_for(&BernoulliFamily::unbiased(), &TABLE3_RANGES, n_max)
}

pub fn table3_for(family: &BernoulliFamily, ranges: &[(f64, f64)], n_max: usize) -> Result<Vec<Table3Row>, CliError> {
    if n_max == 0 || n_max > MAX_LEVEL {
        return Err(CliError::InvalidConfig(format!("n_max must be in 1..={MAX_LEVEL}")));
    }
    let lo = ranges.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let hi = ranges.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let roots = transition_set(family, n_max, lo, hi)?.values();
    ranges
        .iter()
        .map(|&(lo, hi)| {
            let m = lower_bound_range_minimum(family, lo, hi, n_max, &roots)?;
            Ok(Table3Row {
                lo,
                hi,
                value: m.value,
                rho: m.rho,
                at_point: m.at_point,
                touching_value: m.touching_value,
            })
        })
        .collect()
}

pub fn render_table3(rows: &[Table3Row]) -> String {
    let mut out = String::from("range\tlower_bound\n");
    for r in rows {
        let hi = if (r.hi * 100.0).fract().abs() < 1e-9 { format!("{:.2}", r.hi) } else { format!("{}", r.hi) };
        let _ = writeln!(out, "[{:.2}, {hi}]\t{:.6}", r.lo, r.value);
    }
    out
}

/// Regenerates one of the tables as text.
pub fn table_report(kind: TableKind, n_max: usize) -> Result<String, CliError> {
    let spec = IfsSpec::bernoulli(0.8, 0.5)?;
    Ok(match kind {
        TableKind::Table1 => render_images(&image_rows(&spec, &Interval::closed(0.3, 0.7), 4, true)?, 5),
        TableKind::Table2 => render_images(&image_rows(&spec, &Interval::unit(), 4, true)?, 5),
        TableKind::Table3 => render_table3(&table3(n_max)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_rows() {
        let text = table_report(TableKind::Table1, 10).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[1], "0000\t0.12288\t0.28672");
        assert_eq!(lines[8], "0110\t0.41088\t0.57472");
        assert_eq!(lines[16], "1111\t0.71328\t0.87712");
    }

    #[test]
    fn table2_rows() {
        let text = table_report(TableKind::Table2, 10).unwrap();
        assert!(text.contains("1110\t0.48800\t0.89760"));
        assert!(text.lines().last().unwrap().starts_with("1111\t0.59040\t1.00000"));
    }

    #[test]
    fn word_order_is_lexicographic() {
        let spec = IfsSpec::bernoulli(0.8, 0.5).unwrap();
        let rows = image_rows(&spec, &Interval::unit(), 2, false).unwrap();
        let words: Vec<&str> = rows.iter().map(|r| r.word.as_str()).collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
    }

    #[test]
    fn table3_small_levels() {
        let rows = table3_for(&BernoulliFamily::unbiased(), &[(0.7, 0.75)], 4).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].value > 0.0 && rows[0].touching_value.is_finite());
        assert!(render_table3(&rows).contains("[0.70, 0.75]"));
        assert!(render_table3(&[Table3Row { hi: 0.851, ..rows[0] }]).contains("0.851]"));
    }
}
