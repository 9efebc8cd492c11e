//! Tabular exports. Every report is turned into a [`Table`] which renders
//! as CSV (comma separated, LF line endings), JSON (an array of objects with
//! big integers as decimal strings) or aligned plain text.

use std::io::Write;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::cycles::{CycleReport, EndpointRow, FrequencyReport};
use crate::edge::{edge_region_number, EdgeSide, RegionHead};
use crate::error::{Error, Result};
use crate::farey::{FareyTriplet, PlotPoint};
use crate::markov_tree::{sibling_number, MarkovList};
use crate::pell::{PellSolution, UniquenessReport};
use crate::squares::{EdgeSquareLists, IntPair, OscillationReport, SquarePalindrome};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Float(f64),
    Bool(bool),
    Text(String),
    /// Rendered space separated in CSV and text, as an array in JSON.
    List(Vec<BigInt>),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.12}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::List(v) => v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::String(v.to_string()),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::List(v) => Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect()),
        }
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.clone())
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(BigInt::from(v))
            }
        }
    )*};
}
int_cell!(i8, i64, u32, u64, usize);

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
            Format::Text => self.write_text(out),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(format, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 output")
    }

    fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }

    fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        out.write_all(b"\n")
    }

    fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |fields: &[String]| {
            let padded: Vec<String> = fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(&self.columns))?;
        for r in &cells {
            writeln!(out, "{}", line(r))?;
        }
        Ok(())
    }
}

pub fn tree_table(list: &MarkovList) -> Table {
    let mut t = Table::new(&["position", "depth", "x", "R", "z", "sibling"]);
    for (i, e) in list.entries().iter().enumerate() {
        let tr = &e.triplet;
        let sib = sibling_number(tr)
            .map(Cell::Int)
            .unwrap_or_else(|_| Cell::Text(String::new()));
        t.push(vec![
            (i + 1).into(),
            e.depth.into(),
            tr.x().into(),
            tr.region().into(),
            tr.z().into(),
            sib,
        ]);
    }
    t
}

/// `H(n)` for `from <= n <= to`.
pub fn edge_table(head: &RegionHead, side: EdgeSide, from: i64, to: i64) -> Result<Table> {
    head.check_side(side)?;
    let mut t = Table::new(&["n", "side", "H"]);
    for n in from..=to {
        t.push(vec![
            n.into(),
            side.to_string().into(),
            edge_region_number(head, side, n)?.into(),
        ]);
    }
    Ok(t)
}

pub fn pell_solutions_table(sols: &[PellSolution]) -> Table {
    let mut t = Table::new(&["index", "R", "K", "J", "residual"]);
    for (i, s) in sols.iter().enumerate() {
        t.push(vec![
            (i + 1).into(),
            (&s.r).into(),
            (&s.k).into(),
            (&s.j).into(),
            s.residual().into(),
        ]);
    }
    t
}

pub fn brute_table(r: u64, js: &[u64]) -> Table {
    let mut t = Table::new(&["R", "J"]);
    for &j in js {
        t.push(vec![r.into(), j.into()]);
    }
    t
}

pub fn uniqueness_table(reports: &[UniquenessReport]) -> Table {
    let mut t = Table::new(&["R", "triplet", "bound", "smallest", "expected", "ok"]);
    for r in reports {
        let list = |v: &[u64]| Cell::List(v.iter().map(|&x| BigInt::from(x)).collect());
        t.push(vec![
            r.region.into(),
            r.triplet.to_string().into(),
            r.bound.into(),
            list(&r.smallest),
            list(&r.expected),
            r.ok.into(),
        ]);
    }
    t
}

pub fn cycle_table(reports: &[CycleReport]) -> Table {
    let mut t = Table::new(&[
        "head",
        "side",
        "digits",
        "length",
        "palindromic",
        "residues",
    ]);
    for r in reports {
        t.push(vec![
            r.head.to_string().into(),
            r.side.to_string().into(),
            r.digits.into(),
            r.length.into(),
            r.palindromic_with_opposite.into(),
            Cell::List(r.residues.iter().map(|&x| BigInt::from(x)).collect()),
        ]);
    }
    t
}

pub fn endpoint_table(region: u8, rows: &[EndpointRow]) -> Table {
    let mut t = Table::new(&["region", "length", "digits", "values"]);
    for r in rows {
        t.push(vec![
            u32::from(region).into(),
            r.length.into(),
            r.digits.into(),
            Cell::List(r.values.iter().map(|&x| BigInt::from(x)).collect()),
        ]);
    }
    t
}

pub fn histogram_table(report: &FrequencyReport) -> Table {
    let mut t = Table::new(&["residue", "count"]);
    for (v, &c) in report.counts.iter().enumerate() {
        t.push(vec![v.into(), c.into()]);
    }
    t
}

fn pair_cells(p: &IntPair) -> [Cell; 2] {
    [(&p.0).into(), (&p.1).into()]
}

pub fn square_lists_table(rows: &[(String, EdgeSide, EdgeSquareLists)]) -> Table {
    let mut t = Table::new(&[
        "head", "side", "alpha_s", "alpha_l", "beta_s", "beta_l", "gamma_s", "gamma_l", "delta_s",
        "delta_l",
    ]);
    for (head, side, l) in rows {
        let mut row: Vec<Cell> = vec![head.clone().into(), side.to_string().into()];
        for p in [&l.alpha, &l.beta, &l.gamma, &l.delta] {
            row.extend(pair_cells(p));
        }
        t.push(row);
    }
    t
}

/// `(n, σ, Λ, Λ/σ)`; the ratio is empty where `σ = 0`.
pub fn square_series_table(side: EdgeSide, series: &[(i64, BigInt, BigInt)]) -> Table {
    use num_traits::{ToPrimitive, Zero};
    let mut t = Table::new(&["n", "side", "sigma", "lambda", "ratio"]);
    for (n, s, l) in series {
        let ratio = if s.is_zero() {
            Cell::Text(String::new())
        } else {
            let q = num_rational::BigRational::new(l.clone(), s.clone());
            Cell::Float(q.to_f64().unwrap_or(f64::NAN))
        };
        t.push(vec![
            (*n).into(),
            side.to_string().into(),
            s.into(),
            l.into(),
            ratio,
        ]);
    }
    t
}

pub fn oscillation_table(side: EdgeSide, o: &OscillationReport) -> Table {
    let mut t = Table::new(&[
        "side",
        "n_max",
        "upper",
        "lower",
        "spread",
        "upper_exact",
        "lower_exact",
    ]);
    t.push(vec![
        side.to_string().into(),
        o.n_max.into(),
        o.upper_f64.into(),
        o.lower_f64.into(),
        o.spread_f64.into(),
        o.upper.to_string().into(),
        o.lower.to_string().into(),
    ]);
    t
}

pub fn square_palindrome_table(v: &SquarePalindrome) -> Table {
    let flat = |ps: &[(u64, u64)]| {
        Cell::List(
            ps.iter()
                .flat_map(|&(a, b)| [BigInt::from(a), BigInt::from(b)])
                .collect(),
        )
    };
    let mut t = Table::new(&[
        "head",
        "digits",
        "period",
        "sign_left",
        "sign_right",
        "left_start",
        "right_end",
        "ok",
    ]);
    t.push(vec![
        v.head.to_string().into(),
        v.digits.into(),
        v.period.into(),
        v.sign_left.into(),
        v.sign_right.into(),
        flat(&v.left_start),
        flat(&v.right_end),
        v.ok().into(),
    ]);
    t
}

pub fn farey_table(rows: &[(BigInt, FareyTriplet)]) -> Table {
    let mut t = Table::new(&["R", "a_b", "x_y", "c_d"]);
    for (r, f) in rows {
        t.push(vec![
            r.into(),
            f.a_b.to_string().into(),
            f.x_y.to_string().into(),
            f.c_d.to_string().into(),
        ]);
    }
    t
}

pub fn plot_table(points: &[PlotPoint]) -> Table {
    use num_traits::ToPrimitive;
    let mut t = Table::new(&[
        "farey_numerator",
        "farey_denominator",
        "farey_decimal",
        "log10_R",
        "depth",
    ]);
    for p in points {
        t.push(vec![
            p.farey.numer().into(),
            p.farey.denom().into(),
            p.farey.to_f64().unwrap_or(f64::NAN).into(),
            p.log10_r.into(),
            p.depth.into(),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::markov_tree::enumerate;

    #[test]
    fn tree_csv() {
        let list = enumerate(1, &Budget::default()).unwrap();
        let csv = tree_table(&list).render(Format::Csv);
        assert_eq!(
            csv,
            "position,depth,x,R,z,sibling\n1,0,1,1,1,2\n2,0,1,2,1,1\n3,1,1,5,2,1\n"
        );
    }

    #[test]
    fn json_uses_strings_for_integers() {
        let mut t = Table::new(&["R", "ok", "J"]);
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        t.push(vec![
            big.into(),
            true.into(),
            Cell::List(vec![2.into(), 5.into()]),
        ]);
        let v: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v[0]["R"], "123456789012345678901234567890");
        assert_eq!(v[0]["ok"], true);
        assert_eq!(v[0]["J"][1], "5");
    }

    #[test]
    fn text_is_aligned() {
        let mut t = Table::new(&["n", "H"]);
        t.push(vec![1i64.into(), 13i64.into()]);
        t.push(vec![(-1i64).into(), 2i64.into()]);
        assert_eq!(t.render(Format::Text), " n   H\n 1  13\n-1   2\n");
    }

    #[test]
    fn edge_rows() {
        let head = RegionHead::new(crate::OrderedTriplet::from_u64(1, 5, 2).unwrap()).unwrap();
        let t = edge_table(&head, EdgeSide::Left, -1, 1).unwrap();
        assert_eq!(
            t.render(Format::Csv),
            "n,side,H\n-1,left,2\n0,left,1\n1,left,13\n"
        );
        assert!("xml".parse::<Format>().is_err());
    }
}
