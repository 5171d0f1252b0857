//! Range scans over `n` and their CSV form.
//!
//! Three tables:
//! * `gnb`: lowest Gauss-period type of `F_{2^n}`,
//! * `enb`: smallest elliptic embedding degree,
//! * `ext`: for `n` without a low-type basis, the subfield workarounds
//!   (degree 2, 4 and 3 extensions over a low-type basis, and the elliptic
//!   embedding degree).

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::algebraic::enb_embedding_degree;
use crate::gauss::lowest_type;
use crate::{Error, Result};

/// A row that has a CSV form keyed by `n`.
pub trait TableRow: Sized + Clone + PartialEq + Send {
    const HEADER: &'static [&'static str];

    fn n(&self) -> u64;
    fn record(&self) -> Vec<String>;
    fn from_record(fields: &[&str]) -> Result<Self>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GnbRow {
    pub n: u64,
    pub k: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnbRow {
    pub n: u64,
    pub embed: u32,
}

/// Subfield degree `d` with the lowest type `k` of its basis.
pub type SubBasis = (u64, u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtRow {
    pub n: u64,
    pub as2: Option<SubBasis>,
    pub witt4: Option<SubBasis>,
    pub kummer: Option<SubBasis>,
    /// `3 | 2^d - 1` for the Kummer subfield; `None` without one.
    pub kummer_admissible: Option<bool>,
    pub enb_embed: Option<u32>,
}

fn parse_field<T: std::str::FromStr>(name: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Format(format!("bad {name} value {s:?}")))
}

fn parse_opt<T: std::str::FromStr>(name: &str, s: &str) -> Result<Option<T>> {
    if s.trim().is_empty() {
        Ok(None)
    } else {
        parse_field(name, s).map(Some)
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn pair(name: &str, d: &str, k: &str) -> Result<Option<SubBasis>> {
    match (parse_opt(name, d)?, parse_opt(name, k)?) {
        (Some(d), Some(k)) => Ok(Some((d, k))),
        (None, None) => Ok(None),
        _ => Err(Error::Format(format!("half-filled {name} columns"))),
    }
}

impl TableRow for GnbRow {
    const HEADER: &'static [&'static str] = &["n", "k"];

    fn n(&self) -> u64 {
        self.n
    }

    fn record(&self) -> Vec<String> {
        vec![self.n.to_string(), self.k.to_string()]
    }

    fn from_record(f: &[&str]) -> Result<Self> {
        Ok(Self {
            n: parse_field("n", f[0])?,
            k: parse_field("k", f[1])?,
        })
    }
}

impl TableRow for EnbRow {
    const HEADER: &'static [&'static str] = &["n", "embed"];

    fn n(&self) -> u64 {
        self.n
    }

    fn record(&self) -> Vec<String> {
        vec![self.n.to_string(), self.embed.to_string()]
    }

    fn from_record(f: &[&str]) -> Result<Self> {
        Ok(Self {
            n: parse_field("n", f[0])?,
            embed: parse_field("embed", f[1])?,
        })
    }
}

impl TableRow for ExtRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "as_d",
        "as_k",
        "witt_d",
        "witt_k",
        "kummer_d",
        "kummer_k",
        "kummer_admissible",
        "enb_embed",
    ];

    fn n(&self) -> u64 {
        self.n
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            opt(self.as2.map(|p| p.0)),
            opt(self.as2.map(|p| p.1)),
            opt(self.witt4.map(|p| p.0)),
            opt(self.witt4.map(|p| p.1)),
            opt(self.kummer.map(|p| p.0)),
            opt(self.kummer.map(|p| p.1)),
            opt(self.kummer_admissible),
            opt(self.enb_embed),
        ]
    }

    fn from_record(f: &[&str]) -> Result<Self> {
        Ok(Self {
            n: parse_field("n", f[0])?,
            as2: pair("as", f[1], f[2])?,
            witt4: pair("witt", f[3], f[4])?,
            kummer: pair("kummer", f[5], f[6])?,
            kummer_admissible: parse_opt("kummer_admissible", f[7])?,
            enb_embed: parse_opt("enb_embed", f[8])?,
        })
    }
}

fn check_range(min: u64, max: u64) -> Result<()> {
    if min < 2 || min > max {
        return Err(Error::param(format!("need 2 <= min <= max, got [{min}, {max}]")));
    }
    Ok(())
}

fn scan<R, F>(min: u64, max: u64, f: F) -> Result<Vec<R>>
where
    R: TableRow,
    F: Fn(u64) -> Result<Option<R>> + Sync + Send,
{
    check_range(min, max)?;
    let mut rows: Vec<R> = (min..=max)
        .into_par_iter()
        .map(f)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    rows.sort_by_key(|r| r.n());
    Ok(rows)
}

pub fn gnb_range(min: u64, max: u64, kmax: u64) -> Result<Vec<GnbRow>> {
    scan(min, max, |n| {
        Ok(lowest_type(n as usize, kmax as usize).map(|k| GnbRow { n, k: k as u64 }))
    })
}

pub fn enb_range(min: u64, max: u64, emax: u32) -> Result<Vec<EnbRow>> {
    scan(min, max, |n| {
        Ok(enb_embedding_degree(n, emax)?
            .embed
            .map(|embed| EnbRow { n, embed }))
    })
}

fn sub_basis(n: u64, degree: u64, kmax: u64) -> Option<SubBasis> {
    if !n.is_multiple_of(degree) {
        return None;
    }
    let d = n / degree;
    if d < 2 {
        return None;
    }
    lowest_type(d as usize, kmax as usize).map(|k| (d, k as u64))
}

pub fn ext_range(min: u64, max: u64, kmax: u64, emax: u32) -> Result<Vec<ExtRow>> {
    scan(min, max, |n| {
        if lowest_type(n as usize, kmax as usize).is_some() {
            return Ok(None);
        }
        let kummer = sub_basis(n, 3, kmax);
        Ok(Some(ExtRow {
            n,
            as2: sub_basis(n, 2, kmax),
            witt4: sub_basis(n, 4, kmax),
            kummer,
            kummer_admissible: kummer.map(|(d, _)| d % 2 == 0),
            enb_embed: enb_embedding_degree(n, emax)?.embed,
        }))
    })
}

/// Keeps the `d` with `3 | 2^d - 1`, i.e. the even ones.
pub fn kummer_filter(ds: &[u64]) -> Vec<u64> {
    ds.iter().copied().filter(|d| d % 2 == 0).collect()
}

pub fn write_csv<R: TableRow, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(R::HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv<R: TableRow>(rows: &[R], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_csv(rows, std::io::BufWriter::new(file))
}

pub fn parse_csv<R: TableRow, Rd: Read>(input: Rd) -> Result<Vec<R>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_owned).collect();
    if header != R::HEADER {
        return Err(Error::Format(format!(
            "header {header:?} does not match {:?}",
            R::HEADER
        )));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let fields: Vec<&str> = rec.iter().collect();
        if fields.len() != R::HEADER.len() {
            return Err(Error::Format(format!("row {fields:?} has the wrong width")));
        }
        rows.push(R::from_record(&fields)?);
    }
    Ok(rows)
}

pub fn read_csv<R: TableRow>(path: &Path) -> Result<Vec<R>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_csv(std::io::BufReader::new(file))
}

/// Rows are rendered as CSV lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffReport {
    /// In the golden file only.
    pub missing: Vec<String>,
    /// In the regenerated table only.
    pub extra: Vec<String>,
    /// Same `n`, different contents: `(golden, regenerated)`.
    pub changed: Vec<(String, String)>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.changed.is_empty()
    }

    pub fn len(&self) -> usize {
        self.missing.len() + self.extra.len() + self.changed.len()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.missing {
            writeln!(f, "- {m}")?;
        }
        for e in &self.extra {
            writeln!(f, "+ {e}")?;
        }
        for (g, a) in &self.changed {
            writeln!(f, "~ {g} -> {a}")?;
        }
        Ok(())
    }
}

fn line<R: TableRow>(r: &R) -> String {
    r.record().join(",")
}

pub fn diff_rows<R: TableRow>(actual: &[R], golden: &[R]) -> DiffReport {
    let index = |rows: &[R]| rows.iter().map(|r| (r.n(), r.clone())).collect::<BTreeMap<_, _>>();
    let (a, g) = (index(actual), index(golden));
    let mut report = DiffReport::default();
    for (n, gr) in &g {
        match a.get(n) {
            None => report.missing.push(line(gr)),
            Some(ar) if ar != gr => report.changed.push((line(gr), line(ar))),
            _ => {}
        }
    }
    report.extra = a
        .iter()
        .filter(|(n, _)| !g.contains_key(n))
        .map(|(_, r)| line(r))
        .collect();
    report
}

/// Compares two CSV files of the same schema.
pub fn diff_golden<R: TableRow>(path: &Path, golden_path: &Path) -> Result<DiffReport> {
    Ok(diff_rows::<R>(&read_csv(path)?, &read_csv(golden_path)?))
}
