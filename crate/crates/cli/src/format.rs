//! Line-oriented text formats. Lines starting with `#` are provenance: parsers
//! collect them in order and emitters write them back first.
//!
//! * matrix: `r c`, then r rows of c `0`/`1` characters
//! * vectorsum: a matrix, then `b <bits>` and `k <int>`
//! * evenset: a matrix, then `k <int>`
//! * pointvalues: `m n`, then m lines `<n bits> <bit>`, then `k <int>` and
//!   optional `eps <real>` / `delta <real>`
//! * graph: `n m`, then m lines `u v` (1-based)
//! * code: `code generator` or `code parity_check`, then a matrix

use std::fmt::{self, Write as _};
use std::str::FromStr;

use sparsef2::codes::LinearCode;
use sparsef2::graphs::Graph;
use sparsef2::reductions::{EvenSetInstance, PointValueSet, VectorSumInstance};
use sparsef2::{BitMat, BitVec};

use crate::error::CliError;

/// Instance kinds understood by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Kind {
    Graph,
    Matrix,
    Vectorsum,
    Evenset,
    Pointvalues,
    Code,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Graph => "graph",
            Self::Matrix => "matrix",
            Self::Vectorsum => "vectorsum",
            Self::Evenset => "evenset",
            Self::Pointvalues => "pointvalues",
            Self::Code => "code",
        })
    }
}

/// A parsed file of any kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Matrix(BitMat),
    VectorSum(VectorSumInstance),
    EvenSet(EvenSetInstance),
    PointValues(PointValueSet),
    Code(LinearCode),
}

impl Instance {
    #[must_use]
    pub fn kind(&self) -> Kind {
        match self {
            Self::Graph(_) => Kind::Graph,
            Self::Matrix(_) => Kind::Matrix,
            Self::VectorSum(_) => Kind::Vectorsum,
            Self::EvenSet(_) => Kind::Evenset,
            Self::PointValues(_) => Kind::Pointvalues,
            Self::Code(_) => Kind::Code,
        }
    }
}

/// File contents: provenance lines (without the leading `#` and one space) and the body.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub provenance: Vec<String>,
    pub instance: Instance,
}

/// How a code file describes its code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeForm {
    Generator,
    ParityCheck,
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    provenance: Vec<String>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate().peekable(),
            provenance: Vec::new(),
        }
    }

    /// Next content line as (1-based line number, trimmed text).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim_end_matches('\r');
            if let Some(p) = line.strip_prefix('#') {
                self.provenance.push(p.strip_prefix(' ').unwrap_or(p).to_string());
                continue;
            }
            let t = line.trim();
            if !t.is_empty() {
                return Some((i + 1, t));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), CliError> {
        self.next()
            .ok_or_else(|| CliError::parse(0, format!("unexpected end of file, expected {what}")))
    }

    fn finish(mut self) -> Result<Vec<String>, CliError> {
        if let Some((n, l)) = self.next() {
            return Err(CliError::parse(n, format!("unexpected trailing content `{l}`")));
        }
        Ok(self.provenance)
    }
}

fn number<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, CliError> {
    tok.parse()
        .map_err(|_| CliError::parse(line, format!("invalid {what} `{tok}`")))
}

fn pair<T: FromStr>(line: usize, text: &str, what: &str) -> Result<(T, T), CliError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(CliError::parse(line, format!("expected `{what}`, got `{text}`")));
    }
    Ok((number(line, toks[0], what)?, number(line, toks[1], what)?))
}

fn bits(line: usize, tok: &str, len: usize) -> Result<BitVec, CliError> {
    if tok.len() != len {
        return Err(CliError::parse(
            line,
            format!("row has {} bits, expected {len}", tok.chars().count()),
        ));
    }
    tok.parse()
        .map_err(|_| CliError::parse(line, format!("row `{tok}` contains characters other than 0 and 1")))
}

fn keyed<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, CliError> {
    match text.split_once(char::is_whitespace) {
        Some((k, v)) if k == key => Ok(v.trim()),
        _ if text == key => Ok(""),
        _ => Err(CliError::parse(line, format!("expected `{key} …`, got `{text}`"))),
    }
}

fn parse_matrix_body(lines: &mut Lines<'_>) -> Result<BitMat, CliError> {
    let (ln, header) = lines.expect("matrix header `rows cols`")?;
    let (r, c): (usize, usize) = pair(ln, header, "rows cols")?;
    let mut rows = Vec::with_capacity(r);
    if c == 0 {
        return Ok(BitMat::zeros(r, 0));
    }
    for i in 0..r {
        let (ln, text) = lines.expect(&format!("matrix row {} of {r}", i + 1))?;
        rows.push(bits(ln, text, c)?);
    }
    Ok(BitMat::from_rows(c, rows)?)
}

fn parse_k(lines: &mut Lines<'_>) -> Result<usize, CliError> {
    let (ln, text) = lines.expect("`k <int>`")?;
    number(ln, keyed(ln, text, "k")?, "k")
}

pub fn parse_matrix(text: &str) -> Result<(BitMat, Vec<String>), CliError> {
    let mut lines = Lines::new(text);
    let m = parse_matrix_body(&mut lines)?;
    Ok((m, lines.finish()?))
}

pub fn parse_vectorsum(text: &str) -> Result<VectorSumInstance, CliError> {
    let mut lines = Lines::new(text);
    let m = parse_matrix_body(&mut lines)?;
    let (ln, t) = lines.expect("`b <bits>`")?;
    let b = bits(ln, keyed(ln, t, "b")?, m.nrows())?;
    let k = parse_k(&mut lines)?;
    let mut inst = VectorSumInstance::new(m, b, k)?;
    inst.provenance = lines.finish()?;
    Ok(inst)
}

pub fn parse_evenset(text: &str) -> Result<EvenSetInstance, CliError> {
    let mut lines = Lines::new(text);
    let m = parse_matrix_body(&mut lines)?;
    let k = parse_k(&mut lines)?;
    let mut inst = EvenSetInstance::new(m, k)?;
    inst.provenance = lines.finish()?;
    Ok(inst)
}

pub fn parse_pointvalues(text: &str) -> Result<(PointValueSet, Vec<String>), CliError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.expect("header `m n`")?;
    let (m, n): (usize, usize) = pair(ln, header, "m n")?;
    let mut points = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let (ln, text) = lines.expect(&format!("pair {} of {m}", i + 1))?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (p, v) = match (n, toks.as_slice()) {
            (0, [v]) => ("", *v),
            (_, [p, v]) => (*p, *v),
            _ => return Err(CliError::parse(ln, format!("expected `<{n} bits> <bit>`, got `{text}`"))),
        };
        points.push(bits(ln, p, n)?);
        values.push(match v {
            "0" => false,
            "1" => true,
            _ => return Err(CliError::parse(ln, format!("value `{v}` is not a bit"))),
        });
    }
    let k = parse_k(&mut lines)?;
    let mut pv = PointValueSet::new(n, points, BitVec::from_bools(&values), k)?;
    while let Some((ln, text)) = lines.next() {
        let (key, val) = text
            .split_once(char::is_whitespace)
            .ok_or_else(|| CliError::parse(ln, format!("unexpected line `{text}`")))?;
        let x: f64 = number(ln, val.trim(), key)?;
        match key {
            "eps" if pv.eps.is_none() => pv.eps = Some(x),
            "delta" if pv.delta.is_none() => pv.delta = Some(x),
            _ => return Err(CliError::parse(ln, format!("unexpected line `{text}`"))),
        }
    }
    Ok((pv, lines.provenance))
}

pub fn parse_graph(text: &str) -> Result<(Graph, Vec<String>), CliError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.expect("header `n m`")?;
    let (n, m): (usize, usize) = pair(ln, header, "n m")?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let (ln, text) = lines.expect(&format!("edge {} of {m}", i + 1))?;
        let (u, v): (usize, usize) = pair(ln, text, "u v")?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(CliError::parse(ln, format!("vertex out of range 1..={n}")));
        }
        edges.push((u - 1, v - 1));
    }
    let g = Graph::new(n, edges)?;
    if g.m() != m {
        return Err(CliError::Validation(format!("{m} edges declared but {} are distinct", g.m())));
    }
    Ok((g, lines.finish()?))
}

pub fn parse_code(text: &str) -> Result<(LinearCode, CodeForm, Vec<String>), CliError> {
    let mut lines = Lines::new(text);
    let (ln, t) = lines.expect("`code generator|parity_check`")?;
    let form = match keyed(ln, t, "code")? {
        "generator" => CodeForm::Generator,
        "parity_check" => CodeForm::ParityCheck,
        other => return Err(CliError::parse(ln, format!("unknown code form `{other}`"))),
    };
    let m = parse_matrix_body(&mut lines)?;
    let code = match form {
        CodeForm::Generator => LinearCode::from_generator(m)?,
        CodeForm::ParityCheck => LinearCode::from_parity_check(m)?,
    };
    Ok((code, form, lines.finish()?))
}

/// Parses `text` as the declared kind.
pub fn parse(text: &str, kind: Kind) -> Result<Document, CliError> {
    let (provenance, instance) = match kind {
        Kind::Graph => parse_graph(text).map(|(g, p)| (p, Instance::Graph(g)))?,
        Kind::Matrix => parse_matrix(text).map(|(m, p)| (p, Instance::Matrix(m)))?,
        Kind::Vectorsum => {
            let mut i = parse_vectorsum(text)?;
            (std::mem::take(&mut i.provenance), Instance::VectorSum(i))
        }
        Kind::Evenset => {
            let mut i = parse_evenset(text)?;
            (std::mem::take(&mut i.provenance), Instance::EvenSet(i))
        }
        Kind::Pointvalues => parse_pointvalues(text).map(|(pv, p)| (p, Instance::PointValues(pv)))?,
        Kind::Code => parse_code(text).map(|(c, _, p)| (p, Instance::Code(c)))?,
    };
    Ok(Document { provenance, instance })
}

/// Guesses the kind of a file from its layout; `None` when nothing matches.
#[must_use]
pub fn sniff(text: &str) -> Option<Kind> {
    let mut lines = Lines::new(text);
    let mut content = Vec::new();
    while let Some((_, l)) = lines.next() {
        content.push(l);
    }
    let first = *content.first()?;
    if first.starts_with("code") {
        return Some(Kind::Code);
    }
    let has = |key: &str| content.iter().any(|l| l.split_whitespace().next() == Some(key));
    let second_split = content.get(1).is_some_and(|l| l.contains(char::is_whitespace));
    Some(match (second_split, has("b"), has("k")) {
        (_, true, _) => Kind::Vectorsum,
        (true, false, true) => Kind::Pointvalues,
        (true, false, false) => Kind::Graph,
        (false, false, true) => Kind::Evenset,
        (false, false, false) => Kind::Matrix,
    })
}

fn write_provenance(out: &mut String, provenance: &[String]) {
    for p in provenance {
        if p.is_empty() {
            out.push_str("#\n");
        }
        for line in p.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
}

fn write_matrix(out: &mut String, m: &BitMat) {
    let _ = writeln!(out, "{} {}", m.nrows(), m.ncols());
    if m.ncols() == 0 {
        return;
    }
    for r in m.rows() {
        let _ = writeln!(out, "{r}");
    }
}

#[must_use]
pub fn emit_matrix(m: &BitMat, provenance: &[String]) -> String {
    let mut s = String::new();
    write_provenance(&mut s, provenance);
    write_matrix(&mut s, m);
    s
}

/// Points as the rows of a matrix.
pub fn emit_points(points: &[BitVec], provenance: &[String]) -> Result<String, CliError> {
    let n = points.first().map_or(0, BitVec::len);
    Ok(emit_matrix(&BitMat::from_rows(n, points.to_vec())?, provenance))
}

/// Writes the instance's own provenance lines after `extra`.
#[must_use]
pub fn emit_vectorsum(inst: &VectorSumInstance, extra: &[String]) -> String {
    let mut s = String::new();
    write_provenance(&mut s, extra);
    write_provenance(&mut s, &inst.provenance);
    write_matrix(&mut s, &inst.m);
    let _ = writeln!(s, "b {}", inst.b);
    let _ = writeln!(s, "k {}", inst.k);
    s
}

#[must_use]
pub fn emit_evenset(inst: &EvenSetInstance, extra: &[String]) -> String {
    let mut s = String::new();
    write_provenance(&mut s, extra);
    write_provenance(&mut s, &inst.provenance);
    write_matrix(&mut s, &inst.m);
    let _ = writeln!(s, "k {}", inst.k);
    s
}

#[must_use]
pub fn emit_pointvalues(pv: &PointValueSet, provenance: &[String]) -> String {
    let mut s = String::new();
    write_provenance(&mut s, provenance);
    let _ = writeln!(s, "{} {}", pv.len(), pv.n);
    for (i, p) in pv.points.iter().enumerate() {
        if pv.n == 0 {
            let _ = writeln!(s, "{}", u8::from(pv.values.get(i)));
        } else {
            let _ = writeln!(s, "{p} {}", u8::from(pv.values.get(i)));
        }
    }
    let _ = writeln!(s, "k {}", pv.k);
    if let Some(e) = pv.eps {
        let _ = writeln!(s, "eps {e}");
    }
    if let Some(d) = pv.delta {
        let _ = writeln!(s, "delta {d}");
    }
    s
}

#[must_use]
pub fn emit_graph(g: &Graph, provenance: &[String]) -> String {
    let mut s = String::new();
    write_provenance(&mut s, provenance);
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

#[must_use]
pub fn emit_code(code: &LinearCode, form: CodeForm, provenance: &[String]) -> String {
    let mut s = String::new();
    write_provenance(&mut s, provenance);
    match form {
        CodeForm::Generator => {
            s.push_str("code generator\n");
            write_matrix(&mut s, code.generator());
        }
        CodeForm::ParityCheck => {
            s.push_str("code parity_check\n");
            write_matrix(&mut s, code.parity_check());
        }
    }
    s
}

/// Emits any document; codes are written by generator.
pub fn emit(doc: &Document) -> Result<String, CliError> {
    let p = &doc.provenance;
    Ok(match &doc.instance {
        Instance::Graph(g) => emit_graph(g, p),
        Instance::Matrix(m) => emit_matrix(m, p),
        Instance::VectorSum(i) => emit_vectorsum(i, p),
        Instance::EvenSet(i) => emit_evenset(i, p),
        Instance::PointValues(pv) => emit_pointvalues(pv, p),
        Instance::Code(c) => emit_code(c, CodeForm::Generator, p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph() {
        let (g, prov) = parse_graph("3 2\n1 2\n2 3").unwrap();
        assert_eq!(g, Graph::path(3));
        assert!(prov.is_empty());
    }

    #[test]
    fn vectorsum_file() {
        let inst = parse_vectorsum("2 3\n110\n011\nb 11\nk 2\n").unwrap();
        assert_eq!(inst.k, 2);
        assert_eq!(inst.b.to_string(), "11");
        assert_eq!(inst.m.row(1).to_string(), "011");
    }

    #[test]
    fn wrong_row_length_names_the_line() {
        let err = parse_vectorsum("# made by hand\n2 3\n110\n01\nb 11\nk 2\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("line 4"), "{err}");
    }

    #[test]
    fn provenance_is_preserved() {
        let text = "# source abc\n# config k=2\n2 2\n10\n01\nk 1\n";
        let doc = parse(text, Kind::Evenset).unwrap();
        assert_eq!(doc.provenance, ["source abc", "config k=2"]);
        assert_eq!(emit(&doc).unwrap(), text);
    }

    #[test]
    fn pointvalues_round_trip() {
        let text = "2 3\n101 1\n000 0\nk 2\neps 0.1\n";
        let doc = parse(text, Kind::Pointvalues).unwrap();
        assert_eq!(emit(&doc).unwrap(), text);
    }

    #[test]
    fn code_forms() {
        let text = "code parity_check\n2 3\n110\n011\n";
        let (code, form, _) = parse_code(text).unwrap();
        assert_eq!(form, CodeForm::ParityCheck);
        assert_eq!(code.dim(), 1);
        assert_eq!(emit_code(&code, form, &[]), text);
    }

    #[test]
    fn kinds_are_sniffed() {
        assert_eq!(sniff("3 2\n1 2\n2 3"), Some(Kind::Graph));
        assert_eq!(sniff("# x\n2 3\n110\n011\nb 11\nk 2"), Some(Kind::Vectorsum));
        assert_eq!(sniff("2 3\n110\n011\nk 2"), Some(Kind::Evenset));
        assert_eq!(sniff("2 3\n110\n011"), Some(Kind::Matrix));
        assert_eq!(sniff("1 3\n110 1\nk 2"), Some(Kind::Pointvalues));
        assert_eq!(sniff("code generator\n1 1\n1"), Some(Kind::Code));
        assert_eq!(sniff(""), None);
    }

    #[test]
    fn trailing_garbage_rejected() {
        assert!(parse_matrix("1 2\n10\n11\n").is_err());
        assert!(parse_graph("3 1\n1 4\n").is_err());
    }
}
