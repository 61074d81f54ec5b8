//! Text formats.
//!
//! A system file lists polynomials separated by lines reading `---`. Each
//! monomial is a line `c : e1 e2 ... en` with `c` an integer or `p/q`; `#`
//! starts a comment. Matrix files hold one row per line with entries
//! `p/q` or `inf`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::cells::SubdivisionFace;
use crate::error::{Error, Result};
use crate::gadgets::Encoding;
use crate::linalg::TropicalMatrix;
use crate::poly::{Monomial, Point, PolySystem, TropicalPolynomial};
use crate::rational::{fmt_rat, parse_rat, ExtRational};

/// Strips a `#` comment, returning the content.
fn content(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Whitespace-separated tokens of `s` with 1-based columns, `s` starting at `offset`.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let base = s.as_ptr() as usize;
    s.split_whitespace()
        .map(|t| (t.as_ptr() as usize - base + offset + 1, t))
        .collect()
}

struct Block {
    start_line: usize,
    terms: Vec<Monomial>,
    seen: HashSet<Vec<u32>>,
}

impl Block {
    fn new(start_line: usize) -> Self {
        Block {
            start_line,
            terms: Vec::new(),
            seen: HashSet::new(),
        }
    }
}

pub fn parse_system(text: &str) -> Result<PolySystem> {
    let mut dim: Option<usize> = None;
    let mut polys = Vec::new();
    let mut block = Block::new(1);
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        last_line = line_no;
        let body = content(raw);
        if body.trim() == "---" {
            if block.terms.is_empty() {
                return Err(Error::parse(line_no, 1, "empty polynomial before separator"));
            }
            let d = dim.expect("a term was read");
            polys.push(TropicalPolynomial::new(d, std::mem::take(&mut block.terms))?);
            block = Block::new(line_no + 1);
            continue;
        }
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(Error::parse(line_no, col, "expected `coefficient : exponents`"));
        };
        let coef_toks = tokens(&body[..colon], 0);
        let coef = match coef_toks.as_slice() {
            [(col, tok)] => parse_rat(tok)
                .ok_or_else(|| Error::parse(line_no, *col, format!("invalid coefficient `{tok}`")))?,
            [] => return Err(Error::parse(line_no, colon + 1, "missing coefficient")),
            [_, (col, _), ..] => return Err(Error::parse(line_no, *col, "expected a single coefficient")),
        };
        let exp_toks = tokens(&body[colon + 1..], colon + 1);
        let mut exponent = Vec::with_capacity(exp_toks.len());
        for (col, tok) in &exp_toks {
            let e = tok
                .parse::<u32>()
                .map_err(|_| Error::parse(line_no, *col, format!("invalid exponent `{tok}`")))?;
            exponent.push(e);
        }
        match dim {
            None => dim = Some(exponent.len()),
            Some(d) if d != exponent.len() => {
                let col = exp_toks.last().map_or(colon + 2, |(c, _)| *c);
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("expected {d} exponents, found {}", exponent.len()),
                ));
            }
            Some(_) => {}
        }
        if !block.seen.insert(exponent.clone()) {
            let col = exp_toks.first().map_or(colon + 2, |(c, _)| *c);
            return Err(Error::parse(line_no, col, "exponent repeated within the polynomial"));
        }
        block.terms.push(Monomial::new(exponent, coef));
    }
    if !block.terms.is_empty() {
        let d = dim.expect("a term was read");
        polys.push(TropicalPolynomial::new(d, block.terms)?);
    } else if !polys.is_empty() {
        return Err(Error::parse(block.start_line.min(last_line.max(1)), 1, "empty polynomial after separator"));
    }
    match dim {
        Some(d) => PolySystem::new(d, polys),
        None => Err(Error::parse(last_line.max(1), 1, "no polynomials found")),
    }
}

pub fn write_polynomial(out: &mut String, f: &TropicalPolynomial) {
    for t in f.terms() {
        out.push_str(&fmt_rat(&t.coefficient));
        out.push_str(" :");
        for e in &t.exponent {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
}

pub fn write_system(sys: &PolySystem) -> String {
    let mut out = String::new();
    for (i, f) in sys.polys().iter().enumerate() {
        if i > 0 {
            out.push_str("---\n");
        }
        write_polynomial(&mut out, f);
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<TropicalMatrix> {
    let mut rows: Vec<Vec<ExtRational>> = Vec::new();
    let mut width: Option<usize> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let toks = tokens(content(raw), 0);
        if toks.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(toks.len());
        for (col, tok) in &toks {
            let v: ExtRational = tok
                .parse()
                .map_err(|_| Error::parse(line_no, *col, format!("invalid entry `{tok}`")))?;
            row.push(v);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::parse(
                    line_no,
                    toks.last().map_or(1, |(c, _)| *c),
                    format!("expected {w} entries, found {}", row.len()),
                ))
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    TropicalMatrix::from_rows(rows)
}

pub fn write_matrix(m: &TropicalMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Comma-separated rationals, e.g. `1/2,0,-3`.
pub fn parse_point(s: &str) -> Result<Point> {
    if s.trim().is_empty() {
        return Ok(Point(Vec::new()));
    }
    let mut coords = Vec::new();
    let mut col = 1;
    for part in s.split(',') {
        let lead = part.len() - part.trim_start().len();
        let v = parse_rat(part)
            .ok_or_else(|| Error::parse(1, col + lead, format!("invalid coordinate `{}`", part.trim())))?;
        coords.push(v);
        col += part.len() + 1;
    }
    Ok(Point(coords))
}

/// The system with a leading comment block describing the coordinates.
pub fn write_encoding(e: &Encoding) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# variant: {}", e.variant);
    let _ = writeln!(out, "# coordinates: {}", e.total_vars);
    for i in 0..e.var_map.n_original {
        let _ = writeln!(out, "# x{} = y{}", i + 1, i + 1);
    }
    for a in &e.var_map.aux {
        let _ = writeln!(out, "# x{} = z (clause {})", a.coordinate + 1, a.clause);
    }
    if let Some(x) = e.var_map.extra {
        let _ = writeln!(out, "# x{} = extra", x + 1);
    }
    out.push_str(&write_system(&e.system));
    out
}

/// JSON-like listing of the support points and subdivision faces.
pub fn write_subdivision(f: &TropicalPolynomial, faces: &[SubdivisionFace]) -> String {
    let points: Vec<String> = f
        .terms()
        .iter()
        .map(|t| {
            let e: Vec<String> = t.exponent.iter().map(u32::to_string).collect();
            format!("[{}]", e.join(", "))
        })
        .collect();
    let faces: Vec<String> = faces
        .iter()
        .map(|face| {
            let v: Vec<String> = face.tight_set.iter().map(usize::to_string).collect();
            format!("[{}]", v.join(", "))
        })
        .collect();
    format!(
        "{{\n  \"points\": [{}],\n  \"faces\": [{}]\n}}\n",
        points.join(", "),
        faces.join(", ")
    )
}
