//! Plain-text formats for groups, tables, biquandles, MCBs, primitive structures,
//! partially multiplicative biquandles and G-families.
//!
//! Blank lines and `#` comments are ignored everywhere.

use std::fmt::Write as _;

use crate::biquandle::Biquandle;
use crate::error::{Error, Result};
use crate::gfamily::GFamily;
use crate::group::FiniteGroup;
use crate::mcb::{McbTables, Pmb, PrimitiveStructure};
use crate::table::{OpTable, PartialOp};

pub(crate) struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    pub(crate) fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column: column.max(1),
            message: message.into(),
        }
    }

    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices().chain([(self.text.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((self.text[..s].chars().count() + 1, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        out
    }

    fn number(&self, column: usize, tok: &str) -> Result<usize> {
        tok.parse().map_err(|_| {
            self.error(
                column,
                format!("expected a non-negative integer, found `{tok}`"),
            )
        })
    }

    pub(crate) fn numbers(&self) -> Result<Vec<usize>> {
        self.tokens()
            .into_iter()
            .map(|(c, t)| self.number(c, t))
            .collect()
    }

    pub(crate) fn keyword_and_numbers(&self) -> Result<(&'a str, Vec<usize>)> {
        let toks = self.tokens();
        let (_, kw) = toks[0];
        let args = toks[1..]
            .iter()
            .map(|&(c, t)| self.number(c, t))
            .collect::<Result<_>>()?;
        Ok((kw, args))
    }

    pub(crate) fn expect_arity(&self, args: &[usize], k: usize) -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            let col = self.tokens().last().map_or(1, |&(c, _)| c);
            Err(self.error(col, format!("expected {k} arguments, found {}", args.len())))
        }
    }

    /// Expects `kw a1 … ak`.
    fn expect_keyword(&self, kw: &str, k: usize) -> Result<Vec<usize>> {
        let (found, args) = self.keyword_and_numbers()?;
        if found != kw {
            return Err(self.error(1, format!("expected `{kw}`, found `{found}`")));
        }
        self.expect_arity(&args, k)?;
        Ok(args)
    }
}

pub(crate) struct Lines<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let lines: Vec<Line<'a>> = text
            .lines()
            .enumerate()
            .map(|(i, l)| Line {
                number: i + 1,
                text: l.split('#').next().unwrap_or(""),
            })
            .filter(|l| !l.text.trim().is_empty())
            .collect();
        Self {
            lines,
            pos: 0,
            last: text.lines().count().max(1),
        }
    }

    pub(crate) fn next_line(&mut self) -> Option<&Line<'a>> {
        let l = self.lines.get(self.pos)?;
        self.pos += 1;
        Some(l)
    }

    fn expect_line(&mut self, what: &str) -> Result<&Line<'a>> {
        let last = self.last;
        self.next_line().ok_or_else(|| Error::Parse {
            line: last,
            column: 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn keyword(&mut self, kw: &str, k: usize) -> Result<Vec<usize>> {
        self.expect_line(&format!("`{kw}`"))?.expect_keyword(kw, k)
    }

    /// Expects `kw N` and returns N.
    pub(crate) fn header(&mut self, kw: &str) -> Result<usize> {
        Ok(self.keyword(kw, 1)?[0])
    }

    fn rows(&mut self, count: usize, width: usize) -> Result<Vec<Vec<usize>>> {
        (0..count)
            .map(|_| {
                let line = self.expect_line("a table row")?;
                let row = line.numbers()?;
                if row.len() != width {
                    return Err(
                        line.error(1, format!("expected {width} entries, found {}", row.len()))
                    );
                }
                Ok(row)
            })
            .collect()
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_line() {
            None => Ok(()),
            Some(l) => Err(l.error(1, "unexpected trailing input")),
        }
    }
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

fn table_section(lines: &mut Lines, kw: &str, n: usize) -> Result<OpTable> {
    lines.keyword(kw, 0)?;
    OpTable::from_rows(&lines.rows(n, n)?)
}

fn group_section(lines: &mut Lines) -> Result<Vec<Vec<usize>>> {
    let n = lines.header("group")?;
    lines.rows(n, n)
}

/// `group N` followed by N rows; the raw rows are returned unchecked.
pub fn parse_group_rows(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = Lines::new(text);
    let rows = group_section(&mut lines)?;
    lines.finish()?;
    Ok(rows)
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    FiniteGroup::from_rows(&parse_group_rows(text)?)
}

pub fn render_group(g: &FiniteGroup) -> String {
    let mut out = format!("group {}\n", g.order());
    write_rows(&mut out, &g.table().rows());
    out
}

/// `table N` followed by N rows.
pub fn parse_table(text: &str) -> Result<OpTable> {
    let mut lines = Lines::new(text);
    let n = lines.header("table")?;
    let t = OpTable::from_rows(&lines.rows(n, n)?)?;
    lines.finish()?;
    Ok(t)
}

pub fn render_table(t: &OpTable) -> String {
    let mut out = format!("table {}\n", t.order());
    write_rows(&mut out, &t.rows());
    out
}

fn biquandle_section(lines: &mut Lines) -> Result<(OpTable, OpTable)> {
    let n = lines.header("biquandle")?;
    let under = table_section(lines, "under", n)?;
    let over = table_section(lines, "over", n)?;
    Ok((under, over))
}

/// The under and over tables of a biquandle file, not yet checked.
pub fn parse_biquandle_tables(text: &str) -> Result<(OpTable, OpTable)> {
    let mut lines = Lines::new(text);
    let t = biquandle_section(&mut lines)?;
    lines.finish()?;
    Ok(t)
}

pub fn parse_biquandle(text: &str) -> Result<Biquandle> {
    let (u, o) = parse_biquandle_tables(text)?;
    Biquandle::new(u, o)
}

pub fn render_biquandle_tables(under: &OpTable, over: &OpTable) -> String {
    let mut out = format!("biquandle {}\nunder\n", under.order());
    write_rows(&mut out, &under.rows());
    out.push_str("over\n");
    write_rows(&mut out, &over.rows());
    out
}

pub fn render_biquandle(x: &Biquandle) -> String {
    render_biquandle_tables(x.under_table(), x.over_table())
}

/// MCB data with explicit group tables in global ids; the axioms are not checked here.
pub fn parse_mcb(text: &str) -> Result<McbTables> {
    let mut lines = Lines::new(text);
    let n = lines.header("mcb")?;
    let k = lines.header("blocks")?;
    let mut blocks = Vec::with_capacity(k);
    for _ in 0..k {
        let line = lines.expect_line("`block`")?;
        let (kw, args) = line.keyword_and_numbers()?;
        if kw != "block" || args.is_empty() || args.len() != args[0] + 1 {
            return Err(line.error(1, "expected `block s id1 … ids`"));
        }
        blocks.push(args[1..].to_vec());
    }
    let mut mul = Vec::with_capacity(k);
    for (lambda, block) in blocks.iter().enumerate() {
        let line = lines.expect_line("`mul`")?;
        let args = line.expect_keyword("mul", 1)?;
        if args[0] != lambda {
            return Err(line.error(5, format!("expected `mul {lambda}`")));
        }
        mul.push(lines.rows(block.len(), block.len())?);
    }
    let under = table_section(&mut lines, "under", n)?;
    let over = table_section(&mut lines, "over", n)?;
    lines.finish()?;
    McbTables::new(under, over, blocks, &mul)
}

pub fn render_mcb(m: &McbTables) -> String {
    let mut out = format!("mcb {}\nblocks {}\n", m.order(), m.blocks().len());
    for b in m.blocks() {
        let ids: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "block {} {}", b.len(), ids.join(" "));
    }
    for lambda in 0..m.blocks().len() {
        let _ = writeln!(out, "mul {lambda}");
        write_rows(&mut out, &m.global_mul_rows(lambda));
    }
    out.push_str("under\n");
    write_rows(&mut out, &m.under_table().rows());
    out.push_str("over\n");
    write_rows(&mut out, &m.over_table().rows());
    out
}

fn partial_section(lines: &mut Lines, kw: &str, n: usize) -> Result<PartialOp> {
    let p = lines.header(kw)?;
    let mut op = PartialOp::empty(n);
    for _ in 0..p {
        let line = lines.expect_line("a triple")?;
        let v = line.numbers()?;
        if v.len() != 3 {
            return Err(line.error(1, format!("expected 3 entries, found {}", v.len())));
        }
        if v[..2].iter().any(|&x| x >= n) {
            return Err(line.error(1, format!("element out of range 0..{n}")));
        }
        if op.insert(v[0], v[1], v[2]).is_some() {
            return Err(line.error(1, format!("pair ({}, {}) listed twice", v[0], v[1])));
        }
    }
    Ok(op)
}

fn render_partial(out: &mut String, kw: &str, op: &PartialOp) {
    let _ = writeln!(out, "{kw} {}", op.len());
    for (a, b, c) in op.entries() {
        let _ = writeln!(out, "{a} {b} {c}");
    }
}

/// Biquandle section, then `pairs p` with lines `a b t` meaning `a ~ b`, `a △ b = t`.
pub fn parse_primitive(text: &str) -> Result<PrimitiveStructure> {
    let mut lines = Lines::new(text);
    let (u, o) = biquandle_section(&mut lines)?;
    let n = u.order();
    let tri = partial_section(&mut lines, "pairs", n)?;
    lines.finish()?;
    PrimitiveStructure::new(Biquandle::new(u, o)?, tri)
}

pub fn render_primitive(s: &PrimitiveStructure) -> String {
    let mut out = render_biquandle(s.base());
    render_partial(&mut out, "pairs", s.triangle());
    out
}

/// Biquandle section, then `bullet p` with lines `a b c` meaning `a • b = c`.
pub fn parse_pmb(text: &str) -> Result<Pmb> {
    let mut lines = Lines::new(text);
    let (u, o) = biquandle_section(&mut lines)?;
    let n = u.order();
    let bullet = partial_section(&mut lines, "bullet", n)?;
    lines.finish()?;
    Pmb::new(Biquandle::new(u, o)?, bullet)
}

pub fn render_pmb(s: &Pmb) -> String {
    let mut out = render_biquandle(&s.base);
    render_partial(&mut out, "bullet", &s.bullet);
    out
}

/// `gfamily N M`, a group section for G, then `under g` / `over g` tables for each g.
pub fn parse_gfamily(text: &str) -> Result<GFamily> {
    let mut lines = Lines::new(text);
    let hdr = lines.keyword("gfamily", 2)?;
    let (n, m) = (hdr[0], hdr[1]);
    let g = FiniteGroup::from_rows(&group_section(&mut lines)?)?;
    if g.order() != m {
        return Err(Error::MalformedTable(format!(
            "group has order {}, header says {m}",
            g.order()
        )));
    }
    let mut under = Vec::with_capacity(m);
    let mut over = Vec::with_capacity(m);
    for h in 0..m {
        for (kw, dst) in [("under", &mut under), ("over", &mut over)] {
            let line = lines.expect_line(&format!("`{kw} {h}`"))?;
            let args = line.expect_keyword(kw, 1)?;
            if args[0] != h {
                return Err(line.error(1, format!("expected `{kw} {h}`")));
            }
            dst.push(OpTable::from_rows(&lines.rows(n, n)?)?);
        }
    }
    lines.finish()?;
    GFamily::new(g, under, over)
}

pub fn render_gfamily(f: &GFamily) -> String {
    let mut out = format!("gfamily {} {}\n", f.carrier_size(), f.group().order());
    out.push_str(&render_group(f.group()));
    for h in 0..f.group().order() {
        let _ = writeln!(out, "under {h}");
        write_rows(&mut out, &f.under_table(h).rows());
        let _ = writeln!(out, "over {h}");
        write_rows(&mut out, &f.over_table(h).rows());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::make_alexander;
    use crate::gfamily::zfamily_from_biquandle;
    use crate::mcb::pmb_from_mcb;
    use crate::mcb::tests::sample_mcbs;

    #[test]
    fn round_trips() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(parse_group(&render_group(&g)).unwrap(), g);
        let x = make_alexander(5, 2, 3).unwrap();
        assert_eq!(parse_biquandle(&render_biquandle(&x)).unwrap(), x);
        for m in sample_mcbs() {
            assert_eq!(&parse_mcb(&render_mcb(&m)).unwrap(), m.tables());
            let s = m.primitive_structure();
            assert_eq!(parse_primitive(&render_primitive(&s)).unwrap(), s);
            let p = pmb_from_mcb(&m);
            assert_eq!(parse_pmb(&render_pmb(&p)).unwrap(), p);
        }
        let f = zfamily_from_biquandle(&x);
        assert_eq!(parse_gfamily(&render_gfamily(&f)).unwrap(), f);
        let t = OpTable::projection(3);
        assert_eq!(parse_table(&render_table(&t)).unwrap(), t);
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_group("# Z2\ngroup 2\n0 1  # row 0\n\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
        assert!(matches!(
            parse_group("group 2\n0 1\n1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_group("group 2\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_group("group 2\n0 1\n1 -1\n"),
            Err(Error::Parse {
                line: 3,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_biquandle_tables("biquandle 1\nunder\n0\nover\n0\nextra\n"),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_biquandle_tables("biquandle 2\nunder\n0 5\n1 1\nover\n0 0\n1 1\n"),
            Err(Error::MalformedTable(_))
        ));
    }
}
