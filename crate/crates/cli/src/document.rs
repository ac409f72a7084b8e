//! The line-oriented structure file format.
//!
//! A file holds a sequence of documents, each starting with a header
//! line `kind name size` and continuing with metadata lines and named
//! table blocks. Integers are whitespace separated, `#` starts a
//! comment. Referenced names must be defined earlier (possibly in an
//! earlier file of the same invocation).
//!
//! ```text
//! algebra C3 3
//! add:
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! neg:
//! 0 2 1
//!
//! hom inc 3
//! source C3
//! target S3
//! map:
//! 0 1 2
//! ```
//!
//! Algebras with extra operations carry `sig` lines before the tables:
//! `sig group-commutative` and one `sig op <name> <law>...` per
//! operation, laws among `left-distributive right-distributive
//! associative commutative`. Actions use blocks `dot:`, `left <op>:`
//! (actor x acted) and `right <op>:` (acted x actor); points use `total`,
//! `base`, `p:`, `s:`; cospans reference two homs with `f <name>` and
//! `g <name>`; congruences list pairs under `pairs:`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use cospan_core::algebra::{FiniteAlgebra, Homomorphism, OpLaws, Signature};
use cospan_core::actions::ActionDatum;
use cospan_core::congruence::Congruence;
use cospan_core::descent::Cospan;
use cospan_core::points::Point;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}: {}", self.file, self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
struct Tok {
    text: String,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    for (lno, line) in text.lines().enumerate() {
        let body = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut col = 0;
        for piece in body.split_whitespace() {
            col = body[col..].find(piece).map(|i| i + col).unwrap_or(col);
            toks.push(Tok { text: piece.to_string(), line: lno + 1, col: col + 1 });
            col += piece.len();
        }
    }
    toks
}

/// A raw point document: validated only for shape at parse time.
#[derive(Debug, Clone)]
pub struct PointDoc {
    pub p: Homomorphism,
    pub s: Homomorphism,
}

impl PointDoc {
    pub fn to_point(&self) -> Result<Point, cospan_core::StructureError> {
        let point = Point::new(self.p.clone(), self.s.clone())?;
        point.check()?;
        Ok(point)
    }
}

#[derive(Debug, Clone)]
pub struct CospanDoc {
    pub f: Homomorphism,
    pub g: Homomorphism,
}

impl CospanDoc {
    pub fn to_cospan(&self) -> Result<Cospan, cospan_core::StructureError> {
        // the pullback tables are only well defined over genuine
        // homomorphisms
        for (leg, hom) in [("f", &self.f), ("g", &self.g)] {
            if let cospan_core::algebra::HomReport::Violation { equation, .. } =
                cospan_core::algebra::check_homomorphism(hom)
            {
                return Err(cospan_core::StructureError::Shape(format!(
                    "cospan leg {leg} is not a homomorphism ({equation})"
                )));
            }
        }
        Cospan::new(self.f.clone(), self.g.clone())
    }
}

#[derive(Debug, Clone)]
pub struct CongruenceDoc {
    pub base: Arc<FiniteAlgebra>,
    pub pairs: std::collections::BTreeSet<(usize, usize)>,
}

impl CongruenceDoc {
    pub fn to_congruence(&self) -> Result<Congruence, cospan_core::StructureError> {
        Congruence::new(self.base.clone(), self.pairs.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocKind {
    Algebra,
    Hom,
    Action,
    Point,
    Cospan,
    Congruence,
}

impl std::fmt::Display for DocKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DocKind::Algebra => "algebra",
            DocKind::Hom => "hom",
            DocKind::Action => "action",
            DocKind::Point => "point",
            DocKind::Cospan => "cospan",
            DocKind::Congruence => "congruence",
        };
        write!(f, "{s}")
    }
}

/// All documents of one invocation, with names resolved.
#[derive(Debug, Clone, Default)]
pub struct DocumentSet {
    pub algebras: BTreeMap<String, Arc<FiniteAlgebra>>,
    pub homs: BTreeMap<String, Homomorphism>,
    pub actions: BTreeMap<String, ActionDatum>,
    pub points: BTreeMap<String, PointDoc>,
    pub cospans: BTreeMap<String, CospanDoc>,
    pub congruences: BTreeMap<String, CongruenceDoc>,
    /// Documents in input order, for order-preserving reports.
    pub order: Vec<(DocKind, String)>,
}

struct Parser<'a> {
    file: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err_at(&self, pos: usize, message: String) -> ParseError {
        let (line, col) = if pos < self.toks.len() {
            (self.toks[pos].line, self.toks[pos].col)
        } else {
            self.toks.last().map(|t| (t.line, t.col + t.text.len())).unwrap_or((1, 1))
        };
        ParseError { file: self.file.to_string(), line, col, message }
    }

    fn err(&self, message: String) -> ParseError {
        self.err_at(self.pos, message)
    }

    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|t| t.text.as_str())
    }

    fn next(&mut self, what: &str) -> Result<String, ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.text.clone())
            }
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn expect(&mut self, word: &str) -> Result<(), ParseError> {
        let got = self.next(&format!("`{word}`"))?;
        if got != word {
            self.pos -= 1;
            return Err(self.err(format!("expected `{word}`, found `{got}`")));
        }
        Ok(())
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let got = self.next(what)?;
        got.parse().map_err(|_| {
            self.pos -= 1;
            self.err(format!("expected {what}, found `{got}`"))
        })
    }

    fn numbers(&mut self, count: usize, what: &str) -> Result<Vec<usize>, ParseError> {
        (0..count).map(|_| self.number(what)).collect()
    }

    fn table(&mut self, rows: usize, cols: usize, what: &str) -> Result<Vec<Vec<usize>>, ParseError> {
        (0..rows).map(|_| self.numbers(cols, what)).collect()
    }

    fn block(&mut self, name: &str) -> Result<(), ParseError> {
        self.expect(&format!("{name}:"))
    }

    /// A two-word block header like `op mul:`; returns the middle name.
    fn named_block(&mut self, keyword: &str) -> Result<String, ParseError> {
        self.expect(keyword)?;
        let got = self.next("operation name followed by `:`")?;
        match got.strip_suffix(':') {
            Some(name) if !name.is_empty() => Ok(name.to_string()),
            _ => {
                self.pos -= 1;
                Err(self.err(format!("expected `<name>:`, found `{got}`")))
            }
        }
    }
}

const LAW_WORDS: [&str; 4] =
    ["left-distributive", "right-distributive", "associative", "commutative"];

impl DocumentSet {
    pub fn parse_into(&mut self, text: &str, file: &str) -> Result<(), ParseError> {
        let mut p = Parser { file, toks: tokenize(text), pos: 0 };
        while p.peek().is_some() {
            let kind = p.next("document kind")?;
            match kind.as_str() {
                "algebra" => self.parse_algebra(&mut p)?,
                "hom" => self.parse_hom(&mut p)?,
                "action" => self.parse_action(&mut p)?,
                "point" => self.parse_point(&mut p)?,
                "cospan" => self.parse_cospan(&mut p)?,
                "congruence" => self.parse_congruence(&mut p)?,
                other => {
                    p.pos -= 1;
                    return Err(p.err(format!("unknown document kind `{other}`")));
                }
            }
        }
        Ok(())
    }

    fn lookup_algebra(&self, p: &Parser, name: &str) -> Result<Arc<FiniteAlgebra>, ParseError> {
        self.algebras.get(name).cloned().ok_or_else(|| {
            let mut e = p.err(format!("algebra `{name}` is not defined yet"));
            e.col = e.col.saturating_sub(name.len());
            e
        })
    }

    fn parse_algebra(&mut self, p: &mut Parser) -> Result<(), ParseError> {
        let name = p.next("algebra name")?;
        let size = p.number("algebra size")?;
        if size == 0 {
            return Err(p.err("algebra size must be positive".into()));
        }
        let mut signature = Signature::group();
        while p.peek() == Some("sig") {
            p.expect("sig")?;
            match p.next("signature item")?.as_str() {
                "group-commutative" => signature.group_commutative = true,
                "op" => {
                    let op_name = p.next("operation name")?;
                    let mut laws = OpLaws::new(&op_name);
                    while let Some(word) = p.peek() {
                        if !LAW_WORDS.contains(&word) {
                            break;
                        }
                        match p.next("law")?.as_str() {
                            "left-distributive" => laws.left_distributive = true,
                            "right-distributive" => laws.right_distributive = true,
                            "associative" => laws.associative = true,
                            "commutative" => laws.commutative = true,
                            _ => unreachable!(),
                        }
                    }
                    signature.extra_ops.push(laws);
                }
                other => {
                    p.pos -= 1;
                    return Err(p.err(format!("unknown signature item `{other}`")));
                }
            }
        }
        p.block("add")?;
        let add = p.table(size, size, "table entry")?;
        p.block("neg")?;
        let neg = p.numbers(size, "table entry")?;
        let mut op_tables = Vec::new();
        for op in &signature.extra_ops {
            let got = p.named_block("op")?;
            if got != op.name {
                return Err(p.err(format!("expected table for `{}`, found `{got}`", op.name)));
            }
            op_tables.push(p.table(size, size, "table entry")?);
        }
        let alg = FiniteAlgebra::new(&name, signature, add, neg, op_tables)
            .map_err(|e| p.err(format!("algebra `{name}`: {e}")))?;
        self.order.push((DocKind::Algebra, name.clone()));
        self.algebras.insert(name, Arc::new(alg));
        Ok(())
    }

    fn parse_hom(&mut self, p: &mut Parser) -> Result<(), ParseError> {
        let name = p.next("hom name")?;
        let size = p.number("map length")?;
        p.expect("source")?;
        let source = p.next("algebra name")?;
        let source = self.lookup_algebra(p, &source)?;
        p.expect("target")?;
        let target = p.next("algebra name")?;
        let target = self.lookup_algebra(p, &target)?;
        if size != source.size {
            return Err(p.err(format!(
                "hom `{name}` declares {size} entries but source has {}",
                source.size
            )));
        }
        p.block("map")?;
        let map = p.numbers(size, "map entry")?;
        let hom = Homomorphism::new(source, target, map)
            .map_err(|e| p.err(format!("hom `{name}`: {e}")))?;
        self.order.push((DocKind::Hom, name.clone()));
        self.homs.insert(name, hom);
        Ok(())
    }

    fn parse_action(&mut self, p: &mut Parser) -> Result<(), ParseError> {
        let name = p.next("action name")?;
        let size = p.number("actor size")?;
        p.expect("actor")?;
        let actor = p.next("algebra name")?;
        let actor = self.lookup_algebra(p, &actor)?;
        p.expect("acted")?;
        let acted = p.next("algebra name")?;
        let acted = self.lookup_algebra(p, &acted)?;
        if size != actor.size {
            return Err(p.err(format!(
                "action `{name}` declares actor size {size} but actor has {}",
                actor.size
            )));
        }
        p.block("dot")?;
        let dot = p.table(actor.size, acted.size, "table entry")?;
        let mut star_left = Vec::new();
        let mut star_right = Vec::new();
        for op in &actor.signature.extra_ops {
            let got = p.named_block("left")?;
            if got != op.name {
                return Err(p.err(format!("expected `left {}:`, found `left {got}:`", op.name)));
            }
            star_left.push(p.table(actor.size, acted.size, "table entry")?);
            let got = p.named_block("right")?;
            if got != op.name {
                return Err(p.err(format!("expected `right {}:`, found `right {got}:`", op.name)));
            }
            star_right.push(p.table(acted.size, actor.size, "table entry")?);
        }
        let action = ActionDatum::new(actor, acted, dot, star_left, star_right)
            .map_err(|e| p.err(format!("action `{name}`: {e}")))?;
        self.order.push((DocKind::Action, name.clone()));
        self.actions.insert(name, action);
        Ok(())
    }

    fn parse_point(&mut self, p: &mut Parser) -> Result<(), ParseError> {
        let name = p.next("point name")?;
        let size = p.number("total size")?;
        p.expect("total")?;
        let total = p.next("algebra name")?;
        let total = self.lookup_algebra(p, &total)?;
        p.expect("base")?;
        let base = p.next("algebra name")?;
        let base = self.lookup_algebra(p, &base)?;
        if size != total.size {
            return Err(p.err(format!(
                "point `{name}` declares total size {size} but total has {}",
                total.size
            )));
        }
        p.block("p")?;
        let p_map = p.numbers(total.size, "map entry")?;
        p.block("s")?;
        let s_map = p.numbers(base.size, "map entry")?;
        let pm = Homomorphism::new(total.clone(), base.clone(), p_map)
            .map_err(|e| p.err(format!("point `{name}`: {e}")))?;
        let sm = Homomorphism::new(base, total, s_map)
            .map_err(|e| p.err(format!("point `{name}`: {e}")))?;
        self.order.push((DocKind::Point, name.clone()));
        self.points.insert(name, PointDoc { p: pm, s: sm });
        Ok(())
    }

    fn parse_cospan(&mut self, p: &mut Parser) -> Result<(), ParseError> {
        let name = p.next("cospan name")?;
        let legs = p.number("leg count")?;
        if legs != 2 {
            return Err(p.err("a cospan has exactly 2 legs".into()));
        }
        p.expect("f")?;
        let f = p.next("hom name")?;
        let f = self
            .homs
            .get(&f)
            .cloned()
            .ok_or_else(|| p.err(format!("hom `{f}` is not defined yet")))?;
        p.expect("g")?;
        let g = p.next("hom name")?;
        let g = self
            .homs
            .get(&g)
            .cloned()
            .ok_or_else(|| p.err(format!("hom `{g}` is not defined yet")))?;
        self.order.push((DocKind::Cospan, name.clone()));
        self.cospans.insert(name, CospanDoc { f, g });
        Ok(())
    }

    fn parse_congruence(&mut self, p: &mut Parser) -> Result<(), ParseError> {
        let name = p.next("congruence name")?;
        let npairs = p.number("pair count")?;
        p.expect("base")?;
        let base = p.next("algebra name")?;
        let base = self.lookup_algebra(p, &base)?;
        p.block("pairs")?;
        let mut pairs = std::collections::BTreeSet::new();
        for _ in 0..npairs {
            let a = p.number("pair entry")?;
            let b = p.number("pair entry")?;
            if a >= base.size || b >= base.size {
                return Err(p.err(format!("pair ({a},{b}) out of range for `{name}`")));
            }
            pairs.insert((a, b));
        }
        self.order.push((DocKind::Congruence, name.clone()));
        self.congruences.insert(name, CongruenceDoc { base, pairs });
        Ok(())
    }
}

fn emit_matrix(out: &mut String, table: &[Vec<usize>]) {
    for row in table {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
}

fn emit_row(out: &mut String, row: &[usize]) {
    let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "{}", line.join(" "));
}

pub fn emit_algebra(name: &str, alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {name} {}", alg.size);
    if alg.signature.group_commutative {
        let _ = writeln!(out, "sig group-commutative");
    }
    for op in &alg.signature.extra_ops {
        let mut line = format!("sig op {}", op.name);
        for (flag, word) in [
            (op.left_distributive, "left-distributive"),
            (op.right_distributive, "right-distributive"),
            (op.associative, "associative"),
            (op.commutative, "commutative"),
        ] {
            if flag {
                line.push(' ');
                line.push_str(word);
            }
        }
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "add:");
    emit_matrix(&mut out, &alg.add);
    let _ = writeln!(out, "neg:");
    emit_row(&mut out, &alg.neg);
    for (k, op) in alg.signature.extra_ops.iter().enumerate() {
        let _ = writeln!(out, "op {}:", op.name);
        emit_matrix(&mut out, &alg.op_tables[k]);
    }
    out
}

pub fn emit_hom(name: &str, hom: &Homomorphism, source: &str, target: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hom {name} {}", hom.map.len());
    let _ = writeln!(out, "source {source}");
    let _ = writeln!(out, "target {target}");
    let _ = writeln!(out, "map:");
    emit_row(&mut out, &hom.map);
    out
}

pub fn emit_action(name: &str, xi: &ActionDatum, actor: &str, acted: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "action {name} {}", xi.actor().size);
    let _ = writeln!(out, "actor {actor}");
    let _ = writeln!(out, "acted {acted}");
    let _ = writeln!(out, "dot:");
    emit_matrix(&mut out, &xi.dot);
    for (k, op) in xi.actor().signature.extra_ops.iter().enumerate() {
        let _ = writeln!(out, "left {}:", op.name);
        emit_matrix(&mut out, &xi.star_left[k]);
        let _ = writeln!(out, "right {}:", op.name);
        emit_matrix(&mut out, &xi.star_right[k]);
    }
    out
}

pub fn emit_point(name: &str, doc: &PointDoc, total: &str, base: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "point {name} {}", doc.p.source().size);
    let _ = writeln!(out, "total {total}");
    let _ = writeln!(out, "base {base}");
    let _ = writeln!(out, "p:");
    emit_row(&mut out, &doc.p.map);
    let _ = writeln!(out, "s:");
    emit_row(&mut out, &doc.s.map);
    out
}

pub fn emit_cospan(name: &str, f: &str, g: &str) -> String {
    format!("cospan {name} 2\nf {f}\ng {g}\n")
}

pub fn emit_congruence(name: &str, doc: &CongruenceDoc, base: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "congruence {name} {}", doc.pairs.len());
    let _ = writeln!(out, "base {base}");
    let _ = writeln!(out, "pairs:");
    for &(a, b) in &doc.pairs {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cospan_core::catalog;

    #[test]
    fn algebra_roundtrip_is_lossless() {
        let s3 = catalog::symmetric3();
        let text = emit_algebra("S3", &s3);
        let mut set = DocumentSet::default();
        set.parse_into(&text, "mem").unwrap();
        let parsed = set.algebras.get("S3").unwrap();
        assert_eq!(emit_algebra("S3", parsed), text);
        assert_eq!(parsed.add, s3.add);
        assert_eq!(parsed.neg, s3.neg);
    }

    #[test]
    fn hom_and_cospan_roundtrip() {
        let mut text = emit_algebra("C3", &catalog::cyclic(3));
        text.push_str(&emit_algebra("S3", &catalog::symmetric3()));
        text.push_str(&emit_algebra("C2", &catalog::cyclic(2)));
        text.push_str("hom f 3\nsource C3\ntarget S3\nmap:\n0 1 2\n");
        text.push_str("hom g 2\nsource C2\ntarget S3\nmap:\n0 3\n");
        text.push_str(&emit_cospan("cs", "f", "g"));
        let mut set = DocumentSet::default();
        set.parse_into(&text, "mem").unwrap();
        let cs = set.cospans.get("cs").unwrap().to_cospan().unwrap();
        assert!(cospan_core::descent::is_extremal_epi(&cs));
        let f = set.homs.get("f").unwrap();
        assert_eq!(emit_hom("f", f, "C3", "S3"), "hom f 3\nsource C3\ntarget S3\nmap:\n0 1 2\n");
    }

    #[test]
    fn parse_errors_carry_position() {
        let mut set = DocumentSet::default();
        let err = set.parse_into("algebra X 2\nadd:\n0 1\n1 oops\n", "bad.alg").unwrap_err();
        assert_eq!(err.file, "bad.alg");
        assert_eq!(err.line, 4);
        assert_eq!(err.col, 3);

        let err2 =
            DocumentSet::default().parse_into("hom h 2\nsource missing\n", "bad2").unwrap_err();
        assert!(err2.message.contains("not defined"));
    }

    #[test]
    fn comments_and_spacing_are_ignored() {
        let text = "# a comment\nalgebra C2 2\n\nadd:\n0 1   # trailing\n1 0\nneg:\n0 1\n";
        let mut set = DocumentSet::default();
        set.parse_into(text, "mem").unwrap();
        assert_eq!(set.algebras.get("C2").unwrap().size, 2);
    }

    #[test]
    fn action_blocks_follow_signature_order() {
        let z2 = catalog::cyclic(2);
        let mut ring = z2.clone();
        ring.signature = Signature::ring("mul");
        ring.op_tables = vec![vec![vec![0, 0], vec![0, 1]]];
        ring.name = "Z2".into();
        let mut text = emit_algebra("Z2", &ring);
        text.push_str(
            "action a 2\nactor Z2\nacted Z2\ndot:\n0 1\n0 1\nleft mul:\n0 0\n0 0\nright mul:\n0 0\n0 0\n",
        );
        let mut set = DocumentSet::default();
        set.parse_into(&text, "mem").unwrap();
        let xi = set.actions.get("a").unwrap();
        assert_eq!(emit_action("a", xi, "Z2", "Z2").lines().count(), 12);
    }
}
