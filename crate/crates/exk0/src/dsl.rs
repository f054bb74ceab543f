//! The line-oriented text format for category presentations, with a parser
//! that reports located diagnostics and a canonical printer.
//!
//! Grammar (UTF-8, `#` starts a comment running to end of line):
//!
//! ```text
//! file        := header stmt*
//! header      := 'category' STRING NEWLINE 'n' '=' POSINT
//! stmt        := 'indecomposables' ':' IDENT (',' IDENT)*
//!              | 'conflation' ':' objexpr ('|' objexpr) x (n+1)
//!              | ('generator'|'cogenerator') ':' ('0' | IDENT (',' IDENT)*)
//!              | 'witness' IDENT ':' objexpr ('|' objexpr) x (n+1)
//! objexpr     := '0' | term ('+' term)*
//! term        := (POSINT '*')? IDENT
//! IDENT       := letter (letter|digit|'_')*
//! ```
//!
//! Duplicate indecomposables, wrong conflation arity and references to
//! undeclared identifiers are parse-time errors with locations.

use std::collections::BTreeMap;
use std::fmt;

use exk0_core::catmodel::{
    CategoryPresentation, Conflation, GeneratorMode, IndecId, ObjectExpr, Severity, Site,
};

/// A located parser or validation message. `line` and `column` are
/// 1-based; semantic diagnostics point at the start of the offending
/// statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IoDiagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for IoDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {sev}[{}]: {}",
            self.line, self.column, self.code, self.message
        )
    }
}

/// A parsed file: the presentation plus any non-fatal warnings.
#[derive(Clone, Debug)]
pub struct SourceDocument {
    pub presentation: CategoryPresentation,
    pub warnings: Vec<IoDiagnostic>,
}

/// Parses a presentation file. `Err` carries at least one
/// `Severity::Error` diagnostic; recoverable statement-level errors are
/// collected so one pass reports as much as possible.
pub fn parse(text: &str) -> Result<SourceDocument, Vec<IoDiagnostic>> {
    Parser::new(text).run()
}

/// Canonical text form: header, indecomposables in declared order,
/// conflations in declared order, the generator statement, then witnesses
/// in sorted order. `parse(print(p))` is structurally equal to `p`.
pub fn print(pres: &CategoryPresentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("category \"{}\"\n", pres.name));
    out.push_str(&format!("n = {}\n", pres.n));
    if !pres.indecs.is_empty() {
        let ids: Vec<String> = pres.indecs.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("indecomposables: {}\n", ids.join(", ")));
    }
    for c in &pres.conflations {
        out.push_str(&format!("conflation: {}\n", print_conflation(c)));
    }
    let keyword = match pres.generator_mode {
        GeneratorMode::Generator => "generator",
        GeneratorMode::Cogenerator => "cogenerator",
    };
    let gens = if pres.generator.is_empty() {
        "0".to_string()
    } else {
        let ids: Vec<String> = pres.generator.iter().map(|i| i.to_string()).collect();
        ids.join(", ")
    };
    out.push_str(&format!("{keyword}: {gens}\n"));
    for (id, w) in &pres.witnesses {
        out.push_str(&format!("witness {id}: {}\n", print_conflation(w)));
    }
    out
}

/// Prints an object in the term syntax of the grammar: `0`, `S`, `2*S + P`.
pub fn print_object(obj: &ObjectExpr) -> String {
    if obj.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = obj
        .iter()
        .map(|(id, m)| if m == 1 { id.to_string() } else { format!("{m}*{id}") })
        .collect();
    terms.join(" + ")
}

fn print_conflation(c: &Conflation) -> String {
    let terms: Vec<String> = c.terms().iter().map(print_object).collect();
    terms.join(" | ")
}

/// Parses a standalone object expression, as used by `--object` on the
/// command line. Errors are unlocated (single-expression context).
pub fn parse_object(text: &str) -> Result<ObjectExpr, String> {
    let mut scan = Scan::new(text, 0);
    scan.skip_ws();
    let obj = scan.objexpr().map_err(|d| d.message)?;
    scan.skip_ws();
    if !scan.at_end() {
        return Err(format!("unexpected trailing input at column {}", scan.col()));
    }
    Ok(obj)
}

struct Parser<'a> {
    text: &'a str,
    diags: Vec<IoDiagnostic>,
}

#[derive(Default)]
struct Statements {
    name: Option<String>,
    n: Option<usize>,
    indecs: Vec<IndecId>,
    indecs_line: Option<usize>,
    conflations: Vec<(usize, Conflation)>,
    generator: Option<(usize, GeneratorMode, Vec<IndecId>)>,
    witnesses: Vec<(usize, IndecId, Conflation)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, diags: Vec::new() }
    }

    fn error(&mut self, code: &str, message: String, line: usize, column: usize) {
        self.diags.push(IoDiagnostic {
            severity: Severity::Error,
            code: code.to_string(),
            message,
            line,
            column,
        });
    }

    fn run(mut self) -> Result<SourceDocument, Vec<IoDiagnostic>> {
        let mut stmts = Statements::default();
        let mut lines: Vec<(usize, &str)> = Vec::new();
        for (i, raw) in self.text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            if !content.trim().is_empty() {
                lines.push((i + 1, content));
            }
        }

        let mut iter = lines.into_iter();

        // header line 1: category STRING
        match iter.next() {
            Some((no, line)) => {
                if let Err(d) = header_category(line, no, &mut stmts) {
                    self.diags.push(d);
                }
            }
            None => {
                self.error("Syntax", "empty file: expected 'category \"NAME\"'".into(), 1, 1);
                return Err(self.diags);
            }
        }

        // header line 2: n = POSINT
        match iter.next() {
            Some((no, line)) => {
                if let Err(d) = header_n(line, no, &mut stmts) {
                    self.diags.push(d);
                }
            }
            None => {
                self.error("Syntax", "missing 'n = POSINT' header line".into(), 2, 1);
                return Err(self.diags);
            }
        }

        for (no, line) in iter {
            if let Err(d) = statement(line, no, &mut stmts) {
                self.diags.push(d);
            }
        }

        if self.diags.iter().any(|d| d.severity == Severity::Error) {
            return Err(self.diags);
        }

        let pres = CategoryPresentation {
            name: stmts.name.expect("header parsed"),
            n: stmts.n.expect("header parsed"),
            indecs: stmts.indecs,
            conflations: stmts.conflations.iter().map(|(_, c)| c.clone()).collect(),
            generator: match &stmts.generator {
                Some((_, _, ids)) => ids.iter().cloned().collect(),
                None => Default::default(),
            },
            generator_mode: match &stmts.generator {
                Some((_, mode, _)) => *mode,
                None => GeneratorMode::Generator,
            },
            witnesses: stmts
                .witnesses
                .iter()
                .map(|(_, id, w)| (id.clone(), w.clone()))
                .collect(),
        };

        // duplicate witness statements collapse in the map; flag them
        let mut seen: BTreeMap<&IndecId, usize> = BTreeMap::new();
        for (no, id, _) in &stmts.witnesses {
            if let Some(first) = seen.insert(id, *no) {
                self.error(
                    "Syntax",
                    format!("witness for '{id}' already declared on line {first}"),
                    *no,
                    1,
                );
            }
        }

        // semantic validation, located at the owning statement
        for diag in pres.validate() {
            let code = diag.code.as_str();
            let line = match &diag.site {
                // label problems live on the declaration statement
                Site::Header if code == "DuplicateIndec" || code == "InvalidLabel" => {
                    stmts.indecs_line.unwrap_or(1)
                }
                Site::Header => 1,
                Site::Conflation(i) => stmts.conflations.get(*i).map(|(no, _)| *no).unwrap_or(1),
                Site::Generator => stmts.generator.as_ref().map(|(no, _, _)| *no).unwrap_or(1),
                Site::Witness(id) => stmts
                    .witnesses
                    .iter()
                    .find(|(_, wid, _)| wid == id)
                    .map(|(no, _, _)| *no)
                    .unwrap_or(1),
            };
            self.diags.push(IoDiagnostic {
                severity: diag.severity,
                code: diag.code.as_str().to_string(),
                message: diag.message,
                line,
                column: 1,
            });
        }

        if self.diags.iter().any(|d| d.severity == Severity::Error) {
            return Err(self.diags);
        }
        Ok(SourceDocument { presentation: pres, warnings: self.diags })
    }
}

fn header_category(line: &str, no: usize, stmts: &mut Statements) -> Result<(), IoDiagnostic> {
    let mut scan = Scan::new(line, no);
    scan.skip_ws();
    scan.keyword("category")?;
    scan.skip_ws();
    let name = scan.quoted_string()?;
    scan.end_of_statement()?;
    stmts.name = Some(name);
    Ok(())
}

fn header_n(line: &str, no: usize, stmts: &mut Statements) -> Result<(), IoDiagnostic> {
    let mut scan = Scan::new(line, no);
    scan.skip_ws();
    scan.keyword("n")?;
    scan.skip_ws();
    scan.expect('=')?;
    scan.skip_ws();
    let n = scan.posint()?;
    scan.end_of_statement()?;
    stmts.n = Some(n as usize);
    Ok(())
}

fn statement(line: &str, no: usize, stmts: &mut Statements) -> Result<(), IoDiagnostic> {
    let mut scan = Scan::new(line, no);
    scan.skip_ws();
    let word = scan.ident_raw()?;
    match word.as_str() {
        "indecomposables" => {
            scan.skip_ws();
            scan.expect(':')?;
            stmts.indecs.extend(scan.ident_list()?);
            stmts.indecs_line.get_or_insert(no);
            scan.end_of_statement()
        }
        "conflation" => {
            scan.skip_ws();
            scan.expect(':')?;
            let terms = scan.objexpr_list()?;
            stmts.conflations.push((no, Conflation::new(terms)));
            scan.end_of_statement()
        }
        "generator" | "cogenerator" => {
            let mode = if word == "generator" {
                GeneratorMode::Generator
            } else {
                GeneratorMode::Cogenerator
            };
            scan.skip_ws();
            scan.expect(':')?;
            scan.skip_ws();
            let ids = if scan.peek() == Some('0') {
                scan.advance();
                Vec::new()
            } else {
                scan.ident_list()?
            };
            if let Some((first, _, _)) = stmts.generator {
                return Err(scan.fail(format!(
                    "generator subcategory already declared on line {first}"
                )));
            }
            stmts.generator = Some((no, mode, ids));
            scan.end_of_statement()
        }
        "witness" => {
            scan.skip_ws();
            let id = scan.ident()?;
            scan.skip_ws();
            scan.expect(':')?;
            let terms = scan.objexpr_list()?;
            stmts.witnesses.push((no, id, Conflation::new(terms)));
            scan.end_of_statement()
        }
        other => Err(scan.fail(format!(
            "unknown statement '{other}'; expected indecomposables, conflation, \
             generator, cogenerator or witness"
        ))),
    }
}

/// Character-level scanner over one line. Columns are 1-based.
struct Scan<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _text: std::marker::PhantomData<&'a str>,
}

impl<'a> Scan<'a> {
    fn new(line: &'a str, line_no: usize) -> Self {
        Scan {
            chars: line.chars().collect(),
            pos: 0,
            line: line_no,
            _text: std::marker::PhantomData,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.advance();
        }
    }

    fn fail(&self, message: String) -> IoDiagnostic {
        IoDiagnostic {
            severity: Severity::Error,
            code: "Syntax".to_string(),
            message,
            line: self.line,
            column: self.col(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), IoDiagnostic> {
        if self.peek() == Some(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.fail(format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), IoDiagnostic> {
        let got = self.ident_raw()?;
        if got == word {
            Ok(())
        } else {
            Err(self.fail(format!("expected '{word}', found '{got}'")))
        }
    }

    fn ident_raw(&mut self) -> Result<String, IoDiagnostic> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.advance(),
            _ => return Err(self.fail("expected an identifier".to_string())),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.advance();
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn ident(&mut self) -> Result<IndecId, IoDiagnostic> {
        Ok(IndecId::from(self.ident_raw()?.as_str()))
    }

    fn ident_list(&mut self) -> Result<Vec<IndecId>, IoDiagnostic> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            out.push(self.ident()?);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.advance();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn posint(&mut self) -> Result<u64, IoDiagnostic> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.advance();
        }
        if start == self.pos {
            return Err(self.fail("expected a positive integer".to_string()));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let value: u64 = digits
            .parse()
            .map_err(|_| self.fail(format!("integer '{digits}' is out of range")))?;
        if value == 0 {
            return Err(self.fail("expected a positive integer, found 0".to_string()));
        }
        Ok(value)
    }

    fn quoted_string(&mut self) -> Result<String, IoDiagnostic> {
        self.expect('"')?;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c != '"') {
            self.advance();
        }
        if self.at_end() {
            return Err(self.fail("unterminated string".to_string()));
        }
        let value: String = self.chars[start..self.pos].iter().collect();
        self.advance(); // closing quote
        Ok(value)
    }

    fn objexpr(&mut self) -> Result<ObjectExpr, IoDiagnostic> {
        self.skip_ws();
        if self.peek() == Some('0') {
            self.advance();
            return Ok(ObjectExpr::zero());
        }
        let mut obj = ObjectExpr::zero();
        loop {
            self.skip_ws();
            let mult = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let m = self.posint()?;
                self.skip_ws();
                self.expect('*')?;
                self.skip_ws();
                m
            } else {
                1
            };
            let id = self.ident()?;
            obj.add_multiple(&id, mult);
            self.skip_ws();
            if self.peek() == Some('+') {
                self.advance();
            } else {
                break;
            }
        }
        Ok(obj)
    }

    fn objexpr_list(&mut self) -> Result<Vec<ObjectExpr>, IoDiagnostic> {
        let mut out = Vec::new();
        loop {
            out.push(self.objexpr()?);
            self.skip_ws();
            if self.peek() == Some('|') {
                self.advance();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn end_of_statement(&mut self) -> Result<(), IoDiagnostic> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.fail("unexpected trailing input".to_string()))
        }
    }
}
