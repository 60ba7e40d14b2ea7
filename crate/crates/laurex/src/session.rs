//! Text format for ring and module declarations.
//!
//! ```text
//! ring Q = poly(field: QQ; vars: x:1, y:1, u:1, v:1)
//! ring R = quotient(Q; x*v - y*u)
//! module M = coker(R; rowdeg: [0]; coldeg: [1,1]; matrix: [[u, v]])
//! ```
//!
//! Statements are newline-terminated but may span lines while parentheses
//! or brackets are open; `#` starts a comment. Parse errors carry line and
//! column numbers.

use std::collections::BTreeMap;
use std::fmt;

use laurex_core::polyring::{
    Field, GradedMatrix, ModulePresentation, Monomial, MultiPoly, PolyError, RingPresentation,
    WeightedRingSpec,
};
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SessionError {}

/// Coefficient field selector of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "QQ"),
            FieldChoice::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// One parsed polynomial: raw expression tree flattened to monomial terms
/// with rational coefficients in the variables of some ring. The source
/// position is diagnostic metadata and does not participate in equality.
#[derive(Clone, Debug)]
pub struct PolyAst {
    pub terms: Vec<(Vec<u32>, BigRational)>,
    pub line: usize,
    pub column: usize,
}

impl PartialEq for PolyAst {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for PolyAst {}

#[derive(Clone, Debug, PartialEq)]
pub enum RingDecl {
    Poly {
        field: FieldChoice,
        vars: Vec<(String, u32)>,
    },
    Quotient {
        base: String,
        relations: Vec<PolyAst>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDecl {
    pub ring: String,
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
    pub matrix: Vec<Vec<PolyAst>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Ring { name: String, decl: RingDecl },
    Module { name: String, decl: ModuleDecl },
}

/// A fully parsed and name-resolved session, still independent of the
/// coefficient field instantiation.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ParsedSession {
    pub statements: Vec<Statement>,
}

impl ParsedSession {
    pub fn field(&self) -> FieldChoice {
        for s in &self.statements {
            if let Statement::Ring {
                decl: RingDecl::Poly { field, .. },
                ..
            } = s
            {
                return *field;
            }
        }
        FieldChoice::Rationals
    }

    /// Renders the session back into declaration text.
    pub fn render(&self) -> String {
        let mut specs: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        let mut out = String::new();
        for s in &self.statements {
            match s {
                Statement::Ring { name, decl } => match decl {
                    RingDecl::Poly { field, vars } => {
                        let names: Vec<String> = vars.iter().map(|(n, _)| n.clone()).collect();
                        specs.insert(name, names);
                        let vars_s: Vec<String> =
                            vars.iter().map(|(n, w)| format!("{n}:{w}")).collect();
                        out.push_str(&format!(
                            "ring {name} = poly(field: {field}; vars: {})\n",
                            vars_s.join(", ")
                        ));
                    }
                    RingDecl::Quotient { base, relations } => {
                        let names = specs.get(base.as_str()).cloned().unwrap_or_default();
                        specs.insert(name, names.clone());
                        let rels: Vec<String> =
                            relations.iter().map(|r| render_poly(r, &names)).collect();
                        out.push_str(&format!(
                            "ring {name} = quotient({base}; {})\n",
                            rels.join(", ")
                        ));
                    }
                },
                Statement::Module { name, decl } => {
                    let names = specs.get(decl.ring.as_str()).cloned().unwrap_or_default();
                    let rows: Vec<String> = decl
                        .matrix
                        .iter()
                        .map(|row| {
                            let entries: Vec<String> =
                                row.iter().map(|e| render_poly(e, &names)).collect();
                            format!("[{}]", entries.join(", "))
                        })
                        .collect();
                    out.push_str(&format!(
                        "module {name} = coker({}; rowdeg: {:?}; coldeg: {:?}; matrix: [{}])\n",
                        decl.ring,
                        decl.row_degrees,
                        decl.col_degrees,
                        rows.join(", ")
                    ));
                }
            }
        }
        out
    }
}

fn render_poly(p: &PolyAst, names: &[String]) -> String {
    use num_traits::{One, Signed};
    if p.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (exps, coeff)) in p.terms.iter().enumerate() {
        let neg = coeff.is_negative();
        let abs = if neg { -coeff.clone() } else { coeff.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let base = names
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| format!("?{v}"));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if mono.is_empty() {
            out.push_str(&format!("{abs}"));
        } else if <BigRational as One>::is_one(&abs) {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{abs}*{}", mono.join("*")));
        }
    }
    out
}

/// An instantiated session over a concrete field: named rings and modules.
#[derive(Clone, Debug)]
pub struct Session<F: Field> {
    pub rings: BTreeMap<String, RingPresentation<F>>,
    pub modules: BTreeMap<String, ModulePresentation<F>>,
}

impl<F: Field> Session<F> {
    /// Resolves a name: modules take precedence, a ring name denotes the
    /// ring viewed as a module over itself.
    pub fn module(&self, name: &str) -> Option<ModulePresentation<F>> {
        if let Some(m) = self.modules.get(name) {
            return Some(m.clone());
        }
        self.rings
            .get(name)
            .map(|r| ModulePresentation::ring_module(r.clone()))
    }

    pub fn ring(&self, name: &str) -> Option<&RingPresentation<F>> {
        self.rings.get(name)
    }
}

struct Tokenizer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(u8),
    Eof,
}

#[derive(Clone, Debug)]
struct Located {
    tok: Tok,
    line: usize,
    column: usize,
}

impl<'a> Tokenizer<'a> {
    fn new(src: &'a str) -> Self {
        Tokenizer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek_byte(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Located {
        loop {
            match self.peek_byte() {
                Some(c) if c == b' ' || c == b'\t' || c == b'\r' || c == b'\n' => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.peek_byte() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.peek_byte() else {
            return Located {
                tok: Tok::Eof,
                line,
                column,
            };
        };
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut s = String::new();
            while let Some(c) = self.peek_byte() {
                if c.is_ascii_alphanumeric() || c == b'_' {
                    s.push(c as char);
                    self.bump();
                } else {
                    break;
                }
            }
            return Located {
                tok: Tok::Ident(s),
                line,
                column,
            };
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(c) = self.peek_byte() {
                if c.is_ascii_digit() {
                    s.push(c as char);
                    self.bump();
                } else {
                    break;
                }
            }
            return Located {
                tok: Tok::Int(s),
                line,
                column,
            };
        }
        self.bump();
        Located {
            tok: Tok::Punct(c),
            line,
            column,
        }
    }
}

struct Parser<'a> {
    tokens: Vec<Located>,
    idx: usize,
    vars_in_scope: &'a BTreeMap<String, Vec<String>>,
}

impl<'a> Parser<'a> {
    fn current(&self) -> &Located {
        &self.tokens[self.idx.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Located {
        let t = self.current().clone();
        if self.idx < self.tokens.len() - 1 {
            self.idx += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> SessionError {
        let t = self.current();
        SessionError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect_punct(&mut self, c: u8) -> Result<(), SessionError> {
        match &self.current().tok {
            Tok::Punct(p) if *p == c => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error(format!("expected '{}'", c as char))),
        }
    }

    fn eat_punct(&mut self, c: u8) -> bool {
        if matches!(&self.current().tok, Tok::Punct(p) if *p == c) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self) -> Result<String, SessionError> {
        match &self.current().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), SessionError> {
        match &self.current().tok {
            Tok::Ident(s) if s == kw => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error(format!("expected '{kw}'"))),
        }
    }

    fn expect_uint(&mut self) -> Result<u64, SessionError> {
        match &self.current().tok {
            Tok::Int(s) => {
                let v = s
                    .parse::<u64>()
                    .map_err(|_| self.error("integer out of range"))?;
                self.advance();
                Ok(v)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn expect_int(&mut self) -> Result<i64, SessionError> {
        let neg = self.eat_punct(b'-');
        let v = self.expect_uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn parse_int_list(&mut self) -> Result<Vec<i64>, SessionError> {
        self.expect_punct(b'[')?;
        let mut out = Vec::new();
        if self.eat_punct(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.expect_int()?);
            if self.eat_punct(b']') {
                return Ok(out);
            }
            self.expect_punct(b',')?;
        }
    }

    /// Polynomial expression over the named variables:
    /// `expr = ['-'] term (('+'|'-') term)*`,
    /// `term = factor ('*' factor)*`, `factor = primary ['^' uint]`,
    /// `primary = rational | var | '(' expr ')'`.
    fn parse_poly(&mut self, vars: &[String]) -> Result<PolyAst, SessionError> {
        let at = self.current().clone();
        let terms = self.parse_expr(vars)?;
        Ok(PolyAst {
            terms: collect_terms(terms, vars.len()),
            line: at.line,
            column: at.column,
        })
    }

    fn parse_expr(
        &mut self,
        vars: &[String],
    ) -> Result<Vec<(Vec<u32>, BigRational)>, SessionError> {
        let mut acc = if self.eat_punct(b'-') {
            negate(self.parse_term(vars)?)
        } else {
            self.parse_term(vars)?
        };
        loop {
            if self.eat_punct(b'+') {
                acc.extend(self.parse_term(vars)?);
            } else if self.eat_punct(b'-') {
                acc.extend(negate(self.parse_term(vars)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_term(
        &mut self,
        vars: &[String],
    ) -> Result<Vec<(Vec<u32>, BigRational)>, SessionError> {
        let mut acc = self.parse_factor(vars)?;
        while self.eat_punct(b'*') {
            let rhs = self.parse_factor(vars)?;
            acc = multiply(&acc, &rhs, vars.len());
        }
        Ok(acc)
    }

    fn parse_factor(
        &mut self,
        vars: &[String],
    ) -> Result<Vec<(Vec<u32>, BigRational)>, SessionError> {
        let base = self.parse_primary(vars)?;
        if self.eat_punct(b'^') {
            let e = self.expect_uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            let mut acc = vec![(vec![0; vars.len()], BigRational::from_integer(1.into()))];
            for _ in 0..e {
                acc = multiply(&acc, &base, vars.len());
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn parse_primary(
        &mut self,
        vars: &[String],
    ) -> Result<Vec<(Vec<u32>, BigRational)>, SessionError> {
        match self.current().tok.clone() {
            Tok::Int(_) => {
                let n = self.expect_uint()?;
                let coeff = if self.eat_punct(b'/') {
                    let d = self.expect_uint()?;
                    if d == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(n.into(), d.into())
                } else {
                    BigRational::from_integer(n.into())
                };
                Ok(vec![(vec![0; vars.len()], coeff)])
            }
            Tok::Ident(name) => {
                let Some(i) = vars.iter().position(|v| *v == name) else {
                    return Err(self.error(format!("unknown variable '{name}'")));
                };
                self.advance();
                let mut exps = vec![0u32; vars.len()];
                exps[i] = 1;
                Ok(vec![(exps, BigRational::from_integer(1.into()))])
            }
            Tok::Punct(b'(') => {
                self.advance();
                let inner = self.parse_expr(vars)?;
                self.expect_punct(b')')?;
                Ok(inner)
            }
            _ => Err(self.error("expected a coefficient, variable, or '('")),
        }
    }

    fn parse_statement(&mut self) -> Result<Option<Statement>, SessionError> {
        match self.current().tok.clone() {
            Tok::Eof => Ok(None),
            Tok::Ident(kw) if kw == "ring" => {
                self.advance();
                let name = self.expect_ident()?;
                self.expect_punct(b'=')?;
                let kind = self.expect_ident()?;
                match kind.as_str() {
                    "poly" => {
                        self.expect_punct(b'(')?;
                        self.expect_keyword("field")?;
                        self.expect_punct(b':')?;
                        let field = self.parse_field()?;
                        self.expect_punct(b';')?;
                        self.expect_keyword("vars")?;
                        self.expect_punct(b':')?;
                        let mut vars = Vec::new();
                        loop {
                            let v = self.expect_ident()?;
                            self.expect_punct(b':')?;
                            let w = self.expect_uint()?;
                            let w = u32::try_from(w)
                                .map_err(|_| self.error("weight out of range"))?;
                            vars.push((v, w));
                            if !self.eat_punct(b',') {
                                break;
                            }
                        }
                        self.expect_punct(b')')?;
                        Ok(Some(Statement::Ring {
                            name,
                            decl: RingDecl::Poly { field, vars },
                        }))
                    }
                    "quotient" => {
                        self.expect_punct(b'(')?;
                        let base = self.expect_ident()?;
                        let Some(vars) = self.vars_in_scope.get(&base).cloned() else {
                            return Err(self.error(format!("unknown ring '{base}'")));
                        };
                        let mut relations = Vec::new();
                        while self.eat_punct(b';') {
                            relations.push(self.parse_poly(&vars)?);
                            while self.eat_punct(b',') {
                                relations.push(self.parse_poly(&vars)?);
                            }
                        }
                        self.expect_punct(b')')?;
                        Ok(Some(Statement::Ring {
                            name,
                            decl: RingDecl::Quotient { base, relations },
                        }))
                    }
                    other => Err(self.error(format!(
                        "unknown ring constructor '{other}' (expected poly or quotient)"
                    ))),
                }
            }
            Tok::Ident(kw) if kw == "module" => {
                self.advance();
                let name = self.expect_ident()?;
                self.expect_punct(b'=')?;
                self.expect_keyword("coker")?;
                self.expect_punct(b'(')?;
                let ring = self.expect_ident()?;
                let Some(vars) = self.vars_in_scope.get(&ring).cloned() else {
                    return Err(self.error(format!("unknown ring '{ring}'")));
                };
                self.expect_punct(b';')?;
                self.expect_keyword("rowdeg")?;
                self.expect_punct(b':')?;
                let row_degrees = self.parse_int_list()?;
                self.expect_punct(b';')?;
                self.expect_keyword("coldeg")?;
                self.expect_punct(b':')?;
                let col_degrees = self.parse_int_list()?;
                self.expect_punct(b';')?;
                self.expect_keyword("matrix")?;
                self.expect_punct(b':')?;
                self.expect_punct(b'[')?;
                let mut matrix = Vec::new();
                if !self.eat_punct(b']') {
                    loop {
                        self.expect_punct(b'[')?;
                        let mut row = Vec::new();
                        if !self.eat_punct(b']') {
                            loop {
                                row.push(self.parse_poly(&vars)?);
                                if self.eat_punct(b']') {
                                    break;
                                }
                                self.expect_punct(b',')?;
                            }
                        }
                        matrix.push(row);
                        if self.eat_punct(b']') {
                            break;
                        }
                        self.expect_punct(b',')?;
                    }
                }
                self.expect_punct(b')')?;
                Ok(Some(Statement::Module {
                    name,
                    decl: ModuleDecl {
                        ring,
                        row_degrees,
                        col_degrees,
                        matrix,
                    },
                }))
            }
            _ => Err(self.error("expected 'ring' or 'module'")),
        }
    }

    fn parse_field(&mut self) -> Result<FieldChoice, SessionError> {
        let name = self.expect_ident()?;
        match name.as_str() {
            "QQ" => Ok(FieldChoice::Rationals),
            "GF" => {
                self.expect_punct(b'(')?;
                let p = self.expect_uint()?;
                self.expect_punct(b')')?;
                Ok(FieldChoice::PrimeField(p))
            }
            other => Err(self.error(format!("unknown field '{other}' (expected QQ or GF(p))"))),
        }
    }
}

fn negate(terms: Vec<(Vec<u32>, BigRational)>) -> Vec<(Vec<u32>, BigRational)> {
    terms.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn multiply(
    a: &[(Vec<u32>, BigRational)],
    b: &[(Vec<u32>, BigRational)],
    n_vars: usize,
) -> Vec<(Vec<u32>, BigRational)> {
    let mut out = Vec::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = vec![0u32; n_vars];
            for i in 0..n_vars {
                e[i] = ea[i] + eb[i];
            }
            out.push((e, ca * cb));
        }
    }
    out
}

fn collect_terms(
    terms: Vec<(Vec<u32>, BigRational)>,
    n_vars: usize,
) -> Vec<(Vec<u32>, BigRational)> {
    use num_traits::Zero;
    let mut map: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for (e, c) in terms {
        debug_assert_eq!(e.len(), n_vars);
        let entry = map.entry(e).or_insert_with(<BigRational as Zero>::zero);
        *entry += c;
    }
    map.into_iter()
        .filter(|(_, c)| !<BigRational as Zero>::is_zero(c))
        .collect()
}

/// Parses declaration text into a session AST; names must be unique and
/// every reference resolved.
pub fn parse_session(text: &str) -> Result<ParsedSession, SessionError> {
    let mut tokenizer = Tokenizer::new(text);
    let mut tokens = Vec::new();
    loop {
        let t = tokenizer.next_token();
        let done = t.tok == Tok::Eof;
        tokens.push(t);
        if done {
            break;
        }
    }
    let mut vars_in_scope: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut statements = Vec::new();
    let mut idx = 0;
    loop {
        let mut parser = Parser {
            tokens: tokens.clone(),
            idx,
            vars_in_scope: &vars_in_scope,
        };
        match parser.parse_statement()? {
            None => break,
            Some(statement) => {
                idx = parser.idx;
                let name = match &statement {
                    Statement::Ring { name, .. } | Statement::Module { name, .. } => name.clone(),
                };
                if vars_in_scope.contains_key(&name) {
                    return Err(SessionError {
                        line: 0,
                        column: 0,
                        message: format!("duplicate name '{name}'"),
                    });
                }
                match &statement {
                    Statement::Ring { name, decl } => {
                        let vars = match decl {
                            RingDecl::Poly { vars, .. } => {
                                vars.iter().map(|(n, _)| n.clone()).collect()
                            }
                            RingDecl::Quotient { base, .. } => vars_in_scope
                                .get(base)
                                .cloned()
                                .expect("base checked during parsing"),
                        };
                        vars_in_scope.insert(name.clone(), vars);
                    }
                    Statement::Module { name, .. } => {
                        // modules own no variables, but occupy the name
                        vars_in_scope.insert(name.clone(), Vec::new());
                    }
                }
                statements.push(statement);
            }
        }
    }
    Ok(ParsedSession { statements })
}

/// Instantiates a parsed session over a concrete coefficient field.
pub fn instantiate<F: Field>(parsed: &ParsedSession) -> Result<Session<F>, SessionError> {
    let mut rings: BTreeMap<String, RingPresentation<F>> = BTreeMap::new();
    let mut modules: BTreeMap<String, ModulePresentation<F>> = BTreeMap::new();
    for statement in &parsed.statements {
        match statement {
            Statement::Ring { name, decl } => match decl {
                RingDecl::Poly { vars, .. } => {
                    let spec = WeightedRingSpec::new(
                        vars.iter().map(|(n, _)| n.clone()).collect(),
                        vars.iter().map(|(_, w)| *w).collect(),
                    )
                    .map_err(|e| SessionError {
                        line: 0,
                        column: 0,
                        message: format!("in ring '{name}': {e}"),
                    })?;
                    rings.insert(name.clone(), RingPresentation::polynomial(spec));
                }
                RingDecl::Quotient { base, relations } => {
                    let base_ring = rings.get(base).ok_or_else(|| SessionError {
                        line: 0,
                        column: 0,
                        message: format!("unknown ring '{base}'"),
                    })?;
                    let spec = base_ring.spec().clone();
                    let mut rels = base_ring.relations().to_vec();
                    for r in relations {
                        rels.push(poly_from_ast::<F>(r)?);
                    }
                    let ring =
                        RingPresentation::new(spec, rels).map_err(|e| locate_poly_error(e, relations))?;
                    rings.insert(name.clone(), ring);
                }
            },
            Statement::Module { name, decl } => {
                let ring = rings.get(&decl.ring).ok_or_else(|| SessionError {
                    line: 0,
                    column: 0,
                    message: format!("unknown ring '{}'", decl.ring),
                })?;
                if decl.matrix.len() != decl.row_degrees.len() {
                    return Err(SessionError {
                        line: 0,
                        column: 0,
                        message: format!(
                            "module '{name}': matrix has {} rows, rowdeg lists {}",
                            decl.matrix.len(),
                            decl.row_degrees.len()
                        ),
                    });
                }
                let mut rows = Vec::new();
                for row in &decl.matrix {
                    if row.len() != decl.col_degrees.len() {
                        return Err(SessionError {
                            line: 0,
                            column: 0,
                            message: format!(
                                "module '{name}': a matrix row has {} entries, coldeg lists {}",
                                row.len(),
                                decl.col_degrees.len()
                            ),
                        });
                    }
                    let mut entries = Vec::new();
                    for e in row {
                        entries.push(poly_from_ast::<F>(e)?);
                    }
                    rows.push(entries);
                }
                let matrix = GradedMatrix::new(
                    ring.spec(),
                    decl.row_degrees.clone(),
                    decl.col_degrees.clone(),
                    rows,
                )
                .map_err(|e| locate_matrix_error(e, decl))?;
                modules.insert(
                    name.clone(),
                    ModulePresentation::new(ring.clone(), matrix),
                );
            }
        }
    }
    Ok(Session { rings, modules })
}

fn poly_from_ast<F: Field>(ast: &PolyAst) -> Result<MultiPoly<F>, SessionError> {
    let mut p = MultiPoly::zero();
    for (exps, coeff) in &ast.terms {
        let c = F::from_rational(coeff).ok_or_else(|| SessionError {
            line: ast.line,
            column: ast.column,
            message: format!("coefficient {coeff} has no image in the chosen field"),
        })?;
        p.add_term(Monomial::from_exps(exps.clone()), &c);
    }
    Ok(p)
}

fn locate_poly_error(e: PolyError, relations: &[PolyAst]) -> SessionError {
    if let PolyError::BadRelation { index } = e {
        if let Some(ast) = relations.get(index) {
            return SessionError {
                line: ast.line,
                column: ast.column,
                message: "relation is not homogeneous of positive degree".to_string(),
            };
        }
    }
    SessionError {
        line: 0,
        column: 0,
        message: format!("{e}"),
    }
}

fn locate_matrix_error(e: PolyError, decl: &ModuleDecl) -> SessionError {
    if let PolyError::InhomogeneousEntry { row, col } = e {
        if let Some(ast) = decl.matrix.get(row).and_then(|r| r.get(col)) {
            return SessionError {
                line: ast.line,
                column: ast.column,
                message: format!(
                    "matrix entry ({row}, {col}) is not homogeneous of degree coldeg - rowdeg"
                ),
            };
        }
    }
    SessionError {
        line: 0,
        column: 0,
        message: format!("{e}"),
    }
}
