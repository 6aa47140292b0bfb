use std::collections::HashMap;

use super::lexer::{tokenize, Token, TokenKind};
use super::{NetworkDecl, ParseError, SpecDocument, UnitDecl};
use crate::boolexpr::{BoolExpr, TruthTable};
use crate::domains::{HyperRectDomain, RectPredicate};

pub(crate) const KEYWORDS: &[&str] = &[
    "domain", "expr", "unit", "network", "main", "center", "width", "rect", "x", "selective", "truth",
    "multidomain", "or", "tl", "th",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Domain,
    Expr,
    Unit,
    Network,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Domain => "domain",
            Kind::Expr => "expr",
            Kind::Unit => "unit",
            Kind::Network => "network",
        }
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    names: HashMap<String, Kind>,
    doc: SpecDocument,
}

pub(crate) fn parse(src: &str) -> PResult<SpecDocument> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        names: HashMap::new(),
        doc: SpecDocument::default(),
    };
    p.document()?;
    Ok(p.doc)
}

fn error_at(tok: &Token, message: impl Into<String>) -> ParseError {
    ParseError {
        line: tok.line,
        column: tok.column,
        message: message.into(),
        token: tok.text(),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Punct(c)
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    fn expect_punct(&mut self, c: char) -> PResult<Token> {
        if self.is_punct(c) {
            Ok(self.next())
        } else {
            Err(error_at(self.peek(), format!("expected '{c}'")))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<Token> {
        if self.is_keyword(kw) {
            Ok(self.next())
        } else {
            Err(error_at(self.peek(), format!("expected '{kw}'")))
        }
    }

    /// A non-keyword identifier.
    fn name(&mut self) -> PResult<(String, Token)> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.next();
                Ok((s.clone(), tok))
            }
            TokenKind::Ident(s) => Err(error_at(&tok, format!("'{s}' is a keyword, expected a name"))),
            _ => Err(error_at(&tok, "expected a name")),
        }
    }

    fn number(&mut self) -> PResult<(f64, Token)> {
        let tok = self.peek().clone();
        let TokenKind::Number(text) = &tok.kind else {
            return Err(error_at(&tok, "expected a number"));
        };
        let value: f64 = text
            .parse()
            .map_err(|_| error_at(&tok, "malformed number"))?;
        if !value.is_finite() {
            return Err(error_at(&tok, "number out of range"));
        }
        self.next();
        Ok((value, tok))
    }

    fn integer(&mut self) -> PResult<usize> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Number(text) if text.bytes().all(|b| b.is_ascii_digit()) => {
                self.next();
                text.parse().map_err(|_| error_at(&tok, "index out of range"))
            }
            _ => Err(error_at(&tok, "expected a non-negative integer")),
        }
    }

    fn declare(&mut self, name: &str, tok: &Token, kind: Kind) -> PResult<()> {
        if self.names.contains_key(name) {
            return Err(error_at(tok, format!("duplicate name {name}")));
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn reference(&mut self, want: Kind) -> PResult<(String, Token)> {
        let (name, tok) = self.name()?;
        match self.names.get(&name) {
            None => Err(error_at(&tok, format!("unknown name {name}"))),
            Some(&k) if k != want => Err(error_at(
                &tok,
                format!("{name} is a {}, expected a {}", k.noun(), want.noun()),
            )),
            Some(_) => Ok((name, tok)),
        }
    }

    /// Comma-separated domain names sharing one arity.
    fn domain_list(&mut self) -> PResult<Vec<String>> {
        let mut names: Vec<String> = Vec::new();
        let mut arity = None;
        loop {
            let (name, tok) = self.reference(Kind::Domain)?;
            let n = self.doc.domains[&name].arity();
            match arity {
                None => arity = Some(n),
                Some(a) if a != n => {
                    return Err(error_at(
                        &tok,
                        format!("domain {name} has arity {n}, expected {a}"),
                    ))
                }
                Some(_) => {}
            }
            names.push(name);
            if !self.is_punct(',') {
                return Ok(names);
            }
            self.next();
        }
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            let tok = self.peek().clone();
            match &tok.kind {
                TokenKind::Ident(s) => match s.as_str() {
                    "domain" => self.domain_decl()?,
                    "expr" => self.expr_decl()?,
                    "unit" => self.unit_decl()?,
                    "network" => self.network_decl()?,
                    "main" => break,
                    _ => return Err(error_at(&tok, "expected a declaration or 'main'")),
                },
                TokenKind::Eof => return Err(error_at(&tok, "missing 'main' entry")),
                _ => return Err(error_at(&tok, "expected a declaration or 'main'")),
            }
        }
        self.expect_keyword("main")?;
        self.expect_punct('=')?;
        let (name, tok) = self.name()?;
        if !self.names.contains_key(&name) {
            return Err(error_at(&tok, format!("unknown name {name}")));
        }
        self.expect_punct(';')?;
        let rest = self.peek();
        if rest.kind != TokenKind::Eof {
            return Err(error_at(rest, "unexpected input after 'main'"));
        }
        self.doc.main = name;
        Ok(())
    }

    fn vector(&mut self) -> PResult<(Vec<f64>, Token)> {
        let open = self.expect_punct('[')?;
        let mut values = vec![self.number()?.0];
        while self.is_punct(',') {
            self.next();
            values.push(self.number()?.0);
        }
        self.expect_punct(']')?;
        Ok((values, open))
    }

    fn domain_decl(&mut self) -> PResult<()> {
        self.expect_keyword("domain")?;
        let (name, name_tok) = self.name()?;
        self.declare(&name, &name_tok, Kind::Domain)?;
        self.expect_punct('{')?;
        self.expect_keyword("center")?;
        self.expect_punct('=')?;
        let (centers, _) = self.vector()?;
        self.expect_punct(';')?;
        self.expect_keyword("width")?;
        self.expect_punct('=')?;
        let (widths, width_tok) = self.vector()?;
        if widths.len() != centers.len() {
            return Err(error_at(
                &width_tok,
                format!(
                    "center has {} entries but width has {}",
                    centers.len(),
                    widths.len()
                ),
            ));
        }
        let domain = HyperRectDomain::new(&centers, &widths).map_err(|e| error_at(&width_tok, e.to_string()))?;
        self.expect_punct(';')?;
        self.expect_punct('}')?;
        self.doc.domains.insert(name, domain);
        Ok(())
    }

    fn expr_decl(&mut self) -> PResult<()> {
        self.expect_keyword("expr")?;
        let (name, name_tok) = self.name()?;
        self.declare(&name, &name_tok, Kind::Expr)?;
        self.expect_punct('=')?;
        let e = self.or_expr()?;
        self.expect_punct(';')?;
        self.doc.exprs.insert(name, e);
        Ok(())
    }

    fn or_expr(&mut self) -> PResult<BoolExpr> {
        let mut children = vec![self.and_expr()?];
        while self.is_punct('|') {
            self.next();
            children.push(self.and_expr()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            BoolExpr::Or(children)
        })
    }

    fn and_expr(&mut self) -> PResult<BoolExpr> {
        let mut children = vec![self.not_expr()?];
        while self.is_punct('&') {
            self.next();
            children.push(self.not_expr()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            BoolExpr::And(children)
        })
    }

    fn not_expr(&mut self) -> PResult<BoolExpr> {
        if self.is_punct('!') {
            self.next();
            return Ok(BoolExpr::not(self.not_expr()?));
        }
        if self.is_punct('(') {
            self.next();
            let e = self.or_expr()?;
            self.expect_punct(')')?;
            return Ok(e);
        }
        if self.is_keyword("rect") {
            return self.pred();
        }
        Err(error_at(self.peek(), "expected '!', '(' or 'rect'"))
    }

    fn pred(&mut self) -> PResult<BoolExpr> {
        self.expect_keyword("rect")?;
        self.expect_punct('(')?;
        self.expect_keyword("x")?;
        self.expect_punct('[')?;
        let axis = self.integer()?;
        self.expect_punct(']')?;
        self.expect_punct(',')?;
        self.expect_keyword("center")?;
        self.expect_punct('=')?;
        let (center, _) = self.number()?;
        self.expect_punct(',')?;
        self.expect_keyword("width")?;
        self.expect_punct('=')?;
        let (width, width_tok) = self.number()?;
        self.expect_punct(')')?;
        let pred = RectPredicate::new(center, width).map_err(|e| error_at(&width_tok, e.to_string()))?;
        Ok(BoolExpr::Pred { axis, pred })
    }

    fn unit_decl(&mut self) -> PResult<()> {
        self.expect_keyword("unit")?;
        let (name, name_tok) = self.name()?;
        self.expect_punct('=')?;
        let tok = self.peek().clone();
        let decl = match &tok.kind {
            TokenKind::Ident(s) if s == "selective" => {
                self.next();
                self.expect_punct('(')?;
                let (domain, _) = self.reference(Kind::Domain)?;
                let thresholds = if self.is_punct(',') {
                    self.next();
                    self.expect_keyword("tl")?;
                    self.expect_punct('=')?;
                    let (low, _) = self.number()?;
                    self.expect_punct(',')?;
                    self.expect_keyword("th")?;
                    self.expect_punct('=')?;
                    let (high, high_tok) = self.number()?;
                    if low >= high {
                        return Err(error_at(&high_tok, "threshold tl must be below th"));
                    }
                    Some((low, high))
                } else {
                    None
                };
                self.expect_punct(')')?;
                UnitDecl::Selective { domain, thresholds }
            }
            TokenKind::Ident(s) if s == "expr" => {
                self.next();
                self.expect_punct('(')?;
                let (expr, _) = self.reference(Kind::Expr)?;
                self.expect_punct(')')?;
                UnitDecl::Expr { expr }
            }
            TokenKind::Ident(s) if s == "truth" => {
                self.next();
                self.expect_punct('(')?;
                let bits_tok = self.peek().clone();
                let table = match &bits_tok.kind {
                    TokenKind::Number(text) => text
                        .parse::<TruthTable>()
                        .map_err(|e| error_at(&bits_tok, format!("malformed bitstring: {e}")))?,
                    _ => return Err(error_at(&bits_tok, "expected a bitstring")),
                };
                self.next();
                self.expect_punct(')')?;
                UnitDecl::Truth { table }
            }
            TokenKind::Ident(s) if s == "multidomain" => {
                self.next();
                self.expect_punct('(')?;
                let domains = self.domain_list()?;
                self.expect_punct(')')?;
                UnitDecl::Multidomain { domains }
            }
            _ => {
                return Err(error_at(
                    &tok,
                    "expected 'selective', 'expr', 'truth' or 'multidomain'",
                ))
            }
        };
        self.expect_punct(';')?;
        self.declare(&name, &name_tok, Kind::Unit)?;
        self.doc.units.insert(name, decl);
        Ok(())
    }

    fn network_decl(&mut self) -> PResult<()> {
        self.expect_keyword("network")?;
        let (name, name_tok) = self.name()?;
        self.declare(&name, &name_tok, Kind::Network)?;
        self.expect_punct('=')?;
        self.expect_keyword("or")?;
        self.expect_punct('(')?;
        let domains = self.domain_list()?;
        self.expect_punct(')')?;
        self.expect_punct(';')?;
        self.doc.networks.insert(name, NetworkDecl::Or { domains });
        Ok(())
    }
}
