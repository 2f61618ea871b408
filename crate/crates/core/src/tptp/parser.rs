//! Tokenizer and recursive-descent parser for annotated `cnf`/`fof` formulas.

use std::path::{Path, PathBuf};

use crate::syntax::Symbol;

use super::ast::{FTerm, Formula, Input, Language, ProblemSpec, Role, Signature};
use super::FrontendError;

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Lower(String),
    Upper(String),
    Quoted(String),
    Dollar(String),
    Number(String),
    DistinctObject(String),
    Punct(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const PUNCTS: &[&str] = &[
    "<~>", "<=>", "=>", "<=", "~|", "~&", "!=", "(", ")", "[", "]", ",", ".", ":", "!", "?", "~", "-", "&", "|", "=",
];

fn tokenize(src: &str) -> Result<Vec<Token>, FrontendError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, chars: &[char]| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, &chars);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, &chars);
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let (l0, c0) = (line, col);
            advance(&mut i, &mut line, &mut col, &chars);
            advance(&mut i, &mut line, &mut col, &chars);
            loop {
                if i + 1 >= chars.len() {
                    return Err(FrontendError::syntax(l0, c0, "unterminated block comment"));
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    advance(&mut i, &mut line, &mut col, &chars);
                    advance(&mut i, &mut line, &mut col, &chars);
                    break;
                }
                advance(&mut i, &mut line, &mut col, &chars);
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' || c == '$' {
            let start = i;
            advance(&mut i, &mut line, &mut col, &chars);
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col, &chars);
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if c == '$' {
                Tok::Dollar(word)
            } else if c.is_ascii_uppercase() || c == '_' {
                Tok::Upper(word)
            } else {
                Tok::Lower(word)
            };
            out.push(Token { tok, line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, &chars);
            }
            out.push(Token { tok: Tok::Number(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if c == '\'' || c == '"' {
            let quote = c;
            advance(&mut i, &mut line, &mut col, &chars);
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(FrontendError::syntax(l0, c0, "unterminated quoted name")),
                    Some('\\') => {
                        advance(&mut i, &mut line, &mut col, &chars);
                        match chars.get(i) {
                            Some(&e) => {
                                text.push(e);
                                advance(&mut i, &mut line, &mut col, &chars);
                            }
                            None => return Err(FrontendError::syntax(l0, c0, "unterminated quoted name")),
                        }
                    }
                    Some(&q) if q == quote => {
                        advance(&mut i, &mut line, &mut col, &chars);
                        break;
                    }
                    Some(&ch) => {
                        text.push(ch);
                        advance(&mut i, &mut line, &mut col, &chars);
                    }
                }
            }
            let tok = if quote == '\'' { Tok::Quoted(text) } else { Tok::DistinctObject(text) };
            out.push(Token { tok, line: l0, col: c0 });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match PUNCTS.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                for _ in 0..p.chars().count() {
                    advance(&mut i, &mut line, &mut col, &chars);
                }
                out.push(Token { tok: Tok::Punct(p), line: l0, col: c0 });
            }
            None => return Err(FrontendError::syntax(l0, c0, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// Include directives are handed to a resolver so parsing stays pure.
pub trait IncludeResolver {
    /// Returns the source text and a display name for `path`.
    fn resolve(&self, path: &str) -> Result<(String, PathBuf), FrontendError>;
}

struct NoIncludes;

impl IncludeResolver for NoIncludes {
    fn resolve(&self, path: &str) -> Result<(String, PathBuf), FrontendError> {
        Err(FrontendError::Include { path: path.to_string(), reason: "includes need a file context".into() })
    }
}

/// Resolves relative to the including file's directory, then each root.
pub struct FileResolver {
    pub base: PathBuf,
    pub roots: Vec<PathBuf>,
}

impl IncludeResolver for FileResolver {
    fn resolve(&self, path: &str) -> Result<(String, PathBuf), FrontendError> {
        let candidates = std::iter::once(self.base.join(path)).chain(self.roots.iter().map(|r| r.join(path)));
        for candidate in candidates {
            if candidate.is_file() {
                return std::fs::read_to_string(&candidate)
                    .map(|s| (s, candidate.clone()))
                    .map_err(|e| FrontendError::Include { path: path.to_string(), reason: e.to_string() });
            }
        }
        Err(FrontendError::Include { path: path.to_string(), reason: "file not found".into() })
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
    resolver: &'a dyn IncludeResolver,
    depth: usize,
}

type PResult<T> = Result<T, FrontendError>;

impl<'a> Parser<'a> {
    fn new(src: &str, resolver: &'a dyn IncludeResolver, depth: usize) -> PResult<Self> {
        let toks = tokenize(src)?;
        let lines = src.lines().count().max(1);
        let last = src.lines().last().map_or(1, |l| l.chars().count() + 1);
        Ok(Parser { toks, pos: 0, eof: (lines, last), resolver, depth })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.eof, |t| (t.line, t.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (l, c) = self.here();
        Err(FrontendError::syntax(l, c, msg))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> PResult<()> {
        if self.eat(p) {
            Ok(())
        } else {
            self.err(format!("expected '{p}'"))
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().cloned() {
            Some(Tok::Lower(s)) | Some(Tok::Quoted(s)) | Some(Tok::Number(s)) | Some(Tok::Upper(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a formula name"),
        }
    }

    fn problem(&mut self, out: &mut Vec<(Input, (usize, usize))>) -> PResult<()> {
        while self.peek().is_some() {
            let at = self.here();
            match self.next() {
                Some(Tok::Lower(kw)) if kw == "cnf" || kw == "fof" => {
                    let language = if kw == "cnf" { Language::Cnf } else { Language::Fof };
                    let input = self.annotated(language)?;
                    out.push((input, at));
                }
                Some(Tok::Lower(kw)) if kw == "include" => self.include(out)?,
                Some(Tok::Lower(kw)) if matches!(kw.as_str(), "tff" | "thf" | "tcf" | "tpi") => {
                    return Err(FrontendError::Unsupported { line: at.0, col: at.1, what: format!("{kw} formulas") });
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected cnf(...), fof(...) or include(...)");
                }
            }
        }
        Ok(())
    }

    fn include(&mut self, out: &mut Vec<(Input, (usize, usize))>) -> PResult<()> {
        self.expect("(")?;
        let path = match self.next() {
            Some(Tok::Quoted(p)) => p,
            _ => {
                self.pos -= 1;
                return self.err("expected a quoted file name");
            }
        };
        let mut selection = None;
        if self.eat(",") {
            self.expect("[")?;
            let mut names = Vec::new();
            if !self.is_punct("]") {
                loop {
                    names.push(self.name()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect("]")?;
            selection = Some(names);
        }
        self.expect(")")?;
        self.expect(".")?;
        if self.depth > 16 {
            return Err(FrontendError::Include { path, reason: "include nesting too deep".into() });
        }
        let (text, file) = self.resolver.resolve(&path)?;
        let nested = FileResolver {
            base: file.parent().map(Path::to_path_buf).unwrap_or_default(),
            roots: Vec::new(),
        };
        let chained = Chain(&nested, self.resolver);
        let mut sub = Parser::new(&text, &chained, self.depth + 1)
            .map_err(|e| FrontendError::Include { path: path.clone(), reason: e.to_string() })?;
        let mut inner = Vec::new();
        sub.problem(&mut inner).map_err(|e| FrontendError::Include { path: path.clone(), reason: e.to_string() })?;
        for (input, at) in inner {
            if selection.as_ref().is_none_or(|names| names.contains(&input.label)) {
                out.push((input, at));
            }
        }
        Ok(())
    }

    fn annotated(&mut self, language: Language) -> PResult<Input> {
        self.expect("(")?;
        let label = self.name()?;
        self.expect(",")?;
        let role_at = self.here();
        let role = match self.next() {
            Some(Tok::Lower(r)) => match r.as_str() {
                "axiom" | "definition" | "assumption" | "lemma" | "theorem" | "corollary" | "plain" | "unknown" => {
                    Role::Axiom
                }
                "hypothesis" => Role::Hypothesis,
                "conjecture" => Role::Conjecture,
                "negated_conjecture" => Role::NegatedConjecture,
                other => {
                    return Err(FrontendError::Unsupported {
                        line: role_at.0,
                        col: role_at.1,
                        what: format!("role '{other}'"),
                    })
                }
            },
            _ => {
                self.pos -= 1;
                return self.err("expected a formula role");
            }
        };
        self.expect(",")?;
        let formula_at = self.here();
        let formula = self.formula()?;
        if language == Language::Cnf {
            check_clause_shape(&formula)
                .map_err(|m| FrontendError::syntax(formula_at.0, formula_at.1, m))?;
        }
        if self.eat(",") {
            self.skip_annotations()?;
        }
        self.expect(")")?;
        self.expect(".")?;
        Ok(Input { label, role, language, formula })
    }

    fn skip_annotations(&mut self) -> PResult<()> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                None => return self.err("unterminated annotation"),
                Some(Tok::Punct("(")) | Some(Tok::Punct("[")) => depth += 1,
                Some(Tok::Punct(")")) | Some(Tok::Punct("]")) => {
                    if depth == 0 {
                        return Ok(());
                    }
                    depth -= 1;
                }
                _ => {}
            }
            self.pos += 1;
        }
    }

    // Binary connectives, loosest first: <=> <~> => <=, then | ~|, then & ~&.
    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        let op = match self.peek() {
            Some(Tok::Punct(p @ ("<=>" | "<~>" | "=>" | "<="))) => *p,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.formula()?;
        Ok(match op {
            "<=>" => Formula::Iff(Box::new(lhs), Box::new(rhs)),
            "<~>" => Formula::not(Formula::Iff(Box::new(lhs), Box::new(rhs))),
            "=>" => Formula::implies(lhs, rhs),
            _ => Formula::implies(rhs, lhs),
        })
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let first = self.conjunction()?;
        if self.eat("~|") {
            let rhs = self.conjunction()?;
            return Ok(Formula::not(Formula::Or(vec![first, rhs])));
        }
        let mut parts = vec![first];
        while self.eat("|") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let first = self.unit()?;
        if self.eat("~&") {
            let rhs = self.unit()?;
            return Ok(Formula::not(Formula::And(vec![first, rhs])));
        }
        let mut parts = vec![first];
        while self.eat("&") {
            parts.push(self.unit()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unit(&mut self) -> PResult<Formula> {
        if self.eat("~") || self.eat("-") {
            return Ok(Formula::not(self.unit()?));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.is_punct("!") || self.is_punct("?") {
            let universal = self.is_punct("!");
            self.pos += 1;
            self.expect("[")?;
            let mut vars = Vec::new();
            loop {
                match self.next() {
                    Some(Tok::Upper(v)) => vars.push(v),
                    _ => {
                        self.pos -= 1;
                        return self.err("expected a variable");
                    }
                }
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("]")?;
            self.expect(":")?;
            let body = self.unit()?;
            return Ok(vars.into_iter().rev().fold(body, |acc, v| {
                if universal {
                    Formula::Forall(v, Box::new(acc))
                } else {
                    Formula::Exists(v, Box::new(acc))
                }
            }));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Tok::Dollar(d)) if d == "$true" => {
                self.pos += 1;
                return Ok(Formula::True);
            }
            Some(Tok::Dollar(d)) if d == "$false" => {
                self.pos += 1;
                return Ok(Formula::False);
            }
            _ => {}
        }
        let at = self.here();
        let lhs = self.term()?;
        if self.eat("=") {
            let rhs = self.term()?;
            return Ok(Formula::Atom(Symbol::new("="), vec![lhs, rhs]));
        }
        if self.eat("!=") {
            let rhs = self.term()?;
            return Ok(Formula::not(Formula::Atom(Symbol::new("="), vec![lhs, rhs])));
        }
        match lhs {
            FTerm::App(p, args) => Ok(Formula::Atom(p, args)),
            FTerm::Var(v) => Err(FrontendError::syntax(at.0, at.1, format!("variable {v} used as a formula"))),
        }
    }

    fn term(&mut self) -> PResult<FTerm> {
        let at = self.here();
        match self.next() {
            Some(Tok::Upper(v)) => Ok(FTerm::Var(v)),
            Some(Tok::Lower(f)) | Some(Tok::Quoted(f)) | Some(Tok::Number(f)) => {
                let mut args = Vec::new();
                if self.eat("(") {
                    loop {
                        args.push(self.term()?);
                        if !self.eat(",") {
                            break;
                        }
                    }
                    self.expect(")")?;
                }
                Ok(FTerm::App(Symbol::new(&f), args))
            }
            Some(Tok::Dollar(d)) => {
                Err(FrontendError::Unsupported { line: at.0, col: at.1, what: format!("defined symbol {d}") })
            }
            Some(Tok::DistinctObject(o)) => {
                Err(FrontendError::Unsupported { line: at.0, col: at.1, what: format!("distinct object \"{o}\"") })
            }
            _ => {
                self.pos -= 1;
                self.err("expected a term")
            }
        }
    }
}

struct Chain<'a>(&'a dyn IncludeResolver, &'a dyn IncludeResolver);

impl IncludeResolver for Chain<'_> {
    fn resolve(&self, path: &str) -> Result<(String, PathBuf), FrontendError> {
        self.0.resolve(path).or_else(|_| self.1.resolve(path))
    }
}

fn check_clause_shape(f: &Formula) -> Result<(), String> {
    fn literal(f: &Formula) -> bool {
        match f {
            Formula::Atom(..) | Formula::True | Formula::False => true,
            Formula::Not(a) => matches!(**a, Formula::Atom(..) | Formula::True | Formula::False),
            _ => false,
        }
    }
    match f {
        Formula::Or(xs) if xs.iter().all(literal) => Ok(()),
        f if literal(f) => Ok(()),
        _ => Err("cnf formula must be a disjunction of literals".into()),
    }
}

fn record_arities(f: &Formula, sig: &mut Signature, at: (usize, usize)) -> Result<(), FrontendError> {
    fn term(t: &FTerm, sig: &mut Signature, at: (usize, usize)) -> Result<(), FrontendError> {
        if let FTerm::App(f, xs) = t {
            check(&mut sig.functions, f, xs.len(), at)?;
            for x in xs {
                term(x, sig, at)?;
            }
        }
        Ok(())
    }
    fn check(
        table: &mut std::collections::BTreeMap<Symbol, usize>,
        s: &Symbol,
        n: usize,
        at: (usize, usize),
    ) -> Result<(), FrontendError> {
        match table.get(s) {
            Some(&m) if m != n => Err(FrontendError::ArityClash {
                symbol: s.as_str().to_string(),
                expected: m,
                found: n,
                line: at.0,
                col: at.1,
            }),
            _ => {
                table.insert(s.clone(), n);
                Ok(())
            }
        }
    }
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Atom(p, xs) => {
            if !p.is_equality() {
                check(&mut sig.predicates, p, xs.len(), at)?;
            }
            xs.iter().try_for_each(|x| term(x, sig, at))
        }
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => record_arities(a, sig, at),
        Formula::And(xs) | Formula::Or(xs) => xs.iter().try_for_each(|x| record_arities(x, sig, at)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            record_arities(a, sig, at)?;
            record_arities(b, sig, at)
        }
    }
}

pub(crate) fn parse_with(name: &str, source: &str, resolver: &dyn IncludeResolver) -> Result<ProblemSpec, FrontendError> {
    let mut parser = Parser::new(source, resolver, 0)?;
    let mut found = Vec::new();
    parser.problem(&mut found)?;
    let mut spec = ProblemSpec { name: name.to_string(), ..Default::default() };
    let mut conjectures = 0;
    for (input, at) in found {
        if spec.inputs.iter().any(|i| i.label == input.label) {
            return Err(FrontendError::DuplicateLabel { label: input.label, line: at.0, col: at.1 });
        }
        if input.role == crate::tptp::Role::Conjecture {
            conjectures += 1;
            if conjectures > 1 {
                return Err(FrontendError::MultipleConjectures { label: input.label });
            }
        }
        record_arities(&input.formula, &mut spec.signature, at)?;
        spec.inputs.push(input);
    }
    Ok(spec)
}

/// Parses a self-contained problem; `include` directives are rejected.
pub fn parse_problem(source: &str) -> Result<ProblemSpec, FrontendError> {
    parse_with("problem", source, &NoIncludes)
}

/// Reads and parses a problem file, resolving includes relative to the file
/// and then to each of `include_dirs`.
pub fn load_problem(path: &Path, include_dirs: &[PathBuf]) -> Result<ProblemSpec, FrontendError> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| FrontendError::Io { path: path.display().to_string(), reason: e.to_string() })?;
    let resolver = FileResolver {
        base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        roots: include_dirs.to_vec(),
    };
    let name = path.file_stem().map_or_else(|| "problem".to_string(), |s| s.to_string_lossy().into_owned());
    parse_with(&name, &source, &resolver)
}
