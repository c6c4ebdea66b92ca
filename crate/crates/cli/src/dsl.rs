//! The domain file format.
//!
//! ```text
//! # comments run to end of line
//! vars z1 z2;
//! h1 = z1^2;
//! h2 = 3/2*z2^2 - z1*z2;
//! config { max_level = 5; seed = 7; }
//! ```
//!
//! Expressions take `+ - * / ^` and parentheses over integer literals and
//! declared variables; `/` only divides by nonzero constants and `^` takes a
//! nonnegative integer literal.

use std::fmt;
use subelliptic_core::kohn::SpecialDomain;
use subelliptic_core::{rational, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// Recognized `config` keys, in canonical print order.
pub const CONFIG_KEYS: &[&str] = &[
    "max_level",
    "m_max",
    "random_combos",
    "seed",
    "generator_cap",
    "degree_cap",
    "p_cap",
    "exponent_cap",
    "curve_samples",
];

/// Settings from a `config` block; absent keys fall back to the caller's defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DomainConfig {
    entries: Vec<(String, u64)>,
}

impl DomainConfig {
    pub fn get(&self, key: &str) -> Option<u64> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn set(&mut self, key: &str, value: u64) -> Result<(), String> {
        if !CONFIG_KEYS.contains(&key) {
            return Err(format!("unknown config key `{key}`"));
        }
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self.entries.sort_by_key(|(k, _)| CONFIG_KEYS.iter().position(|c| c == k));
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, u64)] {
        &self.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainFile {
    pub vars: Vec<String>,
    pub h: Vec<Polynomial>,
    pub config: DomainConfig,
}

impl DomainFile {
    pub fn domain(&self) -> SpecialDomain {
        SpecialDomain::new(self.vars.len(), self.h.clone()).expect("validated at parse time")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_alphanumeric() || **c == '_').collect();
            i += s.len();
            column += s.len();
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            column += s.len();
            let v = s.parse().map_err(|_| ParseError {
                line: start_line,
                column: start_col,
                message: format!("integer literal `{s}` is too large"),
            })?;
            Tok::Int(v)
        } else if "+-*/^()=;{}".contains(c) {
            i += 1;
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line, column, message: format!("unexpected character `{c}`") });
        };
        out.push(Token { tok, line: start_line, column: start_col });
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

fn h_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('h')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

fn is_keyword(name: &str) -> bool {
    name == "vars" || name == "config" || h_index(name).is_some()
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at<T>(&self, t: &Token, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: t.line, column: t.column, message: message.into() })
    }

    fn expect_sym(&mut self, c: char) -> PResult<Token> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(t)
        } else {
            self.error_at(&t, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.error_at(&t, format!("expected {what}, found {}", describe(other))),
        }
    }

    /// Pratt loop: `+ -` bind at 1, `* /` at 2, prefix sign at 3, `^` at 4.
    fn expr(&mut self, min_bp: u8) -> PResult<Polynomial> {
        let n = self.vars.len();
        let t = self.next();
        let mut lhs = match &t.tok {
            Tok::Int(v) => Polynomial::constant(n, Rational::from_integer((*v).into())),
            Tok::Ident(name) => match self.vars.iter().position(|v| v == name) {
                Some(i) => Polynomial::var(n, i),
                None => return self.error_at(&t, format!("undeclared variable `{name}`")),
            },
            Tok::Sym('(') => {
                let inner = self.expr(0)?;
                self.expect_sym(')')?;
                inner
            }
            Tok::Sym('-') => self.expr(3)?.scale(&rational::int(-1)),
            Tok::Sym('+') => self.expr(3)?,
            other => return self.error_at(&t, format!("expected an expression, found {}", describe(other))),
        };
        loop {
            let op = self.peek().clone();
            let (c, l_bp, r_bp) = match op.tok {
                Tok::Sym(c @ ('+' | '-')) => (c, 1, 2),
                Tok::Sym(c @ ('*' | '/')) => (c, 2, 3),
                Tok::Sym('^') => ('^', 4, 4),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            self.next();
            if c == '^' {
                let e = self.next();
                let Tok::Int(k) = e.tok else {
                    return self.error_at(&e, "exponent must be a nonnegative integer literal");
                };
                let k = u32::try_from(k).ok().filter(|&k| k <= 4096);
                let Some(k) = k else { return self.error_at(&e, "exponent too large") };
                if self.peek().tok == Tok::Sym('^') {
                    let t = self.peek().clone();
                    return self.error_at(&t, "chained `^` is ambiguous; parenthesize the base");
                }
                lhs = lhs.pow(k);
                continue;
            }
            let rhs = self.expr(r_bp)?;
            lhs = match c {
                '+' => &lhs + &rhs,
                '-' => &lhs - &rhs,
                '*' => &lhs * &rhs,
                _ => {
                    if !(rhs.is_zero() || rhs.degree() == Some(0)) {
                        return self.error_at(&op, "division by a non-constant expression");
                    }
                    let c = rhs.eval_at_origin();
                    if c == rational::int(0) {
                        return self.error_at(&op, "division by zero");
                    }
                    lhs.scale(&c.recip())
                }
            };
        }
        Ok(lhs)
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

pub fn parse_domain(text: &str) -> PResult<DomainFile> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, vars: &[] };
    let (kw, t) = p.expect_ident("`vars`")?;
    if kw != "vars" {
        return p.error_at(&t, "a domain file starts with `vars`");
    }
    let mut vars: Vec<String> = Vec::new();
    loop {
        let t = p.next();
        match &t.tok {
            Tok::Ident(name) if is_keyword(name) => {
                return p.error_at(&t, format!("`{name}` is reserved and cannot name a variable"))
            }
            Tok::Ident(name) if vars.contains(name) => return p.error_at(&t, format!("variable `{name}` declared twice")),
            Tok::Ident(name) => vars.push(name.clone()),
            Tok::Sym(';') if !vars.is_empty() => break,
            other => return p.error_at(&t, format!("expected a variable name or `;`, found {}", describe(other))),
        }
    }

    let mut h = Vec::new();
    let mut config = DomainConfig::default();
    let mut seen_config = false;
    loop {
        let t = p.peek().clone();
        match &t.tok {
            Tok::Eof => break,
            Tok::Ident(name) if name == "config" && !seen_config => {
                p.next();
                seen_config = true;
                p.expect_sym('{')?;
                while p.peek().tok != Tok::Sym('}') {
                    let (key, kt) = p.expect_ident("a config key")?;
                    p.expect_sym('=')?;
                    let vt = p.next();
                    let Tok::Int(value) = vt.tok else {
                        return p.error_at(&vt, "config values are nonnegative integers");
                    };
                    if config.get(&key).is_some() {
                        return p.error_at(&kt, format!("config key `{key}` set twice"));
                    }
                    if let Err(msg) = config.set(&key, value) {
                        return p.error_at(&kt, msg);
                    }
                    p.expect_sym(';')?;
                }
                p.expect_sym('}')?;
            }
            Tok::Ident(name) if h_index(name).is_some() && !seen_config => {
                let k = h_index(name).unwrap();
                if k != h.len() + 1 {
                    return p.error_at(&t, format!("expected `h{}`, found `{name}`", h.len() + 1));
                }
                p.next();
                p.expect_sym('=')?;
                let expr_start = p.peek().clone();
                p.vars = &vars;
                let poly = p.expr(0)?;
                p.vars = &[];
                if poly.eval_at_origin() != rational::int(0) {
                    return p.error_at(&expr_start, format!("h{k} must vanish at the origin (nonzero constant term)"));
                }
                if poly.is_zero() {
                    return p.error_at(&expr_start, format!("h{k} is identically zero"));
                }
                p.expect_sym(';')?;
                h.push(poly);
            }
            other => {
                let expected = if seen_config { "end of input" } else { "`h<k> = ...;` or `config { ... }`" };
                return p.error_at(&t, format!("expected {expected}, found {}", describe(other)));
            }
        }
    }
    if h.is_empty() {
        let t = p.peek().clone();
        return p.error_at(&t, "a domain needs at least `h1`");
    }
    Ok(DomainFile { vars, h, config })
}

/// Parses a polynomial expression over already declared variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> PResult<Polynomial> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, vars };
    let poly = p.expr(0)?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return p.error_at(&t, format!("unexpected {} after expression", describe(&t.tok)));
    }
    Ok(poly)
}

/// Canonical text form; `parse_domain(&print_domain(f)) == f`.
pub fn print_domain(file: &DomainFile) -> String {
    let mut out = format!("vars {};\n", file.vars.join(" "));
    for (i, h) in file.h.iter().enumerate() {
        out.push_str(&format!("h{} = {};\n", i + 1, h.display_with(&file.vars)));
    }
    if !file.config.is_empty() {
        out.push_str("config {\n");
        for (k, v) in file.config.entries() {
            out.push_str(&format!("  {k} = {v};\n"));
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use subelliptic_core::rational::int;
    use subelliptic_core::Monomial;

    #[test]
    fn squares() {
        let f = parse_domain("vars z1 z2; h1 = z1^2; h2 = z2^2;").unwrap();
        assert_eq!(f.vars, vec!["z1", "z2"]);
        assert_eq!(f.h[0], Polynomial::term(Monomial::new(vec![2, 0]), int(1)));
        assert_eq!(f.h[1], Polynomial::term(Monomial::new(vec![0, 2]), int(1)));
    }

    #[test]
    fn mixed_terms() {
        let f = parse_domain("vars z1 z2; h1 = 3*z1*z2 - z1^3;").unwrap();
        let h = &f.h[0];
        assert_eq!(h.len(), 2);
        assert_eq!(h.coefficient(&Monomial::new(vec![1, 1])), int(3));
        assert_eq!(h.coefficient(&Monomial::new(vec![3, 0])), int(-1));
    }

    #[test]
    fn constant_term_is_rejected() {
        let err = parse_domain("vars z; h1 = z + 1;").unwrap_err();
        assert!(err.message.contains("vanish at the origin"), "{err}");
        assert_eq!((err.line, err.column), (1, 14));
    }

    #[test]
    fn positioned_errors() {
        let err = parse_domain("vars z1 z2;\nh1 = z1 * w;").unwrap_err();
        assert_eq!((err.line, err.column), (2, 11));
        assert!(err.message.contains("undeclared variable `w`"));

        let err = parse_domain("vars z;\nh2 = z;").unwrap_err();
        assert!(err.message.contains("expected `h1`"));

        let err = parse_domain("vars z; h1 = z; config { speed = 3; }").unwrap_err();
        assert!(err.message.contains("unknown config key"));

        let err = parse_domain("vars z; h1 = z^(2);").unwrap_err();
        assert!(err.message.contains("exponent"));

        let err = parse_domain("vars z; h1 = z / z;").unwrap_err();
        assert!(err.message.contains("non-constant"));

        assert!(parse_domain("vars h1; h1 = h1;").is_err());
        assert!(parse_domain("vars z;").is_err());
    }

    #[test]
    fn precedence_and_rationals() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = parse_polynomial("-x^2 + 1/2*(x - y)*2", &vars).unwrap();
        let q = parse_polynomial("x - y - x*x", &vars).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_polynomial("2^3", &vars).unwrap(), Polynomial::constant(2, int(8)));
        assert_eq!(parse_polynomial("(x^2)^3", &vars).unwrap(), parse_polynomial("x^6", &vars).unwrap());
        assert!(parse_polynomial("x^2^3", &vars).is_err());
    }

    #[test]
    fn comments_and_config() {
        let text = "# ball\nvars a b; # two\nh1 = a;\nh2 = b;\nconfig { seed = 9; max_level = 2; }\n";
        let f = parse_domain(text).unwrap();
        assert_eq!(f.config.get("seed"), Some(9));
        assert_eq!(
            print_domain(&f),
            "vars a b;\nh1 = a;\nh2 = b;\nconfig {\n  max_level = 2;\n  seed = 9;\n}\n"
        );
    }
}
