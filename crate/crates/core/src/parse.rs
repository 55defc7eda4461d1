//! Text grammar for differential polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := ('-'|'+') unary | power
//! power   := postfix ('^' integer)?
//! postfix := primary "'"*                  (N = 1 only)
//! primary := integer | name | 'd'<i>['^'<e>] '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names resolve to unknowns, then parameters, then the generators of ℚ(t̄).
//! Division is only allowed by nonzero field elements.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::funcfield::RationalFunction;
use crate::poly::DiffPolynomial;
use crate::ring::{DiffVariable, RingConfig};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(src: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = col;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token {
                tok: Tok::Int(s.parse().unwrap()),
                line,
                column: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line,
                column: start,
            });
        } else if "+-*/^()'".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                column: start,
            });
            i += 1;
            col += 1;
        } else {
            return Err(Error::Syntax {
                line,
                column: start,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: &'a Arc<RingConfig>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected `{c}`"))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => u32::try_from(n.clone()).or_else(|_| self.err(&t, "exponent too large")),
            _ => self.err(&t, "expected a nonnegative integer"),
        }
    }

    fn expr(&mut self) -> Result<DiffPolynomial> {
        let mut acc = if self.is_sym('-') {
            self.next();
            self.term()?.neg()
        } else {
            if self.is_sym('+') {
                self.next();
            }
            self.term()?
        };
        loop {
            if self.is_sym('+') {
                self.next();
                acc = acc.add(&self.term()?)?;
            } else if self.is_sym('-') {
                self.next();
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = acc.mul(&self.unary()?)?;
            } else if self.is_sym('/') {
                let t = self.next();
                let d = self.unary()?;
                let Some(c) = d.as_scalar() else {
                    return self.err(&t, "division by a non-constant expression");
                };
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<DiffPolynomial> {
        if self.is_sym('-') {
            self.next();
            return Ok(self.unary()?.neg());
        }
        if self.is_sym('+') {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<DiffPolynomial> {
        let base = self.postfix()?;
        if self.is_sym('^') {
            self.next();
            let k = self.uint()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<DiffPolynomial> {
        let mut p = self.primary()?;
        while self.is_sym('\'') {
            let t = self.next();
            if self.ring.n_derivations() != 1 {
                return self.err(&t, "prime shorthand requires exactly one derivation");
            }
            p = p.derive0(0);
        }
        Ok(p)
    }

    fn derivation_operator(name: &str) -> Option<usize> {
        let digits = name.strip_prefix('d')?;
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok()
    }

    fn primary(&mut self) -> Result<DiffPolynomial> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(DiffPolynomial::constant(
                self.ring,
                Coeff::from_integer(self.ring.field(), n),
            )),
            Tok::Sym('(') => {
                let p = self.expr()?;
                self.expect(')')?;
                Ok(p)
            }
            Tok::Ident(name) => {
                if let Some(i) = Self::derivation_operator(name) {
                    if self.is_sym('(') || self.is_sym('^') {
                        let n = self.ring.n_derivations();
                        if i == 0 || i > n {
                            return Err(Error::DerivationIndexOutOfRange {
                                index: i,
                                n,
                                line: t.line,
                                column: t.column,
                            });
                        }
                        let k = if self.is_sym('^') {
                            self.next();
                            self.uint()?
                        } else {
                            1
                        };
                        self.expect('(')?;
                        let mut p = self.expr()?;
                        self.expect(')')?;
                        for _ in 0..k {
                            p = p.derive0(i - 1);
                        }
                        return Ok(p);
                    }
                }
                if let Some(base) = self.ring.lookup(name) {
                    return Ok(DiffPolynomial::variable(
                        self.ring,
                        DiffVariable::new(base, vec![0; self.ring.n_derivations()]),
                    ));
                }
                let tparams = self.ring.field().function_params();
                if let Some(i) = tparams.iter().position(|s| s == name) {
                    return Ok(DiffPolynomial::constant(
                        self.ring,
                        Coeff::Function(RationalFunction::param(tparams.len(), i)),
                    ));
                }
                Err(Error::UnknownVariable {
                    name: name.clone(),
                    line: t.line,
                    column: t.column,
                })
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            Tok::Sym(c) => self.err(&t, format!("unexpected `{c}`")),
        }
    }
}

/// Parse one expression in `ring`.
pub fn parse_expression(src: &str, ring: &Arc<RingConfig>) -> Result<DiffPolynomial> {
    parse_expression_at(src, ring, 1)
}

/// Parse with error positions reported relative to `line`.
pub fn parse_expression_at(src: &str, ring: &Arc<RingConfig>, line: usize) -> Result<DiffPolynomial> {
    let toks = tokenize(src, line)?;
    let mut p = Parser { toks, pos: 0, ring };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(e)
}

/// Parse one expression per nonblank line; `#` starts a comment line.
pub fn parse_lines(src: &str, ring: &Arc<RingConfig>) -> Result<Vec<DiffPolynomial>> {
    src.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_expression_at(l, ring, i + 1))
        .collect()
}

/// Parse an element of ℚ(t̄) written with the given parameter names.
pub fn parse_rational_function(src: &str, params: &[String]) -> Result<RationalFunction> {
    let ring = Arc::new(RingConfig::new(
        1,
        vec![],
        vec![],
        crate::ring::CoefficientField::RationalFunctions(params.to_vec()),
    )?);
    let p = parse_expression(src, &ring)?;
    match p.as_scalar() {
        Some(c) => Ok(c.to_rational_function(params.len())),
        None => Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "expected a rational function".into(),
        }),
    }
}

/// Parse a ring description such as `N=2,vars=y1,y2,params=u,p=5`.
///
/// Keys: `N`, `vars`, `params`, `p` (prime field), `tparams` (ℚ(t̄) generators).
/// A comma-separated item without `=` extends the preceding list.
pub fn parse_ring(src: &str) -> Result<RingConfig> {
    let mut n: Option<usize> = None;
    let mut vars = Vec::new();
    let mut params = Vec::new();
    let mut tparams = Vec::new();
    let mut prime: Option<u64> = None;
    let mut current: Option<String> = None;
    let bad = |m: String| Error::InvalidRing(m);
    for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = match item.split_once('=') {
            Some((k, v)) => {
                current = Some(k.trim().to_string());
                (k.trim().to_string(), v.trim().to_string())
            }
            None => match &current {
                Some(k) if ["vars", "params", "tparams"].contains(&k.as_str()) => (k.clone(), item.to_string()),
                _ => return Err(bad(format!("unexpected item `{item}`"))),
            },
        };
        match key.as_str() {
            "N" => n = Some(value.parse().map_err(|_| bad(format!("bad N `{value}`")))?),
            "vars" => vars.push(value),
            "params" => params.push(value),
            "tparams" => tparams.push(value),
            "p" => prime = Some(value.parse().map_err(|_| bad(format!("bad p `{value}`")))?),
            "field" if value == "Q" => {}
            _ => return Err(bad(format!("unknown key `{key}`"))),
        }
    }
    let field = match (prime, tparams.is_empty()) {
        (Some(_), false) => return Err(bad("choose either p or tparams".into())),
        (Some(p), true) => crate::ring::CoefficientField::PrimeField(p),
        (None, false) => crate::ring::CoefficientField::RationalFunctions(tparams),
        (None, true) => crate::ring::CoefficientField::Rationals,
    };
    RingConfig::new(n.unwrap_or(1), vars, params, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CoefficientField;

    fn ring2() -> Arc<RingConfig> {
        Arc::new(RingConfig::rational(2, &["y1", "y2"]).unwrap())
    }

    #[test]
    fn two_derivation_expression() {
        let r = ring2();
        let p = parse_expression("d1^2(y1)*d2(y2) + 3/2*y1", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        let a = DiffPolynomial::variable(&r, DiffVariable::unknown(0, vec![2, 0]));
        let b = DiffPolynomial::variable(&r, DiffVariable::unknown(1, vec![0, 1]));
        let c = DiffPolynomial::unknown(&r, 0)
            .scale(&Coeff::Rational(num_rational::BigRational::new(3.into(), 2.into())));
        assert_eq!(p, a.mul(&b).unwrap().add(&c).unwrap());
        assert_eq!(p.to_string(), "d1^2(y1)*d2(y2) + 3/2*y1");
    }

    #[test]
    fn prime_shorthand() {
        let r = Arc::new(RingConfig::rational(1, &["y"]).unwrap());
        let p = parse_expression("y'' - y", &r).unwrap();
        let expected = DiffPolynomial::variable(&r, DiffVariable::unknown(0, vec![2]))
            .sub(&DiffPolynomial::unknown(&r, 0))
            .unwrap();
        assert_eq!(p, expected);
        assert_eq!(parse_expression("d1^2(y) - y", &r).unwrap(), expected);
    }

    #[test]
    fn derivation_index_out_of_range() {
        let r = ring2();
        assert!(matches!(
            parse_expression("d3(y1)", &r),
            Err(Error::DerivationIndexOutOfRange { index: 3, n: 2, line: 1, column: 1 })
        ));
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring2();
        assert!(matches!(
            parse_expression("y1 + z", &r),
            Err(Error::UnknownVariable { ref name, line: 1, column: 6 }) if name == "z"
        ));
        assert!(matches!(parse_expression("y1 +", &r), Err(Error::Syntax { column: 5, .. })));
        assert!(matches!(parse_expression("y1'", &r), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse_expression("y1 / y2", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("y1 / 0", &r), Err(Error::DivisionByZero)));
        assert!(matches!(parse_expression("y1 $", &r), Err(Error::Syntax { column: 4, .. })));
    }

    #[test]
    fn lines_report_line_numbers() {
        let r = ring2();
        let err = parse_lines("y1\n\ny2 +\n", &r).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
        assert_eq!(parse_lines("y1\n# c\ny2\n", &r).unwrap().len(), 2);
    }

    #[test]
    fn function_field_coefficients() {
        let r = Arc::new(
            RingConfig::new(1, vec!["y".into()], vec![], CoefficientField::RationalFunctions(vec!["t".into()])).unwrap(),
        );
        let p = parse_expression("t*y' - 1/(t+1)", &r).unwrap();
        assert_eq!(p.to_string(), "t*y' - (1)/(t + 1)");
        assert_eq!(parse_expression(&p.to_string(), &r).unwrap(), p);
        let d = parse_expression("d1(t^2)", &r).unwrap();
        assert_eq!(d.to_string(), "2*t");
    }

    #[test]
    fn ring_descriptions() {
        let r = parse_ring("N=2,vars=y1,y2,params=u").unwrap();
        assert_eq!(r.variables(), ["y1", "y2"]);
        assert_eq!(r.parameters(), ["u"]);
        let f = parse_ring("N=1,vars=y,p=5").unwrap();
        assert_eq!(f.field(), &CoefficientField::PrimeField(5));
        assert!(parse_ring("N=1,vars=y,p=6").is_err());
        assert!(parse_ring("N=1,bogus=1").is_err());
    }
}
