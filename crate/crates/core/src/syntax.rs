//! Text form of series and degrees.
//!
//! Rendering lists terms by increasing degree and appends the cutoff as
//! `O(deg D)`:
//!
//! ```text
//! 1 + t + t^2 + t^3 + O(deg 4)
//! 1/2*t^-1 - 3*t^(2,0) + O(deg 3/2 + xi)
//! ```
//!
//! The expression language accepted by [`parse_expression`] extends this with
//! `*`, `/` by constants, parentheses, powers, `inv(e)` and `div(a, b)`.
//! Monomials are written `t^k` when `q = 1` and `t^(a,b,..)` (or products of
//! `t1`, `t2`, ...) otherwise.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::degree::{Cutoff, DegreeForm, DegreeValue, FormalRealBasis, LatticePoint};
use crate::error::{Error, Result};
use crate::series::{CoeffDomain, Series};

/// Canonical rendering of a series.
pub fn render(s: &Series) -> Result<String> {
    let form = s.form();
    let mut out = String::new();
    for (n, c, _) in s.sorted_terms()? {
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if n.is_zero() {
            out.push_str(&abs.to_string());
            continue;
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&render_monomial(&n, form.q()));
    }
    match s.cutoff() {
        Cutoff::Infinite => {
            if out.is_empty() {
                out.push('0');
            }
        }
        Cutoff::Finite(d) => {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str("O(deg ");
            out.push_str(&form.render(d));
            out.push(')');
        }
    }
    Ok(out)
}

fn render_monomial(n: &LatticePoint, q: usize) -> String {
    if q == 1 {
        match n.coords()[0] {
            1 => "t".into(),
            k => format!("t^{k}"),
        }
    } else {
        format!("t^{n}")
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
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

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if ch.is_whitespace() {
            bump(&mut chars);
        } else if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                bump(&mut chars);
            }
            out.push(Token {
                tok: Tok::Num(digits.parse().expect("digits")),
                line: l,
                column: c,
            });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                name.push(d);
                bump(&mut chars);
            }
            out.push(Token {
                tok: Tok::Ident(name),
                line: l,
                column: c,
            });
        } else if "+-*/^(),".contains(ch) {
            bump(&mut chars);
            out.push(Token {
                tok: Tok::Sym(ch),
                line: l,
                column: c,
            });
        } else {
            return Err(Error::Parse {
                line: l,
                column: c,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Const(BigRational),
    Mono(LatticePoint),
    Big(DegreeValue),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    DivConst(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Inv(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug)]
struct Expr {
    node: Node,
    line: usize,
    column: usize,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    form: &'a DegreeForm,
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

    fn error<T>(&self, tok: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        })
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek().tok == Tok::Sym(ch) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            let t = self.peek().clone();
            self.error(&t, format!("expected `{ch}`, found {}", describe(&t.tok)))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        let t = self.peek().clone();
        if t.tok != Tok::End {
            return self.error(&t, format!("unexpected {}", describe(&t.tok)));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let t = self.peek().clone();
            let node = match t.tok {
                Tok::Sym('+') => {
                    self.next();
                    Node::Add(Box::new(lhs), Box::new(self.term()?))
                }
                Tok::Sym('-') => {
                    self.next();
                    Node::Sub(Box::new(lhs), Box::new(self.term()?))
                }
                _ => return Ok(lhs),
            };
            lhs = Expr {
                node,
                line: t.line,
                column: t.column,
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let t = self.peek().clone();
            let node = match t.tok {
                Tok::Sym('*') => {
                    self.next();
                    Node::Mul(Box::new(lhs), Box::new(self.unary()?))
                }
                Tok::Sym('/') => {
                    self.next();
                    Node::DivConst(Box::new(lhs), Box::new(self.unary()?))
                }
                _ => return Ok(lhs),
            };
            lhs = Expr {
                node,
                line: t.line,
                column: t.column,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr {
                node: Node::Neg(Box::new(inner)),
                line: t.line,
                column: t.column,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let t = self.peek().clone();
        if !self.eat('^') {
            return Ok(base);
        }
        if let Node::Mono(n) = &base.node {
            let e = self.exponent(n)?;
            return Ok(Expr {
                node: Node::Mono(e),
                ..base
            });
        }
        let k = self.signed_int()?;
        let k = u32::try_from(k).or_else(|_| self.error(&t, "only monomials take negative powers"))?;
        Ok(Expr {
            node: Node::Pow(Box::new(base), k),
            line: t.line,
            column: t.column,
        })
    }

    /// Exponent of a monomial base `t^n`: a signed integer scaling `n`, or a
    /// vector `(a, b, ...)` when the base is the bare `t`.
    fn exponent(&mut self, base: &LatticePoint) -> Result<LatticePoint> {
        let q = self.form.q();
        let t = self.peek().clone();
        if self.eat('(') {
            let bare = q >= 2 && base.coords().iter().all(|&c| c == 1);
            let mut v = vec![self.signed_int()?];
            while self.eat(',') {
                v.push(self.signed_int()?);
            }
            self.expect(')')?;
            if v.len() == 1 {
                return Ok(scale_point(base, v[0]));
            }
            if !bare || v.len() != q {
                return self.error(
                    &t,
                    format!("exponent vector must have length {q} and follow a bare `t`"),
                );
            }
            return Ok(LatticePoint::new(v));
        }
        if q >= 2 && base.coords().iter().all(|&c| c == 1) {
            return self.error(&t, format!("`t` needs a vector exponent `t^(..)` when q = {q}"));
        }
        let k = self.signed_int()?;
        Ok(scale_point(base, k))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = self.eat('-');
        let t = self.next();
        let Tok::Num(n) = &t.tok else {
            return self.error(&t, format!("expected an integer, found {}", describe(&t.tok)));
        };
        let n = if negative { -n } else { n.clone() };
        n.to_i64()
            .map_or_else(|| self.error(&t, "exponent out of range"), Ok)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        let at = |node| Expr {
            node,
            line: t.line,
            column: t.column,
        };
        match &t.tok {
            Tok::Num(n) => Ok(at(Node::Const(BigRational::from_integer(n.clone())))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "inv" => {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(at(Node::Inv(Box::new(e))))
                }
                "div" => {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(',')?;
                    let b = self.expr()?;
                    self.expect(')')?;
                    Ok(at(Node::Div(Box::new(a), Box::new(b))))
                }
                "O" => {
                    self.expect('(')?;
                    let kw = self.next();
                    if kw.tok != Tok::Ident("deg".into()) {
                        return self.error(&kw, "expected `deg` after `O(`");
                    }
                    let d = self.degree()?;
                    self.expect(')')?;
                    Ok(at(Node::Big(d)))
                }
                _ => {
                    let q = self.form.q();
                    if name == "t" {
                        if q == 0 {
                            return self.error(&t, "there is no variable `t` when q = 0");
                        }
                        return Ok(at(Node::Mono(LatticePoint::new(vec![1; q]))));
                    }
                    if let Some(k) = name.strip_prefix('t').and_then(|k| k.parse::<usize>().ok()) {
                        if (1..=q).contains(&k) {
                            return Ok(at(Node::Mono(LatticePoint::unit(q, k - 1))));
                        }
                    }
                    self.error(&t, format!("unknown name `{name}`"))
                }
            },
            other => self.error(&t, format!("unexpected {}", describe(other))),
        }
    }

    /// A degree: a signed sum of rational multiples of basis symbols.
    fn degree(&mut self) -> Result<DegreeValue> {
        let basis = self.form.basis();
        parse_degree_tokens(self, basis)
    }
}

fn scale_point(base: &LatticePoint, k: i64) -> LatticePoint {
    LatticePoint::new(base.coords().iter().map(|c| c * k).collect())
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

fn parse_degree_tokens(p: &mut Parser<'_>, basis: &FormalRealBasis) -> Result<DegreeValue> {
    let mut coords = vec![BigRational::zero(); basis.dim()];
    let mut first = true;
    loop {
        let sign = if p.eat('-') {
            -BigRational::one()
        } else if first || p.eat('+') {
            BigRational::one()
        } else {
            break;
        };
        first = false;
        let t = p.peek().clone();
        let mut coeff = sign;
        let mut symbol = None;
        if let Tok::Num(n) = &t.tok {
            p.next();
            let mut value = BigRational::from_integer(n.clone());
            if p.eat('/') {
                let d = p.next();
                match &d.tok {
                    Tok::Num(m) if !m.is_zero() => value /= BigRational::from_integer(m.clone()),
                    _ => return p.error(&d, "expected a nonzero denominator"),
                }
            }
            coeff *= value;
            if p.eat('*') {
                symbol = Some(p.next());
            }
        } else {
            symbol = Some(p.next());
        }
        let slot = match symbol {
            None => 0,
            Some(s) => match &s.tok {
                Tok::Ident(name) => match basis.index_of(name) {
                    Some(k) => k,
                    None => return p.error(&s, format!("unknown basis symbol `{name}`")),
                },
                other => return p.error(&s, format!("expected a basis symbol, found {}", describe(other))),
            },
        };
        coords[slot] += coeff;
    }
    Ok(DegreeValue::new(coords))
}

/// Parses a degree such as `3/2 - 2*xi` over the given basis.
pub fn parse_degree(text: &str, basis: &FormalRealBasis) -> Result<DegreeValue> {
    let form = DegreeForm::trivial();
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        form: &form,
    };
    let d = parse_degree_tokens(&mut p, basis)?;
    p.expect_end()?;
    Ok(d)
}

/// Evaluation settings for [`parse_expression`].
#[derive(Clone, Debug)]
pub struct EvalContext {
    pub domain: CoeffDomain,
    /// Degree window for `inv` and `div`; they are rejected without one.
    pub precision: Option<DegreeValue>,
}

/// Parses and evaluates an expression. Arithmetic failures are reported with
/// the position of the operator that raised them.
pub fn parse_expression(text: &str, form: &Arc<DegreeForm>, ctx: &EvalContext) -> Result<Series> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        form,
    };
    let e = p.expr()?;
    p.expect_end()?;
    eval(&e, form, ctx)
}

/// Parses a series in canonical form (no `inv` or `div`).
pub fn parse_series(text: &str, form: &Arc<DegreeForm>, domain: CoeffDomain) -> Result<Series> {
    parse_expression(
        text,
        form,
        &EvalContext {
            domain,
            precision: None,
        },
    )
}

fn eval(e: &Expr, form: &Arc<DegreeForm>, ctx: &EvalContext) -> Result<Series> {
    let locate = |err: Error| match err {
        Error::Located { .. } | Error::Parse { .. } => err,
        other => Error::Located {
            line: e.line,
            column: e.column,
            source: Box::new(other),
        },
    };
    let go = |x: &Expr| eval(x, form, ctx);
    let needs_precision = |what: &str| {
        ctx.precision.clone().ok_or_else(|| {
            locate(Error::PrecisionExhausted(format!(
                "`{what}` needs a working precision"
            )))
        })
    };
    match &e.node {
        Node::Const(c) => Series::from_terms(
            form,
            ctx.domain,
            [(LatticePoint::zero(form.q()), c.clone())],
            Cutoff::Infinite,
        )
        .map_err(locate),
        Node::Mono(n) => Ok(Series::monomial(form, ctx.domain, n.clone(), BigRational::one())),
        Node::Big(d) => {
            if d.coords().len() != form.dim() {
                return Err(locate(Error::DimensionMismatch {
                    expected: form.dim(),
                    found: d.coords().len(),
                }));
            }
            Ok(Series::unknown(form, ctx.domain, d.clone()))
        }
        Node::Neg(a) => Ok(go(a)?.neg()),
        Node::Add(a, b) => go(a)?.add(&go(b)?).map_err(locate),
        Node::Sub(a, b) => go(a)?.sub(&go(b)?).map_err(locate),
        Node::Mul(a, b) => go(a)?.mul(&go(b)?).map_err(locate),
        Node::DivConst(a, b) => {
            let num = go(a)?;
            let den = go(b)?;
            let c = constant_value(&den).ok_or_else(|| {
                locate(Error::InvalidData(
                    "`/` divides by nonzero constants only; use div(a, b) for series".into(),
                ))
            })?;
            num.with_domain(CoeffDomain::Rationals)
                .and_then(|s| s.scale(&c.recip()))
                .and_then(|s| s.with_domain(ctx.domain.join(num.domain())))
                .map_err(locate)
        }
        Node::Pow(a, k) => {
            let base = go(a)?;
            let mut acc = Series::one(form, ctx.domain);
            for _ in 0..*k {
                acc = acc.mul(&base).map_err(locate)?;
            }
            Ok(acc)
        }
        Node::Inv(a) => {
            let m = needs_precision("inv")?;
            go(a)?.invert(&m).map_err(locate)
        }
        Node::Div(a, b) => {
            let m = needs_precision("div")?;
            go(a)?.divide(&go(b)?, &m).map_err(locate)
        }
    }
}

fn constant_value(s: &Series) -> Option<BigRational> {
    if !s.is_exact() || s.terms().len() != 1 {
        return None;
    }
    let (n, c) = s.terms().iter().next()?;
    n.is_zero().then(|| c.clone())
}

/// Parses `(a, b, ...)` or a bare integer as a lattice point.
pub fn parse_lattice_point(text: &str) -> Result<LatticePoint> {
    let form = DegreeForm::trivial();
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        form: &form,
    };
    let mut v = Vec::new();
    if p.eat('(') {
        if !p.eat(')') {
            v.push(p.signed_int()?);
            while p.eat(',') {
                v.push(p.signed_int()?);
            }
            p.expect(')')?;
        }
    } else {
        v.push(p.signed_int()?);
    }
    p.expect_end()?;
    Ok(LatticePoint::new(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic() -> Arc<DegreeForm> {
        Arc::new(DegreeForm::cyclic())
    }

    fn ctx(m: i64) -> EvalContext {
        EvalContext {
            domain: CoeffDomain::Integers,
            precision: Some(DegreeValue::integer(m, 1)),
        }
    }

    #[test]
    fn renders_geometric_inverse() {
        let f = cyclic();
        let s = parse_expression("inv(1 - t)", &f, &ctx(4)).unwrap();
        assert_eq!(render(&s).unwrap(), "1 + t + t^2 + t^3 + O(deg 4)");
    }

    #[test]
    fn exact_quotient_renders_without_cutoff() {
        let f = cyclic();
        let s = parse_expression("div(1 - t^2, 1 - t)", &f, &ctx(10)).unwrap();
        assert_eq!(render(&s).unwrap(), "1 + t");
    }

    #[test]
    fn reports_location_of_failing_operator() {
        let f = cyclic();
        let err = parse_expression("1 + inv(2 + t)", &f, &ctx(4)).unwrap_err();
        match err {
            Error::Located { line, column, source } => {
                assert_eq!((line, column), (1, 5));
                assert_eq!(*source, Error::NotAUnit { leading: "2".into() });
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let f = cyclic();
        let err = parse_series("1 +\n  * t", &f, CoeffDomain::Integers).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(
            parse_series("1 # t", &f, CoeffDomain::Integers),
            Err(Error::Parse { line: 1, column: 3, .. })
        ));
    }

    #[test]
    fn rational_coefficients_and_negative_powers() {
        let f = cyclic();
        let s = parse_series("1/2*t^-1 - 3 + O(deg 2)", &f, CoeffDomain::Rationals).unwrap();
        assert_eq!(render(&s).unwrap(), "1/2*t^-1 - 3 + O(deg 2)");
        assert!(matches!(
            parse_series("1/2*t", &f, CoeffDomain::Integers),
            Err(Error::Located { .. })
        ));
    }

    #[test]
    fn zero_states_render_distinctly() {
        let f = cyclic();
        assert_eq!(render(&Series::zero(&f, CoeffDomain::Integers)).unwrap(), "0");
        let u = parse_series("O(deg 3)", &f, CoeffDomain::Integers).unwrap();
        assert!(u.is_zero_up_to_precision());
        assert_eq!(render(&u).unwrap(), "O(deg 3)");
    }

    #[test]
    fn vector_exponents_over_irrational_form() {
        let f = Arc::new(DegreeForm::with_sqrt("xi", 2).unwrap());
        let s = parse_series("5*t^(2,0) - t2^3 + O(deg 4 + xi)", &f, CoeffDomain::Integers).unwrap();
        assert_eq!(render(&s).unwrap(), "5*t^(2,0) - t^(0,3) + O(deg 4 + xi)");
        let back = parse_series(&render(&s).unwrap(), &f, CoeffDomain::Integers).unwrap();
        assert_eq!(back, s);
        assert!(parse_series("t^2", &f, CoeffDomain::Integers).is_err());
    }

    #[test]
    fn degrees_parse_over_basis() {
        let f = DegreeForm::with_sqrt("xi", 2).unwrap();
        let d = parse_degree("3/2 - 2*xi", f.basis()).unwrap();
        assert_eq!(f.render(&d), "3/2 - 2*xi");
        assert_eq!(parse_degree("-xi + 1", f.basis()).unwrap(), parse_degree("1 - xi", f.basis()).unwrap());
        assert!(parse_degree("2*eta", f.basis()).is_err());
    }

    #[test]
    fn lattice_points() {
        assert_eq!(parse_lattice_point("(1, -2)").unwrap(), LatticePoint::from(vec![1, -2]));
        assert_eq!(parse_lattice_point("-3").unwrap(), LatticePoint::from(vec![-3]));
        assert_eq!(parse_lattice_point("()").unwrap(), LatticePoint::zero(0));
    }

    #[test]
    fn powers_of_polynomials() {
        let f = cyclic();
        let s = parse_series("(1 - t)^2", &f, CoeffDomain::Integers).unwrap();
        assert_eq!(render(&s).unwrap(), "1 - 2*t + t^2");
    }
}
