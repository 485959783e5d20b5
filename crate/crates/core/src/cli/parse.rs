use std::fmt;

use thiserror::Error;

use crate::coeff::{RatFunc, Scalar};
use crate::freealg::{AlgebraError, Poly, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("negative power of a non-invertible expression at position {position}")]
    NegativePowerOfNonInvertible { position: usize },
    #[error("division by a non-scalar expression at position {position}")]
    NonScalarDivisor { position: usize },
    #[error("division by zero at position {position}")]
    DivisionByZero { position: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    P,
    Q,
}

/// Parsed expression; generator symbols are already resolved to indices.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr<S> {
    Num(S),
    Param(Param),
    Gen(usize),
    Add(Box<Expr<S>>, Box<Expr<S>>),
    Sub(Box<Expr<S>>, Box<Expr<S>>),
    Mul(Box<Expr<S>>, Box<Expr<S>>),
    /// Divisor position is kept for error reporting.
    Div(Box<Expr<S>>, Box<Expr<S>>, usize),
    Pow(Box<Expr<S>>, i64, usize),
    Neg(Box<Expr<S>>),
    Group(Box<Expr<S>>),
}

/// Generator names and declared inverses visible to the parser.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    names: Vec<String>,
    inverses: Vec<Option<usize>>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let mut inverses = vec![None; names.len()];
        for &(a, b) in pairs {
            inverses[a] = Some(b);
            inverses[b] = Some(a);
        }
        Alphabet { names, inverses }
    }

    pub fn of<S: Scalar>(pres: &Presentation<RatFunc<S>>) -> Self {
        Self::new(pres.generators().iter().map(|g| g.name.clone()).collect(), pres.inverses())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()=".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { position: i, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
    alphabet: &'a Alphabet,
}

const MAX_DEPTH: usize = 200;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.here(), message: message.into() })
    }

    fn expr<S: Scalar>(&mut self) -> Result<Expr<S>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term<S: Scalar>(&mut self) -> Result<Expr<S>, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                self.pos += 1;
                let at = self.here();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        Ok(())
    }

    fn factor<S: Scalar>(&mut self) -> Result<Expr<S>, ParseError> {
        if self.eat('-') {
            self.enter()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let at = self.here();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some(Tok::Num(digits)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        let Ok(n) = digits.parse::<i64>() else {
            return self.err("exponent too large");
        };
        self.pos += 1;
        let n = if negative { -n } else { n };
        if n < 0 {
            if let Expr::Gen(g) = base {
                if self.alphabet.inverses[g].is_none() {
                    return Err(ParseError::NegativePowerOfNonInvertible { position: at });
                }
            }
        }
        Ok(Expr::Pow(Box::new(base), n, at))
    }

    fn atom<S: Scalar>(&mut self) -> Result<Expr<S>, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(d)) => {
                self.pos += 1;
                let ten = S::from_int(10);
                let v = d.chars().fold(S::zero(), |acc, ch| acc * ten.clone() + S::from_int(ch as i64 - '0' as i64));
                Ok(Expr::Num(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(g) = self.alphabet.names.iter().position(|n| *n == name) {
                    return Ok(Expr::Gen(g));
                }
                match name.as_str() {
                    "p" => Ok(Expr::Param(Param::P)),
                    "q" => Ok(Expr::Param(Param::Q)),
                    _ => Err(ParseError::UnknownGenerator { name, position: at }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                self.enter()?;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                self.depth -= 1;
                Ok(Expr::Group(Box::new(inner)))
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_tokens<S: Scalar>(input: &str, alphabet: &Alphabet, allow_eq: bool) -> Result<(Expr<S>, Option<Expr<S>>), ParseError> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax { position: 0, message: "empty input".into() });
    }
    let mut parser = Parser { toks, pos: 0, end: input.chars().count(), depth: 0, alphabet };
    let lhs = parser.expr()?;
    let rhs = if allow_eq && parser.eat('=') { Some(parser.expr()?) } else { None };
    if parser.pos < parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok((lhs, rhs))
}

/// Parse an expression over the generators of `pres`.
pub fn parse<S: Scalar>(input: &str, pres: &Presentation<RatFunc<S>>) -> Result<Expr<S>, ParseError> {
    parse_with(input, &Alphabet::of(pres))
}

pub fn parse_with<S: Scalar>(input: &str, alphabet: &Alphabet) -> Result<Expr<S>, ParseError> {
    Ok(parse_tokens(input, alphabet, false)?.0)
}

/// Parse `lhs = rhs` (or a bare `lhs`, meaning `lhs = 0`) into `lhs - rhs`, unreduced.
pub fn parse_relation<S: Scalar>(input: &str, alphabet: &Alphabet) -> Result<Poly<RatFunc<S>>, ParseError> {
    let (lhs, rhs) = parse_tokens::<S>(input, alphabet, true)?;
    let l = interpret(&lhs, alphabet, None)?;
    Ok(match rhs {
        Some(r) => &l - &interpret(&r, alphabet, None)?,
        None => l,
    })
}

/// Parse a coefficient: integers, `p`, `q`, `+ - * / ^` and parentheses.
pub fn parse_coeff<S: Scalar>(input: &str) -> Result<RatFunc<S>, ParseError> {
    let alphabet = Alphabet::default();
    let e = parse_with(input, &alphabet)?;
    let poly = interpret(&e, &alphabet, None)?;
    Ok(poly.as_constant().unwrap_or_else(num_traits::Zero::zero))
}

/// Interpret and reduce to normal form.
pub fn eval_expr<S: Scalar>(e: &Expr<S>, pres: &Presentation<RatFunc<S>>) -> Result<Poly<RatFunc<S>>, ParseError> {
    let poly = interpret(e, &Alphabet::of(pres), Some(pres))?;
    Ok(pres.normal_form(&poly)?)
}

/// Parse and reduce in one step.
pub fn reduce_str<S: Scalar>(input: &str, pres: &Presentation<RatFunc<S>>) -> Result<Poly<RatFunc<S>>, ParseError> {
    eval_expr(&parse(input, pres)?, pres)
}

/// Interpret `e` as a polynomial. With a presentation, products are reduced
/// as they are formed.
pub fn interpret<S: Scalar>(
    e: &Expr<S>,
    alphabet: &Alphabet,
    pres: Option<&Presentation<RatFunc<S>>>,
) -> Result<Poly<RatFunc<S>>, ParseError> {
    type P<S> = Poly<RatFunc<S>>;
    let mul = |a: &P<S>, b: &P<S>| -> Result<P<S>, ParseError> {
        Ok(match pres {
            Some(pr) => pr.mul(a, b)?,
            None => a * b,
        })
    };
    Ok(match e {
        Expr::Num(v) => Poly::constant(RatFunc::constant(v.clone())),
        Expr::Param(Param::P) => Poly::constant(RatFunc::p()),
        Expr::Param(Param::Q) => Poly::constant(RatFunc::q()),
        Expr::Gen(g) => Poly::generator(*g),
        Expr::Add(a, b) => &interpret(a, alphabet, pres)? + &interpret(b, alphabet, pres)?,
        Expr::Sub(a, b) => &interpret(a, alphabet, pres)? - &interpret(b, alphabet, pres)?,
        Expr::Mul(a, b) => mul(&interpret(a, alphabet, pres)?, &interpret(b, alphabet, pres)?)?,
        Expr::Div(a, b, at) => {
            let d = interpret(b, alphabet, pres)?;
            if d.is_zero() {
                return Err(ParseError::DivisionByZero { position: *at });
            }
            let c = d.as_constant().ok_or(ParseError::NonScalarDivisor { position: *at })?;
            let inv = c.inv().map_err(|_| ParseError::DivisionByZero { position: *at })?;
            interpret(a, alphabet, pres)?.scale(&inv)
        }
        Expr::Pow(a, n, at) => {
            let base = interpret(a, alphabet, pres)?;
            let base = if *n < 0 { invert(&base, alphabet).ok_or(ParseError::NegativePowerOfNonInvertible { position: *at })? } else { base };
            let mut acc = Poly::one();
            for _ in 0..n.unsigned_abs() {
                acc = mul(&acc, &base)?;
            }
            acc
        }
        Expr::Neg(a) => -interpret(a, alphabet, pres)?,
        Expr::Group(a) => interpret(a, alphabet, pres)?,
    })
}

/// Inverse of a nonzero scalar or of a single term over invertible letters.
fn invert<S: Scalar>(p: &Poly<RatFunc<S>>, alphabet: &Alphabet) -> Option<Poly<RatFunc<S>>> {
    if p.num_terms() != 1 {
        return None;
    }
    let (w, c) = p.terms().next()?;
    let letters: Option<Vec<usize>> = w.letters().rev().map(|g| alphabet.inverses[g]).collect();
    Some(Poly::term(Word::from_letters(letters?), c.inv().ok()?))
}

impl<S: Scalar> fmt::Display for Expr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Param(Param::P) => f.write_str("p"),
            Expr::Param(Param::Q) => f.write_str("q"),
            Expr::Gen(g) => write!(f, "g{g}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b, _) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n, _) => write!(f, "{a}^{n}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Group(a) => write!(f, "{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::One;

    fn abc() -> Alphabet {
        Alphabet::new(vec!["a".into(), "b".into(), "binv".into()], &[(1, 2)])
    }

    fn rf(s: &str) -> RatFunc<Rat> {
        parse_coeff(s).unwrap()
    }

    #[test]
    fn coefficient_syntax() {
        assert_eq!(rf("(p - q^-1)/(1 + p*q)"), &(&RatFunc::p() - &RatFunc::q().inv().unwrap()) / &(&RatFunc::one() + &(&RatFunc::p() * &RatFunc::q())));
        assert_eq!(rf("1/2*q"), RatFunc::monomial(Rat::new(1.into(), 2.into()), 0, 1));
        assert_eq!(rf("2^-2"), RatFunc::constant(Rat::new(1.into(), 4.into())));
    }

    #[test]
    fn unary_minus_sits_below_power() {
        assert_eq!(rf("-p^2"), -RatFunc::monomial(Rat::from_integer(1.into()), 2, 0));
        assert_eq!(rf("-(p)^2"), -RatFunc::monomial(Rat::from_integer(1.into()), 2, 0));
        assert_eq!(rf("(-p)^2"), RatFunc::monomial(Rat::from_integer(1.into()), 2, 0));
    }

    #[test]
    fn relation_with_equals() {
        let r: Poly<RatFunc<Rat>> = parse_relation("a*b = p*b*a", &abc()).unwrap();
        let expect = &Poly::word(Word::from_letters([0, 1])) - &Poly::term(Word::from_letters([1, 0]), RatFunc::p());
        assert_eq!(r, expect);
    }

    #[test]
    fn negative_powers() {
        let e: Expr<Rat> = parse_with("b^-2", &abc()).unwrap();
        let p = interpret(&e, &abc(), None).unwrap();
        assert_eq!(p, Poly::word(Word::from_letters([2, 2])));
        let err = parse_with::<Rat>("a^-1", &abc()).unwrap_err();
        assert_eq!(err, ParseError::NegativePowerOfNonInvertible { position: 0 });
        let e: Expr<Rat> = parse_with("(a*b)^-1", &abc()).unwrap();
        assert!(matches!(interpret(&e, &abc(), None), Err(ParseError::NegativePowerOfNonInvertible { position: 0 })));
    }

    #[test]
    fn error_positions() {
        let err = parse_with::<Rat>("a * * b", &abc()).unwrap_err();
        assert_eq!(err, ParseError::Syntax { position: 4, message: "unexpected `*`".into() });
        let err = parse_with::<Rat>("a + zz", &abc()).unwrap_err();
        assert_eq!(err, ParseError::UnknownGenerator { name: "zz".into(), position: 4 });
        assert!(matches!(parse_with::<Rat>("a b", &abc()), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_with::<Rat>("(a", &abc()), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_with::<Rat>("a # b", &abc()), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_with::<Rat>("", &abc()), Err(ParseError::Syntax { position: 0, .. })));
    }

    #[test]
    fn division_needs_a_scalar() {
        let e: Expr<Rat> = parse_with("a / b", &abc()).unwrap();
        assert_eq!(interpret(&e, &abc(), None), Err(ParseError::NonScalarDivisor { position: 4 }));
        let e: Expr<Rat> = parse_with("a / (p - p)", &abc()).unwrap();
        assert_eq!(interpret(&e, &abc(), None), Err(ParseError::DivisionByZero { position: 4 }));
    }
}
