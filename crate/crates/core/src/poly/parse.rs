use num_bigint::BigInt;

use super::{PolyError, Polynomial, Variables};
use crate::scalar::{Field, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Num(digits.parse().unwrap())));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            i += 1;
        } else if ch == '−' {
            out.push((pos, Tok::Op('-')));
            i += 1;
        } else {
            return Err(PolyError::Parse { offset: pos, message: format!("unexpected character '{ch}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Variables,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.vars, self.field);
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Op('+')) => self.pos += 1,
            Some(Tok::Op('-')) => {
                sign = -1;
                self.pos += 1
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.power()?;
                    let c = match d.constant_value() {
                        Some(c) if !c.is_zero() => c,
                        _ => {
                            return Err(PolyError::Parse {
                                offset: at,
                                message: "division only by nonzero constants".into(),
                            })
                        }
                    };
                    acc = acc.scale(&c.inv()?);
                }
                // juxtaposition
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        // in `AB^2` the exponent binds to the last letter only
        let (prefix, base) = match self.peek().cloned() {
            Some(Tok::Ident(name)) if self.is_run_together(&name) => {
                let at = self.offset();
                self.pos += 1;
                let (head, last) = name.split_at(name.len() - name.chars().last().unwrap().len_utf8());
                (self.identifier(head, at)?, self.identifier(last, at)?)
            }
            _ => (Polynomial::one(self.vars, self.field), self.atom()?),
        };
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| PolyError::Parse {
                        offset: self.offset(),
                        message: "exponent too large".into(),
                    })?;
                    Ok(&prefix * &base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(&prefix * &base)
        }
    }

    fn is_run_together(&self, name: &str) -> bool {
        name.chars().count() > 1
            && self.vars.index_of(name).is_none()
            && (self.field.is_rationals() || name != self.field.generator_name())
            && name.chars().all(|ch| self.vars.index_of(&ch.to_string()).is_some())
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars, self.field.from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.identifier(&name, at)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn identifier(&self, name: &str, at: usize) -> Result<Polynomial, PolyError> {
        if let Some(i) = self.vars.index_of(name) {
            return Ok(Polynomial::var(self.vars, self.field, i));
        }
        if !self.field.is_rationals() && name == self.field.generator_name() {
            return Ok(Polynomial::constant(self.vars, self.field.generator()));
        }
        // run-together single-letter variables, e.g. `XY` or `AB`
        let mut acc = Polynomial::one(self.vars, self.field);
        for ch in name.chars() {
            match self.vars.index_of(&ch.to_string()) {
                Some(i) => acc = &acc * &Polynomial::var(self.vars, self.field, i),
                None => return Err(PolyError::Parse { offset: at, message: format!("unknown symbol '{name}'") }),
            }
        }
        Ok(acc)
    }
}

/// Parses `+ - * / ^` expressions with integer literals; `*` may be omitted
/// between factors. Division is only allowed by nonzero constants. When the
/// field is a proper extension its generator name is accepted as a constant.
pub fn parse_polynomial(text: &str, vars: &Variables, field: &Field) -> Result<Polynomial, PolyError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(PolyError::Parse { offset: 0, message: "empty polynomial".into() });
    }
    let mut parser = Parser { toks, pos: 0, end: text.len(), vars, field };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn juxtaposition_and_powers() {
        let v = Variables::new(&["A", "B", "K"]);
        let q = Field::rationals();
        let a = parse_polynomial("3AB^2K", &v, &q).unwrap();
        let b = parse_polynomial("3*A*B^2*K", &v, &q).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("(A+B)^2", &v, &q).unwrap().to_string(), "A^2 + 2*A*B + B^2");
        assert_eq!(parse_polynomial("A/2 - 3/4", &v, &q).unwrap().to_string(), "1/2*A - 3/4");
    }

    #[test]
    fn extension_generator() {
        let v = Variables::new(&["J", "K"]);
        let k = Field::real_root("c", 3, &rat(4)).unwrap();
        let p = parse_polynomial("J - c*K", &v, &k).unwrap();
        assert_eq!(p.to_string(), "J + (-c)*K");
    }

    #[test]
    fn errors_carry_offsets() {
        let v = Variables::new(&["X", "Y"]);
        let q = Field::rationals();
        match parse_polynomial("X^2 + Z", &v, &q) {
            Err(PolyError::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("X^", &v, &q).is_err());
        assert!(parse_polynomial("X/Y", &v, &q).is_err());
        assert!(parse_polynomial("(X", &v, &q).is_err());
        assert!(parse_polynomial("", &v, &q).is_err());
    }
}
