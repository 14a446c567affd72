use std::fmt;

use crate::poly::{parse_polynomial, PolyError, Variables};
use crate::scalar::Field;

use super::WeilError;

/// Text description of `D^r_n / I`: variable names, truncation order `r`,
/// extra relations and an optional reduction precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub variables: Vec<String>,
    pub order: u32,
    pub relations: Vec<String>,
    pub precedence: Option<Vec<String>>,
}

impl AlgebraSpec {
    pub fn new<S: AsRef<str>>(name: &str, variables: &[S], order: u32, relations: &[S]) -> AlgebraSpec {
        AlgebraSpec {
            name: name.to_string(),
            variables: variables.iter().map(|s| s.as_ref().to_string()).collect(),
            order,
            relations: relations.iter().map(|s| s.as_ref().to_string()).collect(),
            precedence: None,
        }
    }

    pub fn with_precedence<S: AsRef<str>>(mut self, precedence: &[S]) -> AlgebraSpec {
        self.precedence = Some(precedence.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }

    /// Parses `"Y > X"` (or `"Y>X"`) and installs it as the precedence.
    pub fn set_precedence_text(&mut self, text: &str) -> Result<(), WeilError> {
        let names: Vec<String> = text.split('>').map(|s| s.trim().to_string()).collect();
        if names.iter().any(String::is_empty) {
            return Err(WeilError::Precedence(text.to_string()));
        }
        self.precedence = Some(names);
        Ok(())
    }

    pub fn vars(&self) -> Variables {
        Variables::new(&self.variables)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra {} {{ vars: {}; order: {}; relations: {};",
            self.name,
            self.variables.join(", "),
            self.order,
            self.relations.join(", ")
        )?;
        if let Some(p) = &self.precedence {
            write!(f, " precedence: {};", p.join(" > "))?;
        }
        f.write_str(" }")
    }
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

impl<'a> Scanner<'a> {
    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, WeilError> {
        let (line, col) = line_col(self.text, offset);
        Err(WeilError::Parse { line, col, message: message.into() })
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = &self.text[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn ident(&mut self) -> Result<(usize, &'a str), WeilError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 {
            return self.error(start, "expected an identifier");
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn expect(&mut self, ch: char) -> Result<(), WeilError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            self.error(self.pos, format!("expected '{ch}'"))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    /// Raw text up to the next `;` or `}`, comments removed.
    fn value(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        let mut out = String::new();
        let mut chars = self.text[start..].char_indices().peekable();
        let mut end = self.text.len();
        while let Some((i, c)) = chars.next() {
            match c {
                ';' | '}' => {
                    end = start + i;
                    break;
                }
                '#' => {
                    // keep offsets aligned by blanking the comment
                    out.push(' ');
                    while let Some(&(_, d)) = chars.peek() {
                        if d == '\n' {
                            break;
                        }
                        out.extend(std::iter::repeat_n(' ', d.len_utf8()));
                        chars.next();
                    }
                }
                _ => out.push(c),
            }
        }
        self.pos = end;
        (start, out)
    }
}

fn split_list(start: usize, text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut offset = start;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        if !piece.trim().is_empty() {
            out.push((offset + lead, piece.trim().to_string()));
        }
        offset += piece.len() + 1;
    }
    out
}

fn parse_block(sc: &mut Scanner<'_>) -> Result<AlgebraSpec, WeilError> {
    let (at, kw) = sc.ident()?;
    if kw != "algebra" {
        return sc.error(at, format!("expected 'algebra', found '{kw}'"));
    }
    let (_, name) = sc.ident()?;
    sc.expect('{')?;
    let block_start = sc.pos;
    let mut vars: Option<Vec<(usize, String)>> = None;
    let mut order: Option<u32> = None;
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut precedence: Option<(usize, String)> = None;
    let mut seen: Vec<String> = Vec::new();
    while sc.peek() != Some('}') {
        if sc.at_end() {
            return sc.error(sc.pos, "unterminated algebra block");
        }
        let (kat, key) = sc.ident()?;
        if seen.iter().any(|k| k == key) {
            return sc.error(kat, format!("duplicate key '{key}'"));
        }
        seen.push(key.to_string());
        sc.expect(':')?;
        let (vat, value) = sc.value();
        match key {
            "vars" => {
                let list = split_list(vat, &value);
                for (o, v) in &list {
                    if !v.chars().all(|c| c.is_alphanumeric() || c == '_')
                        || !v.chars().next().is_some_and(char::is_alphabetic)
                    {
                        return sc.error(*o, format!("bad variable name '{v}'"));
                    }
                }
                if list.is_empty() {
                    return sc.error(vat, "at least one variable is required");
                }
                vars = Some(list);
            }
            "order" => match value.trim().parse::<u32>() {
                Ok(r) if r >= 1 => order = Some(r),
                _ => return sc.error(vat, format!("order must be a positive integer, found '{}'", value.trim())),
            },
            "relations" => relations = split_list(vat, &value),
            "precedence" => precedence = Some((vat, value.trim().to_string())),
            other => return sc.error(kat, format!("unknown key '{other}'")),
        }
        if sc.peek() == Some(';') {
            sc.expect(';')?;
        }
    }
    sc.expect('}')?;
    let Some(vars) = vars else { return sc.error(block_start, "missing 'vars'") };
    let Some(order) = order else { return sc.error(block_start, "missing 'order'") };
    let names: Vec<String> = vars.iter().map(|v| v.1.clone()).collect();
    let v = Variables::new(&names);
    for (o, r) in &relations {
        if let Err(PolyError::Parse { offset, message }) = parse_polynomial(r, &v, &Field::rationals()) {
            return sc.error(o + offset, message);
        }
    }
    let mut spec = AlgebraSpec {
        name: name.to_string(),
        variables: names,
        order,
        relations: relations.into_iter().map(|r| r.1).collect(),
        precedence: None,
    };
    if let Some((o, p)) = precedence {
        spec.set_precedence_text(&p).or_else(|_| sc.error(o, format!("bad precedence '{p}'")))?;
        let given = spec.precedence.as_ref().unwrap();
        let mut sorted = given.clone();
        sorted.sort();
        let mut expected = spec.variables.clone();
        expected.sort();
        if sorted != expected {
            return sc.error(o, format!("precedence '{p}' must list every variable once"));
        }
    }
    Ok(spec)
}

/// Parses every `algebra NAME { ... }` block of a spec file. Errors carry
/// 1-based line and column numbers.
pub fn parse_specs(text: &str) -> Result<Vec<AlgebraSpec>, WeilError> {
    let mut sc = Scanner { text, pos: 0 };
    let mut out = Vec::new();
    while !sc.at_end() {
        out.push(parse_block(&mut sc)?);
    }
    if out.is_empty() {
        return sc.error(text.len(), "no algebra block found");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# quartic\nalgebra q {\n  vars: X, Y;\n  order: 4;\n  relations: X^3*Y, X^2*Y^2, Y^4, X^3 - Y^3;\n  precedence: Y > X;\n}\n";
        let specs = parse_specs(text).unwrap();
        assert_eq!(specs.len(), 1);
        let s = &specs[0];
        assert_eq!(s.variables, ["X", "Y"]);
        assert_eq!(s.relations.len(), 4);
        assert_eq!(s.precedence.as_deref(), Some(&["Y".to_string(), "X".to_string()][..]));
        assert_eq!(parse_specs(&s.to_string()).unwrap()[0], *s);
    }

    #[test]
    fn empty_relations_and_comments() {
        let s = &parse_specs("algebra j { vars: X, Y; order: 1; relations: ; } # trailing").unwrap()[0];
        assert!(s.relations.is_empty());
        let s = &parse_specs("algebra j { vars: X; order: 1 }").unwrap()[0];
        assert_eq!(s.variables, ["X"]);
    }

    #[test]
    fn errors_have_positions() {
        let err = parse_specs("algebra t {\n  vars: X, Y;\n  order: 2;\n  relations: X^2, Z;\n}").unwrap_err();
        assert_eq!(err, WeilError::Parse { line: 4, col: 19, message: "unknown symbol 'Z'".into() });
        let err = parse_specs("algebra t { vars: X; order: zero; }").unwrap_err();
        assert!(matches!(err, WeilError::Parse { line: 1, col: 29, .. }), "{err:?}");
        assert!(parse_specs("algebra t { vars: X; }").is_err());
        assert!(parse_specs("algebra t { vars: X, Y; order: 2; precedence: Y > Z; }").is_err());
        assert!(parse_specs("").is_err());
    }
}
