//! Expression syntax for algebra elements.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := ['-'] [scalar '*'] factor+        (juxtaposition multiplies)
//! factor  := pathref ['^*'] | '(' expr ')'
//! pathref := vertex-id | edge-id ('.' edge-id)*
//! scalar  := integer | integer '/' integer
//! ```
//!
//! `a.b^*` is `s_{(ab)*}`; the literal `0` is the zero element.

use thiserror::Error;

use crate::algebra::{KPElement, Kp};
use crate::field::Scalar;
use crate::kgraph::Path;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Plus,
    Minus,
    Star,
    Slash,
    Adjoint,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((col, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((col, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::Close));
                i += 1;
            }
            '^' => {
                if chars.get(i + 1) != Some(&'*') {
                    return Err(ExprError {
                        column: col,
                        message: "expected `^*`".into(),
                    });
                }
                out.push((col, Tok::Adjoint));
                i += 2;
            }
            _ if c.is_ascii_alphanumeric() || c == '_' || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                out.push((col, Tok::Word(chars[start..i].iter().collect())));
            }
            _ => {
                return Err(ExprError {
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a, 'g> {
    kp: &'a Kp<'g>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a, 'g> Parser<'a, 'g> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn is_number(w: &str) -> bool {
        !w.is_empty() && w.chars().all(|c| c.is_ascii_digit())
    }

    fn expr(&mut self) -> Result<KPElement, ExprError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar(&mut self) -> Result<Option<Scalar>, ExprError> {
        let Some(Tok::Word(w)) = self.peek() else {
            return Ok(None);
        };
        if !Self::is_number(w) {
            return Ok(None);
        }
        let num = w.clone();
        let (den, width) = match (self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::Slash), Some(Tok::Word(d))) if Self::is_number(d) => (Some(d.clone()), 3),
            (Some(Tok::Star), _) => (None, 1),
            _ => return Ok(None),
        };
        let field = self.kp.field();
        let parse = |s: &str| s.parse::<i64>().ok();
        let (Some(n), d) = (parse(&num), den.as_deref().map(parse)) else {
            return self.fail("integer out of range");
        };
        let value = match d {
            None => field.int(n),
            Some(None) => return self.fail("integer out of range"),
            Some(Some(d)) => match field.ratio(n, d) {
                Ok(v) => v,
                Err(e) => return self.fail(e.to_string()),
            },
        };
        self.pos += width;
        if self.peek() != Some(&Tok::Star) {
            return self.fail("expected `*` after scalar");
        }
        self.pos += 1;
        Ok(Some(value))
    }

    fn product(&mut self) -> Result<KPElement, ExprError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let coefficient = self.scalar()?;
        let mut acc: Option<KPElement> = None;
        while let Some(f) = self.factor()? {
            acc = Some(match acc {
                None => f,
                Some(a) => self.kp.mul(&a, &f),
            });
        }
        let Some(mut value) = acc else {
            return self.fail("expected a path, `0` or `(`");
        };
        if let Some(c) = coefficient {
            value = value.scale(&c);
        }
        Ok(if negate { value.neg() } else { value })
    }

    fn factor(&mut self) -> Result<Option<KPElement>, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(Some(inner))
            }
            Some(Tok::Word(w)) => {
                let g = self.kp.graph();
                if w == "0" && g.ident("0").is_none() {
                    self.pos += 1;
                    return Ok(Some(self.kp.zero()));
                }
                let path = match g.parse_path(&w) {
                    Ok(p) => p,
                    Err(e) => return self.fail(e.to_string()),
                };
                self.pos += 1;
                if self.peek() == Some(&Tok::Adjoint) {
                    self.pos += 1;
                    Ok(Some(self.kp.s_star(&path)))
                } else {
                    Ok(Some(self.kp.s(&path)))
                }
            }
            _ => Ok(None),
        }
    }
}

pub fn parse_element(kp: &Kp<'_>, text: &str) -> Result<KPElement, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser {
        kp,
        toks,
        pos: 0,
        end: text.chars().count() + 1,
    };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(value)
}

fn term_text(kp: &Kp<'_>, lambda: &Path, mu: &Path) -> String {
    let g = kp.graph();
    match (lambda.is_vertex(), mu.is_vertex()) {
        (_, true) => g.path_name(lambda),
        (true, false) => format!("{}^*", g.path_name(mu)),
        (false, false) => format!("{} {}^*", g.path_name(lambda), g.path_name(mu)),
    }
}

/// Prints an element in the grammar above; `parse_element` reads it back.
pub fn format_element(kp: &Kp<'_>, a: &KPElement) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, ((lambda, mu), c)) in a.terms().iter().enumerate() {
        let (negative, magnitude) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&term_text(kp, lambda, mu));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::Field;
    use crate::kgraph::VertexId;

    #[test]
    fn parses_cuntz_relation() {
        let g = corpus::e_n(2);
        let kp = Kp::new(&g, Field::Rational);
        let lhs = parse_element(&kp, "v - a a^* - b b^*").unwrap();
        assert!(kp.is_zero(&lhs));
        let x = parse_element(&kp, "a^* a").unwrap();
        assert!(kp.equals(&x, &kp.vertex(VertexId(0))));
        let y = parse_element(&kp, "a.b^*").unwrap();
        assert_eq!(y, kp.s_star(&g.parse_path("a.b").unwrap()));
    }

    #[test]
    fn scalars_and_parentheses() {
        let g = corpus::e_n(2);
        let kp = Kp::new(&g, Field::Rational);
        let x = parse_element(&kp, "1/2*(a + a) - a").unwrap();
        assert!(kp.is_zero(&x));
        let y = parse_element(&kp, "-3*b b^* + 3*b b^*").unwrap();
        assert!(y.is_empty());
        assert!(parse_element(&kp, "0").unwrap().is_empty());
    }

    #[test]
    fn errors_have_columns() {
        let g = corpus::e_n(2);
        let kp = Kp::new(&g, Field::Rational);
        let e = parse_element(&kp, "a + zz").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_element(&kp, "a +").is_err());
        assert!(parse_element(&kp, "(a").is_err());
        assert!(parse_element(&kp, "a ^ b").is_err());
        assert!(parse_element(&kp, "1/0*a").is_err());
    }

    #[test]
    fn format_round_trip() {
        let g = corpus::t2();
        let kp = Kp::new(&g, Field::Rational);
        let x = parse_element(&kp, "2/3*e f^* - e.f e.f^* + v + f^*").unwrap();
        let text = format_element(&kp, &x);
        assert_eq!(parse_element(&kp, &text).unwrap(), x);
        assert_eq!(format_element(&kp, &kp.zero()), "0");
    }
}
