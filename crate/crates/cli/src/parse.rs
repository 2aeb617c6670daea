//! Expressions in the exterior algebra.
//!
//! ```text
//! element  := ['+'|'-'] term (('+'|'-') term)*
//! term     := rational | [rational '*'] factor ('*' factor)*
//! factor   := 'e' digits | '(' element ')'
//! rational := integer ['/' positive-integer]
//! ```
//!
//! `*` is the exterior product. `−` (U+2212) is accepted as a minus sign and
//! whitespace is ignored.

use extkoszul::{Error, ExtElement, Ideal, LinearForm, Q, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    /// Products that vanished (e.g. `e1*e1`), as human-readable notes.
    pub warnings: Vec<String>,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    n: usize,
    text: &'a str,
    warnings: Vec<String>,
}

fn syntax(pos: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("at position {pos}: {msg}"))
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, n: usize) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, n, text, warnings: Vec::new() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn element(&mut self) -> Result<ExtElement> {
        let mut acc = ExtElement::zero(self.n);
        let mut neg = self.sign().unwrap_or(false);
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            match self.sign() {
                Some(s) => neg = s,
                None => return Ok(acc),
            }
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn rational(&mut self) -> Result<Option<Q>> {
        let Some(num) = self.digits() else { return Ok(None) };
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.offset();
            let den = self.digits().ok_or_else(|| syntax(at, "expected a denominator"))?;
            if den == BigInt::from(0) {
                return Err(syntax(at, "zero denominator"));
            }
            return Ok(Some(Q::new(num, den)));
        }
        Ok(Some(Q::from_integer(num)))
    }

    fn term(&mut self) -> Result<ExtElement> {
        let coeff = self.rational()?;
        let mut acc = match &coeff {
            Some(c) => {
                if self.peek() != Some('*') {
                    return Ok(ExtElement::one(self.n).scale(c));
                }
                self.pos += 1;
                ExtElement::one(self.n).scale(c)
            }
            None => ExtElement::one(self.n),
        };
        loop {
            let at = self.offset();
            let f = self.factor()?;
            let before = acc.is_zero();
            acc = &acc * &f;
            if acc.is_zero() && !before && !f.is_zero() {
                self.warnings.push(format!("product vanishes at position {at}"));
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ExtElement> {
        let at = self.offset();
        match self.bump() {
            Some('e') => {
                let i = self.digits().ok_or_else(|| syntax(at, "expected a variable index after 'e'"))?;
                let i: usize = i.try_into().map_err(|_| syntax(at, "variable index too large"))?;
                if i == 0 || i > self.n {
                    return Err(Error::VariableOutOfRange { index: i, n: self.n });
                }
                Ok(ExtElement::var(self.n, i))
            }
            Some('(') => {
                let e = self.element()?;
                let close = self.offset();
                match self.bump() {
                    Some(')') => Ok(e),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(c) => Err(syntax(at, format!("unexpected '{c}'"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Largest variable index mentioned in `text`.
pub fn max_variable(text: &str) -> usize {
    let mut best = 0;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == 'e' {
            let mut d = String::new();
            while let Some(x) = chars.peek().filter(|x| x.is_ascii_digit()) {
                d.push(*x);
                chars.next();
            }
            best = best.max(d.parse().unwrap_or(0));
        }
    }
    best
}

pub fn parse_element(text: &str, n: usize) -> Result<Parsed<ExtElement>> {
    let mut p = Parser::new(text, n);
    if p.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    let value = p.element()?;
    if p.peek().is_some() {
        let at = p.offset();
        return Err(syntax(at, format!("unexpected '{}'", p.peek().unwrap())));
    }
    Ok(Parsed { value, warnings: p.warnings })
}

/// Comma- or semicolon-separated generators.
pub fn parse_ideal(text: &str, n: usize) -> Result<Parsed<Ideal>> {
    let mut gens = Vec::new();
    let mut warnings = Vec::new();
    for part in text.split([',', ';']).filter(|s| !s.trim().is_empty()) {
        let p = parse_element(part, n)?;
        warnings.extend(p.warnings);
        gens.push(p.value);
    }
    Ok(Parsed { value: Ideal::new(n, gens)?, warnings })
}

pub fn parse_form(text: &str, n: usize) -> Result<LinearForm> {
    let p = parse_element(text, n)?;
    LinearForm::from_element(&p.value)
}

pub fn parse_list(text: &str, n: usize) -> Result<Parsed<Vec<ExtElement>>> {
    let p = parse_ideal(text, n)?;
    Ok(Parsed { value: p.value.generators().to_vec(), warnings: p.warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> ExtElement {
        parse_element(s, 4).unwrap().value
    }

    #[test]
    fn products_expand_with_signs() {
        assert_eq!(el("(e1-e4)*(e2+e3)").to_string(), "e1*e2 + e1*e3 + e2*e4 + e3*e4");
        assert_eq!(el("e2*e1"), el("-e1*e2"));
        assert_eq!(el("e1*e2 − e3*e4"), el("e1*e2 - e3*e4"));
    }

    #[test]
    fn vanishing_products_warn() {
        let p = parse_element("e1*e1", 4).unwrap();
        assert!(p.value.is_zero());
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn rationals_and_constants() {
        assert_eq!(el("1/2*e1 + 3").to_string(), "3 + 1/2*e1");
        assert_eq!(el("-2/4*e1"), el("-1/2*e1"));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_element("e1 + * e2", 4), Err(Error::Parse(m)) if m.contains("position 5")));
        assert!(matches!(parse_element("e9", 4), Err(Error::VariableOutOfRange { .. })));
        assert!(parse_element("(e1", 4).is_err());
        assert!(parse_element("1/0*e1", 4).is_err());
    }

    #[test]
    fn ideals_and_forms() {
        let i = parse_ideal("e1*e2 - e3*e4, e1*e3 - e2*e4", 4).unwrap().value;
        assert_eq!(i.generators().len(), 2);
        assert_eq!(parse_form("e1 + e4", 4).unwrap(), LinearForm::from_i64s(&[1, 0, 0, 1]));
        assert_eq!(max_variable("e1*e12 + e3"), 12);
    }
}
