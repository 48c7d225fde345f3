//! Recursive-descent parser for presentation text:
//!
//! ```text
//! presentation := "<" genlist "|" relatorlist ">"
//! genlist      := name ("," name)*
//! relatorlist  := ε | relator ("," relator)*
//! relator      := term+
//! term         := atom ("^" int)?
//! atom         := name | "(" relator ")" | "[" relator ("," relator)+ "]"
//! ```
//!
//! Brackets expand as left-normed commutators. An identifier that is not a
//! generator name is split into generator names when possible, so `xy^2`
//! reads as `x y y`.

use super::{expand_commutator, Presentation, PresentationError, Word};
use super::word::Letter;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [String]) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, names }
    }

    fn position(&self) -> Pos {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Pos { line, col }
    }

    fn error(&self, message: impl Into<String>) -> PresentationError {
        let Pos { line, col } = self.position();
        PresentationError::Syntax { line, col, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<String, PresentationError> {
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            Some(c) => return Err(self.error(format!("expected a name, found '{c}'"))),
            None => return Err(self.error("expected a name, found end of input")),
        }
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn int(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
            self.skip_ws();
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let text: String = self.chars[start..self.pos].iter().filter(|c| !c.is_whitespace()).collect();
        text.parse().map_err(|_| self.error(format!("exponent {text} out of range")))
    }

    /// Splits an identifier into generator names (longest match first, with backtracking).
    fn segment(&self, ident: &str, at: Pos) -> Result<Vec<usize>, PresentationError> {
        if let Some(i) = self.names.iter().position(|n| n == ident) {
            return Ok(vec![i]);
        }
        fn go(rest: &str, names: &[String]) -> Option<Vec<usize>> {
            if rest.is_empty() {
                return Some(Vec::new());
            }
            let mut order: Vec<usize> = (0..names.len()).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
            for i in order {
                if let Some(tail) = rest.strip_prefix(names[i].as_str()) {
                    if let Some(mut v) = go(tail, names) {
                        v.insert(0, i);
                        return Some(v);
                    }
                }
            }
            None
        }
        go(ident, self.names).ok_or_else(|| PresentationError::UnknownGenerator {
            name: ident.to_string(),
            line: at.line,
            col: at.col,
        })
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        if self.peek() == Some('^') {
            self.pos += 1;
            self.int()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<Word, PresentationError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.relator()?;
                self.expect(')')?;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some('[') => {
                self.pos += 1;
                let mut args = vec![self.relator()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    args.push(self.relator()?);
                }
                if args.len() < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                self.expect(']')?;
                let e = self.exponent()?;
                Ok(expand_commutator(&args)?.pow(e))
            }
            _ => {
                let at = self.position_after_ws();
                let name = self.ident()?;
                let gens = self.segment(&name, at)?;
                let e = self.exponent()?;
                let (last, head) = gens.split_last().expect("segment is nonempty");
                let prefix = Word::new(head.iter().map(|&g| Letter::gen(g)));
                Ok(prefix.mul(&Word::generator(*last).pow(e)))
            }
        }
    }

    fn position_after_ws(&mut self) -> Pos {
        self.skip_ws();
        self.position()
    }

    fn starts_term(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c == '[' || c.is_alphabetic() || c == '_')
    }

    fn relator(&mut self) -> Result<Word, PresentationError> {
        if !self.starts_term() {
            return match self.peek() {
                Some(c) => Err(self.error(format!("expected a term, found '{c}'"))),
                None => Err(self.error("expected a term, found end of input")),
            };
        }
        let mut w = Word::identity();
        while self.starts_term() {
            w = w.mul(&self.term()?);
        }
        Ok(w)
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let empty: [String; 0] = [];
    let mut head = Parser::new(text, &empty);
    head.expect('<')?;
    let mut names = vec![head.ident()?];
    while head.peek() == Some(',') {
        head.pos += 1;
        names.push(head.ident()?);
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(PresentationError::DuplicateGenerator(n.clone()));
        }
    }
    head.expect('|')?;
    let start = head.pos;

    let mut p = Parser::new(text, &names);
    p.pos = start;
    let mut relators = Vec::new();
    if p.peek() != Some('>') {
        loop {
            let at = p.position_after_ws();
            if matches!(p.peek(), Some(',') | Some('>')) {
                return Err(PresentationError::EmptyRelator { line: at.line, col: at.col });
            }
            let w = p.relator()?;
            if w.is_empty() {
                return Err(PresentationError::EmptyRelator { line: at.line, col: at.col });
            }
            relators.push(w);
            if p.peek() == Some(',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect('>')?;
    if !p.at_end() {
        return Err(p.error("trailing input after '>'"));
    }
    Presentation::new(names, relators)
}

/// Parses a single word over the given generator names; `1` denotes the identity.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, PresentationError> {
    if text.trim() == "1" {
        return Ok(Word::identity());
    }
    let mut p = Parser::new(text, names);
    let w = p.relator()?;
    if !p.at_end() {
        return Err(p.error("trailing input after word"));
    }
    Ok(w)
}
