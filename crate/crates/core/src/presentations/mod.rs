//! Words over numbered generators, a small presentation language, the
//! defining presentation of `F/γ_{c+1}(F)` for `F = C_p * C_p`, and the
//! letterwise inversion endomorphism.

mod parse;
mod word;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub use parse::{parse_presentation, parse_word};
pub use word::{Letter, Word, WordDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown generator '{name}' at {line}:{col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("empty relator at {line}:{col}")]
    EmptyRelator { line: usize, col: usize },
    #[error("generator '{0}' declared twice")]
    DuplicateGenerator(String),
    #[error("relator {0} uses a generator index out of range")]
    GeneratorOutOfRange(usize),
    #[error("relator {0} is empty after free reduction")]
    TrivialRelator(usize),
    #[error("a commutator needs at least two arguments, got {0}")]
    CommutatorArity(usize),
    #[error("{0}")]
    Domain(String),
}

/// Generators plus relator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(PresentationError::TrivialRelator(i));
            }
            if r.max_generator().is_some_and(|g| g >= generator_names.len()) {
                return Err(PresentationError::GeneratorOutOfRange(i));
            }
        }
        Ok(Presentation { generator_names, relators })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Same generators with one more relator.
    pub fn with_relator(&self, w: Word) -> Result<Self, PresentationError> {
        let mut relators = self.relators.clone();
        relators.push(w);
        Presentation::new(self.generator_names.clone(), relators)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.generator_names).to_string()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parse_word(text, &self.generator_names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generator_names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}", r.display(&self.generator_names))?;
        }
        write!(f, " >")
    }
}

/// Left-normed commutator `[w_1, …, w_n] = [[w_1, …, w_{n-1}], w_n]`.
pub fn expand_commutator(args: &[Word]) -> Result<Word, PresentationError> {
    if args.len() < 2 {
        return Err(PresentationError::CommutatorArity(args.len()));
    }
    let mut acc = args[0].clone();
    for w in &args[1..] {
        acc = acc.commutator(w);
    }
    Ok(acc)
}

/// Replaces every letter `g^ε` by `g^-ε`.
pub fn inversion_images(w: &Word) -> Word {
    Word::new(w.letters().iter().map(|l| l.inverse()))
}

fn xy_names() -> Vec<String> {
    vec!["x".to_string(), "y".to_string()]
}

/// Weight-`(c+1)` left-normed commutators in `x, y` whose first two entries differ,
/// in lexicographic order of the entry sequence, before any deduplication.
pub fn gamma_commutator_candidates(c: usize) -> Vec<Word> {
    let weight = c + 1;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << weight) {
        // bit (weight - 1 - j) selects entry j; 0 = x, 1 = y
        let entries: Vec<usize> = (0..weight).map(|j| ((mask >> (weight - 1 - j)) & 1) as usize).collect();
        if entries[0] == entries[1] {
            continue;
        }
        let args: Vec<Word> = entries.iter().map(|&g| Word::generator(g)).collect();
        out.push(expand_commutator(&args).expect("weight >= 2"));
    }
    out
}

/// Presentation of `F/γ_{c+1}(F)` with `F = ⟨x, y | x^p, y^p⟩`.
///
/// Relators are `x^p`, `y^p` and the weight-`(c+1)` left-normed commutators
/// in the generators. Words that reduce to the identity are dropped, as is
/// any word equal to an earlier relator or to its inverse.
pub fn gamma_quotient_presentation(p: u32, c: usize) -> Result<Presentation, PresentationError> {
    if !crate::is_prime(p as u64) || p == 2 {
        return Err(PresentationError::Domain(format!("p = {p} is not an odd prime")));
    }
    if c < 1 {
        return Err(PresentationError::Domain("class c must be at least 1".into()));
    }
    let mut relators = vec![Word::generator(0).pow(p as i64), Word::generator(1).pow(p as i64)];
    relators.extend(gamma_commutator_candidates(c));
    Presentation::new(xy_names(), dedupe_relators(relators))
}

pub(crate) fn dedupe_relators(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        if r.is_empty() || seen.contains(&r) || seen.contains(&r.inverse()) {
            continue;
        }
        seen.insert(r.clone());
        out.push(r);
    }
    out
}

/// The two 2-group presentations of orders `2^13` (`which = 1`) and `2^14` (`which = 2`).
///
/// 1. `⟨x, y | x^8, y^8, [x^2, y^2], (x^i y^j)^4 for i, j = 1, 2, 3⟩`
/// 2. `⟨x, y | (x^i y^j)^4 for i, j = 0, 1, 2, 3⟩`
pub fn fairbairn_presentation(which: u8) -> Result<Presentation, PresentationError> {
    let x = Word::generator(0);
    let y = Word::generator(1);
    let mut relators = Vec::new();
    let range = match which {
        1 => {
            relators.push(x.pow(8));
            relators.push(y.pow(8));
            relators.push(x.pow(2).commutator(&y.pow(2)));
            1..4
        }
        2 => 0..4,
        _ => return Err(PresentationError::Domain(format!("no presentation numbered {which}"))),
    };
    for i in range.clone() {
        for j in range.clone() {
            relators.push(x.pow(i).mul(&y.pow(j)).pow(4));
        }
    }
    Presentation::new(xy_names(), dedupe_relators(relators))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        parse_word(text, &xy_names()).unwrap()
    }

    #[test]
    fn parse_basic() {
        let p = parse_presentation("< x, y | x^3, y^3 >").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[0], Word::generator(0).pow(3));
    }

    #[test]
    fn parse_free_group() {
        let p = parse_presentation("< x | >").unwrap();
        assert_eq!(p.num_generators(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parse_commutator_bracket() {
        let p = parse_presentation("< x, y | [x,y,y] >").unwrap();
        let x = Word::generator(0);
        let y = Word::generator(1);
        assert_eq!(p.relators()[0], x.commutator(&y).commutator(&y));
    }

    #[test]
    fn parse_powers_and_groups() {
        assert_eq!(w("(x y)^-2"), w("y^-1 x^-1 y^-1 x^-1"));
        assert_eq!(w("xy^2"), w("x y y"));
        assert_eq!(w("x^-1"), Word::generator(0).inverse());
        assert_eq!(w("[x, y]^2"), w("[x,y] [x,y]"));
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w("x^ - 3"), Word::generator(0).pow(-3));
    }

    #[test]
    fn parse_errors() {
        match parse_presentation("< x, y | x^3, z >") {
            Err(PresentationError::UnknownGenerator { name, line, col }) => {
                assert_eq!(name, "z");
                assert_eq!((line, col), (1, 15));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_presentation("< x | x, >"), Err(PresentationError::EmptyRelator { .. })));
        assert!(matches!(parse_presentation("< x | x x^-1 >"), Err(PresentationError::EmptyRelator { .. })));
        assert!(matches!(parse_presentation("< x | x^ >"), Err(PresentationError::Syntax { .. })));
        assert!(matches!(parse_presentation("< x | [x] >"), Err(PresentationError::Syntax { .. })));
        assert!(matches!(parse_presentation("x | x"), Err(PresentationError::Syntax { line: 1, col: 1, .. })));
        assert!(matches!(parse_presentation("< x, x | >"), Err(PresentationError::DuplicateGenerator(_))));
        match parse_presentation("< x |\n  x^2,\n  q >") {
            Err(PresentationError::UnknownGenerator { line, col, .. }) => assert_eq!((line, col), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn printer_round_trips() {
        for text in ["< x, y | x^3, y^3, [x,y,x] >", "< a | >", "< a, bb | a bb^-2 a^5, (a bb)^4 >"] {
            let p = parse_presentation(text).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_presentation(&printed).unwrap(), p, "{printed}");
        }
        let g = gamma_quotient_presentation(3, 3).unwrap();
        assert_eq!(parse_presentation(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn expand_commutator_examples() {
        let x = Word::generator(0);
        let y = Word::generator(1);
        assert_eq!(expand_commutator(&[x.clone(), y.clone()]).unwrap(), w("x^-1 y^-1 x y"));
        assert!(expand_commutator(&[x.clone(), x.clone()]).unwrap().is_empty());
        // hand expansion: (x^-1 y^-1 x y)^-1 x^-1 (x^-1 y^-1 x y) x
        //   = y^-1 x^-1 y x . x^-1 . x^-1 y^-1 x y . x   (10 letters)
        //   = y^-1 x^-1 y x^-1 y^-1 x y x               (one cancellation)
        let xyx = expand_commutator(&[x.clone(), y.clone(), x.clone()]).unwrap();
        assert_eq!(xyx, w("y^-1 x^-1 y x^-1 y^-1 x y x"));
        assert_eq!(xyx.len(), 8);
        assert_eq!(expand_commutator(&[x]), Err(PresentationError::CommutatorArity(1)));
    }

    #[test]
    fn gamma_presentation_counts() {
        assert_eq!(gamma_commutator_candidates(1).len(), 2);
        assert_eq!(gamma_quotient_presentation(3, 1).unwrap().relators().len(), 3);
        assert_eq!(gamma_commutator_candidates(3).len(), 8);
        assert_eq!(gamma_quotient_presentation(3, 3).unwrap().relators().len(), 10);
        assert_eq!(gamma_commutator_candidates(5).len(), 32);
        let g55 = gamma_quotient_presentation(5, 5).unwrap();
        assert_eq!(g55.relators()[0], Word::generator(0).pow(5));
        assert!(gamma_quotient_presentation(4, 1).is_err());
        assert!(gamma_quotient_presentation(3, 0).is_err());
    }

    #[test]
    fn inversion_examples() {
        let x = Word::generator(0);
        let y = Word::generator(1);
        assert_eq!(inversion_images(&x.pow(3)), x.pow(3).inverse());
        assert_eq!(
            inversion_images(&x.commutator(&y)),
            x.inverse().commutator(&y.inverse())
        );
    }

    #[test]
    fn fairbairn_relator_sets() {
        let one = fairbairn_presentation(1).unwrap();
        assert_eq!(one.relators().len(), 3 + 9);
        let two = fairbairn_presentation(2).unwrap();
        // (x^0 y^0)^4 is trivial; every other choice of (i, j) is distinct
        assert_eq!(two.relators().len(), 15);
        assert!(fairbairn_presentation(3).is_err());
    }
}
