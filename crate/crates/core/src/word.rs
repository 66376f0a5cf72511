//! Words in the generators `r` and `s`.
//!
//! ```text
//! word := term*
//! term := ("r" | "s") ("^" integer)?
//! ```
//!
//! Terms are separated by whitespace. A word denotes the composition of its
//! terms as functions, applied right to left: `"r s"` is `r o s`, i.e. `s`
//! acts first. This is the convention under which `rs(z) = r(s(z))`.

use std::fmt;

use thiserror::Error;

use crate::action::{order, power};
use crate::error::Result;
use crate::torus::{compose, inverse, AffineAuto, EnlargedLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    R,
    S,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::R => "r",
            Generator::S => "s",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub generator: Generator,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(pub Vec<Term>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluates the word with the given generator automorphisms. Exponents
    /// are reduced modulo the generator's order on `lattice`.
    pub fn evaluate(
        &self,
        r: &AffineAuto,
        s: &AffineAuto,
        lattice: &EnlargedLattice,
        order_cap: usize,
    ) -> Result<AffineAuto> {
        let mut acc = AffineAuto::identity(r.dim());
        let mut orders = [None, None];
        for t in &self.0 {
            let (g, slot) = match t.generator {
                Generator::R => (r, 0),
                Generator::S => (s, 1),
            };
            let k = match orders[slot] {
                Some(k) => k,
                None => {
                    let k = order(g, lattice, order_cap)?;
                    orders[slot] = Some(k);
                    k
                }
            };
            let e = t.exponent.rem_euclid(k as i64) as usize;
            acc = compose(&acc, &power(g, e, lattice), lattice);
        }
        Ok(acc)
    }

    /// Evaluates without reducing exponents: negative powers go through the
    /// inverse. Works for generators of unknown or infinite order.
    pub fn evaluate_unreduced(&self, r: &AffineAuto, s: &AffineAuto, lattice: &EnlargedLattice) -> AffineAuto {
        let mut acc = AffineAuto::identity(r.dim());
        for t in &self.0 {
            let g = match t.generator {
                Generator::R => r,
                Generator::S => s,
            };
            let base = if t.exponent < 0 { inverse(g, lattice) } else { g.reduced(lattice) };
            acc = compose(&acc, &power(&base, t.exponent.unsigned_abs() as usize, lattice), lattice);
        }
        acc
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if t.exponent == 1 {
                write!(f, "{}", t.generator)?;
            } else {
                write!(f, "{}^{}", t.generator, t.exponent)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

pub fn parse_word(text: &str) -> std::result::Result<GroupWord, ParseError> {
    let bytes = text.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let generator = match c {
            b'r' => Generator::R,
            b's' => Generator::S,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unknown generator '{ch}', expected 'r' or 's'")));
            }
        };
        i += 1;
        let mut exponent = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let start = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == digits {
                return Err(err(start, "expected an integer exponent after '^'"));
            }
            exponent = text[start..i]
                .parse()
                .map_err(|_| err(start, "exponent out of range"))?;
        }
        if i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            return Err(err(i, "expected whitespace between terms"));
        }
        terms.push(Term { generator, exponent });
    }
    Ok(GroupWord(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(generator: Generator, exponent: i64) -> Term {
        Term { generator, exponent }
    }

    #[test]
    fn parses_terms() {
        assert_eq!(
            parse_word("r^2 s").unwrap().terms(),
            &[t(Generator::R, 2), t(Generator::S, 1)]
        );
        assert_eq!(
            parse_word("s r^-1").unwrap().terms(),
            &[t(Generator::S, 1), t(Generator::R, -1)]
        );
        assert_eq!(parse_word("  r^+3\t").unwrap().terms(), &[t(Generator::R, 3)]);
    }

    #[test]
    fn empty_is_identity() {
        assert!(parse_word("").unwrap().is_identity());
        assert!(parse_word("   ").unwrap().is_identity());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_word("r x").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_word("r^").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_word("r^-").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_word("rs").unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_word("r^99999999999999999999").unwrap_err();
        assert_eq!(e.message, "exponent out of range");
        assert!(parse_word("é").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for text in ["r^2 s", "s r^-1", "", "r s r"] {
            let w = parse_word(text).unwrap();
            assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }
}
