//! Reader for word literals.
//!
//! ```text
//! word  := "1" | term*
//! term  := atom ( "^" int )?
//! atom  := "x" digits | "(" word ")"
//! int   := "-"? digits
//! ```
//!
//! Whitespace may separate any two tokens. The empty string and `"1"`
//! both denote the identity. Examples: `"x0 x1^-1 x0^2"`,
//! `"(x0 x1)^-2 x1"`.

use thiserror::Error;

use super::word::{Syllable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("word literal {input:?}, column {column}: {message}")]
pub struct WordParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

pub fn parse_word(input: &str) -> Result<Word, WordParseError> {
    let mut p = Reader {
        src: input.as_bytes(),
        pos: 0,
        input,
    };
    p.skip_ws();
    if p.peek() == Some(b'1') {
        p.pos += 1;
        p.skip_ws();
        return match p.peek() {
            None => Ok(Word::identity()),
            Some(_) => Err(p.error("trailing input after identity")),
        };
    }
    let w = p.word()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(w),
        Some(b')') => Err(p.error("unbalanced ')'")),
        Some(_) => Err(p.error("unexpected character")),
    }
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl Reader<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> WordParseError {
        WordParseError {
            input: self.input.to_string(),
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn word(&mut self) -> Result<Word, WordParseError> {
        let mut acc = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') | Some(b'(') => {
                    let t = self.term()?;
                    acc = acc.mul(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Word, WordParseError> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.int()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, WordParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let g = self.digits()?;
                let g = u32::try_from(g).map_err(|_| {
                    self.pos = start;
                    self.error("generator index too large")
                })?;
                Ok(Word::from_syllables([Syllable::new(g, 1)]))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected generator or '('")),
        }
    }

    fn int(&mut self) -> Result<i64, WordParseError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.digits()?;
        let v = i64::try_from(v).map_err(|_| self.error("exponent too large"))?;
        Ok(if negative { -v } else { v })
    }

    fn digits(&mut self) -> Result<u64, WordParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("number out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_documented_example() {
        let w = parse_word("x0 x1^-1 x0^2").unwrap();
        assert_eq!(
            w.syllables(),
            &[Syllable::new(0, 1), Syllable::new(1, -1), Syllable::new(0, 2)]
        );
        assert_eq!(w.to_string(), "x0 x1^-1 x0^2");
    }

    #[test]
    fn identity_forms() {
        assert!(parse_word("").unwrap().is_identity());
        assert!(parse_word("  1 ").unwrap().is_identity());
        assert!(parse_word("x0 x0^-1").unwrap().is_identity());
    }

    #[test]
    fn groups_and_powers() {
        let w = parse_word("(x0 x1)^-2").unwrap();
        assert_eq!(w.to_string(), "x1^-1 x0^-1 x1^-1 x0^-1");
        let v = parse_word("x0(x1 x0^-1)^2x1^-1").unwrap();
        assert_eq!(v.to_string(), "x0 x1 x0^-1 x1 x0^-1 x1^-1");
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_word("x0 y1").unwrap_err();
        assert_eq!(e.column, 4);
        assert!(parse_word("x").is_err());
        assert!(parse_word("(x0").is_err());
        assert!(parse_word("x0)").is_err());
        assert!(parse_word("x0^").is_err());
        assert!(parse_word("1 x0").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["x0", "x1^-3 x0", "x2 x0^5 x1^-1"] {
            assert_eq!(parse_word(s).unwrap().to_string(), s);
        }
    }
}
