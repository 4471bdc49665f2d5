use super::{Word, MAX_LENGTH, MAX_RANK};
use crate::error::{Error, Result};

/// Intermediate words may grow before reduction; refuse runaway nesting.
const EXPANSION_LIMIT: usize = 1 << 16;

pub fn parse(spec: &str) -> Result<Word> {
    let s = spec.trim();
    let w = match named(s)? {
        Some(w) => w,
        None => {
            let mut p = Parser {
                src: s.as_bytes(),
                pos: 0,
            };
            let w = p.word()?;
            p.skip_ws();
            if p.pos < p.src.len() {
                return Err(p.err("unexpected character"));
            }
            w
        }
    };
    if w.len() > MAX_LENGTH {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("reduced length {} exceeds the limit of {MAX_LENGTH}", w.len()),
        });
    }
    Ok(w)
}

fn named(s: &str) -> Result<Option<Word>> {
    let param = |rest: &str, min: usize| -> Result<usize> {
        let pos = s.len() - rest.len();
        match rest.parse::<usize>() {
            Ok(n) if n >= min => Ok(n),
            _ => Err(Error::Parse {
                pos,
                msg: format!("expected an integer ≥ {min}"),
            }),
        }
    };
    Ok(Some(match s {
        "comm" => Word::comm(),
        "engel2" => Word::engel2(),
        "metab" => Word::metab(),
        _ => {
            if let Some(rest) = s.strip_prefix("gammaR:") {
                let d = param(rest, 2)?;
                check_rank(d, s.len())?;
                Word::gamma_right(d)
            } else if let Some(rest) = s.strip_prefix("gamma:") {
                let d = param(rest, 2)?;
                check_rank(d, s.len())?;
                check_length(3usize.saturating_mul(1 << (d - 1).min(40)), s.len())?;
                Word::gamma(d)
            } else if let Some(rest) = s.strip_prefix("power:") {
                let n = param(rest, 1)?;
                check_length(n, s.len())?;
                Word::power(n)
            } else {
                return Ok(None);
            }
        }
    }))
}

fn check_rank(d: usize, pos: usize) -> Result<()> {
    if d > MAX_RANK {
        return Err(Error::Parse {
            pos,
            msg: format!("rank {d} exceeds the limit of {MAX_RANK}"),
        });
    }
    Ok(())
}

fn check_length(n: usize, pos: usize) -> Result<()> {
    if n > EXPANSION_LIMIT {
        return Err(Error::Parse {
            pos,
            msg: "word too long".into(),
        });
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = Word::empty();
        while let Some(c) = self.peek() {
            if !matches!(c, b'x' | b'X' | b'(' | b'[' | b'1') {
                break;
            }
            let t = self.term()?;
            acc = acc.concat(&t);
            if acc.len() > EXPANSION_LIMIT {
                return Err(self.err("word too long"));
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'\'') {
            self.pos += 1;
            w = w.inverse();
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(d @ b'1'..=b'9') => {
                        self.pos += 1;
                        if matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
                            return Err(self.err("variables are x1..x9"));
                        }
                        Ok(Word::var((d - b'1') as usize))
                    }
                    _ => Err(self.err("expected a variable index 1..9")),
                }
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut parts = vec![self.word()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.word()?);
                }
                if parts.len() < 2 {
                    return Err(self.err("a commutator needs at least two entries"));
                }
                self.expect(b']')?;
                let mut acc = parts[0].clone();
                for p in &parts[1..] {
                    acc = Word::commutator(&acc, p);
                    if acc.len() > EXPANSION_LIMIT {
                        return Err(self.err("word too long"));
                    }
                }
                Ok(acc)
            }
            _ => Err(self.err("expected a variable, `(`, `[` or `1`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_words_match_bracket_forms() {
        assert_eq!(parse("comm").unwrap(), parse("[x1,x2]").unwrap());
        assert_eq!(parse("engel2").unwrap(), parse("[x1,x2,x2]").unwrap());
        assert_eq!(parse("metab").unwrap(), parse("[[x1,x2],[x3,x4]]").unwrap());
        assert_eq!(parse("gamma:4").unwrap(), parse("[x1,x2,x3,x4]").unwrap());
        assert_eq!(parse("gammaR:3").unwrap(), parse("[x1,[x2,x3]]").unwrap());
        assert_eq!(parse("power:8").unwrap().to_string(), "x1x1x1x1x1x1x1x1");
    }

    #[test]
    fn trivial_commutator_reduces_to_empty() {
        assert!(parse("[x1,x1]").unwrap().is_empty());
        assert!(parse("x1 x1'").unwrap().is_empty());
        assert!(parse("1").unwrap().is_empty());
    }

    #[test]
    fn display_round_trips() {
        for s in ["engel2", "metab", "gammaR:4", "x3'x1x1", "[x1 x2', x3]'"] {
            let w = parse(s).unwrap();
            assert_eq!(parse(&w.to_string()).unwrap(), w, "{s}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("[x1,", 4),
            ("x0", 1),
            ("x1 ]", 3),
            ("[x1]", 3),
            ("x12", 2),
            ("gamma:1", 6),
        ];
        for (s, pos) in cases {
            match parse(s) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn limits() {
        assert!(parse("gamma:5").is_ok());
        assert!(parse("gamma:6").is_err());
        assert!(parse("gammaR:10").is_err());
        assert!(parse("power:65").is_err());
    }
}
