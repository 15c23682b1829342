//! Reader for the polynomial text format.
//!
//! ```text
//! poly   := [sign] term (("+" | "-") [sign] term)*
//! term   := coeff ["*"] factor ("*"? factor)* | coeff | factor ("*"? factor)*
//! coeff  := integer ["/" integer]
//! factor := var ["^" natural]
//! var    := "x" | "y" | "z" | "x" index
//! ```
//!
//! Whitespace between tokens is ignored. `−` (U+2212) is accepted as a minus.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, Polynomial};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
    nvars: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].1.is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map(|&(p, _)| p)
            .unwrap_or(self.src.len())
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    /// Digits directly at the cursor, no whitespace skipping.
    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.at) {
            if c.is_ascii_digit() {
                s.push(c);
                self.at += 1;
            } else {
                break;
            }
        }
        s
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') | Some('−') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn coefficient(&mut self) -> Result<Coeff> {
        let num: BigInt = self.digits().parse().expect("digit string");
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let pos = self.pos();
            let den = self.digits();
            if den.is_empty() {
                return self.syntax("expected denominator after `/`");
            }
            let den: BigInt = den.parse().expect("digit string");
            if den.is_zero() {
                return Err(Error::Syntax {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Coeff::new(num, den));
        }
        Ok(Coeff::from_integer(num))
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.pos();
        let c = self.chars[self.at].1;
        self.bump();
        let index = match c {
            'x' => {
                let idx = self.digits();
                if idx.is_empty() {
                    Some(0)
                } else {
                    idx.parse::<usize>().ok().and_then(|i| i.checked_sub(1))
                }
            }
            'y' if self.nvars <= 3 => Some(1),
            'z' if self.nvars <= 3 => Some(2),
            _ => None,
        };
        let name = self.src[start..self.pos()].trim_end().to_string();
        match index {
            Some(i) if i < self.nvars => Ok(i),
            _ => Err(Error::UnknownVariable {
                name,
                pos: start,
                nvars: self.nvars,
            }),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        let pos = self.pos();
        let e = self.digits();
        if e.is_empty() {
            return self.syntax("expected exponent after `^`");
        }
        e.parse::<u32>()
            .map_err(|_| Error::ExponentOverflow { pos })
    }

    fn term(&mut self, negative: bool) -> Result<(Monomial, Coeff)> {
        let mut c = Coeff::one();
        let mut exps = vec![0u32; self.nvars];
        let mut saw_coeff = false;
        let mut saw_factor = false;
        if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            c = self.coefficient()?;
            saw_coeff = true;
        }
        loop {
            let star = if self.peek() == Some('*') {
                if !saw_coeff && !saw_factor {
                    return self.syntax("`*` without a left operand");
                }
                self.bump();
                true
            } else {
                false
            };
            match self.peek() {
                Some(ch) if ch.is_ascii_alphabetic() => {
                    let pos = self.pos();
                    let v = self.variable()?;
                    let e = self.exponent()?;
                    exps[v] = exps[v]
                        .checked_add(e)
                        .ok_or(Error::ExponentOverflow { pos })?;
                    saw_factor = true;
                }
                _ if star => return self.syntax("expected a variable after `*`"),
                _ => break,
            }
        }
        if !saw_coeff && !saw_factor {
            return self.syntax("expected a term");
        }
        if negative {
            c = -c;
        }
        Ok((Monomial::new(exps), c))
    }
}

pub(crate) fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
    if nvars == 0 {
        return Err(Error::Precondition(
            "ambient dimension must be at least 1".into(),
        ));
    }
    let mut cur = Cursor {
        chars: text.char_indices().collect(),
        at: 0,
        src: text,
        nvars,
    };
    let mut terms = Vec::new();
    let negative = cur.sign().unwrap_or(false);
    terms.push(cur.term(negative)?);
    while cur.peek().is_some() {
        let Some(joiner) = cur.sign() else {
            return cur.syntax("expected `+` or `-` between terms");
        };
        let inner = cur.sign().unwrap_or(false);
        terms.push(cur.term(joiner ^ inner)?);
    }
    Ok(Polynomial::from_terms(nvars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(
            parse("x + + + y", 3),
            Err(Error::Syntax {
                pos: 6,
                msg: "expected a term".into()
            })
        );
        assert!(parse("x y", 3).is_ok());
        assert!(matches!(parse("x 2", 3), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("", 3), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(
            parse("3/0*x", 3),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse("x^", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x*", 3), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(
            parse("x + w", 3),
            Err(Error::UnknownVariable { pos: 4, .. })
        ));
        assert!(matches!(parse("z", 2), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse("x4", 3), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse("x0", 3), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn exponent_overflow() {
        assert_eq!(
            parse("x^99999999999", 3),
            Err(Error::ExponentOverflow { pos: 2 })
        );
        assert!(matches!(
            parse("x^4294967295*x", 3),
            Err(Error::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn aliases_and_indices_agree() {
        assert_eq!(parse("x1*x2^2 - x3", 3), parse("x*y^2 - z", 3));
        assert_eq!(parse("2xy", 3), parse("2*x*y", 3));
        assert_eq!(parse("x − y", 3), parse("x - y", 3));
        assert_eq!(parse("x + -y", 3), parse("x - y", 3));
        assert_eq!(parse("- -x", 3).ok(), None);
    }
}
