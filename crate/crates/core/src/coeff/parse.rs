//! Parser for the coefficient grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := int | var | '(' expr ')'
//! var    := 't' | 'd'
//! ```
//!
//! `a/b` with integer literals is a fraction; division by a non-constant
//! is only allowed in a field. Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CoeffError, Poly, RingElement, RingTag};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    tag: &'a RingTag,
    len: usize,
}

/// Parses `text` into a canonical element of the ring `tag`.
pub fn parse_coefficient(text: &str, tag: &RingTag) -> Result<RingElement, CoeffError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        idx: 0,
        tag,
        len: text.len(),
    };
    if p.chars.is_empty() {
        return Err(CoeffError::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let value = p.expr()?;
    if let Some((pos, c)) = p.peek_full() {
        return Err(CoeffError::Syntax {
            pos,
            msg: format!("unexpected '{c}'"),
        });
    }
    Ok(value)
}

/// Parses a polynomial in the single variable `var` (`t` or `d`).
pub fn parse_polynomial(text: &str, var: char) -> Result<Poly, CoeffError> {
    let other = if var == 'd' { 't' } else { 'd' };
    if let Some(pos) = text.find(other) {
        return Err(CoeffError::IndeterminateNotAllowed {
            var: other,
            ring: format!("polynomials in {var}"),
            pos,
        });
    }
    match parse_coefficient(&text.replace(var, "t"), &RingTag::PolyT)? {
        RingElement::Poly(p) => Ok(p),
        _ => unreachable!("PolyT parses to a polynomial"),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn peek_full(&self) -> Option<(usize, char)> {
        self.chars.get(self.idx).copied()
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn syntax(&self, msg: &str) -> CoeffError {
        CoeffError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<RingElement, CoeffError> {
        let negate = match self.peek() {
            Some('-') => {
                self.idx += 1;
                true
            }
            Some('+') => {
                self.idx += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.checked_neg();
        }
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.idx += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                acc.checked_add(&rhs)?
            } else {
                acc.checked_sub(&rhs)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement, CoeffError> {
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.idx += 1;
            let pos = self.pos();
            let rhs = self.factor()?;
            if c == '*' {
                acc = acc.checked_mul(&rhs)?;
            } else {
                if rhs.is_zero() {
                    return Err(CoeffError::ZeroDenominator { pos });
                }
                if !self.tag.is_field() && rhs.as_rational().is_none() {
                    return Err(CoeffError::Syntax {
                        pos,
                        msg: "division by a non-constant requires a field".into(),
                    });
                }
                acc = acc.checked_div(&rhs)?;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElement, CoeffError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.idx += 1;
            let start = self.pos();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.syntax("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| CoeffError::Syntax {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.idx += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<RingElement, CoeffError> {
        match self.peek() {
            Some('(') => {
                self.idx += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.idx += 1;
                Ok(inner)
            }
            Some(v @ ('t' | 'd')) => {
                let pos = self.pos();
                if self.tag.variable() != Some(v) {
                    return Err(CoeffError::IndeterminateNotAllowed {
                        var: v,
                        ring: self.tag.name().into(),
                        pos,
                    });
                }
                self.idx += 1;
                Ok(RingElement::variable(self.tag).expect("tag has a variable"))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("digits");
                Ok(RingElement::from_rational(self.tag, BigRational::from_integer(n)))
            }
            Some(c) => Err(self.syntax(&format!("unexpected '{c}'"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}
