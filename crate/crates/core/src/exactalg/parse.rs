//! Polynomial expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "i" | variable | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants, which is how fraction
//! literals such as `3/2*x` are written.

use num_bigint::BigInt;

use super::poly::Poly;
use super::rational::Rational;
use super::scalar::{Mode, Scalar};
use crate::Error;

/// Parses `text` as a polynomial in `vars`.
pub fn parse_poly(text: &str, vars: &[String], mode: Mode) -> Result<Poly, Error> {
    for v in vars {
        check_var_name(v)?;
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        mode,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

/// Variable names are identifiers; `i` is reserved for the imaginary unit.
pub fn check_var_name(v: &str) -> Result<(), Error> {
    let mut chars = v.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && v != "i";
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidVariableName(v.to_string()))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
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

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let op_pos = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                match rhs.as_constant() {
                    Some(k) if !k.is_zero() => acc = acc.scale(&k.inv()),
                    Some(_) => {
                        return Err(Error::Syntax {
                            pos: op_pos,
                            msg: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(Error::Syntax {
                            pos: op_pos,
                            msg: "division by a non-constant".into(),
                        })
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.syntax("expected a nonnegative integer exponent"));
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, Error> {
        let n = self.nvars();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                Ok(Poly::constant(n, Scalar::real(Rational::from(v))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "i" {
                    if self.mode == Mode::Rational {
                        return Err(Error::ImaginaryInRationalMode { pos: start });
                    }
                    return Ok(Poly::constant(n, Scalar::i()));
                }
                match self.vars.iter().position(|v| v == name) {
                    Some(j) => Ok(Poly::var(n, j)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::Monomial;

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cusp_transcription() {
        let p = parse_poly("x^3 - y^2", &v(&["x", "y"]), Mode::Rational).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial(vec![3, 0])), Scalar::one());
        assert_eq!(p.coeff(&Monomial(vec![0, 2])), Scalar::from_int(-1));
    }

    #[test]
    fn zero_literal() {
        let p = parse_poly("0", &v(&["x"]), Mode::Rational).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn gaussian_cross_terms_cancel() {
        let vars = v(&["u", "v"]);
        let p = parse_poly("(u+i*v)*(u-i*v)", &vars, Mode::Gaussian).unwrap();
        let q = parse_poly("u^2+v^2", &vars, Mode::Gaussian).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn errors_carry_positions() {
        let vars = v(&["x", "y"]);
        match parse_poly("x + z", &vars, Mode::Rational) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly("x + i*y", &vars, Mode::Rational),
            Err(Error::ImaginaryInRationalMode { pos: 4 })
        ));
        assert!(matches!(
            parse_poly("x + * y", &vars, Mode::Rational),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("(x + y", &vars, Mode::Rational),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x / y", &vars, Mode::Rational),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn fraction_literals() {
        let vars = v(&["x"]);
        let p = parse_poly("3/2*x - 1/3", &vars, Mode::Rational).unwrap();
        assert_eq!(p.to_string_with(&vars), "3/2*x - 1/3");
    }

    #[test]
    fn reserved_name() {
        assert!(parse_poly("x", &v(&["i"]), Mode::Rational).is_err());
    }
}
