//! Scalar literals.
//!
//! A literal is a signed sum of terms `rational ["*" symbol]`, where a
//! rational is `int ["/" posint]` and the symbols are `r2` (√2), `w`, `w2`,
//! `w3` (powers of ω) and `i`, `j`, `k`. A coefficient may also be a
//! parenthesized real expression, as in `(1/2 + 1/2*r2)*i`. A bare symbol is
//! read with coefficient 1.
//!
//! Which symbols are legal depends on the kind: `R` accepts only `r2`, `C`
//! accepts `r2` and the ω powers, `H` accepts `r2`, `i`, `j`, `k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Cyclo8, Kind, Quaternion, Rational, RealQuad, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    One,
    W,
    W2,
    W3,
    I,
    J,
    K,
}

impl Sym {
    fn allowed(self, kind: Kind) -> bool {
        match self {
            Sym::One => true,
            Sym::W | Sym::W2 | Sym::W3 => kind == Kind::C,
            Sym::I | Sym::J | Sym::K => kind == Kind::H,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let d = self.integer()?;
            if d.is_zero() {
                return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    /// Parses an identifier; returns `None` for `r2`, which scales the
    /// coefficient instead of selecting a basis slot.
    fn symbol(&mut self, kind: Option<Kind>) -> Result<Option<Sym>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let sym = match word {
            "r2" => return Ok(None),
            "w" => Sym::W,
            "w2" => Sym::W2,
            "w3" => Sym::W3,
            "i" => Sym::I,
            "j" => Sym::J,
            "k" => Sym::K,
            "" => return Err(Error::Syntax { pos: start, msg: "expected a symbol".into() }),
            other => {
                return Err(Error::Syntax { pos: start, msg: format!("unknown symbol `{other}`") })
            }
        };
        match kind {
            Some(kind) if !sym.allowed(kind) => Err(Error::WrongSymbol {
                pos: start,
                symbol: word.to_string(),
                kind,
            }),
            None => Err(Error::Syntax {
                pos: start,
                msg: format!("symbol `{word}` not allowed inside a real coefficient"),
            }),
            _ => Ok(Some(sym)),
        }
    }

    /// Signed sum of terms. With `kind == None` only real terms are allowed.
    fn sum(&mut self, kind: Option<Kind>, acc: &mut [RealQuad; 7]) -> Result<()> {
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                return Ok(());
            };
            first = false;
            let (coef, sym) = self.term(kind)?;
            let coef = if neg { -coef } else { coef };
            let slot = &mut acc[sym as usize];
            *slot = &*slot + &coef;
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => return Ok(()),
            }
        }
    }

    fn term(&mut self, kind: Option<Kind>) -> Result<(RealQuad, Sym)> {
        let coef = match self.peek() {
            Some(b'(') => {
                if kind.is_none() {
                    return Err(self.err("nested parentheses"));
                }
                self.pos += 1;
                let mut inner: [RealQuad; 7] = Default::default();
                self.sum(None, &mut inner)?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                let v = inner[Sym::One as usize].clone();
                if !self.eat(b'*') {
                    return Ok((v, Sym::One));
                }
                v
            }
            Some(c) if c.is_ascii_digit() => {
                let r = RealQuad::from_rational(self.rational()?);
                if !self.eat(b'*') {
                    return Ok((r, Sym::One));
                }
                r
            }
            Some(c) if c.is_ascii_alphabetic() => RealQuad::one(),
            Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            None => return Err(self.err("unexpected end of input")),
        };
        // coefficient followed by `*`: one or more symbols, r2 may precede a basis symbol
        let mut coef = coef;
        loop {
            match self.symbol(kind)? {
                None => {
                    coef = &coef * &RealQuad::sqrt2();
                    if self.eat(b'*') {
                        continue;
                    }
                    return Ok((coef, Sym::One));
                }
                Some(sym) => return Ok((coef, sym)),
            }
        }
    }
}

/// Parses a scalar literal of the given kind.
pub fn parse_scalar(text: &str, kind: Kind) -> Result<Scalar> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut acc: [RealQuad; 7] = Default::default();
    if p.peek().is_none() {
        return Err(p.err("empty scalar"));
    }
    p.sum(Some(kind), &mut acc)?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let [one, w, w2, w3, i, j, k] = acc;
    Ok(match kind {
        Kind::R => Scalar::Real(one),
        Kind::C => {
            let mut z = Cyclo8::from_real(&one);
            for (c, pow) in [(w, 1), (w2, 2), (w3, 3)] {
                if !c.is_zero() {
                    z = &z + &(&Cyclo8::from_real(&c) * &Cyclo8::omega_pow(pow));
                }
            }
            Scalar::Complex(z)
        }
        Kind::H => Scalar::Quat(Quaternion::new(one, i, j, k)),
    })
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Signed terms of a sum, joined as `a + b - c`.
fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in terms.into_iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn rational_term(r: &Rational, sym: &str) -> Option<(bool, String)> {
    if r.is_zero() {
        return None;
    }
    let body = fmt_rational(&r.abs());
    Some((r.is_negative(), if sym.is_empty() { body } else { format!("{body}*{sym}") }))
}

fn real_terms(x: &RealQuad) -> Vec<(bool, String)> {
    [rational_term(&x.a, ""), rational_term(&x.b, "r2")].into_iter().flatten().collect()
}

/// Canonical text of a scalar; `parse_scalar(format_scalar(x), x.kind()) == x`.
pub fn format_scalar(x: &Scalar) -> String {
    let terms = match x {
        Scalar::Real(r) => real_terms(r),
        Scalar::Complex(z) => ["", "w", "w2", "w3"]
            .iter()
            .zip(&z.c)
            .filter_map(|(s, c)| rational_term(c, s))
            .collect(),
        Scalar::Quat(q) => {
            let mut t = real_terms(&q.w);
            for (c, s) in [(&q.x, "i"), (&q.y, "j"), (&q.z, "k")] {
                if c.is_rational() {
                    t.extend(rational_term(&c.a, s));
                } else {
                    t.push((false, format!("({})*{s}", join_terms(real_terms(c)))));
                }
            }
            t
        }
    };
    join_terms(terms)
}
