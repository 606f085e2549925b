//! `poly := term (('+'|'-') term)*`, `term := coef? ('*'? var ('^' int)?)*`.
//!
//! Coefficients are decimal integers, optionally written as `a/b`, read in
//! the ring's field. A leading sign is allowed and whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Monomial, Polynomial, Ring, MAX_EXPONENT};
use crate::error::{Error, Result};
use crate::field::Field;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }
}

pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Polynomial<F>> {
    let field = ring.field();
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negative = false;
    match cur.peek() {
        Some(b'-') => {
            negative = true;
            cur.pos += 1;
        }
        Some(b'+') => cur.pos += 1,
        None => return Err(cur.err("empty polynomial")),
        _ => {}
    }
    loop {
        let (m, mut c) = parse_term(&mut cur, ring)?;
        if negative {
            c = field.neg(&c);
        }
        terms.push((m, c));
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(cur.err("expected `+` or `-`")),
        }
        cur.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term<F: Field>(cur: &mut Cursor<'_>, ring: &Arc<Ring<F>>) -> Result<(Monomial, F::Elem)> {
    let field = ring.field();
    let mut coef = field.one();
    let mut seen = false;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let num: BigInt = cur.digits().parse().map_err(|_| cur.err("bad integer"))?;
        coef = field.from_int(&num);
        if cur.peek() == Some(b'/') {
            cur.pos += 1;
            if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(cur.err("expected denominator"));
            }
            let at = cur.pos;
            let den: BigInt = cur.digits().parse().map_err(|_| cur.err("bad integer"))?;
            let inv =
                field.inv(&field.from_int(&den)).ok_or(Error::Syntax { pos: at, msg: "zero denominator".into() })?;
            coef = field.mul(&coef, &inv);
        }
        seen = true;
    }
    let mut exps = vec![0u32; ring.nvars()];
    loop {
        let save = cur.pos;
        let star = cur.peek() == Some(b'*');
        if star {
            cur.pos += 1;
        }
        match cur.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
            _ if star => return Err(cur.err("expected variable after `*`")),
            _ => {
                cur.pos = save;
                break;
            }
        }
        let at = cur.pos;
        let name = cur.ident();
        let idx = ring.var_index(name).ok_or_else(|| Error::UnknownVariable { name: name.to_string(), pos: at })?;
        let mut e = 1u64;
        if cur.peek() == Some(b'^') {
            cur.pos += 1;
            let at = cur.pos;
            let d = cur.digits();
            if d.is_empty() {
                return Err(cur.err("expected exponent"));
            }
            e = d.parse::<u64>().unwrap_or(u64::MAX);
            if e > MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow { pos: at });
            }
        }
        let total = exps[idx] as u64 + e;
        if total > MAX_EXPONENT as u64 {
            return Err(Error::ExponentOverflow { pos: at });
        }
        exps[idx] = total as u32;
        seen = true;
    }
    if !seen {
        return Err(cur.err("expected a term"));
    }
    let m = Monomial::new(&exps).map_err(|_| Error::ExponentOverflow { pos: cur.pos })?;
    Ok((m, coef))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring() -> Arc<Ring<PrimeField>> {
        Ring::new(&["x", "y", "z"], PrimeField::default()).unwrap()
    }

    #[test]
    fn single_power() {
        let p = parse_polynomial("x^4", &ring()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.terms()[0].0.exponents(3), vec![4, 0, 0]);
        assert_eq!(p.terms()[0].1, 1);
    }

    #[test]
    fn two_terms() {
        let p = parse_polynomial("x*y^3 + x*z^3", &ring()).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn cancellation_gives_zero() {
        assert!(parse_polynomial("x - x", &ring()).unwrap().is_zero());
        assert!(parse_polynomial("0", &ring()).unwrap().is_zero());
    }

    #[test]
    fn coefficients_and_signs() {
        let r = ring();
        let p = parse_polynomial("-3x y + 2*z^2 - 5", &r).unwrap();
        assert_eq!(p.to_string(), "32000*x*y + 2*z^2 + 31998");
        let q = Ring::new(&["x"], Rationals).unwrap();
        assert_eq!(parse_polynomial("1/2*x - 3/4", &q).unwrap().to_string(), "1/2*x - 3/4");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(parse_polynomial("x + w", &r), Err(Error::UnknownVariable { name: "w".into(), pos: 4 }));
        assert!(matches!(parse_polynomial("x +", &r), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x^", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x ) y", &r), Err(Error::Syntax { pos: 2, .. })));
        assert_eq!(parse_polynomial("x^99999", &r), Err(Error::ExponentOverflow { pos: 2 }));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("2*", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0*x", &Ring::new(&["x"], Rationals).unwrap()), Err(Error::Syntax { .. })));
    }
}
