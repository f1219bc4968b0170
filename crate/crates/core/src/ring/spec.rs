//! Ring-spec grammar.
//!
//! ```text
//! SPEC := "zn:" N
//!       | "gf:" q                      (q a prime power)
//!       | "gf:" p ":" w [":" MOD]      (MOD = modulus coefficients, low to high)
//!       | "mat:" n ":" SPEC
//!       | "ut:" n ":" SPEC
//!       | "prod:" SPEC "+" SPEC
//!       | "dual:" k ":" SPEC
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecAst {
    Zn(u32),
    Gf { p: u32, w: u32, modulus: Option<Vec<u32>> },
    Mat(usize, Box<SpecAst>),
    Ut(usize, Box<SpecAst>),
    Prod(Box<SpecAst>, Box<SpecAst>),
    Dual(usize, Box<SpecAst>),
}

impl SpecAst {
    /// Number of elements, saturating instead of overflowing.
    pub fn size(&self) -> u128 {
        match self {
            SpecAst::Zn(n) => *n as u128,
            SpecAst::Gf { p, w, .. } => (*p as u128).saturating_pow(*w),
            SpecAst::Mat(n, s) => s.size().saturating_pow((n * n) as u32),
            SpecAst::Ut(n, s) => s.size().saturating_pow((n * (n + 1) / 2) as u32),
            SpecAst::Prod(l, r) => l.size().saturating_mul(r.size()),
            SpecAst::Dual(k, s) => s.size().saturating_pow(*k as u32 + 1),
        }
    }

    pub fn canonical(&self) -> String {
        match self {
            SpecAst::Zn(n) => format!("zn:{n}"),
            SpecAst::Gf { p, w, modulus } => {
                let mut s = if *w == 1 { format!("gf:{p}") } else { format!("gf:{p}:{w}") };
                if let Some(m) = modulus {
                    if *w == 1 {
                        s.push_str(":1");
                    }
                    s.push(':');
                    s.push_str(&join(m));
                }
                s
            }
            SpecAst::Mat(n, s) => format!("mat:{n}:{}", s.canonical()),
            SpecAst::Ut(n, s) => format!("ut:{n}:{}", s.canonical()),
            SpecAst::Prod(l, r) => format!("prod:{}+{}", l.canonical(), r.canonical()),
            SpecAst::Dual(k, s) => format!("dual:{k}:{}", s.canonical()),
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse(spec: &str) -> Result<SpecAst> {
    let mut p = Parser { src: spec, pos: 0 };
    let ast = p.spec()?;
    if p.pos != spec.len() {
        return Err(p.err(format!("trailing input `{}`", &spec[p.pos..])));
    }
    Ok(ast)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::parse(self.src, reason)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}` at offset {}", self.pos)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let digits: usize = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err(format!("expected a number at offset {}", self.pos)));
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        text.parse::<u64>().map_err(|e| self.err(format!("bad number `{text}`: {e}")))
    }

    fn small(&mut self, what: &str, min: u64, max: u64) -> Result<u64> {
        let v = self.number()?;
        if v < min || v > max {
            return Err(self.err(format!("{what} = {v} out of range {min}..={max}")));
        }
        Ok(v)
    }

    fn keyword(&mut self) -> Result<&'a str> {
        let len = self.rest().bytes().take_while(u8::is_ascii_lowercase).count();
        let kw = &self.rest()[..len];
        self.pos += len;
        self.expect(':')?;
        Ok(kw)
    }

    fn spec(&mut self) -> Result<SpecAst> {
        let start = self.pos;
        match self.keyword()? {
            "zn" => Ok(SpecAst::Zn(self.small("n", 2, u32::MAX as u64)? as u32)),
            "gf" => self.gf(),
            "mat" => {
                let n = self.small("matrix dimension", 1, 8)? as usize;
                self.expect(':')?;
                Ok(SpecAst::Mat(n, Box::new(self.spec()?)))
            }
            "ut" => {
                let n = self.small("matrix dimension", 1, 8)? as usize;
                self.expect(':')?;
                Ok(SpecAst::Ut(n, Box::new(self.spec()?)))
            }
            "prod" => {
                let left = self.spec()?;
                self.expect('+')?;
                let right = self.spec()?;
                Ok(SpecAst::Prod(Box::new(left), Box::new(right)))
            }
            "dual" => {
                let k = self.small("k", 1, 16)? as usize;
                self.expect(':')?;
                Ok(SpecAst::Dual(k, Box::new(self.spec()?)))
            }
            other => {
                self.pos = start;
                Err(self.err(format!("unknown constructor `{other}`")))
            }
        }
    }

    fn gf(&mut self) -> Result<SpecAst> {
        let first = self.small("field order", 2, u32::MAX as u64)? as u32;
        // `gf:q` shorthand unless a `:w` follows.
        let has_w = self.peek() == Some(':')
            && self.rest()[1..].bytes().next().is_some_and(|b| b.is_ascii_digit());
        if !has_w {
            let (p, w) = prime_power(first)
                .ok_or_else(|| self.err(format!("{first} is not a prime power")))?;
            return Ok(SpecAst::Gf { p, w, modulus: None });
        }
        if !is_prime(first) {
            return Err(self.err(format!("characteristic {first} is not prime")));
        }
        self.expect(':')?;
        let w = self.small("extension degree", 1, 32)? as u32;
        let mut modulus = None;
        if self.peek() == Some(':')
            && self.rest()[1..].bytes().next().is_some_and(|b| b.is_ascii_digit())
        {
            self.expect(':')?;
            let mut coeffs = vec![self.number()? as u32];
            while self.eat(',') {
                coeffs.push(self.number()? as u32);
            }
            modulus = Some(coeffs);
        }
        Ok(SpecAst::Gf { p: first, w, modulus })
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^w` with `p` prime.
pub(crate) fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut w) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        w += 1;
    }
    (rest == 1).then_some((p, w))
}
