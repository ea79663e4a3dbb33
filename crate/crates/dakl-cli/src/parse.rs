//! Textual grammar for coweights and elements of `W_T`.
//!
//! ```text
//! element  := factor ('*'? factor)*
//! factor   := 'pi' '[' coweight ']' | 's' INT | 'e'
//! coweight := sign? term (sign term)*
//! term     := (INT ('/' INT)? '*'?)? atom
//! atom     := 'Lambda0' | 'delta' | 'alpha' INT
//! ```
//! Whitespace is ignored. Positions in errors are character offsets.

use dakl::{Coweight, Error, Result, RootSystem, WPElt, Q};

struct Parser<'a> {
    rs: &'a RootSystem,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(rs: &'a RootSystem, text: &str) -> Self {
        Self {
            rs,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            expected: expected.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        let n = lit.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(lit.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(&format!("'{lit}'"))
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(what);
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err(&format!("{what} that fits in 64 bits"))
        })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn coweight(&mut self) -> Result<Coweight> {
        let n = self.rs.rank();
        let mut mu = Coweight::zero(n);
        let mut first = true;
        loop {
            let neg = if self.eat("-") {
                true
            } else if self.eat("+") || first {
                false
            } else {
                break;
            };
            first = false;
            let mut c = Q::from(1);
            if self.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                let num = self.int("an integer coefficient")?;
                c = if self.eat("/") {
                    let at = self.pos;
                    let den = self.int("a denominator")?;
                    if den == 0 {
                        self.pos = at;
                        return self.err("a nonzero denominator");
                    }
                    Q::new(num, den)
                } else {
                    Q::from(num)
                };
                self.eat("*");
            }
            if neg {
                c = -c;
            }
            if self.eat("Lambda0") {
                mu.level += c;
            } else if self.eat("delta") {
                mu.delta += c;
            } else if self.eat("alpha") {
                let at = self.pos;
                let i = self.int("a coroot index")? as usize;
                if i == 0 || i > n {
                    self.pos = at;
                    return self.err(&format!("a coroot index in 1..={n}"));
                }
                mu.fin[i - 1] += c;
            } else {
                return self.err("'Lambda0', 'delta' or 'alpha<i>'");
            }
        }
        Ok(mu)
    }

    fn factor(&mut self) -> Result<WPElt> {
        if self.eat("pi") {
            self.expect("[")?;
            let mu = self.coweight()?;
            self.expect("]")?;
            Ok(self.rs.translation(&mu))
        } else if self.eat("s") {
            let at = self.pos;
            let i = self.int("a generator index")? as usize;
            if i > self.rs.rank() {
                self.pos = at;
                return self.err(&format!("a generator index in 0..={}", self.rs.rank()));
            }
            Ok(self.rs.element(&Coweight::zero(self.rs.rank()), &[i]))
        } else if self.eat("e") {
            Ok(self.rs.wp_identity())
        } else {
            self.err("'pi[', 's<i>' or 'e'")
        }
    }

    fn element(&mut self) -> Result<WPElt> {
        let mut x = self.factor()?;
        loop {
            if self.eat("*") {
                x = self.rs.wp_mul(&x, &self.factor()?);
            } else if self.at_end() {
                return Ok(x);
            } else if matches!(self.peek(), Some('p' | 's' | 'e')) {
                x = self.rs.wp_mul(&x, &self.factor()?);
            } else {
                return self.err("'*', a factor or end of input");
            }
        }
    }
}

pub fn parse_element(rs: &RootSystem, text: &str) -> Result<WPElt> {
    Parser::new(rs, text).element()
}

pub fn parse_coweight(rs: &RootSystem, text: &str) -> Result<Coweight> {
    let mut p = Parser::new(rs, text);
    let mu = p.coweight()?;
    if !p.at_end() {
        return p.err("'+', '-' or end of input");
    }
    Ok(mu)
}
