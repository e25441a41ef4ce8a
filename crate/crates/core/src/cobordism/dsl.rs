use std::collections::BTreeMap;

use super::HeegaardData;
use crate::error::{Error, Result};
use crate::free_group::{FreeEndo, PhiValuation, Word};
use crate::ring::parse_poly;

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

struct Scanner {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Scanner {
    fn new(src: &str) -> Self {
        Scanner { chars: src.chars().collect(), i: 0, line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn err(&self, pos: Pos, msg: impl Into<String>) -> Error {
        Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        let p = self.pos();
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(self.err(p, format!("expected '{}', found '{}'", c, x))),
            None => Err(self.err(p, format!("expected '{}', found end of input", c))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        self.skip_ws();
        let p = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.err(p, format!("expected a name, found '{}'", c)),
                None => self.err(p, "expected a name, found end of input"),
            });
        }
        Ok((s, p))
    }

    /// Text up to the next `;` or `}` (not consumed), trimmed.
    fn value(&mut self) -> (String, Pos) {
        self.skip_ws();
        let p = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c == ';' || c == '}' || c == '#' {
                break;
            }
            s.push(c);
            self.bump();
        }
        (s.trim_end().to_string(), p)
    }
}

struct Entry {
    key: String,
    key_pos: Pos,
    value: String,
    value_pos: Pos,
}

fn block(sc: &mut Scanner) -> Result<Vec<Entry>> {
    sc.expect('{')?;
    let mut out = Vec::new();
    loop {
        sc.skip_ws();
        match sc.peek() {
            Some('}') => {
                sc.bump();
                return Ok(out);
            }
            Some(';') => {
                sc.bump();
                continue;
            }
            None => return Err(sc.err(sc.pos(), "unterminated block")),
            _ => {}
        }
        let (key, key_pos) = sc.ident()?;
        sc.skip_ws();
        let p = sc.pos();
        if sc.peek() != Some('-') {
            return Err(sc.err(p, "expected '->'"));
        }
        sc.bump();
        if sc.peek() != Some('>') {
            return Err(sc.err(p, "expected '->'"));
        }
        sc.bump();
        let (value, value_pos) = sc.value();
        if value.is_empty() {
            return Err(sc.err(value_pos, format!("missing value for '{}'", key)));
        }
        out.push(Entry { key, key_pos, value, value_pos });
    }
}

fn shift_err(e: Error, at: Pos) -> Error {
    match e {
        Error::Parse { col, msg, .. } => Error::Parse { line: at.line, col: at.col + col.saturating_sub(1), msg },
        other => Error::Parse { line: at.line, col: at.col, msg: other.to_string() },
    }
}

fn generator_index(name: &str, genus: usize) -> Option<usize> {
    let (kind, rest) = name.split_at(1);
    let i: usize = rest.parse().ok()?;
    if i == 0 || i > genus {
        return None;
    }
    match kind {
        "a" => Some(i - 1),
        "b" => Some(genus + i - 1),
        _ => None,
    }
}

/// Parses one `cobordism { ... }` block and validates it.
pub fn parse(src: &str) -> Result<HeegaardData> {
    let mut sc = Scanner::new(src);
    let (kw, p) = sc.ident()?;
    if kw != "cobordism" {
        return Err(sc.err(p, format!("expected 'cobordism', found '{}'", kw)));
    }
    sc.expect('{')?;
    let mut keys: BTreeMap<String, usize> = BTreeMap::new();
    let mut phi_block = None;
    let mut f_block = None;
    loop {
        sc.skip_ws();
        if sc.peek() == Some('}') {
            sc.bump();
            break;
        }
        if sc.peek().is_none() {
            return Err(sc.err(sc.pos(), "unterminated cobordism block"));
        }
        let (name, p) = sc.ident()?;
        match name.as_str() {
            "phi" | "f" => {
                let slot = if name == "phi" { &mut phi_block } else { &mut f_block };
                if slot.is_some() {
                    return Err(sc.err(p, format!("duplicate block '{}'", name)));
                }
                *slot = Some(block(&mut sc)?);
            }
            "g_minus" | "g_plus" | "r_minus" | "r_plus" | "G_rank" => {
                sc.expect('=')?;
                sc.skip_ws();
                let vp = sc.pos();
                let mut digits = String::new();
                while let Some(c) = sc.peek().filter(|c| c.is_ascii_digit()) {
                    digits.push(c);
                    sc.bump();
                }
                let v: usize = digits.parse().map_err(|_| sc.err(vp, format!("expected a number for '{}'", name)))?;
                if keys.insert(name.clone(), v).is_some() {
                    return Err(sc.err(p, format!("duplicate key '{}'", name)));
                }
            }
            _ => return Err(sc.err(p, format!("unknown key '{}'", name))),
        }
    }
    sc.skip_ws();
    if sc.peek().is_some() {
        return Err(sc.err(sc.pos(), "trailing input after cobordism block"));
    }
    let end = sc.pos();
    let get = |k: &str| keys.get(k).copied().ok_or_else(|| sc.err(end, format!("missing key '{}'", k)));
    let (gm, gp, rm, rp, n) = (get("g_minus")?, get("g_plus")?, get("r_minus")?, get("r_plus")?, get("G_rank")?);
    if gm + rm != gp + rp {
        return Err(Error::invariant("genus-balance", format!("g_minus + r_minus = {} but g_plus + r_plus = {}", gm + rm, gp + rp)));
    }
    let mid = gm + rm;
    let mut phi_vals = vec![vec![0i64; n]; 2 * mid];
    let mut seen = vec![false; 2 * mid];
    for e in phi_block.unwrap_or_default() {
        let i = generator_index(&e.key, mid).ok_or_else(|| sc.err(e.key_pos, format!("unknown generator '{}'", e.key)))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(sc.err(e.key_pos, format!("duplicate entry for '{}'", e.key)));
        }
        let p = parse_poly(&e.value, n).map_err(|x| shift_err(x, e.value_pos))?;
        let (exp, _) = p
            .as_monomial()
            .filter(|(_, c)| **c == 1.into())
            .ok_or_else(|| sc.err(e.value_pos, format!("phi value '{}' is not a monomial", e.value)))?;
        phi_vals[i] = exp.clone();
    }
    let mut images: Vec<Word> = (0..2 * mid).map(Word::gen).collect();
    let mut seen = vec![false; 2 * mid];
    for e in f_block.unwrap_or_default() {
        let i = generator_index(&e.key, mid).ok_or_else(|| sc.err(e.key_pos, format!("unknown generator '{}'", e.key)))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(sc.err(e.key_pos, format!("duplicate entry for '{}'", e.key)));
        }
        images[i] = Word::parse_surface(&e.value, mid).map_err(|x| shift_err(x, e.value_pos))?;
    }
    let phi = PhiValuation::new(n, phi_vals)?;
    HeegaardData::new(gm, gp, rm, rp, FreeEndo::new(images)?, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWIST: &str = "cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1
  phi { a1 -> 1 ; b1 -> t1 }
  f { a1 -> a1 ; b1 -> b1 a1 } }";

    #[test]
    fn parses_and_round_trips() {
        let h = parse(TWIST).unwrap();
        assert_eq!(h.f().image(1), &Word::parse_surface("b1 a1", 1).unwrap());
        assert_eq!(parse(&h.to_dsl()).unwrap(), h);
    }

    #[test]
    fn defaults_and_comments() {
        let h = parse("# cylinder\ncobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=0 }").unwrap();
        assert_eq!(h.f(), &FreeEndo::identity(2));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1\n  f { a1 -> a1 ; b1 -> b1 c1 } }").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, col: 27, msg: "unknown generator 'c1'".into() });
        let e = parse("cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 }").unwrap_err();
        assert!(matches!(e, Error::Parse { msg, .. } if msg.contains("G_rank")));
        let e = parse("cobordism { g_minus=1 g_plus=2 r_minus=0 r_plus=0 G_rank=0 }").unwrap_err();
        assert!(matches!(e, Error::Invariant { name: "genus-balance", .. }));
        let e = parse("cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1 phi { a1 -> 2*t1 } }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 72, .. }));
    }
}
