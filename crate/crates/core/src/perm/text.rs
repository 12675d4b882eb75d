//! Text forms of permutations.
//!
//! Image lists are written `[2,3,1]` (1-based, comma separated, no spaces).
//! Cycle notation is `(1 2 3)(4 5)`: disjoint cycles, single spaces, fixed
//! points omitted, each cycle starting at its smallest point; the identity is
//! `()`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::Permutation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermStyle {
    Images,
    Cycles,
}

pub fn format_permutation(p: &Permutation, style: PermStyle) -> String {
    match style {
        PermStyle::Images => format_images(p),
        PermStyle::Cycles => format_cycles(p),
    }
}

pub fn format_images(p: &Permutation) -> String {
    let mut s = String::with_capacity(p.degree() * 3 + 2);
    s.push('[');
    for (i, img) in p.table().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{}", img + 1);
    }
    s.push(']');
    s
}

pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return String::from("()");
    }
    let mut s = String::new();
    for c in cycles {
        s.push('(');
        for (i, x) in c.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x}");
        }
        s.push(')');
    }
    s
}

/// Parses either an image list or cycle notation.
///
/// Cycle notation needs `degree`; for image lists a supplied degree must match
/// the list length.
pub fn parse_permutation(text: &str, degree: Option<usize>) -> Result<Permutation> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    match body.chars().next() {
        Some('[') => {
            let p = parse_images(body, trimmed_start)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(Error::DegreeMismatch {
                        left: p.degree(),
                        right: d,
                    });
                }
            }
            Ok(p)
        }
        Some('(') => {
            let d = degree.ok_or_else(|| Error::Parse {
                position: trimmed_start,
                message: "cycle notation requires an explicit degree".into(),
            })?;
            parse_cycles(body, trimmed_start, d)
        }
        _ => Err(Error::Parse {
            position: trimmed_start,
            message: "expected '[' or '('".into(),
        }),
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, offset: usize) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn at(&self) -> usize {
        self.pos + self.offset
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_err(self.at(), alloc::format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err(self.at(), "expected a point number"));
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("");
        let v = s
            .parse::<usize>()
            .map_err(|_| parse_err(start + self.offset, "number too large"))?;
        Ok((v, start + self.offset))
    }
}

fn parse_images(text: &str, offset: usize) -> Result<Permutation> {
    let mut cur = Cursor::new(text, offset);
    cur.expect(b'[')?;
    cur.skip_ws();
    let mut points: Vec<(usize, usize)> = Vec::new();
    if cur.peek() != Some(b']') {
        loop {
            cur.skip_ws();
            points.push(cur.number()?);
            cur.skip_ws();
            match cur.peek() {
                Some(b',') => cur.pos += 1,
                Some(b']') => break,
                _ => return Err(parse_err(cur.at(), "expected ',' or ']'")),
            }
        }
    }
    cur.expect(b']')?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(parse_err(cur.at(), "trailing characters"));
    }
    let n = points.len();
    let mut seen = alloc::vec![false; n];
    for &(p, at) in &points {
        if p == 0 || p > n {
            return Err(parse_err(at, alloc::format!("point {p} out of range 1..={n}")));
        }
        if core::mem::replace(&mut seen[p - 1], true) {
            return Err(parse_err(at, alloc::format!("point {p} repeated")));
        }
    }
    let images: Vec<usize> = points.into_iter().map(|(p, _)| p).collect();
    Permutation::from_images(&images)
}

fn parse_cycles(text: &str, offset: usize, degree: usize) -> Result<Permutation> {
    let mut cur = Cursor::new(text, offset);
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen = alloc::vec![false; degree];
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'(') => cur.pos += 1,
            Some(_) => return Err(parse_err(cur.at(), "expected '('")),
        }
        let mut cycle = Vec::new();
        loop {
            cur.skip_ws();
            if cur.peek() == Some(b')') {
                cur.pos += 1;
                break;
            }
            let (p, at) = cur.number()?;
            if p == 0 || p > degree {
                return Err(parse_err(
                    at,
                    alloc::format!("point {p} out of range 1..={degree}"),
                ));
            }
            if core::mem::replace(&mut seen[p - 1], true) {
                return Err(parse_err(at, alloc::format!("point {p} repeated")));
            }
            cycle.push(p);
            if cur.peek().is_none() {
                return Err(parse_err(cur.at(), "unterminated cycle"));
            }
        }
        cycles.push(cycle);
    }
    if cycles.is_empty() {
        return Err(parse_err(offset, "empty input"));
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs)
}
