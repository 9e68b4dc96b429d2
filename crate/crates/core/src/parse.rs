//! Text formats for rings, ideals and module presentations.
//!
//! Ideal file:
//! ```text
//! vars: x,y,z,w
//! char: 32003
//! weights: 4,5,6,7
//! x*w - y*z
//! x^3 - z^2
//! ```
//! The `weights:` line is optional. Each remaining line holds one generator.
//! Blank lines and text after `#` are ignored.
//!
//! Presentation file:
//! ```text
//! ideal: whole.ideal
//! component: p.ideal 2
//! component: q.ideal 1
//! ```
//! Paths are relative to the presentation file.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring, RingSpec};

/// Settings applied to every ring read from text.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Replaces the characteristic stated in the file.
    pub characteristic: Option<u32>,
    /// Replaces the default Gröbner degree cap.
    pub degree_cap: Option<u32>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Column (1-based) of byte offset `at` in `line`.
fn column(line: &str, at: usize) -> usize {
    line[..at.min(line.len())].chars().count() + 1
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let (k, v) = line.split_once(':')?;
    (k.trim() == key).then_some(v)
}

fn parse_list<T: std::str::FromStr>(value: &str, lineno: usize, line: &str, what: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<T>().map_err(|_| {
                let at = line.find(s).unwrap_or(0);
                parse_err(lineno, column(line, at), format!("invalid {what} {s:?}"))
            })
        })
        .collect()
}

/// Parses an ideal file into its ring and ideal.
pub fn parse_ideal(text: &str, opts: &ParseOptions) -> Result<Ideal> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.trim().is_empty());

    let (ln, line) = lines.next().ok_or_else(|| parse_err(1, 1, "missing `vars:` line"))?;
    let vars = header_value(line, "vars").ok_or_else(|| parse_err(ln, 1, "expected `vars:` line"))?;
    let names: Vec<String> = vars.split(',').map(|s| s.trim().to_string()).collect();
    for name in &names {
        if !is_identifier(name) {
            let at = line.find(name.as_str()).unwrap_or(0);
            return Err(parse_err(ln, column(line, at), format!("invalid variable name {name:?}")));
        }
    }

    let (ln, line) = lines.next().ok_or_else(|| parse_err(ln + 1, 1, "missing `char:` line"))?;
    let value = header_value(line, "char").ok_or_else(|| parse_err(ln, 1, "expected `char:` line"))?;
    let stated: u32 = value.trim().parse().map_err(|_| parse_err(ln, 1, "invalid characteristic"))?;

    let mut rest: Vec<(usize, &str)> = lines.collect();
    let mut weights = None;
    if let Some(&(ln, line)) = rest.first() {
        if let Some(value) = header_value(line, "weights") {
            weights = Some(parse_list::<u32>(value, ln, line, "weight")?);
            rest.remove(0);
        }
    }

    let mut spec = RingSpec::new(names, opts.characteristic.unwrap_or(stated), weights)
        .map_err(|e| parse_err(1, 1, e.to_string()))?;
    if let Some(cap) = opts.degree_cap {
        spec = spec.with_degree_cap(cap);
    }
    let ring = spec.into_ring();

    let mut gens = Vec::new();
    for (ln, line) in rest {
        gens.push(parse_polynomial_at(&ring, line, ln)?);
    }
    Ideal::new(&ring, gens)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a polynomial such as `3*x^2*y - z + 1` over `ring`.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, text, 1)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.text[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, column(self.text, self.pos), message)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn integer(&mut self) -> Result<u64> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| self.error("expected an integer"))
    }
}

fn parse_polynomial_at(ring: &Ring, text: &str, line: usize) -> Result<Polynomial> {
    let field = *ring.field();
    let p = field.characteristic() as u64;
    let mut cur = Cursor { text, pos: 0, line };
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.error("empty polynomial")),
            None => break,
            Some('+') => cur.bump(),
            Some('-') => {
                negative = true;
                cur.bump();
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.error(format!("unexpected character {c:?}"))),
        }
        first = false;

        let mut coef: u32 = 1;
        let mut mono = Monomial::one(ring.nvars());
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = (cur.integer()? % p) as u32;
                    coef = field.mul(coef, v);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = cur.pos;
                    let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                    let idx = ring
                        .variable_index(name)
                        .ok_or_else(|| parse_err(line, column(text, start), format!("unknown variable {name:?}")))?;
                    let mut exp = 1u64;
                    if cur.peek() == Some('^') {
                        cur.bump();
                        exp = cur.integer()?;
                    }
                    let total = mono.0[idx] as u64 + exp;
                    mono.0[idx] = u16::try_from(total).map_err(|_| cur.error("exponent too large"))?;
                }
                _ => return Err(cur.error("expected a coefficient or a variable")),
            }
            if cur.peek() == Some('*') {
                cur.bump();
            } else {
                break;
            }
        }
        if negative {
            coef = field.neg(coef);
        }
        terms.push((mono, coef));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Renders an ideal in the ideal file format.
pub fn format_ideal(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = format!("vars: {}\nchar: {}\n", ring.names().join(","), ring.characteristic());
    if ring.weights().iter().any(|&w| w != 1) {
        let w: Vec<String> = ring.weights().iter().map(|w| w.to_string()).collect();
        out.push_str(&format!("weights: {}\n", w.join(",")));
    }
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

/// Contents of a presentation file: the defining ideal and its components
/// with their recorded dimensions.
#[derive(Debug, Clone)]
pub struct PresentationSource {
    pub ideal: Ideal,
    pub components: Vec<(Ideal, usize)>,
}

/// Parses a presentation file; `resolve` loads the referenced ideal files.
pub fn parse_presentation(text: &str, mut resolve: impl FnMut(&str) -> Result<Ideal>) -> Result<PresentationSource> {
    let mut ideal = None;
    let mut components = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(v) = header_value(line, "ideal") {
            if ideal.is_some() {
                return Err(parse_err(ln, 1, "duplicate `ideal:` line"));
            }
            ideal = Some(resolve(v.trim())?);
        } else if let Some(v) = header_value(line, "component") {
            let mut parts = v.split_whitespace();
            let (path, dim) = match (parts.next(), parts.next(), parts.next()) {
                (Some(p), Some(d), None) => (p, d),
                _ => return Err(parse_err(ln, 1, "expected `component: <path> <dim>`")),
            };
            let dim: usize = dim.parse().map_err(|_| {
                parse_err(ln, column(line, line.rfind(dim).unwrap_or(0)), format!("invalid dimension {dim:?}"))
            })?;
            components.push((resolve(path)?, dim));
        } else {
            return Err(parse_err(ln, 1, "expected `ideal:` or `component:`"));
        }
    }
    let ideal = ideal.ok_or_else(|| parse_err(1, 1, "missing `ideal:` line"))?;
    for (c, _) in &components {
        ideal
            .ring()
            .check_same(c.ring())
            .map_err(|_| Error::InconsistentComponents("components live in a different ring than the ideal".into()))?;
    }
    Ok(PresentationSource { ideal, components })
}

pub fn read_ideal_file(path: &Path, opts: &ParseOptions) -> Result<Ideal> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_ideal(&text, opts).map_err(|e| with_path(e, path))
}

pub fn read_presentation_file(path: &Path, opts: &ParseOptions) -> Result<PresentationSource> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut rings: Option<Ring> = None;
    let source = parse_presentation(&text, |p| {
        let ideal = read_ideal_file(&base.join(p), opts)?;
        match &rings {
            None => rings = Some(ideal.ring().clone()),
            Some(r) if **r == **ideal.ring() => {
                // share one ring handle so that tag rings are cached once
                let gens = ideal.generators().iter().map(|g| g.embed(r)).collect();
                return Ideal::new(r, gens);
            }
            Some(_) => {
                return Err(Error::InconsistentComponents(format!("{p} is over a different ring")));
            }
        }
        Ok(ideal)
    });
    source.map_err(|e| with_path(e, path))
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, column, message } => {
            Error::Parse { line, column, message: format!("{}: {message}", path.display()) }
        }
        e => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "vars: x,y,z,w\nchar: 32003\nweights: 4,5,6,7\nx*w - y*z\nx^3-z^2 # cusp\n\n 2*w^2 - x*y^2\n";
        let i = parse_ideal(text, &ParseOptions::default()).unwrap();
        assert_eq!(i.generators().len(), 3);
        assert_eq!(i.ring().weights(), &[4, 5, 6, 7]);
        assert!(i.generators().iter().all(|g| g.is_homogeneous()));
        let again = parse_ideal(&format_ideal(&i), &ParseOptions::default()).unwrap();
        assert_eq!(again.generators(), i.generators());
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let i = parse_ideal("vars: x\nchar: 7\n9*x + 14\n", &ParseOptions::default()).unwrap();
        assert_eq!(i.generators()[0].to_string(), "2*x");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ideal("vars: x,y\nchar: 32003\nx + q\n", &ParseOptions::default()).unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, column: 5, message: "unknown variable \"q\"".into() });
        let e = parse_ideal("vars: x\nchar: 32003\nx ++ x\n", &ParseOptions::default()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 4, .. }));
        let e = parse_ideal("char: 5\n", &ParseOptions::default()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn presentation() {
        let whole = "vars: x,y\nchar: 32003\nx*y\n";
        let px = "vars: x,y\nchar: 32003\nx\n";
        let py = "vars: x,y\nchar: 32003\ny\n";
        let text = "ideal: whole\ncomponent: px 1\ncomponent: py 1\n";
        let src = parse_presentation(text, |p| {
            let body = match p {
                "whole" => whole,
                "px" => px,
                _ => py,
            };
            parse_ideal(body, &ParseOptions::default())
        })
        .unwrap();
        assert_eq!(src.components.len(), 2);
        let e = parse_presentation("component: px one\n", |_| parse_ideal(px, &ParseOptions::default())).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }
}
