//! Plain-text formats for graphs, configurations and cone spanning trees,
//! plus exact decimal rendering of fractions.
//!
//! Graph files start with a `n m` header followed by `m` lines `u v` with
//! `0 <= u < v < n`. Configuration files hold one line of `n` chip counts.
//! Tree files hold one edge per line; the apex is written `x`. In all three,
//! lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chip::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, SpanningTree};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("expected a nonnegative integer, found `{token}`")))
}

fn parse_pair(line: usize, text: &str) -> Result<(&str, &str)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    match tokens.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(parse_error(
            line,
            format!("expected two fields, found {}", tokens.len()),
        )),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing `n m` header"))?;
    let (n, m) = parse_pair(header_line, header)?;
    let n: usize = parse_number(header_line, n)?;
    let m: usize = parse_number(header_line, m)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        let u: usize = parse_number(line, u)?;
        let v: usize = parse_number(line, v)?;
        if u >= v || v >= n {
            return Err(parse_error(
                line,
                format!("edge `{u} {v}` must satisfy 0 <= u < v < {n}"),
            ));
        }
        edges.push((u, v));
        if edges.len() > m {
            return Err(parse_error(line, format!("more than the {m} declared edges")));
        }
        last_line = line;
    }
    if edges.len() != m {
        return Err(parse_error(
            last_line,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Graph::new(n, edges).map_err(|e| parse_error(last_line, e.to_string()))
}

pub fn format_graph(g: &Graph) -> String {
    g.to_string()
}

pub fn parse_configuration<'g>(g: &'g Graph, text: &str) -> Result<Configuration<'g>> {
    let mut lines = content_lines(text);
    let (line, values) = match lines.next() {
        Some(found) => found,
        None if g.n() == 0 => return Configuration::new(g, Vec::new()),
        None => return Err(parse_error(1, "missing configuration line")),
    };
    if let Some((extra, _)) = lines.next() {
        return Err(parse_error(extra, "configuration must be a single line"));
    }
    let chips = values
        .split_whitespace()
        .map(|t| parse_number::<u32>(line, t))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(g, chips).map_err(|e| parse_error(line, e.to_string()))
}

pub fn format_configuration(c: &Configuration<'_>) -> String {
    format!("{c}\n")
}

/// Reads a cone spanning tree for a base graph on `n` vertices.
pub fn parse_tree(n: usize, text: &str) -> Result<SpanningTree> {
    let endpoint = |line: usize, token: &str| -> Result<usize> {
        if token == "x" {
            return Ok(n);
        }
        let v: usize = parse_number(line, token)?;
        if v >= n {
            return Err(parse_error(line, format!("vertex {v} is out of range (n = {n})")));
        }
        Ok(v)
    };
    let mut edges = Vec::new();
    for (line, text) in content_lines(text) {
        let (a, b) = parse_pair(line, text)?;
        edges.push((endpoint(line, a)?, endpoint(line, b)?));
    }
    Ok(SpanningTree::from_edges(edges))
}

/// Writes apex edges first (`x v`, by `v`), then the remaining edges.
pub fn format_tree(n: usize, t: &SpanningTree) -> String {
    let mut out = String::new();
    for &(u, v) in t.edges().iter().filter(|&&(_, v)| v == n) {
        let _ = writeln!(out, "x {u}");
        debug_assert!(u < v);
    }
    for &(u, v) in t.edges().iter().filter(|&&(_, v)| v != n) {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Renders `num / den` in decimal: exactly when the expansion terminates,
/// otherwise rounded to `significant` significant digits.
pub fn format_decimal(num: &BigUint, den: &BigUint, significant: usize) -> String {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return "0".to_string();
    }
    let g = num.gcd(den);
    let (num, den) = (num / &g, den / &g);
    let mut rest = den.clone();
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    while (&rest % &two).is_zero() {
        rest /= &two;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
    }
    if rest.is_one() {
        exact_decimal(&num, &den)
    } else {
        rounded_decimal(&num, &den, significant.max(1))
    }
}

fn exact_decimal(num: &BigUint, den: &BigUint) -> String {
    let (whole, mut remainder) = num.div_rem(den);
    let mut out = whole.to_string();
    if !remainder.is_zero() {
        out.push('.');
        let ten = BigUint::from(10u32);
        while !remainder.is_zero() {
            remainder *= &ten;
            let (digit, r) = remainder.div_rem(den);
            out.push_str(&digit.to_string());
            remainder = r;
        }
    }
    out
}

fn rounded_decimal(num: &BigUint, den: &BigUint, significant: usize) -> String {
    let ten = BigUint::from(10u32);
    let low = ten.pow(significant as u32 - 1);
    let high = &low * &ten;
    // Find `shift` with low <= num * 10^shift / den < high.
    let mut shift: i64 = 0;
    let scaled = |shift: i64| -> (BigUint, BigUint) {
        if shift >= 0 {
            (num * ten.pow(shift as u32), den.clone())
        } else {
            (num.clone(), den * ten.pow((-shift) as u32))
        }
    };
    loop {
        let (a, b) = scaled(shift);
        let q = &a / &b;
        if q < low {
            shift += 1;
        } else if q >= high {
            shift -= 1;
        } else {
            break;
        }
    }
    let (a, b) = scaled(shift);
    let (mut digits, r) = a.div_rem(&b);
    if &r * 2u32 >= b {
        digits += 1u32;
    }
    if digits == high {
        digits = low.clone();
        shift -= 1;
    }
    let digits = digits.to_string();
    let point = significant as i64 - shift;
    if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{digits}{}", "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    }
}
