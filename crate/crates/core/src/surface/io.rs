//! Plain-text surface files.
//!
//! ```text
//! # comment
//! field F 13
//! let r = -16/27
//! x1^4 - x1*x2^3 - x3^4 + x3*x4^3
//! ```
//! The polynomial may span several lines. `field` is optional.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Rationals};
use crate::poly::parse::{self, Bindings};
use crate::poly::MultiPoly;

#[derive(Clone, Debug)]
pub struct SurfaceFile {
    pub poly: MultiPoly<Rationals>,
    pub field: Option<FieldSpec>,
    pub params: Bindings,
    pub text: String,
}

/// Parses a surface file; byte positions in errors refer to the whole text.
pub fn parse_surface_file(text: &str, extra: &Bindings) -> Result<SurfaceFile> {
    let mut field = None;
    let mut params = extra.clone();
    let mut body = String::new();
    let mut body_offsets = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("field ") {
            field = Some(FieldSpec::parse(rest.trim())?);
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("let ") {
            let (name, value) = rest.split_once('=').ok_or_else(|| Error::Parse {
                pos: start,
                msg: "expected `let name = value`".into(),
            })?;
            let v: BigRational = parse::parse_rational(value.trim())?;
            params.entry(name.trim().to_string()).or_insert(v);
            continue;
        }
        for (i, ch) in content.char_indices() {
            body_offsets.push(start + i);
            body.push(ch);
        }
        body_offsets.push(start + content.len());
        body.push(' ');
    }
    let remap = |e: Error| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: body_offsets.get(pos).copied().unwrap_or(text.len()),
            msg,
        },
        other => other,
    };
    let poly = parse_quartic(&body, &params).map_err(remap)?;
    Ok(SurfaceFile {
        poly,
        field,
        params,
        text: text.to_string(),
    })
}

/// Parses a homogeneous quartic; a term of the wrong degree is reported at its position.
pub fn parse_quartic(text: &str, params: &Bindings) -> Result<MultiPoly<Rationals>> {
    let poly = parse::parse_poly(text, params)?;
    if poly.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: "polynomial is zero".into(),
        });
    }
    if poly.is_homogeneous() && poly.total_degree() == Some(4) {
        return Ok(poly);
    }
    // locate the first top-level summand of the wrong degree
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut pieces = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 => {
                let prev = text[..i].trim_end();
                if !prev.is_empty() && !prev.ends_with(['*', '/', '^', '(']) {
                    pieces.push((start, &text[start..i]));
                    start = i;
                }
            }
            _ => {}
        }
    }
    pieces.push((start, &text[start..]));
    for (pos, piece) in pieces {
        if let Ok(p) = parse::parse_poly(piece, params) {
            if !p.is_zero() && !(p.is_homogeneous() && p.total_degree() == Some(4)) {
                let lead = piece.len() - piece.trim_start_matches(['+', '-', ' ']).len();
                return Err(Error::Parse {
                    pos: pos + lead,
                    msg: format!(
                        "term of degree {} in a quartic",
                        p.total_degree().unwrap_or(0)
                    ),
                });
            }
        }
    }
    Err(Error::Parse {
        pos: 0,
        msg: "polynomial is not a homogeneous quartic".into(),
    })
}
