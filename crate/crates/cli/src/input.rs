//! Sectioned plain-text input files.
//!
//! Surfaces:
//! ```text
//! field = Q              # or Q(sqrt, -3)
//! vars = x0 x1 x2 x3
//! line = x0, x1
//! F = x0^2*x2 + x1^2*x3
//! ```
//!
//! Hypersurfaces declare the center codimension and coefficient blocks in
//! the variables x0..x{m-1}:
//! ```text
//! field = Q
//! n = 3
//! gamma_codim = 2
//! d = 3
//! A = x0^3 + x1^3
//! l2 = x0*x1
//! q22 = x0
//! q23 = x1
//! ...
//! ```
//! Indices of `l` and `q` run from m to n+1; omitted blocks are zero.

use std::collections::BTreeMap;
use submonoidal::exactalg::{poly_parse, FieldCtx, MultiPoly, VarSet};
use submonoidal::hypersurface::{coordinate_vars, SubmonoidalHypersurface};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug)]
pub struct SurfaceInput {
    pub field: FieldCtx,
    pub f: MultiPoly,
    pub line: (MultiPoly, MultiPoly),
}

#[derive(Debug)]
pub enum InputFile {
    Surface(SurfaceInput),
    Hypersurface(SubmonoidalHypersurface),
}

struct Entry {
    value: String,
    line: usize,
}

fn split_entries(text: &str) -> Result<BTreeMap<String, Entry>, InputError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(InputError::Syntax {
                line: line_no,
                message: "expected `key = value`".to_string(),
            });
        };
        let key = key.trim().to_string();
        if map
            .insert(
                key.clone(),
                Entry {
                    value: value.trim().to_string(),
                    line: line_no,
                },
            )
            .is_some()
        {
            return Err(InputError::Syntax {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(map)
}

fn parse_field(entry: Option<&Entry>) -> Result<FieldCtx, InputError> {
    let Some(e) = entry else {
        return Ok(FieldCtx::Rational);
    };
    let v = e.value.replace(' ', "");
    if v == "Q" {
        return Ok(FieldCtx::Rational);
    }
    let ctx = v
        .strip_prefix("Q(sqrt,")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|d| d.parse::<i64>().ok())
        .map(FieldCtx::Quadratic)
        .ok_or(InputError::Syntax {
            line: e.line,
            message: format!("bad field `{}`: expected Q or Q(sqrt, D)", e.value),
        })?;
    ctx.validate().map_err(|err| InputError::Syntax {
        line: e.line,
        message: err.to_string(),
    })?;
    Ok(ctx)
}

fn parse_poly(
    e: &Entry,
    vars: &VarSet,
    ctx: &FieldCtx,
) -> Result<MultiPoly, InputError> {
    poly_parse(&e.value, vars, ctx).map_err(|err| InputError::Syntax {
        line: e.line,
        message: format!("column {}: {}", err.pos + 1, err.message),
    })
}

fn parse_u32(e: &Entry) -> Result<u32, InputError> {
    e.value.parse().map_err(|_| InputError::Syntax {
        line: e.line,
        message: format!("expected a nonnegative integer, got `{}`", e.value),
    })
}

pub fn parse_input(text: &str) -> Result<InputFile, InputError> {
    let entries = split_entries(text)?;
    if entries.contains_key("gamma_codim") {
        parse_hypersurface(&entries).map(InputFile::Hypersurface)
    } else {
        parse_surface(&entries).map(InputFile::Surface)
    }
}

fn parse_surface(entries: &BTreeMap<String, Entry>) -> Result<SurfaceInput, InputError> {
    let field = parse_field(entries.get("field"))?;
    if let Some(v) = entries.get("vars") {
        let names: Vec<&str> = v.value.split_whitespace().collect();
        if names != ["x0", "x1", "x2", "x3"] {
            return Err(InputError::Syntax {
                line: v.line,
                message: "surface inputs use `vars = x0 x1 x2 x3`".to_string(),
            });
        }
    }
    let av = coordinate_vars(4);
    let line_entry = entries.get("line").ok_or(InputError::MissingKey("line"))?;
    let parts: Vec<&str> = line_entry.value.split(',').collect();
    if parts.len() != 2 {
        return Err(InputError::Syntax {
            line: line_entry.line,
            message: "expected `line = <linear form>, <linear form>`".to_string(),
        });
    }
    let l0 = parse_poly(
        &Entry {
            value: parts[0].trim().to_string(),
            line: line_entry.line,
        },
        &av,
        &field,
    )?;
    let l1 = parse_poly(
        &Entry {
            value: parts[1].trim().to_string(),
            line: line_entry.line,
        },
        &av,
        &field,
    )?;
    let f_entry = entries.get("F").ok_or(InputError::MissingKey("F"))?;
    let f = parse_poly(f_entry, &av, &field)?;
    Ok(SurfaceInput {
        field,
        f,
        line: (l0, l1),
    })
}

fn parse_hypersurface(
    entries: &BTreeMap<String, Entry>,
) -> Result<SubmonoidalHypersurface, InputError> {
    let field = parse_field(entries.get("field"))?;
    let n = parse_u32(entries.get("n").ok_or(InputError::MissingKey("n"))?)?;
    let m = parse_u32(
        entries
            .get("gamma_codim")
            .ok_or(InputError::MissingKey("gamma_codim"))?,
    )?;
    let d = parse_u32(entries.get("d").ok_or(InputError::MissingKey("d"))?)?;
    if m < 1 || m > n + 1 {
        return Err(InputError::Invalid(format!(
            "gamma_codim must satisfy 1 <= m <= n+1, got m = {m}, n = {n}"
        )));
    }
    let xv = coordinate_vars(m as usize);
    let get_form = |key: &str| -> Result<MultiPoly, InputError> {
        match entries.get(key) {
            Some(e) => parse_poly(e, &xv, &field),
            None => Ok(MultiPoly::zero(&xv)),
        }
    };
    let a = get_form("A")?;
    let lo = m as usize;
    let hi = n as usize + 1;
    let mut l = Vec::new();
    for i in lo..=hi {
        l.push(get_form(&format!("l{i}"))?);
    }
    let k = hi - lo + 1;
    let mut q = vec![vec![MultiPoly::zero(&xv); k]; k];
    for i in lo..=hi {
        for j in i..=hi {
            let f = get_form(&format!("q{i}{j}"))?;
            q[i - lo][j - lo] = f.clone();
            q[j - lo][i - lo] = f;
        }
    }
    // Reject unknown q/l keys pointing at out-of-range indices.
    for key in entries.keys() {
        if key.starts_with('q') || key.starts_with('l') {
            let known = (lo..=hi).any(|i| {
                key == &format!("l{i}") || (lo..=hi).any(|j| key == &format!("q{i}{j}"))
            });
            if !known {
                return Err(InputError::Invalid(format!(
                    "unknown coefficient key `{key}` for indices {lo}..{hi}"
                )));
            }
        }
    }
    SubmonoidalHypersurface::new(n, m, d, a, l, q)
        .map_err(|e| InputError::Invalid(e.to_string()))
}
