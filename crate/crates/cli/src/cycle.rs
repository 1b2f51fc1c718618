//! Zero-cycle syntax for the `chow` command.
//!
//! ```text
//! [(1, '(1, z1)'), (2, '(1, 0)'), (1, {"form": "X1^2 - 2*X0^2"})]
//! ```
//!
//! or the equivalent JSON array
//! `[{"mult": 1, "point": "(1, z1)"}, {"mult": 1, "form": "X1^2 - 2*X0^2"}]`.

use arakheight::polyring::{parse_binary_form, parse_tuple};
use arakheight::{BinaryForm, Error, PointSpec, ProjPoint, Result, ZeroCycle};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonComponent {
    #[serde(default = "one")]
    mult: u32,
    point: Option<String>,
    form: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormOnly {
    form: String,
}

fn one() -> u32 {
    1
}

enum Raw {
    Point(String),
    Form(String),
}

fn bad(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_brackets(s: &str) -> Result<Vec<(u32, Raw)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let skip = |i: &mut usize| {
        while *i < b.len() && b[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let expect = |i: &mut usize, c: u8| -> Result<()> {
        skip(i);
        if b.get(*i) == Some(&c) {
            *i += 1;
            Ok(())
        } else {
            Err(bad(*i, format!("expected `{}`", c as char)))
        }
    };
    expect(&mut i, b'[')?;
    let mut out = Vec::new();
    skip(&mut i);
    if b.get(i) == Some(&b']') {
        return Err(bad(i, "empty cycle"));
    }
    loop {
        expect(&mut i, b'(')?;
        skip(&mut i);
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let mult: u32 = s[start..i].parse().map_err(|_| bad(start, "expected a multiplicity"))?;
        expect(&mut i, b',')?;
        skip(&mut i);
        let raw = match b.get(i) {
            Some(&q) if q == b'\'' || q == b'"' => {
                let end = s[i + 1..].find(q as char).ok_or_else(|| bad(i, "unterminated string"))?;
                let text = s[i + 1..i + 1 + end].to_string();
                i += end + 2;
                Raw::Point(text)
            }
            Some(b'{') => {
                let end = s[i..].find('}').ok_or_else(|| bad(i, "unterminated object"))?;
                let f: FormOnly =
                    serde_json::from_str(&s[i..=i + end]).map_err(|e| bad(i, format!("block: {e}")))?;
                i += end + 1;
                Raw::Form(f.form)
            }
            _ => return Err(bad(i, "expected a quoted tuple or {\"form\": ...}")),
        };
        expect(&mut i, b')')?;
        out.push((mult, raw));
        skip(&mut i);
        match b.get(i) {
            Some(b',') => i += 1,
            Some(b']') => {
                i += 1;
                break;
            }
            _ => return Err(bad(i, "expected `,` or `]`")),
        }
    }
    skip(&mut i);
    if i != b.len() {
        return Err(bad(i, "trailing input"));
    }
    Ok(out)
}

fn parse_json(s: &str) -> Result<Vec<(u32, Raw)>> {
    let comps: Vec<JsonComponent> = serde_json::from_str(s)?;
    comps
        .into_iter()
        .map(|c| match (c.point, c.form) {
            (Some(p), None) => Ok((c.mult, Raw::Point(p))),
            (None, Some(f)) => Ok((c.mult, Raw::Form(f))),
            _ => Err(Error::Invalid("each component needs exactly one of `point`, `form`".into())),
        })
        .collect()
}

/// Parses a cycle; `d` defaults to the largest variable index used.
pub fn parse_cycle(s: &str, d: Option<usize>) -> Result<ZeroCycle> {
    let raw = if s.trim_start().starts_with("[{") || s.trim_start().starts_with("[ {") {
        parse_json(s)?
    } else {
        parse_brackets(s)?
    };
    if raw.iter().any(|(m, _)| *m == 0) {
        return Err(Error::Invalid("multiplicities must be positive".into()));
    }
    let d = match d {
        Some(d) => d,
        None => raw.iter().try_fold(0, |acc, (_, r)| -> Result<usize> {
            Ok(acc.max(match r {
                Raw::Point(p) => parse_tuple(p, None)?[0].num_vars(),
                Raw::Form(f) => parse_binary_form(f, None)?.1,
            }))
        })?,
    };
    let mut n = None;
    let mut comps = Vec::with_capacity(raw.len());
    for (m, r) in raw {
        let spec = match r {
            Raw::Point(p) => {
                let point = ProjPoint::new(parse_tuple(&p, Some(d))?)?;
                PointSpec::Point { point }
            }
            Raw::Form(f) => PointSpec::Block {
                form: BinaryForm::parse(&f, Some(d))?,
            },
        };
        let this_n = match &spec {
            PointSpec::Point { point } => point.dim_n(),
            PointSpec::Block { .. } => 1,
        };
        if *n.get_or_insert(this_n) != this_n {
            return Err(Error::Invalid("components live in different projective spaces".into()));
        }
        comps.push((m, spec));
    }
    ZeroCycle::new(n.unwrap_or(1), d, comps)
}
