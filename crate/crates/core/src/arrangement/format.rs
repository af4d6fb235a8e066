//! Plain-text arrangement files.
//!
//! ```text
//! # comment
//! field 4
//! label my arrangement
//! line: 1,0 0,1 -1/2,0
//! ```
//!
//! Each coordinate is a comma-separated list of rational coefficients of
//! `1, ζ, ζ², …`; spaces after commas are allowed.

use super::Arrangement;
use crate::error::{Error, Result};
use crate::exactgeom::{Cyclotomic, ProjLine};

fn squeeze_commas(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for part in s.split(',') {
        if !out.is_empty() {
            out.push(',');
        }
        out.push_str(part.trim());
    }
    out
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut order: Option<u32> = None;
    let mut label = String::from("file");
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix("field") {
            if order.is_some() {
                return Err(err("duplicate field header".into()));
            }
            let k: u32 = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad field order {:?}", rest.trim())))?;
            if k == 0 {
                return Err(err("field order must be positive".into()));
            }
            order = Some(k);
        } else if let Some(rest) = s.strip_prefix("label") {
            label = rest.trim_start_matches(':').trim().to_string();
        } else if let Some(rest) = s.strip_prefix("line:") {
            let k = order.ok_or_else(|| err("`field k` must come before the first line".into()))?;
            let squeezed = squeeze_commas(rest.trim());
            let coords: Vec<&str> = squeezed.split_whitespace().collect();
            if coords.len() != 3 {
                return Err(err(format!("expected 3 coordinates, got {}", coords.len())));
            }
            let mut c = Vec::with_capacity(3);
            for tok in coords {
                let v = Cyclotomic::parse(k, tok).map_err(|e| err(e.to_string()))?;
                c.push(v);
            }
            let l = ProjLine::new(c.try_into().unwrap()).map_err(|e| err(e.to_string()))?;
            lines.push(l);
        } else {
            return Err(err(format!("unrecognized directive {s:?}")));
        }
    }
    let k = order.ok_or(Error::Parse {
        line: 0,
        msg: "missing `field k` header".into(),
    })?;
    Arrangement::new(k, lines, label)
}

pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = format!("field {}\nlabel {}\n", a.field_order(), a.label());
    for l in a.lines() {
        let [x, y, z] = l.coords();
        out.push_str(&format!("line: {x} {y} {z}\n"));
    }
    out
}
