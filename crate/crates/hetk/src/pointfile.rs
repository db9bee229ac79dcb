//! Plain-text point files.
//!
//! ```text
//! #bases 2,3
//! #source halton:2,3
//! 0 0
//! 0.1 0.1
//! 0.01 0.2
//! ```
//!
//! One point per line, coordinates separated by a single space. A coordinate
//! is `0` or `0.` followed by its base-b digits, most significant first, using
//! `0-9a-z` (so bases up to 36). Further `#` lines are comments.

use std::fmt::Write as _;
use std::path::Path;

use hetk_core::badic::{Base, DigitVector};
use hetk_core::sequences::PointSet;

use crate::error::{Error, Result};
use crate::generator::parse_bases;

pub const MAX_FILE_BASE: u32 = 36;

fn digit_char(d: u32) -> char {
    char::from_digit(d, MAX_FILE_BASE).expect("digit below 36")
}

pub fn format_coordinate(x: &DigitVector) -> String {
    let t = x.trimmed();
    if t.digits().is_empty() {
        return "0".to_string();
    }
    let mut s = String::with_capacity(t.precision() + 2);
    s.push_str("0.");
    s.extend(t.digits().iter().map(|&d| digit_char(d)));
    s
}

pub fn parse_coordinate(text: &str, base: Base) -> std::result::Result<DigitVector, String> {
    let digits = match text {
        "0" => "",
        _ => text
            .strip_prefix("0.")
            .ok_or_else(|| format!("coordinate `{text}` must be `0` or start with `0.`"))?,
    };
    let digits = digits
        .chars()
        .map(|c| {
            c.to_digit(MAX_FILE_BASE)
                .filter(|&d| d < base.get())
                .ok_or_else(|| format!("`{c}` is not a base-{base} digit"))
        })
        .collect::<std::result::Result<Vec<u32>, String>>()?;
    DigitVector::new(base, digits).map_err(|e| e.to_string())
}

pub fn write_string(points: &PointSet) -> Result<String> {
    if let Some(b) = points.bases().iter().find(|b| b.get() > MAX_FILE_BASE) {
        return Err(Error::Config(format!(
            "point files support bases up to {MAX_FILE_BASE}, got {b}"
        )));
    }
    let mut out = String::new();
    let bases: Vec<String> = points.bases().iter().map(|b| b.to_string()).collect();
    writeln!(out, "#bases {}", bases.join(",")).unwrap();
    if !points.provenance().is_empty() {
        writeln!(out, "#source {}", points.provenance()).unwrap();
    }
    for p in points.points() {
        let line: Vec<String> = p.iter().map(format_coordinate).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    Ok(out)
}

pub fn parse_str(text: &str) -> Result<PointSet> {
    let mut bases: Option<Vec<Base>> = None;
    let mut provenance = String::new();
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some(rest) = line.strip_prefix("#bases ") {
            if bases.is_some() {
                return Err(err("duplicate #bases header".into()));
            }
            let parsed = parse_bases(rest).map_err(|e| err(e.to_string()))?;
            if let Some(b) = parsed.iter().find(|b| b.get() > MAX_FILE_BASE) {
                return Err(err(format!("base {b} exceeds {MAX_FILE_BASE}")));
            }
            bases = Some(parsed);
            continue;
        }
        if let Some(rest) = line.strip_prefix("#source ") {
            provenance = rest.to_string();
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let bases = bases
            .as_ref()
            .ok_or_else(|| err("missing #bases header before the first point".into()))?;
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != bases.len() {
            return Err(err(format!(
                "expected {} coordinates, found {}",
                bases.len(),
                fields.len()
            )));
        }
        let point = fields
            .iter()
            .zip(bases)
            .map(|(f, &b)| parse_coordinate(f, b))
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(err)?;
        points.push(point);
    }
    let bases = bases.ok_or(Error::Parse {
        line: 1,
        message: "missing #bases header".into(),
    })?;
    Ok(PointSet::new(bases, points, provenance)?)
}

pub fn read(path: &Path) -> Result<PointSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_str(&text)
}

pub fn write(path: &Path, points: &PointSet) -> Result<()> {
    std::fs::write(path, write_string(points)?).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hetk_core::sequences::SequenceConfig;

    fn b(x: u64) -> Base {
        Base::new(x).unwrap()
    }

    #[test]
    fn van_der_corput_lines() {
        let pts = SequenceConfig::VanDerCorput { base: b(2) }
            .generate(8)
            .unwrap();
        let text = write_string(&pts).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "#bases 2");
        assert_eq!(
            &lines[2..],
            &["0", "0.1", "0.01", "0.11", "0.001", "0.101", "0.011", "0.111"]
        );
    }

    #[test]
    fn large_bases_use_letters() {
        let x = DigitVector::new(b(16), vec![15, 0, 10]).unwrap();
        assert_eq!(format_coordinate(&x), "0.f0a");
        assert_eq!(parse_coordinate("0.f0a", b(16)).unwrap(), x);
    }

    #[test]
    fn round_trip() {
        let pts = SequenceConfig::Halton {
            bases: vec![b(2), b(3), b(11)],
        }
        .generate_from(5, 40)
        .unwrap();
        let back = parse_str(&write_string(&pts).unwrap()).unwrap();
        assert_eq!(back, pts);
    }

    #[test]
    fn rejects_malformed_input() {
        for (text, line) in [
            ("0.1\n", 1),
            ("#bases 2\n0.2\n", 2),
            ("#bases 2,3\n0.1\n", 2),
            ("#bases 2\n1.0\n", 2),
            ("#bases 2\n0.1  \n", 2),
            ("#bases 1\n", 1),
        ] {
            match parse_str(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
