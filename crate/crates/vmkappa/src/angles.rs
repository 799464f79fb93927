//! Angle files: one value per line, `#` comments, radians unless converted.

use std::fs;
use std::path::Path;

use vmkappa_core::sampler::wrap_angle;
use vmkappa_core::AngleSample;

use crate::error::{Error, Result};

pub fn parse_angles(text: &str, degrees: bool) -> Result<AngleSample> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::Input(format!("line {}: `{line}` is not a finite number", i + 1)))?;
        values.push(wrap_angle(if degrees { v.to_radians() } else { v }));
    }
    if values.is_empty() {
        return Err(Error::Input("no angles found".into()));
    }
    AngleSample::new(values).map_err(|e| Error::Input(e.to_string()))
}

pub fn read_angles(path: &Path, degrees: bool) -> Result<AngleSample> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_angles(&text, degrees).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}
