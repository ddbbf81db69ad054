//! Angle arguments: plain decimals or fractions of pi such as `pi/4`,
//! `3pi/8`, `-pi/2`, `0.75pi`. The symbolic forms are evaluated as one
//! multiplication and one division on the f64 value of pi.

use std::f64::consts::PI;

pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s = input.trim().replace('*', "");
    if s.is_empty() {
        return Err("empty angle".to_string());
    }
    if let Some(pos) = s.find("pi") {
        let (coef_str, rest) = s.split_at(pos);
        let rest = &rest[2..];
        let coef = match coef_str {
            "" => 1.0,
            "-" => -1.0,
            "+" => 1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| format!("bad pi coefficient `{c}` in `{input}`"))?,
        };
        let den = match rest {
            "" => 1.0,
            d => {
                let d = d
                    .strip_prefix('/')
                    .ok_or_else(|| format!("expected `/denominator` after pi in `{input}`"))?;
                let v = d
                    .parse::<f64>()
                    .map_err(|_| format!("bad denominator `{d}` in `{input}`"))?;
                if v == 0.0 {
                    return Err(format!("zero denominator in `{input}`"));
                }
                v
            }
        };
        return Ok(coef * PI / den);
    }
    let value = s.parse::<f64>().map_err(|_| format!("bad angle `{input}`"))?;
    if !value.is_finite() {
        return Err(format!("angle must be finite, got `{input}`"));
    }
    Ok(value)
}

/// A parsed grid specification `start:stop:count` with angle-valued
/// endpoints, both included.
#[derive(Debug, Clone)]
pub struct GridSpec(pub Vec<f64>);

pub fn parse_grid(input: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = input.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid must be start:stop:count, got `{input}`"));
    }
    let start = parse_angle(parts[0])?;
    let stop = parse_angle(parts[1])?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad grid count `{}`", parts[2]))?;
    if count == 0 {
        return Err("grid count must be at least 1".to_string());
    }
    if count == 1 {
        return Ok(GridSpec(vec![start]));
    }
    Ok(GridSpec(
        (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    ))
}
