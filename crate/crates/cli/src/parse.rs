use std::fmt;
use std::ops::RangeInclusive;

/// Malformed user input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Parses `"a1,b1;a2,b2"` or a JSON list of pairs such as `[[a1,b1],[a2,b2]]`.
pub fn parse_sigma(spec: &str) -> Result<Vec<(i64, i64)>, InputError> {
    let spec = spec.trim();
    let bad = |why: &str| InputError(format!("malformed sigma {spec:?}: {why}"));
    let pairs: Vec<(i64, i64)> = if spec.starts_with('[') {
        serde_json::from_str(spec).map_err(|e| bad(&e.to_string()))?
    } else {
        spec.split(';')
            .map(|pair| {
                let mut it = pair.split(',').map(|x| x.trim().parse::<i64>());
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                    _ => Err(bad("expected integer pairs \"a,b\" separated by ';'")),
                }
            })
            .collect::<Result<_, _>>()?
    };
    if pairs.is_empty() {
        return Err(bad("no pairs"));
    }
    Ok(pairs)
}

/// `a..b` (inclusive) or a single value `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => num(s)?..=num(s)?,
    };
    if range.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}
