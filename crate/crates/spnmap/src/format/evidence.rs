use spnmap_core::{Assignment, Evidence};

use super::ParseError;

fn pair(entry: &str) -> Result<(usize, usize), ParseError> {
    let (var, value) = entry
        .split_once('=')
        .ok_or_else(|| ParseError::new(1, format!("expected `index=value`, found {entry:?}")))?;
    let parse = |t: &str, what: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| ParseError::new(1, format!("bad {what} in {entry:?}: {e}")))
    };
    Ok((parse(var, "index")?, parse(value, "value")?))
}

fn entries(text: &str) -> impl Iterator<Item = &str> {
    let text = text.trim();
    (!text.is_empty()).then(|| text.split(',').map(str::trim)).into_iter().flatten()
}

/// `"1=0,3=2"` observes variable 1 at 0 and variable 3 at 2. Variables are
/// 0-indexed; the empty string is empty evidence.
pub fn parse_evidence(text: &str) -> Result<Evidence, ParseError> {
    let mut e = Evidence::new();
    for entry in entries(text) {
        let (var, value) = pair(entry)?;
        e.insert(var, value).map_err(|d| ParseError::new(1, d.to_string()))?;
    }
    Ok(e)
}

/// A full configuration, either positional (`"1,0"` or `"1 0"`) or as
/// `index=value` pairs covering every variable from 0 up.
pub fn parse_assignment(text: &str) -> Result<Assignment, ParseError> {
    if !text.contains('=') {
        return text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| ParseError::new(1, format!("bad value {t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Assignment::new);
    }
    let e = parse_evidence(text)?;
    let values: Vec<usize> = e.iter().map(|(_, v)| v).collect();
    if let Some((missing, _)) = e.iter().enumerate().find(|&(i, (var, _))| i != var) {
        return Err(ParseError::new(1, format!("assignment has no value for variable {missing}")));
    }
    Ok(Assignment::new(values))
}

/// `"0=1 1=0 ..."`, sorted by variable.
pub fn format_config(x: &Assignment) -> String {
    x.values()
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{i}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
