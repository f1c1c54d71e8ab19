use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_path_to_error::Segment;

/// An input problem: bad file, bad JSON, schema violation, cap exceeded,
/// or data the library rejects before verifying anything. Exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = pointer(e.path());
        InputError(format!("{source}: schema violation at {at}: {}", e.inner()))
    })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

/// `--flag` wins over the input file, which wins over the default.
pub fn resolve(
    flag: Option<usize>,
    file: Option<usize>,
    default: usize,
    min: usize,
    max: usize,
    what: &str,
) -> Result<usize, InputError> {
    let v = flag.or(file).unwrap_or(default);
    if v < min || v > max {
        return Err(InputError(format!(
            "{what} {v} outside the supported range {min}..={max}"
        )));
    }
    Ok(v)
}
