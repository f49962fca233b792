//! Line-oriented generator files.
//!
//! ```text
//! # comment
//! degree 12
//! order 95040          (optional; verified against the stabilizer chain)
//! aut_order 190080     (optional)
//! name M12             (optional)
//! (1,4,7,12)(3,8,5,6)  one generator per line, 1-based cycle notation
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::{GroupHandle, GroupMetadata, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFile {
    pub degree: usize,
    pub metadata: GroupMetadata,
    pub generators: Vec<Permutation>,
}

pub fn parse_generator_file(text: &str) -> Result<GeneratorFile> {
    let mut degree: Option<usize> = None;
    let mut metadata = GroupMetadata::default();
    let mut generators = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('(') {
            let d = degree.ok_or_else(|| err("generator before `degree` line".into()))?;
            let g = Permutation::parse_cycles(d, line).map_err(|e| err(e.to_string()))?;
            generators.push(g);
            continue;
        }
        let (key, value) = line
            .split_once(char::is_whitespace)
            .map(|(k, v)| (k, v.trim()))
            .ok_or_else(|| err(format!("expected `key value`, got {line:?}")))?;
        let number = |v: &str| -> Result<u64> {
            v.parse::<u64>()
                .map_err(|_| err(format!("bad number {v:?} for {key}")))
        };
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(err("duplicate degree".into()));
                }
                let d = number(value)? as usize;
                if d == 0 || d > crate::perm::MAX_DEGREE {
                    return Err(err(format!("degree {d} out of range")));
                }
                degree = Some(d);
            }
            "order" => metadata.known_order = Some(number(value)?),
            "aut_order" => metadata.aut_order = Some(number(value)?),
            "name" => metadata.name = Some(value.to_string()),
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing degree line".into(),
    })?;
    if generators.is_empty() {
        generators.push(Permutation::identity(degree));
    }
    Ok(GeneratorFile {
        degree,
        metadata,
        generators,
    })
}

/// Loads a generator file; a declared `order` must match the chain.
pub fn load_group(path: &Path) -> Result<GroupHandle> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file = parse_generator_file(&text)?;
    let mut metadata = file.metadata;
    if metadata.name.is_none() {
        metadata.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    GroupHandle::build(file.generators, metadata)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_metadata_and_cycles() {
        let text = "# S3\ndegree 3\norder 6\nname S3 # trailing\n( 1 , 2 )\n(1,2,3)\n";
        let f = parse_generator_file(text).unwrap();
        assert_eq!(f.degree, 3);
        assert_eq!(f.metadata.known_order, Some(6));
        assert_eq!(f.metadata.name.as_deref(), Some("S3"));
        assert_eq!(f.generators.len(), 2);
        let g = GroupHandle::build(f.generators, f.metadata).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn wrong_declared_order_is_hard_error() {
        let f = parse_generator_file("degree 3\norder 5\n(1,2,3)\n(1,2)\n").unwrap();
        let err = GroupHandle::build(f.generators, f.metadata).unwrap_err();
        assert!(err.is_data_integrity());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_generator_file("degree 3\n(1,4)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_generator_file("(1,2)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(parse_generator_file("order 3\n").is_err());
        assert!(parse_generator_file("degree 3\ncolour red\n").is_err());
    }
}
