use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::file::load_group;
use super::linear::{make_pgl2, make_psl2};
use super::standard::{direct_product, make_standard, StandardFamily};
use crate::error::{Error, Result};
use crate::perm::GroupHandle;

/// A group named by constructor parameters or by a generator file.
///
/// Text form: `psl2:q`, `pgl2:q`, `sym:n`, `alt:n`, `dih:n`, `cyc:n`,
/// `prod:<spec>,<spec>`, `file:<path>`. Products nest to the left:
/// `prod:prod:a,b,c` is `(a x b) x c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Psl2(u64),
    Pgl2(u64),
    Standard(StandardFamily, usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupHandle> {
        match self {
            GroupSpec::Psl2(q) => make_psl2(*q),
            GroupSpec::Pgl2(q) => make_pgl2(*q),
            GroupSpec::Standard(family, n) => make_standard(*family, *n),
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
            GroupSpec::File(path) => load_group(path),
        }
    }

    /// Every data file the spec refers to.
    pub fn files(&self) -> Vec<PathBuf> {
        match self {
            GroupSpec::File(p) => vec![p.clone()],
            GroupSpec::Product(a, b) => {
                let mut v = a.files();
                v.extend(b.files());
                v
            }
            _ => Vec::new(),
        }
    }

    fn parse_prefix(s: &str) -> Result<(GroupSpec, &str)> {
        let bad = || Error::InvalidParameter(format!("bad group spec {s:?}"));
        let (family, rest) = s.split_once(':').ok_or_else(bad)?;
        if family == "prod" {
            let (left, rest) = GroupSpec::parse_prefix(rest)?;
            let rest = rest.strip_prefix(',').ok_or_else(bad)?;
            let (right, rest) = GroupSpec::parse_prefix(rest)?;
            return Ok((GroupSpec::Product(Box::new(left), Box::new(right)), rest));
        }
        let end = rest.find(',').unwrap_or(rest.len());
        let (arg, tail) = rest.split_at(end);
        if arg.is_empty() {
            return Err(bad());
        }
        let number = || arg.parse::<u64>().map_err(|_| bad());
        let spec = match family {
            "psl2" => GroupSpec::Psl2(number()?),
            "pgl2" => GroupSpec::Pgl2(number()?),
            "file" => GroupSpec::File(PathBuf::from(arg)),
            other => {
                let fam: StandardFamily = other.parse()?;
                GroupSpec::Standard(fam, number()? as usize)
            }
        };
        Ok((spec, tail))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (spec, rest) = GroupSpec::parse_prefix(s)?;
        if !rest.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "trailing {rest:?} in group spec {s:?}"
            )));
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "pgl2:{q}"),
            GroupSpec::Standard(fam, n) => write!(f, "{fam}:{n}"),
            GroupSpec::Product(a, b) => write!(f, "prod:{a},{b}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["psl2:7", "pgl2:9", "sym:4", "alt:9", "dih:6", "cyc:3", "prod:psl2:7,psl2:8", "prod:prod:cyc:2,cyc:3,sym:3", "file:data/m12.gens"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let spec: GroupSpec = "prod:prod:cyc:2,cyc:3,sym:3".parse().unwrap();
        assert!(matches!(spec, GroupSpec::Product(ref a, _) if matches!(**a, GroupSpec::Product(..))));
    }

    #[test]
    fn parse_errors() {
        for s in ["psl2", "psl2:", "psl2:x", "foo:3", "prod:cyc:2", "cyc:2,cyc:3", ""] {
            assert!(s.parse::<GroupSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn build_product() {
        let g = "prod:psl2:7,psl2:8".parse::<GroupSpec>().unwrap().build().unwrap();
        assert_eq!((g.degree(), g.order()), (17, 84672));
        assert_eq!(g.metadata().aut_order, Some(336 * 1512));
    }
}
