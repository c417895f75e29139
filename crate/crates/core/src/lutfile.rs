//! Plain-text lookup table format.
//!
//! ```text
//! n=4
//! modulus=13
//! 0 1 3 ...
//! ```
//!
//! The `modulus=` line is optional (the default modulus for n is used when it
//! is absent). Values are 2^n hexadecimal numbers separated by whitespace, an
//! optional `0x` prefix is accepted. Lines starting with `#` are ignored.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::vecfun::{Family, VecFun};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LutFile {
    pub n: u32,
    pub modulus: Option<u64>,
    pub values: Vec<Elem>,
}

fn parse_hex(tok: &str) -> Result<u64> {
    let t = tok.strip_prefix("0x").unwrap_or(tok);
    u64::from_str_radix(t, 16).map_err(|_| Error::Parse(format!("bad hex value {tok:?}")))
}

impl LutFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lookup table file".into()))?;
        let n: u32 = first
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `n=<int>`, found {first:?}")))?;
        let mut modulus = None;
        let mut values = Vec::new();
        for line in lines {
            if let Some(m) = line.strip_prefix("modulus=") {
                if modulus.is_some() || !values.is_empty() {
                    return Err(Error::Parse("misplaced modulus line".into()));
                }
                modulus = Some(parse_hex(m.trim())?);
                continue;
            }
            for tok in line.split_whitespace() {
                values.push(parse_hex(tok)?);
            }
        }
        let expected = 1usize
            .checked_shl(n)
            .ok_or_else(|| Error::Parse(format!("n = {n} is too large")))?;
        if values.len() != expected {
            return Err(Error::LutLength {
                expected,
                got: values.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= expected as u64) {
            return Err(Error::LutValue { index, value });
        }
        Ok(LutFile {
            n,
            modulus,
            values: values.into_iter().map(|v| v as Elem).collect(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        if let Some(m) = self.modulus {
            out.push_str(&format!("modulus={m:x}\n"));
        }
        for chunk in self.values.chunks(16) {
            let row: Vec<String> = chunk.iter().map(|v| format!("{v:x}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    /// Builds the function; the field comes from the file's modulus line or the default.
    pub fn into_vecfun(self, source: Option<String>) -> Result<VecFun> {
        let field = Arc::new(FieldCtx::new(self.n, self.modulus)?);
        VecFun::from_lut(field, self.values, Family::LutFile { source })
    }

    pub fn from_vecfun(f: &VecFun) -> Self {
        LutFile {
            n: f.n(),
            modulus: Some(f.field().modulus()),
            values: f.lut().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let field = Arc::new(FieldCtx::new(4, None).unwrap());
        let f = VecFun::inverse_map(field);
        let text = LutFile::from_vecfun(&f).render();
        assert!(text.starts_with("n=4\nmodulus=13\n"));
        let back = LutFile::parse(&text).unwrap().into_vecfun(None).unwrap();
        assert_eq!(back.lut(), f.lut());
    }

    #[test]
    fn rejects_short_tables_and_garbage() {
        assert!(matches!(
            LutFile::parse("n=2\n0 1 2"),
            Err(Error::LutLength { expected: 4, got: 3 })
        ));
        assert!(matches!(LutFile::parse("n=2\n0 1 2 4"), Err(Error::LutValue { .. })));
        assert!(LutFile::parse("size=2\n0 1 2 3").is_err());
        assert!(LutFile::parse("n=2\n0 1 2 zz").is_err());
        let ok = LutFile::parse("# comment\nn=2\n0x0 0x1\n3 2\n").unwrap();
        assert_eq!(ok.values, vec![0, 1, 3, 2]);
        assert_eq!(ok.modulus, None);
    }
}
