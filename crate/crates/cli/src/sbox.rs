//! `--sbox` specifications.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use boomtab::equiv;
use boomtab::lutfile::LutFile;
use boomtab::{Error, FieldCtx, Result, VecFun};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SboxSpec {
    Power(u64),
    Gold(u32),
    Kasami(u32),
    Bracken(u32),
    Inverse,
    /// Coefficient literals c0, c1, ... (hex or g^k), parsed once the field is known.
    Poly(Vec<String>),
    Lut(PathBuf),
    /// X^9 + (X^8 + X) Tr(X^9 + X) over GF(2^5).
    GoldCcz5,
}

fn int<T: FromStr>(spec: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {v:?} in sbox {spec:?}")))
}

impl FromStr for SboxSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let need = || arg.ok_or_else(|| Error::Parse(format!("sbox {s:?} needs an argument, as in {head}:<value>")));
        Ok(match head.to_ascii_lowercase().as_str() {
            "power" => SboxSpec::Power(int(s, need()?)?),
            "gold" => SboxSpec::Gold(int(s, need()?)?),
            "kasami" => SboxSpec::Kasami(int(s, need()?)?),
            "bracken" => SboxSpec::Bracken(int(s, need()?)?),
            "inverse" if arg.is_none() => SboxSpec::Inverse,
            "poly" => {
                let cs: Vec<String> = need()?.split(',').map(|c| c.trim().to_string()).collect();
                if cs.iter().any(String::is_empty) {
                    return Err(Error::Parse(format!("empty coefficient in {s:?}")));
                }
                SboxSpec::Poly(cs)
            }
            "lut" => {
                let path = need()?
                    .strip_prefix('@')
                    .ok_or_else(|| Error::Parse(format!("expected lut:@<path>, got {s:?}")))?;
                SboxSpec::Lut(PathBuf::from(path))
            }
            "gold-ccz5" if arg.is_none() => SboxSpec::GoldCcz5,
            _ => return Err(Error::Parse(format!("unknown sbox {s:?}"))),
        })
    }
}

/// Field flags shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct FieldChoice {
    pub n: Option<u32>,
    pub modulus: Option<u64>,
}

impl FieldChoice {
    pub fn field(&self) -> Result<Arc<FieldCtx>> {
        let n = self.n.ok_or_else(|| Error::Parse("--n is required".into()))?;
        Ok(Arc::new(FieldCtx::new(n, self.modulus)?))
    }
}

impl SboxSpec {
    /// Resolves the spec; LUT files supply their own n and modulus, which must
    /// agree with any given on the command line.
    pub fn resolve(&self, choice: &FieldChoice) -> Result<VecFun> {
        if let SboxSpec::Lut(path) = self {
            let lut = LutFile::read(path)?;
            if let Some(n) = choice.n.filter(|&n| n != lut.n) {
                return Err(Error::Parse(format!(
                    "--n {n} conflicts with n={} in {}",
                    lut.n,
                    path.display()
                )));
            }
            let modulus = match (choice.modulus, lut.modulus) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Parse(format!(
                        "--modulus {a:#x} conflicts with modulus={b:x} in {}",
                        path.display()
                    )))
                }
                (a, b) => a.or(b),
            };
            let lut = LutFile { modulus, ..lut };
            return lut.into_vecfun(Some(path.display().to_string()));
        }
        let field = choice.field()?;
        Ok(match self {
            SboxSpec::Power(d) => VecFun::power(field, *d),
            SboxSpec::Gold(s) => VecFun::gold(field, *s),
            SboxSpec::Kasami(s) => VecFun::kasami(field, *s),
            SboxSpec::Bracken(s) => VecFun::bracken(field, *s),
            SboxSpec::Inverse => VecFun::inverse_map(field),
            SboxSpec::Poly(cs) => {
                let coeffs = cs.iter().map(|c| field.parse_elem(c)).collect::<Result<_>>()?;
                VecFun::polynomial(field, coeffs)?
            }
            SboxSpec::GoldCcz5 => equiv::gold_ccz5_pair(field)?.1,
            SboxSpec::Lut(_) => unreachable!(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!("power:11".parse::<SboxSpec>().unwrap(), SboxSpec::Power(11));
        assert_eq!("gold:2".parse::<SboxSpec>().unwrap(), SboxSpec::Gold(2));
        assert_eq!("inverse".parse::<SboxSpec>().unwrap(), SboxSpec::Inverse);
        assert_eq!("gold-ccz5".parse::<SboxSpec>().unwrap(), SboxSpec::GoldCcz5);
        assert_eq!(
            "poly:0,1,g^3".parse::<SboxSpec>().unwrap(),
            SboxSpec::Poly(vec!["0".into(), "1".into(), "g^3".into()])
        );
        assert_eq!("lut:@a.txt".parse::<SboxSpec>().unwrap(), SboxSpec::Lut("a.txt".into()));
        for bad in ["power", "power:x", "lut:a.txt", "inverse:3", "cube:3", "poly:1,,2"] {
            assert!(bad.parse::<SboxSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn resolves() {
        let choice = FieldChoice {
            n: Some(5),
            modulus: None,
        };
        let f = SboxSpec::Poly(vec!["0".into(), "1".into(), "0".into(), "1".into()])
            .resolve(&choice)
            .unwrap();
        assert_eq!(
            f.lut(),
            SboxSpec::Power(3)
                .resolve(&choice)
                .unwrap()
                .lut()
                .iter()
                .enumerate()
                .map(|(x, y)| x as u32 ^ y)
                .collect::<Vec<_>>()
        );
        assert!(SboxSpec::GoldCcz5
            .resolve(&FieldChoice {
                n: Some(6),
                modulus: None
            })
            .is_err());
        assert!(SboxSpec::Power(3).resolve(&FieldChoice::default()).is_err());
    }
}
