//! Presentation files: a line-oriented description of a quotient of an ambient.
//!
//! ```text
//! # U₃
//! generators u:0 x:1
//! ambient full
//! mode tangibly-finite
//! ghostify x^4 u*x^3 u^2*x^2 u^3*x u^4
//! identify x1^2 = x1*x2
//! bound 6
//! zeta top = x^3
//! ```
//!
//! `generators` takes `name[:weight]` tokens (weight defaults to 1). Stanzas may appear in
//! any order; `generators` is required and may appear once, as may `ambient`, `mode` and `bound`.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::ambient::{Ambient, AmbientMode, Generator};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::quotients::{FormRequest, QuotientPresentation};
use crate::relations::{GeneratorPair, MfceRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    TangiblyFinite,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub ambient: Arc<Ambient>,
    pub mode: Mode,
    pub ghostify: Vec<Monomial>,
    pub identify: Vec<(Monomial, Monomial)>,
    /// Exponent bound for weight-0 generators.
    pub bound: Option<u32>,
    pub zetas: Vec<(String, Monomial)>,
}

struct Stanza<'a> {
    keyword: &'a str,
    keyword_at: usize,
    rest: &'a str,
    rest_at: usize,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

/// Shifts positions of errors raised while parsing a substring that starts at `base`.
fn rebase(err: Error, base: usize) -> Error {
    match err {
        Error::Syntax { position, message } => Error::Syntax {
            position: base + position,
            message,
        },
        other => other,
    }
}

fn stanzas(text: &str) -> Vec<Stanza<'_>> {
    let mut out = Vec::new();
    let mut start = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if !trimmed.trim().is_empty() {
            let keyword_at = start + content.len() - trimmed.len();
            let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest_at = keyword_at + keyword.len() + usize::from(!rest.is_empty());
            out.push(Stanza {
                keyword,
                keyword_at,
                rest: rest.trim_end(),
                rest_at,
            });
        }
        start += line.len();
    }
    out
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str, base: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split_whitespace() {
        let at = offset + text[offset..].find(piece).unwrap_or(0);
        out.push((piece, base + at));
        offset = at + piece.len();
    }
    out
}

fn parse_generators(s: &Stanza<'_>) -> Result<Vec<Generator>> {
    let toks = tokens(s.rest, s.rest_at);
    if toks.is_empty() {
        return Err(syntax(s.rest_at, "`generators` needs at least one name"));
    }
    toks.into_iter()
        .map(|(tok, at)| match tok.split_once(':') {
            None => Ok(Generator::new(tok, 1)),
            Some((name, w)) => w
                .parse::<u32>()
                .map(|w| Generator::new(name, w))
                .map_err(|_| syntax(at + name.len() + 1, format!("bad weight `{w}`"))),
        })
        .collect()
}

fn parse_single<'a>(s: &Stanza<'a>) -> Result<&'a str> {
    match tokens(s.rest, s.rest_at).as_slice() {
        [(tok, _)] => Ok(tok),
        _ => Err(syntax(s.rest_at, format!("`{}` takes exactly one value", s.keyword))),
    }
}

fn once<T>(slot: &mut Option<T>, value: T, s: &Stanza<'_>) -> Result<()> {
    if slot.is_some() {
        return Err(syntax(s.keyword_at, format!("duplicate `{}` stanza", s.keyword)));
    }
    *slot = Some(value);
    Ok(())
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self> {
        let stanzas = stanzas(text);
        let mut generators = None;
        let mut ambient_mode = None;
        let mut mode = None;
        let mut bound = None;
        for s in &stanzas {
            match s.keyword {
                "generators" => once(&mut generators, parse_generators(s)?, s)?,
                "ambient" => {
                    let m = match parse_single(s)? {
                        "full" => AmbientMode::Full,
                        "positive-weight" => AmbientMode::PositiveWeightRequired,
                        other => return Err(syntax(s.rest_at, format!("unknown ambient `{other}`"))),
                    };
                    once(&mut ambient_mode, m, s)?;
                }
                "mode" => {
                    let m = match parse_single(s)? {
                        "tangibly-finite" => Mode::TangiblyFinite,
                        "ideal" => Mode::Ideal,
                        other => return Err(syntax(s.rest_at, format!("unknown mode `{other}`"))),
                    };
                    once(&mut mode, m, s)?;
                }
                "bound" => {
                    let n = parse_single(s)?
                        .parse::<u32>()
                        .map_err(|_| syntax(s.rest_at, "`bound` takes a natural number"))?;
                    once(&mut bound, n, s)?;
                }
                "ghostify" | "identify" | "zeta" => {}
                other => return Err(syntax(s.keyword_at, format!("unknown stanza `{other}`"))),
            }
        }
        let generators = generators.ok_or_else(|| syntax(0, "missing `generators` stanza"))?;
        let ambient = Arc::new(Ambient::new(generators, ambient_mode.unwrap_or(AmbientMode::Full))?);
        let monomial = |text: &str, at: usize| ambient.parse_monomial(text).map_err(|e| rebase(e, at));
        let mut file = PresentationFile {
            ambient: ambient.clone(),
            mode: mode.unwrap_or(Mode::TangiblyFinite),
            ghostify: Vec::new(),
            identify: Vec::new(),
            bound,
            zetas: Vec::new(),
        };
        for s in &stanzas {
            match s.keyword {
                "ghostify" => {
                    let toks = tokens(s.rest, s.rest_at);
                    if toks.is_empty() {
                        return Err(syntax(s.rest_at, "`ghostify` needs at least one monomial"));
                    }
                    for (tok, at) in toks {
                        file.ghostify.push(monomial(tok, at)?);
                    }
                }
                "identify" => {
                    let (a, b) = s
                        .rest
                        .split_once('=')
                        .ok_or_else(|| syntax(s.rest_at, "expected `identify a = b`"))?;
                    let b_at = s.rest_at + a.len() + 1;
                    file.identify.push((monomial(a, s.rest_at)?, monomial(b, b_at)?));
                }
                "zeta" => {
                    let (name, z) = s
                        .rest
                        .split_once('=')
                        .ok_or_else(|| syntax(s.rest_at, "expected `zeta name = monomial`"))?;
                    let name = name.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(syntax(s.rest_at, "a zeta name is one word"));
                    }
                    file.zetas.push((
                        name.to_string(),
                        monomial(z, s.rest_at + s.rest.find('=').unwrap_or(0) + 1)?,
                    ));
                }
                _ => {}
            }
        }
        Ok(file)
    }

    pub fn emit(&self) -> String {
        let a = &self.ambient;
        let mut out = String::new();
        let gens: Vec<String> = a
            .generators()
            .iter()
            .map(|g| format!("{}:{}", g.name, g.weight))
            .collect();
        let _ = writeln!(out, "generators {}", gens.join(" "));
        let _ = writeln!(
            out,
            "ambient {}",
            match a.mode() {
                AmbientMode::Full => "full",
                AmbientMode::PositiveWeightRequired => "positive-weight",
            }
        );
        let _ = writeln!(
            out,
            "mode {}",
            match self.mode {
                Mode::TangiblyFinite => "tangibly-finite",
                Mode::Ideal => "ideal",
            }
        );
        if let Some(b) = self.bound {
            let _ = writeln!(out, "bound {b}");
        }
        if !self.ghostify.is_empty() {
            let ms: Vec<String> = self.ghostify.iter().map(|z| a.format_monomial(z)).collect();
            let _ = writeln!(out, "ghostify {}", ms.join(" "));
        }
        for (x, y) in &self.identify {
            let _ = writeln!(out, "identify {} = {}", a.format_monomial(x), a.format_monomial(y));
        }
        for (name, z) in &self.zetas {
            let _ = writeln!(out, "zeta {name} = {}", a.format_monomial(z));
        }
        out
    }

    pub fn relation(&self) -> Result<MfceRelation> {
        let pairs = self
            .ghostify
            .iter()
            .map(|z| GeneratorPair::Ghostify(z.clone()))
            .chain(
                self.identify
                    .iter()
                    .map(|(x, y)| GeneratorPair::Identify(x.clone(), y.clone())),
            )
            .collect();
        let r = MfceRelation::from_pairs(self.ambient.clone(), pairs)?;
        Ok(match self.bound {
            Some(b) => r.with_exponent_bound(b),
            None => r,
        })
    }

    /// Builds the quotient; `max_degree` is the degree window of the tangibly finite form.
    pub fn build(&self, max_degree: Option<u32>) -> Result<QuotientPresentation> {
        let request = match self.mode {
            Mode::Ideal => FormRequest::Ideal,
            Mode::TangiblyFinite => FormRequest::TangiblyFinite { max_degree },
        };
        QuotientPresentation::build(self.relation()?, request)
    }

    pub fn zeta(&self, name: &str) -> Option<&Monomial> {
        self.zetas.iter().find(|(n, _)| n == name).map(|(_, z)| z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const U3: &str = "# U3\ngenerators u:0 x\nghostify x^4 u*x^3 u^2*x^2 u^3*x u^4\nzeta top = x^3\n";

    #[test]
    fn parses_and_builds() {
        let f = PresentationFile::parse(U3).unwrap();
        assert_eq!(f.ambient.weight(0), 0);
        assert_eq!(f.ghostify.len(), 5);
        let u = f.build(None).unwrap();
        assert_eq!(u.tangible_count().unwrap(), 10);
        assert_eq!(f.zeta("top"), Some(&Monomial::from_exponents(vec![0, 3])));
    }

    #[test]
    fn unknown_stanza_reports_position() {
        let err = PresentationFile::parse("generators x\n  frobnicate x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                position: 15,
                message: "unknown stanza `frobnicate`".into()
            }
        );
    }

    #[test]
    fn monomial_errors_are_file_positions() {
        let err = PresentationFile::parse("generators x y\nghostify x^2 y^0\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { position: 30, .. }), "{err:?}");
        assert!(matches!(
            PresentationFile::parse("generators x\nghostify z\n"),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(PresentationFile::parse("ghostify x\n").is_err());
        assert!(PresentationFile::parse("generators x\nbound 2\nbound 3\n").is_err());
    }

    #[test]
    fn ideal_mode_rejects_identify() {
        let f = PresentationFile::parse("generators x y\nmode ideal\nidentify x = y\n").unwrap();
        assert!(matches!(f.build(None), Err(Error::Undecidable(_))));
    }

    fn arb_file() -> impl Strategy<Value = PresentationFile> {
        let mono = || prop::collection::vec(0u32..3, 2);
        (
            any::<bool>(),
            any::<bool>(),
            prop::collection::vec(mono(), 0..4),
            prop::collection::vec((mono(), mono()), 0..3),
            prop::option::of(1u32..9),
            prop::collection::vec(mono(), 0..2),
        )
            .prop_map(|(full, ideal, g, i, bound, z)| {
                let mode = if full {
                    AmbientMode::Full
                } else {
                    AmbientMode::PositiveWeightRequired
                };
                let ambient =
                    Arc::new(Ambient::new(vec![Generator::new("u", 0), Generator::new("x", 1)], mode).unwrap());
                PresentationFile {
                    ambient,
                    mode: if ideal { Mode::Ideal } else { Mode::TangiblyFinite },
                    ghostify: g.into_iter().map(Monomial::from_exponents).collect(),
                    identify: i
                        .into_iter()
                        .map(|(a, b)| (Monomial::from_exponents(a), Monomial::from_exponents(b)))
                        .collect(),
                    bound,
                    zetas: z
                        .into_iter()
                        .enumerate()
                        .map(|(k, m)| (format!("z{k}"), Monomial::from_exponents(m)))
                        .collect(),
                }
            })
    }

    proptest! {
        #[test]
        fn parse_emit_round_trip(f in arb_file()) {
            let text = f.emit();
            prop_assert_eq!(PresentationFile::parse(&text).unwrap(), f.clone());
            let spaced = text.replace(' ', "   ").replace('\n', "  \n\n");
            prop_assert_eq!(PresentationFile::parse(&spaced).unwrap(), f);
        }
    }
}
