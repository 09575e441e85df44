//! Weighted ambient free supertropical monoids 𝔄(I) and 𝔄′.

use std::fmt;

use crate::error::{Error, Result};
use crate::ghost::GhostValue;
use crate::monomial::Monomial;

/// A letter of the ambient together with its ghost degree (`e·g = c^weight`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Generator {
            name: name.into(),
            weight,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbientMode {
    /// Every monomial is tangible.
    Full,
    /// A monomial other than 1 is tangible only if it involves a generator of positive weight.
    PositiveWeightRequired,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    generators: Vec<Generator>,
    mode: AmbientMode,
}

/// An element of the ambient monoid: a tangible monomial or an element of M.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AmbientElement {
    Tangible(Monomial),
    Ghost(GhostValue),
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ambient {
    pub fn new(generators: Vec<Generator>, mode: AmbientMode) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidAmbient(format!("`{}` is not an identifier", g.name)));
            }
            if matches!(g.name.as_str(), "e" | "c" | "d") {
                return Err(Error::InvalidAmbient(format!(
                    "`{}` is reserved for the ghost chain",
                    g.name
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidAmbient(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(Ambient { generators, mode })
    }

    /// Unit-weight letters in Full mode.
    pub fn uniform<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ambient::new(
            names.iter().map(|n| Generator::new(n.as_ref(), 1)).collect(),
            AmbientMode::Full,
        )
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn mode(&self) -> AmbientMode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.generators[index].weight
    }

    pub fn max_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn has_weightless_generator(&self) -> bool {
        self.generators.iter().any(|g| g.weight == 0)
    }

    pub fn all_unit_weights(&self) -> bool {
        self.generators.iter().all(|g| g.weight == 1)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.rank())
    }

    pub fn generator(&self, index: usize) -> Monomial {
        Monomial::generator(self.rank(), index)
    }

    pub fn degree(&self, z: &Monomial) -> u32 {
        z.exponents()
            .iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.weight)
            .sum()
    }

    pub fn ghost_of(&self, z: &Monomial) -> GhostValue {
        GhostValue::Power(self.degree(z))
    }

    pub fn is_tangible(&self, z: &Monomial) -> bool {
        match self.mode {
            AmbientMode::Full => true,
            AmbientMode::PositiveWeightRequired => z.is_one() || z.support().any(|i| self.generators[i].weight > 0),
        }
    }

    pub fn element(&self, z: Monomial) -> Result<AmbientElement> {
        if self.is_tangible(&z) {
            Ok(AmbientElement::Tangible(z))
        } else {
            Err(Error::NotTangible(self.format_monomial(&z)))
        }
    }

    pub fn nu(&self, a: &AmbientElement) -> GhostValue {
        match a {
            AmbientElement::Tangible(z) => self.ghost_of(z),
            AmbientElement::Ghost(g) => *g,
        }
    }

    pub fn mul(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        match (a, b) {
            (AmbientElement::Tangible(x), AmbientElement::Tangible(y)) => AmbientElement::Tangible(x.mul(y)),
            _ => AmbientElement::Ghost(self.nu(a) * self.nu(b)),
        }
    }

    /// Tangible monomials of weighted degree `k`, sorted. Exponents of weight-0
    /// generators are capped by `exponent_bound`, which is then mandatory.
    pub fn monomials_of_degree(&self, k: u32, exponent_bound: Option<u32>) -> Result<Vec<Monomial>> {
        if self.has_weightless_generator() && exponent_bound.is_none() {
            return Err(Error::UnboundedSlice(k));
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.rank()];
        self.fill(0, k, exponent_bound.unwrap_or(0), &mut exps, &mut out);
        out.retain(|z| self.is_tangible(z));
        out.sort();
        Ok(out)
    }

    fn fill(&self, index: usize, remaining: u32, bound: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if index == self.rank() {
            if remaining == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let w = self.generators[index].weight;
        let cap = if w == 0 { bound } else { remaining / w };
        for e in 0..=cap {
            exps[index] = e;
            self.fill(index + 1, remaining - e * w, bound, exps, out);
        }
        exps[index] = 0;
    }

    /// Parses `1` or `name[^k]*name[^k]...`.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let mut exps = vec![0u32; self.rank()];
        let trimmed = text.trim();
        let base = text.len() - text.trim_start().len();
        if trimmed == "1" {
            return Ok(Monomial::from_exponents(exps));
        }
        if trimmed.is_empty() {
            return Err(Error::Syntax {
                position: base,
                message: "empty monomial".into(),
            });
        }
        let mut offset = base;
        for factor in trimmed.split('*') {
            let lead = factor.len() - factor.trim_start().len();
            let f = factor.trim();
            let (name, power) = match f.split_once('^') {
                Some((n, p)) => {
                    let p = p.trim();
                    let value = p.parse::<u32>().ok().filter(|&v| v > 0).ok_or(Error::Syntax {
                        position: offset + lead + n.len() + 1,
                        message: format!("expected a positive exponent, found `{p}`"),
                    })?;
                    (n.trim(), value)
                }
                None => (f, 1),
            };
            if !is_identifier(name) {
                return Err(Error::Syntax {
                    position: offset + lead,
                    message: format!("expected a generator name, found `{name}`"),
                });
            }
            let index = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            exps[index] += power;
            offset += factor.len() + 1;
        }
        Ok(Monomial::from_exponents(exps))
    }

    pub fn format_monomial(&self, z: &Monomial) -> String {
        if z.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = z
            .support()
            .map(|i| match z.exponent(i) {
                1 => self.generators[i].name.clone(),
                e => format!("{}^{}", self.generators[i].name, e),
            })
            .collect();
        parts.join("*")
    }

    /// Parses a ghost (`e`, `0`, `c^k`) or a tangible monomial.
    pub fn parse_element(&self, text: &str) -> Result<AmbientElement> {
        match GhostValue::parse_with(text, 'c') {
            Ok(g) => Ok(AmbientElement::Ghost(g)),
            Err(_) => self.element(self.parse_monomial(text)?),
        }
    }

    pub fn format_element(&self, a: &AmbientElement) -> String {
        match a {
            AmbientElement::Tangible(z) => self.format_monomial(z),
            AmbientElement::Ghost(g) => g.to_string(),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, g.weight))
            .collect();
        let mode = match self.mode {
            AmbientMode::Full => "full",
            AmbientMode::PositiveWeightRequired => "positive-weight",
        };
        write!(f, "{} ({mode})", gens.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ux(mode: AmbientMode) -> Ambient {
        Ambient::new(vec![Generator::new("u", 0), Generator::new("x", 1)], mode).unwrap()
    }

    #[test]
    fn multiplication_rules() {
        let a = ux(AmbientMode::Full);
        let u = AmbientElement::Tangible(a.parse_monomial("u").unwrap());
        let x = AmbientElement::Tangible(a.parse_monomial("x").unwrap());
        assert_eq!(
            a.mul(&u, &x),
            AmbientElement::Tangible(a.parse_monomial("u*x").unwrap())
        );
        let g = AmbientElement::Ghost(GhostValue::Power(2));
        assert_eq!(a.mul(&x, &g), AmbientElement::Ghost(GhostValue::Power(3)));
        let p = ux(AmbientMode::PositiveWeightRequired);
        let lhs = p.element(p.parse_monomial("u*x").unwrap()).unwrap();
        let rhs = p.element(p.parse_monomial("u*x^2").unwrap()).unwrap();
        assert_eq!(
            p.mul(&lhs, &rhs),
            AmbientElement::Tangible(p.parse_monomial("u^2*x^3").unwrap())
        );
    }

    #[test]
    fn ghost_degrees() {
        let a = ux(AmbientMode::Full);
        assert_eq!(a.ghost_of(&a.parse_monomial("u^2*x^3").unwrap()), GhostValue::Power(3));
        assert_eq!(a.ghost_of(&a.one()), GhostValue::E);
        let t = Ambient::uniform(&["t1", "t2"]).unwrap();
        assert_eq!(t.ghost_of(&t.parse_monomial("t1*t2").unwrap()), GhostValue::Power(2));
    }

    #[test]
    fn parse_and_format() {
        let a = ux(AmbientMode::Full);
        let z = a.parse_monomial("u^2*x^3").unwrap();
        assert_eq!(z.exponents(), &[2, 3]);
        assert_eq!(a.format_monomial(&z), "u^2*x^3");
        assert!(a.parse_monomial("1").unwrap().is_one());
        assert_eq!(a.parse_monomial("x * u").unwrap(), a.parse_monomial("u*x").unwrap());
        assert_eq!(a.parse_monomial("y"), Err(Error::UnknownGenerator("y".into())));
        assert!(matches!(a.parse_monomial("u^0"), Err(Error::Syntax { .. })));
        assert!(matches!(a.parse_monomial("u**x"), Err(Error::Syntax { .. })));
        assert_eq!(
            a.parse_element("c^4").unwrap(),
            AmbientElement::Ghost(GhostValue::Power(4))
        );
    }

    #[test]
    fn rejects_bad_ambients() {
        assert!(Ambient::uniform(&["x", "x"]).is_err());
        assert!(Ambient::uniform(&["c"]).is_err());
        assert!(Ambient::uniform(&["2x"]).is_err());
    }

    #[test]
    fn restricted_mode_tangibles_exhaustive() {
        let p = ux(AmbientMode::PositiveWeightRequired);
        let full = ux(AmbientMode::Full);
        for k in 0..=8 {
            let tangible = p.monomials_of_degree(k, Some(8)).unwrap();
            for z in full.monomials_of_degree(k, Some(8)).unwrap() {
                let excluded = z.exponent(1) == 0 && z.exponent(0) >= 1;
                assert_eq!(tangible.contains(&z), !excluded);
            }
            for a in &tangible {
                for b in p.monomials_of_degree(8 - k, Some(8)).unwrap() {
                    assert!(p.is_tangible(&a.mul(&b)));
                }
            }
        }
    }

    #[test]
    fn weightless_slices_need_a_bound() {
        assert_eq!(
            ux(AmbientMode::Full).monomials_of_degree(1, None),
            Err(Error::UnboundedSlice(1))
        );
    }

    proptest! {
        #[test]
        fn round_trip(e in proptest::collection::vec(0u32..5, 2)) {
            let a = ux(AmbientMode::Full);
            let z = Monomial::from_exponents(e);
            prop_assert_eq!(a.parse_monomial(&a.format_monomial(&z)).unwrap(), z);
        }

        #[test]
        fn degree_is_a_homomorphism(a in proptest::collection::vec(0u32..5, 2), b in proptest::collection::vec(0u32..5, 2), ga in proptest::bool::ANY, gb in proptest::bool::ANY) {
            let amb = ux(AmbientMode::Full);
            let lift = |e: Vec<u32>, ghost: bool| {
                let z = Monomial::from_exponents(e);
                if ghost { AmbientElement::Ghost(amb.ghost_of(&z)) } else { AmbientElement::Tangible(z) }
            };
            let (x, y) = (lift(a, ga), lift(b, gb));
            prop_assert_eq!(amb.nu(&amb.mul(&x, &y)), amb.nu(&x) * amb.nu(&y));
        }
    }
}
