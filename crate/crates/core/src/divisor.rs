//! The divisor monoids A_ω: tangibles are the divisors of ω.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::ambient::{Ambient, AmbientMode};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::quotients::{FormRequest, QuotientElement, QuotientPresentation};
use crate::relations::MfceRelation;

#[derive(Clone, Debug)]
pub struct DivisorMonoid {
    omega: Monomial,
    presentation: QuotientPresentation,
    divisors: Vec<Monomial>,
    complements: HashMap<Monomial, Monomial>,
}

impl DivisorMonoid {
    /// A_ω = 𝔄/⋁_i Eq(t_i^{r_i+1}, c^{r_i+1}) over all letters of the ambient.
    pub fn new(ambient: Arc<Ambient>, omega: Monomial) -> Result<Self> {
        if !ambient.all_unit_weights() || ambient.mode() != AmbientMode::Full {
            return Err(Error::Precondition("A_ω needs a full ambient with unit weights".into()));
        }
        if omega.rank() != ambient.rank() {
            return Err(Error::AmbientMismatch);
        }
        if omega.is_one() {
            return Err(Error::Precondition("ω must differ from 1".into()));
        }
        let powers: Vec<Monomial> = (0..ambient.rank())
            .map(|i| ambient.generator(i).pow(omega.exponent(i) + 1))
            .collect();
        let relation = MfceRelation::fiberwise_equalizer(ambient.clone(), &powers)?;
        let presentation = QuotientPresentation::build(
            relation,
            FormRequest::TangiblyFinite {
                max_degree: Some(ambient.degree(&omega) + 1),
            },
        )?;
        let divisors = omega.divisors();
        let complements = divisors
            .iter()
            .map(|z| (z.clone(), omega.checked_div(z).expect("divisor")))
            .collect();
        Ok(DivisorMonoid {
            omega,
            presentation,
            divisors,
            complements,
        })
    }

    pub fn omega(&self) -> &Monomial {
        &self.omega
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.presentation
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        self.presentation.ambient()
    }

    /// 𝒯(A_ω) in graded order.
    pub fn divisors(&self) -> &[Monomial] {
        &self.divisors
    }

    pub fn contains(&self, z: &Monomial) -> bool {
        z.divides(&self.omega)
    }

    /// z* = ω/z.
    pub fn complement(&self, z: &Monomial) -> Result<Monomial> {
        self.complements
            .get(z)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("`{}` does not divide ω", self.ambient().format_monomial(z))))
    }

    /// π(z) for any monomial: itself if it divides ω, otherwise its ghost.
    pub fn element(&self, z: &Monomial) -> QuotientElement {
        if self.contains(z) {
            QuotientElement::Tangible(z.clone())
        } else {
            QuotientElement::Ghost(self.ambient().ghost_of(z))
        }
    }

    /// z1 ·_ω z2.
    pub fn mul(&self, a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
        match (a, b) {
            (QuotientElement::Tangible(x), QuotientElement::Tangible(y)) => self.element(&x.mul(y)),
            _ => QuotientElement::Ghost(self.presentation.nu(a) * self.presentation.nu(b)),
        }
    }
}

/// p_{ω′,ω}: ghosts fixed, tangibles sent to their gcd with the smaller ω.
pub fn project_p(big: &DivisorMonoid, small: &DivisorMonoid, v: &QuotientElement) -> Result<QuotientElement> {
    if !small.omega.divides(&big.omega) {
        return Err(Error::Precondition("the target ω must divide the source ω".into()));
    }
    match v {
        QuotientElement::Ghost(g) => Ok(QuotientElement::Ghost(*g)),
        QuotientElement::Tangible(z) if big.contains(z) => Ok(QuotientElement::Tangible(z.gcd(&small.omega))),
        QuotientElement::Tangible(z) => Err(Error::Precondition(format!(
            "`{}` is not a tangible of the source",
            big.ambient().format_monomial(z)
        ))),
    }
}

/// The unique z | ω1 ∨ ω2 with z ∧ ω1 = z1 and z ∧ ω2 = z2, namely z1 ∨ z2.
pub fn fiber_glue(omega1: &Monomial, omega2: &Monomial, z1: &Monomial, z2: &Monomial) -> Result<Monomial> {
    if !z1.divides(omega1) || !z2.divides(omega2) {
        return Err(Error::Precondition("z1 | ω1 and z2 | ω2 are required".into()));
    }
    if z1.gcd(omega2) != omega1.gcd(z2) {
        return Err(Error::Incompatible("z1 ∧ ω2 differs from ω1 ∧ z2".into()));
    }
    Ok(z1.lcm(z2))
}

/// Splits z | ω1ω2 as z = u·v with u | ω1 ∧ ω2 and v | ω1 ∨ ω2.
///
/// Such splittings exist but need not be unique; the returned one takes the largest
/// possible v, namely v = z ∧ (ω1 ∨ ω2).
pub fn split_gcd_lcm(omega1: &Monomial, omega2: &Monomial, z: &Monomial) -> Result<(Monomial, Monomial)> {
    if !z.divides(&omega1.mul(omega2)) {
        return Err(Error::Precondition("z must divide ω1ω2".into()));
    }
    let v = z.gcd(&omega1.lcm(omega2));
    let u = z.checked_div(&v).expect("v divides z");
    debug_assert!(u.divides(&omega1.gcd(omega2)));
    Ok((u, v))
}

/// All splittings z = u·v with u | ω1 ∧ ω2 and v | ω1 ∨ ω2.
pub fn all_splittings(omega1: &Monomial, omega2: &Monomial, z: &Monomial) -> Vec<(Monomial, Monomial)> {
    let (g, l) = (omega1.gcd(omega2), omega1.lcm(omega2));
    z.divisors()
        .into_iter()
        .filter(|u| u.divides(&g))
        .filter_map(|u| {
            let v = z.checked_div(&u)?;
            v.divides(&l).then_some((u, v))
        })
        .collect()
}

/// Comparison of tangible sets of setwise products of divisor monoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetwiseReport {
    /// 𝒯(A_{ω1})·𝒯(A_{ω2}).
    pub product: Vec<Monomial>,
    /// 𝒯(A_{ω1ω2}).
    pub of_product: Vec<Monomial>,
    /// 𝒯(A_{ω1∧ω2})·𝒯(A_{ω1∨ω2}).
    pub lattice_product: Vec<Monomial>,
}

impl SetwiseReport {
    pub fn product_matches(&self) -> bool {
        self.product == self.of_product
    }

    pub fn lattice_matches(&self) -> bool {
        self.product == self.lattice_product
    }
}

fn products(a: &Monomial, b: &Monomial) -> Vec<Monomial> {
    let set: BTreeSet<Monomial> = a
        .divisors()
        .iter()
        .flat_map(|x| b.divisors().into_iter().map(move |y| x.mul(&y)))
        .collect();
    set.into_iter().collect()
}

pub fn setwise_product(omega1: &Monomial, omega2: &Monomial) -> SetwiseReport {
    SetwiseReport {
        product: products(omega1, omega2),
        of_product: omega1.mul(omega2).divisors(),
        lattice_product: products(&omega1.gcd(omega2), &omega1.lcm(omega2)),
    }
}
