//! Named instances used by the CLI's `paper` targets and by the acceptance suite.

use std::sync::Arc;

use crate::ambient::{Ambient, AmbientMode, Generator};
use crate::divisor::DivisorMonoid;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::quotients::QuotientPresentation;
use crate::relations::MfceRelation;
use crate::restricted::{Edge, RestrictedMonoid};

/// 𝔄(u:0, x:1).
pub fn ux_full() -> Arc<Ambient> {
    Arc::new(
        Ambient::new(vec![Generator::new("u", 0), Generator::new("x", 1)], AmbientMode::Full).expect("valid ambient"),
    )
}

/// 𝔄′(u:0, x:1): monomials without x are not tangible.
pub fn ux_restricted() -> Arc<Ambient> {
    Arc::new(
        Ambient::new(
            vec![Generator::new("u", 0), Generator::new("x", 1)],
            AmbientMode::PositiveWeightRequired,
        )
        .expect("valid ambient"),
    )
}

/// 𝔄(x1, x2).
pub fn plane() -> Arc<Ambient> {
    Arc::new(Ambient::uniform(&["x1", "x2"]).expect("valid ambient"))
}

/// U_d: 𝔄(u:0, x:1) with every monomial of total degree above d ghost.
pub fn u_d(d: u32) -> Result<QuotientPresentation> {
    let a = ux_full();
    let top: Vec<Monomial> = (0..=d + 1)
        .map(|i| Monomial::from_exponents(vec![i, d + 1 - i]))
        .collect();
    QuotientPresentation::tangibly_finite(MfceRelation::ideal_compression(a, &top)?)
}

/// U′_{i,j} = 𝔄′/Feq(u^i x^j).
pub fn u_prime(i: u32, j: u32) -> Result<QuotientPresentation> {
    if j == 0 {
        return Err(Error::NotTangible(format!("u^{i}")));
    }
    let a = ux_restricted();
    QuotientPresentation::ideal(MfceRelation::ghost_equalizer(a, Monomial::from_exponents(vec![i, j]))?)
}

/// The staircase T = {u²x⁴, u³x³, u⁴x², u⁷x²} over 𝔄′.
pub fn staircase_t() -> (Arc<Ambient>, Vec<Monomial>) {
    let t = [[2, 4], [3, 3], [4, 2], [7, 2]]
        .iter()
        .map(|e| Monomial::from_exponents(e.to_vec()))
        .collect();
    (ux_restricted(), t)
}

pub fn a_omega(ambient: Arc<Ambient>, omega: &str) -> Result<DivisorMonoid> {
    let w = ambient.parse_monomial(omega)?;
    DivisorMonoid::new(ambient, w)
}

/// w = x1³x2³.
pub fn chart_w() -> Monomial {
    Monomial::from_exponents(vec![3, 3])
}

/// U_w for w = x1³x2³ over U = A_w: all 16 divisors of w are tangible.
pub fn chart_full() -> Result<RestrictedMonoid> {
    let u = DivisorMonoid::new(plane(), chart_w())?;
    RestrictedMonoid::new(u.presentation(), &chart_w())
}

/// The printed chart: U_w over a U in which w itself is ghost, leaving 15 tangibles.
pub fn chart_printed() -> Result<RestrictedMonoid> {
    let a = plane();
    let ghosts = [vec![4, 0], vec![0, 4], vec![3, 3]].map(Monomial::from_exponents);
    let u = QuotientPresentation::tangibly_finite(MfceRelation::fiberwise_equalizer(a, &ghosts)?)?;
    RestrictedMonoid::new(&u, &chart_w())
}

/// The five marked vertical edges of the chart.
pub fn chart_edges() -> Vec<Edge> {
    [
        ([2, 0], [1, 1]),
        ([3, 0], [2, 1]),
        ([1, 2], [0, 3]),
        ([3, 1], [2, 2]),
        ([2, 2], [1, 3]),
    ]
    .iter()
    .map(|(a, b)| {
        Edge::new(
            Monomial::from_exponents(a.to_vec()),
            Monomial::from_exponents(b.to_vec()),
        )
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(u_d(3).unwrap().tangible_count().unwrap(), 10);
        assert_eq!(u_d(1).unwrap().tangible_count().unwrap(), 3);
        assert_eq!(chart_full().unwrap().u_w().tangible_count().unwrap(), 16);
        assert_eq!(chart_printed().unwrap().u_w().tangible_count().unwrap(), 15);
        assert!(u_prime(2, 0).is_err());
        assert_eq!(a_omega(plane(), "x1^2*x2").unwrap().divisors().len(), 6);
    }
}
