//! Exponent-vector monomials over a declared generator list.

use std::cmp::Ordering;
use std::fmt;

/// A monomial as a dense exponent vector, indexed by the ambient's generator order.
///
/// Monomials are ordered gradedly: first by total exponent, then so that a larger
/// exponent on an earlier generator comes first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial {
            exps: vec![0; rank].into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: impl Into<Vec<u32>>) -> Self {
        Monomial {
            exps: exps.into().into_boxed_slice(),
        }
    }

    /// The `index`-th generator as a monomial.
    pub fn generator(rank: usize, index: usize) -> Self {
        let mut exps = vec![0; rank];
        exps[index] = 1;
        Monomial::from_exponents(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    /// Indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        assert_eq!(self.rank(), other.rank(), "monomials over different ambients");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e * n).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.rank(), other.rank(), "monomials over different ambients");
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor` when `divisor | self`.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| self.zip_with(divisor, |a, b| a - b))
    }

    /// Componentwise minimum (z1 ∧ z2).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::min)
    }

    /// Componentwise maximum (z1 ∨ z2).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    /// All divisors, in graded order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &e in self.exps.iter() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut next = prefix.clone();
                        next.push(k);
                        next
                    })
                })
                .collect();
        }
        let mut divisors: Vec<Monomial> = out.into_iter().map(Monomial::from_exponents).collect();
        divisors.sort();
        divisors
    }
}

/// Returns `(z1 ∧ z2, z1 ∨ z2)`.
pub fn gcd_lcm(z1: &Monomial, z2: &Monomial) -> (Monomial, Monomial) {
    (z1.gcd(z2), z1.lcm(z2))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(gcd_lcm(&m(&[2, 1]), &m(&[1, 2])), (m(&[1, 1]), m(&[2, 2])));
        assert_eq!(gcd_lcm(&m(&[3, 0]), &m(&[3, 0])), (m(&[3, 0]), m(&[3, 0])));
    }

    #[test]
    fn graded_order() {
        let mut v = vec![m(&[0, 2]), m(&[1, 1]), m(&[2, 0]), m(&[0, 1]), m(&[0, 0])];
        v.sort();
        assert_eq!(v, vec![m(&[0, 0]), m(&[0, 1]), m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
    }

    #[test]
    fn divisors_of_t1sq_t2() {
        let d = m(&[2, 1]).divisors();
        assert_eq!(d.len(), 6);
        assert_eq!(d[0], m(&[0, 0]));
        assert_eq!(d[5], m(&[2, 1]));
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 3).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn gcd_times_lcm_is_product(a in mono(), b in mono()) {
            let (g, l) = gcd_lcm(&a, &b);
            prop_assert_eq!(g.mul(&l), a.mul(&b));
            prop_assert_eq!(a.divides(&b), g == a);
        }
    }

    proptest! {
        #[test]
        fn lattice_laws(a in mono(), b in mono(), c in mono()) {
            prop_assert_eq!(a.gcd(&a.lcm(&b)), a.clone());
            prop_assert_eq!(a.lcm(&a.gcd(&b)), a.clone());
            prop_assert_eq!(a.gcd(&b.lcm(&c)), a.gcd(&b).lcm(&a.gcd(&c)));
            prop_assert_eq!(a.lcm(&b.gcd(&c)), a.lcm(&b).gcd(&a.lcm(&c)));
        }

        #[test]
        fn division_inverts_multiplication(a in mono(), b in mono()) {
            prop_assert_eq!(a.mul(&b).checked_div(&b), Some(a));
        }
    }
}
