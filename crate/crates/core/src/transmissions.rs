//! Transmissions U → V between monoids over the chains M = ⟨c⟩ and N = ⟨d⟩,
//! their lifts to 𝔄(I), pullbacks along covers, and transfer of minimality.

use std::collections::BTreeSet;
use std::fmt;

use crate::covers::{interval_covers, require_base, w_s_cover, CoverHandle};
use crate::error::{Error, Result};
use crate::ghost::GhostValue;
use crate::monomial::Monomial;
use crate::quotients::{FormRequest, QuotientElement, QuotientPresentation};
use crate::relations::{GeneratorPair, MfceRelation};

/// γ: M → N with γ(c) = d^m. `m = 0` is the degenerate c ↦ e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GhostHom {
    m: u32,
}

impl GhostHom {
    pub fn new(m: u32) -> Self {
        GhostHom { m }
    }

    /// Parses `c=d^m`, `c=d` or `c=e`; `c=0` is not order-preserving.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let rhs = compact.strip_prefix("c=").ok_or(Error::Syntax {
            position: 0,
            message: "expected `c=<image>`".into(),
        })?;
        match GhostValue::parse_with(rhs, 'd').map_err(|e| match e {
            Error::Syntax { position, message } => Error::Syntax {
                position: position + 2,
                message,
            },
            other => other,
        })? {
            GhostValue::Zero => Err(Error::IllDefined(
                "c ↦ 0 is not order-preserving (e < c but γ(e) = e > 0)".into(),
            )),
            GhostValue::Power(m) => Ok(GhostHom { m }),
        }
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn apply(&self, g: GhostValue) -> GhostValue {
        match g {
            GhostValue::Zero => GhostValue::Zero,
            GhostValue::Power(k) => GhostValue::Power(k * self.m),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.m == 1
    }
}

impl fmt::Display for GhostHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c ↦ {}", GhostValue::Power(self.m).display_with('d'))
    }
}

/// α: U → V determined by the images of the letters of U.
#[derive(Clone, Debug)]
pub struct Transmission {
    source: QuotientPresentation,
    target: QuotientPresentation,
    images: Vec<QuotientElement>,
    ghost: GhostHom,
}

fn pow_in(v: &QuotientPresentation, a: &QuotientElement, n: u32) -> Result<QuotientElement> {
    let mut acc = v.one();
    for _ in 0..n {
        acc = v.mul(&acc, a)?;
    }
    Ok(acc)
}

impl Transmission {
    pub fn new(
        source: &QuotientPresentation,
        target: &QuotientPresentation,
        images: Vec<QuotientElement>,
        ghost: GhostHom,
    ) -> Result<Self> {
        require_base(source)?;
        let amb = source.ambient();
        if images.len() != amb.rank() {
            return Err(Error::Precondition(format!(
                "{} letter images given for {} letters",
                images.len(),
                amb.rank()
            )));
        }
        let t = Transmission {
            source: source.clone(),
            target: target.clone(),
            images,
            ghost,
        };
        for (i, img) in t.images.iter().enumerate() {
            let want = ghost.apply(amb.ghost_of(&amb.generator(i)));
            if target.nu(img) != want {
                return Err(Error::IllDefined(format!(
                    "e·α({}) = {} but γ(e·{}) = {}",
                    amb.generators()[i].name,
                    target.nu(img).display_with('d'),
                    amb.generators()[i].name,
                    want.display_with('d')
                )));
            }
        }
        for pair in source.relation().pairs() {
            let ok = match pair {
                GeneratorPair::Identify(a, b) => t.lift(a)? == t.lift(b)?,
                GeneratorPair::Ghostify(z) => !t.lift(z)?.is_tangible(),
            };
            if !ok {
                return Err(Error::IllDefined(format!(
                    "generator pair {} is not respected",
                    pair.format(amb)
                )));
            }
        }
        Ok(t)
    }

    /// Parses `x1=y,x2=y^2,...` against the two presentations.
    pub fn parse_images(
        source: &QuotientPresentation,
        target: &QuotientPresentation,
        text: &str,
    ) -> Result<Vec<QuotientElement>> {
        let amb = source.ambient();
        let mut images: Vec<Option<QuotientElement>> = vec![None; amb.rank()];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part.split_once('=').ok_or(Error::Syntax {
                position: 0,
                message: format!("expected `letter=image` in `{part}`"),
            })?;
            let i = amb
                .index_of(lhs.trim())
                .ok_or_else(|| Error::UnknownGenerator(lhs.trim().to_string()))?;
            let img = match GhostValue::parse_with(rhs, 'd') {
                Ok(g) => QuotientElement::Ghost(g),
                Err(_) => target.project(&target.ambient().parse_monomial(rhs.trim())?)?,
            };
            images[i] = Some(img);
        }
        images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| Error::Precondition(format!("no image for `{}`", amb.generators()[i].name)))
            })
            .collect()
    }

    pub fn identity(u: &QuotientPresentation) -> Result<Self> {
        let images = (0..u.ambient().rank())
            .map(|i| u.project(&u.ambient().generator(i)))
            .collect::<Result<_>>()?;
        Transmission::new(u, u, images, GhostHom::new(1))
    }

    pub fn source(&self) -> &QuotientPresentation {
        &self.source
    }

    pub fn target(&self) -> &QuotientPresentation {
        &self.target
    }

    pub fn ghost(&self) -> GhostHom {
        self.ghost
    }

    pub fn images(&self) -> &[QuotientElement] {
        &self.images
    }

    /// α̃(z) = ∏ α(x_i)^{m_i}.
    pub fn lift(&self, z: &Monomial) -> Result<QuotientElement> {
        let mut acc = self.target.one();
        for (i, img) in self.images.iter().enumerate() {
            acc = self.target.mul(&acc, &pow_in(&self.target, img, z.exponent(i))?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, a: &QuotientElement) -> Result<QuotientElement> {
        match a {
            QuotientElement::Tangible(z) => self.lift(z),
            QuotientElement::Ghost(g) => Ok(QuotientElement::Ghost(self.ghost.apply(*g))),
        }
    }

    /// The elements of U used by exhaustive checks: 0, e..c^k and the tangibles.
    fn sample(&self, max_ghost: u32) -> Result<Vec<QuotientElement>> {
        let mut out = vec![QuotientElement::Ghost(GhostValue::Zero)];
        out.extend((0..=max_ghost).map(|k| QuotientElement::Ghost(GhostValue::Power(k))));
        out.extend(self.source.tangibles()?);
        Ok(out)
    }

    /// First pair (a, b) of sampled elements with α(ab) ≠ α(a)α(b), if any.
    pub fn multiplicativity_failure(&self, max_ghost: u32) -> Result<Option<(QuotientElement, QuotientElement)>> {
        let sample = self.sample(max_ghost)?;
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i..] {
                let lhs = self.apply(&self.source.mul(a, b)?)?;
                let rhs = self.target.mul(&self.apply(a)?, &self.apply(b)?)?;
                if lhs != rhs {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }

    /// α(0)=0, α(1)=1, α(e)=e, multiplicativity and monotone ghost part.
    pub fn conditions_hold(&self, max_ghost: u32) -> Result<bool> {
        let zero = QuotientElement::Ghost(GhostValue::Zero);
        let e = QuotientElement::Ghost(GhostValue::E);
        let monotone = (0..max_ghost)
            .all(|k| self.ghost.apply(GhostValue::Power(k)) <= self.ghost.apply(GhostValue::Power(k + 1)))
            && self.ghost.apply(GhostValue::Zero) <= self.ghost.apply(GhostValue::E);
        Ok(self.apply(&zero)? == zero
            && self.apply(&self.source.one())? == self.target.one()
            && self.apply(&e)? == e
            && monotone
            && self.multiplicativity_failure(max_ghost)?.is_none())
    }

    /// Either α̃(z) is tangible or it equals γ(ez).
    pub fn dichotomy_holds(&self, z: &Monomial) -> Result<bool> {
        let v = self.lift(z)?;
        let ghost = QuotientElement::Ghost(self.ghost.apply(self.source.ambient().ghost_of(z)));
        Ok(v.is_tangible() || v == ghost)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let hit: BTreeSet<QuotientElement> = self
            .source
            .tangibles()?
            .iter()
            .map(|t| self.apply(t))
            .collect::<Result<_>>()?;
        Ok(self.ghost.is_surjective() && self.target.tangibles()?.iter().all(|t| hit.contains(t)))
    }

    /// α̃⁻¹(H) ∩ 𝒯(U): tangibles of U mapped into H.
    pub fn preimage(&self, h: &[QuotientElement]) -> Result<Vec<QuotientElement>> {
        let mut out = Vec::new();
        for t in self.source.tangibles()? {
            if h.contains(&self.apply(&t)?) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// An element of W seen as a pair (tangible class or ghost).
pub type Pair = (QuotientElement, QuotientElement);

/// L = U ×_V W, with ghost pairs (h, γ(h)) kept symbolic.
#[derive(Clone, Debug)]
pub struct PullbackMonoid {
    alpha: Transmission,
    cover: QuotientPresentation,
    /// Carrier pairs with at least one tangible coordinate.
    pub tangibles: Vec<Pair>,
}

/// π_{W,V}: a class of W goes to the class of its representative in V.
fn cover_projection(v: &QuotientPresentation, w: &QuotientElement) -> Result<QuotientElement> {
    match w {
        QuotientElement::Tangible(z) => v.project(z),
        QuotientElement::Ghost(g) => Ok(QuotientElement::Ghost(*g)),
    }
}

impl PullbackMonoid {
    pub fn alpha(&self) -> &Transmission {
        &self.alpha
    }

    pub fn cover(&self) -> &QuotientPresentation {
        &self.cover
    }

    pub fn ghost_pair(&self, h: GhostValue) -> Pair {
        (
            QuotientElement::Ghost(h),
            QuotientElement::Ghost(self.alpha.ghost.apply(h)),
        )
    }

    pub fn contains(&self, p: &Pair) -> Result<bool> {
        let v = self.alpha.target();
        Ok(self.alpha.apply(&p.0)? == cover_projection(v, &p.1)?)
    }

    pub fn mul(&self, a: &Pair, b: &Pair) -> Result<Pair> {
        Ok((self.alpha.source().mul(&a.0, &b.0)?, self.cover.mul(&a.1, &b.1)?))
    }

    /// The finite part of the carrier plus ghost pairs up to `c^max_ghost`.
    pub fn sample(&self, max_ghost: u32) -> Vec<Pair> {
        let mut out = vec![self.ghost_pair(GhostValue::Zero)];
        out.extend((0..=max_ghost).map(|k| self.ghost_pair(GhostValue::Power(k))));
        out.extend(self.tangibles.iter().cloned());
        out
    }

    /// Products of sampled carrier elements stay in the carrier.
    pub fn closed(&self, max_ghost: u32) -> Result<bool> {
        let sample = self.sample(max_ghost);
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i..] {
                if !self.contains(&self.mul(a, b)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// α ∘ π_{L,U} = π_{W,V} ∘ β on every sampled carrier element.
    pub fn square_commutes(&self, max_ghost: u32) -> Result<bool> {
        for p in self.sample(max_ghost) {
            if !self.contains(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The ghost parts of π_{L,U} and β, read on e·L ≅ M, agree with γ.
    pub fn ghost_parts_agree(&self, max_ghost: u32) -> bool {
        (0..=max_ghost).all(|k| {
            let h = GhostValue::Power(k);
            let (u, w) = self.ghost_pair(h);
            u == QuotientElement::Ghost(h) && w == QuotientElement::Ghost(self.alpha.ghost.apply(h))
        })
    }

    /// Both projections reach every tangible of U and of W.
    pub fn projections_surjective(&self) -> Result<(bool, bool)> {
        let us: BTreeSet<&QuotientElement> = self.tangibles.iter().map(|p| &p.0).collect();
        let ws: BTreeSet<&QuotientElement> = self.tangibles.iter().map(|p| &p.1).collect();
        let u_all = self.alpha.source().tangibles()?.iter().all(|t| us.contains(t));
        let w_all = self.cover.tangibles()?.iter().all(|t| ws.contains(t));
        Ok((u_all, w_all))
    }
}

/// The quotient W = 𝔄(J)/E_W of a cover of V, built as a tangibly finite monoid.
fn cover_quotient(w: &CoverHandle) -> Result<QuotientPresentation> {
    QuotientPresentation::build(w.relation().clone(), FormRequest::TangiblyFinite { max_degree: None })
        .map_err(|_| Error::Precondition("the cover must be tangibly finite".into()))
}

pub fn pullback(alpha: &Transmission, w: &CoverHandle) -> Result<PullbackMonoid> {
    if alpha.ghost.exponent() == 0 {
        return Err(Error::Precondition(
            "c ↦ e makes the carrier contain infinitely many ghost pairs over one tangible".into(),
        ));
    }
    let v = alpha.target();
    if w.base().ambient() != v.ambient() || !w.base().relation().equivalent(v.relation())? {
        return Err(Error::Precondition("the cover must lie over the target of α".into()));
    }
    let cover = cover_quotient(w)?;
    let mut tangibles = Vec::new();
    let u_tangibles = alpha.source().tangibles()?;
    let w_tangibles = cover.tangibles()?;
    for a in &u_tangibles {
        let image = alpha.apply(a)?;
        match &image {
            QuotientElement::Ghost(g) => tangibles.push((a.clone(), QuotientElement::Ghost(*g))),
            QuotientElement::Tangible(_) => {
                for b in &w_tangibles {
                    if cover_projection(v, b)? == image {
                        tangibles.push((a.clone(), b.clone()));
                    }
                }
            }
        }
    }
    let m = alpha.ghost.exponent();
    for b in &w_tangibles {
        if let QuotientElement::Ghost(GhostValue::Power(j)) = cover_projection(v, b)? {
            if j % m == 0 {
                tangibles.push((QuotientElement::Ghost(GhostValue::Power(j / m)), b.clone()));
            }
        }
    }
    tangibles.sort();
    Ok(PullbackMonoid {
        alpha: alpha.clone(),
        cover,
        tangibles,
    })
}

/// Outcome of transferring minimality from W over V to the induced cover L over U.
#[derive(Clone, Debug)]
pub struct TransferReport {
    /// W splits H totally and is the minimal such cover of V.
    pub premise: bool,
    /// E_L: kernel of z ↦ (π_U(z), β̃(z)).
    pub l_relation: MfceRelation,
    /// L splits α̃⁻¹(H) totally.
    pub splits: bool,
    /// E_L is the largest relation keeping the fibers over α̃⁻¹(H) apart.
    pub minimal: bool,
    /// The interval lattice of U has the same largest splitting cover, when small enough to enumerate.
    pub interval_agrees: Option<bool>,
}

pub fn minimality_transfer(alpha: &Transmission, w: &CoverHandle, h: &[QuotientElement]) -> Result<TransferReport> {
    let v = alpha.target();
    let u = alpha.source();
    let h_fibers: Vec<Monomial> = h
        .iter()
        .map(|t| v.fiber_of(t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut premise = true;
    for z in &h_fibers {
        premise &= w.is_singleton(z)?;
    }
    premise &= w_s_cover(v, h, &h_fibers)?.cover.equivalent(w)?;

    let cover = cover_quotient(w)?;
    let letters: Vec<QuotientElement> = alpha
        .images()
        .iter()
        .map(|img| match img {
            QuotientElement::Tangible(r) => cover.project(r),
            g => Ok(g.clone()),
        })
        .collect::<Result<_>>()?;
    let beta_lift = |z: &Monomial| -> Result<QuotientElement> {
        let mut acc = cover.one();
        for (i, img) in letters.iter().enumerate() {
            acc = cover.mul(&acc, &pow_in(&cover, img, z.exponent(i))?)?;
        }
        Ok(acc)
    };
    let window = u
        .require_finite()?
        .max_degree()
        .max(cover.require_finite()?.max_degree())
        .max(1);
    let l_relation = MfceRelation::from_classifier(u.ambient().clone(), window, |z| {
        let key = (u.project(z)?, beta_lift(z)?);
        Ok((key.0.is_tangible() || key.1.is_tangible()).then_some(key))
    })?;
    let l_cover = CoverHandle::new(u, l_relation.clone())?;

    let pre = alpha.preimage(h)?;
    let s: Vec<Monomial> = pre
        .iter()
        .map(|t| u.fiber_of(t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut splits = true;
    for z in &s {
        splits &= l_cover.is_singleton(z)?;
    }
    let best = w_s_cover(u, &pre, &s)?;
    let minimal = splits && best.in_psigma && l_cover.equivalent(&best.cover)?;
    let interval_agrees = match interval_covers(u, 10) {
        Ok(all) => {
            let mut top: Option<CoverHandle> = None;
            for c in all {
                let mut keeps = true;
                for z in &s {
                    keeps &= c.is_singleton(z)?;
                }
                if keeps && top.as_ref().map_or(Ok(true), |t| t.leq(&c))? {
                    top = Some(c);
                }
            }
            Some(match top {
                Some(t) => t.equivalent(&best.cover)?,
                None => false,
            })
        }
        Err(Error::LimitExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(TransferReport {
        premise,
        l_relation,
        splits,
        minimal,
        interval_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;
    use crate::covers::tilde_relation;
    use std::sync::Arc;

    fn u_two() -> QuotientPresentation {
        let amb = Arc::new(Ambient::uniform(&["x1", "x2"]).unwrap());
        let m = |s: &str| amb.parse_monomial(s).unwrap();
        let rel = MfceRelation::from_pairs(
            amb.clone(),
            vec![
                GeneratorPair::Identify(m("x1^2"), m("x1*x2")),
                GeneratorPair::Identify(m("x1^2"), m("x2^2")),
                GeneratorPair::Ghostify(m("x1^3")),
            ],
        )
        .unwrap();
        QuotientPresentation::tangibly_finite(rel).unwrap()
    }

    fn v_one() -> QuotientPresentation {
        let amb = Arc::new(Ambient::uniform(&["y"]).unwrap());
        let rel = MfceRelation::ghost_equalizer(amb.clone(), amb.parse_monomial("y^3").unwrap()).unwrap();
        QuotientPresentation::tangibly_finite(rel).unwrap()
    }

    #[test]
    fn ghost_hom_parsing() {
        assert_eq!(GhostHom::parse("c=d").unwrap().exponent(), 1);
        assert_eq!(GhostHom::parse("c = d^3").unwrap().exponent(), 3);
        assert_eq!(GhostHom::parse("c=e").unwrap().exponent(), 0);
        assert!(matches!(GhostHom::parse("c=0"), Err(Error::IllDefined(_))));
        assert!(GhostHom::parse("d=c").is_err());
    }

    #[test]
    fn identity_and_collapse() {
        let u = u_two();
        let id = Transmission::identity(&u).unwrap();
        assert!(id.conditions_hold(6).unwrap());
        let v = v_one();
        let images = Transmission::parse_images(&u, &v, "x1=y, x2=y").unwrap();
        let alpha = Transmission::new(&u, &v, images, GhostHom::new(1)).unwrap();
        assert!(alpha.conditions_hold(6).unwrap());
        assert!(alpha.is_surjective().unwrap());
        for k in 0..6 {
            for z in u.ambient().monomials_of_degree(k, None).unwrap() {
                assert!(alpha.dichotomy_holds(&z).unwrap());
            }
        }
        let bad = Transmission::parse_images(&u, &v, "x1=y, x2=y").unwrap();
        assert!(Transmission::new(&u, &v, bad, GhostHom::new(2)).is_err());
    }

    #[test]
    fn pullback_along_identity_cover() {
        let u = u_two();
        let v = v_one();
        let alpha = Transmission::new(
            &u,
            &v,
            Transmission::parse_images(&u, &v, "x1=y,x2=y").unwrap(),
            GhostHom::new(1),
        )
        .unwrap();
        let w = CoverHandle::new(&v, v.relation().clone()).unwrap();
        let l = pullback(&alpha, &w).unwrap();
        assert!(l.closed(6).unwrap());
        assert!(l.square_commutes(6).unwrap());
        assert!(l.ghost_parts_agree(6));
        assert_eq!(l.projections_surjective().unwrap(), (true, true));
        let u_count = u.tangible_count().unwrap();
        assert_eq!(l.tangibles.len(), u_count);
        let e_alpha = Transmission::new(
            &u,
            &v,
            Transmission::parse_images(&u, &v, "x1=y,x2=y").unwrap(),
            GhostHom::new(1),
        )
        .unwrap();
        let degenerate = Transmission {
            ghost: GhostHom::new(0),
            ..e_alpha
        };
        assert!(pullback(&degenerate, &w).is_err());
    }

    #[test]
    fn transfer_with_empty_h() {
        let u = u_two();
        let v = v_one();
        let alpha = Transmission::new(
            &u,
            &v,
            Transmission::parse_images(&u, &v, "x1=y,x2=y").unwrap(),
            GhostHom::new(1),
        )
        .unwrap();
        let w = CoverHandle::new(&v, v.relation().clone()).unwrap();
        let report = minimality_transfer(&alpha, &w, &[]).unwrap();
        assert!(report.premise && report.splits && report.minimal);
        assert_eq!(report.interval_agrees, Some(true));
        assert!(tilde_relation(&u).unwrap().is_subrelation(u.relation()).unwrap());
    }
}
