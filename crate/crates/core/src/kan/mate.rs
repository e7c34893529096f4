//! Mates of squares of groupoid maps filled by a natural transformation.

use crate::error::{Error, Result};
use crate::groupoid::{GroupoidMap, NatTransf};
use crate::pullback::Pullback;
use crate::rep::{restrict_along_transformation, RepMap, Representation};
use crate::scalar::Scalar;

use super::{left_kan, right_kan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `π: g∘p ⇒ h∘q`.
    Lax,
    /// `π: h∘q ⇒ g∘p`; stored inverted.
    Oplax,
}

/// A square
///
/// ```text
///   P --q--> N
///   |p       |h
///   M --g--> Y
/// ```
///
/// with a natural isomorphism between the two composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub p: GroupoidMap,
    pub q: GroupoidMap,
    pub g: GroupoidMap,
    pub h: GroupoidMap,
    /// Always normalized to `g∘p ⇒ h∘q`.
    pub pi: NatTransf,
    pub orientation: Orientation,
}

impl SquareWitness {
    pub fn new(p: GroupoidMap, q: GroupoidMap, g: GroupoidMap, h: GroupoidMap, pi: NatTransf) -> Result<Self> {
        let gp = p.then(&g).map_err(|e| Error::MalformedSquare(e.to_string()))?;
        let hq = q.then(&h).map_err(|e| Error::MalformedSquare(e.to_string()))?;
        let (pi, orientation) = if pi.source_map() == &gp && pi.target_map() == &hq {
            (pi, Orientation::Lax)
        } else if pi.source_map() == &hq && pi.target_map() == &gp {
            (pi.inverse(), Orientation::Oplax)
        } else {
            return Err(Error::MalformedSquare(
                "filling does not run between the two composites".into(),
            ));
        };
        Ok(SquareWitness {
            p,
            q,
            g,
            h,
            pi,
            orientation,
        })
    }

    pub fn from_pullback(pb: &Pullback, g: &GroupoidMap, h: &GroupoidMap) -> Result<Self> {
        Self::new(pb.p.clone(), pb.q.clone(), g.clone(), h.clone(), pb.pi.clone())
    }

    /// The commuting square with identity filling on `id ∘ f = f ∘ id`.
    pub fn identity_square(f: &GroupoidMap) -> Self {
        let idx = GroupoidMap::identity(f.source());
        let idy = GroupoidMap::identity(f.target());
        let pi = NatTransf::identity(f);
        SquareWitness::new(idx, f.clone(), f.clone(), idy, pi).expect("commuting square")
    }

    /// Stacks `top` on this square along `top.g = self.q`:
    ///
    /// ```text
    ///   Q --q'--> R
    ///   |p'       |h'
    ///   P --q---> N
    ///   |p        |h
    ///   M --g---> Y
    /// ```
    pub fn paste_vertical(&self, top: &SquareWitness) -> Result<SquareWitness> {
        if top.g != self.q {
            return Err(Error::MalformedSquare("squares do not share an edge".into()));
        }
        let p = top.p.then(&self.p)?;
        let h = top.h.then(&self.h)?;
        let lower = self.pi.whisker_right(&top.p)?;
        let upper = top.pi.whisker_left(&self.h)?;
        SquareWitness::new(p, top.q.clone(), self.g.clone(), h, lower.then(&upper)?)
    }
}

/// `p_!q*W -> g*h_!W`: `ε^p ∘ p_!((π⁻¹)*) ∘ p_!q*(η^h)`.
pub fn left_mate<S: Scalar>(sq: &SquareWitness, w: &Representation<S>) -> Result<RepMap<S>> {
    let hw = left_kan(&sq.h, w)?;
    let u = hw.output();
    let eta = hw.unit_left()?.restrict(&sq.q)?;
    let back = restrict_along_transformation(&sq.pi.inverse(), u)?;
    let inner = eta.retype(eta.source(), back.source())?.then(&back)?;
    let gu = u.restrict(&sq.g)?;
    let inner = inner.retype(inner.source(), &gu.restrict(&sq.p)?)?;
    let src = left_kan(&sq.p, inner.source())?;
    let tgt = left_kan(&sq.p, inner.target())?;
    src.push(&tgt, &inner)?.then(&tgt.counit_left(&gu)?)
}

/// `g*h_*W -> p_*q*W`: `p_*q*(ε^h) ∘ p_*(π*) ∘ η^p`.
pub fn right_mate<S: Scalar>(sq: &SquareWitness, w: &Representation<S>) -> Result<RepMap<S>> {
    let hw = right_kan(&sq.h, w)?;
    let u = hw.output();
    let gu = u.restrict(&sq.g)?;
    let fwd = restrict_along_transformation(&sq.pi, u)?;
    let eps = hw.counit_right()?.restrict(&sq.q)?;
    let inner = fwd.then(&eps.retype(fwd.target(), eps.target())?)?;
    let inner = inner.retype(&gu.restrict(&sq.p)?, inner.target())?;
    let src = right_kan(&sq.p, inner.source())?;
    let tgt = right_kan(&sq.p, inner.target())?;
    src.unit_right(&gu)?.then(&src.push(&tgt, &inner)?)
}

/// For `φ: f ⇒ f'`, the induced `f'_!A -> f_!A`: `ε^{f'} ∘ f'_!(φ* ∘ η^f)`.
pub fn transformation_mate<S: Scalar>(phi: &NatTransf, a: &Representation<S>) -> Result<RepMap<S>> {
    let (f, f2) = (phi.source_map(), phi.target_map());
    let fa = left_kan(f, a)?;
    let u = fa.output();
    let inner = fa.unit_left()?.then(&restrict_along_transformation(phi, u)?)?;
    let src = left_kan(f2, a)?;
    let tgt = left_kan(f2, inner.target())?;
    src.push(&tgt, &inner)?.then(&tgt.counit_left(u)?)
}
