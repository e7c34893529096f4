//! Projection formulas, the right adjoint through duals, and compatibility
//! of Kan extensions with external tensor products.

use crate::error::Result;
use crate::groupoid::GroupoidMap;
use crate::rep::{RepMap, Representation};
use crate::scalar::Scalar;

use super::{left_kan, right_kan};

/// `λ: f_!(A ⊗ f*B) -> f_!A ⊗ B`, the adjunct of `η_A ⊗ id`.
pub fn proj_lambda<S: Scalar>(f: &GroupoidMap, a: &Representation<S>, b: &Representation<S>) -> Result<RepMap<S>> {
    let fa = left_kan(f, a)?;
    let w = fa.output().tensor(b)?;
    let fb = b.restrict(f)?;
    let inner = fa.unit_left()?.tensor(&RepMap::identity(&fb))?;
    let inner = inner.retype(inner.source(), &w.restrict(f)?)?;
    let src = left_kan(f, inner.source())?;
    let tgt = left_kan(f, inner.target())?;
    src.push(&tgt, &inner)?.then(&tgt.counit_left(&w)?)
}

/// `ρ: A ⊗ f_*B -> f_*(f*A ⊗ B)`, the adjunct of `id ⊗ ε_B`.
pub fn proj_rho<S: Scalar>(f: &GroupoidMap, a: &Representation<S>, b: &Representation<S>) -> Result<RepMap<S>> {
    let fb = right_kan(f, b)?;
    let u = a.tensor(fb.output())?;
    let fa = a.restrict(f)?;
    let inner = RepMap::identity(&fa).tensor(&fb.counit_right()?)?;
    let inner = inner.retype(&u.restrict(f)?, inner.target())?;
    let src = right_kan(f, inner.source())?;
    let tgt = right_kan(f, inner.target())?;
    src.unit_right(&u)?.then(&src.push(&tgt, &inner)?)
}

/// `(f_!(V^d))^d` together with the comparison `(f_!(V^d))^d -> f_*V`,
/// the adjunct of the transposed unit `(f*f_!V^d)^d -> V`.
pub fn right_kan_via_duals<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<(Representation<S>, RepMap<S>)> {
    let lv = left_kan(f, &v.dual())?;
    let dual = lv.output().dual();
    let adj = lv.unit_left()?.dual();
    let adj = adj.retype(&dual.restrict(f)?, v)?;
    let src = right_kan(f, adj.source())?;
    let tgt = right_kan(f, v)?;
    let iso = src.unit_right(&dual)?.then(&src.push(&tgt, &adj)?)?;
    Ok((dual, iso))
}

/// `μ_!: (f×g)_!(A ⊠ B) -> f_!A ⊠ g_!B`, the adjunct of `η ⊠ η`.
pub fn mu_left<S: Scalar>(
    f: &GroupoidMap,
    g: &GroupoidMap,
    a: &Representation<S>,
    b: &Representation<S>,
) -> Result<RepMap<S>> {
    let fg = f.product(g);
    let fa = left_kan(f, a)?;
    let gb = left_kan(g, b)?;
    let w = fa.output().external_tensor(gb.output());
    let inner = fa.unit_left()?.external_tensor(&gb.unit_left()?);
    let inner = inner.retype(&a.external_tensor(b), &w.restrict(&fg)?)?;
    let src = left_kan(&fg, inner.source())?;
    let tgt = left_kan(&fg, inner.target())?;
    src.push(&tgt, &inner)?.then(&tgt.counit_left(&w)?)
}

/// `μ_*: (f×g)_*(A ⊠ B) -> f_*A ⊠ g_*B`, inverse to the adjunct of `ε ⊠ ε`.
pub fn mu_right<S: Scalar>(
    f: &GroupoidMap,
    g: &GroupoidMap,
    a: &Representation<S>,
    b: &Representation<S>,
) -> Result<RepMap<S>> {
    mu_right_forward(f, g, a, b)?.inverse()
}

/// `f_*A ⊠ g_*B -> (f×g)_*(A ⊠ B)`.
pub fn mu_right_forward<S: Scalar>(
    f: &GroupoidMap,
    g: &GroupoidMap,
    a: &Representation<S>,
    b: &Representation<S>,
) -> Result<RepMap<S>> {
    let fg = f.product(g);
    let fa = right_kan(f, a)?;
    let gb = right_kan(g, b)?;
    let u = fa.output().external_tensor(gb.output());
    let inner = fa.counit_right()?.external_tensor(&gb.counit_right()?);
    let inner = inner.retype(&u.restrict(&fg)?, &a.external_tensor(b))?;
    let src = right_kan(&fg, inner.source())?;
    let tgt = right_kan(&fg, inner.target())?;
    src.unit_right(&u)?.then(&src.push(&tgt, &inner)?)
}
