//! The comparison maps `f_* -> f_!`: the pre-Nakayama map γ, its tensor
//! form, the weights δ and the Nakayama map ν, plus the functoriality check.
//!
//! All maps run between the canonical bases of [`crate::kan`]. Both
//! extensions index blocks by (source object, coset), so γ is block
//! diagonal; on block `(x, j)` it is `V(x)^{K_x} -> V(x) -> V(x)_{K_x}`.

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidMap};
use crate::kan::{
    comp_left, comp_right, left_kan, proj_lambda, proj_rho, push_transformation, right_kan, with_kan_cache, KanPackage,
    Side,
};
use crate::matrix::Matrix;
use crate::rep::{swap, RepMap, Representation};
use crate::scalar::Scalar;

use std::sync::Arc;

/// Block-diagonal map between two packages along the same map, with
/// `block(x, j)` on the summand of source object `x` and coset `j`.
fn block_diagonal<S: Scalar>(
    right: &KanPackage<S>,
    left: &KanPackage<S>,
    block: impl Fn(usize, usize) -> Result<Matrix<S>>,
) -> Result<RepMap<S>> {
    let ys = right.map().target();
    let comps = (0..ys.len())
        .map(|y| {
            let mut m = Matrix::zeros(left.output().dim(y), right.output().dim(y));
            for b in right.blocks(y) {
                let blk = block(b.source, b.coset)?;
                m.set_block(left.block_offset(b.source, b.coset), b.offset, &blk);
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    RepMap::new_unchecked(right.output().clone(), left.output().clone(), comps)
}

fn transversal_block<S: Scalar>(right: &KanPackage<S>, left: &KanPackage<S>, x: usize) -> Result<Matrix<S>> {
    left.reduced(x).to_reduced.matmul(&right.reduced(x).from_reduced)
}

/// γ as `φ ↦ Σ_j r_j ⊗ φ(r_j⁻¹)`, a sum over one representative per coset.
/// Defined over every field.
pub fn gamma_transversal<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let (r, l) = (right_kan(f, v)?, left_kan(f, v)?);
    block_diagonal(&r, &l, |x, _| transversal_block(&r, &l, x))
}

fn component_label(f: &GroupoidMap, x: usize) -> String {
    f.source().name(x).to_string()
}

/// The averaged sum `(1/n) Σ_{g ∈ A_y} g⁻¹ ⊗ φ(g)` for `φ` supported on
/// coset `coset` of `x`.
fn averaged_block<S: Scalar>(
    right: &KanPackage<S>,
    left: &KanPackage<S>,
    x: usize,
    coset: usize,
    n: usize,
) -> Result<Matrix<S>> {
    let f = right.map();
    let v = right.input();
    let ax = f.source().group(x);
    let ay = f.target().group(f.on_object(x));
    let d_r = right.reduced(x).dim();
    let d_l = left.reduced(x).dim();
    let mut sum = Matrix::zeros(d_l, d_r);
    for g in ay.elements() {
        // φ(g) vanishes unless g⁻¹ = r_j f(c); then φ(g) = ρ(c⁻¹) φ(r_j⁻¹)
        // and g⁻¹ ⊗ φ(g) = r_j ⊗ ρ(c) φ(g).
        let (j, c) = left.cosets(x).decompose(ay, ay.inv(g));
        if j != coset {
            continue;
        }
        let phi_g = v.action(x, ax.inv(c)).matmul(&right.reduced(x).from_reduced)?;
        let term = left.reduced(x).to_reduced.matmul(v.action(x, c))?.matmul(&phi_g)?;
        sum = sum.add(&term)?;
    }
    let inv = S::from_usize(n).inverse().map_err(|_| Error::NonInvertibleScalar {
        component: component_label(f, x),
        value: n as u64,
    })?;
    Ok(sum.scale(&inv))
}

/// γ from the closed formula `φ ↦ (1/|f(A_x)|) Σ_{g ∈ A_y} g⁻¹ ⊗ φ(g)`.
/// Fails when the characteristic divides some `|f(A_x)|`.
pub fn gamma<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let (r, l) = (right_kan(f, v)?, left_kan(f, v)?);
    block_diagonal(&r, &l, |x, j| averaged_block(&r, &l, x, j, f.image(x).len()))
}

/// `ĥγ: f_*(A ⊗ B) -> f_!(A ⊗ B)`, composed from
/// `f_*(η ⊗ id)`, `ρ⁻¹`, `λ⁻¹` and `f_!(id ⊗ ε)`.
pub fn hgamma<S: Scalar>(f: &GroupoidMap, a: &Representation<S>, b: &Representation<S>) -> Result<RepMap<S>> {
    let fa = left_kan(f, a)?;
    let fb = right_kan(f, b)?;
    let ab = a.tensor(b)?;
    let m1 = fa.unit_left()?.tensor(&RepMap::identity(b))?;
    let step1 = right_kan(f, &ab)?.push(&right_kan(f, m1.target())?, &m1)?;
    let step2 = proj_rho(f, fa.output(), b)?.inverse()?;
    let step3 = proj_lambda(f, a, fb.output())?.inverse()?;
    let m4 = RepMap::identity(a).tensor(&fb.counit_right()?)?;
    let step4 = left_kan(f, m4.source())?.push(&left_kan(f, &ab)?, &m4)?;
    step1.then(&step2)?.then(&step3)?.then(&step4)
}

/// γ through the adjunctions: `ĥγ` with the unit in the second slot.
/// Always defined.
pub fn gamma_generic<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let unit = Representation::unit(f.source());
    hgamma(f, v, &unit)
}

/// One weight per fiber component over each target object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight<S: Scalar> {
    pub y: usize,
    pub x: usize,
    pub coset_rep: usize,
    pub kernel_order: usize,
    pub value: S,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable<S: Scalar> {
    pub map: GroupoidMap,
    pub weights: Vec<Weight<S>>,
}

impl<S: Scalar> WeightTable<S> {
    pub fn all_invertible(&self) -> bool {
        self.weights.iter().all(|w| w.invertible)
    }

    pub fn failing_components(&self) -> Vec<String> {
        self.weights
            .iter()
            .filter(|w| !w.invertible)
            .map(|w| weight_label(&self.map, w))
            .collect()
    }
}

fn weight_label<S: Scalar>(f: &GroupoidMap, w: &Weight<S>) -> String {
    format!("{}/{}@{}", f.target().name(w.y), f.source().name(w.x), w.coset_rep)
}

fn weights_from<S: Scalar>(f: &GroupoidMap, value: impl Fn(usize, usize) -> Result<S>) -> Result<WeightTable<S>> {
    let mut weights = Vec::new();
    for y in 0..f.target().len() {
        for x in f.fiber_objects(y) {
            let table = crate::pullback::CosetTable::new(f, x, crate::pullback::RepChoice::Minimal);
            for &r in &table.reps {
                let value = value(x, r)?;
                weights.push(Weight {
                    y,
                    x,
                    coset_rep: r,
                    kernel_order: f.kernel(x).len(),
                    invertible: !value.is_zero(),
                    value,
                });
            }
        }
    }
    Ok(WeightTable {
        map: f.clone(),
        weights,
    })
}

/// δ in closed form: `|K_x|` in the field on every component.
pub fn delta<S: Scalar>(f: &GroupoidMap) -> WeightTable<S> {
    weights_from(f, |x, _| Ok(S::from_usize(f.kernel(x).len()))).expect("closed form cannot fail")
}

/// δ as the composite `ε_L ∘ γ_ι ∘ η_R` on the unit of `BK`, where `K` is
/// the isotropy group of the fiber component through the basepoint `h`.
pub fn delta_generic<S: Scalar>(f: &GroupoidMap) -> Result<WeightTable<S>> {
    weights_from(f, |x, r| delta_at_basepoint(f, x, r))
}

/// The weight computed from the basepoint `(x, h)` of the fiber over
/// `f(x)`; `h` is any element of `A_{f(x)}`.
pub fn delta_at_basepoint<S: Scalar>(f: &GroupoidMap, x: usize, h: usize) -> Result<S> {
    let ax = f.source().group(x);
    let ay = f.target().group(f.on_object(x));
    let stabilizer: Vec<usize> = ax
        .elements()
        .filter(|&a| ay.mul(h, f.on_hom(x, a)) == h)
        .collect();
    let k = ax.subgroup(&stabilizer)?;
    let bk = Arc::new(Groupoid::one_object(k));
    let iota = GroupoidMap::from_point(&bk, 0);
    let one = Representation::<S>::unit(&bk);
    let eta = right_kan(&iota, &one.restrict(&iota)?)?.unit_right(&one)?;
    let g = gamma_generic(&iota, &one.restrict(&iota)?)?;
    let eps = left_kan(&iota, &one.restrict(&iota)?)?.counit_left(&one)?;
    let d = eta.then(&g)?.then(&eps)?;
    Ok(d.component(0).get(0, 0).clone())
}

fn require_weights<S: Scalar>(f: &GroupoidMap) -> Result<WeightTable<S>> {
    let w = delta::<S>(f);
    if !w.all_invertible() {
        return Err(Error::NonInvertibleDelta(w.failing_components()));
    }
    Ok(w)
}

fn kernel_inverses<S: Scalar>(f: &GroupoidMap) -> Result<Vec<S>> {
    (0..f.source().len())
        .map(|x| S::from_usize(f.kernel(x).len()).inverse())
        .collect()
}

/// ν: `f_*V -> f_!V`, γ followed by δ⁻¹ on each summand.
pub fn nakayama_map<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    require_weights::<S>(f)?;
    let inv = kernel_inverses::<S>(f)?;
    let (r, l) = (right_kan(f, v)?, left_kan(f, v)?);
    block_diagonal(&r, &l, |x, _| Ok(transversal_block(&r, &l, x)?.scale(&inv[x])))
}

/// ν with δ⁻¹ applied before γ, on the invariant side.
pub fn nakayama_map_right_weighted<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    require_weights::<S>(f)?;
    let inv = kernel_inverses::<S>(f)?;
    let r = right_kan(f, v)?;
    let scale = block_diagonal(&r, &r, |x, _| Ok(Matrix::identity(r.reduced(x).dim()).scale(&inv[x])))?;
    scale.then(&gamma_generic(f, v)?)
}

/// ν from the closed formula `(1/|A_x|) Σ_{g ∈ A_y} g⁻¹ ⊗ φ(g)`; needs the
/// characteristic to miss every `|A_x|`.
pub fn nakayama_closed<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let (r, l) = (right_kan(f, v)?, left_kan(f, v)?);
    block_diagonal(&r, &l, |x, j| averaged_block(&r, &l, x, j, f.source().group(x).order()))
}

/// `μ_χ: f_*A -> f_!A` for `χ: f_*1 -> f_!1`: unitor, `id ⊗ η`, `id ⊗ χ`,
/// symmetry, `λ⁻¹`, `f_!(ε)`.
pub fn mu_chi<S: Scalar>(f: &GroupoidMap, chi: &RepMap<S>, a: &Representation<S>) -> Result<RepMap<S>> {
    let xs = f.source();
    let one_x = Representation::<S>::unit(xs);
    let one_y = Representation::<S>::unit(f.target());
    let r1 = right_kan(f, &one_x)?;
    let l1 = left_kan(f, &one_x)?;
    if chi.source() != r1.output() || chi.target() != l1.output() {
        return Err(Error::DimensionMismatch("χ must map f_*1 to f_!1".into()));
    }
    let fa = right_kan(f, a)?;
    let u = fa.output();
    // f_*A ≅ f_*A ⊗ 1
    let step1 = RepMap::identity(u);
    let step1 = step1.retype(u, &u.tensor(&one_y)?)?;
    let eta = r1.unit_right(&one_y)?;
    let step2 = RepMap::identity(u).tensor(&eta)?;
    let step3 = RepMap::identity(u).tensor(chi)?;
    let step4 = swap(u, l1.output())?;
    let step5 = proj_lambda(f, &one_x, u)?.inverse()?;
    let m6 = RepMap::identity(&one_x).tensor(&fa.counit_right()?)?;
    let m6 = m6.retype(m6.source(), a)?;
    let step6 = left_kan(f, m6.source())?.push(&left_kan(f, a)?, &m6)?;
    step1
        .then(&step2)?
        .then(&step3)?
        .then(&step4)?
        .then(&step5)?
        .then(&step6)
}

/// How two maps between the same spaces compare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy<S: Scalar> {
    Equal,
    /// `path = c · reference` at every object.
    Scalar(S),
    /// `reference⁻¹ · path` is diagonal, per object.
    Diagonal(Vec<Vec<S>>),
    /// The reference is not invertible or the quotient is not diagonal.
    Matrices { reference: Vec<Matrix<S>>, path: Vec<Matrix<S>> },
}

impl<S: Scalar> Discrepancy<S> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Discrepancy::Equal)
    }
}

pub fn compare_maps<S: Scalar>(reference: &RepMap<S>, path: &RepMap<S>) -> Discrepancy<S> {
    if reference.components() == path.components() {
        return Discrepancy::Equal;
    }
    let fallback = || Discrepancy::Matrices {
        reference: reference.components().to_vec(),
        path: path.components().to_vec(),
    };
    let mut diagonals = Vec::new();
    for (r, p) in reference.components().iter().zip(path.components()) {
        let Ok(inv) = r.inverse() else {
            return fallback();
        };
        let d = inv.matmul(p).expect("same shapes");
        let n = d.rows();
        let is_diag = (0..n).all(|i| (0..n).all(|j| i == j || d.get(i, j).is_zero()));
        if !is_diag {
            return fallback();
        }
        diagonals.push((0..n).map(|i| d.get(i, i).clone()).collect::<Vec<S>>());
    }
    let mut all = diagonals.iter().flatten();
    if let Some(first) = all.next() {
        if all.all(|c| c == first) {
            return Discrepancy::Scalar(first.clone());
        }
    }
    Discrepancy::Diagonal(diagonals)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Gamma,
    Nu,
}

/// The functoriality triangle for `X -f-> Y -g-> Z`: the comparison for
/// `gf`, conjugated into `g_*f_*V -> g_!f_!V`, against the two composites
/// through `g_!f_*V` and `g_*f_!V`.
#[derive(Clone, Debug)]
pub struct TriangleCheck<S: Scalar> {
    pub reference: RepMap<S>,
    pub through_left: RepMap<S>,
    pub through_right: RepMap<S>,
    pub left: Discrepancy<S>,
    pub right: Discrepancy<S>,
}

impl<S: Scalar> TriangleCheck<S> {
    pub fn holds(&self) -> bool {
        self.left.is_equal() && self.right.is_equal()
    }
}

fn comparison<S: Scalar>(variant: Variant, f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    match variant {
        Variant::Gamma => gamma_transversal(f, v),
        Variant::Nu => nakayama_map(f, v),
    }
}

pub fn check_triangle<S: Scalar>(
    variant: Variant,
    f: &GroupoidMap,
    g: &GroupoidMap,
    v: &Representation<S>,
) -> Result<TriangleCheck<S>> {
    with_kan_cache(|| triangle(variant, f, g, v))
}

fn triangle<S: Scalar>(
    variant: Variant,
    f: &GroupoidMap,
    g: &GroupoidMap,
    v: &Representation<S>,
) -> Result<TriangleCheck<S>> {
    let gf = f.then(g)?;
    let reference = comp_right(f, g, v)?
        .then(&comparison(variant, &gf, v)?)?
        .then(&comp_left(f, g, v)?)?;

    let fr = right_kan(f, v)?;
    let fl = left_kan(f, v)?;
    let cf = comparison(variant, f, v)?;
    let through_left = comparison(variant, g, fr.output())?.then(
        &left_kan(g, fr.output())?.push(&left_kan(g, fl.output())?, &cf)?,
    )?;
    let through_right = right_kan(g, fr.output())?
        .push(&right_kan(g, fl.output())?, &cf)?
        .then(&comparison(variant, g, fl.output())?)?;
    Ok(TriangleCheck {
        left: compare_maps(&reference, &through_left),
        right: compare_maps(&reference, &through_right),
        reference,
        through_left,
        through_right,
    })
}

/// Triangle identities for `f_! ⊣ f*` and for `f* ⊣ f_!`, the latter with
/// unit `ν ∘ η_R` and counit `ε_R ∘ f*(ν⁻¹)`, at `V` on the source and `W`
/// on the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCheck {
    pub left_adjoint: [bool; 2],
    pub right_adjoint: [bool; 2],
}

impl FrobeniusCheck {
    pub fn holds(&self) -> bool {
        self.left_adjoint.iter().chain(&self.right_adjoint).all(|&b| b)
    }
}

pub fn check_frobenius<S: Scalar>(f: &GroupoidMap, v: &Representation<S>, w: &Representation<S>) -> Result<FrobeniusCheck> {
    with_kan_cache(|| frobenius(f, v, w))
}

/// `W -> f_*f*W -> f_!f*W`.
fn ambi_unit<S: Scalar>(f: &GroupoidMap, w: &Representation<S>) -> Result<RepMap<S>> {
    let fw = w.restrict(f)?;
    right_kan(f, &fw)?.unit_right(w)?.then(&nakayama_map(f, &fw)?)
}

/// `f*f_!V -> f*f_*V -> V`.
fn ambi_counit<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let back = nakayama_map(f, v)?.inverse()?.restrict(f)?;
    back.then(&right_kan(f, v)?.counit_right()?)
}

fn frobenius<S: Scalar>(f: &GroupoidMap, v: &Representation<S>, w: &Representation<S>) -> Result<FrobeniusCheck> {
    let fw = w.restrict(f)?;
    // f_! ⊣ f*
    let lv = left_kan(f, v)?;
    let lv_back = left_kan(f, &lv.output().restrict(f)?)?;
    let first = lv
        .push(&lv_back, &lv.unit_left()?)?
        .then(&lv_back.counit_left(lv.output())?)?
        .is_identity();
    let lw = left_kan(f, &fw)?;
    let second = lw.unit_left()?.then(&lw.counit_left(w)?.restrict(f)?)?.is_identity();
    // f* ⊣ f_!
    let third = ambi_unit(f, w)?
        .restrict(f)?
        .then(&ambi_counit(f, &fw)?)?
        .is_identity();
    let unit = ambi_unit(f, lv.output())?;
    let counit = ambi_counit(f, v)?;
    let fourth = unit
        .then(&push_transformation(Side::Left, f, &counit)?)?
        .is_identity();
    Ok(FrobeniusCheck {
        left_adjoint: [first, second],
        right_adjoint: [third, fourth],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    fn bc(n: usize) -> Arc<Groupoid> {
        Arc::new(Groupoid::one_object(FiniteGroup::cyclic(n)))
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn sample_maps() -> Vec<GroupoidMap> {
        let c6 = FiniteGroup::cyclic(6);
        let s3 = FiniteGroup::symmetric3();
        vec![
            GroupoidMap::from_homomorphism(c6.clone(), FiniteGroup::cyclic(3), (0..6).map(|i| i % 3).collect()).unwrap(),
            GroupoidMap::from_homomorphism(FiniteGroup::cyclic(2), c6.clone(), vec![0, 3]).unwrap(),
            GroupoidMap::from_homomorphism(s3.clone(), FiniteGroup::cyclic(2), (0..6).map(|i| usize::from(i >= 3)).collect()).unwrap(),
            GroupoidMap::from_homomorphism(FiniteGroup::cyclic(2), s3, vec![0, 3]).unwrap(),
            GroupoidMap::terminal(&bc(4)),
            GroupoidMap::from_point(&bc(3), 0),
        ]
    }

    #[test]
    fn gamma_examples() {
        let x = bc(3);
        let v = Representation::<Q>::regular(&x);
        assert!(gamma(&GroupoidMap::identity(&x), &v).unwrap().is_identity());
        let t = GroupoidMap::terminal(&x);
        let g = gamma(&t, &Representation::<Q>::unit(&x)).unwrap();
        assert_eq!(g.component(0), &Matrix::identity(1));
        let s = GroupoidMap::from_point(&bc(4), 0);
        let g = gamma(&s, &Representation::<Q>::unit(s.source())).unwrap();
        assert_eq!(g.component(0).rows(), 4);
        assert!(g.is_invertible());
    }

    #[test]
    fn generic_gamma_matches_closed_forms() {
        for f in sample_maps() {
            for v in [Representation::<Q>::regular(f.source()), Representation::unit(f.source())] {
                let generic = gamma_generic(&f, &v).unwrap();
                assert_eq!(generic, gamma(&f, &v).unwrap());
                assert_eq!(generic, gamma_transversal(&f, &v).unwrap());
            }
            let v = Representation::<Fp<3>>::regular(f.source());
            let generic = gamma_generic(&f, &v).unwrap();
            assert_eq!(generic, gamma_transversal(&f, &v).unwrap());
        }
    }

    #[test]
    fn closed_gamma_needs_invertible_image_order() {
        let t = GroupoidMap::from_point(&bc(2), 0);
        let v = Representation::<Fp<2>>::unit(t.source());
        assert!(gamma(&t, &v).is_ok());
        let f = GroupoidMap::identity(&bc(2));
        let v = Representation::<Fp<2>>::unit(f.source());
        assert!(matches!(gamma(&f, &v), Err(Error::NonInvertibleScalar { value: 2, .. })));
        assert!(gamma_transversal(&f, &v).unwrap().is_identity());
    }

    #[test]
    fn weights() {
        for n in 1..6 {
            let t = GroupoidMap::terminal(&bc(n));
            let d = delta::<Q>(&t);
            assert_eq!(d.weights.len(), 1);
            assert_eq!(d.weights[0].value, Q::from_integer(n as i64));
            assert_eq!(delta_generic::<Q>(&t).unwrap(), d);
        }
        let u = Arc::new(Groupoid::disjoint_union(&[&bc(2), &bc(3)]));
        let d = delta::<Q>(&GroupoidMap::terminal(&u));
        let values: Vec<Q> = d.weights.iter().map(|w| w.value.clone()).collect();
        assert_eq!(values, vec![Q::from_integer(2), Q::from_integer(3)]);
        let inj = GroupoidMap::from_homomorphism(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), vec![0, 2]).unwrap();
        assert!(delta::<Q>(&inj).weights.iter().all(|w| w.value == Q::from_integer(1)));
    }

    #[test]
    fn weights_do_not_depend_on_the_basepoint() {
        for f in sample_maps() {
            for x in 0..f.source().len() {
                let ay = f.target().group(f.on_object(x));
                let expected = Q::from_usize(f.kernel(x).len());
                for h in ay.elements() {
                    assert_eq!(delta_at_basepoint::<Q>(&f, x, h).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn nakayama_examples() {
        let x = bc(2);
        let t = GroupoidMap::terminal(&x);
        let nu = nakayama_map(&t, &Representation::<Q>::unit(&x)).unwrap();
        assert_eq!(nu.component(0), &Matrix::scalar(q(1, 2)));
        assert_eq!(
            nakayama_map(&t, &Representation::<Fp<2>>::unit(&x)),
            Err(Error::NonInvertibleDelta(vec!["*/*@0".into()]))
        );
        assert!(nakayama_map(&GroupoidMap::identity(&x), &Representation::<Q>::regular(&x)).unwrap().is_identity());
    }

    #[test]
    fn nakayama_three_ways() {
        for f in sample_maps() {
            let v = Representation::<Q>::regular(f.source());
            let nu = nakayama_map(&f, &v).unwrap();
            assert!(nu.is_invertible());
            assert_eq!(nu, nakayama_closed(&f, &v).unwrap());
            assert_eq!(nu, nakayama_map_right_weighted(&f, &v).unwrap());
        }
    }

    #[test]
    fn cyclic_counterexample() {
        for n in 2..5 {
            let y = bc(n);
            let s = GroupoidMap::from_point(&y, 0);
            let t = GroupoidMap::terminal(&y);
            let one = Representation::<Q>::unit(s.source());
            let gam = check_triangle(Variant::Gamma, &s, &t, &one).unwrap();
            assert_eq!(gam.left, Discrepancy::Scalar(Q::from_usize(n)));
            assert_eq!(gam.right, Discrepancy::Scalar(Q::from_usize(n)));
            let nu = check_triangle(Variant::Nu, &s, &t, &one).unwrap();
            assert!(nu.holds());
        }
    }

    #[test]
    fn mu_chi_recovers_gamma() {
        let x = bc(3);
        let t = GroupoidMap::terminal(&x);
        let chi = gamma(&t, &Representation::<Q>::unit(&x)).unwrap();
        let v = Representation::<Q>::regular(&x);
        assert_eq!(mu_chi(&t, &chi, &v).unwrap(), gamma(&t, &v).unwrap());
        let two = Q::from_integer(2);
        assert_eq!(mu_chi(&t, &chi.scale(&two), &v).unwrap(), gamma(&t, &v).unwrap().scale(&two));
        let zero = chi.scale(&Q::from_integer(0));
        assert!(mu_chi(&t, &zero, &v).unwrap().is_zero());
    }

    #[test]
    fn frobenius_triangles() {
        for f in sample_maps() {
            let v = Representation::<Q>::regular(f.source());
            let w = Representation::<Q>::regular(f.target());
            assert!(check_frobenius(&f, &v, &w).unwrap().holds());
        }
    }
}
