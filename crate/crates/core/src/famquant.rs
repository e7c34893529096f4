//! Spans of groupoids carrying representations, and their quantization.
//!
//! An object is a groupoid `X` with a representation `V`. A morphism
//! `(X, V) -> (Y, W)` is a span `X <-f- M -g-> Y` with a filling
//! `α: f*V -> g*W`. Spans compose through the homotopy pullback of the
//! middle legs. `∑` sends `(X, V)` to the colimit `x_!V` along `x: X -> *`
//! and `∏` to the limit `x_*V`; on spans both pull back and push forward,
//! using ν to turn the wrong-way extension around.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{diagonal, Groupoid, GroupoidMap};
use crate::kan::{comp_left, comp_right, left_kan, mu_left, mu_right, right_kan, KanPackage};
use crate::matrix::Matrix;
use crate::nakayama::nakayama_map;
use crate::pullback::{homotopy_pullback_with, RepChoice};
use crate::rep::{coevaluation, evaluation, restrict_along_transformation, RepMap, Representation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamObject<S: Scalar> {
    pub groupoid: Arc<Groupoid>,
    pub rep: Representation<S>,
}

impl<S: Scalar> FamObject<S> {
    pub fn new(rep: Representation<S>) -> Self {
        FamObject {
            groupoid: rep.groupoid().clone(),
            rep,
        }
    }

    /// The monoidal unit: the point with the trivial one-dimensional space.
    pub fn unit() -> Self {
        Self::new(Representation::unit(&Arc::new(Groupoid::point())))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::new(self.rep.external_tensor(&other.rep))
    }

    pub fn dual(&self) -> Self {
        Self::new(self.rep.dual())
    }

    fn terminal(&self) -> GroupoidMap {
        GroupoidMap::terminal(&self.groupoid)
    }
}

pub fn fam_dual<S: Scalar>(o: &FamObject<S>) -> FamObject<S> {
    o.dual()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span<S: Scalar> {
    source: FamObject<S>,
    target: FamObject<S>,
    f: GroupoidMap,
    g: GroupoidMap,
    filling: RepMap<S>,
}

impl<S: Scalar> Span<S> {
    pub fn new(
        source: FamObject<S>,
        target: FamObject<S>,
        f: GroupoidMap,
        g: GroupoidMap,
        filling: RepMap<S>,
    ) -> Result<Self> {
        if f.source() != g.source() {
            return Err(Error::BadArgument("span legs have different apexes".into()));
        }
        if f.target() != &source.groupoid || g.target() != &target.groupoid {
            return Err(Error::BadArgument("span legs do not reach the end objects".into()));
        }
        if filling.source() != &source.rep.restrict(&f)? || filling.target() != &target.rep.restrict(&g)? {
            return Err(Error::BadArgument("filling must map f*V to g*W".into()));
        }
        filling.validate()?;
        Ok(Span {
            source,
            target,
            f,
            g,
            filling,
        })
    }

    pub fn identity(o: &FamObject<S>) -> Self {
        let id = GroupoidMap::identity(&o.groupoid);
        Span {
            source: o.clone(),
            target: o.clone(),
            f: id.clone(),
            g: id,
            filling: RepMap::identity(&o.rep),
        }
    }

    /// `source <- source -> target` along a renaming of objects; the two
    /// groupoids must agree up to object names and carry equal actions.
    pub fn canonical_iso(source: &FamObject<S>, target: &FamObject<S>) -> Result<Self> {
        let x = &source.groupoid;
        let y = &target.groupoid;
        if x.len() != y.len() || (0..x.len()).any(|i| x.group(i) != y.group(i)) {
            return Err(Error::BadArgument("groupoids differ beyond object names".into()));
        }
        let rename = GroupoidMap::new(
            x.clone(),
            y.clone(),
            (0..x.len()).collect(),
            (0..x.len()).map(|i| x.group(i).elements().collect()).collect(),
        )?;
        let pulled = target.rep.restrict(&rename)?;
        let filling = RepMap::identity(&source.rep).retype(&source.rep, &pulled)?;
        Self::new(source.clone(), target.clone(), GroupoidMap::identity(x), rename, filling)
    }

    pub fn source(&self) -> &FamObject<S> {
        &self.source
    }

    pub fn target(&self) -> &FamObject<S> {
        &self.target
    }

    pub fn apex(&self) -> &Arc<Groupoid> {
        self.f.source()
    }

    pub fn left_leg(&self) -> &GroupoidMap {
        &self.f
    }

    pub fn right_leg(&self) -> &GroupoidMap {
        &self.g
    }

    pub fn filling(&self) -> &RepMap<S> {
        &self.filling
    }

    /// `next ∘ self` through the homotopy pullback of the middle legs.
    pub fn then(&self, next: &Span<S>) -> Result<Span<S>> {
        compose_spans_with(self, next, RepChoice::Minimal)
    }

    /// Cartesian product of apexes with external tensor fillings.
    pub fn tensor(&self, other: &Span<S>) -> Span<S> {
        Span {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            f: self.f.product(&other.f),
            g: self.g.product(&other.g),
            filling: self.filling.external_tensor(&other.filling),
        }
    }

    /// `1 <- X -Δ-> X × X` with filling the pointwise coevaluation
    /// `1 -> V ⊗ V^d`.
    pub fn coevaluation(o: &FamObject<S>) -> Span<S> {
        let target = o.tensor(&o.dual());
        let delta = diagonal(&o.groupoid);
        let pulled = target.rep.restrict(&delta).expect("diagonal lands in the square");
        let filling = coevaluation(&o.rep)
            .retype(&Representation::unit(&o.groupoid), &pulled)
            .expect("V ⊗ V^d is the diagonal restriction of V ⊠ V^d");
        Span {
            source: FamObject::unit(),
            target,
            f: o.terminal(),
            g: delta,
            filling,
        }
    }

    /// `X × X <-Δ- X -> 1` with filling the pointwise evaluation.
    pub fn evaluation(o: &FamObject<S>) -> Span<S> {
        let source = o.dual().tensor(o);
        let delta = diagonal(&o.groupoid);
        let pulled = source.rep.restrict(&delta).expect("diagonal lands in the square");
        let filling = evaluation(&o.rep)
            .retype(&pulled, &Representation::unit(&o.groupoid))
            .expect("V^d ⊗ V is the diagonal restriction of V^d ⊠ V");
        Span {
            source,
            target: FamObject::unit(),
            f: delta,
            g: o.terminal(),
            filling,
        }
    }
}

pub fn compose_spans<S: Scalar>(a: &Span<S>, b: &Span<S>) -> Result<Span<S>> {
    compose_spans_with(a, b, RepChoice::Minimal)
}

/// Composition with an explicit choice of double-coset representatives for
/// the skeletal pullback.
pub fn compose_spans_with<S: Scalar>(a: &Span<S>, b: &Span<S>, choice: RepChoice) -> Result<Span<S>> {
    if a.target != b.source {
        return Err(Error::NonComposableSpans(
            "target of the first span differs from the source of the second".into(),
        ));
    }
    let pb = homotopy_pullback_with(&a.g, &b.f, choice)?;
    let w = &a.target.rep;
    let alpha = a.filling.restrict(&pb.p)?;
    let pi = restrict_along_transformation(&pb.pi, w)?;
    let beta = b.filling.restrict(&pb.q)?;
    let filling = alpha.then(&pi.retype(alpha.target(), pi.target())?)?;
    let filling = filling.then(&beta.retype(filling.target(), beta.target())?)?;
    let f = pb.p.then(&a.f)?;
    let g = pb.q.then(&b.g)?;
    let filling = filling.retype(&a.source.rep.restrict(&f)?, &b.target.rep.restrict(&g)?)?;
    Ok(Span {
        source: a.source.clone(),
        target: b.target.clone(),
        f,
        g,
        filling,
    })
}

pub fn tensor_spans<S: Scalar>(a: &Span<S>, b: &Span<S>) -> Span<S> {
    a.tensor(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage<S: Scalar> {
    pub name: &'static str,
    pub matrix: Matrix<S>,
}

/// A quantized span: the matrix and the stages it is the product of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantResult<S: Scalar> {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Matrix<S>,
    pub stages: Vec<Stage<S>>,
}

impl<S: Scalar> QuantResult<S> {
    fn from_stages(stages: Vec<(&'static str, RepMap<S>)>) -> Result<Self> {
        let mut maps = stages.iter().map(|(_, m)| m);
        let first = maps.next().expect("at least one stage").clone();
        let total = maps.try_fold(first, |acc, m| acc.then(m))?;
        Ok(QuantResult {
            source_dim: total.source().dim(0),
            target_dim: total.target().dim(0),
            matrix: total.component(0).clone(),
            stages: stages
                .into_iter()
                .map(|(name, m)| Stage {
                    name,
                    matrix: m.component(0).clone(),
                })
                .collect(),
        })
    }
}

/// `∑(X, V) = x_!V`.
pub fn quant_sum_object<S: Scalar>(o: &FamObject<S>) -> Result<KanPackage<S>> {
    left_kan(&o.terminal(), &o.rep)
}

/// `∏(X, V) = x_*V`.
pub fn quant_prod_object<S: Scalar>(o: &FamObject<S>) -> Result<KanPackage<S>> {
    right_kan(&o.terminal(), &o.rep)
}

/// `∑` on a span: `x_!V -> x_!f_*f*V -> x_!f_*g*W -> x_!f_!g*W ≅ m_!g*W
/// ≅ y_!g_!g*W -> y_!W`.
pub fn quant_sum_span<S: Scalar>(s: &Span<S>) -> Result<QuantResult<S>> {
    let (f, g) = (&s.f, &s.g);
    let (v, w) = (&s.source.rep, &s.target.rep);
    let x = s.source.terminal();
    let y = s.target.terminal();
    let fv = v.restrict(f)?;
    let gw = w.restrict(g)?;

    let eta = right_kan(f, &fv)?.unit_right(v)?;
    let stage1 = left_kan(&x, v)?.push(&left_kan(&x, eta.target())?, &eta)?;
    let push_alpha = right_kan(f, &fv)?.push(&right_kan(f, &gw)?, &s.filling)?;
    let stage2 = left_kan(&x, push_alpha.source())?.push(&left_kan(&x, push_alpha.target())?, &push_alpha)?;
    let nu = nakayama_map(f, &gw)?;
    let stage3 = left_kan(&x, nu.source())?.push(&left_kan(&x, nu.target())?, &nu)?;
    let stage4 = comp_left(f, &x, &gw)?.inverse()?;
    let stage5 = comp_left(g, &y, &gw)?;
    let eps = left_kan(g, &gw)?.counit_left(w)?;
    let stage6 = left_kan(&y, eps.source())?.push(&left_kan(&y, w)?, &eps)?;
    QuantResult::from_stages(vec![
        ("unit", stage1),
        ("filling", stage2),
        ("nakayama", stage3),
        ("compose-in", stage4),
        ("compose-out", stage5),
        ("counit", stage6),
    ])
}

/// `∏` on a span: `x_*V -> x_*f_*f*V ≅ m_*f*V -> m_*g*W ≅ y_*g_*g*W
/// -> y_*g_!g*W -> y_*W`.
pub fn quant_prod_span<S: Scalar>(s: &Span<S>) -> Result<QuantResult<S>> {
    let (f, g) = (&s.f, &s.g);
    let (v, w) = (&s.source.rep, &s.target.rep);
    let x = s.source.terminal();
    let y = s.target.terminal();
    let m = GroupoidMap::terminal(f.source());
    let fv = v.restrict(f)?;
    let gw = w.restrict(g)?;

    let eta = right_kan(f, &fv)?.unit_right(v)?;
    let stage1 = right_kan(&x, v)?.push(&right_kan(&x, eta.target())?, &eta)?;
    let stage2 = comp_right(f, &x, &fv)?;
    let stage3 = right_kan(&m, &fv)?.push(&right_kan(&m, &gw)?, &s.filling)?;
    let stage4 = comp_right(g, &y, &gw)?.inverse()?;
    let nu = nakayama_map(g, &gw)?;
    let stage5 = right_kan(&y, nu.source())?.push(&right_kan(&y, nu.target())?, &nu)?;
    let eps = left_kan(g, &gw)?.counit_left(w)?;
    let stage6 = right_kan(&y, eps.source())?.push(&right_kan(&y, w)?, &eps)?;
    QuantResult::from_stages(vec![
        ("unit", stage1),
        ("compose-in", stage2),
        ("filling", stage3),
        ("compose-out", stage4),
        ("nakayama", stage5),
        ("counit", stage6),
    ])
}

/// `∑(V ⊠ W) -> ∑V ⊗ ∑W`.
pub fn sum_monoidal_iso<S: Scalar>(a: &FamObject<S>, b: &FamObject<S>) -> Result<Matrix<S>> {
    Ok(mu_left(&a.terminal(), &b.terminal(), &a.rep, &b.rep)?.component(0).clone())
}

/// `∏(V ⊠ W) -> ∏V ⊗ ∏W`.
pub fn prod_monoidal_iso<S: Scalar>(a: &FamObject<S>, b: &FamObject<S>) -> Result<Matrix<S>> {
    Ok(mu_right(&a.terminal(), &b.terminal(), &a.rep, &b.rep)?.component(0).clone())
}

/// ν along `X -> *`: `∏(X, V) -> ∑(X, V)`.
pub fn nakayama_montran<S: Scalar>(o: &FamObject<S>) -> Result<Matrix<S>> {
    Ok(nakayama_map(&o.terminal(), &o.rep)?.component(0).clone())
}

/// `∑` of `* <- X -> *` with trivial one-dimensional representations.
pub fn cardinality_span<S: Scalar>(x: &Arc<Groupoid>) -> Result<Span<S>> {
    let point = FamObject::<S>::unit();
    let t = GroupoidMap::terminal(x);
    let one = Representation::unit(x);
    Span::new(point.clone(), point, t.clone(), t, RepMap::identity(&one))
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

    #[test]
    fn object_values() {
        let unit = FamObject::<Q>::new(Representation::unit(&bc(4)));
        assert_eq!(quant_sum_object(&unit).unwrap().output().dims(), &[1]);
        let reg = FamObject::<Q>::new(Representation::regular(&bc(3)));
        assert_eq!(quant_sum_object(&reg).unwrap().output().dims(), &[1]);
        let u = Arc::new(Groupoid::disjoint_union(&[&bc(2), &bc(3)]));
        let two = FamObject::<Q>::new(Representation::unit(&u));
        assert_eq!(quant_sum_object(&two).unwrap().output().dims(), &[2]);
        let triv = FamObject::<Q>::new(Representation::unit(&bc(2)));
        assert_eq!(quant_prod_object(&triv).unwrap().output().dims(), &[1]);
    }

    #[test]
    fn identity_spans() {
        let o = FamObject::<Q>::new(Representation::regular(&bc(3)));
        let id = Span::identity(&o);
        assert!(quant_sum_span(&id).unwrap().matrix.is_identity());
        assert!(quant_prod_span(&id).unwrap().matrix.is_identity());
    }

    #[test]
    fn cardinality_spans() {
        for n in 1..5 {
            let s = cardinality_span::<Q>(&bc(n)).unwrap();
            let r = quant_sum_span(&s).unwrap();
            assert_eq!(r.matrix, Matrix::scalar(Q::new(1, n as i64)));
            assert_eq!(r.stages.len(), 6);
            assert_eq!(quant_prod_span(&s).unwrap().matrix, r.matrix);
        }
        let disc = Arc::new(Groupoid::discrete(3));
        let r = quant_sum_span(&cardinality_span::<Q>(&disc).unwrap()).unwrap();
        assert_eq!(r.matrix, Matrix::scalar(Q::from_integer(3)));
    }

    #[test]
    fn compositions() {
        let point = FamObject::<Q>::unit();
        let s = cardinality_span::<Q>(&bc(2)).unwrap();
        let ss = s.then(&s).unwrap();
        assert_eq!(ss.apex().len(), 1);
        assert_eq!(ss.apex().group(0).order(), 4);
        let lhs = quant_sum_span(&ss).unwrap().matrix;
        let rhs = quant_sum_span(&s).unwrap().matrix.matmul(&quant_sum_span(&s).unwrap().matrix).unwrap();
        assert_eq!(lhs, rhs);

        // * <- * -> BC_3 then BC_3 <- * -> *
        let y = FamObject::<Q>::new(Representation::unit(&bc(3)));
        let pt = Arc::new(Groupoid::point());
        let s_in = GroupoidMap::from_point(&bc(3), 0);
        let up = Span::new(point.clone(), y.clone(), GroupoidMap::identity(&pt), s_in.clone(),
            RepMap::identity(&Representation::unit(&pt))).unwrap();
        let down = Span::new(y, point, s_in, GroupoidMap::identity(&pt),
            RepMap::identity(&Representation::unit(&pt))).unwrap();
        let loop_span = up.then(&down).unwrap();
        assert_eq!(loop_span.apex().len(), 3);
        let lhs = quant_sum_span(&loop_span).unwrap().matrix;
        assert_eq!(lhs, Matrix::scalar(Q::from_integer(3)));
        let rhs = quant_sum_span(&down).unwrap().matrix.matmul(&quant_sum_span(&up).unwrap().matrix).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn montran_examples() {
        assert_eq!(nakayama_montran(&FamObject::<Q>::unit()).unwrap(), Matrix::identity(1));
        let o = FamObject::<Q>::new(Representation::unit(&bc(2)));
        assert_eq!(nakayama_montran(&o).unwrap(), Matrix::scalar(Q::new(1, 2)));
        let o2 = FamObject::<Fp<2>>::new(Representation::unit(&bc(2)));
        assert!(matches!(nakayama_montran(&o2), Err(Error::NonInvertibleDelta(_))));
    }

    fn chain(spans: &[Span<Q>]) -> Span<Q> {
        spans[1..].iter().fold(spans[0].clone(), |acc, s| acc.then(s).unwrap())
    }

    #[test]
    fn snakes() {
        let o = FamObject::<Q>::new(Representation::regular(&bc(2)));
        let od = o.dual();
        let one = FamObject::<Q>::unit();
        let iso = |a: &FamObject<Q>, b: &FamObject<Q>| Span::canonical_iso(a, b).unwrap();

        let first = chain(&[
            iso(&o, &one.tensor(&o)),
            Span::coevaluation(&o).tensor(&Span::identity(&o)),
            iso(&o.tensor(&od).tensor(&o), &o.tensor(&od.tensor(&o))),
            Span::identity(&o).tensor(&Span::evaluation(&o)),
            iso(&o.tensor(&one), &o),
        ]);
        let r = quant_sum_span(&first).unwrap();
        assert!(r.matrix.is_identity());

        let second = chain(&[
            iso(&od, &od.tensor(&one)),
            Span::identity(&od).tensor(&Span::coevaluation(&o)),
            iso(&od.tensor(&o.tensor(&od)), &od.tensor(&o).tensor(&od)),
            Span::evaluation(&o).tensor(&Span::identity(&od)),
            iso(&one.tensor(&od), &od),
        ]);
        assert!(quant_sum_span(&second).unwrap().matrix.is_identity());
        assert!(quant_prod_span(&second).unwrap().matrix.is_identity());
    }

    #[test]
    fn tensors() {
        let a = FamObject::<Q>::new(Representation::regular(&bc(2)));
        let b = FamObject::<Q>::new(Representation::unit(&bc(3)));
        assert_eq!(Span::identity(&a).tensor(&Span::identity(&b)), Span::identity(&a.tensor(&b)));

        let mu = sum_monoidal_iso(&a, &b).unwrap();
        assert_eq!((mu.rows(), mu.cols()), (1, 1));
        assert!(mu.is_invertible());
        let unitor = sum_monoidal_iso(&a, &FamObject::unit()).unwrap();
        assert!(unitor.is_identity());

        // naturality of μ against a pair of spans
        let s = cardinality_span::<Q>(&bc(2)).unwrap();
        let t = cardinality_span::<Q>(&bc(3)).unwrap();
        let one = FamObject::<Q>::unit();
        let st = s.tensor(&t);
        let lhs = sum_monoidal_iso(&one, &one).unwrap().matmul(&quant_sum_span(&st).unwrap().matrix).unwrap();
        let rhs = quant_sum_span(&s).unwrap().matrix.kronecker(&quant_sum_span(&t).unwrap().matrix);
        let rhs = rhs.matmul(&sum_monoidal_iso(&one, &one).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Matrix::scalar(Q::new(1, 6)));
    }

    #[test]
    fn montran_is_natural() {
        let x = FamObject::<Q>::new(Representation::regular(&bc(3)));
        let y = FamObject::<Q>::new(Representation::regular(&bc(2)));
        // BC_3 <- BC_6 -> BC_2 with the regular reps pulled back; filling
        // any intertwiner between the restrictions
        let c6 = Arc::new(Groupoid::one_object(FiniteGroup::cyclic(6)));
        let f = GroupoidMap::new(c6.clone(), bc(3), vec![0], vec![(0..6).map(|i| i % 3).collect()]).unwrap();
        let g = GroupoidMap::new(c6, bc(2), vec![0], vec![(0..6).map(|i| i % 2).collect()]).unwrap();
        let fv = x.rep.restrict(&f).unwrap();
        let gw = y.rep.restrict(&g).unwrap();
        let basis = crate::rep::intertwiner_basis(&fv, &gw).unwrap();
        assert!(!basis.is_empty());
        let filling = basis.iter().skip(1).fold(basis[0].clone(), |acc, m| acc.add(m).unwrap());
        let s = Span::new(x.clone(), y.clone(), f, g, filling).unwrap();
        let lhs = quant_sum_span(&s).unwrap().matrix.matmul(&nakayama_montran(&x).unwrap()).unwrap();
        let rhs = nakayama_montran(&y).unwrap().matmul(&quant_prod_span(&s).unwrap().matrix).unwrap();
        assert_eq!(lhs, rhs);
    }
}
