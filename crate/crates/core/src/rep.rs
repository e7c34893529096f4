//! Representations of skeletal groupoids and the maps between them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{product_projections, Groupoid, GroupoidMap, NatTransf};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A functor from a groupoid to finite-dimensional vector spaces: per object
/// a dimension and a matrix for every automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<S: Scalar> {
    groupoid: Arc<Groupoid>,
    dims: Vec<usize>,
    action: Arc<Vec<Vec<Matrix<S>>>>,
}

impl<S: Scalar> Representation<S> {
    /// Validates shapes, `ρ(e) = I` and `ρ(gh) = ρ(g)ρ(h)`.
    ///
    /// Multiplicativity is checked for every `h` against every generator `s`
    /// on the right; with `ρ(e) = I` this forces it for all pairs by
    /// induction on word length.
    pub fn new(groupoid: Arc<Groupoid>, action: Vec<Vec<Matrix<S>>>) -> Result<Self> {
        if action.len() != groupoid.len() {
            return Err(Error::NotARepresentation(
                "one action table per object".into(),
            ));
        }
        for (x, table) in action.iter().enumerate() {
            let g = groupoid.group(x);
            if table.len() != g.order() {
                return Err(Error::NotARepresentation(format!(
                    "object {} has {} matrices for a group of order {}",
                    groupoid.name(x),
                    table.len(),
                    g.order()
                )));
            }
            let d = table[0].rows();
            if table.iter().any(|m| m.rows() != d || m.cols() != d) {
                return Err(Error::NotARepresentation(format!(
                    "matrices at {} are not all {d}x{d}",
                    groupoid.name(x)
                )));
            }
        }
        let rep = Self::new_unchecked(groupoid, action);
        rep.check()?;
        Ok(rep)
    }

    /// Re-checks the identity and multiplicativity laws. Representations
    /// produced by Kan extensions are built without this check.
    pub fn check(&self) -> Result<()> {
        for (x, table) in self.action.iter().enumerate() {
            let g = self.groupoid.group(x);
            let d = self.dims[x];
            if !table[0].is_identity() {
                return Err(Error::NotARepresentation(format!(
                    "identity of {} does not act trivially",
                    self.groupoid.name(x)
                )));
            }
            for &s in g.generators() {
                let right = table[s].nonzero_rows();
                for h in g.elements() {
                    if table[g.mul(h, s)] != table[h].matmul_sparse(&right, d) {
                        return Err(Error::NotARepresentation(format!(
                            "action at {} is not multiplicative on ({h}, {s})",
                            self.groupoid.name(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the action from generator images, extending along generator
    /// words, then validates.
    pub fn from_generators(groupoid: Arc<Groupoid>, images: Vec<Vec<Matrix<S>>>) -> Result<Self> {
        if images.len() != groupoid.len() {
            return Err(Error::NotARepresentation(
                "one generator list per object".into(),
            ));
        }
        let mut action = Vec::with_capacity(images.len());
        for (x, gens) in images.into_iter().enumerate() {
            let g = groupoid.group(x);
            if gens.len() != g.generators().len() {
                return Err(Error::NotARepresentation(format!(
                    "object {} expects {} generator images",
                    groupoid.name(x),
                    g.generators().len()
                )));
            }
            let d = gens.first().map_or(0, Matrix::rows);
            let mut table = vec![Matrix::identity(d); g.order()];
            for h in g.bfs_order().into_iter().skip(1) {
                let (parent, s) = g.word_step(h).expect("non-identity has a word");
                let k = g.generators().iter().position(|&t| t == s).unwrap();
                table[h] = table[parent].matmul(&gens[k])?;
            }
            action.push(table);
        }
        Self::new(groupoid, action)
    }

    pub(crate) fn new_unchecked(groupoid: Arc<Groupoid>, action: Vec<Vec<Matrix<S>>>) -> Self {
        let dims = action.iter().map(|t| t[0].rows()).collect();
        Representation {
            groupoid,
            dims,
            action: Arc::new(action),
        }
    }

    /// The trivial action on `k^d` at every object.
    pub fn trivial(groupoid: &Arc<Groupoid>, d: usize) -> Self {
        let action = (0..groupoid.len())
            .map(|x| vec![Matrix::identity(d); groupoid.group(x).order()])
            .collect();
        Self::new_unchecked(groupoid.clone(), action)
    }

    /// The monoidal unit.
    pub fn unit(groupoid: &Arc<Groupoid>) -> Self {
        Self::trivial(groupoid, 1)
    }

    pub fn zero(groupoid: &Arc<Groupoid>) -> Self {
        Self::trivial(groupoid, 0)
    }

    /// `k[A_x]` at every object, `g · e_h = e_{gh}`.
    pub fn regular(groupoid: &Arc<Groupoid>) -> Self {
        let action = (0..groupoid.len())
            .map(|x| {
                let g = groupoid.group(x);
                g.elements()
                    .map(|a| {
                        let perm: Vec<usize> = g.elements().map(|h| g.mul(a, h)).collect();
                        Matrix::permutation(&perm)
                    })
                    .collect()
            })
            .collect();
        Self::new_unchecked(groupoid.clone(), action)
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn action(&self, x: usize, a: usize) -> &Matrix<S> {
        &self.action[x][a]
    }

    pub fn action_table(&self, x: usize) -> &[Matrix<S>] {
        &self.action[x]
    }

    /// `f*V`: `(f*V)(x) = V(f x)` with `a` acting as `f(a)`.
    pub fn restrict(&self, f: &GroupoidMap) -> Result<Self> {
        if f.target() != &self.groupoid {
            return Err(Error::GroupoidMismatch(
                "restriction along a map into a different groupoid".into(),
            ));
        }
        let action = (0..f.source().len())
            .map(|x| {
                let y = f.on_object(x);
                f.hom_map(x)
                    .iter()
                    .map(|&b| self.action[y][b].clone())
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(f.source().clone(), action))
    }

    fn same_groupoid(&self, other: &Self, what: &str) -> Result<()> {
        if self.groupoid != other.groupoid {
            return Err(Error::GroupoidMismatch(format!("{what} of representations on different groupoids")));
        }
        Ok(())
    }

    /// Pointwise tensor product in lexicographic Kronecker order.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_groupoid(other, "tensor")?;
        let action = (0..self.groupoid.len())
            .map(|x| {
                self.action[x]
                    .iter()
                    .zip(other.action[x].iter())
                    .map(|(a, b)| a.kronecker(b))
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(self.groupoid.clone(), action))
    }

    /// Dual representation, `g ↦ (ρ(g)⁻¹)ᵀ`.
    pub fn dual(&self) -> Self {
        let action = (0..self.groupoid.len())
            .map(|x| {
                let g = self.groupoid.group(x);
                g.elements()
                    .map(|a| self.action[x][g.inv(a)].transpose())
                    .collect()
            })
            .collect();
        Self::new_unchecked(self.groupoid.clone(), action)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_groupoid(other, "direct sum")?;
        let action = (0..self.groupoid.len())
            .map(|x| {
                self.action[x]
                    .iter()
                    .zip(other.action[x].iter())
                    .map(|(a, b)| Matrix::direct_sum(&[a.clone(), b.clone()]))
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(self.groupoid.clone(), action))
    }

    /// `V ⊠ W = p_X*V ⊗ p_Y*W` on `X × Y`.
    pub fn external_tensor(&self, other: &Self) -> Self {
        let (_, px, py) = product_projections(&self.groupoid, &other.groupoid);
        self.restrict(&px)
            .and_then(|a| a.tensor(&other.restrict(&py)?))
            .expect("projections land in the factors")
    }

    /// The same action with every matrix conjugated by `p_x`: `p ρ(a) p⁻¹`.
    pub fn conjugate(&self, p: &[Matrix<S>]) -> Result<Self> {
        let mut action = Vec::with_capacity(self.groupoid.len());
        for x in 0..self.groupoid.len() {
            let inv = p[x].inverse()?;
            action.push(
                self.action[x]
                    .iter()
                    .map(|a| p[x].matmul(a)?.matmul(&inv))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::new(self.groupoid.clone(), action)
    }

    /// Basis of the invariants `V(x)^{A_x}`, as columns.
    pub fn invariants(&self, x: usize) -> Matrix<S> {
        let g = self.groupoid.group(x);
        let d = self.dims[x];
        let blocks: Vec<Matrix<S>> = g
            .generators()
            .iter()
            .map(|&s| self.action[x][s].sub(&Matrix::identity(d)).unwrap())
            .collect();
        Matrix::vstack(d, &blocks).unwrap().kernel_basis()
    }

    /// Character at `x`: traces of the action matrices.
    pub fn character(&self, x: usize) -> Vec<S> {
        self.action[x].iter().map(Matrix::trace).collect()
    }
}

/// A natural transformation of representations, one matrix per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap<S: Scalar> {
    source: Representation<S>,
    target: Representation<S>,
    components: Vec<Matrix<S>>,
}

impl<S: Scalar> RepMap<S> {
    /// Checks shapes and intertwining on generators, which implies it for
    /// every element.
    pub fn new(source: Representation<S>, target: Representation<S>, components: Vec<Matrix<S>>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, components)?;
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Representation<S>,
        target: Representation<S>,
        components: Vec<Matrix<S>>,
    ) -> Result<Self> {
        source.same_groupoid(&target, "map")?;
        if components.len() != source.groupoid.len() {
            return Err(Error::DimensionMismatch("one component per object".into()));
        }
        for (x, c) in components.iter().enumerate() {
            if c.rows() != target.dims[x] || c.cols() != source.dims[x] {
                return Err(Error::DimensionMismatch(format!(
                    "component at {} is {}x{}, expected {}x{}",
                    source.groupoid.name(x),
                    c.rows(),
                    c.cols(),
                    target.dims[x],
                    source.dims[x]
                )));
            }
        }
        Ok(RepMap {
            source,
            target,
            components,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let grpd = &self.source.groupoid;
        for x in 0..grpd.len() {
            for &a in grpd.group(x).generators() {
                let lhs = self.components[x].matmul(self.source.action(x, a))?;
                let rhs = self.target.action(x, a).matmul(&self.components[x])?;
                if lhs != rhs {
                    return Err(Error::NotNatural {
                        object: grpd.name(x).to_string(),
                        element: a,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(v: &Representation<S>) -> Self {
        RepMap {
            source: v.clone(),
            target: v.clone(),
            components: v.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero(source: &Representation<S>, target: &Representation<S>) -> Result<Self> {
        let comps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&c, &r)| Matrix::zeros(r, c))
            .collect();
        Self::new_unchecked(source.clone(), target.clone(), comps)
    }

    pub fn source(&self) -> &Representation<S> {
        &self.source
    }

    pub fn target(&self) -> &Representation<S> {
        &self.target
    }

    pub fn component(&self, x: usize) -> &Matrix<S> {
        &self.components[x]
    }

    pub fn components(&self) -> &[Matrix<S>] {
        &self.components
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RepMap<S>) -> Result<RepMap<S>> {
        if self.target != next.source {
            return Err(Error::NonComposable(
                "target representation differs from the next source".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(a, b)| b.matmul(a))
            .collect::<Result<_>>()?;
        Ok(RepMap {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    /// `self ∘ prev`.
    pub fn after(&self, prev: &RepMap<S>) -> Result<RepMap<S>> {
        prev.then(self)
    }

    pub fn add(&self, other: &RepMap<S>) -> Result<RepMap<S>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("sum of maps with different ends".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn scale(&self, s: &S) -> RepMap<S> {
        RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|m| m.scale(s)).collect(),
        }
    }

    /// Per-object scaling, `c_x · m_x`.
    pub fn scale_objects(&self, scalars: &[S]) -> RepMap<S> {
        RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self
                .components
                .iter()
                .zip(scalars)
                .map(|(m, s)| m.scale(s))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Result<RepMap<S>> {
        let components = self
            .components
            .iter()
            .map(Matrix::inverse)
            .collect::<Result<_>>()?;
        Ok(RepMap {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(Matrix::is_identity)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    /// Reinterprets the same matrices between representations that are equal
    /// as data; errors if they are not.
    pub fn retype(&self, source: &Representation<S>, target: &Representation<S>) -> Result<RepMap<S>> {
        if &self.source != source || &self.target != target {
            return Err(Error::NonComposable("retyping between different representations".into()));
        }
        Ok(RepMap {
            source: source.clone(),
            target: target.clone(),
            components: self.components.clone(),
        })
    }

    /// The transpose `B^d -> A^d` of `m: A -> B`.
    pub fn dual(&self) -> RepMap<S> {
        RepMap {
            source: self.target.dual(),
            target: self.source.dual(),
            components: self.components.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `f*m`.
    pub fn restrict(&self, f: &GroupoidMap) -> Result<RepMap<S>> {
        let source = self.source.restrict(f)?;
        let target = self.target.restrict(f)?;
        let components = f
            .object_map()
            .iter()
            .map(|&y| self.components[y].clone())
            .collect();
        Ok(RepMap {
            source,
            target,
            components,
        })
    }

    pub fn tensor(&self, other: &RepMap<S>) -> Result<RepMap<S>> {
        let source = self.source.tensor(&other.source)?;
        let target = self.target.tensor(&other.target)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.kronecker(b))
            .collect();
        Ok(RepMap {
            source,
            target,
            components,
        })
    }

    pub fn external_tensor(&self, other: &RepMap<S>) -> RepMap<S> {
        let source = self.source.external_tensor(&other.source);
        let target = self.target.external_tensor(&other.target);
        let mut components = Vec::new();
        for a in &self.components {
            for b in &other.components {
                components.push(a.kronecker(b));
            }
        }
        RepMap {
            source,
            target,
            components,
        }
    }
}

/// `W(φ): f*W -> f'*W` for `φ: f ⇒ f'`.
pub fn restrict_along_transformation<S: Scalar>(phi: &NatTransf, w: &Representation<S>) -> Result<RepMap<S>> {
    let source = w.restrict(phi.source_map())?;
    let target = w.restrict(phi.target_map())?;
    let f = phi.source_map();
    let components = (0..f.source().len())
        .map(|x| w.action(f.on_object(x), phi.component(x)).clone())
        .collect();
    RepMap::new_unchecked(source, target, components)
}

/// The commutation matrix `k^m ⊗ k^n -> k^n ⊗ k^m`.
pub fn swap_matrix<S: Scalar>(m: usize, n: usize) -> Matrix<S> {
    let perm: Vec<usize> = (0..m * n).map(|k| (k % n) * m + k / n).collect();
    Matrix::permutation(&perm)
}

/// Symmetry `V ⊗ W -> W ⊗ V`.
pub fn swap<S: Scalar>(v: &Representation<S>, w: &Representation<S>) -> Result<RepMap<S>> {
    let comps = v
        .dims
        .iter()
        .zip(&w.dims)
        .map(|(&m, &n)| swap_matrix(m, n))
        .collect();
    RepMap::new_unchecked(v.tensor(w)?, w.tensor(v)?, comps)
}

/// `coev: 1 -> V ⊗ V^d`, `1 ↦ Σ e_i ⊗ e^i`.
pub fn coevaluation<S: Scalar>(v: &Representation<S>) -> RepMap<S> {
    let comps = v
        .dims
        .iter()
        .map(|&d| {
            let mut m = Matrix::zeros(d * d, 1);
            for i in 0..d {
                m.set(i * d + i, 0, S::one());
            }
            m
        })
        .collect();
    RepMap::new_unchecked(
        Representation::unit(&v.groupoid),
        v.tensor(&v.dual()).expect("same groupoid"),
        comps,
    )
    .expect("shapes agree")
}

/// `ev: V^d ⊗ V -> 1`, `e^i ⊗ e_j ↦ δ_ij`.
pub fn evaluation<S: Scalar>(v: &Representation<S>) -> RepMap<S> {
    let comps = v
        .dims
        .iter()
        .map(|&d| {
            let mut m = Matrix::zeros(1, d * d);
            for i in 0..d {
                m.set(0, i * d + i, S::one());
            }
            m
        })
        .collect();
    RepMap::new_unchecked(
        v.dual().tensor(v).expect("same groupoid"),
        Representation::unit(&v.groupoid),
        comps,
    )
    .expect("shapes agree")
}

/// `ev ∘ swap ∘ coev` at `x`, which is `dim V(x)` in the field.
pub fn dimension_scalar<S: Scalar>(v: &Representation<S>, x: usize) -> S {
    let vd = v.dual();
    let loop_map = coevaluation(v)
        .then(&swap(v, &vd).unwrap())
        .and_then(|m| m.then(&evaluation(v)))
        .expect("composable by construction");
    loop_map.component(x).get(0, 0).clone()
}

/// A basis of the space of intertwiners `V -> W`.
pub fn intertwiner_basis<S: Scalar>(v: &Representation<S>, w: &Representation<S>) -> Result<Vec<RepMap<S>>> {
    v.same_groupoid(w, "intertwiners")?;
    let grpd = v.groupoid.clone();
    let offsets: Vec<usize> = v
        .dims
        .iter()
        .zip(&w.dims)
        .scan(0, |acc, (&c, &r)| {
            let o = *acc;
            *acc += r * c;
            Some(o)
        })
        .collect();
    let unknowns: usize = v.dims.iter().zip(&w.dims).map(|(&c, &r)| r * c).sum();
    // X ρ_v(s) - ρ_w(s) X = 0, with X row-major in the unknown vector.
    let mut rows: Vec<Vec<S>> = Vec::new();
    for x in 0..grpd.len() {
        let (c, r) = (v.dims[x], w.dims[x]);
        for &s in grpd.group(x).generators() {
            let a = v.action(x, s);
            let b = w.action(x, s);
            for i in 0..r {
                for j in 0..c {
                    let mut row = vec![S::zero(); unknowns];
                    for k in 0..c {
                        let idx = offsets[x] + i * c + k;
                        row[idx] = row[idx].add_ref(a.get(k, j));
                    }
                    for k in 0..r {
                        let idx = offsets[x] + k * c + j;
                        row[idx] = row[idx].sub_ref(b.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows)?
    };
    let kernel = system.kernel_basis();
    let mut out = Vec::new();
    for k in 0..kernel.cols() {
        let comps = (0..grpd.len())
            .map(|x| {
                let (c, r) = (v.dims[x], w.dims[x]);
                let data = (0..r * c).map(|t| kernel.get(offsets[x] + t, k).clone()).collect();
                Matrix::from_vec(r, c, data).unwrap()
            })
            .collect();
        out.push(RepMap::new_unchecked(v.clone(), w.clone(), comps)?);
    }
    Ok(out)
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
    fn restriction_examples() {
        let x = bc(2);
        let reg = Representation::<Q>::regular(&x);
        assert_eq!(reg.restrict(&GroupoidMap::identity(&x)).unwrap(), reg);
        let at_point = reg.restrict(&GroupoidMap::from_point(&x, 0)).unwrap();
        assert_eq!(at_point, Representation::trivial(at_point.groupoid(), 2));

        let c3 = bc(3);
        let f = GroupoidMap::from_homomorphism(
            FiniteGroup::cyclic(6),
            FiniteGroup::cyclic(3),
            (0..6).map(|i| i % 3).collect(),
        )
        .unwrap();
        let f = GroupoidMap::new(f.source().clone(), c3.clone(), vec![0], vec![f.hom_map(0).to_vec()]).unwrap();
        let reg3 = Representation::<Q>::regular(&c3);
        let r = reg3.restrict(&f).unwrap();
        assert_eq!(r.action(0, 1), reg3.action(0, 1));
        assert_eq!(r.action(0, 4), reg3.action(0, 1));
    }

    #[test]
    fn duals() {
        let x = bc(3);
        let unit = Representation::<Q>::unit(&x);
        assert_eq!(unit.dual(), unit);
        let reg = Representation::<Q>::regular(&x);
        assert_eq!(reg.dual().dual(), reg);
        // invariants of V ⊗ V^d for the regular representation of C_3
        let t = reg.tensor(&reg.dual()).unwrap();
        assert_eq!(t.invariants(0).cols(), 3);
    }

    #[test]
    fn external_tensor_of_regulars() {
        let a = Representation::<Q>::regular(&bc(2));
        let b = Representation::<Q>::regular(&bc(3));
        let ab = a.external_tensor(&b);
        assert_eq!(ab.dims(), &[6]);
        // character of the regular representation: |G| at e, 0 elsewhere
        let chi = ab.character(0);
        assert_eq!(chi[0], Q::from_integer(6));
        assert!(chi[1..].iter().all(num_traits::Zero::is_zero));
        let unit = Representation::<Q>::unit(&bc(2)).external_tensor(&Representation::unit(&bc(3)));
        assert_eq!(unit, Representation::unit(ab.groupoid()));
    }

    #[test]
    fn dimension_scalars() {
        let reg = Representation::<Q>::regular(&bc(3));
        assert_eq!(dimension_scalar(&reg, 0), Q::from_integer(3));
        let reg2 = Representation::<Fp<2>>::regular(&bc(2));
        assert_eq!(dimension_scalar(&reg2, 0), Fp::new(0));
    }

    #[test]
    fn snake_identities() {
        let x = bc(2);
        let sign = Representation::<Q>::from_generators(x.clone(), vec![vec![Matrix::from_i64_rows(&[&[-1]])]]).unwrap();
        for v in [Representation::regular(&x), sign.clone(), sign.direct_sum(&Representation::regular(&x)).unwrap()] {
            let vd = v.dual();
            // (id_V ⊗ ev)(coev ⊗ id_V) = id_V, identifying unitors and
            // associators with identities
            let first = coevaluation(&v).tensor(&RepMap::identity(&v)).unwrap();
            let second = RepMap::identity(&v).tensor(&evaluation(&v)).unwrap();
            let snake = first.components()[0].clone();
            let snake = second.components()[0].matmul(&snake).unwrap();
            assert!(snake.is_identity());
            // (ev ⊗ id_{V^d})(id_{V^d} ⊗ coev) = id_{V^d}
            let first = RepMap::identity(&vd).tensor(&coevaluation(&v)).unwrap();
            let second = evaluation(&v).tensor(&RepMap::identity(&vd)).unwrap();
            let snake = second.components()[0].matmul(&first.components()[0]).unwrap();
            assert!(snake.is_identity());
        }
    }

    #[test]
    fn rep_map_validation() {
        let x = bc(2);
        let reg = Representation::<Q>::regular(&x);
        assert!(RepMap::new(reg.clone(), reg.clone(), vec![Matrix::identity(2)]).is_ok());
        let triv = Representation::<Q>::trivial(&x, 2);
        let swap = Matrix::permutation(&[1, 0]);
        assert!(RepMap::new(triv.clone(), triv, vec![swap]).is_ok());
        let bad = Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            RepMap::new(reg.clone(), reg, vec![bad]),
            Err(Error::NotNatural {
                object: "*".into(),
                element: 1
            })
        );
    }

    #[test]
    fn intertwiners_of_regular() {
        let x = Arc::new(Groupoid::one_object(FiniteGroup::symmetric3()));
        let reg = Representation::<Q>::regular(&x);
        // End(k[G]) ≅ k[G] as a vector space
        let basis = intertwiner_basis(&reg, &reg).unwrap();
        assert_eq!(basis.len(), 6);
        for m in &basis {
            m.validate().unwrap();
        }
    }

    #[test]
    fn non_representation_is_rejected() {
        let x = bc(3);
        let bad = vec![vec![
            Matrix::<Q>::identity(1),
            Matrix::from_i64_rows(&[&[-1]]),
            Matrix::from_i64_rows(&[&[-1]]),
        ]];
        assert!(matches!(
            Representation::new(x, bad),
            Err(Error::NotARepresentation(_))
        ));
    }
}
