//! Left and right Kan extensions along groupoid maps.
//!
//! Over `y`, the left extension `f_!V` is `⊕_{x ↦ y} k[A_y] ⊗_{k[A_x]} V(x)`.
//! Writing `A_y = ⊔_j r_j f(A_x)`, that summand is `⊕_j r_j ⊗ V(x)_{K_x}`,
//! so the basis is indexed by (source object, coset, coinvariant basis
//! vector). The right extension uses the same indexing with invariants
//! `V(x)^{K_x}`: the coordinate of an equivariant `φ: k[A_y] -> V(x)` at
//! coset `j` is `φ(r_j⁻¹)`.

mod cache;
mod mate;
mod projection;

pub use cache::{kan_cache_active, with_kan_cache};
pub use mate::{left_mate, right_mate, transformation_mate, Orientation, SquareWitness};
pub use projection::{mu_left, mu_right, proj_lambda, proj_rho, right_kan_via_duals};

use crate::error::{Error, Result};
use crate::groupoid::GroupoidMap;
use crate::matrix::{quotient_basis, Matrix};
use crate::pullback::{CosetTable, RepChoice};
use crate::rep::{RepMap, Representation};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Coinvariants (left) or invariants (right) of `K_x` on `V(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced<S: Scalar> {
    /// `V(x) -> V(x)_{K_x}` or a left inverse of the inclusion of invariants.
    pub to_reduced: Matrix<S>,
    /// A section of the projection, or the inclusion `V(x)^{K_x} -> V(x)`.
    pub from_reduced: Matrix<S>,
}

impl<S: Scalar> Reduced<S> {
    pub fn dim(&self) -> usize {
        self.to_reduced.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub source: usize,
    pub coset: usize,
    pub coset_rep: usize,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanPackage<S: Scalar> {
    side: Side,
    map: GroupoidMap,
    choice: RepChoice,
    input: Representation<S>,
    output: Representation<S>,
    cosets: Vec<CosetTable>,
    reduced: Vec<Reduced<S>>,
    blocks: Vec<Vec<Block>>,
    /// Offset of block `(x, j)` inside the output at `f(x)`.
    offsets: Vec<Vec<usize>>,
}

pub fn left_kan<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<KanPackage<S>> {
    KanPackage::new(Side::Left, f, v, RepChoice::Minimal)
}

pub fn right_kan<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<KanPackage<S>> {
    KanPackage::new(Side::Right, f, v, RepChoice::Minimal)
}

pub fn kan<S: Scalar>(side: Side, f: &GroupoidMap, v: &Representation<S>) -> Result<KanPackage<S>> {
    KanPackage::new(side, f, v, RepChoice::Minimal)
}

fn reduce<S: Scalar>(side: Side, f: &GroupoidMap, v: &Representation<S>, x: usize) -> Result<Reduced<S>> {
    let d = v.dim(x);
    let id = Matrix::identity(d);
    let relations: Vec<Matrix<S>> = f
        .kernel(x)
        .into_iter()
        .skip(1)
        .map(|k| v.action(x, k).sub(&id))
        .collect::<Result<_>>()?;
    Ok(match side {
        Side::Left => {
            let q = quotient_basis(d, &Matrix::hstack(d, &relations)?)?;
            Reduced {
                to_reduced: q.projection,
                from_reduced: q.section,
            }
        }
        Side::Right => {
            let inc = Matrix::vstack(d, &relations)?.kernel_basis();
            Reduced {
                to_reduced: inc.left_inverse()?,
                from_reduced: inc,
            }
        }
    })
}

impl<S: Scalar> KanPackage<S> {
    pub fn new(side: Side, f: &GroupoidMap, v: &Representation<S>, choice: RepChoice) -> Result<Self> {
        if let Some(hit) = cache::lookup(side, choice, f, v) {
            return Ok(hit);
        }
        let package = Self::build(side, f, v, choice)?;
        cache::store(&package);
        Ok(package)
    }

    fn build(side: Side, f: &GroupoidMap, v: &Representation<S>, choice: RepChoice) -> Result<Self> {
        if v.groupoid() != f.source() {
            return Err(Error::GroupoidMismatch(
                "representation is not on the source of the map".into(),
            ));
        }
        let (xs, ys) = (f.source(), f.target());
        let cosets: Vec<CosetTable> = (0..xs.len()).map(|x| CosetTable::new(f, x, choice)).collect();
        let reduced: Vec<Reduced<S>> = (0..xs.len()).map(|x| reduce(side, f, v, x)).collect::<Result<_>>()?;
        let mut blocks = vec![Vec::new(); ys.len()];
        let mut offsets = vec![Vec::new(); xs.len()];
        let mut dims = vec![0; ys.len()];
        for x in 0..xs.len() {
            let y = f.on_object(x);
            for (j, &r) in cosets[x].reps.iter().enumerate() {
                let dim = reduced[x].dim();
                blocks[y].push(Block {
                    source: x,
                    coset: j,
                    coset_rep: r,
                    offset: dims[y],
                    dim,
                });
                offsets[x].push(dims[y]);
                dims[y] += dim;
            }
        }
        let reduced_action: Vec<Vec<Matrix<S>>> = (0..xs.len())
            .map(|x| {
                let red = &reduced[x];
                xs.group(x)
                    .elements()
                    .map(|a| red.to_reduced.matmul(v.action(x, a))?.matmul(&red.from_reduced))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let mut action = Vec::with_capacity(ys.len());
        for y in 0..ys.len() {
            let ay = ys.group(y);
            let mut table = Vec::with_capacity(ay.order());
            for g in ay.elements() {
                let mut m = Matrix::zeros(dims[y], dims[y]);
                for b in &blocks[y] {
                    let x = b.source;
                    let (j2, a) = cosets[x].decompose(ay, ay.mul(g, b.coset_rep));
                    m.set_block(offsets[x][j2], b.offset, &reduced_action[x][a]);
                }
                table.push(m);
            }
            action.push(table);
        }
        let output = Representation::new_unchecked(ys.clone(), action);
        Ok(KanPackage {
            side,
            map: f.clone(),
            choice,
            input: v.clone(),
            output,
            cosets,
            reduced,
            blocks,
            offsets,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn map(&self) -> &GroupoidMap {
        &self.map
    }

    pub fn choice(&self) -> RepChoice {
        self.choice
    }

    pub fn input(&self) -> &Representation<S> {
        &self.input
    }

    pub fn output(&self) -> &Representation<S> {
        &self.output
    }

    pub fn cosets(&self, x: usize) -> &CosetTable {
        &self.cosets[x]
    }

    pub fn reduced(&self, x: usize) -> &Reduced<S> {
        &self.reduced[x]
    }

    pub fn blocks(&self, y: usize) -> &[Block] {
        &self.blocks[y]
    }

    pub fn block_offset(&self, x: usize, coset: usize) -> usize {
        self.offsets[x][coset]
    }

    fn require(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::BadArgument(format!("expected a {side:?} Kan extension")));
        }
        Ok(())
    }

    /// `η: V -> f*f_!V`, `v ↦ 1 ⊗ v`.
    pub fn unit_left(&self) -> Result<RepMap<S>> {
        self.require(Side::Left)?;
        let f = &self.map;
        let target = self.output.restrict(f)?;
        let comps = (0..f.source().len())
            .map(|x| {
                let y = f.on_object(x);
                let (je, a) = self.cosets[x].decompose(f.target().group(y), 0);
                let mut m = Matrix::zeros(self.output.dim(y), self.input.dim(x));
                let blk = self.reduced[x].to_reduced.matmul(self.input.action(x, a))?;
                m.set_block(self.offsets[x][je], 0, &blk);
                Ok(m)
            })
            .collect::<Result<_>>()?;
        RepMap::new_unchecked(self.input.clone(), target, comps)
    }

    /// `ε: f_!f*W -> W`, `g ⊗ w ↦ g·w`; the input must be `f*W`.
    pub fn counit_left(&self, w: &Representation<S>) -> Result<RepMap<S>> {
        self.require(Side::Left)?;
        self.check_restricted(w)?;
        let comps = (0..w.groupoid().len())
            .map(|y| {
                let mut m = Matrix::zeros(w.dim(y), self.output.dim(y));
                for b in &self.blocks[y] {
                    let blk = w.action(y, b.coset_rep).matmul(&self.reduced[b.source].from_reduced)?;
                    m.set_block(0, b.offset, &blk);
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        RepMap::new_unchecked(self.output.clone(), w.clone(), comps)
    }

    /// `η: W -> f_*f*W`, `w ↦ (g ↦ g·w)`; the input must be `f*W`.
    pub fn unit_right(&self, w: &Representation<S>) -> Result<RepMap<S>> {
        self.require(Side::Right)?;
        self.check_restricted(w)?;
        let ys = self.map.target();
        let comps = (0..ys.len())
            .map(|y| {
                let ay = ys.group(y);
                let mut m = Matrix::zeros(self.output.dim(y), w.dim(y));
                for b in &self.blocks[y] {
                    let blk = self.reduced[b.source]
                        .to_reduced
                        .matmul(w.action(y, ay.inv(b.coset_rep)))?;
                    m.set_block(b.offset, 0, &blk);
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        RepMap::new_unchecked(w.clone(), self.output.clone(), comps)
    }

    /// `ε: f*f_*V -> V`, `φ ↦ φ(1)`.
    pub fn counit_right(&self) -> Result<RepMap<S>> {
        self.require(Side::Right)?;
        let f = &self.map;
        let source = self.output.restrict(f)?;
        let comps = (0..f.source().len())
            .map(|x| {
                let y = f.on_object(x);
                let ax = f.source().group(x);
                let (je, a) = self.cosets[x].decompose(f.target().group(y), 0);
                let mut m = Matrix::zeros(self.input.dim(x), self.output.dim(y));
                let blk = self.input.action(x, ax.inv(a)).matmul(&self.reduced[x].from_reduced)?;
                m.set_block(0, self.offsets[x][je], &blk);
                Ok(m)
            })
            .collect::<Result<_>>()?;
        RepMap::new_unchecked(source, self.input.clone(), comps)
    }

    fn check_restricted(&self, w: &Representation<S>) -> Result<()> {
        if self.input != w.restrict(&self.map)? {
            return Err(Error::BadArgument(
                "package input is not the restriction of the given representation".into(),
            ));
        }
        Ok(())
    }

    /// Functoriality: `f_!m` or `f_*m` for `m: V -> V'`, where `self` is the
    /// extension of `V` and `other` that of `V'`.
    pub fn push(&self, other: &KanPackage<S>, m: &RepMap<S>) -> Result<RepMap<S>> {
        if self.side != other.side || self.map != other.map || self.choice != other.choice {
            return Err(Error::BadArgument("packages along different maps".into()));
        }
        if m.source() != &self.input || m.target() != &other.input {
            return Err(Error::NonComposable(
                "map does not run between the package inputs".into(),
            ));
        }
        let ys = self.map.target();
        let comps = (0..ys.len())
            .map(|y| {
                let mut out = Matrix::zeros(other.output.dim(y), self.output.dim(y));
                for b in &self.blocks[y] {
                    let x = b.source;
                    let blk = other.reduced[x]
                        .to_reduced
                        .matmul(m.component(x))?
                        .matmul(&self.reduced[x].from_reduced)?;
                    out.set_block(other.offsets[x][b.coset], b.offset, &blk);
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        RepMap::new_unchecked(self.output.clone(), other.output.clone(), comps)
    }
}

pub fn unit_left<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    left_kan(f, v)?.unit_left()
}

pub fn counit_left<S: Scalar>(f: &GroupoidMap, w: &Representation<S>) -> Result<RepMap<S>> {
    left_kan(f, &w.restrict(f)?)?.counit_left(w)
}

pub fn unit_right<S: Scalar>(f: &GroupoidMap, w: &Representation<S>) -> Result<RepMap<S>> {
    right_kan(f, &w.restrict(f)?)?.unit_right(w)
}

pub fn counit_right<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    right_kan(f, v)?.counit_right()
}

/// `f_!m` or `f_*m` between freshly computed extensions.
pub fn push_transformation<S: Scalar>(side: Side, f: &GroupoidMap, m: &RepMap<S>) -> Result<RepMap<S>> {
    kan(side, f, m.source())?.push(&kan(side, f, m.target())?, m)
}

/// `(gf)_!V -> g_!f_!V`, the adjunct of `f*(η^g) ∘ η^f`.
pub fn comp_left<S: Scalar>(f: &GroupoidMap, g: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let gf = f.then(g)?;
    let fv = left_kan(f, v)?;
    let gfv = left_kan(g, fv.output())?;
    let w = gfv.output();
    let unit = fv.unit_left()?.then(&gfv.unit_left()?.restrict(f)?)?;
    let unit = unit.retype(v, &w.restrict(&gf)?)?;
    let src = left_kan(&gf, v)?;
    let tgt = left_kan(&gf, &w.restrict(&gf)?)?;
    src.push(&tgt, &unit)?.then(&tgt.counit_left(w)?)
}

/// `g_*f_*V -> (gf)_*V`, the adjunct of `ε^f ∘ f*(ε^g)`.
pub fn comp_right<S: Scalar>(f: &GroupoidMap, g: &GroupoidMap, v: &Representation<S>) -> Result<RepMap<S>> {
    let gf = f.then(g)?;
    let fv = right_kan(f, v)?;
    let gfv = right_kan(g, fv.output())?;
    let w = gfv.output();
    let counit = gfv.counit_right()?.restrict(f)?.then(&fv.counit_right()?)?;
    let counit = counit.retype(&w.restrict(&gf)?, v)?;
    let src = right_kan(&gf, &w.restrict(&gf)?)?;
    let tgt = right_kan(&gf, v)?;
    src.unit_right(w)?.then(&src.push(&tgt, &counit)?)
}

/// The composition isomorphism in the direction `(gf)-extension -> g-extension ∘ f-extension`.
pub fn kan_composition_iso<S: Scalar>(
    side: Side,
    f: &GroupoidMap,
    g: &GroupoidMap,
    v: &Representation<S>,
) -> Result<RepMap<S>> {
    match side {
        Side::Left => comp_left(f, g, v),
        Side::Right => comp_right(f, g, v)?.inverse(),
    }
}
