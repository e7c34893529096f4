//! Coset bookkeeping, homotopy fibers and skeletal homotopy pullbacks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{Groupoid, GroupoidMap, GroupoidObject, NatTransf};

/// How a representative is picked from each (double) coset. `Minimal` is the
/// canonical choice; `Maximal` exists to test that nothing downstream
/// depends on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepChoice {
    #[default]
    Minimal,
    Maximal,
}

impl RepChoice {
    fn scan(self, n: usize) -> Box<dyn Iterator<Item = usize>> {
        match self {
            RepChoice::Minimal => Box::new(0..n),
            RepChoice::Maximal => Box::new((0..n).rev()),
        }
    }
}

/// Left cosets `r_j · f(A_x)` of the image of `A_x` in `A_{f(x)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub reps: Vec<usize>,
    /// Coset index of every element of `A_{f(x)}`.
    pub coset_of: Vec<usize>,
    /// Minimal preimage in `A_x` of each element of `f(A_x)`.
    pub preimage: Vec<Option<usize>>,
}

impl CosetTable {
    pub fn new(f: &GroupoidMap, x: usize, choice: RepChoice) -> Self {
        let ay = f.target().group(f.on_object(x));
        let image = f.image(x);
        let mut coset_of = vec![usize::MAX; ay.order()];
        let mut reps = Vec::new();
        for r in choice.scan(ay.order()) {
            if coset_of[r] != usize::MAX {
                continue;
            }
            for &h in &image {
                coset_of[ay.mul(r, h)] = reps.len();
            }
            reps.push(r);
        }
        CosetTable {
            reps,
            coset_of,
            preimage: f.preimage_section(x),
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Writes `g = r_j · f(a)` and returns `(j, a)`.
    pub fn decompose(&self, ay: &FiniteGroup, g: usize) -> (usize, usize) {
        let j = self.coset_of[g];
        let h = ay.mul(ay.inv(self.reps[j]), g);
        (j, self.preimage[h].expect("element lies in the image"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    pub x: usize,
    pub coset_rep: usize,
    /// `K_x`, re-indexed with the identity first.
    pub isotropy: FiniteGroup,
    /// Embedding of the isotropy group into `A_x`.
    pub inclusion: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub base_point: usize,
    pub components: Vec<FiberComponent>,
}

/// Components of the homotopy fiber of `f` over `y`: one per source object
/// over `y` and left coset of its image.
pub fn homotopy_fiber(f: &GroupoidMap, y: usize) -> Result<FiberData> {
    if y >= f.target().len() {
        return Err(Error::UnknownObject(format!("object index {y}")));
    }
    let mut components = Vec::new();
    for x in f.fiber_objects(y) {
        let kernel = f.kernel(x);
        let isotropy = f.source().group(x).subgroup(&kernel)?;
        for &r in &CosetTable::new(f, x, RepChoice::Minimal).reps {
            components.push(FiberComponent {
                x,
                coset_rep: r,
                isotropy: isotropy.clone(),
                inclusion: kernel.clone(),
            });
        }
    }
    Ok(FiberData {
        base_point: y,
        components,
    })
}

impl FiberData {
    /// The fiber as a groupoid.
    pub fn groupoid(&self, source: &Groupoid) -> Groupoid {
        Groupoid::new(
            self.components
                .iter()
                .map(|c| GroupoidObject {
                    name: format!("({},{})", source.name(c.x), c.coset_rep),
                    group: Arc::new(c.isotropy.clone()),
                })
                .collect(),
        )
        .expect("component names are distinct")
    }
}

/// A homotopy pullback `P` of `M -g-> Y <-h- N` with its projections and the
/// filling `π: g∘p ⇒ h∘q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub apex: Arc<Groupoid>,
    pub p: GroupoidMap,
    pub q: GroupoidMap,
    pub pi: NatTransf,
}

pub fn homotopy_pullback(g: &GroupoidMap, h: &GroupoidMap) -> Result<Pullback> {
    homotopy_pullback_with(g, h, RepChoice::Minimal)
}

/// Objects are triples `(m, n, φ₀)` with `φ₀` the chosen representative of a
/// double coset in `h(A_n) \ A_y / g(A_m)`; the group at that object is
/// `{(a, b) : h(b)·φ₀ = φ₀·g(a)}`, listed in lexicographic order.
pub fn homotopy_pullback_with(g: &GroupoidMap, h: &GroupoidMap, choice: RepChoice) -> Result<Pullback> {
    if g.target() != h.target() {
        return Err(Error::TargetMismatch);
    }
    let (mm, nn, yy) = (g.source(), h.source(), g.target());
    let mut objects = Vec::new();
    let mut p_obj = Vec::new();
    let mut q_obj = Vec::new();
    let mut p_hom = Vec::new();
    let mut q_hom = Vec::new();
    let mut pi = Vec::new();
    for m in 0..mm.len() {
        for n in 0..nn.len() {
            let y = g.on_object(m);
            if h.on_object(n) != y {
                continue;
            }
            let ay = yy.group(y);
            let (am, an) = (mm.group(m), nn.group(n));
            let gi = g.image(m);
            let hi = h.image(n);
            let mut seen = vec![false; ay.order()];
            for phi in choice.scan(ay.order()) {
                if seen[phi] {
                    continue;
                }
                for &u in &hi {
                    for &v in &gi {
                        seen[ay.mul(ay.mul(u, phi), v)] = true;
                    }
                }
                let mut pairs = Vec::new();
                for a in am.elements() {
                    for b in an.elements() {
                        if ay.mul(h.on_hom(n, b), phi) == ay.mul(phi, g.on_hom(m, a)) {
                            pairs.push(a * an.order() + b);
                        }
                    }
                }
                let group = am.direct_product(an).subgroup(&pairs)?;
                objects.push(GroupoidObject {
                    name: format!("({},{},{})", mm.name(m), nn.name(n), phi),
                    group: Arc::new(group),
                });
                p_obj.push(m);
                q_obj.push(n);
                p_hom.push(pairs.iter().map(|&k| k / an.order()).collect());
                q_hom.push(pairs.iter().map(|&k| k % an.order()).collect());
                pi.push(phi);
            }
        }
    }
    let apex = Arc::new(Groupoid::new(objects)?);
    let p = GroupoidMap::new(apex.clone(), mm.clone(), p_obj, p_hom)?;
    let q = GroupoidMap::new(apex.clone(), nn.clone(), q_obj, q_hom)?;
    let pi = NatTransf::new(p.then(g)?, q.then(h)?, pi)?;
    Ok(Pullback { apex, p, q, pi })
}

/// An isomorphism of skeletal groupoids, recorded as an object bijection and
/// group isomorphisms; used to compare pullbacks built in different ways.
pub fn find_isomorphism(a: &Groupoid, b: &Groupoid) -> Option<GroupoidMap> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut object_map = Vec::new();
    let mut hom_maps = Vec::new();
    for x in 0..a.len() {
        let ga = a.group(x);
        let found = (0..b.len()).find_map(|y| {
            if used[y] || b.group(y).order() != ga.order() {
                return None;
            }
            ga.homomorphisms(b.group(y))
                .into_iter()
                .find(|t| {
                    let mut s = t.clone();
                    s.sort_unstable();
                    s.dedup();
                    s.len() == ga.order()
                })
                .map(|t| (y, t))
        });
        let (y, t) = found?;
        used[y] = true;
        object_map.push(y);
        hom_maps.push(t);
    }
    GroupoidMap::new(Arc::new(a.clone()), Arc::new(b.clone()), object_map, hom_maps).ok()
}
