//! Skeletal finite groupoids, the maps between them and natural
//! transformations of those maps.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidObject {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

/// A finite list of objects, each with its automorphism group. There are no
/// morphisms between distinct objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Groupoid {
    objects: Vec<GroupoidObject>,
}

impl Groupoid {
    pub fn new(objects: Vec<GroupoidObject>) -> Result<Self> {
        for (i, a) in objects.iter().enumerate() {
            if objects[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidGroupoid(format!(
                    "duplicate object name {:?}",
                    a.name
                )));
            }
        }
        Ok(Groupoid { objects })
    }

    pub fn from_groups(named: Vec<(String, FiniteGroup)>) -> Result<Self> {
        Self::new(
            named
                .into_iter()
                .map(|(name, g)| GroupoidObject {
                    name,
                    group: Arc::new(g),
                })
                .collect(),
        )
    }

    /// The one-object groupoid `BG`.
    pub fn one_object(group: FiniteGroup) -> Self {
        Groupoid {
            objects: vec![GroupoidObject {
                name: "*".into(),
                group: Arc::new(group),
            }],
        }
    }

    pub fn point() -> Self {
        Self::one_object(FiniteGroup::trivial())
    }

    pub fn empty() -> Self {
        Groupoid { objects: vec![] }
    }

    /// `n` objects with trivial groups.
    pub fn discrete(n: usize) -> Self {
        let trivial = Arc::new(FiniteGroup::trivial());
        Groupoid {
            objects: (0..n)
                .map(|i| GroupoidObject {
                    name: i.to_string(),
                    group: trivial.clone(),
                })
                .collect(),
        }
    }

    /// Disjoint union; colliding names get a positional prefix.
    pub fn disjoint_union(parts: &[&Groupoid]) -> Self {
        let mut objects = Vec::new();
        let total: usize = parts.iter().map(|p| p.len()).sum();
        for (k, p) in parts.iter().enumerate() {
            for o in &p.objects {
                objects.push(o.clone());
                let clash = parts.iter().enumerate().any(|(k2, q)| {
                    k2 != k && q.objects.iter().any(|o2| o2.name == o.name)
                });
                if clash {
                    objects.last_mut().unwrap().name = format!("{k}.{}", o.name);
                }
            }
        }
        debug_assert_eq!(objects.len(), total);
        Groupoid { objects }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[GroupoidObject] {
        &self.objects
    }

    pub fn group(&self, x: usize) -> &FiniteGroup {
        &self.objects[x].group
    }

    pub fn group_arc(&self, x: usize) -> &Arc<FiniteGroup> {
        &self.objects[x].group
    }

    pub fn name(&self, x: usize) -> &str {
        &self.objects[x].name
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// Baez-Dolan cardinality, the sum of `1/|A_x|`.
    pub fn cardinality(&self) -> Rational {
        self.objects.iter().fold(Rational::zero(), |acc, o| {
            acc + Rational::new(1, o.group.order() as i64)
        })
    }

    /// Objects `(i, j)` at index `i * |other| + j`, direct product groups.
    pub fn product(&self, other: &Groupoid) -> Groupoid {
        let mut objects = Vec::with_capacity(self.len() * other.len());
        for a in &self.objects {
            for b in &other.objects {
                objects.push(GroupoidObject {
                    name: format!("({},{})", a.name, b.name),
                    group: Arc::new(a.group.direct_product(&b.group)),
                });
            }
        }
        Groupoid { objects }
    }
}

pub fn cardinality(x: &Groupoid) -> Rational {
    x.cardinality()
}

/// A functor between skeletal groupoids: an object map and, for each source
/// object, a homomorphism `A_x -> A_{f(x)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidMap {
    source: Arc<Groupoid>,
    target: Arc<Groupoid>,
    object_map: Vec<usize>,
    hom_maps: Vec<Vec<usize>>,
}

impl GroupoidMap {
    pub fn new(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<usize>,
        hom_maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if object_map.len() != source.len() || hom_maps.len() != source.len() {
            return Err(Error::NotAFunctor(
                "object and hom tables must cover every source object".into(),
            ));
        }
        for x in 0..source.len() {
            let y = object_map[x];
            if y >= target.len() {
                return Err(Error::NotAFunctor(format!(
                    "object {} maps outside the target",
                    source.name(x)
                )));
            }
            if !source.group(x).is_homomorphism(target.group(y), &hom_maps[x]) {
                return Err(Error::NotAFunctor(format!(
                    "hom table at {} is not a homomorphism",
                    source.name(x)
                )));
            }
        }
        Ok(GroupoidMap {
            source,
            target,
            object_map,
            hom_maps,
        })
    }

    pub fn identity(x: &Arc<Groupoid>) -> Self {
        GroupoidMap {
            source: x.clone(),
            target: x.clone(),
            object_map: (0..x.len()).collect(),
            hom_maps: (0..x.len())
                .map(|i| x.group(i).elements().collect())
                .collect(),
        }
    }

    /// The map to the point.
    pub fn terminal(x: &Arc<Groupoid>) -> Self {
        GroupoidMap {
            source: x.clone(),
            target: Arc::new(Groupoid::point()),
            object_map: vec![0; x.len()],
            hom_maps: (0..x.len()).map(|i| vec![0; x.group(i).order()]).collect(),
        }
    }

    /// The map from the point picking out the object `y`.
    pub fn from_point(y: &Arc<Groupoid>, object: usize) -> Self {
        GroupoidMap {
            source: Arc::new(Groupoid::point()),
            target: y.clone(),
            object_map: vec![object],
            hom_maps: vec![vec![0]],
        }
    }

    /// The map `BH -> BG` given by a homomorphism table.
    pub fn from_homomorphism(h: FiniteGroup, g: FiniteGroup, table: Vec<usize>) -> Result<Self> {
        Self::new(
            Arc::new(Groupoid::one_object(h)),
            Arc::new(Groupoid::one_object(g)),
            vec![0],
            vec![table],
        )
    }

    pub fn source(&self) -> &Arc<Groupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Groupoid> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn hom_map(&self, x: usize) -> &[usize] {
        &self.hom_maps[x]
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn on_hom(&self, x: usize, a: usize) -> usize {
        self.hom_maps[x][a]
    }

    /// Source objects over `y`, in source order.
    pub fn fiber_objects(&self, y: usize) -> Vec<usize> {
        (0..self.source.len())
            .filter(|&x| self.object_map[x] == y)
            .collect()
    }

    /// `f(A_x)` as a sorted list of elements of `A_{f(x)}`.
    pub fn image(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.target.group(self.object_map[x]).order()];
        for &v in &self.hom_maps[x] {
            seen[v] = true;
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    /// `K_x`, the kernel of `A_x -> A_{f(x)}`, sorted.
    pub fn kernel(&self, x: usize) -> Vec<usize> {
        (0..self.hom_maps[x].len())
            .filter(|&a| self.hom_maps[x][a] == 0)
            .collect()
    }

    /// For each element of `A_{f(x)}`, its minimal-index preimage in `A_x`.
    pub fn preimage_section(&self, x: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; self.target.group(self.object_map[x]).order()];
        for (a, &v) in self.hom_maps[x].iter().enumerate() {
            if out[v].is_none() {
                out[v] = Some(a);
            }
        }
        out
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupoidMap) -> Result<GroupoidMap> {
        if self.target != next.source {
            return Err(Error::NonComposable(
                "target of the first map is not the source of the second".into(),
            ));
        }
        Ok(GroupoidMap {
            source: self.source.clone(),
            target: next.target.clone(),
            object_map: self
                .object_map
                .iter()
                .map(|&y| next.object_map[y])
                .collect(),
            hom_maps: (0..self.source.len())
                .map(|x| {
                    let y = self.object_map[x];
                    self.hom_maps[x].iter().map(|&b| next.hom_maps[y][b]).collect()
                })
                .collect(),
        })
    }

    /// `f × g` on product groupoids.
    pub fn product(&self, other: &GroupoidMap) -> GroupoidMap {
        let source = Arc::new(self.source.product(&other.source));
        let target = Arc::new(self.target.product(&other.target));
        let mut object_map = Vec::new();
        let mut hom_maps = Vec::new();
        let nt = other.target.len();
        for x in 0..self.source.len() {
            for u in 0..other.source.len() {
                let y = self.object_map[x];
                let v = other.object_map[u];
                object_map.push(y * nt + v);
                let (na, nb) = (
                    self.source.group(x).order(),
                    other.source.group(u).order(),
                );
                let mb = other.target.group(v).order();
                let mut table = Vec::with_capacity(na * nb);
                for a in 0..na {
                    for b in 0..nb {
                        table.push(self.hom_maps[x][a] * mb + other.hom_maps[u][b]);
                    }
                }
                hom_maps.push(table);
            }
        }
        GroupoidMap {
            source,
            target,
            object_map,
            hom_maps,
        }
    }

    /// Whether every `A_x -> A_{f(x)}` is injective.
    pub fn is_faithful(&self) -> bool {
        (0..self.source.len()).all(|x| self.kernel(x).len() == 1)
    }
}

pub fn compose_maps(f: &GroupoidMap, g: &GroupoidMap) -> Result<GroupoidMap> {
    f.then(g)
}

/// Projections out of `X × Y`.
pub fn product_projections(x: &Arc<Groupoid>, y: &Arc<Groupoid>) -> (Arc<Groupoid>, GroupoidMap, GroupoidMap) {
    let prod = Arc::new(x.product(y));
    let mut om_x = Vec::new();
    let mut om_y = Vec::new();
    let mut hm_x = Vec::new();
    let mut hm_y = Vec::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            om_x.push(i);
            om_y.push(j);
            let m = y.group(j).order();
            let n = x.group(i).order() * m;
            hm_x.push((0..n).map(|k| k / m).collect());
            hm_y.push((0..n).map(|k| k % m).collect());
        }
    }
    let px = GroupoidMap {
        source: prod.clone(),
        target: x.clone(),
        object_map: om_x,
        hom_maps: hm_x,
    };
    let py = GroupoidMap {
        source: prod.clone(),
        target: y.clone(),
        object_map: om_y,
        hom_maps: hm_y,
    };
    (prod, px, py)
}

/// The diagonal `X -> X × X`.
pub fn diagonal(x: &Arc<Groupoid>) -> GroupoidMap {
    let n = x.len();
    GroupoidMap {
        source: x.clone(),
        target: Arc::new(x.product(x)),
        object_map: (0..n).map(|i| i * n + i).collect(),
        hom_maps: (0..n)
            .map(|i| {
                let m = x.group(i).order();
                (0..m).map(|a| a * m + a).collect()
            })
            .collect(),
    }
}

/// A natural transformation `φ: f ⇒ f'` between maps with the same object
/// map: `φ_x · f(a) = f'(a) · φ_x` in `A_{f(x)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTransf {
    source_map: GroupoidMap,
    target_map: GroupoidMap,
    components: Vec<usize>,
}

impl NatTransf {
    pub fn new(source_map: GroupoidMap, target_map: GroupoidMap, components: Vec<usize>) -> Result<Self> {
        if source_map.source != target_map.source || source_map.target != target_map.target {
            return Err(Error::NotANaturalTransformation(
                "maps have different source or target".into(),
            ));
        }
        if source_map.object_map != target_map.object_map {
            return Err(Error::NotANaturalTransformation(
                "object maps differ".into(),
            ));
        }
        if components.len() != source_map.source.len() {
            return Err(Error::NotANaturalTransformation(
                "one component per source object".into(),
            ));
        }
        let x_grpd = &source_map.source;
        for x in 0..x_grpd.len() {
            let ay = source_map.target.group(source_map.object_map[x]);
            let phi = components[x];
            if phi >= ay.order() {
                return Err(Error::NotANaturalTransformation(format!(
                    "component at {} out of range",
                    x_grpd.name(x)
                )));
            }
            for a in x_grpd.group(x).elements() {
                if ay.mul(phi, source_map.on_hom(x, a)) != ay.mul(target_map.on_hom(x, a), phi) {
                    return Err(Error::NotANaturalTransformation(format!(
                        "naturality fails at {} for element {a}",
                        x_grpd.name(x)
                    )));
                }
            }
        }
        Ok(NatTransf {
            source_map,
            target_map,
            components,
        })
    }

    pub fn identity(f: &GroupoidMap) -> Self {
        NatTransf {
            source_map: f.clone(),
            target_map: f.clone(),
            components: vec![0; f.source.len()],
        }
    }

    pub fn source_map(&self) -> &GroupoidMap {
        &self.source_map
    }

    pub fn target_map(&self) -> &GroupoidMap {
        &self.target_map
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn inverse(&self) -> NatTransf {
        let y = &self.source_map.target;
        NatTransf {
            source_map: self.target_map.clone(),
            target_map: self.source_map.clone(),
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(x, &c)| y.group(self.source_map.object_map[x]).inv(c))
                .collect(),
        }
    }

    /// Vertical composite `next ∘ self`.
    pub fn then(&self, next: &NatTransf) -> Result<NatTransf> {
        if self.target_map != next.source_map {
            return Err(Error::NonComposable("natural transformations".into()));
        }
        let y = &self.source_map.target;
        Ok(NatTransf {
            source_map: self.source_map.clone(),
            target_map: next.target_map.clone(),
            components: (0..self.components.len())
                .map(|x| {
                    y.group(self.source_map.object_map[x])
                        .mul(next.components[x], self.components[x])
                })
                .collect(),
        })
    }

    /// Whiskering `h ∘ φ` for `h` out of the common target.
    pub fn whisker_left(&self, h: &GroupoidMap) -> Result<NatTransf> {
        let f = self.source_map.then(h)?;
        let g = self.target_map.then(h)?;
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(x, &c)| h.on_hom(self.source_map.object_map[x], c))
            .collect();
        Ok(NatTransf {
            source_map: f,
            target_map: g,
            components,
        })
    }

    /// Whiskering `φ ∘ k` for `k` into the common source.
    pub fn whisker_right(&self, k: &GroupoidMap) -> Result<NatTransf> {
        let f = k.then(&self.source_map)?;
        let g = k.then(&self.target_map)?;
        let components = k.object_map.iter().map(|&x| self.components[x]).collect();
        Ok(NatTransf {
            source_map: f,
            target_map: g,
            components,
        })
    }
}
