//! Deterministic test instances: small groups, the groupoids and maps built
//! from them, and seeded representations with integer entries.
//!
//! Random representations are conjugates of sums of permutation and sign
//! representations by unimodular integer matrices, so the same instance
//! makes sense over every field.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::FiniteGroup;
use crate::groupoid::{Groupoid, GroupoidMap};
use crate::matrix::Matrix;
use crate::famquant::{FamObject, Span};
use crate::rep::{intertwiner_basis, RepMap, Representation};
use crate::scalar::Scalar;

pub const DEFAULT_SEED: u64 = 0;

/// Cyclic groups up to the bound, then a few products and non-abelian groups.
pub fn groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    let mut out: Vec<(String, FiniteGroup)> = (1..=max_order).map(|n| (format!("C{n}"), c(n))).collect();
    let extra = [
        ("C2xC2", c(2).direct_product(&c(2))),
        ("S3", FiniteGroup::symmetric3()),
        ("C2xC4", c(2).direct_product(&c(4))),
        ("C2xC2xC2", c(2).direct_product(&c(2)).direct_product(&c(2))),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
        ("C3xC3", c(3).direct_product(&c(3))),
        ("D5", FiniteGroup::dihedral(5)),
        ("C2xC6", c(2).direct_product(&c(6))),
        ("D6", FiniteGroup::dihedral(6)),
    ];
    out.extend(
        extra
            .into_iter()
            .filter(|(_, g)| g.order() <= max_order)
            .map(|(n, g)| (n.to_owned(), g)),
    );
    out
}

#[derive(Clone, Debug)]
pub struct NamedGroupoid {
    pub name: String,
    pub groupoid: Arc<Groupoid>,
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub map: GroupoidMap,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub max_order: usize,
    pub seed: u64,
    pub groupoids: Vec<NamedGroupoid>,
    pub maps: Vec<NamedMap>,
    /// Indices `(i, j)` into `maps` with `maps[i]` followed by `maps[j]`.
    pub pairs: Vec<(usize, usize)>,
}

/// Order bound for the factors of two-component groupoids.
const UNION_FACTOR_ORDER: usize = 3;

impl Corpus {
    /// Groupoids: the point, `BG` for every group, `BG ⊔ BH` for small
    /// factors and two discrete groupoids. Maps: every homomorphism between
    /// corpus groups, every map to the point, every basepoint `* -> BG`, and
    /// every map out of a two-component groupoid into a one-object one.
    pub fn new(max_order: usize, seed: u64) -> Self {
        let groups = groups(max_order);
        let mut groupoids = vec![NamedGroupoid {
            name: "pt".into(),
            groupoid: Arc::new(Groupoid::point()),
        }];
        let one: Vec<NamedGroupoid> = groups
            .iter()
            .map(|(n, g)| NamedGroupoid {
                name: format!("B{n}"),
                groupoid: Arc::new(Groupoid::one_object(g.clone())),
            })
            .collect();
        groupoids.extend(one.iter().cloned());
        let small: Vec<&NamedGroupoid> = one
            .iter()
            .filter(|b| b.groupoid.group(0).order() <= UNION_FACTOR_ORDER && b.groupoid.group(0).order() > 1)
            .collect();
        let mut unions = Vec::new();
        for (i, a) in small.iter().enumerate() {
            for b in &small[i..] {
                unions.push(NamedGroupoid {
                    name: format!("{}+{}", a.name, b.name),
                    groupoid: Arc::new(Groupoid::disjoint_union(&[&a.groupoid, &b.groupoid])),
                });
            }
        }
        groupoids.extend(unions.iter().cloned());
        for n in [2, 3] {
            groupoids.push(NamedGroupoid {
                name: format!("disc{n}"),
                groupoid: Arc::new(Groupoid::discrete(n)),
            });
        }

        let mut maps = Vec::new();
        for a in &one {
            for b in &one {
                let (g, h) = (a.groupoid.group(0), b.groupoid.group(0));
                for (k, table) in g.homomorphisms(h).into_iter().enumerate() {
                    let map = GroupoidMap::new(a.groupoid.clone(), b.groupoid.clone(), vec![0], vec![table])
                        .expect("homomorphisms are functors");
                    maps.push(NamedMap {
                        name: format!("{}->{}#{k}", a.name, b.name),
                        map,
                    });
                }
            }
        }
        for x in &groupoids {
            maps.push(NamedMap {
                name: format!("{}->pt", x.name),
                map: GroupoidMap::terminal(&x.groupoid),
            });
        }
        for b in &one {
            maps.push(NamedMap {
                name: format!("pt->{}", b.name),
                map: GroupoidMap::from_point(&b.groupoid, 0),
            });
        }
        for u in &unions {
            let x = &u.groupoid;
            for b in one.iter().filter(|b| b.groupoid.group(0).order() <= max_order.min(6)) {
                let h = b.groupoid.group(0);
                let left = x.group(0).homomorphisms(h);
                let right = x.group(1).homomorphisms(h);
                for (i, l) in left.iter().enumerate() {
                    for (j, r) in right.iter().enumerate() {
                        let map = GroupoidMap::new(x.clone(), b.groupoid.clone(), vec![0, 0], vec![l.clone(), r.clone()])
                            .expect("componentwise homomorphisms");
                        maps.push(NamedMap {
                            name: format!("{}->{}#{i}.{j}", u.name, b.name),
                            map,
                        });
                    }
                }
            }
        }

        let mut pairs = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            for (j, g) in maps.iter().enumerate() {
                if f.map.target() == g.map.source() {
                    pairs.push((i, j));
                }
            }
        }
        Corpus {
            max_order,
            seed,
            groupoids,
            maps,
            pairs,
        }
    }

    /// Canned and random representations on `x`, all of dimension at most
    /// `max_dim` at every object.
    pub fn reps<S: Scalar>(&self, x: &Arc<Groupoid>, max_dim: usize) -> Vec<(String, Representation<S>)> {
        reps_on(x, max_dim, self.seed)
    }
}

impl Corpus {
    /// A span between corpus groupoids with representations of dimension at
    /// most `max_dim` at the ends; `source` fixes the left end if given.
    pub fn random_span<S: Scalar>(
        &self,
        source: Option<&FamObject<S>>,
        max_dim: usize,
        rng: &mut impl Rng,
    ) -> Span<S> {
        let f = match source {
            Some(o) => {
                let into: Vec<&NamedMap> = self.maps.iter().filter(|m| m.map.target() == &o.groupoid).collect();
                &into.choose(rng).expect("every corpus groupoid has an identity-like map").map
            }
            None => &self.maps.choose(rng).expect("nonempty corpus").map,
        };
        let outs: Vec<&NamedMap> = self.maps.iter().filter(|m| m.map.source() == f.source()).collect();
        let g = &outs.choose(rng).expect("f itself").map;
        let pick = |x: &Arc<Groupoid>, rng: &mut dyn rand::RngCore| {
            // Half the time the unit, so that composites are often nonzero.
            let mut options = reps_on::<S>(x, max_dim, rng.next_u64());
            let k = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..options.len()) };
            options.swap_remove(k).1
        };
        let v = match source {
            Some(o) => o.rep.clone(),
            None => pick(f.target(), rng),
        };
        let w = pick(g.target(), rng);
        let fv = v.restrict(f).expect("f lands in the source");
        let gw = w.restrict(g).expect("g lands in the target");
        let mut filling = RepMap::zero(&fv, &gw).expect("same apex");
        for b in intertwiner_basis(&fv, &gw).expect("same apex") {
            let c = S::from_i64(rng.gen_range(-1..=2));
            filling = filling.add(&b.scale(&c)).expect("same shape");
        }
        Span::new(FamObject::new(v), FamObject::new(w), f.clone(), g.clone(), filling).expect("well-formed span")
    }

    /// Two composable random spans.
    pub fn random_span_pair<S: Scalar>(&self, max_dim: usize, rng: &mut impl Rng) -> (Span<S>, Span<S>) {
        let a = self.random_span(None, max_dim, rng);
        let b = self.random_span(Some(a.target()), max_dim, rng);
        (a, b)
    }
}

/// Seeds derived from the instance, so that each groupoid gets its own
/// stream independent of enumeration order.
fn instance_rng(seed: u64, x: &Groupoid, salt: u64) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.rotate_left(17) ^ salt;
    let mut eat = |v: u64| {
        h ^= v;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    for o in x.objects() {
        o.name.bytes().for_each(|b| eat(b as u64));
        o.group.table_rows().iter().flatten().for_each(|&v| eat(v as u64));
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// One-dimensional representations with values `±1`, from homomorphisms to `C_2`.
pub fn signs<S: Scalar>(g: &FiniteGroup) -> Vec<Vec<Matrix<S>>> {
    g.homomorphisms(&FiniteGroup::cyclic(2))
        .into_iter()
        .map(|h| {
            h.iter()
                .map(|&e| Matrix::scalar(S::from_i64(if e == 0 { 1 } else { -1 })))
                .collect()
        })
        .collect()
}

/// The permutation representation on the left cosets of `H`.
pub fn permutation_rep<S: Scalar>(g: &FiniteGroup, h: &[usize]) -> Vec<Matrix<S>> {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for r in g.elements() {
        if coset_of[r] == usize::MAX {
            for &k in h {
                coset_of[g.mul(r, k)] = reps.len();
            }
            reps.push(r);
        }
    }
    g.elements()
        .map(|a| {
            let perm: Vec<usize> = reps.iter().map(|&r| coset_of[g.mul(a, r)]).collect();
            Matrix::permutation(&perm)
        })
        .collect()
}

/// Building blocks of dimension at most `max_dim` for one group.
fn pieces<S: Scalar>(g: &FiniteGroup, max_dim: usize) -> Vec<Vec<Matrix<S>>> {
    let mut out = signs::<S>(g);
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for a in g.elements() {
        let h = g.generated_subgroup(&[a]);
        let index = g.order() / h.len();
        if index >= 2 && index <= max_dim && !seen.contains(&h) {
            out.push(permutation_rep(g, &h));
            seen.push(h);
        }
    }
    out
}

/// A unimodular integer matrix and its inverse, from random elementary
/// operations.
pub fn unimodular<S: Scalar>(n: usize, rng: &mut impl Rng) -> (Matrix<S>, Matrix<S>) {
    let mut p = Matrix::<S>::identity(n);
    let mut q = Matrix::<S>::identity(n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        let mut e = Matrix::<S>::identity(n);
        e.set(i, j, S::from_i64(c));
        let mut e_inv = Matrix::<S>::identity(n);
        e_inv.set(i, j, S::from_i64(-c));
        p = e.matmul(&p).unwrap();
        q = q.matmul(&e_inv).unwrap();
    }
    (p, q)
}

/// Unit, sign and permutation representations, the regular one when small
/// enough, and two seeded random ones.
pub fn reps_on<S: Scalar>(x: &Arc<Groupoid>, max_dim: usize, seed: u64) -> Vec<(String, Representation<S>)> {
    let mut out = vec![("unit".to_owned(), Representation::unit(x))];
    if x.len() == 1 {
        let g = x.group(0);
        for (k, s) in signs::<S>(g).into_iter().enumerate().skip(1) {
            out.push((format!("sign{k}"), Representation::new(x.clone(), vec![s]).expect("character")));
        }
        if g.order() <= max_dim && g.order() > 1 {
            out.push(("regular".into(), Representation::regular(x)));
        }
    }
    if max_dim >= 2 {
        for (k, d) in [2, max_dim].into_iter().enumerate() {
            let mut rng = instance_rng(seed, x, k as u64);
            out.push((format!("random{k}"), random_rep(x, d, &mut rng)));
        }
    }
    out
}

/// A conjugated sum of sign and permutation pieces of total dimension `d`
/// at each object.
pub fn random_rep<S: Scalar>(x: &Arc<Groupoid>, d: usize, rng: &mut impl Rng) -> Representation<S> {
    let action = (0..x.len())
        .map(|i| {
            let g = x.group(i);
            let pieces = pieces::<S>(g, d);
            let mut parts: Vec<Vec<Matrix<S>>> = Vec::new();
            let mut dim = 0;
            while dim < d {
                let fitting: Vec<&Vec<Matrix<S>>> = pieces.iter().filter(|p| p[0].rows() <= d - dim).collect();
                let p = (*fitting.choose(rng).expect("signs have dimension one")).clone();
                dim += p[0].rows();
                parts.push(p);
            }
            let (p, q) = unimodular::<S>(d, rng);
            g.elements()
                .map(|a| {
                    let blocks: Vec<Matrix<S>> = parts.iter().map(|part| part[a].clone()).collect();
                    p.matmul(&Matrix::direct_sum(&blocks)).unwrap().matmul(&q).unwrap()
                })
                .collect()
        })
        .collect();
    Representation::new(x.clone(), action).expect("conjugate of a representation")
}
