//! JSON forms of groupoids, maps, representations, intertwiners, spans and
//! Kan packages. Objects are addressed by name; group elements by index.
//! Matrices use the exact-string format of [`Matrix`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::famquant::{FamObject, Span};
use crate::group::FiniteGroup;
use crate::groupoid::{Groupoid, GroupoidMap, GroupoidObject};
use crate::kan::{KanPackage, Side};
use crate::matrix::Matrix;
use crate::pullback::RepChoice;
use crate::rep::{RepMap, Representation};
use crate::scalar::{Field, Scalar};

#[derive(Serialize, Deserialize)]
struct ObjectWire {
    name: String,
    group: FiniteGroup,
}

#[derive(Serialize, Deserialize)]
struct GroupoidWire {
    objects: Vec<ObjectWire>,
}

impl Serialize for Groupoid {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        GroupoidWire {
            objects: self
                .objects()
                .iter()
                .map(|o| ObjectWire {
                    name: o.name.clone(),
                    group: (*o.group).clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Groupoid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = GroupoidWire::deserialize(d)?;
        Groupoid::new(
            w.objects
                .into_iter()
                .map(|o| GroupoidObject {
                    name: o.name,
                    group: Arc::new(o.group),
                })
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MapWire {
    source: Groupoid,
    target: Groupoid,
    on_objects: BTreeMap<String, String>,
    on_homs: BTreeMap<String, Vec<usize>>,
}

impl Serialize for GroupoidMap {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let (x, y) = (self.source(), self.target());
        MapWire {
            source: (**x).clone(),
            target: (**y).clone(),
            on_objects: (0..x.len())
                .map(|i| (x.name(i).to_owned(), y.name(self.on_object(i)).to_owned()))
                .collect(),
            on_homs: (0..x.len())
                .map(|i| (x.name(i).to_owned(), self.hom_map(i).to_vec()))
                .collect(),
        }
        .serialize(s)
    }
}

fn lookup<T: Clone>(table: &BTreeMap<String, T>, name: &str, what: &str) -> crate::error::Result<T> {
    table
        .get(name)
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{what} has no entry for object {name:?}")))
}

impl<'de> Deserialize<'de> for GroupoidMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = MapWire::deserialize(d)?;
        let build = || -> crate::error::Result<GroupoidMap> {
            let x = Arc::new(w.source);
            let y = Arc::new(w.target);
            let mut objects = Vec::with_capacity(x.len());
            let mut homs = Vec::with_capacity(x.len());
            for i in 0..x.len() {
                let name = x.name(i);
                objects.push(y.object_index(&lookup(&w.on_objects, name, "on_objects")?)?);
                homs.push(lookup(&w.on_homs, name, "on_homs")?);
            }
            GroupoidMap::new(x, y, objects, homs)
        };
        build().map_err(D::Error::custom)
    }
}

fn check_field<S: Scalar>(found: Field) -> crate::error::Result<()> {
    if found == S::field() || found == Field::Rationals {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            expected: S::field().to_string(),
            found: found.to_string(),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct RepWire<S: Scalar> {
    groupoid: Groupoid,
    field: Field,
    dims: BTreeMap<String, usize>,
    action: BTreeMap<String, BTreeMap<usize, Matrix<S>>>,
}

impl<S: Scalar> Serialize for Representation<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let x = self.groupoid();
        RepWire {
            groupoid: (**x).clone(),
            field: S::field(),
            dims: (0..x.len()).map(|i| (x.name(i).to_owned(), self.dim(i))).collect(),
            action: (0..x.len())
                .map(|i| {
                    let table = self.action_table(i).iter().cloned().enumerate().collect();
                    (x.name(i).to_owned(), table)
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Completes a partial action table by multiplying the given elements
/// until the whole group is reached.
fn close_action<S: Scalar>(
    group: &FiniteGroup,
    dim: usize,
    given: &BTreeMap<usize, Matrix<S>>,
) -> crate::error::Result<Vec<Matrix<S>>> {
    let mut table: Vec<Option<Matrix<S>>> = vec![None; group.order()];
    for (&a, m) in given {
        if a >= group.order() {
            return Err(Error::Parse(format!("element index {a} out of range")));
        }
        table[a] = Some(m.clone());
    }
    if table[0].is_none() {
        table[0] = Some(Matrix::identity(dim));
    }
    let mut frontier: Vec<usize> = (0..group.order()).filter(|&a| table[a].is_some()).collect();
    while let Some(h) = frontier.pop() {
        for (&s, ms) in given {
            let hs = group.mul(h, s);
            if table[hs].is_none() {
                table[hs] = Some(table[h].as_ref().unwrap().matmul(ms)?);
                frontier.push(hs);
            }
        }
    }
    table
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::NotARepresentation("given elements do not generate the group".into())))
        .collect()
}

impl<'de, S: Scalar> Deserialize<'de> for Representation<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RepWire::<S>::deserialize(d)?;
        let build = || -> crate::error::Result<Representation<S>> {
            check_field::<S>(w.field)?;
            let x = Arc::new(w.groupoid);
            let mut action = Vec::with_capacity(x.len());
            for i in 0..x.len() {
                let name = x.name(i);
                let dim = lookup(&w.dims, name, "dims")?;
                let given = w.action.get(name).cloned().unwrap_or_default();
                if given.values().any(|m| m.rows() != dim || m.cols() != dim) {
                    return Err(Error::DimensionMismatch(format!(
                        "action at {name:?} does not have dimension {dim}"
                    )));
                }
                action.push(close_action(x.group(i), dim, &given)?);
            }
            Representation::new(x, action)
        };
        build().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct RepMapWire<S: Scalar> {
    source: Representation<S>,
    target: Representation<S>,
    components: BTreeMap<String, Matrix<S>>,
}

fn components_by_name<S: Scalar>(m: &RepMap<S>) -> BTreeMap<String, Matrix<S>> {
    let x = m.source().groupoid();
    (0..x.len())
        .map(|i| (x.name(i).to_owned(), m.component(i).clone()))
        .collect()
}

fn components_in_order<S: Scalar>(
    x: &Groupoid,
    table: &BTreeMap<String, Matrix<S>>,
) -> crate::error::Result<Vec<Matrix<S>>> {
    (0..x.len())
        .map(|i| lookup(table, x.name(i), "components"))
        .collect()
}

impl<S: Scalar> Serialize for RepMap<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        RepMapWire {
            source: self.source().clone(),
            target: self.target().clone(),
            components: components_by_name(self),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for RepMap<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RepMapWire::<S>::deserialize(d)?;
        let build = || -> crate::error::Result<RepMap<S>> {
            let components = components_in_order(w.source.groupoid(), &w.components)?;
            RepMap::new(w.source, w.target, components)
        };
        build().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct FillingWire<S: Scalar> {
    components: BTreeMap<String, Matrix<S>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct SpanWire<S: Scalar> {
    source: Representation<S>,
    target: Representation<S>,
    left: GroupoidMap,
    right: GroupoidMap,
    filling: FillingWire<S>,
}

impl<S: Scalar> Serialize for Span<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        SpanWire {
            source: self.source().rep.clone(),
            target: self.target().rep.clone(),
            left: self.left_leg().clone(),
            right: self.right_leg().clone(),
            filling: FillingWire {
                components: components_by_name(self.filling()),
            },
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Span<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = SpanWire::<S>::deserialize(d)?;
        let build = || -> crate::error::Result<Span<S>> {
            // Share the end groupoids with the legs so that checks by value
            // and by pointer agree.
            let source = FamObject::new(w.source);
            let target = FamObject::new(w.target);
            let fv = source.rep.restrict(&w.left)?;
            let gw = target.rep.restrict(&w.right)?;
            let components = components_in_order(w.left.source(), &w.filling.components)?;
            let filling = RepMap::new(fv, gw, components)?;
            Span::new(source, target, w.left, w.right, filling)
        };
        build().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct BlockWire {
    source: String,
    coset: usize,
    coset_rep: usize,
    offset: usize,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct ReducedWire<S: Scalar> {
    coset_reps: Vec<usize>,
    to_reduced: Matrix<S>,
    from_reduced: Matrix<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct KanWire<S: Scalar> {
    side: Side,
    choice: RepChoice,
    map: GroupoidMap,
    input: Representation<S>,
    output: Representation<S>,
    blocks: BTreeMap<String, Vec<BlockWire>>,
    reduced: BTreeMap<String, ReducedWire<S>>,
}

impl<S: Scalar> Serialize for KanPackage<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let f = self.map();
        let (x, y) = (f.source(), f.target());
        KanWire {
            side: self.side(),
            choice: self.choice(),
            map: f.clone(),
            input: self.input().clone(),
            output: self.output().clone(),
            blocks: (0..y.len())
                .map(|j| {
                    let blocks = self
                        .blocks(j)
                        .iter()
                        .map(|b| BlockWire {
                            source: x.name(b.source).to_owned(),
                            coset: b.coset,
                            coset_rep: b.coset_rep,
                            offset: b.offset,
                            dim: b.dim,
                        })
                        .collect();
                    (y.name(j).to_owned(), blocks)
                })
                .collect(),
            reduced: (0..x.len())
                .map(|i| {
                    let r = self.reduced(i);
                    let w = ReducedWire {
                        coset_reps: self.cosets(i).reps.clone(),
                        to_reduced: r.to_reduced.clone(),
                        from_reduced: r.from_reduced.clone(),
                    };
                    (x.name(i).to_owned(), w)
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// The package is rebuilt from `side`, `choice`, `map` and `input`; the
/// stored output and bookkeeping must agree with the rebuild.
impl<'de, S: Scalar> Deserialize<'de> for KanPackage<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = KanWire::<S>::deserialize(d)?;
        let rebuilt = KanPackage::new(w.side, &w.map, &w.input, w.choice).map_err(D::Error::custom)?;
        let again = serde_json::to_value(&rebuilt).map_err(D::Error::custom)?;
        let given = serde_json::to_value(&w).map_err(D::Error::custom)?;
        if again != given {
            return Err(D::Error::custom("stored Kan package differs from its recomputation"));
        }
        Ok(rebuilt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::famquant::cardinality_span;
    use crate::kan::left_kan;
    use crate::scalar::{Fp, Rational};
    use serde::de::DeserializeOwned;
    use std::fmt::Debug;

    type Q = Rational;

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + Debug>(v: &T) {
        let s = serde_json::to_string(v).unwrap();
        let back: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, v);
    }

    fn bc(n: usize) -> Arc<Groupoid> {
        Arc::new(Groupoid::one_object(FiniteGroup::cyclic(n)))
    }

    #[test]
    fn values_round_trip() {
        let u = Arc::new(Groupoid::disjoint_union(&[&bc(2), &bc(3)]));
        round_trip(&*u);
        let f = GroupoidMap::terminal(&u);
        round_trip(&f);
        let v = Representation::<Q>::regular(&u);
        round_trip(&v);
        round_trip(&Representation::<Fp<3>>::regular(&u));
        round_trip(&RepMap::identity(&v));
        round_trip(&cardinality_span::<Q>(&bc(4)).unwrap());
        round_trip(&left_kan(&f, &v).unwrap());
    }

    #[test]
    fn map_format() {
        let f = GroupoidMap::terminal(&bc(2));
        let j = serde_json::to_value(&f).unwrap();
        assert_eq!(j["on_objects"], serde_json::json!({"*": "*"}));
        assert_eq!(j["on_homs"], serde_json::json!({"*": [0, 0]}));
    }

    #[test]
    fn partial_actions_are_completed() {
        let j = serde_json::json!({
            "groupoid": {"objects": [{"name": "x", "group": {"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}}]},
            "field": "Q",
            "dims": {"x": 2},
            "action": {"x": {"1": {"field": "Q", "rows": 2, "cols": 2, "entries": [["0","-1"],["1","-1"]]}}}
        });
        let v: Representation<Q> = serde_json::from_value(j.clone()).unwrap();
        assert_eq!(v.action(0, 2).to_rows()[0][1], Q::from_integer(1));
        let bad = serde_json::json!({
            "groupoid": j["groupoid"], "field": "Q", "dims": {"x": 1},
            "action": {"x": {"1": {"field": "Q", "rows": 1, "cols": 1, "entries": [["2"]]}}}
        });
        assert!(serde_json::from_value::<Representation<Q>>(bad).is_err());
    }

    #[test]
    fn tampered_packages_are_rejected() {
        let f = GroupoidMap::terminal(&bc(2));
        let p = left_kan(&f, &Representation::<Q>::regular(&bc(2))).unwrap();
        let mut j = serde_json::to_value(&p).unwrap();
        j["blocks"]["*"][0]["coset_rep"] = serde_json::json!(1);
        assert!(serde_json::from_value::<KanPackage<Q>>(j).is_err());
    }
}
