//! A corpus with its representations at a fixed scalar type, generated in
//! memory or loaded from a corpus directory.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use gquant_core::corpus::{Corpus, NamedGroupoid, NamedMap};
use gquant_core::{Groupoid, GroupoidMap, Rational, Representation, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::output::{from_value, read_value, with_schema, write_json, Failure};

#[derive(Debug, Clone)]
pub struct Instances<S: Scalar> {
    pub corpus: Corpus,
    pub max_dim: usize,
    /// Representations by groupoid index.
    pub reps: Vec<Vec<(String, Representation<S>)>>,
    /// Groupoid indices of each map's source and target.
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
}

impl<S: Scalar> Instances<S> {
    pub fn generate(max_order: usize, seed: u64, max_dim: usize) -> Self {
        Self::from_corpus(Corpus::new(max_order, seed), max_dim)
    }

    pub fn from_corpus(corpus: Corpus, max_dim: usize) -> Self {
        let reps = corpus.groupoids.iter().map(|g| corpus.reps::<S>(&g.groupoid, max_dim)).collect();
        let (sources, targets) = ends(&corpus.groupoids, &corpus.maps).expect("corpus maps join corpus groupoids");
        Instances {
            corpus,
            max_dim,
            reps,
            sources,
            targets,
        }
    }

    pub fn load(dir: &Path) -> Result<Self, Failure> {
        let manifest: Manifest = from_value(read_value(&dir.join("manifest.json"))?, &dir.join("manifest.json"))?;
        let groupoids: GroupoidsFile = read(dir, "groupoids.json")?;
        let maps: MapsFile = read(dir, "maps.json")?;
        let reps: RepsFile<S> = read(dir, "reps.json")?;
        let pairs: PairsFile = read(dir, "pairs.json")?;
        let groupoids: Vec<NamedGroupoid> = groupoids
            .groupoids
            .into_iter()
            .map(|g| NamedGroupoid {
                name: g.name,
                groupoid: Arc::new(g.groupoid),
            })
            .collect();
        let maps: Vec<NamedMap> = maps
            .maps
            .into_iter()
            .map(|m| NamedMap {
                name: m.name,
                map: m.map,
            })
            .collect();
        let (sources, targets) = ends(&groupoids, &maps)?;
        let mut by_groupoid = vec![Vec::new(); groupoids.len()];
        for r in reps.reps {
            let i = index_of(&groupoids, &r.groupoid)?;
            if r.rep.groupoid().as_ref() != groupoids[i].groupoid.as_ref() {
                return Err(Failure::input("Invalid", format!("representation {} is not on {}", r.name, r.groupoid)));
            }
            by_groupoid[i].push((r.name, r.rep));
        }
        if let Some(&(i, j)) = pairs.pairs.iter().find(|&&(i, j)| i >= maps.len() || j >= maps.len()) {
            return Err(Failure::input("Invalid", format!("pair ({i}, {j}) is out of range")));
        }
        Ok(Instances {
            corpus: Corpus {
                max_order: manifest.max_order,
                seed: manifest.seed,
                groupoids,
                maps,
                pairs: pairs.pairs,
            },
            max_dim: manifest.max_dim,
            reps: by_groupoid,
            sources,
            targets,
        })
    }

    pub fn map(&self, i: usize) -> &GroupoidMap {
        &self.corpus.maps[i].map
    }

    pub fn map_name(&self, i: usize) -> &str {
        &self.corpus.maps[i].name
    }

    pub fn source_reps(&self, i: usize) -> &[(String, Representation<S>)] {
        &self.reps[self.sources[i]]
    }

    pub fn target_reps(&self, i: usize) -> &[(String, Representation<S>)] {
        &self.reps[self.targets[i]]
    }

    pub fn description(&self) -> Value {
        json!({
            "max_order": self.corpus.max_order,
            "seed": self.corpus.seed,
            "max_dim": self.max_dim,
            "groupoids": self.corpus.groupoids.len(),
            "maps": self.corpus.maps.len(),
            "pairs": self.corpus.pairs.len(),
        })
    }
}

fn index_of(groupoids: &[NamedGroupoid], name: &str) -> Result<usize, Failure> {
    groupoids
        .iter()
        .position(|g| g.name == name)
        .ok_or_else(|| Failure::input("UnknownObject", format!("no groupoid named {name}")))
}

fn ends(groupoids: &[NamedGroupoid], maps: &[NamedMap]) -> Result<(Vec<usize>, Vec<usize>), Failure> {
    let find = |x: &Arc<Groupoid>, m: &NamedMap| {
        groupoids
            .iter()
            .position(|g| g.groupoid.as_ref() == x.as_ref())
            .ok_or_else(|| Failure::input("UnknownObject", format!("map {} leaves the corpus groupoids", m.name)))
    };
    let sources = maps.iter().map(|m| find(m.map.source(), m)).collect::<Result<_, _>>()?;
    let targets = maps.iter().map(|m| find(m.map.target(), m)).collect::<Result<_, _>>()?;
    Ok((sources, targets))
}

fn read<T: for<'de> Deserialize<'de>>(dir: &Path, file: &str) -> Result<T, Failure> {
    let path = dir.join(file);
    from_value(read_value(&path)?, &path)
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    max_order: usize,
    seed: u64,
    max_dim: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupoidEntry {
    name: String,
    groupoid: Groupoid,
}

#[derive(Serialize, Deserialize)]
struct GroupoidsFile {
    groupoids: Vec<GroupoidEntry>,
}

#[derive(Serialize, Deserialize)]
struct MapEntry {
    name: String,
    source: String,
    target: String,
    map: GroupoidMap,
}

#[derive(Serialize, Deserialize)]
struct MapsFile {
    maps: Vec<MapEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct RepEntry<S: Scalar> {
    groupoid: String,
    name: String,
    rep: Representation<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct RepsFile<S: Scalar> {
    reps: Vec<RepEntry<S>>,
}

#[derive(Serialize, Deserialize)]
struct PairsFile {
    pairs: Vec<(usize, usize)>,
}

fn write_file<T: Serialize>(dir: &Path, file: &str, body: &T) -> Result<(), Failure> {
    write_json(&with_schema(serde_json::to_value(body)?), Some(&dir.join(file)))
}

/// Writes the corpus directory; representations are stored over ℚ (their
/// entries are integers) and read back into any field. Returns the manifest.
pub fn write_corpus_dir(max_order: usize, seed: u64, max_dim: usize, dir: &Path) -> Result<Value, Failure> {
    let inst = Instances::<Rational>::generate(max_order, seed, max_dim);
    fs::create_dir_all(dir)?;
    let c = &inst.corpus;
    write_file(
        dir,
        "groupoids.json",
        &json!({ "groupoids": c.groupoids.iter().map(|g| json!({"name": g.name, "groupoid": g.groupoid.as_ref()})).collect::<Vec<_>>() }),
    )?;
    let maps: Vec<Value> = c
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            json!({
                "name": m.name,
                "source": c.groupoids[inst.sources[i]].name,
                "target": c.groupoids[inst.targets[i]].name,
                "map": m.map,
            })
        })
        .collect();
    write_file(dir, "maps.json", &json!({ "maps": maps }))?;
    let reps: Vec<Value> = c
        .groupoids
        .iter()
        .zip(&inst.reps)
        .flat_map(|(g, reps)| reps.iter().map(move |(n, r)| json!({"groupoid": g.name, "name": n, "rep": r})))
        .collect();
    let rep_count = reps.len();
    write_file(dir, "reps.json", &json!({ "reps": reps }))?;
    write_file(dir, "pairs.json", &json!({ "pairs": c.pairs }))?;
    let mut manifest = inst.description();
    manifest["reps"] = json!(rep_count);
    write_file(dir, "manifest.json", &manifest)?;
    Ok(manifest)
}
