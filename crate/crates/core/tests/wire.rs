//! JSON round trips for every wire type over corpus instances.

use gquant_core::corpus::Corpus;
use gquant_core::famquant::Span;
use gquant_core::kan::{kan, KanPackage, Side};
use gquant_core::{Fp, GroupoidMap, Groupoid, Rational, RepMap, Representation, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{de::DeserializeOwned, Serialize};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) {
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value, "{text}");
}

fn everything<S: Scalar>() {
    let corpus = Corpus::new(4, 0);
    for g in &corpus.groupoids {
        round_trip::<Groupoid>(&g.groupoid);
    }
    for m in corpus.maps.iter().step_by(3) {
        round_trip::<GroupoidMap>(&m.map);
        for (_, v) in corpus.reps::<S>(m.map.source(), 3) {
            round_trip(&v);
            round_trip(&RepMap::identity(&v));
            for side in [Side::Left, Side::Right] {
                round_trip::<KanPackage<S>>(&kan(side, &m.map, &v).unwrap());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        round_trip::<Span<S>>(&corpus.random_span(None, 2, &mut rng));
    }
}

#[test]
fn rational_round_trips() {
    everything::<Rational>();
}

#[test]
fn modular_round_trips() {
    everything::<Fp<5>>();
}

#[test]
fn rejects_non_representations() {
    let text = r#"{"groupoid":{"objects":[{"name":"x","group":{"order":2,"table":[[0,1],[1,0]]}}]},
        "field":"Q","dims":{"x":1},"action":{"x":{"1":[["2"]]}}}"#;
    assert!(serde_json::from_str::<Representation<Rational>>(text).is_err());
}
