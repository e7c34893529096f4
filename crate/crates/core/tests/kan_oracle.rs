//! Kan extension dimensions against a brute-force (co)equalizer over the
//! action, on seeded random instances.

use gquant_core::corpus::{random_rep, Corpus};
use gquant_core::kan::{left_kan, right_kan};
use gquant_core::{Fp, GroupoidMap, Matrix, Rational, Representation, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `dim k[A_y] ⊗_{k[A_x]} V(x)`: the span of `g ⊗ v` modulo
/// `g·f(a) ⊗ v - g ⊗ a·v`.
fn coequalizer_dim<S: Scalar>(f: &GroupoidMap, v: &Representation<S>, x: usize) -> usize {
    let ay = f.target().group(f.on_object(x));
    let ax = f.source().group(x);
    let d = v.dim(x);
    let n = ay.order() * d;
    let mut relations = Vec::new();
    for g in ay.elements() {
        for a in ax.elements() {
            let ga = ay.mul(g, f.on_hom(x, a));
            for i in 0..d {
                let mut row = vec![S::zero(); n];
                row[ga * d + i] = row[ga * d + i].add_ref(&S::one());
                for k in 0..d {
                    let c = v.action(x, a).get(k, i);
                    row[g * d + k] = row[g * d + k].sub_ref(c);
                }
                relations.push(row);
            }
        }
    }
    n - Matrix::from_rows(relations).unwrap().rank()
}

/// `dim Hom_{A_x}(k[A_y], V(x))`: functions `φ: A_y -> V(x)` with
/// `φ(f(a)·g) = a·φ(g)`.
fn equalizer_dim<S: Scalar>(f: &GroupoidMap, v: &Representation<S>, x: usize) -> usize {
    let ay = f.target().group(f.on_object(x));
    let ax = f.source().group(x);
    let d = v.dim(x);
    let n = ay.order() * d;
    let mut equations = Vec::new();
    for g in ay.elements() {
        for a in ax.elements() {
            let ag = ay.mul(f.on_hom(x, a), g);
            for i in 0..d {
                let mut row = vec![S::zero(); n];
                row[ag * d + i] = row[ag * d + i].add_ref(&S::one());
                for k in 0..d {
                    let c = v.action(x, a).get(i, k);
                    row[g * d + k] = row[g * d + k].sub_ref(c);
                }
                equations.push(row);
            }
        }
    }
    n - Matrix::from_rows(equations).unwrap().rank()
}

fn check_instance<S: Scalar>(f: &GroupoidMap, v: &Representation<S>) {
    let (lk, rk) = (left_kan(f, v).unwrap(), right_kan(f, v).unwrap());
    lk.output().check().unwrap();
    rk.output().check().unwrap();
    let (left, right) = (lk.output().dims(), rk.output().dims());
    let ys = f.target();
    for y in 0..ys.len() {
        let fiber = f.fiber_objects(y);
        let lo: usize = fiber.iter().map(|&x| coequalizer_dim(f, v, x)).sum();
        let ro: usize = fiber.iter().map(|&x| equalizer_dim(f, v, x)).sum();
        assert_eq!(left[y], lo, "left extension at {}", ys.name(y));
        assert_eq!(right[y], ro, "right extension at {}", ys.name(y));
    }
}

fn random_instances<S: Scalar>(count: usize, seed: u64) {
    let corpus = Corpus::new(6, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let f = &corpus.maps[rng.gen_range(0..corpus.maps.len())].map;
        let d = rng.gen_range(1..=3);
        let v = random_rep::<S>(f.source(), d, &mut rng);
        check_instance(f, &v);
    }
}

#[test]
fn rational_extensions_match_oracle() {
    random_instances::<Rational>(200, 1);
}

#[test]
fn modular_extensions_match_oracle() {
    random_instances::<Fp<2>>(100, 2);
    random_instances::<Fp<3>>(100, 3);
}
