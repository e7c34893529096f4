//! Beck–Chevalley for homotopy pullback squares, pasting of mates, and the
//! failure of both mates on a square that is not a pullback.

use std::sync::Arc;

use gquant_core::corpus::{reps_on, Corpus};
use gquant_core::kan::{comp_left, left_kan, left_mate, push_transformation, right_mate, Side, SquareWitness};
use gquant_core::{
    homotopy_pullback, FiniteGroup, Groupoid, GroupoidMap, NatTransf, Rational, RepMap, Representation, Scalar,
};

type Q = Rational;

fn cospans(corpus: &Corpus, stride: usize) -> Vec<(GroupoidMap, GroupoidMap)> {
    let mut out = Vec::new();
    for (i, g) in corpus.maps.iter().enumerate() {
        for h in corpus.maps[i..].iter().step_by(stride) {
            if g.map.target() == h.map.target() {
                out.push((g.map.clone(), h.map.clone()));
            }
        }
    }
    out
}

#[test]
fn pullback_squares_satisfy_beck_chevalley() {
    let corpus = Corpus::new(4, 0);
    for (g, h) in cospans(&corpus, 3) {
        let pb = homotopy_pullback(&g, &h).unwrap();
        let sq = SquareWitness::from_pullback(&pb, &g, &h).unwrap();
        for (name, w) in reps_on::<Q>(h.source(), 2, 0) {
            let l = left_mate(&sq, &w).unwrap();
            let r = right_mate(&sq, &w).unwrap();
            assert!(l.is_invertible(), "left mate on {name}");
            assert!(r.is_invertible(), "right mate on {name}");
        }
    }
}

/// The left mate of a vertical pasting, rebuilt from the two mates and the
/// composition isomorphisms.
fn pasted_left_mate<S: Scalar>(bottom: &SquareWitness, top: &SquareWitness, u: &Representation<S>) -> RepMap<S> {
    let qu = u.restrict(&top.q).unwrap();
    let into = comp_left(&top.p, &bottom.p, &qu).unwrap();
    let upper = push_transformation(Side::Left, &bottom.p, &left_mate(top, u).unwrap()).unwrap();
    let hu = left_kan(&top.h, u).unwrap();
    let lower = left_mate(bottom, hu.output()).unwrap();
    let out = comp_left(&top.h, &bottom.h, u).unwrap().inverse().unwrap().restrict(&bottom.g).unwrap();
    let upper = upper.retype(into.target(), upper.target()).unwrap();
    let lower = lower.retype(upper.target(), lower.target()).unwrap();
    into.then(&upper).unwrap().then(&lower).unwrap().then(&out).unwrap()
}

#[test]
fn mates_paste() {
    let corpus = Corpus::new(4, 0);
    let mut checked = 0;
    for (g, h) in cospans(&corpus, 4) {
        let bottom_pb = homotopy_pullback(&g, &h).unwrap();
        let bottom = SquareWitness::from_pullback(&bottom_pb, &g, &h).unwrap();
        let q = &bottom.q;
        for h2 in corpus.maps.iter().filter(|m| m.map.target() == q.target()).step_by(5) {
            let top_pb = homotopy_pullback(q, &h2.map).unwrap();
            let top = SquareWitness::from_pullback(&top_pb, q, &h2.map).unwrap();
            let pasted = bottom.paste_vertical(&top).unwrap();
            for (_, u) in reps_on::<Q>(h2.map.source(), 2, 0) {
                let direct = left_mate(&pasted, &u).unwrap();
                let rebuilt = pasted_left_mate(&bottom, &top, &u);
                assert_eq!(direct.components(), rebuilt.components());
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "only {checked} pastings");
}

#[test]
fn commuting_square_through_the_point_is_not_beck_chevalley() {
    for n in 2..=4 {
        let y = Arc::new(Groupoid::one_object(FiniteGroup::cyclic(n)));
        let s = GroupoidMap::from_point(&y, 0);
        let id = GroupoidMap::identity(s.source());
        let pi = NatTransf::identity(&s);
        let sq = SquareWitness::new(id.clone(), id, s.clone(), s.clone(), pi).unwrap();
        let w = Representation::<Q>::unit(s.source());
        assert!(!left_mate(&sq, &w).unwrap().is_invertible());
        assert!(!right_mate(&sq, &w).unwrap().is_invertible());
        // The honest pullback is the discrete groupoid on n points.
        let pb = homotopy_pullback(&s, &s).unwrap();
        assert_eq!(pb.apex.len(), n);
        let sq = SquareWitness::from_pullback(&pb, &s, &s).unwrap();
        assert!(left_mate(&sq, &w).unwrap().is_invertible());
    }
}

#[test]
fn identity_squares_have_identity_mates() {
    let corpus = Corpus::new(4, 0);
    for m in corpus.maps.iter().step_by(7) {
        let sq = SquareWitness::identity_square(&m.map);
        for (_, w) in reps_on::<Q>(m.map.target(), 2, 0) {
            assert!(left_mate(&sq, &w).unwrap().is_invertible());
            assert!(right_mate(&sq, &w).unwrap().is_invertible());
        }
    }
}
