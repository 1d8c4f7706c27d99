use std::collections::BTreeSet;

use gosper_core::curves::{canonical_coverings, Curve};
use gosper_core::lattice::{EisensteinInt, Word};
use gosper_core::plane::{
    apply_orientation, enumerate_orientations, flip_curve, from_tile_covering, make_x, property_p_check,
    window_assemble, window_choice_count, Anchor, WindowCovering, XKind,
};
use gosper_core::tiling::{hex_neighbor_offsets, Ambient};
use proptest::prelude::*;

fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn windows(anchor: Anchor, w: &Word, depth: usize, la: usize) -> Vec<WindowCovering> {
    let x = make_x(anchor, w, depth + la).unwrap();
    (0..window_choice_count(&x, depth, la).unwrap()).map(|c| window_assemble(&x, depth, la, c).unwrap()).collect()
}

#[test]
fn constant_sequence_stays_put() {
    let x = make_x(Anchor::default_for(XKind::Constant), &word("+-+-"), 4).unwrap();
    assert!(x.centers.iter().all(|c| *c == EisensteinInt::ZERO));
}

#[test]
fn side_sequences_have_three_choices_per_step() {
    for w in Word::all_of_length(4) {
        let x = make_x(Anchor::default_for(XKind::SideAnchored), &w, 4).unwrap();
        assert_eq!(x.candidates, vec![3; 4], "{w}");
    }
}

#[test]
fn spiral_sequences_have_at_least_three_choices() {
    for w in Word::all_of_length(4) {
        let x = make_x(Anchor::default_for(XKind::Spiral), &w, 4).unwrap();
        assert!(x.candidates.iter().all(|n| *n >= 3), "{w} {:?}", x.candidates);
    }
}

#[test]
fn vertex_anchor_stays_a_vertex() {
    let y = EisensteinInt::ONE;
    for w in Word::all_of_length(4) {
        let x = make_x(Anchor::Vertex(y), &w, 4).unwrap();
        for k in 1..=4 {
            let (amb, t) = x.tile(k).unwrap();
            assert!(amb.is_vertex_of(t, y), "{w} level {k}");
        }
    }
}

// Successive centers coincide or are centers of adjacent tiles.
#[test]
fn successive_centers_are_adjacent() {
    for kind in [XKind::Constant, XKind::Spiral, XKind::SideAnchored, XKind::VertexAnchored] {
        for w in Word::all_of_length(3) {
            let x = make_x(Anchor::default_for(kind), &w, 3).unwrap();
            for k in 0..3 {
                let (amb, t) = x.tile(k).unwrap();
                let next = x.centers[k + 1];
                let near = next == t.center || amb.neighbors(t).unwrap().iter().any(|n| n.center == next);
                assert!(near, "{kind} {w} step {k}");
            }
        }
    }
}

#[test]
fn region_counts_match_anchor_kind() {
    let w = word("+-+-");
    for (kind, regions) in [(XKind::Constant, 1), (XKind::Spiral, 1), (XKind::SideAnchored, 2), (XKind::VertexAnchored, 3)] {
        for win in windows(Anchor::default_for(kind), &w, 1, 2) {
            assert_eq!(win.region_count(), regions, "{kind}");
            assert_eq!(win.hexagon_count(), 7 * regions);
            win.validate().unwrap();
        }
    }
}

#[test]
fn constant_window_of_depth_two() {
    let ws = windows(Anchor::default_for(XKind::Constant), &word("++++"), 2, 2);
    assert!(!ws.is_empty());
    for w in ws {
        assert_eq!(w.region_of.len(), 49);
        assert_eq!(w.curves.len(), 1);
        let segs = w.segment_map();
        assert_eq!(segs.len(), 49);
        assert!(w.region_of.keys().all(|h| segs.contains_key(h)));
    }
}

#[test]
fn side_window_shape() {
    for w in Word::all_of_length(3) {
        for win in windows(Anchor::default_for(XKind::SideAnchored), &w, 1, 2) {
            assert_eq!(win.curves.len(), 2, "{w}");
            for i in 0..2 {
                assert_eq!(win.regions_of_curve(i).len(), 1);
            }
        }
    }
}

#[test]
fn vertex_window_shape() {
    let y = EisensteinInt::ONE;
    for w in Word::all_of_length(3) {
        for win in windows(Anchor::Vertex(y), &w, 1, 2) {
            assert_eq!(win.region_count(), 3);
            assert_eq!(win.curves.len(), 2, "{w}");
            let mut spans: Vec<usize> = (0..2).map(|i| win.regions_of_curve(i).len()).collect();
            spans.sort();
            assert_eq!(spans, [1, 2]);
            let through: Vec<_> = win
                .curves
                .iter()
                .filter(|c| {
                    let p = c.segments.points();
                    p[1..p.len() - 1].contains(&y)
                })
                .collect();
            assert_eq!(through.len(), 1);
        }
    }
}

fn fragment_sets(anchor: Anchor, w: &Word, depth: usize, la: usize) -> BTreeSet<BTreeSet<Curve>> {
    windows(anchor, w, depth, la)
        .into_iter()
        .map(|win| win.curves.into_iter().map(|c| { let r = c.segments.reversed(); c.segments.min(r) }).collect())
        .collect()
}

#[test]
fn fragments_are_stable_under_more_lookahead() {
    for kind in [XKind::Constant, XKind::VertexAnchored] {
        for w in Word::all_of_length(4) {
            let a = Anchor::default_for(kind);
            assert_eq!(fragment_sets(a, &w, 1, 2), fragment_sets(a, &w, 1, 3), "{kind} {w}");
        }
    }
}

// More context can only remove fragments. For side and spiral anchors it
// does remove some, at any fixed lookahead, for words that turn at the top.
#[test]
fn more_lookahead_only_narrows() {
    let mut narrowed = BTreeSet::new();
    for kind in [XKind::Constant, XKind::Spiral, XKind::SideAnchored, XKind::VertexAnchored] {
        for w in Word::all_of_length(4) {
            let a = Anchor::default_for(kind);
            let (two, three) = (fragment_sets(a, &w, 1, 2), fragment_sets(a, &w, 1, 3));
            assert!(!three.is_empty() && three.is_subset(&two), "{kind} {w}");
            if three != two {
                narrowed.insert((kind.to_string(), w.to_string()));
            }
        }
    }
    let expected: BTreeSet<_> = [("side", "+--+"), ("side", "-+-+"), ("side", "--++"), ("spiral", "+--+"), ("spiral", "--++")]
        .into_iter()
        .map(|(k, w)| (k.to_string(), w.to_string()))
        .collect();
    assert_eq!(narrowed, expected);
}

#[test]
fn flip_is_an_involution() {
    for win in windows(Anchor::default_for(XKind::SideAnchored), &word("+-+"), 1, 2) {
        for i in 0..win.curves.len() {
            assert_eq!(flip_curve(&flip_curve(&win, i).unwrap(), i).unwrap(), win);
        }
        assert!(flip_curve(&win, win.curves.len()).is_err());
    }
}

// At depth 2 a side window admits exactly one pair of opposite
// orientations; reversing one curve of the other assignments repairs them.
#[test]
fn flipping_one_curve_repairs_side_windows() {
    for w in Word::all_of_length(4) {
        for win in windows(Anchor::default_for(XKind::SideAnchored), &w, 2, 2) {
            let passing = enumerate_orientations(&win);
            assert_eq!(passing.len(), 2, "{w}");
            let bad: Vec<bool> = passing[0].iter().enumerate().map(|(i, b)| if i == 0 { !b } else { *b }).collect();
            let broken = apply_orientation(&win, &bad);
            assert!(!property_p_check(&broken, true).is_empty());
            assert!(property_p_check(&flip_curve(&broken, 0).unwrap(), true).is_empty());
        }
    }
}

#[test]
fn single_curve_windows_have_two_orientations() {
    let amb = Ambient::new(EisensteinInt::ZERO, word("+-")).unwrap();
    let t = amb.origin_tile(2).unwrap();
    let c = canonical_coverings(&amb, t, false).unwrap().swap_remove(0);
    let win = from_tile_covering(&c).unwrap();
    let passing = enumerate_orientations(&win);
    assert_eq!(passing, vec![vec![true], vec![false]]);
    let oriented = apply_orientation(&win, &[true]);
    assert!(property_p_check(&flip_curve(&oriented, 0).unwrap(), false).is_empty());
}

#[test]
fn empty_window_has_one_orientation() {
    let mut win = windows(Anchor::default_for(XKind::Constant), &word("++"), 0, 1).swap_remove(0);
    win.curves.clear();
    assert_eq!(enumerate_orientations(&win), vec![Vec::<bool>::new()]);
}

#[test]
fn canonical_coverings_satisfy_p() {
    for w in (1..=4).flat_map(Word::all_of_length) {
        let amb = Ambient::new(EisensteinInt::ZERO, w.clone()).unwrap();
        for c in canonical_coverings(&amb, amb.origin_tile(w.len()).unwrap(), true).unwrap() {
            assert!(property_p_check(&from_tile_covering(&c).unwrap(), false).is_empty(), "{w}");
        }
    }
}

#[test]
fn core_excludes_the_margin() {
    let win = windows(Anchor::default_for(XKind::Constant), &word("+++"), 1, 2).swap_remove(0);
    let core = gosper_core::plane::core_hexagons(&win);
    assert_eq!(core.len(), 1);
    assert!(core.iter().all(|h| hex_neighbor_offsets().iter().all(|t| win.region_of.contains_key(&(*h + *t)))));
}

#[test]
fn malformed_json_is_rejected() {
    assert!(WindowCovering::from_json("{").is_err());
    let win = windows(Anchor::default_for(XKind::SideAnchored), &word("+-+"), 1, 2).swap_remove(0);
    let text = win.to_json().replace("\"dir\":0", "\"dir\":9");
    if text != win.to_json() {
        assert!(WindowCovering::from_json(&text).is_err());
    }
}

fn kind_strategy() -> impl Strategy<Value = XKind> {
    prop_oneof![Just(XKind::Constant), Just(XKind::Spiral), Just(XKind::SideAnchored), Just(XKind::VertexAnchored)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn json_round_trip_is_byte_exact(kind in kind_strategy(), bits in prop::collection::vec(prop::bool::ANY, 3), oriented in prop::bool::ANY) {
        let w = Word::parse(&bits.iter().map(|b| if *b { '+' } else { '-' }).collect::<String>()).unwrap();
        for mut win in windows(Anchor::default_for(kind), &w, 1, 2) {
            if oriented {
                win = apply_orientation(&win, &vec![true; win.curves.len()]);
            }
            let text = win.to_json();
            let back = WindowCovering::from_json(&text).unwrap();
            prop_assert_eq!(&back, &win);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
