use gosper_core::curves::canonical_coverings;
use gosper_core::lattice::{EisensteinInt, Word};
use gosper_core::plane::{
    apply_orientation, enumerate_orientations, from_tile_covering, make_x, rotate_window, window_assemble, Anchor,
    WindowCovering,
};
use gosper_core::tiling::{Ambient, W_CLASS};
use gosper_core::verify::{config_census, covering_censuses, patch_extract, patch_search, prop9_check, VerifyError};

fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn constant_window(w: &str, depth: usize) -> WindowCovering {
    let x = make_x(Anchor::Constant(EisensteinInt::ZERO), &word(w), depth).unwrap();
    window_assemble(&x, depth, 0, 0).unwrap()
}

#[test]
fn unoriented_patches_recur_in_every_level_three_tile() {
    for w in ["++++", "+-+-", "-++-"] {
        let r = prop9_check(&constant_window(w, 4), 0, false).unwrap();
        assert_eq!(r.big_tiles.len(), 7);
        assert!(!r.classes.is_empty());
        assert!(r.ok(), "{w}\n{r}");
    }
}

#[test]
fn oriented_patches_recur_in_every_level_four_tile() {
    let win = constant_window("+-+-+", 5);
    let asg = enumerate_orientations(&win);
    assert_eq!(asg.len(), 2);
    for a in asg {
        let r = prop9_check(&apply_orientation(&win, &a), 0, true).unwrap();
        assert_eq!(r.big_level, 4);
        assert!(r.ok(), "{r}");
    }
}

#[test]
fn prop9_needs_depth_and_orientation() {
    let win = constant_window("+-+", 3);
    assert!(matches!(prop9_check(&win, 1, false), Err(VerifyError::InsufficientDepth { need: 4, have: 3 })));
    let deep = constant_window("+-+-", 4);
    assert!(matches!(prop9_check(&deep, 0, true), Err(VerifyError::NotOriented)));
}

#[test]
fn extracted_patches_are_found_again() {
    let win = constant_window("+-+-", 4);
    let big = win.cluster[0];
    let y = EisensteinInt::ONE;
    assert_eq!(y.color_class(), W_CLASS);
    let p = patch_extract(&win, y, 0).unwrap();
    let hits = patch_search(&win, &p, big).unwrap();
    assert!(hits.contains(&EisensteinInt::ZERO));
    // the patch of a level-1 vertex is defined one level up too
    let q = patch_extract(&win, win.ambient.tile_vertices(win.ambient.origin_tile(1).unwrap())[0], 1).unwrap();
    assert!(!patch_search(&win, &q, big).unwrap().is_empty());
}

fn totals(w: &str) -> Vec<(usize, usize)> {
    covering_censuses(&word(w)).unwrap().iter().map(|c| (c.in_w(), c.off_w())).collect()
}

// The orbit count does not depend on the word, the covering or the level.
#[test]
fn census_is_stable() {
    let reference = totals("++")[0];
    for w in ["++", "+-", "-+", "--", "+++", "+-+", "-+-", "---"] {
        assert!(totals(w).iter().all(|t| *t == reference), "{w} {:?}", totals(w));
    }
}

#[test]
fn census_ignores_reversal_and_rotation() {
    let amb = Ambient::new(EisensteinInt::ZERO, word("+-+")).unwrap();
    let t = amb.origin_tile(3).unwrap();
    for c in canonical_coverings(&amb, t, true).unwrap() {
        let fwd = apply_orientation(&from_tile_covering(&c).unwrap(), &[true]);
        let back = apply_orientation(&from_tile_covering(&c).unwrap(), &[false]);
        let census = config_census(&fwd).unwrap();
        assert_eq!(census, config_census(&back).unwrap());
        for k in [2, 4] {
            let turned = rotate_window(&fwd, EisensteinInt::ZERO, k).unwrap();
            assert_eq!(census.total(), config_census(&turned).unwrap().total());
        }
    }
}

#[test]
fn small_coverings_show_fewer_orbits() {
    let big = totals("+-")[0];
    for w in ["+", "-"] {
        for (a, b) in totals(w) {
            assert!(a + b < big.0 + big.1);
        }
    }
}

#[test]
fn census_rejects_unoriented_windows() {
    let win = constant_window("++", 2);
    assert!(matches!(config_census(&win), Err(VerifyError::NotOriented)));
}
