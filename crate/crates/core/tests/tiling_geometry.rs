use std::collections::{BTreeSet, HashSet};

use gosper_core::lattice::{Chirality, EisensteinInt, Word};
use gosper_core::tiling::{hex_neighbor_offsets, Ambient, TileRef};

fn origin(word: &Word) -> Ambient {
    Ambient::new(EisensteinInt::ZERO, word.clone()).unwrap()
}

fn words(max: usize) -> Vec<Word> {
    (1..=max).flat_map(Word::all_of_length).collect()
}

#[test]
fn children_partition_their_parent() {
    for word in words(4) {
        let amb = origin(&word);
        let t = amb.origin_tile(word.len()).unwrap();
        let hexes = amb.tile_hexagons(t).unwrap();
        assert_eq!(hexes.len(), 7usize.pow(word.len() as u32));
        let mut union = Vec::new();
        for c in amb.child_centers(t).unwrap() {
            union.extend(amb.tile_hexagons(c).unwrap());
        }
        let distinct: HashSet<_> = union.iter().copied().collect();
        assert_eq!(distinct.len(), union.len(), "children overlap for {word}");
        assert_eq!(distinct, hexes.into_iter().collect::<HashSet<_>>(), "{word}");
    }
}

#[test]
fn tiles_are_invariant_under_sixth_turns() {
    for word in words(3) {
        let amb = origin(&word);
        let t = amb.origin_tile(word.len()).unwrap();
        let hexes: BTreeSet<_> = amb.tile_hexagons(t).unwrap().into_iter().collect();
        let turned: BTreeSet<_> = hexes.iter().map(|h| h.rotate(1)).collect();
        assert_eq!(hexes, turned, "{word}");
    }
}

#[test]
fn tiles_away_from_the_origin_are_translates() {
    let word = Word::parse("+-+").unwrap();
    let amb = origin(&word);
    let t = amb.origin_tile(2).unwrap();
    let base: BTreeSet<_> = amb.tile_hexagons(t).unwrap().into_iter().collect();
    for n in amb.neighbors(t).unwrap() {
        let moved: BTreeSet<_> = amb.tile_hexagons(n).unwrap().into_iter().map(|h| h - n.center).collect();
        assert_eq!(moved, base);
    }
}

// The points where three tiles meet, found by tracing, are the formula vertices.
#[test]
fn vertex_formula_matches_three_tile_points() {
    for word in words(3) {
        let amb = origin(&word);
        for level in 0..=word.len() {
            let t = amb.origin_tile(level).unwrap();
            let traced: BTreeSet<_> = amb.tile_frontier(t).unwrap().vertices.into_iter().collect();
            let formula: BTreeSet<_> = amb.tile_vertices(t).into_iter().collect();
            assert_eq!(traced, formula, "{word} level {level}");
            for v in formula {
                assert!(amb.is_tiling_vertex(v, level).unwrap());
            }
        }
    }
}

fn undirected(e: (EisensteinInt, EisensteinInt)) -> (EisensteinInt, EisensteinInt) {
    if e.0 <= e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

// Twice the signed area of (a, b, c) in the plane, exact: Im(conj(b − a)(c − a))·(2/√3).
fn orient(a: EisensteinInt, b: EisensteinInt, c: EisensteinInt) -> i64 {
    let (u, v) = (b - a, c - a);
    u.a * v.b - u.b * v.a
}

#[test]
fn sides_refine_into_three_sides() {
    for word in words(3) {
        let amb = origin(&word);
        for level in 1..=word.len().min(3) {
            let t = amb.origin_tile(level).unwrap();
            let big = amb.tile_frontier(t).unwrap();
            let mut small_sides = Vec::new();
            for c in amb.child_centers(t).unwrap() {
                let f = amb.tile_frontier(c).unwrap();
                for (i, s) in f.sides.iter().enumerate() {
                    let set: BTreeSet<_> = s.iter().copied().map(undirected).collect();
                    small_sides.push((f.vertices[i], set));
                }
            }
            let chir = word.letters()[level - 1];
            for (i, side) in big.sides.iter().enumerate() {
                let set: BTreeSet<_> = side.iter().copied().map(undirected).collect();
                let parts: Vec<_> = small_sides.iter().filter(|(_, s)| s.is_subset(&set)).collect();
                assert_eq!(parts.len(), 3, "{word} level {level} side {i}");
                let union: BTreeSet<_> = parts.iter().flat_map(|(_, s)| s.iter().copied()).collect();
                assert_eq!(union, set);

                // the first part ends at the first level-(n−1) vertex met along the side
                let start = big.vertices[i];
                let end = big.vertices[(i + 1) % big.vertices.len()];
                let sub_vertices: BTreeSet<_> = small_sides.iter().map(|(v, _)| *v).collect();
                let first_corner = side.iter().map(|e| e.1).find(|p| sub_vertices.contains(p)).unwrap();
                let o = orient(start, end, first_corner);
                // traversal is counterclockwise, so the tile lies to the left
                match chir {
                    Chirality::Plus => assert!(o < 0, "{word} level {level} side {i}: {o}"),
                    Chirality::Minus => assert!(o > 0, "{word} level {level} side {i}: {o}"),
                }
            }
        }
    }
}

#[test]
fn tile_vertices_form_a_scaled_honeycomb() {
    for word in words(2) {
        let amb = origin(&word);
        for level in 0..=word.len() {
            let t = amb.origin_tile(level).unwrap();
            let g = amb.g(level);
            let f = amb.tile_frontier(t).unwrap();
            let across: BTreeSet<TileRef> = f.neighbors.into_iter().collect();
            let expected: BTreeSet<TileRef> = hex_neighbor_offsets()
                .iter()
                .map(|o| TileRef::new(o.checked_mul(g).unwrap(), level))
                .collect();
            assert_eq!(across, expected, "{word} level {level}");
            // each vertex is shared by this tile and two of its neighbors, as in a honeycomb
            for v in amb.tile_vertices(t) {
                let touching = expected.iter().filter(|n| amb.is_vertex_of(**n, v)).count();
                assert_eq!(touching, 2);
            }
        }
    }
}

#[test]
fn ancestors_nest() {
    let word = Word::parse("-+-+").unwrap();
    let amb = origin(&word);
    let top = amb.origin_tile(4).unwrap();
    for h in amb.tile_hexagons(top).unwrap().into_iter().step_by(37) {
        let chain = amb.ancestor_chain(h, 4).unwrap();
        assert_eq!(chain[0].center, h);
        for k in 0..4 {
            assert!(amb.tile_within(chain[k], chain[k + 1]));
        }
    }
}
