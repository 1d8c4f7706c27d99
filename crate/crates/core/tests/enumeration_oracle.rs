use std::collections::{BTreeSet, HashMap, HashSet};

use gosper_core::curves::{canonical_coverings, restrict, Curve, DirectedSegment};
use gosper_core::enumerate::{
    copy_census, enumerate_coverings, extension_count, CoveringConstraint, DEFAULT_NODE_BUDGET,
};
use gosper_core::lattice::{EisensteinInt, Word};
use gosper_core::tiling::{hexagon_corners, hexagons_around, Ambient, TileRef};
use gosper_core::verify::lemma5_check;

fn origin(word: &str) -> Ambient {
    Ambient::new(EisensteinInt::ZERO, Word::parse(word).unwrap()).unwrap()
}

// Plain depth-first search over W-paths with one segment per hexagon of the
// tile. Runs in level-1 subtiles are required to be consecutive, which is
// the whole covering condition up to level 2.
struct Oracle {
    hexes: HashMap<EisensteinInt, Option<TileRef>>,
    ends: Vec<EisensteinInt>,
    target: usize,
    found: Vec<Vec<DirectedSegment>>,
}

impl Oracle {
    fn segment_hexagon(s: DirectedSegment) -> EisensteinInt {
        let mut hs = hexagons_around(s.start).unwrap().into_iter().filter(|h| hexagon_corners(*h).contains(&s.end()));
        let h = hs.next().unwrap();
        assert!(hs.next().is_none());
        h
    }

    fn dfs(
        &mut self,
        p: EisensteinInt,
        path: &mut Vec<DirectedSegment>,
        seen: &mut HashSet<EisensteinInt>,
        done: &mut HashSet<TileRef>,
        run: Option<(TileRef, usize)>,
    ) {
        if path.len() == self.target {
            if self.ends.contains(&p) {
                self.found.push(path.clone());
            }
            return;
        }
        for dir in 0..6 {
            let s = DirectedSegment::new(p, dir).unwrap();
            let h = Self::segment_hexagon(s);
            let Some(sub) = self.hexes.get(&h).copied() else { continue };
            if seen.contains(&h) || seen.contains(&s.end()) {
                continue;
            }
            let next = match (run, sub) {
                (_, None) => None,
                (Some((t, k)), Some(u)) if t == u => Some((t, k + 1)),
                (Some((_, k)), Some(u)) if k < 7 || done.contains(&u) => continue,
                (_, Some(u)) if done.contains(&u) => continue,
                (_, Some(u)) => Some((u, 1)),
            };
            let closed = match run {
                Some((t, _)) if next.map(|n| n.0) != Some(t) => {
                    done.insert(t);
                    Some(t)
                }
                _ => None,
            };
            seen.insert(h);
            seen.insert(s.end());
            path.push(s);
            self.dfs(s.end(), path, seen, done, next);
            path.pop();
            seen.remove(&s.end());
            seen.remove(&h);
            if let Some(t) = closed {
                done.remove(&t);
            }
        }
    }

    fn run(amb: &Ambient, t: TileRef) -> BTreeSet<Curve> {
        let hexes = amb
            .tile_hexagons(t)
            .unwrap()
            .into_iter()
            .map(|h| (h, (t.level >= 2).then(|| amb.ancestor_at(h, 1).unwrap())))
            .collect();
        let ends = amb.w_vertices(t).to_vec();
        let mut o = Oracle { hexes, ends: ends.clone(), target: 7usize.pow(t.level as u32), found: Vec::new() };
        for p in ends {
            let mut seen = HashSet::from([p]);
            o.dfs(p, &mut Vec::new(), &mut seen, &mut HashSet::new(), None);
        }
        o.found.into_iter().map(|s| Curve::new(s).unwrap()).collect()
    }
}

#[test]
fn enumerator_agrees_with_plain_search() {
    for word in ["+", "-", "++", "+-", "-+", "--"] {
        let amb = origin(word);
        for level in 0..=word.len() {
            let t = amb.origin_tile(level).unwrap();
            let got: BTreeSet<Curve> = enumerate_coverings(&amb, t, true, &CoveringConstraint::none(), DEFAULT_NODE_BUDGET)
                .unwrap()
                .into_iter()
                .map(|c| c.curve)
                .collect();
            assert_eq!(got, Oracle::run(&amb, t), "{word} level {level}");
            assert_eq!(got.len(), 6);
        }
    }
}

#[test]
fn oriented_coverings_have_distinct_endpoints() {
    for word in Word::all_of_length(2) {
        let amb = Ambient::new(EisensteinInt::ZERO, word.clone()).unwrap();
        let t = amb.origin_tile(2).unwrap();
        let covs = enumerate_coverings(&amb, t, true, &CoveringConstraint::none(), DEFAULT_NODE_BUDGET).unwrap();
        let pairs: BTreeSet<_> = covs.iter().map(|c| c.endpoints()).collect();
        assert_eq!(pairs.len(), covs.len());
        let un = enumerate_coverings(&amb, t, false, &CoveringConstraint::none(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(un.len(), 3);
    }
}

#[test]
fn constraints_select_by_endpoint() {
    let amb = origin("+-");
    let t = amb.origin_tile(2).unwrap();
    let w = amb.w_vertices(t);
    let c = CoveringConstraint { fixed_start: Some(w[0]), ..Default::default() };
    let covs = enumerate_coverings(&amb, t, true, &c, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(covs.len(), 2);
    assert!(covs.iter().all(|c| c.curve.start() == w[0]));
    let c = CoveringConstraint { forbidden_endpoint: Some(w[1]), ..Default::default() };
    let covs = enumerate_coverings(&amb, t, false, &c, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(covs.len(), 1);
}

#[test]
fn tiny_budget_is_reported() {
    let amb = origin("++");
    let t = amb.origin_tile(2).unwrap();
    assert!(enumerate_coverings(&amb, t, true, &CoveringConstraint::none(), 10).is_err());
}

// Every parent covering restricts to exactly one covering of each child.
#[test]
fn extension_counts_sum_to_parent_count() {
    for word in ["+", "++", "+-", "-+", "--"] {
        let amb = origin(word);
        for level in 1..=word.len() {
            let parent = amb.origin_tile(level).unwrap();
            let parents = enumerate_coverings(&amb, parent, false, &CoveringConstraint::none(), DEFAULT_NODE_BUDGET).unwrap();
            for child in amb.child_centers(parent).unwrap() {
                let covs = enumerate_coverings(&amb, child, false, &CoveringConstraint::none(), DEFAULT_NODE_BUDGET).unwrap();
                let total: usize = covs.iter().map(|c| extension_count(c, parent, DEFAULT_NODE_BUDGET).unwrap()).sum();
                assert_eq!(total, parents.len(), "{word} {level}");
                for p in &parents {
                    let r = restrict(p, child).unwrap();
                    assert!(covs.iter().any(|c| c.key() == r.key()));
                }
            }
        }
    }
}

#[test]
fn extension_table() {
    for word in Word::all_of_length(2) {
        for level in 1..=2 {
            let rows = lemma5_check(&word, level, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(rows.len(), 7);
            assert_eq!(rows.iter().filter(|r| r.s1_is_parent_vertex.is_none()).count(), 1);
            assert_eq!(rows.iter().filter(|r| r.s1_is_parent_vertex == Some(true)).count(), 3);
            for r in rows {
                assert!(r.ok(), "{r}");
            }
        }
    }
}

#[test]
fn copies_of_small_coverings() {
    for word in Word::all_of_length(2) {
        let amb = Ambient::new(EisensteinInt::ZERO, word.clone()).unwrap();
        for c in canonical_coverings(&amb, amb.origin_tile(1).unwrap(), false).unwrap() {
            assert_eq!(copy_census(&c, 0, false).unwrap().len(), 3);
        }
        for c in canonical_coverings(&amb, amb.origin_tile(2).unwrap(), false).unwrap() {
            assert_eq!(copy_census(&c, 1, false).unwrap().len(), 3);
        }
        for c in canonical_coverings(&amb, amb.origin_tile(2).unwrap(), true).unwrap() {
            assert_eq!(copy_census(&c, 0, true).unwrap().len(), 6);
        }
        // one level short, a single oriented covering misses one class
        for c in canonical_coverings(&amb, amb.origin_tile(1).unwrap(), true).unwrap() {
            assert_eq!(copy_census(&c, 0, true).unwrap().len(), 5);
        }
    }
}
