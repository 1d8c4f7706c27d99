//! Exhaustive search for tile coverings.
//!
//! This is the brute-force oracle the constructive side is checked against.
//! The search walks the curve segment by segment and prunes a branch as
//! soon as it leaves a subtile before covering all of it, or re-enters a
//! subtile it already left.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::curves::{restrict, Curve, CurveError, DirectedSegment, TileCovering};
use crate::lattice::EisensteinInt;
use crate::tiling::{Ambient, TileRef, TilingError};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("node budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("{child:?} is not a child of {parent:?}")]
    NotAChild { child: TileRef, parent: TileRef },
    #[error("child {0:?} has no S1/S2/S3 labelling")]
    NoLabelling(TileRef),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Endpoint restrictions. For nonoriented searches `fixed_start` and
/// `fixed_end` only require the point to be an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoveringConstraint {
    pub fixed_start: Option<EisensteinInt>,
    pub fixed_end: Option<EisensteinInt>,
    pub forbidden_endpoint: Option<EisensteinInt>,
}

impl CoveringConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    fn accepts(&self, start: EisensteinInt, end: EisensteinInt, oriented: bool) -> bool {
        if let Some(f) = self.forbidden_endpoint {
            if start == f || end == f {
                return false;
            }
        }
        if oriented {
            self.fixed_start.map_or(true, |p| p == start) && self.fixed_end.map_or(true, |p| p == end)
        } else {
            let has = |p: EisensteinInt| p == start || p == end;
            match (self.fixed_start, self.fixed_end) {
                (Some(a), Some(b)) => (a == start && b == end) || (a == end && b == start),
                (Some(a), None) | (None, Some(a)) => has(a),
                (None, None) => true,
            }
        }
    }
}

struct Search<'a> {
    hex_index: HashMap<EisensteinInt, usize>,
    // chains[h][m] = id of the level-m subtile holding hexagon h, 1 ≤ m < level
    chains: Vec<Vec<usize>>,
    sizes: Vec<u32>,
    ends: [EisensteinInt; 3],
    constraint: &'a CoveringConstraint,
    budget: u64,
    nodes: u64,
    used: Vec<bool>,
    count: Vec<u32>,
    closed: Vec<bool>,
    visited: HashSet<EisensteinInt>,
    path: Vec<DirectedSegment>,
    found: Vec<Vec<DirectedSegment>>,
}

impl Search<'_> {
    fn run(&mut self, p: EisensteinInt) -> Result<(), EnumError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(EnumError::BudgetExceeded(self.budget));
        }
        if self.path.len() == self.used.len() {
            let start = self.path[0].start;
            if self.ends.contains(&p) && self.constraint.accepts(start, p, true) {
                self.found.push(self.path.clone());
            }
            return Ok(());
        }
        let last = self.path.last().copied();
        for d in 0..6u8 {
            if let Some(l) = last {
                if (d + 6 - l.dir) % 6 == 3 {
                    continue;
                }
            }
            let seg = DirectedSegment { start: p, dir: d };
            let Some(&h) = self.hex_index.get(&seg.hexagon()) else { continue };
            if self.used[h] {
                continue;
            }
            let q = seg.end();
            if self.visited.contains(&q) {
                continue;
            }
            let mut left = Vec::new();
            if let Some(l) = last {
                let ph = self.hex_index[&l.hexagon()];
                let mut ok = true;
                for m in 0..self.chains[h].len() {
                    let (a, b) = (self.chains[ph][m], self.chains[h][m]);
                    if a != b {
                        if self.closed[b] || self.count[a] != self.sizes[a] {
                            ok = false;
                            break;
                        }
                        left.push(a);
                    }
                }
                if !ok {
                    continue;
                }
            }
            for &a in &left {
                self.closed[a] = true;
            }
            for m in 0..self.chains[h].len() {
                self.count[self.chains[h][m]] += 1;
            }
            self.used[h] = true;
            self.visited.insert(q);
            self.path.push(seg);

            let r = self.run(q);

            self.path.pop();
            self.visited.remove(&q);
            self.used[h] = false;
            for m in 0..self.chains[h].len() {
                self.count[self.chains[h][m]] -= 1;
            }
            for &a in &left {
                self.closed[a] = false;
            }
            r?;
        }
        Ok(())
    }
}

/// Every covering of `t` satisfying `c`, sorted lexicographically by segments.
pub fn enumerate_coverings(
    amb: &Ambient,
    t: TileRef,
    oriented: bool,
    c: &CoveringConstraint,
    budget: u64,
) -> Result<Vec<TileCovering>, EnumError> {
    let t = amb.tile(t.center, t.level)?;
    let hexes = amb.tile_hexagons(t)?;
    let hex_index: HashMap<_, _> = hexes.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut sub_ids: HashMap<TileRef, usize> = HashMap::new();
    let mut sizes = Vec::new();
    let mut chains = Vec::with_capacity(hexes.len());
    for &h in &hexes {
        let chain = amb.ancestor_chain(h, t.level)?;
        let ids = (1..t.level)
            .map(|m| {
                *sub_ids.entry(chain[m]).or_insert_with(|| {
                    sizes.push(7u32.pow(m as u32));
                    sizes.len() - 1
                })
            })
            .collect();
        chains.push(ids);
    }
    let ends = amb.w_vertices(t);
    let search_constraint = if oriented {
        *c
    } else {
        CoveringConstraint { forbidden_endpoint: c.forbidden_endpoint, ..Default::default() }
    };
    let n_sub = sizes.len();
    let mut s = Search {
        hex_index,
        chains,
        sizes,
        ends,
        constraint: &search_constraint,
        budget,
        nodes: 0,
        used: vec![false; hexes.len()],
        count: vec![0; n_sub],
        closed: vec![false; n_sub],
        visited: HashSet::new(),
        path: Vec::new(),
        found: Vec::new(),
    };
    let mut starts = ends.to_vec();
    starts.sort();
    for p in starts {
        if oriented && search_constraint.fixed_start.is_some_and(|f| f != p) {
            continue;
        }
        s.visited.insert(p);
        s.run(p)?;
        s.visited.remove(&p);
    }
    let mut out = BTreeSet::new();
    for segs in s.found {
        let curve = Curve::new(segs)?;
        if !c.accepts(curve.start(), curve.end(), oriented) {
            continue;
        }
        let cov = TileCovering::new(amb.clone(), t, curve, oriented)?;
        out.insert(cov.key());
    }
    out.into_iter()
        .map(|curve| TileCovering::new(amb.clone(), t, curve, oriented).map_err(EnumError::from))
        .collect()
}

/// Number of nonoriented coverings of `parent` whose restriction to the
/// child equals `child_cov`.
pub fn extension_count(child_cov: &TileCovering, parent: TileRef, budget: u64) -> Result<usize, EnumError> {
    let amb = &child_cov.ambient;
    let child = child_cov.tile;
    if parent.level != child.level + 1 || !amb.tile_within(child, parent) {
        return Err(EnumError::NotAChild { child, parent });
    }
    let want = TileCovering { oriented: false, ..child_cov.clone() }.key();
    let mut n = 0;
    for cov in enumerate_coverings(amb, parent, false, &CoveringConstraint::none(), budget)? {
        if restrict(&cov, child)?.key() == want {
            n += 1;
        }
    }
    Ok(n)
}

/// Translation classes of the restrictions of `cov` to its level-`target`
/// subtiles, each normalized to a subtile centered at 0.
pub fn copy_census(cov: &TileCovering, target: usize, oriented: bool) -> Result<BTreeSet<Curve>, EnumError> {
    let mut out = BTreeSet::new();
    for sub in cov.ambient.subtiles(cov.tile, target)? {
        let mut r = restrict(cov, sub)?;
        r.oriented = oriented;
        out.insert(r.key().translated(-sub.center));
    }
    Ok(out)
}

/// The `W`-vertices `(S₁, S₂, S₃)` of a non-central child, `Sₖ` being a
/// vertex of exactly `k` children of `parent`. `None` for the central child.
pub fn lemma5_labels(amb: &Ambient, parent: TileRef, child: TileRef) -> Result<Option<[EisensteinInt; 3]>, EnumError> {
    let children = amb.child_centers(parent)?;
    if !children.contains(&child) {
        return Err(EnumError::NotAChild { child, parent });
    }
    if child.center == parent.center {
        return Ok(None);
    }
    let mut slots: [Option<EisensteinInt>; 3] = [None; 3];
    for v in amb.w_vertices(child) {
        let k = children.iter().filter(|q| amb.is_vertex_of(**q, v)).count();
        if !(1..=3).contains(&k) || slots[k - 1].replace(v).is_some() {
            return Err(EnumError::NoLabelling(child));
        }
    }
    Ok(Some(slots.map(|s| s.unwrap())))
}
