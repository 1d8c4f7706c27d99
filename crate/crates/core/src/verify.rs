//! Mechanical checks: translation-congruent patch matching, the strong local
//! isomorphism containment, the configuration census, and report builders
//! for the counting statements (tile coverings, extensions, copies, the
//! flowsnake recursion, restriction coherence, orientations).
//!
//! Every report implements `Display` as plain structured text and has an
//! `ok()` verdict. Ordering is fixed everywhere so reports are byte-stable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::curves::{canonical_coverings, restrict, turns_of, Curve, CurveError, DirectedSegment, TileCovering};
use crate::enumerate::{copy_census, enumerate_coverings, lemma5_labels, CoveringConstraint, EnumError};
use crate::lattice::{EisensteinInt, Word};
use crate::plane::{
    apply_orientation, enumerate_orientations, make_x, property_p_check, window_assemble, window_choice_count,
    Anchor, PlaneError, WindowCovering,
};
use crate::sequences::{build_seq, peano_gosper, SequenceError, TurnSeq};
use crate::tiling::{hexagon_corners, hexagons_around, Ambient, TileRef, TilingError, W_CLASS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} is not a common vertex of 3 level-{1} tiles")]
    NotAVertex(EisensteinInt, usize),
    #[error("tile {0:?} is not fully covered by the window")]
    Uncovered(TileRef),
    #[error("{0} is the end of a curve")]
    CurveEnd(EisensteinInt),
    #[error("no level-{need} tile in the window (deepest cluster tile has level {have})")]
    InsufficientDepth { need: usize, have: usize },
    #[error("window curves are not oriented")]
    NotOriented,
    #[error("window violates (P) in {0} places")]
    PViolated(usize),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

fn unoriented(s: DirectedSegment) -> DirectedSegment {
    if s.dir >= 3 {
        s.reversed()
    } else {
        s
    }
}

/// The covering restricted to the three level-`n` tiles around a vertex,
/// stored relative to that vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Patch {
    pub anchor: EisensteinInt,
    pub level: usize,
    /// Sorted; unoriented segments are stored with `dir < 3`.
    pub segments: Vec<DirectedSegment>,
    pub oriented: bool,
}

impl Patch {
    fn from_absolute(anchor: EisensteinInt, level: usize, segs: &[DirectedSegment], oriented: bool) -> Patch {
        let mut segments: Vec<_> = segs
            .iter()
            .map(|s| {
                let r = s.translated(-anchor);
                if oriented {
                    r
                } else {
                    unoriented(r)
                }
            })
            .collect();
        segments.sort();
        Patch { anchor, level, segments, oriented }
    }

    /// Whether the two patches agree up to translation.
    pub fn congruent(&self, other: &Patch) -> bool {
        self.level == other.level && self.oriented == other.oriented && self.segments == other.segments
    }

    /// The relative segments after rotating by `kπ/3` about the anchor and
    /// optionally reversing every segment.
    pub fn transformed(&self, k: i64, reverse: bool) -> Vec<DirectedSegment> {
        let mut out: Vec<_> = self
            .segments
            .iter()
            .map(|s| {
                let r = s.rotated_about(EisensteinInt::ZERO, k);
                let r = if reverse { r.reversed() } else { r };
                if self.oriented {
                    r
                } else {
                    unoriented(r)
                }
            })
            .collect();
        out.sort();
        out
    }
}

fn window_is_oriented(w: &WindowCovering) -> bool {
    !w.curves.is_empty() && w.curves.iter().all(|c| c.oriented)
}

// The three level-`n` tiles meeting at `y`.
fn tiles_at(amb: &Ambient, y: EisensteinInt, n: usize) -> Result<[TileRef; 3], VerifyError> {
    let hs = hexagons_around(y).map_err(|_| VerifyError::NotAVertex(y, n))?;
    let t = [amb.ancestor_at(hs[0], n)?, amb.ancestor_at(hs[1], n)?, amb.ancestor_at(hs[2], n)?];
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(VerifyError::NotAVertex(y, n));
    }
    Ok(t)
}

struct Indexed<'a> {
    w: &'a WindowCovering,
    segs: std::collections::HashMap<EisensteinInt, (DirectedSegment, usize)>,
    oriented: bool,
}

impl<'a> Indexed<'a> {
    fn new(w: &'a WindowCovering) -> Self {
        Indexed { w, segs: w.segment_map(), oriented: window_is_oriented(w) }
    }

    fn extract(&self, y: EisensteinInt, n: usize) -> Result<(Patch, [TileRef; 3]), VerifyError> {
        let tiles = tiles_at(&self.w.ambient, y, n)?;
        let mut segs = Vec::with_capacity(3 * 7usize.pow(n as u32));
        for t in tiles {
            for h in self.w.ambient.tile_hexagons(t)? {
                match self.segs.get(&h) {
                    Some((s, _)) => segs.push(*s),
                    None => return Err(VerifyError::Uncovered(t)),
                }
            }
        }
        if y.color_class() == W_CLASS {
            let touching = segs.iter().filter(|s| s.start == y || s.end() == y).count();
            if touching != 2 {
                return Err(VerifyError::CurveEnd(y));
            }
        }
        Ok((Patch::from_absolute(y, n, &segs, self.oriented), tiles))
    }

    // Every vertex of the window at which a level-`n` patch can be cut.
    fn candidates(&self, n: usize) -> Result<BTreeSet<EisensteinInt>, VerifyError> {
        let mut out = BTreeSet::new();
        for t in &self.w.cluster {
            if n == 0 {
                for h in self.w.ambient.tile_hexagons(*t)? {
                    out.extend(hexagon_corners(h));
                }
            } else if t.level >= n {
                for s in self.w.ambient.subtiles(*t, n)? {
                    out.extend(self.w.ambient.tile_vertices(s));
                }
            }
        }
        Ok(out)
    }

    // Patch classes with the anchors and tiles of all their occurrences.
    fn index(&self, n: usize) -> Result<BTreeMap<Vec<DirectedSegment>, Vec<(EisensteinInt, [TileRef; 3])>>, VerifyError> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for y in self.candidates(n)? {
            if let Ok((p, tiles)) = self.extract(y, n) {
                out.entry(p.segments).or_default().push((y, tiles));
            }
        }
        Ok(out)
    }
}

/// The level-`n` patch of `w` at the vertex `y`.
pub fn patch_extract(w: &WindowCovering, y: EisensteinInt, n: usize) -> Result<Patch, VerifyError> {
    Indexed::new(w).extract(y, n).map(|(p, _)| p)
}

/// Every translation carrying `p` onto a patch of `w` whose three tiles lie
/// in `within`, sorted.
pub fn patch_search(w: &WindowCovering, p: &Patch, within: TileRef) -> Result<Vec<EisensteinInt>, VerifyError> {
    let ix = Indexed::new(w);
    let hexes: BTreeSet<_> = w.ambient.tile_hexagons(within)?.into_iter().collect();
    let mut out = Vec::new();
    for y in ix.candidates(p.level)? {
        let Ok((q, tiles)) = ix.extract(y, p.level) else { continue };
        if !q.congruent(p) {
            continue;
        }
        let mut inside = true;
        for t in tiles {
            if !w.ambient.tile_hexagons(t)?.iter().all(|h| hexes.contains(h)) {
                inside = false;
                break;
            }
        }
        if inside {
            out.push(y - p.anchor);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop9Class {
    pub id: usize,
    /// Anchor of the first occurrence, used as the reference for translations.
    pub reference: EisensteinInt,
    pub occurrences: usize,
    /// One entry per big tile: the witness translation, if any.
    pub witnesses: Vec<(TileRef, Option<EisensteinInt>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop9Report {
    pub level: usize,
    pub big_level: usize,
    pub oriented: bool,
    pub big_tiles: Vec<TileRef>,
    pub classes: Vec<Prop9Class>,
    /// Largest, over classes and big tiles, of the squared distance from the
    /// big tile's center to the nearest occurrence inside it.
    pub worst_norm: i64,
}

impl Prop9Report {
    pub fn ok(&self) -> bool {
        self.classes.iter().all(|c| c.witnesses.iter().all(|(_, w)| w.is_some()))
    }
}

impl fmt::Display for Prop9Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "prop9 n={} oriented={} big_level={} big_tiles={} classes={}",
            self.level,
            self.oriented,
            self.big_level,
            self.big_tiles.len(),
            self.classes.len()
        )?;
        for c in &self.classes {
            write!(f, "class {} ref={} count={}", c.id, c.reference, c.occurrences)?;
            for (t, w) in &c.witnesses {
                match w {
                    Some(tr) => write!(f, " {}:{}", t.center, tr)?,
                    None => write!(f, " {}:missing", t.center)?,
                }
            }
            writeln!(f)?;
        }
        writeln!(f, "worst_norm={}", self.worst_norm)?;
        writeln!(f, "result={}", if self.ok() { "ok" } else { "FAIL" })
    }
}

/// Checks that every level-`n` patch class realized in `w` occurs inside
/// every level-`n+3` tile of `w` (level `n+4` when `oriented`).
pub fn prop9_check(w: &WindowCovering, n: usize, oriented: bool) -> Result<Prop9Report, VerifyError> {
    let big_level = if oriented { n + 4 } else { n + 3 };
    let have = w.cluster.iter().map(|t| t.level).max().unwrap_or(0);
    if have < big_level {
        return Err(VerifyError::InsufficientDepth { need: big_level, have });
    }
    let w = if oriented {
        if !window_is_oriented(w) {
            return Err(VerifyError::NotOriented);
        }
        let v = property_p_check(w, false);
        if !v.is_empty() {
            return Err(VerifyError::PViolated(v.len()));
        }
        w.clone()
    } else {
        w.with_orientation(false)
    };
    let mut big_tiles = Vec::new();
    for t in &w.cluster {
        if t.level >= big_level {
            big_tiles.extend(w.ambient.subtiles(*t, big_level)?);
        }
    }
    big_tiles.sort();

    let ix = Indexed::new(&w);
    let index = ix.index(n)?;
    let mut classes = Vec::with_capacity(index.len());
    let mut worst_norm = 0;
    for (id, occ) in index.values().enumerate() {
        let reference = occ[0].0;
        let mut witnesses = Vec::with_capacity(big_tiles.len());
        for big in &big_tiles {
            let inside = occ.iter().filter(|(_, tiles)| tiles.iter().all(|t| w.ambient.tile_within(*t, *big)));
            let nearest = inside.map(|(y, _)| ((*y - big.center).norm(), *y)).min();
            if let Some((d, _)) = nearest {
                worst_norm = worst_norm.max(d);
            }
            // the witness is the smallest matching anchor, not the nearest
            let first = occ
                .iter()
                .filter(|(_, tiles)| tiles.iter().all(|t| w.ambient.tile_within(*t, *big)))
                .map(|(y, _)| *y - reference)
                .min();
            witnesses.push((*big, first));
        }
        classes.push(Prop9Class { id, reference, occurrences: occ.len(), witnesses });
    }
    Ok(Prop9Report { level: n, big_level, oriented, big_tiles, classes, worst_norm })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Smallest member under rotation by `2kπ/3` and global reversal.
    pub representative: Vec<DirectedSegment>,
    pub anchor_in_w: bool,
    /// Distinct translation classes in the orbit that occur.
    pub members: usize,
    pub occurrences: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Census {
    pub orbits: Vec<Orbit>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.orbits.len()
    }

    pub fn in_w(&self) -> usize {
        self.orbits.iter().filter(|o| o.anchor_in_w).count()
    }

    pub fn off_w(&self) -> usize {
        self.total() - self.in_w()
    }

    /// The orbits of both censuses together.
    pub fn merged(&self, other: &Census) -> Census {
        let mut by_rep: BTreeMap<(bool, Vec<DirectedSegment>), Orbit> = BTreeMap::new();
        for o in self.orbits.iter().chain(&other.orbits) {
            by_rep
                .entry((o.anchor_in_w, o.representative.clone()))
                .and_modify(|e| {
                    e.members = e.members.max(o.members);
                    e.occurrences += o.occurrences;
                })
                .or_insert_with(|| o.clone());
        }
        Census { orbits: by_rep.into_values().collect() }
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "census orbits={} in_w={} off_w={}", self.total(), self.in_w(), self.off_w())?;
        for (i, o) in self.orbits.iter().enumerate() {
            write!(f, "orbit {i} {} members={} count={} :", if o.anchor_in_w { "W" } else { "V2" }, o.members, o.occurrences)?;
            for s in &o.representative {
                write!(f, " {}/{}", s.start, s.dir)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Level-0 oriented patch classes of `w` modulo rotation by `2kπ/3` about
/// the anchor and reversal of every curve.
pub fn config_census(w: &WindowCovering) -> Result<Census, VerifyError> {
    if !window_is_oriented(w) {
        return Err(VerifyError::NotOriented);
    }
    let v = property_p_check(w, false);
    if !v.is_empty() {
        return Err(VerifyError::PViolated(v.len()));
    }
    let ix = Indexed::new(w);
    let mut orbits: BTreeMap<(bool, Vec<DirectedSegment>), Orbit> = BTreeMap::new();
    for (segments, occ) in ix.index(0)? {
        let anchor = occ[0].0;
        let p = Patch { anchor, level: 0, segments, oriented: true };
        let rep = [0, 2, 4]
            .into_iter()
            .flat_map(|k| [p.transformed(k, false), p.transformed(k, true)])
            .min()
            .unwrap();
        let in_w = anchor.color_class() == W_CLASS;
        let o = orbits.entry((in_w, rep.clone())).or_insert(Orbit {
            representative: rep,
            anchor_in_w: in_w,
            members: 0,
            occurrences: 0,
        });
        o.members += 1;
        o.occurrences += occ.len();
    }
    Ok(Census { orbits: orbits.into_values().collect() })
}

// ---------------------------------------------------------------------------
// Counting statements.

fn origin_ambient(word: &Word) -> Result<Ambient, VerifyError> {
    Ok(Ambient::new(EisensteinInt::ZERO, word.clone())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop3Row {
    pub word: Word,
    pub oriented: usize,
    pub nonoriented: usize,
    pub endpoint_pairs_ok: bool,
    pub turns_ok: bool,
}

impl Prop3Row {
    pub fn ok(&self) -> bool {
        self.oriented == 6 && self.nonoriented == 3 && self.endpoint_pairs_ok && self.turns_ok
    }
}

impl fmt::Display for Prop3Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "prop3 word={} {} oriented / {} nonoriented endpoints={} turns={} result={}",
            self.word,
            self.oriented,
            self.nonoriented,
            self.endpoint_pairs_ok,
            self.turns_ok,
            if self.ok() { "ok" } else { "FAIL" }
        )
    }
}

/// Brute-force coverings of the origin tile of level `|word|`.
pub fn prop3_check(word: &Word, budget: u64) -> Result<Prop3Row, VerifyError> {
    let amb = origin_ambient(word)?;
    let t = amb.origin_tile(word.len())?;
    let none = CoveringConstraint::none();
    let oriented = enumerate_coverings(&amb, t, true, &none, budget)?;
    let nonoriented = enumerate_coverings(&amb, t, false, &none, budget)?;
    let w = amb.w_vertices(t);
    let mut want = BTreeSet::new();
    for a in w {
        for b in w {
            if a != b {
                want.insert((a, b));
            }
        }
    }
    let got: BTreeSet<_> = oriented.iter().map(|c| c.endpoints()).collect();
    let endpoint_pairs_ok = got == want && got.len() == oriented.len();
    let turns_ok = if word.is_empty() {
        oriented.iter().all(|c| c.turns().is_empty())
    } else {
        let s = build_seq(word)?;
        let sb = s.bar();
        oriented.iter().all(|c| {
            let t = c.turns();
            t == s || t == sb
        })
    };
    Ok(Prop3Row {
        word: word.clone(),
        oriented: oriented.len(),
        nonoriented: nonoriented.len(),
        endpoint_pairs_ok,
        turns_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TRecursionRow {
    pub n: usize,
    pub len: usize,
    pub ok: bool,
}

/// `T_{n+1} = (Tₙ,+1,T̄ₙ,+1,T̄ₙ,−1,Tₙ,−1,Tₙ,+1,Tₙ,−1,T̄ₙ)`.
pub fn t_recursion_from(t_n: &TurnSeq) -> TurnSeq {
    let b = t_n.bar();
    TurnSeq::join(&[t_n, &b, &b, t_n, t_n, t_n, &b], &[1, 1, -1, -1, 1, -1]).expect("connectors are in range")
}

/// Compares `build_seq("+"^{n+1})` with the recursion for each `n` in `1..=max_n`.
pub fn t_recursion_check(max_n: usize) -> Result<Vec<TRecursionRow>, VerifyError> {
    let mut out = Vec::with_capacity(max_n);
    let mut t = peano_gosper(1)?;
    for n in 1..=max_n {
        let next = peano_gosper(n + 1)?;
        let ok = t_recursion_from(&t) == next;
        out.push(TRecursionRow { n, len: next.len(), ok });
        t = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma5Row {
    pub word: Word,
    pub parent_level: usize,
    pub child: TileRef,
    /// `None` for the central child.
    pub s1_is_parent_vertex: Option<bool>,
    /// Extension counts of the coverings joining (S₁S₂, S₂S₃, S₁S₃), or of
    /// the child's 3 coverings in sorted order for the central child.
    pub counts: [usize; 3],
}

impl Lemma5Row {
    pub fn expected(&self) -> Option<[usize; 3]> {
        match self.s1_is_parent_vertex {
            None => None,
            Some(false) => Some([0, 3, 0]),
            Some(true) => Some([2, 1, 0]),
        }
    }

    pub fn ok(&self) -> bool {
        match self.expected() {
            None => self.counts.iter().all(|c| *c >= 1) && self.counts.iter().sum::<usize>() == 3,
            Some(e) => self.counts == e,
        }
    }
}

impl fmt::Display for Lemma5Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.s1_is_parent_vertex {
            None => "central",
            Some(true) => "s1-vertex",
            Some(false) => "s1-inner",
        };
        writeln!(
            f,
            "lemma5 word={} level={} child={} {} counts=({},{},{}) result={}",
            self.word,
            self.parent_level,
            self.child.center,
            kind,
            self.counts[0],
            self.counts[1],
            self.counts[2],
            if self.ok() { "ok" } else { "FAIL" }
        )
    }
}

/// The extension table for every child of the origin tile of level `parent_level`.
pub fn lemma5_check(word: &Word, parent_level: usize, budget: u64) -> Result<Vec<Lemma5Row>, VerifyError> {
    let amb = origin_ambient(word)?;
    let parent = amb.origin_tile(parent_level)?;
    // each parent covering restricts to one covering of each child, so one
    // enumeration of the parent serves all children
    let parents = enumerate_coverings(&amb, parent, false, &CoveringConstraint::none(), budget)?;
    let mut rows = Vec::with_capacity(7);
    for child in amb.child_centers(parent)? {
        let covs = enumerate_coverings(&amb, child, false, &CoveringConstraint::none(), budget)?;
        let restricted = parents.iter().map(|p| restrict(p, child).map(|r| r.key())).collect::<Result<Vec<_>, _>>()?;
        let extensions = |c: &TileCovering| restricted.iter().filter(|k| **k == c.key()).count();
        let labels = lemma5_labels(&amb, parent, child)?;
        let mut counts = [0; 3];
        match labels {
            None => {
                for (i, c) in covs.iter().enumerate() {
                    counts[i] = extensions(c);
                }
            }
            Some([s1, s2, s3]) => {
                for c in &covs {
                    let (a, b) = c.endpoints();
                    let joins = |p: EisensteinInt, q: EisensteinInt| (a == p && b == q) || (a == q && b == p);
                    let slot = if joins(s1, s2) {
                        0
                    } else if joins(s2, s3) {
                        1
                    } else if joins(s1, s3) {
                        2
                    } else {
                        return Err(EnumError::NoLabelling(child).into());
                    };
                    counts[slot] = extensions(c);
                }
            }
        }
        rows.push(Lemma5Row {
            word: word.clone(),
            parent_level,
            child,
            s1_is_parent_vertex: labels.map(|l| amb.is_vertex_of(parent, l[0])),
            counts,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cor4Row {
    pub word: Word,
    pub tile_level: usize,
    pub target: usize,
    pub oriented: bool,
    /// Classes found in each covering of the tile.
    pub found: Vec<usize>,
    pub expected: usize,
}

impl Cor4Row {
    pub fn ok(&self) -> bool {
        !self.found.is_empty() && self.found.iter().all(|n| *n == self.expected)
    }
}

impl fmt::Display for Cor4Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found: Vec<String> = self.found.iter().map(|n| n.to_string()).collect();
        writeln!(
            f,
            "cor4 word={} level={} target={} oriented={} found=[{}] expected={} result={}",
            self.word,
            self.tile_level,
            self.target,
            self.oriented,
            found.join(","),
            self.expected,
            if self.ok() { "ok" } else { "FAIL" }
        )
    }
}

/// Copies of the level-`target` coverings inside every covering of the
/// origin tile of level `tile_level`.
pub fn cor4_check(word: &Word, tile_level: usize, target: usize, oriented: bool) -> Result<Cor4Row, VerifyError> {
    let amb = origin_ambient(word)?;
    let t = amb.origin_tile(tile_level)?;
    let mut found = Vec::new();
    for c in canonical_coverings(&amb, t, oriented)? {
        found.push(copy_census(&c, target, oriented)?.len());
    }
    Ok(Cor4Row {
        word: word.clone(),
        tile_level,
        target,
        oriented,
        found,
        expected: if oriented { 6 } else { 3 },
    })
}

// ---------------------------------------------------------------------------
// Planes.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRow {
    pub level: usize,
    pub coverings: usize,
    pub rotations_ok: bool,
    pub restriction_ok: bool,
}

impl ConstantRow {
    pub fn ok(&self) -> bool {
        self.coverings == 3 && self.rotations_ok && self.restriction_ok
    }
}

/// The constant anchor at the origin: 3 nonoriented coverings per level,
/// permuted by rotation of `2π/3`, each restricting into the level below.
pub fn constant_anchor_check(word: &Word) -> Result<Vec<ConstantRow>, VerifyError> {
    let amb = origin_ambient(word)?;
    let mut prev: Option<BTreeSet<Curve>> = None;
    let mut out = Vec::with_capacity(word.len());
    for k in 0..=word.len() {
        let t = amb.origin_tile(k)?;
        let covs = canonical_coverings(&amb, t, false)?;
        let keys: BTreeSet<Curve> = covs.iter().map(|c| c.key()).collect();
        let rotations_ok = covs.iter().all(|c| {
            let mut orbit = BTreeSet::new();
            for r in [0, 2, 4] {
                let rc = TileCovering { curve: c.curve.rotated_about(t.center, r), ..c.clone() };
                orbit.insert(rc.key());
            }
            orbit == keys
        });
        let restriction_ok = match &prev {
            None => true,
            Some(below) => {
                let mut ok = true;
                for c in &covs {
                    ok &= below.contains(&restrict(c, amb.origin_tile(k - 1)?)?.key());
                }
                ok
            }
        };
        out.push(ConstantRow { level: k, coverings: covs.len(), rotations_ok, restriction_ok });
        prev = Some(keys);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceRow {
    pub level: usize,
    pub avoiding: usize,
    pub ending: usize,
    /// Every covering of each family restricts into the same family at every lower level.
    pub coherent: bool,
    /// Brute force agrees with the canonical coverings (levels ≤ 2 only).
    pub oracle: Option<bool>,
}

/// Restriction coherence of the two constrained families along a vertex
/// anchor at `y`: coverings of `Pₖ` avoiding `y` as an endpoint, and those
/// ending at `y`.
pub fn restriction_coherence(word: &Word, y: EisensteinInt, budget: u64) -> Result<Vec<CoherenceRow>, VerifyError> {
    let n = word.len();
    let x = make_x(Anchor::Vertex(y), word, n)?;
    let amb = Ambient::new(x.centers[n], word.clone())?;
    let mut families: Vec<(BTreeSet<Curve>, BTreeSet<Curve>)> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = amb.tile(x.centers[k], k)?;
        let covs = canonical_coverings(&amb, t, false)?;
        let (mut avoid, mut end) = (BTreeSet::new(), BTreeSet::new());
        for c in &covs {
            let (a, b) = c.endpoints();
            if a == y || b == y {
                end.insert(c.key());
            } else {
                avoid.insert(c.key());
            }
        }
        let mut coherent = true;
        for (m, (lower_avoid, lower_end)) in families.iter().enumerate() {
            let sub = amb.tile(x.centers[m], m)?;
            for c in &covs {
                let r = restrict(c, sub)?;
                let (a, b) = c.endpoints();
                let fam = if a == y || b == y { lower_end } else { lower_avoid };
                coherent &= fam.contains(&r.key());
            }
        }
        let oracle = if k <= 2 {
            let brute: BTreeSet<Curve> = enumerate_coverings(&amb, t, false, &CoveringConstraint::none(), budget)?
                .into_iter()
                .map(|c| c.key())
                .collect();
            Some(brute == covs.iter().map(|c| c.key()).collect())
        } else {
            None
        };
        out.push(CoherenceRow { level: k, avoiding: avoid.len(), ending: end.len(), coherent, oracle });
        families.push((avoid, end));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowShape {
    pub choice: usize,
    pub regions: usize,
    pub curves: usize,
    /// Regions visited by each curve.
    pub spans: Vec<usize>,
    /// For a vertex anchor in `W`: some curve passes through the anchor.
    pub through_anchor: bool,
}

/// Region and curve counts of every window the anchor admits.
pub fn window_shapes(anchor: Anchor, word: &Word, depth: usize, lookahead: usize) -> Result<Vec<WindowShape>, VerifyError> {
    let x = make_x(anchor, word, depth + lookahead)?;
    let mut out = Vec::new();
    for choice in 0..window_choice_count(&x, depth, lookahead)? {
        let w = window_assemble(&x, depth, lookahead, choice)?;
        let spans: Vec<usize> = (0..w.curves.len()).map(|i| w.regions_of_curve(i).len()).collect();
        let through_anchor = match anchor {
            Anchor::Vertex(y) => w.curves.iter().any(|c| {
                let pts = c.segments.points();
                pts[1..pts.len() - 1].contains(&y)
            }),
            _ => false,
        };
        out.push(WindowShape { choice, regions: w.region_count(), curves: w.curves.len(), spans, through_anchor });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationRow {
    pub word: Word,
    pub anchor: Anchor,
    pub choice: usize,
    pub curves: usize,
    pub passing: Vec<Vec<bool>>,
}

impl OrientationRow {
    /// Exactly 2 assignments pass and they are mutual reversals.
    pub fn ok(&self) -> bool {
        self.passing.len() == 2 && self.passing[0].iter().zip(&self.passing[1]).all(|(a, b)| a != b)
    }
}

impl fmt::Display for OrientationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let asg: Vec<String> =
            self.passing.iter().map(|a| a.iter().map(|b| if *b { '+' } else { '-' }).collect()).collect();
        writeln!(
            f,
            "orientations word={} anchor={} choice={} curves={} passing={} [{}] result={}",
            self.word,
            self.anchor,
            self.choice,
            self.curves,
            self.passing.len(),
            asg.join(" "),
            if self.ok() { "ok" } else { "FAIL" }
        )
    }
}

/// Orientation assignments passing (P) on the core, for every window of the anchor.
pub fn orientation_check(anchor: Anchor, word: &Word, depth: usize, lookahead: usize) -> Result<Vec<OrientationRow>, VerifyError> {
    let x = make_x(anchor, word, depth + lookahead)?;
    let mut out = Vec::new();
    for choice in 0..window_choice_count(&x, depth, lookahead)? {
        let w = window_assemble(&x, depth, lookahead, choice)?;
        out.push(OrientationRow {
            word: word.prefix(depth + lookahead),
            anchor,
            choice,
            curves: w.curves.len(),
            passing: enumerate_orientations(&w),
        });
    }
    Ok(out)
}

/// (P) violations of the canonical oriented coverings of the origin tile of
/// level `|word|`, one count per covering.
pub fn canonical_p_violations(word: &Word) -> Result<Vec<usize>, VerifyError> {
    let amb = origin_ambient(word)?;
    let t = amb.origin_tile(word.len())?;
    let mut out = Vec::new();
    for c in canonical_coverings(&amb, t, true)? {
        let w = apply_orientation(&crate::plane::from_tile_covering(&c)?, &[true]);
        out.push(property_p_check(&w, false).len());
    }
    Ok(out)
}

/// The censuses of the 6 oriented canonical coverings of the origin tile of
/// level `|word|`.
pub fn covering_censuses(word: &Word) -> Result<Vec<Census>, VerifyError> {
    let amb = origin_ambient(word)?;
    let t = amb.origin_tile(word.len())?;
    let mut out = Vec::new();
    for c in canonical_coverings(&amb, t, true)? {
        let w = apply_orientation(&crate::plane::from_tile_covering(&c)?, &[true]);
        out.push(config_census(&w)?);
    }
    Ok(out)
}

/// Whether the turn sequence of `c` is `build_seq(word)` or its bar.
pub fn turns_match(c: &Curve, word: &Word) -> Result<bool, VerifyError> {
    let s = build_seq(word)?;
    let t = turns_of(c);
    Ok(t == s || t == s.bar())
}
