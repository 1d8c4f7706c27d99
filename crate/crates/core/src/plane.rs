//! Anchored sequences `X = (xₙ)` and finite windows of their coverings.
//!
//! A window of depth `N` and lookahead `M` lives in the ambient with origin
//! `x_{N+M}` and the first `N + M` chiralities; every level up to `N + M`
//! agrees with the ambients of the earlier `xₖ`. The cluster is the one to
//! three level-`N` tiles at the anchor, and each region's curve is the
//! restriction of a canonical covering of the level-`(N+M)` tile above it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::curves::{canonical_coverings, restrict, Curve, CurveError, DirectedSegment, TileCovering};
use crate::lattice::{EisensteinInt, LatticeError, Word};
use crate::tiling::{hex_neighbor_offsets, hexagons_around, Ambient, TileRef, TilingError, W_CLASS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("no valid center for x_{0}")]
    NoCandidate(usize),
    #[error("{0} and {1} are not adjacent hexagons")]
    NotAnEdge(EisensteinInt, EisensteinInt),
    #[error("{0} is not a honeycomb vertex")]
    NotAVertex(EisensteinInt),
    #[error("{0} is not a hexagon center")]
    NotACenter(EisensteinInt),
    #[error("need {need} levels of X, have {have}")]
    TooShallow { need: usize, have: usize },
    #[error("choice {choice} out of range (0..{count})")]
    BadChoice { choice: usize, count: usize },
    #[error("no curve {0}")]
    BadCurve(usize),
    #[error("region {0} has no admissible fragment")]
    NoFragment(u8),
    #[error("malformed window: {0}")]
    Malformed(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XKind {
    Constant,
    Spiral,
    SideAnchored,
    VertexAnchored,
}

impl fmt::Display for XKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XKind::Constant => "constant",
            XKind::Spiral => "spiral",
            XKind::SideAnchored => "side",
            XKind::VertexAnchored => "vertex",
        })
    }
}

/// Anchor data. A side is given by the two hexagons it separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Anchor {
    Constant(EisensteinInt),
    Spiral(EisensteinInt),
    Side(EisensteinInt, EisensteinInt),
    Vertex(EisensteinInt),
}

impl Anchor {
    pub fn kind(&self) -> XKind {
        match self {
            Anchor::Constant(_) => XKind::Constant,
            Anchor::Spiral(_) => XKind::Spiral,
            Anchor::Side(..) => XKind::SideAnchored,
            Anchor::Vertex(_) => XKind::VertexAnchored,
        }
    }

    /// The anchors used when none is given: the origin hexagon, its edge
    /// toward `1 + ω`, and its corner `1` (a `W` point).
    pub fn default_for(kind: XKind) -> Anchor {
        let o = EisensteinInt::ZERO;
        match kind {
            XKind::Constant => Anchor::Constant(o),
            XKind::Spiral => Anchor::Spiral(o),
            XKind::SideAnchored => Anchor::Side(o, EisensteinInt::HEX_STEP),
            XKind::VertexAnchored => Anchor::Vertex(EisensteinInt::ONE),
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Constant(x) | Anchor::Spiral(x) | Anchor::Vertex(x) => write!(f, "{}:{x}", self.kind()),
            Anchor::Side(a, b) => write!(f, "side:{a}|{b}"),
        }
    }
}

/// A generated prefix `x₀ … xₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSeq {
    pub anchor: Anchor,
    pub word: Word,
    pub centers: Vec<EisensteinInt>,
    /// `candidates[k]` is the number of valid choices for `x_{k+1}`.
    pub candidates: Vec<usize>,
}

impl XSeq {
    pub fn kind(&self) -> XKind {
        self.anchor.kind()
    }

    pub fn levels(&self) -> usize {
        self.centers.len() - 1
    }

    /// `P^k`, as a tile of the ambient with origin `x_k`.
    pub fn tile(&self, k: usize) -> Result<(Ambient, TileRef), PlaneError> {
        let amb = Ambient::new(self.centers[k], self.word.prefix(k))?;
        let t = amb.origin_tile(k)?;
        Ok((amb, t))
    }
}

fn check_anchor(anchor: &Anchor) -> Result<EisensteinInt, PlaneError> {
    match *anchor {
        Anchor::Constant(x) | Anchor::Spiral(x) => {
            if x.color_class() != 0 {
                return Err(PlaneError::NotACenter(x));
            }
            Ok(x)
        }
        Anchor::Side(a, b) => {
            if a.color_class() != 0 || !hex_neighbor_offsets().contains(&(b - a)) {
                return Err(PlaneError::NotAnEdge(a, b));
            }
            Ok(a)
        }
        Anchor::Vertex(y) => Ok(hexagons_around(y).map_err(|_| PlaneError::NotAVertex(y))?[0]),
    }
}

// Whether choosing `c` as x_{k} (k ≥ 1) keeps the anchor condition at level k.
fn candidate_ok(anchor: &Anchor, word: &Word, prev: &[EisensteinInt], c: EisensteinInt) -> Result<bool, PlaneError> {
    let k = prev.len();
    let amb = Ambient::new(c, word.prefix(k))?;
    let tile = amb.origin_tile(k)?;
    Ok(match *anchor {
        Anchor::Constant(_) => c == prev[k - 1],
        Anchor::Spiral(_) => {
            if k < 2 {
                true
            } else {
                let inner = Ambient::new(prev[k - 2], word.prefix(k - 2))?;
                let mut ok = true;
                'outer: for h in inner.tile_hexagons(inner.origin_tile(k - 2)?)? {
                    for off in std::iter::once(EisensteinInt::ZERO).chain(hex_neighbor_offsets()) {
                        if amb.ancestor_at(h + off, k)? != tile {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                ok
            }
        }
        Anchor::Side(a, b) => {
            let (ta, tb) = (amb.ancestor_at(a, k)?, amb.ancestor_at(b, k)?);
            ta != tb && (ta == tile || tb == tile)
        }
        Anchor::Vertex(y) => amb.is_vertex_of(tile, y),
    })
}

/// Extends the anchor to `x₀ … xₙ`, taking at each step the smallest valid
/// center. The spiral prefers moving over staying put.
pub fn make_x(anchor: Anchor, word: &Word, n: usize) -> Result<XSeq, PlaneError> {
    if word.len() < n {
        return Err(PlaneError::TooShallow { need: n, have: word.len() });
    }
    let x0 = check_anchor(&anchor)?;
    let mut centers = vec![x0];
    let mut candidates = Vec::with_capacity(n);
    for k in 1..=n {
        let prev = *centers.last().unwrap();
        let step = EisensteinInt::HEX_STEP.checked_mul(Ambient::new(prev, word.prefix(k - 1))?.g(k - 1))?;
        let mut valid = Vec::new();
        for off in std::iter::once(EisensteinInt::ZERO).chain((0..6).map(|j| step.rotate(j))) {
            let c = prev.checked_add(off)?;
            if candidate_ok(&anchor, word, &centers, c)? {
                valid.push(c);
            }
        }
        candidates.push(valid.len());
        let pick = match anchor {
            Anchor::Spiral(_) => valid.iter().filter(|c| **c != prev).min().or(valid.first()),
            _ => valid.iter().min(),
        };
        centers.push(*pick.ok_or(PlaneError::NoCandidate(k))?);
    }
    Ok(XSeq { anchor, word: word.prefix(n), centers, candidates })
}

/// One curve of a window, possibly oriented.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindowCurve {
    pub oriented: bool,
    pub segments: Curve,
}

/// A finite piece of a covering of `P_{XΛ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCovering {
    pub ambient: Ambient,
    pub depth: usize,
    pub lookahead: usize,
    pub cluster: Vec<TileRef>,
    /// Region id (1-based, in cluster order) of every hexagon of the cluster.
    pub region_of: BTreeMap<EisensteinInt, u8>,
    pub curves: Vec<WindowCurve>,
}

#[derive(Serialize, Deserialize)]
struct AmbientJson {
    origin: EisensteinInt,
    lambda: String,
    #[serde(rename = "wClass")]
    w_class: u8,
}

#[derive(Serialize, Deserialize)]
struct ClusterJson {
    center: EisensteinInt,
    level: usize,
}

struct RegionMap<'a>(&'a BTreeMap<EisensteinInt, u8>);

impl Serialize for RegionMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (h, id) in self.0 {
            m.serialize_entry(&format!("{},{}", h.a, h.b), id)?;
        }
        m.end()
    }
}

fn parse_region_key(k: &str) -> Option<EisensteinInt> {
    let (a, b) = k.split_once(',')?;
    Some(EisensteinInt::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[derive(Serialize)]
struct WindowJsonOut<'a> {
    ambient: AmbientJson,
    depth: usize,
    lookahead: usize,
    cluster: Vec<ClusterJson>,
    regions: RegionMap<'a>,
    curves: &'a [WindowCurve],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowJsonIn {
    ambient: AmbientJson,
    depth: usize,
    lookahead: usize,
    cluster: Vec<ClusterJson>,
    regions: BTreeMap<String, u8>,
    curves: Vec<WindowCurve>,
}

impl Serialize for WindowCovering {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WindowJsonOut {
            ambient: AmbientJson {
                origin: self.ambient.origin(),
                lambda: self.ambient.word().to_string(),
                w_class: W_CLASS,
            },
            depth: self.depth,
            lookahead: self.lookahead,
            cluster: self.cluster.iter().map(|t| ClusterJson { center: t.center, level: t.level }).collect(),
            regions: RegionMap(&self.region_of),
            curves: &self.curves,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WindowCovering {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = WindowJsonIn::deserialize(d)?;
        if raw.ambient.w_class != W_CLASS {
            return Err(D::Error::custom("only wClass 1 is supported"));
        }
        let word = Word::parse(&raw.ambient.lambda).map_err(D::Error::custom)?;
        let ambient = Ambient::new(raw.ambient.origin, word).map_err(D::Error::custom)?;
        let cluster = raw
            .cluster
            .iter()
            .map(|c| ambient.tile(c.center, c.level))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let mut region_of = BTreeMap::new();
        for (k, v) in raw.regions {
            let h = parse_region_key(&k).ok_or_else(|| D::Error::custom(format!("bad region key {k:?}")))?;
            region_of.insert(h, v);
        }
        Ok(WindowCovering {
            ambient,
            depth: raw.depth,
            lookahead: raw.lookahead,
            cluster,
            region_of,
            curves: raw.curves,
        })
    }
}

impl WindowCovering {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("window serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, PlaneError> {
        let w: WindowCovering = serde_json::from_str(s).map_err(|e| PlaneError::Malformed(e.to_string()))?;
        w.validate()?;
        Ok(w)
    }

    /// Every cluster hexagon carries exactly one segment of one curve, and
    /// the curves are disjoint and self-avoiding.
    pub fn validate(&self) -> Result<(), PlaneError> {
        let mut seen = HashSet::new();
        for wc in &self.curves {
            for s in wc.segments.segments() {
                let h = s.hexagon();
                if !self.region_of.contains_key(&h) {
                    return Err(PlaneError::Malformed(format!("segment outside the cluster in {h}")));
                }
                if !seen.insert(h) {
                    return Err(PlaneError::Malformed(format!("hexagon {h} covered twice")));
                }
            }
        }
        if seen.len() != self.region_of.len() {
            return Err(PlaneError::Malformed("uncovered hexagons".into()));
        }
        let mut pts = HashSet::new();
        for wc in &self.curves {
            for p in wc.segments.points() {
                if !pts.insert(p) {
                    return Err(PlaneError::Malformed(format!("point {p} visited twice")));
                }
            }
        }
        Ok(())
    }

    pub fn hexagon_count(&self) -> usize {
        self.region_of.len()
    }

    /// Segment and curve index for every covered hexagon.
    pub fn segment_map(&self) -> HashMap<EisensteinInt, (DirectedSegment, usize)> {
        let mut m = HashMap::with_capacity(self.region_of.len());
        for (i, wc) in self.curves.iter().enumerate() {
            for s in wc.segments.segments() {
                m.insert(s.hexagon(), (*s, i));
            }
        }
        m
    }

    /// The regions a curve passes through, ascending.
    pub fn regions_of_curve(&self, i: usize) -> BTreeSet<u8> {
        self.curves[i].segments.segments().iter().filter_map(|s| self.region_of.get(&s.hexagon()).copied()).collect()
    }

    pub fn region_count(&self) -> usize {
        self.cluster.len()
    }

    pub fn with_orientation(&self, oriented: bool) -> WindowCovering {
        let mut w = self.clone();
        for c in &mut w.curves {
            c.oriented = oriented;
        }
        w
    }
}

/// A one-region window holding a single tile covering.
pub fn from_tile_covering(tc: &TileCovering) -> Result<WindowCovering, PlaneError> {
    let region_of = tc.ambient.tile_hexagons(tc.tile)?.into_iter().map(|h| (h, 1)).collect();
    Ok(WindowCovering {
        ambient: tc.ambient.clone(),
        depth: tc.tile.level,
        lookahead: 0,
        cluster: vec![tc.tile],
        region_of,
        curves: vec![WindowCurve { oriented: tc.oriented, segments: tc.curve.clone() }],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Any,
    Complete(EisensteinInt),
    Half(EisensteinInt),
}

struct Plan {
    ambient: Ambient,
    cluster: Vec<TileRef>,
    tops: Vec<TileRef>,
    // the shared W vertex of a three-region vertex anchor
    hinge: Option<EisensteinInt>,
}

fn plan_window(x: &XSeq, depth: usize, lookahead: usize) -> Result<Plan, PlaneError> {
    let top = depth + lookahead;
    if x.levels() < top {
        return Err(PlaneError::TooShallow { need: top, have: x.levels() });
    }
    let ambient = Ambient::new(x.centers[top], x.word.prefix(top))?;
    let mut cluster = match x.anchor {
        Anchor::Constant(_) | Anchor::Spiral(_) => vec![ambient.tile(x.centers[depth], depth)?],
        Anchor::Side(a, b) => vec![ambient.ancestor_at(a, depth)?, ambient.ancestor_at(b, depth)?],
        Anchor::Vertex(y) => hexagons_around(y)?
            .iter()
            .map(|h| ambient.ancestor_at(*h, depth))
            .collect::<Result<Vec<_>, _>>()?,
    };
    cluster.sort();
    cluster.dedup();
    let tops = cluster.iter().map(|t| ambient.ancestor_at(t.center, top)).collect::<Result<Vec<_>, _>>()?;
    let hinge = match x.anchor {
        Anchor::Vertex(y) if y.color_class() == W_CLASS => Some(y),
        _ => None,
    };
    Ok(Plan { ambient, cluster, tops, hinge })
}

// Distinct restrictions to `tile` of the canonical coverings of `top` in `role`.
fn fragment_options(amb: &Ambient, top: TileRef, tile: TileRef, role: Role) -> Result<Vec<Curve>, PlaneError> {
    let mut out = BTreeSet::new();
    for c in canonical_coverings(amb, top, false)? {
        let (s, e) = c.endpoints();
        let keep = match role {
            Role::Any => true,
            Role::Complete(y) => s != y && e != y,
            Role::Half(y) => s == y || e == y,
        };
        if keep {
            out.insert(restrict(&c, tile)?.key());
        }
    }
    Ok(out.into_iter().collect())
}

// Every assignment of fragments that assembles into a valid window, in choice order: for a hinged
// window the complete-curve region varies slowest, then the regions' options
// in cluster order.
fn window_assignments(plan: &Plan) -> Result<Vec<Vec<Curve>>, PlaneError> {
    let role_sets: Vec<Vec<Role>> = match plan.hinge {
        None => vec![vec![Role::Any; plan.cluster.len()]],
        Some(y) => (0..plan.cluster.len())
            .map(|r| (0..plan.cluster.len()).map(|i| if i == r { Role::Complete(y) } else { Role::Half(y) }).collect())
            .collect(),
    };
    let mut all = Vec::new();
    for roles in role_sets {
        let mut opts = Vec::with_capacity(roles.len());
        for (i, role) in roles.iter().enumerate() {
            let o = fragment_options(&plan.ambient, plan.tops[i], plan.cluster[i], *role)?;
            if o.is_empty() {
                return Err(PlaneError::NoFragment(i as u8 + 1));
            }
            opts.push(o);
        }
        let mut acc: Vec<Vec<Curve>> = vec![Vec::new()];
        for o in &opts {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    o.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c.clone());
                        p
                    })
                })
                .collect();
        }
        for frags in acc {
            // fragments from different tower tops can collide at a shared
            // boundary point; such combinations are not coverings
            if build_window(plan, frags.clone(), plan.cluster[0].level, 0).is_ok() {
                all.push(frags);
            }
        }
    }
    Ok(all)
}

/// How many values `choice` may take for these parameters.
pub fn window_choice_count(x: &XSeq, depth: usize, lookahead: usize) -> Result<usize, PlaneError> {
    Ok(window_assignments(&plan_window(x, depth, lookahead)?)?.len())
}

/// Assembles the depth-`N` window selected by `choice`. Curves are
/// nonoriented (stored with start below end) and ordered by first region.
pub fn window_assemble(x: &XSeq, depth: usize, lookahead: usize, choice: usize) -> Result<WindowCovering, PlaneError> {
    let plan = plan_window(x, depth, lookahead)?;
    let all = window_assignments(&plan)?;
    let frags = all.get(choice).ok_or(PlaneError::BadChoice { choice, count: all.len() })?.clone();
    build_window(&plan, frags, depth, lookahead)
}

fn build_window(plan: &Plan, frags: Vec<Curve>, depth: usize, lookahead: usize) -> Result<WindowCovering, PlaneError> {
    let mut curves: Vec<Curve> = Vec::new();
    match plan.hinge {
        None => curves = frags,
        Some(y) => {
            let mut halves = Vec::new();
            for f in frags {
                if f.start() == y || f.end() == y {
                    halves.push(f);
                } else {
                    curves.push(f);
                }
            }
            if halves.len() != 2 {
                return Err(PlaneError::Malformed(format!("{} half fragments at {y}", halves.len())));
            }
            let into_y = if halves[0].end() == y { halves[0].clone() } else { halves[0].reversed() };
            let out_of_y = if halves[1].start() == y { halves[1].clone() } else { halves[1].reversed() };
            let mut segs = into_y.segments().to_vec();
            segs.extend_from_slice(out_of_y.segments());
            curves.push(Curve::new(segs)?);
        }
    }

    let mut region_of = BTreeMap::new();
    for (i, t) in plan.cluster.iter().enumerate() {
        for h in plan.ambient.tile_hexagons(*t)? {
            region_of.insert(h, i as u8 + 1);
        }
    }
    let first_region = |c: &Curve| {
        c.segments().iter().map(|s| region_of.get(&s.hexagon()).copied().unwrap_or(u8::MAX)).min()
    };
    let mut curves: Vec<Curve> = curves.into_iter().map(|c| if c.start() < c.end() { c } else { c.reversed() }).collect();
    curves.sort_by_key(|c| (first_region(c), c.start()));
    let w = WindowCovering {
        ambient: plan.ambient.clone(),
        depth,
        lookahead,
        cluster: plan.cluster.clone(),
        region_of,
        curves: curves.into_iter().map(|c| WindowCurve { oriented: false, segments: c }).collect(),
    };
    w.validate()?;
    Ok(w)
}

/// A pair of parallel segments bounding a rhombus with the same orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub first: DirectedSegment,
    pub second: DirectedSegment,
}

/// Hexagons of the cluster whose six neighbors are in the cluster too.
pub fn core_hexagons(w: &WindowCovering) -> HashSet<EisensteinInt> {
    w.region_of
        .keys()
        .filter(|h| hex_neighbor_offsets().iter().all(|t| w.region_of.contains_key(&(**h + *t))))
        .copied()
        .collect()
}

/// Checks (P) on every rhombus two of whose opposite sides are curve
/// segments. Those segments lie in hexagons `h` and `h + t` with `t` a
/// norm-3 step not parallel to them. With `core_only` both hexagons must be
/// in [`core_hexagons`].
pub fn property_p_check(w: &WindowCovering, core_only: bool) -> Vec<Violation> {
    let map = w.segment_map();
    let core = if core_only { Some(core_hexagons(w)) } else { None };
    let in_scope = |h: &EisensteinInt| core.as_ref().map_or(true, |c| c.contains(h));
    let mut out = Vec::new();
    let steps = hex_neighbor_offsets();
    let mut hexes: Vec<_> = map.keys().copied().collect();
    hexes.sort();
    for h in hexes {
        if !in_scope(&h) {
            continue;
        }
        let (s, _) = map[&h];
        for (j, t) in steps.iter().enumerate() {
            // steps j ≡ d+2, d+5 (mod 6) are parallel to a direction-d segment
            let rel = (j as i64 - s.dir as i64).rem_euclid(3);
            if rel == 2 {
                continue;
            }
            let h2 = h + *t;
            if h2 <= h || !in_scope(&h2) {
                continue;
            }
            if let Some(&(s2, _)) = map.get(&h2) {
                if s2.start == s.start + *t && s2.dir == s.dir {
                    out.push(Violation { first: s, second: s2 });
                }
            }
        }
    }
    out
}

/// All orientation assignments (true = as stored) satisfying (P) on the core.
pub fn enumerate_orientations(w: &WindowCovering) -> Vec<Vec<bool>> {
    let k = w.curves.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let assignment: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 0).collect();
        let oriented = apply_orientation(w, &assignment);
        if property_p_check(&oriented, true).is_empty() {
            out.push(assignment);
        }
    }
    out
}

/// The window with every curve oriented, reversing those marked `false`.
pub fn apply_orientation(w: &WindowCovering, assignment: &[bool]) -> WindowCovering {
    let mut o = w.clone();
    for (c, keep) in o.curves.iter_mut().zip(assignment) {
        c.oriented = true;
        if !keep {
            c.segments = c.segments.reversed();
        }
    }
    o
}

pub fn flip_curve(w: &WindowCovering, id: usize) -> Result<WindowCovering, PlaneError> {
    let mut o = w.clone();
    let c = o.curves.get_mut(id).ok_or(PlaneError::BadCurve(id))?;
    c.segments = c.segments.reversed();
    Ok(o)
}

/// The window rotated by `kπ/3` about `center`, with `k` even so `W` is preserved.
pub fn rotate_window(w: &WindowCovering, center: EisensteinInt, k: i64) -> Result<WindowCovering, PlaneError> {
    if k.rem_euclid(2) != 0 {
        return Err(PlaneError::Malformed("odd rotations swap the vertex classes".into()));
    }
    let origin = w.ambient.origin().rotate_about(center, k);
    if origin.color_class() != 0 {
        return Err(PlaneError::NotACenter(origin));
    }
    let mut o = w.clone();
    // The rotated cluster is no longer a tiling of any ambient in general, so
    // the ambient is only carried along for its word.
    o.ambient = Ambient::new(origin, w.ambient.word().clone())?;
    o.cluster = w.cluster.iter().map(|t| TileRef::new(t.center.rotate_about(center, k), t.level)).collect();
    o.region_of = w.region_of.iter().map(|(h, r)| (h.rotate_about(center, k), *r)).collect();
    for c in &mut o.curves {
        c.segments = c.segments.rotated_about(center, k);
    }
    Ok(o)
}
