//! Curves on the vertex class `W`, tile coverings, shrink and lift.
//!
//! A segment joins two `W`-corners of one unit hexagon. Direction `d`
//! means the displacement `ω^d·(ω − 2)`, so turns are plain differences
//! of directions mod 6.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Chirality, EisensteinInt, LatticeError, Word};
use crate::sequences::{SequenceError, TurnSeq};
use crate::tiling::{Ambient, TileRef, TilingError, W_CLASS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("segment start {0} is not in W")]
    StartNotInW(EisensteinInt),
    #[error("segments {0} and {1} do not connect")]
    Disconnected(usize, usize),
    #[error("segment {0} reverses the previous one")]
    Reversal(usize),
    #[error("empty curve")]
    Empty,
    #[error("curve does not cover tile {0:?}")]
    NotACovering(TileRef),
    #[error("curve is not self-avoiding")]
    SelfIntersecting,
    #[error("the segments in {0:?} are not a nonempty contiguous run")]
    NotContiguous(TileRef),
    #[error("{0} and {1} are not joined by a single segment")]
    NotASegment(EisensteinInt, EisensteinInt),
    #[error("no child covering joins {0} to {1}")]
    NoChildCovering(EisensteinInt, EisensteinInt),
    #[error("level-0 coverings cannot be shrunk")]
    LevelZero,
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Displacement of direction `d`: `ω^d·(ω − 2)`.
pub fn dir_vector(d: u8) -> EisensteinInt {
    EisensteinInt::new(-2, 1).rotate(d as i64)
}

/// Inverse of [`dir_vector`].
pub fn dir_of(v: EisensteinInt) -> Option<u8> {
    (0..6u8).find(|&d| dir_vector(d) == v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedSegment {
    pub start: EisensteinInt,
    pub dir: u8,
}

impl DirectedSegment {
    pub fn new(start: EisensteinInt, dir: u8) -> Result<Self, CurveError> {
        if start.color_class() != W_CLASS {
            return Err(CurveError::StartNotInW(start));
        }
        Ok(DirectedSegment { start, dir: dir % 6 })
    }

    /// The segment from `p` to `q`, if they are joined by one.
    pub fn between(p: EisensteinInt, q: EisensteinInt) -> Result<Self, CurveError> {
        let d = dir_of(q - p).ok_or(CurveError::NotASegment(p, q))?;
        DirectedSegment::new(p, d)
    }

    pub fn end(self) -> EisensteinInt {
        self.start + dir_vector(self.dir)
    }

    /// The hexagon both endpoints are `W`-corners of.
    pub fn hexagon(self) -> EisensteinInt {
        hexagon_of(self)
    }

    pub fn reversed(self) -> Self {
        DirectedSegment { start: self.end(), dir: (self.dir + 3) % 6 }
    }

    pub fn translated(self, t: EisensteinInt) -> Self {
        DirectedSegment { start: self.start + t, dir: self.dir }
    }

    /// Rotation by `kπ/3` about `center`; `k` must be even to stay on `W`
    /// unless `center` itself is a corner.
    pub fn rotated_about(self, center: EisensteinInt, k: i64) -> Self {
        DirectedSegment {
            start: self.start.rotate_about(center, k),
            dir: (self.dir as i64 + k).rem_euclid(6) as u8,
        }
    }
}

pub fn hexagon_of(seg: DirectedSegment) -> EisensteinInt {
    let k = if seg.dir % 2 == 0 { seg.dir } else { (seg.dir + 5) % 6 };
    seg.start - EisensteinInt::omega_pow(k as i64)
}

/// An ordered chain of segments; consecutive segments share a point and
/// never immediately backtrack.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Curve {
    segments: Vec<DirectedSegment>,
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let segments = Vec::<DirectedSegment>::deserialize(d)?;
        Curve::new(segments).map_err(serde::de::Error::custom)
    }
}

impl Curve {
    pub fn new(segments: Vec<DirectedSegment>) -> Result<Self, CurveError> {
        if segments.is_empty() {
            return Err(CurveError::Empty);
        }
        for (i, s) in segments.iter().enumerate() {
            if s.start.color_class() != W_CLASS || s.dir >= 6 {
                return Err(CurveError::StartNotInW(s.start));
            }
            if i > 0 {
                let prev = segments[i - 1];
                if prev.end() != s.start {
                    return Err(CurveError::Disconnected(i - 1, i));
                }
                if (s.dir + 6 - prev.dir) % 6 == 3 {
                    return Err(CurveError::Reversal(i));
                }
            }
        }
        Ok(Curve { segments })
    }

    pub fn segments(&self) -> &[DirectedSegment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn start(&self) -> EisensteinInt {
        self.segments[0].start
    }

    pub fn end(&self) -> EisensteinInt {
        self.segments[self.segments.len() - 1].end()
    }

    /// All `len + 1` visited points in order.
    pub fn points(&self) -> Vec<EisensteinInt> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        out.push(self.start());
        out.extend(self.segments.iter().map(|s| s.end()));
        out
    }

    pub fn is_self_avoiding(&self) -> bool {
        let pts = self.points();
        let set: HashSet<_> = pts.iter().collect();
        set.len() == pts.len()
    }

    pub fn reversed(&self) -> Curve {
        Curve { segments: self.segments.iter().rev().map(|s| s.reversed()).collect() }
    }

    pub fn translated(&self, t: EisensteinInt) -> Curve {
        Curve { segments: self.segments.iter().map(|s| s.translated(t)).collect() }
    }

    pub fn rotated_about(&self, center: EisensteinInt, k: i64) -> Curve {
        Curve { segments: self.segments.iter().map(|s| s.rotated_about(center, k)).collect() }
    }

    /// The sub-curve `segments[range]`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Result<Curve, CurveError> {
        Curve::new(self.segments[range].to_vec())
    }
}

/// Builds the curve whose first segment is `start` and whose turns are `s`.
pub fn realize(s: &TurnSeq, start: DirectedSegment) -> Curve {
    let mut segments = Vec::with_capacity(s.len() + 1);
    segments.push(start);
    let mut cur = start;
    for &t in s.entries() {
        cur = DirectedSegment { start: cur.end(), dir: (cur.dir as i8 + t).rem_euclid(6) as u8 };
        segments.push(cur);
    }
    Curve { segments }
}

pub fn turns_of(c: &Curve) -> TurnSeq {
    let t = c
        .segments
        .windows(2)
        .map(|w| ((w[1].dir as i8 - w[0].dir as i8 + 9).rem_euclid(6)) - 3)
        .collect();
    TurnSeq::new(t).expect("curve invariants exclude a turn of 3")
}

/// The map `z ↦ (offset + scale·z) / denom` from a covering's own
/// coordinates to the plane it was shrunk from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub offset: EisensteinInt,
    pub scale: EisensteinInt,
    pub denom: EisensteinInt,
}

impl Default for Frame {
    fn default() -> Self {
        Frame::IDENTITY
    }
}

impl Frame {
    pub const IDENTITY: Frame =
        Frame { offset: EisensteinInt::ZERO, scale: EisensteinInt::ONE, denom: EisensteinInt::ONE };

    pub fn apply(&self, z: EisensteinInt) -> Result<EisensteinInt, LatticeError> {
        self.offset.checked_add(self.scale.checked_mul(z)?)?.checked_div_exact(self.denom)
    }

    // Cancels common factors γ(±) so equal maps compare equal.
    fn normalized(mut self) -> Frame {
        for g in [Chirality::Plus.gamma(), Chirality::Minus.gamma()] {
            while g.divides(self.denom) && g.divides(self.offset) && g.divides(self.scale) {
                self.denom = self.denom.checked_div_exact(g).unwrap();
                self.offset = self.offset.checked_div_exact(g).unwrap();
                self.scale = self.scale.checked_div_exact(g).unwrap();
            }
        }
        if self.denom == -EisensteinInt::ONE {
            self = Frame { offset: -self.offset, scale: -self.scale, denom: EisensteinInt::ONE };
        }
        self
    }

    /// `self ∘ (z ↦ o + γ(z − o))`.
    fn after_expand(self, o: EisensteinInt, g: EisensteinInt) -> Result<Frame, LatticeError> {
        let shift = o.checked_mul(EisensteinInt::ONE.checked_sub(g)?)?;
        Ok(Frame {
            offset: self.offset.checked_add(self.scale.checked_mul(shift)?)?,
            scale: self.scale.checked_mul(g)?,
            denom: self.denom,
        }
        .normalized())
    }

    /// `self ∘ (z ↦ o + (z − o)/γ)`.
    fn after_contract(self, o: EisensteinInt, g: EisensteinInt) -> Result<Frame, LatticeError> {
        let shift = o.checked_mul(g.checked_sub(EisensteinInt::ONE)?)?;
        Ok(Frame {
            offset: g.checked_mul(self.offset)?.checked_add(self.scale.checked_mul(shift)?)?,
            scale: self.scale,
            denom: self.denom.checked_mul(g)?,
        }
        .normalized())
    }
}

/// Whether `c` covers `t`: one segment per hexagon, contiguous runs in
/// every subtile, and both endpoints among the `W`-vertices of `t`.
pub fn covers_tile(amb: &Ambient, c: &Curve, t: TileRef) -> bool {
    check_covering(amb, c, t).is_ok()
}

fn check_covering(amb: &Ambient, c: &Curve, t: TileRef) -> Result<(), CurveError> {
    let not = || CurveError::NotACovering(t);
    if c.len() != 7usize.pow(t.level as u32) {
        return Err(not());
    }
    let w = amb.w_vertices(t);
    if !w.contains(&c.start()) || !w.contains(&c.end()) {
        return Err(not());
    }
    let mut seen = HashSet::with_capacity(c.len());
    let mut closed: HashSet<TileRef> = HashSet::new();
    let mut prev: Option<Vec<TileRef>> = None;
    for s in c.segments() {
        let h = s.hexagon();
        if !seen.insert(h) {
            return Err(not());
        }
        let chain = amb.ancestor_chain(h, t.level)?;
        if chain[t.level] != t {
            return Err(not());
        }
        if let Some(p) = &prev {
            for m in 1..t.level {
                if chain[m] != p[m] {
                    closed.insert(p[m]);
                    if closed.contains(&chain[m]) {
                        return Err(CurveError::NotContiguous(chain[m]));
                    }
                }
            }
        }
        prev = Some(chain);
    }
    Ok(())
}

/// A curve covering one tile of an ambient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileCovering {
    pub ambient: Ambient,
    pub tile: TileRef,
    pub curve: Curve,
    pub oriented: bool,
    /// Identity unless the covering came out of [`shrink_covering`] or [`lift_covering`].
    pub frame: Frame,
}

impl TileCovering {
    /// Checks the covering conditions and self-avoidance.
    pub fn new(amb: Ambient, tile: TileRef, curve: Curve, oriented: bool) -> Result<Self, CurveError> {
        check_covering(&amb, &curve, tile)?;
        if !curve.is_self_avoiding() {
            return Err(CurveError::SelfIntersecting);
        }
        Ok(TileCovering { ambient: amb, tile, curve, oriented, frame: Frame::IDENTITY })
    }

    pub fn endpoints(&self) -> (EisensteinInt, EisensteinInt) {
        (self.curve.start(), self.curve.end())
    }

    pub fn turns(&self) -> TurnSeq {
        turns_of(&self.curve)
    }

    /// The orientation used for nonoriented coverings: start below end.
    pub fn normalized(&self) -> TileCovering {
        if self.oriented || self.curve.start() < self.curve.end() {
            self.clone()
        } else {
            TileCovering { curve: self.curve.reversed(), ..self.clone() }
        }
    }

    pub fn reversed(&self) -> TileCovering {
        TileCovering { curve: self.curve.reversed(), ..self.clone() }
    }

    /// Comparison key: the curve itself if oriented, else its normalized form.
    pub fn key(&self) -> Curve {
        self.normalized().curve
    }
}

/// The index range of segments of `c` lying in `sub`.
pub fn run_in(amb: &Ambient, c: &Curve, sub: TileRef) -> Result<std::ops::Range<usize>, CurveError> {
    let idx: Vec<usize> = c
        .segments()
        .iter()
        .enumerate()
        .filter(|(_, s)| amb.contains(sub, s.hexagon()))
        .map(|(i, _)| i)
        .collect();
    match (idx.first(), idx.last()) {
        (Some(&a), Some(&b)) if b - a + 1 == idx.len() => Ok(a..b + 1),
        _ => Err(CurveError::NotContiguous(sub)),
    }
}

/// `C ↾ Q` for a subtile `Q` of the covered tile.
pub fn restrict(tc: &TileCovering, sub: TileRef) -> Result<TileCovering, CurveError> {
    if !tc.ambient.tile_within(sub, tc.tile) {
        return Err(CurveError::NotContiguous(sub));
    }
    let r = run_in(&tc.ambient, &tc.curve, sub)?;
    Ok(TileCovering {
        ambient: tc.ambient.clone(),
        tile: sub,
        curve: tc.curve.slice(r)?,
        oriented: tc.oriented,
        frame: tc.frame,
    })
}

/// Replaces each level-1 run by the segment joining its endpoints, and
/// maps the result through `z ↦ o + (z − o)/γ(λ₁)`, which fixes the origin.
pub fn shrink_covering(tc: &TileCovering) -> Result<TileCovering, CurveError> {
    if tc.tile.level == 0 {
        return Err(CurveError::LevelZero);
    }
    let amb = &tc.ambient;
    let o = amb.origin();
    let l1 = amb.word().letters()[0];
    let g = l1.gamma();
    let phi = |z: EisensteinInt| -> Result<EisensteinInt, LatticeError> {
        o.checked_add(z.checked_sub(o)?.checked_div_exact(g)?)
    };
    let segs = tc.curve.segments();
    let mut out = Vec::with_capacity(segs.len() / 7);
    let mut i = 0;
    while i < segs.len() {
        let sub = amb.ancestor_at(segs[i].hexagon(), 1)?;
        let j = i + 7;
        if j > segs.len() || !segs[i..j].iter().all(|s| amb.contains(sub, s.hexagon())) {
            return Err(CurveError::NotContiguous(sub));
        }
        out.push(DirectedSegment::between(phi(segs[i].start)?, phi(segs[j - 1].end())?)?);
        i = j;
    }
    let small = amb.with_word(amb.word().tail())?;
    let tile = small.tile(phi(tc.tile.center)?, tc.tile.level - 1)?;
    let mut res = TileCovering::new(small, tile, Curve::new(out)?, tc.oriented)?;
    res.frame = tc.frame.after_expand(o, g)?;
    Ok(res)
}

/// Inverse of [`shrink_covering`]: each segment becomes the level-1
/// covering with the same (scaled) endpoints.
pub fn lift_covering(d: &TileCovering, lambda: Chirality) -> Result<TileCovering, CurveError> {
    let o = d.ambient.origin();
    let g = lambda.gamma();
    let mut letters = vec![lambda];
    letters.extend_from_slice(d.ambient.word().letters());
    let big = Ambient::new(o, Word::new(letters))?;
    let psi = |z: EisensteinInt| -> Result<EisensteinInt, LatticeError> {
        o.checked_add(z.checked_sub(o)?.checked_mul(g)?)
    };
    let curve = lift_curve(d.curve.segments(), lambda, &psi)?;
    let tile = big.tile(psi(d.tile.center)?, d.tile.level + 1)?;
    let mut res = TileCovering::new(big, tile, curve, d.oriented)?;
    res.frame = d.frame.after_contract(o, g)?;
    Ok(res)
}

fn lift_curve(
    segs: &[DirectedSegment],
    lambda: Chirality,
    psi: &dyn Fn(EisensteinInt) -> Result<EisensteinInt, LatticeError>,
) -> Result<Curve, CurveError> {
    let table = level_one_table(lambda);
    let mut out = Vec::with_capacity(segs.len() * 7);
    for s in segs {
        let h = psi(s.hexagon())?;
        let key = (psi(s.start)? - h, psi(s.end())? - h);
        let child = table.get(&key).ok_or(CurveError::NoChildCovering(key.0 + h, key.1 + h))?;
        out.extend(child.iter().map(|c| c.translated(h)));
    }
    Curve::new(out)
}

#[derive(Deserialize)]
struct GoldenCurve {
    segments: Vec<DirectedSegment>,
}

#[derive(Deserialize)]
struct GoldenLevelOne {
    #[serde(rename = "+")]
    plus: Vec<GoldenCurve>,
    #[serde(rename = "-")]
    minus: Vec<GoldenCurve>,
}

/// The enumerated level-1 coverings of the tile at 0, as frozen data.
pub const LEVEL_ONE_JSON: &str = include_str!("../data/level1.json");

type EndpointTable = HashMap<(EisensteinInt, EisensteinInt), Vec<DirectedSegment>>;

fn level_one_table(lambda: Chirality) -> &'static EndpointTable {
    static TABLES: OnceLock<[EndpointTable; 2]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let golden: GoldenLevelOne =
            serde_json::from_str(LEVEL_ONE_JSON).expect("level-1 golden data parses");
        let build = |v: Vec<GoldenCurve>| {
            v.into_iter()
                .map(|c| {
                    let c = Curve::new(c.segments).expect("golden curve is valid");
                    ((c.start(), c.end()), c.segments)
                })
                .collect::<EndpointTable>()
        };
        [build(golden.plus), build(golden.minus)]
    });
    match lambda {
        Chirality::Plus => &tables[0],
        Chirality::Minus => &tables[1],
    }
}

/// The six oriented level-0 coverings of the hexagon at `h`.
pub fn hexagon_coverings(h: EisensteinInt) -> Vec<Curve> {
    let mut out = Vec::new();
    for j in [0, 2, 4] {
        let p = h + EisensteinInt::omega_pow(j);
        for d in 0..6 {
            let s = DirectedSegment { start: p, dir: d };
            if s.hexagon() == h {
                out.push(Curve { segments: vec![s] });
            }
        }
    }
    out
}

/// Canonical curves covering the level-`|word|` tile at 0, one per ordered
/// pair of `W`-vertices, sorted by (start, end).
pub fn canonical_curves_at_origin(word: &Word) -> Result<Vec<Curve>, CurveError> {
    let mut curves = hexagon_coverings(EisensteinInt::ZERO);
    for &l in word.letters().iter().rev() {
        let g = l.gamma();
        let psi = |z: EisensteinInt| z.checked_mul(g);
        curves = curves
            .iter()
            .map(|c| lift_curve(c.segments(), l, &psi))
            .collect::<Result<_, _>>()?;
    }
    curves.sort_by_key(|c| (c.start(), c.end()));
    Ok(curves)
}

/// The 6 oriented (or 3 nonoriented) canonical coverings of `t`.
pub fn canonical_coverings(amb: &Ambient, t: TileRef, oriented: bool) -> Result<Vec<TileCovering>, CurveError> {
    let t = amb.tile(t.center, t.level)?;
    let prefix = amb.word().prefix(t.level);
    let mut out = Vec::new();
    for c in canonical_curves_at_origin(&prefix)? {
        if !oriented && c.start() > c.end() {
            continue;
        }
        out.push(TileCovering {
            ambient: amb.clone(),
            tile: t,
            curve: c.translated(t.center),
            oriented,
            frame: Frame::IDENTITY,
        });
    }
    Ok(out)
}
