//! The substitution hierarchy of hexagon tilings.
//!
//! A level-`n` tile is addressed by its center and level. The level-`n`
//! centers of an [`Ambient`] form the coset `origin + (1+ω)·g(n)·Z[ω]`
//! with `g(n) = γ(λ₁)⋯γ(λₙ)`, and a tile is the union of its central child
//! and the six children at `center + g(n−1)(1+ω)ω^j`. Membership and
//! ancestor queries are digit decompositions, so nothing global is stored.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::lattice::{gamma_div_rem, EisensteinInt, LatticeError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("{0} is not a hexagon center")]
    NotACenter(EisensteinInt),
    #[error("level-0 tiles have no children")]
    LevelZero,
    #[error("level {level} exceeds the chirality prefix length {prefix}")]
    LevelExceedsPrefix { level: usize, prefix: usize },
    #[error("{0} is not the center of a level-{1} tile")]
    NotATileCenter(EisensteinInt, usize),
    #[error("malformed tile boundary: {0}")]
    Frontier(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A tile: its center and level. Only meaningful relative to an [`Ambient`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileRef {
    pub center: EisensteinInt,
    pub level: usize,
}

impl TileRef {
    pub fn new(center: EisensteinInt, level: usize) -> Self {
        TileRef { center, level }
    }
}

/// The base point `x` and the chirality prefix that fix the hierarchy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    origin: EisensteinInt,
    word: Word,
    // g[k] = γ(λ₁)⋯γ(λ_k)
    g: Vec<EisensteinInt>,
}

/// Boundary of one tile, traced counterclockwise from its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileFrontier {
    pub vertices: Vec<EisensteinInt>,
    /// `sides[i]` runs from `vertices[i]` to `vertices[i + 1]` as honeycomb edges.
    pub sides: Vec<Vec<(EisensteinInt, EisensteinInt)>>,
    /// `neighbors[i]` is the tile across `sides[i]`.
    pub neighbors: Vec<TileRef>,
}

/// The curve vertex class `W`.
pub const W_CLASS: u8 = 1;

/// The six offsets from a center to the adjacent centers, `(1+ω)ω^j`.
pub fn hex_neighbor_offsets() -> [EisensteinInt; 6] {
    std::array::from_fn(|j| EisensteinInt::HEX_STEP.rotate(j as i64))
}

/// The three hexagon centers around a honeycomb vertex, in increasing order.
pub fn hexagons_around(v: EisensteinInt) -> Result<[EisensteinInt; 3], TilingError> {
    let first = match v.color_class() {
        1 => 0,
        2 => 1,
        _ => return Err(TilingError::NotACenter(v)),
    };
    let mut hs = [0, 2, 4].map(|j| v - EisensteinInt::omega_pow(first + j));
    hs.sort();
    Ok(hs)
}

/// The six corners of the unit hexagon centered at `h`, counterclockwise from `h + 1`.
pub fn hexagon_corners(h: EisensteinInt) -> [EisensteinInt; 6] {
    std::array::from_fn(|j| h + EisensteinInt::omega_pow(j as i64))
}

impl Ambient {
    pub fn new(origin: EisensteinInt, word: Word) -> Result<Self, TilingError> {
        if origin.color_class() != 0 {
            return Err(TilingError::NotACenter(origin));
        }
        let mut g = Vec::with_capacity(word.len() + 1);
        g.push(EisensteinInt::ONE);
        for l in word.letters() {
            let next = g.last().unwrap().checked_mul(l.gamma())?;
            g.push(next);
        }
        Ok(Ambient { origin, word, g })
    }

    pub fn origin(&self) -> EisensteinInt {
        self.origin
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Number of materialized levels.
    pub fn depth(&self) -> usize {
        self.word.len()
    }

    /// `γ(λ₁)⋯γ(λ_k)`.
    pub fn g(&self, k: usize) -> EisensteinInt {
        self.g[k]
    }

    /// Same origin, word truncated or kept.
    pub fn with_word(&self, word: Word) -> Result<Self, TilingError> {
        Ambient::new(self.origin, word)
    }

    fn check_level(&self, level: usize) -> Result<(), TilingError> {
        if level > self.depth() {
            return Err(TilingError::LevelExceedsPrefix { level, prefix: self.depth() });
        }
        Ok(())
    }

    /// Validates that `center` is a level-`level` center of this ambient.
    pub fn tile(&self, center: EisensteinInt, level: usize) -> Result<TileRef, TilingError> {
        self.check_level(level)?;
        let step = EisensteinInt::HEX_STEP.checked_mul(self.g(level))?;
        if !step.divides(center.checked_sub(self.origin)?) {
            return Err(TilingError::NotATileCenter(center, level));
        }
        Ok(TileRef::new(center, level))
    }

    /// The tile centered at the origin.
    pub fn origin_tile(&self, level: usize) -> Result<TileRef, TilingError> {
        self.tile(self.origin, level)
    }

    /// Central child first, then the six outer children counterclockwise.
    pub fn child_centers(&self, t: TileRef) -> Result<[TileRef; 7], TilingError> {
        if t.level == 0 {
            return Err(TilingError::LevelZero);
        }
        self.check_level(t.level)?;
        let off = self.g(t.level - 1).checked_mul(EisensteinInt::HEX_STEP)?;
        let mut out = [TileRef::new(t.center, t.level - 1); 7];
        for j in 0..6 {
            out[j + 1].center = t.center.checked_add(off.rotate(j as i64))?;
        }
        Ok(out)
    }

    /// The level-`target_level` tile containing hexagon `h`.
    pub fn ancestor_at(&self, h: EisensteinInt, target_level: usize) -> Result<TileRef, TilingError> {
        self.check_level(target_level)?;
        if h.color_class() != 0 {
            return Err(TilingError::NotACenter(h));
        }
        let mut z = h.checked_sub(self.origin)?.checked_div_exact(EisensteinInt::HEX_STEP)?;
        for l in &self.word.letters()[..target_level] {
            z = gamma_div_rem(z, *l)?.0;
        }
        let center = self
            .origin
            .checked_add(z.checked_mul(self.g(target_level))?.checked_mul(EisensteinInt::HEX_STEP)?)?;
        Ok(TileRef::new(center, target_level))
    }

    /// Ancestors of `h` at every level `0..=top`.
    pub fn ancestor_chain(&self, h: EisensteinInt, top: usize) -> Result<Vec<TileRef>, TilingError> {
        self.check_level(top)?;
        if h.color_class() != 0 {
            return Err(TilingError::NotACenter(h));
        }
        let mut z = h.checked_sub(self.origin)?.checked_div_exact(EisensteinInt::HEX_STEP)?;
        let mut out = Vec::with_capacity(top + 1);
        for level in 0..=top {
            let center = self.origin
                + z.checked_mul(self.g(level))?.checked_mul(EisensteinInt::HEX_STEP)?;
            out.push(TileRef::new(center, level));
            if level < top {
                z = gamma_div_rem(z, self.word.letters()[level])?.0;
            }
        }
        Ok(out)
    }

    pub fn contains(&self, t: TileRef, h: EisensteinInt) -> bool {
        h.color_class() == 0
            && self.ancestor_at(h, t.level).map(|a| a == t).unwrap_or(false)
    }

    /// Whether `inner` is a subtile of `outer` (or equal to it).
    pub fn tile_within(&self, inner: TileRef, outer: TileRef) -> bool {
        inner.level <= outer.level && self.contains(outer, inner.center)
    }

    /// The `7^level` hexagon centers of `t`, in recursive child order.
    pub fn tile_hexagons(&self, t: TileRef) -> Result<Vec<EisensteinInt>, TilingError> {
        self.check_level(t.level)?;
        let mut out = Vec::with_capacity(7usize.pow(t.level as u32));
        let mut stack = vec![t];
        while let Some(cur) = stack.pop() {
            if cur.level == 0 {
                out.push(cur.center);
            } else {
                let ch = self.child_centers(cur)?;
                stack.extend(ch.iter().rev());
            }
        }
        Ok(out)
    }

    /// All level-`level` subtiles of `t`.
    pub fn subtiles(&self, t: TileRef, level: usize) -> Result<Vec<TileRef>, TilingError> {
        let mut cur = vec![t];
        for _ in level..t.level {
            let mut next = Vec::with_capacity(cur.len() * 7);
            for x in cur {
                next.extend(self.child_centers(x)?);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// The six tiles sharing a side with `t`.
    pub fn neighbors(&self, t: TileRef) -> Result<[TileRef; 6], TilingError> {
        self.check_level(t.level)?;
        let off = self.g(t.level).checked_mul(EisensteinInt::HEX_STEP)?;
        Ok(std::array::from_fn(|j| TileRef::new(t.center + off.rotate(j as i64), t.level)))
    }

    /// `center + g(level)·ω^j`, `j = 0..6`.
    pub fn tile_vertices(&self, t: TileRef) -> [EisensteinInt; 6] {
        let g = self.g(t.level);
        std::array::from_fn(|j| t.center + g.rotate(j as i64))
    }

    /// The three vertices of `t` in `W` (even powers of ω).
    pub fn w_vertices(&self, t: TileRef) -> [EisensteinInt; 3] {
        let g = self.g(t.level);
        [0, 2, 4].map(|j| t.center + g.rotate(j))
    }

    pub fn is_vertex_of(&self, t: TileRef, p: EisensteinInt) -> bool {
        self.tile_vertices(t).contains(&p)
    }

    /// Whether honeycomb vertex `v` is common to three distinct level-`level` tiles.
    pub fn is_tiling_vertex(&self, v: EisensteinInt, level: usize) -> Result<bool, TilingError> {
        let hs = hexagons_around(v)?;
        let a = hs.map(|h| self.ancestor_at(h, level));
        let [a0, a1, a2] = [a[0].clone()?, a[1].clone()?, a[2].clone()?];
        Ok(a0 != a1 && a1 != a2 && a0 != a2)
    }

    /// Traces the boundary of `t` and splits it at the points common to three tiles.
    pub fn tile_frontier(&self, t: TileRef) -> Result<TileFrontier, TilingError> {
        let hexes = self.tile_hexagons(t)?;
        let set: HashSet<EisensteinInt> = hexes.iter().copied().collect();
        let mut next: HashMap<EisensteinInt, (EisensteinInt, EisensteinInt)> = HashMap::new();
        for &h in &hexes {
            let corners = hexagon_corners(h);
            for (j, off) in hex_neighbor_offsets().iter().enumerate() {
                if !set.contains(&(h + *off)) {
                    // counterclockwise edge ω^j → ω^{j+1}, interior on the left
                    let from = corners[j];
                    let to = corners[(j + 1) % 6];
                    if next.insert(from, (to, h)).is_some() {
                        return Err(TilingError::Frontier(format!("pinch point at {from}")));
                    }
                }
            }
        }
        let mut vertex_set = Vec::new();
        for &p in next.keys() {
            if self.is_tiling_vertex(p, t.level)? {
                vertex_set.push(p);
            }
        }
        vertex_set.sort();
        let start = *vertex_set
            .first()
            .ok_or_else(|| TilingError::Frontier("no vertex on boundary".into()))?;
        let vertex_lookup: HashSet<EisensteinInt> = vertex_set.iter().copied().collect();

        let mut vertices = vec![start];
        let mut sides: Vec<Vec<(EisensteinInt, EisensteinInt)>> = vec![Vec::new()];
        let mut neighbors = Vec::new();
        let mut cur = start;
        let mut steps = 0usize;
        loop {
            let (to, inside) = *next
                .get(&cur)
                .ok_or_else(|| TilingError::Frontier(format!("boundary breaks at {cur}")))?;
            let side = sides.last_mut().unwrap();
            if side.is_empty() {
                let outside = cur + to - inside;
                neighbors.push(self.ancestor_at(outside, t.level)?);
            }
            side.push((cur, to));
            steps += 1;
            if steps > next.len() {
                return Err(TilingError::Frontier("boundary does not close".into()));
            }
            cur = to;
            if cur == start {
                break;
            }
            if vertex_lookup.contains(&cur) {
                vertices.push(cur);
                sides.push(Vec::new());
            }
        }
        if steps != next.len() {
            return Err(TilingError::Frontier("boundary has several components".into()));
        }
        Ok(TileFrontier { vertices, sides, neighbors })
    }
}
