//! 2+1-dimensional growth: interlacing particle arrays driven by rate-one
//! clocks with blocking and pushing, their height function and the lozenge
//! tiling they encode.
//!
//! Level `n` holds `x_1^n < x_2^n < … < x_n^n` and neighbouring levels satisfy
//! `x_k^{n+1} < x_k^n ≤ x_{k+1}^{n+1}`. The leftmost particles `x_1^n` perform
//! TASEP with step initial data.

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingArray {
    /// `levels[n-1][k-1] = x_k^n`.
    levels: Vec<Vec<i64>>,
    pub time: f64,
}

impl InterlacingArray {
    /// Packed initial state `x_k^n = -n + k - 1`.
    pub fn init_step(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("need at least one level"));
        }
        let levels = (1..=n as i64).map(|m| (1..=m).map(|k| -m + k - 1).collect()).collect();
        Ok(Self { levels, time: 0.0 })
    }

    /// Builds an array from explicit levels, checking interlacing.
    pub fn from_levels(levels: Vec<Vec<i64>>) -> Result<Self> {
        let a = Self { levels, time: 0.0 };
        if a.levels.is_empty() || a.levels.iter().enumerate().any(|(i, l)| l.len() != i + 1) {
            return Err(invalid("level n must hold exactly n particles"));
        }
        if !a.is_interlaced() {
            return Err(invalid("levels do not interlace"));
        }
        Ok(a)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    /// `x_k^n` with 1-based indices.
    pub fn get(&self, k: usize, n: usize) -> i64 {
        self.levels[n - 1][k - 1]
    }

    /// Row `{x_1^n}_n`: the TASEP particles, rightmost first.
    pub fn tasep_row(&self) -> Vec<i64> {
        self.levels.iter().map(|l| l[0]).collect()
    }

    pub fn is_interlaced(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            if !level.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            if let Some(upper) = self.levels.get(i + 1) {
                for (k, &x) in level.iter().enumerate() {
                    if !(upper[k] < x && x <= upper[k + 1]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rings the clock of `x_k^m`. Returns how many particles moved: 0 when
    /// blocked by `x_k^{m-1}`, otherwise the length of the pushed chain
    /// `x_k^m = x_{k+1}^{m+1} = … = x_{k+c-1}^{m+c-1}`.
    pub fn attempt_jump(&mut self, k: usize, m: usize) -> Result<usize> {
        if m == 0 || m > self.depth() || k == 0 || k > m {
            return Err(Error::IndexOutOfRange(format!("particle ({k}, {m})")));
        }
        let x = self.get(k, m);
        if k < m && x == self.get(k, m - 1) - 1 {
            return Ok(0);
        }
        let mut c = 1;
        while m + c <= self.depth() && self.get(k + c, m + c) == x {
            c += 1;
        }
        for j in 0..c {
            self.levels[m - 1 + j][k - 1 + j] += 1;
        }
        debug_assert!(self.is_interlaced());
        Ok(c)
    }

    /// Runs the dynamics for time `t`: events at rate `N(N+1)/2`, each ringing
    /// a uniformly chosen clock.
    pub fn simulate<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(invalid("time must be finite and non-negative"));
        }
        let mut a = self.clone();
        let n = a.depth();
        let total = n * (n + 1) / 2;
        let clock = Exp::new(total as f64).expect("positive rate");
        let mut now = 0.0;
        loop {
            now += clock.sample(rng);
            if now > t {
                break;
            }
            let (k, m) = triangle_index(rng.gen_range(0..total));
            a.attempt_jump(k, m)?;
        }
        a.time = self.time + t;
        assert!(a.is_interlaced(), "interlacing violated");
        Ok(a)
    }

    /// `h(x, n) = #{k : x_k^n > x}` for half-integer `x`.
    pub fn height(&self, x: f64, n: usize) -> Result<usize> {
        if n == 0 || n > self.depth() {
            return Err(Error::IndexOutOfRange(format!("level {n}")));
        }
        if (x - x.floor() - 0.5).abs() > 1e-12 {
            return Err(invalid(format!("height is defined at half-integers, got {x}")));
        }
        Ok(self.levels[n - 1].iter().filter(|&&p| p as f64 > x).count())
    }

    /// Heights `h(x + 1/2, n)` for integer `x` in `lo..=hi` on every level.
    pub fn height_field(&self, lo: i64, hi: i64) -> HeightField {
        let rows =
            self.levels.iter().map(|l| (lo..=hi).map(|x| l.iter().filter(|&&p| p > x).count()).collect()).collect();
        HeightField { lo, rows }
    }

    /// Lozenge tiling with a light-gray tile at every particle.
    pub fn to_lozenge(&self) -> LozengeTiling {
        LozengeTiling::from_array(self)
    }

    /// Recovers the particle array from the light-gray tiles of `tiling`.
    pub fn from_lozenge(tiling: &LozengeTiling) -> Result<Self> {
        let n = tiling.depth;
        let mut levels = vec![Vec::new(); n];
        for t in tiling.tiles.iter().filter(|t| t.kind == LozengeKind::LightGray) {
            let level = n as i64 - t.line;
            if level < 1 || level > n as i64 {
                return Err(invalid("light-gray tile outside the drawn levels"));
            }
            levels[level as usize - 1].push(t.edge - level);
        }
        for l in &mut levels {
            l.sort_unstable();
        }
        Self::from_levels(levels)
    }
}

/// `k`-th particle in level-major order, as `(k, m)` 1-based.
fn triangle_index(idx: usize) -> (usize, usize) {
    let mut m = 1;
    let mut rest = idx;
    while rest >= m {
        rest -= m;
        m += 1;
    }
    (rest + 1, m)
}

/// Height function sampled at `x + 1/2` for integer `x ≥ lo`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightField {
    pub lo: i64,
    /// `rows[n-1][x - lo] = h(x + 1/2, n)`.
    pub rows: Vec<Vec<usize>>,
}

impl HeightField {
    /// Particle positions on level `n`, read off the unit down-steps.
    pub fn particles(&self, n: usize) -> Vec<i64> {
        let row = &self.rows[n - 1];
        let mut out = Vec::new();
        for (i, w) in row.windows(2).enumerate() {
            if w[0] > w[1] {
                out.push(self.lo + i as i64 + 1);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LozengeKind {
    /// Vertical tile at a particle.
    LightGray,
    /// Tile right of a particle, leaning left.
    White,
    /// Tile leaning right.
    DarkGray,
}

/// One lozenge on the triangular lattice. Vertex `(i, j)` is point `i` on
/// horizontal line `j`, at `(i + j/2, j·√3/2)` in the plane.
///
/// - light-gray: crosses line `j` at edge `[i, i+1]`
/// - dark-gray: in the strip above line `j`, vertices `(i,j) (i+1,j) (i+1,j+1) (i,j+1)`
/// - white: in the strip above line `j`, vertices `(i+1,j) (i+2,j) (i+1,j+1) (i,j+1)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lozenge {
    pub kind: LozengeKind,
    pub line: i64,
    pub edge: i64,
}

impl Lozenge {
    /// Corners in lattice coordinates, counter-clockwise.
    pub fn vertices(&self) -> [(i64, i64); 4] {
        let (i, j) = (self.edge, self.line);
        match self.kind {
            LozengeKind::LightGray => [(i, j), (i + 1, j - 1), (i + 1, j), (i, j + 1)],
            LozengeKind::DarkGray => [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)],
            LozengeKind::White => [(i + 1, j), (i + 2, j), (i + 1, j + 1), (i, j + 1)],
        }
    }

    /// Unit triangles covered, as `(strip, index, up)`: the up triangle with
    /// base edge `index` on line `strip`, or the down triangle with top edge
    /// `index` on line `strip + 1`.
    pub fn triangles(&self) -> [(i64, i64, bool); 2] {
        let (i, j) = (self.edge, self.line);
        match self.kind {
            LozengeKind::LightGray => [(j - 1, i, false), (j, i, true)],
            LozengeKind::DarkGray => [(j, i, true), (j, i, false)],
            LozengeKind::White => [(j, i, false), (j, i + 1, true)],
        }
    }
}

/// Particle `x_k^n` sits on line `N - n` at edge `x_k^n + n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LozengeTiling {
    pub depth: usize,
    pub tiles: Vec<Lozenge>,
}

impl LozengeTiling {
    fn from_array(a: &InterlacingArray) -> Self {
        let n = a.depth();
        let edges: Vec<Vec<i64>> =
            a.levels.iter().enumerate().map(|(i, l)| l.iter().map(|x| x + i as i64 + 1).collect()).collect();
        let lo = -1;
        let hi = edges.iter().flatten().copied().max().unwrap_or(0) + 1;
        let mut tiles = Vec::new();
        for (i, row) in edges.iter().enumerate() {
            let line = (n - 1 - i) as i64;
            for &e in row {
                tiles.push(Lozenge { kind: LozengeKind::LightGray, line, edge: e });
            }
        }
        // strip above line j pairs free up/down triangles; the side of each
        // free triangle is fixed by the particles on the two bounding lines
        for j in 0..n as i64 {
            let level = n as i64 - j;
            let below = &edges[level as usize - 1];
            let above: &[i64] = if level >= 2 { &edges[level as usize - 2] } else { &[] };
            let mut e = lo;
            while e <= hi {
                if below.contains(&e) {
                    // U(e) taken; D(e) is free unless the level above uses it
                    if !above.contains(&e) {
                        tiles.push(Lozenge { kind: LozengeKind::White, line: j, edge: e });
                        e += 1;
                        while e <= hi && !above.contains(&e) && !below.contains(&e) {
                            tiles.push(Lozenge { kind: LozengeKind::White, line: j, edge: e });
                            e += 1;
                        }
                        if e > hi {
                            break;
                        }
                        // reached D(e) taken by `above`; U(e) was consumed by the white tile
                        e += 1;
                        continue;
                    }
                    e += 1;
                    continue;
                }
                tiles.push(Lozenge { kind: LozengeKind::DarkGray, line: j, edge: e });
                e += 1;
            }
        }
        tiles.sort();
        Self { depth: n, tiles }
    }

    pub fn count(&self, kind: LozengeKind) -> usize {
        self.tiles.iter().filter(|t| t.kind == kind).count()
    }

    /// Light-gray tiles on the line of level `n`.
    pub fn light_gray_on_level(&self, n: usize) -> usize {
        let line = self.depth as i64 - n as i64;
        self.tiles.iter().filter(|t| t.kind == LozengeKind::LightGray && t.line == line).count()
    }

    /// True when no unit triangle is covered twice.
    pub fn is_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.tiles.iter().flat_map(|t| t.triangles()).all(|tri| seen.insert(tri))
    }
}

/// `ξ_k^n = √(2N) (x_k^n - t) / √(2t)` for every array in `samples`.
pub fn diffusion_rescale(samples: &[InterlacingArray], t: f64) -> Result<Vec<Vec<Vec<f64>>>> {
    if !(t > 0.0) {
        return Err(invalid("rescaling needs t > 0"));
    }
    Ok(samples
        .iter()
        .map(|a| {
            let scale = (2.0 * a.depth() as f64).sqrt() / (2.0 * t).sqrt();
            a.levels.iter().map(|l| l.iter().map(|&x| scale * (x as f64 - t)).collect()).collect()
        })
        .collect())
}
