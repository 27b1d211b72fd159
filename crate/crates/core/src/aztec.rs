//! Discrete-time interlacing dynamics in shifted coordinates `z_k^n = x_k^n + n`
//! and the Aztec-diamond domino tilings it produces.
//!
//! Levels interlace weakly, `z_k^{n+1} ≤ z_k^n ≤ z_{k+1}^{n+1}`. During step
//! `t` only levels `≤ t` are active; they are swept from level `t` down to 1.
//! A particle is blocked when jumping would overtake `z_k^{n-1}`, is carried
//! along when it sits on `z_{k-1}^{n-1}`, and otherwise jumps with
//! probability `p`. At `p = 1/2` the tiling after `n` steps is uniform on the
//! tilings of the order-`n` diamond.
//!
//! Tiling geometry works in diagonal coordinates: a unit square with lower
//! left corner `(a, b)` has `u = a + b + 1`, `v = b - a`. Level `m` particles
//! sit on the diagonal `u = 2m - n - 1` at `v = 2z - n`.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest diamond order accepted by [`sample_uniform`].
pub const MAX_ORDER: usize = 64;
/// Sorted cell pairs identifying a tiling.
pub type TilingKey = Vec<[(i64, i64); 2]>;

/// Largest order accepted by [`enumerate_tilings`].
pub const MAX_ENUMERATION_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZArray {
    /// `levels[m-1][k-1] = z_k^m`.
    levels: Vec<Vec<i64>>,
    /// Whether `z_k^m` moved during the last step.
    moved: Vec<Vec<bool>>,
    pub step: u64,
}

impl ZArray {
    /// Initial state `z_k^m = k - 1` on `n` levels.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("need at least one level"));
        }
        let levels: Vec<Vec<i64>> = (1..=n).map(|m| (0..m as i64).collect()).collect();
        let moved = (1..=n).map(|m| vec![false; m]).collect();
        Ok(Self { levels, moved, step: 0 })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    /// `z_k^m` with 1-based indices.
    pub fn get(&self, k: usize, m: usize) -> i64 {
        self.levels[m - 1][k - 1]
    }

    pub fn moved(&self, k: usize, m: usize) -> bool {
        self.moved[m - 1][k - 1]
    }

    pub fn is_interlaced(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            if !level.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            if let Some(upper) = self.levels.get(i + 1) {
                for (k, &z) in level.iter().enumerate() {
                    if !(upper[k] <= z && z <= upper[k + 1]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// One step with Bernoulli(`p`) jumps.
    pub fn step<R: Rng + ?Sized>(&mut self, p: f64, rng: &mut R) -> Result<()> {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("p must lie in (0, 1), got {p}")));
        }
        self.step_with(|_, _| rng.gen::<f64>() < p);
        Ok(())
    }

    /// One step where `coin(k, m)` decides the free jumps of `z_k^m`. The
    /// coin is only consulted for particles that are neither blocked nor
    /// carried.
    pub fn step_with<C: FnMut(usize, usize) -> bool>(&mut self, mut coin: C) {
        let t = (self.step + 1) as usize;
        for row in &mut self.moved {
            row.iter_mut().for_each(|f| *f = false);
        }
        for m in (1..=t.min(self.depth())).rev() {
            for k in 1..=m {
                let z = self.get(k, m);
                // the lower level has not been swept yet, so these are its old positions
                let blocked = k < m && z + 1 > self.get(k, m - 1);
                let carried = k >= 2 && z == self.get(k - 1, m - 1);
                let jump = !blocked && (carried || coin(k, m));
                if jump {
                    self.levels[m - 1][k - 1] += 1;
                    self.moved[m - 1][k - 1] = true;
                }
            }
        }
        self.step += 1;
        assert!(self.is_interlaced(), "interlacing violated");
    }

    /// Domino tiling of the order-`step` diamond.
    pub fn to_domino(&self) -> Result<DominoTiling> {
        let n = self.step as usize;
        if n == 0 || n > self.depth() {
            return Err(invalid(format!("tiling needs 1 ≤ step ≤ {}, step is {n}", self.depth())));
        }
        let ni = n as i64;
        let mut tiles = Vec::with_capacity(n * (n + 1));
        // uncovered squares on the diagonal below the current particle line
        let mut open: Vec<i64> = (0..ni).collect();
        for m in 1..=n {
            let u = 2 * m as i64 - ni - 1;
            let level = &self.levels[m - 1];
            let holes: Vec<i64> = (0..=ni).filter(|r| !level.contains(r)).collect();
            if holes.len() != open.len() {
                return Err(Error::Coverage(format!(
                    "level {m}: {} holes for {} open squares",
                    holes.len(),
                    open.len()
                )));
            }
            for (&s, &h) in open.iter().zip(&holes) {
                let d = h - s;
                if d != 0 && d != 1 {
                    return Err(Error::Coverage(format!("level {m}: hole {h} cannot meet square {s}")));
                }
                let kind = if d == 0 { DominoKind::DarkGray } else { DominoKind::White };
                tiles.push(Domino::from_diagonal(kind, (u - 1, -ni + 1 + 2 * s), (u, -ni + 2 * h)));
            }
            let mut covered = Vec::with_capacity(m);
            for (k, &r) in level.iter().enumerate() {
                let moved = self.moved[m - 1][k];
                let s = if moved { r - 1 } else { r };
                if !(0..ni).contains(&s) {
                    return Err(Error::Coverage(format!("particle ({}, {m}) leaves the diamond", k + 1)));
                }
                let kind = if moved { DominoKind::LightGray } else { DominoKind::MiddleGray };
                tiles.push(Domino::from_diagonal(kind, (u, -ni + 2 * r), (u + 1, -ni + 1 + 2 * s)));
                covered.push(s);
            }
            open = (0..ni).filter(|s| !covered.contains(s)).collect();
        }
        if !open.is_empty() {
            return Err(Error::Coverage(format!("{} squares left uncovered", open.len())));
        }
        let tiling = DominoTiling { order: n, tiles };
        tiling.check_coverage()?;
        Ok(tiling)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominoKind {
    /// On a particle that moved in the last step.
    LightGray,
    /// On a particle that did not move.
    MiddleGray,
    DarkGray,
    White,
}

/// A domino as its two unit squares, each given by its lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Domino {
    pub kind: DominoKind,
    pub cells: [(i64, i64); 2],
}

impl Domino {
    fn from_diagonal(kind: DominoKind, p: (i64, i64), q: (i64, i64)) -> Self {
        let cell = |(u, v): (i64, i64)| ((u - v - 1) / 2, (u + v - 1) / 2);
        let mut cells = [cell(p), cell(q)];
        cells.sort();
        Self { kind, cells }
    }

    pub fn is_horizontal(&self) -> bool {
        self.cells[0].1 == self.cells[1].1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoTiling {
    pub order: usize,
    pub tiles: Vec<Domino>,
}

impl DominoTiling {
    /// Unit squares of the order-`n` diamond: `|2a + 1| + |2b + 1| ≤ 2n`.
    pub fn region(n: usize) -> HashSet<(i64, i64)> {
        let n = n as i64;
        (-n..n)
            .flat_map(|a| (-n..n).map(move |b| (a, b)))
            .filter(|&(a, b)| (2 * a + 1).abs() + (2 * b + 1).abs() <= 2 * n)
            .collect()
    }

    /// Fails unless the dominoes cover the diamond exactly once.
    pub fn check_coverage(&self) -> Result<()> {
        let region = Self::region(self.order);
        let mut seen = HashSet::with_capacity(region.len());
        for d in &self.tiles {
            let [p, q] = d.cells;
            let adjacent = (p.0 - q.0).abs() + (p.1 - q.1).abs() == 1;
            if !adjacent {
                return Err(Error::Coverage(format!("cells {p:?} and {q:?} are not adjacent")));
            }
            for c in d.cells {
                if !region.contains(&c) {
                    return Err(Error::Coverage(format!("cell {c:?} outside the diamond")));
                }
                if !seen.insert(c) {
                    return Err(Error::Coverage(format!("cell {c:?} covered twice")));
                }
            }
        }
        if seen.len() != region.len() {
            return Err(Error::Coverage(format!("{} of {} cells covered", seen.len(), region.len())));
        }
        Ok(())
    }

    pub fn count(&self, kind: DominoKind) -> usize {
        self.tiles.iter().filter(|d| d.kind == kind).count()
    }

    /// Order-independent key: sorted cell pairs.
    pub fn key(&self) -> TilingKey {
        let mut k: Vec<_> = self.tiles.iter().map(|d| d.cells).collect();
        k.sort();
        k
    }
}

/// Runs `n` steps at `p = 1/2` from the initial state and returns the tiling.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DominoTiling> {
    if n == 0 || n > MAX_ORDER {
        return Err(invalid(format!("order must lie in 1..={MAX_ORDER}")));
    }
    let mut a = ZArray::new(n)?;
    for _ in 0..n {
        a.step(0.5, rng)?;
    }
    a.to_domino()
}

/// Keys (see [`DominoTiling::key`]) of all tilings of the order-`n` diamond,
/// by exhaustive search.
pub fn enumerate_tilings(n: usize) -> Result<Vec<TilingKey>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(invalid(format!("enumeration supports orders 1..={MAX_ENUMERATION_ORDER}")));
    }
    let mut cells: Vec<(i64, i64)> = DominoTiling::region(n).into_iter().collect();
    cells.sort();
    let region: HashSet<(i64, i64)> = cells.iter().copied().collect();
    let mut out = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    let mut current = Vec::new();
    fn go(
        cells: &[(i64, i64)],
        region: &HashSet<(i64, i64)>,
        used: &mut std::collections::BTreeSet<(i64, i64)>,
        current: &mut Vec<[(i64, i64); 2]>,
        out: &mut Vec<Vec<[(i64, i64); 2]>>,
    ) {
        let Some(&c) = cells.iter().find(|c| !used.contains(c)) else {
            let mut t = current.clone();
            t.sort();
            out.push(t);
            return;
        };
        for nb in [(c.0 + 1, c.1), (c.0, c.1 + 1)] {
            if region.contains(&nb) && !used.contains(&nb) {
                used.insert(c);
                used.insert(nb);
                current.push([c, nb]);
                go(cells, region, used, current, out);
                current.pop();
                used.remove(&nb);
                used.remove(&c);
            }
        }
    }
    go(&cells, &region, &mut used, &mut current, &mut out);
    Ok(out)
}
