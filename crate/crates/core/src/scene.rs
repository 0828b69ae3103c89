//! Compressed-coordinate workspace shared by the covered-interval table, the
//! exposed-part enumerators and the solvers.
//!
//! All distinct endpoint coordinates of an instance are sorted once and
//! replaced by `u32` ids; every inner loop then runs on integer ids and only
//! lengths are mapped back to rationals (memoized per distinct length).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{DisjointUnion, Rat};
use crate::instance::Instance;

/// A compressed interval: a pair of coordinate ids with `start < end`.
pub(crate) type CIv = (u32, u32);

/// A canonical compressed disjoint union.
pub(crate) type CSet = Vec<CIv>;

/// Coordinate table plus the instance's intervals in compressed form.
pub(crate) struct Scene {
    /// Sorted distinct endpoint coordinates.
    pub coords: Vec<Rat>,
    /// Instance intervals by original index.
    pub ivs: Vec<CIv>,
    /// Integer coordinates scaled by `tick_denom`, when they fit i64; lets
    /// hot loops compute lengths without big-rational arithmetic.
    pub ticks: Option<Vec<i64>>,
    pub tick_denom: num_bigint::BigInt,
    /// `count_prefix[i][j]` = number of intervals with start id < i and
    /// end id < j; supports O(1) "is there an interval with start in
    /// [s1, s2] and end in [e1, e2]" queries.
    count_prefix: Vec<Vec<u32>>,
}

impl Scene {
    pub fn new(inst: &Instance) -> Self {
        let mut coord_set: BTreeSet<Rat> = BTreeSet::new();
        for iv in inst.intervals() {
            coord_set.insert(iv.start().clone());
            coord_set.insert(iv.end().clone());
        }
        let coords: Vec<Rat> = coord_set.into_iter().collect();
        let index: BTreeMap<&Rat, u32> = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i as u32))
            .collect();
        let ivs: Vec<CIv> = inst
            .intervals()
            .iter()
            .map(|iv| (index[iv.start()], index[iv.end()]))
            .collect();

        let m = coords.len();
        let mut count_prefix = vec![vec![0u32; m + 1]; m + 1];
        for &(s, e) in &ivs {
            count_prefix[s as usize + 1][e as usize + 1] += 1;
        }
        for i in 1..=m {
            for j in 0..=m {
                let above = count_prefix[i - 1][j];
                count_prefix[i][j] += above;
            }
        }
        for i in 0..=m {
            for j in 1..=m {
                let left = count_prefix[i][j - 1];
                count_prefix[i][j] += left;
            }
        }

        let (ticks, tick_denom) = scale_to_ticks(&coords);

        Scene {
            coords,
            ivs,
            ticks,
            tick_denom,
            count_prefix,
        }
    }

    pub fn coord(&self, id: u32) -> &Rat {
        &self.coords[id as usize]
    }

    pub fn n_coords(&self) -> u32 {
        self.coords.len() as u32
    }

    /// Number of instance intervals with start id in `[s1, s2]` and end id
    /// in `[e1, e2]` (empty ranges allowed).
    pub fn count_intervals_in(&self, s1: u32, s2: u32, e1: u32, e2: u32) -> u32 {
        if s1 > s2 || e1 > e2 {
            return 0;
        }
        let (s1, s2, e1, e2) = (s1 as usize, s2 as usize + 1, e1 as usize, e2 as usize + 1);
        self.count_prefix[s2][e2] + self.count_prefix[s1][e1]
            - self.count_prefix[s1][e2]
            - self.count_prefix[s2][e1]
    }

    pub fn rat_length(&self, set: &[CIv]) -> Rat {
        let mut acc = Rat::from_integer(0.into());
        for &(s, e) in set {
            acc += self.coord(e) - self.coord(s);
        }
        acc
    }

    pub fn decompress(&self, set: &[CIv]) -> DisjointUnion {
        DisjointUnion::from_pairs(
            set.iter()
                .map(|&(s, e)| (self.coord(s).clone(), self.coord(e).clone()))
                .collect(),
        )
    }

    pub fn coord_id(&self, c: &Rat) -> Option<u32> {
        self.coords.binary_search(c).ok().map(|i| i as u32)
    }
}

/// Brings all coordinates to a common denominator and converts them to i64
/// ticks if they stay comfortably small.
fn scale_to_ticks(coords: &[Rat]) -> (Option<Vec<i64>>, num_bigint::BigInt) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, ToPrimitive};

    let mut denom = BigInt::one();
    for c in coords {
        denom = denom.lcm(c.denom());
        if denom.to_i64().is_none_or(|d| d > 1_000_000_000) {
            return (None, BigInt::one());
        }
    }
    let mut ticks = Vec::with_capacity(coords.len());
    for c in coords {
        let scaled = (c * Rat::from_integer(denom.clone())).to_integer();
        match scaled.to_i64() {
            Some(v) if v.unsigned_abs() < (1 << 40) => ticks.push(v),
            _ => return (None, BigInt::one()),
        }
    }
    (Some(ticks), denom)
}

/// Memoizing length-to-cost evaluator over a scene; evaluates the cost
/// function once per distinct exposed length.
pub(crate) struct LengthCost<'a> {
    f: &'a crate::instance::CostFunction,
    tick_memo: BTreeMap<i64, crate::instance::Cost>,
    rat_memo: BTreeMap<Rat, crate::instance::Cost>,
}

impl<'a> LengthCost<'a> {
    pub fn new(f: &'a crate::instance::CostFunction) -> Self {
        LengthCost {
            f,
            tick_memo: BTreeMap::new(),
            rat_memo: BTreeMap::new(),
        }
    }

    /// Cost of the total length of a compressed set.
    pub fn eval_set(
        &mut self,
        scene: &Scene,
        set: &[CIv],
    ) -> Result<crate::instance::Cost, crate::error::Error> {
        if let Some(ticks) = &scene.ticks {
            let t: i64 = set
                .iter()
                .map(|&(s, e)| ticks[e as usize] - ticks[s as usize])
                .sum();
            if let Some(c) = self.tick_memo.get(&t) {
                return Ok(c.clone());
            }
            let len = Rat::new(t.into(), scene.tick_denom.clone());
            let c = self.f.eval(&len)?;
            self.tick_memo.insert(t, c.clone());
            Ok(c)
        } else {
            let len = scene.rat_length(set);
            if let Some(c) = self.rat_memo.get(&len) {
                return Ok(c.clone());
            }
            let c = self.f.eval(&len)?;
            self.rat_memo.insert(len, c.clone());
            Ok(c)
        }
    }

    /// Cost of the zero length, i.e. `f(0)`.
    pub fn eval_zero(&mut self) -> Result<crate::instance::Cost, crate::error::Error> {
        let zero = Rat::from_integer(0.into());
        if let Some(c) = self.rat_memo.get(&zero) {
            return Ok(c.clone());
        }
        let c = self.f.eval(&zero)?;
        self.rat_memo.insert(zero, c.clone());
        Ok(c)
    }
}

/// One covered interval: bounds plus the number of contained intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CovEntry {
    pub start: u32,
    pub end: u32,
    pub contained: u32,
}

/// Compressed covered-interval table in topological order (start decreasing,
/// end increasing on ties), with lookup indexes.
pub(crate) struct CovIndex {
    pub entries: Vec<CovEntry>,
    by_bounds: BTreeMap<CIv, u32>,
    /// Per end id: sorted start ids of covered intervals with that end.
    starts_by_end: Vec<Vec<u32>>,
    /// Per start id: sorted end ids of covered intervals with that start.
    ends_by_start: Vec<Vec<u32>>,
}

impl CovIndex {
    pub fn build(scene: &Scene) -> Self {
        CovIndex::build_for(scene, &scene.ivs)
    }

    /// Builds the table for an arbitrary interval list over the scene's
    /// coordinates (the full-set enumerator uses growing prefixes).
    pub fn build_for(scene: &Scene, ivs: &[CIv]) -> Self {
        let entries = covered_entries(ivs);
        let m = scene.n_coords() as usize;
        let mut by_bounds = BTreeMap::new();
        let mut starts_by_end = vec![Vec::new(); m];
        let mut ends_by_start = vec![Vec::new(); m];
        for (id, e) in entries.iter().enumerate() {
            by_bounds.insert((e.start, e.end), id as u32);
            starts_by_end[e.end as usize].push(e.start);
            ends_by_start[e.start as usize].push(e.end);
        }
        for v in starts_by_end.iter_mut().chain(ends_by_start.iter_mut()) {
            v.sort_unstable();
        }
        CovIndex {
            entries,
            by_bounds,
            starts_by_end,
            ends_by_start,
        }
    }

    pub fn id_of(&self, start: u32, end: u32) -> Option<u32> {
        self.by_bounds.get(&(start, end)).copied()
    }

    /// Least start `>= lo` among covered intervals ending exactly at `end`.
    pub fn min_start_ending_at(&self, end: u32, lo: u32) -> Option<u32> {
        let v = &self.starts_by_end[end as usize];
        let pos = v.partition_point(|&s| s < lo);
        v.get(pos).copied()
    }

    /// Greatest end `<= hi` among covered intervals starting exactly at
    /// `start`.
    pub fn max_end_starting_at(&self, start: u32, hi: u32) -> Option<u32> {
        let v = &self.ends_by_start[start as usize];
        let pos = v.partition_point(|&e| e <= hi);
        if pos == 0 {
            None
        } else {
            Some(v[pos - 1])
        }
    }

    /// Covered intervals strictly inside `(lo, hi)` (not touching either
    /// bound), sorted by (start, end).
    pub fn strictly_inside(&self, lo: u32, hi: u32) -> Vec<CIv> {
        let mut out: Vec<CIv> = self
            .entries
            .iter()
            .filter(|e| e.start > lo && e.end < hi)
            .map(|e| (e.start, e.end))
            .collect();
        out.sort_unstable();
        out
    }
}

/// All covered intervals of the interval list, each with its contained
/// count, sorted topologically: start decreasing, end increasing for equal
/// starts (so every proper subinterval precedes its supersets).
fn covered_entries(ivs: &[CIv]) -> Vec<CovEntry> {
    let mut starts: Vec<u32> = ivs.iter().map(|&(s, _)| s).collect();
    starts.sort_unstable();
    starts.dedup();
    let mut ends: Vec<u32> = ivs.iter().map(|&(_, e)| e).collect();
    ends.sort_unstable();
    ends.dedup();

    let mut sorted = ivs.to_vec();
    sorted.sort_unstable();

    let mut entries = Vec::new();
    for &a in &starts {
        for &b in &ends {
            if b <= a {
                continue;
            }
            // Intervals starting before a or ending after b are ignored: a
            // covered interval must be covered by intervals contained in it.
            let mut reach = a;
            let mut contained = 0u32;
            let mut gap = false;
            for &(s, e) in &sorted {
                if s < a {
                    continue;
                }
                if s >= b {
                    break;
                }
                if e <= b {
                    if s > reach {
                        // Later intervals start even further right, so the
                        // hole before s can never be filled.
                        gap = true;
                        break;
                    }
                    contained += 1;
                    if e > reach {
                        reach = e;
                    }
                }
            }
            if !gap && reach >= b {
                entries.push(CovEntry {
                    start: a,
                    end: b,
                    contained,
                });
            }
        }
    }
    entries.sort_by(|x, y| y.start.cmp(&x.start).then(x.end.cmp(&y.end)));
    entries
}
