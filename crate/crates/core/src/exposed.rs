//! Exposed-part enumerators.
//!
//! The dynamic program in [`crate::solver`] is generic over the set of
//! exposed parts it may use; these enumerators are the interchangeable
//! engines that determine its running time. `enumerate_full` produces the
//! complete set; the restricted enumerators produce the polynomial subsets
//! that are sufficient under structural or cost-function assumptions;
//! `enumerate_oracle` iterates all orderings and serves as ground truth in
//! tests.
//!
//! Realizability of a candidate part hinges on one fact about half-open
//! interval families: a set `E` inside a window `[L, R)` is an exposed part
//! of some sub-instance ordering iff
//!
//! * every hole of `E` (a maximal gap between consecutive components) is a
//!   covered interval,
//! * some instance interval `[a', b')` inside the window contains `E`, and
//! * the flanks can be sealed: either `a'` equals the first start `s` of `E`
//!   or some covered interval `[d, s)` with `L <= d <= a'` covers `[a', s)`,
//!   and symmetrically on the right.
//!
//! Each enumerator below applies this test with the window set to the whole
//! instance; the solver re-applies it per covered interval.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::geometry::{DisjointUnion, Rat};
use crate::instance::Instance;
use crate::perm::for_each_permutation;
use crate::scene::{CIv, CSet, CovIndex, Scene};
use crate::sweep;

/// Default cap for the factorial-time oracle enumerator.
pub const ORACLE_CAP: usize = 8;

/// Which engine produced an [`ExposedPartSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// The complete set of exposed parts.
    Full,
    /// All orderings, by definition; test oracle.
    Oracle,
    /// Exposed parts that are single intervals.
    IntervalParts,
    /// Exposed parts of orderings where no interval precedes one of its
    /// proper subintervals.
    SuperParts,
    /// `I \ C` over covered intervals `C`; complete on pairwise touching or
    /// intersecting instances.
    Pairwise,
    /// Exposed parts with at most this many interval components.
    Alpha(u32),
    /// Spanning-window enumeration, exponential only in the maximum number
    /// of proper subintervals.
    SBound,
}

impl fmt::Display for EnumerationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationMode::Full => write!(f, "full"),
            EnumerationMode::Oracle => write!(f, "oracle"),
            EnumerationMode::IntervalParts => write!(f, "intervals"),
            EnumerationMode::SuperParts => write!(f, "super"),
            EnumerationMode::Pairwise => write!(f, "pairwise"),
            EnumerationMode::Alpha(k) => write!(f, "alpha:{k}"),
            EnumerationMode::SBound => write!(f, "sbound"),
        }
    }
}

/// A deduplicated set of non-empty exposed parts, in lexicographic order of
/// their canonical component lists.
pub struct ExposedPartSet {
    mode: EnumerationMode,
    coords: Vec<Rat>,
    parts: Vec<CSet>,
}

impl ExposedPartSet {
    fn new(mode: EnumerationMode, scene: &Scene, set: BTreeSet<CSet>) -> Self {
        ExposedPartSet {
            mode,
            coords: scene.coords.clone(),
            parts: set.into_iter().collect(),
        }
    }

    pub fn mode(&self) -> EnumerationMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts in deterministic (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = DisjointUnion> + '_ {
        self.parts.iter().map(|p| self.decompress(p))
    }

    pub fn contains(&self, u: &DisjointUnion) -> bool {
        let Some(c) = self.compress(u) else {
            return false;
        };
        self.parts.binary_search(&c).is_ok()
    }

    fn decompress(&self, set: &[CIv]) -> DisjointUnion {
        DisjointUnion::from_pairs(
            set.iter()
                .map(|&(s, e)| {
                    (
                        self.coords[s as usize].clone(),
                        self.coords[e as usize].clone(),
                    )
                })
                .collect(),
        )
    }

    fn compress(&self, u: &DisjointUnion) -> Option<CSet> {
        u.components()
            .iter()
            .map(|c| {
                let s = self.coords.binary_search(c.start()).ok()? as u32;
                let e = self.coords.binary_search(c.end()).ok()? as u32;
                Some((s, e))
            })
            .collect()
    }

    /// Translates the parts into another coordinate table, dropping parts
    /// with coordinates unknown there (such parts can never be realized in
    /// that instance).
    pub(crate) fn parts_for(&self, coords: &[Rat]) -> Vec<CSet> {
        if self.coords == coords {
            return self.parts.clone();
        }
        let map: Vec<Option<u32>> = self
            .coords
            .iter()
            .map(|c| coords.binary_search(c).ok().map(|i| i as u32))
            .collect();
        let mut out: Vec<CSet> = self
            .parts
            .iter()
            .filter_map(|p| {
                p.iter()
                    .map(|&(s, e)| Some((map[s as usize]?, map[e as usize]?)))
                    .collect()
            })
            .collect();
        out.sort();
        out
    }
}

/// True iff some instance interval `[a', b')` inside `[lo, hi]` contains the
/// span `[s, t)` with sealable flanks: `a' = s` or a covered interval
/// `[d, s)` with `lo <= d <= a'` exists, and symmetrically at `t`.
fn span_realizable(scene: &Scene, cov: &CovIndex, s: u32, t: u32, lo: u32, hi: u32) -> bool {
    let a_lo = cov.min_start_ending_at(s, lo).unwrap_or(s);
    let b_hi = cov.max_end_starting_at(t, hi).unwrap_or(t);
    scene.count_intervals_in(a_lo, s, t, b_hi) > 0
}

fn whole_window(scene: &Scene) -> (u32, u32) {
    (0, scene.n_coords().saturating_sub(1))
}

// ---------------------------------------------------------------------------
// Oracle: all orderings, by definition.
// ---------------------------------------------------------------------------

fn oracle_parts(scene: &Scene, cap: usize) -> Result<BTreeSet<CSet>, Error> {
    let n = scene.ivs.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "the exposed-part oracle",
            cap,
            n,
        });
    }
    let mut set = BTreeSet::new();
    for_each_permutation(n, |perm| {
        let mut covered: CSet = vec![];
        for &i in perm {
            let iv = scene.ivs[i];
            let part = sweep::subtract(core::slice::from_ref(&iv), &covered);
            if !part.is_empty() {
                set.insert(part);
            }
            covered = sweep::union(&covered, core::slice::from_ref(&iv));
        }
    });
    Ok(set)
}

// ---------------------------------------------------------------------------
// Full set, built iteratively over a length-descending prefix.
// ---------------------------------------------------------------------------

/// Computes the full exposed-part set; also returns the set size after each
/// prefix step (the sizes obey `6·2^k - k² - 4k - 6`).
fn full_parts(scene: &Scene) -> (BTreeSet<CSet>, Vec<usize>) {
    let n = scene.ivs.len();
    // Process in descending length so the incoming interval never has a
    // proper subinterval among the previous ones.
    let mut order: Vec<usize> = (0..n).collect();
    let lengths: Vec<Rat> = scene
        .ivs
        .iter()
        .map(|&(s, e)| scene.coord(e) - scene.coord(s))
        .collect();
    order.sort_by(|&i, &j| {
        lengths[j]
            .cmp(&lengths[i])
            .then(scene.ivs[i].cmp(&scene.ivs[j]))
            .then(i.cmp(&j))
    });

    let mut set: BTreeSet<CSet> = BTreeSet::new();
    let mut sizes = Vec::with_capacity(n);
    let mut prefix: Vec<CIv> = Vec::with_capacity(n);

    for (k, &idx) in order.iter().enumerate() {
        let (a, b) = scene.ivs[idx];
        if k == 0 {
            set.insert(vec![(a, b)]);
        } else {
            // Every known part survives, and also loses the new interval.
            let shrunk: Vec<CSet> = set
                .iter()
                .map(|e| sweep::subtract(e, &[(a, b)]))
                .filter(|d| !d.is_empty())
                .collect();
            set.extend(shrunk);

            // Exposed parts of the new interval itself: candidate starts are
            // its own start or an end point of a previous interval, candidate
            // ends its own end or a previous start point; an uncovered flank
            // must be sealable by a covered interval of the prefix.
            let cov = CovIndex::build_for(scene, &prefix);
            let mut ss: Vec<u32> = prefix
                .iter()
                .map(|&(_, e)| e)
                .filter(|&e| a < e && e < b)
                .collect();
            ss.push(a);
            ss.sort_unstable();
            ss.dedup();
            let mut ts: Vec<u32> = prefix
                .iter()
                .map(|&(s, _)| s)
                .filter(|&s| a < s && s < b)
                .collect();
            ts.push(b);
            ts.sort_unstable();
            ts.dedup();
            for &s in &ss {
                if s != a && !cov.min_start_ending_at(s, 0).is_some_and(|d| d <= a) {
                    continue;
                }
                for &t in &ts {
                    if t <= s {
                        continue;
                    }
                    if t != b
                        && !cov
                            .max_end_starting_at(t, scene.n_coords() - 1)
                            .is_some_and(|e| e >= b)
                    {
                        continue;
                    }
                    set.insert(vec![(s, t)]);
                }
            }
        }
        prefix.push((a, b));
        sizes.push(set.len());
    }
    (set, sizes)
}

// ---------------------------------------------------------------------------
// Single-interval parts.
// ---------------------------------------------------------------------------

fn interval_parts(scene: &Scene, cov: &CovIndex) -> BTreeSet<CSet> {
    let (lo, hi) = whole_window(scene);
    let mut set = BTreeSet::new();
    let m = scene.n_coords();
    for s in 0..m {
        for t in (s + 1)..m {
            if span_realizable(scene, cov, s, t, lo, hi) {
                set.insert(vec![(s, t)]);
            }
        }
    }
    set
}

// ---------------------------------------------------------------------------
// Parts of subinterval-respecting sequences.
// ---------------------------------------------------------------------------

fn super_parts(scene: &Scene) -> BTreeSet<CSet> {
    let mut set = BTreeSet::new();
    for &(a, b) in &scene.ivs {
        // All proper subintervals come before the interval, so their covered
        // area is always removed.
        let sub_cover = sweep::canonicalize(
            scene
                .ivs
                .iter()
                .copied()
                .filter(|&(s, e)| a <= s && e <= b && (s, e) != (a, b))
                .collect(),
        );
        let base = sweep::subtract(&[(a, b)], &sub_cover);
        if base.is_empty() {
            continue;
        }
        set.insert(base.clone());

        // A left-crossing interval [a', e) with a' < a clips away [a, e);
        // only the deepest chosen crosser matters, so one clip point per
        // side suffices, and clipping on one side only is allowed.
        let mut ss: Vec<u32> = scene
            .ivs
            .iter()
            .filter(|&&(s, e)| s < a && a < e && e < b)
            .map(|&(_, e)| e)
            .collect();
        ss.push(a);
        ss.sort_unstable();
        ss.dedup();
        let mut ts: Vec<u32> = scene
            .ivs
            .iter()
            .filter(|&&(s, e)| e > b && a < s && s < b)
            .map(|&(s, _)| s)
            .collect();
        ts.push(b);
        ts.sort_unstable();
        ts.dedup();

        for &s in &ss {
            for &t in &ts {
                if s >= t || (s, t) == (a, b) {
                    continue;
                }
                let clipped = clip(&base, s, t);
                if !clipped.is_empty() {
                    set.insert(clipped);
                }
            }
        }
    }
    set
}

/// Intersects a canonical set with the window `[s, t)`.
fn clip(set: &[CIv], s: u32, t: u32) -> CSet {
    set.iter()
        .filter_map(|&(u, v)| {
            let nu = u.max(s);
            let nv = v.min(t);
            (nu < nv).then_some((nu, nv))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Pairwise touching/intersecting instances: I \ C over covered intervals.
// ---------------------------------------------------------------------------

pub(crate) fn pairwise_connected(scene: &Scene) -> bool {
    let n = scene.ivs.len();
    if n == 0 {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (scene.ivs[i], scene.ivs[j]);
            if a.1 < b.0 || b.1 < a.0 {
                return false;
            }
        }
    }
    true
}

fn pairwise_parts(scene: &Scene, cov: &CovIndex) -> BTreeSet<CSet> {
    let mut set = BTreeSet::new();
    for &iv in &scene.ivs {
        set.insert(vec![iv]);
        for e in &cov.entries {
            let part = sweep::subtract(&[iv], &[(e.start, e.end)]);
            if !part.is_empty() {
                set.insert(part);
            }
        }
    }
    set
}

// ---------------------------------------------------------------------------
// Component-count-bounded parts.
// ---------------------------------------------------------------------------

fn alpha_parts(scene: &Scene, cov: &CovIndex, alpha: u32) -> BTreeSet<CSet> {
    let (lo, hi) = whole_window(scene);
    let mut set = BTreeSet::new();
    let mut witnesses: Vec<CIv> = scene.ivs.clone();
    witnesses.sort_unstable();
    witnesses.dedup();

    for &(a, b) in &witnesses {
        // Clip points with sealable flanks, relative to this witness.
        let mut ss: Vec<u32> = vec![a];
        let mut ts: Vec<u32> = vec![b];
        for c in (a + 1)..b {
            if cov.min_start_ending_at(c, lo).is_some_and(|d| d <= a) {
                ss.push(c);
            }
            if cov.max_end_starting_at(c, hi).is_some_and(|e| e >= b) {
                ts.push(c);
            }
        }
        for &s in &ss {
            for &t in &ts {
                if s >= t {
                    continue;
                }
                // Remove up to alpha-1 pairwise non-touching covered
                // intervals strictly inside the span.
                let blocks = cov.strictly_inside(s, t);
                let mut chosen: Vec<CIv> = Vec::new();
                emit_block_combinations(
                    &blocks,
                    0,
                    alpha as usize - 1,
                    s,
                    t,
                    &mut chosen,
                    &mut set,
                );
            }
        }
    }
    set
}

fn emit_block_combinations(
    blocks: &[CIv],
    from: usize,
    left: usize,
    s: u32,
    t: u32,
    chosen: &mut Vec<CIv>,
    set: &mut BTreeSet<CSet>,
) {
    // Emit the part for the current combination.
    let mut part: CSet = Vec::with_capacity(chosen.len() + 1);
    let mut cur = s;
    for &(u, v) in chosen.iter() {
        part.push((cur, u));
        cur = v;
    }
    part.push((cur, t));
    set.insert(part);

    if left == 0 {
        return;
    }
    for i in from..blocks.len() {
        let (u, v) = blocks[i];
        // Blocks stay strictly separated from each other and from the span
        // bounds, so each removed block is a hole between exposed pieces.
        let min_start = chosen.last().map_or(s, |&(_, pv)| pv);
        if u <= min_start || v >= t {
            continue;
        }
        chosen.push((u, v));
        emit_block_combinations(blocks, i + 1, left - 1, s, t, chosen, set);
        chosen.pop();
    }
}

// ---------------------------------------------------------------------------
// Spanning-window enumeration (exponential only in the subinterval count).
// ---------------------------------------------------------------------------

fn sbound_parts(scene: &Scene, cov: &CovIndex) -> BTreeSet<CSet> {
    let (lo, hi) = whole_window(scene);
    let mut set = BTreeSet::new();
    let m = scene.n_coords();
    for s in 0..m {
        for t in (s + 1)..m {
            if !span_realizable(scene, cov, s, t, lo, hi) {
                continue;
            }
            // Coverage strictly inside the span can only come from instance
            // intervals properly inside it: anything crossing the span
            // boundary would eat the exposed end points.
            let mut subs: Vec<CIv> = scene
                .ivs
                .iter()
                .copied()
                .filter(|&(u, v)| s <= u && v <= t && (u, v) != (s, t))
                .collect();
            subs.sort_unstable();
            subs.dedup();
            for mask in 0u64..(1u64 << subs.len()) {
                let chosen: Vec<CIv> = subs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &iv)| iv)
                    .collect();
                let covered = sweep::canonicalize(chosen);
                let part = sweep::subtract(&[(s, t)], &covered);
                // Keep only parts that still span [s, t); others are found
                // under their true span.
                if part.first().is_some_and(|&(u, _)| u == s)
                    && part.last().is_some_and(|&(_, v)| v == t)
                {
                    set.insert(part);
                }
            }
        }
    }
    set
}

// ---------------------------------------------------------------------------
// Public entry points.
// ---------------------------------------------------------------------------

pub(crate) fn parts_on_scene(
    scene: &Scene,
    mode: EnumerationMode,
    oracle_cap: usize,
) -> Result<BTreeSet<CSet>, Error> {
    match mode {
        EnumerationMode::Full => Ok(full_parts(scene).0),
        EnumerationMode::Oracle => oracle_parts(scene, oracle_cap),
        EnumerationMode::IntervalParts => {
            let cov = CovIndex::build(scene);
            Ok(interval_parts(scene, &cov))
        }
        EnumerationMode::SuperParts => Ok(super_parts(scene)),
        EnumerationMode::Pairwise => {
            if !pairwise_connected(scene) {
                return Err(Error::NotPairwiseConnected);
            }
            let cov = CovIndex::build(scene);
            Ok(pairwise_parts(scene, &cov))
        }
        EnumerationMode::Alpha(k) => {
            if k == 0 {
                return Err(Error::InvalidParameter("alpha must be at least 1"));
            }
            let cov = CovIndex::build(scene);
            Ok(alpha_parts(scene, &cov, k))
        }
        EnumerationMode::SBound => {
            let cov = CovIndex::build(scene);
            Ok(sbound_parts(scene, &cov))
        }
    }
}

fn enumerate(inst: &Instance, mode: EnumerationMode, cap: usize) -> Result<ExposedPartSet, Error> {
    let scene = Scene::new(inst);
    let set = parts_on_scene(&scene, mode, cap)?;
    Ok(ExposedPartSet::new(mode, &scene, set))
}

/// The complete exposed-part set.
pub fn enumerate_full(inst: &Instance) -> ExposedPartSet {
    enumerate(inst, EnumerationMode::Full, 0).expect("full enumeration cannot fail")
}

/// Like [`enumerate_full`], additionally reporting the set size after each
/// step of the length-descending prefix iteration.
pub fn enumerate_full_with_prefix_sizes(inst: &Instance) -> (ExposedPartSet, Vec<usize>) {
    let scene = Scene::new(inst);
    let (set, sizes) = full_parts(&scene);
    (
        ExposedPartSet::new(EnumerationMode::Full, &scene, set),
        sizes,
    )
}

/// Ground truth by iterating all `n!` orderings; refuses above the cap.
pub fn enumerate_oracle(inst: &Instance) -> Result<ExposedPartSet, Error> {
    enumerate_oracle_with_cap(inst, ORACLE_CAP)
}

pub fn enumerate_oracle_with_cap(inst: &Instance, cap: usize) -> Result<ExposedPartSet, Error> {
    enumerate(inst, EnumerationMode::Oracle, cap)
}

/// All exposed parts that are single intervals (sufficient when `f - f(0)`
/// is subadditive).
pub fn enumerate_interval_parts(inst: &Instance) -> ExposedPartSet {
    enumerate(inst, EnumerationMode::IntervalParts, 0).expect("cannot fail")
}

/// All exposed parts of sequences where no interval comes before any of its
/// proper subintervals (sufficient when `f - f(0)` is superadditive).
pub fn enumerate_super_parts(inst: &Instance) -> ExposedPartSet {
    enumerate(inst, EnumerationMode::SuperParts, 0).expect("cannot fail")
}

/// `I \ C` over all covered intervals `C` plus the intervals themselves;
/// complete exactly when every covered area is a single interval, so it
/// refuses instances that are not pairwise touching or intersecting.
pub fn enumerate_pairwise(inst: &Instance) -> Result<ExposedPartSet, Error> {
    enumerate(inst, EnumerationMode::Pairwise, 0)
}

/// All exposed parts with at most `alpha` interval components.
pub fn enumerate_alpha(inst: &Instance, alpha: u32) -> Result<ExposedPartSet, Error> {
    enumerate(inst, EnumerationMode::Alpha(alpha), 0)
}

/// The complete set, enumerated per spanning window; exponential only in
/// the maximum number of proper subintervals of any interval.
pub fn enumerate_sbound(inst: &Instance) -> ExposedPartSet {
    enumerate(inst, EnumerationMode::SBound, 0).expect("cannot fail")
}
