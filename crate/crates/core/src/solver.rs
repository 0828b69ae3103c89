//! Solvers: the covered-interval dynamic program (generic over an
//! exposed-part set), the naive subset dynamic program, and the permutation
//! brute force, plus automatic dispatch and the decision variant.
//!
//! The dynamic program fills one optimal cost per covered interval `C`, in
//! topological order. A branch removes an exposed part `E` from `C`; it is
//! admissible when every component of `C \ E` is itself a covered interval
//! and some instance interval inside `C` contains `E` (placing everything in
//! `C \ E` first and then that interval realizes `E` exactly). Fully covered
//! leftovers pay `f(0)` each. Ties are broken by the first minimizing part
//! in the enumerator's lexicographic order, so solutions are deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::covered::{CoveredId, CoveredIntervalTable};
use crate::error::Error;
use crate::exposed::{parts_on_scene, EnumerationMode, ExposedPartSet};
use crate::geometry::DisjointUnion;
use crate::instance::{Cost, FunctionClass, Instance, Ordering};
use crate::perm::for_each_permutation;
use crate::scene::{CIv, CSet, CovIndex, LengthCost, Scene};
use crate::sweep;

/// Default cap for the permutation brute force.
pub const BRUTE_FORCE_CAP: usize = 8;
/// Default cap for the subset dynamic program (the table has `2^n` entries).
pub const SUBSET_DP_CAP: usize = 20;

/// Which solver produced a [`Solution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Per-component dispatch on declared class and structure.
    Auto,
    /// Covered-interval dynamic program over the given part set.
    Dp(EnumerationMode),
    /// Subset dynamic program.
    SubsetDp,
    /// Brute force over all orderings.
    BruteForce,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Auto => write!(f, "auto"),
            Algorithm::Dp(mode) => write!(f, "dp({mode})"),
            Algorithm::SubsetDp => write!(f, "subset-dp"),
            Algorithm::BruteForce => write!(f, "brute"),
        }
    }
}

/// An optimal ordering with its total cost and per-position exposed parts.
#[derive(Debug, Clone)]
pub struct Solution {
    pub total: Cost,
    pub ordering: Ordering,
    /// Exposed part of the interval at each ordering position.
    pub exposed: Vec<DisjointUnion>,
    pub algorithm: Algorithm,
}

impl Solution {
    fn empty(algorithm: Algorithm) -> Self {
        Solution {
            total: Cost::zero(),
            ordering: Ordering::new(vec![]),
            exposed: vec![],
            algorithm,
        }
    }

    fn from_indices(inst: &Instance, indices: Vec<usize>, algorithm: Algorithm) -> Self {
        let ordering = Ordering::new(indices);
        let (total, exposed) = inst.cost_of_ordering(&ordering);
        Solution {
            total,
            ordering,
            exposed,
            algorithm,
        }
    }
}

/// The filled table of the covered-interval dynamic program: one optimal
/// cost and one chosen exposed part per covered interval, with ids as in the
/// accompanying [`CoveredIntervalTable`].
pub struct DpTable {
    opt: Vec<Option<Cost>>,
    chosen: Vec<Option<DisjointUnion>>,
}

impl DpTable {
    pub fn len(&self) -> usize {
        self.opt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opt.is_empty()
    }

    /// Optimal cost of the sub-instance inside the covered interval; `None`
    /// when the supplied parts admit no decomposition there.
    pub fn opt(&self, id: CoveredId) -> Option<&Cost> {
        self.opt[id as usize].as_ref()
    }

    /// The minimizing exposed part chosen for the entry; `None` for entries
    /// with a single contained interval (their cost is `f(|C|)` directly).
    pub fn chosen_part(&self, id: CoveredId) -> Option<&DisjointUnion> {
        self.chosen[id as usize].as_ref()
    }
}

struct Choice {
    part_idx: usize,
    comps: Vec<u32>,
}

struct DpFill {
    opt: Vec<Option<Cost>>,
    choice: Vec<Option<Choice>>,
}

/// Fills the table over all covered intervals in topological order.
fn fill_table(
    scene: &Scene,
    cov: &CovIndex,
    parts: &[CSet],
    lc: &mut LengthCost,
) -> Result<DpFill, Error> {
    let n_entries = cov.entries.len();
    let mut opt: Vec<Option<Cost>> = vec![None; n_entries];
    let mut choice: Vec<Option<Choice>> = Vec::new();
    choice.resize_with(n_entries, || None);

    // Per-part data shared across entries.
    let spans: Vec<CIv> = parts.iter().map(|p| (p[0].0, p[p.len() - 1].1)).collect();
    // Hole components must be covered intervals no matter the window; cache
    // their ids (None = some hole is not covered, the part is never usable).
    let holes: Vec<Option<Vec<u32>>> = parts
        .iter()
        .map(|p| {
            p.windows(2)
                .map(|w| cov.id_of(w[0].1, w[1].0))
                .collect::<Option<Vec<u32>>>()
        })
        .collect();
    // Part costs are evaluated lazily: only for parts that pass the
    // structural checks at least once.
    let mut part_cost: Vec<Option<Cost>> = vec![None; parts.len()];

    for id in 0..n_entries {
        let entry = cov.entries[id];
        let (lo, hi) = (entry.start, entry.end);
        if entry.contained == 1 {
            // The single contained interval equals the entry.
            opt[id] = Some(lc.eval_set(scene, &[(lo, hi)])?);
            continue;
        }
        let f0 = lc.eval_zero()?;
        let mut best: Option<(Cost, Choice)> = None;

        // Parts are in lexicographic order, so those with first start in
        // [lo, hi) form a contiguous range; iterating it in order makes the
        // tie-break "first minimizing part" deterministic.
        let from = parts.partition_point(|p| p[0].0 < lo);
        for pi in from..parts.len() {
            let (s, t) = spans[pi];
            if s >= hi {
                break;
            }
            if t > hi {
                continue;
            }
            let Some(hole_ids) = &holes[pi] else {
                continue;
            };
            let left = if s > lo {
                match cov.id_of(lo, s) {
                    Some(c) => Some(c),
                    None => continue,
                }
            } else {
                None
            };
            let right = if t < hi {
                match cov.id_of(t, hi) {
                    Some(c) => Some(c),
                    None => continue,
                }
            } else {
                None
            };
            // The part must fit inside some interval of the sub-instance.
            if scene.count_intervals_in(lo, s, t, hi) == 0 {
                continue;
            }

            let mut contained_sum = 0u32;
            let mut subtotal: Option<Cost> = None;
            let mut comps: Vec<u32> = Vec::with_capacity(hole_ids.len() + 2);
            let mut feasible = true;
            for comp in left.iter().chain(hole_ids.iter()).chain(right.iter()) {
                match &opt[*comp as usize] {
                    Some(c) => {
                        subtotal = Some(match subtotal {
                            Some(acc) => acc.add(c),
                            None => c.clone(),
                        });
                        contained_sum += cov.entries[*comp as usize].contained;
                        comps.push(*comp);
                    }
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            if !feasible {
                continue;
            }

            if part_cost[pi].is_none() {
                part_cost[pi] = Some(lc.eval_set(scene, &parts[pi])?);
            }
            let mut omega = part_cost[pi].clone().expect("just filled");
            if let Some(acc) = subtotal {
                omega = omega.add(&acc);
            }
            // Intervals of the sub-instance that are neither the realizing
            // one nor inside C \ E are fully covered and pay f(0) each.
            debug_assert!(entry.contained > contained_sum);
            let k = (entry.contained - 1 - contained_sum) as usize;
            if k > 0 {
                omega = omega.add(&f0.scaled(k));
            }

            if best.as_ref().is_none_or(|(b, _)| omega < *b) {
                best = Some((omega, Choice { part_idx: pi, comps }));
            }
        }

        if let Some((cost, ch)) = best {
            opt[id] = Some(cost);
            choice[id] = Some(ch);
        }
    }

    Ok(DpFill { opt, choice })
}

/// Emits an optimal ordering for the sub-instance of one covered interval:
/// the orderings of the `C \ E` components, then an interval realizing `E`,
/// then the remaining (fully covered) intervals in ascending index order.
fn reconstruct(
    scene: &Scene,
    cov: &CovIndex,
    parts: &[CSet],
    fill: &DpFill,
    id: u32,
    used: &mut [bool],
    out: &mut Vec<usize>,
) {
    let entry = cov.entries[id as usize];
    let (lo, hi) = (entry.start, entry.end);
    if entry.contained == 1 {
        let j = scene
            .ivs
            .iter()
            .enumerate()
            .position(|(j, &(a, b))| !used[j] && lo <= a && b <= hi)
            .expect("entry contains one interval");
        debug_assert_eq!(scene.ivs[j], (lo, hi));
        used[j] = true;
        out.push(j);
        return;
    }
    let choice = fill.choice[id as usize]
        .as_ref()
        .expect("reconstruction follows feasible entries only");
    for &comp in &choice.comps {
        reconstruct(scene, cov, parts, fill, comp, used, out);
    }
    let part = &parts[choice.part_idx];
    let (s, t) = (part[0].0, part[part.len() - 1].1);
    let witness = scene
        .ivs
        .iter()
        .enumerate()
        .position(|(j, &(a, b))| !used[j] && lo <= a && a <= s && t <= b && b <= hi)
        .expect("a feasible branch has a realizing interval");
    used[witness] = true;
    out.push(witness);
    for (j, &(a, b)) in scene.ivs.iter().enumerate() {
        if !used[j] && lo <= a && b <= hi {
            used[j] = true;
            out.push(j);
        }
    }
}

/// Runs the dynamic program on a scene and reconstructs one optimal ordering
/// (indices local to the scene).
fn dp_run(scene: &Scene, inst: &Instance, parts: &[CSet]) -> Result<(Cost, Vec<usize>), Error> {
    let cov = CovIndex::build(scene);
    let mut lc = LengthCost::new(inst.cost());
    let fill = fill_table(scene, &cov, parts, &mut lc)?;

    let area = sweep::canonicalize(scene.ivs.clone());
    let mut total = Cost::zero();
    let mut order = Vec::with_capacity(scene.ivs.len());
    let mut used = vec![false; scene.ivs.len()];
    for &(lo, hi) in &area {
        let root = cov
            .id_of(lo, hi)
            .expect("every component of the covered area is a covered interval");
        match &fill.opt[root as usize] {
            Some(c) => total = total.add(c),
            None => return Err(Error::InfeasibleEnumeration),
        }
        reconstruct(scene, &cov, parts, &fill, root, &mut used, &mut order);
    }
    Ok((total, order))
}

/// Solves the instance with the covered-interval dynamic program over the
/// given exposed-part set. Components of the covered area are handled
/// independently. Fails with [`Error::InfeasibleEnumeration`] if the parts
/// admit no decomposition (impossible for the full set).
pub fn dp_solve(inst: &Instance, parts: &ExposedPartSet) -> Result<Solution, Error> {
    if inst.is_empty() {
        return Ok(Solution::empty(Algorithm::Dp(parts.mode())));
    }
    let scene = Scene::new(inst);
    let local = parts.parts_for(&scene.coords);
    let (total, order) = dp_run(&scene, inst, &local)?;
    let sol = Solution::from_indices(inst, order, Algorithm::Dp(parts.mode()));
    debug_assert_eq!(sol.total.value(), total.value());
    Ok(sol)
}

/// Fills and returns the dynamic-programming table for an instance whose
/// covered area is a single interval (use [`Instance::split_components`]
/// first otherwise), together with the covered-interval table it indexes.
pub fn dp_table(
    inst: &Instance,
    parts: &ExposedPartSet,
) -> Result<(CoveredIntervalTable, DpTable), Error> {
    if inst.classify().component_count != 1 {
        return Err(Error::InvalidParameter(
            "dp_table requires a covered area with exactly one component",
        ));
    }
    let table = crate::covered::build_covered_table(inst);
    let local = parts.parts_for(&table.scene.coords);
    let mut lc = LengthCost::new(inst.cost());
    let fill = fill_table(&table.scene, &table.index, &local, &mut lc)?;
    let chosen = fill
        .choice
        .iter()
        .map(|c| {
            c.as_ref()
                .map(|ch| table.scene.decompress(&local[ch.part_idx]))
        })
        .collect();
    Ok((
        table,
        DpTable {
            opt: fill.opt,
            chosen,
        },
    ))
}

/// Exact optimum via the standard subset recurrence; an independent oracle
/// with a `2^n` table.
pub fn subset_dp(inst: &Instance) -> Result<Solution, Error> {
    subset_dp_with_cap(inst, SUBSET_DP_CAP)
}

pub fn subset_dp_with_cap(inst: &Instance, cap: usize) -> Result<Solution, Error> {
    let n = inst.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "the subset dynamic program",
            cap,
            n,
        });
    }
    if n == 0 {
        return Ok(Solution::empty(Algorithm::SubsetDp));
    }
    let scene = Scene::new(inst);
    let mut lc = LengthCost::new(inst.cost());
    // Interval ids sorted by start for the per-query merge sweep.
    let mut by_start: Vec<usize> = (0..n).collect();
    by_start.sort_by_key(|&i| scene.ivs[i]);

    let full = 1usize << n;
    let mut opt: Vec<Option<Cost>> = vec![None; full];
    let mut pick: Vec<u8> = vec![0; full];
    opt[0] = Some(Cost::zero());

    let mut exposed_buf: CSet = Vec::with_capacity(n);
    for mask in 1..full {
        let mut best: Option<Cost> = None;
        let mut best_j = 0u8;
        for j in 0..n {
            if mask >> j & 1 == 0 {
                continue;
            }
            let prev = mask & !(1 << j);
            exposed_of(&scene, &by_start, prev, j, &mut exposed_buf);
            let c = lc.eval_set(&scene, &exposed_buf)?;
            let cand = opt[prev]
                .as_ref()
                .expect("subsets are filled in ascending order")
                .add(&c);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
                best_j = j as u8;
            }
        }
        opt[mask] = best;
        pick[mask] = best_j;
    }

    let mut order_rev = Vec::with_capacity(n);
    let mut mask = full - 1;
    while mask != 0 {
        let j = pick[mask] as usize;
        order_rev.push(j);
        mask &= !(1 << j);
    }
    order_rev.reverse();
    let sol = Solution::from_indices(inst, order_rev, Algorithm::SubsetDp);
    debug_assert_eq!(
        sol.total.value(),
        opt[full - 1].as_ref().expect("filled").value()
    );
    Ok(sol)
}

/// The exposed part of interval `j` when the mask's intervals come first.
fn exposed_of(scene: &Scene, by_start: &[usize], mask: usize, j: usize, out: &mut CSet) {
    out.clear();
    let (a, b) = scene.ivs[j];
    let mut cur = a;
    for &i in by_start {
        if mask >> i & 1 == 0 {
            continue;
        }
        let (s, e) = scene.ivs[i];
        if e <= cur {
            continue;
        }
        if s >= b {
            break;
        }
        if s > cur {
            out.push((cur, s.min(b)));
        }
        cur = e.min(b).max(cur);
        if cur >= b {
            break;
        }
    }
    if cur < b {
        out.push((cur, b));
    }
}

/// Minimum over all `n!` orderings; ties go to the lexicographically
/// smallest permutation.
pub fn brute_force(inst: &Instance) -> Result<Solution, Error> {
    brute_force_with_cap(inst, BRUTE_FORCE_CAP)
}

pub fn brute_force_with_cap(inst: &Instance, cap: usize) -> Result<Solution, Error> {
    let n = inst.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "the brute-force solver",
            cap,
            n,
        });
    }
    if n == 0 {
        return Ok(Solution::empty(Algorithm::BruteForce));
    }
    let scene = Scene::new(inst);
    let mut lc = LengthCost::new(inst.cost());
    let mut best: Option<(Cost, Vec<usize>)> = None;
    let mut failure: Option<Error> = None;
    for_each_permutation(n, |perm| {
        if failure.is_some() {
            return;
        }
        let mut covered: CSet = Vec::with_capacity(n);
        let mut total = Cost::zero();
        for &j in perm {
            let iv = scene.ivs[j];
            let part = sweep::subtract(core::slice::from_ref(&iv), &covered);
            match lc.eval_set(&scene, &part) {
                Ok(c) => total = total.add(&c),
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
            covered = sweep::union(&covered, core::slice::from_ref(&iv));
        }
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            best = Some((total, perm.to_vec()));
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (_, order) = best.expect("at least one ordering");
    Ok(Solution::from_indices(inst, order, Algorithm::BruteForce))
}

/// Splits into components and picks, per component, the cheapest sound
/// enumerator: single-interval parts for a declared subadditive shift,
/// subinterval-respecting parts for a superadditive one, the pairwise set
/// on pairwise touching/intersecting components, and the full set otherwise.
pub fn solve_auto(inst: &Instance) -> Result<Solution, Error> {
    if inst.is_empty() {
        return Ok(Solution::empty(Algorithm::Auto));
    }
    let groups = inst.component_index_sets();
    let mut total = Cost::zero();
    let mut order: Vec<usize> = Vec::with_capacity(inst.len());
    for group in groups {
        let sub = Instance::new(
            group.iter().map(|&i| inst.intervals()[i].clone()).collect(),
            inst.cost().clone(),
            None,
        );
        let scene = Scene::new(&sub);
        let mode = match inst.cost().class() {
            FunctionClass::SubShifted => EnumerationMode::IntervalParts,
            FunctionClass::SuperShifted => EnumerationMode::SuperParts,
            FunctionClass::Arbitrary => {
                if crate::exposed::pairwise_connected(&scene) {
                    EnumerationMode::Pairwise
                } else {
                    EnumerationMode::Full
                }
            }
        };
        let parts: Vec<CSet> = parts_on_scene(&scene, mode, 0)?.into_iter().collect();
        let (sub_total, sub_order) = dp_run(&scene, &sub, &parts)?;
        total = total.add(&sub_total);
        order.extend(sub_order.into_iter().map(|i| group[i]));
    }
    let sol = Solution::from_indices(inst, order, Algorithm::Auto);
    debug_assert_eq!(sol.total.value(), total.value());
    Ok(sol)
}

/// The decision variant: is the optimal total at most the threshold `W`?
pub fn decide(inst: &Instance) -> Result<bool, Error> {
    let w = inst.threshold().ok_or(Error::MissingThreshold)?;
    let sol = solve_auto(inst)?;
    Ok(sol.total.value() <= w)
}
