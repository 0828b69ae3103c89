//! The covered-interval table: all covered areas that are single intervals,
//! in topological order, with contained-interval counts.
//!
//! A covered interval `[a, b)` is recognized by a sweep over the instance's
//! endpoint pairs: intervals starting before `a` or ending after `b` are
//! ignored, and the remaining ones must cover `[a, b)` without a gap. The
//! entries are sorted with decreasing start points (increasing end points on
//! ties), which is a topological order with respect to the proper-subset
//! relation and makes the table deterministic.

use crate::geometry::{DisjointUnion, Interval};
use crate::instance::Instance;
use crate::scene::{CovIndex, Scene};

/// Identifier of a table entry; also its position in topological order.
pub type CoveredId = u32;

/// The set of covered intervals of an instance.
pub struct CoveredIntervalTable {
    pub(crate) scene: Scene,
    pub(crate) index: CovIndex,
}

impl CoveredIntervalTable {
    /// Number of entries; at most n² since every covered interval starts at
    /// a start point and ends at an end point of the instance.
    pub fn len(&self) -> usize {
        self.index.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.entries.is_empty()
    }

    /// The covered interval with the given id.
    pub fn interval(&self, id: CoveredId) -> Interval {
        let e = &self.index.entries[id as usize];
        Interval::new(
            self.scene.coord(e.start).clone(),
            self.scene.coord(e.end).clone(),
        )
        .expect("table entries are non-empty")
    }

    /// Number of instance intervals fully inside the entry (multiset count).
    pub fn contained_count(&self, id: CoveredId) -> usize {
        self.index.entries[id as usize].contained as usize
    }

    /// Entries in topological order.
    pub fn iter(&self) -> impl Iterator<Item = (Interval, usize)> + '_ {
        (0..self.len() as u32).map(|id| (self.interval(id), self.contained_count(id)))
    }

    /// Looks up a canonical union: its id if it is a single interval present
    /// in the table, `None` otherwise (in particular for the empty union).
    pub fn lookup(&self, u: &DisjointUnion) -> Option<CoveredId> {
        if !u.is_single_interval() {
            return None;
        }
        let c = &u.components()[0];
        let s = self.scene.coord_id(c.start())?;
        let e = self.scene.coord_id(c.end())?;
        self.index.id_of(s, e)
    }
}

/// Computes the covered-interval table of an instance.
pub fn build_covered_table(inst: &Instance) -> CoveredIntervalTable {
    let scene = Scene::new(inst);
    let index = CovIndex::build(&scene);
    CoveredIntervalTable { scene, index }
}
