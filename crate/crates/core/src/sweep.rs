//! Sweep primitives over canonical lists of half-open intervals.
//!
//! A canonical list is sorted by start and strictly separated: consecutive
//! entries `(s_i, e_i)`, `(s_j, e_j)` satisfy `e_i < s_j`, so touching pieces
//! are always merged. The same code runs on rational coordinates and on
//! compressed `u32` coordinate ids.

use alloc::vec::Vec;

/// Sorts arbitrary non-empty intervals and merges everything that overlaps
/// or touches.
pub fn canonicalize<C: Ord + Clone>(mut v: Vec<(C, C)>) -> Vec<(C, C)> {
    debug_assert!(v.iter().all(|(s, e)| s < e));
    v.sort();
    let mut out: Vec<(C, C)> = Vec::with_capacity(v.len());
    for (s, e) in v {
        match out.last_mut() {
            Some((_, last_end)) if s <= *last_end => {
                if e > *last_end {
                    *last_end = e;
                }
            }
            _ => out.push((s, e)),
        }
    }
    out
}

/// Union of two canonical lists.
pub fn union<C: Ord + Clone>(a: &[(C, C)], b: &[(C, C)]) -> Vec<(C, C)> {
    let mut merged: Vec<(C, C)> = Vec::with_capacity(a.len() + b.len());
    merged.extend_from_slice(a);
    merged.extend_from_slice(b);
    canonicalize(merged)
}

/// Set difference `a \ b` of two canonical lists.
pub fn subtract<C: Ord + Clone>(a: &[(C, C)], b: &[(C, C)]) -> Vec<(C, C)> {
    let mut out = Vec::new();
    let mut bi = 0;
    for (s, e) in a {
        let mut cur = s.clone();
        // Skip blockers entirely left of the current piece.
        while bi < b.len() && b[bi].1 <= cur {
            bi += 1;
        }
        let mut j = bi;
        while j < b.len() && b[j].0 < *e {
            if b[j].0 > cur {
                out.push((cur.clone(), b[j].0.clone()));
            }
            if b[j].1 > cur {
                cur = b[j].1.clone();
            }
            if cur >= *e {
                break;
            }
            j += 1;
        }
        if cur < *e {
            out.push((cur, e.clone()));
        }
    }
    debug_assert!(is_canonical(&out));
    out
}

/// True iff the list is sorted with strictly separated components.
pub fn is_canonical<C: Ord>(v: &[(C, C)]) -> bool {
    v.iter().all(|(s, e)| s < e)
        && v.windows(2).all(|w| w[0].1 < w[1].0)
}
