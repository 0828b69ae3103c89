//! Lexicographic permutation iteration for the brute-force oracles.

use alloc::vec::Vec;

/// Calls `f` with every permutation of `0..n` in lexicographic order.
/// For `n = 0` the single empty permutation is visited once.
pub(crate) fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        f(&idx);
        if !next_permutation(&mut idx) {
            return;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
