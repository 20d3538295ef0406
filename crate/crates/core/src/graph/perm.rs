//! Small permutation helpers shared across modules.

/// Parity of a permutation given in one-line notation (`perm[i]` is the image of `i`).
/// Returns `+1` for even and `-1` for odd permutations.
pub fn parity(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// `(a ∘ b)(i) = a[b[i]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Sign of a graded reordering. `degrees[j]` is the degree of the object
/// found at position `j` of the current sequence and `target[j]` the position
/// it must move to. Only pairs of odd objects that cross contribute.
pub fn koszul_sign(degrees: &[u32], target: &[usize]) -> i8 {
    let mut odd_swaps = 0usize;
    for i in 0..target.len() {
        if degrees[i] % 2 == 0 {
            continue;
        }
        for j in (i + 1)..target.len() {
            if degrees[j] % 2 == 1 && target[i] > target[j] {
                odd_swaps += 1;
            }
        }
    }
    if odd_swaps % 2 == 0 {
        1
    } else {
        -1
    }
}
