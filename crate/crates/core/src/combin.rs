//! k-subsets in lexicographic order, with ranking for sharded enumeration.

/// Binomial coefficient; saturates at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `index`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut index: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for slot in 0..k {
        let mut x = start;
        loop {
            let below = binomial((n - x - 1) as u64, (k - slot - 1) as u64);
            if index < below {
                break;
            }
            index -= below;
            x += 1;
        }
        out.push(x);
        start = x + 1;
    }
    out
}

/// Advances to the next k-subset of `0..n`; false after the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Iterates the k-subsets with ranks in `start..end`.
pub fn combinations_in_range(
    n: usize,
    k: usize,
    start: u64,
    end: u64,
) -> impl Iterator<Item = Vec<usize>> {
    let end = end.min(binomial(n as u64, k as u64));
    let mut cur = (start < end).then(|| unrank(n, k, start));
    let mut left = end.saturating_sub(start);
    std::iter::from_fn(move || {
        if left == 0 {
            return None;
        }
        let c = cur.as_mut()?;
        let out = c.clone();
        left -= 1;
        if left > 0 && !next_combination(c, n) {
            left = 0;
        }
        Some(out)
    })
}
