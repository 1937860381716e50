//! Sequence-level pattern matching shared by containment tests and the
//! enumerator's incremental pruning.
//!
//! All functions treat `seq` as a sequence of distinct labels and `pat` as a
//! permutation of `{1, ..., k}` in one-line notation.

/// True when `x` can fill `slot` given the values chosen for earlier slots:
/// the relative order of `x` against every chosen value must match the
/// relative order of `pat[slot]` against the corresponding pattern entry.
#[inline]
fn compatible(pat: &[u32], chosen: &[u32], slot: usize, x: u32) -> bool {
    for (i, &c) in chosen.iter().enumerate() {
        if (pat[i] < pat[slot]) != (c < x) {
            return false;
        }
    }
    true
}

fn search(seq: &[u32], pat: &[u32], slots: usize, start: usize, chosen: &mut Vec<u32>) -> bool {
    if chosen.len() == slots {
        return true;
    }
    let slot = chosen.len();
    // Leave room for the remaining slots.
    let last_start = seq.len() - (slots - slot);
    for p in start..=last_start {
        let x = seq[p];
        if compatible(pat, chosen, slot, x) {
            chosen.push(x);
            if search(seq, pat, slots, p + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Classical containment: some scattered subsequence of `seq` is
/// order-isomorphic to `pat`.
pub fn contains_classical(seq: &[u32], pat: &[u32]) -> bool {
    let k = pat.len();
    if seq.len() < k {
        return false;
    }
    let mut chosen = Vec::with_capacity(k);
    search(seq, pat, k, 0, &mut chosen)
}

/// Classical containment where the instance must use the final element of
/// `seq` (necessarily in the final pattern slot).  Used when a single new
/// element is appended to an already instance-free sequence.
pub fn contains_classical_ending_last(seq: &[u32], pat: &[u32]) -> bool {
    let k = pat.len();
    if seq.len() < k {
        return false;
    }
    let last = seq[seq.len() - 1];
    let head = &seq[..seq.len() - 1];
    // Fill slots 0..k-1 from `head`, then validate the fixed last slot.
    let mut chosen = Vec::with_capacity(k);
    search_with_fixed_last(head, pat, k, 0, &mut chosen, last)
}

fn search_with_fixed_last(
    seq: &[u32],
    pat: &[u32],
    k: usize,
    start: usize,
    chosen: &mut Vec<u32>,
    last: u32,
) -> bool {
    let slot = chosen.len();
    if slot == k - 1 {
        return compatible(pat, chosen, k - 1, last);
    }
    if seq.len() + slot < k - 1 + start {
        return false;
    }
    let last_start = seq.len() - (k - 1 - slot);
    for p in start..=last_start {
        let x = seq[p];
        // The candidate must also agree with the fixed final element.
        if compatible(pat, chosen, slot, x) && ((pat[slot] < pat[k - 1]) == (x < last)) {
            chosen.push(x);
            if search_with_fixed_last(seq, pat, k, p + 1, chosen, last) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// True when `window` (length `k`) is order-isomorphic to `pat`.
#[inline]
fn window_matches(window: &[u32], pat: &[u32]) -> bool {
    for j in 1..pat.len() {
        for i in 0..j {
            if (pat[i] < pat[j]) != (window[i] < window[j]) {
                return false;
            }
        }
    }
    true
}

/// Consecutive containment: some contiguous window of `seq` is
/// order-isomorphic to `pat`.
pub fn contains_consecutive(seq: &[u32], pat: &[u32]) -> bool {
    let k = pat.len();
    if seq.len() < k {
        return false;
    }
    (0..=seq.len() - k).any(|s| window_matches(&seq[s..s + k], pat))
}

/// Consecutive containment restricted to windows that straddle the cut
/// between `seq[..boundary]` and `seq[boundary..]`.  Used when two
/// window-free sequences are concatenated: only straddling windows are new.
pub fn contains_consecutive_crossing(seq: &[u32], pat: &[u32], boundary: usize) -> bool {
    let k = pat.len();
    if seq.len() < k || boundary == 0 || boundary >= seq.len() {
        // Degenerate cuts (everything on one side) create no straddling window.
        return false;
    }
    let lo = boundary.saturating_sub(k - 1);
    let hi = (boundary - 1).min(seq.len() - k);
    (lo..=hi).any(|s| window_matches(&seq[s..s + k], pat))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: test every index subset of size k.
    fn contains_classical_naive(seq: &[u32], pat: &[u32]) -> bool {
        let k = pat.len();
        if seq.len() < k {
            return false;
        }
        fn rec(seq: &[u32], pat: &[u32], start: usize, picked: &mut Vec<u32>) -> bool {
            if picked.len() == pat.len() {
                return window_matches(picked, pat);
            }
            for p in start..seq.len() {
                picked.push(seq[p]);
                if rec(seq, pat, p + 1, picked) {
                    return true;
                }
                picked.pop();
            }
            false
        }
        rec(seq, pat, 0, &mut Vec::new())
    }

    /// Small deterministic generator (SplitMix64) for randomized cases.
    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }
        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    fn random_distinct_seq(rng: &mut Rng, len: usize) -> Vec<u32> {
        // Random permutation of 1..=len via Fisher-Yates.
        let mut v: Vec<u32> = (1..=len as u32).collect();
        for i in (1..len).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
        v
    }

    #[test]
    fn classical_basic_cases() {
        assert!(contains_classical(&[3, 1, 10], &[2, 1, 3]));
        assert!(!contains_classical(&[1, 2, 3], &[2, 1, 3]));
        assert!(contains_classical(&[5, 1, 4, 2, 3], &[3, 1, 2]));
        assert!(!contains_classical(&[1, 2], &[1, 2, 3]));
        assert!(contains_classical(&[2, 7, 1, 8, 5], &[1, 3, 2]));
    }

    #[test]
    fn classical_matches_subset_oracle() {
        let pats: Vec<Vec<u32>> = vec![
            vec![1, 2],
            vec![2, 1],
            vec![1, 2, 3],
            vec![2, 1, 3],
            vec![2, 3, 1],
            vec![3, 1, 2],
            vec![1, 3, 2],
            vec![3, 2, 1],
            vec![2, 4, 1, 3],
            vec![3, 1, 4, 2],
        ];
        let mut rng = Rng(7);
        for len in 1..=9 {
            for _ in 0..40 {
                let seq = random_distinct_seq(&mut rng, len);
                for pat in &pats {
                    assert_eq!(
                        contains_classical(&seq, pat),
                        contains_classical_naive(&seq, pat),
                        "seq={:?} pat={:?}",
                        seq,
                        pat
                    );
                }
            }
        }
    }

    #[test]
    fn ending_last_agrees_with_definition() {
        // ending-last == contains(seq) && !contains(seq without last) is NOT
        // an identity (an instance may end elsewhere), but ending-last must
        // imply contains, and appending to an instance-free prefix makes the
        // two containment notions coincide.
        let mut rng = Rng(99);
        let pats: Vec<Vec<u32>> = vec![vec![2, 1, 3], vec![1, 2, 3], vec![2, 4, 1, 3]];
        for len in 2..=9 {
            for _ in 0..60 {
                let seq = random_distinct_seq(&mut rng, len);
                for pat in &pats {
                    let el = contains_classical_ending_last(&seq, pat);
                    assert!(!el || contains_classical(&seq, pat));
                    let head = &seq[..seq.len() - 1];
                    if !contains_classical(head, pat) {
                        assert_eq!(el, contains_classical(&seq, pat), "seq={:?}", seq);
                    }
                }
            }
        }
    }

    #[test]
    fn consecutive_basic_cases() {
        // 3,1,10 is a contiguous window order-isomorphic to 213.
        assert!(contains_consecutive(&[3, 1, 10], &[2, 1, 3]));
        // 4,1,8 realizes 213 scattered, but no contiguous window does:
        // the windows are 4,1,2 (312-shaped) and 1,2,8 (123-shaped).
        assert!(contains_classical(&[4, 1, 2, 8], &[2, 1, 3]));
        assert!(!contains_consecutive(&[4, 1, 2, 8], &[2, 1, 3]));
        assert!(contains_consecutive(&[1, 7, 6], &[1, 3, 2]));
        assert!(!contains_consecutive(&[1, 2], &[1, 2, 3]));
    }

    #[test]
    fn consecutive_implies_classical() {
        let mut rng = Rng(23);
        let pats: Vec<Vec<u32>> = vec![vec![2, 1, 3], vec![3, 1, 2], vec![1, 2], vec![2, 1]];
        for len in 1..=9 {
            for _ in 0..40 {
                let seq = random_distinct_seq(&mut rng, len);
                for pat in &pats {
                    if contains_consecutive(&seq, pat) {
                        assert!(contains_classical(&seq, pat));
                    }
                }
            }
        }
    }

    #[test]
    fn crossing_windows_cover_exactly_the_new_ones() {
        let mut rng = Rng(41);
        let pats: Vec<Vec<u32>> = vec![vec![2, 1, 3], vec![1, 2, 3], vec![2, 1]];
        for len in 2..=9 {
            for _ in 0..60 {
                let seq = random_distinct_seq(&mut rng, len);
                for pat in &pats {
                    for b in 1..seq.len() {
                        let crossing = contains_consecutive_crossing(&seq, pat, b);
                        let whole = contains_consecutive(&seq, pat);
                        let left = contains_consecutive(&seq[..b], pat);
                        let right = contains_consecutive(&seq[b..], pat);
                        // whole == left || right || crossing
                        assert_eq!(whole, left || right || crossing, "seq={:?} b={}", seq, b);
                        assert!(!crossing || whole);
                    }
                }
            }
        }
    }
}
