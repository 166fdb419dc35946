//! Index arithmetic for dense tensors and shuffle enumeration.

/// `n^k`.
pub fn power(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, _| acc * n)
}

/// Row-major decoding of a flat index into a fixed-size tuple.
pub fn decode<const K: usize>(mut t: usize, n: usize) -> [usize; K] {
    let mut out = [0usize; K];
    for slot in out.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
    out
}

pub fn decode_into(mut t: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
}

pub fn encode(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

/// A `(a, b)`-shuffle: a permutation of `0..a+b` that keeps the first `a`
/// and the last `b` positions in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    /// `perm[i]` is the original position placed at slot `i`.
    pub perm: Vec<usize>,
    /// Signature of the permutation, `±1`.
    pub sign: i64,
}

/// All `(a, b)`-shuffles in lexicographic order of their first block.
pub fn shuffles(a: usize, b: usize) -> Vec<Shuffle> {
    let n = a + b;
    let mut out = Vec::new();
    let mut first = Vec::with_capacity(a);
    collect_shuffles(0, n, a, &mut first, &mut out);
    out
}

fn collect_shuffles(start: usize, n: usize, a: usize, first: &mut Vec<usize>, out: &mut Vec<Shuffle>) {
    if first.len() == a {
        let mut perm = first.clone();
        perm.extend((0..n).filter(|i| !first.contains(i)));
        let sign = signature(&perm);
        out.push(Shuffle { perm, sign });
        return;
    }
    for i in start..n {
        first.push(i);
        collect_shuffles(i + 1, n, a, first, out);
        first.pop();
    }
}

/// Signature of a permutation given as an image list.
pub fn signature(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
