//! Exact solvers used as ground truth.

use crate::error::{Error, Result};
use crate::tsp::{Instance, Tour};

pub const BRUTE_FORCE_CAP: usize = 10;
pub const HELD_KARP_CAP: usize = 18;

/// Rearranges `v` into the next lexicographic permutation; false once the
/// last one has been reached.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Enumerates the `(n-1)!/2` canonical tours (city 0 first, second city
/// smaller than the last) in lexicographic order and keeps the first
/// shortest one.
pub fn brute_force(inst: &Instance) -> Result<Tour> {
    let n = inst.len();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            cap: BRUTE_FORCE_CAP,
            n,
        });
    }
    if n <= 3 {
        return Tour::new((0..n).collect(), inst);
    }
    let dist = inst.distance_matrix();
    let d = |a: usize, b: usize| dist[a * n + b];

    let mut rest: Vec<usize> = (1..n).collect();
    let mut best_len = f64::INFINITY;
    let mut best = rest.clone();
    loop {
        if rest[0] < rest[n - 2] {
            let mut len = d(0, rest[0]);
            for w in rest.windows(2) {
                len += d(w[0], w[1]);
            }
            len += d(rest[n - 2], 0);
            if len < best_len {
                best_len = len;
                best.copy_from_slice(&rest);
            }
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    let mut order = Vec::with_capacity(n);
    order.push(0);
    order.extend(best);
    Tour::new(order, inst)
}

/// Subset dynamic programming over paths from city 0.
pub fn held_karp(inst: &Instance) -> Result<Tour> {
    let n = inst.len();
    if n > HELD_KARP_CAP {
        return Err(Error::HeldKarpCap {
            cap: HELD_KARP_CAP,
            n,
        });
    }
    if n <= 3 {
        return Tour::new((0..n).collect(), inst);
    }
    let dist = inst.distance_matrix();
    let d = |a: usize, b: usize| dist[a * n + b];

    // cities 1..n map to bits 0..m
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut cost = vec![f64::INFINITY; (full + 1) * m];
    let mut parent = vec![usize::MAX; (full + 1) * m];
    for j in 0..m {
        cost[(1 << j) * m + j] = d(0, j + 1);
    }
    for set in 1..=full {
        for last in 0..m {
            if set & (1 << last) == 0 {
                continue;
            }
            let here = cost[set * m + last];
            if !here.is_finite() {
                continue;
            }
            for next in 0..m {
                if set & (1 << next) != 0 {
                    continue;
                }
                let to = set | (1 << next);
                let c = here + d(last + 1, next + 1);
                if c < cost[to * m + next] {
                    cost[to * m + next] = c;
                    parent[to * m + next] = last;
                }
            }
        }
    }

    let (mut last, _) = (0..m).map(|j| (j, cost[full * m + j] + d(j + 1, 0))).fold(
        (0, f64::INFINITY),
        |acc, (j, c)| if c < acc.1 { (j, c) } else { acc },
    );

    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        order.push(last + 1);
        let prev = parent[set * m + last];
        set &= !(1 << last);
        last = prev;
    }
    order.push(0);
    order.reverse();
    Tour::new(order, inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::Metric;

    fn square() -> Instance {
        Instance::new(
            "sq",
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            Metric::Euc2d,
        )
        .unwrap()
    }

    #[test]
    fn square_optimum() {
        let b = brute_force(&square()).unwrap();
        assert_eq!(b.length, 4.0);
        assert_eq!(b.order, vec![0, 1, 2, 3]);
        assert_eq!(held_karp(&square()).unwrap().length, 4.0);
    }

    #[test]
    fn tiny_instances() {
        let tri = Instance::new("t", &[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)], Metric::Euc2d).unwrap();
        assert_eq!(brute_force(&tri).unwrap().length, 12.0);
        assert_eq!(held_karp(&tri).unwrap().length, 12.0);
        let one = Instance::new("o", &[(1.0, 1.0)], Metric::Euc2d).unwrap();
        assert_eq!(held_karp(&one).unwrap().length, 0.0);
        assert_eq!(brute_force(&one).unwrap().order, vec![0]);
    }

    #[test]
    fn caps() {
        let coords: Vec<(f64, f64)> = (0..20).map(|i| (i as f64, (i * i % 7) as f64)).collect();
        let inst = Instance::new("big", &coords, Metric::Euc2d).unwrap();
        assert_eq!(
            brute_force(&inst),
            Err(Error::BruteForceCap { cap: 10, n: 20 })
        );
        assert_eq!(held_karp(&inst), Err(Error::HeldKarpCap { cap: 18, n: 20 }));
        assert!(brute_force(&inst).unwrap_err().is_cap());
    }

    #[test]
    fn permutations_are_counted() {
        let mut v = vec![1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, vec![4, 3, 2, 1]);
    }
}
