use num_bigint::BigInt;

use crate::error::{out_of_range, Result};

use super::factorial;

/// Rooted spanning forests of the `n`-cycle with `k` trees, by the closed form
/// `2n (n+k-1)! / ((n-k)! (2k)!)`.
pub fn rooted_forest_count(n: usize, k: usize) -> Result<BigInt> {
    if n == 0 || k == 0 || k > n {
        return Err(out_of_range("k", format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(BigInt::from(2 * n) * factorial(n + k - 1) / (factorial(n - k) * factorial(2 * k)))
}

/// The same count by enumerating every edge subset of the cycle.
///
/// The 1-cycle is a vertex with a loop and the 2-cycle has a doubled edge, so
/// the Laplacian matches `4 sin^2(pi j / n)` for every `n`. A subset is a
/// forest when no edge closes a cycle; each tree contributes its size as the
/// number of root choices.
pub fn brute_force_rooted_forests(n: usize, k: usize) -> u64 {
    assert!((1..=20).contains(&n), "enumeration limited to small cycles");
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut total = 0u64;
    for mask in 0u32..(1 << edges.len()) {
        let mut parent: Vec<usize> = (0..n).collect();
        let mut acyclic = true;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask >> e & 1 == 0 {
                continue;
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                acyclic = false;
                break;
            }
            parent[ru] = rv;
        }
        if !acyclic {
            continue;
        }
        let mut sizes = vec![0u64; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            sizes[r] += 1;
        }
        let trees: Vec<u64> = sizes.into_iter().filter(|&s| s > 0).collect();
        if trees.len() == k {
            total += trees.iter().product::<u64>();
        }
    }
    total
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}
