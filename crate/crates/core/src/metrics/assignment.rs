//! Exact linear assignment (Hungarian method with potentials, O(n³)).
//!
//! Generic over the cost type so CEAF can run it on exact rationals; a
//! float solver could pick a sub-optimal matching when two totals differ
//! by less than rounding error.

use std::ops::{Add, Sub};

use num_traits::Zero;

/// Minimum-cost perfect matching on a square matrix. Returns, for every
/// row, the column assigned to it.
pub fn min_cost_assignment<T>(costs: &[Vec<T>]) -> Vec<usize>
where
    T: Clone + PartialOrd + Zero + Add<Output = T> + Sub<Output = T>,
{
    let n = costs.len();
    assert!(
        costs.iter().all(|row| row.len() == n),
        "cost matrix must be square"
    );
    if n == 0 {
        return Vec::new();
    }

    // 1-based; index 0 is the virtual column used to grow augmenting paths.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        // `None` is +infinity.
        let mut minv: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs[i0 - 1][j - 1].clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("just set");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column always remains");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = minv[j].take() {
                    minv[j] = Some(m - delta.clone());
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Maximum-weight one-to-one matching on a `rows x cols` weight matrix
/// (non-negative weights). Returns the matched `(row, col)` pairs; rows or
/// columns left over on the larger side are unmatched.
pub fn max_weight_matching<T>(weights: &[Vec<T>], cols: usize) -> Vec<(usize, usize)>
where
    T: Clone + PartialOrd + Zero + Add<Output = T> + Sub<Output = T>,
{
    let rows = weights.len();
    let n = rows.max(cols);
    let costs: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match weights.get(i).and_then(|r| r.get(j)) {
                    Some(w) => T::zero() - w.clone(),
                    None => T::zero(),
                })
                .collect()
        })
        .collect();
    min_cost_assignment(&costs)
        .into_iter()
        .enumerate()
        .filter(|&(i, j)| i < rows && j < cols)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn small_known_case() {
        let costs = vec![vec![4i64, 1, 3], vec![2, 0, 5], vec![3, 2, 2]];
        let a = min_cost_assignment(&costs);
        let total: i64 = a.iter().enumerate().map(|(i, &j)| costs[i][j]).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn rectangular_matching() {
        let w = vec![vec![1i64, 5], vec![4, 6], vec![3, 0]];
        let m = max_weight_matching(&w, 2);
        let total: i64 = m.iter().map(|&(i, j)| w[i][j]).sum();
        assert_eq!(total, 9);
        assert_eq!(m.len(), 2);
    }

    proptest! {
        #[test]
        fn matches_permutation_brute_force(
            n in 1usize..=6,
            flat in prop::collection::vec(-20i64..20, 36),
        ) {
            let costs: Vec<Vec<i64>> = (0..n).map(|i| flat[i * 6..i * 6 + n].to_vec()).collect();
            let a = min_cost_assignment(&costs);
            let mut cols = a.clone();
            cols.sort_unstable();
            prop_assert_eq!(cols, (0..n).collect::<Vec<_>>());
            let got: i64 = a.iter().enumerate().map(|(i, &j)| costs[i][j]).sum();
            let best = permutations(n)
                .iter()
                .map(|p| p.iter().enumerate().map(|(i, &j)| costs[i][j]).sum::<i64>())
                .min()
                .unwrap();
            prop_assert_eq!(got, best);
        }
    }
}
