//! Smith normal form over the integers, for small relation matrices.

/// Diagonal of the Smith normal form of `m` (`min(rows, cols)` entries,
/// non-negative, each dividing the next; zeros last).
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return finish(a, n);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t] / p;
                if f != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                        *x -= f * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t][t..cols].iter_mut().zip(&rest[0][t..cols]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, n)
}

fn finish(a: Vec<Vec<i128>>, n: usize) -> Vec<i64> {
    let mut d: Vec<i64> = (0..n)
        .map(|i| i64::try_from(a[i][i].abs()).expect("invariant factor overflow"))
        .collect();
    // Zero diagonal entries can only appear once the block is exhausted.
    let nonzero = d.iter().filter(|&&x| x != 0).count();
    d.sort_by_key(|&x| if x == 0 { i64::MAX } else { x });
    debug_assert!(d[..nonzero].windows(2).all(|w| w[1] % w[0] == 0));
    d
}

/// Determinant by fraction-free Gaussian elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Greatest common divisor of all maximal square minors. For a matrix of
/// full column rank this is the product of the invariant factors.
pub fn maximal_minor_gcd(m: &[Vec<i64>]) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let k = rows.min(cols);
    let mut g = 0i128;
    for_each_subset(if rows >= cols { rows } else { cols }, k, &mut |subset| {
        let minor: Vec<Vec<i64>> = if rows >= cols {
            subset.iter().map(|&i| m[i].clone()).collect()
        } else {
            m.iter().map(|r| subset.iter().map(|&j| r[j]).collect()).collect()
        };
        let d = determinant(&minor).abs();
        let (mut a, mut b) = (g, d);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        g = a;
    });
    g
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_examples() {
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(smith_diagonal(&[vec![0, 0], vec![0, 5]]), vec![5, 0]);
        assert_eq!(smith_diagonal(&[vec![1, 1, 1]]), vec![1]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![7, 0, 0], vec![0, 7, 0], vec![1, 1, 1]]), 49);
    }

    #[test]
    fn minor_gcd_matches_smith_product() {
        let m = vec![vec![7, 0, 0], vec![0, 7, 0], vec![0, 0, 7], vec![1, 1, 1]];
        let prod: i64 = smith_diagonal(&m).iter().product();
        assert_eq!(maximal_minor_gcd(&m), prod as i128);
        assert_eq!(prod, 49);
    }
}
