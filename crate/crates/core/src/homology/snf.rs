//! Smith normal form of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Order of a finitely presented abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl std::fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("INFINITE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    /// One factor per column, each dividing the next; zeros come last.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    /// Order of the cokernel `Z^cols / rows`.
    pub fn order(&self) -> GroupOrder {
        if self.invariant_factors.iter().any(Zero::is_zero) {
            return GroupOrder::Infinite;
        }
        GroupOrder::Finite(self.invariant_factors.iter().product())
    }

    /// Invariant factors other than 1.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

/// Reduces the rows to at most `cols` nonzero rows spanning the same
/// lattice (integer row echelon form).
fn row_echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..cols {
        // gcd-combine every row with a nonzero entry in column c into one pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(m.len());
        for row in m {
            if row[c].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (a, b) = (p[c].clone(), row[c].clone());
                    let e = a.extended_gcd(&b);
                    let (ga, gb) = (&a / &e.gcd, &b / &e.gcd);
                    let new_pivot: Vec<BigInt> = p.iter().zip(&row).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = p.iter().zip(&row).map(|(x, y)| &gb * x - &ga * y).collect();
                    if other.iter().any(|v| !v.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_pivot);
                }
            }
        }
        if let Some(p) = pivot {
            out.push(p);
        }
        m = rest;
    }
    out
}

/// Smith normal form of a `rows x cols` matrix; returns `cols` invariant
/// factors (padded with zeros when the rank is smaller).
pub fn snf(matrix: &[Vec<i64>], cols: usize) -> SnfResult {
    let m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&v| BigInt::from(v)).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut a = row_echelon(m, cols);
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_zero() {
            break;
        }
        diag.push(a[t][t].abs());
    }
    diag.sort();
    diag.resize(cols, BigInt::zero());
    SnfResult {
        invariant_factors: diag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn factors(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_two_three() {
        let r = snf(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(r.invariant_factors, factors(&[1, 6]));
        assert_eq!(r.order(), GroupOrder::Finite(6.into()));
    }

    #[test]
    fn zero_matrix_is_infinite() {
        let r = snf(&[vec![0, 0], vec![0, 0]], 2);
        assert_eq!(r.invariant_factors, factors(&[0, 0]));
        assert_eq!(r.order(), GroupOrder::Infinite);
    }

    #[test]
    fn identity_is_trivial() {
        let id: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
        let r = snf(&id, 3);
        assert_eq!(r.invariant_factors, factors(&[1, 1, 1]));
        assert_eq!(r.order(), GroupOrder::Finite(1.into()));
    }

    #[test]
    fn textbook_example() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(snf(&m, 3).invariant_factors, factors(&[2, 6, 12]));
    }

    #[test]
    fn redundant_rows() {
        let m = vec![vec![4, 6], vec![6, 9], vec![2, 3], vec![0, 5]];
        // lattice spanned by (2,3) and (0,5): Z^2 / that has order 10
        assert_eq!(snf(&m, 2).order(), GroupOrder::Finite(10.into()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn invariant_under_permutations(
            entries in proptest::collection::vec(-6i64..7, 12),
            seed in 0u64..1000,
        ) {
            let m: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let base = snf(&m, 3);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rows = m.clone();
            rows.shuffle(&mut rng);
            let mut perm: Vec<usize> = (0..3).collect();
            perm.shuffle(&mut rng);
            let permuted: Vec<Vec<i64>> = rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
            prop_assert_eq!(snf(&permuted, 3), base);
        }

        #[test]
        fn order_is_the_absolute_determinant(entries in proptest::collection::vec(-5i64..6, 4)) {
            let m = vec![entries[..2].to_vec(), entries[2..].to_vec()];
            let det = (entries[0] * entries[3] - entries[1] * entries[2]).abs();
            let want = if det == 0 { GroupOrder::Infinite } else { GroupOrder::Finite(det.into()) };
            prop_assert_eq!(snf(&m, 2).order(), want);
        }
    }
}
