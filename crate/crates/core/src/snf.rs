//! Smith normal form over the integers, with unimodular transforms.

use crate::imat::IMat;

/// Decomposition `u * a * v = s` with `s` diagonal, each diagonal entry
/// dividing the next, and `u`, `v` unimodular.
pub struct Snf {
    pub s: IMat,
    pub u: IMat,
    pub v: IMat,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
    /// Determinant of `u` (always +1 or -1), tracked through the row operations.
    pub u_det: i128,
    /// Determinant of `v`.
    pub v_det: i128,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rank).map(|i| self.s[(i, i)]).collect()
    }
}

/// Pivot selection: smallest nonzero absolute value in the trailing submatrix,
/// ties broken in row-major order.
fn find_pivot(s: &IMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for i in k..s.rows {
        for j in k..s.cols {
            let v = s[(i, j)].abs();
            if v == 0 {
                continue;
            }
            match best {
                Some((bv, _, _)) if bv <= v => {}
                _ => best = Some((v, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IMat::identity(rows);
    let mut v = IMat::identity(cols);
    let mut u_det = 1i128;
    let mut v_det = 1i128;
    let mut k = 0;

    while k < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&s, k) else {
            break;
        };
        if pi != k {
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_det = -u_det;
        }
        if pj != k {
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_det = -v_det;
        }
        if s[(k, k)] < 0 {
            s.negate_row(k);
            u.negate_row(k);
            u_det = -u_det;
        }

        // clear column k below and row k to the right; restart whenever a
        // remainder smaller than the pivot shows up
        let mut dirty = false;
        for i in k + 1..rows {
            let q = s[(i, k)].div_euclid(s[(k, k)]);
            if q != 0 {
                s.add_row_mul(i, k, -q);
                u.add_row_mul(i, k, -q);
            }
            if s[(i, k)] != 0 {
                dirty = true;
            }
        }
        for j in k + 1..cols {
            let q = s[(k, j)].div_euclid(s[(k, k)]);
            if q != 0 {
                s.add_col_mul(j, k, -q);
                v.add_col_mul(j, k, -q);
            }
            if s[(k, j)] != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }

        // enforce the divisibility chain: any entry not divisible by the pivot
        // is pulled into row k and the step repeats
        let d = s[(k, k)];
        let offender = (k + 1..rows)
            .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| s[(i, j)] % d != 0);
        if let Some((i, _)) = offender {
            s.add_row_mul(k, i, 1);
            u.add_row_mul(k, i, 1);
            continue;
        }
        k += 1;
    }

    let rank = (0..rows.min(cols)).take_while(|&i| s[(i, i)] != 0).count();
    Snf { s, u, v, rank, u_det, v_det }
}

/// Solves `a * x = b` over the integers. Returns one solution if any exists.
pub fn solve_integer(a: &IMat, b: &[i128]) -> Option<Vec<i128>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let mut y = vec![0i128; a.cols];
    for i in 0..a.rows {
        let d = if i < a.cols { snf.s[(i, i)] } else { 0 };
        if d == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % d != 0 {
                return None;
            }
            y[i] = ub[i] / d;
        }
    }
    Some(snf.v.apply(&y))
}

/// Solves `a * x ≡ b (mod orders)`, congruence taken row-wise; order 0 means
/// exact equality on that row.
pub fn solve_congruence(a: &IMat, orders: &[u64], b: &[i128]) -> Option<Vec<i128>> {
    assert_eq!(a.rows, orders.len());
    let finite: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] != 0).collect();
    let mut aug = IMat::zeros(a.rows, a.cols + finite.len());
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)];
        }
    }
    for (t, &i) in finite.iter().enumerate() {
        aug[(i, a.cols + t)] = orders[i] as i128;
    }
    solve_integer(&aug, b).map(|x| x[..a.cols].to_vec())
}

/// Integer kernel of `a`: columns form a basis of `{x : a x = 0}`.
pub fn kernel_basis(a: &IMat) -> IMat {
    let snf = smith_normal_form(a);
    let r = snf.rank;
    let mut out = IMat::zeros(a.cols, a.cols - r);
    for (t, j) in (r..a.cols).enumerate() {
        for i in 0..a.cols {
            out[(i, t)] = snf.v[(i, j)];
        }
    }
    out
}

/// Inverse of a unimodular matrix, computed column by column.
pub fn unimodular_inverse(u: &IMat) -> IMat {
    assert_eq!(u.rows, u.cols);
    let n = u.rows;
    let mut inv = IMat::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0i128; n];
        e[j] = 1;
        let col = solve_integer(u, &e).expect("matrix is not unimodular");
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    debug_assert!(u.mul(&inv) == IMat::identity(n));
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: IMat) -> Snf {
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s, "u*a*v != s");
        assert_eq!(snf.u.det().abs(), 1, "u not unimodular");
        assert_eq!(snf.v.det().abs(), 1, "v not unimodular");
        assert_eq!(snf.u.det(), snf.u_det);
        assert_eq!(snf.v.det(), snf.v_det);
        for i in 1..snf.rank {
            assert_eq!(snf.s[(i, i)] % snf.s[(i - 1, i - 1)], 0, "divisibility chain");
        }
        snf
    }

    #[test]
    fn small_example() {
        // row/column reduction by hand: gcd of entries is 2, then the 2x2
        // minors have gcd 8, so the invariant factors are 2, 4
        let snf = check(IMat::from_rows(vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.diagonal(), vec![2, 4]);
    }

    #[test]
    fn identity_and_zero() {
        let snf = check(IMat::identity(3));
        assert_eq!(snf.diagonal(), vec![1, 1, 1]);
        let snf = check(IMat::from_rows(vec![vec![0]]));
        assert_eq!(snf.diagonal(), Vec::<i128>::new());
    }

    #[test]
    fn rectangular_and_chain() {
        let snf = check(IMat::from_rows(vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]));
        assert_eq!(snf.diagonal(), vec![1, 3, 21]);
        check(IMat::from_rows(vec![vec![2, 0, 0], vec![0, 0, 5]]));
        check(IMat::zeros(3, 2));
    }

    #[test]
    fn solving() {
        let a = IMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, &[1, 0]), None);
        // 2x ≡ 1 mod 5 has solution x = 3
        let a = IMat::from_rows(vec![vec![2]]);
        let x = solve_congruence(&a, &[5], &[1]).unwrap();
        assert_eq!((2 * x[0]).rem_euclid(5), 1);
    }

    #[test]
    fn kernels() {
        let a = IMat::from_rows(vec![vec![1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn unimodular_inversion() {
        let u = IMat::from_rows(vec![vec![1, 2], vec![0, 1]]);
        let inv = unimodular_inverse(&u);
        assert_eq!(u.mul(&inv), IMat::identity(2));
    }
}
