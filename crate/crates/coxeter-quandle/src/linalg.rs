//! Exact integer linear solving, A x = b over Z, by column echelon
//! reduction with a recorded unimodular transform. No floating point:
//! cohomological conclusions cannot tolerate rounding.

/// Solve `A x = b` over the integers. Returns one solution (free variables
/// set to zero) or `None` when no integer solution exists.
pub fn solve_integer(a: &[Vec<i128>], b: &[i128]) -> Option<Vec<i128>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = if m == 0 { 0 } else { a[0].len() };
    if n == 0 {
        return b.iter().all(|&x| x == 0).then(Vec::new);
    }

    // Column operations applied to H are mirrored on U, so A·U = H holds
    // throughout and x = U·y solves A x = H y.
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();

    let swap_cols = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for row in h.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    let add_col = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, src: usize, dst: usize, q: i128| {
        for row in h.iter_mut() {
            row[dst] += q * row[src];
        }
        for row in u.iter_mut() {
            row[dst] += q * row[src];
        }
    };

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0usize;
    for row in 0..m {
        if rank == n {
            break;
        }
        if (rank..n).all(|j| h[row][j] == 0) {
            continue;
        }
        loop {
            let j = (rank..n)
                .filter(|&j| h[row][j] != 0)
                .min_by_key(|&j| h[row][j].abs())
                .expect("nonzero entry exists");
            swap_cols(&mut h, &mut u, rank, j);
            let pivot = h[row][rank];
            let mut done = true;
            for k in rank + 1..n {
                if h[row][k] != 0 {
                    let q = h[row][k] / pivot;
                    add_col(&mut h, &mut u, rank, k, -q);
                    if h[row][k] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[row][rank] < 0 {
            for r in h.iter_mut() {
                r[rank] = -r[rank];
            }
            for r in u.iter_mut() {
                r[rank] = -r[rank];
            }
        }
        pivots.push((row, rank));
        rank += 1;
    }

    // Forward substitution on H y = b: pivot rows determine y by exact
    // division, every other row must balance to zero.
    let mut y = vec![0i128; n];
    let mut pivot_iter = pivots.iter().peekable();
    for row in 0..m {
        let acc: i128 = (0..rank).map(|j| h[row][j] * y[j]).sum();
        let rem = b[row] - acc;
        match pivot_iter.peek() {
            Some(&&(prow, pcol)) if prow == row => {
                pivot_iter.next();
                if rem % h[row][pcol] != 0 {
                    return None;
                }
                y[pcol] = rem / h[row][pcol];
            }
            _ => {
                if rem != 0 {
                    return None;
                }
            }
        }
    }

    let x: Vec<i128> = (0..n).map(|i| (0..n).map(|j| u[i][j] * y[j]).sum()).collect();
    debug_assert!(a
        .iter()
        .zip(b)
        .all(|(row, &rhs)| row.iter().zip(&x).map(|(c, v)| c * v).sum::<i128>() == rhs));
    Some(x)
}
