//! Exact phase-1 simplex over `BigRational` with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Finds `x >= 0` with `a x = b`, or `None` if the system is infeasible.
/// `a` is `m x n` with rows given as slices.
pub fn find_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;

    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (row, bi) in a.iter().zip(b) {
        assert_eq!(row.len(), n);
        let flip = bi.is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v.clone() } else { v.clone() };
        }
        t[rhs] = bi.abs();
        tableau.push(t);
    }
    for (i, t) in tableau.iter_mut().enumerate() {
        t[n + i] = BigRational::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of the phase-1 objective (sum of artificials)
    let mut cost = vec![BigRational::zero(); width];
    for t in &tableau {
        for j in 0..n {
            cost[j] -= &t[j];
        }
        cost[rhs] -= &t[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, t) in tableau.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[rhs] / &t[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            // the phase-1 objective is bounded below by zero
            unreachable!("unbounded phase-1 problem");
        };
        pivot(&mut tableau, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = tableau[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<BigRational>], cost: &mut [BigRational], row: usize, col: usize) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tableau[row].clone();
    let eliminate = |target: &mut Vec<BigRational>| {
        let f = target[col].clone();
        if f.is_zero() {
            return;
        }
        for (t, pv) in target.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *t -= &f * pv;
            }
        }
    };
    for (i, t) in tableau.iter_mut().enumerate() {
        if i != row {
            eliminate(t);
        }
    }
    let mut c = cost.to_vec();
    eliminate(&mut c);
    cost.clone_from_slice(&c);
}
