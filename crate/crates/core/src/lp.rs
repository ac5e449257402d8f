//! Exact rational simplex, used for chamber witnesses and boundedness tests.
//!
//! Only the origin-feasible form `max c·z s.t. A z <= b, z >= 0, b >= 0` is
//! solved; callers shift their problems into it. Bland's rule guarantees
//! termination.

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rational::{dot, Rat};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
}

pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert!(b.iter().all(|x| !x.is_negative()), "origin must be feasible");
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            let mut t = vec![Rat::zero(); width];
            t[..n].clone_from_slice(row);
            t[n + i] = Rat::from_integer(1.into());
            t[width - 1] = rhs.clone();
            t
        })
        .collect();
    let mut obj = vec![Rat::zero(); width];
    for (o, cj) in obj.iter_mut().zip(c) {
        *o = -cj;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..width - 1).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        let inv = tab[r][enter].recip();
        for x in tab[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, y) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        basis[r] = enter;
    }

    let mut point = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            point[bv] = tab[i][width - 1].clone();
        }
    }
    LpOutcome::Optimal {
        value: obj[width - 1].clone(),
        point,
    }
}

/// Finds `x` in `dim` variables with `g·x + c > 0` for every `(g, c)`, or
/// `None` when the open polyhedron is empty.
pub fn strictly_feasible(constraints: &[(Vec<Rat>, Rat)], dim: usize) -> Option<Vec<Rat>> {
    // Variables: x+ (dim), x- (dim), s with t = s - shift, maximize s.
    let shift = constraints
        .iter()
        .map(|(_, c)| -c)
        .fold(Rat::zero(), |acc, v| if v > acc { v } else { acc });
    let one = Rat::from_integer(1.into());
    let nvar = 2 * dim + 1;
    let mut a = Vec::with_capacity(constraints.len() + 1);
    let mut b = Vec::with_capacity(constraints.len() + 1);
    for (g, c) in constraints {
        let mut row = Vec::with_capacity(nvar);
        row.extend(g.iter().map(|x| -x));
        row.extend(g.iter().cloned());
        row.push(one.clone());
        a.push(row);
        b.push(c + &shift);
    }
    let mut cap = vec![Rat::zero(); nvar];
    cap[nvar - 1] = one.clone();
    a.push(cap.clone());
    b.push(&one + &shift);

    match maximize(&cap, &a, &b) {
        LpOutcome::Optimal { value, point } if value > shift => {
            let x: Vec<Rat> = (0..dim).map(|i| &point[i] - &point[dim + i]).collect();
            debug_assert!(constraints.iter().all(|(g, c)| (dot(g, &x) + c).is_positive()));
            Some(x)
        }
        _ => None,
    }
}

/// True iff the cone `{d : g·d >= 0 for all rows g}` is `{0}`.
pub fn cone_is_trivial(rows: &[Vec<Rat>], dim: usize) -> bool {
    if linalg::rank(rows) < dim {
        return false;
    }
    // With full rank, a nonzero d in the cone has sum_i g_i·d > 0.
    let nvar = 2 * dim;
    let mut a = Vec::with_capacity(rows.len() + 1);
    let mut total = vec![Rat::zero(); nvar];
    for g in rows {
        let mut row: Vec<Rat> = g.iter().map(|x| -x).collect();
        row.extend(g.iter().cloned());
        a.push(row);
        for j in 0..dim {
            total[j] += &g[j];
            total[dim + j] -= &g[j];
        }
    }
    let mut b = vec![Rat::zero(); rows.len()];
    a.push(total.clone());
    b.push(Rat::from_integer(1.into()));
    match maximize(&total, &a, &b) {
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        LpOutcome::Unbounded => false,
    }
}
