use num_traits::{One, Zero};

use super::Rational;

/// Basis of the right nullspace `{ v : M v = 0 }` of a dense rational matrix
/// given as rows of length `ncols`.
///
/// Gauss–Jordan elimination; one basis vector per free column, with a 1 in
/// that column. Basis vectors are returned in increasing free-column order.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    for r in &m {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].recip();
        if !inv.is_one() {
            for c in m[rank][col..].iter_mut() {
                *c *= &inv;
            }
        }
        let (head, tail) = m.split_at_mut(rank);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    let d = &factor * &pivot_row[c];
                    row[c] -= d;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    fn apply(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = vec![row(&[1, 2]), row(&[3, 4])];
        assert!(nullspace(&m, 2).is_empty());
    }

    #[test]
    fn rank_one() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(apply(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(nullspace(&[], 3).len(), 3);
    }
}
