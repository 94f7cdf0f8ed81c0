//! Exact Gauss–Jordan elimination over a field.

use crate::scalar::Field;

/// Row-reduces in place and returns the pivot columns.
pub fn rref<C: Field>(m: &mut [Vec<C>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = m[r][j].times(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.times(&m[r][j]);
                    m[i][j] = m[i][j].minus(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<C: Field>(m: &[Vec<C>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right null space; one vector per free column, with that
/// column set to one.
pub fn nullspace<C: Field>(m: &[Vec<C>], cols: usize) -> Vec<Vec<C>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(); cols];
            v[f] = C::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][f].negated();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square nonsingular `A`; `None` when singular.
pub fn solve<C: Field>(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let n = a.len();
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    #[test]
    fn solves_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }

    #[test]
    fn nullspace_dimension() {
        let a: Vec<Vec<Rational>> = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rational = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert_eq!(s, int(0));
        }
        assert!(solve(&[vec![int(1), int(2)], vec![int(2), int(4)]], &[int(1), int(2)]).is_none());
    }
}
