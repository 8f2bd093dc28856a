//! Dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Row-major matrix of exact rationals.
pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form. Zero rows are dropped; returns the rows and
/// their pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (QMatrix, Vec<usize>) {
    let mut m: QMatrix = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in m[row].iter_mut() {
            *c *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of the right kernel `{v : A v = 0}` of an `nrows x ncols` matrix,
/// returned in reduced row echelon form.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> QMatrix {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    rref(&basis, ncols).0
}

/// Whether `v` is an integer combination of `gens` (all of length `ncols`).
pub fn lattice_contains(gens: &[Vec<Rational>], v: &[Rational], ncols: usize) -> bool {
    let denom = gens
        .iter()
        .flatten()
        .chain(v)
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = |row: &[Rational]| -> Vec<BigInt> { row.iter().map(|q| (q * &denom).to_integer()).collect() };
    let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|r| scale(r)).collect();
    let mut target = scale(v);
    // Integer row echelon form by repeated Euclidean steps in each column.
    let mut top = 0;
    for col in 0..ncols {
        loop {
            let live: Vec<usize> = (top..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            let Some(&best) = live
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            rows.swap(top, best);
            if live.len() == 1 {
                break;
            }
            for r in top + 1..rows.len() {
                if !rows[r][col].is_zero() {
                    let f = rows[r][col].div_floor(&rows[top][col]);
                    for c in 0..ncols {
                        let d = &f * &rows[top][c];
                        rows[r][c] -= d;
                    }
                }
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            let (q, rem) = target[col].div_rem(&rows[top][col]);
            if !rem.is_zero() {
                return false;
            }
            for c in 0..ncols {
                let d = &q * &rows[top][c];
                target[c] -= d;
            }
            top += 1;
        } else if !target[col].is_zero() {
            return false;
        }
    }
    target.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        let (r, p) = rref(&rows, 2);
        assert_eq!(r, vec![vec![q(1), q(2)]]);
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_of_single_row() {
        // 2a + b = 0  ->  (1, -2) up to scale
        let k = kernel(&[vec![q(2), q(1)]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] * q(2) + &k[0][1], q(0));
    }

    #[test]
    fn lattice_membership() {
        let gens = vec![vec![q(2), q(0)], vec![q(1), q(3)]];
        assert!(lattice_contains(&gens, &[q(3), q(3)], 2));
        assert!(lattice_contains(&gens, &[q(0), q(6)], 2));
        assert!(!lattice_contains(&gens, &[q(0), q(3)], 2));
        assert!(!lattice_contains(&gens, &[q(1), q(0)], 2));
        let half = Rational::new(1.into(), 2.into());
        assert!(lattice_contains(&[vec![half.clone()]], &[q(3)], 1));
        assert!(!lattice_contains(&[vec![q(1)]], &[half], 1));
    }
}
