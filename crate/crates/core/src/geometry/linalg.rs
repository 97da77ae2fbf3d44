//! Small exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rat;

pub fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[i64], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + y * Rat::from_integer(BigInt::from(*x)))
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[row].len() {
                    let v = &m[row][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

pub fn rank_i64(rows: &[Vec<i64>], ncols: usize) -> usize {
    let m: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(r)).collect();
    rank(&m, ncols)
}

/// Basis of `{v : rows * v = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn nullspace_i64(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(r)).collect();
    nullspace(&m, ncols).iter().map(|v| primitive(v)).collect()
}

/// Unique solution of a square system, if nonsingular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Scale a rational vector to coprime integers, keeping direction.
pub fn primitive(v: &[Rat]) -> Vec<i64> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("integer vector fits in i64"))
        .collect()
}

pub fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn det3(a: [&[i64]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_a_line() {
        let ns = nullspace_i64(&[vec![1, 1, 0]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(dot(v, &[1, 1, 0]), 0);
        }
    }

    #[test]
    fn solve_two_by_two() {
        let a = vec![to_rat(&[2, 1]), to_rat(&[1, 2])];
        let x = solve(&a, &to_rat(&[3, 3])).unwrap();
        assert_eq!(x, to_rat(&[1, 1]));
        let s = vec![to_rat(&[1, 1]), to_rat(&[2, 2])];
        assert!(solve(&s, &to_rat(&[0, 0])).is_none());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&to_rat(&[4, -6])), vec![2, -3]);
        assert_eq!(primitive_i64(&[0, -6, 9]), vec![0, -2, 3]);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(det3([&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]), 6);
    }
}
