//! Exact rational helpers shared by the geometric modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub type Q = BigRational;

/// A point of the ambient space with exact coordinates.
pub type RationalVector = Vec<Q>;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qvec(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sign(x: &Q) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

pub fn neg(v: &[Q]) -> RationalVector {
    v.iter().map(|x| -x).collect()
}

pub fn scale(v: &[Q], s: &Q) -> RationalVector {
    v.iter().map(|x| x * s).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn cross(a: &[Q], b: &[Q]) -> RationalVector {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn det3(a: &[Q], b: &[Q], c: &[Q]) -> Q {
    dot(&cross(a, b), c)
}

/// Scales a nonzero vector to the primitive integer vector on the same ray.
pub fn primitive_ray(v: &[Q]) -> RationalVector {
    use num_integer::Integer;
    let mut den = BigInt::from(1);
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[RationalVector]) -> usize {
    let mut m: Vec<RationalVector> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &pivot;
                for k in c..cols {
                    let t = &factor * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Solves `sum_k coeffs[k] * columns[k] = target` exactly, if a solution exists.
/// The columns are assumed linearly independent, so the solution is unique.
pub fn solve_combination(columns: &[RationalVector], target: &[Q]) -> Option<RationalVector> {
    let k = columns.len();
    let n = target.len();
    // augmented rows: n equations in k unknowns
    let mut m: Vec<RationalVector> = (0..n)
        .map(|i| {
            let mut row: RationalVector = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=k {
                    let t = &factor * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    if pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_qvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}
