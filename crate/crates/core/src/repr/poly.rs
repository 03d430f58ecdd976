//! Polynomials over `F_p`, coefficients stored from the constant term up.

use super::modp::{Fp, Mat};

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    let t = a.iter().rposition(|&c| c != 0)?;
    Some(t)
}

pub fn sub(a: &Poly, b: &Poly, fp: Fp) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            fp.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

pub fn mul(a: &Poly, b: &Poly, fp: Fp) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    trim(out)
}

pub fn rem(a: &Poly, m: &Poly, fp: Fp) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let mut r = trim(a.clone());
    let lead_inv = fp.inv(m[dm]);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = fp.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for i in 0..=dm {
            r[shift + i] = fp.sub(r[shift + i], fp.mul(factor, m[i]));
        }
        r = trim(r);
    }
    r
}

pub fn mulmod(a: &Poly, b: &Poly, m: &Poly, fp: Fp) -> Poly {
    rem(&mul(a, b, fp), m, fp)
}

pub fn powmod(base: &Poly, mut e: u64, m: &Poly, fp: Fp) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(base, m, fp);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, fp);
        }
        b = mulmod(&b, &b, m, fp);
        e >>= 1;
    }
    rem(&result, m, fp)
}

pub fn gcd(a: &Poly, b: &Poly, fp: Fp) -> Poly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while degree(&y).is_some() {
        let r = rem(&x, &y, fp);
        x = y;
        y = r;
    }
    x
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly, fp: Fp) -> bool {
    let Some(d) = degree(f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![rem(&x, f, fp)];
    for k in 1..=d {
        let next = powmod(&frob[k - 1], fp.p, f, fp);
        frob.push(next);
    }
    if degree(&sub(&frob[d], &x, fp)).is_some() {
        return false;
    }
    for r in prime_factors(d) {
        let h = sub(&frob[d / r], &x, fp);
        let g = gcd(f, &h, fp);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Minimal polynomial of an element of a finite-dimensional algebra, given the
/// flattened identity and a multiplication-by-element map. Returns a monic polynomial.
pub fn minimal_polynomial(identity: Vec<u64>, times: impl Fn(&[u64]) -> Vec<u64>, fp: Fp) -> Poly {
    let mut powers: Vec<Vec<u64>> = vec![identity];
    loop {
        let next = times(powers.last().expect("nonempty"));
        let len = next.len();
        let mut m = Mat::zeros(len, powers.len());
        for (j, v) in powers.iter().enumerate() {
            for i in 0..len {
                m.set(i, j, v[i]);
            }
        }
        if let Some(c) = m.solve(&next, fp) {
            let mut poly: Poly = c.iter().map(|&x| fp.neg(x)).collect();
            poly.push(1);
            return poly;
        }
        powers.push(next);
    }
}
