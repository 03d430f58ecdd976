//! Finite fields `F_p ⊂ F_{p^d} ⊂ F_{p^N}` realized by matrices over `F_p`.

use super::modp::{Fp, Mat};
use super::poly::{self, Poly};
use rand::Rng;
use std::collections::BTreeMap;

/// One subfield `F_{p^d}` with a chosen generator `theta`.
#[derive(Debug, Clone)]
struct Subfield {
    /// `theta` as an element of `F_{p^N}` (a residue modulo the defining polynomial).
    theta: Poly,
    /// Multiplication by `theta` on the basis `1, theta, ..., theta^(d-1)`.
    companion: Mat,
}

#[derive(Debug, Clone)]
pub struct FieldTower {
    pub fp: Fp,
    big_degree: usize,
    modulus: Poly,
    subfields: BTreeMap<usize, Subfield>,
}

impl FieldTower {
    /// Builds `F_{p^N}` with `N = lcm(degrees)` and a generator of each requested subfield.
    pub fn new<R: Rng>(fp: Fp, degrees: &[usize], rng: &mut R) -> Self {
        let big_degree = degrees
            .iter()
            .fold(1usize, |acc, &d| num_integer::lcm(acc, d));
        let modulus = if big_degree == 1 {
            vec![0, 1]
        } else {
            loop {
                let mut f: Poly = (0..big_degree).map(|_| fp.random(rng)).collect();
                f.push(1);
                if poly::is_irreducible(&f, fp) {
                    break f;
                }
            }
        };
        let mut tower = FieldTower {
            fp,
            big_degree,
            modulus,
            subfields: BTreeMap::new(),
        };
        let mut wanted: Vec<usize> = degrees.iter().copied().filter(|&d| d > 1).collect();
        wanted.sort_unstable();
        wanted.dedup();
        for d in wanted {
            let sub = tower.find_subfield(d, rng);
            tower.subfields.insert(d, sub);
        }
        tower
    }

    fn as_vector(&self, a: &Poly) -> Vec<u64> {
        let mut v = vec![0u64; self.big_degree];
        for (i, &c) in a.iter().enumerate() {
            v[i] = c;
        }
        v
    }

    fn find_subfield<R: Rng>(&self, d: usize, rng: &mut R) -> Subfield {
        let fp = self.fp;
        let m = &self.modulus;
        loop {
            let z: Poly = poly::trim((0..self.big_degree).map(|_| fp.random(rng)).collect());
            // trace from F_{p^N} down to F_{p^d}
            let mut theta: Poly = Vec::new();
            let mut conj = poly::rem(&z, m, fp);
            for _ in 0..self.big_degree / d {
                theta = poly::trim(
                    (0..self.big_degree)
                        .map(|i| {
                            fp.add(
                                theta.get(i).copied().unwrap_or(0),
                                conj.get(i).copied().unwrap_or(0),
                            )
                        })
                        .collect(),
                );
                for _ in 0..d {
                    conj = poly::powmod(&conj, fp.p, m, fp);
                }
            }
            let times = |v: &[u64]| {
                let prod = poly::mulmod(&poly::trim(v.to_vec()), &theta, m, fp);
                self.as_vector(&prod)
            };
            let mp = poly::minimal_polynomial(self.as_vector(&vec![1]), times, fp);
            if mp.len() == d + 1 {
                let mut companion = Mat::zeros(d, d);
                for j in 0..d - 1 {
                    companion.set(j + 1, j, 1);
                }
                for k in 0..d {
                    companion.set(k, d - 1, fp.neg(mp[k]));
                }
                return Subfield { theta, companion };
            }
        }
    }

    /// Multiplication by the generator of `F_{p^d}` on `F_{p^d}` itself.
    pub fn generator_action(&self, d: usize) -> Option<&Mat> {
        self.subfields.get(&d).map(|s| &s.companion)
    }

    /// Multiplication by the generator of `F_{p^small}` on `F_{p^big}`, in the power basis of the latter.
    pub fn subfield_action(&self, big: usize, small: usize) -> Option<Mat> {
        if small <= 1 {
            return None;
        }
        if big == small {
            return self.generator_action(big).cloned();
        }
        let fp = self.fp;
        let m = &self.modulus;
        let b = self.subfields.get(&big)?;
        let s = self.subfields.get(&small)?;
        // coordinates of theta_small in the basis theta_big^k
        let mut basis = Mat::zeros(self.big_degree, big);
        let mut pw: Poly = vec![1];
        for k in 0..big {
            let v = self.as_vector(&pw);
            for i in 0..self.big_degree {
                basis.set(i, k, v[i]);
            }
            pw = poly::mulmod(&pw, &b.theta, m, fp);
        }
        let coords = basis.solve(&self.as_vector(&s.theta), fp)?;
        let mut out = Mat::zeros(big, big);
        let mut power = Mat::identity(big);
        for c in coords {
            out = out.add(&power.scale(c, fp), fp);
            power = power.mul(&b.companion, fp);
        }
        Some(out)
    }
}
