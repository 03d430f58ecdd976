//! Exceptional representations over finite fields and the hom/ext/subroot/quotient tables.
//!
//! A valued arrow `i -> j` is realized by `f_i d_ij / lcm(f_i, f_j)` independent maps
//! `V_i -> V_j`, each linear over the common subfield of `F_i` and `F_j`. Every vertex
//! space is stored over the prime field together with the action of a generator of `F_i`.

pub mod field;
pub mod modp;
pub mod poly;

use crate::quiver::{DimVector, ValuedQuiver};
use crate::roots::{RootId, RootTable};
use field::FieldTower;
use modp::{Fp, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Primes tried in turn when building a hom table.
pub const PRIMES: [u64; 3] = [32_749, 1_000_003, 2_147_483_647];
pub const ATTEMPTS_PER_ROOT: u64 = 32;
const SUBROOT_TRIES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("arrow {from}->{to}: weights {f_from} and {f_to} do not divide one another")]
    UnsupportedValuation {
        from: usize,
        to: usize,
        f_from: u32,
        f_to: u32,
    },
    #[error("no exceptional representation found for {0}")]
    NotSchurRoot(DimVector),
    #[error("hom({a},{b}) = {hom} is below the Euler form {euler}")]
    EulerInconsistency {
        a: DimVector,
        b: DimVector,
        hom: i64,
        euler: i64,
    },
}

/// The structure shared by all representations over one prime field.
#[derive(Debug, Clone)]
pub struct Species {
    quiver: ValuedQuiver,
    tower: FieldTower,
    /// Per arrow: number of independent maps, and the common subfield degree.
    arrow_copies: Vec<(usize, usize)>,
    seed: u64,
}

/// Per-vertex spaces over `F_p` and per-arrow structure maps.
#[derive(Debug, Clone)]
pub struct Representation {
    pub dim: DimVector,
    /// Prime-field dimension of each vertex space, `f_i * b_i`.
    pub space: Vec<usize>,
    /// For each arrow, its independent maps `V_source -> V_target`.
    pub maps: Vec<Vec<Mat>>,
}

/// A morphism given by one matrix per vertex.
pub type Morphism = Vec<Mat>;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn mix(parts: &[u64]) -> u64 {
    parts.iter().fold(0u64, |acc, &p| splitmix(acc ^ p))
}

impl Species {
    pub fn new(quiver: &ValuedQuiver, p: u64, seed: u64) -> Result<Self, ReprError> {
        let f = quiver.f();
        let mut degrees: Vec<usize> = f.iter().map(|&x| x as usize).collect();
        let mut arrow_copies = Vec::new();
        for a in quiver.arrows() {
            let (fs, ft) = (f[a.source], f[a.target]);
            if fs % ft != 0 && ft % fs != 0 {
                return Err(ReprError::UnsupportedValuation {
                    from: a.source + 1,
                    to: a.target + 1,
                    f_from: fs,
                    f_to: ft,
                });
            }
            let g = fs.min(ft) as usize;
            let l = fs.max(ft) as usize;
            let copies = (fs as usize * a.d_st as usize) / l;
            arrow_copies.push((copies, g));
            degrees.push(g);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(mix(&[seed, p, 0xf1e1d]));
        let tower = FieldTower::new(Fp::new(p), &degrees, &mut rng);
        Ok(Species {
            quiver: quiver.clone(),
            tower,
            arrow_copies,
            seed,
        })
    }

    pub fn fp(&self) -> Fp {
        self.tower.fp
    }

    pub fn quiver(&self) -> &ValuedQuiver {
        &self.quiver
    }

    fn vertex_action(&self, i: usize, b: usize) -> Option<Mat> {
        let fi = self.quiver.f()[i] as usize;
        self.tower.generator_action(fi).map(|j| j.block_diag(b))
    }

    fn common_action(&self, vertex: usize, g: usize, b: usize) -> Option<Mat> {
        let fi = self.quiver.f()[vertex] as usize;
        self.tower.subfield_action(fi, g).map(|m| m.block_diag(b))
    }

    /// A random structure map `V_s -> V_t` linear over the common subfield.
    fn random_arrow_map(&self, arrow: usize, rep_dim: &DimVector, rng: &mut ChaCha8Rng) -> Mat {
        let fp = self.fp();
        let a = &self.quiver.arrows()[arrow];
        let f = self.quiver.f();
        let (bs, bt) = (rep_dim.0[a.source] as usize, rep_dim.0[a.target] as usize);
        let (vs, vt) = (f[a.source] as usize * bs, f[a.target] as usize * bt);
        let g = self.arrow_copies[arrow].1;
        let (Some(ks), Some(kt)) = (
            self.common_action(a.source, g, bs),
            self.common_action(a.target, g, bt),
        ) else {
            return Mat::random(vt, vs, fp, rng);
        };
        // phi * ks = kt * phi
        let mut sys = Mat::zeros(vt * vs, vt * vs);
        for r in 0..vt {
            for c in 0..vs {
                let row = r * vs + c;
                for k in 0..vs {
                    let v = ks.get(k, c);
                    if v != 0 {
                        let col = r * vs + k;
                        sys.set(row, col, fp.add(sys.get(row, col), v));
                    }
                }
                for k in 0..vt {
                    let v = kt.get(r, k);
                    if v != 0 {
                        let col = k * vs + c;
                        sys.set(row, col, fp.sub(sys.get(row, col), v));
                    }
                }
            }
        }
        let basis = sys.nullspace(fp);
        let mut data = vec![0u64; vt * vs];
        for b in &basis {
            let coef = fp.random(rng);
            for (x, &y) in data.iter_mut().zip(b) {
                *x = fp.add(*x, fp.mul(coef, y));
            }
        }
        Mat {
            rows: vt,
            cols: vs,
            data,
        }
    }

    pub fn random_representation(&self, dim: &DimVector, rng: &mut ChaCha8Rng) -> Representation {
        let f = self.quiver.f();
        let space = dim
            .0
            .iter()
            .zip(f)
            .map(|(&b, &fi)| b as usize * fi as usize)
            .collect();
        let maps = (0..self.quiver.arrows().len())
            .map(|k| {
                (0..self.arrow_copies[k].0)
                    .map(|_| self.random_arrow_map(k, dim, rng))
                    .collect()
            })
            .collect();
        Representation {
            dim: dim.clone(),
            space,
            maps,
        }
    }

    /// The representation with all structure maps zero (semisimple).
    pub fn zero_representation(&self, dim: &DimVector) -> Representation {
        let f = self.quiver.f();
        let space: Vec<usize> = dim
            .0
            .iter()
            .zip(f)
            .map(|(&b, &fi)| b as usize * fi as usize)
            .collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                (0..self.arrow_copies[k].0)
                    .map(|_| Mat::zeros(space[a.target], space[a.source]))
                    .collect()
            })
            .collect();
        Representation {
            dim: dim.clone(),
            space,
            maps,
        }
    }

    /// A basis of `Hom(v, w)` over the prime field.
    pub fn hom_basis(&self, v: &Representation, w: &Representation) -> Vec<Morphism> {
        let fp = self.fp();
        let n = self.quiver.n();
        let mut offset = vec![0usize; n + 1];
        for i in 0..n {
            offset[i + 1] = offset[i] + w.space[i] * v.space[i];
        }
        let unknowns = offset[n];
        if unknowns == 0 {
            return Vec::new();
        }
        let var = |i: usize, r: usize, c: usize| offset[i] + r * v.space[i] + c;
        let mut rows: Vec<Vec<(usize, u64)>> = Vec::new();
        let f = self.quiver.f();
        // linearity over F_i at each vertex: h J_v - J_w h = 0
        for i in 0..n {
            if f[i] == 1 || v.space[i] == 0 || w.space[i] == 0 {
                continue;
            }
            let jv = self
                .vertex_action(i, v.dim.0[i] as usize)
                .expect("generator");
            let jw = self
                .vertex_action(i, w.dim.0[i] as usize)
                .expect("generator");
            for r in 0..w.space[i] {
                for c in 0..v.space[i] {
                    let mut row = Vec::new();
                    for k in 0..v.space[i] {
                        let x = jv.get(k, c);
                        if x != 0 {
                            row.push((var(i, r, k), x));
                        }
                    }
                    for k in 0..w.space[i] {
                        let x = jw.get(r, k);
                        if x != 0 {
                            row.push((var(i, k, c), fp.neg(x)));
                        }
                    }
                    rows.push(row);
                }
            }
        }
        // compatibility with each structure map: h_t phi_v - phi_w h_s = 0
        for (k, a) in self.quiver.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            for copy in 0..self.arrow_copies[k].0 {
                let pv = &v.maps[k][copy];
                let pw = &w.maps[k][copy];
                for r in 0..w.space[t] {
                    for c in 0..v.space[s] {
                        let mut row = Vec::new();
                        for m in 0..v.space[t] {
                            let x = pv.get(m, c);
                            if x != 0 {
                                row.push((var(t, r, m), x));
                            }
                        }
                        for m in 0..w.space[s] {
                            let x = pw.get(r, m);
                            if x != 0 {
                                row.push((var(s, m, c), fp.neg(x)));
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let mut sys = Mat::zeros(rows.len(), unknowns);
        for (ri, row) in rows.iter().enumerate() {
            for &(col, x) in row {
                sys.set(ri, col, fp.add(sys.get(ri, col), x));
            }
        }
        sys.nullspace(fp)
            .into_iter()
            .map(|vec| {
                (0..n)
                    .map(|i| Mat {
                        rows: w.space[i],
                        cols: v.space[i],
                        data: vec[offset[i]..offset[i + 1]].to_vec(),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn hom_dim(&self, v: &Representation, w: &Representation) -> usize {
        self.hom_basis(v, w).len()
    }

    /// Whether `End(v)` is a field of the dimension predicted by the Euler form.
    pub fn is_exceptional(&self, v: &Representation, rng: &mut ChaCha8Rng) -> bool {
        let expected = self.quiver.euler_pairing(&v.dim, &v.dim).unwrap_or(-1);
        let basis = self.hom_basis(v, v);
        if basis.len() as i64 != expected || basis.is_empty() {
            return false;
        }
        self.endomorphisms_form_field(v, &basis, rng)
    }

    fn endomorphisms_form_field(
        &self,
        v: &Representation,
        basis: &[Morphism],
        rng: &mut ChaCha8Rng,
    ) -> bool {
        let fp = self.fp();
        let d = basis.len();
        if d == 1 {
            return true;
        }
        let flatten = |m: &[Mat]| {
            m.iter()
                .flat_map(|x| x.data.iter().copied())
                .collect::<Vec<u64>>()
        };
        let identity: Morphism = v.space.iter().map(|&s| Mat::identity(s)).collect();
        for _ in 0..8 {
            let e = random_combination(basis, fp, rng);
            let times = |flat: &[u64]| {
                let mut pos = 0;
                let mut out = Vec::with_capacity(flat.len());
                for (i, &s) in v.space.iter().enumerate() {
                    let m = Mat {
                        rows: s,
                        cols: s,
                        data: flat[pos..pos + s * s].to_vec(),
                    };
                    pos += s * s;
                    out.extend(m.mul(&e[i], fp).data);
                }
                out
            };
            let mp = poly::minimal_polynomial(flatten(&identity), times, fp);
            if mp.len() == d + 1 && poly::is_irreducible(&mp, fp) {
                return true;
            }
        }
        false
    }

    /// A representation of dimension `dim` with field endomorphisms and no self-extensions.
    pub fn build_exceptional(
        &self,
        dim: &DimVector,
        root_key: u64,
    ) -> Result<Representation, ReprError> {
        for attempt in 0..ATTEMPTS_PER_ROOT {
            let mut rng =
                ChaCha8Rng::seed_from_u64(mix(&[self.seed, self.fp().p, root_key, attempt]));
            let rep = self.random_representation(dim, &mut rng);
            if self.is_exceptional(&rep, &mut rng) {
                return Ok(rep);
            }
        }
        Err(ReprError::NotSchurRoot(dim.clone()))
    }

    /// Whether some morphism `v -> w` is injective (`mono`) or surjective.
    pub fn has_morphism_of_full_rank(
        &self,
        v: &Representation,
        w: &Representation,
        mono: bool,
        key: u64,
    ) -> bool {
        let fp = self.fp();
        let target: Vec<usize> = if mono {
            v.space.clone()
        } else {
            w.space.clone()
        };
        let dims_ok = v
            .space
            .iter()
            .zip(&w.space)
            .all(|(a, b)| if mono { a <= b } else { a >= b });
        let basis = self.hom_basis(v, w);
        if basis.is_empty() {
            return target.iter().all(|&x| x == 0);
        }
        let full = |m: &Morphism| m.iter().zip(&target).all(|(x, &t)| x.rank(fp) == t);
        let mut rng = ChaCha8Rng::seed_from_u64(mix(&[self.seed, fp.p, key, mono as u64]));
        for _ in 0..SUBROOT_TRIES {
            if full(&random_combination(&basis, fp, &mut rng)) {
                return true;
            }
        }
        if !dims_ok {
            return false;
        }
        // exhaustive search over small coefficients
        let k = basis.len().min(6);
        let mut coef = vec![0u64; k];
        loop {
            let mut i = 0;
            while i < k && coef[i] == 3 {
                coef[i] = 0;
                i += 1;
            }
            if i == k {
                return false;
            }
            coef[i] += 1;
            let m: Morphism = (0..basis[0].len())
                .map(|vtx| {
                    let mut acc = Mat::zeros(basis[0][vtx].rows, basis[0][vtx].cols);
                    for (b, &c) in basis.iter().zip(&coef) {
                        acc = acc.add(&b[vtx].scale(c, fp), fp);
                    }
                    acc
                })
                .collect();
            if full(&m) {
                return true;
            }
        }
    }
}

fn random_combination(basis: &[Morphism], fp: Fp, rng: &mut ChaCha8Rng) -> Morphism {
    let coefs: Vec<u64> = basis.iter().map(|_| fp.random(rng)).collect();
    (0..basis[0].len())
        .map(|vtx| {
            let mut acc = Mat::zeros(basis[0][vtx].rows, basis[0][vtx].cols);
            for (b, &c) in basis.iter().zip(&coefs) {
                acc = acc.add(&b[vtx].scale(c, fp), fp);
            }
            acc
        })
        .collect()
}

/// Hom and ext dimensions plus subroot and quotient-root flags for every ordered pair of roots.
#[derive(Debug, Clone)]
pub struct HomTable {
    hom: Vec<Vec<i64>>,
    ext: Vec<Vec<i64>>,
    sub: Vec<Vec<bool>>,
    quot: Vec<Vec<bool>>,
    prime: u64,
}

impl HomTable {
    /// Builds witnesses for every root and fills all tables, escalating the prime on failure.
    pub fn build(q: &ValuedQuiver, roots: &RootTable, seed: u64) -> Result<Self, ReprError> {
        let mut last_err = None;
        for &p in &PRIMES {
            let species = Species::new(q, p, seed)?;
            match Self::build_with(&species, roots) {
                Ok(t) => return Ok(t),
                Err(e @ ReprError::UnsupportedValuation { .. }) => return Err(e),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.expect("at least one prime"))
    }

    pub fn build_with(species: &Species, roots: &RootTable) -> Result<Self, ReprError> {
        let q = species.quiver();
        let key = |id: RootId| mix(&[q.stable_hash(), id as u64]);
        let reps: Vec<Representation> = roots
            .iter()
            .map(|(id, d)| species.build_exceptional(d, key(id)))
            .collect::<Result<_, _>>()?;
        let m = roots.len();
        let mut hom = vec![vec![0i64; m]; m];
        let mut ext = vec![vec![0i64; m]; m];
        let mut sub = vec![vec![false; m]; m];
        let mut quot = vec![vec![false; m]; m];
        for a in 0..m {
            for b in 0..m {
                let h = species.hom_dim(&reps[a], &reps[b]) as i64;
                let e = q
                    .euler_pairing(roots.dim(a), roots.dim(b))
                    .expect("lengths match");
                if h < e {
                    return Err(ReprError::EulerInconsistency {
                        a: roots.dim(a).clone(),
                        b: roots.dim(b).clone(),
                        hom: h,
                        euler: e,
                    });
                }
                hom[a][b] = h;
                ext[a][b] = h - e;
                if a == b {
                    sub[a][b] = true;
                    quot[a][b] = true;
                } else if h > 0 {
                    let pair_key = mix(&[key(a), key(b)]);
                    sub[a][b] =
                        species.has_morphism_of_full_rank(&reps[a], &reps[b], true, pair_key);
                    quot[a][b] =
                        species.has_morphism_of_full_rank(&reps[a], &reps[b], false, pair_key);
                }
            }
        }
        Ok(HomTable {
            hom,
            ext,
            sub,
            quot,
            prime: species.fp().p,
        })
    }

    pub fn len(&self) -> usize {
        self.hom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_empty()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn hom(&self, a: RootId, b: RootId) -> i64 {
        self.hom[a][b]
    }

    pub fn ext(&self, a: RootId, b: RootId) -> i64 {
        self.ext[a][b]
    }

    /// `a` is isomorphic to a submodule of `b`.
    pub fn is_subroot(&self, a: RootId, b: RootId) -> bool {
        self.sub[a][b]
    }

    /// `c` is isomorphic to a quotient of `b`.
    pub fn is_quotient_root(&self, b: RootId, c: RootId) -> bool {
        self.quot[b][c]
    }

    pub fn hom_orthogonal(&self, a: RootId, b: RootId) -> bool {
        a != b && self.hom[a][b] == 0 && self.hom[b][a] == 0
    }

    /// Proper subroots of `b` among all roots of the table.
    pub fn proper_subroots(&self, b: RootId) -> Vec<RootId> {
        (0..self.len())
            .filter(|&a| a != b && self.sub[a][b])
            .collect()
    }

    /// Proper quotient roots of `b`.
    pub fn proper_quotients(&self, b: RootId) -> Vec<RootId> {
        (0..self.len())
            .filter(|&c| c != b && self.quot[b][c])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;
    use crate::roots::DEFAULT_ROOT_CAP;

    fn a3() -> ValuedQuiver {
        ValuedQuiver::simply_laced(3, &[(1, 0), (2, 1)]).unwrap()
    }

    fn table(q: &ValuedQuiver) -> (RootTable, HomTable) {
        let roots = RootTable::positive_roots(q, DEFAULT_ROOT_CAP).unwrap();
        let homs = HomTable::build(q, &roots, 1).unwrap();
        (roots, homs)
    }

    fn id(roots: &RootTable, v: &[i64]) -> RootId {
        roots.id_of(&DimVector(v.to_vec())).unwrap()
    }

    #[test]
    fn a3_hom_and_ext() {
        let q = a3();
        let (r, h) = table(&q);
        let (a1, a2, a3, a4) = (
            id(&r, &[1, 0, 0]),
            id(&r, &[0, 1, 0]),
            id(&r, &[0, 0, 1]),
            id(&r, &[1, 1, 0]),
        );
        assert_eq!(h.hom(a1, a4), 1);
        assert_eq!(h.hom(a4, a1), 0);
        assert_eq!(h.hom(a3, a1), 0);
        assert_eq!(h.ext(a2, a1), 1);
        assert_eq!(h.ext(a1, a2), 0);
        assert_eq!(h.ext(a3, a2), 1);
        assert_eq!(h.ext(a2, a3), 0);
        for x in r.ids() {
            assert_eq!(h.hom(x, x), 1);
            assert_eq!(h.ext(x, x), 0);
        }
    }

    #[test]
    fn a3_sub_and_quotient_roots() {
        let q = a3();
        let (r, h) = table(&q);
        let (a1, a2, a4) = (id(&r, &[1, 0, 0]), id(&r, &[0, 1, 0]), id(&r, &[1, 1, 0]));
        assert!(h.is_subroot(a1, a4));
        assert!(!h.is_subroot(a2, a4));
        assert!(h.is_subroot(a4, a4));
        assert!(h.is_quotient_root(a4, a2));
        assert!(!h.is_quotient_root(a4, a1));
        assert!(h.is_quotient_root(a4, a4));
    }

    #[test]
    fn zero_map_is_not_a_brick() {
        let q = ValuedQuiver::simply_laced(2, &[(0, 1)]).unwrap();
        let sp = Species::new(&q, PRIMES[0], 3).unwrap();
        let d = DimVector(vec![1, 1]);
        let zero = sp.zero_representation(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sp.hom_dim(&zero, &zero), 2);
        assert!(!sp.is_exceptional(&zero, &mut rng));
        let rep = sp.build_exceptional(&d, 9).unwrap();
        assert!(!rep.maps[0][0].is_zero());
    }

    #[test]
    fn simple_root_has_simple_representation() {
        let q = a3();
        let sp = Species::new(&q, PRIMES[0], 3).unwrap();
        let rep = sp.build_exceptional(&DimVector(vec![0, 1, 0]), 2).unwrap();
        assert_eq!(rep.space, vec![0, 1, 0]);
        assert_eq!(sp.hom_dim(&rep, &rep), 1);
    }

    #[test]
    fn b2_species_matches_euler_form() {
        let q = ValuedQuiver::new(
            2,
            vec![1, 2],
            vec![Arrow {
                source: 0,
                target: 1,
                d_st: 2,
                d_ts: 1,
            }],
        )
        .unwrap();
        let (r, h) = table(&q);
        for a in r.ids() {
            assert_eq!(h.hom(a, a), q.euler_pairing(r.dim(a), r.dim(a)).unwrap());
            for b in r.ids() {
                assert!(h.ext(a, b) >= 0);
            }
        }
    }

    #[test]
    fn g2_species_builds() {
        let q = ValuedQuiver::new(
            2,
            vec![1, 3],
            vec![Arrow {
                source: 0,
                target: 1,
                d_st: 3,
                d_ts: 1,
            }],
        )
        .unwrap();
        let (r, h) = table(&q);
        assert_eq!(r.len(), 6);
        for a in r.ids() {
            assert_eq!(h.ext(a, a), 0);
        }
    }

    #[test]
    fn rejects_coprime_weights() {
        let q = ValuedQuiver::new(
            2,
            vec![2, 3],
            vec![Arrow {
                source: 0,
                target: 1,
                d_st: 3,
                d_ts: 2,
            }],
        )
        .unwrap();
        assert!(matches!(
            Species::new(&q, PRIMES[0], 0),
            Err(ReprError::UnsupportedValuation { .. })
        ));
    }
}
