//! Valued acyclic quivers, the weighted pairing, Cartan matrix, Euler form and g-vectors.

use crate::rational::{q, RationalVector, Q};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver must have at least one vertex")]
    NoVertices,
    #[error("expected {expected} vertex weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("vertex weight f_{vertex} must be positive")]
    ZeroWeight { vertex: usize },
    #[error("arrow {from}->{to} refers to a vertex outside 1..={n}")]
    VertexOutOfRange { from: usize, to: usize, n: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("duplicate arrow {from}->{to}")]
    DuplicateArrow { from: usize, to: usize },
    #[error("arrow {from}->{to}: valuation must be positive")]
    ZeroValuation { from: usize, to: usize },
    #[error("arrow {from}->{to}: f_i*d_ij = {lhs} but f_j*d_ji = {rhs}")]
    Incompatible {
        from: usize,
        to: usize,
        lhs: u64,
        rhs: u64,
    },
    #[error("quiver has an oriented cycle")]
    Cycle,
    #[error("vector has length {got}, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// An arrow `source -> target` carrying the valuation `(d_st, d_ts)`.
/// Vertices are 0-based in memory and 1-based in text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub d_st: u32,
    pub d_ts: u32,
}

/// A dimension vector, one integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn new(v: Vec<i64>) -> Self {
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn to_rational(&self) -> RationalVector {
        self.0.iter().map(|&x| q(x)).collect()
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    /// Space separated form used by the word listings.
    pub fn spaced(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedQuiver {
    n: usize,
    f: Vec<u32>,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

impl ValuedQuiver {
    pub fn new(n: usize, f: Vec<u32>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::NoVertices);
        }
        if f.len() != n {
            return Err(QuiverError::WeightCount {
                expected: n,
                got: f.len(),
            });
        }
        if let Some(i) = f.iter().position(|&x| x == 0) {
            return Err(QuiverError::ZeroWeight { vertex: i + 1 });
        }
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(QuiverError::VertexOutOfRange {
                    from: a.source + 1,
                    to: a.target + 1,
                    n,
                });
            }
            if a.source == a.target {
                return Err(QuiverError::Loop {
                    vertex: a.source + 1,
                });
            }
            if !seen.insert((a.source, a.target)) {
                return Err(QuiverError::DuplicateArrow {
                    from: a.source + 1,
                    to: a.target + 1,
                });
            }
            if a.d_st == 0 || a.d_ts == 0 {
                return Err(QuiverError::ZeroValuation {
                    from: a.source + 1,
                    to: a.target + 1,
                });
            }
            let lhs = f[a.source] as u64 * a.d_st as u64;
            let rhs = f[a.target] as u64 * a.d_ts as u64;
            if lhs != rhs {
                return Err(QuiverError::Incompatible {
                    from: a.source + 1,
                    to: a.target + 1,
                    lhs,
                    rhs,
                });
            }
        }
        let topo = topological_order(n, &arrows).ok_or(QuiverError::Cycle)?;
        Ok(ValuedQuiver { n, f, arrows, topo })
    }

    /// Quiver with all weights and valuations equal to one.
    pub fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let arrows = edges
            .iter()
            .map(|&(s, t)| Arrow {
                source: s,
                target: t,
                d_st: 1,
                d_ts: 1,
            })
            .collect();
        Self::new(n, vec![1; n], arrows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &[u32] {
        &self.f
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Vertices in an order where every arrow goes forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Neighbours of `i` with the valuation number on `i`'s side.
    pub fn edge_values(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.arrows.iter().filter_map(move |a| {
            if a.source == i {
                Some((a.target, a.d_st))
            } else if a.target == i {
                Some((a.source, a.d_ts))
            } else {
                None
            }
        })
    }

    fn check_len(&self, len: usize) -> Result<(), QuiverError> {
        if len != self.n {
            return Err(QuiverError::LengthMismatch {
                expected: self.n,
                got: len,
            });
        }
        Ok(())
    }

    /// `<x, b> = sum_i x_i b_i f_i`.
    pub fn weighted_pairing(&self, x: &[Q], b: &DimVector) -> Result<Q, QuiverError> {
        self.check_len(x.len())?;
        self.check_len(b.len())?;
        Ok(x.iter()
            .zip(&b.0)
            .zip(&self.f)
            .fold(Q::zero(), |acc, ((xi, &bi), &fi)| {
                acc + xi * q(bi * fi as i64)
            }))
    }

    /// The normal vector of the hyperplane `<x, b> = 0`, so that the pairing is a dot product.
    pub fn pairing_normal(&self, b: &DimVector) -> RationalVector {
        b.0.iter()
            .zip(&self.f)
            .map(|(&bi, &fi)| q(bi * fi as i64))
            .collect()
    }

    /// Entry `[j][i]` is the dimension of the projective `P_i` at vertex `j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; self.n]; self.n];
        for i in 0..self.n {
            let mut p = vec![0i64; self.n];
            p[i] = 1;
            for &j in &self.topo {
                for a in self.arrows.iter().filter(|a| a.target == j) {
                    p[j] += p[a.source] * a.d_ts as i64;
                }
            }
            for j in 0..self.n {
                c[j][i] = p[j];
            }
        }
        c
    }

    pub fn projective(&self, i: usize) -> DimVector {
        let c = self.cartan_matrix();
        DimVector((0..self.n).map(|j| c[j][i]).collect())
    }

    /// Solves `C g = d`. The Cartan matrix is unitriangular in topological order.
    pub fn g_vector(&self, d: &DimVector) -> Result<RationalVector, QuiverError> {
        self.check_len(d.len())?;
        let c = self.cartan_matrix();
        let mut g = vec![0i64; self.n];
        for (pos, &j) in self.topo.iter().enumerate() {
            let mut v = d.0[j];
            for &i in &self.topo[..pos] {
                v -= c[j][i] * g[i];
            }
            g[j] = v;
        }
        Ok(g.into_iter().map(q).collect())
    }

    /// Euler form in base-field dimensions: `hom - ext` between modules of these dimension vectors.
    pub fn euler_pairing(&self, a: &DimVector, b: &DimVector) -> Result<i64, QuiverError> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let mut s: i64 = (0..self.n)
            .map(|i| self.f[i] as i64 * a.0[i] * b.0[i])
            .sum();
        for ar in &self.arrows {
            s -= self.f[ar.source] as i64 * ar.d_st as i64 * a.0[ar.source] * b.0[ar.target];
        }
        Ok(s)
    }

    /// A hash of the quiver text that does not depend on the process.
    pub fn stable_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in self.to_text().bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        if self.f.iter().any(|&x| x != 1) {
            let parts: Vec<String> = self.f.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("f {}\n", parts.join(" ")));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {} {} {} {}\n",
                a.source + 1,
                a.target + 1,
                a.d_st,
                a.d_ts
            ));
        }
        out
    }

    /// Parses the quiver text format from numbered lines.
    pub fn parse_lines<'a, I>(lines: I) -> Result<Self, QuiverError>
    where
        I: IntoIterator<Item = (usize, &'a str)>,
    {
        let mut n: Option<usize> = None;
        let mut f: Option<(usize, Vec<u32>)> = None;
        let mut arrows = Vec::new();
        let mut last_line = 0;
        for (line, raw) in lines {
            last_line = line;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let mut words = text.split_whitespace();
            let key = words.next().unwrap_or_default();
            let rest: Vec<&str> = words.collect();
            let perr = |reason: String| QuiverError::Parse { line, reason };
            let ints = |xs: &[&str]| -> Result<Vec<u64>, QuiverError> {
                xs.iter()
                    .map(|w| {
                        w.parse::<u64>().map_err(|_| {
                            perr(format!("expected a nonnegative integer, found `{w}`"))
                        })
                    })
                    .collect()
            };
            match key {
                "vertices" => {
                    if n.is_some() {
                        return Err(perr("repeated `vertices` line".into()));
                    }
                    let v = ints(&rest)?;
                    if v.len() != 1 {
                        return Err(perr("`vertices` takes one number".into()));
                    }
                    n = Some(v[0] as usize);
                }
                "f" => {
                    if f.is_some() {
                        return Err(perr("repeated `f` line".into()));
                    }
                    let v = ints(&rest)?;
                    f = Some((line, v.into_iter().map(|x| x as u32).collect()));
                }
                "arrow" => {
                    let Some(nv) = n else {
                        return Err(perr("`arrow` before `vertices`".into()));
                    };
                    let v = ints(&rest)?;
                    let (s, t, dst, dts) = match v.as_slice() {
                        [s, t] => (*s, *t, 1, 1),
                        [s, t, a, b] => (*s, *t, *a, *b),
                        _ => return Err(perr("`arrow` takes `i j` or `i j d_ij d_ji`".into())),
                    };
                    if s == 0 || t == 0 || s as usize > nv || t as usize > nv {
                        return Err(perr(format!("vertex out of range 1..={nv}")));
                    }
                    arrows.push((
                        line,
                        Arrow {
                            source: s as usize - 1,
                            target: t as usize - 1,
                            d_st: dst as u32,
                            d_ts: dts as u32,
                        },
                    ));
                }
                other => return Err(perr(format!("unknown keyword `{other}`"))),
            }
        }
        let Some(n) = n else {
            return Err(QuiverError::Parse {
                line: last_line.max(1),
                reason: "missing `vertices` line".into(),
            });
        };
        let (f_line, f) = f.unwrap_or((0, vec![1; n]));
        if f.len() != n {
            return Err(QuiverError::Parse {
                line: f_line,
                reason: format!("expected {n} weights, got {}", f.len()),
            });
        }
        // report per-arrow problems at the offending line
        for (k, (line, _)) in arrows.iter().enumerate() {
            let prefix: Vec<Arrow> = arrows[..=k].iter().map(|(_, a)| a.clone()).collect();
            if let Err(e) = check_arrows(n, &f, &prefix) {
                return Err(QuiverError::Parse {
                    line: *line,
                    reason: e.to_string(),
                });
            }
        }
        let arrows: Vec<Arrow> = arrows.into_iter().map(|(_, a)| a).collect();
        ValuedQuiver::new(n, f, arrows)
    }

    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        Self::parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }
}

fn check_arrows(n: usize, f: &[u32], arrows: &[Arrow]) -> Result<(), QuiverError> {
    ValuedQuiver::new(n, f.to_vec(), arrows.to_vec()).map(|_| ())
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.insert(a.target);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn a3() -> ValuedQuiver {
        // 1 <- 2 <- 3
        ValuedQuiver::simply_laced(3, &[(1, 0), (2, 1)]).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let q3 = a3();
        assert_eq!(
            q3.weighted_pairing(&qvec(&[1, 1, 1]), &DimVector(vec![1, 1, 0]))
                .unwrap(),
            q(2)
        );
        assert_eq!(
            q3.weighted_pairing(&qvec(&[2, -1, 0]), &DimVector(vec![1, 1, 1]))
                .unwrap(),
            q(1)
        );
        assert!(q3
            .weighted_pairing(&qvec(&[1, 1]), &DimVector(vec![1, 1, 0]))
            .is_err());
    }

    #[test]
    fn cartan_of_linear_a3() {
        let c = a3().cartan_matrix();
        let col = |i: usize| (0..3).map(|j| c[j][i]).collect::<Vec<_>>();
        assert_eq!(col(0), vec![1, 0, 0]);
        assert_eq!(col(1), vec![1, 1, 0]);
        assert_eq!(col(2), vec![1, 1, 1]);
    }

    #[test]
    fn cartan_without_arrows_is_identity() {
        let q = ValuedQuiver::simply_laced(3, &[]).unwrap();
        assert_eq!(
            q.cartan_matrix(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn cartan_of_doubled_arrow() {
        let q = ValuedQuiver::new(
            2,
            vec![1, 1],
            vec![Arrow {
                source: 0,
                target: 1,
                d_st: 2,
                d_ts: 2,
            }],
        )
        .unwrap();
        assert_eq!(q.projective(0), DimVector(vec![1, 2]));
    }

    #[test]
    fn g_vectors_of_a3() {
        let q3 = a3();
        assert_eq!(
            q3.g_vector(&DimVector(vec![1, 0, 0])).unwrap(),
            qvec(&[1, 0, 0])
        );
        assert_eq!(
            q3.g_vector(&DimVector(vec![0, 1, 0])).unwrap(),
            qvec(&[-1, 1, 0])
        );
        assert_eq!(
            q3.g_vector(&DimVector(vec![1, 1, 0])).unwrap(),
            qvec(&[0, 1, 0])
        );
        assert_eq!(
            q3.g_vector(&DimVector(vec![0, 0, 0])).unwrap(),
            qvec(&[0, 0, 0])
        );
    }

    #[test]
    fn euler_of_a3() {
        let q3 = a3();
        let a1 = DimVector(vec![1, 0, 0]);
        let a2 = DimVector(vec![0, 1, 0]);
        let a4 = DimVector(vec![1, 1, 0]);
        assert_eq!(q3.euler_pairing(&a1, &a2).unwrap(), 0);
        assert_eq!(q3.euler_pairing(&a2, &a1).unwrap(), -1);
        assert_eq!(q3.euler_pairing(&a1, &a4).unwrap(), 1);
        assert_eq!(q3.euler_pairing(&a4, &a1).unwrap(), 0);
        assert_eq!(q3.euler_pairing(&a2, &a2).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_quivers() {
        let bad = ValuedQuiver::new(
            2,
            vec![1, 2],
            vec![Arrow {
                source: 0,
                target: 1,
                d_st: 1,
                d_ts: 1,
            }],
        );
        assert!(matches!(bad, Err(QuiverError::Incompatible { .. })));
        assert!(matches!(
            ValuedQuiver::simply_laced(2, &[(0, 1), (1, 0)]),
            Err(QuiverError::DuplicateArrow { .. }) | Err(QuiverError::Cycle)
        ));
        assert!(matches!(
            ValuedQuiver::simply_laced(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(QuiverError::Cycle)
        ));
        assert!(matches!(
            ValuedQuiver::simply_laced(2, &[(0, 0)]),
            Err(QuiverError::Loop { .. })
        ));
        assert!(matches!(
            ValuedQuiver::simply_laced(2, &[(0, 1), (0, 1)]),
            Err(QuiverError::DuplicateArrow { .. })
        ));
    }

    #[test]
    fn parse_round_trip() {
        let text = "# B2\nvertices 2\nf 1 2\narrow 1 2 2 1\n";
        let q = ValuedQuiver::parse(text).unwrap();
        assert_eq!(q.f(), &[1, 2]);
        assert_eq!(ValuedQuiver::parse(&q.to_text()).unwrap(), q);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = ValuedQuiver::parse("vertices 2\narrow 1 3\n").unwrap_err();
        assert!(matches!(err, QuiverError::Parse { line: 2, .. }));
        let err = ValuedQuiver::parse("vertices 2\nf 1 2\narrow 1 2 1 1\n").unwrap_err();
        assert!(matches!(err, QuiverError::Parse { line: 3, .. }));
        let err = ValuedQuiver::parse("vertices 2\nbogus\n").unwrap_err();
        assert!(matches!(err, QuiverError::Parse { line: 2, .. }));
    }
}
