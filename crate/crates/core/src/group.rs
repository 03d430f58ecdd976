//! Picture group presentations, positive words and the rewrite closure.

use crate::context::RootContext;
use crate::order::find_lateral;
use crate::roots::RootId;
use crate::wide::gamma_chain;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

pub const DEFAULT_MAX_WORDS: usize = 1_000_000;
pub const DEFAULT_MAX_WORD_LEN: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rewrite closure exceeded {0}")]
    ClosureOverflow(Limit),
    #[error("the sequence contains no simple roots")]
    NoSimples,
    #[error(transparent)]
    Order(#[from] crate::order::OrderError),
    #[error("letter {0} is not a generator of the presentation")]
    UnknownLetter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Words(usize),
    Length(usize),
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Words(n) => write!(f, "the limit of {n} words"),
            Limit::Length(n) => write!(f, "the word length limit {n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_words: usize,
    pub max_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: DEFAULT_MAX_WORDS,
            max_len: DEFAULT_MAX_WORD_LEN,
        }
    }
}

/// A word in the generators `x(beta)` without inverses; letters are root ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PositiveWord(pub Vec<RootId>);

impl PositiveWord {
    pub fn letters(&self) -> &[RootId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: RootId) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PositiveWord(v)
    }

    /// Space separated dimension vectors of the letters.
    pub fn format_dims(&self, ctx: &RootContext) -> String {
        let parts: Vec<String> = self.0.iter().map(|&r| ctx.label(r)).collect();
        parts.join(" ")
    }
}

/// `x(left) x(right) = x(right) x(gamma_1) ... x(gamma_k) x(left)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub left: RootId,
    pub right: RootId,
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<RootId>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// One generator per root of `r` and one relation per hom-orthogonal pair.
    pub fn new(ctx: &RootContext, r: &[RootId]) -> Self {
        let mut relations = Vec::new();
        for (a, &ra) in r.iter().enumerate() {
            for &rb in &r[a + 1..] {
                if !ctx.homs.hom_orthogonal(ra, rb) {
                    continue;
                }
                let (i, j) = if ctx.homs.ext(ra, rb) == 0 {
                    (ra, rb)
                } else if ctx.homs.ext(rb, ra) == 0 {
                    (rb, ra)
                } else {
                    continue;
                };
                let chain =
                    gamma_chain(ctx, i, j, r).expect("pair is hom-orthogonal and ext-ordered");
                relations.push(Relation {
                    left: i,
                    right: j,
                    lhs: PositiveWord(vec![i, j]),
                    rhs: PositiveWord(chain),
                });
            }
        }
        Presentation {
            generators: r.to_vec(),
            relations,
        }
    }

    /// 1-based generator index of a root.
    pub fn index_of(&self, root: RootId) -> Option<usize> {
        self.generators
            .iter()
            .position(|&g| g == root)
            .map(|i| i + 1)
    }

    pub fn format_word(&self, w: &PositiveWord) -> String {
        let parts: Vec<String> =
            w.0.iter()
                .map(|&l| {
                    self.index_of(l)
                        .map_or_else(|| "?".to_string(), |i| i.to_string())
                })
                .collect();
        parts.join(" ")
    }

    /// The line format `gen <index> <dimvector>` and `rel <lhs> = <rhs>`.
    pub fn to_text(&self, ctx: &RootContext) -> String {
        let mut out = String::new();
        for (i, &g) in self.generators.iter().enumerate() {
            out.push_str(&format!("gen {} {}\n", i + 1, ctx.label(g)));
        }
        for rel in &self.relations {
            out.push_str(&format!(
                "rel {} = {}\n",
                self.format_word(&rel.lhs),
                self.format_word(&rel.rhs)
            ));
        }
        out
    }

    pub fn relation_between(&self, a: RootId, b: RootId) -> Option<&Relation> {
        self.relations
            .iter()
            .find(|r| (r.left == a && r.right == b) || (r.left == b && r.right == a))
    }

    fn check_letters(&self, w: &PositiveWord, ctx: Option<&RootContext>) -> Result<(), GroupError> {
        for &l in &w.0 {
            if !self.generators.contains(&l) {
                let name = ctx.map_or_else(|| l.to_string(), |c| c.label(l));
                return Err(GroupError::UnknownLetter(name));
            }
        }
        Ok(())
    }
}

/// Simple roots of `s` in lateral order.
pub fn coxeter_element(ctx: &RootContext, s: &[RootId]) -> Result<PositiveWord, GroupError> {
    let simples: Vec<RootId> = s.iter().copied().filter(|&r| ctx.is_simple(r)).collect();
    if simples.is_empty() {
        return Err(GroupError::NoSimples);
    }
    Ok(PositiveWord(find_lateral(ctx, &simples)?))
}

fn rewrites(w: &PositiveWord, p: &Presentation) -> Vec<PositiveWord> {
    let mut out = Vec::new();
    for rel in &p.relations {
        for (from, to) in [(&rel.lhs.0, &rel.rhs.0), (&rel.rhs.0, &rel.lhs.0)] {
            if from.len() > w.0.len() {
                continue;
            }
            for pos in 0..=w.0.len() - from.len() {
                if w.0[pos..pos + from.len()] == from[..] {
                    let mut v = Vec::with_capacity(w.0.len() - from.len() + to.len());
                    v.extend_from_slice(&w.0[..pos]);
                    v.extend_from_slice(to);
                    v.extend_from_slice(&w.0[pos + from.len()..]);
                    out.push(PositiveWord(v));
                }
            }
        }
    }
    out
}

/// All positive words reachable from `w` by replacing one side of a relation with the other.
pub fn rewrite_closure(
    w: &PositiveWord,
    p: &Presentation,
    limits: Limits,
) -> Result<BTreeSet<PositiveWord>, GroupError> {
    p.check_letters(w, None)?;
    search(w, p, limits, None).map(|(set, _)| set.into_iter().collect())
}

/// Breadth-first search; stops early when `goal` is reached.
fn search(
    w: &PositiveWord,
    p: &Presentation,
    limits: Limits,
    goal: Option<&PositiveWord>,
) -> Result<(HashSet<PositiveWord>, bool), GroupError> {
    if w.len() > limits.max_len {
        return Err(GroupError::ClosureOverflow(Limit::Length(limits.max_len)));
    }
    let mut seen: HashSet<PositiveWord> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    if goal == Some(w) {
        return Ok((seen, true));
    }
    while let Some(cur) = queue.pop_front() {
        for next in rewrites(&cur, p) {
            if seen.contains(&next) {
                continue;
            }
            if next.len() > limits.max_len {
                return Err(GroupError::ClosureOverflow(Limit::Length(limits.max_len)));
            }
            if seen.len() >= limits.max_words {
                return Err(GroupError::ClosureOverflow(Limit::Words(limits.max_words)));
            }
            if goal == Some(&next) {
                seen.insert(next);
                return Ok((seen, true));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok((seen, false))
}

/// Deletes every occurrence of `x(beta)`.
pub fn project_word(w: &PositiveWord, beta: RootId) -> PositiveWord {
    PositiveWord(w.0.iter().copied().filter(|&l| l != beta).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCReport {
    pub ok: bool,
    pub groups: usize,
    /// Two words with the same projection but different counts of the deleted letter.
    pub counterexample: Option<(PositiveWord, PositiveWord)>,
}

/// Words with equal projections must contain `x(beta)` equally often.
pub fn lemma_c_check<'a>(
    words: impl IntoIterator<Item = &'a PositiveWord>,
    beta: RootId,
) -> LemmaCReport {
    let mut by_projection: BTreeMap<PositiveWord, (usize, &PositiveWord)> = BTreeMap::new();
    for w in words {
        let c = w.count(beta);
        match by_projection.get(&project_word(w, beta)) {
            Some(&(c0, w0)) if c0 != c => {
                return LemmaCReport {
                    ok: false,
                    groups: by_projection.len(),
                    counterexample: Some((w0.clone(), w.clone())),
                };
            }
            Some(_) => {}
            None => {
                by_projection.insert(project_word(w, beta), (c, w));
            }
        }
    }
    LemmaCReport {
        ok: true,
        groups: by_projection.len(),
        counterexample: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaEVerdict {
    Commutes,
    /// The closure of `w0 x(beta)` was exhausted without meeting `x(beta) w0`.
    NotCommutesWithin(usize),
    Inconclusive,
}

/// Bounded search for a rewrite path from `w0 x(beta)` to `x(beta) w0`.
pub fn lemma_e_probe(
    w0: &PositiveWord,
    beta: RootId,
    p: &Presentation,
    limits: Limits,
) -> LemmaEVerdict {
    let left = w0.concat(&PositiveWord(vec![beta]));
    let right = PositiveWord(vec![beta]).concat(w0);
    match search(&left, p, limits, Some(&right)) {
        Ok((_, true)) => LemmaEVerdict::Commutes,
        Ok((_, false)) => LemmaEVerdict::NotCommutesWithin(limits.max_words),
        Err(_) => LemmaEVerdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::DEFAULT_SEED;
    use crate::quiver::ValuedQuiver;

    fn ctx() -> RootContext {
        let q = ValuedQuiver::simply_laced(3, &[(1, 0), (2, 1)]).unwrap();
        RootContext::build(&q, DEFAULT_SEED).unwrap()
    }

    fn ids(c: &RootContext, vs: &[&[i64]]) -> Vec<RootId> {
        vs.iter().map(|v| c.id(v).unwrap()).collect()
    }

    fn example(c: &RootContext) -> Vec<RootId> {
        ids(c, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn example_presentation_text() {
        let c = ctx();
        let p = Presentation::new(&c, &example(&c));
        let text = p.to_text(&c);
        assert_eq!(
            text,
            "gen 1 (1,0,0)\ngen 2 (0,1,0)\ngen 3 (1,1,0)\ngen 4 (0,0,1)\nrel 1 2 = 2 3 1\nrel 1 4 = 4 1\nrel 2 4 = 4 2\nrel 3 4 = 4 3\n"
        );
    }

    #[test]
    fn weakly_admissible_presentation_has_central_letter() {
        let c = ctx();
        let s = ids(&c, &[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        let p = Presentation::new(&c, &s);
        assert_eq!(p.relations.len(), 2);
        assert!(p
            .relations
            .iter()
            .all(|r| r.lhs.0.contains(&s[2]) && r.rhs.len() == 2));
    }

    #[test]
    fn single_generator() {
        let c = ctx();
        let s = ids(&c, &[&[0, 1, 0]]);
        let p = Presentation::new(&c, &s);
        assert!(p.relations.is_empty());
        assert_eq!(coxeter_element(&c, &s).unwrap(), PositiveWord(s.clone()));
    }

    #[test]
    fn coxeter_of_example_and_no_simples() {
        let c = ctx();
        let s = example(&c);
        assert_eq!(
            coxeter_element(&c, &s).unwrap(),
            PositiveWord(ids(&c, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]))
        );
        assert_eq!(
            coxeter_element(&c, &ids(&c, &[&[1, 1, 0]])),
            Err(GroupError::NoSimples)
        );
    }

    #[test]
    fn closure_of_example_coxeter_element() {
        let c = ctx();
        let s = example(&c);
        let p = Presentation::new(&c, &s);
        let cs = coxeter_element(&c, &s).unwrap();
        let cl = rewrite_closure(&cs, &p, Limits::default()).unwrap();
        let (x1, x2, x4, x3) = (s[0], s[1], s[2], s[3]);
        let expect: BTreeSet<PositiveWord> = [
            vec![x1, x2, x3],
            vec![x1, x3, x2],
            vec![x3, x1, x2],
            vec![x2, x4, x1, x3],
            vec![x2, x4, x3, x1],
            vec![x2, x3, x4, x1],
            vec![x3, x2, x4, x1],
        ]
        .into_iter()
        .map(PositiveWord)
        .collect();
        assert_eq!(cl, expect);
        // closed under re-running
        for w in &cl {
            assert_eq!(rewrite_closure(w, &p, Limits::default()).unwrap(), cl);
        }
        assert!(lemma_c_check(&cl, x4).ok);
    }

    #[test]
    fn closure_limits() {
        let c = ctx();
        let s = example(&c);
        let p = Presentation::new(&c, &s);
        let cs = coxeter_element(&c, &s).unwrap();
        let tight = Limits {
            max_words: 3,
            max_len: 64,
        };
        assert!(matches!(
            rewrite_closure(&cs, &p, tight),
            Err(GroupError::ClosureOverflow(Limit::Words(3)))
        ));
        let short = Limits {
            max_words: 100,
            max_len: 3,
        };
        assert!(matches!(
            rewrite_closure(&cs, &p, short),
            Err(GroupError::ClosureOverflow(Limit::Length(3)))
        ));
    }

    #[test]
    fn projection() {
        let w = PositiveWord(vec![1, 3, 0]);
        assert_eq!(project_word(&w, 3), PositiveWord(vec![1, 0]));
        assert_eq!(project_word(&w, 5), w);
        assert_eq!(
            project_word(&PositiveWord(vec![3, 3]), 3),
            PositiveWord(vec![])
        );
    }

    #[test]
    fn lemma_c_detects_bad_counts() {
        let a = PositiveWord(vec![0, 1]);
        let b = PositiveWord(vec![0, 1, 1]);
        let r = lemma_c_check([&a, &b], 1);
        assert!(!r.ok);
        assert!(lemma_c_check([&a], 1).ok);
    }

    #[test]
    fn lemma_e_probes() {
        let c = ctx();
        let s = example(&c);
        let p = Presentation::new(&c, &s);
        let (x1, x4, x3) = (s[0], s[2], s[3]);
        assert_eq!(
            lemma_e_probe(&PositiveWord(vec![x1]), x4, &p, Limits::default()),
            LemmaEVerdict::NotCommutesWithin(DEFAULT_MAX_WORDS)
        );
        assert_eq!(
            lemma_e_probe(&PositiveWord(vec![x1, x4]), x3, &p, Limits::default()),
            LemmaEVerdict::Commutes
        );
        assert_eq!(
            lemma_e_probe(&PositiveWord(vec![]), x4, &p, Limits::default()),
            LemmaEVerdict::Commutes
        );
        let tiny = Limits {
            max_words: 1,
            max_len: 64,
        };
        assert_eq!(
            lemma_e_probe(&PositiveWord(vec![x1, x4]), x3, &p, tiny),
            LemmaEVerdict::Inconclusive
        );
    }
}
