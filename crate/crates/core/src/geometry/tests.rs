use super::*;
use crate::context::DEFAULT_SEED;
use crate::group::Limits;
use crate::quiver::ValuedQuiver;
use crate::rational::qvec;
use std::collections::BTreeSet;

fn a3() -> RootContext {
    let q = ValuedQuiver::simply_laced(3, &[(1, 0), (2, 1)]).unwrap();
    RootContext::build(&q, DEFAULT_SEED).unwrap()
}

fn ids(c: &RootContext, vs: &[&[i64]]) -> Vec<RootId> {
    vs.iter().map(|v| c.id(v).unwrap()).collect()
}

const A1: &[i64] = &[1, 0, 0];
const A2: &[i64] = &[0, 1, 0];
const A3: &[i64] = &[0, 0, 1];
const A4: &[i64] = &[1, 1, 0];

fn signs(cs: &[Compartment]) -> BTreeSet<String> {
    cs.iter().map(|c| c.signs.to_string()).collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn five_and_ten_compartments() {
    let c = a3();
    let s0 = ids(&c, &[A1, A2, A4]);
    assert_eq!(
        signs(&admissible_sign_vectors(&c, &s0)),
        set(&["++0", "+-0", "-++", "-+-", "--0"])
    );
    let s = ids(&c, &[A1, A2, A4, A3]);
    let cs = admissible_sign_vectors(&c, &s);
    assert_eq!(cs.len(), 10);
    let arr = Arrangement::new(&c, &s);
    for comp in &cs {
        assert!(arr.region(&comp.signs.0).satisfied_by(&comp.witness));
        assert_eq!(arr.compartment_of_point(&comp.witness).unwrap(), comp.signs);
        assert!(!comp.walls.is_empty());
    }
}

#[test]
fn single_root_has_two_compartments_and_one_path() {
    let c = a3();
    let s = ids(&c, &[A2]);
    assert_eq!(signs(&admissible_sign_vectors(&c, &s)), set(&["+", "-"]));
    let (g, paths) = enumerate_mgs(&c, &s, DEFAULT_MAX_PATHS).unwrap();
    assert_eq!(g.edges.len(), 1);
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].word.0, s);
}

#[test]
fn points_and_their_compartments() {
    let c = a3();
    let s = ids(&c, &[A1, A2, A4, A3]);
    assert_eq!(
        compartment_of_point(&c, &qvec(&[-1, -1, -1]), &s)
            .unwrap()
            .to_string(),
        "--0-"
    );
    assert_eq!(
        compartment_of_point(&c, &qvec(&[1, 1, 1]), &s)
            .unwrap()
            .to_string(),
        "++0+"
    );
    assert_eq!(
        compartment_of_point(&c, &qvec(&[0, -1, -1]), &s),
        Err(GeometryError::OnWall(1))
    );
}

#[test]
fn weakly_admissible_sequence() {
    let c = a3();
    let s = ids(&c, &[A1, A4, A3]);
    let (g, paths) = enumerate_mgs(&c, &s, DEFAULT_MAX_PATHS).unwrap();
    assert_eq!(
        signs(&g.compartments),
        set(&["+0-", "+0+", "-+-", "-++", "--+", "---"])
    );
    let seqs: BTreeSet<Vec<String>> = paths
        .iter()
        .map(|p| {
            p.nodes
                .iter()
                .map(|&i| g.compartments[i].signs.to_string())
                .collect()
        })
        .collect();
    let want = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    assert!(seqs.contains(&want(&["---", "+0-", "+0+"])));
    assert!(seqs.contains(&want(&["---", "-+-", "+0-", "+0+"])));
}

#[test]
fn digraph_invariants() {
    let c = a3();
    let all: Vec<RootId> = c.roots.ids().collect();
    for s in [
        ids(&c, &[A1, A2, A4, A3]),
        ids(&c, &[A1, A4, A3]),
        ids(&c, &[A1, A2, A4]),
        all,
    ] {
        let g = green_digraph(&c, &s).unwrap();
        assert!(g.is_acyclic());
        assert!(g.edges_increase());
        assert!(g.uncovered().is_empty());
        assert!(g.compartments[g.source]
            .signs
            .0
            .iter()
            .all(|&x| x != Sign::Pos));
        assert!(g.compartments[g.sink]
            .signs
            .0
            .iter()
            .all(|&x| x != Sign::Neg));
        assert!(boundary_statement_violations(&Arrangement::new(&c, &s)).is_empty());
    }
}

#[test]
fn theorem_a_on_the_example() {
    let c = a3();
    let s = ids(&c, &[A1, A2, A4, A3]);
    let r = verify_theorem_a(&c, &s, Limits::default(), DEFAULT_MAX_PATHS).unwrap();
    assert!(r.ok(), "{r:?}");
    assert_eq!((r.mgs, r.closure), (7, 7));
}

#[test]
fn theorem_a_on_a_single_root() {
    let c = a3();
    let s = ids(&c, &[A3]);
    let r = verify_theorem_a(&c, &s, Limits::default(), DEFAULT_MAX_PATHS).unwrap();
    assert!(r.ok());
    assert_eq!((r.mgs, r.closure), (1, 1));
}

#[test]
fn path_cap_is_enforced() {
    let c = a3();
    let s = ids(&c, &[A1, A2, A4, A3]);
    assert_eq!(
        enumerate_mgs(&c, &s, 3).unwrap_err(),
        GeometryError::PathExplosion(3)
    );
}

#[test]
fn coxeter_paths() {
    let c = a3();
    let s = ids(&c, &[A1, A2, A4, A3]);
    let r = coxeter_path(&c, &s).unwrap();
    assert!(r.ok(), "{r:?}");
    assert_eq!(
        r.crossings.iter().map(|x| x.1.clone()).collect::<Vec<_>>(),
        qvec(&[1, 2, 3])
    );
    assert_eq!(r.word.0, ids(&c, &[A1, A2, A3]));
    let weak = ids(&c, &[A1, A4, A3]);
    let r = coxeter_path(&c, &weak).unwrap();
    assert_eq!(r.word.0, ids(&c, &[A1, A3]));
    assert_eq!(
        r.compartments
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>(),
        vec!["---", "+0-", "+0+"]
    );
}

#[test]
fn inescapable_regions() {
    let c = a3();
    let b = c.id(&[1, 1, 1]).unwrap();
    assert!(!region_membership(&c, &qvec(&[-1, -1, -1]), b).in_w);
    let x = crate::wide::wall_interior_point(&c, b).unwrap();
    let f = region_membership(&c, &x, b);
    assert!(f.in_v && !f.in_w);
}

#[test]
fn lemma_d_reports() {
    let c = a3();
    let s = ids(&c, &[A1, A2, A3, A4]);
    let r = lemma_d_check(&c, &s, DEFAULT_MAX_PATHS).unwrap();
    assert!(r.skipped.is_none() && r.ok(), "{r:?}");
    assert!(r.class2 > 0);
    let all: Vec<RootId> = c.roots.ids().collect();
    let r = lemma_d_check(&c, &all, DEFAULT_MAX_PATHS).unwrap();
    assert!(r.ok() && r.class2 > 0, "{r:?}");
    let r = lemma_d_check(&c, &ids(&c, &[A1, A2, A4, A3]), DEFAULT_MAX_PATHS).unwrap();
    assert!(r.skipped.is_some());
}

#[test]
fn classes_of_green_sequences() {
    let c = a3();
    let s0 = ids(&c, &[A1, A2, A3]);
    let b = c.id(A4).unwrap();
    let (_, paths) = enumerate_mgs(&c, &s0, DEFAULT_MAX_PATHS).unwrap();
    let classes: BTreeSet<_> = paths
        .iter()
        .map(|p| format!("{:?}", classify_mgs_class(&c, &s0, p, b).unwrap()))
        .collect();
    assert_eq!(classes.len(), 2);
    assert_eq!(
        classify_mgs_class(&c, &s0, &paths[0], s0[0]),
        Err(GeometryError::SimpleLast("(1,0,0)".into()))
    );
}

#[test]
fn wall_descriptions_agree() {
    let c = a3();
    for b in c.roots.ids() {
        assert_eq!(wall_duality_violation(&c, b), None);
    }
}

#[test]
fn linear_a2_has_two_sequences() {
    let q = ValuedQuiver::simply_laced(2, &[(1, 0)]).unwrap();
    let c = RootContext::build(&q, DEFAULT_SEED).unwrap();
    let all: Vec<RootId> = c.roots.ids().collect();
    let (_, paths) = enumerate_mgs(
        &c,
        &crate::order::sort_vertical(&c, &all),
        DEFAULT_MAX_PATHS,
    )
    .unwrap();
    assert_eq!(paths.len(), 2);
}
