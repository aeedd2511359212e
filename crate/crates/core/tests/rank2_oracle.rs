//! Independent cross-check of the cone engine in rank two.
//!
//! A cone in the plane is simple enough to classify by hand: it is the
//! zero cone, a ray, a pointed wedge, a line, a half-plane or the whole
//! plane. This oracle derives the classification from supporting
//! half-planes only (every facet normal of a planar cone is a rotated
//! generator, and every boundary ray is itself a generator direction),
//! with no double description involved, and the result is compared field
//! by field against the engine over an exhaustive grid of generator
//! lists.

use num_bigint::BigInt;

use toric_fans::linalg::{primitive, vec_from_i64};
use toric_fans::Cone;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum PlaneCone {
    Zero,
    Ray(Vec<BigInt>),
    Wedge(Vec<Vec<BigInt>>),
    Line(Vec<BigInt>),
    /// lineality direction, pointed ray
    HalfPlane(Vec<BigInt>, Vec<BigInt>),
    Plane,
}

fn dot2(a: &[i64; 2], b: &[i64; 2]) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

fn rot90(v: &[i64; 2]) -> [i64; 2] {
    [-v[1], v[0]]
}

fn prim2(v: &[i64; 2]) -> [i64; 2] {
    let p = primitive(&vec_from_i64(&v[..]));
    let to = |x: &BigInt| -> i64 { x.to_string().parse().unwrap() };
    [to(&p[0]), to(&p[1])]
}

/// Hermite-style canonical generator of the line through d: first nonzero
/// coordinate positive.
fn line_basis(d: &[i64; 2]) -> Vec<BigInt> {
    let p = prim2(d);
    let flip = p[0] < 0 || (p[0] == 0 && p[1] < 0);
    let q = if flip { [-p[0], -p[1]] } else { p };
    vec_from_i64(&q[..])
}

fn classify(raw: &[[i64; 2]]) -> PlaneCone {
    let mut gens: Vec<[i64; 2]> = raw.iter().filter(|g| **g != [0, 0]).map(prim2).collect();
    gens.sort_unstable();
    gens.dedup();
    if gens.is_empty() {
        return PlaneCone::Zero;
    }

    // candidate supporting normals: rotated generators (both signs) and
    // the generators themselves
    let mut candidates: Vec<[i64; 2]> = Vec::new();
    for g in &gens {
        let r = rot90(g);
        candidates.push(r);
        candidates.push([-r[0], -r[1]]);
        candidates.push(*g);
        candidates.push([-g[0], -g[1]]);
    }
    candidates.sort_unstable();
    candidates.dedup();
    let valid: Vec<[i64; 2]> = candidates
        .into_iter()
        .filter(|u| gens.iter().all(|g| dot2(u, g) >= 0))
        .collect();
    if valid.is_empty() {
        return PlaneCone::Plane;
    }

    let all_parallel = valid
        .iter()
        .all(|u| u[0] * valid[0][1] - u[1] * valid[0][0] == 0);
    if all_parallel {
        let u0 = valid[0];
        let has_opposite = valid.iter().any(|u| *u == [-u0[0], -u0[1]]);
        let direction = rot90(&u0);
        if has_opposite {
            return PlaneCone::Line(line_basis(&direction));
        }
        // half-plane {u0 . x >= 0}: pointed part points along u0
        return PlaneCone::HalfPlane(line_basis(&direction), vec_from_i64(&prim2(&u0)[..]));
    }

    // pointed: boundary directions are rotated valid normals that satisfy
    // every constraint
    let mut extreme: Vec<[i64; 2]> = Vec::new();
    for u in &valid {
        for d in [rot90(u), rot90(&[-u[0], -u[1]])] {
            if valid.iter().all(|w| dot2(w, &d) >= 0) {
                extreme.push(prim2(&d));
            }
        }
    }
    extreme.sort_unstable();
    extreme.dedup();
    match extreme.len() {
        0 => PlaneCone::Zero,
        1 => PlaneCone::Ray(vec_from_i64(&extreme[0][..])),
        2 => PlaneCone::Wedge(extreme.iter().map(|d| vec_from_i64(&d[..])).collect()),
        n => panic!("pointed plane cone with {n} extreme rays"),
    }
}

fn classify_engine(cone: &Cone) -> PlaneCone {
    match (cone.dim(), cone.lineality().len()) {
        (0, _) => PlaneCone::Zero,
        (1, 0) => PlaneCone::Ray(cone.rays()[0].clone()),
        (1, 1) => PlaneCone::Line(cone.lineality()[0].clone()),
        (2, 0) => PlaneCone::Wedge(cone.rays().to_vec()),
        (2, 1) => PlaneCone::HalfPlane(cone.lineality()[0].clone(), cone.rays()[0].clone()),
        (2, 2) => PlaneCone::Plane,
        other => panic!("impossible plane cone shape {other:?}"),
    }
}

fn grid() -> Vec<[i64; 2]> {
    let mut vs = Vec::new();
    for x in -2..=2i64 {
        for y in -2..=2i64 {
            vs.push([x, y]);
        }
    }
    vs
}

fn check(gens: &[[i64; 2]]) {
    let big: Vec<Vec<BigInt>> = gens.iter().map(|g| vec_from_i64(&g[..])).collect();
    let cone = Cone::from_generators(2, &big).unwrap();
    let expected = classify(gens);
    let got = classify_engine(&cone);
    assert_eq!(got, expected, "disagreement on generators {gens:?}");
}

#[test]
fn exhaustive_pairs() {
    let vs = grid();
    for a in &vs {
        check(&[*a]);
        for b in &vs {
            check(&[*a, *b]);
        }
    }
}

#[test]
fn exhaustive_triples_small() {
    let mut vs = Vec::new();
    for x in -1..=1i64 {
        for y in -1..=1i64 {
            vs.push([x, y]);
        }
    }
    for a in &vs {
        for b in &vs {
            for c in &vs {
                check(&[*a, *b, *c]);
            }
        }
    }
}

#[test]
fn sampled_triples_wide() {
    // deterministic stride over the larger grid
    let vs = grid();
    let mut count = 0usize;
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            for (k, c) in vs.iter().enumerate() {
                if (i + 2 * j + 3 * k) % 11 != 0 {
                    continue;
                }
                check(&[*a, *b, *c]);
                count += 1;
            }
        }
    }
    assert!(count > 1000);
}
