//! Incremental double description for rational polyhedral cones.
//!
//! Constraints (inequalities and equalities with integer normals) are
//! inserted one at a time into a running generator description consisting
//! of a lineality basis plus extreme rays. Rays carry the set of
//! constraints tight at them; adjacency of a positive/negative pair is
//! decided combinatorially: the pair is adjacent unless some other current
//! ray is tight on everything the pair is jointly tight on.
//!
//! The output is canonical: the lineality lattice is saturated and in
//! Hermite normal form, rays are primitive, orthogonal to the lineality
//! span and sorted lexicographically. It therefore does not depend on the
//! insertion order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, is_zero_vec, primitive, SublatticeBasis};
use crate::rational::project_off_span;

/// Canonical generator description of `{x : Ax >= 0, Bx = 0}`.
#[derive(Debug, Clone)]
pub struct GeneratorDescription {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

struct Ray {
    v: Vec<BigInt>,
    tight: BTreeSet<usize>,
}

fn unit_vector(rank: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); rank];
    v[i] = BigInt::from(1);
    v
}

/// Runs the double description method on a homogeneous system.
pub fn solve(
    rank: usize,
    inequalities: &[Vec<BigInt>],
    equalities: &[Vec<BigInt>],
) -> GeneratorDescription {
    let mut lin: Vec<Vec<BigInt>> = (0..rank).map(|i| unit_vector(rank, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: BTreeSet<usize> = BTreeSet::new();

    let constraints = equalities
        .iter()
        .map(|a| (a, true))
        .chain(inequalities.iter().map(|a| (a, false)));

    for (idx, (a, is_equality)) in constraints.enumerate() {
        debug_assert_eq!(a.len(), rank);
        if is_zero_vec(a) {
            for r in &mut rays {
                r.tight.insert(idx);
            }
            processed.insert(idx);
            continue;
        }

        let lin_hit = lin.iter().position(|l| !dot(a, l).is_zero());
        if let Some(i0) = lin_hit {
            // Split the lineality along the constraint.
            let mut l0 = lin.remove(i0);
            let mut a_l0 = dot(a, &l0);
            if a_l0.is_negative() {
                l0 = crate::linalg::neg_vec(&l0);
                a_l0 = -a_l0;
            }
            for l in &mut lin {
                let a_l = dot(a, l);
                if !a_l.is_zero() {
                    let adjusted: Vec<BigInt> = l
                        .iter()
                        .zip(&l0)
                        .map(|(li, l0i)| li * &a_l0 - &a_l * l0i)
                        .collect();
                    *l = primitive(&adjusted);
                }
            }
            for r in &mut rays {
                let a_r = dot(a, &r.v);
                if !a_r.is_zero() {
                    let adjusted: Vec<BigInt> =
                        r.v.iter()
                            .zip(&l0)
                            .map(|(ri, l0i)| ri * &a_l0 - &a_r * l0i)
                            .collect();
                    r.v = primitive(&adjusted);
                }
                r.tight.insert(idx);
            }
            if !is_equality {
                rays.push(Ray {
                    v: l0,
                    tight: processed.clone(),
                });
            }
        } else {
            // Classic cut: partition rays by the sign of the constraint.
            let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
            let positives: Vec<usize> = (0..rays.len())
                .filter(|&i| values[i].is_positive())
                .collect();
            let negatives: Vec<usize> = (0..rays.len())
                .filter(|&i| values[i].is_negative())
                .collect();

            let mut created: Vec<Ray> = Vec::new();
            for &p in &positives {
                for &n in &negatives {
                    if !adjacent(&rays, p, n) {
                        continue;
                    }
                    let combined: Vec<BigInt> = rays[n]
                        .v
                        .iter()
                        .zip(&rays[p].v)
                        .map(|(ni, pi)| ni * &values[p] - &values[n] * pi)
                        .collect();
                    let v = primitive(&combined);
                    debug_assert!(!is_zero_vec(&v));
                    let mut tight: BTreeSet<usize> = rays[p]
                        .tight
                        .intersection(&rays[n].tight)
                        .copied()
                        .collect();
                    tight.insert(idx);
                    created.push(Ray { v, tight });
                }
            }

            let mut kept: Vec<Ray> = Vec::new();
            for (i, r) in rays.into_iter().enumerate() {
                if values[i].is_zero() {
                    let mut r = r;
                    r.tight.insert(idx);
                    kept.push(r);
                } else if values[i].is_positive() && !is_equality {
                    kept.push(r);
                }
            }
            kept.extend(created);
            rays = kept;
        }
        processed.insert(idx);
    }

    finalize(rank, lin, rays)
}

fn adjacent(rays: &[Ray], p: usize, n: usize) -> bool {
    let common: BTreeSet<usize> = rays[p]
        .tight
        .intersection(&rays[n].tight)
        .copied()
        .collect();
    !rays
        .iter()
        .enumerate()
        .any(|(i, r)| i != p && i != n && common.is_subset(&r.tight))
}

fn finalize(rank: usize, lin: Vec<Vec<BigInt>>, rays: Vec<Ray>) -> GeneratorDescription {
    let lineality = if lin.is_empty() {
        Vec::new()
    } else {
        SublatticeBasis::new(rank, &lin)
            .expect("lineality stays independent")
            .saturate()
            .basis()
            .to_vec()
    };
    let mut out_rays: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| project_off_span(&r.v, &lineality))
        .collect();
    debug_assert!(out_rays.iter().all(|r| !is_zero_vec(r)));
    out_rays.sort();
    out_rays.dedup();
    debug_assert_eq!(out_rays.len(), rays.len(), "extreme rays must be distinct");
    GeneratorDescription {
        lineality,
        rays: out_rays,
    }
}
