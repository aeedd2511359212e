//! Affine toric quotients and the fan-theoretic goodness criterion.
//!
//! A toric quotient is good when it is glued from affine invariant-ring
//! quotients. On fans this means: every maximal quotient cone is the
//! honest image of some maximal input cone, and no ray of the input fan
//! projects into a quotient cone without lying in that input cone. The
//! quotient is geometric when matched cones additionally have equal
//! dimension.

use num_bigint::BigInt;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{IntMat, SublatticeBasis};
use crate::quotient::QuotientResult;

/// Quotient data of a single strictly convex cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineQuotient {
    /// The maximal face whose relative interior meets the span of the
    /// sublattice.
    pub face: Cone,
    /// Saturation of sublattice + span of that face.
    pub enlarged_kernel: SublatticeBasis,
    pub projection: IntMat,
    /// Image of the input cone; always strictly convex.
    pub image: Cone,
}

/// Why a maximal quotient cone could not be certified good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodnessFailure {
    /// No maximal input cone surjects onto the quotient cone.
    NoSurjectiveMaximalCone,
    /// Every surjecting cone misses this ray, which projects into the
    /// quotient cone.
    StrayRay(Vec<BigInt>),
}

/// Verdict for one maximal cone of the quotient fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessEntry {
    pub quotient_cone: Cone,
    pub quotient_dim: usize,
    /// Index into the maximal cones of the input fan and its dimension.
    pub matched: Option<(usize, usize)>,
    pub failure: Option<GoodnessFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    pub is_good: bool,
    pub is_geometric: bool,
    pub entries: Vec<GoodnessEntry>,
}

/// Toric quotient of the affine variety of a strictly convex cone.
///
/// The unique maximal face of `sigma` whose relative interior meets the
/// span of `sublattice` is located by scanning all faces; uniqueness is
/// verified rather than assumed.
pub fn affine_quotient(sigma: &Cone, sublattice: &SublatticeBasis) -> Result<AffineQuotient> {
    if !sigma.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    if sublattice.ambient_rank() != sigma.rank() {
        return Err(Error::RankMismatch {
            expected: sigma.rank(),
            found: sublattice.ambient_rank(),
        });
    }
    if !sublattice.is_primitive() {
        return Err(Error::NonPrimitiveSublattice);
    }
    // x lies in the span of the sublattice iff the canonical projection
    // kills it; those rows cut the span out of each face.
    let span_equations = sublattice.quotient_projection()?;
    let mut candidates: Vec<Cone> = Vec::new();
    for face in sigma.faces() {
        let mut equations = face.equations().to_vec();
        equations.extend(span_equations.row_vecs());
        let meet = Cone::from_constraints(sigma.rank(), face.halfspaces(), &equations)?;
        let witness = meet.relative_interior_point();
        if face.int_in_relative_interior(&witness)? {
            candidates.push(face);
        }
    }
    let mut maximal: Vec<Cone> = Vec::new();
    'outer: for c in &candidates {
        for d in &candidates {
            if c != d && d.contains_cone(c)? {
                continue 'outer;
            }
        }
        maximal.push(c.clone());
    }
    if maximal.len() != 1 {
        return Err(Error::AmbiguousMaximalFace);
    }
    let face = maximal.pop().expect("one maximal face");

    let mut spanning = sublattice.basis().to_vec();
    spanning.extend(face.span_lattice().basis().iter().cloned());
    let enlarged_kernel = SublatticeBasis::from_spanning(sigma.rank(), &spanning)?.saturate();
    let projection = enlarged_kernel.quotient_projection()?;
    let image = sigma.image(&projection)?;
    if !image.is_strictly_convex() {
        return Err(Error::InternalInvariant(
            "affine quotient image is not strictly convex".into(),
        ));
    }
    Ok(AffineQuotient {
        face,
        enlarged_kernel,
        projection,
        image,
    })
}

/// Checks the two goodness conditions of a computed toric quotient, and
/// the dimension condition for geometric quotients.
pub fn check_good_quotient(fan: &Fan, quotient: &QuotientResult) -> Result<GoodnessReport> {
    if quotient.input != *fan.system() {
        return Err(Error::MismatchedQuotient);
    }
    let maximal = fan.maximal_cones();
    let rays = fan.ray_vectors();
    let projection = &quotient.projection;

    let mut entries = Vec::new();
    for tau in quotient.fan.maximal_cones() {
        let candidates: Vec<usize> = maximal
            .iter()
            .enumerate()
            .filter(|(_, sigma)| sigma.image(projection).expect("rank checked") == tau)
            .map(|(i, _)| i)
            .collect();
        if candidates.is_empty() {
            entries.push(GoodnessEntry {
                quotient_dim: tau.dim(),
                quotient_cone: tau,
                matched: None,
                failure: Some(GoodnessFailure::NoSurjectiveMaximalCone),
            });
            continue;
        }
        let incoming: Vec<&Vec<BigInt>> = rays
            .iter()
            .filter(|ray| {
                let image = projection.mul_vec(ray).expect("rank checked");
                tau.contains_int_point(&image).expect("rank checked")
            })
            .collect();
        let mut matched: Option<(usize, usize)> = None;
        let mut first_stray: Option<Vec<BigInt>> = None;
        for &i in &candidates {
            let sigma = &maximal[i];
            let stray = incoming
                .iter()
                .find(|ray| !sigma.contains_int_point(ray).expect("rank checked"));
            match stray {
                Some(ray) => {
                    if first_stray.is_none() {
                        first_stray = Some((*ray).clone());
                    }
                }
                None => {
                    // prefer a dimension-preserving match for the
                    // geometric verdict
                    if matched.is_none() || sigma.dim() == tau.dim() {
                        matched = Some((i, sigma.dim()));
                    }
                    if sigma.dim() == tau.dim() {
                        break;
                    }
                }
            }
        }
        let failure = if matched.is_none() {
            Some(GoodnessFailure::StrayRay(
                first_stray.expect("candidates existed, all failed on a ray"),
            ))
        } else {
            None
        };
        entries.push(GoodnessEntry {
            quotient_dim: tau.dim(),
            quotient_cone: tau,
            matched,
            failure,
        });
    }
    let is_good = entries.iter().all(|e| e.matched.is_some());
    let is_geometric = is_good
        && entries
            .iter()
            .all(|e| e.matched.map(|(_, d)| d) == Some(e.quotient_dim));
    Ok(GoodnessReport {
        is_good,
        is_geometric,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;
    use crate::quotient::quotient_fan;

    fn line(v: &[i64]) -> SublatticeBasis {
        SublatticeBasis::new(v.len(), &[vec_from_i64(v)]).unwrap()
    }

    fn quadrant() -> Cone {
        Cone::from_generators_i64(2, &[vec![1, 0], vec![0, 1]])
    }

    #[test]
    fn affine_quotient_by_antidiagonal() {
        let a = affine_quotient(&quadrant(), &line(&[1, -1])).unwrap();
        assert!(a.face.is_zero_cone());
        assert_eq!(a.enlarged_kernel, line(&[1, -1]));
        assert_eq!(a.projection, IntMat::from_i64(&[vec![1, 1]]));
        assert_eq!(a.image, Cone::from_generators_i64(1, &[vec![1]]));
    }

    #[test]
    fn affine_quotient_by_interior_line_collapses() {
        let a = affine_quotient(&quadrant(), &line(&[1, 2])).unwrap();
        assert_eq!(a.face, quadrant());
        assert_eq!(a.enlarged_kernel, SublatticeBasis::full(2));
        assert_eq!(a.projection.rows(), 0);
        assert!(a.image.is_zero_cone());
        assert_eq!(a.image.rank(), 0);
    }

    #[test]
    fn affine_quotient_along_a_ray() {
        let ray = Cone::from_generators_i64(2, &[vec![1, 0]]);
        let a = affine_quotient(&ray, &line(&[1, 0])).unwrap();
        assert_eq!(a.face, ray);
        assert_eq!(a.enlarged_kernel, line(&[1, 0]));
        assert_eq!(a.projection, IntMat::from_i64(&[vec![0, 1]]));
        assert!(a.image.is_zero_cone());
        assert_eq!(a.image.rank(), 1);
    }

    #[test]
    fn affine_quotient_rejections() {
        let half_plane = Cone::from_generators_i64(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert_eq!(
            affine_quotient(&half_plane, &line(&[1, 0])).unwrap_err(),
            Error::NotStrictlyConvex
        );
        let non_primitive = SublatticeBasis::new(2, &[vec_from_i64(&[2, 4])]).unwrap();
        assert_eq!(
            affine_quotient(&quadrant(), &non_primitive).unwrap_err(),
            Error::NonPrimitiveSublattice
        );
    }

    #[test]
    fn plane_quotient_is_good_not_geometric() {
        let fan = Fan::from_cone(&quadrant()).unwrap();
        let l = line(&[1, -1]);
        let q = quotient_fan(fan.system(), &l).unwrap();
        let report = check_good_quotient(&fan, &q).unwrap();
        assert!(report.is_good);
        assert!(!report.is_geometric);
        let entry = &report.entries[0];
        assert_eq!(entry.quotient_dim, 1);
        assert_eq!(entry.matched.map(|(_, d)| d), Some(2));
    }

    #[test]
    fn punctured_plane_has_a_stray_ray() {
        let fan = Fan::from_maximal_i64(2, &[vec![vec![1, 0]], vec![vec![0, 1]]]);
        let l = line(&[1, -1]);
        let q = quotient_fan(fan.system(), &l).unwrap();
        let report = check_good_quotient(&fan, &q).unwrap();
        assert!(!report.is_good);
        assert!(!report.is_geometric);
        assert!(matches!(
            report.entries[0].failure,
            Some(GoodnessFailure::StrayRay(_))
        ));
    }

    #[test]
    fn single_ray_fan_is_geometric() {
        let fan = Fan::from_maximal_i64(2, &[vec![vec![1, 0]]]);
        let l = line(&[1, -1]);
        let q = quotient_fan(fan.system(), &l).unwrap();
        let report = check_good_quotient(&fan, &q).unwrap();
        assert!(report.is_good);
        assert!(report.is_geometric);
    }

    #[test]
    fn mismatched_quotient_detected() {
        let fan = Fan::from_cone(&quadrant()).unwrap();
        let other = Fan::from_maximal_i64(2, &[vec![vec![1, 0]]]);
        let q = quotient_fan(fan.system(), &line(&[1, -1])).unwrap();
        assert_eq!(
            check_good_quotient(&other, &q).unwrap_err(),
            Error::MismatchedQuotient
        );
    }

    #[test]
    fn affine_agrees_with_fan_quotient() {
        for l in [line(&[1, -1]), line(&[1, 2]), line(&[1, 0]), line(&[0, 1])] {
            let a = affine_quotient(&quadrant(), &l).unwrap();
            let q = quotient_fan(Fan::from_cone(&quadrant()).unwrap().system(), &l).unwrap();
            assert_eq!(a.enlarged_kernel, q.enlarged_kernel);
            assert_eq!(a.projection, q.projection);
            assert_eq!(Fan::from_cone(&a.image).unwrap(), q.fan);
        }
    }
}
