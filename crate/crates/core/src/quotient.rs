//! Quotient quasifans and quotient fans of a cone system by a primitive
//! sublattice.
//!
//! The construction projects the maximal cones along the canonical
//! quotient map, then repairs improper intersections: while two projected
//! cones fail to meet in a common face, one of them absorbs the smallest
//! face of the other containing the overlap, and cones swallowed by the
//! grown cone are dropped. The surviving cones are face-closed into a
//! quasifan, whose common lineality is then divided out to reach an
//! honest fan. Every step is recorded in a trace together with the two
//! termination measures (number of cones, and how many projected input
//! generators each cone captures).

use num_bigint::BigInt;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::{check_map_of_systems, ConeSystem, Fan, Quasifan};
use crate::linalg::{
    is_zero_vec, kernel_basis, neg_vec, section_of_surjection, IntMat, SublatticeBasis,
};

/// One pass through the repair loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopStep {
    pub iteration: usize,
    /// Indices of the violating pair in the canonical order before the step.
    pub first: usize,
    pub second: usize,
    /// The minimal face that was absorbed.
    pub absorbed_face: Cone,
    /// Whether the first cone of the pair grew (otherwise the second).
    pub replaced_first: bool,
    /// Number of cones after the step.
    pub cones: usize,
    /// Total count of projected input generators captured by the cones.
    pub captured_generators: usize,
}

/// Measures before the loop plus one record per step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuotientTrace {
    pub initial_cones: usize,
    pub initial_captured_generators: usize,
    pub steps: Vec<LoopStep>,
}

impl QuotientTrace {
    /// The termination argument in checkable form: the cone count never
    /// increases, and on every step that keeps it constant the capture
    /// count strictly increases.
    pub fn measures_consistent(&self) -> bool {
        let mut cones = self.initial_cones;
        let mut captured = self.initial_captured_generators;
        for step in &self.steps {
            if step.cones > cones {
                return false;
            }
            if step.cones == cones && step.captured_generators <= captured {
                return false;
            }
            cones = step.cones;
            captured = step.captured_generators;
        }
        true
    }
}

/// Result of a quotient computation: the enlarged kernel, the canonical
/// projection onto its quotient, and the quotient fan, together with the
/// intermediate quasifan and the loop trace for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub input: ConeSystem,
    pub sublattice: SublatticeBasis,
    pub enlarged_kernel: SublatticeBasis,
    pub projection: IntMat,
    pub fan: Fan,
    pub intermediate: Quasifan,
    pub trace: QuotientTrace,
}

impl QuotientResult {
    /// Equality of quotients: same enlarged kernel, same canonical
    /// projection, same fan.
    pub fn same_quotient(&self, other: &QuotientResult) -> bool {
        self.enlarged_kernel == other.enlarged_kernel
            && self.projection == other.projection
            && self.fan == other.fan
    }

    /// Factors an invariant lattice map through the quotient projection:
    /// returns the unique integer matrix `g` with `g * P = f`.
    pub fn factor_map(&self, f: &IntMat) -> Result<IntMat> {
        if f.cols() != self.projection.cols() {
            return Err(Error::RankMismatch {
                expected: self.projection.cols(),
                found: f.cols(),
            });
        }
        let section = section_of_surjection(&self.projection)?;
        let g = f.mul(&section);
        if g.mul(&self.projection) != *f {
            return Err(Error::DoesNotFactor);
        }
        Ok(g)
    }
}

fn check_inputs(system: &ConeSystem, sublattice: &SublatticeBasis) -> Result<()> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    if sublattice.ambient_rank() != system.rank() {
        return Err(Error::RankMismatch {
            expected: system.rank(),
            found: sublattice.ambient_rank(),
        });
    }
    if !sublattice.is_primitive() {
        return Err(Error::NonPrimitiveSublattice);
    }
    Ok(())
}

/// Generators of the input cones (extreme rays plus both directions of
/// each lineality basis vector), projected and deduplicated. The capture
/// measure counts these points inside the loop cones.
fn projected_generators(system: &ConeSystem, projection: &IntMat) -> Vec<Vec<BigInt>> {
    let mut points = Vec::new();
    for cone in system.cones() {
        for r in cone.rays() {
            points.push(projection.mul_vec(r).expect("rank checked"));
        }
        for l in cone.lineality() {
            points.push(projection.mul_vec(l).expect("rank checked"));
            points.push(projection.mul_vec(&neg_vec(l)).expect("rank checked"));
        }
    }
    points.retain(|p| !is_zero_vec(p));
    points.sort();
    points.dedup();
    points
}

fn captured_count(cones: &[Cone], points: &[Vec<BigInt>]) -> usize {
    cones
        .iter()
        .map(|c| {
            points
                .iter()
                .filter(|p| c.contains_int_point(p).expect("rank checked"))
                .count()
        })
        .sum()
}

fn inclusion_maximal(cones: Vec<Cone>) -> Vec<Cone> {
    let mut cones = cones;
    cones.sort();
    cones.dedup();
    let mut maximal = Vec::new();
    'outer: for (i, c) in cones.iter().enumerate() {
        for (j, d) in cones.iter().enumerate() {
            if i != j && d.contains_cone(c).expect("equal ranks") {
                continue 'outer;
            }
        }
        maximal.push(c.clone());
    }
    maximal
}

/// First violating ordered pair in canonical order, if any: `(i, j)` with
/// the intersection of cone `i` and cone `j` not a face of cone `i`.
fn first_violation(cones: &[Cone]) -> Result<Option<(usize, usize, Cone)>> {
    for i in 0..cones.len() {
        for j in 0..cones.len() {
            if i == j {
                continue;
            }
            let meet = cones[i].intersect(&cones[j])?;
            if !meet.is_face_of(&cones[i])? {
                return Ok(Some((i, j, meet)));
            }
        }
    }
    Ok(None)
}

/// Quotient quasifan of a cone system by a primitive sublattice, with the
/// projection used and the loop trace.
pub fn quotient_quasifan(
    system: &ConeSystem,
    sublattice: &SublatticeBasis,
) -> Result<(Quasifan, IntMat, QuotientTrace)> {
    check_inputs(system, sublattice)?;
    let projection = sublattice.quotient_projection()?;

    let mut cones: Vec<Cone> = Vec::new();
    for sigma in system.maximal_cones() {
        cones.push(sigma.image(&projection)?);
    }
    let mut cones = inclusion_maximal(cones);

    let points = projected_generators(system, &projection);
    let mut trace = QuotientTrace {
        initial_cones: cones.len(),
        initial_captured_generators: captured_count(&cones, &points),
        steps: Vec::new(),
    };

    let mut iteration = 0;
    while let Some((i, j, meet)) = first_violation(&cones)? {
        iteration += 1;
        let rho_second = cones[j].minimal_face_containing(&meet)?;
        let (grown_index, absorbed, replaced_first) = if !cones[i].contains_cone(&rho_second)? {
            (i, rho_second, true)
        } else {
            let rho_first = cones[i].minimal_face_containing(&meet)?;
            (j, rho_first, false)
        };
        let grown = cones[grown_index].hull_union(&absorbed)?;
        let mut next = vec![grown.clone()];
        for (k, c) in cones.iter().enumerate() {
            if k != grown_index && !grown.contains_cone(c)? {
                next.push(c.clone());
            }
        }
        next.sort();
        next.dedup();
        cones = next;
        trace.steps.push(LoopStep {
            iteration,
            first: i,
            second: j,
            absorbed_face: absorbed,
            replaced_first,
            cones: cones.len(),
            captured_generators: captured_count(&cones, &points),
        });
    }

    let closed = ConeSystem::new(projection.rows(), cones)?.face_closure();
    let quasifan = Quasifan::new(closed)
        .map_err(|_| Error::InternalInvariant("loop output is not a quasifan".into()))?;
    Ok((quasifan, projection, trace))
}

fn assemble_result(
    input: &ConeSystem,
    sublattice: &SublatticeBasis,
    intermediate: Quasifan,
    first_projection: &IntMat,
    trace: QuotientTrace,
) -> Result<QuotientResult> {
    // Divide the intermediate quasifan by the common lineality of its
    // maximal cones.
    let maximal = intermediate.maximal_cones();
    let mut meet = maximal[0].clone();
    for c in &maximal[1..] {
        meet = meet.intersect(c)?;
    }
    let common_lineality = meet.lineality_space();
    let second_projection = common_lineality.quotient_projection()?;

    let enlarged_kernel = kernel_basis(&second_projection.mul(first_projection));
    let projection = enlarged_kernel.quotient_projection()?;

    // The canonical projection factors through the first one; the factor
    // carries the intermediate cones into the final coordinates.
    let factor = projection.mul(&section_of_surjection(first_projection)?);
    if factor.mul(first_projection) != projection {
        return Err(Error::InternalInvariant(
            "canonical projection does not factor through the first projection".into(),
        ));
    }

    let mut images = Vec::new();
    for c in &maximal {
        let image = c.image(&factor)?;
        if !image.is_strictly_convex() {
            return Err(Error::InternalInvariant(
                "quotient cone is not strictly convex after collapsing".into(),
            ));
        }
        images.push(image);
    }
    let fan = Fan::from_maximal(projection.rows(), images)
        .map_err(|_| Error::InternalInvariant("quotient cones do not form a fan".into()))?;

    for b in enlarged_kernel.basis() {
        if !is_zero_vec(&projection.mul_vec(b)?) {
            return Err(Error::InternalInvariant(
                "projection does not kill the enlarged kernel".into(),
            ));
        }
    }
    if !check_map_of_systems(&projection, input, fan.system())?.ok {
        return Err(Error::InternalInvariant(
            "projection is not a map from the input system to the quotient fan".into(),
        ));
    }

    Ok(QuotientResult {
        input: input.clone(),
        sublattice: sublattice.clone(),
        enlarged_kernel,
        projection,
        fan,
        intermediate,
        trace,
    })
}

/// Quotient fan of a cone system by a primitive sublattice.
pub fn quotient_fan(system: &ConeSystem, sublattice: &SublatticeBasis) -> Result<QuotientResult> {
    let (intermediate, first_projection, trace) = quotient_quasifan(system, sublattice)?;
    assemble_result(system, sublattice, intermediate, &first_projection, trace)
}

/// Independent computation of the quotient fan when the quotient lattice
/// has rank two, used to cross-check `quotient_fan`.
///
/// Maximal cones are chained together whenever their projections have
/// overlapping relative interiors; each chain is replaced by the convex
/// hull of its members, and the common span of the projected hulls is
/// folded into the enlarged kernel.
pub fn codim2_quotient_oracle(fan: &Fan, sublattice: &SublatticeBasis) -> Result<QuotientResult> {
    check_inputs(fan.system(), sublattice)?;
    let quotient_rank = fan.rank() - sublattice.rank();
    if quotient_rank != 2 {
        return Err(Error::WrongCodimension {
            found: quotient_rank,
        });
    }
    let first_projection = sublattice.quotient_projection()?;
    // Chains may pass through faces, so the overlap graph is built on the
    // whole face-closed cone list; classes are then read off the maximal
    // members.
    let members = fan.cones();
    let images: Vec<Cone> = members
        .iter()
        .map(|c| c.image(&first_projection))
        .collect::<Result<_>>()?;

    let mut class: Vec<usize> = (0..members.len()).collect();
    fn root(class: &mut [usize], mut i: usize) -> usize {
        while class[i] != i {
            class[i] = class[class[i]];
            i = class[i];
        }
        i
    }
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let meet = images[i].intersect(&images[j])?;
            let witness = meet.relative_interior_point();
            if images[i].int_in_relative_interior(&witness)?
                && images[j].int_in_relative_interior(&witness)?
            {
                let (a, b) = (root(&mut class, i), root(&mut class, j));
                class[a] = b;
            }
        }
    }

    let maximal = fan.maximal_cones();
    let maximal_indices: Vec<usize> = maximal
        .iter()
        .map(|c| {
            members
                .iter()
                .position(|m| m == c)
                .expect("maximal cone listed")
        })
        .collect();
    let mut hulls: Vec<Cone> = Vec::new();
    let mut seen_roots: Vec<usize> = Vec::new();
    for (k, &i) in maximal_indices.iter().enumerate() {
        let r = root(&mut class, i);
        if seen_roots.contains(&r) {
            continue;
        }
        seen_roots.push(r);
        let mut hull = maximal[k].clone();
        for (k2, &j) in maximal_indices.iter().enumerate() {
            if k2 != k && root(&mut class, j) == r {
                hull = hull.hull_union(&maximal[k2])?;
            }
        }
        hulls.push(hull);
    }

    // The span to divide out is the sum of the lineality spaces of the
    // projected hulls.
    let mut span_rows: Vec<Vec<BigInt>> = Vec::new();
    for hull in &hulls {
        let image = hull.image(&first_projection)?;
        span_rows.extend(image.lineality().iter().cloned());
    }
    let span = SublatticeBasis::from_spanning(2, &span_rows)?.saturate();
    let span_projection = span.quotient_projection()?;
    let enlarged_kernel = kernel_basis(&span_projection.mul(&first_projection));
    let projection = enlarged_kernel.quotient_projection()?;

    let final_cones: Vec<Cone> = hulls
        .iter()
        .map(|hull| hull.image(&projection))
        .collect::<Result<_>>()?;
    let quotient_fan = Fan::from_maximal(projection.rows(), final_cones.clone())
        .map_err(|_| Error::InternalInvariant("oracle cones do not form a fan".into()))?;
    // The intermediate quasifan is the preimage of the quotient fan
    // between the two projections; projected hulls themselves need not
    // intersect properly before the collapse.
    let pullback = projection.mul(&section_of_surjection(&first_projection)?);
    let pullback_t = pullback.transpose();
    let preimages: Vec<Cone> = final_cones
        .iter()
        .map(|c| {
            let ineqs: Vec<Vec<BigInt>> = c
                .halfspaces()
                .iter()
                .map(|h| pullback_t.mul_vec(h).expect("pullback shape"))
                .collect();
            let eqs: Vec<Vec<BigInt>> = c
                .equations()
                .iter()
                .map(|e| pullback_t.mul_vec(e).expect("pullback shape"))
                .collect();
            Cone::from_constraints(2, &ineqs, &eqs)
        })
        .collect::<Result<_>>()?;
    let intermediate = Quasifan::from_maximal(2, preimages)
        .map_err(|_| Error::InternalInvariant("oracle preimages do not form a quasifan".into()))?;

    if !check_map_of_systems(&projection, fan.system(), quotient_fan.system())?.ok {
        return Err(Error::InternalInvariant(
            "oracle projection is not a map onto its fan".into(),
        ));
    }

    Ok(QuotientResult {
        input: fan.system().clone(),
        sublattice: sublattice.clone(),
        enlarged_kernel,
        projection,
        fan: quotient_fan,
        intermediate,
        trace: QuotientTrace::default(),
    })
}

/// Checks the reconstruction identity: every maximal cone of the quotient
/// fan is the convex hull of the projections of the input faces it
/// contains.
pub fn reconstructs_maximal_cones(result: &QuotientResult) -> Result<bool> {
    let closure = result.input.face_closure();
    for tau in result.fan.maximal_cones() {
        let mut generators: Vec<Vec<BigInt>> = Vec::new();
        for sigma in closure.cones() {
            let image = sigma.image(&result.projection)?;
            if tau.contains_cone(&image)? {
                generators.extend(image.rays().iter().cloned());
                for l in image.lineality() {
                    generators.push(l.clone());
                    generators.push(neg_vec(l));
                }
            }
        }
        let hull = Cone::from_generators(tau.rank(), &generators)?;
        if hull != tau {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;

    fn plane_fan() -> Fan {
        Fan::from_maximal_i64(2, &[vec![vec![1, 0], vec![0, 1]]])
    }

    fn line(v: &[i64]) -> SublatticeBasis {
        SublatticeBasis::new(v.len(), &[vec_from_i64(v)]).unwrap()
    }

    #[test]
    fn plane_by_descending_line_gives_half_line() {
        let q = quotient_fan(plane_fan().system(), &line(&[1, -2])).unwrap();
        assert_eq!(q.projection, IntMat::from_i64(&[vec![2, 1]]));
        assert_eq!(q.enlarged_kernel, line(&[1, -2]));
        assert_eq!(q.fan, Fan::from_maximal_i64(1, &[vec![vec![1]]]));
        assert!(q.trace.steps.is_empty());
    }

    #[test]
    fn plane_by_ascending_line_collapses() {
        let q = quotient_fan(plane_fan().system(), &line(&[1, 2])).unwrap();
        assert_eq!(q.enlarged_kernel, SublatticeBasis::full(2));
        assert_eq!(q.fan, Fan::zero(0));
        // the intermediate quasifan is the full line
        assert_eq!(q.intermediate.maximal_cones().len(), 1);
        assert!(!q.intermediate.maximal_cones()[0].is_strictly_convex());
    }

    #[test]
    fn blowup_fan_quotient() {
        let blowup = Fan::from_maximal_i64(
            2,
            &[vec![vec![1, 0], vec![1, 1]], vec![vec![1, 1], vec![0, 1]]],
        );
        let q = quotient_fan(blowup.system(), &line(&[1, -1])).unwrap();
        assert_eq!(q.projection, IntMat::from_i64(&[vec![1, 1]]));
        assert_eq!(q.fan, Fan::from_maximal_i64(1, &[vec![vec![1]]]));
        assert!(q.trace.steps.is_empty());
    }

    #[test]
    fn improper_overlap_forces_one_loop_pass() {
        let sys = ConeSystem::new(
            3,
            vec![
                Cone::from_generators_i64(3, &[vec![1, 0, 0], vec![1, 2, 0]]),
                Cone::from_generators_i64(3, &[vec![1, 1, 1], vec![0, 1, 0]]),
            ],
        )
        .unwrap()
        .face_closure();
        let l = line(&[0, 0, 1]);
        let (quasifan, projection, trace) = quotient_quasifan(&sys, &l).unwrap();
        assert_eq!(
            projection,
            IntMat::from_i64(&[vec![1, 0, 0], vec![0, 1, 0]])
        );
        assert_eq!(trace.steps.len(), 1);
        assert!(trace.measures_consistent());
        let step = &trace.steps[0];
        assert!(step.replaced_first);
        assert_eq!(step.cones, 1);
        let quadrant = Cone::from_generators_i64(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(quasifan.maximal_cones(), vec![quadrant]);

        let q = quotient_fan(&sys, &l).unwrap();
        assert_eq!(q.enlarged_kernel, l);
        assert_eq!(
            q.fan,
            Fan::from_maximal_i64(2, &[vec![vec![1, 0], vec![0, 1]]])
        );
    }

    #[test]
    fn idempotent_under_zero_sublattice() {
        let f = plane_fan();
        let q = quotient_fan(f.system(), &SublatticeBasis::zero(2)).unwrap();
        assert!(q.enlarged_kernel.is_zero());
        assert_eq!(q.projection, IntMat::identity(2));
        assert_eq!(q.fan, f);
    }

    #[test]
    fn growth_without_absorption_keeps_the_cone_count() {
        // a wedge pokes through an interior ray of the octant's bottom
        // facet: the wedge absorbs that facet, the octant survives, and
        // the capture measure must rise strictly at constant cone count
        let sys = ConeSystem::new(
            3,
            vec![
                Cone::from_generators_i64(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
                Cone::from_generators_i64(3, &[vec![1, 1, 0], vec![0, 0, -1]]),
            ],
        )
        .unwrap()
        .face_closure();
        let q = quotient_fan(&sys, &SublatticeBasis::zero(3)).unwrap();
        assert_eq!(q.trace.initial_cones, 2);
        assert_eq!(q.trace.initial_captured_generators, 6);
        assert_eq!(q.trace.steps.len(), 1);
        let step = &q.trace.steps[0];
        assert!(!step.replaced_first);
        assert_eq!(step.cones, 2);
        assert_eq!(step.captured_generators, 8);
        assert_eq!(step.absorbed_face.rays().len(), 2);
        assert!(q.trace.measures_consistent());
        assert_eq!(
            q.fan,
            Fan::from_maximal_i64(
                3,
                &[
                    vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                    vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]],
                ]
            )
        );
    }

    #[test]
    fn chained_overlaps_take_several_passes() {
        // three tilted planar wedges whose shadows overlap in a chain;
        // the repair loop needs two passes and ends in a single cone
        let fan = Fan::from_maximal_i64(
            3,
            &[
                vec![vec![1, 0, 0], vec![2, 1, 1]],
                vec![vec![3, 1, 2], vec![1, 1, 3]],
                vec![vec![2, 1, 4], vec![0, 1, 5]],
            ],
        );
        let l = line(&[0, 0, 1]);
        let q = quotient_fan(fan.system(), &l).unwrap();
        assert_eq!(q.trace.initial_cones, 3);
        assert_eq!(q.trace.steps.len(), 2);
        assert!(q.trace.measures_consistent());
        assert_eq!(q.fan.maximal_cones().len(), 1);
        assert!(reconstructs_maximal_cones(&q).unwrap());
        // the rank-2 cross-check agrees
        let o = codim2_quotient_oracle(&fan, &l).unwrap();
        assert!(q.same_quotient(&o));
    }

    #[test]
    fn tower_property() {
        let f = plane_fan();
        let q = quotient_fan(f.system(), &line(&[1, 2])).unwrap();
        let again = quotient_fan(f.system(), &q.enlarged_kernel).unwrap();
        assert_eq!(again.fan, q.fan);
        assert_eq!(again.enlarged_kernel, q.enlarged_kernel);
        assert_eq!(again.projection, q.projection);
    }

    #[test]
    fn oracle_agrees_on_plane_with_zero_sublattice() {
        let f = plane_fan();
        let q = quotient_fan(f.system(), &SublatticeBasis::zero(2)).unwrap();
        let o = codim2_quotient_oracle(&f, &SublatticeBasis::zero(2)).unwrap();
        assert!(q.same_quotient(&o));
        assert_eq!(o.fan, f);
    }

    #[test]
    fn oracle_keeps_separate_classes() {
        let p2 = Fan::from_maximal_i64(
            2,
            &[
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, -1]],
                vec![vec![1, 0], vec![-1, -1]],
            ],
        );
        let o = codim2_quotient_oracle(&p2, &SublatticeBasis::zero(2)).unwrap();
        assert_eq!(o.fan, p2);
        assert!(o.enlarged_kernel.is_zero());
        let q = quotient_fan(p2.system(), &SublatticeBasis::zero(2)).unwrap();
        assert!(q.same_quotient(&o));
    }

    #[test]
    fn oracle_merges_improper_overlap() {
        let sys = Fan::from_maximal_i64(
            3,
            &[
                vec![vec![1, 0, 0], vec![1, 2, 0]],
                vec![vec![1, 1, 1], vec![0, 1, 0]],
            ],
        );
        let l = line(&[0, 0, 1]);
        let q = quotient_fan(sys.system(), &l).unwrap();
        let o = codim2_quotient_oracle(&sys, &l).unwrap();
        assert!(q.same_quotient(&o));
    }

    #[test]
    fn oracle_rejects_wrong_codimension() {
        let f = plane_fan();
        assert_eq!(
            codim2_quotient_oracle(&f, &line(&[1, -1])).unwrap_err(),
            Error::WrongCodimension { found: 1 }
        );
    }

    #[test]
    fn reconstruction_identity() {
        for (fan, l) in [
            (plane_fan(), line(&[1, -2])),
            (plane_fan(), line(&[1, 2])),
            (plane_fan(), SublatticeBasis::zero(2)),
        ] {
            let q = quotient_fan(fan.system(), &l).unwrap();
            assert!(reconstructs_maximal_cones(&q).unwrap());
        }
    }

    #[test]
    fn factoring_invariant_maps() {
        let f = plane_fan();
        let q = quotient_fan(f.system(), &line(&[1, -1])).unwrap();
        // the projection itself factors as the identity
        let g = q.factor_map(&q.projection).unwrap();
        assert_eq!(g, IntMat::identity(1));
        // a non-invariant map does not factor
        let bad = IntMat::from_i64(&[vec![1, 0]]);
        assert_eq!(q.factor_map(&bad).unwrap_err(), Error::DoesNotFactor);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = plane_fan();
        let non_primitive = SublatticeBasis::new(2, &[vec_from_i64(&[2, 4])]).unwrap();
        assert_eq!(
            quotient_fan(f.system(), &non_primitive).unwrap_err(),
            Error::NonPrimitiveSublattice
        );
        let empty = ConeSystem::new(2, vec![]).unwrap();
        assert_eq!(
            quotient_fan(&empty, &SublatticeBasis::zero(2)).unwrap_err(),
            Error::EmptySystem
        );
        let wrong_rank = SublatticeBasis::zero(3);
        assert!(matches!(
            quotient_fan(f.system(), &wrong_rank).unwrap_err(),
            Error::RankMismatch { .. }
        ));
    }
}
