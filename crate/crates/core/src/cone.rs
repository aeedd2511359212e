//! Rational convex polyhedral cones with a canonical dual description.
//!
//! A cone carries both descriptions at once: primitive extreme-ray
//! generators plus a lineality basis on the generator side, facet normals
//! plus span equations on the constraint side. Construction always runs
//! the double description conversion in both directions, so two cones are
//! equal as sets if and only if they are equal field by field. Rays are
//! stored orthogonal to the lineality span, halfspace normals orthogonal
//! to the equation span; both are primitive and sorted.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, neg_vec, vec_from_i64, IntMat, SublatticeBasis};
use crate::rational::{dot_int_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    halfspaces: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
    dim: usize,
}

impl Cone {
    /// Cone spanned by the given vectors. Zero vectors are ignored,
    /// duplicates and non-extreme generators are dropped, hidden lineality
    /// is detected.
    pub fn from_generators(rank: usize, generators: &[Vec<BigInt>]) -> Result<Cone> {
        for g in generators {
            if g.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.len(),
                });
            }
        }
        let gens: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| !is_zero_vec(g))
            .cloned()
            .collect();
        // Generators are the constraints of the dual cone; its lineality is
        // the equation lattice of the span, its rays the facet normals.
        let dual = dd::solve(rank, &gens, &[]);
        let cone = Cone::from_dual_pair(rank, dual.rays, dual.lineality);
        for g in &gens {
            if !cone.contains_int_point(g)? {
                return Err(Error::InternalInvariant(
                    "generator violates the derived constraint description".into(),
                ));
            }
        }
        Ok(cone)
    }

    /// Cone cut out by inequalities and equalities.
    pub fn from_constraints(
        rank: usize,
        inequalities: &[Vec<BigInt>],
        equalities: &[Vec<BigInt>],
    ) -> Result<Cone> {
        for a in inequalities.iter().chain(equalities) {
            if a.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: a.len(),
                });
            }
        }
        let primal = dd::solve(rank, inequalities, equalities);
        let mut gens = primal.rays.clone();
        for l in &primal.lineality {
            gens.push(l.clone());
            gens.push(neg_vec(l));
        }
        let dual = dd::solve(rank, &gens, &[]);
        Ok(Cone::assemble(
            rank,
            primal.rays,
            primal.lineality,
            dual.rays,
            dual.lineality,
        ))
    }

    /// Finishes a construction that already ran the dual conversion:
    /// recovers the primal side from canonical halfspaces and equations.
    fn from_dual_pair(
        rank: usize,
        halfspaces: Vec<Vec<BigInt>>,
        equations: Vec<Vec<BigInt>>,
    ) -> Cone {
        let primal = dd::solve(rank, &halfspaces, &equations);
        Cone::assemble(rank, primal.rays, primal.lineality, halfspaces, equations)
    }

    fn assemble(
        rank: usize,
        rays: Vec<Vec<BigInt>>,
        lineality: Vec<Vec<BigInt>>,
        halfspaces: Vec<Vec<BigInt>>,
        equations: Vec<Vec<BigInt>>,
    ) -> Cone {
        let dim = rank - equations.len();
        let cone = Cone {
            rank,
            rays,
            lineality,
            halfspaces,
            equations,
            dim,
        };
        debug_assert!(cone.descriptions_consistent());
        cone
    }

    fn descriptions_consistent(&self) -> bool {
        for g in self.generators_with_lineality() {
            for h in &self.halfspaces {
                if dot(h, &g).is_negative() {
                    return false;
                }
            }
            for e in &self.equations {
                if !dot(e, &g).is_zero() {
                    return false;
                }
            }
        }
        self.dim == self.rank - self.equations.len() && self.lineality.len() <= self.dim
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_generators(rank, &[]).expect("zero cone")
    }

    pub fn from_generators_i64(rank: usize, generators: &[Vec<i64>]) -> Cone {
        let gens: Vec<Vec<BigInt>> = generators.iter().map(|g| vec_from_i64(g)).collect();
        Cone::from_generators(rank, &gens).expect("i64 generators")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn halfspaces(&self) -> &[Vec<BigInt>] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Lattice basis of the maximal linear subspace `c ∩ (-c)`.
    pub fn lineality_space(&self) -> SublatticeBasis {
        if self.lineality.is_empty() {
            return SublatticeBasis::zero(self.rank);
        }
        SublatticeBasis::new(self.rank, &self.lineality).expect("canonical lineality basis")
    }

    /// Lattice basis of the linear span of the cone.
    pub fn span_lattice(&self) -> SublatticeBasis {
        SublatticeBasis::from_spanning(self.rank, &self.generators_with_lineality())
            .expect("span generators")
            .saturate()
    }

    /// Ray generators together with both directions of the lineality basis;
    /// spans the cone as a set of nonnegative combinations.
    pub fn generators_with_lineality(&self) -> Vec<Vec<BigInt>> {
        let mut gens = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(neg_vec(l));
        }
        gens
    }

    fn check_rank(&self, other: usize) -> Result<()> {
        if self.rank != other {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other,
            });
        }
        Ok(())
    }

    pub fn contains_point(&self, p: &[Rat]) -> Result<bool> {
        self.check_rank(p.len())?;
        Ok(self
            .halfspaces
            .iter()
            .all(|h| !dot_int_rat(h, p).is_negative())
            && self.equations.iter().all(|e| dot_int_rat(e, p).is_zero()))
    }

    pub fn contains_int_point(&self, p: &[BigInt]) -> Result<bool> {
        self.check_rank(p.len())?;
        Ok(self.halfspaces.iter().all(|h| !dot(h, p).is_negative())
            && self.equations.iter().all(|e| dot(e, p).is_zero()))
    }

    /// Exact relative interior membership: all facet inequalities strict.
    pub fn in_relative_interior(&self, p: &[Rat]) -> Result<bool> {
        self.check_rank(p.len())?;
        Ok(self
            .halfspaces
            .iter()
            .all(|h| dot_int_rat(h, p).is_positive())
            && self.equations.iter().all(|e| dot_int_rat(e, p).is_zero()))
    }

    pub fn int_in_relative_interior(&self, p: &[BigInt]) -> Result<bool> {
        self.check_rank(p.len())?;
        Ok(self.halfspaces.iter().all(|h| dot(h, p).is_positive())
            && self.equations.iter().all(|e| dot(e, p).is_zero()))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        self.check_rank(other.rank)?;
        for g in other.generators_with_lineality() {
            if !self.contains_int_point(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_rank(other.rank)?;
        let mut ineqs = self.halfspaces.clone();
        ineqs.extend(other.halfspaces.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_constraints(self.rank, &ineqs, &eqs)
    }

    /// Conic hull of the union.
    pub fn hull_union(&self, other: &Cone) -> Result<Cone> {
        self.check_rank(other.rank)?;
        let mut gens = self.generators_with_lineality();
        gens.extend(other.generators_with_lineality());
        Cone::from_generators(self.rank, &gens)
    }

    /// Image cone under an integer matrix with matching column count.
    pub fn image(&self, m: &IntMat) -> Result<Cone> {
        if m.cols() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: m.cols(),
            });
        }
        let gens: Vec<Vec<BigInt>> = self
            .generators_with_lineality()
            .iter()
            .map(|g| m.mul_vec(g).expect("checked rank"))
            .collect();
        Cone::from_generators(m.rows(), &gens)
    }

    /// The codimension-one faces, one per facet normal.
    pub fn facets(&self) -> Vec<Cone> {
        self.halfspaces
            .iter()
            .map(|h| {
                let mut eqs = self.equations.clone();
                eqs.push(h.clone());
                Cone::from_constraints(self.rank, &self.halfspaces, &eqs)
                    .expect("facet construction")
            })
            .collect()
    }

    /// All faces including the cone itself and its minimal face, sorted.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            stack.extend(c.facets());
            seen.insert(c);
        }
        seen.into_iter().collect()
    }

    /// True iff `self` is a face of `host`: contained in it and cut out by
    /// the facet normals of `host` vanishing on it.
    pub fn is_face_of(&self, host: &Cone) -> Result<bool> {
        self.check_rank(host.rank)?;
        if !host.contains_cone(self)? {
            return Ok(false);
        }
        Ok(*self == host.face_cut_by_vanishing(self))
    }

    /// Smallest face of `self` containing `inner`.
    pub fn minimal_face_containing(&self, inner: &Cone) -> Result<Cone> {
        self.check_rank(inner.rank)?;
        if !self.contains_cone(inner)? {
            return Err(Error::NotContained);
        }
        Ok(self.face_cut_by_vanishing(inner))
    }

    fn face_cut_by_vanishing(&self, inner: &Cone) -> Cone {
        let gens = inner.generators_with_lineality();
        let mut eqs = self.equations.clone();
        for h in &self.halfspaces {
            if gens.iter().all(|g| dot(h, g).is_zero()) {
                eqs.push(h.clone());
            }
        }
        Cone::from_constraints(self.rank, &self.halfspaces, &eqs).expect("face construction")
    }

    /// Sum of the ray generators: an interior point of the pointed part,
    /// hence of the relative interior. Zero for linear subspaces.
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.rank];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_from_i64;

    fn quadrant() -> Cone {
        Cone::from_generators_i64(2, &[vec![1, 0], vec![0, 1]])
    }

    #[test]
    fn quadrant_canonical_form() {
        let c = quadrant();
        assert_eq!(c.rays(), &[vec_from_i64(&[0, 1]), vec_from_i64(&[1, 0])]);
        assert!(c.lineality().is_empty());
        assert_eq!(
            c.halfspaces(),
            &[vec_from_i64(&[0, 1]), vec_from_i64(&[1, 0])]
        );
        assert!(c.equations().is_empty());
        assert_eq!(c.dim(), 2);
        assert!(c.is_strictly_convex());
    }

    #[test]
    fn half_plane_detects_lineality() {
        let c = Cone::from_generators_i64(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert_eq!(c.lineality(), &[vec_from_i64(&[1, 0])]);
        assert_eq!(c.rays(), &[vec_from_i64(&[0, 1])]);
        assert_eq!(c.dim(), 2);
        assert!(!c.is_strictly_convex());
    }

    #[test]
    fn empty_generators_is_zero_cone() {
        let c = Cone::zero(2);
        assert!(c.is_zero_cone());
        assert_eq!(c.dim(), 0);
        assert_eq!(c.equations().len(), 2);
    }

    #[test]
    fn zero_vectors_ignored_and_duplicates_merged() {
        let c = Cone::from_generators_i64(
            2,
            &[vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1]],
        );
        assert_eq!(c, quadrant());
    }

    #[test]
    fn membership() {
        let c = quadrant();
        assert!(c.contains_point(&rat_from_i64(&[1, 1])).unwrap());
        assert!(!c.contains_point(&rat_from_i64(&[-1, 0])).unwrap());
        let ray = Cone::from_generators_i64(2, &[vec![1, 2]]);
        assert!(c.contains_cone(&ray).unwrap());
        assert!(!ray.contains_cone(&c).unwrap());
    }

    #[test]
    fn rank_mismatch_reported() {
        let c = quadrant();
        let other = Cone::from_generators_i64(3, &[vec![1, 0, 0]]);
        assert!(matches!(
            c.contains_cone(&other),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn intersection_of_wedges() {
        let c = quadrant();
        let wedge = Cone::from_generators_i64(2, &[vec![1, 1], vec![-1, 1]]);
        let i = c.intersect(&wedge).unwrap();
        assert_eq!(i, Cone::from_generators_i64(2, &[vec![1, 1], vec![0, 1]]));
        assert_eq!(c.intersect(&c).unwrap(), c);
        let e1 = Cone::from_generators_i64(2, &[vec![1, 0]]);
        let e2 = Cone::from_generators_i64(2, &[vec![0, 1]]);
        assert!(e1.intersect(&e2).unwrap().is_zero_cone());
    }

    #[test]
    fn hull_of_unions() {
        let e1 = Cone::from_generators_i64(2, &[vec![1, 0]]);
        let e2 = Cone::from_generators_i64(2, &[vec![0, 1]]);
        assert_eq!(e1.hull_union(&e2).unwrap(), quadrant());
        let a = Cone::from_generators_i64(2, &[vec![1, 0], vec![1, 2]]);
        let b = Cone::from_generators_i64(2, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(a.hull_union(&b).unwrap(), quadrant());
        let z = Cone::zero(2);
        assert_eq!(a.hull_union(&z).unwrap(), a);
    }

    #[test]
    fn face_enumeration_quadrant() {
        let faces = quadrant().faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.contains(&Cone::zero(2)));
        assert!(faces.contains(&Cone::from_generators_i64(2, &[vec![1, 0]])));
        assert!(faces.contains(&Cone::from_generators_i64(2, &[vec![0, 1]])));
        assert!(faces.contains(&quadrant()));
    }

    #[test]
    fn face_enumeration_single_ray() {
        let ray = Cone::from_generators_i64(2, &[vec![1, 2]]);
        let faces = ray.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.contains(&Cone::zero(2)));
        assert!(faces.contains(&ray));
    }

    #[test]
    fn face_enumeration_half_plane() {
        let hp = Cone::from_generators_i64(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        let faces = hp.faces();
        assert_eq!(faces.len(), 2);
        let line = Cone::from_generators_i64(2, &[vec![1, 0], vec![-1, 0]]);
        assert!(faces.contains(&line));
        assert!(faces.contains(&hp));
    }

    #[test]
    fn face_predicate() {
        let c = quadrant();
        let e1 = Cone::from_generators_i64(2, &[vec![1, 0]]);
        let diag = Cone::from_generators_i64(2, &[vec![1, 1]]);
        assert!(e1.is_face_of(&c).unwrap());
        assert!(!diag.is_face_of(&c).unwrap());
        assert!(Cone::zero(2).is_face_of(&c).unwrap());
        assert!(c.is_face_of(&c).unwrap());
    }

    #[test]
    fn minimal_face() {
        let c = quadrant();
        let e1 = Cone::from_generators_i64(2, &[vec![1, 0]]);
        assert_eq!(c.minimal_face_containing(&e1).unwrap(), e1);
        let diag = Cone::from_generators_i64(2, &[vec![1, 1]]);
        assert_eq!(c.minimal_face_containing(&diag).unwrap(), c);
        let narrow = Cone::from_generators_i64(2, &[vec![1, 0], vec![1, 2]]);
        assert_eq!(narrow.minimal_face_containing(&diag).unwrap(), narrow);
        let outside = Cone::from_generators_i64(2, &[vec![-1, 0]]);
        assert_eq!(
            c.minimal_face_containing(&outside).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn lineality_space_basis() {
        assert!(quadrant().lineality_space().is_zero());
        let line = Cone::from_generators_i64(1, &[vec![1], vec![-1]]);
        assert_eq!(line.lineality_space().basis(), &[vec_from_i64(&[1])]);
        let hp = Cone::from_generators_i64(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert_eq!(hp.lineality_space().basis(), &[vec_from_i64(&[1, 0])]);
    }

    #[test]
    fn relative_interior_points() {
        assert_eq!(quadrant().relative_interior_point(), vec_from_i64(&[1, 1]));
        let ray = Cone::from_generators_i64(2, &[vec![1, 2]]);
        assert_eq!(ray.relative_interior_point(), vec_from_i64(&[1, 2]));
        assert_eq!(
            Cone::zero(2).relative_interior_point(),
            vec_from_i64(&[0, 0])
        );
        // strict on every facet
        let c = quadrant();
        let p = c.relative_interior_point();
        assert!(c.int_in_relative_interior(&p).unwrap());
    }

    #[test]
    fn image_cones() {
        let c = quadrant();
        let p = IntMat::from_i64(&[vec![1, 1]]);
        let im = c.image(&p).unwrap();
        assert_eq!(im, Cone::from_generators_i64(1, &[vec![1]]));
        let q = IntMat::from_i64(&[vec![2, -1]]);
        let im = c.image(&q).unwrap();
        assert_eq!(im.lineality_space().basis(), &[vec_from_i64(&[1])]);
        assert_eq!(c.image(&IntMat::identity(2)).unwrap(), c);
    }

    #[test]
    fn canonical_under_permutation_and_scaling() {
        let a = Cone::from_generators_i64(3, &[vec![1, 0, 0], vec![1, 2, 0], vec![1, 1, 1]]);
        let b = Cone::from_generators_i64(3, &[vec![3, 3, 3], vec![2, 0, 0], vec![1, 2, 0]]);
        assert_eq!(a, b);
    }

    #[test]
    fn halfspaces_are_facets() {
        // every canonical halfspace is tight on at least dim-1 independent
        // generators
        for c in [
            quadrant(),
            Cone::from_generators_i64(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            Cone::from_generators_i64(3, &[vec![1, 0, 0], vec![1, 2, 0], vec![1, 1, 1]]),
            Cone::from_generators_i64(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]),
        ] {
            for h in c.halfspaces() {
                let tight: Vec<Vec<BigInt>> = c
                    .generators_with_lineality()
                    .into_iter()
                    .filter(|g| dot(h, g).is_zero())
                    .collect();
                let m = IntMat::from_rows(c.rank(), &tight).unwrap();
                assert!(m.rank() >= c.dim() - 1);
            }
        }
    }
}
