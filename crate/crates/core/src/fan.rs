//! Cone systems, quasifans and fans.
//!
//! A cone system is any finite set of cones of common ambient rank. A
//! quasifan is additionally closed under taking faces and any two of its
//! cones intersect in a common face; a fan further requires every cone to
//! be strictly convex. `validate` classifies an explicit system and
//! reports violations; the typed wrappers `Quasifan` and `Fan` can only be
//! built from systems that pass.

use num_bigint::BigInt;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{IntMat, SublatticeBasis};

/// Finite set of cones of equal rank, canonically sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeSystem {
    rank: usize,
    cones: Vec<Cone>,
}

/// Strongest class an explicit cone system satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    ConeSystem,
    Quasifan,
    Fan,
}

/// One failed axiom, with indices into the canonical cone list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Cone `cone` contains a line.
    NotStrictlyConvex { cone: usize },
    /// A face of cone `cone` is missing from the system.
    MissingFace { cone: usize, face: Cone },
    /// Cones `first` and `second` do not intersect in a common face of `first`.
    ImproperIntersection { first: usize, second: usize },
}

impl ConeSystem {
    pub fn new(rank: usize, cones: Vec<Cone>) -> Result<ConeSystem> {
        for c in &cones {
            if c.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: c.rank(),
                });
            }
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        Ok(ConeSystem { rank, cones })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    /// Inclusion-maximal members.
    pub fn maximal_cones(&self) -> Vec<Cone> {
        let mut maximal = Vec::new();
        'outer: for (i, c) in self.cones.iter().enumerate() {
            for (j, d) in self.cones.iter().enumerate() {
                if i != j && d.contains_cone(c).expect("equal ranks") {
                    // ties between equal cones cannot occur: deduplicated
                    if !c.contains_cone(d).expect("equal ranks") {
                        continue 'outer;
                    }
                }
            }
            maximal.push(c.clone());
        }
        maximal
    }

    /// Adds every face of every member.
    pub fn face_closure(&self) -> ConeSystem {
        let mut all = Vec::new();
        for c in &self.cones {
            all.extend(c.faces());
        }
        ConeSystem::new(self.rank, all).expect("closure keeps rank")
    }

    /// Classifies the explicit system and lists every violated axiom.
    pub fn validate(&self) -> (Classification, Vec<Violation>) {
        let mut violations = Vec::new();
        let mut quasifan = true;
        let mut strictly_convex = true;
        for (i, c) in self.cones.iter().enumerate() {
            if !c.is_strictly_convex() {
                strictly_convex = false;
                violations.push(Violation::NotStrictlyConvex { cone: i });
            }
            for f in c.faces() {
                if !self.contains(&f) {
                    quasifan = false;
                    violations.push(Violation::MissingFace { cone: i, face: f });
                }
            }
        }
        for (i, c) in self.cones.iter().enumerate() {
            for (j, d) in self.cones.iter().enumerate() {
                if i == j {
                    continue;
                }
                let meet = c.intersect(d).expect("equal ranks");
                if !meet.is_face_of(c).expect("equal ranks") {
                    quasifan = false;
                    violations.push(Violation::ImproperIntersection {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let class = if quasifan && strictly_convex {
            Classification::Fan
        } else if quasifan {
            Classification::Quasifan
        } else {
            Classification::ConeSystem
        };
        (class, violations)
    }
}

/// Face-closed cone system whose members pairwise intersect in common faces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quasifan {
    system: ConeSystem,
}

impl Quasifan {
    pub fn new(system: ConeSystem) -> Result<Quasifan> {
        let (class, _) = system.validate();
        if class < Classification::Quasifan {
            return Err(Error::InvalidQuasifan);
        }
        Ok(Quasifan { system })
    }

    /// Face closure of the given cones. Only the given cones are checked
    /// pairwise: their faces inherit the common-face property, since a
    /// face of a cone contained in another cone's face is cut out by the
    /// same supporting functionals.
    pub fn from_maximal(rank: usize, cones: Vec<Cone>) -> Result<Quasifan> {
        let given = ConeSystem::new(rank, cones)?;
        let members = given.cones();
        for (i, c) in members.iter().enumerate() {
            for (j, d) in members.iter().enumerate() {
                if i == j {
                    continue;
                }
                let meet = c.intersect(d)?;
                if !meet.is_face_of(c)? {
                    return Err(Error::InvalidQuasifan);
                }
            }
        }
        Ok(Quasifan {
            system: given.face_closure(),
        })
    }

    pub fn system(&self) -> &ConeSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn cones(&self) -> &[Cone] {
        self.system.cones()
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.system.maximal_cones()
    }
}

/// Quasifan all of whose cones are strictly convex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fan {
    quasifan: Quasifan,
}

impl Fan {
    pub fn new(system: ConeSystem) -> Result<Fan> {
        let (class, _) = system.validate();
        if class < Classification::Fan {
            return Err(Error::InvalidFan);
        }
        Ok(Fan {
            quasifan: Quasifan { system },
        })
    }

    pub fn from_maximal(rank: usize, cones: Vec<Cone>) -> Result<Fan> {
        if cones.is_empty() {
            return Err(Error::EmptySystem);
        }
        if cones.iter().any(|c| !c.is_strictly_convex()) {
            return Err(Error::InvalidFan);
        }
        let quasifan = Quasifan::from_maximal(rank, cones).map_err(|e| match e {
            Error::InvalidQuasifan => Error::InvalidFan,
            other => other,
        })?;
        Ok(Fan { quasifan })
    }

    pub fn from_maximal_i64(rank: usize, cones: &[Vec<Vec<i64>>]) -> Fan {
        let built: Vec<Cone> = cones
            .iter()
            .map(|gens| Cone::from_generators_i64(rank, gens))
            .collect();
        Fan::from_maximal(rank, built).expect("i64 fan")
    }

    /// The fan of faces of one strictly convex cone.
    pub fn from_cone(cone: &Cone) -> Result<Fan> {
        if !cone.is_strictly_convex() {
            return Err(Error::NotStrictlyConvex);
        }
        Fan::from_maximal(cone.rank(), vec![cone.clone()])
    }

    /// The fan containing only the origin.
    pub fn zero(rank: usize) -> Fan {
        Fan::from_maximal(rank, vec![Cone::zero(rank)]).expect("zero fan")
    }

    pub fn system(&self) -> &ConeSystem {
        self.quasifan.system()
    }

    pub fn as_quasifan(&self) -> &Quasifan {
        &self.quasifan
    }

    pub fn rank(&self) -> usize {
        self.quasifan.rank()
    }

    pub fn cones(&self) -> &[Cone] {
        self.quasifan.cones()
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.quasifan.maximal_cones()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.system().contains(c)
    }

    /// The rays (one-dimensional cones) of the fan, as primitive vectors.
    pub fn ray_vectors(&self) -> Vec<Vec<BigInt>> {
        self.cones()
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect()
    }

    /// Exact completeness test: in rank zero every fan is complete;
    /// otherwise the maximal cones must be full-dimensional and every
    /// facet of a maximal cone must also bound another maximal cone.
    pub fn is_complete(&self) -> bool {
        let n = self.rank();
        if n == 0 {
            return true;
        }
        let maximal = self.maximal_cones();
        if maximal.iter().any(|c| c.dim() != n) {
            return false;
        }
        for (i, c) in maximal.iter().enumerate() {
            for f in c.facets() {
                let shared = maximal
                    .iter()
                    .enumerate()
                    .any(|(j, d)| j != i && d.contains_cone(&f).expect("equal ranks"));
                if !shared {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of checking a matrix as a map between cone systems: each
/// maximal source cone is matched with a target cone containing its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub ok: bool,
    /// `(source maximal index, matched target index)` per source cone;
    /// `None` marks the failing cones.
    pub assignments: Vec<(usize, Option<usize>)>,
}

/// Checks that `f` carries every maximal cone of `source` into some cone
/// of `target`.
pub fn check_map_of_systems(
    f: &IntMat,
    source: &ConeSystem,
    target: &ConeSystem,
) -> Result<MapCheck> {
    if f.cols() != source.rank() {
        return Err(Error::RankMismatch {
            expected: source.rank(),
            found: f.cols(),
        });
    }
    if f.rows() != target.rank() {
        return Err(Error::RankMismatch {
            expected: target.rank(),
            found: f.rows(),
        });
    }
    let mut ok = true;
    let mut assignments = Vec::new();
    for (i, sigma) in source.maximal_cones().iter().enumerate() {
        let image = sigma.image(f)?;
        let hit = target
            .cones()
            .iter()
            .position(|tau| tau.contains_cone(&image).expect("target rank"));
        if hit.is_none() {
            ok = false;
        }
        assignments.push((i, hit));
    }
    Ok(MapCheck { ok, assignments })
}

pub fn is_map_of_fans(f: &IntMat, source: &ConeSystem, target: &ConeSystem) -> Result<bool> {
    Ok(check_map_of_systems(f, source, target)?.ok)
}

/// Collapses a quasifan to a fan: quotient by the common lineality of the
/// maximal cones. Returns the lineality lattice, the canonical projection
/// and the projected fan.
pub fn quasifan_to_fan(quasifan: &Quasifan) -> Result<(SublatticeBasis, IntMat, Fan)> {
    let maximal = quasifan.maximal_cones();
    if maximal.is_empty() {
        return Err(Error::EmptySystem);
    }
    let mut meet = maximal[0].clone();
    for c in &maximal[1..] {
        meet = meet.intersect(c)?;
    }
    let lattice = meet.lineality_space();
    let projection = lattice.quotient_projection()?;
    let mut images = Vec::new();
    for c in &maximal {
        let image = c.image(&projection)?;
        if !image.is_strictly_convex() {
            return Err(Error::InternalInvariant(
                "projected maximal cone of a quasifan is not strictly convex".into(),
            ));
        }
        images.push(image);
    }
    let fan = Fan::from_maximal(projection.rows(), images)
        .map_err(|_| Error::InternalInvariant("projected quasifan is not a fan".into()))?;
    Ok((lattice, projection, fan))
}

/// Subfan of all cones having `tau` as a face, closed under faces.
pub fn star_subfan(fan: &Fan, tau: &Cone) -> Result<Fan> {
    if !fan.contains(tau) {
        return Err(Error::ConeNotInFan);
    }
    let star: Vec<Cone> = fan
        .maximal_cones()
        .into_iter()
        .filter(|sigma| tau.is_face_of(sigma).expect("equal ranks"))
        .collect();
    Fan::from_maximal(fan.rank(), star)
}

/// Orbit-closure fan: the star of `tau` projected along the span of `tau`.
/// Returns the span lattice and the projected fan.
pub fn orbit_closure_fan(fan: &Fan, tau: &Cone) -> Result<(SublatticeBasis, Fan)> {
    let star = star_subfan(fan, tau)?;
    let lattice = tau.span_lattice();
    let projection = lattice.quotient_projection()?;
    let images: Vec<Cone> = star
        .maximal_cones()
        .iter()
        .map(|sigma| sigma.image(&projection))
        .collect::<Result<_>>()?;
    let projected = Fan::from_maximal(projection.rows(), images)
        .map_err(|_| Error::InternalInvariant("projected star is not a fan".into()))?;
    Ok((lattice, projected))
}
