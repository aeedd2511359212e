//! Good models: the universal modification of a fan that acquires a good
//! quotient, and the maps induced between good models.
//!
//! For each maximal cone of the quotient fan, the rays of the input fan
//! projecting into it are gathered into a hull cone. Dividing the common
//! linear subspace of these hulls out of the input lattice produces the
//! model fan; the quotient projection factors through it, and the factored
//! quotient of the model fan is always good.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::{check_map_of_systems, Fan};
use crate::good_quotient::check_good_quotient;
use crate::linalg::{section_of_surjection, IntMat, SublatticeBasis};
use crate::quotient::{quotient_fan, QuotientResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodModel {
    /// The toric quotient of the input fan.
    pub quotient: QuotientResult,
    /// Hull cones, one per maximal cone of the quotient fan.
    pub hull_cones: Vec<Cone>,
    /// Projection `G` from the input lattice onto the model lattice.
    pub model_projection: IntMat,
    /// The model fan in the model lattice.
    pub model_fan: Fan,
    /// Factorization of the quotient projection: `P = factor * G`.
    pub factor: IntMat,
    /// Image of the acting sublattice in the model lattice, saturated.
    pub model_sublattice: SublatticeBasis,
}

/// Constructs the good model of a fan with respect to a primitive
/// sublattice.
pub fn good_model(fan: &Fan, sublattice: &SublatticeBasis) -> Result<GoodModel> {
    let quotient = quotient_fan(fan.system(), sublattice)?;
    let rays = fan.ray_vectors();
    let projection = &quotient.projection;

    let mut hull_cones = Vec::new();
    for tau in quotient.fan.maximal_cones() {
        let members: Vec<_> = rays
            .iter()
            .filter(|ray| {
                let image = projection.mul_vec(ray).expect("rank checked");
                tau.contains_int_point(&image).expect("rank checked")
            })
            .cloned()
            .collect();
        hull_cones.push(Cone::from_generators(fan.rank(), &members)?);
    }

    let mut meet = hull_cones[0].clone();
    for c in &hull_cones[1..] {
        meet = meet.intersect(c)?;
    }
    let collapsed = meet.lineality_space();
    let model_projection = collapsed.quotient_projection()?;

    let images: Vec<Cone> = hull_cones
        .iter()
        .map(|c| c.image(&model_projection))
        .collect::<Result<_>>()?;
    let model_fan = Fan::from_maximal(model_projection.rows(), images)
        .map_err(|_| Error::InternalInvariant("hull cones do not project to a fan".into()))?;

    let factor = projection.mul(&section_of_surjection(&model_projection)?);
    if factor.mul(&model_projection) != *projection {
        return Err(Error::InternalInvariant(
            "quotient projection does not factor through the model projection".into(),
        ));
    }
    if !check_map_of_systems(&model_projection, fan.system(), model_fan.system())?.ok {
        return Err(Error::InternalInvariant(
            "model projection is not a map of fans".into(),
        ));
    }
    if !check_map_of_systems(&factor, model_fan.system(), quotient.fan.system())?.ok {
        return Err(Error::InternalInvariant(
            "factored projection is not a map of fans".into(),
        ));
    }

    // The whole point of the model: its own quotient is good.
    let image_basis: Vec<_> = sublattice
        .basis()
        .iter()
        .map(|b| model_projection.mul_vec(b).expect("rank checked"))
        .collect();
    let model_sublattice =
        SublatticeBasis::from_spanning(model_projection.rows(), &image_basis)?.saturate();
    let model_quotient = quotient_fan(model_fan.system(), &model_sublattice)?;
    let report = check_good_quotient(&model_fan, &model_quotient)?;
    if !report.is_good {
        return Err(Error::InternalInvariant(
            "model fan quotient failed the goodness check".into(),
        ));
    }

    Ok(GoodModel {
        quotient,
        hull_cones,
        model_projection,
        model_fan,
        factor,
        model_sublattice,
    })
}

/// The map induced between two good models by an equivariant map of fans.
///
/// `f` must be a map of fans from `src` to `dst` sending `src_sublattice`
/// into `dst_sublattice`; the returned matrix `g` is the unique solution
/// of `g * G = G' * f` and is verified to map the model fans.
pub fn induced_model_map(
    f: &IntMat,
    src: (&Fan, &SublatticeBasis),
    dst: (&Fan, &SublatticeBasis),
    src_model: &GoodModel,
    dst_model: &GoodModel,
) -> Result<IntMat> {
    let (src_fan, src_sublattice) = src;
    let (dst_fan, dst_sublattice) = dst;
    if !check_map_of_systems(f, src_fan.system(), dst_fan.system())?.ok {
        return Err(Error::NotAMapOfFans);
    }
    for b in src_sublattice.basis() {
        if !dst_sublattice.contains(&f.mul_vec(b)?) {
            return Err(Error::NotEquivariant);
        }
    }
    let g = dst_model
        .model_projection
        .mul(f)
        .mul(&section_of_surjection(&src_model.model_projection)?);
    if g.mul(&src_model.model_projection) != dst_model.model_projection.mul(f) {
        return Err(Error::InternalInvariant(
            "induced map does not satisfy the factorization identity".into(),
        ));
    }
    if !check_map_of_systems(
        &g,
        src_model.model_fan.system(),
        dst_model.model_fan.system(),
    )?
    .ok
    {
        return Err(Error::NotAMapOfFans);
    }
    Ok(g)
}
