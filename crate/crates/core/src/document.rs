//! Canonical document formats.
//!
//! Every file the tools read or write is JSON with a fixed field order,
//! sorted collections and all integers encoded as decimal strings, so
//! serialization is byte-exact and golden-file friendly. Parsing accepts
//! any valid document; re-serializing canonicalizes it.
//!
//! A fan document lists primitive rays (lexicographically sorted,
//! duplicate-free) and its maximal cones as ascending ray-index lists;
//! the face closure is implied. An optional shared lineality block turns
//! the listed cones into non-strictly-convex cones, which is enough to
//! express the quasifans and general systems the tools accept. A lattice
//! of rank zero is written with `lattice_rank` 0 and a single empty cone.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::{ConeSystem, Fan};
use crate::good_model::GoodModel;
use crate::good_quotient::{AffineQuotient, GoodnessFailure, GoodnessReport};
use crate::linalg::{neg_vec, IntMat, SublatticeBasis};
use crate::quotient::{QuotientResult, QuotientTrace};

pub const FORMAT_VERSION: u32 = 1;

fn int_to_string(x: &BigInt) -> String {
    x.to_str_radix(10)
}

fn vec_to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(int_to_string).collect()
}

fn vecs_to_strings(vs: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| vec_to_strings(v)).collect()
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim())
        .map_err(|_| Error::Document(format!("invalid integer literal {s:?}")))
}

fn parse_vec(rank: usize, v: &[String]) -> Result<Vec<BigInt>> {
    if v.len() != rank {
        return Err(Error::Document(format!(
            "vector of length {} where rank {} was expected",
            v.len(),
            rank
        )));
    }
    v.iter().map(|s| parse_int(s)).collect()
}

fn parse_vecs(rank: usize, vs: &[Vec<String>]) -> Result<Vec<Vec<BigInt>>> {
    vs.iter().map(|v| parse_vec(rank, v)).collect()
}

/// Serializes a document as canonical JSON (pretty, trailing newline).
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization");
    s.push('\n');
    s
}

pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDocument {
    pub format_version: u32,
    pub lattice_rank: usize,
    pub rays: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lineality_generators: Option<Vec<Vec<String>>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanDocument {
    /// Canonical document of a fan: sorted primitive rays, maximal cones
    /// as sorted index lists.
    pub fn from_fan(fan: &Fan) -> FanDocument {
        let maximal = fan.maximal_cones();
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        for c in &maximal {
            rays.extend(c.rays().iter().cloned());
        }
        rays.sort();
        rays.dedup();
        let mut cones: Vec<Vec<usize>> = maximal
            .iter()
            .map(|c| {
                let mut indices: Vec<usize> = c
                    .rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray must be listed"))
                    .collect();
                indices.sort_unstable();
                indices
            })
            .collect();
        cones.sort();
        FanDocument {
            format_version: FORMAT_VERSION,
            lattice_rank: fan.rank(),
            rays: vecs_to_strings(&rays),
            lineality_generators: None,
            cones,
        }
    }

    /// The cones listed in the document, in listed order.
    pub fn to_cones(&self) -> Result<Vec<Cone>> {
        self.member_cones()
    }

    fn member_cones(&self) -> Result<Vec<Cone>> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format version {}",
                self.format_version
            )));
        }
        let rank = self.lattice_rank;
        let rays = parse_vecs(rank, &self.rays)?;
        let lineality = match &self.lineality_generators {
            Some(ls) => parse_vecs(rank, ls)?,
            None => Vec::new(),
        };
        let mut cones = Vec::new();
        for indices in &self.cones {
            let mut gens: Vec<Vec<BigInt>> = Vec::new();
            for &i in indices {
                let ray = rays
                    .get(i)
                    .ok_or_else(|| Error::Document(format!("ray index {i} out of bounds")))?;
                gens.push(ray.clone());
            }
            for l in &lineality {
                gens.push(l.clone());
                gens.push(neg_vec(l));
            }
            cones.push(Cone::from_generators(rank, &gens)?);
        }
        Ok(cones)
    }

    /// The face closure of the listed cones, as a general cone system.
    pub fn to_system(&self) -> Result<ConeSystem> {
        let cones = self.member_cones()?;
        Ok(ConeSystem::new(self.lattice_rank, cones)?.face_closure())
    }

    /// The listed cones as a validated fan.
    pub fn to_fan(&self) -> Result<Fan> {
        let cones = self.member_cones()?;
        if cones.is_empty() {
            return Err(Error::EmptySystem);
        }
        Fan::from_maximal(self.lattice_rank, cones)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeDocument {
    pub format_version: u32,
    pub ambient_rank: usize,
    pub basis: Vec<Vec<String>>,
}

impl SublatticeDocument {
    pub fn from_basis(basis: &SublatticeBasis) -> SublatticeDocument {
        SublatticeDocument {
            format_version: FORMAT_VERSION,
            ambient_rank: basis.ambient_rank(),
            basis: vecs_to_strings(basis.basis()),
        }
    }

    /// Parses the basis; independence is checked, primitivity is left to
    /// the caller's policy.
    pub fn to_basis(&self) -> Result<SublatticeBasis> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format version {}",
                self.format_version
            )));
        }
        let vectors = parse_vecs(self.ambient_rank, &self.basis)?;
        SublatticeBasis::new(self.ambient_rank, &vectors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub format_version: u32,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<String>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &IntMat) -> MatrixDocument {
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            entries.extend(vec_to_strings(m.row(r)));
        }
        MatrixDocument {
            format_version: FORMAT_VERSION,
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<IntMat> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format version {}",
                self.format_version
            )));
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Document(format!(
                "matrix with {} entries where {}x{} was declared",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        let mut m = IntMat::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, parse_int(&self.entries[r * self.cols + c])?);
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDocument {
    pub format_version: u32,
    pub ambient_rank: usize,
    pub enlarged_kernel: Vec<Vec<String>>,
    pub projection: MatrixDocument,
    pub quotient_fan: FanDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

/// One line per loop pass, prefixed by the starting measures.
pub fn trace_lines(trace: &QuotientTrace) -> Vec<String> {
    let mut lines = vec![format!(
        "start cones={} captured={}",
        trace.initial_cones, trace.initial_captured_generators
    )];
    for step in &trace.steps {
        let rays: Vec<String> = step
            .absorbed_face
            .rays()
            .iter()
            .map(|r| format!("[{}]", vec_to_strings(r).join(",")))
            .collect();
        let lineality: Vec<String> = step
            .absorbed_face
            .lineality()
            .iter()
            .map(|r| format!("[{}]", vec_to_strings(r).join(",")))
            .collect();
        lines.push(format!(
            "step={} pair=({},{}) replaced={} absorbed_rays=[{}] absorbed_lineality=[{}] cones={} captured={}",
            step.iteration,
            step.first,
            step.second,
            if step.replaced_first { "first" } else { "second" },
            rays.join(","),
            lineality.join(","),
            step.cones,
            step.captured_generators
        ));
    }
    lines
}

impl QuotientDocument {
    pub fn from_result(result: &QuotientResult, include_trace: bool) -> QuotientDocument {
        QuotientDocument {
            format_version: FORMAT_VERSION,
            ambient_rank: result.input.rank(),
            enlarged_kernel: vecs_to_strings(result.enlarged_kernel.basis()),
            projection: MatrixDocument::from_matrix(&result.projection),
            quotient_fan: FanDocument::from_fan(&result.fan),
            trace: include_trace.then(|| trace_lines(&result.trace)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodModelDocument {
    pub format_version: u32,
    pub ambient_rank: usize,
    pub model_projection: MatrixDocument,
    pub model_fan: FanDocument,
    pub factor_projection: MatrixDocument,
    pub model_sublattice: Vec<Vec<String>>,
    pub quotient: QuotientDocument,
}

impl GoodModelDocument {
    pub fn from_model(model: &GoodModel) -> GoodModelDocument {
        GoodModelDocument {
            format_version: FORMAT_VERSION,
            ambient_rank: model.quotient.input.rank(),
            model_projection: MatrixDocument::from_matrix(&model.model_projection),
            model_fan: FanDocument::from_fan(&model.model_fan),
            factor_projection: MatrixDocument::from_matrix(&model.factor),
            model_sublattice: vecs_to_strings(model.model_sublattice.basis()),
            quotient: QuotientDocument::from_result(&model.quotient, false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessEntryDocument {
    pub quotient_cone_rays: Vec<Vec<String>>,
    pub quotient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stray_ray: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessDocument {
    pub format_version: u32,
    pub good: bool,
    pub geometric: bool,
    pub entries: Vec<GoodnessEntryDocument>,
}

impl GoodnessDocument {
    pub fn from_report(report: &GoodnessReport) -> GoodnessDocument {
        let entries = report
            .entries
            .iter()
            .map(|e| {
                let (failure, stray_ray) = match &e.failure {
                    None => (None, None),
                    Some(GoodnessFailure::NoSurjectiveMaximalCone) => {
                        (Some("no-surjective-maximal-cone".to_string()), None)
                    }
                    Some(GoodnessFailure::StrayRay(r)) => {
                        (Some("stray-ray".to_string()), Some(vec_to_strings(r)))
                    }
                };
                GoodnessEntryDocument {
                    quotient_cone_rays: vecs_to_strings(e.quotient_cone.rays()),
                    quotient_dim: e.quotient_dim,
                    matched_index: e.matched.map(|(i, _)| i),
                    matched_dim: e.matched.map(|(_, d)| d),
                    failure,
                    stray_ray,
                }
            })
            .collect();
        GoodnessDocument {
            format_version: FORMAT_VERSION,
            good: report.is_good,
            geometric: report.is_geometric,
            entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineQuotientDocument {
    pub format_version: u32,
    pub ambient_rank: usize,
    /// Rays of the maximal face met by the sublattice span.
    pub face_rays: Vec<Vec<String>>,
    pub enlarged_kernel: Vec<Vec<String>>,
    pub projection: MatrixDocument,
    /// Face fan of the image cone.
    pub image_fan: FanDocument,
}

impl AffineQuotientDocument {
    pub fn from_affine(rank: usize, affine: &AffineQuotient) -> AffineQuotientDocument {
        AffineQuotientDocument {
            format_version: FORMAT_VERSION,
            ambient_rank: rank,
            face_rays: vecs_to_strings(affine.face.rays()),
            enlarged_kernel: vecs_to_strings(affine.enlarged_kernel.basis()),
            projection: MatrixDocument::from_matrix(&affine.projection),
            image_fan: FanDocument::from_fan(
                &Fan::from_cone(&affine.image).expect("image is strictly convex"),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClosureDocument {
    pub format_version: u32,
    pub ambient_rank: usize,
    /// Lattice of the span of the selected cone.
    pub sublattice: Vec<Vec<String>>,
    pub projection: MatrixDocument,
    pub fan: FanDocument,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;
    use crate::quotient::quotient_fan;

    fn plane_fan() -> Fan {
        Fan::from_maximal_i64(2, &[vec![vec![1, 0], vec![0, 1]]])
    }

    #[test]
    fn fan_document_round_trip() {
        let f = plane_fan();
        let doc = FanDocument::from_fan(&f);
        let text = to_canonical_json(&doc);
        let parsed: FanDocument = from_json(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_fan().unwrap(), f);
        // parse then serialize is the identity on canonical text
        assert_eq!(to_canonical_json(&parsed), text);
    }

    #[test]
    fn scrambled_document_canonicalizes() {
        let text = r#"{
            "format_version": 1,
            "lattice_rank": 2,
            "rays": [["1", "0"], ["0", "2"], ["1", "0"]],
            "cones": [[2, 1], [0]]
        }"#;
        let doc: FanDocument = from_json(text).unwrap();
        let fan = doc.to_fan().unwrap();
        assert_eq!(fan, plane_fan());
        let canonical = FanDocument::from_fan(&fan);
        assert_eq!(canonical.rays, vec![vec!["0", "1"], vec!["1", "0"]]);
        assert_eq!(canonical.cones, vec![vec![0, 1]]);
    }

    #[test]
    fn zero_rank_fan_document() {
        let f = Fan::zero(0);
        let doc = FanDocument::from_fan(&f);
        assert_eq!(doc.lattice_rank, 0);
        assert!(doc.rays.is_empty());
        assert_eq!(doc.cones, vec![Vec::<usize>::new()]);
        assert_eq!(doc.to_fan().unwrap(), f);
    }

    #[test]
    fn lineality_block_builds_quasifan_cones() {
        let text = r#"{
            "format_version": 1,
            "lattice_rank": 2,
            "rays": [["0", "1"]],
            "lineality_generators": [["1", "0"]],
            "cones": [[0]]
        }"#;
        let doc: FanDocument = from_json(text).unwrap();
        let sys = doc.to_system().unwrap();
        assert!(sys
            .cones()
            .iter()
            .any(|c| !c.is_strictly_convex() && c.dim() == 2));
        assert!(doc.to_fan().is_err());
    }

    #[test]
    fn bad_documents_are_rejected() {
        let bad_index: FanDocument =
            from_json(r#"{"format_version":1,"lattice_rank":2,"rays":[["1","0"]],"cones":[[3]]}"#)
                .unwrap();
        assert!(matches!(bad_index.to_fan(), Err(Error::Document(_))));

        let bad_int: FanDocument =
            from_json(r#"{"format_version":1,"lattice_rank":2,"rays":[["1","x"]],"cones":[[0]]}"#)
                .unwrap();
        assert!(matches!(bad_int.to_fan(), Err(Error::Document(_))));

        let bad_version: FanDocument =
            from_json(r#"{"format_version":9,"lattice_rank":2,"rays":[],"cones":[[]]}"#).unwrap();
        assert!(matches!(bad_version.to_fan(), Err(Error::Document(_))));

        let bad_field = from_json::<FanDocument>(
            r#"{"format_version":1,"rank_of_lattice":2,"rays":[],"cones":[[]]}"#,
        );
        assert!(matches!(bad_field, Err(Error::Document(_))));
    }

    #[test]
    fn sublattice_and_matrix_round_trip() {
        let l = SublatticeBasis::new(2, &[vec_from_i64(&[1, -2])]).unwrap();
        let doc = SublatticeDocument::from_basis(&l);
        assert_eq!(doc.to_basis().unwrap(), l);

        let m = IntMat::from_i64(&[vec![2, 1], vec![0, -3]]);
        let mdoc = MatrixDocument::from_matrix(&m);
        assert_eq!(mdoc.to_matrix().unwrap(), m);
    }

    #[test]
    fn quotient_document_content() {
        let l = SublatticeBasis::new(2, &[vec_from_i64(&[1, -2])]).unwrap();
        let q = quotient_fan(plane_fan().system(), &l).unwrap();
        let doc = QuotientDocument::from_result(&q, true);
        assert_eq!(doc.enlarged_kernel, vec![vec!["1", "-2"]]);
        assert_eq!(doc.projection.entries, vec!["2", "1"]);
        assert_eq!(doc.quotient_fan.rays, vec![vec!["1"]]);
        let trace = doc.trace.unwrap();
        assert_eq!(trace.len(), 1);
        assert!(trace[0].starts_with("start cones=1"));
    }

    #[test]
    fn determinism_of_serialization() {
        let f = Fan::from_maximal_i64(
            2,
            &[
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, -1]],
                vec![vec![1, 0], vec![-1, -1]],
            ],
        );
        let a = to_canonical_json(&FanDocument::from_fan(&f));
        let b = to_canonical_json(&FanDocument::from_fan(&f));
        assert_eq!(a, b);
    }
}
