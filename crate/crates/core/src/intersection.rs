//! Intersection invariants of a map against a closed submanifold.
//!
//! A submanifold inclusion carries its own renumbered complex plus the
//! vertex injection into the ambient complex. The wrong-way map
//! `i^! = D_Q ∘ i^* ∘ D_P⁻¹` drops degrees by the codimension; composing
//! with `H(f)` and a Thom-model θ yields the intersection Lefschetz number,
//! and the augmentation of `i^!(f_*[M])` counts transverse intersections.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::duality::{umkehr, Manifold};
use crate::error::{Error, Result};
use crate::homology::{induced_on_homology, GradedMap};
use crate::lefschetz::ThetaMap;
use crate::rational::Rational;

/// A subcomplex `Q ⊆ P` that is itself a closed pseudomanifold.
#[derive(Debug, Clone)]
pub struct SubmanifoldInclusion {
    ambient: Arc<SimplicialComplex>,
    sub: Arc<SimplicialComplex>,
    /// Q vertex index → ambient vertex index, strictly increasing.
    vertex_injection: Vec<usize>,
    inclusion: SimplicialMap,
    codim: usize,
}

impl SubmanifoldInclusion {
    /// Build from facets given in ambient vertex labels.
    pub fn new(
        ambient: Arc<SimplicialComplex>,
        sub_name: impl Into<String>,
        sub_facets: &[Vec<usize>],
    ) -> Result<Self> {
        if sub_facets.is_empty() {
            return Err(Error::EmptyInput("no subcomplex facets"));
        }
        for facet in sub_facets {
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            if ambient.simplex_index(&sorted).is_none() {
                return Err(Error::InvalidInput(format!(
                    "subcomplex facet {facet:?} is not a simplex of `{}`",
                    ambient.name()
                )));
            }
        }
        let mut vertex_injection: Vec<usize> =
            sub_facets.iter().flat_map(|f| f.iter().copied()).collect();
        vertex_injection.sort_unstable();
        vertex_injection.dedup();
        let renumber: BTreeMap<usize, usize> = vertex_injection
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let renumbered: Vec<Vec<usize>> = sub_facets
            .iter()
            .map(|f| f.iter().map(|v| renumber[v]).collect())
            .collect();
        let sub = Arc::new(SimplicialComplex::from_facets(sub_name, &renumbered)?);
        if !sub.is_closed_pseudomanifold() {
            return Err(Error::NotClosed {
                name: sub.name().to_string(),
                face: Vec::new(),
                count: 0,
            });
        }
        if sub.dim() > ambient.dim() {
            return Err(Error::DimensionMismatch(
                "subcomplex exceeds ambient dimension".into(),
            ));
        }
        let inclusion = SimplicialMap::new(sub.clone(), ambient.clone(), vertex_injection.clone())?;
        let codim = ambient.dim() - sub.dim();
        Ok(SubmanifoldInclusion {
            ambient,
            sub,
            vertex_injection,
            inclusion,
            codim,
        })
    }

    pub fn ambient(&self) -> &Arc<SimplicialComplex> {
        &self.ambient
    }

    pub fn sub(&self) -> &Arc<SimplicialComplex> {
        &self.sub
    }

    pub fn vertex_injection(&self) -> &[usize] {
        &self.vertex_injection
    }

    pub fn inclusion(&self) -> &SimplicialMap {
        &self.inclusion
    }

    pub fn codim(&self) -> usize {
        self.codim
    }
}

fn check_manifolds(inc: &SubmanifoldInclusion, q: &Manifold, p: &Manifold) -> Result<()> {
    if q.name() != inc.sub().name() || p.name() != inc.ambient().name() {
        return Err(Error::InvalidInput(
            "manifold data does not match the inclusion".into(),
        ));
    }
    Ok(())
}

/// `i^! : H_*(P) → H_{*-codim}(Q)`, the duality transfer of the inclusion.
pub fn inclusion_umkehr(
    inc: &SubmanifoldInclusion,
    q: &Manifold,
    p: &Manifold,
) -> Result<GradedMap> {
    check_manifolds(inc, q, p)?;
    umkehr(inc.inclusion(), q, p)
}

/// `Σ (-1)^i tr( θ_i ∘ i^! ∘ H_i(f) )` with the zero-contribution
/// convention for shifted or nonsquare blocks.
pub fn intersection_lefschetz(
    f: &SimplicialMap,
    inc: &SubmanifoldInclusion,
    theta: &ThetaMap,
    m: &Manifold,
    p: &Manifold,
    q: &Manifold,
) -> Result<Rational> {
    check_manifolds(inc, q, p)?;
    if f.domain().name() != m.name() || f.codomain().name() != p.name() {
        return Err(Error::InvalidInput(format!(
            "f must map `{}` to `{}`",
            m.name(),
            p.name()
        )));
    }
    if theta.codim() != inc.codim() {
        return Err(Error::ShapeMismatch(format!(
            "θ models codimension {}, inclusion has codimension {}",
            theta.codim(),
            inc.codim()
        )));
    }
    theta.validate(q, m)?;
    let f_star = induced_on_homology(f, m.homology(), p.homology())?;
    let transfer = inclusion_umkehr(inc, q, p)?;
    let composite = transfer.compose(&f_star)?; // H_i(M) → H_{i-codim}(Q)
    let mut total = Rational::zero();
    if theta.shift() != 0 {
        return Ok(total);
    }
    for i in 0..=m.dim() {
        let block = theta.block(i, q, m).mul(&composite.block(i));
        if block.is_square() && block.rows() > 0 {
            let t = block.trace();
            total += &if i % 2 == 0 { t } else { -t };
        }
    }
    Ok(total)
}

/// Augmentation of `i^!(f_*[M])`: the algebraic count of intersections of
/// `f` with `Q`. Zero when `dim M < codim` (the image class lives below
/// degree zero); an error when it would land in positive degree.
pub fn intersection_number(
    f: &SimplicialMap,
    inc: &SubmanifoldInclusion,
    m: &Manifold,
    p: &Manifold,
    q: &Manifold,
) -> Result<Rational> {
    check_manifolds(inc, q, p)?;
    if f.domain().name() != m.name() || f.codomain().name() != p.name() {
        return Err(Error::InvalidInput(format!(
            "f must map `{}` to `{}`",
            m.name(),
            p.name()
        )));
    }
    if m.dim() > inc.codim() {
        return Err(Error::DimensionMismatch(format!(
            "intersection number needs dim M ≤ codim; got {} > {}",
            m.dim(),
            inc.codim()
        )));
    }
    if m.dim() < inc.codim() {
        return Ok(Rational::zero());
    }
    let f_star = induced_on_homology(f, m.homology(), p.homology())?;
    let transfer = inclusion_umkehr(inc, q, p)?;
    let image = transfer
        .block(m.dim())
        .apply(&f_star.apply(m.dim(), m.fundamental_class().class_coords()));
    Ok(image.into_iter().sum())
}
