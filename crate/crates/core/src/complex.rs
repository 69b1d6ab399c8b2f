//! Finite ordered simplicial complexes and simplicial maps.
//!
//! A complex is built from its facets and closed under faces. Simplices are
//! stored per dimension as strictly ascending vertex tuples, each dimension
//! sorted lexicographically; those positions index the chain bases used by
//! every matrix in the crate. The integer order on vertices is also the
//! global order behind all front-face/back-face constructions downstream.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    vertex_count: usize,
    /// `simplices_by_dim[i]` lists the i-simplices in lexicographic order.
    simplices_by_dim: Vec<Vec<Vec<usize>>>,
    /// Reverse lookup per dimension.
    index_by_dim: Vec<HashMap<Vec<usize>, usize>>,
    /// All maximal simplices have the same dimension.
    pure: bool,
    /// Pure and every codimension-1 face lies in exactly two facets.
    closed: bool,
}

impl SimplicialComplex {
    /// Close the given facets under faces and validate the result.
    pub fn from_facets(name: impl Into<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let name = name.into();
        if facets.is_empty() {
            return Err(Error::EmptyInput("no facets"));
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::EmptyInput("empty facet"));
            }
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != facet.len() {
                return Err(Error::InvalidInput(format!(
                    "facet {facet:?} repeats a vertex"
                )));
            }
            // Every nonempty subset is a face.
            let k = sorted.len();
            if k > 24 {
                return Err(Error::InvalidInput(format!(
                    "facet with {k} vertices: face closure would not fit in memory"
                )));
            }
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|&b| mask & (1 << b) != 0)
                    .map(|b| sorted[b])
                    .collect();
                all.insert(face);
            }
        }
        let vertex_count = 1 + all
            .iter()
            .flat_map(|s| s.iter().copied())
            .max()
            .expect("nonempty");
        let used: BTreeSet<usize> = all.iter().flat_map(|s| s.iter().copied()).collect();
        if used.len() != vertex_count {
            return Err(Error::InvalidInput(format!(
                "vertices must be 0..{vertex_count} with no gaps"
            )));
        }

        let dim = all.iter().map(|s| s.len() - 1).max().expect("nonempty");
        let mut simplices_by_dim = vec![Vec::new(); dim + 1];
        for s in all {
            simplices_by_dim[s.len() - 1].push(s);
        }
        // BTreeSet iteration is lex within each length already, but re-sorting
        // keeps the ordering contract independent of that detail.
        for list in simplices_by_dim.iter_mut() {
            list.sort_unstable();
        }
        let index_by_dim = simplices_by_dim
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();

        let mut complex = SimplicialComplex {
            name,
            vertex_count,
            simplices_by_dim,
            index_by_dim,
            pure: false,
            closed: false,
        };
        let maximal = complex.maximal_simplices();
        complex.pure = maximal.iter().all(|s| s.len() == dim + 1);
        complex.closed = complex.pure && complex.codim1_face_counts().values().all(|&c| c == 2);
        Ok(complex)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> usize {
        self.simplices_by_dim.len() - 1
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.closed
    }

    /// Number of i-simplices; zero outside `0..=dim`.
    pub fn simplex_count(&self, i: usize) -> usize {
        self.simplices_by_dim.get(i).map_or(0, Vec::len)
    }

    pub fn simplices(&self, i: usize) -> &[Vec<usize>] {
        self.simplices_by_dim.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        self.index_by_dim
            .get(simplex.len().checked_sub(1)?)?
            .get(simplex)
            .copied()
    }

    /// Counts of simplices per dimension, `(f_0, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim.iter().map(Vec::len).collect()
    }

    /// Simplices that are not a proper face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut maximal = Vec::new();
        for (i, list) in self.simplices_by_dim.iter().enumerate() {
            for s in list {
                let contained = self.simplices_by_dim.iter().skip(i + 1).any(|bigger| {
                    bigger
                        .iter()
                        .any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !contained {
                    maximal.push(s.clone());
                }
            }
        }
        maximal
    }

    /// The facets of a pure complex: its top-dimensional simplices.
    pub fn facets(&self) -> &[Vec<usize>] {
        self.simplices(self.dim())
    }

    /// How many facets contain each codimension-1 simplex. Empty for
    /// 0-dimensional complexes, which have no codimension-1 faces.
    pub fn codim1_face_counts(&self) -> HashMap<Vec<usize>, usize> {
        let dim = self.dim();
        if dim == 0 {
            return HashMap::new();
        }
        let mut counts: HashMap<Vec<usize>, usize> = self
            .simplices(dim - 1)
            .iter()
            .map(|s| (s.clone(), 0))
            .collect();
        for facet in self.facets() {
            for k in 0..facet.len() {
                let mut face = facet.clone();
                face.remove(k);
                *counts.get_mut(&face).expect("closed under faces") += 1;
            }
        }
        counts
    }

    /// Matrix of the boundary operator `∂_i: C_i → C_{i-1}`.
    ///
    /// Column j lists the signed faces of the j-th i-simplex, the face
    /// omitting vertex k carrying sign `(-1)^k`. `∂_0` is the zero map into
    /// the empty degree.
    pub fn boundary_matrix(&self, i: usize) -> Result<RatMatrix> {
        if i > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: i as isize,
                dim: self.dim(),
            });
        }
        if i == 0 {
            return Ok(RatMatrix::zeros(0, self.simplex_count(0)));
        }
        let mut m = RatMatrix::zeros(self.simplex_count(i - 1), self.simplex_count(i));
        for (j, simplex) in self.simplices(i).iter().enumerate() {
            let mut sign = Rational::one();
            for k in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(k);
                let row = self.simplex_index(&face).expect("closed under faces");
                m[(row, j)] = sign.clone();
                sign = -sign;
            }
        }
        Ok(m)
    }
}

/// A vertex map carrying simplices to simplices.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    /// Validate that every facet image (after collapsing repeats) is a
    /// simplex of the codomain; faces of facets then follow.
    pub fn new(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                domain.vertex_count()
            )));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= codomain.vertex_count()) {
            return Err(Error::InvalidInput(format!(
                "vertex image {v} outside codomain `{}`",
                codomain.name()
            )));
        }
        for facet in domain.maximal_simplices() {
            let mut image: Vec<usize> = facet.iter().map(|&v| vertex_map[v]).collect();
            image.sort_unstable();
            image.dedup();
            if codomain.simplex_index(&image).is_none() {
                return Err(Error::InvalidMap {
                    simplex: facet.clone(),
                    codomain: codomain.name().to_string(),
                });
            }
        }
        Ok(SimplicialMap {
            domain,
            codomain,
            vertex_map,
        })
    }

    pub fn identity(complex: Arc<SimplicialComplex>) -> Self {
        let vertex_map = (0..complex.vertex_count()).collect();
        SimplicialMap {
            domain: complex.clone(),
            codomain: complex,
            vertex_map,
        }
    }

    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Compose `self` after `earlier` (so `self ∘ earlier`).
    pub fn compose(&self, earlier: &SimplicialMap) -> Result<SimplicialMap> {
        if earlier.codomain.name() != self.domain.name() {
            return Err(Error::InvalidInput(format!(
                "cannot compose: `{}` lands in `{}`, not `{}`",
                earlier.domain.name(),
                earlier.codomain.name(),
                self.domain.name()
            )));
        }
        let vertex_map = earlier
            .vertex_map
            .iter()
            .map(|&v| self.vertex_map[v])
            .collect();
        SimplicialMap::new(earlier.domain.clone(), self.codomain.clone(), vertex_map)
    }

    /// Matrix of the induced chain map `C_i(domain) → C_i(codomain)`.
    ///
    /// A simplex goes to its image with the sign of the permutation sorting
    /// the image vertices, or to zero if the image collapses.
    pub fn chain_map(&self, i: usize) -> Result<RatMatrix> {
        if i > self.domain.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: i as isize,
                dim: self.domain.dim(),
            });
        }
        let mut m = RatMatrix::zeros(self.codomain.simplex_count(i), self.domain.simplex_count(i));
        for (j, simplex) in self.domain.simplices(i).iter().enumerate() {
            let image: Vec<usize> = simplex.iter().map(|&v| self.vertex_map[v]).collect();
            let Some((sorted, sign)) = sort_with_sign(&image) else {
                continue; // degenerate image
            };
            let row = self
                .codomain
                .simplex_index(&sorted)
                .expect("validated simplicial");
            m[(row, j)] = Rational::from(sign);
        }
        Ok(m)
    }
}

/// Sort a vertex tuple, returning the permutation sign, or `None` when two
/// entries coincide.
fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut sorted = tuple.to_vec();
    let mut sign = 1i64;
    // Insertion sort, counting swaps; tuples are tiny.
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Arc<SimplicialComplex> {
        Arc::new(
            SimplicialComplex::from_facets("s1", &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap(),
        )
    }

    fn octahedron() -> Arc<SimplicialComplex> {
        let facets: Vec<Vec<usize>> = [
            [0, 2, 4],
            [0, 2, 5],
            [0, 3, 4],
            [0, 3, 5],
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 4],
            [1, 3, 5],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect();
        Arc::new(SimplicialComplex::from_facets("s2-oct", &facets).unwrap())
    }

    /// Independent closure oracle: enumerate subsets of each facet directly.
    fn brute_force_f_vector(facets: &[Vec<usize>]) -> Vec<usize> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let k = f.len();
            for mask in 1u32..(1 << k) {
                let mut s: Vec<usize> = (0..k)
                    .filter(|&b| mask & (1 << b) != 0)
                    .map(|b| f[b])
                    .collect();
                s.sort_unstable();
                seen.insert(s);
            }
        }
        let dim = seen.iter().map(|s| s.len()).max().unwrap();
        let mut fv = vec![0; dim];
        for s in seen {
            fv[s.len() - 1] += 1;
        }
        fv
    }

    #[test]
    fn triangle_is_a_circle() {
        let k = triangle();
        assert_eq!(k.f_vector(), vec![3, 3]);
        assert_eq!(k.dim(), 1);
        assert!(k.is_pure());
        assert!(k.is_closed_pseudomanifold());
    }

    #[test]
    fn octahedron_counts() {
        let k = octahedron();
        assert_eq!(k.f_vector(), vec![6, 12, 8]);
        let facets: Vec<Vec<usize>> = k.facets().to_vec();
        assert_eq!(k.f_vector(), brute_force_f_vector(&facets));
        assert!(k.is_closed_pseudomanifold());
    }

    #[test]
    fn solid_triangle_is_pure_but_not_closed() {
        let k = SimplicialComplex::from_facets("disk", &[vec![0, 1, 2]]).unwrap();
        assert!(k.is_pure());
        assert!(!k.is_closed_pseudomanifold());
        for (_, count) in k.codim1_face_counts() {
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn rebuild_from_full_simplex_list_is_identity() {
        let k = octahedron();
        let everything: Vec<Vec<usize>> = (0..=k.dim())
            .flat_map(|i| k.simplices(i).iter().cloned())
            .collect();
        let rebuilt = SimplicialComplex::from_facets("s2-oct", &everything).unwrap();
        assert_eq!(*k, rebuilt);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert_eq!(
            SimplicialComplex::from_facets("e", &[]),
            Err(Error::EmptyInput("no facets"))
        );
        assert!(SimplicialComplex::from_facets("e", &[vec![0, 0, 1]]).is_err());
        // vertex 1 unused
        assert!(SimplicialComplex::from_facets("e", &[vec![0, 2]]).is_err());
    }

    #[test]
    fn triangle_boundary_columns() {
        let k = triangle();
        let d1 = k.boundary_matrix(1).unwrap();
        // Edges in lex order: (0,1), (0,2), (1,2); each column is -1 at the
        // tail vertex and +1 at the head vertex.
        let expected = RatMatrix::from_int_rows(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(d1, expected);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let corpus = crate::corpus::Corpus::builtin();
        let mut complexes: Vec<Arc<SimplicialComplex>> =
            corpus.entries().iter().map(|e| e.complex.clone()).collect();
        complexes.push(Arc::new(crate::corpus::grid_torus(4).unwrap()));
        for k in complexes {
            for i in 1..=k.dim() {
                let a = k.boundary_matrix(i - 1).unwrap();
                let b = k.boundary_matrix(i).unwrap();
                if a.rows() == 0 {
                    continue;
                }
                assert!(a.mul(&b).is_zero(), "∂∂ ≠ 0 on {} degree {}", k.name(), i);
            }
        }
    }

    #[test]
    fn point_boundary_is_zero_map_to_empty_degree() {
        let k = SimplicialComplex::from_facets("pt", &[vec![0]]).unwrap();
        let d0 = k.boundary_matrix(0).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (0, 1));
        assert_eq!(
            k.boundary_matrix(1),
            Err(Error::DegreeOutOfRange { degree: 1, dim: 0 })
        );
    }

    #[test]
    fn identity_chain_map_is_identity() {
        let k = octahedron();
        let id = SimplicialMap::identity(k.clone());
        for i in 0..=k.dim() {
            assert_eq!(
                id.chain_map(i).unwrap(),
                RatMatrix::identity(k.simplex_count(i))
            );
        }
    }

    #[test]
    fn rotation_chain_map_is_signed_permutation() {
        let k = triangle();
        let rot = SimplicialMap::new(k.clone(), k.clone(), vec![1, 2, 0]).unwrap();
        let m = rot.chain_map(1).unwrap();
        // Images computed by hand: (0,1)↦(1,2) sign +, (0,2)↦(1,0)→(0,1)
        // sign -, (1,2)↦(2,0)→(0,2) sign -.
        let expected = RatMatrix::from_int_rows(&[&[0, -1, 0], &[0, 0, -1], &[1, 0, 0]]);
        assert_eq!(m, expected);
        // Permutation structure: one ±1 per row and column.
        for j in 0..3 {
            let nonzero = (0..3).filter(|&i| !m[(i, j)].is_zero()).count();
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn constant_map_collapses_edges() {
        let k = triangle();
        let c = SimplicialMap::new(k.clone(), k.clone(), vec![0, 0, 0]).unwrap();
        assert!(c.chain_map(1).unwrap().is_zero());
        let d0 = c.chain_map(0).unwrap();
        assert_eq!(
            d0,
            RatMatrix::from_int_rows(&[&[1, 1, 1], &[0, 0, 0], &[0, 0, 0]])
        );
    }

    #[test]
    fn chain_maps_commute_with_boundary() {
        let corpus = crate::corpus::Corpus::builtin();
        for entry in corpus.entries() {
            for (name, map) in &entry.maps {
                let dom = map.domain();
                let cod = map.codomain();
                for i in 1..=dom.dim() {
                    let lhs = cod
                        .boundary_matrix(i)
                        .unwrap()
                        .mul(&map.chain_map(i).unwrap());
                    let rhs = map
                        .chain_map(i - 1)
                        .unwrap()
                        .mul(&dom.boundary_matrix(i).unwrap());
                    assert_eq!(lhs, rhs, "{}/{name} degree {i}", entry.name);
                }
            }
        }
    }

    #[test]
    fn invalid_map_reports_offending_simplex() {
        // The circle has no 2-simplex, so the disk cannot include into it.
        let disk = Arc::new(SimplicialComplex::from_facets("disk", &[vec![0, 1, 2]]).unwrap());
        match SimplicialMap::new(disk, triangle(), vec![0, 1, 2]) {
            Err(Error::InvalidMap { simplex, .. }) => assert_eq!(simplex, vec![0, 1, 2]),
            other => panic!("expected InvalidMap, got {other:?}"),
        }
        // The square has no edge (0,2).
        let sq = Arc::new(
            SimplicialComplex::from_facets("sq", &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
                .unwrap(),
        );
        match SimplicialMap::new(triangle(), sq, vec![0, 1, 2]) {
            Err(Error::InvalidMap { simplex, .. }) => assert_eq!(simplex, vec![0, 2]),
            other => panic!("expected InvalidMap, got {other:?}"),
        }
    }
}
