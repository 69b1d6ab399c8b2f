//! Rational homology with explicit bases and a chains-to-homology retraction.
//!
//! For each degree the module fixes a deterministic cycle basis, picks
//! homology representatives by completing the boundary space inside the
//! cycle space, and solves for a retraction `C_i → H_i` that kills
//! boundaries and inverts the representatives. Induced maps on homology are
//! then plain matrix sandwiches, which keeps every downstream invariant a
//! finite exact computation.

use std::collections::BTreeMap;

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::par;
use crate::rational::Rational;

/// Per-degree homology bases for one complex.
#[derive(Debug, Clone)]
pub struct HomologyData {
    complex_name: String,
    chain_dims: Vec<usize>,
    degrees: Vec<DegreeData>,
}

#[derive(Debug, Clone)]
struct DegreeData {
    betti: usize,
    /// Columns are the chosen representative cycles in `C_i`.
    cycle_reps: RatMatrix,
    /// Maps `C_i → H_i`; kills boundaries, left inverse of `cycle_reps`.
    retraction: RatMatrix,
}

impl HomologyData {
    pub fn complex_name(&self) -> &str {
        &self.complex_name
    }

    /// Number of i-chains in the underlying complex.
    pub fn chain_dim(&self, i: usize) -> usize {
        self.chain_dims.get(i).copied().unwrap_or(0)
    }

    /// Top degree carried by the underlying complex.
    pub fn dim(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn betti(&self, i: isize) -> usize {
        if i < 0 {
            return 0;
        }
        self.degrees.get(i as usize).map_or(0, |d| d.betti)
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// `n_i × betti_i` matrix of representative cycles; empty outside range.
    pub fn cycle_reps(&self, i: isize) -> RatMatrix {
        if i < 0 {
            return RatMatrix::zeros(0, 0);
        }
        self.degrees
            .get(i as usize)
            .map_or(RatMatrix::zeros(0, 0), |d| d.cycle_reps.clone())
    }

    /// `betti_i × n_i` retraction; empty outside range.
    pub fn retraction(&self, i: isize) -> RatMatrix {
        if i < 0 {
            return RatMatrix::zeros(0, 0);
        }
        self.degrees
            .get(i as usize)
            .map_or(RatMatrix::zeros(0, 0), |d| d.retraction.clone())
    }

    /// Homology coordinates of a chain vector known to be a cycle.
    pub fn class_of(&self, i: usize, chain: &[Rational]) -> Vec<Rational> {
        self.retraction(i as isize).apply(chain)
    }

    pub fn euler_from_betti(&self) -> Rational {
        alternating_sum(&self.betti_vector())
    }
}

fn alternating_sum(counts: &[usize]) -> Rational {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let term = Rational::from(c as i64);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Alternating sum of simplex counts.
///
/// The same number must come out of the Betti vector; `homology` asserts the
/// two routes agree.
pub fn euler_characteristic(complex: &SimplicialComplex) -> Rational {
    alternating_sum(&complex.f_vector())
}

/// Incremental exact span with membership testing.
struct SpanBuilder {
    /// Leading column index → reduced vector with leading entry 1.
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl SpanBuilder {
    fn new() -> Self {
        SpanBuilder {
            rows: BTreeMap::new(),
        }
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (&lead, row) in &self.rows {
            if v[lead].is_zero() {
                continue;
            }
            let factor = v[lead].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&factor * r);
                }
            }
        }
        v
    }

    /// Insert `v` unless it already lies in the span; returns true if new.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[lead].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.insert(lead, r);
        true
    }
}

/// Compute homology bases for every degree of `complex`.
pub fn homology(complex: &SimplicialComplex) -> HomologyData {
    let dim = complex.dim();
    let degrees: Vec<DegreeData> = par::map_indexed(dim + 1, |i| {
        let n = complex.simplex_count(i);
        let d_i = complex.boundary_matrix(i).expect("degree in range");
        let d_next = if i < dim {
            complex.boundary_matrix(i + 1).expect("degree in range")
        } else {
            RatMatrix::zeros(n, 0)
        };

        let cycles = d_i.kernel_basis();

        // Boundary space basis: pivot columns of the next boundary matrix.
        let (_, pivots) = d_next.rref();
        let boundary_cols: Vec<Vec<Rational>> =
            pivots.iter().map(|&(_, c)| d_next.column(c)).collect();

        // Representatives: cycle basis vectors completing the boundaries,
        // greedily in basis order.
        let mut span = SpanBuilder::new();
        for b in &boundary_cols {
            let fresh = span.insert(b);
            debug_assert!(fresh, "boundary pivots are independent");
        }
        let mut reps: Vec<Vec<Rational>> = Vec::new();
        for z in &cycles {
            if span.insert(z) {
                reps.push(z.clone());
            }
        }
        let betti = reps.len();
        debug_assert_eq!(betti + boundary_cols.len(), cycles.len());

        // Complete to a chain basis with standard vectors.
        let mut completion: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            if span.insert(&e) {
                completion.push(e);
            }
        }

        let cycle_reps = RatMatrix::from_columns(n, &reps);
        let mut columns = reps;
        columns.extend(boundary_cols);
        columns.extend(completion);
        let basis = RatMatrix::from_columns(n, &columns);
        debug_assert!(basis.is_square());
        let inv = basis.invert().expect("constructed a basis");
        let retraction = RatMatrix::from_fn(betti, n, |r, c| inv[(r, c)].clone());

        DegreeData {
            betti,
            cycle_reps,
            retraction,
        }
    });

    let data = HomologyData {
        complex_name: complex.name().to_string(),
        chain_dims: complex.f_vector(),
        degrees,
    };
    assert_eq!(
        data.euler_from_betti(),
        euler_characteristic(complex),
        "Euler count mismatch on `{}`",
        complex.name()
    );
    data
}

/// A degree-indexed family of matrices between graded spaces, with an
/// integer degree shift. Missing blocks are zero.
#[derive(Debug, Clone)]
pub struct GradedMap {
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
    shift: isize,
    blocks: BTreeMap<usize, RatMatrix>,
}

impl GradedMap {
    pub fn zero(source_dims: Vec<usize>, target_dims: Vec<usize>, shift: isize) -> Self {
        GradedMap {
            source_dims,
            target_dims,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let mut map = Self::zero(dims.to_vec(), dims.to_vec(), 0);
        for (i, &d) in dims.iter().enumerate() {
            if d > 0 {
                map.blocks.insert(i, RatMatrix::identity(d));
            }
        }
        map
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    pub fn source_dims(&self) -> &[usize] {
        &self.source_dims
    }

    pub fn target_dims(&self) -> &[usize] {
        &self.target_dims
    }

    pub fn source_dim(&self, i: isize) -> usize {
        dim_at(&self.source_dims, i)
    }

    pub fn target_dim(&self, i: isize) -> usize {
        dim_at(&self.target_dims, i)
    }

    /// The block `H_i(source) → H_{i+shift}(target)`, zero when unset.
    pub fn block(&self, i: usize) -> RatMatrix {
        match self.blocks.get(&i) {
            Some(m) => m.clone(),
            None => RatMatrix::zeros(
                self.target_dim(i as isize + self.shift),
                self.source_dim(i as isize),
            ),
        }
    }

    pub fn set_block(&mut self, i: usize, m: RatMatrix) -> Result<()> {
        let rows = self.target_dim(i as isize + self.shift);
        let cols = self.source_dim(i as isize);
        if (m.rows(), m.cols()) != (rows, cols) {
            return Err(Error::ShapeMismatch(format!(
                "block {i} must be {rows}x{cols}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if rows * cols > 0 {
            self.blocks.insert(i, m);
        }
        Ok(())
    }

    /// `self ∘ earlier`.
    pub fn compose(&self, earlier: &GradedMap) -> Result<GradedMap> {
        if earlier.target_dims != self.source_dims {
            return Err(Error::ShapeMismatch(
                "composition: inner target does not match outer source".into(),
            ));
        }
        let mut out = GradedMap::zero(
            earlier.source_dims.clone(),
            self.target_dims.clone(),
            earlier.shift + self.shift,
        );
        for i in 0..earlier.source_dims.len() {
            let mid = i as isize + earlier.shift;
            if mid < 0 {
                continue;
            }
            let block = self.block(mid as usize).mul(&earlier.block(i));
            out.set_block(i, block)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GradedMap {
        let mut out = self.clone();
        for m in out.blocks.values_mut() {
            *m = m.scale(c);
        }
        out
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source_dims != other.source_dims
            || self.target_dims != other.target_dims
            || self.shift != other.shift
        {
            return Err(Error::ShapeMismatch("graded map addition".into()));
        }
        let mut out = self.clone();
        for i in 0..self.source_dims.len() {
            out.set_block(i, self.block(i).add(&other.block(i)))?;
        }
        Ok(out)
    }

    /// `Σ_i (-1)^i tr(block_i)` for a shift-0 endomorphism.
    pub fn alternating_trace(&self) -> Result<Rational> {
        if self.shift != 0 || self.source_dims != self.target_dims {
            return Err(Error::ShapeMismatch(
                "alternating trace needs a shift-0 endomorphism".into(),
            ));
        }
        let mut total = Rational::zero();
        for i in 0..self.source_dims.len() {
            if self.source_dims[i] == 0 {
                continue;
            }
            let t = self.block(i).trace();
            total += &if i % 2 == 0 { t } else { -t };
        }
        Ok(total)
    }

    /// Apply the degree-`i` block to coordinates of a degree-`i` class.
    pub fn apply(&self, i: usize, coords: &[Rational]) -> Vec<Rational> {
        self.block(i).apply(coords)
    }
}

fn dim_at(dims: &[usize], i: isize) -> usize {
    if i < 0 {
        0
    } else {
        dims.get(i as usize).copied().unwrap_or(0)
    }
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.source_dims == other.source_dims
            && self.target_dims == other.target_dims
            && self.shift == other.shift
            && (0..self.source_dims.len()).all(|i| self.block(i) == other.block(i))
    }
}

/// The map induced on homology by a simplicial map, with shift 0.
pub fn induced_on_homology(
    f: &SimplicialMap,
    domain_homology: &HomologyData,
    codomain_homology: &HomologyData,
) -> Result<GradedMap> {
    if domain_homology.complex_name() != f.domain().name()
        || codomain_homology.complex_name() != f.codomain().name()
    {
        return Err(Error::InvalidInput(
            "homology data does not belong to the map's complexes".into(),
        ));
    }
    let mut out = GradedMap::zero(
        domain_homology.betti_vector(),
        codomain_homology.betti_vector(),
        0,
    );
    for i in 0..=domain_homology.dim() {
        let block = codomain_homology
            .retraction(i as isize)
            .mul(&f.chain_map(i)?)
            .mul(&domain_homology.cycle_reps(i as isize));
        out.set_block(i, block)?;
    }
    Ok(out)
}

/// Degree of a map between same-dimensional complexes whose top Betti
/// number is 1 on both sides.
pub fn degree_of_map(
    f: &SimplicialMap,
    domain_homology: &HomologyData,
    codomain_homology: &HomologyData,
) -> Result<Rational> {
    let n = f.domain().dim();
    if f.codomain().dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "degree needs equal dimensions, got {} and {}",
            n,
            f.codomain().dim()
        )));
    }
    if domain_homology.betti(n as isize) != 1 || codomain_homology.betti(n as isize) != 1 {
        return Err(Error::DimensionMismatch(
            "degree needs betti_top = 1 on both ends".into(),
        ));
    }
    let induced = induced_on_homology(f, domain_homology, codomain_homology)?;
    Ok(induced.block(n)[(0, 0)].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    #[test]
    fn corpus_betti_vectors() {
        let corpus = Corpus::builtin();
        for entry in corpus.entries() {
            let h = homology(&entry.complex);
            assert_eq!(
                h.betti_vector(),
                entry.expected.betti,
                "betti of {}",
                entry.name
            );
            assert_eq!(
                euler_characteristic(&entry.complex),
                Rational::from(entry.expected.euler),
                "euler of {}",
                entry.name
            );
        }
    }

    #[test]
    fn euler_of_point_is_one() {
        let pt = SimplicialComplex::from_facets("pt", &[vec![0]]).unwrap();
        assert_eq!(euler_characteristic(&pt), Rational::one());
        assert_eq!(homology(&pt).betti_vector(), vec![1]);
    }

    #[test]
    fn retraction_identities() {
        let corpus = Corpus::builtin();
        for entry in corpus.entries() {
            let k = &entry.complex;
            let h = homology(k);
            for i in 0..=k.dim() {
                let reps = h.cycle_reps(i as isize);
                let r = h.retraction(i as isize);
                let d_i = k.boundary_matrix(i).unwrap();
                if reps.cols() > 0 {
                    assert!(d_i.mul(&reps).is_zero(), "reps not cycles");
                    assert_eq!(
                        r.mul(&reps),
                        RatMatrix::identity(h.betti(i as isize)),
                        "retraction not a left inverse at {} degree {i}",
                        entry.name
                    );
                }
                if i < k.dim() {
                    let d_next = k.boundary_matrix(i + 1).unwrap();
                    assert!(
                        r.mul(&d_next).is_zero(),
                        "retraction keeps boundaries alive at {} degree {i}",
                        entry.name
                    );
                }
            }
        }
    }

    #[test]
    fn induced_identity_and_examples() {
        let corpus = Corpus::builtin();

        let s1 = corpus.get("s1").unwrap();
        let h1 = homology(&s1.complex);
        let id = induced_on_homology(s1.map("identity").unwrap(), &h1, &h1).unwrap();
        assert_eq!(id, GradedMap::identity(&h1.betti_vector()));
        let rot = induced_on_homology(s1.map("rotation").unwrap(), &h1, &h1).unwrap();
        assert_eq!(
            rot.block(1),
            RatMatrix::identity(1),
            "rotation has degree 1"
        );

        let s2 = corpus.get("s2-oct").unwrap();
        let h2 = homology(&s2.complex);
        let anti = induced_on_homology(s2.map("antipodal").unwrap(), &h2, &h2).unwrap();
        assert_eq!(
            anti.block(2),
            RatMatrix::identity(1).neg(),
            "antipodal has degree -1"
        );
    }

    #[test]
    fn frozen_sphere_degrees() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct"] {
            let entry = corpus.get(name).unwrap();
            let h = homology(&entry.complex);
            for (map_name, &expected) in &entry.expected.map_degrees {
                let d = degree_of_map(entry.map(map_name).unwrap(), &h, &h).unwrap();
                assert_eq!(d, Rational::from(expected), "{name}/{map_name}");
            }
        }
    }

    #[test]
    fn degree_needs_top_betti_one() {
        let disk = SimplicialComplex::from_facets("disk", &[vec![0, 1, 2]]).unwrap();
        let disk = std::sync::Arc::new(disk);
        let h = homology(&disk);
        let id = SimplicialMap::identity(disk);
        assert!(matches!(
            degree_of_map(&id, &h, &h),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn functoriality_on_corpus_endomaps() {
        let corpus = Corpus::builtin();
        for entry in corpus.entries() {
            let h = homology(&entry.complex);
            let endos = entry.endomaps();
            for (_, f) in &endos {
                for (_, g) in &endos {
                    let composite = g.compose(f).unwrap();
                    let lhs = induced_on_homology(&composite, &h, &h).unwrap();
                    let rhs = induced_on_homology(g, &h, &h)
                        .unwrap()
                        .compose(&induced_on_homology(f, &h, &h).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "functoriality on {}", entry.name);
                }
            }
        }
    }

    #[test]
    fn graded_map_trace_and_shape_errors() {
        let mut m = GradedMap::zero(vec![1, 0, 1], vec![1, 0, 1], 0);
        m.set_block(0, RatMatrix::identity(1)).unwrap();
        m.set_block(2, RatMatrix::identity(1)).unwrap();
        assert_eq!(m.alternating_trace().unwrap(), Rational::from(2));

        let shifted = GradedMap::zero(vec![1], vec![0, 1], 1);
        assert!(matches!(
            shifted.alternating_trace(),
            Err(Error::ShapeMismatch(_))
        ));

        let mut bad = GradedMap::zero(vec![2], vec![2], 0);
        assert!(bad.set_block(0, RatMatrix::identity(3)).is_err());
    }
}
