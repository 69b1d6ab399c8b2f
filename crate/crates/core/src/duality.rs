//! Fundamental classes, cup products, Poincaré duality, and Umkehr maps.
//!
//! Cohomology is kept implicit: `H^i` is the dual space of `H_i` in the dual
//! basis, and the cochain representing the r-th dual basis class is row r of
//! the degree-i retraction (it kills boundaries, so it is a cocycle, and it
//! evaluates to the Kronecker delta on the chosen representative cycles).
//!
//! Conventions, fixed once and verified by the adjunction test below:
//! for cochains φ of degree p and ψ of degree q on an n-manifold,
//!
//! ```text
//! (φ ∪ ψ)(v_0..v_{p+q}) = φ(v_0..v_p) · ψ(v_p..v_{p+q})      (front ∪ back)
//! z ∩ ψ = Σ_σ z_σ · ψ(v_{n-q}..v_n) · (v_0..v_{n-q})          (cap eats the back)
//! ```
//!
//! With these choices `⟨φ ∪ ψ, [N]⟩ = ⟨φ, [N] ∩ ψ⟩` holds on the nose, so
//! the per-degree calibration sign is +1 everywhere; the crate asserts the
//! adjunction exactly on the circle and the torus before anything uses it.

use std::sync::Arc;

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::homology::{homology, induced_on_homology, GradedMap, HomologyData};
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// Coherent ±1 facet weights forming a top-degree cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalClass {
    /// One ±1 per facet, in facet (lexicographic) order.
    coefficients: Vec<Rational>,
    /// Coordinates of the cycle in the chosen top homology basis.
    class_coords: Vec<Rational>,
}

impl FundamentalClass {
    /// Orient by breadth-first propagation across shared codimension-1
    /// faces, seeding the given facet with +1 (or -1).
    pub fn propagate(
        complex: &SimplicialComplex,
        homology_data: &HomologyData,
        seed_facet: usize,
        positive: bool,
    ) -> Result<Self> {
        let n = complex.dim();
        if !complex.is_pure() {
            return Err(Error::InvalidInput(format!(
                "`{}` is not pure: facets have mixed dimensions",
                complex.name()
            )));
        }
        for (face, count) in complex.codim1_face_counts() {
            if count != 2 {
                return Err(Error::NotClosed {
                    name: complex.name().to_string(),
                    face,
                    count,
                });
            }
        }
        let facets = complex.facets();
        assert!(seed_facet < facets.len(), "seed facet out of range");

        // face index -> (facet index, sign of the face inside ∂facet)
        let mut incidences: Vec<Vec<(usize, i64)>> =
            vec![Vec::new(); complex.simplex_count(n.saturating_sub(1))];
        if n > 0 {
            for (t, facet) in facets.iter().enumerate() {
                let mut sign = 1i64;
                for k in 0..facet.len() {
                    let mut face = facet.clone();
                    face.remove(k);
                    let idx = complex.simplex_index(&face).expect("closed under faces");
                    incidences[idx].push((t, sign));
                    sign = -sign;
                }
            }
        }

        let mut signs: Vec<Option<i64>> = vec![None; facets.len()];
        let mut queue = std::collections::VecDeque::new();
        let mut start = seed_facet;
        let seed_sign = if positive { 1 } else { -1 };
        loop {
            signs[start] = Some(seed_sign);
            queue.push_back(start);
            while let Some(t) = queue.pop_front() {
                if n == 0 {
                    continue; // isolated points have nothing to propagate to
                }
                let sign_t = signs[t].expect("queued facets are signed");
                for k in 0..facets[t].len() {
                    let mut face = facets[t].clone();
                    face.remove(k);
                    let idx = complex.simplex_index(&face).expect("closed under faces");
                    for &(other, c_other) in &incidences[idx] {
                        if other == t {
                            continue;
                        }
                        let c_t = if k % 2 == 0 { 1 } else { -1 };
                        // Opposite induced orientations: ε_t·c_t + ε_o·c_o = 0.
                        let required = -sign_t * c_t * c_other;
                        match signs[other] {
                            None => {
                                signs[other] = Some(required);
                                queue.push_back(other);
                            }
                            Some(s) if s != required => {
                                return Err(Error::NonOrientable(complex.name().to_string()));
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
            match signs.iter().position(Option::is_none) {
                Some(next) => start = next, // another component, fresh +1 seed
                None => break,
            }
        }

        let coefficients: Vec<Rational> = signs
            .iter()
            .map(|s| Rational::from(s.expect("all facets signed")))
            .collect();
        let boundary = complex.boundary_matrix(n)?;
        if boundary.rows() > 0 && !boundary.apply(&coefficients).iter().all(Rational::is_zero) {
            return Err(Error::NonOrientable(complex.name().to_string()));
        }
        let class_coords = homology_data.class_of(n, &coefficients);
        Ok(FundamentalClass {
            coefficients,
            class_coords,
        })
    }

    /// ±1 weight per facet, in facet order.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coordinates in the chosen top homology basis.
    pub fn class_coords(&self) -> &[Rational] {
        &self.class_coords
    }
}

/// Duality matrices and cup pairings, one per degree.
#[derive(Debug, Clone)]
pub struct DualityData {
    /// `d[i]`: cap with the fundamental class, `H^{n-i} → H_i`.
    d: Vec<RatMatrix>,
    d_inv: Vec<RatMatrix>,
    /// `pairing[i]`: the cup pairing `H^{n-i} ⊗ H^i → Q` on `[N]`.
    pairing: Vec<RatMatrix>,
}

impl DualityData {
    /// `D_i: H^{n-i} → H_i` in the dual/homology bases.
    pub fn d(&self, i: usize) -> &RatMatrix {
        &self.d[i]
    }

    pub fn d_inv(&self, i: usize) -> &RatMatrix {
        &self.d_inv[i]
    }

    pub fn pairing(&self, i: usize) -> &RatMatrix {
        &self.pairing[i]
    }
}

/// A closed oriented triangulated manifold with all derived data cached.
#[derive(Debug, Clone)]
pub struct Manifold {
    complex: Arc<SimplicialComplex>,
    homology: HomologyData,
    fundamental: FundamentalClass,
    duality: DualityData,
}

impl Manifold {
    /// Orient from facet 0 with sign +1.
    pub fn new(complex: Arc<SimplicialComplex>) -> Result<Self> {
        Self::with_orientation(complex, 0, true)
    }

    /// Orient from an explicit seed; flipping the seed sign flips `[M]`.
    pub fn with_orientation(
        complex: Arc<SimplicialComplex>,
        seed_facet: usize,
        positive: bool,
    ) -> Result<Self> {
        let homology = homology(&complex);
        let fundamental = FundamentalClass::propagate(&complex, &homology, seed_facet, positive)?;
        let duality = build_duality(&complex, &homology, &fundamental)?;
        Ok(Manifold {
            complex,
            homology,
            fundamental,
            duality,
        })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn name(&self) -> &str {
        self.complex.name()
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn homology(&self) -> &HomologyData {
        &self.homology
    }

    pub fn fundamental_class(&self) -> &FundamentalClass {
        &self.fundamental
    }

    pub fn duality(&self) -> &DualityData {
        &self.duality
    }

    /// Cochain (values on i-simplices) representing a cohomology class given
    /// in the dual basis.
    pub fn cocycle_of(&self, i: usize, coords: &[Rational]) -> Vec<Rational> {
        self.homology
            .retraction(i as isize)
            .transpose()
            .apply(coords)
    }

    /// Dual-basis coordinates of a cocycle's cohomology class.
    pub fn class_of_cocycle(&self, i: usize, cochain: &[Rational]) -> Vec<Rational> {
        self.homology
            .cycle_reps(i as isize)
            .transpose()
            .apply(cochain)
    }

    /// Cup product of two cocycles as a cochain in degree `p + q`.
    pub fn cup_cochain(
        &self,
        p: usize,
        q: usize,
        phi: &[Rational],
        psi: &[Rational],
    ) -> Vec<Rational> {
        cup_on_simplices(&self.complex, p, q, phi, psi)
    }

    /// Cup product on cohomology classes, in dual-basis coordinates.
    pub fn cup_classes(
        &self,
        p: usize,
        q: usize,
        phi_class: &[Rational],
        psi_class: &[Rational],
    ) -> Vec<Rational> {
        let phi = self.cocycle_of(p, phi_class);
        let psi = self.cocycle_of(q, psi_class);
        let cup = self.cup_cochain(p, q, &phi, &psi);
        self.class_of_cocycle(p + q, &cup)
    }
}

/// `(φ ∪ ψ)(σ) = φ(front_p σ) · ψ(back_q σ)` over all (p+q)-simplices.
fn cup_on_simplices(
    complex: &SimplicialComplex,
    p: usize,
    q: usize,
    phi: &[Rational],
    psi: &[Rational],
) -> Vec<Rational> {
    let top = complex.simplices(p + q);
    let mut values = Vec::with_capacity(top.len());
    for simplex in top {
        let front = &simplex[..=p];
        let back = &simplex[p..];
        let fi = complex.simplex_index(front).expect("face of a simplex");
        let bi = complex.simplex_index(back).expect("face of a simplex");
        values.push(&phi[fi] * &psi[bi]);
    }
    values
}

/// Cap of the weighted facet cycle with a degree-q cochain, landing in
/// `C_{n-q}`: the cochain eats the back face, the front face survives.
fn cap_fundamental(
    complex: &SimplicialComplex,
    coefficients: &[Rational],
    q: usize,
    psi: &[Rational],
) -> Vec<Rational> {
    let n = complex.dim();
    let mut chain = vec![Rational::zero(); complex.simplex_count(n - q)];
    for (t, facet) in complex.facets().iter().enumerate() {
        let back = &facet[n - q..];
        let bi = complex.simplex_index(back).expect("face of a facet");
        if psi[bi].is_zero() || coefficients[t].is_zero() {
            continue;
        }
        let front = &facet[..=n - q];
        let fi = complex.simplex_index(front).expect("face of a facet");
        chain[fi] += &(&coefficients[t] * &psi[bi]);
    }
    chain
}

fn build_duality(
    complex: &SimplicialComplex,
    homology_data: &HomologyData,
    fundamental: &FundamentalClass,
) -> Result<DualityData> {
    let n = complex.dim();
    let mut d = Vec::with_capacity(n + 1);
    let mut d_inv = Vec::with_capacity(n + 1);
    let mut pairing = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let b_i = homology_data.betti(i as isize);
        let b_dual = homology_data.betti((n - i) as isize);

        // D_i column r: retract [N] ∩ (dual cochain r of degree n-i).
        let mut d_i = RatMatrix::zeros(b_i, b_dual);
        for r in 0..b_dual {
            let mut coords = vec![Rational::zero(); b_dual];
            coords[r] = Rational::one();
            let cochain = homology_data
                .retraction((n - i) as isize)
                .transpose()
                .apply(&coords);
            let capped = cap_fundamental(complex, &fundamental.coefficients, n - i, &cochain);
            for (row, v) in homology_data.class_of(i, &capped).into_iter().enumerate() {
                d_i[(row, r)] = v;
            }
        }
        let d_i_inv = if b_i == b_dual {
            d_i.invert().map_err(|_| Error::DualityDegenerate {
                name: complex.name().to_string(),
                degree: i,
            })?
        } else {
            return Err(Error::DualityDegenerate {
                name: complex.name().to_string(),
                degree: i,
            });
        };

        // pairing_i[r][s] = (φ_r ∪ ψ_s)([N]) with φ_r of degree n-i.
        let r_phi = homology_data.retraction((n - i) as isize);
        let r_psi = homology_data.retraction(i as isize);
        let mut pairing_i = RatMatrix::zeros(b_dual, b_i);
        for (t, facet) in complex.facets().iter().enumerate() {
            let front = &facet[..=n - i];
            let back = &facet[n - i..];
            let fi = complex.simplex_index(front).expect("face of a facet");
            let bi = complex.simplex_index(back).expect("face of a facet");
            for r in 0..b_dual {
                let phi_val = &r_phi[(r, fi)];
                if phi_val.is_zero() {
                    continue;
                }
                for s in 0..b_i {
                    let psi_val = &r_psi[(s, bi)];
                    if psi_val.is_zero() {
                        continue;
                    }
                    let contribution = &(phi_val * psi_val) * &fundamental.coefficients[t];
                    pairing_i[(r, s)] += &contribution;
                }
            }
        }

        d.push(d_i);
        d_inv.push(d_i_inv);
        pairing.push(pairing_i);
    }
    Ok(DualityData { d, d_inv, pairing })
}

/// The wrong-way map `D_M ∘ g^* ∘ D_N⁻¹` of `g: M → N`, with shift
/// `dim M - dim N`.
pub fn umkehr(g: &SimplicialMap, m: &Manifold, n: &Manifold) -> Result<GradedMap> {
    if g.domain().name() != m.name() || g.codomain().name() != n.name() {
        return Err(Error::InvalidInput(
            "umkehr: manifolds do not match the map's complexes".into(),
        ));
    }
    let dim_m = m.dim() as isize;
    let dim_n = n.dim() as isize;
    let induced = induced_on_homology(g, m.homology(), n.homology())?;
    let mut out = GradedMap::zero(
        n.homology().betti_vector(),
        m.homology().betti_vector(),
        dim_m - dim_n,
    );
    for i in 0..=n.dim() {
        let target_degree = i as isize + dim_m - dim_n;
        if target_degree < 0 || target_degree > dim_m {
            continue;
        }
        let dual_degree = dim_n as usize - i; // n - i, the cohomology degree
        let pullback = induced.block(dual_degree).transpose();
        let block = m
            .duality()
            .d(target_degree as usize)
            .mul(&pullback)
            .mul(n.duality().d_inv(i));
        out.set_block(i, block)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    fn manifold(name: &str) -> Manifold {
        let corpus = Corpus::builtin();
        Manifold::new(corpus.get(name).unwrap().complex.clone()).unwrap()
    }

    #[test]
    fn triangle_fundamental_class() {
        let m = manifold("s1");
        // Facets in lex order: (0,1), (0,2), (1,2).
        let expected: Vec<Rational> = [1i64, -1, 1].iter().map(|&x| Rational::from(x)).collect();
        assert_eq!(m.fundamental_class().coefficients(), expected);
    }

    #[test]
    fn octahedron_fundamental_class_is_a_cycle_of_signs() {
        let m = manifold("s2-oct");
        let coeffs = m.fundamental_class().coefficients();
        assert_eq!(coeffs.len(), 8);
        assert!(coeffs.iter().all(|c| c.abs().is_one()));
        let boundary = m.complex().boundary_matrix(2).unwrap();
        assert!(boundary.apply(coeffs).iter().all(Rational::is_zero));
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let corpus = Corpus::builtin();
        let rp2 = corpus.get("rp2-6").unwrap().complex.clone();
        match Manifold::new(rp2) {
            Err(Error::NonOrientable(name)) => assert_eq!(name, "rp2-6"),
            other => panic!("expected NonOrientable, got {other:?}"),
        }
    }

    #[test]
    fn open_disk_is_not_closed() {
        let disk = Arc::new(SimplicialComplex::from_facets("disk", &[vec![0, 1, 2]]).unwrap());
        match Manifold::new(disk) {
            Err(Error::NotClosed { count: 1, .. }) => {}
            other => panic!("expected NotClosed with count 1, got {other:?}"),
        }
    }

    #[test]
    fn fundamental_class_unique_up_to_global_sign() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let complex = corpus.get(name).unwrap().complex.clone();
            let h = crate::homology::homology(&complex);
            let base = FundamentalClass::propagate(&complex, &h, 0, true).unwrap();
            for seed in 0..complex.facets().len() {
                let other = FundamentalClass::propagate(&complex, &h, seed, true).unwrap();
                let same = other.coefficients() == base.coefficients();
                let flipped: Vec<Rational> = base.coefficients().iter().map(|c| -c).collect();
                assert!(
                    same || other.coefficients() == flipped,
                    "{name} seed {seed}"
                );
            }
            let negated = FundamentalClass::propagate(&complex, &h, 0, false).unwrap();
            let flipped: Vec<Rational> = base.coefficients().iter().map(|c| -c).collect();
            assert_eq!(negated.coefficients(), flipped);
        }
    }

    #[test]
    fn duality_matrices_invertible_and_shaped() {
        let s2 = manifold("s2-oct");
        assert_eq!((s2.duality().d(0).rows(), s2.duality().d(0).cols()), (1, 1));
        assert_eq!((s2.duality().d(1).rows(), s2.duality().d(1).cols()), (0, 0));
        assert_eq!((s2.duality().d(2).rows(), s2.duality().d(2).cols()), (1, 1));

        let t2 = manifold("t2-9");
        let d1 = t2.duality().d(1);
        assert_eq!((d1.rows(), d1.cols()), (2, 2));
        assert_eq!(d1.mul(t2.duality().d_inv(1)), RatMatrix::identity(2));
    }

    /// The frozen cap convention must satisfy ⟨φ∪ψ,[N]⟩ = ⟨φ,[N]∩ψ⟩,
    /// i.e. pairing_i = D_{n-i} exactly; calibrated on the circle and the
    /// torus, checked on the sphere too.
    #[test]
    fn cup_cap_adjunction_holds_with_sign_one() {
        for name in ["s1", "t2-9", "s2-oct"] {
            let m = manifold(name);
            let n = m.dim();
            for i in 0..=n {
                assert_eq!(
                    m.duality().pairing(i),
                    m.duality().d(n - i),
                    "{name} degree {i}"
                );
            }
        }
    }

    #[test]
    fn unit_law_pairs_top_class_against_one() {
        for name in ["s1", "s2-oct", "t2-9"] {
            let m = manifold(name);
            // pairing_0: H^n ⊗ H^0 → Q against the unit cochain slot is
            // evaluation on [N]: the column must be the coordinates of [N].
            let p0 = m.duality().pairing(0);
            assert_eq!(p0.cols(), 1, "{name}: connected");
            assert_eq!(p0.column(0), m.fundamental_class().class_coords().to_vec());
            assert!(p0[(0, 0)].abs().is_one(), "{name}: top coordinate ±1");
        }
    }

    #[test]
    fn cap_with_unit_class_recovers_fundamental_class() {
        // The cohomology-degree-0 duality map sends the unit class to [N].
        for name in ["s1", "s2-oct", "t2-9"] {
            let m = manifold(name);
            let n = m.dim();
            let image = m.duality().d(n).apply(&[Rational::one()]);
            assert_eq!(
                image,
                m.fundamental_class().class_coords().to_vec(),
                "{name}"
            );
        }
    }

    #[test]
    fn torus_middle_pairing_is_antisymmetric_unimodular() {
        let t2 = manifold("t2-9");
        let p = t2.duality().pairing(1);
        assert_eq!((p.rows(), p.cols()), (2, 2));
        assert_eq!(p[(0, 0)], Rational::zero());
        assert_eq!(p[(1, 1)], Rational::zero());
        assert_eq!(p[(0, 1)], -p[(1, 0)].clone());
        let det = &(&p[(0, 0)] * &p[(1, 1)]) - &(&p[(0, 1)] * &p[(1, 0)]);
        assert!(det.abs().is_one(), "det {det}");
    }

    #[test]
    fn graded_commutativity_of_pairing() {
        for name in ["s1", "s2-oct", "t2-9"] {
            let m = manifold(name);
            let n = m.dim();
            for i in 0..=n {
                let lhs = m.duality().pairing(i).clone();
                let rhs = m.duality().pairing(n - i).transpose();
                let sign = if (i * (n - i)).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                assert_eq!(lhs, rhs.scale(&Rational::from(sign)), "{name} degree {i}");
            }
        }
    }

    #[test]
    fn umkehr_of_identity_is_identity() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let m = manifold(name);
            let id = corpus.get(name).unwrap().map("identity").unwrap().clone();
            let u = umkehr(&id, &m, &m).unwrap();
            assert_eq!(u, GradedMap::identity(&m.homology().betti_vector()));
        }
    }

    #[test]
    fn umkehr_examples() {
        let corpus = Corpus::builtin();
        let s2 = manifold("s2-oct");
        let anti = corpus.get("s2-oct").unwrap().map("antipodal").unwrap();
        let u = umkehr(anti, &s2, &s2).unwrap();
        assert_eq!(u.block(0), RatMatrix::identity(1).neg(), "H_0 picks up -1");
        assert_eq!(u.block(2), RatMatrix::identity(1), "H_2 stays +1");

        let s1 = manifold("s1");
        let rot = corpus.get("s1").unwrap().map("rotation").unwrap();
        let u = umkehr(rot, &s1, &s1).unwrap();
        assert_eq!(u, GradedMap::identity(&s1.homology().betti_vector()));
    }

    #[test]
    fn umkehr_contravariant_on_automorphisms() {
        let corpus = Corpus::builtin();
        for (name, map_name) in [
            ("s1", "rotation"),
            ("s2-oct", "antipodal"),
            ("t2-9", "shift"),
        ] {
            let m = manifold(name);
            let f = corpus.get(name).unwrap().map(map_name).unwrap();
            let ff = f.compose(f).unwrap();
            let lhs = umkehr(&ff, &m, &m).unwrap();
            let rhs = umkehr(f, &m, &m)
                .unwrap()
                .compose(&umkehr(f, &m, &m).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{name}/{map_name}");
        }
    }
}
