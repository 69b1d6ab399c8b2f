//! Coincidence invariants: classical and coincidence Lefschetz numbers,
//! Thom-model pushforwards, θ-relative and (α, β)-relative numbers, and the
//! transfer `g^α`.
//!
//! The Thom space of the diagonal is modeled in homology only: its reduced
//! degree-d part is `H_{d-n}(N)`. The pushforward of a class under
//! "(f × g), then collapse" is computed through the Alexander-Whitney
//! diagonal and the intersection product, with a per-bidegree contraction
//! sign. The sign rule was calibrated once, on the circle and the sphere,
//! from the candidate set `(-1)^{pq}, (-1)^p, (-1)^q, +1`: the unique rule
//! making the θ-relative number agree with the duality-composite number on
//! both is `(-1)^q`, frozen below and re-verified (torus included) by the
//! acceptance suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::duality::{umkehr, Manifold};
use crate::error::{Error, Result};
use crate::homology::{induced_on_homology, GradedMap, HomologyData};
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// A homology class: coordinates in the chosen basis of one degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomologyClass {
    pub complex: String,
    pub degree: usize,
    pub coords: Vec<Rational>,
}

impl HomologyClass {
    pub fn new(complex: impl Into<String>, degree: usize, coords: Vec<Rational>) -> Self {
        HomologyClass {
            complex: complex.into(),
            degree,
            coords,
        }
    }

    pub fn zero(complex: impl Into<String>, degree: usize, betti: usize) -> Self {
        Self::new(complex, degree, vec![Rational::zero(); betti])
    }

    /// The fundamental class of an oriented manifold.
    pub fn fundamental(m: &Manifold) -> Self {
        Self::new(
            m.name(),
            m.dim(),
            m.fundamental_class().class_coords().to_vec(),
        )
    }

    /// The class of the basis point: coordinates (1) in degree 0.
    pub fn point(m: &Manifold) -> Result<Self> {
        if m.homology().betti(0) != 1 {
            return Err(Error::InvalidInput(format!(
                "`{}` is not connected; the point class is ambiguous",
                m.name()
            )));
        }
        Ok(Self::new(m.name(), 0, vec![Rational::one()]))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn validate(&self, homology: &HomologyData) -> Result<()> {
        if homology.complex_name() != self.complex {
            return Err(Error::InvalidInput(format!(
                "class lives on `{}`, data is for `{}`",
                self.complex,
                homology.complex_name()
            )));
        }
        let betti = homology.betti(self.degree as isize);
        if self.coords.len() != betti {
            return Err(Error::ShapeMismatch(format!(
                "class in degree {} needs {} coordinates, got {}",
                self.degree,
                betti,
                self.coords.len()
            )));
        }
        Ok(())
    }

    /// Sum of coordinates against degree-0 representatives: each chosen
    /// representative is a single vertex, so this is the augmentation.
    pub fn augmentation(&self) -> Result<Rational> {
        if self.degree != 0 {
            return Err(Error::DimensionMismatch(format!(
                "augmentation applies in degree 0, class has degree {}",
                self.degree
            )));
        }
        Ok(self.coords.iter().cloned().sum())
    }
}

/// Homology shadow of a stable map out of a Thom space.
///
/// Degree-d of the Thom model is `H_{d-codim}` of the collapsed manifold;
/// `blocks[d]` maps it to `H_{d+shift}` of the receiving manifold. The
/// `shift` field absorbs every sphere/spectrum factor as one integer.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaMap {
    codim: usize,
    shift: isize,
    blocks: BTreeMap<usize, RatMatrix>,
}

impl ThetaMap {
    pub fn new(codim: usize, shift: isize) -> Self {
        ThetaMap {
            codim,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    pub fn blocks(&self) -> &BTreeMap<usize, RatMatrix> {
        &self.blocks
    }

    pub fn insert_block(&mut self, thom_degree: usize, block: RatMatrix) {
        self.blocks.insert(thom_degree, block);
    }

    /// Check every stored block against the homology dimensions of the
    /// collapsed manifold (Thom side) and the receiving manifold.
    pub fn validate(&self, thom_side: &Manifold, receiver: &Manifold) -> Result<()> {
        for (&d, block) in &self.blocks {
            let cols = thom_side.homology().betti(d as isize - self.codim as isize);
            let rows = receiver.homology().betti(d as isize + self.shift);
            if (block.rows(), block.cols()) != (rows, cols) {
                return Err(Error::ShapeMismatch(format!(
                    "θ block at Thom degree {d} must be {rows}x{cols}, got {}x{}",
                    block.rows(),
                    block.cols()
                )));
            }
        }
        Ok(())
    }

    pub fn block(
        &self,
        thom_degree: usize,
        thom_side: &Manifold,
        receiver: &Manifold,
    ) -> RatMatrix {
        match self.blocks.get(&thom_degree) {
            Some(b) => b.clone(),
            None => RatMatrix::zeros(
                receiver.homology().betti(thom_degree as isize + self.shift),
                thom_side
                    .homology()
                    .betti(thom_degree as isize - self.codim as isize),
            ),
        }
    }
}

/// The Example-1 style θ: collapse to a point, then transfer into `M`.
///
/// Its only block sits at Thom degree `codim`, sending the point class of
/// the collapsed manifold to the fundamental class of `M`; the net shift is
/// `dim M - codim`.
pub fn canonical_theta(
    thom_side: &Manifold,
    receiver: &Manifold,
    codim: usize,
) -> Result<ThetaMap> {
    if thom_side.homology().betti(0) != 1 {
        return Err(Error::InvalidInput(format!(
            "canonical θ needs `{}` connected",
            thom_side.name()
        )));
    }
    let m = receiver.dim() as isize;
    let mut theta = ThetaMap::new(codim, m - codim as isize);
    let fc = receiver.fundamental_class().class_coords();
    let block = RatMatrix::from_fn(fc.len(), 1, |r, _| fc[r].clone());
    theta.insert_block(codim, block);
    Ok(theta)
}

/// Classical Lefschetz number `Σ (-1)^i tr H_i(f)` of an endomap.
pub fn lefschetz_fixed(f: &SimplicialMap, homology: &HomologyData) -> Result<Rational> {
    if f.domain().name() != f.codomain().name() {
        return Err(Error::InvalidInput(
            "fixed-point Lefschetz number needs an endomap".into(),
        ));
    }
    induced_on_homology(f, homology, homology)?.alternating_trace()
}

fn check_pair(f: &SimplicialMap, g: &SimplicialMap, m: &Manifold, n: &Manifold) -> Result<()> {
    for (map, label) in [(f, "f"), (g, "g")] {
        if map.domain().name() != m.name() || map.codomain().name() != n.name() {
            return Err(Error::InvalidInput(format!(
                "{label} must map `{}` to `{}`",
                m.name(),
                n.name()
            )));
        }
    }
    Ok(())
}

/// The coincidence Lefschetz number through the duality composite:
/// `Σ (-1)^i tr( (D_M ∘ g^* ∘ D_N⁻¹) ∘ H_i(f) )`.
pub fn coincidence_lefschetz(
    f: &SimplicialMap,
    g: &SimplicialMap,
    m: &Manifold,
    n: &Manifold,
) -> Result<Rational> {
    check_pair(f, g, m, n)?;
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch(format!(
            "coincidence number needs equal dimensions, got {} and {}",
            m.dim(),
            n.dim()
        )));
    }
    let f_star = induced_on_homology(f, m.homology(), n.homology())?;
    let g_umkehr = umkehr(g, m, n)?;
    g_umkehr.compose(&f_star)?.alternating_trace()
}

/// Candidate contraction sign rules for the Künneth bidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRule {
    /// `(-1)^{pq}`
    Pq,
    /// `(-1)^p`
    P,
    /// `(-1)^q`
    Q,
    /// `+1`
    One,
}

impl SignRule {
    pub const CANDIDATES: [SignRule; 4] = [SignRule::Pq, SignRule::P, SignRule::Q, SignRule::One];

    fn sign(self, p: usize, q: usize) -> i64 {
        let negative = match self {
            SignRule::Pq => (p * q) % 2 == 1,
            SignRule::P => p % 2 == 1,
            SignRule::Q => q % 2 == 1,
            SignRule::One => false,
        };
        if negative {
            -1
        } else {
            1
        }
    }
}

/// The frozen contraction sign rule; see the module docs for how it was
/// calibrated. `calibrate_contraction_sign` re-derives it at test time.
pub const CONTRACTION_SIGN: SignRule = SignRule::Q;

/// Intersection product on classes: `u · v = D(D⁻¹u ∪ D⁻¹v)`, landing in
/// degree `p + q - n`. Entry-level building block of the pushforward.
fn intersection_product(
    n_manifold: &Manifold,
    p: usize,
    q: usize,
    u: &[Rational],
    v: &[Rational],
) -> Vec<Rational> {
    let n = n_manifold.dim();
    let out_degree = (p + q) as isize - n as isize;
    if out_degree < 0 {
        return Vec::new();
    }
    let phi = n_manifold.duality().d_inv(p).apply(u); // class in H^{n-p}
    let psi = n_manifold.duality().d_inv(q).apply(v); // class in H^{n-q}
    let cup = n_manifold.cup_classes(n - p, n - q, &phi, &psi);
    n_manifold.duality().d(out_degree as usize).apply(&cup)
}

/// Matrix of the homology pushforward "(f × g), then collapse" in one
/// degree: `H_i(M) → H_{i-n}(N)` (Thom-model degree i).
fn pushforward_block(
    f: &SimplicialMap,
    g: &SimplicialMap,
    m: &Manifold,
    n_manifold: &Manifold,
    i: usize,
    rule: SignRule,
) -> Result<RatMatrix> {
    let n = n_manifold.dim();
    let rows = n_manifold.homology().betti(i as isize - n as isize);
    let cols = m.homology().betti(i as isize);
    let mut out = RatMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return Ok(out);
    }
    let reps = m.homology().cycle_reps(i as isize);
    let simplices = m.complex().simplices(i);

    for p in 0..=i {
        let q = i - p;
        let bp = n_manifold.homology().betti(p as isize);
        let bq = n_manifold.homology().betti(q as isize);
        if bp == 0 || bq == 0 {
            continue;
        }
        // Homology coordinates of chain images, one matrix per side.
        let rf = n_manifold
            .homology()
            .retraction(p as isize)
            .mul(&f.chain_map(p)?);
        let rg = n_manifold
            .homology()
            .retraction(q as isize)
            .mul(&g.chain_map(q)?);

        // Künneth components of the pushed diagonal, per input basis class.
        // kunneth[col] is a bp x bq coefficient matrix.
        let mut kunneth = vec![RatMatrix::zeros(bp, bq); cols];
        for (sigma_idx, sigma) in simplices.iter().enumerate() {
            let front = &sigma[..=p];
            let back = &sigma[p..];
            let fi = m.complex().simplex_index(front).expect("face");
            let bi = m.complex().simplex_index(back).expect("face");
            let left = rf.column(fi);
            let right = rg.column(bi);
            if left.iter().all(Rational::is_zero) || right.iter().all(Rational::is_zero) {
                continue;
            }
            for (col, k) in kunneth.iter_mut().enumerate() {
                let weight = &reps[(sigma_idx, col)];
                if weight.is_zero() {
                    continue;
                }
                for (r, lv) in left.iter().enumerate() {
                    if lv.is_zero() {
                        continue;
                    }
                    for (s, rv) in right.iter().enumerate() {
                        if rv.is_zero() {
                            continue;
                        }
                        k[(r, s)] += &(&(lv * rv) * weight);
                    }
                }
            }
        }

        // Contract each Künneth component with the diagonal via the
        // intersection product of basis classes.
        let sign = Rational::from(rule.sign(p, q));
        let mut basis_products = vec![vec![Vec::new(); bq]; bp];
        for (r, row) in basis_products.iter_mut().enumerate() {
            let mut e_r = vec![Rational::zero(); bp];
            e_r[r] = Rational::one();
            for (s, slot) in row.iter_mut().enumerate() {
                let mut e_s = vec![Rational::zero(); bq];
                e_s[s] = Rational::one();
                *slot = intersection_product(n_manifold, p, q, &e_r, &e_s);
            }
        }
        for (col, k) in kunneth.iter().enumerate() {
            for r in 0..bp {
                for s in 0..bq {
                    let coeff = &k[(r, s)];
                    if coeff.is_zero() {
                        continue;
                    }
                    for (row, mu) in basis_products[r][s].iter().enumerate() {
                        if !mu.is_zero() {
                            out[(row, col)] += &(&(coeff * mu) * &sign);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The full pushforward as a graded map `H_*(M) → H_{*-n}(N)` (shift `-n`),
/// block at degree i being the Thom-model degree-i component.
pub fn coincidence_pushforward_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    m: &Manifold,
    n: &Manifold,
) -> Result<GradedMap> {
    pushforward_map_with_rule(f, g, m, n, CONTRACTION_SIGN)
}

fn pushforward_map_with_rule(
    f: &SimplicialMap,
    g: &SimplicialMap,
    m: &Manifold,
    n: &Manifold,
    rule: SignRule,
) -> Result<GradedMap> {
    check_pair(f, g, m, n)?;
    let n_dim = n.dim() as isize;
    let mut out = GradedMap::zero(
        m.homology().betti_vector(),
        n.homology().betti_vector(),
        -n_dim,
    );
    for i in 0..=m.dim() {
        out.set_block(i, pushforward_block(f, g, m, n, i, rule)?)?;
    }
    Ok(out)
}

/// Push a single class through "(f × g), then collapse".
pub fn coincidence_pushforward(
    f: &SimplicialMap,
    g: &SimplicialMap,
    x: &HomologyClass,
    m: &Manifold,
    n: &Manifold,
) -> Result<HomologyClass> {
    check_pair(f, g, m, n)?;
    x.validate(m.homology())?;
    let n_dim = n.dim();
    if x.degree < n_dim {
        return Ok(HomologyClass::zero(n.name(), 0, n.homology().betti(0)));
    }
    let block = pushforward_block(f, g, m, n, x.degree, CONTRACTION_SIGN)?;
    Ok(HomologyClass::new(
        n.name(),
        x.degree - n_dim,
        block.apply(&x.coords),
    ))
}

/// `L_θ(f, g) = Σ (-1)^i tr( θ_i ∘ push_i )`, the trace taken only in
/// degrees where the net shift returns to `H_i(M)`; shifted or nonsquare
/// blocks contribute zero.
pub fn theta_lefschetz(
    f: &SimplicialMap,
    g: &SimplicialMap,
    theta: &ThetaMap,
    m: &Manifold,
    n: &Manifold,
) -> Result<Rational> {
    check_pair(f, g, m, n)?;
    if theta.codim() != n.dim() {
        return Err(Error::ShapeMismatch(format!(
            "θ models a codimension-{} collapse, diagonal of `{}` has codimension {}",
            theta.codim(),
            n.name(),
            n.dim()
        )));
    }
    theta.validate(n, m)?;
    let mut total = Rational::zero();
    if theta.shift() != 0 {
        return Ok(total); // never returns to H_i(M)
    }
    for i in 0..=m.dim() {
        let push = pushforward_block(f, g, m, n, i, CONTRACTION_SIGN)?;
        let theta_block = theta.block(i, n, m);
        if theta_block.rows() != m.homology().betti(i as isize) {
            continue;
        }
        let composite = theta_block.mul(&push);
        if !composite.is_square() || composite.rows() == 0 {
            continue;
        }
        let t = composite.trace();
        total += &if i % 2 == 0 { t } else { -t };
    }
    Ok(total)
}

/// `L_{α,β}(f, g) = ⟨β, push(α)⟩` when the degrees agree, else zero.
///
/// `β` is a functional on the Thom model: its `degree` is the Thom degree b
/// and its coordinates live in the dual basis of `H_{b-n}(N)`.
pub fn alpha_beta_lefschetz(
    f: &SimplicialMap,
    g: &SimplicialMap,
    alpha: &HomologyClass,
    beta: &HomologyClass,
    m: &Manifold,
    n: &Manifold,
) -> Result<Rational> {
    check_pair(f, g, m, n)?;
    alpha.validate(m.homology())?;
    if beta.complex != n.name() {
        return Err(Error::InvalidInput(format!(
            "β must be a Thom-model class of `{}`",
            n.name()
        )));
    }
    let expected = n.homology().betti(beta.degree as isize - n.dim() as isize);
    if beta.coords.len() != expected {
        return Err(Error::ShapeMismatch(format!(
            "β at Thom degree {} needs {} coordinates, got {}",
            beta.degree,
            expected,
            beta.coords.len()
        )));
    }
    if alpha.degree != beta.degree {
        return Ok(Rational::zero());
    }
    let pushed = coincidence_pushforward(f, g, alpha, m, n)?;
    Ok(beta
        .coords
        .iter()
        .zip(&pushed.coords)
        .map(|(b, p)| b * p)
        .sum())
}

/// Which algebraic reading of the transfer `g^α` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GAlphaVariant {
    /// Cap with α in place of the fundamental class: `D^α_M ∘ g^* ∘ D_N⁻¹`,
    /// shift `a - n`; recovers the plain Umkehr map at `α = [M]`.
    Umkehr,
    /// Rank-one reading: `x ↦ ⟨g^*(D_N⁻¹ x), α⟩ · α`, shift `2a - n`.
    RankOne,
}

/// The transfer `g^α: H_*(N) → H_*(M)` associated to a class α on `M`.
pub fn g_alpha(
    g: &SimplicialMap,
    alpha: &HomologyClass,
    variant: GAlphaVariant,
    m: &Manifold,
    n: &Manifold,
) -> Result<GradedMap> {
    if g.domain().name() != m.name() || g.codomain().name() != n.name() {
        return Err(Error::InvalidInput(format!(
            "g must map `{}` to `{}`",
            m.name(),
            n.name()
        )));
    }
    alpha.validate(m.homology())?;
    let a = alpha.degree as isize;
    let n_dim = n.dim() as isize;
    let g_star = induced_on_homology(g, m.homology(), n.homology())?;
    let alpha_chain = m
        .homology()
        .cycle_reps(alpha.degree as isize)
        .apply(&alpha.coords);

    match variant {
        GAlphaVariant::Umkehr => {
            let mut out = GradedMap::zero(
                n.homology().betti_vector(),
                m.homology().betti_vector(),
                a - n_dim,
            );
            for i in 0..=n.dim() {
                let out_degree = i as isize + a - n_dim;
                if out_degree < 0 || out_degree > m.dim() as isize {
                    continue;
                }
                let dual_degree = (n_dim as usize) - i; // cohomology degree n-i
                if dual_degree > m.dim() {
                    continue; // no cochains of that degree on M
                }
                // D^α: H^{n-i}(M) → H_{a-(n-i)}(M), cap α with dual cochains.
                let b_dual = m.homology().betti(dual_degree as isize);
                let b_out = m.homology().betti(out_degree);
                let mut d_alpha = RatMatrix::zeros(b_out, b_dual);
                for r in 0..b_dual {
                    let mut e = vec![Rational::zero(); b_dual];
                    e[r] = Rational::one();
                    let cochain = m.cocycle_of(dual_degree, &e);
                    let capped = cap_chain(
                        m.complex(),
                        alpha.degree,
                        &alpha_chain,
                        dual_degree,
                        &cochain,
                    );
                    for (row, v) in m
                        .homology()
                        .class_of(out_degree as usize, &capped)
                        .into_iter()
                        .enumerate()
                    {
                        d_alpha[(row, r)] = v;
                    }
                }
                let pullback = g_star.block(dual_degree).transpose();
                let block = d_alpha.mul(&pullback).mul(n.duality().d_inv(i));
                out.set_block(i, block)?;
            }
            Ok(out)
        }
        GAlphaVariant::RankOne => {
            let mut out = GradedMap::zero(
                n.homology().betti_vector(),
                m.homology().betti_vector(),
                2 * a - n_dim,
            );
            let source_degree = n_dim - a; // n - a
            if source_degree < 0 || source_degree > n.dim() as isize {
                return Ok(out);
            }
            let i = source_degree as usize;
            let dual_degree = alpha.degree; // n - i = a
            let b_i = n.homology().betti(source_degree);
            let b_a = m.homology().betti(a);
            if b_i == 0 || b_a == 0 {
                return Ok(out);
            }
            // w_s = ⟨g^*(D_N⁻¹ e_s), α⟩, evaluated through the dual basis.
            let pullback = g_star.block(dual_degree).transpose();
            let mut block = RatMatrix::zeros(b_a, b_i);
            for s in 0..b_i {
                let mut e = vec![Rational::zero(); b_i];
                e[s] = Rational::one();
                let functional = pullback.apply(&n.duality().d_inv(i).apply(&e));
                let w: Rational = functional
                    .iter()
                    .zip(&alpha.coords)
                    .map(|(a_, b_)| a_ * b_)
                    .sum();
                for row in 0..b_a {
                    block[(row, s)] = &w * &alpha.coords[row];
                }
            }
            out.set_block(i, block)?;
            Ok(out)
        }
    }
}

/// Cap an arbitrary degree-a chain with a degree-q cochain: the cochain
/// eats the back face, the front survives in `C_{a-q}`.
fn cap_chain(
    complex: &SimplicialComplex,
    a: usize,
    chain: &[Rational],
    q: usize,
    psi: &[Rational],
) -> Vec<Rational> {
    assert!(q <= a);
    let mut out = vec![Rational::zero(); complex.simplex_count(a - q)];
    for (idx, simplex) in complex.simplices(a).iter().enumerate() {
        if chain[idx].is_zero() {
            continue;
        }
        let back = &simplex[a - q..];
        let bi = complex.simplex_index(back).expect("face");
        if psi[bi].is_zero() {
            continue;
        }
        let front = &simplex[..=a - q];
        let fi = complex.simplex_index(front).expect("face");
        out[fi] += &(&chain[idx] * &psi[bi]);
    }
    out
}

/// Re-derive the contraction sign rule the way it was originally fixed:
/// the unique candidate making `L_θ(canonical) = L(f, g)` for every map
/// pair on the circle and the octahedral sphere.
pub fn calibrate_contraction_sign() -> Result<SignRule> {
    use crate::corpus::Corpus;
    let corpus = Corpus::builtin();
    let mut winners = Vec::new();
    'rules: for rule in SignRule::CANDIDATES {
        for name in ["s1", "s2-oct"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone())?;
            let theta = canonical_theta(&m, &m, m.dim())?;
            let endos = entry.endomaps();
            for (_, f) in &endos {
                for (_, g) in &endos {
                    let expected = coincidence_lefschetz(f, g, &m, &m)?;
                    let mut total = Rational::zero();
                    for i in 0..=m.dim() {
                        let push = pushforward_block(f, g, &m, &m, i, rule)?;
                        let t_block = theta.block(i, &m, &m);
                        let composite = t_block.mul(&push);
                        if composite.is_square() && composite.rows() > 0 {
                            let t = composite.trace();
                            total += &if i % 2 == 0 { t } else { -t };
                        }
                    }
                    if total != expected {
                        continue 'rules;
                    }
                }
            }
        }
        winners.push(rule);
    }
    match winners.as_slice() {
        [unique] => Ok(*unique),
        _ => Err(Error::InvalidInput(format!(
            "calibration did not isolate one sign rule: {winners:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;
    use crate::homology::homology;

    fn setup(name: &str) -> (Manifold, crate::corpus::CorpusEntry) {
        let corpus = Corpus::builtin();
        let entry = corpus.get(name).unwrap().clone();
        let m = Manifold::new(entry.complex.clone()).unwrap();
        (m, entry)
    }

    #[test]
    fn lefschetz_fixed_examples() {
        let (_, s2) = setup("s2-oct");
        let h = homology(&s2.complex);
        assert_eq!(
            lefschetz_fixed(s2.map("identity").unwrap(), &h).unwrap(),
            Rational::from(2)
        );
        assert_eq!(
            lefschetz_fixed(s2.map("antipodal").unwrap(), &h).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            lefschetz_fixed(s2.map("constant").unwrap(), &h).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn coincidence_examples_on_the_sphere() {
        let (m, s2) = setup("s2-oct");
        let id = s2.map("identity").unwrap();
        let anti = s2.map("antipodal").unwrap();
        let constant = s2.map("constant").unwrap();
        assert_eq!(
            coincidence_lefschetz(id, id, &m, &m).unwrap(),
            Rational::from(2)
        );
        assert_eq!(
            coincidence_lefschetz(anti, id, &m, &m).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            coincidence_lefschetz(constant, id, &m, &m).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn coincidence_examples_on_circle_and_torus() {
        let (m, s1) = setup("s1");
        let id = s1.map("identity").unwrap();
        let rot = s1.map("rotation").unwrap();
        assert_eq!(
            coincidence_lefschetz(rot, id, &m, &m).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            coincidence_lefschetz(s1.map("constant").unwrap(), id, &m, &m).unwrap(),
            Rational::one()
        );

        let (t, t2) = setup("t2-9");
        let id = t2.map("identity").unwrap();
        let shift = t2.map("shift").unwrap();
        assert_eq!(
            coincidence_lefschetz(shift, id, &t, &t).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            coincidence_lefschetz(id, id, &t, &t).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn fixed_point_specialization() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).unwrap();
            let m = Manifold::new(entry.complex.clone()).unwrap();
            let id = entry.map("identity").unwrap();
            for (map_name, f) in entry.endomaps() {
                let lhs = coincidence_lefschetz(f, id, &m, &m).unwrap();
                let rhs = lefschetz_fixed(f, m.homology()).unwrap();
                assert_eq!(lhs, rhs, "{name}/{map_name}");
            }
        }
    }

    #[test]
    fn symmetry_up_to_dimension_sign() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).unwrap();
            let m = Manifold::new(entry.complex.clone()).unwrap();
            let sign = if m.dim().is_multiple_of(2) { 1 } else { -1 };
            let endos = entry.endomaps();
            for (fn_, f) in &endos {
                for (gn, g) in &endos {
                    let lhs = coincidence_lefschetz(f, g, &m, &m).unwrap();
                    let rhs = coincidence_lefschetz(g, f, &m, &m).unwrap();
                    assert_eq!(lhs, &rhs * &Rational::from(sign), "{name}: {fn_},{gn}");
                }
            }
        }
    }

    #[test]
    fn sphere_formula() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct"] {
            let entry = corpus.get(name).unwrap();
            let m = Manifold::new(entry.complex.clone()).unwrap();
            let n = m.dim();
            let sign = if n.is_multiple_of(2) { 1 } else { -1 };
            for (fn_, f) in entry.endomaps() {
                for (gn, g) in entry.endomaps() {
                    let deg_f = entry.expected.map_degrees[fn_];
                    let deg_g = entry.expected.map_degrees[gn];
                    let expected = Rational::from(deg_g + sign * deg_f);
                    assert_eq!(
                        coincidence_lefschetz(f, g, &m, &m).unwrap(),
                        expected,
                        "{name}: L({fn_},{gn})"
                    );
                }
            }
        }
    }

    #[test]
    fn pushforward_of_fundamental_class_counts_coincidences() {
        let (m, s2) = setup("s2-oct");
        let id = s2.map("identity").unwrap();
        let anti = s2.map("antipodal").unwrap();
        let fc = HomologyClass::fundamental(&m);

        let pushed = coincidence_pushforward(id, id, &fc, &m, &m).unwrap();
        assert_eq!(pushed.degree, 0);
        assert_eq!(pushed.augmentation().unwrap(), Rational::from(2));

        let pushed = coincidence_pushforward(anti, id, &fc, &m, &m).unwrap();
        assert_eq!(pushed.augmentation().unwrap(), Rational::zero());
    }

    #[test]
    fn pushforward_below_codimension_is_zero() {
        let (m, s2) = setup("s2-oct");
        let id = s2.map("identity").unwrap();
        let point = HomologyClass::point(&m).unwrap();
        let pushed = coincidence_pushforward(id, id, &point, &m, &m).unwrap();
        assert!(pushed.is_zero());
    }

    #[test]
    fn calibration_isolates_the_frozen_rule() {
        assert_eq!(calibrate_contraction_sign().unwrap(), CONTRACTION_SIGN);
    }

    #[test]
    fn theta_bridge_on_all_corpus_pairs() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).unwrap();
            let m = Manifold::new(entry.complex.clone()).unwrap();
            let theta = canonical_theta(&m, &m, m.dim()).unwrap();
            let endos = entry.endomaps();
            for (fn_, f) in &endos {
                for (gn, g) in &endos {
                    let via_theta = theta_lefschetz(f, g, &theta, &m, &m).unwrap();
                    let direct = coincidence_lefschetz(f, g, &m, &m).unwrap();
                    assert_eq!(via_theta, direct, "{name}: ({fn_},{gn})");
                }
            }
        }
    }

    #[test]
    fn zero_theta_gives_zero() {
        let (m, s2) = setup("s2-oct");
        let id = s2.map("identity").unwrap();
        let theta = ThetaMap::new(m.dim(), 0);
        assert_eq!(
            theta_lefschetz(id, id, &theta, &m, &m).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn alpha_beta_examples() {
        let (m, s2) = setup("s2-oct");
        let id = s2.map("identity").unwrap();
        let alpha = HomologyClass::fundamental(&m);
        // Thom class: unit functional on H_0(N) at Thom degree n.
        let beta = HomologyClass::new(m.name(), m.dim(), vec![Rational::one()]);
        assert_eq!(
            alpha_beta_lefschetz(id, id, &alpha, &beta, &m, &m).unwrap(),
            Rational::from(2)
        );

        let zero_alpha = HomologyClass::zero(m.name(), m.dim(), 1);
        assert_eq!(
            alpha_beta_lefschetz(id, id, &zero_alpha, &beta, &m, &m).unwrap(),
            Rational::zero()
        );

        // Degree mismatch convention.
        let beta0 = HomologyClass::new(m.name(), m.dim() + 2, vec![Rational::one()]);
        assert_eq!(
            alpha_beta_lefschetz(id, id, &alpha, &beta0, &m, &m).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn alpha_beta_is_bilinear() {
        let (m, t2) = setup("t2-9");
        let f = t2.map("shift").unwrap();
        let g = t2.map("identity").unwrap();
        let alpha = HomologyClass::fundamental(&m);
        let beta = HomologyClass::new(m.name(), m.dim(), vec![Rational::one()]);
        let three = Rational::from(3);
        let scaled_alpha = HomologyClass::new(
            m.name(),
            alpha.degree,
            alpha.coords.iter().map(|c| c * &three).collect(),
        );
        let base = alpha_beta_lefschetz(f, g, &alpha, &beta, &m, &m).unwrap();
        assert_eq!(
            alpha_beta_lefschetz(f, g, &scaled_alpha, &beta, &m, &m).unwrap(),
            &base * &three
        );
        let scaled_beta = HomologyClass::new(
            m.name(),
            beta.degree,
            beta.coords.iter().map(|c| c * &three).collect(),
        );
        assert_eq!(
            alpha_beta_lefschetz(f, g, &alpha, &scaled_beta, &m, &m).unwrap(),
            &base * &three
        );
    }

    #[test]
    fn g_alpha_umkehr_at_fundamental_class_is_umkehr() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).unwrap();
            let m = Manifold::new(entry.complex.clone()).unwrap();
            let alpha = HomologyClass::fundamental(&m);
            for (map_name, g) in entry.endomaps() {
                let via_alpha = g_alpha(g, &alpha, GAlphaVariant::Umkehr, &m, &m).unwrap();
                let direct = umkehr(g, &m, &m).unwrap();
                assert_eq!(via_alpha, direct, "{name}/{map_name}");
            }
        }
    }

    #[test]
    fn transfer_trace_recovers_coincidence_number() {
        let corpus = Corpus::builtin();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).unwrap();
            let m = Manifold::new(entry.complex.clone()).unwrap();
            let alpha = HomologyClass::fundamental(&m);
            let endos = entry.endomaps();
            for (fn_, f) in &endos {
                for (gn, g) in &endos {
                    let transfer = g_alpha(g, &alpha, GAlphaVariant::Umkehr, &m, &m).unwrap();
                    let f_star = induced_on_homology(f, m.homology(), m.homology()).unwrap();
                    let trace = transfer
                        .compose(&f_star)
                        .unwrap()
                        .alternating_trace()
                        .unwrap();
                    let expected = coincidence_lefschetz(f, g, &m, &m).unwrap();
                    assert_eq!(trace, expected, "{name}: ({fn_},{gn})");
                }
            }
        }
    }

    #[test]
    fn g_alpha_rank_one_shape_and_trace() {
        let (m, s2) = setup("s2-oct");
        let id = s2.map("identity").unwrap();
        // α = point class of S²: a = 0, block at i = n - a = 2.
        let alpha = HomologyClass::point(&m).unwrap();
        let r1 = g_alpha(id, &alpha, GAlphaVariant::RankOne, &m, &m).unwrap();
        assert_eq!(r1.shift(), -2);
        let block = r1.block(2);
        assert_eq!((block.rows(), block.cols()), (1, 1));
        // Shifted map: no degree-aligned trace contribution.
        assert!(r1.alternating_trace().is_err());
    }

    #[test]
    fn bridge_generalizes_to_a_larger_torus() {
        // 4x4 grid torus: not in the corpus, never touched by calibration.
        let torus = std::sync::Arc::new(crate::corpus::grid_torus(4).unwrap());
        let m = Manifold::new(torus.clone()).unwrap();
        let shift = crate::corpus::grid_torus_shift(&torus, 4).unwrap();
        let id = SimplicialMap::identity(torus);
        let theta = canonical_theta(&m, &m, m.dim()).unwrap();
        for (f, g) in [(&shift, &id), (&id, &id), (&id, &shift)] {
            let direct = coincidence_lefschetz(f, g, &m, &m).unwrap();
            assert_eq!(direct, Rational::zero(), "χ(T²) = 0");
            assert_eq!(theta_lefschetz(f, g, &theta, &m, &m).unwrap(), direct);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let corpus = Corpus::builtin();
        let s1 = corpus.get("s1").unwrap();
        let t2 = corpus.get("t2-9").unwrap();
        let m = Manifold::new(s1.complex.clone()).unwrap();
        let n = Manifold::new(t2.complex.clone()).unwrap();
        let f = t2.map("embed-h0").unwrap();
        assert!(matches!(
            coincidence_lefschetz(f, f, &m, &n),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
