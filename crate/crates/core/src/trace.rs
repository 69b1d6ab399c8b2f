//! Symmetric monoidal trace calculus on graded vector spaces.
//!
//! A finite graded vector space is dualizable with the degree-wise dual (no
//! degree negation; suspension bookkeeping lives elsewhere). This module
//! stores the coevaluation `Q → V ⊗ V*` and evaluation `V* ⊗ V → Q` as
//! explicit coordinate tensors, applies the Koszul symmetry `τ(x ⊗ y) =
//! (-1)^{|x||y|} y ⊗ x`, and computes the trace `ε ∘ τ ∘ (φ ⊗ id) ∘ η` by
//! brute-force contraction. Under this convention the categorical trace of a
//! shift-0 endomorphism equals its alternating matrix trace, which is what
//! ties the chain-level and homology-level invariants together.

use crate::error::{Error, Result};
use crate::homology::GradedMap;
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// A graded vector space with its chosen basis and explicit dual pair data.
#[derive(Debug, Clone)]
pub struct DualPairData {
    dims: Vec<usize>,
    /// Degree of each flattened basis vector, degree-major order.
    degree_of: Vec<usize>,
    /// Coevaluation tensor in `V ⊗ V*`, flat index `α·D + β`.
    coevaluation: Vec<Rational>,
    /// Evaluation tensor on `V* ⊗ V`, flat index `β·D + γ`.
    evaluation: Vec<Rational>,
}

impl DualPairData {
    pub fn new(dims: &[usize]) -> Self {
        let total: usize = dims.iter().sum();
        let mut degree_of = Vec::with_capacity(total);
        for (degree, &d) in dims.iter().enumerate() {
            degree_of.extend(std::iter::repeat_n(degree, d));
        }
        let mut coevaluation = vec![Rational::zero(); total * total];
        let mut evaluation = vec![Rational::zero(); total * total];
        for alpha in 0..total {
            coevaluation[alpha * total + alpha] = Rational::one();
            evaluation[alpha * total + alpha] = Rational::one();
        }
        DualPairData {
            dims: dims.to_vec(),
            degree_of,
            coevaluation,
            evaluation,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.degree_of.len()
    }

    /// Transport the pair along an invertible graded change of basis,
    /// given per degree. Recomputes both tensors from the transformed
    /// bases; naturality of the pair makes the result coincide with the
    /// standard tensors, and tests assert exactly that.
    pub fn transported(&self, change: &[RatMatrix]) -> Result<DualPairData> {
        if change.len() != self.dims.len()
            || change
                .iter()
                .zip(&self.dims)
                .any(|(p, &d)| p.rows() != d || p.cols() != d)
        {
            return Err(Error::ShapeMismatch(
                "one invertible block per degree required".into(),
            ));
        }
        let p = block_diagonal(change);
        let p_inv = p
            .invert()
            .map_err(|_| Error::ShapeMismatch("change of basis must be invertible".into()))?;
        let total = self.total_dim();
        // η'[i·D+j] = Σ_{α,β} P⁻¹[i,α] · Pᵀ[j,β] · η[α·D+β]
        let mut coevaluation = vec![Rational::zero(); total * total];
        // ε'[i·D+j] = Σ_{β,γ} P⁻¹[i,β] · P[γ,j] · ε[β·D+γ]  (dual ⊗ primal)
        let mut evaluation = vec![Rational::zero(); total * total];
        for i in 0..total {
            for j in 0..total {
                let mut eta = Rational::zero();
                let mut eps = Rational::zero();
                for alpha in 0..total {
                    for beta in 0..total {
                        let e_old = &self.coevaluation[alpha * total + beta];
                        if !e_old.is_zero() {
                            eta += &(&(&p_inv[(i, alpha)] * &p[(beta, j)]) * e_old);
                        }
                        let v_old = &self.evaluation[alpha * total + beta];
                        if !v_old.is_zero() {
                            eps += &(&(&p_inv[(i, alpha)] * &p[(beta, j)]) * v_old);
                        }
                    }
                }
                coevaluation[i * total + j] = eta;
                evaluation[i * total + j] = eps;
            }
        }
        Ok(DualPairData {
            dims: self.dims.clone(),
            degree_of: self.degree_of.clone(),
            coevaluation,
            evaluation,
        })
    }

    /// Both triangle identities, verified by explicit contraction.
    pub fn triangle_identities_hold(&self) -> bool {
        let total = self.total_dim();
        // (id ⊗ ε)(η ⊗ id) = id on V.
        for gamma in 0..total {
            for out in 0..total {
                let mut sum = Rational::zero();
                for beta in 0..total {
                    let eta = &self.coevaluation[out * total + beta];
                    if eta.is_zero() {
                        continue;
                    }
                    sum += &(eta * &self.evaluation[beta * total + gamma]);
                }
                let expect = if out == gamma {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if sum != expect {
                    return false;
                }
            }
        }
        // (ε ⊗ id)(id ⊗ η) = id on V*.
        for gamma in 0..total {
            for out in 0..total {
                let mut sum = Rational::zero();
                for alpha in 0..total {
                    let eps = &self.evaluation[gamma * total + alpha];
                    if eps.is_zero() {
                        continue;
                    }
                    sum += &(eps * &self.coevaluation[alpha * total + out]);
                }
                let expect = if out == gamma {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if sum != expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Assemble a block-diagonal matrix from per-degree blocks.
fn block_diagonal(blocks: &[RatMatrix]) -> RatMatrix {
    let total_r: usize = blocks.iter().map(RatMatrix::rows).sum();
    let total_c: usize = blocks.iter().map(RatMatrix::cols).sum();
    let mut m = RatMatrix::zeros(total_r, total_c);
    let mut r0 = 0;
    let mut c0 = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

/// Flatten a shift-0 graded endomorphism to one matrix on the total space.
fn flatten_endo(phi: &GradedMap, dims: &[usize]) -> RatMatrix {
    let blocks: Vec<RatMatrix> = (0..dims.len()).map(|i| phi.block(i)).collect();
    block_diagonal(&blocks)
}

/// The symmetric monoidal trace `ε ∘ τ ∘ (φ ⊗ id) ∘ η`, computed in
/// coordinates against the given dual pair.
pub fn categorical_trace(phi: &GradedMap, pair: &DualPairData) -> Result<Rational> {
    if phi.shift() != 0 || phi.source_dims() != phi.target_dims() {
        return Err(Error::ShapeMismatch(
            "categorical trace needs a shift-0 endomorphism".into(),
        ));
    }
    if phi.source_dims() != pair.dims() {
        return Err(Error::ShapeMismatch(format!(
            "endomorphism dims {:?} do not match dual pair dims {:?}",
            phi.source_dims(),
            pair.dims()
        )));
    }
    let total = pair.total_dim();
    let matrix = flatten_endo(phi, pair.dims());

    // u = (φ ⊗ id) η  in V ⊗ V*.
    let mut u = vec![Rational::zero(); total * total];
    for gamma in 0..total {
        for beta in 0..total {
            let eta = &pair.coevaluation[gamma * total + beta];
            if eta.is_zero() {
                continue;
            }
            for alpha in 0..total {
                let m = &matrix[(alpha, gamma)];
                if !m.is_zero() {
                    u[alpha * total + beta] += &(m * eta);
                }
            }
        }
    }
    // w = τ u  in V* ⊗ V, with the Koszul sign.
    // result = ε(w).
    let mut result = Rational::zero();
    for alpha in 0..total {
        for beta in 0..total {
            let val = &u[alpha * total + beta];
            if val.is_zero() {
                continue;
            }
            let sign = if (pair.degree_of[alpha] * pair.degree_of[beta]).is_multiple_of(2) {
                Rational::one()
            } else {
                -Rational::one()
            };
            let eps = &pair.evaluation[beta * total + alpha];
            if !eps.is_zero() {
                result += &(&(val * &sign) * eps);
            }
        }
    }
    Ok(result)
}

/// Tensor product of two shift-0 graded maps, bidegrees ordered by
/// ascending left degree within each total degree. No Koszul sign appears
/// because both factors have degree 0.
pub fn tensor_graded(phi: &GradedMap, psi: &GradedMap) -> Result<GradedMap> {
    if phi.shift() != 0 || psi.shift() != 0 {
        return Err(Error::ShapeMismatch("tensor of shift-0 maps only".into()));
    }
    let src = tensor_dims(phi.source_dims(), psi.source_dims());
    let tgt = tensor_dims(phi.target_dims(), psi.target_dims());
    let mut out = GradedMap::zero(src.clone(), tgt.clone(), 0);
    for n in 0..src.len() {
        let mut blocks = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let left = phi.block(p);
            let right = psi.block(q);
            blocks.push(left.kronecker(&right));
        }
        let block = block_diagonal(&blocks);
        out.set_block(n, block)?;
    }
    Ok(out)
}

fn tensor_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a.len() + b.len() - 1;
    let mut dims = vec![0usize; len];
    for (p, &da) in a.iter().enumerate() {
        for (q, &db) in b.iter().enumerate() {
            dims[p + q] += da * db;
        }
    }
    dims
}

/// Alternating trace of a chain-level endomorphism, after checking it
/// commutes with the boundary.
///
/// `boundaries[i]` is `∂_i: C_i → C_{i-1}` and `endo[i]` the degree-i
/// matrix. By the Hopf trace theorem the result equals the categorical
/// trace of the induced homology map; tests assert that bridge.
pub fn chain_trace(boundaries: &[RatMatrix], endo: &[RatMatrix]) -> Result<Rational> {
    assert_eq!(boundaries.len(), endo.len(), "one boundary per degree");
    for (i, e) in endo.iter().enumerate() {
        if !e.is_square() || e.rows() != boundaries[i].cols() {
            return Err(Error::ShapeMismatch(format!(
                "chain endomorphism block {i} is {}x{}, chains have dim {}",
                e.rows(),
                e.cols(),
                boundaries[i].cols()
            )));
        }
    }
    for i in 1..endo.len() {
        let lhs = endo[i - 1].mul(&boundaries[i]);
        let rhs = boundaries[i].mul(&endo[i]);
        if lhs != rhs {
            return Err(Error::NotChainMap { degree: i });
        }
    }
    let mut total = Rational::zero();
    for (i, e) in endo.iter().enumerate() {
        let t = e.trace();
        total += &if i % 2 == 0 { t } else { -t };
    }
    Ok(total)
}
