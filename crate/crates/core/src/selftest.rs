//! The verification suite behind `selftest` and the acceptance test target.
//!
//! Ten criteria, each checked in exact arithmetic (tolerance zero). Every
//! oracle is independent of the code path it checks: Betti vectors and map
//! degrees are frozen from hand enumeration, Euler characteristics are
//! recounted from raw facet lists, the sphere formula is literal integer
//! arithmetic, and the trace laws are checked against brute-force
//! contraction on seeded random data.

use crate::corpus::Corpus;
use crate::duality::Manifold;
use crate::error::Error;
use crate::homology::{homology, induced_on_homology, GradedMap};
use crate::lefschetz::{
    calibrate_contraction_sign, canonical_theta, coincidence_lefschetz, g_alpha, lefschetz_fixed,
    theta_lefschetz, GAlphaVariant, HomologyClass, CONTRACTION_SIGN,
};
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::trace::{categorical_trace, chain_trace, tensor_graded, DualPairData};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} {} - {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn check(
    id: usize,
    name: &'static str,
    body: impl FnOnce() -> Result<String, String>,
) -> CheckResult {
    match body() {
        Ok(detail) => CheckResult {
            id,
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckResult {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

macro_rules! expect_eq {
    ($lhs:expr, $rhs:expr, $($ctx:tt)*) => {{
        let lhs = $lhs;
        let rhs = $rhs;
        if lhs != rhs {
            return Err(format!("{}: {:?} != {:?}", format_args!($($ctx)*), lhs, rhs));
        }
    }};
}

macro_rules! expect {
    ($cond:expr, $($ctx:tt)*) => {
        if !$cond {
            return Err(format!("{}", format_args!($($ctx)*)));
        }
    };
}

fn fail(e: impl std::fmt::Display) -> String {
    format!("error: {e}")
}

/// Betti vectors and Euler characteristics of the four corpus complexes.
pub fn criterion_1_homology() -> CheckResult {
    check(1, "homology of the corpus", || {
        let corpus = Corpus::builtin();
        let mut parts = Vec::new();
        for entry in corpus.entries() {
            let h = homology(&entry.complex);
            expect_eq!(
                h.betti_vector(),
                entry.expected.betti.clone(),
                "{} betti",
                entry.name
            );
            // Independent Euler oracle: alternating raw simplex counts.
            let f = entry.complex.f_vector();
            let alternating: i64 = f
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum();
            expect_eq!(
                alternating,
                entry.expected.euler,
                "{} euler count",
                entry.name
            );
            expect_eq!(
                h.euler_from_betti(),
                Rational::from(entry.expected.euler),
                "{} euler from betti",
                entry.name
            );
            parts.push(format!(
                "{} betti={:?} euler={}",
                entry.name,
                h.betti_vector(),
                alternating
            ));
        }
        Ok(parts.join("; "))
    })
}

/// Fundamental classes exist and bound nothing; duality is nondegenerate;
/// the projective plane is refused.
pub fn criterion_2_orientation() -> CheckResult {
    check(2, "orientation and duality", || {
        let corpus = Corpus::builtin();
        let mut parts = Vec::new();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
            let coeffs = m.fundamental_class().coefficients();
            expect!(
                coeffs.iter().all(|c| c.abs().is_one()),
                "{name}: fundamental class must have ±1 coefficients"
            );
            let boundary = entry.complex.boundary_matrix(m.dim()).map_err(fail)?;
            if boundary.rows() > 0 {
                expect!(
                    boundary.apply(coeffs).iter().all(Rational::is_zero),
                    "{name}: fundamental class must be a cycle"
                );
            }
            for i in 0..=m.dim() {
                let d = m.duality().d(i);
                let prod = d.mul(m.duality().d_inv(i));
                expect_eq!(prod, RatMatrix::identity(d.rows()), "{name}: D_{i} inverse");
            }
            parts.push(format!("{name} oriented, D_0..D_{} invertible", m.dim()));
        }
        match Manifold::new(corpus.get("rp2-6").expect("built-in").complex.clone()) {
            Err(Error::NonOrientable(_)) => parts.push("rp2-6 NonOrientable".into()),
            other => {
                return Err(format!("rp2-6 must be NonOrientable, got {other:?}"));
            }
        }
        Ok(parts.join("; "))
    })
}

/// The coincidence number vanishes on coincidence-free pairs and hits the
/// frozen values on the sphere.
pub fn criterion_3_coincidence_values() -> CheckResult {
    check(3, "coincidence number values", || {
        let corpus = Corpus::builtin();
        let mut parts = Vec::new();
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
            for (fname, gname) in &entry.coincidence_free {
                let f = entry.map(fname).expect("named");
                let g = entry.map(gname).expect("named");
                let l = coincidence_lefschetz(f, g, &m, &m).map_err(fail)?;
                expect_eq!(l.clone(), Rational::zero(), "{name}: L({fname},{gname})");
                parts.push(format!("{name} L({fname},{gname})=0"));
            }
        }
        let entry = corpus.get("s2-oct").expect("built-in");
        let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
        let id = entry.map("identity").expect("named");
        let l = coincidence_lefschetz(id, id, &m, &m).map_err(fail)?;
        expect_eq!(l, Rational::from(2), "s2-oct: L(id,id)");
        let c = entry.map("constant").expect("named");
        let l = coincidence_lefschetz(c, id, &m, &m).map_err(fail)?;
        expect_eq!(l, Rational::one(), "s2-oct: L(constant,id)");
        parts.push("s2-oct L(id,id)=2 L(constant,id)=1".into());
        Ok(parts.join("; "))
    })
}

/// `L(f, id) = L(f)` for every corpus endomap.
pub fn criterion_4_fixed_point_specialization() -> CheckResult {
    check(4, "fixed-point specialization", || {
        let corpus = Corpus::builtin();
        let mut count = 0;
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
            let id = entry.map("identity").expect("named");
            for (map_name, f) in entry.endomaps() {
                let coincidence = coincidence_lefschetz(f, id, &m, &m).map_err(fail)?;
                let fixed = lefschetz_fixed(f, m.homology()).map_err(fail)?;
                expect_eq!(coincidence, fixed, "{name}/{map_name}");
                count += 1;
            }
        }
        expect!(count >= 6, "need at least 6 endomaps, found {count}");
        Ok(format!("{count} endomaps agree"))
    })
}

/// `L(f, g) = deg(g) + (-1)^n deg(f)` on the spheres, with frozen degrees.
pub fn criterion_5_sphere_formula() -> CheckResult {
    check(5, "sphere formula", || {
        let corpus = Corpus::builtin();
        let mut count = 0;
        for name in ["s1", "s2-oct"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
            let sign = if m.dim() % 2 == 0 { 1 } else { -1 };
            for (fname, f) in entry.endomaps() {
                for (gname, g) in entry.endomaps() {
                    let deg_f = entry.expected.map_degrees[fname];
                    let deg_g = entry.expected.map_degrees[gname];
                    let expected = Rational::from(deg_g + sign * deg_f);
                    let l = coincidence_lefschetz(f, g, &m, &m).map_err(fail)?;
                    expect_eq!(l, expected, "{name}: L({fname},{gname})");
                    count += 1;
                }
            }
        }
        Ok(format!(
            "{count} ordered sphere pairs match deg(g) + (-1)^n deg(f)"
        ))
    })
}

/// Tiny deterministic generator for the randomized trace checks.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn int(&mut self, spread: i64) -> i64 {
        (self.next() % (2 * spread as u64 + 1)) as i64 - spread
    }

    fn dims(&mut self) -> Vec<usize> {
        let len = 1 + (self.next() % 4) as usize; // degrees ≤ 3
        (0..len).map(|_| (self.next() % 5) as usize).collect() // dims ≤ 4
    }

    fn graded(&mut self, dims: &[usize], spread: i64) -> GradedMap {
        let mut g = GradedMap::zero(dims.to_vec(), dims.to_vec(), 0);
        for (i, &d) in dims.iter().enumerate() {
            let entries: Vec<i64> = (0..d * d).map(|_| self.int(spread)).collect();
            let m = RatMatrix::from_fn(d, d, |r, c| Rational::from(entries[r * d + c]));
            g.set_block(i, m).expect("square block");
        }
        g
    }

    fn invertible_blocks(&mut self, dims: &[usize]) -> Vec<RatMatrix> {
        dims.iter()
            .map(|&d| loop {
                let entries: Vec<i64> = (0..d * d).map(|_| self.int(3)).collect();
                let m = RatMatrix::from_fn(d, d, |r, c| Rational::from(entries[r * d + c]));
                if m.rank() == d {
                    break m;
                }
            })
            .collect()
    }
}

/// Monoidal trace laws on at least 100 randomized graded endomorphisms.
pub fn criterion_6_trace_laws() -> CheckResult {
    check(6, "monoidal trace laws", || {
        let mut rng = XorShift(0x5DEECE66D);
        let rounds = 100;
        for round in 0..rounds {
            let dims = rng.dims();
            let pair = DualPairData::new(&dims);
            expect!(
                pair.triangle_identities_hold(),
                "round {round}: triangle identities on dims {dims:?}"
            );
            let phi = rng.graded(&dims, 3);
            let psi = rng.graded(&dims, 3);

            let trace_phi = categorical_trace(&phi, &pair).map_err(fail)?;
            expect_eq!(
                trace_phi.clone(),
                phi.alternating_trace().map_err(fail)?,
                "round {round}: categorical vs alternating"
            );

            let ab = categorical_trace(&psi.compose(&phi).map_err(fail)?, &pair).map_err(fail)?;
            let ba = categorical_trace(&phi.compose(&psi).map_err(fail)?, &pair).map_err(fail)?;
            expect_eq!(ab, ba, "round {round}: cyclicity");

            let dims_b = rng.dims();
            let rho = rng.graded(&dims_b, 2);
            let tensor = tensor_graded(&phi, &rho).map_err(fail)?;
            let tensor_pair = DualPairData::new(tensor.source_dims());
            let lhs = categorical_trace(&tensor, &tensor_pair).map_err(fail)?;
            let rhs =
                &trace_phi * &categorical_trace(&rho, &DualPairData::new(&dims_b)).map_err(fail)?;
            expect_eq!(lhs, rhs, "round {round}: multiplicativity");

            let change = rng.invertible_blocks(&dims);
            let transported = pair.transported(&change).map_err(fail)?;
            let mut p = GradedMap::zero(dims.clone(), dims.clone(), 0);
            let mut p_inv = GradedMap::zero(dims.clone(), dims.clone(), 0);
            for (i, b) in change.iter().enumerate() {
                p.set_block(i, b.clone()).map_err(fail)?;
                p_inv
                    .set_block(i, b.invert().map_err(fail)?)
                    .map_err(fail)?;
            }
            let conjugated = p_inv
                .compose(&phi.compose(&p).map_err(fail)?)
                .map_err(fail)?;
            expect_eq!(
                categorical_trace(&conjugated, &transported).map_err(fail)?,
                trace_phi,
                "round {round}: basis-change invariance"
            );
        }
        Ok(format!("{rounds} randomized endomorphisms, all laws exact"))
    })
}

/// Hopf trace: chain-level alternating trace equals the categorical trace
/// of the induced homology map.
pub fn criterion_7_hopf_bridge() -> CheckResult {
    check(7, "Hopf trace bridge", || {
        let corpus = Corpus::builtin();
        let mut count = 0;
        for entry in corpus.entries() {
            let h = homology(&entry.complex);
            let pair = DualPairData::new(&h.betti_vector());
            for (map_name, map) in entry.endomaps() {
                let k = map.domain();
                let boundaries: Vec<RatMatrix> = (0..=k.dim())
                    .map(|i| k.boundary_matrix(i).expect("in range"))
                    .collect();
                let endo: Vec<RatMatrix> = (0..=k.dim())
                    .map(|i| map.chain_map(i).expect("in range"))
                    .collect();
                let chain_side = chain_trace(&boundaries, &endo).map_err(fail)?;
                let induced = induced_on_homology(map, &h, &h).map_err(fail)?;
                let homology_side = categorical_trace(&induced, &pair).map_err(fail)?;
                expect_eq!(chain_side, homology_side, "{}/{map_name}", entry.name);
                count += 1;
            }
        }
        Ok(format!(
            "{count} chain endomaps agree with their homology trace"
        ))
    })
}

/// The θ-relative number with the canonical θ reproduces the duality
/// composite on every corpus pair, the torus included (it was not used
/// when the contraction sign was calibrated).
pub fn criterion_8_theta_bridge() -> CheckResult {
    check(8, "θ bridge after sign calibration", || {
        let rule = calibrate_contraction_sign().map_err(fail)?;
        expect_eq!(
            rule,
            CONTRACTION_SIGN,
            "calibration must isolate the frozen rule"
        );
        let corpus = Corpus::builtin();
        let mut count = 0;
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
            let theta = canonical_theta(&m, &m, m.dim()).map_err(fail)?;
            for (fname, f) in entry.endomaps() {
                for (gname, g) in entry.endomaps() {
                    let via_theta = theta_lefschetz(f, g, &theta, &m, &m).map_err(fail)?;
                    let direct = coincidence_lefschetz(f, g, &m, &m).map_err(fail)?;
                    expect_eq!(via_theta, direct, "{name}: ({fname},{gname})");
                    count += 1;
                }
            }
        }
        Ok(format!(
            "sign rule (-1)^q re-derived; {count} pairs bridge exactly (torus held out of calibration)"
        ))
    })
}

/// The transfer `g^[M]` turns coincidence numbers into fixed-point ones.
pub fn criterion_9_transfer_identity() -> CheckResult {
    check(9, "transfer trace identity", || {
        let corpus = Corpus::builtin();
        let mut count = 0;
        let mut free_checked = 0;
        for name in ["s1", "s2-oct", "t2-9"] {
            let entry = corpus.get(name).expect("built-in");
            let m = Manifold::new(entry.complex.clone()).map_err(fail)?;
            let alpha = HomologyClass::fundamental(&m);
            for (fname, f) in entry.endomaps() {
                for (gname, g) in entry.endomaps() {
                    let transfer =
                        g_alpha(g, &alpha, GAlphaVariant::Umkehr, &m, &m).map_err(fail)?;
                    let f_star =
                        induced_on_homology(f, m.homology(), m.homology()).map_err(fail)?;
                    let trace = transfer
                        .compose(&f_star)
                        .map_err(fail)?
                        .alternating_trace()
                        .map_err(fail)?;
                    let expected = coincidence_lefschetz(f, g, &m, &m).map_err(fail)?;
                    expect_eq!(trace.clone(), expected, "{name}: ({fname},{gname})");
                    if entry
                        .coincidence_free
                        .iter()
                        .any(|&(cf, cg)| cf == fname && cg == gname)
                    {
                        expect_eq!(
                            trace,
                            Rational::zero(),
                            "{name}: coincidence-free ({fname},{gname})"
                        );
                        free_checked += 1;
                    }
                    count += 1;
                }
            }
        }
        expect!(
            free_checked >= 3,
            "expected all 3 coincidence-free pairs, saw {free_checked}"
        );
        Ok(format!(
            "{count} pairs: L((g^[M])_* f_*) = L(f,g); {free_checked} coincidence-free pairs vanish"
        ))
    })
}

/// Transverse circles meet once, parallel circles never, and a map whose
/// image misses Q kills the whole composite.
pub fn criterion_10_intersections() -> CheckResult {
    use crate::intersection::{inclusion_umkehr, intersection_number, SubmanifoldInclusion};
    check(10, "intersection numbers on the torus", || {
        let corpus = Corpus::builtin();
        let entry = corpus.get("t2-9").expect("built-in");
        let t2 = Manifold::new(entry.complex.clone()).map_err(fail)?;
        let s1 =
            Manifold::new(corpus.get("s1").expect("built-in").complex.clone()).map_err(fail)?;
        let inc = |name: &str| -> Result<(SubmanifoldInclusion, Manifold), String> {
            let inc =
                SubmanifoldInclusion::new(entry.complex.clone(), name, &entry.subcomplexes[name])
                    .map_err(fail)?;
            let q = Manifold::new(inc.sub().clone()).map_err(fail)?;
            Ok((inc, q))
        };
        let (h0, q_h0) = inc("h0")?;

        let vertical = entry.map("embed-v0").expect("named");
        let transverse = intersection_number(vertical, &h0, &s1, &t2, &q_h0).map_err(fail)?;
        expect!(
            transverse.abs().is_one(),
            "vertical vs horizontal circle must meet once, got {transverse}"
        );

        let parallel = entry.map("embed-h1").expect("named");
        let disjoint = intersection_number(parallel, &h0, &s1, &t2, &q_h0).map_err(fail)?;
        expect_eq!(disjoint, Rational::zero(), "parallel circles");

        let f_star = induced_on_homology(parallel, s1.homology(), t2.homology()).map_err(fail)?;
        let transfer = inclusion_umkehr(&h0, &q_h0, &t2).map_err(fail)?;
        let composite = transfer.compose(&f_star).map_err(fail)?;
        for i in 0..=s1.dim() {
            expect!(
                composite.block(i).is_zero(),
                "disjoint image: i^! ∘ f_* must vanish in degree {i}"
            );
        }
        Ok(format!(
            "v0·h0 = {transverse}, h1·h0 = 0, disjoint composite vanishes degree-wise"
        ))
    })
}

/// Run the whole acceptance suite in order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        criterion_1_homology(),
        criterion_2_orientation(),
        criterion_3_coincidence_values(),
        criterion_4_fixed_point_specialization(),
        criterion_5_sphere_formula(),
        criterion_6_trace_laws(),
        criterion_7_hopf_bridge(),
        criterion_8_theta_bridge(),
        criterion_9_transfer_identity(),
        criterion_10_intersections(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_green() {
        for result in run_all() {
            assert!(result.passed, "{}", result.line());
        }
    }
}
