//! Donaldson-Futaki invariants and norms of test configurations.
//!
//! For a central fiber with index coefficients `a_0, a_1` and weight
//! coefficients `b_0, b_1, c_0` along the inducing direction, the
//! Donaldson-Futaki invariant is `Fut = (a_1/a_0) b_0 - b_1` and the norm is
//! `|eta|^2 = c_0 - b_0^2/a_0`. A negative invariant certifies instability of
//! that configuration. Product configurations specialize to `(1/2) D_eta a_0`
//! on the Gorenstein cross-section; Rees deformations of a principal ideal
//! have the closed form
//! `Fut = -1/(n(n+1)) [a_1/alpha(xi) - n(n+1)/2 a_0]`,
//! which this module also verifies against the generic invariant computed on
//! the actual central-fiber ring.

use serde::Serialize;

use crate::cone::{ReebVector, WeightMatrix};
use crate::error::{Error, Result};
use crate::hilbert::{quotient_principal, rees_central_fiber, HilbertSeries, RingSpec};
use crate::laurent::{extract_coefficients, CharacterCoefficients};
use crate::scalar::{Mode, Scalar};

/// Sign threshold for FLOAT-mode verdicts near zero.
pub const SIGN_EPS: f64 = 1e-9;

/// Verdict on one test configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Destabilizing,
    Nonnegative,
}

/// Futaki value, norm, and verdict for one test configuration.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub futaki: Scalar,
    pub norm_sq: Scalar,
    pub coefficients: CharacterCoefficients,
    pub verdict: Verdict,
    /// FLOAT-mode flag: the invariant was within `SIGN_EPS` of zero, so the
    /// sign call is not meaningful.
    pub near_zero: bool,
}

/// A test configuration, in the three supported presentations.
#[derive(Clone, Debug)]
pub enum TestConfigSpec {
    /// Degeneration along a torus direction; the central fiber is the cone itself.
    Product { eta: ReebVector },
    /// Rees deformation of the principal ideal of a homogeneous function of
    /// this weight.
    Rees { alpha_f: Vec<i64> },
    /// A user-supplied central fiber over an extended torus with its
    /// distinguished direction.
    Explicit {
        central_fiber: RingSpec,
        eta: ReebVector,
    },
}

/// The weight functional of the holomorphic volume form and the cross-section
/// level `n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GorensteinData {
    /// Coordinates of `ell_Theta` in the dual integral basis.
    pub theta: Vec<i64>,
    /// Normalization level; the cross-section is `ell_Theta(xi) = level`.
    pub level: i64,
}

impl GorensteinData {
    pub fn new(theta: Vec<i64>, level: i64) -> Result<Self> {
        if level <= 0 {
            return Err(Error::validation(
                "gorenstein_level",
                format!("level must be positive, got {level}"),
            ));
        }
        if theta.iter().all(|&t| t == 0) {
            return Err(Error::validation(
                "theta_weight",
                "theta functional is zero",
            ));
        }
        Ok(GorensteinData { theta, level })
    }

    /// Adjunction weight of a complete intersection: sum of coordinate
    /// weights minus sum of relation weights.
    pub fn adjunction(weights: &WeightMatrix, betas: &[Vec<i64>], level: i64) -> Result<Self> {
        let mut theta = weights.column_sum();
        for beta in betas {
            for (t, b) in theta.iter_mut().zip(beta) {
                *t -= b;
            }
        }
        GorensteinData::new(theta, level)
    }

    pub fn theta_pairing(&self, xi: &ReebVector) -> Result<Scalar> {
        xi.pair(&self.theta)
    }

    /// Strict cross-section membership: `ell_Theta(xi) = level`, exact in
    /// EXACT mode and within `SIGN_EPS` relative in FLOAT mode.
    pub fn check_on_cross_section(&self, xi: &ReebVector) -> Result<()> {
        let value = self.theta_pairing(xi)?;
        let level = Scalar::from_integer(self.level, xi.mode());
        let ok = match xi.mode() {
            Mode::Exact => value == level,
            Mode::Float => {
                (value.to_f64() - self.level as f64).abs()
                    <= SIGN_EPS * self.level.unsigned_abs().max(1) as f64
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotOnCrossSection {
                value: value.to_string(),
                level: self.level.to_string(),
            })
        }
    }

    /// Tangency of a direction: `ell_Theta(eta) = 0`.
    pub fn check_tangent(&self, eta: &ReebVector) -> Result<()> {
        let value = self.theta_pairing(eta)?;
        let ok = match eta.mode() {
            Mode::Exact => value.is_zero(),
            Mode::Float => value.to_f64().abs() <= SIGN_EPS,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotTangent {
                value: value.to_string(),
            })
        }
    }
}

fn sign_verdict(futaki: &Scalar) -> (Verdict, bool) {
    match futaki {
        Scalar::Exact(_) => {
            if futaki.is_negative() {
                (Verdict::Destabilizing, false)
            } else {
                (Verdict::Nonnegative, false)
            }
        }
        Scalar::Float(x) => {
            if x.abs() < SIGN_EPS {
                (Verdict::Nonnegative, true)
            } else if *x < 0.0 {
                (Verdict::Destabilizing, false)
            } else {
                (Verdict::Nonnegative, false)
            }
        }
    }
}

/// Generic Donaldson-Futaki invariant of a central fiber with Reeb vector
/// `xi` and inducing direction `eta`:
/// `Fut = (a1/a0) b0 - b1`, `|eta|^2 = c0 - b0^2/a0`.
pub fn futaki(
    central_fiber: &HilbertSeries,
    xi: &ReebVector,
    eta: &ReebVector,
) -> Result<StabilityReport> {
    let coefficients = extract_coefficients(central_fiber, xi, Some(eta))?;
    let parts = coefficients.eta.as_ref().expect("direction supplied");
    let futaki = coefficients
        .a1
        .div(&coefficients.a0)?
        .mul(&parts.b0)?
        .sub(&parts.b1)?;
    let norm_sq = parts
        .c0
        .sub(&parts.b0.mul(&parts.b0)?.div(&coefficients.a0)?)?;
    let (verdict, near_zero) = sign_verdict(&futaki);
    Ok(StabilityReport {
        futaki,
        norm_sq,
        coefficients,
        verdict,
        near_zero,
    })
}

/// Futaki invariant of a product configuration on the Gorenstein
/// cross-section: `(1/2) D_eta a0(xi)` for `xi` on the slice and `eta`
/// tangent to it. The generic invariant is evaluated alongside and must
/// agree; a mismatch flags non-Gorenstein input.
pub fn futaki_product(
    series: &HilbertSeries,
    gorenstein: &GorensteinData,
    xi: &ReebVector,
    eta: &ReebVector,
) -> Result<Scalar> {
    gorenstein.check_on_cross_section(xi)?;
    gorenstein.check_tangent(eta)?;
    let report = futaki(series, xi, eta)?;
    let d_eta_a0 = report.coefficients.d_eta_a0().expect("direction supplied");
    let product_futaki = d_eta_a0.div_int(2);
    let agree = match product_futaki.mode() {
        Mode::Exact => product_futaki == report.futaki,
        Mode::Float => {
            (product_futaki.to_f64() - report.futaki.to_f64()).abs()
                <= SIGN_EPS * (1.0 + report.futaki.to_f64().abs())
        }
    };
    if !agree {
        return Err(Error::ConsistencyCheckFailed {
            context: "product-configuration Futaki vs generic invariant",
            expected: product_futaki.to_string(),
            actual: report.futaki.to_string(),
        });
    }
    Ok(product_futaki)
}

/// Rees-deformation report for a principal ideal.
#[derive(Clone, Debug)]
pub struct ReesReport {
    /// The charge `lambda = alpha_f(xi)`.
    pub charge: Scalar,
    /// Closed-form Donaldson-Futaki invariant
    /// `-1/(n(n+1)) [a1/lambda - n(n+1)/2 a0]`.
    pub futaki: Scalar,
    /// The invariant divided by `a0`; on the Gorenstein cross-section this is
    /// `-1/2 (1/lambda - 1)`.
    pub normalized: Scalar,
    /// Generic invariant recomputed on the Rees central fiber; equals
    /// `futaki` exactly in EXACT mode.
    pub generic_futaki: Scalar,
    pub coefficients: CharacterCoefficients,
    pub verdict: Verdict,
    pub near_zero: bool,
}

/// Donaldson-Futaki invariant of the Rees deformation along a homogeneous
/// function of weight `alpha_f`. The closed form is cross-checked against the
/// generic invariant of the actual central fiber `(R/f) tensor C[w]` with the
/// distinguished last coordinate as direction.
pub fn futaki_rees(series: &HilbertSeries, xi: &ReebVector, alpha_f: &[i64]) -> Result<ReesReport> {
    let charge = xi.pair(alpha_f)?;
    if !charge.is_positive() {
        return Err(Error::NonpositiveCharge {
            value: charge.to_string(),
        });
    }
    let coefficients = extract_coefficients(series, xi, None)?;
    let n = coefficients.n as i64;
    // -1/(n(n+1)) [ a1/lambda - n(n+1)/2 a0 ]
    let bracket = coefficients
        .a1
        .div(&charge)?
        .sub(&coefficients.a0.mul_int(n * (n + 1)).div_int(2))?;
    let futaki_value = bracket.div_int(-(n * (n + 1)));
    let normalized = futaki_value.div(&coefficients.a0)?;

    // Central-fiber cross-check.
    let mod_f = quotient_principal(series, alpha_f)?;
    let fiber = rees_central_fiber(&mod_f, alpha_f)?;
    let mode = xi.mode();
    let mut lifted = xi.components().to_vec();
    lifted.push(Scalar::zero(mode));
    let xi_lift = ReebVector::new(lifted)?;
    let eta = ReebVector::from_integers(&fiber.eta, mode);
    let generic = futaki(&fiber.series, &xi_lift, &eta)?;
    let agree = match mode {
        Mode::Exact => generic.futaki == futaki_value,
        Mode::Float => {
            (generic.futaki.to_f64() - futaki_value.to_f64()).abs()
                <= SIGN_EPS * (1.0 + futaki_value.to_f64().abs())
        }
    };
    if !agree {
        return Err(Error::ConsistencyCheckFailed {
            context: "Rees closed form vs generic invariant on the central fiber",
            expected: futaki_value.to_string(),
            actual: generic.futaki.to_string(),
        });
    }

    let (verdict, near_zero) = sign_verdict(&futaki_value);
    Ok(ReesReport {
        charge,
        futaki: futaki_value,
        normalized,
        generic_futaki: generic.futaki,
        coefficients,
        verdict,
        near_zero,
    })
}

/// One row of the Lichnerowicz scan.
#[derive(Clone, Debug)]
pub struct CoordinateCharge {
    pub coordinate: usize,
    /// Charge `lambda = alpha_j(xi)` of the coordinate function.
    pub lambda: Scalar,
    /// Normalized Rees invariant `-1/2 (1/lambda - 1)`.
    pub rees_futaki: Scalar,
    /// `lambda < 1` forces instability.
    pub unstable: bool,
}

/// Scan the ambient coordinates of a normalized cone for Lichnerowicz
/// obstructions: any coordinate of charge `lambda < 1` destabilizes.
/// Coordinates that vanish identically on the variety must be listed in
/// `excluded` by the caller.
pub fn lichnerowicz_scan(
    ring: &RingSpec,
    gorenstein: &GorensteinData,
    xi: &ReebVector,
    excluded: &[usize],
) -> Result<Vec<CoordinateCharge>> {
    gorenstein.check_on_cross_section(xi)?;
    let mode = xi.mode();
    let one = Scalar::one(mode);
    let mut rows = Vec::new();
    for j in 0..ring.weights.coordinates() {
        if excluded.contains(&j) {
            continue;
        }
        let lambda = xi.pair(&ring.weights.column(j))?;
        if !lambda.is_positive() {
            return Err(Error::NonpositiveCharge {
                value: lambda.to_string(),
            });
        }
        // -1/2 (1/lambda - 1)
        let rees_futaki = lambda.recip()?.sub(&one)?.div_int(-2);
        let unstable = match mode {
            Mode::Exact => lambda.cmp_same_mode(&one)? == std::cmp::Ordering::Less,
            Mode::Float => lambda.to_f64() < 1.0 - SIGN_EPS,
        };
        rows.push(CoordinateCharge {
            coordinate: j,
            lambda,
            rees_futaki,
            unstable,
        });
    }
    Ok(rows)
}

/// Gorenstein defect `a1 - n(n+1)/2 a0` at a cross-section point. Zero for
/// Gorenstein Calabi-Yau input; anything else flags an inconsistent theta
/// functional or a non-Calabi-Yau ring.
pub fn gorenstein_check(
    series: &HilbertSeries,
    gorenstein: &GorensteinData,
    xi: &ReebVector,
) -> Result<Scalar> {
    gorenstein.check_on_cross_section(xi)?;
    let coefficients = extract_coefficients(series, xi, None)?;
    let n = coefficients.n as i64;
    coefficients
        .a1
        .sub(&coefficients.a0.mul_int(n * (n + 1)).div_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{hilbert_ci, hilbert_free};

    fn exact(n: i64, d: i64) -> Scalar {
        Scalar::exact(n, d)
    }

    fn xi_exact(values: &[(i64, i64)]) -> ReebVector {
        ReebVector::new(values.iter().map(|&(n, d)| Scalar::exact(n, d)).collect()).unwrap()
    }

    fn plane() -> HilbertSeries {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        hilbert_free(&weights).unwrap()
    }

    fn conifold() -> (WeightMatrix, HilbertSeries, GorensteinData) {
        let weights =
            WeightMatrix::new(vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, -1]]).unwrap();
        let series = hilbert_ci(&weights, &[vec![1, 1, 0]]).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[vec![1, 1, 0]], 3).unwrap();
        (weights, series, gorenstein)
    }

    fn brieskorn(k: i64) -> (HilbertSeries, GorensteinData, ReebVector) {
        let weights = WeightMatrix::new(vec![vec![k, k, k, 2]]).unwrap();
        let series = hilbert_ci(&weights, &[vec![2 * k]]).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[vec![2 * k]], 3).unwrap();
        let xi = ReebVector::new(vec![Scalar::exact(3, k + 2)]).unwrap();
        (series, gorenstein, xi)
    }

    #[test]
    fn zero_direction_gives_zero_invariant() {
        let series = plane();
        let xi = xi_exact(&[(1, 1), (1, 1)]);
        let eta = xi_exact(&[(0, 1), (0, 1)]);
        let report = futaki(&series, &xi, &eta).unwrap();
        assert!(report.futaki.is_zero());
        assert!(report.norm_sq.is_zero());
        assert_eq!(report.verdict, Verdict::Nonnegative);
    }

    #[test]
    fn reeb_direction_never_destabilizes() {
        let series = plane();
        let xi = xi_exact(&[(2, 1), (5, 3)]);
        let report = futaki(&series, &xi, &xi).unwrap();
        assert!(report.futaki.is_zero());
        assert!(report.norm_sq.is_zero());
    }

    #[test]
    fn plane_product_direction_closed_form() {
        // xi = (1,1), eta = (1,0): Fut = 0, norm^2 = 1/12.
        let series = plane();
        let xi = xi_exact(&[(1, 1), (1, 1)]);
        let eta = xi_exact(&[(1, 1), (0, 1)]);
        let report = futaki(&series, &xi, &eta).unwrap();
        assert!(report.futaki.is_zero());
        assert_eq!(report.norm_sq, exact(1, 12));
    }

    #[test]
    fn futaki_is_antisymmetric_in_the_direction() {
        let series = plane();
        let xi = xi_exact(&[(1, 2), (3, 2)]);
        let eta = xi_exact(&[(1, 1), (-1, 1)]);
        let plus = futaki(&series, &xi, &eta).unwrap();
        let minus = futaki(&series, &xi, &eta.scale(&exact(-1, 1)).unwrap()).unwrap();
        assert_eq!(plus.futaki.neg(), minus.futaki);
        assert_eq!(plus.norm_sq, minus.norm_sq);
    }

    #[test]
    fn scale_covariance_of_futaki_and_norm() {
        // From the homogeneities a_i ~ lambda^{-(n+1-i)}, b_i ~ lambda^{-(n+2-i)},
        // c0 ~ lambda^{-(n+3)}: Fut(lambda xi) = lambda^{-(n+1)} Fut(xi) and
        // norm^2(lambda xi) = lambda^{-(n+3)} norm^2(xi).
        let series = plane();
        let xi = xi_exact(&[(1, 2), (3, 2)]);
        let eta = xi_exact(&[(1, 1), (-1, 1)]);
        let base = futaki(&series, &xi, &eta).unwrap();
        // Hand-computed from a0 = 1/(x1 x2), a1 = (x1+x2)/(2 x1 x2).
        assert_eq!(base.futaki, exact(-8, 9));
        for lambda in [exact(2, 1), exact(1, 3)] {
            let scaled = futaki(&series, &xi.scale(&lambda).unwrap(), &eta).unwrap();
            // n = 1: Fut scales by lambda^{-2}, norm^2 by lambda^{-4}.
            let lam2 = lambda.mul(&lambda).unwrap();
            let lam4 = lam2.mul(&lam2).unwrap();
            assert_eq!(scaled.futaki.mul(&lam2).unwrap(), base.futaki);
            assert_eq!(scaled.norm_sq.mul(&lam4).unwrap(), base.norm_sq);
        }
    }

    #[test]
    fn product_futaki_on_the_plane_cross_section() {
        // ell_Theta = xi1 + xi2, level 2. Symmetric point is critical;
        // (1/2, 3/2) has Fut = -8/9 along (1,-1).
        let series = plane();
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[], 2).unwrap();
        let eta = xi_exact(&[(1, 1), (-1, 1)]);

        let symmetric = xi_exact(&[(1, 1), (1, 1)]);
        let value = futaki_product(&series, &gorenstein, &symmetric, &eta).unwrap();
        assert!(value.is_zero());

        let skew = xi_exact(&[(1, 2), (3, 2)]);
        let value = futaki_product(&series, &gorenstein, &skew, &eta).unwrap();
        assert_eq!(value, exact(-8, 9));
    }

    #[test]
    fn product_futaki_rejects_off_section_points() {
        let series = plane();
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[], 2).unwrap();
        let eta = xi_exact(&[(1, 1), (-1, 1)]);
        let off = xi_exact(&[(1, 1), (2, 1)]);
        assert!(matches!(
            futaki_product(&series, &gorenstein, &off, &eta),
            Err(Error::NotOnCrossSection { .. })
        ));
        let on = xi_exact(&[(1, 1), (1, 1)]);
        let skew_direction = xi_exact(&[(1, 1), (1, 1)]);
        assert!(matches!(
            futaki_product(&series, &gorenstein, &on, &skew_direction),
            Err(Error::NotTangent { .. })
        ));
    }

    #[test]
    fn conifold_symmetric_point_is_critical() {
        let (_, series, gorenstein) = conifold();
        let xi = xi_exact(&[(3, 2), (3, 2), (3, 2)]);
        for eta in [
            xi_exact(&[(1, 1), (-1, 1), (0, 1)]),
            xi_exact(&[(0, 1), (0, 1), (1, 1)]),
        ] {
            let value = futaki_product(&series, &gorenstein, &xi, &eta).unwrap();
            assert!(value.is_zero(), "direction {eta:?}");
        }
    }

    #[test]
    fn rees_unit_charge_gives_zero() {
        // Flat C^2 at (1,1) with f = x: lambda = 1, Fut = 0.
        let series = plane();
        let xi = xi_exact(&[(1, 1), (1, 1)]);
        let report = futaki_rees(&series, &xi, &[1, 0]).unwrap();
        assert_eq!(report.charge, exact(1, 1));
        assert!(report.futaki.is_zero());
        assert_eq!(report.generic_futaki, report.futaki);
    }

    #[test]
    fn rees_closed_form_matches_generic_for_higher_charge() {
        // f = x^2 at (1,1): lambda = 2, Fut = -1/2 (1/2 - 1) a0 = 1/4.
        let series = plane();
        let xi = xi_exact(&[(1, 1), (1, 1)]);
        let report = futaki_rees(&series, &xi, &[2, 0]).unwrap();
        assert_eq!(report.futaki, exact(1, 4));
        assert_eq!(report.generic_futaki, exact(1, 4));
        assert_eq!(report.normalized, exact(1, 4));
    }

    #[test]
    fn brieskorn_k5_is_unstable_via_rees() {
        let (series, gorenstein, xi) = brieskorn(5);
        gorenstein.check_on_cross_section(&xi).unwrap();
        // f = w has weight 2, charge 6/7; normalized Fut = -1/2 (7/6 - 1) = -1/12.
        let report = futaki_rees(&series, &xi, &[2]).unwrap();
        assert_eq!(report.charge, exact(6, 7));
        assert_eq!(report.normalized, exact(-1, 12));
        assert_eq!(report.verdict, Verdict::Destabilizing);
        assert_eq!(report.generic_futaki, report.futaki);
    }

    #[test]
    fn conifold_coordinate_gives_no_obstruction() {
        let (_, series, gorenstein) = conifold();
        let xi = xi_exact(&[(3, 2), (3, 2), (3, 2)]);
        gorenstein.check_on_cross_section(&xi).unwrap();
        // f = x has charge 3/2: normalized Fut = -1/2 (2/3 - 1) = 1/6 >= 0.
        let report = futaki_rees(&series, &xi, &[1, 0, 0]).unwrap();
        assert_eq!(report.charge, exact(3, 2));
        assert_eq!(report.normalized, exact(1, 6));
        assert_eq!(report.verdict, Verdict::Nonnegative);
    }

    #[test]
    fn rees_cross_check_holds_in_float_mode() {
        let (_, series, _) = conifold();
        let xi = ReebVector::from_f64s(&[1.5, 1.5, 1.5]);
        let report = futaki_rees(&series, &xi, &[1, 0, 0]).unwrap();
        assert!((report.charge.to_f64() - 1.5).abs() < 1e-12);
        assert!((report.futaki.to_f64() - 4.0 / 81.0).abs() < 1e-12);
        assert!((report.normalized.to_f64() - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(report.verdict, Verdict::Nonnegative);
    }

    #[test]
    fn nonpositive_charge_is_rejected() {
        let series = plane();
        let xi = xi_exact(&[(1, 1), (1, 1)]);
        assert!(matches!(
            futaki_rees(&series, &xi, &[-1, 0]),
            Err(Error::NonpositiveCharge { .. })
        ));
    }

    #[test]
    fn lichnerowicz_flat_model_is_the_equality_case() {
        let weights = WeightMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let ring = RingSpec::new(weights.clone(), crate::hilbert::Relations::Free, 3).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[], 3).unwrap();
        let xi = xi_exact(&[(1, 1), (1, 1), (1, 1)]);
        let rows = lichnerowicz_scan(&ring, &gorenstein, &xi, &[]).unwrap();
        assert_eq!(rows.len(), 3);
        for row in rows {
            assert_eq!(row.lambda, exact(1, 1));
            assert!(!row.unstable);
            assert!(row.rees_futaki.is_zero());
        }
    }

    #[test]
    fn lichnerowicz_detects_brieskorn_instability() {
        let (_, gorenstein, xi) = brieskorn(5);
        let weights = WeightMatrix::new(vec![vec![5, 5, 5, 2]]).unwrap();
        let ring = RingSpec::new(
            weights,
            crate::hilbert::Relations::CompleteIntersection(vec![vec![10]]),
            3,
        )
        .unwrap();
        let rows = lichnerowicz_scan(&ring, &gorenstein, &xi, &[]).unwrap();
        assert_eq!(rows[0].lambda, exact(15, 7));
        assert!(!rows[0].unstable);
        assert_eq!(rows[3].lambda, exact(6, 7));
        assert!(rows[3].unstable);
        assert_eq!(rows[3].rees_futaki, exact(-1, 12));
    }

    #[test]
    fn lichnerowicz_k3_has_no_coordinate_obstruction() {
        let (_, gorenstein, xi) = brieskorn(3);
        let weights = WeightMatrix::new(vec![vec![3, 3, 3, 2]]).unwrap();
        let ring = RingSpec::new(
            weights,
            crate::hilbert::Relations::CompleteIntersection(vec![vec![6]]),
            3,
        )
        .unwrap();
        let rows = lichnerowicz_scan(&ring, &gorenstein, &xi, &[]).unwrap();
        assert_eq!(rows[3].lambda, exact(6, 5));
        assert!(rows.iter().all(|r| !r.unstable));
    }

    #[test]
    fn gorenstein_defect_vanishes_on_calabi_yau_models() {
        // C^3 at (1,1,1).
        let weights = WeightMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[], 3).unwrap();
        let xi = xi_exact(&[(1, 1), (1, 1), (1, 1)]);
        assert!(gorenstein_check(&series, &gorenstein, &xi)
            .unwrap()
            .is_zero());

        // Conifold at the symmetric point.
        let (_, series, gorenstein) = conifold();
        let xi = xi_exact(&[(3, 2), (3, 2), (3, 2)]);
        assert!(gorenstein_check(&series, &gorenstein, &xi)
            .unwrap()
            .is_zero());

        // Plane at an asymmetric cross-section point.
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let gorenstein = GorensteinData::adjunction(&weights, &[], 2).unwrap();
        let xi = xi_exact(&[(1, 2), (3, 2)]);
        assert!(gorenstein_check(&series, &gorenstein, &xi)
            .unwrap()
            .is_zero());
    }
}
