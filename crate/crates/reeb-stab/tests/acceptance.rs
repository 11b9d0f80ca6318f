//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::PathBuf;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use reeb_stab::cone::{is_reeb, ReebVector, WeightMatrix};
use reeb_stab::hilbert::hilbert_free;
use reeb_stab::laurent::extract_coefficients;
use reeb_stab::model::{parse_model, Model};
use reeb_stab::oracle;
use reeb_stab::scalar::{Mode, Scalar};
use reeb_stab::stability::{futaki, futaki_rees, lichnerowicz_scan};
use reeb_stab::volmin::minimize_volume;

fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(name)
}

fn load(name: &str) -> Model {
    parse_model(&model_path(name)).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

const ALL_MODELS: [&str; 13] = [
    "c2.json",
    "c3.json",
    "c4.json",
    "c5.json",
    "c2-w12.json",
    "conifold.json",
    "spp.json",
    "brieskorn-k2.json",
    "brieskorn-k3.json",
    "brieskorn-k4.json",
    "brieskorn-k5.json",
    "brieskorn-k6.json",
    "monomial-surface.json",
];

fn exact(n: i64, d: i64) -> Scalar {
    Scalar::exact(n, d)
}

fn factorial(n: usize) -> i64 {
    (2..=n as i64).product::<i64>().max(1)
}

/// Criterion 1: flat models are exact, with zero tolerance, in under a second.
#[test]
fn criterion_1_flat_model_exactness() {
    let started = Instant::now();
    for n in 1usize..=4 {
        let size = n + 1;
        let rows = (0..size)
            .map(|i| (0..size).map(|j| i64::from(i == j)).collect())
            .collect();
        let weights = WeightMatrix::new(rows).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let xi = ReebVector::from_integers(&vec![1; size], Mode::Exact);
        let coeffs = extract_coefficients(&series, &xi, None).unwrap();
        let n_fact = factorial(n);
        assert_eq!(coeffs.a0, exact(1, n_fact), "a0 for C^{size}");
        assert_eq!(
            coeffs.a1,
            exact(n as i64 * (n as i64 + 1), 2 * n_fact),
            "a1 for C^{size}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 1 (flat model exactness): PASS -- a0 = 1/n! and a1 = n(n+1)/(2 n!) exactly for n = 1..4 in {elapsed:?}"
    );
}

/// Criterion 2: conifold volume minimization from three distinct starts.
#[test]
fn criterion_2_conifold_volume() {
    let started = Instant::now();
    let model = load("conifold.json");
    let series = model.hilbert_series().unwrap();
    let gorenstein = model.gorenstein().unwrap();
    for start_name in ["start", "start-b", "start-c"] {
        let start = model.reeb_vectors[start_name].clone();
        let result = minimize_volume(&series, gorenstein, &start, 1e-10, 100)
            .unwrap_or_else(|e| panic!("start {start_name}: {e}"));
        // The minimizer has coordinate weights (3/2, 3/2, 3/2, 3/2).
        for j in 0..model.weights().coordinates() {
            let w = result
                .minimizer
                .pair(&model.weights().column(j))
                .unwrap()
                .to_f64();
            assert!(
                (w - 1.5).abs() < 1e-8,
                "start {start_name}: coordinate weight {j} = {w}"
            );
        }
        assert!(
            (result.volume.to_f64() - 8.0 / 27.0).abs() < 1e-10,
            "start {start_name}: volume {}",
            result.volume
        );
        let ratio = result.volume.to_f64() * 2.0;
        assert!(
            (ratio - 16.0 / 27.0).abs() < 1e-10,
            "start {start_name}: ratio {ratio}"
        );
        for cert in &result.certificates {
            assert!(
                cert.to_f64().abs() < 1e-8,
                "start {start_name}: certificate {cert}"
            );
        }
        for cert in &result.exact_certificates {
            assert!(
                cert.is_zero(),
                "start {start_name}: exact certificate {cert}"
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 2 (conifold volume): PASS -- three starts reach (3/2,3/2,3/2,3/2), volume 8/27, ratio 16/27 in {elapsed:?}"
    );
}

/// Criterion 3: Rees closed form equals the generic invariant on the central
/// fiber, with zero discrepancy, in ten exact cases.
#[test]
fn criterion_3_rees_consistency() {
    let mut cases = 0usize;

    // Flat models C^{n+1}, n = 1..4, with f the first coordinate.
    for file in ["c2.json", "c3.json", "c4.json", "c5.json"] {
        let model = load(file);
        let series = model.hilbert_series().unwrap();
        let xi = model.reeb_vectors["default"].clone();
        let mut alpha = vec![0i64; model.weights().torus_rank()];
        alpha[0] = 1;
        let report = futaki_rees(&series, &xi, &alpha).unwrap();
        assert_eq!(report.generic_futaki, report.futaki, "{file}");
        cases += 1;
    }

    // Conifold at the symmetric point, f = x.
    let model = load("conifold.json");
    let series = model.hilbert_series().unwrap();
    let xi = model.reeb_vectors["default"].clone();
    let report = futaki_rees(&series, &xi, &[1, 0, 0]).unwrap();
    assert_eq!(report.generic_futaki, report.futaki, "conifold");
    cases += 1;

    // Brieskorn k = 2..6 at the normalized point, f = w.
    for k in 2..=6 {
        let model = load(&format!("brieskorn-k{k}.json"));
        let series = model.hilbert_series().unwrap();
        let xi = model.reeb_vectors["default"].clone();
        let report = futaki_rees(&series, &xi, &[2]).unwrap();
        assert_eq!(report.generic_futaki, report.futaki, "brieskorn k={k}");
        cases += 1;
    }

    assert_eq!(cases, 10);
    println!(
        "criterion 3 (Rees consistency): PASS -- closed form equals the central-fiber invariant exactly in {cases} exact cases"
    );
}

/// Criterion 4: the Brieskorn family reproduces the coordinate charges
/// lambda(w) = 6/(k+2) exactly, unstable precisely for k >= 5, with the
/// k = 5 invariant -1/12 exactly.
#[test]
fn criterion_4_lichnerowicz_reproduction() {
    for k in 2i64..=6 {
        let model = load(&format!("brieskorn-k{k}.json"));
        let gorenstein = model.gorenstein().unwrap();
        let xi = model.reeb_vectors["default"].clone();
        let rows = lichnerowicz_scan(&model.ring, gorenstein, &xi, &[]).unwrap();
        let w_row = rows
            .iter()
            .find(|r| r.coordinate == 3)
            .expect("coordinate w present");
        assert_eq!(w_row.lambda, exact(6, k + 2), "lambda(w) for k={k}");
        assert_eq!(w_row.unstable, k >= 5, "verdict for k={k}");
        if k == 5 {
            assert_eq!(w_row.rees_futaki, exact(-1, 12), "Fut(k=5)");
        }
        // The x, y, z charges 3k/(k+2) never obstruct in this family.
        for row in rows.iter().filter(|r| r.coordinate < 3) {
            assert_eq!(row.lambda, exact(3 * k, k + 2));
            assert!(!row.unstable, "coordinate {} at k={k}", row.coordinate);
        }
    }
    println!(
        "criterion 4 (Lichnerowicz reproduction): PASS -- lambda(w) = 6/(k+2) exactly, UNSTABLE iff k >= 5, Fut(k=5) = -1/12"
    );
}

/// Criterion 5: finite-difference residuals confirm the equivariant
/// identities on every shipped model, with quadratic decay.
#[test]
fn criterion_5_equivariant_identities() {
    let mut rng = StdRng::seed_from_u64(20260808);
    let mut worst: f64 = 0.0;
    for file in ALL_MODELS {
        let model = load(file);
        let series = model.hilbert_series().unwrap();
        if series.dimension < 2 {
            continue;
        }
        let xi = model.reeb_vectors["default"].to_mode(Mode::Float).unwrap();
        for trial in 0..3 {
            // Directions are relative perturbations of the base point, with
            // components bounded away from zero so the residuals stay above
            // the float noise floor.
            let eta: Vec<f64> = xi
                .to_f64s()
                .iter()
                .map(|x| {
                    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                    sign * rng.random_range(0.3..1.0) * x
                })
                .collect();
            let eta = ReebVector::from_f64s(&eta);
            let report = oracle::finite_diff_check(&series, &xi, &eta, 1e-4).unwrap();
            for r in [report.residual_b0, report.residual_b1, report.residual_c0] {
                worst = worst.max(r);
                assert!(r < 1e-6, "{file} trial {trial}: residual {r}");
            }
            let coarse = oracle::finite_diff_check(&series, &xi, &eta, 1e-3).unwrap();
            let fine = oracle::finite_diff_check(&series, &xi, &eta, 5e-4).unwrap();
            for (c, f) in [
                (coarse.residual_b0, fine.residual_b0),
                (coarse.residual_b1, fine.residual_b1),
                (coarse.residual_c0, fine.residual_c0),
            ] {
                if c < 1e-12 {
                    continue; // at the noise floor; nothing left to decay
                }
                let ratio = c / f;
                assert!(
                    (3.5..=4.5).contains(&ratio),
                    "{file} trial {trial}: decay ratio {ratio}"
                );
            }
        }
    }
    println!(
        "criterion 5 (equivariant identities): PASS -- residuals < 1e-6 at h = 1e-4 (worst {worst:.3e}), quadratic decay in [3.5, 4.5]"
    );
}

/// A random exact cone-interior point for a model, by rejection sampling.
fn random_interior(rng: &mut StdRng, model: &Model) -> ReebVector {
    let weights = model.weights();
    loop {
        let candidate = ReebVector::new(
            (0..weights.torus_rank())
                .map(|_| Scalar::exact(rng.random_range(1i64..=12), rng.random_range(1i64..=4)))
                .collect(),
        )
        .unwrap();
        if is_reeb(weights, &candidate).unwrap() {
            return candidate;
        }
    }
}

fn random_exact_direction(rng: &mut StdRng, dim: usize) -> ReebVector {
    loop {
        let candidate = ReebVector::new(
            (0..dim)
                .map(|_| Scalar::exact(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)))
                .collect(),
        )
        .unwrap();
        if candidate.components().iter().any(|c| !c.is_zero()) {
            return candidate;
        }
    }
}

/// Criterion 6: randomized exact property suite with zero failures.
#[test]
fn criterion_6_property_suite() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let lambdas = [exact(2, 1), exact(3, 1), exact(5, 7)];
    let mut pairs = 0usize;
    for file in ALL_MODELS {
        let model = load(file);
        let series = model.hilbert_series().unwrap();
        if series.dimension < 2 {
            continue;
        }
        let n = series.dimension - 1;
        for _ in 0..25 {
            let xi = random_interior(&mut rng, &model);
            let eta = random_exact_direction(&mut rng, xi.dim());

            let report = futaki(&series, &xi, &eta).unwrap();
            assert!(report.coefficients.a0.is_positive(), "{file}: a0 > 0");
            let parts = report.coefficients.eta.as_ref().unwrap();
            assert!(!parts.c0.is_negative(), "{file}: c0 >= 0");
            assert!(!report.norm_sq.is_negative(), "{file}: norm^2 >= 0");

            // Homogeneity of a0, exact for rational scalings.
            for lambda in &lambdas {
                let scaled =
                    extract_coefficients(&series, &xi.scale(lambda).unwrap(), None).unwrap();
                let mut factor = Scalar::one(Mode::Exact);
                for _ in 0..=n {
                    factor = factor.mul(lambda).unwrap();
                }
                assert_eq!(
                    scaled.a0.mul(&factor).unwrap(),
                    report.coefficients.a0,
                    "{file}: homogeneity at lambda {lambda}"
                );
            }

            // Antisymmetry in the direction.
            let negated = futaki(&series, &xi, &eta.scale(&exact(-1, 1)).unwrap()).unwrap();
            assert_eq!(negated.futaki, report.futaki.neg(), "{file}: antisymmetry");

            // The Reeb direction itself never destabilizes.
            let along_xi = futaki(&series, &xi, &xi).unwrap();
            assert!(along_xi.futaki.is_zero(), "{file}: Fut(xi, xi) = 0");

            pairs += 1;
        }
    }
    println!(
        "criterion 6 (property suite): PASS -- {pairs} randomized exact (xi, eta) pairs, zero failures"
    );
}

/// Criterion 7: the partial character sums agree with direct evaluation
/// within the reported tail bound, and series coefficients are nonnegative.
#[test]
fn criterion_7_oracle_agreement() {
    for file in ALL_MODELS {
        let model = load(file);
        let series = model.hilbert_series().unwrap();
        let xi = model.reeb_vectors["default"].clone();
        assert_eq!(xi.mode(), Mode::Exact, "{file}: shipped default is exact");

        let expansion = oracle::series_coefficients(&series, &xi, 50).unwrap();
        for (m, c) in expansion.coeffs.iter().enumerate() {
            assert!(
                c >= &num_bigint::BigInt::from(0),
                "{file}: negative dimension at degree {m}"
            );
        }

        for t_value in [0.25f64, 0.5, 1.0] {
            let t = Scalar::float(t_value);
            let degree = oracle::auto_degree(&series, &xi, &t, 1e-6).unwrap();
            let partial = oracle::partial_sum_character(&series, &xi, &t, degree).unwrap();
            let direct = oracle::evaluate_character_directly(
                &series,
                &xi.to_mode(Mode::Float).unwrap(),
                t_value,
            )
            .unwrap();
            assert!(
                (partial.value - direct).abs() <= partial.tail_bound,
                "{file} at t = {t_value}: |{} - {direct}| > bound {}",
                partial.value,
                partial.tail_bound
            );
        }
    }
    println!(
        "criterion 7 (oracle agreement): PASS -- partial sums within tail bounds at t in {{1/4, 1/2, 1}}, series nonnegative to degree 50"
    );
}
