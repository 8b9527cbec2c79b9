//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p hullcode --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::time::{Duration, Instant};

use hullcode::bounds;
use hullcode::codes::LinearCode;
use hullcode::construct::{construct, iid_trial, Case, ConstructionParams};
use hullcode::gf::Field;
use hullcode::linalg::{FieldMatrix, FieldVector};
use hullcode::wire::CodeWire;
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("{name}: PASS ({detail})"),
        Err(e) => {
            println!("{name}: FAIL — {e}");
            panic!("{name} failed: {e}");
        }
    }
}

/// Every grid point with t <= k where the existence condition holds.
fn feasible_grid(qs: &[u64]) -> Vec<ConstructionParams> {
    let mut out = Vec::new();
    for &q in qs {
        for m in [8usize, 12, 16] {
            for k in [1usize, 2, 3] {
                for t in 0..=k {
                    for d in [2usize, 3] {
                        let holds = bounds::gv_condition(q, m as u64, k as u64, d as u64)
                            .expect("valid parameters")
                            .holds;
                        if holds {
                            out.push(ConstructionParams::new(q, m, k, t, d, 0xACCE55));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Construct one grid point and re-verify with the independent verifiers,
/// not trusting the embedded report.
fn check_point(params: &ConstructionParams) -> Result<(), String> {
    let res = construct(params).map_err(|e| format!("{params:?}: {e}"))?;
    let code = &res.code;
    let case = Case::of(params.q);
    let expected_n = case.expected_length(params.m, params.k);
    let floor = case.guaranteed_distance(params.d);
    if code.dimension() != params.k {
        return Err(format!("{params:?}: dimension {}", code.dimension()));
    }
    if code.length() != expected_n {
        return Err(format!("{params:?}: length {}", code.length()));
    }
    let (gram, inter) = code
        .hull_dimension_both()
        .map_err(|e| format!("{params:?}: {e}"))?;
    if gram != params.t || inter != params.t {
        return Err(format!(
            "{params:?}: hull methods gave {gram} and {inter}, wanted {}",
            params.t
        ));
    }
    let dist = code
        .min_distance()
        .map_err(|e| format!("{params:?}: {e}"))?;
    if dist < floor {
        return Err(format!("{params:?}: distance {dist} below {floor}"));
    }
    Ok(())
}

#[test]
fn criterion_1_even_case_grid() {
    let started = Instant::now();
    let outcome = (|| {
        let grid = feasible_grid(&[2, 4, 8]);
        if grid.is_empty() {
            return Err("empty feasible grid".to_string());
        }
        for params in &grid {
            check_point(params)?;
        }
        let elapsed = started.elapsed();
        if elapsed >= Duration::from_secs(60) {
            return Err(format!("took {elapsed:?}, budget 60 s"));
        }
        Ok(format!("{} grid points in {elapsed:?}", grid.len()))
    })();
    report("criterion 1 (even-case realization over the grid)", outcome);
}

#[test]
fn criterion_2_odd_case_grids() {
    let started = Instant::now();
    let outcome = (|| {
        let grid_1mod4 = feasible_grid(&[5, 9, 13]);
        let grid_3mod4 = feasible_grid(&[3, 7, 11]);
        if grid_1mod4.is_empty() || grid_3mod4.is_empty() {
            return Err("empty feasible grid".to_string());
        }
        for params in grid_1mod4.iter().chain(&grid_3mod4) {
            check_point(params)?;
        }
        let elapsed = started.elapsed();
        if elapsed >= Duration::from_secs(120) {
            return Err(format!("took {elapsed:?}, budget 120 s"));
        }
        Ok(format!(
            "{} + {} grid points in {elapsed:?}",
            grid_1mod4.len(),
            grid_3mod4.len()
        ))
    })();
    report("criterion 2 (odd-case realization over the grids)", outcome);
}

#[test]
fn criterion_3_gram_structure() {
    let outcome = (|| {
        let mut checked = 0usize;
        for qs in [&[2u64, 4, 8][..], &[5, 9, 13][..], &[3, 7, 11][..]] {
            for params in feasible_grid(qs) {
                let res = construct(&params).map_err(|e| format!("{params:?}: {e}"))?;
                let gram = res.code.generator().gram();
                if !gram.is_diagonal() {
                    return Err(format!("{params:?}: Gram not diagonal"));
                }
                let zeros = (0..params.k).filter(|&i| gram.get(i, i).is_zero()).count();
                if zeros != params.t {
                    return Err(format!("{params:?}: {zeros} diagonal zeros"));
                }
                // odd cases: Gram equals Δ² with Δ diagonal of t zeros then
                // ones, so Δ² is diagonal with entries 0 (i < t) and 1
                if params.q % 2 == 1 {
                    let f = res.code.field().clone();
                    let rows: Vec<FieldVector> = (0..params.k)
                        .map(|i| {
                            let mut v = vec![f.zero(); params.k];
                            if i >= params.t {
                                v[i] = f.one();
                            }
                            FieldVector::new(f.clone(), v)
                        })
                        .collect();
                    let delta_sq = FieldMatrix::from_rows(&f, &rows).expect("uniform rows");
                    if gram != delta_sq {
                        return Err(format!("{params:?}: Gram differs from Δ²"));
                    }
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} codes, zero tolerance"))
    })();
    report("criterion 3 (Gram diagonal with exactly t zeros)", outcome);
}

#[test]
fn criterion_4_bound_consistency() {
    let outcome = (|| {
        let mut points = 0usize;
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 1..=20u64 {
                for k in 1..=m {
                    for d in 1..=m {
                        let gv = bounds::gv_condition(q, m, k, d)
                            .map_err(|e| format!("gv({q},{m},{k},{d}): {e}"))?;
                        // simplified ⇒ full, wherever the hypothesis holds
                        if 2 * (d - 1) <= m {
                            let simp = bounds::simplified_condition(q, m, k, d)
                                .map_err(|e| format!("simplified({q},{m},{k},{d}): {e}"))?;
                            if simp.holds && !gv.holds {
                                return Err(format!(
                                    "simplified holds but full fails at ({q},{m},{k},{d})"
                                ));
                            }
                        }
                        // ε_k > 0 exactly when the condition holds
                        if bounds::epsilon_k_positive(&gv) != gv.holds && k >= 2 {
                            return Err(format!("ε_k sign mismatch at ({q},{m},{k},{d})"));
                        }
                        points += 1;
                    }
                }
            }
        }
        Ok(format!("{points} parameter points, zero violations"))
    })();
    report(
        "criterion 4 (bound implications on the exhaustive grid)",
        outcome,
    );
}

#[test]
fn criterion_5_probability_bound_dominance() {
    let started = Instant::now();
    let outcome = (|| {
        // grid points with a usable lower bound
        let points: [(u64, usize, usize, usize); 6] = [
            (2, 8, 2, 2),
            (2, 10, 2, 2),
            (2, 12, 2, 2),
            (2, 10, 1, 3),
            (3, 8, 2, 2),
            (5, 6, 2, 2),
        ];
        let n = 1000usize;
        let mut qualified = 0usize;
        for (idx, &(q, m, k, d)) in points.iter().enumerate() {
            let bound = bounds::success_probability_lower_bound(q, m as u64, k as u64, d as u64)
                .map_err(|e| e.to_string())?
                .to_f64()
                .ok_or("bound not representable")?;
            if bound < 0.01 {
                continue;
            }
            qualified += 1;
            let (p, r) = hullcode::gf::as_prime_power(q).expect("prime power");
            let field = Field::new(p, r).map_err(|e| e.to_string())?;
            let mut rng = ChaCha8Rng::seed_from_u64(0xD0 + idx as u64);
            let hits = (0..n)
                .filter(|_| iid_trial(&field, m, k, d, &mut rng))
                .count();
            let freq = hits as f64 / n as f64;
            let sigma = (bound * (1.0 - bound) / n as f64).sqrt();
            if freq < bound - 3.0 * sigma {
                return Err(format!(
                    "({q},{m},{k},{d}): frequency {freq:.4} < bound {bound:.4} - 3σ"
                ));
            }
        }
        if qualified < 5 {
            return Err(format!("only {qualified} points with bound >= 0.01"));
        }
        let elapsed = started.elapsed();
        if elapsed >= Duration::from_secs(120) {
            return Err(format!("took {elapsed:?}, budget 120 s"));
        }
        Ok(format!(
            "{qualified} points, N = {n} i.i.d. trials each, {elapsed:?}"
        ))
    })();
    report(
        "criterion 5 (empirical success dominates the lower bound)",
        outcome,
    );
}

#[test]
fn criterion_6_oracle_fixtures() {
    let outcome = (|| {
        let f = Field::new(2, 1).map_err(|e| e.to_string())?;
        let hamming = LinearCode::new(FieldMatrix::from_encodings(
            &f,
            &[
                vec![1, 0, 0, 0, 1, 1, 0],
                vec![0, 1, 0, 0, 1, 0, 1],
                vec![0, 0, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        ))
        .map_err(|e| e.to_string())?;
        if hamming.min_distance() != Ok(3) {
            return Err("Hamming [7,4] distance is not 3".to_string());
        }
        if hamming.dual().dimension() != 3 {
            return Err("Hamming [7,4] dual dimension is not 3".to_string());
        }
        let rep = LinearCode::new(FieldMatrix::from_encodings(&f, &[vec![1, 1]]))
            .map_err(|e| e.to_string())?;
        if rep.hull_dimension() != Ok(1) {
            return Err("span{(1,1)} hull is not 1".to_string());
        }
        let single = LinearCode::new(FieldMatrix::from_encodings(&f, &[vec![1, 0]]))
            .map_err(|e| e.to_string())?;
        if single.hull_dimension() != Ok(0) {
            return Err("span{(1,0)} hull is not 0".to_string());
        }
        Ok("Hamming [7,4,3], self-dual and LCD spans, all exact".to_string())
    })();
    report("criterion 6 (oracle fixtures)", outcome);
}

#[test]
fn criterion_7_asymptotics() {
    let outcome = (|| {
        let h_half = bounds::entropy(0.5).map_err(|e| e.to_string())?;
        if (h_half - 1.0).abs() > 1e-12 {
            return Err(format!("H(1/2) = {h_half}"));
        }
        // 99-point grid in (0, 1/2) for the base-2 identity
        for i in 1..=99 {
            let delta = i as f64 / 200.0;
            let eps0 = bounds::epsilon0(delta, 2).map_err(|e| e.to_string())?;
            let expect = (1.0 - delta - bounds::entropy(delta).map_err(|e| e.to_string())?) / 2.0;
            if (eps0 - expect).abs() > 1e-12 {
                return Err(format!("ε₀({delta}, 2) off by {}", (eps0 - expect).abs()));
            }
        }
        // symmetry across the full unit interval
        for i in 1..=99 {
            let delta = i as f64 / 100.0;
            let lhs = bounds::entropy(delta).map_err(|e| e.to_string())?;
            let rhs = bounds::entropy(1.0 - delta).map_err(|e| e.to_string())?;
            if (lhs - rhs).abs() > 1e-12 {
                return Err(format!("H({delta}) asymmetric by {}", (lhs - rhs).abs()));
            }
        }
        Ok("entropy and rate threshold identities to 1e-12".to_string())
    })();
    report("criterion 7 (asymptotics)", outcome);
}

#[test]
fn criterion_8_construct_determinism() {
    let outcome = (|| {
        // one parameter point per case, two runs each, compared as bytes
        for params in [
            ConstructionParams::new(2, 8, 2, 1, 3, 7),
            ConstructionParams::new(4, 8, 2, 2, 2, 9),
            ConstructionParams::new(9, 8, 3, 1, 2, 11),
            ConstructionParams::new(7, 8, 2, 0, 2, 13),
        ] {
            let a = construct(&params).map_err(|e| format!("{params:?}: {e}"))?;
            let b = construct(&params).map_err(|e| format!("{params:?}: {e}"))?;
            let bytes_a =
                serde_json::to_vec(&CodeWire::from_code(&a.code)).map_err(|e| e.to_string())?;
            let bytes_b =
                serde_json::to_vec(&CodeWire::from_code(&b.code)).map_err(|e| e.to_string())?;
            if bytes_a != bytes_b {
                return Err(format!("{params:?}: generator bytes differ"));
            }
        }
        Ok("byte-identical generators across repeated runs".to_string())
    })();
    report("criterion 8a (construct determinism)", outcome);
}
