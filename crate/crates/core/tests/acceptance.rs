//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that timings are measured on a quiet process.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wordmap::arith::{check_theorem_conditions, length_residues, scan_primes, LengthFamily};
use wordmap::corpus::standard_corpus;
use wordmap::gf::{enumerate_image_pairs, eval_word, trace_scan, Budget, FiniteField, TraceEvaluator};
use wordmap::tracepoly::cyclotomic::cyclotomic_root_check;
use wordmap::tracepoly::{swap_certificates, tau, verify_factorization};
use wordmap::word::{Shape, Sign, WordFamily};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn swap_range() -> Outcome {
    let start = Instant::now();
    let certs = swap_certificates(-8..=8, &[Sign::Plus, Sign::Minus]);
    let ok = certs.iter().filter(|c| c.verdict).count();
    let el = start.elapsed();
    outcome(
        certs.len() == 34 && ok == 34 && within(el, 10.0),
        format!("{ok}/{} swap certificates hold in {:.2?} (limit 10 s)", certs.len(), el),
    )
}

fn factorization_and_cyclotomic() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut ok = 0;
    for inner in [Sign::Plus, Sign::Minus] {
        for k in 1..=8 {
            let family = WordFamily::new(inner, k).expect("k >= 1");
            for shape in Shape::ALL {
                total += 1;
                if verify_factorization(&family, shape).holds() {
                    ok += 1;
                }
            }
        }
    }
    let cyclo = (1..=8).filter(|&kpm| cyclotomic_root_check(kpm)).count();
    let el = start.elapsed();
    outcome(
        total == 48 && ok == 48 && cyclo == 8 && within(el, 30.0),
        format!("{ok}/{total} factorizations, {cyclo}/8 cyclotomic root checks in {:.2?} (limit 30 s)", el),
    )
}

fn tau_soundness() -> Outcome {
    let corpus = standard_corpus();
    let mut checked = 0u64;
    let mut failures = 0u64;
    for q in [5u64, 7, 9, 13] {
        let field = FiniteField::with_order(q).expect("valid order");
        let mut rng = ChaCha8Rng::seed_from_u64(0xacc0 + q);
        let pairs: Vec<_> = (0..200)
            .map(|_| (field.random_sl2(&mut rng), field.random_sl2(&mut rng)))
            .collect();
        for w in &corpus {
            let ev = TraceEvaluator::new(&field, &tau(w));
            for (x, y) in &pairs {
                let lhs = field.trace(&eval_word(&field, w, x, y));
                let rhs = ev.eval(field.trace(x), field.trace(y), field.trace(&field.mat_mul(x, y)));
                checked += 1;
                if lhs != rhs {
                    failures += 1;
                }
            }
        }
    }
    outcome(
        failures == 0,
        format!(
            "{checked} evaluations ({} words x 200 pairs x F5,F7,F9,F13), {failures} failures",
            corpus.len()
        ),
    )
}

fn instance_p3() -> Outcome {
    let start = Instant::now();
    let conditions = check_theorem_conditions(3, 1, 2, Shape::X2Yk);
    let field = FiniteField::new(3, 1).expect("F_3");
    let w = WordFamily::new(Sign::Plus, 2).expect("k >= 1").build(Shape::X2Yk);
    let image = enumerate_image_pairs(&w, &field, Budget::default());
    let el = start.elapsed();
    match (conditions, image) {
        (Ok(c), Ok(r)) => outcome(
            c.verdict
                && r.pairs_evaluated == 576
                && r.misses_involutions
                && r.surjective == Some(false)
                && within(el, 1.0),
            format!(
                "verdict {}, {} pairs, misses involutions {}, image {}/{} in {:.2?} (limit 1 s)",
                c.verdict,
                r.pairs_evaluated,
                r.misses_involutions,
                r.image_size.unwrap_or(0),
                field.psl2_order(),
                el
            ),
        ),
        (c, r) => outcome(false, format!("error: {:?} / {:?}", c.err(), r.err())),
    }
}

fn instance_p13_and_control() -> Outcome {
    let start = Instant::now();
    let w = WordFamily::new(Sign::Plus, 2).expect("k >= 1").build(Shape::X2Yk);
    let scan = |q| trace_scan(&w, &FiniteField::with_order(q).expect("prime"), Budget::default());
    let (r13, r11) = match (scan(13), scan(11)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return outcome(false, format!("error: {:?} / {:?}", a.err(), b.err())),
    };
    let el = start.elapsed();
    outcome(
        r13.misses_involutions && !r11.misses_involutions && within(el, 5.0),
        format!(
            "q=13: 0 unattained {} ({} points); q=11: 0 attained {}; {:.2?} (limit 5 s)",
            r13.misses_involutions, r13.points_evaluated, !r11.misses_involutions, el
        ),
    )
}

fn commutator_surjective() -> Outcome {
    let start = Instant::now();
    let field = FiniteField::new(5, 1).expect("F_5");
    let w = "[x1,x2]".parse().expect("commutator parses");
    match enumerate_image_pairs(&w, &field, Budget::default()) {
        Ok(r) => {
            let el = start.elapsed();
            outcome(
                r.surjective == Some(true) && within(el, 5.0),
                format!("image {}/{} in {:.2?} (limit 5 s)", r.image_size.unwrap_or(0), field.psl2_order(), el),
            )
        }
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

fn density() -> Outcome {
    let mut trail = Vec::new();
    let mut last = None;
    for x in [100_000u64, 500_000, 2_000_000] {
        match scan_primes(2, x) {
            Ok(scan) => {
                trail.push(format!("X={x}: {:+.5}", scan.report.deviation_from_dirichlet));
                last = Some(scan);
            }
            Err(e) => return outcome(false, format!("error: {e}")),
        }
    }
    let scan = last.expect("three scans");
    let r = &scan.report;
    outcome(
        r.deviation_from_dirichlet.abs() <= 0.02 && scan.cross_checked,
        format!(
            "{}/{} primes, empirical {:.6} vs dirichlet {} (dev {:+.6}), paper {} (dev {:+.6}); trail {}",
            r.matching_prime_count,
            r.total_prime_count,
            r.empirical_density.to_f64(),
            r.dirichlet_density,
            r.deviation_from_dirichlet,
            r.paper_density,
            r.deviation_from_paper,
            trail.join(", ")
        ),
    )
}

fn word_lengths() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for inner in [Sign::Plus, Sign::Minus] {
        for k in 1..=50i64 {
            let family = WordFamily::new(inner, k).expect("k >= 1");
            let r = 2 * k as usize + 1;
            if family.build(Shape::X2Yk).len() != 3 * r - 1 {
                bad.push(format!("x2yk {inner:?} k={k}"));
            }
            if family.build(Shape::XNeg2Yk).len() != 3 * r - 5 {
                bad.push(format!("xneg2yk {inner:?} k={k}"));
            }
        }
    }
    let residues: BTreeSet<u64> = [LengthFamily::X2Yk, LengthFamily::XNeg2Yk]
        .into_iter()
        .flat_map(|f| length_residues(f, 1000).expect("r_max >= 7").residues_mod_18)
        .collect();
    let el = start.elapsed();
    let expected = BTreeSet::from([2, 4, 14, 16]);
    outcome(
        bad.is_empty() && residues == expected && within(el, 1.0),
        format!("{} length mismatches, residues mod 18 {:?} in {:.2?} (limit 1 s)", bad.len(), residues, el),
    )
}

fn proper_powers() -> Outcome {
    let powers = common::proper_powers_up_to(12);
    let mut checked = 0usize;
    let mut disagreements = 0usize;
    for len in 1..=12 {
        for w in common::reduced_words(len) {
            checked += 1;
            if w.is_proper_power().ok() != Some(powers.contains(&w)) {
                disagreements += 1;
            }
        }
    }
    // The family is defined for k± >= 1; at k± = 0 the word is conjugate to x1^±2.
    let (mut family, mut family_powers, mut degenerate_powers) = (0, 0, 0);
    for inner in [Sign::Plus, Sign::Minus] {
        for k in 1..=8 {
            let f = WordFamily::new(inner, k).expect("k >= 1");
            for shape in Shape::ALL {
                let is_power = f.build(shape).is_proper_power().unwrap_or(true);
                if f.kpm(shape) >= 1 {
                    family += 1;
                    family_powers += usize::from(is_power);
                } else {
                    degenerate_powers += usize::from(is_power);
                }
            }
        }
    }
    outcome(
        disagreements == 0 && family == 44 && family_powers == 0 && degenerate_powers == 4,
        format!(
            "{checked} reduced words of length <= 12 ({} proper powers), {disagreements} disagreements; \
             {family_powers}/{family} family words flagged; {degenerate_powers}/4 k±=0 words are conjugates of x1^±2",
            powers.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("swap identity, k in [-8, 8], both variants", swap_range),
        ("factorization and cyclotomic roots, k in [1, 8]", factorization_and_cyclotomic),
        ("trace polynomial soundness over F5, F7, F9, F13", tau_soundness),
        ("p = 3, k = 2: conditions and 576-pair enumeration", instance_p3),
        ("p = 13 trace scan misses 0, q = 11 control attains 0", instance_p13_and_control),
        ("commutator surjective on PSL2(F5)", commutator_surjective),
        ("prime density for k± = 2 at X = 2e6 within 0.02 of 1/4", density),
        ("word lengths and residues mod 18", word_lengths),
        ("proper-power oracle to length 12 and family words", proper_powers),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
