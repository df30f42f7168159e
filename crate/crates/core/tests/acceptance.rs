//! Acceptance gate: one line per criterion, nonzero exit status if any fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use divgrad::classify::extract_mu;
use divgrad::format::{format_gda, format_record, parse_gda, parse_record};
use divgrad::forms::{arf, enumerate_quadratic_forms, Bicharacter, Sign};
use divgrad::graded::Block;
use divgrad::group::{Group, Subgroup};
use divgrad::oracle::{
    verify_arf_independence, verify_building_blocks, verify_counting, verify_hh_relabeling, verify_refinement_chain,
    verify_round_trips, verify_section3_list, VerificationReport,
};
use divgrad::realize::count_isomorphism_classes;
use divgrad::scalar::Kind;

type Outcome = Result<String, String>;

fn report(r: &VerificationReport) -> Outcome {
    if r.passed() {
        Ok(format!("{} cases", r.cases))
    } else {
        let first = &r.failures[0];
        Err(format!("{} of {} cases failed, first {}: {}", r.failures.len(), r.cases, first.case, first.detail))
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.1?}, limit {limit:?}"))
    }
}

/// Brute force over all maps Z2^2 → {±1} with value +1 at 0: those whose
/// polarization is the nontrivial alternating form, and their majority
/// values. Elements are bit pairs, (x·y) the symplectic product.
fn brute_force_forms_on_z2_squared() -> (usize, usize, usize) {
    let symp = |x: u32, y: u32| ((x >> 1) & y ^ (x & (y >> 1))) & 1;
    let (mut total, mut plus, mut minus) = (0, 0, 0);
    for bits in 0u32..8 {
        let q = |x: u32| if x == 0 { 0 } else { (bits >> (x - 1)) & 1 };
        let polar_ok = (0..4).all(|x| (0..4).all(|y| q(x ^ y) ^ q(x) ^ q(y) == symp(x, y)));
        if !polar_ok {
            continue;
        }
        total += 1;
        let ones = (0..4).filter(|&x| q(x) == 1).count();
        if ones < 2 {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    (total, plus, minus)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let r = verify_building_blocks();
    within(t.elapsed(), Duration::from_secs(1))?;
    report(&r)
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let z = Subgroup::full(Group::elementary(2));
    let beta = Bicharacter::from_fn(z.clone(), |x, y| Sign::from_minus(x != 0 && y != 0 && x != y))
        .map_err(|e| e.to_string())?;
    let forms = enumerate_quadratic_forms(&z, Some(&beta)).map_err(|e| e.to_string())?;
    let (total, plus, minus) = brute_force_forms_on_z2_squared();
    if forms.len() != 4 || total != 4 || (plus, minus) != (3, 1) {
        return Err(format!("{} forms enumerated, brute force {total} ({plus} +, {minus} -)", forms.len()));
    }
    let arf_of = |b: Block| extract_mu(&b.build()).and_then(|mu| arf(&mu)).map_err(|e| e.to_string());
    let (h, r) = (arf_of(Block::H1)?, arf_of(Block::M2R1)?);
    if (h, r) != (Sign::Minus, Sign::Plus) {
        return Err(format!("Arf(H) = {h}, Arf(M2(R)) = {r}"));
    }
    let mut cases = 0;
    for m in 0..=3 {
        let rep = verify_arf_independence(m, 100, 1000 + m as u64);
        report(&rep)?;
        cases += rep.cases;
    }
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("4 forms, Arf(H) = -1, Arf(M2(R)) = +1, {cases} independence cases"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let r = verify_section3_list(2);
    within(t.elapsed(), Duration::from_secs(300))?;
    report(&r)
}

fn criterion_4() -> Outcome {
    report(&verify_hh_relabeling())
}

fn criterion_5() -> Outcome {
    report(&verify_round_trips(16))
}

fn criterion_6() -> Outcome {
    report(&verify_refinement_chain())
}

fn criterion_7() -> Outcome {
    let z = Subgroup::full(Group::elementary(2));
    let (_, plus, minus) = brute_force_forms_on_z2_squared();
    let r = count_isomorphism_classes(Kind::R, 1, &z).map_err(|e| e.to_string())?;
    let h = count_isomorphism_classes(Kind::H, 1, &z).map_err(|e| e.to_string())?;
    if (r, h) != (plus, minus) {
        return Err(format!("counted {r} on M2(R) and {h} on H, brute force {plus} and {minus}"));
    }
    report(&verify_counting(16))
}

fn criterion_8() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    paths.sort();
    let mut count = 0;
    for p in &paths {
        let text = fs::read_to_string(p).map_err(|e| e.to_string())?;
        let name = p.file_name().unwrap().to_string_lossy();
        let back = match p.extension().and_then(|e| e.to_str()) {
            Some("gda") => {
                let a = parse_gda(&text).map_err(|e| format!("{name}: {e}"))?;
                a.check_grading().map_err(|v| format!("{name}: {v}"))?;
                format_gda(&a)
            }
            Some("rec") => format_record(&parse_record(&text).map_err(|e| format!("{name}: {e}"))?),
            _ => continue,
        };
        if back != text {
            return Err(format!("{name} does not round-trip byte for byte"));
        }
        count += 1;
    }
    if count == 0 {
        return Err("no fixtures found".into());
    }
    Ok(format!("{count} documents"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("building blocks", criterion_1),
        ("form theory", criterion_2),
        ("classification table", criterion_3),
        ("H(x)H relabeling", criterion_4),
        ("round trips", criterion_5),
        ("refinement", criterion_6),
        ("counting", criterion_7),
        ("serialization", criterion_8),
    ];
    let mut failed = 0;
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] criterion {} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
