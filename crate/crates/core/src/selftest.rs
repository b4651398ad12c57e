//! The embedded check suite: every reference witness row, the two
//! no-solution instances, the pinned solvability thresholds, the length-31
//! code, and the Fibonacci-root prefix.

use crate::cac::{build_optimal_cac, verify_cac, Verdict};
use crate::charsum::aggregate_count;
use crate::diagonal::{bound_sheet, find_solvable_generator};
use crate::field::FieldCtx;
use crate::scan::fib_prime_sequence;
use crate::tables::{all_witness_rows, reference_cac_31, WitnessRow};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Substitutes one witness row into the equation in its stated field.
pub fn check_witness_row(row: &WitnessRow) -> Result<(), String> {
    let field = FieldCtx::with_default_modulus(row.q).map_err(|e| e.to_string())?;
    let g = row.g.resolve(&field).map_err(|e| e.to_string())?;
    let x = row.x.resolve(&field).map_err(|e| e.to_string())?;
    let y = row.y.resolve(&field).map_err(|e| e.to_string())?;
    if !field.is_generator(g) {
        return Err(format!("g = {} is not a generator", field.format_elem(g)));
    }
    let value = field.eval_diagonal(row.ell, g, x, y);
    if !value.is_zero() {
        return Err(format!(
            "g^2 x^{} + g y^{} + 1 = {} != 0",
            row.ell,
            row.ell,
            field.format_elem(value)
        ));
    }
    Ok(())
}

fn check_no_solution(q: u64, ell: u64) -> Result<(), String> {
    let field = FieldCtx::with_default_modulus(q).map_err(|e| e.to_string())?;
    let n = aggregate_count(&field, ell).map_err(|e| e.to_string())?;
    if n != 0 {
        return Err(format!("aggregate count is {n}, expected 0"));
    }
    match find_solvable_generator(&field, ell, false).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some(w) => Err(format!(
            "unexpected witness with g = {}",
            field.format_elem(w.g)
        )),
    }
}

fn check_bound(ell: u64, expected: i64) -> Result<(), String> {
    let sheet = bound_sheet(ell).map_err(|e| e.to_string())?;
    if sheet.b == expected {
        Ok(())
    } else {
        Err(format!("b({ell}) = {}, expected {expected}", sheet.b))
    }
}

fn check_reference_cac() -> Result<(), String> {
    let code = reference_cac_31();
    match verify_cac(&code).map_err(|e| e.to_string())? {
        Verdict::Valid => {}
        Verdict::Conflict {
            first,
            second,
            residue,
        } => {
            return Err(format!(
                "conflict between codewords {first} and {second} at residue {residue}"
            ))
        }
    }
    if code.size() != 7 {
        return Err(format!("size {} != 7", code.size()));
    }
    Ok(())
}

fn check_built_cac_31() -> Result<(), String> {
    let b = build_optimal_cac(31).map_err(|e| e.to_string())?;
    if b.code.size() != 7 {
        return Err(format!("built size {} != 7", b.code.size()));
    }
    Ok(())
}

fn check_fib_prefix() -> Result<(), String> {
    let got = fib_prime_sequence(109);
    let expected = vec![5u64, 11, 19, 31, 41, 59, 61, 71, 79, 109];
    if got == expected {
        Ok(())
    } else {
        Err(format!("sequence {got:?} != {expected:?}"))
    }
}

type Check = (String, Box<dyn Fn() -> Result<(), String> + Send + Sync>);

fn checks() -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    for row in all_witness_rows() {
        out.push((
            format!("ell{} witness q={}", row.ell, row.q),
            Box::new(move || check_witness_row(&row)),
        ));
    }
    out.push((
        "no solution q=13 ell=6".into(),
        Box::new(|| check_no_solution(13, 6)),
    ));
    out.push((
        "no solution q=23 ell=11".into(),
        Box::new(|| check_no_solution(23, 11)),
    ));
    for (ell, expected) in [(5u64, 34i64), (6, 194), (11, 322)] {
        out.push((
            format!("solvability bound ell={ell} is {expected}"),
            Box::new(move || check_bound(ell, expected)),
        ));
    }
    out.push((
        "published length-31 code is a valid size-7 code".into(),
        Box::new(check_reference_cac),
    ));
    out.push((
        "built code for length 31 reaches size 7".into(),
        Box::new(check_built_cac_31),
    ));
    out.push((
        "fibonacci primitive root primes up to 109".into(),
        Box::new(check_fib_prefix),
    ));
    out
}

pub fn check_names() -> Vec<String> {
    checks().into_iter().map(|(name, _)| name).collect()
}

pub fn run_all() -> Vec<CheckOutcome> {
    checks()
        .into_iter()
        .map(|(name, run)| match run() {
            Ok(()) => CheckOutcome {
                name,
                passed: true,
                detail: String::new(),
            },
            Err(detail) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::ElemSpec;

    #[test]
    fn all_checks_pass() {
        let outcomes = run_all();
        assert_eq!(outcomes.len(), 41);
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn corrupted_row_fails_with_detail() {
        let bad = WitnessRow {
            q: 13,
            ell: 4,
            g: ElemSpec::Int(2),
            x: ElemSpec::Int(4),
            y: ElemSpec::Int(2), // the recorded row has y = 1
        };
        let err = check_witness_row(&bad).unwrap_err();
        assert!(err.contains("!= 0"), "unexpected message: {err}");
        // a non-generator g is also caught
        let bad_g = WitnessRow {
            q: 13,
            ell: 4,
            g: ElemSpec::Int(3),
            x: ElemSpec::Int(4),
            y: ElemSpec::Int(1),
        };
        assert!(check_witness_row(&bad_g).unwrap_err().contains("generator"));
    }

    #[test]
    fn names_are_stable_and_unique() {
        let names = check_names();
        assert_eq!(names.len(), 41);
        let set: std::collections::BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
    }
}
