//! Acceptance criteria, one line per criterion. All comparisons are exact:
//! integers and rationals must agree with zero tolerance.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use cubic_rm::arithfun::{eta_product, TauTable};
use cubic_rm::cli::verify::{Check, Context, Status};
use cubic_rm::cubics::{brute_weight_enumerator, enumerate_generator, puncture, CensusOptions, CodeSpec, DEFAULT_BUDGET};
use cubic_rm::ecstats::{trace_distribution_bruteforce, trace_distribution_formula};
use cubic_rm::ff::{field_of_order, prime_power, Field, FieldElement};
use cubic_rm::formulas;
use cubic_rm::macwilliams::{self, torsion_dual_identities, TorsionPart};
use cubic_rm::plane::Normalization;

enum Verdict {
    Pass,
    Fail,
    Unattained,
}

struct Line {
    criterion: &'static str,
    verdict: Verdict,
    detail: String,
}

fn judge(criterion: &'static str, checks: &[Check]) -> Line {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| match &c.status {
            Status::Skipped(r) => format!("{} skipped ({r})", c.name),
            _ => format!("{} expected {:?} got {:?}", c.name, c.expected, c.actual),
        })
        .collect();
    let verdict = if bad.is_empty() && !checks.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let detail = if bad.is_empty() { format!("{} checks", checks.len()) } else { bad.join("; ") };
    Line { criterion, verdict, detail }
}

fn pick(checks: Vec<Check>, prefix: &str) -> Vec<Check> {
    checks.into_iter().filter(|c| c.name.starts_with(prefix)).collect()
}

fn tag(q: u64, mut checks: Vec<Check>) -> Vec<Check> {
    for c in &mut checks {
        c.name = format!("q={q}:{}", c.name);
    }
    checks
}

fn suite(ctx: &Context, name: &str) -> Vec<Check> {
    tag(ctx.q, ctx.run(name).expect("known suite").checks)
}

fn census_rows(ctx5: &Context, ctx7: &Context) -> Line {
    let mut checks = pick(suite(ctx5, "census"), "q=5:census:");
    checks.extend(pick(suite(ctx7, "census"), "q=7:census:"));
    judge("1 singular census q=5,7 (15 rows, counts and weights)", &checks)
}

fn projective(ctx5: &Context, ctx7: &Context) -> Line {
    let mut checks = suite(ctx5, "projective");
    checks.extend(suite(ctx7, "projective"));
    judge("2 projective enumerator = brute oracle q=5,7", &checks)
}

fn affine(ctx5: &Context, ctx7: &Context) -> Line {
    let mut checks = suite(ctx5, "affine");
    checks.extend(suite(ctx7, "affine"));
    judge("3 affine enumerator = brute oracle q=5,7 (with pieces)", &checks)
}

fn traces() -> Line {
    let mut checks = Vec::new();
    for q in [5u64, 7, 11, 13, 25, 49] {
        let f = trace_distribution_formula(q).unwrap();
        let b = trace_distribution_bruteforce(q).unwrap();
        checks.push(Check::truth(format!("q={q}:formula-vs-brute"), f.masses == b.masses, ""));
        checks.push(Check::equal(format!("q={q}:mass-sum"), &BigRational::from_integer(1.into()), &f.total_mass()));
        if q == 25 || q == 49 {
            let r = (q as f64).sqrt() as i64;
            for t in [0, r, 2 * r] {
                checks.push(Check::equal(format!("q={q}:t={t}"), &b.mass(t), &f.mass(t)));
            }
        }
    }
    judge("4 trace distributions formula = brute q=5,7,11,13,25,49", &checks)
}

fn birch() -> Line {
    let table = TauTable::new(13).unwrap();
    let mut checks = vec![
        Check::equal("tau(5)", &BigInt::from(4830), &table.get(5).unwrap()),
        Check::equal("tau(7)", &BigInt::from(-16744), &table.get(7).unwrap()),
    ];
    for p in [5u64, 7, 11, 13] {
        let ctx = Context::new(p, 0).unwrap();
        checks.extend(pick(suite(&ctx, "moments"), &format!("q={p}:moment:")));
    }
    judge("5 moment rows p=5,7,11,13 with tau from the eta product", &checks)
}

fn collinear_projective(q: u64) -> BigInt {
    BigInt::from((q - 1) * (q * q + q + 1)) * binomial(BigInt::from(q + 1), BigInt::from(5))
}

fn collinear_affine(q: u64) -> BigInt {
    BigInt::from((q - 1) * (q * q + q)) * binomial(BigInt::from(q), BigInt::from(5))
}

fn dual(ctx5: &Context, ctx7: &Context, lines: &mut Vec<Line>) {
    let mut checks = suite(ctx5, "dual");
    checks.extend(suite(ctx7, "dual"));
    checks.push(Check::equal("q=5:proj:j=5:spot", &BigInt::from(744), &collinear_projective(5)));
    checks.push(Check::equal("q=5:affine:j=5:spot", &BigInt::from(120), &collinear_affine(5)));
    for q in [5u64, 7, 25] {
        checks.push(Check::equal(
            format!("q={q}:proj:j=5:collinear"),
            &collinear_projective(q),
            &macwilliams::dual_coeff_projective(q, 5).unwrap(),
        ));
        checks.push(Check::equal(
            format!("q={q}:affine:j=5:collinear"),
            &collinear_affine(q),
            &macwilliams::dual_coeff_affine(q, 5).unwrap(),
        ));
    }
    let w25 = (formulas::w_projective(25).unwrap(), formulas::w_affine(25).unwrap());
    for j in 5..=9u32 {
        let a = macwilliams::dual_coefficient(&w25.0, 25, j as usize).unwrap();
        checks.push(Check::equal(format!("q=25:proj:j={j}:closed-vs-formula"), &macwilliams::dual_coeff_projective(25, j).unwrap(), &a));
        let b = macwilliams::dual_coefficient(&w25.1, 25, j as usize).unwrap();
        checks.push(Check::equal(format!("q=25:affine:j={j}:closed-vs-formula"), &macwilliams::dual_coeff_affine(25, j).unwrap(), &b));
    }
    for q in [11u64, 13] {
        let wp = formulas::w_projective(q).unwrap();
        let wa = formulas::w_affine(q).unwrap();
        for j in 5..=10u32 {
            checks.push(Check::equal(
                format!("q={q}:proj:j={j}:closed-vs-formula"),
                &macwilliams::dual_coeff_projective(q, j).unwrap(),
                &macwilliams::dual_coefficient(&wp, q, j as usize).unwrap(),
            ));
            checks.push(Check::equal(
                format!("q={q}:affine:j={j}:closed-vs-formula"),
                &macwilliams::dual_coeff_affine(q, j).unwrap(),
                &macwilliams::dual_coefficient(&wa, q, j as usize).unwrap(),
            ));
        }
    }
    lines.push(judge("6 dual coefficients: closed forms = transform of formula = transform of oracle", &checks));
    lines.push(Line {
        criterion: "6 dual coefficients: transform-of-oracle leg at q=25 (j=6..9) and q=11,13",
        verdict: Verdict::Unattained,
        detail: "exhaustive oracle needs q^10 codewords; j=5 at q=25 covered by the collinear count".into(),
    });
}

fn inflections(ctx5: &Context) -> Line {
    let checks = suite(ctx5, "census");
    let checks: Vec<Check> = checks
        .into_iter()
        .filter(|c| ["inflection-shares", "orbit-sizes", "line-p"].iter().any(|p| c.name.contains(p)))
        .collect();
    judge("7 inflection shares per class at q=5 (smooth and singular)", &checks)
}

fn torsion() -> Line {
    let mut checks = Vec::new();
    for q in [7u64, 13, 25] {
        let ctx = Context::new(q, 0).unwrap();
        let c = suite(&ctx, "torsion");
        checks.extend(c.into_iter().filter(|c| !c.name.contains("torsion-identity")));
    }
    let full = eta_product(&[(3, 8)], 16);
    let sub = eta_product(&[(1, 6), (3, 6)], 16);
    for (q, part, oracle) in [
        (7u64, TorsionPart::FullTorsion, &full),
        (13, TorsionPart::FullTorsion, &full),
        (5, TorsionPart::Subgroup, &sub),
        (11, TorsionPart::Subgroup, &sub),
    ] {
        let r = torsion_dual_identities(q, part).unwrap();
        checks.push(Check::truth(format!("q={q}:divisible"), r.divisible(), &r.remainder));
        checks.push(Check::truth(format!("q={q}:integral-trace"), r.integral_trace(), &r.solved_trace));
        checks.push(Check::equal(format!("q={q}:moment-route"), &r.coefficient, &r.coefficient_by_moments));
        let expected = BigRational::from_integer(oracle[q as usize - 1].clone());
        checks.push(Check::equal(format!("q={q}:eta-quotient"), &expected, &r.solved_trace));
    }
    judge("8 full 3-torsion masses q=7,13,25 and torsion-restricted dual identities", &checks)
}

fn field_axioms(f: &Field) -> bool {
    let els: Vec<FieldElement> = f.elements().collect();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    els.iter().all(|&a| {
        f.add(a, zero) == a
            && f.mul(a, one) == a
            && f.add(a, f.neg(a)) == zero
            && (a.is_zero() || f.mul(a, f.inv(a).unwrap()) == one)
            && els.iter().all(|&b| {
                f.add(a, b) == f.add(b, a)
                    && f.mul(a, b) == f.mul(b, a)
                    && els.iter().all(|&c| {
                        f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                            && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    })
            })
    })
}

fn properties() -> Line {
    let mut checks = Vec::new();
    for q in (2..=49).filter(|&q| prime_power(q).is_some()) {
        let f = field_of_order(q).unwrap();
        checks.push(Check::truth(format!("field-axioms:q={q}"), field_axioms(&f), ""));
    }
    for (name, w) in [("proj", formulas::w_projective(5).unwrap()), ("affine", formulas::w_affine(5).unwrap())] {
        let back = macwilliams::transform(&macwilliams::transform(&w, 5).unwrap(), 5).unwrap();
        checks.push(Check::equal(format!("involution:{name}:q=5"), &w, &back));
    }
    let f5 = field_of_order(5).unwrap();
    let proj = CodeSpec::projective(f5.clone());
    let at_infinity: Vec<usize> = proj.points().iter().enumerate().filter(|(_, x)| x[2].is_zero()).map(|(i, _)| i).collect();
    let punctured = enumerate_generator(&f5, &puncture(&proj.generator_matrix(), &at_infinity));
    let affine = brute_weight_enumerator(&CodeSpec::affine(f5.clone()), DEFAULT_BUDGET).unwrap();
    checks.push(Check::equal("puncture:q=5", &affine, &punctured));
    for q in [4u64, 5] {
        let f = field_of_order(q).unwrap();
        let base = brute_weight_enumerator(&CodeSpec::projective(f.clone()), DEFAULT_BUDGET).unwrap();
        let last = CodeSpec::projective_with(f.clone(), Normalization::LastNonzero);
        let n = last.length();
        let perm: Vec<usize> = (0..n).map(|i| (5 * i + 3) % n).collect();
        assert!(!n.is_multiple_of(5));
        let moved = last.permuted(&perm);
        let mut gen = moved.generator_matrix();
        let units: Vec<FieldElement> = f.elements().filter(|a| !a.is_zero()).collect();
        for row in &mut gen {
            for (i, x) in row.iter_mut().enumerate() {
                *x = f.mul(*x, units[i % units.len()]);
            }
        }
        checks.push(Check::equal(format!("monomial-invariance:q={q}"), &base, &enumerate_generator(&f, &gen)));
    }
    judge("9 property suites: field axioms q<=49, involution, puncture, monomial invariance", &checks)
}

fn main() -> ExitCode {
    let ctx5 = Context::with_census_options(5, DEFAULT_BUDGET, CensusOptions::all()).unwrap();
    let ctx7 = Context::with_census_options(7, DEFAULT_BUDGET, CensusOptions::default()).unwrap();
    let mut lines = vec![census_rows(&ctx5, &ctx7), projective(&ctx5, &ctx7), affine(&ctx5, &ctx7), traces(), birch()];
    dual(&ctx5, &ctx7, &mut lines);
    lines.extend([inflections(&ctx5), torsion(), properties()]);
    let mut failed = 0;
    for l in &lines {
        let v = match l.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
            Verdict::Unattained => "UNATTAINED",
        };
        println!("{v:<10} criterion {} [exact] ({})", l.criterion, l.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
