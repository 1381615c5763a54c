//! Verification suites comparing closed forms with exhaustive enumeration.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arithfun::TauTable;
use crate::cubics::{
    brute_weight_enumerator, AffineFamily, Census, CensusKey, CensusOptions, CodeSpec, CubicKind, SINGULAR_KINDS,
};
use crate::ecstats::{
    moments, torsion33_distribution_formula, trace_distribution_bruteforce, trace_distribution_formula,
    ShortWeierstrass,
};
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::ff::{field_of_order, is_prime, Field, FieldElement};
use crate::formulas::{self, TraceRestriction};
use crate::macwilliams::{self, TorsionPart};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl Check {
    pub fn equal<T: PartialEq + Display>(name: impl Into<String>, expected: &T, actual: &T) -> Check {
        Check {
            name: name.into(),
            status: if expected == actual { Status::Pass } else { Status::Fail },
            expected: Some(expected.to_string()),
            actual: Some(actual.to_string()),
        }
    }

    pub fn truth(name: impl Into<String>, ok: bool, detail: impl Display) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: None,
            actual: Some(detail.to_string()),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: &str) -> Check {
        Check { name: name.into(), status: Status::Skipped(reason.into()), expected: None, actual: None }
    }

    fn from_error(name: impl Into<String>, e: &Error) -> Check {
        match e {
            Error::BudgetExceeded { .. } => Check::skipped(name, "budget-exceeded"),
            Error::OutOfScope(_) => Check::skipped(name, "out-of-scope"),
            other => Check::truth(name, false, other),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "name": self.name });
        let (status, reason) = match &self.status {
            Status::Pass => ("pass", None),
            Status::Fail => ("fail", None),
            Status::Skipped(r) => ("skipped", Some(r.clone())),
        };
        v["status"] = json!(status);
        if let Some(r) = reason {
            v["reason"] = json!(r);
        }
        if let Some(e) = &self.expected {
            v["expected"] = json!(e);
        }
        if let Some(a) = &self.actual {
            v["actual"] = json!(a);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub q: u64,
    pub scope: Option<&'static str>,
    pub checks: Vec<Check>,
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let count = |s: fn(&Status) -> bool| self.checks.iter().filter(|c| s(&c.status)).count();
        let mut v = json!({
            "suite": self.suite,
            "q": self.q.to_string(),
            "passed": count(|s| *s == Status::Pass).to_string(),
            "failed": count(|s| *s == Status::Fail).to_string(),
            "skipped": count(|s| matches!(s, Status::Skipped(_))).to_string(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        if let Some(s) = self.scope {
            v["scope"] = json!(s);
        }
        if let Some(ms) = self.elapsed_ms {
            v["elapsed_ms"] = json!(ms.to_string());
        }
        v
    }
}

pub const SUITES: [&str; 6] = ["census", "projective", "affine", "dual", "moments", "torsion"];

/// Shared state for the suites of one field, caching the expensive runs.
pub struct Context {
    pub q: u64,
    pub p: u64,
    pub field: Arc<Field>,
    pub budget: u128,
    census_options: CensusOptions,
    census: OnceCell<std::result::Result<Census, Error>>,
    brute: [OnceCell<std::result::Result<WeightEnumerator, Error>>; 2],
}

impl Context {
    /// Records every census statistic when the characteristic is at least 5.
    pub fn new(q: u64, budget: u128) -> Result<Self> {
        let p = field_of_order(q)?.p();
        let options = if p >= 5 { CensusOptions::all() } else { CensusOptions::default() };
        Self::with_census_options(q, budget, options)
    }

    pub fn with_census_options(q: u64, budget: u128, census_options: CensusOptions) -> Result<Self> {
        let field = field_of_order(q)?;
        let p = field.p() as u64;
        Ok(Context {
            q,
            p,
            field,
            budget,
            census_options,
            census: OnceCell::new(),
            brute: [OnceCell::new(), OnceCell::new()],
        })
    }

    pub fn scope(&self) -> Option<&'static str> {
        match self.p {
            2 => Some("paper-unverified"),
            3 => Some("outside-paper-scope"),
            _ => None,
        }
    }

    fn census(&self) -> std::result::Result<&Census, &Error> {
        self.census
            .get_or_init(|| Census::run(self.field.clone(), self.census_options, self.budget))
            .as_ref()
    }

    fn brute(&self, affine: bool) -> std::result::Result<&WeightEnumerator, &Error> {
        self.brute[affine as usize]
            .get_or_init(|| {
                let spec = if affine {
                    CodeSpec::affine(self.field.clone())
                } else {
                    CodeSpec::projective(self.field.clone())
                };
                brute_weight_enumerator(&spec, self.budget)
            })
            .as_ref()
    }

    pub fn run(&self, suite: &str) -> Result<Report> {
        let checks = match suite {
            "census" => self.census_suite(),
            "projective" => self.projective_suite(),
            "affine" => self.affine_suite(),
            "dual" => self.dual_suite(),
            "moments" => self.moments_suite(),
            "torsion" => self.torsion_suite(),
            other => return Err(Error::InvalidArgument(format!("unknown suite {other}"))),
        };
        Ok(Report { suite: suite.into(), q: self.q, scope: self.scope(), checks, elapsed_ms: None })
    }

    fn census_suite(&self) -> Vec<Check> {
        let census = match self.census() {
            Ok(c) => c,
            Err(e) => return vec![Check::from_error("census", e)],
        };
        let table = match formulas::singular_table(self.q) {
            Ok(t) => t,
            Err(e) => return vec![Check::from_error("census", &e)],
        };
        let mut rows: BTreeMap<CubicKind, (u64, Vec<u16>)> = BTreeMap::new();
        for (k, &c) in &census.entries {
            let e = rows.entry(k.kind).or_default();
            e.0 += c;
            if !e.1.contains(&k.weight) {
                e.1.push(k.weight);
            }
        }
        let mut checks = Vec::new();
        for (kind, row) in SINGULAR_KINDS.iter().zip(&table) {
            let (count, weights) = rows.get(kind).cloned().unwrap_or_default();
            let actual = format!("{count} at {weights:?}");
            let expected = format!("{} at [{}]", row.count, row.weight);
            checks.push(Check::equal(format!("census:{}", kind.name()), &expected, &actual));
        }
        let smooth: u128 = rows.iter().filter(|(k, _)| k.is_smooth()).map(|(_, v)| v.0 as u128).sum();
        let expected = BigInt::from(self.q).pow(10) - formulas::singular_total(self.q);
        checks.push(Check::equal("census:smooth-total", &expected, &BigInt::from(smooth)));
        if self.census_options == CensusOptions::all() {
            checks.extend(smooth_class_checks(&self.field, census));
            checks.extend(singular_inflection_checks(self.q, census));
        }
        checks
    }

    fn projective_suite(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        match (formulas::w_sing_projective(self.q), formulas::w_sing_projective_from_table(self.q)) {
            (Ok(a), Ok(b)) => checks.push(Check::equal("singular-enumerator-vs-table", &b, &a)),
            (Err(e), _) | (_, Err(e)) => checks.push(Check::from_error("singular-enumerator-vs-table", &e)),
        }
        let formula = formulas::w_projective(self.q);
        match (&formula, self.brute(false)) {
            (Ok(f), Ok(b)) => checks.push(Check::equal("projective-formula-vs-brute", b, f)),
            (Err(e), _) => checks.push(Check::from_error("projective-formula-vs-brute", e)),
            (_, Err(e)) => checks.push(Check::from_error("projective-formula-vs-brute", e)),
        }
        if let Ok(f) = &formula {
            checks.push(Check::equal("projective-total", &BigInt::from(self.q).pow(10), &f.total()));
        }
        match (formulas::w_smooth_projective(self.q), self.census()) {
            (Ok(s), Ok(c)) => {
                let got = c.projective_enumerator_where(|k| k.kind.is_smooth());
                checks.push(Check::equal("smooth-projective-vs-census", &got, &s));
            }
            (Err(e), _) => checks.push(Check::from_error("smooth-projective-vs-census", &e)),
            (_, Err(e)) => checks.push(Check::from_error("smooth-projective-vs-census", e)),
        }
        checks
    }

    fn affine_suite(&self) -> Vec<Check> {
        if self.p == 3 {
            return vec![Check::skipped("affine", "char3-out-of-scope")];
        }
        let mut checks = Vec::new();
        let formula = formulas::w_affine(self.q);
        match (&formula, self.brute(true)) {
            (Ok(f), Ok(b)) => checks.push(Check::equal("affine-formula-vs-brute", b, f)),
            (Err(e), _) => checks.push(Check::from_error("affine-formula-vs-brute", e)),
            (_, Err(e)) => checks.push(Check::from_error("affine-formula-vs-brute", e)),
        }
        if let Ok(f) = &formula {
            checks.push(Check::equal("affine-total", &BigInt::from(self.q).pow(10), &f.total()));
        }
        let census = match self.census() {
            Ok(c) => c,
            Err(e) => {
                checks.push(Check::from_error("affine-pieces", e));
                return checks;
            }
        };
        let q = self.q;
        type Piece = (&'static str, Box<dyn Fn(&CensusKey) -> bool>, Result<WeightEnumerator>);
        let items = formulas::noline_items(q);
        let item = |i: usize| items.as_ref().map(|v| v[i].clone()).map_err(|e| Error::InvalidArgument(e.to_string()));
        let pieces: Vec<Piece> = vec![
            ("affine:cusp", Box::new(|k| k.affine == AffineFamily::Cusp), formulas::w_cusp_affine(q)),
            ("affine:split-node", Box::new(|k| k.affine == AffineFamily::Split), formulas::w_split_affine(q)),
            ("affine:nonsplit-node", Box::new(|k| k.affine == AffineFamily::Nonsplit), formulas::w_nonsplit_affine(q)),
            ("affine:conjugate-triple", Box::new(|k| k.affine == AffineFamily::ConjugateTriple), item(0)),
            ("affine:triple-line-at-infinity", Box::new(|k| k.affine == AffineFamily::TripleLineAtInfinity), item(1)),
            ("affine:infinity-plus-conic", Box::new(|k| k.affine == AffineFamily::InfinityPlusConic), item(2)),
            (
                "affine:infinity-plus-conjugate-pair",
                Box::new(|k| k.affine == AffineFamily::InfinityPlusConjugatePair),
                item(3),
            ),
            (
                "affine:exactly-two-lines",
                Box::new(|k| k.affine == AffineFamily::RationalAffineLines(2)),
                formulas::exactly_two_lines(q),
            ),
            (
                "affine:exactly-three-lines",
                Box::new(|k| k.affine == AffineFamily::RationalAffineLines(3)),
                formulas::exactly_three_lines(q),
            ),
            (
                "affine:containing-a-line",
                Box::new(|k| matches!(k.affine, AffineFamily::RationalAffineLines(_))),
                formulas::w_line_affine(q),
            ),
            (
                "affine:smooth",
                Box::new(|k| matches!(k.affine, AffineFamily::Smooth(_))),
                formulas::w_smooth_affine(q),
            ),
        ];
        for (name, pred, formula) in pieces {
            match formula {
                Ok(f) => checks.push(Check::equal(name, &census.affine_enumerator_where(pred), &f)),
                Err(e) => checks.push(Check::from_error(name, &e)),
            }
        }
        if let Ok(r) = formulas::w_smooth_affine_with(q, TraceRestriction::NonzeroMod3) {
            let got = census.affine_enumerator_where(|k| matches!(k.affine, AffineFamily::Smooth(_)));
            checks.push(Check::truth(
                "affine:smooth-restricted-reading-rejected",
                r != got,
                format!("restricted reading total {}", r.total()),
            ));
        }
        checks
    }

    fn dual_suite(&self) -> Vec<Check> {
        if self.p == 2 || self.p == 3 {
            return vec![Check::skipped("dual", if self.p == 3 { "char3-out-of-scope" } else { "char2-out-of-scope" })];
        }
        let q = self.q;
        let mut checks = Vec::new();
        let routes: [(&str, Result<WeightEnumerator>, fn(u64, u32) -> Result<BigInt>, bool); 2] = [
            ("proj", formulas::w_projective(q), macwilliams::dual_coeff_projective, false),
            ("affine", formulas::w_affine(q), macwilliams::dual_coeff_affine, true),
        ];
        for (code, formula, closed, affine) in routes {
            let formula = match formula {
                Ok(f) => f,
                Err(e) => {
                    checks.push(Check::from_error(format!("dual:{code}"), &e));
                    continue;
                }
            };
            let from_formula = macwilliams::dual_coefficients(&formula, q, 0..=10);
            let from_oracle = self.brute(affine).ok().map(|b| macwilliams::dual_coefficients(b, q, 0..=10));
            for j in 5..=10u32 {
                let name = format!("dual:{code}:j={j}");
                let c = match closed(q, j) {
                    Ok(c) => c,
                    Err(Error::OutOfScope(_)) => {
                        checks.push(Check::skipped(name, "prime-power-weight10-not-computed"));
                        continue;
                    }
                    Err(e) => {
                        checks.push(Check::from_error(name, &e));
                        continue;
                    }
                };
                match &from_formula {
                    Ok(w) => checks.push(Check::equal(format!("{name}:closed-vs-formula"), &c, &w.get(j as usize))),
                    Err(e) => checks.push(Check::from_error(format!("{name}:closed-vs-formula"), e)),
                }
                match &from_oracle {
                    Some(Ok(w)) => checks.push(Check::equal(format!("{name}:closed-vs-brute"), &c, &w.get(j as usize))),
                    Some(Err(e)) => checks.push(Check::from_error(format!("{name}:closed-vs-brute"), e)),
                    None => checks.push(Check::skipped(format!("{name}:closed-vs-brute"), "budget-exceeded")),
                }
            }
            if let Ok(w) = &from_formula {
                let low: Vec<BigInt> = (1..5).map(|j| w.get(j)).collect();
                checks.push(Check::truth(format!("dual:{code}:weights-1-4-vanish"), low.iter().all(Zero::is_zero), format!("{low:?}")));
            }
            if q <= 13 {
                let back = macwilliams::transform(&formula, q).and_then(|d| macwilliams::transform(&d, q));
                match back {
                    Ok(b) => checks.push(Check::equal(format!("dual:{code}:involution"), &formula, &b)),
                    Err(e) => checks.push(Check::from_error(format!("dual:{code}:involution"), &e)),
                }
            }
        }
        checks
    }

    fn moments_suite(&self) -> Vec<Check> {
        let q = self.q;
        let mut checks = Vec::new();
        let formula = match trace_distribution_formula(q) {
            Ok(f) => f,
            Err(e) => return vec![Check::from_error("moments", &e)],
        };
        checks.push(Check::equal("trace-mass-sum", &BigRational::one(), &formula.total_mass()));
        let symmetric = formula.masses.iter().all(|(t, m)| formula.mass(-t) == *m);
        checks.push(Check::truth("trace-mass-symmetry", symmetric, ""));
        if self.p >= 5 && q <= 200 {
            match trace_distribution_bruteforce(q) {
                Ok(b) => checks.push(Check::truth("trace-formula-vs-brute", b.masses == formula.masses, format!("{} traces", b.masses.len()))),
                Err(e) => checks.push(Check::from_error("trace-formula-vs-brute", &e)),
            }
        } else {
            checks.push(Check::skipped("trace-formula-vs-brute", "short-weierstrass-needs-p>=5"));
        }
        if !is_prime(q) || q < 5 {
            checks.push(Check::skipped("moment-rows", "prime-p>=5-only"));
            return checks;
        }
        let tau = match TauTable::new(q).and_then(|t| t.get(q)) {
            Ok(t) => t,
            Err(e) => {
                checks.push(Check::from_error("moment-rows", &e));
                return checks;
            }
        };
        for r in 0..=5u32 {
            let expected = BigRational::from_integer(birch_row(q, r, &tau));
            let actual = moments(q, r).map(|m| m * BigInt::from(q));
            match actual {
                Ok(a) => checks.push(Check::equal(format!("moment:2R={}", 2 * r), &expected, &a)),
                Err(e) => checks.push(Check::from_error(format!("moment:2R={}", 2 * r), &e)),
            }
        }
        checks
    }

    fn torsion_suite(&self) -> Vec<Check> {
        let q = self.q;
        let mut checks = Vec::new();
        if self.p >= 5 && q <= 200 {
            match (torsion33_distribution_formula(q), trace_distribution_bruteforce(q)) {
                (Ok(f), Ok(b)) => {
                    let restricted = b.restricted.clone().unwrap_or_default();
                    checks.push(Check::truth("full-3-torsion-formula-vs-brute", f == restricted, format!("{} traces", f.len())));
                    let sub = b.subgroup_masses.unwrap_or_default();
                    let ok = b.masses.iter().all(|(t, m)| {
                        let expect = if (q as i64 + 1 - t) % 3 == 0 { m.clone() } else { BigRational::zero() };
                        sub.get(t) == Some(&expect)
                    });
                    checks.push(Check::truth("3-subgroup-bucketing", ok, ""));
                    let bounded = restricted.iter().all(|(t, m)| *m <= b.masses[t]);
                    checks.push(Check::truth("restricted-below-unrestricted", bounded, ""));
                }
                (Err(e), _) | (_, Err(e)) => checks.push(Check::from_error("full-3-torsion-formula-vs-brute", &e)),
            }
        } else {
            checks.push(Check::skipped("full-3-torsion-formula-vs-brute", "short-weierstrass-needs-p>=5"));
        }
        let part = match (is_prime(q), q % 3) {
            (true, 1) => Some(TorsionPart::FullTorsion),
            (true, 2) if q > 2 => Some(TorsionPart::Subgroup),
            _ => None,
        };
        match part.map(|p| macwilliams::torsion_dual_identities(q, p)) {
            Some(Ok(r)) => {
                checks.push(Check::truth("torsion-identity:prefactor-divides", r.divisible(), &r.remainder));
                checks.push(Check::truth("torsion-identity:integral-trace", r.integral_trace(), &r.solved_trace));
                checks.push(Check::equal("torsion-identity:moment-route", &r.coefficient, &r.coefficient_by_moments));
            }
            Some(Err(e)) => checks.push(Check::from_error("torsion-identity", &e)),
            None => checks.push(Check::skipped("torsion-identity", "needs-prime-q")),
        }
        checks
    }
}

/// `p E_p(t^{2R})` for prime `p >= 5`, as polynomials in `p` and `tau(p)`.
pub fn birch_row(p: u64, r: u32, tau: &BigInt) -> BigInt {
    let x = BigInt::from(p);
    let h = |c: &[i64]| c.iter().fold(BigInt::zero(), |acc, &k| acc * &x + k);
    match r {
        0 => x.clone(),
        1 => h(&[1, 0, -1]),
        2 => h(&[2, 0, -3, -1]),
        3 => h(&[5, 0, -9, -5, -1]),
        4 => h(&[14, 0, -28, -20, -7, -1]),
        5 => h(&[42, 0, -90, -75, -35, -9, -1]) - tau,
        _ => panic!("no closed form for 2R = {}", 2 * r),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Expected share of each inflection count for a smooth class with the
/// given 3-torsion size.
pub fn smooth_inflection_shares(torsion: u32) -> BTreeMap<u8, BigRational> {
    match torsion {
        1 => [(1, rat(1, 1))].into(),
        3 => [(0, rat(2, 3)), (3, rat(1, 3))].into(),
        9 => [(0, rat(8, 9)), (9, rat(1, 9))].into(),
        _ => panic!("3-torsion of size {torsion}"),
    }
}

/// Expected share of each inflection count for singular irreducible cubics.
pub fn singular_inflection_shares(q: u64, kind: CubicKind) -> BTreeMap<u8, BigRational> {
    let split_shares = || [(0, rat(2, 3)), (3, rat(1, 3))].into();
    match (q % 3, kind) {
        (1, CubicKind::SplitNode) | (2, CubicKind::NonsplitNode) => split_shares(),
        _ => [(1, rat(1, 1))].into(),
    }
}

fn shares(counts: &BTreeMap<u8, u64>) -> BTreeMap<u8, BigRational> {
    let total: u64 = counts.values().sum();
    counts.iter().map(|(&k, &c)| (k, rat(c as i64, total as i64))).collect()
}

/// The line-count identities for an absolutely irreducible cubic with
/// `n = q + 1 - t` rational points, `i` inflection lines and profile `l`.
pub fn line_profile_consistent(q: u64, singular: bool, t: i64, i: i64, l: [u16; 4]) -> bool {
    let q = q as i64;
    let l = l.map(|x| x as i64);
    let n = q + 1 - t;
    let (l2, l3x3) = if singular {
        (2 * q - 2 * t - i, (q - t) * (q - t - 1) / 2 - (q - t - i))
    } else {
        (n - i, n * (n - 1) / 2 - (n - i))
    };
    l.iter().sum::<i64>() == q * q + q + 1 && l[1] + 2 * l[2] + 3 * l[3] == (q + 1) * n && l[2] == l2 && 3 * l[3] == l3x3
}

/// `(cubic, line)` pairs meeting in `i` rational points, per cubic
/// polynomial of an orbit, for `i = 0..3`.
pub fn line_pair_polynomials(q: i64, t: i64) -> [BigRational; 4] {
    [
        rat(q * q + q * t + t * t - q + t, 3),
        rat(q * q - t * t + q + t + 2, 2),
        rat(q - t, 1),
        rat((q - t) * (q - t - 1), 6),
    ]
}

/// Inflection shares, orbit sizes and line profiles of smooth classes.
pub fn smooth_class_checks(field: &Field, census: &Census) -> Vec<Check> {
    let q = field.q() as u64;
    let mut by_class: BTreeMap<(u32, u32), BTreeMap<u8, u64>> = BTreeMap::new();
    let mut pairs: BTreeMap<(u32, u32), (i64, [BigInt; 4])> = BTreeMap::new();
    let mut profiles_ok = true;
    let mut keys = 0usize;
    for (k, &c) in &census.entries {
        let (CubicKind::Smooth(t), Some(class), Some(i)) = (k.kind, k.class, k.inflections) else { continue };
        *by_class.entry((class.a, class.b)).or_default().entry(i).or_insert(0) += c;
        if let Some(l) = k.line_profile {
            keys += 1;
            profiles_ok &= line_profile_consistent(q, false, t as i64, i as i64, l);
            let e = pairs.entry((class.a, class.b)).or_insert_with(|| (t as i64, Default::default()));
            for (acc, &li) in e.1.iter_mut().zip(&l) {
                *acc += BigInt::from(c) * li;
            }
        }
    }
    let gl = formulas::gl3_order(q);
    let mut share_bad = Vec::new();
    let mut orbit_bad = Vec::new();
    let mut pair_bad = Vec::new();
    for (&(a, b), (t, sums)) in &pairs {
        let e = ShortWeierstrass::new(FieldElement(a), FieldElement(b));
        let orbit = BigRational::from_integer(&gl / BigInt::from(e.automorphisms(field)));
        if sums.iter().zip(line_pair_polynomials(q as i64, *t)).any(|(s, p)| BigRational::from_integer(s.clone()) != &orbit * p) {
            pair_bad.push((a, b));
        }
    }
    for (&(a, b), counts) in &by_class {
        let e = ShortWeierstrass::new(FieldElement(a), FieldElement(b));
        if shares(counts) != smooth_inflection_shares(e.three_torsion(field)) {
            share_bad.push((a, b));
        }
        let total: u64 = counts.values().sum();
        if BigInt::from(total) * BigInt::from(e.automorphisms(field)) != gl {
            orbit_bad.push((a, b));
        }
    }
    vec![
        Check::truth(
            "inflection-shares:smooth",
            share_bad.is_empty() && !by_class.is_empty(),
            format!("{} classes, mismatches {:?}", by_class.len(), share_bad),
        ),
        Check::truth(
            "orbit-sizes:smooth",
            orbit_bad.is_empty() && !by_class.is_empty(),
            format!("{} classes, mismatches {:?}", by_class.len(), orbit_bad),
        ),
        Check::truth("line-profiles:smooth", profiles_ok && keys > 0, format!("{keys} keys")),
        Check::truth(
            "line-pair-averages:smooth",
            pair_bad.is_empty() && !pairs.is_empty(),
            format!("{} classes, mismatches {:?}", pairs.len(), pair_bad),
        ),
    ]
}

/// Inflection shares and line profiles of cuspidal and nodal cubics.
pub fn singular_inflection_checks(q: u64, census: &Census) -> Vec<Check> {
    let mut checks = Vec::new();
    for (kind, t) in [(CubicKind::Cusp, 0i64), (CubicKind::SplitNode, 1), (CubicKind::NonsplitNode, -1)] {
        let mut counts: BTreeMap<u8, u64> = BTreeMap::new();
        let mut profiles_ok = true;
        for (k, &c) in census.entries.iter().filter(|(k, _)| k.kind == kind) {
            let Some(i) = k.inflections else { continue };
            *counts.entry(i).or_insert(0) += c;
            if let Some(l) = k.line_profile {
                profiles_ok &= line_profile_consistent(q, true, t, i as i64, l);
            }
        }
        let got = shares(&counts);
        let want = singular_inflection_shares(q, kind);
        let show = |m: &BTreeMap<u8, BigRational>| format!("{:?}", m.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>());
        checks.push(Check::equal(format!("inflection-shares:{}", kind.name()), &show(&want), &show(&got)));
        checks.push(Check::truth(format!("line-profiles:{}", kind.name()), profiles_ok && !counts.is_empty(), ""));
    }
    checks
}
