//! Verification suites behind the `verify` subcommand.
//!
//! Every suite recomputes from scratch. The result cache is never consulted
//! for answers; when a cache is supplied it is only audited, so a tampered
//! or stale cache file surfaces as a reported failure instead of a wrong
//! number.
//!
//! Suite names are part of the command-line contract: `paper-tables` checks
//! the frozen reference tables, `theorem-3-3` cross-validates the two
//! independent computational paths (orbit cochains vs homotopy quotient),
//! `exactness` checks the pair sequences, and `all` additionally covers
//! stability under a larger ambient sphere and the coefficient-system
//! degenerations.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian::{cohomology_of_complex, cokernel, kernel, FgAbGroup, IntegerMatrix};
use crate::borel::{borel_cohomology, group_cohomology_z2, h_theory, stability_check};
use crate::bredon::bredon_cohomology;
use crate::cache::{CacheAudit, CacheKey, ResultCache};
use crate::catalog::{self, OracleTheory};
use crate::coeff::{fixed_set_system, std_system, CoefficientSystem, StdSystem};
use crate::error::EqError;
use crate::sequences::{check_exactness, les_of_pair, LongExactSequence};
use crate::zcw::Z2CwComplex;

/// One verification check: a stable name, a verdict, and enough detail to
/// act on a failure.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: String,
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed).count()
    }

    /// One line per check plus a closing summary, stable across runs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            if l.passed {
                out.push_str(&format!("pass  {}\n", l.name));
            } else {
                out.push_str(&format!("FAIL  {}: {}\n", l.name, l.detail));
            }
        }
        out.push_str(&format!(
            "{}: {}/{} checks passed\n",
            self.suite,
            self.lines.len() - self.failures(),
            self.lines.len()
        ));
        out
    }
}

pub fn run_suite(suite: &str, cache: Option<&ResultCache>) -> Result<VerifyReport, EqError> {
    match suite {
        "paper-tables" => Ok(paper_tables()),
        "theorem-3-3" => Ok(theorem_3_3(cache)),
        "exactness" => Ok(exactness()),
        "all" => Ok(run_all(cache)),
        other => Err(EqError::Message(format!(
            "unknown suite '{other}'; expected paper-tables, theorem-3-3, exactness, or all"
        ))),
    }
}

fn dim_of(x: &Z2CwComplex) -> usize {
    x.graded_len().saturating_sub(1)
}

fn twist_system(twist: u8) -> CoefficientSystem {
    match twist {
        0 => std_system(StdSystem::ZeroToZ),
        _ => std_system(StdSystem::ZeroToZtilde),
    }
}

fn pass(name: impl Into<String>, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        passed: true,
        detail: detail.into(),
    }
}

fn fail(name: impl Into<String>, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        passed: false,
        detail: detail.into(),
    }
}

fn cmp_line(name: String, expected: &FgAbGroup, got: Result<FgAbGroup, EqError>) -> CheckLine {
    match got {
        Ok(g) if &g == expected => pass(name, g.to_string()),
        Ok(g) => fail(name, format!("expected {expected}, got {g}")),
        Err(e) => fail(name, format!("computation failed: {e}")),
    }
}

/// Collect degree-indexed mismatches into one line.
fn rows_line(name: String, rows: Vec<(usize, FgAbGroup, Result<FgAbGroup, EqError>)>) -> CheckLine {
    let mut bad = Vec::new();
    for (deg, expected, got) in rows {
        match got {
            Ok(g) if g == expected => {}
            Ok(g) => bad.push(format!("degree {deg}: expected {expected}, got {g}")),
            Err(e) => bad.push(format!("degree {deg}: computation failed: {e}")),
        }
    }
    if bad.is_empty() {
        pass(name, String::new())
    } else {
        fail(name, bad.join("; "))
    }
}

// ---------------------------------------------------------------------------
// paper-tables: the frozen reference values.
// ---------------------------------------------------------------------------

fn oracle_lines(name: &str) -> Vec<CheckLine> {
    let x = match catalog::build(name) {
        Ok(x) => x,
        Err(e) => return vec![fail(format!("build {name}"), e.to_string())],
    };
    let table = match catalog::oracle_table(name) {
        Ok(t) => t,
        Err(e) => return vec![fail(format!("reference table for {name}"), e.to_string())],
    };
    let mut lines = Vec::new();

    let cc = x.ordinary_cochain_complex();
    let rows = table
        .ordinary
        .iter()
        .enumerate()
        .map(|(d, exp)| {
            (
                d,
                exp.clone(),
                cohomology_of_complex(&cc, d).map_err(EqError::from),
            )
        })
        .collect();
    lines.push(rows_line(format!("ordinary cohomology of {name}"), rows));

    let fix = x.fixed_subcomplex().map(|(f, _)| f);
    for entry in &table.equivariant {
        let (desc, got) = match &entry.theory {
            OracleTheory::Bredon(sys_name) => {
                let got = crate::coeff::parse_system(sys_name)
                    .and_then(|sys| bredon_cohomology(&x, &sys, entry.degree));
                (format!("orbit cochains {sys_name}"), got)
            }
            OracleTheory::Borel { twist } => (
                format!("homotopy quotient twist {twist}"),
                borel_cohomology(&x, *twist, entry.degree, None),
            ),
            OracleTheory::BorelRelFixed { twist } => {
                let got = match &fix {
                    Ok(f) => borel_cohomology(&x, *twist, entry.degree, Some(f)),
                    Err(e) => Err(EqError::Message(format!("fixed subcomplex: {e}"))),
                };
                (format!("homotopy quotient twist {twist} rel fixed"), got)
            }
        };
        lines.push(cmp_line(
            format!("{name} {desc} H^{}", entry.degree),
            &entry.expected,
            got,
        ));
    }
    lines
}

fn lens_headline_lines() -> Vec<CheckLine> {
    let sys = std_system(StdSystem::ZeroToZtilde);
    let mut lines = Vec::new();
    for q in 1usize..=3 {
        let name = format!("lens-{}", 2 * q);
        let expected = FgAbGroup::new(0, vec![2 * q as i64]);
        let got = catalog::lens(2 * q).and_then(|x| bredon_cohomology(&x, &sys, 2));
        lines.push(cmp_line(
            format!("{name} sign-system H^2 is Z/{}", 2 * q),
            &expected,
            got,
        ));
    }
    // The q = 2 group is cyclic of order four, not a product of two
    // two-torsion factors; invariant factors decide this exactly.
    let got = catalog::lens(4).and_then(|x| bredon_cohomology(&x, &sys, 2));
    lines.push(match got {
        Ok(g) if g.torsion() == [BigInt::from(4)] && g.free_rank() == 0 => pass(
            "lens-4 order-four group is cyclic",
            "invariant factors [4]",
        ),
        Ok(g) => fail(
            "lens-4 order-four group is cyclic",
            format!("expected invariant factors [4], got {g}"),
        ),
        Err(e) => fail("lens-4 order-four group is cyclic", e.to_string()),
    });
    lines
}

fn restriction_table_lines() -> Vec<CheckLine> {
    let z2 = FgAbGroup::new(0, vec![2]);
    let z2z2 = FgAbGroup::new(0, vec![2, 2]);
    let per_q: Vec<Vec<CheckLine>> = (1usize..=3)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&q| {
            let name = format!("lens-{}", 2 * q);
            let seq = catalog::lens(2 * q).and_then(|x| {
                let (fix, _) = x.fixed_subcomplex()?;
                les_of_pair(&x, &fix, 1, 2)
            });
            let seq = match seq {
                Ok(s) => s,
                Err(e) => return vec![fail(format!("restriction table for {name}"), e.to_string())],
            };
            let mut lines = Vec::new();
            let h1_total = &seq.entries[LongExactSequence::total_index(1)].group;
            let h1_sub = &seq.entries[LongExactSequence::sub_index(1)].group;
            lines.push(cmp_line(
                format!("{name} twisted H^1 is Z/2"),
                &z2,
                Ok(h1_total.clone()),
            ));
            lines.push(cmp_line(
                format!("{name} fixed-circle twisted H^1 is Z/2 + Z/2"),
                &z2z2,
                Ok(h1_sub.clone()),
            ));

            let i1 = &seq.maps[LongExactSequence::total_index(1)];
            let k1 = kernel(i1);
            let c1 = cokernel(i1);
            lines.push(if k1.is_trivial() && c1 == z2 {
                pass(
                    format!("{name} degree-1 restriction is injective with Z/2 cokernel"),
                    String::new(),
                )
            } else {
                fail(
                    format!("{name} degree-1 restriction is injective with Z/2 cokernel"),
                    format!("kernel {k1}, cokernel {c1}"),
                )
            });

            let i2 = &seq.maps[LongExactSequence::total_index(2)];
            let k2 = kernel(i2);
            let want = BigInt::from(q);
            lines.push(match k2.order() {
                Some(o) if o == want => pass(
                    format!("{name} degree-2 restriction kernel has order {q}"),
                    format!("kernel {k2}"),
                ),
                Some(o) => fail(
                    format!("{name} degree-2 restriction kernel has order {q}"),
                    format!("kernel {k2} has order {o}"),
                ),
                None => fail(
                    format!("{name} degree-2 restriction kernel has order {q}"),
                    format!("kernel {k2} is infinite"),
                ),
            });
            lines
        })
        .collect();
    per_q.into_iter().flatten().collect()
}

fn orbit_value_lines() -> Vec<CheckLine> {
    let point = catalog::point();
    let pair = catalog::free_pair();
    let mut lines = Vec::new();
    for twist in [0u8, 1u8] {
        let rows = (0..=3)
            .map(|n| {
                (
                    n,
                    FgAbGroup::trivial(),
                    h_theory(&point, None, twist, n),
                )
            })
            .collect();
        lines.push(rows_line(
            format!("pair theory vanishes on the one-point orbit, twist {twist}"),
            rows,
        ));
        let rows = (0..=3)
            .map(|n| {
                let expected = if n == 0 {
                    FgAbGroup::free(1)
                } else {
                    FgAbGroup::trivial()
                };
                (n, expected, h_theory(&pair, None, twist, n))
            })
            .collect();
        lines.push(rows_line(
            format!("pair theory on the free orbit is Z, 0, 0, 0, twist {twist}"),
            rows,
        ));
    }
    lines
}

fn group_cohomology_lines() -> Vec<CheckLine> {
    let z = FgAbGroup::free(1);
    let zero = FgAbGroup::trivial();
    let z2 = FgAbGroup::new(0, vec![2]);

    let trivial = IntegerMatrix::identity(1);
    let mut sign = IntegerMatrix::zeros(1, 1);
    sign.set(0, 0, BigInt::from(-1));
    let mut swap = IntegerMatrix::zeros(2, 2);
    swap.set(0, 1, BigInt::from(1));
    swap.set(1, 0, BigInt::from(1));

    let cases: [(&str, IntegerMatrix, Vec<FgAbGroup>); 3] = [
        (
            "two-element group cohomology with trivial coefficients",
            trivial,
            vec![z.clone(), zero.clone(), z2.clone(), zero.clone(), z2.clone()],
        ),
        (
            "two-element group cohomology with sign coefficients",
            sign,
            vec![zero.clone(), z2.clone(), zero.clone(), z2.clone(), zero.clone()],
        ),
        (
            "two-element group cohomology with regular-representation coefficients",
            swap,
            vec![z.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
        ),
    ];
    cases
        .into_iter()
        .map(|(name, action, expected)| {
            let rows = expected
                .into_iter()
                .enumerate()
                .map(|(p, exp)| (p, exp, group_cohomology_z2(&action, p)))
                .collect();
            rows_line(format!("{name} (degrees 0..4)"), rows)
        })
        .collect()
}

/// Frozen reference tables plus the headline lens values, the restriction
/// tables, the orbit evaluations, and the group cohomology rows.
pub fn paper_tables() -> VerifyReport {
    let names = catalog::catalog_names();
    let per_space: Vec<Vec<CheckLine>> =
        names.par_iter().map(|name| oracle_lines(name)).collect();

    let mut lines: Vec<CheckLine> = per_space.into_iter().flatten().collect();
    lines.extend(lens_headline_lines());
    lines.extend(restriction_table_lines());
    lines.extend(orbit_value_lines());
    lines.extend(group_cohomology_lines());
    VerifyReport {
        suite: "paper-tables".to_string(),
        lines,
    }
}

// ---------------------------------------------------------------------------
// theorem-3-3: the central cross-validation of the two engines.
// ---------------------------------------------------------------------------

struct CrossCheckOutcome {
    lines: Vec<CheckLine>,
    comparisons: usize,
    audited: usize,
    disagreements: Vec<String>,
}

fn cross_check_space(name: &str, cache: Option<&ResultCache>) -> CrossCheckOutcome {
    let mut out = CrossCheckOutcome {
        lines: Vec::new(),
        comparisons: 0,
        audited: 0,
        disagreements: Vec::new(),
    };
    let x = match catalog::build(name) {
        Ok(x) => x,
        Err(e) => {
            out.lines.push(fail(format!("build {name}"), e.to_string()));
            return out;
        }
    };
    let fix = match x.fixed_subcomplex() {
        Ok((f, _)) => f,
        Err(e) => {
            out.lines
                .push(fail(format!("fixed subcomplex of {name}"), e.to_string()));
            return out;
        }
    };
    let top = dim_of(&x) + 1;
    for twist in [0u8, 1u8] {
        let sys = twist_system(twist);
        let mut bad = Vec::new();
        for n in 0..=top {
            let a = bredon_cohomology(&x, &sys, n);
            let b = borel_cohomology(&x, twist, n, Some(&fix));
            out.comparisons += 1;
            match (&a, &b) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => bad.push(format!(
                    "degree {n}: orbit cochains give {a}, homotopy quotient gives {b}"
                )),
                (Err(e), _) => bad.push(format!("degree {n}: orbit cochains failed: {e}")),
                (_, Err(e)) => bad.push(format!("degree {n}: homotopy quotient failed: {e}")),
            }
            if let Some(cache) = cache {
                let audits = [
                    (
                        CacheKey::new(&x, "bredon", sys.name(), n, 0),
                        a.as_ref().ok(),
                    ),
                    (
                        CacheKey::new(&x, "borel-relative", &format!("twist{twist}"), n, n + 2),
                        b.as_ref().ok(),
                    ),
                ];
                for (key, fresh) in audits {
                    let (Ok(key), Some(fresh)) = (key, fresh) else {
                        continue;
                    };
                    out.audited += 1;
                    if let CacheAudit::Disagrees { found } = cache.audit(&key, fresh) {
                        out.disagreements.push(format!(
                            "{} ({} degree {n} twist {twist}): fresh value {fresh}, {found}",
                            cache.path_of(&key).display(),
                            name,
                        ));
                    }
                }
            }
        }
        let line_name =
            format!("{name} twist {twist}: both engines agree in degrees 0..{top}");
        out.lines.push(if bad.is_empty() {
            pass(line_name, String::new())
        } else {
            fail(line_name, bad.join("; "))
        });
    }
    out
}

/// Cross-validation suite: for every catalog space, both twists, and all
/// degrees up to dimension + 1, the orbit-cochain computation with the
/// degree-zero system must equal the homotopy-quotient computation relative
/// to the fixed subcomplex (finite approximation with sphere dimension
/// degree + 2). When a cache is supplied, every fresh value is also audited
/// against it.
pub fn theorem_3_3(cache: Option<&ResultCache>) -> VerifyReport {
    let names = catalog::catalog_names();
    let outcomes: Vec<CrossCheckOutcome> = names
        .par_iter()
        .map(|name| cross_check_space(name, cache))
        .collect();

    let mut lines = Vec::new();
    let mut comparisons = 0;
    let mut audited = 0;
    let mut disagreements = Vec::new();
    for o in outcomes {
        lines.extend(o.lines);
        comparisons += o.comparisons;
        audited += o.audited;
        disagreements.extend(o.disagreements);
    }

    let breadth = names.len();
    lines.push(if breadth >= 10 {
        pass(
            format!("catalog breadth: {breadth} spaces (need at least 10)"),
            String::new(),
        )
    } else {
        fail(
            format!("catalog breadth: {breadth} spaces (need at least 10)"),
            "catalog too small for the cross-validation requirement".to_string(),
        )
    });
    lines.push(pass(
        format!("cross-checked {comparisons} (space, twist, degree) triples"),
        String::new(),
    ));
    if cache.is_some() {
        lines.push(if disagreements.is_empty() {
            pass(
                format!("cache audit: {audited} entries checked against fresh values"),
                String::new(),
            )
        } else {
            fail(
                format!("cache audit: {audited} entries checked against fresh values"),
                disagreements.join("; "),
            )
        });
    }
    VerifyReport {
        suite: "theorem-3-3".to_string(),
        lines,
    }
}

// ---------------------------------------------------------------------------
// exactness: pair sequences for every (space, fixed set) pair.
// ---------------------------------------------------------------------------

fn exactness_lines(name: &str) -> Vec<CheckLine> {
    let built = catalog::build(name).and_then(|x| {
        let (fix, _) = x.fixed_subcomplex()?;
        Ok((x, fix))
    });
    let (x, fix) = match built {
        Ok(p) => p,
        Err(e) => return vec![fail(format!("build {name}"), e.to_string())],
    };
    let d = dim_of(&x);
    [0u8, 1u8]
        .into_iter()
        .map(|twist| {
            let line_name =
                format!("{name} twist {twist}: pair sequence exact through degree {d}");
            match les_of_pair(&x, &fix, twist, d) {
                Ok(seq) => {
                    let report = check_exactness(&seq);
                    if report.is_exact() {
                        pass(line_name, String::new())
                    } else {
                        fail(line_name, report.failures.join("; "))
                    }
                }
                Err(e) => fail(line_name, e.to_string()),
            }
        })
        .collect()
}

/// Exactness suite: the long sequence of (X, fixed set) passes the lattice
/// exactness check for every catalog space and both twists.
pub fn exactness() -> VerifyReport {
    let names = catalog::catalog_names();
    let lines: Vec<CheckLine> = names
        .par_iter()
        .map(|name| exactness_lines(name))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    VerifyReport {
        suite: "exactness".to_string(),
        lines,
    }
}

// ---------------------------------------------------------------------------
// Extra suites folded into `all`: stability and degenerations.
// ---------------------------------------------------------------------------

fn stability_lines(name: &str) -> Vec<CheckLine> {
    let built = catalog::build(name).and_then(|x| {
        let (fix, _) = x.fixed_subcomplex()?;
        Ok((x, fix))
    });
    let (x, fix) = match built {
        Ok(p) => p,
        Err(e) => return vec![fail(format!("build {name}"), e.to_string())],
    };
    let top = dim_of(&x) + 1;
    [0u8, 1u8]
        .into_iter()
        .map(|twist| {
            let line_name = format!(
                "{name} twist {twist}: groups stable under a larger ambient sphere"
            );
            let mut bad = Vec::new();
            for n in 0..=top {
                match stability_check(&x, twist, n, Some(&fix)) {
                    Ok(rep) if rep.stable() => {}
                    Ok(rep) => bad.push(format!(
                        "degree {n}: {} at the standard sphere, {} one dimension up",
                        rep.at_standard, rep.at_next
                    )),
                    Err(e) => bad.push(format!("degree {n}: {e}")),
                }
            }
            if bad.is_empty() {
                pass(line_name, String::new())
            } else {
                fail(line_name, bad.join("; "))
            }
        })
        .collect()
}

fn degeneration_lines(name: &str) -> Vec<CheckLine> {
    let x = match catalog::build(name) {
        Ok(x) => x,
        Err(e) => return vec![fail(format!("build {name}"), e.to_string())],
    };
    let top = dim_of(&x) + 1;
    let mut lines = Vec::new();

    // Expected values come from the plain cellular cohomology of the other
    // space; an error on that side is reported, not swallowed.
    let mut degeneration = |title: String,
                            other: Result<Z2CwComplex, EqError>,
                            sys: &CoefficientSystem| {
        let rows = match other {
            Ok(other) => {
                let cc = other.ordinary_cochain_complex();
                (0..=top)
                    .map(|n| match cohomology_of_complex(&cc, n) {
                        Ok(expected) => (n, expected, bredon_cohomology(&x, sys, n)),
                        Err(e) => (n, FgAbGroup::trivial(), Err(EqError::from(e))),
                    })
                    .collect()
            }
            Err(e) => vec![(0, FgAbGroup::trivial(), Err(e))],
        };
        lines.push(rows_line(title, rows));
    };

    degeneration(
        format!("constant coefficients on {name} reduce to the quotient"),
        x.quotient_complex()
            .map(|(q, _)| q)
            .map_err(EqError::from),
        &std_system(StdSystem::ConstantZ),
    );
    degeneration(
        format!("fixed-set coefficients on {name} reduce to the fixed subcomplex"),
        x.fixed_subcomplex()
            .map(|(f, _)| f)
            .map_err(EqError::from),
        &fixed_set_system(1),
    );
    lines
}

/// Everything: the reference tables, the engine cross-validation (with cache
/// audit), exactness, sphere stability, and the coefficient degenerations.
pub fn run_all(cache: Option<&ResultCache>) -> VerifyReport {
    let names = catalog::catalog_names();
    let mut lines = paper_tables().lines;
    lines.extend(theorem_3_3(cache).lines);
    lines.extend(exactness().lines);

    let stab: Vec<Vec<CheckLine>> = names
        .par_iter()
        .map(|name| stability_lines(name))
        .collect();
    lines.extend(stab.into_iter().flatten());

    let degen: Vec<Vec<CheckLine>> = names
        .par_iter()
        .map(|name| degeneration_lines(name))
        .collect();
    lines.extend(degen.into_iter().flatten());

    VerifyReport {
        suite: "all".to_string(),
        lines,
    }
}
