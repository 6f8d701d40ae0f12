//! The executable acceptance checklist.
//!
//! Nine criteria, each a self-contained sweep over a pinned parameter range
//! with an explicit wall-clock budget. A criterion passes only when every
//! case in its range checks out exactly — dimensions, ranks, and span
//! comparisons are over the rationals, so there is no tolerance to tune.
//! [`run_all`] executes the full checklist in order; the CLI `selftest`
//! subcommand and the acceptance test target are thin wrappers around it.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::boundary::{
    enumerate_boundary, pullback_from_ambient, rank_report, AmbientDivisor, DivisorLabel,
    SymmetricDedup,
};
use crate::certificate::{
    builtin_certificate, certificate_generators, check_certificate, numeric_rank_sanity,
    Justification, Verdict,
};
use crate::linalg::{proportional, rat_int, RatMatrix};
use crate::oracle::{
    elementary_symmetric_subsets, frozen_boundary_labels, frozen_rank_cl, log_forms_rank,
};
use crate::surface::{basis_index, diagonal_class, hk_dim, kunneth_basis, pr_pair_pullback};
use crate::symplectic::{
    fixed_bilinear, generators, invariants_h2_cn, invariants_h2_config, skew_form,
};
use crate::totaro::{d2_matrix, e_dim, fiber_dim, group_action_on_e};

/// Result of one criterion run.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    /// 1-based position in the checklist.
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub budget: Duration,
    pub elapsed: Duration,
    /// Number of individual checks performed.
    pub cases: usize,
    /// One message per failed check (empty when passed).
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    /// The canonical one-line report.
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} [{} checks, {:.2?}]",
            self.index,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.cases,
            self.elapsed
        )
    }
}

/// Collects check results inside one criterion.
struct Checker {
    cases: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Unwraps a result inside a criterion; an error is a failed check.
    fn expect<T>(&mut self, r: crate::error::Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

fn finish(
    index: usize,
    name: &'static str,
    budget_secs: u64,
    started: Instant,
    c: Checker,
) -> CriterionOutcome {
    let elapsed = started.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let mut failures = c.failures;
    if elapsed > budget {
        failures.push(format!(
            "exceeded the {budget_secs}s budget ({elapsed:.2?})"
        ));
    }
    CriterionOutcome {
        index,
        name,
        passed: failures.is_empty(),
        budget,
        elapsed,
        cases: c.cases,
        failures,
    }
}

/// Criterion 1: the invariant part of degree-two configuration-space
/// cohomology has dimension exactly `n` for `g` in 2..=4, `n` in 1..=4.
pub fn criterion_config_invariants() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=4 {
        for n in 1..=4 {
            let Some(report) = c.expect(invariants_h2_config(g, n), "config invariants") else {
                continue;
            };
            c.check(report.dimension == n, || {
                format!(
                    "(g,n)=({g},{n}): invariant dimension {} != {n}",
                    report.dimension
                )
            });
            c.check(report.gamma_spans_w_invariant, || {
                format!("(g,n)=({g},{n}): point classes do not span the invariant quotient")
            });
        }
    }
    finish(1, "config-invariant-rank", 60, started, c)
}

/// Criterion 2: the joint fixed space of the generator action on bilinear
/// forms is one-dimensional and spanned by the intersection form, `g` up
/// to 10.
pub fn criterion_fixed_bilinear() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=10 {
        let Some(gens) = c.expect(generators(g), "generators") else {
            continue;
        };
        let Some(report) = c.expect(fixed_bilinear(&gens), "fixed bilinear forms") else {
            continue;
        };
        c.check(report.dimension == 1, || {
            format!(
                "g={g}: invariant form space has dimension {}",
                report.dimension
            )
        });
        if report.dimension == 1 {
            let j: Vec<_> = {
                let jm = skew_form(g);
                (0..jm.rows()).flat_map(|r| jm.row(r).to_vec()).collect()
            };
            c.check(proportional(&report.basis[0], &j), || {
                format!("g={g}: invariant form is not a multiple of the intersection form")
            });
        }
    }
    finish(2, "bilinear-invariant", 10, started, c)
}

/// Criterion 3: the differentials out of the fiber row are injective in
/// weights one and two, and the weight-one image is exactly the span of the
/// pairwise diagonal pullbacks, for `g` in 2..=3, `n` in 2..=5.
pub fn criterion_d2_injectivity() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=3 {
        for n in 2..=5 {
            let d01 = d2_matrix(g, n, 0, 1);
            let pairs = n * (n - 1) / 2;
            c.check(d01.cols() == pairs && d01.rank() == pairs, || {
                format!("(g,n)=({g},{n}): weight-1 differential is not injective")
            });
            let index = basis_index(&kunneth_basis(g, n, 2));
            let mut rows = Vec::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    match pr_pair_pullback(i, j, &diagonal_class(g), n) {
                        Ok(x) => rows.push(x.coordinates(&index)),
                        Err(e) => c.check(false, || format!("pullback ({i},{j}): {e}")),
                    }
                }
            }
            if let Some(span) = c.expect(RatMatrix::from_rows(rows), "span matrix") {
                let same = span.same_row_space(&d01.transpose());
                c.check(matches!(same, Ok(true)), || {
                    format!("(g,n)=({g},{n}): weight-1 image differs from the diagonal span")
                });
                c.check(span.rank() == pairs, || {
                    format!("(g,n)=({g},{n}): diagonal span has deficient rank")
                });
            }
            if n >= 3 {
                let d02 = d2_matrix(g, n, 0, 2);
                c.check(
                    d02.cols() == fiber_dim(n, 2) && d02.rank() == d02.cols(),
                    || format!("(g,n)=({g},{n}): weight-2 differential is not injective"),
                );
            }
        }
    }
    finish(3, "d2-injectivity", 120, started, c)
}

/// Criterion 4: the invariant part of `H^2` of the cartesian power has
/// dimension `n + C(n,2)` and equals the span of point classes and diagonal
/// pullbacks, `g` in 2..=4, `n` in 1..=4.
pub fn criterion_h2_product_invariants() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=4 {
        for n in 1..=4 {
            let expected = n + n * (n - 1) / 2;
            let Some(report) = c.expect(invariants_h2_cn(g, n), "product invariants") else {
                continue;
            };
            c.check(report.dimension == expected, || {
                format!(
                    "(g,n)=({g},{n}): invariant dimension {} != {expected}",
                    report.dimension
                )
            });
            let Some(span) = c.expect(
                crate::symplectic::expected_h2_invariant_span(g, n),
                "expected span",
            ) else {
                continue;
            };
            let Some(basis) = c.expect(RatMatrix::from_rows(report.basis.clone()), "basis rows")
            else {
                continue;
            };
            let same = basis.same_row_space(&span);
            c.check(matches!(same, Ok(true)), || {
                format!("(g,n)=({g},{n}): invariant space differs from the expected span")
            });
        }
    }
    finish(4, "product-h2-invariants", 30, started, c)
}

/// Criterion 5: the fiber-row dimensions match the elementary symmetric
/// numbers `e_q(1..n-1)`, confirmed by the independent logarithmic-forms
/// oracle, for `n` up to 6 and `q` up to 3.
pub fn criterion_fiber_dimensions() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for n in 2..=6 {
        for q in 0..=3usize.min(n - 1) {
            let model = e_dim(2, n, 0, q);
            let formula = elementary_symmetric_subsets(n, q);
            c.check(model as u128 == formula, || {
                format!("(n,q)=({n},{q}): model dimension {model} != e_q value {formula}")
            });
            match log_forms_rank(n, q) {
                Ok(rank) => c.check(rank == model, || {
                    format!("(n,q)=({n},{q}): forms oracle rank {rank} != model {model}")
                }),
                Err(e) => c.check(false, || format!("(n,q)=({n},{q}): forms oracle: {e}")),
            }
        }
    }
    finish(5, "fiber-dimensions", 30, started, c)
}

/// Criterion 6: boundary enumeration — `g` labels for `n = 0`; the closed
/// form matches the explicit enumeration for `g <= 6`, `n <= 6`; and the
/// committed hand enumerations pin down the small class-group ranks.
pub fn criterion_boundary_enumeration() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=8 {
        match enumerate_boundary(g, 0, SymmetricDedup::Canonical) {
            Ok(labels) => c.check(labels.len() == g, || {
                format!("g={g}: {} unmarked boundary labels != {g}", labels.len())
            }),
            Err(e) => c.check(false, || format!("g={g}: {e}")),
        }
    }
    for g in 2..=6 {
        for n in 0..=6 {
            for dedup in [SymmetricDedup::Canonical, SymmetricDedup::KeepBoth] {
                match enumerate_boundary(g, n, dedup) {
                    Ok(labels) => {
                        let closed = crate::boundary::boundary_count_closed_form(g, n, dedup);
                        c.check(labels.len() == closed, || {
                            format!(
                                "(g,n)=({g},{n}) {dedup:?}: enumerated {} != closed form {closed}",
                                labels.len()
                            )
                        });
                    }
                    Err(e) => c.check(false, || format!("(g,n)=({g},{n}): {e}")),
                }
            }
        }
    }
    for (g, n) in [(2usize, 1usize), (3, 1), (3, 2)] {
        let frozen: Vec<DivisorLabel> = frozen_boundary_labels(g, n)
            .expect("frozen list exists")
            .iter()
            .map(|s| DivisorLabel::parse(s).expect("frozen labels parse"))
            .collect();
        match enumerate_boundary(g, n, SymmetricDedup::Canonical) {
            Ok(labels) => c.check(labels == frozen, || {
                format!("(g,n)=({g},{n}): enumeration differs from the hand-written list")
            }),
            Err(e) => c.check(false, || format!("(g,n)=({g},{n}): {e}")),
        }
        match rank_report(g, n, SymmetricDedup::Canonical) {
            Ok(report) => {
                let expected = frozen_rank_cl(g, n).expect("frozen rank exists");
                c.check(report.rank_cl == expected, || {
                    format!(
                        "(g,n)=({g},{n}): rank {} != hand-computed {expected}",
                        report.rank_cl
                    )
                });
                c.check(report.interior_matches_invariants != Some(false), || {
                    format!("(g,n)=({g},{n}): interior rank disagrees with the invariant count")
                });
            }
            Err(e) => c.check(false, || format!("(g,n)=({g},{n}): {e}")),
        }
    }
    finish(6, "boundary-enumeration", 5, started, c)
}

/// Criterion 7: pulling back ambient boundary divisors — each separating
/// divisor lands on its label with coefficient 1, and the irreducible
/// divisor picks up coefficient 2 on every conjugate-node label and 1 on
/// the irreducible label, for `g <= 5`, `n <= 4`.
pub fn criterion_ambient_pullback() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=5 {
        for n in 0..=4 {
            let Some(labels) = c.expect(
                enumerate_boundary(g, n, SymmetricDedup::Canonical),
                "enumeration",
            ) else {
                continue;
            };
            // Every separating ambient divisor pulls back to one label,
            // coefficient 1, through the fold (i, I) -> (g - i, I^c).
            for label in &labels {
                let DivisorLabel::Delta(i, set) = label else {
                    continue;
                };
                let direct = AmbientDivisor::Separating(*i, set.clone());
                let complement: BTreeSet<usize> = (1..=n).filter(|k| !set.contains(k)).collect();
                let folded = AmbientDivisor::Separating(g - i, complement);
                for ambient in [direct, folded] {
                    match pullback_from_ambient(g, n, &ambient) {
                        Ok(terms) => c.check(terms == vec![(rat_int(1), label.clone())], || {
                            format!("(g,n)=({g},{n}): {ambient:?} does not pull back to {label}")
                        }),
                        Err(e) => c.check(false, || format!("(g,n)=({g},{n}): {e}")),
                    }
                }
            }
            match pullback_from_ambient(g, n, &AmbientDivisor::Irreducible) {
                Ok(terms) => {
                    let eta_labels: Vec<&DivisorLabel> = labels
                        .iter()
                        .filter(|l| matches!(l, DivisorLabel::Eta(..)))
                        .collect();
                    c.check(
                        terms
                            .iter()
                            .any(|(k, l)| *l == DivisorLabel::EtaIrr && *k == rat_int(1)),
                        || format!("(g,n)=({g},{n}): irreducible label missing coefficient 1"),
                    );
                    for eta in &eta_labels {
                        c.check(
                            terms.iter().any(|(k, l)| l == *eta && *k == rat_int(2)),
                            || format!("(g,n)=({g},{n}): {eta} missing coefficient 2"),
                        );
                    }
                    c.check(terms.len() == 1 + eta_labels.len(), || {
                        format!("(g,n)=({g},{n}): unexpected extra pullback terms")
                    });
                }
                Err(e) => c.check(false, || format!("(g,n)=({g},{n}): {e}")),
            }
        }
    }
    finish(7, "ambient-pullback", 5, started, c)
}

/// Criterion 8: the built-in certificate certifies for `g` in 2..=4, `n` in
/// 1..=3, eliminating every generator exactly once, and the numeric rank of
/// the degree rows agrees with the number of degree-row eliminations.
pub fn criterion_certificate() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    for g in 2..=4 {
        for n in 1..=3 {
            let Some(steps) = c.expect(builtin_certificate(g, n), "certificate") else {
                continue;
            };
            let Some(gens) = c.expect(certificate_generators(g, n), "generators") else {
                continue;
            };
            match check_certificate(&steps, &gens) {
                Verdict::Certified { eliminated } => {
                    c.check(eliminated.len() == gens.len(), || {
                        format!(
                            "(g,n)=({g},{n}): {} eliminations != {} generators",
                            eliminated.len(),
                            gens.len()
                        )
                    });
                    let distinct: BTreeSet<&DivisorLabel> =
                        eliminated.iter().map(|(l, _)| l).collect();
                    c.check(distinct.len() == eliminated.len(), || {
                        format!("(g,n)=({g},{n}): a generator was eliminated more than once")
                    });
                    let degree_rows = eliminated
                        .iter()
                        .filter(|(_, t)| steps[*t].justification == Justification::DegreeRow)
                        .count();
                    let rank = numeric_rank_sanity(&steps);
                    c.check(rank == degree_rows, || {
                        format!(
                            "(g,n)=({g},{n}): numeric rank {rank} != {degree_rows} degree-row eliminations"
                        )
                    });
                }
                Verdict::Failed { reason, .. } => {
                    c.check(false, || {
                        format!("(g,n)=({g},{n}): not certified: {reason}")
                    });
                }
            }
        }
    }
    finish(8, "independence-certificate", 10, started, c)
}

/// Criterion 9: structural identities — the differential squares to zero,
/// the generator matrices preserve the intersection form, the group action
/// commutes with the differential, and the intersection pairing on the
/// cartesian powers is nondegenerate.
pub fn criterion_structural_identities() -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    // d2 composed with itself vanishes on every materialized bidegree.
    for (g, n) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        for q in 2..n.min(4) {
            for p in 0..=2 {
                let first = d2_matrix(g, n, p, q);
                let second = d2_matrix(g, n, p + 2, q - 1);
                match second.mul(&first) {
                    Ok(square) => c.check(square.is_zero(), || {
                        format!("(g,n,p,q)=({g},{n},{p},{q}): d2 . d2 != 0")
                    }),
                    Err(e) => c.check(false, || format!("(g,n,p,q)=({g},{n},{p},{q}): {e}")),
                }
            }
        }
    }
    // Every generator matrix preserves the intersection form.
    for g in 2..=6 {
        let Some(gens) = c.expect(generators(g), "generators") else {
            continue;
        };
        for (k, z) in gens.iter().enumerate() {
            c.check(z.is_symplectic(), || {
                format!("g={g}: generator {k} does not preserve the form")
            });
        }
    }
    // The action commutes with the differential.
    for (g, n) in [(2usize, 2usize), (3, 2), (2, 3)] {
        let Some(gens) = c.expect(generators(g), "generators") else {
            continue;
        };
        let mut bidegrees = vec![(0usize, 1usize), (1, 1)];
        if n >= 3 {
            bidegrees.push((0, 2));
        }
        for (p, q) in bidegrees {
            let d = d2_matrix(g, n, p, q);
            for (k, z) in gens.iter().enumerate() {
                let source = group_action_on_e(z, g, n, p, q);
                let target = group_action_on_e(z, g, n, p + 2, q - 1);
                let lhs = target.mul(&d);
                let rhs = d.mul(&source);
                c.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
                    format!("(g,n,p,q)=({g},{n},{p},{q}): generator {k} does not commute with d2")
                });
            }
        }
    }
    // Poincare pairing on the cartesian powers is nondegenerate.
    for g in 2..=3 {
        for m in 1..=2 {
            for k in 0..=2 * m {
                let left = kunneth_basis(g, m, k);
                let right = kunneth_basis(g, m, 2 * m - k);
                let mut pairing = RatMatrix::zeros(left.len(), right.len());
                for (a, u) in left.iter().enumerate() {
                    for (b, v) in right.iter().enumerate() {
                        let u = crate::surface::CohClass::from_word(u.clone());
                        let v = crate::surface::CohClass::from_word(v.clone());
                        match u.cup(&v) {
                            Ok(prod) => pairing.set(a, b, prod.integrate()),
                            Err(e) => c.check(false, || format!("pairing: {e}")),
                        }
                    }
                }
                c.check(
                    pairing.rank() == hk_dim(g, m, k) && left.len() == right.len(),
                    || format!("(g,m,k)=({g},{m},{k}): degenerate intersection pairing"),
                );
            }
        }
    }
    finish(9, "structural-identities", 60, started, c)
}

/// Runs the whole checklist in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_config_invariants(),
        criterion_fixed_bilinear(),
        criterion_d2_injectivity(),
        criterion_h2_product_invariants(),
        criterion_fiber_dimensions(),
        criterion_boundary_enumeration(),
        criterion_ambient_pullback(),
        criterion_certificate(),
        criterion_structural_identities(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    // The full sweeps run in the dedicated acceptance target; here we only
    // pin the report plumbing on the cheapest criteria.
    #[test]
    fn outcome_lines_are_one_per_criterion() {
        let outcome = criterion_boundary_enumeration();
        assert!(outcome
            .line()
            .starts_with("criterion 6 (boundary-enumeration):"));
        assert!(outcome.cases > 0);
        assert!(outcome.passed, "{:?}", outcome.failures);
    }

    #[test]
    fn pullback_criterion_passes() {
        let outcome = criterion_ambient_pullback();
        assert!(outcome.passed, "{:?}", outcome.failures);
    }
}
