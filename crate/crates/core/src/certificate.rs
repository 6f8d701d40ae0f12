//! A machine-checkable linear-independence certificate for the ψ-classes and
//! boundary divisors, mechanizing an ordered test-family elimination.
//!
//! Each step records a one-parameter family, the degrees of the generators
//! on it (exact rationals, or formal symbols for degrees only known to be
//! positive), and which generator the step isolates. The checker replays the
//! steps in order: a step is accepted when every other generator in its
//! support has already been eliminated, so a nonvanishing surviving degree
//! pins the isolated generator. Chain steps assert the equality of two
//! rational-tail coefficients instead of isolating directly; such chains
//! must stay acyclic and terminate in an eliminated label.
//!
//! The checker never re-derives geometry. Soundness of each row is carried
//! by its anchor id; the checker enforces only the support and coverage
//! discipline that makes the rows an independence proof.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::anchors;
use crate::boundary::{enumerate_boundary, DivisorLabel, SymmetricDedup};
use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat, RatMatrix};

/// A degree of one generator on one test family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeValue {
    /// A known rational degree (never zero).
    Exact(Rat),
    /// `scale · symbol` where the symbol stands for a degree known to be
    /// strictly positive. Never compared for magnitude, only nonvanishing.
    FormalPositive { symbol: String, scale: Rat },
    /// `scale · symbol` where the symbol is only known to be nonnegative —
    /// enough to appear in a support, never enough to isolate a generator.
    FormalNonneg { symbol: String, scale: Rat },
}

impl DegreeValue {
    /// Whether this value certifies a nonzero degree.
    pub fn is_nonvanishing(&self) -> bool {
        match self {
            DegreeValue::Exact(r) => !r.is_zero(),
            DegreeValue::FormalPositive { scale, .. } => !scale.is_zero(),
            DegreeValue::FormalNonneg { .. } => false,
        }
    }

    /// Numeric stand-in with every formal symbol set to 1.
    pub fn substituted(&self) -> Rat {
        match self {
            DegreeValue::Exact(r) => r.clone(),
            DegreeValue::FormalPositive { scale, .. } | DegreeValue::FormalNonneg { scale, .. } => {
                scale.clone()
            }
        }
    }
}

fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        None => s.parse::<i64>().map(rat_int).map_err(|_| bad()),
        Some((p, q)) => {
            let p = p.parse::<i64>().map_err(|_| bad())?;
            let q = q.parse::<i64>().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p.into(), q.into()))
        }
    }
}

impl fmt::Display for DegreeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeValue::Exact(r) => write!(f, "{}", rat_string(r)),
            DegreeValue::FormalPositive { symbol, scale } => {
                if scale.is_one() {
                    write!(f, "{symbol}")
                } else {
                    write!(f, "{}*{symbol}", rat_string(scale))
                }
            }
            DegreeValue::FormalNonneg { symbol, scale } => {
                if scale.is_one() {
                    write!(f, "{symbol}?")
                } else {
                    write!(f, "{}*{symbol}?", rat_string(scale))
                }
            }
        }
    }
}

impl DegreeValue {
    /// Parses the serialized form: `p`, `p/q`, `sym`, `k*sym`, with a
    /// trailing `?` marking a nonnegative-only symbol.
    pub fn parse(s: &str) -> Result<Self> {
        let (body, nonneg) = match s.strip_suffix('?') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let symbol_ok = |sym: &str| {
            !sym.is_empty()
                && sym
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || "_:.-".contains(c))
                && sym.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        };
        if let Some((scale, symbol)) = body.split_once('*') {
            if !symbol_ok(symbol) {
                return Err(Error::Parse(format!("bad degree symbol {symbol:?}")));
            }
            let scale = parse_rat(scale)?;
            return Ok(if nonneg {
                DegreeValue::FormalNonneg {
                    symbol: symbol.into(),
                    scale,
                }
            } else {
                DegreeValue::FormalPositive {
                    symbol: symbol.into(),
                    scale,
                }
            });
        }
        if symbol_ok(body) {
            return Ok(if nonneg {
                DegreeValue::FormalNonneg {
                    symbol: body.into(),
                    scale: rat_int(1),
                }
            } else {
                DegreeValue::FormalPositive {
                    symbol: body.into(),
                    scale: rat_int(1),
                }
            });
        }
        if nonneg {
            return Err(Error::Parse(format!(
                "exact degree {body:?} cannot carry '?'"
            )));
        }
        Ok(DegreeValue::Exact(parse_rat(body)?))
    }
}

/// The degrees of the generators on one test family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub family_id: String,
    /// Nonzero degree entries by canonical label.
    pub support: BTreeMap<DivisorLabel, DegreeValue>,
    /// Stable fact id tracing the row to its source.
    pub anchor: String,
}

/// What a step claims to pin down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isolates {
    /// The single surviving generator of the support.
    Label(DivisorLabel),
    /// Equality of two rational-tail coefficients; eliminates whichever of
    /// the two is still open once the other is pinned.
    Equality(DivisorLabel, DivisorLabel),
}

/// How a step's row is justified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    /// Honest degree data on a one-parameter family.
    DegreeRow,
    /// A base-curve divisor-class argument (more than degrees).
    BaseCurveClass,
    /// Independence already established on the interior.
    InteriorRestriction,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Justification::DegreeRow => "degree_row",
            Justification::BaseCurveClass => "base_curve_class",
            Justification::InteriorRestriction => "interior_restriction",
        };
        write!(f, "{s}")
    }
}

impl Justification {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "degree_row" => Ok(Justification::DegreeRow),
            "base_curve_class" => Ok(Justification::BaseCurveClass),
            "interior_restriction" => Ok(Justification::InteriorRestriction),
            _ => Err(Error::Parse(format!("unknown justification {s:?}"))),
        }
    }
}

/// One elimination step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    pub row: DegreeRow,
    pub isolates: Isolates,
    pub justification: Justification,
}

/// Why a step was rejected or skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckReason {
    /// More than the isolated label(s) survive in the support.
    ResidualTooLarge,
    /// The isolating degree cannot be certified nonzero.
    ZeroSurvivingDegree,
    /// An equality step closed a chain onto itself.
    CyclicEqualityChain,
    /// The isolate does not appear in the step's own support.
    IsolateNotInSupport,
    /// The step's isolate was already eliminated by an earlier step.
    DoubleElimination,
    /// A support or isolate label is not a generator at this `(g, n)`.
    UnknownLabel,
}

impl fmt::Display for CheckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckReason::ResidualTooLarge => "residual support too large",
            CheckReason::ZeroSurvivingDegree => "zero surviving degree",
            CheckReason::CyclicEqualityChain => "cyclic equality chain",
            CheckReason::IsolateNotInSupport => "isolate missing from support",
            CheckReason::DoubleElimination => "generator eliminated twice",
            CheckReason::UnknownLabel => "label is not a generator here",
        };
        write!(f, "{s}")
    }
}

/// A step that could not run when its turn came.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedStep {
    pub step: usize,
    pub family_id: String,
    pub reason: CheckReason,
    /// The surviving support at the time the step was attempted.
    pub residual: Vec<DivisorLabel>,
}

/// Checker output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every generator eliminated exactly once; pairs are (label, step).
    Certified {
        eliminated: Vec<(DivisorLabel, usize)>,
    },
    Failed {
        /// The first offending step, when the failure is tied to one.
        step: Option<usize>,
        reason: String,
        /// Generators no accepted step eliminated.
        uncovered: Vec<DivisorLabel>,
        /// Steps skipped because they could not run in order.
        blocked: Vec<BlockedStep>,
    },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

/// Union-find over labels for pending equality chains.
struct Chains {
    parent: BTreeMap<DivisorLabel, DivisorLabel>,
}

impl Chains {
    fn new() -> Self {
        Chains {
            parent: BTreeMap::new(),
        }
    }

    fn find(&mut self, x: &DivisorLabel) -> DivisorLabel {
        let p = match self.parent.get(x) {
            None => return x.clone(),
            Some(p) => p.clone(),
        };
        let root = self.find(&p);
        self.parent.insert(x.clone(), root.clone());
        root
    }

    /// Links two labels; `false` if they were already chained together.
    fn union(&mut self, x: &DivisorLabel, y: &DivisorLabel) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        self.parent.insert(rx, ry);
        true
    }

    /// All labels currently chained with `x` (including `x`).
    fn class_of(&mut self, x: &DivisorLabel) -> Vec<DivisorLabel> {
        let root = self.find(x);
        let mut out = vec![root.clone()];
        let keys: Vec<DivisorLabel> = self.parent.keys().cloned().collect();
        for k in keys {
            if k != root && self.find(&k) == root {
                out.push(k);
            }
        }
        out
    }
}

/// Replays the steps in order against the generator list.
///
/// A step must find all of its support already eliminated except for its
/// isolate (or the two labels of an equality). Steps that cannot run are
/// recorded as blocked and skipped; structural offenses (zero surviving
/// degree, cyclic chains, double elimination, foreign labels) abort at the
/// first occurrence. The verdict is `Certified` exactly when nothing was
/// blocked and every generator was eliminated once.
pub fn check_certificate(steps: &[EliminationStep], generators: &[DivisorLabel]) -> Verdict {
    let generator_set: BTreeSet<DivisorLabel> = generators.iter().cloned().collect();
    let mut eliminated: BTreeMap<DivisorLabel, usize> = BTreeMap::new();
    let mut order: Vec<(DivisorLabel, usize)> = Vec::new();
    let mut blocked: Vec<BlockedStep> = Vec::new();
    let mut chains = Chains::new();

    let fail_now = |t: usize,
                    reason: CheckReason,
                    eliminated: &BTreeMap<DivisorLabel, usize>,
                    blocked: Vec<BlockedStep>| {
        let uncovered: Vec<DivisorLabel> = generator_set
            .iter()
            .filter(|l| !eliminated.contains_key(*l))
            .cloned()
            .collect();
        Verdict::Failed {
            step: Some(t),
            reason: format!("step {t} ({reason})"),
            uncovered,
            blocked,
        }
    };

    for (t, step) in steps.iter().enumerate() {
        // Foreign labels are structural errors, not blocks.
        for label in step.row.support.keys() {
            if !generator_set.contains(label) {
                return fail_now(t, CheckReason::UnknownLabel, &eliminated, blocked);
            }
        }
        let residual: Vec<DivisorLabel> = step
            .row
            .support
            .keys()
            .filter(|l| !eliminated.contains_key(*l))
            .cloned()
            .collect();
        match &step.isolates {
            Isolates::Label(l) => {
                let Some(value) = step.row.support.get(l) else {
                    return fail_now(t, CheckReason::IsolateNotInSupport, &eliminated, blocked);
                };
                if !value.is_nonvanishing() {
                    return fail_now(t, CheckReason::ZeroSurvivingDegree, &eliminated, blocked);
                }
                if residual.is_empty() {
                    return fail_now(t, CheckReason::DoubleElimination, &eliminated, blocked);
                }
                if residual.len() > 1 || residual[0] != *l {
                    blocked.push(BlockedStep {
                        step: t,
                        family_id: step.row.family_id.clone(),
                        reason: CheckReason::ResidualTooLarge,
                        residual,
                    });
                    continue;
                }
                // Accepted: eliminate the isolate and close any chain on it.
                for member in chains.class_of(l) {
                    if !eliminated.contains_key(&member) {
                        eliminated.insert(member.clone(), t);
                        order.push((member, t));
                    }
                }
                if !eliminated.contains_key(l) {
                    eliminated.insert(l.clone(), t);
                    order.push((l.clone(), t));
                }
            }
            Isolates::Equality(x, y) => {
                for l in [x, y] {
                    let Some(value) = step.row.support.get(l) else {
                        return fail_now(t, CheckReason::IsolateNotInSupport, &eliminated, blocked);
                    };
                    if !value.is_nonvanishing() {
                        return fail_now(t, CheckReason::ZeroSurvivingDegree, &eliminated, blocked);
                    }
                }
                if residual.is_empty() {
                    return fail_now(t, CheckReason::DoubleElimination, &eliminated, blocked);
                }
                if residual.iter().any(|l| l != x && l != y) {
                    blocked.push(BlockedStep {
                        step: t,
                        family_id: step.row.family_id.clone(),
                        reason: CheckReason::ResidualTooLarge,
                        residual,
                    });
                    continue;
                }
                let x_done = eliminated.contains_key(x);
                let y_done = eliminated.contains_key(y);
                match (x_done, y_done) {
                    (true, true) => unreachable!("residual would have been empty"),
                    (true, false) | (false, true) => {
                        let open = if x_done { y } else { x };
                        for member in chains.class_of(open) {
                            if !eliminated.contains_key(&member) {
                                eliminated.insert(member.clone(), t);
                                order.push((member, t));
                            }
                        }
                        if !eliminated.contains_key(open) {
                            eliminated.insert(open.clone(), t);
                            order.push((open.clone(), t));
                        }
                    }
                    (false, false) => {
                        if !chains.union(x, y) {
                            return fail_now(
                                t,
                                CheckReason::CyclicEqualityChain,
                                &eliminated,
                                blocked,
                            );
                        }
                        // No elimination yet; the chain must terminate later.
                    }
                }
            }
        }
    }

    let uncovered: Vec<DivisorLabel> = generator_set
        .iter()
        .filter(|l| !eliminated.contains_key(*l))
        .cloned()
        .collect();
    if uncovered.is_empty() && blocked.is_empty() {
        Verdict::Certified { eliminated: order }
    } else {
        let mut reasons = Vec::new();
        if !uncovered.is_empty() {
            reasons.push(format!(
                "{} uncovered generator(s), first: {}",
                uncovered.len(),
                uncovered[0]
            ));
        }
        if let Some(b) = blocked.first() {
            reasons.push(format!("step {} blocked ({})", b.step, b.reason));
        }
        Verdict::Failed {
            step: blocked.first().map(|b| b.step),
            reason: reasons.join("; "),
            uncovered,
            blocked,
        }
    }
}

fn subset_id(set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        "empty".to_string()
    } else {
        set.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// The built-in certificate at `(g, n)`, in the canonical elimination order:
/// ψ-classes, rational-tail pairs, rational-tail chains by ascending subset
/// size, the irreducible pencil, the conjugate-node pencils, the
/// Weierstrass-node pencils. Requires `g >= 2`, `n >= 1`.
pub fn builtin_certificate(g: usize, n: usize) -> Result<Vec<EliminationStep>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "certificates need at least one marking".into(),
        ));
    }
    let boundary = enumerate_boundary(g, n, SymmetricDedup::Canonical)?;
    let pair_labels: Vec<DivisorLabel> = boundary
        .iter()
        .filter(|l| matches!(l, DivisorLabel::Delta(0, set) if set.len() == 2))
        .cloned()
        .collect();
    let mut steps = Vec::new();

    // ψ-classes: independent already on the interior.
    for i in 1..=n {
        steps.push(EliminationStep {
            row: DegreeRow {
                family_id: format!("psi-restriction:{i}"),
                support: BTreeMap::from([(DivisorLabel::Psi(i), DegreeValue::Exact(rat_int(1)))]),
                anchor: anchors::PSI_INTERIOR.into(),
            },
            isolates: Isolates::Label(DivisorLabel::Psi(i)),
            justification: Justification::InteriorRestriction,
        });
    }

    // Rational-tail pairs: a base-curve argument pins each pair label.
    for label in &pair_labels {
        let DivisorLabel::Delta(_, set) = label else {
            unreachable!()
        };
        steps.push(EliminationStep {
            row: DegreeRow {
                family_id: format!("tail-pair:{}", subset_id(set)),
                support: BTreeMap::from([(label.clone(), DegreeValue::Exact(rat_int(1)))]),
                anchor: anchors::FAMILY_DIAGONAL.into(),
            },
            isolates: Isolates::Label(label.clone()),
            justification: Justification::BaseCurveClass,
        });
    }

    // Rational-tail chains: tie each larger subset to its predecessor.
    for size in 3..=n {
        for label in &boundary {
            let DivisorLabel::Delta(0, set) = label else {
                continue;
            };
            if set.len() != size {
                continue;
            }
            let m = *set.iter().max().expect("nonempty subset");
            let smaller: BTreeSet<usize> = set.iter().copied().filter(|&k| k != m).collect();
            let mut support = BTreeMap::from([
                (
                    DivisorLabel::Delta(0, smaller.clone()),
                    DegreeValue::Exact(rat_int(-1)),
                ),
                (label.clone(), DegreeValue::Exact(rat_int(1))),
            ]);
            for j in (1..=n).filter(|j| !set.contains(j)) {
                let pair: BTreeSet<usize> = [j, m].into_iter().collect();
                support.insert(DivisorLabel::Delta(0, pair), DegreeValue::Exact(rat_int(1)));
            }
            steps.push(EliminationStep {
                row: DegreeRow {
                    family_id: format!("tail-chain:{}", subset_id(set)),
                    support,
                    anchor: anchors::FAMILY_RATIONAL_TAIL.into(),
                },
                isolates: Isolates::Equality(DivisorLabel::Delta(0, smaller), label.clone()),
                justification: Justification::DegreeRow,
            });
        }
    }

    // The irreducible pencil isolates eta_irr with a positive degree.
    steps.push(EliminationStep {
        row: DegreeRow {
            family_id: "irr-pencil".into(),
            support: BTreeMap::from([(
                DivisorLabel::EtaIrr,
                DegreeValue::FormalPositive {
                    symbol: "lam-irr".into(),
                    scale: rat_int(1),
                },
            )]),
            anchor: anchors::FAMILY_IRR_PENCIL.into(),
        },
        isolates: Isolates::Label(DivisorLabel::EtaIrr),
        justification: Justification::DegreeRow,
    });

    // Conjugate-node pencils (eta labels), then Weierstrass-node pencils
    // (delta labels, i >= 1): positive on the isolate, possibly meeting
    // eta_irr and the rational-tail pairs.
    let incidental = |family: &str| -> Vec<(DivisorLabel, DegreeValue)> {
        let mut extra = vec![(
            DivisorLabel::EtaIrr,
            DegreeValue::FormalNonneg {
                symbol: format!("inc-irr:{family}"),
                scale: rat_int(1),
            },
        )];
        for p in &pair_labels {
            extra.push((
                p.clone(),
                DegreeValue::FormalNonneg {
                    symbol: format!("inc-tail:{family}"),
                    scale: rat_int(1),
                },
            ));
        }
        extra
    };
    for label in &boundary {
        let DivisorLabel::Eta(i, set) = label else {
            continue;
        };
        let family = format!("conj-pencil:{i}:{}", subset_id(set));
        let mut support = BTreeMap::from([(
            label.clone(),
            DegreeValue::FormalPositive {
                symbol: format!("lam:{family}"),
                scale: rat_int(2),
            },
        )]);
        support.extend(incidental(&family));
        steps.push(EliminationStep {
            row: DegreeRow {
                family_id: family,
                support,
                anchor: anchors::FAMILY_CONJUGATE_PENCIL.into(),
            },
            isolates: Isolates::Label(label.clone()),
            justification: Justification::DegreeRow,
        });
    }
    for label in &boundary {
        let DivisorLabel::Delta(i, set) = label else {
            continue;
        };
        if *i == 0 {
            continue;
        }
        let family = format!("node-pencil:{i}:{}", subset_id(set));
        let mut support = BTreeMap::from([(
            label.clone(),
            DegreeValue::FormalPositive {
                symbol: format!("lam:{family}"),
                scale: rat_int(1),
            },
        )]);
        support.extend(incidental(&family));
        steps.push(EliminationStep {
            row: DegreeRow {
                family_id: family,
                support,
                anchor: anchors::FAMILY_FIXED_NODE_PENCIL.into(),
            },
            isolates: Isolates::Label(label.clone()),
            justification: Justification::DegreeRow,
        });
    }
    Ok(steps)
}

/// The full generator list the certificate must cover at `(g, n)`.
pub fn certificate_generators(g: usize, n: usize) -> Result<Vec<DivisorLabel>> {
    let mut gens: Vec<DivisorLabel> = (1..=n).map(DivisorLabel::Psi).collect();
    gens.extend(enumerate_boundary(g, n, SymmetricDedup::Canonical)?);
    Ok(gens)
}

/// Substitutes 1 for every formal symbol, assembles the degree-row supports
/// as a matrix over the labels they touch, and returns its rank. For a valid
/// certificate this equals the number of generators eliminated by
/// degree-row steps — a redundant numeric check of the symbolic elimination.
pub fn numeric_rank_sanity(steps: &[EliminationStep]) -> usize {
    let rows: Vec<&EliminationStep> = steps
        .iter()
        .filter(|s| s.justification == Justification::DegreeRow)
        .collect();
    let mut columns: BTreeSet<DivisorLabel> = BTreeSet::new();
    for s in &rows {
        columns.extend(s.row.support.keys().cloned());
    }
    let index: BTreeMap<DivisorLabel, usize> = columns
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    if rows.is_empty() {
        return 0;
    }
    let mut m = RatMatrix::zeros(rows.len(), index.len());
    for (r, s) in rows.iter().enumerate() {
        for (label, value) in &s.row.support {
            m.set(r, index[label], value.substituted());
        }
    }
    m.rank()
}

/// Serializes steps in the line format
/// `family_id | isolates | support(label=value,...) | justification | anchor`.
pub fn emit_certificate(steps: &[EliminationStep]) -> String {
    let mut out = String::new();
    for step in steps {
        let isolates = match &step.isolates {
            Isolates::Label(l) => l.to_string(),
            Isolates::Equality(x, y) => format!("{x}=={y}"),
        };
        let support = step
            .row
            .support
            .iter()
            .map(|(l, v)| format!("{l}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "{} | {} | support({}) | {} | {}\n",
            step.row.family_id, isolates, support, step.justification, step.row.anchor
        ));
    }
    out
}

/// Parses the line format back; labels are validated and canonicalized for
/// `(g, n)`. Blank lines and `#` comments are ignored.
pub fn parse_certificate(text: &str, g: usize, n: usize) -> Result<Vec<EliminationStep>> {
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(err("expected 5 pipe-separated fields"));
        }
        let family_id = parts[0].to_string();
        let isolates = match parts[1].split_once("==") {
            Some((x, y)) => Isolates::Equality(
                DivisorLabel::parse(x)?.checked(g, n)?,
                DivisorLabel::parse(y)?.checked(g, n)?,
            ),
            None => Isolates::Label(DivisorLabel::parse(parts[1])?.checked(g, n)?),
        };
        let support_str = parts[2]
            .strip_prefix("support(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("support field must look like support(...)"))?;
        let mut support = BTreeMap::new();
        if !support_str.is_empty() {
            // Labels may contain commas ("delta_0_1,2"), so pieces are merged
            // until one carries the '=' that starts the value.
            let mut buffer: Vec<&str> = Vec::new();
            for piece in support_str.split(',') {
                buffer.push(piece);
                if piece.contains('=') {
                    let entry = buffer.join(",");
                    buffer.clear();
                    let (label, value) =
                        entry.split_once('=').expect("piece carried an equals sign");
                    let label = DivisorLabel::parse(label)?.checked(g, n)?;
                    let value = DegreeValue::parse(value)?;
                    if let DegreeValue::Exact(r) = &value {
                        if r.is_zero() {
                            return Err(err("support entries must be nonzero"));
                        }
                    }
                    if support.insert(label, value).is_some() {
                        return Err(err("duplicate support label"));
                    }
                }
            }
            if !buffer.is_empty() {
                return Err(err("dangling support fragment"));
            }
        }
        let justification = Justification::parse(parts[3])?;
        let anchor = parts[4].to_string();
        steps.push(EliminationStep {
            row: DegreeRow {
                family_id,
                support,
                anchor,
            },
            isolates,
            justification,
        });
    }
    Ok(steps)
}

/// Relabels every marking-dependent piece of a certificate through a
/// permutation of `{1..n}` (supports, isolates; family ids are kept).
pub fn permute_certificate(
    g: usize,
    n: usize,
    steps: &[EliminationStep],
    perm: &[usize],
) -> Result<Vec<EliminationStep>> {
    let map_label = |l: &DivisorLabel| -> Result<DivisorLabel> {
        crate::boundary::permute_markings(g, n, l, perm)
    };
    let mut out = Vec::with_capacity(steps.len());
    for step in steps {
        let mut support = BTreeMap::new();
        for (l, v) in &step.row.support {
            support.insert(map_label(l)?, v.clone());
        }
        let isolates = match &step.isolates {
            Isolates::Label(l) => Isolates::Label(map_label(l)?),
            Isolates::Equality(x, y) => Isolates::Equality(map_label(x)?, map_label(y)?),
        };
        out.push(EliminationStep {
            row: DegreeRow {
                family_id: step.row.family_id.clone(),
                support,
                anchor: step.row.anchor.clone(),
            },
            isolates,
            justification: step.justification,
        });
    }
    Ok(out)
}
