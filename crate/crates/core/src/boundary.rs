//! Symbolic atlas of the divisor-class generators of the compactified moduli
//! of pointed hyperelliptic curves: ψ-classes plus the boundary divisors,
//! with canonical labels, the symmetric-level identification, pullbacks from
//! the ambient moduli space, and rank bookkeeping.
//!
//! Boundary labels come in three families. `eta_irr` is the irreducible-node
//! divisor. `delta_i_I` parametrizes curves with a separating Weierstrass
//! node splitting the genus as `i + (g - i)` and the markings as `I` on the
//! genus-`i` side. `eta_i_I` parametrizes two components of genera `i` and
//! `g - i - 1` glued along a conjugate pair of points. A level is
//! *symmetric* when the two sides have equal genus — `i = g/2` for `delta`
//! (g even) and `i = (g-1)/2` for `eta` (g odd) — and there the labels
//! `(i, I)` and `(i, I^c)` name the same divisor; the canonical
//! representative stores the smaller subset under the (size, lex) order.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::anchors;
use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat};

/// A canonical generator label for the divisor class group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DivisorLabel {
    /// The irreducible-node boundary divisor.
    EtaIrr,
    /// Separating Weierstrass node: genus-`i` side carries the markings `I`.
    Delta(usize, BTreeSet<usize>),
    /// Conjugate node pair: genera `i` and `g - i - 1`, markings `I` on the
    /// genus-`i` side.
    Eta(usize, BTreeSet<usize>),
    /// The cotangent class at the `i`-th marked point.
    Psi(usize),
}

/// Subsets of `{1..n}` ordered by size, then lexicographically — the fixed
/// order used for canonical representatives and for output.
pub fn subset_cmp(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl Ord for DivisorLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use DivisorLabel::*;
        fn rank(l: &DivisorLabel) -> u8 {
            match l {
                EtaIrr => 0,
                Delta(..) => 1,
                Eta(..) => 2,
                Psi(_) => 3,
            }
        }
        rank(self)
            .cmp(&rank(other))
            .then_with(|| match (self, other) {
                (Delta(i, a), Delta(j, b)) | (Eta(i, a), Eta(j, b)) => {
                    i.cmp(j).then_with(|| subset_cmp(a, b))
                }
                (Psi(i), Psi(j)) => i.cmp(j),
                _ => std::cmp::Ordering::Equal,
            })
    }
}

impl PartialOrd for DivisorLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorLabel::EtaIrr => write!(f, "eta_irr"),
            DivisorLabel::Delta(i, set) => write!(f, "delta_{i}_{}", subset_string(set)),
            DivisorLabel::Eta(i, set) => write!(f, "eta_{i}_{}", subset_string(set)),
            DivisorLabel::Psi(i) => write!(f, "psi_{i}"),
        }
    }
}

fn subset_string(set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        "empty".to_string()
    } else {
        set.iter().map(ToString::to_string).join(",")
    }
}

fn parse_subset(s: &str) -> Result<BTreeSet<usize>> {
    if s == "empty" {
        return Ok(BTreeSet::new());
    }
    s.split(',')
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad subset element {p:?}")))
        })
        .collect()
}

impl DivisorLabel {
    /// Parses the stable string form (`eta_irr`, `delta_1_empty`,
    /// `delta_0_1,2`, `eta_1_1`, `psi_2`). Syntactic only: range checks and
    /// canonicalization need `(g, n)` context, see [`DivisorLabel::checked`].
    pub fn parse(s: &str) -> Result<Self> {
        if s == "eta_irr" {
            return Ok(DivisorLabel::EtaIrr);
        }
        let err = || Error::Parse(format!("unrecognized divisor label {s:?}"));
        if let Some(rest) = s.strip_prefix("psi_") {
            return rest
                .parse::<usize>()
                .map(DivisorLabel::Psi)
                .map_err(|_| err());
        }
        for (prefix, make) in [
            (
                "delta_",
                DivisorLabel::Delta as fn(usize, BTreeSet<usize>) -> DivisorLabel,
            ),
            (
                "eta_",
                DivisorLabel::Eta as fn(usize, BTreeSet<usize>) -> DivisorLabel,
            ),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                let (i_str, set_str) = rest.split_once('_').ok_or_else(err)?;
                let i = i_str.parse::<usize>().map_err(|_| err())?;
                return Ok(make(i, parse_subset(set_str)?));
            }
        }
        Err(err())
    }

    /// Validates the label against `(g, n)` and returns its canonical form.
    pub fn checked(self, g: usize, n: usize) -> Result<Self> {
        let subset_ok = |set: &BTreeSet<usize>| set.iter().all(|&k| 1 <= k && k <= n);
        match self {
            DivisorLabel::EtaIrr => Ok(DivisorLabel::EtaIrr),
            DivisorLabel::Psi(i) => {
                if 1 <= i && i <= n {
                    Ok(DivisorLabel::Psi(i))
                } else {
                    Err(Error::IndexRange(format!("psi_{i} with n = {n}")))
                }
            }
            DivisorLabel::Delta(i, set) => {
                if i > g / 2 || !subset_ok(&set) {
                    return Err(Error::IndexRange(format!(
                        "delta_{i}_{} out of range for (g,n)=({g},{n})",
                        subset_string(&set)
                    )));
                }
                if i == 0 && set.len() < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "delta_0_{} needs at least two markings on the rational tail",
                        subset_string(&set)
                    )));
                }
                if g.is_multiple_of(2) && i == g / 2 {
                    Ok(DivisorLabel::Delta(i, canonical_side(set, n)))
                } else {
                    Ok(DivisorLabel::Delta(i, set))
                }
            }
            DivisorLabel::Eta(i, set) => {
                if i == 0 || i > (g - 1) / 2 || !subset_ok(&set) {
                    return Err(Error::IndexRange(format!(
                        "eta_{i}_{} out of range for (g,n)=({g},{n})",
                        subset_string(&set)
                    )));
                }
                if g % 2 == 1 && i == (g - 1) / 2 {
                    Ok(DivisorLabel::Eta(i, canonical_side(set, n)))
                } else {
                    Ok(DivisorLabel::Eta(i, set))
                }
            }
        }
    }
}

/// The smaller of `I` and its complement in `{1..n}` under the subset order.
fn canonical_side(set: BTreeSet<usize>, n: usize) -> BTreeSet<usize> {
    let complement: BTreeSet<usize> = (1..=n).filter(|k| !set.contains(k)).collect();
    if subset_cmp(&set, &complement) == std::cmp::Ordering::Greater {
        complement
    } else {
        set
    }
}

/// Whether symmetric-level labels are identified with their complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricDedup {
    /// Identify `(i, I)` with `(i, I^c)` at symmetric levels (default).
    Canonical,
    /// Keep both labels, as the per-level component count suggests.
    KeepBoth,
}

/// All subsets of `{1..n}` in the fixed (size, lex) order.
fn subsets_in_order(n: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::with_capacity(1 << n);
    for size in 0..=n {
        for combo in (1..=n).combinations(size) {
            out.push(combo.into_iter().collect());
        }
    }
    out
}

/// Enumerates the boundary divisor labels at `(g, n)` in ascending label
/// order: `eta_irr`, then `delta` levels by ascending genus index, then
/// `eta` levels. Requires `g >= 2`.
pub fn enumerate_boundary(g: usize, n: usize, dedup: SymmetricDedup) -> Result<Vec<DivisorLabel>> {
    if g < 2 {
        return Err(Error::InvalidParameter(format!(
            "boundary enumeration needs genus at least 2, got {g}"
        )));
    }
    let subsets = subsets_in_order(n);
    let keep = |set: &BTreeSet<usize>, symmetric: bool| -> bool {
        if !symmetric || dedup == SymmetricDedup::KeepBoth {
            return true;
        }
        let complement: BTreeSet<usize> = (1..=n).filter(|k| !set.contains(k)).collect();
        subset_cmp(set, &complement) != std::cmp::Ordering::Greater
    };
    let mut out = vec![DivisorLabel::EtaIrr];
    for i in 0..=g / 2 {
        let symmetric = g.is_multiple_of(2) && i == g / 2;
        for set in &subsets {
            if i == 0 && set.len() < 2 {
                continue;
            }
            if keep(set, symmetric) {
                out.push(DivisorLabel::Delta(i, set.clone()));
            }
        }
    }
    for i in 1..=(g - 1) / 2 {
        let symmetric = g % 2 == 1 && i == (g - 1) / 2;
        for set in &subsets {
            if keep(set, symmetric) {
                out.push(DivisorLabel::Eta(i, set.clone()));
            }
        }
    }
    Ok(out)
}

/// Closed-form count of [`enumerate_boundary`] output, validated against the
/// explicit enumeration in the tests.
pub fn boundary_count_closed_form(g: usize, n: usize, dedup: SymmetricDedup) -> usize {
    let pow = 1usize << n;
    // Count of canonical representatives at a symmetric level.
    let half = match dedup {
        SymmetricDedup::KeepBoth => pow,
        SymmetricDedup::Canonical => {
            if n == 0 {
                1
            } else {
                pow / 2
            }
        }
    };
    let delta_levels = g / 2; // i = 1 .. g/2
    let delta_symmetric = usize::from(g.is_multiple_of(2));
    let eta_levels = (g - 1) / 2; // i = 1 .. (g-1)/2
    let eta_symmetric = usize::from(!g.is_multiple_of(2) && (g - 1) / 2 >= 1);
    1 + (pow - n - 1)
        + (delta_levels - delta_symmetric) * pow
        + delta_symmetric * half
        + (eta_levels - eta_symmetric) * pow
        + eta_symmetric * half
}

/// Relabels the markings of a divisor label through a permutation of
/// `{1..n}` (given as `perm[k-1] = image of k`) and re-canonicalizes.
pub fn permute_markings(
    g: usize,
    n: usize,
    label: &DivisorLabel,
    perm: &[usize],
) -> Result<DivisorLabel> {
    if perm.len() != n {
        return Err(Error::InvalidParameter(format!(
            "permutation of length {} for n = {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v == 0 || v > n || seen[v - 1] {
            return Err(Error::InvalidParameter(
                "not a permutation of {1..n}".into(),
            ));
        }
        seen[v - 1] = true;
    }
    let map_set =
        |set: &BTreeSet<usize>| -> BTreeSet<usize> { set.iter().map(|&k| perm[k - 1]).collect() };
    let relabeled = match label {
        DivisorLabel::EtaIrr => DivisorLabel::EtaIrr,
        DivisorLabel::Psi(i) => DivisorLabel::Psi(perm[i - 1]),
        DivisorLabel::Delta(i, set) => DivisorLabel::Delta(*i, map_set(set)),
        DivisorLabel::Eta(i, set) => DivisorLabel::Eta(*i, map_set(set)),
    };
    relabeled.checked(g, n)
}

/// A boundary divisor of the ambient moduli space of stable pointed curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientDivisor {
    /// `D_{i,I}`: separating node, genus-`i` side carrying the markings `I`.
    /// Identified with `D_{g-i, I^c}`.
    Separating(usize, BTreeSet<usize>),
    /// `D_irr`: the irreducible-node divisor.
    Irreducible,
}

/// Restricts an ambient boundary divisor to the hyperelliptic locus, as a
/// formal combination of canonical labels: separating divisors restrict to
/// the matching `delta`, the irreducible divisor to `eta_irr` plus twice
/// every conjugate-node divisor.
pub fn pullback_from_ambient(
    g: usize,
    n: usize,
    divisor: &AmbientDivisor,
) -> Result<Vec<(Rat, DivisorLabel)>> {
    match divisor {
        AmbientDivisor::Separating(i, set) => {
            if *i > g {
                return Err(Error::IndexRange(format!(
                    "separating index {i} exceeds the genus {g}"
                )));
            }
            // Use the side of genus <= g/2 as the representative.
            let (i, set) = if *i > g - *i {
                (g - *i, (1..=n).filter(|k| !set.contains(k)).collect())
            } else {
                (*i, set.clone())
            };
            let label = DivisorLabel::Delta(i, set).checked(g, n)?;
            Ok(vec![(rat_int(1), label)])
        }
        AmbientDivisor::Irreducible => {
            let mut out = vec![(rat_int(1), DivisorLabel::EtaIrr)];
            for label in enumerate_boundary(g, n, SymmetricDedup::Canonical)? {
                if matches!(label, DivisorLabel::Eta(..)) {
                    out.push((rat_int(2), label));
                }
            }
            Ok(out)
        }
    }
}

/// Rank bookkeeping for the divisor class group at `(g, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub g: usize,
    pub n: usize,
    pub num_psi: usize,
    pub num_boundary: usize,
    /// Rank of the class group of the compactification: `num_psi +
    /// num_boundary`.
    pub rank_cl: usize,
    /// Rank of the Picard group of the interior: `n`.
    pub rank_pic_interior: usize,
    /// ψ-labels followed by the boundary labels, in canonical order.
    pub labels: Vec<DivisorLabel>,
    /// When the symplectic invariant computation is cheap enough to run
    /// inline (small `g`, `n`), records whether its dimension agrees with
    /// `rank_pic_interior`; `None` when skipped.
    pub interior_matches_invariants: Option<bool>,
}

/// Genus/marking bounds under which [`rank_report`] cross-checks the
/// interior rank against the symplectic invariant dimension inline.
pub fn interior_check_is_cheap(g: usize, n: usize) -> bool {
    g <= 3 && n <= 3
}

/// Builds the [`RankReport`] at `(g, n)`; requires `g >= 2`, `n >= 1`.
pub fn rank_report(g: usize, n: usize, dedup: SymmetricDedup) -> Result<RankReport> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "rank reports need at least one marking".into(),
        ));
    }
    let boundary = enumerate_boundary(g, n, dedup)?;
    let mut labels: Vec<DivisorLabel> = (1..=n).map(DivisorLabel::Psi).collect();
    labels.extend(boundary.iter().cloned());
    let interior_matches_invariants = if interior_check_is_cheap(g, n) {
        let report = crate::symplectic::invariants_h2_config(g, n)?;
        Some(report.dimension == n)
    } else {
        None
    };
    Ok(RankReport {
        g,
        n,
        num_psi: n,
        num_boundary: boundary.len(),
        rank_cl: n + boundary.len(),
        rank_pic_interior: n,
        labels,
        interior_matches_invariants,
    })
}

/// Anchor ids for the facts a rank report asserts.
pub fn rank_report_anchors() -> Vec<&'static str> {
    vec![
        anchors::PSI_INTERIOR,
        anchors::CLASS_GROUP_BASIS,
        anchors::BOUNDARY_ENUMERATION,
        anchors::BOUNDARY_SYMMETRIC_DEDUP,
    ]
}
