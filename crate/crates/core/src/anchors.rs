//! Stable provenance identifiers attached to reports and certificates.
//!
//! Every number the CLI asserts traces back to one of a small set of
//! mathematical facts. Reports carry the identifiers of the facts they use so
//! downstream tooling can tell *why* a value is claimed, not just what it is.
//! The identifiers are plain strings and are part of the output format:
//! renaming one is a breaking change.

/// The psi classes restrict to independent classes on the interior.
pub const PSI_INTERIOR: &str = "divisor-basis:psi-interior";
/// The full divisor class group is freely generated by psi and boundary.
pub const CLASS_GROUP_BASIS: &str = "divisor-basis:psi-plus-boundary";
/// Enumeration of the boundary divisors by type, level and marking subset.
pub const BOUNDARY_ENUMERATION: &str = "boundary:enumeration";
/// Complementary subsets at the symmetric level name the same divisor.
pub const BOUNDARY_SYMMETRIC_DEDUP: &str = "boundary:symmetric-identification";
/// Pullback of an ambient separating divisor hits one boundary label.
pub const PULLBACK_SEPARATING: &str = "pullback:separating";
/// Pullback of the ambient irreducible divisor: coefficient 1 on eta_irr and
/// 2 on every conjugate-node label.
pub const PULLBACK_IRR_COEFF2: &str = "pullback:irreducible-coefficient-2";
/// One-parameter family over the base curve moving one marked point along
/// the diagonal; kills the two-element rational-tail labels.
pub const FAMILY_DIAGONAL: &str = "test-family:diagonal-section";
/// Family gluing a marked rational tail along a moving point; identifies
/// rational-tail coefficients across subset sizes.
pub const FAMILY_RATIONAL_TAIL: &str = "test-family:rational-tail-chain";
/// Pencil whose singular members are irreducible nodal; isolates eta_irr.
pub const FAMILY_IRR_PENCIL: &str = "test-family:irreducible-nodal-pencil";
/// Pencil whose singular members carry a conjugate pair of nodes; isolates
/// one eta label with multiplicity two.
pub const FAMILY_CONJUGATE_PENCIL: &str = "test-family:conjugate-node-pencil";
/// Pencil whose singular members carry a fixed-point node; isolates one
/// separating-type delta label.
pub const FAMILY_FIXED_NODE_PENCIL: &str = "test-family:fixed-node-pencil";
/// The one-dimensional space of invariant bilinear forms on first homology.
pub const INVARIANT_BILINEAR: &str = "invariant:bilinear-symplectic-1d";
/// Invariants of degree-two cohomology of the product: point classes and
/// diagonal pullbacks.
pub const INVARIANT_H2_PRODUCT: &str = "invariant:h2-product-gamma-delta";
/// Invariants of degree-two cohomology of the configuration space: psi rank.
pub const INVARIANT_H2_CONFIG: &str = "invariant:h2-config-psi-rank";
/// The fiberwise model of the configuration-space spectral sequence.
pub const FIBER_MODEL_DIMS: &str = "model:fiber-algebra-dims";
/// Injectivity of the first differential out of the fiber row.
pub const D2_INJECTIVE: &str = "model:d2-injective";
/// The symplectic generator set for the hyperelliptic mapping class group.
pub const SYMPLECTIC_GENERATORS: &str = "symplectic:dehn-generator-matrices";
