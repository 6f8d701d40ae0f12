//! Integral symplectic matrices generating the image of the mapping class
//! group on the first homology of a genus-`g` surface, and the invariant
//! subspaces they cut out in low-degree cohomology of product and
//! configuration spaces.
//!
//! Homology carries the interleaved ordered basis `a_1, b_1, .., a_g, b_g`
//! with the standard skew form `J = diag(J_2, .., J_2)`,
//! `J_2 = [[0, -1], [1, 0]]`. The `2g + 1` generators are the transvections
//! along a standard chain of curves; each is checked against `Z J Z^T = J`.
//!
//! Cohomology transforms contragrediently: a matrix `Z` on homology acts on
//! degree-one classes by `(Z^T)^(-1)`, extended multiplicatively to tensor
//! words and model elements. Invariant subspaces are exact kernels of stacked
//! `(action - identity)` blocks, so every reported dimension is a theorem
//! about the specific generator list, not a numerical estimate.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat, RatMatrix};
use crate::surface::{
    h1_letters, kunneth_basis, point_class, pr_pair_pullback, CohClass, SurfaceGen, TensorWord,
};

/// An integral symplectic `2g x 2g` matrix in the interleaved basis
/// `a_1, b_1, .., a_g, b_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpMatrix {
    g: usize,
    m: RatMatrix,
}

impl SpMatrix {
    /// Wraps a matrix after checking shape and the symplectic identity.
    pub fn new(g: usize, m: RatMatrix) -> Result<Self> {
        if m.rows() != 2 * g || m.cols() != 2 * g {
            return Err(Error::Dimension(format!(
                "symplectic matrix for genus {g} must be {0}x{0}, got {1}x{2}",
                2 * g,
                m.rows(),
                m.cols()
            )));
        }
        let z = SpMatrix { g, m };
        if !z.is_symplectic() {
            return Err(Error::InvalidParameter(
                "matrix does not preserve the skew form".into(),
            ));
        }
        Ok(z)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    /// `Z J Z^T == J`.
    pub fn is_symplectic(&self) -> bool {
        let j = skew_form(self.g);
        self.m
            .mul(&j)
            .and_then(|zj| zj.mul(&self.m.transpose()))
            .map(|zjz| zjz == j)
            .unwrap_or(false)
    }
}

/// The skew form `J = diag(J_2, .., J_2)` in the interleaved basis.
pub fn skew_form(g: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(2 * i, 2 * i + 1, rat_int(-1));
        j.set(2 * i + 1, 2 * i, rat_int(1));
    }
    j
}

/// Places an integer block on the diagonal of an identity matrix, with
/// `offset` identity rows before it.
fn embed_block(size: usize, offset: usize, block: &[[i64; 4]; 4], block_dim: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(size);
    for (r, row) in block.iter().enumerate().take(block_dim) {
        for (c, &x) in row.iter().enumerate().take(block_dim) {
            m.set(offset + r, offset + c, rat_int(x));
        }
    }
    m
}

/// The `2g + 1` transvection generators `Z_1, .., Z_(2g+1)` along a standard
/// chain of curves, in that order. Requires `g >= 1`.
pub fn generators(g: usize) -> Result<Vec<SpMatrix>> {
    if g == 0 {
        return Err(Error::InvalidParameter("genus must be at least 1".into()));
    }
    let n = 2 * g;
    const A: [[i64; 4]; 4] = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    const B: [[i64; 4]; 4] = [[1, 0, 0, 0], [-1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    const C: [[i64; 4]; 4] = [[1, 0, 0, 0], [-1, 1, 1, 0], [0, 0, 1, 0], [1, 0, -1, 1]];
    let mut out = Vec::with_capacity(2 * g + 1);
    for k in 1..=(2 * g + 1) {
        let m = if k % 2 == 0 {
            // Z_(2l): the 2x2 block A in rows 2l-2, 2l-1.
            let l = k / 2;
            embed_block(n, 2 * l - 2, &A, 2)
        } else if k == 1 {
            embed_block(n, 0, &B, 2)
        } else if k == 2 * g + 1 {
            embed_block(n, n - 2, &B, 2)
        } else {
            // Z_(2l+1), 1 <= l <= g-1: the 4x4 block C in rows 2l-2 .. 2l+1.
            let l = (k - 1) / 2;
            embed_block(n, 2 * l - 2, &C, 4)
        };
        out.push(SpMatrix::new(g, m)?);
    }
    Ok(out)
}

/// The action on degree-one cohomology classes induced by `z`, as a
/// `2g x 2g` matrix over the *letter* basis `a_1, .., a_g, b_1, .., b_g`
/// (column `c` holds the image of letter `c`). Cohomology transforms by the
/// inverse transpose of the homology matrix.
pub fn h1_letter_action(z: &SpMatrix) -> RatMatrix {
    let g = z.g;
    let m =
        z.m.transpose()
            .inverse()
            .expect("symplectic matrices are invertible");
    // Reindex interleaved (a_1, b_1, ..) to letters (a_1, .., a_g, b_1, ..).
    let to_interleaved = |letter: usize| -> usize {
        if letter < g {
            2 * letter
        } else {
            2 * (letter - g) + 1
        }
    };
    let mut out = RatMatrix::zeros(2 * g, 2 * g);
    for r in 0..2 * g {
        for c in 0..2 * g {
            out.set(r, c, m.at(to_interleaved(r), to_interleaved(c)).clone());
        }
    }
    out
}

/// Image of one degree-one letter under a letter-basis action matrix.
pub fn act_letter(action: &RatMatrix, g: usize, x: SurfaceGen) -> Vec<(Rat, SurfaceGen)> {
    let letters = h1_letters(g);
    let col = match x {
        SurfaceGen::A(i) => i - 1,
        SurfaceGen::B(i) => g + i - 1,
        _ => panic!("act_letter expects a degree-one generator"),
    };
    letters
        .iter()
        .enumerate()
        .filter(|(r, _)| !action.at(*r, col).is_zero())
        .map(|(r, &l)| (action.at(r, col).clone(), l))
        .collect()
}

/// Extends a letter action multiplicatively to a tensor word: the unit and
/// the orientation class are fixed, degree-one letters transform linearly.
/// Slots never move, so no reordering signs arise.
pub fn act_word(action: &RatMatrix, g: usize, w: &TensorWord) -> CohClass {
    let n = w.len();
    let mut partial: Vec<(Rat, Vec<SurfaceGen>)> = vec![(rat_int(1), Vec::with_capacity(n))];
    for &x in &w.0 {
        match x {
            SurfaceGen::Unit | SurfaceGen::Top => {
                for (_, word) in &mut partial {
                    word.push(x);
                }
            }
            _ => {
                let images = act_letter(action, g, x);
                let mut next = Vec::with_capacity(partial.len() * images.len());
                for (c, word) in &partial {
                    for (ci, li) in &images {
                        let mut w2 = word.clone();
                        w2.push(*li);
                        next.push((c * ci, w2));
                    }
                }
                partial = next;
            }
        }
    }
    let mut out = CohClass::zero(n);
    for (c, word) in partial {
        out.add_term(TensorWord(word), c);
    }
    out
}

/// An invariant subspace, reported with an explicit basis in the coordinates
/// of its ambient space. Every basis vector has been re-checked against every
/// generator before the report is handed out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    /// Which ambient space the coordinates refer to.
    pub space: String,
    pub ambient_dim: usize,
    pub dimension: usize,
    pub basis: Vec<Vec<Rat>>,
}

/// Kernel of the stacked `(M_k - I)` blocks: the joint fixed space of a list
/// of square matrices of one common size.
fn joint_fixed_space(mats: &[RatMatrix]) -> Result<Vec<Vec<Rat>>> {
    let dim = mats.first().map_or(0, |m| m.cols());
    let id = RatMatrix::identity(dim);
    let mut blocks = Vec::with_capacity(mats.len());
    for m in mats {
        blocks.push(m.sub(&id)?);
    }
    let stacked = RatMatrix::stack_rows(&blocks)?;
    Ok(stacked.kernel_basis())
}

/// Joint fixed vectors of the generator matrices acting on homology.
/// For the full generator list this space is zero.
pub fn fixed_vectors(mats: &[SpMatrix]) -> Result<InvariantReport> {
    let blocks: Vec<RatMatrix> = mats.iter().map(|z| z.m.clone()).collect();
    let basis = joint_fixed_space(&blocks)?;
    for v in &basis {
        let col = RatMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect())?;
        for z in mats {
            assert_eq!(z.m.mul(&col)?, col, "reported vector is not fixed");
        }
    }
    let ambient = mats.first().map_or(0, |z| 2 * z.g);
    Ok(InvariantReport {
        space: "h1-vectors".into(),
        ambient_dim: ambient,
        dimension: basis.len(),
        basis,
    })
}

/// Joint invariant bilinear forms: matrices `P` with `Z^T P Z = P` for every
/// generator, coordinatized by row-major `vec(P)`. For the full generator
/// list this space is one-dimensional, spanned by the skew form.
pub fn fixed_bilinear(mats: &[SpMatrix]) -> Result<InvariantReport> {
    // Row-major vectorization turns P -> Z^T P Z into kron(Z^T, Z^T).
    let blocks: Vec<RatMatrix> = mats
        .iter()
        .map(|z| {
            let t = z.m.transpose();
            t.kronecker(&t)
        })
        .collect();
    let basis = joint_fixed_space(&blocks)?;
    let ambient = mats.first().map_or(0, |z| 4 * z.g * z.g);
    for v in &basis {
        let d = mats.first().map_or(0, |z| 2 * z.g);
        let p = unvec(v, d)?;
        for z in mats {
            let moved = z.m.transpose().mul(&p)?.mul(&z.m)?;
            assert_eq!(moved, p, "reported form is not invariant");
        }
    }
    Ok(InvariantReport {
        space: "h1-bilinear-forms".into(),
        ambient_dim: ambient,
        dimension: basis.len(),
        basis,
    })
}

/// Reassembles a row-major vectorized square matrix.
fn unvec(v: &[Rat], d: usize) -> Result<RatMatrix> {
    if v.len() != d * d {
        return Err(Error::Dimension(format!(
            "cannot reshape a vector of length {} into a {d}x{d} matrix",
            v.len()
        )));
    }
    let mut m = RatMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            m.set(r, c, v[r * d + c].clone());
        }
    }
    Ok(m)
}

/// The invariant subspace of `H^2` of the `n`-fold cartesian power, in the
/// lexicographic word-basis coordinates. Its dimension is `n + C(n, 2)`:
/// the point classes and the pairwise diagonal pullbacks.
pub fn invariants_h2_cn(g: usize, n: usize) -> Result<InvariantReport> {
    let gens = generators(g)?;
    let actions: Vec<RatMatrix> = gens
        .iter()
        .map(|z| crate::totaro::group_action_on_e(z, g, n, 2, 0))
        .collect();
    let basis = joint_fixed_space(&actions)?;
    for v in &basis {
        let col = RatMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect())?;
        for a in &actions {
            assert_eq!(a.mul(&col)?, col, "reported class is not invariant");
        }
    }
    let ambient = crate::surface::hk_dim(g, n, 2);
    Ok(InvariantReport {
        space: "h2-product".into(),
        ambient_dim: ambient,
        dimension: basis.len(),
        basis,
    })
}

/// The expected spanning set for [`invariants_h2_cn`]: coordinates of the
/// `n` point classes followed by the `C(n, 2)` diagonal pullbacks.
pub fn expected_h2_invariant_span(g: usize, n: usize) -> Result<RatMatrix> {
    let words = kunneth_basis(g, n, 2);
    let index = crate::surface::basis_index(&words);
    let delta = crate::surface::diagonal_class(g);
    let mut rows = Vec::new();
    for i in 1..=n {
        rows.push(point_class(i, n).coordinates(&index));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            rows.push(pr_pair_pullback(i, j, &delta, n)?.coordinates(&index));
        }
    }
    RatMatrix::from_rows(rows)
}

/// Invariants of the degree-two configuration-space cohomology, computed on
/// the third page: the quotient `W = H^2(product) / im d2` and the kernels of
/// `d2` on the `(1,1)` and `(0,2)` entries, each intersected with the joint
/// fixed space of the generator action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigInvariantReport {
    pub g: usize,
    pub n: usize,
    /// Invariant dimension of the quotient entry `W`.
    pub dim_w_invariant: usize,
    /// Invariant dimension of `ker d2` on the `(1,1)` entry.
    pub dim_v_invariant: usize,
    /// Invariant dimension of `ker d2` on the `(0,2)` entry (zero whenever
    /// that differential is injective).
    pub dim_ker02_invariant: usize,
    /// Total invariant dimension in degree two.
    pub dimension: usize,
    /// Whether the `n` point classes descend to a spanning set of the
    /// invariant part of `W`.
    pub gamma_spans_w_invariant: bool,
}

/// Restriction of square `action` matrices to the kernel of `d`, expressed in
/// the kernel-basis coordinates. The kernel is preserved because the action
/// commutes with the differential.
fn restrict_to_kernel(d: &RatMatrix, actions: &[RatMatrix]) -> Result<Vec<RatMatrix>> {
    let kernel = d.kernel_basis();
    let k = kernel.len();
    if k == 0 {
        return Ok(actions.iter().map(|_| RatMatrix::zeros(0, 0)).collect());
    }
    // Columns of `kmat` are the kernel basis vectors.
    let kmat = RatMatrix::from_rows(kernel)?.transpose();
    let mut out = Vec::with_capacity(actions.len());
    for a in actions {
        let image = a.mul(&kmat)?;
        let coords = kmat
            .solve(&image)
            .expect("the action must preserve the kernel");
        debug_assert_eq!(
            kmat.mul(&coords)?,
            image,
            "kernel coordinates must be exact"
        );
        assert_eq!(coords.rows(), k);
        out.push(coords);
    }
    Ok(out)
}

/// Computes [`ConfigInvariantReport`] for `n` points on a genus-`g` surface.
pub fn invariants_h2_config(g: usize, n: usize) -> Result<ConfigInvariantReport> {
    assert!(n >= 1, "need at least one point");
    let gens = generators(g)?;
    let h2_actions: Vec<RatMatrix> = gens
        .iter()
        .map(|z| crate::totaro::group_action_on_e(z, g, n, 2, 0))
        .collect();

    // --- W: the quotient of H^2(product) by the image of d2 on (0,1). ---
    let d01 = if n >= 2 {
        crate::totaro::d2_matrix(g, n, 0, 1)
    } else {
        RatMatrix::zeros(crate::surface::hk_dim(g, n, 2), 0)
    };
    // Row space of the transposed image = the subspace to quotient by.
    let image_rows = d01.transpose();
    let rref = image_rows.rref();
    let pivots = rref.pivots.clone();
    let ambient = d01.rows();
    let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    // Reduce a vector modulo the image and keep the free coordinates.
    let reduce = |v: Vec<Rat>| -> Vec<Rat> {
        let mut v = v;
        for (r, &p) in pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut v[p], Rat::zero());
            for (c, slot) in v.iter_mut().enumerate().skip(p + 1) {
                let x = rref.reduced.at(r, c);
                if !x.is_zero() {
                    let delta = &factor * x;
                    *slot -= delta;
                }
            }
        }
        free.iter().map(|&c| v[c].clone()).collect()
    };
    let quotient_actions: Vec<RatMatrix> = h2_actions
        .iter()
        .map(|a| {
            let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(free.len());
            for &f in &free {
                cols.push(reduce(a.column(f)));
            }
            // Assemble from columns.
            let mut m = RatMatrix::zeros(free.len(), free.len());
            for (c, col) in cols.iter().enumerate() {
                for (r, x) in col.iter().enumerate() {
                    if !x.is_zero() {
                        m.set(r, c, x.clone());
                    }
                }
            }
            m
        })
        .collect();
    let w_fixed = joint_fixed_space(&quotient_actions)?;
    let dim_w_invariant = w_fixed.len();

    // Do the point classes span the invariant part of the quotient?
    let words = kunneth_basis(g, n, 2);
    let index = crate::surface::basis_index(&words);
    let mut gamma_rows = Vec::new();
    for i in 1..=n {
        gamma_rows.push(reduce(point_class(i, n).coordinates(&index)));
    }
    let gamma_spans_w_invariant = if dim_w_invariant == 0 {
        gamma_rows.iter().all(|r| r.iter().all(Zero::is_zero))
    } else {
        let gamma = RatMatrix::from_rows(gamma_rows)?;
        let fixed = RatMatrix::from_rows(w_fixed)?;
        gamma.same_row_space(&fixed)?
    };

    // --- V: invariants of ker d2 on (1,1), and the residual (0,2) kernel. ---
    let (dim_v_invariant, dim_ker02_invariant) = if n >= 2 {
        let a11: Vec<RatMatrix> = gens
            .iter()
            .map(|z| crate::totaro::group_action_on_e(z, g, n, 1, 1))
            .collect();
        let v_restricted = restrict_to_kernel(&crate::totaro::d2_matrix(g, n, 1, 1), &a11)?;
        let v_fixed = joint_fixed_space(&v_restricted)?;
        let a02: Vec<RatMatrix> = gens
            .iter()
            .map(|z| crate::totaro::group_action_on_e(z, g, n, 0, 2))
            .collect();
        let k02_restricted = restrict_to_kernel(&crate::totaro::d2_matrix(g, n, 0, 2), &a02)?;
        let k02_fixed = joint_fixed_space(&k02_restricted)?;
        (v_fixed.len(), k02_fixed.len())
    } else {
        (0, 0)
    };

    Ok(ConfigInvariantReport {
        g,
        n,
        dim_w_invariant,
        dim_v_invariant,
        dim_ker02_invariant,
        dimension: dim_w_invariant + dim_v_invariant + dim_ker02_invariant,
        gamma_spans_w_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_preserve_the_skew_form() {
        for g in 1..=6 {
            let gens = generators(g).unwrap();
            assert_eq!(gens.len(), 2 * g + 1);
            for (k, z) in gens.iter().enumerate() {
                assert!(z.is_symplectic(), "generator {} at genus {g}", k + 1);
            }
        }
        assert!(generators(0).is_err());
    }

    #[test]
    fn generator_entries_match_the_low_genus_tables() {
        let gens = generators(2).unwrap();
        // Z_2 has the A block in the a_1, b_1 rows.
        let z2 = gens[1].matrix();
        assert_eq!(*z2.at(0, 1), rat_int(1));
        assert_eq!(*z2.at(0, 0), rat_int(1));
        assert_eq!(*z2.at(2, 2), rat_int(1));
        // Z_1 has the B block up front.
        let z1 = gens[0].matrix();
        assert_eq!(*z1.at(1, 0), rat_int(-1));
        // Z_3 couples the two handles through the C block.
        let z3 = gens[2].matrix();
        assert_eq!(*z3.at(1, 0), rat_int(-1));
        assert_eq!(*z3.at(1, 2), rat_int(1));
        assert_eq!(*z3.at(3, 0), rat_int(1));
        assert_eq!(*z3.at(3, 2), rat_int(-1));
        // Z_5 = Z_(2g+1) has the B block at the back.
        let z5 = gens[4].matrix();
        assert_eq!(*z5.at(3, 2), rat_int(-1));
    }

    #[test]
    fn no_joint_fixed_vectors() {
        for g in 1..=4 {
            let report = fixed_vectors(&generators(g).unwrap()).unwrap();
            assert_eq!(report.dimension, 0, "genus {g}");
            assert_eq!(report.ambient_dim, 2 * g);
        }
    }

    #[test]
    fn joint_invariant_form_is_the_skew_form() {
        for g in 1..=4 {
            let report = fixed_bilinear(&generators(g).unwrap()).unwrap();
            assert_eq!(report.dimension, 1, "genus {g}");
            let p = unvec(&report.basis[0], 2 * g).unwrap();
            let j = skew_form(g);
            // Proportional to J: scale by the (0,1) entry.
            let c = p.at(0, 1).clone();
            assert!(!c.is_zero());
            assert_eq!(p, j.scale(&-c));
        }
    }

    #[test]
    fn letter_action_preserves_products_of_words() {
        let g = 2;
        for z in generators(g).unwrap() {
            let action = h1_letter_action(&z);
            // Compatibility with the ring structure: act(u)·act(v) = act(u·v)
            // for degree-(1,1) squares, forcing the top class to be fixed.
            let u = TensorWord(vec![SurfaceGen::A(1), SurfaceGen::Unit]);
            let v = TensorWord(vec![SurfaceGen::B(1), SurfaceGen::Unit]);
            let lhs = act_word(&action, g, &u)
                .cup(&act_word(&action, g, &v))
                .unwrap();
            let (s, uv) = crate::surface::mul_words(&u, &v).unwrap();
            let rhs = act_word(&action, g, &uv).scale(&rat_int(s));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn h1_action_is_contragredient_to_the_homology_action() {
        let g = 3;
        for z in generators(g).unwrap() {
            let action = h1_letter_action(&z);
            assert_eq!(action.rank(), 2 * g);
            // Reindexing back to the interleaved basis recovers (Z^T)^(-1).
            let expected = z.matrix().transpose().inverse().unwrap();
            for r in 0..2 * g {
                for c in 0..2 * g {
                    let back = |l: usize| if l < g { 2 * l } else { 2 * (l - g) + 1 };
                    assert_eq!(action.at(r, c), expected.at(back(r), back(c)));
                }
            }
        }
    }

    #[test]
    fn product_invariants_have_the_predicted_dimension_and_span() {
        for (g, n) in [(2usize, 1usize), (2, 2), (3, 2)] {
            let report = invariants_h2_cn(g, n).unwrap();
            assert_eq!(report.dimension, n + n * (n - 1) / 2, "(g,n)=({g},{n})");
            let fixed = RatMatrix::from_rows(report.basis.clone()).unwrap();
            let expected = expected_h2_invariant_span(g, n).unwrap();
            assert!(fixed.same_row_space(&expected).unwrap());
        }
    }

    #[test]
    fn config_invariants_count_the_marked_points() {
        for (g, n) in [(2usize, 1usize), (2, 2), (3, 2)] {
            let report = invariants_h2_config(g, n).unwrap();
            assert_eq!(report.dimension, n, "(g,n)=({g},{n})");
            assert_eq!(report.dim_w_invariant, n);
            assert_eq!(report.dim_v_invariant, 0);
            assert_eq!(report.dim_ker02_invariant, 0);
            assert!(report.gamma_spans_w_invariant);
        }
    }

    #[test]
    fn unvec_round_trips() {
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let v: Vec<Rat> = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| m.at(r, c).clone())
            .collect();
        assert_eq!(unvec(&v, 2).unwrap(), m);
        assert!(unvec(&v, 3).is_err());
    }
}
