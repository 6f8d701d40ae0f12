//! The rational cohomology ring of a closed orientable genus-`g` surface and
//! of its `n`-fold cartesian power.
//!
//! A single surface contributes the basis `1, a_1..a_g, b_1..b_g, top` in
//! degrees `0, 1, 1, 2`, with products `a_i b_i = top = -b_i a_i` and all
//! other products of positive-degree generators zero. Classes on the `n`-fold
//! product are finitely supported rational combinations of length-`n` tensor
//! words in that alphabet; multiplying words interleaves the factors with the
//! usual Koszul sign.
//!
//! The diagonal class of the square is *solved* from its defining pairing
//! property rather than written down, so every sign downstream is forced by
//! the two conventions fixed here: the product table above and the Koszul
//! rule.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat, RatMatrix};

/// A basis generator of the surface cohomology ring.
///
/// The derived order — `Unit < A(1) < .. < A(g) < B(1) < .. < B(g) < Top` —
/// is the order used everywhere: word enumeration, matrix indexing, report
/// output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceGen {
    /// Degree 0 unit.
    Unit,
    /// Degree 1 class `a_i`, `1 <= i <= g`.
    A(usize),
    /// Degree 1 class `b_i`, `1 <= i <= g`.
    B(usize),
    /// Degree 2 orientation class.
    Top,
}

impl SurfaceGen {
    pub fn degree(self) -> usize {
        match self {
            SurfaceGen::Unit => 0,
            SurfaceGen::A(_) | SurfaceGen::B(_) => 1,
            SurfaceGen::Top => 2,
        }
    }
}

impl std::fmt::Display for SurfaceGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceGen::Unit => write!(f, "1"),
            SurfaceGen::A(i) => write!(f, "a{i}"),
            SurfaceGen::B(i) => write!(f, "b{i}"),
            SurfaceGen::Top => write!(f, "t"),
        }
    }
}

/// The ordered basis of `H^*` of one genus-`g` surface (length `2g + 2`).
pub fn surface_basis(g: usize) -> Vec<SurfaceGen> {
    let mut v = Vec::with_capacity(2 * g + 2);
    v.push(SurfaceGen::Unit);
    v.extend((1..=g).map(SurfaceGen::A));
    v.extend((1..=g).map(SurfaceGen::B));
    v.push(SurfaceGen::Top);
    v
}

/// The degree-1 part of the basis, in basis order.
pub fn h1_letters(g: usize) -> Vec<SurfaceGen> {
    let mut v: Vec<SurfaceGen> = (1..=g).map(SurfaceGen::A).collect();
    v.extend((1..=g).map(SurfaceGen::B));
    v
}

/// Product of two single-surface generators: `None` for zero, otherwise the
/// sign and the resulting generator.
pub fn mul_gens(x: SurfaceGen, y: SurfaceGen) -> Option<(i64, SurfaceGen)> {
    use SurfaceGen::*;
    match (x, y) {
        (Unit, z) | (z, Unit) => Some((1, z)),
        (A(i), B(j)) if i == j => Some((1, Top)),
        (B(i), A(j)) if i == j => Some((-1, Top)),
        _ => None,
    }
}

/// A length-`n` tensor word over the surface basis. Words compare
/// lexicographically in the fixed generator order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord(pub Vec<SurfaceGen>);

impl TensorWord {
    /// All-unit word of length `n`.
    pub fn unit(n: usize) -> Self {
        TensorWord(vec![SurfaceGen::Unit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree of the word.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|x| x.degree()).sum()
    }
}

impl std::fmt::Display for TensorWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Product of two equal-length words with the Koszul sign
/// `(-1)^(sum_(i<j) deg(v_i) deg(u_j))`; `None` when any slot product dies.
pub fn mul_words(u: &TensorWord, v: &TensorWord) -> Option<(i64, TensorWord)> {
    debug_assert_eq!(u.len(), v.len());
    // Sign exponent: sum over i < j of deg(v_i)·deg(u_j) — each factor of v
    // crosses the factors of u strictly to its right.
    let degrees_u: Vec<usize> = u.0.iter().map(|x| x.degree()).collect();
    let total_u: usize = degrees_u.iter().sum();
    let mut exponent = 0usize;
    let mut seen_u = 0usize;
    let mut out = Vec::with_capacity(u.len());
    let mut sign = 1i64;
    for ((&du, &gu), &gv) in degrees_u.iter().zip(&u.0).zip(&v.0) {
        seen_u += du;
        exponent += gv.degree() * (total_u - seen_u);
        let (s, z) = mul_gens(gu, gv)?;
        sign *= s;
        out.push(z);
    }
    if exponent % 2 == 1 {
        sign = -sign;
    }
    Some((sign, TensorWord(out)))
}

/// A finitely supported rational combination of tensor words of one fixed
/// length. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    n: usize,
    terms: BTreeMap<TensorWord, Rat>,
}

impl CohClass {
    /// The zero class on the `n`-fold product.
    pub fn zero(n: usize) -> Self {
        CohClass {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit on the `n`-fold product.
    pub fn one(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.add_term(TensorWord::unit(n), rat_int(1));
        c
    }

    /// The class of a single generator on one surface (`n = 1`).
    pub fn from_gen(x: SurfaceGen) -> Self {
        let mut c = Self::zero(1);
        c.add_term(TensorWord(vec![x]), rat_int(1));
        c
    }

    /// A single word with coefficient 1.
    pub fn from_word(w: TensorWord) -> Self {
        let n = w.len();
        let mut c = Self::zero(n);
        c.add_term(w, rat_int(1));
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &TensorWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c * w`, dropping the entry if the total cancels.
    pub fn add_term(&mut self, w: TensorWord, c: Rat) {
        debug_assert_eq!(w.len(), self.n);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum of two classes on the same product.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "add: class on C^{} plus class on C^{}",
                self.n, other.n
            )));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        CohClass {
            n: self.n,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Cup product, bilinear over the word product [`mul_words`].
    pub fn cup(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "cup: class on C^{} with class on C^{}",
                self.n, other.n
            )));
        }
        let mut out = Self::zero(self.n);
        for (wu, cu) in &self.terms {
            for (wv, cv) in &other.terms {
                if let Some((sign, w)) = mul_words(wu, wv) {
                    out.add_term(w, cu * cv * rat_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// The homogeneous degree-`k` part.
    pub fn degree_part(&self, k: usize) -> Self {
        CohClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Integration over the fundamental class: the coefficient of the
    /// all-`top` word.
    pub fn integrate(&self) -> Rat {
        self.coeff(&TensorWord(vec![SurfaceGen::Top; self.n]))
    }

    /// Coordinates of this class with respect to an ordered word basis.
    /// Every stored word must appear in `basis`.
    pub fn coordinates(&self, basis_index: &BTreeMap<TensorWord, usize>) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); basis_index.len()];
        for (w, c) in &self.terms {
            let idx = basis_index
                .get(w)
                .unwrap_or_else(|| panic!("word {w} missing from the given basis"));
            v[*idx] = c.clone();
        }
        v
    }
}

/// All length-`n` words of total degree `k` over the genus-`g` basis, in
/// lexicographic order for the fixed generator order.
pub fn kunneth_basis(g: usize, n: usize, k: usize) -> Vec<TensorWord> {
    let letters = surface_basis(g);
    let mut out = Vec::new();
    let mut stack: Vec<SurfaceGen> = Vec::with_capacity(n);
    fn rec(
        letters: &[SurfaceGen],
        n: usize,
        remaining: usize,
        stack: &mut Vec<SurfaceGen>,
        out: &mut Vec<TensorWord>,
    ) {
        if stack.len() == n {
            if remaining == 0 {
                out.push(TensorWord(stack.clone()));
            }
            return;
        }
        let slots_left = n - stack.len();
        for &l in letters {
            let d = l.degree();
            if d > remaining {
                continue;
            }
            // Prune: the rest cannot absorb more than 2 per slot.
            if remaining - d > 2 * (slots_left - 1) {
                continue;
            }
            stack.push(l);
            rec(letters, n, remaining - d, stack, out);
            stack.pop();
        }
    }
    rec(&letters, n, k, &mut stack, &mut out);
    out
}

/// Index map for a word basis.
pub fn basis_index(basis: &[TensorWord]) -> BTreeMap<TensorWord, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect()
}

/// `dim H^k` of the `n`-fold product: the `t^k` coefficient of
/// `(1 + 2g t + t^2)^n`.
pub fn hk_dim(g: usize, n: usize, k: usize) -> usize {
    // Polynomial power by repeated convolution; coefficients stay well within
    // u128 for every size this crate touches.
    let mut poly: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = vec![0u128; poly.len() + 2];
        for (i, &c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * (2 * g as u128);
            next[i + 2] += c;
        }
        poly = next;
    }
    poly.get(k)
        .map_or(0, |&c| usize::try_from(c).expect("dimension fits usize"))
}

/// Pullback along the `i`-th projection (`1`-based) from the `n`-fold
/// product to one surface.
pub fn pr_pullback(i: usize, x: &CohClass, n: usize) -> Result<CohClass> {
    if x.n() != 1 {
        return Err(Error::Dimension(format!(
            "pr_pullback: argument lives on C^{}",
            x.n()
        )));
    }
    if i == 0 || i > n {
        return Err(Error::IndexRange(format!("pr_pullback: slot {i} of {n}")));
    }
    let mut out = CohClass::zero(n);
    for (w, c) in x.terms() {
        let mut word = vec![SurfaceGen::Unit; n];
        word[i - 1] = w.0[0];
        out.add_term(TensorWord(word), c.clone());
    }
    Ok(out)
}

/// Pullback along the projection to slots `(i, j)` (`1`-based, distinct) of a
/// class on the square. For `i > j` the two odd-degree factors swap, which
/// costs the usual sign.
pub fn pr_pair_pullback(i: usize, j: usize, x: &CohClass, n: usize) -> Result<CohClass> {
    if x.n() != 2 {
        return Err(Error::Dimension(format!(
            "pr_pair_pullback: argument lives on C^{}",
            x.n()
        )));
    }
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::IndexRange(format!(
            "pr_pair_pullback: slots ({i},{j}) of {n}"
        )));
    }
    let mut out = CohClass::zero(n);
    for (w, c) in x.terms() {
        let (u, v) = (w.0[0], w.0[1]);
        let mut word = vec![SurfaceGen::Unit; n];
        word[i - 1] = u;
        word[j - 1] = v;
        let mut coeff = c.clone();
        if i > j && u.degree() % 2 == 1 && v.degree() % 2 == 1 {
            coeff = -coeff;
        }
        out.add_term(TensorWord(word), coeff);
    }
    Ok(out)
}

/// The point class pulled back from slot `i`: `pr_i^*(top)`.
pub fn point_class(i: usize, n: usize) -> CohClass {
    pr_pullback(i, &CohClass::from_gen(SurfaceGen::Top), n).expect("slot index checked by caller")
}

fn diagonal_cache() -> &'static Mutex<BTreeMap<usize, CohClass>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, CohClass>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The class of the diagonal in the square, solved (not hard-coded) from its
/// defining property: for all basis classes `x, y` of one surface,
///
/// ```text
/// integrate((x ⊗ y) · Δ)  =  ∫_C x · y
/// ```
///
/// The linear system has a unique solution, which is asserted. Results are
/// cached per genus.
pub fn diagonal_class(g: usize) -> CohClass {
    assert!(g >= 1, "diagonal_class requires g >= 1");
    if let Some(hit) = diagonal_cache().lock().unwrap().get(&g) {
        return hit.clone();
    }
    let unknowns = kunneth_basis(g, 2, 2);
    let single = surface_basis(g);
    let mut rows = Vec::with_capacity(single.len() * single.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    for &x in &single {
        for &y in &single {
            let cross = CohClass::from_word(TensorWord(vec![x, y]));
            let row: Vec<Rat> = unknowns
                .iter()
                .map(|w| {
                    cross
                        .cup(&CohClass::from_word(w.clone()))
                        .expect("same product")
                        .integrate()
                })
                .collect();
            rows.push(row);
            // Right side: integral over one surface of x·y.
            let prod = CohClass::from_gen(x)
                .cup(&CohClass::from_gen(y))
                .expect("same product");
            rhs.push(vec![prod.integrate()]);
        }
    }
    let m = RatMatrix::from_rows(rows).expect("rectangular system");
    assert_eq!(
        m.rank(),
        unknowns.len(),
        "diagonal pairing system must be nondegenerate"
    );
    let b = RatMatrix::from_rows(rhs).expect("column vector");
    let sol = m
        .solve(&b)
        .expect("diagonal pairing system must be consistent");
    let mut delta = CohClass::zero(2);
    for (k, w) in unknowns.iter().enumerate() {
        delta.add_term(w.clone(), sol.at(k, 0).clone());
    }
    diagonal_cache().lock().unwrap().insert(g, delta.clone());
    delta
}

/// The degree-`(1,1)` component of the diagonal class: the part supported on
/// words whose two factors both have degree one.
pub fn delta_prime(g: usize) -> CohClass {
    let mut out = CohClass::zero(2);
    for (w, c) in diagonal_class(g).terms() {
        if w.0[0].degree() == 1 && w.0[1].degree() == 1 {
            out.add_term(w.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    #[test]
    fn basis_order_and_degrees() {
        let b = surface_basis(2);
        assert_eq!(
            b,
            vec![
                SurfaceGen::Unit,
                SurfaceGen::A(1),
                SurfaceGen::A(2),
                SurfaceGen::B(1),
                SurfaceGen::B(2),
                SurfaceGen::Top,
            ]
        );
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            b.iter().map(|x| x.degree()).collect::<Vec<_>>(),
            vec![0, 1, 1, 1, 1, 2]
        );
    }

    #[test]
    fn product_table_on_one_surface() {
        let a1 = CohClass::from_gen(SurfaceGen::A(1));
        let b1 = CohClass::from_gen(SurfaceGen::B(1));
        let top = CohClass::from_gen(SurfaceGen::Top);
        assert_eq!(a1.cup(&b1).unwrap(), top);
        assert_eq!(b1.cup(&a1).unwrap(), top.scale(&rat_int(-1)));
        assert!(a1.cup(&a1).unwrap().is_zero());
        assert!(a1
            .cup(&CohClass::from_gen(SurfaceGen::B(2)))
            .unwrap()
            .is_zero());
        assert!(top.cup(&a1).unwrap().is_zero());
        assert_eq!(top.cup(&CohClass::one(1)).unwrap(), top);
    }

    #[test]
    fn koszul_example_on_the_square() {
        // (a1 ⊗ 1) · (b1 ⊗ top) integrates to 1.
        let u = CohClass::from_word(TensorWord(vec![SurfaceGen::A(1), SurfaceGen::Unit]));
        let v = CohClass::from_word(TensorWord(vec![SurfaceGen::B(1), SurfaceGen::Top]));
        assert_eq!(u.cup(&v).unwrap().integrate(), rat_int(1));
    }

    #[test]
    fn cup_is_graded_commutative() {
        // Check x·y = (-1)^(deg x · deg y) y·x over all basis words of the
        // square for g = 2.
        for k in 0..=4usize {
            for l in 0..=4usize {
                for x in kunneth_basis(2, 2, k) {
                    for y in kunneth_basis(2, 2, l) {
                        let cx = CohClass::from_word(x.clone());
                        let cy = CohClass::from_word(y.clone());
                        let xy = cx.cup(&cy).unwrap();
                        let mut yx = cy.cup(&cx).unwrap();
                        if (k * l) % 2 == 1 {
                            yx = yx.scale(&rat_int(-1));
                        }
                        assert_eq!(xy, yx, "failed at {x} vs {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn cup_is_associative_on_samples() {
        let g = 2;
        let words: Vec<TensorWord> = (0..=2).flat_map(|k| kunneth_basis(g, 2, k)).collect();
        for x in words.iter().step_by(3) {
            for y in words.iter().step_by(4) {
                for z in words.iter().step_by(5) {
                    let cx = CohClass::from_word(x.clone());
                    let cy = CohClass::from_word(y.clone());
                    let cz = CohClass::from_word(z.clone());
                    let lhs = cx.cup(&cy).unwrap().cup(&cz).unwrap();
                    let rhs = cx.cup(&cy.cup(&cz).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn kunneth_dimensions_match_generating_polynomial() {
        for g in 1..=3 {
            for n in 1..=4 {
                for k in 0..=2 * n {
                    assert_eq!(
                        kunneth_basis(g, n, k).len(),
                        hk_dim(g, n, k),
                        "(g,n,k) = ({g},{n},{k})"
                    );
                }
            }
        }
        // Spot value: (g, n, k) = (2, 2, 2) has n + 4g^2·C(n,2) + ... = 18 words.
        assert_eq!(kunneth_basis(2, 2, 2).len(), 18);
    }

    #[test]
    fn kunneth_basis_is_sorted_lexicographically() {
        let basis = kunneth_basis(2, 3, 2);
        assert!(basis.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn diagonal_satisfies_the_pairing_property() {
        for g in 1..=3 {
            let delta = diagonal_class(g);
            for &x in &surface_basis(g) {
                for &y in &surface_basis(g) {
                    let cross = CohClass::from_word(TensorWord(vec![x, y]));
                    let lhs = cross.cup(&delta).unwrap().integrate();
                    let rhs = CohClass::from_gen(x)
                        .cup(&CohClass::from_gen(y))
                        .unwrap()
                        .integrate();
                    assert_eq!(lhs, rhs, "pairing failed at g={g}, x={x}, y={y}");
                }
            }
        }
    }

    #[test]
    fn diagonal_component_structure() {
        let g = 2;
        let delta = diagonal_class(g);
        // The (0,2) and (2,0) components are unit⊗top and top⊗unit with
        // coefficient 1.
        assert_eq!(
            delta.coeff(&TensorWord(vec![SurfaceGen::Unit, SurfaceGen::Top])),
            rat_int(1)
        );
        assert_eq!(
            delta.coeff(&TensorWord(vec![SurfaceGen::Top, SurfaceGen::Unit])),
            rat_int(1)
        );
        // The (1,1) component pairs a_i with b_i only, coefficients ±1, with
        // opposite signs on the two orders.
        let dp = delta_prime(g);
        assert_eq!(dp.term_count(), 2 * g);
        for i in 1..=g {
            let ab = dp.coeff(&TensorWord(vec![SurfaceGen::A(i), SurfaceGen::B(i)]));
            let ba = dp.coeff(&TensorWord(vec![SurfaceGen::B(i), SurfaceGen::A(i)]));
            assert_eq!(ab, -ba.clone());
            assert_eq!(ab.clone() * ab, rat_int(1));
        }
        // Total term count: 2 corner terms + 2g mixed terms.
        assert_eq!(delta.term_count(), 2 * g + 2);
        // Self-intersection number of the diagonal is the Euler
        // characteristic 2 - 2g.
        let self_int = delta.cup(&delta).unwrap().integrate();
        assert_eq!(self_int, rat_int(2 - 2 * (g as i64)));
    }

    #[test]
    fn pullbacks_place_factors_in_the_right_slots() {
        let a1 = CohClass::from_gen(SurfaceGen::A(1));
        let p = pr_pullback(2, &a1, 3).unwrap();
        assert_eq!(
            p.coeff(&TensorWord(vec![
                SurfaceGen::Unit,
                SurfaceGen::A(1),
                SurfaceGen::Unit
            ])),
            rat_int(1)
        );
        assert!(pr_pullback(4, &a1, 3).is_err());
        assert!(pr_pullback(0, &a1, 3).is_err());

        let w = CohClass::from_word(TensorWord(vec![SurfaceGen::A(1), SurfaceGen::B(1)]));
        let fwd = pr_pair_pullback(1, 3, &w, 3).unwrap();
        assert_eq!(
            fwd.coeff(&TensorWord(vec![
                SurfaceGen::A(1),
                SurfaceGen::Unit,
                SurfaceGen::B(1)
            ])),
            rat_int(1)
        );
        // Swapped slots flip the sign for odd×odd factors.
        let bwd = pr_pair_pullback(3, 1, &w, 3).unwrap();
        assert_eq!(
            bwd.coeff(&TensorWord(vec![
                SurfaceGen::B(1),
                SurfaceGen::Unit,
                SurfaceGen::A(1)
            ])),
            rat_int(-1)
        );
        assert!(pr_pair_pullback(1, 1, &w, 3).is_err());
    }

    #[test]
    fn pair_pullback_is_multiplicative() {
        // pr_ij*(x·y) = pr_ij*(x)·pr_ij*(y) for classes on the square.
        let g = 2;
        let delta = diagonal_class(g);
        let x = delta_prime(g);
        for (i, j) in [(1usize, 2usize), (2, 1), (1, 3), (3, 2)] {
            let lhs = pr_pair_pullback(i, j, &x.cup(&delta).unwrap(), 3).unwrap();
            let rhs = pr_pair_pullback(i, j, &x, 3)
                .unwrap()
                .cup(&pr_pair_pullback(i, j, &delta, 3).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "slots ({i},{j})");
        }
    }

    #[test]
    fn poincare_pairing_is_a_signed_permutation_on_words() {
        // For every word there is exactly one complementary word with
        // nonzero product, and the product integrates to ±1.
        let (g, n) = (2, 2);
        for k in 0..=2 * n {
            for w in kunneth_basis(g, n, k) {
                let cw = CohClass::from_word(w.clone());
                let mut hits = 0;
                for v in kunneth_basis(g, n, 2 * n - k) {
                    let p = cw.cup(&CohClass::from_word(v)).unwrap().integrate();
                    if !p.is_zero() {
                        hits += 1;
                        assert_eq!(p.clone() * p, rat_int(1));
                    }
                }
                assert_eq!(hits, 1, "word {w} must pair with exactly one complement");
            }
        }
    }
}
