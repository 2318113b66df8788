//! Exterior algebras over a finite base with canonical sign rules.
//!
//! Basis words are strictly increasing index sets stored as bitmasks, so
//! all signs reduce to crossing counts computed by popcount. Elements of
//! a fixed degree `p` are dense coefficient vectors indexed by the sorted
//! list of `p`-subsets. The same machinery serves multivectors and forms;
//! which side is "dual" is a matter of bookkeeping at the call site.
//!
//! Conventions, fixed once and validated by the adjointness checks
//! downstream:
//!
//! * wedge: `e_I /\ e_J = sign(I, J) e_{I u J}` with `sign` the parity of
//!   sorting the concatenation `I . J`, zero on overlap;
//! * dual pairing: `<e_I^v, e_J> = delta_{I,J}` with no factorial factors;
//! * interior product by a base vector: degree `-1` derivation with
//!   `iota_{e_i} e_i^v = 1`;
//! * interior product by a `p`-vector `Y = y_1 /\ ... /\ y_p`:
//!   `iota_Y = iota_{y_p} o ... o iota_{y_1}` (contract by `y_1` first).
//!   With this order the full contraction of `e_I^v` by `e_I` is `+1`,
//!   matching the delta pairing with no extra sign.

use crate::ratlin::Q;
use num::{One, Zero};

/// The exterior algebra on `n` generators: shared basis enumeration and
/// sign bookkeeping for all degrees.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    n: usize,
    /// `basis[p]` lists the degree-`p` basis masks in increasing value,
    /// i.e. lexicographic order on the underlying index sets.
    basis: Vec<Vec<u32>>,
    /// Position of each mask inside its degree class.
    index_in_degree: Vec<usize>,
}

impl ExteriorAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n <= 20, "exterior base too large for mask enumeration");
        let mut basis = vec![Vec::new(); n + 1];
        let mut index_in_degree = vec![0usize; 1 << n];
        for mask in 0u32..(1u32 << n) {
            let p = mask.count_ones() as usize;
            index_in_degree[mask as usize] = basis[p].len();
            basis[p].push(mask);
        }
        ExteriorAlgebra {
            n,
            basis,
            index_in_degree,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    /// Dimension of the degree-`p` component (binomial, zero past `n`).
    pub fn dim(&self, p: usize) -> usize {
        if p > self.n {
            0
        } else {
            self.basis[p].len()
        }
    }

    /// Basis masks of degree `p`, in canonical order.
    pub fn masks(&self, p: usize) -> &[u32] {
        &self.basis[p]
    }

    /// Position of `mask` inside its degree class.
    pub fn mask_index(&self, mask: u32) -> usize {
        self.index_in_degree[mask as usize]
    }

    /// The zero element of degree `p`.
    pub fn zero(&self, p: usize) -> Vec<Q> {
        vec![Q::zero(); self.dim(p)]
    }

    /// The basis element with the given mask, as a coefficient vector.
    pub fn basis_element(&self, mask: u32) -> Vec<Q> {
        let p = mask.count_ones() as usize;
        let mut v = self.zero(p);
        v[self.mask_index(mask)] = Q::one();
        v
    }

    /// 1-based indices of a mask, for report labels.
    pub fn mask_indices(mask: u32) -> Vec<usize> {
        (0..32)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| i + 1)
            .collect()
    }

    /// Crossing-parity sign of `e_I /\ e_J` for disjoint masks: the
    /// number of pairs `i in I, j in J` with `i > j` determines the
    /// parity of the sort of the concatenated word.
    pub fn wedge_sign(i_mask: u32, j_mask: u32) -> i32 {
        debug_assert_eq!(i_mask & j_mask, 0);
        Self::sign_of_merge(i_mask, j_mask)
    }

    /// Wedge of homogeneous elements of degrees `p` and `q`.
    pub fn wedge(&self, p: usize, a: &[Q], q: usize, b: &[Q]) -> Vec<Q> {
        assert_eq!(a.len(), self.dim(p));
        assert_eq!(b.len(), self.dim(q));
        let mut out = self.zero(p + q);
        if p + q > self.n {
            return out;
        }
        for (ia, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = self.basis[p][ia];
            for (ib, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mb = self.basis[q][ib];
                if ma & mb != 0 {
                    continue;
                }
                let sign = Self::sign_of_merge(ma, mb);
                let idx = self.mask_index(ma | mb);
                let term = ca * cb;
                out[idx] = if sign > 0 {
                    &out[idx] + &term
                } else {
                    &out[idx] - &term
                };
            }
        }
        out
    }

    fn sign_of_merge(i_mask: u32, j_mask: u32) -> i32 {
        let mut crossings = 0u32;
        let mut jj = j_mask;
        while jj != 0 {
            let b = jj.trailing_zeros();
            crossings += (i_mask >> (b + 1)).count_ones();
            jj &= jj - 1;
        }
        if crossings % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Interior product by the `i`-th base vector (0-based): a degree
    /// `-1` derivation on the dual algebra, `iota_{e_i} e_K^v` removes
    /// `i` from `K` with the sign `(-1)^{#(k in K : k < i)}`.
    pub fn interior_basis_vector(&self, i: usize, p: usize, alpha: &[Q]) -> Vec<Q> {
        assert_eq!(alpha.len(), self.dim(p));
        if p == 0 {
            return Vec::new();
        }
        let bit = 1u32 << i;
        let below = bit - 1;
        let mut out = self.zero(p - 1);
        for (ik, c) in alpha.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mk = self.basis[p][ik];
            if mk & bit == 0 {
                continue;
            }
            let sign = if (mk & below).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            let idx = self.mask_index(mk & !bit);
            out[idx] = if sign > 0 { &out[idx] + c } else { &out[idx] - c };
        }
        out
    }

    /// Interior product by a vector with the given coefficients.
    pub fn interior_vector(&self, v: &[Q], p: usize, alpha: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.n);
        if p == 0 {
            return Vec::new();
        }
        let mut out = self.zero(p - 1);
        for (i, ci) in v.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let t = self.interior_basis_vector(i, p, alpha);
            for (j, x) in t.into_iter().enumerate() {
                out[j] = &out[j] + ci * &x;
            }
        }
        out
    }

    /// Interior product by a homogeneous `pv`-vector `Y`, contracting by
    /// the first word letter first: on a basis word `e_I` with
    /// `I = {i_1 < ... < i_p}` this is `iota_{e_{i_p}} o ... o iota_{e_{i_1}}`.
    pub fn interior_multivector(&self, pv: usize, y: &[Q], p: usize, alpha: &[Q]) -> Vec<Q> {
        assert_eq!(y.len(), self.dim(pv));
        assert_eq!(alpha.len(), self.dim(p));
        if pv > p {
            return self.zero(p.saturating_sub(pv));
        }
        let mut out = self.zero(p - pv);
        for (iy, cy) in y.iter().enumerate() {
            if cy.is_zero() {
                continue;
            }
            let my = self.basis[pv][iy];
            for (ia, ca) in alpha.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let ma = self.basis[p][ia];
                if my & !ma != 0 {
                    continue;
                }
                let (sign, rest) = Self::contract_word_sign(my, ma);
                let idx = self.mask_index(rest);
                let term = cy * ca;
                out[idx] = if sign > 0 {
                    &out[idx] + &term
                } else {
                    &out[idx] - &term
                };
            }
        }
        out
    }

    /// Sign and remainder of contracting `e_I^v` (word `ma`) by the
    /// ascending letters of `my`, lowest letter first.
    fn contract_word_sign(my: u32, ma: u32) -> (i32, u32) {
        let mut sign = 1i32;
        let mut remaining = ma;
        let mut yy = my;
        while yy != 0 {
            let b = yy.trailing_zeros();
            let bit = 1u32 << b;
            let below = bit - 1;
            if (remaining & below).count_ones() % 2 == 1 {
                sign = -sign;
            }
            remaining &= !bit;
            yy &= yy - 1;
        }
        (sign, remaining)
    }

    /// Delta pairing of equal-degree elements: the plain dot product of
    /// coefficient vectors, `<e_I^v, e_J> = delta_{I,J}`.
    pub fn dual_pairing(&self, p: usize, a: &[Q], b: &[Q]) -> Q {
        assert_eq!(a.len(), self.dim(p));
        assert_eq!(b.len(), self.dim(p));
        a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
    }
}

/// Degrees, dimensions and labels of a graded vector space; data-free
/// bookkeeping shared by reports.
#[derive(Clone, Debug)]
pub struct GradedVectorSpace {
    /// `(degree, dimension, labels)` with distinct degrees.
    pub components: Vec<(i64, usize, Vec<String>)>,
}

impl GradedVectorSpace {
    pub fn new(components: Vec<(i64, usize, Vec<String>)>) -> Self {
        let mut degrees: Vec<i64> = components.iter().map(|c| c.0).collect();
        degrees.sort_unstable();
        degrees.dedup();
        assert_eq!(degrees.len(), components.len(), "degrees must be distinct");
        GradedVectorSpace { components }
    }

    pub fn dim_at(&self, degree: i64) -> usize {
        self.components
            .iter()
            .find(|c| c.0 == degree)
            .map(|c| c.1)
            .unwrap_or(0)
    }

    /// The shift `V[s]`, with `V[s]^i = V^{i+s}`: the component stored at
    /// degree `d` moves to degree `d - s`. Labels and data are untouched.
    pub fn shift(&self, s: i64) -> Self {
        GradedVectorSpace {
            components: self
                .components
                .iter()
                .map(|(d, n, l)| (d - s, *n, l.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::qi;

    fn mask(indices: &[usize]) -> u32 {
        indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
    }

    #[test]
    fn wedge_matches_transposition_signs() {
        let ext = ExteriorAlgebra::new(3);
        let e1 = ext.basis_element(mask(&[1]));
        let e2 = ext.basis_element(mask(&[2]));
        let e12 = ext.basis_element(mask(&[1, 2]));

        assert_eq!(ext.wedge(1, &e1, 1, &e2), e12);
        let neg: Vec<_> = e12.iter().map(|x| -x).collect();
        assert_eq!(ext.wedge(1, &e2, 1, &e1), neg);
        assert!(ext.wedge(1, &e1, 1, &e1).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn wedge_sign_from_sorting_concatenation() {
        // (e1 + e2) /\ e_{13}: only e2 /\ e_{13} survives, and sorting
        // the word 2,1,3 is a single transposition.
        let ext = ExteriorAlgebra::new(3);
        let mut a = ext.zero(1);
        a[ext.mask_index(mask(&[1]))] = qi(1);
        a[ext.mask_index(mask(&[2]))] = qi(1);
        let e13 = ext.basis_element(mask(&[1, 3]));
        let got = ext.wedge(1, &a, 2, &e13);
        let mut want = ext.zero(3);
        want[ext.mask_index(mask(&[1, 2, 3]))] = qi(-1);
        assert_eq!(got, want);
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative() {
        let ext = ExteriorAlgebra::new(4);
        for p in 0..=4usize {
            for q in 0..=4usize {
                for r in 0..=4usize {
                    if p + q + r > 4 {
                        continue;
                    }
                    for &ma in ext.masks(p) {
                        for &mb in ext.masks(q) {
                            for &mc in ext.masks(r) {
                                let a = ext.basis_element(ma);
                                let b = ext.basis_element(mb);
                                let c = ext.basis_element(mc);
                                let ab_c =
                                    ext.wedge(p + q, &ext.wedge(p, &a, q, &b), r, &c);
                                let a_bc =
                                    ext.wedge(p, &a, q + r, &ext.wedge(q, &b, r, &c));
                                assert_eq!(ab_c, a_bc);
                            }
                        }
                    }
                }
            }
        }
        for p in 0..=4usize {
            for q in 0..=(4 - p) {
                for &ma in ext.masks(p) {
                    for &mb in ext.masks(q) {
                        let a = ext.basis_element(ma);
                        let b = ext.basis_element(mb);
                        let ab = ext.wedge(p, &a, q, &b);
                        let ba = ext.wedge(q, &b, p, &a);
                        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
                        let flipped: Vec<_> =
                            ba.iter().map(|x| if sign > 0 { x.clone() } else { -x }).collect();
                        assert_eq!(ab, flipped);
                    }
                }
            }
        }
    }

    #[test]
    fn interior_product_examples() {
        let ext = ExteriorAlgebra::new(3);
        let e12 = ext.basis_element(mask(&[1, 2]));
        // iota_{e1}(e1^v /\ e2^v) = e2^v.
        assert_eq!(
            ext.interior_basis_vector(0, 2, &e12),
            ext.basis_element(mask(&[2]))
        );
        // iota_{e3}(e1^v /\ e2^v) = 0.
        assert!(ext
            .interior_basis_vector(2, 2, &e12)
            .iter()
            .all(|x| x.is_zero()));
        // iota_{e1 /\ e2}(e1^v /\ e2^v /\ e3^v) = +e3^v: contract by e1
        // first (+), then e2 is the new lowest letter (+).
        let e123 = ext.basis_element(mask(&[1, 2, 3]));
        let y = ext.basis_element(mask(&[1, 2]));
        assert_eq!(
            ext.interior_multivector(2, &y, 3, &e123),
            ext.basis_element(mask(&[3]))
        );
    }

    #[test]
    fn interior_product_is_a_derivation() {
        let ext = ExteriorAlgebra::new(4);
        for v in 0..4usize {
            for p in 0..=4usize {
                for q in 0..=4usize {
                    if p + q > 4 {
                        continue;
                    }
                    if p + q == 0 {
                        // Degree 0 contracts to nothing on both sides.
                        continue;
                    }
                    for &ma in ext.masks(p) {
                        for &mb in ext.masks(q) {
                            let a = ext.basis_element(ma);
                            let b = ext.basis_element(mb);
                            let ab = ext.wedge(p, &a, q, &b);
                            let lhs = ext.interior_basis_vector(v, p + q, &ab);
                            // (iota_v a) /\ b + (-1)^p a /\ (iota_v b)
                            let ia = ext.interior_basis_vector(v, p, &a);
                            let ib = ext.interior_basis_vector(v, q, &b);
                            let mut rhs = if p > 0 {
                                ext.wedge(p - 1, &ia, q, &b)
                            } else {
                                ext.zero(p + q - 1)
                            };
                            if q > 0 {
                                let t = ext.wedge(p, &a, q - 1, &ib);
                                for (j, x) in t.into_iter().enumerate() {
                                    rhs[j] = if p % 2 == 0 { &rhs[j] + &x } else { &rhs[j] - &x };
                                }
                            }
                            assert_eq!(lhs, rhs, "v={v} p={p} q={q} ma={ma:b} mb={mb:b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multivector_contraction_composes_lowest_letter_first() {
        let ext = ExteriorAlgebra::new(4);
        // On every (Y, alpha) basis pair, iota_Y must equal the
        // composition of single contractions applied in ascending letter
        // order.
        for pv in 1..=3usize {
            for p in pv..=4usize {
                for &my in ext.masks(pv) {
                    for &ma in ext.masks(p) {
                        let y = ext.basis_element(my);
                        let alpha = ext.basis_element(ma);
                        let got = ext.interior_multivector(pv, &y, p, &alpha);
                        let mut cur = alpha.clone();
                        let mut deg = p;
                        for i in ExteriorAlgebra::mask_indices(my) {
                            cur = ext.interior_basis_vector(i - 1, deg, &cur);
                            deg -= 1;
                        }
                        assert_eq!(got, cur);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_pairing_examples_and_full_contraction() {
        let ext = ExteriorAlgebra::new(3);
        let e12d = ext.basis_element(mask(&[1, 2]));
        let e12 = ext.basis_element(mask(&[1, 2]));
        let e13 = ext.basis_element(mask(&[1, 3]));
        assert_eq!(ext.dual_pairing(2, &e12d, &e12), qi(1));
        assert_eq!(ext.dual_pairing(2, &e12d, &e13), qi(0));
        // <e_{12}^v, e2 /\ e1> = -1 via the wedge sign.
        let e2e1 = ext.wedge(1, &ext.basis_element(mask(&[2])), 1, &ext.basis_element(mask(&[1])));
        assert_eq!(ext.dual_pairing(2, &e12d, &e2e1), qi(-1));
        // Top-degree full contraction agrees with the pairing.
        for p in 0..=3usize {
            for &m1 in ext.masks(p) {
                for &m2 in ext.masks(p) {
                    let alpha = ext.basis_element(m1);
                    let y = ext.basis_element(m2);
                    let contracted = ext.interior_multivector(p, &y, p, &alpha);
                    let full = if contracted.is_empty() {
                        qi(0)
                    } else {
                        contracted[0].clone()
                    };
                    assert_eq!(full, ext.dual_pairing(p, &alpha, &y));
                }
            }
        }
    }

    #[test]
    fn graded_space_shift_moves_degrees_down() {
        let v = GradedVectorSpace::new(vec![
            (0, 2, vec!["a".into(), "b".into()]),
            (1, 1, vec!["c".into()]),
        ]);
        let shifted = v.shift(1);
        // V[1]^i = V^{i+1}: the old degree-1 component now sits at 0.
        assert_eq!(shifted.dim_at(0), 1);
        assert_eq!(shifted.dim_at(-1), 2);
        assert_eq!(v.dim_at(5), 0);
    }
}
