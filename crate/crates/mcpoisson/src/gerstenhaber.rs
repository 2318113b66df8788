//! Multilinear operations on a commutative algebra and their
//! composition calculus.
//!
//! For a finite-dimensional commutative associative unital algebra `A`,
//! the space of `p`-linear maps `A x ... x A -> A` carries the
//! composition products
//!
//! ```text
//! (F o_i G)(a_1, ..., a_{m+n-1}) = F(a_1, ..., G(a_i, ..., a_{i+n-1}), ...)
//! F oo G = sum_i (-1)^{(n-1)(i-1)} F o_i G
//! [F, G] = F oo G - (-1)^{(m-1)(n-1)} G oo F
//! ```
//!
//! where `m`, `n` are the arities of `F`, `G`. The bracket is a graded
//! Lie bracket for the shifted degree `arity - 1`. Antisymmetrization
//! projects onto alternating maps, and [`skew_multiderivations`] solves
//! for the alternating maps that are derivations in every slot; those
//! spaces are the graded components from which Maurer-Cartan cones of
//! biderivations are built.

use crate::ratlin::{RationalMatrix, Q};
use num::{One, Zero};

/// A finite-dimensional commutative associative unital algebra with a
/// distinguished basis; the unit must itself be a basis element.
#[derive(Clone, Debug)]
pub struct Algebra {
    labels: Vec<String>,
    /// Index of the basis element equal to the unit.
    unit_index: usize,
    /// `table[s][t]` = coordinates of `e_s * e_t`.
    table: Vec<Vec<Vec<Q>>>,
}

impl Algebra {
    /// Builds the algebra and verifies commutativity, associativity,
    /// and that basis element `unit_index` is a two-sided unit.
    pub fn new(
        labels: Vec<String>,
        unit_index: usize,
        table: Vec<Vec<Vec<Q>>>,
    ) -> Result<Self, String> {
        let n = labels.len();
        assert!(unit_index < n);
        assert_eq!(table.len(), n);
        for row in &table {
            assert_eq!(row.len(), n);
            for v in row {
                assert_eq!(v.len(), n);
            }
        }
        let alg = Algebra {
            labels,
            unit_index,
            table,
        };
        for s in 0..n {
            let mut e = vec![Q::zero(); n];
            e[s] = Q::one();
            if alg.mul_basis(unit_index, s) != e || alg.mul_basis(s, unit_index) != e {
                return Err(format!(
                    "basis element `{}` is not a unit",
                    alg.labels[unit_index]
                ));
            }
            for t in 0..n {
                if alg.mul_basis(s, t) != alg.mul_basis(t, s) {
                    return Err(format!(
                        "product is not commutative on `{}`, `{}`",
                        alg.labels[s], alg.labels[t]
                    ));
                }
                for u in 0..n {
                    let mut et = vec![Q::zero(); n];
                    et[t] = Q::one();
                    let mut eu = vec![Q::zero(); n];
                    eu[u] = Q::one();
                    let left = alg.mul(&alg.mul_basis(s, t), &eu);
                    let mut es = vec![Q::zero(); n];
                    es[s] = Q::one();
                    let right = alg.mul(&es, &alg.mul_basis(t, u));
                    if left != right {
                        return Err(format!(
                            "product is not associative on `{}`, `{}`, `{}`",
                            alg.labels[s], alg.labels[t], alg.labels[u]
                        ));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    pub fn unit(&self) -> Vec<Q> {
        let mut e = vec![Q::zero(); self.dim()];
        e[self.unit_index] = Q::one();
        e
    }

    pub fn mul_basis(&self, s: usize, t: usize) -> Vec<Q> {
        self.table[s][t].clone()
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (s, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (t, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let k = ca * cb;
                for r in 0..n {
                    let v = &self.table[s][t][r];
                    if !v.is_zero() {
                        out[r] = &out[r] + &(v * &k);
                    }
                }
            }
        }
        out
    }
}

/// A `p`-linear map `A^p -> A` stored by its values on basis tuples,
/// flattened row-major; arity 0 is a single element of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multilinear {
    arity: usize,
    dim: usize,
    values: Vec<Vec<Q>>,
}

impl Multilinear {
    pub fn zero(arity: usize, dim: usize) -> Self {
        let count = dim.pow(arity as u32);
        Multilinear {
            arity,
            dim,
            values: vec![vec![Q::zero(); dim]; count],
        }
    }

    pub fn from_fn(arity: usize, dim: usize, f: impl Fn(&[usize]) -> Vec<Q>) -> Self {
        let mut m = Self::zero(arity, dim);
        let count = m.values.len();
        for flat in 0..count {
            let tuple = unflatten(flat, arity, dim);
            let v = f(&tuple);
            assert_eq!(v.len(), dim);
            m.values[flat] = v;
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, tuple: &[usize]) -> &Vec<Q> {
        assert_eq!(tuple.len(), self.arity);
        &self.values[flatten(tuple, self.dim)]
    }

    /// Multilinear extension to coordinate vectors.
    pub fn eval(&self, args: &[Vec<Q>]) -> Vec<Q> {
        assert_eq!(args.len(), self.arity);
        let mut out = vec![Q::zero(); self.dim];
        for (flat, val) in self.values.iter().enumerate() {
            let tuple = unflatten(flat, self.arity, self.dim);
            let mut coeff = Q::one();
            let mut zero = false;
            for (slot, &t) in tuple.iter().enumerate() {
                if args[slot][t].is_zero() {
                    zero = true;
                    break;
                }
                coeff = &coeff * &args[slot][t];
            }
            if zero {
                continue;
            }
            for r in 0..self.dim {
                if !val[r].is_zero() {
                    out[r] = &out[r] + &(&val[r] * &coeff);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Multilinear) -> Multilinear {
        assert_eq!(self.arity, other.arity);
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            for (x, y) in a.iter_mut().zip(b) {
                *x = &*x + y;
            }
        }
        out
    }

    pub fn sub(&self, other: &Multilinear) -> Multilinear {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Multilinear {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            for x in v.iter_mut() {
                *x = &*x * k;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// The value table as one long coordinate vector, for expressing a
    /// map in a basis of maps by linear algebra.
    pub fn flatten_table(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.values.len() * self.dim);
        for v in &self.values {
            out.extend(v.iter().cloned());
        }
        out
    }

    /// `F o_i G`: plug `G`'s output into slot `i` (1-based) of `F`.
    pub fn comp(&self, other: &Multilinear, i: usize) -> Multilinear {
        assert!(i >= 1 && i <= self.arity);
        assert_eq!(self.dim, other.dim);
        let m = self.arity;
        let n = other.arity;
        let dim = self.dim;
        Multilinear::from_fn(m + n - 1, dim, |tuple| {
            let inner = other.value(&tuple[i - 1..i - 1 + n]);
            let mut out = vec![Q::zero(); dim];
            for (s, c) in inner.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut outer: Vec<usize> = Vec::with_capacity(m);
                outer.extend_from_slice(&tuple[..i - 1]);
                outer.push(s);
                outer.extend_from_slice(&tuple[i - 1 + n..]);
                let fv = self.value(&outer);
                for r in 0..dim {
                    if !fv[r].is_zero() {
                        out[r] = &out[r] + &(&fv[r] * c);
                    }
                }
            }
            out
        })
    }

    /// `F oo G = sum_i (-1)^{(n-1)(i-1)} F o_i G` over slots of `F`.
    pub fn circ_bar(&self, other: &Multilinear) -> Multilinear {
        let m = self.arity;
        let n = other.arity as i64;
        let mut acc = Multilinear::zero(m + other.arity - 1, self.dim);
        for i in 1..=m {
            let sign = ((n - 1) * (i as i64 - 1)).rem_euclid(2);
            let term = self.comp(other, i);
            acc = if sign == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// The composition bracket
    /// `[F, G] = F oo G - (-1)^{(m-1)(n-1)} G oo F`.
    pub fn bracket(&self, other: &Multilinear) -> Multilinear {
        let m = self.arity as i64;
        let n = other.arity as i64;
        let fg = self.circ_bar(other);
        let gf = other.circ_bar(self);
        let sign = ((m - 1) * (n - 1)).rem_euclid(2);
        if sign == 0 {
            fg.sub(&gf)
        } else {
            fg.add(&gf)
        }
    }

    /// Skew projection `(1/p!) sum_sigma sgn(sigma) F^sigma`.
    pub fn antisymmetrize(&self) -> Multilinear {
        let p = self.arity;
        let perms = permutations(p);
        let factorial: i64 = (1..=p as i64).product::<i64>().max(1);
        let inv = Q::new(1.into(), factorial.into());
        Multilinear::from_fn(p, self.dim, |tuple| {
            let mut out = vec![Q::zero(); self.dim];
            for (perm, sign) in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&k| tuple[k]).collect();
                let v = self.value(&permuted);
                for r in 0..self.dim {
                    if !v[r].is_zero() {
                        if *sign > 0 {
                            out[r] = &out[r] + &v[r];
                        } else {
                            out[r] = &out[r] - &v[r];
                        }
                    }
                }
            }
            for x in out.iter_mut() {
                *x = &*x * &inv;
            }
            out
        })
    }

    pub fn is_skew(&self) -> bool {
        *self == self.antisymmetrize()
    }
}

fn flatten(tuple: &[usize], dim: usize) -> usize {
    let mut idx = 0;
    for &t in tuple {
        idx = idx * dim + t;
    }
    idx
}

fn unflatten(mut flat: usize, arity: usize, dim: usize) -> Vec<usize> {
    let mut tuple = vec![0; arity];
    for slot in (0..arity).rev() {
        tuple[slot] = flat % dim;
        flat /= dim;
    }
    tuple
}

/// All permutations of `0..p` with their signs, in a deterministic order.
fn permutations(p: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = vec![false; p];
    fn rec(
        p: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        if current.len() == p {
            let mut inversions = 0;
            for i in 0..p {
                for j in i + 1..p {
                    if current[i] > current[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((current.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..p {
            if !used[k] {
                used[k] = true;
                current.push(k);
                rec(p, current, used, out);
                current.pop();
                used[k] = false;
            }
        }
    }
    rec(p, &mut current, &mut used, &mut out);
    out
}

/// Greedy minimal generating set: repeatedly adjoin the first basis
/// element outside the unital subalgebra generated so far.
pub fn algebra_generators(alg: &Algebra) -> Vec<usize> {
    let n = alg.dim();
    let mut gens: Vec<usize> = Vec::new();
    loop {
        // Span-closure of unit + generators under products.
        let mut vectors: Vec<Vec<Q>> = vec![alg.unit()];
        for &g in &gens {
            let mut e = vec![Q::zero(); n];
            e[g] = Q::one();
            vectors.push(e);
        }
        let mut span = crate::ratlin::Subspace::span(n, &vectors);
        loop {
            let mut grew = false;
            let basis: Vec<Vec<Q>> = span.basis_rows().to_vec();
            for a in &basis {
                for b in &basis {
                    let prod = alg.mul(a, b);
                    if !span.contains(&prod) {
                        let mut vs = basis.clone();
                        vs.push(prod);
                        vs.extend(span.basis_rows().to_vec());
                        span = crate::ratlin::Subspace::span(n, &vs);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if span.dim() == n {
            return gens;
        }
        let mut found = None;
        for s in 0..n {
            let mut e = vec![Q::zero(); n];
            e[s] = Q::one();
            if !span.contains(&e) {
                found = Some(s);
                break;
            }
        }
        gens.push(found.expect("span is proper, so some basis element lies outside"));
    }
}

/// Basis of the space of alternating `p`-linear maps `A^p -> A` that
/// are derivations in every slot, found by exact linear algebra:
/// unknowns are the values on strictly increasing generator tuples, the
/// extension to all basis tuples follows the Leibniz rule along a fixed
/// factorization of each basis element, and the constraints are full
/// alternation plus the slot-one Leibniz rule on all products.
pub fn skew_multiderivations(alg: &Algebra, p: usize) -> Vec<Multilinear> {
    assert!(p >= 1);
    let n = alg.dim();
    let gens = algebra_generators(alg);
    let g = gens.len();

    // Strictly increasing p-tuples of generator positions.
    let gen_tuples: Vec<Vec<usize>> = increasing_tuples(g, p);
    let n_unknown = gen_tuples.len() * n;
    if n_unknown == 0 {
        return Vec::new();
    }

    // Factor every non-unit, non-generator basis element as
    // generator * basis element with coefficient one.
    // fact[s] = Some((generator basis index, cofactor basis index)).
    let mut fact: Vec<Option<(usize, usize)>> = vec![None; n];
    for s in 0..n {
        if s == alg.unit_index() || gens.contains(&s) {
            continue;
        }
        let mut es = vec![Q::zero(); n];
        es[s] = Q::one();
        let mut found = None;
        'search: for &gi in &gens {
            for t in 0..n {
                if alg.mul_basis(gi, t) == es {
                    found = Some((gi, t));
                    break 'search;
                }
            }
        }
        fact[s] = Some(found.unwrap_or_else(|| {
            panic!(
                "basis element `{}` is not a generator times a basis element",
                alg.labels()[s]
            )
        }));
    }

    // Depth of each basis element under the factorization, for ordering
    // the extension so every reduction refers to already-computed rows.
    let mut depth = vec![0usize; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            let want = match fact[s] {
                None => {
                    if s == alg.unit_index() {
                        0
                    } else {
                        1
                    }
                }
                Some((_, rest)) => depth[rest] + 1,
            };
            if depth[s] != want {
                depth[s] = want;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // value[flat tuple] = matrix (n x n_unknown): row r gives the r-th
    // coordinate of F(tuple) as a linear form in the unknowns.
    let count = n.pow(p as u32);
    let mut value: Vec<Option<Vec<Vec<Q>>>> = vec![None; count];

    // Position of a generator basis index within `gens`.
    let gen_pos = |basis_idx: usize| gens.iter().position(|&x| x == basis_idx);

    // Tuples ordered by total depth so reductions are always resolved.
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&flat| {
        unflatten(flat, p, n)
            .iter()
            .map(|&s| depth[s])
            .sum::<usize>()
    });

    for &flat in &order {
        let tuple = unflatten(flat, p, n);
        // A unit slot kills the value: derivations vanish on 1.
        if tuple.iter().any(|&s| s == alg.unit_index()) {
            value[flat] = Some(vec![vec![Q::zero(); n_unknown]; n]);
            continue;
        }
        // All-generator tuples are (signed) unknowns.
        if tuple.iter().all(|&s| gen_pos(s).is_some()) {
            let positions: Vec<usize> = tuple.iter().map(|&s| gen_pos(s).unwrap()).collect();
            let mut sorted = positions.clone();
            sorted.sort_unstable();
            let has_repeat = sorted.windows(2).any(|w| w[0] == w[1]);
            let mut m = vec![vec![Q::zero(); n_unknown]; n];
            if !has_repeat {
                let mut inversions = 0;
                for i in 0..p {
                    for j in i + 1..p {
                        if positions[i] > positions[j] {
                            inversions += 1;
                        }
                    }
                }
                let tuple_id = gen_tuples
                    .iter()
                    .position(|t| *t == sorted)
                    .expect("sorted strict tuple is enumerated");
                let sign = if inversions % 2 == 0 {
                    Q::one()
                } else {
                    -Q::one()
                };
                for r in 0..n {
                    m[r][tuple_id * n + r] = sign.clone();
                }
            }
            value[flat] = Some(m);
            continue;
        }
        // Reduce the leftmost non-generator slot by the Leibniz rule:
        // F(.., g*rest, ..) = g * F(.., rest, ..) + rest * F(.., g, ..).
        let slot = tuple
            .iter()
            .position(|&s| gen_pos(s).is_none())
            .expect("a non-generator slot exists");
        let (gi, rest) = fact[tuple[slot]].expect("non-generator, non-unit element factors");
        let mut t1 = tuple.clone();
        t1[slot] = rest;
        let mut t2 = tuple.clone();
        t2[slot] = gi;
        let m1 = value[flatten(&t1, n)]
            .as_ref()
            .expect("lower-depth tuple already computed")
            .clone();
        let m2 = value[flatten(&t2, n)]
            .as_ref()
            .expect("lower-depth tuple already computed")
            .clone();
        value[flat] = Some(mat_add(
            &scalar_mul_matrix(alg, gi, &m1),
            &scalar_mul_matrix(alg, rest, &m2),
        ));
    }

    // Constraint rows over the unknowns.
    let mut rows: Vec<Vec<Q>> = Vec::new();

    // Alternation: swapping adjacent slots negates the value.
    for flat in 0..count {
        let tuple = unflatten(flat, p, n);
        for i in 0..p.saturating_sub(1) {
            let mut swapped = tuple.clone();
            swapped.swap(i, i + 1);
            let a = value[flat].as_ref().unwrap();
            let b = value[flatten(&swapped, n)].as_ref().unwrap();
            for r in 0..n {
                let row: Vec<Q> = (0..n_unknown).map(|u| &a[r][u] + &b[r][u]).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }

    // Slot-one Leibniz on all basis products:
    // F(ab, w) = a F(b, w) + b F(a, w), extended linearly in ab.
    for a in 0..n {
        for b in 0..n {
            let prod = alg.mul_basis(a, b);
            for wflat in 0..n.pow((p - 1) as u32) {
                let w = unflatten(wflat, p - 1, n);
                // Left side: sum over the coordinates of a*b.
                let mut lhs = vec![vec![Q::zero(); n_unknown]; n];
                for (s, c) in prod.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = Vec::with_capacity(p);
                    t.push(s);
                    t.extend_from_slice(&w);
                    let m = value[flatten(&t, n)].as_ref().unwrap();
                    for r in 0..n {
                        for u in 0..n_unknown {
                            if !m[r][u].is_zero() {
                                lhs[r][u] = &lhs[r][u] + &(&m[r][u] * c);
                            }
                        }
                    }
                }
                // Right side: a F(b, w) + b F(a, w).
                let mut tb = Vec::with_capacity(p);
                tb.push(b);
                tb.extend_from_slice(&w);
                let mut ta = Vec::with_capacity(p);
                ta.push(a);
                ta.extend_from_slice(&w);
                let rhs = mat_add(
                    &scalar_mul_matrix(alg, a, value[flatten(&tb, n)].as_ref().unwrap()),
                    &scalar_mul_matrix(alg, b, value[flatten(&ta, n)].as_ref().unwrap()),
                );
                for r in 0..n {
                    let row: Vec<Q> = (0..n_unknown)
                        .map(|u| &lhs[r][u] - &rhs[r][u])
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }

    let constraint = if rows.is_empty() {
        RationalMatrix::zeros(0, n_unknown)
    } else {
        RationalMatrix::from_rows(n_unknown, rows)
    };
    let kernel = constraint.rref_decompose().kernel;

    // Materialize each kernel vector as a full value table.
    let mut result = Vec::new();
    for kv in kernel.basis_rows() {
        let table = Multilinear::from_fn(p, n, |tuple| {
            let m = value[flatten(tuple, n)].as_ref().unwrap();
            (0..n)
                .map(|r| {
                    let mut acc = Q::zero();
                    for u in 0..n_unknown {
                        if !m[r][u].is_zero() {
                            acc = acc + &(&m[r][u] * &kv[u]);
                        }
                    }
                    acc
                })
                .collect()
        });
        result.push(table);
    }
    result
}

/// Strictly increasing `p`-tuples drawn from `0..g`.
fn increasing_tuples(g: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(g: usize, p: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        for k in start..g {
            current.push(k);
            rec(g, p, k + 1, current, out);
            current.pop();
        }
    }
    rec(g, p, 0, &mut current, &mut out);
    out
}

/// Left-multiplies each column of an unknown-linear value matrix by the
/// basis element `b`: row r of the result is sum_s (e_b e_s)_r M[s].
fn scalar_mul_matrix(alg: &Algebra, b: usize, m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = alg.dim();
    let width = m[0].len();
    let mut out = vec![vec![Q::zero(); width]; n];
    for s in 0..n {
        if m[s].iter().all(|x| x.is_zero()) {
            continue;
        }
        let prod = alg.mul_basis(b, s);
        for r in 0..n {
            if prod[r].is_zero() {
                continue;
            }
            for u in 0..width {
                if !m[s][u].is_zero() {
                    out[r][u] = &out[r][u] + &(&prod[r] * &m[s][u]);
                }
            }
        }
    }
    out
}

fn mat_add(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}
