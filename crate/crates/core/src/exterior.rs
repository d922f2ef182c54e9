//! Invariant exterior forms on a Lie algebra: the wedge product, the
//! Chevalley-Eilenberg differential and Gram-determinant pairings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealgebra::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{Ring, Scalar};
use crate::symplectic::SymplecticStructure;

/// Maximum supported algebra dimension.
pub const MAX_DIM: usize = 16;

/// A basis monomial `e^{i1 ... ik}` stored as a bitmask (bit `i-1` for `e^i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    /// From 1-based indices in any order; `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u32;
        for &i in indices {
            assert!((1..=MAX_DIM).contains(&i), "index {i} out of range");
            let b = 1u32 << (i - 1);
            if bits & b != 0 {
                return None;
            }
            bits |= b;
        }
        Some(Blade(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn complement(self, dim: usize) -> Blade {
        Blade(!self.0 & full_mask(dim))
    }

    /// `e^self ∧ e^other = sign * e^(self ∪ other)`, or `None` when they share
    /// an index.
    pub fn wedge_sign(self, other: Blade) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Count pairs (i in self, j in other) with i > j.
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            inversions += (self.0 >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        // Same grade: lexicographic on sorted index tuples, which is the
        // reverse order of the bit-reversed masks.
        self.grade().cmp(&other.grade()).then_with(|| other.0.reverse_bits().cmp(&self.0.reverse_bits()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn full_mask(dim: usize) -> u32 {
    if dim >= 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Binomial coefficient; zero outside `0..=n`.
pub fn binomial(n: usize, k: isize) -> usize {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = k as usize;
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All degree-`k` blades of a `dim`-dimensional algebra in lexicographic order.
pub fn blades(dim: usize, k: usize) -> Vec<Blade> {
    fn go(start: usize, dim: usize, left: usize, cur: u32, out: &mut Vec<Blade>) {
        if left == 0 {
            out.push(Blade(cur));
            return;
        }
        for i in start..dim {
            if dim - i < left {
                break;
            }
            go(i + 1, dim, left - 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::with_capacity(binomial(dim, k as isize));
    if k <= dim {
        go(0, dim, k, 0, &mut out);
    }
    out
}

/// Homogeneous invariant form of fixed degree with coefficients in `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<R> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Blade, R>,
}

impl<R: Ring> Form<R> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim);
        Form { dim, degree, coeffs: BTreeMap::new() }
    }

    /// The 0-form `r`.
    pub fn constant(dim: usize, r: R) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(Blade::EMPTY, r);
        f
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, R::one())
    }

    /// `e^{i1 ... ik}` from 1-based indices; repeated indices give zero.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut f = Self::zero(dim, indices.len());
        if let Some(b) = Blade::from_indices(indices) {
            let sign = permutation_sign(indices);
            f.add_term(b, if sign > 0 { R::one() } else { -R::one() });
        }
        f
    }

    pub fn from_blade(dim: usize, blade: Blade, r: R) -> Self {
        let mut f = Self::zero(dim, blade.grade());
        f.add_term(blade, r);
        f
    }

    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Blade, R)>) -> Self {
        let mut f = Self::zero(dim, degree);
        for (b, r) in terms {
            assert_eq!(b.grade(), degree, "blade degree mismatch");
            f.add_term(b, r);
        }
        f
    }

    /// Coefficient vector against `blades(dim, degree)`.
    pub fn from_vector(dim: usize, degree: usize, v: &[R]) -> Self {
        let bs = blades(dim, degree);
        assert_eq!(bs.len(), v.len());
        Self::from_terms(dim, degree, bs.into_iter().zip(v.iter().cloned()))
    }

    pub fn to_vector(&self) -> Vec<R> {
        blades(self.dim, self.degree).into_iter().map(|b| self.coeff(b)).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, b: Blade) -> R {
        self.coeffs.get(&b).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &R)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, b: Blade, r: R) {
        assert_eq!(b.grade(), self.degree);
        if r.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&b) {
            Some(old) => old + r,
            None => r,
        };
        if !sum.is_zero() {
            self.coeffs.insert(b, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (b, r) in &other.coeffs {
            out.add_term(*b, r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|r| -r.clone())
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, r) in &self.coeffs {
            out.add_term(*b, r.clone() * s.clone());
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, r) in &self.coeffs {
            out.add_term(*b, r.scale(s));
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Form<S> {
        let mut out = Form::zero(self.dim, self.degree);
        for (b, r) in &self.coeffs {
            out.add_term(*b, f(r));
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "forms on different algebras");
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
    }

    /// Graded-commutative exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "forms on different algebras");
        let degree = self.degree + other.degree;
        if degree > self.dim {
            // Only zero forms live above the top degree.
            return Self::zero(self.dim, self.dim);
        }
        let mut out = Self::zero(self.dim, degree);
        for (ba, ra) in &self.coeffs {
            for (bb, rb) in &other.coeffs {
                if let Some(sign) = ba.wedge_sign(*bb) {
                    let v = ra.clone() * rb.clone();
                    out.add_term(ba.union(*bb), if sign > 0 { v } else { -v });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Coefficient of `e^{1...dim}`.
    pub fn top_coeff(&self) -> R {
        self.coeff(Blade(full_mask(self.dim)))
    }

    /// Human-readable form, e.g. `e12 + 2*e34 - 1/3*e56`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (b, r)) in self.coeffs.iter().enumerate() {
            let parts = r.coeff_parts();
            let sym = blade_symbol(*b, self.dim);
            let body = match (&parts.body, sym.is_empty()) {
                (Some(c), true) => c.clone(),
                (None, true) => "1".into(),
                (Some(c), false) => format!("{c}*{sym}"),
                (None, false) => sym,
            };
            match (i, parts.negative) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

impl<R: Ring> fmt::Display for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `e14` for dim <= 9, `e{1,14}` above.
pub fn blade_symbol(b: Blade, dim: usize) -> String {
    let idx = b.indices();
    if idx.is_empty() {
        return String::new();
    }
    if dim <= 9 {
        format!("e{}", idx.iter().map(|i| i.to_string()).collect::<String>())
    } else {
        format!("e{{{}}}", idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Sign of the permutation that sorts `indices` (distinct entries assumed).
pub fn permutation_sign(indices: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            if indices[i] > indices[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `d(e^I)` by the Leibniz rule from the structure equations.
pub fn differential_of_blade(g: &LieAlgebra, blade: Blade) -> Form<Scalar> {
    let dim = g.dim();
    let idx = blade.indices();
    let mut out = Form::zero(dim, (idx.len() + 1).min(dim));
    if idx.len() == dim {
        return out;
    }
    for (pos, &k) in idx.iter().enumerate() {
        let left = Blade::from_indices(&idx[..pos]).unwrap();
        let right = Blade::from_indices(&idx[pos + 1..]).unwrap();
        let pos_sign = if pos % 2 == 0 { 1 } else { -1 };
        for (pair, c) in g.de(k).terms() {
            let Some(s1) = left.wedge_sign(*pair) else { continue };
            let mid = left.union(*pair);
            let Some(s2) = mid.wedge_sign(right) else { continue };
            let sign = pos_sign * s1 * s2;
            let v = if sign > 0 { c.clone() } else { -c.clone() };
            out.add_term(mid.union(right), v);
        }
    }
    out
}

/// Chevalley-Eilenberg differential, extended `R`-linearly (parameters are
/// constants).
pub fn differential<R: Ring>(g: &LieAlgebra, a: &Form<R>) -> Form<R> {
    assert_eq!(a.dim(), g.dim(), "form and algebra dimensions differ");
    let dim = g.dim();
    let mut out = Form::zero(dim, (a.degree() + 1).min(dim));
    if a.degree() == dim {
        return out;
    }
    for (b, r) in a.terms() {
        for (db, c) in differential_of_blade(g, *b).terms() {
            out.add_term(*db, r.scale(c));
        }
    }
    out
}

/// Matrix of a linear map `Λ^from -> Λ^to` in the lexicographic monomial
/// bases (columns indexed by the source basis).
pub fn operator_matrix(
    dim: usize,
    from: usize,
    to: usize,
    f: impl Fn(&Form<Scalar>) -> Form<Scalar>,
) -> Matrix<Scalar> {
    let src = blades(dim, from);
    let rows = binomial(dim, to as isize);
    let cols: Vec<Vec<Scalar>> = src
        .iter()
        .map(|b| {
            let img = f(&Form::from_blade(dim, *b, Scalar::one()));
            if img.is_zero() {
                vec![Scalar::zero(); rows]
            } else {
                assert_eq!(img.degree(), to, "operator produced the wrong degree");
                img.to_vector()
            }
        })
        .collect();
    Matrix::from_columns(rows, &cols)
}

/// Bilinear Gram-determinant extension of a pairing on 1-forms:
/// `<e^I, e^J> = det(pairing[I, J])`, and `<r, s> = r s` on 0-forms.
pub fn gram_pairing<R: Ring>(pairing: &Matrix<Scalar>, a: &Form<R>, b: &Form<R>) -> R {
    assert_eq!(a.degree(), b.degree(), "pairing forms of different degree");
    let mut acc = R::zero();
    for (ba, ra) in a.terms() {
        let ia = ba.indices();
        for (bb, rb) in b.terms() {
            let ib = bb.indices();
            let minor = Matrix::from_fn(ia.len(), ib.len(), |i, j| pairing[(ia[i] - 1, ib[j] - 1)].clone());
            let d = minor.det();
            if !d.is_zero() {
                acc = acc + (ra.clone() * rb.clone()).scale(&d);
            }
        }
    }
    acc
}

/// `ω^{-1}(a, b)` extended to k-forms by Gram determinants.
pub fn omega_inv_pairing<R: Ring>(omega: &SymplecticStructure, a: &Form<R>, b: &Form<R>) -> R {
    gram_pairing(omega.inverse_matrix(), a, b)
}

/// `ω^n / n!` and the `e^{1...2n}` coefficient of `ω^n`, or `None` when that
/// coefficient vanishes.
pub fn volume_data<R: Ring>(omega: &Form<R>) -> Result<Option<(Form<R>, R)>> {
    let dim = omega.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::Usage(format!("volume form needs an even-dimensional algebra, got {dim}")));
    }
    if omega.degree() != 2 {
        return Err(Error::Usage(format!("expected a 2-form, got degree {}", omega.degree())));
    }
    let n = dim / 2;
    let top = omega.pow(n);
    let coeff = top.top_coeff();
    if coeff.is_zero() {
        return Ok(None);
    }
    let fact: u64 = (1..=n as u64).product();
    let vol = top.scale_scalar(&Scalar::new(1.into(), fact.into()));
    Ok(Some((vol, coeff)))
}

/// Antisymmetric matrix `Ω` with `ω = Σ_{i<j} Ω_ij e^{ij}`.
pub fn two_form_matrix(omega: &Form<Scalar>) -> Matrix<Scalar> {
    assert_eq!(omega.degree(), 2);
    let n = omega.dim();
    let mut m = Matrix::zeros(n, n);
    for (b, r) in omega.terms() {
        let idx = b.indices();
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        m[(i, j)] = r.clone();
        m[(j, i)] = -r.clone();
    }
    m
}

impl<R: Ring> Form<R> {
    /// `true` when every coefficient is zero after `d`.
    pub fn is_closed(&self, g: &LieAlgebra) -> bool {
        differential(g, self).is_zero()
    }
}

impl Form<Scalar> {
    pub fn lift<R: Ring>(&self) -> Form<R> {
        self.map_coeffs(R::from_scalar)
    }
}
