//! Brute-force oracles shared by the integration tests. They work on plain
//! index lists and nested vectors so they do not go through the library's
//! blade arithmetic or elimination code.

#![allow(dead_code)]

use lefschetz::exterior::{blades, Form};
use lefschetz::liealgebra::{catalog_get, LieAlgebra};
use lefschetz::scalar::{frac, int, Scalar};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Sign of the permutation sorting `idx`, zero on a repeated index.
pub fn sort_sign(idx: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Leibniz expansion.
pub fn leibniz_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut acc = Scalar::zero();
    for p in permutations(n) {
        let mut term = int(sort_sign(&p));
        for (i, &j) in p.iter().enumerate() {
            term *= &m[i][j];
        }
        acc += term;
    }
    acc
}

/// Row echelon rank with naive pivoting.
pub fn naive_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn transpose(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// All increasing `k`-subsets of `1..=dim` in lex order.
pub fn subsets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=dim {
            cur.push(i);
            go(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, dim, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficient map `subset -> value` of a form.
pub fn coeff_of(f: &Form<Scalar>, idx: &[usize]) -> Scalar {
    let pos = subsets(f.dim(), f.degree()).iter().position(|s| s == idx).unwrap();
    f.to_vector()[pos].clone()
}

pub fn form_from_map(dim: usize, degree: usize, value: impl Fn(&[usize]) -> Scalar) -> Form<Scalar> {
    let v: Vec<Scalar> = subsets(dim, degree).iter().map(|s| value(s)).collect();
    Form::from_vector(dim, degree, &v)
}

/// `a1 ∧ ... ∧ ak` for 1-forms, as the maximal minors of the coefficient matrix.
pub fn wedge_of_one_forms(dim: usize, forms: &[Vec<Scalar>]) -> Form<Scalar> {
    form_from_map(dim, forms.len(), |s| {
        let m: Vec<Vec<Scalar>> = forms.iter().map(|f| s.iter().map(|&i| f[i - 1].clone()).collect()).collect();
        leibniz_det(&m)
    })
}

/// Wedge of two forms from the shuffle formula on index lists.
pub fn shuffle_wedge(a: &Form<Scalar>, b: &Form<Scalar>) -> Form<Scalar> {
    let dim = a.dim();
    let (p, q) = (a.degree(), b.degree());
    let sa = subsets(dim, p);
    let sb = subsets(dim, q);
    let va = a.to_vector();
    let vb = b.to_vector();
    let target = subsets(dim, p + q);
    let mut out = vec![Scalar::zero(); target.len()];
    for (i, x) in sa.iter().enumerate() {
        for (j, y) in sb.iter().enumerate() {
            let mut joined = x.clone();
            joined.extend(y);
            let s = sort_sign(&joined);
            if s == 0 {
                continue;
            }
            joined.sort();
            let t = target.iter().position(|z| *z == joined).unwrap();
            out[t] += &va[i] * &vb[j] * int(s);
        }
    }
    Form::from_vector(dim, p + q, &out)
}

/// `d` on a basis monomial by the graded Leibniz rule over the structure equations.
pub fn leibniz_d(g: &LieAlgebra, idx: &[usize]) -> Form<Scalar> {
    let dim = g.dim();
    let mut acc = Form::zero(dim, idx.len() + 1);
    for r in 0..idx.len() {
        let left = idx[..r].iter().fold(Form::one(dim), |f, &i| shuffle_wedge(&f, &Form::basis(dim, &[i])));
        let right = idx[r + 1..].iter().fold(Form::one(dim), |f, &i| shuffle_wedge(&f, &Form::basis(dim, &[i])));
        let term = shuffle_wedge(&shuffle_wedge(&left, g.de(idx[r])), &right);
        acc = if r % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Matrix of `d: Λ^k -> Λ^{k+1}` as rows of the target.
pub fn d_rows(g: &LieAlgebra, k: usize) -> Vec<Vec<Scalar>> {
    let dim = g.dim();
    let cols: Vec<Vec<Scalar>> = subsets(dim, k).iter().map(|s| leibniz_d(g, s).to_vector()).collect();
    transpose(&cols)
}

pub fn oracle_betti(g: &LieAlgebra) -> Vec<usize> {
    let dim = g.dim();
    let rank = |k: isize| -> usize {
        if k < 0 || k as usize >= dim {
            0
        } else {
            naive_rank(&d_rows(g, k as usize))
        }
    };
    (0..=dim).map(|k| subsets(dim, k).len() - rank(k as isize) - rank(k as isize - 1)).collect()
}

/// Antisymmetric matrix of a 2-form.
pub fn omega_matrix(w: &Form<Scalar>) -> Vec<Vec<Scalar>> {
    let n = w.dim();
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for s in subsets(n, 2) {
        let c = coeff_of(w, &s);
        m[s[0] - 1][s[1] - 1] = c.clone();
        m[s[1] - 1][s[0] - 1] = -c;
    }
    m
}

/// Inverse by adjugate.
pub fn adjugate_inverse(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = m.len();
    let det = leibniz_det(m);
    let minor = |r: usize, c: usize| -> Vec<Vec<Scalar>> {
        (0..n).filter(|&i| i != r).map(|i| (0..n).filter(|&j| j != c).map(|j| m[i][j].clone()).collect()).collect()
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sign = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                    sign * leibniz_det(&minor(j, i)) / &det
                })
                .collect()
        })
        .collect()
}

/// `ω^{-1}(a, b)` with `<e^I, e^J> = det Ω^{-1}[I, J]`.
pub fn oracle_pairing(w: &Form<Scalar>, a: &Form<Scalar>, b: &Form<Scalar>) -> Scalar {
    let pi = adjugate_inverse(&omega_matrix(w));
    let sets = subsets(a.dim(), a.degree());
    let (va, vb) = (a.to_vector(), b.to_vector());
    let mut acc = Scalar::zero();
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            if va[i].is_zero() || vb[j].is_zero() {
                continue;
            }
            let m: Vec<Vec<Scalar>> =
                x.iter().map(|&r| y.iter().map(|&c| pi[r - 1][c - 1].clone()).collect()).collect();
            acc += &va[i] * &vb[j] * leibniz_det(&m);
        }
    }
    acc
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, i| acc * int(i))
}

/// `*_s b` solved from `e^I ∧ *_s b = ω^{-1}(e^I, b) ω^n/n!` one blade at a time.
pub fn oracle_star(w: &Form<Scalar>, b: &Form<Scalar>) -> Form<Scalar> {
    let dim = w.dim();
    let n = dim / 2;
    let k = b.degree();
    let mut top = Form::one(dim);
    for _ in 0..n {
        top = shuffle_wedge(&top, w);
    }
    let vol = coeff_of(&top, &(1..=dim).collect::<Vec<_>>()) / factorial(n);
    form_from_map(dim, dim - k, |c| {
        let i: Vec<usize> = (1..=dim).filter(|x| !c.contains(x)).collect();
        let mut joined = i.clone();
        joined.extend(c);
        let sign = int(sort_sign(&joined));
        oracle_pairing(w, &form_from_map(dim, k, |s| if s == i.as_slice() { int(1) } else { int(0) }), b) * &vol * sign
    })
}

/// Matrix of `α ↦ Jα` on `Λ^2`, with `J e^i = Σ_a J[a][i] e^a`.
pub fn j_on_two_forms(j: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let dim = j.len();
    let pairs = subsets(dim, 2);
    let cols: Vec<Vec<Scalar>> = pairs
        .iter()
        .map(|p| {
            let (i, jj) = (p[0] - 1, p[1] - 1);
            pairs
                .iter()
                .map(|q| {
                    let (a, b) = (q[0] - 1, q[1] - 1);
                    &j[a][i] * &j[b][jj] - &j[b][i] * &j[a][jj]
                })
                .collect()
        })
        .collect();
    transpose(&cols)
}

/// Dimension of the `s`-eigenspace of a square matrix.
pub fn eigenspace_dim(m: &[Vec<Scalar>], s: i64) -> usize {
    let n = m.len();
    let shifted: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { &m[i][j] - int(s) } else { m[i][j].clone() }).collect()).collect();
    n - naive_rank(&shifted)
}

pub fn catalog(name: &str) -> LieAlgebra {
    catalog_get(name).unwrap()
}

pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    frac(if num == 0 { 1 } else { num }, den)
}

/// Form of the given degree with 1 to 3 random nonzero terms.
pub fn random_sparse_form(rng: &mut impl Rng, dim: usize, degree: usize) -> Form<Scalar> {
    let all = blades(dim, degree);
    let count = rng.gen_range(1..=3.min(all.len()));
    let chosen: Vec<_> = all.choose_multiple(rng, count).cloned().collect();
    Form::from_terms(dim, degree, chosen.into_iter().map(|b| (b, small_rational(rng))))
}

pub fn vec_matrix(m: &lefschetz::linalg::Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}
