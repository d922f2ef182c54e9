//! Almost-complex structures compatible with `ω`, the induced metric and its
//! Hodge theory on invariant forms, the groups `H^±_J`, primitive
//! `J`-invariant cohomology and the kernel of the Lejmi operator `P_J`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cohomology::{differential_matrix, Cohomology};
use crate::error::{Error, Result};
use crate::exterior::{binomial, operator_matrix, Form};
use crate::liealgebra::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{int, Scalar};
use crate::symplectic::{star_by_pairing, SymplecticStructure};

/// `J` on the coframe: `J e^i = Σ_k J_ki e^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostComplexStructure {
    j: Matrix<Scalar>,
}

impl AlmostComplexStructure {
    pub fn new(j: Matrix<Scalar>) -> Result<Self> {
        if !j.is_square() {
            return Err(Error::Usage("J must be a square matrix".into()));
        }
        let n = j.rows();
        if j.mul(&j) != Matrix::identity(n).scale(&int(-1)) {
            return Err(Error::Precondition("J does not square to -1".into()));
        }
        Ok(AlmostComplexStructure { j })
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn negate(&self) -> Self {
        AlmostComplexStructure { j: self.j.scale(&int(-1)) }
    }

    /// `J e^i` as a 1-form.
    fn image(&self, i: usize) -> Form<Scalar> {
        Form::from_vector(self.dim(), 1, &self.j.column(i - 1))
    }

    /// Matrix of the induced involution on `Λ^2`.
    pub fn two_form_matrix(&self) -> Matrix<Scalar> {
        let dim = self.dim();
        operator_matrix(dim, 2, 2, |f| j_two_form_action(self, f))
    }
}

/// `(Ja)(u, v) = a(Ju, Jv)`, i.e. `J e^{ij} = J e^i ∧ J e^j`.
pub fn j_two_form_action(j: &AlmostComplexStructure, a: &Form<Scalar>) -> Form<Scalar> {
    assert_eq!(a.degree(), 2, "J acts on 2-forms");
    let mut out = Form::zero(a.dim(), 2);
    for (b, r) in a.terms() {
        let idx = b.indices();
        out = out.add(&j.image(idx[0]).wedge(&j.image(idx[1])).scale(r));
    }
    out
}

/// `(J, ω, g)` with `g(u, v) = ω(u, Ju)` positive definite.
#[derive(Clone, Debug)]
pub struct CompatibleTriple {
    j: AlmostComplexStructure,
    omega: SymplecticStructure,
    g_matrix: Matrix<Scalar>,
    /// Metric on 1-forms.
    g_dual: Matrix<Scalar>,
    /// `sqrt(det g)`.
    volume_coeff: Scalar,
}

fn leading_minors_positive(m: &Matrix<Scalar>) -> bool {
    (1..=m.rows()).all(|k| Matrix::from_fn(k, k, |i, j| m[(i, j)].clone()).det().is_positive())
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Scalar::new(root(x.numer())?, root(x.denom())?))
}

pub fn compatibility_check(
    j: &AlmostComplexStructure,
    omega: &SymplecticStructure,
) -> Result<Option<CompatibleTriple>> {
    if j.dim() != omega.dim() {
        return Err(Error::Usage("J and ω have different dimensions".into()));
    }
    let jm = j.matrix();
    let w = omega.omega_matrix();
    if jm.mul(w).mul(&jm.transpose()) != *w {
        return Ok(None);
    }
    // On vectors J acts by the transpose of its coframe matrix.
    let g_matrix = w.mul(&jm.transpose());
    if g_matrix != g_matrix.transpose() || !leading_minors_positive(&g_matrix) {
        return Ok(None);
    }
    let Some(volume_coeff) = rational_sqrt(&g_matrix.det()) else {
        return Err(Error::UnsupportedMetric("det g is not the square of a rational".into()));
    };
    let g_dual = g_matrix.inverse().expect("positive definite");
    Ok(Some(CompatibleTriple { j: j.clone(), omega: omega.clone(), g_matrix, g_dual, volume_coeff }))
}

impl CompatibleTriple {
    pub fn j(&self) -> &AlmostComplexStructure {
        &self.j
    }

    pub fn omega(&self) -> &SymplecticStructure {
        &self.omega
    }

    pub fn g_matrix(&self) -> &Matrix<Scalar> {
        &self.g_matrix
    }

    fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn hodge_star(&self, a: &Form<Scalar>) -> Form<Scalar> {
        star_by_pairing(&self.g_dual, &self.volume_coeff, a)
    }

    /// Metric inner product of two forms of the same degree.
    pub fn inner(&self, a: &Form<Scalar>, b: &Form<Scalar>) -> Scalar {
        crate::exterior::gram_pairing(&self.g_dual, a, b)
    }

    /// Gram matrix of the inner product on `Λ^k`.
    pub fn inner_matrix(&self, k: usize) -> Matrix<Scalar> {
        let dim = self.dim();
        let basis = crate::exterior::blades(dim, k);
        Matrix::from_fn(basis.len(), basis.len(), |i, j| {
            self.inner(&Form::from_blade(dim, basis[i], Scalar::one()), &Form::from_blade(dim, basis[j], Scalar::one()))
        })
    }

    fn star_matrix(&self, k: usize) -> Matrix<Scalar> {
        let dim = self.dim();
        operator_matrix(dim, k, dim - k, |f| self.hodge_star(f))
    }
}

/// Matrices of `d`, `δ` and `Δ` on invariant forms of every degree.
#[derive(Clone, Debug)]
pub struct HodgeOperators {
    pub d: Vec<Matrix<Scalar>>,
    /// `δ: Λ^k -> Λ^{k-1}`.
    pub codifferential: Vec<Matrix<Scalar>>,
    pub laplacian: Vec<Matrix<Scalar>>,
}

pub fn hodge_operators(triple: &CompatibleTriple, g: &LieAlgebra) -> HodgeOperators {
    let dim = g.dim();
    let star: Vec<_> = (0..=dim).map(|k| triple.star_matrix(k)).collect();
    let d: Vec<_> = (0..=dim).map(|k| differential_matrix(g, k)).collect();
    // δ = -*d* in even dimension.
    let codifferential: Vec<Matrix<Scalar>> = (0..=dim)
        .map(|k| {
            if k == 0 {
                Matrix::zeros(0, 1)
            } else {
                star[dim - k + 1].mul(&d[dim - k]).mul(&star[k]).scale(&int(-1))
            }
        })
        .collect();
    let laplacian = (0..=dim)
        .map(|k| {
            let size = binomial(dim, k as isize);
            let mut m = Matrix::zeros(size, size);
            if k >= 1 {
                m = m.add(&d[k - 1].mul(&codifferential[k]));
            }
            if k < dim {
                m = m.add(&codifferential[k + 1].mul(&d[k]));
            }
            m
        })
        .collect();
    HodgeOperators { d, codifferential, laplacian }
}

pub fn hodge_laplacian(triple: &CompatibleTriple, g: &LieAlgebra, a: &Form<Scalar>) -> Form<Scalar> {
    let ops = hodge_operators(triple, g);
    Form::from_vector(g.dim(), a.degree(), &ops.laplacian[a.degree()].apply(&a.to_vector()))
}

/// A subspace of `H^k` given by the classes of a space of cocycles.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSpace {
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    pub representatives: Vec<Form<Scalar>>,
    /// The classes as a subspace of `H^k` coordinates.
    pub classes: Subspace,
}

fn class_space(cohomology: &Cohomology, k: usize, dim: usize, cocycles: &Subspace) -> ClassSpace {
    let coords = cohomology.basis(k).coord_matrix();
    let mut span = Subspace::zero(coords.rows());
    let mut representatives = Vec::new();
    for v in cocycles.basis() {
        let c = coords.apply(v);
        if !span.contains(&c) {
            span = span.sum(&Subspace::span(coords.rows(), &[c]));
            representatives.push(Form::from_vector(dim, k, v));
        }
    }
    ClassSpace { dim: span.dim(), representatives, classes: span }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JInvariantCohomology {
    pub h_plus: ClassSpace,
    pub h_minus: ClassSpace,
    pub pure_and_full: bool,
}

fn eigenspace(m: &Matrix<Scalar>, lambda: i64) -> Subspace {
    Subspace::kernel(&m.sub(&Matrix::identity(m.rows()).scale(&int(lambda))))
}

fn closed_two_forms(g: &LieAlgebra) -> Subspace {
    Subspace::kernel(&differential_matrix(g, 2))
}

/// `H^±_J`: classes of closed `J`-invariant / anti-invariant 2-forms.
pub fn j_invariant_cohomology(g: &LieAlgebra, j: &AlmostComplexStructure) -> JInvariantCohomology {
    let cohomology = Cohomology::compute(g);
    j_invariant_cohomology_with(g, &cohomology, j)
}

pub fn j_invariant_cohomology_with(
    g: &LieAlgebra,
    cohomology: &Cohomology,
    j: &AlmostComplexStructure,
) -> JInvariantCohomology {
    let jm = j.two_form_matrix();
    let closed = closed_two_forms(g);
    let h_plus = class_space(cohomology, 2, g.dim(), &eigenspace(&jm, 1).intersection(&closed));
    let h_minus = class_space(cohomology, 2, g.dim(), &eigenspace(&jm, -1).intersection(&closed));
    let b2 = cohomology.basis(2).betti();
    let direct = h_plus.classes.intersection(&h_minus.classes).dim() == 0;
    let full = h_plus.classes.sum(&h_minus.classes).dim() == b2;
    JInvariantCohomology { h_plus, h_minus, pure_and_full: direct && full }
}

/// `L^{n-1}: Λ^2 -> Λ^{2n}`.
fn lefschetz_power_on_two_forms(omega: &SymplecticStructure) -> Matrix<Scalar> {
    let dim = omega.dim();
    let wn = omega.omega().pow(omega.half_dim() - 1);
    operator_matrix(dim, 2, dim, |f| wn.wedge(f))
}

/// Primitive 2-forms: `ω^{n-1} ∧ a = 0`.
pub fn primitive_two_forms(omega: &SymplecticStructure) -> Subspace {
    Subspace::kernel(&lefschetz_power_on_two_forms(omega))
}

/// `H^+_{J,0}`: classes of closed, `J`-invariant, primitive 2-forms.
pub fn primitive_j_cohomology(g: &LieAlgebra, j: &AlmostComplexStructure, omega: &SymplecticStructure) -> ClassSpace {
    let cohomology = Cohomology::compute(g);
    primitive_j_cohomology_with(g, &cohomology, j, omega)
}

pub fn primitive_j_cohomology_with(
    g: &LieAlgebra,
    cohomology: &Cohomology,
    j: &AlmostComplexStructure,
    omega: &SymplecticStructure,
) -> ClassSpace {
    let space = eigenspace(&j.two_form_matrix(), 1)
        .intersection(&closed_two_forms(g))
        .intersection(&primitive_two_forms(omega));
    class_space(cohomology, 2, g.dim(), &space)
}

/// `P_J ψ = Δψ - (1/n) g(Δψ, ω) ω` as a map `Λ^2 -> Λ^2`.
pub fn lejmi_matrix(triple: &CompatibleTriple, ops: &HodgeOperators) -> Matrix<Scalar> {
    let dim = triple.dim();
    let n = Scalar::from_integer(BigInt::from(triple.omega.half_dim()));
    let w = triple.omega.omega().clone();
    let lap = &ops.laplacian[2];
    operator_matrix(dim, 2, 2, |f| {
        let delta = Form::from_vector(dim, 2, &lap.apply(&f.to_vector()));
        let coeff = triple.inner(&delta, &w) / &n;
        delta.sub(&w.scale(&coeff))
    })
}

/// `ker P_J` on invariant primitive 2-forms, as a subspace of `Λ^2`.
pub fn lejmi_kernel(triple: &CompatibleTriple, g: &LieAlgebra) -> Subspace {
    let ops = hodge_operators(triple, g);
    lejmi_kernel_with(triple, &ops)
}

pub fn lejmi_kernel_with(triple: &CompatibleTriple, ops: &HodgeOperators) -> Subspace {
    let domain = primitive_two_forms(&triple.omega);
    let basis = Matrix::from_columns(domain.ambient(), domain.basis());
    let restricted = lejmi_matrix(triple, ops).mul(&basis);
    let ambient = domain.ambient();
    let vectors: Vec<Vec<Scalar>> = restricted.nullspace().iter().map(|c| basis.apply(c)).collect();
    Subspace::span(ambient, &vectors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostKaehlerReport {
    pub h_plus: usize,
    pub h_minus: usize,
    pub h_plus_primitive: usize,
    #[serde(rename = "ker_PJ")]
    pub ker_pj: usize,
    pub pure_and_full: bool,
}

pub fn almost_kaehler_report(g: &LieAlgebra, triple: &CompatibleTriple) -> AlmostKaehlerReport {
    let cohomology = Cohomology::compute(g);
    let jinv = j_invariant_cohomology_with(g, &cohomology, &triple.j);
    let prim = primitive_j_cohomology_with(g, &cohomology, &triple.j, &triple.omega);
    AlmostKaehlerReport {
        h_plus: jinv.h_plus.dim,
        h_minus: jinv.h_minus.dim,
        h_plus_primitive: prim.dim,
        ker_pj: lejmi_kernel(triple, g).dim(),
        pure_and_full: jinv.pure_and_full,
    }
}
