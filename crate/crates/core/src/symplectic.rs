//! Symplectic operator calculus on invariant forms: the symplectic star, the
//! `L`, `Λ`, `H` operators, `d^Λ`, and the symplectic cohomologies built on
//! them.
//!
//! Conventions: `ω = Σ_{i<j} Ω_ij e^{ij}` and `ω^{-1}` on 1-forms is the
//! matrix `Ω^{-1}`, so the standard form `e^{12} + e^{34}` has
//! `ω^{-1}(e^1, e^2) = -1`. With this choice `Λω = n`, `H = [L, Λ]` acts on
//! `Λ^k` as `k - n`, and `(-1)^{k+1} *_s d *_s = [d, Λ]`. The opposite sign
//! of `ω^{-1}` breaks the last identity.

use serde::Serialize;

use num_traits::{One, Zero};

use crate::cohomology::{hlc_check_with, ClassCoords, Cohomology};
use crate::error::{Error, Result};
use crate::exterior::{
    binomial, blades, differential, gram_pairing, operator_matrix, two_form_matrix, volume_data, Form,
};
use crate::liealgebra::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticStructure {
    dim: usize,
    omega: Form<Scalar>,
    omega_matrix: Matrix<Scalar>,
    inverse_matrix: Matrix<Scalar>,
    volume: Form<Scalar>,
}

impl SymplecticStructure {
    /// Checks that `omega` is a closed nondegenerate 2-form on `g`.
    pub fn new(g: &LieAlgebra, omega: Form<Scalar>) -> Result<Self> {
        if omega.degree() != 2 {
            return Err(Error::Usage(format!("expected a 2-form, got degree {}", omega.degree())));
        }
        let d = differential(g, &omega);
        if !d.is_zero() {
            return Err(Error::Precondition(format!("ω = {omega} is not closed: dω = {d}")));
        }
        Self::nondegenerate(omega)
    }

    /// Linear-algebra part only (no closedness check).
    pub fn nondegenerate(omega: Form<Scalar>) -> Result<Self> {
        let dim = omega.dim();
        let Some((volume, _)) = volume_data(&omega)? else {
            return Err(Error::Degenerate(format!("ω = {omega} has vanishing top power")));
        };
        let omega_matrix = two_form_matrix(&omega);
        let inverse_matrix = omega_matrix.inverse().expect("nonzero Pfaffian implies invertible matrix");
        Ok(SymplecticStructure { dim, omega, omega_matrix, inverse_matrix, volume })
    }

    pub fn omega(&self) -> &Form<Scalar> {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn omega_matrix(&self) -> &Matrix<Scalar> {
        &self.omega_matrix
    }

    /// `ω^{-1}` on 1-forms.
    pub fn inverse_matrix(&self) -> &Matrix<Scalar> {
        &self.inverse_matrix
    }

    /// `ω^n / n!`.
    pub fn volume(&self) -> &Form<Scalar> {
        &self.volume
    }

    pub fn volume_coeff(&self) -> Scalar {
        self.volume.top_coeff()
    }
}

/// Star-type operator `α ∧ *β = <α, β> c e^{1..N}` for a Gram pairing on
/// 1-forms and volume coefficient `c`.
pub(crate) fn star_by_pairing(pairing: &Matrix<Scalar>, vol_coeff: &Scalar, b: &Form<Scalar>) -> Form<Scalar> {
    let dim = b.dim();
    let k = b.degree();
    let mut out = Form::zero(dim, dim - k);
    for blade in blades(dim, k) {
        let p = gram_pairing(pairing, &Form::from_blade(dim, blade, Scalar::one()), b);
        if p.is_zero() {
            continue;
        }
        let comp = blade.complement(dim);
        let sign = blade.wedge_sign(comp).unwrap();
        let v = p * vol_coeff;
        out.add_term(comp, if sign > 0 { v } else { -v });
    }
    out
}

/// The symplectic star `*_s`.
pub fn symplectic_star(omega: &SymplecticStructure, b: &Form<Scalar>) -> Form<Scalar> {
    star_by_pairing(omega.inverse_matrix(), &omega.volume_coeff(), b)
}

fn zero_map(dim: usize, from: isize, to: isize) -> Matrix<Scalar> {
    Matrix::zeros(binomial(dim, to), binomial(dim, from))
}

/// `L`, `Λ` and `H` as matrices on each `Λ^k` (index `k`).
#[derive(Clone, Debug)]
pub struct OperatorTriple {
    pub n: usize,
    /// `Λ^k -> Λ^{k+2}`.
    pub l: Vec<Matrix<Scalar>>,
    /// `Λ^k -> Λ^{k-2}`.
    pub lam: Vec<Matrix<Scalar>>,
    /// `Λ^k -> Λ^k`.
    pub h: Vec<Matrix<Scalar>>,
}

fn star_matrices(omega: &SymplecticStructure) -> Vec<Matrix<Scalar>> {
    let dim = omega.dim();
    (0..=dim).map(|k| operator_matrix(dim, k, dim - k, |f| symplectic_star(omega, f))).collect()
}

fn build_triple(omega: &SymplecticStructure, star: &[Matrix<Scalar>]) -> OperatorTriple {
    let dim = omega.dim();
    let w = omega.omega().clone();
    let l: Vec<Matrix<Scalar>> = (0..=dim)
        .map(|k| {
            if k + 2 <= dim {
                operator_matrix(dim, k, k + 2, |f| w.wedge(f))
            } else {
                zero_map(dim, k as isize, k as isize + 2)
            }
        })
        .collect();
    // Λ = *_s L *_s, using *_s^{-1} = *_s.
    let lam: Vec<Matrix<Scalar>> = (0..=dim)
        .map(|k| {
            if k >= 2 {
                star[dim - k + 2].mul(&l[dim - k]).mul(&star[k])
            } else {
                zero_map(dim, k as isize, k as isize - 2)
            }
        })
        .collect();
    let h = (0..=dim)
        .map(|k| {
            let mut m = Matrix::zeros(binomial(dim, k as isize), binomial(dim, k as isize));
            if k >= 2 {
                m = m.add(&l[k - 2].mul(&lam[k]));
            }
            if k + 2 <= dim {
                m = m.sub(&lam[k + 2].mul(&l[k]));
            }
            m
        })
        .collect();
    OperatorTriple { n: dim / 2, l, lam, h }
}

pub fn sl2_operators(omega: &SymplecticStructure) -> OperatorTriple {
    build_triple(omega, &star_matrices(omega))
}

/// Every operator of the calculus for one `(g, ω)` pair, as matrices per degree.
#[derive(Clone, Debug)]
pub struct SymplecticCalculus {
    g: LieAlgebra,
    omega: SymplecticStructure,
    cohomology: Cohomology,
    star: Vec<Matrix<Scalar>>,
    /// `d: Λ^k -> Λ^{k+1}`.
    d: Vec<Matrix<Scalar>>,
    triple: OperatorTriple,
    /// `d^Λ: Λ^k -> Λ^{k-1}` from `(-1)^{k+1} *_s d *_s`.
    dlam: Vec<Matrix<Scalar>>,
    /// `d^Λ` from `[d, Λ]`.
    dlam_commutator: Vec<Matrix<Scalar>>,
}

impl SymplecticCalculus {
    pub fn new(g: &LieAlgebra, omega: &SymplecticStructure) -> Result<Self> {
        if g.dim() != omega.dim() {
            return Err(Error::Usage("ω lives on an algebra of a different dimension".into()));
        }
        let dim = g.dim();
        let star = star_matrices(omega);
        let d: Vec<Matrix<Scalar>> = (0..=dim).map(|k| crate::cohomology::differential_matrix(g, k)).collect();
        let triple = build_triple(omega, &star);
        let dlam = (0..=dim)
            .map(|k| {
                if k == 0 {
                    return zero_map(dim, 0, -1);
                }
                let m = star[dim - k + 1].mul(&d[dim - k]).mul(&star[k]);
                if k % 2 == 0 {
                    m.scale(&-Scalar::one())
                } else {
                    m
                }
            })
            .collect::<Vec<_>>();
        let dlam_commutator = (0..=dim)
            .map(|k| {
                let mut m = zero_map(dim, k as isize, k as isize - 1);
                if k >= 2 {
                    m = m.add(&d[k - 2].mul(&triple.lam[k]));
                }
                if k >= 1 && k < dim {
                    m = m.sub(&triple.lam[k + 1].mul(&d[k]));
                }
                m
            })
            .collect::<Vec<_>>();
        for k in 0..=dim {
            if dlam[k] != dlam_commutator[k] {
                return Err(Error::InvariantViolation(format!("the two d^Λ formulas disagree on Λ^{k}")));
            }
        }
        Ok(SymplecticCalculus {
            g: g.clone(),
            omega: omega.clone(),
            cohomology: Cohomology::compute(g),
            star,
            d,
            triple,
            dlam,
            dlam_commutator,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn omega(&self) -> &SymplecticStructure {
        &self.omega
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.cohomology
    }

    pub fn triple(&self) -> &OperatorTriple {
        &self.triple
    }

    pub fn star_matrix(&self, k: usize) -> &Matrix<Scalar> {
        &self.star[k]
    }

    pub fn d_matrix(&self, k: usize) -> &Matrix<Scalar> {
        &self.d[k]
    }

    pub fn dlambda_matrix(&self, k: usize) -> &Matrix<Scalar> {
        &self.dlam[k]
    }

    pub fn dlambda_commutator_matrix(&self, k: usize) -> &Matrix<Scalar> {
        &self.dlam_commutator[k]
    }

    fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `d^Λ a`, computed by both formulas; a mismatch is an internal error.
    pub fn d_lambda(&self, a: &Form<Scalar>) -> Result<Form<Scalar>> {
        let k = a.degree();
        let v = a.to_vector();
        let via_star = self.dlam[k].apply(&v);
        let via_commutator = self.dlam_commutator[k].apply(&v);
        if via_star != via_commutator {
            return Err(Error::InvariantViolation(format!("d^Λ formulas disagree on {a}")));
        }
        if k == 0 {
            return Ok(Form::zero(self.dim(), 0));
        }
        Ok(Form::from_vector(self.dim(), k - 1, &via_star))
    }

    /// `d ∘ d^Λ` on `Λ^k`.
    fn ddlam(&self, k: usize) -> Matrix<Scalar> {
        if k == 0 {
            return Matrix::zeros(1, 1);
        }
        self.d[k - 1].mul(&self.dlam[k])
    }

    fn ambient(&self, k: usize) -> usize {
        binomial(self.dim(), k as isize)
    }

    fn image_of_d_into(&self, k: usize) -> Subspace {
        if k == 0 {
            Subspace::zero(1)
        } else {
            Subspace::image(&self.d[k - 1])
        }
    }

    fn image_of_dlam_into(&self, k: usize) -> Subspace {
        if k == self.dim() {
            Subspace::zero(1)
        } else {
            Subspace::image(&self.dlam[k + 1])
        }
    }

    /// `ker d ∩ ker d^Λ` on `Λ^k`.
    pub fn symplectic_harmonic_forms(&self, k: usize) -> Subspace {
        Subspace::kernel(&self.d[k]).intersection(&Subspace::kernel(&self.dlam[k]))
    }

    /// A `d^Λ`-closed representative of the class, if one exists.
    pub fn harmonic_representative(&self, class: &ClassCoords<Scalar>) -> Option<Form<Scalar>> {
        let k = class.degree;
        let basis = self.cohomology.basis(k);
        let rep = basis.form_of_coords(&class.coords);
        if k == 0 {
            return Some(rep);
        }
        // Solve d^Λ d η = -d^Λ rep.
        let system = self.dlam[k].mul(&self.d[k - 1]);
        let rhs: Vec<Scalar> = self.dlam[k].apply(&rep.to_vector()).into_iter().map(|x| -x).collect();
        let eta = system.solve(&rhs)?;
        let correction = Form::from_vector(self.dim(), k, &self.d[k - 1].apply(&eta));
        Some(rep.add(&correction))
    }

    /// `ker d^Λ / im d^Λ` on `Λ^k`: dimension and representatives.
    pub fn brylinski_cohomology(&self, k: usize) -> (usize, Vec<Form<Scalar>>) {
        let ker = Subspace::kernel(&self.dlam[k]);
        let im = self.image_of_dlam_into(k);
        let reps = quotient_representatives(&ker, &im);
        (reps.len(), reps.iter().map(|v| Form::from_vector(self.dim(), k, v)).collect())
    }

    pub fn tseng_yau_cohomology(&self, k: usize) -> TsengYau {
        let harmonic = self.symplectic_harmonic_forms(k);
        let im_ddlam = Subspace::image(&self.ddlam(k));
        let ker_ddlam = Subspace::kernel(&self.ddlam(k));
        let im_d_plus_dlam = self.image_of_d_into(k).sum(&self.image_of_dlam_into(k));
        let dim_bott_chern = harmonic.dim() - im_ddlam.dim();
        let dim_aeppli = ker_ddlam.dim() - im_d_plus_dlam.dim();

        let coords = self.cohomology.basis(k).coord_matrix();
        let rank_to_dr = harmonic.map(coords).dim();
        let rank_to_aeppli = harmonic.sum(&im_d_plus_dlam).dim() - im_d_plus_dlam.dim();
        TsengYau {
            degree: k,
            dim_bott_chern,
            dim_aeppli,
            map_to_dr_injective: rank_to_dr == dim_bott_chern,
            bc_to_aeppli_iso: rank_to_aeppli == dim_bott_chern && dim_bott_chern == dim_aeppli,
        }
    }

    /// `ker d^Λ ∩ im d = im dd^Λ` on `Λ^k`.
    pub fn ddlambda_lemma(&self, k: usize) -> Result<bool> {
        let left = Subspace::kernel(&self.dlam[k]).intersection(&self.image_of_d_into(k));
        let right = Subspace::image(&self.ddlam(k));
        if !left.contains_subspace(&right) {
            return Err(Error::InvariantViolation(format!("im dd^Λ not inside ker d^Λ ∩ im d on Λ^{k}")));
        }
        Ok(left.dim() == right.dim())
    }

    /// Every class of `H^k` has a representative in `ker d ∩ ker d^Λ`.
    pub fn all_classes_harmonic(&self, k: usize) -> bool {
        let basis = self.cohomology.basis(k);
        self.symplectic_harmonic_forms(k).map(basis.coord_matrix()).dim() == basis.betti()
    }

    pub fn equivalence_audit(&self) -> Result<Audit> {
        let dim = self.dim();
        let i_hlc = hlc_check_with(&self.g, &self.cohomology, &self.omega).verdict;
        let ii_harmonic = (0..=dim).all(|k| self.all_classes_harmonic(k));
        let mut iii_ddlambda = true;
        for k in 0..=dim {
            iii_ddlambda &= self.ddlambda_lemma(k)?;
        }
        let ty: Vec<TsengYau> = (0..=dim).map(|k| self.tseng_yau_cohomology(k)).collect();
        let iv_bc_injective = ty.iter().all(|t| t.map_to_dr_injective);
        let v_bc_aeppli_iso = ty.iter().all(|t| t.bc_to_aeppli_iso);
        let all = [i_hlc, ii_harmonic, iii_ddlambda, iv_bc_injective, v_bc_aeppli_iso];
        Ok(Audit {
            i_hlc,
            ii_harmonic,
            iii_ddlambda,
            iv_bc_injective,
            v_bc_aeppli_iso,
            consistent: all.iter().all(|&b| b == i_hlc),
        })
    }

    /// Checks the operator identities on `Λ^k`; returns the failed ones.
    pub fn operator_identity_failures(&self, k: usize) -> Vec<String> {
        let dim = self.dim();
        let mut failures = Vec::new();
        let id = Matrix::<Scalar>::identity(self.ambient(k));
        if self.star[dim - k].mul(&self.star[k]) != id {
            failures.push(format!("*_s² ≠ id on Λ^{k}"));
        }
        if k >= 1 && !self.dlam[k - 1].mul(&self.dlam[k]).is_zero() {
            failures.push(format!("(d^Λ)² ≠ 0 on Λ^{k}"));
        }
        if self.dlam[k] != self.dlam_commutator[k] {
            failures.push(format!("d^Λ formulas differ on Λ^{k}"));
        }
        failures
    }

    pub fn h_weight(&self, k: usize) -> Option<Scalar> {
        scalar_multiple_of_identity(&self.triple.h[k])
    }
}

/// `λ` when `m = λ·id`.
pub fn scalar_multiple_of_identity(m: &Matrix<Scalar>) -> Option<Scalar> {
    if !m.is_square() {
        return None;
    }
    if m.rows() == 0 {
        return Some(Scalar::zero());
    }
    let lambda = m[(0, 0)].clone();
    if *m == Matrix::identity(m.rows()).scale(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

/// Greedy complement of `sub` in `space`: unit-like kernel vectors first.
fn quotient_representatives(space: &Subspace, sub: &Subspace) -> Vec<Vec<Scalar>> {
    let mut span = sub.clone();
    let mut reps = Vec::new();
    let n = space.ambient();
    let target = space.dim() - sub.dim();
    let units = (0..n).map(|i| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    });
    for v in units.filter(|v| space.contains(v)).chain(space.basis().iter().cloned()) {
        if reps.len() == target {
            break;
        }
        if !span.contains(&v) {
            span = span.sum(&Subspace::span(n, std::slice::from_ref(&v)));
            reps.push(v);
        }
    }
    reps
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TsengYau {
    pub degree: usize,
    pub dim_bott_chern: usize,
    pub dim_aeppli: usize,
    pub map_to_dr_injective: bool,
    pub bc_to_aeppli_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub i_hlc: bool,
    pub ii_harmonic: bool,
    pub iii_ddlambda: bool,
    pub iv_bc_injective: bool,
    pub v_bc_aeppli_iso: bool,
    pub consistent: bool,
}

impl Audit {
    pub fn flags(&self) -> [bool; 5] {
        [self.i_hlc, self.ii_harmonic, self.iii_ddlambda, self.iv_bc_injective, self.v_bc_aeppli_iso]
    }
}

pub fn d_lambda(omega: &SymplecticStructure, g: &LieAlgebra, a: &Form<Scalar>) -> Result<Form<Scalar>> {
    SymplecticCalculus::new(g, omega)?.d_lambda(a)
}

pub fn harmonic_representative(
    g: &LieAlgebra,
    omega: &SymplecticStructure,
    class: &ClassCoords<Scalar>,
) -> Result<Option<Form<Scalar>>> {
    Ok(SymplecticCalculus::new(g, omega)?.harmonic_representative(class))
}

pub fn brylinski_cohomology(
    g: &LieAlgebra,
    omega: &SymplecticStructure,
    k: usize,
) -> Result<(usize, Vec<Form<Scalar>>)> {
    Ok(SymplecticCalculus::new(g, omega)?.brylinski_cohomology(k))
}

pub fn tseng_yau_cohomology(g: &LieAlgebra, omega: &SymplecticStructure, k: usize) -> Result<TsengYau> {
    Ok(SymplecticCalculus::new(g, omega)?.tseng_yau_cohomology(k))
}

pub fn ddlambda_lemma_check(g: &LieAlgebra, omega: &SymplecticStructure, k: usize) -> Result<bool> {
    SymplecticCalculus::new(g, omega)?.ddlambda_lemma(k)
}

pub fn equivalence_audit(g: &LieAlgebra, omega: &SymplecticStructure) -> Result<Audit> {
    SymplecticCalculus::new(g, omega)?.equivalence_audit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::omega_inv_pairing;
    use crate::liealgebra::catalog_get;
    use crate::scalar::int;

    fn e(dim: usize, idx: &[usize]) -> Form<Scalar> {
        Form::basis(dim, idx)
    }

    fn standard(dim: usize) -> Form<Scalar> {
        (0..dim / 2).fold(Form::zero(dim, 2), |acc, i| acc.add(&e(dim, &[2 * i + 1, 2 * i + 2])))
    }

    fn calc(name: &str, omega: Form<Scalar>) -> SymplecticCalculus {
        let g = catalog_get(name).unwrap();
        let w = SymplecticStructure::new(&g, omega).unwrap();
        SymplecticCalculus::new(&g, &w).unwrap()
    }

    #[test]
    fn pairing_conventions() {
        let w = SymplecticStructure::nondegenerate(standard(4)).unwrap();
        assert_eq!(omega_inv_pairing(&w, &e(4, &[1]), &e(4, &[2])), int(-1));
        assert_eq!(w.inverse_matrix().mul(w.omega_matrix()), Matrix::identity(4));
        assert_eq!(omega_inv_pairing(&w, w.omega(), w.omega()), int(2));
        assert_eq!(omega_inv_pairing(&w, &Form::<Scalar>::one(4), &Form::one(4)), int(1));
        let w6 = SymplecticStructure::nondegenerate(standard(6)).unwrap();
        assert_eq!(omega_inv_pairing(&w6, w6.omega(), w6.omega()), int(3));
    }

    #[test]
    fn star_examples() {
        let w = SymplecticStructure::nondegenerate(standard(4)).unwrap();
        assert_eq!(symplectic_star(&w, &Form::one(4)), w.volume().clone());
        assert_eq!(symplectic_star(&w, w.omega()), w.omega().clone());
        let b = e(4, &[1, 3]).add(&e(4, &[2]).wedge(&e(4, &[4])).scale(&int(3)));
        assert_eq!(symplectic_star(&w, &symplectic_star(&w, &b)), b);
    }

    #[test]
    fn lambda_and_h_anchor() {
        let c = calc("r4", standard(4));
        let lam_omega = c.triple().lam[2].apply(&standard(4).to_vector());
        assert_eq!(lam_omega, vec![int(2)]);
        // H = [L, Λ] acts on Λ^k by k - n.
        assert_eq!(c.h_weight(0), Some(int(-2)));
        assert_eq!(c.h_weight(2), Some(int(0)));
        assert_eq!(c.h_weight(4), Some(int(2)));
    }

    #[test]
    fn d_lambda_examples() {
        let c = calc("sol3xr", e(4, &[1, 4]).add(&e(4, &[2, 3])));
        assert!(c.d_lambda(&Form::constant(4, int(5))).unwrap().is_zero());
        assert!(c.d_lambda(c.omega().omega()).unwrap().is_zero());
        assert!(c.d_lambda(&e(4, &[1])).unwrap().is_zero());
    }

    #[test]
    fn harmonic_representatives() {
        let c = calc("sol3xr", e(4, &[1, 4]).add(&e(4, &[2, 3])));
        for k in 0..=4 {
            for i in 0..c.cohomology().basis(k).betti() {
                let mut coords = vec![int(0); c.cohomology().basis(k).betti()];
                coords[i] = int(1);
                let rep = c.harmonic_representative(&ClassCoords { degree: k, coords }).unwrap();
                assert!(differential(c.algebra(), &rep).is_zero());
                assert!(c.d_lambda(&rep).unwrap().is_zero());
            }
        }
        let c1 = calc("nakamura6", standard(6));
        let one_form = ClassCoords { degree: 1, coords: vec![int(1), int(0)] };
        assert_eq!(c1.harmonic_representative(&one_form).unwrap(), c1.cohomology().basis(1).representatives()[0]);

        let bad = calc("nil3xr", e(4, &[1, 4]).add(&e(4, &[2, 3])));
        let missing = (0..=4).any(|k| {
            let b = bad.cohomology().basis(k).betti();
            (0..b).any(|i| {
                let mut coords = vec![int(0); b];
                coords[i] = int(1);
                bad.harmonic_representative(&ClassCoords { degree: k, coords }).is_none()
            })
        });
        assert!(missing);
    }

    #[test]
    fn brylinski_examples() {
        assert_eq!(calc("r4", standard(4)).brylinski_cohomology(1).0, 4);
        assert_eq!(calc("nakamura6", standard(6)).brylinski_cohomology(2).0, 5);
    }

    #[test]
    fn audits() {
        let a = calc("sol3xr", e(4, &[1, 4]).add(&e(4, &[2, 3]))).equivalence_audit().unwrap();
        assert_eq!(a.flags(), [true; 5]);
        assert!(a.consistent);
        let a = calc("nil3xr", e(4, &[1, 4]).add(&e(4, &[2, 3]))).equivalence_audit().unwrap();
        assert_eq!(a.flags(), [false; 5]);
        assert!(a.consistent);
    }

    #[test]
    fn ddlambda_r4() {
        let c = calc("r4", standard(4));
        assert!((0..=4).all(|k| c.ddlambda_lemma(k).unwrap()));
    }

    #[test]
    fn degenerate_and_open_forms_rejected() {
        let g = catalog_get("r4").unwrap();
        assert!(matches!(SymplecticStructure::new(&g, e(4, &[1, 2])), Err(Error::Degenerate(_))));
        let nil = catalog_get("nil3xr").unwrap();
        let open = e(4, &[3, 4]).add(&e(4, &[1, 2]));
        assert!(matches!(SymplecticStructure::new(&nil, open), Err(Error::Precondition(_))));
    }
}
