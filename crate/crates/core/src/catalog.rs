//! Symplectic forms, almost-complex structures and parameter families that
//! accompany the builtin algebras.

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::liealgebra::{catalog_get, CATALOG_NAMES};
use crate::linalg::Matrix;
use crate::scalar::{int, Scalar};

fn e(dim: usize, idx: &[usize]) -> Form<Scalar> {
    Form::basis(dim, idx)
}

fn sum(forms: &[Form<Scalar>]) -> Form<Scalar> {
    forms.iter().skip(1).fold(forms[0].clone(), |acc, f| acc.add(f))
}

/// Index pairs `(a, b)` with `ω = Σ e^{ab}` for the catalog form.
fn darboux_pairs(name: &str) -> Result<&'static [(usize, usize)]> {
    Ok(match name {
        "r4" => &[(1, 2), (3, 4)],
        "r6" | "nakamura6" | "fms_m6" => &[(1, 2), (3, 4), (5, 6)],
        "nil3xr" | "nil4" | "sol3xr" | "r30xr" => &[(1, 4), (2, 3)],
        _ => return Err(Error::Lookup { name: name.to_string(), valid: CATALOG_NAMES.join(", ") }),
    })
}

/// The symplectic form used for each builtin algebra.
pub fn catalog_symplectic_form(name: &str) -> Result<Form<Scalar>> {
    let dim = catalog_get(name)?.dim();
    let pairs = darboux_pairs(name)?;
    Ok(sum(&pairs.iter().map(|&(a, b)| e(dim, &[a, b])).collect::<Vec<_>>()))
}

/// `J e^a = -e^b`, `J e^b = e^a` for every pair; columns give the images of
/// the coframe vectors.
pub fn darboux_complex_structure(dim: usize, pairs: &[(usize, usize)]) -> Matrix<Scalar> {
    let mut j = Matrix::zeros(dim, dim);
    for &(a, b) in pairs {
        j[(b - 1, a - 1)] = int(-1);
        j[(a - 1, b - 1)] = int(1);
    }
    j
}

/// The almost-complex structure compatible with the catalog form.
pub fn catalog_complex_structure(name: &str) -> Result<Matrix<Scalar>> {
    let dim = catalog_get(name)?.dim();
    Ok(darboux_complex_structure(dim, darboux_pairs(name)?))
}

/// Default parameter family: forms and parameter names. `None` means the
/// family is generated from the `H^2` basis.
pub fn catalog_family(name: &str) -> Option<(Vec<Form<Scalar>>, Vec<String>)> {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
    match name {
        "nakamura6" => {
            let forms = [[1, 2], [3, 4], [5, 6], [3, 6], [4, 5]].iter().map(|p| e(6, p)).collect();
            Some((forms, names(&["c1", "c2", "c3", "c4", "c5"])))
        }
        "fms_m6" => Some((fms_forms().to_vec(), names(&["c", "c1", "c2", "c3", "a"]))),
        _ => None,
    }
}

/// `ω, ξ1, ξ2, ξ3, θ` on the coframe `(α1, β1, α2, β2, γ, η)`.
pub fn fms_forms() -> [Form<Scalar>; 5] {
    let omega = sum(&[e(6, &[1, 2]), e(6, &[3, 4]), e(6, &[5, 6])]);
    let xi1 = e(6, &[1, 4]).sub(&e(6, &[2, 3]));
    let xi2 = e(6, &[1, 2]).sub(&e(6, &[5, 6]));
    let xi3 = e(6, &[3, 4]).sub(&e(6, &[5, 6]));
    let theta = e(6, &[1, 4]).add(&e(6, &[2, 3]));
    [omega, xi1, xi2, xi3, theta]
}
