//! Chevalley-Eilenberg cohomology over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{blades, differential, operator_matrix, Form};
use crate::liealgebra::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Ring, Scalar};
use crate::symplectic::SymplecticStructure;

/// Matrix of `d: Λ^k -> Λ^{k+1}` in lexicographic monomial bases.
pub fn differential_matrix(g: &LieAlgebra, k: usize) -> Matrix<Scalar> {
    operator_matrix(g.dim(), k, k + 1, |f| differential(g, f))
}

/// Cocycle representatives of `H^k` with a linear map sending any cocycle to
/// its class coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    dim: usize,
    representatives: Vec<Form<Scalar>>,
    /// `b_k x C(n, k)`; exact on cocycles, arbitrary off them.
    coord_matrix: Matrix<Scalar>,
    d_out: Matrix<Scalar>,
    cocycles: Subspace,
    coboundaries: Subspace,
}

impl CohomologyBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn betti(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Form<Scalar>] {
        &self.representatives
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn coord_matrix(&self) -> &Matrix<Scalar> {
        &self.coord_matrix
    }

    /// Class coordinates of a cocycle given as a coefficient vector; no
    /// closedness check.
    pub fn coords_of_vector<R: Ring>(&self, v: &[R]) -> Vec<R> {
        self.coord_matrix.apply_ring(v)
    }

    /// Cocycle `Σ coords_i rep_i`.
    pub fn form_of_coords(&self, coords: &[Scalar]) -> Form<Scalar> {
        let mut out = Form::zero(self.dim, self.degree);
        for (c, r) in coords.iter().zip(&self.representatives) {
            out = out.add(&r.scale(c));
        }
        out
    }
}

/// Representatives prefer single monomials (in lexicographic order), then
/// kernel vectors from the reduced echelon form.
pub fn cohomology_basis(g: &LieAlgebra, k: usize) -> CohomologyBasis {
    let dim = g.dim();
    assert!(k <= dim, "degree {k} exceeds dimension {dim}");
    let n_k = blades(dim, k).len();
    let d_out = differential_matrix(g, k);
    let coboundaries = if k == 0 { Subspace::zero(n_k) } else { Subspace::image(&differential_matrix(g, k - 1)) };
    let cocycles = Subspace::kernel(&d_out);

    let mut span = coboundaries.clone();
    let mut reps: Vec<Vec<Scalar>> = Vec::new();
    let target = cocycles.dim() - coboundaries.dim();
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n_k];
        v[i] = Scalar::from_integer(1.into());
        v
    };
    let candidates =
        (0..n_k).filter(|&i| (0..d_out.rows()).all(|r| d_out[(r, i)].is_zero())).map(unit).chain(d_out.nullspace());
    for v in candidates {
        if reps.len() == target {
            break;
        }
        if !span.contains(&v) {
            span = span.sum(&Subspace::span(n_k, std::slice::from_ref(&v)));
            reps.push(v);
        }
    }
    assert_eq!(reps.len(), target, "cohomology basis incomplete");

    // Left inverse of [reps | coboundary basis] restricted to independent rows.
    let mut cols = reps.clone();
    cols.extend(coboundaries.basis().iter().cloned());
    let m = Matrix::from_columns(n_k, &cols);
    let z = cols.len();
    let mut coord_matrix = Matrix::zeros(target, n_k);
    if z > 0 {
        let (_, rows) = m.transpose().rref();
        let square = Matrix::from_fn(z, z, |i, j| m[(rows[i], j)].clone());
        let inv = square.inverse().expect("independent rows give an invertible block");
        for i in 0..target {
            for (jj, &row) in rows.iter().enumerate() {
                coord_matrix[(i, row)] = inv[(i, jj)].clone();
            }
        }
    }

    CohomologyBasis {
        degree: k,
        dim,
        representatives: reps.iter().map(|v| Form::from_vector(dim, k, v)).collect(),
        coord_matrix,
        d_out,
        cocycles,
        coboundaries,
    }
}

/// Bases in every degree `0..=dim`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    bases: Vec<CohomologyBasis>,
}

impl Cohomology {
    pub fn compute(g: &LieAlgebra) -> Self {
        Cohomology { bases: (0..=g.dim()).map(|k| cohomology_basis(g, k)).collect() }
    }

    pub fn basis(&self, k: usize) -> &CohomologyBasis {
        &self.bases[k]
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.bases.iter().map(CohomologyBasis::betti).collect()
    }
}

pub fn betti(g: &LieAlgebra, k: usize) -> usize {
    cohomology_basis(g, k).betti()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassCoords<R> {
    pub degree: usize,
    pub coords: Vec<R>,
}

/// Coordinates of the class of a closed form in the given basis.
pub fn class_coordinates<R: Ring>(basis: &CohomologyBasis, a: &Form<R>) -> Result<ClassCoords<R>> {
    if a.degree() != basis.degree {
        return Err(Error::Usage(format!("form of degree {} against an H^{} basis", a.degree(), basis.degree)));
    }
    let v = a.to_vector();
    let da = basis.d_out.apply_ring(&v);
    if da.iter().any(|x| !x.is_zero()) {
        let df = if basis.degree < basis.dim {
            Form::from_vector(basis.dim, basis.degree + 1, &da).render()
        } else {
            "0".into()
        };
        return Err(Error::Precondition(format!("form is not closed: d(a) = {df}")));
    }
    Ok(ClassCoords { degree: basis.degree, coords: basis.coords_of_vector(&v) })
}

/// Matrix of `[a] -> [a ∧ ω^k]` from `H^{n-k}` to `H^{n+k}`, columns indexed
/// by the `H^{n-k}` representatives.
pub fn lefschetz_matrix<R: Ring>(
    g: &LieAlgebra,
    cohomology: &Cohomology,
    omega: &Form<R>,
    k: usize,
) -> Result<Matrix<R>> {
    if !g.is_even() {
        return Err(Error::Usage(format!("Lefschetz maps need an even-dimensional algebra, got {}", g.dim())));
    }
    let n = g.dim() / 2;
    if k > n {
        return Err(Error::Usage(format!("Lefschetz power {k} exceeds half-dimension {n}")));
    }
    if !omega.is_closed(g) {
        return Err(Error::Precondition(format!("2-form {omega} is not closed")));
    }
    let source = cohomology.basis(n - k);
    let target = cohomology.basis(n + k);
    let wk = omega.pow(k);
    let cols: Vec<Vec<R>> = source
        .representatives()
        .iter()
        .map(|r| {
            let img = r.lift::<R>().wedge(&wk);
            target.coords_of_vector(&img.to_vector())
        })
        .collect();
    Ok(Matrix::from_columns(target.betti(), &cols))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LefschetzDegree {
    pub rank: usize,
    pub surjective: bool,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HlcReport {
    pub algebra: String,
    pub betti: Vec<usize>,
    pub hlc: BTreeMap<String, LefschetzDegree>,
    pub verdict: bool,
    /// `b_{n-k} = b_{n+k}` for every `k`.
    pub duality_ok: bool,
}

pub fn hlc_check(g: &LieAlgebra, omega: &SymplecticStructure) -> HlcReport {
    let cohomology = Cohomology::compute(g);
    hlc_check_with(g, &cohomology, omega)
}

pub fn hlc_check_with(g: &LieAlgebra, cohomology: &Cohomology, omega: &SymplecticStructure) -> HlcReport {
    let n = omega.half_dim();
    let betti = cohomology.betti_numbers();
    let mut hlc = BTreeMap::new();
    let mut verdict = true;
    let mut duality_ok = true;
    for k in 1..=n {
        let m = lefschetz_matrix(g, cohomology, omega.omega(), k).expect("symplectic form is closed");
        let rank = m.rank();
        let surjective = rank == betti[n + k];
        let square = betti[n - k] == betti[n + k];
        duality_ok &= square;
        verdict &= surjective;
        hlc.insert(k.to_string(), LefschetzDegree { rank, surjective, iso: surjective && square });
    }
    HlcReport { algebra: g.name().to_string(), betti, hlc, verdict, duality_ok }
}
