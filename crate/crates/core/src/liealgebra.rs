//! Lie algebras presented by Maurer-Cartan structure equations
//! `de^k = Σ c^k_ij e^i ∧ e^j`, with validation and the builtin catalog.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{differential, Blade, Form, MAX_DIM};
use crate::scalar::{int, Scalar};

/// One structure-equation entry: `de^k` contains `coeff * e^i ∧ e^j`, `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    /// `differentials[k-1]` lists the terms of `de^k`.
    differentials: Vec<Vec<StructureTerm>>,
    de: Vec<Form<Scalar>>,
    pub claimed_completely_solvable: bool,
    pub claimed_lattice: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub jacobi_ok: bool,
    /// Generators `k` with `d(de^k) != 0`.
    pub jacobi_failures: Vec<usize>,
    pub unimodular: bool,
    /// `Σ_k` (coefficient of `e^k ∧ e^m` in `de^k`), for each `m`.
    pub traces: Vec<String>,
}

impl LieAlgebra {
    /// Builds a presentation from `(k, i, j, coeff)` entries. Checks index
    /// ranges, `i < j` and duplicates; the Jacobi identity is checked by
    /// [`LieAlgebra::validate`].
    pub fn new(name: &str, dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Usage(format!("dimension must be in 1..={MAX_DIM}, got {dim}")));
        }
        let mut differentials: Vec<Vec<StructureTerm>> = vec![Vec::new(); dim];
        let mut seen = BTreeSet::new();
        for (k, i, j, c) in entries {
            let (k, i, j) = (*k, *i, *j);
            for idx in [k, i, j] {
                if !(1..=dim).contains(&idx) {
                    return Err(Error::Usage(format!("index {idx} out of range 1..={dim}")));
                }
            }
            if i >= j {
                return Err(Error::Usage(format!("de^{k}: need i < j, got ({i},{j})")));
            }
            if !seen.insert((k, i, j)) {
                return Err(Error::Usage(format!("de^{k}: duplicate term e^{i}{j}")));
            }
            if !c.is_zero() {
                differentials[k - 1].push(StructureTerm { i, j, coeff: c.clone() });
            }
        }
        let de = differentials
            .iter()
            .map(|terms| {
                Form::from_terms(
                    dim,
                    2.min(dim),
                    terms.iter().map(|t| (Blade::from_indices(&[t.i, t.j]).unwrap(), t.coeff.clone())),
                )
            })
            .collect();
        Ok(LieAlgebra {
            name: name.to_string(),
            dim,
            differentials,
            de,
            claimed_completely_solvable: false,
            claimed_lattice: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `de^k` (1-based `k`).
    pub fn de(&self, k: usize) -> &Form<Scalar> {
        &self.de[k - 1]
    }

    pub fn structure_terms(&self, k: usize) -> &[StructureTerm] {
        &self.differentials[k - 1]
    }

    /// Whether the form degrees admit a half-dimension.
    pub fn is_even(&self) -> bool {
        self.dim.is_multiple_of(2)
    }

    pub fn validate(&self) -> Diagnostics {
        let jacobi_failures: Vec<usize> =
            (1..=self.dim).filter(|&k| !differential(self, self.de(k)).is_zero()).collect();
        let mut traces = vec![Scalar::zero(); self.dim];
        for k in 1..=self.dim {
            for t in self.structure_terms(k) {
                // e^k ∧ e^m = e^{km} if k < m, else -e^{mk}.
                if t.i == k {
                    traces[t.j - 1] += &t.coeff;
                } else if t.j == k {
                    traces[t.i - 1] -= &t.coeff;
                }
            }
        }
        Diagnostics {
            jacobi_ok: jacobi_failures.is_empty(),
            jacobi_failures,
            unimodular: traces.iter().all(Zero::is_zero),
            traces: traces.iter().map(|t| t.to_string()).collect(),
        }
    }

    /// Fails with the first generator violating `d² = 0`.
    pub fn ensure_valid(&self) -> Result<Diagnostics> {
        let diag = self.validate();
        if let Some(k) = diag.jacobi_failures.first() {
            return Err(Error::Load(format!("Jacobi violation at generator {k}")));
        }
        Ok(diag)
    }
}

pub const CATALOG_NAMES: [&str; 8] = ["r4", "r6", "nil3xr", "nil4", "sol3xr", "r30xr", "nakamura6", "fms_m6"];

/// Builtin presentations.
///
/// `fms_m6` is `M^6(c)` at `c = 1` on the coframe `(α1, β1, α2, β2, γ, η)`,
/// with weights `-1` on the `α_i` and `+1` on the `β_i` so that the
/// `α_i ∧ β_j` are closed.
pub fn catalog_get(name: &str) -> Result<LieAlgebra> {
    let t = |k, i, j, c: i64| (k, i, j, int(c));
    let (dim, entries, solvable): (usize, Vec<_>, bool) = match name {
        "r4" => (4, vec![], true),
        "r6" => (6, vec![], true),
        "nil3xr" => (4, vec![t(3, 1, 2, -1)], true),
        "nil4" => (4, vec![t(1, 2, 4, 1), t(2, 3, 4, 1)], true),
        "sol3xr" => (4, vec![t(2, 1, 2, 1), t(3, 1, 3, -1)], true),
        "r30xr" => (4, vec![t(2, 1, 3, -1), t(3, 1, 2, 1)], false),
        "nakamura6" => (6, vec![t(3, 1, 3, 1), t(4, 1, 4, -1), t(5, 1, 5, 1), t(6, 1, 6, -1)], true),
        "fms_m6" => (6, vec![t(1, 1, 5, -1), t(2, 2, 5, 1), t(3, 3, 5, -1), t(4, 4, 5, 1)], true),
        _ => {
            return Err(Error::Lookup { name: name.to_string(), valid: CATALOG_NAMES.join(", ") });
        }
    };
    let mut g = LieAlgebra::new(name, dim, &entries)?;
    g.claimed_completely_solvable = solvable;
    g.claimed_lattice = true;
    Ok(g)
}
