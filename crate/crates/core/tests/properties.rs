mod common;

use common::*;
use lefschetz::almostkaehler::{
    compatibility_check, hodge_operators, lejmi_matrix, primitive_two_forms, AlmostComplexStructure, CompatibleTriple,
};
use lefschetz::catalog::{catalog_complex_structure, catalog_symplectic_form};
use lefschetz::cli::parse_form_expression;
use lefschetz::cohomology::{class_coordinates, hlc_check, Cohomology};
use lefschetz::exterior::{blades, differential, Form};
use lefschetz::liealgebra::{LieAlgebra, CATALOG_NAMES};
use lefschetz::linalg::Matrix;
use lefschetz::parametric::{generic_family, volume_polynomial};
use lefschetz::poly::{vars_of, Poly};
use lefschetz::scalar::{frac, int, Scalar};
use lefschetz::symplectic::{symplectic_star, SymplecticCalculus, SymplecticStructure};
use num_traits::Zero;
use proptest::prelude::*;

const FOUR_DIM: [&str; 5] = ["r4", "nil3xr", "nil4", "sol3xr", "r30xr"];

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Random form of a fixed degree with up to four terms.
fn form(dim: usize, degree: usize) -> impl Strategy<Value = Form<Scalar>> {
    let all = blades(dim, degree);
    let n = all.len();
    prop::collection::vec((0..n, nonzero_rational()), 0..=4)
        .prop_map(move |terms| Form::from_terms(dim, degree, terms.into_iter().map(|(i, r)| (all[i], r))))
}

fn any_form(dim: usize) -> impl Strategy<Value = Form<Scalar>> {
    (0..=dim).prop_flat_map(move |k| form(dim, k))
}

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    prop::sample::select(CATALOG_NAMES.to_vec()).prop_map(catalog)
}

/// A catalog 4-dimensional algebra with a random closed nondegenerate 2-form
/// from its generic family.
fn four_dim_symplectic() -> impl Strategy<Value = (LieAlgebra, SymplecticStructure)> {
    prop::sample::select(FOUR_DIM.to_vec())
        .prop_flat_map(|name| {
            let g = catalog(name);
            let nvars = generic_family(&g, None).unwrap().vars().len();
            (Just(g), prop::collection::vec(-3i64..=3, nvars))
        })
        .prop_filter_map("degenerate member", |(g, vals)| {
            let f = generic_family(&g, None).unwrap();
            let vals: Vec<Scalar> = vals.into_iter().map(int).collect();
            let w = f.specialize(&vals);
            SymplecticStructure::new(&g, w).ok().map(|s| (g, s))
        })
}

fn poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..=4), 0..5).prop_map(|terms| {
        let vars = vars_of(&["x", "y", "z"]);
        Poly::from_terms(&vars, terms.into_iter().map(|(a, b, c, k)| (vec![a, b, c], int(k))))
    })
}

fn apply(m: &Matrix<Scalar>, v: &Form<Scalar>, to: usize) -> Form<Scalar> {
    Form::from_vector(v.dim(), to, &m.apply(&v.to_vector()))
}

fn catalog_triple(name: &str) -> (LieAlgebra, CompatibleTriple) {
    let g = catalog(name);
    let s = SymplecticStructure::new(&g, catalog_symplectic_form(name).unwrap()).unwrap();
    let j = AlmostComplexStructure::new(catalog_complex_structure(name).unwrap()).unwrap();
    (g.clone(), compatibility_check(&j, &s).unwrap().unwrap())
}

proptest! {
    #[test]
    fn d_squared_is_zero((g, a) in algebra().prop_flat_map(|g| { let dim = g.dim(); (Just(g), any_form(dim)) })) {
        prop_assume!(a.degree() + 2 <= g.dim());
        prop_assert!(differential(&g, &differential(&g, &a)).is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(
        (g, a, b) in algebra().prop_flat_map(|g| { let dim = g.dim(); (Just(g), form(dim, 1), form(dim, 2)) })
    ) {
        let lhs = differential(&g, &a.wedge(&b));
        let rhs = differential(&g, &a).wedge(&b).sub(&a.wedge(&differential(&g, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative(a in any_form(6), b in any_form(6)) {
        prop_assume!(a.degree() + b.degree() <= 6);
        let sign = if a.degree() * b.degree() % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign));
    }

    #[test]
    fn wedge_is_associative(a in form(6, 1), b in form(6, 2), c in form(6, 2)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn star_is_an_involution((s, a) in four_dim_symplectic().prop_flat_map(|(_, s)| (Just(s), any_form(4)))) {
        prop_assert_eq!(symplectic_star(&s, &symplectic_star(&s, &a)), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dlambda_formulas_agree_and_square_to_zero((g, s) in four_dim_symplectic()) {
        // Construction fails if the two d^Λ formulas differ.
        let calc = SymplecticCalculus::new(&g, &s).unwrap();
        for k in 0..=4 {
            prop_assert!(calc.operator_identity_failures(k).is_empty());
        }
    }

    #[test]
    fn sl2_commutation_relations((g, s) in four_dim_symplectic()) {
        let calc = SymplecticCalculus::new(&g, &s).unwrap();
        let t = calc.triple();
        for k in 0..=4usize {
            if k + 2 <= 4 {
                let lhs = t.h[k + 2].mul(&t.l[k]).sub(&t.l[k].mul(&t.h[k]));
                prop_assert_eq!(lhs, t.l[k].scale(&int(2)));
            }
            if k >= 2 {
                let lhs = t.h[k - 2].mul(&t.lam[k]).sub(&t.lam[k].mul(&t.h[k]));
                prop_assert_eq!(lhs, t.lam[k].scale(&int(-2)));
            }
        }
    }

    #[test]
    fn image_of_ddlambda_is_harmonic((g, s, a) in four_dim_symplectic().prop_flat_map(|(g, s)| (Just(g), Just(s), any_form(4)))) {
        let calc = SymplecticCalculus::new(&g, &s).unwrap();
        prop_assume!(a.degree() >= 1);
        let x = differential(&g, &calc.d_lambda(&a).unwrap());
        prop_assert!(differential(&g, &x).is_zero());
        prop_assert!(calc.d_lambda(&x).unwrap().is_zero());
    }

    #[test]
    fn audit_booleans_agree((g, s) in four_dim_symplectic()) {
        let audit = SymplecticCalculus::new(&g, &s).unwrap().equivalence_audit().unwrap();
        let f = audit.flags();
        prop_assert!(audit.consistent);
        prop_assert!(f.iter().all(|&b| b == f[0]), "{:?}", f);
        prop_assert_eq!(f[0], hlc_check(&g, &s).verdict);
    }

    #[test]
    fn brylinski_is_dual_to_de_rham((g, s) in four_dim_symplectic()) {
        let calc = SymplecticCalculus::new(&g, &s).unwrap();
        let betti = calc.cohomology().betti_numbers();
        for k in 0..=4 {
            prop_assert_eq!(calc.brylinski_cohomology(k).0, betti[4 - k]);
        }
    }

    #[test]
    fn hlc_depends_only_on_the_class(beta in form(6, 1), t in 1i64..=3) {
        let g = catalog("nakamura6");
        let w = catalog_symplectic_form("nakamura6").unwrap();
        let shifted = w.add(&differential(&g, &beta).scale(&int(t)));
        let a = SymplecticStructure::new(&g, w).unwrap();
        if let Ok(b) = SymplecticStructure::new(&g, shifted) {
            prop_assert_eq!(hlc_check(&g, &a).verdict, hlc_check(&g, &b).verdict);
        }
    }

    #[test]
    fn class_coordinates_ignore_exact_terms(
        (g, c, beta) in prop::sample::select(vec!["nakamura6", "fms_m6", "sol3xr"])
            .prop_map(catalog)
            .prop_flat_map(|g| {
                let dim = g.dim();
                let b2 = Cohomology::compute(&g).basis(2).betti();
                (Just(g), prop::collection::vec(rational(), b2), form(dim, 1))
            })
    ) {
        let coh = Cohomology::compute(&g);
        let basis = coh.basis(2);
        let a = basis.form_of_coords(&c);
        let moved = a.add(&differential(&g, &beta));
        prop_assert_eq!(class_coordinates(basis, &moved).unwrap().coords, c);
    }

    #[test]
    fn codifferential_is_adjoint_of_d(
        (name, k) in prop::sample::select(vec!["r4", "sol3xr", "nakamura6", "fms_m6"]).prop_flat_map(|n| (Just(n), 0usize..4)),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let (g, t) = catalog_triple(name);
        let ops = hodge_operators(&t, &g);
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_sparse_form(&mut r, g.dim(), k);
        let b = random_sparse_form(&mut r, g.dim(), k + 1);
        let lhs = t.inner(&differential(&g, &a), &b);
        let rhs = t.inner(&a, &apply(&ops.codifferential[k + 1], &b, k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lejmi_operator_preserves_primitivity(
        name in prop::sample::select(vec!["r4", "nakamura6", "fms_m6"]),
        coeffs in prop::collection::vec(rational(), 14),
    ) {
        let (g, t) = catalog_triple(name);
        let prim = primitive_two_forms(t.omega());
        let v = prim.basis().iter().zip(&coeffs).fold(vec![Scalar::zero(); prim.ambient()], |acc, (b, c)| {
            acc.iter().zip(b).map(|(x, y)| x + y * c).collect()
        });
        let ops = hodge_operators(&t, &g);
        let image = lejmi_matrix(&t, &ops).apply(&v);
        prop_assert!(prim.contains(&image));
    }
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(a in poly3(), b in poly3()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn gcd_divides_both(a in poly3(), b in poly3(), c in poly3()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (x, y) = (&a * &c, &b * &c);
        let g = x.gcd(&y).unwrap();
        prop_assert!(x.div_exact(&g).unwrap().is_some());
        prop_assert!(y.div_exact(&g).unwrap().is_some());
        // c divides the gcd
        prop_assert!(g.div_exact(&c).unwrap().is_some());
    }

    #[test]
    fn proportional_detects_scalar_multiples(a in poly3(), r in nonzero_rational()) {
        prop_assume!(!a.is_zero());
        let vars = vars_of(&["x", "y", "z"]);
        let scaled = &a * &Poly::constant_in(&vars, r.clone());
        prop_assert_eq!(a.proportional(&scaled), Some(r));
    }

    #[test]
    fn parser_round_trips_rendered_forms(a in any_form(6)) {
        let text = a.render();
        prop_assume!(!a.is_zero());
        prop_assert_eq!(parse_form_expression(&text, 6).unwrap().form, a);
    }

    #[test]
    fn volume_polynomial_specializes(vals in prop::collection::vec(rational(), 5)) {
        for name in ["nakamura6", "fms_m6"] {
            let g = catalog(name);
            let basis = lefschetz::catalog::catalog_family(name);
            let f = generic_family(&g, basis).unwrap();
            let w = f.specialize(&vals);
            prop_assert_eq!(volume_polynomial(&f).poly.eval_slice(&vals), w.pow(3).top_coeff());
        }
    }
}
