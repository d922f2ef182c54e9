//! Parametric families `Ω = Σ c_i β_i` of closed 2-forms with polynomial
//! coefficients: the symplectic-condition polynomial, the Lefschetz
//! determinant polynomials and the verdict on where HLC holds.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cohomology::{lefschetz_matrix, Cohomology};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::liealgebra::LieAlgebra;
use crate::poly::{Poly, Vars};
use crate::scalar::{int, Ring, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed_1ef5;
pub const SAMPLE_COUNT: usize = 200;
/// Symbolic determinants over more parameters than this are not attempted.
pub const MAX_PARAMETERS: usize = 10;

/// `Ω = Σ p_i β_i` over a fixed algebra.
#[derive(Clone, Debug)]
pub struct ParametricFamily {
    algebra: LieAlgebra,
    cohomology: Cohomology,
    vars: Vars,
    omega: Form<Poly>,
}

impl ParametricFamily {
    /// A family from an explicit closed 2-form with polynomial coefficients.
    pub fn from_form(g: &LieAlgebra, vars: Vars, omega: Form<Poly>) -> Result<Self> {
        if omega.degree() != 2 || omega.dim() != g.dim() {
            return Err(Error::Usage("a family needs a 2-form on the algebra".into()));
        }
        if !g.is_even() {
            return Err(Error::Usage(format!("families need an even-dimensional algebra, got {}", g.dim())));
        }
        if !omega.is_closed(g) {
            return Err(Error::Precondition(format!("family form {omega} is not closed")));
        }
        Ok(ParametricFamily { algebra: g.clone(), cohomology: Cohomology::compute(g), vars, omega })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.cohomology
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn omega(&self) -> &Form<Poly> {
        &self.omega
    }

    /// The member at a parameter point (values in variable order).
    pub fn specialize(&self, values: &[Scalar]) -> Form<Scalar> {
        self.omega.map_coeffs(|p| p.eval_slice(values))
    }
}

/// `Ω = Σ c_i rep_i` over the `H^2` basis, or over the supplied closed forms
/// and names.
pub fn generic_family(
    g: &LieAlgebra,
    basis_override: Option<(Vec<Form<Scalar>>, Vec<String>)>,
) -> Result<ParametricFamily> {
    let (forms, names) = match basis_override {
        Some((forms, names)) => {
            if forms.len() != names.len() {
                return Err(Error::Usage(format!("{} forms but {} parameter names", forms.len(), names.len())));
            }
            for f in &forms {
                if f.degree() != 2 || f.dim() != g.dim() {
                    return Err(Error::Usage(format!("family form {f} is not a 2-form on {}", g.name())));
                }
                if !f.is_closed(g) {
                    return Err(Error::Precondition(format!("family form {f} is not closed")));
                }
            }
            (forms, names)
        }
        None => {
            let reps = Cohomology::compute(g).basis(2).representatives().to_vec();
            let names = (1..=reps.len()).map(|i| format!("c{i}")).collect();
            (reps, names)
        }
    };
    if forms.is_empty() {
        return Err(Error::Precondition(format!("{} has b2 = 0: no symplectic family", g.name())));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let vars = crate::poly::vars_of(&refs);
    let mut omega = Form::zero(g.dim(), 2);
    for (i, f) in forms.iter().enumerate() {
        let c = Poly::var(&vars, i);
        omega = omega.add(&f.map_coeffs(|s| c.scale(s)));
    }
    ParametricFamily::from_form(g, vars, omega)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConditionMeaning {
    SymplecticVolume,
    LefschetzDet(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionPolynomial {
    pub poly: Poly,
    pub meaning: ConditionMeaning,
}

/// The `e^{1...2n}` coefficient of `Ω^n`.
pub fn volume_polynomial(f: &ParametricFamily) -> ConditionPolynomial {
    let n = f.algebra.dim() / 2;
    let top = f.omega.pow(n).top_coeff();
    ConditionPolynomial { poly: in_vars(top, &f.vars), meaning: ConditionMeaning::SymplecticVolume }
}

fn in_vars(p: Poly, vars: &Vars) -> Poly {
    if p.vars().is_empty() {
        Poly::constant_in(vars, p.constant_term())
    } else {
        p
    }
}

/// Matrix of `[·∧Ω^k]: H^{n-k} -> H^{n+k}` over the parameter ring.
pub fn lefschetz_poly_matrix(f: &ParametricFamily, k: usize) -> Result<crate::linalg::Matrix<Poly>> {
    lefschetz_matrix(&f.algebra, &f.cohomology, &f.omega, k)
}

/// Determinant polynomial of the Lefschetz map for each `k = 1..n`.
pub fn lefschetz_determinants(f: &ParametricFamily) -> Result<Vec<ConditionPolynomial>> {
    let n = f.algebra.dim() / 2;
    if f.vars.len() > MAX_PARAMETERS {
        return Err(Error::Certificate(format!(
            "family has {} parameters, symbolic determinants are limited to {MAX_PARAMETERS}",
            f.vars.len()
        )));
    }
    (1..=n)
        .map(|k| {
            let m = lefschetz_poly_matrix(f, k)?;
            if !m.is_square() {
                return Err(Error::Certificate(format!(
                    "Lefschetz matrix for k = {k} is {}x{}, not square",
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(ConditionPolynomial { poly: in_vars(m.det(), &f.vars), meaning: ConditionMeaning::LefschetzDet(k) })
        })
        .collect()
}

pub type Point = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub enum ComparisonVerdict {
    ProportionalEqual(Scalar),
    FactorwiseCompatible,
    SampledConsistent(usize),
    Different(Point),
}

/// Every irreducible factor of `a` divides `b`, shown by peeling off
/// `gcd(a, b)` until a constant remains. Then `a = 0` implies `b = 0`.
pub fn vanishing_contained(a: &Poly, b: &Poly) -> Result<bool> {
    if a.is_zero() {
        return Ok(b.is_zero());
    }
    let mut rest = a.clone();
    while !rest.is_constant() {
        let g = rest.gcd(b)?;
        if g.is_constant() {
            return Ok(false);
        }
        rest = rest.div_exact(&g)?.expect("gcd divides");
    }
    Ok(true)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let den: i64 = rng.gen_range(1..=10);
    let num: i64 = rng.gen_range(-10 * den..=10 * den);
    Scalar::new(num.into(), den.into())
}

/// `count` seeded points with coordinates in `[-10, 10]`, denominators at
/// most 10.
pub fn random_points(nvars: usize, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..nvars).map(|_| random_scalar(&mut rng)).collect()).collect()
}

/// Points of `{0, 1, -1}^m` for small `m`, then the random points. The grid
/// catches zero sets that random rationals almost never hit.
pub fn sample_points(nvars: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    if nvars <= 7 {
        let vals = [int(0), int(1), int(-1)];
        let total = 3usize.pow(nvars as u32);
        for mut code in 0..total {
            let mut p = vec![int(0); nvars];
            for slot in p.iter_mut().rev() {
                *slot = vals[code % 3].clone();
                code /= 3;
            }
            out.push(p);
        }
    }
    out.extend(random_points(nvars, SAMPLE_COUNT, seed));
    out
}

fn point_map(vars: &Vars, values: &[Scalar]) -> Point {
    vars.iter().cloned().zip(values.iter().cloned()).collect()
}

fn unify(p: &Poly, q: &Poly) -> Result<(Vars, Poly, Poly)> {
    if !p.compatible(q) {
        return Err(Error::Usage("condition polynomials over different parameters".into()));
    }
    let vars = if p.vars().is_empty() { q.vars().clone() } else { p.vars().clone() };
    Ok((vars.clone(), in_vars(p.clone(), &vars), in_vars(q.clone(), &vars)))
}

/// Decides, in order: proportional, same factors both ways, agreement of
/// vanishing at sample points, or a witness where exactly one vanishes.
pub fn condition_compare(p: &ConditionPolynomial, q: &ConditionPolynomial, seed: u64) -> Result<ComparisonVerdict> {
    let (vars, p, q) = unify(&p.poly, &q.poly)?;
    if let Some(r) = p.proportional(&q) {
        return Ok(ComparisonVerdict::ProportionalEqual(r));
    }
    if vanishing_contained(&p, &q)? && vanishing_contained(&q, &p)? {
        return Ok(ComparisonVerdict::FactorwiseCompatible);
    }
    let points = sample_points(vars.len(), seed);
    for pt in &points {
        if p.eval_slice(pt).is_zero() != q.eval_slice(pt).is_zero() {
            return Ok(ComparisonVerdict::Different(point_map(&vars, pt)));
        }
    }
    Ok(ComparisonVerdict::SampledConsistent(points.len()))
}

/// How the vanishing of one Lefschetz determinant is tied to the volume.
#[derive(Clone, Debug, PartialEq)]
pub enum Containment {
    /// `det_k = r · volume`.
    Proportional(Scalar),
    /// Every factor of `det_k` divides the volume polynomial.
    Factorwise,
}

#[derive(Clone, Debug, PartialEq)]
pub enum HlcVerdict {
    EverywhereHLC(BTreeMap<usize, Containment>),
    /// Some determinant vanishes identically.
    NowhereHLC {
        degree: usize,
    },
    Mixed {
        hlc: Point,
        non_hlc: Point,
    },
    SampledConsistent(usize),
    Unknown(String),
}

impl HlcVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            HlcVerdict::EverywhereHLC(_) => "EverywhereHLC",
            HlcVerdict::NowhereHLC { .. } => "NowhereHLC",
            HlcVerdict::Mixed { .. } => "Mixed",
            HlcVerdict::SampledConsistent(_) => "SampledConsistent",
            HlcVerdict::Unknown(_) => "Unknown",
        }
    }

    fn evidence(&self) -> Value {
        let point = |p: &Point| -> Value { p.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect() };
        match self {
            HlcVerdict::EverywhereHLC(m) => {
                let per_k: serde_json::Map<String, Value> = m
                    .iter()
                    .map(|(k, c)| {
                        let v = match c {
                            Containment::Proportional(r) => json!({ "proportional_to_volume": r.to_string() }),
                            Containment::Factorwise => json!({ "factors_divide_volume": true }),
                        };
                        (k.to_string(), v)
                    })
                    .collect();
                Value::Object(per_k)
            }
            HlcVerdict::NowhereHLC { degree } => json!({ "identically_zero_det": degree }),
            HlcVerdict::Mixed { hlc, non_hlc } => json!({ "hlc_point": point(hlc), "non_hlc_point": point(non_hlc) }),
            HlcVerdict::SampledConsistent(n) => json!({ "samples": n }),
            HlcVerdict::Unknown(reason) => json!({ "reason": reason }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub algebra: String,
    pub omega: String,
    pub volume: ConditionPolynomial,
    pub determinants: Vec<ConditionPolynomial>,
    pub verdict: HlcVerdict,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let dets: serde_json::Map<String, Value> = self
            .determinants
            .iter()
            .enumerate()
            .map(|(i, d)| ((i + 1).to_string(), json!(d.poly.to_string())))
            .collect();
        json!({
            "algebra": self.algebra,
            "omega": self.omega,
            "volume_poly": self.volume.poly.to_string(),
            "lefschetz_dets": dets,
            "verdict": self.verdict.name(),
            "evidence": self.verdict.evidence(),
        })
    }
}

pub fn hlc_everywhere(f: &ParametricFamily, seed: u64) -> Result<Certificate> {
    let volume = volume_polynomial(f);
    let determinants = lefschetz_determinants(f)?;
    let verdict = decide(f, &volume.poly, &determinants, seed)?;
    Ok(Certificate { algebra: f.algebra.name().to_string(), omega: f.omega.render(), volume, determinants, verdict })
}

fn decide(f: &ParametricFamily, volume: &Poly, dets: &[ConditionPolynomial], seed: u64) -> Result<HlcVerdict> {
    if volume.is_zero() {
        return Ok(HlcVerdict::Unknown("no symplectic forms in family".into()));
    }
    if let Some(k) = dets.iter().position(|d| d.poly.is_zero()) {
        return Ok(HlcVerdict::NowhereHLC { degree: k + 1 });
    }
    let mut certs = BTreeMap::new();
    for (i, d) in dets.iter().enumerate() {
        let c = if let Some(r) = volume.proportional(&d.poly) {
            Some(Containment::Proportional(r))
        } else if vanishing_contained(&d.poly, volume)? {
            Some(Containment::Factorwise)
        } else {
            None
        };
        match c {
            Some(c) => {
                certs.insert(i + 1, c);
            }
            None => break,
        }
    }
    if certs.len() == dets.len() {
        return Ok(HlcVerdict::EverywhereHLC(certs));
    }
    let (mut hlc, mut non_hlc) = (None, None);
    let mut symplectic = 0;
    for pt in sample_points(f.vars.len(), seed) {
        if volume.eval_slice(&pt).is_zero() {
            continue;
        }
        symplectic += 1;
        let ok = dets.iter().all(|d| !d.poly.eval_slice(&pt).is_zero());
        let slot = if ok { &mut hlc } else { &mut non_hlc };
        if slot.is_none() {
            *slot = Some(point_map(&f.vars, &pt));
        }
        if let (Some(h), Some(n)) = (&hlc, &non_hlc) {
            return Ok(HlcVerdict::Mixed { hlc: h.clone(), non_hlc: n.clone() });
        }
    }
    Ok(match (hlc, non_hlc) {
        (Some(_), None) => HlcVerdict::SampledConsistent(symplectic),
        (None, Some(_)) => HlcVerdict::Unknown("no sampled symplectic point satisfies HLC".into()),
        _ => HlcVerdict::Unknown("no sampled point is symplectic".into()),
    })
}

/// Parameter values by name, in variable order.
pub fn values_in_order(vars: &Vars, point: &HashMap<String, Scalar>) -> Result<Vec<Scalar>> {
    vars.iter()
        .map(|v| point.get(v).cloned().ok_or_else(|| Error::Usage(format!("no value for parameter {v}"))))
        .collect()
}

/// Whether the family member at the point is nondegenerate.
pub fn is_symplectic_at(f: &ParametricFamily, values: &[Scalar]) -> bool {
    !volume_polynomial(f).poly.eval_slice(values).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_family;
    use crate::liealgebra::catalog_get;
    use crate::poly::vars_of;
    use num_traits::Signed;

    fn family(name: &str) -> ParametricFamily {
        let g = catalog_get(name).unwrap();
        generic_family(&g, catalog_family(name)).unwrap()
    }

    #[test]
    fn nakamura_volume() {
        let f = family("nakamura6");
        assert_eq!(volume_polynomial(&f).poly.to_string(), "6*c1*c2*c3 + 6*c1*c4*c5");
    }

    #[test]
    fn nakamura_k2_determinant() {
        let f = family("nakamura6");
        let dets = lefschetz_determinants(&f).unwrap();
        let vars = f.vars().clone();
        let expect = Poly::parse("4*(c2*c3 + c4*c5)^2", &vars).unwrap();
        assert_eq!(dets[1].poly, expect);
    }

    #[test]
    fn fms_volume_and_k2() {
        let f = family("fms_m6");
        let vars = f.vars().clone();
        let cubic = Poly::parse(
            "c^3 - c*c1^2 - c*c2^2 - c*c3^2 + c*a^2 - c*c2*c3 + c1^2*c2 + c1^2*c3 - c2*c3^2 - c2*a^2 - c2^2*c3 - c3*a^2",
            &vars,
        )
        .unwrap();
        assert_eq!(volume_polynomial(&f).poly, cubic.scale(&int(6)));
        let q = Poly::parse("c^2 - c1^2 + a^2 + c*c2 + c*c3 + c2*c3", &vars).unwrap();
        assert_eq!(lefschetz_determinants(&f).unwrap()[1].poly, q.pow(2).scale(&int(4)));
    }

    #[test]
    fn r4_family() {
        let f = family("r4");
        assert_eq!(f.vars().len(), 6);
        let vars = f.vars().clone();
        assert_eq!(volume_polynomial(&f).poly, Poly::parse("2*(c1*c6 - c2*c5 + c3*c4)", &vars).unwrap());
    }

    #[test]
    fn verdicts() {
        assert_eq!(hlc_everywhere(&family("nakamura6"), DEFAULT_SEED).unwrap().verdict.name(), "EverywhereHLC");
        assert_eq!(hlc_everywhere(&family("fms_m6"), DEFAULT_SEED).unwrap().verdict.name(), "EverywhereHLC");
        let nil = hlc_everywhere(&family("nil3xr"), DEFAULT_SEED).unwrap();
        assert_eq!(nil.verdict, HlcVerdict::NowhereHLC { degree: 1 });
        assert!(nil.determinants[0].poly.is_zero());
    }

    #[test]
    fn compare_examples() {
        let vars = vars_of(&["c1", "c2"]);
        let cp = |s: &str| ConditionPolynomial {
            poly: Poly::parse(s, &vars).unwrap(),
            meaning: ConditionMeaning::SymplecticVolume,
        };
        let v = condition_compare(&cp("c1"), &cp("c2"), DEFAULT_SEED).unwrap();
        let witness: Point = [("c1".to_string(), int(0)), ("c2".to_string(), int(1))].into_iter().collect();
        assert_eq!(v, ComparisonVerdict::Different(witness));
        assert_eq!(condition_compare(&cp("c1"), &cp("2*c1"), 1).unwrap(), ComparisonVerdict::ProportionalEqual(int(2)));
        assert_eq!(
            condition_compare(&cp("c1^2*c2"), &cp("c1*c2^3"), 1).unwrap(),
            ComparisonVerdict::FactorwiseCompatible
        );
        assert_eq!(
            condition_compare(&cp("c1^2 + 1"), &cp("c2^2 + 1"), 1).unwrap(),
            ComparisonVerdict::SampledConsistent(209)
        );
    }

    #[test]
    fn override_must_be_closed() {
        let g = catalog_get("nil3xr").unwrap();
        let bad = (vec![Form::basis(4, &[3, 4])], vec!["t".to_string()]);
        assert!(matches!(generic_family(&g, Some(bad)), Err(Error::Precondition(_))));
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(random_points(3, 5, 7), random_points(3, 5, 7));
        assert_ne!(random_points(3, 5, 7), random_points(3, 5, 8));
        for p in random_points(4, 50, 1) {
            for x in p {
                assert!(x.denom() <= &10.into() && x.clone().abs() <= int(10));
            }
        }
    }
}
