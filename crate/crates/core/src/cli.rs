//! Command-line front end: algebra files, the form-expression parser and
//! command dispatch.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::almostkaehler::{
    compatibility_check, hodge_operators, j_invariant_cohomology_with, lejmi_kernel_with, primitive_j_cohomology_with,
    AlmostComplexStructure, AlmostKaehlerReport, CompatibleTriple,
};
use crate::catalog::{catalog_complex_structure, catalog_family, catalog_symplectic_form, darboux_complex_structure};
use crate::cohomology::{hlc_check_with, Cohomology};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::liealgebra::{catalog_get, LieAlgebra, CATALOG_NAMES};
use crate::linalg::Matrix;
use crate::parametric::{generic_family, hlc_everywhere, DEFAULT_SEED};
use crate::scalar::{parse_scalar, Scalar};
use crate::symplectic::{SymplecticCalculus, SymplecticStructure};

// ---------------------------------------------------------------------------
// Form expressions

/// A homogeneous form parsed from text such as `e14 + e23` or
/// `e12 + 2*e34 - 1/3*e56`. Above dimension 9 basis symbols use braces,
/// `e{1,10}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormExpression {
    pub source: String,
    pub form: Form<Scalar>,
}

struct ExprParser<'a> {
    text: &'a [u8],
    pos: usize,
    dim: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse(format!("{} (at offset {})", msg.into(), self.pos))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.digits();
        self.skip_ws();
        if self.text.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits();
            if den.is_empty() {
                return Err(self.err(format!("malformed rational `{num}/`")));
            }
            return parse_scalar(&format!("{num}/{den}"))
                .map_err(|_| self.err(format!("malformed rational `{num}/{den}`")));
        }
        parse_scalar(&num).map_err(|_| self.err(format!("malformed coefficient `{num}`")))
    }

    fn basis(&mut self) -> Result<Vec<usize>> {
        if self.peek() != Some(b'e') {
            return Err(self.err("expected a basis symbol `e...`"));
        }
        self.pos += 1;
        let mut idx = Vec::new();
        if self.text.get(self.pos) == Some(&b'{') {
            self.pos += 1;
            loop {
                self.skip_ws();
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.err("expected an index inside braces"));
                }
                idx.push(d.parse::<usize>().map_err(|_| self.err(format!("index {d} out of range 1..={}", self.dim)))?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b'}') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected `,` or `}`")),
                }
            }
        } else {
            let d = self.digits();
            if self.dim >= 10 && !d.is_empty() {
                return Err(self.err(format!("dimension {} needs the braces form e{{i,j,...}}", self.dim)));
            }
            idx.extend(d.bytes().map(|b| (b - b'0') as usize));
        }
        for &i in &idx {
            if !(1..=self.dim).contains(&i) {
                return Err(self.err(format!("index {i} out of range 1..={}", self.dim)));
            }
        }
        Ok(idx)
    }

    fn term(&mut self) -> Result<Form<Scalar>> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                match self.peek() {
                    Some(b'*') => self.pos += 1,
                    // A bare coefficient is a 0-form, as rendered.
                    None | Some(b'+') | Some(b'-') => return Ok(Form::constant(self.dim, c)),
                    _ => return Err(self.err("expected `*` after coefficient")),
                }
                c
            }
            _ => Scalar::from_integer(1.into()),
        };
        let idx = self.basis()?;
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != idx.len() {
            return Err(self.err(format!("repeated index in e{idx:?}")));
        }
        Ok(Form::basis(self.dim, &idx).scale(&coeff))
    }

    fn expr(&mut self) -> Result<Form<Scalar>> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc: Option<Form<Scalar>> = None;
        loop {
            let t = self.term()?;
            let t = if negate { t.neg() } else { t };
            acc = Some(match acc {
                None => t,
                Some(a) if a.degree() != t.degree() => {
                    return Err(self.err(format!(
                        "non-homogeneous expression: degrees {} and {}",
                        a.degree(),
                        t.degree()
                    )))
                }
                Some(a) => a.add(&t),
            });
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            }
            self.pos += 1;
        }
        Ok(acc.expect("at least one term"))
    }
}

pub fn parse_form_expression(text: &str, dim: usize) -> Result<FormExpression> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty form expression".into()));
    }
    let mut p = ExprParser { text: text.as_bytes(), pos: 0, dim };
    let form = p.expr()?;
    Ok(FormExpression { source: text.to_string(), form })
}

// ---------------------------------------------------------------------------
// Algebra files

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    #[serde(default)]
    d: BTreeMap<String, Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    completely_solvable: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    lattice: bool,
}

/// Parses the JSON algebra format and validates the Jacobi identity.
pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    let g = parse_algebra_json(text)?;
    g.ensure_valid()?;
    Ok(g)
}

fn parse_algebra_json(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Load(format!("malformed algebra JSON: {e}")))?;
    let mut entries = Vec::new();
    for (k, triples) in &file.d {
        let k: usize = k.parse().map_err(|_| Error::Load(format!("generator key `{k}` is not an index")))?;
        for (i, j, c) in triples {
            let c = parse_scalar(c).map_err(|e| Error::Load(format!("de^{k}: {e}")))?;
            entries.push((k, *i, *j, c));
        }
    }
    let mut g = LieAlgebra::new(&file.name, file.dim, &entries).map_err(|e| match e {
        Error::Usage(m) => Error::Load(m),
        other => other,
    })?;
    g.claimed_completely_solvable = file.completely_solvable;
    g.claimed_lattice = file.lattice;
    Ok(g)
}

pub fn algebra_to_json(g: &LieAlgebra) -> String {
    let mut d = BTreeMap::new();
    for k in 1..=g.dim() {
        let terms = g.structure_terms(k);
        if !terms.is_empty() {
            d.insert(k.to_string(), terms.iter().map(|t| (t.i, t.j, t.coeff.to_string())).collect());
        }
    }
    let file = AlgebraFile {
        name: g.name().to_string(),
        dim: g.dim(),
        d,
        completely_solvable: g.claimed_completely_solvable,
        lattice: g.claimed_lattice,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn load_algebra(path: &Path) -> Result<LieAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Load(format!("{}: {e}", path.display())))?;
    algebra_from_json(&text)
}

pub fn save_algebra(g: &LieAlgebra, path: &Path) -> Result<()> {
    std::fs::write(path, algebra_to_json(g) + "\n").map_err(|e| Error::Load(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Commands

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Hard Lefschetz and dd^Λ checks on symplectic Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Catalog name or path to an algebra JSON file.
    pub algebra: String,
    /// Emit JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(clap::Args, Debug, Clone)]
pub struct WithOmega {
    #[command(flatten)]
    pub common: Common,
    /// Symplectic form, e.g. "e14 + e23"; defaults to the catalog form.
    #[arg(long)]
    pub omega: Option<String>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct WithJ {
    #[command(flatten)]
    pub with_omega: WithOmega,
    /// Almost-complex structure on the coframe as rows, e.g. "0,1;-1,0".
    /// Column i is J e^i. Defaults to the structure paired with ω.
    #[arg(long)]
    pub j: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the builtin algebras.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of the invariant cohomology.
    Betti(Common),
    /// Cohomology bases.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Hard Lefschetz check for one symplectic form.
    Hlc(WithOmega),
    /// dd^Λ-lemma degree by degree.
    Ddlambda(WithOmega),
    /// The five equivalent conditions, evaluated independently.
    Audit(WithOmega),
    /// J-invariant and J-anti-invariant cohomology.
    Jinv(WithJ),
    /// Kernel of the Lejmi operator on primitive 2-forms.
    Lejmi(WithJ),
    /// Polynomial HLC certificate for a family Σ c_i β_i of closed 2-forms.
    ParamHlc(Common),
    /// Jacobi identity and unimodularity diagnostics.
    Validate(Common),
}

pub fn resolve_algebra(source: &str) -> Result<LieAlgebra> {
    if CATALOG_NAMES.contains(&source) {
        return catalog_get(source);
    }
    let path = Path::new(source);
    if path.exists() || source.ends_with(".json") {
        let g = load_algebra(path)?;
        let diag = g.validate();
        if !diag.unimodular {
            eprintln!("warning: {} is not unimodular (traces {})", g.name(), diag.traces.join(", "));
        }
        return Ok(g);
    }
    catalog_get(source)
}

fn is_catalog(g: &LieAlgebra, source: &str) -> bool {
    CATALOG_NAMES.contains(&source) && g.name() == source
}

fn resolve_omega_form(g: &LieAlgebra, source: &str, omega: &Option<String>) -> Result<Form<Scalar>> {
    match omega {
        Some(text) => {
            let f = parse_form_expression(text, g.dim())?.form;
            if f.degree() != 2 {
                return Err(Error::Usage(format!("--omega must be a 2-form, got degree {}", f.degree())));
            }
            Ok(f)
        }
        None if is_catalog(g, source) => catalog_symplectic_form(source),
        None => Err(Error::Usage(format!("{} is not a catalog algebra; pass --omega", g.name()))),
    }
}

fn resolve_symplectic(g: &LieAlgebra, args: &WithOmega) -> Result<SymplecticStructure> {
    if !g.is_even() {
        return Err(Error::Usage(format!("{} has odd dimension {}", g.name(), g.dim())));
    }
    let form = resolve_omega_form(g, &args.common.algebra, &args.omega)?;
    SymplecticStructure::new(g, form)
}

fn parse_matrix(text: &str, dim: usize) -> Result<Matrix<Scalar>> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .map(|row| row.split(',').map(|x| parse_scalar(x.trim())).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Usage(format!("--j must be a {dim}x{dim} matrix")));
    }
    Ok(Matrix::from_rows(rows))
}

/// `ω = Σ e^{ab}` over disjoint pairs, unit coefficients.
fn darboux_pairs_of(omega: &Form<Scalar>) -> Option<Vec<(usize, usize)>> {
    let mut used = 0u32;
    let mut pairs = Vec::new();
    for (b, c) in omega.terms() {
        if *c != Scalar::from_integer(1.into()) || used & b.bits() != 0 {
            return None;
        }
        used |= b.bits();
        let idx = b.indices();
        pairs.push((idx[0], idx[1]));
    }
    (pairs.len() * 2 == omega.dim()).then_some(pairs)
}

fn resolve_triple(g: &LieAlgebra, args: &WithJ) -> Result<CompatibleTriple> {
    let omega = resolve_symplectic(g, &args.with_omega)?;
    let source = &args.with_omega.common.algebra;
    let jm = match (&args.j, &args.with_omega.omega) {
        (Some(text), _) => parse_matrix(text, g.dim())?,
        (None, None) if is_catalog(g, source) => catalog_complex_structure(source)?,
        (None, _) => match darboux_pairs_of(omega.omega()) {
            Some(pairs) => darboux_complex_structure(g.dim(), &pairs),
            None => return Err(Error::Usage("no default J for this ω; pass --j".into())),
        },
    };
    let j = AlmostComplexStructure::new(jm)?;
    compatibility_check(&j, &omega)?.ok_or_else(|| Error::Precondition("J is not compatible with ω".into()))
}

fn seed_from_env() -> Result<u64> {
    match std::env::var("LEFSCHETZ_SEED") {
        Ok(s) => {
            s.trim().parse().map_err(|_| Error::Usage(format!("LEFSCHETZ_SEED must be an unsigned integer, got `{s}`")))
        }
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn json_out(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn cohomology_label(g: &LieAlgebra) -> Option<&'static str> {
    (!g.claimed_completely_solvable).then_some("invariant cohomology")
}

fn render_list(forms: &[Form<Scalar>]) -> String {
    forms.iter().map(|f| format!("[{f}]")).collect::<Vec<_>>().join(", ")
}

/// Runs one command and returns its standard output.
pub fn run(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.command {
        Command::List { json } => {
            let algebras: Vec<LieAlgebra> = CATALOG_NAMES.iter().map(|n| catalog_get(n)).collect::<Result<_>>()?;
            if *json {
                let v: Vec<Value> = algebras
                    .iter()
                    .map(|g| json!({ "name": g.name(), "dim": g.dim(), "completely_solvable": g.claimed_completely_solvable }))
                    .collect();
                return Ok(json_out(&v));
            }
            for g in &algebras {
                let eqs: Vec<String> =
                    (1..=g.dim()).filter(|&k| !g.de(k).is_zero()).map(|k| format!("de{k} = {}", g.de(k))).collect();
                let eqs = if eqs.is_empty() { "abelian".to_string() } else { eqs.join(", ") };
                writeln!(out, "{:<10} dim {}  {}", g.name(), g.dim(), eqs).unwrap();
            }
        }
        Command::Betti(c) => {
            let g = resolve_algebra(&c.algebra)?;
            let betti = Cohomology::compute(&g).betti_numbers();
            if c.json {
                let mut v = json!({ "algebra": g.name(), "betti": betti });
                if let Some(label) = cohomology_label(&g) {
                    v["label"] = json!(label);
                }
                return Ok(json_out(&v));
            }
            let s: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
            writeln!(out, "{}", s.join(" ")).unwrap();
            if let Some(label) = cohomology_label(&g) {
                writeln!(out, "({label})").unwrap();
            }
        }
        Command::Cohomology { common, degree } => {
            let g = resolve_algebra(&common.algebra)?;
            let h = Cohomology::compute(&g);
            let degrees: Vec<usize> = match degree {
                Some(k) if *k > g.dim() => {
                    return Err(Error::Usage(format!("degree {k} exceeds dimension {}", g.dim())))
                }
                Some(k) => vec![*k],
                None => (0..=g.dim()).collect(),
            };
            if common.json {
                let per: serde_json::Map<String, Value> = degrees
                    .iter()
                    .map(|&k| {
                        let reps: Vec<String> = h.basis(k).representatives().iter().map(|f| f.render()).collect();
                        (k.to_string(), json!(reps))
                    })
                    .collect();
                let mut v = json!({ "algebra": g.name(), "bases": per });
                if let Some(label) = cohomology_label(&g) {
                    v["label"] = json!(label);
                }
                return Ok(json_out(&v));
            }
            for k in degrees {
                let b = h.basis(k);
                writeln!(out, "H^{k} (b{k} = {}): {}", b.betti(), render_list(b.representatives())).unwrap();
            }
            if let Some(label) = cohomology_label(&g) {
                writeln!(out, "({label})").unwrap();
            }
        }
        Command::Hlc(args) => {
            let g = resolve_algebra(&args.common.algebra)?;
            let w = resolve_symplectic(&g, args)?;
            let report = hlc_check_with(&g, &Cohomology::compute(&g), &w);
            if args.common.json {
                return Ok(json_out(&report));
            }
            writeln!(out, "algebra {}  ω = {}", g.name(), w.omega()).unwrap();
            writeln!(out, "{:>3} {:>6} {:>11} {:>5}", "k", "rank", "surjective", "iso").unwrap();
            for (k, d) in &report.hlc {
                writeln!(out, "{:>3} {:>6} {:>11} {:>5}", k, d.rank, d.surjective, d.iso).unwrap();
            }
            writeln!(out, "HLC: {}", report.verdict).unwrap();
        }
        Command::Ddlambda(args) => {
            let g = resolve_algebra(&args.common.algebra)?;
            let w = resolve_symplectic(&g, args)?;
            let calc = SymplecticCalculus::new(&g, &w)?;
            let mut per = BTreeMap::new();
            for k in 0..=g.dim() {
                per.insert(k, calc.ddlambda_lemma(k)?);
            }
            let holds = per.values().all(|&b| b);
            if args.common.json {
                let degrees: serde_json::Map<String, Value> =
                    per.iter().map(|(k, b)| (k.to_string(), json!(b))).collect();
                return Ok(json_out(&json!({ "algebra": g.name(), "degrees": degrees, "holds": holds })));
            }
            for (k, b) in &per {
                writeln!(out, "k = {k}: {b}").unwrap();
            }
            writeln!(out, "dd^Λ-lemma: {holds}").unwrap();
        }
        Command::Audit(args) => {
            let g = resolve_algebra(&args.common.algebra)?;
            let w = resolve_symplectic(&g, args)?;
            let audit = SymplecticCalculus::new(&g, &w)?.equivalence_audit()?;
            if args.common.json {
                return Ok(json_out(&audit));
            }
            let rows = [
                ("i   HLC", audit.i_hlc),
                ("ii  symplectic harmonic representatives", audit.ii_harmonic),
                ("iii dd^Λ-lemma", audit.iii_ddlambda),
                ("iv  Bott-Chern -> de Rham injective", audit.iv_bc_injective),
                ("v   Bott-Chern -> Aeppli isomorphic", audit.v_bc_aeppli_iso),
            ];
            for (label, b) in rows {
                writeln!(out, "{label:<42} {b}").unwrap();
            }
            writeln!(out, "consistent: {}", audit.consistent).unwrap();
        }
        Command::Jinv(args) | Command::Lejmi(args) => {
            let g = resolve_algebra(&args.with_omega.common.algebra)?;
            let t = resolve_triple(&g, args)?;
            let h = Cohomology::compute(&g);
            let jinv = j_invariant_cohomology_with(&g, &h, t.j());
            let prim = primitive_j_cohomology_with(&g, &h, t.j(), t.omega());
            let kernel = lejmi_kernel_with(&t, &hodge_operators(&t, &g));
            let report = AlmostKaehlerReport {
                h_plus: jinv.h_plus.dim,
                h_minus: jinv.h_minus.dim,
                h_plus_primitive: prim.dim,
                ker_pj: kernel.dim(),
                pure_and_full: jinv.pure_and_full,
            };
            if args.with_omega.common.json {
                return Ok(json_out(&report));
            }
            if matches!(cli.command, Command::Jinv(_)) {
                writeln!(out, "H+_J   (h+ = {}): {}", report.h_plus, render_list(&jinv.h_plus.representatives))
                    .unwrap();
                writeln!(out, "H-_J   (h- = {}): {}", report.h_minus, render_list(&jinv.h_minus.representatives))
                    .unwrap();
                writeln!(out, "H+_J,0 (h+0 = {}): {}", report.h_plus_primitive, render_list(&prim.representatives))
                    .unwrap();
                writeln!(out, "pure and full: {}", report.pure_and_full).unwrap();
            } else {
                let forms: Vec<String> =
                    kernel.basis().iter().map(|v| Form::from_vector(g.dim(), 2, v).render()).collect();
                writeln!(out, "dim ker P_J = {} (invariant primitive 2-forms)", report.ker_pj).unwrap();
                for f in forms {
                    writeln!(out, "  {f}").unwrap();
                }
                writeln!(out, "h+_J,0 + h-_J = {}", report.h_plus_primitive + report.h_minus).unwrap();
            }
        }
        Command::ParamHlc(c) => {
            let g = resolve_algebra(&c.algebra)?;
            let basis = if is_catalog(&g, &c.algebra) { catalog_family(&c.algebra) } else { None };
            let family = generic_family(&g, basis)?;
            let cert = hlc_everywhere(&family, seed_from_env()?)?;
            if c.json {
                return Ok(json_out(&cert.to_json()));
            }
            writeln!(out, "Ω = {}", cert.omega).unwrap();
            writeln!(out, "volume: {}", cert.volume.poly).unwrap();
            for (i, d) in cert.determinants.iter().enumerate() {
                writeln!(out, "det k={}: {}", i + 1, d.poly).unwrap();
            }
            writeln!(out, "verdict: {}", cert.verdict.name()).unwrap();
        }
        Command::Validate(c) => {
            let g = resolve_algebra_unchecked(&c.algebra)?;
            let diag = g.validate();
            if c.json {
                return Ok(json_out(&diag));
            }
            writeln!(out, "jacobi: {}", if diag.jacobi_ok { "ok" } else { "FAILED" }).unwrap();
            for k in &diag.jacobi_failures {
                writeln!(out, "  Jacobi violation at generator {k}").unwrap();
            }
            writeln!(out, "unimodular: {}", diag.unimodular).unwrap();
            if !diag.unimodular {
                writeln!(out, "warning: not unimodular (traces {})", diag.traces.join(", ")).unwrap();
            }
        }
    }
    Ok(out)
}

/// Like [`resolve_algebra`] but keeps algebras that fail the Jacobi
/// identity, so that `validate` can report on them.
fn resolve_algebra_unchecked(source: &str) -> Result<LieAlgebra> {
    if CATALOG_NAMES.contains(&source) {
        return catalog_get(source);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Load(format!("{source}: {e}")))?;
    parse_algebra_json(&text)
}

/// Entry point used by the binary: parses arguments, runs, and returns the
/// process exit status.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Blade;
    use crate::scalar::{frac, int};

    #[test]
    fn parse_examples() {
        let f = parse_form_expression("e14 + e23", 4).unwrap().form;
        assert_eq!(f, Form::basis(4, &[1, 4]).add(&Form::basis(4, &[2, 3])));
        let f = parse_form_expression("e12 + 2*e34 - 1/3*e56", 6).unwrap().form;
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(Blade::from_indices(&[5, 6]).unwrap()), frac(-1, 3));
        assert_eq!(f.render(), "e12 + 2*e34 - 1/3*e56");
    }

    #[test]
    fn parse_errors() {
        let msg = |t: &str, dim| match parse_form_expression(t, dim) {
            Err(Error::Parse(m)) => m,
            other => panic!("expected parse error for {t}, got {other:?}"),
        };
        assert!(msg("e1 + e23", 4).contains("non-homogeneous"));
        assert!(msg("e15", 4).contains("index 5"));
        assert!(msg("1/*e12", 4).contains("malformed rational"));
        assert!(msg("1/0*e12", 4).contains("malformed rational"));
        assert!(msg("e12", 10).contains("braces"));
    }

    #[test]
    fn braces_above_nine() {
        let f = parse_form_expression("e{1,10} - 2*e{3,4}", 10).unwrap().form;
        assert_eq!(f.render(), "e{1,10} - 2*e{3,4}");
        assert_eq!(parse_form_expression(&f.render(), 10).unwrap().form, f);
    }

    #[test]
    fn leading_sign_and_whitespace() {
        let f = parse_form_expression("  - e12 +3 * e34", 4).unwrap().form;
        assert_eq!(f, Form::basis(4, &[1, 2]).neg().add(&Form::basis(4, &[3, 4]).scale(&int(3))));
    }

    #[test]
    fn algebra_json_round_trip() {
        let g = catalog_get("sol3xr").unwrap();
        let back = algebra_from_json(&algebra_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn jacobi_failure_is_fatal_on_load() {
        let text = r#"{"name":"bad","dim":4,"d":{"1":[[2,3,"1"]],"2":[[1,4,"1"]]}}"#;
        match algebra_from_json(text) {
            Err(Error::Load(m)) => assert!(m.contains("Jacobi violation at generator")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
