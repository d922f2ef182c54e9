//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in graded lexicographic order. A polynomial with an empty
//! variable list is a bare constant and is promoted to any variable list it
//! is combined with, which lets `Poly` implement `Zero`/`One`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{CoeffParts, Ring, Scalar};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars_of(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

#[derive(Clone, Debug)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero_in(vars: &Vars) -> Poly {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &Vars, c: Scalar) -> Poly {
        let mut p = Poly::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    /// The `index`-th variable of `vars`.
    pub fn var(vars: &Vars, index: usize) -> Poly {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut p = Poly::zero_in(vars);
        p.terms.insert(Monomial(e), Scalar::one());
        p
    }

    /// One generator polynomial per name, all sharing the same variable list.
    pub fn generators(names: &[&str]) -> Vec<Poly> {
        let vars = vars_of(names);
        (0..names.len()).map(|i| Poly::var(&vars, i)).collect()
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Poly {
        let mut p = Poly::zero_in(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.iter().find(|(m, _)| m.degree() == 0).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Scalar multiple with leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn compatible(&self, other: &Poly) -> bool {
        self.vars.is_empty() || other.vars.is_empty() || self.vars == other.vars
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn lift(&self, vars: &Vars) -> Poly {
        if self.vars == *vars {
            return self.clone();
        }
        assert!(self.vars.is_empty(), "mismatched variable lists {:?} vs {:?}", self.vars, vars);
        Poly::constant_in(vars, self.constant_term())
    }

    fn unify(&self, other: &Poly) -> (Poly, Poly) {
        if self.vars == other.vars {
            (self.clone(), other.clone())
        } else if self.vars.is_empty() {
            (self.lift(&other.vars), other.clone())
        } else {
            (self.clone(), other.lift(&self.vars))
        }
    }

    fn check_same_vars(&self, other: &Poly) -> Result<(Poly, Poly)> {
        if !self.compatible(other) {
            return Err(Error::Usage(format!(
                "mismatched variable lists [{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )));
        }
        Ok(self.unify(other))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant_in(&self.vars, Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        let mut out = Poly::zero_in(&self.vars);
        for (tm, tc) in &self.terms {
            out.terms.insert(tm.product(m), tc * c);
        }
        out
    }

    /// Exact quotient `self / divisor`, `None` when `divisor` does not divide.
    ///
    /// Multivariate division by a single polynomial: the remainder is zero
    /// exactly when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        if divisor.is_zero() {
            return Err(Error::Usage("division by the zero polynomial".into()));
        }
        let (num, den) = self.check_same_vars(divisor)?;
        let vars = if num.vars.is_empty() { den.vars.clone() } else { num.vars.clone() };
        let num = num.lift(&vars);
        let den = den.lift(&vars);
        let (dm, dc) = den.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = num;
        let mut quot = Poly::zero_in(&vars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return Ok(None);
            }
            let qm = m.quotient(&dm);
            let qc = c / &dc;
            rem = rem - den.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// indexed by power.
    fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero_in(&self.vars); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[var], 0) as usize;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    fn var_power(vars: &Vars, var: usize, e: u32) -> Poly {
        let mut ex = vec![0; vars.len()];
        ex[var] = e;
        Poly::from_terms(vars, [(ex, Scalar::one())])
    }

    /// Greatest common divisor with leading coefficient one; `gcd(p, 0)` is
    /// `p` normalized.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let (a, b) = self.check_same_vars(other)?;
        let nv = a.vars.len();
        Ok(gcd_rec(&a, &b, nv))
    }

    /// `Some(r)` with `other == r * self` for a nonzero rational `r`.
    pub fn proportional(&self, other: &Poly) -> Option<Scalar> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(Scalar::one()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if !self.compatible(other) {
            return None;
        }
        let r = other.leading_coeff() / self.leading_coeff();
        if self.scale(&r) == *other {
            Some(r)
        } else {
            None
        }
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn eval(&self, point: &HashMap<String, Scalar>) -> Result<Scalar> {
        let values = self
            .vars
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| Error::Usage(format!("no value assigned to variable `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_slice(&values))
    }

    /// Evaluation with values given in variable order.
    pub fn eval_slice(&self, values: &[Scalar]) -> Scalar {
        if self.vars.is_empty() {
            return self.constant_term();
        }
        assert_eq!(values.len(), self.vars.len());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (name, &e) in self.vars.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    fn fmt_term(&self, m: &Monomial, abs: &Scalar) -> String {
        let mono = self.fmt_monomial(m);
        if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        }
    }

    /// Parses expressions such as `"(c - c2)*(c^2 + 1/2*a)"` over `vars`.
    pub fn parse(text: &str, vars: &Vars) -> Result<Poly> {
        let mut p = PolyParser { src: text.as_bytes(), pos: 0, vars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("unexpected input at offset {} in `{text}`", p.pos)));
        }
        Ok(out.lift_or_keep(vars))
    }

    fn lift_or_keep(self, vars: &Vars) -> Poly {
        if self.vars.is_empty() {
            self.lift(vars)
        } else {
            self
        }
    }
}

fn gcd_rec(a: &Poly, b: &Poly, nv: usize) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars = if a.vars.is_empty() { b.vars.clone() } else { a.vars.clone() };
    let one = Poly::constant_in(&vars, Scalar::one());
    if nv == 0 {
        return one;
    }
    let x = nv - 1;
    if a.degree_in(x) == 0 && b.degree_in(x) == 0 {
        return gcd_rec(a, b, nv - 1);
    }
    let (ca, pa) = content_primitive(a, x);
    let (cb, pb) = content_primitive(b, x);
    let content = gcd_rec(&ca, &cb, nv - 1);
    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) { (pa, pb) } else { (pb, pa) };
    while !g.is_zero() {
        if g.degree_in(x) == 0 {
            f = one.clone();
            break;
        }
        let r = pseudo_remainder(&f, &g, x);
        f = g;
        g = if r.is_zero() { r } else { content_primitive(&r, x).1 };
    }
    let prim = content_primitive(&f, x).1;
    (&content * &prim).monic()
}

/// Content in the variables before `x` and the (monic) primitive part.
fn content_primitive(p: &Poly, x: usize) -> (Poly, Poly) {
    let coeffs = p.coefficients_in(x);
    let mut content = Poly::zero_in(&p.vars);
    for c in coeffs.iter().rev() {
        content = gcd_rec(&content, c, x);
        if content.is_constant() && !content.is_zero() {
            break;
        }
    }
    let prim = p.div_exact(&content).expect("content is nonzero").expect("content divides its polynomial");
    (content, prim.monic())
}

fn pseudo_remainder(f: &Poly, g: &Poly, x: usize) -> Poly {
    let dg = g.degree_in(x);
    let lg = g.coefficients_in(x).pop().unwrap();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(x) >= dg {
        let dr = r.degree_in(x);
        let lr = r.coefficients_in(x).pop().unwrap();
        let shift = Poly::var_power(&r.vars, x, dr - dg);
        r = &(&r * &lg) - &(&(&lr * &shift) * g);
    }
    r
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let s = crate::scalar::parse_scalar(n)?;
                Ok(Poly::constant_in(self.vars, s))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                Ok(Poly::var(self.vars, idx))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            self.terms == other.terms
        } else {
            self.is_constant() && other.is_constant() && self.constant_term() == other.constant_term()
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let body = self.fmt_term(m, &c.abs());
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let (mut a, b) = self.unify(rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let (mut a, b) = self.unify(rhs);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let (a, b) = self.unify(rhs);
        let mut out = Poly::zero_in(&a.vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { vars: Arc::from(Vec::<String>::new()), terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant_in(&Arc::from(Vec::<String>::new()), Scalar::one())
    }
}

impl Ring for Poly {
    fn from_scalar(s: &Scalar) -> Self {
        Poly::constant_in(&Arc::from(Vec::<String>::new()), s.clone())
    }

    fn try_div(&self, divisor: &Self) -> Option<Self> {
        self.div_exact(divisor).ok().flatten()
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Poly::zero_in(&self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    fn coeff_parts(&self) -> CoeffParts {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mono = self.fmt_monomial(m);
            let abs = c.abs();
            let body = if mono.is_empty() && abs.is_one() { None } else { Some(self.fmt_term(m, &abs)) };
            CoeffParts { negative: c.is_negative(), body }
        } else {
            CoeffParts { negative: false, body: Some(format!("({self})")) }
        }
    }
}
