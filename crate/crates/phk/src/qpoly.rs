//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! Shared plumbing for the constant-term engine, the Schubert module and the
//! tableau generating functions: polynomials in a named list of symbols
//! (`x1..xn`, `t0..t{n-1}`, `y1..y{n-1}`, `T` for tau) with exact rational
//! coefficients and integer (possibly negative) exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{PhkError, Result};
use crate::exactalg::Rat;

/// A shared, ordered list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable(Arc<Vec<String>>);

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Self(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    /// `x1..xn` followed by extra symbols.
    pub fn x_then<S: AsRef<str>>(n: usize, extra: &[S]) -> Self {
        let mut v: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        v.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Self(Arc::new(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|s| s == name)
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }
}

/// Sparse multivariate Laurent polynomial over a fixed [`VarTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    vars: VarTable,
    terms: BTreeMap<Vec<i32>, Rat>,
}

impl QPoly {
    pub fn zero(vars: &VarTable) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarTable, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn from_int(vars: &VarTable, n: i64) -> Self {
        Self::constant(vars, Rat::from_integer(n.into()))
    }

    /// The variable `vars[i]`.
    pub fn var(vars: &VarTable, i: usize) -> Self {
        Self::var_pow(vars, i, 1)
    }

    /// `vars[i]^e`.
    pub fn var_pow(vars: &VarTable, i: usize, e: i32) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = e;
        Self::monomial(vars, exps, Rat::one())
    }

    pub fn monomial(vars: &VarTable, exps: Vec<i32>, c: Rat) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, exps: Vec<i32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "operation on polynomials over different variables"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.insert(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_capped(other, None)
    }

    /// Product with optional per-variable degree caps: terms whose exponent in
    /// variable `i` exceeds `caps[i]` are dropped. Used for truncated series.
    pub fn mul_capped(&self, other: &Self, caps: Option<&[i32]>) -> Self {
        self.check(other);
        let mut r = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            'terms: for (e2, c2) in &other.terms {
                let mut e = e1.clone();
                for (i, x) in e2.iter().enumerate() {
                    e[i] += x;
                    if let Some(caps) = caps {
                        if e[i] > caps[i] {
                            continue 'terms;
                        }
                    }
                }
                r.insert(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(&self.vars);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Exponent range of variable `i` over all terms.
    pub fn var_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut range: Option<(i32, i32)> = None;
        for e in self.terms.keys() {
            let x = e[i];
            range = Some(match range {
                None => (x, x),
                Some((lo, hi)) => (lo.min(x), hi.max(x)),
            });
        }
        range
    }

    /// Keep only terms with exponent zero in each of the first `k` variables
    /// and project them onto the remaining variables.
    pub fn constant_term_prefix(&self, k: usize, target: &VarTable) -> Self {
        assert_eq!(self.vars.len() - k, target.len());
        let mut r = QPoly::zero(target);
        for (e, c) in &self.terms {
            if e[..k].iter().all(|&x| x == 0) {
                r.insert(e[k..].to_vec(), c.clone());
            }
        }
        r
    }

    /// Drop every term with a nonzero exponent in variable `i` (the constant
    /// term with respect to that single variable).
    pub fn constant_term_in(&self, i: usize) -> Self {
        let mut r = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                r.insert(e.clone(), c.clone());
            }
        }
        r
    }

    /// Substitute each variable by its image. Images must live in a common
    /// variable table. Negative exponents require single-term images.
    pub fn substitute(&self, images: &[QPoly], target: &VarTable) -> Result<Self> {
        assert_eq!(images.len(), self.vars.len());
        let mut r = QPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = QPoly::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let img = &images[i];
                if x > 0 {
                    term = term.mul(&img.pow(x as u32));
                } else {
                    let inv = img.invert_monomial()?;
                    term = term.mul(&inv.pow((-x) as u32));
                }
                if term.is_zero() {
                    break;
                }
            }
            r = r.add(&term);
        }
        Ok(r)
    }

    fn invert_monomial(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(PhkError::Unsupported(
                "cannot invert a non-monomial in substitution".into(),
            ));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(
            &self.vars,
            e.iter().map(|&x| -x).collect(),
            c.clone().recip(),
        ))
    }

    /// Swap the exponents of variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut r = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            r.insert(e, c.clone());
        }
        r
    }

    /// Divided difference `(f - s_i f)/(x_i - x_{i+1})` acting on the
    /// variables at indices `i` and `i+1`, computed per monomial so the
    /// division is exact by construction. Exponents in the two variables
    /// must be nonnegative.
    pub fn divided_difference(&self, i: usize) -> Self {
        let j = i + 1;
        assert!(j < self.vars.len());
        let mut r = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let (a, b) = (e[i], e[j]);
            assert!(a >= 0 && b >= 0, "divided difference on Laurent exponents");
            if a == b {
                continue;
            }
            // (x^a y^b - x^b y^a)/(x - y) = sign * sum over the strip between
            let (lo, d, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
            for k in 0..d {
                let mut exps = e.clone();
                exps[i] = lo + d - 1 - k;
                exps[j] = lo + k;
                let coeff = if sign > 0 { c.clone() } else { -c.clone() };
                r.insert(exps, coeff);
            }
        }
        r
    }

    fn grlex_key(e: &[i32]) -> (i64, Vec<i32>) {
        (e.iter().map(|&x| x as i64).sum(), e.to_vec())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<i32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| Self::grlex_key(b).cmp(&Self::grlex_key(a)));
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(i), x)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> VarTable {
        VarTable::new(&["x1", "x2", "t0"])
    }

    #[test]
    fn arithmetic_basics() {
        let v = ctx();
        let x1 = QPoly::var(&v, 0);
        let x2 = QPoly::var(&v, 1);
        let p = x1.add(&x2).pow(2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&[1, 1, 0]), Rat::from_integer(2.into()));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn capped_multiplication() {
        let v = ctx();
        let x1 = QPoly::var(&v, 0);
        let p = QPoly::one(&v).add(&x1);
        let q = p.mul_capped(&p, Some(&[1, 8, 8]));
        // x1^2 dropped by the cap
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn divided_difference_basics() {
        let v = ctx();
        let x1 = QPoly::var(&v, 0);
        let x2 = QPoly::var(&v, 1);
        assert!(x1.mul(&x2).divided_difference(0).is_zero());
        assert_eq!(x1.clone().divided_difference(0), QPoly::one(&v));
        assert_eq!(x1.pow(2).divided_difference(0), x1.add(&x2));
        let f = x1.pow(3).mul(&x2).add(&QPoly::var(&v, 2).mul(&x1));
        assert!(f.divided_difference(0).divided_difference(0).is_zero());
    }

    #[test]
    fn substitution() {
        let v = ctx();
        let target = VarTable::new(&["T"]);
        let x1 = QPoly::var(&v, 0);
        let x2 = QPoly::var(&v, 1);
        let p = x1.mul(&x2).add(&x1);
        let tpow = QPoly::var_pow(&target, 0, -1);
        let one = QPoly::one(&target);
        let sub = p.substitute(&[tpow, one.clone(), one], &target).unwrap();
        assert_eq!(sub.coeff(&[-1]), Rat::from_integer(2.into()));
    }

    #[test]
    fn display_ordering() {
        let v = ctx();
        let x1 = QPoly::var(&v, 0);
        let t0 = QPoly::var(&v, 2);
        let p = x1
            .pow(2)
            .add(&t0.scale(&Rat::from_integer(3.into())))
            .sub(&QPoly::one(&v));
        assert_eq!(p.to_string(), "x1^2 + 3*t0 - 1");
    }
}
