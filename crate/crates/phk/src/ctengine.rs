//! Homogeneous-limit constant terms.
//!
//! Two families of constant terms reproduce the evaluations `z_i = 1` of the
//! basis elements, normalised by the Vandermonde factor `(t - t^-1)^{n(n-1)}`:
//!
//! - [`ct_a`]: the finite Laurent-polynomial constant term
//!   `A_a(tau, y) = CT( prod (1 + y_i x_{i+1}) x_{i+1}^{1-a_i}
//!   prod_{i<j} (x_j - x_i)(1 + x_i x_j + tau x_j) )` with `y_0 = 0`,
//!   computed exactly with reachability pruning;
//! - [`ct_n`], [`ct_n_punctured`]: constant terms with geometric factors
//!   `1/(1 - x_i x_j)`, `1/(1 - x_i^2)`, computed from truncated series with
//!   a per-variable cap that is doubled until the result is stable.
//!
//! [`homogeneous_m`] is the polynomial-side evaluation, and
//! [`homogeneous_limit_report`] ties the two sides together exactly.

use crate::bases::macdonald_polynomial;
use crate::error::{PhkError, Result};
use crate::exactalg::{tau_t, y_value, Rat, RatFuncT};
use crate::polyring::EvalPoint;
use crate::qpoly::{QPoly, VarTable};
use crate::shapes::Partition;
use crate::transition::CheckReport;

/// A constant-term value: an exact polynomial in the weight symbols
/// (`T` for tau together with `y1..` for the A-family, `t0..` for the
/// N-family).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTResult {
    pub poly: QPoly,
}

impl std::fmt::Display for CTResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

// ---------------------------------------------------------------------------
// The A-family: exact Laurent constant term
// ---------------------------------------------------------------------------

/// Multiply `factors` left to right while pruning monomials whose exponent in
/// one of the first `nx` variables can no longer reach zero given the
/// minimal/maximal contributions of the remaining factors. The final result
/// contains exactly the constant-term monomials (zero exponent in all `nx`).
fn ct_pruned_product(factors: &[QPoly], nx: usize, vars: &VarTable) -> QPoly {
    if factors.is_empty() {
        return QPoly::one(vars);
    }
    let vars = vars.clone();
    let m = factors.len();
    let mut suffix_min = vec![vec![0i64; nx]; m + 1];
    let mut suffix_max = vec![vec![0i64; nx]; m + 1];
    for k in (0..m).rev() {
        for v in 0..nx {
            let (lo, hi) = factors[k].var_range(v).unwrap_or((0, 0));
            suffix_min[k][v] = suffix_min[k + 1][v] + lo as i64;
            suffix_max[k][v] = suffix_max[k + 1][v] + hi as i64;
        }
    }
    let mut acc = QPoly::one(&vars);
    for k in 0..m {
        acc = acc.mul(&factors[k]);
        let mut pruned = QPoly::zero(&vars);
        for (e, c) in acc.terms() {
            let reachable = (0..nx).all(|v| {
                let x = e[v] as i64;
                x + suffix_min[k + 1][v] <= 0 && x + suffix_max[k + 1][v] >= 0
            });
            if reachable {
                pruned = pruned.add(&QPoly::monomial(&vars, e.clone(), c.clone()));
            }
        }
        acc = pruned;
    }
    acc
}

/// Symbolic `A_{a_0..a_{n-1}}(tau, y_1..y_{n-1})` over the variables
/// `T, y1..y{n-1}`. The index sequence must be strictly increasing and the
/// integrand fixes `y_0 = 0`.
pub fn ct_a_symbolic(a: &[i64]) -> Result<CTResult> {
    let n = a.len();
    if n == 0 {
        return Err(PhkError::Unsupported("empty index sequence".into()));
    }
    if a.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PhkError::Unsupported(format!(
            "indices must be strictly increasing, got {a:?}"
        )));
    }
    let mut extra: Vec<String> = vec!["T".into()];
    extra.extend((1..n).map(|k| format!("y{k}")));
    let vars = VarTable::x_then(n, &extra);
    let tau = QPoly::var(&vars, n);
    let x = |i: usize| QPoly::var(&vars, i - 1); // 1-based x_i

    let mut factors: Vec<QPoly> = Vec::new();
    // x_{i+1}^{1 - a_i} monomials first: they set the negative exponents the
    // pruning works against
    for (i, &ai) in a.iter().enumerate() {
        let e = 1 - ai;
        if e != 0 {
            factors.push(QPoly::var_pow(&vars, i, e as i32));
        }
    }
    // (1 + y_i x_{i+1}), skipping y_0 = 0
    for i in 1..n {
        let y = QPoly::var(&vars, n + 1 + (i - 1));
        factors.push(QPoly::one(&vars).add(&y.mul(&x(i + 1))));
    }
    // pair factors (x_j - x_i)(1 + x_i x_j + tau x_j)
    for i in 1..=n {
        for j in i + 1..=n {
            factors.push(x(j).sub(&x(i)));
            factors.push(
                QPoly::one(&vars)
                    .add(&x(i).mul(&x(j)))
                    .add(&tau.mul(&x(j))),
            );
        }
    }
    let product = ct_pruned_product(&factors, n, &vars);
    let mut target: Vec<String> = vec!["T".into()];
    target.extend((1..n).map(|k| format!("y{k}")));
    let tvars = VarTable::new(&target);
    Ok(CTResult {
        poly: product.constant_term_prefix(n, &tvars),
    })
}

/// Substitute values (polynomials in `T`) for the `y` symbols of a symbolic
/// A-value, returning a Laurent polynomial in `T`.
pub fn substitute_y(ct: &CTResult, values: &[QPoly]) -> Result<QPoly> {
    let tvars = VarTable::new(&["T"]);
    let mut images = vec![QPoly::var(&tvars, 0)];
    for v in values {
        assert_eq!(v.vars(), &tvars, "y values must be polynomials in T");
        images.push(v.clone());
    }
    assert_eq!(images.len(), ct.poly.vars().len());
    ct.poly.substitute(&images, &tvars)
}

/// Convert a polynomial over `T, y1..` into a rational function of `t` by
/// `tau = -(t + t^-1)` and the supplied `y` values.
pub fn tau_y_to_ratfunc(p: &QPoly, y_vals: &[RatFuncT]) -> Result<RatFuncT> {
    assert_eq!(p.vars().len(), 1 + y_vals.len());
    let tau = RatFuncT::from_laurent(tau_t());
    let mut acc = RatFuncT::zero();
    for (e, c) in p.terms() {
        let mut term = RatFuncT::from_rat(c.clone());
        let te = e[0];
        if te >= 0 {
            term = term.mul(&tau.pow(te as u32));
        } else {
            term = term.mul(&tau.inv()?.pow((-te) as u32));
        }
        for (k, v) in y_vals.iter().enumerate() {
            let ye = e[k + 1];
            if ye > 0 {
                term = term.mul(&v.pow(ye as u32));
            } else if ye < 0 {
                term = term.mul(&v.inv()?.pow((-ye) as u32));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Polynomial-side evaluation and the homogeneous-limit identity
// ---------------------------------------------------------------------------

/// `M_lambda(u)` evaluated at `z_i = 1`.
pub fn homogeneous_m(lambda: &Partition, n: usize, u: &[i64]) -> Result<RatFuncT> {
    let el = macdonald_polynomial(lambda, n, u)?;
    el.poly.evaluate(&EvalPoint::ones(2 * n))
}

/// The correspondence data of the homogeneous limit: index sequence
/// `a_k = lambda_k + k + 1` and spectral offsets `v_k = u_k + k - lambda_k`
/// (`lambda_k` read bottom-up: row `n-k` of the shape, `lambda_0 = 0`).
pub fn homogeneous_limit_params(lambda: &Partition, n: usize, u: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    if u.len() != n - 1 {
        return Err(PhkError::Unsupported(format!(
            "expected {} parameters, got {}",
            n - 1,
            u.len()
        )));
    }
    let part = |k: usize| -> i64 {
        if k == 0 {
            0
        } else {
            lambda.part(n - k - 1) as i64
        }
    };
    let a: Vec<i64> = (0..n).map(|k| part(k) + k as i64 + 1).collect();
    let v: Vec<i64> = (1..n).map(|k| u[k - 1] + k as i64 - part(k)).collect();
    Ok((a, v))
}

/// Exact check of the homogeneous limit:
/// `M_lambda(u)|_(z=1) = (t - t^-1)^(n(n-1)) * A_a(tau, y)` with
/// `y_k = -[v_k]/[v_k+1]`.
pub fn homogeneous_limit_report(lambda: &Partition, n: usize, u: &[i64]) -> Result<CheckReport> {
    let (a, v) = homogeneous_limit_params(lambda, n, u)?;
    let y_vals: Vec<RatFuncT> = v.iter().map(|&vk| y_value(vk)).collect::<Result<_>>()?;
    let ct = ct_a_symbolic(&a)?;
    let rhs_base = tau_y_to_ratfunc(&ct.poly, &y_vals)?;
    let prefactor = RatFuncT::t_pow(1)
        .sub(&RatFuncT::t_pow(-1))
        .pow((n * (n - 1)) as u32);
    let rhs = prefactor.mul(&rhs_base);
    let lhs = homogeneous_m(lambda, n, u)?;
    if lhs == rhs {
        Ok(CheckReport {
            ok: true,
            lines: vec![format!(
                "homogeneous M_({lambda})({u:?}) matches (t-t^-1)^{} * A_{a:?}",
                n * (n - 1)
            )],
        })
    } else {
        Ok(CheckReport {
            ok: false,
            lines: vec![format!(
                "homogeneous mismatch for ({lambda}) at u={u:?}: lhs {lhs}, rhs {rhs}"
            )],
        })
    }
}

// ---------------------------------------------------------------------------
// The N-family: truncated-series constant terms
// ---------------------------------------------------------------------------

/// `sum_k (x_i x_j)^k` truncated at the per-variable cap.
fn geometric_pair(vars: &VarTable, i: usize, j: usize, cap: i32) -> QPoly {
    let mut p = QPoly::zero(vars);
    let mut k = 0;
    loop {
        if k > cap {
            break;
        }
        let mut e = vec![0; vars.len()];
        e[i] = k;
        e[j] = k;
        p = p.add(&QPoly::monomial(vars, e, Rat::from_integer(1.into())));
        k += 1;
    }
    p
}

/// `sum_k x_i^(2k)` truncated at the per-variable cap.
fn geometric_square(vars: &VarTable, i: usize, cap: i32) -> QPoly {
    let mut p = QPoly::zero(vars);
    let mut k = 0;
    while 2 * k <= cap {
        let mut e = vec![0; vars.len()];
        e[i] = 2 * k;
        p = p.add(&QPoly::monomial(vars, e, Rat::from_integer(1.into())));
        k += 1;
    }
    p
}

/// Multiply factors under a uniform per-variable cap on the first `nx`
/// variables and extract the coefficient of `prod x_i^(2i-2)`.
fn n_family_at_cap(factors: &[QPoly], nx: usize, cap: i32, target_vars: &VarTable) -> QPoly {
    let vars = factors[0].vars().clone();
    let mut caps = vec![i32::MAX / 4; vars.len()];
    for (i, c) in caps.iter_mut().enumerate().take(nx) {
        // monomials above the target exponent can never come back down:
        // every factor has nonnegative exponents
        *c = cap.min(2 * i as i32);
    }
    let mut acc = QPoly::one(&vars);
    for f in factors {
        acc = acc.mul_capped(f, Some(&caps));
    }
    // pick the coefficient of x_i^(2i-2): shift and take the constant term
    let mut shift = vec![0i32; vars.len()];
    for (i, s) in shift.iter_mut().enumerate().take(nx) {
        *s = -2 * (i as i32);
    }
    let shifted = acc.mul(&QPoly::monomial(&vars, shift, Rat::from_integer(1.into())));
    shifted.constant_term_prefix(nx, target_vars)
}

fn n_family(factors: &[QPoly], nx: usize, target_vars: &VarTable) -> Result<QPoly> {
    let mut cap = (2 * nx) as i32;
    let max_cap = (16 * nx) as i32;
    let mut value = n_family_at_cap(factors, nx, cap, target_vars);
    loop {
        let doubled = n_family_at_cap(factors, nx, 2 * cap, target_vars);
        if doubled == value {
            return Ok(value);
        }
        cap *= 2;
        if cap > max_cap {
            return Err(PhkError::CapExhausted(cap as usize));
        }
        value = doubled;
    }
}

/// The TSSCPP generating function `N(t_0,...,t_{n-1})`: the constant term of
/// `prod_{i<j} (x_j - x_i)(1 + t_i x_j)/(1 - x_i x_j) *
///  prod_i (1 + t_0 x_i)/(1 - x_i^2) * prod_i x_i^(2-2i)`
/// as an exact polynomial in `t0..t{n-1}`.
pub fn ct_n(n: usize) -> Result<CTResult> {
    assert!(n >= 1);
    let extra: Vec<String> = (0..n).map(|k| format!("t{k}")).collect();
    let vars = VarTable::x_then(n, &extra);
    let x = |i: usize| QPoly::var(&vars, i - 1);
    let t = |k: usize| QPoly::var(&vars, n + k);
    let cap0 = (2 * n) as i32;
    let mut factors = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            factors.push(x(j).sub(&x(i)));
            factors.push(QPoly::one(&vars).add(&t(i).mul(&x(j))));
            factors.push(geometric_pair(&vars, i - 1, j - 1, 2 * cap0));
        }
    }
    for i in 1..=n {
        factors.push(QPoly::one(&vars).add(&t(0).mul(&x(i))));
        factors.push(geometric_square(&vars, i - 1, 2 * cap0));
    }
    let tvars = VarTable::new(&extra);
    Ok(CTResult {
        poly: n_family(&factors, n, &tvars)?,
    })
}

/// The punctured count `N_{n,r}(tau)`: the constant term of
/// `prod_{i<j} (x_j - x_i)(1 + tau x_j)/(1 - x_i x_j) *
///  prod_i (1 + x_i)(1 + tau x_i)^r/(1 - x_i^2) * prod_i x_i^(2-2i)`
/// as an exact polynomial in `T`.
pub fn ct_n_punctured(n: usize, r: usize) -> Result<CTResult> {
    if r >= n {
        return Err(PhkError::Unsupported(format!(
            "puncture size must satisfy 0 <= r < n, got r={r}, n={n}"
        )));
    }
    let vars = VarTable::x_then(n, &["T"]);
    let x = |i: usize| QPoly::var(&vars, i - 1);
    let tau = QPoly::var(&vars, n);
    let cap0 = (2 * n) as i32;
    let mut factors = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            factors.push(x(j).sub(&x(i)));
            factors.push(QPoly::one(&vars).add(&tau.mul(&x(j))));
            factors.push(geometric_pair(&vars, i - 1, j - 1, 2 * cap0));
        }
    }
    for i in 1..=n {
        factors.push(QPoly::one(&vars).add(&x(i)));
        factors.push(QPoly::one(&vars).add(&tau.mul(&x(i))).pow(r as u32));
        factors.push(geometric_square(&vars, i - 1, 2 * cap0));
    }
    let tvars = VarTable::new(&["T"]);
    Ok(CTResult {
        poly: n_family(&factors, n, &tvars)?,
    })
}

/// The Zeilberger-Di Francesco-Zinn-Justin identity
/// `N(s, tau, ..., tau) = A_(1,3,...,2n-1)(tau, s, ..., s)` with a free
/// weight symbol `s`, checked exactly.
pub fn zdfzj_report(n: usize) -> Result<CheckReport> {
    let target = VarTable::new(&["T", "s"]);
    let tau = QPoly::var(&target, 0);
    let s = QPoly::var(&target, 1);

    let nval = ct_n(n)?;
    let mut images = vec![s.clone()];
    images.extend(std::iter::repeat_n(tau.clone(), n - 1));
    let lhs = nval.poly.substitute(&images, &target)?;

    let a: Vec<i64> = (0..n as i64).map(|i| 2 * i + 1).collect();
    let aval = ct_a_symbolic(&a)?;
    let mut images = vec![tau];
    images.extend(std::iter::repeat_n(s, n - 1));
    let rhs = aval.poly.substitute(&images, &target)?;

    if lhs == rhs {
        Ok(CheckReport {
            ok: true,
            lines: vec![format!("N(s,tau,...) = A_(1,3,..,{}) at n={n}", 2 * n - 1)],
        })
    } else {
        Ok(CheckReport {
            ok: false,
            lines: vec![format!(
                "ZDFZJ mismatch at n={n}: N side {lhs}, A side {rhs}"
            )],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::tau_express_ratfunc;

    fn tau_poly(pairs: &[(i64, i64)]) -> QPoly {
        let tvars = VarTable::new(&["T"]);
        let mut p = QPoly::zero(&tvars);
        for &(e, c) in pairs {
            p = p.add(&QPoly::monomial(
                &tvars,
                vec![e as i32],
                Rat::from_integer(c.into()),
            ));
        }
        p
    }

    #[test]
    fn ct_a_trivial() {
        let r = ct_a_symbolic(&[1]).unwrap();
        assert!(r.poly.is_one());
    }

    #[test]
    fn ct_a_staircase_n3_at_tau_inverse() {
        // A_(1,3,5) at y = (tau^-1, tau^-1) must be 3 tau^-1 + 3 tau + tau^3
        let r = ct_a_symbolic(&[1, 3, 5]).unwrap();
        let tinv = tau_poly(&[(-1, 1)]);
        let v = substitute_y(&r, &[tinv.clone(), tinv]).unwrap();
        assert_eq!(v, tau_poly(&[(-1, 3), (1, 3), (3, 1)]));
    }

    #[test]
    fn ct_a_pruning_matches_full_expansion() {
        // brute force: multiply everything with no pruning, then take the
        // x-free part
        let a = [1i64, 3, 5, 7];
        let n = a.len();
        let pruned = ct_a_symbolic(&a).unwrap();
        let mut extra: Vec<String> = vec!["T".into()];
        extra.extend((1..n).map(|k| format!("y{k}")));
        let vars = VarTable::x_then(n, &extra);
        let x = |i: usize| QPoly::var(&vars, i - 1);
        let tau = QPoly::var(&vars, n);
        let mut full = QPoly::one(&vars);
        for (i, &ai) in a.iter().enumerate() {
            full = full.mul(&QPoly::var_pow(&vars, i, (1 - ai) as i32));
        }
        for i in 1..n {
            let y = QPoly::var(&vars, n + 1 + (i - 1));
            full = full.mul(&QPoly::one(&vars).add(&y.mul(&x(i + 1))));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                full = full.mul(&x(j).sub(&x(i)));
                full = full.mul(
                    &QPoly::one(&vars)
                        .add(&x(i).mul(&x(j)))
                        .add(&tau.mul(&x(j))),
                );
            }
        }
        let mut target: Vec<String> = vec!["T".into()];
        target.extend((1..n).map(|k| format!("y{k}")));
        let tvars = VarTable::new(&target);
        let oracle = full.constant_term_prefix(n, &tvars);
        assert_eq!(pruned.poly, oracle);
    }

    #[test]
    fn homogeneous_empty_shape() {
        for n in 2..=3 {
            let v = homogeneous_m(&Partition::empty(), n, &vec![1; n - 1]).unwrap();
            let expect = RatFuncT::t_pow(1)
                .sub(&RatFuncT::t_pow(-1))
                .pow((n * (n - 1)) as u32);
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn homogeneous_maximal_n3_matches_printed_value() {
        // M_221100(1,1)|_(z=1) / DD|_(z=1) = 3 tau^-1 + 3 tau + tau^3
        let v = homogeneous_m(&Partition::new(&[2, 1]), 3, &[1, 1]).unwrap();
        let dd = RatFuncT::t_pow(1).sub(&RatFuncT::t_pow(-1)).pow(6);
        let ratio = v.div(&dd).unwrap();
        let tp = tau_express_ratfunc(&ratio).unwrap();
        assert_eq!(
            tp,
            crate::exactalg::TauPoly::from_coeffs(&[(-1, 3), (1, 3), (3, 1)])
        );
    }

    #[test]
    fn homogeneous_limit_single_cases() {
        let r = homogeneous_limit_report(&Partition::new(&[1]), 2, &[1]).unwrap();
        assert!(r.ok, "{:?}", r.lines);
        let r = homogeneous_limit_report(&Partition::new(&[2, 1]), 3, &[1, 1]).unwrap();
        assert!(r.ok, "{:?}", r.lines);
        let r = homogeneous_limit_report(&Partition::new(&[1]), 3, &[2, 2]).unwrap();
        assert!(r.ok, "{:?}", r.lines);
    }

    #[test]
    fn homogeneous_limit_index_map() {
        // lambda = (1) at n = 3: a = (1, 2, 4)
        let (a, v) = homogeneous_limit_params(&Partition::new(&[1]), 3, &[1, 1]).unwrap();
        assert_eq!(a, vec![1, 2, 4]);
        assert_eq!(v, vec![2, 2]);
        // staircase: v_k = u_k
        let (a, v) = homogeneous_limit_params(&Partition::new(&[2, 1]), 3, &[4, 7]).unwrap();
        assert_eq!(a, vec![1, 3, 5]);
        assert_eq!(v, vec![4, 7]);
    }

    #[test]
    fn ct_n_small_values() {
        assert!(ct_n(1).unwrap().poly.is_one());
        // n = 2: t0 + t1
        let r = ct_n(2).unwrap();
        let vars = r.poly.vars().clone();
        let expect = QPoly::var(&vars, 0).add(&QPoly::var(&vars, 1));
        assert_eq!(r.poly, expect);
        // n = 3: the printed seven-term polynomial
        let r = ct_n(3).unwrap();
        let v = r.poly.vars().clone();
        let t = |k: usize| QPoly::var(&v, k);
        let expect = t(0)
            .add(&t(1))
            .add(&t(0).pow(2).mul(&t(1)))
            .add(&t(0).pow(2).mul(&t(2)))
            .add(&t(0).mul(&t(1).pow(2)))
            .add(&t(0).mul(&t(1)).mul(&t(2)))
            .add(&t(1).pow(2).mul(&t(2)));
        assert_eq!(r.poly, expect);
    }

    #[test]
    fn punctured_printed_value() {
        // N_{3,2}(tau) = 1 + 7 tau + 12 tau^2 + 14 tau^3
        let r = ct_n_punctured(3, 2).unwrap();
        assert_eq!(r.poly, tau_poly(&[(0, 1), (1, 7), (2, 12), (3, 14)]));
        assert!(ct_n_punctured(3, 3).is_err());
    }

    #[test]
    fn punctured_r0_is_unweighted_route() {
        // N_{n,0}(tau) = N(1, tau, ..., tau)
        for n in 1..=3 {
            let p = ct_n_punctured(n, 0).unwrap();
            let tvars = VarTable::new(&["T"]);
            let nv = ct_n(n).unwrap();
            let mut images = vec![QPoly::one(&tvars)];
            images.extend(std::iter::repeat(QPoly::var(&tvars, 0)).take(n - 1));
            let special = nv.poly.substitute(&images, &tvars).unwrap();
            assert_eq!(p.poly, special, "n={n}");
        }
    }

    #[test]
    fn zdfzj_small() {
        for n in 2..=3 {
            let r = zdfzj_report(n).unwrap();
            assert!(r.ok, "{:?}", r.lines);
        }
    }
}
