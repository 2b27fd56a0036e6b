//! Schubert polynomials in two alphabets and flagged Jacobi-Trudi
//! determinants.
//!
//! - [`schubert_dominant`]: the dominant case
//!   `Y_lambda(x, y) = prod_i prod_{j<=lambda_i} (x_i - y_j)`;
//! - [`schubert`]: the general case, computed by lifting the code to a
//!   dominant ancestor and applying the corresponding chain of divided
//!   differences in the `x` alphabet; the chain is reduced-word independent;
//! - [`complete_h`]: complete symmetric functions of an alphabet prefix;
//! - [`flag_schur_det`]: `det(h_{rho_i - mu_j - i + j}(phi_i))`, the flagged
//!   determinant form of the same polynomials;
//! - [`schubert_sum_n`]: the sum of `Y_(rho/lambda)(ybar, 0)` over even
//!   partitions inside the staircase, equal to the TSSCPP generating
//!   function `N(t_0..t_{n-1})`.

use std::fmt;

use num_traits::One;

use crate::error::{PhkError, Result};
use crate::exactalg::Rat;
use crate::qpoly::{QPoly, VarTable};
use crate::shapes::Partition;

/// Polynomials of this module: rational-coefficient polynomials in the
/// alphabet symbols.
pub type MPolyXY = QPoly;

/// One entry of an alphabet: a named symbol or a literal zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaSym {
    Zero,
    Sym(String),
}

/// A finite list of indeterminates-or-zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(pub Vec<AlphaSym>);

impl Alphabet {
    /// `t_0, t_1, 0, t_2, 0, t_3, ...` truncated to `len` entries.
    pub fn ybar(len: usize) -> Self {
        let mut v = Vec::with_capacity(len);
        for i in 0..len {
            let entry = if i == 0 {
                AlphaSym::Sym("t0".into())
            } else if i % 2 == 1 {
                AlphaSym::Sym(format!("t{}", i.div_ceil(2)))
            } else {
                AlphaSym::Zero
            };
            v.push(entry);
        }
        Self(v)
    }

    /// `t_0, t_1, t_2, ...` with `len` entries (the zero-suppressed form).
    pub fn ytilde(len: usize) -> Self {
        Self((0..len).map(|i| AlphaSym::Sym(format!("t{i}"))).collect())
    }

    /// Formal symbols `prefix1..prefixlen`.
    pub fn formal(prefix: &str, len: usize) -> Self {
        Self(
            (1..=len)
                .map(|i| AlphaSym::Sym(format!("{prefix}{i}")))
                .collect(),
        )
    }

    /// The all-zero alphabet of the given length.
    pub fn zeros(len: usize) -> Self {
        Self(vec![AlphaSym::Zero; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entry(&self, i: usize) -> &AlphaSym {
        self.0.get(i).unwrap_or(&AlphaSym::Zero)
    }

    /// Distinct symbol names in first-occurrence order.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.0 {
            if let AlphaSym::Sym(s) = e {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece == "0" {
                v.push(AlphaSym::Zero);
            } else if piece.is_empty() {
                return Err(PhkError::Parse(format!("empty alphabet entry in `{s}`")));
            } else {
                v.push(AlphaSym::Sym(piece.to_string()));
            }
        }
        Ok(Self(v))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|e| match e {
                AlphaSym::Zero => "0".to_string(),
                AlphaSym::Sym(s) => s.clone(),
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A Schubert code: a finite sequence of nonnegative integers, trailing
/// zeros permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code(pub Vec<i64>);

impl Code {
    pub fn new(entries: &[i64]) -> Result<Self> {
        if entries.iter().any(|&e| e < 0) {
            return Err(PhkError::Parse("code entries must be nonnegative".into()));
        }
        Ok(Self(entries.to_vec()))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| PhkError::Parse(format!("expected `[a,b,...]`, got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        let entries: std::result::Result<Vec<i64>, _> =
            inner.split(',').map(|p| p.trim().parse::<i64>()).collect();
        Self::new(&entries.map_err(|e| PhkError::Parse(e.to_string()))?)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

fn combined_table(x: &Alphabet, y: &Alphabet) -> VarTable {
    let mut syms = x.symbols();
    for s in y.symbols() {
        if !syms.contains(&s) {
            syms.push(s);
        }
    }
    VarTable::new(&syms)
}

fn sym_poly(vars: &VarTable, e: &AlphaSym) -> QPoly {
    match e {
        AlphaSym::Zero => QPoly::zero(vars),
        AlphaSym::Sym(s) => QPoly::var(vars, vars.index(s).expect("symbol in table")),
    }
}

/// The dominant Schubert polynomial `Y_lambda(x, y)`.
pub fn schubert_dominant(lambda: &Partition, x: &Alphabet, y: &Alphabet) -> MPolyXY {
    let vars = combined_table(x, y);
    let mut acc = QPoly::one(&vars);
    for i in 1..=lambda.num_rows() {
        for j in 1..=lambda.part(i - 1) as usize {
            let factor = sym_poly(&vars, x.entry(i - 1)).sub(&sym_poly(&vars, y.entry(j - 1)));
            acc = acc.mul(&factor);
        }
    }
    acc
}

/// Lift a code to its dominant ancestor. Returns the ancestor and the chain
/// of divided-difference indices; the polynomial is recovered by applying
/// the chain to the dominant product, last index first.
fn lift_chain(code: &[i64], pick_last_ascent: bool) -> (Vec<i64>, Vec<usize>) {
    let mut v = code.to_vec();
    let mut chain = Vec::new();
    loop {
        let ascents: Vec<usize> = (0..v.len().saturating_sub(1))
            .filter(|&i| v[i] < v[i + 1])
            .collect();
        let Some(&i) = (if pick_last_ascent {
            ascents.last()
        } else {
            ascents.first()
        }) else {
            break;
        };
        chain.push(i);
        let (a, b) = (v[i], v[i + 1]);
        v[i] = b + 1;
        v[i + 1] = a;
    }
    (v, chain)
}

fn schubert_formal(code: &Code, m: usize, y: &Alphabet, pick_last_ascent: bool) -> MPolyXY {
    let x = Alphabet::formal("x", m);
    let (dominant, chain) = lift_chain(&code.0, pick_last_ascent);
    let dom_partition = Partition::new(&dominant.iter().map(|&e| e as u32).collect::<Vec<_>>());
    let vars = combined_table(&x, y);
    let mut poly = schubert_dominant(&dom_partition, &x, y);
    // make sure the table matches even when the dominant shape is empty
    if poly.vars() != &vars {
        poly = QPoly::constant(&vars, Rat::one());
    }
    for &i in chain.iter().rev() {
        poly = poly.divided_difference(i);
    }
    poly
}

/// The Schubert polynomial `Y_v(x, y)`: lift `v` to a dominant ancestor,
/// apply the divided-difference chain in formal `x` variables, then
/// substitute the `x` alphabet. The result lives over the symbols of the
/// two alphabets in first-occurrence order.
pub fn schubert(code: &Code, x: &Alphabet, y: &Alphabet) -> Result<MPolyXY> {
    schubert_with_strategy(code, x, y, false)
}

/// Same as [`schubert`] with the opposite ascent-picking strategy; used to
/// exercise reduced-word independence.
pub fn schubert_with_strategy(
    code: &Code,
    x: &Alphabet,
    y: &Alphabet,
    pick_last_ascent: bool,
) -> Result<MPolyXY> {
    let m = code.0.len().max(x.len());
    let formal = schubert_formal(code, m, y, pick_last_ascent);
    // substitute x_i -> alphabet entry
    let xf = Alphabet::formal("x", m);
    let source = combined_table(&xf, y);
    debug_assert_eq!(formal.vars(), &source);
    let mut target_syms = x.symbols();
    for s in y.symbols() {
        if !target_syms.contains(&s) {
            target_syms.push(s);
        }
    }
    let target = VarTable::new(&target_syms);
    let mut images = Vec::new();
    for i in 0..m {
        images.push(sym_poly(&target, x.entry(i)));
    }
    for s in y.symbols() {
        images.push(QPoly::var(&target, target.index(&s).unwrap()));
    }
    formal.substitute(&images, &target)
}

/// Complete symmetric function of degree `k` in the first `prefix_len`
/// entries of the alphabet (zero entries contribute nothing). Negative `k`
/// gives 0 and `k = 0` gives 1.
pub fn complete_h(k: i64, prefix_len: usize, alphabet: &Alphabet) -> MPolyXY {
    let syms: Vec<String> = alphabet.0[..prefix_len.min(alphabet.len())]
        .iter()
        .filter_map(|e| match e {
            AlphaSym::Sym(s) => Some(s.clone()),
            AlphaSym::Zero => None,
        })
        .collect();
    let vars = VarTable::new(&alphabet.symbols());
    complete_h_over(k, &syms, &vars)
}

fn complete_h_over(k: i64, syms: &[String], vars: &VarTable) -> QPoly {
    if k < 0 {
        return QPoly::zero(vars);
    }
    if k == 0 {
        return QPoly::one(vars);
    }
    if syms.is_empty() {
        return QPoly::zero(vars);
    }
    let first = vars.index(&syms[0]).expect("symbol in table");
    let mut acc = QPoly::zero(vars);
    for e in 0..=k {
        let tail = complete_h_over(k - e, &syms[1..], vars);
        acc = acc.add(&QPoly::var_pow(vars, first, e as i32).mul(&tail));
    }
    acc
}

fn determinant(matrix: &[Vec<QPoly>], vars: &VarTable) -> QPoly {
    let n = matrix.len();
    if n == 0 {
        return QPoly::one(vars);
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut acc = QPoly::zero(vars);
    for (j, item) in matrix[0].iter().enumerate() {
        if item.is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = item.mul(&determinant(&minor, vars));
        acc = if j % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

/// The flagged Jacobi-Trudi determinant
/// `det(h_{rho_i - mu_j - i + j}(phi_i))` with `mu` the conjugate of
/// `lambda` and row `i` drawing from the first `flag_i` alphabet entries.
pub fn flag_schur_det(
    rho: &Partition,
    lambda: &Partition,
    alphabet: &Alphabet,
    flag: &[usize],
) -> Result<MPolyXY> {
    if !rho.contains(lambda) {
        return Err(PhkError::Unsupported(format!(
            "inner shape ({lambda}) not contained in ({rho})"
        )));
    }
    let size = rho.num_rows();
    if flag.len() < size {
        return Err(PhkError::Unsupported(format!(
            "flag length {} shorter than {} rows",
            flag.len(),
            size
        )));
    }
    let mu = lambda.conjugate();
    let vars = VarTable::new(&alphabet.symbols());
    let mut matrix = Vec::with_capacity(size);
    for i in 1..=size {
        let mut row = Vec::with_capacity(size);
        for j in 1..=size {
            let degree = rho.part(i - 1) as i64 - mu.part(j - 1) as i64 - i as i64 + j as i64;
            row.push(complete_h(degree, flag[i - 1], alphabet));
        }
        matrix.push(row);
    }
    Ok(determinant(&matrix, &vars))
}

/// The code `(rho/lambda) = [0, n-1-mu_1, 0, n-2-mu_2, 0, ...]` indexing the
/// Schubert summand attached to an even partition inside the staircase.
pub fn staircase_quotient_code(n: usize, lambda: &Partition) -> Code {
    let mu = lambda.conjugate();
    let mut entries = Vec::with_capacity(2 * n - 1);
    entries.push(0);
    for k in 1..n {
        entries.push((n - k) as i64 - mu.part(k - 1) as i64);
        entries.push(0);
    }
    Code(entries)
}

/// The even-partition Schubert sum
/// `N(t_0..t_{n-1}) = sum_(lambda even) Y_(rho/lambda)(ybar, 0)` over the
/// supplied weight alphabet (substituted for `ybar`).
pub fn schubert_sum_n(n: usize, t_weights: &Alphabet) -> Result<MPolyXY> {
    let vars = VarTable::new(&t_weights.symbols());
    let mut acc = QPoly::zero(&vars);
    let zeros = Alphabet::zeros(2 * n - 1);
    for lambda in Partition::staircase(n).subpartitions() {
        if !lambda.is_even() {
            continue;
        }
        let code = staircase_quotient_code(n, &lambda);
        let term = schubert(&code, t_weights, &zeros)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The weight alphabet with `n` symbols in the `ybar` layout
/// `t0, t1, 0, t2, 0, ..., t_{n-1}` (length `2n - 1`).
pub fn ybar_for(n: usize) -> Alphabet {
    Alphabet::ybar(2 * n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_vars(n: usize) -> VarTable {
        let syms: Vec<String> = (0..n).map(|k| format!("t{k}")).collect();
        VarTable::new(&syms)
    }

    fn tv(vars: &VarTable, k: usize) -> QPoly {
        QPoly::var(vars, k)
    }

    #[test]
    fn dominant_examples() {
        let empty = schubert_dominant(
            &Partition::empty(),
            &Alphabet::formal("x", 3),
            &Alphabet::formal("y", 3),
        );
        assert!(empty.is_one());

        // v = [4,2,1]
        let x = Alphabet::formal("x", 3);
        let y = Alphabet::formal("y", 4);
        let p = schubert_dominant(&Partition::new(&[4, 2, 1]), &x, &y);
        let vars = p.vars().clone();
        let sym = |s: &str| QPoly::var(&vars, vars.index(s).unwrap());
        let mut expect = QPoly::one(&vars);
        for (xi, yj) in [
            ("x1", "y1"),
            ("x1", "y2"),
            ("x1", "y3"),
            ("x1", "y4"),
            ("x2", "y1"),
            ("x2", "y2"),
            ("x3", "y1"),
        ] {
            expect = expect.mul(&sym(xi).sub(&sym(yj)));
        }
        assert_eq!(p, expect);

        // lambda = (1) at y = 0 is x1
        let p = schubert_dominant(&Partition::new(&[1]), &x, &Alphabet::zeros(1));
        assert_eq!(p, QPoly::var(p.vars(), 0).clone());
    }

    #[test]
    fn printed_ybar_values() {
        let ybar = ybar_for(3);
        let zeros = Alphabet::zeros(5);
        // Y_[0,1,0,0,0](ybar, 0) = t0 + t1
        let p = schubert(&Code::new(&[0, 1, 0, 0, 0]).unwrap(), &ybar, &zeros).unwrap();
        let vars = t_vars(3);
        assert_eq!(p, tv(&vars, 0).add(&tv(&vars, 1)));
        // Y_[0,2,0,1,0](ybar, 0): the printed five-term polynomial
        let p = schubert(&Code::new(&[0, 2, 0, 1, 0]).unwrap(), &ybar, &zeros).unwrap();
        let expect = tv(&vars, 0)
            .pow(2)
            .mul(&tv(&vars, 1))
            .add(&tv(&vars, 0).pow(2).mul(&tv(&vars, 2)))
            .add(&tv(&vars, 0).mul(&tv(&vars, 1).pow(2)))
            .add(&tv(&vars, 0).mul(&tv(&vars, 1)).mul(&tv(&vars, 2)))
            .add(&tv(&vars, 1).pow(2).mul(&tv(&vars, 2)));
        assert_eq!(p, expect);
    }

    #[test]
    fn grassmannian_is_schur() {
        // weakly increasing code [1,2] at y=0: the Schur function s_(2,1)(x1,x2)
        let x = Alphabet::formal("x", 2);
        let p = schubert(&Code::new(&[1, 2]).unwrap(), &x, &Alphabet::zeros(2)).unwrap();
        let vars = p.vars().clone();
        let (x1, x2) = (QPoly::var(&vars, 0), QPoly::var(&vars, 1));
        // s_(2,1)(x1,x2) = x1^2 x2 + x1 x2^2
        let expect = x1.pow(2).mul(&x2).add(&x1.mul(&x2.pow(2)));
        assert_eq!(p, expect);
    }

    #[test]
    fn lifting_is_reduced_word_independent() {
        let ybar = ybar_for(4);
        let zeros = Alphabet::zeros(7);
        for lambda in Partition::staircase(4).subpartitions() {
            if !lambda.is_even() {
                continue;
            }
            let code = staircase_quotient_code(4, &lambda);
            let a = schubert_with_strategy(&code, &ybar, &zeros, false).unwrap();
            let b = schubert_with_strategy(&code, &ybar, &zeros, true).unwrap();
            assert_eq!(a, b, "code {code}");
        }
    }

    #[test]
    fn complete_h_examples() {
        let ybar = Alphabet::ybar(5);
        assert!(complete_h(0, 3, &ybar).is_one());
        assert!(complete_h(-1, 3, &ybar).is_zero());
        // h_2 over the first two entries (t0, t1)
        let p = complete_h(2, 2, &ybar);
        let vars = VarTable::new(&ybar.symbols());
        let (t0, t1) = (QPoly::var(&vars, 0), QPoly::var(&vars, 1));
        assert_eq!(p, t0.pow(2).add(&t0.mul(&t1)).add(&t1.pow(2)));
        // first four entries of ybar contain t0,t1,t2: h_1 = t0+t1+t2
        let p = complete_h(1, 4, &ybar);
        let t2 = QPoly::var(&vars, 2);
        assert_eq!(p, t0.add(&t1).add(&t2));
    }

    #[test]
    fn flag_determinant_examples() {
        let rho = Partition::new(&[2, 1]);
        let ytilde = Alphabet::ytilde(3);
        // inner empty: the five-term polynomial
        let det = flag_schur_det(&rho, &Partition::empty(), &ytilde, &[2, 3]).unwrap();
        let code = Code::new(&[0, 2, 0, 1, 0]).unwrap();
        let direct = schubert(&code, &ybar_for(3), &Alphabet::zeros(5)).unwrap();
        assert_eq!(det, direct);
        // inner (2): t0 + t1
        let det = flag_schur_det(&rho, &Partition::new(&[2]), &ytilde, &[2, 3]).unwrap();
        let vars = t_vars(3);
        assert_eq!(det, tv(&vars, 0).add(&tv(&vars, 1)));
        // rho = lambda: unit determinant
        let det = flag_schur_det(&rho, &rho, &ytilde, &[2, 3]).unwrap();
        assert!(det.is_one());
    }

    #[test]
    fn flag_presentations_agree() {
        // ybar with zeros and flag (2,4,...,2n-2) versus ytilde with flag
        // (2,3,...,n)
        for n in 2..=4usize {
            let rho = Partition::staircase(n);
            let ybar = Alphabet::ybar(2 * n - 1);
            let ytilde = Alphabet::ytilde(n);
            let bar_flag: Vec<usize> = (1..n).map(|i| 2 * i).collect();
            let tilde_flag: Vec<usize> = (2..=n).collect();
            for lambda in rho.subpartitions() {
                if !lambda.is_even() {
                    continue;
                }
                let a = flag_schur_det(&rho, &lambda, &ybar, &bar_flag).unwrap();
                let b = flag_schur_det(&rho, &lambda, &ytilde, &tilde_flag).unwrap();
                assert_eq!(a, b, "n={n}, lambda={lambda}");
            }
        }
    }

    #[test]
    fn schubert_sum_printed_n3() {
        // two even shapes contribute: codes [0,2,0,1,0] and [0,1,0,0,0]
        assert_eq!(
            staircase_quotient_code(3, &Partition::empty()),
            Code::new(&[0, 2, 0, 1, 0]).unwrap()
        );
        assert_eq!(
            staircase_quotient_code(3, &Partition::new(&[2])),
            Code::new(&[0, 1, 0, 0, 0]).unwrap()
        );
        let sum = schubert_sum_n(3, &ybar_for(3)).unwrap();
        let vars = t_vars(3);
        let t = |k| tv(&vars, k);
        let expect = t(0)
            .add(&t(1))
            .add(&t(0).pow(2).mul(&t(1)))
            .add(&t(0).pow(2).mul(&t(2)))
            .add(&t(0).mul(&t(1).pow(2)))
            .add(&t(0).mul(&t(1)).mul(&t(2)))
            .add(&t(1).pow(2).mul(&t(2)));
        assert_eq!(sum, expect);
        // n = 1: the empty staircase sums to 1
        assert!(schubert_sum_n(1, &ybar_for(1)).unwrap().is_one());
    }

    #[test]
    fn worked_determinant_chain() {
        // Y_[4,6,7] -> Y_[0,3,0,4,0,4] under d1 d3 d2 d5 d4 d3, checked
        // against both determinant presentations
        let ybar = Alphabet::ybar(6);
        let zeros = Alphabet::zeros(6);
        let source = Code::new(&[4, 6, 7]).unwrap();

        // initial determinant over the zero-suppressed alphabet: rows
        // h_4(1) h_7(1) h_9(1) / h_3(2) h_6(2) h_8(2) / h_2(3) h_5(3)
        // h_7(3), h_k(r) taken in t_0..t_{r-1}
        let vars3 = t_vars(3);
        let h3 = |k: i64, r: usize| -> QPoly {
            let syms: Vec<String> = (0..r).map(|m| format!("t{m}")).collect();
            complete_h_over(k, &syms, &vars3)
        };
        let init = determinant(
            &[
                vec![h3(4, 1), h3(7, 1), h3(9, 1)],
                vec![h3(3, 2), h3(6, 2), h3(8, 2)],
                vec![h3(2, 3), h3(5, 3), h3(7, 3)],
            ],
            &vars3,
        );
        let direct = schubert(&source, &Alphabet::ytilde(3), &zeros).unwrap();
        assert_eq!(direct, init);

        let vars = VarTable::new(&ybar.symbols());
        let h = |k: i64, r: usize| -> QPoly {
            let syms: Vec<String> = (0..r).map(|m| format!("t{m}")).collect();
            complete_h_over(k, &syms, &vars)
        };

        // the chain of codes printed for the transformation
        let chain: Vec<(usize, Vec<i64>)> = vec![
            (3, vec![4, 6, 0, 6]),
            (4, vec![4, 6, 0, 0, 5]),
            (5, vec![4, 6, 0, 0, 0, 4]),
            (2, vec![4, 0, 5, 0, 0, 4]),
            (3, vec![4, 0, 0, 4, 0, 4]),
            (1, vec![0, 3, 0, 4, 0, 4]),
        ];
        let x = Alphabet::formal("x", 6);
        let mut poly = schubert(&source, &x, &Alphabet::zeros(6)).unwrap();
        // pad to six x variables
        let six = combined_table(&x, &Alphabet::zeros(6));
        if poly.vars().len() < six.len() {
            let images: Vec<QPoly> = (0..poly.vars().len())
                .map(|i| QPoly::var(&six, i))
                .collect();
            poly = poly.substitute(&images, &six).unwrap();
        }
        for (i, code) in &chain {
            poly = poly.divided_difference(i - 1);
            let expect = schubert(&Code::new(code).unwrap(), &x, &Alphabet::zeros(6)).unwrap();
            let expect = {
                let images: Vec<QPoly> = (0..expect.vars().len())
                    .map(|i| QPoly::var(&six, i))
                    .collect();
                expect.substitute(&images, &six).unwrap()
            };
            assert_eq!(poly, expect, "after d_{i} expected Y_{code:?}");
        }

        // final determinant over ytilde with flags (2,3,4)
        let fin = determinant(
            &[
                vec![h(3, 2), h(6, 2), h(8, 2)],
                vec![h(1, 3), h(4, 3), h(6, 3)],
                vec![QPoly::zero(&vars), h(2, 4), h(4, 4)],
            ],
            &vars,
        );
        let direct_final = schubert(
            &Code::new(&[0, 3, 0, 4, 0, 4]).unwrap(),
            &Alphabet::ybar(6),
            &zeros,
        )
        .unwrap();
        assert_eq!(direct_final, fin);
    }

    #[test]
    fn code_parse_display() {
        let c = Code::parse("[0,2,0,1,0]").unwrap();
        assert_eq!(c.to_string(), "[0,2,0,1,0]");
        assert!(Code::parse("[0,-1]").is_err());
        let a = Alphabet::parse("t0,t1,0,t2").unwrap();
        assert_eq!(a.to_string(), "t0,t1,0,t2");
    }
}
