//! Basis elements of the module generated by the double t-Vandermonde.
//!
//! The cyclic vector is `ΔΔ = Δ_t(z_1..z_n) Δ_t(z_{n+1}..z_{2n})`. Both
//! distinguished bases are obtained by acting on it with schedules of
//! Baxterised operators read off labeled diagrams:
//!
//! - KL elements use the label recursion of [`crate::shapes::kl_labels`];
//! - specialised Macdonald elements use the staircase-inherited labels of
//!   [`crate::shapes::macdonald_labels`], with integer deformation
//!   parameters `u` (all ones giving the undeformed element).
//!
//! Every element is homogeneous of degree `n(n-1)`.

use crate::error::{PhkError, Result};
use crate::exactalg::RatFuncT;
use crate::polyring::{act_sequence, t_vandermonde, EvalPoint, MultiPoly};
use crate::shapes::{
    kl_labels, macdonald_labels, partition_from_word, schedule, staircase_words, Partition,
    YamWord,
};

/// Which basis an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    KL,
    M,
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisKind::KL => write!(f, "KL"),
            BasisKind::M => write!(f, "M"),
        }
    }
}

/// A constructed basis element: its indexing data and the explicit
/// polynomial in `z_1..z_{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub n: usize,
    pub shape: Partition,
    pub u: Option<Vec<i64>>,
    pub poly: MultiPoly,
}

impl BasisElement {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "kind": self.kind.to_string(),
            "n": self.n,
            "shape": self.shape.to_string(),
            "poly": self.poly.to_json(),
        });
        if let Some(u) = &self.u {
            v["u"] = serde_json::json!(u);
        }
        v
    }
}

/// `ΔΔ = Δ_t(z_1,...,z_n) Δ_t(z_{n+1},...,z_{2n})` in `2n` variables.
pub fn delta_delta(n: usize) -> MultiPoly {
    assert!(n >= 1);
    let first: Vec<usize> = (1..=n).collect();
    let second: Vec<usize> = (n + 1..=2 * n).collect();
    t_vandermonde(2 * n, &first)
        .unwrap()
        .mul(&t_vandermonde(2 * n, &second).unwrap())
}

/// The KL element indexed by a partition inside the staircase.
pub fn kl_polynomial(lambda: &Partition, n: usize) -> Result<BasisElement> {
    let diagram = kl_labels(lambda, n)?;
    let poly = act_sequence(&schedule(&diagram), &delta_delta(n))?;
    Ok(BasisElement {
        kind: BasisKind::KL,
        n,
        shape: lambda.clone(),
        u: None,
        poly,
    })
}

/// The deformed specialised Macdonald element with integer parameters `u`
/// (length `n-1`). All parameters equal to 1 gives the undeformed element.
pub fn macdonald_polynomial(lambda: &Partition, n: usize, u: &[i64]) -> Result<BasisElement> {
    if u.len() != n - 1 {
        return Err(PhkError::Unsupported(format!(
            "expected {} deformation parameters, got {}",
            n - 1,
            u.len()
        )));
    }
    let diagram = macdonald_labels(lambda, n, u)?;
    let poly = act_sequence(&schedule(&diagram), &delta_delta(n))?;
    Ok(BasisElement {
        kind: BasisKind::M,
        n,
        shape: lambda.clone(),
        u: Some(u.to_vec()),
        poly,
    })
}

/// The evaluation matrix of the vanishing property: entry `(i, j)` is
/// `KL_{w_j}` evaluated at the point `t^{-2 w_i}`.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub n: usize,
    pub words: Vec<YamWord>,
    pub matrix: Vec<Vec<RatFuncT>>,
    /// True when off-diagonal entries vanish and diagonal entries do not.
    pub holds: bool,
}

impl VanishingReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, wi) in self.words.iter().enumerate() {
            for (j, wj) in self.words.iter().enumerate() {
                out.push_str(&format!(
                    "KL_{}(t^-2*{}) = {}\n",
                    wj, wi, self.matrix[i][j]
                ));
            }
        }
        out.push_str(&format!("vanishing property holds: {}\n", self.holds));
        out
    }
}

/// Evaluate every KL element of size `n` at every point `t^{-2w}`.
/// Bounded by `PHK_MAX_N` (default 3): the matrix is quadratic in the
/// Catalan number.
pub fn vanishing_report(n: usize) -> Result<VanishingReport> {
    let bound = crate::max_n(3);
    if n > bound {
        return Err(PhkError::Unsupported(format!(
            "vanishing_report bounded at n={bound} (set PHK_MAX_N to raise)"
        )));
    }
    let words = staircase_words(n);
    let elements: Vec<BasisElement> = words
        .iter()
        .map(|w| kl_polynomial(&partition_from_word(w, n)?, n))
        .collect::<Result<_>>()?;
    let mut matrix = Vec::with_capacity(words.len());
    let mut holds = true;
    for wi in &words {
        let point = EvalPoint::from_word(wi);
        let mut row = Vec::with_capacity(words.len());
        for (j, el) in elements.iter().enumerate() {
            let v = el.poly.evaluate(&point)?;
            let expect_zero = words[j] != *wi;
            if v.is_zero() != expect_zero {
                holds = false;
            }
            row.push(v);
        }
        matrix.push(row);
    }
    Ok(VanishingReport {
        n,
        words,
        matrix,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::act_sequence;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts)
    }

    fn kl_word(w: &str, n: usize) -> MultiPoly {
        let word = YamWord::parse(w).unwrap();
        kl_polynomial(&partition_from_word(&word, n).unwrap(), n)
            .unwrap()
            .poly
    }

    #[test]
    fn delta_delta_small() {
        assert_eq!(delta_delta(1), MultiPoly::one(2));
        let d2 = delta_delta(2);
        let expect = t_vandermonde(4, &[1, 2])
            .unwrap()
            .mul(&t_vandermonde(4, &[3, 4]).unwrap());
        assert_eq!(d2, expect);
        assert_eq!(delta_delta(3).homogeneous_degree(), Some(6));
    }

    #[test]
    fn kl_products_n3_goldens() {
        let dd = delta_delta(3);
        // KL_111000 = ΔΔ
        assert_eq!(kl_word("111000", 3), dd);
        // KL_110100 = T_3(1) ΔΔ
        assert_eq!(kl_word("110100", 3), act_sequence(&[(3, 1)], &dd).unwrap());
        // KL_101100 = T_2(1) T_3(2) ΔΔ
        assert_eq!(
            kl_word("101100", 3),
            act_sequence(&[(2, 1), (3, 2)], &dd).unwrap()
        );
        // KL_110010 = T_4(1) T_3(2) ΔΔ
        assert_eq!(
            kl_word("110010", 3),
            act_sequence(&[(4, 1), (3, 2)], &dd).unwrap()
        );
        // KL_101010 = T_2(1) T_4(1) T_3(2) ΔΔ
        assert_eq!(
            kl_word("101010", 3),
            act_sequence(&[(2, 1), (4, 1), (3, 2)], &dd).unwrap()
        );
    }

    #[test]
    fn macdonald_products_n3_goldens() {
        let dd = delta_delta(3);
        let ones = [1i64, 1];
        let m = |shape: &[u32]| macdonald_polynomial(&p(shape), 3, &ones).unwrap().poly;
        // M_210210 = ΔΔ
        assert_eq!(m(&[]), dd);
        // M_212010 = T_3(3) ΔΔ
        assert_eq!(m(&[1]), act_sequence(&[(3, 3)], &dd).unwrap());
        // M_221010 = T_2(2) T_3(3) ΔΔ
        assert_eq!(m(&[1, 1]), act_sequence(&[(2, 2), (3, 3)], &dd).unwrap());
        // M_212100 = T_4(2) T_3(3) ΔΔ
        assert_eq!(m(&[2]), act_sequence(&[(4, 2), (3, 3)], &dd).unwrap());
        // M_221100 = T_2(2) T_4(2) T_3(3) ΔΔ
        assert_eq!(
            m(&[2, 1]),
            act_sequence(&[(2, 2), (4, 2), (3, 3)], &dd).unwrap()
        );
    }

    #[test]
    fn homogeneity() {
        for lambda in crate::shapes::staircase_subpartitions(3) {
            let el = kl_polynomial(&lambda, 3).unwrap();
            assert_eq!(el.poly.homogeneous_degree(), Some(6), "KL_{lambda}");
            let el = macdonald_polynomial(&lambda, 3, &[2, 1]).unwrap();
            assert_eq!(el.poly.homogeneous_degree(), Some(6), "M_{lambda}");
        }
    }

    #[test]
    fn strict_shape_at_critical_u_gives_kl() {
        // v_k = 0, i.e. u_k = lambda_k - k in the bottom-up indexing,
        // turns the deformed M element into the KL element
        let kl = kl_polynomial(&p(&[2, 1]), 3).unwrap().poly;
        let m = macdonald_polynomial(&p(&[2, 1]), 3, &[0, 0]).unwrap().poly;
        assert_eq!(kl, m);
        // n=4, lambda=(3,1): u = (-1, -1, 0) bottom-up
        let kl = kl_polynomial(&p(&[3, 1]), 4).unwrap().poly;
        let m = macdonald_polynomial(&p(&[3, 1]), 4, &[-1, -1, 0])
            .unwrap()
            .poly;
        assert_eq!(kl, m);
    }

    #[test]
    fn vanishing_n2() {
        let report = vanishing_report(2).unwrap();
        assert!(report.holds);
        assert_eq!(report.words.len(), 2);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(report.matrix[i][j].is_zero(), i != j);
            }
        }
    }

    #[test]
    fn basis_element_json() {
        let el = kl_polynomial(&p(&[1]), 2).unwrap();
        let v = el.to_json();
        assert_eq!(v["kind"], "KL");
        assert_eq!(
            MultiPoly::from_json(&v["poly"]).unwrap(),
            el.poly
        );
    }
}
