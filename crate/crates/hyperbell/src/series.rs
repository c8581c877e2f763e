//! Truncated formal power series over exact rationals, and the
//! series-exponentiation oracles built from them.
//!
//! This is the independent route against the recursions in [`crate::sequences`]:
//! exponentiate the weighted series directly, then read the integer sequences
//! back out of the coefficients. The two routes share no code beyond the
//! arithmetic primitives.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, is_integer, Int, Rat};

/// A power series truncated at a fixed order: coefficient k is the
/// coefficient of z^k, and `coeffs.len() == order + 1` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Rat>,
}

impl FormalSeries {
    /// The zero series truncated at `order`.
    pub fn zeros(order: usize) -> Self {
        Self { coeffs: vec![Rat::zero(); order + 1] }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// Wrap explicit coefficients; `coeffs[k]` multiplies z^k.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, value: Rat) {
        self.coeffs[k] = value;
    }

    /// Truncated Cauchy product. Both factors must carry the same order, so
    /// the truncation window of the result is unambiguous.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        let n = self.order();
        let mut out = Self::zeros(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by `s`.
    pub fn scale(&self, s: &Rat) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// exp of a series with zero constant term, via the linear recurrence
    /// m g_m = sum_{j=1}^{m} j f_j g_{m-j} that the derivative law
    /// (exp f)' = f' exp f imposes on the coefficients.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm { found: self.coeffs[0].clone() });
        }
        let n = self.order();
        let mut g = Self::zeros(n);
        g.coeffs[0] = Rat::one();
        for m in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += Rat::from_integer(Int::from(j as u64))
                        * &self.coeffs[j]
                        * &g.coeffs[m - j];
                }
            }
            g.coeffs[m] = acc / Rat::from_integer(Int::from(m as u64));
        }
        Ok(g)
    }

    /// log of a series with constant term 1; exact inverse of [`Self::exp`]
    /// at the same truncation order.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne { found: self.coeffs[0].clone() });
        }
        let n = self.order();
        let mut f = Self::zeros(n);
        for m in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..m {
                if !f.coeffs[j].is_zero() {
                    acc += Rat::from_integer(Int::from(j as u64))
                        * &f.coeffs[j]
                        * &self.coeffs[m - j];
                }
            }
            f.coeffs[m] =
                &self.coeffs[m] - acc / Rat::from_integer(Int::from(m as u64));
        }
        Ok(f)
    }

    /// Integer power by binary exponentiation (truncated at this order).
    pub fn pow(&self, exp: usize) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("orders match by construction");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("orders match by construction");
            }
        }
        result
    }

    /// Zero out coefficients 0..=upto (clamped to the order). This is how the
    /// restricted variants drop the leading terms before exponentiating.
    pub fn zero_prefix(mut self, upto: usize) -> Self {
        let end = upto.min(self.order());
        for c in &mut self.coeffs[..=end] {
            *c = Rat::zero();
        }
        self
    }
}

/// Parameter list (k_1, ..., k_level) of a hypergeometric-style series with
/// coefficient 1 / (n! * prod_i (k_i)_n) at z^n. All parameters are positive
/// integers; the all-ones list of length `level` gives weight (n!)^(level+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeomSpec {
    params: Vec<u64>,
}

impl HypergeomSpec {
    pub fn new(params: Vec<u64>) -> Result<Self> {
        if params.iter().any(|&k| k == 0) {
            return Err(Error::InvalidArgument("spec parameters must be >= 1".into()));
        }
        Ok(Self { params })
    }

    pub fn all_ones(level: u32) -> Self {
        Self { params: vec![1; level as usize] }
    }

    pub fn level(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    /// The same parameter list with every entry increased by `shift`.
    pub fn shifted(&self, shift: u64) -> Self {
        Self { params: self.params.iter().map(|&k| k + shift).collect() }
    }

    /// w_n = n! * prod_i (k_i)_n.
    pub fn weight(&self, n: usize) -> Int {
        let mut w = factorial(n);
        for &k in &self.params {
            w *= crate::exact::pochhammer(k, n);
        }
        w
    }

    /// [w_0, ..., w_order], built incrementally.
    pub fn weights(&self, order: usize) -> Vec<Int> {
        let mut out = Vec::with_capacity(order + 1);
        let mut w = Int::one();
        out.push(w.clone());
        for n in 1..=order as u64 {
            w *= Int::from(n);
            for &k in &self.params {
                w *= Int::from(k + n - 1);
            }
            out.push(w.clone());
        }
        out
    }
}

/// The series sum_n z^n / w_n truncated at `order`.
pub fn hypergeom_series(spec: &HypergeomSpec, order: usize) -> FormalSeries {
    let coeffs = spec
        .weights(order)
        .into_iter()
        .map(|w| Rat::new(Int::one(), w))
        .collect();
    FormalSeries::from_coeffs(coeffs)
}

/// Multiply coefficient n by weights[n] and demand an integer each time.
/// The first non-integer aborts with its index and offending value; that
/// error is the observable the integrality probe watches for.
pub fn extract_weighted(series: &FormalSeries, weights: &[Int]) -> Result<Vec<Int>> {
    assert!(
        weights.len() > series.order(),
        "need a weight for every coefficient: {} weights for order {}",
        weights.len(),
        series.order()
    );
    let mut out = Vec::with_capacity(series.order() + 1);
    for (n, c) in series.coeffs().iter().enumerate() {
        let v = c * Rat::from_integer(weights[n].clone());
        if !is_integer(&v) {
            return Err(Error::IntegralityViolation { index: n, value: v });
        }
        out.push(v.numer().clone());
    }
    Ok(out)
}

/// Bell values b_level(0..=order) by direct series exponentiation.
pub fn oracle_bell(level: u32, order: usize) -> Result<Vec<Int>> {
    oracle_sequence(&HypergeomSpec::all_ones(level), order)
}

/// The integer sequence exp(F - 1) generates under the parameter list's
/// weights. Away from all-ones parameter lists integrality is only
/// conjectural, so the violation error is a legitimate outcome, not a bug.
pub fn oracle_sequence(spec: &HypergeomSpec, order: usize) -> Result<Vec<Int>> {
    let f = hypergeom_series(spec, order).zero_prefix(0);
    let g = f.exp()?;
    extract_weighted(&g, &spec.weights(order))
}

/// Stirling column `blocks` for n = 0..=order via (F - 1)^blocks / blocks!.
pub fn oracle_stirling(level: u32, blocks: usize, order: usize) -> Result<Vec<Int>> {
    oracle_restricted_stirling(level, 0, blocks, order)
}

/// Restricted Bell values by zeroing the first `restriction + 1` series terms
/// (constant included) before exponentiating.
pub fn oracle_restricted(level: u32, restriction: usize, order: usize) -> Result<Vec<Int>> {
    let spec = HypergeomSpec::all_ones(level);
    let f = hypergeom_series(&spec, order).zero_prefix(restriction);
    let g = f.exp()?;
    extract_weighted(&g, &spec.weights(order))
}

/// Restricted Stirling column via g^blocks / blocks! where g is the series
/// with its first `restriction + 1` terms removed.
pub fn oracle_restricted_stirling(
    level: u32,
    restriction: usize,
    blocks: usize,
    order: usize,
) -> Result<Vec<Int>> {
    let spec = HypergeomSpec::all_ones(level);
    let g = hypergeom_series(&spec, order).zero_prefix(restriction);
    let powed = g
        .pow(blocks)
        .scale(&Rat::new(Int::one(), factorial(blocks)));
    extract_weighted(&powed, &spec.weights(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ints(vals: &[i64]) -> Vec<Int> {
        vals.iter().map(|&v| Int::from(v)).collect()
    }

    #[test]
    fn hypergeom_coefficients() {
        let s = hypergeom_series(&HypergeomSpec::all_ones(1), 3);
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 4), rat(1, 36)]);
        let e = hypergeom_series(&HypergeomSpec::all_ones(0), 4);
        assert_eq!(e.coeff(3), &rat(1, 6));
        assert_eq!(e.coeff(4), &rat(1, 24));
        let f12 = hypergeom_series(&HypergeomSpec::new(vec![1, 2]).unwrap(), 2);
        assert_eq!(f12.coeffs(), &[rat(1, 1), rat(1, 2), rat(1, 24)]);
    }

    #[test]
    fn spec_rejects_zero_param() {
        assert!(HypergeomSpec::new(vec![1, 0]).is_err());
    }

    #[test]
    fn product_of_exponentials() {
        let e = hypergeom_series(&HypergeomSpec::all_ones(0), 3);
        let sq = e.mul(&e).unwrap();
        assert_eq!(sq.coeffs(), &[rat(1, 1), rat(2, 1), rat(2, 1), rat(4, 3)]);
    }

    #[test]
    fn product_requires_equal_orders() {
        let a = FormalSeries::zeros(3);
        let b = FormalSeries::zeros(4);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { left: 3, right: 4 })));
    }

    #[test]
    fn exp_of_shifted_exponential_gives_bell_row() {
        let f = hypergeom_series(&HypergeomSpec::all_ones(0), 6).zero_prefix(0);
        let g = f.exp().unwrap();
        let weights: Vec<Int> = (0..=6).map(crate::exact::factorial).collect();
        assert_eq!(
            extract_weighted(&g, &weights).unwrap(),
            ints(&[1, 1, 2, 5, 15, 52, 203])
        );
    }

    #[test]
    fn exp_requires_zero_constant() {
        let s = FormalSeries::one(3);
        assert!(matches!(s.exp(), Err(Error::NonzeroConstantTerm { .. })));
    }

    #[test]
    fn log_requires_unit_constant() {
        let s = FormalSeries::zeros(3);
        assert!(matches!(s.log(), Err(Error::ConstantTermNotOne { .. })));
    }

    #[test]
    fn log_inverts_exp() {
        let f = hypergeom_series(&HypergeomSpec::all_ones(1), 8).zero_prefix(0);
        let back = f.exp().unwrap().log().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = hypergeom_series(&HypergeomSpec::all_ones(1), 6);
        let mut by_mul = FormalSeries::one(6);
        for _ in 0..5 {
            by_mul = by_mul.mul(&f).unwrap();
        }
        assert_eq!(f.pow(5), by_mul);
        assert_eq!(f.pow(0), FormalSeries::one(6));
    }

    #[test]
    fn extraction_flags_non_integers() {
        let s = FormalSeries::from_coeffs(vec![rat(1, 2)]);
        match extract_weighted(&s, &[Int::from(1)]) {
            Err(Error::IntegralityViolation { index: 0, value }) => {
                assert_eq!(value, rat(1, 2));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn oracle_bell_level_1() {
        assert_eq!(
            oracle_bell(1, 6).unwrap(),
            ints(&[1, 1, 3, 16, 131, 1496, 22482])
        );
    }

    #[test]
    fn oracle_general_params_1_2() {
        let spec = HypergeomSpec::new(vec![1, 2]).unwrap();
        assert_eq!(
            oracle_sequence(&spec, 7).unwrap(),
            ints(&[1, 1, 4, 37, 641, 18276, 789377, 48681011])
        );
    }

    #[test]
    fn oracle_stirling_columns() {
        assert_eq!(oracle_stirling(1, 2, 5).unwrap(), ints(&[0, 0, 2, 9, 34, 125]));
        assert_eq!(oracle_stirling(2, 3, 5).unwrap(), ints(&[0, 0, 0, 36, 864, 17500]));
    }

    #[test]
    fn oracle_restricted_rows() {
        assert_eq!(
            oracle_restricted(0, 1, 8).unwrap(),
            ints(&[1, 0, 1, 1, 4, 11, 41, 162, 715])
        );
        assert_eq!(
            oracle_restricted(1, 2, 6).unwrap(),
            ints(&[1, 0, 0, 1, 1, 1, 201])
        );
        assert_eq!(
            oracle_restricted(2, 1, 5).unwrap(),
            ints(&[1, 0, 1, 1, 109, 1001])
        );
    }

    #[test]
    fn oracle_restricted_stirling_small() {
        assert_eq!(
            oracle_restricted_stirling(0, 1, 1, 4).unwrap(),
            ints(&[0, 0, 1, 1, 1])
        );
        assert_eq!(
            oracle_restricted_stirling(0, 1, 2, 4).unwrap(),
            ints(&[0, 0, 0, 0, 3])
        );
        assert_eq!(
            oracle_restricted_stirling(1, 0, 2, 5).unwrap(),
            oracle_stirling(1, 2, 5).unwrap()
        );
    }

    #[test]
    fn weights_match_pointwise_products() {
        let spec = HypergeomSpec::new(vec![1, 2]).unwrap();
        let ws = spec.weights(5);
        for (n, w) in ws.iter().enumerate() {
            assert_eq!(w, &spec.weight(n));
        }
        assert_eq!(ws[3], Int::from(864));
    }
}
