//! Recursion-based routes to the level-indexed Bell numbers, the generalized
//! Stirling triangle, and their restricted variants, plus the closed forms
//! and classical cross-checks used to validate them.
//!
//! Throughout, `level` is the number of extra factorial weights in the
//! underlying series (level 0 is the classical Bell/Stirling case), `blocks`
//! is the Stirling column index, and `restriction` is the number of leading
//! series terms removed ahead of exponentiation (at level 0: the largest
//! forbidden block size).

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, exact_div, factorial, int_pow, rat, rat_int, rat_pow, rat_to_int, Int,
};

/// Bell values b(0..) for one level, grown on demand.
///
/// b(0) = 1, b(n+1) = sum_{k=0}^{n} C(n,k) C(n+1,k)^level b(k).
#[derive(Debug, Clone)]
pub struct BellTable {
    level: u32,
    values: Vec<Int>,
}

impl BellTable {
    pub fn new(level: u32) -> Self {
        Self { level, values: vec![Int::one()] }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// b(n), extending the table as needed.
    pub fn value(&mut self, n: usize) -> &Int {
        while self.values.len() <= n {
            let m = self.values.len() - 1;
            let mut sum = Int::zero();
            for (k, b) in self.values.iter().enumerate() {
                sum += binomial(m, k) * int_pow(&binomial(m + 1, k), self.level) * b;
            }
            self.values.push(sum);
        }
        &self.values[n]
    }

    /// b(0..=n_max) as a fresh vector.
    pub fn prefix(&mut self, n_max: usize) -> Vec<Int> {
        self.value(n_max);
        self.values[..=n_max].to_vec()
    }
}

/// Stirling values S(n, l) for one level, stored column-major and grown on
/// demand; column l only ever reads column l-1.
///
/// S(0,0) = 1, S(n,0) = 0 for n > 0, and
/// S(n+1, l) = sum_{k=l-1}^{n} C(n,k) C(n+1,k)^level S(k, l-1).
#[derive(Debug, Clone)]
pub struct StirlingTriangle {
    level: u32,
    // cols[l][n] = S(n, l); every column is kept at the same length.
    cols: Vec<Vec<Int>>,
}

impl StirlingTriangle {
    pub fn new(level: u32) -> Self {
        Self { level, cols: vec![vec![Int::one()]] }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    fn n_cap(&self) -> usize {
        self.cols[0].len() - 1
    }

    fn ensure(&mut self, n: usize, l: usize) {
        // Rows first, ascending column, so each column's new rows can read
        // the already-extended previous column.
        if n > self.n_cap() {
            for li in 0..self.cols.len() {
                for m in self.cols[li].len()..=n {
                    let v = self.cell(m, li);
                    self.cols[li].push(v);
                }
            }
        }
        while self.cols.len() <= l {
            let li = self.cols.len();
            let col: Vec<Int> = (0..=self.n_cap()).map(|m| self.cell(m, li)).collect();
            self.cols.push(col);
        }
    }

    // S(m, li), assuming column li-1 is already filled through row m-1.
    fn cell(&self, m: usize, li: usize) -> Int {
        if li == 0 {
            return if m == 0 { Int::one() } else { Int::zero() };
        }
        if m < li {
            return Int::zero();
        }
        self.sum_step(m, li)
    }

    fn sum_step(&self, m: usize, li: usize) -> Int {
        let prev = &self.cols[li - 1];
        let mut sum = Int::zero();
        for k in (li - 1)..m {
            sum += binomial(m - 1, k) * int_pow(&binomial(m, k), self.level) * &prev[k];
        }
        sum
    }

    /// S(n, l), extending the table as needed; 0 whenever l > n.
    pub fn value(&mut self, n: usize, l: usize) -> Int {
        if l > n {
            return Int::zero();
        }
        self.ensure(n, l);
        self.cols[l][n].clone()
    }

    /// Row n as [S(n,0), S(n,1), ..., S(n,n)]; the leading cell is 1 for
    /// n = 0 and 0 otherwise, so every row sums to the Bell value.
    pub fn row(&mut self, n: usize) -> Vec<Int> {
        self.ensure(n, n);
        (0..=n).map(|l| self.cols[l][n].clone()).collect()
    }
}

/// Restricted Bell values for one (level, restriction) pair, grown on demand.
///
/// b(0) = 1 and b(n+1) = sum_{k=0}^{n-restriction} C(n,k) C(n+1,k)^level b(k)
/// (empty sums giving the boundary zeros b(1..=restriction) = 0).
#[derive(Debug, Clone)]
pub struct RestrictedBellTable {
    level: u32,
    restriction: usize,
    values: Vec<Int>,
}

impl RestrictedBellTable {
    pub fn new(level: u32, restriction: usize) -> Self {
        Self { level, restriction, values: vec![Int::one()] }
    }

    pub fn value(&mut self, n: usize) -> &Int {
        while self.values.len() <= n {
            let m = self.values.len() - 1;
            let mut sum = Int::zero();
            if m >= self.restriction {
                for k in 0..=(m - self.restriction) {
                    sum += binomial(m, k)
                        * int_pow(&binomial(m + 1, k), self.level)
                        * &self.values[k];
                }
            }
            self.values.push(sum);
        }
        &self.values[n]
    }

    pub fn prefix(&mut self, n_max: usize) -> Vec<Int> {
        self.value(n_max);
        self.values[..=n_max].to_vec()
    }
}

// Process-wide memo tables. Entries only ever grow, so concurrent callers
// (for the same key or different keys) always see settled values.
static BELL: LazyLock<Mutex<HashMap<u32, BellTable>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static STIRLING: LazyLock<Mutex<HashMap<u32, StirlingTriangle>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static RESTRICTED: LazyLock<Mutex<HashMap<(u32, usize), RestrictedBellTable>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// b_level(n) via the memoized recursion table.
pub fn extended_bell(level: u32, n: usize) -> Int {
    let mut map = BELL.lock().expect("bell cache poisoned");
    map.entry(level).or_insert_with(|| BellTable::new(level)).value(n).clone()
}

/// b_level(0..=n_max).
pub fn extended_bell_prefix(level: u32, n_max: usize) -> Vec<Int> {
    let mut map = BELL.lock().expect("bell cache poisoned");
    map.entry(level).or_insert_with(|| BellTable::new(level)).prefix(n_max)
}

/// b_level(n) via the alternative recursion
/// (n+1) b(n+1) = sum_{k=0}^{n} C(n+1,k)^(level+1) (n+1-k) b(k),
/// recomputed from scratch so it stays an independent route. The division by
/// n+1 must come out exact; a remainder would mean the recursion is
/// mis-transcribed, so it panics.
pub fn extended_bell_alt(level: u32, n: usize) -> Int {
    let mut values = vec![Int::one()];
    for m in 0..n {
        let mut sum = Int::zero();
        for (k, b) in values.iter().enumerate() {
            sum += int_pow(&binomial(m + 1, k), level + 1) * Int::from((m + 1 - k) as u64) * b;
        }
        values.push(exact_div(&sum, &Int::from((m + 1) as u64)));
    }
    values.pop().expect("seeded with b(0)")
}

/// Closed forms for b_level(n), n in {2, 3, 4}:
/// 1 + 2^L, 1 + 3*3^L + 6^L, 1 + 4*4^L + 3*6^L + 6*12^L + 24^L.
pub fn bell_closed_small(level: u32, n: usize) -> Result<Int> {
    let pw = |base: u64| int_pow(&Int::from(base), level);
    match n {
        2 => Ok(Int::one() + pw(2)),
        3 => Ok(Int::one() + Int::from(3) * pw(3) + pw(6)),
        4 => Ok(Int::one()
            + Int::from(4) * pw(4)
            + Int::from(3) * pw(6)
            + Int::from(6) * pw(12)
            + pw(24)),
        _ => Err(Error::InvalidArgument(format!(
            "closed forms cover n in {{2, 3, 4}}, got n = {n}"
        ))),
    }
}

/// S_level(n, blocks) via the memoized column recursion; 0 when blocks > n.
pub fn stirling_ext(level: u32, n: usize, blocks: usize) -> Int {
    let mut map = STIRLING.lock().expect("stirling cache poisoned");
    map.entry(level).or_insert_with(|| StirlingTriangle::new(level)).value(n, blocks)
}

/// Row n of the triangle: [S(n,0), S(n,1), ..., S(n,n)].
pub fn stirling_row(level: u32, n: usize) -> Vec<Int> {
    let mut map = STIRLING.lock().expect("stirling cache poisoned");
    map.entry(level).or_insert_with(|| StirlingTriangle::new(level)).row(n)
}

/// b_level(restriction; n) via the memoized restricted recursion.
pub fn restricted_bell(level: u32, restriction: usize, n: usize) -> Int {
    let mut map = RESTRICTED.lock().expect("restricted cache poisoned");
    map.entry((level, restriction))
        .or_insert_with(|| RestrictedBellTable::new(level, restriction))
        .value(n)
        .clone()
}

/// b_level(restriction; 0..=n_max).
pub fn restricted_bell_prefix(level: u32, restriction: usize, n_max: usize) -> Vec<Int> {
    let mut map = RESTRICTED.lock().expect("restricted cache poisoned");
    map.entry((level, restriction))
        .or_insert_with(|| RestrictedBellTable::new(level, restriction))
        .prefix(n_max)
}

/// A Bell value unpacked as a polynomial: coefficient k is S_level(n, k), so
/// evaluating at x = 1 recovers b_level(n) (the row-sum law).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgPolynomial {
    level: u32,
    n: usize,
    coeffs: Vec<Int>,
}

impl HgPolynomial {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients for x^1 .. x^n.
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Horner evaluation of sum_k coeffs[k-1] x^k.
    pub fn evaluate(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x
    }
}

/// The degree-n polynomial whose coefficients are Stirling row n. Requires
/// n >= 1; the empty row has no polynomial.
pub fn hg_polynomial(level: u32, n: usize) -> Result<HgPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("polynomial requires n >= 1".into()));
    }
    let mut row = stirling_row(level, n);
    let coeffs = row.split_off(1);
    Ok(HgPolynomial { level, n, coeffs })
}

/// Closed forms for the diagonals S_level(n + offset, n), offset in {0,..,3}.
///
/// All four are evaluated in exact rationals and must collapse to integers;
/// a leftover denominator means the formula is mis-transcribed, so it panics.
pub fn supra_diagonal(level: u32, offset: usize, n: usize) -> Result<Int> {
    if offset > 3 {
        return Err(Error::InvalidArgument(format!(
            "diagonal offset must be in 0..=3, got {offset}"
        )));
    }
    if offset >= 1 && n == 0 {
        return Err(Error::InvalidArgument(
            "diagonal closed forms with offset >= 1 require n >= 1".into(),
        ));
    }
    let ni = n as u64;
    let int = |v: u64| Int::from(v);
    let value = match offset {
        0 => rat_int(int_pow(&factorial(n), level)),
        1 => {
            // n(n+1)/2 * ((n+1)!/2)^level
            let head = rat_int(int(ni) * int(ni + 1)) / rat_int(int(2));
            head * rat_pow(&(rat_int(factorial(n + 1)) / rat_int(int(2))), level)
        }
        2 => {
            // n(n+1)(n+2)/24 * ((n+2)!/2)^level * (3(n-1)/2^level + 4/3^level)
            let head = rat_int(int(ni) * int(ni + 1) * int(ni + 2)) / rat_int(int(24));
            let mid = rat_pow(&(rat_int(factorial(n + 2)) / rat_int(int(2))), level);
            let tail = rat_int(int(3) * (int(ni) - Int::one())) / rat_pow(&rat(2, 1), level)
                + rat(4, 1) / rat_pow(&rat(3, 1), level);
            head * mid * tail
        }
        3 => {
            // n(n+1)(n+2)(n+3)/48 * ((n+3)!/3)^level *
            //   (n^2 (3/8)^level + n (4 (1/4)^level - 3 (3/8)^level)
            //    + 2 (1/8)^level + 2 (3/8)^level - 4 (1/4)^level)
            let head = rat_int(int(ni) * int(ni + 1) * int(ni + 2) * int(ni + 3))
                / rat_int(int(48));
            let mid = rat_pow(&(rat_int(factorial(n + 3)) / rat_int(int(3))), level);
            let p38 = rat_pow(&rat(3, 8), level);
            let p14 = rat_pow(&rat(1, 4), level);
            let p18 = rat_pow(&rat(1, 8), level);
            let tail = rat_int(int(ni) * int(ni)) * &p38
                + rat_int(int(ni)) * (rat(4, 1) * &p14 - rat(3, 1) * &p38)
                + rat(2, 1) * p18
                + rat(2, 1) * p38
                - rat(4, 1) * p14;
            head * mid * tail
        }
        _ => unreachable!(),
    };
    Ok(rat_to_int(&value))
}

/// Classical level-0 Stirling numbers by the alternating binomial sum
/// (1/l!) sum_{k=1}^{l} (-1)^(l-k) C(l,k) k^n. Requires 1 <= blocks <= n.
/// The division by l! must come out exact.
pub fn classical_stirling_sum(n: usize, blocks: usize) -> Result<Int> {
    check_row_column(n, blocks)?;
    let mut sum = Int::zero();
    for k in 1..=blocks {
        let term = binomial(blocks, k) * int_pow(&Int::from(k as u64), n as u32);
        if (blocks - k) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(exact_div(&sum, &factorial(blocks)))
}

/// Classical level-0 Stirling numbers by the Euler operator route: apply
/// x d/dx n times to (1-x)^blocks - 1 (coefficient A_k picks up a factor k
/// per application), evaluate at x = 1, and scale by (-1)^blocks / blocks!.
/// Requires 1 <= blocks <= n; the final division must come out exact.
pub fn euler_operator_stirling(n: usize, blocks: usize) -> Result<Int> {
    check_row_column(n, blocks)?;
    // (1-x)^blocks - 1 = sum_{k=1}^{blocks} (-1)^k C(blocks,k) x^k.
    let mut coeffs: Vec<Int> = (1..=blocks)
        .map(|k| {
            let c = binomial(blocks, k);
            if k % 2 == 0 { c } else { -c }
        })
        .collect();
    for _ in 0..n {
        for (idx, c) in coeffs.iter_mut().enumerate() {
            *c *= (idx + 1) as u64;
        }
    }
    let mut at_one = Int::zero();
    for c in &coeffs {
        at_one += c;
    }
    if blocks % 2 != 0 {
        at_one = -at_one;
    }
    Ok(exact_div(&at_one, &factorial(blocks)))
}

fn check_row_column(n: usize, blocks: usize) -> Result<()> {
    if blocks == 0 || blocks > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= blocks <= n, got n = {n}, blocks = {blocks}"
        )));
    }
    Ok(())
}
