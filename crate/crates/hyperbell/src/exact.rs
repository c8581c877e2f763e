//! Exact integer and rational arithmetic plus the small combinatorial
//! primitives everything else is built from.

use std::sync::{LazyLock, Mutex};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always kept reduced.
pub type Rat = num_rational::BigRational;

/// `n!` as a big integer.
pub fn factorial(n: usize) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= i as u64;
    }
    acc
}

/// Rising factorial `(b)_n = b (b+1) ... (b+n-1)`, with `(b)_0 = 1`.
/// `b` must be positive.
pub fn pochhammer(b: u64, n: usize) -> Int {
    assert!(b >= 1, "pochhammer base must be >= 1, got {b}");
    let mut acc = Int::one();
    for i in 0..n as u64 {
        acc *= b + i;
    }
    acc
}

/// `base^exp` by binary exponentiation.
pub fn int_pow(base: &Int, exp: u32) -> Int {
    num_traits::Pow::pow(base, exp)
}

/// `r^exp` for a rational base, exact.
pub fn rat_pow(r: &Rat, exp: u32) -> Rat {
    Rat::new(int_pow(r.numer(), exp), int_pow(r.denom(), exp))
}

/// Quotient of an exactly divisible pair. Panics on a nonzero remainder,
/// which here always means a broken derivation rather than bad input.
pub fn exact_div(num: &Int, den: &Int) -> Int {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "non-exact division: {num} / {den}");
    q
}

/// Rational from an integer pair, for tests and small constants.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Rational with value `int`.
pub fn rat_int(value: Int) -> Rat {
    Rat::from_integer(value)
}

/// True if `r` is an integer (denominator 1 after reduction).
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The integer value of `r`; panics if `r` has a nontrivial denominator.
pub fn rat_to_int(r: &Rat) -> Int {
    assert!(is_integer(r), "expected an integer, got {r}");
    r.numer().clone()
}

// Completed Pascal rows 0..=max built so far. Rows are only ever appended,
// never rewritten, so concurrent callers always read settled values.
static PASCAL: LazyLock<Mutex<Vec<Vec<Int>>>> =
    LazyLock::new(|| Mutex::new(vec![vec![Int::one()]]));

/// Binomial coefficient `C(n, k)`, 0 when `k > n`, from a memoized Pascal
/// table.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut rows = PASCAL.lock().expect("pascal table poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("table seeded with row 0");
        let m = prev.len();
        let mut row = Vec::with_capacity(m + 1);
        row.push(Int::one());
        for j in 1..m {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(Int::one());
        rows.push(row);
    }
    rows[n][k].clone()
}

/// Bit length of the absolute value, the size measure used by resource guards.
pub fn bit_length(v: &Int) -> u64 {
    v.abs().bits()
}
