//! Certified rational enclosures for the analytic side of the story: sums of
//! the integer families weighted back into convergent series, compared against
//! exponentials of series values at z = 1.
//!
//! Everything here returns two-sided bounds computed in exact rational
//! arithmetic. No floating point is involved, so an enclosure is a proof that
//! the value lies in the interval, with explicit tail bounds for every
//! truncation.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int_pow, rat, rat_pow, Int, Rat};
use crate::sequences::extended_bell_prefix;
use crate::series::{hypergeom_series, HypergeomSpec};

/// How hard numeric routines are allowed to work: `terms` caps the number of
/// summands taken from the integer families, while `tol` drives every
/// auxiliary convergent series (constants, exponentials, tail extensions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionBudget {
    terms: usize,
    tol: Rat,
}

impl PrecisionBudget {
    pub fn new(terms: usize, tol: Rat) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidArgument("term budget must be at least 1".into()));
        }
        if tol <= Rat::zero() {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(Self { terms, tol })
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn tol(&self) -> &Rat {
        &self.tol
    }
}

/// A closed interval [lo, hi] certified to contain the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxValue {
    lo: Rat,
    hi: Rat,
}

impl ApproxValue {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "enclosure ends out of order");
        Self { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.hi + &self.lo) / Rat::from_integer(Int::from(2))
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn shift_down_one(&self) -> Self {
        let one = Rat::one();
        Self::new(&self.lo - &one, &self.hi - &one)
    }

    fn mul_nonneg(&self, other: &Self) -> Self {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Self::new(&self.lo * &other.lo, &self.hi * &other.hi)
    }
}

/// Enclose Euler's number by partial sums of 1/k!; the tail past k is below
/// 1/(k! * k).
pub fn e_enclosure(tol: &Rat) -> ApproxValue {
    assert!(tol > &Rat::zero());
    let mut k: u64 = 2;
    let mut fact = Int::from(2);
    let mut s = rat(5, 2);
    loop {
        let bound = Rat::new(Int::one(), &fact * Int::from(k));
        if &bound < tol {
            return ApproxValue::new(s.clone(), s + bound);
        }
        k += 1;
        fact *= Int::from(k);
        s += Rat::new(Int::one(), fact.clone());
    }
}

/// Enclose exp(x) for x >= 0 by its Taylor series. Terms are summed until the
/// step ratio x/(k+1) drops to 1/2 or less; from there the tail is dominated
/// by a geometric series, so it is below twice the first omitted term.
pub fn exp_enclosure(x: &Rat, tol: &Rat) -> ApproxValue {
    assert!(!x.is_negative(), "argument must be nonnegative");
    assert!(tol > &Rat::zero());
    let mut s = Rat::one();
    let mut t = Rat::one();
    let mut k: u64 = 0;
    loop {
        let next = &t * x / Rat::from_integer(Int::from(k + 1));
        let doubled = &next + &next;
        if doubled <= t && &doubled < tol {
            return ApproxValue::new(s.clone(), s + doubled);
        }
        s += &next;
        t = next;
        k += 1;
        assert!(k < 100_000, "exp series failed to stabilize");
    }
}

/// Evaluate the weighted series sum_n 1/w_n at z = 1, with every parameter of
/// `spec` increased by `shift` first. Term ratios are at most 1/(n+1), so once
/// past n = 1 the tail is below twice the first omitted term.
///
/// With the empty parameter list this encloses e for any shift; parameter
/// lists (1) and (2) at shift 0 give the modified Bessel values I_0(2) and
/// I_1(2).
pub fn eval_hypergeom(spec: &HypergeomSpec, shift: u64, budget: &PrecisionBudget) -> ApproxValue {
    let shifted = spec.shifted(shift);
    let tol = budget.tol();
    let mut s = Rat::one();
    let mut t = Rat::one();
    let mut n: u64 = 0;
    loop {
        let mut step = Int::from(n + 1);
        for &k in shifted.params() {
            step *= Int::from(k + n);
        }
        let next = &t / Rat::from_integer(step);
        let doubled = &next + &next;
        if n >= 1 && &doubled < tol {
            return ApproxValue::new(s.clone(), s + doubled);
        }
        s += &next;
        t = next;
        n += 1;
        assert!(n < 100_000, "series failed to stabilize");
    }
}

/// Enclose the n-th plain Bell number through the averaged moment sum
/// (1/e) sum_k k^n / k!. The cutoff starts at max(3n, 20) and is extended
/// until the certified tail is below the budget tolerance.
pub fn dobinski_enclosure(n: usize, budget: &PrecisionBudget) -> ApproxValue {
    let target = budget.tol();
    let mut cutoff = (3 * n).max(20) as u64;
    let mut fact = Int::one();
    let mut s = Rat::zero();
    for k in 0..=cutoff {
        if k > 0 {
            fact *= Int::from(k);
        }
        s += Rat::new(int_pow(&Int::from(k), n as u32), fact.clone());
    }
    // Term ratio (1 + 1/k)^n / (k + 1) decreases in k; once it reaches 1/2
    // the tail is below twice the first omitted term.
    let tail = loop {
        let next_fact = &fact * Int::from(cutoff + 1);
        let next = Rat::new(int_pow(&Int::from(cutoff + 1), n as u32), next_fact.clone());
        let ratio_num = int_pow(&Int::from(cutoff + 2), n as u32);
        let ratio_den = int_pow(&Int::from(cutoff + 1), n as u32) * Int::from(cutoff + 2);
        let halved = Rat::new(ratio_num, ratio_den) <= rat(1, 2);
        let doubled = &next + &next;
        if halved && &doubled + &doubled < *target {
            break doubled;
        }
        cutoff += 1;
        fact = next_fact;
        s += next;
        assert!(cutoff < 10_000_000, "moment sum failed to stabilize");
    };
    let upper = &s + &tail;
    let tol_e = target / (&upper + Rat::one());
    let e = e_enclosure(&tol_e);
    ApproxValue::new(&s / e.hi(), upper / e.lo())
}

/// The unique integer inside the moment-sum enclosure, or an error carrying
/// the achieved width when the enclosure is too wide to pin one down.
pub fn dobinski_bell(n: usize, budget: &PrecisionBudget) -> Result<Int> {
    let enc = dobinski_enclosure(n, budget);
    let width = enc.width();
    if width >= rat(1, 2) {
        return Err(Error::InsufficientPrecision { width });
    }
    let candidate = enc.hi().floor();
    assert!(&candidate >= enc.lo(), "enclosure excludes every integer");
    Ok(candidate.to_integer())
}

/// The seven summation identities the CLI and the acceptance suite exercise.
/// Plain tags compare sum_n b(n)/w_n with exp(F(1) - 1); derivative tags
/// compare sum_n n b(n)/w_n with F'(1) exp(F(1) - 1), where F'(1) is the
/// series value with every parameter raised by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityTag {
    L0First,
    L0Second,
    L1First,
    L1Second,
    L2First,
    L2Second,
    F2General,
}

impl IdentityTag {
    pub const ALL: [Self; 7] = [
        Self::L0First,
        Self::L0Second,
        Self::L1First,
        Self::L1Second,
        Self::L2First,
        Self::L2Second,
        Self::F2General,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::L0First => "L0-first",
            Self::L0Second => "L0-second",
            Self::L1First => "L1-first",
            Self::L1Second => "L1-second",
            Self::L2First => "L2-first",
            Self::L2Second => "L2-second",
            Self::F2General => "F2-general",
        }
    }

    /// The parameter list whose weights appear in this identity's sum.
    pub fn spec(self) -> HypergeomSpec {
        match self {
            Self::L0First | Self::L0Second => HypergeomSpec::all_ones(0),
            Self::L1First | Self::L1Second => HypergeomSpec::all_ones(1),
            Self::L2First | Self::L2Second => HypergeomSpec::all_ones(2),
            Self::F2General => HypergeomSpec::new(vec![1, 2]).expect("static parameters are valid"),
        }
    }

    fn derivative_kind(self) -> bool {
        matches!(self, Self::L0Second | Self::L1Second | Self::L2Second)
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity tag '{s}'")))
    }
}

/// Outcome of checking one identity: certified enclosures for both sides,
/// whether they overlap, and the width of their convex hull.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub tag: IdentityTag,
    pub lhs: ApproxValue,
    pub rhs: ApproxValue,
    pub overlap: bool,
    pub gap: Rat,
}

/// Check one identity under the given budget. The left side truncates the
/// weighted sum after `terms` summands and attaches a rigorous tail bound;
/// the right side is evaluated to within the budget tolerance. A consistent
/// implementation must produce overlapping enclosures.
pub fn check_identity(tag: IdentityTag, budget: &PrecisionBudget) -> IdentityReport {
    let spec = tag.spec();
    let lhs = if tag.derivative_kind() {
        lhs_derivative(&spec, budget.terms())
    } else {
        lhs_plain(tag, &spec, budget.terms())
    };

    let sub_tol = budget.tol() / Rat::from_integer(Int::from(64));
    let aux = PrecisionBudget::new(budget.terms(), sub_tol.clone())
        .expect("scaled tolerance stays positive");
    let value = eval_hypergeom(&spec, 0, &aux);
    let arg = value.shift_down_one();
    assert!(!arg.lo().is_negative(), "series value at 1 is always above 1");
    let expd = ApproxValue::new(
        exp_enclosure(arg.lo(), &sub_tol).lo,
        exp_enclosure(arg.hi(), &sub_tol).hi,
    );
    let rhs = if tag.derivative_kind() {
        eval_hypergeom(&spec, 1, &aux).mul_nonneg(&expd)
    } else {
        expd
    };

    let overlap = lhs.overlaps(&rhs);
    let hull_hi = lhs.hi().max(rhs.hi());
    let hull_lo = lhs.lo().min(rhs.lo());
    let gap = hull_hi - hull_lo;
    IdentityReport { tag, lhs, rhs, overlap, gap }
}

fn lhs_plain(tag: IdentityTag, spec: &HypergeomSpec, terms: usize) -> ApproxValue {
    let order = terms - 1;
    let partial: Rat = if tag == IdentityTag::F2General {
        // General parameters carry no integrality guarantee, so the summands
        // are taken straight from the exponentiated series coefficients,
        // which equal value(n)/w_n by definition.
        let g = hypergeom_series(spec, order)
            .zero_prefix(0)
            .exp()
            .expect("constant term was zeroed");
        g.coeffs().iter().sum()
    } else {
        let b = extended_bell_prefix(spec.level() as u32, order);
        let w = spec.weights(order);
        b.iter()
            .zip(&w)
            .map(|(bn, wn)| Rat::new(bn.clone(), wn.clone()))
            .sum()
    };
    let tail = plain_tail_bound(spec, terms);
    ApproxValue::new(partial.clone(), partial + tail)
}

fn lhs_derivative(spec: &HypergeomSpec, terms: usize) -> ApproxValue {
    let b = extended_bell_prefix(spec.level() as u32, terms);
    let w = spec.weights(terms);
    let partial: Rat = (1..=terms)
        .map(|m| Rat::new(Int::from(m as u64) * &b[m], w[m].clone()))
        .sum();
    let tail = derivative_tail_bound(spec, terms + 1);
    ApproxValue::new(partial.clone(), partial + tail)
}

// Fixed slack for the internal upper bounds; these only need to be decent
// overestimates, never tight.
static SLACK: LazyLock<Rat> = LazyLock::new(|| rat(1, 1_000_000_000));
static E_UPPER: LazyLock<Rat> = LazyLock::new(|| e_enclosure(&SLACK).hi().clone());

/// Rational upper bound for sum_n r^n/w_n (or its derivative-weighted twin
/// sum_n n r^(n-1)/w_n) at an integer radius r.
fn series_upper(spec: &HypergeomSpec, r: u64, deriv: bool) -> Rat {
    let rr = Rat::from_integer(Int::from(r));
    let (mut s, mut t, mut n): (Rat, Rat, u64) = if deriv {
        let d1 = Rat::new(Int::one(), spec.weight(1));
        (d1.clone(), d1, 1)
    } else {
        (Rat::one(), Rat::one(), 0)
    };
    loop {
        let mut denom = Int::from(if deriv { n } else { n + 1 });
        for &k in spec.params() {
            denom *= Int::from(k + n);
        }
        let next = &t * &rr / Rat::from_integer(denom);
        let doubled = &next + &next;
        if doubled <= t && &doubled < &*SLACK {
            return s + doubled;
        }
        s += &next;
        t = next;
        n += 1;
        assert!(n < 100_000, "upper bound series failed to stabilize");
    }
}

/// Upper bound for the exponentiated series at radius r, as an integer power
/// of an upper bound for e. Radii whose exponent would be enormous are
/// rejected; small radii always work.
fn growth_upper(spec: &HypergeomSpec, r: u64) -> Option<Rat> {
    let f = series_upper(spec, r, false);
    let exponent = (f - Rat::one()).ceil().to_integer().to_u32()?;
    if exponent > 400 {
        return None;
    }
    Some(rat_pow(&E_UPPER, exponent))
}

/// Bound the tail sum_{n >= start} value(n)/w_n. Coefficient n of the
/// exponentiated series is at most growth(r)/r^n for every radius, so the
/// geometric sum gives growth(r) r^(1-start) / (r - 1); minimized over
/// integer radii.
fn plain_tail_bound(spec: &HypergeomSpec, start: usize) -> Rat {
    radius_minimum(spec, start, false)
}

/// Same game for the derivative-weighted tail sum_{n >= start} n value(n)/w_n,
/// whose coefficients are bounded through growth(r) times the derivative
/// series upper bound.
fn derivative_tail_bound(spec: &HypergeomSpec, start: usize) -> Rat {
    radius_minimum(spec, start, true)
}

fn radius_minimum(spec: &HypergeomSpec, start: usize, deriv: bool) -> Rat {
    let mut best: Option<Rat> = None;
    for r in 2..=24u64 {
        let Some(growth) = growth_upper(spec, r) else { continue };
        let geom = rat_pow(&rat(1, r as i64), start as u32 - 1)
            * rat(r as i64, r as i64 - 1)
            / Rat::from_integer(Int::from(if deriv { 1 } else { r }));
        let mut bound = growth * geom;
        if deriv {
            bound *= series_upper(spec, r, true);
        }
        match &best {
            Some(b) if b <= &bound => {}
            _ => best = Some(bound),
        }
    }
    best.expect("small radii always admit a bound")
}

/// Render `value` as a decimal string with exactly `digits` fractional
/// digits, rounding down (toward minus infinity) or up per `round_up`.
pub fn decimal_string(value: &Rat, digits: usize, round_up: bool) -> String {
    let scale = int_pow(&Int::from(10), digits as u32);
    let scaled = value * Rat::from_integer(scale);
    let n = if round_up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n.is_negative();
    let mut mag = n.magnitude().to_string();
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{mag}");
    }
    if mag.len() < digits + 1 {
        mag = format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag);
    }
    let split = mag.len() - digits;
    format!("{sign}{}.{}", &mag[..split], &mag[split..])
}

/// Parse a plain or scientific decimal literal ("5", "2.5", "1e-30",
/// "-3.25E2") into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidArgument(format!("cannot parse '{s}' as a decimal number"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            if exp.abs() > 100_000 {
                return Err(bad());
            }
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (sign, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: Int = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let mut value = Rat::new(Int::from(sign) * digits, int_pow(&Int::from(10), frac_part.len() as u32));
    let ten = Rat::from_integer(Int::from(10));
    if exponent >= 0 {
        value *= rat_pow(&ten, exponent as u32);
    } else {
        value /= rat_pow(&ten, exponent.unsigned_abs());
    }
    Ok(value)
}
