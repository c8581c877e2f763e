//! Shared helpers for the integration suites, including a brute-force
//! combinatorial route that shares no code with either the recursions or the
//! series oracles: enumerate integer partitions and sum closed multinomial
//! weights over them.
#![allow(dead_code)] // each suite uses its own subset

use hyperbell::exact::{exact_div, factorial, int_pow, Int};
use num_traits::{One, Zero};

pub fn ints(vals: &[i64]) -> Vec<Int> {
    vals.iter().map(|&v| Int::from(v)).collect()
}

/// All partitions of `n` into parts of size at least `min_part`, each as a
/// descending list of parts.
pub fn partitions_min(n: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, min_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (min_part..=remaining.min(max_part)).rev() {
            cur.push(part);
            rec(remaining - part, part, min_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), min_part, &mut Vec::new(), &mut out);
    out
}

/// Sum of M(shape) * W(shape)^level over partition shapes of `n`, where
/// W = n! / prod(part!) counts ordered fillings of the blocks and
/// M = W / prod(multiplicity!) counts set partitions of that shape. Optional
/// filters pin the number of parts and the minimum part size; this expresses
/// every member of the family at once.
pub fn brute_family(level: u32, n: usize, min_part: usize, parts: Option<usize>) -> Int {
    if n == 0 {
        let empty_ok = parts.is_none_or(|l| l == 0);
        return if empty_ok { Int::one() } else { Int::zero() };
    }
    let nf = factorial(n);
    let mut total = Int::zero();
    for shape in partitions_min(n, min_part) {
        if parts.is_some_and(|l| l != shape.len()) {
            continue;
        }
        let mut part_fact = Int::one();
        let mut mult_fact = Int::one();
        let mut run = 0usize;
        for (i, &part) in shape.iter().enumerate() {
            part_fact *= factorial(part);
            if i > 0 && shape[i - 1] == part {
                run += 1;
            } else {
                run = 1;
            }
            mult_fact *= Int::from(run as u64);
        }
        let w = exact_div(&nf, &part_fact);
        let m = exact_div(&w, &mult_fact);
        total += m * int_pow(&w, level);
    }
    total
}

pub fn brute_bell(level: u32, n: usize) -> Int {
    brute_family(level, n, 1, None)
}

pub fn brute_stirling(level: u32, n: usize, blocks: usize) -> Int {
    brute_family(level, n, 1, Some(blocks))
}

pub fn brute_restricted(level: u32, restriction: usize, n: usize) -> Int {
    brute_family(level, n, restriction + 1, None)
}
