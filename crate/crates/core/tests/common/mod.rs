//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use descent::oracle::Permutation;
use descent::{Composition, Element, Partition, Prime, StructureTable};

pub fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

pub fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

/// All coarsenings of `s` obtained by summing runs of adjacent parts.
pub fn coarsenings(s: &[usize]) -> Vec<Vec<usize>> {
    if s.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for take in 1..=s.len() {
        let head: usize = s[..take].iter().sum();
        for mut rest in coarsenings(&s[take..]) {
            rest.insert(0, head);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `n` with no part divisible by `p`, via the product generating function.
pub fn count_no_part_divisible(n: usize, p: usize) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in (1..=n).filter(|k| k % p != 0) {
        for m in part..=n {
            ways[m] += ways[m - part];
        }
    }
    ways[n]
}

pub fn count_all_partitions(n: usize) -> u64 {
    count_no_part_divisible(n, n + 1)
}

/// A permutation of `1..=n` with the given cycle lengths, cycles on consecutive points.
pub fn permutation_of_type(pi: &Partition) -> Permutation {
    let n = pi.n();
    let mut images = vec![0; n];
    let mut start = 0;
    for &l in pi.parts() {
        for k in 0..l {
            images[start + k] = start + (k + 1) % l + 1;
        }
        start += l;
    }
    Permutation::new(&images).unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `σ^(p^a)` where `p^a` is the p-part of the order of `σ`.
pub fn p_regular_power(pi: &Partition, p: usize) -> Partition {
    let order = pi.parts().iter().fold(1, |acc, &l| acc / gcd(acc, l) * l);
    let mut pp = 1;
    while order % (pp * p) == 0 {
        pp *= p;
    }
    permutation_of_type(pi).pow(pp).cycle_type()
}

/// Number of maps `f: {1..n} -> {1..k}` with fibre sizes `q` that are constant on the cycles of `σ`.
pub fn brute_force_character(q: &Composition, pi: &Partition) -> i64 {
    let sigma = permutation_of_type(pi);
    let n = q.n();
    let k = q.len();
    let mut f = vec![0usize; n];
    let mut count = 0;
    loop {
        let mut sizes = vec![0; k];
        for &b in &f {
            sizes[b] += 1;
        }
        if sizes == q.parts() && (1..=n).all(|i| f[sigma.image(i) - 1] == f[i - 1]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Whether `x^m = 0` for some `m <= dim + 1`, by repeated multiplication.
pub fn nilpotent_by_powers(table: &StructureTable, x: &Element) -> bool {
    let mut power = x.clone();
    for _ in 0..=table.dim() {
        if power.is_zero() {
            return true;
        }
        power = table.multiply(&power, x).unwrap();
    }
    power.is_zero()
}

pub fn multinomial(parts: &[usize]) -> i64 {
    let fact = |k: usize| (1..=k as i64).product::<i64>();
    fact(parts.iter().sum()) / parts.iter().map(|&k| fact(k)).product::<i64>()
}
