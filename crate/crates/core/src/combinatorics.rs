//! Compositions, partitions and the counting functions built on them.
//!
//! A composition `q = [a_1, ..., a_s]` of `n` is identified with the set of
//! its interior partial sums `{a_1, a_1 + a_2, ...} ⊆ {1, ..., n-1}`. Reading
//! that set as a bitmask (bit `i - 1` for the partial sum `i`) gives the
//! canonical index used throughout the crate for basis ordering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::field::Prime;

/// Largest `n` for which compositions are enumerated (2^(n-1) of them).
pub const MAX_COMPOSITION_N: usize = 16;
/// Largest `n` for which partitions are enumerated.
pub const MAX_PARTITION_N: usize = 30;

/// An ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return input("a composition needs at least one part");
        }
        if parts.contains(&0) {
            return input(format!("composition {parts:?} has a zero part"));
        }
        let n: usize = parts.iter().sum();
        if n > MAX_COMPOSITION_N {
            return input(format!("composition of {n} exceeds n <= {MAX_COMPOSITION_N}"));
        }
        Ok(Composition { parts })
    }

    /// The one-part composition `[n]`.
    pub fn whole(n: usize) -> Result<Self> {
        Composition::new(vec![n])
    }

    /// Inverse of [`Composition::index`].
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_COMPOSITION_N {
            return input(format!("n = {n} outside 1..={MAX_COMPOSITION_N}"));
        }
        if index >= 1 << (n - 1) {
            return input(format!("index {index} out of range for n = {n}"));
        }
        Ok(Composition { parts: parts_from_mask(n, index) })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Canonical index: the interior partial-sum set read as a binary number.
    pub fn index(&self) -> usize {
        let mut mask = 0;
        let mut acc = 0;
        for &a in &self.parts[..self.parts.len() - 1] {
            acc += a;
            mask |= 1 << (acc - 1);
        }
        mask
    }

    /// The underlying partition: parts sorted weakly decreasing.
    pub fn sorted(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Canonical representative of the `≈`-class (decreasing order).
    pub fn class_representative(&self) -> Composition {
        Composition { parts: self.sorted().parts }
    }
}

pub(crate) fn parts_from_mask(n: usize, mask: usize) -> Vec<usize> {
    let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
    let mut last = 0;
    for i in 1..n {
        if mask >> (i - 1) & 1 == 1 {
            parts.push(i - last);
            last = i;
        }
    }
    parts.push(n - last);
    parts
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(q: Composition) -> Self {
        q.parts
    }
}

impl From<Partition> for Composition {
    fn from(pi: Partition) -> Self {
        Composition { parts: pi.parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    write!(f, "[")?;
    for (i, a) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{a}")?;
    }
    write!(f, "]")
}

impl std::str::FromStr for Composition {
    type Err = Error;

    /// Parses comma-separated parts, optionally bracketed: `2,1,1` or `[2,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Input(format!("malformed composition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return input(format!("partition {parts:?} must have positive parts"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return input(format!("partition {parts:?} is not weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn multiplicities(&self) -> MultiplicityVector {
        MultiplicityVector::count(&self.parts)
    }

    /// True iff no part is divisible by `p`.
    pub fn is_p_regular(&self, p: Prime) -> bool {
        self.parts.iter().all(|&a| a % p.get() as usize != 0)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

/// Part multiplicities `t_i` (number of parts equal to `i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    counts: Vec<usize>,
}

impl MultiplicityVector {
    fn count(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut counts = vec![0; n];
        for &a in parts {
            counts[a - 1] += 1;
        }
        MultiplicityVector { counts }
    }

    /// `t_i`; zero for `i` outside `1..=n`.
    pub fn get(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.counts.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Nonzero `(i, t_i)` pairs in increasing `i`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &t)| t > 0).map(|(i, &t)| (i + 1, t))
    }

    pub fn max(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// `t_1! t_2! ... t_n!`, or `None` on overflow.
    pub fn factorial_product(&self) -> Option<i64> {
        self.counts.iter().try_fold(1i64, |acc, &t| acc.checked_mul(factorial(t)?))
    }

    /// `t_1! ... t_n!` reduced mod `p`.
    pub fn factorial_product_mod(&self, p: Prime) -> u32 {
        self.counts.iter().fold(1 % p.get(), |acc, &t| {
            (1..=t).fold(acc, |a, k| p.mul(a, (k % p.get() as usize) as u32))
        })
    }
}

pub(crate) fn factorial(k: usize) -> Option<i64> {
    (1..=k as i64).try_fold(1i64, |acc, x| acc.checked_mul(x))
}

/// All `2^(n-1)` compositions of `n` in canonical index order.
pub fn compositions(n: usize) -> Result<Vec<Composition>> {
    if n == 0 || n > MAX_COMPOSITION_N {
        return input(format!("compositions need 1 <= n <= {MAX_COMPOSITION_N}, got {n}"));
    }
    Ok((0..1usize << (n - 1))
        .map(|mask| Composition { parts: parts_from_mask(n, mask) })
        .collect())
}

/// All partitions of `n`, lexicographically descending (`[n]` first, `[1^n]` last).
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > MAX_PARTITION_N {
        return input(format!("partitions need 1 <= n <= {MAX_PARTITION_N}, got {n}"));
    }
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for a in (1..=rem.min(max)).rev() {
            cur.push(a);
            rec(rem - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

fn same_n(q: &Composition, r: &Composition) -> Result<()> {
    if q.n() != r.n() {
        return input(format!("{q} and {r} are compositions of different integers"));
    }
    Ok(())
}

/// `q ≈ r`: the two compositions differ only in the order of their parts.
pub fn equivalent(q: &Composition, r: &Composition) -> Result<bool> {
    same_n(q, r)?;
    Ok(q.sorted() == r.sorted())
}

/// `r ⪯ q`: `q` is obtained from `r` by summing runs of adjacent parts.
pub fn precedes(r: &Composition, q: &Composition) -> Result<bool> {
    same_n(q, r)?;
    Ok(q.index() & !r.index() == 0)
}

pub fn multiplicities(q: &Composition) -> MultiplicityVector {
    MultiplicityVector::count(&q.parts)
}

/// Cycle type of the p-regular part: each part `p^a * m` (`p ∤ m`) becomes `p^a` parts `m`.
pub fn p_regular_part(pi: &Partition, p: Prime) -> Partition {
    let p = p.get() as usize;
    let mut parts = Vec::with_capacity(pi.n());
    for &l in &pi.parts {
        let (mut m, mut copies) = (l, 1);
        while m % p == 0 {
            m /= p;
            copies *= p;
        }
        parts.extend(std::iter::repeat_n(m, copies));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition { parts }
}

/// `p(n)`, the number of partitions of `n`.
pub fn partition_count(n: usize) -> Result<usize> {
    Ok(partitions(n)?.len())
}

/// `g(n, p)`: the number of p-regular partitions of `n` (no part divisible by `p`),
/// equivalently the number of classes of p-regular elements of `S_n`.
pub fn count_p_regular(n: usize, p: Prime) -> Result<usize> {
    Ok(partitions(n)?.iter().filter(|pi| pi.is_p_regular(p)).count())
}

/// Number of partitions of `n` in which some part occurs at least `p` times.
pub fn count_high_multiplicity(n: usize, p: Prime) -> Result<usize> {
    let p = p.get() as usize;
    Ok(partitions(n)?.iter().filter(|pi| pi.multiplicities().max() >= p).count())
}
