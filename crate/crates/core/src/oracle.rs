//! Brute-force ground truth from the symmetric group.
//!
//! Permutations of `{1..n}` are grouped by signature (the sign of
//! `(i+1)^σ - i^σ` for each `i`). Multiplying class sums in the group algebra
//! and regrouping by signature gives structure constants that owe nothing to
//! the contingency-matrix rule; [`compare`] checks the two against each other.
//!
//! The dictionary between signatures and compositions is not fixed a priori.
//! [`Convention::calibrate`] tries every combination of action order and
//! descent sign and keeps the unique one under which `B_[2,2] B_[2,1,1]`
//! comes out as `B_[2,1,1] + B_[1,1,2] + 2 B_[1,1,1,1]`.

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{Element, Ring, StructureTable};
use crate::combinatorics::{parts_from_mask, Composition, Partition};
use crate::error::{check_bound, input, Error, Result};

/// Largest `n` for which the oracle runs ((n!)^2 group products).
pub const MAX_ORACLE_N: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A permutation in image form: `images[i-1] = i^σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// From 1-indexed image form, e.g. `[1,3,4,2]`.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in images {
            if x == 0 || x > n || seen[x] {
                return input(format!("{images:?} is not a permutation of 1..={n}"));
            }
            seen[x] = true;
        }
        if n > u8::MAX as usize {
            return input("permutation too large");
        }
        Ok(Permutation { images: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `i^σ` for `1 <= i <= n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// Image form, 1-indexed.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `στ` acting left to right: `i^(στ) = (i^σ)^τ`.
    pub fn then(&self, tau: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| tau.images[x as usize]).collect() }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        (0..k).fold(Permutation::identity(self.n()), |acc, _| acc.then(self))
    }

    /// Bit `i-1` is set iff `(i+1)^σ < i^σ`.
    pub fn minus_mask(&self) -> usize {
        self.images.windows(2).enumerate().filter(|(_, w)| w[1] < w[0]).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            let (mut i, mut len) = (start, 0);
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lengths).expect("cycle lengths form a partition")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for x in self.images() {
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// The signature `x_1 ... x_{n-1}` of `σ`.
pub fn signature(sigma: &Permutation) -> Result<Vec<Sign>> {
    if sigma.n() < 2 {
        return input("signatures need n >= 2");
    }
    Ok(sigma
        .images
        .windows(2)
        .map(|w| if w[1] > w[0] { Sign::Plus } else { Sign::Minus })
        .collect())
}

fn signature_from_minus_mask(n: usize, mask: usize) -> Vec<Sign> {
    (0..n - 1).map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect()
}

fn minus_mask_of(signature: &[Sign]) -> usize {
    signature.iter().enumerate().filter(|(_, &s)| s == Sign::Minus).fold(0, |m, (i, _)| m | 1 << i)
}

/// All permutations of `1..=n` in lexicographic image order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation { images: cur.clone() });
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// The sum of all permutations with one signature.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureClassSum {
    pub signature: Vec<Sign>,
    pub members: Vec<Permutation>,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

/// All `2^(n-1)` signature classes, ordered by the binary number whose bit `i-1` marks `x_i = -`.
pub fn class_sums(n: usize) -> Result<Vec<SignatureClassSum>> {
    check_bound(n, MAX_ORACLE_N, "signature class enumeration")?;
    if n < 2 {
        return input("signature classes need n >= 2");
    }
    let mut classes: Vec<SignatureClassSum> = (0..1usize << (n - 1))
        .map(|m| SignatureClassSum { signature: signature_from_minus_mask(n, m), members: Vec::new() })
        .collect();
    for sigma in all_permutations(n) {
        classes[sigma.minus_mask()].members.push(sigma);
    }
    Ok(classes)
}

/// `A_ε A_η` expanded in the group algebra and regrouped by signature.
///
/// Fails if two permutations with the same signature receive different
/// coefficients, i.e. the product is not a combination of class sums.
pub fn oracle_product(eps: &[Sign], eta: &[Sign], n: usize) -> Result<BTreeMap<Vec<Sign>, u64>> {
    if eps.len() + 1 != n || eta.len() + 1 != n {
        return input(format!("signatures must have length {}", n.saturating_sub(1)));
    }
    let classes = class_sums(n)?;
    let left = &classes[minus_mask_of(eps)].members;
    let right = &classes[minus_mask_of(eta)].members;
    let mut coeff: BTreeMap<Permutation, u64> = BTreeMap::new();
    for sigma in left {
        for tau in right {
            *coeff.entry(sigma.then(tau)).or_insert(0) += 1;
        }
    }
    let mut out = BTreeMap::new();
    for class in &classes {
        let values: Vec<u64> = class.members.iter().map(|g| coeff.get(g).copied().unwrap_or(0)).collect();
        if values.iter().any(|&v| v != values[0]) {
            return Err(Error::Oracle(format!(
                "product of classes {} and {} is not constant on class {}",
                fmt_sig(eps),
                fmt_sig(eta),
                fmt_sig(&class.signature)
            )));
        }
        if values[0] != 0 {
            out.insert(class.signature.clone(), values[0]);
        }
    }
    Ok(out)
}

fn fmt_sig(s: &[Sign]) -> String {
    s.iter().map(Sign::to_string).collect()
}

/// Order in which a product `στ` of permutations acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    /// `i^(στ) = (i^σ)^τ`
    LeftToRight,
    /// `(στ)(i) = σ(τ(i))`
    RightToLeft,
}

/// Dictionary between signatures and the B-basis: `B_q` is the sum of the
/// classes whose `descent_sign` positions all lie in the partial-sum set of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub action: Action,
    pub descent_sign: Sign,
}

impl Convention {
    const CANDIDATES: [Convention; 4] = [
        Convention { action: Action::LeftToRight, descent_sign: Sign::Minus },
        Convention { action: Action::LeftToRight, descent_sign: Sign::Plus },
        Convention { action: Action::RightToLeft, descent_sign: Sign::Minus },
        Convention { action: Action::RightToLeft, descent_sign: Sign::Plus },
    ];

    /// The unique candidate reproducing `B_[2,2] B_[2,1,1] = B_[2,1,1] + B_[1,1,2] + 2 B_[1,1,1,1]`.
    pub fn calibrate() -> Result<Convention> {
        let c = |p: &[usize]| Composition::new(p.to_vec()).expect("valid composition");
        let anchor: Vec<(usize, i64)> = {
            let mut v = vec![(c(&[2, 1, 1]).index(), 1), (c(&[1, 1, 2]).index(), 1), (c(&[1, 1, 1, 1]).index(), 2)];
            v.sort_unstable();
            v
        };
        let mut hits = Vec::new();
        for conv in Convention::CANDIDATES {
            let oracle = ClassAlgebra::build(4, conv)?;
            if oracle.b_product(c(&[2, 2]).index(), c(&[2, 1, 1]).index()) == anchor {
                hits.push(conv);
            }
        }
        match hits.as_slice() {
            [only] => Ok(*only),
            _ => Err(Error::Oracle(format!("{} conventions reproduce the anchor product", hits.len()))),
        }
    }

    fn compose(self, sigma: &[u8], tau: &[u8], out: &mut [u8]) {
        match self.action {
            Action::LeftToRight => out.iter_mut().zip(sigma).for_each(|(o, &s)| *o = tau[s as usize]),
            Action::RightToLeft => out.iter_mut().zip(tau).for_each(|(o, &t)| *o = sigma[t as usize]),
        }
    }

    fn class_of(self, perm: &Permutation) -> usize {
        let full = (1usize << (perm.n() - 1)) - 1;
        match self.descent_sign {
            Sign::Minus => perm.minus_mask(),
            Sign::Plus => full & !perm.minus_mask(),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let action = match self.action {
            Action::LeftToRight => "i^(st) = (i^s)^t",
            Action::RightToLeft => "(st)(i) = s(t(i))",
        };
        write!(
            f,
            "{action}; B_q sums the classes whose '{}' positions lie in the partial-sum set of q",
            self.descent_sign
        )
    }
}

/// All class-sum structure constants of `Σ_n` inside the group algebra.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    n: usize,
    convention: Convention,
    // constants[(e * d + h) * d + z]: coefficient of class z in A_e A_h (classes indexed by `Convention::class_of`)
    constants: Vec<u64>,
}

impl ClassAlgebra {
    /// Multiplies every pair of permutations once, checking that each class
    /// product is constant on every class.
    pub fn build(n: usize, convention: Convention) -> Result<Self> {
        check_bound(n, MAX_ORACLE_N, "the group oracle")?;
        if n < 2 {
            return input("the group oracle needs n >= 2");
        }
        let perms = all_permutations(n);
        let d = 1usize << (n - 1);
        let class: Vec<usize> = perms.iter().map(|g| convention.class_of(g)).collect();
        let base = n.pow(n as u32);
        let code = |img: &[u8]| img.iter().rev().fold(0usize, |acc, &x| acc * n + x as usize);
        let mut rank_of = vec![u32::MAX; base];
        for (k, g) in perms.iter().enumerate() {
            rank_of[code(&g.images)] = k as u32;
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); d];
        for (k, &c) in class.iter().enumerate() {
            members[c].push(k);
        }

        let rows = (0..d)
            .into_par_iter()
            .map(|e| {
                // coef[h * n! + rank]: coefficient of a permutation in A_e A_h
                let mut coef = vec![0u32; d * perms.len()];
                let mut out = vec![0u8; n];
                for &s in &members[e] {
                    for (t, tau) in perms.iter().enumerate() {
                        convention.compose(&perms[s].images, &tau.images, &mut out);
                        coef[class[t] * perms.len() + rank_of[code(&out)] as usize] += 1;
                    }
                }
                let mut row = vec![0u64; d * d];
                for h in 0..d {
                    let block = &coef[h * perms.len()..(h + 1) * perms.len()];
                    for z in 0..d {
                        let first = block[members[z][0]];
                        if members[z].iter().any(|&k| block[k] != first) {
                            return Err(Error::Oracle(format!(
                                "product of classes {e} and {h} is not constant on class {z}"
                            )));
                        }
                        row[h * d + z] = first as u64;
                    }
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassAlgebra { n, convention, constants: rows.concat() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// `B_q B_r` in the B-basis, from `B_q = Σ_{ε ⊆ S(q)} A_ε` and Möbius inversion.
    pub fn b_product(&self, q: usize, r: usize) -> Vec<(usize, i64)> {
        let d = 1usize << (self.n - 1);
        let mut a = vec![0i64; d];
        for e in (0..d).filter(|e| e & !q == 0) {
            for h in (0..d).filter(|h| h & !r == 0) {
                let block = &self.constants[(e * d + h) * d..(e * d + h + 1) * d];
                for (acc, &c) in a.iter_mut().zip(block) {
                    *acc += c as i64;
                }
            }
        }
        // a[z] = Σ_{S ⊇ z} b[S]; invert over supersets
        for bit in 0..self.n - 1 {
            for m in 0..d {
                if m >> bit & 1 == 0 {
                    a[m] -= a[m | 1 << bit];
                }
            }
        }
        a.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
    }
}

/// Outcome for one ordered pair of basis elements.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub q: Composition,
    pub r: Composition,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub convention: String,
    pub pairs_checked: usize,
    pub mismatches: usize,
    pub pairs: Vec<PairReport>,
}

impl OracleReport {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares the integer structure table against the group oracle on the given index pairs.
pub fn compare(table: &StructureTable, pairs: &[(usize, usize)]) -> Result<OracleReport> {
    if table.ring() != Ring::Integers {
        return input("the oracle compares integer structure tables");
    }
    let n = table.n();
    let convention = Convention::calibrate()?;
    let oracle = ClassAlgebra::build(n, convention)?;
    let mut reports = Vec::with_capacity(pairs.len());
    for &(q, r) in pairs {
        if q >= table.dim() || r >= table.dim() {
            return input(format!("pair ({q}, {r}) out of range"));
        }
        let expected = Element::from_indexed(n, Ring::Integers, oracle.b_product(q, r))?;
        let got = table.product(q, r);
        let matches = &expected == got;
        reports.push(PairReport {
            q: Composition::new(parts_from_mask(n, q))?,
            r: Composition::new(parts_from_mask(n, r))?,
            matches,
            oracle: (!matches).then(|| expected.clone()),
            table: (!matches).then(|| got.clone()),
        });
    }
    let mismatches = reports.iter().filter(|p| !p.matches).count();
    Ok(OracleReport { n, convention: convention.to_string(), pairs_checked: reports.len(), mismatches, pairs: reports })
}

/// Every ordered pair of basis indices.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let d = 1usize << (n - 1);
    (0..d).flat_map(|q| (0..d).map(move |r| (q, r))).collect()
}

/// `count` pairs drawn uniformly with a fixed seed.
pub fn sampled_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    let d = 1usize << (n - 1);
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect()
}
