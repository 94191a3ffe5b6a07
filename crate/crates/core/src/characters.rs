//! Young characters `χ_q`, the homomorphisms `θ: Σ_n → G_n` and
//! `φ: Σ(n,p) → G(n,p)`, and the one-dimensional representations of `Σ(n,p)`.
//!
//! The value of `χ_q` on a permutation of cycle type `π` is the number of
//! tabloids of shape `q` it fixes: the ways of distributing its cycles among
//! the blocks of `q` so that block `i` receives cycles of total length `a_i`.
//! With `m_l` cycles of length `l`, that is
//!
//! ```text
//! χ_q(π) = Σ_{(c_{l,i})} Π_l  m_l! / (c_{l,1}! ... c_{l,s}!)
//! ```
//!
//! over non-negative `c_{l,i}` with `Σ_i c_{l,i} = m_l` and `Σ_l l c_{l,i} = a_i`.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{Element, Ring};
use crate::combinatorics::{self, compositions, p_regular_part, partitions, Composition, Partition};
use crate::error::{check_bound, input, Error, Result};
use crate::field::Prime;
use crate::linalg::{Matrix, Subspace};

/// Largest `n` for which the full character matrix is built.
pub const MAX_CHARACTER_N: usize = 10;

fn multinomial(total: usize, parts: &[usize]) -> i128 {
    let mut acc: i128 = 1;
    let mut placed = 0usize;
    for &k in parts {
        // C(placed + k, k), built incrementally so every step stays integral
        for j in 1..=k {
            acc = acc * (placed + j) as i128 / j as i128;
        }
        placed += k;
    }
    debug_assert_eq!(placed, total);
    acc
}

/// `χ_q(π)`: the number of tabloids of shape `q` fixed by a permutation of cycle type `π`.
pub fn young_character_value(q: &Composition, pi: &Partition) -> Result<i64> {
    if q.n() != pi.n() {
        return input(format!("{q} and {pi} have different sizes"));
    }
    let lengths: Vec<(usize, usize)> = pi.multiplicities().nonzero().collect();
    let mut memo = HashMap::new();
    let value = distribute(&lengths, 0, q.parts().to_vec(), &mut memo);
    i64::try_from(value).map_err(|_| Error::Overflow("character values"))
}

fn distribute(
    lengths: &[(usize, usize)],
    k: usize,
    caps: Vec<usize>,
    memo: &mut HashMap<(usize, Vec<usize>), i128>,
) -> i128 {
    if k == lengths.len() {
        return caps.iter().all(|&c| c == 0) as i128;
    }
    if let Some(&v) = memo.get(&(k, caps.clone())) {
        return v;
    }
    let (l, m) = lengths[k];
    let mut total = 0i128;
    let mut counts = vec![0usize; caps.len()];
    split(l, m, 0, &caps, &mut counts, &mut |counts| {
        let next: Vec<usize> = caps.iter().zip(counts).map(|(&c, &x)| c - l * x).collect();
        let rest = distribute(lengths, k + 1, next, memo);
        if rest != 0 {
            total += multinomial(m, counts) * rest;
        }
    });
    memo.insert((k, caps), total);
    total
}

/// Enumerates `counts` with `Σ counts = remaining` (from block `i` on) and `l * counts[j] <= caps[j]`.
fn split(
    l: usize,
    remaining: usize,
    i: usize,
    caps: &[usize],
    counts: &mut [usize],
    f: &mut dyn FnMut(&[usize]),
) {
    if i == caps.len() {
        if remaining == 0 {
            f(counts);
        }
        return;
    }
    let room: usize = caps[i + 1..].iter().map(|c| c / l).sum();
    let lo = remaining.saturating_sub(room);
    let hi = remaining.min(caps[i] / l);
    for x in lo..=hi {
        counts[i] = x;
        split(l, remaining - x, i + 1, caps, counts, f);
    }
    counts[i] = 0;
}

/// A generalised character of `S_n`: one value per partition (cycle type), in
/// the order of [`partitions`]. When `modulus` is set the values are residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterVector {
    n: usize,
    modulus: Option<Prime>,
    values: Vec<i64>,
}

impl CharacterVector {
    pub fn new(n: usize, modulus: Option<Prime>, values: Vec<i64>) -> Result<Self> {
        let classes = combinatorics::partition_count(n)?;
        if values.len() != classes {
            return input(format!("character of S_{n} needs {classes} values, got {}", values.len()));
        }
        let values = match modulus {
            Some(p) => values.into_iter().map(|v| p.reduce(v) as i64).collect(),
            None => values,
        };
        Ok(CharacterVector { n, modulus, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Option<Prime> {
        self.modulus
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, pi: &Partition) -> Result<i64> {
        let classes = partitions(self.n)?;
        match classes.iter().position(|c| c == pi) {
            Some(k) => Ok(self.values[k]),
            None => input(format!("{pi} is not a partition of {}", self.n)),
        }
    }

    /// Pointwise product of class functions.
    pub fn pointwise_mul(&self, other: &CharacterVector) -> Result<CharacterVector> {
        if self.n != other.n || self.modulus != other.modulus {
            return input("pointwise product of characters of different groups or rings");
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| match self.modulus {
                Some(p) => Ok(p.mul(a as u32, b as u32) as i64),
                None => a.checked_mul(b).ok_or(Error::Overflow("character products")),
            })
            .collect::<Result<_>>()?;
        Ok(CharacterVector { n: self.n, modulus: self.modulus, values })
    }

    /// Reduction of an integer character mod `p`.
    pub fn reduce_mod_p(&self, p: Prime) -> Result<CharacterVector> {
        if self.modulus.is_some() {
            return input("character is already reduced");
        }
        CharacterVector::new(self.n, Some(p), self.values.clone())
    }
}

/// The `2^(n-1) × p(n)` matrix of Young character values `m_{qπ} = χ_q(π)`,
/// rows in canonical composition order, columns in the order of [`partitions`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterMatrix {
    n: usize,
    compositions: Vec<Composition>,
    partitions: Vec<Partition>,
    entries: Vec<Vec<i64>>,
}

impl CharacterMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.compositions
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Row of `χ_q`.
    pub fn row(&self, q: &Composition) -> &[i64] {
        &self.entries[q.index()]
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[k]).collect()
    }

    pub fn rank_mod_p(&self, p: Prime) -> usize {
        self.to_matrix_mod(p).rank()
    }

    fn to_matrix_mod(&self, p: Prime) -> Matrix {
        Matrix::from_rows(&self.entries, self.partitions.len(), p).expect("rectangular matrix")
    }

    /// `θ(x) = Σ x_q χ_q` for an integer element.
    pub fn theta(&self, x: &Element) -> Result<CharacterVector> {
        if x.n() != self.n || x.ring() != Ring::Integers {
            return input("θ takes an integer element of the matching degree");
        }
        let mut values = vec![0i64; self.partitions.len()];
        for &(q, c) in x.indexed_terms() {
            for (v, &m) in values.iter_mut().zip(&self.entries[q]) {
                *v = c
                    .checked_mul(m)
                    .and_then(|t| v.checked_add(t))
                    .ok_or(Error::Overflow("θ values"))?;
            }
        }
        CharacterVector::new(self.n, None, values)
    }

    /// `φ(x)`: `θ` of the integer lift of `x`, reduced mod `p`.
    pub fn phi(&self, x: &Element) -> Result<CharacterVector> {
        let Ring::PrimeField(p) = x.ring() else {
            return input("φ takes an element of Σ(n,p)");
        };
        self.theta(&x.lift())?.reduce_mod_p(p)
    }

    /// `ker φ` as a subspace of coordinate vectors of `Σ(n,p)`.
    pub fn phi_kernel(&self, p: Prime) -> Subspace {
        self.to_matrix_mod(p).transpose().kernel()
    }

    /// CSV with a header row of partitions and one row per composition.
    pub fn to_csv(&self) -> String {
        let quote = |s: String| format!("\"{s}\"");
        let mut out = String::from("composition");
        for pi in &self.partitions {
            out.push(',');
            out.push_str(&quote(pi.to_string()));
        }
        out.push('\n');
        for (q, row) in self.compositions.iter().zip(&self.entries) {
            out.push_str(&quote(q.to_string()));
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

pub fn character_matrix(n: usize) -> Result<CharacterMatrix> {
    check_bound(n, MAX_CHARACTER_N, "the character matrix")?;
    let comps = compositions(n)?;
    let parts = partitions(n)?;
    let entries = comps
        .iter()
        .map(|q| parts.iter().map(|pi| young_character_value(q, pi)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterMatrix { n, compositions: comps, partitions: parts, entries })
}

pub fn rank_mod_p(m: &CharacterMatrix, p: Prime) -> usize {
    m.rank_mod_p(p)
}

/// `θ(x)` for an integer element, building the character matrix on the fly.
pub fn theta(x: &Element) -> Result<CharacterVector> {
    character_matrix(x.n())?.theta(x)
}

/// `φ(x)` for an element of `Σ(n,p)`.
pub fn phi(x: &Element) -> Result<CharacterVector> {
    character_matrix(x.n())?.phi(x)
}

/// The square submatrix `N` on rows `χ_π` for partitions `π` read as
/// compositions, with rows and columns both listed in increasing
/// lexicographic order (`[1^n]` first). Returned with its partition labels.
pub fn triangular_block(n: usize) -> Result<(Vec<Partition>, Vec<Vec<i64>>)> {
    let mut labels = partitions(n)?;
    labels.reverse();
    let block = labels
        .iter()
        .map(|row| {
            let q = Composition::from(row.clone());
            labels.iter().map(|col| young_character_value(&q, col)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((labels, block))
}

/// `N` is lower triangular and its `(π, π)` entry is `t_1! t_2! ... t_n!`
/// (hence also congruent to it mod `p`).
pub fn diagonal_check(n: usize, p: Prime) -> Result<bool> {
    check_bound(n, 9, "the diagonal check")?;
    let (labels, block) = triangular_block(n)?;
    for (i, (pi, row)) in labels.iter().zip(&block).enumerate() {
        if row[i + 1..].iter().any(|&v| v != 0) {
            return Ok(false);
        }
        let t = pi.multiplicities();
        let expected = t.factorial_product().ok_or(Error::Overflow("factorial products"))?;
        if row[i] != expected || p.reduce(row[i]) != t.factorial_product_mod(p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Columns of `M` whose cycle types share a p-regular part are congruent mod `p`.
pub fn brauer_column_check(n: usize, p: Prime) -> Result<bool> {
    check_bound(n, 8, "the Brauer column check")?;
    let m = character_matrix(n)?;
    let regular: Vec<Partition> = m.partitions.iter().map(|pi| p_regular_part(pi, p)).collect();
    let columns: Vec<Vec<u32>> =
        (0..m.partitions.len()).map(|k| m.column(k).into_iter().map(|v| p.reduce(v)).collect()).collect();
    for a in 0..columns.len() {
        for b in a + 1..columns.len() {
            if regular[a] == regular[b] && columns[a] != columns[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The one-dimensional representation `λ_π(x) = φ(x)` evaluated at class `π`,
/// stored as its values on the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleRep {
    pub label: Partition,
    pub values: Vec<u32>,
}

impl IrreducibleRep {
    pub fn evaluate(&self, x: &Element, p: Prime) -> Result<u32> {
        if x.ring() != Ring::PrimeField(p) || x.dim() != self.values.len() {
            return input("element does not belong to the algebra of this representation");
        }
        Ok(x.indexed_terms()
            .iter()
            .fold(0, |acc, &(q, c)| p.add(acc, p.mul(c as u32, self.values[q]))))
    }
}

/// One representation per p-regular partition, in the order of [`partitions`].
pub fn irreducible_reps(n: usize, p: Prime) -> Result<Vec<IrreducibleRep>> {
    check_bound(n, 9, "irreducible representations")?;
    let m = character_matrix(n)?;
    Ok(m.partitions
        .iter()
        .enumerate()
        .filter(|(_, pi)| pi.is_p_regular(p))
        .map(|(k, pi)| IrreducibleRep {
            label: pi.clone(),
            values: m.column(k).into_iter().map(|v| p.reduce(v)).collect(),
        })
        .collect())
}
