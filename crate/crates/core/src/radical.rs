//! The Jacobson radical `R(n,p)` of `Σ(n,p)`.
//!
//! The candidate radical is spanned by the differences `B_q - B_r` with
//! `q ≈ r` together with the `B_q` for which `q` has a part repeated at least
//! `p` times. [`ModularAlgebra::certificate`] checks, without assuming that
//! description, that the span is a two-sided ideal, that it is nilpotent, and
//! that the quotient is commutative with no nonzero nilpotents. An ideal with
//! those three properties is exactly the Jacobson radical: it is contained in
//! the radical because it is nilpotent, and contains it because the quotient
//! is semisimple.
//!
//! The module also computes the nilpotency index from ideal powers and checks
//! the `Y_m` filtration used to bound it.

use serde::Serialize;

use crate::algebra::{Element, Ring, StructureTable};
use crate::characters::character_matrix;
use crate::combinatorics::{compositions, count_p_regular, multiplicities, partitions, Composition};
use crate::error::{check_bound, input, Error, Result};
use crate::field::Prime;
use crate::linalg::{Matrix, Subspace};

/// Largest `n` accepted by certification and the nilpotency index.
pub const MAX_CERTIFY_N: usize = 8;
/// Largest `n` for the spanning set and dimension (no structure table needed).
pub const MAX_SPANNING_N: usize = 10;
/// Largest `n` for the filtration and containment checks.
pub const MAX_FILTRATION_N: usize = 7;

/// Spanning set of the radical: first `B_q - B_rep(q)` for every composition
/// `q` that is not its own class representative (canonical order), then
/// `B_rep` for every representative with a part of multiplicity `>= p`
/// (partition order).
pub fn radical_spanning_set(n: usize, p: Prime) -> Result<Vec<Element>> {
    check_bound(n, MAX_SPANNING_N, "the radical spanning set")?;
    let ring = Ring::PrimeField(p);
    let mut out = Vec::new();
    for q in compositions(n)? {
        let rep = q.class_representative();
        if rep != q {
            out.push(Element::basis(&q, ring).sub(&Element::basis(&rep, ring))?);
        }
    }
    for pi in partitions(n)? {
        if pi.multiplicities().max() >= p.get() as usize {
            out.push(Element::basis(&Composition::from(pi), ring));
        }
    }
    Ok(out)
}

fn span_elements(n: usize, p: Prime, elements: &[Element]) -> Result<Subspace> {
    let vectors = elements.iter().map(Element::dense_residues).collect::<Result<Vec<_>>>()?;
    Subspace::span_of(1 << (n - 1), &vectors, p)
}

/// Rank of the spanning set over `F_p`.
pub fn radical_dimension(n: usize, p: Prime) -> Result<usize> {
    Ok(span_elements(n, p, &radical_spanning_set(n, p)?)?.dim())
}

/// `w = B_[1,n-1] - B_[n-1,1]` in `Σ_n`.
pub fn w_element(n: usize) -> Result<Element> {
    if n < 3 {
        return input(format!("w is defined for n >= 3, got {n}"));
    }
    let z = Ring::Integers;
    Element::basis(&Composition::new(vec![1, n - 1])?, z).sub(&Element::basis(&Composition::new(vec![n - 1, 1])?, z))
}

/// `B_[1^a, n-a-b, 1^b]`.
fn d_element(n: usize, a: usize, b: usize) -> Result<Element> {
    let mut parts = vec![1; a];
    parts.push(n - a - b);
    parts.extend(std::iter::repeat_n(1, b));
    Ok(Element::basis(&Composition::new(parts)?, Ring::Integers))
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Right-hand side `Σ_k (-1)^k C(r,k) B_[1^(r-k), n-r, 1^k]` of the expansion of `w^r`.
pub fn w_power_expansion(n: usize, r: usize) -> Result<Element> {
    let mut terms = Vec::new();
    for k in 0..=r {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let d = d_element(n, r - k, k)?;
        terms.push((d.indexed_terms()[0].0, sign * binomial(r as u64, k as u64)));
    }
    Element::from_indexed(n, Ring::Integers, terms)
}

/// Whether `w^r`, computed by multiplication, equals its binomial expansion.
pub fn w_power_identity(n: usize, r: usize) -> Result<bool> {
    if !(3..=9).contains(&n) || r == 0 || r + 2 > n {
        return input(format!("need 3 <= n <= 9 and 1 <= r <= n-2, got n = {n}, r = {r}"));
    }
    Ok(w_element(n)?.pow(r as u32)? == w_power_expansion(n, r)?)
}

/// Structure constants of a finite-dimensional algebra over `F_p`:
/// `e_i e_j = Σ_k constants[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    p: Prime,
    constants: Vec<Vec<Vec<u32>>>,
}

impl StructureConstants {
    pub fn new(p: Prime, constants: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let d = constants.len();
        for row in &constants {
            if row.len() != d || row.iter().any(|v| v.len() != d) {
                return input("structure constants must be a d×d×d array");
            }
            if row.iter().flatten().any(|&c| c >= p.get()) {
                return input(format!("structure constants must be residues mod {p}"));
            }
        }
        Ok(StructureConstants { p, constants })
    }

    pub fn dim(&self) -> usize {
        self.constants.len()
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.constants[i][j] == self.constants[j][i]))
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                let ab = p.mul(a, b);
                for (o, &c) in out.iter_mut().zip(&self.constants[i][j]) {
                    if c != 0 {
                        *o = p.add(*o, p.mul(ab, c));
                    }
                }
            }
        }
        out
    }

    fn power(&self, x: &[u32], k: u64) -> Vec<u32> {
        // k >= 1; no unit is assumed
        let mut acc = x.to_vec();
        for _ in 1..k {
            acc = self.multiply(&acc, x);
        }
        acc
    }
}

/// Nilpotent elements of a commutative algebra over `F_p`.
///
/// In characteristic `p` the Frobenius map `x ↦ x^p` is additive on a
/// commutative algebra and fixes scalars in `F_p`, so it is linear. Every
/// nilpotent element of a `d`-dimensional algebra satisfies `x^(d+1) = 0`, so
/// the nilpotents are exactly the kernel of `x ↦ x^(p^m)` once `p^m > d`.
pub fn nilradical_commutative(algebra: &StructureConstants) -> Result<Subspace> {
    if !algebra.is_commutative() {
        return input("the nilradical oracle needs a commutative algebra");
    }
    let (d, p) = (algebra.dim(), algebra.p);
    let mut frobenius = Matrix::zeros(d, d, p);
    for i in 0..d {
        let mut e = vec![0u32; d];
        e[i] = 1;
        for (k, v) in algebra.power(&e, p.get() as u64).into_iter().enumerate() {
            frobenius.set(k, i, v);
        }
    }
    let mut iterate = frobenius.clone();
    let mut reach = p.get() as u64;
    while reach <= d as u64 {
        iterate = frobenius.mul(&iterate)?;
        reach *= p.get() as u64;
    }
    Ok(iterate.kernel())
}

/// `Y_1 ⊇ Y_2 ⊇ ... ⊇ Y_{n+1} = 0`, `Y_m` spanned by the `B_q` with at least `m` parts.
#[derive(Clone, Debug)]
pub struct Filtration {
    n: usize,
    p: Prime,
    levels: Vec<Subspace>,
}

impl Filtration {
    pub fn new(n: usize, p: Prime) -> Result<Self> {
        let comps = compositions(n)?;
        let d = comps.len();
        let levels = (1..=n + 1)
            .map(|m| {
                let vectors: Vec<Vec<u32>> = comps
                    .iter()
                    .filter(|q| q.len() >= m)
                    .map(|q| {
                        let mut v = vec![0; d];
                        v[q.index()] = 1;
                        v
                    })
                    .collect();
                Subspace::span_of(d, &vectors, p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Filtration { n, p, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Y_m` for `m >= 1`; zero beyond `n`.
    pub fn level(&self, m: usize) -> Subspace {
        match m {
            0 => panic!("filtration levels start at 1"),
            m if m <= self.n + 1 => self.levels[m - 1].clone(),
            _ => Subspace::zero(1 << (self.n - 1), self.p),
        }
    }
}

/// Outcome of certifying the candidate radical of `Σ(n,p)`.
#[derive(Clone, Debug, Serialize)]
pub struct RadicalCertificate {
    pub n: usize,
    pub p: Prime,
    pub dimension: usize,
    /// Smallest `m` with `R^m = 0` (1 for the zero ideal); `None` if the span is not nilpotent.
    pub nilpotency_index: Option<usize>,
    pub is_ideal: bool,
    pub quotient_commutative: bool,
    pub quotient_reduced: bool,
    /// Every spanning element is killed by `φ`.
    pub within_kernel_phi: bool,
    pub kernel_phi_dimension: usize,
    pub spanning_set: Vec<Element>,
}

impl RadicalCertificate {
    pub fn all_verified(&self) -> bool {
        self.failed_clause().is_none()
    }

    /// Name of the first failing clause, if any.
    pub fn failed_clause(&self) -> Option<&'static str> {
        if !self.is_ideal {
            Some("span is not a two-sided ideal")
        } else if self.nilpotency_index.is_none() {
            Some("span is not nilpotent")
        } else if !self.quotient_commutative {
            Some("quotient algebra is not commutative")
        } else if !self.quotient_reduced {
            Some("quotient algebra has nonzero nilpotent elements")
        } else if !self.within_kernel_phi {
            Some("span is not contained in ker φ")
        } else if self.kernel_phi_dimension != self.dimension {
            Some("dim ker φ differs from the dimension of the span")
        } else {
            None
        }
    }
}

/// `Σ(n,p)` with dense-vector arithmetic for subspace computations.
#[derive(Clone, Debug)]
pub struct ModularAlgebra {
    n: usize,
    p: Prime,
    table: StructureTable,
    // flattened products: products[q * d + r] = [(s, c)]
    products: Vec<Vec<(u32, u32)>>,
}

impl ModularAlgebra {
    /// Builds the algebra from a freshly computed table (`n <= MAX_CERTIFY_N`).
    pub fn new(n: usize, p: Prime) -> Result<Self> {
        check_bound(n, MAX_CERTIFY_N, "radical certification")?;
        ModularAlgebra::from_table(StructureTable::build(n, Ring::PrimeField(p))?)
    }

    pub fn from_table(table: StructureTable) -> Result<Self> {
        let Ring::PrimeField(p) = table.ring() else {
            return input("a modular algebra needs a table over F_p");
        };
        let products = table
            .products()
            .iter()
            .map(|e| e.indexed_terms().iter().map(|&(s, c)| (s as u32, c as u32)).collect())
            .collect();
        Ok(ModularAlgebra { n: table.n(), p, table, products })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Product of dense coordinate vectors.
    pub fn mul_dense(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let (d, p) = (self.dim(), self.p);
        let mut acc = vec![0u64; d];
        let m = p.get() as u64;
        for (q, &a) in u.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (r, &b) in v.iter().enumerate().filter(|(_, &b)| b != 0) {
                let ab = (a as u64 * b as u64) % m;
                for &(s, c) in &self.products[q * d + r] {
                    acc[s as usize] = (acc[s as usize] + ab * c as u64) % m;
                }
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    /// Matrix whose row `q` holds the coordinates of `B_q v`.
    fn right_mult_matrix(&self, v: &[u32]) -> Matrix {
        let (d, p) = (self.dim(), self.p);
        let mut m = Matrix::zeros(d, d, p);
        for q in 0..d {
            for (r, &b) in v.iter().enumerate().filter(|(_, &b)| b != 0) {
                for &(s, c) in &self.products[q * d + r] {
                    let s = s as usize;
                    m.set(q, s, p.add(m.get(q, s), p.mul(b, c)));
                }
            }
        }
        m
    }

    /// `span{u v : u ∈ left, v ∈ right}`.
    pub fn span_products(&self, left: &Subspace, right: &Subspace) -> Result<Subspace> {
        let (d, p) = (self.dim(), self.p);
        let mut out = Subspace::zero(d, p);
        if left.dim() == 0 {
            return Ok(out);
        }
        let mut lhs = Matrix::zeros(left.dim(), d, p);
        for (i, u) in left.basis().iter().enumerate() {
            for (j, &x) in u.iter().enumerate() {
                lhs.set(i, j, x);
            }
        }
        for v in right.basis() {
            let prod = lhs.mul(&self.right_mult_matrix(v))?;
            for i in 0..prod.rows() {
                out.insert(prod.row(i))?;
            }
            if out.dim() == d {
                break;
            }
        }
        Ok(out)
    }

    pub fn spanning_set(&self) -> Result<Vec<Element>> {
        radical_spanning_set(self.n, self.p)
    }

    /// Span of [`radical_spanning_set`].
    pub fn radical(&self) -> Result<Subspace> {
        span_elements(self.n, self.p, &self.spanning_set()?)
    }

    /// `T`: the span of the differences `B_q - B_r` with `q ≈ r`.
    pub fn difference_span(&self) -> Result<Subspace> {
        let diffs: Vec<Element> = self
            .spanning_set()?
            .into_iter()
            .filter(|e| e.indexed_terms().len() == 2)
            .collect();
        span_elements(self.n, self.p, &diffs)
    }

    /// `S·Σ ⊆ S` and `Σ·S ⊆ S`.
    pub fn is_two_sided_ideal(&self, s: &Subspace) -> Result<bool> {
        let full = Subspace::full(self.dim(), self.p);
        Ok(self.span_products(s, &full)?.is_subspace_of(s)?
            && self.span_products(&full, s)?.is_subspace_of(s)?)
    }

    /// `[S, S^2, S^3, ...]` up to and including the first zero power, or up to
    /// the first power that equals its predecessor (the ideal is then not nilpotent).
    pub fn ideal_powers(&self, s: &Subspace) -> Result<Vec<Subspace>> {
        let mut powers = vec![s.clone()];
        loop {
            let last = powers.last().expect("nonempty");
            if last.dim() == 0 {
                return Ok(powers);
            }
            let next = self.span_products(last, s)?;
            let stalled = next.dim() == last.dim();
            powers.push(next);
            if stalled {
                return Ok(powers);
            }
        }
    }

    /// Smallest `m` with `S^m = 0`, or `None` if `S` is not nilpotent.
    pub fn nilpotency_index_of(&self, s: &Subspace) -> Result<Option<usize>> {
        let powers = self.ideal_powers(s)?;
        Ok((powers.last().expect("nonempty").dim() == 0).then_some(powers.len()))
    }

    /// `Σ(n,p)/S` on the complement spanned by the non-pivot coordinates of `S`.
    pub fn quotient(&self, s: &Subspace) -> Result<StructureConstants> {
        let d = self.dim();
        let mut is_pivot = vec![false; d];
        for &c in s.pivots() {
            is_pivot[c] = true;
        }
        let reps: Vec<usize> = (0..d).filter(|&i| !is_pivot[i]).collect();
        let mut constants = vec![vec![Vec::new(); reps.len()]; reps.len()];
        for (a, &i) in reps.iter().enumerate() {
            for (b, &j) in reps.iter().enumerate() {
                let prod = self.mul_dense(&self.basis_vector(i), &self.basis_vector(j));
                let residue = s.reduce(&prod)?;
                constants[a][b] = reps.iter().map(|&k| residue[k]).collect();
            }
        }
        StructureConstants::new(self.p, constants)
    }

    /// Runs every certification clause on the candidate radical.
    pub fn certificate(&self) -> Result<RadicalCertificate> {
        let spanning_set = self.spanning_set()?;
        let r = span_elements(self.n, self.p, &spanning_set)?;
        let is_ideal = self.is_two_sided_ideal(&r)?;
        let nilpotency_index = self.nilpotency_index_of(&r)?;
        let quotient = self.quotient(&r)?;
        let quotient_commutative = quotient.is_commutative();
        let quotient_reduced = quotient_commutative && nilradical_commutative(&quotient)?.dim() == 0;
        let chars = character_matrix(self.n)?;
        let mut within_kernel_phi = true;
        for x in &spanning_set {
            if chars.phi(x)?.values().iter().any(|&v| v != 0) {
                within_kernel_phi = false;
            }
        }
        let kernel = chars.phi_kernel(self.p);
        Ok(RadicalCertificate {
            n: self.n,
            p: self.p,
            dimension: r.dim(),
            nilpotency_index,
            is_ideal,
            quotient_commutative,
            quotient_reduced,
            within_kernel_phi: within_kernel_phi && r.is_subspace_of(&kernel)?,
            kernel_phi_dimension: kernel.dim(),
            spanning_set,
        })
    }

    /// `Y_m R ⊆ Y_{m+1}` for every level `m` and every spanning element of `R`.
    pub fn filtration_check(&self) -> Result<bool> {
        let filtration = Filtration::new(self.n, self.p)?;
        let spanning: Vec<Vec<u32>> =
            self.spanning_set()?.iter().map(Element::dense_residues).collect::<Result<_>>()?;
        for m in 1..=self.n {
            let (ym, next) = (filtration.level(m), filtration.level(m + 1));
            for b in ym.basis() {
                for x in &spanning {
                    if !next.contains(&self.mul_dense(b, x))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `R ⊆ (Y_2 ∩ T) + Y_3` when `n` is odd or `p ≠ 2`; otherwise
    /// `R ⊆ <B_[n/2,n/2]> + (Y_2 ∩ T) + Y_3` and `R^2 ⊆ (Y_3 ∩ T) + Y_4`.
    pub fn containment_lemmas_check(&self) -> Result<bool> {
        let filtration = Filtration::new(self.n, self.p)?;
        let r = self.radical()?;
        let t = self.difference_span()?;
        let y = |m| filtration.level(m);
        let base = y(2).intersection(&t)?.sum(&y(3))?;
        if self.n % 2 == 1 || self.p.get() != 2 {
            return r.is_subspace_of(&base);
        }
        let half = Composition::new(vec![self.n / 2, self.n / 2])?;
        let with_half = Subspace::span_of(self.dim(), &[self.basis_vector(half.index())], self.p)?.sum(&base)?;
        let square = self.span_products(&r, &r)?;
        let deeper = y(3).intersection(&t)?.sum(&y(4))?;
        Ok(r.is_subspace_of(&with_half)? && square.is_subspace_of(&deeper)?)
    }
}

/// Certifies the candidate radical of `Σ(n,p)`, failing with the name of the first broken clause.
pub fn certify_radical(n: usize, p: Prime) -> Result<RadicalCertificate> {
    let cert = ModularAlgebra::new(n, p)?.certificate()?;
    match cert.failed_clause() {
        None => Ok(cert),
        Some(clause) => Err(Error::Certification(format!("Σ({n},{p}): {clause}"))),
    }
}

/// Nilpotency index of the radical, from ideal powers.
pub fn nilpotency_index(n: usize, p: Prime) -> Result<usize> {
    let algebra = ModularAlgebra::new(n, p)?;
    algebra
        .nilpotency_index_of(&algebra.radical()?)?
        .ok_or_else(|| Error::Certification(format!("R({n},{p}) is not nilpotent")))
}

pub fn filtration_check(n: usize, p: Prime) -> Result<bool> {
    check_bound(n, MAX_FILTRATION_N, "the filtration check")?;
    ModularAlgebra::new(n, p)?.filtration_check()
}

pub fn containment_lemmas_check(n: usize, p: Prime) -> Result<bool> {
    check_bound(n, MAX_FILTRATION_N, "the containment check")?;
    ModularAlgebra::new(n, p)?.containment_lemmas_check()
}

/// `2^(n-1) - g(n,p)`, the dimension predicted by counting p-regular classes.
pub fn expected_radical_dimension(n: usize, p: Prime) -> Result<usize> {
    Ok((1usize << (n - 1)) - count_p_regular(n, p)?)
}

/// Whether a basis element has a part repeated at least `p` times.
pub fn has_high_multiplicity(q: &Composition, p: Prime) -> bool {
    multiplicities(q).max() >= p.get() as usize
}
