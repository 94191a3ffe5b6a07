//! Property-suite runner: every structural claim the library relies on,
//! checked up to a size bound, with one named line per check.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{Element, Ring, StructureTable};
use crate::characters::{
    brauer_column_check, character_matrix, diagonal_check, irreducible_reps, CharacterMatrix,
};
use crate::combinatorics::{
    compositions, count_high_multiplicity, count_p_regular, equivalent, multiplicities, partition_count, precedes,
    Composition,
};
use crate::error::{check_bound, input, Error, Result};
use crate::field::Prime;
use crate::oracle;
use crate::radical::{
    expected_radical_dimension, has_high_multiplicity, radical_dimension, w_power_identity, ModularAlgebra,
};

/// Default bound on `n` for the full suite.
pub const MAX_VERIFY_N: usize = 8;

const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub primes: Vec<Prime>,
    pub checks: Vec<Check>,
    pub notices: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub primes: Vec<Prime>,
    pub with_oracle: bool,
    /// Lift the default bound on `n_max`.
    pub force: bool,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    /// Records `outcome`; certification and oracle errors count as failures, anything else aborts.
    fn record(&mut self, name: String, outcome: Result<bool>) -> Result<()> {
        let (passed, detail) = match outcome {
            Ok(b) => (b, String::new()),
            Err(e @ (Error::Certification(_) | Error::Oracle(_))) => (false, e.to_string()),
            Err(e) => return Err(e),
        };
        self.checks.push(Check { name, passed, detail });
        Ok(())
    }
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.n_max == 0 {
        return input("n-max must be at least 1");
    }
    if !opts.force {
        check_bound(opts.n_max, MAX_VERIFY_N, "verify")?;
        if opts.with_oracle {
            check_bound(opts.n_max.min(8), oracle::MAX_ORACLE_N + 1, "the group oracle")?;
        }
    }
    let mut s = Suite { checks: Vec::new() };
    let mut notices = Vec::new();
    let mut rng = StdRng::seed_from_u64(SEED);

    if opts.n_max >= 4 {
        s.record("multiplication: B[2,2] B[2,1,1] over Z and F2".into(), anchor_product())?;
    }
    for n in 1..=opts.n_max {
        let table = StructureTable::build(n, Ring::Integers)?;
        s.record(format!("n={n}: unit laws"), unit_laws(&table))?;
        if n <= 6 {
            s.record(format!("n={n}: associativity over Z"), associativity(&table))?;
        }
        if n <= 7 {
            s.record(format!("n={n}: product support precedes the left factor"), product_support(&table))?;
            s.record(format!("n={n}: leading coefficients are multiplicity factorials"), leading_coefficients(&table))?;
        }
        let chars = character_matrix(n)?;
        if n <= 6 {
            s.record(format!("n={n}: theta multiplicative on basis pairs"), theta_multiplicative(&table, &chars))?;
        }
        s.record(format!("n={n}: theta kills B_q - B_r for q ~ r"), theta_kills_differences(&chars))?;
        if opts.with_oracle && (2..=oracle::MAX_ORACLE_N).contains(&n) {
            let pairs = if n <= 6 { oracle::all_pairs(n) } else { oracle::sampled_pairs(n, 200, SEED) };
            let outcome = oracle::compare(&table, &pairs).map(|r| r.all_match());
            s.record(format!("n={n}: group oracle agrees on {} pairs", pairs.len()), outcome)?;
        }
        if n >= 3 {
            for r in 1..=n - 2 {
                s.record(format!("n={n}: w^{r} binomial expansion"), w_power_identity(n, r))?;
            }
        }

        for &p in &opts.primes {
            let g = count_p_regular(n, p)?;
            s.record(
                format!("n={n} p={p}: partitions with a part repeated >= p times number p(n) - g"),
                Ok(count_high_multiplicity(n, p)? == partition_count(n)? - g),
            )?;
            s.record(format!("n={n} p={p}: rank of M mod p equals g"), Ok(chars.rank_mod_p(p) == g))?;
            s.record(format!("n={n} p={p}: triangular block and its diagonal"), diagonal_check(n, p))?;
            s.record(format!("n={n} p={p}: columns congruent along p-regular parts"), brauer_column_check(n, p))?;
            let fp = table.reduce_mod_p(p)?;
            if n <= 6 {
                s.record(format!("n={n} p={p}: reduction mod p is a ring map"), reduction_homomorphism(&table, p, &mut rng))?;
                s.record(format!("n={n} p={p}: phi well defined and multiplicative"), phi_multiplicative(&fp, &chars, p, &mut rng))?;
                s.record(format!("n={n} p={p}: irreducible representations"), irreps_check(&fp, p))?;
                s.record(format!("n={n} p={p}: radical spanning elements are nilpotent"), spanning_elements_nilpotent(&fp, p))?;
            }
            if n <= 7 {
                s.record(format!("n={n} p={p}: nilpotent basis elements"), nilpotent_basis_criterion(&fp, p))?;
            }
            s.record(
                format!("n={n} p={p}: radical dimension is 2^(n-1) - g"),
                Ok(radical_dimension(n, p)? == expected_radical_dimension(n, p)?),
            )?;
            let algebra = ModularAlgebra::from_table(fp)?;
            let cert = algebra.certificate()?;
            let outcome = match cert.failed_clause() {
                None => Ok(true),
                Some(clause) => Err(Error::Certification(clause.to_string())),
            };
            s.record(format!("n={n} p={p}: radical certificate"), outcome)?;
            if n >= 3 {
                s.record(format!("n={n} p={p}: nilpotency index is n-1"), Ok(cert.nilpotency_index == Some(n - 1)))?;
            }
            if n <= 7 {
                s.record(format!("n={n} p={p}: Y_m R inside Y_(m+1)"), algebra.filtration_check())?;
                s.record(format!("n={n} p={p}: radical inside the second filtration layer"), algebra.containment_lemmas_check())?;
            }
            if n == 2 && p.get() >= 3 {
                notices.push(format!(
                    "R(2,{p}) = 0 with nilpotency index {}: the description R(2,p) = <B[1,1]> of index 2 holds only for p = 2",
                    cert.nilpotency_index.map_or("none".to_string(), |k| k.to_string())
                ));
            }
        }
    }
    Ok(VerifyReport { n_max: opts.n_max, primes: opts.primes.clone(), checks: s.checks, notices })
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).expect("valid composition")
}

/// `B[2,2] B[2,1,1] = B[2,1,1] + B[1,1,2] + 2 B[1,1,1,1]`, and the last term vanishes mod 2.
pub fn anchor_product() -> Result<bool> {
    let z = Ring::Integers;
    let prod = Element::basis(&comp(&[2, 2]), z).multiply(&Element::basis(&comp(&[2, 1, 1]), z))?;
    let want = Element::from_terms(4, z, [(comp(&[2, 1, 1]), 1), (comp(&[1, 1, 2]), 1), (comp(&[1, 1, 1, 1]), 2)])?;
    let f2 = Ring::PrimeField(Prime::new(2)?);
    let prod2 = Element::basis(&comp(&[2, 2]), f2).multiply(&Element::basis(&comp(&[2, 1, 1]), f2))?;
    let want2 = Element::from_terms(4, f2, [(comp(&[2, 1, 1]), 1), (comp(&[1, 1, 2]), 1)])?;
    Ok(prod == want && prod2 == want2)
}

pub fn unit_laws(table: &StructureTable) -> Result<bool> {
    let one = 0;
    Ok((0..table.dim()).all(|q| {
        let b = Element::from_indexed(table.n(), table.ring(), vec![(q, 1)]).expect("basis element");
        table.product(one, q) == &b && table.product(q, one) == &b
    }))
}

pub fn associativity(table: &StructureTable) -> Result<bool> {
    let d = table.dim();
    for a in 0..d {
        for b in 0..d {
            let ab = table.product(a, b);
            for c in 0..d {
                let bc = table.product(b, c);
                let left = table.multiply(ab, &basis_at(table, c))?;
                let right = table.multiply(&basis_at(table, a), bc)?;
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn basis_at(table: &StructureTable, q: usize) -> Element {
    Element::from_indexed(table.n(), table.ring(), vec![(q, 1)]).expect("basis element")
}

/// Every `B_s` in the support of `B_q B_r` satisfies `s ⪯ q`.
pub fn product_support(table: &StructureTable) -> Result<bool> {
    let comps = compositions(table.n())?;
    for q in &comps {
        for r in &comps {
            for &(s, _) in table.product(q.index(), r.index()).indexed_terms() {
                if !precedes(&Composition::from_index(table.n(), s)?, q)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The coefficient of `B_q` in `B_q B_r` is a multiple of `Π t_i(r)!`, depends on
/// `r` only through its class, and equals `Π t_i!` when `q ~ r`.
pub fn leading_coefficients(table: &StructureTable) -> Result<bool> {
    if table.ring() != Ring::Integers {
        return input("leading coefficients are checked over Z");
    }
    let comps = compositions(table.n())?;
    for q in &comps {
        for r in &comps {
            let c = table.product(q.index(), r.index()).coeff(q);
            let f = multiplicities(r).factorial_product().ok_or(Error::Overflow("factorial products"))?;
            if c % f != 0 {
                return Ok(false);
            }
            let rep = r.class_representative();
            if table.product(q.index(), rep.index()).coeff(q) != c {
                return Ok(false);
            }
            if equivalent(q, r)? && c != f {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn theta_multiplicative(table: &StructureTable, chars: &CharacterMatrix) -> Result<bool> {
    let d = table.dim();
    let thetas = (0..d).map(|q| chars.theta(&basis_at(table, q))).collect::<Result<Vec<_>>>()?;
    for a in 0..d {
        for b in 0..d {
            if chars.theta(table.product(a, b))? != thetas[a].pointwise_mul(&thetas[b])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn theta_kills_differences(chars: &CharacterMatrix) -> Result<bool> {
    let comps = chars.compositions();
    Ok(comps.iter().all(|q| chars.row(q) == chars.row(&q.class_representative())))
}

fn random_element(n: usize, ring: Ring, rng: &mut StdRng) -> Result<Element> {
    let d = 1usize << (n - 1);
    let terms = (0..d).map(|q| (q, rng.gen_range(-3..=3))).collect();
    Element::from_indexed(n, ring, terms)
}

pub fn reduction_homomorphism(table: &StructureTable, p: Prime, rng: &mut StdRng) -> Result<bool> {
    let fp = table.reduce_mod_p(p)?;
    for _ in 0..50 {
        let x = random_element(table.n(), Ring::Integers, rng)?;
        let y = random_element(table.n(), Ring::Integers, rng)?;
        let lhs = table.multiply(&x, &y)?.reduce_mod_p(p)?;
        let rhs = fp.multiply(&x.reduce_mod_p(p)?, &y.reduce_mod_p(p)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `φ` does not depend on the chosen lift, and `φ(xy) = φ(x)φ(y)` on 100 random pairs.
pub fn phi_multiplicative(fp: &StructureTable, chars: &CharacterMatrix, p: Prime, rng: &mut StdRng) -> Result<bool> {
    let n = fp.n();
    for _ in 0..100 {
        let x = random_element(n, Ring::Integers, rng)?.reduce_mod_p(p)?;
        let y = random_element(n, Ring::Integers, rng)?.reduce_mod_p(p)?;
        let shift = random_element(n, Ring::Integers, rng)?.scale(p.get() as i64)?;
        let other_lift = chars.theta(&x.lift().add(&shift)?)?.reduce_mod_p(p)?;
        if other_lift != chars.phi(&x)? {
            return Ok(false);
        }
        if chars.phi(&fp.multiply(&x, &y)?)? != chars.phi(&x)?.pointwise_mul(&chars.phi(&y)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g(n,p)` pairwise distinct functionals, each multiplicative on every basis pair.
pub fn irreps_check(fp: &StructureTable, p: Prime) -> Result<bool> {
    let n = fp.n();
    let reps = irreducible_reps(n, p)?;
    if reps.len() != count_p_regular(n, p)? {
        return Ok(false);
    }
    for (i, a) in reps.iter().enumerate() {
        if reps[i + 1..].iter().any(|b| b.values == a.values) {
            return Ok(false);
        }
    }
    for rep in &reps {
        for a in 0..fp.dim() {
            for b in 0..fp.dim() {
                if rep.evaluate(fp.product(a, b), p)? != p.mul(rep.values[a], rep.values[b]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `B̄_r` is nilpotent iff some part of `r` is repeated at least `p` times.
pub fn nilpotent_basis_criterion(fp: &StructureTable, p: Prime) -> Result<bool> {
    for r in compositions(fp.n())? {
        if fp.is_nilpotent(&Element::basis(&r, fp.ring()))? != has_high_multiplicity(&r, p) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn spanning_elements_nilpotent(fp: &StructureTable, p: Prime) -> Result<bool> {
    for x in crate::radical::radical_spanning_set(fp.n(), p)? {
        if !fp.is_nilpotent(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
