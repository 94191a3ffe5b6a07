//! The ten acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use descent::characters::{character_matrix, diagonal_check, irreducible_reps};
use descent::combinatorics::{
    compositions, count_high_multiplicity, count_p_regular, multiplicities, partition_count, partitions,
};
use descent::linalg::Subspace;
use descent::oracle;
use descent::radical::{
    certify_radical, has_high_multiplicity, radical_dimension, w_element, w_power_identity, ModularAlgebra,
};
use descent::{Element, Prime, Ring, StructureTable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond { Ok(()) } else { Err(msg()) }
}

fn multiplication_example() -> Outcome {
    let z = Ring::Integers;
    let f2 = Ring::PrimeField(prime(2));
    let lhs = |ring| Element::basis(&comp(&[2, 2]), ring).multiply(&Element::basis(&comp(&[2, 1, 1]), ring)).unwrap();
    let want_z =
        Element::from_terms(4, z, [(comp(&[2, 1, 1]), 1), (comp(&[1, 1, 2]), 1), (comp(&[1, 1, 1, 1]), 2)]).unwrap();
    let want_2 = Element::from_terms(4, f2, [(comp(&[2, 1, 1]), 1), (comp(&[1, 1, 2]), 1)]).unwrap();
    ensure(lhs(z) == want_z, || format!("over Z got {}", lhs(z)))?;
    ensure(lhs(f2) == want_2, || format!("mod 2 got {}", lhs(f2)))
}

fn oracle_equivalence() -> Outcome {
    for n in 2..=7 {
        let table = StructureTable::build(n, Ring::Integers).unwrap();
        let pairs = if n <= 6 { oracle::all_pairs(n) } else { oracle::sampled_pairs(n, 200, 2024) };
        let report = oracle::compare(&table, &pairs).map_err(|e| e.to_string())?;
        ensure(report.pairs_checked == pairs.len() && report.all_match(), || {
            format!("n={n}: {} of {} pairs disagree", report.mismatches, report.pairs_checked)
        })?;
    }
    Ok(())
}

fn radical_dimensions() -> Outcome {
    for n in 1..=10 {
        for p in [2u32, 3, 5, 7] {
            let dim = radical_dimension(n, prime(p)).unwrap();
            let g = count_no_part_divisible(n, p as usize) as usize;
            ensure(dim == (1 << (n - 1)) - g, || format!("n={n} p={p}: dim {dim}, g {g}"))?;
            if p as usize > n {
                let pn = count_all_partitions(n) as usize;
                ensure(dim == (1 << (n - 1)) - pn, || format!("n={n} p={p}: dim {dim} vs 2^(n-1) - p(n)"))?;
            }
        }
    }
    Ok(())
}

fn radical_certification() -> Outcome {
    for n in 1..=8 {
        for p in [2u32, 3, 5] {
            let cert = certify_radical(n, prime(p)).map_err(|e| e.to_string())?;
            ensure(
                cert.is_ideal
                    && cert.nilpotency_index.is_some()
                    && cert.quotient_commutative
                    && cert.quotient_reduced
                    && cert.within_kernel_phi
                    && cert.kernel_phi_dimension == cert.dimension,
                || format!("n={n} p={p}: {cert:?}"),
            )?;
        }
    }
    Ok(())
}

fn nilpotency_index() -> Outcome {
    for n in 3..=8 {
        for p in [2u32, 3] {
            let algebra = ModularAlgebra::new(n, prime(p)).unwrap();
            let r = algebra.radical().unwrap();
            let index = algebra.nilpotency_index_of(&r).unwrap();
            ensure(index == Some(n - 1), || format!("n={n} p={p}: index {index:?}"))?;
            // lower bound: w lies in R and w^(n-2) survives reduction
            let w = w_element(n).unwrap().reduce_mod_p(prime(p)).unwrap();
            ensure(r.contains(&w.dense_residues().unwrap()).unwrap(), || format!("n={n} p={p}: w not in R"))?;
            let top = w_element(n).unwrap().pow((n - 2) as u32).unwrap().reduce_mod_p(prime(p)).unwrap();
            ensure(!top.is_zero(), || format!("n={n} p={p}: w^(n-2) vanishes mod p"))?;
        }
    }
    for n in 3..=9 {
        for r in 1..=n - 2 {
            ensure(w_power_identity(n, r).unwrap(), || format!("w^{r} expansion fails at n={n}"))?;
        }
    }
    let r22 = ModularAlgebra::new(2, prime(2)).unwrap();
    ensure(r22.nilpotency_index_of(&r22.radical().unwrap()).unwrap() == Some(2), || "R(2,2) index".into())?;
    for p in [2u32, 3, 5, 7] {
        ensure(radical_dimension(1, prime(p)).unwrap() == 0, || format!("R(1,{p}) nonzero"))?;
    }
    Ok(())
}

fn character_matrix_criterion() -> Outcome {
    for n in 1..=9 {
        let m = character_matrix(n).unwrap();
        // N: rows of weakly decreasing compositions, both axes in increasing lexicographic order
        let mut ascending = partitions(n).unwrap();
        ascending.reverse();
        let col = |pi| m.partitions().iter().position(|x| x == pi).unwrap();
        for (i, row_label) in ascending.iter().enumerate() {
            let row = m.row(&descent::Composition::from(row_label.clone()));
            for pi in ascending.iter().skip(i + 1) {
                ensure(row[col(pi)] == 0, || format!("n={n}: N[{row_label}][{pi}] = {}", row[col(pi)]))?;
            }
            let diag = multiplicities(&descent::Composition::from(row_label.clone())).factorial_product().unwrap();
            ensure(row[col(row_label)] == diag, || format!("n={n}: diagonal at {row_label}"))?;
        }
        for p in [2u32, 3, 5, 7] {
            let g = count_no_part_divisible(n, p as usize) as usize;
            ensure(m.rank_mod_p(prime(p)) == g, || format!("n={n} p={p}: rank {} vs g {g}", m.rank_mod_p(prime(p))))?;
            ensure(diagonal_check(n, prime(p)).unwrap(), || format!("n={n} p={p}: diagonal check"))?;
            let q = prime(p);
            let parts = m.partitions();
            for a in 0..parts.len() {
                for b in a + 1..parts.len() {
                    if p_regular_power(&parts[a], p as usize) == p_regular_power(&parts[b], p as usize) {
                        let same = m.column(a).iter().zip(m.column(b)).all(|(&x, y)| q.reduce(x) == q.reduce(y));
                        ensure(same, || format!("n={n} p={p}: columns {} and {} differ mod p", parts[a], parts[b]))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_element(n: usize, rng: &mut StdRng) -> Element {
    let d = 1usize << (n - 1);
    Element::from_indexed(n, Ring::Integers, (0..d).map(|q| (q, rng.gen_range(-5..=5))).collect()).unwrap()
}

fn homomorphisms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 1..=6 {
        let table = StructureTable::build(n, Ring::Integers).unwrap();
        let m = character_matrix(n).unwrap();
        let basis: Vec<Element> = compositions(n).unwrap().iter().map(|q| Element::basis(q, Ring::Integers)).collect();
        let thetas: Vec<_> = basis.iter().map(|x| m.theta(x).unwrap()).collect();
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                let lhs = m.theta(table.product(a, b)).unwrap();
                let rhs = thetas[a].pointwise_mul(&thetas[b]).unwrap();
                ensure(lhs == rhs, || format!("n={n}: theta fails on basis pair ({a}, {b})"))?;
            }
        }
        for p in [2u32, 3] {
            let q = prime(p);
            let fp = table.reduce_mod_p(q).unwrap();
            for _ in 0..100 {
                let x = random_element(n, &mut rng).reduce_mod_p(q).unwrap();
                let y = random_element(n, &mut rng).reduce_mod_p(q).unwrap();
                let other_lift = x.lift().add(&random_element(n, &mut rng).scale(p as i64).unwrap()).unwrap();
                ensure(m.theta(&other_lift).unwrap().reduce_mod_p(q).unwrap() == m.phi(&x).unwrap(), || {
                    format!("n={n} p={p}: phi depends on the lift")
                })?;
                let lhs = m.phi(&fp.multiply(&x, &y).unwrap()).unwrap();
                let rhs = m.phi(&x).unwrap().pointwise_mul(&m.phi(&y).unwrap()).unwrap();
                ensure(lhs == rhs, || format!("n={n} p={p}: phi not multiplicative"))?;
            }
        }
    }
    for n in 1..=8 {
        let m = character_matrix(n).unwrap();
        let comps = compositions(n).unwrap();
        for q in &comps {
            for r in comps.iter().filter(|r| r.sorted() == q.sorted()) {
                let diff = Element::basis(q, Ring::Integers).sub(&Element::basis(r, Ring::Integers)).unwrap();
                ensure(m.theta(&diff).unwrap().values().iter().all(|&v| v == 0), || {
                    format!("n={n}: theta(B{q} - B{r}) nonzero")
                })?;
            }
        }
    }
    Ok(())
}

fn irreducible_representations() -> Outcome {
    for n in 1..=6 {
        for p in [2u32, 3] {
            let q = prime(p);
            let table = StructureTable::build(n, Ring::PrimeField(q)).unwrap();
            let reps = irreducible_reps(n, q).unwrap();
            let g = count_no_part_divisible(n, p as usize) as usize;
            ensure(reps.len() == g, || format!("n={n} p={p}: {} representations, g = {g}", reps.len()))?;
            for (i, a) in reps.iter().enumerate() {
                ensure(reps[i + 1..].iter().all(|b| b.values != a.values), || format!("n={n} p={p}: repeated"))?;
                for x in 0..table.dim() {
                    for y in 0..table.dim() {
                        let lhs = a.evaluate(table.product(x, y), q).unwrap();
                        ensure(lhs == q.mul(a.values[x], a.values[y]), || {
                            format!("n={n} p={p}: lambda_{} not multiplicative", a.label)
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn structural_lemmas() -> Outcome {
    for n in 1..=7 {
        let table = StructureTable::build(n, Ring::Integers).unwrap();
        let comps = compositions(n).unwrap();
        for q in &comps {
            for r in &comps {
                let prod = table.product(q.index(), r.index());
                for (s, _) in prod.terms() {
                    ensure(coarsenings(s.parts()).iter().any(|c| c.as_slice() == q.parts()), || {
                        format!("B{s} in B{q} B{r} does not refine {q}")
                    })?;
                }
                let lead = prod.coeff(q);
                let t = multiplicities(r).factorial_product().unwrap();
                ensure(lead % t == 0, || format!("coefficient of B{q} in B{q} B{r} is {lead}"))?;
                let rep = table.product(q.index(), r.class_representative().index()).coeff(q);
                ensure(rep == lead, || format!("coefficient of B{q} depends on the order of {r}"))?;
                if q.sorted() == r.sorted() {
                    ensure(lead == t, || format!("coefficient of B{q} in B{q} B{r} is {lead}, want {t}"))?;
                }
            }
        }
        for p in [2u32, 3] {
            let fp = table.reduce_mod_p(prime(p)).unwrap();
            for r in &comps {
                let b = Element::basis(r, fp.ring());
                let nil = nilpotent_by_powers(&fp, &b);
                ensure(nil == has_high_multiplicity(r, prime(p)), || format!("n={n} p={p}: B{r} nilpotent: {nil}"))?;
                ensure(fp.is_nilpotent(&b).unwrap() == nil, || format!("n={n} p={p}: rank test disagrees on B{r}"))?;
            }
            let algebra = ModularAlgebra::from_table(fp).unwrap();
            ensure(algebra.filtration_check().unwrap(), || format!("n={n} p={p}: Y_m R not in Y_(m+1)"))?;
            ensure(algebra.containment_lemmas_check().unwrap(), || format!("n={n} p={p}: containment"))?;
            ensure(filtration_by_parts(&algebra, n, prime(p)), || format!("n={n} p={p}: filtration by parts"))?;
        }
    }
    Ok(())
}

/// `Y_m R ⊆ Y_(m+1)` read off directly: products of a basis element with at
/// least `m` parts and a radical element only involve compositions with more than `m` parts.
fn filtration_by_parts(algebra: &ModularAlgebra, n: usize, p: Prime) -> bool {
    let r: Subspace = algebra.radical().unwrap();
    for q in compositions(n).unwrap() {
        let b = Element::basis(&q, Ring::PrimeField(p)).dense_residues().unwrap();
        for x in r.basis() {
            let prod = algebra.mul_dense(&b, x);
            for (s, &c) in prod.iter().enumerate() {
                if c != 0 && descent::Composition::from_index(n, s).unwrap().len() <= q.len() {
                    return false;
                }
            }
        }
    }
    true
}

fn combinatorial_identities() -> Outcome {
    for n in 1..=20 {
        let pn = count_all_partitions(n) as usize;
        ensure(partition_count(n).unwrap() == pn, || format!("p({n})"))?;
        for p in [2u32, 3, 5, 7] {
            let g = count_no_part_divisible(n, p as usize) as usize;
            ensure(count_p_regular(n, prime(p)).unwrap() == g, || format!("g({n},{p})"))?;
            let high = count_high_multiplicity(n, prime(p)).unwrap();
            ensure(high == pn - g, || format!("n={n} p={p}: {high} vs {}", pn - g))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("multiplication example over Z and mod 2", multiplication_example),
        ("structure constants agree with the symmetric-group oracle", oracle_equivalence),
        ("radical dimension 2^(n-1) - g(n,p) for n <= 10", radical_dimensions),
        ("radical certificates for n <= 8, p in {2,3,5}", radical_certification),
        ("nilpotency index n-1 and the w^r expansion", nilpotency_index),
        ("character matrix rank, triangular block, column congruences", character_matrix_criterion),
        ("theta and phi are homomorphisms", homomorphisms),
        ("one-dimensional irreducible representations", irreducible_representations),
        ("support, coefficient, nilpotency and filtration lemmas", structural_lemmas),
        ("partitions with a part repeated p times number p(n) - g(n,p)", combinatorial_identities),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {:>2}  {name}  ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
