//! Random homogeneous instances checked against the degreewise oracle.
#![allow(dead_code)]

use std::sync::Arc;

use filtra::oracle::{monomials_of_degree, oracle_colength, oracle_contains, oracle_dimension, oracle_intersection_dimension, oracle_quotient_dimension};
use filtra::{colength, CoeffField, Ideal, Monomial, Polynomial, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOP_DEGREE: u64 = 6;

pub struct Instance {
    pub ring: Arc<Ring>,
    pub a: Ideal,
    pub b: Ideal,
    pub f: Polynomial,
    pub seed: u64,
}

pub fn random_form(ring: &Arc<Ring>, deg: u64, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let mons = monomials_of_degree(ring, deg).unwrap();
    let field = ring.field();
    let picked: Vec<_> = mons.choose_multiple(rng, terms.min(mons.len())).cloned().collect();
    Polynomial::from_terms(
        ring,
        picked.into_iter().map(|m| (Monomial::from_exps(m).unwrap(), field.from_i64(rng.gen_range(1..=7) * if rng.gen_bool(0.3) { -1 } else { 1 }))),
    )
}

fn random_ideal(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Ideal {
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_form(ring, d, rng.gen_range(1..=3), rng)
        })
        .filter(|g| !g.is_zero())
        .collect();
    Ideal::new(ring, gens).unwrap()
}

pub fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = rng.gen_range(2..=4);
    let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let field = if seed % 5 == 0 { CoeffField::Rationals } else { CoeffField::default() };
    let ring = Ring::new(&names, field).unwrap();
    let a = random_ideal(&ring, &mut rng);
    let b = random_ideal(&ring, &mut rng);
    let mut f = random_form(&ring, rng.gen_range(1..=2), 2, &mut rng);
    if f.is_zero() {
        f = Polynomial::var(&ring, 0);
    }
    Instance { ring, a, b, f, seed }
}

/// Every engine answer that the oracle can recompute, for degrees up to [`TOP_DEGREE`].
pub fn check_instance(inst: &Instance) -> Result<usize, String> {
    let err = |what: &str, n: u64| format!("seed {}: {what} differs in degree {n}", inst.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed ^ 0x5eed);
    let mut checks = 0;
    let (a, b, f) = (&inst.a, &inst.b, &inst.f);
    let ha = a.hilbert_series().map_err(|e| e.to_string())?;
    let hq = a.quotient_by(f).and_then(|q| q.hilbert_series()).map_err(|e| e.to_string())?;
    let hi = a.intersection(b).and_then(|q| q.hilbert_series()).map_err(|e| e.to_string())?;
    for n in 0..=TOP_DEGREE {
        if ha.value(n as usize) as u64 != oracle_dimension(a, n).unwrap() {
            return Err(err("dim (R/A)_n", n));
        }
        if hq.value(n as usize) as u64 != oracle_quotient_dimension(a, f, n).unwrap() {
            return Err(err("dim (R/(A:f))_n", n));
        }
        if hi.value(n as usize) as u64 != oracle_intersection_dimension(a, b, n).unwrap() {
            return Err(err("dim (R/(A∩B))_n", n));
        }
        checks += 3;
    }
    for _ in 0..3 {
        let d = rng.gen_range(1..=TOP_DEGREE);
        let mut member = Polynomial::zero(&inst.ring);
        for g in a.gens() {
            let dg = g.degree().unwrap();
            if dg <= d {
                member = &member + &(&random_form(&inst.ring, d - dg, 3, &mut rng) * g);
            }
        }
        let other = random_form(&inst.ring, d, 4, &mut rng);
        for p in [&member, &other] {
            let engine = a.contains(p).map_err(|e| e.to_string())?;
            if engine != oracle_contains(a, p).unwrap() {
                return Err(err("membership", d));
            }
            checks += 1;
        }
        if !a.contains(&member).unwrap() {
            return Err(err("membership of a combination", d));
        }
    }
    let powers: Vec<Polynomial> = (0..inst.ring.nvars()).map(|i| Polynomial::var(&inst.ring, i).pow(3).unwrap()).collect();
    let c = a.add_gens(&powers).unwrap();
    let cb = c.sum(b).unwrap();
    for (small, big) in [(&c, &Ideal::unit(&inst.ring)), (&c, &cb)] {
        let engine = colength(small, big).map_err(|e| e.to_string())?;
        if engine != oracle_colength(small, big, 3 * inst.ring.nvars() as u64 + 1).unwrap() {
            return Err(format!("seed {}: colength differs", inst.seed));
        }
        checks += 1;
    }
    Ok(checks)
}
