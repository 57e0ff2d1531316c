//! Prime factorizations by repeated right division: every sequence of
//! primes whose ⊗-product is A, reported as found.

use std::collections::HashMap;

use crate::algebra::{all_quotients, is_prime_on, Side};
use crate::canon::{canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::FlowGraph;
use crate::limits::Limits;

use super::enumerate::level_with;

pub type Factorization = Vec<FlowGraph>;

pub fn factorization_experiment(a: &FlowGraph) -> Result<Vec<Factorization>> {
    factorization_experiment_with(a, Limits::global())
}

/// All (P₁, …, P_k) with P₁ ⊗ … ⊗ P_k ≅ A and every Pᵢ prime, without
/// duplicates up to termwise isomorphism, ordered by the canonical keys
/// of the terms. Primes have at least two edges, so the recursion only
/// divides by graphs with between 2 and q_A/2 edges.
pub fn factorization_experiment_with(a: &FlowGraph, limits: &Limits) -> Result<Vec<Factorization>> {
    if a.is_trivial() {
        return Err(Error::Domain("the trivial flow graph has no prime factorization".into()));
    }
    let mut f = Factorizer {
        limits,
        memo: HashMap::new(),
        primes: HashMap::new(),
    };
    let found = f.run(a)?;
    Ok(found.into_iter().map(|(_, seq)| seq).collect())
}

type Keyed = (Vec<CanonicalKey>, Factorization);

struct Factorizer<'a> {
    limits: &'a Limits,
    memo: HashMap<CanonicalKey, Vec<Keyed>>,
    primes: HashMap<usize, Vec<(CanonicalKey, FlowGraph)>>,
}

impl Factorizer<'_> {
    fn primes_with(&mut self, d: usize) -> Result<&Vec<(CanonicalKey, FlowGraph)>> {
        if !self.primes.contains_key(&d) {
            self.limits.check_enum_edges(d)?;
            let lvl = level_with(d, self.limits)?;
            let mut ps = Vec::new();
            for (g, k) in lvl.graphs.iter().zip(&lvl.keys) {
                if is_prime_on(g, Side::Right, self.limits)? {
                    ps.push((k.clone(), g.clone()));
                }
            }
            self.primes.insert(d, ps);
        }
        Ok(&self.primes[&d])
    }

    fn run(&mut self, a: &FlowGraph) -> Result<Vec<Keyed>> {
        let key = canonical_key(a)?;
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let mut out: Vec<Keyed> = Vec::new();
        if is_prime_on(a, Side::Right, self.limits)? {
            out.push((vec![key.clone()], vec![a.clone()]));
        }
        let q = a.edge_count();
        for d in (2..=q / 2).filter(|d| q.is_multiple_of(*d)) {
            let primes = self.primes_with(d)?.clone();
            for (pk, p) in primes {
                for c in all_quotients(a, &p, Side::Right, self.limits)? {
                    for (mut keys, mut seq) in self.run(&c)? {
                        keys.push(pk.clone());
                        seq.push(p.clone());
                        out.push((keys, seq));
                    }
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out.dedup_by(|x, y| x.0 == y.0);
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::times;
    use crate::embed::isomorphic;
    use crate::named::nat;

    fn has(found: &[Factorization], want: &[usize]) -> bool {
        found.iter().any(|s| {
            s.len() == want.len() && s.iter().zip(want).all(|(g, &n)| isomorphic(g, &nat(n)))
        })
    }

    #[test]
    fn chains() {
        let f6 = factorization_experiment(&nat(6)).unwrap();
        assert!(has(&f6, &[2, 3]) && has(&f6, &[3, 2]));
        let f5 = factorization_experiment(&nat(5)).unwrap();
        assert_eq!(f5.len(), 1);
        assert!(has(&f5, &[5]));
        let f4 = factorization_experiment(&nat(4)).unwrap();
        assert!(has(&f4, &[2, 2]));
    }

    #[test]
    fn every_sequence_multiplies_back() {
        let a = nat(6);
        for seq in factorization_experiment(&a).unwrap() {
            let prod = seq.iter().skip(1).fold(seq[0].clone(), |acc, p| times(&acc, p));
            assert!(isomorphic(&prod, &a));
        }
    }

    #[test]
    fn trivial_is_refused() {
        assert!(factorization_experiment(&FlowGraph::trivial()).is_err());
    }
}
