#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supertropical::{Ambient, AmbientMode, Generator, GeneratorPair, MfceRelation, Monomial, QuotientPresentation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letters(n: usize) -> Arc<Ambient> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Arc::new(Ambient::uniform(&names).unwrap())
}

pub fn weighted(weights: &[u32]) -> Arc<Ambient> {
    let gens = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| Generator::new(format!("x{}", i + 1), w))
        .collect();
    Arc::new(Ambient::new(gens, AmbientMode::Full).unwrap())
}

fn weight_of(weights: &[u32], exps: &[u32]) -> u32 {
    weights.iter().zip(exps).map(|(w, e)| w * e).sum()
}

/// Every exponent vector of weighted degree at most `max_degree` (all weights positive).
pub fn monomials_up_to(weights: &[u32], max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &w in weights {
        let mut next = Vec::new();
        for p in out {
            let used = weight_of(&weights[..p.len()], &p);
            let mut e = 0;
            while used + w * e <= max_degree {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
                e += 1;
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

/// All exponent vectors componentwise below `top`.
pub fn divisors_of(top: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &t in top {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=t).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// The MFCE closure of a generator set computed the slow way: iterate "multiply every
/// related pair by every letter" and "ghosts absorb" until nothing changes, on all
/// monomials up to a degree.
pub struct NaiveClosure {
    index: BTreeMap<Monomial, usize>,
    class: Vec<usize>,
    ghost: Vec<bool>,
}

impl NaiveClosure {
    pub fn new(weights: &[u32], pairs: &[GeneratorPair], max_degree: u32) -> Self {
        let monos = monomials_up_to(weights, max_degree);
        let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = monos.len();
        let mut dsu = Dsu((0..n).collect());
        let mut ghost = vec![false; n];
        for p in pairs {
            match p {
                GeneratorPair::Identify(a, b) => {
                    if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                        dsu.union(i, j);
                    }
                }
                GeneratorPair::Ghostify(z) => {
                    if let Some(&i) = index.get(z) {
                        ghost[i] = true;
                    }
                }
            }
        }
        let rank = weights.len();
        loop {
            let mut changed = false;
            for i in 0..n {
                let r = dsu.find(i);
                if ghost[i] && !ghost[r] {
                    ghost[r] = true;
                    changed = true;
                }
            }
            for i in 0..n {
                let r = dsu.find(i);
                if ghost[r] && !ghost[i] {
                    ghost[i] = true;
                    changed = true;
                }
            }
            for i in 0..n {
                let r = dsu.find(i);
                for x in 0..rank {
                    let step = Monomial::generator(rank, x);
                    let (Some(&a), Some(&b)) = (index.get(&monos[i].mul(&step)), index.get(&monos[r].mul(&step)))
                    else {
                        continue;
                    };
                    changed |= dsu.union(a, b);
                    if ghost[i] && !ghost[a] {
                        ghost[a] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let class = (0..n).map(|i| dsu.find(i)).collect();
        NaiveClosure { index, class, ghost }
    }

    pub fn is_ghost(&self, z: &Monomial) -> bool {
        self.ghost[self.index[z]]
    }

    pub fn related(&self, a: &Monomial, b: &Monomial) -> bool {
        let (i, j) = (self.index[a], self.index[b]);
        (self.ghost[i] && self.ghost[j]) || self.class[i] == self.class[j]
    }
}

/// Compares every slice of degree at most `max_degree` with the naive closure.
pub fn slices_agree(rel: &MfceRelation, weights: &[u32], max_degree: u32) -> bool {
    let naive = NaiveClosure::new(weights, rel.pairs(), max_degree);
    let monos = monomials_up_to(weights, max_degree);
    for k in 0..=max_degree {
        let here: Vec<&Monomial> = monos
            .iter()
            .filter(|m| weight_of(weights, m.exponents()) == k)
            .collect();
        let slice = rel.slice(k).unwrap();
        if slice.monomials().len() != here.len() {
            return false;
        }
        for (i, a) in here.iter().enumerate() {
            if slice.is_ghost(a) != Some(naive.is_ghost(a)) {
                return false;
            }
            for b in &here[i + 1..] {
                let lib = slice.class_id(a) == slice.class_id(b);
                if lib != naive.related(a, b) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn random_monomial(rng: &mut ChaCha8Rng, rank: usize, max_exp: u32) -> Monomial {
    Monomial::from_exponents((0..rank).map(|_| rng.gen_range(0..=max_exp)).collect::<Vec<_>>())
}

/// A random generator set over the weights, monomials of degree at most `max_pair_degree`.
pub fn random_pairs(rng: &mut ChaCha8Rng, weights: &[u32], count: usize, max_pair_degree: u32) -> Vec<GeneratorPair> {
    let monos: Vec<Monomial> = monomials_up_to(weights, max_pair_degree)
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    let mut out = Vec::new();
    for _ in 0..count {
        let a = monos.choose(rng).unwrap().clone();
        if rng.gen_bool(0.35) {
            out.push(GeneratorPair::Ghostify(a));
        } else {
            let d = weight_of(weights, a.exponents());
            let same: Vec<&Monomial> = monos
                .iter()
                .filter(|m| weight_of(weights, m.exponents()) == d)
                .collect();
            out.push(GeneratorPair::Identify(a, (*same.choose(rng).unwrap()).clone()));
        }
    }
    out
}

/// A tangibly finite U over unit-weight letters with properties (A) and (B): each letter
/// x_i has x_i^{r_i+1} ghost, plus random ghosts and identifications in degrees ≥ 2.
pub fn random_finite(rng: &mut ChaCha8Rng, rank: usize, max_r: u32, extra: usize) -> QuotientPresentation {
    let amb = letters(rank);
    let r: Vec<u32> = (0..rank).map(|_| rng.gen_range(1..=max_r)).collect();
    let mut pairs: Vec<GeneratorPair> = (0..rank)
        .map(|i| GeneratorPair::Ghostify(Monomial::generator(rank, i).pow(r[i] + 1)))
        .collect();
    let box_monos: Vec<Monomial> = divisors_of(&r).into_iter().filter(|m| m.total_degree() >= 2).collect();
    for _ in 0..extra {
        let Some(a) = box_monos.choose(rng).cloned() else { break };
        if rng.gen_bool(0.3) {
            pairs.push(GeneratorPair::Ghostify(a));
        } else {
            let same: Vec<&Monomial> = box_monos
                .iter()
                .filter(|m| m.total_degree() == a.total_degree())
                .collect();
            pairs.push(GeneratorPair::Identify(a, (*same.choose(rng).unwrap()).clone()));
        }
    }
    QuotientPresentation::tangibly_finite(MfceRelation::from_pairs(amb, pairs).unwrap()).unwrap()
}

/// Tangible monomials of a tangibly finite U grouped by class (the blocks of E_U on 𝒯(U)).
pub fn tangible_blocks(u: &QuotientPresentation) -> Vec<Vec<Monomial>> {
    u.finite().unwrap().blocks().to_vec()
}

fn partitions_of(items: &[Monomial]) -> Vec<Vec<Vec<Monomial>>> {
    let Some((first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in partitions_of(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(first.clone());
            out.push(q);
        }
        let mut q = p;
        q.push(vec![first.clone()]);
        out.push(q);
    }
    out
}

fn block_map(q: &[Vec<Monomial>]) -> BTreeMap<Monomial, usize> {
    q.iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |z| (z.clone(), i)))
        .collect()
}

/// Brute-force interval lattice [Ẽ_U, E_U]: all refinements of the tangible classes of U
/// that are stable under multiplication by each letter.
pub fn interval_lattice(u: &QuotientPresentation) -> Vec<Vec<Vec<Monomial>>> {
    let blocks = tangible_blocks(u);
    let rank = u.ambient().rank();
    let mut all: Vec<Vec<Vec<Monomial>>> = vec![Vec::new()];
    for b in &blocks {
        let mut next = Vec::new();
        for q in &all {
            for p in partitions_of(b) {
                let mut r = q.clone();
                r.extend(p);
                next.push(r);
            }
        }
        all = next;
    }
    all.into_iter()
        .filter(|q| {
            let at = block_map(q);
            q.iter().all(|block| {
                (0..rank).all(|x| {
                    let step = Monomial::generator(rank, x);
                    let images: BTreeSet<Option<usize>> =
                        block.iter().map(|z| at.get(&z.mul(&step)).copied()).collect();
                    images.len() == 1
                })
            })
        })
        .map(|mut q| {
            for b in q.iter_mut() {
                b.sort();
            }
            q.sort();
            q
        })
        .collect()
}

/// Members of `fiber` that are singleton blocks of `q`.
pub fn singletons_in(q: &[Vec<Monomial>], fiber: &[Monomial]) -> BTreeSet<Monomial> {
    q.iter()
        .filter(|b| b.len() == 1 && fiber.contains(&b[0]))
        .map(|b| b[0].clone())
        .collect()
}

/// `fine` refines `coarse`.
pub fn refines(fine: &[Vec<Monomial>], coarse: &[Vec<Monomial>]) -> bool {
    let at = block_map(coarse);
    fine.iter().all(|b| b.iter().all(|z| at.get(z) == at.get(&b[0])))
}

pub fn all_subsets(items: &[Monomial]) -> Vec<Vec<Monomial>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, z)| z.clone())
                .collect()
        })
        .collect()
}

pub fn all_set_partitions(items: &[Monomial]) -> Vec<Vec<Vec<Monomial>>> {
    partitions_of(items)
        .into_iter()
        .map(|mut q| {
            for b in q.iter_mut() {
                b.sort();
            }
            q.sort();
            q
        })
        .collect()
}
