//! Bounded enumeration of data over a fixed group and a survey of the
//! resulting `Aut_0` groups.
//!
//! For each factor the candidate branch lists are multisets of nontrivial
//! elements of `G/K_i`, pruned by the product relation, then by generation
//! (the eta elements can make up at most `2g'` missing generators), then by
//! `g(C_i) >= 2`. Triples of surviving vectors are checked for freeness
//! with bitsets over `G`. Eta elements do not enter any computed invariant,
//! so one canonical eta list is emitted per branch list.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, GroupElement, Quotient, Subgroup};
use crate::aut0::{aut0, Aut0Status};
use crate::covering::GeneratingVector;
use crate::datum::{AlgebraicDatum, VectorSpec};
use crate::document::DatumDocument;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u128 = 20_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelPolicy {
    /// every ordered triple of cyclic subgroups meeting pairwise trivially
    AllCyclic,
    /// the listed triples, each kernel given by generator tuples
    Explicit { triples: Vec<[Vec<Vec<i64>>; 3]> },
}

fn default_g_prime() -> [u32; 3] {
    [1, 1, 1]
}

fn default_cap() -> u128 {
    DEFAULT_CAP
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub group: Vec<i64>,
    pub kernels: KernelPolicy,
    #[serde(default = "default_g_prime")]
    pub g_prime: [u32; 3],
    /// largest number of branch points per vector
    pub max_branch: usize,
    /// optional bound on the order of each branch element
    #[serde(default)]
    pub max_branch_order: Option<i64>,
    /// refuse spaces whose candidate count exceeds this
    #[serde(default = "default_cap")]
    pub cap: u128,
}

impl SearchSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A valid generating vector for one factor, in `G` coordinates.
struct Candidate {
    branch: Vec<GroupElement>,
    eta: Vec<GroupElement>,
    /// bit `index_of(x)` set iff `x` fixes a point of `C_i`
    fixed: Vec<u64>,
}

struct FactorSpace {
    kernel: Subgroup,
    candidates: Vec<Candidate>,
}

fn kernel_triples(g: &AbelianGroup, policy: &KernelPolicy) -> Result<Vec<[Subgroup; 3]>> {
    match policy {
        KernelPolicy::Explicit { triples } => triples
            .iter()
            .enumerate()
            .map(|(t, triple)| {
                let mut out = Vec::with_capacity(3);
                for (i, gens) in triple.iter().enumerate() {
                    for v in gens {
                        if v.len() != g.rank() {
                            return Err(Error::structural(
                                format!("kernels.triples[{t}][{i}]"),
                                "tuple width differs from the group rank",
                            ));
                        }
                    }
                    out.push(Subgroup::from_exponents(g, gens)?);
                }
                Ok(out.try_into().expect("three"))
            })
            .collect(),
        KernelPolicy::AllCyclic => {
            let mut subs: Vec<Subgroup> = Vec::new();
            for x in g.elements() {
                let h = Subgroup::generate(g, &[x])?;
                if !subs.contains(&h) {
                    subs.push(h);
                }
            }
            let mut out = Vec::new();
            for a in &subs {
                for b in &subs {
                    if !a.intersection(b)?.is_trivial() {
                        continue;
                    }
                    for c in &subs {
                        if a.intersection(c)?.is_trivial() && b.intersection(c)?.is_trivial() {
                            out.push([a.clone(), b.clone(), c.clone()]);
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Nondecreasing index sequences of length `<= r` over `elems` summing to zero.
fn zero_sum_multisets(q: &AbelianGroup, elems: &[GroupElement], r: usize) -> Vec<Vec<usize>> {
    fn rec(
        elems: &[GroupElement],
        r: usize,
        start: usize,
        acc: &mut Vec<usize>,
        sum: GroupElement,
        out: &mut Vec<Vec<usize>>,
    ) {
        if sum.is_identity() {
            out.push(acc.clone());
        }
        if acc.len() == r {
            return;
        }
        for i in start..elems.len() {
            acc.push(i);
            let s = sum.try_add(&elems[i]).expect("same group");
            rec(elems, r, i, acc, s, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(elems, r, 0, &mut Vec::new(), q.identity(), &mut out);
    out
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn factor_space(g: &AbelianGroup, kernel: &Subgroup, g_prime: u32, spec: &SearchSpec) -> Result<FactorSpace> {
    let quotient: Quotient = Subgroup::whole(g).quotient_by(kernel)?;
    let q = quotient.group();
    let elems: Vec<GroupElement> = q
        .elements()
        .filter(|x| !x.is_identity())
        .filter(|x| spec.max_branch_order.is_none_or(|m| x.order() <= m))
        .collect();
    // image of every element of G in Q, by index
    let images: Vec<usize> = g
        .elements()
        .map(|x| quotient.coordinates(x.exponents()).map(|c| q.index_of(&c)))
        .collect::<Result<_>>()?;
    let mut candidates = Vec::new();
    for ms in zero_sum_multisets(&q, &elems, spec.max_branch) {
        let branch_q: Vec<GroupElement> = ms.iter().map(|&i| elems[i].clone()).collect();
        let span = Subgroup::generate(&q, &branch_q)?;
        let rest = Subgroup::whole(&q).quotient_by(&span)?;
        let missing = rest.generators().len();
        if missing > 2 * g_prime as usize {
            continue;
        }
        let mut eta_q: Vec<GroupElement> = rest.generators().to_vec();
        eta_q.resize(2 * g_prime as usize, q.identity());
        let v = GeneratingVector::new(q.clone(), g_prime, branch_q.clone(), eta_q.clone())?;
        if v.genus()? < 2 {
            continue;
        }
        let mut stab = vec![false; q.order() as usize];
        for x in v.stabilizer_union() {
            stab[q.index_of(x.exponents())] = true;
        }
        let mut fixed = vec![0u64; words(g.order() as usize)];
        for (ix, &img) in images.iter().enumerate() {
            if stab[img] {
                fixed[ix / 64] |= 1 << (ix % 64);
            }
        }
        let lift = |xs: &[GroupElement]| -> Result<Vec<GroupElement>> {
            xs.iter()
                .map(|x| kernel.canonical_representative(&quotient.lift(x.exponents())?))
                .collect()
        };
        candidates.push(Candidate {
            branch: lift(&branch_q)?,
            eta: lift(&eta_q)?,
            fixed,
        });
    }
    Ok(FactorSpace {
        kernel: kernel.clone(),
        candidates,
    })
}

fn is_free(a: &[u64], b: &[u64], c: &[u64]) -> bool {
    // only the identity (bit 0) may be common
    a.iter()
        .zip(b)
        .zip(c)
        .enumerate()
        .all(|(w, ((x, y), z))| {
            let m = x & y & z;
            if w == 0 {
                m & !1 == 0
            } else {
                m == 0
            }
        })
}

struct Space {
    group: AbelianGroup,
    triples: Vec<[FactorSpace; 3]>,
    estimate: u128,
}

fn build_space(spec: &SearchSpec) -> Result<Space> {
    let g = AbelianGroup::new(spec.group.clone())?;
    let o = g.order() as u128;
    if o * o * o > i64::MAX as u128 {
        return Err(Error::Overflow("|G|^3 exceeds 64-bit range"));
    }
    let mut triples = Vec::new();
    let mut estimate: u128 = 0;
    for ks in kernel_triples(&g, &spec.kernels)? {
        let mut spaces = Vec::with_capacity(3);
        for (k, &gp) in ks.iter().zip(&spec.g_prime) {
            spaces.push(factor_space(&g, k, gp, spec)?);
        }
        let n: u128 = spaces.iter().map(|s| s.candidates.len() as u128).product();
        estimate = estimate.saturating_add(n);
        if estimate > spec.cap {
            return Err(Error::SearchCap {
                estimate,
                cap: spec.cap,
            });
        }
        triples.push(spaces.try_into().ok().expect("three"));
    }
    Ok(Space {
        group: g,
        triples,
        estimate,
    })
}

/// Number of candidate triples the search would examine.
pub fn estimate(spec: &SearchSpec) -> Result<u128> {
    Ok(build_space(spec)?.estimate)
}

fn assemble(space: &Space, t: usize, idx: [usize; 3]) -> Result<AlgebraicDatum> {
    let fs = &space.triples[t];
    let kernels = [0, 1, 2].map(|i| fs[i].kernel.clone());
    let vectors = [0, 1, 2].map(|i| {
        let c = &fs[i].candidates[idx[i]];
        VectorSpec {
            g_prime: c.eta.len() as u32 / 2,
            branch: c.branch.clone(),
            eta: c.eta.clone(),
        }
    });
    AlgebraicDatum::new(space.group.clone(), kernels, vectors)
}

/// Free index triples of one work item `(t, i)`, in lexicographic order.
fn free_triples(space: &Space, t: usize, i: usize) -> Vec<[usize; 3]> {
    let fs = &space.triples[t];
    let a = &fs[0].candidates[i].fixed;
    let mut out = Vec::new();
    for (j, cj) in fs[1].candidates.iter().enumerate() {
        for (k, ck) in fs[2].candidates.iter().enumerate() {
            if is_free(a, &cj.fixed, &ck.fixed) {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Runs `f` over every free candidate in parallel; results come back in
/// the canonical order (kernel triple, then vector indices).
fn run<T: Send>(
    spec: &SearchSpec,
    seed: u64,
    f: impl Fn(AlgebraicDatum) -> Result<T> + Sync,
) -> Result<(u128, Vec<T>)> {
    let space = build_space(spec)?;
    let mut work: Vec<(usize, usize)> = space
        .triples
        .iter()
        .enumerate()
        .flat_map(|(t, fs)| (0..fs[0].candidates.len()).map(move |i| (t, i)))
        .collect();
    work.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut chunks: Vec<((usize, usize), Vec<T>)> = work
        .par_iter()
        .map(|&(t, i)| {
            let mut out = Vec::new();
            for idx in free_triples(&space, t, i) {
                let d = assemble(&space, t, idx)?;
                if !d.report().is_valid() {
                    return Err(Error::Consistency(format!(
                        "search emitted an invalid datum: {:?}",
                        d.report()
                    )));
                }
                out.push(f(d)?);
            }
            Ok(((t, i), out))
        })
        .collect::<Result<_>>()?;
    chunks.sort_by_key(|c| c.0);
    Ok((space.estimate, chunks.into_iter().flat_map(|c| c.1).collect()))
}

/// Every valid datum in the space, in canonical order.
pub fn enumerate_data(spec: &SearchSpec) -> Result<Vec<AlgebraicDatum>> {
    Ok(run(spec, DEFAULT_SEED, Ok)?.1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub factors: Vec<i64>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub factors: Vec<i64>,
    pub status: Aut0Status,
    pub datum: DatumDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survey {
    pub group: Vec<i64>,
    pub candidates: u128,
    pub count: usize,
    pub histogram: Vec<HistogramEntry>,
    pub statuses: BTreeMap<Aut0Status, usize>,
    /// first datum (in canonical order) with the largest quotient
    pub extremal: Option<Extremal>,
}

/// Computes `Aut_0` for every datum in the space. A `Proven` result outside
/// `{[], [2], [2,2]}` aborts with the offending datum in the message.
pub fn survey(spec: &SearchSpec, seed: u64) -> Result<Survey> {
    let (candidates, results) = run(spec, seed, |d| {
        let r = aut0(&d).map_err(|e| match e {
            Error::TheoremViolation(m) => Error::TheoremViolation(format!(
                "{m}; datum: {}",
                serde_json::to_string(&DatumDocument::from_datum(&d)).expect("serializable")
            )),
            e => e,
        })?;
        Ok((r.invariant_factors.factors().to_vec(), r.status, d))
    })?;
    let mut hist: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut statuses = BTreeMap::new();
    let mut extremal: Option<Extremal> = None;
    for (factors, status, d) in &results {
        *hist.entry(factors.clone()).or_default() += 1;
        *statuses.entry(*status).or_default() += 1;
        let order: i64 = factors.iter().product();
        let better = extremal
            .as_ref()
            .is_none_or(|e| order > e.factors.iter().product());
        if better {
            extremal = Some(Extremal {
                factors: factors.clone(),
                status: *status,
                datum: DatumDocument::from_datum(d),
            });
        }
    }
    Ok(Survey {
        group: spec.group.clone(),
        candidates,
        count: results.len(),
        histogram: hist
            .into_iter()
            .map(|(factors, count)| HistogramEntry { factors, count })
            .collect(),
        statuses,
        extremal,
    })
}
