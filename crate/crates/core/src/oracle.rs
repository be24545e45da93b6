//! Brute-force reference implementations. Nothing here uses Hermite or
//! Smith forms: subgroups are explicit element sets built by closure,
//! quotients come from coset tables, and Hodge numbers from plain loops
//! over triples of characters. Used by tests and by `--oracle`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, InvariantFactors, Subgroup};
use crate::datum::AlgebraicDatum;
use crate::error::{Error, Result};
use crate::hodge::HodgeDiamond;

/// Default bound on the number of elements any oracle routine may touch.
pub const DEFAULT_CAP: u128 = 1 << 18;

type Tuple = Vec<i64>;

/// An explicit, sorted set of exponent tuples of one ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    ambient: AbelianGroup,
    members: Vec<Tuple>,
}

impl ElementSet {
    fn from_set(ambient: &AbelianGroup, set: HashSet<Tuple>) -> Self {
        let mut members: Vec<Tuple> = set.into_iter().collect();
        members.sort();
        ElementSet {
            ambient: ambient.clone(),
            members,
        }
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn members(&self) -> &[Tuple] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.members.binary_search_by(|m| m.as_slice().cmp(x)).is_ok()
    }

    fn as_hash(&self) -> HashSet<Tuple> {
        self.members.iter().cloned().collect()
    }
}

fn check_cap(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::OracleScale { size, cap })
    } else {
        Ok(())
    }
}

fn add(orders: &[i64], a: &[i64], b: &[i64]) -> Tuple {
    a.iter()
        .zip(b)
        .zip(orders)
        .map(|((&x, &y), &n)| (x + y).rem_euclid(n))
        .collect()
}

fn neg(orders: &[i64], a: &[i64]) -> Tuple {
    a.iter().zip(orders).map(|(&x, &n)| (-x).rem_euclid(n)).collect()
}

fn reduce(orders: &[i64], a: &[i64]) -> Tuple {
    a.iter().zip(orders).map(|(&x, &n)| x.rem_euclid(n)).collect()
}

/// Every element of the ambient group, by an odometer over the coordinates.
fn all_elements(g: &AbelianGroup, cap: u128) -> Result<Vec<Tuple>> {
    check_cap(g.order() as u128, cap)?;
    let mut out = vec![vec![0i64; g.rank()]];
    for (j, &n) in g.orders().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for v in &out {
            for a in 0..n {
                let mut w = v.clone();
                w[j] = a;
                next.push(w);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Closure of `gens` under addition, starting from the identity.
pub fn closure(g: &AbelianGroup, gens: &[Tuple], cap: u128) -> Result<ElementSet> {
    let orders = g.orders();
    let gens: Vec<Tuple> = gens.iter().map(|x| reduce(orders, x)).collect();
    let zero = vec![0i64; g.rank()];
    let mut seen: HashSet<Tuple> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for s in &gens {
            let y = add(orders, &x, s);
            if seen.insert(y.clone()) {
                check_cap(seen.len() as u128, cap)?;
                frontier.push(y);
            }
        }
    }
    Ok(ElementSet::from_set(g, seen))
}

/// The elements of `H`, rebuilt from its generators by closure.
pub fn enumerate_subgroup(h: &Subgroup, cap: u128) -> Result<ElementSet> {
    let gens: Vec<Tuple> = h.generators().iter().map(|x| x.exponents().to_vec()).collect();
    closure(h.ambient(), &gens, cap)
}

pub fn intersection(a: &ElementSet, b: &ElementSet) -> ElementSet {
    let set: HashSet<Tuple> = a.members.iter().filter(|x| b.contains(x)).cloned().collect();
    ElementSet::from_set(&a.ambient, set)
}

pub fn sum(a: &ElementSet, b: &ElementSet, cap: u128) -> Result<ElementSet> {
    check_cap(a.len() as u128 * b.len() as u128, cap.saturating_mul(cap))?;
    let orders = a.ambient.orders();
    let mut set = HashSet::new();
    for x in &a.members {
        for y in &b.members {
            set.insert(add(orders, x, y));
        }
        check_cap(set.len() as u128, cap)?;
    }
    Ok(ElementSet::from_set(&a.ambient, set))
}

/// `sum_j a_j x_j / n_j` is an integer.
fn pairs_trivially(orders: &[i64], a: &[i64], x: &[i64]) -> bool {
    pairing_fraction(orders, a, x).0 == 0
}

/// `sum_j a_j x_j / n_j mod 1` as a reduced `(num, den)`.
fn pairing_fraction(orders: &[i64], a: &[i64], x: &[i64]) -> (i128, i128) {
    let mut num: i128 = 0;
    let mut den: i128 = 1;
    for ((&aj, &xj), &n) in a.iter().zip(x).zip(orders) {
        let n = n as i128;
        num = num * n + (aj as i128 * xj as i128) * den;
        den *= n;
        let g = gcd128(num, den);
        num /= g;
        den /= g;
    }
    (num.rem_euclid(den), den)
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// All characters killing every member of `h`.
pub fn annihilator(h: &ElementSet, cap: u128) -> Result<ElementSet> {
    let g = &h.ambient;
    check_cap(g.order() as u128 * h.len() as u128, cap.saturating_mul(cap))?;
    let set = all_elements(g, cap)?
        .into_iter()
        .filter(|a| h.members.iter().all(|x| pairs_trivially(g.orders(), a, x)))
        .collect();
    Ok(ElementSet::from_set(g, set))
}

/// Order of `x` modulo the set `h` (which must be a subgroup).
fn order_modulo(orders: &[i64], h: &HashSet<Tuple>, x: &[i64]) -> i64 {
    let mut y = x.to_vec();
    let mut k = 1;
    while !h.contains(&y) {
        y = add(orders, &y, x);
        k += 1;
    }
    k
}

/// Invariant factors of `num / den` (both subgroups of one ambient group,
/// `den` inside `num`), by repeatedly splitting off a cyclic factor
/// generated by an element of maximal order.
pub fn brute_quotient_sets(num: &ElementSet, den: &ElementSet, cap: u128) -> Result<InvariantFactors> {
    let orders = num.ambient.orders();
    if !den.members.iter().all(|x| num.contains(x)) {
        return Err(Error::NotSubgroup("denominator"));
    }
    let mut span = den.as_hash();
    let mut factors = Vec::new();
    while span.len() < num.len() {
        let (best, e) = num
            .members
            .iter()
            .map(|x| (x, order_modulo(orders, &span, x)))
            .max_by_key(|&(x, e)| (e, std::cmp::Reverse(x.clone())))
            .expect("nonempty");
        factors.push(e);
        // span + <best>
        let mut next = span.clone();
        let mut m = best.clone();
        for _ in 1..e {
            for s in &span {
                next.insert(add(orders, s, &m));
            }
            m = add(orders, &m, best);
        }
        check_cap(next.len() as u128, cap)?;
        span = next;
    }
    factors.reverse();
    InvariantFactors::new(factors)
        .map_err(|e| Error::Consistency(format!("order census gave no divisibility chain: {e}")))
}

/// Invariant factors of `G / H` from the coset table.
pub fn brute_quotient(g: &AbelianGroup, h: &Subgroup, cap: u128) -> Result<InvariantFactors> {
    let whole = ElementSet::from_set(g, all_elements(g, cap)?.into_iter().collect());
    let hs = enumerate_subgroup(h, cap)?;
    brute_quotient_sets(&whole, &hs, cap)
}

/// Per factor: the branch representatives, the kernel as a set and `g'`.
struct FactorView {
    kernel: ElementSet,
    branch: Vec<Tuple>,
    g_prime: i64,
}

fn views(d: &AlgebraicDatum, cap: u128) -> Result<Vec<FactorView>> {
    d.factors()
        .iter()
        .map(|f| {
            Ok(FactorView {
                kernel: enumerate_subgroup(f.kernel(), cap)?,
                branch: f.branch_reps().iter().map(|x| x.exponents().to_vec()).collect(),
                g_prime: f.g_prime() as i64,
            })
        })
        .collect()
}

/// `Sigma_i^G`: every `g` with `g - k sigma_j` in `K_i` for some `j, k`.
fn stabilizer_preimage(g: &AbelianGroup, v: &FactorView, cap: u128) -> Result<HashSet<Tuple>> {
    let orders = g.orders();
    let mut out: HashSet<Tuple> = v.kernel.as_hash();
    for s in &v.branch {
        let cyc = closure(g, std::slice::from_ref(s), cap)?;
        for c in &cyc.members {
            for k in &v.kernel.members {
                out.insert(add(orders, c, k));
            }
        }
        check_cap(out.len() as u128, cap)?;
    }
    Ok(out)
}

/// First pair (1-based) of kernels meeting nontrivially.
pub fn brute_minimality(d: &AlgebraicDatum, cap: u128) -> Result<Option<[usize; 2]>> {
    let v = views(d, cap)?;
    for i in 0..3 {
        for j in i + 1..3 {
            if intersection(&v[i].kernel, &v[j].kernel).len() > 1 {
                return Ok(Some([i + 1, j + 1]));
            }
        }
    }
    Ok(None)
}

/// Smallest nonzero element of `Sigma_1 & Sigma_2 & Sigma_3`.
pub fn brute_freeness(d: &AlgebraicDatum, cap: u128) -> Result<Option<Tuple>> {
    let g = d.group();
    let v = views(d, cap)?;
    let s: Vec<HashSet<Tuple>> = v
        .iter()
        .map(|f| stabilizer_preimage(g, f, cap))
        .collect::<Result<_>>()?;
    let common: BTreeSet<Tuple> = s[0]
        .iter()
        .filter(|x| s[1].contains(*x) && s[2].contains(*x) && x.iter().any(|&c| c != 0))
        .cloned()
        .collect();
    Ok(common.into_iter().next())
}

/// `D_i(chi)` for every character of `G`, straight from the
/// Chevalley–Weil formula evaluated on representatives in `G`.
fn brute_dims(g: &AbelianGroup, v: &FactorView, chars: &[Tuple]) -> Result<Vec<u64>> {
    let orders = g.orders();
    let kset = v.kernel.as_hash();
    // orders of the branch elements modulo K_i
    let m: Vec<i64> = v.branch.iter().map(|s| order_modulo(orders, &kset, s)).collect();
    let mut out = Vec::with_capacity(chars.len());
    for a in chars {
        if !v.kernel.members.iter().all(|k| pairs_trivially(orders, a, k)) {
            out.push(0);
            continue;
        }
        // (g'-1) + sum k_j/m_j + [a = 0], as a fraction over L = lcm(m_j)
        let l = m.iter().fold(1i128, |acc, &x| acc / gcd128(acc, x as i128) * x as i128);
        let mut total: i128 = (v.g_prime as i128 - 1) * l;
        for (s, &mj) in v.branch.iter().zip(&m) {
            let (num, den) = pairing_fraction(orders, a, s);
            if (mj as i128) % den != 0 {
                return Err(Error::Consistency("character value outside mu_m".into()));
            }
            total += num * (l / den);
        }
        if a.iter().all(|&x| x == 0) {
            total += l;
        }
        if total % l != 0 || total < 0 {
            return Err(Error::Consistency(format!("non-integral multiplicity {total}/{l}")));
        }
        out.push((total / l) as u64);
    }
    Ok(out)
}

/// Hodge diamond from naive loops over pairs and triples of characters.
pub fn brute_hodge(d: &AlgebraicDatum, cap: u128) -> Result<HodgeDiamond> {
    let g = d.group();
    let n = g.order() as u128;
    check_cap(n * n * n, cap)?;
    let orders = g.orders();
    let chars = all_elements(g, cap)?;
    let v = views(d, cap)?;
    let dims: Vec<Vec<u64>> = v
        .iter()
        .map(|f| brute_dims(g, f, &chars))
        .collect::<Result<_>>()?;
    let is_zero = |x: &[i64]| x.iter().all(|&c| c == 0);
    let sums_to_zero = |a: &[i64], b: &[i64], c: &[i64]| is_zero(&add(orders, &add(orders, a, b), c));
    let z = chars.iter().position(|x| is_zero(x)).expect("identity");

    let h10: u64 = (0..3).map(|i| dims[i][z]).sum();
    let mut h20 = 0;
    let mut mixed11 = 0;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for (x, a) in chars.iter().enumerate() {
            for (y, b) in chars.iter().enumerate() {
                let prod = dims[i][x] * dims[j][y];
                if prod == 0 {
                    continue;
                }
                if is_zero(&add(orders, a, b)) {
                    h20 += prod;
                }
                if a == b {
                    mixed11 += prod;
                }
            }
        }
    }
    let h11 = 3 + 2 * mixed11;
    let mut h30 = 0;
    let mut h21 = 2 * h10;
    for (x, a) in chars.iter().enumerate() {
        for (y, b) in chars.iter().enumerate() {
            for (w, c) in chars.iter().enumerate() {
                let prod = dims[0][x] * dims[1][y] * dims[2][w];
                if prod == 0 {
                    continue;
                }
                if sums_to_zero(a, b, c) {
                    h30 += prod;
                }
                let (na, nb, nc) = (neg(orders, a), neg(orders, b), neg(orders, c));
                for (p, q, r) in [(&na, b, c), (a, &nb, c), (a, b, &nc)] {
                    if sums_to_zero(p, q, r) {
                        h21 += prod;
                    }
                }
            }
        }
    }
    Ok(HodgeDiamond::from_primitive(h10, h20, h30, h11, h21))
}

/// Elements of `G^3` killed by every listed character of `G^3`.
pub fn brute_kernel(d: &AlgebraicDatum, characters: &[Tuple], cap: u128) -> Result<ElementSet> {
    let cube = d.cube()?;
    let orders = cube.orders();
    let set = all_elements(&cube, cap)?
        .into_iter()
        .filter(|x| characters.iter().all(|a| pairs_trivially(orders, a, x)))
        .collect();
    Ok(ElementSet::from_set(&cube, set))
}

/// Admissible triples `(I_1, I_2)` as concatenated exponent tuples, by
/// scanning all characters against stabilizer preimages.
pub fn brute_admissible(d: &AlgebraicDatum, cap: u128) -> Result<(Vec<Tuple>, Vec<Tuple>)> {
    let g = d.group();
    let orders = g.orders();
    let chars = all_elements(g, cap)?;
    let v = views(d, cap)?;
    let mut pre: Vec<Vec<Tuple>> = Vec::new();
    for f in &v {
        let sigma = stabilizer_preimage(g, f, cap)?;
        let p = chars
            .iter()
            .filter(|a| f.kernel.members.iter().all(|k| pairs_trivially(orders, a, k)))
            .filter(|a| sigma.iter().any(|s| !pairs_trivially(orders, a, s)))
            .cloned()
            .collect();
        pre.push(p);
    }
    let zero = vec![0i64; g.rank()];
    let cat = |a: &[i64], b: &[i64], c: &[i64]| [a, b, c].concat();
    let mut first = Vec::new();
    for a in &pre[0] {
        for b in &pre[1] {
            for c in &pre[2] {
                if is_zero_sum(orders, a, b, c) {
                    first.push(cat(a, b, c));
                }
            }
        }
    }
    let mut second = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for a in &pre[i] {
            for b in &pre[j] {
                if add(orders, a, b).iter().all(|&x| x == 0) {
                    let mut t = [zero.clone(), zero.clone(), zero.clone()];
                    t[i] = a.clone();
                    t[j] = b.clone();
                    second.push(t.concat());
                }
            }
        }
    }
    first.sort();
    second.sort();
    Ok((first, second))
}

fn is_zero_sum(orders: &[i64], a: &[i64], b: &[i64], c: &[i64]) -> bool {
    add(orders, &add(orders, a, b), c).iter().all(|&x| x == 0)
}

/// `K Delta_G` as an element set.
pub fn brute_k_delta(d: &AlgebraicDatum, cap: u128) -> Result<ElementSet> {
    let g = d.group();
    let k = g.rank();
    let cube = d.cube()?;
    let mut gens = Vec::new();
    for (slot, f) in d.factors().iter().enumerate() {
        for x in f.kernel().generators() {
            let mut t = vec![0i64; 3 * k];
            t[slot * k..(slot + 1) * k].copy_from_slice(x.exponents());
            gens.push(t);
        }
    }
    for j in 0..k {
        let mut t = vec![0i64; 3 * k];
        for s in 0..3 {
            t[s * k + j] = 1;
        }
        gens.push(t);
    }
    closure(&cube, &gens, cap)
}

/// `(kernel of I) / K Delta_G` entirely by enumeration.
pub fn brute_aut0(d: &AlgebraicDatum, cap: u128) -> Result<(ElementSet, InvariantFactors)> {
    let (first, second) = brute_admissible(d, cap)?;
    let chars: Vec<Tuple> = first.into_iter().chain(second).collect();
    let kernel = brute_kernel(d, &chars, cap)?;
    let kd = brute_k_delta(d, cap)?;
    let factors = brute_quotient_sets(&kernel, &kd, cap)?;
    Ok((kernel, factors))
}

/// Outcome of comparing the fast path against this module on one datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleAgreement {
    pub minimality: bool,
    pub freeness: bool,
    pub hodge: Option<bool>,
    pub admissible: bool,
    pub kernel: bool,
    pub aut0_factors: bool,
}

impl OracleAgreement {
    pub fn all(&self) -> bool {
        self.minimality
            && self.freeness
            && self.hodge.unwrap_or(true)
            && self.admissible
            && self.kernel
            && self.aut0_factors
    }
}

/// Runs every oracle against the fast path. The datum must be well formed.
pub fn cross_check(d: &AlgebraicDatum, cap: u128) -> Result<OracleAgreement> {
    let report = d.report();
    let minimality = brute_minimality(d, cap)? == report.minimality.witness;
    let freeness = brute_freeness(d, cap)? == report.freeness.witness;
    let hodge = match crate::hodge::hodge_diamond(d) {
        Ok(h) => Some(brute_hodge(d, cap)? == h),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e),
    };
    let adm = crate::aut0::admissible_characters(d)?;
    let fast_first: Vec<Tuple> = adm.first.iter().map(|a| a.concatenated()).collect();
    let fast_second: Vec<Tuple> = adm.second.iter().map(|a| a.concatenated()).collect();
    let (first, second) = brute_admissible(d, cap)?;
    let admissible = fast_first == first && fast_second == second;

    let (kernel_set, factors) = brute_aut0(d, cap)?;
    let fast_kernel = crate::aut0::admissible_kernel(d, false)?;
    let kernel = fast_kernel.order() as usize == kernel_set.len()
        && kernel_set.members.iter().all(|x| fast_kernel.contains_exponents(x));
    let fast = crate::aut0::aut0(d)?;
    let aut0_factors = fast.status == crate::aut0::Aut0Status::TrivialByRigidity
        || fast.invariant_factors == factors;
    Ok(OracleAgreement {
        minimality,
        freeness,
        hodge,
        admissible,
        kernel,
        aut0_factors,
    })
}
