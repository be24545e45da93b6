//! Admissible characters, the kernels `G_{p,q}` of `G^3` acting on
//! `H^{p,q}(X)`, and `Aut_0(X) = (G_{3,0}) / K Delta_G`.
//!
//! Characters of `G^3` are identified with `G^3` coordinate-wise, so an
//! intersection of kernels is one annihilator of the subgroup generated by
//! the characters involved.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::abelian::{
    pairing_weights, pairs_to_zero, AbelianGroup, Character, GroupElement, InvariantFactors,
    Subgroup,
};
use crate::datum::{AlgebraicDatum, RigidityClass};
use crate::error::{Error, Result};
use crate::hodge::{decompose, EigenDimTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleKind {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleCharacter {
    pub kind: AdmissibleKind,
    pub triple: [Character; 3],
}

impl AdmissibleCharacter {
    pub fn concatenated(&self) -> Vec<i64> {
        self.triple
            .iter()
            .flat_map(|c| c.exponents().iter().copied())
            .collect()
    }
}

/// `I_1` and `I_2`, each sorted lexicographically by triple.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Admissible {
    pub first: Vec<AdmissibleCharacter>,
    pub second: Vec<AdmissibleCharacter>,
}

impl Admissible {
    pub fn counts(&self) -> [usize; 2] {
        [self.first.len(), self.second.len()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &AdmissibleCharacter> {
        self.first.iter().chain(&self.second)
    }
}

/// `chi` vanishes on `K_i` and moves some stabilizer element of `C_i` (1-based `i`).
pub fn pre_admissible(datum: &AlgebraicDatum, i: usize, chi: &Character) -> Result<bool> {
    datum.group().check_same(chi.group())?;
    datum.factor(i)?.is_pre_admissible(chi)
}

fn pre_admissible_sets(datum: &AlgebraicDatum) -> Result<[Vec<GroupElement>; 3]> {
    let mut out: [Vec<GroupElement>; 3] = Default::default();
    for (slot, f) in out.iter_mut().zip(datum.factors()) {
        let perp = f.kernel().annihilator()?;
        let g = datum.group();
        let weights = pairing_weights(g);
        for x in perp.elements() {
            let moves = f
                .branch_reps()
                .iter()
                .any(|s| !pairs_to_zero(&weights, g.exponent(), x.exponents(), s.exponents()));
            if moves {
                slot.push(x);
            }
        }
        slot.sort();
    }
    Ok(out)
}

pub fn admissible_characters(datum: &AlgebraicDatum) -> Result<Admissible> {
    datum.require_well_formed()?;
    let g = datum.group();
    let p = pre_admissible_sets(datum)?;
    let sets: Vec<HashSet<&GroupElement>> = p.iter().map(|v| v.iter().collect()).collect();
    let ch = |x: &GroupElement| Character::from_element(x.clone());
    let zero = Character::trivial(g);

    let mut first = Vec::new();
    for a in &p[0] {
        for b in &p[1] {
            let c = a.try_add(b)?.neg();
            if sets[2].contains(&c) {
                first.push(AdmissibleCharacter {
                    kind: AdmissibleKind::First,
                    triple: [ch(a), ch(b), ch(&c)],
                });
            }
        }
    }
    let mut second = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for a in &p[i] {
            let b = a.neg();
            if sets[j].contains(&b) {
                let mut triple = [zero.clone(), zero.clone(), zero.clone()];
                triple[i] = ch(a);
                triple[j] = ch(&b);
                second.push(AdmissibleCharacter {
                    kind: AdmissibleKind::Second,
                    triple,
                });
            }
        }
    }
    first.sort();
    second.sort();
    Ok(Admissible { first, second })
}

/// Common kernel in `G^3` of the given characters of `G^3`.
fn common_kernel(
    cube: &AbelianGroup,
    chars: impl Iterator<Item = Vec<i64>>,
) -> Result<Subgroup> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(cube);
    for x in chars {
        if span.contains_exponents(&x) {
            continue;
        }
        gens.push(x);
        span = Subgroup::from_exponents(cube, &gens)?;
    }
    span.annihilator()
}

/// `ker` over `I_1 u I_2` (`second_only = false`) or over `I_2`.
pub fn admissible_kernel(datum: &AlgebraicDatum, second_only: bool) -> Result<Subgroup> {
    let adm = admissible_characters(datum)?;
    let cube = datum.cube()?;
    let list: Vec<&AdmissibleCharacter> = if second_only {
        adm.second.iter().collect()
    } else {
        adm.iter().collect()
    };
    common_kernel(&cube, list.into_iter().map(AdmissibleCharacter::concatenated))
}

/// `G_{p,q}`: the elements of `G^3` acting trivially on `H^{p,q}(X)`,
/// read off the characters that actually occur in its decomposition.
pub fn representation_kernel(datum: &AlgebraicDatum, p: usize, q: usize) -> Result<Subgroup> {
    let table = EigenDimTable::new(datum)?;
    kernel_from_table(datum, &table, p, q)
}

fn kernel_from_table(datum: &AlgebraicDatum, table: &EigenDimTable, p: usize, q: usize) -> Result<Subgroup> {
    let cube = datum.cube()?;
    let parts = decompose(table, p, q)?;
    let k = common_kernel(&cube, parts.iter().map(|c| c.concatenated()))?;
    let kd = datum.k_delta()?;
    if !kd.is_subgroup_of(&k)? {
        return Err(Error::Consistency(format!(
            "K Delta_G is not contained in G_{{{p},{q}}}"
        )));
    }
    Ok(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aut0Status {
    /// elliptic bases, cyclic kernels, free: the quotient is `Aut_0(X)`, a `Z_2^k`
    Proven,
    /// `q >= 4`
    TrivialByRigidity,
    /// `G_{3,0} / K Delta_G` without the guarantee that it is all of `Aut_0(X)`
    KernelOnly,
    /// the action is not free; the quotient is still computed
    NonFreeKernelOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aut0Result {
    pub status: Aut0Status,
    pub rigidity: RigidityClass,
    pub invariant_factors: InvariantFactors,
    /// Canonical coset representatives `(tau_1, tau_2, tau_3)` in `G^3`; the
    /// `i`-th has order `invariant_factors[i]` and together they generate.
    pub generators: Vec<[GroupElement; 3]>,
    /// `(|I_1|, |I_2|)`
    pub admissible_counts: [usize; 2],
}

impl Aut0Result {
    pub fn order(&self) -> i64 {
        self.invariant_factors.order()
    }
}

/// `true` iff `rep` in `G^3` is killed by every admissible character.
pub fn verify_generator(datum: &AlgebraicDatum, rep: &[GroupElement; 3]) -> Result<bool> {
    let adm = admissible_characters(datum)?;
    verify_against(&adm, rep)
}

fn verify_against(adm: &Admissible, rep: &[GroupElement; 3]) -> Result<bool> {
    for psi in adm.iter() {
        let mut total = crate::abelian::RationalAngle::ZERO;
        for (chi, tau) in psi.triple.iter().zip(rep) {
            total = total + chi.pairing(tau)?;
        }
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a `G^3` element into its three components.
pub fn split_triple(g: &AbelianGroup, x: &GroupElement) -> Result<[GroupElement; 3]> {
    let k = g.rank();
    if x.exponents().len() != 3 * k {
        return Err(Error::WidthMismatch {
            expected: 3 * k,
            found: x.exponents().len(),
        });
    }
    let e = x.exponents();
    Ok([
        g.element(&e[..k])?,
        g.element(&e[k..2 * k])?,
        g.element(&e[2 * k..])?,
    ])
}

/// Lexicographically least representative of `x + K Delta_G`, minimizing
/// the third component first (which makes it the identity).
struct CosetCanon {
    k: usize,
    permuted: Subgroup,
}

impl CosetCanon {
    fn new(kd: &Subgroup, k: usize) -> Result<Self> {
        let perm: Vec<usize> = (2 * k..3 * k).chain(0..2 * k).collect();
        Ok(CosetCanon {
            k,
            permuted: kd.permuted(&perm)?,
        })
    }

    fn canon(&self, x: &[i64]) -> Vec<i64> {
        let k = self.k;
        let y: Vec<i64> = x[2 * k..].iter().chain(&x[..2 * k]).copied().collect();
        let m = self.permuted.coset_minimum(&y);
        m[k..].iter().chain(&m[..k]).copied().collect()
    }
}

/// Largest quotient for which generators are chosen by exhaustive greedy search.
const GREEDY_LIMIT: i64 = 4096;

fn order_modulo(h: &Subgroup, x: &GroupElement, bound: i64) -> i64 {
    let mut y = x.clone();
    for k in 1..=bound {
        if h.contains_exponents(y.exponents()) {
            return k;
        }
        y = y.try_add(x).expect("same parent");
    }
    bound + 1
}

/// Canonical generators of `kernel / kd`, in the order of the invariant factors.
fn quotient_generators(
    kernel: &Subgroup,
    kd: &Subgroup,
    canon: &CosetCanon,
) -> Result<(InvariantFactors, Vec<GroupElement>)> {
    let quotient = kernel.quotient_by(kd)?;
    let factors = quotient.factors().clone();
    let cube = kernel.ambient().clone();
    let snf_gens = || -> Vec<GroupElement> {
        quotient
            .generators()
            .iter()
            .map(|g| cube.element_unchecked(canon.canon(g.exponents())))
            .collect()
    };
    if factors.is_trivial() || quotient.order() > GREEDY_LIMIT {
        return Ok((factors, snf_gens()));
    }
    // every coset once, by canonical representative
    let qg = quotient.group();
    let mut reps: Vec<GroupElement> = Vec::with_capacity(quotient.order() as usize);
    for c in qg.elements() {
        let x = quotient.lift(c.exponents())?;
        reps.push(cube.element_unchecked(canon.canon(x.exponents())));
    }
    reps.sort();
    reps.dedup();

    let mut chosen: Vec<GroupElement> = Vec::new();
    let mut span = kd.clone();
    loop {
        let rest = kernel.quotient_by(&span)?;
        let Some(&e) = rest.factors().factors().last() else {
            break;
        };
        let pick = reps.iter().find(|x| {
            order_modulo(&span, x, e) == e && order_modulo(kd, x, e) == e
        });
        let Some(x) = pick else {
            return Ok((factors, snf_gens()));
        };
        span = span.sum(&Subgroup::generate(&cube, std::slice::from_ref(x))?)?;
        chosen.push(x.clone());
    }
    chosen.reverse();
    let orders: Vec<i64> = chosen.iter().map(|x| order_modulo(kd, x, GREEDY_LIMIT)).collect();
    if orders != factors.factors() {
        return Ok((factors, snf_gens()));
    }
    Ok((factors, chosen))
}

/// `Aut_0(X)` as `G_{3,0} / K Delta_G` with generators and a status tag.
pub fn aut0(datum: &AlgebraicDatum) -> Result<Aut0Result> {
    datum.require_well_formed()?;
    let g = datum.group();
    let rigidity = datum.rigidity_class();
    let adm = admissible_characters(datum)?;
    let admissible_counts = adm.counts();
    let report = datum.report();

    let status = if !datum.is_free() {
        Aut0Status::NonFreeKernelOnly
    } else if !report.flags.genera_at_least_two {
        Aut0Status::KernelOnly
    } else {
        match rigidity {
            RigidityClass::TrivialByRigidity => Aut0Status::TrivialByRigidity,
            RigidityClass::Aut0Computable => Aut0Status::Proven,
            RigidityClass::KernelOnly | RigidityClass::Unsupported => Aut0Status::KernelOnly,
        }
    };
    if status == Aut0Status::TrivialByRigidity {
        return Ok(Aut0Result {
            status,
            rigidity,
            invariant_factors: InvariantFactors::trivial(),
            generators: Vec::new(),
            admissible_counts,
        });
    }

    let table = EigenDimTable::new(datum)?;
    let kernel = kernel_from_table(datum, &table, 3, 0)?;
    if datum.factors().iter().all(|f| f.g_prime() >= 1) {
        let dual = admissible_kernel(datum, false)?;
        if dual != kernel {
            return Err(Error::Consistency(
                "kernel on H^{3,0} differs from the kernel of the admissible characters".into(),
            ));
        }
    }
    let kd = datum.k_delta()?;
    let canon = CosetCanon::new(&kd, g.rank())?;
    let (factors, gens) = quotient_generators(&kernel, &kd, &canon)?;
    let mut generators = Vec::with_capacity(gens.len());
    for x in &gens {
        let t = split_triple(g, x)?;
        if !verify_against(&adm, &t)? {
            return Err(Error::Consistency(format!(
                "generator {:?} is moved by an admissible character",
                x.exponents()
            )));
        }
        generators.push(t);
    }

    let hypotheses = datum.is_free() && datum.q() == 3 && report.flags.elliptic_bases;
    if status == Aut0Status::Proven && !factors.is_two_elementary() {
        return Err(Error::TheoremViolation(format!(
            "cyclic kernels and q = 3 but Aut_0 = {factors} is not 2-elementary"
        )));
    }
    if matches!(status, Aut0Status::Proven | Aut0Status::KernelOnly) && hypotheses && factors.order() > 4 {
        return Err(Error::TheoremViolation(format!(
            "q = 3 with elliptic bases but |Aut_0| = {} > 4",
            factors.order()
        )));
    }
    Ok(Aut0Result {
        status,
        rigidity,
        invariant_factors: factors,
        generators,
        admissible_counts,
    })
}
