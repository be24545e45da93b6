//! Hodge numbers of `X = (C1 x C2 x C3) / G` and the isotypic decomposition
//! of `H^{p,q}(X)` under `G^3 / K Delta_G`.
//!
//! Everything is driven by the tables `D_i(chi) = dim H^{1,0}(C_i)^chi`,
//! indexed by characters of `G` vanishing on `K_i`. Hodge numbers are
//! multiplicities of the trivial character in the Künneth pieces, computed
//! as exact convolutions over the dual group.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, Character};
use crate::datum::AlgebraicDatum;
use crate::error::{Error, Result};

type Key = Vec<i64>;

/// Sparse `D_1, D_2, D_3`; characters missing from a table have dimension 0.
#[derive(Clone, Debug)]
pub struct EigenDimTable {
    group: AbelianGroup,
    sorted: [Vec<(Key, u64)>; 3],
    lookup: [HashMap<Key, u64>; 3],
}

impl EigenDimTable {
    pub fn new(datum: &AlgebraicDatum) -> Result<Self> {
        datum.require_well_formed()?;
        let genera = datum.genera()?;
        let mut sorted: [Vec<(Key, u64)>; 3] = Default::default();
        for (i, f) in datum.factors().iter().enumerate() {
            let table = f.vector().cw_table()?;
            let mut rows = Vec::new();
            for (b, dim) in &table.entries {
                if *dim == 0 {
                    continue;
                }
                let a = f.quotient().pullback(b.exponents())?;
                rows.push((a, *dim));
            }
            rows.sort();
            let total: u64 = rows.iter().map(|r| r.1).sum();
            if total as i64 != genera[i] {
                return Err(Error::Consistency(format!(
                    "eigenspace dimensions of C_{} sum to {total}, genus is {}",
                    i + 1,
                    genera[i]
                )));
            }
            sorted[i] = rows;
        }
        let lookup = [0, 1, 2].map(|i| sorted[i].iter().cloned().collect());
        let t = EigenDimTable {
            group: datum.group().clone(),
            sorted,
            lookup,
        };
        for (i, f) in datum.factors().iter().enumerate() {
            let zero = vec![0; t.group.rank()];
            if t.get(i, &zero) != f.g_prime() as u64 {
                return Err(Error::Consistency(format!(
                    "trivial eigenspace of C_{} differs from g'",
                    i + 1
                )));
            }
        }
        Ok(t)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `D_{i+1}(chi)` for a reduced exponent tuple (0-based `i`).
    pub fn get(&self, i: usize, chi: &[i64]) -> u64 {
        self.lookup[i].get(chi).copied().unwrap_or(0)
    }

    pub fn dimension(&self, i: usize, chi: &Character) -> Result<u64> {
        self.group.check_same(chi.group())?;
        Ok(self.get(i, chi.exponents()))
    }

    /// Characters with `D_{i+1} > 0`, sorted.
    pub fn support(&self, i: usize) -> &[(Key, u64)] {
        &self.sorted[i]
    }

    pub fn total(&self, i: usize) -> u64 {
        self.sorted[i].iter().map(|r| r.1).sum()
    }

    fn neg(&self, a: &[i64]) -> Key {
        a.iter()
            .zip(self.group.orders())
            .map(|(&x, &n)| (n - x) % n)
            .collect()
    }

    fn add(&self, a: &[i64], b: &[i64]) -> Key {
        a.iter()
            .zip(b)
            .zip(self.group.orders())
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect()
    }
}

/// `h[p][q]` for `0 <= p, q <= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub h: [[u64; 4]; 4],
}

impl HodgeDiamond {
    /// Fills the diamond from `h^{1,0}, h^{2,0}, h^{3,0}, h^{1,1}, h^{2,1}`.
    pub fn from_primitive(h10: u64, h20: u64, h30: u64, h11: u64, h21: u64) -> Self {
        let mut h = [[0u64; 4]; 4];
        h[0][0] = 1;
        h[1][0] = h10;
        h[2][0] = h20;
        h[3][0] = h30;
        h[1][1] = h11;
        h[2][1] = h21;
        for p in 0..4 {
            for q in 0..p {
                h[q][p] = h[p][q];
            }
        }
        for p in 0..4 {
            for q in 0..4 {
                if p + q > 3 {
                    h[p][q] = h[3 - p][3 - q];
                }
            }
        }
        HodgeDiamond { h }
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.h[p][q]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|p| (0..4).all(|q| self.h[p][q] == self.h[q][p] && self.h[p][q] == self.h[3 - p][3 - q]))
            && self.h[0][0] == 1
    }

    /// `chi(O_X) = sum_q (-1)^q h^{0,q}`.
    pub fn chi_o(&self) -> i64 {
        (0..4).map(|q| sign(q) * self.h[0][q] as i64).sum()
    }

    /// Topological Euler number, the alternating sum of all entries.
    pub fn euler(&self) -> i64 {
        let mut e = 0;
        for p in 0..4 {
            for q in 0..4 {
                e += sign(p + q) * self.h[p][q] as i64;
            }
        }
        e
    }

    /// Betti numbers `b_0 .. b_6`.
    pub fn betti(&self) -> [u64; 7] {
        let mut b = [0u64; 7];
        for p in 0..4 {
            for q in 0..4 {
                b[p + q] += self.h[p][q];
            }
        }
        b
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One isotypic piece `H^{p,q}(X)^psi`, `psi = chi_1 (x) chi_2 (x) chi_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicComponent {
    pub psi: [Character; 3],
    pub dimension: u64,
}

impl IsotypicComponent {
    /// `psi` as exponents of a character of `G^3`.
    pub fn concatenated(&self) -> Vec<i64> {
        self.psi.iter().flat_map(|c| c.exponents().iter().copied()).collect()
    }
}

/// Maps `(p, q)` to one of `(0,0), (1,0), (2,0), (1,1), (3,0), (2,1)` via
/// conjugation and Serre duality; the flag says whether characters flip sign.
fn normalize(p: usize, q: usize) -> Result<(usize, usize, bool)> {
    if p > 3 || q > 3 {
        return Err(Error::InvalidParameter(format!("bidegree ({p},{q}) out of range")));
    }
    let (mut p, mut q, mut flip) = (p, q, false);
    if p + q > 3 {
        (p, q, flip) = (3 - p, 3 - q, !flip);
    }
    if p < q {
        (p, q, flip) = (q, p, !flip);
    }
    Ok((p, q, flip))
}

/// All pieces of `H^{p,q}(X)` with positive dimension, sorted by `psi`.
pub fn isotypic_decomposition(
    datum: &AlgebraicDatum,
    p: usize,
    q: usize,
) -> Result<Vec<IsotypicComponent>> {
    let table = EigenDimTable::new(datum)?;
    decompose(&table, p, q)
}

pub(crate) fn decompose(t: &EigenDimTable, p: usize, q: usize) -> Result<Vec<IsotypicComponent>> {
    let (p, q, flip) = normalize(p, q)?;
    let raw = match (p, q) {
        (0, 0) => base_trivial(t, 1),
        (1, 0) => base_trivial(t, (0..3).map(|i| t.get(i, &zero(t))).sum()),
        (2, 0) => base_20(t),
        (1, 1) => base_11(t),
        (3, 0) => base_30(t),
        (2, 1) => base_21(t),
        _ => unreachable!("normalized bidegree"),
    };
    let g = &t.group;
    let mut out = raw
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .map(|(psi, dimension)| {
            let psi = psi.map(|k| {
                let k = if flip { t.neg(&k) } else { k };
                Character::from_element(g.element_unchecked(k))
            });
            IsotypicComponent { psi, dimension }
        })
        .collect::<Vec<_>>();
    if flip {
        out.sort_by(|a, b| a.psi.cmp(&b.psi));
    }
    Ok(out)
}

type Pieces = BTreeMap<[Key; 3], u64>;

fn zero(t: &EigenDimTable) -> Key {
    vec![0; t.group.rank()]
}

fn base_trivial(t: &EigenDimTable, dim: u64) -> Pieces {
    let z = zero(t);
    let mut m = Pieces::new();
    m.insert([z.clone(), z.clone(), z], dim);
    m
}

fn place(t: &EigenDimTable, slots: [(usize, Key); 2]) -> [Key; 3] {
    let mut psi = [zero(t), zero(t), zero(t)];
    for (i, k) in slots {
        psi[i] = k;
    }
    psi
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// `H^{1,0}(C_i) (x) H^{1,0}(C_j)`: `psi = chi` at `i`, `-chi` at `j`.
fn base_20(t: &EigenDimTable) -> Pieces {
    let mut m = Pieces::new();
    for (i, j) in PAIRS {
        for (a, da) in t.support(i) {
            let b = t.neg(a);
            let db = t.get(j, &b);
            if db > 0 {
                *m.entry(place(t, [(i, a.clone()), (j, b)])).or_default() += da * db;
            }
        }
    }
    m
}

/// `H^{1,1}(C_i)` (trivial) and `H^{1,0}(C_i) (x) H^{0,1}(C_j)` for `i != j`.
fn base_11(t: &EigenDimTable) -> Pieces {
    let mut m = base_trivial(t, 3);
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for (a, da) in t.support(i) {
                let db = t.get(j, a);
                if db > 0 {
                    *m.entry(place(t, [(i, a.clone()), (j, t.neg(a))])).or_default() += da * db;
                }
            }
        }
    }
    m
}

fn base_30(t: &EigenDimTable) -> Pieces {
    let mut m = Pieces::new();
    for (a, da) in t.support(0) {
        for (b, db) in t.support(1) {
            let c = t.neg(&t.add(a, b));
            let dc = t.get(2, &c);
            if dc > 0 {
                *m.entry([a.clone(), b.clone(), c]).or_default() += da * db * dc;
            }
        }
    }
    m
}

/// `H^{1,0}(C_i) (x) H^{1,0}(C_j) (x) H^{0,1}(C_k)` for each choice of the
/// conjugated slot `k`, plus `H^{1,1}(C_i) (x) H^{1,0}(C_j)` on the trivial character.
fn base_21(t: &EigenDimTable) -> Pieces {
    let mut m = base_trivial(t, 2 * (0..3).map(|i| t.get(i, &zero(t))).sum::<u64>());
    for (k, (i, j)) in [(2, (0, 1)), (1, (0, 2)), (0, (1, 2))] {
        for (a, da) in t.support(i) {
            for (b, db) in t.support(j) {
                let c = t.add(a, b);
                let dc = t.get(k, &c);
                if dc > 0 {
                    let mut psi = [zero(t), zero(t), zero(t)];
                    psi[i] = a.clone();
                    psi[j] = b.clone();
                    psi[k] = t.neg(&c);
                    *m.entry(psi).or_default() += da * db * dc;
                }
            }
        }
    }
    m
}

pub(crate) fn diamond_from_table(t: &EigenDimTable) -> Result<HodgeDiamond> {
    let total = |p, q| -> Result<u64> { Ok(decompose(t, p, q)?.iter().map(|c| c.dimension).sum()) };
    Ok(HodgeDiamond::from_primitive(
        total(1, 0)?,
        total(2, 0)?,
        total(3, 0)?,
        total(1, 1)?,
        total(2, 1)?,
    ))
}

/// The Hodge diamond; for free actions it is checked against the product
/// formulas for `chi(O_X)` and `e(X)`.
pub fn hodge_diamond(datum: &AlgebraicDatum) -> Result<HodgeDiamond> {
    let table = EigenDimTable::new(datum)?;
    let d = diamond_from_table(&table)?;
    if !d.is_symmetric() {
        return Err(Error::Consistency(format!("asymmetric diamond {:?}", d.h)));
    }
    if datum.is_free() {
        let inv = datum.invariants()?;
        if d.chi_o() != inv.chi_o {
            return Err(Error::Consistency(format!(
                "chi(O_X): diamond gives {}, genera give {}",
                d.chi_o(),
                inv.chi_o
            )));
        }
        if d.euler() != inv.euler {
            return Err(Error::Consistency(format!(
                "e(X): diamond gives {}, genera give {}",
                d.euler(),
                inv.euler
            )));
        }
    }
    Ok(d)
}
