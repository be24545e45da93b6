//! Subgroups of a finite abelian group held as full-rank integer lattices.
//!
//! A subgroup `H <= G = Z_{n_1} + ... + Z_{n_k}` is stored through its
//! preimage lattice `L` in `Z^k`, which always contains `diag(n)`. The
//! lattice is kept in row-style Hermite normal form: upper triangular,
//! positive pivots `h_jj | n_j`, and `0 <= h_ij < h_jj` above each pivot.
//! That form is unique, so equal subgroups have identical bases.

use std::fmt;
use std::sync::Arc;

use super::arith::{add, axpy, ext_gcd, mul, sub};
use super::group::{direct_product, AbelianGroup, GroupElement, InvariantFactors};
use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Subgroup {
    ambient: AbelianGroup,
    generators: Vec<GroupElement>,
    basis: Arc<IntMatrix>,
}

/// Hermite basis under construction, one `Vec` per row.
struct LatticeBuilder<'a> {
    orders: &'a [i64],
    rows: Vec<Vec<i64>>,
}

impl<'a> LatticeBuilder<'a> {
    fn new(orders: &'a [i64]) -> Self {
        let k = orders.len();
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = orders[i];
                r
            })
            .collect();
        LatticeBuilder { orders, rows }
    }

    fn reduce_tail(&self, v: &mut [i64], from: usize) {
        for c in from..v.len() {
            v[c] = v[c].rem_euclid(self.orders[c]);
        }
    }

    /// Adds `v` to the lattice. Entries stay below the cyclic orders, so
    /// growth is bounded by `max(n_j)^2` between reductions.
    fn insert(&mut self, v: &[i64]) -> Result<()> {
        let k = self.orders.len();
        let mut v = v.to_vec();
        self.reduce_tail(&mut v, 0);
        for j in 0..k {
            if v[j] == 0 {
                continue;
            }
            let a = self.rows[j][j];
            let b = v[j];
            let (g, s, t) = ext_gcd(a, b)?;
            let (ag, bg) = (a / g, b / g);
            let row = &self.rows[j];
            let mut new_row = vec![0; k];
            let mut new_v = vec![0; k];
            for c in j..k {
                new_row[c] = add(mul(s, row[c])?, mul(t, v[c])?)?;
                new_v[c] = sub(mul(bg, row[c])?, mul(ag, v[c])?)?;
            }
            debug_assert_eq!(new_v[j], 0);
            self.reduce_tail(&mut new_row, j + 1);
            self.reduce_tail(&mut new_v, j + 1);
            self.rows[j] = new_row;
            v = new_v;
        }
        Ok(())
    }

    fn finish(mut self) -> Result<IntMatrix> {
        let k = self.orders.len();
        for i in (0..k).rev() {
            for j in i + 1..k {
                let mut row = std::mem::take(&mut self.rows[i]);
                row[j] = row[j].rem_euclid(self.orders[j]);
                let q = row[j].div_euclid(self.rows[j][j]);
                if q != 0 {
                    for c in j..k {
                        row[c] = axpy(row[c], -q, self.rows[j][c])?;
                    }
                }
                self.rows[i] = row;
            }
        }
        IntMatrix::from_rows(&self.rows)
    }
}

/// Solves `y * b = x` for upper-triangular full-rank `b`; `None` when the
/// solution is not integral.
pub(crate) fn solve_upper(b: &IntMatrix, x: &[i64]) -> Result<Option<Vec<i64>>> {
    let k = b.rows();
    let mut y = vec![0i64; k];
    for j in 0..k {
        let mut acc = x[j];
        for l in 0..j {
            acc = axpy(acc, -y[l], b[(l, j)])?;
        }
        let p = b[(j, j)];
        if acc % p != 0 {
            return Ok(None);
        }
        y[j] = acc / p;
    }
    Ok(Some(y))
}

impl Subgroup {
    fn from_builder(
        ambient: &AbelianGroup,
        generators: Vec<GroupElement>,
        b: LatticeBuilder<'_>,
    ) -> Result<Self> {
        Ok(Subgroup {
            ambient: ambient.clone(),
            generators,
            basis: Arc::new(b.finish()?),
        })
    }

    pub fn trivial(g: &AbelianGroup) -> Self {
        Subgroup {
            ambient: g.clone(),
            generators: Vec::new(),
            basis: Arc::new(IntMatrix::diagonal(g.orders())),
        }
    }

    pub fn whole(g: &AbelianGroup) -> Self {
        Subgroup {
            ambient: g.clone(),
            generators: (0..g.rank()).map(|j| g.basis_element(j)).collect(),
            basis: Arc::new(IntMatrix::identity(g.rank())),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(g: &AbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        let mut b = LatticeBuilder::new(g.orders());
        for x in gens {
            g.check_same(x.group())?;
            b.insert(x.exponents())?;
        }
        Self::from_builder(g, gens.to_vec(), b)
    }

    /// The subgroup generated by raw exponent tuples (reduced on entry).
    pub fn from_exponents<R: AsRef<[i64]>>(g: &AbelianGroup, gens: &[R]) -> Result<Self> {
        let elems = gens
            .iter()
            .map(|r| g.element(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(g, &elems)
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    /// The generators this subgroup was built from.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Hermite basis of the preimage lattice.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    fn check_ambient(&self, other: &AbelianGroup) -> Result<()> {
        self.ambient.check_same(other)
    }

    /// `|H| = prod n_j / prod h_jj`.
    pub fn order(&self) -> i64 {
        let k = self.ambient.rank();
        (0..k)
            .map(|j| self.ambient.orders()[j] / self.basis[(j, j)])
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Lexicographically least representative of `x + H` with entries in `[0, n_j)`.
    pub fn coset_minimum(&self, x: &[i64]) -> Vec<i64> {
        let orders = self.ambient.orders();
        let k = orders.len();
        let mut v: Vec<i64> = x.iter().zip(orders).map(|(&a, &n)| a.rem_euclid(n)).collect();
        for j in 0..k {
            let q = v[j].div_euclid(self.basis[(j, j)]);
            if q != 0 {
                for c in j..k {
                    let t = v[c] as i128 - q as i128 * self.basis[(j, c)] as i128;
                    v[c] = t.rem_euclid(orders[c] as i128) as i64;
                }
            }
        }
        v
    }

    pub fn contains_exponents(&self, x: &[i64]) -> bool {
        self.coset_minimum(x).iter().all(|&a| a == 0)
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        self.check_ambient(x.group())?;
        Ok(self.contains_exponents(x.exponents()))
    }

    /// Canonical representative of the coset `x + H`.
    pub fn canonical_representative(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_ambient(x.group())?;
        Ok(self.ambient.element_unchecked(self.coset_minimum(x.exponents())))
    }

    /// Nonzero Hermite rows, reduced into the group. They generate `H`.
    pub fn canonical_generators(&self) -> Vec<GroupElement> {
        let k = self.ambient.rank();
        (0..k)
            .filter_map(|i| {
                let row = self.basis.row(i).to_vec();
                let e = self.ambient.element(&row).expect("row width matches");
                (!e.is_identity()).then_some(e)
            })
            .collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_ambient(&other.ambient)?;
        Ok((0..self.ambient.rank()).all(|i| other.contains_exponents(self.basis.row(i))))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(&other.ambient)?;
        let mut b = LatticeBuilder::new(self.ambient.orders());
        let mut gens = Vec::new();
        for h in [self, other] {
            for i in 0..h.ambient.rank() {
                b.insert(h.basis.row(i))?;
            }
            gens.extend(h.canonical_generators());
        }
        Self::from_builder(&self.ambient, gens, b)
    }

    /// `H^perp = { chi : chi(h) = 0 for all h in H }`, as a subgroup of the
    /// dual group identified coordinate-wise with the ambient group.
    ///
    /// With `B` the Hermite basis and `D = diag(n)`, the annihilator lattice
    /// is spanned by the columns of the integral matrix `D B^{-1}`.
    pub fn annihilator(&self) -> Result<Subgroup> {
        let orders = self.ambient.orders();
        let k = orders.len();
        let mut cols = vec![vec![0i64; k]; k];
        for i in 0..k {
            let mut rhs = vec![0; k];
            rhs[i] = orders[i];
            let y = solve_upper(&self.basis, &rhs)?.ok_or_else(|| {
                Error::Consistency("diag(n) not contained in subgroup lattice".into())
            })?;
            for (j, &yj) in y.iter().enumerate() {
                cols[j][i] = yj;
            }
        }
        let mut b = LatticeBuilder::new(orders);
        for c in &cols {
            b.insert(c)?;
        }
        let mut out = Self::from_builder(&self.ambient, Vec::new(), b)?;
        out.generators = out.canonical_generators();
        Ok(out)
    }

    /// `H1 ∩ H2 = (H1^perp + H2^perp)^perp`.
    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(&other.ambient)?;
        self.annihilator()?.sum(&other.annihilator()?)?.annihilator()
    }

    /// Enumerates the elements via Hermite coordinates: every element is
    /// uniquely `sum c_i row_i` with `0 <= c_i < n_i / h_ii`.
    pub fn elements(&self) -> SubgroupElements<'_> {
        let k = self.ambient.rank();
        let ranges = (0..k)
            .map(|i| self.ambient.orders()[i] / self.basis[(i, i)])
            .collect();
        SubgroupElements {
            subgroup: self,
            ranges,
            counter: vec![0; k],
            current: vec![0; k],
            done: false,
        }
    }

    /// `true` when the subgroup is cyclic (including trivial).
    pub fn is_cyclic(&self) -> Result<bool> {
        let q = self.quotient_by(&Subgroup::trivial(&self.ambient))?;
        Ok(q.factors().factors().len() <= 1)
    }

    /// Structure of `self / sub` with generator cosets. `sub` must lie in `self`.
    pub fn quotient_by(&self, sub: &Subgroup) -> Result<Quotient> {
        self.check_ambient(&sub.ambient)?;
        let k = self.ambient.rank();
        // coefficients of sub's basis in self's basis
        let mut c_rows = Vec::with_capacity(k);
        for i in 0..k {
            let y = solve_upper(&self.basis, sub.basis.row(i))?
                .ok_or(Error::NotSubgroup("denominator"))?;
            c_rows.push(y);
        }
        let c = IntMatrix::from_rows(&c_rows)?;
        let smith = smith_normal_form(&c)?;
        let diag = smith.diagonal();
        let mut factors = Vec::new();
        let mut generators = Vec::new();
        let mut columns = Vec::new();
        for (i, &d) in diag.iter().enumerate() {
            if d == 0 {
                return Err(Error::Consistency("rank-deficient quotient lattice".into()));
            }
            if d == 1 {
                continue;
            }
            factors.push(d);
            // row i of V^{-1}, pushed through self's basis
            let coeff = smith.v_inv.row(i);
            let mut x = vec![0i64; k];
            // only whole rows of S V^{-1} lie in the denominator, so the
            // coefficients must not be reduced one by one
            for (l, &cl) in coeff.iter().enumerate() {
                if cl == 0 {
                    continue;
                }
                for c in l..k {
                    let t = x[c] as i128 + cl as i128 * self.basis[(l, c)] as i128;
                    x[c] = t.rem_euclid(self.ambient.orders()[c] as i128) as i64;
                }
            }
            generators.push(self.ambient.element_unchecked(x));
            columns.push((0..k).map(|l| smith.v[(l, i)].rem_euclid(d)).collect::<Vec<_>>());
        }
        Ok(Quotient {
            numerator: self.clone(),
            denominator: sub.clone(),
            factors: InvariantFactors::new(factors)?,
            generators,
            columns,
        })
    }

    /// Re-expresses the subgroup after permuting ambient coordinates:
    /// new coordinate `c` is old coordinate `perm[c]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Subgroup> {
        let orders: Vec<i64> = perm.iter().map(|&p| self.ambient.orders()[p]).collect();
        let g = AbelianGroup::new(orders)?;
        let gens: Vec<Vec<i64>> = self
            .canonical_generators()
            .iter()
            .map(|e| perm.iter().map(|&p| e.exponents()[p]).collect())
            .collect();
        Subgroup::from_exponents(&g, &gens)
    }

    /// `H_1 x ... x H_m` inside the direct product of the ambients.
    pub fn product(parts: &[&Subgroup]) -> Result<Subgroup> {
        let ambients: Vec<&AbelianGroup> = parts.iter().map(|h| &h.ambient).collect();
        let g = direct_product(&ambients)?;
        let mut offset = 0;
        let mut gens = Vec::new();
        for h in parts {
            for e in h.canonical_generators() {
                let mut v = vec![0; g.rank()];
                v[offset..offset + e.exponents().len()].copy_from_slice(e.exponents());
                gens.push(v);
            }
            offset += h.ambient.rank();
        }
        Subgroup::from_exponents(&g, &gens)
    }

    /// `{(g, ..., g)}` inside `G^copies`.
    pub fn diagonal(g: &AbelianGroup, copies: usize) -> Result<Subgroup> {
        let parts: Vec<&AbelianGroup> = std::iter::repeat_n(g, copies).collect();
        let prod = direct_product(&parts)?;
        let gens: Vec<Vec<i64>> = (0..g.rank())
            .map(|j| {
                let e = g.basis_element(j);
                e.exponents().repeat(copies)
            })
            .collect();
        Subgroup::from_exponents(&prod, &gens)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.hash(state)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("ambient", &self.ambient)
            .field("order", &self.order())
            .field("generators", &self.canonical_generators())
            .finish()
    }
}

pub struct SubgroupElements<'a> {
    subgroup: &'a Subgroup,
    ranges: Vec<i64>,
    counter: Vec<i64>,
    current: Vec<i64>,
    done: bool,
}

impl Iterator for SubgroupElements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.done {
            return None;
        }
        let out = self.subgroup.ambient.element_unchecked(self.current.clone());
        // odometer step, last coordinate fastest
        let orders = self.subgroup.ambient.orders();
        let basis = &self.subgroup.basis;
        let k = self.ranges.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < self.ranges[i] {
                for c in i..k {
                    self.current[c] = (self.current[c] + basis[(i, c)]).rem_euclid(orders[c]);
                }
                break;
            }
            // wrap around: undo the (range - 1) copies added so far
            self.counter[i] = 0;
            for c in i..k {
                let back = (self.ranges[i] - 1) * basis[(i, c)];
                self.current[c] = (self.current[c] - back).rem_euclid(orders[c]);
            }
        }
        Some(out)
    }
}

/// The quotient `N / M` of two subgroups of one ambient group, presented
/// through the Smith form of `M`'s basis expressed in `N`'s basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    numerator: Subgroup,
    denominator: Subgroup,
    factors: InvariantFactors,
    generators: Vec<GroupElement>,
    /// Column `i` maps Hermite coordinates of `N` to the `i`-th cyclic coordinate (mod `d_i`).
    columns: Vec<Vec<i64>>,
}

impl Quotient {
    pub fn numerator(&self) -> &Subgroup {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subgroup {
        &self.denominator
    }

    pub fn factors(&self) -> &InvariantFactors {
        &self.factors
    }

    /// Representatives in the ambient group; the coset of the `i`-th one
    /// has order `factors[i]` and together they generate `N / M`.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> i64 {
        self.factors.order()
    }

    /// The quotient as an abstract group `Z_{d_1} + ... + Z_{d_s}`.
    pub fn group(&self) -> AbelianGroup {
        self.factors.to_group()
    }

    /// Coordinates of the coset `x + M` in the cyclic decomposition.
    pub fn coordinates(&self, x: &[i64]) -> Result<Vec<i64>> {
        let z = solve_upper(self.numerator.basis(), x)?
            .ok_or(Error::NotSubgroup("element outside the numerator"))?;
        let mut out = Vec::with_capacity(self.columns.len());
        for (col, &d) in self.columns.iter().zip(self.factors.factors()) {
            let mut acc: i128 = 0;
            for (&zl, &cl) in z.iter().zip(col) {
                acc += (zl as i128).rem_euclid(d as i128) * cl as i128;
            }
            out.push(acc.rem_euclid(d as i128) as i64);
        }
        Ok(out)
    }

    /// Image of `x` in the abstract quotient group.
    pub fn image(&self, x: &GroupElement) -> Result<GroupElement> {
        self.numerator.ambient().check_same(x.group())?;
        let c = self.coordinates(x.exponents())?;
        self.group().element(&c)
    }

    /// A representative in the ambient group of the given cyclic coordinates.
    pub fn lift(&self, coords: &[i64]) -> Result<GroupElement> {
        let g = self.numerator.ambient();
        if coords.len() != self.generators.len() {
            return Err(Error::WidthMismatch {
                expected: self.generators.len(),
                found: coords.len(),
            });
        }
        let mut x = g.identity();
        for (gen, &c) in self.generators.iter().zip(coords) {
            x = x.try_add(&gen.scale(c))?;
        }
        Ok(x)
    }

    /// For `N = G`: exponents of the character of `G` obtained by composing
    /// the quotient map with the character `b` of `G / M`.
    pub fn pullback(&self, b: &[i64]) -> Result<Vec<i64>> {
        let g = self.numerator.ambient();
        if self.numerator.order() != g.order() {
            return Err(Error::Precondition("pullback from a quotient of the whole group"));
        }
        let ds = self.factors.factors();
        if b.len() != ds.len() {
            return Err(Error::WidthMismatch {
                expected: ds.len(),
                found: b.len(),
            });
        }
        let e = self.factors.to_group().exponent();
        let k = g.rank();
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            // chi(e_j) = sum_i V_ji b_i / d_i, expressed over the common denominator e
            let mut s: i128 = 0;
            for (i, &d) in ds.iter().enumerate() {
                s += self.columns[i][j] as i128 * b[i] as i128 * (e / d) as i128;
            }
            let n = g.orders()[j] as i128;
            let scaled = s * n;
            if scaled % e as i128 != 0 {
                return Err(Error::Consistency(
                    "pulled-back character is not well defined on the ambient group".into(),
                ));
            }
            out.push((scaled / e as i128).rem_euclid(n) as i64);
        }
        Ok(out)
    }
}

/// Invariant factors of `G / H` with generator cosets (as representatives in `G`).
pub fn quotient_structure(
    g: &AbelianGroup,
    h: &Subgroup,
) -> Result<(InvariantFactors, Vec<GroupElement>)> {
    g.check_same(h.ambient())?;
    let q = Subgroup::whole(g).quotient_by(h)?;
    Ok((q.factors.clone(), q.generators.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(o: &[i64]) -> AbelianGroup {
        AbelianGroup::new(o.to_vec()).unwrap()
    }

    fn sg(g: &AbelianGroup, gens: &[&[i64]]) -> Subgroup {
        Subgroup::from_exponents(g, gens).unwrap()
    }

    #[test]
    fn lift_inverts_image_across_non_chain_orders() {
        let g = grp(&[6, 12]);
        let h = sg(&g, &[&[0, 4]]);
        let q = Subgroup::whole(&g).quotient_by(&h).unwrap();
        assert_eq!(q.factors().factors(), &[2, 12]);
        for (x, &d) in q.generators().iter().zip(q.factors().factors()) {
            assert!(h.contains(&x.scale(d)).unwrap());
            assert!(!h.contains(&x.scale(d / 2)).unwrap());
        }
        for x in g.elements() {
            let back = q.lift(q.image(&x).unwrap().exponents()).unwrap();
            assert!(h.contains(&x.try_sub(&back).unwrap()).unwrap());
        }
    }

    #[test]
    fn generate_small() {
        let g = grp(&[2, 2, 2]);
        assert_eq!(Subgroup::generate(&g, &[]).unwrap().order(), 1);
        assert_eq!(sg(&g, &[&[1, 0, 0]]).order(), 2);
        let g = grp(&[4, 4]);
        let h = sg(&g, &[&[2, 2]]);
        assert_eq!(h.order(), 2);
        assert!(h.contains(&g.element(&[2, 2]).unwrap()).unwrap());
        assert!(!h.contains(&g.element(&[2, 0]).unwrap()).unwrap());
    }

    #[test]
    fn wrong_parent_is_rejected() {
        let g = grp(&[2, 2]);
        let other = grp(&[4, 4]);
        assert!(matches!(
            Subgroup::generate(&g, &[other.identity()]),
            Err(Error::ParentMismatch { .. })
        ));
    }

    #[test]
    fn equal_sets_equal_bases() {
        let g = grp(&[4, 6]);
        let a = sg(&g, &[&[1, 3]]);
        let b = sg(&g, &[&[3, 3], &[2, 0]]);
        assert_eq!(a.order(), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn lattice_operations() {
        let g = grp(&[2, 2, 2]);
        let e1 = sg(&g, &[&[1, 0, 0]]);
        let e2 = sg(&g, &[&[0, 1, 0]]);
        assert!(e1.intersection(&e2).unwrap().is_trivial());
        assert_eq!(e1.intersection(&e1).unwrap(), e1);
        let g = grp(&[4, 4]);
        let a = sg(&g, &[&[1, 0]]);
        let b = sg(&g, &[&[2, 2]]);
        assert!(a.intersection(&b).unwrap().is_trivial());
        let s = sg(&g, &[&[2, 0]]).sum(&sg(&g, &[&[0, 2]])).unwrap();
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn quotient_examples() {
        let g = grp(&[4, 4]);
        let (f, gens) = quotient_structure(&g, &sg(&g, &[&[2, 2]])).unwrap();
        assert_eq!(f.factors(), &[2, 4]);
        assert_eq!(gens.len(), 2);
        let (f, _) = quotient_structure(&g, &Subgroup::whole(&g)).unwrap();
        assert!(f.is_trivial());
        let g = grp(&[2, 2, 2]);
        let (f, _) = quotient_structure(&g, &sg(&g, &[&[1, 0, 0]])).unwrap();
        assert_eq!(f.factors(), &[2, 2]);
    }

    #[test]
    fn annihilator_examples() {
        let g = grp(&[2, 2, 2]);
        let full = Subgroup::trivial(&g).annihilator().unwrap();
        assert_eq!(full.order(), 8);
        let ann = sg(&g, &[&[1, 0, 0]]).annihilator().unwrap();
        assert_eq!(ann, sg(&g, &[&[0, 1, 0], &[0, 0, 1]]));
        let g = grp(&[4, 4]);
        let h = sg(&g, &[&[2, 2]]);
        let ann = h.annihilator().unwrap();
        assert_eq!(ann.order(), 8);
        assert!(ann.contains_exponents(&[1, 3]));
        assert!(ann.contains_exponents(&[2, 0]));
        assert_eq!(ann.annihilator().unwrap(), h);
    }

    #[test]
    fn element_enumeration_matches_order() {
        let g = grp(&[4, 6, 3]);
        let h = sg(&g, &[&[2, 3, 1], &[0, 2, 0]]);
        let elems: std::collections::BTreeSet<_> = h.elements().collect();
        assert_eq!(elems.len() as i64, h.order());
        assert!(elems.iter().all(|e| h.contains_exponents(e.exponents())));
    }

    #[test]
    fn products_and_diagonals() {
        let g = grp(&[2, 2, 2]);
        let ks: Vec<Subgroup> = (0..3)
            .map(|i| {
                let mut v = vec![0; 3];
                v[i] = 1;
                sg(&g, &[&v])
            })
            .collect();
        let k = Subgroup::product(&[&ks[0], &ks[1], &ks[2]]).unwrap();
        let delta = Subgroup::diagonal(&g, 3).unwrap();
        assert_eq!(delta.order(), 8);
        assert_eq!(k.sum(&delta).unwrap().order(), 64);
        let t = Subgroup::trivial(&g);
        assert!(Subgroup::product(&[&t, &t]).unwrap().is_trivial());
    }

    #[test]
    fn quotient_coordinates_and_lift() {
        let g = grp(&[4, 4]);
        let h = sg(&g, &[&[2, 2]]);
        let q = Subgroup::whole(&g).quotient_by(&h).unwrap();
        for x in g.elements() {
            let c = q.coordinates(x.exponents()).unwrap();
            let back = q.lift(&c).unwrap();
            assert!(h.contains(&x.try_sub(&back).unwrap()).unwrap());
        }
        // pullbacks vanish on h
        for b in q.group().elements() {
            let a = q.pullback(b.exponents()).unwrap();
            let s: i64 = a.iter().zip(h.basis().row(0)).map(|(x, y)| x * y).sum();
            assert_eq!(s % 4, 0);
        }
    }

    #[test]
    fn cyclicity() {
        let g = grp(&[2, 4]);
        assert!(sg(&g, &[&[1, 1]]).is_cyclic().unwrap());
        assert!(!sg(&g, &[&[1, 0], &[0, 2]]).is_cyclic().unwrap());
        assert!(Subgroup::trivial(&g).is_cyclic().unwrap());
    }
}
