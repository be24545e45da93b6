use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::arith::{self, lcm};
use crate::error::{Error, Result};

/// A finite abelian group `Z_{n_1} + ... + Z_{n_k}` presented by its list of
/// cyclic orders. The list need not be in invariant-factor form.
///
/// Cloning is cheap; the order list is shared.
#[derive(Clone)]
pub struct AbelianGroup {
    orders: Arc<[i64]>,
    order: i64,
    exponent: i64,
}

impl AbelianGroup {
    /// Fails if some order is below 1 or the group order leaves `i64`.
    pub fn new(orders: impl Into<Vec<i64>>) -> Result<Self> {
        let orders: Vec<i64> = orders.into();
        let mut order = 1i64;
        let mut exponent = 1i64;
        for &n in &orders {
            if n < 1 {
                return Err(Error::InvalidOrder(n));
            }
            order = order.checked_mul(n).ok_or(Error::Overflow("group order"))?;
            exponent = lcm(exponent, n)?;
        }
        Ok(AbelianGroup {
            orders: orders.into(),
            order,
            exponent,
        })
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("empty presentation is valid")
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// lcm of the cyclic orders.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Drops order-1 factors. Idempotent.
    pub fn normalized(&self) -> AbelianGroup {
        let kept: Vec<i64> = self.orders.iter().copied().filter(|&n| n != 1).collect();
        if kept.len() == self.orders.len() {
            return self.clone();
        }
        AbelianGroup::new(kept).expect("subset of a valid presentation")
    }

    /// Canonical invariant factors `d_1 | d_2 | ...` of this group.
    pub fn invariant_factors(&self) -> Result<InvariantFactors> {
        let diag = super::IntMatrix::diagonal(&self.orders);
        let smith = super::smith_normal_form(&diag)?;
        InvariantFactors::new(smith.diagonal().into_iter().filter(|&d| d > 1).collect())
    }

    pub fn is_same(&self, other: &AbelianGroup) -> bool {
        Arc::ptr_eq(&self.orders, &other.orders) || self.orders == other.orders
    }

    pub(crate) fn check_same(&self, other: &AbelianGroup) -> Result<()> {
        if self.is_same(other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch {
                expected: self.orders.to_vec(),
                found: other.orders.to_vec(),
            })
        }
    }

    pub(crate) fn check_width(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected: self.rank(),
                found: len,
            })
        }
    }

    /// Reduces every coordinate into `[0, n_j)`.
    pub(crate) fn reduce(&self, v: &mut [i64]) {
        for (x, &n) in v.iter_mut().zip(self.orders.iter()) {
            *x = x.rem_euclid(n);
        }
    }

    /// Builds an element, reducing each exponent modulo its cyclic order.
    pub fn element(&self, exponents: &[i64]) -> Result<GroupElement> {
        self.check_width(exponents.len())?;
        let mut v = exponents.to_vec();
        self.reduce(&mut v);
        Ok(GroupElement {
            group: self.clone(),
            exps: v.into(),
        })
    }

    pub(crate) fn element_unchecked(&self, exps: Vec<i64>) -> GroupElement {
        debug_assert!(exps.len() == self.rank());
        debug_assert!(exps.iter().zip(self.orders.iter()).all(|(&x, &n)| (0..n).contains(&x)));
        GroupElement {
            group: self.clone(),
            exps: exps.into(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element_unchecked(vec![0; self.rank()])
    }

    /// The `j`-th coordinate generator `e_j` (0-based).
    pub fn basis_element(&self, j: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        if self.orders[j] > 1 {
            v[j] = 1;
        }
        self.element_unchecked(v)
    }

    /// Mixed-radix index of a reduced exponent tuple; the last coordinate varies fastest.
    pub fn index_of(&self, exps: &[i64]) -> usize {
        exps.iter()
            .zip(self.orders.iter())
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn exponents_at(&self, mut index: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        for j in (0..self.rank()).rev() {
            let n = self.orders[j] as usize;
            v[j] = (index % n) as i64;
            index /= n;
        }
        v
    }

    /// All elements in lexicographic order of their exponent tuples.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_unchecked(self.exponents_at(i)))
    }
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.is_same(other)
    }
}

impl Eq for AbelianGroup {}

impl std::hash::Hash for AbelianGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.orders.hash(state)
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup{:?}", &*self.orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Direct sum of the given groups; exponent tuples concatenate.
pub fn direct_product(groups: &[&AbelianGroup]) -> Result<AbelianGroup> {
    let orders: Vec<i64> = groups.iter().flat_map(|g| g.orders().iter().copied()).collect();
    AbelianGroup::new(orders)
}

/// An element of an [`AbelianGroup`] in canonical form `0 <= e_j < n_j`.
#[derive(Clone)]
pub struct GroupElement {
    group: AbelianGroup,
    exps: Box<[i64]>,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    pub fn try_add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.check_same(&other.group)?;
        let v: Vec<i64> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .zip(self.group.orders().iter())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(self.group.element_unchecked(v))
    }

    pub fn try_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        let v: Vec<i64> = self
            .exps
            .iter()
            .zip(self.group.orders().iter())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        self.group.element_unchecked(v)
    }

    /// `k * self`.
    pub fn scale(&self, k: i64) -> GroupElement {
        let v: Vec<i64> = self
            .exps
            .iter()
            .zip(self.group.orders().iter())
            .map(|(&a, &n)| ((a as i128 * k as i128).rem_euclid(n as i128)) as i64)
            .collect();
        self.group.element_unchecked(v)
    }

    /// Order of the element: lcm over coordinates of `n_j / gcd(e_j, n_j)`.
    pub fn order(&self) -> i64 {
        self.exps
            .iter()
            .zip(self.group.orders().iter())
            .fold(1, |acc, (&a, &n)| {
                lcm(acc, n / arith::gcd(a, n)).expect("divides the group exponent")
            })
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.exps == other.exps
    }
}

impl Eq for GroupElement {}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.exps
            .cmp(&other.exps)
            .then_with(|| self.group.orders().cmp(other.group.orders()))
    }
}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.exps.hash(state)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.exps)
    }
}

/// Canonical description `Z_{d_1} + ... + Z_{d_s}` with `d_1 | d_2 | ...`
/// and every `d_i >= 2`. The empty chain is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct InvariantFactors(Vec<i64>);

impl InvariantFactors {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::Consistency(format!("invariant factor {d} < 2")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Consistency(format!(
                "invariant factors {factors:?} violate the divisibility chain"
            )));
        }
        Ok(InvariantFactors(factors))
    }

    pub fn trivial() -> Self {
        InvariantFactors(Vec::new())
    }

    pub fn factors(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> i64 {
        self.0.iter().product()
    }

    /// `Z_2^k` for some `k`.
    pub fn is_two_elementary(&self) -> bool {
        self.0.iter().all(|&d| d == 2)
    }

    pub fn to_group(&self) -> AbelianGroup {
        AbelianGroup::new(self.0.clone()).expect("invariant factors form a valid group")
    }
}

impl TryFrom<Vec<i64>> for InvariantFactors {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        InvariantFactors::new(v)
    }
}

impl From<InvariantFactors> for Vec<i64> {
    fn from(f: InvariantFactors) -> Vec<i64> {
        f.0
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The root of unity `exp(2 pi i num/den)`, held exactly as `num/den` in `Q/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1 to lowest terms. `den` must be positive.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let num = num.rem_euclid(den);
        let g = arith::gcd(num, den);
        if num == 0 {
            return Self::ZERO;
        }
        RationalAngle {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// The value equals 1 as a root of unity.
    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Numerator after rescaling to denominator `m`; `None` if `den` does not divide `m`.
    pub fn numerator_over(&self, m: i64) -> Option<i64> {
        (m % self.den == 0).then(|| self.num * (m / self.den))
    }
}

impl std::ops::Add for RationalAngle {
    type Output = RationalAngle;
    fn add(self, rhs: RationalAngle) -> RationalAngle {
        let den = lcm(self.den, rhs.den).expect("angle denominators stay small");
        RationalAngle::new(self.num * (den / self.den) + rhs.num * (den / rhs.den), den)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
