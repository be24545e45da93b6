//! Characters of finite abelian groups.
//!
//! The dual of `Z_{n_1} + ... + Z_{n_k}` is identified with the group itself
//! coordinate-wise: the exponent tuple `a` names the character
//! `g -> exp(2 pi i sum_j a_j g_j / n_j)`. Values are exact [`RationalAngle`]s.

use std::fmt;

use super::group::{AbelianGroup, GroupElement, RationalAngle};
use super::subgroup::Subgroup;
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(GroupElement);

impl Character {
    pub fn new(group: &AbelianGroup, exponents: &[i64]) -> Result<Self> {
        Ok(Character(group.element(exponents)?))
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Character(group.identity())
    }

    /// The coordinate character `phi_j` with `phi_j(e_i) = delta_ij` as a root of unity of order `n_j`.
    pub fn coordinate(group: &AbelianGroup, j: usize) -> Self {
        Character(group.basis_element(j))
    }

    /// Reinterprets an element of the (self-dual) group as a character.
    pub fn from_element(e: GroupElement) -> Self {
        Character(e)
    }

    pub fn as_element(&self) -> &GroupElement {
        &self.0
    }

    pub fn group(&self) -> &AbelianGroup {
        self.0.group()
    }

    pub fn exponents(&self) -> &[i64] {
        self.0.exponents()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_identity()
    }

    /// Complex conjugate, i.e. the inverse character.
    pub fn conj(&self) -> Character {
        Character(self.0.neg())
    }

    /// Pointwise product of characters.
    pub fn try_mul(&self, other: &Character) -> Result<Character> {
        Ok(Character(self.0.try_add(&other.0)?))
    }

    /// `chi(g)` as `sum_j a_j g_j / n_j mod 1`.
    pub fn pairing(&self, g: &GroupElement) -> Result<RationalAngle> {
        self.group().check_same(g.group())?;
        Ok(pair_exponents(self.group(), self.exponents(), g.exponents()))
    }

    /// `Ker(chi)` as a subgroup of the group.
    pub fn kernel(&self) -> Result<Subgroup> {
        Subgroup::generate(self.group(), std::slice::from_ref(&self.0))?.annihilator()
    }
}

/// Raw pairing of two reduced exponent tuples over `group`.
pub(crate) fn pair_exponents(group: &AbelianGroup, a: &[i64], g: &[i64]) -> RationalAngle {
    let e = group.exponent();
    let mut acc: i128 = 0;
    for ((&x, &y), &n) in a.iter().zip(g).zip(group.orders()) {
        acc += x as i128 * y as i128 * (e / n) as i128;
    }
    RationalAngle::new(acc.rem_euclid(e as i128) as i64, e)
}

/// `true` iff the pairing of the two tuples is zero; avoids building the angle.
pub(crate) fn pairs_to_zero(weights: &[i64], exponent: i64, a: &[i64], g: &[i64]) -> bool {
    let mut acc: i128 = 0;
    for ((&x, &y), &w) in a.iter().zip(g).zip(weights) {
        acc += x as i128 * y as i128 * w as i128;
    }
    acc.rem_euclid(exponent as i128) == 0
}

/// Per-coordinate weights `E / n_j` used by [`pairs_to_zero`].
pub(crate) fn pairing_weights(group: &AbelianGroup) -> Vec<i64> {
    let e = group.exponent();
    group.orders().iter().map(|&n| e / n).collect()
}

/// All characters of the group, in lexicographic order.
pub fn characters(group: &AbelianGroup) -> impl Iterator<Item = Character> + '_ {
    group.elements().map(Character)
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{:?}", self.exponents())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let g = AbelianGroup::new(vec![2, 2, 2]).unwrap();
        let x = g.element(&[1, 1, 0]).unwrap();
        assert!(Character::trivial(&g).pairing(&x).unwrap().is_zero());
        let chi = Character::new(&g, &[1, 0, 0]).unwrap();
        assert_eq!(chi.pairing(&x).unwrap(), RationalAngle::new(1, 2));

        let g = AbelianGroup::new(vec![4, 6]).unwrap();
        let chi = Character::new(&g, &[1, 1]).unwrap();
        let x = g.element(&[2, 3]).unwrap();
        assert_eq!(chi.pairing(&x).unwrap(), RationalAngle::ZERO);
        let y = g.element(&[1, 1]).unwrap();
        // 1/4 + 1/6 = 5/12
        assert_eq!(chi.pairing(&y).unwrap(), RationalAngle::new(5, 12));
    }

    #[test]
    fn pairing_rejects_mismatch() {
        let g = AbelianGroup::new(vec![2]).unwrap();
        let h = AbelianGroup::new(vec![3]).unwrap();
        assert!(Character::trivial(&g).pairing(&h.identity()).is_err());
    }

    #[test]
    fn kernel_of_coordinate_character() {
        let g = AbelianGroup::new(vec![4, 2]).unwrap();
        let k = Character::coordinate(&g, 0).kernel().unwrap();
        assert_eq!(k.order(), 2);
        assert!(k.contains_exponents(&[0, 1]));
    }
}
