//! Exact arithmetic for finite abelian groups given as direct sums of
//! cyclic groups: normal forms, subgroup lattices, characters and duality.

pub(crate) mod arith;
mod character;
mod group;
mod matrix;
mod smith;
mod subgroup;

pub use arith::{gcd, lcm};
pub use character::{characters, Character};
pub(crate) use character::{pairing_weights, pairs_to_zero};
pub use group::{direct_product, AbelianGroup, GroupElement, InvariantFactors, RationalAngle};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, Smith};
pub use subgroup::{quotient_structure, Quotient, Subgroup, SubgroupElements};

/// `H^perp` inside the dual of `G` (identified with `G`).
pub fn annihilator(g: &AbelianGroup, h: &Subgroup) -> crate::error::Result<Subgroup> {
    g.check_same(h.ambient())?;
    h.annihilator()
}
