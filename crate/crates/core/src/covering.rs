//! Generating vectors of Galois covers `C -> C/Q` with abelian `Q`:
//! validation, Riemann–Hurwitz genus, stabilizers and the Chevalley–Weil
//! eigenspace dimensions of `H^{1,0}(C)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{characters, AbelianGroup, Character, GroupElement, Subgroup};
use crate::error::{Error, Result};

/// `(sigma_1, ..., sigma_r; eta_1, ..., eta_{2g'})` for the group `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingVector {
    group: AbelianGroup,
    g_prime: u32,
    branch: Vec<GroupElement>,
    eta: Vec<GroupElement>,
}

/// One failed condition of a generating vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// branch and eta elements do not generate the group
    NotGenerating,
    TrivialBranchElement { index: usize },
    /// the branch elements do not sum to zero
    ProductRelation { sum: Vec<i64> },
    EtaCount { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotGenerating => write!(f, "elements do not generate the group"),
            Violation::TrivialBranchElement { index } => {
                write!(f, "branch element {index} is trivial")
            }
            Violation::ProductRelation { sum } => {
                write!(f, "branch elements sum to {sum:?}, not zero")
            }
            Violation::EtaCount { expected, found } => {
                write!(f, "expected {expected} eta elements, found {found}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationOutcome {
    pub violations: Vec<Violation>,
}

impl ValidationOutcome {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `[g'; m_1, ..., m_r]` with `m_1 <= ... <= m_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchSignature {
    pub g_prime: u32,
    pub orders: Vec<i64>,
}

impl fmt::Display for BranchSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.orders.iter().map(|m| m.to_string()).collect();
        if ms.is_empty() {
            write!(f, "[{}; -]", self.g_prime)
        } else {
            write!(f, "[{}; {}]", self.g_prime, ms.join(","))
        }
    }
}

/// `d(chi)` for every character of `Q`, in lexicographic character order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwTable {
    pub entries: Vec<(Character, u64)>,
}

impl CwTable {
    pub fn get(&self, chi: &Character) -> Option<u64> {
        self.entries
            .binary_search_by(|(c, _)| c.cmp(chi))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, d)| d).sum()
    }
}

impl GeneratingVector {
    /// Stores the vector as given. Elements must belong to `group`; the
    /// defining conditions are checked by [`GeneratingVector::validate`].
    pub fn new(
        group: AbelianGroup,
        g_prime: u32,
        branch: Vec<GroupElement>,
        eta: Vec<GroupElement>,
    ) -> Result<Self> {
        for x in branch.iter().chain(&eta) {
            group.check_same(x.group())?;
        }
        Ok(GeneratingVector {
            group,
            g_prime,
            branch,
            eta,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn g_prime(&self) -> u32 {
        self.g_prime
    }

    pub fn branch(&self) -> &[GroupElement] {
        &self.branch
    }

    pub fn eta(&self) -> &[GroupElement] {
        &self.eta
    }

    /// Branch orders `m_j` in input order.
    pub fn branch_orders(&self) -> Vec<i64> {
        self.branch.iter().map(GroupElement::order).collect()
    }

    pub fn signature(&self) -> BranchSignature {
        let mut orders = self.branch_orders();
        orders.sort_unstable();
        BranchSignature {
            g_prime: self.g_prime,
            orders,
        }
    }

    pub fn validate(&self) -> ValidationOutcome {
        let mut violations = Vec::new();
        let gens: Vec<GroupElement> = self.branch.iter().chain(&self.eta).cloned().collect();
        let generated = Subgroup::generate(&self.group, &gens)
            .map(|h| h.order() == self.group.order())
            .unwrap_or(false);
        if !generated {
            violations.push(Violation::NotGenerating);
        }
        for (index, s) in self.branch.iter().enumerate() {
            if s.is_identity() {
                violations.push(Violation::TrivialBranchElement { index });
            }
        }
        let sum = self
            .branch
            .iter()
            .try_fold(self.group.identity(), |acc, s| acc.try_add(s))
            .expect("parents checked at construction");
        if !sum.is_identity() {
            violations.push(Violation::ProductRelation {
                sum: sum.exponents().to_vec(),
            });
        }
        let expected = 2 * self.g_prime as usize;
        if self.eta.len() != expected {
            violations.push(Violation::EtaCount {
                expected,
                found: self.eta.len(),
            });
        }
        ValidationOutcome { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Precondition("a valid generating vector"))
        }
    }

    /// Genus of the cover from `2g - 2 = |Q| (2g' - 2 + sum_j (1 - 1/m_j))`.
    pub fn genus(&self) -> Result<i64> {
        self.require_valid()?;
        let q = self.group.order() as i128;
        let mut two_g_minus_two = q * (2 * self.g_prime as i128 - 2);
        for m in self.branch_orders() {
            two_g_minus_two += q - q / m as i128;
        }
        let twice_g = two_g_minus_two + 2;
        if twice_g % 2 != 0 || twice_g < 0 {
            return Err(Error::Consistency(format!(
                "Riemann–Hurwitz gives non-integral genus ({twice_g}/2)"
            )));
        }
        i64::try_from(twice_g / 2).map_err(|_| Error::Overflow("genus"))
    }

    /// `union_j <sigma_j>`, identity included: the elements acting with a fixed point.
    pub fn stabilizer_union(&self) -> BTreeSet<GroupElement> {
        let mut out = BTreeSet::new();
        out.insert(self.group.identity());
        for s in &self.branch {
            let mut x = s.clone();
            while !x.is_identity() {
                out.insert(x.clone());
                x = x.try_add(s).expect("same parent");
            }
        }
        out
    }

    /// Dimension of the `chi`-eigenspace of `H^{1,0}(C)`:
    /// `(g' - 1) + sum_j k_j / m_j + [chi trivial]`, with `chi(sigma_j) = k_j / m_j`.
    pub fn cw_dimension(&self, chi: &Character) -> Result<u64> {
        self.require_valid()?;
        self.group.check_same(chi.group())?;
        self.cw_dimension_unchecked(chi)
    }

    fn cw_dimension_unchecked(&self, chi: &Character) -> Result<u64> {
        let e = self.group.exponent() as i128;
        let mut acc = (self.g_prime as i128 - 1) * e;
        for s in &self.branch {
            let m = s.order();
            let k = chi
                .pairing(s)?
                .numerator_over(m)
                .ok_or_else(|| Error::Consistency("character value outside mu_m".into()))?;
            acc += k as i128 * (e / m as i128);
        }
        if chi.is_trivial() {
            acc += e;
        }
        if acc % e != 0 || acc < 0 {
            return Err(Error::Consistency(format!(
                "Chevalley–Weil multiplicity {acc}/{e} for {chi:?} is not a nonnegative integer"
            )));
        }
        Ok((acc / e) as u64)
    }

    /// Every character with its multiplicity; the multiplicities sum to the genus.
    pub fn cw_table(&self) -> Result<CwTable> {
        self.require_valid()?;
        let entries = characters(&self.group)
            .map(|chi| {
                let d = self.cw_dimension_unchecked(&chi)?;
                Ok((chi, d))
            })
            .collect::<Result<Vec<_>>>()?;
        let table = CwTable { entries };
        let g = self.genus()?;
        if table.total() as i64 != g {
            return Err(Error::Consistency(format!(
                "Chevalley–Weil total {} differs from Riemann–Hurwitz genus {g}",
                table.total()
            )));
        }
        Ok(table)
    }
}
