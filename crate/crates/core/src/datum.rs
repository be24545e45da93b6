//! The algebraic datum `(G, K1, K2, K3, V1, V2, V3)` of a threefold
//! `X = (C1 x C2 x C3) / G` of unmixed type, its validation and its coarse
//! numerical invariants.
//!
//! Branch and eta elements of `G/K_i` are supplied as representatives in
//! `G` and reduced internally. Freeness is evaluated on preimages in `G`:
//! `g` fixes a point of `C_i` iff its image lies in a stabilizer of the
//! `G/K_i`-action, i.e. iff `g` lies in some `<sigma_j> + K_i`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, Character, GroupElement, Quotient, Subgroup};
use crate::covering::{BranchSignature, GeneratingVector, Violation};
use crate::error::{Error, Result};

/// Input for one generating vector, with elements given in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpec {
    pub g_prime: u32,
    pub branch: Vec<GroupElement>,
    pub eta: Vec<GroupElement>,
}

/// One factor `C_i -> C_i / G` of the datum.
#[derive(Clone, Debug)]
pub struct Factor {
    kernel: Subgroup,
    quotient: Quotient,
    spec: VectorSpec,
    vector: GeneratingVector,
}

impl Factor {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// `G -> G/K_i` as an explicit cyclic decomposition.
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// The generating vector over the abstract group `G/K_i`.
    pub fn vector(&self) -> &GeneratingVector {
        &self.vector
    }

    pub fn g_prime(&self) -> u32 {
        self.spec.g_prime
    }

    /// Branch representatives in `G`, as supplied.
    pub fn branch_reps(&self) -> &[GroupElement] {
        &self.spec.branch
    }

    pub fn eta_reps(&self) -> &[GroupElement] {
        &self.spec.eta
    }

    pub fn spec(&self) -> &VectorSpec {
        &self.spec
    }

    /// `<sigma_j> + K_i` for every branch element, without repeats.
    /// Their union is the set of elements of `G` acting on `C_i` with a fixed point.
    pub fn stabilizer_preimages(&self) -> Result<Vec<Subgroup>> {
        let mut out: Vec<Subgroup> = Vec::new();
        if self.spec.branch.is_empty() {
            out.push(self.kernel.clone());
        }
        for s in &self.spec.branch {
            let h = Subgroup::generate(self.kernel.ambient(), std::slice::from_ref(s))?
                .sum(&self.kernel)?;
            if !out.contains(&h) {
                out.push(h);
            }
        }
        Ok(out)
    }

    /// `chi` vanishes on `K_i` and is nontrivial on some stabilizer element.
    pub fn is_pre_admissible(&self, chi: &Character) -> Result<bool> {
        for k in self.kernel.canonical_generators() {
            if !chi.pairing(&k)?.is_zero() {
                return Ok(false);
            }
        }
        for s in &self.spec.branch {
            if !chi.pairing(s)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCheck {
    pub passed: bool,
    /// 1-based indices of the first pair of kernels meeting nontrivially.
    pub witness: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessCheck {
    pub passed: bool,
    /// Smallest nonzero element of `Sigma_1 & Sigma_2 & Sigma_3`.
    pub witness: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorCheck {
    pub signature: BranchSignature,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    pub kernels_cyclic: bool,
    /// every `g'_i = 1`
    pub elliptic_bases: bool,
    /// every `g(C_i) >= 2`, as required for isogenous to a product
    pub genera_at_least_two: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumReport {
    pub minimality: MinimalityCheck,
    pub vectors: Vec<VectorCheck>,
    pub freeness: FreenessCheck,
    /// `g(C_i)`, present when all three vectors are valid.
    pub genera: Option<[i64; 3]>,
    pub q: u32,
    pub flags: HypothesisFlags,
}

impl DatumReport {
    /// Minimality holds and every generating vector is valid; enough for
    /// cohomology and kernel computations on the (possibly singular) quotient.
    pub fn is_well_formed(&self) -> bool {
        self.minimality.passed && self.vectors.iter().all(|v| v.violations.is_empty())
    }

    /// The datum defines a threefold isogenous to a product.
    pub fn is_valid(&self) -> bool {
        self.is_well_formed() && self.freeness.passed && self.flags.genera_at_least_two
    }
}

/// `chi(O_X)`, Euler number and `K_X^3` of the free quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub genera: [i64; 3],
    pub chi_o: i64,
    pub euler: i64,
    pub k3: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidityClass {
    /// `q >= 4`: `Aut_0` is trivial.
    TrivialByRigidity,
    /// `q = 3`, elliptic bases, cyclic kernels: `Aut_0` is `Z_2^k`, `k <= 2`.
    Aut0Computable,
    /// `q = 3`, elliptic bases, some kernel not cyclic.
    KernelOnly,
    Unsupported,
}

#[derive(Clone, Debug)]
pub struct AlgebraicDatum {
    group: AbelianGroup,
    factors: [Factor; 3],
    report: DatumReport,
}

impl AlgebraicDatum {
    /// Assembles and validates a datum. Fails only on structural problems
    /// (wrong group, wrong widths, oversized group); mathematical failures
    /// are recorded in [`AlgebraicDatum::report`].
    pub fn new(group: AbelianGroup, kernels: [Subgroup; 3], vectors: [VectorSpec; 3]) -> Result<Self> {
        let o = group.order() as i128;
        if o.checked_mul(o).and_then(|x| x.checked_mul(o)).is_none_or(|c| c > i64::MAX as i128) {
            return Err(Error::Overflow("|G|^3 exceeds 64-bit range"));
        }
        let mut built = Vec::with_capacity(3);
        for (i, (kernel, spec)) in kernels.into_iter().zip(vectors).enumerate() {
            let n = i + 1;
            if !group.is_same(kernel.ambient()) {
                return Err(Error::structural(
                    format!("kernels[{n}]"),
                    "subgroup of a different group",
                ));
            }
            for (name, xs) in [("branch", &spec.branch), ("eta", &spec.eta)] {
                for (j, x) in xs.iter().enumerate() {
                    if !group.is_same(x.group()) {
                        return Err(Error::structural(
                            format!("vectors[{n}].{name}[{j}]"),
                            "element of a different group",
                        ));
                    }
                }
            }
            let quotient = Subgroup::whole(&group).quotient_by(&kernel)?;
            let image = |xs: &[GroupElement]| -> Result<Vec<GroupElement>> {
                xs.iter().map(|x| quotient.image(x)).collect()
            };
            let vector = GeneratingVector::new(
                quotient.group(),
                spec.g_prime,
                image(&spec.branch)?,
                image(&spec.eta)?,
            )?;
            built.push(Factor {
                kernel,
                quotient,
                spec,
                vector,
            });
        }
        let factors: [Factor; 3] = built.try_into().expect("three factors");
        let report = build_report(&group, &factors)?;
        Ok(AlgebraicDatum {
            group,
            factors,
            report,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn factors(&self) -> &[Factor; 3] {
        &self.factors
    }

    /// Factor `i` with 1-based index, matching `C_1, C_2, C_3`.
    pub fn factor(&self, i: usize) -> Result<&Factor> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidParameter(format!("factor index {i} not in 1..=3")));
        }
        Ok(&self.factors[i - 1])
    }

    pub fn kernels(&self) -> [&Subgroup; 3] {
        [
            &self.factors[0].kernel,
            &self.factors[1].kernel,
            &self.factors[2].kernel,
        ]
    }

    pub fn report(&self) -> &DatumReport {
        &self.report
    }

    pub fn validate(&self) -> DatumReport {
        self.report.clone()
    }

    pub fn is_free(&self) -> bool {
        self.report.freeness.passed
    }

    pub fn q(&self) -> u32 {
        self.report.q
    }

    pub(crate) fn require_well_formed(&self) -> Result<()> {
        if self.report.is_well_formed() {
            Ok(())
        } else {
            Err(Error::Precondition("minimality and valid generating vectors"))
        }
    }

    pub fn genera(&self) -> Result<[i64; 3]> {
        self.report
            .genera
            .ok_or(Error::Precondition("valid generating vectors"))
    }

    /// `chi(O_X) = -prod(g_i - 1)/|G|`, `e = prod(2 - 2g_i)/|G|`,
    /// `K^3 = 48 prod(g_i - 1)/|G|`; requires a free action.
    pub fn invariants(&self) -> Result<Invariants> {
        self.require_well_formed()?;
        if !self.is_free() {
            return Err(Error::Precondition("a free action"));
        }
        let genera = self.genera()?;
        let n = self.group.order() as i128;
        let p: i128 = genera.iter().map(|&g| g as i128 - 1).product();
        let ep: i128 = genera.iter().map(|&g| 2 - 2 * g as i128).product();
        let div = |x: i128, what: &str| -> Result<i64> {
            if x % n != 0 {
                return Err(Error::Consistency(format!("{what} = {x}/{n} is not an integer")));
            }
            i64::try_from(x / n).map_err(|_| Error::Overflow("numerical invariants"))
        };
        let chi_o = div(-p, "chi(O_X)")?;
        let euler = div(ep, "e(X)")?;
        let k3 = div(48 * p, "K^3")?;
        Ok(Invariants {
            genera,
            chi_o,
            euler,
            k3,
        })
    }

    pub fn rigidity_class(&self) -> RigidityClass {
        let q = self.report.q;
        if q >= 4 {
            RigidityClass::TrivialByRigidity
        } else if q == 3 && self.report.flags.elliptic_bases {
            if self.report.flags.kernels_cyclic {
                RigidityClass::Aut0Computable
            } else {
                RigidityClass::KernelOnly
            }
        } else {
            RigidityClass::Unsupported
        }
    }

    /// `K_1 x K_2 x K_3 + Delta_G` inside `G^3`.
    pub fn k_delta(&self) -> Result<Subgroup> {
        let [a, b, c] = self.kernels();
        Subgroup::product(&[a, b, c])?.sum(&Subgroup::diagonal(&self.group, 3)?)
    }

    /// `G^3` as an ambient group.
    pub fn cube(&self) -> Result<AbelianGroup> {
        crate::abelian::direct_product(&[&self.group, &self.group, &self.group])
    }
}

fn build_report(group: &AbelianGroup, factors: &[Factor; 3]) -> Result<DatumReport> {
    let mut witness = None;
    'outer: for i in 0..3 {
        for j in i + 1..3 {
            if !factors[i].kernel.intersection(&factors[j].kernel)?.is_trivial() {
                witness = Some([i + 1, j + 1]);
                break 'outer;
            }
        }
    }
    let minimality = MinimalityCheck {
        passed: witness.is_none(),
        witness,
    };
    let vectors: Vec<VectorCheck> = factors
        .iter()
        .map(|f| VectorCheck {
            signature: f.vector.signature(),
            violations: f.vector.validate().violations,
        })
        .collect();
    let genera = if vectors.iter().all(|v| v.violations.is_empty()) {
        let mut g = [0i64; 3];
        for (slot, f) in g.iter_mut().zip(factors) {
            *slot = f.vector.genus()?;
        }
        Some(g)
    } else {
        None
    };
    let witness = freeness_witness(group, factors)?;
    let freeness = FreenessCheck {
        passed: witness.is_none(),
        witness: witness.map(|w| w.exponents().to_vec()),
    };
    let mut kernels_cyclic = true;
    for f in factors {
        kernels_cyclic &= f.kernel.is_cyclic()?;
    }
    let flags = HypothesisFlags {
        kernels_cyclic,
        elliptic_bases: factors.iter().all(|f| f.spec.g_prime == 1),
        genera_at_least_two: genera.is_some_and(|g| g.iter().all(|&x| x >= 2)),
    };
    Ok(DatumReport {
        minimality,
        vectors,
        freeness,
        genera,
        q: factors.iter().map(|f| f.spec.g_prime).sum(),
        flags,
    })
}

/// Smallest nonzero element fixing a point on all three curves, if any.
fn freeness_witness(group: &AbelianGroup, factors: &[Factor; 3]) -> Result<Option<GroupElement>> {
    let mut unions = Vec::with_capacity(3);
    for f in factors {
        unions.push(f.stabilizer_preimages()?);
    }
    // enumerate the union with the fewest elements, test the other two
    let size = |u: &Vec<Subgroup>| u.iter().map(|h| h.order() as u128).sum::<u128>();
    let pivot = (0..3).min_by_key(|&i| size(&unions[i])).expect("three factors");
    let member = |u: &Vec<Subgroup>, x: &[i64]| u.iter().any(|h| h.contains_exponents(x));
    let mut found: BTreeSet<GroupElement> = BTreeSet::new();
    for h in &unions[pivot] {
        for x in h.elements() {
            if x.is_identity() {
                continue;
            }
            if found.first().is_some_and(|m| &x >= m) {
                continue;
            }
            let all = (0..3)
                .filter(|&i| i != pivot)
                .all(|i| member(&unions[i], x.exponents()));
            if all {
                found.clear();
                found.insert(x);
            }
        }
    }
    debug_assert!(found.iter().all(|x| group.is_same(x.group())));
    Ok(found.pop_first())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_cube() -> AbelianGroup {
        AbelianGroup::new(vec![2, 2, 2]).unwrap()
    }

    fn e(g: &AbelianGroup, v: &[i64]) -> GroupElement {
        g.element(v).unwrap()
    }

    fn cyc(g: &AbelianGroup, v: &[i64]) -> Subgroup {
        Subgroup::from_exponents(g, &[v]).unwrap()
    }

    /// `V_i = (2 * sigma_i; e_j, e_k)` over `Z_2^3` with `K_i = <e_i>`.
    fn datum(g: &AbelianGroup, sigmas: [[i64; 3]; 3], kernels: [[i64; 3]; 3]) -> AlgebraicDatum {
        let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let others = [(1, 2), (0, 2), (0, 1)];
        let vectors = [0, 1, 2].map(|i| {
            let s = e(g, &sigmas[i]);
            let (j, k) = others[i];
            VectorSpec {
                g_prime: 1,
                branch: vec![s.clone(), s],
                eta: vec![e(g, &basis[j]), e(g, &basis[k])],
            }
        });
        let kernels = kernels.map(|k| cyc(g, &k));
        AlgebraicDatum::new(g.clone(), kernels, vectors).unwrap()
    }

    const KERNELS: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

    #[test]
    fn first_family_smallest_member() {
        let g = klein_cube();
        let d = datum(&g, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], KERNELS);
        let r = d.report();
        assert!(r.minimality.passed);
        assert!(r.freeness.passed, "{r:?}");
        assert_eq!(r.q, 3);
        assert_eq!(r.genera, Some([3, 3, 3]));
        assert!(r.is_valid());
        let inv = d.invariants().unwrap();
        assert_eq!((inv.chi_o, inv.euler, inv.k3), (-1, -8, 48));
        assert_eq!(inv.k3 + 48 * inv.chi_o, 0);
        assert_eq!(d.rigidity_class(), RigidityClass::Aut0Computable);
        assert_eq!(d.k_delta().unwrap().order(), 64);
    }

    #[test]
    fn non_free_witness() {
        let g = klein_cube();
        let d = datum(&g, [[0, 1, 1], [0, 0, 1], [0, 1, 0]], KERNELS);
        let r = d.report();
        assert!(r.is_well_formed());
        assert!(!r.freeness.passed);
        assert_eq!(r.freeness.witness, Some(vec![0, 1, 1]));
        assert!(matches!(d.invariants(), Err(Error::Precondition(_))));
    }

    #[test]
    fn equal_kernels_fail_minimality() {
        let g = klein_cube();
        let d = datum(
            &g,
            [[0, 0, 1], [0, 0, 1], [0, 1, 0]],
            [[1, 0, 0], [1, 0, 0], [0, 0, 1]],
        );
        assert_eq!(d.report().minimality.witness, Some([1, 2]));
        assert!(!d.report().is_valid());
    }

    #[test]
    fn rigidity_for_higher_irregularity() {
        let g = klein_cube();
        let mut d = datum(&g, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], KERNELS);
        let f = &d.factors[0];
        let mut spec = f.spec.clone();
        spec.g_prime = 2;
        spec.eta.extend([g.identity(), g.identity()]);
        let kernels = d.kernels().map(Subgroup::clone);
        let specs = [spec, d.factors[1].spec.clone(), d.factors[2].spec.clone()];
        d = AlgebraicDatum::new(g, kernels, specs).unwrap();
        assert_eq!(d.q(), 4);
        assert_eq!(d.rigidity_class(), RigidityClass::TrivialByRigidity);
    }

    #[test]
    fn foreign_elements_are_structural_errors() {
        let g = klein_cube();
        let h = AbelianGroup::new(vec![2, 2]).unwrap();
        let spec = VectorSpec {
            g_prime: 0,
            branch: vec![h.identity()],
            eta: vec![],
        };
        let plain = VectorSpec {
            g_prime: 0,
            branch: vec![],
            eta: vec![],
        };
        let k = Subgroup::trivial(&g);
        let err = AlgebraicDatum::new(
            g.clone(),
            [k.clone(), k.clone(), k],
            [plain.clone(), spec, plain],
        )
        .unwrap_err();
        assert_eq!(err.code(), "structural_error");
        assert!(err.to_string().contains("vectors[2].branch[0]"));
    }

    #[test]
    fn pre_admissibility_in_first_family() {
        let g = klein_cube();
        let d = datum(&g, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], KERNELS);
        let f1 = d.factor(1).unwrap();
        let phi = |j| Character::coordinate(&g, j);
        assert!(!f1.is_pre_admissible(&Character::trivial(&g)).unwrap());
        assert!(!f1.is_pre_admissible(&phi(1)).unwrap());
        assert!(f1.is_pre_admissible(&phi(2)).unwrap());
        // phi_1 does not vanish on K_1
        assert!(!f1.is_pre_admissible(&phi(0)).unwrap());
    }
}
