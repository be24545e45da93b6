//! Built-in data: the families over `Z_{2n1} + Z_{2n2} + Z_{2n3}` with
//! `K_i = <e_i>` and `V_i = (m * sigma_i; e_j, e_k)`, and one datum over
//! `Z_2^4` with a non-cyclic kernel.

use std::collections::BTreeMap;

use crate::abelian::{AbelianGroup, GroupElement, Subgroup};
use crate::datum::{AlgebraicDatum, VectorSpec};
use crate::error::{Error, Result};

pub const NAMES: [&str; 5] = ["example1", "example2a", "example2b", "example3", "example4"];

/// Shown in reports of `example4`.
pub const EXAMPLE4_NOTE: &str = "example4 is a corrected datum over Z2^4 with kernels \
<e4>, <e2>, <e1,e3>; its admissible set is exactly phi1phi3 (x) phi1phi3 (x) 1, \
phi1phi2phi3 (x) phi1phi3 (x) phi2, phi1phi2phi3 (x) phi1phi3phi4 (x) phi2phi4";

/// `n1=..,n2=..,n3=..` or `n=..`; missing values default to 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn parse(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {part:?}")))?;
            let k = k.trim();
            if !matches!(k, "n" | "n1" | "n2" | "n3") {
                return Err(Error::InvalidParameter(format!("unknown parameter {k:?}")));
            }
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{k} must be an integer")))?;
            if !(1..=1 << 20).contains(&v) {
                return Err(Error::InvalidParameter(format!("{k} = {v} must be positive")));
            }
            map.insert(k.to_string(), v);
        }
        Ok(Params(map))
    }

    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.0.insert(key.to_string(), value);
        self
    }

    fn get(&self, key: &str) -> i64 {
        self.0.get(key).or_else(|| self.0.get("n")).copied().unwrap_or(1)
    }

    fn triple(&self) -> [i64; 3] {
        [self.get("n1"), self.get("n2"), self.get("n3")]
    }
}

pub fn builtin(name: &str, params: &Params) -> Result<AlgebraicDatum> {
    match name {
        "example1" => example1(params.triple()),
        "example2a" => example2a(params.triple()),
        "example2b" => example2b(params.triple()),
        "example3" => example3(params.get("n")),
        "example4" => example4(),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

/// The family datum for branch elements `sigma` (exponent vectors in `G`).
pub fn family(n: [i64; 3], sigma: [[i64; 3]; 3]) -> Result<AlgebraicDatum> {
    let g = AbelianGroup::new(n.map(|x| 2 * x).to_vec())?;
    let e = |j: usize| g.basis_element(j);
    let mut kernels = Vec::new();
    let mut vectors = Vec::new();
    for i in 0..3 {
        let k = Subgroup::generate(&g, &[e(i)])?;
        let s = g.element(&sigma[i])?;
        let m = order_modulo(&s, &k);
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        vectors.push(VectorSpec {
            g_prime: 1,
            branch: vec![s; m as usize],
            eta: vec![e(others[0]), e(others[1])],
        });
        kernels.push(k);
    }
    AlgebraicDatum::new(
        g,
        kernels.try_into().expect("three"),
        vectors.try_into().expect("three"),
    )
}

fn order_modulo(x: &GroupElement, k: &Subgroup) -> i64 {
    let mut y = x.clone();
    let mut m = 1;
    while !k.contains_exponents(y.exponents()) {
        y = y.try_add(x).expect("same group");
        m += 1;
    }
    m
}

/// `sigma = (e3^n3, e1^n1, e2^n2)`.
pub fn example1([n1, n2, n3]: [i64; 3]) -> Result<AlgebraicDatum> {
    family([n1, n2, n3], [[0, 0, n3], [n1, 0, 0], [0, n2, 0]])
}

/// `sigma = (e3^n3, e1^n1, e1^n1 e2^n2)`.
pub fn example2a([n1, n2, n3]: [i64; 3]) -> Result<AlgebraicDatum> {
    family([n1, n2, n3], [[0, 0, n3], [n1, 0, 0], [n1, n2, 0]])
}

/// `sigma = (e3^n3, e1^2, e2^n2)`; needs `n1 >= 2` so that `e1^2` is nontrivial mod `K_2`.
pub fn example2b([n1, n2, n3]: [i64; 3]) -> Result<AlgebraicDatum> {
    if n1 < 2 {
        return Err(Error::InvalidParameter(
            "example2b needs n1 >= 2 (otherwise sigma_2 = e1^2 is trivial)".into(),
        ));
    }
    family([n1, n2, n3], [[0, 0, n3], [2, 0, 0], [0, n2, 0]])
}

/// `n1 = n2 = n3 = n`, `sigma = (e2^n e3^n, e3^n, e2^n)`: not free.
pub fn example3(n: i64) -> Result<AlgebraicDatum> {
    family([n, n, n], [[0, n, n], [0, 0, n], [0, n, 0]])
}

/// `G = Z_2^4`, `K = (<e4>, <e2>, <e1, e3>)`,
/// `V_1 = (e1, e1; e2, e3)`, `V_2 = (e3, e3; e1, e4)`, `V_3 = (e2, e2; e2, e4)`.
pub fn example4() -> Result<AlgebraicDatum> {
    let g = AbelianGroup::new(vec![2, 2, 2, 2])?;
    let e = |j: usize| g.basis_element(j);
    let kernels = [
        Subgroup::generate(&g, &[e(3)])?,
        Subgroup::generate(&g, &[e(1)])?,
        Subgroup::generate(&g, &[e(0), e(2)])?,
    ];
    let v = |s: usize, a: usize, b: usize| VectorSpec {
        g_prime: 1,
        branch: vec![e(s), e(s)],
        eta: vec![e(a), e(b)],
    };
    AlgebraicDatum::new(g.clone(), kernels, [v(0, 1, 2), v(2, 0, 3), v(1, 1, 3)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        let p = Params::parse("n1=1, n2=2,n3=3").unwrap();
        assert_eq!(p.triple(), [1, 2, 3]);
        assert_eq!(Params::parse("n=2").unwrap().triple(), [2, 2, 2]);
        assert_eq!(Params::parse("").unwrap().triple(), [1, 1, 1]);
        assert!(Params::parse("m=2").is_err());
        assert!(Params::parse("n=0").is_err());
        assert!(Params::parse("n").is_err());
    }

    #[test]
    fn every_builtin_is_well_formed() {
        for name in NAMES {
            let p = Params::default().with("n1", 2);
            let d = builtin(name, &p).unwrap();
            assert!(d.report().is_well_formed(), "{name}: {:?}", d.report());
        }
        assert!(matches!(
            builtin("example5", &Params::default()),
            Err(Error::UnknownExample(_))
        ));
        assert!(example2b([1, 1, 1]).is_err());
    }

    #[test]
    fn branch_multiplicities() {
        let d = example2b([3, 1, 1]).unwrap();
        // e1^2 has order 3 modulo K_2 = <e2>
        assert_eq!(d.factor(2).unwrap().branch_reps().len(), 3);
        let d = example1([2, 3, 1]).unwrap();
        assert!(d.factors().iter().all(|f| f.branch_reps().len() == 2));
    }
}
