use std::collections::BTreeSet;

use isogenous::abelian::{characters, smith_normal_form, AbelianGroup, GroupElement, IntMatrix, Subgroup};
use isogenous::covering::GeneratingVector;
use isogenous::oracle::{self, DEFAULT_CAP};
use proptest::prelude::*;

mod common;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(-20i64..=20, n), m))
}

/// Groups of order at most 256 with up to three cyclic factors.
fn group() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 8, 9, 12]), 1..=3)
        .prop_filter("order <= 256", |o| o.iter().product::<i64>() <= 256)
        .prop_map(|o| AbelianGroup::new(o).unwrap())
}

fn group_with_tuples(k: usize) -> impl Strategy<Value = (AbelianGroup, Vec<Vec<i64>>)> {
    group().prop_flat_map(move |g| {
        let orders = g.orders().to_vec();
        let tuple = orders.iter().map(|&n| 0..n).collect::<Vec<_>>();
        (Just(g), prop::collection::vec(tuple, 0..=k))
    })
}

fn members(h: &Subgroup) -> BTreeSet<Vec<i64>> {
    h.elements().map(|x| x.exponents().to_vec()).collect()
}

fn set(e: &oracle::ElementSet) -> BTreeSet<Vec<i64>> {
    e.members().iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_valid_decomposition(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&a).unwrap();
        if let Err(e) = common::check_smith(&a, &s) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn subgroups_match_closure((g, gens) in group_with_tuples(3), k in 0usize..=3) {
        let split = k.min(gens.len());
        let a = Subgroup::from_exponents(&g, &gens[..split]).unwrap();
        let b = Subgroup::from_exponents(&g, &gens[split..]).unwrap();
        let oa = oracle::closure(&g, &gens[..split], DEFAULT_CAP).unwrap();
        let ob = oracle::closure(&g, &gens[split..], DEFAULT_CAP).unwrap();
        prop_assert_eq!(members(&a), set(&oa));
        prop_assert_eq!(members(&a.sum(&b).unwrap()), set(&oracle::sum(&oa, &ob, DEFAULT_CAP).unwrap()));
        prop_assert_eq!(members(&a.intersection(&b).unwrap()), set(&oracle::intersection(&oa, &ob)));
        prop_assert_eq!(members(&a.annihilator().unwrap()), set(&oracle::annihilator(&oa, DEFAULT_CAP).unwrap()));
        let q = Subgroup::whole(&g).quotient_by(&a).unwrap();
        prop_assert_eq!(q.factors(), &oracle::brute_quotient(&g, &a, DEFAULT_CAP).unwrap());
        prop_assert_eq!(a.annihilator().unwrap().annihilator().unwrap(), a.clone());
        prop_assert_eq!(a.order() * a.annihilator().unwrap().order(), g.order());
    }

    #[test]
    fn quotient_lift_and_image((g, gens) in group_with_tuples(2), x in prop::collection::vec(0i64..1000, 3)) {
        let h = Subgroup::from_exponents(&g, &gens).unwrap();
        let q = Subgroup::whole(&g).quotient_by(&h).unwrap();
        let x = g.element(&x[..g.rank()]).unwrap();
        let img = q.image(&x).unwrap();
        let back = q.lift(img.exponents()).unwrap();
        // x and its lifted image differ by an element of H
        prop_assert!(h.contains(&x.try_sub(&back).unwrap()).unwrap());
    }
}

/// A generating vector over `g`: random branch elements closed up by the
/// product relation, with the basis of `g` as eta so that it generates.
fn vector() -> impl Strategy<Value = (AbelianGroup, u32, Vec<GroupElement>)> {
    (group(), 0usize..=4, 0u32..=1).prop_flat_map(|(g, r, extra)| {
        let tuple = g.orders().iter().map(|&n| 0..n).collect::<Vec<_>>();
        (Just(g), Just(extra), prop::collection::vec(tuple, r))
    })
    .prop_filter_map("nontrivial branch", |(g, extra, raw)| {
        let mut branch: Vec<GroupElement> = raw.iter().map(|t| g.element(t).unwrap()).collect();
        if !branch.is_empty() {
            let s = branch.iter().fold(g.identity(), |a, b| a.try_add(b).unwrap());
            branch.push(s.neg());
        }
        if branch.iter().any(|x| x.is_identity()) {
            return None;
        }
        let g_prime = (g.rank() as u32).div_ceil(2).max(1) + extra;
        Some((g, g_prime, branch))
    })
}

fn build(g: &AbelianGroup, g_prime: u32, branch: Vec<GroupElement>) -> GeneratingVector {
    let mut eta: Vec<GroupElement> = (0..g.rank()).map(|j| g.basis_element(j)).collect();
    eta.resize(2 * g_prime as usize, g.identity());
    GeneratingVector::new(g.clone(), g_prime, branch, eta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn eigenspaces_sum_to_genus((g, g_prime, branch) in vector()) {
        let v = build(&g, g_prime, branch);
        prop_assert!(v.is_valid());
        let table = v.cw_table().unwrap();
        prop_assert_eq!(table.total() as i64, v.genus().unwrap());
        let trivial = isogenous::abelian::Character::trivial(&g);
        prop_assert_eq!(table.get(&trivial), Some(g_prime as u64));
    }

    #[test]
    fn nonvanishing((g, g_prime, branch) in vector()) {
        let v = build(&g, g_prime, branch.clone());
        for chi in characters(&g).filter(|c| !c.is_trivial()) {
            let d = v.cw_dimension(&chi).unwrap();
            if g_prime >= 2 {
                prop_assert!(d >= 1);
            } else {
                let kills = branch.iter().all(|s| chi.pairing(s).unwrap().is_zero());
                prop_assert_eq!(d == 0, kills);
            }
        }
    }

    #[test]
    fn branch_order_is_irrelevant((g, g_prime, branch) in vector(), seed in any::<u64>()) {
        let v = build(&g, g_prime, branch.clone());
        let mut shuffled = branch;
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, (seed as usize / 7) % n);
        }
        let w = build(&g, g_prime, shuffled);
        prop_assert_eq!(v.genus().unwrap(), w.genus().unwrap());
        prop_assert_eq!(v.cw_table().unwrap(), w.cw_table().unwrap());
        prop_assert_eq!(v.stabilizer_union(), w.stabilizer_union());
    }
}
