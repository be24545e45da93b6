//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails other than the known red one, whose
//! documented behaviour is checked instead.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use isogenous::abelian::{smith_normal_form, AbelianGroup, GroupElement, IntMatrix, Subgroup};
use isogenous::aut0::{admissible_characters, aut0, verify_generator, Aut0Status};
use isogenous::builtins::{example1, example2a, example2b, example3, example4};
use isogenous::datum::AlgebraicDatum;
use isogenous::hodge::{hodge_diamond, EigenDimTable};
use isogenous::oracle::{self, DEFAULT_CAP};
use isogenous::report::KernelsReport;
use isogenous::search::{enumerate_data, KernelPolicy, SearchSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn triple(d: &AlgebraicDatum, t: [&[i64]; 3]) -> Result<[GroupElement; 3], String> {
    let g = d.group();
    Ok([g.element(t[0]).map_err(err)?, g.element(t[1]).map_err(err)?, g.element(t[2]).map_err(err)?])
}

/// Every representative passes `verify_generator` and their cosets
/// generate the computed quotient `G_{3,0} / K Delta_G`.
fn generates(d: &AlgebraicDatum, reps: &[[GroupElement; 3]]) -> Check {
    let r = aut0(d).map_err(err)?;
    let cube = d.cube().map_err(err)?;
    let kd = d.k_delta().map_err(err)?;
    let cat = |t: &[GroupElement; 3]| {
        cube.element(&t.iter().flat_map(|x| x.exponents().to_vec()).collect::<Vec<_>>())
            .map_err(err)
    };
    let ours = r.generators.iter().map(cat).collect::<Result<Vec<_>, _>>()?;
    let theirs = reps.iter().map(cat).collect::<Result<Vec<_>, _>>()?;
    let a = Subgroup::generate(&cube, &ours).and_then(|s| s.sum(&kd)).map_err(err)?;
    let b = Subgroup::generate(&cube, &theirs).and_then(|s| s.sum(&kd)).map_err(err)?;
    ensure(a == b, || format!("cosets {reps:?} do not generate the quotient"))?;
    for t in reps {
        ensure(verify_generator(d, t).map_err(err)?, || format!("{t:?} is not in G_3,0"))?;
    }
    Ok(())
}

fn factors_are(d: &AlgebraicDatum, expected: &[i64], label: &str) -> Check {
    let r = aut0(d).map_err(err)?;
    ensure(r.invariant_factors.factors() == expected, || {
        format!("{label}: factors {:?}, expected {expected:?}", r.invariant_factors.factors())
    })
}

fn ns() -> impl Iterator<Item = [i64; 3]> {
    (1..=3).flat_map(|a| (1..=3).flat_map(move |b| (1..=3).map(move |c| [a, b, c])))
}

fn criterion1() -> Check {
    for n in ns() {
        let d = example1(n).map_err(err)?;
        ensure(d.report().is_valid(), || format!("{n:?}: datum is not valid"))?;
        factors_are(&d, &[2, 2], &format!("{n:?}"))?;
        let a = triple(&d, [&[0, n[1], 0], &[n[0], 0, 0], &[0, 0, 0]])?;
        let b = triple(&d, [&[0, n[1], 0], &[0, 0, n[2]], &[0, 0, 0]])?;
        generates(&d, &[a, b]).map_err(|e| format!("{n:?}: {e}"))?;
    }
    Ok(())
}

/// Returns the failure of the second variant at `n1 = 2` separately: it is
/// expected, and what the datum does instead is checked here.
fn criterion2() -> (Check, Check) {
    let main = || -> Check {
        for n in ns() {
            let d = example2a(n).map_err(err)?;
            factors_are(&d, &[2], &format!("2a {n:?}"))?;
            generates(&d, &[triple(&d, [&[0, n[1], 0], &[0, 0, 0], &[0, 0, 0]])?])?;
            if n[0] == 3 {
                let d = example2b(n).map_err(err)?;
                factors_are(&d, &[2], &format!("2b {n:?}"))?;
                generates(&d, &[triple(&d, [&[0, n[1], 0], &[0, 0, n[2]], &[0, 0, 0]])?])?;
            }
        }
        Ok(())
    };
    let at_two = || -> Check {
        for n in ns().filter(|n| n[0] == 2) {
            let b = example2b(n).map_err(err)?;
            let e = example1(n).map_err(err)?;
            let (rb, re) = (aut0(&b).map_err(err)?, aut0(&e).map_err(err)?);
            ensure(rb == re, || format!("2b {n:?} differs from the first family"))?;
            ensure(rb.invariant_factors.factors() == [2, 2], || {
                format!("2b {n:?}: factors {:?}", rb.invariant_factors.factors())
            })?;
            if b.group().order() > 64 {
                continue;
            }
            let (_, brute) = oracle::brute_aut0(&b, DEFAULT_CAP).map_err(err)?;
            ensure(brute == rb.invariant_factors, || format!("2b {n:?}: oracle gives {brute:?}"))?;
        }
        Ok(())
    };
    (main(), at_two())
}

fn criterion3() -> Check {
    for n in 1..=3 {
        let d = example3(n).map_err(err)?;
        let w = &d.report().freeness.witness;
        ensure(w.as_deref() == Some(&[0, n, n][..]), || format!("n = {n}: witness {w:?}"))?;
        let r = aut0(&d).map_err(err)?;
        ensure(r.status == Aut0Status::NonFreeKernelOnly, || format!("n = {n}: status {:?}", r.status))?;
        ensure(r.admissible_counts[0] == 0, || format!("n = {n}: I_1 is not empty"))?;
        factors_are(&d, &[2 * n], &format!("n = {n}"))?;
        generates(&d, &[triple(&d, [&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]])?])?;
    }
    Ok(())
}

fn criterion4() -> Check {
    let d = example4().map_err(err)?;
    ensure(d.report().is_valid(), || "fixture is not valid".into())?;
    let adm = admissible_characters(&d).map_err(err)?;
    let got: BTreeSet<Vec<i64>> = adm.iter().map(|a| a.concatenated()).collect();
    let listed: BTreeSet<Vec<i64>> = [
        vec![1, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0],
        vec![1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1],
        vec![1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0],
    ]
    .into();
    // over Z_2^4 every character is its own inverse, so the closure is the list
    ensure(got == listed, || format!("admissible set {got:?}"))?;
    factors_are(&d, &[2], "fixture")?;
    generates(&d, &[triple(&d, [&[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]])?])
}

fn coordinate_spec() -> SearchSpec {
    SearchSpec {
        group: vec![2, 2, 2],
        kernels: KernelPolicy::Explicit {
            triples: vec![[vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]]],
        },
        g_prime: [1, 1, 1],
        max_branch: 4,
        max_branch_order: None,
        cap: isogenous::search::DEFAULT_CAP,
    }
}

fn spot_spec() -> SearchSpec {
    SearchSpec {
        group: vec![2, 4],
        kernels: KernelPolicy::AllCyclic,
        max_branch: 3,
        ..coordinate_spec()
    }
}

fn criterion5(data: &[AlgebraicDatum]) -> Check {
    let allowed: [&[i64]; 3] = [&[], &[2], &[2, 2]];
    let mut proven = 0;
    for d in data {
        let r = aut0(d).map_err(err)?;
        ensure(r.order() <= 4, || format!("quotient of order {} on {:?}", r.order(), d.group()))?;
        if r.status == Aut0Status::Proven {
            proven += 1;
            ensure(allowed.contains(&r.invariant_factors.factors()), || {
                format!("proven result {:?}", r.invariant_factors.factors())
            })?;
        }
    }
    ensure(proven > 0, || "no proven results".into())
}

fn criterion6(data: &[AlgebraicDatum]) -> Check {
    for d in data {
        let k = KernelsReport::new(d).map_err(err)?;
        ensure(k.chain_holds, || format!("chain fails on a datum over {:?}", d.group().orders()))?;
    }
    Ok(())
}

fn criterion7(data: &[AlgebraicDatum]) -> Check {
    let mut checked = 0;
    for d in data.iter().filter(|d| d.report().is_valid()) {
        let genera = d.genera().map_err(err)?;
        let table = EigenDimTable::new(d).map_err(err)?;
        for (i, &g) in genera.iter().enumerate() {
            ensure(table.total(i) as i64 == g, || format!("factor {i}: eigenspaces sum to {}", table.total(i)))?;
        }
        let h = hodge_diamond(d).map_err(err)?;
        let n = d.group().order();
        let p: i64 = genera.iter().map(|g| g - 1).product();
        let e: i64 = genera.iter().map(|g| 2 - 2 * g).product();
        ensure(-p % n == 0 && h.chi_o() == -p / n, || format!("chi(O) {} vs -{p}/{n}", h.chi_o()))?;
        ensure(e % n == 0 && h.euler() == e / n, || format!("e {} vs {e}/{n}", h.euler()))?;
        // chi(omega) = -chi(O) in dimension three
        let k3 = d.invariants().map_err(err)?.k3;
        ensure(k3 == 48 * -h.chi_o() && k3 == 48 * p / n, || format!("K^3 = {k3}, chi(O) = {}", h.chi_o()))?;
        checked += 1;
    }
    ensure(checked > 0, || "no valid data".into())
}

fn random_group(rng: &mut ChaCha8Rng) -> AbelianGroup {
    let pool = [1i64, 2, 3, 4, 5, 6, 8, 9, 12];
    loop {
        let rank = rng.gen_range(1..=3);
        let orders: Vec<i64> = (0..rank).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        if orders.iter().product::<i64>() <= 256 {
            return AbelianGroup::new(orders).unwrap();
        }
    }
}

fn random_tuples(rng: &mut ChaCha8Rng, g: &AbelianGroup, k: usize) -> Vec<Vec<i64>> {
    (0..k).map(|_| g.orders().iter().map(|&n| rng.gen_range(0..n)).collect()).collect()
}

fn members(h: &Subgroup) -> BTreeSet<Vec<i64>> {
    h.elements().map(|x| x.exponents().to_vec()).collect()
}

fn set(e: &oracle::ElementSet) -> BTreeSet<Vec<i64>> {
    e.members().iter().cloned().collect()
}

fn subgroup_instance(rng: &mut ChaCha8Rng) -> Check {
    let g = random_group(rng);
    let (ka, kb) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let ga = random_tuples(rng, &g, ka);
    let gb = random_tuples(rng, &g, kb);
    let a = Subgroup::from_exponents(&g, &ga).map_err(err)?;
    let b = Subgroup::from_exponents(&g, &gb).map_err(err)?;
    let oa = oracle::closure(&g, &ga, DEFAULT_CAP).map_err(err)?;
    let ob = oracle::closure(&g, &gb, DEFAULT_CAP).map_err(err)?;
    let label = || format!("G = {:?}, A = {ga:?}, B = {gb:?}", g.orders());
    ensure(members(&a) == set(&oa), || format!("span: {}", label()))?;
    let sum = a.sum(&b).map_err(err)?;
    ensure(members(&sum) == set(&oracle::sum(&oa, &ob, DEFAULT_CAP).map_err(err)?), || format!("sum: {}", label()))?;
    let meet = a.intersection(&b).map_err(err)?;
    ensure(members(&meet) == set(&oracle::intersection(&oa, &ob)), || format!("intersection: {}", label()))?;
    let ann = a.annihilator().map_err(err)?;
    ensure(members(&ann) == set(&oracle::annihilator(&oa, DEFAULT_CAP).map_err(err)?), || {
        format!("annihilator: {}", label())
    })?;
    let q = Subgroup::whole(&g).quotient_by(&a).map_err(err)?;
    ensure(q.factors() == &oracle::brute_quotient(&g, &a, DEFAULT_CAP).map_err(err)?, || {
        format!("G/A: {}", label())
    })?;
    let q = sum.quotient_by(&b).map_err(err)?;
    let brute = oracle::brute_quotient_sets(&oracle::enumerate_subgroup(&sum, DEFAULT_CAP).map_err(err)?, &ob, DEFAULT_CAP)
        .map_err(err)?;
    ensure(q.factors() == &brute, || format!("(A+B)/B: {}", label()))
}

fn criterion8(regression: &[AlgebraicDatum], search: &[AlgebraicDatum]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        subgroup_instance(&mut rng)?;
    }
    // |G^3| <= 2^18: the regression data that fit, topped up from the search
    let mut data: Vec<&AlgebraicDatum> = regression.iter().filter(|d| d.group().order() <= 64).collect();
    let pool: Vec<&AlgebraicDatum> = search.iter().filter(|d| d.group().order() <= 64).collect();
    ensure(data.len() + pool.len() >= 20, || "too few small data".into())?;
    let mut picked = BTreeSet::new();
    while data.len() + picked.len() < 20 {
        picked.insert(rng.gen_range(0..pool.len()));
    }
    data.extend(picked.iter().map(|&i| pool[i]));
    for d in data.into_iter().take(20) {
        let a = oracle::cross_check(d, DEFAULT_CAP).map_err(err)?;
        ensure(a.all(), || format!("datum over {:?}: {a:?}", d.group().orders()))?;
    }
    Ok(())
}

fn criterion9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).map_err(err)?;
        let s = smith_normal_form(&a).map_err(err)?;
        common::check_smith(&a, &s).map_err(|e| format!("{rows:?}: {e}"))?;
    }
    Ok(())
}

fn regression_data() -> Vec<AlgebraicDatum> {
    let mut out = Vec::new();
    for n in ns() {
        out.push(example1(n).unwrap());
        out.push(example2a(n).unwrap());
        if n[0] >= 2 {
            out.push(example2b(n).unwrap());
        }
    }
    for n in 1..=3 {
        out.push(example3(n).unwrap());
    }
    out.push(example4().unwrap());
    out
}

struct Line {
    name: &'static str,
    outcome: Check,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn timed(name: &'static str, limit: Option<u64>, f: impl FnOnce() -> Check) -> Line {
    let start = Instant::now();
    let outcome = f();
    Line {
        name,
        outcome,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    }
}

impl Line {
    fn passed(&self) -> bool {
        self.outcome.is_ok() && self.limit.is_none_or(|l| self.elapsed < l)
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let limit = self.limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        print!("{verdict} {} ({:.2}s{limit})", self.name, self.elapsed.as_secs_f64());
        match &self.outcome {
            Err(e) => println!(": {e}"),
            Ok(()) if !self.passed() => println!(": over the time limit"),
            Ok(()) => println!(),
        }
    }
}

fn main() {
    let regression = regression_data();
    let mut lines = vec![timed("1 first family, 27 cases", Some(10), criterion1)];

    let mut at_two = Ok(());
    let mut c2 = timed("2 second family", Some(10), || {
        let (main, two) = criterion2();
        at_two = two;
        main
    });
    if c2.outcome.is_ok() {
        c2.outcome = Err("second variant with n1 = 2 is the first family's datum; \
                          Aut_0 is Z2 + Z2, not Z2 (fast path and oracle agree)"
            .into());
    }
    lines.push(c2);
    lines.push(timed("3 non-free series", Some(5), criterion3));
    lines.push(timed("4 Z2^4 fixture", Some(1), criterion4));

    let mut search = Vec::new();
    lines.push(timed("5 theorem conformance over the search spaces", Some(60), || {
        for spec in [coordinate_spec(), spot_spec()] {
            let data = enumerate_data(&spec).map_err(err)?;
            criterion5(&data)?;
            search.extend(data);
        }
        Ok(())
    }));
    let all: Vec<AlgebraicDatum> = regression.iter().chain(&search).cloned().collect();
    lines.push(timed("6 kernel chain", None, || criterion6(&all)));
    lines.push(timed("7 Hodge consistency", None, || criterion7(&all)));
    lines.push(timed("8 oracle equivalence", Some(120), || criterion8(&regression, &search)));
    lines.push(timed("9 Smith form, 500 matrices", Some(5), criterion9));

    for l in &lines {
        l.print();
    }
    // criterion 2 is red by construction; what must hold instead
    let unexpected: Vec<&str> = lines
        .iter()
        .filter(|l| !l.passed() && !l.name.starts_with('2'))
        .map(|l| l.name)
        .collect();
    let two_ok = lines[1].outcome.as_ref().err().is_some_and(|e| e.starts_with("second variant"));
    if let Err(e) = &at_two {
        println!("n1 = 2 behaviour changed: {e}");
    }
    if !unexpected.is_empty() || !two_ok || at_two.is_err() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
