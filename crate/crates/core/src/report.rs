//! Machine-readable reports and their text rendering.
//!
//! Every section is a plain serde type. The text form is produced from
//! these values only, so the two formats cannot disagree.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abelian::{GroupElement, Subgroup};
use crate::aut0::{admissible_characters, admissible_kernel, aut0, representation_kernel, Aut0Result, Aut0Status};
use crate::datum::{AlgebraicDatum, DatumReport, RigidityClass};
use crate::error::{Error, Result};
use crate::hodge::{hodge_diamond, HodgeDiamond};
use crate::oracle::{cross_check, OracleAgreement};

fn tuples(xs: &[GroupElement]) -> Vec<Vec<i64>> {
    xs.iter().map(|x| x.exponents().to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSection {
    pub valid: bool,
    #[serde(flatten)]
    pub report: DatumReport,
}

impl ValidationSection {
    pub fn new(d: &AlgebraicDatum) -> Self {
        ValidationSection {
            valid: d.report().is_valid(),
            report: d.report().clone(),
        }
    }
}

/// `chi_o`, `euler` and `k3` are present only for free actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsSection {
    pub genera: Option<[i64; 3]>,
    pub q: u32,
    pub chi_o: Option<i64>,
    pub euler: Option<i64>,
    pub k3: Option<i64>,
}

impl InvariantsSection {
    pub fn new(d: &AlgebraicDatum) -> Result<Self> {
        let (chi_o, euler, k3) = if d.report().is_well_formed() && d.is_free() {
            let inv = d.invariants()?;
            (Some(inv.chi_o), Some(inv.euler), Some(inv.k3))
        } else {
            (None, None, None)
        };
        Ok(InvariantsSection {
            genera: d.report().genera,
            q: d.q(),
            chi_o,
            euler,
            k3,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeSection {
    /// `h[p][q] = h^{p,q}`
    pub diamond: [[u64; 4]; 4],
    pub betti: [u64; 7],
}

impl From<HodgeDiamond> for HodgeSection {
    fn from(h: HodgeDiamond) -> Self {
        HodgeSection {
            diamond: h.h,
            betti: h.betti(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleCounts {
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aut0Section {
    pub status: Aut0Status,
    pub rigidity: RigidityClass,
    pub factors: Vec<i64>,
    pub order: i64,
    /// coset representatives `(tau_1, tau_2, tau_3)`
    pub generators: Vec<[Vec<i64>; 3]>,
}

impl From<&Aut0Result> for Aut0Section {
    fn from(r: &Aut0Result) -> Self {
        Aut0Section {
            status: r.status,
            rigidity: r.rigidity,
            factors: r.invariant_factors.factors().to_vec(),
            order: r.order(),
            generators: r
                .generators
                .iter()
                .map(|t| t.clone().map(|x| x.exponents().to_vec()))
                .collect(),
        }
    }
}

/// Either an agreement table or the reason the oracle was not run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub agreement: Option<OracleAgreement>,
    pub skipped: Option<String>,
}

impl OracleSection {
    pub fn run(d: &AlgebraicDatum, cap: u128) -> Result<Self> {
        match cross_check(d, cap) {
            Ok(a) => Ok(OracleSection {
                agreement: Some(a),
                skipped: None,
            }),
            Err(e @ Error::OracleScale { .. }) => Ok(OracleSection {
                agreement: None,
                skipped: Some(e.to_string()),
            }),
            Err(e) => Err(e),
        }
    }

    pub fn disagrees(&self) -> bool {
        self.agreement.as_ref().is_some_and(|a| !a.all())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub group: Vec<i64>,
    pub validation: ValidationSection,
    pub invariants: InvariantsSection,
    /// absent for non-free or ill-formed data
    pub hodge: Option<HodgeSection>,
    pub admissible: Option<AdmissibleCounts>,
    pub aut0: Option<Aut0Section>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleSection>,
}

impl Report {
    /// Runs every pipeline the datum supports. `oracle_cap` enables the
    /// brute-force cross-check.
    pub fn build(d: &AlgebraicDatum, note: Option<&str>, oracle_cap: Option<u128>) -> Result<Self> {
        let validation = ValidationSection::new(d);
        let invariants = InvariantsSection::new(d)?;
        let well_formed = d.report().is_well_formed();
        let hodge = if well_formed && d.is_free() {
            Some(hodge_diamond(d)?.into())
        } else {
            None
        };
        let (admissible, aut0) = if well_formed {
            let r = aut0(d)?;
            let [first, second] = r.admissible_counts;
            (Some(AdmissibleCounts { first, second }), Some((&r).into()))
        } else {
            (None, None)
        };
        let oracle = match oracle_cap {
            Some(cap) if well_formed => Some(OracleSection::run(d, cap)?),
            Some(_) => Some(OracleSection {
                agreement: None,
                skipped: Some("datum is not well formed".into()),
            }),
            None => None,
        };
        Ok(Report {
            note: note.map(str::to_string),
            group: d.group().orders().to_vec(),
            validation,
            invariants,
            hodge,
            admissible,
            aut0,
            oracle,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelEntry {
    /// `"3,0"`, `"2,1"`, `"2,0"`, `"1,1"` or `"admissible"`
    pub name: String,
    pub order: i64,
    pub generators: Vec<Vec<i64>>,
    /// invariant factors of the kernel modulo `K Delta_G`
    pub quotient: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelsReport {
    pub k_delta_order: i64,
    pub kernels: Vec<KernelEntry>,
    /// `G_{3,0} = G_{2,1} <= G_{2,0} = G_{1,1}`
    pub chain_holds: bool,
}

impl KernelsReport {
    pub fn new(d: &AlgebraicDatum) -> Result<Self> {
        let kd = d.k_delta()?;
        let entry = |name: &str, k: &Subgroup| -> Result<KernelEntry> {
            let q = k.quotient_by(&kd)?;
            Ok(KernelEntry {
                name: name.to_string(),
                order: k.order(),
                generators: tuples(&k.canonical_generators()),
                quotient: q.factors().factors().to_vec(),
            })
        };
        let g30 = representation_kernel(d, 3, 0)?;
        let g21 = representation_kernel(d, 2, 1)?;
        let g20 = representation_kernel(d, 2, 0)?;
        let g11 = representation_kernel(d, 1, 1)?;
        let chain_holds = g30 == g21 && g20 == g11 && g30.is_subgroup_of(&g20)?;
        let mut kernels = vec![
            entry("3,0", &g30)?,
            entry("2,1", &g21)?,
            entry("2,0", &g20)?,
            entry("1,1", &g11)?,
        ];
        if d.factors().iter().all(|f| f.g_prime() >= 1) {
            kernels.push(entry("admissible", &admissible_kernel(d, false)?)?);
        }
        Ok(KernelsReport {
            k_delta_order: kd.order(),
            kernels,
            chain_holds,
        })
    }
}

/// Admissible characters listed explicitly, for the `aut0` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aut0Report {
    #[serde(flatten)]
    pub aut0: Aut0Section,
    pub admissible_first: Vec<[Vec<i64>; 3]>,
    pub admissible_second: Vec<[Vec<i64>; 3]>,
}

impl Aut0Report {
    pub fn new(d: &AlgebraicDatum) -> Result<Self> {
        let r = aut0(d)?;
        let adm = admissible_characters(d)?;
        let list = |xs: &[crate::aut0::AdmissibleCharacter]| {
            xs.iter()
                .map(|a| a.triple.clone().map(|c| c.exponents().to_vec()))
                .collect()
        };
        Ok(Aut0Report {
            aut0: (&r).into(),
            admissible_first: list(&adm.first),
            admissible_second: list(&adm.second),
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

// ---- text rendering ----

fn tuple(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn group_name(orders: &[i64]) -> String {
    if orders.is_empty() {
        return "0".into();
    }
    orders.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join(" + ")
}

fn factors_name(f: &[i64]) -> String {
    if f.is_empty() {
        "trivial".into()
    } else {
        group_name(f)
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), T::to_string)
}

fn snake<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// The diamond with `h^{3,3}` on top and `h^{0,0}` at the bottom, entries
/// on a half-cell grid so that every row is centred.
pub fn render_diamond(h: &[[u64; 4]; 4]) -> String {
    let w = h.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for k in (0..=6usize).rev() {
        let entries: Vec<u64> = (0..=3usize)
            .rev()
            .filter(|&p| k >= p && k - p <= 3)
            .map(|p| h[p][k - p])
            .collect();
        let mut line = " ".repeat((4 - entries.len()) * w);
        for (j, x) in entries.iter().enumerate() {
            if j > 0 {
                line.push_str(&" ".repeat(w));
            }
            write!(line, "{x:^w$}").unwrap();
        }
        writeln!(out, "  {}", line.trim_end()).unwrap();
    }
    out
}

pub fn render_validation(v: &ValidationSection) -> String {
    let r = &v.report;
    let mut s = String::new();
    writeln!(s, "validation: {}", if v.valid { "valid" } else { "INVALID" }).unwrap();
    match r.minimality.witness {
        None => writeln!(s, "  minimality: pass").unwrap(),
        Some([i, j]) => writeln!(s, "  minimality: FAIL (K{i} and K{j} meet)").unwrap(),
    }
    for (i, vc) in r.vectors.iter().enumerate() {
        if vc.violations.is_empty() {
            writeln!(s, "  vector {}: {} ok", i + 1, vc.signature).unwrap();
        } else {
            let list: Vec<String> = vc.violations.iter().map(|x| format!("{x:?}")).collect();
            writeln!(s, "  vector {}: {} FAIL {}", i + 1, vc.signature, list.join("; ")).unwrap();
        }
    }
    match &r.freeness.witness {
        None => writeln!(s, "  freeness: pass").unwrap(),
        Some(w) => writeln!(s, "  freeness: FAIL (witness {})", tuple(w)).unwrap(),
    }
    let f = r.flags;
    writeln!(
        s,
        "  flags: kernels cyclic {}, elliptic bases {}, genera >= 2 {}",
        f.kernels_cyclic, f.elliptic_bases, f.genera_at_least_two
    )
    .unwrap();
    s
}

pub fn render_invariants(v: &InvariantsSection) -> String {
    let g = v.genera.map_or("-".into(), |g| format!("{}, {}, {}", g[0], g[1], g[2]));
    format!(
        "invariants:\n  genera: {g}\n  q: {}\n  chi(O): {}\n  e: {}\n  K^3: {}\n",
        v.q,
        opt(&v.chi_o),
        opt(&v.euler),
        opt(&v.k3)
    )
}

pub fn render_hodge(h: &HodgeSection) -> String {
    let b: Vec<String> = h.betti.iter().map(u64::to_string).collect();
    format!("hodge diamond:\n{}  betti: {}\n", render_diamond(&h.diamond), b.join(" "))
}

pub fn render_aut0(a: &Aut0Section) -> String {
    let mut s = String::new();
    writeln!(s, "aut0: {}", factors_name(&a.factors)).unwrap();
    writeln!(s, "  status: {}", snake(&a.status)).unwrap();
    writeln!(s, "  rigidity: {}", snake(&a.rigidity)).unwrap();
    writeln!(s, "  order: {}", a.order).unwrap();
    for t in &a.generators {
        writeln!(s, "  generator: {} {} {}", tuple(&t[0]), tuple(&t[1]), tuple(&t[2])).unwrap();
    }
    s
}

pub fn render_oracle(o: &OracleSection) -> String {
    match (&o.agreement, &o.skipped) {
        (Some(a), _) => {
            let hodge = a.hodge.map_or("-".into(), |b| b.to_string());
            format!(
                "oracle: {}\n  minimality {}, freeness {}, hodge {}, admissible {}, kernel {}, aut0 {}\n",
                if a.all() { "agrees" } else { "DISAGREES" },
                a.minimality,
                a.freeness,
                hodge,
                a.admissible,
                a.kernel,
                a.aut0_factors
            )
        }
        (None, Some(why)) => format!("oracle: skipped ({why})\n"),
        (None, None) => "oracle: skipped\n".into(),
    }
}

pub fn render_report(r: &Report) -> String {
    let mut s = String::new();
    if let Some(n) = &r.note {
        writeln!(s, "note: {n}\n").unwrap();
    }
    writeln!(s, "group: {}\n", group_name(&r.group)).unwrap();
    s += &render_validation(&r.validation);
    s += "\n";
    s += &render_invariants(&r.invariants);
    if let Some(h) = &r.hodge {
        s += "\n";
        s += &render_hodge(h);
    }
    if let Some(a) = &r.admissible {
        writeln!(s, "\nadmissible characters: {} first kind, {} second kind", a.first, a.second).unwrap();
    }
    if let Some(a) = &r.aut0 {
        s += "\n";
        s += &render_aut0(a);
    }
    if let Some(o) = &r.oracle {
        s += "\n";
        s += &render_oracle(o);
    }
    s
}

pub fn render_kernels(k: &KernelsReport) -> String {
    let mut s = format!("K Delta_G order: {}\n", k.k_delta_order);
    for e in &k.kernels {
        let gens: Vec<String> = e.generators.iter().map(|g| tuple(g)).collect();
        writeln!(
            s,
            "G_{}: order {}, mod K Delta_G = {}\n  generators: {}",
            e.name,
            e.order,
            factors_name(&e.quotient),
            if gens.is_empty() { "-".into() } else { gens.join(" ") }
        )
        .unwrap();
    }
    writeln!(s, "chain G_3,0 = G_2,1 <= G_2,0 = G_1,1: {}", k.chain_holds).unwrap();
    s
}

pub fn render_aut0_report(a: &Aut0Report) -> String {
    let mut s = render_aut0(&a.aut0);
    for (name, xs) in [("first", &a.admissible_first), ("second", &a.admissible_second)] {
        writeln!(s, "  admissible ({name} kind): {}", xs.len()).unwrap();
        for t in xs {
            writeln!(s, "    {} (x) {} (x) {}", tuple(&t[0]), tuple(&t[1]), tuple(&t[2])).unwrap();
        }
    }
    s
}
