//! The acceptance criteria and per-module suites, runnable from the CLI and
//! from the test harness.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::arrangement::{lattice_isomorphism, poly_from_roots, Arrangement};
use crate::catalog::{self, CatalogEntry};
use crate::compare::{compare, CompareWhat};
use crate::error::{Error, Result};
use crate::exactla::{Field, PrimeField, Rationals};
use crate::omatroid::{graph_isomorphic, tope_graph};
use crate::random;
use crate::reconstruct::{
    aut_groups_with, conjecture_harness_filtered, conjecture_harness_graded, recover_and_compare_with,
    recover_tope_graph_from_heav, HarnessMode,
};
use crate::vgalgebra::{GenHeaviside, VgAlgebra};

pub const MODULES: &[&str] = &["exactla", "arrangement", "omatroid", "vgalgebra", "reconstruct", "cli"];

/// Default seed for the random arrangement samples.
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Size of each random sample (criteria 5, 6 and 12).
    pub random_count: usize,
    /// Random arrangements added to the exhaustive scan of criterion 8.
    pub scan_count: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: DEFAULT_SEED, random_count: 50, scan_count: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub key: String,
    pub title: String,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

pub struct Check {
    pub key: &'static str,
    pub title: &'static str,
    pub modules: &'static [&'static str],
    run: fn(&Context) -> Result<String>,
}

impl Check {
    pub fn run(&self, cfg: &VerifyConfig) -> CheckResult {
        let start = Instant::now();
        let ctx = Context { cfg: *cfg };
        let (pass, detail) = match (self.run)(&ctx) {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        CheckResult {
            key: self.key.to_string(),
            title: self.title.to_string(),
            pass,
            detail,
            millis: start.elapsed().as_millis(),
        }
    }
}

struct Context {
    cfg: VerifyConfig,
}

impl Context {
    fn generic_sample(&self) -> Vec<Arrangement> {
        random::sample(self.cfg.seed, self.cfg.random_count, 8, true)
    }

    fn general_sample(&self) -> Vec<Arrangement> {
        random::sample(self.cfg.seed ^ 0x5eed, self.cfg.random_count, 8, false)
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn q(a: &Arrangement) -> Result<VgAlgebra<Rationals>> {
    VgAlgebra::new(a, Rationals, false)
}

fn generic_entries() -> Result<Vec<CatalogEntry>> {
    Ok(catalog::all()?
        .into_iter()
        .filter(|e| q(&e.arrangement).map(|vg| vg.lattice().is_generic_codim2()).unwrap_or(false))
        .collect())
}

fn indicator_set<F: Field>(g: &[GenHeaviside<F>]) -> BTreeSet<Vec<bool>> {
    g.iter().map(|h| h.indicator.clone()).collect()
}

fn a3_basics(_: &Context) -> Result<String> {
    let e = catalog::load("a3")?;
    let vg = q(&e.arrangement)?;
    let chi = vg.lattice().char_poly();
    ensure(vg.dim() == 24, || format!("{} chambers", vg.dim()))?;
    ensure(chi == poly_from_roots(&[1, 2, 3], 0), || format!("char poly {chi:?}"))?;
    Ok("24 chambers, (t-1)(t-2)(t-3)".into())
}

fn product_table(_: &Context) -> Result<String> {
    let e = catalog::load("a3")?;
    let vg = q(&e.arrangement)?;
    let t = e.product_table.as_ref().ok_or_else(|| fail("a3 has no product table"))?;
    t.check(&vg).map_err(fail)?;
    Ok(format!("{} rows x {} columns reproduced", t.rows.len(), t.columns.len()))
}

fn pencil(_: &Context) -> Result<String> {
    let e = catalog::load("pencil3")?;
    let vg = q(&e.arrangement)?;
    let g = vg.gheav_bruteforce();
    let heav = g.iter().filter(|h| h.is_heaviside()).count();
    let other: Vec<_> = g.iter().filter(|h| !h.is_heaviside()).collect();
    ensure(g.len() == 8 && heav == 6, || format!("{} elements, {heav} Heaviside", g.len()))?;
    ensure(other.len() == 2 && other[0].complement(vg.field()).indicator == other[1].indicator, || {
        "the two extra elements are not complementary".into()
    })?;
    let aut = aut_groups_with(&vg, &g);
    ensure(aut.filtered == 48u32.into() && aut.graph == 12u32.into(), || {
        format!("Aut_filt {} Aut_graph {}", aut.filtered, aut.graph)
    })?;
    Ok("gHeav 8, Aut_filt 48, Aut_graph 12".into())
}

fn six_planes(_: &Context) -> Result<String> {
    let a = catalog::load("generic6a")?;
    let b = catalog::load("generic6b")?;
    let (va, vb) = (q(&a.arrangement)?, q(&b.arrangement)?);
    ensure(lattice_isomorphism(va.lattice(), vb.lattice()).is_some(), || "lattices differ".into())?;
    ensure(va.dim() == 32 && vb.dim() == 32, || format!("{} and {} chambers", va.dim(), vb.dim()))?;
    for vg in [&va, &vb] {
        ensure(vg.lattice().zaslavsky_count() == 32, || "Zaslavsky count is not 32".into())?;
    }
    let (ga, gb) = (tope_graph(va.chambers()), tope_graph(vb.chambers()));
    ensure(graph_isomorphic(&ga, &gb).is_none(), || "tope graphs are isomorphic".into())?;
    let six = |g: &crate::omatroid::Graph| g.degrees().iter().filter(|&&d| d == 6).count();
    ensure(six(&ga) == 2 && six(&gb) == 0, || format!("degree-6 counts {} and {}", six(&ga), six(&gb)))?;
    let c = compare(&a.arrangement, &b.arrangement, CompareWhat::Topegraph)?;
    Ok(format!("lattices isomorphic; {}", c.message))
}

fn generic_pipeline(ctx: &Context) -> Result<String> {
    let mut arrangements: Vec<Arrangement> = generic_entries()?.into_iter().map(|e| e.arrangement).collect();
    let catalog_count = arrangements.len();
    arrangements.extend(ctx.generic_sample());
    for a in &arrangements {
        let vg = q(a)?;
        let g = vg.gheav_bruteforce();
        ensure(g.len() == 2 * a.n() && g.iter().all(|h| h.is_heaviside()), || {
            format!("{}: gHeav has {} elements", a.hash(), g.len())
        })?;
        let recovered = recover_tope_graph_from_heav(&vg)?;
        ensure(graph_isomorphic(&recovered, &tope_graph(vg.chambers())).is_some(), || {
            format!("{}: recovered tope graph differs", a.hash())
        })?;
    }
    Ok(format!("{catalog_count} catalog + {} random", arrangements.len() - catalog_count))
}

fn structural_equals_bruteforce(ctx: &Context) -> Result<String> {
    let mut arrangements: Vec<Arrangement> = catalog::all()?.into_iter().map(|e| e.arrangement).collect();
    let catalog_count = arrangements.len();
    arrangements.extend(ctx.general_sample());
    let mut non_heaviside = 0;
    for a in &arrangements {
        let vg = q(a)?;
        let brute = vg.gheav_bruteforce();
        let structural = vg.gheav_structural()?;
        ensure(indicator_set(&brute) == indicator_set(&structural), || {
            format!("{}: {} brute force vs {} structural", a.hash(), brute.len(), structural.len())
        })?;
        non_heaviside += brute.iter().filter(|h| !h.is_heaviside()).count();
    }
    Ok(format!(
        "{catalog_count} catalog + {} random, {non_heaviside} non-Heaviside elements in total",
        arrangements.len() - catalog_count
    ))
}

fn presentations(_: &Context) -> Result<String> {
    let mut circuits = 0;
    for e in catalog::all()? {
        let rq = q(&e.arrangement)?.verify_presentations();
        let r3 = VgAlgebra::new(&e.arrangement, PrimeField::new(3)?, false)?.verify_presentations();
        for r in [&rq, &r3] {
            ensure(r.pass(), || format!("{} over {}: {}", e.name, r.field, r.failures().join("; ")))?;
        }
        circuits += rq.circuits.len();
    }
    Ok(format!("{circuits} circuits over Q and F_3"))
}

fn scan_agrees<F: Field>(a: &Arrangement, field: F) -> Result<usize> {
    let vg = VgAlgebra::new(a, field, false)?;
    let lines: BTreeSet<_> = vg.sqzero()?.into_iter().map(|l| l.direction).collect();
    let scan: BTreeSet<_> = vg.sqzero_scan()?.into_iter().collect();
    ensure(lines == scan, || {
        format!("{} over F_{}: {} lines vs {} scanned", a.hash(), vg.field().characteristic(), lines.len(), scan.len())
    })?;
    Ok(lines.len())
}

fn sqzero_scan(ctx: &Context) -> Result<String> {
    let mut arrangements: Vec<Arrangement> = catalog::all()?.into_iter().map(|e| e.arrangement).collect();
    arrangements.extend(random::sample(ctx.cfg.seed ^ 0x5ca9, ctx.cfg.scan_count, 8, false));
    for a in &arrangements {
        for p in [3, 5] {
            scan_agrees(a, PrimeField::new(p)?)?;
        }
    }
    Ok(format!("{} arrangements over F_3 and F_5", arrangements.len()))
}

fn falk(_: &Context) -> Result<String> {
    let a = catalog::load("falk-a")?;
    let b = catalog::load("falk-b")?;
    let (la, lb) = (q(&a.arrangement)?.sqzero()?, q(&b.arrangement)?.sqzero()?);
    ensure(la.len() == 11 && lb.len() == 10, || format!("{} and {} lines", la.len(), lb.len()))?;
    let c = compare(&a.arrangement, &b.arrangement, CompareWhat::GradedVgInvariants)?;
    ensure(c.isomorphic == Some(false), || c.message.clone())?;
    let mut out = c.message;
    for e in [&a, &b] {
        if let Some(note) = e.sqzero_reference.as_ref().and_then(|r| r.discrepancy.as_ref()) {
            out.push_str(&format!("; note for {}: {note}", e.name));
        }
    }
    Ok(out)
}

fn circuit_recovery(_: &Context) -> Result<String> {
    let mut runs = 0;
    for e in generic_entries()? {
        let vg = q(&e.arrangement)?;
        let n = vg.n();
        let lines = vg.sqzero()?;
        for mask in 0u32..1 << n {
            let scalars: Vec<_> = (0..n).map(|i| Rationals.from_i64(if mask >> i & 1 == 1 { -1 } else { 1 })).collect();
            let v = recover_and_compare_with(&vg, &lines, &scalars)?;
            ensure(v.pass(), || format!("{} with sign mask {mask:b}: not a reorientation", e.name))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} sign rescalings"))
}

fn harnesses(_: &Context) -> Result<String> {
    let mut summary = Vec::new();
    for name in ["pencil3", "a3"] {
        let vg = q(&catalog::load(name)?.arrangement)?;
        let r = conjecture_harness_filtered(&vg, HarnessMode::Exhaustive)?;
        let again = conjecture_harness_filtered(&vg, HarnessMode::Exhaustive)?;
        ensure(r == again, || format!("{name}: filtered harness is not deterministic"))?;
        ensure(r.is_complete(), || format!("{name}: unclassified choices"))?;
        ensure(r.consistent(), || format!("{name}: {} counterexamples", r.counterexamples.len()))?;
        summary.push(format!("{name} filtered {}/{} matching", r.matching, r.basis_valid));
    }
    for e in generic_entries()? {
        let vg = q(&e.arrangement)?;
        let r = conjecture_harness_graded(&vg, HarnessMode::Exhaustive)?;
        let again = conjecture_harness_graded(&vg, HarnessMode::Exhaustive)?;
        ensure(r == again, || format!("{}: graded harness is not deterministic", e.name))?;
        ensure(r.is_complete(), || format!("{}: unclassified choices", e.name))?;
        ensure(r.consistent(), || format!("{}: {} counterexamples", e.name, r.counterexamples.len()))?;
        summary.push(format!("{} graded {}/{}", e.name, r.matching, r.examined));
    }
    Ok(format!("zero counterexamples ({})", summary.join(", ")))
}

fn fil_dims(a: &Arrangement) -> Result<Vec<usize>> {
    if a.n() == 0 {
        return Ok(vec![1; a.ell() + 1]);
    }
    Ok(q(a)?.fil().dims())
}

fn at(dims: &[usize], k: isize) -> usize {
    if k < 0 {
        0
    } else {
        dims[(k as usize).min(dims.len() - 1)]
    }
}

/// Zaslavsky, deletion-restriction for `Fil^k` and graph distance = `#Sep`.
pub fn cross_module_consistency(a: &Arrangement) -> Result<()> {
    let vg = q(a)?;
    let h = a.hash();
    ensure(vg.lattice().zaslavsky_count() == vg.dim() as u64, || format!("{h}: Zaslavsky count"))?;
    let dims = vg.fil().dims();
    for i in 0..a.n() {
        let del = if a.n() == 1 { vec![1; a.ell() + 1] } else { fil_dims(&a.delete(i))? };
        let res = fil_dims(&vg.restriction(i).arrangement)?;
        for k in 0..=a.ell() as isize {
            ensure(at(&dims, k) == at(&del, k) + at(&res, k - 1), || {
                format!("{h}: deletion-restriction fails at H{} k={k}", i + 1)
            })?;
        }
    }
    let cs = vg.chambers();
    let dist = tope_graph(cs).distances();
    for (c, row) in dist.iter().enumerate() {
        for (d, &k) in row.iter().enumerate() {
            ensure(k == cs.sep_count(c, d), || format!("{h}: distance {c}-{d}"))?;
        }
    }
    Ok(())
}

fn consistency(ctx: &Context) -> Result<String> {
    let mut arrangements: Vec<Arrangement> = catalog::all()?.into_iter().map(|e| e.arrangement).collect();
    arrangements.extend(ctx.generic_sample());
    arrangements.extend(ctx.general_sample());
    for a in &arrangements {
        cross_module_consistency(a)?;
    }
    Ok(format!("{} arrangements", arrangements.len()))
}

fn catalog_self_check(_: &Context) -> Result<String> {
    let entries = catalog::all()?;
    let n: usize = entries.iter().map(|e| e.invariants.len()).sum();
    Ok(format!("{} entries, {n} recorded invariants", entries.len()))
}

/// Criteria `1` to `12`, then the catalog self-check.
pub const CHECKS: &[Check] = &[
    Check { key: "1", title: "A3 chambers and characteristic polynomial", modules: &["arrangement"], run: a3_basics },
    Check { key: "2", title: "A3 product table", modules: &["vgalgebra"], run: product_table },
    Check {
        key: "3",
        title: "pencil gHeav and automorphism orders",
        modules: &["vgalgebra", "reconstruct"],
        run: pencil,
    },
    Check {
        key: "4",
        title: "six generic planes: lattices vs tope graphs",
        modules: &["arrangement", "omatroid"],
        run: six_planes,
    },
    Check { key: "5", title: "codim-2 generic tope graph recovery", modules: &["reconstruct"], run: generic_pipeline },
    Check {
        key: "6",
        title: "structural gHeav equals brute force",
        modules: &["vgalgebra"],
        run: structural_equals_bruteforce,
    },
    Check {
        key: "7",
        title: "presentation relations and graded dimensions",
        modules: &["exactla", "vgalgebra"],
        run: presentations,
    },
    Check {
        key: "8",
        title: "square-zero scan equals union of lines",
        modules: &["exactla", "vgalgebra"],
        run: sqzero_scan,
    },
    Check { key: "9", title: "square-zero counts 11 vs 10", modules: &["vgalgebra", "cli"], run: falk },
    Check {
        key: "10",
        title: "signed circuits from all sign rescalings",
        modules: &["omatroid", "reconstruct"],
        run: circuit_recovery,
    },
    Check {
        key: "11",
        title: "conjecture harnesses find no counterexample",
        modules: &["reconstruct"],
        run: harnesses,
    },
    Check {
        key: "12",
        title: "cross-module consistency",
        modules: &["arrangement", "omatroid", "vgalgebra"],
        run: consistency,
    },
    Check { key: "catalog", title: "catalog entries re-derive", modules: &["cli"], run: catalog_self_check },
];

pub fn check(key: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.key == key)
}

/// Checks belonging to any module in `scope`; an empty scope selects everything.
pub fn select(scope: &[String]) -> Result<Vec<&'static Check>> {
    if let Some(bad) = scope.iter().find(|m| !MODULES.contains(&m.as_str())) {
        return Err(Error::Usage(format!("unknown module `{bad}` (known: {})", MODULES.join(", "))));
    }
    Ok(CHECKS.iter().filter(|c| scope.is_empty() || c.modules.iter().any(|m| scope.iter().any(|s| s == m))).collect())
}

pub fn run(scope: &[String], cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    Ok(select(scope)?.into_iter().map(|c| c.run(cfg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_selection() {
        assert_eq!(select(&[]).unwrap().len(), CHECKS.len());
        let r = select(&["reconstruct".to_string()]).unwrap();
        assert!(r.iter().all(|c| c.modules.contains(&"reconstruct")));
        assert!(select(&["nope".to_string()]).is_err());
    }

    #[test]
    fn consistency_on_small_arrangements() {
        for a in [
            Arrangement::from_i64(1, &[&[1]]).unwrap(),
            Arrangement::from_i64(2, &[&[0, 1], &[2, -1], &[-2, -1]]).unwrap(),
        ] {
            cross_module_consistency(&a).unwrap();
        }
    }

    #[test]
    fn quick_criteria_pass() {
        let cfg = VerifyConfig::default();
        for key in ["1", "2", "3", "9"] {
            let r = check(key).unwrap().run(&cfg);
            assert!(r.pass, "{key}: {}", r.detail);
        }
    }
}
