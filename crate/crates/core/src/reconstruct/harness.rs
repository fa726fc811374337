use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::circuits::check_circuits;
use super::tope::{generalized_tope_graph, GToGraphChoice};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::omatroid::{circuits_equivalent, graph_isomorphic, signed_circuits, tope_graph, tope_graph_necessary_check};
use crate::vgalgebra::{GradedClass, VgAlgebra, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HarnessMode {
    Exhaustive,
    Random { seed: u64, trials: usize },
}

/// A choice that passed every check without matching the expected answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Position of the choice in the enumeration (trial number in random mode).
    pub ordinal: usize,
    /// Indices into the gHeav enumeration or the square-zero line list.
    pub indices: Vec<usize>,
    /// `±1` multipliers of the chosen lines (graded harness only).
    pub signs: Vec<i8>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub schema_version: u32,
    pub harness: &'static str,
    pub arrangement_hash: String,
    pub field: String,
    pub mode: HarnessMode,
    pub note: String,
    /// Size of the pool choices are drawn from.
    pub pool: usize,
    pub examined: usize,
    pub basis_valid: usize,
    /// Passed the necessary checks (filtered) or were good (graded).
    pub passing: usize,
    /// Passing choices that use a non-Heaviside element.
    pub passing_non_heaviside: usize,
    pub matching: usize,
    /// Why failing choices failed, with counts.
    pub rejections: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
}

impl HarnessReport {
    /// Every examined choice falls in exactly one bucket.
    pub fn is_complete(&self) -> bool {
        let rejected: usize = self.rejections.values().sum();
        self.examined == rejected + self.matching + self.counterexamples.len()
            && self.passing == self.matching + self.counterexamples.len()
    }

    pub fn consistent(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

enum Outcome {
    Rejected(String),
    Matching { non_heaviside: bool },
    Counterexample(String),
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m.saturating_sub(k - cur.len()) {
            if i >= m {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    if k <= m {
        rec(0, m, k, &mut cur, &mut out);
    }
    out
}

/// Choices in a deterministic order: lexicographic subsets, or a ChaCha8
/// stream of sorted samples.
fn choices(pool: usize, k: usize, mode: HarnessMode) -> Vec<Vec<usize>> {
    match mode {
        HarnessMode::Exhaustive => combinations(pool, k),
        HarnessMode::Random { seed, trials } => {
            if k > pool {
                return Vec::new();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials)
                .map(|_| {
                    let mut v = sample(&mut rng, pool, k).into_vec();
                    v.sort_unstable();
                    v
                })
                .collect()
        }
    }
}

/// Rejects sizes whose exhaustive enumeration would not finish.
const MAX_CHOICES: u128 = 5_000_000;

fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

impl HarnessReport {
    fn new<F: Field>(vg: &VgAlgebra<F>, harness: &'static str, mode: HarnessMode, note: &str, pool: usize) -> Self {
        HarnessReport {
            schema_version: SCHEMA_VERSION,
            harness,
            arrangement_hash: vg.arrangement().hash(),
            field: vg.field().spec().to_string(),
            mode,
            note: note.to_string(),
            pool,
            examined: 0,
            basis_valid: 0,
            passing: 0,
            passing_non_heaviside: 0,
            matching: 0,
            rejections: BTreeMap::new(),
            counterexamples: Vec::new(),
        }
    }

    fn tally(&mut self, ordinal: usize, indices: Vec<usize>, signs: Vec<i8>, basis: bool, outcome: Outcome) {
        self.examined += 1;
        if basis {
            self.basis_valid += 1;
        }
        match outcome {
            Outcome::Rejected(why) => *self.rejections.entry(why).or_default() += 1,
            Outcome::Matching { non_heaviside } => {
                self.passing += 1;
                self.matching += 1;
                if non_heaviside {
                    self.passing_non_heaviside += 1;
                }
            }
            Outcome::Counterexample(detail) => {
                self.passing += 1;
                self.counterexamples.push(Counterexample { ordinal, indices, signs, detail });
            }
        }
    }
}

/// For each `n`-subset of gHeav forming a basis of `Fil^1` with `1`, builds the
/// generalized tope graph, runs the necessary checks and compares passing
/// graphs with `Tope(A)`.
pub fn conjecture_harness_filtered<F: Field>(vg: &VgAlgebra<F>, mode: HarnessMode) -> Result<HarnessReport> {
    vg.require_odd_char("the filtered harness")?;
    let gheav = vg.gheav_bruteforce();
    let n = vg.n();
    if mode == HarnessMode::Exhaustive && binomial(gheav.len(), n) > MAX_CHOICES {
        return Err(Error::LimitExceeded(format!("C({}, {n}) choices; use random mode", gheav.len())));
    }
    let tope = tope_graph(vg.chambers());
    let rank = vg.arrangement().rank();
    let list = choices(gheav.len(), n, mode);
    let outcomes: Vec<(bool, Outcome)> = list
        .par_iter()
        .map(|idx| {
            let choice = GToGraphChoice::from_gheav(vg, &gheav, idx);
            if !choice.is_basis {
                return (false, Outcome::Rejected("not a basis of Fil^1".into()));
            }
            let g = generalized_tope_graph(vg, &choice);
            let check = tope_graph_necessary_check(&g, n, rank);
            if !check.pass() {
                return (true, Outcome::Rejected(check.failures().join("; ")));
            }
            let non_heaviside = idx.iter().any(|&k| !gheav[k].is_heaviside());
            if graph_isomorphic(&g, &tope).is_some() {
                (true, Outcome::Matching { non_heaviside })
            } else {
                (true, Outcome::Counterexample("passes the necessary checks but is not isomorphic to Tope(A)".into()))
            }
        })
        .collect();
    let mut report = HarnessReport::new(
        vg,
        "filtered",
        mode,
        "necessary checks are incomplete; passing graphs are compared with Tope(A) by isomorphism",
        gheav.len(),
    );
    for (ordinal, (idx, (basis, outcome))) in list.into_iter().zip(outcomes).enumerate() {
        report.tally(ordinal, idx, Vec::new(), basis, outcome);
    }
    Ok(report)
}

/// For each `n`-subset of square-zero lines and each sign pattern on the
/// canonical representatives, classifies the generators as not spanning,
/// not good, or good with recovered circuits equivalent or not.
pub fn conjecture_harness_graded<F: Field>(vg: &VgAlgebra<F>, mode: HarnessMode) -> Result<HarnessReport> {
    vg.require_odd_char("the graded harness")?;
    let f = vg.field();
    let n = vg.n();
    let lines = vg.sqzero()?;
    let subsets = choices(lines.len(), n, mode);
    if 1u128 << n.min(100) > MAX_CHOICES || subsets.len() as u128 * (1u128 << n) > MAX_CHOICES {
        return Err(Error::LimitExceeded("too many generator choices".into()));
    }
    let fc = vg.fil();
    let expected = signed_circuits(vg.arrangement());
    let d1 = fc.graded_dims().get(1).copied().unwrap_or(0);
    let jobs: Vec<(usize, &Vec<usize>, u32)> =
        subsets.iter().enumerate().flat_map(|(o, idx)| (0..1u32 << n).map(move |s| (o, idx, s))).collect();
    let outcomes: Vec<(bool, Outcome)> = jobs
        .par_iter()
        .map(|&(_, idx, s)| {
            let gens: Vec<GradedClass<F>> = idx
                .iter()
                .enumerate()
                .map(|(p, &l)| {
                    let mut u = fc.linear_class(&lines[l].direction);
                    if s >> p & 1 == 1 {
                        u.coords.iter_mut().for_each(|x| *x = f.neg(x));
                    }
                    u
                })
                .collect();
            let spans = Matrix::from_rows(f.clone(), d1, gens.iter().map(|u| u.coords.clone()).collect()).rank() == d1;
            if !spans {
                return (false, Outcome::Rejected("does not span grVG^1".into()));
            }
            let non_heaviside = idx.iter().any(|&l| lines[l].support.len() > 1);
            match check_circuits(vg, &gens) {
                Err(Error::NotGoodGenerators { .. }) => (true, Outcome::Rejected("not good".into())),
                Err(Error::Invariant(msg)) => (true, Outcome::Rejected(format!("no unique relation: {msg}"))),
                Err(e) => (true, Outcome::Rejected(e.to_string())),
                Ok(rec) => {
                    if circuits_equivalent(&expected, &rec.circuits).is_some() {
                        (true, Outcome::Matching { non_heaviside })
                    } else {
                        (true, Outcome::Counterexample(format!("recovered {:?}", rec.circuits.to_strings())))
                    }
                }
            }
        })
        .collect();
    let mut report = HarnessReport::new(
        vg,
        "graded",
        mode,
        "scalars restricted to ±1 times the canonical representative of each line",
        lines.len(),
    );
    for ((ordinal, idx, s), (basis, outcome)) in jobs.into_iter().zip(outcomes) {
        let signs = (0..n).map(|p| if s >> p & 1 == 1 { -1 } else { 1 }).collect();
        report.tally(ordinal, idx.clone(), signs, basis, outcome);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::Rationals;

    fn pencil() -> Arrangement {
        Arrangement::from_i64(2, &[&[0, 1], &[2, -1], &[-2, -1]]).unwrap()
    }

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(8, 3), 56);
    }

    #[test]
    fn pencil_filtered_harness() {
        let vg = VgAlgebra::new(&pencil(), Rationals, false).unwrap();
        let r = conjecture_harness_filtered(&vg, HarnessMode::Exhaustive).unwrap();
        assert_eq!(r.examined, 56);
        assert!(r.is_complete());
        assert!(r.consistent());
        assert!(r.matching > 0);
    }

    #[test]
    fn random_mode_is_reproducible() {
        let vg = VgAlgebra::new(&pencil(), Rationals, false).unwrap();
        let mode = HarnessMode::Random { seed: 7, trials: 20 };
        let a = conjecture_harness_filtered(&vg, mode).unwrap();
        let b = conjecture_harness_filtered(&vg, mode).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.examined, 20);
    }

    #[test]
    fn pencil_graded_harness() {
        let vg = VgAlgebra::new(&pencil(), Rationals, false).unwrap();
        let r = conjecture_harness_graded(&vg, HarnessMode::Exhaustive).unwrap();
        assert_eq!(r.pool, 4);
        assert_eq!(r.examined, 4 * 8);
        assert!(r.is_complete());
        assert!(r.consistent());
    }
}
