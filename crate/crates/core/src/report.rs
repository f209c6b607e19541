//! Machine-readable run reports and the acceptance battery tying all
//! module-level verifications together.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactlin::Echelon;
use crate::hecke::{
    c_expansion, eq10_check, geck_tilde_y, rsk_cell, theorem2a_check, HeckeContext, LaurentPoly,
};
use crate::partalg::schur_weyl_check;
use crate::permcomb::{consecutive_cycles, grid, Partition, Permutation, StandardTableau};
use crate::stochastic::{
    conv_hull_membership, enumerate_vertices, enumerate_vertices_by_traversal, greedy_decompose,
    is_doubly_stochastic, is_vertex, omega_membership, positive_kron_diagonal,
    roberson_schmidt_matrix, sample_omega_points, section5_solution_space, ConvexCertificate,
    DecomposeOutcome, SpanContext,
};
use crate::tensorrep::{
    kron_power, remark4_basis, span_rank_by_tableau_count, theorem1_basis, Direction,
};
use crate::{Budget, Error, Result};

pub const REPORT_VERSION: u32 = 1;

/// One verification: what was checked, on what inputs, what was expected and
/// observed, and whether it passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// A full run report. All timing is isolated in the single `elapsed_ms`
/// field so that reports for identical runs are byte-identical apart
/// from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub elapsed_ms: u128,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            version: REPORT_VERSION,
            elapsed_ms: 0,
            checks: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) {
        self.checks.push(CheckRecord {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        });
    }

    /// Records an outcome that may have failed with an error: errors become
    /// failing records instead of aborting the run.
    pub fn push_outcome(
        &mut self,
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        outcome: Result<(String, bool)>,
    ) {
        match outcome {
            Ok((actual, pass)) => self.push(name, inputs, expected, actual, pass),
            Err(e) => self.push(name, inputs, expected, format!("error: {e}"), false),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad report JSON: {e}")))
    }

    pub fn to_csv(&self) -> String {
        let esc = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        let mut out = String::from("name,inputs,expected,actual,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                esc(&c.name),
                esc(&c.inputs),
                esc(&c.expected),
                esc(&c.actual),
                c.pass
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} [{}] expected {}, actual {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.inputs,
                c.expected,
                c.actual
            ));
        }
        let (total, passed) = (self.checks.len(), self.checks.iter().filter(|c| c.pass).count());
        out.push_str(&format!("{passed}/{total} checks passed\n"));
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

impl Default for Report {
    fn default() -> Self {
        Report::new()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidInput(format!(
                "unknown format {other:?}; use json, csv, or text"
            ))),
        }
    }
}

/// Length of the longest increasing subsequence of a word, by patience
/// sorting.
fn lis_of(word: &[usize]) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &x in word {
        let pos = tails.partition_point(|&t| t < x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

/// Calls f on every permutation word of {1..n} (Heap's algorithm); avoids
/// materializing the n! words.
fn for_each_word(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (1..=n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Stirling numbers of the second kind S(m, k) for k = 0..=m.
fn stirling2_row(m: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![0u64; row.len() + 1];
        for (k, &v) in row.iter().enumerate() {
            next[k + 1] += v;
            next[k] += k as u64 * v;
        }
        row = next;
    }
    row
}

const THEOREM1_PAIRS: [(usize, usize); 14] = [
    (2, 1),
    (3, 1),
    (4, 1),
    (5, 1),
    (6, 1),
    (2, 2),
    (3, 2),
    (4, 2),
    (5, 2),
    (6, 2),
    (2, 3),
    (3, 3),
    (4, 3),
    (5, 3),
];

fn criterion1(rep: &mut Report, budget: &Budget) {
    for (n, r) in THEOREM1_PAIRS {
        let inputs = format!("n={n}, r={r}");
        let expected = span_rank_by_tableau_count(n, r);
        rep.push_outcome(
            "1.basis",
            &inputs,
            format!("{expected} independent spanning Kronecker powers"),
            theorem1_basis(n, r, Direction::Increasing, budget).map(|basis| {
                (
                    format!("{} (verified basis)", basis.len()),
                    basis.len() == expected,
                )
            }),
        );
        rep.push_outcome(
            "1.decreasing-variant",
            &inputs,
            "translate of the increasing basis by the longest element",
            (|| {
                let w0 = Permutation::longest_element(n);
                let inc = theorem1_basis(n, r, Direction::Increasing, budget)?;
                let dec: BTreeSet<Permutation> = theorem1_basis(n, r, Direction::Decreasing, budget)?
                    .into_iter()
                    .collect();
                let translated: BTreeSet<Permutation> = inc
                    .iter()
                    .map(|w| w.compose(&w0))
                    .collect::<Result<_>>()?;
                let ok = dec == translated;
                Ok((
                    if ok {
                        "identical sets".to_string()
                    } else {
                        "sets differ".to_string()
                    },
                    ok,
                ))
            })(),
        );
    }
}

fn criterion2(rep: &mut Report) {
    for n in 2..=10usize {
        let inputs = format!("n={n}");
        let expected_size = n * n - 2 * n + 2;
        let cc = consecutive_cycles(n);
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for_each_word(n, |w| {
            if lis_of(w) >= n - 1 {
                found.insert(w.to_vec());
            }
        });
        let cc_words: BTreeSet<Vec<usize>> = cc.iter().map(|w| w.word().to_vec()).collect();
        rep.push(
            "2.lis-set",
            &inputs,
            format!("{{w : lis >= n-1}} = consecutive cycles, {expected_size} elements"),
            format!("{} elements, sets {}", found.len(), if found == cc_words { "equal" } else { "differ" }),
            found == cc_words && cc.len() == expected_size,
        );
        let g = grid(n);
        let dedup: BTreeSet<Permutation> = g.iter().flatten().cloned().collect();
        let mut restricts = true;
        if n >= 3 {
            let h = grid(n - 1);
            for k in 0..n - 1 {
                for j in 0..n - 1 {
                    let mut word = h[k][j].word().to_vec();
                    word.push(n);
                    if g[k][j] != Permutation::from_word(word).expect("extended word") {
                        restricts = false;
                    }
                }
            }
        }
        rep.push(
            "2.grid",
            &inputs,
            "grid deduplicates to the consecutive cycles and restricts to the smaller grid",
            format!(
                "dedup {}, restriction {}",
                if dedup == cc { "matches" } else { "differs" },
                if restricts { "matches" } else { "differs" }
            ),
            dedup == cc && restricts,
        );
    }
}

/// The frozen 16x16 counterexample, as numerators over 5.
pub const COUNTEREXAMPLE_NUMERATORS: [[i64; 16]; 16] = [
    [2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2],
];

/// The byte-exact serialization of the counterexample in the matrix file
/// format, rebuilt from the frozen numerator table.
pub fn counterexample_expected_text() -> String {
    let mut out = String::from("16 16\n");
    for (i, row) in COUNTEREXAMPLE_NUMERATORS.iter().enumerate() {
        for (j, &num) in row.iter().enumerate() {
            if num != 0 {
                out.push_str(&format!("{i} {j} {num}/5\n"));
            }
        }
    }
    out
}

fn criterion3(rep: &mut Report, budget: &Budget) {
    let m = roberson_schmidt_matrix();
    rep.push(
        "3.bytes",
        "n=4, r=2",
        "serialization equals the frozen matrix file",
        if m.to_text() == counterexample_expected_text() {
            "byte-identical".into()
        } else {
            "differs".to_string()
        },
        m.to_text() == counterexample_expected_text(),
    );
    rep.push(
        "3.doubly-stochastic",
        "n=4, r=2",
        "true",
        is_doubly_stochastic(&m).to_string(),
        is_doubly_stochastic(&m),
    );
    rep.push_outcome(
        "3.in-span",
        "n=4, r=2",
        "member of the Kronecker span",
        SpanContext::new(4, 2, budget)
            .and_then(|ctx| ctx.in_span(&m))
            .map(|ok| (ok.to_string(), ok)),
    );
    let diag = positive_kron_diagonal(&m, 4, 2);
    rep.push(
        "3.no-positive-diagonal",
        "n=4, r=2",
        "none over all 24 permutations",
        match &diag {
            None => "none".to_string(),
            Some(w) => format!("found {w}"),
        },
        diag.is_none(),
    );
    rep.push_outcome(
        "3.farkas",
        "n=4, r=2",
        "verified exact infeasibility certificate",
        conv_hull_membership(&m, 4, 2).map(|cert| match cert {
            ConvexCertificate::Farkas(y) => (format!("Farkas vector of length {}", y.len()), true),
            ConvexCertificate::Weights(_) => ("feasible (unexpected)".into(), false),
        }),
    );
}

const GREEDY_PAIRS: [(usize, usize); 5] = [(2, 1), (2, 2), (3, 2), (3, 3), (4, 3)];

fn criterion4(rep: &mut Report, seed: u64, budget: &Budget) {
    rep.push_outcome(
        "4.gamma-vertices",
        "n=4, r=2",
        "all 24 Kronecker powers pass the vertex test",
        (|| {
            let ctx = SpanContext::new(4, 2, budget)?;
            let mut passing = 0usize;
            for w in Permutation::all(4) {
                if is_vertex(&kron_power(&w, 2), &ctx)? {
                    passing += 1;
                }
            }
            Ok((format!("{passing} of 24"), passing == 24))
        })(),
    );
    for (n, r) in GREEDY_PAIRS {
        rep.push_outcome(
            "4.greedy-decompose",
            format!("n={n}, r={r}, seed={seed}, points=100"),
            "100 sampled points decompose with exact reconstruction",
            (|| {
                let ctx = SpanContext::new(n, r, budget)?;
                let points = sample_omega_points(&ctx, seed, 20, 80)?;
                let mut ok = 0usize;
                for m in &points {
                    match greedy_decompose(m, &ctx)? {
                        DecomposeOutcome::Weights(ws) => {
                            let mut rebuilt =
                                crate::exactlin::SparseMat::zero(ctx.size(), ctx.size());
                            for (w, c) in ws {
                                rebuilt.add_scaled(&c, &kron_power(&w, r));
                            }
                            if rebuilt == *m {
                                ok += 1;
                            }
                        }
                        DecomposeOutcome::Stuck { .. } => {}
                    }
                }
                Ok((format!("{ok} of {}", points.len()), ok == points.len() && points.len() == 100))
            })(),
        );
    }
}

fn criterion5(rep: &mut Report, budget: &Budget) {
    rep.push_outcome(
        "5.vertex-enumeration",
        "n=4, r=2",
        "162 vertices, both algorithms agree, all pass the vertex test, 24 Gamma points",
        (|| {
            let ctx = SpanContext::new(4, 2, budget)?;
            let dd = enumerate_vertices(&ctx)?;
            let tr = enumerate_vertices_by_traversal(&ctx)?;
            let agree = dd == tr;
            let mut vertex_ok = 0usize;
            for p in &dd {
                if is_vertex(&p.matrix, &ctx)? {
                    vertex_ok += 1;
                }
            }
            let gamma: BTreeSet<_> = Permutation::all(4)
                .iter()
                .map(|w| kron_power(w, 2))
                .collect();
            let gamma_hits = dd.iter().filter(|p| gamma.contains(&p.matrix)).count();
            Ok((
                format!(
                    "{} vertices, algorithms {}, {} pass vertex test, {} Gamma points",
                    dd.len(),
                    if agree { "agree" } else { "disagree" },
                    vertex_ok,
                    gamma_hits
                ),
                dd.len() == 162 && agree && vertex_ok == dd.len() && gamma_hits == 24,
            ))
        })(),
    );
}

const SCHUR_WEYL_PAIRS: [(usize, usize); 5] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)];

fn criterion6(rep: &mut Report, budget: &Budget) {
    for (n, r) in SCHUR_WEYL_PAIRS {
        let inputs = format!("n={n}, r={r}");
        let stirling = stirling2_row(2 * r);
        let expected_commutant: u64 = stirling.iter().take(n + 1).skip(1).sum();
        let expected_bicommutant = span_rank_by_tableau_count(n, r);
        rep.push_outcome(
            "6.schur-weyl",
            &inputs,
            format!("commutant {expected_commutant}, bicommutant {expected_bicommutant}"),
            schur_weyl_check(n, r, budget).map(|sw| {
                (
                    format!("commutant {}, bicommutant {}", sw.dim_commutant, sw.dim_bicommutant),
                    sw.dim_commutant as u64 == expected_commutant
                        && sw.dim_bicommutant == expected_bicommutant,
                )
            }),
        );
        rep.push_outcome(
            "6.linear-description",
            &inputs,
            format!("solution space of dimension {expected_bicommutant} equal to the span"),
            section5_solution_space(n, r, budget)
                .map(|sols| (format!("dimension {}", sols.len()), sols.len() == expected_bicommutant)),
        );
    }
}

const THEOREM2A_PAIRS: [(usize, usize, usize); 5] =
    [(4, 1, 14), (4, 2, 1), (5, 1, 103), (5, 2, 42), (5, 3, 1)];

fn criterion7(rep: &mut Report, budget: &Budget) {
    for n in 2..=4usize {
        let inputs = format!("n={n}");
        rep.push_outcome(
            "7.kl-basis",
            &inputs,
            "every C' is bar-invariant with strictly negative correction degrees of the right parity",
            (|| {
                let ctx = HeckeContext::new(n);
                for w in Permutation::all(n) {
                    let cp = ctx.cprime(&w)?;
                    for (y, p) in cp.terms() {
                        if *y == w {
                            if *p != LaurentPoly::one() {
                                return Ok((format!("leading coefficient {p} at {w}"), false));
                            }
                        } else {
                            for (e, _) in p.terms() {
                                if e >= 0 {
                                    return Ok((
                                        format!("nonnegative degree {e} in coefficient of {y} in C'_{w}"),
                                        false,
                                    ));
                                }
                                let parity = (w.length() + y.length()) as i32;
                                if (parity - e).rem_euclid(2) != 0 {
                                    return Ok((
                                        format!("degree {e} of wrong parity at ({y}, {w})"),
                                        false,
                                    ));
                                }
                            }
                        }
                    }
                    if ctx.bar(&cp)? != cp {
                        return Ok((format!("C'_{w} not bar-invariant"), false));
                    }
                }
                Ok(("all pass".into(), true))
            })(),
        );
        rep.push_outcome(
            "7.tilde-y",
            &inputs,
            "per-shape constant sign relating the two constructions",
            (|| {
                let ctx = HeckeContext::new(n);
                let signs = eq10_check(&ctx)?;
                let txt: Vec<String> = signs
                    .iter()
                    .map(|s| format!("{}:{}", s.lambda, if s.sign > 0 { "+" } else { "-" }))
                    .collect();
                Ok((txt.join(" "), true))
            })(),
        );
        rep.push_outcome(
            "7.geck-triangularity",
            &inputs,
            "unique unit leading member in the transposed cell, dominated elsewhere",
            (|| {
                let ctx = HeckeContext::new(n);
                for lambda in Partition::all(n) {
                    let lt = lambda.transpose();
                    let tabs = StandardTableau::enumerate(&lambda);
                    for s in &tabs {
                        for t in &tabs {
                            let tilde = geck_tilde_y(&ctx, &lambda, s, t)?;
                            let expansion = c_expansion(&ctx, &tilde)?;
                            let mut units = 0usize;
                            for (x, c) in &expansion {
                                let shape = rsk_cell(x);
                                if shape == lt {
                                    if *c == LaurentPoly::one() {
                                        units += 1;
                                    } else if !c.strictly_positive() {
                                        return Ok((
                                            format!("same-cell coefficient {c} at {x}"),
                                            false,
                                        ));
                                    }
                                } else if !(lt.dominates(&shape)? && shape != lt) {
                                    return Ok((
                                        format!("shape {shape} not strictly below {lt}"),
                                        false,
                                    ));
                                }
                            }
                            if units != 1 {
                                return Ok((format!("{units} unit leading members"), false));
                            }
                        }
                    }
                }
                Ok(("all pass".into(), true))
            })(),
        );
    }
    for (n, r, expected) in THEOREM2A_PAIRS {
        rep.push_outcome(
            "7.annihilator-basis",
            format!("n={n}, r={r}"),
            format!("{expected} specialized C-basis elements spanning the kernel"),
            theorem2a_check(n, r, budget)
                .map(|a| (a.size.to_string(), a.size == expected)),
        );
    }
}

const REMARK4_PAIRS: [(usize, usize); 5] = [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)];

fn criterion8(rep: &mut Report, budget: &Budget) {
    for (n, r) in REMARK4_PAIRS {
        rep.push_outcome(
            "8.restricted-basis",
            format!("n={n}, r={r}"),
            "basis size equals the rank of the embedded subgroup span",
            (|| {
                let basis = remark4_basis(n, r, budget)?;
                let size = n.pow(r as u32);
                let mut ech = Echelon::new(size * size);
                for w in Permutation::all(n - 1) {
                    let mut word = w.word().to_vec();
                    word.push(n);
                    let e = Permutation::from_word(word)?;
                    ech.insert(&kron_power(&e, r).vectorize());
                }
                Ok((
                    format!("{} basis elements, rank {}", basis.len(), ech.rank()),
                    basis.len() == ech.rank(),
                ))
            })(),
        );
    }
}

/// Runs the full acceptance battery. Every criterion contributes records;
/// mathematical failures and internal errors become failing records, never
/// panics.
pub fn run_acceptance_suite(seed: u64, budget: &Budget) -> Report {
    let start = std::time::Instant::now();
    let mut rep = Report::new();
    criterion1(&mut rep, budget);
    criterion2(&mut rep);
    criterion3(&mut rep, budget);
    criterion4(&mut rep, seed, budget);
    criterion5(&mut rep, budget);
    criterion6(&mut rep, budget);
    criterion7(&mut rep, budget);
    criterion8(&mut rep, budget);
    rep.elapsed_ms = start.elapsed().as_millis();
    rep
}

/// Spot-check used by the omega/decompose CLI paths: summarizes the status
/// of one matrix.
pub fn describe_matrix(
    m: &crate::exactlin::SparseMat,
    n: usize,
    r: usize,
    budget: &Budget,
) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut rep = Report::new();
    let ctx = SpanContext::new(n, r, budget)?;
    let ds = is_doubly_stochastic(m);
    rep.push("doubly-stochastic", format!("n={n}, r={r}"), "-", ds.to_string(), ds);
    let in_span = ctx.in_span(m)?;
    rep.push("in-span", format!("n={n}, r={r}"), "-", in_span.to_string(), in_span);
    if ds && in_span {
        let member = omega_membership(m, &ctx)?;
        rep.push("omega-member", format!("n={n}, r={r}"), "-", member.to_string(), member);
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_roundtrip_and_formats() {
        let mut rep = Report::new();
        rep.push("a", "n=2", "1", "1", true);
        rep.push("b", "n=3, \"quoted\"", "2", "3", false);
        let json = rep.to_json();
        assert_eq!(Report::from_json(&json).unwrap(), rep);
        assert!(!rep.all_pass());
        let csv = rep.to_csv();
        assert!(csv.starts_with("name,inputs,expected,actual,pass\n"));
        assert!(csv.contains("\"\"quoted\"\""));
        let text = rep.to_text();
        assert!(text.contains("PASS a"));
        assert!(text.contains("FAIL b"));
        assert!(text.ends_with("1/2 checks passed\n"));
    }

    #[test]
    fn empty_report_json() {
        let rep = Report::new();
        assert_eq!(rep.to_json(), "{\"version\":1,\"elapsed_ms\":0,\"checks\":[]}");
    }

    #[test]
    fn json_is_deterministic_apart_from_elapsed() {
        let mut a = Report::new();
        a.push("x", "", "1", "1", true);
        let mut b = a.clone();
        b.elapsed_ms = 99;
        let (ja, jb) = (a.to_json(), b.to_json());
        assert_eq!(
            ja.replace("\"elapsed_ms\":0", "E"),
            jb.replace("\"elapsed_ms\":99", "E")
        );
    }

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("text".parse::<OutputFormat>().unwrap(), OutputFormat::Text);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn lis_and_heap_enumeration() {
        assert_eq!(lis_of(&[3, 1, 4, 2, 5]), 3);
        assert_eq!(lis_of(&[5, 4, 3, 2, 1]), 1);
        let mut count = 0usize;
        let mut seen = std::collections::BTreeSet::new();
        for_each_word(4, |w| {
            count += 1;
            seen.insert(w.to_vec());
        });
        assert_eq!(count, 24);
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling2_row(4), vec![0, 1, 7, 6, 1]);
        let b6: u64 = stirling2_row(6).iter().sum();
        assert_eq!(b6, 203);
    }

    #[test]
    fn counterexample_text_matches_frozen_table() {
        assert_eq!(
            roberson_schmidt_matrix().to_text(),
            counterexample_expected_text()
        );
    }

    #[test]
    fn describe_matrix_on_counterexample() {
        let rep = describe_matrix(&roberson_schmidt_matrix(), 4, 2, &Budget::default()).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.checks.len(), 3);
    }
}
