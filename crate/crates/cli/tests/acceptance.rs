//! End-to-end acceptance checks. Each check prints one PASS/FAIL line; the test fails if the
//! set of failing checks differs from `KNOWN_FAILURES`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use latticelab::casebook::{self, CaseVerdict, PolarizationRoot, TableId};
use latticelab::form::DEFAULT_CAP;
use latticelab::rank2::{self, Parity, Rank2Form};
use latticelab::{discriminant_form, glue, iso, lattice, nikulin, shortvec, GramLattice, Sign};

/// Checks whose reference data cannot be reproduced by a correct implementation.
/// The rank-2 reference lists omit -(18^9 22) at determinant 315 and -(14^-2 26) at 360.
const KNOWN_FAILURES: &[u32] = &[5];

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cubic_report() -> Vec<CaseVerdict> {
    casebook::full_report(TableId::Hm15, PolarizationRoot::E6, 4).unwrap()
}

fn failed_condition(v: &CaseVerdict) -> Option<u8> {
    let text = v.failure.as_deref()?;
    text.strip_prefix("condition ")?.split(':').next()?.parse().ok()
}

fn cubic_filter() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_latticelab"))
        .args(["cubic", "check", "--all", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("exit status {}", out.status));
    }
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let pass: Vec<u64> = json["pass_rows"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    let mut tags = BTreeMap::new();
    for row in json["rows"].as_array().unwrap() {
        if !row["pass"].as_bool().unwrap() {
            let f = row["failure"].as_str().unwrap_or("");
            let cond = f.strip_prefix("condition ").and_then(|s| s.split(':').next()).unwrap_or("?");
            tags.insert(row["row"].as_u64().unwrap(), cond.to_string());
        }
    }
    let tagged = tags.values().all(|t| ["1", "2", "3", "4"].contains(&t.as_str()));
    let ok = pass == [1, 4, 5, 10, 11, 13]
        && tags.len() == 9
        && tagged
        && ["3", "4"].contains(&tags[&2].as_str())
        && tags[&15] == "2"
        && elapsed < Duration::from_secs(10);
    ensure(ok, format!("pass rows {pass:?}, failure conditions {tags:?}, {elapsed:.2?}"))
}

fn transcendental_lattices(report: &[CaseVerdict]) -> Check {
    let expected: BTreeMap<u32, BTreeSet<&str>> = [
        (1, vec!["-(6^3 6)"]),
        (4, vec!["-(2^1 18)", "-(18^3 18)"]),
        (5, vec!["-(6^0 6)"]),
        (10, vec!["-(12^0 30)"]),
        (11, vec!["-(22^11 22)"]),
        (13, vec!["-(10^5 10)"]),
    ]
    .into_iter()
    .map(|(r, ts)| (r, ts.into_iter().collect()))
    .collect();
    let got: BTreeMap<u32, BTreeSet<String>> = report
        .iter()
        .filter(|v| !v.classes.is_empty())
        .map(|v| (v.record.row, v.transcendental_lattices().iter().map(|t| t.to_string()).collect()))
        .collect();
    let ok = got.len() == expected.len()
        && expected.iter().all(|(r, ts)| got.get(r).is_some_and(|g| g.iter().map(String::as_str).eq(ts.iter().copied())));
    ensure(ok, format!("{got:?}"))
}

fn embedding_counts(report: &[CaseVerdict]) -> Check {
    let got: BTreeMap<u32, Vec<usize>> = report
        .iter()
        .filter(|v| !v.classes.is_empty())
        .map(|v| (v.record.row, v.classes.iter().map(|c| c.embedding_count.unwrap_or(0)).collect()))
        .collect();
    let expected: BTreeMap<u32, Vec<usize>> =
        [(1, vec![1]), (4, vec![1, 1]), (5, vec![1]), (10, vec![2]), (11, vec![1]), (13, vec![1])]
            .into_iter()
            .collect();
    let total: usize = got.values().flatten().sum();
    ensure(got == expected && total == 8, format!("{got:?}, total {total}"))
}

fn k3_filters() -> Check {
    let pass = |root| -> Vec<u32> {
        casebook::full_report(TableId::K3Max11, root, 4)
            .unwrap()
            .iter()
            .filter(|v| v.criterion_pass)
            .map(|v| v.record.row)
            .collect()
    };
    let d2 = pass(PolarizationRoot::for_k3_degree(2).unwrap());
    let d6 = pass(PolarizationRoot::for_k3_degree(6).unwrap());
    ensure(d2 == [3, 7, 9, 11] && d6 == [3, 8, 10], format!("degree 2 {d2:?}, degree 6 {d6:?}"))
}

const REFERENCE_LISTS: &[(i64, &[&str])] = &[
    (27, &["-(2^1 14)", "-(6^3 6)"]),
    (35, &["-(6^1 6)", "-(2^1 18)"]),
    (36, &["-(2^0 18)", "-(6^0 6)", "-(4^2 10)"]),
    (75, &["-(2^1 38)", "-(6^3 14)", "-(10^5 10)"]),
    (315, &["-(2^1 158)", "-(6^3 54)", "-(18^3 18)", "-(10^5 34)", "-(14^7 26)"]),
    (
        360,
        &[
            "-(2^0 180)", "-(4^0 90)", "-(6^0 60)", "-(10^0 36)", "-(12^0 30)",
            "-(18^0 20)", "-(14^2 26)", "-(18^6 22)", "-(18^-6 22)",
        ],
    ),
    (363, &["-(2^1 182)", "-(14^1 26)", "-(14^-1 26)", "-(6^3 62)", "-(22^11 22)"]),
];

fn rank2_lists() -> Check {
    let mut diffs = Vec::new();
    for (det, reference) in REFERENCE_LISTS {
        let want: BTreeSet<Rank2Form> = reference.iter().map(|s| Rank2Form::parse(s).unwrap()).collect();
        let got: BTreeSet<Rank2Form> = rank2::enumerate(*det, Parity::Even, Sign::Minus).into_iter().collect();
        let extra: Vec<String> = got.difference(&want).map(|f| f.to_string()).collect();
        let missing: Vec<String> = want.difference(&got).map(|f| f.to_string()).collect();
        if !extra.is_empty() || !missing.is_empty() {
            diffs.push(format!("det {det}: extra {extra:?} missing {missing:?}"));
        }
    }
    if diffs.is_empty() {
        Ok("all seven lists match".into())
    } else {
        Err(diffs.join("; "))
    }
}

fn nonsymplectic_orders(report: &[CaseVerdict]) -> Check {
    let mut n_bars = Vec::new();
    let mut totals = Vec::new();
    for v in report {
        for c in &v.classes {
            for _ in 0..c.embedding_count.unwrap_or(1) {
                n_bars.push(c.n_bar.unwrap());
            }
            totals.push((c.total_order.unwrap(), v.record.row));
        }
    }
    let max = totals.iter().map(|t| t.0).max().unwrap_or(0);
    let at: Vec<u32> = totals.iter().filter(|t| t.0 == max).map(|t| t.1).collect();
    ensure(
        n_bars == [6, 2, 1, 4, 1, 1, 3, 6] && max == 174_960 && at == [1],
        format!("n = {n_bars:?}, max total {max} at rows {at:?}"),
    )
}

fn random_even_lattice(rng: &mut ChaCha8Rng) -> GramLattice {
    loop {
        let r = rng.gen_range(1..=6);
        let mut g = vec![vec![0i64; r]; r];
        for i in 0..r {
            g[i][i] = 2 * rng.gen_range(-3..=3);
            for j in i + 1..r {
                let x = rng.gen_range(-6..=6);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        if let Ok(l) = GramLattice::new(g) {
            return l;
        }
    }
}

fn milgram() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = 0;
    for _ in 0..200 {
        let l = random_even_lattice(&mut rng);
        let (p, m) = l.signature();
        let sig = discriminant_form(&l).unwrap().signature_mod8() as i64;
        if sig != (p as i64 - m as i64).rem_euclid(8) {
            failures += 1;
        }
    }
    ensure(failures == 0, format!("200 lattices, {failures} failures"))
}

fn corpus() -> Vec<(String, GramLattice)> {
    let named = [
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8",
        "A1+A1", "A1+A2", "A2+A2", "A1+A1+A1", "A2+E6", "A1+E7", "A3+A3", "A2+A2+A2", "A1+A1+A1+A1",
        "D4+A1", "U", "U+A1", "U+A2",
    ];
    let mut out: Vec<(String, GramLattice)> =
        named.iter().map(|n| (n.to_string(), lattice::named(n).unwrap())).collect();
    for (n, s) in [
        ("A1", -1), ("A2", -1), ("A3", -1), ("E6", -1), ("E7", -1), ("A1", 2), ("A2", 2), ("A1", 3),
        ("A2", 3), ("D4", 2), ("U", 2), ("U", 3), ("U", 4), ("A3", 2), ("E8", 2), ("A1", 4),
    ] {
        out.push((format!("{n}({s})"), lattice::named(n).unwrap().rescale(s).unwrap()));
    }
    let u2 = lattice::named("U").unwrap().rescale(2).unwrap();
    out.push(("U(2)^4".into(), u2.direct_sum(&u2).direct_sum(&u2).direct_sum(&u2)));
    for g in [[2, 1, 14], [6, 3, 6], [2, 0, 6], [4, 2, 4], [2, 1, 8]] {
        let l = GramLattice::new(vec![vec![g[0], g[1]], vec![g[1], g[2]]]).unwrap();
        out.push((format!("({}^{} {})", g[0], g[1], g[2]), l));
    }
    out
}

fn symbol_oracle() -> Check {
    let lattices = corpus();
    if lattices.len() != 50 || lattices.iter().any(|(_, l)| l.abs_det() > 256.into()) {
        return Err(format!("corpus has {} lattices", lattices.len()));
    }
    let forms: Vec<_> = lattices.iter().map(|(_, l)| discriminant_form(l).unwrap()).collect();
    let (mut pairs, mut agree, mut iso_pairs) = (0, 0, 0);
    let mut disagreements = Vec::new();
    for i in 0..forms.len() {
        for j in i..forms.len() {
            pairs += 1;
            let by_symbol = forms[i].is_isomorphic(&forms[j]);
            let by_search = iso::is_isomorphic_bruteforce(&forms[i], &forms[j], DEFAULT_CAP).unwrap();
            if by_symbol == by_search {
                agree += 1;
                iso_pairs += by_symbol as usize;
            } else {
                disagreements.push(format!("{} vs {}", lattices[i].0, lattices[j].0));
            }
        }
    }
    ensure(
        agree == pairs,
        format!("{agree}/{pairs} pairs agree ({iso_pairs} isomorphic) {disagreements:?}"),
    )
}

fn normal_forms() -> Check {
    let cases = casebook::load_fu_cases().unwrap();
    let dim = |id: &str| {
        let c = cases.iter().find(|c| c.id == id).unwrap();
        casebook::family_dimension(&c.generators)
    };
    let twelve: Vec<usize> = (0..12).map(|i| dim(&i.to_string())).collect();
    let extra = [dim("klein"), dim("order6-a"), dim("order6-b")];
    let mut symplectic = 0;
    for c in cases.iter().filter(|c| c.id.parse::<u32>().is_ok()) {
        let ms = c
            .monomials
            .clone()
            .unwrap_or_else(|| casebook::weights::invariant_monomials(&c.generators));
        if c.generators.iter().all(|g| casebook::symplectic_weight_check(g, &ms).unwrap()) {
            symplectic += 1;
        }
    }
    ensure(
        twelve == [20, 12, 6, 2, 8, 8, 2, 0, 0, 4, 2, 0] && extra == [8, 4, 4] && symplectic == 12,
        format!("dimensions {twelve:?}, Klein and order 6 {extra:?}, {symplectic}/12 symplectic"),
    )
}

fn short_vector_facts() -> Check {
    let start = Instant::now();
    let first = GramLattice::new(vec![vec![-2, -1, 0], vec![-1, -8, 0], vec![0, 0, -12]]).unwrap();
    let second = GramLattice::new(vec![vec![-6, 0, -3], vec![0, -6, -3], vec![-3, -3, -8]]).unwrap();
    let count = |l: &GramLattice, n| shortvec::short_vectors(l, n).unwrap().len();
    let got = [count(&first, -2), count(&first, -6), count(&second, -6), count(&second, -2)];
    let elapsed = start.elapsed();
    ensure(
        got[0] > 0 && got[1] == 0 && got[2] > 0 && got[3] == 0 && elapsed < Duration::from_secs(1),
        format!("counts {got:?} in {elapsed:.2?}"),
    )
}

fn glue_sanity() -> Check {
    let q_a2 = discriminant_form(&lattice::a_n(2)).unwrap();
    let q_e6 = discriminant_form(&lattice::e_n(6)).unwrap();
    let total = q_a2.direct_sum(&q_e6);
    let nontrivial: Vec<_> = glue::isotropic_subgroups(&total, DEFAULT_CAP)
        .unwrap()
        .into_iter()
        .filter(|h| !h.is_trivial())
        .collect();
    let auts = iso::direct_sum_automorphisms(
        &q_a2,
        &iso::automorphisms(&q_a2, DEFAULT_CAP).unwrap(),
        &q_e6,
        &iso::automorphisms(&q_e6, DEFAULT_CAP).unwrap(),
    );
    let sets: Vec<Vec<usize>> = nontrivial.iter().map(|h| h.elements.clone()).collect();
    let classes = iso::orbit_representatives(&total, &sets, &auts);
    let trivial_quotients = nontrivial
        .iter()
        .all(|h| glue::complement_quotient(&total, &h.gens).unwrap().is_trivial());
    ensure(
        classes.len() == 1 && nontrivial.iter().all(|h| h.order == 3) && trivial_quotients,
        format!(
            "{} subgroups of order 3 forming {} class under Aut(q_A2) x Aut(q_E6), quotients trivial: {trivial_quotients}",
            nontrivial.len(),
            classes.len()
        ),
    )
}

/// Gram matrix of D12+ in the basis s, e2-e3, ..., e11-e12, e11+e12 with s = (1/2, ..., 1/2).
fn d12_plus() -> GramLattice {
    let n = 12;
    let mut rows: Vec<Vec<i64>> = vec![vec![1; n]];
    for i in 1..n - 1 {
        let mut v = vec![0; n];
        v[i] = 2;
        v[i + 1] = -2;
        rows.push(v);
    }
    let mut v = vec![0; n];
    v[n - 2] = 2;
    v[n - 1] = 2;
    rows.push(v);
    let gram = rows
        .iter()
        .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() / 4).collect())
        .collect();
    GramLattice::new(gram).unwrap()
}

fn condition_filter() -> Check {
    let mut failing_rows = Vec::new();
    for table in [TableId::Hm15, TableId::K3Max11] {
        for rec in casebook::load_table(table).unwrap() {
            if !casebook::condition_check(&rec).pass {
                failing_rows.push(format!("{} {}", table.name(), rec.row));
            }
        }
    }
    let d12 = d12_plus();
    if d12.abs_det() != 1.into() || d12.is_even() {
        return Err("D12+ construction is not odd unimodular".into());
    }
    let mut involution_verdicts = Vec::new();
    for l in [lattice::e_n(8).rescale(2).unwrap(), d12.rescale(2).unwrap()] {
        let q = discriminant_form(&l).unwrap();
        involution_verdicts.push(casebook::condition_check_invariant(l.rank(), &q).pass);
    }
    let bw16 = latticelab::GenusSymbol::parse("2_II^+8").unwrap().to_form();
    let bw = casebook::condition_check_invariant(16, &bw16).pass;
    ensure(
        failing_rows.is_empty() && involution_verdicts == [false, false] && bw,
        format!("table rows failing {failing_rows:?}, E8(2) and D12+(2) pass {involution_verdicts:?}, rank 16 2_II^+8 passes {bw}"),
    )
}

#[test]
fn acceptance() {
    let report = cubic_report();
    let checks: Vec<(u32, &str, Check)> = vec![
        (1, "cubic maximal-case filter", cubic_filter()),
        (2, "transcendental lattices", transcendental_lattices(&report)),
        (3, "embedding class counts", embedding_counts(&report)),
        (4, "K3 degree 2 and 6 filters", k3_filters()),
        (5, "rank-2 reference lists", rank2_lists()),
        (6, "non-symplectic orders", nonsymplectic_orders(&report)),
        (7, "Milgram signatures", milgram()),
        (8, "symbols against search", symbol_oracle()),
        (9, "normal-form families", normal_forms()),
        (10, "short vectors", short_vector_facts()),
        (11, "A2 + E6 glue", glue_sanity()),
        (12, "condition filter", condition_filter()),
    ];
    let mut failed = Vec::new();
    for (n, name, result) in &checks {
        match result {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                println!("criterion {n:>2} FAIL  {name}: {detail}");
                failed.push(*n);
            }
        }
    }
    assert_eq!(failed, KNOWN_FAILURES, "unexpected set of failing criteria");
}

#[test]
fn uniqueness_is_silent_for_the_primitive_lattice() {
    let l0 = nikulin::LatticeInvariant::of_lattice(&lattice::lambda0()).unwrap();
    let u = nikulin::unique_primitive_embedding(&l0, 26, 2).unwrap();
    assert_eq!(u.note, "criterion silent");
}
