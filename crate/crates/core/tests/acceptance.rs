//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! gating check fails.
//!
//! Set `DMDGP_1N6T_PDB` (or drop `1N6T.pdb` into `tests/data/`) to evaluate
//! the protein part of criterion 6.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use dmdgp::bp::{distance_value_set, enumerate_all_solutions, bp_solve, BpLimits};
use dmdgp::genio::{
    build_instance, generate_synthetic, generate_with, parse_pdb, PruningPattern,
    SyntheticConfig,
};
use dmdgp::instance::{
    classify_edges, local_symmetry_vertices, order_pruning_edges, preceding_edges,
    symmetry_vertices, DmdgpInstance,
};
use dmdgp::mde;
use dmdgp::sbbu::{
    initialize_positions, sbbu_conceptual_solve, sbbu_solve, SbbuOptions, SolverState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    gating: bool,
}

struct Report {
    outcomes: Vec<Outcome>,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        self.outcomes.push(Outcome { pass, gating: true });
        println!("[criterion {id}] {}: {detail}", if pass { "PASS" } else { "FAIL" });
    }

    fn non_gating(&mut self, id: &str, status: &str, detail: String) {
        self.outcomes.push(Outcome {
            pass: status == "PASS",
            gating: false,
        });
        println!("[criterion {id}] {status}: {detail}");
    }
}

fn random_instance(rng: &mut ChaCha8Rng, n_max: usize) -> DmdgpInstance {
    loop {
        let k = rng.random_range(2..=3);
        let n = rng.random_range(k + 2..=n_max);
        let cutoff = rng.random_range(1.5..6.0);
        if let Ok(s) = generate_synthetic(n, k, cutoff, rng.random()) {
            return s.instance;
        }
    }
}

fn criterion_1(report: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let trials = 220;
    let mut mismatches = Vec::new();
    for _ in 0..trials {
        let inst = random_instance(&mut rng, 16);
        let expected = 1usize << symmetry_vertices(&inst).len();
        let found = enumerate_all_solutions(&inst, 1e-7)
            .map(|e| e.realizations.len())
            .unwrap_or(0);
        if found != expected {
            mismatches.push((inst.n(), inst.dim(), expected, found));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report.line(
        "1",
        mismatches.is_empty() && secs < 60.0,
        format!(
            "|X| = 2^|S| on {trials} instances (K in {{2,3}}, n <= 16): {} mismatches {:?}, {secs:.1} s",
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)]
        ),
    );
}

fn criterion_2(report: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let trials = 120;
    let mut mismatches = Vec::new();
    for _ in 0..trials {
        let k = rng.random_range(2..=3);
        let gap = rng.random_range(1..=8);
        let i = rng.random_range(1..=3);
        let j = i + k + gap;
        let n = j + rng.random_range(0..=3);
        let s = generate_synthetic(n, k, rng.random_range(0.0..5.0), rng.random()).unwrap();
        let values = distance_value_set(&s.instance, i, j, 24).unwrap();
        if values.len() != 1 << gap {
            mismatches.push((k, i, j, 1usize << gap, values.len()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report.line(
        "2",
        mismatches.is_empty() && secs < 60.0,
        format!(
            "|H^ij| = 2^(j-i-K) on {trials} queries with j-i-K <= 8: {} mismatches {:?}, {secs:.1} s",
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)]
        ),
    );
}

struct EquivalenceStats {
    instances: usize,
    infeasible: usize,
    not_member: usize,
    conceptual_disagree: usize,
    solved_edges: usize,
    partition_mismatches: usize,
    skipped_edges: usize,
    skip_violations: usize,
    worst_skip: f64,
}

fn criteria_3_to_5(report: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut st = EquivalenceStats {
        instances: 0,
        infeasible: 0,
        not_member: 0,
        conceptual_disagree: 0,
        solved_edges: 0,
        partition_mismatches: 0,
        skipped_edges: 0,
        skip_violations: 0,
        worst_skip: 0.0,
    };
    while st.instances < 220 {
        let inst = random_instance(&mut rng, 20);
        st.instances += 1;
        let sol = match sbbu_solve(&inst, &SbbuOptions::default()) {
            Ok(sol) => sol,
            Err(_) => {
                st.infeasible += 1;
                continue;
            }
        };
        let error = mde(&sol.realization, &inst).unwrap();
        if error > 1e-7 {
            st.infeasible += 1;
        }
        let all = enumerate_all_solutions(&inst, 1e-6).unwrap().realizations;
        if !all.iter().any(|x| x.max_deviation(&sol.realization) <= 1e-6) {
            st.not_member += 1;
        }

        let mut state = SolverState::new(&inst);
        initialize_positions(&mut state, &inst, inst.n(), 1e-4).unwrap();
        let conceptual_ok = sbbu_conceptual_solve(&inst, state.realization(), 1e-4)
            .map(|c| mde(&c.realization, &inst).unwrap() <= 1e-7)
            .unwrap_or(false);
        if conceptual_ok != (error <= 1e-7) {
            st.conceptual_disagree += 1;
        }

        let order = order_pruning_edges(&classify_edges(&inst));
        for t in &sol.trace {
            if t.skipped {
                st.skipped_edges += 1;
                st.worst_skip = st.worst_skip.max(t.best_residual);
                if t.best_residual > 1e-7 {
                    st.skip_violations += 1;
                }
            } else {
                st.solved_edges += 1;
                let preceding = preceding_edges(&order, t.edge).unwrap();
                let brute: Vec<usize> = local_symmetry_vertices(&inst, t.edge, preceding)
                    .into_iter()
                    .collect();
                if brute != t.symmetry_vertices {
                    st.partition_mismatches += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report.line(
        "3",
        st.infeasible == 0 && st.not_member == 0 && st.conceptual_disagree == 0 && secs < 120.0,
        format!(
            "{} instances n <= 20: {} infeasible, {} outside the enumerated set, {} conceptual disagreements, {secs:.1} s",
            st.instances, st.infeasible, st.not_member, st.conceptual_disagree
        ),
    );
    report.line(
        "4",
        st.partition_mismatches == 0 && st.solved_edges > 0,
        format!(
            "partition S^ij vs brute force on {} solved subproblems: {} mismatches",
            st.solved_edges, st.partition_mismatches
        ),
    );
    report.line(
        "5",
        st.skip_violations == 0 && st.skipped_edges > 0,
        format!(
            "{} skipped edges: {} with residual > 1e-7 (worst {:.2e})",
            st.skipped_edges, st.skip_violations, st.worst_skip
        ),
    );
}

fn pdb_1n6t() -> Option<PathBuf> {
    if let Ok(p) = std::env::var("DMDGP_1N6T_PDB") {
        return Some(PathBuf::from(p));
    }
    let local = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/1N6T.pdb");
    local.exists().then_some(local)
}

fn criterion_6(report: &mut Report) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 2..=3 {
        for n in k + 3..=16 {
            let cfg = SyntheticConfig::new(n, k, PruningPattern::Explicit(vec![(1, n)]), n as u64);
            let s = generate_with(&cfg).unwrap();
            let sol = sbbu_solve(&s.instance, &SbbuOptions::default()).unwrap();
            let expected = 1u128 << (n - k - 1);
            checked += 1;
            if sol.work.total() != expected || sol.work.max() != expected {
                bad.push((n, k, sol.work.total(), sol.work.max()));
            }
        }
    }
    report.line(
        "6a",
        bad.is_empty(),
        format!("single edge {{1,n}}: W = W_bar = 2^(n-K-1) on {checked} instances, {} mismatches {bad:?}", bad.len()),
    );

    let Some(path) = pdb_1n6t() else {
        report.non_gating(
            "6b",
            "FAIL",
            "1N6T.pdb not available (no network access to the PDB archive); |E| and W targets unchecked".into(),
        );
        return;
    };
    let text = std::fs::read_to_string(&path).expect("readable 1N6T file");
    let structure = parse_pdb(&text).expect("1N6T parses");
    let at6 = build_instance(&structure, 6.0).expect("instance at 6 A");
    let at5 = build_instance(&structure, 5.0).expect("instance at 5 A");
    let sol = sbbu_solve(&at6.instance, &SbbuOptions::default());
    let (w, w_bar) = sol
        .as_ref()
        .map(|s| (s.work.total(), s.work.max()))
        .unwrap_or((0, 0));
    let e6 = at6.instance.edge_count() as f64;
    let pass = at6.instance.n() == 30
        && (e6 - 236.0).abs() <= 0.05 * 236.0
        && (w as f64 - 52.0).abs() <= 0.1 * 52.0;
    report.line(
        "6b",
        pass,
        format!(
            "1N6T: |V| = {} (30), |E| = {} (236) at 6 A, |E| = {} (176) at 5 A, W = {w} (52), W_bar = {w_bar} (2)",
            at6.instance.n(),
            at6.instance.edge_count(),
            at5.instance.edge_count()
        ),
    );
}

fn criterion_7(report: &mut Report) {
    let mut worst_sbbu: f64 = 0.0;
    let mut worst_bp: f64 = 0.0;
    let mut failures = Vec::new();
    let mut count = 0;
    for &(n, k, cutoff) in &[
        (100usize, 2usize, 4.0f64),
        (100, 3, 6.0),
        (500, 2, 4.0),
        (500, 3, 6.0),
        (1000, 3, 6.0),
        (2000, 3, 6.0),
        (5000, 3, 6.0),
    ] {
        for seed in 0..2u64 {
            count += 1;
            let s = generate_synthetic(n, k, cutoff, seed).unwrap();
            match sbbu_solve(&s.instance, &SbbuOptions::default()) {
                Ok(sol) => worst_sbbu = worst_sbbu.max(mde(&sol.realization, &s.instance).unwrap()),
                Err(e) => failures.push(format!("sbbu n={n} seed={seed}: {e}")),
            }
            match bp_solve(&s.instance, 1e-4, BpLimits::time(Duration::from_secs(30))) {
                Ok(sol) => worst_bp = worst_bp.max(mde(&sol.realization, &s.instance).unwrap()),
                Err(e) => failures.push(format!("bp n={n} seed={seed}: {e}")),
            }
        }
    }
    report.line(
        "7",
        failures.is_empty() && worst_sbbu <= 1e-8 && worst_bp <= 1e-4,
        format!(
            "{count} instances up to n = 5000: worst SBBU MDE {worst_sbbu:.2e} (<= 1e-8), worst BP MDE {worst_bp:.2e} (<= 1e-4), failures {failures:?}"
        ),
    );
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Bisects the cutoff until `|E_P| / |V|` lands in `[lo, hi]`.
fn sparse_instance(n: usize, k: usize, seed: u64, lo: f64, hi: f64) -> Option<DmdgpInstance> {
    let (mut a, mut b) = (1.0f64, 12.0f64);
    for _ in 0..40 {
        let c = 0.5 * (a + b);
        let inst = generate_synthetic(n, k, c, seed).ok()?.instance;
        let ratio = inst.pruning_count() as f64 / n as f64;
        if ratio < lo {
            a = c;
        } else if ratio > hi {
            b = c;
        } else {
            return Some(inst);
        }
    }
    None
}

/// Short edges `{u, u+K+1}` everywhere except at `gaps` evenly spaced
/// vertices, plus the single long edge `{1, n}`.
fn gap_family(n: usize, k: usize, gaps: usize) -> Vec<(usize, usize)> {
    let free: Vec<usize> = (1..=gaps)
        .map(|g| k + 1 + g * (n - k - 1) / (gaps + 1))
        .collect();
    let mut edges: Vec<(usize, usize)> = (1..n - k)
        .filter(|u| !free.contains(&(u + k + 1)))
        .map(|u| (u, u + k + 1))
        .collect();
    edges.push((1, n));
    edges
}

fn criterion_8(report: &mut Report) {
    let start = Instant::now();
    let limit = Duration::from_secs(10);
    let options = SbbuOptions {
        max_local_symmetry: 26,
        ..SbbuOptions::default()
    };
    let (mut bp_times, mut sbbu_times, mut ratios) = (Vec::new(), Vec::new(), Vec::new());
    let mut timeouts = 0;
    for seed in 0..5u64 {
        let inst = sparse_instance(2000, 3, seed, 5.0, 10.0).expect("sparse instance");
        ratios.push(inst.pruning_count() as f64 / 2000.0);
        let t = Instant::now();
        let ok = sbbu_solve(&inst, &options).is_ok();
        sbbu_times.push(if ok { t.elapsed().as_secs_f64() } else { f64::INFINITY });
        let t = Instant::now();
        if bp_solve(&inst, 1e-4, BpLimits::time(limit)).is_err() {
            timeouts += 1;
        }
        bp_times.push(t.elapsed().as_secs_f64());
    }
    let (bp_med, sbbu_med) = (median(bp_times), median(sbbu_times));
    report.line(
        "8a",
        sbbu_med <= bp_med,
        format!(
            "n = 2000, |E_P|/|V| in {:.1}..{:.1}: median SBBU {sbbu_med:.4} s vs BP {bp_med:.4} s over 5 seeds ({timeouts} BP runs hit the {} s limit, counted at the limit)",
            ratios.iter().cloned().fold(f64::INFINITY, f64::min),
            ratios.iter().cloned().fold(0.0, f64::max),
            limit.as_secs()
        ),
    );

    let mut speedups = Vec::new();
    for seed in 0..5u64 {
        let cfg = SyntheticConfig::new(2000, 3, PruningPattern::Explicit(gap_family(2000, 3, 12)), seed);
        let inst = generate_with(&cfg).unwrap().instance;
        let t = Instant::now();
        sbbu_solve(&inst, &options).unwrap();
        let ts = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let _ = bp_solve(&inst, 1e-4, BpLimits::time(limit));
        speedups.push(t.elapsed().as_secs_f64() / ts);
    }
    let med = median(speedups.clone());
    let secs = start.elapsed().as_secs_f64();
    report.line(
        "8b",
        med >= 5.0 && secs < 300.0,
        format!(
            "gap family (n = 2000, 12 free vertices, one long edge): median speedup {med:.1} (>= 5), per seed {:?}, {secs:.1} s total",
            speedups.iter().map(|s| (s * 10.0).round() / 10.0).collect::<Vec<_>>()
        ),
    );
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

fn criterion_9(report: &mut Report) {
    let (mut ws, mut times) = (Vec::new(), Vec::new());
    for gaps in 4..=19 {
        for seed in 0..2u64 {
            let cfg = SyntheticConfig::new(400, 3, PruningPattern::Explicit(gap_family(400, 3, gaps)), seed);
            let inst = generate_with(&cfg).unwrap().instance;
            let mut runs = Vec::new();
            let mut w = 0;
            for _ in 0..5 {
                let t = Instant::now();
                w = sbbu_solve(&inst, &SbbuOptions::default()).unwrap().work.total();
                runs.push(t.elapsed().as_secs_f64());
            }
            ws.push(w as f64);
            times.push(median(runs));
        }
    }
    let r = pearson(&ws, &times);
    let span = ws.iter().cloned().fold(0.0, f64::max) / ws.iter().cloned().fold(f64::INFINITY, f64::min);
    let detail = format!(
        "{} instances, W spans a factor {span:.0}: Pearson r(W, time) = {r:.4} (target >= 0.9)",
        ws.len()
    );
    if r >= 0.9 && span >= 100.0 {
        report.line("9", true, detail);
    } else if r >= 0.8 {
        report.non_gating("9", "WARN", detail);
    } else {
        report.line("9", false, detail);
    }
}

fn main() {
    let mut report = Report {
        outcomes: Vec::new(),
    };
    criterion_1(&mut report);
    criterion_2(&mut report);
    criteria_3_to_5(&mut report);
    criterion_6(&mut report);
    criterion_7(&mut report);
    criterion_8(&mut report);
    criterion_9(&mut report);
    let failed = report
        .outcomes
        .iter()
        .filter(|o| o.gating && !o.pass)
        .count();
    let red = report.outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {} checks, {failed} gating failures, {red} not passing",
        report.outcomes.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
