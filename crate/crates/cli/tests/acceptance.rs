//! Acceptance suite. Run with
//! `cargo test -p ialt-cli --features acceptance --test acceptance`.
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fail.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use ialt_cli::{cmd_bounds, cmd_simulate, BoundsArgs, CodeArgs, CodewordArg, SimulateArgs};
use ialt_core::bounds::{self, CodeParams, KoptMode};
use ialt_core::codes::{AlternantCode, GrsSpec};
use ialt_core::counting::{self, big};
use ialt_core::decoder::{crux_condition, max_decoding_radius, rank_condition, Classification};
use ialt_core::gf2m::{Felt, FieldTower};
use ialt_core::simkit::{find_threshold, run_trial, run_trials, TrialConfig};

type Outcome = Result<String, String>;

fn code(m: u32, d: usize) -> Arc<AlternantCode> {
    let f = Arc::new(FieldTower::new(1, m).unwrap());
    Arc::new(AlternantCode::new(GrsSpec::full_length(f, d).unwrap()).unwrap())
}

fn code_args(q: u64, m: u32, d: u64, ell: u64) -> CodeArgs {
    CodeArgs {
        q,
        m,
        d,
        ell,
        n: None,
        v_seed: None,
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

fn gf2_rank(vectors: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

fn each_binary_matrix(ell: usize, t: usize, mut f: impl FnMut(&[u32])) {
    let per = 1u64 << ell;
    let mut cols = vec![0u32; t];
    for code in 0..per.pow(t as u32) {
        let mut c = code;
        for col in cols.iter_mut() {
            *col = (c % per) as u32;
            c /= per;
        }
        f(&cols);
    }
}

fn criterion_1() -> Outcome {
    let args = BoundsArgs {
        code: code_args(2, 10, 51, 2),
        t_min: Some(25),
        t_max: Some(34),
        sim_trials: None,
        seed: 0,
        loose_majorant: false,
        out: None,
    };
    let start = Instant::now();
    let table = cmd_bounds(&args).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, || format!("took {secs:.1}s"))?;
    let lines: Vec<&str> = table.lines().collect();
    check(lines.len() == 11, || format!("{} lines", lines.len()))?;
    let header: Vec<&str> = lines[0].split_whitespace().collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split_whitespace().collect();
        let value = |name: &str| cells[col(name)].parse::<f64>().unwrap_or(f64::NAN);
        for name in ["RS", "Thm1", "WoKopt", "L01", "LowerIE", "Miscorrection"] {
            check(value(name).is_finite(), || format!("t={} {name}={}", cells[0], cells[col(name)]))?;
        }
    }
    for t in 25..=34 {
        let p = CodeParams::full_length(2, 10, 51, 2, t).unwrap();
        let a = bounds::lb_alternant(&p, KoptMode::Full).unwrap();
        let a1 = bounds::lb_alternant(&p, KoptMode::Singleton).unwrap();
        let a2 = bounds::lb_alternant_simple(&p).unwrap();
        check(a.p <= a1.p && a.p <= a2.p, || format!("ordering broken at t={t}"))?;
        let raw_ok = |x: f64, y: f64| x == f64::NEG_INFINITY || x <= y + 1e-12;
        check(raw_ok(a.log10, a1.log10) && raw_ok(a.log10, a2.log10), || {
            format!("unclamped ordering broken at t={t}")
        })?;
    }
    Ok(format!("t=25..34 in {secs:.2}s, L.A <= L.A1 and L.A <= L.A2 at every t"))
}

fn criterion_2() -> Outcome {
    let c = code(4, 7);
    let mut checked = 0;
    for t in [3, 4] {
        let cfg = TrialConfig::new(Arc::clone(&c), 2, t, 10_000, 2);
        for i in 0..cfg.trials {
            let rec = run_trial(&cfg, i);
            let unsuccessful = rec.class != Classification::Success;
            let rank = rank_condition(&rec.error, &rec.support, &c, t).unwrap();
            let crux = crux_condition(&rec.error, &rec.support, &c, t).unwrap();
            check(unsuccessful == rank && rank == crux, || {
                format!("mismatch t={t} trial={i}: decoder={unsuccessful} rank={rank} crux={crux}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} trials, zero mismatches"))
}

fn criterion_3() -> Outcome {
    let c = code(4, 7);
    for t in 0..=3 {
        let stats = run_trials(&TrialConfig::new(Arc::clone(&c), 2, t, 10_000, 3)).unwrap();
        check(stats.successes == 10_000, || format!("t={t}: {} successes", stats.successes))?;
    }
    Ok("10000/10000 successes for t=0..3".into())
}

fn criterion_4() -> Outcome {
    let stats = run_trials(&TrialConfig::new(code(4, 7), 2, 5, 10_000, 4)).unwrap();
    check(stats.successes == 0, || format!("{} successes at t=5", stats.successes))?;
    Ok(format!(
        "0 successes, {} miscorrections, {} failures",
        stats.miscorrections, stats.failures
    ))
}

fn criterion_5() -> Outcome {
    let mut report = Vec::new();
    let mut wrong = Vec::new();
    for (m, d, ell) in [(4, 7, 2), (4, 7, 3), (4, 7, 5), (5, 11, 2), (5, 11, 5)] {
        let expected = max_decoding_radius(ell, d);
        let got = find_threshold(code(m, d), ell, 100, 0.9, 5).unwrap();
        let p = CodeParams::full_length(2, m, d as u64, ell as u64, expected as u64).unwrap();
        let cap = 1.0 - 10f64.powf(bounds::ub_success(&p).unwrap().log10);
        let entry = format!("(m={m},d={d},ell={ell}): {got} vs {expected}, P_suc({expected}) <= {cap:.3}");
        if got != expected {
            wrong.push(entry.clone());
        }
        report.push(entry);
    }
    if wrong.is_empty() {
        Ok(report.join("; "))
    } else {
        Err(format!("threshold differs at {}", wrong.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    for qf in [2u64, 4, 8, 16] {
        for n in 1..=12u64 {
            for d in 1..=n {
                let total = (0..=n)
                    .map(|w| counting::mds_weight_enum(n, d, w, qf).unwrap())
                    .fold(big(0), |acc, x| acc + x);
                check(total == counting::pow_u(qf, n - d + 1), || format!("sum identity n={n} d={d} Q={qf}"))?;
            }
        }
    }
    for ell in 1..=3usize {
        for t in 1..=5usize {
            if t == 5 && ell != 2 {
                continue;
            }
            let mut m_counts = vec![0u64; 6];
            let mut n_counts = vec![0u64; 6];
            let mut z_counts = vec![0u64; t + 1];
            each_binary_matrix(ell, t, |cols| {
                let r = gf2_rank(cols);
                m_counts[r] += 1;
                if cols.contains(&0) {
                    return;
                }
                n_counts[r] += 1;
                let mut mult: HashMap<u32, usize> = HashMap::new();
                for &c in cols {
                    *mult.entry(c).or_default() += 1;
                }
                for (xi, z) in z_counts.iter_mut().enumerate().skip(1) {
                    if mult.values().any(|&k| k == xi) {
                        *z += 1;
                    }
                }
            });
            let (l, tt) = (ell as u64, t as u64);
            if t <= 4 {
                for s in 0..=ell.min(t) {
                    check(counting::rank_count(l, tt, s as u64, 2) == big(m_counts[s]), || {
                        format!("M({ell},{t},{s})")
                    })?;
                    check(counting::rank_count_no_zero_cols(l, tt, s as u64, 2) == big(n_counts[s]), || {
                        format!("N({ell},{t},{s})")
                    })?;
                }
            }
            for xi in 1..=t {
                check(counting::bad_matrix_count(2, l, tt, xi as u64).unwrap() == big(z_counts[xi]), || {
                    format!("Z({ell},{t},{xi})")
                })?;
            }
        }
    }
    let f = FieldTower::new(1, 2).unwrap();
    let nonzero: Vec<Felt> = f.elements().filter(|x| !x.is_zero()).collect();
    let mut total = 0u64;
    for &v1 in &nonzero {
        for &v2 in &nonzero {
            for c in 0..4u32 {
                let (c1, c2) = (Felt::from_bits(c & 1), Felt::from_bits(c >> 1));
                total += f.add(f.mul(v1, c1), f.mul(v2, c2)).is_zero() as u64;
            }
        }
    }
    check(total == 12 && counting::b_total(2, 2, 2, 2).unwrap() == big(12), || {
        format!("b_total enumeration gave {total}")
    })?;
    Ok("all sum identities and brute-force counts equal; b_total = 12".into())
}

fn criterion_7() -> Outcome {
    let trials = 1_000_000;
    let p = CodeParams::full_length(2, 4, 7, 2, 4).unwrap();
    let stats = run_trials(&TrialConfig::new(code(4, 7), 2, 4, trials, 7)).unwrap();
    let r = (trials - stats.successes) as f64 / trials as f64;
    let misc = stats.miscorrections as f64 / trials as f64;
    let s = sigma(r, trials);
    let lower = 10f64.powf(bounds::ub_success(&p).unwrap().log10);
    let upper = 10f64.powf(bounds::lb_alternant(&p, KoptMode::Full).unwrap().log10_clamped());
    let m = 10f64.powf(bounds::misc_bound(&p).log10_clamped());
    let detail = format!("unsuccess {r:.5} in [{lower:.5}, {upper:.5}] +- 3 sigma ({s:.2e}); miscorrection {misc:.5} <= M {m:.5}");
    check(lower - 3.0 * s <= r && r <= upper + 3.0 * s && misc <= m, || detail.clone())?;
    Ok(detail)
}

fn criterion_8() -> Outcome {
    let mut by_rank = [0u64; 5];
    each_binary_matrix(4, 4, |cols| {
        if !cols.contains(&0) {
            by_rank[gf2_rank(cols)] += 1;
        }
    });
    let n3 = counting::rank_count_no_zero_cols(4, 4, 3, 2);
    let n4 = counting::rank_count_no_zero_cols(4, 4, 4, 2);
    check(n3 == big(by_rank[3]) && n4 == big(by_rank[4]), || {
        format!("N(4,4,3)={n3}, N(4,4,4)={n4}, brute force {} and {}", by_rank[3], by_rank[4])
    })?;

    let c = code(4, 7);
    let field = c.field();
    let trials = 10_000u64;
    let cfg = TrialConfig::new(Arc::clone(&c), 4, 4, trials, 8);
    let mut successes = 0u64;
    for i in 0..trials {
        let rec = run_trial(&cfg, i);
        let success = rec.class == Classification::Success;
        successes += success as u64;
        if rec.error.rank(field) >= 3 {
            check(success, || format!("trial {i}: rank >= 3 but {:?}", rec.class))?;
        }
    }
    let rate = successes as f64 / trials as f64;
    let floor = (by_rank[3] + by_rank[4]) as f64 / 15f64.powi(4);
    let s = sigma(floor, trials);
    check(rate >= floor - 3.0 * s, || format!("P_suc {rate:.4} below {floor:.4} - 3 sigma"))?;
    Ok(format!("N(4,4,3)={n3}, N(4,4,4)={n4}; P_suc {rate:.4} >= {floor:.4} - 3 sigma"))
}

fn brute_max(lo: u64, b: u64, left: u64, remaining: u64, ell: u32) -> Option<u64> {
    if left == 0 {
        return (remaining == 0).then_some(0);
    }
    (lo..=b.min(remaining))
        .filter_map(|x| brute_max(x, b, left - 1, remaining - x, ell).map(|rest| x.pow(ell) + rest))
        .max()
}

fn criterion_9() -> Outcome {
    let mut cases = 0;
    for b in 0..=6u64 {
        for a in 0..=b {
            for c in 1..=5u64 {
                for total in c * a..=c * b {
                    for ell in 1..=4u32 {
                        let exact = big(brute_max(a, b, c, total, ell).unwrap());
                        let ceil = counting::maximize_convex_sum(&big(a), &big(b), &big(c), &big(total), ell).unwrap();
                        check(ceil >= exact, || format!("a={a} b={b} c={c} B={total} ell={ell}"))?;
                        if a == b || (total - c * a) % (b - a) == 0 {
                            check(ceil == exact, || format!("not tight at a={a} b={b} c={c} B={total} ell={ell}"))?;
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir();
    let bounds_args = BoundsArgs {
        code: code_args(2, 4, 7, 2),
        t_min: None,
        t_max: None,
        sim_trials: Some(200),
        seed: 10,
        loose_majorant: false,
        out: Some(dir.join("unused.dat")),
    };
    let sim_args = SimulateArgs {
        code: code_args(2, 5, 11, 3),
        t: 7,
        trials: 20_000,
        seed: 10,
        codeword: CodewordArg::Random,
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            (
                cmd_bounds(&bounds_args).unwrap(),
                serde_json::to_string_pretty(&cmd_simulate(&sim_args).unwrap()).unwrap(),
            )
        })
    };
    let first = run(8);
    for threads in [8, 1, 3] {
        check(run(threads) == first, || format!("output changed with {threads} threads"))?;
    }
    Ok("bounds and simulate identical across 4 runs with 1, 3 and 8 threads".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("bounds at (2,10,51,2), t=25..34", criterion_1),
        ("decoder, rank and crux conditions agree", criterion_2),
        ("unique decoding radius", criterion_3),
        ("nothing decodes beyond t_max", criterion_4),
        ("simulated threshold equals t_max", criterion_5),
        ("counting oracles", criterion_6),
        ("bounds bracket the simulated rates", criterion_7),
        ("high-order bound and full-rank errors", criterion_8),
        ("convex-sum majorant", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
