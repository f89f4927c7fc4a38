//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use elevenfloer::catalog::{fixture_10_161, table_row};
use elevenfloer::cli::verify_table;
use elevenfloer::cover::route;
use elevenfloer::diagram::validate;
use elevenfloer::floer::{bigons, DEFAULT_WINDOW_LIMIT};
use elevenfloer::pretzel::{build_diagram, closed_form, oracle_complex, rename_engine_complex};
use elevenfloer::{analyze, run_diagram, same_named_complex};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture() -> Outcome {
    let start = Instant::now();
    let an = analyze(&fixture_10_161(), "10_161", None).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let want: BTreeMap<(i64, i64), usize> = [
        ((3, 6), 1),
        ((2, 4), 1),
        ((2, 5), 1),
        ((1, 3), 2),
        ((0, 2), 3),
        ((-1, 1), 2),
        ((-2, 0), 1),
        ((-2, 1), 1),
        ((-3, 0), 1),
    ]
    .into_iter()
    .collect();
    check(an.table.is_free(), || "torsion".into())?;
    check(common::library_ranks(&an.complex) == want, || format!("table {:?}", an.table.groups))?;
    check(an.tau == -3, || format!("tau = {}", an.tau))?;
    check(secs < 1.0, || format!("{secs:.3} s"))?;
    Ok(format!("table exact, tau = -3, {secs:.3} s"))
}

fn grid() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in (5..=15).step_by(2) {
        for m in (n..=15).step_by(2) {
            let c = oracle_complex(m, n).map_err(|e| e.to_string())?;
            let an = analyze(&c, "p", None).map_err(|e| format!("({m},{n}): {e}"))?;
            let cf = closed_form(m, n).map_err(|e| e.to_string())?;
            let g = (m + n) / 2;
            check(an.table.groups == cf.groups, || format!("({m},{n}) homology differs"))?;
            check(an.tau == -g && an.table.genus == g, || format!("({m},{n}) tau {} genus {}", an.tau, an.table.genus))?;
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 30.0, || format!("{secs:.1} s"))?;
    Ok(format!("{count} pairs agree with the closed form, {secs:.2} s"))
}

fn calibration() -> Outcome {
    let mut parts = Vec::new();
    for (m, n) in [(5, 5), (7, 5), (7, 7), (9, 5)] {
        let start = Instant::now();
        let d = build_diagram(m, n).map_err(|e| e.to_string())?;
        let run = run_diagram(&d, DEFAULT_WINDOW_LIMIT).map_err(|e| format!("({m},{n}): {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        let mut engine = rename_engine_complex(&run.raw_complex, m, n).map_err(|e| e.to_string())?;
        let mut oracle = oracle_complex(m, n).map_err(|e| e.to_string())?;
        for g in engine.generators.iter_mut().chain(oracle.generators.iter_mut()) {
            g.maslov = None;
            g.alexander = None;
        }
        check(same_named_complex(&engine, &oracle), || format!("({m},{n}) complexes differ"))?;
        check(secs < 10.0, || format!("({m},{n}) {secs:.2} s"))?;
        parts.push(format!("({m},{n}) {secs:.3} s"));
    }
    Ok(format!("sign-for-sign equal: {}", parts.join(", ")))
}

fn properties() -> Outcome {
    let mut complexes = vec![("10_161".to_string(), analyze(&fixture_10_161(), "10_161", None).map_err(|e| e.to_string())?.complex)];
    for (m, n) in [(5, 5), (7, 5), (7, 7), (9, 5), (9, 9), (11, 7)] {
        let an = analyze(&oracle_complex(m, n).map_err(|e| e.to_string())?, "p", None).map_err(|e| e.to_string())?;
        complexes.push((format!("oracle ({m},{n})"), an.complex));
    }
    let mut stable = 0;
    let mut engine_runs = vec![];
    for name in ["unknot", "unknot-finger", "pretzel-5-5", "pretzel-7-5", "pretzel-7-7", "pretzel-9-5"] {
        let d = elevenfloer::catalog::builtin_diagrams()[name].clone();
        engine_runs.push((name.to_string(), d));
    }
    let mut random = 0;
    for n in 1..=12usize {
        for seed in 0..200u64 {
            let d = common::random_diagram(n, seed);
            if validate(&d).is_ok() {
                random += 1;
                engine_runs.push((format!("random n={n} seed={seed}"), d));
            }
        }
    }
    for (name, d) in engine_runs {
        let run = run_diagram(&d, DEFAULT_WINDOW_LIMIT).map_err(|e| format!("{name}: {e}"))?;
        let w = run.lifted.window();
        let keys = |b: &[elevenfloer::floer::BigonClass]| b.iter().map(|c| c.key()).collect::<Vec<_>>();
        let doubled = bigons(&route(&run.diagram, 2 * w).map_err(|e| e.to_string())?);
        check(keys(&run.bigons) == keys(&doubled), || format!("{name}: bigons change under doubling"))?;
        stable += 1;
        complexes.push((name, run.analysis.complex));
    }
    for (name, c) in &complexes {
        common::property_suite(c).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} complexes ({random} random diagrams), {stable} window-stable engine runs", complexes.len()))
}

fn table() -> Outcome {
    let v = verify_table();
    let good = v.rows.values().filter(|&&(s, p)| s && p).count();
    check(good == 18, || format!("{good}/18 rows"))?;
    check(v.alternating_10_129, || "10_129 differs from the alternating model".into())?;
    check(v.fixture_10_161, || "10_161 fixture differs from its row".into())?;
    Ok("18/18 rows symmetric with P(1) = +-1; 10_129 alternating; 10_161 matches".into())
}

fn bounds() -> Outcome {
    let an = analyze(&fixture_10_161(), "10_161", None).map_err(|e| e.to_string())?;
    check(an.bounds.determined == Some(3) && an.table.genus == 3, || format!("{:?}", an.bounds))?;
    check(table_row("10_161").map(|r| r.tau) == Some(-3), || "table tau".into())?;
    for n in (5..=15).step_by(2) {
        for m in (n..=15).step_by(2) {
            let an = analyze(&oracle_complex(m, n).map_err(|e| e.to_string())?, "p", None).map_err(|e| e.to_string())?;
            let g = (m + n) / 2;
            check(an.bounds.determined == Some(g), || format!("({m},{n}) {:?}", an.bounds))?;
        }
    }
    for (m, n) in [(3, 3), (5, 3)] {
        let t = closed_form(m, n).map_err(|e| e.to_string())?;
        let b = elevenfloer::invariants::bounds(t.tau.unwrap(), t.genus);
        check(b.determined == Some((m + n) / 2), || format!("({m},{n}) {b:?}"))?;
    }
    Ok("10_161: g = g4 = u = 3; pretzels: g4 = u = g".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("10_161 fixture", fixture),
        ("pretzel grid", grid),
        ("engine vs oracle", calibration),
        ("property suite", properties),
        ("table verification", table),
        ("bounds reporting", bounds),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
