//! The acceptance suite: eleven criteria, each an identity family with a
//! time limit. Runs without the test harness, so `cargo test --test
//! acceptance` always prints one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use schurpf::verify::{self, Report};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Vec<Report>,
}

const fn mins(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "three-factor determinant, n <= 3, entries in [-2,4]",
            limit: mins(5),
            run: || vec![verify::theorem1(3, -2, 4, 2, 1)],
        },
        Criterion {
            id: 2,
            name: "S_(2,1) coefficient of S_(4,3,1)((1+yt)/(1-xt)c)",
            limit: Duration::from_secs(1),
            run: || vec![verify::example_431_report()],
        },
        Criterion {
            id: 3,
            name: "seven-row instance: tableaux, paths, determinant",
            limit: mins(10),
            run: || vec![verify::figure1_symbolic_report(), verify::figure1_points_report(&[1, 2, 3, 4, 5])],
        },
        Criterion {
            id: 4,
            name: "flagged sweep, n <= 4, flags <= 4",
            limit: mins(10),
            run: || vec![verify::flagged_sweep(4, 4)],
        },
        Criterion {
            id: 5,
            name: "pfaffian product expansion, n <= 4, entries in [0,4]",
            limit: mins(10),
            run: || vec![verify::theorem5(4, 4, 2, 1)],
        },
        Criterion {
            id: 6,
            name: "reorder identity p+q <= 7, linearity on 50 instances",
            limit: mins(2),
            run: || vec![verify::reorder_lemma(7), verify::linearity_lemma(50, 1)],
        },
        Criterion {
            id: 7,
            name: "shifted primed tableaux, lambda_1 <= 5, m <= 2; product relation p <= 5",
            limit: mins(5),
            run: || vec![verify::shifted_tableaux(5, 2, 5)],
        },
        Criterion {
            id: 8,
            name: "type C s0 and d0, strict |lambda| <= 8",
            limit: mins(5),
            run: || vec![verify::type_c_operators(8)],
        },
        Criterion {
            id: 9,
            name: "type A s0, d0, gamma^m, theta, |lambda| <= 6",
            limit: mins(10),
            run: || vec![verify::type_a_operators(6)],
        },
        Criterion {
            id: 10,
            name: "vexillary, 321-avoiding and multivariate Schur expansions",
            limit: mins(15),
            run: || vec![verify::vexillary_suite(3, 3), verify::w321_suite(3, 3), verify::molev_suite(3, 4)],
        },
        Criterion {
            id: 11,
            name: "z = 0 reduction of Pf_{p,q}(c,c), p+q <= 8",
            limit: mins(1),
            run: || vec![verify::classical_reduction(8)],
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let reports = (c.run)();
        let elapsed = start.elapsed();
        let instances: usize = reports.iter().map(|r| r.instances).sum();
        let identities_ok = reports.iter().all(|r| r.passed);
        let in_time = elapsed <= c.limit;
        let ok = identities_ok && in_time;
        println!(
            "[{}] criterion {:>2}: {} ({} instances, {:.1}s of {}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            instances,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for r in reports.iter().filter(|r| !r.passed) {
            println!("    {}: {} of {} failed", r.identity, r.failed, r.instances);
            for f in &r.failures {
                println!("      {f}");
            }
        }
        if !in_time {
            println!("    over the time limit");
        }
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
