//! Acceptance criteria, all at exact equality. Prints one line per criterion
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use mzv_core::verify::{self, Report};
use mzv_core::Result;

fn combine(parts: Vec<Result<Report>>) -> Result<Report> {
    let mut total = Report::default();
    for p in parts {
        total.merge(p?);
    }
    Ok(total)
}

type Criterion = (&'static str, fn() -> Result<Report>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 generating-function equivalence, n<=3, degree 8", || {
            verify::thm321(3, 8)
        }),
        ("2 three pipelines agree, n<=3, sum k<=6", || {
            verify::birkhoff_vs_closed(3, 6)
        }),
        ("3 known values", || verify::known_values(6, 20, 8)),
        ("4 coproduct formula and primitive d^a y", || {
            verify::coproduct(4, 2, 6)
        }),
        ("5 shuffle relation and depth-two identity", || {
            combine(vec![verify::shuffle(4), verify::depth_two_shuffle(3, 3)])
        }),
        ("6 recurrences and h-operator identity", || {
            combine(vec![verify::recurrence(3, 6), verify::frak_h(2, 2, 4)])
        }),
        ("7 conversion formulas, n<=3, sum k<=6", || {
            verify::conversions(3, 6)
        }),
        ("8 relation generators annihilated, weight<=3", || {
            verify::lminus(3)
        }),
    ];

    let mut all_ok = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(r) if r.passed() => println!("PASS  criterion {name} ({r}, {secs:.2}s)"),
            Ok(r) => {
                all_ok = false;
                println!("FAIL  criterion {name} ({r}, {secs:.2}s)");
                for f in r.failures.iter().take(10) {
                    println!("      {f}");
                }
            }
            Err(e) => {
                all_ok = false;
                println!("FAIL  criterion {name} (error: {e})");
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
