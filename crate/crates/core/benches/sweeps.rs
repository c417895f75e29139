//! Regression thresholds for the exhaustive sweeps.
//!
//! `cargo bench -p boomtab` times each sweep a few times and fails if the best
//! run exceeds its limit. The limits assume a 4-core desktop.

use std::sync::Arc;
use std::time::{Duration, Instant};

use boomtab::tables::{self, full, Counting, DomainFilter, Sweep, TableKind};
use boomtab::{sampling, Family, FieldCtx, VecFun};

const RUNS: usize = 3;

fn field(n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(n, None).expect("default field"))
}

fn best_of(mut body: impl FnMut()) -> Duration {
    (0..RUNS)
        .map(|_| {
            let start = Instant::now();
            body();
            start.elapsed()
        })
        .min()
        .expect("at least one run")
}

fn main() {
    let random8 =
        VecFun::from_lut(field(8), sampling::random_lut(8, 8), Family::LutFile { source: None }).expect("valid lut");
    type Case<'a> = (&'a str, Duration, Box<dyn Fn() + 'a>);
    let cases: Vec<Case> = vec![
        (
            "EBCT spectrum, gold n=6 s=2, full",
            Duration::from_secs(120),
            Box::new(|| {
                let f = VecFun::gold(field(6), 2);
                std::hint::black_box(
                    tables::spectrum(&f, TableKind::Ebct, DomainFilter::All, Sweep::Full).expect("within budget"),
                );
            }),
        ),
        (
            "EBCT spectrum, random n=6 function, full",
            Duration::from_secs(120),
            Box::new(|| {
                let f = VecFun::from_lut(field(6), sampling::random_lut(6, 6), Family::LutFile { source: None })
                    .expect("valid lut");
                std::hint::black_box(
                    tables::spectrum(&f, TableKind::Ebct, DomainFilter::All, Sweep::Full).expect("within budget"),
                );
            }),
        ),
        (
            "UBCT + LBCT tables, inverse n=8",
            Duration::from_secs(300),
            Box::new(|| {
                let f = VecFun::inverse_map(field(8));
                full::ubct_table(&f, Counting::Distinct);
                full::lbct_table(&f);
            }),
        ),
        (
            "UBCT + LBCT tables, random n=8 function",
            Duration::from_secs(300),
            Box::new(move || {
                full::ubct_table(&random8, Counting::Distinct);
                full::lbct_table(&random8);
            }),
        ),
        (
            "DBCT table, gold n=6 s=2",
            Duration::from_secs(60),
            Box::new(|| {
                full::dbct_table(&VecFun::gold(field(6), 2));
            }),
        ),
    ];
    let mut failed = 0;
    for (name, limit, body) in &cases {
        let t = best_of(body);
        let ok = t <= *limit;
        failed += usize::from(!ok);
        println!(
            "{} {name}: {:.4}s (limit {}s)",
            if ok { "ok  " } else { "SLOW" },
            t.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        eprintln!("{failed} sweeps exceeded their limits");
        std::process::exit(1);
    }
}
