//! Parallel prime-range sweep with deterministic ascending output.
//!
//! Workers pull prime indices from a shared counter and send finished
//! reports through a channel; the writer holds back out-of-order results
//! and emits them strictly by index, so the output is byte-identical for
//! any worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use qrank::complexity::DimensionParams;
use qrank::primes::primes_3_mod_4;
use qrank::report::prime_report;

pub struct Summary {
    pub from: u64,
    pub to: u64,
    pub primes: usize,
    pub failures: usize,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sweep {}..={}: {} primes, {} failures",
            self.from, self.to, self.primes, self.failures
        )
    }
}

enum Item {
    Line(String, bool),
    Error(String),
}

pub fn run(
    from: u64,
    to: u64,
    jobs: usize,
    out: Option<&str>,
    brute: Option<DimensionParams>,
) -> io::Result<Summary> {
    let primes = primes_3_mod_4(from, to);
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Item)>();
    let mut failures = 0usize;

    thread::scope(|scope| -> io::Result<()> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let next = &next;
            let primes = &primes;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= primes.len() {
                    break;
                }
                let p = primes[i];
                let item = match prime_report(p, brute) {
                    Ok(r) => {
                        let ok = r.conjecture_ok && r.c_brute.is_none_or(|c| c == r.c_closed);
                        let line = serde_json::to_string(&r)
                            .unwrap_or_else(|e| format!("{{\"p\":{p},\"error\":\"{e}\"}}"));
                        Item::Line(line, !ok)
                    }
                    Err(e) => Item::Error(format!("p={p}: {e}")),
                };
                if tx.send((i, item)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: BTreeMap<usize, Item> = BTreeMap::new();
        let mut next_emit = 0usize;
        for (i, item) in rx {
            pending.insert(i, item);
            while let Some(item) = pending.remove(&next_emit) {
                match item {
                    Item::Line(line, failed) => {
                        writeln!(sink, "{line}")?;
                        if failed {
                            failures += 1;
                        }
                    }
                    Item::Error(msg) => {
                        eprintln!("error: {msg}");
                        failures += 1;
                    }
                }
                next_emit += 1;
            }
        }
        sink.flush()
    })?;

    Ok(Summary {
        from,
        to,
        primes: primes.len(),
        failures,
    })
}
