//! Parallel sweeps over a prime range with deterministic, ordered output.
//!
//! Primes are cut into blocks; workers claim blocks from an atomic counter
//! and send finished blocks to the calling thread, which buffers them and
//! releases them strictly in block order. Output therefore does not depend
//! on the number of workers.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use crate::congruences::{BpjTerm, CongruenceId, CongruenceResult, PrimeEvaluator, Verdict};
use crate::error::{Error, Result};
use crate::modarith::Residue;
use crate::primes::PrimeRange;

/// Everything computed for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub p: u64,
    pub results: Vec<CongruenceResult>,
    /// Per-`j` BPJ terms when requested and BPJ is among the ids.
    pub bpj_terms: Option<Vec<BpjTerm>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub primes: u64,
    pub checked: u64,
    pub passed: u64,
    pub skipped: u64,
    pub failed: u64,
}

impl Summary {
    fn add(&mut self, report: &PrimeReport) {
        self.primes += 1;
        for r in &report.results {
            match r.verdict {
                Verdict::Pass => {
                    self.checked += 1;
                    self.passed += 1;
                }
                Verdict::Fail => {
                    self.checked += 1;
                    self.failed += 1;
                }
                Verdict::Skip => self.skipped += 1,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub range: PrimeRange,
    pub ids: Vec<CongruenceId>,
    pub jobs: usize,
    pub verbose_bpj: bool,
    /// Deliberately corrupts every applicable result of this id. Only used
    /// to exercise the failure path end to end.
    pub inject_fault: Option<CongruenceId>,
}

impl SweepConfig {
    pub fn new(range: PrimeRange, ids: Vec<CongruenceId>) -> Self {
        Self {
            range,
            ids,
            jobs: 1,
            verbose_bpj: false,
            inject_fault: None,
        }
    }
}

/// Primes per work block.
const BLOCK: usize = 32;

/// Evaluates every configured id at `p`.
pub fn evaluate_prime(p: u64, cfg: &SweepConfig) -> Result<PrimeReport> {
    let want_terms = cfg.verbose_bpj && cfg.ids.contains(&CongruenceId::BPJ);
    let mut ev = PrimeEvaluator::new(p)?;
    if want_terms {
        ev = ev.with_bpj_terms();
    }
    let mut results = Vec::with_capacity(cfg.ids.len());
    for &id in &cfg.ids {
        let mut r = ev.check(id)?;
        if Some(id) == cfg.inject_fault && r.verdict != Verdict::Skip {
            let lhs = r.lhs.expect("applicable result has a value");
            r.lhs = Some(lhs + Residue::one(r.modulus));
            r.verdict = Verdict::Fail;
        }
        results.push(r);
    }
    let bpj_terms = if want_terms && crate::congruences::applicable(CongruenceId::BPJ, p) {
        ev.bpj_terms().map(<[_]>::to_vec)
    } else {
        None
    };
    Ok(PrimeReport {
        p,
        results,
        bpj_terms,
    })
}

/// Runs the sweep, handing each prime's report to `sink` in ascending order
/// of `p`. Stops at the first error from evaluation or from `sink`.
pub fn sweep<F>(cfg: &SweepConfig, mut sink: F) -> Result<Summary>
where
    F: FnMut(&PrimeReport) -> Result<()>,
{
    let mut ids = cfg.ids.clone();
    ids.sort();
    ids.dedup();
    let cfg = SweepConfig { ids, ..cfg.clone() };

    let primes: Vec<u64> = cfg.range.iter().collect();
    let mut summary = Summary::default();
    let mut emit = |report: PrimeReport| -> Result<()> {
        summary.add(&report);
        sink(&report)
    };

    let jobs = cfg.jobs.max(1);
    if jobs == 1 || primes.len() <= BLOCK {
        for &p in &primes {
            emit(evaluate_prime(p, &cfg)?)?;
        }
        return Ok(summary);
    }

    let blocks: Vec<&[u64]> = primes.chunks(BLOCK).collect();
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Result<Vec<PrimeReport>>)>();

    thread::scope(|scope| -> Result<()> {
        for _ in 0..jobs.min(blocks.len()) {
            let tx = tx.clone();
            let (blocks, next, stop, cfg) = (&blocks, &next, &stop, &cfg);
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let b = next.fetch_add(1, Ordering::Relaxed);
                if b >= blocks.len() {
                    break;
                }
                let out = blocks[b].iter().map(|&p| evaluate_prime(p, cfg)).collect();
                if tx.send((b, out)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut want = 0usize;
        let mut outcome = Ok(());
        for (b, out) in rx.iter() {
            pending.insert(b, out);
            while let Some(out) = pending.remove(&want) {
                want += 1;
                let step = out.and_then(|reports| reports.into_iter().try_for_each(&mut emit));
                if let Err(e) = step {
                    stop.store(true, Ordering::Relaxed);
                    outcome = Err(e);
                    break;
                }
            }
            if outcome.is_err() {
                break;
            }
        }
        if outcome.is_ok() && want != blocks.len() {
            outcome = Err(Error::Inconsistent(format!(
                "sweep finished {want} of {} blocks",
                blocks.len()
            )));
        }
        outcome
    })?;
    Ok(summary)
}
