//! Human-readable tables and CSV output.

use std::fmt::Write as _;
use std::io;

use crate::census::CensusReport;
use crate::closure::ClosureReport;
use crate::instance::Instance;
use crate::lemmas::SweepSummary;
use crate::scoring::ScoreCard;
use crate::search::SearchOutcome;

pub fn render_outcome(inst: &Instance, outcome: &SearchOutcome, card: Option<&ScoreCard>) -> String {
    let mut s = String::new();
    writeln!(s, "n         {}", inst.n()).unwrap();
    writeln!(s, "strategy  {}", outcome.strategy.as_str()).unwrap();
    match &outcome.witness {
        Some(w) => {
            writeln!(s, "witness   {w}").unwrap();
            writeln!(s, "jumps     {:?}", inst.ordered_values(w)).unwrap();
        }
        None => writeln!(s, "witness   none (COUNTEREXAMPLE)").unwrap(),
    }
    if let Some(card) = card {
        writeln!(s, "G         {}", card.g_value).unwrap();
    }
    writeln!(
        s,
        "examined  {} orderings, {} swaps",
        outcome.stats.permutations_examined, outcome.stats.swaps_applied
    )
    .unwrap();
    s
}

pub fn render_sweep(summary: &SweepSummary) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<22} {:>10} {:>10} {:>10} {:>6}  status",
        "lemma", "cases", "pass", "vacuous", "fail"
    )
    .unwrap();
    for r in &summary.rows {
        writeln!(
            s,
            "{:<22} {:>10} {:>10} {:>10} {:>6}  {}",
            r.lemma.as_str(),
            r.cases,
            r.pass,
            r.vacuous,
            r.fail,
            r.status()
        )
        .unwrap();
    }
    if summary.sampled {
        writeln!(s, "(orderings sampled for large n)").unwrap();
    }
    s
}

pub fn render_closure(report: &ClosureReport) -> String {
    let v = &report.verdict;
    let mut s = String::new();
    writeln!(s, "start          {}", report.start).unwrap();
    writeln!(s, "G              {}", report.g_value).unwrap();
    writeln!(s, "visited        {}", report.visited).unwrap();
    writeln!(s, "forced values  {:?}", report.forced_values).unwrap();
    writeln!(
        s,
        "forced count   {} (n = {}, |M| = {})",
        v.forced_count, v.n, v.forbidden_count
    )
    .unwrap();
    writeln!(s, "G constant     {}", report.g_constant).unwrap();
    s
}

pub fn render_census(r: &CensusReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "census: n <= {}, V = n + {}, mode {}",
        r.config.n_max, r.config.v_offset, r.config.mode
    )
    .unwrap();
    writeln!(
        s,
        "{:>3} {:>4} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "n", "V", "instances", "oracle_ok", "climb_ok", "fallback", "fb_ok"
    )
    .unwrap();
    for row in &r.sizes {
        writeln!(
            s,
            "{:>3} {:>4} {:>10} {:>10} {:>10} {:>10} {:>10}",
            row.n,
            row.max_jump,
            row.instances,
            row.exhaustive_witnesses,
            row.hill_climb_successes,
            row.exhaustive_fallbacks,
            row.fallback_successes
        )
        .unwrap();
    }
    writeln!(s, "instances processed   {}", r.instances_processed).unwrap();
    writeln!(s, "counterexamples       {}", r.counterexamples.len()).unwrap();
    writeln!(s, "solver failures       {}", r.solver_failures.len()).unwrap();
    if r.instances_processed > 0 {
        writeln!(
            s,
            "hill-climb success    {:.4}%",
            100.0 * r.hill_climb_successes() as f64 / r.instances_processed as f64
        )
        .unwrap();
    }
    writeln!(
        s,
        "profiles checked      {} (non-monotone {}, endpoint mismatches {})",
        r.profiles.profiles, r.profiles.non_monotone, r.profiles.endpoint_mismatches
    )
    .unwrap();
    writeln!(s, "lemma sweep over {} instances:", r.lemma_instances).unwrap();
    s.push_str(&render_sweep(&r.lemmas));
    let c = &r.closure;
    writeln!(
        s,
        "maximizer safety      {} of {} probed instances have an unsafe G-maximal ordering",
        c.unsafe_maximizer_instances, c.instances_probed
    )
    .unwrap();
    writeln!(
        s,
        "closure components    {} (subset failures {}, G-constancy failures {})",
        c.components, c.subset_failures, c.g_constancy_failures
    )
    .unwrap();
    writeln!(s, "forced-count histogram:").unwrap();
    for (count, instances) in &c.histogram {
        writeln!(s, "  {count:>3} {instances:>10}").unwrap();
    }
    s
}

/// `forced_count,instances` rows.
pub fn write_histogram_csv<W: io::Write>(report: &CensusReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["forced_count", "instances"])?;
    for (count, instances) in &report.closure.histogram {
        w.write_record([count.to_string(), instances.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
